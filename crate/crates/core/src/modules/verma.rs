use std::sync::Arc;

use num_traits::One;

use super::{check_intertwiner, in_window, DensityModule, LieModule};
use crate::check::CheckReport;
use crate::error::{overflow, Result};
use crate::lie::{sl2, LieAlgebra, SL2_E, SL2_F, SL2_H};
use crate::scalar::{int, ModElem, Scalar};

/// Which member of the dual sequence `0 → L(0)♯ → M(0)♯ → N(0)♯ → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VermaKind {
    /// `M(0)♯` with basis `φ_i`, `i >= 0`.
    M,
    /// `N(0)♯ = M(0)♯ / L(0)♯` with basis `φ_i`, `i >= 1`.
    N,
    /// `L(0)♯ = span{φ_0}`.
    L,
}

/// Restricted duals of the `sl2` Verma module `M(0)` in the basis `φ_i`:
/// `e·φ_i = (i+1) φ_{i+1}` for `i >= 1`, `f·φ_i = -(i-1) φ_{i-1}`,
/// `f·φ_1 = -φ_0`, `h·φ_i = 2i φ_i`, and `φ_0` is invariant.
#[derive(Clone)]
pub struct VermaDual {
    kind: VermaKind,
    hi: i64,
    algebra: Arc<dyn LieAlgebra>,
}

impl VermaDual {
    pub fn new(kind: VermaKind, hi: i64) -> Result<Self> {
        if hi < 1 && kind != VermaKind::L {
            return Err(crate::Error::InvalidModule(format!(
                "Verma dual window [0, {hi}] is too small"
            )));
        }
        Ok(VermaDual {
            kind,
            hi,
            algebra: Arc::new(sl2()),
        })
    }

    pub fn kind(&self) -> VermaKind {
        self.kind
    }
}

impl LieModule for VermaDual {
    fn name(&self) -> String {
        match self.kind {
            VermaKind::M => "M(0)♯",
            VermaKind::N => "N(0)♯",
            VermaKind::L => "L(0)♯",
        }
        .into()
    }

    fn algebra(&self) -> Arc<dyn LieAlgebra> {
        self.algebra.clone()
    }

    fn window(&self) -> (i64, i64) {
        match self.kind {
            VermaKind::M => (0, self.hi),
            VermaKind::N => (1, self.hi),
            VermaKind::L => (0, 0),
        }
    }

    fn label(&self, i: i64) -> String {
        format!("φ_{i}")
    }

    fn act_basis(&self, x: usize, i: i64) -> Result<ModElem> {
        in_window(self, "Verma dual index", i)?;
        if self.kind == VermaKind::L || i == 0 {
            return Ok(ModElem::zero());
        }
        Ok(match x {
            SL2_E => {
                if i + 1 > self.hi {
                    return Err(overflow(format!("e·φ_{i}"), i + 1, 0, self.hi));
                }
                ModElem::term(i + 1, int(i + 1))
            }
            SL2_H => ModElem::term(i, int(2 * i)),
            SL2_F if i >= 2 => ModElem::term(i - 1, int(-(i - 1))),
            SL2_F => match self.kind {
                VermaKind::M => ModElem::term(0, int(-1)),
                _ => ModElem::zero(),
            },
            _ => unreachable!("sl2 has three basis elements"),
        })
    }

    fn weight(&self, i: i64) -> Option<Scalar> {
        Some(int(2 * i))
    }

    fn covers_weight(&self, w: &Scalar) -> bool {
        *w <= int(2 * self.hi)
    }
}

/// The Verma module `M(0)` with basis `f^i`, `0 <= i <= hi`:
/// `e·f^i = -(i-1) i f^{i-1}`, `f·f^i = f^{i+1}`, `h·f^i = -2i f^i`.
#[derive(Clone)]
pub struct VermaModule {
    hi: i64,
    algebra: Arc<dyn LieAlgebra>,
}

impl VermaModule {
    pub fn new(hi: i64) -> Self {
        VermaModule {
            hi,
            algebra: Arc::new(sl2()),
        }
    }
}

impl LieModule for VermaModule {
    fn name(&self) -> String {
        "M(0)".into()
    }

    fn algebra(&self) -> Arc<dyn LieAlgebra> {
        self.algebra.clone()
    }

    fn window(&self) -> (i64, i64) {
        (0, self.hi)
    }

    fn label(&self, i: i64) -> String {
        format!("f^{i}")
    }

    fn act_basis(&self, x: usize, i: i64) -> Result<ModElem> {
        in_window(self, "Verma index", i)?;
        Ok(match x {
            SL2_E if i == 0 => ModElem::zero(),
            SL2_E => ModElem::term(i - 1, int(-(i - 1) * i)),
            SL2_H => ModElem::term(i, int(-2 * i)),
            SL2_F => {
                if i + 1 > self.hi {
                    return Err(overflow(format!("f·f^{i}"), i + 1, 0, self.hi));
                }
                ModElem::basis(i + 1)
            }
            _ => unreachable!("sl2 has three basis elements"),
        })
    }

    fn weight(&self, i: i64) -> Option<Scalar> {
        Some(int(-2 * i))
    }

    fn covers_weight(&self, w: &Scalar) -> bool {
        *w >= int(-2 * self.hi)
    }
}

/// `⟨φ_i, f^i⟩`: `(i-1)!` for `i >= 2` and `1` for `i = 0, 1`. Distinct
/// indices pair to zero.
pub fn verma_pairing(i: i64) -> Scalar {
    (2..i).fold(Scalar::one(), |acc, k| acc * int(k))
}

/// Image of `x^n` under `F_0 ≅ M(0)♯`, i.e. `f_n = x^n / n ↦ φ_n` and `1 ↦ φ_0`.
pub fn f0_to_verma(n: i64) -> ModElem {
    if n == 0 {
        ModElem::basis(0)
    } else {
        ModElem::term(n, int(n))
    }
}

/// Image of `x^n dx` under `F_1 ≅ N(0)♯`.
pub fn f1_to_verma(n: i64) -> ModElem {
    ModElem::basis(n + 1)
}

/// Verifies that `f_i ↦ φ_i` (with `f_i = x^i / i`, `f_0 = 1`) intertwines
/// the `sl2` actions on `F_0` and `M(0)♯` on the window `[0, hi]`, and that
/// the constants `span{f_0}` land on `span{φ_0}`.
pub fn density_verma_isomorphism_check(hi: i64) -> Result<CheckReport> {
    let f0 = DensityModule::over_sl2(int(0), hi)?;
    let m = VermaDual::new(VermaKind::M, hi)?;
    let mut report = check_intertwiner("F_0 ≅ M(0)♯ via f_i ↦ φ_i", &f0, &m, &|n| Ok(f0_to_verma(n)));
    // the trivial submodule corresponds on both sides
    for x in 0..3 {
        let a = f0.act_basis(x, 0)?;
        let b = m.act_basis(x, 0)?;
        report.record(a.is_zero() && b.is_zero(), || {
            format!("constants are not invariant under {}", m.algebra().label(x))
        });
    }
    report.record(f0_to_verma(0) == ModElem::basis(0), || "f_0 does not map to φ_0".into());
    Ok(report)
}

/// Verifies `x^n dx ↦ φ_{n+1}` intertwines `F_1` and `N(0)♯` on `[0, hi-1]`.
pub fn density_verma_quotient_check(hi: i64) -> Result<CheckReport> {
    let f1 = DensityModule::over_sl2(int(1), hi - 1)?;
    let n = VermaDual::new(VermaKind::N, hi)?;
    Ok(check_intertwiner("F_1 ≅ N(0)♯ via x^n dx ↦ φ_{n+1}", &f1, &n, &|k| Ok(f1_to_verma(k))))
}
