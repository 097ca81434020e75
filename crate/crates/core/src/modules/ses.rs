use std::sync::Arc;

use super::verma::{VermaDual, VermaKind};
use super::{check_intertwiner, DensityModule, LieModule, PbwDual, TrivialModule};
use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::lie::{FiniteLieAlgebra, LieAlgebra, WittAlgebra};
use crate::linalg::span_rank;
use crate::scalar::{frac, int, ModElem, Scalar};

/// A linear map given on basis indices.
pub type LinearMap = Arc<dyn Fn(i64) -> Result<ModElem> + Send + Sync>;

/// `0 → sub → mid → quot → 0` with a linear section of the surjection and a
/// retraction of `mid` onto the injected copy of `sub`.
#[derive(Clone)]
pub struct ModuleSes {
    pub name: String,
    pub sub: Arc<dyn LieModule>,
    pub mid: Arc<dyn LieModule>,
    pub quot: Arc<dyn LieModule>,
    pub inj: LinearMap,
    pub surj: LinearMap,
    pub section: LinearMap,
    pub retraction: LinearMap,
}

pub(crate) fn apply(map: &LinearMap, v: &ModElem) -> Result<ModElem> {
    v.map_linear(|k| map(*k))
}

impl ModuleSes {
    pub fn algebra(&self) -> Arc<dyn LieAlgebra> {
        self.mid.algebra()
    }

    pub fn inject(&self, v: &ModElem) -> Result<ModElem> {
        apply(&self.inj, v)
    }

    pub fn project(&self, v: &ModElem) -> Result<ModElem> {
        apply(&self.surj, v)
    }

    pub fn lift(&self, v: &ModElem) -> Result<ModElem> {
        apply(&self.section, v)
    }

    pub fn retract(&self, v: &ModElem) -> Result<ModElem> {
        apply(&self.retraction, v)
    }

    /// Replaces the section (for section-independence checks).
    pub fn with_section(mut self, name: &str, section: LinearMap) -> Self {
        self.section = section;
        self.name = format!("{} [{name}]", self.name);
        self
    }

    /// `0 → C → F_0 → F_1 → 0` with `d_DR`, over `sl2`; `F_0` has degrees `[0, hi]`.
    pub fn de_rham_sl2(hi: i64) -> Result<Self> {
        let f0 = DensityModule::over_sl2(int(0), hi)?;
        let f1 = DensityModule::over_sl2(int(1), hi - 1)?;
        Ok(Self::de_rham(f0, f1))
    }

    /// The same sequence over a window of `W1`.
    pub fn de_rham_witt(witt: Arc<WittAlgebra>, hi: i64) -> Result<Self> {
        let f0 = DensityModule::over_witt(witt.clone(), int(0), hi)?;
        let f1 = DensityModule::over_witt(witt, int(1), hi - 1)?;
        Ok(Self::de_rham(f0, f1))
    }

    fn de_rham(f0: DensityModule, f1: DensityModule) -> Self {
        let algebra = f0.algebra();
        ModuleSes {
            name: "0 → C → F_0 → F_1 → 0".into(),
            sub: Arc::new(TrivialModule::new(algebra)),
            mid: Arc::new(f0),
            quot: Arc::new(f1),
            inj: Arc::new(|_| Ok(ModElem::basis(0))),
            surj: Arc::new(|n| {
                Ok(if n == 0 {
                    ModElem::zero()
                } else {
                    ModElem::term(n - 1, int(n))
                })
            }),
            section: Arc::new(integration_section),
            retraction: Arc::new(|n| {
                Ok(if n == 0 {
                    ModElem::basis(0)
                } else {
                    ModElem::zero()
                })
            }),
        }
    }

    /// `0 → L(0)♯ → M(0)♯ → N(0)♯ → 0` with `φ_i ↦ φ_i`; `M(0)♯` has indices `[0, hi]`.
    pub fn verma_dual(hi: i64) -> Result<Self> {
        Ok(ModuleSes {
            name: "0 → L(0)♯ → M(0)♯ → N(0)♯ → 0".into(),
            sub: Arc::new(VermaDual::new(VermaKind::L, hi)?),
            mid: Arc::new(VermaDual::new(VermaKind::M, hi)?),
            quot: Arc::new(VermaDual::new(VermaKind::N, hi)?),
            inj: Arc::new(|_| Ok(ModElem::basis(0))),
            surj: Arc::new(|i| {
                Ok(if i == 0 {
                    ModElem::zero()
                } else {
                    ModElem::basis(i)
                })
            }),
            section: Arc::new(|i| Ok(ModElem::basis(i))),
            retraction: Arc::new(|i| {
                Ok(if i == 0 {
                    ModElem::basis(0)
                } else {
                    ModElem::zero()
                })
            }),
        })
    }

    /// `0 → C♯ → (Ug)♯ → (Ug⁺)♯ → 0` on PBW windows of length `max_len`.
    pub fn pbw(algebra: Arc<FiniteLieAlgebra>, max_len: usize) -> Result<Self> {
        Self::pbw_ordered(algebra.clone(), max_len, (0..algebra.dim()).collect())
    }

    pub fn pbw_ordered(
        algebra: Arc<FiniteLieAlgebra>,
        max_len: usize,
        order: Vec<usize>,
    ) -> Result<Self> {
        let full = Arc::new(PbwDual::with_order(algebra.clone(), max_len, true, order.clone())?);
        let plus = Arc::new(PbwDual::with_order(algebra.clone(), max_len, false, order)?);
        let eps = full.id_of(&[]).expect("augmented window contains the unit");
        let (f1, p1) = (full.clone(), plus.clone());
        let (f2, p2) = (full.clone(), plus.clone());
        Ok(ModuleSes {
            name: "0 → C♯ → (Ug)♯ → (Ug⁺)♯ → 0".into(),
            sub: Arc::new(TrivialModule::new(algebra)),
            mid: full.clone(),
            quot: plus.clone(),
            inj: Arc::new(move |_| Ok(ModElem::basis(eps))),
            surj: Arc::new(move |m| {
                Ok(match p1.id_of(f1.monomial(m)) {
                    Some(k) => ModElem::basis(k),
                    None => ModElem::zero(),
                })
            }),
            section: Arc::new(move |m| {
                let id = f2
                    .id_of(p2.monomial(m))
                    .ok_or_else(|| Error::InvalidModule("monomial missing from (Ug)♯".into()))?;
                Ok(ModElem::basis(id))
            }),
            retraction: Arc::new(move |m| {
                Ok(if m == eps {
                    ModElem::basis(0)
                } else {
                    ModElem::zero()
                })
            }),
        })
    }
}

/// Term-by-term integration with zero constant: `x^n dx ↦ x^{n+1} / (n+1)`.
pub fn integration_section(n: i64) -> Result<ModElem> {
    Ok(ModElem::term(n + 1, frac(1, n + 1)))
}

/// Validates exactness, the section and retraction identities, and
/// equivariance of the injection and surjection on the windows.
pub fn ses_validate(s: &ModuleSes) -> CheckReport {
    let mut report = CheckReport::new(format!("short exact sequence {}", s.name));
    let mut exact = CheckReport::new("exactness and splitting");
    let run = |exact: &mut CheckReport| -> Result<()> {
        let images: Vec<ModElem> = s.sub.basis().into_iter().map(|v| (s.inj)(v)).collect::<Result<_>>()?;
        // injectivity on the window
        let (lo, hi) = s.mid.window();
        let dense: Vec<Vec<Scalar>> = images
            .iter()
            .map(|v| (lo..=hi).map(|k| v.get(&k)).collect())
            .collect();
        exact.record(span_rank((hi - lo + 1) as usize, &dense) == images.len(), || {
            "injection is not injective".into()
        });
        for (v, img) in s.sub.basis().into_iter().zip(&images) {
            let back = s.project(img)?;
            exact.record(back.is_zero(), || {
                format!("surjection∘injection on {} gives {}", s.sub.label(v), s.quot.render(&back))
            });
            let r = s.retract(img)?;
            exact.record(r == ModElem::basis(v), || {
                format!("retraction∘injection on {} gives {}", s.sub.label(v), s.sub.render(&r))
            });
        }
        for q in s.quot.basis() {
            let round = s.project(&(s.section)(q)?)?;
            exact.record(round == ModElem::basis(q), || {
                format!("surjection∘section on {} gives {}", s.quot.label(q), s.quot.render(&round))
            });
        }
        for m in s.mid.basis() {
            let v = ModElem::basis(m);
            let rest = v.sub(&s.lift(&s.project(&v)?)?);
            let back = s.inject(&s.retract(&rest)?)?;
            exact.record(back == rest, || {
                format!(
                    "{} − σπ({}) = {} is not in the injected submodule",
                    s.mid.label(m),
                    s.mid.label(m),
                    s.mid.render(&rest)
                )
            });
        }
        Ok(())
    };
    if let Err(e) = run(&mut exact) {
        exact.fail(e.to_string());
    }
    report.absorb(&exact);
    let inj = s.inj.clone();
    report.absorb(&check_intertwiner("injection equivariance", s.sub.as_ref(), s.mid.as_ref(), &*inj));
    let surj = s.surj.clone();
    report.absorb(&check_intertwiner("surjection equivariance", s.mid.as_ref(), s.quot.as_ref(), &*surj));
    report
}
