//! Graded modules over the algebras of [`crate::lie`]: density modules, the
//! `sl2` Verma family and its restricted duals, windowed duals of `U(g)`,
//! custom action tables, and short exact sequences of modules.

mod custom;
mod density;
mod pbw;
mod ses;
mod verma;

use std::sync::Arc;

use num_traits::Zero;
use serde::Deserialize;

pub use custom::CustomModule;
pub use density::DensityModule;
pub use pbw::{pbw_normal_form, PbwDual};
pub use ses::{integration_section, ses_validate, LinearMap, ModuleSes};
pub use verma::{
    f0_to_verma, f1_to_verma, density_verma_isomorphism_check, density_verma_quotient_check, verma_pairing, VermaDual, VermaKind,
    VermaModule,
};

use crate::check::CheckReport;
use crate::error::{overflow, Error, Result};
use crate::lie::{sl2, sl3, FiniteLieAlgebra, LieAlgebra, ScalarRepr, WittAlgebra};
use crate::scalar::{Element, ModElem, Scalar};

/// A module over a [`LieAlgebra`] on an integer-indexed basis.
///
/// Basis indices live in the inclusive window returned by [`window`]; an
/// action whose output leaves the window is a [`Error::WindowOverflow`].
///
/// [`window`]: LieModule::window
pub trait LieModule: Send + Sync {
    fn name(&self) -> String;
    fn algebra(&self) -> Arc<dyn LieAlgebra>;
    fn window(&self) -> (i64, i64);
    fn label(&self, m: i64) -> String;

    /// `x_i · m` for an algebra basis index `i` and module basis index `m`.
    fn act_basis(&self, x: usize, m: i64) -> Result<ModElem>;

    /// Generalized eigenvalue of the algebra's grading element on `m`.
    fn weight(&self, m: i64) -> Option<Scalar>;

    /// Whether every basis vector of weight `w` lies inside the window.
    fn covers_weight(&self, _w: &Scalar) -> bool {
        true
    }

    /// Whether the module axiom can be checked exactly at coordinate `m`
    /// (truncated duals lose information on their outermost layer).
    fn axiom_exact(&self, _m: i64) -> bool {
        true
    }

    fn contains(&self, m: i64) -> bool {
        let (lo, hi) = self.window();
        (lo..=hi).contains(&m)
    }

    fn basis(&self) -> Vec<i64> {
        let (lo, hi) = self.window();
        (lo..=hi).collect()
    }

    fn dim(&self) -> usize {
        let (lo, hi) = self.window();
        (hi - lo + 1).max(0) as usize
    }

    fn basis_of_weight(&self, w: &Scalar) -> Vec<i64> {
        self.basis()
            .into_iter()
            .filter(|m| self.weight(*m).as_ref() == Some(w))
            .collect()
    }

    fn act(&self, x: &Element, v: &ModElem) -> Result<ModElem> {
        let mut out = ModElem::zero();
        for (i, a) in x.iter() {
            for (m, b) in v.iter() {
                out.axpy(&(a * b), &self.act_basis(*i, *m)?);
            }
        }
        Ok(out)
    }

    fn render(&self, v: &ModElem) -> String {
        v.render(|m| self.label(*m))
    }
}

/// Checks that `m` lies in the window, producing an overflow error otherwise.
pub(crate) fn in_window(module: &dyn LieModule, what: &str, m: i64) -> Result<()> {
    let (lo, hi) = module.window();
    if (lo..=hi).contains(&m) {
        Ok(())
    } else {
        Err(overflow(what, m, lo, hi))
    }
}

/// The one-dimensional trivial module.
#[derive(Clone)]
pub struct TrivialModule {
    algebra: Arc<dyn LieAlgebra>,
}

impl TrivialModule {
    pub fn new(algebra: Arc<dyn LieAlgebra>) -> Self {
        TrivialModule { algebra }
    }
}

impl LieModule for TrivialModule {
    fn name(&self) -> String {
        "C".into()
    }

    fn algebra(&self) -> Arc<dyn LieAlgebra> {
        self.algebra.clone()
    }

    fn window(&self) -> (i64, i64) {
        (0, 0)
    }

    fn label(&self, _m: i64) -> String {
        "1".into()
    }

    fn act_basis(&self, _x: usize, m: i64) -> Result<ModElem> {
        in_window(self, "trivial module index", m)?;
        Ok(ModElem::zero())
    }

    fn weight(&self, _m: i64) -> Option<Scalar> {
        Some(Scalar::zero())
    }
}

/// Checks `[x, y]·m = x·(y·m) − y·(x·m)` on all basis triples in the window.
/// Triples that overflow are skipped; coordinates flagged by
/// [`LieModule::axiom_exact`] as truncated are not compared.
pub fn verify_module_axiom(module: &dyn LieModule) -> CheckReport {
    let alg = module.algebra();
    let n = alg.dim();
    let mut report = CheckReport::new(format!("module axiom for {}", module.name()));
    for m in module.basis() {
        for i in 0..n {
            for j in (i + 1)..n {
                let sides = (|| -> Result<(ModElem, ModElem)> {
                    let xi = Element::basis(i);
                    let xj = Element::basis(j);
                    let lhs = module.act(&alg.bracket(&xi, &xj)?, &ModElem::basis(m))?;
                    let ym = module.act_basis(j, m)?;
                    let xm = module.act_basis(i, m)?;
                    let rhs = module.act(&xi, &ym)?.sub(&module.act(&xj, &xm)?);
                    Ok((lhs, rhs))
                })();
                match sides {
                    Ok((lhs, rhs)) => {
                        let diff = lhs.sub(&rhs);
                        let ok = diff.keys().all(|k| !module.axiom_exact(*k));
                        report.record(ok, || {
                            format!(
                                "[{}, {}]·{}: {} vs {}",
                                alg.label(i),
                                alg.label(j),
                                module.label(m),
                                module.render(&lhs),
                                module.render(&rhs)
                            )
                        });
                    }
                    Err(Error::WindowOverflow { .. }) => report.skip(),
                    Err(e) => report.fail(e.to_string()),
                }
            }
        }
    }
    report
}

/// Checks that every action entry shifts weights by the ad-weight of the
/// acting basis element.
pub fn verify_weights(module: &dyn LieModule) -> CheckReport {
    let alg = module.algebra();
    let mut report = CheckReport::new(format!("weight bookkeeping for {}", module.name()));
    for m in module.basis() {
        let Some(wm) = module.weight(m) else {
            report.fail(format!("no weight for {}", module.label(m)));
            continue;
        };
        for x in 0..alg.dim() {
            let Some(wx) = alg.ad_weight(x) else {
                report.fail(format!("no ad-weight for {}", alg.label(x)));
                continue;
            };
            match module.act_basis(x, m) {
                Ok(out) => {
                    let bad = out
                        .keys()
                        .find(|k| module.weight(**k) != Some(&wm + &wx))
                        .copied();
                    report.record(bad.is_none(), || {
                        format!(
                            "{}·{} contains {}",
                            alg.label(x),
                            module.label(m),
                            module.label(bad.unwrap_or_default())
                        )
                    });
                }
                Err(Error::WindowOverflow { .. }) => report.skip(),
                Err(e) => report.fail(e.to_string()),
            }
        }
    }
    report
}

/// Checks that `map: src → dst` commutes with the action of every algebra
/// basis element on every source basis vector.
pub fn check_intertwiner(
    name: &str,
    src: &dyn LieModule,
    dst: &dyn LieModule,
    map: &dyn Fn(i64) -> Result<ModElem>,
) -> CheckReport {
    let alg = src.algebra();
    let mut report = CheckReport::new(name);
    if alg.dim() != dst.algebra().dim() {
        report.fail("modules over algebras of different dimension");
        return report;
    }
    let apply = |v: &ModElem| -> Result<ModElem> { v.map_linear(|k| map(*k)) };
    for m in src.basis() {
        for x in 0..alg.dim() {
            let sides = (|| -> Result<(ModElem, ModElem)> {
                let lhs = apply(&src.act_basis(x, m)?)?;
                let rhs = dst.act(&Element::basis(x), &map(m)?)?;
                Ok((lhs, rhs))
            })();
            match sides {
                Ok((lhs, rhs)) => report.record(lhs == rhs, || {
                    format!(
                        "{} on {}: map(x·m) = {} but x·map(m) = {}",
                        alg.label(x),
                        src.label(m),
                        dst.render(&lhs),
                        dst.render(&rhs)
                    )
                }),
                Err(Error::WindowOverflow { .. }) => report.skip(),
                Err(e) => report.fail(e.to_string()),
            }
        }
    }
    report
}

/// Built-in finite algebras by name.
pub fn builtin_algebra(name: &str) -> Result<Arc<FiniteLieAlgebra>> {
    match name {
        "sl2" => Ok(Arc::new(sl2())),
        "sl3" => Ok(Arc::new(sl3())),
        other => Err(Error::Unknown(format!("algebra {other}"))),
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum ModuleFile {
    Trivial {
        algebra: String,
    },
    Density {
        #[serde(default = "default_sl2")]
        algebra: String,
        lambda: ScalarRepr,
        window: i64,
        /// Index window of `W1` when `algebra = "w1"`.
        w1_window: Option<(i64, i64)>,
    },
    VermaDual {
        part: String,
        window: i64,
    },
    PbwDual {
        #[serde(default = "default_sl2")]
        algebra: String,
        #[serde(default = "default_length")]
        length: usize,
        #[serde(default = "default_true")]
        augmented: bool,
    },
    Custom {
        #[serde(default = "default_sl2")]
        algebra: String,
        name: Option<String>,
        dim: usize,
        labels: Option<Vec<String>>,
        weights: Option<Vec<ScalarRepr>>,
        /// `[x, m, out, coefficient]` meaning `x·m ∋ coefficient · out`.
        entries: Vec<(usize, i64, i64, ScalarRepr)>,
    },
}

fn default_sl2() -> String {
    "sl2".into()
}

fn default_length() -> usize {
    2
}

fn default_true() -> bool {
    true
}

/// Loads a module description from TOML. The `kind` tag selects one of
/// `trivial`, `density`, `verma-dual`, `pbw-dual` or `custom`:
///
/// ```toml
/// kind = "density"
/// algebra = "sl2"   # or "w1" together with w1_window = [-1, 8]
/// lambda = 1
/// window = 12
/// ```
pub fn load_module(text: &str) -> Result<Arc<dyn LieModule>> {
    let file: ModuleFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(match file {
        ModuleFile::Trivial { algebra } => Arc::new(TrivialModule::new(builtin_algebra(&algebra)?)),
        ModuleFile::Density {
            algebra,
            lambda,
            window,
            w1_window,
        } => {
            let lambda = lambda.to_scalar()?;
            match algebra.as_str() {
                "sl2" => Arc::new(DensityModule::over_sl2(lambda, window)?),
                "w1" => {
                    let (lo, hi) = w1_window.unwrap_or((-1, 8));
                    Arc::new(DensityModule::over_witt(
                        Arc::new(WittAlgebra::new(lo, hi)?),
                        lambda,
                        window,
                    )?)
                }
                other => return Err(Error::Unknown(format!("density modules over {other}"))),
            }
        }
        ModuleFile::VermaDual { part, window } => {
            let kind = match part.as_str() {
                "M" => VermaKind::M,
                "N" => VermaKind::N,
                "L" => VermaKind::L,
                other => return Err(Error::Unknown(format!("Verma part {other}"))),
            };
            Arc::new(VermaDual::new(kind, window)?)
        }
        ModuleFile::PbwDual {
            algebra,
            length,
            augmented,
        } => Arc::new(PbwDual::new(builtin_algebra(&algebra)?, length, augmented)?),
        ModuleFile::Custom {
            algebra,
            name,
            dim,
            labels,
            weights,
            entries,
        } => {
            let alg = builtin_algebra(&algebra)?;
            let weights = match weights {
                Some(ws) => Some(ws.iter().map(|w| w.to_scalar()).collect::<Result<Vec<_>>>()?),
                None => None,
            };
            let mut module = CustomModule::new(
                name.as_deref().unwrap_or("custom"),
                alg,
                dim,
                labels,
                weights,
            )?;
            for (x, m, out, c) in &entries {
                module.add_entry(*x, *m, *out, c.to_scalar()?)?;
            }
            let axiom = verify_module_axiom(&module);
            if let Some(f) = axiom.failure {
                return Err(Error::InvalidModule(format!("module axiom fails: {f}")));
            }
            if module.weight(0).is_some() {
                if let Some(f) = verify_weights(&module).failure {
                    return Err(Error::InvalidModule(format!("weights are inconsistent: {f}")));
                }
            }
            Arc::new(module)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn action_of_zero_is_zero() {
        let m = VermaDual::new(VermaKind::M, 6).unwrap();
        let v = ModElem::from_pairs([(1, int(3)), (4, int(-2))]);
        assert!(m.act(&Element::zero(), &v).unwrap().is_zero());
    }

    #[test]
    fn trivial_module_passes_checks() {
        let t = TrivialModule::new(Arc::new(sl2()));
        assert!(verify_module_axiom(&t).passed());
        assert!(verify_weights(&t).passed());
    }

    #[test]
    fn loads_each_kind() {
        let cases = [
            "kind = \"trivial\"\nalgebra = \"sl3\"",
            "kind = \"density\"\nlambda = \"1/2\"\nwindow = 6",
            "kind = \"density\"\nalgebra = \"w1\"\nlambda = 2\nwindow = 10\nw1_window = [-1, 4]",
            "kind = \"verma-dual\"\npart = \"N\"\nwindow = 8",
            "kind = \"pbw-dual\"\nlength = 2",
            "kind = \"custom\"\ndim = 1\nweights = [0]\nentries = []",
        ];
        for text in cases {
            let m = load_module(text).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert!(verify_module_axiom(m.as_ref()).passed(), "{text}");
        }
        assert!(load_module("kind = \"verma-dual\"\npart = \"Q\"\nwindow = 3").is_err());
        assert!(load_module("kind = \"nonsense\"").is_err());
    }
}
