use num_traits::Zero;
use serde::Serialize;

use super::complex::{weight_slice, ComplexSlice};
use super::{coboundary_at, module_action, Cochain};
use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::modules::ModuleSes;
use crate::scalar::{ModElem, Scalar};

/// Evaluates `∂c` on `args` by the zig-zag: lift the values of `c` with the
/// section, take the coboundary in the middle module, and pull back along
/// the injection after checking membership exactly.
pub fn connecting_at(
    ses: &ModuleSes,
    c: &dyn Fn(&[usize]) -> Result<ModElem>,
    args: &[usize],
) -> Result<ModElem> {
    let alg = ses.algebra();
    let act = module_action(ses.mid.as_ref());
    let lifted = |t: &[usize]| ses.lift(&c(t)?);
    let value = coboundary_at(alg.as_ref(), &act, &lifted, args)?;
    let back = ses.retract(&value)?;
    if ses.inject(&back)? != value {
        let labels: Vec<String> = args.iter().map(|a| alg.label(*a)).collect();
        return Err(Error::NotInSubmodule {
            tuple: format!("({})", labels.join(", ")),
            value: ses.mid.render(&value),
        });
    }
    Ok(back)
}

/// `∂c` on every increasing tuple of a finite algebra. With `check_cocycle`
/// the input is first verified to be closed in the quotient module.
pub fn connecting_hom(ses: &ModuleSes, c: &Cochain, check_cocycle: bool) -> Result<Cochain> {
    let alg = ses.algebra();
    if check_cocycle {
        let dc = super::coboundary(alg.as_ref(), ses.quot.as_ref(), c)?;
        let first = dc.values().next().map(|(t, v)| format!("dc{:?} = {}", t, ses.quot.render(v)));
        if let Some(witness) = first {
            return Err(Error::NotCocycle(witness));
        }
    }
    let f = |t: &[usize]| Ok(c.eval(t));
    Cochain::from_fn(alg.dim(), c.degree() + 1, |t| connecting_at(ses, &f, t))
}

/// Ranks in the long exact sequence of a short exact sequence of modules,
/// computed on weight-zero slices.
#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub sub: Vec<usize>,
    pub mid: Vec<usize>,
    pub quot: Vec<usize>,
    /// Rank of `H^q(sub) → H^q(mid)`.
    pub iota: Vec<usize>,
    /// Rank of `H^q(mid) → H^q(quot)`.
    pub pi: Vec<usize>,
    /// Rank of `∂: H^q(quot) → H^{q+1}(sub)`.
    pub delta: Vec<usize>,
    pub check: CheckReport,
}

fn map_cochain(c: &Cochain, f: impl Fn(&ModElem) -> Result<ModElem>) -> Result<Cochain> {
    c.map_values(f)
}

fn induced(
    src: &ComplexSlice,
    dst: &ComplexSlice,
    q_src: usize,
    q_dst: usize,
    f: &dyn Fn(&Cochain) -> Result<Cochain>,
) -> Result<usize> {
    if q_dst > dst.q_max() {
        return Ok(0);
    }
    let images: Vec<Vec<Scalar>> = src
        .cocycles(q_src)
        .iter()
        .map(|z| dst.vector_of(&f(&src.cochain_of(q_src, z))?))
        .collect::<Result<_>>()?;
    Ok(dst.induced_rank(q_dst, &images))
}

/// Computes cohomology of the three modules, ranks of the maps `ι*`, `π*`
/// and `∂`, and checks exactness at every spot of the long exact sequence.
pub fn les_consistency(ses: &ModuleSes) -> Result<LesReport> {
    let alg = ses.algebra();
    let top = alg.dim();
    let zero = Scalar::zero();
    let s1 = weight_slice(alg.as_ref(), ses.sub.as_ref(), top, &zero)?;
    let s2 = weight_slice(alg.as_ref(), ses.mid.as_ref(), top, &zero)?;
    let s3 = weight_slice(alg.as_ref(), ses.quot.as_ref(), top, &zero)?;
    let (h1, h2, h3) = (s1.cohomology(), s2.cohomology(), s3.cohomology());
    let mut iota = Vec::new();
    let mut pi = Vec::new();
    let mut delta = Vec::new();
    for q in 0..=top {
        iota.push(induced(&s1, &s2, q, q, &|c| map_cochain(c, |v| ses.inject(v)))?);
        pi.push(induced(&s2, &s3, q, q, &|c| map_cochain(c, |v| ses.project(v)))?);
        delta.push(induced(&s3, &s1, q, q + 1, &|c| connecting_hom(ses, c, true))?);
    }
    let mut check = CheckReport::new(format!("long exact sequence of {}", ses.name));
    for q in 0..=top {
        let before = if q == 0 { 0 } else { delta[q - 1] };
        check.record(h1[q] == before + iota[q], || {
            format!("exactness at H^{q}(sub): {} ≠ {} + {}", h1[q], before, iota[q])
        });
        check.record(h2[q] == iota[q] + pi[q], || {
            format!("exactness at H^{q}(mid): {} ≠ {} + {}", h2[q], iota[q], pi[q])
        });
        check.record(h3[q] == pi[q] + delta[q], || {
            format!("exactness at H^{q}(quot): {} ≠ {} + {}", h3[q], pi[q], delta[q])
        });
        check.record(h2[q] <= h1[q] + h3[q], || {
            format!("dim H^{q}(mid) exceeds dim H^{q}(sub) + dim H^{q}(quot)")
        });
    }
    Ok(LesReport {
        sub: h1,
        mid: h2,
        quot: h3,
        iota,
        pi,
        delta,
        check,
    })
}
