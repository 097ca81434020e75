use std::collections::BTreeMap;

use num_traits::Zero;

use super::complex::{ad_weights, FiniteComplex};
use super::{coboundary_at, module_action, sort_tuple, tuples_from, Cochain};
use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::modules::LieModule;
use crate::scalar::{fmt_scalar, Element, ModElem, Scalar};

/// The relative complex `C^p(g, h; M)`: cochains on tuples avoiding `h` whose
/// values satisfy `L_x c = 0` for every `x` in `h`.
#[derive(Clone, Debug)]
pub struct RelativeSlice {
    pub algebra: String,
    pub module: String,
    pub subalgebra: Vec<usize>,
    pub complex: FiniteComplex,
}

impl std::ops::Deref for RelativeSlice {
    type Target = FiniteComplex;
    fn deref(&self) -> &FiniteComplex {
        &self.complex
    }
}

/// Eigenvalue of `ad x` on each basis element, requiring diagonal action.
fn ad_eigen(alg: &dyn LieAlgebra, x: usize) -> Result<Vec<Scalar>> {
    (0..alg.dim())
        .map(|b| {
            let br = alg.bracket_basis(x, b)?;
            let l = br.get(&b);
            if br != Element::term(b, l.clone()) {
                return Err(Error::NonDiagonal(format!(
                    "ad {} on {} gives {}",
                    alg.label(x),
                    alg.label(b),
                    alg.render(&br)
                )));
            }
            Ok(l)
        })
        .collect()
}

fn module_eigen(module: &dyn LieModule, x: usize) -> Result<BTreeMap<i64, Scalar>> {
    let alg = module.algebra();
    module
        .basis()
        .into_iter()
        .map(|m| {
            let v = module.act_basis(x, m)?;
            let l = v.get(&m);
            if v != ModElem::term(m, l.clone()) {
                return Err(Error::NonDiagonal(format!(
                    "{} on {} gives {}",
                    alg.label(x),
                    module.label(m),
                    module.render(&v)
                )));
            }
            Ok((m, l))
        })
        .collect()
}

/// Builds `C^p(g, h; M)` for `p <= p_max`, where `h` is spanned by the listed
/// basis elements. `h` must be abelian and act diagonally on `g` and `M`.
pub fn relative_slice(
    alg: &dyn LieAlgebra,
    h: &[usize],
    module: &dyn LieModule,
    p_max: usize,
) -> Result<RelativeSlice> {
    let ad: Vec<Vec<Scalar>> = h.iter().map(|x| ad_eigen(alg, *x)).collect::<Result<_>>()?;
    for (k, x) in h.iter().enumerate() {
        for y in h {
            if !ad[k][*y].is_zero() {
                return Err(Error::Unsupported(format!(
                    "subalgebra is not abelian: [{}, {}] ≠ 0",
                    alg.label(*x),
                    alg.label(*y)
                )));
            }
        }
    }
    let eig: Vec<BTreeMap<i64, Scalar>> =
        h.iter().map(|x| module_eigen(module, *x)).collect::<Result<_>>()?;
    let grading = ad_weights(alg).ok();
    let complement: Vec<usize> = (0..alg.dim()).filter(|b| !h.contains(b)).collect();
    let mut bases = Vec::with_capacity(p_max + 1);
    for p in 0..=p_max {
        let mut basis = Vec::new();
        for t in tuples_from(&complement, p) {
            if let Some(gw) = &grading {
                let target: Scalar = t.iter().map(|i| gw[*i].clone()).sum();
                if !module.covers_weight(&target) {
                    return Err(Error::OutsideCochainWindow(format!(
                        "{} does not cover weight {}",
                        module.name(),
                        fmt_scalar(&target)
                    )));
                }
            }
            for m in module.basis() {
                let ok = (0..h.len()).all(|k| {
                    let tw: Scalar = t.iter().map(|i| ad[k][*i].clone()).sum();
                    eig[k][&m] == tw
                });
                if ok {
                    basis.push((t.clone(), m));
                }
            }
        }
        bases.push(basis);
    }
    Ok(RelativeSlice {
        algebra: alg.name(),
        module: module.name(),
        subalgebra: h.to_vec(),
        complex: FiniteComplex::assemble(alg, module, &complement, bases)?,
    })
}

/// A representative of `E2^{p,q} = H^p(g, h; M) ⊗ Λ^q h*`: a relative
/// cocycle together with an exterior monomial on `h` (increasing indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Rep {
    pub p: usize,
    pub q: usize,
    pub rel: Cochain,
    pub form: Vec<usize>,
}

/// Dimensions and representatives of the Hochschild-Serre `E2` page for an
/// abelian `h`.
#[derive(Clone, Debug)]
pub struct E2Page {
    pub relative: Vec<usize>,
    pub h_dim: usize,
    /// `dims[p][q]`.
    pub dims: Vec<Vec<usize>>,
    pub reps: BTreeMap<(usize, usize), Vec<E2Rep>>,
    pub subalgebra: Vec<usize>,
}

impl E2Page {
    /// `Σ_{p+q=n} dim E2^{p,q}`.
    pub fn total(&self, n: usize) -> usize {
        (0..=n)
            .filter_map(|p| self.dims.get(p).and_then(|row| row.get(n - p)))
            .sum()
    }
}

pub fn hs_e2_page(
    alg: &dyn LieAlgebra,
    h: &[usize],
    module: &dyn LieModule,
    p_max: usize,
    q_max: usize,
) -> Result<E2Page> {
    let rel = relative_slice(alg, h, module, p_max)?;
    let relative = rel.cohomology();
    let mut dims = vec![vec![0; q_max + 1]; p_max + 1];
    let mut reps = BTreeMap::new();
    for p in 0..=p_max {
        let classes = rel.cohomology_basis(p);
        for (q, slot) in dims[p].iter_mut().enumerate() {
            let forms = tuples_from(h, q);
            *slot = relative[p] * forms.len();
            let list: Vec<E2Rep> = classes
                .iter()
                .flat_map(|c| {
                    forms.iter().map(move |f| E2Rep {
                        p,
                        q,
                        rel: c.clone(),
                        form: f.clone(),
                    })
                })
                .collect();
            reps.insert((p, q), list);
        }
    }
    Ok(E2Page {
        relative,
        h_dim: h.len(),
        dims,
        reps,
        subalgebra: h.to_vec(),
    })
}

/// Evaluates the product cochain `rel ∧ form` (the form extended by zero on
/// the complement of `h`) with the shuffle sign convention.
fn product_eval(rep: &E2Rep, args: &[usize]) -> ModElem {
    let n = args.len();
    let mut out = ModElem::zero();
    if n != rep.p + rep.q {
        return out;
    }
    let positions: Vec<usize> = (0..n).collect();
    for first in tuples_from(&positions, rep.p) {
        let second: Vec<usize> = positions.iter().copied().filter(|i| !first.contains(i)).collect();
        let mut order = first.clone();
        order.extend_from_slice(&second);
        let Some((_, shuffle_sign)) = sort_tuple(&order) else { continue };
        let ys: Vec<usize> = second.iter().map(|i| args[*i]).collect();
        let Some((sorted, form_sign)) = sort_tuple(&ys) else { continue };
        if sorted != rep.form {
            continue;
        }
        let xs: Vec<usize> = first.iter().map(|i| args[*i]).collect();
        out.axpy(&(shuffle_sign * form_sign), &rep.rel.eval(&xs));
    }
    out
}

/// Evaluates the full coboundary of an `E_r` representative on `args`, which
/// must have bidegree `(p + r, q - r + 1)`: `p + r` arguments outside `h` and
/// `q - r + 1` inside.
pub fn hs_apply(
    alg: &dyn LieAlgebra,
    module: &dyn LieModule,
    h: &[usize],
    rep: &E2Rep,
    r: usize,
    args: &[usize],
) -> Result<ModElem> {
    let inside = args.iter().filter(|a| h.contains(a)).count();
    let outside = args.len() - inside;
    if rep.q + 1 < r || outside != rep.p + r || inside != rep.q + 1 - r {
        return Err(Error::Bidegree {
            expected: format!("({}, {})", rep.p + r, (rep.q + 1) as i64 - r as i64),
            got: format!("({outside}, {inside})"),
        });
    }
    let act = module_action(module);
    let c = |t: &[usize]| Ok(product_eval(rep, t));
    coboundary_at(alg, &act, &c, args)
}

/// Checks that `d_r` vanishes on every representative at `(p, q)` and every
/// argument tuple of the target bidegree.
pub fn hs_differential_vanishes(
    alg: &dyn LieAlgebra,
    module: &dyn LieModule,
    page: &E2Page,
    r: usize,
    p: usize,
    q: usize,
) -> Result<CheckReport> {
    let h = &page.subalgebra;
    let mut report = CheckReport::new(format!("d{r} on E{r}^{{{p},{q}}}"));
    let reps = page.reps.get(&(p, q)).cloned().unwrap_or_default();
    if q + 1 < r {
        return Ok(report);
    }
    let complement: Vec<usize> = (0..alg.dim()).filter(|b| !h.contains(b)).collect();
    for rep in &reps {
        for outer in tuples_from(&complement, p + r) {
            for inner in tuples_from(h, q + 1 - r) {
                let mut args = outer.clone();
                args.extend_from_slice(&inner);
                let v = hs_apply(alg, module, h, rep, r, &args)?;
                report.record(v.is_zero(), || {
                    format!("value {} on {:?}", module.render(&v), args)
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{sl2, sl3, SL2_H};
    use crate::modules::{TrivialModule, VermaDual, VermaKind};
    use crate::scalar::int;
    use std::sync::Arc;

    #[test]
    fn relative_trivial() {
        let g = Arc::new(sl2());
        let t = TrivialModule::new(g.clone());
        let r = relative_slice(g.as_ref(), &[SL2_H], &t, 2).unwrap();
        assert_eq!(r.cohomology(), vec![1, 0, 1]);
        for (t, _) in r.bases.iter().flatten() {
            assert!(!t.contains(&SL2_H));
        }
    }

    #[test]
    fn relative_verma_dual() {
        let g = sl2();
        let m = VermaDual::new(VermaKind::M, 12).unwrap();
        let r = relative_slice(&g, &[SL2_H], &m, 2).unwrap();
        assert_eq!(r.dims(), vec![1, 1, 1]);
        assert_eq!(r.cohomology(), vec![1, 0, 0]);
    }

    #[test]
    fn e2_page_bounds_absolute_cohomology() {
        let g = Arc::new(sl2());
        let t = TrivialModule::new(g.clone());
        let page = hs_e2_page(g.as_ref(), &[SL2_H], &t, 2, 1).unwrap();
        assert_eq!(page.dims, vec![vec![1, 1], vec![0, 0], vec![1, 1]]);
        for (n, h) in [1, 0, 0, 1].into_iter().enumerate() {
            assert!(page.total(n) >= h);
        }
    }

    #[test]
    fn bidegree_mismatch_is_an_error() {
        let g = Arc::new(sl2());
        let t = TrivialModule::new(g.clone());
        let page = hs_e2_page(g.as_ref(), &[SL2_H], &t, 2, 1).unwrap();
        let rep = &page.reps[&(0, 1)][0];
        assert!(matches!(
            hs_apply(g.as_ref(), &t, &[SL2_H], rep, 2, &[0, 1]),
            Err(Error::Bidegree { .. })
        ));
        // d2 on E2^{0,1}: the form h* has coboundary -h*([x, y]) on (e, f)
        let v = hs_apply(g.as_ref(), &t, &[SL2_H], rep, 2, &[0, 2]).unwrap();
        assert_eq!(v, ModElem::term(0, int(-1)));
    }

    #[test]
    fn sl3_relative_to_cartan() {
        let g = Arc::new(sl3());
        let t = TrivialModule::new(g.clone());
        let r = relative_slice(g.as_ref(), &[3, 4], &t, 6).unwrap();
        // H*(sl3, h) has Poincaré polynomial 1 + 2t^2 + 2t^4 + t^6
        assert_eq!(r.cohomology(), vec![1, 0, 2, 0, 2, 0, 1]);
    }
}
