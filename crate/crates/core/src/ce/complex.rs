use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{coboundary_at, module_action, tuples, Cochain};
use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{in_image, kernel_basis, rank, SparseMatrix};
use crate::modules::LieModule;
use crate::scalar::{fmt_scalar, ModElem, Scalar};

/// A finite cochain complex whose degree-`q` basis vectors are pairs
/// `(tuple, module basis index)`, with coboundary matrices `d[q]: C^q → C^{q+1}`.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    pub bases: Vec<Vec<(Vec<usize>, i64)>>,
    index: Vec<HashMap<(Vec<usize>, i64), usize>>,
    pub d: Vec<SparseMatrix>,
    pub ranks: Vec<usize>,
}

impl FiniteComplex {
    /// Assembles the coboundary matrices for the given bases. `allowed` lists
    /// the algebra basis indices that may appear in argument tuples.
    pub(crate) fn assemble(
        alg: &dyn LieAlgebra,
        module: &dyn LieModule,
        allowed: &[usize],
        bases: Vec<Vec<(Vec<usize>, i64)>>,
    ) -> Result<Self> {
        let index: Vec<HashMap<(Vec<usize>, i64), usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let allowed_set: BTreeSet<usize> = allowed.iter().copied().collect();
        // pairs (a, b) with a < b whose bracket has a nonzero t-coordinate
        let mut producers: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (i, &a) in allowed.iter().enumerate() {
            for &b in &allowed[i + 1..] {
                for k in alg.bracket_basis(a, b)?.keys() {
                    producers.entry(*k).or_default().push((a.min(b), a.max(b)));
                }
            }
        }
        let act = module_action(module);
        let q_max = bases.len() - 1;
        let d: Vec<SparseMatrix> = (0..q_max)
            .into_par_iter()
            .map(|q| -> Result<SparseMatrix> {
                let mut m = SparseMatrix::zeros(bases[q + 1].len(), bases[q].len());
                for (col, (t, mi)) in bases[q].iter().enumerate() {
                    let mut targets: BTreeSet<Vec<usize>> = BTreeSet::new();
                    for &x in allowed {
                        if !t.contains(&x) {
                            let mut s = t.clone();
                            s.push(x);
                            s.sort_unstable();
                            targets.insert(s);
                        }
                    }
                    for (pos, k) in t.iter().enumerate() {
                        let mut rest = t.clone();
                        rest.remove(pos);
                        for &(a, b) in producers.get(k).map(Vec::as_slice).unwrap_or(&[]) {
                            if !rest.contains(&a) && !rest.contains(&b) {
                                let mut s = rest.clone();
                                s.push(a);
                                s.push(b);
                                s.sort_unstable();
                                targets.insert(s);
                            }
                        }
                    }
                    let value = ModElem::basis(*mi);
                    let c = |args: &[usize]| -> Result<ModElem> {
                        match super::sort_tuple(args) {
                            Some((s, sign)) if s == *t => Ok(value.scaled(&sign)),
                            _ => Ok(ModElem::zero()),
                        }
                    };
                    for s in targets {
                        debug_assert!(s.iter().all(|x| allowed_set.contains(x)));
                        let out = coboundary_at(alg, &act, &c, &s)?;
                        for (m2, coef) in out.iter() {
                            let row = index[q + 1].get(&(s.clone(), *m2)).ok_or_else(|| {
                                Error::OutsideCochainWindow(format!(
                                    "coboundary of ({:?}, {}) reaches ({:?}, {}) outside the complex",
                                    t,
                                    module.label(*mi),
                                    s,
                                    module.label(*m2)
                                ))
                            })?;
                            m.add_to(*row, col, coef);
                        }
                    }
                }
                Ok(m)
            })
            .collect::<Result<_>>()?;
        let ranks = d.par_iter().map(rank).collect();
        Ok(FiniteComplex {
            bases,
            index,
            d,
            ranks,
        })
    }

    pub fn q_max(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    fn rank_d(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    fn rank_into(&self, q: usize) -> usize {
        if q == 0 {
            0
        } else {
            self.rank_d(q - 1)
        }
    }

    /// Cohomology dimensions in degrees `0..=q_max`. The top degree assumes
    /// `C^{q_max+1} = 0`, which holds when `q_max` is the algebra dimension.
    pub fn cohomology(&self) -> Vec<usize> {
        (0..=self.q_max())
            .map(|q| self.bases[q].len() - self.rank_d(q) - self.rank_into(q))
            .collect()
    }

    /// Checks `d[q+1] · d[q] = 0` for every consecutive pair.
    pub fn check_d_squared(&self) -> CheckReport {
        let mut report = CheckReport::new("d∘d = 0");
        for q in 0..self.d.len().saturating_sub(1) {
            match self.d[q + 1].mul(&self.d[q]) {
                Ok(p) => report.record(p.is_zero(), || format!("d{}∘d{} ≠ 0", q + 1, q)),
                Err(e) => report.fail(e.to_string()),
            }
        }
        report
    }

    /// Coordinates of a cochain of degree `q` in this complex's basis.
    pub fn vector_of(&self, c: &Cochain) -> Result<Vec<Scalar>> {
        let q = c.degree();
        if q > self.q_max() {
            return Err(Error::DimensionMismatch {
                expected: self.q_max(),
                got: q,
            });
        }
        let mut v = vec![Scalar::zero(); self.bases[q].len()];
        for (t, val) in c.values() {
            for (m, coef) in val.iter() {
                let i = self.index[q].get(&(t.clone(), *m)).ok_or_else(|| {
                    Error::OutsideCochainWindow(format!("component ({t:?}, {m}) is not in the complex"))
                })?;
                v[*i] = coef.clone();
            }
        }
        Ok(v)
    }

    pub fn cochain_of(&self, q: usize, v: &[Scalar]) -> Cochain {
        let mut c = Cochain::zero(q);
        let mut values: BTreeMap<Vec<usize>, ModElem> = BTreeMap::new();
        for (i, coef) in v.iter().enumerate() {
            if !coef.is_zero() {
                let (t, m) = &self.bases[q][i];
                values.entry(t.clone()).or_default().add_term(*m, coef.clone());
            }
        }
        for (t, val) in values {
            c.set(&t, val).expect("tuples in the basis are increasing");
        }
        c
    }

    /// A basis of the image of `d[q-1]` inside `C^q`, as column vectors.
    fn image_columns(&self, q: usize) -> Vec<Vec<Scalar>> {
        if q == 0 {
            return Vec::new();
        }
        let d = &self.d[q - 1];
        (0..d.cols()).map(|j| d.column(j)).collect()
    }

    /// Returns a primitive `b` with `db = c` when `c` is exact.
    pub fn primitive(&self, c: &Cochain) -> Result<Option<Cochain>> {
        let q = c.degree();
        let v = self.vector_of(c)?;
        if q == 0 {
            return Ok(v.iter().all(Zero::is_zero).then(|| Cochain::zero(0)));
        }
        Ok(in_image(&self.d[q - 1], &v)?.map(|x| self.cochain_of(q - 1, &x)))
    }

    /// Cocycles in degree `q` whose classes form a basis of `H^q`.
    pub fn cohomology_basis(&self, q: usize) -> Vec<Cochain> {
        let n = self.bases[q].len();
        let kernel = if q < self.d.len() {
            kernel_basis(&self.d[q])
        } else {
            (0..n)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); n];
                    v[i] = Scalar::from_integer(1.into());
                    v
                })
                .collect()
        };
        let mut span = self.image_columns(q);
        let mut current = crate::linalg::span_rank(n, &span);
        let mut reps = Vec::new();
        for z in kernel {
            span.push(z.clone());
            let r = crate::linalg::span_rank(n, &span);
            if r > current {
                current = r;
                reps.push(self.cochain_of(q, &z));
            } else {
                span.pop();
            }
        }
        reps
    }

    /// Rank of the map induced on cohomology by a chain map given on cocycles:
    /// `rank([B | f(Z)]) - rank(B)` with `B` the coboundaries of the target.
    pub fn induced_rank(&self, q: usize, images: &[Vec<Scalar>]) -> usize {
        let n = self.bases[q].len();
        let mut span = self.image_columns(q);
        let base = crate::linalg::span_rank(n, &span);
        span.extend(images.iter().cloned());
        crate::linalg::span_rank(n, &span) - base
    }

    /// Kernel basis of `d[q]` (all of `C^q` in the top degree).
    pub fn cocycles(&self, q: usize) -> Vec<Vec<Scalar>> {
        if q < self.d.len() {
            kernel_basis(&self.d[q])
        } else {
            let n = self.bases[q].len();
            (0..n)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); n];
                    v[i] = Scalar::from_integer(1.into());
                    v
                })
                .collect()
        }
    }
}

/// The subcomplex of cochains of weight `w`, i.e. cochains sending a tuple of
/// ad-weight `s` into the module weight space `s + w`.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub algebra: String,
    pub module: String,
    pub weight: Scalar,
    pub complex: FiniteComplex,
}

impl std::ops::Deref for ComplexSlice {
    type Target = FiniteComplex;
    fn deref(&self) -> &FiniteComplex {
        &self.complex
    }
}

pub(crate) fn ad_weights(alg: &dyn LieAlgebra) -> Result<Vec<Scalar>> {
    (0..alg.dim())
        .map(|i| {
            alg.ad_weight(i).ok_or_else(|| {
                Error::NonDiagonal(format!("{} has no diagonal grading element", alg.name()))
            })
        })
        .collect()
}

pub(crate) fn weight_table(module: &dyn LieModule) -> Result<BTreeMap<Scalar, Vec<i64>>> {
    let mut table: BTreeMap<Scalar, Vec<i64>> = BTreeMap::new();
    for m in module.basis() {
        let w = module.weight(m).ok_or_else(|| {
            Error::NonDiagonal(format!("{} has no weight on {}", module.name(), module.label(m)))
        })?;
        table.entry(w).or_default().push(m);
    }
    Ok(table)
}

fn tuple_weight(weights: &[Scalar], t: &[usize]) -> Scalar {
    t.iter().map(|i| weights[*i].clone()).sum()
}

/// Builds the weight-`w` slice in degrees `0..=q_max`.
pub fn weight_slice(
    alg: &dyn LieAlgebra,
    module: &dyn LieModule,
    q_max: usize,
    w: &Scalar,
) -> Result<ComplexSlice> {
    let weights = ad_weights(alg)?;
    let table = weight_table(module)?;
    let mut bases = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        let mut basis = Vec::new();
        for t in tuples(alg.dim(), q) {
            let target = tuple_weight(&weights, &t) + w;
            if !module.covers_weight(&target) {
                return Err(Error::OutsideCochainWindow(format!(
                    "{} does not cover weight {} needed by the weight-{} slice; enlarge the window",
                    module.name(),
                    fmt_scalar(&target),
                    fmt_scalar(w)
                )));
            }
            for m in table.get(&target).map(Vec::as_slice).unwrap_or(&[]) {
                basis.push((t.clone(), *m));
            }
        }
        bases.push(basis);
    }
    let all: Vec<usize> = (0..alg.dim()).collect();
    Ok(ComplexSlice {
        algebra: alg.name(),
        module: module.name(),
        weight: w.clone(),
        complex: FiniteComplex::assemble(alg, module, &all, bases)?,
    })
}

/// Cochain dimensions and cohomology of one weight slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceSummary {
    pub cochains: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub d_squared_zero: bool,
}

/// Cohomology dimensions per (degree, weight).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub algebra: String,
    pub module: String,
    pub q_max: usize,
    pub slices: BTreeMap<Scalar, SliceSummary>,
}

impl BettiTable {
    /// Sum over all computed weights.
    pub fn total(&self) -> Vec<usize> {
        let mut out = vec![0; self.q_max + 1];
        for s in self.slices.values() {
            for (q, b) in s.cohomology.iter().enumerate() {
                out[q] += b;
            }
        }
        out
    }

    pub fn at_weight(&self, w: &Scalar) -> Option<&SliceSummary> {
        self.slices.get(w)
    }

    /// Weights other than zero with some nonzero cohomology.
    pub fn nonzero_off_weights(&self) -> Vec<Scalar> {
        self.slices
            .iter()
            .filter(|(w, s)| !w.is_zero() && s.cohomology.iter().any(|b| *b > 0))
            .map(|(w, _)| w.clone())
            .collect()
    }
}

/// Computes every weight slice with `|w| <= bound` that can be nonempty,
/// in parallel, and collects the cohomology dimensions.
pub fn betti(
    alg: &dyn LieAlgebra,
    module: &dyn LieModule,
    q_max: usize,
    bound: &Scalar,
) -> Result<BettiTable> {
    let weights = ad_weights(alg)?;
    let table = weight_table(module)?;
    let mut tuple_weights = BTreeSet::new();
    for q in 0..=q_max {
        for t in tuples(alg.dim(), q) {
            tuple_weights.insert(tuple_weight(&weights, &t));
        }
    }
    let mut candidates: BTreeSet<Scalar> = BTreeSet::new();
    candidates.insert(Scalar::zero());
    for mw in table.keys() {
        for tw in &tuple_weights {
            let w = mw - tw;
            if w.abs() <= *bound {
                candidates.insert(w);
            }
        }
    }
    let slices: Vec<(Scalar, SliceSummary)> = candidates
        .into_par_iter()
        .map(|w| {
            let s = weight_slice(alg, module, q_max, &w)?;
            let summary = SliceSummary {
                cochains: s.dims(),
                cohomology: s.cohomology(),
                d_squared_zero: s.check_d_squared().passed(),
            };
            Ok((w, summary))
        })
        .collect::<Result<_>>()?;
    Ok(BettiTable {
        algebra: alg.name(),
        module: module.name(),
        q_max,
        slices: slices.into_iter().collect(),
    })
}

/// Decides whether `c` is a coboundary by splitting it into weight
/// components and solving in each slice. Returns a primitive when exact.
pub fn is_exact(alg: &dyn LieAlgebra, module: &dyn LieModule, c: &Cochain) -> Result<Option<Cochain>> {
    let weights = ad_weights(alg)?;
    let q = c.degree();
    let mut parts: BTreeMap<Scalar, Cochain> = BTreeMap::new();
    for (t, v) in c.values() {
        for (m, coef) in v.iter() {
            let mw = module.weight(*m).ok_or_else(|| {
                Error::NonDiagonal(format!("{} has no weight on {}", module.name(), module.label(*m)))
            })?;
            let w = mw - tuple_weight(&weights, t);
            let part = parts.entry(w).or_insert_with(|| Cochain::zero(q));
            let mut single = Cochain::zero(q);
            single.set(t, ModElem::term(*m, coef.clone()))?;
            *part = part.add(&single);
        }
    }
    let mut primitive = Cochain::zero(q.saturating_sub(1));
    for (w, part) in parts {
        let slice = weight_slice(alg, module, q, &w)?;
        match slice.primitive(&part)? {
            Some(b) => primitive = primitive.add(&b),
            None => return Ok(None),
        }
    }
    Ok(Some(primitive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{sl2, sl3};
    use crate::modules::{DensityModule, TrivialModule, VermaDual, VermaKind};
    use crate::scalar::int;
    use std::sync::Arc;

    #[test]
    fn trivial_sl2_betti() {
        let g = Arc::new(sl2());
        let t = TrivialModule::new(g.clone());
        let b = betti(g.as_ref(), &t, 3, &int(8)).unwrap();
        assert_eq!(b.total(), vec![1, 0, 0, 1]);
        let s0 = b.at_weight(&int(0)).unwrap();
        assert_eq!(s0.cochains, vec![1, 1, 1, 1]);
    }

    #[test]
    fn verma_dual_weight_zero_slice() {
        let g = sl2();
        let m = VermaDual::new(VermaKind::M, 12).unwrap();
        let s = weight_slice(&g, &m, 3, &int(0)).unwrap();
        assert_eq!(s.dims(), vec![1, 2, 2, 1]);
        assert!(s.check_d_squared().passed());
        assert_eq!(kernel_basis(&s.d[1]).len(), 1);
        assert_eq!(s.cohomology(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn density_cohomology() {
        let g = sl2();
        for (lambda, expected) in [(0, vec![1, 1, 0, 0]), (1, vec![0, 1, 1, 0]), (2, vec![0, 0, 0, 0])] {
            let f = DensityModule::over_sl2(int(lambda), 12).unwrap();
            let b = betti(&g, &f, 3, &int(8)).unwrap();
            assert_eq!(b.total(), expected, "lambda = {lambda}");
            assert!(b.nonzero_off_weights().is_empty());
        }
    }

    #[test]
    fn small_window_is_reported() {
        let g = sl2();
        let m = VermaDual::new(VermaKind::M, 2).unwrap();
        assert!(matches!(
            weight_slice(&g, &m, 3, &int(4)),
            Err(Error::OutsideCochainWindow(_))
        ));
    }

    #[test]
    fn sl3_trivial_cohomology() {
        let g = sl3();
        let t = TrivialModule::new(Arc::new(g.clone()));
        let s = weight_slice(&g, &t, 8, &int(0)).unwrap();
        // H*(sl3) is an exterior algebra on generators of degree 3 and 5
        assert_eq!(s.cohomology(), vec![1, 0, 0, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn exactness_of_coboundary() {
        let g = sl2();
        let f0 = DensityModule::over_sl2(int(0), 12).unwrap();
        let mut x = Cochain::zero(0);
        x.set(&[], ModElem::basis(1)).unwrap();
        let dx = super::super::coboundary(&g, &f0, &x).unwrap();
        let prim = is_exact(&g, &f0, &dx).unwrap().expect("exact");
        assert_eq!(super::super::coboundary(&g, &f0, &prim).unwrap(), dx);
    }
}
