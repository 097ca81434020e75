//! Chevalley-Eilenberg cochains, coboundaries, weight slices, relative
//! complexes, connecting homomorphisms and Hochschild-Serre `E2` data.
//!
//! Sign convention:
//! `dc(x_0..x_q) = Σ_i (-1)^i x_i·c(..x̂_i..) + Σ_{i<j} (-1)^{i+j} c([x_i,x_j], ..x̂_i..x̂_j..)`.

mod complex;
mod connecting;
mod relative;

use std::collections::BTreeMap;

pub use complex::{
    betti, is_exact, weight_slice, BettiTable, ComplexSlice, FiniteComplex, SliceSummary,
};
pub use connecting::{connecting_at, connecting_hom, les_consistency, LesReport};
pub use relative::{hs_apply, hs_differential_vanishes, hs_e2_page, relative_slice, E2Page, E2Rep, RelativeSlice};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::modules::LieModule;
use crate::scalar::{int, ModElem, Scalar};

/// Sorts a tuple of distinct basis indices, returning the sign of the
/// permutation; `None` when an index repeats.
pub fn sort_tuple(t: &[usize]) -> Option<(Vec<usize>, Scalar)> {
    let mut v = t.to_vec();
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, int(sign)))
}

/// Strictly increasing `q`-tuples drawn from `items` (kept in the given order).
pub fn tuples_from(items: &[usize], q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(items: &[usize], q: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, q, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, q, 0, &mut cur, &mut out);
    out
}

/// Strictly increasing `q`-tuples of `0..n`.
pub fn tuples(n: usize, q: usize) -> Vec<Vec<usize>> {
    tuples_from(&(0..n).collect::<Vec<_>>(), q)
}

/// An alternating cochain stored by its values on strictly increasing tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: BTreeMap<Vec<usize>, ModElem>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain {
            degree,
            values: BTreeMap::new(),
        }
    }

    /// Tabulates `f` on every increasing tuple of `0..n`.
    pub fn from_fn<E>(
        n: usize,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Result<ModElem, E>,
    ) -> Result<Self, E> {
        let mut c = Cochain::zero(degree);
        for t in tuples(n, degree) {
            let v = f(&t)?;
            c.insert(t, v);
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sets the value on a tuple in any order (the alternating extension is implied).
    pub fn set(&mut self, tuple: &[usize], value: ModElem) -> Result<()> {
        if tuple.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                got: tuple.len(),
            });
        }
        match sort_tuple(tuple) {
            Some((t, s)) => {
                self.insert(t, value.scaled(&s));
                Ok(())
            }
            None if value.is_zero() => Ok(()),
            None => Err(Error::Unsupported(format!(
                "nonzero value on repeated arguments {tuple:?}"
            ))),
        }
    }

    fn insert(&mut self, sorted: Vec<usize>, value: ModElem) {
        if value.is_zero() {
            self.values.remove(&sorted);
        } else {
            self.values.insert(sorted, value);
        }
    }

    /// Value on an arbitrary tuple, sign-permuted from the stored order.
    pub fn eval(&self, tuple: &[usize]) -> ModElem {
        match sort_tuple(tuple) {
            Some((t, s)) => self.values.get(&t).map(|v| v.scaled(&s)).unwrap_or_default(),
            None => ModElem::zero(),
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &ModElem)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (t, v) in &other.values {
            let sum = out.values.get(t).cloned().unwrap_or_default().add(v);
            out.insert(t.clone(), sum);
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Cochain {
        let mut out = Cochain::zero(self.degree);
        for (t, v) in &self.values {
            out.insert(t.clone(), v.scaled(c));
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scaled(&int(-1)))
    }

    /// Applies a linear map to every value.
    pub fn map_values(&self, mut f: impl FnMut(&ModElem) -> Result<ModElem>) -> Result<Cochain> {
        let mut out = Cochain::zero(self.degree);
        for (t, v) in &self.values {
            out.insert(t.clone(), f(v)?);
        }
        Ok(out)
    }

    pub fn render(&self, alg: &dyn LieAlgebra, module: &dyn LieModule) -> String {
        if self.values.is_empty() {
            return "0".into();
        }
        self.values
            .iter()
            .map(|(t, v)| {
                let args: Vec<String> = t.iter().map(|i| alg.label(*i)).collect();
                format!("({}) ↦ {}", args.join(", "), module.render(v))
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Evaluates `dc` on `args` (any order) for a cochain given by `c`, with the
/// algebra acting on values through `act`.
pub fn coboundary_at(
    alg: &dyn LieAlgebra,
    act: &dyn Fn(usize, &ModElem) -> Result<ModElem>,
    c: &dyn Fn(&[usize]) -> Result<ModElem>,
    args: &[usize],
) -> Result<ModElem> {
    let n = args.len();
    let mut out = ModElem::zero();
    let mut rest = Vec::with_capacity(n);
    for i in 0..n {
        rest.clear();
        rest.extend(args.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, a)| *a));
        let v = c(&rest)?;
        if !v.is_zero() {
            let term = act(args[i], &v)?;
            out.axpy(&int(if i % 2 == 0 { 1 } else { -1 }), &term);
        }
    }
    let mut call = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        for j in (i + 1)..n {
            let br = alg.bracket_basis(args[i], args[j])?;
            if br.is_zero() {
                continue;
            }
            let sign = int(if (i + j) % 2 == 0 { 1 } else { -1 });
            for (k, coef) in br.iter() {
                call.clear();
                call.push(*k);
                call.extend(
                    args.iter()
                        .enumerate()
                        .filter(|(l, _)| *l != i && *l != j)
                        .map(|(_, a)| *a),
                );
                let v = c(&call)?;
                if !v.is_zero() {
                    out.axpy(&(&sign * coef), &v);
                }
            }
        }
    }
    Ok(out)
}

/// The action closure of a module, for use with [`coboundary_at`].
pub fn module_action(module: &dyn LieModule) -> impl Fn(usize, &ModElem) -> Result<ModElem> + '_ {
    move |x, v| {
        let mut out = ModElem::zero();
        for (m, c) in v.iter() {
            out.axpy(c, &module.act_basis(x, *m)?);
        }
        Ok(out)
    }
}

/// The zero action, giving the scalar coboundary `d^ℝ` on any value space.
pub fn trivial_action(_x: usize, _v: &ModElem) -> Result<ModElem> {
    Ok(ModElem::zero())
}

/// `dc` on every increasing tuple of the (finite) algebra basis.
pub fn coboundary(alg: &dyn LieAlgebra, module: &dyn LieModule, c: &Cochain) -> Result<Cochain> {
    let act = module_action(module);
    let f = |t: &[usize]| Ok(c.eval(t));
    Cochain::from_fn(alg.dim(), c.degree() + 1, |t| coboundary_at(alg, &act, &f, t))
}
