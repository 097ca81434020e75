use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{in_window, LieModule};
use crate::error::{Error, Result};
use crate::lie::{FiniteLieAlgebra, LieAlgebra};
use crate::scalar::{ModElem, Scalar, Vector};

/// Rewrites a word in the generators of `U(g)` into ordered PBW monomials,
/// using `y x = x y - [x, y]` whenever `rank[y] > rank[x]`.
pub fn pbw_normal_form(
    alg: &dyn LieAlgebra,
    rank: &[usize],
    word: &[usize],
) -> Result<Vector<Vec<usize>>> {
    let Some(pos) = (0..word.len().saturating_sub(1)).find(|&i| rank[word[i]] > rank[word[i + 1]])
    else {
        return Ok(Vector::basis(word.to_vec()));
    };
    let (y, x) = (word[pos], word[pos + 1]);
    let mut swapped = word.to_vec();
    swapped.swap(pos, pos + 1);
    let mut out = pbw_normal_form(alg, rank, &swapped)?;
    // y x = x y + [y, x]
    for (z, c) in alg.bracket_basis(y, x)?.iter() {
        let mut shorter = word[..pos].to_vec();
        shorter.push(*z);
        shorter.extend_from_slice(&word[pos + 2..]);
        out.axpy(c, &pbw_normal_form(alg, rank, &shorter)?);
    }
    Ok(out)
}

/// Restricted dual of the PBW window of `U(g)`: functionals `u*` dual to the
/// ordered monomials `u` of length at most `max_len` (length at least one
/// when not augmented, which gives `(U g⁺)♯`).
///
/// The action `(x·φ)(u) = -φ(x u)` is exact on every stored monomial `u`.
/// Values on monomials longer than `max_len` are not stored, so the module
/// axiom only holds exactly on coordinates of length below `max_len`.
#[derive(Clone)]
pub struct PbwDual {
    algebra: Arc<FiniteLieAlgebra>,
    max_len: usize,
    augmented: bool,
    order: Vec<usize>,
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, i64>,
    /// `table[x][m]` is `x · m*`.
    table: Vec<Vec<ModElem>>,
}

impl PbwDual {
    /// Uses the basis order of the algebra as the PBW order.
    pub fn new(algebra: Arc<FiniteLieAlgebra>, max_len: usize, augmented: bool) -> Result<Self> {
        let order = (0..algebra.dim()).collect();
        Self::with_order(algebra, max_len, augmented, order)
    }

    /// `order` lists the generators from smallest to largest.
    pub fn with_order(
        algebra: Arc<FiniteLieAlgebra>,
        max_len: usize,
        augmented: bool,
        order: Vec<usize>,
    ) -> Result<Self> {
        let n = algebra.dim();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidModule("PBW order is not a permutation".into()));
        }
        let mut rank = vec![0; n];
        for (r, &g) in order.iter().enumerate() {
            rank[g] = r;
        }
        let mut monomials = Vec::new();
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for len in 0..=max_len {
            if len > 0 || augmented {
                monomials.extend(layer.iter().cloned());
            }
            let mut next = Vec::new();
            for m in &layer {
                let start = m.last().map_or(0, |g| rank[*g]);
                for &g in &order[start..] {
                    let mut w = m.clone();
                    w.push(g);
                    next.push(w);
                }
            }
            layer = next;
        }
        let index: HashMap<Vec<usize>, i64> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as i64))
            .collect();
        let mut table = vec![vec![ModElem::zero(); monomials.len()]; n];
        for (x, row) in table.iter_mut().enumerate() {
            for (u_id, u) in monomials.iter().enumerate() {
                let mut word = vec![x];
                word.extend_from_slice(u);
                for (v, c) in pbw_normal_form(algebra.as_ref(), &rank, &word)?.iter() {
                    if let Some(&v_id) = index.get(v) {
                        row[v_id as usize].add_term(u_id as i64, -c.clone());
                    }
                }
            }
        }
        Ok(PbwDual {
            algebra,
            max_len,
            augmented,
            order,
            monomials,
            index,
            table,
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn monomial(&self, id: i64) -> &[usize] {
        &self.monomials[id as usize]
    }

    /// Basis id of the functional dual to `monomial` (given in PBW order).
    pub fn id_of(&self, monomial: &[usize]) -> Option<i64> {
        self.index.get(monomial).copied()
    }

    /// `φ(u)` for a functional `φ` and stored monomial id `u`.
    pub fn evaluate(&self, phi: &ModElem, u: i64) -> Scalar {
        phi.get(&u)
    }
}

impl LieModule for PbwDual {
    fn name(&self) -> String {
        let base = if self.augmented { "(Ug)♯" } else { "(Ug⁺)♯" };
        format!("{base}[{}, L={}]", self.algebra.name(), self.max_len)
    }

    fn algebra(&self) -> Arc<dyn LieAlgebra> {
        self.algebra.clone()
    }

    fn window(&self) -> (i64, i64) {
        (0, self.monomials.len() as i64 - 1)
    }

    fn label(&self, id: i64) -> String {
        let m = &self.monomials[id as usize];
        match m.len() {
            0 => "ε".into(),
            1 => format!("{}*", self.algebra.label(m[0])),
            _ => {
                let parts: Vec<String> = m.iter().map(|g| self.algebra.label(*g)).collect();
                format!("({})*", parts.join(" "))
            }
        }
    }

    fn act_basis(&self, x: usize, m: i64) -> Result<ModElem> {
        in_window(self, "PBW dual index", m)?;
        Ok(self.table[x][m as usize].clone())
    }

    fn weight(&self, id: i64) -> Option<Scalar> {
        let mut w = Scalar::zero();
        for g in &self.monomials[id as usize] {
            w -= self.algebra.ad_weight(*g)?;
        }
        Some(w)
    }

    fn axiom_exact(&self, id: i64) -> bool {
        self.monomials[id as usize].len() < self.max_len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{sl2, sl3, SL2_E, SL2_F, SL2_H};
    use crate::modules::verify_module_axiom;
    use crate::scalar::int;

    fn dual() -> PbwDual {
        PbwDual::new(Arc::new(sl2()), 2, true).unwrap()
    }

    #[test]
    fn monomial_count() {
        assert_eq!(dual().dim(), 10);
        assert_eq!(PbwDual::new(Arc::new(sl2()), 2, false).unwrap().dim(), 9);
        assert_eq!(PbwDual::new(Arc::new(sl3()), 2, true).unwrap().dim(), 45);
    }

    #[test]
    fn rewriting_examples() {
        let g = sl2();
        let rank = [0, 1, 2];
        // h e = e h + 2e
        let nf = pbw_normal_form(&g, &rank, &[SL2_H, SL2_E]).unwrap();
        assert_eq!(
            nf,
            Vector::from_pairs([(vec![SL2_E, SL2_H], int(1)), (vec![SL2_E], int(2))])
        );
        // f e = e f - h
        let nf = pbw_normal_form(&g, &rank, &[SL2_F, SL2_E]).unwrap();
        assert_eq!(
            nf,
            Vector::from_pairs([(vec![SL2_E, SL2_F], int(1)), (vec![SL2_H], int(-1))])
        );
    }

    #[test]
    fn spec_examples() {
        let d = dual();
        let eps = d.id_of(&[]).unwrap();
        let e = d.id_of(&[SL2_E]).unwrap();
        // the augmentation is invariant: ε(x u) = 0 for all u
        assert!(d.act_basis(SL2_E, eps).unwrap().is_zero());
        // (h·e*)(e) = -e*(h e) = -e*(e h + 2e) = -2
        let he = d.act_basis(SL2_H, e).unwrap();
        assert_eq!(d.evaluate(&he, e), int(-2));
        // (x·φ)(1) = -φ(x)
        for x in 0..3 {
            for phi in d.basis() {
                let v = d.act_basis(x, phi).unwrap();
                let expected = if d.monomial(phi) == [x] { int(-1) } else { int(0) };
                assert_eq!(d.evaluate(&v, eps), expected);
            }
        }
    }

    #[test]
    fn axiom_on_exact_layers() {
        for g in [sl2(), sl3()] {
            for len in [2, 3] {
                let d = PbwDual::new(Arc::new(g.clone()), len, true).unwrap();
                let r = verify_module_axiom(&d);
                assert!(r.passed(), "{}", r.summary());
            }
        }
    }

    #[test]
    fn generalized_weights_are_consistent() {
        // h acts on u* by -wt(u) u* plus terms of the same weight
        let d = dual();
        for m in d.basis() {
            let v = d.act_basis(SL2_H, m).unwrap();
            for k in v.keys() {
                assert_eq!(d.weight(*k), d.weight(m));
            }
        }
    }
}
