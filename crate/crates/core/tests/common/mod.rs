//! Dense brute-force Chevalley-Eilenberg oracle, independent of the
//! slice-based assembly in the library.

#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::Zero;
use xmodlab::modules::LieModule;
use xmodlab::{Element, LieAlgebra, ModElem, Scalar};

/// Rank by plain Gaussian elimination over the rationals.
pub fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot;
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Scalar::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Sorts `t` in place and returns the permutation sign, or zero on a repeat.
fn sort_sign(t: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..t.len() {
        for j in 0..t.len() - 1 - i {
            if t[j] > t[j + 1] {
                t.swap(j, j + 1);
                sign = -sign;
            } else if t[j] == t[j + 1] {
                return 0;
            }
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

fn subsets(items: &[usize], q: usize) -> Vec<Vec<usize>> {
    if q == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[k + 1..], q - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Eigenvalues of `ad` of the grading element on the basis.
pub fn ad_weights(alg: &dyn LieAlgebra) -> Vec<Scalar> {
    let g = alg.grading().expect("graded algebra");
    (0..alg.dim())
        .map(|i| alg.bracket(&g, &Element::basis(i)).unwrap().get(&i))
        .collect()
}

/// The cochain complex `C^q = Hom(Λ^q span(gens), V)` cut down to cochains of
/// weight `wt(m) - wt(t)` accepted by `keep`, with dense differentials.
pub struct BruteComplex {
    pub dims: Vec<usize>,
    /// `d[q]` has one row per basis cochain of degree `q + 1`.
    pub d: Vec<Vec<Vec<Scalar>>>,
}

impl BruteComplex {
    pub fn assemble(
        alg: &dyn LieAlgebra,
        module: &dyn LieModule,
        gens: &[usize],
        q_max: usize,
        keep: impl Fn(&Scalar) -> bool,
    ) -> Self {
        let wts = ad_weights(alg);
        let mbasis = module.basis();
        let bases: Vec<Vec<(Vec<usize>, i64)>> = (0..=q_max)
            .map(|q| {
                let mut b = Vec::new();
                for t in subsets(gens, q) {
                    let tw: Scalar = t.iter().map(|i| wts[*i].clone()).sum();
                    for &m in &mbasis {
                        let w = module.weight(m).expect("weighted module") - &tw;
                        if keep(&w) {
                            b.push((t.clone(), m));
                        }
                    }
                }
                b
            })
            .collect();
        let index: Vec<HashMap<(Vec<usize>, i64), usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect())
            .collect();
        let mut d = Vec::new();
        for q in 0..q_max {
            let mut mat = vec![vec![Scalar::zero(); bases[q].len()]; bases[q + 1].len()];
            for (col, (t, m)) in bases[q].iter().enumerate() {
                // value of the basis cochain δ_t ⊗ m on an arbitrary tuple
                let eval = |args: &[usize]| -> i64 {
                    let mut s = args.to_vec();
                    let sign = sort_sign(&mut s);
                    if sign != 0 && s == *t {
                        sign
                    } else {
                        0
                    }
                };
                for t1 in subsets(gens, q + 1) {
                    let mut value = ModElem::zero();
                    for i in 0..=q {
                        let mut rest = t1.clone();
                        let xi = rest.remove(i);
                        let s = eval(&rest);
                        if s != 0 {
                            let sign = if i % 2 == 0 { s } else { -s };
                            let act = module.act_basis(xi, *m).expect("action inside the window");
                            value.axpy(&Scalar::from_integer(sign.into()), &act);
                        }
                    }
                    for i in 0..=q {
                        for j in i + 1..=q {
                            let br = alg.bracket_basis(t1[i], t1[j]).unwrap();
                            let rest: Vec<usize> =
                                t1.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, x)| *x).collect();
                            for (k, c) in br.iter() {
                                let mut args = vec![*k];
                                args.extend(&rest);
                                let s = eval(&args);
                                if s != 0 {
                                    let sign = if (i + j) % 2 == 0 { s } else { -s };
                                    value.add_term(*m, c * Scalar::from_integer(sign.into()));
                                }
                            }
                        }
                    }
                    for (m1, c) in value.iter() {
                        let row = *index[q + 1]
                            .get(&(t1.clone(), *m1))
                            .expect("coboundary stays inside the kept weights");
                        mat[row][col] += c;
                    }
                }
            }
            d.push(mat);
        }
        BruteComplex {
            dims: bases.iter().map(Vec::len).collect(),
            d,
        }
    }

    fn rank(&self, q: usize) -> usize {
        self.d.get(q).map_or(0, |m| dense_rank(m.clone()))
    }

    pub fn cohomology(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|q| {
                let out = self.rank(q);
                let inc = if q == 0 { 0 } else { self.rank(q - 1) };
                self.dims[q] - out - inc
            })
            .collect()
    }

    pub fn d_squared_zero(&self) -> bool {
        self.d.windows(2).all(|w| {
            mat_mul(&w[1], &w[0])
                .iter()
                .all(|r| r.iter().all(Zero::is_zero))
        })
    }
}
