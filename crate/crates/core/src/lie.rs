//! Lie algebras given by bracket data: finite structure-constant algebras,
//! windows of the Witt algebra `W1`, and subalgebra inclusions.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{overflow, Error, Result};
use crate::linalg::{in_image, SparseMatrix};
use crate::poly::Poly;
use crate::scalar::{int, parse_scalar, Element, Scalar};

/// Bracket data on a finite (possibly windowed) basis.
///
/// Basis elements are addressed by position `0..dim()`. Windowed algebras
/// report brackets that leave the window as [`Error::WindowOverflow`].
pub trait LieAlgebra: Send + Sync {
    fn name(&self) -> String;
    fn dim(&self) -> usize;
    fn label(&self, i: usize) -> String;
    fn bracket_basis(&self, i: usize, j: usize) -> Result<Element>;

    /// `false` for windows of infinite-dimensional algebras.
    fn is_finite(&self) -> bool {
        true
    }

    /// The designated grading element (a Cartan element or `e_0`).
    fn grading(&self) -> Option<Element> {
        None
    }

    /// Eigenvalue of `ad(grading)` on basis element `i`.
    fn ad_weight(&self, _i: usize) -> Option<Scalar> {
        None
    }

    fn bracket(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                out.axpy(&(ca * cb), &self.bracket_basis(*i, *j)?);
            }
        }
        Ok(out)
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        (0..self.dim()).find(|&i| self.label(i) == label)
    }

    fn render(&self, x: &Element) -> String {
        x.render(|i| self.label(*i))
    }
}

/// Finite-dimensional Lie algebra stored as a full bracket table.
#[derive(Clone, Debug)]
pub struct FiniteLieAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<Element>>,
    grading: Option<Element>,
    weights: Option<Vec<Scalar>>,
}

impl FiniteLieAlgebra {
    /// Builds an algebra from `(i, j, k, c)` quadruples meaning
    /// `[x_i, x_j] ∋ c x_k`. Entries are extended antisymmetrically; an
    /// explicitly given `(j, i, k)` entry must agree. The Jacobi identity is
    /// checked and violations are rejected.
    pub fn from_structure_constants(
        name: &str,
        labels: Vec<String>,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self> {
        let dim = labels.len();
        let mut given: std::collections::BTreeMap<(usize, usize, usize), Scalar> =
            Default::default();
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "index out of range in entry ({i}, {j}, {k})"
                )));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::InvalidAlgebra(format!(
                        "[{0}, {0}] must vanish",
                        labels[i]
                    )));
                }
                continue;
            }
            let (key, val) = if i < j {
                ((i, j, k), c.clone())
            } else {
                ((j, i, k), -c.clone())
            };
            if let Some(prev) = given.get(&key) {
                if *prev != val {
                    return Err(Error::InvalidAlgebra(format!(
                        "conflicting constants for [{}, {}] along {}",
                        labels[key.0], labels[key.1], labels[key.2]
                    )));
                }
            }
            given.insert(key, val);
        }
        let mut table = vec![vec![Element::zero(); dim]; dim];
        for ((i, j, k), c) in given {
            table[i][j].add_term(k, c.clone());
            table[j][i].add_term(k, -c);
        }
        let alg = FiniteLieAlgebra {
            name: name.to_string(),
            labels,
            table,
            grading: None,
            weights: None,
        };
        if let JacobiReport::Violation { triple, value, .. } = verify_jacobi(&alg) {
            return Err(Error::InvalidAlgebra(format!(
                "Jacobi identity fails on ({}, {}, {}): {}",
                triple.0, triple.1, triple.2, value
            )));
        }
        Ok(alg)
    }

    /// Matrix Lie algebra spanned by the given square matrices (assumed closed
    /// under commutators and linearly independent).
    pub fn from_matrices(name: &str, labels: Vec<String>, mats: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let n = mats[0].len();
        let flat = |m: &Vec<Vec<Scalar>>| -> Vec<Scalar> { m.iter().flatten().cloned().collect() };
        let basis = SparseMatrix::from_columns(n * n, &mats.iter().map(flat).collect::<Vec<_>>());
        let commutator = |a: &Vec<Vec<Scalar>>, b: &Vec<Vec<Scalar>>| -> Vec<Vec<Scalar>> {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| {
                            (0..n)
                                .map(|k| &a[r][k] * &b[k][c] - &b[r][k] * &a[k][c])
                                .sum()
                        })
                        .collect()
                })
                .collect()
        };
        let mut entries = Vec::new();
        for i in 0..mats.len() {
            for j in (i + 1)..mats.len() {
                let br = flat(&commutator(&mats[i], &mats[j]));
                let coords = in_image(&basis, &br)?.ok_or_else(|| {
                    Error::InvalidAlgebra(format!("[{}, {}] leaves the span", labels[i], labels[j]))
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        Self::from_structure_constants(name, labels, &entries)
    }

    /// Declares the grading element; it must act diagonally on the basis.
    pub fn with_grading(mut self, grading: Element) -> Result<Self> {
        let mut weights = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let image = self.bracket(&grading, &Element::basis(i))?;
            let w = image.get(&i);
            if image != Element::term(i, w.clone()) {
                return Err(Error::NonDiagonal(format!(
                    "ad({}) on {} gives {}",
                    self.render(&grading),
                    self.labels[i],
                    self.render(&image)
                )));
            }
            weights.push(w);
        }
        self.grading = Some(grading);
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Matrix of `ad(x)` in the basis (column `j` is `[x, x_j]`).
    pub fn ad_matrix(&self, x: &Element) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim(), self.dim());
        for j in 0..self.dim() {
            let col = self.bracket(x, &Element::basis(j)).expect("finite bracket");
            for (i, c) in col.iter() {
                m.set(*i, j, c.clone());
            }
        }
        m
    }
}

impl LieAlgebra for FiniteLieAlgebra {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn dim(&self) -> usize {
        self.labels.len()
    }

    fn label(&self, i: usize) -> String {
        self.labels[i].clone()
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Result<Element> {
        Ok(self.table[i][j].clone())
    }

    fn grading(&self) -> Option<Element> {
        self.grading.clone()
    }

    fn ad_weight(&self, i: usize) -> Option<Scalar> {
        self.weights.as_ref().map(|w| w[i].clone())
    }
}

pub const SL2_E: usize = 0;
pub const SL2_H: usize = 1;
pub const SL2_F: usize = 2;

/// `sl2` in the basis `(e, h, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`,
/// graded by `h`.
pub fn sl2() -> FiniteLieAlgebra {
    let labels = ["e", "h", "f"].map(String::from).to_vec();
    let entries = [
        (SL2_H, SL2_E, SL2_E, int(2)),
        (SL2_H, SL2_F, SL2_F, int(-2)),
        (SL2_E, SL2_F, SL2_H, int(1)),
    ];
    FiniteLieAlgebra::from_structure_constants("sl2", labels, &entries)
        .and_then(|a| a.with_grading(Element::basis(SL2_H)))
        .expect("sl2 constants are valid")
}

/// `sl3` on the elementary matrices `E12, E13, E23, H1, H2, E21, E31, E32`,
/// graded by `H1 + H2 = diag(1, 0, -1)`.
pub fn sl3() -> FiniteLieAlgebra {
    let unit = |r: usize, c: usize| -> Vec<Vec<Scalar>> {
        (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if (i, j) == (r, c) { Scalar::one() } else { Scalar::zero() })
                    .collect()
            })
            .collect()
    };
    let diag = |d: [i64; 3]| -> Vec<Vec<Scalar>> {
        (0..3)
            .map(|i| (0..3).map(|j| if i == j { int(d[i]) } else { Scalar::zero() }).collect())
            .collect()
    };
    let mats = vec![
        unit(0, 1),
        unit(0, 2),
        unit(1, 2),
        diag([1, -1, 0]),
        diag([0, 1, -1]),
        unit(1, 0),
        unit(2, 0),
        unit(2, 1),
    ];
    let labels = ["E12", "E13", "E23", "H1", "H2", "E21", "E31", "E32"]
        .map(String::from)
        .to_vec();
    FiniteLieAlgebra::from_matrices("sl3", labels, &mats)
        .and_then(|a| a.with_grading(Element::from_pairs([(3, int(1)), (4, int(1))])))
        .expect("sl3 matrices are valid")
}

/// Window `[lo, hi]` of the Witt algebra `W1` with basis `e_i = x^{i+1} d/dx`
/// and bracket `[e_i, e_j] = (j - i) e_{i+j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittAlgebra {
    lo: i64,
    hi: i64,
}

impl WittAlgebra {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo < -1 || hi < lo {
            return Err(Error::InvalidAlgebra(format!(
                "W1 window [{lo}, {hi}] must satisfy -1 <= lo <= hi"
            )));
        }
        Ok(WittAlgebra { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Position of `e_i` in the window.
    pub fn pos(&self, i: i64) -> Option<usize> {
        (self.lo..=self.hi).contains(&i).then(|| (i - self.lo) as usize)
    }

    /// Index `i` of the basis element at position `p`.
    pub fn index(&self, p: usize) -> i64 {
        self.lo + p as i64
    }

    /// Positions of `e_i` for `i` in `[lo, hi]` intersected with the window.
    pub fn positions(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo.max(self.lo)..=hi.min(self.hi)).map(|i| (i - self.lo) as usize).collect()
    }

    /// Vector fields `x^{i+1}` realizing the basis.
    pub fn fields(&self) -> Vec<Poly> {
        (self.lo..=self.hi).map(|i| Poly::x_pow((i + 1) as usize)).collect()
    }
}

impl LieAlgebra for WittAlgebra {
    fn name(&self) -> String {
        format!("W1[{}, {}]", self.lo, self.hi)
    }

    fn dim(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    fn label(&self, p: usize) -> String {
        format!("e_{}", self.index(p))
    }

    fn bracket_basis(&self, p: usize, q: usize) -> Result<Element> {
        let (i, j) = (self.index(p), self.index(q));
        if i == j {
            return Ok(Element::zero());
        }
        let s = i + j;
        match self.pos(s) {
            Some(r) => Ok(Element::term(r, int(j - i))),
            None => Err(overflow(format!("[e_{i}, e_{j}]"), s, self.lo, self.hi)),
        }
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn grading(&self) -> Option<Element> {
        self.pos(0).map(Element::basis)
    }

    fn ad_weight(&self, p: usize) -> Option<Scalar> {
        self.pos(0).map(|_| int(self.index(p)))
    }
}

/// Vector fields realizing `sl2 ⊂ W1`: `e = x^2`, `h = 2x`, `f = -1`.
pub fn sl2_fields() -> Vec<Poly> {
    vec![
        Poly::x_pow(2),
        Poly::monomial(int(2), 1),
        Poly::constant(int(-1)),
    ]
}

/// Bracket of vector fields `[f d/dx, g d/dx] = (f g' - f' g) d/dx`.
pub fn field_bracket(f: &Poly, g: &Poly) -> Poly {
    f.mul(&g.derivative()).sub(&f.derivative().mul(g))
}

/// Result of [`verify_jacobi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacobiReport {
    Pass { checked: usize, skipped: usize },
    Violation {
        triple: (String, String, String),
        value: String,
    },
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        matches!(self, JacobiReport::Pass { .. })
    }
}

/// Checks antisymmetry on all pairs and the Jacobi identity on all basis
/// triples. Triples whose intermediate brackets leave the window are skipped.
pub fn verify_jacobi(alg: &dyn LieAlgebra) -> JacobiReport {
    let n = alg.dim();
    let mut checked = 0;
    let mut skipped = 0;
    for i in 0..n {
        for j in i..n {
            let (Ok(a), Ok(b)) = (alg.bracket_basis(i, j), alg.bracket_basis(j, i)) else {
                continue;
            };
            if !a.add(&b).is_zero() {
                return JacobiReport::Violation {
                    triple: (alg.label(i), alg.label(j), String::new()),
                    value: format!("antisymmetry: {} vs {}", alg.render(&a), alg.render(&b)),
                };
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (x, y, z) = (Element::basis(i), Element::basis(j), Element::basis(k));
                let sum = (|| -> Result<Element> {
                    let t1 = alg.bracket(&x, &alg.bracket(&y, &z)?)?;
                    let t2 = alg.bracket(&y, &alg.bracket(&z, &x)?)?;
                    let t3 = alg.bracket(&z, &alg.bracket(&x, &y)?)?;
                    Ok(t1.add(&t2).add(&t3))
                })();
                match sum {
                    Ok(s) if s.is_zero() => checked += 1,
                    Ok(s) => {
                        return JacobiReport::Violation {
                            triple: (alg.label(i), alg.label(j), alg.label(k)),
                            value: alg.render(&s),
                        }
                    }
                    Err(_) => skipped += 1,
                }
            }
        }
    }
    JacobiReport::Pass { checked, skipped }
}

/// Killing form `κ(a, b) = tr(ad a ∘ ad b)`; finite algebras only.
pub fn killing_form(alg: &dyn LieAlgebra, a: &Element, b: &Element) -> Result<Scalar> {
    if !alg.is_finite() {
        return Err(Error::Unsupported(format!(
            "Killing form on the windowed algebra {}",
            alg.name()
        )));
    }
    let mut trace = Scalar::zero();
    for j in 0..alg.dim() {
        let inner = alg.bracket(b, &Element::basis(j))?;
        trace += alg.bracket(a, &inner)?.get(&j);
    }
    Ok(trace)
}

/// Inclusion of a finite algebra into a (possibly windowed) target algebra.
#[derive(Clone)]
pub struct SubalgebraInclusion {
    pub source: Arc<FiniteLieAlgebra>,
    pub target: Arc<dyn LieAlgebra>,
    pub images: Vec<Element>,
}

impl SubalgebraInclusion {
    /// Validates that the basis images preserve brackets.
    pub fn new(
        source: Arc<FiniteLieAlgebra>,
        target: Arc<dyn LieAlgebra>,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                got: images.len(),
            });
        }
        let inc = SubalgebraInclusion {
            source,
            target,
            images,
        };
        for i in 0..inc.source.dim() {
            for j in 0..inc.source.dim() {
                let lhs = inc.map(&inc.source.bracket_basis(i, j)?);
                let rhs = inc.target.bracket(&inc.images[i], &inc.images[j])?;
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "inclusion does not preserve [{}, {}]: {} vs {}",
                        inc.source.label(i),
                        inc.source.label(j),
                        inc.target.render(&lhs),
                        inc.target.render(&rhs)
                    )));
                }
            }
        }
        Ok(inc)
    }

    pub fn map(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (i, c) in x.iter() {
            out.axpy(c, &self.images[*i]);
        }
        out
    }
}

/// `sl2 ↪ W1` with `e ↦ e_1`, `h ↦ 2 e_0`, `f ↦ -e_{-1}`.
pub fn sl2_in_witt(witt: Arc<WittAlgebra>) -> Result<SubalgebraInclusion> {
    let pos = |i: i64| {
        witt.pos(i)
            .ok_or_else(|| overflow("sl2 image", i, witt.lo(), witt.hi()))
    };
    let images = vec![
        Element::basis(pos(1)?),
        Element::term(pos(0)?, int(2)),
        Element::term(pos(-1)?, int(-1)),
    ];
    SubalgebraInclusion::new(Arc::new(sl2()), witt, images)
}

#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum ScalarRepr {
    Int(i64),
    Text(String),
}

impl ScalarRepr {
    pub(crate) fn to_scalar(&self) -> Result<Scalar> {
        match self {
            ScalarRepr::Int(n) => Ok(int(*n)),
            ScalarRepr::Text(s) => {
                parse_scalar(s).ok_or_else(|| Error::Parse(format!("bad scalar {s:?}")))
            }
        }
    }
}

#[derive(Deserialize)]
struct AlgebraFile {
    name: Option<String>,
    dim: usize,
    labels: Option<Vec<String>>,
    constants: Vec<(usize, usize, usize, ScalarRepr)>,
    /// `[[label, coefficient], ...]` describing the grading element.
    grading: Option<Vec<(String, ScalarRepr)>>,
}

/// Loads structure constants from TOML:
///
/// ```toml
/// name = "sl2"
/// dim = 3
/// labels = ["e", "h", "f"]
/// constants = [[1, 0, 0, 2], [1, 2, 2, -2], [0, 2, 1, 1]]
/// grading = [["h", 1]]
/// ```
///
/// Values may be integers or strings such as `"-1/2"`. The loader rejects
/// input that fails the Jacobi identity.
pub fn load_algebra(text: &str) -> Result<FiniteLieAlgebra> {
    let file: AlgebraFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let labels = file
        .labels
        .unwrap_or_else(|| (0..file.dim).map(|i| format!("x{i}")).collect());
    if labels.len() != file.dim {
        return Err(Error::DimensionMismatch {
            expected: file.dim,
            got: labels.len(),
        });
    }
    let entries = file
        .constants
        .iter()
        .map(|(i, j, k, c)| Ok((*i, *j, *k, c.to_scalar()?)))
        .collect::<Result<Vec<_>>>()?;
    let alg = FiniteLieAlgebra::from_structure_constants(
        file.name.as_deref().unwrap_or("custom"),
        labels,
        &entries,
    )?;
    match file.grading {
        None => Ok(alg),
        Some(terms) => {
            let mut g = Element::zero();
            for (label, c) in &terms {
                let i = alg
                    .index_of(label)
                    .ok_or_else(|| Error::Unknown(format!("grading label {label}")))?;
                g.add_term(i, c.to_scalar()?);
            }
            alg.with_grading(g)
        }
    }
}

/// Describes an algebra's bracket table for reports.
pub fn describe(alg: &FiniteLieAlgebra) -> Vec<(String, String, String)> {
    let mut rows = Vec::new();
    for i in 0..alg.dim() {
        for j in (i + 1)..alg.dim() {
            let b = alg.bracket_basis(i, j).expect("finite");
            if !b.is_zero() {
                rows.push((alg.label(i), alg.label(j), alg.render(&b)));
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> Element {
        Element::basis(SL2_E)
    }
    fn h() -> Element {
        Element::basis(SL2_H)
    }
    fn f() -> Element {
        Element::basis(SL2_F)
    }

    #[test]
    fn sl2_brackets() {
        let g = sl2();
        assert_eq!(g.bracket(&e(), &f()).unwrap(), h());
        assert_eq!(g.bracket(&h(), &e()).unwrap(), e().scaled(&int(2)));
        assert_eq!(g.bracket(&h(), &f()).unwrap(), f().scaled(&int(-2)));
        assert!(g.bracket(&e(), &e()).unwrap().is_zero());
        assert_eq!(g.ad_weight(SL2_E), Some(int(2)));
        assert_eq!(g.ad_weight(SL2_F), Some(int(-2)));
    }

    #[test]
    fn sl2_killing_values() {
        let g = sl2();
        assert_eq!(killing_form(&g, &h(), &h()).unwrap(), int(8));
        assert_eq!(killing_form(&g, &e(), &f()).unwrap(), int(4));
        assert_eq!(killing_form(&g, &e(), &e()).unwrap(), int(0));
    }

    #[test]
    fn killing_on_window_is_unsupported() {
        let w = WittAlgebra::new(-1, 4).unwrap();
        let x = Element::basis(0);
        assert!(matches!(killing_form(&w, &x, &x), Err(Error::Unsupported(_))));
    }

    #[test]
    fn killing_invariance_and_total_antisymmetry() {
        for g in [sl2(), sl3()] {
            let n = g.dim();
            let k = |a: &Element, b: &Element| killing_form(&g, a, b).unwrap();
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let (x, y, z) = (Element::basis(i), Element::basis(j), Element::basis(l));
                        let xy = g.bracket(&x, &y).unwrap();
                        let xz = g.bracket(&x, &z).unwrap();
                        assert_eq!(k(&xy, &z) + k(&y, &xz), int(0));
                        let yz = g.bracket(&y, &z).unwrap();
                        // (x, y, z) ↦ κ([x,y], z) is cyclic and antisymmetric
                        assert_eq!(k(&xy, &z), k(&yz, &x));
                        assert_eq!(k(&xy, &z), -k(&g.bracket(&y, &x).unwrap(), &z));
                    }
                }
            }
        }
    }

    #[test]
    fn witt_brackets_and_overflow() {
        let w = WittAlgebra::new(-1, 8).unwrap();
        let p = |i| w.pos(i).unwrap();
        assert_eq!(w.bracket_basis(p(1), p(2)).unwrap(), Element::basis(p(3)));
        assert_eq!(w.bracket_basis(p(2), p(1)).unwrap(), Element::term(p(3), int(-1)));
        assert!(w.bracket_basis(p(5), p(5)).unwrap().is_zero());
        assert!(matches!(
            w.bracket_basis(p(4), p(7)),
            Err(Error::WindowOverflow { index: 11, .. })
        ));
    }

    #[test]
    fn jacobi_reports() {
        assert!(verify_jacobi(&sl2()).passed());
        assert!(verify_jacobi(&sl3()).passed());
        let w = WittAlgebra::new(-1, 8).unwrap();
        match verify_jacobi(&w) {
            JacobiReport::Pass { checked, skipped } => {
                assert!(checked > 0);
                assert!(skipped > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn flipped_constant_is_rejected() {
        // sl2 with the sign of [h, e] flipped
        let labels = ["e", "h", "f"].map(String::from).to_vec();
        let entries = [
            (1, 0, 0, int(-2)),
            (1, 2, 2, int(-2)),
            (0, 2, 1, int(1)),
        ];
        let err = FiniteLieAlgebra::from_structure_constants("bad", labels, &entries).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(_)), "{err}");
    }

    #[test]
    fn realization_matches_brackets() {
        let w = WittAlgebra::new(-1, 6).unwrap();
        let fields = w.fields();
        for p in 0..w.dim() {
            for q in 0..w.dim() {
                let Ok(b) = w.bracket_basis(p, q) else { continue };
                let mut expect = Poly::zero();
                for (r, c) in b.iter() {
                    expect = expect.add(&fields[*r].scale(c));
                }
                assert_eq!(field_bracket(&fields[p], &fields[q]), expect);
            }
        }
        let s = sl2();
        let sf = sl2_fields();
        for i in 0..3 {
            for j in 0..3 {
                let b = s.bracket_basis(i, j).unwrap();
                let mut expect = Poly::zero();
                for (r, c) in b.iter() {
                    expect = expect.add(&sf[*r].scale(c));
                }
                assert_eq!(field_bracket(&sf[i], &sf[j]), expect);
            }
        }
    }

    #[test]
    fn inclusion_preserves_brackets() {
        let w = Arc::new(WittAlgebra::new(-1, 8).unwrap());
        let inc = sl2_in_witt(w.clone()).unwrap();
        assert_eq!(inc.map(&h()), Element::term(w.pos(0).unwrap(), int(2)));
        let bad = SubalgebraInclusion::new(
            Arc::new(sl2()),
            w.clone(),
            vec![
                Element::basis(w.pos(1).unwrap()),
                Element::basis(w.pos(0).unwrap()),
                Element::term(w.pos(-1).unwrap(), int(-1)),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn loader_accepts_and_rejects() {
        let good = r#"
            name = "sl2"
            dim = 3
            labels = ["e", "h", "f"]
            constants = [[1, 0, 0, 2], [1, 2, 2, -2], [0, 2, 1, "1"]]
            grading = [["h", 1]]
        "#;
        let g = load_algebra(good).unwrap();
        assert_eq!(killing_form(&g, &h(), &h()).unwrap(), int(8));
        let bad = r#"
            dim = 3
            constants = [[1, 0, 0, -2], [1, 2, 2, -2], [0, 2, 1, "1"]]
        "#;
        assert!(load_algebra(bad).is_err());
    }
}
