//! Lie algebra crossed modules: axiom checks, the principal construction
//! from a short exact sequence and an abelian extension, and extraction of
//! the associated 3-cocycle.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::{label_tuple, NamedCochain};
use crate::ce::{coboundary_at, connecting_at, is_exact, tuples, Cochain};
use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::modules::{LieModule, ModuleSes};
use crate::scalar::{Element, ModElem};

pub(crate) fn to_mod(e: &Element) -> ModElem {
    ModElem::from_pairs(e.iter().map(|(k, c)| (*k as i64, c.clone())))
}

pub(crate) fn to_elem(v: &ModElem) -> Element {
    Element::from_pairs(v.iter().map(|(k, c)| (*k as usize, c.clone())))
}

/// A module window regarded as an abelian Lie algebra.
pub struct AbelianAlgebra {
    module: Arc<dyn LieModule>,
    basis: Vec<i64>,
    pos: HashMap<i64, usize>,
}

impl AbelianAlgebra {
    pub fn new(module: Arc<dyn LieModule>) -> Self {
        let basis = module.basis();
        let pos = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        AbelianAlgebra { module, basis, pos }
    }

    pub fn module(&self) -> &Arc<dyn LieModule> {
        &self.module
    }

    /// Coordinates of a module element in the algebra basis.
    pub fn embed(&self, v: &ModElem) -> Result<Element> {
        v.map_linear(|m| {
            self.pos
                .get(m)
                .map(|i| Element::basis(*i))
                .ok_or_else(|| self.overflow(*m))
        })
    }

    pub fn extract(&self, e: &Element) -> ModElem {
        ModElem::from_pairs(e.iter().map(|(i, c)| (self.basis[*i], c.clone())))
    }

    fn overflow(&self, m: i64) -> Error {
        let (lo, hi) = self.module.window();
        Error::WindowOverflow {
            what: format!("element of {}", self.module.name()),
            index: m,
            window: format!("[{lo}, {hi}]"),
        }
    }
}

impl LieAlgebra for AbelianAlgebra {
    fn name(&self) -> String {
        self.module.name()
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn label(&self, i: usize) -> String {
        self.module.label(self.basis[i])
    }

    fn bracket_basis(&self, _i: usize, _j: usize) -> Result<Element> {
        Ok(Element::zero())
    }

    fn is_finite(&self) -> bool {
        false
    }
}

/// `V ×_α g` with `[(w,x),(v,y)] = (x·v - y·w + α(x,y), [x,y])`. Basis: the
/// module window first, then the basis of `g`.
pub struct AbelianExtension {
    module: AbelianAlgebra,
    g: Arc<dyn LieAlgebra>,
    alpha: NamedCochain,
}

impl AbelianExtension {
    pub fn new(module: Arc<dyn LieModule>, alpha: NamedCochain) -> Result<Self> {
        if alpha.degree != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: alpha.degree,
            });
        }
        Ok(AbelianExtension {
            g: alpha.algebra.clone(),
            module: AbelianAlgebra::new(module),
            alpha,
        })
    }

    pub fn algebra(&self) -> &Arc<dyn LieAlgebra> {
        &self.g
    }

    pub fn module(&self) -> &Arc<dyn LieModule> {
        self.module.module()
    }

    pub fn alpha(&self) -> &NamedCochain {
        &self.alpha
    }

    fn nv(&self) -> usize {
        self.module.dim()
    }

    /// `(w, x)` as an element of the extension.
    pub fn join(&self, w: &ModElem, x: &Element) -> Result<Element> {
        let mut out = self.module.embed(w)?;
        for (k, c) in x.iter() {
            out.add_term(self.nv() + k, c.clone());
        }
        Ok(out)
    }

    /// Splits an element into its module and algebra parts.
    pub fn split(&self, e: &Element) -> (ModElem, Element) {
        let mut w = Element::zero();
        let mut x = Element::zero();
        for (k, c) in e.iter() {
            if *k < self.nv() {
                w.add_term(*k, c.clone());
            } else {
                x.add_term(k - self.nv(), c.clone());
            }
        }
        (self.module.extract(&w), x)
    }
}

impl LieAlgebra for AbelianExtension {
    fn name(&self) -> String {
        format!("{} ×_{} {}", self.module.name(), self.alpha.name, self.g.name())
    }

    fn dim(&self) -> usize {
        self.nv() + self.g.dim()
    }

    fn label(&self, i: usize) -> String {
        if i < self.nv() {
            format!("({}, 0)", self.module.label(i))
        } else {
            format!("(0, {})", self.g.label(i - self.nv()))
        }
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Result<Element> {
        let nv = self.nv();
        let m = self.module.module();
        match (i < nv, j < nv) {
            (true, true) => Ok(Element::zero()),
            (true, false) => {
                let v = m.act_basis(j - nv, self.module.basis[i])?;
                self.join(&v.neg(), &Element::zero())
            }
            (false, true) => {
                let v = m.act_basis(i - nv, self.module.basis[j])?;
                self.join(&v, &Element::zero())
            }
            (false, false) => {
                let (x, y) = (i - nv, j - nv);
                let a = if x == y { ModElem::zero() } else { self.alpha.evaluate(&[x, y])? };
                self.join(&a, &self.g.bracket_basis(x, y)?)
            }
        }
    }

    fn is_finite(&self) -> bool {
        false
    }
}

/// `η(n_a)·m_b` on basis indices.
pub type ActionFn = Arc<dyn Fn(usize, usize) -> Result<Element> + Send + Sync>;

/// A Lie homomorphism `μ: m → n` with an action `η` of `n` on `m`.
#[derive(Clone)]
pub struct CrossedModule {
    pub name: String,
    pub m: Arc<dyn LieAlgebra>,
    pub n: Arc<dyn LieAlgebra>,
    /// `μ(m_i)` in the basis of `n`.
    pub mu: Vec<Element>,
    pub eta: ActionFn,
}

impl CrossedModule {
    pub fn mu_apply(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (k, c) in x.iter() {
            out.axpy(c, &self.mu[*k]);
        }
        out
    }

    pub fn act(&self, n: &Element, m: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (a, ca) in n.iter() {
            for (b, cb) in m.iter() {
                out.axpy(&(ca * cb), &(self.eta)(*a, *b)?);
            }
        }
        Ok(out)
    }

    pub fn window(&self) -> String {
        format!("dim m = {}, dim n = {}", self.m.dim(), self.n.dim())
    }
}

/// `id: g → g` with the adjoint action.
pub fn inner_crossed_module(g: Arc<dyn LieAlgebra>) -> CrossedModule {
    let mu = (0..g.dim()).map(Element::basis).collect();
    let ad = g.clone();
    CrossedModule {
        name: format!("id: {0} → {0}", g.name()),
        m: g.clone(),
        n: g,
        mu,
        eta: Arc::new(move |a, b| ad.bracket_basis(a, b)),
    }
}

/// Per-axiom verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub window: String,
    pub mu_hom: CheckReport,
    pub action: CheckReport,
    pub derivation: CheckReport,
    pub axiom_a: CheckReport,
    pub axiom_b: CheckReport,
}

impl AxiomReport {
    pub fn parts(&self) -> [&CheckReport; 5] {
        [&self.mu_hom, &self.action, &self.derivation, &self.axiom_a, &self.axiom_b]
    }

    pub fn overall(&self, name: &str) -> CheckReport {
        let mut r = CheckReport::new(name);
        for p in self.parts() {
            r.absorb(p);
        }
        r
    }

    pub fn passed(&self) -> bool {
        self.parts().iter().all(|p| p.passed())
    }
}

fn record_eq(
    report: &mut CheckReport,
    alg: &dyn LieAlgebra,
    sides: Result<(Element, Element)>,
    at: impl FnOnce() -> String,
) {
    match sides {
        Ok((l, r)) => report.record(l == r, || format!("{}: {} vs {}", at(), alg.render(&l), alg.render(&r))),
        Err(Error::WindowOverflow { .. }) => report.skip(),
        Err(e) => report.fail(format!("{}: {e}", at())),
    }
}

/// Checks that `μ` is a homomorphism, `η` is an action by derivations, and
/// the axioms `μ(η(n)·m) = [n, μ(m)]` and `η(μ(m))·m' = [m, m']`, on every
/// basis pair of the windows. Pairs whose evaluation leaves a window are
/// skipped and counted.
pub fn check_axioms(cm: &CrossedModule) -> AxiomReport {
    let (m, n) = (cm.m.as_ref(), cm.n.as_ref());
    let (dm, dn) = (m.dim(), n.dim());
    let b = Element::basis;
    let mut mu_hom = CheckReport::new("μ is a Lie homomorphism");
    for i in 0..dm {
        for j in (i + 1)..dm {
            let sides = (|| Ok((cm.mu_apply(&m.bracket_basis(i, j)?), n.bracket(&cm.mu[i], &cm.mu[j])?)))();
            record_eq(&mut mu_hom, n, sides, || format!("[{}, {}]", m.label(i), m.label(j)));
        }
    }
    let mut action = CheckReport::new("η is a Lie action");
    for a in 0..dn {
        for c in (a + 1)..dn {
            for k in 0..dm {
                let sides = (|| {
                    let lhs = cm.act(&n.bracket_basis(a, c)?, &b(k))?;
                    let ack = cm.act(&b(a), &cm.act(&b(c), &b(k))?)?;
                    let cak = cm.act(&b(c), &cm.act(&b(a), &b(k))?)?;
                    Ok((lhs, ack.sub(&cak)))
                })();
                record_eq(&mut action, m, sides, || {
                    format!("η([{}, {}])·{}", n.label(a), n.label(c), m.label(k))
                });
            }
        }
    }
    let mut derivation = CheckReport::new("η acts by derivations");
    let mut axiom_a = CheckReport::new("axiom (a): μ(η(n)·m) = [n, μ(m)]");
    for a in 0..dn {
        for i in 0..dm {
            let sides = (|| Ok((cm.mu_apply(&(cm.eta)(a, i)?), n.bracket(&b(a), &cm.mu[i])?)))();
            record_eq(&mut axiom_a, n, sides, || format!("(n, m) = ({}, {})", n.label(a), m.label(i)));
            for j in (i + 1)..dm {
                let sides = (|| {
                    let lhs = cm.act(&b(a), &m.bracket_basis(i, j)?)?;
                    let r1 = m.bracket(&(cm.eta)(a, i)?, &b(j))?;
                    let r2 = m.bracket(&b(i), &(cm.eta)(a, j)?)?;
                    Ok((lhs, r1.add(&r2)))
                })();
                record_eq(&mut derivation, m, sides, || {
                    format!("η({})·[{}, {}]", n.label(a), m.label(i), m.label(j))
                });
            }
        }
    }
    let mut axiom_b = CheckReport::new("axiom (b): η(μ(m))·m' = [m, m']");
    for i in 0..dm {
        for j in 0..dm {
            let sides = (|| Ok((cm.act(&cm.mu[i], &b(j))?, m.bracket_basis(i, j)?)))();
            record_eq(&mut axiom_b, m, sides, || format!("(m, m') = ({}, {})", m.label(i), m.label(j)));
        }
    }
    AxiomReport {
        window: cm.window(),
        mu_hom,
        action,
        derivation,
        axiom_a,
        axiom_b,
    }
}

pub type ModToElem = Arc<dyn Fn(&ModElem) -> Result<Element> + Send + Sync>;
pub type ElemMap = Arc<dyn Fn(&Element) -> Result<Element> + Send + Sync>;
pub type BasisLift = Arc<dyn Fn(usize) -> Result<Element> + Send + Sync>;
pub type ElemToMod = Arc<dyn Fn(&Element) -> Result<ModElem> + Send + Sync>;

/// Data for reading off the 3-cocycle of a crossed module: the kernel `V`
/// with its `g`-module structure, the cokernel `g`, and linear sections.
#[derive(Clone)]
pub struct FourTermData {
    pub name: String,
    pub g: Arc<dyn LieAlgebra>,
    pub v: Arc<dyn LieModule>,
    /// `i: V → m`.
    pub incl: ModToElem,
    /// `π: n → g`.
    pub proj: ElemMap,
    /// `ρ: g → n` on basis elements, with `π ∘ ρ = id`.
    pub rho: BasisLift,
    /// `σ: im μ → m` with `μ ∘ σ = id`.
    pub sigma: ElemMap,
    /// `τ: m → V` with `τ ∘ i = id`.
    pub tau: ElemToMod,
}

impl FourTermData {
    pub fn rho_apply(&self, x: &Element) -> Result<Element> {
        x.map_linear(|k| (self.rho)(*k))
    }
}

/// Checks `π∘ρ = id`, `μ∘σ = id` on `μ` of every basis element of `m`,
/// `τ∘i = id` on the kernel basis, and `μ∘i = 0`.
pub fn validate_four_term(cm: &CrossedModule, d: &FourTermData) -> CheckReport {
    let mut r = CheckReport::new(format!("four-term data {}", d.name));
    for x in 0..d.g.dim() {
        let ok = (|| Ok::<_, Error>((d.proj)(&(d.rho)(x)?)? == Element::basis(x)))();
        r.record(matches!(ok, Ok(true)), || format!("π(ρ({})) ≠ {}", d.g.label(x), d.g.label(x)));
    }
    for i in 0..cm.m.dim() {
        let y = &cm.mu[i];
        match (d.sigma)(y) {
            Ok(s) => r.record(&cm.mu_apply(&s) == y, || format!("μ(σ(μ({}))) ≠ μ({})", cm.m.label(i), cm.m.label(i))),
            Err(Error::WindowOverflow { .. }) => r.skip(),
            Err(e) => r.fail(e.to_string()),
        }
    }
    for v in d.v.basis() {
        let e = ModElem::basis(v);
        let ok = (|| Ok::<_, Error>({
            let iv = (d.incl)(&e)?;
            ((d.tau)(&iv)? == e, cm.mu_apply(&iv).is_zero())
        }))();
        r.record(matches!(ok, Ok((true, true))), || format!("τ∘i or μ∘i fails on {}", d.v.label(v)));
    }
    r
}

/// Crossed module and extraction data from the principal construction.
#[derive(Clone)]
pub struct PrincipalCrossedModule {
    pub crossed: CrossedModule,
    pub m_alg: Arc<AbelianAlgebra>,
    pub n_alg: Arc<AbelianExtension>,
    pub data: FourTermData,
    pub ses: ModuleSes,
    pub alpha: NamedCochain,
    /// `μ(η(w,x)·v) = (x·v, 0) = [(w,x), (v,0)]` on basis pairs.
    pub proof_step: CheckReport,
}

/// Splices `0 → V1 → V2 → V3 → 0` with `0 → V3 → V3 ×_α g → g → 0` into
/// `V2 → V3 ×_α g`, `μ(v) = (π v, 0)`, `η(w,x)·v = x·v`.
pub fn principal_construction(ses: &ModuleSes, alpha: &NamedCochain) -> Result<PrincipalCrossedModule> {
    let closed = crate::catalog::check_closed(alpha);
    if !closed.passed() {
        return Err(Error::NotCocycle(closed.failure.unwrap_or_default()));
    }
    let valid = crate::modules::ses_validate(ses);
    if !valid.passed() {
        return Err(Error::Inconsistent(valid.failure.unwrap_or_default()));
    }
    let m = Arc::new(AbelianAlgebra::new(ses.mid.clone()));
    let n = Arc::new(AbelianExtension::new(ses.quot.clone(), alpha.clone())?);
    let mut mu = Vec::with_capacity(m.dim());
    for &v in &m.basis {
        mu.push(n.join(&ses.project(&ModElem::basis(v))?, &Element::zero())?);
    }
    let nv = n.nv();
    let eta: ActionFn = {
        let (m, mid) = (m.clone(), ses.mid.clone());
        Arc::new(move |a, b| {
            if a < nv {
                Ok(Element::zero())
            } else {
                m.embed(&mid.act_basis(a - nv, m.basis[b])?)
            }
        })
    };
    let crossed = CrossedModule {
        name: format!("{} → {}", m.name(), n.name()),
        m: m.clone(),
        n: n.clone(),
        mu,
        eta,
    };
    let mut proof_step = CheckReport::new("μ(η(w,x)·v) = (x·v, 0) = [(w,x), (v,0)]");
    for a in 0..n.dim() {
        for i in 0..m.dim() {
            let sides = (|| {
                let lhs = crossed.mu_apply(&(crossed.eta)(a, i)?);
                let mid = if a < nv {
                    Element::zero()
                } else {
                    let pv = ses.project(&ModElem::basis(m.basis[i]))?;
                    n.join(&ses.quot.act(&Element::basis(a - nv), &pv)?, &Element::zero())?
                };
                let rhs = n.bracket(&Element::basis(a), &crossed.mu[i])?;
                if lhs != mid {
                    return Ok((lhs, mid));
                }
                Ok((mid, rhs))
            })();
            record_eq(&mut proof_step, n.as_ref(), sides, || format!("({}, {})", n.label(a), m.label(i)));
        }
    }
    let data = principal_data(ses, &m, &n);
    let (m, n) = (m.clone(), n.clone());
    Ok(PrincipalCrossedModule {
        crossed,
        m_alg: m,
        n_alg: n,
        data,
        ses: ses.clone(),
        alpha: alpha.clone(),
        proof_step,
    })
}

fn principal_data(ses: &ModuleSes, m: &Arc<AbelianAlgebra>, n: &Arc<AbelianExtension>) -> FourTermData {
    let g = n.g.clone();
    let nv = n.nv();
    let (m1, m2, s1, s2, s3) = (m.clone(), m.clone(), ses.clone(), ses.clone(), n.clone());
    FourTermData {
        name: "standard sections".into(),
        g,
        v: ses.sub.clone(),
        incl: Arc::new(move |v| m1.embed(&s1.inject(v)?)),
        proj: Arc::new(move |e| {
            Ok(Element::from_pairs(
                e.iter().filter(|(k, _)| **k >= nv).map(|(k, c)| (k - nv, c.clone())),
            ))
        }),
        rho: Arc::new(move |x| Ok(Element::basis(nv + x))),
        sigma: Arc::new(move |e| {
            let (w, x) = s3.split(e);
            if !x.is_zero() {
                return Err(Error::Inconsistent("σ applied outside im μ".into()));
            }
            m2.embed(&s2.lift(&w)?)
        }),
        tau: {
            let (m3, s4) = (m.clone(), ses.clone());
            Arc::new(move |e| s4.retract(&m3.extract(e)))
        },
    }
}

impl PrincipalCrossedModule {
    /// The same data with `ρ(x) = (s(x), x)` and the SES section replaced.
    pub fn alternate_data(&self, shift: impl Fn(usize) -> ModElem + Send + Sync + 'static, ses: &ModuleSes) -> FourTermData {
        let n = self.crossed.n.clone();
        let nv = n.dim() - self.data.g.dim();
        let ext = Arc::new(AbelianExtension::new(self.ses.quot.clone(), self.alpha.clone()).expect("degree checked"));
        let m = Arc::new(AbelianAlgebra::new(ses.mid.clone()));
        let mut d = principal_data(ses, &m, &ext);
        d.name = format!("shifted ρ, {}", ses.name);
        let e2 = ext.clone();
        d.rho = Arc::new(move |x| {
            let mut out = e2.join(&shift(x), &Element::zero())?;
            out.add_term(nv + x, crate::scalar::int(1));
            Ok(out)
        });
        d
    }
}

/// The extracted 3-cocycle `γ = τ ∘ d^m β`, tabulated on the window.
#[derive(Clone)]
pub struct Extracted {
    pub gamma: NamedCochain,
    pub table: BTreeMap<Vec<usize>, ModElem>,
    pub skipped: usize,
    pub closed: CheckReport,
}

impl Extracted {
    /// The tabulated values as a cochain (finite algebras only).
    pub fn cochain(&self) -> Result<Cochain> {
        let mut c = Cochain::zero(3);
        for (t, v) in &self.table {
            c.set(t, v.clone())?;
        }
        Ok(c)
    }
}

/// `α(x1,x2) = [ρx1, ρx2] - ρ[x1,x2]`, `β = σ∘α`, `γ = τ∘d^m β`, where `g`
/// acts on `m` through `η∘ρ`. Fails with `Inconsistent` when `μ(d^m β) ≠ 0`.
pub fn extract_3cocycle(cm: &CrossedModule, d: &FourTermData) -> Result<Extracted> {
    let g = d.g.clone();
    let alpha_cm = |t: &[usize]| -> Result<Element> {
        let (a, b) = ((d.rho)(t[0])?, (d.rho)(t[1])?);
        let ab = cm.n.bracket(&a, &b)?;
        Ok(ab.sub(&d.rho_apply(&g.bracket_basis(t[0], t[1])?)?))
    };
    let beta = |t: &[usize]| -> Result<ModElem> { Ok(to_mod(&(d.sigma)(&alpha_cm(t)?)?)) };
    let act = |x: usize, v: &ModElem| -> Result<ModElem> { Ok(to_mod(&cm.act(&(d.rho)(x)?, &to_elem(v))?)) };
    let mut table = BTreeMap::new();
    let mut skipped = 0;
    for t in tuples(g.dim(), 3) {
        match coboundary_at(g.as_ref(), &act, &beta, &t) {
            Ok(db) => {
                let db = to_elem(&db);
                let image = cm.mu_apply(&db);
                if !image.is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "μ(d^m β){} = {}",
                        label_tuple(g.as_ref(), &t),
                        cm.n.render(&image)
                    )));
                }
                table.insert(t, (d.tau)(&db)?);
            }
            Err(Error::WindowOverflow { .. }) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let shared = Arc::new(table.clone());
    let lookup = shared.clone();
    let eval = Arc::new(move |t: &[usize]| -> Result<ModElem> {
        let Some((sorted, sign)) = crate::ce::sort_tuple(t) else {
            return Ok(ModElem::zero());
        };
        lookup.get(&sorted).map(|v| v.scaled(&sign)).ok_or_else(|| Error::WindowOverflow {
            what: "extracted cocycle argument".into(),
            index: sorted[2] as i64,
            window: "evaluated triples".into(),
        })
    });
    let gamma = NamedCochain::new("γ", 3, g.clone(), d.v.clone(), eval);
    let closed = crate::catalog::check_closed(&gamma);
    Ok(Extracted {
        gamma,
        table,
        skipped,
        closed,
    })
}

/// Comparison of the extracted cocycle with `∂α`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassComparison {
    /// `γ = ∂α` on every evaluated triple.
    pub equal_on_window: CheckReport,
    /// `γ - ∂α = d(primitive)`, when the algebra is finite.
    pub exact: Option<CheckReport>,
    pub primitive: Option<String>,
}

/// Compares `γ` with `∂α` computed through the connecting map of the SES.
pub fn compare_with_connecting(p: &PrincipalCrossedModule, ex: &Extracted) -> Result<ClassComparison> {
    let g = p.data.g.clone();
    let mut equal = CheckReport::new("γ = ∂α on the window");
    let mut diff = Cochain::zero(3);
    for (t, gamma) in &ex.table {
        match connecting_at(&p.ses, &p.alpha.as_fn(), t) {
            Ok(v) => {
                equal.record(&v == gamma, || {
                    format!("{}: γ = {} but ∂α = {}", label_tuple(g.as_ref(), t), p.ses.sub.render(gamma), p.ses.sub.render(&v))
                });
                diff.set(t, gamma.sub(&v))?;
            }
            Err(Error::WindowOverflow { .. }) => equal.skip(),
            Err(e) => return Err(e),
        }
    }
    let (exact, primitive) = if g.is_finite() {
        let mut r = CheckReport::new("γ - ∂α is a coboundary");
        match is_exact(g.as_ref(), p.ses.sub.as_ref(), &diff)? {
            Some(b) => {
                r.record(true, String::new);
                (Some(r), Some(b.render(g.as_ref(), p.ses.sub.as_ref())))
            }
            None => {
                r.fail("γ - ∂α is not in the image of d");
                (Some(r), None)
            }
        }
    } else {
        (None, None)
    };
    Ok(ClassComparison {
        equal_on_window: equal,
        exact,
        primitive,
    })
}

/// Checks that two extracted cocycles differ by a coboundary.
pub fn check_section_independence(a: &Extracted, b: &Extracted) -> Result<CheckReport> {
    let g = a.gamma.algebra.clone();
    let module = a.gamma.module.clone();
    let mut r = CheckReport::new("γ is independent of the sections up to a coboundary");
    let diff = a.cochain()?.sub(&b.cochain()?);
    match is_exact(g.as_ref(), module.as_ref(), &diff)? {
        Some(_) => r.record(true, String::new),
        None => r.fail(format!("γ - γ' = {} is not exact", diff.render(g.as_ref(), module.as_ref()))),
    }
    Ok(r)
}

/// A linear map given on basis indices.
pub type BasisMap<'a> = &'a (dyn Fn(usize) -> Result<Element> + Sync);

/// Checks that `(φ, ψ)` is an elementary equivalence: both are Lie
/// homomorphisms, `φ(η(n)·m) = η'(ψ(n))·φ(m)`, `μ'∘φ = ψ∘μ`, `φ∘i = i'` and
/// `π'∘ψ = π`.
pub fn check_elementary_equivalence(
    cm: &CrossedModule,
    d: &FourTermData,
    cm2: &CrossedModule,
    d2: &FourTermData,
    phi: BasisMap,
    psi: BasisMap,
) -> CheckReport {
    let mut r = CheckReport::new(format!("elementary equivalence {} ⇒ {}", cm.name, cm2.name));
    let lin = |f: BasisMap, e: &Element| e.map_linear(|k| f(*k));
    let (m, n) = (cm.m.as_ref(), cm.n.as_ref());
    let b = Element::basis;
    for i in 0..m.dim() {
        for j in (i + 1)..m.dim() {
            let sides = (|| Ok((lin(phi, &m.bracket_basis(i, j)?)?, cm2.m.bracket(&phi(i)?, &phi(j)?)?)))();
            record_eq(&mut r, cm2.m.as_ref(), sides, || format!("φ[{}, {}]", m.label(i), m.label(j)));
        }
        let sides = (|| Ok((cm2.mu_apply(&phi(i)?), lin(psi, &cm.mu[i])?)))();
        record_eq(&mut r, cm2.n.as_ref(), sides, || format!("μ'φ vs ψμ at {}", m.label(i)));
    }
    for a in 0..n.dim() {
        for c in (a + 1)..n.dim() {
            let sides = (|| Ok((lin(psi, &n.bracket_basis(a, c)?)?, cm2.n.bracket(&psi(a)?, &psi(c)?)?)))();
            record_eq(&mut r, cm2.n.as_ref(), sides, || format!("ψ[{}, {}]", n.label(a), n.label(c)));
        }
        for i in 0..m.dim() {
            let sides = (|| Ok((lin(phi, &cm.act(&b(a), &b(i))?)?, cm2.act(&psi(a)?, &phi(i)?)?)))();
            record_eq(&mut r, cm2.m.as_ref(), sides, || format!("φ(η({})·{})", n.label(a), m.label(i)));
        }
        let sides = (|| Ok(((d2.proj)(&psi(a)?)?, (d.proj)(&b(a))?)))();
        record_eq(&mut r, d.g.as_ref(), sides, || format!("π'ψ vs π at {}", n.label(a)));
    }
    for v in d.v.basis() {
        let e = ModElem::basis(v);
        let sides = (|| Ok((lin(phi, &(d.incl)(&e)?)?, (d2.incl)(&e)?)))();
        record_eq(&mut r, cm2.m.as_ref(), sides, || format!("φ∘i vs i' at {}", d.v.label(v)));
    }
    r
}

/// Maps between module windows, given on module basis indices.
pub type IndexMap = fn(i64) -> ModElem;

/// The ladder between two principal crossed modules over the same algebra
/// induced by module isomorphisms `V2 → V2'` and `V3 → V3'` and the identity
/// on `g`. With `negate`, `ψ` is replaced by `-ψ`.
pub fn ladder_check(
    a: &PrincipalCrossedModule,
    b: &PrincipalCrossedModule,
    on_mid: IndexMap,
    on_quot: IndexMap,
    negate: bool,
) -> CheckReport {
    let (m1, m2) = (a.m_alg.clone(), b.m_alg.clone());
    let (n1, n2) = (a.n_alg.clone(), b.n_alg.clone());
    let phi = move |i: usize| m2.embed(&on_mid(m1.basis[i]));
    let sign = crate::scalar::int(if negate { -1 } else { 1 });
    let psi = move |k: usize| -> Result<Element> {
        let (nv1, nv2) = (n1.nv(), n2.nv());
        let image = if k < nv1 {
            n2.join(&on_quot(n1.module.basis[k]), &Element::zero())?
        } else {
            Element::basis(k - nv1 + nv2)
        };
        Ok(image.scaled(&sign))
    };
    check_elementary_equivalence(&a.crossed, &a.data, &b.crossed, &b.data, &phi, &psi)
}

/// Identity maps on a crossed module.
pub fn check_reflexive(p: &PrincipalCrossedModule) -> CheckReport {
    let id = |i: usize| Ok(Element::basis(i));
    check_elementary_equivalence(&p.crossed, &p.data, &p.crossed, &p.data, &id, &id)
}

/// The density crossed module `F_0 → F_1 ×_α sl2` and the Verma-dual crossed
/// module `M(0)♯ → N(0)♯ ×_α sl2` on the window `[0, hi]`.
pub fn sl2_crossed_modules(hi: i64) -> Result<(PrincipalCrossedModule, PrincipalCrossedModule)> {
    let density_ses = ModuleSes::de_rham_sl2(hi)?;
    let r = crate::catalog::Realization::sl2(hi - 1);
    let alpha = crate::catalog::named_cochain("omega1", &r)?;
    let density = principal_construction(&density_ses, &alpha)?;
    let verma_ses = ModuleSes::verma_dual(hi)?;
    let verma = principal_construction(&verma_ses, &crate::catalog::verma_alpha(hi)?)?;
    Ok((density, verma))
}

/// The ladder between the two `sl2` crossed modules induced by `F_0 ≅ M(0)♯`
/// and `F_1 ≅ N(0)♯`.
pub fn density_verma_ladder_check(hi: i64, negate: bool) -> Result<CheckReport> {
    let (density, verma) = sl2_crossed_modules(hi)?;
    Ok(ladder_check(
        &density,
        &verma,
        crate::modules::f0_to_verma,
        crate::modules::f1_to_verma,
        negate,
    ))
}
