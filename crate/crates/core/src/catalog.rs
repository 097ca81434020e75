//! Named cochains with closed-form evaluation: the Gelfand-Fuks 2-cocycle,
//! the Godbillon-Vey cocycle, the Killing 3-cocycle, the dual-of-bracket
//! 2-cochain on `(Ug)♯`, and the generators of `H^*(sl2, F_λ)`.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::ce::{coboundary_at, connecting_at, module_action, sort_tuple, trivial_action, tuples, Cochain};
use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::lie::{killing_form, sl2, sl2_fields, LieAlgebra, SubalgebraInclusion, WittAlgebra};
use crate::modules::{DensityModule, LieModule, ModuleSes, PbwDual, TrivialModule, VermaDual, VermaKind};
use crate::poly::{det2, det3, Poly};
use crate::scalar::{fmt_scalar, int, Element, ModElem, Scalar};

type EvalFn = Arc<dyn Fn(&[usize]) -> Result<ModElem> + Send + Sync>;

/// A cochain with a closed-form evaluation rule on basis tuples.
#[derive(Clone)]
pub struct NamedCochain {
    pub name: String,
    pub degree: usize,
    pub algebra: Arc<dyn LieAlgebra>,
    pub module: Arc<dyn LieModule>,
    eval: EvalFn,
}

impl NamedCochain {
    pub fn new(
        name: &str,
        degree: usize,
        algebra: Arc<dyn LieAlgebra>,
        module: Arc<dyn LieModule>,
        eval: EvalFn,
    ) -> Self {
        NamedCochain {
            name: name.to_string(),
            degree,
            algebra,
            module,
            eval,
        }
    }

    /// Value on a basis tuple (any order).
    pub fn evaluate(&self, tuple: &[usize]) -> Result<ModElem> {
        if tuple.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                got: tuple.len(),
            });
        }
        if let Some(bad) = tuple.iter().find(|i| **i >= self.algebra.dim()) {
            return Err(Error::WindowOverflow {
                what: format!("argument of {}", self.name),
                index: *bad as i64,
                window: format!("[0, {})", self.algebra.dim()),
            });
        }
        (self.eval)(tuple)
    }

    /// Evaluation closure for use with [`coboundary_at`].
    pub fn as_fn(&self) -> impl Fn(&[usize]) -> Result<ModElem> + '_ {
        move |t| self.evaluate(t)
    }

    /// Tabulates the cochain on every increasing tuple.
    pub fn to_cochain(&self) -> Result<Cochain> {
        Cochain::from_fn(self.algebra.dim(), self.degree, |t| self.evaluate(t))
    }

    /// `dc` on `args`.
    pub fn coboundary_at(&self, args: &[usize]) -> Result<ModElem> {
        let act = module_action(self.module.as_ref());
        coboundary_at(self.algebra.as_ref(), &act, &self.as_fn(), args)
    }

    pub fn render_value(&self, v: &ModElem) -> String {
        self.module.render(v)
    }
}

/// Vector-field realization of an algebra together with the degree window
/// used for density-valued cochains.
#[derive(Clone)]
pub struct Realization {
    pub algebra: Arc<dyn LieAlgebra>,
    pub fields: Vec<Poly>,
    pub value_window: i64,
}

impl Realization {
    /// `sl2` as `e = x^2`, `h = 2x`, `f = -1`.
    pub fn sl2(value_window: i64) -> Self {
        Realization {
            algebra: Arc::new(sl2()),
            fields: sl2_fields(),
            value_window,
        }
    }

    /// A window of `W1`; the value window is large enough for one coboundary
    /// of a 3-cochain.
    pub fn witt(lo: i64, hi: i64) -> Result<Self> {
        let w = WittAlgebra::new(lo, hi)?;
        let fields = w.fields();
        Ok(Realization {
            algebra: Arc::new(w),
            fields,
            value_window: 4 * (hi + 2),
        })
    }

    pub fn density(&self, lambda: i64) -> Result<Arc<dyn LieModule>> {
        Ok(Arc::new(DensityModule::new(
            self.algebra.clone(),
            self.fields.clone(),
            int(lambda),
            self.value_window,
        )?))
    }

    pub fn trivial(&self) -> Arc<dyn LieModule> {
        Arc::new(TrivialModule::new(self.algebra.clone()))
    }
}

/// Catalog names with one-line descriptions.
pub const CATALOG: &[(&str, &str)] = &[
    ("gelfand_fuks_alpha", "det[[f', g'], [f'', g'']] (dx)^1, a 2-cocycle with values in F_1"),
    ("theta_x", "det[[f, g, h], [f', g', h'], [f'', g'', h'']] as a polynomial in x"),
    ("theta0", "the Godbillon-Vey 3-cocycle: theta_x at x = 0"),
    ("killing_3cocycle", "(x, y, z) ↦ κ([x, y], z) on a finite algebra"),
    ("ug_dual_alpha", "α(x, y) = the functional u ↦ κ([x, y], u) on length-1 PBW monomials"),
    ("theta1", "f (dx)^0"),
    ("theta2", "f' (dx)^0"),
    ("eta", "det[[f, g], [f', g']] (dx)^0"),
    ("zeta", "f'' (dx)^1"),
    ("omega1", "det[[f', g'], [f'', g'']] (dx)^1"),
    ("omega2", "det[[f, g], [f'', g'']] (dx)^1"),
    ("theta3", "det[[f, g, h], [f', g', h'], [f'', g'', h'']] (dx)^1"),
];

fn d1(p: &Poly) -> Poly {
    p.derivative()
}

fn d2(p: &Poly) -> Poly {
    p.derivative().derivative()
}

/// `det[[f,g,h],[f',g',h'],[f'',g'',h'']]`.
pub fn wronskian3(f: &Poly, g: &Poly, h: &Poly) -> Poly {
    let (f1, g1, h1) = (d1(f), d1(g), d1(h));
    let (f2, g2, h2) = (d2(f), d2(g), d2(h));
    det3([[f, g, h], [&f1, &g1, &h1], [&f2, &g2, &h2]])
}

/// `θ(x)` of three vector fields.
pub fn theta_poly(fields: &[Poly], t: &[usize]) -> Poly {
    wronskian3(&fields[t[0]], &fields[t[1]], &fields[t[2]])
}

/// `α` of two vector fields, as a polynomial coefficient of `dx`.
pub fn alpha_poly(fields: &[Poly], t: &[usize]) -> Poly {
    let (f, g) = (&fields[t[0]], &fields[t[1]]);
    det2(&d1(f), &d1(g), &d2(f), &d2(g))
}

/// Builds the field-formula entry `name` on a realization.
pub fn named_cochain(name: &str, r: &Realization) -> Result<NamedCochain> {
    let fields = Arc::new(r.fields.clone());
    let poly_entry = |degree: usize, lambda: i64, rule: fn(&[Poly], &[usize]) -> Poly| -> Result<NamedCochain> {
        let module = r.density(lambda)?;
        let fs = fields.clone();
        let window = r.value_window;
        let eval: EvalFn = Arc::new(move |t| {
            let p = rule(&fs, t);
            if let Some(d) = p.degree() {
                if d as i64 > window {
                    return Err(Error::WindowOverflow {
                        what: "cochain value degree".into(),
                        index: d as i64,
                        window: format!("[0, {window}]"),
                    });
                }
            }
            Ok(p.to_elem())
        });
        Ok(NamedCochain::new(name, degree, r.algebra.clone(), module, eval))
    };
    match name {
        "gelfand_fuks_alpha" | "omega1" => poly_entry(2, 1, alpha_poly),
        "theta_x" => poly_entry(3, 0, theta_poly),
        "theta3" => poly_entry(3, 1, theta_poly),
        "theta1" => poly_entry(1, 0, |fs, t| fs[t[0]].clone()),
        "theta2" => poly_entry(1, 0, |fs, t| d1(&fs[t[0]])),
        "zeta" => poly_entry(1, 1, |fs, t| d2(&fs[t[0]])),
        "eta" => poly_entry(2, 0, |fs, t| {
            let (f, g) = (&fs[t[0]], &fs[t[1]]);
            det2(f, g, &d1(f), &d1(g))
        }),
        "omega2" => poly_entry(2, 1, |fs, t| {
            let (f, g) = (&fs[t[0]], &fs[t[1]]);
            det2(f, g, &d2(f), &d2(g))
        }),
        "theta0" => {
            let fs = fields.clone();
            let eval: EvalFn = Arc::new(move |t| Ok(ModElem::term(0, theta_poly(&fs, t).at_zero())));
            Ok(NamedCochain::new(name, 3, r.algebra.clone(), r.trivial(), eval))
        }
        "killing_3cocycle" => killing_3cocycle(r.algebra.clone()),
        other => Err(Error::Unknown(format!("catalog entry {other}"))),
    }
}

/// `(x, y, z) ↦ κ([x, y], z)`.
pub fn killing_3cocycle(alg: Arc<dyn LieAlgebra>) -> Result<NamedCochain> {
    if !alg.is_finite() {
        return Err(Error::Unsupported(format!("Killing form on {}", alg.name())));
    }
    let a = alg.clone();
    let eval: EvalFn = Arc::new(move |t| {
        let xy = a.bracket_basis(t[0], t[1])?;
        Ok(ModElem::term(0, killing_form(a.as_ref(), &xy, &Element::basis(t[2]))?))
    });
    let module = Arc::new(TrivialModule::new(alg.clone()));
    Ok(NamedCochain::new("killing_3cocycle", 3, alg, module, eval))
}

/// `omega1` on `sl2` transported to `N(0)♯` by `x^n dx ↦ φ_{n+1}`; `N(0)♯`
/// has indices `[1, hi]`.
pub fn verma_alpha(hi: i64) -> Result<NamedCochain> {
    let omega = named_cochain("omega1", &Realization::sl2(hi - 1))?;
    let module: Arc<dyn LieModule> = Arc::new(VermaDual::new(VermaKind::N, hi)?);
    let eval: EvalFn = Arc::new(move |t| {
        omega
            .evaluate(t)?
            .map_linear(|n| Ok::<_, Error>(crate::modules::f1_to_verma(*n)))
    });
    Ok(NamedCochain::new("restricted_alpha", 2, Arc::new(sl2()), module, eval))
}

/// `α(x, y)(u) = κ([x, y], u)` for `u` of length one, zero otherwise.
pub fn ug_dual_alpha(dual: Arc<PbwDual>) -> Result<NamedCochain> {
    let alg = dual.algebra();
    if !alg.is_finite() {
        return Err(Error::Unsupported("PBW duals of windowed algebras".into()));
    }
    let a = alg.clone();
    let d = dual.clone();
    let eval: EvalFn = Arc::new(move |t| {
        let xy = a.bracket_basis(t[0], t[1])?;
        let mut out = ModElem::zero();
        for k in 0..a.dim() {
            let c = killing_form(a.as_ref(), &xy, &Element::basis(k))?;
            if !c.is_zero() {
                let id = d.id_of(&[k]).expect("length-one monomials are stored");
                out.add_term(id, c);
            }
        }
        Ok(out)
    });
    Ok(NamedCochain::new("ug_dual_alpha", 2, alg, dual, eval))
}

/// `dc = 0` on every increasing tuple of the algebra window; tuples whose
/// evaluation leaves a window are skipped.
pub fn check_closed(c: &NamedCochain) -> CheckReport {
    let mut report = CheckReport::new(format!("{} is closed on {}", c.name, c.algebra.name()));
    for t in tuples(c.algebra.dim(), c.degree + 1) {
        match c.coboundary_at(&t) {
            Ok(v) => report.record(v.is_zero(), || {
                format!("d{}{} = {}", c.name, label_tuple(c.algebra.as_ref(), &t), c.render_value(&v))
            }),
            Err(Error::WindowOverflow { .. }) => report.skip(),
            Err(e) => report.fail(e.to_string()),
        }
    }
    report
}

pub(crate) fn label_tuple(alg: &dyn LieAlgebra, t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|i| alg.label(*i)).collect();
    format!("({})", parts.join(", "))
}

/// Normalization constant relating the unit pairing of `d(ug_dual_alpha)` to
/// `κ([x1, x2], x3)` under the standard coboundary convention.
pub const UNIT_PAIRING_CONSTANT: i64 = -3;

/// Outcome of the refined closedness identity for `ug_dual_alpha`.
#[derive(Clone, Debug, Serialize)]
pub struct UgDualIdentityReport {
    pub algebra: String,
    pub pbw_length: usize,
    pub order: Vec<String>,
    pub constant: String,
    pub triples: usize,
    pub monomials: usize,
    /// Unit-monomial pairing against `UNIT_PAIRING_CONSTANT · κ([x1, x2], x3)`.
    pub unit: CheckReport,
    /// Vanishing on monomials of length `1..=L`.
    pub higher: CheckReport,
    pub check: CheckReport,
}

/// Checks that `d(ug_dual_alpha)(x1, x2, x3)` pairs with the unit monomial as
/// `UNIT_PAIRING_CONSTANT · κ([x1, x2], x3)` and vanishes on all monomials of
/// length `1..=L`, for every increasing basis triple.
pub fn check_ug_dual_identity(dual: Arc<PbwDual>) -> Result<UgDualIdentityReport> {
    let alpha = ug_dual_alpha(dual.clone())?;
    let alg = dual.algebra();
    let eps = dual
        .id_of(&[])
        .ok_or_else(|| Error::InvalidModule("the PBW dual must be augmented".into()))?;
    let c = int(UNIT_PAIRING_CONSTANT);
    let mut unit = CheckReport::new(format!("unit pairing of d(ug_dual_alpha) = {UNIT_PAIRING_CONSTANT}·κ([,],)"));
    let mut higher = CheckReport::new("d(ug_dual_alpha) vanishes on monomials of positive length");
    let triples = tuples(alg.dim(), 3);
    for t in &triples {
        let v = alpha.coboundary_at(t)?;
        let kappa = killing_form(alg.as_ref(), &alg.bracket_basis(t[0], t[1])?, &Element::basis(t[2]))?;
        for u in dual.basis() {
            let got = v.get(&u);
            let want = if u == eps { &c * &kappa } else { Scalar::zero() };
            let target = if u == eps { &mut unit } else { &mut higher };
            target.record(got == want, || {
                format!(
                    "d α{} on {} is {}, expected {}",
                    label_tuple(alg.as_ref(), t),
                    dual.label(u),
                    fmt_scalar(&got),
                    fmt_scalar(&want)
                )
            });
        }
    }
    let mut check = CheckReport::new(format!("d(ug_dual_alpha) = {}·ε*κ([,],) on {}", UNIT_PAIRING_CONSTANT, alg.name()));
    check.absorb(&unit);
    check.absorb(&higher);
    Ok(UgDualIdentityReport {
        algebra: alg.name(),
        pbw_length: dual.max_len(),
        order: dual.order().iter().map(|i| alg.label(*i)).collect(),
        constant: UNIT_PAIRING_CONSTANT.to_string(),
        triples: triples.len(),
        monomials: dual.dim(),
        unit,
        higher,
        check,
    })
}

/// Checks that the connecting map of `0 → C♯ → (Ug)♯ → (Ug⁺)♯ → 0` sends the
/// image of `ug_dual_alpha` in `(Ug⁺)♯` to `UNIT_PAIRING_CONSTANT · κ([,],)`.
pub fn check_killing_transgression(ses: &ModuleSes, dual: Arc<PbwDual>) -> Result<CheckReport> {
    let alpha = ug_dual_alpha(dual)?;
    let alg = ses.algebra();
    let kappa = killing_3cocycle(alg.clone())?;
    let restricted = |t: &[usize]| ses.project(&alpha.evaluate(t)?);
    let mut report = CheckReport::new("∂(i*α) = -3⟨[,],⟩");
    for t in tuples(alg.dim(), 3) {
        let got = match connecting_at(ses, &restricted, &t) {
            Ok(v) => v,
            Err(e @ Error::NotInSubmodule { .. }) => {
                report.fail(e.to_string());
                continue;
            }
            Err(e) => return Err(e),
        };
        let want = kappa.evaluate(&t)?.scaled(&int(UNIT_PAIRING_CONSTANT));
        report.record(got == want, || {
            format!("∂(i*α){} = {:?}, expected {:?}", label_tuple(alg.as_ref(), &t), got, want)
        });
    }
    Ok(report)
}

/// Sign `s` in `d/dx θ(x) = s · d^ℝα` under the standard coboundary convention.
pub const TRANSGRESSION_SIGN: i64 = -1;

/// Verifies on a `W1` window, for every increasing triple, that
/// `θ'(x) = TRANSGRESSION_SIGN · d^ℝα` as polynomials, and that the connecting
/// map of `0 → C → F_0 → F_1 → 0` sends `α` to `θ(0)`. Brackets are computed
/// in the window `[lo, 2 hi]` so no triple is skipped.
pub fn check_gv_transgression(lo: i64, hi: i64) -> Result<(CheckReport, CheckReport)> {
    let big = 2 * hi.max(0) + lo.min(0).abs();
    let r = Realization::witt(lo, big)?;
    let alpha = named_cochain("gelfand_fuks_alpha", &r)?;
    let theta0 = named_cochain("theta0", &r)?;
    let alg = r.algebra.clone();
    let mut trans = CheckReport::new(format!("θ'(x) = {TRANSGRESSION_SIGN}·d^ℝα"));
    let mut conn = CheckReport::new("∂α = θ(0)");
    let witt = Arc::new(WittAlgebra::new(lo, big)?);
    let ses = ModuleSes::de_rham_witt(witt, r.value_window)?;
    let n = (hi - lo + 1) as usize;
    for t in tuples(n, 3) {
        let lhs = theta_poly(&r.fields, &t).derivative();
        match coboundary_at(alg.as_ref(), &trivial_action, &alpha.as_fn(), &t) {
            Ok(v) => {
                let rhs = Poly::from_elem(&v).scale(&int(TRANSGRESSION_SIGN));
                trans.record(lhs == rhs, || {
                    format!("{}: θ' = {} but d^ℝα = {}", label_tuple(alg.as_ref(), &t), lhs.render(), Poly::from_elem(&v).render())
                });
            }
            Err(Error::WindowOverflow { .. }) => trans.skip(),
            Err(e) => return Err(e),
        }
        match connecting_at(&ses, &alpha.as_fn(), &t) {
            Ok(v) => {
                let want = theta0.evaluate(&t)?;
                conn.record(v == want, || {
                    format!("∂α{} = {:?} but θ(0) = {:?}", label_tuple(alg.as_ref(), &t), v, want)
                });
            }
            Err(Error::WindowOverflow { .. }) => conn.skip(),
            Err(e) => return Err(e),
        }
    }
    Ok((trans, conn))
}

/// Pullback of a module along a subalgebra inclusion.
pub struct PullbackModule {
    inner: Arc<dyn LieModule>,
    inclusion: SubalgebraInclusion,
    scale: Option<Scalar>,
}

impl PullbackModule {
    pub fn new(inner: Arc<dyn LieModule>, inclusion: SubalgebraInclusion) -> Self {
        // weight = c · inner weight when the source grading maps to c · target grading
        let scale = (|| {
            let g = inclusion.source.grading()?;
            let image = inclusion.map(&g);
            let tg = inclusion.target.grading()?;
            let (k, c) = tg.iter().next()?;
            let ratio = image.get(k) / c;
            (image == tg.scaled(&ratio)).then_some(ratio)
        })();
        PullbackModule {
            inner,
            inclusion,
            scale,
        }
    }
}

impl LieModule for PullbackModule {
    fn name(&self) -> String {
        format!("{}|{}", self.inner.name(), self.inclusion.source.name())
    }

    fn algebra(&self) -> Arc<dyn LieAlgebra> {
        self.inclusion.source.clone()
    }

    fn window(&self) -> (i64, i64) {
        self.inner.window()
    }

    fn label(&self, m: i64) -> String {
        self.inner.label(m)
    }

    fn act_basis(&self, x: usize, m: i64) -> Result<ModElem> {
        self.inner.act(&self.inclusion.images[x], &ModElem::basis(m))
    }

    fn weight(&self, m: i64) -> Option<Scalar> {
        Some(self.scale.as_ref()? * self.inner.weight(m)?)
    }

    fn covers_weight(&self, w: &Scalar) -> bool {
        match &self.scale {
            Some(s) if !s.is_zero() => self.inner.covers_weight(&(w / s)),
            _ => true,
        }
    }
}

/// Expands a multilinear evaluation over the images of source basis elements.
fn pull_eval(c: &NamedCochain, inc: &SubalgebraInclusion, t: &[usize]) -> Result<ModElem> {
    let mut out = ModElem::zero();
    let mut stack: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), int(1))];
    for x in t {
        let mut next = Vec::new();
        for (prefix, coef) in &stack {
            for (k, a) in inc.images[*x].iter() {
                let mut p = prefix.clone();
                p.push(*k);
                next.push((p, coef * a));
            }
        }
        stack = next;
    }
    for (args, coef) in stack {
        if sort_tuple(&args).is_some() {
            out.axpy(&coef, &c.evaluate(&args)?);
        }
    }
    Ok(out)
}

/// Pulls a named cochain back along an inclusion; values live in the
/// pulled-back coefficient module.
pub fn restrict(c: &NamedCochain, inc: &SubalgebraInclusion) -> NamedCochain {
    let module: Arc<dyn LieModule> = Arc::new(PullbackModule::new(c.module.clone(), inc.clone()));
    let inner = c.clone();
    let i = inc.clone();
    let eval: EvalFn = Arc::new(move |t| pull_eval(&inner, &i, t));
    NamedCochain::new(
        &format!("{}|{}", c.name, inc.source.name()),
        c.degree,
        inc.source.clone(),
        module,
        eval,
    )
}

/// Checks `i*(dc) = d(i*c)` on every increasing source tuple.
pub fn check_restriction_commutes(c: &NamedCochain, inc: &SubalgebraInclusion) -> CheckReport {
    let pulled = restrict(c, inc);
    let mut report = CheckReport::new(format!("i*d = d i* for {}", c.name));
    let n = inc.source.dim();
    // i*(dc) as a named cochain on the source
    let dc: EvalFn = {
        let c = c.clone();
        Arc::new(move |t| c.coboundary_at(t))
    };
    let dc_named = NamedCochain::new("dc", c.degree + 1, c.algebra.clone(), c.module.clone(), dc);
    for t in tuples(n, c.degree + 1) {
        let lhs = pull_eval(&dc_named, inc, &t);
        let rhs = pulled.coboundary_at(&t);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => report.record(a == b, || {
                format!("{}: {:?} vs {:?}", label_tuple(inc.source.as_ref(), &t), a, b)
            }),
            (Err(Error::WindowOverflow { .. }), _) | (_, Err(Error::WindowOverflow { .. })) => report.skip(),
            (Err(e), _) | (_, Err(e)) => report.fail(e.to_string()),
        }
    }
    report
}

/// Compares two cochains of the same degree on every increasing tuple of
/// their common algebra; returns the first differing tuple.
pub fn compare(a: &NamedCochain, b: &NamedCochain, scale_b: &Scalar) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("{} = {}·{}", a.name, fmt_scalar(scale_b), b.name));
    for t in tuples(a.algebra.dim(), a.degree) {
        let x = a.evaluate(&t)?;
        let y = b.evaluate(&t)?.scaled(scale_b);
        report.record(x == y, || {
            format!("{}: {} vs {}", label_tuple(a.algebra.as_ref(), &t), a.render_value(&x), b.render_value(&y))
        });
    }
    Ok(report)
}
