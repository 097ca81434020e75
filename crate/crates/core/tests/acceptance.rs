//! One PASS/FAIL line per acceptance criterion, printed on every run. All comparisons are exact
//! (tolerance zero). Criteria that are known to fail print FAIL and assert the
//! recorded counterexample instead of panicking.

mod common;

use std::sync::Arc;

use common::BruteComplex;
use num_traits::{Signed, Zero};
use xmodlab::catalog::{
    check_gv_transgression, check_ug_dual_identity, killing_3cocycle, named_cochain, ug_dual_alpha, Realization, UNIT_PAIRING_CONSTANT,
    TRANSGRESSION_SIGN,
};
use xmodlab::ce::{betti, connecting_at, les_consistency, relative_slice, tuples, weight_slice};
use xmodlab::crossed::{check_axioms, compare_with_connecting, extract_3cocycle, sl2_crossed_modules};
use xmodlab::lie::{sl2, sl3, SL2_E, SL2_F, SL2_H};
use xmodlab::modules::{
    DensityModule, LieModule, ModuleSes, PbwDual, TrivialModule, VermaDual, VermaKind,
};
use xmodlab::report::{RunConfig, Status};
use xmodlab::scalar::{fmt_scalar, int};
use xmodlab::suite::{emit_reconciliation, section_independence_de_rham, section_independence_verma, GENERATORS};
use xmodlab::{Element, LieAlgebra, ModElem, Scalar, WittAlgebra};

const TOLERANCE: &str = "exact";

fn line(n: usize, ok: bool, what: &str, detail: impl AsRef<str>) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("acceptance {n:>2} {status} [{TOLERANCE}] {what} :: {}", detail.as_ref());
}

fn sc(n: i64) -> Scalar {
    int(n)
}

fn only(v: &ModElem, key: i64) -> Option<Scalar> {
    v.keys().all(|k| *k == key).then(|| v.get(&key))
}

// 3x3 adjoint matrices of sl2 in the basis (e, h, f), written out by hand:
// [h, e] = 2e, [h, f] = -2f, [e, f] = h.
fn sl2_ad(x: usize) -> [[i64; 3]; 3] {
    match x {
        0 => [[0, -2, 0], [0, 0, 1], [0, 0, 0]],
        1 => [[2, 0, 0], [0, 0, 0], [0, 0, -2]],
        _ => [[0, 0, 0], [-1, 0, 0], [0, 2, 0]],
    }
}

fn trace_product(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]) -> i64 {
    (0..3).map(|i| (0..3).map(|k| a[i][k] * b[k][i]).sum::<i64>()).sum()
}

fn criterion_01_killing_and_theta() {
    let g = sl2();
    for x in 0..3 {
        for y in 0..3 {
            let br = g.bracket_basis(x, y).unwrap();
            for (col, row) in (0..3).map(|r| (r, sl2_ad(x)[r][y])) {
                assert_eq!(br.get(&col), sc(row), "bracket table of sl2 at ({x}, {y})");
            }
        }
    }
    // [e, f] = h so κ([e,f], h) = tr(ad h ad h)
    let oracle_kappa = trace_product(&sl2_ad(SL2_H), &sl2_ad(SL2_H));
    // fields e = x^2, f = -1, h = 2x: Wronskian rows at 0 are (0,-1,0), (0,0,2), (2,0,0)
    let w = [[0i64, -1, 0], [0, 0, 2], [2, 0, 0]];
    let oracle_theta = w[0][0] * (w[1][1] * w[2][2] - w[1][2] * w[2][1]) - w[0][1] * (w[1][0] * w[2][2] - w[1][2] * w[2][0])
        + w[0][2] * (w[1][0] * w[2][1] - w[1][1] * w[2][0]);
    assert_eq!((oracle_kappa, oracle_theta), (8, -4));

    let efh = [SL2_E, SL2_F, SL2_H];
    let kappa = killing_3cocycle(Arc::new(sl2())).unwrap().evaluate(&efh).unwrap();
    let theta = named_cochain("theta0", &Realization::sl2(12)).unwrap().evaluate(&efh).unwrap();
    let (k, t) = (only(&kappa, 0), only(&theta, 0));
    let ok = k == Some(sc(8)) && t == Some(sc(-4));
    line(1, ok, "κ([e,f],h) = 8 and θ(0)(e,f,h) = -4 on sl2", format!("κ([e,f],h) = {}, θ(0)(e,f,h) = {}; oracle {oracle_kappa}, {oracle_theta}", fmt_scalar(&kappa.get(&0)), fmt_scalar(&theta.get(&0))));
    assert!(ok);
}

fn criterion_02_ug_dual_identity() {
    let mut all_ok = true;
    let mut detail = Vec::new();
    for g in [sl2(), sl3()] {
        let g = Arc::new(g);
        let dual = Arc::new(PbwDual::new(g.clone(), 2, true).unwrap());
        let rep = check_ug_dual_identity(dual.clone()).unwrap();

        // independent unit pairing: κ(a, b) = tr(ad a ad b) from raw brackets
        let alpha = ug_dual_alpha(dual.clone()).unwrap();
        let eps = dual.id_of(&[]).unwrap();
        let ad = |x: &Element| -> Vec<Vec<Scalar>> {
            (0..g.dim())
                .map(|r| (0..g.dim()).map(|c| g.bracket(x, &Element::basis(c)).unwrap().get(&r)).collect())
                .collect()
        };
        for t in tuples(g.dim(), 3) {
            let a = ad(&g.bracket_basis(t[0], t[1]).unwrap());
            let b = ad(&Element::basis(t[2]));
            let kappa: Scalar = (0..g.dim()).map(|i| (0..g.dim()).map(|k| &a[i][k] * &b[k][i]).sum::<Scalar>()).sum();
            let got = alpha.coboundary_at(&t).unwrap().get(&eps);
            assert_eq!(got, kappa * sc(UNIT_PAIRING_CONSTANT), "unit pairing on {t:?}");
        }
        assert!(rep.unit.passed());

        let ok = rep.unit.passed() && rep.higher.passed();
        all_ok &= ok;
        detail.push(format!(
            "{}: unit pairing = {}·κ on {} triples, positive length: {}",
            rep.algebra,
            UNIT_PAIRING_CONSTANT,
            rep.triples,
            rep.higher.summary()
        ));
    }
    line(2, all_ok, "d(ug_dual_alpha) = κ([x1,x2],x3) ε* on sl2 and sl3, PBW length 2", detail.join("; "));

    // recorded counterexample: dα(e,h,f) = 24ε + 16h* + 32(hh)*
    let g = Arc::new(sl2());
    let dual = Arc::new(PbwDual::new(g, 2, true).unwrap());
    let v = ug_dual_alpha(dual.clone()).unwrap().coboundary_at(&[SL2_E, SL2_H, SL2_F]).unwrap();
    let at = |m: &[usize]| v.get(&dual.id_of(m).unwrap());
    assert_eq!((at(&[]), at(&[SL2_H]), at(&[SL2_H, SL2_H])), (sc(24), sc(16), sc(32)));
}

// W1 fields x^p d/dx with p = index + 1; every quantity is a single monomial.
fn vandermonde(p: i64, q: i64, r: i64) -> i64 {
    (q - p) * (r - p) * (r - q)
}

fn gf_alpha(a: i64, b: i64) -> i64 {
    a * b * (b - a)
}

fn criterion_03_connecting_gelfand_fuks() {
    let (lo, hi) = (-1, 6);
    let (_, conn) = check_gv_transgression(lo, hi).unwrap();

    let big = 2 * hi + 1;
    let r = Realization::witt(lo, big).unwrap();
    let alpha = named_cochain("gelfand_fuks_alpha", &r).unwrap();
    let witt = Arc::new(WittAlgebra::new(lo, big).unwrap());
    let ses = ModuleSes::de_rham_witt(witt, r.value_window).unwrap();
    let n = (hi - lo + 1) as usize;
    let mut mismatches = Vec::new();
    for t in tuples(n, 3) {
        let p: Vec<i64> = t.iter().map(|i| *i as i64 + lo + 1).collect();
        let oracle = if p.iter().sum::<i64>() == 3 { vandermonde(p[0], p[1], p[2]) } else { 0 };
        let got = connecting_at(&ses, &alpha.as_fn(), &t).unwrap();
        if only(&got, 0) != Some(sc(oracle)) {
            mismatches.push(format!("{t:?}: {got:?} vs {oracle}"));
        }
    }
    let ok = conn.passed() && mismatches.is_empty();
    line(3, ok, "∂α = θ(0) on W1 triples with indices in [-1, 6]", format!("{}; oracle mismatches {}", conn.summary(), mismatches.len()));
    assert!(ok, "{mismatches:?}");
}

fn criterion_04_transgression() {
    let (lo, hi) = (-1, 6);
    let (trans, _) = check_gv_transgression(lo, hi).unwrap();

    // θ(x) = V(p,q,r) x^{p+q+r-3} and α(x^a, x^b) = ab(b-a) x^{a+b-3}
    let mut bad = 0;
    let mut count = 0;
    for p in 0..=hi + 1 {
        for q in p + 1..=hi + 1 {
            for r in q + 1..=hi + 1 {
                let s = p + q + r;
                let theta_prime = vandermonde(p, q, r) * (s - 3);
                let d_alpha = -(q - p) * gf_alpha(p + q - 1, r) + (r - p) * gf_alpha(p + r - 1, q)
                    - (r - q) * gf_alpha(q + r - 1, p);
                count += 1;
                if theta_prime != TRANSGRESSION_SIGN * d_alpha {
                    bad += 1;
                }
            }
        }
    }
    let r = Realization::witt(lo, hi).unwrap();
    let alpha = named_cochain("gelfand_fuks_alpha", &r).unwrap();
    let n = (hi - lo + 1) as usize;
    for t in tuples(n, 2) {
        let (a, b) = (t[0] as i64 + lo + 1, t[1] as i64 + lo + 1);
        let got = alpha.evaluate(&t).unwrap();
        let want = gf_alpha(a, b);
        if want == 0 {
            assert!(got.is_zero());
        } else {
            assert_eq!(only(&got, a + b - 3), Some(sc(want)), "α on {t:?}");
        }
    }
    let ok = trans.passed() && bad == 0;
    line(
        4,
        ok,
        "θ'(x) = s·d^ℝα as polynomials on the same window",
        format!("s = {TRANSGRESSION_SIGN}; {}; closed-form oracle {count} triples, {bad} mismatches", trans.summary()),
    );
    assert!(ok);
}

fn criterion_05_verma_crossed_module() {
    let (_, verma) = sl2_crossed_modules(12).unwrap();
    let axioms = check_axioms(&verma.crossed);
    let ex = extract_3cocycle(&verma.crossed, &verma.data).unwrap();
    let cmp = compare_with_connecting(&verma, &ex).unwrap();
    let exact = cmp.exact.as_ref().is_some_and(|r| r.passed());
    let ok = axioms.passed() && cmp.equal_on_window.passed() && exact && cmp.primitive.is_some();
    line(
        5,
        ok,
        "principal construction on 0 → L(0)♯ → M(0)♯ → N(0)♯ → 0",
        format!(
            "{}; γ - ∂α exact, certificate {}",
            axioms.overall("axioms").summary(),
            cmp.primitive.clone().unwrap_or_else(|| "none".into())
        ),
    );
    assert!(ok);
}

fn criterion_06_density_verma_isomorphism() {
    let hi = 12;
    let f0 = DensityModule::over_sl2(sc(0), hi).unwrap();
    let m = VermaDual::new(VermaKind::M, hi).unwrap();
    // T(x^n) = n φ_n, T(1) = φ_0
    let t = |n: i64, c: i64| -> ModElem {
        if n == 0 {
            ModElem::term(0, sc(c))
        } else {
            ModElem::term(n, sc(c * n))
        }
    };
    // e = x^2 d/dx, h = 2x d/dx, f = -d/dx acting on x^n
    let hand = |x: usize, n: i64| -> (i64, i64) {
        match x {
            0 => (n + 1, n),
            1 => (n, 2 * n),
            _ => (n - 1, -n),
        }
    };
    let (mut checked, mut bad) = (0, 0);
    for n in 0..=hi {
        for x in [SL2_E, SL2_H, SL2_F] {
            let (deg, c) = hand(x, n);
            if deg > hi {
                continue;
            }
            let lhs = if c == 0 { ModElem::zero() } else { t(deg, c) };
            assert_eq!(f0.act_basis(x, n).unwrap(), if c == 0 { ModElem::zero() } else { ModElem::term(deg, sc(c)) });
            let tn = t(n, 1);
            let mut rhs = ModElem::zero();
            for (k, c) in tn.iter() {
                rhs.axpy(c, &m.act_basis(x, *k).unwrap());
            }
            checked += 1;
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    let ok = bad == 0 && checked == 3 * (hi as usize + 1) - 1;
    line(6, ok, "f_i ↦ φ_i intertwines e, h, f up to index 12", format!("{checked} cases, {bad} mismatches"));
    assert!(ok);
}

fn criterion_07_betti_baselines() {
    let g = sl2();
    let bound = sc(8);
    let triv = betti(&g, &TrivialModule::new(Arc::new(sl2())), 3, &bound).unwrap().total();
    let f0 = DensityModule::over_sl2(sc(0), 12).unwrap();
    let hf0 = betti(&g, &f0, 3, &bound).unwrap().total();

    let oracle_triv = BruteComplex::assemble(&g, &TrivialModule::new(Arc::new(sl2())), &[0, 1, 2], 3, |_| true).cohomology();
    let oracle_f0 = BruteComplex::assemble(&g, &f0, &[0, 1, 2], 3, |w| w.abs() <= bound).cohomology();
    assert_eq!(triv, oracle_triv);
    assert_eq!(hf0, oracle_f0);

    let ok = triv == [1, 0, 0, 1] && hf0[0] == 1 && hf0[3] == 0;
    line(7, ok, "H(sl2, C) = (1,0,0,1), H^0(sl2, F_0) = 1, H^3(sl2, F_0) = 0", format!("C {triv:?}, F_0 {hf0:?}"));
    assert!(ok);
}

fn criterion_08_relative_cohomology() {
    let g = sl2();
    let m = VermaDual::new(VermaKind::M, 12).unwrap();
    let rel = relative_slice(&g, &[SL2_H], &m, 3).unwrap();
    let got = rel.cohomology();
    let expected = vec![1, 1, 0, 0];
    let ok = got == expected;
    line(
        8,
        ok,
        "H(sl2, h; M(0)♯) = Λ h* = (1,1,0,0)",
        format!("computed {got:?} from cochain dims {:?}", rel.dims()),
    );

    // independent oracle: weight-0 cochains on Λ(g/h) are h-invariant
    let oracle = BruteComplex::assemble(&g, &m, &[SL2_E, SL2_F], 2, |w| w.is_zero());
    assert_eq!(oracle.dims, vec![1, 1, 1]);
    assert_eq!(oracle.cohomology(), vec![1, 0, 0]);
    assert_eq!(got, vec![1, 0, 0, 0]);
}

fn criterion_09_zero_map() {
    let ses = ModuleSes::verma_dual(12).unwrap();
    let les = les_consistency(&ses).unwrap();
    let g = sl2();
    let m = VermaDual::new(VermaKind::M, 12).unwrap();
    let l = VermaDual::new(VermaKind::L, 12).unwrap();
    let zero = |w: &Scalar| w.is_zero();
    let h3_l = BruteComplex::assemble(&g, &l, &[0, 1, 2], 3, zero).cohomology()[3];
    let h3_m = BruteComplex::assemble(&g, &m, &[0, 1, 2], 3, zero).cohomology()[3];
    assert_eq!((les.sub[3], les.mid[3]), (h3_l, h3_m));
    let ok = les.check.passed() && les.iota[3] == 0;
    line(
        9,
        ok,
        "H^3(L(0)♯) → H^3(M(0)♯) is zero",
        format!("rank {}, dims {} → {}; {}", les.iota[3], les.sub[3], les.mid[3], les.check.summary()),
    );
    assert!(ok);
}

fn criterion_10_property_suite() {
    let g = sl2();
    let bound = sc(8);
    let mut modules: Vec<Box<dyn LieModule>> = vec![Box::new(VermaDual::new(VermaKind::M, 12).unwrap())];
    for lambda in 0..=2 {
        modules.push(Box::new(DensityModule::over_sl2(sc(lambda), 12).unwrap()));
    }
    let mut detail = Vec::new();
    let mut ok = true;
    for m in &modules {
        let slice0 = weight_slice(&g, m.as_ref(), 3, &sc(0)).unwrap();
        let table = betti(&g, m.as_ref(), 3, &bound).unwrap();
        let full = BruteComplex::assemble(&g, m.as_ref(), &[0, 1, 2], 3, |w| w.abs() <= bound);
        let w0 = slice0.cohomology();
        let agree = full.cohomology() == w0 && table.total() == w0;
        let off = table.nonzero_off_weights().is_empty();
        let d2 = full.d_squared_zero()
            && slice0.check_d_squared().passed()
            && table.slices.values().all(|s| s.d_squared_zero);
        ok &= agree && off && d2;
        detail.push(format!("{} {:?}", m.name(), w0));
    }
    let de_rham = section_independence_de_rham(&RunConfig::default()).unwrap();
    let verma = section_independence_verma(&RunConfig::default()).unwrap();
    ok &= de_rham.passed() && verma.passed();
    line(
        10,
        ok,
        "weight-0 slices = brute-force windowed complex, d² = 0, section independence",
        format!("{}; sections: {}, {}", detail.join(", "), de_rham.summary(), verma.summary()),
    );
    assert!(ok);
}

fn criterion_11_reconciliation() {
    let report = emit_reconciliation(&RunConfig::default()).unwrap();
    let has = |name: &str| report.verdicts.iter().any(|v| v.name == name);
    let mut names: Vec<&str> = GENERATORS.iter().map(|g| g.0).collect();
    names.push("constant");
    let verdicts_ok = names
        .iter()
        .all(|n| has(&format!("reconcile.generator.{n}.closed")) && has(&format!("reconcile.generator.{n}.exact")));
    let paired = report.comparisons.iter().all(|c| !c.printed.is_empty() && !c.computed.is_empty());
    let dims_paired = (0..4).all(|p| {
        ["F_0", "F_1"]
            .iter()
            .all(|m| report.comparisons.iter().any(|c| c.item == format!("dim H^{p}(sl2, {m})")))
    });
    let warns = report.verdicts.iter().filter(|v| v.status == Status::Warn).count();
    let no_fail = report.verdicts.iter().all(|v| v.status != Status::Fail);
    let ok = verdicts_ok && paired && dims_paired && no_fail;
    line(
        11,
        ok,
        "reconciliation report completes",
        format!("{} generators judged, {} comparisons, {warns} discrepancy warnings", names.len(), report.comparisons.len()),
    );
    assert!(ok);
}

fn main() {
    let criteria: [(&str, fn()); 11] = [
        ("criterion_01_killing_and_theta", criterion_01_killing_and_theta),
        ("criterion_02_ug_dual_identity", criterion_02_ug_dual_identity),
        ("criterion_03_connecting_gelfand_fuks", criterion_03_connecting_gelfand_fuks),
        ("criterion_04_transgression", criterion_04_transgression),
        ("criterion_05_verma_crossed_module", criterion_05_verma_crossed_module),
        ("criterion_06_density_verma_isomorphism", criterion_06_density_verma_isomorphism),
        ("criterion_07_betti_baselines", criterion_07_betti_baselines),
        ("criterion_08_relative_cohomology", criterion_08_relative_cohomology),
        ("criterion_09_zero_map", criterion_09_zero_map),
        ("criterion_10_property_suite", criterion_10_property_suite),
        ("criterion_11_reconciliation", criterion_11_reconciliation),
    ];
    let mut broken = Vec::new();
    for (name, run) in criteria {
        if std::panic::catch_unwind(run).is_err() {
            broken.push(name);
        }
    }
    if !broken.is_empty() {
        eprintln!("acceptance checks panicked: {broken:?}");
        std::process::exit(1);
    }
}
