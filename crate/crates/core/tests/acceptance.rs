//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
//! Exits non-zero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use lefschetz::algebra::{
    build_quotient, idempotent_count, is_semisimple, localize_at_c1, QuotientAlgebra,
};
use lefschetz::cli::{analyze_text, parse_model, parse_syntax, Options, EXAMPLES};
use lefschetz::coeffs::{field_arith, rat, FieldOp, QPoly, RatFunc};
use lefschetz::geometry::{
    build_bundle_qh, calabi_yau_sh, closed_form_sh_relation, delzant_check, derive_qh_from_fan,
    eval_model, good_cone_check, lefschetz_check, torus_bound, vanishing_range, BundleModel,
    ModelExpr, MomentCone, Polytope,
};
use lefschetz::mirror::{build_superpotential, hms_check, jacobi_ring, verify_critical_family};
use lefschetz::polyalg::{char_poly, groebner, vars, MPoly, Monomial, MonomialOrder, Vars};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Collects every failed sub-check so one run reports all of them.
#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        if got != want {
            self.0.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn finish(self) -> Result<(), String> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(self.0.join("; "))
        }
    }
}

const FIVE: [(u32, u32, u32); 5] = [(1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 1, 2), (1, 1, 3)];

fn bundle(m: u32, n1: u32, n2: u32) -> BundleModel {
    BundleModel::new(m, n1, n2).unwrap()
}

fn same_ideal(v: &Vars, a: &[MPoly], b: &[MPoly]) -> bool {
    let ga = groebner(v, a, MonomialOrder::DegRevLex);
    let gb = groebner(v, b, MonomialOrder::DegRevLex);
    a.iter().all(|p| gb.normal_form(p).is_zero()) && b.iter().all(|p| ga.normal_form(p).is_zero())
}

/// c · q^k with c an integer.
fn qm(c: i64, k: usize) -> RatFunc {
    RatFunc::q_monomial(rat(c), k)
}

/// Integer oracle for the constant (−m)^{mn1} (n2+1)^{mn1}.
fn oracle_constant(m: u32, n1: u32, n2: u32) -> i64 {
    let e = m * n1;
    (-(m as i64)).pow(e) * ((n2 + 1) as i64).pow(e)
}

fn criterion_1() -> Result<(), String> {
    let mut c = Checks::default();
    let printed = ["x^2 + 2*q*x", "x^3 + 3*q^2*x", "x^4 - 16*q^2*x^2", "x^3 - 36*q*x^2", "x^4 + 4*q^3*x"];
    for (&(m, n1, n2), want) in FIVE.iter().zip(printed) {
        let b = bundle(m, n1, n2);
        let closed = build_bundle_qh(&b);
        let v = closed.vars.clone();
        let k = (n2 + 1 - m * n1) as usize;
        let oracle = MPoly::from_terms(
            &v,
            [
                (Monomial::new(vec![n2 + 1]), RatFunc::one()),
                (Monomial::new(vec![m * n1]), qm(-oracle_constant(m, n1, n2), k)),
            ],
        );
        c.eq(closed.relations.clone(), vec![oracle], &format!("{b} relation vs oracle"));
        c.eq(closed.relations[0].to_string(), want.to_string(), &format!("{b} text"));
        match derive_qh_from_fan(&b) {
            Ok(fan) => c.check(same_ideal(&v, &closed.relations, &fan.relations), format!("{b}: fan ideal differs")),
            Err(e) => c.check(false, format!("{b}: fan derivation failed: {e}")),
        }
    }
    c.finish()
}

fn criterion_2() -> Result<(), String> {
    let mut c = Checks::default();
    let printed = ["x + 2*q", "x^2 + 3*q^2", "x^2 - 16*q^2", "x - 36*q", "x^3 + 4*q^3"];
    for (&(m, n1, n2), want) in FIVE.iter().zip(printed) {
        let b = bundle(m, n1, n2);
        let qh = build_quotient(build_bundle_qh(&b)).unwrap();
        let split = localize_at_c1(&qh).unwrap();
        let k = (n2 + 1 - m * n1) as usize;
        let v = qh.vars().clone();
        let oracle = MPoly::from_terms(
            &v,
            [(Monomial::new(vec![k as u32]), RatFunc::one()), (Monomial::new(vec![0]), qm(-oracle_constant(m, n1, n2), k))],
        );
        c.check(
            same_ideal(&v, split.localized.relations(), std::slice::from_ref(&oracle)),
            format!("{b}: localized ideal {:?} differs from {oracle}", split.localized.display_presentation()),
        );
        c.eq(closed_form_sh_relation(&b).to_string(), want.to_string(), &format!("{b} SH text"));
        c.eq(split.localized.display_presentation(), format!("K[x]/({want})"), &format!("{b} localized text"));
        c.check(split.stabilization_exponent <= 2, format!("{b}: d = {}", split.stabilization_exponent));
        c.eq(split.localized.dim(), k, &format!("{b} dim SH"));
        c.eq(split.nilpotent_dim + k, (n2 + 1) as usize, &format!("{b} Fitting dims"));
    }
    c.finish()
}

fn criterion_3() -> Result<(), String> {
    let mut c = Checks::default();
    let qh = build_quotient(build_bundle_qh(&bundle(1, 2, 3))).unwrap();
    let sh = localize_at_c1(&qh).unwrap().localized;
    c.eq(qh.display_presentation(), "K[x]/(x^4 - 16*q^2*x^2)".into(), "QH");
    c.eq(sh.display_presentation(), "K[x]/(x^2 - 16*q^2)".into(), "SH");
    let (qs, qw) = is_semisimple(&qh);
    let (ss, sw) = is_semisimple(&sh);
    c.check(!qs && qw.is_zero(), format!("QH witness {qw} should be exactly 0"));
    // Gram matrix on {1, x}: tr 1 = 2, tr x = 0, tr x^2 = tr 16q^2 = 32q^2
    let oracle = &RatFunc::from_int(2) * &qm(32, 2);
    c.check(ss && sw == oracle, format!("SH witness {sw}, expected {oracle}"));
    c.finish()
}

fn criterion_4() -> Result<(), String> {
    let mut c = Checks::default();
    for (m, n) in [(1u32, 4u32), (2, 3)] {
        let (n1, n2) = (n / (m + 1), m * n / (m + 1));
        let ev = eval_model(&ModelExpr::bundle(m, n1, n2).unwrap()).unwrap();
        let g = lefschetz::algebra::graded_dims(&ev.sh);
        c.eq((ev.sh.dim(), g.even_dim), (1, 1), &format!("(m, n) = ({m}, {n}) SH dim / even dim"));
        c.check(is_semisimple(&ev.sh).0, format!("({m}, {n}) SH not semisimple"));
    }
    c.finish()
}

fn criterion_5() -> Result<(), String> {
    let mut c = Checks::default();
    for (m, n1, n2) in [(1, 2, 1), (1, 3, 2)] {
        let b = bundle(m, n1, n2);
        c.check(b.is_calabi_yau(), format!("{b} should be Calabi-Yau"));
        c.check(calabi_yau_sh(&b).is_zero_ring(), format!("{b}: citation branch nonzero"));
        let qh = build_quotient(build_bundle_qh(&b)).unwrap();
        c.check(qh.c1().is_zero(), format!("{b}: c1 = {}", qh.c1()));
        let split = localize_at_c1(&qh).unwrap();
        c.check(split.localized.is_zero_ring(), format!("{b}: localization branch nonzero"));
        c.eq(split.nilpotent_dim, (n2 + 1) as usize, &format!("{b} nilpotent part"));
        let ev = eval_model(&ModelExpr::Bundle(b)).unwrap();
        c.eq(ev.sh.dim(), 0, &format!("{b} eval SH"));
    }
    c.finish()
}

fn criterion_6() -> Result<(), String> {
    let mut c = Checks::default();
    for (m, n) in [(1u32, 2u32), (3, 2), (2, 3)] {
        let text = format!("Bl({m}, C^{n})");
        let ev = eval_model(&parse_model(&text).unwrap()).unwrap();
        let d = (m * (n - 1)) as usize;
        c.eq(ev.sh.dim(), d, &format!("{text} SH dim"));
        c.eq(torus_bound(&ev), d, &format!("{text} torus bound"));
        c.check(is_semisimple(&ev.sh).0, format!("{text} SH not semisimple"));
        // each summand K[x]/(x^{n-1} + n q^{n-1}) with c1 = (n-1)x has
        // c1 char poly t^{n-1} + n (n-1)^{n-1} q^{n-1}
        let k = (n - 1) as usize;
        let piece = {
            let v = vars(&["t"]);
            let p = MPoly::from_terms(
                &v,
                [(Monomial::new(vec![n - 1]), RatFunc::one()), (Monomial::new(vec![0]), qm(n as i64 * (n as i64 - 1).pow(n - 1), k))],
            );
            lefschetz::polyalg::UniPoly::from_mpoly(&p)
        };
        let mut oracle = lefschetz::polyalg::UniPoly::one();
        for _ in 0..m {
            oracle = oracle.mul(&piece);
        }
        c.eq(ev.sh.c1_char_poly(), oracle, &format!("{text} c1 char poly"));
        let report = analyze_text(&text, &Options::default()).unwrap();
        c.check(
            report.discrepancy_notes.iter().any(|s| s.contains("x^(n-1) + n*q^(n-1)")),
            format!("{text}: exponent note missing"),
        );
        let note = report.bounds.and_then(|b| b.blowup_bound_note).unwrap_or_default();
        c.check(note.contains(&format!("= {d} for m = {m}, n = {n}")), format!("{text}: bound note {note:?}"));
    }
    c.finish()
}

fn criterion_7() -> Result<(), String> {
    let mut c = Checks::default();
    let ev = eval_model(&parse_model("flip(C^5, 2, 3)").unwrap()).unwrap();
    let piece = eval_model(&ModelExpr::bundle(1, 2, 3).unwrap()).unwrap();
    c.eq(ev.sh.display_presentation(), "K[x]/(x^2 - 16*q^2)".into(), "flip SH");
    c.eq(ev.sh.c1_char_poly(), piece.sh.c1_char_poly(), "flip vs E+ char poly");
    c.check(is_semisimple(&ev.sh).0, "flip SH not semisimple");
    c.finish()
}

fn classical_oracle(model: &ModelExpr, j: u32) -> bool {
    let ev = eval_model(model).unwrap();
    let p = ev.qh.normal_form(&ev.qh.c1().pow(j));
    p.is_q_free() && p.terms().all(|(m, _)| m.weighted_degree(ev.qh.degrees()) == 2 * j as i64)
}

fn criterion_8() -> Result<(), String> {
    let mut c = Checks::default();
    let line = ModelExpr::bundle(1, 1, 3).unwrap();
    let rank2 = ModelExpr::bundle(1, 2, 3).unwrap();
    let cases = [(&line, 1, true), (&line, 2, true), (&line, 3, true), (&rank2, 3, true), (&rank2, 2, false)];
    for (model, j, certified) in cases {
        let v = lefschetz_check(model, j).unwrap();
        c.eq(v.overall.certified, certified, &format!("{model} at j = {j}"));
        if certified {
            c.check(v.classical_power && classical_oracle(model, j), format!("{model}: c1^{j} = {} not classical", v.c1_power));
        }
    }
    c.finish()
}

fn criterion_9() -> Result<(), String> {
    let mut c = Checks::default();
    let char_polys = ["t + 2*q", "t^2 + 12*q^2", "t^2 - 64*q^2", "t - 36*q"];
    for (&(m, n1, n2), want) in [(1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 1, 2)].iter().zip(char_polys) {
        let b = bundle(m, n1, n2);
        let w = build_superpotential(&b);
        let cf = match verify_critical_family(&w, &b) {
            Ok(cf) => cf,
            Err(e) => {
                c.check(false, format!("{b}: {e}"));
                continue;
            }
        };
        c.eq(cf.value_coefficient, n2 as i64 - (m * n1) as i64 + 1, &format!("{b} critical value coefficient"));
        let jac = jacobi_ring(&w).unwrap();
        let ev = eval_model(&ModelExpr::Bundle(b)).unwrap();
        c.eq(ev.sh.c1_char_poly().to_string(), want.to_string(), &format!("{b} c1 char poly"));
        let h = hms_check(&jac, &ev.sh, &cf);
        c.check(h.dims_match, format!("{b}: dim Jac {} vs dim SH {}", h.jacobi_dim, h.sh_dim));
        c.check(h.critical_values_are_eigenvalues, format!("{b}: char poly does not vanish at {}", cf.critical_value));
        c.check(h.ok, format!("{b}: {h:?}"));
    }
    // W(-2q, 2q) for O(-1) -> P^1: -2q + 2q + 2q * 2q / (-2q) = -2q
    let b = bundle(1, 1, 1);
    c.eq(
        verify_critical_family(&build_superpotential(&b), &b).map(|cf| cf.critical_value).ok(),
        Some("-2*q".to_string()),
        "O(-1) -> P^1 critical value",
    );
    let r = analyze_text("O(-1) -> P^2", &Options::default()).unwrap();
    c.check(r.discrepancy_notes.iter().any(|s| s.contains("n2 - m*n + 1")), "critical value note missing");
    c.finish()
}

fn criterion_10() -> Result<(), String> {
    let mut c = Checks::default();
    let prism = MomentCone::of_bundle(&bundle(1, 2, 2));
    let v = good_cone_check(&prism).unwrap();
    c.check(v.good, format!("cone over the P^1 x P^2 polytope not good: {:?}", v.failures));
    c.check(delzant_check(&prism.cross_section()).unwrap(), "P^1 x P^2 polytope not Delzant");

    let square = MomentCone::over_polytope(&Polytope {
        facets: vec![(vec![1, 0], 0), (vec![0, 1], 0), (vec![-1, 0], 1), (vec![0, -1], 1)],
    });
    let v = good_cone_check(&square).unwrap();
    c.check(
        !v.face_condition,
        format!(
            "cone over the square passes the face condition ({} nonzero proper faces checked; the apex lies on {} facets)",
            v.faces_checked, v.apex_facets
        ),
    );
    c.eq(vanishing_range(&bundle(1, 2, 3)).unwrap().interval, Some((3, 4)), "vanishing range of O(-1)^2 -> P^3");
    c.finish()
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(-6i64..=6, 0..4), prop::collection::vec(-6i64..=6, 1..3))
        .prop_filter("nonzero denominator", |(_, d)| d.iter().any(|&x| x != 0))
        .prop_map(|(n, d)| RatFunc::normalize(QPoly::from_i64s(&n), QPoly::from_i64s(&d)).unwrap())
}

fn run_property<S: Strategy>(
    c: &mut Checks,
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    if let Err(e) = runner.run(&strategy, test) {
        c.check(false, format!("{name}: {e}"));
    }
}

fn cayley_hamilton(a: &QuotientAlgebra) -> bool {
    let m = a.c1_matrix();
    char_poly(&m).eval_matrix(&m).is_zero()
        && a.mult_tables().iter().all(|t| char_poly(t).eval_matrix(t).is_zero())
}

fn criterion_11() -> Result<(), String> {
    let mut c = Checks::default();

    run_property(&mut c, "field axioms", (ratfunc(), ratfunc(), ratfunc()), |(a, b, d)| {
        let add = |x: &RatFunc, y: &RatFunc| field_arith(x, y, FieldOp::Add).unwrap();
        let mul = |x: &RatFunc, y: &RatFunc| field_arith(x, y, FieldOp::Mul).unwrap();
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(add(&add(&a, &b), &d), add(&a, &add(&b, &d)));
        prop_assert_eq!(mul(&mul(&a, &b), &d), mul(&a, &mul(&b, &d)));
        prop_assert_eq!(mul(&a, &add(&b, &d)), add(&mul(&a, &b), &mul(&a, &d)));
        if !b.is_zero() {
            prop_assert_eq!(mul(&field_arith(&a, &b, FieldOp::Div).unwrap(), &b), a.clone());
        }
        Ok(())
    });

    let v = vars(&["x", "y"]);
    let (x, y, q) = (MPoly::var(&v, 0), MPoly::var(&v, 1), MPoly::constant(&v, RatFunc::q()));
    let ideal = vec![&x.pow(2) - &(&y * &q), &y.pow(3) - &(&x * &y)];
    let gb = groebner(&v, &ideal, MonomialOrder::DegRevLex);
    let poly = prop::collection::vec((0u32..5, 0u32..5, -5i64..=5, 0usize..3), 0..6).prop_map(move |ts| {
        MPoly::from_terms(&v, ts.into_iter().map(|(a, b, k, e)| (Monomial::new(vec![a, b]), qm(k, e))))
    });
    run_property(&mut c, "normal form idempotence", poly, |p| {
        let nf = gb.normal_form(&p);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        for r in &ideal {
            prop_assert!(gb.normal_form(&(&p * r)).is_zero());
        }
        Ok(())
    });

    for (name, text) in EXAMPLES {
        let ev = eval_model(&parse_model(text).unwrap()).unwrap();
        c.check(cayley_hamilton(&ev.qh) && cayley_hamilton(&ev.sh), format!("Cayley-Hamilton fails on {name}"));
    }

    let dim3 = ["O(-1) -> P^2", "O(-2) -> P^2", "Bl(2, C^3)", "C^3", "flip(C^3, 1, 2)", "O(-1)^2 -> P^1"];
    for a in dim3 {
        for b in dim3 {
            let (ea, eb) = (eval_model(&parse_model(a).unwrap()).unwrap(), eval_model(&parse_model(b).unwrap()).unwrap());
            let sum = eval_model(&parse_model(&format!("({a}) # ({b})")).unwrap()).unwrap();
            c.eq(sum.sh.dim(), ea.sh.dim() + eb.sh.dim(), &format!("dim SH of {a} # {b}"));
            c.eq(
                idempotent_count(&sum.sh).ok(),
                Some(idempotent_count(&ea.sh).unwrap() + idempotent_count(&eb.sh).unwrap()),
                &format!("idempotents of {a} # {b}"),
            );
            c.eq(torus_bound(&sum), torus_bound(&ea) + torus_bound(&eb), &format!("torus bound of {a} # {b}"));
        }
    }

    run_property(&mut c, "parse-print round trip", (2u32..=4).prop_flat_map(common::model_of_dim), |e| {
        prop_assert_eq!(parse_syntax(&e.to_string()).unwrap(), e.clone());
        let once = parse_model(&e.to_string()).unwrap();
        prop_assert_eq!(parse_model(&once.to_string()).unwrap(), once);
        Ok(())
    });

    for (name, text) in EXAMPLES {
        let json = common::example_json(text);
        c.check(json == common::example_json(text), format!("{name}: JSON not deterministic"));
        let golden = std::fs::read_to_string(common::golden_path(name)).unwrap_or_default();
        c.check(json == golden, format!("{name}: JSON differs from golden file"));
    }
    c.finish()
}

type Criterion = fn() -> Result<(), String>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("closed-form QH and fan-derived ideal", criterion_1),
        ("localization at c1 gives SH", criterion_2),
        ("semisimplicity contrast pair", criterion_3),
        ("one-dimensional SH family", criterion_4),
        ("Calabi-Yau vanishing", criterion_5),
        ("blow-ups of C^n", criterion_6),
        ("flip of C^5", criterion_7),
        ("Lefschetz certification", criterion_8),
        ("mirror suite", criterion_9),
        ("cone combinatorics", criterion_10),
        ("property suites", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
