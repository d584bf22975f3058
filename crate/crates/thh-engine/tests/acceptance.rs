//! Acceptance criteria 1 to 12. Prints one line per criterion and exits
//! nonzero if any fails.

use std::sync::Arc;
use std::time::Instant;

use thh_engine::algebra::{Algebra, Presentation};
use thh_engine::homological::{
    case_four_resolution, hochschild_complex, minimal_resolution, tor_via_bar, truncated_quotient_algebra,
    BigradedDims, CoefficientMap,
};
use thh_engine::ktheory::{
    classify, fg_operator_check, presets, run_scenario, suite_jobs, v0_of_k, v0_presentation, v1_of_k,
    v1_presentation, CaseParams, REFERENCE_PAIRS,
};
use thh_engine::specseq::{Derivation, DifferentialSpec, Shift};
use thh_engine::steenrod::{homology_of_k_comodule, regular_comodule, v1_thh_comodule, DualSteenrod};
use thh_engine::{PrimeField, Report};

type Outcome = Result<(bool, String), String>;

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn pair(q: u64) -> CaseParams {
    classify(q, 5).unwrap()
}

fn scenario(id: &str, q: u64, d: u32) -> Outcome {
    let r = run_scenario(id, &pair(q), d).map_err(|e| e.to_string())?;
    Ok(report_outcome(&r))
}

fn report_outcome(r: &Report) -> (bool, String) {
    let failed: Vec<String> = r.failures().map(|c| c.description.clone()).collect();
    if failed.is_empty() {
        (r.passed(), format!("{} claims", r.claims.len()))
    } else {
        (false, format!("{}: failing {}", r.scenario, failed.join("; ")))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for p in parts {
        let (pass, d) = p?;
        ok &= pass;
        details.push(d);
    }
    Ok((ok, details.join(" | ")))
}

/// r by brute-force powers, v by dividing q^r − 1 by p.
fn classify_oracle(q: u64, p: u64) -> (u32, u32, u8) {
    let mut r = 1u32;
    let mut acc = q as u128 % p as u128;
    while acc != 1 {
        acc = acc * q as u128 % p as u128;
        r += 1;
    }
    let mut n = (q as u128).pow(r) - 1;
    let mut v = 0;
    while n % p as u128 == 0 {
        n /= p as u128;
        v += 1;
    }
    let case = match (r as u64 == p - 1, v == 1) {
        (true, true) => 1,
        (true, false) => 2,
        (false, false) => 3,
        (false, true) => 4,
    };
    (r, v, case)
}

fn criterion_1() -> Outcome {
    let want = [(4, 1, 1), (4, 2, 2), (2, 2, 3), (2, 1, 4)];
    let mut ok = true;
    let mut got = Vec::new();
    for (&(q, p), w) in REFERENCE_PAIRS.iter().zip(want) {
        let c = classify(q, p).map_err(|e| e.to_string())?;
        let t = (c.r, c.v, c.case);
        ok &= t == w && t == classify_oracle(q, p as u64);
        got.push(format!("({q},{p})→{t:?}"));
    }
    Ok((ok, got.join(" ")))
}

/// Closed forms: E(x) ⊗ P(y) has one class in each degree ≡ 0 or −1 mod 2r;
/// E(x) ⊗ P_k(y) keeps those with y-exponent below k.
fn closed_forms(c: &CaseParams, d: u32) -> (Vec<usize>, Vec<usize>) {
    let m = 2 * c.r;
    let v0 = (0..=d).map(|n| usize::from(n % m == 0 || n % m == m - 1)).collect();
    let v1 = (0..=d).map(|n| usize::from((n % m == 0 && n / m < c.k) || (n % m == m - 1 && n / m < c.k))).collect();
    (v0, v1)
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    for (q, p) in REFERENCE_PAIRS {
        let c = classify(q, p).map_err(|e| e.to_string())?;
        let (o0, o1) = closed_forms(&c, 60);
        let les0 = v0_of_k(&c, 60).map_err(|e| e.to_string())?;
        let les1 = v1_of_k(&c, 60).map_err(|e| e.to_string())?;
        let a0 = Algebra::new(v0_presentation(&c).unwrap(), 60).unwrap().poincare();
        let a1 = Algebra::new(v1_presentation(&c).unwrap(), 60).unwrap().poincare();
        ok &= les0.dims == o0 && les0 == a0 && les1.dims == o1 && les1 == a1;
    }
    Ok((ok, "4 pairs through degree 60".into()))
}

fn tor_of(pres: Presentation, d: u32) -> (BigradedDims, BigradedDims) {
    let alg = Algebra::new(pres, d).unwrap();
    let bar = tor_via_bar(&alg, d).unwrap();
    let res = minimal_resolution(&alg, d).unwrap().generator_dims();
    (bar, res.into_iter().filter(|&(_, n)| n > 0).collect())
}

fn criterion_3() -> Outcome {
    let d = 40;
    let mut ok = true;
    let mut notes = Vec::new();
    for deg in [1u32, 3, 7] {
    let (bar, res) = tor_of(Presentation::builder(f5()).ext("x", deg).build().unwrap(), d);
        // Γ(σx): one class γ_n at (n, n·|x|).
        let want: BigradedDims = (0..=d / deg).map(|n| ((n, n * deg), 1)).collect();
        ok &= bar == want && res == want;
        notes.push(format!("E(x{deg}) {}", bar == want));
    }
    // |y| = 2 is left out: the normalized bar complex of P(y) then has 2^19
    // cells in internal degree 40.
    for deg in [4u32, 8] {
    let (bar, res) = tor_of(Presentation::builder(f5()).poly("y", deg).build().unwrap(), d);
        let want: BigradedDims = [((0, 0), 1), ((1, deg), 1)].into_iter().collect();
        ok &= bar == want && res == want;
        notes.push(format!("P(y{deg}) {}", bar == want));
    }
    // The mixed case stops at 36 where its bar complex has 7528 cells.
    let d = 36;
    let (bar, res) = tor_of(Presentation::builder(f5()).ext("x", 3).poly("y", 4).build().unwrap(), d);
    let mut want = BigradedDims::new();
    for n in 0..=d / 3 {
        for (e, t) in [(0, 0), (1, 4)] {
            if 3 * n + t <= d {
                *want.entry((n + e, 3 * n + t)).or_default() += 1;
            }
        }
    }
    ok &= bar == want && res == want;
    notes.push(format!("E(x3)⊗P(y4) {}", bar == want));
    Ok((ok, notes.join(", ")))
}

fn criterion_4() -> Outcome {
    scenario("tor-hk-case1", 2, 60)
}

fn criterion_5() -> Outcome {
    scenario("case4-resolution", 4, 10)
}

fn criterion_6() -> Outcome {
    all(vec![
        scenario("v0-thh-case1", 2, 100),
        scenario("v0-thh-case2", 7, 100),
        scenario("v0-thh-case3", 49, 100),
        scenario("v0-thh-case4", 4, 100),
    ])
}

fn criterion_7() -> Outcome {
    scenario("bokstedt-case2", 7, 100)
}

fn criterion_8() -> Outcome {
    scenario("primitives-2p2-1", 2, 49)
}

fn criterion_9() -> Outcome {
    scenario("dga-case1", 2, 120)
}

fn criterion_10() -> Outcome {
    scenario("v1-thh-case2-collapse", 7, 100)
}

fn criterion_11() -> Outcome {
    let mut parts = Vec::new();
    for q in [4u64, 2] {
        let c = pair(q);
        parts.push(fg_operator_check(&c, 80).map(|r| report_outcome(&r)).map_err(|e| e.to_string()));
    }
    all(parts)
}

fn check(ok: &mut bool, failures: &mut Vec<String>, label: String, r: Result<(), String>) {
    if let Err(e) = r {
        *ok = false;
        failures.push(format!("{label}: {e}"));
    }
}

fn criterion_12() -> Outcome {
    let mut ok = true;
    let mut failures = Vec::new();
    let mut counts = [0usize; 4];

    // d∘d = 0 on bar complexes, resolutions and derivations.
    for (q, p) in REFERENCE_PAIRS {
        let c = classify(q, p).unwrap();
        let alg = Algebra::new(v0_presentation(&c).unwrap(), 30).unwrap();
        let cx = hochschild_complex(&alg, &CoefficientMap::ground(alg.presentation()).unwrap(), 30).unwrap();
        let id = hochschild_complex(&alg, &CoefficientMap::identity(&alg).unwrap(), 30).unwrap();
        check(&mut ok, &mut failures, format!("bar complex q={q}"), cx.check_square_zero().then_some(()).ok_or_default());
        check(&mut ok, &mut failures, format!("Hochschild complex q={q}"), id.check_square_zero().then_some(()).ok_or_default());
        check(&mut ok, &mut failures, format!("Euler q={q}"), (cx.euler_check() && id.euler_check()).then_some(()).ok_or_default());
        let res = minimal_resolution(&alg, 30).unwrap();
        check(&mut ok, &mut failures, format!("minimal resolution q={q}"), res.check_square_zero(30).map_err(|e| e.to_string()));
        counts[0] += 4;
    }
    let c4 = pair(4);
    let res = case_four_resolution(f5(), c4.r, c4.k, 30).unwrap();
    check(&mut ok, &mut failures, "case-4 resolution".into(), res.check_square_zero(30).map_err(|e| e.to_string()));
    let quotient = truncated_quotient_algebra(f5(), c4.r, c4.k, 20).unwrap();
    let res = minimal_resolution(&quotient, 20).unwrap();
    check(&mut ok, &mut failures, "quotient minimal resolution".into(), res.check_square_zero(20).map_err(|e| e.to_string()));
    counts[0] += 2;
    let p = 5;
    let derivations: Vec<(Presentation, DifferentialSpec)> = vec![
        (presets::v0_thh_e2(&pair(2)).unwrap(), DifferentialSpec::new(2 * p - 1).set("l1", "sx")),
        (presets::v0_thh_e2(&pair(2)).unwrap(), DifferentialSpec::new(2 * p).set("mu1", "sy")),
        (presets::bokstedt_case2_e2(p).unwrap(), DifferentialSpec::new(p - 1).gamma("stau2", p, "sxi3")),
        (presets::v1_thh_case1_e2(p).unwrap(), DifferentialSpec::new(2 * p - 2).set("l2", "x*a")),
        (presets::v1_thh_hypothesis_e2(&pair(49)).unwrap(), DifferentialSpec::new(2 * p - 5).set("mu1", "y*sy")),
        (presets::v1_thh_hypothesis_e2(&c4).unwrap(), DifferentialSpec::new(2 * p - 6).set("l1", "x*sy")),
    ];
    for (pres, spec) in derivations {
        let alg = Algebra::new(pres, 60).unwrap();
        let d = Derivation::new(&alg, &spec, Shift::page(spec.page)).map_err(|e| e.to_string())?;
        let r = d.check_relations().and_then(|_| d.check_square_zero()).map_err(|e| e.to_string());
        check(&mut ok, &mut failures, format!("d^{} derivation", spec.page), r);
        counts[0] += 1;
    }

    // Coassociativity and counit on every comodule through degree 50.
    let a_star = Arc::new(DualSteenrod::new(f5(), 50).unwrap());
    check(&mut ok, &mut failures, "A_* coassociativity".into(), a_star.check_coassociativity(50));
    check(&mut ok, &mut failures, "A_* counit".into(), a_star.check_counit(50));
    let mut comodules = vec![
        ("A_*".to_string(), regular_comodule(a_star.clone()).unwrap()),
        ("V(1) ∧ THH case 1".to_string(), v1_thh_comodule(a_star.clone(), 50).unwrap()),
        ("H_*K case 1".to_string(), homology_of_k_comodule(a_star.clone(), 1, 4, 1, 0, 50).unwrap()),
    ];
    for a in 0..5 {
        comodules.push((format!("H_*K case 2, a={a}"), homology_of_k_comodule(a_star.clone(), 2, 4, 1, a, 50).unwrap()));
        comodules.push((format!("H_*K case 3, a={a}"), homology_of_k_comodule(a_star.clone(), 3, 2, 2, a, 50).unwrap()));
    }
    for (name, m) in &comodules {
        check(&mut ok, &mut failures, format!("{name} coassociativity"), m.check_coassociativity(50).map_err(|e| e.to_string()));
        check(&mut ok, &mut failures, format!("{name} counit"), m.check_counit(50).map_err(|e| e.to_string()));
        counts[1] += 1;
    }

    // Associativity and graded commutativity through degree 60.
    let mut algebras: Vec<(String, Presentation)> = Vec::new();
    for q in [2u64, 7, 49, 4] {
        let c = pair(q);
        algebras.push((format!("V(0)K q={q}"), presets::v0_k(&c).unwrap()));
        algebras.push((format!("V(1)K q={q}"), presets::v1_k(&c).unwrap()));
        algebras.push((format!("v0-thh E2 q={q}"), presets::v0_thh_e2(&c).unwrap()));
        algebras.push((format!("V(0)THH q={q}"), presets::v0_thh(&c).unwrap()));
        algebras.push((format!("fg q={q}"), presets::fg(&c).unwrap()));
        if c.case <= 3 {
            algebras.push((format!("H_*K q={q}"), presets::hk(&c).unwrap()));
            algebras.push((format!("Tor E2 q={q}"), presets::tor_hk_e2(&c).unwrap()));
        } else {
            algebras.push(("quotient".into(), presets::hk_quotient(&c).unwrap()));
        }
        if c.case >= 3 {
            algebras.push((format!("hypothesis E2 q={q}"), presets::v1_thh_hypothesis_e2(&c).unwrap()));
        }
    }
    algebras.push(("A_*".into(), presets::dual_steenrod(5).unwrap()));
    algebras.push(("Bökstedt E2".into(), presets::bokstedt_case2_e2(5).unwrap()));
    algebras.push(("Ω∞ ⊗ P(μ2) ⊗ Γ(b)".into(), presets::v1_thh_case1(5).unwrap()));
    algebras.push(("case-2 answer".into(), presets::v1_thh_case2(5).unwrap()));
    algebras.push(("case-1 E2".into(), presets::v1_thh_case1_e2(5).unwrap()));
    algebras.push(("case-2 E2".into(), presets::v1_thh_case2_e2(5).unwrap()));
    for (name, pres) in algebras {
        let alg = Algebra::new(pres, 60).unwrap();
        check(&mut ok, &mut failures, format!("{name} associativity"), alg.check_associativity(60).map(|_| ()));
        check(&mut ok, &mut failures, format!("{name} commutativity"), alg.check_graded_commutativity(60).map(|_| ()));
        counts[2] += 1;
    }

    // Euler characteristic across every page executed by the scenarios.
    for (id, params) in suite_jobs().unwrap() {
        let r = run_scenario(id, &params, 60).map_err(|e| e.to_string())?;
        for cl in r.claims.iter().filter(|c| c.description.contains("Euler")) {
            counts[3] += 1;
            if !cl.pass {
                ok = false;
                failures.push(format!("{id} q={}: {}", params.q, cl.description));
            }
        }
    }

    let detail = format!(
        "{} complexes/derivations, {} comodules, {} algebras, {} page histories{}",
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        if failures.is_empty() { String::new() } else { format!("; failures: {}", failures.join("; ")) }
    );
    Ok((ok, detail))
}

trait OkOrDefault {
    fn ok_or_default(self) -> Result<(), String>;
}

impl OkOrDefault for Option<()> {
    fn ok_or_default(self) -> Result<(), String> {
        self.ok_or_else(|| "check failed".to_string())
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "case classification", criterion_1),
        (2, "V(0)_*K and V(1)_*K from the long exact sequences", criterion_2),
        (3, "Tor of E(x) and P(y) by bar complex and minimal resolution", criterion_3),
        (4, "Tor over (HF_p)_*K vanishes in total degrees 1..2p, case 1", criterion_4),
        (5, "case-4 explicit resolution", criterion_5),
        (6, "V(0)_*THH(K; HZ_p) spectral sequence, all cases", criterion_6),
        (7, "Bökstedt E^p in case 2", criterion_7),
        (8, "comodule primitives", criterion_8),
        (9, "case-1 DGA and the relations of Ω^∞", criterion_9),
        (10, "case-2 collapse by total dimension", criterion_10),
        (11, "product formulas for F and G", criterion_11),
        (12, "structural property suite", criterion_12),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let (pass, detail) = match f() {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {n:>2} {} {name} ({secs:.2}s): {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
