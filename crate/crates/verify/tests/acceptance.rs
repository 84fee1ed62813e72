//! Acceptance criteria 1 to 6, one report line each.
//!
//! Run with `cargo test -p cuboid-verify --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use cuboid_core::cuboid::{build_g, lemma_noadmissible_report, verify_identity, DoubleResultant};
use cuboid_core::poly::{quadratic_norm_resultant, sylvester_resultant};
use cuboid_core::{CheckStatus, CurvePoint, IdentityName, MultiPoly, Rational, Var};
use cuboid_verify::{run_all, search, sweep, Config};
use rand::{rngs::StdRng, Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    if elapsed > limit {
        return Err(format!("{} took {:.1?}, limit {:?}", what, elapsed, limit));
    }
    Ok(elapsed)
}

fn identity_suite() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut unit = None;
    for name in IdentityName::ALL {
        let check = verify_identity(name);
        if check.status != CheckStatus::Pass {
            failed.push(name.as_str());
        }
        if name == IdentityName::ResultantIsGSquared {
            unit = check.witness.split(';').next().map(str::to_string);
        }
    }
    let elapsed = within(start, Duration::from_secs(60), "identity suite")?;
    if !failed.is_empty() {
        return Err(format!("failing identities: {}", failed.join(", ")));
    }
    let unit = unit.unwrap_or_default();
    if unit != "unit = 1" {
        return Err(format!("double resultant not equal to G^2 on the nose: {}", unit));
    }
    Ok(format!("10/10 identities exact, double resultant {} ({:.2?})", unit, elapsed))
}

fn transcript_reproduction() -> Outcome {
    let start = Instant::now();
    let found = search(1000, 1).map_err(|e| e.to_string())?;
    let elapsed = within(start, Duration::from_secs(120), "search at height 1000")?;
    let pt = |t: i64, w: i64| CurvePoint::affine(Rational::from(t), Rational::from(w));
    let expected = vec![CurvePoint::Infinity, pt(-1, 0), pt(0, -1), pt(0, 1), pt(1, -8), pt(1, 8)];
    if found != expected {
        return Err(format!("found {:?}", found));
    }
    Ok(format!("height 1000 gives exactly the 6 transcript points, single thread ({:.2?})", elapsed))
}

fn lemma_mechanization() -> Outcome {
    let report = lemma_noadmissible_report();
    if report.status != CheckStatus::Pass {
        return Err(report.witness);
    }
    let needed = [
        "tau = infinity: U -> 2, s in {1}",
        "tau = -1: U = -32/16 = -2",
        "tau = 0: pole, numerator = 4, s in {}",
        "tau = 1: pole, numerator = 128, s in {}",
        "only admissible s is 1",
    ];
    for fragment in needed {
        if !report.witness.contains(fragment) {
            return Err(format!("missing {:?} in {}", fragment, report.witness));
        }
    }
    Ok("U(-1) = -2, pole numerators 4 and 128, limit 2, only positive s is 1".to_string())
}

fn theorem_sweep() -> Outcome {
    let start = Instant::now();
    let report = sweep(30, 4).map_err(|e| e.to_string())?;
    let elapsed = within(start, Duration::from_secs(120), "sweep to 30")?;
    if !report.violations.is_empty() {
        return Err(format!("violations: {:?}", report.violations));
    }
    let control = &report.control_case;
    if !control.ps_roots.contains(&Rational::from(-1)) {
        return Err(format!("control roots {:?} lack -1", control.ps_roots));
    }
    if control.quotient.is_none() || !control.normalized_factor_divides || !control.ok() {
        return Err("even quadratic factor does not divide in the control case".to_string());
    }
    Ok(format!(
        "{} pairs, 0 violations; control finds -1 and t^2 + 1 divides Q_{{1,1}} (4 threads, {:.2?})",
        report.pairs_checked, elapsed
    ))
}

fn random_poly(rng: &mut StdRng, aux: &[Var]) -> MultiPoly {
    let deg = rng.gen_range(1..=5u32);
    let mut f = MultiPoly::var(Var::S).pow(deg);
    for e in 0..deg {
        let mut mono = MultiPoly::var(Var::S).pow(e).scale(&Rational::from(rng.gen_range(-9i64..=9)));
        for &a in aux {
            mono = &mono * &MultiPoly::var(a).pow(rng.gen_range(0..=2u32));
        }
        f = &f + &mono;
    }
    f.scale(&Rational::from(rng.gen_range(1i64..=9)))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let quad = MultiPoly::parse("s^2 - U*s + 1").unwrap();
    let trace = MultiPoly::var(Var::U);
    let aux = [Var::X, Var::V];
    for i in 0..50 {
        let n_aux = rng.gen_range(0..=2usize);
        let f = random_poly(&mut rng, &aux[..n_aux]);
        let norm = quadratic_norm_resultant(&f, Var::S, &trace).map_err(|e| e.to_string())?;
        let syl = sylvester_resultant(&quad, &f, Var::S).map_err(|e| e.to_string())?;
        if norm != syl {
            return Err(format!("instance {} disagrees: f = {}", i, f));
        }
    }
    let r = DoubleResultant::compute().map_err(|e| e.to_string())?;
    if !r.routes_agree() {
        return Err("elimination stages disagree between the two routes".to_string());
    }
    if r.sylvester_stage2 != build_g().pow(2) {
        return Err("sylvester route does not give G^2".to_string());
    }
    Ok("50 random instances and both elimination stages agree exactly".to_string())
}

fn determinism() -> Outcome {
    let config = |threads| Config { height: 200, sweep_bound: 12, threads };
    let one = run_all(&config(1)).map_err(|e| e.to_string())?;
    let four = run_all(&config(4)).map_err(|e| e.to_string())?;
    let again = run_all(&config(4)).map_err(|e| e.to_string())?;
    let text = one.to_json_without_timing();
    if text != four.to_json_without_timing() || text != again.to_json_without_timing() {
        return Err("certificates differ between thread counts".to_string());
    }
    if !one.passed() {
        return Err(format!("certificate status {}", one.status));
    }
    Ok(format!("threads 1 and 4 give byte-identical certificates ({} bytes without timing)", text.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 6] = [
        ("identity suite", identity_suite),
        ("transcript reproduction", transcript_reproduction),
        ("parameter case analysis", lemma_mechanization),
        ("root sweep", theorem_sweep),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {}: PASS - {}", i + 1, name, detail),
            Err(detail) => {
                failures += 1;
                println!("criterion {} {}: FAIL - {}", i + 1, name, detail);
            }
        }
    }
    assert_eq!(failures, 0, "{} acceptance criteria failed", failures);
}
