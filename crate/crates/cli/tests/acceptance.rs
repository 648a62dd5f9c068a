//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Three criteria compare against printed values that exact arithmetic
//! contradicts. They are computed in full and reported as FAIL; the run only
//! exits nonzero when some other criterion fails, or when one of those three
//! fails for a reason other than the known discrepancy.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wallach_core::census::{self, eval_g, g_matches_q, SOTriple};
use wallach_core::einstein::{self, closed_forms_t_family, residual, solve, t_family_params};
use wallach_core::flow::{self, StabilityClass};
use wallach_core::omega::classify_region;
use wallach_core::wallach::{
    catalog_space, homothetic, AParams, GWSpace, LineParams, MetricTriple, EXPECTED_REGIONS,
};
use wallach_core::{Number, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

struct Verdict {
    pass: bool,
    detail: String,
    /// The failure is exactly the documented discrepancy.
    known: bool,
}

fn ok(detail: impl Into<String>) -> Verdict {
    Verdict { pass: true, detail: detail.into(), known: false }
}

fn bad(detail: impl Into<String>) -> Verdict {
    Verdict { pass: false, detail: detail.into(), known: false }
}

fn check(cond: bool, detail: String) -> Verdict {
    if cond {
        ok(detail)
    } else {
        bad(detail)
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    let took = start.elapsed();
    v.detail = format!("{} [{:.2?}, limit {:?}]", v.detail, took, limit);
    if took > limit {
        v.pass = false;
        v.known = false;
    }
    v
}

fn space(a: [(i64, i64); 3]) -> GWSpace {
    GWSpace::from_params(AParams::from_ratios(a).unwrap())
}

fn triple(k: u64, l: u64, m: u64) -> SOTriple {
    SOTriple::new(k, l, m).unwrap()
}

fn tol() -> Rational {
    einstein::default_width()
}

// 1
fn small_triple_table() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_wallach"))
        .args(["census", "--table3", "--format", "csv"])
        .output()
        .expect("binary runs");
    if !out.status.success() {
        return bad(format!("exit status {}", out.status));
    }
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (status, region, expected) = (col("status"), col("region"), col("expected"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| r[status] != "PASS")
        .map(|r| format!("({},{},{}) printed {} computed {}", r[0], r[1], r[2], r[expected], r[region]))
        .collect();
    let detail = format!("{} rows, {} PASS; mismatches: {:?}", rows.len(), rows.len() - failed.len(), failed);
    if rows.len() == 45 && failed.is_empty() {
        return ok(detail);
    }
    // the one known mismatch: G(5,5,4) = 0, so the triple lies on the surface
    let known = rows.len() == 45
        && failed == ["(5,5,4) printed O3 computed Omega"]
        && eval_g(&triple(5, 5, 4)).is_zero();
    Verdict { pass: false, detail, known }
}

// 2
fn catalog_regions() -> Verdict {
    let mut samples: Vec<(u32, LineParams)> = Vec::new();
    for line in 2..=3 {
        for (k, l, m) in [(1, 1, 1), (3, 2, 1), (7, 5, 4)] {
            samples.push((line, LineParams::Klm(k, l, m)));
        }
    }
    for l in [2, 3, 6] {
        samples.push((4, LineParams::L(l)));
    }
    for l in [4, 5, 9] {
        samples.push((5, LineParams::L(l)));
    }
    for line in 6..=15 {
        samples.push((line, LineParams::None));
    }
    let mut wrong_lines = std::collections::BTreeSet::new();
    let mut notes = Vec::new();
    for (line, p) in samples {
        let s = match catalog_space(line, p.clone()) {
            Ok(s) => s,
            Err(e) => return bad(format!("line {line} {p:?}: {e}")),
        };
        let got = match classify_region(&s.params) {
            Ok(l) => l.region,
            Err(e) => return bad(format!("line {line} {p:?}: {e}")),
        };
        let want = EXPECTED_REGIONS[line as usize - 1].unwrap();
        if got != want {
            wrong_lines.insert(line);
            notes.push(format!("line {line} {p:?} printed {want} computed {got}"));
        }
    }
    let detail = format!("{} mismatches: {:?}", notes.len(), notes);
    if wrong_lines.is_empty() {
        return ok(detail);
    }
    // lines 4 and 5 carry each other's labels: exact signs give O3 and O1
    let swapped = wrong_lines.iter().copied().collect::<Vec<_>>() == [4, 5]
        && notes.iter().all(|n| {
            (n.starts_with("line 4") && n.ends_with("computed O3"))
                || (n.starts_with("line 5") && n.ends_with("computed O1"))
        });
    Verdict { pass: false, detail, known: swapped }
}

fn classes_of(a: &AParams) -> Result<Vec<MetricTriple>, String> {
    let sols = solve(a, &tol()).map_err(|e| e.to_string())?;
    for s in &sols {
        if s.enclosure.iter().any(|iv| iv.width() > tol()) {
            return Err(format!("enclosure wider than 1e-30 at {:?}", s.metric));
        }
    }
    Ok(sols.into_iter().map(|s| s.metric).collect())
}

/// Each of `got` homothetic to exactly one of `want` and vice versa.
fn same_classes(got: &[MetricTriple], want: &[MetricTriple]) -> bool {
    got.len() == want.len()
        && want.iter().all(|w| got.iter().filter(|g| homothetic(g, w, &tol()).unwrap_or(false)).count() == 1)
}

// 3
fn metric_counts() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    let standard = [[1, 1, 1], [2, 1, 1], [1, 2, 1], [1, 1, 2]].map(|x| MetricTriple::from_ints(x).unwrap());
    match classes_of(&AParams::from_ratios([(1, 6); 3]).unwrap()) {
        Ok(got) => {
            let same = same_classes(&got, &standard);
            // decimal agreement of the x3 = 1 normalization
            let close = got.iter().all(|g| {
                let v = g.to_f64();
                standard.iter().any(|s| {
                    let w = s.to_f64();
                    (0..3).all(|i| (v[i] - w[i] / w[2]).abs() < 1e-12)
                })
            });
            pass &= same && close;
            notes.push(format!("1/6: {} classes, set match {same}", got.len()));
        }
        Err(e) => {
            pass = false;
            notes.push(e);
        }
    }
    let cases: [(&str, Result<AParams, String>, usize); 4] = [
        ("1/4", Ok(AParams::from_ratios([(1, 4); 3]).unwrap()), 1),
        ("SO(10,10,2)", census::so_space(&triple(10, 10, 2)).map(|s| s.params).map_err(|e| e.to_string()), 2),
        ("SO(9,9,9)", census::so_space(&triple(9, 9, 9)).map(|s| s.params).map_err(|e| e.to_string()), 4),
        ("SO(5,5,4)", census::so_space(&triple(5, 5, 4)).map(|s| s.params).map_err(|e| e.to_string()), 3),
    ];
    for (name, a, want) in cases {
        match a.and_then(|a| classes_of(&a)) {
            Ok(got) => {
                pass &= got.len() == want;
                notes.push(format!("{name}: {} classes (want {want})", got.len()));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("{name}: {e}"));
            }
        }
    }
    check(pass, notes.join("; "))
}

// 4
fn t_family() -> Verdict {
    for t in 2..=10u64 {
        let forms = closed_forms_t_family(t).unwrap();
        let a = t_family_params(t).unwrap();
        for x in &forms {
            let (e1, e2) = residual(&a, x);
            let zero = |n: &Number| n.is_exact() && n.signum() == Some(0);
            if !zero(&e1) || !zero(&e2) {
                return bad(format!("t = {t}: residual ({e1}, {e2}) at {x:?}"));
            }
        }
        match classes_of(&a) {
            Ok(got) if same_classes(&got, &forms) => {}
            Ok(got) => return bad(format!("t = {t}: solver found {got:?}")),
            Err(e) => return bad(format!("t = {t}: {e}")),
        }
    }
    ok("t = 2..10: exact zero residuals, solver recovers the three classes")
}

// 5
fn zero_family() -> Verdict {
    let bad_t: Vec<u64> = (1..=50u64).filter(|t| !eval_g(&triple(t * t + 1, t * t + 1, 2 * t)).is_zero()).collect();
    check(bad_t.is_empty(), format!("G(t^2+1, t^2+1, 2t) nonzero for t in {bad_t:?}"))
}

// 6
fn g_q_identity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for _ in 0..200 {
        let t = triple(rng.gen_range(1..=100), rng.gen_range(1..=100), rng.gen_range(1..=100));
        if !g_matches_q(&t, &eval_g(&t)) {
            failures.push(t.to_string());
        }
    }
    check(failures.is_empty(), format!("200 triples, failures {failures:?}"))
}

// 7
fn stability_classes() -> Verdict {
    use StabilityClass::*;
    let cases = [
        ("1/6", space([(1, 6); 3]), vec![UnstableNode, Saddle, Saddle, Saddle]),
        ("7/15", space([(7, 15); 3]), vec![StableNode, Saddle, Saddle, Saddle]),
        ("(1/6,1/4,1/3)", space([(1, 6), (1, 4), (1, 3)]), vec![Saddle, Saddle]),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, s, want) in cases {
        match flow::equilibria(&s) {
            Ok(reps) => {
                let mut got: Vec<_> = reps.iter().map(|r| r.class).collect();
                got.sort();
                let mut want = want;
                want.sort();
                let min = reps.iter().map(|r| r.eigenvalues.min_modulus()).fold(f64::INFINITY, f64::min);
                pass &= got == want && min > 1e-6;
                notes.push(format!("{name}: {got:?}, min |eigenvalue| {min:.3e}"));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("{name}: {e}"));
            }
        }
    }
    check(pass, notes.join("; "))
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    q(rng.gen_range(lo * den + 1..hi * den), den)
}

fn eq1(a: &[Rational; 3], x: &[Rational; 3]) -> [Rational; 2] {
    let [a1, a2, a3] = a;
    let [x1, x2, x3] = x;
    let two = q(2, 1);
    [
        (a2 + a3) * (a1 * x2 * x2 + a1 * x3 * x3 - x2 * x3) + (a2 * x2 + a3 * x3) * x1
            - (a1 * a2 + a1 * a3 + &two * a2 * a3) * x1 * x1,
        (a1 + a3) * (a2 * x1 * x1 + a2 * x3 * x3 - x1 * x3) + (a1 * x1 + a3 * x3) * x2
            - (a1 * a2 + &two * a1 * a3 + a2 * a3) * x2 * x2,
    ]
}

/// Ricci differences with denominators cleared, straight from the formula
/// `r_i = 1/(2 x_i) + (a_i/2)(x_i^2 - x_j^2 - x_k^2)/(x1 x2 x3)`.
fn cleared_oracle(a: &[Rational; 3], x: &[Rational; 3]) -> [Rational; 2] {
    let p = &x[0] * &x[1] * &x[2];
    let r = |i: usize, j: usize, k: usize| {
        Rational::one() / (q(2, 1) * &x[i])
            + &a[i] / q(2, 1) * (&x[i] * &x[i] - &x[j] * &x[j] - &x[k] * &x[k]) / &p
    };
    let (r1, r2, r3) = (r(0, 1, 2), r(1, 0, 2), r(2, 0, 1));
    let c = q(2, 1) * &p;
    [&c * (r1 - &r3), &c * (r2 - &r3)]
}

// 8
fn cross_validation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut agree = 0;
    let mut vanishing = 0;
    let mut disagreements = Vec::new();
    for i in 0..200 {
        let (a, x) = match i % 4 {
            // a diagonal point with the standard metric, a genuine zero
            0 => {
                let c = random_rational(&mut rng, 0, 1, 97) / q(2, 1);
                ([c.clone(), c.clone(), c], [q(3, 1), q(3, 1), q(3, 1)])
            }
            // first equation forced to vanish through a3, second generic
            1 => {
                let a1 = random_rational(&mut rng, 0, 1, 89) / q(2, 1);
                let a2 = random_rational(&mut rng, 0, 1, 83) / q(2, 1);
                let x = [0, 1, 2].map(|_| random_rational(&mut rng, 0, 3, 13));
                let e0 = eq1(&[a1.clone(), a2.clone(), Rational::zero()], &x)[0].clone();
                let e1 = eq1(&[a1.clone(), a2.clone(), Rational::one()], &x)[0].clone();
                let slope = &e1 - &e0;
                if slope.is_zero() {
                    continue;
                }
                let a3 = -e0 / slope;
                ([a1, a2, a3], x)
            }
            _ => {
                let a = [0, 1, 2].map(|_| random_rational(&mut rng, 0, 1, 101) / q(2, 1));
                let x = [0, 1, 2].map(|_| random_rational(&mut rng, 0, 4, 17));
                (a, x)
            }
        };
        let lib = wallach_core::flow::ricci_differences_cleared(&a, &x);
        let oracle = cleared_oracle(&a, &x);
        let e = eq1(&a, &x);
        let cleared_zero = lib.iter().all(Zero::is_zero);
        let eq_zero = e.iter().all(Zero::is_zero);
        if lib == oracle && cleared_zero == eq_zero {
            agree += 1;
            vanishing += eq_zero as usize;
        } else {
            disagreements.push(format!("{a:?} {x:?}"));
        }
    }
    let total = agree + disagreements.len();
    check(
        disagreements.is_empty() && vanishing > 0,
        format!("{agree}/{total} agree ({vanishing} exact zeros); disagreements {disagreements:?}"),
    )
}

// 9
fn volume_conservation() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for s in [space([(1, 6); 3]), space([(7, 15); 3]), space([(1, 6), (1, 4), (1, 3)])] {
        let reps = match flow::equilibria(&s) {
            Ok(r) => r,
            Err(e) => return bad(e.to_string()),
        };
        for r in reps {
            let x = r.metric.to_f64();
            let x0 = [x[0] * (1.0 + 1e-6), x[1] * (1.0 - 1e-6), x[2]];
            match flow::integrate_f64(&s, x0, 10.0, 1e-3) {
                Ok(tr) if tr.halted.is_none() => worst = worst.max(tr.max_volume_drift),
                Ok(tr) => return bad(format!("halted: {:?}", tr.halted)),
                Err(e) => return bad(e.to_string()),
            }
            runs += 1;
        }
    }
    check(worst < 1e-8, format!("{runs} trajectories from perturbed equilibria, worst drift {worst:.3e}"))
}

// 10
fn boundary_family() -> Verdict {
    let mut misaligned = Vec::new();
    for k in 2..=20u64 {
        let s = census::so_space_boundary(&triple(k, 1, 1)).unwrap();
        let got = match classes_of(&s.params) {
            Ok(g) => g,
            Err(e) => return bad(format!("k = {k}: {e}")),
        };
        let ki = k as i64;
        let printed = MetricTriple::from_ints([ki + 1, ki + 1, 2 * ki]).unwrap();
        let exact = MetricTriple::from_ints([2 * ki, ki + 1, ki + 1]).unwrap();
        if got.len() != 1 {
            return bad(format!("k = {k}: {} classes", got.len()));
        }
        if !homothetic(&got[0], &printed, &tol()).unwrap_or(false) {
            // certified, and a relabeling of the printed metric
            let (e1, e2) = residual(&s.params, &printed);
            let printed_solves = e1.signum() == Some(0) && e2.signum() == Some(0);
            if printed_solves || !homothetic(&got[0], &exact, &tol()).unwrap_or(false) {
                return bad(format!("k = {k}: unexpected metric {:?}", got[0]));
            }
            misaligned.push(k);
        }
    }
    if misaligned.is_empty() {
        return ok("k = 2..20: one class, proportional to (k+1, k+1, 2k)");
    }
    Verdict {
        pass: false,
        detail: format!(
            "one certified class for every k, but it is (2k, k+1, k+1) with a1 = 1/2 first; \
             index-aligned (k+1, k+1, 2k) leaves a nonzero residual for k in {misaligned:?}"
        ),
        known: misaligned.len() == 19,
    }
}

// 11
fn bound_check() -> Verdict {
    match census::bound_violations(40, 4) {
        Ok(v) => {
            let n = census::triples_up_to(40).iter().filter(|t| t.l() >= 2).count();
            check(v.is_empty(), format!("{n} triples, violations {v:?}"))
        }
        Err(e) => bad(e.to_string()),
    }
}

type Criterion = (&'static str, Box<dyn FnOnce() -> Verdict>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("small-triple region table", Box::new(|| timed(Duration::from_secs(60), small_triple_table))),
        ("catalog region table", Box::new(|| timed(Duration::from_secs(60), catalog_regions))),
        ("metric counts", Box::new(metric_counts)),
        ("t-family closed forms", Box::new(t_family)),
        ("G on the t-family", Box::new(|| timed(Duration::from_secs(10), zero_family))),
        ("G and Q scaling identity", Box::new(g_q_identity)),
        ("flow stability classes", Box::new(stability_classes)),
        ("Ricci cross-validation", Box::new(cross_validation)),
        ("flow volume conservation", Box::new(volume_conservation)),
        ("boundary family", Box::new(boundary_family)),
        ("sufficient-bound check", Box::new(|| timed(Duration::from_secs(300), bound_check))),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let v = f();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        let note = if !v.pass && v.known { " (known discrepancy with printed value)" } else { "" };
        println!("criterion {:>2} {tag} {name}{note}: {}", i + 1, v.detail);
        if !v.pass && !v.known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
