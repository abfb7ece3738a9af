//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p interweight --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use interweight::krawtchouk::{
    eval_at_lifts, genfun_coeff, krawtchouk_at_inverse_k1, lift_polynomial_is_nonzero, poly_direct, poly_recursive,
};
use interweight::linalg::{commutes, diag_lift, kron_lift, Axis, LiftedMatrix, Matrix, Rational};
use interweight::oracle::*;
use interweight::quotient::{cell_sizes, validate_quotient};
use interweight::recursion::{
    build_table, build_table_from, completeness_holds, cross_check, cross_check_quotient, triples_at_level, weight_distribution,
    CrossCheckInput, TableKind,
};
use interweight::screen::{certify, sweep_ci, CertificateVerdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    check(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn example_one() -> Matrix {
    Matrix::from_integers(&[[0, 3], [1, 2]]).unwrap()
}

/// Equitable fixtures shared by several criteria.
fn fixtures() -> Vec<(&'static str, PartitionInstance)> {
    vec![
        ("C1={000,111}", PartitionInstance::from_set(3, &[0b000, 0b111]).unwrap()),
        ("parity H4", PartitionInstance::parity(4).unwrap()),
        ("singletons H2", PartitionInstance::singletons(2).unwrap()),
        ("singletons H3", PartitionInstance::singletons(3).unwrap()),
    ]
}

const GOLDEN: [((i64, i64, i64), &str); 11] = [
    ((0, 0, 0), "1"),
    ((0, 0, 1), "z"),
    ((0, 0, 2), "(z^2 - n)/2"),
    ((0, 1, 1), "y*z - x"),
    ((0, 0, 3), "(z^3 + (2-3*n)*z)/6"),
    ((0, 1, 2), "(y*z^2 - 2*x*z + (2-n)*y)/2"),
    ((1, 1, 1), "x*y*z - x^2 - y^2 - z^2 + 2*n"),
    ((0, 0, 4), "(z^4 + (8-6*n)*z^2 + (3*n^2-6*n))/24"),
    ((0, 1, 3), "(y*z^3 - 3*x*z^2 + (8-3*n)*y*z + (3*n-6)*x)/6"),
    ((0, 2, 2), "(y^2*z^2 - 4*x*y*z + 2*x^2 + (4-n)*y^2 + (4-n)*z^2 + (n^2-6*n))/4"),
    ((1, 1, 2), "(x*y*z^2 - 2*x^2*z - 2*y^2*z - z^3 + (6-n)*x*y + (5*n-6)*z)/2"),
];

fn golden_table() -> Outcome {
    let start = Instant::now();
    for ((a, b, c), expected) in GOLDEN {
        let got = poly_recursive(a, b, c).map_err(|e| e.to_string())?.render();
        check(got == expected, || format!("P^{{{a},{b},{c}}} rendered as {got}, expected {expected}"))?;
    }
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("11 polynomials match in {took:.2?}"))
}

fn three_methods() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for level in 0..=6 {
        for (a, b, c) in triples_at_level(level) {
            let (a, b, c) = (a as i64, b as i64, c as i64);
            let r = poly_recursive(a, b, c).unwrap();
            check(r == poly_direct(a, b, c).unwrap(), || format!("direct differs at ({a},{b},{c})"))?;
            check(r == genfun_coeff(a, b, c).unwrap(), || format!("generating function differs at ({a},{b},{c})"))?;
            count += 1;
        }
    }
    check(count == 84, || format!("{count} triples"))?;
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("{count} triples agree in {took:.2?}"))
}

fn example_one_lifts() -> Outcome {
    let d: [[i64; 8]; 8] = std::array::from_fn(|r| std::array::from_fn(|c| if r == c { if r < 4 { 2 } else { 6 } } else { 0 }));
    let s1 = [
        [0, 0, 0, 0, 3, 0, 0, 0],
        [0, 0, 0, 0, 0, 3, 0, 0],
        [0, 0, 0, 0, 0, 0, 3, 0],
        [0, 0, 0, 0, 0, 0, 0, 3],
        [1, 0, 0, 0, 2, 0, 0, 0],
        [0, 1, 0, 0, 0, 2, 0, 0],
        [0, 0, 1, 0, 0, 0, 2, 0],
        [0, 0, 0, 1, 0, 0, 0, 2],
    ];
    let s2 = [
        [0, 0, 3, 0, 0, 0, 0, 0],
        [0, 0, 0, 3, 0, 0, 0, 0],
        [1, 0, 2, 0, 0, 0, 0, 0],
        [0, 1, 0, 2, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 3, 0],
        [0, 0, 0, 0, 0, 0, 0, 3],
        [0, 0, 0, 0, 1, 0, 2, 0],
        [0, 0, 0, 0, 0, 1, 0, 2],
    ];
    let s3 = [
        [0, 3, 0, 0, 0, 0, 0, 0],
        [1, 2, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 3, 0, 0, 0, 0],
        [0, 0, 1, 2, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 3, 0, 0],
        [0, 0, 0, 0, 1, 2, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 3],
        [0, 0, 0, 0, 0, 0, 1, 2],
    ];
    let s = example_one();
    let lifts: Vec<(&str, LiftedMatrix)> = vec![
        ("S'", kron_lift(&s, Axis::First).unwrap()),
        ("S''", kron_lift(&s, Axis::Second).unwrap()),
        ("S'''", kron_lift(&s, Axis::Third).unwrap()),
        ("D'", diag_lift(&[rat(2), rat(6)]).unwrap()),
    ];
    for ((name, lift), printed) in lifts.iter().zip([s1, s2, s3, d]) {
        check(lift.materialize() == Matrix::from_integers(&printed).unwrap(), || format!("{name} differs from the printed matrix"))?;
    }
    // every pair commutes except D' with S'
    let mut table = Vec::new();
    for (i, (na, a)) in lifts.iter().enumerate() {
        for (nb, b) in &lifts[i + 1..] {
            let c = commutes(a, b).unwrap();
            let expected = !(*na == "S'" && *nb == "D'");
            check(c == expected, || format!("{na} and {nb}: commute = {c}, expected {expected}"))?;
            table.push(format!("{na}{nb}:{}", if c { "yes" } else { "no" }));
        }
    }
    Ok(format!("four 8x8 lifts match; commutation {}", table.join(" ")))
}

fn example_seven() -> Outcome {
    let start = Instant::now();
    let rows = vec![vec![0, 22, 0], vec![5, 6, 11], vec![0, 10, 12]];
    let cert = certify(&rows, 22, None);
    check(cert.verdict == CertificateVerdict::Nonexistent, || "certificate verdict is candidate".into())?;
    let v = cert.first_violation.clone().ok_or("no violation recorded")?;
    let q = validate_quotient(&rows, 22).unwrap();
    let table = build_table(&q, TableKind::Triangle, 22, None).unwrap();
    let entry = table.get((0, 8, 9)).unwrap()[(0, 0, 0)].clone();
    check(entry < rat(0), || format!("T^{{0,8,9}}_111 = {entry} is not negative"))?;
    let first_level = v.triple.0 + v.triple.1 + v.triple.2;
    check(first_level <= 17, || format!("first violation {v} lies beyond level 17"))?;
    for (w, m) in weight_distribution(&q).iter().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                let x = &m[(i, j)];
                check(x.is_integer() && *x >= rat(0), || format!("W^{w}[{i}][{j}] = {x}"))?;
            }
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("first violation {v}; T^{{0,8,9}}_111 = {entry}; weight distribution nonnegative integral; {took:.2?}"))
}

fn proposition_prefix() -> Outcome {
    let start = Instant::now();
    let report = sweep_ci(40, Some(1)).map_err(|e| e.to_string())?;
    let missing: Vec<String> = report.records.iter().filter(|r| r.witness.is_none()).map(|r| format!("n={} a={} c={}", r.n, r.a, r.c)).collect();
    check(missing.is_empty(), || format!("NO WITNESS FOUND for {}", missing.join("; ")))?;
    let took = within(start, Duration::from_secs(300))?;
    Ok(format!("{} candidates with n <= 40, all witnessed, single thread {took:.2?}", report.candidates()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut triples = 0;
    for (name, p) in fixtures() {
        let q = verify_equitable(&p).map_err(|w| format!("{name}: {w}"))?;
        let brute = brute_triangle(&p, false).unwrap();
        let rec = build_table(&q, TableKind::Triangle, q.n(), None).unwrap();
        check(brute == rec, || format!("{name}: brute force and recursion differ"))?;
        let sizes = cell_sizes(&q).unwrap();
        let s = q.to_matrix();
        for (t, v) in rec.iter() {
            let poly = poly_recursive(t.0 as i64, t.1 as i64, t.2 as i64).unwrap();
            let e = eval_at_lifts(&poly, &s, TableKind::Triangle, q.n() as i64, &sizes).unwrap();
            check(&e == v, || format!("{name}: polynomial at lifts differs at {t:?}"))?;
            triples += 1;
        }
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!("4 fixtures, {triples} triples agree three ways in {took:.2?}"))
}

fn strong_invariance() -> Outcome {
    let mut fx = fixtures();
    fx.push(("halves H2", PartitionInstance::from_cells(2, &[vec![0, 1], vec![2, 3]]).unwrap()));
    for (name, p) in &fx {
        let outcome = strong_invariance_check(p).unwrap();
        check(outcome == InvarianceOutcome::Invariant, || format!("{name}: {outcome:?}"))?;
    }
    Ok(format!("{} fixtures invariant within every cell", fx.len()))
}

fn vanishing() -> Outcome {
    let mut fx: Vec<_> = fixtures().into_iter().filter(|(_, p)| p.n() <= 3).collect();
    fx.push(("halves H2", PartitionInstance::from_cells(2, &[vec![0, 1], vec![2, 3]]).unwrap()));
    for (name, p) in &fx {
        let q = verify_equitable(p).unwrap();
        let (n, s) = (q.n(), q.to_matrix());
        let sizes = cell_sizes(&q).unwrap();
        let mut nonzero = 0;
        for (a, b, c) in triples_at_level(n + 1) {
            let poly = poly_recursive(a as i64, b as i64, c as i64).unwrap();
            let v = eval_at_lifts(&poly, &s, TableKind::Triangle, n as i64, &sizes).unwrap();
            check(v.is_zero(), || format!("{name}: P^{{{a},{b},{c}}} does not vanish on T^000"))?;
            if lift_polynomial_is_nonzero(&poly, &s, TableKind::Triangle, n as i64).unwrap() {
                nonzero += 1;
            }
        }
        check(nonzero > 0, || format!("{name}: every level-{} lift polynomial is the zero matrix", n + 1))?;
    }
    Ok(format!("{} fixtures vanish at level n+1 with nonzero lift polynomials", fx.len()))
}

fn krawtchouk_identity() -> Outcome {
    for r in 0..=5u32 {
        let p = poly_recursive(r as i64, 0, 0).unwrap();
        check(p.as_polynomial() == &krawtchouk_at_inverse_k1(r), || format!("P^{{{r},0,0}} is not K_{r}((n-x)/2)"))?;
    }
    Ok("P^{r,0,0}(x,y,z) = K_r((n-x)/2) for r = 0..5".into())
}

fn perfect_structures() -> Outcome {
    let s = Matrix::from_integers(&[[1, 1], [1, 1]]).unwrap();
    let c = PerfectStructure::from_integers(2, &[vec![2, 0], vec![2, 0], vec![0, 2], vec![0, 2]]).unwrap();
    let c2 = PerfectStructure::from_integers(2, &[vec![2, 0], vec![1, 1], vec![1, 1], vec![0, 2]]).unwrap();
    for (name, ps) in [("C", &c), ("C'", &c2)] {
        check(verify_perfect_structure(ps, &s).unwrap().is_ok(), || format!("{name} is not perfect"))?;
    }
    let t0 = ps_initial_triangle(&c);
    let t0b = ps_initial_triangle(&c2);
    check(t0.entries() == [16, 0, 0, 0, 0, 0, 0, 16].map(rat), || format!("T000(C) = {:?}", t0.entries()))?;
    check(t0b.entries() == [10, 2, 2, 2, 2, 2, 2, 10].map(rat), || format!("T000(C') = {:?}", t0b.entries()))?;
    for (name, init) in [("C", t0), ("C'", t0b)] {
        let table = build_table_from(&s, 2, TableKind::Triangle, 2, init).unwrap();
        let report = cross_check(&CrossCheckInput { s: &s, triangle: Some(&table), interweight: None, sizes: None }).unwrap();
        check(report.passed(), || format!("{name}: {:?}", report.mismatches))?;
    }
    let w = ps_vertex_interweight(&c, 0).unwrap();
    let w2 = ps_vertex_interweight(&c2, 0).unwrap();
    check(w[&(1, 0, 0)] != w2[&(1, 0, 0)], || "W_00^{1,0,0} coincide".into())?;
    Ok(format!("both perfect; W_00^(1,0,0) = {:?} vs {:?}", fmt(&w[&(1, 0, 0)]), fmt(&w2[&(1, 0, 0)])))
}

fn fmt(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn set_fixtures() -> Outcome {
    let a = [0b0000, 0b0001, 0b0010, 0b1111];
    let b = [0b0000, 0b0001, 0b0111, 0b1111];
    for x in [&a, &b] {
        let d = distance_distribution(x).unwrap();
        check(d == [1, 1, 2, 3, 3, 4], || format!("distances {d:?}"))?;
    }
    let ta = set_triangle_multiset(&a).unwrap();
    let tb = set_triangle_multiset(&b).unwrap();
    let expected_a = vec![(0, 1, 2), (0, 1, 2), (0, 1, 3), (0, 1, 3)];
    let expected_b = vec![(0, 1, 3), (0, 1, 3), (1, 1, 1), (1, 1, 2)];
    check(ta == expected_a && tb == expected_b, || {
        format!("distances match, but enumeration gives {ta:?} for {{0000,0001,0010,1111}} and {tb:?} for {{0000,0001,0111,1111}}; expected {expected_a:?} and {expected_b:?}")
    })?;
    Ok("distance and triangle multisets match".into())
}

fn structural_invariants() -> Outcome {
    let mut comparisons = 0;
    for (name, p) in fixtures() {
        let q = verify_equitable(&p).unwrap();
        let report = cross_check_quotient(&q, q.n()).unwrap();
        check(report.passed(), || format!("{name}: {:?}", report.mismatches.first()))?;
        comparisons += report.comparisons;
        let table = build_table(&q, TableKind::Triangle, q.n(), None).unwrap();
        check(completeness_holds(&table, &cell_sizes(&q).unwrap()), || format!("{name}: full sums differ from |Ci||Cj||Ck|"))?;
    }
    let q = validate_quotient(&[vec![0, 22, 0], vec![5, 6, 11], vec![0, 10, 12]], 22).unwrap();
    let report = cross_check_quotient(&q, 22).unwrap();
    check(report.passed(), || format!("Example 7 matrix: {:?}", report.mismatches.first()))?;
    comparisons += report.comparisons;
    Ok(format!("cross-check passed, {comparisons} comparisons; full sums hold on realizable fixtures"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("polynomial golden table", golden_table),
        ("three-method agreement", three_methods),
        ("lifts of the 2-cell example", example_one_lifts),
        ("nonexistence of the 22-cube matrix", example_seven),
        ("correlation-immunity sweep to n = 40", proposition_prefix),
        ("oracle and recursion agree", oracle_equivalence),
        ("strong distance invariance", strong_invariance),
        ("vanishing at level n+1", vanishing),
        ("classical Krawtchouk identity", krawtchouk_identity),
        ("perfect structures", perfect_structures),
        ("4-cube set fixtures", set_fixtures),
        ("structural invariants", structural_invariants),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
