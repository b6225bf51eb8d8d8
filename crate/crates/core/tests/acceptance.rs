use std::io::Write;
use std::time::{Duration, Instant};

use toric4::charpair::{CharacteristicPair, EdgeVectors, NormalizedPair};
use toric4::cohomology::{cup_matrix_smooth, cup_triangle, groups_over_z};
use toric4::intlinalg::{format_rational, is_nonzero_rational_square, rat_int, RatMatrix};
use toric4::morphisms::{contract_keep, induced_substitution, rescale, solve_lifting, LiftResult};
use toric4::srengine::{
    build_deg4_quotient, deg2_equivalent, gram_matrix_natural, oracle_cup_matrix_smooth, reduce_to_generator,
    Deg2Class, Deg4Class,
};
use toric4::sweep::{generate_cases, run_batch, Case, Property};

const SEED: u64 = 20240917;

fn pair(v: &[(i64, i64)]) -> CharacteristicPair {
    CharacteristicPair::from_pairs(v).unwrap()
}

/// Prints one status line and fails the test on `Err`.
fn report(name: &str, started: Instant, limit: Option<Duration>, outcome: Result<String, String>) {
    let elapsed = started.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
        (o, _) => o,
    };
    // written to the raw handle so the line shows up without --nocapture
    let line = match &outcome {
        Ok(detail) => format!("PASS {name} ({elapsed:.2?}): {detail}"),
        Err(detail) => format!("FAIL {name} ({elapsed:.2?}): {detail}"),
    };
    let _ = writeln!(std::io::stderr().lock(), "{line}");
    if let Err(detail) = outcome {
        panic!("{name}: {detail}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn cp2_groups_cup_and_oracle() {
    let t = Instant::now();
    let outcome = (|| {
        let cp2 = pair(&[(1, 1), (1, 0), (0, 1)]);
        let g = groups_over_z(&cp2);
        ensure(g.ranks() == [1, 0, 1, 0, 1], || format!("ranks {:?}", g.ranks()))?;
        ensure(g.degrees.iter().all(|d| d.torsion.is_empty()), || "unexpected torsion".into())?;
        let np = cp2.normalize_smooth(None).map_err(|e| e.to_string())?;
        let cup = cup_matrix_smooth(&np).map_err(|e| e.to_string())?;
        ensure(cup.to_i128_rows() == Some(vec![vec![1]]), || format!("cup {cup}"))?;
        let oracle = oracle_cup_matrix_smooth(&np.pair).map_err(|e| e.to_string())?;
        ensure(oracle == RatMatrix::from_int_rows(&[vec![1]]), || format!("oracle {:?}", oracle.to_rows()))?;
        Ok("ranks (1,0,1,0,1), cup (1), oracle (1)".to_string())
    })();
    report("cp2_groups_cup_and_oracle", t, Some(Duration::from_millis(100)), outcome);
}

#[test]
fn smooth_oracle_sweep() {
    let t = Instant::now();
    let cases = generate_cases(Property::OracleAgreement, SEED, 200);
    let outcome = (|| {
        for (idx, case) in cases.iter().enumerate() {
            let p = case.pair();
            let n = p.n();
            ensure((1..=6).contains(&n), || format!("case {idx}: n = {n}"))?;
            ensure(p.vectors().iter().all(|v| v.a.abs() <= 9 && v.b.abs() <= 9), || format!("case {idx}: entry bound"))?;
            let oracle = oracle_cup_matrix_smooth(p).map_err(|e| format!("case {idx}: {e}"))?;
            for i in 1..=n {
                for j in 1..=n {
                    let (lo, hi) = (i.min(j), i.max(j));
                    let want = rat_int(p.vector(lo).a as i128 * p.vector(hi).b as i128);
                    ensure(*oracle.get(i - 1, j - 1) == want, || {
                        format!("case {idx} {:?}: entry ({i},{j}) = {}", p.vectors(), format_rational(oracle.get(i - 1, j - 1)))
                    })?;
                }
            }
        }
        Ok(format!("{} smooth pairs, oracle = (a_i b_j) exactly", cases.len()))
    })();
    report("smooth_oracle_sweep", t, Some(Duration::from_secs(10)), outcome);
}

#[test]
fn s2_times_s2() {
    let t = Instant::now();
    let outcome = (|| {
        let sq = pair(&[(1, 0), (0, 1), (1, 0), (0, 1)]);
        let np = sq.normalize_smooth(None).map_err(|e| e.to_string())?;
        let cup = cup_matrix_smooth(&np).map_err(|e| e.to_string())?;
        ensure(cup.to_i128_rows() == Some(vec![vec![0, 1], vec![1, 0]]), || format!("cup {cup}"))?;
        ensure(groups_over_z(&sq).degree(3).is_zero(), || "H^3 not trivial".into())?;
        Ok("cup [[0,1],[1,0]], H^3 = 0".to_string())
    })();
    report("s2_times_s2", t, None, outcome);
}

#[test]
fn contraction_without_lifting() {
    let t = Instant::now();
    let outcome = (|| {
        let p = pair(&[(2, 1), (-3, -2), (1, 0), (0, 1)]);
        let cp = contract_keep(&p, 2).map_err(|e| e.to_string())?;
        ensure(cp.edge_map.source_size() == 4 && cp.edge_map.target_size() == 3, || "shape".into())?;
        match solve_lifting(&cp).map_err(|e| e.to_string())? {
            LiftResult::NoLifting { column: 1, reason } => Ok(reason),
            other => Err(format!("unexpected {other:?}")),
        }
    })();
    report("contraction_without_lifting", t, None, outcome);
}

#[test]
fn rescaling_images() {
    let t = Instant::now();
    let outcome = (|| {
        let p = pair(&[(2, 3), (1, 0), (0, 1)]);
        let (_, l) = rescale(&p, 1).map_err(|e| e.to_string())?;
        let s = induced_substitution(&l);
        let x1 = s.apply_deg2(&Deg2Class::generator(3, 1));
        let want1 = Deg2Class::from_ints(&[6, 0, 0]);
        ensure(deg2_equivalent(p.vectors(), &x1, &want1), || format!("[x1] -> {x1}"))?;
        let q = build_deg4_quotient(&p).map_err(|e| e.to_string())?;
        let x23 = s.apply_deg4(&Deg4Class::monomial(3, 2, 3));
        let want23 = Deg4Class::monomial(3, 2, 3).scale(&rat_int(6));
        ensure(reduce_to_generator(&q, &x23) == reduce_to_generator(&q, &want23), || format!("[x2x3] -> {x23}"))?;
        Ok(format!("[x1] -> [{x1}], [x2x3] -> [{x23}]"))
    })();
    report("rescaling_images", t, None, outcome);
}

#[test]
fn torsion_triangle_square_law() {
    let t = Instant::now();
    let outcome = (|| {
        let p = pair(&[(1, 2), (1, 0), (-1, 2)]);
        let g = groups_over_z(&p);
        ensure(g.k == 2 && g.degree(3).torsion == vec![2], || format!("k = {}, H^3 {:?}", g.k, g.degree(3)))?;
        let np = NormalizedPair::from_half_form(p.clone()).map_err(|e| e.to_string())?;
        let tc = cup_triangle(&np).map_err(|e| e.to_string())?;
        ensure(tc.k == 2 && tc.c == 4, || format!("k = {}, c = {}", tc.k, tc.c))?;
        let (gram, _) = gram_matrix_natural(&p).map_err(|e| e.to_string())?;
        let gv = gram.get(0, 0).clone();
        let ratio = rat_int(tc.c) / &gv;
        // one global sign is free for this generator
        ensure(is_nonzero_rational_square(&ratio) || is_nonzero_rational_square(&-ratio.clone()), || {
            format!(
                "c = 4, g = {}, c/g = {} is not a nonzero rational square up to sign (c*b_3/g = {})",
                format_rational(&gv),
                format_rational(&ratio),
                format_rational(&(&ratio * rat_int(p.vector(3).b as i128)))
            )
        })?;
        Ok(format!("k = 2, H^3 = Z/2, c = 4, c/g = {}", format_rational(&ratio)))
    })();
    report("torsion_triangle_square_law", t, Some(Duration::from_millis(100)), outcome);
}

fn batch_outcome(property: Property, count: usize, what: &str) -> Result<String, String> {
    let r = run_batch(property, SEED, count);
    match r.failures.first() {
        None => Ok(format!("{}/{} {what}", r.passed(), r.cases)),
        Some(f) => Err(format!(
            "{} of {} failed; first #{} {}: {}",
            r.failures.len(),
            r.cases,
            f.index,
            f.case.to_json(),
            f.message
        )),
    }
}

#[test]
fn triangle_integrality_fuzz() {
    let t = Instant::now();
    let outcome = batch_outcome(Property::TriangleIntegrality, 500, "half triangles with k^2 | b1 b3 (a1 b3 - a3 b1)");
    report("triangle_integrality_fuzz", t, None, outcome);
}

#[test]
fn pid_congruence_fuzz() {
    let t = Instant::now();
    let outcome = batch_outcome(Property::CongruenceLiteral, 100, "half pairs with matching rank, signature, det class");
    report("pid_congruence_fuzz", t, None, outcome);
}

#[test]
fn shear_equivariance() {
    let t = Instant::now();
    let cases = generate_cases(Property::Equivariance, SEED, 100);
    let in_range = cases.iter().all(|c| matches!(c, Case::Equivariance { s, eps, .. } if (-5..=5).contains(s) && eps.abs() == 1));
    let outcome = if in_range {
        batch_outcome(Property::Equivariance, 100, "(pair, s, eps) with M -> eps M")
    } else {
        Err("case parameters out of range".into())
    };
    report("shear_equivariance", t, None, outcome);
}

#[test]
fn coefficient_ring_torsion() {
    let t = Instant::now();
    let cases = generate_cases(Property::TorsionModM, SEED, 100);
    let in_range = cases.iter().all(|c| matches!(c, Case::Torsion { m, .. } if (2..=30).contains(m)));
    let outcome = if in_range {
        batch_outcome(Property::TorsionModM, 100, "(pair, m) with |H^3(Z/m)| = gcd(k, m)")
    } else {
        Err("modulus out of range".into())
    };
    report("coefficient_ring_torsion", t, None, outcome);
}

#[test]
fn contraction_composition_law() {
    let t = Instant::now();
    let outcome = batch_outcome(Property::CompositionLaw, 50, "(pair, i < j) with equal substitutions");
    report("contraction_composition_law", t, None, outcome);
}
