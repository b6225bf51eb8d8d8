use toric4::charpair::{CharacteristicPair, EdgeVectors, NormalizedPair};
use toric4::cohomology::{cup_matrix_pid, cup_triangle, RingSpec};
use toric4::intlinalg::{is_nonzero_rational_square, rat, rat_int};
use toric4::srengine::{congruence_invariants, gram_matrix_natural};
use toric4::sweep::{run_batch, Property};

#[test]
fn scaled_congruence_holds_on_half_pairs() {
    let r = run_batch(Property::CongruenceScaled, 99, 400);
    assert!(r.all_passed(), "{:?}", r.failures.first());
}

#[test]
fn scaled_square_law_holds_on_half_triangles() {
    let r = run_batch(Property::TriangleSquareScaled, 99, 500);
    assert!(r.all_passed(), "{:?}", r.failures.first());
}

#[test]
fn unscaled_pairing_differs_by_last_b() {
    // over Q, y_1^2 = (1/2) y_2 y_3 here while the closed form gives u^2 = 4 v
    let p = CharacteristicPair::from_pairs(&[(1, 2), (1, 0), (-1, 2)]).unwrap();
    let (g, _) = gram_matrix_natural(&p).unwrap();
    assert_eq!(*g.get(0, 0), rat(1, 2));
    let c = cup_triangle(&NormalizedPair::from_half_form(p.clone()).unwrap()).unwrap().c;
    let ratio = rat_int(c) / g.get(0, 0);
    assert!(!is_nonzero_rational_square(&ratio) && !is_nonzero_rational_square(&-ratio.clone()));
    assert!(is_nonzero_rational_square(&(ratio * rat_int(p.vector(3).b as i128))));
}

#[test]
fn unscaled_congruence_counterexample() {
    // b_5 = 3 and n = 3, so det(M) and det(G) differ by a non-square factor 3
    let p = CharacteristicPair::from_pairs(&[(5, 2), (-7, -3), (-3, -5), (1, 0), (7, 3)]).unwrap();
    let m = cup_matrix_pid(&NormalizedPair::from_half_form(p.clone()).unwrap(), RingSpec::Rationals).unwrap();
    let m = m.to_rational().unwrap();
    let (g, _) = gram_matrix_natural(&p).unwrap();
    let ig = congruence_invariants(&g);
    assert_ne!(congruence_invariants(&m), ig);
    assert_ne!(congruence_invariants(&m.scaled(&rat_int(-1))), ig);
    assert_eq!(congruence_invariants(&m.scaled(&rat_int(p.vector(5).b as i128))), ig);
}
