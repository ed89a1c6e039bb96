use n2vx::coset::{
    resolve_antiks, resolve_ks, verify_ks, verify_ks_irreducible, KsVariant, SpeciesAssignment,
};
use n2vx::affine::Sl2;
use n2vx::free_field::Species;
use n2vx::rational::{q, qf, HalfInt};

/// `τ⁺ = ψ⁺ ⊗ f(−1)`, `τ⁻ = 2/(m+2) ψ⁻ ⊗ e(−1)`, `ν + ½∂j`.
fn resolved() -> KsVariant {
    KsVariant { tau_plus: (Species::Plus, Sl2::F), tau_minus: (Species::Minus, Sl2::E), tau_minus_sign: 1, nu_shift: qf(1, 2) }
}

#[test]
fn printed_species_fail_and_one_variant_survives() {
    let m = q(1);
    for a in [SpeciesAssignment::AsPrinted, SpeciesAssignment::SpeciesSwapped] {
        let r = verify_ks(&m, HalfInt::int(1), &KsVariant::from_assignment(a)).unwrap();
        assert!(!r.passed(), "{a:?}");
    }
    let res = resolve_ks(&m, HalfInt::from_twice(3)).unwrap();
    assert_eq!(res.c, q(1));
    let passing = res.passing();
    assert_eq!(passing.len(), 1);
    assert_eq!(*passing[0], resolved());
}

#[test]
fn resolved_variant_at_other_levels() {
    let v = resolved();
    for m in [q(3), qf(2, 3), qf(-4, 3)] {
        let r = verify_ks(&m, HalfInt::int(1), &v).unwrap();
        assert!(r.passed(), "m = {m}: {:?}", r.sweep.failure);
    }
}

#[test]
fn antiks_needs_the_opposite_sign_of_y() {
    let reports = resolve_antiks(&q(2), HalfInt::int(1)).unwrap();
    assert!(!reports[0].passed());
    assert!(reports[1].passed());
    assert_eq!(reports[1].y_sign, -1);
}

#[test]
fn resolved_variant_on_the_irreducible_quotient() {
    let v = resolved();
    let r = verify_ks_irreducible(&q(1), HalfInt::int(2), &v).unwrap();
    assert!(r.passed(), "{:?}", r.sweep.failure);
    let printed = KsVariant::from_assignment(SpeciesAssignment::AsPrinted);
    assert!(!verify_ks_irreducible(&q(1), HalfInt::int(1), &printed).unwrap().passed());
}
