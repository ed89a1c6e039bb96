use proptest::prelude::*;

use n2vx::affine::{casimir_apply, dense_act, enumerate_s, is_admissible, DenseTopLevel, Sl2};
use n2vx::classification::{casimir_witness_check, classify, enumerate_w, h_ir, on_curve, q_ir, ClassificationVerdict};
use n2vx::coset::{casimir_identity_check, casimir_scalar, ks_highest_weight};
use n2vx::free_field::{fermion_act, fermion_states, Lattice, LatticeState, Species};
use n2vx::linalg::SparseRationalMatrix;
use n2vx::n2::{self, N2Mode};
use n2vx::rational::{fmt_rational, parse_rational, q, qf, ExactRational, HalfInt};
use n2vx::verma::{HighestWeightN2, VermaModule};
use n2vx::LinComb;

fn small_rational() -> impl Strategy<Value = ExactRational> {
    (-24i64..=24, 1i64..=7).prop_map(|(n, d)| qf(n, d))
}

fn level_not_minus_two() -> impl Strategy<Value = ExactRational> {
    small_rational().prop_filter("m = -2 is excluded", |m| *m != q(-2))
}

fn admissible_level() -> impl Strategy<Value = ExactRational> {
    (-7i64..=7, 1i64..=3).prop_map(|(t, u)| qf(t, u)).prop_filter("admissible", is_admissible)
}

fn n2_mode(bound: i64) -> impl Strategy<Value = N2Mode> {
    prop::sample::select(n2::modes_within(HalfInt::int(bound)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(x in small_rational()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&x)).unwrap(), x);
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..5)) {
        let dense: Vec<Vec<ExactRational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let m = SparseRationalMatrix::from_dense(&dense);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), 4);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn bracket_preserves_charge_and_level(a in n2_mode(3), b in n2_mode(3)) {
        for (c, _) in n2::super_bracket(&a, &b).iter() {
            if *c != N2Mode::CENTRAL {
                prop_assert_eq!(c.charge(), a.charge() + b.charge());
                prop_assert_eq!(c.index, a.index + b.index);
            }
        }
    }

    #[test]
    fn gram_is_symmetric(h in small_rational(), qq in small_rational(), c in small_rational(), twice in 0i64..=3, charge in -1i64..=1) {
        let g = VermaModule::new(HighestWeightN2::new(h, qq, c)).gram_matrix(HalfInt::from_twice(twice), charge);
        prop_assert!(g.is_symmetric());
    }

    #[test]
    fn transport_round_trip(h in small_rational(), qq in small_rational(), m in level_not_minus_two()) {
        let m2 = &m + q(2);
        let gamma = casimir_scalar(&h, &qq, &m);
        let beta = -(&qq * &m2);
        prop_assert_eq!(ks_highest_weight(&gamma, &beta, &m).unwrap(), (h, qq));
    }

    #[test]
    fn parametrizations_agree(m in admissible_level()) {
        let w = enumerate_w(&m).unwrap();
        let n = w.iter().map(|e| e.r).max().unwrap();
        for e in &w {
            prop_assert_eq!(&e.h, &h_ir(e.r, e.i, &m));
            prop_assert_eq!(&e.q, &q_ir(e.r, e.i, &m));
            prop_assert!(e.j > q(0) && e.k > q(0) && &e.j + &e.k <= q(n + 1));
            prop_assert!(on_curve(&e.h, &e.q, &q(e.r), &m));
            prop_assert!(casimir_witness_check(&e.h, &e.q, &m, e.r));
        }
    }

    #[test]
    fn s_is_nonneg_integral_exactly_for_nonneg_integral_levels(m in admissible_level()) {
        let s = enumerate_s(&m).unwrap();
        let integral = s.iter().all(|x| x.is_integer() && *x >= q(0));
        prop_assert_eq!(integral, m.is_integer() && m >= q(0));
    }

    #[test]
    fn module_verdicts_carry_casimir_witnesses(h in small_rational(), qq in small_rational(), m in admissible_level()) {
        match classify(&h, &qq, &m) {
            ClassificationVerdict::InW(e) => prop_assert!(casimir_witness_check(&h, &qq, &m, e.r)),
            ClassificationVerdict::InD(rs) => {
                for r in rs {
                    let scalar = casimir_scalar(&h, &qq, &m);
                    prop_assert_eq!(scalar, &r * (&r + q(2)) / q(2));
                    prop_assert!(on_curve(&h, &qq, &r, &m));
                }
            }
            _ => {}
        }
    }

    #[test]
    fn fermion_car(i in -5i64..=5, j in -5i64..=5, si in any::<bool>(), sj in any::<bool>(), st in 0usize..14) {
        let sp = |b: bool| if b { Species::Plus } else { Species::Minus };
        let (a, b) = (sp(si), sp(sj));
        let (x, y) = (HalfInt::from_twice(2 * i + 1), HalfInt::from_twice(2 * j + 1));
        let states = fermion_states(HalfInt::int(2));
        let v = LinComb::basis(states[st % states.len()].clone());
        let ab = fermion_act(a, x, &fermion_act(b, y, &v).unwrap()).unwrap();
        let ba = fermion_act(b, y, &fermion_act(a, x, &v).unwrap()).unwrap();
        let expect = if a != b && x + y == HalfInt::ZERO { v.clone() } else { LinComb::zero() };
        prop_assert_eq!(ab.add(&ba), expect);
    }

    #[test]
    fn heisenberg_commutes_with_vertex_modes(n in -3i64..=3, i in -4i64..=3, k in -2i64..=2, l in -2i64..=2) {
        let lat = Lattice::default();
        let v = LinComb::basis(LatticeState::bare(l));
        let a_then = lat.lattice_vertex_mode(k, i, &lat.heisenberg_act(n, &v).unwrap()).unwrap();
        let then_a = lat.heisenberg_act(n, &lat.lattice_vertex_mode(k, i, &v).unwrap()).unwrap();
        let rhs = lat.lattice_vertex_mode(k, n + i, &v).unwrap().scaled(&q(k * lat.nu));
        prop_assert_eq!(then_a.sub(&a_then), rhs);
    }

    #[test]
    fn l0_weight_is_additive(n in -3i64..=3, parts in prop::collection::vec(1u32..=4, 0..4)) {
        let lat = Lattice::default();
        let bare = lat.l0_weight(&LatticeState::bare(n));
        let dressed = lat.l0_weight(&LatticeState::new(n, parts.clone()));
        prop_assert_eq!(dressed - &bare, q(parts.iter().map(|&p| p as i64).sum()));
        let shifted = lat.l0_weight(&LatticeState::bare(n + 1));
        prop_assert_eq!(shifted - bare, qf((2 * n + 1) * lat.nu, 2));
    }

    #[test]
    fn dense_casimir_commutes(r in small_rational(), s in small_rational(), i in -4i64..=4) {
        let top = DenseTopLevel::new(r.clone(), s, (-12, 12));
        let v = LinComb::basis(i);
        let omega_v = casimir_apply(&top, &v).unwrap();
        prop_assert_eq!(&omega_v, &v.scaled(&(&r * (&r + q(2)) / q(2))));
        for x in [Sl2::E, Sl2::H, Sl2::F] {
            let xv = dense_act(x, i, &top).unwrap();
            prop_assert_eq!(casimir_apply(&top, &xv).unwrap(), xv.scaled(&(&r * (&r + q(2)) / q(2))));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn casimir_identity_random(h in small_rational(), qq in small_rational(), half in any::<bool>()) {
        let m = if half { qf(1, 2) } else { q(1) };
        let r = casimir_identity_check(&h, &qq, &m, -1).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn representation_property_random(h in small_rational(), qq in small_rational(), c in small_rational()) {
        let module = VermaModule::new(HighestWeightN2::new(h, qq, c));
        let mut vectors = Vec::new();
        for twice in 0..=2 {
            for basis in module.pbw().weight_spaces(HalfInt::from_twice(twice)).into_values() {
                vectors.extend(basis.into_iter().map(LinComb::basis));
            }
        }
        let modes = n2::modes_within(HalfInt::int(1));
        prop_assert!(n2vx::pbw::first_bracket_violation(module.pbw(), &modes, &vectors).is_none());
    }
}
