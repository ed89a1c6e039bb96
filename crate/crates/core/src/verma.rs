//! Verma modules `M_{h,q,c}` over the N=2 algebra and their quotients.

use std::fmt;

use crate::error::Result;
use crate::linalg::SparseRationalMatrix;
use crate::n2::{self, N2Family, N2Mode, Parity};
use crate::pbw::{GradedQuotient, ModeAlgebra, Monomial, PbwModule, PbwVector, SubmoduleSpec};
use crate::rational::{fmt_rational, q, ExactRational, HalfInt};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HighestWeightN2 {
    pub h: ExactRational,
    pub q: ExactRational,
    pub c: ExactRational,
}

impl HighestWeightN2 {
    pub fn new(h: ExactRational, q: ExactRational, c: ExactRational) -> Self {
        HighestWeightN2 { h, q, c }
    }

    /// The vacuum weight `(0, 0, c)`.
    pub fn vacuum(c: ExactRational) -> Self {
        HighestWeightN2 { h: q(0), q: q(0), c }
    }
}

impl fmt::Debug for HighestWeightN2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(h={}, q={}, c={})", fmt_rational(&self.h), fmt_rational(&self.q), fmt_rational(&self.c))
    }
}

pub type PbwMonomial = Monomial<N2Mode>;
pub type VermaVector = PbwVector<N2Mode>;

/// The N=2 bracket together with the highest-weight data.
#[derive(Clone, Debug)]
pub struct N2HighestWeightAlgebra {
    pub hw: HighestWeightN2,
}

impl ModeAlgebra for N2HighestWeightAlgebra {
    type Mode = N2Mode;

    fn parity(&self, m: &N2Mode) -> Parity {
        n2::parity(m)
    }

    fn bracket(&self, a: &N2Mode, b: &N2Mode) -> n2::AlgebraElement {
        n2::super_bracket(a, b)
    }

    fn central_value(&self, m: &N2Mode) -> Option<ExactRational> {
        (m.family == N2Family::Central).then(|| self.hw.c.clone())
    }

    fn on_highest(&self, m: &N2Mode) -> Option<ExactRational> {
        if m.index.is_negative() {
            return None;
        }
        Some(match (m.family, m.index == HalfInt::ZERO) {
            (N2Family::L, true) => self.hw.h.clone(),
            (N2Family::T, true) => self.hw.q.clone(),
            (N2Family::Central, _) => self.hw.c.clone(),
            _ => q(0),
        })
    }

    fn level(&self, m: &N2Mode) -> HalfInt {
        -m.index
    }

    fn charge(&self, m: &N2Mode) -> i64 {
        m.charge()
    }

    fn adjoint(&self, m: &N2Mode) -> N2Mode {
        n2::adjoint(m)
    }

    fn creation_modes(&self, max_level: HalfInt) -> Vec<N2Mode> {
        let mut out: Vec<N2Mode> =
            n2::modes_within(max_level).into_iter().filter(|m| m.index.is_negative()).collect();
        out.sort();
        out
    }

    fn modes_within(&self, bound: HalfInt) -> Vec<N2Mode> {
        n2::modes_within(bound)
    }
}

/// `M_{h,q,c}` with a memoized action.
pub struct VermaModule {
    inner: PbwModule<N2HighestWeightAlgebra>,
}

impl VermaModule {
    pub fn new(hw: HighestWeightN2) -> Self {
        VermaModule { inner: PbwModule::new(N2HighestWeightAlgebra { hw }) }
    }

    pub fn hw(&self) -> &HighestWeightN2 {
        &self.inner.algebra().hw
    }

    pub fn pbw(&self) -> &PbwModule<N2HighestWeightAlgebra> {
        &self.inner
    }

    pub fn vacuum(&self) -> VermaVector {
        self.inner.vacuum()
    }

    pub fn monomial(&self, modes: &[N2Mode]) -> VermaVector {
        self.inner.apply_monomial(&Monomial(modes.to_vec()), &self.vacuum())
    }

    pub fn weight_space_basis(&self, level: HalfInt, charge: i64) -> Vec<PbwMonomial> {
        self.inner.basis(level, charge)
    }

    pub fn act(&self, mode: &N2Mode, v: &VermaVector) -> VermaVector {
        self.inner.act(mode, v)
    }

    pub fn act_element(&self, x: &n2::AlgebraElement, v: &VermaVector) -> VermaVector {
        self.inner.act_element(x, v)
    }

    pub fn gram_matrix(&self, level: HalfInt, charge: i64) -> SparseRationalMatrix {
        self.inner.gram_matrix(level, charge)
    }

    pub fn singular_vectors(&self, level: HalfInt, charge: i64) -> Vec<VermaVector> {
        self.inner.singular_vectors(level, charge)
    }

    /// `G±_{-1/2}|0,0,c⟩`, the generators of the vacuum submodule.
    pub fn vacuum_generators(&self) -> Vec<VermaVector> {
        vec![self.monomial(&[N2Mode::gp(-1)]), self.monomial(&[N2Mode::gm(-1)])]
    }

    pub fn quotient(&self, generators: QuotientBy, max_level: HalfInt) -> Result<GradedQuotient<'_, N2HighestWeightAlgebra>> {
        let spec = match generators {
            QuotientBy::Vectors(v) => SubmoduleSpec::Generated(v),
            QuotientBy::Radical => SubmoduleSpec::Radical,
        };
        GradedQuotient::new(&self.inner, spec, max_level)
    }

    /// The vacuum module `V_c`, truncated at `max_level`.
    pub fn vacuum_quotient(&self, max_level: HalfInt) -> Result<GradedQuotient<'_, N2HighestWeightAlgebra>> {
        self.quotient(QuotientBy::Vectors(self.vacuum_generators()), max_level)
    }

    pub fn display(&self, v: &VermaVector) -> String {
        v.display_with(|m| m.to_string())
    }
}

#[derive(Clone, Debug)]
pub enum QuotientBy {
    Vectors(Vec<VermaVector>),
    Radical,
}

pub fn weight_space_basis(level: HalfInt, charge: i64) -> Vec<PbwMonomial> {
    VermaModule::new(HighestWeightN2::vacuum(q(0))).weight_space_basis(level, charge)
}

pub fn gram_matrix(hw: &HighestWeightN2, level: HalfInt, charge: i64) -> SparseRationalMatrix {
    VermaModule::new(hw.clone()).gram_matrix(level, charge)
}

pub fn singular_vectors(hw: &HighestWeightN2, level: HalfInt, charge: i64) -> Vec<VermaVector> {
    VermaModule::new(hw.clone()).singular_vectors(level, charge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::LinComb;
    use crate::pbw::first_bracket_violation;
    use crate::rational::qf;

    fn half(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn generic() -> HighestWeightN2 {
        HighestWeightN2::new(qf(1, 6), qf(1, 3), q(1))
    }

    #[test]
    fn basis_examples() {
        assert_eq!(weight_space_basis(HalfInt::ZERO, 0), vec![Monomial::vacuum()]);
        assert_eq!(weight_space_basis(half(1), 1), vec![Monomial(vec![N2Mode::gp(-1)])]);
        let b = weight_space_basis(HalfInt::int(1), 0);
        assert_eq!(
            b,
            vec![
                Monomial(vec![N2Mode::l(-1)]),
                Monomial(vec![N2Mode::t(-1)]),
                Monomial(vec![N2Mode::gp(-1), N2Mode::gm(-1)]),
            ]
        );
        assert!(weight_space_basis(half(1), 0).is_empty());
        assert!(weight_space_basis(HalfInt::int(1), 2).is_empty());
    }

    #[test]
    fn act_examples() {
        let m = VermaModule::new(generic());
        let v = m.act(&N2Mode::l(1), &m.monomial(&[N2Mode::l(-1)]));
        assert_eq!(v, m.vacuum().scaled(&qf(1, 3)));

        let hw = HighestWeightN2::new(qf(2, 5), qf(-3, 7), q(4));
        let m = VermaModule::new(hw.clone());
        let v = m.act(&N2Mode::gp(1), &m.monomial(&[N2Mode::gm(-1)]));
        assert_eq!(v, m.vacuum().scaled(&(q(2) * &hw.h + &hw.q)));
        let g = m.monomial(&[N2Mode::gp(-1)]);
        assert_eq!(m.act(&N2Mode::t(0), &g), g.scaled(&(&hw.q + q(1))));
    }

    #[test]
    fn odd_square_vanishes() {
        let m = VermaModule::new(generic());
        let g = m.monomial(&[N2Mode::gp(-3)]);
        assert!(m.act(&N2Mode::gp(-3), &g).is_zero());
    }

    #[test]
    fn gram_examples() {
        let hw = HighestWeightN2::new(qf(3, 4), qf(1, 5), q(2));
        let m = VermaModule::new(hw.clone());
        assert_eq!(m.gram_matrix(HalfInt::ZERO, 0).to_dense(), vec![vec![q(1)]]);
        assert_eq!(m.gram_matrix(half(1), 1).to_dense(), vec![vec![q(2) * &hw.h - &hw.q]]);
        assert_eq!(m.gram_matrix(half(1), -1).to_dense(), vec![vec![q(2) * &hw.h + &hw.q]]);
        let vac = VermaModule::new(HighestWeightN2::vacuum(q(7)));
        assert_eq!(vac.gram_matrix(half(1), 1).to_dense(), vec![vec![q(0)]]);
        assert_eq!(vac.gram_matrix(half(1), -1).to_dense(), vec![vec![q(0)]]);
    }

    #[test]
    fn singular_examples() {
        let vac = VermaModule::new(HighestWeightN2::vacuum(q(3)));
        assert_eq!(vac.singular_vectors(half(1), 1), vec![vac.monomial(&[N2Mode::gp(-1)])]);
        assert_eq!(vac.singular_vectors(half(1), -1), vec![vac.monomial(&[N2Mode::gm(-1)])]);

        let qq = qf(5, 11);
        let m = VermaModule::new(HighestWeightN2::new(&qq / q(2), qq.clone(), q(2)));
        assert_eq!(m.singular_vectors(half(1), 1), vec![m.monomial(&[N2Mode::gp(-1)])]);
        assert!(m.singular_vectors(half(1), -1).is_empty());

        let m = VermaModule::new(HighestWeightN2::new(q(1), qf(1, 7), q(5)));
        assert!(m.singular_vectors(half(1), 1).is_empty());
        assert!(m.singular_vectors(half(1), -1).is_empty());
    }

    #[test]
    fn vacuum_quotient_dims() {
        let m = VermaModule::new(HighestWeightN2::vacuum(q(1)));
        let v = m.vacuum_quotient(HalfInt::int(2)).unwrap();
        assert_eq!(v.dim(HalfInt::ZERO, 0), 1);
        assert_eq!(v.dim(half(1), 1), 0);
        assert_eq!(v.dim(half(1), -1), 0);
        // L_{-1}|0⟩ is generated as well: {G⁻_{-1/2}, G⁺_{-1/2}}|0⟩ = 2L_{-1}|0⟩
        assert_eq!(v.dim(HalfInt::int(1), 0), 1);
        let rep = v.space(HalfInt::int(1), 0).basis;
        assert_eq!(rep, vec![Monomial(vec![N2Mode::t(-1)])]);
        assert!(v.is_zero(&m.monomial(&[N2Mode::l(-1)])));

        let radical = m.quotient(QuotientBy::Radical, HalfInt::ZERO).unwrap();
        assert_eq!(radical.dim(HalfInt::ZERO, 0), 1);
    }

    #[test]
    fn strong_generators_survive_in_vacuum_module() {
        let m = VermaModule::new(HighestWeightN2::vacuum(qf(3, 2)));
        let v = m.vacuum_quotient(HalfInt::int(2)).unwrap();
        for modes in [vec![N2Mode::gp(-3)], vec![N2Mode::gm(-3)], vec![N2Mode::t(-1)], vec![N2Mode::l(-2)]] {
            assert!(!v.is_zero(&m.monomial(&modes)), "{modes:?}");
        }
    }

    #[test]
    fn representation_property() {
        let m = VermaModule::new(HighestWeightN2::new(qf(2, 3), qf(-1, 4), qf(9, 5)));
        let modes = n2::modes_within(HalfInt::int(2));
        let mut vectors = Vec::new();
        for twice in 0..=4 {
            for basis in m.pbw().weight_spaces(half(twice)).into_values() {
                vectors.extend(basis.into_iter().map(LinComb::basis));
            }
        }
        assert_eq!(first_bracket_violation(m.pbw(), &modes, &vectors), None);
    }

    #[test]
    fn gram_is_symmetric_and_matches_submodule() {
        for hw in [generic(), HighestWeightN2::vacuum(q(1)), HighestWeightN2::new(qf(1, 2), q(1), q(3))] {
            let m = VermaModule::new(hw);
            for twice in 1..=4 {
                for charge in m.pbw().weight_spaces(half(twice)).into_keys() {
                    let g = m.gram_matrix(half(twice), charge);
                    assert!(g.is_symmetric());
                    let kernel = g.ncols() - g.rank();
                    let sing = m.singular_vectors(half(twice), charge);
                    assert!(sing.len() <= kernel);
                    for s in &sing {
                        let coords: Vec<_> = m
                            .weight_space_basis(half(twice), charge)
                            .iter()
                            .map(|b| s.coeff(b))
                            .collect();
                        let img = g.mul_vec(&coords.into_iter().enumerate().collect());
                        assert!(img.is_zero());
                    }
                }
            }
        }
    }
}
