//! Affine `sl₂` at level `m`: admissible levels, top-level `sl₂`-modules and
//! the generalized Verma module `M(m,0)`.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::n2::Parity;
use crate::pbw::{GradedQuotient, ModeAlgebra, Monomial, PbwModule, PbwVector, SubmoduleSpec};
use crate::rational::{is_integer, q, qf, ExactRational, HalfInt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLevel {
    pub m: ExactRational,
    pub t: i64,
    pub u: i64,
}

impl RationalLevel {
    pub fn new(m: ExactRational) -> Result<Self> {
        let t = m.numer().to_i64();
        let u = m.denom().to_i64();
        match (t, u) {
            (Some(t), Some(u)) => Ok(RationalLevel { m, t, u }),
            _ => Err(Error::NotAdmissible(format!("{m} does not fit machine integers"))),
        }
    }

    /// `2u + t − 2`, the bound on `n` in `S^m`.
    pub fn n_bound(&self) -> i64 {
        2 * self.u + self.t - 2
    }

    pub fn is_admissible(&self) -> bool {
        self.n_bound() >= 0
    }

    fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(crate::rational::fmt_rational(&self.m)))
        }
    }
}

/// `m = t/u` in lowest terms is admissible when `2u + t − 2 ≥ 0`.
pub fn is_admissible(m: &ExactRational) -> bool {
    RationalLevel::new(m.clone()).map(|l| l.is_admissible()).unwrap_or(false)
}

/// `S^m = { n − k(m+2) : 0 ≤ n ≤ 2u+t−2, 0 ≤ k ≤ u−1 }`, sorted.
pub fn enumerate_s(m: &ExactRational) -> Result<Vec<ExactRational>> {
    let mut out: Vec<ExactRational> = enumerate_p(m)?.into_iter().map(|w| w.s_value(m)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleWeight {
    pub k: i64,
    pub n: i64,
    /// Coefficient of `Λ₀`.
    pub lambda0: ExactRational,
    /// Coefficient of `Λ₁`.
    pub lambda1: ExactRational,
}

impl AdmissibleWeight {
    pub fn s_value(&self, m: &ExactRational) -> ExactRational {
        q(self.n) - q(self.k) * (m + q(2))
    }
}

/// The admissible weights `λ_{m,k,n} = (m − n + k(m+2))Λ₀ + (n − k(m+2))Λ₁`.
pub fn enumerate_p(m: &ExactRational) -> Result<Vec<AdmissibleWeight>> {
    let level = RationalLevel::new(m.clone())?;
    level.require_admissible()?;
    let mut out = Vec::new();
    for k in 0..level.u {
        for n in 0..=level.n_bound() {
            let shift = q(k) * (m + q(2));
            out.push(AdmissibleWeight { k, n, lambda0: m - q(n) + &shift, lambda1: q(n) - &shift });
        }
    }
    Ok(out)
}

/// `r ∈ S^m \ ℤ`, `s ∉ ℤ`, `r − s ∉ ℤ`.
pub fn membership_t(m: &ExactRational, r: &ExactRational, s: &ExactRational) -> Result<bool> {
    let sm = enumerate_s(m)?;
    Ok(sm.contains(r) && !is_integer(r) && !is_integer(s) && !is_integer(&(r - s)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl2 {
    E,
    H,
    F,
}

impl Sl2 {
    pub const ALL: [Sl2; 3] = [Sl2::E, Sl2::H, Sl2::F];

    /// `[x, y]` in `sl₂` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn bracket(self, other: Sl2) -> LinComb<Sl2> {
        use Sl2::*;
        match (self, other) {
            (E, F) => LinComb::basis(H),
            (F, E) => LinComb::term(H, q(-1)),
            (H, E) => LinComb::term(E, q(2)),
            (E, H) => LinComb::term(E, q(-2)),
            (H, F) => LinComb::term(F, q(-2)),
            (F, H) => LinComb::term(F, q(2)),
            _ => LinComb::zero(),
        }
    }

    /// Normalized invariant form: `(e|f) = 1`, `(h|h) = 2`.
    pub fn form(self, other: Sl2) -> ExactRational {
        use Sl2::*;
        match (self, other) {
            (E, F) | (F, E) => q(1),
            (H, H) => q(2),
            _ => q(0),
        }
    }

    pub fn charge(self) -> i64 {
        match self {
            Sl2::E => 2,
            Sl2::H => 0,
            Sl2::F => -2,
        }
    }

    /// Chevalley anti-involution `e ↔ f`.
    pub fn adjoint(self) -> Sl2 {
        match self {
            Sl2::E => Sl2::F,
            Sl2::H => Sl2::H,
            Sl2::F => Sl2::E,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sl2::E => "e",
            Sl2::H => "h",
            Sl2::F => "f",
        }
    }
}

/// A finite-dimensional or dense top-level `sl₂`-module.
pub trait TopLevel {
    type Label: Ord + Clone + fmt::Debug;
    fn act_basis(&self, x: Sl2, label: &Self::Label) -> Result<LinComb<Self::Label>>;

    fn act(&self, x: Sl2, v: &LinComb<Self::Label>) -> Result<LinComb<Self::Label>> {
        let mut out = LinComb::zero();
        for (l, c) in v.iter() {
            out.add_scaled(&self.act_basis(x, l)?, c);
        }
        Ok(out)
    }
}

/// `E_{r,s}` on the window `lo ≤ i ≤ hi`.
#[derive(Clone, Debug)]
pub struct DenseTopLevel {
    pub r: ExactRational,
    pub s: ExactRational,
    pub window: (i64, i64),
}

impl DenseTopLevel {
    pub fn new(r: ExactRational, s: ExactRational, window: (i64, i64)) -> Self {
        DenseTopLevel { r, s, window }
    }

    fn check(&self, i: i64) -> Result<()> {
        if i < self.window.0 || i > self.window.1 {
            return Err(Error::WindowExceeded(format!("E_{i} outside [{}, {}]", self.window.0, self.window.1)));
        }
        Ok(())
    }

    /// Coefficients of `e·E_i`, `f·E_i` as in the defining action.
    pub fn e_coeff(&self, i: i64) -> ExactRational {
        -(&self.s + q(i))
    }

    pub fn f_coeff(&self, i: i64) -> ExactRational {
        &self.s + q(i) - &self.r
    }
}

impl TopLevel for DenseTopLevel {
    type Label = i64;

    fn act_basis(&self, x: Sl2, &i: &i64) -> Result<LinComb<i64>> {
        self.check(i)?;
        let (target, coeff) = match x {
            Sl2::E => (i - 1, self.e_coeff(i)),
            Sl2::H => (i, q(-2) * &self.s - q(2 * i) + &self.r),
            Sl2::F => (i + 1, self.f_coeff(i)),
        };
        if coeff.is_zero() {
            return Ok(LinComb::zero());
        }
        self.check(target)?;
        Ok(LinComb::term(target, coeff))
    }
}

/// `dense_act(x, i, top)`: the action on the single basis vector `E_i`.
pub fn dense_act(x: Sl2, i: i64, top: &DenseTopLevel) -> Result<LinComb<i64>> {
    top.act_basis(x, &i)
}

/// `V(rω₁)` with `h·w_i = (r−2i)w_i`, `f·w_i = w_{i+1}`, `e·w_i = i(r−i+1)w_{i−1}`.
#[derive(Clone, Debug)]
pub struct FiniteTopLevel {
    pub r: u32,
}

impl FiniteTopLevel {
    pub fn new(r: u32) -> Self {
        FiniteTopLevel { r }
    }

    pub fn dim(&self) -> usize {
        self.r as usize + 1
    }
}

impl TopLevel for FiniteTopLevel {
    type Label = u32;

    fn act_basis(&self, x: Sl2, &i: &u32) -> Result<LinComb<u32>> {
        if i > self.r {
            return Err(Error::WindowExceeded(format!("w_{i} outside V({}ω₁)", self.r)));
        }
        let (r, ii) = (self.r as i64, i as i64);
        Ok(match x {
            Sl2::E if i == 0 => LinComb::zero(),
            Sl2::E => LinComb::term(i - 1, q(ii * (r - ii + 1))),
            Sl2::H => LinComb::term(i, q(r - 2 * ii)),
            Sl2::F if i == self.r => LinComb::zero(),
            Sl2::F => LinComb::basis(i + 1),
        })
    }
}

/// `Ω = ef + fe + ½h²`.
pub fn casimir_apply<T: TopLevel>(top: &T, v: &LinComb<T::Label>) -> Result<LinComb<T::Label>> {
    let ef = top.act(Sl2::E, &top.act(Sl2::F, v)?)?;
    let fe = top.act(Sl2::F, &top.act(Sl2::E, v)?)?;
    let hh = top.act(Sl2::H, &top.act(Sl2::H, v)?)?;
    let mut out = ef.add(&fe);
    out.add_scaled(&hh, &qf(1, 2));
    Ok(out)
}

/// `x(n)` for `x ∈ {e,h,f}`, or the central element `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineMode {
    X(Sl2, i64),
    K,
}

impl AffineMode {
    pub fn e(n: i64) -> Self {
        AffineMode::X(Sl2::E, n)
    }

    pub fn h(n: i64) -> Self {
        AffineMode::X(Sl2::H, n)
    }

    pub fn f(n: i64) -> Self {
        AffineMode::X(Sl2::F, n)
    }

    pub fn index(&self) -> i64 {
        match self {
            AffineMode::X(_, n) => *n,
            AffineMode::K => 0,
        }
    }
}

impl fmt::Display for AffineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineMode::X(x, n) => write!(f, "{}({n})", x.name()),
            AffineMode::K => write!(f, "k"),
        }
    }
}

impl fmt::Debug for AffineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[x(a), y(b)] = [x,y](a+b) + a(x|y)δ_{a+b,0}k`.
pub fn affine_bracket(a: &AffineMode, b: &AffineMode) -> LinComb<AffineMode> {
    let (AffineMode::X(x, i), AffineMode::X(y, j)) = (a, b) else {
        return LinComb::zero();
    };
    let mut out = x.bracket(*y).map_labels(|z| AffineMode::X(*z, i + j));
    if i + j == 0 {
        out.add_term(AffineMode::K, q(*i) * x.form(*y));
    }
    out
}

pub fn affine_modes_within(bound: i64) -> Vec<AffineMode> {
    let mut out: Vec<AffineMode> =
        Sl2::ALL.iter().flat_map(|&x| (-bound..=bound).map(move |n| AffineMode::X(x, n))).collect();
    out.sort();
    out
}

/// First triple breaking `[a,[b,c]] = [[a,b],c] + [b,[a,c]]`.
pub fn jacobi_violation(modes: &[AffineMode]) -> Option<(AffineMode, AffineMode, AffineMode)> {
    for a in modes {
        for b in modes {
            let ab = affine_bracket(a, b);
            for c in modes {
                let lhs = affine_bracket(b, c).map_linear(|z| affine_bracket(a, z));
                let rhs = ab
                    .map_linear(|z| affine_bracket(z, c))
                    .add(&affine_bracket(a, c).map_linear(|z| affine_bracket(b, z)));
                if lhs != rhs {
                    return Some((*a, *b, *c));
                }
            }
        }
    }
    None
}

/// `M(m,0)`: induced from the trivial top level, `k` acting by `m`.
#[derive(Clone, Debug)]
pub struct AffineVacuumAlgebra {
    pub m: ExactRational,
}

impl ModeAlgebra for AffineVacuumAlgebra {
    type Mode = AffineMode;

    fn parity(&self, _: &AffineMode) -> Parity {
        Parity::Even
    }

    fn bracket(&self, a: &AffineMode, b: &AffineMode) -> LinComb<AffineMode> {
        affine_bracket(a, b)
    }

    fn central_value(&self, m: &AffineMode) -> Option<ExactRational> {
        (*m == AffineMode::K).then(|| self.m.clone())
    }

    fn on_highest(&self, m: &AffineMode) -> Option<ExactRational> {
        (m.index() >= 0).then(|| q(0))
    }

    fn level(&self, m: &AffineMode) -> HalfInt {
        HalfInt::int(-m.index())
    }

    fn charge(&self, m: &AffineMode) -> i64 {
        match m {
            AffineMode::X(x, _) => x.charge(),
            AffineMode::K => 0,
        }
    }

    fn adjoint(&self, m: &AffineMode) -> AffineMode {
        match m {
            AffineMode::X(x, n) => AffineMode::X(x.adjoint(), -n),
            AffineMode::K => AffineMode::K,
        }
    }

    fn creation_modes(&self, max_level: HalfInt) -> Vec<AffineMode> {
        let top = max_level.floor();
        let mut out: Vec<AffineMode> =
            Sl2::ALL.iter().flat_map(|&x| (1..=top).map(move |n| AffineMode::X(x, -n))).collect();
        out.sort();
        out
    }

    fn modes_within(&self, bound: HalfInt) -> Vec<AffineMode> {
        affine_modes_within(bound.floor())
    }
}

pub type AffineVector = PbwVector<AffineMode>;

pub struct AffineVacuumModule {
    inner: PbwModule<AffineVacuumAlgebra>,
}

impl AffineVacuumModule {
    pub fn new(m: ExactRational) -> Result<Self> {
        if m == q(-2) {
            return Err(Error::LevelExcluded);
        }
        Ok(AffineVacuumModule { inner: PbwModule::new(AffineVacuumAlgebra { m }) })
    }

    pub fn level(&self) -> &ExactRational {
        &self.inner.algebra().m
    }

    pub fn pbw(&self) -> &PbwModule<AffineVacuumAlgebra> {
        &self.inner
    }

    pub fn vacuum(&self) -> AffineVector {
        self.inner.vacuum()
    }

    pub fn monomial(&self, modes: &[AffineMode]) -> AffineVector {
        self.inner.apply_monomial(&Monomial(modes.to_vec()), &self.vacuum())
    }

    pub fn act(&self, mode: &AffineMode, v: &AffineVector) -> AffineVector {
        self.inner.act(mode, v)
    }

    /// The irreducible quotient `L(m,0)` truncated at `max_level`.
    pub fn irreducible(&self, max_level: i64) -> GradedQuotient<'_, AffineVacuumAlgebra> {
        GradedQuotient::new(&self.inner, SubmoduleSpec::Radical, HalfInt::int(max_level))
            .expect("the radical needs no generator checks")
    }
}

/// One `(level, charge)` space of the truncation.
#[derive(Clone, Debug)]
pub struct AffineWeightSpace {
    pub level: i64,
    pub charge: i64,
    pub pbw_basis: Vec<Monomial<AffineMode>>,
    pub gram: crate::linalg::SparseRationalMatrix,
    pub quotient_basis: Vec<Monomial<AffineMode>>,
}

/// PBW bases, Gram matrices and `L(m,0)` quotient bases up to `max_level`.
pub fn affine_truncation(m: &ExactRational, max_level: i64) -> Result<Vec<AffineWeightSpace>> {
    let module = AffineVacuumModule::new(m.clone())?;
    let quotient = module.irreducible(max_level);
    let mut out = Vec::new();
    for level in 0..=max_level {
        for (charge, pbw_basis) in module.pbw().weight_spaces(HalfInt::int(level)) {
            let gram = module.pbw().gram_matrix(HalfInt::int(level), charge);
            let quotient_basis = quotient.space(HalfInt::int(level), charge).basis;
            out.push(AffineWeightSpace { level, charge, pbw_basis, gram, quotient_basis });
        }
    }
    Ok(out)
}

/// Is every element of `S^m` a non-negative integer?
pub fn s_is_nonneg_integral(m: &ExactRational) -> Result<bool> {
    Ok(enumerate_s(m)?.iter().all(|x| is_integer(x) && !x.is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::first_bracket_violation;

    #[test]
    fn admissibility() {
        assert!(is_admissible(&q(1)));
        assert!(!is_admissible(&q(-2)));
        assert!(is_admissible(&qf(1, 2)));
        assert!(is_admissible(&q(0)));
        assert!(is_admissible(&qf(-4, 3)));
        assert!(!is_admissible(&qf(-5, 3)));
    }

    #[test]
    fn s_and_p_examples() {
        assert_eq!(enumerate_s(&q(1)).unwrap(), vec![q(0), q(1)]);
        let mut want = vec![q(0), q(1), q(2), q(3), qf(-5, 2), qf(-3, 2), qf(-1, 2), qf(1, 2)];
        want.sort();
        assert_eq!(enumerate_s(&qf(1, 2)).unwrap(), want);
        assert_eq!(enumerate_s(&q(2)).unwrap(), vec![q(0), q(1), q(2)]);
        assert!(matches!(enumerate_s(&q(-3)), Err(Error::NotAdmissible(_))));

        let p1 = enumerate_p(&q(1)).unwrap();
        assert_eq!(p1.len(), 2);
        for w in &p1 {
            assert_eq!(w.lambda0, q(1 - w.n));
            assert_eq!(w.lambda1, q(w.n));
        }
        assert_eq!(enumerate_p(&qf(1, 2)).unwrap().len(), 8);
        let p0 = enumerate_p(&q(0)).unwrap();
        assert_eq!(p0.len(), 1);
        assert_eq!((p0[0].lambda0.clone(), p0[0].lambda1.clone()), (q(0), q(0)));
    }

    #[test]
    fn t_membership() {
        let m = qf(1, 2);
        assert!(membership_t(&m, &qf(1, 2), &qf(1, 3)).unwrap());
        assert!(!membership_t(&m, &qf(1, 2), &qf(1, 2)).unwrap());
        assert!(!membership_t(&m, &q(1), &qf(1, 3)).unwrap());
    }

    #[test]
    fn dense_examples() {
        let (r, s) = (qf(1, 2), qf(1, 3));
        let top = DenseTopLevel::new(r.clone(), s.clone(), (-5, 5));
        assert_eq!(dense_act(Sl2::E, 0, &top).unwrap(), LinComb::term(-1, -s.clone()));
        assert_eq!(dense_act(Sl2::H, 0, &top).unwrap(), LinComb::term(0, &r - q(2) * &s));
        assert_eq!(dense_act(Sl2::F, 0, &top).unwrap(), LinComb::term(1, &s - &r));
        assert!(matches!(dense_act(Sl2::F, 5, &top), Err(Error::WindowExceeded(_))));
    }

    #[test]
    fn casimir_examples() {
        let (r, s) = (qf(-3, 7), qf(2, 9));
        let top = DenseTopLevel::new(r.clone(), s, (-3, 3));
        let e0 = LinComb::basis(0);
        let want = &r * (&r + q(2)) / q(2);
        assert_eq!(casimir_apply(&top, &e0).unwrap(), e0.scaled(&want));

        let v2 = FiniteTopLevel::new(2);
        assert_eq!(casimir_apply(&v2, &LinComb::basis(0)).unwrap(), LinComb::term(0, q(4)));
        let v1 = FiniteTopLevel::new(1);
        for i in 0..=1 {
            assert_eq!(casimir_apply(&v1, &LinComb::basis(i)).unwrap(), LinComb::term(i, qf(3, 2)));
        }
    }

    #[test]
    fn dense_bracket_is_sl2() {
        let top = DenseTopLevel::new(qf(5, 3), qf(-7, 4), (-20, 20));
        for i in -10..=10 {
            let v = LinComb::basis(i);
            for x in Sl2::ALL {
                for y in Sl2::ALL {
                    let lhs = top.act(x, &top.act(y, &v).unwrap()).unwrap().sub(&top.act(y, &top.act(x, &v).unwrap()).unwrap());
                    let br = x.bracket(y);
                    let mut rhs = LinComb::zero();
                    for (z, c) in br.iter() {
                        rhs.add_scaled(&top.act(*z, &v).unwrap(), c);
                    }
                    assert_eq!(lhs, rhs, "{x:?} {y:?} E_{i}");
                }
            }
        }
    }

    #[test]
    fn affine_jacobi() {
        assert_eq!(jacobi_violation(&affine_modes_within(2)), None);
    }

    #[test]
    fn affine_vacuum_module() {
        let m = AffineVacuumModule::new(q(1)).unwrap();
        let pbw = m.pbw();
        assert_eq!(pbw.weight_spaces(HalfInt::ZERO).values().map(Vec::len).sum::<usize>(), 1);
        assert_eq!(pbw.weight_spaces(HalfInt::int(1)).values().map(Vec::len).sum::<usize>(), 3);
        let e1 = m.monomial(&[AffineMode::e(-1)]);
        assert_eq!(m.act(&AffineMode::f(1), &e1), m.vacuum());

        let g = pbw.gram_matrix(HalfInt::int(2), 4);
        assert_eq!(g.to_dense(), vec![vec![q(0)]]);
        let l = m.irreducible(2);
        assert_eq!(l.dim(HalfInt::int(2), 4), 0);
        assert!(AffineVacuumModule::new(q(-2)).is_err());

        let generic = AffineVacuumModule::new(qf(1, 2)).unwrap();
        let gram = generic.pbw().gram_matrix(HalfInt::int(2), 4).to_dense();
        let m = qf(1, 2);
        assert_eq!(gram, vec![vec![(q(2) * &m - q(2)) * &m]]);
    }

    #[test]
    fn affine_representation_property() {
        let m = AffineVacuumModule::new(qf(-1, 2)).unwrap();
        let modes = affine_modes_within(2);
        let mut vectors = Vec::new();
        for level in 0..=2 {
            for basis in m.pbw().weight_spaces(HalfInt::int(level)).into_values() {
                vectors.extend(basis.into_iter().map(LinComb::basis));
            }
        }
        assert_eq!(first_bracket_violation(m.pbw(), &modes, &vectors), None);
    }

    #[test]
    fn truncation_shapes() {
        let t = affine_truncation(&q(1), 2).unwrap();
        let dim = |l: i64| t.iter().filter(|s| s.level == l).map(|s| s.pbw_basis.len()).sum::<usize>();
        assert_eq!((dim(0), dim(1), dim(2)), (1, 3, 9));
        assert!(t.iter().all(|s| s.gram.is_symmetric()));
    }
}
