//! The N=2 superconformal Lie superalgebra as a table of structure constants.
//!
//! Basis `L_n, T_n, G±_r, C` with `n ∈ ℤ`, `r ∈ ½+ℤ`. The central element is
//! kept as an ordinary basis mode so the same bracket serves every central
//! charge; modules substitute the scalar when they act.

use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::{q, qf, ExactRational, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_odd(self.is_odd() != other.is_odd())
    }

    /// `(-1)^{|a||b|}`
    pub fn koszul(self, other: Parity) -> ExactRational {
        if self.is_odd() && other.is_odd() {
            q(-1)
        } else {
            q(1)
        }
    }
}

/// Family order doubles as the PBW order: `L < T < G+ < G- < C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum N2Family {
    L,
    T,
    Gplus,
    Gminus,
    Central,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct N2Mode {
    pub family: N2Family,
    pub index: HalfInt,
}

pub type AlgebraElement = LinComb<N2Mode>;

impl N2Mode {
    pub const CENTRAL: N2Mode = N2Mode { family: N2Family::Central, index: HalfInt::ZERO };

    pub fn new(family: N2Family, index: HalfInt) -> Result<Self> {
        let ok = match family {
            N2Family::L | N2Family::T => index.is_integer(),
            N2Family::Gplus | N2Family::Gminus => !index.is_integer(),
            N2Family::Central => index == HalfInt::ZERO,
        };
        if ok {
            Ok(N2Mode { family, index })
        } else {
            Err(Error::InvalidMode(format!("{family:?} with index {index}")))
        }
    }

    pub fn l(n: i64) -> Self {
        N2Mode { family: N2Family::L, index: HalfInt::int(n) }
    }

    pub fn t(n: i64) -> Self {
        N2Mode { family: N2Family::T, index: HalfInt::int(n) }
    }

    /// `G+_{twice/2}`; `twice` must be odd.
    pub fn gp(twice: i64) -> Self {
        assert!(twice % 2 != 0, "G modes have half-odd index");
        N2Mode { family: N2Family::Gplus, index: HalfInt::from_twice(twice) }
    }

    pub fn gm(twice: i64) -> Self {
        assert!(twice % 2 != 0, "G modes have half-odd index");
        N2Mode { family: N2Family::Gminus, index: HalfInt::from_twice(twice) }
    }

    pub fn parity(&self) -> Parity {
        parity(self)
    }

    /// Eigenvalue of `ad T_0`.
    pub fn charge(&self) -> i64 {
        match self.family {
            N2Family::Gplus => 1,
            N2Family::Gminus => -1,
            _ => 0,
        }
    }

    fn with_index(self, index: HalfInt) -> Self {
        N2Mode { family: self.family, index }
    }
}

impl fmt::Display for N2Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            N2Family::L => write!(f, "L_{{{}}}", self.index),
            N2Family::T => write!(f, "T_{{{}}}", self.index),
            N2Family::Gplus => write!(f, "G+_{{{}}}", self.index),
            N2Family::Gminus => write!(f, "G-_{{{}}}", self.index),
            N2Family::Central => write!(f, "C"),
        }
    }
}

impl fmt::Debug for N2Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn parity(a: &N2Mode) -> Parity {
    match a.family {
        N2Family::Gplus | N2Family::Gminus => Parity::Odd,
        _ => Parity::Even,
    }
}

/// `L_n ↦ L_{-n}`, `T_n ↦ T_{-n}`, `G±_r ↦ G∓_{-r}`, `C ↦ C`.
pub fn adjoint(a: &N2Mode) -> N2Mode {
    let family = match a.family {
        N2Family::Gplus => N2Family::Gminus,
        N2Family::Gminus => N2Family::Gplus,
        f => f,
    };
    N2Mode { family, index: -a.index }
}

/// The super bracket `[a, b]`, an anticommutator when both are odd.
pub fn super_bracket(a: &N2Mode, b: &N2Mode) -> AlgebraElement {
    use N2Family::*;
    let mut out = AlgebraElement::zero();
    let (ai, bi) = (a.index, b.index);
    let sum = ai + bi;
    let delta = sum == HalfInt::ZERO;
    match (a.family, b.family) {
        (Central, _) | (_, Central) => {}
        (L, L) => {
            let (m, n) = (ai.to_rational(), bi.to_rational());
            out.add_term(N2Mode::l(0).with_index(sum), &m - &n);
            if delta {
                let cube = &m * &m * &m - &m;
                out.add_term(N2Mode::CENTRAL, cube / q(12));
            }
        }
        (L, Gplus | Gminus) => {
            let coeff = ai.to_rational() / q(2) - bi.to_rational();
            out.add_term(b.with_index(sum), coeff);
        }
        (Gplus | Gminus, L) => return super_bracket(b, a).neg(),
        (L, T) => out.add_term(b.with_index(sum), -bi.to_rational()),
        (T, L) => return super_bracket(b, a).neg(),
        (T, T) => {
            if delta {
                out.add_term(N2Mode::CENTRAL, ai.to_rational() / q(3));
            }
        }
        (T, Gplus) => out.add_term(b.with_index(sum), q(1)),
        (T, Gminus) => out.add_term(b.with_index(sum), q(-1)),
        (Gplus | Gminus, T) => return super_bracket(b, a).neg(),
        (Gplus, Gminus) => {
            let (r, s) = (ai.to_rational(), bi.to_rational());
            out.add_term(N2Mode::l(0).with_index(sum), q(2));
            out.add_term(N2Mode::t(0).with_index(sum), &r - &s);
            if delta {
                out.add_term(N2Mode::CENTRAL, (&r * &r - qf(1, 4)) / q(3));
            }
        }
        // the anticommutator is symmetric
        (Gminus, Gplus) => return super_bracket(b, a),
        (Gplus, Gplus) | (Gminus, Gminus) => {}
    }
    out
}

/// All non-central modes with `|index| ≤ bound`.
pub fn modes_within(bound: HalfInt) -> Vec<N2Mode> {
    let mut out = Vec::new();
    for twice in -bound.twice()..=bound.twice() {
        let idx = HalfInt::from_twice(twice);
        if idx.is_integer() {
            out.push(N2Mode::l(0).with_index(idx));
            out.push(N2Mode::t(0).with_index(idx));
        } else {
            out.push(N2Mode::gp(twice));
            out.push(N2Mode::gm(twice));
        }
    }
    out.sort();
    out
}

/// Extend `f` linearly over an algebra element.
pub fn bracket_elements(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&super_bracket(a, b), &(ca * cb));
        }
    }
    out
}

/// First triple breaking `[a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]]`.
pub fn super_jacobi_violation(modes: &[N2Mode]) -> Option<(N2Mode, N2Mode, N2Mode)> {
    for a in modes {
        let ea = AlgebraElement::basis(*a);
        for b in modes {
            let eb = AlgebraElement::basis(*b);
            let ab = super_bracket(a, b);
            let sign = parity(a).koszul(parity(b));
            for c in modes {
                let lhs = bracket_elements(&ea, &super_bracket(b, c));
                let mut rhs = bracket_elements(&ab, &AlgebraElement::basis(*c));
                rhs.add_scaled(&bracket_elements(&eb, &super_bracket(a, c)), &sign);
                if lhs != rhs {
                    return Some((*a, *b, *c));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_examples() {
        assert_eq!(parity(&N2Mode::l(-2)), Parity::Even);
        assert_eq!(parity(&N2Mode::gp(-3)), Parity::Odd);
        assert_eq!(parity(&N2Mode::CENTRAL), Parity::Even);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(super_bracket(&N2Mode::l(1), &N2Mode::l(-1)), LinComb::term(N2Mode::l(0), q(2)));
        let x = super_bracket(&N2Mode::gp(1), &N2Mode::gm(-1));
        assert_eq!(x, LinComb::from_iter([(N2Mode::l(0), q(2)), (N2Mode::t(0), q(1))]));
        let y = super_bracket(&N2Mode::gp(3), &N2Mode::gm(-3));
        assert_eq!(
            y,
            LinComb::from_iter([(N2Mode::l(0), q(2)), (N2Mode::t(0), q(3)), (N2Mode::CENTRAL, qf(2, 3))])
        );
        for (r, s) in [(1, 3), (-1, -1), (5, -5)] {
            assert!(super_bracket(&N2Mode::gp(r), &N2Mode::gp(s)).is_zero());
            assert!(super_bracket(&N2Mode::gm(r), &N2Mode::gm(s)).is_zero());
        }
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint(&N2Mode::l(2)), N2Mode::l(-2));
        assert_eq!(adjoint(&N2Mode::gp(-1)), N2Mode::gm(1));
        assert_eq!(adjoint(&N2Mode::CENTRAL), N2Mode::CENTRAL);
    }

    #[test]
    fn mode_validation() {
        assert!(N2Mode::new(N2Family::L, HalfInt::from_twice(1)).is_err());
        assert!(N2Mode::new(N2Family::Gplus, HalfInt::int(1)).is_err());
        assert!(N2Mode::new(N2Family::Central, HalfInt::int(1)).is_err());
        assert!(N2Mode::new(N2Family::Gminus, HalfInt::from_twice(-5)).is_ok());
    }

    #[test]
    fn central_is_central() {
        for a in modes_within(HalfInt::int(3)) {
            assert!(super_bracket(&N2Mode::CENTRAL, &a).is_zero());
            assert!(super_bracket(&a, &N2Mode::CENTRAL).is_zero());
        }
    }

    #[test]
    fn super_antisymmetry() {
        let modes = modes_within(HalfInt::int(4));
        for a in &modes {
            for b in &modes {
                let lhs = super_bracket(a, b);
                let rhs = super_bracket(b, a).scaled(&-a.parity().koszul(b.parity()));
                assert_eq!(lhs, rhs, "{a} {b}");
            }
        }
    }

    #[test]
    fn adjoint_is_bracket_compatible() {
        let modes = modes_within(HalfInt::int(3));
        for a in &modes {
            assert_eq!(adjoint(&adjoint(a)), *a);
            for b in &modes {
                let lhs = super_bracket(&adjoint(b), &adjoint(a));
                let rhs = super_bracket(a, b).map_labels(adjoint);
                assert_eq!(lhs, rhs, "{a} {b}");
            }
        }
    }

    #[test]
    fn jacobi_small() {
        let mut modes = modes_within(HalfInt::from_twice(3));
        modes.push(N2Mode::CENTRAL);
        assert_eq!(super_jacobi_violation(&modes), None);
    }
}
