//! Modes of composite fields and of tensor-product fields.
//!
//! A [`VertexSpace`] supplies the modes of its strong generators on basis
//! states. Composite states are written as [`Field`] expressions built from
//! normal-ordered products `g₋₁b` and derivatives, whose modes follow from
//!
//! ```text
//! (g₋₁b)_n = Σ_{i<0} g_i b_{n−i−1} + (−1)^{|g||b|} Σ_{i≥0} b_{n−i−1} g_i
//! (∂a)_n   = −n a_{n−1}
//! 1_n      = δ_{n,−1}
//! ```
//!
//! Every sum is finite because each space reports, per state, a mode index
//! above which a generator acts by zero.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::Result;
use crate::lincomb::LinComb;
use crate::n2::Parity;
use crate::rational::q;

pub trait VertexSpace {
    type Gen: Clone + Ord + Hash + fmt::Debug;
    type State: Clone + Ord + Hash + fmt::Debug;

    fn vacuum(&self) -> Self::State;
    fn gen_parity(&self, g: &Self::Gen) -> Parity;
    fn state_parity(&self, s: &Self::State) -> Parity;
    /// `g_n` on a basis state.
    fn gen_mode(&self, g: &Self::Gen, n: i64, s: &Self::State) -> Result<LinComb<Self::State>>;
    /// `g_n s = 0` for every `n` above this bound.
    fn gen_max_mode(&self, g: &Self::Gen, s: &Self::State) -> i64;
}

/// A state written as an iterated normal-ordered product acting on the vacuum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field<G> {
    Vacuum,
    Gen(G),
    /// `g₋₁ b`
    NormalOrdered(G, Box<Field<G>>),
    /// `∂a = a₋₂·1` when `a` is a state
    Deriv(Box<Field<G>>),
}

impl<G: Clone> Field<G> {
    pub fn gen(g: G) -> Self {
        Field::Gen(g)
    }

    pub fn no(g: G, b: Field<G>) -> Self {
        Field::NormalOrdered(g, Box::new(b))
    }

    /// `∂a`, or `None` for the vacuum whose derivative vanishes.
    pub fn deriv(a: Field<G>) -> Option<Self> {
        match a {
            Field::Vacuum => None,
            a => Some(Field::Deriv(Box::new(a))),
        }
    }
}

impl<G: fmt::Debug> fmt::Debug for Field<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Vacuum => write!(f, "1"),
            Field::Gen(g) => write!(f, "{g:?}"),
            Field::NormalOrdered(g, b) => write!(f, "({g:?}_-1 {b:?})"),
            Field::Deriv(a) => write!(f, "∂{a:?}"),
        }
    }
}

type ModeKey<G, S> = (Field<G>, i64, S);

/// Memoized mode calculus over one space.
pub struct FieldCalculus<'a, S: VertexSpace> {
    space: &'a S,
    modes: RefCell<HashMap<ModeKey<S::Gen, S::State>, LinComb<S::State>>>,
    bounds: RefCell<HashMap<(Field<S::Gen>, S::State), i64>>,
}

impl<'a, S: VertexSpace> FieldCalculus<'a, S> {
    pub fn new(space: &'a S) -> Self {
        FieldCalculus { space, modes: RefCell::new(HashMap::new()), bounds: RefCell::new(HashMap::new()) }
    }

    pub fn space(&self) -> &S {
        self.space
    }

    pub fn parity(&self, a: &Field<S::Gen>) -> Parity {
        match a {
            Field::Vacuum => Parity::Even,
            Field::Gen(g) => self.space.gen_parity(g),
            Field::NormalOrdered(g, b) => self.space.gen_parity(g).add(self.parity(b)),
            Field::Deriv(a) => self.parity(a),
        }
    }

    /// The state `a₋₁·1`.
    pub fn state(&self, a: &Field<S::Gen>) -> Result<LinComb<S::State>> {
        self.mode(a, -1, &self.space.vacuum())
    }

    /// Largest `n` with `a_n s` possibly nonzero.
    pub fn max_mode(&self, a: &Field<S::Gen>, s: &S::State) -> Result<i64> {
        let key = (a.clone(), s.clone());
        if let Some(&b) = self.bounds.borrow().get(&key) {
            return Ok(b);
        }
        let bound = match a {
            Field::Vacuum => -1,
            Field::Gen(g) => self.space.gen_max_mode(g, s),
            Field::Deriv(inner) => self.max_mode(inner, s)? + 1,
            Field::NormalOrdered(g, b) => {
                let mut best = self.max_mode(b, s)?;
                let gen = Field::Gen(g.clone());
                for i in 0..=self.space.gen_max_mode(g, s) {
                    for t in self.mode(&gen, i, s)?.labels() {
                        best = best.max(self.max_mode(b, t)? + i + 1);
                    }
                }
                best
            }
        };
        self.bounds.borrow_mut().insert(key, bound);
        Ok(bound)
    }

    /// `a_n` on a basis state.
    pub fn mode(&self, a: &Field<S::Gen>, n: i64, s: &S::State) -> Result<LinComb<S::State>> {
        if let Field::Gen(g) = a {
            if n > self.space.gen_max_mode(g, s) {
                return Ok(LinComb::zero());
            }
        }
        let key = (a.clone(), n, s.clone());
        if let Some(hit) = self.modes.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let out = match a {
            Field::Vacuum => {
                if n == -1 {
                    LinComb::basis(s.clone())
                } else {
                    LinComb::zero()
                }
            }
            Field::Gen(g) => self.space.gen_mode(g, n, s)?,
            Field::Deriv(inner) => self.mode(inner, n - 1, s)?.scaled(&q(-n)),
            Field::NormalOrdered(g, b) => {
                let gen = Field::Gen(g.clone());
                let mut out = LinComb::zero();
                for i in (n - 1 - self.max_mode(b, s)?)..0 {
                    let inner = self.mode(b, n - i - 1, s)?;
                    out.add_assign(&self.mode_vec(&gen, i, &inner)?);
                }
                let sign = self.space.gen_parity(g).koszul(self.parity(b));
                for i in 0..=self.space.gen_max_mode(g, s) {
                    let inner = self.mode(&gen, i, s)?;
                    out.add_scaled(&self.mode_vec(b, n - i - 1, &inner)?, &sign);
                }
                out
            }
        };
        self.modes.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    pub fn mode_vec(&self, a: &Field<S::Gen>, n: i64, v: &LinComb<S::State>) -> Result<LinComb<S::State>> {
        let mut out = LinComb::zero();
        for (s, c) in v.iter() {
            out.add_scaled(&self.mode(a, n, s)?, c);
        }
        Ok(out)
    }
}

pub type TensorState<A, B> = (A, B);
pub type TensorVector<A, B> = LinComb<(A, B)>;
/// `Σ c · a ⊗ b` over pairs of factor fields.
pub type TensorField<GA, GB> = LinComb<(Field<GA>, Field<GB>)>;

type PairKey<GA, GB, SA, SB> = (Field<GA>, Field<GB>, i64, SA, SB);
type PairCache<A, B> = HashMap<
    PairKey<<A as VertexSpace>::Gen, <B as VertexSpace>::Gen, <A as VertexSpace>::State, <B as VertexSpace>::State>,
    TensorVector<<A as VertexSpace>::State, <B as VertexSpace>::State>,
>;

/// Fields of `A ⊗ B`: `(a⊗b)_n (u⊗w) = Σ_i (−1)^{|b||u|} a_i u ⊗ b_{n−i−1} w`.
pub struct TensorCalculus<'a, A: VertexSpace, B: VertexSpace> {
    pub left: FieldCalculus<'a, A>,
    pub right: FieldCalculus<'a, B>,
    cache: RefCell<PairCache<A, B>>,
}

impl<'a, A: VertexSpace, B: VertexSpace> TensorCalculus<'a, A, B> {
    pub fn new(left: &'a A, right: &'a B) -> Self {
        TensorCalculus {
            left: FieldCalculus::new(left),
            right: FieldCalculus::new(right),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn vacuum(&self) -> TensorVector<A::State, B::State> {
        LinComb::basis((self.left.space().vacuum(), self.right.space().vacuum()))
    }

    pub fn pair_mode(
        &self,
        a: &Field<A::Gen>,
        b: &Field<B::Gen>,
        n: i64,
        u: &A::State,
        w: &B::State,
    ) -> Result<TensorVector<A::State, B::State>> {
        let key = (a.clone(), b.clone(), n, u.clone(), w.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let sign = self.right.parity(b).koszul(self.left.space().state_parity(u));
        let hi = self.left.max_mode(a, u)?;
        let lo = n - 1 - self.right.max_mode(b, w)?;
        let mut out = LinComb::zero();
        for i in lo..=hi {
            let l = self.left.mode(a, i, u)?;
            if l.is_zero() {
                continue;
            }
            let r = self.right.mode(b, n - i - 1, w)?;
            for (ls, lc) in l.iter() {
                for (rs, rc) in r.iter() {
                    out.add_term((ls.clone(), rs.clone()), lc * rc * &sign);
                }
            }
        }
        self.cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    pub fn mode(
        &self,
        field: &TensorField<A::Gen, B::Gen>,
        n: i64,
        v: &TensorVector<A::State, B::State>,
    ) -> Result<TensorVector<A::State, B::State>> {
        let mut out = LinComb::zero();
        for ((a, b), fc) in field.iter() {
            for ((u, w), c) in v.iter() {
                out.add_scaled(&self.pair_mode(a, b, n, u, w)?, &(fc * c));
            }
        }
        Ok(out)
    }

    /// The state `Σ c · a₋₁1 ⊗ b₋₁1`.
    pub fn state(&self, field: &TensorField<A::Gen, B::Gen>) -> Result<TensorVector<A::State, B::State>> {
        self.mode(field, -1, &self.vacuum())
    }

    pub fn parity(&self, a: &Field<A::Gen>, b: &Field<B::Gen>) -> Parity {
        self.left.parity(a).add(self.right.parity(b))
    }
}

/// `∂(a⊗b) = ∂a⊗b + a⊗∂b`.
pub fn tensor_derivative<GA: Clone + Ord, GB: Clone + Ord>(field: &TensorField<GA, GB>) -> TensorField<GA, GB> {
    let mut out = LinComb::zero();
    for ((a, b), c) in field.iter() {
        if let Some(da) = Field::deriv(a.clone()) {
            out.add_term((da, b.clone()), c.clone());
        }
        if let Some(db) = Field::deriv(b.clone()) {
            out.add_term((a.clone(), db), c.clone());
        }
    }
    out
}

/// A single-generator tensor field `g ⊗ 1` or `1 ⊗ g`, scaled.
pub fn pure<GA: Clone + Ord, GB: Clone + Ord>(a: Field<GA>, b: Field<GB>, c: crate::ExactRational) -> TensorField<GA, GB> {
    LinComb::term((a, b), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_field::{fermion_act, fermion_states, FermionState, Species};
    use crate::rational::HalfInt;

    struct Fermions;

    impl VertexSpace for Fermions {
        type Gen = Species;
        type State = FermionState;

        fn vacuum(&self) -> FermionState {
            FermionState::vacuum()
        }

        fn gen_parity(&self, _: &Species) -> Parity {
            Parity::Odd
        }

        fn state_parity(&self, s: &FermionState) -> Parity {
            s.parity()
        }

        fn gen_mode(&self, g: &Species, n: i64, s: &FermionState) -> Result<LinComb<FermionState>> {
            fermion_act(*g, HalfInt::from_twice(2 * n + 1), &LinComb::basis(s.clone()))
        }

        fn gen_max_mode(&self, _: &Species, s: &FermionState) -> i64 {
            (s.weight() - HalfInt::from_twice(1)).floor()
        }
    }

    #[test]
    fn derivative_and_vacuum_modes() {
        let calc = FieldCalculus::new(&Fermions);
        let vac = FermionState::vacuum();
        assert_eq!(calc.mode(&Field::Vacuum, -1, &vac).unwrap(), LinComb::basis(vac.clone()));
        assert!(calc.mode(&Field::Vacuum, 0, &vac).unwrap().is_zero());
        let d = Field::deriv(Field::gen(Species::Minus)).unwrap();
        let (_, st) = FermionState::from_modes(&[], &[HalfInt::from_twice(-3)]).unwrap();
        assert_eq!(calc.state(&d).unwrap(), LinComb::basis(st));
        assert!(Field::<Species>::deriv(Field::Vacuum).is_none());
    }

    #[test]
    fn current_zero_mode_counts_charge() {
        // J = ψ⁺₋₁ψ⁻ has J₀ = charge
        let calc = FieldCalculus::new(&Fermions);
        let j = Field::no(Species::Plus, Field::gen(Species::Minus));
        for st in fermion_states(HalfInt::int(3)) {
            let got = calc.mode(&j, 0, &st).unwrap();
            assert_eq!(got, LinComb::term(st.clone(), q(st.charge())), "{st:?}");
        }
    }

    #[test]
    fn bounds_are_sharp_enough() {
        let calc = FieldCalculus::new(&Fermions);
        let j = Field::no(Species::Plus, Field::gen(Species::Minus));
        for st in fermion_states(HalfInt::int(2)) {
            let m = calc.max_mode(&j, &st).unwrap();
            for n in m + 1..m + 4 {
                assert!(calc.mode(&j, n, &st).unwrap().is_zero());
            }
        }
    }
}
