//! Highest-weight modules over mode algebras, realized on PBW monomials.
//!
//! A [`PbwModule`] is the Verma-type module `U(g₋)·|hw⟩` of a graded Lie
//! superalgebra given by its bracket table ([`ModeAlgebra`]). Vectors are
//! sparse combinations of sorted monomials in creation modes; any mode acts
//! by straightening it to the right with super commutators until it either
//! sits in PBW order or reaches the highest-weight vector.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::linalg::{SparseRationalMatrix, SparseVector, SubspaceReducer};
use crate::n2::Parity;
use crate::rational::{qf, ExactRational, HalfInt};

pub trait ModeAlgebra {
    type Mode: Clone + Ord + Hash + fmt::Display + fmt::Debug;

    fn parity(&self, m: &Self::Mode) -> Parity;
    fn bracket(&self, a: &Self::Mode, b: &Self::Mode) -> LinComb<Self::Mode>;
    /// Scalar by which a central element acts on the whole module.
    fn central_value(&self, m: &Self::Mode) -> Option<ExactRational>;
    /// `None` for creation modes, else the eigenvalue on the highest-weight vector.
    fn on_highest(&self, m: &Self::Mode) -> Option<ExactRational>;
    /// Amount by which the mode raises the grade (minus its index).
    fn level(&self, m: &Self::Mode) -> HalfInt;
    fn charge(&self, m: &Self::Mode) -> i64;
    /// Anti-involution defining the contravariant form.
    fn adjoint(&self, m: &Self::Mode) -> Self::Mode;
    /// Creation modes of level at most `max_level`, ascending in PBW order.
    fn creation_modes(&self, max_level: HalfInt) -> Vec<Self::Mode>;
    /// Every non-central mode with `|index| ≤ bound`.
    fn modes_within(&self, bound: HalfInt) -> Vec<Self::Mode>;
}

/// Sorted product of creation modes applied to the highest-weight vector;
/// the empty monomial is the highest-weight vector itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial<M>(pub Vec<M>);

impl<M> Monomial<M> {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    pub fn modes(&self) -> &[M] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }
}

impl<M: fmt::Display> fmt::Display for Monomial<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "|hw>");
        }
        for m in &self.0 {
            write!(f, "{m}")?;
        }
        write!(f, "|hw>")
    }
}

impl<M: fmt::Debug> fmt::Debug for Monomial<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            write!(f, "{m:?}")?;
        }
        write!(f, "|hw>")
    }
}

pub type PbwVector<M> = LinComb<Monomial<M>>;

type ActCache<M> = HashMap<(M, Monomial<M>), PbwVector<M>>;

pub struct PbwModule<A: ModeAlgebra> {
    alg: A,
    cache: RefCell<ActCache<A::Mode>>,
}

impl<A: ModeAlgebra> PbwModule<A> {
    pub fn new(alg: A) -> Self {
        PbwModule { alg, cache: RefCell::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &A {
        &self.alg
    }

    pub fn vacuum(&self) -> PbwVector<A::Mode> {
        LinComb::basis(Monomial::vacuum())
    }

    pub fn weight(&self, m: &Monomial<A::Mode>) -> (HalfInt, i64) {
        let level = m.0.iter().map(|x| self.alg.level(x)).sum();
        let charge = m.0.iter().map(|x| self.alg.charge(x)).sum();
        (level, charge)
    }

    pub fn parity_of(&self, m: &Monomial<A::Mode>) -> Parity {
        m.0.iter().fold(Parity::Even, |p, x| p.add(self.alg.parity(x)))
    }

    /// `mode · mono`, straightened into PBW form.
    pub fn act_on_monomial(&self, a: &A::Mode, mono: &Monomial<A::Mode>) -> PbwVector<A::Mode> {
        if let Some(c) = self.alg.central_value(a) {
            return LinComb::term(mono.clone(), c);
        }
        let key = (a.clone(), mono.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        let out = self.straighten(a, mono);
        self.cache.borrow_mut().insert(key, out.clone());
        out
    }

    fn straighten(&self, a: &A::Mode, mono: &Monomial<A::Mode>) -> PbwVector<A::Mode> {
        let on_hw = self.alg.on_highest(a);
        let Some((first, tail)) = mono.0.split_first() else {
            return match on_hw {
                None => LinComb::basis(Monomial(vec![a.clone()])),
                Some(c) => LinComb::term(Monomial::vacuum(), c),
            };
        };
        let tail = Monomial(tail.to_vec());
        if on_hw.is_none() && a <= first {
            if a == first && self.alg.parity(a).is_odd() {
                // a·a = ½[a,a] for odd a
                let sq = self.alg.bracket(a, a);
                return self.act_element_on_monomial(&sq, &tail).scaled(&qf(1, 2));
            }
            let mut modes = Vec::with_capacity(mono.0.len() + 1);
            modes.push(a.clone());
            modes.extend(mono.0.iter().cloned());
            return LinComb::basis(Monomial(modes));
        }
        // a·first·tail = ±first·(a·tail) + [a, first]·tail
        let sign = self.alg.parity(a).koszul(self.alg.parity(first));
        let moved = self.act_on_monomial(a, &tail);
        let mut out = self.act(first, &moved).scaled(&sign);
        let br = self.alg.bracket(a, first);
        out.add_assign(&self.act_element_on_monomial(&br, &tail));
        out
    }

    fn act_element_on_monomial(
        &self,
        x: &LinComb<A::Mode>,
        mono: &Monomial<A::Mode>,
    ) -> PbwVector<A::Mode> {
        let mut out = LinComb::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.act_on_monomial(m, mono), c);
        }
        out
    }

    pub fn act(&self, a: &A::Mode, v: &PbwVector<A::Mode>) -> PbwVector<A::Mode> {
        v.map_linear(|m| self.act_on_monomial(a, m))
    }

    /// Action of an algebra element (central modes included).
    pub fn act_element(&self, x: &LinComb<A::Mode>, v: &PbwVector<A::Mode>) -> PbwVector<A::Mode> {
        let mut out = LinComb::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.act(m, v), c);
        }
        out
    }

    /// `a₁(a₂(⋯(a_k·v)))` for the monomial `a₁a₂⋯a_k`.
    pub fn apply_monomial(&self, mono: &Monomial<A::Mode>, v: &PbwVector<A::Mode>) -> PbwVector<A::Mode> {
        mono.0.iter().rev().fold(v.clone(), |acc, a| self.act(a, &acc))
    }

    /// All weight spaces at one level, keyed by charge, monomials sorted.
    pub fn weight_spaces(&self, level: HalfInt) -> BTreeMap<i64, Vec<Monomial<A::Mode>>> {
        let modes = self.alg.creation_modes(level);
        let mut out: BTreeMap<i64, Vec<Monomial<A::Mode>>> = BTreeMap::new();
        let mut current = Vec::new();
        self.enumerate(&modes, 0, level, &mut current, &mut |m: &[A::Mode]| {
            let mono = Monomial(m.to_vec());
            let (_, ch) = self.weight(&mono);
            out.entry(ch).or_default().push(mono);
        });
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    /// PBW basis of the `(level, charge)` weight space in deterministic order.
    pub fn basis(&self, level: HalfInt, charge: i64) -> Vec<Monomial<A::Mode>> {
        if level.is_negative() {
            return Vec::new();
        }
        self.weight_spaces(level).remove(&charge).unwrap_or_default()
    }

    fn enumerate(
        &self,
        modes: &[A::Mode],
        start: usize,
        remaining: HalfInt,
        current: &mut Vec<A::Mode>,
        emit: &mut dyn FnMut(&[A::Mode]),
    ) {
        if remaining == HalfInt::ZERO {
            emit(current);
            return;
        }
        for i in start..modes.len() {
            let m = &modes[i];
            let lvl = self.alg.level(m);
            if lvl > remaining {
                continue;
            }
            let next = if self.alg.parity(m).is_odd() { i + 1 } else { i };
            current.push(m.clone());
            self.enumerate(modes, next, remaining - lvl, current, emit);
            current.pop();
        }
    }

    /// Contravariant pairing `⟨x, y⟩` with `⟨hw, hw⟩ = 1`.
    pub fn pairing(&self, x: &Monomial<A::Mode>, y: &PbwVector<A::Mode>) -> ExactRational {
        let mut v = y.clone();
        for a in &x.0 {
            v = self.act(&self.alg.adjoint(a), &v);
            if v.is_zero() {
                break;
            }
        }
        v.coeff(&Monomial::vacuum())
    }

    pub fn gram_matrix(&self, level: HalfInt, charge: i64) -> SparseRationalMatrix {
        let basis = self.basis(level, charge);
        let n = basis.len();
        let mut entries = Vec::new();
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                entries.push((i, j, self.pairing(bi, &LinComb::basis(bj.clone()))));
            }
        }
        SparseRationalMatrix::from_triplets(n, n, entries)
    }

    /// Positive modes that can act nontrivially on grades up to `level`.
    pub fn annihilators(&self, level: HalfInt) -> Vec<A::Mode> {
        self.alg.creation_modes(level).iter().map(|m| self.alg.adjoint(m)).collect()
    }

    /// Basis of vectors in the weight space killed by every positive mode.
    pub fn singular_vectors(&self, level: HalfInt, charge: i64) -> Vec<PbwVector<A::Mode>> {
        let basis = self.basis(level, charge);
        if basis.is_empty() {
            return Vec::new();
        }
        let mut row_of: HashMap<(usize, Monomial<A::Mode>), usize> = HashMap::new();
        let mut entries = Vec::new();
        let ann = self.annihilators(level);
        for (j, b) in basis.iter().enumerate() {
            let v = LinComb::basis(b.clone());
            for (k, p) in ann.iter().enumerate() {
                for (mono, c) in self.act(p, &v).iter() {
                    let next = row_of.len();
                    let row = *row_of.entry((k, mono.clone())).or_insert(next);
                    entries.push((row, j, c.clone()));
                }
            }
        }
        let m = SparseRationalMatrix::from_triplets(row_of.len(), basis.len(), entries);
        m.kernel_basis().iter().map(|k| self.from_coordinates(&basis, k)).collect()
    }

    pub fn from_coordinates(&self, basis: &[Monomial<A::Mode>], coords: &SparseVector) -> PbwVector<A::Mode> {
        coords.iter().map(|(i, c)| (basis[*i].clone(), c.clone())).collect()
    }

    pub fn is_singular(&self, v: &PbwVector<A::Mode>) -> bool {
        let Some(level) = v.labels().map(|m| self.weight(m).0).max() else { return true };
        self.annihilators(level).iter().all(|p| self.act(p, v).is_zero())
    }
}

/// Which submodule the quotient is taken by.
#[derive(Clone, Debug)]
pub enum SubmoduleSpec<M: Ord + Clone> {
    /// The submodule generated by these singular vectors.
    Generated(Vec<PbwVector<M>>),
    /// The radical of the contravariant form (the maximal proper submodule).
    Radical,
}

/// A weight space of a truncated quotient.
#[derive(Clone, Debug)]
pub struct QuotientSpace<M> {
    pub level: HalfInt,
    pub charge: i64,
    /// PBW monomials whose images form a basis of the quotient space.
    pub basis: Vec<Monomial<M>>,
}

/// Matrix of one mode between two quotient weight spaces, columns indexed by
/// the source basis and rows by the target basis.
#[derive(Clone, Debug)]
pub struct ActionMatrix<M> {
    pub mode: M,
    pub source: (HalfInt, i64),
    pub target: (HalfInt, i64),
    pub matrix: SparseRationalMatrix,
}

/// Level-truncated quotient `M/J` with canonical representatives.
pub struct GradedQuotient<'a, A: ModeAlgebra> {
    module: &'a PbwModule<A>,
    spec: SubmoduleSpec<A::Mode>,
    max_level: HalfInt,
    reducers: RefCell<BTreeMap<(HalfInt, i64), SubspaceReducer<Monomial<A::Mode>>>>,
}

impl<'a, A: ModeAlgebra> GradedQuotient<'a, A> {
    /// Generators must be homogeneous singular vectors.
    pub fn new(module: &'a PbwModule<A>, spec: SubmoduleSpec<A::Mode>, max_level: HalfInt) -> Result<Self> {
        if let SubmoduleSpec::Generated(gens) = &spec {
            for g in gens {
                let weights: std::collections::BTreeSet<_> = g.labels().map(|m| module.weight(m)).collect();
                if weights.len() > 1 {
                    return Err(Error::UnsupportedShape("generator is not homogeneous".into()));
                }
                if !module.is_singular(g) {
                    return Err(Error::UnsupportedShape("generator is not a singular vector".into()));
                }
            }
        }
        Ok(GradedQuotient { module, spec, max_level, reducers: RefCell::new(BTreeMap::new()) })
    }

    pub fn module(&self) -> &PbwModule<A> {
        self.module
    }

    pub fn max_level(&self) -> HalfInt {
        self.max_level
    }

    fn with_reducer<T>(&self, level: HalfInt, charge: i64, f: impl FnOnce(&SubspaceReducer<Monomial<A::Mode>>) -> T) -> T {
        if let Some(r) = self.reducers.borrow().get(&(level, charge)) {
            return f(r);
        }
        let r = self.build_reducer(level, charge);
        let out = f(&r);
        self.reducers.borrow_mut().insert((level, charge), r);
        out
    }

    fn build_reducer(&self, level: HalfInt, charge: i64) -> SubspaceReducer<Monomial<A::Mode>> {
        let m = self.module;
        match &self.spec {
            SubmoduleSpec::Generated(gens) => {
                let mut r = SubspaceReducer::new();
                for g in gens {
                    let Some(first) = g.labels().next() else { continue };
                    let (gl, gc) = m.weight(first);
                    for mono in m.basis(level - gl, charge - gc) {
                        r.insert(m.apply_monomial(&mono, g));
                    }
                }
                r
            }
            SubmoduleSpec::Radical => {
                let basis = m.basis(level, charge);
                let gram = m.gram_matrix(level, charge);
                SubspaceReducer::from_spanning(gram.kernel_basis().iter().map(|k| m.from_coordinates(&basis, k)))
            }
        }
    }

    pub fn space(&self, level: HalfInt, charge: i64) -> QuotientSpace<A::Mode> {
        let full = self.module.basis(level, charge);
        let basis = self.with_reducer(level, charge, |r| full.into_iter().filter(|b| !r.is_pivot(b)).collect());
        QuotientSpace { level, charge, basis }
    }

    pub fn dim(&self, level: HalfInt, charge: i64) -> usize {
        self.space(level, charge).basis.len()
    }

    /// Does `v` vanish in the quotient? Works at any level, not only up to the truncation.
    pub fn is_zero(&self, v: &PbwVector<A::Mode>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Canonical representative: zero coefficient on every pivot monomial.
    pub fn reduce(&self, v: &PbwVector<A::Mode>) -> PbwVector<A::Mode> {
        let mut by_weight: BTreeMap<(HalfInt, i64), PbwVector<A::Mode>> = BTreeMap::new();
        for (m, c) in v.iter() {
            by_weight.entry(self.module.weight(m)).or_default().add_term(m.clone(), c.clone());
        }
        let mut out = LinComb::zero();
        for ((l, ch), part) in by_weight {
            out.add_assign(&self.with_reducer(l, ch, |r| r.reduce(&part)));
        }
        out
    }

    /// All nonzero quotient weight spaces with level ≤ the truncation.
    pub fn spaces(&self) -> Vec<QuotientSpace<A::Mode>> {
        let mut out = Vec::new();
        for twice in 0..=self.max_level.twice() {
            let level = HalfInt::from_twice(twice);
            for charge in self.module.weight_spaces(level).into_keys() {
                let s = self.space(level, charge);
                if !s.basis.is_empty() {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Matrices of every mode with `|index| ≤ max_level` between truncated spaces.
    pub fn action_matrices(&self) -> Vec<ActionMatrix<A::Mode>> {
        let spaces = self.spaces();
        let index: BTreeMap<(HalfInt, i64), &QuotientSpace<A::Mode>> =
            spaces.iter().map(|s| ((s.level, s.charge), s)).collect();
        let alg = self.module.algebra();
        let mut out = Vec::new();
        for mode in alg.modes_within(self.max_level) {
            for s in &spaces {
                let target = (s.level + alg.level(&mode), s.charge + alg.charge(&mode));
                let Some(t) = index.get(&target) else { continue };
                let row_of: HashMap<&Monomial<A::Mode>, usize> =
                    t.basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
                let mut entries = Vec::new();
                for (j, b) in s.basis.iter().enumerate() {
                    let img = self.reduce(&self.module.act(&mode, &LinComb::basis(b.clone())));
                    for (mono, c) in img.iter() {
                        entries.push((row_of[mono], j, c.clone()));
                    }
                }
                out.push(ActionMatrix {
                    mode: mode.clone(),
                    source: (s.level, s.charge),
                    target,
                    matrix: SparseRationalMatrix::from_triplets(t.basis.len(), s.basis.len(), entries),
                });
            }
        }
        out
    }
}

/// Check that a mode action is a representation of the super bracket:
/// `a(b v) − (−1)^{|a||b|} b(a v) = [a,b]·v` on every given vector.
/// Returns the first failing `(a, b, v)`.
pub fn first_bracket_violation<A: ModeAlgebra>(
    module: &PbwModule<A>,
    modes: &[A::Mode],
    vectors: &[PbwVector<A::Mode>],
) -> Option<(A::Mode, A::Mode, PbwVector<A::Mode>)> {
    let alg = module.algebra();
    for a in modes {
        for b in modes {
            let sign = alg.parity(a).koszul(alg.parity(b));
            let br = alg.bracket(a, b);
            for v in vectors {
                let lhs = module.act(a, &module.act(b, v)).sub(&module.act(b, &module.act(a, v)).scaled(&sign));
                let rhs = module.act_element(&br, v);
                if lhs != rhs {
                    return Some((a.clone(), b.clone(), v.clone()));
                }
            }
        }
    }
    None
}
