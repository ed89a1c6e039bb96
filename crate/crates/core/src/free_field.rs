//! Charged fermions `F` and the rank-one lattice algebra `V_L` with
//! `⟨α,α⟩ = ν` (the case `ν = −1` is `F₋₁`).

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::n2::Parity;
use crate::rational::{q, qf, ExactRational, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Species {
    Plus,
    Minus,
}

impl Species {
    pub fn opposite(self) -> Species {
        match self {
            Species::Plus => Species::Minus,
            Species::Minus => Species::Plus,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Species::Plus => 1,
            Species::Minus => -1,
        }
    }
}

/// `ψ⁺_{a₁}⋯ψ⁺_{a_p} ψ⁻_{b₁}⋯ψ⁻_{b_q}·vac` with `a₁ < ⋯ < a_p < 0` and
/// `b₁ < ⋯ < b_q < 0`; the sign of a state is fixed by this order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FermionState {
    pub plus: Vec<HalfInt>,
    pub minus: Vec<HalfInt>,
}

impl FermionState {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Build from creation indices in any order, or `None` if a mode repeats
    /// or is not a negative half-odd integer. Returns the reordering sign.
    pub fn from_modes(plus: &[HalfInt], minus: &[HalfInt]) -> Option<(ExactRational, FermionState)> {
        let mut v = LinComb::basis(FermionState::vacuum());
        for (s, list) in [(Species::Minus, minus), (Species::Plus, plus)] {
            for &i in list.iter().rev() {
                if i.is_integer() || !i.is_negative() {
                    return None;
                }
                v = fermion_act(s, i, &v).ok()?;
            }
        }
        let (st, c) = v.into_terms().into_iter().next()?;
        Some((c, st))
    }

    pub fn weight(&self) -> HalfInt {
        -self.plus.iter().chain(&self.minus).copied().sum::<HalfInt>()
    }

    pub fn charge(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }

    pub fn parity(&self) -> Parity {
        Parity::from_odd((self.plus.len() + self.minus.len()) % 2 == 1)
    }

    fn list(&self, s: Species) -> &Vec<HalfInt> {
        match s {
            Species::Plus => &self.plus,
            Species::Minus => &self.minus,
        }
    }

    fn list_mut(&mut self, s: Species) -> &mut Vec<HalfInt> {
        match s {
            Species::Plus => &mut self.plus,
            Species::Minus => &mut self.minus,
        }
    }

    /// Number of modes standing left of slot `pos` in the list of species `s`.
    fn modes_before(&self, s: Species, pos: usize) -> usize {
        match s {
            Species::Plus => pos,
            Species::Minus => self.plus.len() + pos,
        }
    }
}

impl fmt::Debug for FermionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.plus {
            write!(f, "ψ+_{{{i}}}")?;
        }
        for i in &self.minus {
            write!(f, "ψ-_{{{i}}}")?;
        }
        write!(f, "|0>")
    }
}

fn sign_of(count: usize) -> ExactRational {
    if count.is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

fn fermion_act_basis(s: Species, i: HalfInt, st: &FermionState) -> LinComb<FermionState> {
    if i.is_negative() {
        let list = st.list(s);
        match list.binary_search(&i) {
            Ok(_) => LinComb::zero(),
            Err(pos) => {
                let sign = sign_of(st.modes_before(s, pos));
                let mut out = st.clone();
                out.list_mut(s).insert(pos, i);
                LinComb::term(out, sign)
            }
        }
    } else {
        // {ψ^σ_i, ψ^{-σ}_j} = δ_{i+j,0}
        let other = s.opposite();
        match st.list(other).binary_search(&-i) {
            Err(_) => LinComb::zero(),
            Ok(pos) => {
                let sign = sign_of(st.modes_before(other, pos));
                let mut out = st.clone();
                out.list_mut(other).remove(pos);
                LinComb::term(out, sign)
            }
        }
    }
}

/// `ψ^σ_i` on a state vector.
pub fn fermion_act(s: Species, i: HalfInt, v: &LinComb<FermionState>) -> Result<LinComb<FermionState>> {
    if i.is_integer() {
        return Err(Error::InvalidMode(format!("fermion index {i} is not half-odd")));
    }
    Ok(v.map_linear(|st| fermion_act_basis(s, i, st)))
}

/// All Fock states of weight at most `max_weight`, sorted.
pub fn fermion_states(max_weight: HalfInt) -> Vec<FermionState> {
    fn subsets(max: HalfInt) -> Vec<(Vec<HalfInt>, HalfInt)> {
        // strictly increasing lists of negative half-odd integers with |sum| ≤ max
        let mut out = vec![(Vec::new(), HalfInt::ZERO)];
        let mut twice = 1;
        while HalfInt::from_twice(twice) <= max {
            let w = HalfInt::from_twice(twice);
            let extra: Vec<_> = out
                .iter()
                .filter(|(_, s)| *s + w <= max)
                .map(|(l, s)| {
                    let mut l = l.clone();
                    l.insert(0, -w);
                    (l, *s + w)
                })
                .collect();
            out.extend(extra);
            twice += 2;
        }
        out
    }
    let parts = subsets(max_weight);
    let mut out = Vec::new();
    for (p, wp) in &parts {
        for (m, wm) in &parts {
            if *wp + *wm <= max_weight {
                out.push(FermionState { plus: p.clone(), minus: m.clone() });
            }
        }
    }
    out.sort();
    out
}

/// `ι(aⁿ) ⊗ α(−j₁)⋯α(−j_k)·1`; `heis` holds the magnitudes `j`, ascending.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeState {
    pub n: i64,
    pub heis: Vec<u32>,
}

impl LatticeState {
    pub fn new(n: i64, mut heis: Vec<u32>) -> Self {
        heis.sort_unstable();
        LatticeState { n, heis }
    }

    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn bare(n: i64) -> Self {
        LatticeState { n, heis: Vec::new() }
    }

    pub fn heis_level(&self) -> u32 {
        self.heis.iter().sum()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_odd(self.n.rem_euclid(2) == 1)
    }

    fn with_part(&self, j: u32) -> Self {
        let mut heis = self.heis.clone();
        let pos = heis.partition_point(|&x| x <= j);
        heis.insert(pos, j);
        LatticeState { n: self.n, heis }
    }
}

impl fmt::Debug for LatticeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ι(a^{})", self.n)?;
        for j in self.heis.iter().rev() {
            write!(f, "α(-{j})")?;
        }
        Ok(())
    }
}

/// Schur polynomial `p_r` as a combination of monomials `x_{j₁}⋯x_{j_k}`,
/// each keyed by its ascending list of subscripts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurPolynomial {
    pub r: u32,
    pub terms: LinComb<Vec<u32>>,
}

impl SchurPolynomial {
    /// Evaluate at `x_j ↦ values[j-1]` for a commutative numeric substitution.
    pub fn evaluate(&self, values: &[ExactRational]) -> ExactRational {
        let mut total = ExactRational::zero();
        for (mono, c) in self.terms.iter() {
            let mut t = c.clone();
            for &j in mono {
                t *= &values[j as usize - 1];
            }
            total += t;
        }
        total
    }
}

/// `exp(Σ x_n yⁿ/n) = Σ p_r y^r` via `r·p_r = Σ_{k=1}^{r} x_k p_{r−k}`.
pub fn schur_poly(r: u32) -> SchurPolynomial {
    let mut table: Vec<LinComb<Vec<u32>>> = vec![LinComb::basis(Vec::new())];
    for rr in 1..=r {
        let mut next = LinComb::zero();
        for k in 1..=rr {
            let prev = &table[(rr - k) as usize];
            let shifted = prev.map_labels(|mono| {
                let mut m = mono.clone();
                let pos = m.partition_point(|&x| x <= k);
                m.insert(pos, k);
                m
            });
            next.add_assign(&shifted);
        }
        table.push(next.scaled(&qf(1, rr as i64)));
    }
    SchurPolynomial { r, terms: table.pop().expect("table is nonempty") }
}

/// The lattice algebra with its working window.
#[derive(Clone, Debug)]
pub struct Lattice {
    /// `⟨α, α⟩`, an odd integer.
    pub nu: i64,
    pub max_exponent: i64,
    pub max_depth: u32,
}

impl Default for Lattice {
    fn default() -> Self {
        Lattice { nu: -1, max_exponent: 6, max_depth: 12 }
    }
}

pub type LatticeVector = LinComb<LatticeState>;

impl Lattice {
    pub fn with_nu(nu: i64) -> Self {
        Lattice { nu, ..Lattice::default() }
    }

    fn check(&self, st: &LatticeState) -> Result<()> {
        if st.n.abs() > self.max_exponent || st.heis_level() > self.max_depth {
            return Err(Error::WindowExceeded(format!("{st:?}")));
        }
        Ok(())
    }

    /// `½n²ν + Σ j`.
    pub fn l0_weight(&self, st: &LatticeState) -> ExactRational {
        qf(st.n * st.n * self.nu, 2) + q(st.heis_level() as i64)
    }

    fn heis_basis(&self, n: i64, st: &LatticeState) -> Result<LatticeVector> {
        if n < 0 {
            let out = st.with_part((-n) as u32);
            self.check(&out)?;
            return Ok(LinComb::basis(out));
        }
        if n == 0 {
            return Ok(LinComb::term(st.clone(), q(st.n * self.nu)));
        }
        // [α(a), α(b)] = aνδ_{a+b,0}
        let j = n as u32;
        let mult = st.heis.iter().filter(|&&x| x == j).count() as i64;
        if mult == 0 {
            return Ok(LinComb::zero());
        }
        let mut heis = st.heis.clone();
        let pos = heis.iter().position(|&x| x == j).expect("multiplicity is positive");
        heis.remove(pos);
        Ok(LinComb::term(LatticeState { n: st.n, heis }, q(mult * n * self.nu)))
    }

    /// `α(n)` on a state vector.
    pub fn heisenberg_act(&self, n: i64, v: &LatticeVector) -> Result<LatticeVector> {
        let mut out = LinComb::zero();
        for (st, c) in v.iter() {
            out.add_scaled(&self.heis_basis(n, st)?, c);
        }
        Ok(out)
    }

    /// `p(c·α(−1), c·α(−2), …)` multiplied onto a state.
    fn apply_creation(&self, poly: &SchurPolynomial, scale: &ExactRational, st: &LatticeState) -> Result<LatticeVector> {
        let mut out = LinComb::zero();
        for (mono, coeff) in poly.terms.iter() {
            let mut s = st.clone();
            let mut c = coeff.clone();
            for &j in mono {
                s = s.with_part(j);
                c *= scale;
            }
            self.check(&s)?;
            out.add_term(s, c);
        }
        Ok(out)
    }

    /// `p(c·α(1), c·α(2), …)` applied to a state.
    fn apply_annihilation(&self, poly: &SchurPolynomial, scale: &ExactRational, st: &LatticeState) -> Result<LatticeVector> {
        let mut out = LinComb::zero();
        for (mono, coeff) in poly.terms.iter() {
            let mut v = LinComb::term(st.clone(), coeff.clone());
            for &j in mono {
                v = self.heisenberg_act(j as i64, &v)?.scaled(scale);
                if v.is_zero() {
                    break;
                }
            }
            out.add_assign(&v);
        }
        Ok(out)
    }

    /// Largest `i` with `ι(a^k)_i` possibly nonzero on `st`.
    pub fn vertex_max_mode(&self, k: i64, st: &LatticeState) -> i64 {
        -1 - k * st.n * self.nu + st.heis_level() as i64
    }

    /// `ι(a^k)_i` on one basis state, from
    /// `Y(ι(a^k),z) = z^{klν} E⁻(−kα,z) E⁺(−kα,z) ι(a^k)` with a trivial cocycle.
    pub fn vertex_mode_basis(&self, k: i64, i: i64, st: &LatticeState) -> Result<LatticeVector> {
        let mut out = LinComb::zero();
        if i > self.vertex_max_mode(k, st) {
            return Ok(out);
        }
        let shift = k * st.n * self.nu;
        let target = LatticeState { n: st.n + k, heis: Vec::new() };
        self.check(&target)?;
        for s in 0..=st.heis_level() {
            let r = -i - 1 - shift + s as i64;
            if r < 0 {
                continue;
            }
            let lowered = self.apply_annihilation(&schur_poly(s), &q(-k), st)?;
            for (p, c) in lowered.iter() {
                let moved = LatticeState { n: st.n + k, heis: p.heis.clone() };
                out.add_scaled(&self.apply_creation(&schur_poly(r as u32), &q(k), &moved)?, c);
            }
        }
        Ok(out)
    }

    pub fn lattice_vertex_mode(&self, k: i64, i: i64, v: &LatticeVector) -> Result<LatticeVector> {
        let mut out = LinComb::zero();
        for (st, c) in v.iter() {
            out.add_scaled(&self.vertex_mode_basis(k, i, st)?, c);
        }
        Ok(out)
    }

    /// `p_r(cα(−1), cα(−2), …)·ι(aⁿ)`.
    pub fn schur_state(&self, r: u32, scale: i64, n: i64) -> Result<LatticeVector> {
        self.apply_creation(&schur_poly(r), &q(scale), &LatticeState::bare(n))
    }

    /// Lattice states with `|n| ≤ max_n` and Heisenberg level at most `level`.
    pub fn states(&self, max_n: i64, level: u32) -> Vec<LatticeState> {
        fn partitions(total: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if total == 0 {
                let mut p = acc.clone();
                p.sort_unstable();
                out.push(p);
                return;
            }
            for part in (1..=max_part.min(total)).rev() {
                acc.push(part);
                partitions(total - part, part, acc, out);
                acc.pop();
            }
        }
        let mut parts = Vec::new();
        for l in 0..=level {
            partitions(l, l, &mut Vec::new(), &mut parts);
        }
        let mut out = Vec::new();
        for n in -max_n..=max_n {
            for p in &parts {
                out.push(LatticeState { n, heis: p.clone() });
            }
        }
        out.sort();
        out
    }
}

pub fn l0_weight(st: &LatticeState) -> ExactRational {
    Lattice::default().l0_weight(st)
}

pub fn heisenberg_act(n: i64, st: &LatticeState) -> Result<LatticeVector> {
    Lattice::default().heisenberg_act(n, &LinComb::basis(st.clone()))
}

pub fn lattice_vertex_mode(k: i64, i: i64, st: &LatticeState) -> Result<LatticeVector> {
    Lattice::default().vertex_mode_basis(k, i, st)
}

/// One identity of the `F₋₁` product table.
#[derive(Clone, Debug)]
pub struct ClauseCheck {
    pub clause: char,
    pub statement: String,
    pub pass: bool,
}

/// Every identity of the `F₋₁` product table with `e = ι(a)`, `f = ι(a⁻¹)`,
/// `k = α(−1)·1`, vanishing ranges checked for indices up to 6.
pub fn verify_prop_fminus() -> Result<Vec<ClauseCheck>> {
    let lat = Lattice::default();
    let vac = LinComb::basis(LatticeState::vacuum());
    let bare = |n: i64| LinComb::basis(LatticeState::bare(n));
    let k_state = LinComb::basis(LatticeState::new(0, vec![1]));
    let mut out = Vec::new();
    let mut push = |clause: char, statement: String, pass: bool| out.push(ClauseCheck { clause, statement, pass });

    for (clause, a, b, kname) in [('a', 1, -1, "e_i f"), ('b', -1, 1, "f_i e")] {
        let vanish = (-1..=6).all(|i| lat.lattice_vertex_mode(a, i, &bare(b)).is_ok_and(|v| v.is_zero()));
        push(clause, format!("{kname} = 0 for -1 <= i <= 6"), vanish);
        let m2 = lat.lattice_vertex_mode(a, -2, &bare(b))?;
        push(clause, format!("{} = 1", kname.replace("_i", "_{-2}")), m2 == vac);
        let m3 = lat.lattice_vertex_mode(a, -3, &bare(b))?;
        let want = if a == 1 { k_state.clone() } else { k_state.neg() };
        let sign = if a == 1 { "" } else { "-" };
        push(clause, format!("{} = {sign}k", kname.replace("_i", "_{-3}")), m3 == want);
    }
    for (clause, a, name) in [('c', 1, "e_i e"), ('d', -1, "f_i f")] {
        let vanish = (1..=6).all(|i| lat.lattice_vertex_mode(a, i, &bare(a)).is_ok_and(|v| v.is_zero()));
        push(clause, format!("{name} = 0 for 1 <= i <= 6"), vanish);
        let zero = lat.lattice_vertex_mode(a, 0, &bare(a))?;
        let sq = if a == 1 { "e_0 e = e^2" } else { "f_0 f = f^2" };
        push(clause, sq.to_string(), zero == bare(2 * a));
    }
    for (clause, b, name, scalar) in [('e', 1, "e", -1), ('f', -1, "f", 1)] {
        let vanish = (1..=6).all(|i| lat.heisenberg_act(i, &bare(b)).is_ok_and(|v| v.is_zero()));
        push(clause, format!("k_i {name} = 0 for 1 <= i <= 6"), vanish);
        let zero = lat.heisenberg_act(0, &bare(b))?;
        let s = if scalar < 0 { "-" } else { "" };
        push(clause, format!("k_0 {name} = {s}{name}"), zero == bare(b).scaled(&q(scalar)));
    }
    Ok(out)
}

/// Bare-target products against the Schur generating function for all
/// `|k|, |l| ≤ bound`: zero for `i ≥ −⟨kα,lα⟩`, and
/// `ι(a^k)_{i} ι(a^l) = p_{−i−1−⟨kα,lα⟩}(kα(−1),…) ι(a^{k+l})` below.
/// Returns the first mismatch `(k, l, i)`.
pub fn verify_schur_products(lat: &Lattice, bound: i64, depth: i64) -> Result<Option<(i64, i64, i64)>> {
    for k in -bound..=bound {
        for l in -bound..=bound {
            let pairing = k * l * lat.nu;
            let src = LatticeState::bare(l);
            for i in (-pairing - 1 - depth)..=(-pairing + 2) {
                let got = lat.vertex_mode_basis(k, i, &src)?;
                let want = if i >= -pairing {
                    LinComb::zero()
                } else {
                    lat.schur_state((-i - 1 - pairing) as u32, k, k + l)?
                };
                if got != want {
                    return Ok(Some((k, l, i)));
                }
            }
        }
    }
    Ok(None)
}

/// `Π_k (x_k/k)^{a_k}/a_k!` summed over partitions of `r`: the closed form of `p_r`.
pub fn schur_closed_form(r: u32) -> LinComb<Vec<u32>> {
    fn go(rem: u32, max: u32, acc: &mut Vec<u32>, out: &mut LinComb<Vec<u32>>) {
        if rem == 0 {
            let mut parts = acc.clone();
            parts.sort_unstable();
            let mut c = ExactRational::one();
            let mut i = 0;
            while i < parts.len() {
                let j = parts[i];
                let mult = parts.iter().filter(|&&x| x == j).count();
                for t in 1..=mult {
                    c /= q(j as i64) * q(t as i64);
                }
                i += mult;
            }
            out.add_term(parts, c);
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            acc.push(part);
            go(rem - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = LinComb::zero();
    go(r, r, &mut Vec::new(), &mut out);
    out
}
