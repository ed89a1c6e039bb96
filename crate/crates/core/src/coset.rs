//! The Kazama-Suzuki embedding `L_c ↪ F ⊗ L(m,0)` and its reverse
//! `L(m,0) ↪ L_c ⊗ F₋₁`, checked mode by mode.

use std::fmt;

use num_traits::Zero;

use crate::affine::{affine_bracket, affine_modes_within, AffineMode, AffineVacuumModule, Sl2};
use crate::classification::central_charge;
use crate::error::{Error, Result};
use crate::free_field::{fermion_act, fermion_states, ClauseCheck, FermionState, Lattice, LatticeState, Species};
use crate::lincomb::LinComb;
use crate::n2::{self, N2Family, N2Mode, Parity};
use crate::pbw::{GradedQuotient, Monomial};
use crate::rational::{fmt_rational, q, qf, ExactRational, HalfInt};
use crate::verma::{HighestWeightN2, N2HighestWeightAlgebra, VermaModule};
use crate::vertex::{tensor_derivative, Field, TensorCalculus, TensorField, TensorVector, VertexSpace};

/// The charged fermions, generated by `ψ±(z)` with `(ψ±)_n = ψ±_{n+1/2}`.
pub struct FermionSpace;

impl VertexSpace for FermionSpace {
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

/// `M(m,0)` generated by the currents `e(z), h(z), f(z)`.
pub struct AffineSpace {
    pub module: AffineVacuumModule,
}

impl VertexSpace for AffineSpace {
    type Gen = Sl2;
    type State = Monomial<AffineMode>;

    fn vacuum(&self) -> Self::State {
        Monomial::vacuum()
    }

    fn gen_parity(&self, _: &Sl2) -> Parity {
        Parity::Even
    }

    fn state_parity(&self, _: &Self::State) -> Parity {
        Parity::Even
    }

    fn gen_mode(&self, g: &Sl2, n: i64, s: &Self::State) -> Result<LinComb<Self::State>> {
        Ok(self.module.act(&AffineMode::X(*g, n), &LinComb::basis(s.clone())))
    }

    fn gen_max_mode(&self, _: &Sl2, s: &Self::State) -> i64 {
        self.module.pbw().weight(s).0.floor()
    }
}

/// Generating fields of the N=2 algebra: `G±(z) = Σ G±_r z^{−r−3/2}`,
/// `T(z) = Σ T_n z^{−n−1}`, `L(z) = Σ L_n z^{−n−2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum N2Field {
    L,
    T,
    Gplus,
    Gminus,
}

impl N2Field {
    /// The algebra mode behind the `n`-th field mode.
    pub fn mode(self, n: i64) -> N2Mode {
        match self {
            N2Field::L => N2Mode::l(n - 1),
            N2Field::T => N2Mode::t(n),
            N2Field::Gplus => N2Mode::gp(2 * n - 1),
            N2Field::Gminus => N2Mode::gm(2 * n - 1),
        }
    }
}

/// A highest-weight N=2 module viewed as a module for the generating fields.
pub struct N2Space {
    pub module: VermaModule,
}

impl VertexSpace for N2Space {
    type Gen = N2Field;
    type State = Monomial<N2Mode>;

    fn vacuum(&self) -> Self::State {
        Monomial::vacuum()
    }

    fn gen_parity(&self, g: &N2Field) -> Parity {
        Parity::from_odd(matches!(g, N2Field::Gplus | N2Field::Gminus))
    }

    fn state_parity(&self, s: &Self::State) -> Parity {
        self.module.pbw().parity_of(s)
    }

    fn gen_mode(&self, g: &N2Field, n: i64, s: &Self::State) -> Result<LinComb<Self::State>> {
        Ok(self.module.act(&g.mode(n), &LinComb::basis(s.clone())))
    }

    fn gen_max_mode(&self, g: &N2Field, s: &Self::State) -> i64 {
        let level = self.module.pbw().weight(s).0;
        match g {
            N2Field::L => level.floor() + 1,
            N2Field::T => level.floor(),
            N2Field::Gplus | N2Field::Gminus => (level + HalfInt::from_twice(1)).floor(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeGen {
    /// `α(z)`, the field of `k = α(−1)·1`
    Alpha,
    /// `Y(ι(a^k), z)`
    Iota(i64),
}

pub struct LatticeSpace {
    pub lattice: Lattice,
}

impl VertexSpace for LatticeSpace {
    type Gen = LatticeGen;
    type State = LatticeState;

    fn vacuum(&self) -> LatticeState {
        LatticeState::vacuum()
    }

    fn gen_parity(&self, g: &LatticeGen) -> Parity {
        match g {
            LatticeGen::Alpha => Parity::Even,
            LatticeGen::Iota(k) => Parity::from_odd(k.rem_euclid(2) == 1),
        }
    }

    fn state_parity(&self, s: &LatticeState) -> Parity {
        s.parity()
    }

    fn gen_mode(&self, g: &LatticeGen, n: i64, s: &LatticeState) -> Result<LinComb<LatticeState>> {
        let v = LinComb::basis(s.clone());
        match g {
            LatticeGen::Alpha => self.lattice.heisenberg_act(n, &v),
            LatticeGen::Iota(k) => self.lattice.lattice_vertex_mode(*k, n, &v),
        }
    }

    fn gen_max_mode(&self, g: &LatticeGen, s: &LatticeState) -> i64 {
        match g {
            LatticeGen::Alpha => s.heis_level() as i64,
            LatticeGen::Iota(k) => self.lattice.vertex_max_mode(*k, s),
        }
    }
}

/// Outcome of checking `[A,B]v = A(Bv) − (−1)^{|A||B|}B(Av)` over a grid.
#[derive(Clone, Debug, Default)]
pub struct RelationSweep {
    pub checked: usize,
    pub failure: Option<RelationFailure>,
}

impl RelationSweep {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct RelationFailure {
    pub a: String,
    pub b: String,
    pub state: String,
    pub lhs: String,
    pub rhs: String,
}

/// Check every pair of `modes` (unordered) on every state; stops at the first failure.
pub fn sweep_relations<M, S>(
    modes: &[M],
    states: &[S],
    bracket: impl Fn(&M, &M) -> LinComb<M>,
    parity: impl Fn(&M) -> Parity,
    central: impl Fn(&M) -> Option<ExactRational>,
    act: impl Fn(&M, &LinComb<S>) -> Result<LinComb<S>>,
) -> Result<RelationSweep>
where
    M: Ord + Clone + fmt::Display,
    S: Ord + Clone + fmt::Debug,
{
    let mut sweep = RelationSweep::default();
    for (ia, a) in modes.iter().enumerate() {
        for b in &modes[ia..] {
            let sign = parity(a).koszul(parity(b));
            let br = bracket(a, b);
            for s in states {
                let v = LinComb::basis(s.clone());
                let lhs = act(a, &act(b, &v)?)?.sub(&act(b, &act(a, &v)?)?.scaled(&sign));
                let mut rhs = LinComb::zero();
                for (x, c) in br.iter() {
                    match central(x) {
                        Some(k) => rhs.add_scaled(&v, &(c * k)),
                        None => rhs.add_scaled(&act(x, &v)?, c),
                    }
                }
                sweep.checked += 1;
                if lhs != rhs {
                    sweep.failure = Some(RelationFailure {
                        a: a.to_string(),
                        b: b.to_string(),
                        state: format!("{s:?}"),
                        lhs: format!("{lhs:?}"),
                        rhs: format!("{rhs:?}"),
                    });
                    return Ok(sweep);
                }
            }
        }
    }
    Ok(sweep)
}

/// Which fermion species and `sl₂` root vector enter `τ±`, the sign of `τ⁻`,
/// and the multiple `λ` of `∂j` added to `ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsVariant {
    pub tau_plus: (Species, Sl2),
    pub tau_minus: (Species, Sl2),
    pub tau_minus_sign: i64,
    pub nu_shift: ExactRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpeciesAssignment {
    /// `ψ⁻` in both `τ⁺` and `τ⁻`, exactly as printed
    AsPrinted,
    /// `ψ⁺` in `τ⁺`
    SpeciesSwapped,
}

impl KsVariant {
    pub fn from_assignment(a: SpeciesAssignment) -> Self {
        let sp = match a {
            SpeciesAssignment::AsPrinted => Species::Minus,
            SpeciesAssignment::SpeciesSwapped => Species::Plus,
        };
        KsVariant {
            tau_plus: (sp, Sl2::E),
            tau_minus: (Species::Minus, Sl2::F),
            tau_minus_sign: 1,
            nu_shift: q(0),
        }
    }

    /// All combinations tried by [`resolve_ks`]; the two named assignments come first.
    pub fn catalog() -> Vec<KsVariant> {
        let mut out = vec![
            Self::from_assignment(SpeciesAssignment::AsPrinted),
            Self::from_assignment(SpeciesAssignment::SpeciesSwapped),
        ];
        let pairs: Vec<(Species, Sl2)> = [Species::Minus, Species::Plus]
            .into_iter()
            .flat_map(|s| [Sl2::E, Sl2::F].map(|x| (s, x)))
            .collect();
        for lambda in [q(0), qf(1, 2), qf(-1, 2)] {
            for &tp in &pairs {
                for &tm in &pairs {
                    for sign in [1, -1] {
                        let v = KsVariant { tau_plus: tp, tau_minus: tm, tau_minus_sign: sign, nu_shift: lambda.clone() };
                        if !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        let sp = |s: Species| if s == Species::Plus { "psi+" } else { "psi-" };
        let sign = if self.tau_minus_sign < 0 { "-" } else { "" };
        format!(
            "tau+ = {}(-1/2)1 (x) {}(-1)1; tau- = {sign}2/(m+2) {}(-1/2)1 (x) {}(-1)1; nu + ({})dj",
            sp(self.tau_plus.0),
            self.tau_plus.1.name(),
            sp(self.tau_minus.0),
            self.tau_minus.1.name(),
            fmt_rational(&self.nu_shift)
        )
    }
}

pub type KsField = TensorField<Species, Sl2>;

#[derive(Clone, Debug)]
pub struct KsGenerators {
    pub m: ExactRational,
    pub tau_plus: KsField,
    pub tau_minus: KsField,
    pub j: KsField,
    pub nu: KsField,
}

fn require_level(m: &ExactRational) -> Result<()> {
    if *m == q(-2) {
        Err(Error::LevelExcluded)
    } else {
        Ok(())
    }
}

pub fn build_ks(m: &ExactRational, assignment: SpeciesAssignment) -> Result<KsGenerators> {
    build_ks_variant(m, &KsVariant::from_assignment(assignment))
}

pub fn build_ks_variant(m: &ExactRational, v: &KsVariant) -> Result<KsGenerators> {
    require_level(m)?;
    let m2 = m + q(2);
    let psi = |s: Species| Field::gen(s);
    let cur = |x: Sl2| Field::gen(x);
    let pm = Field::no(Species::Plus, psi(Species::Minus));
    let tau_plus = LinComb::basis((psi(v.tau_plus.0), cur(v.tau_plus.1)));
    let tau_minus = LinComb::term((psi(v.tau_minus.0), cur(v.tau_minus.1)), q(2 * v.tau_minus_sign) / &m2);
    let j: KsField = LinComb::from_iter([
        ((pm.clone(), Field::Vacuum), m / &m2),
        ((Field::Vacuum, cur(Sl2::H)), -(q(1) / &m2)),
    ]);
    let p_dm = Field::no(Species::Plus, Field::deriv(psi(Species::Minus)).expect("generator"));
    let mut nu: KsField = LinComb::from_iter([
        ((Field::Vacuum, Field::no(Sl2::E, cur(Sl2::F))), q(1) / &m2),
        ((p_dm, Field::Vacuum), -(m / &m2)),
        ((pm, cur(Sl2::H)), -(q(1) / &m2)),
    ]);
    nu.add_scaled(&tensor_derivative(&j), &v.nu_shift);
    Ok(KsGenerators { m: m.clone(), tau_plus, tau_minus, j, nu })
}

impl KsGenerators {
    /// `G±_r = τ±_{r+1/2}`, `T_n = j_n`, `L_n = ν_{n+1}`.
    pub fn operator(&self, mode: &N2Mode) -> Option<(&KsField, i64)> {
        let i = mode.index;
        match mode.family {
            N2Family::L => Some((&self.nu, i.floor() + 1)),
            N2Family::T => Some((&self.j, i.floor())),
            N2Family::Gplus => Some((&self.tau_plus, (i + HalfInt::from_twice(1)).floor())),
            N2Family::Gminus => Some((&self.tau_minus, (i + HalfInt::from_twice(1)).floor())),
            N2Family::Central => None,
        }
    }
}

pub type KsState = (FermionState, Monomial<AffineMode>);

/// Basis states of `F ⊗ M(m,0)` with total weight at most `depth`.
pub fn ks_states(space: &AffineSpace, depth: HalfInt) -> Vec<KsState> {
    let mut out = Vec::new();
    for fs in fermion_states(depth) {
        let rest = depth - fs.weight();
        for level in 0..=rest.floor() {
            for basis in space.module.pbw().weight_spaces(HalfInt::int(level)).into_values() {
                for b in basis {
                    out.push((fs.clone(), b));
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct KsReport {
    pub m: ExactRational,
    pub c: ExactRational,
    pub depth: HalfInt,
    pub variant: KsVariant,
    pub sweep: RelationSweep,
}

impl KsReport {
    pub fn passed(&self) -> bool {
        self.sweep.passed()
    }
}

/// All N=2 relations among modes with `|index| ≤ depth`, as operators on
/// states of weight `≤ depth`, with `C ↦ 3m/(m+2)`.
pub fn verify_ks(m: &ExactRational, depth: HalfInt, variant: &KsVariant) -> Result<KsReport> {
    let c = central_charge(m)?;
    let gens = build_ks_variant(m, variant)?;
    let space = AffineSpace { module: AffineVacuumModule::new(m.clone())? };
    let calc = TensorCalculus::new(&FermionSpace, &space);
    let states = ks_states(&space, depth);
    let modes = n2::modes_within(depth);
    let sweep = sweep_relations(
        &modes,
        &states,
        n2::super_bracket,
        n2::parity,
        |x| (x.family == N2Family::Central).then(|| c.clone()),
        |x, v| {
            let (field, n) = gens.operator(x).expect("central handled separately");
            calc.mode(field, n, v)
        },
    )?;
    Ok(KsReport { m: m.clone(), c, depth, variant: variant.clone(), sweep })
}

/// The sweep of [`verify_ks`] on `F ⊗ L(m,0)`: every operator output is
/// reduced modulo the radical of `M(m,0)`.
pub fn verify_ks_irreducible(m: &ExactRational, depth: HalfInt, variant: &KsVariant) -> Result<KsReport> {
    let c = central_charge(m)?;
    let gens = build_ks_variant(m, variant)?;
    let space = AffineSpace { module: AffineVacuumModule::new(m.clone())? };
    let quot = space.module.irreducible(depth.floor());
    let calc = TensorCalculus::new(&FermionSpace, &space);
    let mut states = Vec::new();
    for fs in fermion_states(depth) {
        for sp in quot.spaces() {
            if fs.weight() + sp.level <= depth {
                states.extend(sp.basis.iter().map(|b| (fs.clone(), b.clone())));
            }
        }
    }
    states.sort();
    let modes = n2::modes_within(depth);
    let sweep = sweep_relations(
        &modes,
        &states,
        n2::super_bracket,
        n2::parity,
        |x| (x.family == N2Family::Central).then(|| c.clone()),
        |x, v| {
            let (field, n) = gens.operator(x).expect("central handled separately");
            Ok(reduce_right(&calc.mode(field, n, v)?, |w| quot.reduce(w)))
        },
    )?;
    Ok(KsReport { m: m.clone(), c, depth, variant: variant.clone(), sweep })
}

#[derive(Clone, Debug)]
pub struct KsResolution {
    pub m: ExactRational,
    pub c: ExactRational,
    pub depth: HalfInt,
    /// Every catalog entry with whether it survived.
    pub tried: Vec<(KsVariant, bool)>,
    /// Full reports for the variants that passed screening.
    pub reports: Vec<KsReport>,
}

impl KsResolution {
    pub fn passing(&self) -> Vec<&KsVariant> {
        self.reports.iter().filter(|r| r.passed()).map(|r| &r.variant).collect()
    }

    pub fn assignment_passes(&self, a: SpeciesAssignment) -> bool {
        let v = KsVariant::from_assignment(a);
        self.passing().into_iter().any(|p| *p == v)
    }
}

/// Screen the whole catalog at depth 1, then run the full sweep on survivors.
pub fn resolve_ks(m: &ExactRational, depth: HalfInt) -> Result<KsResolution> {
    let c = central_charge(m)?;
    let screen = HalfInt::int(1).min(depth);
    let mut tried = Vec::new();
    let mut reports = Vec::new();
    for v in KsVariant::catalog() {
        let quick = verify_ks(m, screen, &v)?;
        let full = if quick.passed() && screen < depth { verify_ks(m, depth, &v)? } else { quick };
        tried.push((v, full.passed()));
        if full.passed() {
            reports.push(full);
        }
    }
    Ok(KsResolution { m: m.clone(), c, depth, tried, reports })
}

pub type AntiKsField = TensorField<N2Field, LatticeGen>;
pub type AntiKsState = (Monomial<N2Mode>, LatticeState);

#[derive(Clone, Debug)]
pub struct AntiKsGenerators {
    pub m: ExactRational,
    /// `+1` for `y` exactly as printed.
    pub y_sign: i64,
    pub x: AntiKsField,
    pub y: AntiKsField,
    pub h: AntiKsField,
}

pub fn build_antiks(m: &ExactRational) -> Result<AntiKsGenerators> {
    build_antiks_with_sign(m, 1)
}

/// `x = G⁺_{−3/2}1 ⊗ f`, `y = ±(m+2)/2 G⁻_{−3/2}1 ⊗ e`,
/// `h = −m 1 ⊗ α(−1)1 + (m+2) T_{−1}1 ⊗ 1`.
pub fn build_antiks_with_sign(m: &ExactRational, y_sign: i64) -> Result<AntiKsGenerators> {
    require_level(m)?;
    let m2 = m + q(2);
    let x = LinComb::basis((Field::gen(N2Field::Gplus), Field::gen(LatticeGen::Iota(-1))));
    let y = LinComb::term((Field::gen(N2Field::Gminus), Field::gen(LatticeGen::Iota(1))), q(y_sign) * &m2 / q(2));
    let h = LinComb::from_iter([
        ((Field::Vacuum, Field::gen(LatticeGen::Alpha)), -m.clone()),
        ((Field::gen(N2Field::T), Field::Vacuum), m2),
    ]);
    Ok(AntiKsGenerators { m: m.clone(), y_sign, x, y, h })
}

impl AntiKsGenerators {
    pub fn field(&self, x: Sl2) -> &AntiKsField {
        match x {
            Sl2::E => &self.x,
            Sl2::H => &self.h,
            Sl2::F => &self.y,
        }
    }
}

/// Lattice window wide enough for products of two modes at sweep depth.
fn antiks_lattice() -> Lattice {
    Lattice { nu: -1, max_exponent: 8, max_depth: 40 }
}

/// Apply `reduce` to the right tensor factor.
fn reduce_right<A: Ord + Clone, B: Ord + Clone>(
    v: &TensorVector<A, B>,
    reduce: impl Fn(&LinComb<B>) -> LinComb<B>,
) -> TensorVector<A, B> {
    let mut by_left: std::collections::BTreeMap<A, LinComb<B>> = Default::default();
    for ((a, b), c) in v.iter() {
        by_left.entry(a.clone()).or_default().add_term(b.clone(), c.clone());
    }
    let mut out = LinComb::zero();
    for (a, part) in by_left {
        for (b, c) in reduce(&part).iter() {
            out.add_term((a.clone(), b.clone()), c.clone());
        }
    }
    out
}

/// Apply `reduce` to the left tensor factor.
fn reduce_left<A: Ord + Clone, B: Ord + Clone>(
    v: &TensorVector<A, B>,
    reduce: impl Fn(&LinComb<A>) -> LinComb<A>,
) -> TensorVector<A, B> {
    let swapped: TensorVector<B, A> = v.map_labels(|(a, b)| (b.clone(), a.clone()));
    reduce_right(&swapped, reduce).map_labels(|(b, a)| (a.clone(), b.clone()))
}

#[derive(Clone, Debug)]
pub struct AntiKsReport {
    pub m: ExactRational,
    pub c: ExactRational,
    pub y_sign: i64,
    pub depth: HalfInt,
    pub clauses: Vec<ClauseCheck>,
    pub sweep: RelationSweep,
}

impl AntiKsReport {
    /// Every clause except the printed `h(0)y = 0`, which is checked separately.
    pub fn lemma_passed(&self) -> bool {
        self.clauses.iter().filter(|c| !c.statement.starts_with("printed")).all(|c| c.pass)
    }

    pub fn passed(&self) -> bool {
        self.lemma_passed() && self.sweep.passed()
    }
}

/// State identities among `x, y, h` in `V_c ⊗ F₋₁`, then the affine brackets
/// at level `m` as operators on `M_{0,0,c} ⊗ F₋₁` states up to `depth`.
pub fn verify_antiks(m: &ExactRational, depth: HalfInt, y_sign: i64) -> Result<AntiKsReport> {
    let c = central_charge(m)?;
    let gens = build_antiks_with_sign(m, y_sign)?;
    let left = N2Space { module: VermaModule::new(HighestWeightN2::vacuum(c.clone())) };
    let right = LatticeSpace { lattice: antiks_lattice() };
    let calc = TensorCalculus::new(&left, &right);
    let quot = left.module.vacuum_quotient(depth)?;
    let reduce = |v: &TensorVector<_, _>| reduce_left(v, |u| quot.reduce(u));

    let xs = calc.state(&gens.x)?;
    let ys = calc.state(&gens.y)?;
    let hs = calc.state(&gens.h)?;
    let one = calc.vacuum();
    let top = 6;
    let mut clauses = Vec::new();
    let mut check = |clause: char, statement: &str, pass: Result<bool>| -> Result<()> {
        clauses.push(ClauseCheck { clause, statement: statement.to_string(), pass: pass? });
        Ok(())
    };
    let apply = |f: &AntiKsField, n: i64, v: &TensorVector<_, _>| -> Result<TensorVector<_, _>> {
        Ok(reduce(&calc.mode(f, n, v)?))
    };
    let vanish = |f: &AntiKsField, v: &TensorVector<_, _>, from: i64| -> Result<bool> {
        for n in from..=top {
            if !apply(f, n, v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    check('a', "x(n)x = 0 for 0 <= n <= 6", vanish(&gens.x, &xs, 0))?;
    check('a', "y(n)y = 0 for 0 <= n <= 6", vanish(&gens.y, &ys, 0))?;
    check('b', "x(n)y = 0 for 2 <= n <= 6", vanish(&gens.x, &ys, 2))?;
    check('b', "x(1)y = m 1", apply(&gens.x, 1, &ys).map(|v| v == one.scaled(m)))?;
    check('b', "x(0)y = h", apply(&gens.x, 0, &ys).map(|v| v == reduce(&hs)))?;
    check('c', "h(n)x = 0 for 1 <= n <= 6", vanish(&gens.h, &xs, 1))?;
    check('c', "h(0)x = 2x", apply(&gens.h, 0, &xs).map(|v| v == reduce(&xs).scaled(&q(2))))?;
    check('d', "h(n)y = 0 for 1 <= n <= 6", vanish(&gens.h, &ys, 1))?;
    check('d', "h(0)y = -2y", apply(&gens.h, 0, &ys).map(|v| v == reduce(&ys).scaled(&q(-2))))?;
    check('e', "h(n)h = 0 for 2 <= n <= 6", vanish(&gens.h, &hs, 2))?;
    check('e', "h(1)h = 2m 1", apply(&gens.h, 1, &hs).map(|v| v == one.scaled(&(q(2) * m))))?;
    check('e', "h(0)h = 0", apply(&gens.h, 0, &hs).map(|v| v.is_zero()))?;
    check('e', "printed: h(0)y = 0", apply(&gens.h, 0, &ys).map(|v| v.is_zero()))?;

    let states = antiks_states(&quot, depth);
    let modes = affine_modes_within(depth.floor());
    let sweep = sweep_relations(
        &modes,
        &states,
        affine_bracket,
        |_| Parity::Even,
        |x| (*x == AffineMode::K).then(|| m.clone()),
        |x, v| match x {
            AffineMode::X(r, n) => calc.mode(gens.field(*r), *n, v),
            AffineMode::K => Ok(v.scaled(m)),
        },
    )?;
    Ok(AntiKsReport { m: m.clone(), c, y_sign, depth, clauses, sweep })
}

/// `V_c` representatives of level `ℓ` tensored with lattice states
/// `ι(aⁿ) ⊗ p`, `|n| ≤ 1`, Heisenberg level at most `depth − ℓ`.
pub fn antiks_states(quot: &GradedQuotient<'_, N2HighestWeightAlgebra>, depth: HalfInt) -> Vec<AntiKsState> {
    let lattice = antiks_lattice();
    let mut out = Vec::new();
    for space in quot.spaces() {
        let rest = (depth - space.level).floor();
        if rest < 0 {
            continue;
        }
        for b in &space.basis {
            for w in lattice.states(1, rest as u32) {
                out.push((b.clone(), w));
            }
        }
    }
    out.sort();
    out
}

/// Both normalizations of `y`, printed first.
pub fn resolve_antiks(m: &ExactRational, depth: HalfInt) -> Result<Vec<AntiKsReport>> {
    Ok(vec![verify_antiks(m, depth, 1)?, verify_antiks(m, depth, -1)?])
}

/// `(h, q) = (γ/(2(m+2)) − β²/(4(m+2)), −β/(m+2))`.
pub fn ks_highest_weight(gamma: &ExactRational, beta: &ExactRational, m: &ExactRational) -> Result<(ExactRational, ExactRational)> {
    require_level(m)?;
    let m2 = m + q(2);
    let h = gamma / (q(2) * &m2) - beta * beta / (q(4) * &m2);
    let qq = -(beta / &m2);
    Ok((h, qq))
}

/// `2(m+2)h + ½(m+2)²q²`.
pub fn casimir_scalar(h: &ExactRational, qq: &ExactRational, m: &ExactRational) -> ExactRational {
    let m2 = m + q(2);
    q(2) * &m2 * h + &m2 * &m2 * qq * qq / q(2)
}

#[derive(Clone, Debug)]
pub struct CasimirReport {
    pub h: ExactRational,
    pub q: ExactRational,
    pub m: ExactRational,
    pub y_sign: i64,
    pub expected: ExactRational,
    /// The eigenvalue if `Ω(v⊗1)` is proportional to `v⊗1`.
    pub computed: Option<ExactRational>,
    /// Eigenvalue of `h(0)` on `v⊗1`.
    pub h0_eigenvalue: Option<ExactRational>,
}

impl CasimirReport {
    pub fn passed(&self) -> bool {
        self.computed.as_ref() == Some(&self.expected)
    }
}

fn eigenvalue<K: Ord + Clone>(image: &LinComb<K>, v: &K) -> Option<ExactRational> {
    if image.is_zero() {
        return Some(ExactRational::zero());
    }
    (image.len() == 1).then(|| image.coeff(v)).filter(|c| !c.is_zero())
}

/// `Ω = x(0)y(0) + y(0)x(0) + ½h(0)²` on `v_{h,q,c} ⊗ 1` inside `M_{h,q,c} ⊗ F₋₁`.
pub fn casimir_identity_check(h: &ExactRational, qq: &ExactRational, m: &ExactRational, y_sign: i64) -> Result<CasimirReport> {
    let c = central_charge(m)?;
    let gens = build_antiks_with_sign(m, y_sign)?;
    let left = N2Space { module: VermaModule::new(HighestWeightN2::new(h.clone(), qq.clone(), c)) };
    let right = LatticeSpace { lattice: antiks_lattice() };
    let calc = TensorCalculus::new(&left, &right);
    let v = calc.vacuum();
    let x0 = |w: &TensorVector<_, _>| calc.mode(&gens.x, 0, w);
    let y0 = |w: &TensorVector<_, _>| calc.mode(&gens.y, 0, w);
    let h0 = |w: &TensorVector<_, _>| calc.mode(&gens.h, 0, w);
    let mut omega = x0(&y0(&v)?)?;
    omega.add_assign(&y0(&x0(&v)?)?);
    omega.add_scaled(&h0(&h0(&v)?)?, &qf(1, 2));
    let key = (Monomial::vacuum(), LatticeState::vacuum());
    Ok(CasimirReport {
        h: h.clone(),
        q: qq.clone(),
        m: m.clone(),
        y_sign,
        expected: casimir_scalar(h, qq, m),
        computed: eigenvalue(&omega, &key),
        h0_eigenvalue: eigenvalue(&h0(&v)?, &key),
    })
}

/// The normalization of `y` under which every check passes, if any.
pub fn resolved_y_sign(reports: &[AntiKsReport]) -> Option<i64> {
    reports.iter().find(|r| r.passed()).map(|r| r.y_sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_build_examples() {
        let g = build_ks(&q(1), SpeciesAssignment::AsPrinted).unwrap();
        let (_, c) = g.tau_minus.iter().next().unwrap();
        assert_eq!(*c, qf(2, 3));
        let pm = Field::no(Species::Plus, Field::gen(Species::Minus));
        assert_eq!(g.j.coeff(&(pm, Field::Vacuum)), qf(1, 3));
        assert_eq!(g.j.coeff(&(Field::Vacuum, Field::gen(Sl2::H))), qf(-1, 3));
        let space = AffineSpace { module: AffineVacuumModule::new(q(1)).unwrap() };
        let calc = TensorCalculus::new(&FermionSpace, &space);
        for ((a, b), _) in g.tau_plus.iter() {
            assert_eq!(calc.parity(a, b), Parity::Odd);
        }
        for f in [&g.j, &g.nu] {
            for ((a, b), _) in f.iter() {
                assert_eq!(calc.parity(a, b), Parity::Even);
            }
        }
        assert!(build_ks(&q(-2), SpeciesAssignment::AsPrinted).is_err());
    }

    #[test]
    fn ks_charge_of_generators() {
        // j₀ on ψ^σ ⊗ x(−1) gives (σ·m + charge(x)·(−1/2)·2)/(m+2)… checked numerically
        let m = q(1);
        let space = AffineSpace { module: AffineVacuumModule::new(m.clone()).unwrap() };
        let calc = TensorCalculus::new(&FermionSpace, &space);
        let g = build_ks(&m, SpeciesAssignment::AsPrinted).unwrap();
        let charge = |sp: Species, x: Sl2| {
            let st = calc.state(&LinComb::basis((Field::gen(sp), Field::gen(x)))).unwrap();
            let img = calc.mode(&g.j, 0, &st).unwrap();
            let (k, _) = st.iter().next().unwrap();
            img.coeff(k) / st.coeff(k)
        };
        let m2 = &m + q(2);
        assert_eq!(charge(Species::Plus, Sl2::F), q(1));
        assert_eq!(charge(Species::Minus, Sl2::E), q(-1));
        assert_eq!(charge(Species::Minus, Sl2::E), (-&m - q(2)) / &m2);
        assert_eq!(charge(Species::Plus, Sl2::E), (&m - q(2)) / &m2);
        assert_eq!(charge(Species::Minus, Sl2::F), (-&m + q(2)) / &m2);
    }

    #[test]
    fn highest_weight_transport() {
        assert_eq!(ks_highest_weight(&q(0), &q(0), &q(1)).unwrap(), (q(0), q(0)));
        assert_eq!(ks_highest_weight(&qf(3, 2), &q(1), &q(1)).unwrap(), (qf(1, 6), qf(-1, 3)));
        assert_eq!(ks_highest_weight(&qf(5, 8), &q(0), &qf(1, 2)).unwrap(), (qf(1, 8), q(0)));
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir_scalar(&q(0), &q(0), &q(1)), q(0));
        assert_eq!(casimir_scalar(&qf(1, 6), &qf(-1, 3), &q(1)), qf(3, 2));
        assert_eq!(casimir_scalar(&qf(1, 8), &q(0), &qf(1, 2)), qf(5, 8));
    }

    #[test]
    fn antiks_lemma_examples() {
        let printed = verify_antiks(&q(1), HalfInt::int(1), 1).unwrap();
        let find = |r: &AntiKsReport, s: &str| r.clauses.iter().find(|c| c.statement == s).unwrap().pass;
        // Koszul signs in the tensor product flip the printed normalization of y
        assert!(!find(&printed, "x(1)y = m 1"));
        assert!(find(&printed, "h(0)x = 2x"));
        assert!(find(&printed, "h(1)h = 2m 1"));
        let flipped = verify_antiks(&q(1), HalfInt::int(1), -1).unwrap();
        assert!(flipped.passed(), "{:?}", flipped);
        assert!(!find(&flipped, "printed: h(0)y = 0"));
        assert!(find(&flipped, "h(0)h = 0"));
    }

    #[test]
    fn casimir_identity_small() {
        for (h, qq, m) in [(q(0), q(0), q(1)), (qf(1, 6), qf(-1, 3), q(1)), (qf(1, 8), q(0), qf(1, 2))] {
            let r = casimir_identity_check(&h, &qq, &m, -1).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.h0_eigenvalue, Some((&m + q(2)) * &qq));
        }
    }
}
