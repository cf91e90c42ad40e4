//! The normally nonsingular expansion: Schubert-basis coefficients
//! `λ^{a'}_{i'}` as polynomials in integral and genus symbols.
//!
//! For `l = d' - |a'| > 0`
//!
//! ```text
//! λ^{a'} = G(i', a'') - Σ_{r' < l, r' + r'' <= l} Σ_{b', b''} λ^{b'}_{i'} λ^{b''}_{i''} <cl*>(b', b'')
//! ```
//!
//! with `|b'| = d' - r'`, `|b''| = |a''| - r''`, `(m'', k'', a'')` the
//! complementary profile of `a'` and `i''` the Schubert variety `X_{a''}`.
//! At `l = 0` the coefficient is fixed by the fundamental class.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};
use std::time::Instant;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{BoxSize, BoxedPartition};
use crate::ring::{GrassmannianSpec, HomologyClass};
use crate::symbolic::{OracleTable, SymbolicScalar, UnknownSymbol, VarietyKey};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Schubert(BoxedPartition),
    Named { name: String, dim: usize, class: HomologyClass },
}

/// A subvariety of a Grassmannian together with its fundamental class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedVariety {
    space: GrassmannianSpec,
    descriptor: Descriptor,
}

impl EmbeddedVariety {
    pub fn schubert(a: &BoxedPartition) -> Self {
        EmbeddedVariety {
            space: GrassmannianSpec::new(a.bx()),
            descriptor: Descriptor::Schubert(a.clone()),
        }
    }

    /// A user-declared variety. Its membership in the admissible family is
    /// taken on trust; only the shape of `class` is checked.
    pub fn named(name: &str, space: GrassmannianSpec, dim: usize, class: HomologyClass) -> Result<Self> {
        let invalid = |why: &str| Err(Error::InvalidVariety(format!("{name}: {why}")));
        if name.is_empty() {
            return invalid("empty name");
        }
        if class.space() != space.bx {
            return invalid("fundamental class lives in another Grassmannian");
        }
        if class.is_zero() {
            return invalid("fundamental class is zero");
        }
        if class.terms().any(|(a, _)| a.weight() != dim) {
            return invalid("fundamental class is not homogeneous of the stated dimension");
        }
        Ok(EmbeddedVariety {
            space,
            descriptor: Descriptor::Named { name: name.to_string(), dim, class },
        })
    }

    pub fn space(&self) -> GrassmannianSpec {
        self.space
    }

    pub fn bx(&self) -> BoxSize {
        self.space.bx
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn dim(&self) -> usize {
        match &self.descriptor {
            Descriptor::Schubert(a) => a.weight(),
            Descriptor::Named { dim, .. } => *dim,
        }
    }

    pub fn key(&self) -> VarietyKey {
        match &self.descriptor {
            Descriptor::Schubert(a) => VarietyKey::Schubert(a.clone()),
            Descriptor::Named { name, .. } => VarietyKey::Named(name.clone()),
        }
    }

    pub fn fundamental_class(&self) -> HomologyClass {
        match &self.descriptor {
            Descriptor::Schubert(a) => HomologyClass::schubert(a),
            Descriptor::Named { class, .. } => class.clone(),
        }
    }

    fn top_coefficient(&self, b: &BoxedPartition) -> Q {
        match &self.descriptor {
            Descriptor::Schubert(a) if a == b => Q::one(),
            Descriptor::Schubert(_) => Q::zero(),
            Descriptor::Named { class, .. } => class.coefficient(b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Genus symbols are kept as single unknowns.
    #[default]
    Shallow,
    /// Additionally records the genus sum behind every coefficient.
    Deep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassExpansion {
    pub variety: EmbeddedVariety,
    pub mode: Mode,
    pub coefficients: BTreeMap<BoxedPartition, SymbolicScalar>,
    /// Deep mode only: the genus sum for every `a'` with `k' > 0`.
    pub genus_expressions: BTreeMap<BoxedPartition, SymbolicScalar>,
}

impl ClassExpansion {
    pub fn coefficient(&self, a: &BoxedPartition) -> Option<&SymbolicScalar> {
        self.coefficients.get(a)
    }

    /// Entries in descending lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&BoxedPartition, &SymbolicScalar)> {
        self.coefficients.iter().rev()
    }

    pub fn symbols(&self) -> BTreeSet<UnknownSymbol> {
        self.coefficients
            .values()
            .chain(self.genus_expressions.values())
            .flat_map(SymbolicScalar::symbols)
            .collect()
    }

    /// The class `Σ λ^a [X_a]` once every symbol is assigned.
    pub fn resolve(&self, oracle: &OracleTable) -> Result<HomologyClass> {
        let missing: BTreeSet<UnknownSymbol> = self
            .coefficients
            .values()
            .flat_map(SymbolicScalar::symbols)
            .filter(|s| oracle.get(s).is_none())
            .collect();
        if !missing.is_empty() {
            return Err(Error::UnresolvedSymbols(missing.into_iter().collect()));
        }
        let mut out = HomologyClass::zero(self.variety.bx());
        for (a, c) in &self.coefficients {
            out.add_term(a.clone(), c.resolve(oracle)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, oracle: &OracleTable) -> ClassExpansion {
        let sub = |m: &BTreeMap<BoxedPartition, SymbolicScalar>| {
            m.iter().map(|(a, c)| (a.clone(), c.substitute(oracle))).collect()
        };
        ClassExpansion {
            variety: self.variety.clone(),
            mode: self.mode,
            coefficients: sub(&self.coefficients),
            genus_expressions: sub(&self.genus_expressions),
        }
    }
}

/// Source of the coefficients `λ^b_i` needed by the recursion.
pub trait Lookup {
    fn lambda(&self, variety: &EmbeddedVariety, b: &BoxedPartition) -> Result<SymbolicScalar>;

    /// Called before each summand with an estimate of its size in terms;
    /// an error aborts the running sum.
    fn checkpoint(&self, _variety: &EmbeddedVariety, _work: usize) -> Result<()> {
        Ok(())
    }
}

fn missing(variety: &EmbeddedVariety, b: &BoxedPartition) -> Error {
    Error::MissingExpansion(format!("λ^{{{b}}} of {}", variety.key()))
}

fn table_lambda(exp: &ClassExpansion, variety: &EmbeddedVariety, b: &BoxedPartition) -> Result<SymbolicScalar> {
    match exp.coefficient(b) {
        Some(c) => Ok(c.clone()),
        None if b.weight() > variety.dim() && b.bx() == variety.bx() => Ok(SymbolicScalar::zero()),
        None => Err(missing(variety, b)),
    }
}

/// A fixed collection of already computed expansions.
#[derive(Clone, Debug, Default)]
pub struct ExpansionSet {
    tables: HashMap<(VarietyKey, BoxSize), ClassExpansion>,
}

impl ExpansionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: ClassExpansion) {
        self.tables.insert((e.variety.key(), e.variety.bx()), e);
    }
}

impl Lookup for ExpansionSet {
    fn lambda(&self, variety: &EmbeddedVariety, b: &BoxedPartition) -> Result<SymbolicScalar> {
        let exp = self
            .tables
            .get(&(variety.key(), variety.bx()))
            .ok_or_else(|| missing(variety, b))?;
        table_lambda(exp, variety, b)
    }
}

/// `<cl*>(b', b'')` when the δ-law or the degenerate case decides it.
pub fn delta_integral(bprime: &BoxedPartition, bsecond: &BoxedPartition, boxprime: BoxSize) -> Option<Q> {
    let delta = |eq: bool| Some(if eq { Q::one() } else { Q::zero() });
    if bsecond.bx() == BoxSize::new(0, 0) {
        return delta(bprime.weight() == 0);
    }
    let aprime = bsecond.reconstruct_from_complement(boxprime).ok()?;
    if aprime.weight() != bprime.weight() {
        return None;
    }
    delta(&aprime == bprime)
}

/// `<cl*>(b', b'')` as a scalar: a δ value or an integral symbol.
pub fn integral(bprime: &BoxedPartition, bsecond: &BoxedPartition) -> SymbolicScalar {
    match delta_integral(bprime, bsecond, bprime.bx()) {
        Some(v) => SymbolicScalar::constant(v),
        None => SymbolicScalar::symbol(UnknownSymbol::integral(bprime.clone(), bsecond.clone())),
    }
}

/// `Σ_{b', b''} λ^{b'}_{i'} λ^{b''}_{i''} <cl*>(b', b'')` over `|b'| = w1`, `|b''| = w2`.
fn block_sum(
    iprime: &EmbeddedVariety,
    isecond: &EmbeddedVariety,
    w1: usize,
    w2: usize,
    lookup: &dyn Lookup,
) -> Result<SymbolicScalar> {
    let mut out = SymbolicScalar::zero();
    let right: Vec<(BoxedPartition, SymbolicScalar)> = BoxedPartition::all_of_weight(isecond.bx(), w2)
        .into_iter()
        .map(|b2| lookup.lambda(isecond, &b2).map(|l| (b2, l)))
        .collect::<Result<_>>()?;
    for b1 in BoxedPartition::all_of_weight(iprime.bx(), w1) {
        let l1 = lookup.lambda(iprime, &b1)?;
        if l1.is_zero() {
            continue;
        }
        for (b2, l2) in &right {
            if l2.is_zero() {
                continue;
            }
            let c = integral(&b1, b2);
            if c.is_zero() {
                continue;
            }
            lookup.checkpoint(iprime, out.len() + l1.len() * c.len() * l2.len())?;
            out.add_product(&(&l1 * &c), l2, &Q::one());
        }
    }
    Ok(out)
}

/// The genus of the characteristic subvariety of `(i', i'')`, expanded as a
/// sum over `r = r' + r'' <= l` with `l = d' + d'' - k'm''`.
pub fn genus_expression(iprime: &EmbeddedVariety, isecond: &EmbeddedVariety, lookup: &dyn Lookup) -> Result<SymbolicScalar> {
    let (b1, b2) = (iprime.bx(), isecond.bx());
    if b2.m > b1.m {
        return Err(Error::InvalidVariety(format!(
            "second factor box {b2} is wider than the first factor box {b1}"
        )));
    }
    let (d1, d2) = (iprime.dim(), isecond.dim());
    let Some(l) = (d1 + d2).checked_sub(b1.k * b2.m) else {
        return Ok(SymbolicScalar::zero());
    };
    let mut out = SymbolicScalar::zero();
    for r1 in 0..=l.min(d1) {
        for r2 in 0..=(l - r1).min(d2) {
            out.add_scaled(&block_sum(iprime, isecond, d1 - r1, d2 - r2, lookup)?, &Q::one());
        }
    }
    Ok(out)
}

/// `(i'', l, genus symbol)` for the coefficient at `a'`.
fn recursion_data(iprime: &EmbeddedVariety, aprime: &BoxedPartition) -> Result<(EmbeddedVariety, usize)> {
    if aprime.bx() != iprime.bx() {
        return Err(Error::BoxMismatch(aprime.bx(), iprime.bx()));
    }
    let l = iprime.dim().checked_sub(aprime.weight()).ok_or_else(|| {
        Error::InvalidVariety(format!("{aprime} exceeds the dimension {} of {}", iprime.dim(), iprime.key()))
    })?;
    let profile = aprime.complementary_profile()?;
    Ok((EmbeddedVariety::schubert(&profile.complement), l))
}

pub fn genus_symbol(iprime: &EmbeddedVariety, aprime: &BoxedPartition) -> Result<UnknownSymbol> {
    let profile = aprime.complementary_profile()?;
    Ok(UnknownSymbol::genus(iprime.key(), profile.complement))
}

/// The correction terms `r' < l` subtracted from the genus symbol.
pub fn correction_sum(iprime: &EmbeddedVariety, aprime: &BoxedPartition, lookup: &dyn Lookup) -> Result<SymbolicScalar> {
    let (isecond, l) = recursion_data(iprime, aprime)?;
    let (d1, d2) = (iprime.dim(), isecond.dim());
    let mut out = SymbolicScalar::zero();
    for r1 in 0..l {
        for r2 in 0..=(l - r1).min(d2) {
            out.add_scaled(&block_sum(iprime, &isecond, d1 - r1, d2 - r2, lookup)?, &Q::one());
        }
    }
    Ok(out)
}

/// The `(r, r', r'') = (l, l, 0)` block of the genus sum.
pub fn isolated_term(iprime: &EmbeddedVariety, aprime: &BoxedPartition, lookup: &dyn Lookup) -> Result<SymbolicScalar> {
    let (isecond, _) = recursion_data(iprime, aprime)?;
    block_sum(iprime, &isecond, aprime.weight(), isecond.dim(), lookup)
}

/// `λ^{a'}_{i'}` from already known lower-order coefficients.
pub fn expand_coefficient(iprime: &EmbeddedVariety, aprime: &BoxedPartition, lookup: &dyn Lookup) -> Result<SymbolicScalar> {
    if aprime.bx() != iprime.bx() {
        return Err(Error::BoxMismatch(aprime.bx(), iprime.bx()));
    }
    if aprime.weight() == iprime.dim() {
        return Ok(SymbolicScalar::constant(iprime.top_coefficient(aprime)));
    }
    let genus = SymbolicScalar::symbol(genus_symbol(iprime, aprime)?);
    Ok(&genus - &correction_sum(iprime, aprime, lookup)?)
}

/// Coefficients of the variety being expanded, backed by the engine for everything else.
struct Partial<'a> {
    engine: &'a ExpansionEngine,
    variety: &'a EmbeddedVariety,
    table: &'a BTreeMap<BoxedPartition, SymbolicScalar>,
}

impl Lookup for Partial<'_> {
    fn lambda(&self, variety: &EmbeddedVariety, b: &BoxedPartition) -> Result<SymbolicScalar> {
        if variety == self.variety {
            return self.table.get(b).cloned().ok_or_else(|| missing(variety, b));
        }
        self.engine.lambda(variety, b)
    }

    fn checkpoint(&self, variety: &EmbeddedVariety, work: usize) -> Result<()> {
        self.engine.check_budget(variety, work)
    }
}

type Slot = Arc<OnceLock<Result<Arc<ClassExpansion>>>>;

#[derive(Clone, Copy, Debug)]
struct Budget {
    deadline: Instant,
    max_terms: usize,
}

/// Memoized double induction over ambient dimension and codimension.
#[derive(Default)]
pub struct ExpansionEngine {
    mode: Mode,
    budget: Option<Budget>,
    memo: RwLock<HashMap<(VarietyKey, BoxSize), Slot>>,
}

impl ExpansionEngine {
    pub fn new(mode: Mode) -> Self {
        ExpansionEngine { mode, budget: None, memo: RwLock::default() }
    }

    /// An engine whose expansions fail with [`Error::BudgetExceeded`] once
    /// `deadline` has passed or a single summand would exceed `max_terms`
    /// terms. Failed expansions stay memoized as failures.
    pub fn with_budget(mode: Mode, deadline: Instant, max_terms: usize) -> Self {
        ExpansionEngine { mode, budget: Some(Budget { deadline, max_terms }), memo: RwLock::default() }
    }

    fn check_budget(&self, iprime: &EmbeddedVariety, work: usize) -> Result<()> {
        let Some(b) = &self.budget else {
            return Ok(());
        };
        if Instant::now() > b.deadline {
            return Err(Error::BudgetExceeded(format!("{}: time limit reached", iprime.key())));
        }
        if work > b.max_terms {
            return Err(Error::BudgetExceeded(format!("{}: a summand of about {work} terms", iprime.key())));
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of memoized expansions.
    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn expand_all(&self, iprime: &EmbeddedVariety) -> Result<Arc<ClassExpansion>> {
        let key = (iprime.key(), iprime.bx());
        let found = self.memo.read().unwrap().get(&key).cloned();
        let slot = match found {
            Some(slot) => slot,
            None => self.memo.write().unwrap().entry(key).or_default().clone(),
        };
        slot.get_or_init(|| self.compute(iprime).map(Arc::new)).clone()
    }

    fn compute(&self, iprime: &EmbeddedVariety) -> Result<ClassExpansion> {
        let bx = iprime.bx();
        let d = iprime.dim();
        if bx.k == 0 && d > 0 {
            return Err(Error::EmptyBox);
        }
        let mut table = BTreeMap::new();
        for l in 0..=d {
            for aprime in BoxedPartition::all_of_weight(bx, d - l) {
                self.check_budget(iprime, 0)?;
                let lookup = Partial { engine: self, variety: iprime, table: &table };
                let c = expand_coefficient(iprime, &aprime, &lookup)?;
                table.insert(aprime, c);
            }
        }
        let mut genus_expressions = BTreeMap::new();
        if self.mode == Mode::Deep && bx.k > 0 {
            let lookup = Partial { engine: self, variety: iprime, table: &table };
            for aprime in table.keys() {
                self.check_budget(iprime, 0)?;
                let (isecond, _) = recursion_data(iprime, aprime)?;
                genus_expressions.insert(aprime.clone(), genus_expression(iprime, &isecond, &lookup)?);
            }
        }
        Ok(ClassExpansion { variety: iprime.clone(), mode: self.mode, coefficients: table, genus_expressions })
    }
}

impl Lookup for ExpansionEngine {
    fn lambda(&self, variety: &EmbeddedVariety, b: &BoxedPartition) -> Result<SymbolicScalar> {
        let exp = self.expand_all(variety)?;
        table_lambda(&exp, variety, b)
    }

    fn checkpoint(&self, variety: &EmbeddedVariety, work: usize) -> Result<()> {
        self.check_budget(variety, work)
    }
}

/// Resolves every coefficient of `iprime`.
pub fn resolve(engine: &ExpansionEngine, iprime: &EmbeddedVariety, oracle: &OracleTable) -> Result<HomologyClass> {
    engine.expand_all(iprime)?.resolve(oracle)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    /// Symbols of the expansion on which the two oracles disagree.
    pub differing_symbols: Vec<UnknownSymbol>,
    /// Coefficients with the same value under both oracles.
    pub matches: Vec<(BoxedPartition, Q)>,
    /// Coefficients whose values differ, with both values.
    pub divergences: Vec<(BoxedPartition, Q, Q)>,
}

impl UniquenessReport {
    pub fn is_equal(&self) -> bool {
        self.divergences.is_empty()
    }

    pub fn first_divergence(&self) -> Option<&(BoxedPartition, Q, Q)> {
        self.divergences.first()
    }
}

/// Resolves the expansion of `iprime` under two oracles and compares the results.
pub fn uniqueness_check(
    engine: &ExpansionEngine,
    iprime: &EmbeddedVariety,
    oracle_a: &OracleTable,
    oracle_b: &OracleTable,
) -> Result<UniquenessReport> {
    let exp = engine.expand_all(iprime)?;
    let symbols = exp.symbols();
    let differing_symbols: Vec<UnknownSymbol> = oracle_a
        .disagreements(oracle_b)
        .into_iter()
        .filter(|s| symbols.contains(s))
        .collect();
    let mut report = UniquenessReport { differing_symbols, matches: Vec::new(), divergences: Vec::new() };
    for (a, c) in exp.entries() {
        let (x, y) = (c.resolve(oracle_a)?, c.resolve(oracle_b)?);
        if x == y {
            report.matches.push((a.clone(), x));
        } else {
            report.divergences.push((a.clone(), x, y));
        }
    }
    Ok(report)
}
