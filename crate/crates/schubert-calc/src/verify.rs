//! Brute-force verification suites.
//!
//! Every suite walks a bounded family of cases, checks one identity per case
//! against the Littlewood-Richardson backend and reports the number of cases,
//! the failures and the first counterexample.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::{
    correction_sum, delta_integral, genus_symbol, isolated_term, EmbeddedVariety, ExpansionEngine, Mode,
};
use crate::lr::{pieri, LrCache};
use crate::partitions::{BoxSize, BoxedPartition};
use crate::ring::{
    delta_triple, pair_kind, schubert_product_with, segre_pushforward_with, triple_point_number_with,
    HomologyClass, PairKind,
};
use crate::symbolic::SymbolicScalar;
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerifySuite {
    DeltaLaw,
    Duality,
    BoxExtension,
    Segre,
    Pieri,
    Consistency,
}

impl VerifySuite {
    pub const ALL: [VerifySuite; 6] = [
        VerifySuite::DeltaLaw,
        VerifySuite::Duality,
        VerifySuite::BoxExtension,
        VerifySuite::Segre,
        VerifySuite::Pieri,
        VerifySuite::Consistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifySuite::DeltaLaw => "delta-law",
            VerifySuite::Duality => "duality",
            VerifySuite::BoxExtension => "box-extension",
            VerifySuite::Segre => "segre",
            VerifySuite::Pieri => "pieri",
            VerifySuite::Consistency => "consistency",
        }
    }

    pub fn default_bounds(self) -> Bounds {
        let max_cells = match self {
            VerifySuite::DeltaLaw => 6,
            VerifySuite::Duality => 9,
            VerifySuite::BoxExtension | VerifySuite::Segre => 4,
            VerifySuite::Pieri => 12,
            VerifySuite::Consistency => 9,
        };
        Bounds { max_cells, ..Bounds::default() }
    }
}

impl fmt::Display for VerifySuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VerifySuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VerifySuite::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| Error::Syntax {
            input: s.to_string(),
            message: format!(
                "unknown suite, expected one of {}",
                VerifySuite::ALL.map(VerifySuite::name).join(", ")
            ),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest number of cells of a box (of each factor, for the Segre suites).
    pub max_cells: usize,
    /// Restricts the duality and consistency suites to one box.
    pub bx: Option<BoxSize>,
    /// Random cases on larger boxes (Segre suites).
    pub random_cases: usize,
    pub seed: u64,
    /// Wall-clock budget of the consistency suite.
    pub budget: Option<Duration>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_cells: 9, bx: None, random_cases: 500, seed: 7, budget: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: VerifySuite,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
    /// False when the suite stopped before covering its bounds.
    pub complete: bool,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.complete
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{}: {} cases, {} failures", self.suite, self.cases, self.failures)?;
        if !self.complete {
            write!(f, ", incomplete")?;
        }
        writeln!(f, " ({verdict})")?;
        if let Some(c) = &self.first_counterexample {
            writeln!(f, "  first counterexample: {c}")?;
        }
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        Ok(())
    }
}

/// Outcome of one case: `None` when it holds, else a description.
type Outcome = Result<Option<String>>;

struct Tally {
    suite: VerifySuite,
    start: Instant,
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(suite: VerifySuite) -> Self {
        Tally { suite, start: Instant::now(), cases: 0, failures: 0, first: None }
    }

    fn record(&mut self, outcomes: Vec<Outcome>) -> Result<()> {
        for o in outcomes {
            self.cases += 1;
            if let Some(msg) = o? {
                self.failures += 1;
                self.first.get_or_insert(msg);
            }
        }
        Ok(())
    }

    fn finish(self, complete: bool, notes: Vec<String>) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            cases: self.cases,
            failures: self.failures,
            first_counterexample: self.first,
            complete,
            notes,
            elapsed: self.start.elapsed(),
        }
    }
}

pub fn run_suite(suite: VerifySuite, bounds: &Bounds) -> Result<SuiteReport> {
    match suite {
        VerifySuite::DeltaLaw => delta_law(bounds),
        VerifySuite::Duality => duality(bounds),
        VerifySuite::BoxExtension => box_extension(bounds),
        VerifySuite::Segre => segre(bounds),
        VerifySuite::Pieri => pieri_suite(bounds),
        VerifySuite::Consistency => consistency(bounds),
    }
}

fn boxes(bounds: &Bounds) -> Vec<BoxSize> {
    match bounds.bx {
        Some(bx) => vec![bx],
        None => BoxSize::up_to_cells(bounds.max_cells),
    }
}

fn pairs(bx: BoxSize) -> Vec<(BoxedPartition, BoxedPartition)> {
    let all = BoxedPartition::all_in_box(bx);
    all.iter().flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

/// Empty pairs multiply to zero, point pairs to `[pt]`, and the verdict
/// matches `complement(a) <= b`.
pub fn duality_case(cache: &LrCache, a: &BoxedPartition, b: &BoxedPartition) -> Outcome {
    let kind = pair_kind(a, b)?;
    let product = schubert_product_with(cache, a, b)?;
    let ok = match kind {
        PairKind::Empty => product.is_zero(),
        PairKind::Point => product == HomologyClass::point(a.bx()),
        PairKind::Other => !product.is_zero(),
    };
    let reach = a.complement().leq(b)?;
    Ok((!ok || reach == (kind == PairKind::Empty)).then(|| format!("{a} · {b}: {kind:?} but product {product}")))
}

fn duality(bounds: &Bounds) -> Result<SuiteReport> {
    let mut tally = Tally::new(VerifySuite::Duality);
    let cache = LrCache::global();
    for bx in boxes(bounds) {
        let outcomes = pairs(bx).par_iter().map(|(a, b)| duality_case(cache, a, b)).collect();
        tally.record(outcomes)?;
    }
    Ok(tally.finish(true, Vec::new()))
}

/// The triple point number of `delta_triple(a', b')` and the symbolic
/// `delta_integral(b', a'')` both equal `δ_{a'b'}`.
pub fn delta_case(cache: &LrCache, aprime: &BoxedPartition, bprime: &BoxedPartition) -> Outcome {
    let (a, b, c) = delta_triple(aprime, bprime)?;
    let expected = if aprime == bprime { Q::one() } else { Q::zero() };
    let t = triple_point_number_with(cache, &a, &b, &c)?;
    if t != expected {
        return Ok(Some(format!("a' = {aprime}, b' = {bprime}: triple point number {t}")));
    }
    let a2 = aprime.complementary_profile()?.complement;
    let d = delta_integral(bprime, &a2, aprime.bx());
    Ok((d != Some(expected)).then(|| format!("a' = {aprime}, b' = {bprime}: delta_integral {d:?}")))
}

fn delta_law(bounds: &Bounds) -> Result<SuiteReport> {
    let mut tally = Tally::new(VerifySuite::DeltaLaw);
    let cache = LrCache::global();
    for bx in BoxSize::up_to_cells(bounds.max_cells) {
        let all = BoxedPartition::all_in_box(bx);
        let cases: Vec<_> = all
            .iter()
            .flat_map(|a| all.iter().filter(|b| b.weight() == a.weight()).map(move |b| (a, b)))
            .collect();
        tally.record(cases.par_iter().map(|(a, b)| delta_case(cache, a, b)).collect())?;
    }
    Ok(tally.finish(true, Vec::new()))
}

fn factor_boxes(max_cells: usize) -> Vec<(BoxSize, BoxSize)> {
    let bs = BoxSize::up_to_cells(max_cells);
    bs.iter().flat_map(|x| bs.iter().map(move |y| (*x, *y))).collect()
}

fn larger_boxes(max_cells: usize) -> Vec<BoxSize> {
    let mut out: Vec<BoxSize> = BoxSize::up_to_cells(max_cells + 2)
        .into_iter()
        .filter(|b| b.cells() > max_cells)
        .collect();
    out.sort();
    out
}

/// `[X_{a'⊔a''}]·[X_{b''⊔b'}] = S_*(([X_{a'}]·[X_{b'}]) × ([X_{a''}]·[X_{b''}]))`.
pub fn segre_case(
    cache: &LrCache,
    a1: &BoxedPartition,
    b1: &BoxedPartition,
    a2: &BoxedPartition,
    b2: &BoxedPartition,
) -> Outcome {
    let lhs = schubert_product_with(cache, &a1.amalgamate(a2), &b2.amalgamate(b1))?;
    let rhs = segre_pushforward_with(
        cache,
        &schubert_product_with(cache, a1, b1)?,
        &schubert_product_with(cache, a2, b2)?,
    )?;
    Ok((lhs != rhs).then(|| format!("a' = {a1}, b' = {b1}, a'' = {a2}, b'' = {b2}: {lhs} vs {rhs}")))
}

fn segre(bounds: &Bounds) -> Result<SuiteReport> {
    let mut tally = Tally::new(VerifySuite::Segre);
    let cache = LrCache::global();
    for (x, y) in factor_boxes(bounds.max_cells) {
        let (px, py) = (pairs(x), pairs(y));
        let cases: Vec<_> = px.iter().flat_map(|p| py.iter().map(move |q| (p, q))).collect();
        tally.record(cases.par_iter().map(|((a1, b1), (a2, b2))| segre_case(cache, a1, b1, a2, b2)).collect())?;
    }
    let exhaustive = tally.cases;
    let big = larger_boxes(bounds.max_cells);
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let pick = |rng: &mut ChaCha8Rng, bx: BoxSize| BoxedPartition::all_in_box(bx).choose(rng).cloned().expect("nonempty");
    let mut random = Vec::new();
    for _ in 0..bounds.random_cases {
        let (x, y) = (*big.choose(&mut rng).expect("boxes"), *big.choose(&mut rng).expect("boxes"));
        random.push((pick(&mut rng, x), pick(&mut rng, x), pick(&mut rng, y), pick(&mut rng, y)));
    }
    tally.record(random.par_iter().map(|(a1, b1, a2, b2)| segre_case(cache, a1, b1, a2, b2)).collect())?;
    let notes = vec![format!("{exhaustive} exhaustive, {} random", bounds.random_cases)];
    Ok(tally.finish(true, notes))
}

type Pair = (BoxedPartition, BoxedPartition);

/// Pairs of the box grouped by their product.
fn product_groups(cache: &LrCache, bx: BoxSize) -> Result<Vec<Vec<Pair>>> {
    let mut groups: BTreeMap<Vec<(BoxedPartition, String)>, Vec<Pair>> = BTreeMap::new();
    for (a, b) in pairs(bx) {
        let key = schubert_product_with(cache, &a, &b)?
            .terms()
            .map(|(p, c)| (p.clone(), c.to_string()))
            .collect();
        groups.entry(key).or_default().push((a, b));
    }
    Ok(groups.into_values().filter(|g| g.len() > 1).collect())
}

/// Equal products in the first factor give equal amalgamated products.
#[allow(clippy::too_many_arguments)]
pub fn box_extension_case(
    cache: &LrCache,
    a1: &BoxedPartition,
    b1: &BoxedPartition,
    a1s: &BoxedPartition,
    b1s: &BoxedPartition,
    a2: &BoxedPartition,
    b2: &BoxedPartition,
) -> Outcome {
    if schubert_product_with(cache, a1, b1)? != schubert_product_with(cache, a1s, b1s)? {
        return Err(Error::CheckFailed(format!("{a1}·{b1} and {a1s}·{b1s} differ")));
    }
    let lhs = schubert_product_with(cache, &a1.amalgamate(a2), &b2.amalgamate(b1))?;
    let rhs = schubert_product_with(cache, &a1s.amalgamate(a2), &b2.amalgamate(b1s))?;
    Ok((lhs != rhs).then(|| format!("({a1}, {b1}) ~ ({a1s}, {b1s}) with a'' = {a2}, b'' = {b2}: {lhs} vs {rhs}")))
}

fn box_extension(bounds: &Bounds) -> Result<SuiteReport> {
    let mut tally = Tally::new(VerifySuite::BoxExtension);
    let cache = LrCache::global();
    let small = BoxSize::up_to_cells(bounds.max_cells);
    for x in &small {
        let groups = product_groups(cache, *x)?;
        for y in &small {
            let py = pairs(*y);
            let mut cases = Vec::new();
            for g in &groups {
                for other in &g[1..] {
                    for q in &py {
                        cases.push((&g[0], other, q));
                    }
                }
            }
            tally.record(
                cases
                    .par_iter()
                    .map(|((a1, b1), (a1s, b1s), (a2, b2))| box_extension_case(cache, a1, b1, a1s, b1s, a2, b2))
                    .collect(),
            )?;
        }
    }
    let exhaustive = tally.cases;
    let big = larger_boxes(bounds.max_cells);
    let grouped: Vec<_> = big
        .iter()
        .map(|b| product_groups(cache, *b).map(|g| (*b, g)))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut random = Vec::new();
    for _ in 0..bounds.random_cases {
        let (_, groups) = grouped.choose(&mut rng).expect("boxes");
        let g = groups.choose(&mut rng).expect("commutativity gives groups");
        let i = rng.gen_range(0..g.len());
        let j = (i + rng.gen_range(1..g.len())) % g.len();
        let y = *big.choose(&mut rng).expect("boxes");
        let py = BoxedPartition::all_in_box(y);
        let (a2, b2) = (py.choose(&mut rng).cloned().expect("nonempty"), py.choose(&mut rng).cloned().expect("nonempty"));
        random.push((g[i].clone(), g[j].clone(), (a2, b2)));
    }
    tally.record(
        random
            .par_iter()
            .map(|((a1, b1), (a1s, b1s), (a2, b2))| box_extension_case(cache, a1, b1, a1s, b1s, a2, b2))
            .collect(),
    )?;
    let notes = vec![format!("{exhaustive} exhaustive, {} random", bounds.random_cases)];
    Ok(tally.finish(true, notes))
}

fn pieri_cases(bounds: &Bounds) -> Vec<(BoxedPartition, usize, bool)> {
    let mut out = Vec::new();
    for bx in BoxSize::up_to_cells(bounds.max_cells) {
        for lam in BoxedPartition::all_in_box(bx) {
            for p in 1..=bx.m {
                out.push((lam.clone(), p, false));
            }
            for p in 1..=bx.k {
                out.push((lam.clone(), p, true));
            }
        }
    }
    out
}

pub fn pieri_case(cache: &LrCache, lam: &BoxedPartition, p: usize, vertical: bool) -> Outcome {
    let bx = lam.bx();
    let strip = if vertical { vec![1; p] } else { vec![p] };
    let mu = BoxedPartition::new(&strip, bx)?;
    let lr = cache.expand(lam, &mu)?;
    Ok((*lr != pieri(lam, p, vertical)).then(|| format!("{lam} · {mu}")))
}

fn pieri_suite(bounds: &Bounds) -> Result<SuiteReport> {
    let mut tally = Tally::new(VerifySuite::Pieri);
    let cases = pieri_cases(bounds);
    let fresh = LrCache::new();
    tally.record(cases.iter().map(|(l, p, v)| pieri_case(&fresh, l, *p, *v)).collect())?;
    let sequential = fresh.stats();
    let parallel = LrCache::new();
    tally.record(cases.par_iter().map(|(l, p, v)| pieri_case(&parallel, l, *p, *v)).collect())?;
    let mut notes = vec![format!("cache statistics sequential {sequential:?}, concurrent {:?}", parallel.stats())];
    tally.cases += 1;
    if sequential != parallel.stats() {
        tally.failures += 1;
        tally.first.get_or_insert_with(|| "cache statistics depend on scheduling".to_string());
    } else {
        notes.push("cache hit counts are identical under concurrent fan-out".to_string());
    }
    Ok(tally.finish(true, notes))
}

/// The recursion identities at `a'` for an expanded Schubert variety:
/// genus sum = correction + isolated block, isolated block = `λ^{a'}`, and
/// `λ^{a'} = G - correction` below the top weight.
pub fn consistency_case(engine: &ExpansionEngine, x: &EmbeddedVariety, aprime: &BoxedPartition) -> Outcome {
    let exp = engine.expand_all(x)?;
    let lambda = exp.coefficient(aprime).cloned().unwrap_or_default();
    let genus = exp
        .genus_expressions
        .get(aprime)
        .ok_or_else(|| Error::MissingExpansion(format!("genus expression at {aprime}")))?;
    let correction = correction_sum(x, aprime, engine)?;
    let isolated = isolated_term(x, aprime, engine)?;
    let at = || format!("{} at {aprime}", x.key());
    if genus != &(&correction + &isolated) {
        return Ok(Some(format!("{}: genus sum differs from correction + isolated term", at())));
    }
    if isolated != lambda {
        return Ok(Some(format!("{}: isolated term {isolated} differs from the coefficient", at())));
    }
    if aprime.weight() < x.dim() {
        let g = SymbolicScalar::symbol(genus_symbol(x, aprime)?);
        if lambda != &g - &correction {
            return Ok(Some(format!("{}: coefficient differs from G - correction", at())));
        }
    }
    Ok(None)
}

/// Largest summand a budgeted consistency run will form.
pub const CONSISTENCY_MAX_TERMS: usize = 200_000;

fn consistency(bounds: &Bounds) -> Result<SuiteReport> {
    let mut tally = Tally::new(VerifySuite::Consistency);
    let deadline = bounds.budget.map(|b| tally.start + b);
    let engine = match deadline {
        Some(t) => ExpansionEngine::with_budget(Mode::Deep, t, CONSISTENCY_MAX_TERMS),
        None => ExpansionEngine::new(Mode::Deep),
    };
    let mut varieties: Vec<BoxedPartition> = boxes(bounds).into_iter().flat_map(BoxedPartition::all_in_box).collect();
    varieties.sort_by(|a, b| (a.weight(), a.bx().cells(), a.bx()).cmp(&(b.weight(), b.bx().cells(), b.bx())).then(b.cmp(a)));
    let total = varieties.len();
    let mut done = 0;
    let mut skipped = Vec::new();
    let mut out_of_time = None;
    'outer: for a in &varieties {
        if deadline.is_some_and(|t| Instant::now() > t) {
            out_of_time = Some(a.clone());
            break;
        }
        let x = EmbeddedVariety::schubert(a);
        let mut outcomes = Vec::new();
        for aprime in BoxedPartition::all_in_box(a.bx()).into_iter().filter(|b| b.weight() <= a.weight()) {
            match consistency_case(&engine, &x, &aprime) {
                Err(Error::BudgetExceeded(why)) => {
                    skipped.push(why);
                    continue 'outer;
                }
                o => outcomes.push(o),
            }
        }
        tally.record(outcomes)?;
        done += 1;
    }
    let mut notes = vec![format!("{done} of {total} Schubert varieties checked")];
    if !skipped.is_empty() {
        notes.push(format!("{} skipped over budget, first {}", skipped.len(), skipped[0]));
    }
    if let Some(a) = &out_of_time {
        notes.push(format!("time limit reached before {a}"));
    }
    Ok(tally.finish(done == total, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in VerifySuite::ALL {
            assert_eq!(s.name().parse::<VerifySuite>().unwrap(), s);
        }
        assert!("nope".parse::<VerifySuite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let b = Bounds { max_cells: 4, random_cases: 10, ..Bounds::default() };
        for s in [VerifySuite::Duality, VerifySuite::DeltaLaw, VerifySuite::Pieri] {
            let r = run_suite(s, &b).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0);
        }
        let b = Bounds { max_cells: 2, random_cases: 10, ..Bounds::default() };
        for s in [VerifySuite::Segre, VerifySuite::BoxExtension] {
            assert!(run_suite(s, &b).unwrap().passed());
        }
    }

    #[test]
    fn consistency_on_small_boxes() {
        let b = Bounds { max_cells: 4, ..Bounds::default() };
        let r = run_suite(VerifySuite::Consistency, &b).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn consistency_reports_exhausted_budget() {
        let b = Bounds { max_cells: 9, budget: Some(Duration::ZERO), ..Bounds::default() };
        let r = run_suite(VerifySuite::Consistency, &b).unwrap();
        assert!(!r.complete);
        assert!(!r.passed());
    }
}
