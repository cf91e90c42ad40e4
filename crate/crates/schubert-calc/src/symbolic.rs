//! Polynomials with exact rational coefficients over named unknowns.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::BoxedPartition;
use crate::Q;

/// What a genus symbol is attached to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyKey {
    Schubert(BoxedPartition),
    Named(String),
}

impl fmt::Display for VarietyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyKey::Schubert(a) => write!(f, "schubert:{}", crate::io::compact_partition(a)),
            VarietyKey::Named(name) => write!(f, "named:{name}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Integral,
    Genus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnknownSymbol {
    /// `<cl*>(b', b'')`; the boxes of `b1` and `b2` are `m'×k'` and `m''×k''`.
    Integral { b1: BoxedPartition, b2: BoxedPartition },
    /// `|cl_*|(i', i'')` with `i''` the Schubert variety of `a2`.
    Genus { variety: VarietyKey, a2: BoxedPartition },
    /// Coefficient of `L^degree(ν_M) ∩ [Z]` on the basis cycle `target`,
    /// or its degree when `target` is `None`. All cycles are indexed in the
    /// ambient Grassmannian.
    Restriction {
        ambient: BoxedPartition,
        cycle: BoxedPartition,
        degree: usize,
        target: Option<BoxedPartition>,
    },
}

impl UnknownSymbol {
    pub fn integral(b1: BoxedPartition, b2: BoxedPartition) -> Self {
        UnknownSymbol::Integral { b1, b2 }
    }

    pub fn genus(variety: VarietyKey, a2: BoxedPartition) -> Self {
        UnknownSymbol::Genus { variety, a2 }
    }

    /// Builds a restriction symbol, identified with its image under
    /// `G_k(C^n) ≅ G_{n-k}(C^n)`.
    pub fn restriction(
        ambient: BoxedPartition,
        cycle: BoxedPartition,
        degree: usize,
        target: Option<BoxedPartition>,
    ) -> Self {
        let dual = UnknownSymbol::Restriction {
            ambient: ambient.transpose(),
            cycle: cycle.transpose(),
            degree,
            target: target.as_ref().map(BoxedPartition::transpose),
        };
        let direct = UnknownSymbol::Restriction { ambient, cycle, degree, target };
        direct.max(dual)
    }

    pub fn is_genus(&self) -> bool {
        matches!(self, UnknownSymbol::Genus { .. })
    }

    /// Restriction symbols are integrals over a cycle of `M` and count as integrals.
    pub fn kind(&self) -> SymbolKind {
        match self {
            UnknownSymbol::Genus { .. } => SymbolKind::Genus,
            _ => SymbolKind::Integral,
        }
    }
}

impl fmt::Display for UnknownSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknownSymbol::Integral { b1, b2 } => write!(f, "I({b1}; {b2})"),
            UnknownSymbol::Genus { variety, a2 } => write!(f, "G({variety}; {a2})"),
            UnknownSymbol::Restriction { ambient, cycle, degree, target } => {
                write!(f, "I(M={ambient}; Z={cycle}; j={degree}")?;
                if let Some(t) = target {
                    write!(f, "; on={t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A product of symbols with positive exponents, sorted by symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    powers: Vec<(Arc<UnknownSymbol>, u32)>,
}

fn symbol_cmp(a: &Arc<UnknownSymbol>, b: &Arc<UnknownSymbol>) -> Ordering {
    if Arc::ptr_eq(a, b) {
        Ordering::Equal
    } else {
        a.cmp(b)
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn symbol(s: UnknownSymbol) -> Self {
        Monomial { degree: 1, powers: vec![(Arc::new(s), 1)] }
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (UnknownSymbol, u32)>) -> Self {
        let mut map: BTreeMap<UnknownSymbol, u32> = BTreeMap::new();
        for (s, e) in powers {
            *map.entry(s).or_insert(0) += e;
        }
        let powers: Vec<_> = map.into_iter().filter(|(_, e)| *e > 0).map(|(s, e)| (Arc::new(s), e)).collect();
        Monomial { degree: powers.iter().map(|(_, e)| e).sum(), powers }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[(Arc<UnknownSymbol>, u32)] {
        &self.powers
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.powers, &other.powers);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match symbol_cmp(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { degree: self.degree + other.degree, powers: out }
    }
}

/// Graded lexicographic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for ((s, e), (t, f)) in self.powers.iter().zip(&other.powers) {
                let o = symbol_cmp(s, t).then(e.cmp(f));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.powers.len().cmp(&other.powers.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "1");
        }
        let body: Vec<String> = self
            .powers
            .iter()
            .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        write!(f, "{}", body.join("·"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolicScalar {
    terms: BTreeMap<Monomial, Q>,
}

impl SymbolicScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Q::from_integer(n.into()))
    }

    pub fn symbol(s: UnknownSymbol) -> Self {
        Self::term(Monomial::symbol(s), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &SymbolicScalar, c: &Q) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// `self += c · x · y`.
    pub fn add_product(&mut self, x: &SymbolicScalar, y: &SymbolicScalar, c: &Q) {
        for (m1, c1) in &x.terms {
            let c1 = c1 * c;
            for (m2, c2) in &y.terms {
                self.add_term(m1.mul(m2), &c1 * c2);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> SymbolicScalar {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded lexicographic order of the monomials.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_part(&self) -> Q {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Q::zero)
    }

    /// The value when no symbol occurs.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<UnknownSymbol> {
        self.terms
            .keys()
            .flat_map(|m| m.powers.iter().map(|(s, _)| UnknownSymbol::clone(s)))
            .collect()
    }

    /// Replaces every assigned symbol by its value; the rest stay symbolic.
    pub fn substitute(&self, oracle: &OracleTable) -> SymbolicScalar {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (s, e) in &m.powers {
                match oracle.get(s) {
                    Some(v) => coeff *= num_traits::pow(v.clone(), *e as usize),
                    None => rest.push((s.clone(), *e)),
                }
            }
            let degree = rest.iter().map(|(_, e)| e).sum();
            out.add_term(Monomial { degree, powers: rest }, coeff);
        }
        out
    }

    pub fn resolve(&self, oracle: &OracleTable) -> Result<Q> {
        let missing: Vec<UnknownSymbol> = self
            .symbols()
            .into_iter()
            .filter(|s| oracle.get(s).is_none())
            .collect();
        if !missing.is_empty() {
            return Err(Error::UnresolvedSymbols(missing));
        }
        Ok(self.substitute(oracle).constant_part())
    }
}

impl fmt::Display for SymbolicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn add(self, rhs: &SymbolicScalar) -> SymbolicScalar {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl Sub for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn sub(self, rhs: &SymbolicScalar) -> SymbolicScalar {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl Neg for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn neg(self) -> SymbolicScalar {
        self.scale(&-Q::one())
    }
}

impl Mul for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn mul(self, rhs: &SymbolicScalar) -> SymbolicScalar {
        let mut out = SymbolicScalar::zero();
        out.add_product(self, rhs, &Q::one());
        out
    }
}

impl From<Q> for SymbolicScalar {
    fn from(c: Q) -> Self {
        SymbolicScalar::constant(c)
    }
}

/// Values assigned to some of the unknowns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleTable {
    assignments: BTreeMap<UnknownSymbol, Q>,
}

impl OracleTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, s: UnknownSymbol, v: Q) -> Option<Q> {
        self.assignments.insert(s, v)
    }

    pub fn get(&self, s: &UnknownSymbol) -> Option<&Q> {
        self.assignments.get(s)
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UnknownSymbol, &Q)> {
        self.assignments.iter()
    }

    /// Symbols assigned in both tables with different values.
    pub fn disagreements(&self, other: &OracleTable) -> Vec<UnknownSymbol> {
        self.assignments
            .iter()
            .filter(|(s, v)| other.get(s).is_some_and(|w| w != *v))
            .map(|(s, _)| s.clone())
            .collect()
    }
}

impl FromIterator<(UnknownSymbol, Q)> for OracleTable {
    fn from_iter<T: IntoIterator<Item = (UnknownSymbol, Q)>>(iter: T) -> Self {
        OracleTable { assignments: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::BoxSize;

    fn bp(parts: &[usize], m: usize, k: usize) -> BoxedPartition {
        BoxedPartition::new(parts, BoxSize::new(m, k)).unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn ic() -> UnknownSymbol {
        UnknownSymbol::integral(bp(&[3, 1], 3, 3), bp(&[3, 2], 3, 2))
    }

    fn id() -> UnknownSymbol {
        UnknownSymbol::integral(bp(&[2, 2], 3, 3), bp(&[3, 2], 3, 2))
    }

    #[test]
    fn resolve_examples() {
        let c = SymbolicScalar::constant(q(2, 3));
        assert_eq!(c.resolve(&OracleTable::new()).unwrap(), q(2, 3));

        let g = UnknownSymbol::genus(VarietyKey::Schubert(bp(&[1], 1, 1)), bp(&[], 0, 0));
        let oracle: OracleTable = [(g.clone(), Q::zero())].into_iter().collect();
        assert_eq!(SymbolicScalar::symbol(g).resolve(&oracle).unwrap(), Q::zero());

        let e = &SymbolicScalar::symbol(ic()).scale(&q(2, 3)) + &SymbolicScalar::symbol(id());
        let oracle: OracleTable = [(ic(), Q::one())].into_iter().collect();
        assert_eq!(e.resolve(&oracle), Err(Error::UnresolvedSymbols(vec![id()])));
        assert_eq!(e.substitute(&oracle), &SymbolicScalar::constant(q(2, 3)) + &SymbolicScalar::symbol(id()));
    }

    #[test]
    fn arithmetic_cancels() {
        let x = SymbolicScalar::symbol(ic());
        let y = SymbolicScalar::symbol(id());
        let sq = &(&x + &y) * &(&x - &y);
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(sq, expected);
        assert!((&x - &x).is_zero());
        assert_eq!(sq.degree(), 2);
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial::symbol(ic());
        let xx = x.mul(&x);
        assert!(Monomial::one() < x);
        assert!(x < xx);
        assert!(Monomial::symbol(id()) < xx);
    }

    #[test]
    fn display() {
        let e = &SymbolicScalar::constant(q(2, 3)) - &SymbolicScalar::symbol(id());
        assert_eq!(e.to_string(), "2/3 - I(2,2,0 @ 3x3; 3,2 @ 3x2)");
        assert_eq!(SymbolicScalar::zero().to_string(), "0");
    }

    #[test]
    fn restriction_is_duality_invariant() {
        let a = UnknownSymbol::restriction(bp(&[3, 3], 3, 3), bp(&[3, 2, 1], 3, 3), 1, Some(bp(&[3, 1], 3, 3)));
        let b = UnknownSymbol::restriction(bp(&[2, 2, 2], 3, 3), bp(&[3, 2, 1], 3, 3), 1, Some(bp(&[2, 1, 1], 3, 3)));
        assert_eq!(a, b);
    }
}
