//! Rational homology of Grassmannians in the Schubert basis.
//!
//! `[X_a]` is Poincaré dual to `σ_{a^c}`, so products are computed by
//! complementing, multiplying with [`LrCache`], and complementing back.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lr::LrCache;
use crate::partitions::{BoxSize, BoxedPartition};
use crate::Q;

/// `G_k(C^{m+k})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassmannianSpec {
    pub bx: BoxSize,
}

impl GrassmannianSpec {
    pub fn new(bx: BoxSize) -> Self {
        GrassmannianSpec { bx }
    }

    /// Complex dimension `m·k`.
    pub fn dim(&self) -> usize {
        self.bx.cells()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    space: BoxSize,
    terms: BTreeMap<BoxedPartition, Q>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Empty,
    Point,
    Other,
}

impl HomologyClass {
    pub fn zero(space: BoxSize) -> Self {
        HomologyClass { space, terms: BTreeMap::new() }
    }

    /// `[X_a]_G`.
    pub fn schubert(a: &BoxedPartition) -> Self {
        Self::term(a.clone(), Q::one())
    }

    pub fn term(a: BoxedPartition, c: Q) -> Self {
        let mut out = Self::zero(a.bx());
        out.add_term(a, c);
        out
    }

    pub fn point(space: BoxSize) -> Self {
        Self::schubert(&BoxedPartition::zero(space))
    }

    pub fn from_terms(space: BoxSize, terms: impl IntoIterator<Item = (BoxedPartition, Q)>) -> Result<Self> {
        let mut out = Self::zero(space);
        for (a, c) in terms {
            if a.bx() != space {
                return Err(Error::BoxMismatch(a.bx(), space));
            }
            out.add_term(a, c);
        }
        Ok(out)
    }

    pub fn space(&self) -> BoxSize {
        self.space
    }

    pub fn add_term(&mut self, a: BoxedPartition, c: Q) {
        debug_assert_eq!(a.bx(), self.space);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
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

    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass> {
        if self.space != other.space {
            return Err(Error::BoxMismatch(self.space, other.space));
        }
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> HomologyClass {
        let mut out = Self::zero(self.space);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &BoxedPartition) -> Q {
        self.terms.get(a).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms in descending lexicographic order of the partitions.
    pub fn terms(&self) -> impl Iterator<Item = (&BoxedPartition, &Q)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Component in complex dimension `d`.
    pub fn grade(&self, d: usize) -> HomologyClass {
        let terms = self.terms.iter().filter(|(a, _)| a.weight() == d);
        HomologyClass {
            space: self.space,
            terms: terms.map(|(a, c)| (a.clone(), c.clone())).collect(),
        }
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.terms.keys().map(|a| a.weight()).max()
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let body: Vec<String> = self
            .terms()
            .map(|(a, c)| format!("{}·[X_{{{}}}]", crate::io::format_rational(c), a))
            .collect();
        write!(f, "{}", body.join(" + "))
    }
}

/// `[X_a]·[X_b]` for two Schubert classes of one Grassmannian.
pub fn schubert_product_with(cache: &LrCache, a: &BoxedPartition, b: &BoxedPartition) -> Result<HomologyClass> {
    if a.bx() != b.bx() {
        return Err(Error::BoxMismatch(a.bx(), b.bx()));
    }
    let table = cache.expand(&a.complement(), &b.complement())?;
    let mut out = HomologyClass::zero(a.bx());
    for (nu, c) in table.iter() {
        out.add_term(nu.complement(), Q::from_integer((*c).into()));
    }
    Ok(out)
}

pub fn schubert_product(a: &BoxedPartition, b: &BoxedPartition) -> Result<HomologyClass> {
    schubert_product_with(LrCache::global(), a, b)
}

pub fn intersect_with(cache: &LrCache, x: &HomologyClass, y: &HomologyClass) -> Result<HomologyClass> {
    if x.space != y.space {
        return Err(Error::BoxMismatch(x.space, y.space));
    }
    let mut out = HomologyClass::zero(x.space);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let c = ca * cb;
            for (nu, v) in schubert_product_with(cache, a, b)?.terms {
                out.add_term(nu, v * &c);
            }
        }
    }
    Ok(out)
}

pub fn intersect(x: &HomologyClass, y: &HomologyClass) -> Result<HomologyClass> {
    intersect_with(LrCache::global(), x, y)
}

/// Degree-zero coefficient.
pub fn point_coefficient(x: &HomologyClass) -> Q {
    x.coefficient(&BoxedPartition::zero(x.space))
}

pub fn pair_kind(a: &BoxedPartition, b: &BoxedPartition) -> Result<PairKind> {
    if a.bx() != b.bx() {
        return Err(Error::BoxMismatch(a.bx(), b.bx()));
    }
    let (m, k) = (a.bx().m, a.bx().k);
    let sums = (0..k).map(|i| a.parts()[i] + b.parts()[k - 1 - i]);
    let mut all_equal = true;
    for s in sums {
        if s < m {
            return Ok(PairKind::Empty);
        }
        all_equal &= s == m;
    }
    Ok(if all_equal { PairKind::Point } else { PairKind::Other })
}

/// All `b <= top` of complex dimension `degree`, descending.
pub fn homology_basis(space: GrassmannianSpec, top: &BoxedPartition, degree: usize) -> Result<Vec<BoxedPartition>> {
    if top.bx() != space.bx {
        return Err(Error::BoxMismatch(top.bx(), space.bx));
    }
    Ok(BoxedPartition::below_of_weight(top, degree))
}

/// A class in `H_*(G' × G'')` written in the cross-product Schubert basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossClass {
    pub left: BoxSize,
    pub right: BoxSize,
    terms: BTreeMap<(BoxedPartition, BoxedPartition), Q>,
}

impl CrossClass {
    pub fn zero(left: BoxSize, right: BoxSize) -> Self {
        CrossClass { left, right, terms: BTreeMap::new() }
    }

    pub fn basis(a: &BoxedPartition, b: &BoxedPartition) -> Self {
        let mut out = Self::zero(a.bx(), b.bx());
        out.add_term(a.clone(), b.clone(), Q::one());
        out
    }

    /// `A' × A''`.
    pub fn cross(x: &HomologyClass, y: &HomologyClass) -> Self {
        let mut out = Self::zero(x.space, y.space);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                out.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        out
    }

    pub fn add_term(&mut self, a: BoxedPartition, b: BoxedPartition, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(BoxedPartition, BoxedPartition), &Q)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, a: &BoxedPartition, b: &BoxedPartition) -> Q {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for CrossClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let body: Vec<String> = self
            .terms()
            .map(|((a, b), c)| format!("{}·[X_{{{}}} × X_{{{}}}]", crate::io::format_rational(c), a, b))
            .collect();
        write!(f, "{}", body.join(" + "))
    }
}

/// `S_*` on a basis element: `[X_{a'⊔a''}]·[X_{c''⊔c'}]`.
pub fn segre_basis_with(cache: &LrCache, a1: &BoxedPartition, a2: &BoxedPartition) -> Result<HomologyClass> {
    let c1 = BoxedPartition::full(a1.bx());
    let c2 = BoxedPartition::full(a2.bx());
    schubert_product_with(cache, &a1.amalgamate(a2), &c2.amalgamate(&c1))
}

pub fn segre_cross_with(cache: &LrCache, x: &CrossClass) -> Result<HomologyClass> {
    let space = BoxSize::new(x.left.m + x.right.m, x.left.k + x.right.k);
    let mut out = HomologyClass::zero(space);
    for ((a, b), c) in &x.terms {
        for (nu, v) in segre_basis_with(cache, a, b)?.terms {
            out.add_term(nu, v * c);
        }
    }
    Ok(out)
}

pub fn segre_pushforward_with(cache: &LrCache, x: &HomologyClass, y: &HomologyClass) -> Result<HomologyClass> {
    segre_cross_with(cache, &CrossClass::cross(x, y))
}

pub fn segre_pushforward(x: &HomologyClass, y: &HomologyClass) -> Result<HomologyClass> {
    segre_pushforward_with(LrCache::global(), x, y)
}

pub fn triple_point_number_with(
    cache: &LrCache,
    a: &BoxedPartition,
    b: &BoxedPartition,
    c: &BoxedPartition,
) -> Result<Q> {
    if a.bx() != b.bx() || a.bx() != c.bx() {
        let other = if a.bx() != b.bx() { b.bx() } else { c.bx() };
        return Err(Error::BoxMismatch(a.bx(), other));
    }
    let ab = schubert_product_with(cache, a, b)?;
    let abc = intersect_with(cache, &ab, &HomologyClass::schubert(c))?;
    Ok(point_coefficient(&abc))
}

pub fn triple_point_number(a: &BoxedPartition, b: &BoxedPartition, c: &BoxedPartition) -> Result<Q> {
    triple_point_number_with(LrCache::global(), a, b, c)
}

/// The triple `(a'' ⊔ c', b' ⊔ c'', c' ⊔ c'')` built from `a'` and `b'`.
pub fn delta_triple(aprime: &BoxedPartition, bprime: &BoxedPartition) -> Result<(BoxedPartition, BoxedPartition, BoxedPartition)> {
    let profile = aprime.complementary_profile()?;
    let c1 = BoxedPartition::full(aprime.bx());
    let c2 = BoxedPartition::full(profile.box2());
    Ok((profile.complement.amalgamate(&c1), bprime.amalgamate(&c2), c1.amalgamate(&c2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(parts: &[usize], m: usize, k: usize) -> BoxedPartition {
        BoxedPartition::new(parts, BoxSize::new(m, k)).unwrap()
    }

    fn x(parts: &[usize], m: usize, k: usize) -> HomologyClass {
        HomologyClass::schubert(&bp(parts, m, k))
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn basis_examples() {
        let g = GrassmannianSpec::new(BoxSize::new(3, 3));
        let top = bp(&[3, 2, 1], 3, 3);
        assert_eq!(
            homology_basis(g, &top, 4).unwrap(),
            vec![bp(&[3, 1], 3, 3), bp(&[2, 2], 3, 3), bp(&[2, 1, 1], 3, 3)]
        );
        assert_eq!(homology_basis(g, &top, 2).unwrap(), vec![bp(&[2], 3, 3), bp(&[1, 1], 3, 3)]);
        let g2 = GrassmannianSpec::new(BoxSize::new(2, 2));
        assert_eq!(homology_basis(g2, &BoxedPartition::full(g2.bx), 0).unwrap(), vec![bp(&[], 2, 2)]);
    }

    #[test]
    fn intersect_examples() {
        let sq = intersect(&x(&[2, 1], 2, 2), &x(&[2, 1], 2, 2)).unwrap();
        assert_eq!(sq, x(&[2], 2, 2).add(&x(&[1, 1], 2, 2)).unwrap());
        for b in BoxedPartition::all_in_box(BoxSize::new(2, 3)) {
            let full = HomologyClass::schubert(&BoxedPartition::full(BoxSize::new(2, 3)));
            assert_eq!(intersect(&full, &HomologyClass::schubert(&b)).unwrap(), HomologyClass::schubert(&b));
        }
        assert!(intersect(&x(&[1], 2, 2), &x(&[1], 2, 2)).unwrap().is_zero());
        assert_eq!(intersect(&x(&[2, 1], 2, 2), &x(&[1], 2, 2)).unwrap(), HomologyClass::point(BoxSize::new(2, 2)));
        assert!(intersect(&x(&[1], 2, 2), &x(&[1], 2, 1)).is_err());
    }

    #[test]
    fn point_coefficient_examples() {
        assert_eq!(point_coefficient(&HomologyClass::point(BoxSize::new(2, 2))), Q::one());
        assert!(point_coefficient(&x(&[1], 1, 1)).is_zero());
        let c = x(&[2], 2, 2).add(&x(&[1, 1], 2, 2)).unwrap();
        assert!(point_coefficient(&c).is_zero());
    }

    #[test]
    fn pair_kind_examples() {
        assert_eq!(pair_kind(&bp(&[3, 3], 3, 3), &bp(&[2, 2], 3, 3)).unwrap(), PairKind::Empty);
        assert_eq!(pair_kind(&bp(&[3, 3, 1], 3, 3), &bp(&[2], 3, 3)).unwrap(), PairKind::Point);
        assert_eq!(pair_kind(&bp(&[2, 1], 2, 2), &bp(&[2, 1], 2, 2)).unwrap(), PairKind::Other);
    }

    #[test]
    fn segre_examples() {
        let s = segre_pushforward(&x(&[1], 1, 1), &x(&[1], 1, 1)).unwrap();
        assert_eq!(s, x(&[2], 2, 2).add(&x(&[1, 1], 2, 2)).unwrap());
        let pt = segre_pushforward(&HomologyClass::point(BoxSize::new(1, 1)), &HomologyClass::point(BoxSize::new(2, 1))).unwrap();
        assert_eq!(pt, HomologyClass::point(BoxSize::new(3, 2)));
        let s = segre_pushforward(&x(&[2, 1], 3, 2), &HomologyClass::point(BoxSize::new(0, 1))).unwrap();
        assert_eq!(s, x(&[2, 1], 3, 3));
        assert_eq!(s, schubert_product(&bp(&[3, 2, 1], 3, 3), &bp(&[3, 3], 3, 3)).unwrap());
    }

    #[test]
    fn triple_examples() {
        let bx = BoxSize::new(4, 5);
        let a = bp(&[4, 4, 4, 1, 1], 4, 5);
        let c = bp(&[4, 4, 2, 2, 2], 4, 5);
        assert_eq!(triple_point_number(&a, &bp(&[4, 4, 2, 1, 1], 4, 5), &c).unwrap(), Q::one());
        assert!(triple_point_number(&a, &bp(&[4, 4, 2, 2], 4, 5), &c).unwrap().is_zero());
        let aprime = bp(&[2, 1, 1], 2, 3);
        let (ta, tb, tc) = delta_triple(&aprime, &aprime).unwrap();
        assert_eq!((ta, tb, tc.clone()), (a.clone(), bp(&[4, 4, 2, 1, 1], 4, 5), c.clone()));
        let (_, tb, _) = delta_triple(&aprime, &bp(&[2, 2], 2, 3)).unwrap();
        assert_eq!(tb, bp(&[4, 4, 2, 2], 4, 5));
        for a in BoxedPartition::all_in_box(bx).into_iter().step_by(7) {
            let n = triple_point_number(&a, &a.complement(), &BoxedPartition::full(bx)).unwrap();
            assert_eq!(n, Q::one());
        }
    }

    #[test]
    fn class_arithmetic_prunes_zeros() {
        let a = x(&[1], 2, 2);
        let z = a.add(&a.scale(&q(-1, 1))).unwrap();
        assert!(z.is_zero());
        assert_eq!(a.scale(&q(2, 3)).coefficient(&bp(&[1], 2, 2)), q(2, 3));
    }
}
