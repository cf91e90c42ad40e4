//! The coefficients of `L_8` and `L_4` of `X_{3,2,1} ⊂ G_3(C^6)`.
//!
//! Each coefficient is read off from the Gysin restriction formula
//! `g^! L_*(X) = L^*(ν) ∩ L_*(Y)` for a Schubert variety `M` transverse to
//! `X`, where `Y = M ∩ X` is identified with a product of Schubert varieties
//! through the Segre embedding. The unknown pieces `L^j(ν) ∩ [Z]` become
//! integral symbols keyed by `M`, the cycle `Z` and `j`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::io::{compact_partition, scalar_records};
use crate::partitions::{BoxSize, BoxedPartition};
use crate::ring::{
    homology_basis, intersect, pair_kind, schubert_product, segre_cross_with, CrossClass, GrassmannianSpec,
    HomologyClass, PairKind,
};
use crate::symbolic::{Monomial, SymbolicScalar, UnknownSymbol};
use crate::Q;

/// `M = (m^{k''}, m'^{k'})` and `X = l ⊔ r` with `l` in `m''×k''`, `r` in `m'×k'`.
///
/// Then `M ∩ X_{l⊔r} = S(X_l × X_r)` for every `l ⊔ r <= X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub ambient: BoxedPartition,
    pub variety: BoxedPartition,
    pub left: BoxedPartition,
    pub right: BoxedPartition,
}

impl Factorization {
    pub fn new(ambient: &BoxedPartition, variety: &BoxedPartition) -> Result<Self> {
        let bx = ambient.bx();
        if variety.bx() != bx {
            return Err(Error::BoxMismatch(bx, variety.bx()));
        }
        let fail = || Error::NotFactorizable(ambient.to_string(), variety.to_string());
        let parts = ambient.parts();
        let k2 = parts.iter().take_while(|&&p| p == bx.m).count();
        let k1 = bx.k - k2;
        let m1 = if k1 > 0 { parts[k2] } else { 0 };
        if parts[k2..].iter().any(|&p| p != m1) {
            return Err(fail());
        }
        let mut f = Factorization {
            ambient: ambient.clone(),
            variety: variety.clone(),
            left: BoxedPartition::zero(BoxSize::new(bx.m - m1, k2)),
            right: BoxedPartition::zero(BoxSize::new(m1, k1)),
        };
        let (left, right) = f.split(variety).ok_or_else(fail)?;
        f.left = left;
        f.right = right;
        Ok(f)
    }

    pub fn left_box(&self) -> BoxSize {
        self.left.bx()
    }

    pub fn right_box(&self) -> BoxSize {
        self.right.bx()
    }

    /// `b = l ⊔ r`, when `b` has that shape.
    pub fn split(&self, b: &BoxedPartition) -> Option<(BoxedPartition, BoxedPartition)> {
        let (lb, rb) = (self.left_box(), self.right_box());
        let parts = b.parts();
        let top: Vec<usize> = parts[..rb.k]
            .iter()
            .map(|&p| p.checked_sub(lb.m).filter(|&q| q <= rb.m))
            .collect::<Option<_>>()?;
        let right = BoxedPartition::new(&top, rb).ok()?;
        let left = BoxedPartition::new(&parts[rb.k..], lb).ok()?;
        Some((left, right))
    }

    pub fn join(&self, left: &BoxedPartition, right: &BoxedPartition) -> BoxedPartition {
        left.amalgamate(right)
    }

    /// Cycles `X_l × X_r` of `Y` of complex dimension `d`.
    pub fn basis(&self, d: usize) -> Vec<(BoxedPartition, BoxedPartition)> {
        let mut out = Vec::new();
        for wl in 0..=d.min(self.left.weight()) {
            for l in BoxedPartition::below_of_weight(&self.left, wl) {
                for r in BoxedPartition::below_of_weight(&self.right, d - wl) {
                    out.push((l.clone(), r));
                }
            }
        }
        out
    }

    pub fn codim(&self) -> usize {
        self.ambient.bx().cells() - self.ambient.weight()
    }
}

/// `g^! [X_gen]_X = [M ∩ X_gen]_Y` as a class on `Y ≅ X_l × X_r`.
pub fn gysin_restrict_basis(
    ambient: &BoxedPartition,
    variety: &BoxedPartition,
    generator: &BoxedPartition,
) -> Result<CrossClass> {
    let f = Factorization::new(ambient, variety)?;
    restrict(&f, generator)
}

fn restrict(f: &Factorization, generator: &BoxedPartition) -> Result<CrossClass> {
    if !generator.leq(&f.variety)? {
        return Err(Error::NotBelow(generator.to_string(), f.variety.to_string()));
    }
    let (lb, rb) = (f.left_box(), f.right_box());
    Ok(match pair_kind(&f.ambient, generator)? {
        PairKind::Empty => CrossClass::zero(lb, rb),
        PairKind::Point => CrossClass::basis(&BoxedPartition::zero(lb), &BoxedPartition::zero(rb)),
        PairKind::Other => {
            let (l, r) = f
                .split(generator)
                .ok_or_else(|| Error::NotFactorizable(f.ambient.to_string(), generator.to_string()))?;
            CrossClass::basis(&l, &r)
        }
    })
}

/// L-classes available as input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownClassTable {
    pub entries: BTreeMap<BoxedPartition, HomologyClass>,
}

impl KnownClassTable {
    /// The class of `X_b`, moved into the box of `b`.
    pub fn lookup(&self, b: &BoxedPartition) -> Option<HomologyClass> {
        let (a, class) = self.entries.iter().find(|(a, _)| a.nonzero_parts() == b.nonzero_parts())?;
        debug_assert_eq!(a.weight(), b.weight());
        let terms = class
            .terms()
            .map(|(p, c)| p.rebox(b.bx()).map(|p| (p, c.clone())))
            .collect::<Result<Vec<_>>>()
            .ok()?;
        HomologyClass::from_terms(b.bx(), terms).ok()
    }

    /// Like [`lookup`](Self::lookup), and a curve is its own L-class.
    pub fn lclass(&self, b: &BoxedPartition) -> Result<HomologyClass> {
        match self.lookup(b) {
            Some(c) => Ok(c),
            None if b.weight() <= 1 => Ok(HomologyClass::schubert(b)),
            None => Err(Error::UnknownClass(b.to_string())),
        }
    }
}

pub fn known_lclasses() -> KnownClassTable {
    let b22 = BoxSize::new(2, 2);
    let x21 = BoxedPartition::new(&[2, 1], b22).expect("fits");
    let x1 = BoxedPartition::new(&[1], b22).expect("fits");
    let mut l21 = HomologyClass::schubert(&x21);
    l21.add_term(x1, Q::new(2.into(), 3.into()));
    let pt = BoxedPartition::zero(BoxSize::new(0, 0));
    let entries = [(x21, l21), (pt.clone(), HomologyClass::schubert(&pt))].into_iter().collect();
    KnownClassTable { entries }
}

/// Both sides of `g^! L_{2w}(X) = (L^*(ν) ∩ L_*(Y))_{2t}` with `t = w - codim M`.
#[derive(Clone, Debug)]
pub struct GysinEquation {
    pub factorization: Factorization,
    pub weight: usize,
    pub target_dim: usize,
    pub basis: Vec<(BoxedPartition, BoxedPartition)>,
    pub restrictions: Vec<(BoxedPartition, CrossClass)>,
    pub lclass: CrossClass,
    pub rhs: BTreeMap<(BoxedPartition, BoxedPartition), SymbolicScalar>,
}

pub fn gysin_equation(
    ambient: &BoxedPartition,
    variety: &BoxedPartition,
    weight: usize,
    table: &KnownClassTable,
) -> Result<GysinEquation> {
    let f = Factorization::new(ambient, variety)?;
    let t = weight.checked_sub(f.codim()).ok_or_else(|| {
        Error::InvalidVariety(format!("{ambient} has codimension larger than {weight}"))
    })?;
    let space = GrassmannianSpec::new(variety.bx());
    let restrictions = homology_basis(space, variety, weight)?
        .into_iter()
        .map(|g| restrict(&f, &g).map(|r| (g, r)))
        .collect::<Result<Vec<_>>>()?;
    let lclass = CrossClass::cross(&table.lclass(&f.left)?, &table.lclass(&f.right)?);
    let basis = f.basis(t);
    let mut rhs: BTreeMap<_, SymbolicScalar> = basis.iter().map(|b| (b.clone(), SymbolicScalar::zero())).collect();
    for ((zl, zr), c) in lclass.terms() {
        let e = zl.weight() + zr.weight();
        if e < t || (e - t) % 2 != 0 {
            continue;
        }
        let j = (e - t) / 2;
        if j == 0 {
            rhs.get_mut(&(zl.clone(), zr.clone())).expect("basis cycle").add_term(Monomial::one(), c.clone());
            continue;
        }
        let cycle = f.join(zl, zr);
        for (bl, br) in &basis {
            if !(bl.leq(zl)? && br.leq(zr)?) {
                continue;
            }
            let target = (t > 0).then(|| f.join(bl, br));
            let s = UnknownSymbol::restriction(ambient.clone(), cycle.clone(), j, target);
            rhs.get_mut(&(bl.clone(), br.clone()))
                .expect("basis cycle")
                .add_scaled(&SymbolicScalar::symbol(s), c);
        }
    }
    Ok(GysinEquation { factorization: f, weight, target_dim: t, basis, restrictions, lclass, rhs })
}

impl GysinEquation {
    /// The coefficient `λ_gen`, from a row of the system in which no other
    /// generator has a nonzero restriction.
    pub fn solve(&self, generator: &BoxedPartition) -> Result<SymbolicScalar> {
        for row in &self.basis {
            let entry = |g: &BoxedPartition| -> Q {
                self.restrictions
                    .iter()
                    .find(|(h, _)| h == g)
                    .map_or_else(Q::zero, |(_, r)| r.coefficient(&row.0, &row.1))
            };
            let own = entry(generator);
            if own.is_zero() {
                continue;
            }
            if self.restrictions.iter().any(|(h, _)| h != generator && !entry(h).is_zero()) {
                continue;
            }
            return Ok(self.rhs[row].scale(&(Q::one() / own)));
        }
        Err(Error::Underdetermined(format!("λ_{generator} via M = {}", self.factorization.ambient)))
    }

    /// Transversality and Segre identifications behind the equation.
    pub fn validate(&self) -> Result<Vec<String>> {
        let f = &self.factorization;
        let fail = |what: String| Err(Error::CheckFailed(what));
        let mut checked = Vec::new();
        for s in f.ambient.lw_singular_partitions() {
            if pair_kind(&s, &f.variety)? != PairKind::Empty || !schubert_product(&s, &f.variety)?.is_zero() {
                return fail(format!("singular component {s} of {} meets {}", f.ambient, f.variety));
            }
            checked.push(format!("X_{{{s}}} ∩ X = ∅"));
        }
        let cache = crate::lr::LrCache::global();
        let m = HomologyClass::schubert(&f.ambient);
        let y = segre_cross_with(cache, &CrossClass::basis(&f.left, &f.right))?;
        if intersect(&m, &HomologyClass::schubert(&f.variety))? != y {
            return fail(format!("[M]·[X] differs from the Segre class of Y for M = {}", f.ambient));
        }
        checked.push(format!("[M]·[X] = S_*([X_{{{}}}] × [X_{{{}}}])", f.left, f.right));
        for (g, r) in &self.restrictions {
            let product = intersect(&m, &HomologyClass::schubert(g))?;
            let ok = match pair_kind(&f.ambient, g)? {
                PairKind::Empty => product.is_zero() && r.is_zero(),
                PairKind::Point => product == HomologyClass::point(g.bx()),
                PairKind::Other => product == segre_cross_with(cache, r)?,
            };
            if !ok {
                return fail(format!("restriction of {g} to M = {} disagrees with [M]·[X_gen]", f.ambient));
            }
            checked.push(format!("[M]·[X_{{{g}}}] = S_*({r})"));
        }
        Ok(checked)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub description: String,
    /// The operation whose result is recorded.
    pub identity: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleReport {
    pub steps: Vec<Step>,
    pub coefficients: BTreeMap<String, SymbolicScalar>,
    /// Coefficients solved with the transpose of a partner's ambient variety
    /// and then compared with that partner.
    pub mirrored: BTreeSet<String>,
}

impl ExampleReport {
    pub fn coefficient(&self, name: &str) -> Option<&SymbolicScalar> {
        self.coefficients.get(name)
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "steps": self.steps.iter().map(|s| json!({
                "description": s.description,
                "identity": s.identity,
                "value": s.value,
            })).collect::<Vec<_>>(),
            "coefficients": self.coefficients.iter().map(|(name, c)| json!({
                "name": name,
                "mirrored": self.mirrored.contains(name),
                "terms": scalar_records(c),
                "text": c.to_string(),
            })).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
    }
}

impl fmt::Display for ExampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{:>2}. {} [{}]", i + 1, s.description, s.identity)?;
            writeln!(f, "    {}", s.value)?;
        }
        writeln!(f)?;
        for (name, c) in &self.coefficients {
            let flag = if self.mirrored.contains(name) { "  (mirrored)" } else { "" };
            writeln!(f, "{name} = {c}{flag}")?;
        }
        Ok(())
    }
}

struct Case {
    name: &'static str,
    generator: &'static [usize],
    ambient: &'static [usize],
    mirrored: bool,
}

const CASES: [Case; 5] = [
    Case { name: "lambda_{3,1}", generator: &[3, 1], ambient: &[3, 3], mirrored: false },
    Case { name: "lambda_{2,1,1}", generator: &[2, 1, 1], ambient: &[2, 2, 2], mirrored: true },
    Case { name: "lambda_{2,2}", generator: &[2, 2], ambient: &[3, 1, 1], mirrored: false },
    Case { name: "lambda_2", generator: &[2], ambient: &[3, 3, 1], mirrored: false },
    Case { name: "lambda_{1,1}", generator: &[1, 1], ambient: &[3, 2, 2], mirrored: true },
];

fn list(v: &[BoxedPartition]) -> String {
    let body: Vec<String> = v.iter().map(|a| format!("({})", a.nonzero_parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))).collect();
    format!("{{{}}}", body.join(", "))
}

pub fn x321_report() -> Result<ExampleReport> {
    let bx = BoxSize::new(3, 3);
    let bp = |parts: &[usize]| BoxedPartition::new(parts, bx);
    let x = bp(&[3, 2, 1])?;
    let space = GrassmannianSpec::new(bx);
    let table = known_lclasses();
    let mut steps = Vec::new();
    let mut step = |description: String, identity: &str, value: String| {
        steps.push(Step { description, identity: identity.to_string(), value })
    };
    for w in [4, 2] {
        step(
            format!("basis of H_{}(X_{{3,2,1}})", 2 * w),
            "homology_basis",
            list(&homology_basis(space, &x, w)?),
        );
    }
    let mut coefficients = BTreeMap::new();
    let mut mirrored = BTreeSet::new();
    for case in &CASES {
        let gen = bp(case.generator)?;
        let m = bp(case.ambient)?;
        let sing = m.lw_singular_partitions();
        step(
            format!("{}: singular locus of M = X_{{{}}}", case.name, compact_partition(&m)),
            "lw_singular_partitions",
            if sing.is_empty() { "nonsingular".to_string() } else { list(&sing) },
        );
        let eq = gysin_equation(&m, &x, gen.weight(), &table)?;
        let fz = &eq.factorization;
        for check in eq.validate()? {
            step(format!("{}: transversality", case.name), "pair_kind, segre_cross", check);
        }
        step(
            format!("{}: Y = M ∩ X via the Segre embedding", case.name),
            "Factorization",
            format!("Y ≅ X_{{{}}} × X_{{{}}}", fz.left, fz.right),
        );
        for (g, r) in &eq.restrictions {
            step(format!("{}: g^![X_{{{g}}}]", case.name), "gysin_restrict_basis", r.to_string());
        }
        step(format!("{}: L_*(Y)", case.name), "known_lclasses", eq.lclass.to_string());
        for (row, v) in &eq.rhs {
            step(
                format!("{}: (L^*(ν) ∩ L_*(Y)) on [X_{{{}}} × X_{{{}}}]", case.name, row.0, row.1),
                "gysin_equation",
                v.to_string(),
            );
        }
        let value = eq.solve(&gen)?;
        step(format!("{} solved", case.name), "GysinEquation::solve", value.to_string());
        coefficients.insert(case.name.to_string(), value);
        if case.mirrored {
            mirrored.insert(case.name.to_string());
        }
    }
    let same = |a: &str, b: &str| coefficients[a] == coefficients[b];
    step(
        "lambda_{2,1,1} against lambda_{3,1}".to_string(),
        "UnknownSymbol::restriction",
        if same("lambda_{2,1,1}", "lambda_{3,1}") { "equal" } else { "different" }.to_string(),
    );
    step(
        "lambda_{1,1} against lambda_2".to_string(),
        "UnknownSymbol::restriction",
        if same("lambda_{1,1}", "lambda_2") { "equal" } else { "different" }.to_string(),
    );
    Ok(ExampleReport { steps, coefficients, mirrored })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(parts: &[usize]) -> BoxedPartition {
        BoxedPartition::new(parts, BoxSize::new(3, 3)).unwrap()
    }

    fn b(parts: &[usize], m: usize, k: usize) -> BoxedPartition {
        BoxedPartition::new(parts, BoxSize::new(m, k)).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let x = bp(&[3, 2, 1]);
        let r = gysin_restrict_basis(&bp(&[3, 3]), &x, &bp(&[3, 1])).unwrap();
        assert_eq!(r, CrossClass::basis(&b(&[1], 3, 2), &b(&[], 0, 1)));
        assert!(gysin_restrict_basis(&bp(&[3, 3]), &x, &bp(&[2, 2])).unwrap().is_zero());
        let r = gysin_restrict_basis(&bp(&[3, 3, 1]), &x, &bp(&[2])).unwrap();
        assert_eq!(r, CrossClass::basis(&b(&[], 2, 2), &b(&[], 1, 1)));
    }

    #[test]
    fn not_factorizable() {
        let x = bp(&[3, 2, 1]);
        assert!(matches!(
            gysin_restrict_basis(&bp(&[3, 2, 1]), &x, &bp(&[2])),
            Err(Error::NotFactorizable(..))
        ));
        assert!(matches!(
            gysin_restrict_basis(&bp(&[3, 3]), &bp(&[2, 2, 1]), &bp(&[2])),
            Err(Error::NotFactorizable(..))
        ));
        assert!(matches!(gysin_restrict_basis(&bp(&[3, 3]), &x, &bp(&[3, 3])), Err(Error::NotBelow(..))));
    }

    #[test]
    fn table_lookups() {
        let t = known_lclasses();
        let l = t.lookup(&b(&[2, 1], 2, 2)).unwrap();
        assert_eq!(l.coefficient(&b(&[2, 1], 2, 2)), Q::one());
        assert_eq!(l.coefficient(&b(&[1], 2, 2)), Q::new(2.into(), 3.into()));
        assert_eq!(l.len(), 2);
        assert_eq!(t.lookup(&b(&[], 0, 0)).unwrap(), HomologyClass::point(BoxSize::new(0, 0)));
        assert!(t.lookup(&b(&[3, 2], 3, 2)).is_none());
        let moved = t.lookup(&b(&[2, 1, 0], 2, 3)).unwrap();
        assert_eq!(moved.coefficient(&b(&[1], 2, 3)), Q::new(2.into(), 3.into()));
    }

    #[test]
    fn lambda_31_shape() {
        let r = x321_report().unwrap();
        let c = r.coefficient("lambda_{3,1}").unwrap();
        assert_eq!(c.constant_part(), Q::new(2.into(), 3.into()));
        assert_eq!(c.len(), 2);
        assert_eq!(r.coefficient("lambda_{2,1,1}"), Some(c));
    }
}
