use num_bigint::BigInt;
use proptest::prelude::*;

use schubert_calc::expansion::{EmbeddedVariety, ExpansionEngine, Mode};
use schubert_calc::io::{oracle_to_json, parse_oracle, parse_partition, ExpansionReport};
use schubert_calc::lr::{pieri, LrCache};
use schubert_calc::ring::{intersect, pair_kind, schubert_product, HomologyClass, PairKind};
use schubert_calc::symbolic::{OracleTable, SymbolicScalar, UnknownSymbol};
use schubert_calc::{BoxSize, BoxedPartition, Q};

fn boxsize(max_m: usize, max_k: usize) -> impl Strategy<Value = BoxSize> {
    (0..=max_m, 0..=max_k).prop_map(|(m, k)| BoxSize::new(m, k))
}

fn partition_in(bx: BoxSize) -> impl Strategy<Value = BoxedPartition> {
    proptest::collection::vec(0..=bx.m, bx.k).prop_map(move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        BoxedPartition::new(&v, bx).unwrap()
    })
}

fn partition() -> impl Strategy<Value = BoxedPartition> {
    boxsize(4, 4).prop_flat_map(partition_in)
}

/// Several partitions sharing one box.
fn family(n: usize) -> impl Strategy<Value = Vec<BoxedPartition>> {
    (1..=3usize, 1..=3usize).prop_flat_map(move |(m, k)| proptest::collection::vec(partition_in(BoxSize::new(m, k)), n))
}

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

fn class(bx: BoxSize) -> impl Strategy<Value = HomologyClass> {
    proptest::collection::vec((partition_in(bx), rational()), 0..4).prop_map(move |terms| {
        let mut c = HomologyClass::zero(bx);
        for (a, q) in terms {
            c.add_term(a, q);
        }
        c
    })
}

fn classes(n: usize) -> impl Strategy<Value = Vec<HomologyClass>> {
    (1..=3usize, 1..=3usize).prop_flat_map(move |(m, k)| proptest::collection::vec(class(BoxSize::new(m, k)), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn complement_is_an_involution(a in partition()) {
        let c = a.complement();
        prop_assert_eq!(c.weight() + a.weight(), a.bx().cells());
        prop_assert_eq!(c.complement(), a);
    }

    #[test]
    fn transpose_is_an_involution(a in partition()) {
        prop_assert_eq!(a.transpose().weight(), a.weight());
        prop_assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn amalgamation_box_and_weight(x in partition(), y in partition()) {
        let z = x.amalgamate(&y);
        prop_assert_eq!(z.bx(), BoxSize::new(x.bx().m + y.bx().m, x.bx().k + y.bx().k));
        prop_assert_eq!(z.weight(), x.weight() + y.weight() + x.bx().m * y.bx().k);
    }

    #[test]
    fn profile_round_trip(a in boxsize(4, 4).prop_filter("rows", |b| b.k > 0).prop_flat_map(partition_in)) {
        let p = a.complementary_profile().unwrap();
        prop_assert!(p.k2 < a.bx().k);
        if p.m2 > 0 {
            prop_assert_eq!(p.complement.reconstruct_from_complement(a.bx()).unwrap(), a);
        }
    }

    #[test]
    fn text_round_trip(a in partition()) {
        prop_assert_eq!(parse_partition(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn product_is_commutative(v in family(2)) {
        prop_assert_eq!(schubert_product(&v[0], &v[1]).unwrap(), schubert_product(&v[1], &v[0]).unwrap());
    }

    #[test]
    fn product_is_graded(v in family(2)) {
        let p = schubert_product(&v[0], &v[1]).unwrap();
        let cells = v[0].bx().cells();
        if v[0].weight() + v[1].weight() < cells {
            prop_assert!(p.is_zero());
        } else {
            let d = v[0].weight() + v[1].weight() - cells;
            prop_assert!(p.terms().all(|(c, q)| c.weight() == d && *q > Q::from_integer(0.into())));
        }
    }

    #[test]
    fn fundamental_class_is_the_unit(a in family(1)) {
        let top = BoxedPartition::full(a[0].bx());
        prop_assert_eq!(schubert_product(&top, &a[0]).unwrap(), HomologyClass::schubert(&a[0]));
    }

    #[test]
    fn pair_kind_verdicts(v in family(2)) {
        let p = schubert_product(&v[0], &v[1]).unwrap();
        match pair_kind(&v[0], &v[1]).unwrap() {
            PairKind::Empty => prop_assert!(p.is_zero()),
            PairKind::Point => prop_assert_eq!(p, HomologyClass::point(v[0].bx())),
            PairKind::Other => prop_assert!(!p.is_zero()),
        }
    }

    #[test]
    fn intersection_is_associative(c in classes(3)) {
        let left = intersect(&intersect(&c[0], &c[1]).unwrap(), &c[2]).unwrap();
        let right = intersect(&c[0], &intersect(&c[1], &c[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn intersection_is_bilinear(c in classes(3), q in rational()) {
        let sum = c[0].add(&c[1].scale(&q)).unwrap();
        let expected = intersect(&c[0], &c[2]).unwrap().add(&intersect(&c[1], &c[2]).unwrap().scale(&q)).unwrap();
        prop_assert_eq!(intersect(&sum, &c[2]).unwrap(), expected);
    }

    #[test]
    fn lr_agrees_with_pieri(lam in partition(), p in 1..=4usize, vertical in any::<bool>()) {
        let bx = lam.bx();
        let limit = if vertical { bx.k } else { bx.m };
        prop_assume!(p <= limit && bx.m > 0 && bx.k > 0);
        let factor = if vertical { vec![1; p] } else { vec![p] };
        let f = BoxedPartition::new(&factor, bx).unwrap();
        prop_assert_eq!(&*LrCache::new().expand(&lam, &f).unwrap(), &pieri(&lam, p, vertical));
    }

    #[test]
    fn substitution_is_a_ring_map(x in -5i64..=5, y in -5i64..=5, u in rational(), v in rational()) {
        let bx = BoxSize::new(1, 1);
        let a = UnknownSymbol::integral(BoxedPartition::full(bx), BoxedPartition::zero(bx));
        let b = UnknownSymbol::integral(BoxedPartition::zero(bx), BoxedPartition::full(bx));
        let p = &(&SymbolicScalar::symbol(a.clone()) * &SymbolicScalar::integer(x)) + &SymbolicScalar::symbol(b.clone());
        let q = &SymbolicScalar::symbol(a.clone()) - &SymbolicScalar::integer(y);
        let mut oracle = OracleTable::new();
        oracle.insert(a, u);
        oracle.insert(b, v);
        let lhs = (&p * &q).resolve(&oracle).unwrap();
        prop_assert_eq!(lhs, p.resolve(&oracle).unwrap() * q.resolve(&oracle).unwrap());
    }

    #[test]
    fn oracle_json_round_trip(values in proptest::collection::vec(rational(), 1..6), a in family(1)) {
        let bx = a[0].bx();
        let mut table = OracleTable::new();
        for (i, v) in values.into_iter().enumerate() {
            let b = BoxedPartition::new(&[i.min(bx.m)], BoxSize::new(bx.m, 1)).unwrap();
            table.insert(UnknownSymbol::genus(EmbeddedVariety::schubert(&a[0]).key(), b.clone()), v.clone());
            table.insert(UnknownSymbol::integral(a[0].clone(), b), v);
        }
        prop_assert_eq!(parse_oracle(&oracle_to_json(&table)).unwrap(), table);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expansion_report_round_trip(a in (1..=2usize, 1..=2usize).prop_flat_map(|(m, k)| partition_in(BoxSize::new(m, k))), deep in any::<bool>()) {
        let mode = if deep { Mode::Deep } else { Mode::Shallow };
        let e = ExpansionEngine::new(mode).expand_all(&EmbeddedVariety::schubert(&a)).unwrap();
        let report = ExpansionReport::from_expansion(&e);
        prop_assert_eq!(ExpansionReport::from_json(&report.to_json()).unwrap(), report);
    }

    #[test]
    fn top_coefficient_is_one(a in (1..=3usize, 1..=2usize).prop_flat_map(|(m, k)| partition_in(BoxSize::new(m, k)))) {
        let e = ExpansionEngine::new(Mode::Shallow).expand_all(&EmbeddedVariety::schubert(&a)).unwrap();
        prop_assert_eq!(e.coefficient(&a), Some(&SymbolicScalar::one()));
        for (b, c) in e.entries() {
            prop_assert!(b.weight() <= a.weight());
            if b.weight() == a.weight() && b != &a {
                prop_assert!(c.is_zero());
            }
        }
        prop_assert_eq!(e.entries().count(), (0..=a.weight()).map(|w| BoxedPartition::all_of_weight(a.bx(), w).len()).sum::<usize>());
    }
}
