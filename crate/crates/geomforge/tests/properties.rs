//! Randomized structural invariants: field axioms on every supported field
//! size, canonical subspace representation under change of spanning set,
//! perp duality, and byte-stable report serialization.

use geomforge::field::{El, Field};
use geomforge::linear::{self, Row, Subspace};
use geomforge::polar::{self, Kind};
use geomforge::report::Report;
use proptest::prelude::*;

/// Every (p, e) with p^e ≤ 81.
const FIELD_PARAMS: &[(u64, usize)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (5, 1),
    (5, 2),
    (7, 1),
    (7, 2),
    (11, 1),
    (13, 1),
    (17, 1),
    (19, 1),
    (23, 1),
    (29, 1),
    (31, 1),
    (37, 1),
    (41, 1),
    (43, 1),
    (47, 1),
    (53, 1),
    (59, 1),
    (61, 1),
    (67, 1),
    (71, 1),
    (73, 1),
    (79, 1),
];

fn any_field() -> impl Strategy<Value = Field> {
    (0..FIELD_PARAMS.len()).prop_map(|i| {
        let (p, e) = FIELD_PARAMS[i];
        Field::new(p, e).expect("supported parameters")
    })
}

/// A field together with `k` uniformly chosen elements of it.
fn field_with_elements(k: usize) -> impl Strategy<Value = (Field, Vec<El>)> {
    any_field().prop_flat_map(move |f| {
        let q = f.q() as El;
        let elems = proptest::collection::vec(0..q, k);
        (Just(f), elems)
    })
}

/// A small field (q ≤ 5) with ambient dimension and a random spanning set.
fn field_with_rows() -> impl Strategy<Value = (Field, usize, Vec<Row>)> {
    let params = proptest::sample::select(vec![(2u64, 1usize), (2, 2), (3, 1), (5, 1)]);
    (params, 2usize..=5).prop_flat_map(|((p, e), n)| {
        let f = Field::new(p, e).expect("supported parameters");
        let q = f.q() as El;
        let rows = proptest::collection::vec(proptest::collection::vec(0..q, n), 0..=5);
        (Just(f), Just(n), rows)
    })
}

fn linear_combination(f: &Field, rows: &[Row], coeffs: &[El], n: usize) -> Row {
    let mut out = vec![0 as El; n];
    for (row, &c) in rows.iter().zip(coeffs) {
        for (o, &x) in out.iter_mut().zip(row) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

proptest! {
    /// Commutativity, associativity, distributivity, and inverse laws hold
    /// for sampled triples in every supported field.
    #[test]
    fn field_axioms_hold((f, abc) in field_with_elements(3)) {
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.mul(a, f.one()), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)?), f.one());
        }
    }

    /// The q-power map is a ring automorphism whose order divides e.
    #[test]
    fn frobenius_is_an_automorphism((f, ab) in field_with_elements(2)) {
        let (a, b) = (ab[0], ab[1]);
        prop_assert_eq!(
            f.frobenius(f.add(a, b), 1),
            f.add(f.frobenius(a, 1), f.frobenius(b, 1))
        );
        prop_assert_eq!(
            f.frobenius(f.mul(a, b), 1),
            f.mul(f.frobenius(a, 1), f.frobenius(b, 1))
        );
        prop_assert_eq!(f.frobenius(a, f.e()), a);
        // Iterating the 1-step map k times agrees with the k-step map.
        let mut x = a;
        for k in 0..f.e() {
            prop_assert_eq!(x, f.frobenius(a, k));
            x = f.frobenius(x, 1);
        }
    }

    /// Projective normalization is constant on scalar orbits.
    #[test]
    fn normalization_ignores_scaling(
        (f, mut v) in field_with_elements(5),
        c in 1u8..8,
    ) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let c = c % (f.q() as El);
        prop_assume!(c != 0);
        let base = linear::normalize(&f, &v)?;
        for x in &mut v {
            *x = f.mul(*x, c);
        }
        prop_assert_eq!(linear::normalize(&f, &v)?, base);
    }

    /// Two spanning sets of the same subspace produce bit-identical
    /// canonical representations: shuffling, row scaling, and appending
    /// linear combinations never change the key.
    #[test]
    fn subspace_representation_is_canonical(
        (f, n, rows) in field_with_rows(),
        seed in proptest::collection::vec(0u8..255, 8),
    ) {
        let s = Subspace::from_rows(&f, rows.clone(), n);

        // Rebuild from a mangled spanning set driven by the seed bytes:
        // reverse order, scale each row by a nonzero constant, then append
        // random linear combinations of the originals.
        let q = f.q() as El;
        let mut spanning: Vec<Row> = rows.iter().rev().cloned().collect();
        for (i, row) in spanning.iter_mut().enumerate() {
            let c = 1 + seed[i % seed.len()] % (q - 1).max(1);
            for x in row.iter_mut() {
                *x = f.mul(*x, c);
            }
        }
        if !rows.is_empty() {
            for chunk in seed.chunks(rows.len()) {
                let coeffs: Vec<El> = chunk.iter().map(|&b| b % q).collect();
                spanning.push(linear_combination(&f, &rows, &coeffs, n));
            }
        }
        let t = Subspace::from_rows(&f, spanning, n);

        prop_assert_eq!(s.key(&f), t.key(&f));
        prop_assert_eq!(s.dim(), t.dim());
    }

    /// Intersection is commutative, contained in both arguments, and obeys
    /// the dimension lower bound dim A + dim B − n.
    #[test]
    fn intersection_laws(
        (f, n, rows_a) in field_with_rows(),
        rows_b in proptest::collection::vec(proptest::collection::vec(0u8..2, 5), 0..=4),
    ) {
        let a = Subspace::from_rows(&f, rows_a, n);
        let rows_b: Vec<Row> = rows_b
            .into_iter()
            .map(|r| r.into_iter().take(n).map(|x| x % f.q() as El).collect())
            .collect();
        let b = Subspace::from_rows(&f, rows_b, n);

        let ab = linear::intersect(&f, &a, &b)?;
        let ba = linear::intersect(&f, &b, &a)?;
        prop_assert_eq!(ab.key(&f), ba.key(&f));
        prop_assert!(ab.is_subspace_of(&f, &a));
        prop_assert!(ab.is_subspace_of(&f, &b));
        let lower = (a.dim() + b.dim()).saturating_sub(n);
        prop_assert!(ab.dim() >= lower);
    }

    /// In a nondegenerate symplectic space, perp is an involution on
    /// subspaces and complements dimensions.
    #[test]
    fn double_perp_recovers_subspace(
        rows in proptest::collection::vec(proptest::collection::vec(0u8..3, 4), 0..=4),
    ) {
        let space = polar::standard_space(Kind::Symplectic, 4, 3)?;
        let f = &space.field;
        let s = Subspace::from_rows(f, rows, 4);
        let perp = space.perp(&s);
        prop_assert_eq!(perp.dim(), 4 - s.dim());
        let back = space.perp(&perp);
        prop_assert_eq!(back.key(f), s.key(f));
    }

    /// Report JSON is independent of the order checks were recorded in and
    /// is stable across repeated serialization.
    #[test]
    fn report_serialization_is_order_independent(
        entries in proptest::collection::btree_map("[a-z]{1,12}", any::<bool>(), 1..10)
            .prop_flat_map(|m| {
                let v: Vec<(String, bool)> = m.into_iter().collect();
                let shuffled = Just(v.clone()).prop_shuffle();
                (Just(v), shuffled)
            }),
    ) {
        let (ordered, shuffled) = entries;
        let build = |items: &[(String, bool)]| {
            let mut r = Report::new("probe");
            r.param("n", items.len());
            for (name, pass) in items {
                r.check(name, *pass);
            }
            r.count("checks", items.len());
            r.finalize();
            r.to_json()
        };
        let a = build(&ordered);
        let b = build(&shuffled);
        let again = build(&ordered);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.as_bytes(), again.as_bytes());
    }
}
