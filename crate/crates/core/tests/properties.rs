use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use loopkit::catalog::{emit_catalog, parse_catalog, CatalogRecord};
use loopkit::conditions::{self, abc_conditions, quad_conditions, quad_values, triple_conditions};
use loopkit::enumerate::enumerate_loops;
use loopkit::fixtures::{bol_16, cyclic, moufang_12};
use loopkit::ring::{ring_one, rmul, Gf2Elem};
use loopkit::survey::classify;
use loopkit::{validate_table, LoopError, LoopTable};

fn corpus() -> &'static [LoopTable] {
    static CORPUS: OnceLock<Vec<LoopTable>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = vec![bol_16(), moufang_12()];
        for n in 2..=5 {
            enumerate_loops(n, |l| out.push(l.clone())).unwrap();
        }
        // every order-6 loop that is right Bol, plus a slice of the rest
        let mut k = 0;
        enumerate_loops(6, |l| {
            k += 1;
            if k % 97 == 0 || loopkit::identities::is_right_bol(l) {
                out.push(l.clone());
            }
        })
        .unwrap();
        out
    })
}

fn relabel(l: &LoopTable, perm: &[usize]) -> LoopTable {
    let n = l.order();
    let mut rows = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[perm[i]][perm[j]] = perm[l.mul(i, j)] + 1;
        }
    }
    validate_table(&rows).unwrap()
}

fn any_loop() -> impl Strategy<Value = LoopTable> {
    any::<Index>().prop_map(|i| i.get(corpus()).clone())
}

/// A corpus loop under a random relabeling of its elements.
fn shuffled_loop() -> impl Strategy<Value = (LoopTable, LoopTable)> {
    any_loop().prop_flat_map(|l| {
        let n = l.order();
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |perm| (l.clone(), relabel(&l, &perm)))
    })
}

fn loop_and_triple() -> impl Strategy<Value = (LoopTable, usize, usize, usize)> {
    any_loop().prop_flat_map(|l| {
        let n = l.order();
        (Just(l), 0..n, 0..n, 0..n)
    })
}

fn small_loop_and_elems(k: usize) -> impl Strategy<Value = (LoopTable, Vec<Gf2Elem>)> {
    any::<Index>()
        .prop_map(|i| {
            let small: Vec<&LoopTable> = corpus().iter().filter(|l| l.order() <= 16).collect();
            (*i.get(&small)).clone()
        })
        .prop_flat_map(move |l| {
            let n = l.order();
            let mask = (1u64 << n) - 1;
            (Just(l), proptest::collection::vec(any::<u64>().prop_map(move |b| Gf2Elem::from_bits(n, b & mask)), k))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn catalog_roundtrip(picks in proptest::collection::vec(shuffled_loop(), 0..6)) {
        let records: Vec<CatalogRecord> = picks
            .into_iter()
            .enumerate()
            .map(|(i, (_, l))| CatalogRecord { name: format!("r{i}.{}", l.order()), table: l, source_line: 0 })
            .collect();
        let text = emit_catalog(&records);
        let parsed = parse_catalog(&text).unwrap();
        prop_assert_eq!(parsed.len(), records.len());
        for (a, b) in parsed.iter().zip(&records) {
            prop_assert_eq!(&a.name, &b.name);
            prop_assert_eq!(&a.table, &b.table);
        }
        prop_assert_eq!(emit_catalog(&parsed), text);
    }

    #[test]
    fn classification_is_invariant_under_relabeling((l, r) in shuffled_loop()) {
        let a = classify("a", &l);
        let b = classify("b", &r);
        prop_assert_eq!(a.flags, b.flags);
        prop_assert_eq!(a.triple_profile, b.triple_profile);
        prop_assert_eq!(classify("n", &r.normalized()).flags, b.flags);
    }

    #[test]
    fn quad_at_identity_is_triple((l, x, y, z) in loop_and_triple()) {
        let e = l.identity();
        prop_assert_eq!(quad_conditions(&l, x, y, z, e).bits(), triple_conditions(&l, x, y, z).bits());
    }

    #[test]
    fn starred_conditions_are_the_triple_conditions((l, x, y, z) in loop_and_triple()) {
        prop_assert_eq!(abc_conditions(&l, x, y, z).right, triple_conditions(&l, x, y, z));
    }

    #[test]
    fn quad_membership_matches_values((l, x, y, z) in loop_and_triple(), w in any::<Index>()) {
        let w = w.index(l.order());
        let v = quad_values(&l, x, y, z, w);
        let c = quad_conditions(&l, x, y, z, w);
        prop_assert_eq!(c.first(), v.s == v.t && v.u == v.v);
        prop_assert_eq!(c.second(), v.s == v.v && v.t == v.u);
        prop_assert_eq!(c.third(), v.s == v.u && v.t == v.v);
    }

    #[test]
    fn srar_condition_sets_are_all_or_one((l, x, y, z) in loop_and_triple(), w in any::<Index>()) {
        prop_assume!(conditions::is_srar(&l));
        let w = w.index(l.order());
        prop_assert!(matches!(quad_conditions(&l, x, y, z, w).len(), 1 | 3));
        prop_assert!(matches!(triple_conditions(&l, x, y, z).len(), 1 | 3));
    }

    #[test]
    fn ra2_implies_srar(l in any_loop()) {
        prop_assert!(!conditions::is_ra2(&l) || conditions::is_srar(&l));
    }

    #[test]
    fn rmul_distributes((l, e) in small_loop_and_elems(3)) {
        let (a, b, c) = (e[0], e[1], e[2]);
        let m = |p, q| rmul(&l, p, q).unwrap();
        prop_assert_eq!(m(a, b + c), m(a, b) + m(a, c));
        prop_assert_eq!(m(a + b, c), m(a, c) + m(b, c));
    }

    #[test]
    fn ring_one_is_two_sided((l, e) in small_loop_and_elems(1)) {
        let one = ring_one(&l);
        prop_assert_eq!(rmul(&l, one, e[0]).unwrap(), e[0]);
        prop_assert_eq!(rmul(&l, e[0], one).unwrap(), e[0]);
    }

    #[test]
    fn group_rings_are_associative(n in 1usize..=8, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let l = cyclic(n);
        let mask = (1u64 << n) - 1;
        let (a, b, c) = (Gf2Elem::from_bits(n, a & mask), Gf2Elem::from_bits(n, b & mask), Gf2Elem::from_bits(n, c & mask));
        let m = |p, q| rmul(&l, p, q).unwrap();
        prop_assert_eq!(m(m(a, b), c), m(a, m(b, c)));
    }

    #[test]
    fn breaking_a_row_is_rejected(l in any_loop(), r in any::<Index>(), c1 in any::<Index>(), c2 in any::<Index>()) {
        let n = l.order();
        let (r, c1, c2) = (r.index(n), c1.index(n), c2.index(n));
        prop_assume!(c1 != c2);
        let mut rows = l.to_rows_one_based();
        rows[r][c1] = rows[r][c2];
        prop_assert!(
            matches!(validate_table(&rows), Err(LoopError::NotLatin { .. })),
            "duplicate in row {} accepted", r + 1
        );
    }
}

#[test]
fn group_rings_are_associative_exhaustively_at_order_four() {
    let klein: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| (i ^ j) + 1).collect()).collect();
    for l in [cyclic(4), validate_table(&klein).unwrap()] {
        let n = l.order();
        let all: Vec<Gf2Elem> = (0..1u64 << n).map(|b| Gf2Elem::from_bits(n, b)).collect();
        let m = |p, q| rmul(&l, p, q).unwrap();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    assert_eq!(m(m(a, b), c), m(a, m(b, c)));
                    assert_eq!(m(a, b + c), m(a, b) + m(a, c));
                }
            }
        }
    }
}
