use proptest::prelude::*;

use subset_sums::code::{build_codebook, Word};
use subset_sums::counting::count_dp;
use subset_sums::GroupSpec;

fn group_strategy() -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(2usize..=6, 0..=3).prop_map(|orders| GroupSpec::new(&orders).unwrap())
}

fn group_with_indices() -> impl Strategy<Value = (GroupSpec, usize, usize, usize)> {
    group_strategy().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 0..n, 0..n, 0..n)
    })
}

proptest! {
    #[test]
    fn group_laws((g, a, b, c) in group_with_indices()) {
        let (x, y, z) = (
            g.element_from_index(a).unwrap(),
            g.element_from_index(b).unwrap(),
            g.element_from_index(c).unwrap(),
        );
        prop_assert_eq!(g.add(&x, &y).unwrap(), g.add(&y, &x).unwrap());
        let left = g.add(&g.add(&x, &y).unwrap(), &z).unwrap();
        let right = g.add(&x, &g.add(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(g.add(&x, &g.neg(&x).unwrap()).unwrap(), g.identity());
        prop_assert_eq!(g.element_to_index(&x).unwrap(), a);
        prop_assert_eq!(g.element_to_index(&g.add(&x, &y).unwrap()).unwrap(), g.add_index(a, b));
        prop_assert_eq!(g.element_to_index(&g.sub(&x, &y).unwrap()).unwrap(), g.sub_index(a, b));
    }

    #[test]
    fn scalar_mul_is_repeated_addition((g, a, _, _) in group_with_indices(), k in -8i64..=8) {
        let x = g.element_from_index(a).unwrap();
        let mut acc = g.identity();
        for _ in 0..k.unsigned_abs() {
            acc = g.add(&acc, &x).unwrap();
        }
        if k < 0 {
            acc = g.neg(&acc).unwrap();
        }
        prop_assert_eq!(g.element_to_index(&g.scalar_mul(k, &x).unwrap()).unwrap(), g.element_to_index(&acc).unwrap());
        prop_assert_eq!(g.scalar_mul_index(k, a), g.element_to_index(&acc).unwrap());
    }

    #[test]
    fn total_sum_matches_fold(g in group_strategy()) {
        let folded = g.elements().fold(g.identity(), |s, x| g.add(&s, &x).unwrap());
        prop_assert_eq!(g.total_sum(), folded);
    }

    #[test]
    fn spec_string_round_trips(g in group_strategy()) {
        let parsed: GroupSpec = g.to_string().parse().unwrap();
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn hamming_is_twice_the_symmetric_part(
        len in 1usize..=150,
        seeds in prop::collection::vec(any::<u64>(), 2),
        weight in 0usize..=150,
    ) {
        let h = weight.min(len);
        let pick = |seed: u64| {
            let mut members: Vec<usize> = (0..len).collect();
            let mut s = seed;
            for i in (1..len).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                members.swap(i, (s >> 33) as usize % (i + 1));
            }
            members.truncate(h);
            Word::from_members(len, &members)
        };
        let (u, v) = (pick(seeds[0]), pick(seeds[1]));
        prop_assert_eq!(u.weight(), h);
        prop_assert_eq!(u.hamming(&v), 2 * (h - u.intersection(&v)));
        prop_assert_eq!(u.hamming(&u), 0);
    }

    #[test]
    fn translation_invariance((g, t, a, _) in group_with_indices(), h in 0usize..=8) {
        let n = g.order();
        prop_assume!(h <= n && n <= 48);
        let table = count_dp(&g, h).unwrap();
        let shifted = g.add_index(a, g.scalar_mul_index(h as i64, t));
        prop_assert_eq!(table.get(h, a), table.get(h, shifted));
    }

    #[test]
    fn codebook_words_sum_to_target((g, a, _, _) in group_with_indices(), h in 0usize..=4) {
        let n = g.order();
        prop_assume!(h <= n && n <= 40);
        let target = g.element_from_index(a).unwrap();
        let book = build_codebook(&g, h, &target, 2_000_000).unwrap();
        let table = count_dp(&g, h).unwrap();
        prop_assert_eq!(book.len().to_string(), table.get(h, a).unwrap().to_string());
        for w in book.words() {
            let sum = (0..n).filter(|&i| w.bit(i)).fold(0, |s, i| g.add_index(s, i));
            prop_assert_eq!(sum, a);
        }
        let text: Vec<String> = book.words().iter().map(|w| w.to_string()).collect();
        prop_assert!(text.windows(2).all(|p| p[0] < p[1]));
    }
}
