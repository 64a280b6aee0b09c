use kpell::counting::degree_formula;
use kpell::embed::phi;
use kpell::graph::{are_adjacent, neighbors};
use kpell::words::{is_valid_fib, is_valid_kpell, KPellWord, Letter};
use proptest::prelude::*;

fn valid_word(n: usize, k: Letter) -> impl Strategy<Value = KPellWord> {
    prop::collection::vec(0..=k, n)
        .prop_filter("runs of the top letter must have even length", move |v| {
            is_valid_kpell(v, k)
        })
        .prop_map(move |v| KPellWord::new(v, k).unwrap())
}

fn word_any() -> impl Strategy<Value = KPellWord> {
    (2u8..=6, 0usize..=6).prop_flat_map(|(k, n)| valid_word(n, k))
}

proptest! {
    #[test]
    fn neighbor_lists_are_sorted_irreflexive_symmetric(w in word_any()) {
        let ns = neighbors(&w);
        prop_assert!(ns.windows(2).all(|p| p[0].letters() < p[1].letters()));
        for u in &ns {
            prop_assert_ne!(u.letters(), w.letters());
            prop_assert!(neighbors(u).iter().any(|x| x.letters() == w.letters()));
        }
    }

    #[test]
    fn generated_neighbors_satisfy_the_move_definition(w in word_any()) {
        for u in neighbors(&w) {
            prop_assert!(are_adjacent(w.letters(), u.letters(), w.k()));
        }
    }

    #[test]
    fn degree_formula_counts_neighbors(w in word_any()) {
        prop_assert_eq!(degree_formula(&w), neighbors(&w).len() as u64);
    }

    #[test]
    fn images_are_valid_target_strings(w in word_any()) {
        prop_assume!(!w.letters().is_empty());
        let img = phi(&w);
        prop_assert_eq!(img.len(), (2 * w.k() as usize - 2) * w.letters().len() - 1);
        prop_assert!(is_valid_fib(&img));
    }
}
