use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stable_resolve::corpus::random_stable_ideal;
use stable_resolve::resolution::{build_ek_resolution, build_resolution};
use stable_resolve::verify::{run_suite, Depth};
use stable_resolve::{Monomial, MonomialIdeal, PosetOfSymbols, PrimeField};

fn monomials_up_to(d: usize, degree: u32) -> Vec<Monomial> {
    Monomial::new(vec![degree; d]).divisors().into_iter().filter(|m| m.total_degree() <= degree).collect()
}

/// Stability straight from the definition, over every monomial of bounded
/// degree.
fn brute_stable(n: &MonomialIdeal, bound: u32) -> bool {
    monomials_up_to(n.nvars(), bound).iter().filter(|m| n.contains(m)).all(|m| {
        let r = m.max_index();
        (1..r).all(|i| n.contains(&m.times_var(i).quotient(&Monomial::var(n.nvars(), r)).unwrap()))
    })
}

#[test]
fn stability_matches_the_definition_on_all_small_ideals() {
    // every ideal generated by a set of monomials of degree <= 2 in 3 variables
    let pool = monomials_up_to(3, 2).into_iter().filter(|m| !m.is_one()).collect::<Vec<_>>();
    assert_eq!(pool.len(), 9);
    let mut stable = 0;
    for mask in 1u32..(1 << pool.len()) {
        let gens: Vec<Monomial> = (0..pool.len()).filter(|k| mask >> k & 1 == 1).map(|k| pool[k].clone()).collect();
        let n = MonomialIdeal::minimalize(gens).unwrap();
        let expected = brute_stable(&n, 4);
        assert_eq!(n.is_stable(), expected, "{}", n.to_text());
        stable += usize::from(expected);
    }
    assert!(stable > 0);
}

fn arb_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (any::<u64>(), 1usize..=4, 1u32..=4).prop_filter_map("generator cap", |(seed, d, deg)| {
        random_stable_ideal(&mut ChaCha8Rng::seed_from_u64(seed), d, deg, 16)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_is_unique_and_ordered(n in arb_ideal()) {
        let bound = n.max_generator_degree() + 1;
        for m in monomials_up_to(n.nvars(), bound).iter().filter(|m| n.contains(m)) {
            let dec = n.decompose(m).unwrap();
            prop_assert_eq!(dec.g.multiply(&dec.y), m.clone());
            prop_assert!(dec.y.is_one() || dec.g.max_index() <= dec.y.min_index());
            let count = n.generators().iter().filter(|g| {
                g.divides(m) && {
                    let y = m.quotient(g).unwrap();
                    y.is_one() || g.max_index() <= y.min_index()
                }
            }).count();
            prop_assert_eq!(count, 1);
        }
    }

    #[test]
    fn builders_agree(n in arb_ideal()) {
        let field = PrimeField::default();
        let p = PosetOfSymbols::build(&n).unwrap();
        let a = build_resolution(&p, field);
        let b = build_ek_resolution(&n, field).unwrap();
        prop_assert_eq!(a.entry_set(), b.entry_set());
    }

    #[test]
    fn quick_suite_passes(n in arb_ideal(), seed in any::<u64>()) {
        let r = run_suite(&n, PrimeField::default(), Depth::Quick, seed);
        prop_assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn symbol_count_is_the_closed_form(n in arb_ideal()) {
        // each generator m contributes 2^(max(m) - 1) symbols
        let p = PosetOfSymbols::build(&n).unwrap();
        let expected: usize = 1 + n.generators().iter().map(|g| 1usize << (g.max_index() - 1)).sum::<usize>();
        prop_assert_eq!(p.len(), expected);
    }
}
