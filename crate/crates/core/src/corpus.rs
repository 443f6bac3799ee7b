//! Seeded random stable ideals for corpus-wide verification.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusParams {
    pub seed: u64,
    pub count: usize,
    pub max_vars: usize,
    pub max_degree: u32,
    pub max_generators: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { seed: 2010, count: 50, max_vars: 4, max_degree: 5, max_generators: 20 }
    }
}

/// Smallest stable ideal containing `seeds`: close under
/// `m -> m * x_i / x_max(m)` for `i < max(m)`, then minimalize.
pub fn stable_closure(seeds: Vec<Monomial>) -> crate::Result<MonomialIdeal> {
    let mut set: BTreeSet<Monomial> = BTreeSet::new();
    let mut work: Vec<Monomial> = seeds;
    while let Some(m) = work.pop() {
        if set.iter().any(|g| g.divides(&m)) {
            continue;
        }
        let r = m.max_index();
        let top = Monomial::var(m.nvars(), r);
        for i in 1..r {
            work.push(m.times_var(i).quotient(&top).expect("x_max divides m"));
        }
        set.insert(m);
    }
    MonomialIdeal::minimalize(set.into_iter().collect())
}

fn random_monomial<R: Rng>(rng: &mut R, d: usize, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(max_degree.min(2)..=max_degree);
    let mut exps = vec![0u32; d];
    exps[d - 1] = 1;
    for _ in 1..degree {
        exps[rng.gen_range(0..d)] += 1;
    }
    Monomial::new(exps)
}

/// One random stable ideal in `d` variables, or `None` if 64 attempts all
/// exceeded the generator cap. Seeds always involve `x_d` so that every
/// variable appears.
pub fn random_stable_ideal<R: Rng>(
    rng: &mut R,
    d: usize,
    max_degree: u32,
    max_generators: usize,
) -> Option<MonomialIdeal> {
    for _ in 0..64 {
        let seeds = (0..rng.gen_range(1..=3)).map(|_| random_monomial(rng, d, max_degree)).collect();
        let ideal = stable_closure(seeds).expect("nonempty seeds");
        if ideal.generators().len() <= max_generators {
            return Some(ideal);
        }
    }
    None
}

/// `params.count` ideals, deterministic in `params.seed`.
pub fn generate(params: &CorpusParams) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::with_capacity(params.count);
    while out.len() < params.count {
        let d = rng.gen_range(params.max_vars.clamp(1, 2)..=params.max_vars.max(1));
        if let Some(ideal) = random_stable_ideal(&mut rng, d, params.max_degree, params.max_generators) {
            out.push(ideal);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_c_squared_is_the_square_of_the_maximal_ideal() {
        let n = stable_closure(vec![Monomial::new(vec![0, 0, 2])]).unwrap();
        assert_eq!(n.generators().len(), 6);
        assert!(n.is_stable());
    }

    #[test]
    fn corpus_is_stable_bounded_and_deterministic() {
        let params = CorpusParams { count: 30, ..Default::default() };
        let a = generate(&params);
        let b = generate(&params);
        assert_eq!(a, b);
        for n in &a {
            assert!(n.is_stable());
            assert!(n.nvars() <= 4);
            assert!(n.generators().len() <= 20);
            assert!(n.max_generator_degree() <= 5);
        }
    }
}
