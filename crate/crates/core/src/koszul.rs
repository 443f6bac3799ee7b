//! Multigraded Betti numbers of `R/N` from the Koszul complex, computed
//! without the poset or the resolution.
//!
//! `β_{i,a}(R/N) = dim H_i(K(x) ⊗ R/N)_a`. In degree `a` the term
//! `K_i(a)` has one basis vector `x^(a - ε_S) e_S` for each `S ⊆ [d]`
//! with `|S| = i`, `a - ε_S >= 0` and `x^(a - ε_S) ∉ N`. The boundary is
//! `e_S ↦ Σ_{j ∈ S} (-1)^pos(j, S) x_j e_{S∖j}`, where `pos(j, S)` counts
//! the elements of `S` below `j`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::field::PrimeField;
use crate::ideal::MonomialIdeal;
use crate::linalg::SparseMatrix;
use crate::monomial::{Monomial, Multidegree};
use crate::report::CheckReport;
use crate::resolution::FreeComplex;

/// `dim (R/N)_a`, which is 0 or 1.
pub fn quotient_dim(ideal: &MonomialIdeal, a: &Multidegree) -> usize {
    usize::from(!ideal.contains(a))
}

/// The Koszul complex of `R/N` restricted to one multidegree.
#[derive(Clone, Debug)]
pub struct KoszulSlice {
    pub multidegree: Multidegree,
    /// `basis[i]` lists the subsets `S` as bitmasks over variables `0..d`.
    pub basis: Vec<Vec<u64>>,
    /// `boundaries[i - 1]` is the matrix `K_i(a) -> K_{i-1}(a)`.
    pub boundaries: Vec<SparseMatrix>,
}

fn shifted(a: &Multidegree, mask: u64) -> Option<Monomial> {
    let mut e = a.exponents().to_vec();
    for (j, ej) in e.iter_mut().enumerate() {
        if mask >> j & 1 == 1 {
            *ej = ej.checked_sub(1)?;
        }
    }
    Some(Monomial::new(e))
}

impl KoszulSlice {
    pub fn new(ideal: &MonomialIdeal, a: &Multidegree, field: &PrimeField) -> Self {
        let d = ideal.nvars();
        let support: u64 = (0..d).filter(|&j| a.exponents()[j] > 0).fold(0, |acc, j| acc | 1 << j);
        let mut basis = vec![Vec::new(); d + 1];
        // enumerate subsets of the support in increasing order
        let mut s = 0u64;
        loop {
            if !ideal.contains(&shifted(a, s).expect("subset of support")) {
                basis[s.count_ones() as usize].push(s);
            }
            if s == support {
                break;
            }
            s = (s | !support).wrapping_add(1) & support;
        }
        for level in &mut basis {
            level.sort_unstable();
        }
        let index: Vec<HashMap<u64, usize>> =
            basis.iter().map(|l| l.iter().enumerate().map(|(k, &s)| (s, k)).collect()).collect();
        let boundaries = (1..=d)
            .map(|i| {
                let mut m = SparseMatrix::zeros(basis[i - 1].len(), basis[i].len());
                for (col, &s) in basis[i].iter().enumerate() {
                    for j in (0..d).filter(|&j| s >> j & 1 == 1) {
                        let pos = (s & ((1u64 << j) - 1)).count_ones();
                        if let Some(&row) = index[i - 1].get(&(s & !(1 << j))) {
                            m.push(row, col, field.sign(pos.is_multiple_of(2)));
                        }
                    }
                }
                m
            })
            .collect();
        KoszulSlice { multidegree: a.clone(), basis, boundaries }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// `β_{i,a}` for `i = 0..=d`.
    pub fn homology(&self, field: &PrimeField) -> Vec<usize> {
        let dims = self.dims();
        let mut ranks: Vec<usize> = self.boundaries.iter().map(|m| m.rank(field)).collect();
        ranks.insert(0, 0);
        ranks.push(0);
        (0..dims.len()).map(|i| dims[i] - ranks[i] - ranks[i + 1]).collect()
    }
}

/// `β_{i,a}(R/N)` for `i = 0..=d`.
pub fn koszul_betti(ideal: &MonomialIdeal, a: &Multidegree, field: &PrimeField) -> Vec<usize> {
    let slice = KoszulSlice::new(ideal, a, field);
    let betti = slice.homology(field);
    let euler =
        |v: &[usize]| v.iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum::<i64>();
    debug_assert_eq!(euler(&slice.dims()), euler(&betti));
    betti
}

/// Euler characteristic agreement between the slice and its homology.
pub fn verify_euler(ideal: &MonomialIdeal, degrees: &[Multidegree], field: &PrimeField) -> CheckReport {
    let violations = degrees
        .par_iter()
        .filter_map(|a| {
            let slice = KoszulSlice::new(ideal, a, field);
            let chi = |v: Vec<usize>| -> i64 {
                v.iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
            };
            let (lhs, rhs) = (chi(slice.dims()), chi(slice.homology(field)));
            (lhs != rhs).then(|| format!("degree {a:?}: chain Euler characteristic {lhs}, homology {rhs}"))
        })
        .collect();
    CheckReport::new("euler", degrees.len(), violations)
}

/// Koszul Betti numbers against the basis multidegrees of `complex` at each
/// degree in `degrees`.
pub fn compare_betti(ideal: &MonomialIdeal, complex: &FreeComplex, degrees: &[Multidegree]) -> CheckReport {
    let field = complex.field();
    let violations = degrees
        .par_iter()
        .filter_map(|a| {
            let expected = koszul_betti(ideal, a, field);
            let found: Vec<usize> = (0..expected.len()).map(|i| complex.graded_betti(i, a)).collect();
            (expected != found).then(|| format!("degree {a:?}: koszul {expected:?}, resolution {found:?}"))
        })
        .collect();
    CheckReport::new("oracle", degrees.len(), violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> MonomialIdeal {
        MonomialIdeal::parse("vars: a b c\na^2\na*b\na*c\nb^2\nb*c\nc^2\n").unwrap()
    }

    fn deg(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn quotient_dims() {
        let n = m2();
        assert_eq!(quotient_dim(&n, &deg(&[1, 0, 0])), 1);
        assert_eq!(quotient_dim(&n, &deg(&[1, 1, 0])), 0);
        assert_eq!(quotient_dim(&n, &deg(&[0, 0, 0])), 1);
    }

    #[test]
    fn betti_examples() {
        let n = m2();
        let f = PrimeField::default();
        assert_eq!(koszul_betti(&n, &deg(&[1, 1, 0]), &f), vec![0, 1, 0, 0]);
        assert_eq!(koszul_betti(&n, &deg(&[1, 1, 1]), &f), vec![0, 0, 2, 0]);
        assert_eq!(koszul_betti(&n, &deg(&[0, 0, 0]), &f), vec![1, 0, 0, 0]);
        assert_eq!(koszul_betti(&n, &deg(&[2, 1, 1]), &f), vec![0, 0, 0, 1]);
        assert_eq!(koszul_betti(&n, &deg(&[3, 0, 0]), &f), vec![0, 0, 0, 0]);
    }

    #[test]
    fn slice_boundaries_compose_to_zero() {
        let n = m2();
        let f = PrimeField::default();
        for a in deg(&[2, 2, 2]).divisors() {
            let s = KoszulSlice::new(&n, &a, &f);
            for w in s.boundaries.windows(2) {
                assert!(w[0].mul(&w[1], &f).is_zero(&f), "{a:?}");
            }
        }
    }

    #[test]
    fn total_betti_of_the_square() {
        let n = m2();
        let f = PrimeField::default();
        let mut totals = vec![0; 4];
        for a in deg(&[2, 2, 2]).divisors() {
            for (t, b) in totals.iter_mut().zip(koszul_betti(&n, &a, &f)) {
                *t += b;
            }
        }
        assert_eq!(totals, vec![1, 6, 8, 3]);
    }

    #[test]
    fn euler_self_check() {
        let n = m2();
        let degrees = deg(&[3, 3, 3]).divisors();
        assert!(verify_euler(&n, &degrees, &PrimeField::default()).passed());
    }
}
