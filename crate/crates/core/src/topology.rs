//! Order complexes of the open intervals `(bottom, (I,m))`, their signed
//! basic cycles, and reduced simplicial homology over Z/p.
//!
//! A face of an order complex is a chain of the poset, stored as a list of
//! symbol indices ordered top-down. The simplicial boundary deletes the
//! vertex at position `i` with sign `(-1)^i`. The empty face (dimension -1)
//! is kept so that homology is reduced.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::SparseMatrix;
use crate::poset::PosetOfSymbols;
use crate::report::CheckReport;

/// Integer chain in an order complex: face -> coefficient.
pub type SimplicialChain = BTreeMap<Vec<usize>, i64>;

/// `sgn(rho) * sgn(prod l_t)` where `rho` sorts `|l_1|, ..., |l_q|`
/// increasingly. `labels` excludes the trailing 0.
pub fn chain_sign(labels: &[i32]) -> Result<i8> {
    let mut seen = BTreeSet::new();
    if labels.iter().any(|&l| l == 0 || !seen.insert(l.unsigned_abs())) {
        return Err(Error::BadLabelSequence(labels.to_vec()));
    }
    let inversions = (0..labels.len())
        .flat_map(|i| (i + 1..labels.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| labels[i].unsigned_abs() > labels[j].unsigned_abs())
        .count();
    let negatives = labels.iter().filter(|&&l| l < 0).count();
    Ok(if (inversions + negatives) % 2 == 0 { 1 } else { -1 })
}

pub fn simplicial_boundary(chain: &SimplicialChain) -> SimplicialChain {
    let mut out = SimplicialChain::new();
    for (face, &c) in chain {
        for i in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(sub).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The order complex of the open interval below a symbol.
#[derive(Clone, Debug, Serialize)]
pub struct OrderComplexInterval {
    pub top: usize,
    pub vertices: Vec<usize>,
    /// maximal chains of the open interval, top-down
    pub facets: Vec<Vec<usize>>,
}

impl OrderComplexInterval {
    pub fn below(poset: &PosetOfSymbols, top: usize) -> Self {
        let chains = poset.maximal_chains(top, 0).expect("bottom is below everything");
        let facets: Vec<Vec<usize>> =
            chains.into_iter().map(|c| c.elements[1..c.elements.len() - 1].to_vec()).collect();
        let vertices: BTreeSet<usize> = facets.iter().flatten().copied().collect();
        OrderComplexInterval { top, vertices: vertices.into_iter().collect(), facets }
    }

    /// All faces grouped by dimension; index `k + 1` holds the `k`-faces.
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for facet in &self.facets {
            for mask in 0u64..1 << facet.len() {
                let face: Vec<usize> =
                    facet.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                if by_dim.len() <= face.len() {
                    by_dim.resize(face.len() + 1, BTreeSet::new());
                }
                by_dim[face.len()].insert(face);
            }
        }
        by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Boundary matrices `C_k -> C_{k-1}` for `k = 0, ..., dim`.
    pub fn boundary_matrices(&self) -> Vec<SignedBoundaryMatrix> {
        let faces = self.faces();
        (1..faces.len())
            .map(|i| {
                let index: BTreeMap<&Vec<usize>, usize> =
                    faces[i - 1].iter().enumerate().map(|(r, f)| (f, r)).collect();
                let mut entries = Vec::new();
                for (c, face) in faces[i].iter().enumerate() {
                    let single: SimplicialChain = [(face.clone(), 1)].into_iter().collect();
                    for (sub, coeff) in simplicial_boundary(&single) {
                        entries.push((index[&sub], c, coeff as i8));
                    }
                }
                SignedBoundaryMatrix {
                    dim: i as i32 - 1,
                    sources: faces[i].len(),
                    targets: faces[i - 1].len(),
                    entries,
                }
            })
            .collect()
    }
}

/// Boundary map from `dim`-faces to `(dim-1)`-faces with `±1` entries
/// `(row, col, sign)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedBoundaryMatrix {
    pub dim: i32,
    pub sources: usize,
    pub targets: usize,
    pub entries: Vec<(usize, usize, i8)>,
}

impl SignedBoundaryMatrix {
    pub fn to_sparse(&self, field: &PrimeField) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.targets, self.sources);
        for &(r, c, s) in &self.entries {
            m.push(r, c, field.from_i64(s as i64));
        }
        m
    }
}

/// Reduced Betti numbers indexed from dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyRanks {
    pub ranks: Vec<usize>,
}

impl HomologyRanks {
    pub fn get(&self, dim: i32) -> usize {
        usize::try_from(dim + 1).ok().and_then(|i| self.ranks.get(i)).copied().unwrap_or(0)
    }

    pub fn nonzero(&self) -> Vec<(i32, usize)> {
        self.ranks.iter().enumerate().filter(|(_, &r)| r > 0).map(|(i, &r)| (i as i32 - 1, r)).collect()
    }
}

/// Reduced homology of the complex whose boundary maps are `complex`,
/// listed by increasing source dimension starting at 0.
pub fn reduced_homology_ranks(complex: &[SignedBoundaryMatrix], field: &PrimeField) -> Result<HomologyRanks> {
    let maps: Vec<SparseMatrix> = complex.iter().map(|b| b.to_sparse(field)).collect();
    for (k, pair) in maps.windows(2).enumerate() {
        if pair[0].cols() != pair[1].rows() || !pair[0].mul(&pair[1], field).is_zero(field) {
            return Err(Error::NonComposing(k as i32 + 1));
        }
    }
    let Some(first) = complex.first() else {
        return Ok(HomologyRanks { ranks: Vec::new() });
    };
    let mut dims = vec![first.targets];
    dims.extend(complex.iter().map(|b| b.sources));
    let ranks: Vec<usize> = maps.iter().map(|m| m.rank(field)).collect();
    let out = (0..dims.len())
        .map(|i| {
            let out_rank = if i == 0 { 0 } else { ranks[i - 1] };
            let in_rank = ranks.get(i).copied().unwrap_or(0);
            dims[i] - out_rank - in_rank
        })
        .collect();
    Ok(HomologyRanks { ranks: out })
}

/// `f(I,m)`: every maximal chain of the open dual interval with its sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicCycle {
    pub owner: usize,
    pub terms: Vec<(Vec<usize>, i8)>,
}

impl BasicCycle {
    pub fn to_chain(&self) -> SimplicialChain {
        self.terms.iter().map(|(f, s)| (f.clone(), *s as i64)).collect()
    }
}

/// The basic cycle of a symbol. For `|I| = 0` this is the empty face with
/// coefficient `+1`.
pub fn basic_cycle(poset: &PosetOfSymbols, owner: usize) -> BasicCycle {
    let chains = poset.maximal_chains(owner, 0).expect("bottom is below everything");
    let terms = chains
        .into_iter()
        .map(|c| {
            let q = c.labels.len() - 1;
            let sign = chain_sign(&c.labels[..q]).expect("labels of a maximal chain");
            (c.elements[1..c.elements.len() - 1].to_vec(), sign)
        })
        .collect();
    BasicCycle { owner, terms }
}

/// `d f(I,m) = 0` and the complex has no face of dimension `|I|`.
pub fn verify_cycle(poset: &PosetOfSymbols, owner: usize) -> bool {
    let q = poset.symbol(owner).indices().len();
    let f = basic_cycle(poset, owner);
    let top_dim_ok = f.terms.iter().all(|(facet, _)| facet.len() == q);
    top_dim_ok && simplicial_boundary(&f.to_chain()).is_empty()
}

/// Boundary of the signed facets through `lower` inside the order complex
/// below `upper`, written as a multiple of `f(lower)`.
pub fn cone_boundary_coefficient(poset: &PosetOfSymbols, upper: usize, lower: usize) -> Result<i8> {
    if poset.label_of(lower, upper).is_none() {
        return Err(Error::NotACover);
    }
    if lower == 0 {
        return Ok(1);
    }
    let cone: SimplicialChain = basic_cycle(poset, upper)
        .terms
        .into_iter()
        .filter(|(facet, _)| facet.first() == Some(&lower))
        .map(|(facet, s)| (facet, s as i64))
        .collect();
    let boundary = simplicial_boundary(&cone);
    let target = basic_cycle(poset, lower).to_chain();
    for c in [1i8, -1] {
        let scaled: SimplicialChain = target.iter().map(|(f, v)| (f.clone(), v * c as i64)).collect();
        if scaled == boundary {
            return Ok(c);
        }
    }
    Err(Error::NotProportional(poset.label(lower)))
}

/// `(-1)^(p + delta)` with `I \ J = {i_p}` and `delta = 1` iff the monomial
/// changes; `+1` for covers of the bottom.
pub fn closed_form_coefficient(poset: &PosetOfSymbols, upper: usize, lower: usize) -> i8 {
    let (up, lo) = (poset.symbol(upper), poset.symbol(lower));
    if lo.is_bottom() {
        return 1;
    }
    let l = up.indices().difference(lo.indices()).max();
    let p = up.indices().position(l).expect("l in I");
    let delta = usize::from(up.generator() != lo.generator());
    if (p + delta) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn verify_cycles(poset: &PosetOfSymbols) -> CheckReport {
    let targets: Vec<usize> = (1..poset.len()).filter(|&x| !poset.symbol(x).indices().is_empty()).collect();
    let violations = targets
        .par_iter()
        .filter(|&&x| !verify_cycle(poset, x))
        .map(|&x| format!("f({}) is not a cycle", poset.label(x)))
        .collect();
    CheckReport::new("cycles", targets.len(), violations)
}

/// Every facet/vertex pair has exactly one partner facet differing only at
/// that vertex, and the two carry opposite signs.
pub fn verify_pairwise_cancellation(poset: &PosetOfSymbols) -> CheckReport {
    let targets: Vec<usize> = (1..poset.len()).filter(|&x| !poset.symbol(x).indices().is_empty()).collect();
    let violations: Vec<String> = targets
        .par_iter()
        .flat_map_iter(|&x| {
            let f = basic_cycle(poset, x);
            let mut v = Vec::new();
            for (facet, sign) in &f.terms {
                for pos in 0..facet.len() {
                    let partners: Vec<i8> = f
                        .terms
                        .iter()
                        .filter(|(other, _)| {
                            other != facet && (0..facet.len()).all(|k| k == pos || other[k] == facet[k])
                        })
                        .map(|(_, s)| *s)
                        .collect();
                    if partners != [-sign] {
                        v.push(format!(
                            "{}: facet {:?} at position {pos} has partner signs {:?}",
                            poset.label(x),
                            facet,
                            partners
                        ));
                    }
                }
            }
            v
        })
        .collect();
    CheckReport::new("pairwise_cancellation", targets.len(), violations)
}

/// Reduced homology below each `(I,m)` with `|I| >= 1` is one copy of the
/// field in dimension `|I| - 1`, matching the single falling chain.
pub fn verify_spheres(poset: &PosetOfSymbols, field: &PrimeField) -> CheckReport {
    let targets: Vec<usize> = (1..poset.len()).filter(|&x| !poset.symbol(x).indices().is_empty()).collect();
    let violations = targets
        .par_iter()
        .filter_map(|&x| {
            let q = poset.symbol(x).indices().len() as i32;
            let complex = OrderComplexInterval::below(poset, x);
            let falling = poset.maximal_chains(x, 0).expect("comparable").iter().filter(|c| c.is_decreasing()).count();
            match reduced_homology_ranks(&complex.boundary_matrices(), field) {
                Ok(h) if h.nonzero() == [(q - 1, 1)] && falling == 1 => None,
                Ok(h) => {
                    Some(format!("{}: reduced homology {:?}, {} falling chains", poset.label(x), h.nonzero(), falling))
                }
                Err(e) => Some(format!("{}: {e}", poset.label(x))),
            }
        })
        .collect();
    CheckReport::new("spheres", targets.len(), violations)
}

pub fn verify_cone_coefficients(poset: &PosetOfSymbols) -> CheckReport {
    let edges: Vec<(usize, usize)> = poset.cover_edges().map(|e| (e.upper, e.lower)).collect();
    let violations = edges
        .par_iter()
        .filter_map(|&(u, l)| {
            let expected = closed_form_coefficient(poset, u, l);
            match cone_boundary_coefficient(poset, u, l) {
                Ok(c) if c == expected => None,
                Ok(c) => {
                    Some(format!("{} -> {}: cone gives {c}, closed form {expected}", poset.label(u), poset.label(l)))
                }
                Err(e) => Some(format!("{} -> {}: {e}", poset.label(u), poset.label(l))),
            }
        })
        .collect();
    CheckReport::new("cone_coefficients", edges.len(), violations)
}
