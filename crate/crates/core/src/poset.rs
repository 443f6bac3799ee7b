//! The poset of admissible symbols `(I, m)` with its edge labeling, and
//! exhaustive checks of the dual EL-shelling and diamond properties.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, Multidegree};
use crate::report::CheckReport;

/// A subset of `{1, ..., 63}` stored as a bitmask (bit `l` for index `l`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = IndexSet::EMPTY;
        for i in indices {
            s = s.with(i);
        }
        s
    }

    /// All subsets of `{1, ..., n}`.
    pub fn all_subsets_of_range(n: usize) -> impl Iterator<Item = IndexSet> {
        (0u64..1 << n).map(|bits| IndexSet(bits << 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        assert!((1..64).contains(&i), "index {i} out of range");
        IndexSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `max(I)`, with `max(empty) = 0`.
    pub fn max(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            63 - self.0.leading_zeros() as usize
        }
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn difference(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & !other.0)
    }

    /// Elements `<= bound`.
    pub fn truncate(self, bound: usize) -> IndexSet {
        if bound >= 63 {
            self
        } else {
            IndexSet(self.0 & ((1u64 << (bound + 1)) - 1))
        }
    }

    /// Ascending elements.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..64).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 1-based position of `i` in the ascending listing of the set.
    pub fn position(self, i: usize) -> Option<usize> {
        self.contains(i).then(|| self.truncate(i).len())
    }

    /// All subsets of this set.
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(IndexSet(cur))
        })
    }
}

impl std::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for IndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// An element of the poset: the bottom `(empty, 1)` or an admissible pair
/// `(I, m)` with `m` the generator at index `generator` of G(N).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AdmissibleSymbol {
    Bottom,
    Pair { indices: IndexSet, generator: usize },
}

impl AdmissibleSymbol {
    pub fn pair(indices: IndexSet, generator: usize) -> Self {
        AdmissibleSymbol::Pair { indices, generator }
    }

    /// `0` for the bottom, `|I| + 1` otherwise.
    pub fn rank(&self) -> usize {
        match self {
            AdmissibleSymbol::Bottom => 0,
            AdmissibleSymbol::Pair { indices, .. } => indices.len() + 1,
        }
    }

    pub fn indices(&self) -> IndexSet {
        match self {
            AdmissibleSymbol::Bottom => IndexSet::EMPTY,
            AdmissibleSymbol::Pair { indices, .. } => *indices,
        }
    }

    pub fn generator(&self) -> Option<usize> {
        match self {
            AdmissibleSymbol::Bottom => None,
            AdmissibleSymbol::Pair { generator, .. } => Some(*generator),
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, AdmissibleSymbol::Bottom)
    }

    /// The monomial `m` of the pair (`1` for the bottom).
    pub fn monomial(&self, ideal: &MonomialIdeal) -> Monomial {
        match self {
            AdmissibleSymbol::Bottom => Monomial::one(ideal.nvars()),
            AdmissibleSymbol::Pair { generator, .. } => ideal.generators()[*generator].clone(),
        }
    }

    /// `eta(I, m) = mdeg(x_I * m)`.
    pub fn multidegree(&self, ideal: &MonomialIdeal) -> Multidegree {
        let d = ideal.nvars();
        self.monomial(ideal).multiply(&Monomial::product_of_vars(d, self.indices().iter()))
    }

    pub fn is_admissible(&self, ideal: &MonomialIdeal) -> bool {
        match self {
            AdmissibleSymbol::Bottom => true,
            AdmissibleSymbol::Pair { indices, generator } => ideal
                .generators()
                .get(*generator)
                .is_some_and(|m| indices.max() < m.max_index() && !indices.contains(0)),
        }
    }

    /// `{1,2},c^2` style label; the bottom prints as `{},1`.
    pub fn label(&self, ideal: &MonomialIdeal) -> String {
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        format!("{{{}}},{}", idx.join(","), ideal.format(&self.monomial(ideal)))
    }

    /// Canonical sort key: rank, then generator index, then `I` read as an
    /// ascending list.
    fn sort_key(&self) -> (usize, usize, Vec<usize>) {
        (self.rank(), self.generator().unwrap_or(0), self.indices().to_vec())
    }
}

/// Admissible symbol built from a generator monomial; `None` if `m` is not a
/// minimal generator or the pair is not admissible.
pub fn symbol_for(ideal: &MonomialIdeal, indices: IndexSet, m: &Monomial) -> Option<AdmissibleSymbol> {
    let s = AdmissibleSymbol::pair(indices, ideal.generator_index(m)?);
    s.is_admissible(ideal).then_some(s)
}

fn x_c_times(ideal: &MonomialIdeal, c: IndexSet, m: &Monomial) -> Monomial {
    m.multiply(&Monomial::product_of_vars(ideal.nvars(), c.iter()))
}

fn witnesses(
    ideal: &MonomialIdeal,
    lower: &AdmissibleSymbol,
    upper: &AdmissibleSymbol,
    search: IndexSet,
) -> Vec<IndexSet> {
    let m = upper.monomial(ideal);
    let n = lower.monomial(ideal);
    search.subsets().filter(|&c| ideal.decompose_generator(&x_c_times(ideal, c, &m)).is_ok_and(|g| g == n)).collect()
}

/// `(J, n) <= (I, m)`: `J ⊆ I` and `n = g(x_C m)` for some `C ⊆ I \ J`.
/// Only reduced sets `C` (every element `<= max(n)`) are searched.
pub fn leq(ideal: &MonomialIdeal, lower: &AdmissibleSymbol, upper: &AdmissibleSymbol) -> bool {
    reduced_witness(ideal, lower, upper).is_some()
}

/// The reduced set `C` realizing `lower <= upper`, if comparable. The bottom
/// is witnessed by the empty set.
pub fn reduced_witness(ideal: &MonomialIdeal, lower: &AdmissibleSymbol, upper: &AdmissibleSymbol) -> Option<IndexSet> {
    match (lower, upper) {
        (AdmissibleSymbol::Bottom, _) => Some(IndexSet::EMPTY),
        (_, AdmissibleSymbol::Bottom) => None,
        _ => {
            let (j, i) = (lower.indices(), upper.indices());
            if !j.is_subset(i) {
                return None;
            }
            let max_n = lower.monomial(ideal).max_index();
            witnesses(ideal, lower, upper, i.difference(j).truncate(max_n)).into_iter().next()
        }
    }
}

/// Order test searching every subset of `I \ J`, reduced or not.
pub fn leq_unreduced(ideal: &MonomialIdeal, lower: &AdmissibleSymbol, upper: &AdmissibleSymbol) -> bool {
    match (lower, upper) {
        (AdmissibleSymbol::Bottom, _) => true,
        (_, AdmissibleSymbol::Bottom) => false,
        _ => {
            let (j, i) = (lower.indices(), upper.indices());
            j.is_subset(i) && !witnesses(ideal, lower, upper, i.difference(j)).is_empty()
        }
    }
}

/// All `C ⊆ I \ J` of minimum cardinality with `n = g(x_C m)`.
pub fn minimum_witnesses(ideal: &MonomialIdeal, lower: &AdmissibleSymbol, upper: &AdmissibleSymbol) -> Vec<IndexSet> {
    if lower.is_bottom() || upper.is_bottom() || !lower.indices().is_subset(upper.indices()) {
        return Vec::new();
    }
    let all = witnesses(ideal, lower, upper, upper.indices().difference(lower.indices()));
    let Some(min) = all.iter().map(|c| c.len()).min() else {
        return Vec::new();
    };
    all.into_iter().filter(|c| c.len() == min).collect()
}

pub fn covers(ideal: &MonomialIdeal, lower: &AdmissibleSymbol, upper: &AdmissibleSymbol) -> bool {
    upper.rank() == lower.rank() + 1 && leq(ideal, lower, upper)
}

/// `0` above the bottom, `-l` if the monomial is unchanged, `+l` otherwise,
/// where `{l} = I \ J`.
pub fn edge_label(ideal: &MonomialIdeal, lower: &AdmissibleSymbol, upper: &AdmissibleSymbol) -> Result<i32> {
    if !covers(ideal, lower, upper) {
        return Err(Error::NotACover);
    }
    match lower {
        AdmissibleSymbol::Bottom => Ok(0),
        AdmissibleSymbol::Pair { generator, .. } => {
            let l = upper.indices().difference(lower.indices()).max() as i32;
            if Some(*generator) == upper.generator() {
                Ok(-l)
            } else {
                Ok(l)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverEdge {
    pub lower: usize,
    pub upper: usize,
    pub label: i32,
}

/// A saturated chain read top-down, with the labels of its edges in the same
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub elements: Vec<usize>,
    pub labels: Vec<i32>,
}

impl Chain {
    pub fn is_increasing(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_decreasing(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] > w[1])
    }
}

/// `P_N` with symbols in canonical order (index 0 is the bottom).
#[derive(Clone, Debug)]
pub struct PosetOfSymbols {
    ideal: MonomialIdeal,
    symbols: Vec<AdmissibleSymbol>,
    lookup: HashMap<AdmissibleSymbol, usize>,
    /// per symbol, the edges to the elements it covers
    lower_covers: Vec<Vec<CoverEdge>>,
    upper_covers: Vec<Vec<usize>>,
    /// `below[x * n + y]` iff `y <= x`, from the transitive closure of covers
    below: Vec<bool>,
    multidegrees: Vec<Multidegree>,
}

pub const MAX_VARIABLES: usize = 63;

impl PosetOfSymbols {
    pub fn build(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.nvars() > MAX_VARIABLES {
            return Err(Error::TooManyVariables { max: MAX_VARIABLES, got: ideal.nvars() });
        }
        ideal.check_stable()?;
        let mut symbols = vec![AdmissibleSymbol::Bottom];
        for (g, m) in ideal.generators().iter().enumerate() {
            let r = m.max_index();
            for indices in IndexSet::all_subsets_of_range(r.saturating_sub(1)) {
                symbols.push(AdmissibleSymbol::pair(indices, g));
            }
        }
        symbols.sort_by_key(AdmissibleSymbol::sort_key);
        let lookup: HashMap<_, _> = symbols.iter().enumerate().map(|(i, s)| (*s, i)).collect();

        let mut by_indices: HashMap<IndexSet, Vec<usize>> = HashMap::new();
        for (i, s) in symbols.iter().enumerate().skip(1) {
            by_indices.entry(s.indices()).or_default().push(i);
        }

        let lower_covers: Vec<Vec<CoverEdge>> = symbols
            .par_iter()
            .enumerate()
            .map(|(u, upper)| {
                let mut edges = Vec::new();
                match upper {
                    AdmissibleSymbol::Bottom => {}
                    AdmissibleSymbol::Pair { indices, .. } if indices.is_empty() => {
                        edges.push(CoverEdge { lower: 0, upper: u, label: 0 });
                    }
                    AdmissibleSymbol::Pair { indices, .. } => {
                        for l in indices.iter() {
                            for &lo in by_indices.get(&indices.without(l)).into_iter().flatten() {
                                if covers(ideal, &symbols[lo], upper) {
                                    let label = edge_label(ideal, &symbols[lo], upper).expect("cover");
                                    edges.push(CoverEdge { lower: lo, upper: u, label });
                                }
                            }
                        }
                        edges.sort_by_key(|e| e.lower);
                    }
                }
                edges
            })
            .collect();

        let n = symbols.len();
        let mut upper_covers = vec![Vec::new(); n];
        for edges in &lower_covers {
            for e in edges {
                upper_covers[e.lower].push(e.upper);
            }
        }
        // symbols are sorted by rank, so lower covers are already closed
        let mut below = vec![false; n * n];
        for x in 0..n {
            below[x * n + x] = true;
            for e in &lower_covers[x] {
                for y in 0..n {
                    if below[e.lower * n + y] {
                        below[x * n + y] = true;
                    }
                }
            }
        }
        let multidegrees = symbols.iter().map(|s| s.multidegree(ideal)).collect();
        Ok(PosetOfSymbols { ideal: ideal.clone(), symbols, lookup, lower_covers, upper_covers, below, multidegrees })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[AdmissibleSymbol] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &AdmissibleSymbol {
        &self.symbols[i]
    }

    pub fn index_of(&self, s: &AdmissibleSymbol) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    /// Index of `(I, m)` given the generator monomial.
    pub fn find(&self, indices: &[usize], m: &Monomial) -> Option<usize> {
        let s = symbol_for(&self.ideal, IndexSet::from_indices(indices.iter().copied()), m)?;
        self.index_of(&s)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.symbols[i].rank()
    }

    pub fn multidegree(&self, i: usize) -> &Multidegree {
        &self.multidegrees[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[CoverEdge] {
        &self.lower_covers[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn cover_edges(&self) -> impl Iterator<Item = &CoverEdge> {
        self.lower_covers.iter().flatten()
    }

    /// `y <= x` in the closure of the cover relation.
    pub fn le(&self, y: usize, x: usize) -> bool {
        self.below[x * self.len() + y]
    }

    pub fn label(&self, i: usize) -> String {
        self.symbols[i].label(&self.ideal)
    }

    /// Counts of symbols by `|I|`.
    pub fn counts_by_size(&self) -> Vec<usize> {
        let max = self.symbols.iter().map(AdmissibleSymbol::rank).max().unwrap_or(0);
        let mut counts = vec![0; max];
        for s in &self.symbols[1..] {
            counts[s.rank() - 1] += 1;
        }
        counts
    }

    pub fn label_of(&self, lower: usize, upper: usize) -> Option<i32> {
        self.lower_covers[upper].iter().find(|e| e.lower == lower).map(|e| e.label)
    }

    /// All saturated chains from `top` down to `bottom`.
    pub fn maximal_chains(&self, top: usize, bottom: usize) -> Result<Vec<Chain>> {
        if !self.le(bottom, top) {
            return Err(Error::NotComparable);
        }
        let mut out = Vec::new();
        let mut path = vec![top];
        let mut labels = Vec::new();
        self.chains_rec(bottom, &mut path, &mut labels, &mut out);
        Ok(out)
    }

    fn chains_rec(&self, bottom: usize, path: &mut Vec<usize>, labels: &mut Vec<i32>, out: &mut Vec<Chain>) {
        let cur = *path.last().expect("nonempty path");
        if cur == bottom {
            out.push(Chain { elements: path.clone(), labels: labels.clone() });
            return;
        }
        for e in &self.lower_covers[cur] {
            if self.le(bottom, e.lower) {
                path.push(e.lower);
                labels.push(e.label);
                self.chains_rec(bottom, path, labels, out);
                path.pop();
                labels.pop();
            }
        }
    }

    /// Pairs `(top, bottom)` with `bottom < top`, i.e. the closed dual
    /// intervals of length at least one.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .filter(|&(x, y)| self.le(y, x))
            .collect()
    }

    /// Each dual interval has exactly one strictly increasing maximal chain,
    /// it is lexicographically first, and no two chains share a label.
    pub fn verify_el_shelling(&self) -> CheckReport {
        let pairs = self.comparable_pairs();
        let violations: Vec<String> = pairs
            .par_iter()
            .flat_map_iter(|&(top, bottom)| {
                let mut v = Vec::new();
                let chains = self.maximal_chains(top, bottom).expect("comparable");
                let what = || format!("[{}, {}]", self.label(top), self.label(bottom));
                let increasing: Vec<&Chain> = chains.iter().filter(|c| c.is_increasing()).collect();
                if increasing.len() != 1 {
                    v.push(format!("{}: {} increasing chains", what(), increasing.len()));
                } else {
                    let inc = &increasing[0].labels;
                    if chains.iter().any(|c| c.labels < *inc) {
                        v.push(format!("{}: increasing chain {:?} is not lexicographically first", what(), inc));
                    }
                }
                let mut seqs: Vec<&Vec<i32>> = chains.iter().map(|c| &c.labels).collect();
                seqs.sort();
                if seqs.windows(2).any(|w| w[0] == w[1]) {
                    v.push(format!("{}: two chains share a label sequence", what()));
                }
                v
            })
            .collect();
        CheckReport::new("el_shelling", pairs.len(), violations)
    }

    /// Every `[(I,m), bottom]` has exactly one strictly decreasing chain, with
    /// label `(i_q, ..., i_1, 0)`.
    pub fn verify_falling_chains(&self) -> CheckReport {
        let violations: Vec<String> = (1..self.len())
            .into_par_iter()
            .flat_map_iter(|x| {
                let chains = self.maximal_chains(x, 0).expect("bottom is below everything");
                let falling: Vec<&Chain> = chains.iter().filter(|c| c.is_decreasing()).collect();
                let mut expected: Vec<i32> =
                    self.symbols[x].indices().to_vec().into_iter().rev().map(|i| i as i32).collect();
                expected.push(0);
                match falling.as_slice() {
                    [only] if only.labels == expected => None,
                    _ => Some(format!(
                        "{}: falling chains {:?}, expected one with {:?}",
                        self.label(x),
                        falling.iter().map(|c| &c.labels).collect::<Vec<_>>(),
                        expected
                    )),
                }
            })
            .collect();
        CheckReport::new("falling_chains", self.len() - 1, violations)
    }

    /// Every closed interval of length two has four elements.
    pub fn verify_diamond(&self) -> CheckReport {
        let pairs: Vec<(usize, usize)> =
            self.comparable_pairs().into_iter().filter(|&(x, y)| self.rank(x) == self.rank(y) + 2).collect();
        let violations = pairs
            .iter()
            .filter_map(|&(x, y)| {
                let interior = self.lower_covers[x].iter().filter(|e| self.le(y, e.lower)).count();
                (interior != 2).then(|| format!("[{}, {}] has {} elements", self.label(y), self.label(x), interior + 2))
            })
            .collect();
        CheckReport::new("diamond", pairs.len(), violations)
    }

    /// The cover closure agrees with `leq`, the reduced search agrees with
    /// the unreduced one, and the reduced witness is the unique
    /// minimum-cardinality witness.
    pub fn verify_order(&self) -> CheckReport {
        let n = self.len();
        let violations: Vec<String> = (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut v = Vec::new();
                for y in 0..n {
                    let (lo, up) = (&self.symbols[y], &self.symbols[x]);
                    let closure = self.le(y, x);
                    let direct = leq(&self.ideal, lo, up);
                    let unreduced = leq_unreduced(&self.ideal, lo, up);
                    if closure != direct || direct != unreduced {
                        v.push(format!(
                            "{} vs {}: closure {closure}, reduced {direct}, unreduced {unreduced}",
                            self.label(y),
                            self.label(x)
                        ));
                    }
                    if direct && !lo.is_bottom() {
                        let min = minimum_witnesses(&self.ideal, lo, up);
                        if min.len() != 1 || reduced_witness(&self.ideal, lo, up) != Some(min[0]) {
                            v.push(format!("{} <= {}: minimum witnesses {:?}", self.label(y), self.label(x), min));
                        }
                    }
                }
                v
            })
            .collect();
        CheckReport::new("order", n * n, violations)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph P_N {\n  rankdir=BT;\n");
        for i in 0..self.len() {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", i, self.label(i));
        }
        for e in self.cover_edges() {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.lower, e.upper, e.label);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<_> = (0..self.len())
            .map(|i| {
                let s = &self.symbols[i];
                serde_json::json!({
                    "id": i,
                    "label": self.label(i),
                    "indices": s.indices(),
                    "monomial": self.ideal.format(&s.monomial(&self.ideal)),
                    "rank": s.rank(),
                    "multidegree": self.multidegrees[i],
                })
            })
            .collect();
        let edges: Vec<_> = self
            .cover_edges()
            .map(|e| serde_json::json!({"lower": e.lower, "upper": e.upper, "label": e.label}))
            .collect();
        serde_json::json!({"format": 1, "nodes": nodes, "edges": edges})
    }
}
