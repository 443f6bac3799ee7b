//! The multigraded free complex supported on the poset of admissible
//! symbols, and checks that it is a minimal free resolution of `R/N`.
//!
//! Two builders exist. [`build_resolution`] walks the cover edges of the
//! poset and uses the coefficient `(-1)^(p + delta)` per cover.
//! [`build_ek_resolution`] evaluates the closed formula on symbols without
//! consulting the poset. Their agreement is checked, not assumed.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::field::{FieldScalar, PrimeField};
use crate::ideal::MonomialIdeal;
use crate::linalg::SparseMatrix;
use crate::monomial::{Monomial, Multidegree};
use crate::poset::{AdmissibleSymbol, IndexSet, PosetOfSymbols};
use crate::report::CheckReport;
use crate::topology::closed_form_coefficient;

/// One nonzero entry of `∂_i`: `coeff * monomial` from basis element `col`
/// of `F_i` to basis element `row` of `F_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DifferentialEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: FieldScalar,
    pub monomial: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    field: PrimeField,
    nvars: usize,
    /// `basis[i]` spans `F_i`; `F_0` is spanned by the bottom symbol.
    basis: Vec<Vec<AdmissibleSymbol>>,
    multidegrees: Vec<Vec<Multidegree>>,
    /// `differentials[i - 1]` is `∂_i: F_i -> F_{i-1}`.
    differentials: Vec<Vec<DifferentialEntry>>,
}

impl FreeComplex {
    /// Assembles a complex from explicit data. Used for fixtures; the
    /// builders below are the normal entry points.
    pub fn from_parts(
        field: PrimeField,
        nvars: usize,
        basis: Vec<Vec<AdmissibleSymbol>>,
        multidegrees: Vec<Vec<Multidegree>>,
        differentials: Vec<Vec<DifferentialEntry>>,
    ) -> Self {
        assert_eq!(basis.len(), multidegrees.len());
        assert_eq!(differentials.len() + 1, basis.len());
        FreeComplex { field, nvars, basis, multidegrees, differentials }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Ranks of `F_0, ..., F_d`.
    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.basis.iter().rposition(|b| !b.is_empty()).unwrap_or(0)
    }

    pub fn basis(&self, i: usize) -> &[AdmissibleSymbol] {
        self.basis.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn multidegrees(&self, i: usize) -> &[Multidegree] {
        self.multidegrees.get(i).map_or(&[], Vec::as_slice)
    }

    /// Entries of `∂_i` for `i >= 1`.
    pub fn differential(&self, i: usize) -> &[DifferentialEntry] {
        if i == 0 {
            return &[];
        }
        self.differentials.get(i - 1).map_or(&[], Vec::as_slice)
    }

    pub fn max_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// Negates entry `index` of `∂_i`. For negative controls.
    pub fn flip_sign(&mut self, i: usize, index: usize) {
        let e = &mut self.differentials[i - 1][index];
        e.coeff = self.field.neg(e.coeff);
    }

    /// Smallest box containing every basis multidegree, widened by one in
    /// each coordinate.
    pub fn bounding_box(&self) -> Multidegree {
        let mut b = vec![1u32; self.nvars];
        for a in self.multidegrees.iter().flatten() {
            for (bl, &al) in b.iter_mut().zip(a.exponents()) {
                *bl = (*bl).max(al + 1);
            }
        }
        Monomial::new(b)
    }

    /// Sorted entries for order-independent comparison, keyed by symbols.
    pub fn entry_set(&self) -> Vec<(usize, AdmissibleSymbol, AdmissibleSymbol, i64, Monomial)> {
        let mut out: Vec<_> = (1..=self.max_degree())
            .flat_map(|i| {
                self.differential(i).iter().map(move |e| {
                    (i, self.basis[i][e.col], self.basis[i - 1][e.row], self.field.signed(e.coeff), e.monomial.clone())
                })
            })
            .collect();
        out.sort_by(|a, b| (a.0, format!("{:?}{:?}", a.1, a.2), &a.4).cmp(&(b.0, format!("{:?}{:?}", b.1, b.2), &b.4)));
        out
    }

    /// Every composite `∂_{i-1} ∘ ∂_i` vanishes, with products grouped by
    /// target and monomial.
    pub fn verify_complex(&self) -> CheckReport {
        let mut violations = Vec::new();
        for i in 2..=self.max_degree() {
            let mut by_col: Vec<Vec<&DifferentialEntry>> = vec![Vec::new(); self.basis[i - 1].len()];
            for e in self.differential(i - 1) {
                by_col[e.col].push(e);
            }
            let mut acc: BTreeMap<(usize, usize, Monomial), FieldScalar> = BTreeMap::new();
            for e in self.differential(i) {
                for f in &by_col[e.row] {
                    let key = (e.col, f.row, e.monomial.multiply(&f.monomial));
                    let slot = acc.entry(key).or_insert(FieldScalar::ZERO);
                    *slot = self.field.add(*slot, self.field.mul(e.coeff, f.coeff));
                }
            }
            for ((col, row, mono), v) in acc {
                if !v.is_zero() {
                    violations.push(format!(
                        "∂{}∘∂{}: column {col} -> row {row} has {} * {mono}",
                        i - 1,
                        i,
                        self.field.signed(v)
                    ));
                }
            }
        }
        CheckReport::new("complex", self.max_degree().saturating_sub(1), violations)
    }

    pub fn is_complex(&self) -> bool {
        self.verify_complex().passed()
    }

    /// No entry is a unit.
    pub fn verify_minimal(&self) -> CheckReport {
        let mut violations = Vec::new();
        let mut checked = 0;
        for i in 1..=self.max_degree() {
            for e in self.differential(i) {
                checked += 1;
                if !e.coeff.is_zero() && e.monomial.is_one() {
                    violations.push(format!("∂{i}: unit entry at ({}, {})", e.row, e.col));
                }
            }
        }
        CheckReport::new("minimal", checked, violations)
    }

    pub fn is_minimal(&self) -> bool {
        self.verify_minimal().passed()
    }

    /// `monomial * x^eta(target) = x^eta(source)` and coefficients are `±1`.
    pub fn verify_multigrading(&self) -> CheckReport {
        let mut violations = Vec::new();
        let mut checked = 0;
        let (plus, minus) = (self.field.sign(true), self.field.sign(false));
        for i in 1..=self.max_degree() {
            for e in self.differential(i) {
                checked += 1;
                let lhs = e.monomial.multiply(&self.multidegrees[i - 1][e.row]);
                if lhs != self.multidegrees[i][e.col] {
                    violations.push(format!("∂{i}: entry ({}, {}) is not homogeneous", e.row, e.col));
                }
                if e.coeff != plus && e.coeff != minus {
                    violations.push(format!("∂{i}: entry ({}, {}) is not ±1", e.row, e.col));
                }
            }
        }
        CheckReport::new("multigrading", checked, violations)
    }

    /// Dimensions of the homology of the strand `F(a) -> (R/N)(a) -> 0`,
    /// listed for `F_0, ..., F_d` and finally `(R/N)(a)`.
    pub fn strand_homology(&self, ideal: &MonomialIdeal, a: &Multidegree) -> Vec<usize> {
        let field = &self.field;
        let local: Vec<HashMap<usize, usize>> = self
            .multidegrees
            .iter()
            .map(|degs| {
                degs.iter()
                    .enumerate()
                    .filter(|(_, e)| e.le_componentwise(a))
                    .enumerate()
                    .map(|(k, (j, _))| (j, k))
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = local.iter().map(HashMap::len).collect();
        let quotient = usize::from(!ideal.contains(a));
        // rank of F_i(a) -> F_{i-1}(a); index 0 is the augmentation
        let mut ranks = vec![0usize; self.basis.len() + 1];
        ranks[0] = quotient.min(dims[0]);
        for i in 1..self.basis.len() {
            let mut m = SparseMatrix::zeros(dims[i - 1], dims[i]);
            for e in self.differential(i) {
                if let (Some(&r), Some(&c)) = (local[i - 1].get(&e.row), local[i].get(&e.col)) {
                    m.push(r, c, e.coeff);
                }
            }
            ranks[i] = m.rank(field);
        }
        let mut h: Vec<usize> = (0..self.basis.len()).map(|i| dims[i] - ranks[i] - ranks[i + 1]).collect();
        h.push(quotient - ranks[0]);
        h
    }

    /// Exactness of every strand at the given multidegrees.
    pub fn verify_exact(&self, ideal: &MonomialIdeal, degrees: &[Multidegree]) -> CheckReport {
        let violations = degrees
            .par_iter()
            .filter_map(|a| {
                let h = self.strand_homology(ideal, a);
                h.iter().any(|&x| x > 0).then(|| format!("degree {:?}: homology {:?}", a, h))
            })
            .collect();
        CheckReport::new("exact", degrees.len(), violations)
    }

    /// `β_{i,a}` read off the basis, valid when the complex is minimal.
    pub fn graded_betti(&self, i: usize, a: &Multidegree) -> usize {
        self.multidegrees(i).iter().filter(|e| *e == a).count()
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut graded = BTreeMap::new();
        for (i, degs) in self.multidegrees.iter().enumerate() {
            for a in degs {
                *graded.entry((i, a.clone())).or_insert(0) += 1;
            }
        }
        BettiTable::from_graded(graded)
    }

    pub fn to_json(&self, poset: &PosetOfSymbols) -> serde_json::Value {
        let ideal = poset.ideal();
        let basis: Vec<Vec<serde_json::Value>> = self
            .basis
            .iter()
            .zip(&self.multidegrees)
            .map(|(b, degs)| {
                b.iter()
                    .zip(degs)
                    .map(|(s, a)| {
                        serde_json::json!({
                            "symbol": s.label(ideal),
                            "indices": s.indices(),
                            "monomial": ideal.format(&s.monomial(ideal)),
                            "multidegree": a,
                        })
                    })
                    .collect()
            })
            .collect();
        let differentials: Vec<serde_json::Value> = (1..=self.max_degree())
            .map(|i| {
                let entries: Vec<_> = self
                    .differential(i)
                    .iter()
                    .map(|e| serde_json::json!([e.row, e.col, self.field.signed(e.coeff), e.monomial]))
                    .collect();
                serde_json::json!({"degree": i, "entries": entries})
            })
            .collect();
        serde_json::json!({
            "format": 1,
            "prime": self.field.modulus(),
            "vars": ideal.variables().names(),
            "ranks": self.ranks(),
            "basis": basis,
            "differentials": differentials,
        })
    }
}

fn accumulate(
    field: &PrimeField,
    acc: &mut BTreeMap<(usize, Monomial), FieldScalar>,
    row: usize,
    monomial: Monomial,
    coeff: FieldScalar,
) {
    let slot = acc.entry((row, monomial)).or_insert(FieldScalar::ZERO);
    *slot = field.add(*slot, coeff);
}

fn flush(acc: BTreeMap<(usize, Monomial), FieldScalar>, col: usize, out: &mut Vec<DifferentialEntry>) {
    for ((row, monomial), coeff) in acc {
        if !coeff.is_zero() {
            out.push(DifferentialEntry { row, col, coeff, monomial });
        }
    }
}

/// Differential from the cover edges of `P_N`:
/// `∂ f(I,m) = Σ_{(J,n) ⋖ (I,m)} (-1)^(p+delta) x^(eta(I,m) - eta(J,n)) f(J,n)`.
pub fn build_resolution(poset: &PosetOfSymbols, field: PrimeField) -> FreeComplex {
    let d = poset.ideal().nvars();
    let mut basis = vec![Vec::new(); d + 1];
    let mut ids = vec![Vec::new(); d + 1];
    for (i, s) in poset.symbols().iter().enumerate() {
        basis[s.rank()].push(*s);
        ids[s.rank()].push(i);
    }
    let position: HashMap<usize, usize> =
        ids.iter().flat_map(|level| level.iter().enumerate().map(|(k, &i)| (i, k))).collect();
    let multidegrees: Vec<Vec<Multidegree>> =
        ids.iter().map(|level| level.iter().map(|&i| poset.multidegree(i).clone()).collect()).collect();

    let differentials = (1..=d)
        .map(|i| {
            let mut out = Vec::new();
            for (col, &u) in ids[i].iter().enumerate() {
                let mut acc = BTreeMap::new();
                for e in poset.lower_covers(u) {
                    let coeff = field.from_i64(closed_form_coefficient(poset, u, e.lower) as i64);
                    let mono =
                        poset.multidegree(u).quotient(poset.multidegree(e.lower)).expect("eta is order preserving");
                    accumulate(&field, &mut acc, position[&e.lower], mono, coeff);
                }
                flush(acc, col, &mut out);
            }
            out
        })
        .collect();
    FreeComplex { field, nvars: d, basis, multidegrees, differentials }
}

/// Differential evaluated directly on admissible symbols:
/// `∂ e(I,m) = Σ_p (-1)^p x_{i_p} e(I∖i_p, m)
///           - Σ_p (-1)^p (x_{i_p} m / g(x_{i_p} m)) e(I∖i_p, g(x_{i_p} m))`,
/// where inadmissible targets are dropped and `∂ e(∅, m) = m`.
pub fn build_ek_resolution(ideal: &MonomialIdeal, field: PrimeField) -> Result<FreeComplex> {
    ideal.check_stable()?;
    let d = ideal.nvars();
    let mut basis: Vec<Vec<AdmissibleSymbol>> = vec![Vec::new(); d + 1];
    basis[0].push(AdmissibleSymbol::Bottom);
    for (g, m) in ideal.generators().iter().enumerate() {
        for indices in IndexSet::all_subsets_of_range(m.max_index().saturating_sub(1)) {
            basis[indices.len() + 1].push(AdmissibleSymbol::pair(indices, g));
        }
    }
    for level in &mut basis {
        level.sort_by_key(|s| (s.generator(), s.indices().to_vec()));
    }
    let position: Vec<HashMap<AdmissibleSymbol, usize>> =
        basis.iter().map(|level| level.iter().enumerate().map(|(k, s)| (*s, k)).collect()).collect();
    let multidegrees: Vec<Vec<Multidegree>> =
        basis.iter().map(|level| level.iter().map(|s| s.multidegree(ideal)).collect()).collect();

    let mut differentials = Vec::with_capacity(d);
    for i in 1..=d {
        let mut out = Vec::new();
        for (col, s) in basis[i].iter().enumerate() {
            let m = s.monomial(ideal);
            let indices = s.indices();
            let mut acc = BTreeMap::new();
            if indices.is_empty() {
                accumulate(&field, &mut acc, 0, m.clone(), FieldScalar::ONE);
            }
            for (p, ip) in indices.iter().enumerate().map(|(k, ip)| (k + 1, ip)) {
                let sign = field.sign(p % 2 == 0);
                let rest = indices.without(ip);
                let same = AdmissibleSymbol::pair(rest, s.generator().expect("pair"));
                accumulate(&field, &mut acc, position[i - 1][&same], Monomial::var(d, ip), sign);

                let xm = m.times_var(ip);
                let g = ideal.decompose_generator(&xm)?;
                if rest.max() < g.max_index() {
                    let target = AdmissibleSymbol::pair(rest, ideal.generator_index(&g).expect("generator"));
                    let mono = xm.quotient(&g)?;
                    accumulate(&field, &mut acc, position[i - 1][&target], mono, field.neg(sign));
                }
            }
            flush(acc, col, &mut out);
        }
        differentials.push(out);
    }
    Ok(FreeComplex { field, nvars: d, basis, multidegrees, differentials })
}

/// Multigraded and total Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub graded: BTreeMap<(usize, Multidegree), usize>,
    pub total: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn from_graded(graded: BTreeMap<(usize, Multidegree), usize>) -> Self {
        let mut total = BTreeMap::new();
        for ((i, a), &n) in &graded {
            *total.entry((*i, a.total_degree())).or_insert(0) += n;
        }
        BettiTable { graded, total }
    }

    /// Ranks per homological degree.
    pub fn ranks(&self) -> Vec<usize> {
        let len = self.total.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut out = vec![0; len];
        for ((i, _), n) in &self.total {
            out[*i] += n;
        }
        out
    }

    /// Total Betti diagram: column `i`, row `j - i` for degree `j`.
    pub fn to_text(&self) -> String {
        let ranks = self.ranks();
        let rows: Vec<u32> = {
            let mut r: Vec<u32> = self.total.keys().map(|(i, j)| j - *i as u32).collect();
            r.sort();
            r.dedup();
            r
        };
        let width = self.total.values().chain(ranks.iter()).map(|n| n.to_string().len()).max().unwrap_or(1);
        let label_width = rows.iter().map(|r| r.to_string().len() + 1).max().unwrap_or(1).max(6);
        let mut out = String::new();
        let _ = write!(out, "{:>label_width$}", "");
        for i in 0..ranks.len() {
            let _ = write!(out, " {:>width$}", i);
        }
        out.push('\n');
        let _ = write!(out, "{:>label_width$}", "total:");
        for n in &ranks {
            let _ = write!(out, " {:>width$}", n);
        }
        out.push('\n');
        for r in rows {
            let _ = write!(out, "{:>label_width$}", format!("{r}:"));
            for i in 0..ranks.len() {
                let cell = self.total.get(&(i, r + i as u32)).map_or(".".to_string(), |n| n.to_string());
                let _ = write!(out, " {:>width$}", cell);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let graded: Vec<_> =
            self.graded.iter().map(|((i, a), n)| serde_json::json!({"i": i, "multidegree": a, "value": n})).collect();
        let total: Vec<_> =
            self.total.iter().map(|((i, j), n)| serde_json::json!({"i": i, "degree": j, "value": n})).collect();
        serde_json::json!({"format": 1, "ranks": self.ranks(), "total": total, "graded": graded})
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> (MonomialIdeal, PosetOfSymbols) {
        let n = MonomialIdeal::parse("vars: a b c\na^2\na*b\na*c\nb^2\nb*c\nc^2\n").unwrap();
        let p = PosetOfSymbols::build(&n).unwrap();
        (n, p)
    }

    /// `∂ f(symbol)` as sorted `(sign, monomial, target)` strings.
    fn column(f: &FreeComplex, p: &PosetOfSymbols, idx: &[usize], m: &str) -> Vec<(i64, String, String)> {
        let n = p.ideal();
        let target = p.symbol(p.find(idx, &n.variables().parse(m).unwrap()).unwrap());
        let i = target.rank();
        let col = f.basis(i).iter().position(|s| s == target).unwrap();
        let mut out: Vec<_> = f
            .differential(i)
            .iter()
            .filter(|e| e.col == col)
            .map(|e| (f.field().signed(e.coeff), n.format(&e.monomial), f.basis(i - 1)[e.row].label(n)))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn ranks_of_the_square_of_the_maximal_ideal() {
        let (_, p) = m2();
        let f = build_resolution(&p, PrimeField::default());
        assert_eq!(f.ranks(), vec![1, 6, 8, 3]);
        assert_eq!(f.length(), 3);
    }

    #[test]
    fn differential_examples() {
        let (_, p) = m2();
        let f = build_resolution(&p, PrimeField::default());
        assert_eq!(
            column(&f, &p, &[1], "b*c"),
            vec![(-1, "a".to_string(), "{},b*c".to_string()), (1, "c".to_string(), "{},a*b".to_string())]
        );
        assert_eq!(
            column(&f, &p, &[1, 2], "c^2"),
            vec![
                (-1, "a".to_string(), "{2},c^2".to_string()),
                (-1, "c".to_string(), "{1},b*c".to_string()),
                (1, "b".to_string(), "{1},c^2".to_string()),
                (1, "c".to_string(), "{2},a*c".to_string()),
            ]
        );
        assert_eq!(column(&f, &p, &[], "a*b"), vec![(1, "a*b".to_string(), "{},1".to_string())]);
    }

    #[test]
    fn both_builders_agree() {
        let (n, p) = m2();
        let a = build_resolution(&p, PrimeField::default());
        let b = build_ek_resolution(&n, PrimeField::default()).unwrap();
        assert_eq!(a.entry_set(), b.entry_set());
    }

    #[test]
    fn complex_minimal_exact() {
        let (n, p) = m2();
        let f = build_resolution(&p, PrimeField::default());
        assert!(f.is_complex());
        assert!(f.is_minimal());
        assert!(f.verify_multigrading().passed());
        let degrees = f.bounding_box().divisors();
        assert!(f.verify_exact(&n, &degrees).passed());
    }

    #[test]
    fn strand_at_abc() {
        let (n, p) = m2();
        let f = build_resolution(&p, PrimeField::default());
        let abc = Monomial::new(vec![1, 1, 1]);
        let f2: Vec<String> = f
            .basis(2)
            .iter()
            .zip(f.multidegrees(2))
            .filter(|(_, a)| a.le_componentwise(&abc))
            .map(|(s, _)| s.label(&n))
            .collect();
        assert_eq!(f2, ["{1},b*c", "{2},a*c"]);
        assert!(f.strand_homology(&n, &abc).iter().all(|&h| h == 0));
        assert!(f.strand_homology(&n, &Monomial::one(3)).iter().all(|&h| h == 0));
    }

    #[test]
    fn principal_ideal() {
        let n = MonomialIdeal::parse("vars: a\na\n").unwrap();
        let p = PosetOfSymbols::build(&n).unwrap();
        let f = build_resolution(&p, PrimeField::default());
        assert_eq!(f.ranks(), vec![1, 1]);
        assert!(f.is_complex());
        assert_eq!(f.betti_table().ranks(), vec![1, 1]);
    }

    #[test]
    fn betti_table_shape() {
        let (_, p) = m2();
        let t = build_resolution(&p, PrimeField::default()).betti_table();
        let totals: Vec<_> = t.total.iter().map(|(&(i, j), &n)| (i, j, n)).collect();
        assert_eq!(totals, vec![(0, 0, 1), (1, 2, 6), (2, 3, 8), (3, 4, 3)]);
        assert_eq!(t.graded[&(2, Monomial::new(vec![1, 1, 1]))], 2);
        let text = t.to_text();
        assert!(text.contains("total: 1 6 8 3"), "{text}");
        assert!(text.contains("    1: . 6 8 3"), "{text}");
    }

    /// Taylor complex of `<a^2, a*b, b^2>`: exact but not minimal.
    fn taylor() -> (MonomialIdeal, FreeComplex) {
        let n = MonomialIdeal::parse("vars: a b\na^2\na*b\nb^2\n").unwrap();
        let field = PrimeField::default();
        let gens = n.generators().to_vec();
        let subsets: Vec<Vec<u32>> = (0u32..8).map(|s| (0..3).filter(|j| s >> j & 1 == 1).collect()).collect();
        let lcm = |s: &[u32]| s.iter().fold(Monomial::one(2), |acc, &j| acc.lcm(&gens[j as usize]));
        let mut levels: Vec<Vec<Vec<u32>>> = vec![Vec::new(); 4];
        for s in subsets {
            levels[s.len()].push(s);
        }
        let basis = levels
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(k, s)| {
                        if s.is_empty() {
                            AdmissibleSymbol::Bottom
                        } else {
                            AdmissibleSymbol::pair(IndexSet::EMPTY, k)
                        }
                    })
                    .collect()
            })
            .collect();
        let degrees = levels.iter().map(|l| l.iter().map(|s| lcm(s)).collect()).collect();
        let differentials = (1..4)
            .map(|i| {
                let mut out = Vec::new();
                for (col, s) in levels[i].iter().enumerate() {
                    for (pos, j) in s.iter().enumerate() {
                        let face: Vec<u32> = s.iter().copied().filter(|x| x != j).collect();
                        let row = levels[i - 1].iter().position(|t| *t == face).unwrap();
                        let monomial = lcm(s).quotient(&lcm(&face)).unwrap();
                        out.push(DifferentialEntry { row, col, coeff: field.sign(pos % 2 == 0), monomial });
                    }
                }
                out
            })
            .collect();
        (n, FreeComplex::from_parts(field, 2, basis, degrees, differentials))
    }

    #[test]
    fn taylor_fixture_is_exact_but_not_minimal() {
        let (n, t) = taylor();
        assert_eq!(t.ranks(), vec![1, 3, 3, 1]);
        assert!(t.is_complex());
        assert!(t.verify_multigrading().passed());
        assert!(t.verify_exact(&n, &t.bounding_box().divisors()).passed());
        assert!(!t.is_minimal());

        let p = PosetOfSymbols::build(&n).unwrap();
        let f = build_resolution(&p, PrimeField::default());
        assert!(f.is_minimal());
        assert_eq!(f.ranks(), vec![1, 3, 2]);
    }

    #[test]
    fn flipped_sign_breaks_the_complex() {
        let (_, p) = m2();
        let mut f = build_resolution(&p, PrimeField::default());
        f.flip_sign(2, 0);
        assert!(!f.is_complex());
    }
}
