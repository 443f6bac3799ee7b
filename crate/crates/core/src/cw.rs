//! The regular CW complex whose face poset is `P_N`, stored combinatorially:
//! cells, their `ℕ^d` grading, and signed incidence numbers on cover pairs.
//!
//! Cell ids coincide with symbol indices of the poset. Cell 0 is the empty
//! cell, of dimension -1.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::SparseMatrix;
use crate::monomial::Multidegree;
use crate::poset::{AdmissibleSymbol, PosetOfSymbols};
use crate::report::CheckReport;
use crate::resolution::FreeComplex;
use crate::topology::cone_boundary_coefficient;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub dimension: i32,
    pub symbol: AdmissibleSymbol,
    pub label: String,
    pub multidegree: Multidegree,
}

/// `[cell, face, sign]` for a face of codimension one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub cell: usize,
    pub face: usize,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct GradedCWComplex {
    nvars: usize,
    cells: Vec<Cell>,
    incidence: Vec<Incidence>,
}

impl GradedCWComplex {
    /// One cell per symbol, with incidence numbers read off the boundary of
    /// the cone over each lower interval.
    pub fn build(poset: &PosetOfSymbols) -> Result<Self> {
        let cells = (0..poset.len())
            .map(|i| Cell {
                id: i,
                dimension: poset.rank(i) as i32 - 1,
                symbol: *poset.symbol(i),
                label: poset.label(i),
                multidegree: poset.multidegree(i).clone(),
            })
            .collect();
        let per_cell: Vec<Result<Vec<Incidence>>> = (0..poset.len())
            .into_par_iter()
            .map(|u| {
                poset
                    .lower_covers(u)
                    .iter()
                    .map(|e| {
                        Ok(Incidence { cell: u, face: e.lower, sign: cone_boundary_coefficient(poset, u, e.lower)? })
                    })
                    .collect()
            })
            .collect();
        let mut incidence = Vec::new();
        for r in per_cell {
            incidence.extend(r?);
        }
        incidence.sort_by_key(|e| (e.cell, e.face));
        Ok(GradedCWComplex { nvars: poset.ideal().nvars(), cells, incidence })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn incidence(&self) -> &[Incidence] {
        &self.incidence
    }

    /// Number of cells in dimensions `0, 1, ...`, excluding the empty cell.
    pub fn cell_counts(&self) -> Vec<usize> {
        let top = self.cells.iter().map(|c| c.dimension).max().unwrap_or(-1);
        let mut out = vec![0; (top + 1) as usize];
        for c in self.cells.iter().filter(|c| c.dimension >= 0) {
            out[c.dimension as usize] += 1;
        }
        out
    }

    /// Faces of codimension one with their signs.
    pub fn boundary_of(&self, cell: usize) -> Vec<(usize, i8)> {
        self.incidence.iter().filter(|e| e.cell == cell).map(|e| (e.face, e.sign)).collect()
    }

    /// Negates one incidence number. For negative controls.
    pub fn flip_incidence(&mut self, index: usize) {
        self.incidence[index].sign = -self.incidence[index].sign;
    }

    /// Incidence matrix from `k`-cells to `(k-1)`-cells over the cells
    /// accepted by `keep`, for `k = 0, 1, ...`.
    fn incidence_matrices(&self, field: &PrimeField, keep: impl Fn(&Cell) -> bool) -> Vec<SparseMatrix> {
        let top = self.cells.iter().map(|c| c.dimension).max().unwrap_or(-1);
        let mut local: HashMap<usize, usize> = HashMap::new();
        let mut sizes = vec![0usize; (top + 2) as usize];
        for c in self.cells.iter().filter(|c| keep(c)) {
            let k = (c.dimension + 1) as usize;
            local.insert(c.id, sizes[k]);
            sizes[k] += 1;
        }
        let mut mats: Vec<SparseMatrix> =
            (1..sizes.len()).map(|k| SparseMatrix::zeros(sizes[k - 1], sizes[k])).collect();
        for e in &self.incidence {
            if let (Some(&col), Some(&row)) = (local.get(&e.cell), local.get(&e.face)) {
                let k = self.cells[e.cell].dimension as usize;
                mats[k].push(row, col, field.from_i64(e.sign as i64));
            }
        }
        mats
    }

    /// Reduced homology ranks over `field` of the subcomplex of cells whose
    /// grading is at most `a`, indexed from dimension -1.
    pub fn subcomplex_homology(&self, a: &Multidegree, field: &PrimeField) -> Vec<usize> {
        let keep = |c: &Cell| c.multidegree.le_componentwise(a);
        let sizes: Vec<usize> = {
            let top = self.cells.iter().map(|c| c.dimension).max().unwrap_or(-1);
            let mut s = vec![0; (top + 2) as usize];
            for c in self.cells.iter().filter(|c| keep(c)) {
                s[(c.dimension + 1) as usize] += 1;
            }
            s
        };
        let mut ranks: Vec<usize> = self.incidence_matrices(field, keep).iter().map(|m| m.rank(field)).collect();
        ranks.insert(0, 0);
        ranks.push(0);
        (0..sizes.len()).map(|k| sizes[k] - ranks[k] - ranks[k + 1]).collect()
    }

    /// Consecutive incidence matrices compose to zero.
    pub fn verify_boundary(&self, field: &PrimeField) -> CheckReport {
        let mats = self.incidence_matrices(field, |_| true);
        let violations = mats
            .windows(2)
            .enumerate()
            .filter(|(_, w)| !w[0].mul(&w[1], field).is_zero(field))
            .map(|(k, _)| format!("incidence ∂{}∘∂{} is nonzero", k, k + 1))
            .collect();
        CheckReport::new("cw_boundary", mats.len().saturating_sub(1), violations)
    }

    /// The order generated by nonzero incidences equals the order on `P_N`.
    pub fn verify_face_poset(&self, poset: &PosetOfSymbols) -> CheckReport {
        let n = self.cells.len();
        let mut below = vec![false; n * n];
        for x in 0..n {
            below[x * n + x] = true;
        }
        // cells sorted by dimension, so faces are complete before their cofaces
        for x in 0..n {
            for e in self.incidence.iter().filter(|e| e.cell == x && e.sign != 0) {
                for y in 0..n {
                    if below[e.face * n + y] {
                        below[x * n + y] = true;
                    }
                }
            }
        }
        let mut violations = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if below[x * n + y] != poset.le(y, x) {
                    violations.push(format!("{} vs {}: face order differs", poset.label(y), poset.label(x)));
                }
            }
        }
        CheckReport::new("face_poset", n * n, violations)
    }

    /// The three conditions for `complex` to be supported on this cell
    /// complex: matching ranks, matching gradings, and differential entries
    /// `c(e, e') x^(deg e - deg e')`.
    pub fn verify_cellular(&self, complex: &FreeComplex) -> CheckReport {
        let mut violations = Vec::new();
        let field = complex.field();
        let by_symbol: HashMap<AdmissibleSymbol, usize> = self.cells.iter().map(|c| (c.symbol, c.id)).collect();
        let mut counts = vec![0usize; complex.max_degree() + 1];
        for c in &self.cells {
            let i = (c.dimension + 1) as usize;
            if i < counts.len() {
                counts[i] += 1;
            } else {
                violations.push(format!("cell {} has no free module", c.label));
            }
        }
        for (i, (&cells, rank)) in counts.iter().zip(complex.ranks()).enumerate() {
            if cells != rank {
                violations.push(format!("(1) rank F_{i} = {rank} but {cells} cells of dimension {}", i as i32 - 1));
            }
        }
        for i in 0..=complex.max_degree() {
            for (s, a) in complex.basis(i).iter().zip(complex.multidegrees(i)) {
                match by_symbol.get(s) {
                    Some(&id) if self.cells[id].multidegree == *a => {}
                    Some(&id) => violations.push(format!("(2) grading of {} differs", self.cells[id].label)),
                    None => violations.push(format!("(2) basis element {s:?} has no cell")),
                }
            }
        }
        let expected: HashMap<(usize, usize), i8> = self.incidence.iter().map(|e| ((e.cell, e.face), e.sign)).collect();
        let mut seen = 0;
        for i in 1..=complex.max_degree() {
            for e in complex.differential(i) {
                let (Some(&u), Some(&l)) =
                    (by_symbol.get(&complex.basis(i)[e.col]), by_symbol.get(&complex.basis(i - 1)[e.row]))
                else {
                    continue;
                };
                let gap = self.cells[u].multidegree.quotient(&self.cells[l].multidegree).ok();
                match expected.get(&(u, l)) {
                    Some(&c) if field.from_i64(c as i64) == e.coeff && gap.as_ref() == Some(&e.monomial) => seen += 1,
                    Some(&c) => violations.push(format!(
                        "(3) entry {} -> {} is {}*{} but incidence gives {c}",
                        self.cells[u].label,
                        self.cells[l].label,
                        field.signed(e.coeff),
                        e.monomial
                    )),
                    None => violations
                        .push(format!("(3) entry {} -> {} has no incidence", self.cells[u].label, self.cells[l].label)),
                }
            }
        }
        let nonzero = self.incidence.iter().filter(|e| e.sign != 0).count();
        if seen != nonzero {
            violations.push(format!("(3) {nonzero} incidences but {seen} matching differential entries"));
        }
        CheckReport::new("cellular", self.cells.len() + self.incidence.len(), violations)
    }

    /// Every subcomplex `X_{<=a}` with at least one nonempty cell has zero
    /// reduced homology.
    pub fn verify_subcomplex_acyclicity(&self, degrees: &[Multidegree], field: &PrimeField) -> CheckReport {
        let relevant: Vec<&Multidegree> = degrees
            .iter()
            .filter(|a| self.cells.iter().any(|c| c.dimension >= 0 && c.multidegree.le_componentwise(a)))
            .collect();
        let violations = relevant
            .par_iter()
            .filter_map(|a| {
                let h = self.subcomplex_homology(a, field);
                h.iter().any(|&x| x > 0).then(|| format!("X_<={a:?} has reduced homology {h:?}"))
            })
            .collect();
        CheckReport::new("subcomplex_acyclicity", relevant.len(), violations)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph X_N {\n  rankdir=BT;\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "  c{} [label=\"{}\\ndim {}\\n{:?}\"];",
                c.id,
                c.label,
                c.dimension,
                c.multidegree.exponents()
            );
        }
        for e in &self.incidence {
            let _ = writeln!(out, "  c{} -> c{} [label=\"{:+}\"];", e.face, e.cell, e.sign);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<_> = self
            .cells
            .iter()
            .map(|c| serde_json::json!({"id": c.id, "dimension": c.dimension, "label": c.label, "indices": c.symbol.indices()}))
            .collect();
        let incidence: Vec<_> = self.incidence.iter().map(|e| serde_json::json!([e.cell, e.face, e.sign])).collect();
        let grading: Vec<_> = self.cells.iter().map(|c| &c.multidegree).collect();
        serde_json::json!({
            "format": 1,
            "nvars": self.nvars,
            "cells": cells,
            "incidence": incidence,
            "grading": grading,
        })
    }

    /// `dot` or `json`.
    pub fn export(&self, format: &str) -> Result<String> {
        match format {
            "dot" => Ok(self.to_dot()),
            "json" => Ok(serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;
    use crate::monomial::Monomial;
    use crate::resolution::build_resolution;

    fn m2() -> PosetOfSymbols {
        let n = MonomialIdeal::parse("vars: a b c\na^2\na*b\na*c\nb^2\nb*c\nc^2\n").unwrap();
        PosetOfSymbols::build(&n).unwrap()
    }

    #[test]
    fn cell_counts_of_the_square() {
        let x = GradedCWComplex::build(&m2()).unwrap();
        assert_eq!(x.cell_counts(), vec![6, 8, 3]);
        assert_eq!(x.cells().len(), 18);
    }

    #[test]
    fn principal_is_a_point() {
        let n = MonomialIdeal::parse("vars: a\na\n").unwrap();
        let x = GradedCWComplex::build(&PosetOfSymbols::build(&n).unwrap()).unwrap();
        assert_eq!(x.cell_counts(), vec![1]);
        let json = x.to_json();
        assert_eq!(json["cells"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn square_two_cell_has_four_edges() {
        let p = m2();
        let x = GradedCWComplex::build(&p).unwrap();
        let c2 = p.ideal().variables().parse("c^2").unwrap();
        let top = p.find(&[1, 2], &c2).unwrap();
        let mut faces: Vec<String> = x.boundary_of(top).iter().map(|(f, _)| p.label(*f)).collect();
        faces.sort();
        assert_eq!(faces, ["{1},b*c", "{1},c^2", "{2},a*c", "{2},c^2"]);
    }

    #[test]
    fn cellular_and_acyclic() {
        let p = m2();
        let field = PrimeField::default();
        let x = GradedCWComplex::build(&p).unwrap();
        let f = build_resolution(&p, field);
        assert!(x.verify_cellular(&f).passed(), "{:?}", x.verify_cellular(&f));
        assert!(x.verify_boundary(&field).passed());
        assert!(x.verify_face_poset(&p).passed());
        let degrees = f.bounding_box().divisors();
        assert!(x.verify_subcomplex_acyclicity(&degrees, &field).passed());
    }

    #[test]
    fn subcomplex_examples() {
        let p = m2();
        let field = PrimeField::default();
        let x = GradedCWComplex::build(&p).unwrap();
        let abc = Monomial::new(vec![1, 1, 1]);
        let kept: Vec<_> = x
            .cells()
            .iter()
            .filter(|c| c.dimension >= 0 && c.multidegree.le_componentwise(&abc))
            .map(|c| c.dimension)
            .collect();
        assert_eq!(kept.iter().filter(|&&d| d == 0).count(), 3);
        assert_eq!(kept.iter().filter(|&&d| d == 1).count(), 2);
        assert!(x.subcomplex_homology(&abc, &field).iter().all(|&h| h == 0));
        assert!(x.subcomplex_homology(&Monomial::new(vec![2, 0, 0]), &field).iter().all(|&h| h == 0));
        // a degree below every cell leaves only the empty cell
        assert_eq!(x.subcomplex_homology(&Monomial::new(vec![1, 0, 0]), &field)[0], 1);
    }

    #[test]
    fn wrong_incidence_is_flagged() {
        let p = m2();
        let mut x = GradedCWComplex::build(&p).unwrap();
        let f = build_resolution(&p, PrimeField::default());
        x.flip_incidence(7);
        let r = x.verify_cellular(&f);
        assert!(r.violations.iter().any(|v| v.starts_with("(3)")), "{r:?}");
    }

    #[test]
    fn export_formats() {
        let x = GradedCWComplex::build(&m2()).unwrap();
        let dot = x.export("dot").unwrap();
        assert_eq!(dot.lines().filter(|l| l.contains("[label=\"") && l.contains("dim")).count(), 18);
        assert!(x.export("svg").is_err());
        assert_eq!(x.export("json").unwrap(), x.export("json").unwrap());
    }
}
