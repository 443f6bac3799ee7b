//! Monomials in `k[x_1, ..., x_d]` as exponent vectors.
//!
//! Variable indices are 1-based throughout the crate, so `max_index` and
//! `min_index` return values in `1..=d` and `0` stands for "no variable".

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u32>,
}

/// Multidegrees share the representation of monomials and are compared
/// componentwise.
pub type Multidegree = Monomial;

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(d: usize) -> Self {
        Monomial { exponents: vec![0; d] }
    }

    /// The variable `x_index` (1-based).
    pub fn var(d: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= d, "variable index {index} out of range 1..={d}");
        let mut m = Monomial::one(d);
        m.exponents[index - 1] = 1;
        m
    }

    /// `x_S = prod_{s in S} x_s` for 1-based indices.
    pub fn product_of_vars(d: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Monomial::one(d);
        for i in indices {
            m.exponents[i - 1] += 1;
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `deg_{x_index}` for a 1-based index.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.exponents[index - 1]
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Largest `k` with `x_k | m`, or 0 for the constant monomial.
    pub fn max_index(&self) -> usize {
        self.exponents.iter().rposition(|&e| e > 0).map_or(0, |k| k + 1)
    }

    /// Smallest `k` with `x_k | m`, or 0 for the constant monomial.
    pub fn min_index(&self) -> usize {
        self.exponents.iter().position(|&e| e > 0).map_or(0, |k| k + 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exponents })
    }

    /// Product of two monomials. Panics on exponent overflow or mismatched
    /// variable counts; use [`Monomial::checked_mul`] to handle those.
    pub fn multiply(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial multiplication")
    }

    /// `self / divisor`, failing unless `divisor | self`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        if self.nvars() != divisor.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: divisor.nvars() });
        }
        if !divisor.divides(self) {
            return Err(Error::NotDivisible { dividend: self.clone(), divisor: divisor.clone() });
        }
        let exponents = self.exponents.iter().zip(&divisor.exponents).map(|(a, b)| a - b).collect();
        Ok(Monomial { exponents })
    }

    /// Componentwise `self <= other`; the same relation as divisibility.
    pub fn le_componentwise(&self, other: &Monomial) -> bool {
        self.divides(other)
    }

    /// Componentwise maximum (lcm).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| *a.max(b)).collect();
        Monomial { exponents }
    }

    /// Every monomial dividing `self`, i.e. the box `0 <= a <= self`, in
    /// lexicographic order.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::with_capacity(self.nvars())];
        for &e in &self.exponents {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=e).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Monomial::new).collect()
    }

    /// Multiply by `x_index` (1-based).
    pub fn times_var(&self, index: usize) -> Monomial {
        let mut m = self.clone();
        m.exponents[index - 1] = m.exponents[index - 1].checked_add(1).expect("exponent overflow");
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents)
    }
}

/// Renders with the default names `x1 .. xd`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Variables::indexed(self.nvars());
        f.write_str(&names.format(self))
    }
}

/// Names of the ring variables, in index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Variables(Vec<String>);

impl Variables {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for (i, name) in names.iter().enumerate() {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Parse { line: 1, message: format!("invalid variable name `{name}`") });
            }
            if names[..i].contains(name) {
                return Err(Error::Parse { line: 1, message: format!("duplicate variable `{name}`") });
            }
        }
        Ok(Variables(names))
    }

    /// `a, b, c, ...` for up to 26 variables, `x1, x2, ...` beyond.
    pub fn default_for(d: usize) -> Self {
        if d <= 26 {
            Variables((0..d).map(|i| ((b'a' + i as u8) as char).to_string()).collect())
        } else {
            Variables::indexed(d)
        }
    }

    pub fn indexed(d: usize) -> Self {
        Variables((1..=d).map(|i| format!("x{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn format(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (name, &e) in self.0.iter().zip(m.exponents()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses `a^2*b`, `x1^2*x2` or `1`. Repeated factors accumulate.
    pub fn parse(&self, text: &str) -> std::result::Result<Monomial, String> {
        let text = text.trim();
        let mut m = Monomial::one(self.len());
        if text == "1" {
            return Ok(m);
        }
        if text.is_empty() {
            return Err("empty monomial".to_string());
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e = e.trim().parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            let idx = self.0.iter().position(|v| v == name).ok_or_else(|| format!("unknown variable `{name}`"))?;
            m.exponents[idx] = m.exponents[idx].checked_add(exp).ok_or("exponent overflow")?;
        }
        Ok(m)
    }
}
