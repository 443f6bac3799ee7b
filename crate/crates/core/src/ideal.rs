//! Monomial ideals given by their minimal generators, the stability test,
//! and the decomposition map `m -> g(m)` of a stable ideal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Variables};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Variables,
    generators: Vec<Monomial>,
}

/// `m = g * y` with `g` a minimal generator and `max(g) <= min(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub g: Monomial,
    pub y: Monomial,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    vars: Vec<String>,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens` with default variable names.
    pub fn minimalize(gens: Vec<Monomial>) -> Result<Self> {
        let d = gens.first().ok_or(Error::NoGenerators)?.nvars();
        Self::with_variables(Variables::default_for(d), gens)
    }

    /// Drops generators divisible by another one, removes duplicates and sorts
    /// ascending lexicographically by exponent vector.
    pub fn with_variables(vars: Variables, mut gens: Vec<Monomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        let d = vars.len();
        if let Some(bad) = gens.iter().find(|g| g.nvars() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.nvars() });
        }
        gens.sort();
        gens.dedup();
        let minimal: Vec<Monomial> =
            gens.iter().filter(|g| !gens.iter().any(|h| h != *g && h.divides(g))).cloned().collect();
        Ok(MonomialIdeal { vars, generators: minimal })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    /// G(N) in canonical order.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn generator_index(&self, m: &Monomial) -> Option<usize> {
        self.generators.binary_search(m).ok()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// First generator violating the exchange condition, reported as
    /// [`Error::NotStable`]. Checking generators suffices: for `m = g*w` with
    /// `max(m) > max(g)` the exchanged monomial is `g` times a monomial.
    pub fn check_stable(&self) -> Result<()> {
        for g in &self.generators {
            let r = g.max_index();
            for i in 1..r {
                let exchanged = g.times_var(i).quotient(&Monomial::var(self.nvars(), r))?;
                if !self.contains(&exchanged) {
                    return Err(Error::NotStable { generator: g.clone(), index: i, max_index: r, exchanged });
                }
            }
        }
        Ok(())
    }

    pub fn is_stable(&self) -> bool {
        self.check_stable().is_ok()
    }

    /// The unique decomposition of `m`, found by scanning every generator and
    /// insisting that exactly one qualifies.
    pub fn decompose(&self, m: &Monomial) -> Result<Decomposition> {
        if m.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: m.nvars() });
        }
        let mut found: Option<Decomposition> = None;
        let mut count = 0;
        let mut any_divisor = false;
        for g in &self.generators {
            if !g.divides(m) {
                continue;
            }
            any_divisor = true;
            let y = m.quotient(g)?;
            if y.is_one() || g.max_index() <= y.min_index() {
                count += 1;
                found.get_or_insert(Decomposition { g: g.clone(), y });
            }
        }
        if !any_divisor {
            return Err(Error::NotInIdeal(m.clone()));
        }
        match (count, found) {
            (1, Some(dec)) => Ok(dec),
            _ => Err(Error::AmbiguousDecomposition { monomial: m.clone(), count }),
        }
    }

    /// `g(m)`.
    pub fn decompose_generator(&self, m: &Monomial) -> Result<Monomial> {
        self.decompose(m).map(|dec| dec.g)
    }

    /// `g(w*m)`. Debug builds also check `g(w*g(m)) = g(w*m)` and
    /// `max(g(w*m)) <= max(g(m))`.
    pub fn decompose_product(&self, w: &Monomial, m: &Monomial) -> Result<Monomial> {
        let wm = w.checked_mul(m)?;
        let g = self.decompose_generator(&wm)?;
        if cfg!(debug_assertions) {
            let gm = self.decompose_generator(m)?;
            let assoc = self.decompose_generator(&w.multiply(&gm))?;
            debug_assert_eq!(assoc, g, "associativity of the decomposition map");
            debug_assert!(g.max_index() <= gm.max_index());
        }
        Ok(g)
    }

    /// Parses the text format (`vars: a b c` then one generator per line) or
    /// the JSON format `{"vars": [...], "gens": [[...], ...]}`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return Self::parse_json(text);
        }
        let mut vars: Option<Variables> = None;
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match &vars {
                None => {
                    let rest = line.strip_prefix("vars:").ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: "expected `vars: <names>` header".to_string(),
                    })?;
                    let names = rest.split_whitespace().map(str::to_string).collect::<Vec<_>>();
                    if names.is_empty() {
                        return Err(Error::Parse { line: line_no, message: "no variables declared".into() });
                    }
                    vars = Some(Variables::new(names).map_err(|e| match e {
                        Error::Parse { message, .. } => Error::Parse { line: line_no, message },
                        other => other,
                    })?);
                }
                Some(v) => {
                    let m = v.parse(line).map_err(|message| Error::Parse { line: line_no, message })?;
                    gens.push(m);
                }
            }
        }
        let vars = vars.ok_or(Error::Parse { line: 1, message: "missing `vars:` header".into() })?;
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        Self::with_variables(vars, gens)
    }

    fn parse_json(text: &str) -> Result<Self> {
        let raw: IdealJson =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        let vars = Variables::new(raw.vars)?;
        let gens = raw.gens.into_iter().map(Monomial::new).collect();
        Self::with_variables(vars, gens)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.vars.names().join(" "));
        for g in &self.generators {
            out.push_str(&self.vars.format(g));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vars": self.vars.names(),
            "gens": self.generators,
        })
    }

    pub fn format(&self, m: &Monomial) -> String {
        self.vars.format(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(text: &str) -> MonomialIdeal {
        MonomialIdeal::parse(text).unwrap()
    }

    fn m2() -> MonomialIdeal {
        ideal("vars: a b c\na^2\na*b\na*c\nb^2\nb*c\nc^2\n")
    }

    fn mono(n: &MonomialIdeal, s: &str) -> Monomial {
        n.variables().parse(s).unwrap()
    }

    #[test]
    fn minimalize_drops_multiples() {
        let n = ideal("vars: a b\na^2\na*b\na^2*b\n");
        assert_eq!(n.generators(), &[mono(&n, "a*b"), mono(&n, "a^2")]);
        let m = m2();
        assert_eq!(m.generators().len(), 6);
        let single = ideal("vars: a\na\n");
        assert_eq!(single.generators().len(), 1);
    }

    #[test]
    fn canonical_order_is_ascending_lex() {
        let n = m2();
        let names: Vec<_> = n.generators().iter().map(|g| n.format(g)).collect();
        assert_eq!(names, ["c^2", "b*c", "b^2", "a*c", "a*b", "a^2"]);
    }

    #[test]
    fn minimalize_rejects_bad_input() {
        assert_eq!(MonomialIdeal::minimalize(vec![]), Err(Error::NoGenerators));
        let mixed = vec![Monomial::new(vec![1, 0]), Monomial::new(vec![1])];
        assert!(matches!(MonomialIdeal::minimalize(mixed), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn membership() {
        let n = m2();
        assert!(n.contains(&mono(&n, "a*b*c")));
        assert!(!n.contains(&mono(&n, "c")));
        let p = ideal("vars: a\na\n");
        assert!(!p.contains(&Monomial::one(1)));
    }

    #[test]
    fn stability() {
        assert!(m2().is_stable());
        assert!(ideal("vars: a\na\n").is_stable());
        let n = ideal("vars: a b\na*b\n");
        match n.check_stable() {
            Err(Error::NotStable { exchanged, index, max_index, .. }) => {
                assert_eq!(n.format(&exchanged), "a^2");
                assert_eq!((index, max_index), (1, 2));
            }
            other => panic!("expected a stability violation, got {other:?}"),
        }
    }

    #[test]
    fn decomposition_examples() {
        let n = m2();
        let dec = n.decompose(&mono(&n, "a*b*c")).unwrap();
        assert_eq!((n.format(&dec.g), n.format(&dec.y)), ("a*b".into(), "c".into()));
        let dec = n.decompose(&mono(&n, "a^2")).unwrap();
        assert_eq!((n.format(&dec.g), n.format(&dec.y)), ("a^2".into(), "1".into()));
        let dec = n.decompose(&mono(&n, "b*c^2")).unwrap();
        assert_eq!((n.format(&dec.g), n.format(&dec.y)), ("b*c".into(), "c".into()));
    }

    #[test]
    fn decomposition_errors() {
        let n = m2();
        assert!(matches!(n.decompose(&mono(&n, "c")), Err(Error::NotInIdeal(_))));
        let bad = ideal("vars: a b c\na*c\n");
        // a*c*b = ac * b with max(ac)=3 > min(b)=2: no qualifying generator
        assert!(matches!(bad.decompose(&mono(&bad, "a*b*c")), Err(Error::AmbiguousDecomposition { count: 0, .. })));
    }

    #[test]
    fn decompose_product_examples() {
        let n = m2();
        let g = n.decompose_product(&mono(&n, "a"), &mono(&n, "b*c")).unwrap();
        assert_eq!(n.format(&g), "a*b");
        let g = n.decompose_product(&Monomial::one(3), &mono(&n, "a*c")).unwrap();
        assert_eq!(n.format(&g), "a*c");
        let g = n.decompose_product(&mono(&n, "b"), &mono(&n, "c^2")).unwrap();
        assert_eq!(n.format(&g), "b*c");
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = MonomialIdeal::parse("vars: a b\na^2\nq*b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = MonomialIdeal::parse("a^2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert_eq!(MonomialIdeal::parse("vars: a b\n"), Err(Error::NoGenerators));
    }

    #[test]
    fn json_and_text_agree() {
        let j = MonomialIdeal::parse(
            r#"{"vars": ["a","b","c"], "gens": [[2,0,0],[1,1,0],[1,0,1],[0,2,0],[0,1,1],[0,0,2]]}"#,
        )
        .unwrap();
        assert_eq!(j, m2());
        assert_eq!(MonomialIdeal::parse(&m2().to_text()).unwrap(), m2());
        assert_eq!(MonomialIdeal::parse(&m2().to_json().to_string()).unwrap(), m2());
    }
}
