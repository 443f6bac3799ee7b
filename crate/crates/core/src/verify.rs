//! The full property suite over one ideal, with each check reported
//! separately.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cw::GradedCWComplex;
use crate::field::PrimeField;
use crate::ideal::MonomialIdeal;
use crate::koszul::{compare_betti, verify_euler};
use crate::monomial::{Monomial, Multidegree};
use crate::poset::PosetOfSymbols;
use crate::report::CheckReport;
use crate::resolution::{build_ek_resolution, build_resolution, FreeComplex};
use crate::topology::{verify_cone_coefficients, verify_cycles, verify_pairwise_cancellation, verify_spheres};

/// How many multidegrees the exactness, oracle and acyclicity checks visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    /// The multidegrees of the basis elements, plus 0.
    Quick,
    /// Every multidegree in the bounding box.
    Full,
    /// The bounding box plus random multidegrees outside it.
    Exhaustive,
}

impl FromStr for Depth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Depth::Quick),
            "full" => Ok(Depth::Full),
            "exhaustive" => Ok(Depth::Exhaustive),
            other => Err(format!("unknown depth `{other}` (expected quick, full or exhaustive)")),
        }
    }
}

/// Random multidegrees per ideal at exhaustive depth.
pub const EXTERNAL_SAMPLES: usize = 64;

/// Multidegrees to test at the given depth, sorted and without repeats.
pub fn degrees(complex: &FreeComplex, depth: Depth, seed: u64) -> Vec<Multidegree> {
    let bbox = complex.bounding_box();
    let mut out = match depth {
        Depth::Quick => {
            let mut v: Vec<Multidegree> =
                (0..=complex.max_degree()).flat_map(|i| complex.multidegrees(i).iter().cloned()).collect();
            v.push(Monomial::one(complex.nvars()));
            v
        }
        Depth::Full => bbox.divisors(),
        Depth::Exhaustive => {
            let mut v = bbox.divisors();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..EXTERNAL_SAMPLES {
                let e = bbox.exponents().iter().map(|&b| rng.gen_range(0..=2 * b)).collect();
                v.push(Monomial::new(e));
            }
            v
        }
    };
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub format: u32,
    pub depth: Depth,
    pub prime: u32,
    pub ranks: Vec<usize>,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            out.push_str(&format!("{:<22} {:>4}  checked {}\n", c.name, status, c.checked));
            for v in c.violations.iter().take(10) {
                out.push_str(&format!("    {v}\n"));
            }
            if c.violations.len() > 10 {
                out.push_str(&format!("    ... {} more\n", c.violations.len() - 10));
            }
        }
        out
    }
}

/// Builds everything for `ideal` and runs every check. A non-stable ideal
/// yields a report whose only entry is the failed stability check.
pub fn run_suite(ideal: &MonomialIdeal, field: PrimeField, depth: Depth, seed: u64) -> SuiteReport {
    let mut checks = Vec::new();
    let stability = match ideal.check_stable() {
        Ok(()) => CheckReport::new("stability", ideal.generators().len(), Vec::new()),
        Err(e) => CheckReport::new("stability", ideal.generators().len(), vec![e.to_string()]),
    };
    let stable = stability.passed();
    checks.push(stability);
    let poset = match stable.then(|| PosetOfSymbols::build(ideal)) {
        Some(Ok(p)) => p,
        Some(Err(e)) => {
            checks.push(CheckReport::new("poset", 0, vec![e.to_string()]));
            return SuiteReport { format: 1, depth, prime: field.modulus(), ranks: Vec::new(), checks };
        }
        None => return SuiteReport { format: 1, depth, prime: field.modulus(), ranks: Vec::new(), checks },
    };

    checks.push(poset.verify_order());
    checks.push(poset.verify_el_shelling());
    checks.push(poset.verify_falling_chains());
    checks.push(poset.verify_diamond());
    checks.push(verify_cycles(&poset));
    checks.push(verify_pairwise_cancellation(&poset));
    checks.push(verify_spheres(&poset, &field));
    checks.push(verify_cone_coefficients(&poset));

    let complex = build_resolution(&poset, field);
    checks.push(match build_ek_resolution(ideal, field) {
        Ok(ek) if ek.entry_set() == complex.entry_set() => CheckReport::new("builder_agreement", 1, Vec::new()),
        Ok(_) => CheckReport::new("builder_agreement", 1, vec!["poset and symbol builders differ".into()]),
        Err(e) => CheckReport::new("builder_agreement", 1, vec![e.to_string()]),
    });
    checks.push(complex.verify_complex());
    checks.push(complex.verify_minimal());
    checks.push(complex.verify_multigrading());

    let degs = degrees(&complex, depth, seed);
    checks.push(complex.verify_exact(ideal, &degs));
    checks.push(compare_betti(ideal, &complex, &degs));
    checks.push(verify_euler(ideal, &degs, &field));

    match GradedCWComplex::build(&poset) {
        Ok(cw) => {
            checks.push(cw.verify_cellular(&complex));
            checks.push(cw.verify_boundary(&field));
            checks.push(cw.verify_face_poset(&poset));
            checks.push(cw.verify_subcomplex_acyclicity(&degs, &field));
        }
        Err(e) => checks.push(CheckReport::new("cellular", 0, vec![e.to_string()])),
    }
    SuiteReport { format: 1, depth, prime: field.modulus(), ranks: complex.ranks(), checks }
}
