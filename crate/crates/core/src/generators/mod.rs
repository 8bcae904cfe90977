//! Classical low-discrepancy constructions and two random designs.

mod faure;
mod radical;
mod random;
mod sobol;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointSet;

pub use faure::faure_base;
pub use radical::{next_prime, radical_inverse, reverse_permutation, PRIMES};

/// Default number of candidates per step of the improved LHS.
pub const DEFAULT_ILHS_CANDIDATES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Sobol,
    Halton,
    RevHalton,
    Faure,
    Fibonacci,
    Uniform,
    Ilhs,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 7] = [
        GeneratorKind::Sobol,
        GeneratorKind::Halton,
        GeneratorKind::RevHalton,
        GeneratorKind::Faure,
        GeneratorKind::Fibonacci,
        GeneratorKind::Uniform,
        GeneratorKind::Ilhs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Sobol => "sobol",
            GeneratorKind::Halton => "halton",
            GeneratorKind::RevHalton => "revhalton",
            GeneratorKind::Faure => "faure",
            GeneratorKind::Fibonacci => "fibonacci",
            GeneratorKind::Uniform => "uniform",
            GeneratorKind::Ilhs => "ilhs",
        }
    }

    pub fn is_random(self) -> bool {
        matches!(self, GeneratorKind::Uniform | GeneratorKind::Ilhs)
    }

    /// Largest supported dimension.
    pub fn max_dim(self) -> usize {
        match self {
            GeneratorKind::Sobol => sobol::MAX_DIM,
            GeneratorKind::Halton | GeneratorKind::RevHalton => PRIMES.len(),
            GeneratorKind::Fibonacci => 2,
            _ => usize::MAX,
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let kind = match lower.as_str() {
            "sobol" => GeneratorKind::Sobol,
            "halton" => GeneratorKind::Halton,
            "revhalton" | "revhal" | "reversehalton" => GeneratorKind::RevHalton,
            "faure" => GeneratorKind::Faure,
            "fibonacci" | "fibon" => GeneratorKind::Fibonacci,
            "uniform" | "unif" => GeneratorKind::Uniform,
            "ilhs" => GeneratorKind::Ilhs,
            _ => return Err(Error::InvalidSpec(format!("unknown generator `{s}`"))),
        };
        Ok(kind)
    }
}

/// Everything needed to reproduce a generated point set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub dim: usize,
    pub count: usize,
    /// Required for the random kinds, rejected for the others.
    pub seed: Option<u64>,
    /// Improved-LHS candidates per step.
    pub candidates: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, dim: usize, count: usize) -> Self {
        GeneratorSpec {
            kind,
            dim,
            count,
            seed: None,
            candidates: None,
        }
    }

    pub fn seeded(kind: GeneratorKind, dim: usize, count: usize, seed: u64) -> Self {
        GeneratorSpec {
            seed: Some(seed),
            ..Self::new(kind, dim, count)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.dim == 0 {
            return bad("dimension must be >= 1".into());
        }
        if self.dim > self.kind.max_dim() {
            return bad(format!(
                "{} supports dimension <= {}, got {}",
                self.kind,
                self.kind.max_dim(),
                self.dim
            ));
        }
        if self.kind == GeneratorKind::Fibonacci && self.dim != 2 {
            return bad(format!("fibonacci requires d = 2, got {}", self.dim));
        }
        match (self.kind.is_random(), self.seed) {
            (true, None) => return bad(format!("{} requires a seed", self.kind)),
            (false, Some(_)) => {
                return bad(format!("{} is deterministic; drop the seed", self.kind))
            }
            _ => {}
        }
        if self.candidates.is_some() && self.kind != GeneratorKind::Ilhs {
            return bad("candidates only applies to ilhs".into());
        }
        if self.candidates == Some(0) {
            return bad("ilhs needs at least one candidate".into());
        }
        Ok(())
    }

    /// Label stored with generated sets, e.g. `halton d=2 n=20`.
    pub fn label(&self) -> String {
        let mut s = format!("{} d={} n={}", self.kind, self.dim, self.count);
        if let Some(seed) = self.seed {
            s.push_str(&format!(" seed={seed}"));
        }
        s
    }
}

/// Generates the point set described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<PointSet> {
    spec.validate()?;
    let (d, n) = (spec.dim, spec.count);
    let coords = match spec.kind {
        GeneratorKind::Sobol => sobol::sobol_points(d, n),
        GeneratorKind::Halton => halton_points(d, n, false),
        GeneratorKind::RevHalton => halton_points(d, n, true),
        GeneratorKind::Faure => faure::faure_points(d, n),
        GeneratorKind::Fibonacci => return Ok(fibonacci_set(n)),
        GeneratorKind::Uniform => random::uniform_points(d, n, spec.seed.unwrap_or_default()),
        GeneratorKind::Ilhs => random::ilhs_points(
            d,
            n,
            spec.candidates.unwrap_or(DEFAULT_ILHS_CANDIDATES),
            spec.seed.unwrap_or_default(),
        ),
    };
    Ok(PointSet::from_flat(d, coords)?.with_label(spec.label()))
}

/// Halton points with indices `1..=count`, bases the first `dim` primes;
/// `reverse` applies the `k -> b - k` digit scramble.
fn halton_points(dim: usize, count: usize, reverse: bool) -> Vec<f64> {
    let perms: Vec<Option<Vec<u32>>> = PRIMES[..dim]
        .iter()
        .map(|&b| reverse.then(|| reverse_permutation(b)))
        .collect();
    let mut out = Vec::with_capacity(dim * count);
    for i in 1..=count as u64 {
        for (j, &b) in PRIMES[..dim].iter().enumerate() {
            out.push(radical_inverse(i, b, perms[j].as_deref()));
        }
    }
    out
}

/// The `n`-point Fibonacci lattice `({k/φ}, (k+1)/n)`, `k = 0..n`.
///
/// The golden-ratio coordinate starts at `k = 0` (the first point sits on
/// the left edge) while the second coordinate runs over `1/n, ..., 1`. The
/// second coordinate depends on `n`, so lattices of different sizes are not
/// prefixes of one another.
pub fn fibonacci_set(n: usize) -> PointSet {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut coords = Vec::with_capacity(2 * n);
    for k in 0..n {
        let x = k as f64 / phi;
        coords.push(x - x.floor());
        coords.push((k + 1) as f64 / n as f64);
    }
    PointSet::from_flat(2, coords)
        .expect("lattice lies in the unit square")
        .with_label(format!("fibonacci d=2 n={n}"))
}
