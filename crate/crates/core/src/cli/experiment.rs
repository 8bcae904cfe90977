use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorKind, GeneratorSpec};
use crate::geometry::PointSet;
use crate::solver::{SolverKind, SolverRecord};

use super::{solve, SolveSettings};

/// Columns of the experiment table. Values carry 4 decimals, `wall_ms` one.
pub const CSV_HEADER: &str = "generator,seed,d,n,m,solver,value,status,nodes,wall_ms";

/// Random-solver samples per instance in experiments.
pub const DEFAULT_RANDOM_EVALS: u64 = 20_000;

/// One table row, backed by the full solver record.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub record: SolverRecord,
}

impl ExperimentRecord {
    pub fn from_solver_record(record: &SolverRecord) -> Self {
        ExperimentRecord {
            record: record.clone(),
        }
    }

    pub fn csv_row(&self) -> String {
        let r = &self.record;
        format!(
            "{},{},{},{},{},{},{:.4},{},{},{:.1}",
            r.generator.as_deref().unwrap_or(""),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.d,
            r.n,
            r.m,
            r.solver,
            r.value,
            r.status,
            r.nodes,
            r.wall_ms
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub gens: Vec<GeneratorKind>,
    pub d: usize,
    pub ms: Vec<usize>,
    /// Instance sizes are `m + nstep, m + 2 nstep, ... <= nmax`.
    pub nmax: usize,
    pub nstep: usize,
    pub solvers: Vec<SolverKind>,
    /// Seed of the random generators.
    pub seed: u64,
    pub settings: SolveSettings,
}

impl ExperimentConfig {
    /// `(generator, m, n)` in output order.
    pub fn instances(&self) -> Vec<(GeneratorKind, usize, usize)> {
        let mut out = Vec::new();
        for &g in &self.gens {
            for &m in &self.ms {
                let mut n = m + self.nstep;
                while n <= self.nmax {
                    out.push((g, m, n));
                    n += self.nstep;
                }
            }
        }
        out
    }
}

/// Runs every `(generator, m, n, solver)` combination, in parallel on the
/// current rayon pool. Rows come back in `(generator, m, n, solver)` order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    if config.nstep == 0 {
        return Err(Error::InvalidArgument("nstep must be positive".into()));
    }
    let instances: Vec<(GeneratorKind, usize, PointSet)> = config
        .instances()
        .into_iter()
        .map(|(g, m, n)| {
            let mut spec = GeneratorSpec::new(g, config.d, n);
            if g.is_random() {
                spec.seed = Some(config.seed);
            }
            Ok((g, m, generate(&spec)?))
        })
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, SolverKind)> = (0..instances.len())
        .flat_map(|k| config.solvers.iter().map(move |&s| (k, s)))
        .collect();
    jobs.par_iter()
        .map(|&(k, solver)| {
            let (g, m, points) = &instances[k];
            let selection = solve(points, *m, solver, &config.settings)?;
            let mut record = SolverRecord::new(points.label(), points, solver, &selection);
            record.generator = Some(g.name().to_string());
            record.seed = Some(config.seed);
            Ok(ExperimentRecord { record })
        })
        .collect()
}
