//! Random system generation: NZ lattice points per support with coordinates
//! drawn uniformly from {0, ..., d_max}, shifted by the first point, with
//! standard normal coefficients. Unmixed mode shares one support across all
//! equations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::formats::{EquationSpec, SystemFile, TermSpec, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Mixed,
    Unmixed,
}

#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub n: usize,
    pub nz: usize,
    pub d_max: i64,
    pub mode: Mode,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.n == 0 || self.nz == 0 || self.d_max <= 0 {
            return Err("n, NZ and d_max must all be positive".into());
        }
        Ok(())
    }
}

fn draw_support_points(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let raw: Vec<Vec<i64>> = (0..spec.nz)
        .map(|_| {
            (0..spec.n)
                .map(|_| rng.random_range(0..=spec.d_max))
                .collect()
        })
        .collect();
    let first = raw[0].clone();
    raw.into_iter()
        .map(|p| p.iter().zip(&first).map(|(&a, &b)| a - b).collect())
        .collect()
}

/// Coefficients for one equation over the given points, merging coincident
/// points by summation.
fn equation_over(points: &[Vec<i64>], rng: &mut ChaCha8Rng) -> EquationSpec {
    let mut merged: std::collections::BTreeMap<Vec<i64>, f64> = std::collections::BTreeMap::new();
    for p in points {
        let c: f64 = rng.sample(StandardNormal);
        *merged.entry(p.clone()).or_insert(0.0) += c;
    }
    EquationSpec {
        terms: merged
            .into_iter()
            .map(|(exponent, re)| TermSpec {
                exponent,
                re,
                im: 0.0,
            })
            .collect(),
    }
}

/// Generates a random square system, deterministic in the seed.
pub fn generate(spec: &GeneratorSpec) -> Result<SystemFile, String> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let equations: Vec<EquationSpec> = match spec.mode {
        Mode::Mixed => (0..spec.n)
            .map(|_| {
                let pts = draw_support_points(spec, &mut rng);
                equation_over(&pts, &mut rng)
            })
            .collect(),
        Mode::Unmixed => {
            let pts = draw_support_points(spec, &mut rng);
            (0..spec.n).map(|_| equation_over(&pts, &mut rng)).collect()
        }
    };
    Ok(SystemFile {
        schema_version: SCHEMA_VERSION,
        dimension: spec.n,
        equations,
        options: None,
    })
}
