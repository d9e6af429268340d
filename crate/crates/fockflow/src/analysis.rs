//! Fringe statistics for the braced network: the which-path/visibility
//! trade-off in closed form, coincidence sweeps over parameter grids, and a
//! sampling audit that ties measured visibilities back to the closed form.

use crate::error::{Error, Result};
use crate::experiments::{input_state, BracedMzi, InputKind};
use crate::float::{lit, Float};
use crate::fock::FockBasisState;
use crate::network::{ExperimentParams, ModeUnitary};

/// Which-path knowledge K and fringe visibility V of a coincidence fringe;
/// they always satisfy K² + V² = 1 for the pure states simulated here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualityMetrics<T> {
    pub which_path: T,
    pub visibility: T,
}

/// Closed-form duality metrics of the D4-D6 coincidence fringe when the
/// input is α·|1,1⟩ + √(1−α²)·(|2,0⟩+|0,2⟩)/√2 and the outer recombiner
/// transmits ε:
///
/// K = |2α² − 1| · |2ε² − 1|,
/// V = 2·√(α²(1−α²) + (2α² − 1)²·ε²(1−ε²)).
pub fn duality<T: Float>(epsilon: T, alpha: T) -> Result<DualityMetrics<T>> {
    for (name, value) in [("epsilon", epsilon), ("alpha", alpha)] {
        if !(value >= T::zero() && value <= T::one()) {
            return Err(Error::ParameterOutOfRange {
                name,
                value: value.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let two = lit::<T>(2.0);
    let pair_imbalance = two * alpha * alpha - T::one();
    let leak_imbalance = two * epsilon * epsilon - T::one();
    let visibility_sq = alpha * alpha * (T::one() - alpha * alpha)
        + pair_imbalance * pair_imbalance * epsilon * epsilon * (T::one() - epsilon * epsilon);
    Ok(DualityMetrics {
        which_path: (pair_imbalance * leak_imbalance).abs(),
        visibility: two * visibility_sq.max(T::zero()).sqrt(),
    })
}

/// Visibility (max − min)/(max + min) of a sampled fringe. The samples are
/// (φ, probability) pairs; at least eight are required for the extrema to
/// mean anything.
pub fn measured_visibility<T: Float>(samples: &[(T, T)]) -> Result<T> {
    if samples.len() < 8 {
        return Err(Error::InsufficientSamples {
            required: 8,
            found: samples.len(),
        });
    }
    let mut hi = T::neg_infinity();
    let mut lo = T::infinity();
    for &(phi, value) in samples {
        if !phi.is_finite() || !value.is_finite() {
            return Err(Error::NonFiniteSample);
        }
        hi = hi.max(value);
        lo = lo.min(value);
    }
    if hi + lo <= T::zero() {
        return Err(Error::UndefinedContrast);
    }
    Ok((hi - lo) / (hi + lo))
}

/// D4-D6 coincidence probabilities over a (φ, ε) grid at fixed input.
#[derive(Clone, Debug)]
pub struct SweepGrid<T> {
    phi_values: Vec<T>,
    epsilon_values: Vec<T>,
    alpha: T,
    kind: InputKind,
    /// Row i holds the probabilities at phi_values[i] across epsilon_values.
    probabilities: Vec<Vec<T>>,
}

impl<T: Float> SweepGrid<T> {
    pub fn phi_values(&self) -> &[T] {
        &self.phi_values
    }

    pub fn epsilon_values(&self) -> &[T] {
        &self.epsilon_values
    }

    /// The effective pair weight: 1 for `Pair` and 0 for `Antibunched`
    /// sweeps regardless of what the caller passed.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn kind(&self) -> InputKind {
        self.kind
    }

    pub fn probability(&self, phi_index: usize, epsilon_index: usize) -> T {
        self.probabilities[phi_index][epsilon_index]
    }

    /// The fringe at fixed ε as (φ, probability) samples, ready for
    /// [`measured_visibility`].
    pub fn fringe(&self, epsilon_index: usize) -> Vec<(T, T)> {
        self.phi_values
            .iter()
            .zip(self.probabilities.iter())
            .map(|(&phi, row)| (phi, row[epsilon_index]))
            .collect()
    }
}

/// Sweeps the D4-D6 coincidence probability over the given φ and ε grids.
pub fn sweep_p46<T: Float>(
    phi_values: &[T],
    epsilon_values: &[T],
    alpha: T,
    kind: InputKind,
) -> Result<SweepGrid<T>> {
    if phi_values.is_empty() || epsilon_values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let alpha = kind.effective_alpha(alpha);
    let target = FockBasisState::new(vec![1, 0, 1, 0])?;
    let input = input_state(kind, alpha)?.padded(4)?;
    let seeded = BracedMzi::<T>::stages_before_delay()?.apply(&input)?;
    let posts = epsilon_values
        .iter()
        .map(|&eps| {
            let params = ExperimentParams::new(T::zero(), eps, alpha)?;
            BracedMzi::stages_after_delay(&params.outer_splitter())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut probabilities = Vec::with_capacity(phi_values.len());
    for &phi in phi_values {
        let shifted = ModeUnitary::phase_shift(phi, 1, 4)?.apply(&seeded)?;
        let row = posts
            .iter()
            .map(|post| post.apply(&shifted)?.projection_probability(&target))
            .collect::<Result<Vec<_>>>()?;
        probabilities.push(row);
    }
    Ok(SweepGrid {
        phi_values: phi_values.to_vec(),
        epsilon_values: epsilon_values.to_vec(),
        alpha,
        kind,
        probabilities,
    })
}

/// Result of [`duality_audit`]: how far the sampled fringes stray from the
/// closed-form duality relation.
#[derive(Clone, Copy, Debug)]
pub struct DualityAudit<T> {
    /// Largest |K² + V² − 1| over the grid, using closed-form K and V.
    pub max_identity_deviation: T,
    /// Largest |measured − closed-form| visibility over the grid.
    pub max_visibility_deviation: T,
    /// Grid point (ε, α) where the visibility deviation peaked.
    pub worst_point: (T, T),
    pub scan_points: usize,
    pub curve_count: usize,
}

/// Samples the D4-D6 fringe of the superposed input over an (ε, α) grid and
/// compares each curve's measured visibility against [`duality`], along with
/// the K² + V² = 1 identity. `scan_points` is the number of φ samples per
/// curve; the extrema search needs a dense grid, so fewer than 256 points
/// per period are rejected.
pub fn duality_audit<T: Float>(
    epsilon_values: &[T],
    alpha_values: &[T],
    scan_points: usize,
) -> Result<DualityAudit<T>> {
    if epsilon_values.is_empty() || alpha_values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if scan_points < 256 {
        return Err(Error::InsufficientSamples {
            required: 256,
            found: scan_points,
        });
    }
    let phi_values = uniform_phase_grid(scan_points);
    let mut audit = DualityAudit {
        max_identity_deviation: T::zero(),
        max_visibility_deviation: T::zero(),
        worst_point: (epsilon_values[0], alpha_values[0]),
        scan_points,
        curve_count: epsilon_values.len() * alpha_values.len(),
    };
    for &alpha in alpha_values {
        let grid = sweep_p46(&phi_values, epsilon_values, alpha, InputKind::Superposed)?;
        for (eps_index, &epsilon) in epsilon_values.iter().enumerate() {
            let closed = duality(epsilon, alpha)?;
            let identity = (closed.which_path * closed.which_path
                + closed.visibility * closed.visibility
                - T::one())
            .abs();
            audit.max_identity_deviation = audit.max_identity_deviation.max(identity);

            let measured = measured_visibility(&grid.fringe(eps_index))?;
            let deviation = (measured - closed.visibility).abs();
            if deviation > audit.max_visibility_deviation {
                audit.max_visibility_deviation = deviation;
                audit.worst_point = (epsilon, alpha);
            }
        }
    }
    Ok(audit)
}

/// n phases uniformly covering [0, 2π), so that periodic curves are sampled
/// without double-counting the endpoint.
pub fn uniform_phase_grid<T: Float>(n: usize) -> Vec<T> {
    let step = T::TAU() / lit::<T>(n as f64);
    (0..n).map(|k| step * lit::<T>(k as f64)).collect()
}

/// n points uniformly covering [0, 1] inclusive; a single point sits at 0.
pub fn unit_interval_grid<T: Float>(n: usize) -> Vec<T> {
    if n == 1 {
        return vec![T::zero()];
    }
    let denom = lit::<T>((n - 1) as f64);
    (0..n).map(|j| lit::<T>(j as f64) / denom).collect()
}
