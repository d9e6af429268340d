//! Linear mode networks: beam splitters, phase shifters, their embeddings
//! into larger mode sets, and the induced action on Fock states.
//!
//! A network element is a unitary over the mode creation operators; input
//! mode k maps to Σ_j U[j][k] â_j†, i.e. column k of the matrix lists the
//! output amplitudes fed by input k. Multi-photon propagation expands the
//! product of transformed creation operators and recollects occupation
//! monomials, which is exact for the few-photon states this crate targets.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::float::Float;
use crate::fock::{sqrt_occupation_factorial, FockBasisState, StateVector};

/// Transmission/reflection coefficient pair of a lossless beam splitter.
///
/// Valid pairs satisfy |T|² + |R|² = 1 (energy) and R·T* + T·R* = 0 (the
/// relative phase a lossless splitter must impose between its outputs).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSplitterSpec<T: Float> {
    transmission: Complex<T>,
    reflection: Complex<T>,
}

impl<T: Float> BeamSplitterSpec<T> {
    pub fn new(transmission: Complex<T>, reflection: Complex<T>) -> Result<Self> {
        let tol = T::construction_tolerance();
        let energy = (transmission.norm_sqr() + reflection.norm_sqr() - T::one()).abs();
        if energy > tol {
            return Err(Error::InvalidBeamSplitter {
                constraint: "|T|^2 + |R|^2 = 1",
                deviation: energy.to_f64().unwrap_or(f64::NAN),
            });
        }
        let phase = (reflection * transmission.conj() + transmission * reflection.conj()).norm();
        if phase > tol {
            return Err(Error::InvalidBeamSplitter {
                constraint: "R T* + T R* = 0",
                deviation: phase.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            transmission,
            reflection,
        })
    }

    /// The 50:50 splitter, T = 1/√2 and R = i/√2.
    pub fn balanced() -> Self {
        let x = T::FRAC_1_SQRT_2();
        Self {
            transmission: Complex::new(x, T::zero()),
            reflection: Complex::new(T::zero(), x),
        }
    }

    pub fn transmission(&self) -> Complex<T> {
        self.transmission
    }

    pub fn reflection(&self) -> Complex<T> {
        self.reflection
    }
}

/// Dense unitary over a fixed number of modes, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeUnitary<T: Float> {
    mode_count: usize,
    matrix: Vec<Complex<T>>,
}

impl<T: Float> ModeUnitary<T> {
    pub fn identity(mode_count: usize) -> Result<Self> {
        if mode_count == 0 {
            return Err(Error::EmptyModeList);
        }
        let mut matrix = vec![Complex::new(T::zero(), T::zero()); mode_count * mode_count];
        for k in 0..mode_count {
            matrix[k * mode_count + k] = Complex::new(T::one(), T::zero());
        }
        Ok(Self { mode_count, matrix })
    }

    /// Builds a unitary from explicit rows, rejecting non-square or
    /// non-unitary input.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyModeList);
        }
        for (index, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    index,
                    cols: row.len(),
                });
            }
        }
        let unitary = Self {
            mode_count: n,
            matrix: rows.into_iter().flatten().collect(),
        };
        let deviation = unitary.unitarity_deviation();
        if deviation > T::construction_tolerance() {
            return Err(Error::NotUnitary {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(unitary)
    }

    /// Two-mode splitter in which transmission keeps each tuple position:
    /// [[T, R], [R, T]].
    pub fn beam_splitter(spec: &BeamSplitterSpec<T>) -> Self {
        let (t, r) = (spec.transmission(), spec.reflection());
        Self {
            mode_count: 2,
            matrix: vec![t, r, r, t],
        }
    }

    /// Two-mode splitter drawn across the paths, so transmission exchanges
    /// the tuple positions and reflection keeps them: [[R, T], [T, R]].
    ///
    /// This is the element seen by a mode that enters on the crossing line,
    /// e.g. a leaking mirror whose reflected beam stays inside an
    /// interferometer while the transmitted beam exits through the back.
    pub fn beam_splitter_crossed(spec: &BeamSplitterSpec<T>) -> Self {
        let (t, r) = (spec.transmission(), spec.reflection());
        Self {
            mode_count: 2,
            matrix: vec![r, t, t, r],
        }
    }

    /// Phase shifter e^{iφ} on a single mode.
    pub fn phase_shift(phi: T, mode: usize, mode_count: usize) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFinitePhase {
                value: phi.to_f64().unwrap_or(f64::NAN),
            });
        }
        if mode >= mode_count {
            return Err(Error::ModeOutOfRange { mode, mode_count });
        }
        let mut unitary = Self::identity(mode_count)?;
        unitary.matrix[mode * mode_count + mode] = Complex::from_polar(T::one(), phi);
        Ok(unitary)
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.matrix[row * self.mode_count + col]
    }

    /// Output amplitudes fed by one input mode.
    pub fn column(&self, col: usize) -> Vec<Complex<T>> {
        (0..self.mode_count).map(|row| self.entry(row, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.mode_count;
        let mut matrix = vec![Complex::new(T::zero(), T::zero()); n * n];
        for r in 0..n {
            for c in 0..n {
                matrix[c * n + r] = self.entry(r, c).conj();
            }
        }
        Self {
            mode_count: n,
            matrix,
        }
    }

    /// Largest entry modulus of U·U† − 1.
    pub fn unitarity_deviation(&self) -> T {
        let n = self.mode_count;
        let mut worst = T::zero();
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    acc += self.entry(r, k) * self.entry(c, k).conj();
                }
                if r == c {
                    acc -= Complex::new(T::one(), T::zero());
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Places this unitary on `target_modes` of a larger identity network.
    /// Targets must be distinct, in range, and as many as this unitary has
    /// modes.
    pub fn embed(&self, target_modes: &[usize], total_mode_count: usize) -> Result<Self> {
        if target_modes.len() != self.mode_count {
            return Err(Error::ModeCountMismatch {
                expected: self.mode_count,
                found: target_modes.len(),
            });
        }
        let mut seen = vec![false; total_mode_count];
        for &mode in target_modes {
            if mode >= total_mode_count {
                return Err(Error::ModeOutOfRange {
                    mode,
                    mode_count: total_mode_count,
                });
            }
            if seen[mode] {
                return Err(Error::DuplicateMode { mode });
            }
            seen[mode] = true;
        }
        let mut out = Self::identity(total_mode_count)?;
        for (j, &row) in target_modes.iter().enumerate() {
            out.matrix[row * total_mode_count + row] = Complex::new(T::zero(), T::zero());
            for (k, &col) in target_modes.iter().enumerate() {
                out.matrix[row * total_mode_count + col] = self.entry(j, k);
            }
        }
        Ok(out)
    }

    /// Sequential composition in circuit order: `self` acts first, then
    /// `next`; the matrix is next · self.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.mode_count != next.mode_count {
            return Err(Error::ModeCountMismatch {
                expected: self.mode_count,
                found: next.mode_count,
            });
        }
        let n = self.mode_count;
        let mut matrix = vec![Complex::new(T::zero(), T::zero()); n * n];
        for r in 0..n {
            for k in 0..n {
                let left = next.entry(r, k);
                if left.norm_sqr() == T::zero() {
                    continue;
                }
                for c in 0..n {
                    matrix[r * n + c] += left * self.entry(k, c);
                }
            }
        }
        Ok(Self {
            mode_count: n,
            matrix,
        })
    }

    /// Propagates a Fock state through the network.
    ///
    /// Each basis term ∏(â_k†)^{n_k}/√(n_k!)|0⟩ is expanded by substituting
    /// â_k† → Σ_j U[j][k] â_j†, multiplying out the resulting polynomial in
    /// the output creation operators, and recollecting occupation monomials.
    pub fn apply(&self, state: &StateVector<T>) -> Result<StateVector<T>> {
        if self.mode_count != state.mode_count() {
            return Err(Error::ModeCountMismatch {
                expected: self.mode_count,
                found: state.mode_count(),
            });
        }
        let n = self.mode_count;
        let mut out = StateVector::zero(n)?;
        for (basis, amplitude) in state.amplitudes() {
            let prefactor = *amplitude / sqrt_occupation_factorial::<T>(basis.occupations());
            let mut terms: Vec<(Vec<u32>, Complex<T>)> = vec![(vec![0; n], prefactor)];
            for (k, &photons) in basis.occupations().iter().enumerate() {
                if photons == 0 {
                    continue;
                }
                let column = self.column(k);
                for _ in 0..photons {
                    terms = multiply_by_column(&terms, &column);
                }
            }
            for (monomial, coefficient) in terms {
                let value = coefficient * sqrt_occupation_factorial::<T>(&monomial);
                out.accumulate(FockBasisState::from_vec_unchecked(monomial), value);
            }
        }
        out.prune();
        Ok(out)
    }
}

/// One creation-operator factor: multiplies every accumulated monomial by
/// Σ_j column[j]·â_j† and merges duplicates.
fn multiply_by_column<T: Float>(
    terms: &[(Vec<u32>, Complex<T>)],
    column: &[Complex<T>],
) -> Vec<(Vec<u32>, Complex<T>)> {
    let mut out: Vec<(Vec<u32>, Complex<T>)> = Vec::with_capacity(terms.len() * 2);
    for (monomial, coefficient) in terms {
        for (j, u) in column.iter().enumerate() {
            if u.norm_sqr() == T::zero() {
                continue;
            }
            let mut raised = monomial.clone();
            raised[j] += 1;
            let value = *coefficient * *u;
            match out.iter_mut().find(|(m, _)| *m == raised) {
                Some((_, existing)) => *existing += value,
                None => out.push((raised, value)),
            }
        }
    }
    out
}

/// Parameter set of the braced interferometer family: internal delay φ,
/// leak-recombiner transmission ε (T_w = ε, R_w = i√(1−ε²)), and the
/// pair/antibunched mixing weight α of the prepared input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentParams<T: Float> {
    phi: T,
    epsilon: T,
    alpha: T,
}

impl<T: Float> ExperimentParams<T> {
    pub fn new(phi: T, epsilon: T, alpha: T) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFinitePhase {
                value: phi.to_f64().unwrap_or(f64::NAN),
            });
        }
        for (name, value) in [("epsilon", epsilon), ("alpha", alpha)] {
            if !(value >= T::zero() && value <= T::one()) {
                return Err(Error::ParameterOutOfRange {
                    name,
                    value: value.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self {
            phi,
            epsilon,
            alpha,
        })
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// The splitter recombining the two leaked beams: T_w = ε real,
    /// R_w = i√(1−ε²).
    pub fn outer_splitter(&self) -> BeamSplitterSpec<T> {
        let s = (T::one() - self.epsilon * self.epsilon).max(T::zero()).sqrt();
        BeamSplitterSpec {
            transmission: Complex::new(self.epsilon, T::zero()),
            reflection: Complex::new(T::zero(), s),
        }
    }
}
