//! Fock-basis states, sparse complex state vectors and reduced density
//! matrices for a handful of photons in a handful of optical modes.
//!
//! A basis state is an occupation tuple |n_0, n_1, ...⟩; a state vector is a
//! sparse map from basis states to complex amplitudes, kept in lexicographic
//! order of the tuples so that iteration (and therefore any export) is
//! deterministic. All state-producing operations return new values and prune
//! amplitudes whose modulus falls below [`Float::prune_threshold`].

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::float::{lit, Float};

/// Occupation-number basis state: photon count per mode.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockBasisState {
    occupations: Vec<u32>,
}

impl FockBasisState {
    /// Builds a basis state from one occupation number per mode.
    pub fn new(occupations: Vec<u32>) -> Result<Self> {
        if occupations.is_empty() {
            return Err(Error::EmptyModeList);
        }
        Ok(Self { occupations })
    }

    pub fn vacuum(mode_count: usize) -> Result<Self> {
        Self::new(vec![0; mode_count])
    }

    pub(crate) fn from_vec_unchecked(occupations: Vec<u32>) -> Self {
        debug_assert!(!occupations.is_empty());
        Self { occupations }
    }

    pub fn occupations(&self) -> &[u32] {
        &self.occupations
    }

    pub fn mode_count(&self) -> usize {
        self.occupations.len()
    }

    /// Total photon number, the sum of all occupations.
    pub fn photon_count(&self) -> u32 {
        self.occupations.iter().sum()
    }
}

/// All occupation tuples of `mode_count` modes holding exactly `photons`
/// photons, in lexicographic order.
pub fn enumerate_basis(mode_count: usize, photons: u32) -> Vec<FockBasisState> {
    fn rec(prefix: &mut Vec<u32>, modes_left: usize, photons_left: u32, out: &mut Vec<FockBasisState>) {
        if modes_left == 1 {
            prefix.push(photons_left);
            out.push(FockBasisState::from_vec_unchecked(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in 0..=photons_left {
            prefix.push(k);
            rec(prefix, modes_left - 1, photons_left - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if mode_count > 0 {
        rec(&mut Vec::with_capacity(mode_count), mode_count, photons, &mut out);
    }
    out
}

/// √(∏ n_k!) over an occupation tuple; exact for the photon numbers that fit
/// in this crate's few-photon regime.
pub(crate) fn sqrt_occupation_factorial<T: Float>(occupations: &[u32]) -> T {
    let mut product = 1.0f64;
    for &n in occupations {
        for k in 2..=u64::from(n) {
            product *= k as f64;
        }
    }
    lit::<T>(product.sqrt())
}

/// Sparse pure state: complex amplitude per occupation tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Float> {
    mode_count: usize,
    amplitudes: BTreeMap<FockBasisState, Complex<T>>,
}

impl<T: Float> StateVector<T> {
    /// The zero vector over `mode_count` modes (no stored amplitudes).
    pub fn zero(mode_count: usize) -> Result<Self> {
        if mode_count == 0 {
            return Err(Error::EmptyModeList);
        }
        Ok(Self {
            mode_count,
            amplitudes: BTreeMap::new(),
        })
    }

    /// A single basis state with amplitude one.
    pub fn basis(state: FockBasisState) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(state.clone(), Complex::new(T::one(), T::zero()));
        Self {
            mode_count: state.mode_count(),
            amplitudes,
        }
    }

    /// Builds a state from `(occupations, amplitude)` pairs.
    ///
    /// Every occupation list must have exactly `mode_count` entries.
    /// Duplicate tuples accumulate; amplitudes below the pruning threshold
    /// are dropped.
    pub fn from_entries(
        mode_count: usize,
        entries: impl IntoIterator<Item = (Vec<u32>, Complex<T>)>,
    ) -> Result<Self> {
        let mut state = Self::zero(mode_count)?;
        for (occupations, amplitude) in entries {
            if occupations.len() != mode_count {
                return Err(Error::OccupationLength {
                    expected: mode_count,
                    found: occupations.len(),
                });
            }
            state.accumulate(FockBasisState::new(occupations)?, amplitude);
        }
        state.prune();
        Ok(state)
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    /// Number of stored (nonzero) amplitudes.
    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Iterates stored amplitudes in lexicographic occupation order.
    pub fn amplitudes(&self) -> impl Iterator<Item = (&FockBasisState, &Complex<T>)> {
        self.amplitudes.iter()
    }

    /// Amplitude of one basis state, zero if absent.
    pub fn amplitude(&self, basis: &FockBasisState) -> Complex<T> {
        self.amplitudes
            .get(basis)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Squared norm ⟨ψ|ψ⟩.
    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .values()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    /// The set of total photon numbers present in the support.
    pub fn photon_numbers(&self) -> std::collections::BTreeSet<u32> {
        self.amplitudes.keys().map(|b| b.photon_count()).collect()
    }

    /// ⟨self|other⟩, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        if self.mode_count != other.mode_count {
            return Err(Error::ModeCountMismatch {
                expected: self.mode_count,
                found: other.mode_count,
            });
        }
        // Iterate the sparser side and look up in the other.
        let (small, large, conjugate_small) = if self.support_len() <= other.support_len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let mut acc = Complex::new(T::zero(), T::zero());
        for (basis, amp) in small.amplitudes() {
            let partner = large.amplitude(basis);
            acc += if conjugate_small {
                amp.conj() * partner
            } else {
                partner.conj() * *amp
            };
        }
        Ok(acc)
    }

    /// Probability |⟨outcome|ψ⟩|² of detecting the exact occupation pattern.
    pub fn projection_probability(&self, outcome: &FockBasisState) -> Result<T> {
        if outcome.mode_count() != self.mode_count {
            return Err(Error::ModeCountMismatch {
                expected: self.mode_count,
                found: outcome.mode_count(),
            });
        }
        Ok(self.amplitude(outcome).norm_sqr())
    }

    /// This state scaled by a complex factor.
    pub fn scaled(&self, factor: Complex<T>) -> Self {
        let mut out = self.clone();
        for amp in out.amplitudes.values_mut() {
            *amp *= factor;
        }
        out.prune();
        out
    }

    /// Componentwise sum of two states over the same modes.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.mode_count != other.mode_count {
            return Err(Error::ModeCountMismatch {
                expected: self.mode_count,
                found: other.mode_count,
            });
        }
        let mut out = self.clone();
        for (basis, amp) in other.amplitudes() {
            out.accumulate(basis.clone(), *amp);
        }
        out.prune();
        Ok(out)
    }

    /// The same state with vacuum modes appended up to `total_modes`.
    pub fn padded(&self, total_modes: usize) -> Result<Self> {
        if total_modes < self.mode_count {
            return Err(Error::ModeCountMismatch {
                expected: self.mode_count,
                found: total_modes,
            });
        }
        let mut state = Self::zero(total_modes)?;
        for (basis, amp) in self.amplitudes() {
            let mut occ = basis.occupations().to_vec();
            occ.resize(total_modes, 0);
            state.accumulate(FockBasisState::from_vec_unchecked(occ), *amp);
        }
        Ok(state)
    }

    /// Traces out `traced_modes`, returning the reduced density matrix over
    /// the remaining modes. The subset must be proper and nonempty.
    pub fn partial_trace(&self, traced_modes: &[usize]) -> Result<ReducedDensityMatrix<T>> {
        let mut traced = vec![false; self.mode_count];
        for &mode in traced_modes {
            if mode >= self.mode_count {
                return Err(Error::ModeOutOfRange {
                    mode,
                    mode_count: self.mode_count,
                });
            }
            if traced[mode] {
                return Err(Error::DuplicateMode { mode });
            }
            traced[mode] = true;
        }
        if traced_modes.is_empty() || traced_modes.len() == self.mode_count {
            return Err(Error::InvalidTraceSubset);
        }
        let kept_modes: Vec<usize> = (0..self.mode_count).filter(|&m| !traced[m]).collect();

        let split = |basis: &FockBasisState| {
            let occ = basis.occupations();
            let kept: Vec<u32> = kept_modes.iter().map(|&m| occ[m]).collect();
            let gone: Vec<u32> = traced_modes.iter().map(|&m| occ[m]).collect();
            (kept, gone)
        };

        // Lexicographically ordered basis over the kept modes.
        let mut kept_basis: Vec<Vec<u32>> = self.amplitudes.keys().map(|b| split(b).0).collect();
        kept_basis.sort();
        kept_basis.dedup();
        let index_of = |occ: &Vec<u32>| kept_basis.binary_search(occ).expect("kept tuple present");

        // Group amplitudes by the traced-out part; each group contributes an
        // outer product to the reduced matrix.
        let mut groups: BTreeMap<Vec<u32>, Vec<(usize, Complex<T>)>> = BTreeMap::new();
        for (basis, amp) in self.amplitudes() {
            let (kept, gone) = split(basis);
            groups.entry(gone).or_default().push((index_of(&kept), *amp));
        }

        let dim = kept_basis.len();
        let mut matrix = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for members in groups.values() {
            for &(i, a) in members {
                for &(j, b) in members {
                    matrix[i * dim + j] += a * b.conj();
                }
            }
        }

        Ok(ReducedDensityMatrix {
            kept_modes,
            basis: kept_basis
                .into_iter()
                .map(FockBasisState::from_vec_unchecked)
                .collect(),
            matrix,
        })
    }

    pub(crate) fn accumulate(&mut self, basis: FockBasisState, amplitude: Complex<T>) {
        debug_assert_eq!(basis.mode_count(), self.mode_count);
        let entry = self
            .amplitudes
            .entry(basis)
            .or_insert_with(|| Complex::new(T::zero(), T::zero()));
        *entry += amplitude;
    }

    pub(crate) fn prune(&mut self) {
        let threshold = T::prune_threshold() * T::prune_threshold();
        self.amplitudes.retain(|_, amp| amp.norm_sqr() >= threshold);
    }
}

/// Reduced density matrix over a kept subset of modes, stored dense and
/// row-major over a lexicographically ordered occupation basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensityMatrix<T: Float> {
    kept_modes: Vec<usize>,
    basis: Vec<FockBasisState>,
    matrix: Vec<Complex<T>>,
}

impl<T: Float> ReducedDensityMatrix<T> {
    /// Original mode indices this matrix still describes, ascending.
    pub fn kept_modes(&self) -> &[usize] {
        &self.kept_modes
    }

    /// Occupation basis over the kept modes, lexicographic.
    pub fn basis(&self) -> &[FockBasisState] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.matrix[row * self.dim() + col]
    }

    /// Tr ρ, real up to rounding.
    pub fn trace(&self) -> T {
        (0..self.dim()).fold(T::zero(), |acc, i| acc + self.entry(i, i).re)
    }

    /// Tr ρ², equals 1 exactly for pure states.
    pub fn purity(&self) -> T {
        // Hermitian, so Tr ρ² is the squared Frobenius norm.
        self.matrix
            .iter()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    /// Largest modulus of ρ − ρ†, zero for exact Hermiticity.
    pub fn hermiticity_deviation(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                let dev = (self.entry(i, j) - self.entry(j, i).conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Expected photon number Tr{n̂ ρ} at one of the kept modes (original
    /// index, as before the trace).
    pub fn number_expectation(&self, mode: usize) -> Result<T> {
        let position = self
            .kept_modes
            .iter()
            .position(|&m| m == mode)
            .ok_or(Error::UnknownKeptMode { mode })?;
        let mut acc = T::zero();
        for (i, basis) in self.basis.iter().enumerate() {
            let n = basis.occupations()[position];
            acc += self.entry(i, i).re * T::from_u32(n).expect("small photon count");
        }
        Ok(acc)
    }

    /// Smallest eigenvalue; a tiny negative value (rounding dust) is the most
    /// a physical reduced state may show.
    pub fn min_eigenvalue(&self) -> T {
        let n = self.dim();
        if n == 0 {
            return T::zero();
        }
        // Embed the Hermitian matrix H = A + iB into the real symmetric
        // [[A, -B], [B, A]]; its spectrum is that of H, doubled.
        let m = 2 * n;
        let mut real = vec![T::zero(); m * m];
        for i in 0..n {
            for j in 0..n {
                let c = self.entry(i, j);
                real[i * m + j] = c.re;
                real[i * m + (n + j)] = -c.im;
                real[(n + i) * m + j] = c.im;
                real[(n + i) * m + (n + j)] = c.re;
            }
        }
        symmetric_eigenvalues(real, m)
            .into_iter()
            .fold(T::infinity(), T::min)
    }
}

/// Eigenvalues of a dense real symmetric matrix via cyclic Jacobi rotations.
/// Plenty for the small matrices this crate produces.
fn symmetric_eigenvalues<T: Float>(mut a: Vec<T>, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![a[0]];
    }
    let scale = (0..n * n).fold(T::zero(), |acc, k| acc + a[k] * a[k]).sqrt();
    let stop = T::epsilon() * (T::one() + scale);
    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (lit::<T>(2.0) * apq);
                let t = {
                    let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis(occ: &[u32]) -> FockBasisState {
        FockBasisState::new(occ.to_vec()).unwrap()
    }

    #[test]
    fn basis_state_accessors() {
        let b = basis(&[1, 0, 2, 0]);
        assert_eq!(b.mode_count(), 4);
        assert_eq!(b.photon_count(), 3);
        assert!(FockBasisState::new(vec![]).is_err());
    }

    #[test]
    fn single_term_state() {
        let s = StateVector::from_entries(2, vec![(vec![1, 0], c(1.0, 0.0))]).unwrap();
        assert_eq!(s.support_len(), 1);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_term_normalized_state() {
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::from_entries(2, vec![(vec![1, 0], c(x, 0.0)), (vec![0, 1], c(0.0, x))])
            .unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_amplitudes_are_dropped() {
        // Cross-sector amplitudes of the recombined leak at full transmission
        // and zero delay: two of the four coincidence channels close exactly.
        let s = StateVector::from_entries(
            4,
            vec![
                (vec![1, 0, 1, 0], c(0.0, 0.0)),
                (vec![1, 0, 0, 1], c(0.0, -0.5)),
                (vec![0, 1, 1, 0], c(0.0, -0.5)),
                (vec![0, 1, 0, 1], c(0.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(s.support_len(), 2);
        assert!((s.norm_sqr() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mismatched_occupation_length_rejected() {
        let err = StateVector::from_entries(3, vec![(vec![1, 0], c(1.0, 0.0))]).unwrap_err();
        assert_eq!(
            err,
            crate::error::Error::OccupationLength {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn duplicate_entries_accumulate() {
        let s = StateVector::from_entries(
            1,
            vec![(vec![1], c(0.25, 0.0)), (vec![1], c(0.25, 0.0))],
        )
        .unwrap();
        assert_eq!(s.amplitude(&basis(&[1])), c(0.5, 0.0));
    }

    #[test]
    fn inner_product_orthonormal_pair() {
        let a = StateVector::basis(basis(&[1, 0]));
        let b = StateVector::basis(basis(&[0, 1]));
        assert_eq!(a.inner_product(&a).unwrap(), c(1.0, 0.0));
        assert_eq!(a.inner_product(&b).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_conjugate_symmetry() {
        let a = StateVector::from_entries(2, vec![(vec![1, 0], c(0.6, 0.2)), (vec![0, 1], c(-0.3, 0.5))])
            .unwrap();
        let b = StateVector::from_entries(2, vec![(vec![1, 0], c(0.1, -0.7)), (vec![2, 0], c(0.4, 0.0))])
            .unwrap();
        let ab = a.inner_product(&b).unwrap();
        let ba = b.inner_product(&a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let a = StateVector::<f64>::basis(basis(&[1, 0]));
        let b = StateVector::basis(basis(&[1, 0, 0]));
        assert!(a.inner_product(&b).is_err());
    }

    #[test]
    fn projection_of_definite_state_is_one() {
        // Balanced interferometer at zero delay routes the photon to one port.
        let s = StateVector::<f64>::basis(basis(&[1, 0]));
        assert_eq!(s.projection_probability(&basis(&[1, 0])).unwrap(), 1.0);
        assert_eq!(s.projection_probability(&basis(&[0, 1])).unwrap(), 0.0);
    }

    #[test]
    fn partial_trace_of_product_state_is_pure() {
        let s = StateVector::<f64>::basis(basis(&[1, 0]));
        let rho = s.partial_trace(&[1]).unwrap();
        assert_eq!(rho.kept_modes(), &[0]);
        assert_eq!(rho.dim(), 1);
        assert!((rho.trace() - 1.0).abs() < 1e-15);
        assert!((rho.purity() - 1.0).abs() < 1e-15);
        assert!((rho.entry(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_validates_subset() {
        let s = StateVector::<f64>::basis(basis(&[1, 0]));
        assert!(s.partial_trace(&[]).is_err());
        assert!(s.partial_trace(&[0, 1]).is_err());
        assert!(s.partial_trace(&[7]).is_err());
        assert!(s.partial_trace(&[0, 0]).is_err());
    }

    #[test]
    fn partial_trace_preserves_trace_for_entangled_state() {
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::from_entries(
            2,
            vec![(vec![2, 0], c(x, 0.0)), (vec![0, 2], c(0.0, x))],
        )
        .unwrap();
        let rho = s.partial_trace(&[1]).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-14);
        // Equal mixture of |0⟩ and |2⟩ on the kept mode.
        assert!((rho.purity() - 0.5).abs() < 1e-14);
        assert!(rho.hermiticity_deviation() < 1e-15);
        assert!(rho.min_eigenvalue() > -1e-12);
    }

    #[test]
    fn number_expectation_of_pure_single_photon() {
        let s = StateVector::<f64>::basis(basis(&[1, 0]));
        let rho = s.partial_trace(&[1]).unwrap();
        assert!((rho.number_expectation(0).unwrap() - 1.0).abs() < 1e-15);
        assert!(rho.number_expectation(1).is_err());
    }

    #[test]
    fn enumerate_basis_counts_and_order() {
        let all = enumerate_basis(4, 2);
        assert_eq!(all.len(), 10);
        assert_eq!(all.first().unwrap().occupations(), &[0, 0, 0, 2]);
        assert_eq!(all.last().unwrap().occupations(), &[2, 0, 0, 0]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn padded_state_keeps_amplitudes() {
        let s = StateVector::from_entries(2, vec![(vec![1, 1], c(0.0, 1.0))]).unwrap();
        let p = s.padded(4).unwrap();
        assert_eq!(p.mode_count(), 4);
        assert_eq!(p.amplitude(&basis(&[1, 1, 0, 0])), c(0.0, 1.0));
    }

    #[test]
    fn sqrt_factorial_small_values() {
        assert_eq!(sqrt_occupation_factorial::<f64>(&[0, 1]), 1.0);
        assert_eq!(sqrt_occupation_factorial::<f64>(&[2, 0]), 2.0f64.sqrt());
        assert_eq!(sqrt_occupation_factorial::<f64>(&[2, 2]), 2.0);
        assert_eq!(sqrt_occupation_factorial::<f64>(&[3, 0]), 6.0f64.sqrt());
    }

    #[test]
    fn works_at_single_precision() {
        let x = std::f32::consts::FRAC_1_SQRT_2;
        let s = StateVector::<f32>::from_entries(
            2,
            vec![
                (vec![1, 0], Complex::new(x, 0.0)),
                (vec![0, 1], Complex::new(0.0, x)),
            ],
        )
        .unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-6);
    }
}
