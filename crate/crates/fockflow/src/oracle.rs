//! Independent cross-checks for the propagation code: transition amplitudes
//! computed from matrix permanents instead of operator expansion, and seeded
//! random unitaries to exercise both paths on arbitrary networks.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::float::{lit, Float};
use crate::fock::{sqrt_occupation_factorial, FockBasisState};
use crate::network::ModeUnitary;

/// Permanent of a square matrix by expansion along the first row. The cost
/// grows factorially with the dimension, which is fine for the few-photon
/// matrices built here (dimension = photon count).
pub fn permanent<T: Float>(matrix: &[Vec<Complex<T>>]) -> Complex<T> {
    let n = matrix.len();
    if n == 0 {
        return Complex::new(T::one(), T::zero());
    }
    if n == 1 {
        return matrix[0][0];
    }
    let mut total = Complex::new(T::zero(), T::zero());
    for skip in 0..n {
        let head = matrix[0][skip];
        if head.norm_sqr() == T::zero() {
            continue;
        }
        let minor: Vec<Vec<Complex<T>>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(col, _)| *col != skip)
                    .map(|(_, value)| *value)
                    .collect()
            })
            .collect();
        total += head * permanent(&minor);
    }
    total
}

/// Amplitude ⟨output|Û|input⟩ from the permanent of the matrix built by
/// repeating the unitary's columns per input photon and rows per output
/// photon. Entirely independent of [`ModeUnitary::apply`], which makes it a
/// useful oracle for testing that code path.
pub fn transition_amplitude<T: Float>(
    unitary: &ModeUnitary<T>,
    input: &FockBasisState,
    output: &FockBasisState,
) -> Result<Complex<T>> {
    let modes = unitary.mode_count();
    for state in [input, output] {
        if state.mode_count() != modes {
            return Err(Error::ModeCountMismatch {
                expected: modes,
                found: state.mode_count(),
            });
        }
    }
    if input.photon_count() != output.photon_count() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }

    let mut row_modes = Vec::new();
    for (mode, &occ) in output.occupations().iter().enumerate() {
        row_modes.extend(std::iter::repeat_n(mode, occ as usize));
    }
    let mut col_modes = Vec::new();
    for (mode, &occ) in input.occupations().iter().enumerate() {
        col_modes.extend(std::iter::repeat_n(mode, occ as usize));
    }

    let matrix: Vec<Vec<Complex<T>>> = row_modes
        .iter()
        .map(|&r| col_modes.iter().map(|&c| unitary.entry(r, c)).collect())
        .collect();
    let norm = sqrt_occupation_factorial::<T>(output.occupations())
        * sqrt_occupation_factorial::<T>(input.occupations());
    Ok(permanent(&matrix) / norm)
}

/// A random mode unitary: complex Gaussian entries orthonormalized column
/// by column. Deterministic for a seeded generator.
pub fn random_unitary<T: Float, R: Rng>(mode_count: usize, rng: &mut R) -> Result<ModeUnitary<T>> {
    if mode_count == 0 {
        return Err(Error::EmptyModeList);
    }
    let mut columns: Vec<Vec<Complex<T>>> = (0..mode_count)
        .map(|_| (0..mode_count).map(|_| gaussian(rng)).collect())
        .collect();
    for k in 0..mode_count {
        // Two orthogonalization passes keep the result unitary to close to
        // machine precision even for unlucky draws.
        for _ in 0..2 {
            for j in 0..k {
                let (settled, rest) = columns.split_at_mut(k);
                let reference = &settled[j];
                let column = &mut rest[0];
                let overlap: Complex<T> = reference
                    .iter()
                    .zip(column.iter())
                    .map(|(a, b)| a.conj() * b)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, x| acc + x);
                for (value, &base) in column.iter_mut().zip(reference) {
                    *value -= overlap * base;
                }
            }
        }
        let norm = columns[k]
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt();
        for value in &mut columns[k] {
            *value /= norm;
        }
    }
    let rows: Vec<Vec<Complex<T>>> = (0..mode_count)
        .map(|r| (0..mode_count).map(|c| columns[c][r]).collect())
        .collect();
    ModeUnitary::from_rows(rows)
}

/// Standard complex Gaussian via the Box-Muller transform.
fn gaussian<T: Float, R: Rng>(rng: &mut R) -> Complex<T> {
    let u: f64 = 1.0 - rng.gen::<f64>();
    let v: f64 = rng.gen();
    let radius = (-2.0 * u.ln()).sqrt();
    let angle = 2.0 * std::f64::consts::PI * v;
    Complex::new(
        lit::<T>(radius * angle.cos()),
        lit::<T>(radius * angle.sin()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_basis;
    use crate::network::BeamSplitterSpec;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn permanent_small_cases() {
        assert_eq!(permanent::<f64>(&[]), c(1.0, 0.0));
        assert_eq!(permanent(&[vec![c(3.0, 1.0)]]), c(3.0, 1.0));

        let two = vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0), c(4.0, 0.0)]];
        assert_eq!(permanent(&two), c(10.0, 0.0));

        let ones = vec![vec![c(1.0, 0.0); 3]; 3];
        assert_eq!(permanent(&ones), c(6.0, 0.0));

        let eye = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        assert_eq!(permanent(&eye), c(1.0, 0.0));
    }

    #[test]
    fn bunching_amplitudes_from_permanents() {
        let bs = ModeUnitary::beam_splitter(&BeamSplitterSpec::<f64>::balanced());
        let pair = FockBasisState::new(vec![1, 1]).unwrap();
        let both_up = FockBasisState::new(vec![2, 0]).unwrap();

        let stay = transition_amplitude(&bs, &pair, &pair).unwrap();
        assert!(stay.norm() < 1e-15);

        let bunch = transition_amplitude(&bs, &pair, &both_up).unwrap();
        assert!((bunch - c(0.0, std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn photon_count_mismatch_gives_zero() {
        let bs = ModeUnitary::beam_splitter(&BeamSplitterSpec::<f64>::balanced());
        let one = FockBasisState::new(vec![1, 0]).unwrap();
        let two = FockBasisState::new(vec![1, 1]).unwrap();
        assert_eq!(transition_amplitude(&bs, &one, &two).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn mode_count_mismatch_is_rejected() {
        let bs = ModeUnitary::beam_splitter(&BeamSplitterSpec::<f64>::balanced());
        let three = FockBasisState::new(vec![1, 0, 0]).unwrap();
        let two = FockBasisState::new(vec![1, 0]).unwrap();
        assert!(transition_amplitude(&bs, &three, &two).is_err());
    }

    #[test]
    fn random_unitaries_are_unitary_and_reproducible() {
        for modes in 1..=4 {
            let mut rng = ChaCha8Rng::seed_from_u64(7 + modes as u64);
            let u = random_unitary::<f64, _>(modes, &mut rng).unwrap();
            assert!(u.unitarity_deviation() < 1e-13);

            let mut rng_again = ChaCha8Rng::seed_from_u64(7 + modes as u64);
            let v = random_unitary::<f64, _>(modes, &mut rng_again).unwrap();
            for r in 0..modes {
                for c in 0..modes {
                    assert_eq!(u.entry(r, c), v.entry(r, c));
                }
            }
        }
        assert!(random_unitary::<f64, _>(0, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn propagation_agrees_with_permanent_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let u = random_unitary::<f64, _>(3, &mut rng).unwrap();
        for photons in 1..=2u32 {
            for input in enumerate_basis(3, photons) {
                let state = crate::fock::StateVector::basis(input.clone());
                let propagated = u.apply(&state).unwrap();
                for output in enumerate_basis(3, photons) {
                    let direct = propagated.amplitude(&output);
                    let oracle = transition_amplitude(&u, &input, &output).unwrap();
                    assert!(
                        (direct - oracle).norm() < 1e-13,
                        "input {input:?} output {output:?}"
                    );
                }
            }
        }
    }
}
