//! Interferometer presets: a simple two-mode Mach-Zehnder and a braced
//! four-mode variant whose internal mirrors are replaced by balanced
//! splitters that leak into a second, outer interferometer.
//!
//! Mode labels. Detectors carry the conventional labels D4..D7; the fixed
//! map onto tuple positions of the simulated states is:
//!
//! | tuple position | braced network            | simple interferometer     |
//! |----------------|---------------------------|---------------------------|
//! | 0              | input port 0 → D4 (inner) | fed input port → D4       |
//! | 1              | input port 1 → D5 (inner) | unused input port → D5    |
//! | 2              | leaked upper beam → D6    | (no such mode)            |
//! | 3              | leaked lower beam → D7    | (no such mode)            |
//!
//! Positions are reused stage by stage: a network unitary maps occupation
//! tuples at its inputs to occupation tuples at the detectors. In the simple
//! interferometer the fed port sits on the crossing line of the entry
//! splitter, so |1,0⟩ means "one photon into the interferometer".

use num_complex::Complex;

use crate::analysis::DualityMetrics;
use crate::error::{Error, Result};
use crate::float::{lit, Float};
use crate::fock::{FockBasisState, StateVector};
use crate::network::{BeamSplitterSpec, ExperimentParams, ModeUnitary};

/// Single-photon detectors of the braced network.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detector {
    D4,
    D5,
    D6,
    D7,
}

impl Detector {
    pub const ALL: [Detector; 4] = [Detector::D4, Detector::D5, Detector::D6, Detector::D7];

    pub fn from_label(label: u8) -> Result<Self> {
        match label {
            4 => Ok(Detector::D4),
            5 => Ok(Detector::D5),
            6 => Ok(Detector::D6),
            7 => Ok(Detector::D7),
            found => Err(Error::InvalidDetectorLabel { found }),
        }
    }

    pub fn label(&self) -> u8 {
        match self {
            Detector::D4 => 4,
            Detector::D5 => 5,
            Detector::D6 => 6,
            Detector::D7 => 7,
        }
    }

    /// Tuple position of this detector in four-mode output states.
    pub fn position(&self) -> usize {
        usize::from(self.label() - 4)
    }

    /// Whether the detector watches an inner output (D4/D5) rather than a
    /// leaked one (D6/D7).
    pub fn is_inner(&self) -> bool {
        matches!(self, Detector::D4 | Detector::D5)
    }
}

impl std::fmt::Display for Detector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "D{}", self.label())
    }
}

/// Two-photon input preparations for the braced network.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    /// One photon per input port, |1,1⟩.
    Pair,
    /// The bunched superposition (|2,0⟩ + |0,2⟩)/√2.
    Antibunched,
    /// α·|1,1⟩ + √(1−α²)·(|2,0⟩ + |0,2⟩)/√2 with α from the experiment
    /// parameters.
    Superposed,
}

impl InputKind {
    /// The pair weight actually realized: 1 for `Pair`, 0 for `Antibunched`,
    /// `alpha` itself for `Superposed`.
    pub fn effective_alpha<T: Float>(&self, alpha: T) -> T {
        match self {
            InputKind::Pair => T::one(),
            InputKind::Antibunched => T::zero(),
            InputKind::Superposed => alpha,
        }
    }
}

/// The prepared two-mode input state; `alpha` is consulted only for
/// [`InputKind::Superposed`] and must lie in [0, 1].
pub fn input_state<T: Float>(kind: InputKind, alpha: T) -> Result<StateVector<T>> {
    let one = Complex::new(T::one(), T::zero());
    let pair = StateVector::from_entries(2, vec![(vec![1, 1], one)])?;
    let x = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let antibunched =
        StateVector::from_entries(2, vec![(vec![2, 0], x), (vec![0, 2], x)])?;
    match kind {
        InputKind::Pair => Ok(pair),
        InputKind::Antibunched => Ok(antibunched),
        InputKind::Superposed => {
            if !(alpha >= T::zero() && alpha <= T::one()) {
                return Err(Error::ParameterOutOfRange {
                    name: "alpha",
                    value: alpha.to_f64().unwrap_or(f64::NAN),
                });
            }
            let beta = (T::one() - alpha * alpha).max(T::zero()).sqrt();
            pair.scaled(Complex::new(alpha, T::zero()))
                .try_add(&antibunched.scaled(Complex::new(beta, T::zero())))
        }
    }
}

/// Plain two-mode Mach-Zehnder: entry splitter, internal delay φ on the arm
/// the fed port transmits into, and an optional exit splitter.
#[derive(Clone, Copy, Debug)]
pub struct WheelerMzi<T: Float> {
    pub splitter: BeamSplitterSpec<T>,
    pub phi: T,
    /// With the exit splitter absent the arms run straight to the detectors
    /// and the interference pattern disappears.
    pub second_splitter_present: bool,
}

impl<T: Float> WheelerMzi<T> {
    pub fn new(splitter: BeamSplitterSpec<T>, phi: T) -> Self {
        Self {
            splitter,
            phi,
            second_splitter_present: true,
        }
    }

    pub fn balanced(phi: T) -> Self {
        Self::new(BeamSplitterSpec::balanced(), phi)
    }

    pub fn without_second_splitter(mut self) -> Self {
        self.second_splitter_present = false;
        self
    }

    fn circuit(&self) -> Result<ModeUnitary<T>> {
        // The fed port enters on the crossing line of the entry splitter, so
        // its transmitted beam continues on tuple position 1 where the delay
        // sits.
        let mut u = ModeUnitary::beam_splitter_crossed(&self.splitter);
        u = u.then(&ModeUnitary::phase_shift(self.phi, 1, 2)?)?;
        if self.second_splitter_present {
            u = u.then(&ModeUnitary::beam_splitter(&self.splitter))?;
        }
        Ok(u)
    }

    /// Propagates a two-mode input; positions map to detectors D4/D5.
    pub fn output(&self, input: &StateVector<T>) -> Result<StateVector<T>> {
        self.circuit()?.apply(input)
    }
}

/// Which-path information and fringe visibility of a plain Mach-Zehnder
/// whose entry splitter has the given coefficients: K = ||T|² − |R|²| and
/// V = 2|T||R|, satisfying K² + V² = 1.
pub fn mzi_duality<T: Float>(splitter: &BeamSplitterSpec<T>) -> DualityMetrics<T> {
    let t2 = splitter.transmission().norm_sqr();
    let r2 = splitter.reflection().norm_sqr();
    DualityMetrics {
        which_path: (t2 - r2).abs(),
        visibility: lit::<T>(2.0) * t2.sqrt() * r2.sqrt(),
    }
}

/// Braced Mach-Zehnder: the two internal mirrors are balanced splitters
/// whose transmitted (leaked) beams feed an outer interferometer closed by
/// the ε-recombiner, giving four detectors in total.
#[derive(Clone, Copy, Debug)]
pub struct BracedMzi<T: Float> {
    params: ExperimentParams<T>,
}

impl<T: Float> BracedMzi<T> {
    pub fn new(params: ExperimentParams<T>) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &ExperimentParams<T> {
        &self.params
    }

    /// The full four-mode network unitary.
    pub fn unitary(&self) -> ModeUnitary<T> {
        self.build_unitary().expect("fixed four-mode layout")
    }

    fn build_unitary(&self) -> Result<ModeUnitary<T>> {
        // The delay sits between the leaking mirrors and the inner
        // recombiner; leaked light never samples it.
        Self::stages_before_delay()?
            .then(&ModeUnitary::phase_shift(self.params.phi(), 1, 4)?)?
            .then(&Self::stages_after_delay(&self.params.outer_splitter())?)
    }

    /// Entry splitter and both leaking mirrors; independent of φ and ε.
    pub(crate) fn stages_before_delay() -> Result<ModeUnitary<T>> {
        let balanced = BeamSplitterSpec::balanced();
        let split = ModeUnitary::beam_splitter(&balanced);
        // At a leaking mirror, reflection keeps the photon inside the inner
        // interferometer and transmission sends it to the outer one.
        let leak = ModeUnitary::beam_splitter_crossed(&balanced);
        split
            .embed(&[0, 1], 4)?
            .then(&leak.embed(&[0, 2], 4)?)?
            .then(&leak.embed(&[1, 3], 4)?)
    }

    /// Inner recombiner followed by the outer ε-recombiner; independent
    /// of φ.
    pub(crate) fn stages_after_delay(outer: &BeamSplitterSpec<T>) -> Result<ModeUnitary<T>> {
        let split = ModeUnitary::beam_splitter(&BeamSplitterSpec::balanced());
        split
            .embed(&[0, 1], 4)?
            .then(&ModeUnitary::beam_splitter(outer).embed(&[2, 3], 4)?)
    }

    /// Propagates the prepared input through the network; tuple positions of
    /// the result map to detectors D4..D7.
    pub fn output_state(&self, kind: InputKind) -> Result<StateVector<T>> {
        let input = input_state(kind, self.params.alpha())?.padded(4)?;
        self.unitary().apply(&input)
    }

    /// Probability of exactly one photon at each of two distinct detectors
    /// and none elsewhere.
    pub fn coincidence(&self, kind: InputKind, a: Detector, b: Detector) -> Result<T> {
        if a == b {
            return Err(Error::DuplicateDetector(a.label()));
        }
        let mut occupations = vec![0u32; 4];
        occupations[a.position()] = 1;
        occupations[b.position()] = 1;
        self.output_state(kind)?
            .projection_probability(&FockBasisState::new(occupations)?)
    }
}

/// A four-mode two-photon state split by where its photons sit.
#[derive(Clone, Debug)]
pub struct SectorDecomposition<T: Float> {
    /// Both photons at the inner detectors D4/D5.
    pub inner: StateVector<T>,
    /// One photon inner, one outer.
    pub cross: StateVector<T>,
    /// Both photons at the outer detectors D6/D7.
    pub outer: StateVector<T>,
}

/// Splits a four-mode two-photon state by the photon count at the inner
/// detector pair. The three parts are mutually orthogonal and sum back to
/// the original state.
pub fn sector_decompose<T: Float>(state: &StateVector<T>) -> Result<SectorDecomposition<T>> {
    if state.mode_count() != 4 {
        return Err(Error::ModeCountMismatch {
            expected: 4,
            found: state.mode_count(),
        });
    }
    let totals = state.photon_numbers();
    if totals.len() > 1 {
        return Err(Error::MixedPhotonNumber);
    }
    if let Some(&total) = totals.iter().next() {
        if total != 2 {
            return Err(Error::UnsupportedPhotonNumber { found: total });
        }
    }
    let mut inner = StateVector::zero(4)?;
    let mut cross = StateVector::zero(4)?;
    let mut outer = StateVector::zero(4)?;
    for (basis, amp) in state.amplitudes() {
        let occ = basis.occupations();
        let inner_photons = occ[0] + occ[1];
        let part = match inner_photons {
            2 => &mut inner,
            1 => &mut cross,
            _ => &mut outer,
        };
        part.accumulate(basis.clone(), *amp);
    }
    Ok(SectorDecomposition {
        inner,
        cross,
        outer,
    })
}
