//! Scalar abstraction: every quantity in the crate is generic over a real
//! floating-point type, with `f64` as the working default.

use std::fmt::{Debug, Display};

use num_traits::{FloatConst, FromPrimitive, NumAssign};

/// Real scalar underlying all amplitudes, probabilities and parameters.
///
/// The two extra methods pin the crate-wide numerical conventions per type:
/// amplitudes below [`Float::prune_threshold`] are dropped after every linear
/// operation, and constructors reject inputs whose defining constraints
/// (unitarity, splitter energy balance) deviate by more than
/// [`Float::construction_tolerance`].
pub trait Float:
    num_traits::Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    fn prune_threshold() -> Self;
    fn construction_tolerance() -> Self;
}

impl Float for f64 {
    fn prune_threshold() -> Self {
        1e-14
    }
    fn construction_tolerance() -> Self {
        1e-12
    }
}

impl Float for f32 {
    fn prune_threshold() -> Self {
        1e-6
    }
    fn construction_tolerance() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into the working scalar type.
///
/// Panics only if the target type cannot represent ordinary constants, which
/// no sensible `Float` impl does.
pub(crate) fn lit<T: Float>(x: f64) -> T {
    T::from_f64(x).expect("float literal must be representable")
}
