//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type the procedures are generic over (`f32` or `f64`).
pub trait Scalar: Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Relative slack used when comparing products such as `gamma * count <= alpha`.
    fn comparison_slack() -> Self {
        Self::epsilon() * Self::from_u8(8).unwrap()
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).unwrap()
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `lhs <= rhs`, allowing `rhs` to be exceeded by a relative 8 machine epsilons.
#[inline]
pub fn le_tol<T: Scalar>(lhs: T, rhs: T) -> bool {
    lhs <= rhs + T::comparison_slack() * lhs.abs().max(rhs.abs())
}

/// Grid point `alpha * k / m` computed from the reduced fraction so that equal
/// rationals always map to the same float.
#[inline]
pub fn grid_value<T: Scalar>(alpha: T, k: usize, m: usize) -> T {
    if k == 0 {
        return T::zero();
    }
    let g = gcd(k, m);
    alpha * T::from_usize_lossy(k / g) / T::from_usize_lossy(m / g)
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
