use nalgebra::{Complex, DMatrix, DVector, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

pub type C<T> = Complex<T>;
pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

/// Real scalar the library is generic over.
///
/// `default_tol` is the absolute tolerance used by trace/PSD checks and the
/// relative tolerance used for rank cutoffs and eigenvalue clustering.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn default_tol() -> Self;

    /// Largest value eigensolver noise is allowed to reach before a weight is
    /// treated as a genuine component.
    fn weight_floor() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn default_tol() -> Self {
        1e-9
    }

    fn weight_floor() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn default_tol() -> Self {
        1e-4
    }

    fn weight_floor() -> Self {
        1e-6
    }
}

/// Tolerance for trace/PSD checks on a space of dimension `dim`: the default
/// up to dimension 64, scaled linearly above.
pub fn state_tol<T: Real>(dim: usize) -> T {
    let scale = if dim > 64 { dim as f64 / 64.0 } else { 1.0 };
    T::default_tol() * T::lit(scale)
}

pub(crate) fn c<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

pub(crate) fn abs<T: Real>(x: T) -> T {
    if x < T::zero() {
        -x
    } else {
        x
    }
}

pub(crate) fn max<T: Real>(a: T, b: T) -> T {
    if a > b {
        a
    } else {
        b
    }
}
