//! Chebyshev polynomials `T_k`, `U_k` of complex argument.
//!
//! Integer degrees use the three-term recurrence, except for real arguments
//! above 1 which go through `cosh`/`sinh`. Half-integer degrees only make sense
//! through the trigonometric definition `T_k(z) = cos(k Arccos z)` and are
//! evaluated on the principal branch of `Arccos`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KmsError, Result};

/// Degree `k = twice_k / 2`, so integer and half-integer degrees share one type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChebDegree {
    twice_k: u32,
}

impl ChebDegree {
    pub const fn integer(k: u32) -> Self {
        Self { twice_k: 2 * k }
    }

    pub const fn from_twice(twice_k: u32) -> Self {
        Self { twice_k }
    }

    pub const fn twice(self) -> u32 {
        self.twice_k
    }

    pub const fn is_integer(self) -> bool {
        self.twice_k % 2 == 0
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_k) / 2.0
    }
}

impl From<u32> for ChebDegree {
    fn from(k: u32) -> Self {
        Self::integer(k)
    }
}

fn is_real_above_one(z: Complex64) -> bool {
    z.im == 0.0 && z.re > 1.0
}

/// `T_k(z)` for integer `k` by forward recurrence.
pub fn cheb_t_int(k: u32, z: Complex64) -> Complex64 {
    if is_real_above_one(z) {
        return Complex64::new((f64::from(k) * z.re.acosh()).cosh(), 0.0);
    }
    t_recurrence(k, z)
}

fn t_recurrence(k: u32, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if k == 0 {
        return one;
    }
    let (mut prev, mut cur) = (one, z);
    for _ in 1..k {
        let next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn u_recurrence(k: u32, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if k == 0 {
        return one;
    }
    let (mut prev, mut cur) = (one, 2.0 * z);
    for _ in 1..k {
        let next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_k(z)` for any integer `k`, with `U_{-1} = 0` and `U_{-k} = -U_{k-2}`.
pub fn cheb_u_int(k: i64, z: Complex64) -> Complex64 {
    if k == -1 {
        return Complex64::new(0.0, 0.0);
    }
    if k < -1 {
        return -cheb_u_int(-k - 2, z);
    }
    let k = u32::try_from(k).expect("Chebyshev degree out of range");
    if is_real_above_one(z) {
        let v = z.re.acosh();
        return Complex64::new((f64::from(k + 1) * v).sinh() / v.sinh(), 0.0);
    }
    u_recurrence(k, z)
}

/// `U_k(z)` together with `dU_k/dz`, by differentiating the recurrence.
pub fn cheb_u_with_derivative(k: u32, z: Complex64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if k == 0 {
        return (one, zero);
    }
    let (mut u0, mut u1) = (one, 2.0 * z);
    let (mut d0, mut d1) = (zero, Complex64::new(2.0, 0.0));
    for _ in 1..k {
        let u2 = 2.0 * z * u1 - u0;
        let d2 = 2.0 * u1 + 2.0 * z * d1 - d0;
        u0 = u1;
        u1 = u2;
        d0 = d1;
        d1 = d2;
    }
    (u1, d1)
}

fn principal_arccos(z: Complex64) -> Complex64 {
    z.acos()
}

/// `T_k(z)`; half-integer degrees via `cos(k Arccos z)` on the principal branch.
pub fn cheb_t(k: ChebDegree, z: Complex64) -> Complex64 {
    if k.is_integer() {
        return cheb_t_int(k.twice() / 2, z);
    }
    let theta = principal_arccos(z);
    let value = (k.value() * theta).cos();
    debug_assert!({
        let mirrored = (-k.value() * theta).cos();
        (mirrored - value).norm() <= 1e-10 * (1.0 + value.norm())
    });
    value
}

/// `U_k(z)`; half-integer degrees via `sin((k+1) Arccos z) / sin(Arccos z)`.
pub fn cheb_u(k: ChebDegree, z: Complex64) -> Result<Complex64> {
    if k.is_integer() {
        return Ok(cheb_u_int(i64::from(k.twice() / 2), z));
    }
    let theta = principal_arccos(z);
    let s = theta.sin();
    if s.norm() < 1e-14 {
        return Err(KmsError::DegenerateArgument(z));
    }
    let value = ((k.value() + 1.0) * theta).sin() / s;
    debug_assert!({
        let mirrored = (-(k.value() + 1.0) * theta).sin() / (-s);
        (mirrored - value).norm() <= 1e-10 * (1.0 + value.norm())
    });
    Ok(value)
}

/// Half-integer `T_k` evaluated on the branch `Arccos z + 2 pi`.
///
/// For half-integer `k` this is `-cheb_t(k, z)`; ratios of two half-integer
/// values are unaffected, which is what callers check.
pub fn cheb_t_shifted_branch(k: ChebDegree, z: Complex64) -> Complex64 {
    let theta = principal_arccos(z) + 2.0 * std::f64::consts::PI;
    (k.value() * theta).cos()
}

/// Half-integer `U_k` evaluated on the branch `Arccos z + 2 pi`.
pub fn cheb_u_shifted_branch(k: ChebDegree, z: Complex64) -> Result<Complex64> {
    let theta = principal_arccos(z) + 2.0 * std::f64::consts::PI;
    let s = theta.sin();
    if s.norm() < 1e-14 {
        return Err(KmsError::DegenerateArgument(z));
    }
    Ok(((k.value() + 1.0) * theta).sin() / s)
}

/// `T_k(x) = cosh(k arccosh x)` for real `x >= 1`.
pub fn cheb_t_hyperbolic(k: u32, x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(KmsError::Domain(x));
    }
    Ok((f64::from(k) * x.acosh()).cosh())
}

/// `ln T_k(x)` for real `x >= 1`; finite even where `T_k(x)` overflows.
pub fn ln_cheb_t_hyperbolic(k: u32, x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(KmsError::Domain(x));
    }
    let s = f64::from(k) * x.acosh();
    // cosh s = e^s (1 + e^{-2s}) / 2
    Ok(s + (-2.0 * s).exp().ln_1p() - std::f64::consts::LN_2)
}

/// `U_k(x) = sinh((k+1) v) / sinh v` with `x = cosh v`, for real `x > 1`.
pub fn cheb_u_hyperbolic(k: u32, x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(KmsError::Domain(x));
    }
    let v = x.acosh();
    Ok((f64::from(k + 1) * v).sinh() / v.sinh())
}
