//! Exact arithmetic in Q(ρ), where ρ is the real cube root of 3.
//!
//! Elements are coordinate triples (x, y, z) over the basis {1, ρ, ρ²} with
//! arbitrary-precision rational coordinates, so all ring operations are
//! exact: products reduce by the defining relation ρ³ = 3 (hence ρ⁴ = 3ρ)
//! and ρ is never evaluated numerically during arithmetic. Because
//! {1, ρ, ρ²} is a basis, an element is zero exactly when all three
//! coordinates are zero, which makes the zero test structural and O(1).
//!
//! Numerics enter only at the boundary. [`CubicNumber::sign`] and
//! [`CubicNumber::to_decimal`] squeeze ρ between rational bounds
//! ([`RhoEnclosure`], bisection on t³ = 3 starting from [1, 2]) and evaluate
//! the element in interval arithmetic until the question at hand — which
//! side of zero, or which decimal digits — is settled rigorously. A nonzero
//! element has nonzero value, so the refinement loop always terminates.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{decimal_string, int, BigRational};

/// Error type for the partial field operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error("division by zero in Q(rho)")]
    DivisionByZero,
}

/// An element x + y·ρ + z·ρ² of Q(ρ), ρ³ = 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicNumber {
    x: BigRational,
    y: BigRational,
    z: BigRational,
}

impl CubicNumber {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    /// The generator ρ = ∛3 itself, i.e. (0, 1, 0).
    pub fn rho() -> Self {
        Self::new(BigRational::zero(), BigRational::one(), BigRational::zero())
    }

    pub fn from_rational(x: BigRational) -> Self {
        Self::new(x, BigRational::zero(), BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn z(&self) -> &BigRational {
        &self.z
    }

    /// Structural zero test; exact because {1, ρ, ρ²} is a basis.
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// True when the element lies in Q, i.e. y = z = 0.
    pub fn is_rational(&self) -> bool {
        self.y.is_zero() && self.z.is_zero()
    }

    /// Field norm N(x + yρ + zρ²) = x³ + 3y³ + 9z³ − 9xyz.
    ///
    /// Multiplicative, and zero exactly on the zero element.
    pub fn norm(&self) -> BigRational {
        let (x, y, z) = (&self.x, &self.y, &self.z);
        x * x * x + int(3) * (y * y * y) + int(9) * (z * z * z) - int(9) * (x * y * z)
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.x * c, &self.y * c, &self.z * c)
    }

    /// The exact inverse: (A + Bρ + Cρ²)/N with A = x² − 3yz,
    /// B = 3z² − xy, C = y² − xz, N the norm. `mul(u, inv(u)) = 1` exactly.
    pub fn inv(&self) -> Result<Self, CubicError> {
        if self.is_zero() {
            return Err(CubicError::DivisionByZero);
        }
        let (x, y, z) = (&self.x, &self.y, &self.z);
        let a = x * x - int(3) * (y * z);
        let b = int(3) * (z * z) - x * y;
        let c = y * y - x * z;
        let n = self.norm();
        Ok(Self::new(a / &n, b / &n, c / &n))
    }

    /// Evaluates x + yρ + zρ² over the enclosure's ρ-interval, returning
    /// rational bounds on the value. Requires the enclosure's invariant
    /// 0 < lo < hi, so ρ² ∈ [lo², hi²].
    fn value_interval(&self, enc: &RhoEnclosure) -> (BigRational, BigRational) {
        fn scaled(c: &BigRational, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
            if c.is_negative() {
                (c * hi, c * lo)
            } else {
                (c * lo, c * hi)
            }
        }
        let (ylo, yhi) = scaled(&self.y, enc.lo(), enc.hi());
        let sq_lo = enc.lo() * enc.lo();
        let sq_hi = enc.hi() * enc.hi();
        let (zlo, zhi) = scaled(&self.z, &sq_lo, &sq_hi);
        (&self.x + ylo + zlo, &self.x + yhi + zhi)
    }

    /// The exact sign of the value: 0, +1 or −1.
    ///
    /// Zero is decided structurally; otherwise the ρ-enclosure is refined
    /// until interval evaluation excludes zero. Terminates for every input
    /// because a nonzero element has nonzero real value.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let mut enc = RhoEnclosure::new();
        loop {
            let (lo, hi) = self.value_interval(&enc);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            enc.refine();
        }
    }

    /// Rational bounds on the value with `hi − lo < target`. `target` must
    /// be positive.
    pub fn value_bounds(&self, target: &BigRational) -> (BigRational, BigRational) {
        assert!(target.is_positive(), "width target must be positive");
        let mut enc = RhoEnclosure::new();
        loop {
            let (lo, hi) = self.value_interval(&enc);
            if &hi - &lo < *target {
                return (lo, hi);
            }
            enc.refine();
        }
    }

    /// A decimal rendering with guaranteed absolute error below 10^-digits.
    ///
    /// The string always carries exactly `digits` places after the point.
    /// It is not necessarily correctly rounded at the last digit: the digits
    /// come from rounding the midpoint of an enclosure of width below
    /// 10^-(digits+1), which keeps the total error under
    /// 0.5·10^-digits + 0.5·10^-(digits+1) < 10^-digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        assert!(digits >= 1, "digits must be at least 1");
        let target = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits + 1));
        let (lo, hi) = self.value_bounds(&target);
        let mid = (lo + hi) / int(2);
        decimal_string(&mid, digits)
    }
}

impl From<BigRational> for CubicNumber {
    fn from(x: BigRational) -> Self {
        Self::from_rational(x)
    }
}

impl From<i64> for CubicNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &CubicNumber {
    type Output = CubicNumber;

    fn add(self, rhs: &CubicNumber) -> CubicNumber {
        CubicNumber::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl Sub for &CubicNumber {
    type Output = CubicNumber;

    fn sub(self, rhs: &CubicNumber) -> CubicNumber {
        CubicNumber::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Neg for &CubicNumber {
    type Output = CubicNumber;

    fn neg(self) -> CubicNumber {
        CubicNumber::new(-&self.x, -&self.y, -&self.z)
    }
}

impl Mul for &CubicNumber {
    type Output = CubicNumber;

    /// Product with ρ³ replaced by 3 and ρ⁴ by 3ρ:
    /// (x₁, y₁, z₁)·(x₂, y₂, z₂) =
    ///   (x₁x₂ + 3(y₁z₂ + z₁y₂), x₁y₂ + y₁x₂ + 3z₁z₂, x₁z₂ + y₁y₂ + z₁x₂).
    fn mul(self, rhs: &CubicNumber) -> CubicNumber {
        let (x1, y1, z1) = (&self.x, &self.y, &self.z);
        let (x2, y2, z2) = (&rhs.x, &rhs.y, &rhs.z);
        CubicNumber::new(
            x1 * x2 + int(3) * (y1 * z2 + z1 * y2),
            x1 * y2 + y1 * x2 + int(3) * (z1 * z2),
            x1 * z2 + y1 * y2 + z1 * x2,
        )
    }
}

impl Div for &CubicNumber {
    type Output = CubicNumber;

    /// Panics on division by zero; use [`CubicNumber::inv`] to handle the
    /// zero case explicitly.
    #[allow(clippy::suspicious_arithmetic_impl)] // division = multiply by inverse
    fn div(self, rhs: &CubicNumber) -> CubicNumber {
        self * &rhs.inv().expect("division by zero in Q(rho)")
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for CubicNumber {
            type Output = CubicNumber;
            fn $method(self, rhs: CubicNumber) -> CubicNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CubicNumber> for CubicNumber {
            type Output = CubicNumber;
            fn $method(self, rhs: &CubicNumber) -> CubicNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for CubicNumber {
    type Output = CubicNumber;

    fn neg(self) -> CubicNumber {
        -&self
    }
}

impl fmt::Display for CubicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})rho + ({})rho^2", self.x, self.y, self.z)
    }
}

/// Rational bounds lo < ρ < hi with lo³ < 3 < hi³, refinable by bisection.
///
/// The initial enclosure is [1, 2]; each [`refine`](Self::refine) halves the
/// width exactly and preserves both cube inequalities (they stay strict
/// because 3 is not a rational cube).
#[derive(Clone, Debug)]
pub struct RhoEnclosure {
    lo: BigRational,
    hi: BigRational,
}

impl RhoEnclosure {
    pub fn new() -> Self {
        Self {
            lo: int(1),
            hi: int(2),
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// One bisection step: replaces the endpoint on the midpoint's side.
    pub fn refine(&mut self) {
        let mid = (&self.lo + &self.hi) / int(2);
        if mid.pow(3) < int(3) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refines until `width < target`. `target` must be positive.
    pub fn refine_to_width(&mut self, target: &BigRational) {
        assert!(target.is_positive(), "width target must be positive");
        while self.width() >= *target {
            self.refine();
        }
    }
}

impl Default for RhoEnclosure {
    fn default() -> Self {
        Self::new()
    }
}
