//! Certified analysis of the window polynomial
//!
//! ```text
//! S(X) = P3(X/a) − P3(1) − 2·P3(X/(a+b)) + (3/4)·X,   P3(X) = X + X² + (2/3)X³
//! ```
//!
//! over Q(ρ), ρ = ∛3, for parameters b ∈ Q and a ∈ Q(ρ) with b ≤ (ρ−1)·a.
//! The verifier certifies, entirely in exact arithmetic:
//!
//! 1. S′(X) = c₁ + c₂X + c₃X² has negative discriminant and c₁ > 0, so S is
//!    strictly increasing on the whole real line (a sign-definite quadratic —
//!    no sampling involved);
//! 2. S at the top of the λ₁ window sits strictly below the exact threshold
//!    −1/200, hence S(a + λ₁) + ε(a + λ₁) stays negative on the entire
//!    window for every ε below the computed cutoff
//!    ε_max = −S(a + λ_hi)/(a + λ_hi);
//! 3. the hypothesis b ≤ (ρ−1)·a holds (with the reference parameters it
//!    holds with equality).
//!
//! The coefficients c₁, c₂, c₃ are computed twice — once from their closed
//! forms, once by expanding S symbolically and differentiating term by
//! term — and the two routes are required to agree exactly.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cubic::CubicNumber;
use crate::rational::{int, rat, BigRational};

/// The exact threshold the top endpoint must sit below: −1/200 (= −0.005).
pub fn endpoint_threshold() -> BigRational {
    rat(-1, 200)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("parameter a must be positive")]
    NonPositiveA,
    #[error("parameter b must be positive")]
    NonPositiveB,
    #[error("window bounds must satisfy 0 < low < high")]
    BadWindow,
}

/// Parameters of the verification: the scalar b, the cubic-field element a,
/// and the λ₁ window (low, high].
#[derive(Debug, Clone)]
pub struct LemmaParameters {
    b: BigRational,
    a: CubicNumber,
    lambda1_low: BigRational,
    lambda1_high: BigRational,
}

impl LemmaParameters {
    /// Validates a > 0, b > 0 and 0 < low < high. The hypothesis
    /// b ≤ (ρ−1)·a is *not* enforced here; it is checked (and reported)
    /// by [`verify_lemma`].
    pub fn new(
        b: BigRational,
        a: CubicNumber,
        lambda1_low: BigRational,
        lambda1_high: BigRational,
    ) -> Result<Self, LemmaError> {
        if a.sign() != 1 {
            return Err(LemmaError::NonPositiveA);
        }
        if b <= BigRational::zero() {
            return Err(LemmaError::NonPositiveB);
        }
        if lambda1_low <= BigRational::zero() || lambda1_low >= lambda1_high {
            return Err(LemmaError::BadWindow);
        }
        Ok(Self {
            b,
            a,
            lambda1_low,
            lambda1_high,
        })
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn a(&self) -> &CubicNumber {
        &self.a
    }

    pub fn a_plus_b(&self) -> CubicNumber {
        &self.a + &CubicNumber::from_rational(self.b.clone())
    }

    pub fn lambda1_low(&self) -> &BigRational {
        &self.lambda1_low
    }

    pub fn lambda1_high(&self) -> &BigRational {
        &self.lambda1_high
    }
}

impl Default for LemmaParameters {
    /// The reference parameters: b = 23/20, a = b·(ρ−1)⁻¹ = (23/40)(1+ρ+ρ²),
    /// window (3/5, 17/20]. With these, b = (ρ−1)·a holds exactly.
    fn default() -> Self {
        let b = rat(23, 20);
        let rho_minus_one = &CubicNumber::rho() - &CubicNumber::one();
        let a = CubicNumber::from_rational(b.clone())
            * rho_minus_one.inv().expect("rho - 1 is nonzero");
        Self::new(b, a, rat(3, 5), rat(17, 20)).expect("reference parameters are valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
        }
    }
}

/// Outcome of the full verification. Exact quantities are kept alongside
/// their decimal renderings (which carry guaranteed error below
/// 10^-digits, see [`CubicNumber::to_decimal`]).
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub c1: CubicNumber,
    pub c2: CubicNumber,
    pub c3: CubicNumber,
    /// c₂² − 4·c₁·c₃, exactly.
    pub discriminant: CubicNumber,
    pub discriminant_sign: i8,
    /// True when c₁ > 0 and the discriminant is negative, i.e. S′ > 0
    /// everywhere and S is strictly increasing.
    pub monotone_increasing: bool,
    /// True when the hypothesis b ≤ (ρ−1)·a holds.
    pub constraint_ok: bool,
    /// S(a + λ_low), rendered.
    pub s_low: String,
    /// S(a + λ_high), rendered.
    pub s_high: String,
    /// Exact comparison S(a + λ_high) < −1/200.
    pub s_high_below_threshold: bool,
    /// −S(a + λ_high)/(a + λ_high), exactly; `None` if a + λ_high is zero.
    pub epsilon_max_exact: Option<CubicNumber>,
    /// ε_max rendered, or "undefined" when it does not exist.
    pub epsilon_max: String,
    pub verdict: Verdict,
}

/// The weight polynomial P₃(X) = X + X² + (2/3)X³, evaluated exactly.
pub fn p3(x: &CubicNumber) -> CubicNumber {
    let x2 = x * x;
    let x3 = &x2 * x;
    x + &x2 + x3.scale(&rat(2, 3))
}

/// S(X) = P₃(X/a) − P₃(1) − 2·P₃(X/(a+b)) + (3/4)·X, evaluated exactly.
pub fn s_value(x: &CubicNumber, params: &LemmaParameters) -> CubicNumber {
    let over_a = x / params.a();
    let over_ab = x / &params.a_plus_b();
    let p1 = p3(&over_a);
    let p2 = p3(&CubicNumber::one());
    let p3_term = p3(&over_ab);
    &p1 - &p2 - p3_term.scale(&int(2)) + x.scale(&rat(3, 4))
}

/// The left-hand side of the inequality under test at X = a + λ₁:
/// P₃((a+λ₁)/a) − P₃(1) − 2·P₃((a+λ₁)/(a+b)) + (a+λ₁)(3/4 + ε),
/// which equals S(a+λ₁) + ε·(a+λ₁) identically.
pub fn inequality_lhs(
    lambda1: &BigRational,
    epsilon: &BigRational,
    params: &LemmaParameters,
) -> CubicNumber {
    let x = params.a() + &CubicNumber::from_rational(lambda1.clone());
    let lhs = &s_value(&x, params) + &x.scale(epsilon);
    debug_assert_eq!(lhs, {
        let over_a = &x / params.a();
        let over_ab = &x / &params.a_plus_b();
        let weight = rat(3, 4) + epsilon;
        &p3(&over_a) - &p3(&CubicNumber::one()) - p3(&over_ab).scale(&int(2)) + x.scale(&weight)
    });
    lhs
}

// --- polynomial route ------------------------------------------------------
//
// S is a cubic in X; expanding it symbolically gives a second, structurally
// independent route to the derivative coefficients.

fn poly_mul(a: &[CubicNumber], b: &[CubicNumber]) -> Vec<CubicNumber> {
    let mut out = vec![CubicNumber::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn poly_add(a: &[CubicNumber], b: &[CubicNumber]) -> Vec<CubicNumber> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let zero = CubicNumber::zero();
            let ai = a.get(i).unwrap_or(&zero).clone();
            let bi = b.get(i).unwrap_or(&zero);
            &ai + bi
        })
        .collect()
}

fn poly_scale(a: &[CubicNumber], c: &BigRational) -> Vec<CubicNumber> {
    a.iter().map(|ai| ai.scale(c)).collect()
}

/// Horner composition outer(inner(X)). Trailing zero coefficients from the
/// degree padding are trimmed so equal polynomials compare equal.
fn poly_compose(outer: &[CubicNumber], inner: &[CubicNumber]) -> Vec<CubicNumber> {
    let mut acc = vec![CubicNumber::zero()];
    for coeff in outer.iter().rev() {
        acc = poly_mul(&acc, inner);
        acc = poly_add(&acc, std::slice::from_ref(coeff));
    }
    poly_trim(acc)
}

fn poly_trim(mut v: Vec<CubicNumber>) -> Vec<CubicNumber> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_derivative(a: &[CubicNumber]) -> Vec<CubicNumber> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, ai)| ai.scale(&int(i as i64)))
        .collect()
}

/// The coefficients [d₀, d₁, d₂, d₃] of S(X) = Σ dᵢ·Xⁱ, obtained by symbolic
/// expansion (generic polynomial composition, not the closed forms).
pub fn s_polynomial(params: &LemmaParameters) -> Vec<CubicNumber> {
    // P3 as a coefficient vector over Q(rho).
    let p3_coeffs = [
        CubicNumber::zero(),
        CubicNumber::one(),
        CubicNumber::one(),
        CubicNumber::from_rational(rat(2, 3)),
    ];
    let inv_a = params.a().inv().expect("a is nonzero");
    let inv_ab = params.a_plus_b().inv().expect("a + b is nonzero");
    let composed_a = poly_compose(&p3_coeffs, &[CubicNumber::zero(), inv_a]);
    let composed_ab = poly_compose(&p3_coeffs, &[CubicNumber::zero(), inv_ab]);
    let mut s = poly_add(&composed_a, &poly_scale(&composed_ab, &int(-2)));
    let constant_and_linear = [
        -&p3(&CubicNumber::one()),
        CubicNumber::from_rational(rat(3, 4)),
    ];
    s = poly_add(&s, &constant_and_linear);
    poly_trim(s)
}

/// The derivative coefficients (c₁, c₂, c₃) of S′(X) = c₁ + c₂X + c₃X².
///
/// Computed from the closed forms c₁ = 3/4 + 1/a − 2/(a+b),
/// c₂ = 2/a² − 4/(a+b)², c₃ = 2/a³ − 4/(a+b)³ and cross-checked, exactly,
/// against term-wise differentiation of the expanded polynomial.
pub fn s_prime_coeffs(params: &LemmaParameters) -> (CubicNumber, CubicNumber, CubicNumber) {
    let inv_a = params.a().inv().expect("a is nonzero");
    let inv_ab = params.a_plus_b().inv().expect("a + b is nonzero");

    let c1 = &(&CubicNumber::from_rational(rat(3, 4)) + &inv_a) - &inv_ab.scale(&int(2));
    let c2 = &(&inv_a * &inv_a).scale(&int(2)) - &(&inv_ab * &inv_ab).scale(&int(4));
    let c3 = &(&(&inv_a * &inv_a) * &inv_a).scale(&int(2))
        - &(&(&inv_ab * &inv_ab) * &inv_ab).scale(&int(4));

    let expanded = poly_derivative(&s_polynomial(params));
    assert_eq!(
        expanded,
        vec![c1.clone(), c2.clone(), c3.clone()],
        "closed-form derivative coefficients disagree with symbolic expansion"
    );

    (c1, c2, c3)
}

/// The exact sign of the discriminant c₂² − 4·c₁·c₃ of S′. A value of −1
/// certifies that S′(X) = 0 has no real root.
pub fn discriminant(params: &LemmaParameters) -> CubicNumber {
    let (c1, c2, c3) = s_prime_coeffs(params);
    &(&c2 * &c2) - &(&c1 * &c3).scale(&int(4))
}

pub fn discriminant_sign(params: &LemmaParameters) -> i8 {
    discriminant(params).sign()
}

/// Rational grid of `points` values across the window (low, high]:
/// λ_k = low + k·(high − low)/points for k = 1..=points.
pub fn lambda_grid(params: &LemmaParameters, points: usize) -> Vec<BigRational> {
    assert!(points >= 1);
    let low = params.lambda1_low();
    let step = (params.lambda1_high() - low) / int(points as i64);
    (1..=points).map(|k| low + &step * int(k as i64)).collect()
}

/// Runs the full verification and assembles the certificate.
///
/// The verdict is PASS exactly when
/// * the discriminant of S′ is negative and c₁ > 0 (so S is strictly
///   increasing everywhere),
/// * S(a + λ_high) < −1/200 exactly, and
/// * the hypothesis b ≤ (ρ−1)·a holds.
///
/// Under PASS, S(a + λ₁) + ε·(a + λ₁) < 0 for every λ₁ in (λ_low, λ_high]
/// and every positive ε < ε_max = −S(a + λ_high)/(a + λ_high): S increasing
/// makes λ_high the worst case, and the ε-term is linear with positive
/// slope a + λ₁ ≤ a + λ_high there.
///
/// `digits` controls only the decimal renderings in the report.
pub fn verify_lemma(params: &LemmaParameters, digits: u32) -> LemmaReport {
    let (c1, c2, c3) = s_prime_coeffs(params);
    let disc = &(&c2 * &c2) - &(&c1 * &c3).scale(&int(4));
    let discriminant_sign = disc.sign();
    let monotone_increasing = discriminant_sign == -1 && c1.sign() == 1;

    // b <= (rho - 1)*a, i.e. (rho - 1)*a - b >= 0.
    let rho_minus_one = &CubicNumber::rho() - &CubicNumber::one();
    let slack = &(&rho_minus_one * params.a()) - &CubicNumber::from_rational(params.b().clone());
    let constraint_ok = slack.sign() >= 0;

    let x_low = params.a() + &CubicNumber::from_rational(params.lambda1_low().clone());
    let x_high = params.a() + &CubicNumber::from_rational(params.lambda1_high().clone());
    let s_low_exact = s_value(&x_low, params);
    let s_high_exact = s_value(&x_high, params);

    // S(a + lambda_high) < -1/200, decided exactly.
    let threshold = CubicNumber::from_rational(endpoint_threshold());
    let s_high_below_threshold = (&s_high_exact - &threshold).sign() == -1;

    let epsilon_max_exact = x_high
        .inv()
        .ok()
        .map(|inv_x_high| (-&s_high_exact) * inv_x_high);
    let epsilon_max = epsilon_max_exact
        .as_ref()
        .map(|e| e.to_decimal(digits))
        .unwrap_or_else(|| "undefined".to_owned());

    let verdict = if monotone_increasing && s_high_below_threshold && constraint_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    LemmaReport {
        c1,
        c2,
        c3,
        discriminant: disc,
        discriminant_sign,
        monotone_increasing,
        constraint_ok,
        s_low: s_low_exact.to_decimal(digits),
        s_high: s_high_exact.to_decimal(digits),
        s_high_below_threshold,
        epsilon_max_exact,
        epsilon_max,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_examples() {
        assert_eq!(
            p3(&CubicNumber::one()),
            CubicNumber::from_rational(rat(8, 3))
        );
        assert_eq!(p3(&CubicNumber::zero()), CubicNumber::zero());
        // 3/2 + 9/4 + (2/3)(27/8) = 6.
        assert_eq!(
            p3(&CubicNumber::from_rational(rat(3, 2))),
            CubicNumber::from_int(6)
        );
    }

    #[test]
    fn reference_parameters_satisfy_equality() {
        let params = LemmaParameters::default();
        // b = (rho - 1)*a exactly.
        let rho_minus_one = &CubicNumber::rho() - &CubicNumber::one();
        assert_eq!(
            &rho_minus_one * params.a(),
            CubicNumber::from_rational(params.b().clone())
        );
        // a = (23/40)(1 + rho + rho^2).
        assert_eq!(
            params.a(),
            &CubicNumber::new(rat(23, 40), rat(23, 40), rat(23, 40))
        );
    }

    #[test]
    fn s_at_zero_is_minus_p3_of_one() {
        let params = LemmaParameters::default();
        assert_eq!(
            s_value(&CubicNumber::zero(), &params),
            CubicNumber::from_rational(rat(-8, 3))
        );
    }

    #[test]
    fn endpoint_values_match_reference_decimals() {
        let params = LemmaParameters::default();
        let low = params.a() + &CubicNumber::from_rational(rat(3, 5));
        let high = params.a() + &CubicNumber::from_rational(rat(17, 20));
        let s_low = s_value(&low, &params);
        let s_high = s_value(&high, &params);
        assert_eq!(s_low.sign(), -1);
        assert_eq!(s_high.sign(), -1);
        assert_eq!(s_low.to_decimal(6), "-0.269776");
        assert_eq!(s_high.to_decimal(4), "-0.0051");
    }

    #[test]
    fn lhs_at_zero_epsilon_is_s_value() {
        let params = LemmaParameters::default();
        let zero = BigRational::zero();
        for lam in [rat(3, 5), rat(17, 20)] {
            let x = params.a() + &CubicNumber::from_rational(lam.clone());
            assert_eq!(inequality_lhs(&lam, &zero, &params), s_value(&x, &params));
        }
    }

    #[test]
    fn lhs_is_linear_in_epsilon() {
        let params = LemmaParameters::default();
        let lam = rat(17, 20);
        let diff = &inequality_lhs(&lam, &int(1), &params)
            - &inequality_lhs(&lam, &BigRational::zero(), &params);
        let expected = params.a() + &CubicNumber::from_rational(lam);
        assert_eq!(diff, expected);
    }

    #[test]
    fn derivative_coefficient_signs_and_decimals() {
        let params = LemmaParameters::default();
        let (c1, c2, c3) = s_prime_coeffs(&params);
        assert_eq!(c1.sign(), 1);
        assert_eq!(c2.sign(), 1);
        assert_eq!(c3.sign(), 1);
        assert_eq!(c1.to_decimal(4), "0.6013");
        assert_eq!(c3.to_decimal(4), "0.0379");
    }

    #[test]
    fn discriminant_is_negative_for_reference_parameters() {
        let params = LemmaParameters::default();
        assert_eq!(discriminant_sign(&params), -1);
        assert_eq!(discriminant(&params).to_decimal(3), "-0.091");
    }

    #[test]
    fn discriminant_for_rational_parameters() {
        // (a, b) = (1, 10) keeps everything in Q, so the discriminant has a
        // closed rational value: c₁ = 69/44, c₂ = 238/121, c₃ = 2658/1331
        // give c₂² − 4c₁c₃ = -126758/14641 ≈ -8.657742.
        let params =
            LemmaParameters::new(int(10), CubicNumber::one(), rat(3, 5), rat(17, 20)).unwrap();
        let disc = discriminant(&params);
        assert_eq!(disc, CubicNumber::from_rational(rat(-126758, 14641)));
        assert_eq!(disc.sign(), -1);
        assert_eq!(disc.to_decimal(6), "-8.657742");
    }

    #[test]
    fn expanded_polynomial_evaluates_like_s_value() {
        let params = LemmaParameters::default();
        let coeffs = s_polynomial(&params);
        for lam in [rat(1, 3), rat(17, 20), rat(5, 2)] {
            let x = params.a() + &CubicNumber::from_rational(lam);
            let mut horner = CubicNumber::zero();
            for c in coeffs.iter().rev() {
                horner = &(&horner * &x) + c;
            }
            assert_eq!(horner, s_value(&x, &params));
        }
    }

    #[test]
    fn verify_passes_with_reference_parameters() {
        let report = verify_lemma(&LemmaParameters::default(), 6);
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.monotone_increasing);
        assert!(report.constraint_ok);
        assert!(report.s_high_below_threshold);
        assert_eq!(report.s_low, "-0.269776");
        assert!(report.s_high.starts_with("-0.0051"));
        let eps = report.epsilon_max_exact.as_ref().unwrap();
        assert_eq!(eps.to_decimal(4), "0.0015");
        // epsilon = 1/1000 lies strictly below epsilon_max.
        let margin = eps - &CubicNumber::from_rational(rat(1, 1000));
        assert_eq!(margin.sign(), 1);
    }

    #[test]
    fn verify_fails_when_hypothesis_is_violated() {
        // b = 2 > (rho - 1)*a = 1.15 for the reference a.
        let reference = LemmaParameters::default();
        let params = LemmaParameters::new(
            int(2),
            reference.a().clone(),
            rat(3, 5),
            rat(17, 20),
        )
        .unwrap();
        let report = verify_lemma(&params, 6);
        assert!(!report.constraint_ok);
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn lambda_grid_spans_the_window() {
        let params = LemmaParameters::default();
        let grid = lambda_grid(&params, 26);
        assert_eq!(grid.len(), 26);
        assert!(grid[0] > rat(3, 5));
        assert_eq!(grid[25], rat(17, 20));
        for w in grid.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        // a = 0 fails the positivity check before anything else runs.
        assert!(matches!(
            LemmaParameters::new(int(1), CubicNumber::zero(), rat(1, 2), rat(3, 4)),
            Err(LemmaError::NonPositiveA)
        ));
        assert!(matches!(
            LemmaParameters::new(int(-1), CubicNumber::one(), rat(1, 2), rat(3, 4)),
            Err(LemmaError::NonPositiveB)
        ));
        assert!(matches!(
            LemmaParameters::new(int(1), CubicNumber::one(), rat(3, 4), rat(1, 2)),
            Err(LemmaError::BadWindow)
        ));
    }
}
