//! Zero-coordinate rescaling and the fixed N(λ) reference table.
//!
//! A zero β + iγ attached to a modulus q is rescaled by ℓ = log q into
//! λ = (1 − β)·ℓ and μ = γ·ℓ, so small λ means a zero close to the 1-line.
//! The transform here is descriptive bookkeeping, not part of a certified
//! proof step, so it works in f64 (round-trips are tested to 10⁻¹²) —
//! unlike the exact arithmetic in [`crate::lemma`].
//!
//! The table maps λ to the claimed zero-count bound N(λ) for the λ₁ = 0.85
//! case. It is shipped data, not computed data: the companion bound
//! H₀ < 0.9 is likewise recorded as an opaque claim with no derivation
//! here. Lookups are exact-match only; the table defines no interpolation.

use thiserror::Error;

use crate::rational::{decimal_string, rat, BigRational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZeroError {
    #[error("modulus must be at least 3, got {0}")]
    InvalidModulus(u64),
    #[error("lambda = {0} is not tabulated")]
    NotTabulated(String),
}

/// λ = (1 − β)·log q, μ = γ·log q. Requires q ≥ 3.
pub fn to_lambda_mu(beta: f64, gamma: f64, q: u64) -> Result<(f64, f64), ZeroError> {
    if q < 3 {
        return Err(ZeroError::InvalidModulus(q));
    }
    let ell = (q as f64).ln();
    Ok(((1.0 - beta) * ell, gamma * ell))
}

/// β = 1 − λ/log q, γ = μ/log q. Requires q ≥ 3.
pub fn from_lambda_mu(lambda: f64, mu: f64, q: u64) -> Result<(f64, f64), ZeroError> {
    if q < 3 {
        return Err(ZeroError::InvalidModulus(q));
    }
    let ell = (q as f64).ln();
    Ok((1.0 - lambda / ell, mu / ell))
}

/// A zero of modulus q in both coordinate systems.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCoordinates {
    pub beta: f64,
    pub gamma: f64,
    pub q: u64,
    pub lambda: f64,
    pub mu: f64,
    /// ℓ = log q.
    pub ell: f64,
}

impl ZeroCoordinates {
    pub fn from_beta_gamma(beta: f64, gamma: f64, q: u64) -> Result<Self, ZeroError> {
        let (lambda, mu) = to_lambda_mu(beta, gamma, q)?;
        Ok(Self {
            beta,
            gamma,
            q,
            lambda,
            mu,
            ell: (q as f64).ln(),
        })
    }

    pub fn from_lambda_mu(lambda: f64, mu: f64, q: u64) -> Result<Self, ZeroError> {
        let (beta, gamma) = from_lambda_mu(lambda, mu, q)?;
        Ok(Self {
            beta,
            gamma,
            q,
            lambda,
            mu,
            ell: (q as f64).ln(),
        })
    }
}

/// Renders a table abscissa: minimal terminating decimal when the
/// denominator is of the form 2^a·5^b, the raw fraction otherwise.
fn lambda_label(r: &BigRational) -> String {
    let mut d = r.denom().clone();
    let mut digits = 0u32;
    for f in [2u32, 5u32] {
        let big_f = num_bigint::BigInt::from(f);
        let mut k = 0u32;
        while (&d % &big_f) == num_bigint::BigInt::from(0) {
            d /= &big_f;
            k += 1;
        }
        digits = digits.max(k);
    }
    if d == num_bigint::BigInt::from(1) {
        decimal_string(r, digits.max(1))
    } else {
        r.to_string()
    }
}

/// Pinned FNV-1a-64 digest of the shipped table's CSV body.
pub const REFERENCE_TABLE_DIGEST: u64 = 0x5a12_6754_cc18_f339;

/// The λ ↦ N(λ) table for the λ₁ = 0.85 case, with the recorded H₀ claim
/// and the λ₃ threshold 8/7 it feeds.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroDensityTable {
    lambda1: BigRational,
    entries: Vec<(BigRational, u64)>,
    h0_claim: f64,
    lambda3_threshold: BigRational,
}

impl ZeroDensityTable {
    /// The shipped reference table:
    /// (0.9, 5), (1.0, 6), (1.1, 7), (1.2, 9), (1.3, 12), (1.4, 16), (1.5, 23).
    pub fn reference() -> Self {
        let entries = [(9i64, 5u64), (10, 6), (11, 7), (12, 9), (13, 12), (14, 16), (15, 23)]
            .into_iter()
            .map(|(tenths, n)| (rat(tenths, 10), n))
            .collect();
        Self {
            lambda1: rat(17, 20),
            entries,
            h0_claim: 0.9,
            lambda3_threshold: rat(8, 7),
        }
    }

    /// A custom table with the same metadata slots as the reference one.
    pub fn new(
        lambda1: BigRational,
        entries: Vec<(BigRational, u64)>,
        h0_claim: f64,
        lambda3_threshold: BigRational,
    ) -> Self {
        Self {
            lambda1,
            entries,
            h0_claim,
            lambda3_threshold,
        }
    }

    pub fn lambda1(&self) -> &BigRational {
        &self.lambda1
    }

    pub fn entries(&self) -> &[(BigRational, u64)] {
        &self.entries
    }

    /// The claimed H₀ bound. Recorded as shipped metadata only — nothing in
    /// this crate computes or checks it.
    pub fn h0_claim(&self) -> f64 {
        self.h0_claim
    }

    pub fn lambda3_threshold(&self) -> &BigRational {
        &self.lambda3_threshold
    }

    /// Exact-match lookup of N(λ). No interpolation: any λ that is not a
    /// tabulated abscissa is an error.
    pub fn n_of_lambda(&self, lambda: &BigRational) -> Result<u64, ZeroError> {
        self.entries
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|&(_, n)| n)
            .ok_or_else(|| ZeroError::NotTabulated(lambda_label(lambda)))
    }

    /// Structural validation: abscissae strictly increasing, counts
    /// nondecreasing, and (for a nonempty table) the λ₃ threshold lying
    /// strictly inside the tabulated range. An empty table is vacuously
    /// valid.
    pub fn validate(&self) -> bool {
        let monotone = self
            .entries
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1);
        let threshold_in_range = match (self.entries.first(), self.entries.last()) {
            (Some(first), Some(last)) => {
                first.0 < self.lambda3_threshold && self.lambda3_threshold < last.0
            }
            _ => true,
        };
        monotone && threshold_in_range
    }

    /// CSV body, one `lambda,N` row per entry (no header).
    pub fn csv_body(&self) -> String {
        let mut out = String::new();
        for (lambda, n) in &self.entries {
            out.push_str(&lambda_label(lambda));
            out.push(',');
            out.push_str(&n.to_string());
            out.push('\n');
        }
        out
    }

    /// FNV-1a-64 digest of the CSV body; the shipped table must hash to
    /// [`REFERENCE_TABLE_DIGEST`].
    pub fn digest(&self) -> u64 {
        const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = FNV_OFFSET;
        for byte in self.csv_body().bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(FNV_PRIME);
        }
        h
    }

    /// True when this table is byte-identical (as CSV) to the shipped one.
    pub fn provenance_ok(&self) -> bool {
        self.digest() == REFERENCE_TABLE_DIGEST
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_basics() {
        assert_eq!(to_lambda_mu(1.0, 0.0, 100), Ok((0.0, 0.0)));
        let q = 97;
        let ell = (q as f64).ln();
        let (lambda, _mu) = to_lambda_mu(1.0 - 0.85 / ell, 0.0, q).unwrap();
        assert!((lambda - 0.85).abs() < 1e-12);
    }

    #[test]
    fn transform_rejects_small_moduli() {
        assert_eq!(to_lambda_mu(0.5, 0.0, 2), Err(ZeroError::InvalidModulus(2)));
        assert_eq!(
            from_lambda_mu(0.5, 0.0, 0),
            Err(ZeroError::InvalidModulus(0))
        );
    }

    #[test]
    fn round_trip_within_tolerance() {
        for q in [3u64, 97, 5000, 1_000_003] {
            for (beta, gamma) in [(0.91, 3.5), (1.0, 0.0), (0.5, -2.0), (0.999, 0.001)] {
                let (lambda, mu) = to_lambda_mu(beta, gamma, q).unwrap();
                let (beta2, gamma2) = from_lambda_mu(lambda, mu, q).unwrap();
                assert!((beta - beta2).abs() < 1e-12, "beta at q={q}");
                assert!((gamma - gamma2).abs() < 1e-12, "gamma at q={q}");
            }
        }
    }

    #[test]
    fn linearity_of_the_transform() {
        let q = 1009;
        // mu is linear in gamma.
        let (_, mu1) = to_lambda_mu(0.9, 1.25, q).unwrap();
        let (_, mu3) = to_lambda_mu(0.9, 3.75, q).unwrap();
        assert!((mu3 - 3.0 * mu1).abs() < 1e-12);
        // lambda is affine in beta with slope -ell.
        let ell = (q as f64).ln();
        let (l1, _) = to_lambda_mu(0.91, 0.0, q).unwrap();
        let (l2, _) = to_lambda_mu(0.73, 0.0, q).unwrap();
        assert!((l2 - l1 - (0.91 - 0.73) * ell).abs() < 1e-12);
    }

    #[test]
    fn zero_coordinates_round_trip() {
        let zc = ZeroCoordinates::from_beta_gamma(0.93, 1.7, 4001).unwrap();
        assert!((zc.lambda - (1.0 - zc.beta) * zc.ell).abs() < 1e-15);
        let back = ZeroCoordinates::from_lambda_mu(zc.lambda, zc.mu, 4001).unwrap();
        assert!((back.beta - 0.93).abs() < 1e-12);
        assert!((back.gamma - 1.7).abs() < 1e-12);
    }

    #[test]
    fn reference_table_contents() {
        let table = ZeroDensityTable::reference();
        assert_eq!(table.n_of_lambda(&rat(9, 10)), Ok(5));
        assert_eq!(table.n_of_lambda(&rat(3, 2)), Ok(23));
        assert_eq!(
            table.n_of_lambda(&rat(19, 20)),
            Err(ZeroError::NotTabulated("0.95".into()))
        );
        assert_eq!(table.entries().len(), 7);
        assert_eq!(table.lambda1(), &rat(17, 20));
        assert_eq!(table.h0_claim(), 0.9);
    }

    #[test]
    fn reference_table_validates_and_hashes() {
        let table = ZeroDensityTable::reference();
        assert!(table.validate());
        assert!(table.provenance_ok());
        assert_eq!(table.digest(), REFERENCE_TABLE_DIGEST);
    }

    #[test]
    fn edited_table_fails_provenance_and_validation() {
        let mut entries = ZeroDensityTable::reference().entries().to_vec();
        entries[3] = (rat(12, 10), 5); // (1.2, 9) -> (1.2, 5): breaks monotone N
        let table = ZeroDensityTable::new(rat(17, 20), entries, 0.9, rat(8, 7));
        assert!(!table.validate());
        assert!(!table.provenance_ok());
    }

    #[test]
    fn empty_table_is_vacuously_valid() {
        let table = ZeroDensityTable::new(rat(17, 20), Vec::new(), 0.9, rat(8, 7));
        assert!(table.validate());
        assert!(!table.provenance_ok());
    }

    #[test]
    fn threshold_sits_between_tabulated_abscissae() {
        let table = ZeroDensityTable::reference();
        let t = table.lambda3_threshold();
        assert!(rat(11, 10) < *t && *t < rat(12, 10));
        // 8/7 < 23/20, exactly (160 < 161).
        assert!(*t < rat(23, 20));
    }

    #[test]
    fn csv_body_is_the_seven_rows() {
        assert_eq!(
            ZeroDensityTable::reference().csv_body(),
            "0.9,5\n1.0,6\n1.1,7\n1.2,9\n1.3,12\n1.4,16\n1.5,23\n"
        );
    }

    #[test]
    fn lambda_labels() {
        assert_eq!(lambda_label(&rat(9, 10)), "0.9");
        assert_eq!(lambda_label(&rat(1, 1)), "1.0");
        assert_eq!(lambda_label(&rat(3, 8)), "0.375");
        assert_eq!(lambda_label(&rat(1, 3)), "1/3");
    }
}
