//! Least primes in arithmetic progressions, per residue and per modulus
//! range.
//!
//! [`least_prime_in_ap`] finds P(a, q), the least prime ≡ a (mod q), by
//! sieving the index space of the single progression a, a+q, a+2q, …: for a
//! base prime p ∤ q the indices j with p | a + jq form exactly one residue
//! class j ≡ −a·q⁻¹ (mod p), so progression segments sieve like integer
//! segments. Primes p | q never divide any progression value (gcd(a,q) = 1)
//! and are skipped.
//!
//! [`scan_modulus`] wants the worst residue of a modulus, so it instead
//! walks *all* primes upward, marking each coprime residue the first time a
//! prime lands on it, and stops when all φ(q) classes are covered. The last
//! class covered is the worst one; ties cannot occur because distinct
//! residues are covered by distinct primes.
//!
//! The search is capped at min(C·q^E, absolute_cap). Least primes show up
//! far below q² in practice, so the cap is a formal guard; if it is ever
//! hit the record says so loudly (`CAP_EXCEEDED`) instead of truncating
//! silently.
//!
//! [`scan_range`] applies the modulus scan across a q-range, optionally
//! filtered to moduli whose cubic part q₃ stays under a bound, and reports
//! how the observed exponents log P(a,q) / log q compare with the
//! configured bound. Range chunks are scanned in parallel; each modulus is
//! self-contained and results are emitted in ascending q, so output does
//! not depend on the worker count.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::factor::{cubic_part, factor_u64};
use crate::primality::pow_mod;
use crate::sieve::{simple_sieve, SegmentedPrimes};

/// Largest admissible search cap: the signed 64-bit range.
pub const MAX_CAP: u64 = i64::MAX as u64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScanError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("invalid residue {a} mod {q}: need 0 < a < q and gcd(a, q) = 1")]
    InvalidResidue { a: u64, q: u64 },
    #[error("cap {0} exceeds the signed 64-bit range")]
    CapOutOfRange(u64),
    #[error("invalid range [{q_min}, {q_max}]: need 3 <= q_min <= q_max")]
    InvalidRange { q_min: u64, q_max: u64 },
    #[error("exponent bound must exceed 1, got {0}")]
    InvalidExponentBound(f64),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

const PROGRESSION_SEGMENT: u64 = 1 << 14;

/// The least prime p ≡ a (mod q) with p ≤ cap, or `None` if there is none
/// in range.
///
/// Requires q ≥ 2, 0 < a < q, gcd(a, q) = 1 and cap within the signed
/// 64-bit range.
pub fn least_prime_in_ap(a: u64, q: u64, cap: u64) -> Result<Option<u64>, ScanError> {
    least_prime_in_ap_segmented(a, q, cap, PROGRESSION_SEGMENT)
}

/// [`least_prime_in_ap`] with an explicit segment length; the answer is
/// independent of it.
fn least_prime_in_ap_segmented(
    a: u64,
    q: u64,
    cap: u64,
    seg_len: u64,
) -> Result<Option<u64>, ScanError> {
    if q < 2 {
        return Err(ScanError::InvalidModulus(q));
    }
    if a == 0 || a >= q || gcd(a, q) != 1 {
        return Err(ScanError::InvalidResidue { a, q });
    }
    if cap > MAX_CAP {
        return Err(ScanError::CapOutOfRange(cap));
    }

    let mut base: Vec<u64> = Vec::new();
    let mut base_limit: u64 = 1;

    let mut seg_start: u64 = 0; // first index of the current segment
    loop {
        let first_value = a as u128 + seg_start as u128 * q as u128;
        if first_value > cap as u128 {
            return Ok(None);
        }
        let last_value = a as u128 + (seg_start + seg_len - 1) as u128 * q as u128;

        // Base primes must reach sqrt of the largest value in the segment.
        let need = (last_value.isqrt() as u64) + 1;
        if need > base_limit {
            base_limit = need.max(base_limit * 2).max(1 << 10);
            base = simple_sieve(base_limit);
        }

        let mut composite = vec![false; seg_len as usize];
        if seg_start == 0 && a == 1 {
            composite[0] = true; // the value 1 is not prime
        }
        for &p in &base {
            if (p as u128) * (p as u128) > last_value {
                break;
            }
            if q.is_multiple_of(p) {
                continue;
            }
            // j ≡ -a * q^{-1} (mod p) are the indices divisible by p.
            let q_inv = pow_mod(q % p, p - 2, p);
            let j_p = ((p - a % p) % p) as u128 * q_inv as u128 % p as u128;
            let j_p = j_p as u64;
            // Start crossing where the value reaches p², never below the
            // segment start; p itself (if it lies on the progression) stays.
            let p_sq = p * p;
            let j_value_floor = if (p_sq as u128) <= a as u128 {
                0
            } else {
                (p_sq - a).div_ceil(q)
            };
            let mut j = j_value_floor.max(seg_start);
            j += (j_p + p - j % p) % p;
            while j < seg_start + seg_len {
                composite[(j - seg_start) as usize] = true;
                j += p;
            }
        }

        for (offset, &is_comp) in composite.iter().enumerate() {
            if is_comp {
                continue;
            }
            let value = a as u128 + (seg_start + offset as u64) as u128 * q as u128;
            if value > cap as u128 {
                return Ok(None);
            }
            return Ok(Some(value as u64));
        }
        seg_start += seg_len;
    }
}

/// Search status of one modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanStatus {
    Ok,
    CapExceeded,
}

impl fmt::Display for ScanStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanStatus::Ok => write!(f, "OK"),
            ScanStatus::CapExceeded => write!(f, "CAP_EXCEEDED"),
        }
    }
}

/// Per-modulus result: the cube decomposition, the residue whose least
/// prime is largest, that prime, and the exponent log P / log q.
///
/// Under `CAP_EXCEEDED`, `worst_a` is the smallest residue still uncovered
/// when the cap was reached and `least_prime`/`exponent` are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub q: u64,
    pub q3: u64,
    pub q2: u64,
    pub worst_a: u64,
    pub least_prime: u64,
    pub exponent: f64,
    pub status: ScanStatus,
}

/// Exact header of the CSV emission.
pub const CSV_HEADER: &str = "q,q3,q2,worst_a,least_prime,exponent,status";

impl ScanRecord {
    /// One CSV row matching [`CSV_HEADER`]; the exponent carries six
    /// decimal places.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.6},{}",
            self.q, self.q3, self.q2, self.worst_a, self.least_prime, self.exponent, self.status
        )
    }
}

/// Scan configuration; see the field docs for defaults.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub q_min: u64,
    pub q_max: u64,
    /// Keep only moduli with cubic part q₃ ≤ bound, when set.
    pub cubic_bound: Option<u64>,
    /// Exponent of the cap and of the violation test (default 4.5).
    pub exponent_bound: f64,
    /// Multiplicative constant of the cap and violation test (default 1).
    pub constant_c: f64,
    /// Hard ceiling keeping the search inside 64-bit reach (default 2⁶³−1).
    pub absolute_cap: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            q_min: 3,
            q_max: 100,
            cubic_bound: None,
            exponent_bound: 4.5,
            constant_c: 1.0,
            absolute_cap: MAX_CAP,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), ScanError> {
        if self.q_min < 3 || self.q_min > self.q_max {
            return Err(ScanError::InvalidRange {
                q_min: self.q_min,
                q_max: self.q_max,
            });
        }
        if !self.exponent_bound.is_finite() || self.exponent_bound <= 1.0 {
            return Err(ScanError::InvalidExponentBound(self.exponent_bound));
        }
        if self.absolute_cap > MAX_CAP {
            return Err(ScanError::CapOutOfRange(self.absolute_cap));
        }
        Ok(())
    }

    /// The effective search cap for modulus q: min(C·q^E, absolute_cap).
    pub fn cap_for(&self, q: u64) -> u64 {
        let raw = self.constant_c * (q as f64).powf(self.exponent_bound);
        if !raw.is_finite() || raw >= self.absolute_cap as f64 {
            self.absolute_cap
        } else {
            raw as u64
        }
    }

    /// True when the theorem-shaped bound, not the 64-bit guard, limits the
    /// search at modulus q.
    fn exponent_bound_binds(&self, q: u64) -> bool {
        self.cap_for(q) < self.absolute_cap
    }
}

/// Euler's totient from the prime factorization.
fn euler_phi(q: u64) -> u64 {
    factor_u64(q)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Scans one modulus: walks primes upward, recording the first prime in
/// each coprime residue class, until all φ(q) classes are covered or the
/// cap is passed. Requires q ≥ 3.
pub fn scan_modulus(q: u64, config: &ScanConfig) -> ScanRecord {
    assert!(q >= 3, "scan_modulus requires q >= 3");
    let (q3, q2) = cubic_part(q);
    let cap = config.cap_for(q);
    let phi = euler_phi(q);

    let mut first_prime = vec![0u64; q as usize];
    let mut covered = 0u64;
    let mut last_covered = (0u64, 0u64);
    let mut status = ScanStatus::CapExceeded;

    for p in SegmentedPrimes::new() {
        if p > cap {
            break;
        }
        if q.is_multiple_of(p) {
            continue;
        }
        let r = (p % q) as usize;
        if first_prime[r] == 0 {
            first_prime[r] = p;
            covered += 1;
            last_covered = (r as u64, p);
            if covered == phi {
                status = ScanStatus::Ok;
                break;
            }
        }
    }

    match status {
        ScanStatus::Ok => {
            let (worst_a, least_prime) = last_covered;
            ScanRecord {
                q,
                q3,
                q2,
                worst_a,
                least_prime,
                exponent: (least_prime as f64).ln() / (q as f64).ln(),
                status,
            }
        }
        ScanStatus::CapExceeded => {
            let worst_a = (1..q)
                .find(|&r| gcd(r, q) == 1 && first_prime[r as usize] == 0)
                .unwrap_or(0);
            ScanRecord {
                q,
                q3,
                q2,
                worst_a,
                least_prime: 0,
                exponent: 0.0,
                status,
            }
        }
    }
}

/// Range-scan summary: the largest exponent seen, where it occurred, and
/// how many records broke the bound P(a,q) ≤ C·q^E.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSummary {
    pub records: u64,
    pub max_exponent: f64,
    pub max_exponent_q: Option<u64>,
    pub violations: u64,
    pub cap_exceeded: u64,
}

impl Default for ScanSummary {
    fn default() -> Self {
        Self {
            records: 0,
            max_exponent: 0.0,
            max_exponent_q: None,
            violations: 0,
            cap_exceeded: 0,
        }
    }
}

impl ScanSummary {
    fn absorb(&mut self, rec: &ScanRecord, config: &ScanConfig) {
        self.records += 1;
        match rec.status {
            ScanStatus::Ok => {
                if rec.exponent > self.max_exponent {
                    self.max_exponent = rec.exponent;
                    self.max_exponent_q = Some(rec.q);
                }
                let bound = config.constant_c * (rec.q as f64).powf(config.exponent_bound);
                if rec.least_prime as f64 > bound {
                    self.violations += 1;
                }
            }
            ScanStatus::CapExceeded => {
                self.cap_exceeded += 1;
                // The least prime sits above the cap; when the cap came from
                // the exponent bound itself, that is a violation.
                if config.exponent_bound_binds(rec.q) {
                    self.violations += 1;
                }
            }
        }
    }
}

/// Granularity of the parallel range scan; results stream in ascending q
/// one chunk at a time.
const RANGE_CHUNK: u64 = 64;

/// Runs [`scan_modulus`] over every q in the configured range (skipping
/// moduli filtered out by `cubic_bound`) and feeds each record, in
/// ascending q, to `sink`. Chunks of the range are scanned on the rayon
/// pool of the caller; every chunk is self-contained, so the records —
/// and therefore the emitted bytes — do not depend on the worker count.
pub fn scan_range_with<F>(config: &ScanConfig, mut sink: F) -> Result<ScanSummary, ScanError>
where
    F: FnMut(&ScanRecord),
{
    config.validate()?;
    let mut summary = ScanSummary::default();
    let mut chunk_start = config.q_min;
    while chunk_start <= config.q_max {
        let chunk_end = config.q_max.min(chunk_start.saturating_add(RANGE_CHUNK - 1));
        let records: Vec<ScanRecord> = (chunk_start..=chunk_end)
            .into_par_iter()
            .filter(|&q| match config.cubic_bound {
                Some(bound) => cubic_part(q).0 <= bound,
                None => true,
            })
            .map(|q| scan_modulus(q, config))
            .collect();
        for rec in &records {
            summary.absorb(rec, config);
            sink(rec);
        }
        chunk_start = chunk_end + 1;
    }
    Ok(summary)
}

/// Buffered variant of [`scan_range_with`].
pub fn scan_range(config: &ScanConfig) -> Result<(Vec<ScanRecord>, ScanSummary), ScanError> {
    let mut records = Vec::new();
    let summary = scan_range_with(config, |rec| records.push(rec.clone()))?;
    Ok((records, summary))
}
