//! Exact cubic-field arithmetic with a certified inequality checker, and a
//! segmented-sieve scanner for least primes in arithmetic progressions.
//!
//! The crate has two halves that meet in the CLI:
//!
//! * an exact-computation half — arbitrary-precision rationals, the field
//!   Q(ρ) with ρ = ∛3 ([`cubic`]), and a verifier ([`lemma`]) that certifies
//!   sign and monotonicity facts about a cubic polynomial over that field
//!   with no floating point anywhere in the decision path;
//! * a scanning half ([`scanner`], [`sieve`], [`primality`], [`factor`]) that
//!   computes P(a, q), the least prime in the progression a mod q, for every
//!   residue of a modulus range and reports how the observed exponents
//!   log P / log q compare against a configured bound;
//! * plus [`zeros`], small bookkeeping around zero-coordinate rescaling and
//!   a fixed reference table.

pub mod cubic;
pub mod factor;
pub mod lemma;
pub mod primality;
pub mod rational;
pub mod scanner;
pub mod sieve;
pub mod zeros;

pub use cubic::{CubicError, CubicNumber, RhoEnclosure};
pub use lemma::{LemmaParameters, LemmaReport, Verdict};
pub use rational::BigRational;
pub use scanner::{ScanConfig, ScanRecord, ScanStatus, ScanSummary};
pub use zeros::{ZeroCoordinates, ZeroDensityTable};
