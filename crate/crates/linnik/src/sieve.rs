//! Segmented sieve of Eratosthenes.
//!
//! Two consumers drive the design. The modulus scanner walks *all* primes in
//! increasing order until every residue class of a modulus has seen one, so
//! [`SegmentedPrimes`] is an unbounded iterator that sieves fixed-size
//! segments lazily and grows its base-prime table by doubling as the
//! frontier passes the square of its reach. The single-progression search
//! in [`crate::scanner`] sieves index space of one progression instead and
//! only needs [`simple_sieve`] for its base primes.

/// All primes p <= limit, by a plain monolithic sieve.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut p = 2usize;
    while p * p <= n {
        if !composite[p] {
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| !composite[i]).map(|i| i as u64).collect()
}

/// Primes in [lo, hi), given base primes covering every p with p² < hi.
///
/// Standard segment rule: for each base prime p, cross multiples of p from
/// max(p², first multiple ≥ lo) upward. A composite n has a prime factor
/// p ≤ √n, and is then a multiple ≥ p² of it, so nothing composite survives;
/// primes are never crossed because crossing starts at p².
pub fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    if hi <= lo {
        return Vec::new();
    }
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p.saturating_mul(p) >= hi {
            break;
        }
        let first_multiple = lo.div_ceil(p) * p;
        let mut m = first_multiple.max(p * p);
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .filter(|&n| n >= 2)
        .collect()
}

/// All primes below `limit`, sieved in segments of `segment_len` values.
/// The result is independent of `segment_len`.
pub fn segmented_primes_below(limit: u64, segment_len: u64) -> Vec<u64> {
    assert!(segment_len >= 2);
    SegmentedPrimes::with_segment_len(segment_len)
        .take_while(|&p| p < limit)
        .collect()
}

const DEFAULT_SEGMENT_LEN: u64 = 1 << 16;

/// Unbounded iterator over the primes 2, 3, 5, … via lazy segmented sieving.
pub struct SegmentedPrimes {
    segment_len: u64,
    /// Base primes, covering every p with p <= base_limit.
    base: Vec<u64>,
    base_limit: u64,
    /// Start of the next segment to sieve.
    frontier: u64,
    buffer: std::vec::IntoIter<u64>,
}

impl SegmentedPrimes {
    pub fn new() -> Self {
        Self::with_segment_len(DEFAULT_SEGMENT_LEN)
    }

    pub fn with_segment_len(segment_len: u64) -> Self {
        assert!(segment_len >= 2);
        Self {
            segment_len,
            base: Vec::new(),
            base_limit: 1,
            frontier: 2,
            buffer: Vec::new().into_iter(),
        }
    }

    fn refill(&mut self) {
        let lo = self.frontier;
        let hi = lo.saturating_add(self.segment_len);
        let need = hi.isqrt() + 1;
        if need > self.base_limit {
            // Double so base growth costs stay amortized.
            self.base_limit = need.max(self.base_limit * 2).max(1 << 10);
            self.base = simple_sieve(self.base_limit);
        }
        self.buffer = sieve_segment(lo, hi, &self.base).into_iter();
        self.frontier = hi;
    }
}

impl Default for SegmentedPrimes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for SegmentedPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(p) = self.buffer.next() {
                return Some(p);
            }
            self.refill();
        }
    }
}
