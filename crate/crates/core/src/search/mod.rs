//! Exact worst-case analysis through the GF(2) switch code.
//!
//! The configurations reachable from `c` are exactly the coset `c + C`,
//! where `C` is the span of the line vectors. The best reachable lit count is
//! the minimum weight in that coset, and the worst case over all starting
//! configurations is the covering radius of `C`.
//!
//! Enumerations split their index range into contiguous blocks, one per
//! worker, and merge with order-independent operations (elementwise minimum,
//! sums, lexicographic minimum), so results never depend on `workers`.

mod code;
mod conjecture;
mod coset;
mod worst;

pub use code::SwitchCode;
pub use conjecture::{conjecture_check, max_caps, CapSearch, ConjectureReport};
pub use coset::{coset_min_weight, is_reducible, Analyzer, CosetMethod, CosetMin, CosetTable, Reducibility};
pub use worst::{worst_case, WorstCaseReport, MAX_WITNESSES};

use crate::error::Result;
use crate::geometry::IncidenceStructure;

/// Hard ceiling on enumeration sizes, in bits (`2^bits` items).
pub const MAX_ENUM_BITS: u32 = 28;

/// Environment variable that may lower, never raise, [`MAX_ENUM_BITS`].
pub const MAX_BITS_ENV: &str = "PLANESWITCH_MAX_BITS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    pub max_bits: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            max_bits: MAX_ENUM_BITS,
        }
    }
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions {
            workers: workers.max(1),
            ..Default::default()
        }
    }

    /// Applies `PLANESWITCH_MAX_BITS` when it parses and is below the current cap.
    pub fn from_env(mut self) -> Self {
        if let Some(v) = std::env::var(MAX_BITS_ENV).ok().and_then(|v| v.trim().parse::<u32>().ok()) {
            self.max_bits = self.max_bits.min(v);
        }
        self.max_bits = self.max_bits.min(MAX_ENUM_BITS);
        self
    }
}

/// Reduced basis of the switch code.
pub fn switch_code(s: &IncidenceStructure) -> Result<SwitchCode> {
    SwitchCode::new(s)
}

/// Runs `f` on `workers` contiguous blocks of `0..total` and returns the
/// per-block results in block order.
pub(crate) fn partitioned<T, F>(total: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let workers = (workers.max(1) as u64).min(total.max(1));
    let block = total.div_ceil(workers);
    let ranges: Vec<(u64, u64)> = (0..workers)
        .map(|w| (w * block, ((w + 1) * block).min(total)))
        .filter(|(a, b)| a < b)
        .collect();
    if ranges.len() <= 1 {
        return ranges.into_iter().map(|(a, b)| f(a, b)).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(a, b)| {
                let f = &f;
                scope.spawn(move || f(a, b))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_covers_range_in_order() {
        for workers in [1, 3, 8, 100] {
            let parts = partitioned(37, workers, |a, b| (a, b));
            assert_eq!(parts.first().unwrap().0, 0);
            assert_eq!(parts.last().unwrap().1, 37);
            assert!(parts.windows(2).all(|w| w[0].1 == w[1].0));
        }
        assert!(partitioned(0, 4, |a, b| b - a).is_empty());
    }
}
