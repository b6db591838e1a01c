//! Deleted interpolation of unigram, bigram and trigram tag estimates.

use std::cmp::Ordering;

use super::counts::CountTables;

/// Linear interpolation weights, summing to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationWeights {
    pub unigram: f64,
    pub bigram: f64,
    pub trigram: f64,
}

impl InterpolationWeights {
    /// Normalizes raw accumulators. All-zero accumulators yield `(1, 0, 0)`.
    pub fn from_accumulators(acc: [u64; 3]) -> Self {
        let total = acc.iter().sum::<u64>();
        if total == 0 {
            return InterpolationWeights {
                unigram: 1.0,
                bigram: 0.0,
                trigram: 0.0,
            };
        }
        let total = total as f64;
        InterpolationWeights {
            unigram: acc[0] as f64 / total,
            bigram: acc[1] as f64 / total,
            trigram: acc[2] as f64 / total,
        }
    }

    pub fn sum(&self) -> f64 {
        self.unigram + self.bigram + self.trigram
    }
}

/// Result of [`deleted_interpolation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interpolation {
    /// Raw `(λ1, λ2, λ3)` accumulators before normalization.
    pub accumulators: [u64; 3],
    pub weights: InterpolationWeights,
    /// Set when no trigram contributed any mass; weights fall back to the
    /// unigram model.
    pub degenerate: bool,
}

/// Non-negative fraction compared exactly. A zero denominator or negative
/// numerator collapses to zero.
#[derive(Debug, Clone, Copy)]
struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    fn leave_one_out(num: u64, den: u64) -> Self {
        if num == 0 || den <= 1 {
            Ratio { num: 0, den: 1 }
        } else {
            Ratio {
                num: num - 1,
                den: den - 1,
            }
        }
    }

    fn cmp(self, other: Ratio) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

/// Computes the interpolation weights by leave-one-out counting.
///
/// For every trigram `(t1, t2, t3)` with count `c`, the three estimates
/// `(f(t1,t2,t3)-1)/(f(t1,t2)-1)`, `(f(t2,t3)-1)/(f(t2)-1)` and
/// `(f(t3)-1)/(N-1)` are compared and `c` is credited to the weight of the
/// largest. Ties go to the higher-order estimate. Comparisons are exact.
pub fn deleted_interpolation(counts: &CountTables) -> Interpolation {
    let n = counts.token_total();
    let mut acc = [0u64; 3];
    for ((t1, t2, t3), c) in counts.trigrams() {
        let tri = Ratio::leave_one_out(c, counts.bigram(t1, t2));
        let bi = Ratio::leave_one_out(counts.bigram(t2, t3), counts.unigram(t2));
        let uni = Ratio::leave_one_out(counts.unigram(t3), n);

        let slot = if tri.cmp(bi).is_ge() && tri.cmp(uni).is_ge() {
            2
        } else if bi.cmp(uni).is_ge() {
            1
        } else {
            0
        };
        acc[slot] += c;
    }
    Interpolation {
        accumulators: acc,
        weights: InterpolationWeights::from_accumulators(acc),
        degenerate: acc.iter().all(|&a| a == 0),
    }
}
