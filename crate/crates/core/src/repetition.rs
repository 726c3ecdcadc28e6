//! Exact fractional-power detection.
//!
//! The exponent of a word is its length over its shortest period. A word
//! contains a forbidden repetition iff some factor's exponent violates the
//! bound, and it suffices to look at factors that are maximal for a given
//! start and period: the factor starting at `i` with period `p` extends for
//! `p + lce(i, i + p)` letters.
//!
//! Two tiers live here. The fast checker scans each period once with
//! sampled run detection; [`reference`] compares letters directly for every
//! start and period and serves as the oracle in tests.

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::words::{count_occurrences, Exponent, PowerBound, Word};

/// The largest factor exponent of a word and where it is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentReport {
    pub max_exponent: Exponent,
    pub witness_period: usize,
    /// Half-open `(start, end)` span of the attaining factor.
    pub witness_span: (usize, usize),
}

impl ExponentReport {
    fn new(start: usize, period: usize, extension: usize) -> Self {
        ExponentReport {
            max_exponent: Exponent::new((period + extension) as u64, period as u64),
            witness_period: period,
            witness_span: (start, start + period + extension),
        }
    }

    /// Orders by exponent, then prefers the smaller start, then the smaller
    /// period.
    fn beats(&self, other: &ExponentReport) -> bool {
        use std::cmp::Ordering::*;
        match self.max_exponent.cmp(&other.max_exponent) {
            Greater => true,
            Less => false,
            Equal => {
                (self.witness_span.0, self.witness_period)
                    < (other.witness_span.0, other.witness_period)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.witness_span.1 - self.witness_span.0
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Shortest period of a nonempty word, from its longest proper border.
pub fn shortest_period(w: &[u8]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail[n - 1]
}

pub fn word_exponent(w: &[u8]) -> Result<Exponent> {
    if w.is_empty() {
        return Err(Error::InvalidArgument(
            "the exponent of the empty word is undefined".into(),
        ));
    }
    Ok(Exponent::new(w.len() as u64, shortest_period(w) as u64))
}

pub fn max_factor_exponent(w: &[u8]) -> Result<ExponentReport> {
    max_factor_exponent_with(w, Execution::default())
}

pub fn max_factor_exponent_with(w: &[u8], exec: Execution) -> Result<ExponentReport> {
    let n = w.len();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "maximal exponent of the empty word is undefined".into(),
        ));
    }
    let per_period = par::map_range(exec, n, |i| longest_run(w, i + 1));
    let mut best: Option<ExponentReport> = None;
    for (i, (start, ext)) in per_period.into_iter().enumerate() {
        let cand = ExponentReport::new(start, i + 1, ext);
        if best.as_ref().is_none_or(|b| cand.beats(b)) {
            best = Some(cand);
        }
    }
    Ok(best.expect("nonempty word has a period"))
}

/// Earliest longest run of positions `i` with `w[i] == w[i + p]`, as
/// `(start, length)`.
fn longest_run(w: &[u8], p: usize) -> (usize, usize) {
    let m = w.len().saturating_sub(p);
    let (mut best_start, mut best_len) = (0, 0);
    let mut i = 0;
    while i < m {
        if w[i] != w[i + p] {
            i += 1;
            continue;
        }
        let start = i;
        while i < m && w[i] == w[i + p] {
            i += 1;
        }
        if i - start > best_len {
            best_start = start;
            best_len = i - start;
        }
    }
    (best_start, best_len)
}

pub fn violates(bound: PowerBound, beta: Exponent) -> bool {
    bound.violated_by(beta)
}

pub fn is_power_free(w: &[u8], bound: PowerBound) -> bool {
    is_power_free_with(w, bound, Execution::default())
}

// Below this length the per-period fan-out costs more than it saves.
const PARALLEL_MIN_LEN: usize = 2048;

pub fn is_power_free_with(w: &[u8], bound: PowerBound, exec: Execution) -> bool {
    let n = w.len();
    if n == 0 {
        return true;
    }
    // p + need(p) is strictly increasing in p, so the admissible periods form
    // a prefix 1..=max_period.
    let mut max_period = 0;
    while max_period < n {
        let p = max_period + 1;
        let need = bound.min_violating_extension(p);
        if need == 0 {
            return false;
        }
        if p.saturating_add(need) > n {
            break;
        }
        max_period = p;
    }
    let exec = if n < PARALLEL_MIN_LEN {
        Execution::Sequential
    } else {
        exec
    };
    !par::any_in(exec, 1..max_period + 1, |p| {
        has_run(w, p, bound.min_violating_extension(p))
    })
}

/// Whether some run of `need` consecutive positions `i` has
/// `w[i] == w[i + p]`.
///
/// Every such run contains a multiple of `need` (offset by `need - 1`), so
/// only those sample positions seed an extension.
fn has_run(w: &[u8], p: usize, need: usize) -> bool {
    let m = w.len() - p;
    if need == 0 || need > m {
        return need == 0;
    }
    let matches = |i: usize| w[i] == w[i + p];
    let mut left_limit = 0;
    let mut j = need - 1;
    while j < m {
        if matches(j) {
            // A run reaching back past the previous sample was already
            // examined from there.
            let mut a = j;
            while a > left_limit && matches(a - 1) {
                a -= 1;
            }
            let mut b = j + 1;
            while b < m && b - a < need && matches(b) {
                b += 1;
            }
            if b - a >= need {
                return true;
            }
        }
        left_limit = j + 1;
        j += need;
    }
    false
}

/// Whether `w` has a forbidden suffix. When `w` minus its last letter is
/// already power-free this decides power-freeness of `w`.
pub fn has_violating_suffix(w: &[u8], bound: PowerBound) -> bool {
    let n = w.len();
    for p in 1..=n {
        let need = bound.min_violating_extension(p);
        if p.saturating_add(need) > n {
            break;
        }
        let mut run = 0;
        while run < need && w[n - 1 - p - run] == w[n - 1 - run] {
            run += 1;
        }
        if run >= need {
            return true;
        }
    }
    false
}

/// A boundary square: `r r` is a suffix of `u · v_prefix` and is longer than
/// `v_prefix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiWitness {
    pub r: Word,
    pub v_prefix: Word,
}

/// Searches for a boundary square, shortest `v_prefix` first and then
/// shortest `r`. `None` certifies that `uv` is power-free for every bound
/// with exponent at least 2 that `u` and `v` avoid.
pub fn find_pi_witness(u: &Word, v: &Word) -> Option<PiWitness> {
    let joined = u.concat(v);
    for vlen in 1..=v.len() {
        let s = &joined[..u.len() + vlen];
        let n = s.len();
        for rlen in vlen / 2 + 1..=n / 2 {
            if s[n - 2 * rlen..n - rlen] == s[n - rlen..] {
                return Some(PiWitness {
                    r: joined.slice(n - rlen..n),
                    v_prefix: v.slice(0..vlen),
                });
            }
        }
    }
    None
}

/// Sufficient check that `uv` avoids `bound`: an empty boundary-square set
/// settles it, otherwise the full checker decides.
pub fn assert_concat_safe(u: &Word, v: &Word, bound: PowerBound) -> bool {
    let shortcut_sound = bound.alpha() >= Exponent::from_integer(2);
    if shortcut_sound && find_pi_witness(u, v).is_none() {
        return true;
    }
    is_power_free(&u.concat(v), bound)
}

/// Reference checker: direct letter comparison for every start and period.
///
/// Cubic in the word length; used to cross-validate the fast tier.
pub mod reference {
    use super::*;

    pub fn max_factor_exponent(w: &[u8]) -> Option<ExponentReport> {
        let n = w.len();
        let mut best: Option<ExponentReport> = None;
        for start in 0..n {
            for period in 1..=n - start {
                let mut ext = 0;
                while start + period + ext < n && w[start + ext] == w[start + period + ext] {
                    ext += 1;
                }
                let cand = ExponentReport::new(start, period, ext);
                if best.as_ref().is_none_or(|b| cand.beats(b)) {
                    best = Some(cand);
                }
            }
        }
        best
    }

    /// Stops at the first forbidden factor; exponents are compared by
    /// integer cross-multiplication.
    pub fn is_power_free(w: &[u8], bound: PowerBound) -> bool {
        let a = *bound.alpha().numer() as u128;
        let b = *bound.alpha().denom() as u128;
        let n = w.len();
        for start in 0..n {
            for period in 1..=n - start {
                let mut ext = 0;
                while start + period + ext < n && w[start + ext] == w[start + period + ext] {
                    ext += 1;
                }
                let lhs = (period + ext) as u128 * b;
                let rhs = a * period as u128;
                if lhs > rhs || (lhs == rhs && !bound.plus()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Occurrence count helper re-exported for callers that work on slices.
pub fn occurrences(w: &[u8], f: &[u8]) -> usize {
    count_occurrences(w, f)
}
