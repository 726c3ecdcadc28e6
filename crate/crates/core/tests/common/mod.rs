//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's checkers.
#![allow(dead_code)]

use powerfree::words::{Alphabet, PowerBound, Word};

/// Brute force: every factor, every period, letter by letter.
pub fn naive_power_free(w: &[u8], bound: PowerBound) -> bool {
    let a = *bound.alpha().numer() as u128;
    let b = *bound.alpha().denom() as u128;
    let n = w.len();
    for i in 0..n {
        for j in i + 1..=n {
            let f = &w[i..j];
            let period = (1..=f.len())
                .find(|&p| (p..f.len()).all(|q| f[q] == f[q - p]))
                .unwrap();
            // |f| / period against a / b
            let lhs = f.len() as u128 * b;
            let rhs = a * period as u128;
            if lhs > rhs || (lhs == rhs && !bound.plus()) {
                return false;
            }
        }
    }
    true
}

/// Thue-Morse by bit parity.
pub fn thue_morse_prefix(n: usize) -> Vec<u8> {
    (0..n).map(|i| (i.count_ones() % 2) as u8).collect()
}

/// θ: 0 → 012, 1 → 02, 2 → 1, iterated from 0.
pub fn theta_prefix(n: usize) -> Vec<u8> {
    let mut w = vec![0u8];
    while w.len() < n {
        w = w
            .iter()
            .flat_map(|&c| match c {
                0 => vec![0, 1, 2],
                1 => vec![0, 2],
                _ => vec![1],
            })
            .collect();
    }
    w.truncate(n);
    w
}

/// All words of length `n` over `k` letters, in lexicographic order.
pub fn all_words(k: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |c| {
                    let mut w2 = w.clone();
                    w2.push(c);
                    w2
                })
            })
            .collect();
    }
    out
}

/// Power-free words of length `n` by filtering every word (no pruning).
pub fn unpruned_power_free(k: u8, bound: PowerBound, n: usize) -> Vec<Vec<u8>> {
    all_words(k, n)
        .into_iter()
        .filter(|w| naive_power_free(w, bound))
        .collect()
}

pub fn occurrences(w: &[u8], f: &[u8]) -> usize {
    if f.is_empty() {
        return w.len() + 1;
    }
    w.windows(f.len()).filter(|x| *x == f).count()
}

pub fn word(text: &str, k: usize) -> Word {
    Word::parse(text, Alphabet::new(k).unwrap()).unwrap()
}

pub fn bound(text: &str) -> PowerBound {
    text.parse().unwrap()
}

pub const TEST_BOUNDS: [&str; 4] = ["2", "2+", "7/4", "3"];

/// Direct comparison from every start and every period; independent of
/// the library's run detection and fast enough for words of a few hundred
/// letters.
pub fn direct_power_free(w: &[u8], bound: PowerBound) -> bool {
    let a = *bound.alpha().numer() as usize;
    let b = *bound.alpha().denom() as usize;
    let n = w.len();
    for i in 0..n {
        // a violation needs a/b * p <= n - i
        for p in 1..=(n - i) * b / a {
            let mut len = p;
            while i + len < n && w[i + len] == w[i + len - p] {
                len += 1;
            }
            if len * b > a * p || (len * b == a * p && !bound.plus()) {
                return false;
            }
        }
    }
    true
}
