//! Bounded-depth extendability, exhaustive enumeration, extension streams
//! and the normalization that makes a chosen letter recurrent.

use std::fmt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::gamma::{build_gamma, SampledWord};
use crate::generators::{base_word_avoiding, RightInfiniteWord, WindowConfig};
use crate::par::{self, Execution};
use crate::repetition::{has_violating_suffix, is_power_free};
use crate::search::{Constraint, DfsStream};
use crate::words::{require_upsilon, Alphabet, PowerBound, Word};

/// Caps for [`enumerate_with`] and [`count_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_len: usize,
    /// Largest number of words [`enumerate_with`] will materialize.
    pub max_count: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_len: 64,
            max_count: 5_000_000,
        }
    }
}

fn check_limits(n: usize, limits: &EnumerationLimits) -> Result<()> {
    if n > limits.max_len {
        return Err(Error::ResourceLimit(format!(
            "length {n} exceeds the enumeration cap {}",
            limits.max_len
        )));
    }
    Ok(())
}

/// Backtracking below a fixed first letter. `visit` receives every
/// power-free word of length `n`; returning `false` stops the walk.
fn walk(k: u8, bound: PowerBound, n: usize, first: u8, visit: &mut dyn FnMut(&[u8]) -> bool) {
    let mut path = vec![first];
    if has_violating_suffix(&path, bound) {
        return;
    }
    let mut next = 0u8;
    loop {
        if path.len() == n {
            if !visit(&path) {
                return;
            }
        } else if next < k {
            path.push(next);
            if has_violating_suffix(&path, bound) {
                path.pop();
                next += 1;
            } else {
                next = 0;
            }
            continue;
        }
        // backtrack
        if path.len() == 1 {
            return;
        }
        next = path.pop().expect("nonempty path") + 1;
    }
}

/// All power-free words of length `n` over `k` letters, lexicographically
/// sorted.
pub fn enumerate(k: usize, bound: PowerBound, n: usize) -> Result<Vec<Word>> {
    enumerate_with(
        k,
        bound,
        n,
        Execution::default(),
        &EnumerationLimits::default(),
    )
}

pub fn enumerate_with(
    k: usize,
    bound: PowerBound,
    n: usize,
    exec: Execution,
    limits: &EnumerationLimits,
) -> Result<Vec<Word>> {
    let alphabet = Alphabet::new(k)?;
    check_limits(n, limits)?;
    if n == 0 {
        return Ok(vec![Word::empty(alphabet)]);
    }
    let cap = limits.max_count;
    let parts = par::map(exec, alphabet.letters().collect(), |first| {
        let mut out = Vec::new();
        let mut overflow = false;
        walk(k as u8, bound, n, first, &mut |w| {
            if out.len() == cap {
                overflow = true;
                return false;
            }
            out.push(Word::from_trusted(w.to_vec(), alphabet));
            true
        });
        (out, overflow)
    });
    let mut words = Vec::new();
    for (part, overflow) in parts {
        if overflow || words.len() + part.len() > cap {
            return Err(Error::ResourceLimit(format!(
                "more than {cap} power-free words of length {n}"
            )));
        }
        words.extend(part);
    }
    Ok(words)
}

pub fn count(k: usize, bound: PowerBound, n: usize) -> Result<u64> {
    count_with(
        k,
        bound,
        n,
        Execution::default(),
        &EnumerationLimits::default(),
    )
}

pub fn count_with(
    k: usize,
    bound: PowerBound,
    n: usize,
    exec: Execution,
    limits: &EnumerationLimits,
) -> Result<u64> {
    let alphabet = Alphabet::new(k)?;
    check_limits(n, limits)?;
    if n == 0 {
        return Ok(1);
    }
    let parts = par::map(exec, alphabet.letters().collect(), |first| {
        let mut total = 0u64;
        walk(k as u8, bound, n, first, &mut |_| {
            total += 1;
            true
        });
        total
    });
    Ok(parts.into_iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendStatus {
    ExtendableToDepth,
    NotExtendable,
    Undecided,
}

impl fmt::Display for ExtendStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtendStatus::ExtendableToDepth => "extendable-to-depth",
            ExtendStatus::NotExtendable => "not-extendable",
            ExtendStatus::Undecided => "undecided",
        })
    }
}

/// Outcome of a bounded extendability probe.
///
/// `NotExtendable` is exact: no power-free extension by `depth` letters
/// exists, hence none by more letters either. `ExtendableToDepth` carries
/// the extended word itself (input plus `depth` letters on the probed side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendVerdict {
    pub status: ExtendStatus,
    pub depth: usize,
    pub witness: Option<Word>,
}

fn probe_input(w: &Word, k: usize, bound: PowerBound) -> Result<Alphabet> {
    let alphabet = Alphabet::new(k)?;
    let w = w.with_alphabet(alphabet)?;
    if !is_power_free(&w, bound) {
        return Err(Error::Precondition(format!(
            "{w} is not {bound}-power-free"
        )));
    }
    Ok(alphabet)
}

fn probe(
    w: &Word,
    k: usize,
    bound: PowerBound,
    depth: usize,
    budget: u64,
    side: &'static str,
) -> Result<ExtendVerdict> {
    let alphabet = probe_input(w, k, bound)?;
    let seed = match side {
        "left" => w.reverse().into_letters(),
        _ => w.letters().to_vec(),
    };
    let mut stream = DfsStream::new(
        seed.clone(),
        alphabet.letters().collect(),
        Constraint::PowerFree(bound),
        0,
        budget,
        side,
    )?;
    let mut memo = Vec::new();
    match stream.fill(&mut memo, seed.len() + depth) {
        Ok(()) => {
            let found = Word::from_trusted(memo, alphabet);
            let witness = if side == "left" {
                found.reverse()
            } else {
                found
            };
            Ok(ExtendVerdict {
                status: ExtendStatus::ExtendableToDepth,
                depth,
                witness: Some(witness),
            })
        }
        Err(Error::NotExtendable { .. }) => Ok(ExtendVerdict {
            status: ExtendStatus::NotExtendable,
            depth,
            witness: None,
        }),
        Err(e) if e.is_undecided() => Ok(ExtendVerdict {
            status: ExtendStatus::Undecided,
            depth,
            witness: None,
        }),
        Err(e) => Err(e),
    }
}

/// Searches for a power-free word `w·e` with `|e| = depth`, smallest letters
/// first.
pub fn right_extendable(
    w: &Word,
    k: usize,
    bound: PowerBound,
    depth: usize,
) -> Result<ExtendVerdict> {
    right_extendable_with(w, k, bound, depth, Config::default().search_budget)
}

pub fn right_extendable_with(
    w: &Word,
    k: usize,
    bound: PowerBound,
    depth: usize,
    budget: u64,
) -> Result<ExtendVerdict> {
    probe(w, k, bound, depth, budget, "right")
}

/// Mirror of [`right_extendable`]: the witness is `e·w`.
pub fn left_extendable(
    w: &Word,
    k: usize,
    bound: PowerBound,
    depth: usize,
) -> Result<ExtendVerdict> {
    left_extendable_with(w, k, bound, depth, Config::default().search_budget)
}

pub fn left_extendable_with(
    w: &Word,
    k: usize,
    bound: PowerBound,
    depth: usize,
    budget: u64,
) -> Result<ExtendVerdict> {
    probe(w, k, bound, depth, budget, "left")
}

/// A lazy power-free right-infinite word starting with `u`.
///
/// Letters come from a smallest-first depth-first search; each emitted
/// letter is backed by `config.slack` further letters of verified
/// continuation.
pub fn extension_stream(
    u: &Word,
    k: usize,
    bound: PowerBound,
    config: &Config,
) -> Result<RightInfiniteWord> {
    let alphabet = probe_input(u, k, bound)?;
    let letters: Vec<u8> = alphabet.letters().collect();
    let stream = DfsStream::new(
        u.letters().to_vec(),
        letters.clone(),
        Constraint::PowerFree(bound),
        config.slack,
        config.search_budget,
        "right",
    )?;
    let mut word = RightInfiniteWord::from_search(alphabet, stream, Some(letters));
    word.ensure(u.len())?;
    Ok(word)
}

/// The right-infinite word `head · pivot · tail`, where the tail is a
/// uniformly recurrent word avoiding the pivot.
///
/// Its recurrent factors are exactly the factors of the tail, and any
/// other factor has an occurrence starting within the first
/// `|head| + 1` letters.
#[derive(Debug, Clone)]
pub struct StructuredInfiniteWord {
    head: Word,
    pivot: u8,
    composite: RightInfiniteWord,
    window: WindowConfig,
}

impl StructuredInfiniteWord {
    pub fn new(
        head: Word,
        pivot: u8,
        tail: RightInfiniteWord,
        window: WindowConfig,
    ) -> Result<Self> {
        if !tail.is_uniformly_recurrent() {
            return Err(Error::InvalidArgument(
                "tail must be uniformly recurrent".into(),
            ));
        }
        match tail.letter_set() {
            Some(set) if !set.contains(&pivot) => {}
            _ => {
                return Err(Error::InvalidArgument(
                    "tail must be known to avoid the pivot letter".into(),
                ))
            }
        }
        let mut lead = head.clone();
        lead = lead.with_alphabet(lead.alphabet().max(tail.alphabet()))?;
        lead.push(pivot);
        Ok(StructuredInfiniteWord {
            head,
            pivot,
            composite: RightInfiniteWord::concat(lead, tail),
            window,
        })
    }

    pub fn head(&self) -> &Word {
        &self.head
    }

    pub fn pivot(&self) -> u8 {
        self.pivot
    }

    pub fn tail(&self) -> &RightInfiniteWord {
        self.composite.split_concat().expect("composite").1
    }

    pub fn alphabet(&self) -> Alphabet {
        self.composite.alphabet()
    }

    pub fn window(&self) -> WindowConfig {
        self.window
    }

    pub fn prefix(&mut self, n: usize) -> Result<Word> {
        self.composite.prefix(n)
    }

    pub fn composite(&self) -> &RightInfiniteWord {
        &self.composite
    }

    pub fn composite_mut(&mut self) -> &mut RightInfiniteWord {
        &mut self.composite
    }
}

/// A left-infinite word given by the reversal of a structured word.
#[derive(Debug, Clone)]
pub struct LeftStructuredWord(pub StructuredInfiniteWord);

impl LeftStructuredWord {
    pub fn suffix(&mut self, n: usize) -> Result<Word> {
        Ok(self.0.prefix(n)?.reverse())
    }
}

/// The most frequent letter other than `x`, ties to the smallest.
fn pick_pivot(window: &[u8], k: usize, x: u8) -> Option<u8> {
    let mut counts = vec![0usize; k];
    for &c in window {
        counts[c as usize] += 1;
    }
    (0..k as u8)
        .filter(|&c| c != x && counts[c as usize] > 0)
        .max_by(|&a, &b| counts[a as usize].cmp(&counts[b as usize]).then(b.cmp(&a)))
}

/// A power-free right-infinite word with prefix `u` in which `x` is
/// recurrent.
///
/// A search stream after `u` supplies a frequent pivot letter `y ≠ x`;
/// a Γ witness `(w1, w2, y, g, t′)` against a base word `t′` that avoids `y`
/// and contains `x` then gives `w1 w2 y t′`. Recurrence in the search
/// stream is only sampled, so the sampling window grows until the witness
/// validates.
pub fn force_recurrent_letter(
    u: &Word,
    x: u8,
    k: usize,
    bound: PowerBound,
    config: &Config,
) -> Result<StructuredInfiniteWord> {
    require_upsilon(k, bound)?;
    let alphabet = Alphabet::new(k)?;
    if !alphabet.contains(x) {
        return Err(Error::InvalidArgument(format!("letter {x} outside Σ_{k}")));
    }
    let u = u.with_alphabet(alphabet)?;
    let mut stream = extension_stream(&u, k, bound, config)?;
    let probe = stream.ensure(u.len() + config.pivot_probe)?[u.len()..].to_vec();
    let y = pick_pivot(&probe, k, x).ok_or_else(|| {
        Error::Undecided(format!("no pivot letter besides {x} in the probe window"))
    })?;
    let mut tail = base_word_avoiding(k, bound, y, Some(x))?;
    let mut window = u.len() + config.recurrence_window;
    let mut last_err;
    loop {
        let mut sampled = SampledWord::new(&mut stream, window);
        match build_gamma(&u, &mut sampled, y, &mut tail, k, bound, config) {
            Ok(build) => {
                let w = build.witness;
                let head = w.w1.concat(&w.w2);
                return StructuredInfiniteWord::new(head, y, tail, config.window);
            }
            Err(e) if e.is_undecided() => last_err = e,
            Err(e) => return Err(e),
        }
        if window >= config.recurrence_window_cap {
            return Err(Error::Undecided(format!(
                "no Γ witness for pivot {y} within a {window}-letter sample: {last_err}"
            )));
        }
        window = (window * 2).min(config.recurrence_window_cap);
    }
}
