//! Γ witnesses: the 5-tuples `(w1, w2, x, g, t)` for which `w1 w2 x t` is
//! guaranteed power-free, their property check, and their construction
//! from an infinite word in which `x` is recurrent.

use std::fmt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::extendability::{LeftStructuredWord, StructuredInfiniteWord};
use crate::generators::{LeftInfiniteWord, RightInfiniteWord};
use crate::repetition::is_power_free;
use crate::words::{
    count_occurrences, encode, find_from, require_upsilon, Alphabet, PowerBound, Word,
};

#[derive(Debug, Clone)]
pub struct GammaWitness {
    pub w1: Word,
    pub w2: Word,
    pub x: u8,
    pub g: Word,
    pub t: RightInfiniteWord,
}

impl GammaWitness {
    /// `w1 w2 x g`.
    pub fn finite_part(&self) -> Word {
        let mut out = self.w1.concat(&self.w2);
        out = Word::from_trusted(out.into_letters(), self.alphabet());
        out.push(self.x);
        out.concat(&self.g)
    }

    /// `w1 w2`.
    pub fn lead(&self) -> Word {
        self.w1.concat(&self.w2)
    }

    fn alphabet(&self) -> Alphabet {
        self.w1
            .alphabet()
            .max(self.w2.alphabet())
            .max(self.g.alphabet())
            .max(self.t.alphabet())
    }
}

/// Verdicts for the eight defining properties, in order:
/// 1. `w1, w2, g` are words over `Σ_k`;
/// 2. `x` is a letter of `Σ_k`;
/// 3. `w1 w2 x g` is power-free;
/// 4. `t` is power-free (on a window);
/// 5. `t` avoids `x`;
/// 6. `g` is a prefix of `t`;
/// 7. `x g y` occurs exactly once in `w2 x g y`, where `g y` is a prefix of `t`;
/// 8. `x` occurs in `w2` at least as often as in `w1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyReport {
    pub properties: [bool; 8],
    /// Whether property 8 holds strictly.
    pub strict_eight: bool,
}

impl PropertyReport {
    pub fn all(&self) -> bool {
        self.properties.iter().all(|&p| p)
    }

    pub fn failed(&self) -> Vec<usize> {
        (1..=8).filter(|&i| !self.properties[i - 1]).collect()
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.properties.iter().enumerate() {
            writeln!(f, "property-{}: {}", i + 1, p)?;
        }
        write!(f, "property-8-strict: {}", self.strict_eight)
    }
}

/// Evaluates the eight properties. `t` is examined on its first
/// `|w1 w2 x g| + window` letters; avoidance of `x` is taken from the
/// letter set recorded by its construction when available.
pub fn check_gamma(
    w: &mut GammaWitness,
    k: usize,
    bound: PowerBound,
    window: usize,
) -> Result<PropertyReport> {
    let alphabet = Alphabet::new(k)?;
    let in_sigma = |word: &Word| word.iter().all(|&c| alphabet.contains(c));
    let p1 = in_sigma(&w.w1) && in_sigma(&w.w2) && in_sigma(&w.g);
    let p2 = alphabet.contains(w.x);
    let finite = w.finite_part();
    let p3 = is_power_free(&finite, bound);
    let t_window = w.t.ensure(finite.len() + window)?.to_vec();
    let p4 = is_power_free(&t_window, bound);
    let p5 = match w.t.letter_set() {
        Some(set) => !set.contains(&w.x),
        None if t_window.contains(&w.x) => false,
        None => {
            return Err(Error::Undecided(
                "cannot certify that t avoids x without construction metadata".into(),
            ))
        }
    };
    let p6 = w.g.is_prefix_of(&t_window);
    let p7 = p6 && {
        let y = t_window[w.g.len()];
        let mut xgy = vec![w.x];
        xgy.extend_from_slice(&w.g);
        xgy.push(y);
        let mut hay = w.w2.letters().to_vec();
        hay.extend_from_slice(&xgy);
        count_occurrences(&hay, &xgy) == 1
    };
    let c1 = w.w1.count_letter(w.x);
    let c2 = w.w2.count_letter(w.x);
    Ok(PropertyReport {
        properties: [p1, p2, p3, p4, p5, p6, p7, c2 >= c1],
        strict_eight: c2 > c1,
    })
}

/// The right-infinite word `w1 w2 x t`, after checking the witness.
pub fn splice(
    w: &mut GammaWitness,
    k: usize,
    bound: PowerBound,
    window: usize,
) -> Result<RightInfiniteWord> {
    require_upsilon(k, bound)?;
    let report = check_gamma(w, k, bound, window)?;
    if !report.all() {
        return Err(Error::InvalidArgument(format!(
            "not a Γ witness: properties {:?} fail",
            report.failed()
        )));
    }
    let mut lead = w.lead();
    lead = Word::from_trusted(lead.into_letters(), w.alphabet());
    lead.push(w.x);
    Ok(RightInfiniteWord::concat(lead, w.t.clone()))
}

/// Recurrence questions about a right-infinite word.
pub trait RecurrenceOracle {
    fn prefix_letters(&mut self, n: usize) -> Result<&[u8]>;
    fn contains_factor(&mut self, f: &[u8]) -> Result<bool>;
    fn is_recurrent(&mut self, f: &[u8]) -> Result<bool>;
    /// A length after which no non-recurrent factor of length `m` occurs.
    fn settle_horizon(&self, m: usize) -> usize;
    /// Whether the answers are exact rather than sampled.
    fn exact(&self) -> bool;
}

impl RecurrenceOracle for StructuredInfiniteWord {
    fn prefix_letters(&mut self, n: usize) -> Result<&[u8]> {
        self.composite_mut().ensure(n)
    }

    fn contains_factor(&mut self, f: &[u8]) -> Result<bool> {
        let lead = self.head().len() + 1;
        let pre = self.composite_mut().ensure(lead + f.len())?;
        if find_from(pre, f, 0).is_some() {
            return Ok(true);
        }
        self.is_recurrent(f)
    }

    fn is_recurrent(&mut self, f: &[u8]) -> Result<bool> {
        let window = self.window();
        self.composite_mut().factor_in(f, &window)
    }

    fn settle_horizon(&self, m: usize) -> usize {
        self.head().len() + 1 + m
    }

    fn exact(&self) -> bool {
        true
    }
}

/// A stream judged by a finite sample: a factor is present when it occurs
/// in the first `window` letters and recurrent when it occurs starting in
/// the second half of them.
pub struct SampledWord<'a> {
    stream: &'a mut RightInfiniteWord,
    window: usize,
}

impl<'a> SampledWord<'a> {
    pub fn new(stream: &'a mut RightInfiniteWord, window: usize) -> Self {
        SampledWord { stream, window }
    }
}

impl RecurrenceOracle for SampledWord<'_> {
    fn prefix_letters(&mut self, n: usize) -> Result<&[u8]> {
        self.stream.ensure(n)
    }

    fn contains_factor(&mut self, f: &[u8]) -> Result<bool> {
        let pre = self.stream.ensure(self.window)?;
        Ok(find_from(pre, f, 0).is_some())
    }

    fn is_recurrent(&mut self, f: &[u8]) -> Result<bool> {
        let half = self.window / 2;
        let pre = self.stream.ensure(self.window)?;
        Ok(find_from(pre, f, half).is_some())
    }

    fn settle_horizon(&self, m: usize) -> usize {
        self.window / 2 + m
    }

    fn exact(&self) -> bool {
        false
    }
}

/// Which way the construction went.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaBranch {
    /// Every probed prefix of `x t` up to length `probed` is a factor.
    Unbounded { probed: usize },
    /// The prefix of length `failed` is not a factor; `longest` is the
    /// longest prefix that is, and `recurrent` the longest recurrent one.
    Bounded {
        failed: usize,
        longest: usize,
        recurrent: usize,
    },
}

impl fmt::Display for GammaBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaBranch::Unbounded { probed } => write!(f, "unbounded (probed to {probed})"),
            GammaBranch::Bounded {
                failed,
                longest,
                recurrent,
            } => write!(
                f,
                "bounded (absent={failed} longest={longest} recurrent={recurrent})"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GammaBuild {
    pub witness: GammaWitness,
    pub report: PropertyReport,
    pub branch: GammaBranch,
}

impl GammaBuild {
    /// For witnesses built on reversed inputs: `(w2 w1)` read forwards.
    pub fn reversed_lead(&self) -> Word {
        self.witness.lead().reverse()
    }

    /// For witnesses built on reversed inputs: `g` read forwards.
    pub fn reversed_g(&self) -> Word {
        self.witness.g.reverse()
    }
}

fn undecided_or(exact: bool, message: String) -> Error {
    if exact {
        Error::Undecided(message)
    } else {
        Error::Undecided(format!("{message} (sampled recurrence)"))
    }
}

/// Builds `(w1, w2, g)` with `(w1, w2, x, g, t)` a Γ witness and `target` a
/// prefix of `w1 w2 x g`, where `ubar` starts with `target`, has `x` as a
/// recurrent letter, and `t` avoids `x`.
///
/// Prefixes of `x t` of length 1, 2, 4, … are tested for membership in the
/// factor set of `ubar`. If one is missing, `x g` is the longest recurrent
/// prefix, `w1` is the shortest prefix of `ubar` containing every
/// occurrence of the non-recurrent ones, and `w2` runs to the next
/// occurrence of `x g` after `x` has occurred more often than in `w1`. If
/// none is missing up to the cap, `w1` is empty, `|g| = |target|` and `w2`
/// runs to the first occurrence of `x g`.
///
/// The result is validated with [`check_gamma`] before it is returned.
pub fn build_gamma(
    target: &Word,
    ubar: &mut dyn RecurrenceOracle,
    x: u8,
    t: &mut RightInfiniteWord,
    k: usize,
    bound: PowerBound,
    config: &Config,
) -> Result<GammaBuild> {
    require_upsilon(k, bound)?;
    let alphabet = Alphabet::new(k)?;
    if !alphabet.contains(x) {
        return Err(Error::InvalidArgument(format!("letter {x} outside Σ_{k}")));
    }
    let exact = ubar.exact();
    let avoids_x = match t.letter_set() {
        Some(set) => !set.contains(&x),
        None => !t.ensure(config.gamma_window)?.contains(&x),
    };
    if !avoids_x {
        return Err(Error::Precondition(format!(
            "t contains the letter {}",
            encode(&[x])
        )));
    }
    if ubar.prefix_letters(target.len())? != target.letters() {
        return Err(Error::Precondition(format!(
            "{target} is not a prefix of the infinite word"
        )));
    }
    if !ubar.is_recurrent(&[x])? {
        let message = format!("letter {} is not recurrent", encode(&[x]));
        return Err(if exact {
            Error::Precondition(message)
        } else {
            Error::Undecided(message)
        });
    }

    let xt = |len: usize, t: &mut RightInfiniteWord| -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(len);
        out.push(x);
        out.extend_from_slice(t.ensure(len.saturating_sub(1))?);
        Ok(out)
    };

    let mut failed = None;
    let mut len = 1;
    while len <= config.omega_cap {
        if !ubar.contains_factor(&xt(len, t)?)? {
            failed = Some(len);
            break;
        }
        len *= 2;
    }

    let (w1_len, g_len, branch) = match failed {
        None => (0, target.len(), GammaBranch::Unbounded { probed: len / 2 }),
        Some(failed) => {
            let mut longest = (failed / 2).max(1);
            while longest + 1 < failed && ubar.contains_factor(&xt(longest + 1, t)?)? {
                longest += 1;
            }
            let mut recurrent = 1;
            while recurrent < longest && ubar.is_recurrent(&xt(recurrent + 1, t)?)? {
                recurrent += 1;
            }
            let horizon = ubar.settle_horizon(longest);
            let mut w1_len = 0;
            let prefixes = xt(longest, t)?;
            let pre = ubar.prefix_letters(horizon)?.to_vec();
            for m in recurrent + 1..=longest {
                let f = &prefixes[..m];
                if let Some(last) = pre.windows(m).rposition(|win| win == f) {
                    w1_len = w1_len.max(last + m);
                }
            }
            (
                w1_len,
                recurrent - 1,
                GammaBranch::Bounded {
                    failed,
                    longest,
                    recurrent,
                },
            )
        }
    };

    let xg = xt(g_len + 1, t)?;
    let w1_x = ubar
        .prefix_letters(w1_len)?
        .iter()
        .filter(|&&c| c == x)
        .count();
    let need_more = matches!(branch, GammaBranch::Bounded { .. });
    let mut seen_x = 0;
    let mut j = w1_len;
    let mut scan = (w1_len + xg.len()).max(64).max(target.len() + 1);
    let end = loop {
        if j >= w1_len + config.scan_cap {
            return Err(undecided_or(
                exact,
                format!(
                    "no occurrence of {} within {} letters after position {w1_len}",
                    encode(&xg),
                    config.scan_cap
                ),
            ));
        }
        if j + xg.len() > scan {
            scan = (scan * 2).min(w1_len + config.scan_cap + xg.len());
        }
        let pre = ubar.prefix_letters(scan)?;
        let enough_x = !need_more || seen_x > w1_x;
        if enough_x && j + xg.len() >= target.len() && pre[j..j + xg.len()] == xg[..] {
            break j;
        }
        if pre[j] == x {
            seen_x += 1;
        }
        j += 1;
    };

    let letters = ubar.prefix_letters(end)?.to_vec();
    // Extend the shared stream first so the copy in the witness starts warm.
    t.ensure(end + xg.len() + config.gamma_window)?;
    let mut witness = GammaWitness {
        w1: Word::from_trusted(letters[..w1_len].to_vec(), alphabet),
        w2: Word::from_trusted(letters[w1_len..end].to_vec(), alphabet),
        x,
        g: Word::from_trusted(xg[1..].to_vec(), alphabet),
        t: t.clone(),
    };
    let report = check_gamma(&mut witness, k, bound, config.gamma_window)?;
    if !report.all() {
        return Err(undecided_or(
            exact,
            format!(
                "candidate witness fails properties {:?} ({branch})",
                report.failed()
            ),
        ));
    }
    if !target.is_prefix_of(&witness.finite_part()) {
        return Err(Error::Internal(format!(
            "{target} is not a prefix of the constructed witness"
        )));
    }
    Ok(GammaBuild {
        witness,
        report,
        branch,
    })
}

/// The mirror construction: a witness for the reversals, so that
/// `tbar x w2^R w1^R` is left-infinite power-free and `target` is a suffix
/// of `g^R x w2^R w1^R`. Components of the returned witness are stated for
/// the reversed words.
pub fn build_gamma_reversed(
    target: &Word,
    vbar: &mut LeftStructuredWord,
    x: u8,
    tbar: &mut LeftInfiniteWord,
    k: usize,
    bound: PowerBound,
    config: &Config,
) -> Result<GammaBuild> {
    build_gamma(
        &target.reverse(),
        &mut vbar.0,
        x,
        tbar.reversal_mut(),
        k,
        bound,
        config,
    )
}
