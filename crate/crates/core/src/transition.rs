//! Transition words: given `u` right-extendable and `v` left-extendable,
//! build `w` with `u w v` power-free as `ũ x h p x ṽ`, and a brute-force
//! oracle for the shortest such `w`.
//!
//! `ũ x t` and `t̄ x ṽ` are power-free infinite words sharing the letter
//! `x`, where `t` avoids `x` and every factor of the left-infinite `t̄` is a
//! factor of `t`. `p` is the shortest suffix of `t̄` longer than `ũx`, `xṽ`,
//! `u` and `v`, and `h` the shortest prefix of `t` longer than `p` with
//! `hp` again a prefix of `t`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::config::Config;
use crate::error::{Error, Result, StageExt};
use crate::extendability::{
    force_recurrent_letter, left_extendable_with, right_extendable_with, ExtendStatus,
    LeftStructuredWord,
};
use crate::gamma::{build_gamma, build_gamma_reversed, GammaBranch};
use crate::generators::{
    base_word_avoiding, left_limit, LeftInfiniteWord, RightInfiniteWord, WindowConfig,
};
use crate::par::{self, Execution};
use crate::repetition::{has_violating_suffix, is_power_free};
use crate::words::{letter_char, require_upsilon, Alphabet, PowerBound, Word};

/// Verdicts recorded in a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verification {
    pub power_free: bool,
    pub u_prefix: bool,
    pub v_suffix: bool,
    /// `|p| > max(|ũx|, |xṽ|, |u|, |v|)`.
    pub p_length: bool,
    /// `|h| > |p|`.
    pub h_length: bool,
    /// `ũ x h p x ṽ = u w v`.
    pub factorization: bool,
    /// `x` occurs exactly twice in `x h p x`.
    pub x_twice: bool,
}

impl Verification {
    pub fn all(&self) -> bool {
        self.power_free
            && self.u_prefix
            && self.v_suffix
            && self.p_length
            && self.h_length
            && self.factorization
            && self.x_twice
    }

    fn entries(&self) -> [(&'static str, bool); 7] {
        [
            ("check-power-free", self.power_free),
            ("check-u-prefix", self.u_prefix),
            ("check-v-suffix", self.v_suffix),
            ("check-p-length", self.p_length),
            ("check-h-length", self.h_length),
            ("check-factorization", self.factorization),
            ("check-x-twice", self.x_twice),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionCertificate {
    pub k: usize,
    pub bound: PowerBound,
    pub config: Config,
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub full_word: Word,
    pub x: u8,
    pub u_tilde: Word,
    pub v_tilde: Word,
    pub h: Word,
    pub p: Word,
    pub g_right: Word,
    pub g_left: Word,
    pub verification: Verification,
}

fn with_x(alphabet: Alphabet, parts: &[&[u8]]) -> Word {
    Word::from_trusted(parts.concat(), alphabet)
}

impl TransitionCertificate {
    pub fn verified(&self) -> bool {
        self.verification.all()
    }

    /// Recomputes every verdict from the recorded words.
    pub fn reverify(&self) -> Verification {
        let x = [self.x];
        let alphabet = self.full_word.alphabet();
        let assembled = with_x(
            alphabet,
            &[&self.u_tilde, &x, &self.h, &self.p, &x, &self.v_tilde],
        );
        let uwv = with_x(alphabet, &[&self.u, &self.w, &self.v]);
        let xhpx = with_x(alphabet, &[&x, &self.h, &self.p, &x]);
        let longest_side = (self.u_tilde.len() + 1)
            .max(self.v_tilde.len() + 1)
            .max(self.u.len())
            .max(self.v.len());
        Verification {
            power_free: is_power_free(&self.full_word, self.bound),
            u_prefix: self.u.is_prefix_of(&self.full_word),
            v_suffix: self.v.is_suffix_of(&self.full_word),
            p_length: self.p.len() > longest_side,
            h_length: self.h.len() > self.p.len(),
            factorization: assembled == self.full_word && uwv == self.full_word,
            x_twice: xhpx.count_letter(self.x) == 2,
        }
    }

    /// Line-oriented `key: value` text ending with a `verified:` line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: String| {
            let _ = writeln!(out, "{key}: {value}");
        };
        line("k", self.k.to_string());
        line("alpha", self.bound.to_string());
        line("config", self.config.to_string());
        line("u", self.u.encode());
        line("v", self.v.encode());
        line("x", letter_char(self.x).to_string());
        line("u-tilde", self.u_tilde.encode());
        line("v-tilde", self.v_tilde.encode());
        line("g-right", self.g_right.encode());
        line("g-left", self.g_left.encode());
        line("h", self.h.encode());
        line("p", self.p.encode());
        line("w", self.w.encode());
        line("full-word", self.full_word.encode());
        line("length", self.full_word.len().to_string());
        for (key, value) in self.verification.entries() {
            line(key, value.to_string());
        }
        line("verified", self.verified().to_string());
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = HashMap::new();
        for raw in text.lines() {
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| {
                Error::InvalidArgument(format!("certificate line without a key: {line:?}"))
            })?;
            fields.insert(key.trim().to_string(), value.trim().to_string());
        }
        let get = |key: &str| -> Result<&str> {
            fields
                .get(key)
                .map(String::as_str)
                .ok_or_else(|| Error::InvalidArgument(format!("certificate lacks `{key}`")))
        };
        let flag = |key: &str| -> Result<bool> {
            get(key)?
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("`{key}` is not true/false")))
        };
        let k: usize = get("k")?
            .parse()
            .map_err(|_| Error::InvalidArgument("`k` is not an integer".into()))?;
        let alphabet = Alphabet::new(k)?;
        let word = |key: &str| Word::parse(get(key)?, alphabet);
        let x_word = word("x")?;
        if x_word.len() != 1 {
            return Err(Error::InvalidArgument("`x` must be a single letter".into()));
        }
        let cert = TransitionCertificate {
            k,
            bound: get("alpha")?.parse()?,
            config: get("config")?.parse()?,
            u: word("u")?,
            v: word("v")?,
            w: word("w")?,
            full_word: word("full-word")?,
            x: x_word[0],
            u_tilde: word("u-tilde")?,
            v_tilde: word("v-tilde")?,
            h: word("h")?,
            p: word("p")?,
            g_right: word("g-right")?,
            g_left: word("g-left")?,
            verification: Verification {
                power_free: flag("check-power-free")?,
                u_prefix: flag("check-u-prefix")?,
                v_suffix: flag("check-v-suffix")?,
                p_length: flag("check-p-length")?,
                h_length: flag("check-h-length")?,
                factorization: flag("check-factorization")?,
                x_twice: flag("check-x-twice")?,
            },
        };
        if flag("verified")? != cert.verified() {
            return Err(Error::InvalidArgument(
                "`verified` disagrees with the recorded checks".into(),
            ));
        }
        Ok(cert)
    }
}

impl FromStr for Config {
    type Err = Error;

    /// Parses the `key=value` form written by `Display`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidArgument(format!("config: {msg}"));
        let num =
            |v: &str| -> Result<u64> { v.parse().map_err(|_| bad(format!("bad number {v:?}"))) };
        let range = |v: &str| -> Result<(usize, usize)> {
            let (a, b) = v
                .split_once("..")
                .ok_or_else(|| bad(format!("bad range {v:?}")))?;
            Ok((num(a)? as usize, num(b)? as usize))
        };
        let mut cfg = Config::default();
        for token in text.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| bad(format!("bad token {token:?}")))?;
            match key {
                "window" => {
                    let (start, cap) = range(value)?;
                    cfg.window = WindowConfig { start, cap };
                }
                "probe-depth" => cfg.probe_depth = num(value)? as usize,
                "slack" => cfg.slack = num(value)? as usize,
                "budget" => cfg.search_budget = num(value)?,
                "pivot-probe" => cfg.pivot_probe = num(value)? as usize,
                "recurrence-window" => {
                    let (start, cap) = range(value)?;
                    cfg.recurrence_window = start;
                    cfg.recurrence_window_cap = cap;
                }
                "omega-cap" => cfg.omega_cap = num(value)? as usize,
                "gamma-window" => cfg.gamma_window = num(value)? as usize,
                "scan-cap" => cfg.scan_cap = num(value)? as usize,
                "x" => {
                    let letters = crate::words::decode(value)?;
                    if letters.len() != 1 {
                        return Err(bad(format!("bad letter {value:?}")));
                    }
                    cfg.x_override = Some(letters[0]);
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }
}

/// The outputs of the two one-sided constructions.
#[derive(Debug, Clone)]
pub struct Sides {
    pub x: u8,
    pub u_tilde: Word,
    pub v_tilde: Word,
    pub g_right: Word,
    pub g_left: Word,
    pub right_branch: GammaBranch,
    pub left_branch: GammaBranch,
    pub t: RightInfiniteWord,
    pub tbar: LeftInfiniteWord,
}

#[derive(Debug, Clone)]
struct Side {
    tilde: Word,
    g: Word,
    branch: GammaBranch,
}

/// Shortest suffix of `tbar` longer than every entry of `lengths`.
pub fn choose_p(
    tbar: &mut LeftInfiniteWord,
    lengths: (usize, usize, usize, usize),
) -> Result<Word> {
    let (a, b, c, d) = lengths;
    tbar.suffix(a.max(b).max(c).max(d) + 1)
}

/// Shortest prefix `h` of `t` with `|h| > |p|` and `hp` a prefix of `t`.
pub fn choose_h(t: &mut RightInfiniteWord, p: &Word, cap: usize) -> Result<Word> {
    let start = p.len() + 1;
    match t.find_occurrence(p, start, cap)? {
        Some(j) => t.prefix(j),
        None => Err(Error::Undecided(format!(
            "no occurrence of p (length {}) past position {start} within {cap} letters",
            p.len()
        ))),
    }
}

/// Runs the construction for many pairs over one `(k, bound, config)`,
/// reusing the shared words and the per-word side constructions.
#[derive(Debug)]
pub struct TransitionBuilder {
    k: usize,
    bound: PowerBound,
    config: Config,
    alphabet: Alphabet,
    x: u8,
    t: RightInfiniteWord,
    tbar: LeftInfiniteWord,
    right: HashMap<Word, Side>,
    left: HashMap<Word, Side>,
    tails: HashMap<usize, (Word, Word)>,
}

impl TransitionBuilder {
    pub fn new(k: usize, bound: PowerBound, config: Config) -> Result<Self> {
        require_upsilon(k, bound)?;
        let alphabet = Alphabet::new(k)?;
        let x = match config.x_override {
            Some(x) if alphabet.contains(x) => x,
            Some(x) => {
                return Err(Error::InvalidArgument(format!(
                    "letter {} outside Σ_{k}",
                    letter_char(x)
                )))
            }
            None => alphabet.largest(),
        };
        let t = base_word_avoiding(k, bound, x, None).stage("base-word")?;
        let tbar = left_limit(&t, config.window, config.slack, config.search_budget)
            .stage("left-limit")?;
        Ok(TransitionBuilder {
            k,
            bound,
            config,
            alphabet,
            x,
            t,
            tbar,
            right: HashMap::new(),
            left: HashMap::new(),
            tails: HashMap::new(),
        })
    }

    pub fn x(&self) -> u8 {
        self.x
    }

    fn input(&self, w: &Word, name: &str) -> Result<Word> {
        let w = w.with_alphabet(self.alphabet)?;
        if !is_power_free(&w, self.bound) {
            return Err(Error::Precondition(format!(
                "{name} = {w} is not {}-power-free",
                self.bound
            )));
        }
        Ok(w)
    }

    fn probe_verdict(
        status: ExtendStatus,
        side: &'static str,
        w: &Word,
        depth: usize,
    ) -> Result<()> {
        match status {
            ExtendStatus::ExtendableToDepth => Ok(()),
            ExtendStatus::NotExtendable => Err(Error::NotExtendable {
                side,
                word: w.encode(),
                depth,
            }),
            ExtendStatus::Undecided => Err(Error::Undecided(format!(
                "{side}-extendability of {w} not settled to depth {depth}"
            ))),
        }
    }

    fn right_side(&mut self, u: &Word) -> Result<Side> {
        if let Some(side) = self.right.get(u) {
            return Ok(side.clone());
        }
        let (k, bound, cfg) = (self.k, self.bound, self.config);
        let verdict = right_extendable_with(u, k, bound, cfg.probe_depth, cfg.search_budget)
            .stage("right-probe")?;
        Self::probe_verdict(verdict.status, "right", u, cfg.probe_depth).stage("right-probe")?;
        let mut ubar = force_recurrent_letter(u, self.x, k, bound, &cfg).stage("force-right")?;
        let build =
            build_gamma(u, &mut ubar, self.x, &mut self.t, k, bound, &cfg).stage("gamma-right")?;
        let side = Side {
            tilde: build.witness.lead(),
            g: build.witness.g.clone(),
            branch: build.branch,
        };
        self.right.insert(u.clone(), side.clone());
        Ok(side)
    }

    fn left_side(&mut self, v: &Word) -> Result<Side> {
        if let Some(side) = self.left.get(v) {
            return Ok(side.clone());
        }
        let (k, bound, cfg) = (self.k, self.bound, self.config);
        let verdict = left_extendable_with(v, k, bound, cfg.probe_depth, cfg.search_budget)
            .stage("left-probe")?;
        Self::probe_verdict(verdict.status, "left", v, cfg.probe_depth).stage("left-probe")?;
        let forced =
            force_recurrent_letter(&v.reverse(), self.x, k, bound, &cfg).stage("force-left")?;
        let mut vbar = LeftStructuredWord(forced);
        let build = build_gamma_reversed(v, &mut vbar, self.x, &mut self.tbar, k, bound, &cfg)
            .stage("gamma-left")?;
        let side = Side {
            tilde: build.reversed_lead(),
            g: build.reversed_g(),
            branch: build.branch,
        };
        self.left.insert(v.clone(), side.clone());
        Ok(side)
    }

    /// The one-sided constructions for `u` and `v`.
    pub fn sides(&mut self, u: &Word, v: &Word) -> Result<Sides> {
        let u = self.input(u, "u")?;
        let v = self.input(v, "v")?;
        let right = self.right_side(&u)?;
        let left = self.left_side(&v)?;
        Ok(Sides {
            x: self.x,
            u_tilde: right.tilde,
            v_tilde: left.tilde,
            g_right: right.g,
            g_left: left.g,
            right_branch: right.branch,
            left_branch: left.branch,
            t: self.t.clone(),
            tbar: self.tbar.clone(),
        })
    }

    fn tail(&mut self, m: usize) -> Result<(Word, Word)> {
        if let Some(pair) = self.tails.get(&m) {
            return Ok(pair.clone());
        }
        let p = choose_p(&mut self.tbar, (m - 1, 0, 0, 0)).stage("choose-p")?;
        let h = choose_h(&mut self.t, &p, self.config.window.cap).stage("choose-h")?;
        let hp = self.t.ensure(h.len() + p.len()).stage("choose-h")?;
        if hp[h.len()..] != p[..] {
            return Err(Error::Internal("hp is not a prefix of t".into()));
        }
        self.tails.insert(m, (p.clone(), h.clone()));
        Ok((p, h))
    }

    pub fn build(&mut self, u: &Word, v: &Word) -> Result<TransitionCertificate> {
        let sides = self.sides(u, v)?;
        let u = u.with_alphabet(self.alphabet)?;
        let v = v.with_alphabet(self.alphabet)?;
        let m = (sides.u_tilde.len() + 1)
            .max(sides.v_tilde.len() + 1)
            .max(u.len())
            .max(v.len())
            + 1;
        let (p, h) = self.tail(m)?;
        let x = [self.x];
        let full = with_x(
            self.alphabet,
            &[&sides.u_tilde, &x, &h, &p, &x, &sides.v_tilde],
        );
        if full.len() < u.len() + v.len() {
            return Err(Error::Internal(format!(
                "assembled word of length {} is shorter than |u| + |v|",
                full.len()
            )));
        }
        let w = full.slice(u.len()..full.len() - v.len());
        let mut cert = TransitionCertificate {
            k: self.k,
            bound: self.bound,
            config: self.config,
            u,
            v,
            w,
            full_word: full,
            x: self.x,
            u_tilde: sides.u_tilde,
            v_tilde: sides.v_tilde,
            h,
            p,
            g_right: sides.g_right,
            g_left: sides.g_left,
            verification: Verification {
                power_free: false,
                u_prefix: false,
                v_suffix: false,
                p_length: false,
                h_length: false,
                factorization: false,
                x_twice: false,
            },
        };
        cert.verification = cert.reverify();
        if !cert.verified() {
            return Err(Error::Internal(format!(
                "assembled word failed verification: {:?}",
                cert.verification
            ))
            .in_stage("verify"));
        }
        Ok(cert)
    }
}

/// The one-sided constructions for a single pair.
pub fn assemble_sides(
    u: &Word,
    v: &Word,
    k: usize,
    bound: PowerBound,
    config: &Config,
) -> Result<Sides> {
    TransitionBuilder::new(k, bound, *config)?.sides(u, v)
}

/// Builds and verifies a transition word from `u` to `v`.
pub fn build_transition(
    u: &Word,
    v: &Word,
    k: usize,
    bound: PowerBound,
    config: &Config,
) -> Result<TransitionCertificate> {
    TransitionBuilder::new(k, bound, *config)?.build(u, v)
}

/// Depth-first search for a power-free `u w v` with `|w| = len`, smallest
/// letters first; the first letter of `w` is pinned when `first` is given.
fn first_with_length(
    u: &[u8],
    v: &[u8],
    k: u8,
    bound: PowerBound,
    len: usize,
    first: Option<u8>,
) -> Option<Vec<u8>> {
    let base = u.len();
    let lo = |depth: usize| if depth == 0 { first.unwrap_or(0) } else { 0 };
    let hi = |depth: usize| {
        if depth == 0 {
            first.map_or(k, |c| c + 1)
        } else {
            k
        }
    };
    let mut path = u.to_vec();
    let mut next = lo(0);
    loop {
        let depth = path.len() - base;
        if depth == len {
            let before = path.len();
            let mut ok = true;
            for &c in v {
                path.push(c);
                if has_violating_suffix(&path, bound) {
                    ok = false;
                    break;
                }
            }
            path.truncate(before);
            if ok {
                return Some(path[base..].to_vec());
            }
        } else if next < hi(depth) {
            path.push(next);
            if has_violating_suffix(&path, bound) {
                path.pop();
                next += 1;
            } else {
                next = lo(depth + 1);
            }
            continue;
        }
        if path.len() == base {
            return None;
        }
        next = path.pop().expect("nonempty search path") + 1;
    }
}

/// The shortest, then lexicographically first, `w` with `|w| <= max_len`
/// and `u w v` power-free. `None` when no such word exists or when `u` or
/// `v` is not power-free.
pub fn minimal_transition_oracle(
    u: &Word,
    v: &Word,
    k: usize,
    bound: PowerBound,
    max_len: usize,
) -> Result<Option<Word>> {
    minimal_transition_oracle_with(u, v, k, bound, max_len, Execution::default())
}

pub fn minimal_transition_oracle_with(
    u: &Word,
    v: &Word,
    k: usize,
    bound: PowerBound,
    max_len: usize,
    exec: Execution,
) -> Result<Option<Word>> {
    let alphabet = Alphabet::new(k)?;
    let u = u.with_alphabet(alphabet)?;
    let v = v.with_alphabet(alphabet)?;
    if !is_power_free(&u, bound) || !is_power_free(&v, bound) {
        return Ok(None);
    }
    for len in 0..=max_len {
        let found = if len == 0 {
            first_with_length(&u, &v, k as u8, bound, 0, None)
        } else {
            par::find_map_first(exec, alphabet.letters().collect(), |c| {
                first_with_length(&u, &v, k as u8, bound, len, Some(c))
            })
        };
        if let Some(w) = found {
            return Ok(Some(Word::from_trusted(w, alphabet)));
        }
    }
    Ok(None)
}

/// Human-readable summary of a failed stage, for diagnostics.
pub fn describe_error(e: &Error) -> String {
    match e {
        Error::Stage { stage, source } => format!("{stage}: {}", describe_error(source)),
        other => other.to_string(),
    }
}
