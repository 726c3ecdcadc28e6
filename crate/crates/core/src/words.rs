//! Alphabets, finite words, exponent bounds and the admissibility gate.
//!
//! Letters are canonical indices `0..k`. The text encoding used by the CLI
//! and certificate files maps `0`-`9` then `a`-`z` onto letters `0..36`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact exponent of a repetition: length over period.
pub type Exponent = Ratio<u64>;

pub const MAX_ALPHABET: usize = 36;

const DIGITS: &[u8; MAX_ALPHABET] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn letter_char(letter: u8) -> char {
    DIGITS[letter as usize] as char
}

pub fn char_letter(c: char) -> Option<u8> {
    match c {
        '0'..='9' => Some(c as u8 - b'0'),
        'a'..='z' => Some(c as u8 - b'a' + 10),
        _ => None,
    }
}

/// Alphabet `{0, ..., k-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(k: usize) -> Result<Self> {
        if (1..=MAX_ALPHABET).contains(&k) {
            Ok(Alphabet(k as u8))
        } else {
            Err(Error::InvalidArgument(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {k}"
            )))
        }
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, letter: u8) -> bool {
        letter < self.0
    }

    pub fn letters(self) -> impl Iterator<Item = u8> {
        0..self.0
    }

    pub fn largest(self) -> u8 {
        self.0 - 1
    }
}

/// A finite word over an [`Alphabet`].
///
/// Ordering is lexicographic on letters (shorter prefix first), which is
/// the order every enumeration in this crate reports in.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::InvalidArgument(format!(
                "letter {bad} is outside the alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(Word { letters, alphabet })
    }

    pub(crate) fn from_trusted(letters: Vec<u8>, alphabet: Alphabet) -> Self {
        debug_assert!(letters.iter().all(|&c| alphabet.contains(c)));
        Word { letters, alphabet }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            letters: Vec::new(),
            alphabet,
        }
    }

    /// Parses the canonical text encoding over a given alphabet.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let letters = decode(text)?;
        Word::new(letters, alphabet)
    }

    /// Parses the canonical encoding, taking the smallest alphabet that
    /// contains every letter (size 1 for the empty word).
    pub fn parse_inferred(text: &str) -> Result<Self> {
        let letters = decode(text)?;
        let k = letters.iter().copied().max().map_or(1, |m| m as usize + 1);
        Word::new(letters, Alphabet::new(k)?)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn encode(&self) -> String {
        encode(&self.letters)
    }

    /// Same letters over a (larger) alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Self> {
        Word::new(self.letters.clone(), alphabet)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            alphabet: self.alphabet.max(other.alphabet),
        }
    }

    pub fn push(&mut self, letter: u8) {
        assert!(self.alphabet.contains(letter), "letter outside alphabet");
        self.letters.push(letter);
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word {
            letters: self.letters[range].to_vec(),
            alphabet: self.alphabet,
        }
    }

    pub fn reverse(&self) -> Word {
        reverse(self)
    }

    pub fn count_letter(&self, letter: u8) -> usize {
        self.letters.iter().filter(|&&c| c == letter).count()
    }

    pub fn is_prefix_of(&self, other: &[u8]) -> bool {
        other.starts_with(&self.letters)
    }

    pub fn is_suffix_of(&self, other: &[u8]) -> bool {
        other.ends_with(&self.letters)
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.encode())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}/{})", self.encode(), self.alphabet.size())
    }
}

pub fn encode(letters: &[u8]) -> String {
    letters.iter().map(|&c| letter_char(c)).collect()
}

pub fn decode(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| {
            char_letter(c)
                .ok_or_else(|| Error::InvalidArgument(format!("invalid letter character {c:?}")))
        })
        .collect()
}

/// An exponent threshold `alpha`, or `alpha+` when `plus` is set.
///
/// A word avoids the bound `alpha` when it has no factor of exponent
/// `>= alpha`; it avoids `alpha+` when it has no factor of exponent `> alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PowerBound {
    alpha: Exponent,
    plus: bool,
}

impl PowerBound {
    pub fn new(alpha: Exponent, plus: bool) -> Result<Self> {
        if alpha < Exponent::from_integer(1) {
            return Err(Error::InvalidArgument(format!(
                "exponent bound must be at least 1, got {alpha}"
            )));
        }
        Ok(PowerBound { alpha, plus })
    }

    pub fn from_ratio(numer: u64, denom: u64, plus: bool) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        PowerBound::new(Ratio::new(numer, denom), plus)
    }

    pub fn integer(alpha: u64) -> Self {
        PowerBound::from_ratio(alpha, 1, false).expect("integer bound >= 1")
    }

    pub fn integer_plus(alpha: u64) -> Self {
        PowerBound::from_ratio(alpha, 1, true).expect("integer bound >= 1")
    }

    pub fn alpha(&self) -> Exponent {
        self.alpha
    }

    pub fn plus(&self) -> bool {
        self.plus
    }

    /// True iff a repetition of exponent `beta` is forbidden by this bound.
    pub fn violated_by(&self, beta: Exponent) -> bool {
        if self.plus {
            beta > self.alpha
        } else {
            beta >= self.alpha
        }
    }

    /// Smallest run length `e` such that a factor with period `p` and
    /// length `p + e` is forbidden.
    pub(crate) fn min_violating_extension(&self, period: usize) -> usize {
        // (p + e) / p >= a / b  <=>  e * b >= (a - b) * p
        let a = *self.alpha.numer() as u128;
        let b = *self.alpha.denom() as u128;
        let p = period as u128;
        let num = (a - b) * p;
        let need = if self.plus {
            num / b + 1
        } else {
            num.div_ceil(b)
        };
        usize::try_from(need).unwrap_or(usize::MAX)
    }
}

impl fmt::Display for PowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alpha)?;
        if self.plus {
            f.write_str("+")?;
        }
        Ok(())
    }
}

impl FromStr for PowerBound {
    type Err = Error;

    /// Accepts `N`, `N/D`, `N+` and `N/D+`.
    fn from_str(text: &str) -> Result<Self> {
        let malformed = || Error::InvalidArgument(format!("malformed exponent {text:?}"));
        let text = text.trim();
        let (body, plus) = match text.strip_suffix('+') {
            Some(body) => (body, true),
            None => (text, false),
        };
        let parse_int = |s: &str| -> Result<u64> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            s.parse().map_err(|_| malformed())
        };
        let (numer, denom) = match body.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(body)?, 1),
        };
        if denom == 0 {
            return Err(malformed());
        }
        PowerBound::from_ratio(numer, denom, plus)
    }
}

/// A pair `(k, bound)` to be tested for admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpsilonQuery {
    pub k: usize,
    pub bound: PowerBound,
}

/// Admissible parameters for the transition construction: `alpha+` with
/// `k >= 3, alpha >= 2`; plain `alpha` with `k = 3, alpha > 2` or
/// `k > 3, alpha >= 2`.
pub fn in_upsilon(q: UpsilonQuery) -> bool {
    let two = Exponent::from_integer(2);
    let alpha = q.bound.alpha();
    if q.bound.plus() {
        q.k >= 3 && alpha >= two
    } else {
        (q.k == 3 && alpha > two) || (q.k > 3 && alpha >= two)
    }
}

pub(crate) fn require_upsilon(k: usize, bound: PowerBound) -> Result<()> {
    if in_upsilon(UpsilonQuery { k, bound }) {
        Ok(())
    } else {
        Err(Error::UnsupportedParameters { k, bound })
    }
}

/// Number of (possibly overlapping) occurrences of the nonempty factor `f`.
pub fn occur(w: &[u8], f: &[u8]) -> Result<usize> {
    if f.is_empty() {
        return Err(Error::InvalidArgument(
            "occurrence count is defined for nonempty factors only".into(),
        ));
    }
    Ok(count_occurrences(w, f))
}

pub(crate) fn count_occurrences(w: &[u8], f: &[u8]) -> usize {
    if f.len() > w.len() {
        return 0;
    }
    w.windows(f.len()).filter(|win| *win == f).count()
}

pub(crate) fn find_from(w: &[u8], f: &[u8], from: usize) -> Option<usize> {
    if f.is_empty() {
        return Some(from.min(w.len()));
    }
    if from + f.len() > w.len() {
        return None;
    }
    w[from..]
        .windows(f.len())
        .position(|win| win == f)
        .map(|i| i + from)
}

pub fn reverse(w: &Word) -> Word {
    let mut letters = w.letters.clone();
    letters.reverse();
    Word {
        letters,
        alphabet: w.alphabet,
    }
}

pub fn prefixes(w: &Word) -> BTreeSet<Word> {
    (0..=w.len()).map(|i| w.slice(0..i)).collect()
}

pub fn suffixes(w: &Word) -> BTreeSet<Word> {
    (0..=w.len()).map(|i| w.slice(i..w.len())).collect()
}

/// All factors including the empty word and `w` itself.
pub fn factors(w: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    out.insert(Word::empty(w.alphabet));
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            out.insert(w.slice(i..j));
        }
    }
    out
}
