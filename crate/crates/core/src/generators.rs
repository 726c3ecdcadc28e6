//! Lazy infinite words.
//!
//! A [`RightInfiniteWord`] is a memoizing stream: `prefix(n)` computes
//! letters on demand and never changes a letter once produced. Producers are
//! morphic fixed points, letterwise relabelings, a finite head followed by
//! another stream, and depth-first searches. A [`LeftInfiniteWord`] is stored
//! as its reversal.
//!
//! Both shipped generators are fixed points of primitive morphisms and hence
//! uniformly recurrent: every factor recurs, so their factor sets equal
//! their recurrent factor sets and membership can be decided by scanning a
//! long enough prefix.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::search::{Constraint, DfsStream};
use crate::words::{encode, find_from, require_upsilon, Alphabet, PowerBound, Word};

/// Prefix windows used to decide factor membership in uniformly recurrent
/// words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowConfig {
    /// Smallest window; the first scan uses `max(start, 8 * |f|)`.
    pub start: usize,
    /// Largest window before a query is reported undecided.
    pub cap: usize,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            start: 256,
            cap: 1 << 22,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Vec<u8>>,
}

impl Morphism {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::InvalidArgument(format!(
                "expected {} images, got {}",
                alphabet.size(),
                images.len()
            )));
        }
        let images: Vec<Vec<u8>> = images.into_iter().map(Word::into_letters).collect();
        if let Some(bad) = images.iter().position(|im| im.is_empty()) {
            return Err(Error::InvalidArgument(format!(
                "image of letter {bad} is empty"
            )));
        }
        if images.iter().flatten().any(|&c| !alphabet.contains(c)) {
            return Err(Error::InvalidArgument(
                "image letter outside the alphabet".into(),
            ));
        }
        Ok(Morphism { alphabet, images })
    }

    /// `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Self {
        Morphism {
            alphabet: Alphabet::new(2).unwrap(),
            images: vec![vec![0, 1], vec![1, 0]],
        }
    }

    /// `0 -> 012, 1 -> 02, 2 -> 1`; its fixed point is square-free.
    pub fn theta() -> Self {
        Morphism {
            alphabet: Alphabet::new(3).unwrap(),
            images: vec![vec![0, 1, 2], vec![0, 2], vec![1]],
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn apply(&self, w: &[u8]) -> Vec<u8> {
        w.iter()
            .flat_map(|&c| self.image(c).iter().copied())
            .collect()
    }

    pub fn is_prolongable(&self, seed: u8) -> bool {
        let im = self.image(seed);
        im.len() >= 2 && im[0] == seed
    }

    /// Letters reachable from `seed` by iterating the morphism, sorted.
    fn reachable(&self, seed: u8) -> Vec<u8> {
        let mut seen = vec![false; self.alphabet.size()];
        let mut stack = vec![seed];
        seen[seed as usize] = true;
        while let Some(c) = stack.pop() {
            for &d in self.image(c) {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    stack.push(d);
                }
            }
        }
        (0..self.alphabet.size() as u8)
            .filter(|&c| seen[c as usize])
            .collect()
    }

    /// Primitivity restricted to `letters`: some power of the incidence
    /// matrix is strictly positive. Wielandt's bound `(s-1)^2 + 1` limits
    /// the powers to try.
    fn is_primitive_on(&self, letters: &[u8]) -> bool {
        let s = letters.len();
        let idx = |c: u8| letters.iter().position(|&d| d == c);
        let mut base = vec![vec![false; s]; s];
        for (i, &c) in letters.iter().enumerate() {
            for &d in self.image(c) {
                if let Some(j) = idx(d) {
                    base[i][j] = true;
                }
            }
        }
        let mut power = base.clone();
        for _ in 0..(s.saturating_sub(1)).pow(2) + 1 {
            if power.iter().flatten().all(|&b| b) {
                return true;
            }
            let mut next = vec![vec![false; s]; s];
            for i in 0..s {
                for k in 0..s {
                    if power[i][k] {
                        for j in 0..s {
                            next[i][j] |= base[k][j];
                        }
                    }
                }
            }
            power = next;
        }
        power.iter().flatten().all(|&b| b)
    }
}

#[derive(Debug, Clone)]
enum Source {
    FixedPoint {
        morphism: Morphism,
        cursor: usize,
    },
    Relabel {
        inner: Box<RightInfiniteWord>,
        map: Vec<u8>,
    },
    Concat {
        head_len: usize,
        tail: Box<RightInfiniteWord>,
    },
    Search(Box<DfsStream>),
}

/// A lazily computed right-infinite word.
///
/// Single-owner: queries take `&mut self` because they grow the memo.
#[derive(Debug, Clone)]
pub struct RightInfiniteWord {
    alphabet: Alphabet,
    memo: Vec<u8>,
    source: Source,
    uniformly_recurrent: bool,
    /// Every letter that can occur, when known from the construction.
    letter_set: Option<Vec<u8>>,
    /// For each factor length, a prefix length known to contain every
    /// factor of that length.
    settled: BTreeMap<usize, usize>,
}

impl RightInfiniteWord {
    fn from_source(
        alphabet: Alphabet,
        memo: Vec<u8>,
        source: Source,
        uniformly_recurrent: bool,
        letter_set: Option<Vec<u8>>,
    ) -> Self {
        RightInfiniteWord {
            alphabet,
            memo,
            source,
            uniformly_recurrent,
            letter_set,
            settled: BTreeMap::new(),
        }
    }

    pub(crate) fn from_search(
        alphabet: Alphabet,
        stream: DfsStream,
        letter_set: Option<Vec<u8>>,
    ) -> Self {
        RightInfiniteWord::from_source(
            alphabet,
            Vec::new(),
            Source::Search(Box::new(stream)),
            false,
            letter_set,
        )
    }

    /// The composite `head · tail`.
    pub fn concat(head: Word, tail: RightInfiniteWord) -> Self {
        let alphabet = head.alphabet().max(tail.alphabet);
        let letter_set = tail.letter_set.as_ref().map(|set| {
            let mut all: Vec<u8> = set.iter().chain(head.iter()).copied().collect();
            all.sort_unstable();
            all.dedup();
            all
        });
        let head_len = head.len();
        RightInfiniteWord::from_source(
            alphabet,
            head.into_letters(),
            Source::Concat {
                head_len,
                tail: Box::new(tail),
            },
            false,
            letter_set,
        )
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_uniformly_recurrent(&self) -> bool {
        self.uniformly_recurrent
    }

    /// Letters that can occur, when the construction pins them down.
    pub fn letter_set(&self) -> Option<&[u8]> {
        self.letter_set.as_deref()
    }

    /// Letters computed so far.
    pub fn cached(&self) -> &[u8] {
        &self.memo
    }

    /// Finite head and tail stream of a composite.
    pub fn split_concat(&self) -> Option<(&[u8], &RightInfiniteWord)> {
        match &self.source {
            Source::Concat { head_len, tail } => Some((&self.memo[..*head_len], tail)),
            _ => None,
        }
    }

    /// Makes at least `n` letters available and returns them.
    pub fn ensure(&mut self, n: usize) -> Result<&[u8]> {
        if self.memo.len() < n {
            match &mut self.source {
                Source::FixedPoint { morphism, cursor } => {
                    while self.memo.len() < n {
                        let c = self.memo[*cursor];
                        self.memo.extend_from_slice(morphism.image(c));
                        *cursor += 1;
                    }
                }
                Source::Relabel { inner, map } => {
                    let start = self.memo.len();
                    let letters = inner.ensure(n)?;
                    self.memo
                        .extend(letters[start..n].iter().map(|&c| map[c as usize]));
                }
                Source::Concat { head_len, tail } => {
                    let start = self.memo.len() - *head_len;
                    let letters = tail.ensure(n - *head_len)?;
                    self.memo.extend_from_slice(&letters[start..]);
                }
                Source::Search(stream) => stream.fill(&mut self.memo, n)?,
            }
        }
        Ok(&self.memo[..n])
    }

    pub fn prefix(&mut self, n: usize) -> Result<Word> {
        let alphabet = self.alphabet;
        let letters = self.ensure(n)?.to_vec();
        Ok(Word::from_trusted(letters, alphabet))
    }

    pub fn letter(&mut self, i: usize) -> Result<u8> {
        Ok(self.ensure(i + 1)?[i])
    }

    /// First occurrence of `f` starting at or after `from`, scanning
    /// prefixes up to `cap` letters.
    pub fn find_occurrence(&mut self, f: &[u8], from: usize, cap: usize) -> Result<Option<usize>> {
        let mut len = (from + f.len()).max(64).min(cap.max(from + f.len()));
        loop {
            let pre = self.ensure(len)?;
            if let Some(pos) = find_from(pre, f, from) {
                return Ok(Some(pos));
            }
            if len >= cap {
                return Ok(None);
            }
            len = (len * 2).min(cap);
        }
    }

    /// The uniformly recurrent word whose factor set membership queries
    /// target: the word itself, or the tail of a composite.
    fn recurrent_core(&mut self) -> Result<&mut RightInfiniteWord> {
        if self.uniformly_recurrent {
            return Ok(self);
        }
        match &mut self.source {
            Source::Concat { tail, .. } if tail.uniformly_recurrent => Ok(tail),
            _ => Err(Error::InvalidArgument(
                "factor membership needs a uniformly recurrent word or a composite with such a tail"
                    .into(),
            )),
        }
    }

    /// Decides whether `f` is a factor (equivalently, a recurrent factor) of
    /// this uniformly recurrent word. See [`factor_in`].
    pub fn factor_in(&mut self, f: &[u8], window: &WindowConfig) -> Result<bool> {
        let core = self.recurrent_core()?;
        if f.is_empty() {
            return Ok(true);
        }
        if let Some(set) = &core.letter_set {
            if f.iter().any(|c| set.binary_search(c).is_err()) {
                return Ok(false);
            }
        }
        let m = f.len();
        if let Some(&settled) = core.settled.get(&m) {
            return Ok(find_from(core.ensure(settled)?, f, 0).is_some());
        }
        let mut len = window.start.max(8 * m).min(window.cap.max(m));
        let mut prev_count = None;
        let mut stable_rounds = 0;
        let mut searched_to: usize = 0;
        loop {
            let pre = core.ensure(len)?;
            if find_from(pre, f, searched_to.saturating_sub(m - 1)).is_some() {
                return Ok(true);
            }
            searched_to = len;
            let count = distinct_factor_count(pre, m);
            if prev_count == Some(count) {
                stable_rounds += 1;
                if stable_rounds >= 2 {
                    core.settled.insert(m, len);
                    return Ok(false);
                }
            } else {
                stable_rounds = 0;
            }
            prev_count = Some(count);
            if len >= window.cap {
                return Err(Error::Undecided(format!(
                    "membership of {} not settled within a {}-letter window",
                    encode(f),
                    window.cap
                )));
            }
            len = (len * 2).min(window.cap);
        }
    }
}

const MERSENNE_61: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let folded = (p & MERSENNE_61 as u128) + (p >> 61);
    let folded = folded as u64;
    if folded >= MERSENNE_61 {
        folded - MERSENNE_61
    } else {
        folded
    }
}

/// Number of distinct factors of length `m`, by polynomial rolling hashes
/// modulo `2^61 - 1`. Hashing modulo a power of two is avoided because
/// Thue-Morse blocks collide under it.
fn distinct_factor_count(w: &[u8], m: usize) -> usize {
    if m == 0 || m > w.len() {
        return usize::from(m == 0);
    }
    const BASE: u64 = 0x1f3_5a7b_9c1d;
    let mut top = 1;
    for _ in 1..m {
        top = mul_mod(top, BASE);
    }
    let mut h = 0;
    for &c in &w[..m] {
        h = (mul_mod(h, BASE) + c as u64 + 1) % MERSENNE_61;
    }
    let mut seen = HashSet::with_capacity(4 * m);
    seen.insert(h);
    for i in m..w.len() {
        let out = mul_mod(w[i - m] as u64 + 1, top);
        h = (h + MERSENNE_61 - out) % MERSENNE_61;
        h = (mul_mod(h, BASE) + w[i] as u64 + 1) % MERSENNE_61;
        seen.insert(h);
    }
    seen.len()
}

/// A left-infinite word, stored as its reversal.
#[derive(Debug, Clone)]
pub struct LeftInfiniteWord {
    rev: RightInfiniteWord,
}

impl LeftInfiniteWord {
    pub fn from_reversal(rev: RightInfiniteWord) -> Self {
        LeftInfiniteWord { rev }
    }

    pub fn reversal(&self) -> &RightInfiniteWord {
        &self.rev
    }

    pub fn reversal_mut(&mut self) -> &mut RightInfiniteWord {
        &mut self.rev
    }

    pub fn into_reversal(self) -> RightInfiniteWord {
        self.rev
    }

    pub fn alphabet(&self) -> Alphabet {
        self.rev.alphabet()
    }

    pub fn suffix(&mut self, n: usize) -> Result<Word> {
        Ok(self.rev.prefix(n)?.reverse())
    }

    /// The word `self · tail`.
    pub fn append(self, tail: &Word) -> LeftInfiniteWord {
        LeftInfiniteWord::from_reversal(RightInfiniteWord::concat(tail.reverse(), self.rev))
    }
}

pub fn fixed_point(morphism: Morphism, seed: u8) -> Result<RightInfiniteWord> {
    if !morphism.alphabet.contains(seed) {
        return Err(Error::InvalidArgument(format!(
            "seed {seed} outside the alphabet"
        )));
    }
    if !morphism.is_prolongable(seed) {
        return Err(Error::InvalidArgument(format!(
            "morphism is not prolongable at {seed}: its image must start with {seed} and have length >= 2"
        )));
    }
    let letters = morphism.reachable(seed);
    let uniformly_recurrent = morphism.is_primitive_on(&letters);
    let memo = morphism.image(seed).to_vec();
    Ok(RightInfiniteWord::from_source(
        morphism.alphabet,
        memo,
        Source::FixedPoint {
            morphism,
            cursor: 1,
        },
        uniformly_recurrent,
        Some(letters),
    ))
}

pub fn thue_morse() -> RightInfiniteWord {
    fixed_point(Morphism::thue_morse(), 0).expect("Thue-Morse morphism is prolongable at 0")
}

pub fn theta_word() -> RightInfiniteWord {
    fixed_point(Morphism::theta(), 0).expect("theta is prolongable at 0")
}

/// Letterwise image under an injective map `(from, to)` into `target`.
pub fn relabel(
    t: RightInfiniteWord,
    mapping: &[(u8, u8)],
    target: Alphabet,
) -> Result<RightInfiniteWord> {
    let mut map: Vec<Option<u8>> = vec![None; t.alphabet.size()];
    for &(from, to) in mapping {
        if !t.alphabet.contains(from) {
            return Err(Error::InvalidArgument(format!(
                "mapping source {from} outside the word's alphabet"
            )));
        }
        if !target.contains(to) {
            return Err(Error::InvalidArgument(format!(
                "mapping target {to} outside the target alphabet"
            )));
        }
        if map[from as usize].is_some_and(|prev| prev != to) {
            return Err(Error::InvalidArgument(format!(
                "letter {from} mapped twice"
            )));
        }
        map[from as usize] = Some(to);
    }
    let map: Vec<u8> = map
        .into_iter()
        .enumerate()
        .map(|(c, to)| {
            to.ok_or_else(|| Error::InvalidArgument(format!("letter {c} is not mapped")))
        })
        .collect::<Result<_>>()?;
    let mut images = map.clone();
    images.sort_unstable();
    images.dedup();
    if images.len() != map.len() {
        return Err(Error::InvalidArgument(
            "relabeling map is not injective".into(),
        ));
    }
    let letter_set = t.letter_set.as_ref().map(|set| {
        let mut out: Vec<u8> = set.iter().map(|&c| map[c as usize]).collect();
        out.sort_unstable();
        out
    });
    let uniformly_recurrent = t.uniformly_recurrent;
    Ok(RightInfiniteWord::from_source(
        target,
        Vec::new(),
        Source::Relabel {
            inner: Box::new(t),
            map,
        },
        uniformly_recurrent,
        letter_set,
    ))
}

/// A power-free right-infinite word over `Σ_k ∖ {avoid}`: Thue-Morse on the
/// two remaining letters when `k = 3`, the θ fixed point on three of them
/// otherwise. The relabeling is order-preserving onto the smallest allowed
/// letters, except that `must_contain` replaces the largest image letter
/// when it would otherwise be missing.
pub fn base_word_avoiding(
    k: usize,
    bound: PowerBound,
    avoid: u8,
    must_contain: Option<u8>,
) -> Result<RightInfiniteWord> {
    require_upsilon(k, bound)?;
    let alphabet = Alphabet::new(k)?;
    if !alphabet.contains(avoid) {
        return Err(Error::InvalidArgument(format!(
            "letter {avoid} outside Σ_{k}"
        )));
    }
    if let Some(m) = must_contain {
        if m == avoid || !alphabet.contains(m) {
            return Err(Error::InvalidArgument(format!(
                "cannot include letter {m} while avoiding {avoid} over Σ_{k}"
            )));
        }
    }
    let (base, width) = if k == 3 {
        (thue_morse(), 2)
    } else {
        (theta_word(), 3)
    };
    let mut image: Vec<u8> = alphabet
        .letters()
        .filter(|&c| c != avoid)
        .take(width)
        .collect();
    if let Some(m) = must_contain {
        if !image.contains(&m) {
            *image.last_mut().expect("nonempty image") = m;
            image.sort_unstable();
        }
    }
    let mapping: Vec<(u8, u8)> = image
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u8, c))
        .collect();
    relabel(base, &mapping, alphabet)
}

/// Factor membership in a uniformly recurrent word (or the uniformly
/// recurrent tail of a composite).
///
/// Scans `prefix(W)` with `W = max(start, 8|f|)`, doubling up to the cap. A
/// negative answer requires that two consecutive doublings add no new
/// factor of length `|f|`; reaching the cap without that is undecided.
pub fn factor_in(t: &mut RightInfiniteWord, f: &[u8], window: &WindowConfig) -> Result<bool> {
    t.factor_in(f, window)
}

/// A left-infinite word all of whose factors are factors of `t`.
///
/// Built leftwards, smallest letter first, backtracking inside the
/// lookahead buffer on dead ends.
pub fn left_limit(
    t: &RightInfiniteWord,
    window: WindowConfig,
    slack: usize,
    budget: u64,
) -> Result<LeftInfiniteWord> {
    if !t.is_uniformly_recurrent() {
        return Err(Error::InvalidArgument(
            "left limit requires a uniformly recurrent word".into(),
        ));
    }
    let candidates: Vec<u8> = match t.letter_set() {
        Some(set) => set.to_vec(),
        None => t.alphabet().letters().collect(),
    };
    let stream = DfsStream::new(
        Vec::new(),
        candidates.clone(),
        Constraint::MirroredFactorOf {
            word: Box::new(t.clone()),
            window,
        },
        slack,
        budget,
        "left",
    )?;
    Ok(LeftInfiniteWord::from_reversal(
        RightInfiniteWord::from_search(t.alphabet(), stream, Some(candidates)),
    ))
}
