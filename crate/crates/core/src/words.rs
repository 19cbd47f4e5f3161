//! Letters, words and the word syntax shared by every other module.
//!
//! A [`Word`] is an immutable value: every rewriting operation returns a new
//! word. The empty word is legal everywhere in this module.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A generator or the inverse of a generator.
///
/// Encoded as `2 * index + inverse`, so the derived ordering is
/// `a < A < b < B < ...`, which is the letter order used by every
/// breadth-first enumeration in the crate.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(((generator as u32) << 1) | inverse as u32)
    }

    pub fn generator(index: usize) -> Self {
        Self::new(index, false)
    }

    /// Dense code in `0..2 * rank`, suitable for indexing tables.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.index(), if self.is_inverse() { "^-1" } else { "" })
    }
}

/// Iterates over all `2 * rank` letters in letter order.
pub fn all_letters(rank: usize) -> impl Iterator<Item = Letter> + Clone {
    (0..2 * rank).map(Letter::from_code)
}

/// A finite sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Concatenation of several words.
    pub fn product<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v)
    }

    /// `g·self·g⁻¹`, without reduction.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        Word::product([g, self, &g.inverse()])
    }

    /// Literal power; negative exponents use the inverse word.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let reps = n.unsigned_abs() as usize;
        let mut v = Vec::with_capacity(base.len() * reps);
        for _ in 0..reps {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Rotation `ω_b·ω_a` for the split `ω ≡ ω_a·ω_b` with `|ω_a| = k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// All `len` rotations in offset order; the empty word yields `[ε]`.
    pub fn cyclic_conjugates(&self) -> Vec<Word> {
        if self.is_empty() {
            return vec![Word::empty()];
        }
        (0..self.len()).map(|k| self.rotate(k)).collect()
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced() && (self.len() < 2 || self.0[0] != self.0[self.len() - 1].inverse())
    }

    /// Freely and cyclically reduces, returning `(r, c)` with `r = c·w·c⁻¹`
    /// in the free group.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = self.free_reduce();
        let n = w.len();
        let mut i = 0;
        while i < n / 2 && w.0[i] == w.0[n - 1 - i].inverse() {
            i += 1;
        }
        let core = w.subword(i, n - i);
        let conj = w.prefix(i).inverse();
        (core, conj)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for l in &self.0 {
            sums[l.index()] += l.sign();
        }
        sums
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.index()).max()
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Generator names plus the textual word syntax.
///
/// Single-character lowercase names may be juxtaposed (`aB` is `a·b⁻¹`);
/// longer names are separate tokens with `^-1` for inverses (`g3 g4^-1`).
/// Tokens are separated by whitespace or `*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = !n.is_empty()
                && n.chars().next().is_some_and(|c| c.is_ascii_lowercase())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Presentation(format!("invalid generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Presentation(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn compact(&self) -> bool {
        self.names.iter().all(|n| n.len() == 1)
    }

    /// Parses a word; no reduction is applied.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut pos = 0usize;
        for raw in text.split_inclusive(|c: char| c.is_whitespace() || c == '*') {
            let token = raw.trim_end_matches(|c: char| c.is_whitespace() || c == '*');
            if !token.is_empty() {
                self.parse_token(token, pos, &mut letters)?;
            }
            pos += raw.len();
        }
        Ok(Word(letters))
    }

    fn parse_token(&self, token: &str, pos: usize, out: &mut Vec<Letter>) -> Result<()> {
        if token == "ε" || (token == "1" && self.lookup("1").is_none()) {
            return Ok(());
        }
        let (base, invert_last) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        if let Some(i) = self.lookup(base) {
            out.push(Letter::new(i, invert_last));
            return Ok(());
        }
        let start = out.len();
        for (off, c) in base.char_indices() {
            let lower = c.to_ascii_lowercase();
            let i = self
                .lookup(lower.encode_utf8(&mut [0; 4]))
                .ok_or_else(|| Error::Parse { token: token.to_string(), position: pos + off })?;
            out.push(Letter::new(i, c.is_ascii_uppercase()));
        }
        if out.len() == start {
            return Err(Error::Parse { token: token.to_string(), position: pos });
        }
        if invert_last {
            let last = out.last_mut().expect("non-empty");
            *last = last.inverse();
        }
        Ok(())
    }

    /// Prints a word in the syntax accepted by [`Alphabet::parse`]. The
    /// empty word prints as the empty string.
    pub fn format(&self, w: &Word) -> String {
        if self.compact() {
            w.letters()
                .iter()
                .map(|l| {
                    let n = &self.names[l.index()];
                    if l.is_inverse() {
                        n.to_ascii_uppercase()
                    } else {
                        n.clone()
                    }
                })
                .collect()
        } else {
            w.letters()
                .iter()
                .map(|l| {
                    let n = &self.names[l.index()];
                    if l.is_inverse() {
                        format!("{n}^-1")
                    } else {
                        n.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Like [`Alphabet::format`] but shows `ε` for the empty word.
    pub fn display(&self, w: &Word) -> String {
        if w.is_empty() {
            "ε".to_string()
        } else {
            self.format(w)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let al = ab();
        let a = Letter::generator(0);
        let b = Letter::generator(1);
        assert_eq!(al.parse("ab").unwrap().letters(), &[a, b]);
        assert_eq!(al.parse("aB").unwrap().letters(), &[a, b.inverse()]);
        assert!(al.parse("").unwrap().is_empty());
        assert_eq!(al.parse("a * b^-1").unwrap(), al.parse("aB").unwrap());
    }

    #[test]
    fn parse_reports_offending_token() {
        let err = ab().parse("ab ac").unwrap_err();
        match err {
            Error::Parse { token, position } => {
                assert_eq!(token, "ac");
                assert_eq!(position, 4);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn multi_character_names() {
        let al = Alphabet::new(["g1", "g2"]).unwrap();
        let w = al.parse("g1 g2^-1*g1").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(al.format(&w), "g1 g2^-1 g1");
    }

    #[test]
    fn free_reduction_examples() {
        let al = ab();
        let p = |s| al.parse(s).unwrap();
        assert!(p("aA").free_reduce().is_empty());
        assert_eq!(p("abBa").free_reduce(), p("aa"));
        assert_eq!(p("ab").free_reduce(), p("ab"));
    }

    #[test]
    fn cyclic_conjugate_examples() {
        let al = ab();
        let p = |s| al.parse(s).unwrap();
        assert_eq!(p("ab").cyclic_conjugates(), vec![p("ab"), p("ba")]);
        assert_eq!(p("aaa").cyclic_conjugates(), vec![p("aaa"); 3]);
        assert_eq!(Word::empty().cyclic_conjugates(), vec![Word::empty()]);
    }

    #[test]
    fn cyclic_reduce_tracks_conjugator() {
        let al = ab();
        let w = al.parse("baaB").unwrap();
        let (core, c) = w.cyclic_reduce();
        assert_eq!(core, al.parse("aa").unwrap());
        assert_eq!(w.conjugate_by(&c).free_reduce(), core);
    }

    #[test]
    fn shortlex_order() {
        let al = ab();
        let mut ws: Vec<Word> = ["B", "a", "", "aa", "A"].iter().map(|s| al.parse(s).unwrap()).collect();
        ws.sort();
        let s: Vec<String> = ws.iter().map(|w| al.format(w)).collect();
        assert_eq!(s, ["", "a", "A", "B", "aa"]);
    }
}
