//! Finite presentations, symmetrized closures and the small-cancellation
//! check that admits a presentation to the Dehn backend.

use std::collections::BTreeSet;
use std::fmt;

use crate::abelian::Abelianization;
use crate::error::{Error, Result};
use crate::scalar::parse_rational;
use crate::words::{Alphabet, Word};
use crate::Rational;

/// Word-problem discipline attached to a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// No relators.
    Free,
    /// Relators `g^n` for distinct generators `g`, `n >= 2`.
    FreeProduct,
    /// Relators satisfying C'(1/6); solved by Dehn's algorithm.
    SmallCancellation,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Free => "free",
            Backend::FreeProduct => "free-product",
            Backend::SmallCancellation => "small-cancellation",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "free" => Some(Backend::Free),
            "free-product" => Some(Backend::FreeProduct),
            "small-cancellation" => Some(Backend::SmallCancellation),
            _ => None,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    backend: Backend,
    declared_delta: Option<Rational>,
    /// Order of each generator under the free-product backend.
    orders: Vec<Option<u64>>,
    abelian: Abelianization,
}

impl Presentation {
    /// Validates `relators` against `backend` and stores them freely and
    /// cyclically reduced.
    pub fn new(
        alphabet: Alphabet,
        relators: Vec<Word>,
        backend: Backend,
        declared_delta: Option<Rational>,
    ) -> Result<Self> {
        let rank = alphabet.rank();
        if rank == 0 {
            return Err(Error::Presentation("no generators".into()));
        }
        if let Some(d) = declared_delta {
            if d < Rational::from_integer(0) {
                return Err(Error::Presentation(format!("negative delta {d}")));
            }
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if r.max_generator().is_some_and(|g| g >= rank) {
                return Err(Error::Presentation("relator uses an unknown generator".into()));
            }
            let (core, _) = r.cyclic_reduce();
            if core.is_empty() {
                return Err(Error::Presentation(format!(
                    "relator `{}` is trivial in the free group",
                    alphabet.format(&r)
                )));
            }
            reduced.push(core);
        }
        let mut orders = vec![None; rank];
        match backend {
            Backend::Free if !reduced.is_empty() => {
                return Err(Error::Presentation("free backend requires no relators".into()));
            }
            Backend::Free => {}
            Backend::FreeProduct => {
                for r in &reduced {
                    let first = r.letters()[0];
                    if r.letters().iter().any(|&l| l != first) || r.len() < 2 {
                        return Err(Error::Presentation(format!(
                            "free-product relator `{}` is not a power g^n with n >= 2",
                            alphabet.format(r)
                        )));
                    }
                    let g = first.index();
                    if orders[g].is_some() {
                        return Err(Error::Presentation(format!(
                            "generator `{}` has more than one power relator",
                            alphabet.names()[g]
                        )));
                    }
                    orders[g] = Some(r.len() as u64);
                }
            }
            Backend::SmallCancellation => {
                if reduced.is_empty() {
                    return Err(Error::Presentation("small-cancellation backend requires at least one relator".into()));
                }
                let report = small_cancellation_report(&reduced, Rational::new(1, 6));
                if !report.passes {
                    return Err(Error::Presentation(format!(
                        "C'(1/6) fails: piece `{}` of length {} against shortest relator of length {}",
                        alphabet.format(&report.longest_piece),
                        report.max_piece_length,
                        report.min_relator_length
                    )));
                }
            }
        }
        let abelian = Abelianization::new(rank, &reduced);
        Ok(Presentation { alphabet, relators: reduced, backend, declared_delta, orders, abelian })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn declared_delta(&self) -> Option<Rational> {
        self.declared_delta
    }

    /// Generator orders for the free-product backend (`None` = infinite).
    pub fn generator_orders(&self) -> &[Option<u64>] {
        &self.orders
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.abelian
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let w = self.alphabet.parse(text)?;
        Ok(w)
    }

    pub fn format(&self, w: &Word) -> String {
        self.alphabet.format(w)
    }

    pub fn max_relator_length(&self) -> usize {
        self.relators.iter().map(Word::len).max().unwrap_or(0)
    }
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// generators: a b c d
/// relators: a b A B c d C D
/// backend: small-cancellation
/// delta: 0
/// ```
pub fn load_presentation(document: &str) -> Result<Presentation> {
    let mut generators: Option<Vec<String>> = None;
    let mut relator_lines: Vec<(usize, String)> = Vec::new();
    let mut backend = None;
    let mut delta = None;
    for (lineno, raw) in document.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::Presentation(format!("line {}: expected `key: value`", lineno + 1)))?;
        let value = value.trim();
        match key.trim() {
            "generators" => {
                if generators.is_some() {
                    return Err(Error::Presentation("`generators` given twice".into()));
                }
                generators = Some(value.split_whitespace().map(str::to_string).collect());
            }
            "relators" => {
                if !value.is_empty() {
                    relator_lines.push((lineno + 1, value.to_string()));
                }
            }
            "backend" => {
                backend =
                    Some(Backend::parse(value).ok_or_else(|| {
                        Error::Presentation(format!("line {}: unknown backend `{value}`", lineno + 1))
                    })?);
            }
            "delta" => {
                delta = Some(
                    parse_rational(value)
                        .ok_or_else(|| Error::Presentation(format!("line {}: bad delta `{value}`", lineno + 1)))?,
                );
            }
            other => {
                return Err(Error::Presentation(format!("line {}: unknown key `{other}`", lineno + 1)));
            }
        }
    }
    let generators = generators.ok_or_else(|| Error::Presentation("missing `generators`".into()))?;
    let alphabet = Alphabet::new(generators)?;
    let backend = backend.ok_or_else(|| Error::Presentation("missing `backend`".into()))?;
    let mut relators = Vec::new();
    for (lineno, text) in relator_lines {
        let w = alphabet.parse(&text).map_err(|e| Error::Presentation(format!("line {lineno}: {e}")))?;
        relators.push(w);
    }
    Presentation::new(alphabet, relators, backend, delta)
}

/// Closure of `relators` under inversion and cyclic rotation.
pub fn symmetrized_closure(relators: &[Word]) -> Result<BTreeSet<Word>> {
    let mut out = BTreeSet::new();
    for r in relators {
        if r.is_empty() {
            return Err(Error::InvalidArgument("empty relator".into()));
        }
        for w in [r.clone(), r.inverse()] {
            out.extend(w.cyclic_conjugates());
        }
    }
    Ok(out)
}

/// Outcome of [`verify_small_cancellation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallCancellationReport {
    pub passes: bool,
    pub max_piece_length: usize,
    pub min_relator_length: usize,
    pub longest_piece: Word,
}

/// Checks the metric condition `C'(ratio)`: every piece is shorter than
/// `ratio` times the shortest relator.
pub fn verify_small_cancellation(p: &Presentation, ratio: Rational) -> SmallCancellationReport {
    small_cancellation_report(p.relators(), ratio)
}

fn small_cancellation_report(relators: &[Word], ratio: Rational) -> SmallCancellationReport {
    // Members are indexed by (relator, orientation, rotation) so that a
    // proper power contributes its self-overlaps as pieces.
    let mut members: Vec<Word> = Vec::new();
    for r in relators {
        for w in [r.clone(), r.inverse()] {
            members.extend(w.cyclic_conjugates());
        }
    }
    let mut longest = Word::empty();
    for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            let common =
                x.letters().iter().zip(y.letters()).take_while(|(a, b)| a == b).count().min(x.len().min(y.len()) - 1);
            if common > longest.len() {
                longest = x.prefix(common);
            }
        }
    }
    let min_len = relators.iter().map(Word::len).min().unwrap_or(0);
    let passes = relators.is_empty()
        || Rational::from_integer(longest.len() as i64) < ratio * Rational::from_integer(min_len as i64);
    SmallCancellationReport {
        passes,
        max_piece_length: longest.len(),
        min_relator_length: min_len,
        longest_piece: longest,
    }
}
