//! Constant-free word-problem machinery: Dehn rewriting for small
//! cancellation presentations and syllable normal forms for free products.

use crate::abelian::Abelianization;
use crate::error::{Error, Result};
use crate::presentation::{symmetrized_closure, Backend, Presentation};
use crate::quotient::PermutationQuotients;
use crate::words::{Letter, Word};

/// Solver for the word problem of a validated presentation.
#[derive(Clone, Debug)]
pub struct WordProblem {
    presentation: Presentation,
    /// Symmetrized closure, sorted.
    closure: Vec<Word>,
    /// Closure members grouped by first letter code.
    by_first: Vec<Vec<usize>>,
    max_member: usize,
    min_member: usize,
    /// Distinct subwords of relators of length `1..=max/2`, shortlex order.
    short_subwords: Vec<Word>,
    quotients: PermutationQuotients,
}

/// A free-product syllable `g^e`.
pub type Syllable = (usize, i64);

impl WordProblem {
    pub fn new(presentation: Presentation) -> Self {
        let closure: Vec<Word> = if presentation.backend() == Backend::SmallCancellation {
            symmetrized_closure(presentation.relators())
                .expect("validated relators are non-empty")
                .into_iter()
                .collect()
        } else {
            Vec::new()
        };
        let mut by_first = vec![Vec::new(); 2 * presentation.rank()];
        for (i, m) in closure.iter().enumerate() {
            by_first[m.letters()[0].code()].push(i);
        }
        let max_member = closure.iter().map(Word::len).max().unwrap_or(0);
        let min_member = closure.iter().map(Word::len).min().unwrap_or(0);
        let mut short: Vec<Word> = closure.iter().flat_map(|m| (1..=m.len() / 2).map(move |l| m.prefix(l))).collect();
        short.sort();
        short.dedup();
        let quotients = if presentation.backend() == Backend::SmallCancellation {
            PermutationQuotients::find(presentation.rank(), presentation.relators(), 3)
        } else {
            PermutationQuotients::default()
        };
        WordProblem { presentation, closure, by_first, max_member, min_member, short_subwords: short, quotients }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn backend(&self) -> Backend {
        self.presentation.backend()
    }

    pub fn rank(&self) -> usize {
        self.presentation.rank()
    }

    pub fn abelian(&self) -> &Abelianization {
        self.presentation.abelianization()
    }

    /// Finite permutation quotients; empty unless the backend is small
    /// cancellation.
    pub fn quotients(&self) -> &PermutationQuotients {
        &self.quotients
    }

    pub fn closure(&self) -> &[Word] {
        &self.closure
    }

    pub fn short_relator_subwords(&self) -> &[Word] {
        &self.short_subwords
    }

    pub fn min_relator_length(&self) -> usize {
        self.min_member
    }

    pub fn max_relator_length(&self) -> usize {
        self.max_member
    }

    /// Dehn's algorithm; the free backend degenerates to free reduction.
    pub fn dehn_reduce(&self, w: &Word) -> Result<Word> {
        self.dehn_reduce_with(w, &mut |_| {})
    }

    /// Like [`WordProblem::dehn_reduce`], reporting every intermediate word.
    pub fn dehn_reduce_with(&self, w: &Word, step: &mut dyn FnMut(&Word)) -> Result<Word> {
        match self.backend() {
            Backend::FreeProduct => Err(Error::Unsupported { backend: Backend::FreeProduct.name() }),
            Backend::Free => {
                let r = w.free_reduce();
                if r.len() != w.len() {
                    step(&r);
                }
                Ok(r)
            }
            Backend::SmallCancellation => Ok(self.dehn_core(w, step)),
        }
    }

    fn dehn_core(&self, w: &Word, step: &mut dyn FnMut(&Word)) -> Word {
        let reduced = w.free_reduce();
        if reduced.len() != w.len() {
            step(&reduced);
        }
        let mut cur = reduced.into_letters();
        let mut start = 0;
        while let Some((i, m, l)) = self.find_long_piece(&cur, start) {
            let member = self.closure[m].letters();
            let mut out: Vec<Letter> = Vec::with_capacity(cur.len());
            out.extend_from_slice(&cur[..i]);
            let mut low = out.len();
            let replacement = member[l..].iter().rev().map(|x| x.inverse());
            for x in replacement.chain(cur[i + l..].iter().copied()) {
                if out.last() == Some(&x.inverse()) {
                    out.pop();
                    low = low.min(out.len());
                } else {
                    out.push(x);
                }
            }
            cur = out;
            start = low.saturating_sub(self.max_member);
            step(&Word::from_letters(cur.clone()));
        }
        Word::from_letters(cur)
    }

    /// First position `>= start` carrying more than half of a closure
    /// member; returns `(position, member, matched length)`.
    fn find_long_piece(&self, w: &[Letter], start: usize) -> Option<(usize, usize, usize)> {
        for i in start..w.len() {
            let mut best: Option<(usize, usize)> = None;
            for &m in &self.by_first[w[i].code()] {
                let member = self.closure[m].letters();
                let l = common_prefix(&w[i..], member);
                if 2 * l > member.len() && best.is_none_or(|(_, bl)| l > bl) {
                    best = Some((m, l));
                }
            }
            if let Some((m, l)) = best {
                return Some((i, m, l));
            }
        }
        None
    }

    /// Cyclic Dehn reduction: returns `(r, c)` with `r = c·w·c⁻¹`, `r`
    /// cyclically reduced and no cyclic subword of `r` longer than half a
    /// relator.
    pub fn cyclic_dehn_reduce(&self, w: &Word) -> Result<(Word, Word)> {
        let reduced = self.dehn_reduce(w)?;
        let (mut cur, mut c) = reduced.cyclic_reduce();
        if self.backend() != Backend::SmallCancellation {
            return Ok((cur, c));
        }
        while let Some((k, m, l)) = self.find_cyclic_piece(&cur) {
            let p = cur.prefix(k);
            let rotated = cur.rotate(k);
            c = p.inverse().concat(&c);
            let member = &self.closure[m];
            let next = member.suffix_from(l).inverse().concat(&rotated.suffix_from(l));
            let next = self.dehn_core(&next, &mut |_| {});
            let (core, conj) = next.cyclic_reduce();
            c = conj.concat(&c);
            cur = core;
        }
        Ok((cur, c.free_reduce()))
    }

    fn find_cyclic_piece(&self, w: &Word) -> Option<(usize, usize, usize)> {
        let n = w.len();
        let doubled: Vec<Letter> = w.letters().iter().chain(w.letters()).copied().collect();
        for k in 0..n {
            let window = &doubled[k..k + n];
            let mut best: Option<(usize, usize)> = None;
            for &m in &self.by_first[window[0].code()] {
                let member = self.closure[m].letters();
                let l = common_prefix(window, member);
                if 2 * l > member.len() && best.is_none_or(|(_, bl)| l > bl) {
                    best = Some((m, l));
                }
            }
            if let Some((m, l)) = best {
                return Some((k, m, l));
            }
        }
        None
    }

    /// Free-product syllables with exponents balanced into `(-n/2, n/2]`.
    pub fn syllables(&self, w: &Word) -> Vec<Syllable> {
        let orders = self.presentation.generator_orders();
        let mut out: Vec<Syllable> = Vec::new();
        for &l in w.letters() {
            let g = l.index();
            let order = orders.get(g).copied().flatten();
            match out.last_mut() {
                Some(top) if top.0 == g => {
                    top.1 = balance(top.1 + l.sign(), order);
                    if top.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, balance(l.sign(), order))),
            }
        }
        out
    }

    pub fn syllables_to_word(syllables: &[Syllable]) -> Word {
        let mut v = Vec::new();
        for &(g, e) in syllables {
            let l = Letter::new(g, e < 0);
            v.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        Word::from_letters(v)
    }

    /// A normal form for `w` when the backend has one (free and free
    /// product); `None` for small cancellation.
    pub fn canonical(&self, w: &Word) -> Option<Word> {
        match self.backend() {
            Backend::Free => Some(w.free_reduce()),
            Backend::FreeProduct => Some(Self::syllables_to_word(&self.syllables(w))),
            Backend::SmallCancellation => None,
        }
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        match self.backend() {
            Backend::Free => w.free_reduce().is_empty(),
            Backend::FreeProduct => self.syllables(w).is_empty(),
            Backend::SmallCancellation => self.dehn_core(w, &mut |_| {}).is_empty(),
        }
    }

    pub fn are_equal(&self, u: &Word, v: &Word) -> bool {
        match self.canonical(u) {
            Some(cu) => Some(cu) == self.canonical(v),
            None => self.is_trivial(&u.concat(&v.inverse())),
        }
    }

    /// Shortest representative when it is available without search: free
    /// and free-product normal forms, and short Dehn-reduced words.
    pub fn cheap_geodesic(&self, w: &Word) -> Option<Word> {
        if let Some(c) = self.canonical(w) {
            return Some(c);
        }
        let r = self.dehn_core(w, &mut |_| {});
        // A shorter equal word would bound a reduced diagram whose boundary
        // is at least one relator long, or two Greendlinger arcs long.
        (r.len() <= self.min_member / 2 + 1).then_some(r)
    }
}

fn common_prefix(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn balance(e: i64, order: Option<u64>) -> i64 {
    match order {
        None => e,
        Some(n) => {
            let n = n as i64;
            let r = e.rem_euclid(n);
            if 2 * r > n {
                r - n
            } else {
                r
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::load_presentation;

    fn sigma2() -> WordProblem {
        WordProblem::new(
            load_presentation("generators: a b c d\nrelators: abABcdCD\nbackend: small-cancellation\n").unwrap(),
        )
    }

    fn dinf() -> WordProblem {
        WordProblem::new(
            load_presentation("generators: s t\nrelators: ss\nrelators: tt\nbackend: free-product\n").unwrap(),
        )
    }

    #[test]
    fn dehn_examples() {
        let wp = sigma2();
        let p = |s: &str| wp.presentation().parse_word(s).unwrap();
        assert!(wp.dehn_reduce(&p("abABcdCD")).unwrap().is_empty());
        let r = wp.dehn_reduce(&p("abABc")).unwrap();
        assert_eq!(r, p("dCD").inverse());
        let f2 = WordProblem::new(load_presentation("generators: a b\nbackend: free\n").unwrap());
        assert_eq!(f2.dehn_reduce(&p("aAb")).unwrap(), p("b"));
        assert!(dinf().dehn_reduce(&p("ab")).is_err());
    }

    #[test]
    fn dehn_is_monotone() {
        let wp = sigma2();
        let w = wp.presentation().parse_word("abABcdCDdcDCbaBAabAB").unwrap();
        let mut last = w.len();
        let r = wp
            .dehn_reduce_with(&w, &mut |x| {
                assert!(x.len() < last);
                last = x.len();
            })
            .unwrap();
        assert!(wp.are_equal(&r, &w));
    }

    #[test]
    fn cyclic_dehn_tracks_conjugator() {
        let wp = sigma2();
        let p = |s: &str| wp.presentation().parse_word(s).unwrap();
        for s in ["cdCDabAB", "abABcdC", "aabABcdCDA", "bcdCDab"] {
            let w = p(s);
            let (r, c) = wp.cyclic_dehn_reduce(&w).unwrap();
            assert!(wp.are_equal(&r, &w.conjugate_by(&c)), "{s}");
            assert!(r.len() <= 4 || r.len() < w.len(), "{s}");
        }
    }

    #[test]
    fn free_product_normal_form() {
        let wp = dinf();
        let p = |s: &str| wp.presentation().parse_word(s).unwrap();
        assert_eq!(wp.canonical(&p("sss")).unwrap(), p("s"));
        assert_eq!(wp.canonical(&p("S")).unwrap(), p("s"));
        assert_eq!(wp.canonical(&p("sttS")).unwrap(), Word::empty());
        assert!(!wp.are_equal(&p("sts"), &p("tst")));
        let z5 =
            WordProblem::new(load_presentation("generators: a b\nrelators: aaaaa\nbackend: free-product\n").unwrap());
        let q = |s: &str| z5.presentation().parse_word(s).unwrap();
        assert_eq!(z5.canonical(&q("aaa")).unwrap(), q("AA"));
        assert_eq!(z5.canonical(&q("bbAAAA")).unwrap(), q("bba"));
    }
}
