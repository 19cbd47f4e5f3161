//! Decision procedures for torsion, cyclic and virtually cyclic subgroups,
//! malnormality, centralizers, normalizers, roots and the center.
//!
//! Every procedure reduces to finite searches whose extent comes from the
//! bounds in [`crate::geometry::bounds`]; the bounds consumed by a query are
//! collected by its [`Decider`].

mod centralizers;
mod enumerate;
mod malnormal;
mod membership;

use crate::creduction::{c_reduce, CReductionOutcome};
use crate::error::{Error, Result};
use crate::geometry::{BoundBundle, BoundRecorder};
use crate::kernel::{ConjugacyWitness, HyperbolicContext};
use crate::words::Word;
use crate::Rational;

pub(crate) use enumerate::{elements_up_to, for_each_element};

/// Verdict of [`classify_element`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementClass {
    Finite { order: u64 },
    InfiniteOrder { certificate: CReductionOutcome },
}

/// Left coset representatives of `⟨base⟩` in a subgroup; the first
/// representative is ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTransversal {
    pub base: Word,
    /// Set when `base` is the power `h^n` of the element asked about.
    pub modulus_note: Option<u64>,
    pub representatives: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MalnormalityVerdict {
    Malnormal,
    /// `g·h^p·g⁻¹ = h^q` with `g ∉ ⟨h⟩`.
    Witness {
        g: Word,
        p: i64,
        q: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyVerdict {
    Malnormal,
    /// `g·h_i^p·g⁻¹ = h_j^q`, with `g ∉ ⟨h_i⟩` when `i = j`.
    CrossWitness {
        i: usize,
        j: usize,
        g: Word,
        p: i64,
        q: i64,
    },
}

/// `g·h1^{n1}·g⁻¹ = h2^{n2}` for the conjugator `g` of `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commensuration {
    pub n1: i64,
    pub n2: i64,
    pub witness: ConjugacyWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralizerResult {
    Finite { elements: Vec<Word> },
    VirtuallyZ { transversal: CosetTransversal },
}

/// An infinite-order `h` with its C-reduction `h1 = a·h^n·a⁻¹`.
#[derive(Clone, Debug)]
pub(crate) struct Reduced {
    pub h: Word,
    pub h1: Word,
    pub a: Word,
    pub n: u64,
}

/// Runs decision procedures against one context, recording the bounds
/// they consume.
pub struct Decider<'c> {
    ctx: &'c HyperbolicContext,
    bounds: BoundRecorder,
}

impl<'c> Decider<'c> {
    pub fn new(ctx: &'c HyperbolicContext) -> Self {
        Decider { ctx, bounds: BoundRecorder::default() }
    }

    pub fn context(&self) -> &'c HyperbolicContext {
        self.ctx
    }

    /// Largest value of each bound used so far.
    pub fn bounds(&self) -> BoundBundle {
        self.bounds.snapshot()
    }

    fn record(&self, f: impl FnOnce(&mut BoundBundle)) {
        self.bounds.update(f);
    }

    /// C-reduces `h`, reporting finite order as an error.
    pub(crate) fn reduce(&self, h: &Word) -> Result<Reduced> {
        if self.ctx.is_trivial(h) {
            return Err(Error::Torsion { order: 1 });
        }
        match c_reduce(self.ctx, h)? {
            CReductionOutcome::Torsion { order } => Err(Error::Torsion { order }),
            CReductionOutcome::CReduced { h1, u, n } => Ok(Reduced { h: h.clone(), h1, a: u, n }),
        }
    }

    /// The `n` with `x = h1^n` for a C-reduced `h1`, searched up to the
    /// quasigeodesic bound `(λ|x| + ε) / |h1|`.
    pub(crate) fn power_exponent(&self, x: &Word, h1: &Word) -> Option<i64> {
        let ctx = self.ctx;
        let c = ctx.constants();
        let len = Rational::from_integer(ctx.geodesic_length(x) as i64);
        let limit = ((c.lambda * len + c.epsilon) / Rational::from_integer(h1.len() as i64)).floor().to_integer();
        let abelian = ctx.word_problem().abelian();
        let kx = abelian.key(x);
        let kh = abelian.key(h1);
        signed_with_zero(limit.max(0) as u64).find(|&n| abelian.scale(&kh, n) == kx && ctx.are_equal(x, &h1.pow(n)))
    }

    /// The `m` with `x = h^m`, via the C-reduction of `h`.
    pub(crate) fn exponent_in(&self, x: &Word, red: &Reduced) -> Option<i64> {
        let a_inv = red.a.inverse();
        let n = red.n as i64;
        let mut best: Option<i64> = None;
        for i in 0..n {
            let y = Word::product([&red.a, x, &red.h.pow(-i), &a_inv]);
            if let Some(m) = self.power_exponent(&y, &red.h1) {
                let e = m * n + i;
                best = Some(match best {
                    Some(b) if b.abs() <= e.abs() => b,
                    _ => e,
                });
            }
        }
        best
    }

    /// Fails when a search would exceed the configured cap.
    fn check_cap(&self, name: &'static str, size: u128) -> Result<()> {
        let cap = self.ctx.options().search_cap as u128;
        if size > cap {
            return Err(Error::Infeasible {
                name,
                detail: format!("search of {size} candidates exceeds the cap {cap}"),
            });
        }
        Ok(())
    }
}

/// `1, -1, 2, -2, …, limit, -limit`.
pub(crate) fn signed(limit: u64) -> impl Iterator<Item = i64> + Clone {
    (1..=limit as i64).flat_map(|n| [n, -n])
}

/// `0` followed by [`signed`].
pub(crate) fn signed_with_zero(limit: u64) -> impl Iterator<Item = i64> + Clone {
    std::iter::once(0).chain(signed(limit))
}

pub fn classify_element(ctx: &HyperbolicContext, w: &Word) -> Result<ElementClass> {
    Decider::new(ctx).classify_element(w)
}

pub fn torsion_class_representatives(ctx: &HyperbolicContext) -> Result<Vec<Word>> {
    Decider::new(ctx).torsion_class_representatives()
}

pub fn conjugate_into_cyclic(ctx: &HyperbolicContext, w: &Word, h: &Word) -> Result<Vec<i64>> {
    Decider::new(ctx).conjugate_into_cyclic(w, h)
}

pub fn member_of_cyclic(ctx: &HyperbolicContext, w: &Word, h: &Word) -> Result<Option<i64>> {
    Decider::new(ctx).member_of_cyclic(w, h)
}

pub fn member_of_virtually_z(ctx: &HyperbolicContext, w: &Word, coset_reps: &[Word], h: &Word) -> Result<bool> {
    Decider::new(ctx).member_of_virtually_z(w, coset_reps, h)
}

pub fn double_coset_decide(
    ctx: &HyperbolicContext,
    u: &Word,
    v: &Word,
    h1: &Word,
    h2: &Word,
) -> Result<Option<(i64, i64)>> {
    Decider::new(ctx).double_coset_decide(u, v, h1, h2)
}

pub fn commensurate_cyclic(ctx: &HyperbolicContext, h1: &Word, h2: &Word) -> Result<Option<Commensuration>> {
    Decider::new(ctx).commensurate_cyclic(h1, h2)
}

pub fn malnormal_cyclic(ctx: &HyperbolicContext, h: &Word) -> Result<MalnormalityVerdict> {
    Decider::new(ctx).malnormal_cyclic(h)
}

pub fn malnormal_family(ctx: &HyperbolicContext, hs: &[Word]) -> Result<FamilyVerdict> {
    Decider::new(ctx).malnormal_family(hs)
}

pub fn centralizer_cyclic(ctx: &HyperbolicContext, h: &Word) -> Result<CosetTransversal> {
    Decider::new(ctx).centralizer_cyclic(h)
}

pub fn normalizer_cyclic(ctx: &HyperbolicContext, h: &Word) -> Result<CosetTransversal> {
    Decider::new(ctx).normalizer_cyclic(h)
}

pub fn roots(ctx: &HyperbolicContext, h: &Word) -> Result<Vec<(Word, u64)>> {
    Decider::new(ctx).roots(h)
}

pub fn maximal_cyclic(ctx: &HyperbolicContext, h: &Word) -> Result<bool> {
    Decider::new(ctx).maximal_cyclic(h)
}

pub fn centralizer_fg(ctx: &HyperbolicContext, gens: &[Word], search_len: usize) -> Result<CentralizerResult> {
    Decider::new(ctx).centralizer_fg(gens, search_len)
}

pub fn center(ctx: &HyperbolicContext, search_len: usize) -> Result<CentralizerResult> {
    Decider::new(ctx).center(search_len)
}
