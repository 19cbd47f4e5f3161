//! Word and conjugacy problems.

mod conjugacy;
mod context;
mod geodesic;
mod word_problem;

pub use conjugacy::ConjugacyWitness;
pub use context::{build_context, BuildOptions, DeltaSource, HyperbolicConstants, HyperbolicContext, KProvider};
pub use word_problem::{Syllable, WordProblem};

use crate::error::Result;
use crate::words::Word;

/// Dehn's algorithm (free reduction for the free backend).
pub fn dehn_reduce(ctx: &HyperbolicContext, w: &Word) -> Result<Word> {
    ctx.word_problem().dehn_reduce(w)
}

/// [`dehn_reduce`] with a callback observing every intermediate word.
pub fn dehn_reduce_with(ctx: &HyperbolicContext, w: &Word, step: &mut dyn FnMut(&Word)) -> Result<Word> {
    ctx.word_problem().dehn_reduce_with(w, step)
}

pub fn are_equal(ctx: &HyperbolicContext, u: &Word, v: &Word) -> bool {
    ctx.are_equal(u, v)
}

pub fn geodesic_representative(ctx: &HyperbolicContext, w: &Word) -> Word {
    ctx.geodesic(w)
}

pub fn are_conjugate(ctx: &HyperbolicContext, u: &Word, v: &Word) -> Option<ConjugacyWitness> {
    conjugacy::are_conjugate(ctx, u, v)
}
