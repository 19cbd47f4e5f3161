use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::creduction::CReductionOutcome;
use crate::error::{Error, Result};
use crate::geometry::{estimate_delta_lower_bound, BallGraph};
use crate::kernel::geodesic::corridor_geodesic;
use crate::kernel::WordProblem;
use crate::presentation::{Backend, Presentation};
use crate::scalar::Scalar;
use crate::words::Word;
use crate::{Constants, Rational};

/// Choice of the quasigeodesic stability constant `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KProvider {
    /// `Tree` when δ = 0, `Conservative` otherwise.
    Auto,
    /// `k = 0`; only valid for δ = 0.
    Tree,
    /// `k = 4δ(λ + 1) + 2ε + 2`.
    Conservative,
}

impl KProvider {
    pub fn name(self) -> &'static str {
        match self {
            KProvider::Auto => "auto",
            KProvider::Tree => "tree",
            KProvider::Conservative => "conservative",
        }
    }
}

impl fmt::Display for KProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for KProvider {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(KProvider::Auto),
            "tree" => Ok(KProvider::Tree),
            "conservative" => Ok(KProvider::Conservative),
            other => Err(Error::InvalidArgument(format!("unknown k-provider `{other}`"))),
        }
    }
}

/// The constants δ, C, λ, ε and k of a hyperbolic context.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicConstants<S> {
    pub delta: S,
    /// Local geodesic scale; always `ceil(8δ) + 1`.
    pub c: u64,
    pub lambda: S,
    pub epsilon: S,
    pub k: S,
    /// The provider that produced `k` (never `Auto`).
    pub k_provider: KProvider,
}

impl<S: Scalar> HyperbolicConstants<S> {
    /// `C = ceil(8δ) + 1`, `λ = (C + 4δ)/(C − 4δ)`, `ε = 2δ`, and `k` from
    /// the provider.
    pub fn from_delta(delta: S, provider: KProvider) -> Result<Self> {
        if delta < S::zero() {
            return Err(Error::InvalidArgument(format!("negative delta {delta}")));
        }
        let eight = S::from_u64(8);
        let four = S::from_u64(4);
        let two = S::from_u64(2);
        let c = (eight * delta.clone())
            .ceil_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("delta {delta} too large")))?
            + 1;
        let cs = S::from_u64(c);
        let lambda = (cs.clone() + four.clone() * delta.clone()) / (cs - four.clone() * delta.clone());
        let epsilon = two.clone() * delta.clone();
        let provider = match provider {
            KProvider::Auto if delta == S::zero() => KProvider::Tree,
            KProvider::Auto => KProvider::Conservative,
            p => p,
        };
        let k = match provider {
            KProvider::Tree if delta != S::zero() => {
                return Err(Error::InvalidArgument("the tree k-provider requires delta = 0".into()));
            }
            KProvider::Tree => S::zero(),
            _ => four * delta.clone() * (lambda.clone() + S::one()) + two.clone() * epsilon.clone() + two,
        };
        Ok(HyperbolicConstants { delta, c, lambda, epsilon, k, k_provider: provider })
    }
}

/// Where the working δ came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaSource {
    Declared,
    /// Cayley graphs of free groups are trees.
    FreeGroup,
    /// Lower bound from triangles in the ball of this radius.
    Estimated {
        radius: usize,
    },
}

/// Tunables for context construction and the bounded searches.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Radius up to which the local-to-global property is checked.
    pub validation_radius: usize,
    /// Ball radius for δ estimation when no δ is declared.
    pub delta_radius: usize,
    /// Maximum number of vertices of any ball.
    pub ball_vertex_cap: usize,
    /// Maximum number of candidates tried by a single exhaustive search.
    pub search_cap: u64,
    /// Largest admissible `card(S ∪ S⁻¹)^{K1}` in the double-coset bound.
    pub exp_cap: u64,
    pub k_provider: KProvider,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            validation_radius: 6,
            delta_radius: 3,
            ball_vertex_cap: 2_000_000,
            search_cap: 5_000_000,
            exp_cap: 1_000_000,
            k_provider: KProvider::Auto,
        }
    }
}

/// A presentation with its hyperbolicity constants and word-problem
/// engine. Immutable once built; the internal caches never change an
/// answer.
pub struct HyperbolicContext {
    wp: WordProblem,
    constants: Constants,
    delta_source: DeltaSource,
    options: BuildOptions,
    local_ball: OnceLock<BallGraph>,
    geodesics: RwLock<HashMap<Word, Word>>,
    pub(crate) reductions: RwLock<HashMap<Word, CReductionOutcome>>,
}

impl fmt::Debug for HyperbolicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HyperbolicContext")
            .field("backend", &self.backend())
            .field("constants", &self.constants)
            .field("delta_source", &self.delta_source)
            .finish_non_exhaustive()
    }
}

impl HyperbolicContext {
    pub fn build(p: Presentation, options: BuildOptions) -> Result<Self> {
        let declared = p.declared_delta();
        let wp = WordProblem::new(p);
        let placeholder = Constants::from_delta(Rational::from_integer(0), KProvider::Tree)?;
        let mut ctx = HyperbolicContext {
            wp,
            constants: placeholder,
            delta_source: DeltaSource::Declared,
            options,
            local_ball: OnceLock::new(),
            geodesics: RwLock::new(HashMap::new()),
            reductions: RwLock::new(HashMap::new()),
        };
        if ctx.backend() == Backend::SmallCancellation {
            let radius = ctx.wp.max_relator_length().div_ceil(2);
            let ball = BallGraph::build(&ctx.wp, radius, ctx.options.ball_vertex_cap)?.with_left_action(&ctx.wp);
            let _ = ctx.local_ball.set(ball);
        }
        let delta = match declared {
            Some(d) => d,
            None if ctx.backend() == Backend::Free => {
                ctx.delta_source = DeltaSource::FreeGroup;
                Rational::from_integer(0)
            }
            None => {
                let radius = ctx.options.delta_radius;
                ctx.delta_source = DeltaSource::Estimated { radius };
                estimate_delta_lower_bound(&ctx, radius)?
            }
        };
        ctx.constants = Constants::from_delta(delta, ctx.options.k_provider)?;
        ctx.reductions.write().expect("fresh lock").clear();
        crate::oracle::validate_local_geodesics(&ctx, ctx.options.validation_radius)?;
        Ok(ctx)
    }

    pub fn presentation(&self) -> &Presentation {
        self.wp.presentation()
    }

    pub fn word_problem(&self) -> &WordProblem {
        &self.wp
    }

    pub fn backend(&self) -> Backend {
        self.wp.backend()
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn c(&self) -> usize {
        self.constants.c as usize
    }

    pub fn delta_source(&self) -> DeltaSource {
        self.delta_source
    }

    pub fn options(&self) -> &BuildOptions {
        &self.options
    }

    pub fn rank(&self) -> usize {
        self.wp.rank()
    }

    /// Number of letters `card(S ∪ S⁻¹)`.
    pub fn alphabet_size(&self) -> u64 {
        2 * self.rank() as u64
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        self.presentation().parse_word(text)
    }

    pub fn format(&self, w: &Word) -> String {
        self.presentation().alphabet().display(w)
    }

    pub fn abelian_key(&self, w: &Word) -> Vec<i64> {
        self.wp.abelian().key(w)
    }

    pub fn dehn_reduce(&self, w: &Word) -> Result<Word> {
        self.wp.dehn_reduce(w)
    }

    pub fn are_equal(&self, u: &Word, v: &Word) -> bool {
        self.wp.are_equal(u, v)
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.wp.is_trivial(w)
    }

    /// A shortest word equal to `w`.
    pub fn geodesic(&self, w: &Word) -> Word {
        if let Some(g) = self.wp.cheap_geodesic(w) {
            return g;
        }
        if let Some(g) = self.geodesics.read().expect("cache lock").get(w) {
            return g.clone();
        }
        let reduced = self.wp.dehn_reduce(w).expect("small-cancellation backend");
        let ball = self.local_ball.get().expect("built with the context");
        let g = corridor_geodesic(ball, &reduced);
        self.geodesics.write().expect("cache lock").insert(w.clone(), g.clone());
        g
    }

    pub fn geodesic_length(&self, w: &Word) -> usize {
        self.geodesic(w).len()
    }

    pub fn is_geodesic(&self, w: &Word) -> bool {
        self.geodesic_length(w) == w.len()
    }
}

/// Builds a context with default options and the given validation radius.
pub fn build_context(p: Presentation, validation_radius: usize) -> Result<HyperbolicContext> {
    HyperbolicContext::build(p, BuildOptions { validation_radius, ..BuildOptions::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_formulas() {
        let c = Constants::from_delta(Rational::from_integer(1), KProvider::Auto).unwrap();
        assert_eq!(c.c, 9);
        assert_eq!(c.lambda, Rational::new(13, 5));
        assert_eq!(c.epsilon, Rational::from_integer(2));
        assert_eq!(c.k_provider, KProvider::Conservative);
        assert_eq!(c.k, Rational::new(102, 5));

        let z = Constants::from_delta(Rational::from_integer(0), KProvider::Auto).unwrap();
        assert_eq!(
            (z.c, z.lambda, z.epsilon, z.k),
            (1, Rational::from_integer(1), Rational::from_integer(0), Rational::from_integer(0))
        );
        assert!(Constants::from_delta(Rational::new(1, 2), KProvider::Tree).is_err());

        let f = crate::ConstantsF64::from_delta(1.0, KProvider::Auto).unwrap();
        assert_eq!(f.c, 9);
        assert!((f.lambda - 2.6).abs() < 1e-12);
    }
}
