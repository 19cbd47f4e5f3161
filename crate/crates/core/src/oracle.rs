//! Brute-force ground truth.
//!
//! For the free and free-product backends the oracle identifies group
//! elements through its own naive rewriting, so it shares nothing with the
//! kernel. For small cancellation it reuses the kernel's ball construction.
//! Nothing here is meant to be fast.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::BallGraph;
use crate::kernel::HyperbolicContext;
use crate::presentation::Backend;
use crate::words::{all_letters, Letter, Word};
use crate::Rational;

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleSearch {
    Found(Word),
    /// Nothing within the search radius; not a proof of absence.
    NoneWithinRadius,
}

impl OracleSearch {
    pub fn found(&self) -> Option<&Word> {
        match self {
            OracleSearch::Found(w) => Some(w),
            OracleSearch::NoneWithinRadius => None,
        }
    }
}

/// Normal form by repeated scanning: cancel adjacent inverse pairs and
/// shorten runs of a finite-order generator, until nothing changes.
pub fn naive_normal_form(w: &Word, orders: &[Option<u64>]) -> Word {
    let mut v: Vec<Letter> = w.letters().to_vec();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < v.len() {
            if v[i] == v[i + 1].inverse() {
                v.drain(i..i + 2);
                changed = true;
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if let Some(n) = orders.get(v[i].index()).copied().flatten() {
                let e = (j - i) as i64 * v[i].sign();
                let r = e.rem_euclid(n as i64);
                let target = if 2 * r > n as i64 { r - n as i64 } else { r };
                if target != e {
                    let letter = Letter::new(v[i].index(), target < 0);
                    let run = std::iter::repeat_n(letter, target.unsigned_abs() as usize);
                    v.splice(i..j, run);
                    changed = true;
                    continue;
                }
            }
            i = j;
        }
        if !changed {
            return Word::from_letters(v);
        }
    }
}

/// A ball with path-walking lookups.
pub struct Oracle<'c> {
    ctx: &'c HyperbolicContext,
    radius: usize,
    rank: usize,
    vertices: Vec<Word>,
    right: Vec<Option<usize>>,
}

impl<'c> Oracle<'c> {
    pub fn new(ctx: &'c HyperbolicContext, radius: usize) -> Result<Self> {
        let rank = ctx.rank();
        let cap = ctx.options().ball_vertex_cap;
        if ctx.backend() == Backend::SmallCancellation {
            let ball = BallGraph::build(ctx.word_problem(), radius, cap)?;
            let right = (0..ball.vertex_count())
                .flat_map(|v| all_letters(rank).map(move |s| (v, s)))
                .map(|(v, s)| ball.neighbor(v, s))
                .collect();
            return Ok(Oracle { ctx, radius, rank, vertices: ball.vertices().to_vec(), right });
        }
        let orders = ctx.presentation().generator_orders().to_vec();
        let mut vertices = vec![Word::empty()];
        let mut index: HashMap<Word, usize> = HashMap::from([(Word::empty(), 0)]);
        let mut right = Vec::new();
        let mut v = 0;
        while v < vertices.len() {
            for s in all_letters(rank) {
                let w = vertices[v].concat(&Word::letter(s));
                let nf = naive_normal_form(&w, &orders);
                let target = match index.get(&nf) {
                    Some(&t) => Some(t),
                    None if nf.len() <= radius => {
                        if vertices.len() >= cap {
                            return Err(Error::BallOverflow { radius, cap });
                        }
                        index.insert(nf.clone(), vertices.len());
                        vertices.push(nf);
                        Some(vertices.len() - 1)
                    }
                    None => None,
                };
                right.push(target);
            }
            v += 1;
        }
        Ok(Oracle { ctx, radius, rank, vertices, right })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    /// Vertex reached by following `w` from 1; needs `|w| <= radius`.
    pub fn vertex(&self, w: &Word) -> Result<usize> {
        if w.len() > self.radius {
            return Err(Error::InvalidArgument(format!(
                "word of length {} exceeds the oracle radius {}",
                w.len(),
                self.radius
            )));
        }
        w.letters().iter().try_fold(0usize, |v, s| {
            self.right[v * 2 * self.rank + s.code()]
                .ok_or_else(|| Error::Internal("oracle ball is not closed under short paths".into()))
        })
    }

    /// Graph distance from 1 to the vertex of `w`.
    pub fn distance(&self, w: &Word) -> Result<usize> {
        Ok(self.vertices[self.vertex(w)?].len())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.vertex(u)? == self.vertex(v)?)
    }

    /// Equality of arbitrary words, without the radius restriction.
    pub fn equal_unbounded(&self, u: &Word, v: &Word) -> bool {
        match self.ctx.backend() {
            Backend::SmallCancellation => self.ctx.are_equal(u, v),
            _ => {
                let orders = self.ctx.presentation().generator_orders();
                naive_normal_form(u, orders) == naive_normal_form(v, orders)
            }
        }
    }

    /// First `g` of the ball, in breadth-first order, with `g·u·g⁻¹ = v`.
    pub fn conjugator(&self, u: &Word, v: &Word) -> OracleSearch {
        self.vertices
            .iter()
            .find(|g| self.equal_unbounded(&u.conjugate_by(g), v))
            .map_or(OracleSearch::NoneWithinRadius, |g| OracleSearch::Found(g.clone()))
    }

    /// Ball elements commuting with `h`.
    pub fn centralizer(&self, h: &Word) -> Vec<Word> {
        self.vertices.iter().filter(|g| self.equal_unbounded(&g.concat(h), &h.concat(g))).cloned().collect()
    }
}

/// `u = v` decided by vertex identification in the ball of radius `radius`.
pub fn oracle_equal(ctx: &HyperbolicContext, u: &Word, v: &Word, radius: usize) -> Result<bool> {
    Oracle::new(ctx, radius)?.equal(u, v)
}

/// Exhaustive conjugator search over the ball of radius `conj_radius`.
pub fn oracle_conjugate(ctx: &HyperbolicContext, u: &Word, v: &Word, conj_radius: usize) -> Result<OracleSearch> {
    Ok(Oracle::new(ctx, conj_radius)?.conjugator(u, v))
}

/// All elements of the ball of radius `radius` commuting with `h`.
pub fn oracle_centralizer(ctx: &HyperbolicContext, h: &Word, radius: usize) -> Result<Vec<Word>> {
    Ok(Oracle::new(ctx, radius)?.centralizer(h))
}

/// Checks `lgr(u) <= λ|u| + ε` for every subword `u` of `w^max_power`,
/// returning the first violating subword.
pub fn oracle_quasigeodesic_check(
    ctx: &HyperbolicContext,
    w: &Word,
    lambda: Rational,
    epsilon: Rational,
    max_power: u32,
) -> std::result::Result<(), Word> {
    let path = w.pow(max_power as i64);
    for end in 1..=path.len() {
        for start in 0..end {
            let u = path.subword(start, end);
            if !quasigeodesic_ok(ctx, &u, lambda, epsilon) {
                return Err(u);
            }
        }
    }
    Ok(())
}

fn quasigeodesic_ok(ctx: &HyperbolicContext, u: &Word, lambda: Rational, epsilon: Rational) -> bool {
    let len = Rational::from_integer(u.len() as i64);
    len <= lambda * Rational::from_integer(ctx.geodesic_length(u) as i64) + epsilon
}

/// Every word of length at most `radius` all of whose subwords of length
/// at most `C + 1` are geodesic must be a `(λ, ε)`-quasigeodesic.
/// Returns the first violating word as a validation error.
pub fn validate_local_geodesics(ctx: &HyperbolicContext, radius: usize) -> Result<()> {
    let window = ctx.c() + 1;
    if radius <= window {
        return Ok(());
    }
    let consts = ctx.constants();
    let (lambda, epsilon) = (consts.lambda, consts.epsilon);
    let mut stack = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        for s in all_letters(ctx.rank()) {
            let next = w.concat(&Word::letter(s));
            let n = next.len();
            if !ctx.is_geodesic(&next.suffix_from(n.saturating_sub(window))) {
                continue;
            }
            for start in 0..n {
                let u = next.suffix_from(start);
                if !quasigeodesic_ok(ctx, &u, lambda, epsilon) {
                    return Err(Error::Validation { path: ctx.format(&next) });
                }
            }
            if n < radius {
                stack.push(next);
            }
        }
    }
    Ok(())
}
