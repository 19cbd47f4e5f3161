use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::BallGraph;
use crate::kernel::HyperbolicContext;
use crate::words::Word;
use crate::Rational;

/// A point on a geodesic segment `base·path`, at half-integer position
/// `pos / 2` from `base`.
#[derive(Clone, Copy)]
struct Point<'a> {
    base: &'a Word,
    path: &'a Word,
    pos: usize,
}

impl Point<'_> {
    /// The endpoints of the edge carrying the point (equal for vertices).
    fn ends(&self) -> (Word, Word) {
        let lo = self.pos / 2;
        let hi = self.pos.div_ceil(2);
        (self.base.concat(&self.path.prefix(lo)), self.base.concat(&self.path.prefix(hi)))
    }
}

struct Metric<'c> {
    ctx: &'c HyperbolicContext,
    memo: HashMap<Word, usize>,
}

impl Metric<'_> {
    fn dist(&mut self, p: &Word, q: &Word) -> usize {
        let rel = p.inverse().concat(q).free_reduce();
        if rel.len() <= 1 {
            return rel.len();
        }
        if let Some(&d) = self.memo.get(&rel) {
            return d;
        }
        let d = self.ctx.geodesic_length(&rel);
        self.memo.insert(rel, d);
        d
    }

    /// Twice the distance between two points.
    fn dist2(&mut self, x: &Point, y: &Point) -> usize {
        let (x0, x1) = x.ends();
        let (y0, y1) = y.ends();
        match (x.pos % 2, y.pos % 2) {
            (0, 0) => 2 * self.dist(&x0, &y0),
            (0, _) => 1 + 2 * self.dist(&x0, &y0).min(self.dist(&x0, &y1)),
            (_, 0) => 1 + 2 * self.dist(&y0, &x0).min(self.dist(&y0, &x1)),
            _ => {
                let d00 = self.dist(&x0, &y0);
                let d11 = self.dist(&x1, &y1);
                let d01 = self.dist(&x0, &y1);
                let d10 = self.dist(&x1, &y0);
                if (d00 == 0 && d11 == 0) || (d01 == 0 && d10 == 0) {
                    0
                } else {
                    2 + 2 * d00.min(d11).min(d01).min(d10)
                }
            }
        }
    }
}

/// Lower bound for δ from the tripod definition: the largest fibre
/// diameter over geodesic triangles with vertices `1, y, z` for `y`, `z` in
/// the ball of the given radius. Sides from 1 are the ball's canonical
/// geodesics; the third side is `y·geodesic(y⁻¹z)`. Fibres are sampled at
/// half-integer positions, so the value is a half-integer.
pub fn estimate_delta_lower_bound(ctx: &HyperbolicContext, radius: usize) -> Result<Rational> {
    let ball = BallGraph::build(ctx.word_problem(), radius, ctx.options().ball_vertex_cap)?;
    let n = ball.vertex_count();
    let best = (0..n)
        .into_par_iter()
        .map_init(
            || Metric { ctx, memo: HashMap::new() },
            |metric, y| (y..n).map(|z| triangle_fibre2(metric, &ball, y, z)).max().unwrap_or(0),
        )
        .max()
        .unwrap_or(0);
    Ok(Rational::new(best as i64, 2))
}

fn triangle_fibre2(metric: &mut Metric, ball: &BallGraph, y: usize, z: usize) -> usize {
    let empty = Word::empty();
    let wy = ball.word(y);
    let wz = ball.word(z);
    let g = metric.ctx.geodesic(&wy.inverse().concat(wz));
    let ginv = g.inverse();
    let (a, b, c) = (wy.len(), wz.len(), g.len());
    let mut best = 0;
    // Leg at 1: [1, y] against [1, z].
    for t in 0..=(a + b - c) {
        let p = Point { base: &empty, path: wy, pos: t };
        let q = Point { base: &empty, path: wz, pos: t };
        best = best.max(metric.dist2(&p, &q));
    }
    // Leg at y: [y, 1] against [y, z].
    for t in 0..=(a + c - b) {
        let p = Point { base: &empty, path: wy, pos: 2 * a - t };
        let q = Point { base: wy, path: &g, pos: t };
        best = best.max(metric.dist2(&p, &q));
    }
    // Leg at z: [z, 1] against [z, y].
    for t in 0..=(b + c - a) {
        let p = Point { base: &empty, path: wz, pos: 2 * b - t };
        let q = Point { base: wz, path: &ginv, pos: t };
        best = best.max(metric.dist2(&p, &q));
    }
    best
}
