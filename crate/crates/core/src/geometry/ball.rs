use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::kernel::{HyperbolicContext, WordProblem};
use crate::words::{all_letters, Letter, Word};

const NONE: u32 = u32::MAX;

/// Lookup from words to ball vertices.
#[derive(Clone, Debug)]
enum ElementIndex {
    /// Keyed by a normal form.
    Canonical(HashMap<Word, u32>),
    /// Bucketed by abelianisation and permutation quotients, resolved by
    /// the word problem.
    Buckets(HashMap<(Vec<i64>, Vec<u8>), Vec<u32>>),
}

/// The ball of a given radius around 1 in the Cayley graph.
///
/// Vertex `0` is the identity. Vertices are stored in breadth-first order,
/// and each vertex word is the shortlex-least geodesic for its element.
#[derive(Clone, Debug)]
pub struct BallGraph {
    radius: usize,
    rank: usize,
    vertices: Vec<Word>,
    layer_starts: Vec<usize>,
    /// `right[v * 2 * rank + s]` is the vertex of `v·s`.
    right: Vec<u32>,
    /// `left[v * 2 * rank + s]` is the vertex of `s·v`; empty unless requested.
    left: Vec<u32>,
    index: ElementIndex,
}

fn bucket_key(wp: &WordProblem, w: &Word) -> (Vec<i64>, Vec<u8>) {
    (wp.abelian().key(w), wp.quotients().key(w))
}

impl BallGraph {
    /// Breadth-first construction. Fails rather than truncating when more
    /// than `cap` vertices would be needed.
    pub fn build(wp: &WordProblem, radius: usize, cap: usize) -> Result<Self> {
        let rank = wp.rank();
        let width = 2 * rank;
        let index = if wp.canonical(&Word::empty()).is_some() {
            ElementIndex::Canonical(HashMap::new())
        } else {
            ElementIndex::Buckets(HashMap::new())
        };
        let mut ball = BallGraph {
            radius,
            rank,
            vertices: Vec::new(),
            layer_starts: vec![0],
            right: Vec::new(),
            left: Vec::new(),
            index,
        };
        ball.insert(wp, Word::empty());
        let mut layer = 0..1;
        for r in 0..=radius {
            let next_start = ball.vertices.len();
            for v in layer.clone() {
                for s in all_letters(rank) {
                    let w = ball.vertices[v].concat(&Word::letter(s));
                    let target = match ball.lookup(wp, &w) {
                        Some(t) => t as u32,
                        None if r < radius => {
                            if ball.vertices.len() >= cap {
                                return Err(Error::BallOverflow { radius, cap });
                            }
                            ball.insert(wp, w) as u32
                        }
                        None => NONE,
                    };
                    ball.right.push(target);
                }
            }
            if r < radius {
                ball.layer_starts.push(next_start);
            }
            layer = next_start..ball.vertices.len();
        }
        ball.layer_starts.push(ball.vertices.len());
        debug_assert_eq!(ball.right.len(), ball.vertices.len() * width);
        Ok(ball)
    }

    /// Adds the left-multiplication table used by corridor searches.
    pub fn with_left_action(mut self, wp: &WordProblem) -> Self {
        let mut left = Vec::with_capacity(self.right.len());
        for v in 0..self.vertices.len() {
            for s in all_letters(self.rank) {
                let w = Word::letter(s).concat(&self.vertices[v]);
                left.push(self.lookup(wp, &w).map_or(NONE, |t| t as u32));
            }
        }
        self.left = left;
        self
    }

    fn insert(&mut self, wp: &WordProblem, w: Word) -> usize {
        let id = self.vertices.len();
        match &mut self.index {
            ElementIndex::Canonical(map) => {
                map.insert(wp.canonical(&w).expect("canonical backend"), id as u32);
            }
            ElementIndex::Buckets(map) => {
                map.entry(bucket_key(wp, &w)).or_default().push(id as u32);
            }
        }
        self.vertices.push(w);
        id
    }

    /// Vertex representing the same element as `w`, if it lies in the ball.
    pub fn lookup(&self, wp: &WordProblem, w: &Word) -> Option<usize> {
        match &self.index {
            ElementIndex::Canonical(map) => map.get(&wp.canonical(w)?).map(|&i| i as usize),
            ElementIndex::Buckets(map) => {
                let bucket = map.get(&bucket_key(wp, w))?;
                if w.len() <= self.radius {
                    // Cheap pre-check on identical words.
                    if let Some(&i) = bucket.iter().find(|&&i| &self.vertices[i as usize] == w) {
                        return Some(i as usize);
                    }
                }
                bucket.iter().find(|&&i| wp.are_equal(&self.vertices[i as usize], w)).map(|&i| i as usize)
            }
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn origin(&self) -> usize {
        0
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn word(&self, v: usize) -> &Word {
        &self.vertices[v]
    }

    /// `|g|` for the element at vertex `v`.
    pub fn distance(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// Vertices at distance exactly `r` from 1.
    pub fn layer(&self, r: usize) -> std::ops::Range<usize> {
        if r > self.radius {
            return 0..0;
        }
        self.layer_starts[r]..self.layer_starts[r + 1]
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        (0..=self.radius).map(|r| self.layer(r).len()).collect()
    }

    #[inline]
    pub fn neighbor(&self, v: usize, s: Letter) -> Option<usize> {
        let t = self.right[v * 2 * self.rank + s.code()];
        (t != NONE).then_some(t as usize)
    }

    #[inline]
    pub fn left_neighbor(&self, v: usize, s: Letter) -> Option<usize> {
        let t = *self.left.get(v * 2 * self.rank + s.code())?;
        (t != NONE).then_some(t as usize)
    }

    /// Follows the path labelled `w` from vertex `v`, if it stays inside.
    pub fn walk(&self, v: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(v, |x, &s| self.neighbor(x, s))
    }

    /// Adjacency-list export: `vertex_id word` lines, then
    /// `edge from_id letter to_id` lines.
    pub fn export(&self, format: impl Fn(&Word) -> String, letter: impl Fn(Letter) -> String) -> String {
        let mut out = String::new();
        for (i, w) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "{i} {}", format(w));
        }
        for v in 0..self.vertices.len() {
            for s in all_letters(self.rank) {
                if let Some(t) = self.neighbor(v, s) {
                    let _ = writeln!(out, "edge {v} {} {t}", letter(s));
                }
            }
        }
        out
    }
}

/// The ball of radius `radius` around 1, capped by the context's vertex
/// limit.
pub fn build_ball(ctx: &HyperbolicContext, radius: usize) -> Result<BallGraph> {
    BallGraph::build(ctx.word_problem(), radius, ctx.options().ball_vertex_cap)
}
