//! Shortest representatives in the small-cancellation backend.
//!
//! Geodesic bigons in a C'(1/6) group are thin: a geodesic for the element
//! spelled by a Dehn-reduced word `w` stays within half a relator of the
//! path labelled `w`. We therefore run a 0-1 breadth-first search over
//! states `(i, x)`, meaning the point `w[..i]·x` with `x` in a small ball
//! around 1. Moving `x` along an edge costs one; sliding the anchor `i`
//! while keeping the point fixed is free.

use std::collections::VecDeque;

use crate::geometry::BallGraph;
use crate::words::{all_letters, Letter, Word};

const UNSEEN: u32 = u32::MAX;

/// Shortest word in the corridor around `w` labelling a path from 1 to the
/// endpoint of `w`. `ball` must carry its left action.
pub(crate) fn corridor_geodesic(ball: &BallGraph, w: &Word) -> Word {
    let n = ball.vertex_count();
    let len = w.len();
    let states = (len + 1) * n;
    let letters = w.letters();
    let mut dist = vec![UNSEEN; states];
    // Predecessor state and the letter appended (UNSEEN for a free move).
    let mut prev = vec![(UNSEEN, UNSEEN); states];
    let start = ball.origin();
    let target = len * n + ball.origin();
    let mut deque = VecDeque::new();
    dist[start] = 0;
    deque.push_back(start);
    let rank_letters: Vec<Letter> = all_letters(ball.rank()).collect();
    while let Some(state) = deque.pop_front() {
        let d = dist[state];
        if state == target {
            break;
        }
        let (i, x) = (state / n, state % n);
        let mut relax = |next: usize, cost: u32, letter: u32, deque: &mut VecDeque<usize>| {
            if d + cost < dist[next] {
                dist[next] = d + cost;
                prev[next] = (state as u32, letter);
                if cost == 0 {
                    deque.push_front(next);
                } else {
                    deque.push_back(next);
                }
            }
        };
        if i < len {
            if let Some(y) = ball.left_neighbor(x, letters[i].inverse()) {
                relax((i + 1) * n + y, 0, UNSEEN, &mut deque);
            }
        }
        if i > 0 {
            if let Some(y) = ball.left_neighbor(x, letters[i - 1]) {
                relax((i - 1) * n + y, 0, UNSEEN, &mut deque);
            }
        }
        for &s in &rank_letters {
            if let Some(y) = ball.neighbor(x, s) {
                relax(i * n + y, 1, s.code() as u32, &mut deque);
            }
        }
    }
    debug_assert!(dist[target] as usize <= len);
    let mut out = Vec::with_capacity(dist[target] as usize);
    let mut s = target;
    while s != start {
        let (p, letter) = prev[s];
        if letter != UNSEEN {
            out.push(Letter::from_code(letter as usize));
        }
        s = p as usize;
    }
    out.reverse();
    Word::from_letters(out)
}
