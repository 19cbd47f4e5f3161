use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::geometry::BallGraph;
use crate::kernel::HyperbolicContext;
use crate::presentation::Backend;
use crate::words::{all_letters, Letter, Word};

/// Calls `f` once per element of the ball of radius `radius`, on a
/// geodesic representative, in shortlex order of representatives.
pub(crate) fn for_each_element(
    ctx: &HyperbolicContext,
    radius: usize,
    f: &mut dyn FnMut(&Word) -> ControlFlow<()>,
) -> Result<()> {
    if ctx.backend() == Backend::SmallCancellation {
        let ball = BallGraph::build(ctx.word_problem(), radius, ctx.options().ball_vertex_cap)?;
        for w in ball.vertices() {
            if f(w).is_break() {
                break;
            }
        }
        return Ok(());
    }
    let orders = ctx.presentation().generator_orders();
    let mut letters = Vec::with_capacity(radius);
    for len in 0..=radius {
        if extend(ctx.rank(), orders, &mut letters, len, f).is_break() {
            break;
        }
    }
    Ok(())
}

/// Elements of the ball of radius `radius`, bounded by the search cap.
pub(crate) fn elements_up_to(ctx: &HyperbolicContext, radius: usize) -> Result<Vec<Word>> {
    let cap = ctx.options().ball_vertex_cap;
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_element(ctx, radius, &mut |w| {
        if out.len() >= cap {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(w.clone());
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::BallOverflow { radius, cap });
    }
    Ok(out)
}

/// Depth-first extension of normal forms to exactly `len` letters.
fn extend(
    rank: usize,
    orders: &[Option<u64>],
    letters: &mut Vec<Letter>,
    len: usize,
    f: &mut dyn FnMut(&Word) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if letters.len() == len {
        return f(&Word::from_letters(letters.clone()));
    }
    for s in all_letters(rank) {
        if admissible(orders, letters, s) {
            letters.push(s);
            let flow = extend(rank, orders, letters, len, f);
            letters.pop();
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Whether appending `s` keeps the word in normal form: freely reduced, and
/// every run of a finite-order generator has balanced exponent.
fn admissible(orders: &[Option<u64>], letters: &[Letter], s: Letter) -> bool {
    if letters.last() == Some(&s.inverse()) {
        return false;
    }
    let Some(n) = orders.get(s.index()).copied().flatten() else {
        return true;
    };
    let run = letters.iter().rev().take_while(|&&l| l == s).count() as u64 + 1;
    if s.is_inverse() {
        run <= (n - 1) / 2
    } else {
        run <= n / 2
    }
}

/// Freely reduced words over `count` symbols and their inverses, of length
/// 1 to `max_len`, in shortlex order. Symbol `i` is `2i`, its inverse `2i+1`.
pub(crate) fn symbol_words(count: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..2 * count {
                if w.last() == Some(&(s ^ 1)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
