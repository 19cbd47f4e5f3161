//! C-reduced words and the (twinned) C-reduction procedures.
//!
//! A word is C-reduced when it is longer than `C` and all of its cyclic
//! conjugates are geodesic; its powers then label a uniform quasigeodesic,
//! so it has infinite order. C-reduction turns any infinite-order element
//! into a C-reduced conjugate of one of its powers, or finds its order.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::kernel::HyperbolicContext;
use crate::words::Word;

/// Result of [`c_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CReductionOutcome {
    /// `h1` is C-reduced and `h1 = u·w^n·u⁻¹`.
    CReduced { h1: Word, u: Word, n: u64 },
    /// `w` has finite order `order`.
    Torsion { order: u64 },
}

/// Observable steps of the procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CReductionStep {
    /// The current word was replaced by a geodesic for the same element.
    Geodesize { from: Word, to: Word },
    /// A non-geodesic rotation was replaced by a strictly shorter geodesic.
    Shorten { from: Word, rotation: usize, to: Word },
    /// The current word was raised to a power.
    Power { base: Word, exponent: u64 },
}

/// Result of [`twin_c_reduce`]: `h1 = u·h^n·u⁻¹` and `h1p = up·h'^n·up⁻¹`,
/// both C-reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinReduction {
    pub h1: Word,
    pub h1p: Word,
    pub u: Word,
    pub up: Word,
    pub n: u64,
}

pub fn is_c_reduced(ctx: &HyperbolicContext, w: &Word) -> bool {
    w.len() > ctx.c() && cyclically_geodesic(ctx, w)
}

fn cyclically_geodesic(ctx: &HyperbolicContext, w: &Word) -> bool {
    (0..w.len().max(1)).all(|k| ctx.is_geodesic(&w.rotate(k)))
}

/// The C-reduction procedure, memoized per context.
pub fn c_reduce(ctx: &HyperbolicContext, w: &Word) -> Result<CReductionOutcome> {
    if let Some(hit) = ctx.reductions.read().expect("cache lock").get(w) {
        return Ok(hit.clone());
    }
    let out = c_reduce_with(ctx, w, &mut |_| {})?;
    ctx.reductions.write().expect("cache lock").insert(w.clone(), out.clone());
    Ok(out)
}

/// [`c_reduce`] reporting every step.
pub fn c_reduce_with(
    ctx: &HyperbolicContext,
    w: &Word,
    step: &mut dyn FnMut(&CReductionStep),
) -> Result<CReductionOutcome> {
    if ctx.is_trivial(w) {
        return Err(Error::TrivialInput);
    }
    let mut state = Triple { omega: w.clone(), u: Word::empty(), n: 1 };
    loop {
        state.etape1(ctx, step);
        if state.omega.len() > ctx.c() {
            return Ok(CReductionOutcome::CReduced { h1: state.omega, u: state.u.free_reduce(), n: state.n });
        }
        match first_long_power(ctx, &state.omega)? {
            Power::Long(m) => state.raise(m, step),
            Power::Trivial(m) => return Ok(CReductionOutcome::Torsion { order: order_dividing(ctx, w, state.n * m) }),
        }
    }
}

/// The twinned procedure: one common exponent for both inputs. Finite
/// order of either input is reported as [`Error::Torsion`].
pub fn twin_c_reduce(ctx: &HyperbolicContext, h: &Word, hp: &Word) -> Result<TwinReduction> {
    if ctx.is_trivial(h) || ctx.is_trivial(hp) {
        return Err(Error::TrivialInput);
    }
    let c = ctx.c();
    let mut a = Triple { omega: h.clone(), u: Word::empty(), n: 1 };
    let mut b = Triple { omega: hp.clone(), u: Word::empty(), n: 1 };
    let noop = &mut |_: &CReductionStep| {};
    loop {
        a.etape1(ctx, noop);
        b.etape1(ctx, noop);
        if a.omega.len() > c && b.omega.len() > c {
            return Ok(TwinReduction {
                h1: a.omega,
                h1p: b.omega,
                u: a.u.free_reduce(),
                up: b.u.free_reduce(),
                n: a.n,
            });
        }
        let exponent = |t: &Triple, orig: &Word| -> Result<u64> {
            match first_long_power(ctx, &t.omega)? {
                Power::Long(m) => Ok(m),
                Power::Trivial(m) => Err(Error::Torsion { order: order_dividing(ctx, orig, t.n * m) }),
            }
        };
        let step = exponent(&a, h)?.lcm(&exponent(&b, hp)?);
        let cap = power_cap(ctx);
        let mut big_n = step;
        while ctx.geodesic_length(&a.omega.pow(big_n as i64)) <= c
            || ctx.geodesic_length(&b.omega.pow(big_n as i64)) <= c
        {
            big_n += step;
            if big_n > cap.saturating_mul(step) {
                return Err(Error::Internal("common power search did not terminate".into()));
            }
        }
        a.raise(big_n, noop);
        b.raise(big_n, noop);
    }
}

struct Triple {
    omega: Word,
    u: Word,
    n: u64,
}

impl Triple {
    /// Étape 1: geodesize, then replace the first non-geodesic rotation by
    /// a shorter geodesic until every rotation is geodesic.
    fn etape1(&mut self, ctx: &HyperbolicContext, step: &mut dyn FnMut(&CReductionStep)) {
        if !ctx.is_geodesic(&self.omega) {
            let to = ctx.geodesic(&self.omega);
            step(&CReductionStep::Geodesize { from: self.omega.clone(), to: to.clone() });
            self.omega = to;
        }
        'outer: loop {
            for k in 1..self.omega.len() {
                let rotation = self.omega.rotate(k);
                let to = ctx.geodesic(&rotation);
                if to.len() < rotation.len() {
                    step(&CReductionStep::Shorten { from: self.omega.clone(), rotation: k, to: to.clone() });
                    self.u = self.omega.prefix(k).inverse().concat(&self.u);
                    self.omega = to;
                    continue 'outer;
                }
            }
            break;
        }
    }

    fn raise(&mut self, m: u64, step: &mut dyn FnMut(&CReductionStep)) {
        step(&CReductionStep::Power { base: self.omega.clone(), exponent: m });
        self.omega = self.omega.pow(m as i64);
        self.n *= m;
    }
}

enum Power {
    /// Smallest exponent whose power has geodesic length above `C`.
    Long(u64),
    /// Smallest exponent whose power is trivial.
    Trivial(u64),
}

/// Étape 2 for a single word. Exponent 1 qualifies when the word is
/// already long.
fn first_long_power(ctx: &HyperbolicContext, omega: &Word) -> Result<Power> {
    let c = ctx.c();
    let cap = power_cap(ctx);
    let mut m = 1u64;
    loop {
        let p = omega.pow(m as i64);
        let len = ctx.geodesic_length(&p);
        if len > c {
            return Ok(Power::Long(m));
        }
        if len == 0 {
            return Ok(Power::Trivial(m));
        }
        m += 1;
        if m > cap {
            return Err(Error::Internal("power search exceeded the ball-size bound".into()));
        }
    }
}

/// One more than an upper bound on `|B(C)|`: the number of freely reduced
/// words of length at most `C`.
fn power_cap(ctx: &HyperbolicContext) -> u64 {
    let r = ctx.alphabet_size();
    let mut total: u64 = 1;
    let mut layer: u64 = r;
    for _ in 0..ctx.c() {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(r.saturating_sub(1).max(1));
    }
    total.saturating_add(1)
}

/// Order of `w`, given that `w^multiple = 1`.
fn order_dividing(ctx: &HyperbolicContext, w: &Word, multiple: u64) -> u64 {
    (1..=multiple)
        .filter(|d| multiple.is_multiple_of(*d))
        .find(|&d| ctx.is_trivial(&w.pow(d as i64)))
        .unwrap_or(multiple)
}
