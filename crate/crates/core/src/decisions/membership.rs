use std::ops::ControlFlow;

use crate::creduction::{c_reduce, twin_c_reduce, CReductionOutcome};
use crate::error::{Error, Result};
use crate::geometry::bounds::raise;
use crate::geometry::{bound_v1, bound_v2};
use crate::kernel::are_conjugate;
use crate::words::Word;
use crate::Rational;

use super::{for_each_element, signed, signed_with_zero, Decider, ElementClass, Reduced};

impl Decider<'_> {
    /// Order of `w`, or a C-reduction certifying infinite order.
    pub fn classify_element(&self, w: &Word) -> Result<ElementClass> {
        if self.ctx.is_trivial(w) {
            return Ok(ElementClass::Finite { order: 1 });
        }
        Ok(match c_reduce(self.ctx, w)? {
            CReductionOutcome::Torsion { order } => ElementClass::Finite { order },
            certificate => ElementClass::InfiniteOrder { certificate },
        })
    }

    /// One representative per conjugacy class of torsion elements, taken
    /// from the ball of radius `C`; ε comes first.
    pub fn torsion_class_representatives(&self) -> Result<Vec<Word>> {
        let mut torsion = Vec::new();
        let mut failure = None;
        for_each_element(self.ctx, self.ctx.c(), &mut |w| match self.classify_element(w) {
            Ok(ElementClass::Finite { .. }) => {
                torsion.push(w.clone());
                ControlFlow::Continue(())
            }
            Ok(_) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        let mut reps: Vec<Word> = Vec::new();
        for w in torsion {
            if !reps.iter().any(|r| are_conjugate(self.ctx, r, &w).is_some()) {
                reps.push(w);
            }
        }
        Ok(reps)
    }

    /// All `n` with `w` conjugate to `h^n`, for `h` of infinite order.
    pub fn conjugate_into_cyclic(&self, w: &Word, h: &Word) -> Result<Vec<i64>> {
        let ctx = self.ctx;
        self.reduce(h)?;
        if ctx.is_trivial(w) {
            return Ok(vec![0]);
        }
        if matches!(self.classify_element(w)?, ElementClass::Finite { .. }) {
            return Ok(Vec::new());
        }
        let twin = twin_c_reduce(ctx, h, w)?;
        let (big_h, big_w) = (&twin.h1, &twin.h1p);
        let limit = bound_v1(ctx, big_w.len(), big_h.len())?;
        self.record(|b| raise(&mut b.l_v1, limit));
        let abelian = ctx.word_problem().abelian();
        let (kh, kw) = (abelian.key(big_h), abelian.key(big_w));
        let lambda = ctx.constants().lambda;
        let mut out = Vec::new();
        for m in signed(limit) {
            // Conjugates share their stable length, which for a C-reduced
            // word lies between |word|/λ and |word|.
            let a = Rational::from_integer(m.unsigned_abs() as i64 * big_h.len() as i64);
            let b = Rational::from_integer(big_w.len() as i64);
            if a > lambda * b || b > lambda * a || abelian.scale(&kh, m) != kw {
                continue;
            }
            if are_conjugate(ctx, w, &h.pow(m)).is_some() {
                out.push(m);
            }
        }
        Ok(out)
    }

    /// The `n` with `w = h^n`, if any.
    pub fn member_of_cyclic(&self, w: &Word, h: &Word) -> Result<Option<i64>> {
        let candidates = self.conjugate_into_cyclic(w, h)?;
        let mut ordered: Vec<i64> = candidates;
        ordered.sort_by_key(|&n| (n.unsigned_abs(), n < 0));
        Ok(ordered.into_iter().find(|&n| self.ctx.are_equal(w, &h.pow(n))))
    }

    /// Membership in `H = ⋃ r_i·⟨h⟩`; the representatives must include ε.
    pub fn member_of_virtually_z(&self, w: &Word, coset_reps: &[Word], h: &Word) -> Result<bool> {
        Ok(self.virtually_z_witness(w, coset_reps, h)?.is_some())
    }

    /// The first `(i, n)` with `w = r_i·h^n`.
    pub fn virtually_z_witness(&self, w: &Word, coset_reps: &[Word], h: &Word) -> Result<Option<(usize, i64)>> {
        if !coset_reps.iter().any(|r| self.ctx.is_trivial(r)) {
            return Err(Error::InvalidArgument("coset representatives must include the identity".into()));
        }
        for (i, r) in coset_reps.iter().enumerate() {
            if let Some(n) = self.member_of_cyclic(&r.inverse().concat(w), h)? {
                return Ok(Some((i, n)));
            }
        }
        Ok(None)
    }

    /// A pair `(n1, n2)` with `u = h1^{n1}·v·h2^{n2}`, smallest `|n1|` first.
    pub fn double_coset_decide(&self, u: &Word, v: &Word, h1: &Word, h2: &Word) -> Result<Option<(i64, i64)>> {
        let ctx = self.ctx;
        self.reduce(h1)?;
        self.reduce(h2)?;
        let twin = twin_c_reduce(ctx, h1, h2)?;
        let n = twin.n as i64;
        let a2_inv = twin.up.inverse();
        let mut k = 0;
        let mut k1 = 0;
        for i in 0..n {
            let ui = Word::product([&twin.u, u, &h2.pow(-i), &a2_inv]);
            for j in 0..n {
                let vj = Word::product([&twin.u, &h1.pow(j), v, &a2_inv]);
                let (b1, b) =
                    bound_v2(ctx, ctx.geodesic_length(&ui), ctx.geodesic_length(&vj), twin.h1.len(), twin.h1p.len())?;
                k = k.max(b);
                k1 = k1.max(b1);
            }
        }
        self.record(|b| {
            raise(&mut b.k1_v2, k1);
            raise(&mut b.k_v2, k);
        });
        let limit = (k + 1).saturating_mul(twin.n);
        self.check_cap("V2", 2 * limit as u128 + 1)?;
        let red2 = Reduced { h: h2.clone(), h1: twin.h1p.clone(), a: twin.up.clone(), n: twin.n };
        let v_inv = v.inverse();
        for n1 in signed_with_zero(limit) {
            let x = Word::product([&v_inv, &h1.pow(-n1), u]);
            if let Some(n2) = self.exponent_in(&x, &red2) {
                debug_assert!(ctx.are_equal(u, &Word::product([&h1.pow(n1), v, &h2.pow(n2)])));
                return Ok(Some((n1, n2)));
            }
        }
        Ok(None)
    }
}
