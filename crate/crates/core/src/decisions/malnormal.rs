use crate::creduction::twin_c_reduce;
use crate::error::Result;
use crate::geometry::bound_v3;
use crate::geometry::bounds::raise;
use crate::kernel::are_conjugate;
use crate::words::Word;
use crate::Rational;

use super::{elements_up_to, signed, Commensuration, Decider, FamilyVerdict, MalnormalityVerdict};

impl Decider<'_> {
    /// Nonzero `(n1, n2)` with `h1^{n1}` conjugate to `h2^{n2}`, smallest
    /// `|n1|` then `|n2|`, together with a conjugator.
    pub fn commensurate_cyclic(&self, h1: &Word, h2: &Word) -> Result<Option<Commensuration>> {
        let ctx = self.ctx;
        self.reduce(h1)?;
        self.reduce(h2)?;
        let twin = twin_c_reduce(ctx, h1, h2)?;
        let (big1, big2) = (&twin.h1, &twin.h1p);
        // The relation is symmetric, so either orientation of the bound holds.
        let limit = match (bound_v3(ctx, big1.len(), big2.len()), bound_v3(ctx, big2.len(), big1.len())) {
            (Ok(x), Ok(y)) => x.min(y),
            (Ok(x), Err(_)) | (Err(_), Ok(x)) => x,
            (Err(e), Err(_)) => return Err(e),
        };
        self.record(|b| raise(&mut b.l_v3, limit));
        let abelian = ctx.word_problem().abelian();
        let (k1, k2) = (abelian.key(big1), abelian.key(big2));
        let lambda = ctx.constants().lambda;
        let mut reduced = None;
        'search: for m1 in signed(limit) {
            // Stable lengths of conjugate C-reduced powers must agree up to λ.
            let t1 = Rational::from_integer(m1.abs() * big1.len() as i64);
            let len2 = Rational::from_integer(big2.len() as i64);
            let lo = (t1 / (lambda * len2)).ceil().to_integer().max(1) as u64;
            let hi = ((lambda * t1) / len2).floor().to_integer().min(limit as i64).max(0) as u64;
            for m2 in (lo..=hi).flat_map(|n| [n as i64, -(n as i64)]) {
                if abelian.scale(&k1, m1) == abelian.scale(&k2, m2)
                    && are_conjugate(ctx, &big1.pow(m1), &big2.pow(m2)).is_some()
                {
                    reduced = Some((m1, m2));
                    break 'search;
                }
            }
        }
        let Some((m1, m2)) = reduced else {
            return Ok(None);
        };
        let (b1, b2) = (m1.unsigned_abs() * twin.n, m2.unsigned_abs() * twin.n);
        self.check_cap("commensurability refinement", 4 * b1 as u128 * b2 as u128)?;
        let (raw1, raw2) = (abelian.key(h1), abelian.key(h2));
        for n1 in signed(b1) {
            for n2 in signed(b2) {
                if abelian.scale(&raw1, n1) != abelian.scale(&raw2, n2) {
                    continue;
                }
                if let Some(witness) = are_conjugate(ctx, &h1.pow(n1), &h2.pow(n2)) {
                    return Ok(Some(Commensuration { n1, n2, witness }));
                }
            }
        }
        unreachable!("the reduced solution lifts to exponents within the refinement range")
    }

    /// Decides whether `⟨h⟩` is malnormal, giving `g ∉ ⟨h⟩` with
    /// `g·h^p·g⁻¹ = h^q` otherwise.
    pub fn malnormal_cyclic(&self, h: &Word) -> Result<MalnormalityVerdict> {
        let ctx = self.ctx;
        let red = self.reduce(h)?;
        let hp = &red.h1;
        let limit = bound_v3(ctx, hp.len(), hp.len())?;
        let two_k = (Rational::from_integer(2) * ctx.constants().k).ceil().to_integer() as usize;
        let radius = two_k + hp.len();
        self.record(|b| {
            raise(&mut b.l_v3, limit);
            raise(&mut b.k_lemstab, radius as u64);
        });
        let elements = elements_up_to(ctx, radius)?;
        self.check_cap("malnormality", 2 * limit as u128 * elements.len() as u128)?;
        let abelian = ctx.word_problem().abelian();
        let key = abelian.key(hp);
        let a_inv = red.a.inverse();
        // Whether a⁻¹·g·a lies in ⟨h⟩, computed on first use.
        let mut inside: Vec<Option<bool>> = vec![None; elements.len()];
        for p in 1..=limit as i64 {
            let hpp = hp.pow(p);
            for q in [p, -p] {
                if abelian.scale(&key, p) != abelian.scale(&key, q) {
                    continue;
                }
                let hpq = hp.pow(q);
                for (idx, g) in elements.iter().enumerate() {
                    if !ctx.are_equal(&hpp.conjugate_by(g), &hpq) {
                        continue;
                    }
                    let g0 = Word::product([&a_inv, g, &red.a]);
                    let member = *inside[idx].get_or_insert_with(|| self.exponent_in(&g0, &red).is_some());
                    if !member {
                        let n = red.n as i64;
                        return Ok(MalnormalityVerdict::Witness { g: ctx.geodesic(&g0), p: n * p, q: n * q });
                    }
                }
            }
        }
        Ok(MalnormalityVerdict::Malnormal)
    }

    /// Malnormality of the family `{⟨h_i⟩}`: pairs first, then each member.
    pub fn malnormal_family(&self, hs: &[Word]) -> Result<FamilyVerdict> {
        for h in hs {
            self.reduce(h)?;
        }
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                if let Some(c) = self.commensurate_cyclic(&hs[i], &hs[j])? {
                    return Ok(FamilyVerdict::CrossWitness { i, j, g: c.witness.conjugator, p: c.n1, q: c.n2 });
                }
            }
        }
        for (i, h) in hs.iter().enumerate() {
            if let MalnormalityVerdict::Witness { g, p, q } = self.malnormal_cyclic(h)? {
                return Ok(FamilyVerdict::CrossWitness { i, j: i, g, p, q });
            }
        }
        Ok(FamilyVerdict::Malnormal)
    }
}
