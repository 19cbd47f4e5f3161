use std::ops::ControlFlow;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::geometry::bounds::raise;
use crate::geometry::{bound_lemstab, bound_v2};
use crate::words::{Letter, Word};

use super::enumerate::symbol_words;
use super::{for_each_element, CentralizerResult, CosetTransversal, Decider, ElementClass, Reduced};

impl Decider<'_> {
    /// Left coset representatives of `⟨h⟩` in the centralizer of `h`.
    pub fn centralizer_cyclic(&self, h: &Word) -> Result<CosetTransversal> {
        self.stabilizer(h, false)
    }

    /// Left coset representatives of `⟨h⟩` in the normalizer of `⟨h⟩`.
    pub fn normalizer_cyclic(&self, h: &Word) -> Result<CosetTransversal> {
        self.stabilizer(h, true)
    }

    fn stabilizer(&self, h: &Word, inverting: bool) -> Result<CosetTransversal> {
        let ctx = self.ctx;
        let red = self.reduce(h)?;
        let fixes = |u: &Word, x: &Word| {
            let c = x.conjugate_by(u);
            ctx.are_equal(&c, x) || (inverting && ctx.are_equal(&c, &x.inverse()))
        };
        let h1 = &red.h1;
        let radius = bound_lemstab(ctx, h1.len())?;
        self.record(|b| {
            b.k_stab = Some(ctx.constants().k);
            raise(&mut b.k_lemstab, radius);
        });
        let mut reduced_reps: Vec<Word> = Vec::new();
        for_each_element(ctx, radius as usize, &mut |u| {
            if fixes(u, h1) && !reduced_reps.iter().any(|r| self.power_exponent(&r.inverse().concat(u), h1).is_some()) {
                reduced_reps.push(u.clone());
            }
            ControlFlow::Continue(())
        })?;
        let a_inv = red.a.inverse();
        let mut reps: Vec<Word> = Vec::new();
        for v in &reduced_reps {
            let back = ctx.geodesic(&Word::product([&a_inv, v, &red.a]));
            if fixes(&back, h) && !reps.iter().any(|r| self.exponent_in(&r.inverse().concat(&back), &red).is_some()) {
                reps.push(back);
            }
        }
        Ok(CosetTransversal { base: h.clone(), modulus_note: None, representatives: reps })
    }

    /// Every `(r, e)` with `r^e = h`, including `(h, 1)`, by decreasing `e`.
    pub fn roots(&self, h: &Word) -> Result<Vec<(Word, u64)>> {
        let ctx = self.ctx;
        let red = self.reduce(h)?;
        let reps = self.centralizer_cyclic(h)?.representatives;
        let mut out = Vec::new();
        for a in &reps {
            let Some((p, q)) = self.power_into(a, &red, reps.len() as u64) else {
                continue;
            };
            let (quot, rem) = (1 - q).div_rem(&(p as i64));
            if rem != 0 {
                continue;
            }
            let root = ctx.geodesic(&h.pow(quot).concat(a));
            if ctx.are_equal(&root.pow(p as i64), h) {
                out.push((root, p));
            }
        }
        out.sort_by(|x, y| y.1.cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
        Ok(out)
    }

    /// Whether `⟨h⟩` contains every root of `h`.
    pub fn maximal_cyclic(&self, h: &Word) -> Result<bool> {
        let red = self.reduce(h)?;
        Ok(self.roots(h)?.iter().all(|(r, _)| self.exponent_in(r, &red).is_some()))
    }

    /// Smallest `p` in `1..=max` with `a^p = h^q`, and that `q`.
    fn power_into(&self, a: &Word, red: &Reduced, max: u64) -> Option<(u64, i64)> {
        (1..=max).find_map(|p| self.exponent_in(&a.pow(p as i64), red).map(|q| (p, q)))
    }

    /// The centralizer of the subgroup generated by `gens`, which must
    /// contain an infinite-order product of at most `search_len` generators.
    pub fn centralizer_fg(&self, gens: &[Word], search_len: usize) -> Result<CentralizerResult> {
        let ctx = self.ctx;
        if gens.is_empty() {
            return Err(Error::InvalidArgument("at least one generator is required".into()));
        }
        let k = self.infinite_order_product(gens, search_len)?;
        let red = self.reduce(&k)?;
        let reps = self.centralizer_cyclic(&k)?.representatives;
        let central = |x: &Word| gens.iter().all(|g| ctx.are_equal(&x.concat(g), &g.concat(x)));

        let mut period = 1u64;
        let mut bounded = true;
        for g in gens {
            match self.commuting_power(g, &red)? {
                Some(m) => period = period.lcm(&m),
                None => {
                    bounded = false;
                    break;
                }
            }
        }

        if !bounded {
            let mut elements = Vec::new();
            for a in &reps {
                let Some((p, q)) = self.power_into(a, &red, reps.len() as u64) else {
                    continue;
                };
                if q % p as i64 != 0 {
                    continue;
                }
                let z = ctx.geodesic(&a.concat(&k.pow(-q / p as i64)));
                if central(&z) {
                    elements.push(z);
                }
            }
            return Ok(CentralizerResult::Finite { elements });
        }

        let base = ctx.geodesic(&k.pow(period as i64));
        let base_red = self.reduce(&base)?;
        let mut refined: Vec<Word> = Vec::new();
        for a in &reps {
            for j in 0..period as i64 {
                let c = ctx.geodesic(&a.concat(&k.pow(j)));
                if central(&c)
                    && !refined.iter().any(|r| self.exponent_in(&r.inverse().concat(&c), &base_red).is_some())
                {
                    refined.push(c);
                }
            }
        }
        for (r, e) in self.roots(&base)? {
            if e == refined.len() as u64 && central(&r) {
                let transversal =
                    CosetTransversal { base: r, modulus_note: None, representatives: vec![Word::empty()] };
                return Ok(CentralizerResult::VirtuallyZ { transversal });
            }
        }
        let modulus_note = (period > 1).then_some(period);
        Ok(CentralizerResult::VirtuallyZ {
            transversal: CosetTransversal { base, modulus_note, representatives: refined },
        })
    }

    /// The center of the group.
    pub fn center(&self, search_len: usize) -> Result<CentralizerResult> {
        let gens: Vec<Word> = (0..self.ctx.rank()).map(|i| Word::letter(Letter::generator(i))).collect();
        self.centralizer_fg(&gens, search_len)
    }

    /// First infinite-order product of generators in shortlex order.
    fn infinite_order_product(&self, gens: &[Word], search_len: usize) -> Result<Word> {
        for symbols in symbol_words(gens.len(), search_len) {
            let parts: Vec<Word> =
                symbols.iter().map(|&s| if s % 2 == 0 { gens[s / 2].clone() } else { gens[s / 2].inverse() }).collect();
            let w = Word::product(&parts).free_reduce();
            if self.ctx.is_trivial(&w) {
                continue;
            }
            if let ElementClass::InfiniteOrder { .. } = self.classify_element(&w)? {
                return Ok(self.ctx.geodesic(&w));
            }
        }
        Err(Error::NoInfiniteOrder { search_len })
    }

    /// Smallest `n >= 1` with `g` commuting with `k^n`, searched up to the
    /// double-coset bound for `g = k^n·g·k^{-n}`.
    fn commuting_power(&self, g: &Word, red: &Reduced) -> Result<Option<u64>> {
        let ctx = self.ctx;
        let span = ctx.geodesic_length(g) + red.n as usize * red.h.len() + 2 * red.a.len();
        let (k1, k) = bound_v2(ctx, span, span, red.h1.len(), red.h1.len())?;
        self.record(|b| {
            raise(&mut b.k1_v2, k1);
            raise(&mut b.k_v2, k);
        });
        let limit = (k + 1).saturating_mul(red.n);
        self.check_cap("V2", limit as u128)?;
        Ok((1..=limit).find(|&n| {
            let p = red.h.pow(n as i64);
            ctx.are_equal(&g.concat(&p), &p.concat(g))
        }))
    }
}
