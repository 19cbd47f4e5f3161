use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::kernel::{HyperbolicConstants, HyperbolicContext};
use crate::scalar::Scalar;
use crate::Rational;

/// An integer search bound together with the exact value it rounds up.
#[derive(Clone, Debug, PartialEq)]
pub struct Bound<S> {
    pub exact: S,
    pub value: u64,
}

impl<S: Scalar> Bound<S> {
    fn ceil(name: &'static str, exact: S) -> Result<Self> {
        let value = exact
            .ceil_u64()
            .ok_or_else(|| Error::Infeasible { name, detail: format!("value {exact} does not fit") })?;
        Ok(Bound { exact, value })
    }
}

/// The double-coset bound: `K1`, `m1_cap = card^K1`, `K2` and
/// `K = max(m1_cap, K2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct V2Bound<S> {
    pub k1: Bound<S>,
    pub m1_cap: u64,
    pub k2: Bound<S>,
    pub k: u64,
}

fn nat<S: Scalar>(n: u64) -> S {
    S::from_u64(n)
}

/// `2k + |h|`: length bound for coset representatives of the stabiliser
/// of the fixed points of `h` modulo `⟨h⟩`.
pub fn lemstab<S: Scalar>(c: &HyperbolicConstants<S>, h_len: u64) -> Result<Bound<S>> {
    Bound::ceil("lemstab", nat::<S>(2) * c.k.clone() + nat(h_len))
}

/// `(λ(4k + 3|w|) + ε) / |h|`: exponent bound for `w ~ h^n` with both
/// C-reduced.
pub fn v1<S: Scalar>(c: &HyperbolicConstants<S>, w_len: u64, h_len: u64) -> Result<Bound<S>> {
    if h_len == 0 {
        return Err(Error::InvalidArgument("bound V1 needs |h| >= 1".into()));
    }
    let inner = nat::<S>(4) * c.k.clone() + nat::<S>(3) * nat(w_len);
    Bound::ceil("V1", (c.lambda.clone() * inner + c.epsilon.clone()) / nat(h_len))
}

/// Exponent bound for `u = h1^{n1}·v·h2^{n2}` with C-reduced `h1`, `h2`.
/// `card` is the number of letters `card(S ∪ S⁻¹)`; `card^{K1}` above
/// `exp_cap` is reported as infeasible.
pub fn v2<S: Scalar>(
    c: &HyperbolicConstants<S>,
    card: u64,
    lens: (u64, u64, u64, u64),
    exp_cap: u64,
) -> Result<V2Bound<S>> {
    let (u_len, v_len, h1_len, h2_len) = lens;
    if h1_len == 0 || h2_len == 0 {
        return Err(Error::InvalidArgument("bound V2 needs |h1|, |h2| >= 1".into()));
    }
    let k1 = Bound::ceil(
        "V2",
        nat::<S>(2) * c.k.clone() + nat::<S>(3) * c.delta.clone() + nat(u_len.max(v_len)) + nat(h2_len),
    )?;
    let m1_cap =
        u32::try_from(k1.value).ok().and_then(|e| card.checked_pow(e)).filter(|&m| m <= exp_cap).ok_or_else(|| {
            Error::Infeasible {
                name: "V2",
                detail: format!("card(S ∪ S⁻¹)^K1 = {card}^{} exceeds the cap {exp_cap}", k1.value),
            }
        })?;
    let m1h1 = m1_cap
        .checked_mul(h1_len)
        .ok_or_else(|| Error::Infeasible { name: "V2", detail: "m1_cap·|h1| overflows".into() })?;
    let k2 = Bound::ceil(
        "V2",
        (c.lambda.clone() * (nat::<S>(u_len) + nat(v_len) + nat(m1h1)) + c.epsilon.clone()) / nat(h2_len),
    )?;
    let k = m1_cap.max(k2.value);
    Ok(V2Bound { k1, m1_cap, k2, k })
}

/// The V2 bound at `|u| = |v| = ceil(2k) + |h1| + |h2|`: exponent bound for
/// commensurability of two C-reduced elements.
pub fn v3<S: Scalar>(
    c: &HyperbolicConstants<S>,
    card: u64,
    h1_len: u64,
    h2_len: u64,
    exp_cap: u64,
) -> Result<V2Bound<S>> {
    let two_k = Bound::ceil("V3", nat::<S>(2) * c.k.clone())?.value;
    let uv = two_k + h1_len + h2_len;
    v2(c, card, (uv, uv, h1_len, h2_len), exp_cap)
}

/// `m + n + 8δ + 2k + 2`: conjugator length bound for words of lengths
/// `m` and `n`.
pub fn conjugator_bound<S: Scalar>(c: &HyperbolicConstants<S>, m: u64, n: u64) -> Result<Bound<S>> {
    let exact = nat::<S>(m) + nat(n) + nat::<S>(8) * c.delta.clone() + nat::<S>(2) * c.k.clone() + nat(2);
    Bound::ceil("conjugator", exact)
}

pub fn bound_lemstab(ctx: &HyperbolicContext, h_len: usize) -> Result<u64> {
    Ok(lemstab(ctx.constants(), h_len as u64)?.value)
}

pub fn bound_v1(ctx: &HyperbolicContext, w_len: usize, h_len: usize) -> Result<u64> {
    Ok(v1(ctx.constants(), w_len as u64, h_len as u64)?.value)
}

/// `(K1, K)` of the double-coset bound.
pub fn bound_v2(
    ctx: &HyperbolicContext,
    u_len: usize,
    v_len: usize,
    h1_len: usize,
    h2_len: usize,
) -> Result<(u64, u64)> {
    let b = v2(
        ctx.constants(),
        ctx.alphabet_size(),
        (u_len as u64, v_len as u64, h1_len as u64, h2_len as u64),
        ctx.options().exp_cap,
    )?;
    Ok((b.k1.value, b.k))
}

pub fn bound_v3(ctx: &HyperbolicContext, h1_len: usize, h2_len: usize) -> Result<u64> {
    Ok(v3(ctx.constants(), ctx.alphabet_size(), h1_len as u64, h2_len as u64, ctx.options().exp_cap)?.k)
}

pub fn conj_bound(ctx: &HyperbolicContext, m: usize, n: usize) -> Result<u64> {
    Ok(conjugator_bound(ctx.constants(), m as u64, n as u64)?.value)
}

/// The bounds consumed by one decision query. Each entry keeps the largest
/// value used.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundBundle {
    pub k_stab: Option<Rational>,
    pub k_lemstab: Option<u64>,
    pub l_v1: Option<u64>,
    pub k1_v2: Option<u64>,
    pub k_v2: Option<u64>,
    pub l_v3: Option<u64>,
    pub conj_bound: Option<u64>,
}

impl BoundBundle {
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if let Some(k) = self.k_stab {
            out.push(("k_stab", k.to_string()));
        }
        for (name, v) in [
            ("K_lemstab", self.k_lemstab),
            ("L_v1", self.l_v1),
            ("K1_v2", self.k1_v2),
            ("K_v2", self.k_v2),
            ("L_v3", self.l_v3),
            ("conj_bound", self.conj_bound),
        ] {
            if let Some(v) = v {
                out.push((name, v.to_string()));
            }
        }
        out
    }
}

impl fmt::Display for BoundBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Thread-safe accumulator for a [`BoundBundle`].
#[derive(Debug, Default)]
pub struct BoundRecorder(Mutex<BoundBundle>);

impl BoundRecorder {
    pub fn snapshot(&self) -> BoundBundle {
        self.0.lock().expect("bound lock").clone()
    }

    pub fn update(&self, f: impl FnOnce(&mut BoundBundle)) {
        f(&mut self.0.lock().expect("bound lock"));
    }
}

pub(crate) fn raise(slot: &mut Option<u64>, v: u64) {
    *slot = Some(slot.map_or(v, |old| old.max(v)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::KProvider;

    fn zero() -> HyperbolicConstants<Rational> {
        HyperbolicConstants::from_delta(Rational::from_integer(0), KProvider::Tree).unwrap()
    }

    #[test]
    fn lemstab_and_v1() {
        let c = zero();
        assert_eq!(lemstab(&c, 2).unwrap().value, 2);
        assert_eq!(lemstab(&c, 5).unwrap().value, 5);
        assert_eq!(v1(&c, 6, 2).unwrap(), Bound { exact: Rational::from_integer(9), value: 9 });
        assert_eq!(v1(&c, 2, 2).unwrap().value, 3);
        assert_eq!(v1(&c, 3, 2).unwrap().exact, Rational::new(9, 2));
    }

    #[test]
    fn v2_and_v3() {
        let c = zero();
        let b = v2(&c, 4, (2, 2, 2, 2), 1_000_000).unwrap();
        assert_eq!((b.k1.value, b.m1_cap), (4, 256));
        assert_eq!(b.k2.exact, Rational::from_integer(258));
        assert_eq!(b.k, 258);
        let b = v2(&c, 4, (1, 1, 1, 1), 1_000_000).unwrap();
        assert_eq!((b.k1.value, b.m1_cap, b.k), (2, 16, 18));
        assert_eq!(v3(&c, 4, 2, 2, 1_000_000).unwrap(), v2(&c, 4, (4, 4, 2, 2), 1_000_000).unwrap());
        assert_eq!(v3(&c, 4, 1, 1, 1_000_000).unwrap(), v2(&c, 4, (2, 2, 1, 1), 1_000_000).unwrap());
        assert!(matches!(v2(&c, 4, (20, 2, 2, 2), 1_000_000), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn float_constants_agree() {
        let c = HyperbolicConstants::<f64>::from_delta(0.0, KProvider::Tree).unwrap();
        assert_eq!(v1(&c, 6, 2).unwrap().value, 9);
        assert_eq!(v2(&c, 4, (2, 2, 2, 2), 1_000_000).unwrap().k, 258);
    }
}
