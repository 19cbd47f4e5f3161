use crate::kernel::{HyperbolicContext, Syllable, WordProblem};
use crate::presentation::Backend;
use crate::words::Word;

/// A conjugator `g` with `g·u·g⁻¹ = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub conjugator: Word,
}

/// Decides whether `u` and `v` are conjugate, returning a geodesic
/// conjugator `g` with `g·u·g⁻¹ = v`.
pub fn are_conjugate(ctx: &HyperbolicContext, u: &Word, v: &Word) -> Option<ConjugacyWitness> {
    if ctx.abelian_key(u) != ctx.abelian_key(v) {
        return None;
    }
    let raw = match ctx.backend() {
        Backend::Free => free_conjugator(u, v),
        Backend::FreeProduct => free_product_conjugator(ctx.word_problem(), u, v),
        Backend::SmallCancellation => small_cancellation_conjugator(ctx, u, v),
    }?;
    let conjugator = ctx.geodesic(&raw);
    debug_assert!(ctx.are_equal(&u.conjugate_by(&conjugator), v));
    Some(ConjugacyWitness { conjugator })
}

/// Offset `k` with `a.rotate(k) == b`.
fn rotation_offset<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    let n = a.len();
    (0..n).find(|&k| (0..n).all(|j| a[(k + j) % n] == b[j]))
}

fn free_conjugator(u: &Word, v: &Word) -> Option<Word> {
    let (cu_core, cu) = u.cyclic_reduce();
    let (cv_core, cv) = v.cyclic_reduce();
    let k = rotation_offset(cu_core.letters(), cv_core.letters())?;
    let p = cu_core.prefix(k);
    Some(Word::product([&cv.inverse(), &p.inverse(), &cu]))
}

/// Cyclically reduced syllable form `(s, c)` with `s = c·w·c⁻¹`.
fn cyclic_syllables(wp: &WordProblem, w: &Word) -> (Vec<Syllable>, Word) {
    let mut syl = wp.syllables(w);
    let mut c = Word::empty();
    while syl.len() >= 2 && syl[0].0 == syl[syl.len() - 1].0 {
        let first = WordProblem::syllables_to_word(&syl[..1]);
        c = first.inverse().concat(&c);
        let rest = WordProblem::syllables_to_word(&syl[1..]);
        syl = wp.syllables(&rest.concat(&first));
    }
    (syl, c)
}

fn free_product_conjugator(wp: &WordProblem, u: &Word, v: &Word) -> Option<Word> {
    let (su, cu) = cyclic_syllables(wp, u);
    let (sv, cv) = cyclic_syllables(wp, v);
    let k = if su.len() <= 1 || sv.len() <= 1 {
        // Elements of a factor are conjugate only to themselves there, and
        // never to a cyclically reduced element of syllable length >= 2.
        (su == sv).then_some(0)?
    } else {
        rotation_offset(&su, &sv)?
    };
    let p = WordProblem::syllables_to_word(&su[..k]);
    Some(Word::product([&cv.inverse(), &p.inverse(), &cu]))
}

fn small_cancellation_conjugator(ctx: &HyperbolicContext, u: &Word, v: &Word) -> Option<Word> {
    let wp = ctx.word_problem();
    let (ur, cu) = wp.cyclic_dehn_reduce(u).expect("small-cancellation backend");
    let (vr, cv) = wp.cyclic_dehn_reduce(v).expect("small-cancellation backend");
    if ur.is_empty() || vr.is_empty() {
        return (ur.is_empty() && vr.is_empty()).then(|| Word::product([&cv.inverse(), &cu]));
    }
    // Across a one-layer annulus every cell has each boundary side shorter
    // than three times the other.
    if 3 * ur.len() < vr.len() || 3 * vr.len() < ur.len() {
        return None;
    }
    let v_rots: Vec<Word> = vr.cyclic_conjugates();
    for z in std::iter::once(Word::empty()).chain(wp.short_relator_subwords().iter().cloned()) {
        for i in 0..ur.len() {
            let ui = ur.rotate(i);
            let x = wp.dehn_reduce(&ui.conjugate_by(&z)).expect("small-cancellation backend");
            for (j, vj) in v_rots.iter().enumerate() {
                if wp.is_trivial(&x.concat(&vj.inverse())) {
                    let p = ur.prefix(i);
                    let q = vr.prefix(j);
                    return Some(Word::product([&cv.inverse(), &q, &z, &p.inverse(), &cu]));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_offsets() {
        assert_eq!(rotation_offset(&[1, 2, 3], &[2, 3, 1]), Some(1));
        assert_eq!(rotation_offset(&[1, 2, 3], &[3, 2, 1]), None);
        assert_eq!(rotation_offset::<u8>(&[], &[]), Some(0));
    }
}
