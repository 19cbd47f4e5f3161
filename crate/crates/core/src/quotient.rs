//! Homomorphisms onto small permutation groups, used alongside the
//! abelianisation to split hash buckets of group elements.

use crate::words::Word;

const DEGREE: usize = 5;
const ORDER: usize = 120;

type Perm = [u8; DEGREE];

const IDENTITY: Perm = [0, 1, 2, 3, 4];

fn compose(p: &Perm, q: &Perm) -> Perm {
    // Apply `p` first, then `q`.
    let mut out = [0; DEGREE];
    for i in 0..DEGREE {
        out[i] = q[p[i] as usize];
    }
    out
}

fn invert(p: &Perm) -> Perm {
    let mut out = [0; DEGREE];
    for i in 0..DEGREE {
        out[p[i] as usize] = i as u8;
    }
    out
}

fn all_perms() -> Vec<Perm> {
    let mut out = Vec::with_capacity(ORDER);
    let mut p = IDENTITY;
    permute(&mut p, 0, &mut out);
    out.sort();
    out
}

fn permute(p: &mut Perm, k: usize, out: &mut Vec<Perm>) {
    if k == DEGREE {
        out.push(*p);
        return;
    }
    for i in k..DEGREE {
        p.swap(k, i);
        permute(p, k + 1, out);
        p.swap(k, i);
    }
}

/// Order of the subgroup generated by `gens`.
fn image_order(gens: &[Perm]) -> usize {
    let mut seen = vec![IDENTITY];
    let mut frontier = vec![IDENTITY];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(&x, g);
            if !seen.contains(&y) {
                seen.push(y);
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// A few surjections `F(S) → S₅` that kill every relator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PermutationQuotients {
    /// Per homomorphism, the images of the letter codes.
    images: Vec<Vec<Perm>>,
}

impl PermutationQuotients {
    /// Searches a fixed stride of generator assignments and keeps up to
    /// `max` pairwise non-conjugate surjective ones.
    pub fn find(rank: usize, relators: &[Word], max: usize) -> Self {
        let perms = all_perms();
        let mut images: Vec<Vec<Perm>> = Vec::new();
        if rank == 0 || max == 0 {
            return PermutationQuotients { images };
        }
        let total = (ORDER as u128).pow(rank as u32);
        let budget: u128 = 400_000;
        let stride: u128 = if total <= budget { 1 } else { 1_000_003 };
        let count = total.min(budget);
        let mut canonical_seen: Vec<Vec<Perm>> = Vec::new();
        for step in 0..count {
            let mut index = (step * stride) % total;
            let mut gens = Vec::with_capacity(rank);
            for _ in 0..rank {
                gens.push(perms[(index % ORDER as u128) as usize]);
                index /= ORDER as u128;
            }
            let letters: Vec<Perm> = gens.iter().flat_map(|g| [*g, invert(g)]).collect();
            if !relators.iter().all(|r| eval(&letters, r) == IDENTITY) || image_order(&gens) != ORDER {
                continue;
            }
            let canon = canonical(&gens, &perms);
            if canonical_seen.contains(&canon) {
                continue;
            }
            canonical_seen.push(canon);
            images.push(letters);
            if images.len() == max {
                break;
            }
        }
        PermutationQuotients { images }
    }

    pub fn count(&self) -> usize {
        self.images.len()
    }

    /// Images of `w`; equal elements of the group have equal keys.
    pub fn key(&self, w: &Word) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.images.len() * DEGREE);
        for letters in &self.images {
            out.extend_from_slice(&eval(letters, w));
        }
        out
    }
}

fn eval(letters: &[Perm], w: &Word) -> Perm {
    w.letters().iter().fold(IDENTITY, |acc, s| compose(&acc, &letters[s.code()]))
}

/// Least conjugate of the generator tuple under `S₅`.
fn canonical(gens: &[Perm], perms: &[Perm]) -> Vec<Perm> {
    perms
        .iter()
        .map(|c| {
            let ci = invert(c);
            gens.iter().map(|g| compose(&compose(&ci, g), c)).collect::<Vec<_>>()
        })
        .min()
        .expect("S5 is non-empty")
}
