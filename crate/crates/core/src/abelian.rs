//! Abelianisation of a finite presentation, used as a cheap conjugacy
//! invariant and as a hash bucket for group elements.

use crate::words::Word;

/// The map `F(S) → Z^n / ⟨relator exponent vectors⟩`, in diagonal
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    rank: usize,
    /// Column transform: coordinates are `exponent_sums · basis`.
    basis: Vec<Vec<i64>>,
    /// Diagonal entries; 0 marks a free coordinate, 1 a dropped one.
    moduli: Vec<i64>,
}

impl Abelianization {
    pub fn new(rank: usize, relators: &[Word]) -> Self {
        let mut a: Vec<Vec<i64>> = relators.iter().map(|r| r.exponent_sums(rank)).collect();
        let mut basis: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        let rows = a.len();
        let mut moduli = vec![0i64; rank];
        let mut t = 0;
        while t < rows.min(rank) {
            let Some((pi, pj)) = min_nonzero(&a, t) else { break };
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut basis, t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    let q = a[i][t].div_euclid(a[t][t]);
                    if q != 0 {
                        for j in t..rank {
                            a[i][j] -= q * a[t][j];
                        }
                    }
                    dirty |= a[i][t] != 0;
                }
                for j in t + 1..rank {
                    let q = a[t][j].div_euclid(a[t][t]);
                    if q != 0 {
                        for row in a.iter_mut() {
                            row[j] -= q * row[t];
                        }
                        for row in basis.iter_mut() {
                            row[j] -= q * row[t];
                        }
                    }
                    dirty |= a[t][j] != 0;
                }
                if !dirty {
                    break;
                }
                let (pi, pj) = min_nonzero(&a, t).expect("pivot row still non-zero");
                a.swap(t, pi);
                swap_cols(&mut a, t, pj);
                swap_cols(&mut basis, t, pj);
            }
            moduli[t] = a[t][t].abs();
            t += 1;
        }
        Abelianization { rank, basis, moduli }
    }

    /// Image of `w`; equal elements of the group have equal keys.
    pub fn key(&self, w: &Word) -> Vec<i64> {
        self.key_of_sums(&w.exponent_sums(self.rank))
    }

    pub fn key_of_sums(&self, sums: &[i64]) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.rank);
        for (j, &m) in self.moduli.iter().enumerate() {
            if m == 1 {
                continue;
            }
            let y: i64 = (0..self.rank).map(|i| sums[i] * self.basis[i][j]).sum();
            out.push(if m == 0 { y } else { y.rem_euclid(m) });
        }
        out
    }

    /// `n · key`, computed in the target group.
    pub fn scale(&self, key: &[i64], n: i64) -> Vec<i64> {
        self.moduli
            .iter()
            .filter(|&&m| m != 1)
            .zip(key)
            .map(|(&m, &y)| if m == 0 { y * n } else { (y * n).rem_euclid(m) })
            .collect()
    }

    /// Torsion-free rank of the abelianisation.
    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|&&m| m == 0).count()
    }

    /// Orders of the finite cyclic factors (values > 1).
    pub fn torsion(&self) -> Vec<i64> {
        self.moduli.iter().copied().filter(|&m| m > 1).collect()
    }
}

fn min_nonzero(a: &[Vec<i64>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<i64>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    #[test]
    fn infinite_dihedral_is_klein_four() {
        let al = Alphabet::new(["s", "t"]).unwrap();
        let ab = Abelianization::new(2, &[al.parse("ss").unwrap(), al.parse("tt").unwrap()]);
        assert_eq!(ab.free_rank(), 0);
        assert_eq!(ab.torsion(), vec![2, 2]);
        assert_eq!(ab.key(&al.parse("st").unwrap()), ab.key(&al.parse("ts").unwrap()));
        assert_ne!(ab.key(&al.parse("s").unwrap()), ab.key(&al.parse("t").unwrap()));
        assert_eq!(ab.key(&al.parse("ss").unwrap()), vec![0, 0]);
    }

    #[test]
    fn mixed_relators() {
        // ⟨a, b | a^2 b^4, a^6⟩ abelianises to Z/2 x Z/12 (order 24).
        let al = Alphabet::new(["a", "b"]).unwrap();
        let ab = Abelianization::new(2, &[al.parse("aabbbb").unwrap(), al.parse("aaaaaa").unwrap()]);
        assert_eq!(ab.free_rank(), 0);
        assert_eq!(ab.torsion().iter().product::<i64>(), 24);
        let rel = al.parse("aabbbb").unwrap();
        assert!(ab.key(&rel).iter().all(|&x| x == 0));
    }

    #[test]
    fn surface_group_is_free_abelian() {
        let al = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        let ab = Abelianization::new(4, &[al.parse("abABcdCD").unwrap()]);
        assert_eq!(ab.free_rank(), 4);
        let w = al.parse("aab").unwrap();
        assert_eq!(ab.scale(&ab.key(&w), 3), ab.key(&w.pow(3)));
    }
}
