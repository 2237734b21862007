//! Exact rank and kernel over Q via fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// Row echelon form produced by Bareiss elimination on an integer matrix.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Scales each rational row by the lcm of its denominators.
fn integer_rows(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}

fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let piv_row = &top[r];
        let piv = &piv_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = piv * &row[j] - &lead * &piv_row[j];
                row[j] = v / &prev;
            }
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Rank over Q of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let n = first.len();
    bareiss(integer_rows(rows, n), n).pivots.len()
}

/// Basis of `{x : A x = 0}` for the `m × ncols` matrix `A`, one vector per
/// free column in increasing column order.
pub fn kernel(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let ech = bareiss(integer_rows(rows, ncols), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); ncols];
            x[f] = Rat::one();
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
                let mut s = Rat::zero();
                for j in pc + 1..ncols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += Rat::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -s / Rat::from_integer(row[pc].clone());
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Plain rational Gauss-Jordan rank, used as an independent check.
    fn rank_by_gauss(rows: &[Vec<Rat>]) -> usize {
        let mut a = rows.to_vec();
        let m = a.len();
        let n = if m == 0 { 0 } else { a[0].len() };
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] * &inv;
                    for j in c..n {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, planted_rank: usize) -> Vec<Vec<Rat>> {
        let gen: Vec<Vec<Rat>> = (0..planted_rank)
            .map(|_| (0..n).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect())
            .collect();
        (0..m)
            .map(|_| {
                let coeffs: Vec<Rat> = (0..planted_rank).map(|_| int(rng.gen_range(-3..=3))).collect();
                (0..n)
                    .map(|j| gen.iter().zip(&coeffs).map(|(g, c)| &g[j] * c).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rank_agrees_with_gauss() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let m = rng.gen_range(1..7);
            let n = rng.gen_range(1..7);
            let k = rng.gen_range(0..=m.min(n));
            let a = random_matrix(&mut rng, m, n, k);
            assert_eq!(rank(&a), rank_by_gauss(&a));
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let m = rng.gen_range(1..6);
            let n = rng.gen_range(1..7);
            let k = rng.gen_range(0..=m.min(n));
            let a = random_matrix(&mut rng, m, n, k);
            let ker = kernel(&a, n);
            assert_eq!(ker.len(), n - rank_by_gauss(&a));
            for x in &ker {
                for row in &a {
                    let s: Rat = row.iter().zip(x).map(|(p, q)| p * q).sum();
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let a = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(rank(&a), 2);
        assert!(kernel(&a, 2).is_empty());
        assert_eq!(rank(&[]), 0);
    }
}
