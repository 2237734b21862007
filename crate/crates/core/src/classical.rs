//! Eisenstein series, rational powers of eta, the discriminant and bases of
//! the graded ring `M = Q[E4, E6]`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rat::{int, Rat};

static BERNOULLI: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
static EISENSTEIN: OnceLock<Mutex<HashMap<u32, Vec<Rat>>>> = OnceLock::new();
static DELTA: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rat {
    let cache = BERNOULLI.get_or_init(|| Mutex::new(vec![Rat::one()]));
    let mut b = cache.lock().expect("bernoulli cache poisoned");
    while b.len() <= n {
        let m = b.len();
        let mut s = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rat::from_integer(binomial(m + 1, j)) * bj;
        }
        b.push(-s / int(m as i64 + 1));
    }
    b[n].clone()
}

/// `σ_p(n)`, the sum of the `p`-th powers of the divisors of `n >= 1`.
pub fn divisor_sum(p: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(p);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(p);
            }
        }
        d += 1;
    }
    s
}

/// Normalized Eisenstein series `E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n`,
/// known through `q^N`. `E_2` is included (quasi-modular).
pub fn eisenstein(k: u32, precision: usize) -> Result<QSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Precondition(format!(
            "Eisenstein series needs even weight >= 2, got {k}"
        )));
    }
    let cache = EISENSTEIN.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("eisenstein cache poisoned");
    let coeffs = map.entry(k).or_default();
    if coeffs.len() <= precision {
        let factor = -int(2 * k as i64) / bernoulli(k as usize);
        if coeffs.is_empty() {
            coeffs.push(Rat::one());
        }
        for n in coeffs.len()..=precision {
            coeffs.push(&factor * Rat::from_integer(divisor_sum(k - 1, n as u64)));
        }
    }
    Ok(QSeries::from_power_series(coeffs[..=precision].to_vec()))
}

/// `η^e = q^{e/24} Π (1 - q^n)^e` for rational `e`, known through
/// `q^{e/24 + N}`.
pub fn eta_power(e: &Rat, precision: usize) -> QSeries {
    let sigma: Vec<Rat> = (0..=precision)
        .map(|n| {
            if n == 0 {
                Rat::zero()
            } else {
                Rat::from_integer(divisor_sum(1, n as u64))
            }
        })
        .collect();
    let mut g = vec![Rat::one()];
    for n in 1..=precision {
        let mut s = Rat::zero();
        for k in 1..=n {
            if !g[n - k].is_zero() {
                s += &sigma[k] * &g[n - k];
            }
        }
        g.push(-(e * s) / int(n as i64));
    }
    QSeries::new(e / int(24), g, precision).expect("length matches precision")
}

/// The discriminant `Δ = η^24`, known through `q^{N+1}`. Every new prefix is
/// cross-checked against `(E4^3 - E6^2)/1728`.
pub fn delta(precision: usize) -> QSeries {
    let cache = DELTA.get_or_init(|| Mutex::new(Vec::new()));
    let mut known = cache.lock().expect("delta cache poisoned");
    if known.len() <= precision {
        let eta = eta_power(&int(24), precision);
        let n = precision + 1;
        let e4 = eisenstein(4, n).expect("weight 4");
        let e6 = eisenstein(6, n).expect("weight 6");
        let alt = e4.pow(3).sub(&e6.pow(2)).scale(&Rat::new(1.into(), 1728.into()));
        let agree = (0..=precision).all(|i| {
            let ex = int(i as i64 + 1);
            eta.coefficient_at(&ex) == alt.coefficient_at(&ex)
        });
        assert!(
            agree,
            "discriminant self-check failed: product and Eisenstein routes disagree"
        );
        *known = eta.coefficients().to_vec();
    }
    QSeries::new(int(1), known[..=precision].to_vec(), precision).expect("length matches")
}

/// `dim M_k` for the ring of level one modular forms.
pub fn dim_m(weight: i64) -> usize {
    if weight < 0 || weight % 2 != 0 {
        return 0;
    }
    let base = (weight / 12) as usize;
    if weight % 12 == 2 {
        base
    } else {
        base + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFormBasis {
    pub weight: i64,
    /// Exponent pairs `(a, b)` of `E4^a E6^b`, `a` descending.
    pub monomials: Vec<(u32, u32)>,
    pub expansions: Vec<QSeries>,
}

/// Monomial basis of `M_weight` expanded through `q^N`. Empty for negative
/// or odd weight.
pub fn mspace_basis(weight: i64, precision: usize) -> GradedFormBasis {
    let mut monomials = Vec::new();
    if weight >= 0 && weight % 2 == 0 {
        let mut a = weight / 4;
        while a >= 0 {
            let rest = weight - 4 * a;
            if rest % 6 == 0 {
                monomials.push((a as u32, (rest / 6) as u32));
            }
            a -= 1;
        }
    }
    let expansions = if monomials.is_empty() {
        Vec::new()
    } else {
        let e4 = eisenstein(4, precision).expect("weight 4");
        let e6 = eisenstein(6, precision).expect("weight 6");
        monomials
            .iter()
            .map(|&(a, b)| e4.pow(a).mul(&e6.pow(b)).truncate(precision))
            .collect()
    };
    GradedFormBasis {
        weight,
        monomials,
        expansions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    /// Π_{n<=N} (1 - q^n)^24 by repeated multiplication, shifted by q.
    fn delta_by_product(n: usize) -> Vec<Rat> {
        let mut p = vec![Rat::zero(); n + 1];
        p[0] = Rat::one();
        for m in 1..=n {
            for _ in 0..24 {
                for i in (m..=n).rev() {
                    let t = p[i - m].clone();
                    p[i] -= t;
                }
            }
        }
        p
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(5), int(0));
    }

    #[test]
    fn eisenstein_low_terms() {
        assert_eq!(eisenstein(4, 2).unwrap().coefficients(), &ints(&[1, 240, 2160])[..]);
        assert_eq!(eisenstein(6, 2).unwrap().coefficients(), &ints(&[1, -504, -16632])[..]);
        assert_eq!(eisenstein(2, 1).unwrap().coefficients(), &ints(&[1, -24])[..]);
        assert!(eisenstein(3, 4).is_err());
        assert!(eisenstein(0, 4).is_err());
    }

    #[test]
    fn eta_power_examples() {
        assert_eq!(eta_power(&int(0), 5), QSeries::one(5));
        let d = eta_power(&int(24), 4);
        assert_eq!(d.base_exponent(), &int(1));
        assert_eq!(d.coefficients(), &ints(&[1, -24, 252, -1472, 4830])[..]);
        assert_eq!(eta_power(&int(12), 3).base_exponent(), &rat(1, 2));
    }

    #[test]
    fn delta_matches_product_expansion() {
        let d = delta(30);
        assert_eq!(d.coefficients(), &delta_by_product(30)[..]);
        assert_eq!(d.coefficient_at(&int(2)), Some(int(-24)));
    }

    #[test]
    fn eta_powers_multiply() {
        let a = eta_power(&rat(1, 2), 20);
        let b = eta_power(&rat(3, 2), 20);
        assert_eq!(a.mul(&b), eta_power(&int(2), 20));
    }

    #[test]
    fn basis_shapes() {
        let b0 = mspace_basis(0, 3);
        assert_eq!(b0.monomials, vec![(0, 0)]);
        assert_eq!(b0.expansions, vec![QSeries::one(3)]);
        assert!(mspace_basis(2, 3).monomials.is_empty());
        assert_eq!(mspace_basis(12, 3).monomials, vec![(3, 0), (0, 2)]);
        assert!(mspace_basis(-4, 3).monomials.is_empty());
    }

    #[test]
    fn dimension_formula_matches_generating_function() {
        // 1/((1-t^4)(1-t^6)) expanded directly
        let mut g = vec![0usize; 41];
        for a in 0..=10 {
            for b in 0..=6 {
                let w = 4 * a + 6 * b;
                if w <= 40 {
                    g[w] += 1;
                }
            }
        }
        for (w, &count) in g.iter().enumerate() {
            assert_eq!(dim_m(w as i64), count, "weight {w}");
            assert_eq!(mspace_basis(w as i64, 0).monomials.len(), count);
        }
    }
}
