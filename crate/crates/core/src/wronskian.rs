//! The modular Wronskian `det(D^i f_j)` and its eta-factorization.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::classical::eta_power;
use crate::error::{Error, Result};
use crate::modular_deriv::VvmfVector;
use crate::qseries::QSeries;
use crate::rat::{format_rat, int, Rat};

/// `det(D_k^i f_j)` for `0 <= i < d`, by Laplace expansion along the last
/// row over column subsets.
pub fn modular_wronskian(f: &VvmfVector) -> Result<QSeries> {
    let d = f.dim();
    if d == 0 {
        return Err(Error::Precondition("empty vector".into()));
    }
    let rows: Vec<VvmfVector> = (0..d)
        .scan(f.clone(), |cur, _| {
            let out = cur.clone();
            *cur = cur.derivative();
            Some(out)
        })
        .collect();
    let precision = f.precision();
    let mut minors: HashMap<u32, QSeries> = HashMap::new();
    minors.insert(0, QSeries::one(precision));
    for (i, row) in rows.iter().enumerate() {
        let mut next: HashMap<u32, QSeries> = HashMap::new();
        for mask in 0u32..(1 << d) {
            if mask.count_ones() as usize != i + 1 {
                continue;
            }
            let mut acc: Option<QSeries> = None;
            for (pos, c) in (0..d).filter(|c| mask & (1 << c) != 0).enumerate() {
                let term = row.components[c].mul(&minors[&(mask & !(1 << c))]);
                let term = if (i + pos) % 2 == 1 { term.neg() } else { term };
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
            next.insert(mask, acc.expect("nonempty subset"));
        }
        minors = next;
    }
    let w = minors.remove(&((1u32 << d) - 1)).expect("full minor");
    if w.is_zero() {
        let lower: Rat = f
            .components
            .iter()
            .filter_map(|c| c.leading_exponent().cloned())
            .sum();
        if w.cap() < lower {
            return Err(Error::InsufficientPrecision(format!(
                "determinant known only through q^{}, below the expected leading exponent {}",
                format_rat(&w.cap()),
                format_rat(&lower)
            )));
        }
    }
    Ok(w)
}

/// Weight `d(k + d - 1)` of the Wronskian of a weight `k` vector.
pub fn wronskian_weight(d: usize, k: &Rat) -> Rat {
    int(d as i64) * (k + int(d as i64 - 1))
}

/// `12(λ+n)/d + 1 - d`.
pub fn weight_lower_bound(d: usize, lambda: &Rat, n: i64) -> Rat {
    int(12) * (lambda + int(n)) / int(d as i64) + Rat::one() - int(d as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianFactorization {
    /// `λ + n`, the sum of the leading exponents.
    pub exponent: Rat,
    pub g: QSeries,
    pub g_weight: Rat,
    pub wronskian: QSeries,
}

impl WronskianFactorization {
    /// True when `g` is a constant to its known precision.
    pub fn g_is_constant(&self) -> bool {
        self.g.leading_exponent().is_some_and(Zero::is_zero) && self.g.is_monomial()
    }
}

/// `W(F) = η^{24(λ+n)} g` with `g` a non-cusp form of weight
/// `d(d+k-1) - 12(λ+n)`.
pub fn wronskian_factorization(f: &VvmfVector) -> Result<WronskianFactorization> {
    let mut exponent = Rat::zero();
    for c in &f.components {
        exponent += c
            .leading_exponent()
            .ok_or_else(|| Error::LinearlyDependent("a component is zero".into()))?;
    }
    let w = modular_wronskian(f)?;
    let Some(lead) = w.leading_exponent() else {
        return Err(Error::LinearlyDependent(format!(
            "Wronskian vanishes through q^{}",
            format_rat(&w.cap())
        )));
    };
    if *lead > exponent {
        return Err(Error::CuspidalWronskianQuotient);
    }
    if *lead < exponent {
        return Err(Error::Internal(
            "Wronskian starts below the sum of leading exponents".into(),
        ));
    }
    let eta = eta_power(&(int(24) * &exponent), w.precision());
    let g = w.quotient(&eta)?;
    let g_weight = wronskian_weight(f.dim(), &f.weight) - int(12) * &exponent;
    Ok(WronskianFactorization {
        exponent,
        g,
        g_weight,
        wronskian: w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{delta, eisenstein};
    use crate::frobenius::solve_fundamental_system;
    use crate::mmde::Mmde;
    use crate::rat::rat;

    fn two_dim() -> VvmfVector {
        let l = Mmde::from_roots(&[rat(1, 12), rat(5, 12)]).unwrap();
        solve_fundamental_system(&l, 20).unwrap()
    }

    #[test]
    fn one_by_one_is_the_component() {
        let f = VvmfVector::new(int(12), vec![delta(10)]).unwrap();
        assert_eq!(modular_wronskian(&f).unwrap(), delta(10));
        let fac = wronskian_factorization(&f).unwrap();
        assert_eq!(fac.exponent, int(1));
        assert_eq!(fac.g_weight, int(0));
        assert!(fac.g_is_constant());
    }

    #[test]
    fn mmde_system_factors_through_eta() {
        let fac = wronskian_factorization(&two_dim()).unwrap();
        assert_eq!(fac.exponent, rat(1, 2));
        assert_eq!(fac.g_weight, int(0));
        assert!(fac.g_is_constant());
        let eta12 = eta_power(&int(12), 19);
        let q = fac.wronskian.quotient(&eta12).unwrap();
        assert_eq!(q.coefficients()[1..].iter().filter(|c| !c.is_zero()).count(), 0);
    }

    #[test]
    fn higher_weight_gives_positive_g_weight() {
        let f = two_dim();
        let e4 = eisenstein(4, 20).unwrap();
        let g = f.scale_by_form(&e4, 4);
        let fac = wronskian_factorization(&g).unwrap();
        assert_eq!(fac.g_weight, int(8));
        assert!(g.weight > weight_lower_bound(2, &rat(1, 2), 0));
    }

    #[test]
    fn proportional_components_are_dependent() {
        let d = delta(10);
        let f = VvmfVector::new(int(12), vec![d.clone(), d.scale(&int(3))]).unwrap();
        assert!(modular_wronskian(&f).unwrap().is_zero());
        assert!(matches!(
            wronskian_factorization(&f),
            Err(Error::LinearlyDependent(_))
        ));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(weight_lower_bound(2, &rat(1, 2), 0), int(2));
        assert_eq!(weight_lower_bound(5, &rat(5, 2), 0), int(2));
        assert_eq!(weight_lower_bound(1, &int(1), 0), int(12));
    }
}
