//! The modular derivative `D_k = q d/dq - (k/12) E2` and vectors of
//! q-series carrying a weight.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::classical::eisenstein;
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rat::{floor, frac, int, Rat};

/// `D_k f = q f' - (k/12) E2 f` at the precision of `f`.
pub fn modular_derivative(f: &QSeries, k: &Rat) -> QSeries {
    let d = f.q_derivative();
    if k.is_zero() {
        return d;
    }
    let e2 = eisenstein(2, f.integer_span()).expect("weight 2");
    d.sub(&e2.mul(f).scale(&(k / int(12))))
}

/// `D_k^n = D_{k+2(n-1)} ∘ ... ∘ D_k`.
pub fn iterate_derivative(f: &QSeries, k: &Rat, n: usize) -> QSeries {
    let mut g = f.clone();
    let mut w = k.clone();
    for _ in 0..n {
        g = modular_derivative(&g, &w);
        w += int(2);
    }
    g
}

fn falling(x: i64, j: usize) -> Rat {
    (0..j as i64).fold(Rat::one(), |acc, i| acc * int(x - i))
}

/// Constant terms `f_{n,0}(0), ..., f_{n,n-1}(0)` of the holomorphic
/// coefficients in `D_k^n = Σ_j f_{n,j}(q) q^j d^j/dq^j`.
///
/// Since `q^j d^j/dq^j q^r = r(r-1)...(r-j+1) q^r`, applying `D_k^n` to
/// `q^m` for `m = 0..=n` gives a triangular system in the unknowns.
pub fn dkn_constants(n: usize, k: &Rat) -> Vec<Rat> {
    let mut f: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mono = QSeries::monomial(int(m as i64), Rat::one(), 0);
        let p = iterate_derivative(&mono, k, n)
            .coefficient_at(&int(m as i64))
            .expect("leading coefficient is within precision");
        let lower: Rat = f
            .iter()
            .enumerate()
            .map(|(j, fj)| fj * falling(m as i64, j))
            .sum();
        f.push((p - lower) / falling(m as i64, m));
    }
    assert!(f[n].is_one(), "D_k^n is not monic in q^n d^n/dq^n");
    f.truncate(n);
    f
}

/// A column of q-series with a weight tag. Component `j` lives on the
/// exponent coset `cosets[j] + Z`, `cosets[j] ∈ [0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VvmfVector {
    pub weight: Rat,
    pub components: Vec<QSeries>,
    pub cosets: Vec<Rat>,
}

impl VvmfVector {
    /// Infers each coset from the leading exponent; components must be
    /// nonzero.
    pub fn new(weight: Rat, components: Vec<QSeries>) -> Result<Self> {
        let cosets = components
            .iter()
            .map(|c| {
                c.leading_exponent()
                    .map(frac)
                    .ok_or_else(|| Error::Precondition("zero component has no exponent coset".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            weight,
            components,
            cosets,
        })
    }

    pub fn with_cosets(weight: Rat, components: Vec<QSeries>, cosets: Vec<Rat>) -> Self {
        assert_eq!(components.len(), cosets.len());
        let cosets = cosets.iter().map(frac).collect();
        Self {
            weight,
            components,
            cosets,
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(QSeries::is_zero)
    }

    pub fn derivative(&self) -> Self {
        Self {
            weight: &self.weight + int(2),
            components: self
                .components
                .iter()
                .map(|c| modular_derivative(c, &self.weight))
                .collect(),
            cosets: self.cosets.clone(),
        }
    }

    pub fn iterate_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |v, _| v.derivative())
    }

    /// `f · F` for a scalar form `f` of weight `form_weight`.
    pub fn scale_by_form(&self, f: &QSeries, form_weight: i64) -> Self {
        Self {
            weight: &self.weight + int(form_weight),
            components: self.components.iter().map(|c| c.mul(f)).collect(),
            cosets: self.cosets.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            weight: self.weight.clone(),
            components: self.components.iter().map(|x| x.scale(c)).collect(),
            cosets: self.cosets.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight || self.cosets != other.cosets {
            return Err(Error::Precondition(
                "vectors differ in weight or exponent cosets".into(),
            ));
        }
        Ok(Self {
            weight: self.weight.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
            cosets: self.cosets.clone(),
        })
    }

    pub fn leading_exponents(&self) -> Vec<Option<Rat>> {
        self.components
            .iter()
            .map(|c| c.leading_exponent().cloned())
            .collect()
    }

    /// Number of known terms `coset + t`, `t >= 0`, in component `j`.
    pub fn known_terms(&self, j: usize) -> usize {
        let span = self.components[j].cap() - &self.cosets[j];
        let f = floor(&span);
        if f < BigInt::zero() {
            0
        } else {
            f.to_usize().expect("span out of range") + 1
        }
    }

    /// Coefficient of `q^{coset_j + t}` in component `j`.
    pub fn coefficient(&self, j: usize, t: usize) -> Option<Rat> {
        self.components[j].coefficient_at(&(&self.cosets[j] + int(t as i64)))
    }

    /// Smallest relative precision over the components.
    pub fn precision(&self) -> usize {
        self.components
            .iter()
            .map(QSeries::precision)
            .min()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{delta, eta_power};
    use crate::rat::rat;

    #[test]
    fn delta_is_killed_by_d12() {
        assert!(modular_derivative(&delta(30), &int(12)).is_zero());
    }

    #[test]
    fn ramanujan_identities() {
        let e4 = eisenstein(4, 30).unwrap();
        let e6 = eisenstein(6, 30).unwrap();
        assert_eq!(modular_derivative(&e4, &int(4)), e6.scale(&rat(-1, 3)));
        assert_eq!(
            iterate_derivative(&e4, &int(4), 2),
            e4.mul(&e4).scale(&rat(1, 6))
        );
    }

    #[test]
    fn trivial_iterates() {
        assert!(modular_derivative(&QSeries::one(5), &int(0)).is_zero());
        let e4 = eisenstein(4, 5).unwrap();
        assert_eq!(iterate_derivative(&e4, &int(4), 0), e4);
        assert!(iterate_derivative(&eta_power(&int(2), 12), &int(1), 1).is_zero());
    }

    #[test]
    fn wtk_formula_for_top_constant() {
        for n in 1..=6i64 {
            for k in [rat(0, 1), rat(2, 1), rat(-7, 5), rat(13, 3)] {
                let f = dkn_constants(n as usize, &k);
                let expect = (int(5 * (n - 1)) - &k) * int(n) / int(12);
                assert_eq!(f[n as usize - 1], expect);
            }
        }
        assert_eq!(dkn_constants(1, &int(2)), vec![rat(-1, 6)]);
        assert_eq!(dkn_constants(2, &int(2))[1], rat(1, 2));
    }

    #[test]
    fn monomial_leading_coefficient() {
        let lam = rat(3, 7);
        let k = rat(5, 2);
        let d = modular_derivative(&QSeries::monomial(lam.clone(), Rat::one(), 4), &k);
        assert_eq!(d.leading_coefficient(), Some(lam - k / int(12)));
    }
}
