//! Power-series solutions of a monic modular differential equation at the
//! regular singular point `q = 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mmde::Mmde;
use crate::modular_deriv::VvmfVector;
use crate::qseries::QSeries;
use crate::rat::{format_rat, frac, int, lcm, poly_eval, Rat};
use crate::angle::RationalAngle;

/// `c_s(x) = Σ_j h_{j,s} x^j` for `s = 0..=N`, as ascending coefficient
/// vectors in `x`.
fn shifted_polynomials(theta: &[QSeries], precision: usize) -> Result<Vec<Vec<Rat>>> {
    let cols = theta
        .iter()
        .map(|h| h.power_series_coefficients(precision + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=precision)
        .map(|s| cols.iter().map(|c| c[s].clone()).collect())
        .collect())
}

/// The normalized fundamental system `q^{λ_j}(1 + Σ a_j(n) q^n)`, one
/// component per indicial root in increasing order, known through
/// `q^{λ_j + N}`.
pub fn solve_fundamental_system(l: &Mmde, precision: usize) -> Result<VvmfVector> {
    let mut roots = l.roots().to_vec();
    roots.sort();
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            if frac(&(a - b)).is_zero() {
                return Err(Error::CongruentRoots(format_rat(a), format_rat(b)));
            }
        }
    }
    let theta = l.theta_form(precision);
    let c = shifted_polynomials(&theta, precision)?;
    if c[0] != l.indicial_polynomial() {
        return Err(Error::Internal(
            "theta form disagrees with the indicial polynomial".into(),
        ));
    }
    let mut components = Vec::with_capacity(roots.len());
    for lam in &roots {
        components.push(frobenius_series(&c, lam, precision)?);
    }
    VvmfVector::new(l.weight().clone(), components)
}

/// `q^λ Σ a_n q^n` with `a_0 = 1` and
/// `a_n c_0(λ+n) = -Σ_{m<n} a_m c_{n-m}(λ+m)`.
///
/// All values `c_s(λ+m)` are scaled to integers `V[s][m]` by one common
/// denominator, and `a_n = A_n / B_n` with `B_n = Π_{j<=n} V[0][j]`, so the
/// recursion runs on integers and is reduced once at the end.
fn frobenius_series(c: &[Vec<Rat>], lam: &Rat, precision: usize) -> Result<QSeries> {
    let n_max = precision;
    let vals: Vec<Vec<Rat>> = (0..=n_max)
        .map(|s| {
            (0..=n_max - s)
                .map(|m| poly_eval(&c[s], &(lam + int(m as i64))))
                .collect()
        })
        .collect();
    let k = vals
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, v| if v.denom().is_one() { acc } else { lcm(&acc, v.denom()) });
    let v: Vec<Vec<BigInt>> = vals
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (&k / x.denom())).collect())
        .collect();
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    let mut b: Vec<BigInt> = vec![BigInt::one()];
    // q[m] = Π_{j=m+1}^{n-1} V[0][j]
    let mut q: Vec<BigInt> = Vec::new();
    for n in 1..=n_max {
        if n >= 2 {
            for x in q.iter_mut() {
                *x *= &v[0][n - 1];
            }
        }
        q.push(BigInt::one());
        let d = &v[0][n];
        if d.is_zero() {
            return Err(Error::Internal(format!(
                "indicial polynomial vanishes at {} + {n}",
                format_rat(lam)
            )));
        }
        let mut acc = BigInt::zero();
        for m in 0..n {
            if !a[m].is_zero() {
                acc -= &a[m] * &v[n - m][m] * &q[m];
            }
        }
        a.push(acc);
        b.push(&b[n - 1] * d);
    }
    let big_b = &b[n_max];
    let nums: Vec<BigInt> = a.iter().zip(&b).map(|(x, bn)| x * (big_b / bn)).collect();
    Ok(QSeries::from_numerators(lam.clone(), 1, nums, big_b.clone()))
}

/// Eigenvalues of the monodromy at `q = 0`: the leading exponents mod 1.
pub fn monodromy_t(f: &VvmfVector) -> Result<Vec<RationalAngle>> {
    f.components
        .iter()
        .map(|c| {
            c.leading_exponent()
                .map(RationalAngle::new)
                .ok_or_else(|| Error::Precondition("zero component has no leading exponent".into()))
        })
        .collect()
}
