//! Eisenstein operators `D_k^n + α4 E4 D_k^{n-2} + ... + α_{2n} E_{2n}`,
//! their indicial polynomials, and the inverse problem of recovering the
//! operator from its indicial roots.

use num_traits::{One, Zero};

use crate::classical::{delta, eisenstein};
use crate::error::{Error, Result};
use crate::modular_deriv::{dkn_constants, modular_derivative};
use crate::qseries::QSeries;
use crate::rat::{elementary_symmetric, format_rat, int, poly_from_roots, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinOperator {
    pub order: usize,
    pub weight: Rat,
    /// `α4, α6, ..., α_{2n}`.
    pub alphas: Vec<Rat>,
}

/// A monic modular differential operator: an Eisenstein operator plus an
/// optional `c Δ` term at order 6, together with its indicial roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mmde {
    base: EisensteinOperator,
    cusp: Option<Rat>,
    roots: Vec<Rat>,
}

/// `a[i][l]` = coefficient of `r^l` in `r(r-1)...(r-i)`.
fn falling_table(n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            let pts: Vec<Rat> = (0..=i as i64).map(int).collect();
            poly_from_roots(&pts)
        })
        .collect()
}

/// `f[p][m]` = `f_{p,m}(0)` for `p = 0..=n`, with `f[p][p] = 1`.
fn dkn_table(n: usize, k: &Rat) -> Vec<Vec<Rat>> {
    (0..=n)
        .map(|p| {
            let mut row = if p == 0 { Vec::new() } else { dkn_constants(p, k) };
            row.push(Rat::one());
            row
        })
        .collect()
}

impl EisensteinOperator {
    pub fn new(weight: Rat, alphas: Vec<Rat>) -> Self {
        Self {
            order: alphas.len() + 1,
            weight,
            alphas,
        }
    }

    /// `α_{2j}` for `j >= 2`.
    pub fn alpha(&self, j: usize) -> &Rat {
        &self.alphas[j - 2]
    }

    /// Constant terms `g_0(0), ..., g_n(0)` of the rewrite
    /// `Σ g_m(q) q^m d^m/dq^m`.
    fn rewrite_constants(&self) -> Vec<Rat> {
        let n = self.order;
        let f = dkn_table(n, &self.weight);
        (0..=n)
            .map(|m| {
                let mut g = f[n][m].clone();
                for j in 2..=n - m {
                    let inner = &f[n - j];
                    if m < inner.len() {
                        g += self.alpha(j) * &inner[m];
                    }
                }
                g
            })
            .collect()
    }

    /// Ascending coefficients `A_0, ..., A_{n-1}, 1` of the indicial
    /// polynomial.
    pub fn indicial_polynomial(&self) -> Vec<Rat> {
        let n = self.order;
        let g = self.rewrite_constants();
        let a = falling_table(n);
        let mut out = vec![Rat::zero(); n + 1];
        out[0] = g[0].clone();
        for m in 1..=n {
            for (l, coeff) in a[m - 1].iter().enumerate() {
                if !coeff.is_zero() {
                    out[l] += &g[m] * coeff;
                }
            }
        }
        out
    }

    /// `Σ_j h_j θ^j` with `θ = q d/dq`; `h_j` are power series through `q^N`.
    pub fn theta_form(&self, precision: usize, cusp: Option<&Rat>) -> Vec<QSeries> {
        let n = self.order;
        let e2 = eisenstein(2, precision).expect("weight 2");
        let mut powers: Vec<Vec<QSeries>> = vec![vec![QSeries::one(precision)]];
        let mut w = self.weight.clone();
        for _ in 0..n {
            let prev = powers.last().expect("nonempty");
            let shift = &w / int(12);
            let mut next: Vec<QSeries> = Vec::with_capacity(prev.len() + 1);
            for j in 0..=prev.len() {
                let mut h = QSeries::zero(precision);
                if j < prev.len() {
                    h = prev[j].q_derivative().sub(&e2.mul(&prev[j]).scale(&shift));
                }
                if j > 0 {
                    h = h.add(&prev[j - 1]);
                }
                next.push(h);
            }
            powers.push(next);
            w += int(2);
        }
        let mut h = powers[n].clone();
        for j in 2..=n {
            let a = self.alpha(j);
            if a.is_zero() {
                continue;
            }
            let e = eisenstein(2 * j as u32, precision).expect("even weight");
            for (i, p) in powers[n - j].iter().enumerate() {
                h[i] = h[i].add(&e.mul(p).scale(a));
            }
        }
        if let Some(c) = cusp {
            if !c.is_zero() {
                h[0] = h[0].add(&delta(precision).scale(c));
            }
        }
        h
    }
}

/// Eisenstein operator with the given indicial roots, for any order `n >= 1`.
///
/// The operator is unique among all monic modular operators only for
/// `n <= 5`; from order 6 on cusp forms may be added without changing the
/// roots, so the result is merely the member with no cusp-form terms.
pub fn eisenstein_operator_from_roots(roots: &[Rat]) -> Result<EisensteinOperator> {
    let n = roots.len();
    if n == 0 {
        return Err(Error::Precondition("at least one indicial root is required".into()));
    }
    let e = elementary_symmetric(roots);
    let a = falling_table(n);
    // A_{n-j} = (-1)^j e_j
    let target = |j: usize| if j.is_multiple_of(2) { e[j].clone() } else { -&e[j] };

    let mut g = vec![Rat::zero(); n + 1];
    g[n] = Rat::one();
    for j in 1..=n {
        let l = n - j;
        let mut s = a[n - 1][l].clone();
        for m in l + 1..n {
            if l < a[m - 1].len() {
                s += &g[m] * &a[m - 1][l];
            }
        }
        g[l] = target(j) - s;
    }

    let k = int(5 * (n as i64 - 1)) - int(12) * &g[n - 1] / int(n as i64);
    let f = dkn_table(n, &k);
    if f[n][n - 1] != g[n - 1] {
        return Err(Error::Internal("weight does not reproduce g_{n-1}(0)".into()));
    }
    let mut alphas: Vec<Rat> = Vec::with_capacity(n.saturating_sub(1));
    for j in 2..=n {
        let l = n - j;
        let mut alpha = &g[l] - &f[n][l];
        for i in 2..j {
            alpha -= &alphas[i - 2] * &f[n - i][l];
        }
        alphas.push(alpha);
    }
    Ok(EisensteinOperator::new(k, alphas))
}

/// The unique monic modular differential operator of order `n <= 5` with the
/// given indicial roots (as a multiset, in any order).
pub fn unique_operator(roots: &[Rat]) -> Result<EisensteinOperator> {
    if roots.len() >= 6 {
        return Err(Error::UnsupportedOrder(roots.len()));
    }
    eisenstein_operator_from_roots(roots)
}

/// `L_Λ ∘ D_{k'} + c Δ` where `L_Λ` is the order-5 operator with roots `Λ`
/// and `k' = wt(L_Λ) - 2`, so that `D_{k'}` lands in the weight `L_Λ` acts
/// on. For `ΣΛ = 5/2` this is `L_Λ ∘ D_0 + c Δ` in weight 0.
pub fn appendix_family(lambda: &[Rat], c: &Rat) -> Result<Mmde> {
    if lambda.len() != 5 {
        return Err(Error::Precondition(format!(
            "the order-6 family needs five roots, got {}",
            lambda.len()
        )));
    }
    let inner = unique_operator(lambda)?;
    let k = &inner.weight - int(2);
    let mut alphas = inner.alphas.clone();
    alphas.push(Rat::zero());
    let op = EisensteinOperator::new(k.clone(), alphas);
    let mut roots = vec![&k / int(12)];
    roots.extend(lambda.iter().cloned());
    Mmde::new(op, Some(c.clone()), roots)
}

impl Mmde {
    /// Checks that `roots` is exactly the root multiset of the indicial
    /// polynomial.
    pub fn new(base: EisensteinOperator, cusp: Option<Rat>, roots: Vec<Rat>) -> Result<Self> {
        if cusp.is_some() && base.order != 6 {
            return Err(Error::Precondition("a cusp term is only allowed at order 6".into()));
        }
        if poly_from_roots(&roots) != base.indicial_polynomial() {
            return Err(Error::Precondition(format!(
                "[{}] are not the indicial roots of the operator",
                roots.iter().map(format_rat).collect::<Vec<_>>().join(", ")
            )));
        }
        Ok(Self { base, cusp, roots })
    }

    /// The unique operator with these roots (order at most 5).
    pub fn from_roots(roots: &[Rat]) -> Result<Self> {
        let op = unique_operator(roots)?;
        Ok(Self {
            base: op,
            cusp: None,
            roots: roots.to_vec(),
        })
    }

    /// `D_k` as a first order equation; its root is `k/12`.
    pub fn first_order(k: &Rat) -> Self {
        Self {
            base: EisensteinOperator::new(k.clone(), Vec::new()),
            cusp: None,
            roots: vec![k / int(12)],
        }
    }

    pub fn operator(&self) -> &EisensteinOperator {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.order
    }

    pub fn weight(&self) -> &Rat {
        &self.base.weight
    }

    pub fn cusp(&self) -> Option<&Rat> {
        self.cusp.as_ref()
    }

    pub fn roots(&self) -> &[Rat] {
        &self.roots
    }

    /// The cusp term has zero constant term, so it never enters here.
    pub fn indicial_polynomial(&self) -> Vec<Rat> {
        self.base.indicial_polynomial()
    }

    pub fn theta_form(&self, precision: usize) -> Vec<QSeries> {
        self.base.theta_form(precision, self.cusp.as_ref())
    }

    /// `L[f]` at the precision of `f`.
    pub fn apply(&self, f: &QSeries) -> QSeries {
        let n = self.order();
        let span = f.integer_span();
        let mut iter = vec![f.clone()];
        let mut w = self.weight().clone();
        for _ in 0..n {
            let next = modular_derivative(iter.last().expect("nonempty"), &w);
            iter.push(next);
            w += int(2);
        }
        let mut out = iter[n].clone();
        for j in 2..=n {
            let a = self.base.alpha(j);
            if a.is_zero() {
                continue;
            }
            let e = eisenstein(2 * j as u32, span).expect("even weight");
            out = out.add(&e.mul(&iter[n - j]).scale(a));
        }
        if let Some(c) = &self.cusp {
            if !c.is_zero() {
                out = out.add(&delta(span).mul(f).scale(c));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{poly_eval, rat};

    fn lambda() -> Vec<Rat> {
        [2, 5, 8, 19, 21].iter().map(|&x| rat(x, 22)).collect()
    }

    #[test]
    fn first_order_polynomial() {
        let op = unique_operator(&[rat(1, 2)]).unwrap();
        assert_eq!(op.weight, int(6));
        assert_eq!(op.indicial_polynomial(), vec![rat(-1, 2), int(1)]);
        let d = Mmde::first_order(&int(12));
        assert_eq!(d.indicial_polynomial(), vec![int(-1), int(1)]);
    }

    #[test]
    fn known_weights() {
        assert_eq!(unique_operator(&[rat(1, 12), rat(5, 12)]).unwrap().weight, int(2));
        assert_eq!(unique_operator(&[int(0), rat(1, 3), rat(2, 3)]).unwrap().weight, int(2));
        assert_eq!(unique_operator(&lambda()).unwrap().weight, int(2));
    }

    #[test]
    fn roots_recovered() {
        let roots = [rat(1, 12), rat(5, 12)];
        let p = unique_operator(&roots).unwrap().indicial_polynomial();
        for r in &roots {
            assert!(poly_eval(&p, r).is_zero());
        }
        assert_eq!(p, poly_from_roots(&roots));
    }

    #[test]
    fn order_limits() {
        assert_eq!(unique_operator(&[]), Err(Error::Precondition("at least one indicial root is required".into())));
        let six: Vec<Rat> = (0..6).map(|i| rat(i, 7)).collect();
        assert_eq!(unique_operator(&six), Err(Error::UnsupportedOrder(6)));
        assert!(eisenstein_operator_from_roots(&six).is_ok());
    }

    #[test]
    fn appendix_kills_constants_only_without_cusp_term() {
        let l0 = appendix_family(&lambda(), &int(0)).unwrap();
        assert_eq!(l0.weight(), &int(0));
        assert!(l0.apply(&QSeries::one(20)).is_zero());
        let l1 = appendix_family(&lambda(), &int(1)).unwrap();
        assert_eq!(l1.apply(&QSeries::one(20)), delta(19));
        assert_eq!(l0.indicial_polynomial(), l1.indicial_polynomial());
    }

    #[test]
    fn theta_form_constant_terms_give_indicial_polynomial() {
        let op = unique_operator(&[rat(1, 5), rat(1, 2), rat(7, 10)]).unwrap();
        let h = op.theta_form(3, None);
        let consts: Vec<Rat> = h.iter().map(|s| s.coefficient_at(&int(0)).unwrap()).collect();
        assert_eq!(consts, op.indicial_polynomial());
    }
}
