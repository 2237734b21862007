//! Truncated generalized q-expansions with exact rational exponents and
//! coefficients.
//!
//! A [`QSeries`] stores `q^β (c_0 + c_1 q^{1/s} + ... + c_N q^{N/s})` where the
//! grid denominator `s` is 1 for every series that lives on a single coset
//! `β + Z`. A finer grid only appears after adding two series whose exponents
//! are incongruent mod Z. Everything above the *cap* `β + N/s` is unknown, and
//! every operation propagates the cap pessimistically.
//!
//! Canonical form: either the series is zero (then `β = 0`, `s = 1` and the
//! coefficients are all zero) or `c_0 ≠ 0`; the grid is the coarsest one that
//! still carries every nonzero term.

use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::{denom_u64, floor, format_rat, gcd, lcm, lcm_u64, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    base: Rat,
    step: u64,
    /// Integer numerators over the shared positive denominator `den`, with
    /// `gcd(den, nums...) = 1`.
    nums: Vec<BigInt>,
    den: BigInt,
}

fn grid_len(base: &Rat, cap: &Rat, step: u64) -> usize {
    let span = (cap - base) * Rat::from_integer(BigInt::from(step));
    floor(&span)
        .to_usize()
        .expect("grid span out of range")
        + 1
}

fn cap_to_precision(cap: &Rat) -> usize {
    let f = floor(cap);
    if f.is_negative() {
        0
    } else {
        f.to_usize().expect("precision out of range")
    }
}

/// Integer numerators over the lcm of the denominators.
fn common_denominator(xs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let l = xs.iter().fold(BigInt::one(), |acc, x| {
        if x.denom().is_one() {
            acc
        } else {
            lcm(&acc, x.denom())
        }
    });
    let nums = xs.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (nums, l)
}

/// Divides out `gcd(den, nums...)`, stopping at the first unit gcd.
fn reduce(nums: &mut [BigInt], den: &mut BigInt) {
    if den.is_one() {
        return;
    }
    let mut g = den.clone();
    for n in nums.iter() {
        if !n.is_zero() {
            g = gcd(&g, n);
            if g.is_one() {
                return;
            }
        }
    }
    if nums.iter().all(Zero::is_zero) {
        *den = BigInt::one();
        return;
    }
    for n in nums.iter_mut() {
        *n /= &g;
    }
    *den /= &g;
}

impl QSeries {
    /// Builds `q^β Σ c_n q^n` known through `q^{β+N}`. `coeffs` must hold
    /// exactly `N + 1` entries. The result is canonical.
    pub fn new(base: Rat, coeffs: Vec<Rat>, precision: usize) -> Result<Self> {
        if coeffs.len() != precision + 1 {
            return Err(Error::Precondition(format!(
                "expected {} coefficients for precision {precision}, got {}",
                precision + 1,
                coeffs.len()
            )));
        }
        Ok(Self::from_rats(base, 1, &coeffs))
    }

    /// Like [`QSeries::new`] but on the grid `β + (1/step) Z`, precision
    /// `coeffs.len() - 1` grid steps.
    pub fn with_grid(base: Rat, step: u64, coeffs: Vec<Rat>) -> Result<Self> {
        if step == 0 || coeffs.is_empty() {
            return Err(Error::Precondition(
                "grid step must be positive and at least one coefficient given".into(),
            ));
        }
        Ok(Self::from_rats(base, step, &coeffs))
    }

    pub fn zero(precision: usize) -> Self {
        Self {
            base: Rat::zero(),
            step: 1,
            nums: vec![BigInt::zero(); precision + 1],
            den: BigInt::one(),
        }
    }

    pub fn one(precision: usize) -> Self {
        Self::monomial(Rat::zero(), Rat::one(), precision)
    }

    /// `c q^e`, known through `q^{e+precision}`.
    pub fn monomial(exponent: Rat, coeff: Rat, precision: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); precision + 1];
        coeffs[0] = coeff;
        Self::from_rats(exponent, 1, &coeffs)
    }

    /// Power series `Σ c_n q^n` from integer-exponent coefficients.
    pub fn from_power_series(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "power series needs a constant term");
        Self::from_rats(Rat::zero(), 1, &coeffs)
    }

    /// `q^β Σ (nums_i / den) q^{i/step}`; `den` must be nonzero.
    pub fn from_numerators(base: Rat, step: u64, mut nums: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero() && !nums.is_empty() && step > 0);
        if den.is_negative() {
            den = -den;
            nums.iter_mut().for_each(|x| *x = -&*x);
        }
        Self::canonical(base, step, nums, den)
    }

    /// Zero known through `q^cap`. Nonnegative integer caps use the
    /// `zero(n)` layout; any other cap is kept exactly as a one-term series.
    fn zero_with_cap(cap: &Rat) -> Self {
        if cap.is_integer() && !cap.is_negative() {
            return Self::zero(cap.to_integer().to_usize().expect("precision out of range"));
        }
        Self {
            base: cap.clone(),
            step: 1,
            nums: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    fn from_rats(base: Rat, step: u64, coeffs: &[Rat]) -> Self {
        let (nums, den) = common_denominator(coeffs);
        Self::canonical(base, step, nums, den)
    }

    fn canonical(base: Rat, step: u64, mut nums: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!nums.is_empty() && step > 0 && den.is_positive());
        let Some(first) = nums.iter().position(|c| !c.is_zero()) else {
            let cap = base + Rat::new(BigInt::from(nums.len() - 1), BigInt::from(step));
            return Self::zero_with_cap(&cap);
        };
        let base = base + Rat::new(BigInt::from(first), BigInt::from(step));
        nums.drain(..first);
        let stride = nums
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(step, |g, (i, _)| g.gcd(&(i as u64)));
        let (step, mut nums) = if stride > 1 {
            (step / stride, nums.into_iter().step_by(stride as usize).collect())
        } else {
            (step, nums)
        };
        reduce(&mut nums, &mut den);
        Self {
            base,
            step,
            nums,
            den,
        }
    }

    /// Base exponent β (the exponent of `c_0`).
    pub fn base_exponent(&self) -> &Rat {
        &self.base
    }

    /// `c_0, ..., c_N` as reduced rationals.
    pub fn coefficients(&self) -> Vec<Rat> {
        (0..self.nums.len()).map(|i| self.coeff(i)).collect()
    }

    fn coeff(&self, i: usize) -> Rat {
        if self.den.is_one() {
            Rat::from_integer(self.nums[i].clone())
        } else {
            Rat::new(self.nums[i].clone(), self.den.clone())
        }
    }

    /// Number of known grid steps above the base exponent.
    pub fn precision(&self) -> usize {
        self.nums.len() - 1
    }

    /// Denominator `s` of the exponent grid `β + (1/s) Z`.
    pub fn grid_denominator(&self) -> u64 {
        self.step
    }

    /// Highest exponent whose coefficient is known.
    pub fn cap(&self) -> Rat {
        &self.base + Rat::new(BigInt::from(self.precision()), BigInt::from(self.step))
    }

    pub fn is_zero(&self) -> bool {
        self.nums[0].is_zero()
    }

    pub fn leading_exponent(&self) -> Option<&Rat> {
        (!self.is_zero()).then_some(&self.base)
    }

    pub fn leading_coefficient(&self) -> Option<Rat> {
        (!self.is_zero()).then(|| self.coeff(0))
    }

    /// True when every coefficient after the leading one vanishes.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.nums[1..].iter().all(Zero::is_zero)
    }

    /// Lower bound on the order of vanishing: the leading exponent, or the
    /// cap for a zero series.
    fn valuation_bound(&self) -> Rat {
        if self.is_zero() {
            self.cap()
        } else {
            self.base.clone()
        }
    }

    /// Number of integer steps needed to cover the known range; the precision
    /// at which integer-exponent multipliers (E_k, Δ) must be expanded.
    pub fn integer_span(&self) -> usize {
        self.precision().div_ceil(self.step as usize)
    }

    /// Coefficient of `q^e`; `None` when `e` lies above the cap.
    pub fn coefficient_at(&self, e: &Rat) -> Option<Rat> {
        if *e > self.cap() {
            return None;
        }
        if self.is_zero() || *e < self.base {
            return Some(Rat::zero());
        }
        let idx = (e - &self.base) * Rat::from_integer(BigInt::from(self.step));
        if !idx.is_integer() {
            return Some(Rat::zero());
        }
        let i = idx.to_integer().to_usize().expect("index out of range");
        Some(self.coeff(i))
    }

    /// Coefficients at exponents `0, 1, ..., len - 1`; requires an integral
    /// exponent grid and a cap of at least `len - 1`.
    pub fn power_series_coefficients(&self, len: usize) -> Result<Vec<Rat>> {
        (0..len)
            .map(|n| {
                self.coefficient_at(&Rat::from_integer(BigInt::from(n)))
                    .ok_or_else(|| {
                        Error::InsufficientPrecision(format!(
                            "coefficient of q^{n} requested beyond cap {}",
                            format_rat(&self.cap())
                        ))
                    })
            })
            .collect()
    }

    /// Numerators at `base + i/step` for `i < len`, zero where this series
    /// has no term. `base` must not exceed this series' base and must sit on a
    /// grid refining it.
    fn spread(&self, base: &Rat, step: u64, len: usize) -> Cow<'_, [BigInt]> {
        if self.is_zero() {
            return Cow::Owned(vec![BigInt::zero(); len]);
        }
        if *base == self.base && step == self.step {
            let n = len.min(self.nums.len());
            return Cow::Borrowed(&self.nums[..n]);
        }
        let offset = (&self.base - base) * Rat::from_integer(BigInt::from(step));
        debug_assert!(offset.is_integer() && !offset.is_negative());
        let offset = offset.to_integer().to_usize().expect("offset out of range");
        let stride = (step / self.step) as usize;
        let mut out = vec![BigInt::zero(); len];
        for (n, c) in self.nums.iter().enumerate() {
            let i = offset + n * stride;
            if i >= len {
                break;
            }
            out[i] = c.clone();
        }
        Cow::Owned(out)
    }

    /// Drops everything above `cap`.
    pub fn truncate_to_cap(&self, cap: &Rat) -> Self {
        if *cap >= self.cap() {
            return self.clone();
        }
        if self.is_zero() || *cap < self.base {
            return Self::zero_with_cap(cap);
        }
        let len = grid_len(&self.base, cap, self.step);
        Self::canonical(self.base.clone(), self.step, self.nums[..len].to_vec(), self.den.clone())
    }

    /// Lowers the precision to at most `n` grid steps.
    pub fn truncate(&self, n: usize) -> Self {
        if n >= self.precision() {
            return self.clone();
        }
        Self::canonical(self.base.clone(), self.step, self.nums[..=n].to_vec(), self.den.clone())
    }

    pub fn neg(&self) -> Self {
        Self {
            base: self.base.clone(),
            step: self.step,
            nums: self.nums.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero_with_cap(&self.cap());
        }
        let mut den = &self.den * c.denom();
        let mut nums: Vec<BigInt> = self.nums.iter().map(|x| x * c.numer()).collect();
        if den.is_negative() {
            den = -den;
            nums.iter_mut().for_each(|x| *x = -&*x);
        }
        reduce(&mut nums, &mut den);
        Self {
            base: self.base.clone(),
            step: self.step,
            nums,
            den,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cap = self.cap().min(other.cap());
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Self::zero_with_cap(&cap),
            (true, false) => other.truncate_to_cap(&cap),
            (false, true) => self.truncate_to_cap(&cap),
            (false, false) => {
                let base = self.base.clone().min(other.base.clone());
                let shift = denom_u64(&(&self.base - &other.base));
                let step = lcm_u64(lcm_u64(self.step, other.step), shift);
                let len = grid_len(&base, &cap, step);
                let a = self.spread(&base, step, len);
                let b = other.spread(&base, step, len);
                let g = gcd(&self.den, &other.den);
                let (fa, fb) = (&other.den / &g, &self.den / &g);
                let den = &self.den * &fa;
                let sum = (0..len)
                    .map(|i| {
                        let x = a.get(i).map(|x| x * &fa).unwrap_or_default();
                        let y = b.get(i).map(|y| y * &fb).unwrap_or_default();
                        x + y
                    })
                    .collect();
                Self::canonical(base, step, sum, den)
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product. The result is known up to
    /// `min(v(a) + cap(b), v(b) + cap(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let cap = (self.valuation_bound() + other.cap()).min(other.valuation_bound() + self.cap());
        if self.is_zero() || other.is_zero() {
            return Self::zero_with_cap(&cap);
        }
        let base = &self.base + &other.base;
        let step = lcm_u64(self.step, other.step);
        let len = grid_len(&base, &cap, step);
        let a = self.spread(&self.base, step, len);
        let b = other.spread(&other.base, step, len);
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().take(len - i).enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        Self::canonical(base, step, acc, &self.den * &other.den)
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.precision().max(self.integer_span()));
        let mut sq = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// `q d/dq`: `c q^e ↦ e c q^e`.
    pub fn q_derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        // e_n = (b_num * s + n * b_den) / (b_den * s)
        let s = BigInt::from(self.step);
        let bn = self.base.numer() * &s;
        let bd = self.base.denom();
        let nums = self
            .nums
            .iter()
            .enumerate()
            .map(|(n, c)| c * (&bn + BigInt::from(n) * bd))
            .collect();
        Self::canonical(self.base.clone(), self.step, nums, &self.den * bd * s)
    }

    /// Largest precision (in grid steps of the quotient) at which
    /// `self / divisor` is determined.
    pub fn quotient_precision(&self, divisor: &Self) -> Result<usize> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            let cap = self.cap() - &divisor.base;
            if cap.is_negative() {
                return Err(Error::InsufficientPrecision(
                    "zero dividend is unknown at the quotient's constant term".into(),
                ));
            }
            return Ok(cap_to_precision(&cap));
        }
        let step = lcm_u64(self.step, divisor.step);
        let s = Rat::from_integer(BigInt::from(step));
        let a = floor(&((self.cap() - &self.base) * &s));
        let b = floor(&((divisor.cap() - &divisor.base) * &s));
        Ok(a.min(b).to_usize().expect("precision out of range"))
    }

    /// `s` with `s * divisor = self` through `n` grid steps of `s`.
    pub fn divide_exact(&self, divisor: &Self, n: usize) -> Result<Self> {
        let avail = self.quotient_precision(divisor)?;
        if n > avail {
            return Err(Error::InsufficientPrecision(format!(
                "quotient requested to {n} steps, only {avail} determined"
            )));
        }
        if self.is_zero() {
            return Ok(Self::zero(n));
        }
        let base = &self.base - &divisor.base;
        let step = lcm_u64(self.step, divisor.step);
        let a = self.spread(&self.base, step, n + 1);
        let b = divisor.spread(&divisor.base, step, n + 1);
        // With T = A/B on integer numerators, T_i = U_i / B_0^{i+1} and
        // U_i = A_i B_0^i - Σ_{j>=1} B_j U_{i-j} B_0^{j-1}.
        let b0 = &b[0];
        let mut b0_pow = vec![BigInt::one()];
        for _ in 0..=n {
            let next = b0_pow.last().expect("nonempty") * b0;
            b0_pow.push(next);
        }
        let mut u: Vec<BigInt> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = a.get(i).map(|x| x * &b0_pow[i]).unwrap_or_default();
            for j in 1..=i {
                if let Some(bj) = b.get(j) {
                    if !bj.is_zero() && !u[i - j].is_zero() {
                        acc -= bj * &u[i - j] * &b0_pow[j - 1];
                    }
                }
            }
            u.push(acc);
        }
        // s_i = (den_b / den_a) U_i B_0^{n-i} / B_0^{n+1}
        let mut den = &self.den * &b0_pow[n + 1];
        let mut nums: Vec<BigInt> = u
            .iter()
            .enumerate()
            .map(|(i, x)| x * &b0_pow[n - i] * &divisor.den)
            .collect();
        if den.is_negative() {
            den = -den;
            nums.iter_mut().for_each(|x| *x = -&*x);
        }
        Ok(Self::canonical(base, step, nums, den))
    }

    /// Division at the largest available precision.
    pub fn quotient(&self, divisor: &Self) -> Result<Self> {
        let n = self.quotient_precision(divisor)?;
        self.divide_exact(divisor, n)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: Self) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: Self) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: Self) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = Rat::from_integer(BigInt::from(self.step));
        let mut first = true;
        for (n, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.base + Rat::from_integer(BigInt::from(n)) / &s;
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = !mag.is_one() || e.is_zero();
            if show_coeff {
                write!(f, "{}", format_rat(&mag))?;
            }
            if !e.is_zero() {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^({})", format_rat(&e))?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        let next = self.cap() + Rat::new(BigInt::one(), BigInt::from(self.step));
        write!(f, " + O(q^({}))", format_rat(&next))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn make_series_identity_case() {
        let s = QSeries::new(int(0), ints(&[1]), 0).unwrap();
        assert_eq!(s, QSeries::one(0));
        assert_eq!(s.precision(), 0);
    }

    #[test]
    fn make_series_absorbs_leading_zeros() {
        let s = QSeries::new(rat(1, 12), ints(&[0, 3]), 1).unwrap();
        assert_eq!(s.base_exponent(), &rat(13, 12));
        assert_eq!(s.coefficients(), &ints(&[3])[..]);
        assert_eq!(s.precision(), 0);
    }

    #[test]
    fn make_series_zero_case() {
        let s = QSeries::new(int(0), ints(&[0, 0]), 1).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.base_exponent(), &int(0));
        assert_eq!(s.precision(), 1);
    }

    #[test]
    fn make_series_rejects_length_mismatch() {
        assert!(QSeries::new(int(0), ints(&[1, 2]), 3).is_err());
    }

    #[test]
    fn additive_inverse() {
        let one = QSeries::one(0);
        assert!(one.add(&one.neg()).is_zero());
    }

    #[test]
    fn add_on_shared_coset() {
        let a = QSeries::new(rat(1, 2), ints(&[1, 1]), 1).unwrap();
        let b = QSeries::new(rat(1, 2), ints(&[2, 1]), 1).unwrap();
        let c = QSeries::new(rat(1, 2), ints(&[3, 2]), 1).unwrap();
        assert_eq!(&a + &b, c);
    }

    #[test]
    fn add_keeps_pessimistic_cap() {
        let a = QSeries::new(int(0), ints(&[1, 2, 3, 4]), 3).unwrap();
        let b = QSeries::new(int(1), ints(&[5]), 0).unwrap();
        let s = &a + &b;
        assert_eq!(s.cap(), int(1));
        assert_eq!(s.coefficients(), &ints(&[1, 7])[..]);
    }

    #[test]
    fn add_across_incongruent_grids_merges() {
        let a = QSeries::new(int(0), ints(&[1, 1, 1]), 2).unwrap();
        let b = QSeries::new(rat(1, 2), ints(&[1, 1]), 1).unwrap();
        let s = &a + &b;
        assert_eq!(s.grid_denominator(), 2);
        assert_eq!(s.base_exponent(), &int(0));
        // exponents 0, 1/2, 1, 3/2 known; cap = min(2, 3/2)
        assert_eq!(s.cap(), rat(3, 2));
        assert_eq!(s.coefficients(), &ints(&[1, 1, 1, 1])[..]);
        // removing the half-integral part collapses the grid again
        let back = &s - &b;
        assert_eq!(back.grid_denominator(), 1);
        assert_eq!(back.coefficients(), &ints(&[1, 1])[..]);
    }

    #[test]
    fn mul_identity_and_exponent_addition() {
        let s = QSeries::new(rat(1, 3), ints(&[2, -1, 5]), 2).unwrap();
        assert_eq!(&QSeries::one(5) * &s, s);
        let q24 = QSeries::monomial(rat(1, 24), int(1), 3);
        let sq = &q24 * &q24;
        assert_eq!(sq, QSeries::monomial(rat(1, 12), int(1), 3));
    }

    #[test]
    fn mul_with_zero_tracks_cap() {
        let z = QSeries::zero(4);
        let s = QSeries::new(int(2), ints(&[1, 1]), 1).unwrap();
        let p = &z * &s;
        assert!(p.is_zero());
        // zero through q^4 times q^2(...) is zero through q^6
        assert_eq!(p.precision(), 6);
    }

    #[test]
    fn divide_examples() {
        let a = QSeries::new(rat(1, 5), ints(&[1, -3, 4]), 2).unwrap();
        assert_eq!(a.divide_exact(&QSeries::one(2), 2).unwrap(), a);
        let q2 = QSeries::monomial(int(2), int(1), 4);
        let q1 = QSeries::monomial(int(1), int(1), 4);
        assert_eq!(
            q2.divide_exact(&q1, 4).unwrap(),
            QSeries::monomial(int(1), int(1), 4)
        );
        assert_eq!(q2.divide_exact(&QSeries::zero(3), 1), Err(Error::DivisionByZero));
        assert!(matches!(
            q2.divide_exact(&q1, 9),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn q_derivative_examples() {
        assert!(QSeries::one(3).q_derivative().is_zero());
        let h = QSeries::monomial(rat(1, 2), int(1), 2);
        assert_eq!(h.q_derivative(), QSeries::monomial(rat(1, 2), rat(1, 2), 2));
        let s = QSeries::new(int(1), ints(&[1, -24]), 1).unwrap();
        let d = QSeries::new(int(1), ints(&[1, -48]), 1).unwrap();
        assert_eq!(s.q_derivative(), d);
    }

    #[test]
    fn coefficient_lookup_respects_cap() {
        let s = QSeries::new(rat(1, 12), ints(&[1, 2, 3]), 2).unwrap();
        assert_eq!(s.coefficient_at(&rat(13, 12)), Some(int(2)));
        assert_eq!(s.coefficient_at(&int(0)), Some(int(0)));
        assert_eq!(s.coefficient_at(&rat(1, 2)), Some(int(0)));
        assert_eq!(s.coefficient_at(&rat(37, 12)), None);
    }

    #[test]
    fn display_is_readable() {
        let s = QSeries::new(int(1), ints(&[1, -24, 252]), 2).unwrap();
        assert_eq!(s.to_string(), "q - 24*q^(2) + 252*q^(3) + O(q^(4))");
        assert_eq!(QSeries::zero(2).to_string(), "0 + O(q^(3))");
    }

    #[test]
    fn cancellation_keeps_low_cap() {
        let f = QSeries::new(int(0), ints(&[-1]), 0).unwrap();
        let g = QSeries::new(int(-3), ints(&[-1]), 0).unwrap();
        let h = f.add(&g).sub(&g);
        assert!(h.is_zero());
        assert_eq!(h.cap(), int(-3));
        let z = QSeries::new(rat(1, 12), ints(&[0, 0]), 1).unwrap();
        assert_eq!(z.cap(), rat(13, 12));
        assert_eq!(z.to_string(), "0 + O(q^(25/12))");
    }
}
