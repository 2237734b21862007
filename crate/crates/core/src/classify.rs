//! Multiplier systems, minimal admissible exponents and the Hilbert–Poincaré
//! series of spaces of vector-valued modular forms in dimensions 1 to 5.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::angle::RationalAngle;
use crate::classical::dim_m;
use crate::error::{Error, Result};
use crate::rat::{floor, format_rat, frac, int, is_integer, rat, to_i64, Rat};
use crate::wronskian::weight_lower_bound;

/// `υ_w χ^N`: the multiplier of `η^{2w}` times the `N`-th power of the
/// character `χ` with `χ(T) = e(1/12)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierSpec {
    pub eta_weight: Rat,
    pub chi_power: u32,
}

impl MultiplierSpec {
    pub fn trivial() -> Self {
        Self {
            eta_weight: Rat::zero(),
            chi_power: 0,
        }
    }

    pub fn new(eta_weight: Rat, chi_power: u32) -> Result<Self> {
        if eta_weight.is_negative() || eta_weight >= int(12) {
            return Err(Error::Precondition(format!(
                "eta weight {} outside [0, 12)",
                format_rat(&eta_weight)
            )));
        }
        if chi_power > 11 {
            return Err(Error::Precondition(format!("chi power {chi_power} outside 0..11")));
        }
        Ok(Self {
            eta_weight,
            chi_power,
        })
    }

    fn total(&self) -> Rat {
        &self.eta_weight + int(self.chi_power as i64)
    }

    /// Cusp parameter `m ∈ [0, 12)` with `υ(T) = e(m/12)`.
    pub fn cusp_parameter(&self) -> Rat {
        let t = self.total();
        &t - int(12) * Rat::from_integer(floor(&(&t / int(12))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierValues {
    pub angle_t: RationalAngle,
    pub angle_s2: RationalAngle,
    pub cusp_parameter: Rat,
}

/// Values at `T` and at `S^2 = -I`, with `υ_w(-I) = e(-w/2)`, the branch for
/// which `η^{2w}` is invariant under slashing with `-I`.
pub fn multiplier_values(m: &MultiplierSpec) -> MultiplierValues {
    let t = m.total();
    MultiplierValues {
        angle_t: RationalAngle::new(&(&t / int(12))),
        angle_s2: RationalAngle::new(&(-&t / int(2))),
        cusp_parameter: m.cusp_parameter(),
    }
}

/// `λ_j = frac(r_j + m/12)` and `l_j = λ_j - r_j - m/12 ∈ {-1, 0}`.
pub fn minimal_admissible_set(r: &[Rat], m: &Rat) -> (Vec<Rat>, Vec<i64>) {
    let shift = m / int(12);
    r.iter()
        .map(|rj| {
            let x = rj + &shift;
            let lam = frac(&x);
            let l = to_i64(&(&lam - &x)).expect("integral offset");
            (lam, l)
        })
        .unzip()
}

/// Hilbert–Poincaré series `t^{k0} Σ t^{2 k_i} / ((1 - t^4)(1 - t^6))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpSeries {
    pub k0: Rat,
    /// Generator weight offsets `k_i`, sorted; generator `i` has weight
    /// `k0 + 2 k_i`.
    pub offsets: Vec<u32>,
}

impl HpSeries {
    pub fn new(k0: Rat, mut offsets: Vec<u32>) -> Self {
        offsets.sort_unstable();
        Self { k0, offsets }
    }

    /// Coefficients of `1, t^2, t^4, ...` in the numerator.
    pub fn numerator(&self) -> Vec<u32> {
        let top = self.offsets.iter().copied().max().unwrap_or(0) as usize;
        let mut c = vec![0; top + 1];
        for &o in &self.offsets {
            c[o as usize] += 1;
        }
        c
    }

    /// Numerator rendered as e.g. `1+2t^2+t^4`.
    pub fn numerator_string(&self) -> String {
        numerator_string(&self.numerator())
    }

    pub fn rank(&self) -> usize {
        self.offsets.len()
    }

    pub fn generator_weights(&self) -> Vec<Rat> {
        self.offsets
            .iter()
            .map(|&o| &self.k0 + int(2 * o as i64))
            .collect()
    }
}

fn numerator_string(c: &[u32]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(i, &n)| match (i, n) {
            (0, n) => n.to_string(),
            (i, 1) => format!("t^{}", 2 * i),
            (i, n) => format!("{n}t^{}", 2 * i),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for HpSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t^({})({})/((1-t^4)(1-t^6))",
            format_rat(&self.k0),
            self.numerator_string()
        )
    }
}

/// `dim H(k)`: the coefficient of `t^k` in the series.
pub fn hp_dimension(h: &HpSeries, k: &Rat) -> usize {
    let gap = k - &h.k0;
    let Some(g) = to_i64(&gap) else {
        return 0;
    };
    if g < 0 || g % 2 != 0 {
        return 0;
    }
    h.offsets
        .iter()
        .map(|&o| dim_m(g - 2 * o as i64))
        .sum()
}

/// Input data for the classifier: `ρ(T) = diag(e(r_j))`, `ρ(-I) = ε`, and a
/// multiplier system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepInput {
    pub r: Vec<Rat>,
    pub epsilon: i8,
    pub multiplier: MultiplierSpec,
    pub t_determined_asserted: bool,
}

impl RepInput {
    pub fn new(r: Vec<Rat>, epsilon: i8, multiplier: MultiplierSpec) -> Self {
        Self {
            r,
            epsilon,
            multiplier,
            t_determined_asserted: false,
        }
    }

    pub fn asserting_t_determined(mut self) -> Self {
        self.t_determined_asserted = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    pub fn r_sum(&self) -> Rat {
        self.r.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if !(1..=5).contains(&d) {
            return Err(Error::Precondition(format!("dimension {d} outside 1..5")));
        }
        if self.epsilon != 1 && self.epsilon != -1 {
            return Err(Error::Precondition("epsilon must be +1 or -1".into()));
        }
        for (i, x) in self.r.iter().enumerate() {
            if x.is_negative() || *x >= Rat::one() {
                return Err(Error::Precondition(format!(
                    "exponent {} outside [0, 1)",
                    format_rat(x)
                )));
            }
            if self.r[..i].contains(x) {
                return Err(Error::Precondition(format!(
                    "exponent {} repeated",
                    format_rat(x)
                )));
            }
        }
        let r = self.r_sum();
        match d {
            4 if !is_integer(&(int(3) * &r)) => Err(Error::Precondition(format!(
                "3 r = {} is not an integer",
                format_rat(&(int(3) * &r))
            ))),
            5 if !is_integer(&(int(12) * &r)) => Err(Error::Precondition(format!(
                "12 r = {} is not an integer",
                format_rat(&(int(12) * &r))
            ))),
            _ => Ok(()),
        }
    }

    /// True when no proper nonempty sub-multiset of the `r_j` sums into
    /// `(1/12) Z`, which is enough for T-determinedness.
    pub fn t_determined_by_eigenvalues(&self) -> bool {
        let d = self.dim();
        (1u32..(1 << d) - 1).all(|mask| {
            let s: Rat = (0..d)
                .filter(|j| mask & (1 << j) != 0)
                .map(|j| &self.r[j])
                .sum();
            !is_integer(&(int(12) * s))
        })
    }

    pub fn t_determined(&self) -> bool {
        self.t_determined_asserted || self.t_determined_by_eigenvalues()
    }

    pub fn admissible(&self) -> (Vec<Rat>, Vec<i64>) {
        minimal_admissible_set(&self.r, &self.multiplier.cusp_parameter())
    }

    pub fn lambda(&self) -> Rat {
        self.admissible().0.iter().sum()
    }
}

/// One-dimensional case `ρ = χ^N`: `k0 = 12 λ_1`.
pub fn classify_dim1(n: u32, m: &MultiplierSpec) -> Result<HpSeries> {
    let rep = RepInput::new(vec![frac(&rat(n as i64, 12))], 1, m.clone());
    classify_rep(&rep)
}

pub fn classify_dim2(rep: &RepInput) -> Result<HpSeries> {
    let diff = frac(&(&rep.r[0] - &rep.r[1]));
    if diff == rat(1, 6) || diff == rat(5, 6) {
        return Err(Error::ReducibilityBoundary);
    }
    Ok(HpSeries::new(int(6) * rep.lambda() - int(1), vec![0, 1]))
}

pub fn classify_dim3(rep: &RepInput) -> Result<HpSeries> {
    Ok(HpSeries::new(int(4) * rep.lambda() - int(2), vec![0, 1, 2]))
}

/// Parity of `N` in `ρ(S^2) = υ(S^2)^{-1} (-1)^{-(3λ+N)}`, reading
/// `(-1)^x` as `e(x/2)`. Returns true for odd `N`.
pub fn dim4_parity_is_odd(rep: &RepInput) -> Result<bool> {
    let mv = multiplier_values(&rep.multiplier);
    let eps = if rep.epsilon == 1 { Rat::zero() } else { rat(1, 2) };
    // ε = e(-angle_S2) e(-(3λ+N)/2)  =>  N ≡ -2 angle_S2 - 3λ - 2 eps (mod 2)
    let x = -int(2) * mv.angle_s2.value() - int(3) * rep.lambda() - int(2) * eps;
    let n = to_i64(&x).ok_or(Error::ParityUnsolvable)?;
    Ok(n.rem_euclid(2) == 1)
}

pub fn classify_dim4(rep: &RepInput) -> Result<HpSeries> {
    if !rep.t_determined() {
        return Err(Error::NotTDetermined(4));
    }
    let lam3 = int(3) * rep.lambda();
    if dim4_parity_is_odd(rep)? {
        Ok(HpSeries::new(lam3 - int(3), vec![0, 1, 2, 3]))
    } else {
        Ok(HpSeries::new(lam3 - int(2), vec![0, 1, 1, 2]))
    }
}

/// `n_N` for `N = 0..4`.
pub const DIM5_SHIFT: [i64; 5] = [0, 0, -2, -3, -4];

/// Generator offsets realizing the numerators `P_0, ..., P_4`.
pub const DIM5_OFFSETS: [[u32; 5]; 5] = [
    [0, 1, 2, 3, 4],
    [0, 0, 1, 1, 2],
    [0, 1, 2, 2, 3],
    [0, 1, 1, 2, 3],
    [0, 1, 1, 2, 2],
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim5Data {
    pub lambda: Vec<Rat>,
    pub l: Vec<i64>,
    pub n: usize,
    pub k_n: Rat,
    pub n_n: i64,
}

impl Dim5Data {
    pub fn minimal_weight(&self) -> Rat {
        &self.k_n + int(2 * self.n_n)
    }
}

/// The unique `N ∈ {0..4}` with `12(r + l + N) ≡ 0 (mod 5)`, and
/// `k_N = 12(λ+N)/5 - 4`.
pub fn dim5_data(rep: &RepInput) -> Result<Dim5Data> {
    let (lambda, l) = rep.admissible();
    let rl = rep.r_sum() + int(l.iter().sum());
    let n = (0..5)
        .find(|&n| {
            to_i64(&(int(12) * (&rl + int(n as i64)))).is_some_and(|v| v.rem_euclid(5) == 0)
        })
        .ok_or_else(|| Error::Precondition("12 r is not an integer".into()))?;
    let lam: Rat = lambda.iter().sum();
    let k_n = int(12) * (lam + int(n as i64)) / int(5) - int(4);
    Ok(Dim5Data {
        lambda,
        l,
        n,
        k_n,
        n_n: DIM5_SHIFT[n],
    })
}

pub fn classify_dim5(rep: &RepInput) -> Result<HpSeries> {
    if !rep.t_determined() {
        return Err(Error::NotTDetermined(5));
    }
    let data = dim5_data(rep)?;
    Ok(HpSeries::new(data.minimal_weight(), DIM5_OFFSETS[data.n].to_vec()))
}

/// Dispatches on the dimension after validating the input.
pub fn classify_rep(rep: &RepInput) -> Result<HpSeries> {
    rep.validate()?;
    match rep.dim() {
        1 => Ok(HpSeries::new(int(12) * rep.lambda(), vec![0])),
        2 => classify_dim2(rep),
        3 => classify_dim3(rep),
        4 => classify_dim4(rep),
        5 => classify_dim5(rep),
        d => Err(Error::Precondition(format!("dimension {d} outside 1..5"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Resolved(HpSeries),
    /// Dimension 4 or 5 without the T-determined assumption: only the
    /// possible numerators and the universal lower bound are known.
    Unresolved {
        dim: usize,
        candidate_numerators: Vec<String>,
        k0_lower_bound: Rat,
    },
}

/// Like [`classify_rep`] but reports the undecided dimension 4/5 case
/// instead of failing.
pub fn classify(rep: &RepInput) -> Result<Classification> {
    match classify_rep(rep) {
        Ok(h) => Ok(Classification::Resolved(h)),
        Err(Error::NotTDetermined(d)) => {
            let offsets: Vec<Vec<u32>> = if d == 4 {
                vec![vec![0, 1, 2, 3], vec![0, 1, 1, 2]]
            } else {
                DIM5_OFFSETS.iter().map(|o| o.to_vec()).collect()
            };
            Ok(Classification::Unresolved {
                dim: d,
                candidate_numerators: offsets
                    .into_iter()
                    .map(|o| HpSeries::new(Rat::zero(), o).numerator_string())
                    .collect(),
                k0_lower_bound: weight_lower_bound(d, &rep.lambda(), 0),
            })
        }
        Err(e) => Err(e),
    }
}
