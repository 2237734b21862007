//! Module structure over `M = Q[E4, E6]`: ranks of truncated weight spaces,
//! the Δ-divisible combination search, and the explicit generator
//! constructions in dimensions 4 and 5.

use num_traits::{One, Zero};

use crate::angle::RationalAngle;
use crate::classical::{delta, eisenstein, mspace_basis};
use crate::classify::{classify_rep, dim5_data, dim4_parity_is_odd, hp_dimension, HpSeries, RepInput};
use crate::error::{Error, Result};
use crate::frobenius::{monodromy_t, solve_fundamental_system};
use crate::linalg::{kernel, rank};
use crate::mmde::{appendix_family, unique_operator, Mmde};
use crate::modular_deriv::VvmfVector;
use crate::qseries::QSeries;
use crate::rat::{format_rat, int, to_i64, Rat};

/// `[F, DF, ..., D^{n-1} F]`.
pub fn d_iterate_generators(f: &VvmfVector, n: usize) -> Vec<VvmfVector> {
    let mut out = Vec::with_capacity(n);
    let mut cur = f.clone();
    for i in 0..n {
        if i > 0 {
            cur = cur.derivative();
        }
        out.push(cur.clone());
    }
    out
}

fn check_cosets(vectors: &[VvmfVector]) -> Result<()> {
    if let Some(first) = vectors.first() {
        if vectors.iter().any(|v| v.cosets != first.cosets) {
            return Err(Error::Precondition(
                "vectors live on different exponent cosets".into(),
            ));
        }
    }
    Ok(())
}

/// Rank over Q of `Σ_i M_{w - w_i} G_i`, reading at most `N + 1`
/// coefficients per component.
pub fn weight_space_dimension(
    generators: &[VvmfVector],
    target_weight: &Rat,
    precision: usize,
) -> Result<usize> {
    check_cosets(generators)?;
    let mut products: Vec<VvmfVector> = Vec::new();
    for g in generators {
        let Some(gap) = to_i64(&(target_weight - &g.weight)) else {
            continue;
        };
        if gap < 0 || gap % 2 != 0 {
            continue;
        }
        let span = g
            .components
            .iter()
            .map(QSeries::integer_span)
            .max()
            .unwrap_or(0);
        for b in mspace_basis(gap, span).expansions {
            products.push(g.scale_by_form(&b, gap));
        }
    }
    Ok(stacked_rank(&products, precision))
}

/// Rank of the coefficient rows of `vectors`, reading per component the
/// terms known in every vector (at most `N + 1`).
pub fn stacked_rank(vectors: &[VvmfVector], precision: usize) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let d = first.dim();
    let widths: Vec<usize> = (0..d)
        .map(|j| {
            vectors
                .iter()
                .map(|p| p.known_terms(j))
                .min()
                .unwrap_or(0)
                .min(precision + 1)
        })
        .collect();
    let rows: Vec<Vec<Rat>> = vectors
        .iter()
        .map(|p| {
            (0..d)
                .flat_map(|j| (0..widths[j]).map(move |t| (j, t)))
                .map(|(j, t)| p.coefficient(j, t).expect("within known terms"))
                .collect()
        })
        .collect();
    rank(&rows)
}

/// `Σ x_i v_i`.
pub fn linear_combination(vectors: &[VvmfVector], coeffs: &[Rat]) -> Result<VvmfVector> {
    let mut acc: Option<VvmfVector> = None;
    for (v, c) in vectors.iter().zip(coeffs) {
        let term = v.scale(c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    acc.ok_or_else(|| Error::Precondition("no vectors to combine".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub vector: VvmfVector,
    pub coefficients: Vec<Rat>,
}

/// A nonzero combination whose component `j` vanishes at the exponents
/// `coset_j + t`, `t < thresholds[j]`. The coefficient vector is the first
/// kernel basis vector, scaled so its first nonzero entry is 1. `None` when
/// the constraints only admit the trivial combination.
pub fn delta_divisible_combination(
    vectors: &[VvmfVector],
    thresholds: &[usize],
) -> Result<Option<Combination>> {
    check_cosets(vectors)?;
    let Some(first) = vectors.first() else {
        return Ok(None);
    };
    if thresholds.len() != first.dim() {
        return Err(Error::Precondition(format!(
            "{} thresholds for {} components",
            thresholds.len(),
            first.dim()
        )));
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (j, &tj) in thresholds.iter().enumerate() {
        for t in 0..tj {
            let row = vectors
                .iter()
                .map(|v| {
                    v.coefficient(j, t).ok_or_else(|| {
                        Error::InsufficientPrecision(format!(
                            "coefficient {t} of component {j} unknown"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
    }
    let ker = kernel(&rows, vectors.len());
    let Some(mut x) = ker.into_iter().next() else {
        return Ok(None);
    };
    let lead = x
        .iter()
        .find(|c| !c.is_zero())
        .cloned()
        .expect("kernel vectors are nonzero");
    for c in x.iter_mut() {
        *c /= &lead;
    }
    let vector = linear_combination(vectors, &x)?;
    Ok(Some(Combination {
        vector,
        coefficients: x,
    }))
}

/// `G / Δ`, provided every component vanishes below `coset_j + 1`.
pub fn descend_by_delta(g: &VvmfVector) -> Result<VvmfVector> {
    let span = g
        .components
        .iter()
        .map(QSeries::integer_span)
        .max()
        .unwrap_or(0);
    let d = delta(span);
    let mut comps = Vec::with_capacity(g.dim());
    for (j, c) in g.components.iter().enumerate() {
        let floor_exp = &g.cosets[j] + Rat::one();
        match c.leading_exponent() {
            Some(e) if *e < floor_exp => {
                return Err(Error::NotDeltaDivisible(format!(
                    "component {j} starts at q^{}",
                    format_rat(e)
                )))
            }
            None if c.cap() < g.cosets[j] => {
                return Err(Error::NotDeltaDivisible(format!(
                    "component {j} is not known at its leading exponent"
                )))
            }
            _ => {}
        }
        comps.push(c.quotient(&d)?);
    }
    Ok(VvmfVector::with_cosets(
        &g.weight - int(12),
        comps,
        g.cosets.clone(),
    ))
}

/// The normalized solution vector of the unique MMDE with the given roots,
/// components ordered by exponent coset.
pub fn mmde_vector(roots: &[Rat], precision: usize) -> Result<VvmfVector> {
    let l = Mmde::from_roots(roots)?;
    let f = solve_fundamental_system(&l, precision)?;
    Ok(reorder_by_cosets(&f))
}

fn reorder_by_cosets(f: &VvmfVector) -> VvmfVector {
    let mut idx: Vec<usize> = (0..f.dim()).collect();
    idx.sort_by(|&a, &b| f.cosets[a].cmp(&f.cosets[b]));
    VvmfVector::with_cosets(
        f.weight.clone(),
        idx.iter().map(|&i| f.components[i].clone()).collect(),
        idx.iter().map(|&i| f.cosets[i].clone()).collect(),
    )
}

/// `(k, i)` pairs give the vectors `E_k D^i F` (`E_0 = 1`).
fn eisenstein_span(f: &VvmfVector, terms: &[(u32, usize)]) -> Vec<VvmfVector> {
    let span = f
        .components
        .iter()
        .map(QSeries::integer_span)
        .max()
        .unwrap_or(0);
    terms
        .iter()
        .map(|&(k, i)| {
            let v = f.iterate_derivative(i);
            if k == 0 {
                v
            } else {
                v.scale_by_form(&eisenstein(k, span).expect("even weight"), k as i64)
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub label: String,
    pub source_weight: Rat,
    pub coefficients: Vec<Rat>,
    pub result: VvmfVector,
}

/// Combination of `terms` applied to `f` that is divisible by Δ, divided by Δ.
fn descend(
    label: &str,
    f: &VvmfVector,
    terms: &[(u32, usize)],
    thresholds: &[usize],
) -> Result<Descent> {
    let span = eisenstein_span(f, terms);
    let combo = delta_divisible_combination(&span, thresholds)?.ok_or_else(|| {
        Error::Internal(format!("{label}: no Δ-divisible combination exists"))
    })?;
    if combo.vector.is_zero() {
        return Err(Error::Internal(format!("{label}: combination collapsed to zero")));
    }
    let result = descend_by_delta(&combo.vector)?;
    Ok(Descent {
        label: label.into(),
        source_weight: combo.vector.weight.clone(),
        coefficients: combo.coefficients,
        result,
    })
}

/// Non-cyclic dimension 4 data: `F1` of weight `3λ` from the roots
/// `{λ1+1, λ2, λ3, λ4}`, the descended vector `G0` of weight `3λ-2`, and the
/// outcome of searching for a further descent to `3λ-4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim4Construction {
    pub f1: VvmfVector,
    pub g0: Descent,
    /// Rank of `{E10 G0, E8 D G0, E8 F1, E6 D^2 G0}` (weight `3λ+8`).
    pub top_rank: usize,
    /// A Δ-divisible vector in that span, which would give a form of weight
    /// `3λ-4`; expected to be `None`.
    pub lower: Option<Combination>,
}

pub fn construct_dim4_noncyclic(lambda: &[Rat], precision: usize) -> Result<Dim4Construction> {
    if lambda.len() != 4 {
        return Err(Error::Precondition("four exponents required".into()));
    }
    let mut roots = lambda.to_vec();
    roots.sort();
    roots[0] += Rat::one();
    let f1 = mmde_vector(&roots, precision)?;
    let ones = vec![1; 4];
    let g0 = descend("G0", &f1, &[(10, 0), (8, 1), (6, 2), (4, 3)], &ones)?;
    let g = &g0.result;
    let span = g
        .components
        .iter()
        .map(QSeries::integer_span)
        .max()
        .unwrap_or(0);
    let mut top = eisenstein_span(g, &[(10, 0), (8, 1)]);
    top.push(f1.scale_by_form(&eisenstein(8, span).expect("weight 8"), 8));
    top.extend(eisenstein_span(g, &[(6, 2)]));
    let top_rank = stacked_rank(&top, precision);
    let lower = delta_divisible_combination(&top, &ones)?;
    Ok(Dim4Construction {
        f1,
        g0,
        top_rank,
        lower,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim5Construction {
    pub case: usize,
    pub k_n: Rat,
    /// Index shifts `N_j` of the MMDE vector `F_(N_1..N_5)`.
    pub shifts: Vec<i64>,
    pub f: VvmfVector,
    pub descents: Vec<Descent>,
}

impl Dim5Construction {
    /// Vectors from which the module generators are drawn (with their
    /// derivatives): the descended vectors followed by `F`.
    pub fn base_vectors(&self) -> Vec<VvmfVector> {
        let mut v: Vec<VvmfVector> = self.descents.iter().map(|d| d.result.clone()).collect();
        v.push(self.f.clone());
        v
    }

    /// Lowest weight reached.
    pub fn minimal_weight(&self) -> Rat {
        self.base_vectors()
            .iter()
            .map(|v| v.weight.clone())
            .min()
            .expect("nonempty")
    }
}

/// Builds the MMDE vector and Δ-descents for the dimension 5 case `N`
/// determined by `(λ, k_N)`. `lambda` is the minimal admissible set.
pub fn construct_dim5(lambda: &[Rat], case: usize, k_n: &Rat, precision: usize) -> Result<Dim5Construction> {
    if lambda.len() != 5 {
        return Err(Error::Precondition("five exponents required".into()));
    }
    let mut lam = lambda.to_vec();
    lam.sort();
    let twelfth = |w: i64| (k_n - int(w)) / int(12);
    let mut shifts = vec![0i64; 5];
    let mut extra: Vec<usize> = Vec::new();
    match case {
        0 => {}
        1 => shifts[0] = 1,
        2 => {
            shifts[0] = 1;
            shifts[1] = 1;
        }
        3 => {
            let target = twelfth(6);
            let j1 = (0..5).find(|&j| lam[j] != target).expect("λ distinct");
            let j2 = (0..5).find(|&j| j != j1).expect("five indices");
            for (j, s) in shifts.iter_mut().enumerate() {
                if j != j1 && j != j2 {
                    *s = 1;
                }
            }
            extra.push(j1);
        }
        4 => {
            shifts = vec![1, 1, 1, 1, 0];
            let i1 = (0..5).find(|&j| lam[j] != twelfth(8)).expect("λ distinct");
            let i2 = (0..5)
                .find(|&j| j != i1 && lam[j] != twelfth(6))
                .expect("λ distinct");
            extra.push(i1);
            extra.push(i2);
        }
        _ => return Err(Error::Precondition(format!("case N = {case} outside 0..4"))),
    }
    let roots: Vec<Rat> = lam.iter().zip(&shifts).map(|(l, s)| l + int(*s)).collect();
    let f = mmde_vector(&roots, precision)?;
    if f.weight != *k_n {
        return Err(Error::Internal(format!(
            "MMDE weight {} differs from k_N = {}",
            format_rat(&f.weight),
            format_rat(k_n)
        )));
    }
    let ones = vec![1usize; 5];
    let with_extra = |idx: &[usize]| {
        let mut t = ones.clone();
        for &i in idx {
            t[i] = 2;
        }
        t
    };
    let d4 = [(0, 4), (4, 2), (6, 1), (8, 0)];
    let descents = match case {
        0 => Vec::new(),
        1 => vec![descend(
            "G",
            &f,
            &[(4, 4), (6, 3), (8, 2), (10, 1), (12, 0)],
            &ones,
        )?],
        2 => vec![descend("G", &f, &d4, &ones)?],
        3 => vec![
            descend("G1", &f, &[(0, 3), (4, 1), (6, 0)], &ones)?,
            descend("G2", &f, &d4, &with_extra(&extra[..1]))?,
        ],
        4 => vec![
            descend("G1", &f, &[(0, 2), (4, 0)], &ones)?,
            descend("G2", &f, &[(0, 3), (4, 1), (6, 0)], &with_extra(&extra[..1]))?,
            descend("G3", &f, &d4, &with_extra(&extra[..2]))?,
        ],
        _ => unreachable!(),
    };
    Ok(Dim5Construction {
        case,
        k_n: k_n.clone(),
        shifts,
        f,
        descents,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCheck {
    pub weight: Rat,
    pub rank: usize,
    pub predicted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub hp: HpSeries,
    pub structure: String,
    /// `(label, weight)` of each vector the candidates are derived from.
    pub base_vectors: Vec<(String, Rat)>,
    pub checks: Vec<WeightCheck>,
    /// Weight offsets at which new generators appear, from rank jumps.
    pub generator_offsets: Vec<u32>,
    pub certified: bool,
}

fn structure_candidates(bases: &[VvmfVector], max_weight: &Rat) -> Vec<VvmfVector> {
    let mut out = Vec::new();
    for b in bases {
        let mut cur = b.clone();
        while cur.weight <= *max_weight {
            out.push(cur.clone());
            cur = cur.derivative();
        }
    }
    out
}

/// Rebuilds the module from MMDE solutions and Δ-descents and compares the
/// ranks of the truncated weight spaces `k0 + 2k'`, `k' = 0..=6`, with the
/// classifier's Hilbert–Poincaré series. Since the series is an upper
/// bound, equality certifies each dimension.
pub fn verify_structure(rep: &RepInput, precision: usize) -> Result<StructureReport> {
    let hp = classify_rep(rep)?;
    let (mut lambda, _) = rep.admissible();
    lambda.sort();
    let d = rep.dim();
    let (structure, bases): (String, Vec<(String, VvmfVector)>) = match d {
        1..=3 => ("cyclic".into(), vec![("F".into(), mmde_vector(&lambda, precision)?)]),
        4 if dim4_parity_is_odd(rep)? => {
            ("cyclic".into(), vec![("F".into(), mmde_vector(&lambda, precision)?)])
        }
        4 => {
            let c = construct_dim4_noncyclic(&lambda, precision)?;
            if c.lower.is_some() {
                return Err(Error::Internal("dimension 4 descent went below 3λ-2".into()));
            }
            (
                "non-cyclic".into(),
                vec![("G0".into(), c.g0.result), ("F1".into(), c.f1)],
            )
        }
        _ => {
            let data = dim5_data(rep)?;
            let c = construct_dim5(&data.lambda, data.n, &data.k_n, precision)?;
            let mut b: Vec<(String, VvmfVector)> = c
                .descents
                .iter()
                .map(|x| (x.label.clone(), x.result.clone()))
                .collect();
            b.push(("F".into(), c.f.clone()));
            (format!("N = {}", data.n), b)
        }
    };
    let vectors: Vec<VvmfVector> = bases.iter().map(|(_, v)| v.clone()).collect();
    let top = &hp.k0 + int(12);
    let candidates = structure_candidates(&vectors, &top);
    let mut checks = Vec::new();
    for kp in 0..=6 {
        let w = &hp.k0 + int(2 * kp);
        checks.push(WeightCheck {
            rank: weight_space_dimension(&candidates, &w, precision)?,
            predicted: hp_dimension(&hp, &w),
            weight: w,
        });
    }
    let mut generator_offsets = Vec::new();
    for off in 0..d as u32 {
        let w = &hp.k0 + int(2 * off as i64);
        let lower: Vec<VvmfVector> = candidates.iter().filter(|c| c.weight < w).cloned().collect();
        let all = checks[off as usize].rank;
        let below = weight_space_dimension(&lower, &w, precision)?;
        generator_offsets.extend(std::iter::repeat_n(off, all - below));
    }
    let certified = checks.iter().all(|c| c.rank == c.predicted) && generator_offsets == hp.offsets;
    Ok(StructureReport {
        hp,
        structure,
        base_vectors: bases.into_iter().map(|(l, v)| (l, v.weight)).collect(),
        checks,
        generator_offsets,
        certified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixCase {
    pub c: Rat,
    pub indicial_polynomial: Vec<Rat>,
    pub constant_residual: QSeries,
    pub residual_is_zero: bool,
    pub residual_is_c_delta: bool,
    pub angles: Vec<RationalAngle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixReport {
    pub lambda: Vec<Rat>,
    pub inner_weight: Rat,
    pub family_weight: Rat,
    pub cases: Vec<AppendixCase>,
    pub polynomial_independent_of_c: bool,
    /// The constant function solves `L_c f = 0` exactly when `c = 0`.
    pub constant_solution_iff_c_zero: bool,
    pub angles_independent_of_c: bool,
    pub angles_match_roots: bool,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.polynomial_independent_of_c
            && self.constant_solution_iff_c_zero
            && self.angles_independent_of_c
            && self.angles_match_roots
            && self.cases.iter().all(|c| c.residual_is_c_delta)
    }
}

/// Runs the order-6 family `L_Λ ∘ D_0 + c Δ` for each `c`.
pub fn appendix_demo(lambda: &[Rat], c_values: &[Rat], precision: usize) -> Result<AppendixReport> {
    let inner = unique_operator(lambda)?;
    let one = QSeries::one(precision);
    let mut cases = Vec::new();
    let mut family_weight = Rat::zero();
    for c in c_values {
        let l = appendix_family(lambda, c)?;
        family_weight = l.weight().clone();
        let residual = l.apply(&one);
        let expected = delta(precision).scale(c);
        let residual_is_c_delta = residual == expected.truncate_to_cap(&residual.cap());
        let f = solve_fundamental_system(&l, precision)?;
        cases.push(AppendixCase {
            c: c.clone(),
            indicial_polynomial: l.indicial_polynomial(),
            residual_is_zero: residual.is_zero(),
            constant_residual: residual,
            residual_is_c_delta,
            angles: monodromy_t(&f)?,
        });
    }
    let mut expected_angles: Vec<RationalAngle> = std::iter::once(RationalAngle::new(&(&family_weight / int(12))))
        .chain(lambda.iter().map(RationalAngle::new))
        .collect();
    expected_angles.sort();
    let same = |f: &dyn Fn(&AppendixCase) -> bool| cases.iter().all(f);
    let poly0 = cases.first().map(|c| c.indicial_polynomial.clone());
    let ang0 = cases.first().map(|c| c.angles.clone());
    Ok(AppendixReport {
        lambda: lambda.to_vec(),
        inner_weight: inner.weight,
        family_weight: family_weight.clone(),
        polynomial_independent_of_c: same(&|c| Some(&c.indicial_polynomial) == poly0.as_ref()),
        constant_solution_iff_c_zero: same(&|c| c.residual_is_zero == c.c.is_zero()),
        angles_independent_of_c: same(&|c| Some(&c.angles) == ang0.as_ref()),
        angles_match_roots: same(&|c| {
            let mut a = c.angles.clone();
            a.sort();
            a == expected_angles
        }),
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn single_generator_dimension() {
        let f = mmde_vector(&[rat(1, 12), rat(5, 12)], 20).unwrap();
        assert_eq!(weight_space_dimension(std::slice::from_ref(&f), &int(2), 20).unwrap(), 1);
        // M_2 = 0: only DF contributes at weight 4
        let gens = d_iterate_generators(&f, 2);
        assert_eq!(gens[1].weight, int(4));
        assert_eq!(weight_space_dimension(&gens, &int(4), 20).unwrap(), 1);
        assert_eq!(weight_space_dimension(&[f], &int(4), 20).unwrap(), 0);
    }

    #[test]
    fn combination_trivial_cases() {
        let f = mmde_vector(&[rat(1, 12), rat(5, 12)], 10).unwrap();
        let c = delta_divisible_combination(std::slice::from_ref(&f), &[0, 0]).unwrap().unwrap();
        assert_eq!(c.vector, f);
        assert_eq!(c.coefficients, vec![int(1)]);
        let e4f = f.scale_by_form(&eisenstein(4, 10).unwrap(), 4);
        let none = delta_divisible_combination(&[f, e4f], &[3, 0]).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn descend_round_trip_and_guard() {
        let f = mmde_vector(&[rat(1, 12), rat(5, 12)], 15).unwrap();
        let g = f.scale_by_form(&delta(15), 12);
        let back = descend_by_delta(&g).unwrap();
        assert_eq!(back.weight, f.weight);
        for (a, b) in back.components.iter().zip(&f.components) {
            assert_eq!(a, &b.truncate_to_cap(&a.cap()));
        }
        assert!(matches!(descend_by_delta(&f), Err(Error::NotDeltaDivisible(_))));
    }

    #[test]
    fn cyclic_dimension_two_counts() {
        let f = mmde_vector(&[rat(1, 12), rat(5, 12)], 20).unwrap();
        let gens = d_iterate_generators(&f, 2);
        for k in 0..=6i64 {
            let dim = weight_space_dimension(&gens, &int(2 + 2 * k), 20).unwrap();
            assert_eq!(dim as i64, k / 3 + 1, "k = {k}");
        }
    }
}
