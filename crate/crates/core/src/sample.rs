//! Seeded random inputs for round-trip checks.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::frobenius::solve_fundamental_system;
use crate::mmde::{unique_operator, Mmde};
use crate::rat::{frac, int, poly_from_roots, rat, Rat};
use crate::wronskian::wronskian_factorization;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `order` rationals in `[0, 2)` with denominators at most `max_denom`,
/// pairwise distinct mod 1.
pub fn random_roots<R: Rng>(rng: &mut R, order: usize, max_denom: i64) -> Vec<Rat> {
    assert!(max_denom >= 1 && order as i64 <= max_denom * max_denom);
    let mut out: Vec<Rat> = Vec::with_capacity(order);
    while out.len() < order {
        let d = rng.gen_range(1..=max_denom);
        let x = rat(rng.gen_range(0..2 * d), d);
        if out.iter().all(|y| !frac(&(y - &x)).is_zero()) {
            out.push(x);
        }
    }
    out
}

/// Outcome of one unique-operator round trip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub roots: Vec<Rat>,
    pub roots_recovered: bool,
    pub weight_matches: bool,
    pub residuals_vanish: bool,
    pub wronskian_equality: bool,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.roots_recovered && self.weight_matches && self.residuals_vanish && self.wronskian_equality
    }
}

/// Builds the operator for `roots`, checks its indicial roots and weight,
/// solves it to `precision` and checks residuals and the Wronskian.
pub fn round_trip(roots: &[Rat], precision: usize) -> Result<RoundTrip> {
    let n = roots.len() as i64;
    let op = unique_operator(roots)?;
    let lambda: Rat = roots.iter().sum();
    let l = Mmde::from_roots(roots)?;
    let f = solve_fundamental_system(&l, precision)?;
    let residuals_vanish = f
        .components
        .iter()
        .all(|c| {
            let r = l.apply(c);
            let need = c.leading_exponent().cloned().unwrap_or_default() + int(precision as i64);
            r.is_zero() && r.cap() >= need
        });
    let fac = wronskian_factorization(&f)?;
    Ok(RoundTrip {
        roots: roots.to_vec(),
        roots_recovered: op.indicial_polynomial() == poly_from_roots(roots),
        weight_matches: op.weight == int(12) * &lambda / int(n) + int(1 - n),
        residuals_vanish,
        wronskian_equality: fac.g_is_constant() && fac.g_weight == int(0),
    })
}
