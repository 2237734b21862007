//! Command-line front end. Every command builds a JSON document; `--format
//! text` renders the same document as indented lines.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::classical::{delta, eisenstein, eta_power};
use crate::classify::{classify, hp_dimension, Classification, HpSeries, MultiplierSpec, RepInput};
use crate::error::{Error, Result};
use crate::frobenius::{monodromy_t, solve_fundamental_system};
use crate::mmde::{unique_operator, Mmde};
use crate::modstruct::{appendix_demo, verify_structure};
use crate::qseries::QSeries;
use crate::rat::{format_rat, int, parse_rat, parse_rat_list, Rat};
use crate::sample::{random_roots, rng, round_trip};
use crate::serial::{
    angle_list_value, operator_to_json, rat_list_value, rat_value, series_to_json, to_text,
};
use crate::wronskian::{weight_lower_bound, wronskian_factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "vvmf", version, about = "Exact computations with vector-valued modular forms")]
pub struct Cli {
    /// Number of known terms above the leading exponent.
    #[arg(long, global = true, default_value_t = 30)]
    pub precision: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q-expansion of E<k>, Delta or eta^<p/q>.
    Forms {
        #[arg(long)]
        series: String,
    },
    /// Monic modular differential equations.
    Mmde {
        #[command(subcommand)]
        action: MmdeAction,
    },
    /// Modular Wronskian of the solution system of the operator with these roots.
    Wronskian {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        /// Multiply the system by E<k> first.
        #[arg(long)]
        times_eisenstein: Option<u32>,
    },
    /// Hilbert-Poincare series of the module of holomorphic forms.
    Classify(RepArgs),
    /// Dimensions predicted by a series with given k0 and generator offsets.
    Hp {
        #[arg(long, allow_hyphen_values = true)]
        k0: String,
        #[arg(long)]
        offsets: String,
        /// Report dimensions for k0 + 2k', k' = 0..=max.
        #[arg(long, default_value_t = 6)]
        max: u32,
    },
    /// The order-6 family L∘D + cΔ built from five roots.
    Appendix {
        #[arg(long, default_value = "2/22,5/22,8/22,19/22,21/22")]
        lambda: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,-3")]
        c: String,
    },
    /// Rebuild the module from differential equations and compare ranks with
    /// the predicted series.
    VerifyStructure(RepArgs),
    /// Seeded random root multisets through construction, solving and the
    /// Wronskian.
    RoundTrip {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 2)]
        min_order: usize,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        #[arg(long, default_value_t = 24)]
        max_denominator: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum MmdeAction {
    /// The unique Eisenstein operator with the given indicial roots.
    Construct {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
    },
    /// Frobenius solutions of that operator.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
    },
}

#[derive(Debug, Args)]
pub struct RepArgs {
    #[arg(long)]
    pub dim: usize,
    /// Exponents of ρ(T), each in [0, 1).
    #[arg(long)]
    pub r: String,
    #[arg(long, default_value = "0")]
    pub eta_weight: String,
    #[arg(long, default_value_t = 0)]
    pub chi: u32,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub epsilon: i8,
    #[arg(long)]
    pub assert_t_determined: bool,
}

impl RepArgs {
    fn rep(&self) -> Result<RepInput> {
        let r = parse_rat_list(&self.r)?;
        if r.len() != self.dim {
            return Err(Error::Precondition(format!(
                "--dim {} but {} exponents given",
                self.dim,
                r.len()
            )));
        }
        let m = MultiplierSpec::new(parse_rat(&self.eta_weight)?, self.chi)?;
        let rep = RepInput::new(r, self.epsilon, m);
        let rep = if self.assert_t_determined {
            rep.asserting_t_determined()
        } else {
            rep
        };
        rep.validate()?;
        Ok(rep)
    }
}

fn assumptions(rep: &RepInput) -> Value {
    let t = if rep.t_determined_asserted {
        "T-determined: asserted by the caller"
    } else if rep.t_determined_by_eigenvalues() {
        "T-determined: implied by the eigenvalues of rho(T)"
    } else {
        "T-determined: not established"
    };
    json!([
        "rho is irreducible with rho(T) = diag(e(r_j)) and rho(-I) = epsilon",
        "the module of holomorphic forms is free over M of rank dim rho",
        t,
    ])
}

fn hp_record(h: &HpSeries, max: u32) -> Value {
    let mut dims = Map::new();
    for kp in 0..=max {
        let w = &h.k0 + int(2 * kp as i64);
        dims.insert(format_rat(&w), json!(hp_dimension(h, &w)));
    }
    json!({
        "k0": rat_value(&h.k0),
        "offsets": h.offsets,
        "numerator": h.numerator_string(),
        "series": h.to_string(),
        "dims": dims,
    })
}

fn named_series(name: &str, precision: usize) -> Result<(Rat, QSeries)> {
    let bad = || Error::Parse(format!("unknown series {name:?}; expected E<k>, Delta or eta^<p/q>"));
    if name == "Delta" {
        return Ok((int(12), delta(precision)));
    }
    if let Some(e) = name.strip_prefix("eta^") {
        let e = parse_rat(e)?;
        return Ok((&e / int(2), eta_power(&e, precision)));
    }
    if let Some(k) = name.strip_prefix('E') {
        let k: u32 = k.parse().map_err(|_| bad())?;
        return Ok((int(k as i64), eisenstein(k, precision)?));
    }
    Err(bad())
}

fn parse_offsets(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad offset {x:?}")))
        })
        .collect()
}

fn execute(cli: &Cli) -> Result<Value> {
    let n = cli.precision;
    match &cli.command {
        Command::Forms { series } => {
            let (weight, f) = named_series(series, n)?;
            Ok(json!({
                "series": series,
                "weight": rat_value(&weight),
                "expansion": series_to_json(&f),
            }))
        }
        Command::Mmde { action: MmdeAction::Construct { roots } } => {
            let roots = parse_rat_list(roots)?;
            let op = unique_operator(&roots)?;
            let d = roots.len() as i64;
            let lambda: Rat = roots.iter().sum();
            Ok(json!({
                "roots": rat_list_value(&roots),
                "operator": operator_to_json(&op, None),
                "indicial_polynomial": rat_list_value(&op.indicial_polynomial()),
                "weight_from_roots": rat_value(&(int(12) * lambda / int(d) + int(1 - d))),
            }))
        }
        Command::Mmde { action: MmdeAction::Solve { roots } } => {
            let l = Mmde::from_roots(&parse_rat_list(roots)?)?;
            let f = solve_fundamental_system(&l, n)?;
            Ok(json!({
                "weight": rat_value(l.weight()),
                "operator": operator_to_json(l.operator(), None),
                "t_angles": angle_list_value(&monodromy_t(&f)?),
                "solutions": f.components.iter().map(series_to_json).collect::<Vec<_>>(),
            }))
        }
        Command::Wronskian { roots, times_eisenstein } => {
            let roots = parse_rat_list(roots)?;
            let l = Mmde::from_roots(&roots)?;
            let mut f = solve_fundamental_system(&l, n)?;
            if let Some(k) = times_eisenstein {
                f = f.scale_by_form(&eisenstein(*k, n)?, *k as i64);
            }
            let fac = wronskian_factorization(&f)?;
            let lambda: Rat = roots.iter().sum();
            let bound = weight_lower_bound(f.dim(), &lambda, 0);
            Ok(json!({
                "weight": rat_value(&f.weight),
                "exponent": rat_value(&fac.exponent),
                "g": series_to_json(&fac.g),
                "g_weight": rat_value(&fac.g_weight),
                "g_is_constant": fac.g_is_constant(),
                "weight_lower_bound": rat_value(&bound),
                "equality": f.weight == bound,
            }))
        }
        Command::Classify(args) => {
            let rep = args.rep()?;
            let mut doc = Map::new();
            doc.insert("assumptions".into(), assumptions(&rep));
            doc.insert("lambda".into(), rat_value(&rep.lambda()));
            match classify(&rep)? {
                Classification::Resolved(h) => {
                    doc.insert("resolved".into(), json!(true));
                    let cyclic = h.offsets.iter().enumerate().all(|(i, &o)| o as usize == i);
                    doc.insert("cyclic".into(), json!(cyclic));
                    if let Value::Object(m) = hp_record(&h, 6) {
                        doc.extend(m);
                    }
                }
                Classification::Unresolved { dim, candidate_numerators, k0_lower_bound } => {
                    doc.insert("resolved".into(), json!(false));
                    doc.insert("dim".into(), json!(dim));
                    doc.insert("candidate_numerators".into(), json!(candidate_numerators));
                    doc.insert("k0_lower_bound".into(), rat_value(&k0_lower_bound));
                }
            }
            Ok(Value::Object(doc))
        }
        Command::Hp { k0, offsets, max } => {
            let h = HpSeries::new(parse_rat(k0)?, parse_offsets(offsets)?);
            Ok(hp_record(&h, *max))
        }
        Command::Appendix { lambda, c } => {
            let report = appendix_demo(&parse_rat_list(lambda)?, &parse_rat_list(c)?, n)?;
            let cases: Vec<Value> = report
                .cases
                .iter()
                .map(|c| {
                    json!({
                        "c": rat_value(&c.c),
                        "indicial_polynomial": rat_list_value(&c.indicial_polynomial),
                        "constant_residual": series_to_json(&c.constant_residual),
                        "residual_is_zero": c.residual_is_zero,
                        "residual_is_c_delta": c.residual_is_c_delta,
                        "t_angles": angle_list_value(&c.angles),
                    })
                })
                .collect();
            Ok(json!({
                "lambda": rat_list_value(&report.lambda),
                "inner_weight": rat_value(&report.inner_weight),
                "family_weight": rat_value(&report.family_weight),
                "cases": cases,
                "polynomial_independent_of_c": report.polynomial_independent_of_c,
                "constant_solution_iff_c_zero": report.constant_solution_iff_c_zero,
                "angles_independent_of_c": report.angles_independent_of_c,
                "angles_match_roots": report.angles_match_roots,
                "passed": report.passed(),
            }))
        }
        Command::VerifyStructure(args) => {
            let rep = args.rep()?;
            let report = verify_structure(&rep, n)?;
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "weight": rat_value(&c.weight),
                        "rank": c.rank,
                        "predicted": c.predicted,
                        "ok": c.rank == c.predicted,
                    })
                })
                .collect();
            let bases: Vec<Value> = report
                .base_vectors
                .iter()
                .map(|(label, w)| json!({"label": label, "weight": rat_value(w)}))
                .collect();
            Ok(json!({
                "assumptions": assumptions(&rep),
                "structure": report.structure,
                "hp": hp_record(&report.hp, 6),
                "base_vectors": bases,
                "checks": checks,
                "generator_offsets": report.generator_offsets,
                "certified": report.certified,
            }))
        }
        Command::RoundTrip { seed, cases, min_order, max_order, max_denominator } => {
            if *min_order < 1 || min_order > max_order || *max_order > 5 || *max_denominator < 1 {
                return Err(Error::Precondition("need 1 <= min-order <= max-order <= 5 and a positive denominator bound".into()));
            }
            let mut g = rng(*seed);
            let mut failures = Vec::new();
            for i in 0..*cases {
                let order = min_order + i % (max_order - min_order + 1);
                let roots = random_roots(&mut g, order, *max_denominator);
                let t = round_trip(&roots, n)?;
                if !t.passed() {
                    failures.push(rat_list_value(&roots));
                }
            }
            Ok(json!({
                "seed": seed,
                "cases": cases,
                "failures": failures,
                "passed": failures.is_empty(),
            }))
        }
    }
}

/// Runs one invocation. Returns the exit status, the document for stdout,
/// and a message for stderr.
pub fn run<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let msg = e.render().to_string();
            return if code == 0 { (0, msg, String::new()) } else { (2, String::new(), msg) };
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            let out = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
                Format::Text => to_text(&doc),
            };
            (0, out, String::new())
        }
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
