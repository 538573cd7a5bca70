//! The `wittlab` command line.
//!
//! Exit codes: 0 for a computed value or a claim that holds, 1 for a claim
//! that is false, 2 for usage and input errors, 3 for internal failures.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::clifford::{
    inverse, is_integral_point, is_spin, parse_element, pi, right_mult_matrix, symmetrize,
    CliffordAlgebra, CliffordElem,
};
use crate::error::{Error, Result};
use crate::l2betti::{csp_hypotheses, describe_factor, kunneth_support, local_l2_support, CspConclusion};
use crate::padic::{primes_in_progression, Place, DEFAULT_PRECISION};
use crate::qform::{
    hasse_invariant, hilbert_symbol, is_isotropic_local, is_isotropic_over_q, parse_rational,
    witt_decompose, DiagonalForm,
};
use crate::repro::{run_theorem_pipeline, PipelineConfig, DEFAULT_SAMPLED_PRIMES_BOUND};
use crate::zp_isometry::{negation_isometric_zp, verify_certificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wittlab", version, about = "Quadratic forms, spin groups and l2-Betti supports over Q")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// p-adic digits carried by certificates.
    #[arg(long, global = true, env = "WITTLAB_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Primes up to this bound are certified one by one.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLED_PRIMES_BOUND)]
    pub bound: u64,
    /// Accept residue characteristic below 89 with a warning.
    #[arg(long, global = true)]
    pub assume_small_residue_ok: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert symbol (a, b) at a place.
    #[command(allow_negative_numbers = true)]
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_parser = parse_place)]
        place: Place,
    },
    /// Hasse invariant of a form at a place.
    Hasse {
        form: String,
        #[arg(long, value_parser = parse_place)]
        place: Place,
    },
    /// Witt index of a form at a place.
    Witt {
        form: String,
        #[arg(long, value_parser = parse_place)]
        place: Place,
    },
    /// Isotropy at a place, or over Q when no place is given (rank >= 5).
    Isotropy {
        form: String,
        #[arg(long, value_parser = parse_place)]
        place: Option<Place>,
    },
    /// Z_p-isometry between <1,1,1,P> and its negative, with a certificate.
    IsometryZp {
        form: String,
        #[arg(long, alias = "place")]
        prime: u64,
    },
    /// Clifford algebra arithmetic over a diagonal form.
    Clifford {
        form: String,
        #[arg(long, value_enum, default_value_t = CliffordOp::Mul)]
        op: CliffordOp,
        /// Elements such as `1 + 2*e12`, or generator indices for `symmetrize`.
        /// Write a leading negative sign after `--` or a space, e.g. `" -e1"`.
        operands: Vec<String>,
    },
    /// Spin-group membership, the covering map and S-integrality.
    SpinCheck {
        form: String,
        element: String,
        /// Primes allowed in denominators for the integral-point test.
        #[arg(long, value_delimiter = ',')]
        inverted_primes: Option<Vec<u64>>,
    },
    /// Congruence-subgroup hypotheses for a place set containing inf.
    Csp {
        form: String,
        #[arg(long, value_delimiter = ',', value_parser = parse_place, required = true)]
        places: Vec<Place>,
    },
    /// l2-Betti support of a lattice in the product over the given places.
    Support {
        form: String,
        #[arg(long, value_delimiter = ',', value_parser = parse_place, required = true)]
        places: Vec<Place>,
    },
    /// Primes in 17 + 24N at or above a minimum.
    Primes {
        #[arg(long, default_value_t = 2)]
        count: usize,
        #[arg(long, default_value_t = 89)]
        min: u64,
    },
    /// The full pipeline for k primes, printed as a JSON report.
    Repro {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliffordOp {
    /// Product of all operands, left to right.
    Mul,
    Star,
    Parts,
    Inverse,
    /// Matrix of right multiplication by the single operand.
    Matrix,
    /// Symmetrization of the listed 1-based generator indices.
    Symmetrize,
}

fn parse_place(s: &str) -> std::result::Result<Place, String> {
    s.parse::<Place>().map_err(|e| e.to_string())
}

fn parse_form(s: &str) -> Result<DiagonalForm> {
    s.parse()
}

fn parse_scalar(s: &str) -> Result<BigRational> {
    parse_rational(s.trim()).ok_or_else(|| Error::Parse {
        position: 0,
        message: format!("`{s}` is not a rational number"),
    })
}

struct Output {
    exit: i32,
    text: String,
    json: Value,
    /// `text` already is the JSON rendering.
    raw_json: bool,
}

impl Output {
    fn value(text: impl Into<String>, json: Value) -> Self {
        Self { exit: EXIT_OK, text: text.into(), json, raw_json: false }
    }

    fn claim(holds: bool, text: impl Into<String>, json: Value) -> Self {
        Self {
            exit: if holds { EXIT_OK } else { EXIT_FALSE },
            text: text.into(),
            json,
            raw_json: false,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_)
        | Error::Parse { .. }
        | Error::Validation { .. }
        | Error::UnsupportedRank { .. }
        | Error::UnsupportedCase(_)
        | Error::NotSpin(_)
        | Error::NotASquare { .. } => EXIT_USAGE,
        Error::PipelineStep { step, .. } if step == "config" => EXIT_USAGE,
        Error::PipelineStep { .. } => EXIT_FALSE,
        Error::SearchExhausted { .. } | Error::InsufficientPrecision { .. } => EXIT_INTERNAL,
    }
}

fn to_integers(form: &DiagonalForm) -> Result<Vec<BigInt>> {
    form.coefficients()
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::invalid(format!("coefficient {c} is not an integer")))
            }
        })
        .collect()
}

fn execute(cmd: &Command, g: &GlobalOpts, err: &mut dyn Write) -> Result<Output> {
    match cmd {
        Command::Hilbert { a, b, place } => {
            let s = hilbert_symbol(&parse_scalar(a)?, &parse_scalar(b)?, *place)?;
            Ok(Output::value(s.to_string(), json!({"a": a, "b": b, "place": place, "symbol": s})))
        }
        Command::Hasse { form, place } => {
            let f = parse_form(form)?;
            let h = hasse_invariant(&f, *place)?;
            Ok(Output::value(h.to_string(), json!({"form": f, "place": place, "hasse": h})))
        }
        Command::Witt { form, place } => {
            let f = parse_form(form)?;
            let d = witt_decompose(&f, *place)?;
            Ok(Output::value(d.witt_index.to_string(), json!({"form": f, "decomposition": d})))
        }
        Command::Isotropy { form, place } => {
            let f = parse_form(form)?;
            let (iso, scope) = match place {
                Some(Place::Real) => {
                    let (pos, neg) = crate::qform::real_signature(&f);
                    (pos > 0 && neg > 0, "inf".to_string())
                }
                Some(Place::Prime(p)) => (is_isotropic_local(&f, *p)?, p.to_string()),
                None => (is_isotropic_over_q(&f)?, "Q".to_string()),
            };
            Ok(Output::claim(
                iso,
                if iso { "isotropic" } else { "anisotropic" },
                json!({"form": f, "over": scope, "isotropic": iso}),
            ))
        }
        Command::IsometryZp { form, prime } => {
            let f = parse_form(form)?;
            let coeffs = to_integers(&f)?;
            let (iso, cert) = negation_isometric_zp(&coeffs, *prime, g.precision)?;
            let verified = verify_certificate(&cert, &coeffs, *prime, g.precision)?;
            let holds = iso && verified;
            Ok(Output::claim(
                holds,
                format!("{holds} ({}, verified: {verified})", cert.method()),
                json!({"form": f, "prime": prime, "isometric": iso, "verified": verified, "certificate": cert}),
            ))
        }
        Command::Clifford { form, op, operands } => clifford(&parse_form(form)?, *op, operands),
        Command::SpinCheck {
            form,
            element,
            inverted_primes,
        } => {
            let f = parse_form(form)?;
            let alg = CliffordAlgebra::from_form(&f)?;
            let g_elem = parse_element(&alg, element)?;
            let w = is_spin(&g_elem);
            let mut text = vec![
                format!("even: {}", w.even),
                format!("invertible: {}", w.invertible),
                format!("preserves V: {}", w.preserves_v),
                format!("star-unital: {}", w.star_unital),
            ];
            let mut data = json!({"form": f, "witness": w, "spin": w.passes()});
            let mut holds = w.passes();
            if holds {
                let m = pi(&g_elem)?;
                text.push(format!("pi(g) =\n{}", m.to_string().trim_end()));
                data["pi"] = json!(m);
                if let Some(ps) = inverted_primes {
                    let integral = is_integral_point(&g_elem, ps)?;
                    text.push(format!("integral point: {integral}"));
                    data["integral_point"] = json!(integral);
                    holds = integral;
                }
            }
            Ok(Output::claim(holds, text.join("\n"), data))
        }
        Command::Csp { form, places } => {
            let f = parse_form(form)?;
            let r = csp_hypotheses(&f, places)?;
            let mut text = format!("{} (Witt sum {})", r.conclusion, r.witt_sum);
            for fail in &r.failed {
                text.push_str(&format!("\nfailed {fail}"));
            }
            Ok(Output::claim(r.conclusion == CspConclusion::Holds, text, json!(r)))
        }
        Command::Support { form, places } => {
            let f = parse_form(form)?;
            let mut locals = Vec::new();
            for &place in places {
                let d = describe_factor(&f, place)?;
                let s = local_l2_support(&d, g.assume_small_residue_ok)?;
                if let Some(w) = &s.warning {
                    let _ = writeln!(err, "warning: {w}");
                }
                locals.push(json!({"descriptor": d, "support": s}));
            }
            let sets: Vec<_> = locals
                .iter()
                .map(|l| serde_json::from_value(l["support"]["support"].clone()).expect("support set"))
                .collect();
            let total = kunneth_support(&sets);
            Ok(Output::value(total.to_string(), json!({"form": f, "factors": locals, "support": total})))
        }
        Command::Primes { count, min } => {
            let ps: Vec<u64> = primes_in_progression(*count, *min)?.into_iter().map(|p| p.value).collect();
            let text: Vec<String> = ps.iter().map(u64::to_string).collect();
            Ok(Output::value(text.join(" "), json!({"primes": ps})))
        }
        Command::Repro { k, primes } => {
            let config = PipelineConfig {
                k: *k,
                primes: primes.clone(),
                sampled_primes_bound: g.bound,
                precision: g.precision,
                assume_small_residue_ok: g.assume_small_residue_ok,
            };
            let report = run_theorem_pipeline(&config)?;
            for w in &report.factors.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            // Rendered from the struct so that fields keep their declared order.
            let text = report.to_json();
            Ok(Output {
                exit: EXIT_OK,
                json: Value::String(text.clone()),
                text,
                raw_json: true,
            })
        }
    }
}

fn clifford(form: &DiagonalForm, op: CliffordOp, operands: &[String]) -> Result<Output> {
    let alg = CliffordAlgebra::from_form(form)?;
    let elems = || -> Result<Vec<CliffordElem<BigRational>>> {
        operands.iter().map(|s| parse_element(&alg, s)).collect()
    };
    let single = || -> Result<CliffordElem<BigRational>> {
        match elems()?.as_slice() {
            [x] => Ok(x.clone()),
            _ => Err(Error::invalid("this operation takes exactly one element")),
        }
    };
    let elem_out = |x: CliffordElem<BigRational>| {
        Output::value(x.to_string(), json!({"form": form, "text": x.to_string(), "terms": x}))
    };
    match op {
        CliffordOp::Mul => {
            let xs = elems()?;
            let mut acc = CliffordElem::one(&alg);
            for x in &xs {
                acc = acc.mul(x)?;
            }
            Ok(elem_out(acc))
        }
        CliffordOp::Star => Ok(elem_out(single()?.star())),
        CliffordOp::Parts => {
            let p = single()?.graded_parts();
            Ok(Output::value(
                format!("even: {}\nodd: {}", p.even, p.odd),
                json!({"form": form, "even": p.even, "odd": p.odd}),
            ))
        }
        CliffordOp::Inverse => {
            let x = single()?;
            match inverse(&x) {
                Some(y) => Ok(elem_out(y)),
                None => Ok(Output::claim(false, "not invertible", json!({"form": form, "invertible": false}))),
            }
        }
        CliffordOp::Matrix => {
            let m = right_mult_matrix(&single()?);
            Ok(Output::value(m.to_string().trim_end().to_string(), json!({"form": form, "matrix": m})))
        }
        CliffordOp::Symmetrize => {
            let idx = operands
                .iter()
                .map(|s| match s.trim().parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(Error::invalid(format!("`{s}` is not a generator index"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(elem_out(symmetrize(&alg, &idx)?))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli.command, &cli.global, err) {
        Ok(o) => {
            let body = if cli.global.json && !o.raw_json {
                serde_json::to_string_pretty(&o.json).expect("json")
            } else {
                o.text
            };
            let _ = writeln!(out, "{body}");
            o.exit
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.global.json {
                let _ = writeln!(err, "{}", json!({"error": e.to_string(), "exit": code}));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            code
        }
    }
}
