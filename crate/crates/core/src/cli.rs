//! Command-line front end. Every subcommand emits one report in JSON, CSV or
//! plain text. Numbers are exact integers or `"p/q"` strings.
//!
//! Exit codes: [`EXIT_OK`], [`EXIT_BAD_INPUT`], [`EXIT_VERIFICATION_FAILED`],
//! [`EXIT_IO`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::class_numbers::hurwitz;
use crate::coset::CosetZ3;
use crate::error::{Error, Result};
use crate::local::{mod8_obstruction, two_adic_surjective, LocalProfile};
use crate::polygonal::{ExceptionRecord, PolygonalFamily};
use crate::qseries::{format_rational, rational_string, QSeries, Rational};
use crate::spinor_m14::{
    sieve_identity_probe, verify_siegel_weil, ProbeVerdict, SieveProbeReport, SiegelWeilReport,
    SIEGEL_WEIL_BOUND,
};
use crate::witnesses::{find_witnesses, survey, SurveyReport, WitnessReport, DEFAULT_PRIME_CEILING};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_VERIFICATION_FAILED: i32 = 3;

/// Largest truncation bound accepted by the enumerating subcommands.
pub const MAX_BOUND: u64 = 400_000_000;
/// Largest `n` accepted by `represent`.
pub const MAX_REPRESENT_N: u64 = 1_000_000_000_000;
/// `2^k` used for the 2-adic surjectivity check in `local`.
pub const LOCAL_TWO_ADIC_EXPONENT: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "polyternary", version, about = "Sums of three generalized polygonal numbers")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads (default: all cores). Output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Count ordered triples with P_m(x, y, z) = n
    Represent { m: u64, n: u64 },
    /// List n <= bound not represented by P_m
    Exceptions { m: u64, bound: u64 },
    /// Theta series of the coset attached to P_m, exponents <= bound
    Theta { m: u64, bound: u64 },
    /// Check the m = 14 spinor genus identities coefficient by coefficient
    VerifySiegelWeil {
        #[arg(long, default_value_t = SIEGEL_WEIL_BOUND)]
        bound: u64,
    },
    /// Hurwitz class number H(d)
    Hurwitz { d: u64 },
    /// First `count` verified unrepresented n for m = 2 (mod 12)
    Witnesses {
        m: u64,
        count: usize,
        #[arg(long, default_value_t = DEFAULT_PRIME_CEILING)]
        prime_ceiling: u64,
    },
    /// Classify the exceptional set up to bound
    Survey { m: u64, bound: u64 },
    /// Residue images at the critical primes, and local admissibility of n
    Local { m: u64, n: Option<u64> },
    /// Compare the r_3 residual on 3 (mod 24) against two closed forms
    ProbeSieveIdentity { bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentReport {
    pub m: u64,
    pub n: u64,
    pub ell: u64,
    pub count: u64,
    pub exception: bool,
    /// Only meaningful when `exception` is true.
    pub square_class_3: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionsReport {
    pub m: u64,
    pub bound: u64,
    pub exceptions: Vec<ExceptionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub m: u64,
    pub modulus: u64,
    pub residues: [u64; 3],
    pub series: QSeries,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzReport {
    pub d: u64,
    #[serde(with = "rational_string")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessesReport {
    pub m: u64,
    pub r: u64,
    pub target_residue: u64,
    pub witnesses: Vec<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPrime {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
    pub missing_count: u64,
    /// Smallest missing residues, at most 16.
    pub missing_sample: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub m: u64,
    pub mod8_obstruction: Option<u64>,
    /// `p_m` onto `Z / 2^12`; absent when `4 | m`.
    pub two_adic_surjective: Option<bool>,
    pub primes: Vec<LocalPrime>,
    pub n: Option<u64>,
    pub admissible: Option<bool>,
    pub failing_primes: Option<Vec<u64>>,
}

/// One subcommand's result, ready to render.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Represent(RepresentReport),
    Exceptions(ExceptionsReport),
    Theta(ThetaReport),
    SiegelWeil(SiegelWeilReport),
    Hurwitz(HurwitzReport),
    Witnesses(WitnessesReport),
    Survey(SurveyReport),
    Local(LocalReport),
    Probe(SieveProbeReport),
}

impl Report {
    /// Whether the report itself records a failed check.
    pub fn failed(&self) -> bool {
        match self {
            Report::SiegelWeil(r) => !r.verified,
            Report::Witnesses(r) => r.witnesses.iter().any(|w| !w.verified),
            Report::Probe(r) => r.verdict == ProbeVerdict::Neither,
            _ => false,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::invalid(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.csv(),
            Format::Text => Ok(self.text()),
        }
    }

    fn csv(&self) -> Result<String> {
        let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match self {
            Report::Represent(r) => (
                vec!["m", "n", "ell", "count", "exception", "square_class_3"],
                vec![vec![
                    r.m.to_string(),
                    r.n.to_string(),
                    r.ell.to_string(),
                    r.count.to_string(),
                    r.exception.to_string(),
                    r.square_class_3.to_string(),
                ]],
            ),
            Report::Exceptions(ExceptionsReport { exceptions, .. })
            | Report::Survey(SurveyReport { exceptions, .. }) => (
                vec!["n", "ell", "square_class_3"],
                exceptions
                    .iter()
                    .map(|e| vec![e.n.to_string(), e.ell.to_string(), e.square_class_3.to_string()])
                    .collect(),
            ),
            Report::Theta(r) => return r.series.to_csv(),
            Report::SiegelWeil(r) => (
                vec!["identity", "exponent", "lhs", "rhs"],
                r.discrepancies
                    .iter()
                    .map(|d| {
                        vec![
                            d.identity.clone(),
                            d.exponent.to_string(),
                            format_rational(&d.lhs),
                            format_rational(&d.rhs),
                        ]
                    })
                    .collect(),
            ),
            Report::Hurwitz(r) => (
                vec!["d", "numerator", "denominator"],
                vec![vec![r.d.to_string(), r.value.numer().to_string(), r.value.denom().to_string()]],
            ),
            Report::Witnesses(r) => (
                vec![
                    "m",
                    "ell",
                    "n",
                    "identity_holds",
                    "coset_count",
                    "representation_count",
                    "ell_sq_is_one_mod_8r",
                    "ell_sq_matches_offset_mod_8r",
                    "verified",
                ],
                r.witnesses
                    .iter()
                    .map(|w| {
                        vec![
                            w.m.to_string(),
                            w.ell.to_string(),
                            w.n.to_string(),
                            w.identity_holds.to_string(),
                            w.coset_count.to_string(),
                            w.representation_count.to_string(),
                            w.ell_sq_is_one_mod_8r.to_string(),
                            w.ell_sq_matches_offset_mod_8r.to_string(),
                            w.verified.to_string(),
                        ]
                    })
                    .collect(),
            ),
            Report::Local(r) => (
                vec!["p", "k", "modulus", "missing_count"],
                r.primes
                    .iter()
                    .map(|p| {
                        vec![
                            p.p.to_string(),
                            p.k.to_string(),
                            p.modulus.to_string(),
                            p.missing_count.to_string(),
                        ]
                    })
                    .collect(),
            ),
            Report::Probe(r) => (
                vec!["form", "matches", "mismatches", "first_exponent", "residual", "candidate"],
                r.candidates
                    .iter()
                    .map(|c| {
                        let (e, a, b) = match &c.first_mismatch {
                            Some(d) => (d.exponent.to_string(), format_rational(&d.lhs), format_rational(&d.rhs)),
                            None => Default::default(),
                        };
                        vec![c.form.clone(), c.matches.to_string(), c.mismatches.to_string(), e, a, b]
                    })
                    .collect(),
            ),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::invalid(format!("csv: {e}"));
        w.write_record(&header).map_err(io)?;
        for row in rows {
            w.write_record(&row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Represent(r) => {
                let _ = writeln!(s, "P_{}({}) : {} ordered triples (ell = {})", r.m, r.n, r.count, r.ell);
                if r.exception {
                    let class = if r.square_class_3 { "square class 3" } else { "not square class 3" };
                    let _ = writeln!(s, "exception, {class}");
                }
            }
            Report::Exceptions(r) => {
                let _ = writeln!(s, "m = {}, n <= {}: {} exceptions", r.m, r.bound, r.exceptions.len());
                for e in &r.exceptions {
                    let _ = writeln!(s, "{} ell={}{}", e.n, e.ell, if e.square_class_3 { " 3r^2" } else { "" });
                }
            }
            Report::Theta(r) => {
                let _ = writeln!(
                    s,
                    "coset {:?} mod {}, exponents <= {}",
                    r.residues,
                    r.modulus,
                    r.series.bound()
                );
                for (e, c) in r.series.terms() {
                    let _ = writeln!(s, "{e} {}", format_rational(c));
                }
            }
            Report::SiegelWeil(r) => {
                let _ = writeln!(
                    s,
                    "{}: {} coefficients checked, weights {}",
                    if r.verified { "verified" } else { "FAILED" },
                    r.coefficients_checked,
                    if r.weights_verified { "ok" } else { "wrong" }
                );
                for c in &r.identities {
                    let _ = writeln!(s, "{}: {} ({} mismatches)", c.identity, c.holds, c.discrepancy_count);
                }
                for d in &r.discrepancies {
                    let _ = writeln!(
                        s,
                        "  {} at q^{}: {} vs {}",
                        d.identity,
                        d.exponent,
                        format_rational(&d.lhs),
                        format_rational(&d.rhs)
                    );
                }
            }
            Report::Hurwitz(r) => {
                let _ = writeln!(s, "{}", format_rational(&r.value));
            }
            Report::Witnesses(r) => {
                let _ = writeln!(s, "m = {} (r = {}), ell = {} (mod 12)", r.m, r.r, r.target_residue);
                for w in &r.witnesses {
                    let _ = writeln!(
                        s,
                        "ell = {} n = {} verified = {} (ell^2 = 1 mod 8r: {})",
                        w.ell, w.n, w.verified, w.ell_sq_is_one_mod_8r
                    );
                }
            }
            Report::Survey(r) => {
                let _ = writeln!(
                    s,
                    "m = {}, n <= {}: {} exceptions, {} of square class 3",
                    r.m,
                    r.bound,
                    r.exceptions.len(),
                    r.square_class_3_count
                );
                match r.largest_non_square_class {
                    Some(t) => {
                        let _ = writeln!(s, "largest exception outside square class 3: {t}");
                    }
                    None => {
                        let _ = writeln!(s, "every exception is of square class 3");
                    }
                }
            }
            Report::Local(r) => {
                let _ = writeln!(s, "m = {}", r.m);
                if let Some(c) = r.mod8_obstruction {
                    let _ = writeln!(s, "misses {c} (mod 8)");
                }
                if let Some(b) = r.two_adic_surjective {
                    let _ = writeln!(s, "p_m onto Z/2^{LOCAL_TWO_ADIC_EXPONENT}: {b}");
                }
                for p in &r.primes {
                    let _ = writeln!(
                        s,
                        "p = {} k = {} modulus {}: {} residues missed {:?}",
                        p.p, p.k, p.modulus, p.missing_count, p.missing_sample
                    );
                }
                if let (Some(n), Some(a)) = (r.n, r.admissible) {
                    let _ = writeln!(
                        s,
                        "n = {n}: {}",
                        if a {
                            "locally admissible".to_string()
                        } else {
                            format!("fails at {:?}", r.failing_primes.as_deref().unwrap_or(&[]))
                        }
                    );
                }
            }
            Report::Probe(r) => {
                let _ = writeln!(s, "exponents <= {}: verdict {:?}", r.bound, r.verdict);
                let _ = writeln!(s, "residual has {} nonzero terms", r.residual_nonzero_terms);
                for (e, c) in &r.residual_sample {
                    let _ = writeln!(s, "  q^{e}: {c}");
                }
                for c in &r.candidates {
                    let _ = write!(s, "{}: {}", c.form, if c.matches { "matches" } else { "differs" });
                    if let Some(d) = &c.first_mismatch {
                        let _ = write!(
                            s,
                            ", first at q^{}: residual {} vs {}",
                            d.exponent,
                            format_rational(&d.lhs),
                            format_rational(&d.rhs)
                        );
                    }
                    s.push('\n');
                }
            }
        }
        s
    }
}

fn family(m: u64) -> Result<PolygonalFamily> {
    PolygonalFamily::new(m)
}

fn check_bound(bound: u64) -> Result<()> {
    if bound > MAX_BOUND {
        return Err(Error::invalid(format!("bound {bound} exceeds {MAX_BOUND}")));
    }
    Ok(())
}

/// Runs one subcommand on the current rayon pool.
pub fn execute(command: &Command) -> Result<Report> {
    Ok(match *command {
        Command::Represent { m, n } => {
            let f = family(m)?;
            if n > MAX_REPRESENT_N {
                return Err(Error::invalid(format!("n = {n} exceeds {MAX_REPRESENT_N}")));
            }
            let count = f.representation_count(n);
            let rec = f.record_unchecked(n);
            Report::Represent(RepresentReport {
                m,
                n,
                ell: rec.ell,
                count,
                exception: count == 0,
                square_class_3: count == 0 && rec.square_class_3,
            })
        }
        Command::Exceptions { m, bound } => {
            let f = family(m)?;
            check_bound(bound)?;
            Report::Exceptions(ExceptionsReport {
                m,
                bound,
                exceptions: f.exceptional_set(bound).into_iter().map(|n| f.record_unchecked(n)).collect(),
            })
        }
        Command::Theta { m, bound } => {
            let coset = CosetZ3::for_family(family(m)?);
            check_bound(bound)?;
            Report::Theta(ThetaReport {
                m,
                modulus: coset.modulus(),
                residues: coset.residues(),
                series: coset.theta_series(bound),
            })
        }
        Command::VerifySiegelWeil { bound } => {
            check_bound(bound)?;
            Report::SiegelWeil(verify_siegel_weil(bound))
        }
        Command::Hurwitz { d } => Report::Hurwitz(HurwitzReport { d, value: hurwitz(d)? }),
        Command::Witnesses { m, count, prime_ceiling } => {
            check_bound(prime_ceiling)?;
            let spec = crate::witnesses::WitnessSpec::new(m)?;
            Report::Witnesses(WitnessesReport {
                m,
                r: spec.r,
                target_residue: spec.target_residue,
                witnesses: find_witnesses(m, count, prime_ceiling)?,
            })
        }
        Command::Survey { m, bound } => {
            let f = family(m)?;
            check_bound(bound)?;
            Report::Survey(survey(f, bound))
        }
        Command::Local { m, n } => {
            let f = family(m)?;
            let profile = LocalProfile::new(f);
            let primes = profile
                .images()
                .iter()
                .map(|(p, k, img)| {
                    let missing = img.missing();
                    LocalPrime {
                        p: *p,
                        k: *k,
                        modulus: img.modulus(),
                        missing_count: missing.len() as u64,
                        missing_sample: missing.into_iter().take(16).collect(),
                    }
                })
                .collect();
            Report::Local(LocalReport {
                m,
                mod8_obstruction: mod8_obstruction(f),
                two_adic_surjective: if m % 4 == 0 {
                    None
                } else {
                    Some(two_adic_surjective(f, LOCAL_TWO_ADIC_EXPONENT)?)
                },
                primes,
                n,
                admissible: n.map(|n| profile.admits(n)),
                failing_primes: n.map(|n| profile.failing_primes(n)),
            })
        }
        Command::ProbeSieveIdentity { bound } => {
            check_bound(bound)?;
            Report::Probe(sieve_identity_probe(bound))
        }
    })
}

/// Runs a parsed command line, writing the report to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be >= 1");
            return EXIT_BAD_INPUT;
        }
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return EXIT_IO;
        }
    };
    let report = match pool.install(|| execute(&cli.command)) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if e.is_verification_failure() {
                EXIT_VERIFICATION_FAILED
            } else {
                EXIT_BAD_INPUT
            };
        }
    };
    let rendered = match report.render(cli.format) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_IO;
        }
    };
    if out.write_all(rendered.as_bytes()).and_then(|_| out.flush()).is_err() {
        return EXIT_IO;
    }
    if report.failed() {
        let _ = writeln!(err, "verification failed");
        return EXIT_VERIFICATION_FAILED;
    }
    EXIT_OK
}

/// Parses `args` (including the program name) and dispatches.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            code
        }
    }
}
