//! JSON command-line front end for the diskalg library.
//!
//! Every command prints one JSON object to stdout carrying a
//! `schema_version` field; complex numbers are always `[re, im]` pairs.
//! `--verbose` adds a human-readable summary on stderr.  Exit codes:
//! 0 success, 2 domain violations (such as `|z0| >= 1`), 3 argument or
//! input-file parse failures, 1 any other library error.  Identical
//! invocations produce byte-identical stdout.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use diskalg::crossed::CrossedElement;
use diskalg::dynamics::{orbit, HyperbolicConjugacy};
use diskalg::moebius::{ClassTag, DiskAutomorphism};
use diskalg::normal_form::normal_form;
use diskalg::operator::{
    covariance_residual, operator_norm, rational_relation_residual, represent, symbol, RepKind,
};
use diskalg::spectra::{closure_model, closure_model_names, SpectrumSet};
use diskalg::{sampleset, sampling, Error};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "diskalg",
    version,
    about = "Disk automorphisms, their crossed products, and spectra, as JSON"
)]
struct Cli {
    /// Also print a human-readable summary to stderr.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the automorphism z -> e^{2 pi i theta}(z - z0)/(1 - conj(z0) z).
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, allow_hyphen_values = true)]
        z0_re: f64,
        #[arg(long, allow_hyphen_values = true)]
        z0_im: f64,
        /// Classification tolerance on the margin |z0| - sin(pi theta).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the orbit segment phi^n(x) for n in the given range.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, allow_hyphen_values = true)]
        z0_re: f64,
        #[arg(long, allow_hyphen_values = true)]
        z0_im: f64,
        /// Base point, as a complex literal such as "0", "0.2i" or "0.3+0.1i".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Iterate range LO HI (inclusive).
        #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["LO", "HI"])]
        range: Vec<i64>,
    },
    /// Canonical form, conjugator word, invariant, and conjugation residual.
    NormalForm {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, allow_hyphen_values = true)]
        z0_re: f64,
        #[arg(long, allow_hyphen_values = true)]
        z0_im: f64,
    },
    /// Sample the conjugacy carrying one canonical hyperbolic map to another.
    Conjugacy {
        /// Invariant a of the source map z -> (z+a)/(1+az).
        #[arg(long)]
        a_phi: f64,
        /// Invariant a of the target map.
        #[arg(long)]
        a_psi: f64,
        /// Number of interior sample points to push through the conjugacy.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Residual and norm tables for a truncated representation.
    RepCheck {
        /// One of: hyperbolic, parabolic, elliptic, character, rational.
        #[arg(long)]
        kind: String,
        /// Base point for the orbit kinds (complex literal; default 0).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        z0_re: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        z0_im: Option<f64>,
        /// Truncation half-width.
        #[arg(long = "N")]
        n: Option<usize>,
        /// Several half-widths, comma or space separated.
        #[arg(long = "N-list", num_args = 1.., value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        /// Check a seeded random element instead of the generator A.
        #[arg(long)]
        seed: Option<u64>,
        /// Rotation numerator (rational kind).
        #[arg(long, allow_hyphen_values = true)]
        p: Option<i64>,
        /// Rotation denominator (rational kind).
        #[arg(long)]
        q: Option<u64>,
        /// Unimodular shift twist (rational kind; complex literal, default 1).
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        /// Unimodular diagonal base (rational kind; complex literal, default 1).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Character phase (character kind).
        #[arg(long, allow_hyphen_values = true)]
        u_phase: Option<f64>,
        /// Fixed point the character evaluates at (complex literal, default 1).
        #[arg(long, allow_hyphen_values = true)]
        a_value: Option<String>,
    },
    /// Boundary symbols of a crossed-product element under a canonical map.
    Symbol {
        /// Invariant a of the canonical hyperbolic map.
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        /// Element JSON file; defaults to A + U + U^{-1}.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Close a spectrum set in the chosen model topology.
    SpectrumClosure {
        /// Closure model name; see the error message for the registry.
        #[arg(long)]
        model: String,
        /// Spectrum set JSON file.
        #[arg(long = "in")]
        input: PathBuf,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return;
            }
            let line = e
                .render()
                .to_string()
                .lines()
                .next()
                .unwrap_or("argument parse failure")
                .to_string();
            eprint!("{e}");
            emit_failure(&Failure::parse(line));
        }
    };
    match run(&cli.command) {
        Ok((value, summary)) => {
            println!("{value}");
            if cli.verbose {
                eprintln!("{summary}");
            }
        }
        Err(f) => {
            if cli.verbose {
                eprintln!("error: {}", f.message);
            }
            emit_failure(&f);
        }
    }
}

fn emit_failure(f: &Failure) -> ! {
    let obj = json!({
        "schema_version": SCHEMA_VERSION,
        "code": f.code,
        "message": f.message,
    });
    println!("{obj}");
    std::process::exit(f.code);
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cpair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn tag_name(tag: ClassTag) -> &'static str {
    match tag {
        ClassTag::Identity => "identity",
        ClassTag::Elliptic => "elliptic",
        ClassTag::Parabolic => "parabolic",
        ClassTag::Hyperbolic => "hyperbolic",
    }
}

fn with_schema(mut v: Value) -> Value {
    v.as_object_mut()
        .expect("command output is a JSON object")
        .insert("schema_version".into(), json!(SCHEMA_VERSION));
    v
}

/// Parses complex literals: "0", "-1.5", "0.2i", "-i", "0.3+0.1i", "1e-3i".
fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::parse(format!("bad complex literal {s:?}"));
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if !t.ends_with('i') {
        return t.parse().map(|re| c(re, 0.0)).map_err(|_| bad());
    }
    let body = &t[..t.len() - 1];
    // Split at the last sign that is not an exponent sign; everything
    // before it is the real part, the rest the imaginary coefficient.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse().map_err(|_| bad())?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse().map_err(|_| bad())?,
    };
    Ok(c(re, im))
}

fn read_text(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {what} file {}: {e}", path.display())))
}

fn run(cmd: &Command) -> Result<(Value, String), Failure> {
    match cmd {
        Command::Classify {
            theta,
            z0_re,
            z0_im,
            tol,
        } => run_classify(*theta, c(*z0_re, *z0_im), *tol),
        Command::Orbit {
            theta,
            z0_re,
            z0_im,
            x,
            range,
        } => run_orbit(*theta, c(*z0_re, *z0_im), x, range),
        Command::NormalForm {
            theta,
            z0_re,
            z0_im,
        } => run_normal_form(*theta, c(*z0_re, *z0_im)),
        Command::Conjugacy {
            a_phi,
            a_psi,
            samples,
        } => run_conjugacy(*a_phi, *a_psi, *samples),
        Command::RepCheck {
            kind,
            x,
            theta,
            z0_re,
            z0_im,
            n,
            n_list,
            seed,
            p,
            q,
            eta,
            lambda,
            u_phase,
            a_value,
        } => {
            let args = RepCheckArgs {
                kind,
                x: x.as_deref(),
                theta: *theta,
                z0_re: *z0_re,
                z0_im: *z0_im,
                n: *n,
                n_list: n_list.as_deref(),
                seed: *seed,
                p: *p,
                q: *q,
                eta: eta.as_deref(),
                lambda: lambda.as_deref(),
                u_phase: *u_phase,
                a_value: a_value.as_deref(),
            };
            run_rep_check(&args)
        }
        Command::Symbol { a, input } => run_symbol(*a, input.as_deref()),
        Command::SpectrumClosure { model, input } => run_spectrum_closure(model, input),
    }
}

fn run_classify(theta: f64, z0: Complex64, tol: Option<f64>) -> Result<(Value, String), Failure> {
    let phi = DiskAutomorphism::new(theta, z0)?;
    let cls = match tol {
        Some(t) => phi.classify_with_tol(t),
        None => phi.classify(),
    };
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "class": tag_name(cls.tag),
        "margin": cls.margin,
        "theta": phi.theta(),
        "z0": cpair(phi.z0()),
    });
    let mut summary = format!("class {} (margin {:.3e})", tag_name(cls.tag), cls.margin);
    if let Ok(fp) = phi.fixed_points() {
        out["fixed_points"] = Value::Array(fp.points.iter().map(|&p| cpair(p)).collect());
        out["multipliers"] = json!(fp.multipliers);
        out["discriminant"] = cpair(fp.discriminant);
        summary.push_str(&format!(
            ", {} fixed point(s), multipliers {:?}",
            fp.points.len(),
            fp.multipliers
        ));
    }
    Ok((out, summary))
}

fn run_orbit(
    theta: f64,
    z0: Complex64,
    x: &str,
    range: &[i64],
) -> Result<(Value, String), Failure> {
    let phi = DiskAutomorphism::new(theta, z0)?;
    let x = parse_complex(x)?;
    let (lo, hi) = (range[0], range[1]);
    let pts = orbit(&phi, x, lo, hi)?;
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "range": [lo, hi],
        "points": Value::Array(pts.iter().map(|&p| cpair(p)).collect()),
    });
    let summary = format!("{} orbit points for n in {lo}..={hi}", pts.len());
    Ok((out, summary))
}

fn run_normal_form(theta: f64, z0: Complex64) -> Result<(Value, String), Failure> {
    let phi = DiskAutomorphism::new(theta, z0)?;
    let nf = normal_form(&phi)?;
    let summary = format!(
        "class {}, invariant {:?}, conjugation residual {:.3e}",
        tag_name(nf.class.tag),
        nf.invariant,
        nf.residual
    );
    let v = serde_json::to_value(&nf).expect("normal form serializes");
    Ok((with_schema(v), summary))
}

fn run_conjugacy(a_phi: f64, a_psi: f64, samples: usize) -> Result<(Value, String), Failure> {
    let phi = DiskAutomorphism::hyperbolic_canonical(a_phi)?;
    let psi = DiskAutomorphism::hyperbolic_canonical(a_psi)?;
    let mu = HyperbolicConjugacy::new(phi, psi)?;
    let mut pairs = Vec::with_capacity(samples);
    let mut residual = 0.0f64;
    for z in sampleset::interior_points(samples) {
        let w = mu.eval(z)?;
        let drift = (mu.eval(phi.eval(z)?)? - psi.eval(w)?).norm();
        residual = residual.max(drift);
        pairs.push(json!([cpair(z), cpair(w)]));
    }
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "a_phi": a_phi,
        "a_psi": a_psi,
        "equivariance_residual": residual,
        "pairs": Value::Array(pairs),
    });
    let summary = format!(
        "conjugacy {a_phi} -> {a_psi} on {samples} points, equivariance residual {residual:.3e}"
    );
    Ok((out, summary))
}

struct RepCheckArgs<'a> {
    kind: &'a str,
    x: Option<&'a str>,
    theta: Option<f64>,
    z0_re: Option<f64>,
    z0_im: Option<f64>,
    n: Option<usize>,
    n_list: Option<&'a [usize]>,
    seed: Option<u64>,
    p: Option<i64>,
    q: Option<u64>,
    eta: Option<&'a str>,
    lambda: Option<&'a str>,
    u_phase: Option<f64>,
    a_value: Option<&'a str>,
}

impl RepCheckArgs<'_> {
    /// The explicitly given map, or the canonical representative of the
    /// kind's class when no map flags are present.
    fn map(&self) -> Result<DiskAutomorphism, Failure> {
        match (self.theta, self.z0_re, self.z0_im) {
            (Some(t), Some(re), Some(im)) => Ok(DiskAutomorphism::new(t, c(re, im))?),
            (None, None, None) => Ok(match self.kind {
                "parabolic" => DiskAutomorphism::parabolic_plus(),
                "elliptic" => DiskAutomorphism::rotation((5.0f64.sqrt() - 1.0) / 2.0),
                _ => DiskAutomorphism::hyperbolic_canonical(0.5)?,
            }),
            _ => Err(Failure::parse(
                "--theta, --z0-re and --z0-im must be given together",
            )),
        }
    }
}

fn run_rep_check(args: &RepCheckArgs) -> Result<(Value, String), Failure> {
    let (phi, rk) = match args.kind {
        "hyperbolic" | "parabolic" | "elliptic" => {
            let x = parse_complex(args.x.unwrap_or("0"))?;
            let rk = match args.kind {
                "hyperbolic" => RepKind::HyperbolicOrbit { x },
                "parabolic" => RepKind::ParabolicOrbit { x },
                _ => RepKind::EllipticCircle { x },
            };
            (args.map()?, rk)
        }
        "character" => {
            let a_value = parse_complex(args.a_value.unwrap_or("1"))?;
            let rk = RepKind::Character {
                u_phase: args.u_phase.unwrap_or(0.0),
                a_value,
            };
            (args.map()?, rk)
        }
        "rational" => {
            let p = args
                .p
                .ok_or_else(|| Failure::parse("--p is required for --kind rational"))?;
            let q = args
                .q
                .ok_or_else(|| Failure::parse("--q is required for --kind rational"))?;
            let eta = parse_complex(args.eta.unwrap_or("1"))?;
            let lambda = parse_complex(args.lambda.unwrap_or("1"))?;
            let phi = DiskAutomorphism::rotation_rational(p, q)?;
            (phi, RepKind::EllipticRational { p, q, eta, lambda })
        }
        other => {
            return Err(Failure::parse(format!(
                "unknown representation kind {other:?}; use hyperbolic, parabolic, elliptic, character or rational"
            )))
        }
    };

    let element = match args.seed {
        Some(s) => sampling::crossed_element(&mut sampling::rng(s), 3, 2),
        None => CrossedElement::generator_a(),
    };

    let ns: Vec<usize> = match (args.n, args.n_list) {
        (_, Some(list)) if !list.is_empty() => list.to_vec(),
        (Some(one), _) => vec![one],
        _ => vec![20],
    };

    let mut rows = Vec::with_capacity(ns.len());
    let mut worst_residual = 0.0f64;
    for &nn in &ns {
        let rep = represent(&element, &phi, &rk, nn)?;
        let norm = operator_norm(rep.matrix());
        let mut row = json!({ "N": nn, "dim": rep.matrix().nrows(), "norm": norm });
        let residual = match &rk {
            RepKind::HyperbolicOrbit { x }
            | RepKind::ParabolicOrbit { x }
            | RepKind::EllipticCircle { x } => {
                let r = covariance_residual(&phi, *x, nn)?;
                row["covariance_residual"] = json!(r);
                r
            }
            RepKind::Character { a_value, .. } => {
                let r = (phi.eval(*a_value)? - *a_value).norm();
                row["fixed_point_residual"] = json!(r);
                r
            }
            RepKind::EllipticRational { p, q, eta, lambda } => {
                let r = rational_relation_residual(*p, *q, *eta, *lambda)?;
                row["relation_residual"] = json!(r);
                r
            }
        };
        worst_residual = worst_residual.max(residual);
        rows.push(row);
    }

    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "kind": args.kind,
        "map": serde_json::to_value(phi).expect("map serializes"),
        "element_support": element.support(),
        "seed": args.seed,
        "rows": Value::Array(rows),
    });
    let summary = format!(
        "{} representation at half-widths {:?}: worst residual {:.3e}",
        args.kind, ns, worst_residual
    );
    Ok((out, summary))
}

fn run_symbol(a: f64, input: Option<&Path>) -> Result<(Value, String), Failure> {
    let phi = DiskAutomorphism::hyperbolic_canonical(a)?;
    let element = match input {
        Some(path) => {
            let text = read_text(path, "element")?;
            serde_json::from_str::<CrossedElement>(&text).map_err(|e| {
                Failure::parse(format!("cannot parse element file {}: {e}", path.display()))
            })?
        }
        None => CrossedElement::generator_a()
            .add(&CrossedElement::u_power(1))
            .add(&CrossedElement::u_power(-1)),
    };
    let s = symbol(&element, &phi)?;
    let support = element.support();
    let summary = format!(
        "symbols of an element supported on U^{support:?} under the canonical map with a = {a}"
    );
    let mut v = serde_json::to_value(&s).expect("symbol pair serializes");
    let obj = v.as_object_mut().expect("symbol pair is an object");
    obj.insert("a".into(), json!(a));
    obj.insert("element_support".into(), json!(support));
    Ok((with_schema(v), summary))
}

fn run_spectrum_closure(model: &str, input: &Path) -> Result<(Value, String), Failure> {
    let model_impl = closure_model(model).ok_or_else(|| {
        Failure::parse(format!(
            "unknown closure model {model:?}; available: {}",
            closure_model_names().join(", ")
        ))
    })?;
    let text = read_text(input, "spectrum set")?;
    let set: SpectrumSet = serde_json::from_str(&text).map_err(|e| {
        Failure::parse(format!(
            "cannot parse spectrum set file {}: {e}",
            input.display()
        ))
    })?;
    if set.model() != model_impl.model() {
        return Err(Failure {
            code: 1,
            message: format!(
                "set belongs to the {:?} model but the {} closure was requested",
                set.model(),
                model_impl.name()
            ),
        });
    }
    let closed = model_impl.close(&set)?;
    let already = closed == set;
    let summary = format!(
        "{} closure: {} point(s), {} flag(s){}",
        model_impl.name(),
        closed.points().len(),
        closed.flags().len(),
        if already { ", input already closed" } else { "" }
    );
    let v = serde_json::to_value(&closed).expect("spectrum set serializes");
    Ok((with_schema(v), summary))
}
