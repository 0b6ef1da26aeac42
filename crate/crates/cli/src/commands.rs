use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vypoly_core::asymptotics::{locus_trace_with, render_svg, star_corners, DecimalComplex, LocusArcs, LocusOptions};
use vypoly_core::diffalg::{lenard, lenard_operator};
use vypoly_core::roots::{scaled_root_set, RootSet};
use vypoly_core::symfunc::h_table;
use vypoly_core::vy::{
    certify_pii, hirota_degree_bound, qn_hankel_square, qn_recurrence, qn_schur, verify_dodgson,
    verify_dodgson_hirota, verify_freak, verify_miura,
};
use vypoly_core::{Error, ExactScalar, Times, TimesSpec};

use crate::{Cli, Command, CornersArgs, Format, GenArgs, LocusArgs, RenderArgs, RootsArgs, Suite, TimeArgs, VerifyArgs};

const MIN_PRECISION: u32 = 128;
const LOCUS_PRECISION: u32 = 256;

#[derive(Debug)]
pub enum Failure {
    Identity(String),
    Numeric(String),
    Config(String),
}

impl Failure {
    pub const CONFIG: u8 = 4;

    pub fn code(&self) -> u8 {
        match self {
            Failure::Identity(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Config(_) => Self::CONFIG,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Identity(m) | Failure::Numeric(m) | Failure::Config(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse(_) | Error::NotSquare { .. } | Error::Truncation { .. } => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    if let Some(p) = cli.precision {
        if p < MIN_PRECISION {
            return Err(Failure::Config(format!("precision must be at least {MIN_PRECISION} bits, got {p}")));
        }
    }
    match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify(a),
        Command::Roots(a) => roots(a, cli.precision),
        Command::Locus(a) => locus(a, cli.precision),
        Command::Corners(a) => corners(a, cli.precision),
        Command::Render(a) => render(a),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Config(e.to_string()))
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

/// `--N` plus `--time J=VALUE` overrides; `J = 2N+1` replaces the top time.
fn spec(args: &TimeArgs) -> std::result::Result<TimesSpec, Failure> {
    let mut t = TimesSpec::new(args.n_cap)?;
    for entry in &args.times {
        let (j, v) = entry
            .split_once('=')
            .ok_or_else(|| Failure::Config(format!("time {entry:?} is not J=VALUE")))?;
        let j: usize = j
            .trim()
            .parse()
            .map_err(|_| Failure::Config(format!("bad time index in {entry:?}")))?;
        let v: ExactScalar = v.parse()?;
        t = if j == 2 * args.n_cap + 1 {
            t.with_top_time(v)
        } else {
            t.with_time(j, v)?
        };
    }
    Ok(t)
}

fn gen(args: &GenArgs) -> Outcome {
    let t = spec(&args.times)?;
    let q = qn_schur(args.n, &t)?;
    if qn_hankel_square(args.n, &t)? != q.poly().pow(2) {
        return Err(Failure::Identity("Hankel route disagrees with the Schur route".into()));
    }
    if t.has_default_top_time() {
        if qn_recurrence(args.n, &t)?.poly() != q.poly() {
            return Err(Failure::Identity("recurrence route disagrees with the Schur route".into()));
        }
    } else {
        eprintln!("note: recurrence route skipped, it needs the default top time");
    }
    let p = q.poly();
    assert!(
        p.is_monic() && p.degree() == (args.n * (args.n + 1) / 2) as isize,
        "refusing to write a polynomial that is not monic of degree n(n+1)/2"
    );
    emit(&args.out, &(q.to_json() + "\n"))
}

fn rational(rng: &mut ChaCha8Rng) -> ExactScalar {
    let mut v = ExactScalar::zero();
    while v.is_zero() {
        v = ExactScalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7));
    }
    v
}

fn random_spec(rng: &mut ChaCha8Rng, n_cap: usize) -> std::result::Result<TimesSpec, Failure> {
    let mut t = TimesSpec::new(n_cap)?;
    for j in (3..2 * n_cap).step_by(2) {
        t = t.with_time(j, rational(rng))?;
    }
    Ok(t.with_t1(rational(rng)))
}

fn verify(args: &VerifyArgs) -> Outcome {
    let t = spec(&args.times)?;
    let n = args.n;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut cases: Vec<(String, bool)> = Vec::new();
    match args.suite {
        Suite::Fesq => {
            for m in 0..=n {
                let q = qn_schur(m, &t)?;
                cases.push((format!("n={m}"), qn_hankel_square(m, &t)? == q.poly().pow(2)));
            }
        }
        Suite::Freak => {
            for m in 0..=n {
                cases.push((format!("n={m}"), verify_freak(m, &t)?));
            }
        }
        Suite::Miura => {
            for m in 1..=n.max(1) {
                cases.push((format!("n={m}"), verify_miura(m, &t)?));
            }
        }
        Suite::Dodgson => {
            let mut times = Times::with_x();
            for j in 2..=7 {
                times = times.set(j, rational(&mut rng));
            }
            let h = h_table(&times, 2 * n + 8);
            for m in 0..=n {
                for l in 1..=3 {
                    cases.push((format!("n={m} l={l}"), verify_dodgson(m, l, &h)?));
                }
            }
        }
        Suite::Hirota => {
            let ts = random_spec(&mut rng, args.times.n_cap)?;
            let ss = random_spec(&mut rng, args.times.n_cap)?;
            for m in 0..=n {
                for l in 1..=2 {
                    let ok = verify_dodgson_hirota(m, l, &ts, &ss, hirota_degree_bound(m, l))?;
                    cases.push((format!("n={m} l={l}"), ok));
                }
            }
        }
        Suite::Pii => {
            for m in 0..=n {
                cases.push((format!("n={m}"), certify_pii(m, &t)?));
            }
        }
        Suite::Lenard => {
            for k in 1..=n.max(1) {
                let residual = lenard(k + 1)?.d_total().sub(&lenard_operator(&lenard(k)?));
                cases.push((format!("k={k}"), residual.is_zero()));
            }
        }
    }
    let name = format!("{:?}", args.suite).to_lowercase();
    let mut failed = 0;
    for (case, ok) in &cases {
        println!("{name} {case}: {}", if *ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed > 0 {
        return Err(Failure::Identity(format!("{failed} of {} {name} cases failed", cases.len())));
    }
    Ok(())
}

fn roots(args: &RootsArgs, precision: Option<u32>) -> Outcome {
    let rs = scaled_root_set(args.n, args.n_cap, precision)?;
    emit(&args.out, &rs.to_csv())
}

fn locus(args: &LocusArgs, precision: Option<u32>) -> Outcome {
    let opts = LocusOptions {
        half_width: args.half_width,
        resolution: args.grid,
        precision: precision.unwrap_or(LOCUS_PRECISION),
        flip_root: false,
        threads: args.threads,
    };
    let arcs = locus_trace_with(args.n_cap, &opts)?;
    let text = match args.format {
        Format::Csv => arcs.to_csv(),
        Format::Svg => arcs.to_svg(),
        Format::Json => return Err(Failure::Config("locus writes csv or svg".into())),
    };
    emit(&args.out, &text)
}

fn corners(args: &CornersArgs, precision: Option<u32>) -> Outcome {
    let prec = precision.unwrap_or(LOCUS_PRECISION);
    let digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize;
    let values: Vec<DecimalComplex> = star_corners(args.n_cap, prec)?
        .iter()
        .map(|c| DecimalComplex {
            re: c.real().to_string_radix(10, Some(digits)),
            im: c.imag().to_string_radix(10, Some(digits)),
        })
        .collect();
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("k,re,im\n");
            for (k, v) in values.iter().enumerate() {
                s += &format!("{k},{},{}\n", v.re, v.im);
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&values).expect("plain data serializes") + "\n",
        Format::Svg => return Err(Failure::Config("corners writes csv or json".into())),
    };
    emit(&None, &text)
}

fn render(args: &RenderArgs) -> Outcome {
    if args.roots.is_none() && args.locus.is_none() {
        return Err(Failure::Config("render needs --roots, --locus or both".into()));
    }
    let roots = match &args.roots {
        Some(p) => RootSet::from_csv(&read(p)?)?.to_f64(),
        None => Vec::new(),
    };
    let arcs = match &args.locus {
        Some(p) => Some(LocusArcs::from_csv(&read(p)?)?),
        None => None,
    };
    let half_width = args
        .half_width
        .or_else(|| arcs.as_ref().map(|a| a.half_width))
        .unwrap_or_else(|| 1.3 * roots.iter().map(|r| r.norm()).fold(1.0, f64::max));
    if half_width.is_nan() || half_width <= 0.0 {
        return Err(Failure::Config("half-width must be positive".into()));
    }
    emit(&args.out, &render_svg(arcs.as_ref(), &roots, half_width))
}
