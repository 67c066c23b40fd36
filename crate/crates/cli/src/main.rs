use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nambu::cohomology::{adjoint_rep, verify_representation, Complex, SkewMap};
use nambu::error::{NambuError, Result};
use nambu::extensions::{build_extension, ExtensionDatum};
use nambu::format::{self, Loaded};
use nambu::graded::{derived_series, lower_central_series, twist_by_endomorphism, verify_algebra, verify_metric};
use nambu::random;
use nambu::tstar::{coadjoint, decompose, equivalence, tstar_extend, Equivalence};
use nambu::Report;

#[derive(Parser)]
#[command(name = "nambu", version, about = "Exact computations for n-ary Hom-Nambu-Lie superalgebras over ℚ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepKind {
    Adjoint,
    Coadjoint,
    /// The representation block of the input file.
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms, and the metric / representation blocks if present.
    Verify {
        file: PathBuf,
        /// Require and check the invariant form.
        #[arg(long)]
        metric: bool,
        #[arg(long)]
        json: bool,
    },
    /// Dimensions of C^m, Z^m, B^m, H^m.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, value_enum, default_value = "adjoint")]
        rep: RepKind,
        #[arg(long, value_enum, default_value = "even")]
        parity: ParityArg,
        /// Write a cocycle basis (raw tensor coordinates) as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Nilpotent and solvable lengths.
    Series { file: PathBuf },
    /// Twist a Nambu-Lie superalgebra by a self-morphism.
    Twist {
        file: PathBuf,
        #[arg(long)]
        endo: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the extension of a datum file (algebra + representation + cocycle).
    Extend {
        datum: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// T*-extension by θ (a file with a theta block, or `zero`).
    Tstar {
        file: PathBuf,
        #[arg(long, default_value = "zero")]
        theta: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether two T*-extensions of the same algebra are equivalent.
    Equiv { file: PathBuf, theta1: PathBuf, theta2: PathBuf },
    /// Decompose a nilpotent metric algebra into a T*-extension certificate.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded sweep of the invariant suite over random twisted algebras.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| NambuError::Parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Loaded> {
    format::parse_algebra(&read(path)?).map_err(|e| match e {
        NambuError::Parse(m) => NambuError::Parse(format!("{}: {m}", path.display())),
        e => e,
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| NambuError::Precondition(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// 0 if every check passed, 1 otherwise.
fn finish(r: &Report) -> u8 {
    u8::from(!r.all_passed())
}

fn verify(file: &Path, metric: bool, json: bool) -> Result<u8> {
    let l = load(file)?;
    let mut r = verify_algebra(&l.algebra);
    if metric && l.form.is_none() {
        return Err(NambuError::Precondition("--metric given but the file has no form".into()));
    }
    if let Some(g) = &l.form {
        r.merge(verify_metric(&l.algebra, g));
    }
    if let Some(rep) = &l.representation {
        r.merge(verify_representation(rep, &l.algebra)?);
    }
    if json {
        print!("{}", format::report_json(&r));
    } else {
        print!("{r}");
    }
    Ok(finish(&r))
}

fn cohomology(file: &Path, m: usize, rep: RepKind, parity: ParityArg, dump: Option<&Path>) -> Result<u8> {
    let l = load(file)?;
    let g = &l.algebra;
    let module = match rep {
        RepKind::Adjoint => adjoint_rep(g),
        RepKind::Coadjoint => {
            let co = coadjoint(g);
            if !co.exists {
                return Err(NambuError::CoadjointMissing(co.witness.unwrap_or_default()));
            }
            co.rep
        }
        RepKind::File => {
            l.representation.clone().ok_or_else(|| NambuError::Precondition("file has no representation block".into()))?
        }
    };
    let cx = Complex::new(g, &module)?;
    let parities: &[u8] = match parity {
        ParityArg::Even => &[0],
        ParityArg::Odd => &[1],
        ParityArg::Both => &[0, 1],
    };
    let mut dumped = serde_json::Map::new();
    for &pf in parities {
        let d = cx.cohomology_dims(m, pf)?;
        let b = if m == 0 { "B=0 (no δ^{-1})".to_string() } else { format!("B={}", d.b) };
        println!("m={m} parity={pf}: C={} Z={} {b} H={}", d.c, d.z, d.h);
        if dump.is_some() {
            let basis: Vec<Vec<String>> =
                cx.cocycles(m, pf).iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
            dumped.insert(format!("parity {pf}"), serde_json::to_value(basis).expect("strings"));
        }
    }
    if let Some(p) = dump {
        let text = serde_json::to_string_pretty(&dumped).expect("strings") + "\n";
        emit(&text, Some(p))?;
    }
    Ok(0)
}

fn len_str(l: Option<usize>) -> String {
    l.map_or("∞".to_string(), |k| k.to_string())
}

fn series(file: &Path) -> Result<u8> {
    let l = load(file)?;
    let nil = lower_central_series(&l.algebra).length;
    let sol = derived_series(&l.algebra).length;
    println!("nilpotent k={}, solvable k={}", len_str(nil), len_str(sol));
    Ok(0)
}

fn twist(file: &Path, endo: &Path, out: Option<&Path>) -> Result<u8> {
    let l = load(file)?;
    let rho = format::parse_matrix(&read(endo)?, l.algebra.dim())?;
    let t = twist_by_endomorphism(&l.algebra, &rho)?;
    emit(&format::dump_algebra(&t), out)?;
    Ok(0)
}

fn extend(datum: &Path, out: Option<&Path>) -> Result<u8> {
    let l = load(datum)?;
    let module = l.representation.clone().ok_or_else(|| NambuError::Precondition("datum has no representation".into()))?;
    let cocycle = l.cocycle.clone().ok_or_else(|| NambuError::Precondition("datum has no cocycle".into()))?;
    let d = ExtensionDatum { base: l.algebra.clone(), module, cocycle };
    let g = build_extension(&d)?;
    emit(&format::dump_algebra(&g), out)?;
    Ok(0)
}

fn theta_arg(spec: &str, g: &nambu::HomSuperAlgebra) -> Result<SkewMap> {
    if spec == "zero" {
        Ok(SkewMap::new())
    } else {
        format::parse_theta(&read(Path::new(spec))?, g)
    }
}

fn tstar(file: &Path, theta: &str, out: Option<&Path>) -> Result<u8> {
    let l = load(file)?;
    let th = theta_arg(theta, &l.algebra)?;
    let t = tstar_extend(&l.algebra, &th)?;
    emit(&format::dump_metric(&t.result), out)?;
    let r = verify_metric(&t.result.algebra, &t.result.gram);
    eprint!("{r}");
    Ok(finish(&r))
}

fn equiv(file: &Path, t1: &Path, t2: &Path) -> Result<u8> {
    let l = load(file)?;
    let th1 = format::parse_theta(&read(t1)?, &l.algebra)?;
    let th2 = format::parse_theta(&read(t2)?, &l.algebra)?;
    match equivalence(&l.algebra, &th1, &th2)? {
        Equivalence::Inequivalent => println!("inequivalent"),
        Equivalence::Equivalent(m) => println!("equivalent, not isometric; θ′ =\n{m}"),
        Equivalence::Isometric(m) => println!("isometrically equivalent; θ′ =\n{m}"),
    }
    Ok(0)
}

fn decompose_cmd(file: &Path, out: Option<&Path>) -> Result<u8> {
    let m = load(file)?.metric()?;
    let c = decompose(&m)?;
    emit(&format::certificate_json(&c), out)?;
    Ok(finish(&c.checks))
}

fn fuzz(seed: u64, count: usize, max_dim: usize) -> Result<u8> {
    let mut rng = random::seeded(seed);
    let mut failed = 0;
    for i in 0..count {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let g = random::random_twisted(&mut rng, n, max_dim.max(n));
        let r = random::invariant_suite(&mut rng, &g)?;
        match r.first_failure() {
            None => println!("{i:4} {}: PASS ({} checks)", g.name, r.checks.len()),
            Some(c) => {
                failed += 1;
                println!("{i:4} {}: FAIL {}: {}", g.name, c.name, c.witness.clone().unwrap_or_default());
            }
        }
    }
    println!("{} of {count} passed (seed {seed})", count - failed);
    Ok(u8::from(failed > 0))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify { file, metric, json } => verify(&file, metric, json),
        Command::Cohomology { file, m, rep, parity, dump } => cohomology(&file, m, rep, parity, dump.as_deref()),
        Command::Series { file } => series(&file),
        Command::Twist { file, endo, out } => twist(&file, &endo, out.as_deref()),
        Command::Extend { datum, out } => extend(&datum, out.as_deref()),
        Command::Tstar { file, theta, out } => tstar(&file, &theta, out.as_deref()),
        Command::Equiv { file, theta1, theta2 } => equiv(&file, &theta1, &theta2),
        Command::Decompose { file, out } => decompose_cmd(&file, out.as_deref()),
        Command::Fuzz { seed, count, max_dim } => fuzz(seed, count, max_dim),
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("NAMBU_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Ignored if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
