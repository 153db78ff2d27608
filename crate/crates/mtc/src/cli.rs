//! Command-line front end.
//!
//! Exit codes: 0 success/pass, 1 a check failed (validation, distinctness,
//! tolerance, structural defects in well-formed data), 2 input or parse
//! error (malformed files, unknown flags or labels, arithmetic limits).
//! Reports are deterministic; `--verbose` prepends tool info.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::characters;
use crate::extension;
use crate::family;
use crate::fermionic;
use crate::format::{self, scalar_report};
use crate::modular::ModularData;
use crate::superalg::{StabilityProfile, SuperAlgType};
use crate::Error;

#[derive(Parser)]
#[command(name = "mtc", version, about = "exact fermionic modular tensor category data")]
struct Cli {
    /// add tool info to reports
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the modular axioms of a data file
    Check { file: PathBuf },
    /// Print the fusion rules (stored, or derived via Verlinde)
    Fusion { file: PathBuf },
    /// List the fermions of the data
    Fermions { file: PathBuf },
    /// Mueger centralizer of a comma-separated set of labels
    Centralizer {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        of: Vec<String>,
    },
    /// Sector grading and super-modularity of the fermion's centralizer
    Supermodular {
        file: PathBuf,
        #[arg(long)]
        fermion: String,
    },
    /// Gauss sum of the data
    Gauss {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: i64,
    },
    /// Construct the free-fermion family member F_l
    Ising {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Extend a graded category by F_l (object-level data)
    Extend {
        file: PathBuf,
        #[arg(long)]
        fermion: String,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// The sixteen extensions and their Gauss sums
    Sixteen {
        file: PathBuf,
        #[arg(long)]
        fermion: String,
    },
    /// Free-fermion characters at a point of the upper half plane
    Chars {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        terms: u32,
        #[arg(long)]
        check_s: bool,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Superalgebra-type and stability-profile calculus
    Superalg {
        #[arg(long)]
        op: String,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
    },
}

/// Run with explicit output; returns the process exit code.
pub fn run_with_output(args: Vec<String>, out: &mut dyn Write) -> i32 {
    let mut argv = vec!["mtc".to_string()];
    argv.extend(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    if cli.verbose {
        let _ = writeln!(out, "# mtc {}", env!("CARGO_PKG_VERSION"));
    }
    match dispatch(&cli.cmd, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            match e {
                Error::NotModular(_) | Error::Structural(_) => 1,
                Error::Input(_) | Error::Parse(_) | Error::Arithmetic(_) | Error::Io(_) => 2,
            }
        }
    }
}

/// Run printing to stdout.
pub fn run(args: Vec<String>) -> i32 {
    let mut stdout = std::io::stdout();
    run_with_output(args, &mut stdout)
}

struct LoadedFile {
    name: String,
    data: ModularData,
    grading: Option<std::collections::BTreeMap<String, u8>>,
}

fn load_exact(path: &Path) -> Result<LoadedFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let parsed = format::parse_str(&text)?;
    let grading = parsed.grading.clone();
    let (name, data, _) = parsed.require_exact()?;
    Ok(LoadedFile { name, data, grading })
}

/// A grading stored in the file must agree with the one recomputed from the
/// fermion's centralizer.
fn check_stored_grading(file: &LoadedFile, g: &fermionic::GradedData) -> Result<(), Error> {
    let Some(stored) = &file.grading else {
        return Ok(());
    };
    for (i, label) in file.data.labels.iter().enumerate() {
        if let Some(&v) = stored.get(label) {
            if v != g.sector[i] {
                return Err(Error::structural(format!(
                    "stored grading assigns sector {v} to {label}, computed sector {}",
                    g.sector[i]
                )));
            }
        }
    }
    Ok(())
}

fn label_index(data: &ModularData, label: &str) -> Result<usize, Error> {
    data.labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::input(format!("unknown label {label:?}")))
}

fn parse_tau(text: &str) -> Result<Complex64, Error> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::input(format!("cannot parse tau {text:?}; expected RE+IMi"));
    if s.is_empty() {
        return Err(bad());
    }
    if !s.ends_with('i') {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    }
    let t = &s[..s.len() - 1];
    if t.is_empty() {
        return Ok(Complex64::new(0.0, 1.0));
    }
    // split at the last +/- that is neither leading nor an exponent sign
    let bytes = t.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    let (re_part, im_part) = match split {
        Some(i) => (&t[..i], &t[i..]),
        None => ("0", t),
    };
    let re = re_part.parse::<f64>().map_err(|_| bad())?;
    let im = match im_part {
        "+" | "" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_superalg_type(text: &str) -> Result<SuperAlgType, Error> {
    let bad = || Error::input(format!("cannot parse type {text:?}; expected Q:k or M:m,n"));
    let (kind, params) = text.split_once(':').ok_or_else(bad)?;
    match kind {
        "Q" | "q" => SuperAlgType::q(params.parse().map_err(|_| bad())?),
        "M" | "m" => {
            let (m, n) = params.split_once(',').ok_or_else(bad)?;
            SuperAlgType::m(m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?)
        }
        _ => Err(bad()),
    }
}

fn parse_profile(text: &str) -> Result<StabilityProfile, Error> {
    let bad = || Error::input(format!("cannot parse profile {text:?}; expected pairs,stable"));
    let (p, s) = text.split_once(',').ok_or_else(bad)?;
    Ok(StabilityProfile::new(
        p.trim().parse().map_err(|_| bad())?,
        s.trim().parse().map_err(|_| bad())?,
    ))
}

fn print_object_table(out: &mut dyn Write, e: &extension::ExtensionData) -> std::io::Result<()> {
    writeln!(out, "objects {}", e.objects.len())?;
    for o in &e.objects {
        let orbit = match o.kind {
            extension::OrbitKind::Sector0Pair(id) => format!("pair:{id}"),
            extension::OrbitKind::QType => "q".to_string(),
            extension::OrbitKind::MPair(id) => format!("m:{id}"),
        };
        writeln!(
            out,
            "  {:<16} sector {} orbit {:<7} dim {} twist {}",
            o.label,
            o.sector,
            orbit,
            scalar_report(&o.dim),
            scalar_report(&o.twist)
        )?;
    }
    writeln!(out, "sector dim sums: {} | {}", scalar_report(&e.sector0_sum), scalar_report(&e.sector1_sum))?;
    writeln!(out, "tau_1 = {}", scalar_report(&e.gauss))
}

fn dispatch(cmd: &Cmd, out: &mut dyn Write) -> Result<bool, Error> {
    match cmd {
        Cmd::Check { file } => {
            let loaded = load_exact(file)?;
            let report = loaded.data.validate()?;
            writeln!(out, "check {}", loaded.name)?;
            for line in report.lines() {
                writeln!(out, "  {line}")?;
            }
            writeln!(out, "result: {}", if report.passed() { "PASS" } else { "FAIL" })?;
            Ok(report.passed())
        }
        Cmd::Fusion { file } => {
            let data = load_exact(file)?.data;
            let fusion = data.fusion_or_verlinde()?;
            for a in 0..data.rank() {
                for b in 0..data.rank() {
                    let mut terms = Vec::new();
                    for c in 0..data.rank() {
                        match fusion.get(a, b, c) {
                            0 => {}
                            1 => terms.push(data.labels[c].clone()),
                            m => terms.push(format!("{m}*{}", data.labels[c])),
                        }
                    }
                    let sum = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                    writeln!(out, "{} * {} = {}", data.labels[a], data.labels[b], sum)?;
                }
            }
            Ok(true)
        }
        Cmd::Fermions { file } => {
            let data = load_exact(file)?.data;
            let fermions = fermionic::find_fermions(&data)?;
            if fermions.is_empty() {
                writeln!(out, "(none)")?;
            } else {
                for f in fermions {
                    writeln!(out, "{}", data.labels[f])?;
                }
            }
            Ok(true)
        }
        Cmd::Centralizer { file, of } => {
            let data = load_exact(file)?.data;
            let targets: Vec<usize> = of
                .iter()
                .map(|l| label_index(&data, l))
                .collect::<Result<_, _>>()?;
            let central = fermionic::centralizer(&data, &targets)?;
            let names: Vec<&str> = central.iter().map(|&i| data.labels[i].as_str()).collect();
            writeln!(out, "{}", names.join(" "))?;
            Ok(true)
        }
        Cmd::Supermodular { file, fermion } => {
            let loaded = load_exact(file)?;
            let data = &loaded.data;
            let f = label_index(data, fermion)?;
            let g = fermionic::sector_grading(data, f)?;
            check_stored_grading(&loaded, &g)?;
            writeln!(out, "supermodular {} fermion {fermion}", loaded.name)?;
            let s0: Vec<&str> =
                g.sector_indices(0).iter().map(|&i| data.labels[i].as_str()).collect();
            let s1: Vec<&str> =
                g.sector_indices(1).iter().map(|&i| data.labels[i].as_str()).collect();
            writeln!(out, "  sector 0: {}", s0.join(" "))?;
            writeln!(out, "  sector 1: {}", s1.join(" "))?;
            // the minimal-extension report embeds the super-modularity checks
            let report = fermionic::check_minimal_extension(&g)?;
            for line in report.lines() {
                writeln!(out, "  {line}")?;
            }
            writeln!(out, "result: {}", if report.passed() { "PASS" } else { "FAIL" })?;
            Ok(report.passed())
        }
        Cmd::Gauss { file, degree } => {
            let data = load_exact(file)?.data;
            let tau = data.gauss_sum(*degree)?;
            writeln!(out, "tau_{degree} = {}", scalar_report(&tau))?;
            Ok(true)
        }
        Cmd::Ising { l, emit } => {
            let g = family::ising_like(*l)?;
            let name = format!("F_{l}");
            let dims = g.base.quantum_dims()?;
            writeln!(out, "{name}: rank {}", g.base.rank())?;
            for (i, label) in g.base.labels.iter().enumerate() {
                writeln!(
                    out,
                    "  {:<8} sector {} dim {} twist {}",
                    label,
                    g.sector[i],
                    scalar_report(&dims[i]),
                    scalar_report(&g.base.twists[i])
                )?;
            }
            writeln!(out, "tau_1 = {}", scalar_report(&g.base.gauss_sum(1)?))?;
            if let Some(path) = emit {
                let text = format::emit(&g.base, &name, Some(&g))?;
                std::fs::write(path, text)?;
                writeln!(out, "wrote {}", path.display())?;
            }
            Ok(true)
        }
        Cmd::Extend { file, fermion, l, emit } => {
            let loaded = load_exact(file)?;
            let f = label_index(&loaded.data, fermion)?;
            let g = fermionic::sector_grading(&loaded.data, f)?;
            check_stored_grading(&loaded, &g)?;
            let e = extension::extend(&g, *l)?;
            writeln!(out, "extend {} by F_{l}", loaded.name)?;
            print_object_table(out, &e)?;
            if let Some(path) = emit {
                let text = format::emit_extension(&e, &format!("{}+{l}", loaded.name))?;
                std::fs::write(path, text)?;
                writeln!(out, "wrote {}", path.display())?;
            }
            Ok(true)
        }
        Cmd::Sixteen { file, fermion } => {
            let loaded = load_exact(file)?;
            let f = label_index(&loaded.data, fermion)?;
            let g = fermionic::sector_grading(&loaded.data, f)?;
            check_stored_grading(&loaded, &g)?;
            let table = extension::sixteen_table(&g)?;
            writeln!(out, "sixteen extensions of {}", loaded.name)?;
            writeln!(out, "  l   objects q m-pairs tau_1")?;
            for row in &table.rows {
                writeln!(
                    out,
                    "  {:<3} {:<7} {} {:<7} {}",
                    row.l,
                    row.objects,
                    row.qtype,
                    row.mpairs,
                    scalar_report(&row.gauss)
                )?;
            }
            writeln!(out, "distinct gauss sums: {}", if table.distinct { "yes" } else { "NO" })?;
            writeln!(
                out,
                "ratios are e^(2 pi i l/16): {}",
                if table.ratios_ok { "yes" } else { "NO" }
            )?;
            Ok(table.passed())
        }
        Cmd::Chars { l, tau, terms, check_s, tol } => {
            let tau = parse_tau(tau)?;
            let chi = characters::character_vector(*l, tau, *terms)?;
            let labels = family::ising_like(*l)?.base.labels;
            for (label, value) in labels.iter().zip(chi.iter()) {
                writeln!(out, "chi[{label}] = {:.12} + {:.12}i", value.re, value.im)?;
            }
            if *check_s {
                let report = characters::check_s_transform(*l, tau, *terms, *tol)?;
                writeln!(
                    out,
                    "s-transform max residual {:.3e}, eta residual {:.3e}, tol {:.1e}: {}",
                    report.max_residual,
                    report.eta_residual,
                    report.tol,
                    if report.passed { "PASS" } else { "FAIL" }
                )?;
                return Ok(report.passed);
            }
            Ok(true)
        }
        Cmd::Superalg { op, a, b, u, v } => match op.as_str() {
            "tensor" => {
                let a = parse_superalg_type(
                    a.as_deref().ok_or_else(|| Error::input("--a is required for tensor"))?,
                )?;
                let b = parse_superalg_type(
                    b.as_deref().ok_or_else(|| Error::input("--b is required for tensor"))?,
                )?;
                writeln!(out, "{} (x) {} = {}", a, b, a.tensor(&b))?;
                Ok(true)
            }
            "profile" => {
                let u = parse_profile(
                    u.as_deref().ok_or_else(|| Error::input("--u is required for profile"))?,
                )?;
                let v = parse_profile(
                    v.as_deref().ok_or_else(|| Error::input("--v is required for profile"))?,
                )?;
                writeln!(out, "{} x {} = {}", u, v, u.product(&v))?;
                Ok(true)
            }
            other => Err(Error::input(format!("unknown superalg op {other:?}"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_parser_forms() {
        assert_eq!(parse_tau("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_tau("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_tau("0.4i").unwrap(), Complex64::new(0.0, 0.4));
        assert_eq!(parse_tau("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_tau("0.5-0.3i").unwrap(), Complex64::new(0.5, -0.3));
        assert_eq!(parse_tau("-0.5+1.7i").unwrap(), Complex64::new(-0.5, 1.7));
        assert!(parse_tau("xyz").is_err());
    }

    #[test]
    fn superalg_parsers() {
        assert_eq!(parse_superalg_type("Q:2").unwrap(), SuperAlgType::q(2).unwrap());
        assert_eq!(parse_superalg_type("M:1,1").unwrap(), SuperAlgType::m(1, 1).unwrap());
        assert!(parse_superalg_type("X:1").is_err());
        assert_eq!(parse_profile("1,0").unwrap(), StabilityProfile::new(1, 0));
    }
}
