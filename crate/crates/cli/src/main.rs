use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tdli::congruence::{enumerate_congruences, Congruence};
use tdli::filter::{eval_t_term, enumerate_filters, FilterKind, SubsetWitness};
use tdli::format::{emit_algebra, parse_algebra, JsonReport};
use tdli::kalman::{center_c, equivalence_report, kalman_k, EquivalenceSide};
use tdli::tense::enumerate_tense_structures;
use tdli::{check_profile, find_isomorphism, sym, Algebra, Error, Family, Profile};

/// Model checker for finite tense algebras with implication.
#[derive(Parser)]
#[command(name = "tdli", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the result to FILE instead of stdout.
    #[arg(short = 'o', long = "output", value_name = "FILE", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra against a profile (default: its declared one).
    Check {
        file: PathBuf,
        #[arg(long)]
        profile: Option<Profile>,
    },
    /// Kalman construction K(L) of a tense DLI+ algebra.
    Kalman { file: PathBuf },
    /// Center C(U) of a tense centered KI-algebra.
    Center { file: PathBuf },
    /// List congruences or the subsets they correspond to.
    Congruences {
        file: PathBuf,
        #[arg(long = "as", value_enum, default_value_t = Listing::Congruences)]
        listing: Listing,
    },
    /// Check that the unit of the K/C adjunction is an isomorphism.
    VerifyEquivalence { file: PathBuf },
    /// Enumerate tense structures on an algebra's lattice and implication.
    EnumerateTense {
        file: PathBuf,
        /// Do not require G(0) = H(0) = 0.
        #[arg(long)]
        no_t0: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Search for an isomorphism between two algebras.
    Iso { left: PathBuf, right: PathBuf },
    /// Evaluate t(x, y, z) = ((x ∧ z) ⇒ y) ⇒ (x ⇒ y).
    TTerm {
        file: PathBuf,
        x: String,
        y: String,
        z: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Listing {
    Congruences,
    Filters,
    DeductiveSystems,
}

/// What a subcommand produced.
struct Output {
    text: String,
    /// Pretty-printed JSON document.
    json: String,
    /// Whether every checked property held.
    ok: bool,
}

impl Output {
    fn passed(text: String, json: Value) -> Self {
        Output {
            text,
            json: pretty(&json),
            ok: true,
        }
    }
}

/// Exit 1 errors are property failures; exit 2 errors are bad input.
enum Failure {
    Property(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PreconditionUnverified(_) | Error::Counterexample(_) | Error::CenterNotClosed { .. } => {
                Failure::Property(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn load(path: &Path) -> Result<Algebra, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn element(a: &Algebra, name: &str) -> Result<usize, Failure> {
    a.lattice()
        .index_of(name)
        .ok_or_else(|| Failure::Input(format!("`{}` has no element `{name}`", a.name())))
}

fn names(a: &Algebra, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| a.element_name(x).to_string()).collect()
}

fn braces(v: &[String]) -> String {
    format!("{{{}}}", v.join(", "))
}

fn check(a: &Algebra, profile: Profile) -> Result<Output, Failure> {
    let r = check_profile(a, profile)?;
    let report = JsonReport::new(a, profile, &r);
    let mut text = format!("{} against {profile}\n", a.name());
    for ax in &report.axioms {
        if ax.holds {
            text += &format!("  {} holds\n", ax.id);
        } else {
            text += &format!("  {} FAILS at ({})\n", ax.id, ax.witness.join(", "));
        }
    }
    text += &format!("{} checked, {} failed\n", report.summary.checked, report.summary.failed);
    Ok(Output {
        text,
        ok: report.summary.failed == 0,
        json: pretty(&report),
    })
}

fn construction(a: Algebra) -> Output {
    let text = emit_algebra(&a);
    let json = json!({ "algebra": a.name(), "profile": a.profile().id(), "text": text });
    Output::passed(text, json)
}

fn listing(a: &Algebra, how: Listing) -> Result<Output, Failure> {
    let subsets = |kind: FilterKind| -> Result<(String, Vec<Vec<String>>), Failure> {
        let found: Vec<SubsetWitness> = enumerate_filters(a, kind)?;
        Ok((kind.id().to_string(), found.into_iter().map(|s| names(a, s.members)).collect()))
    };
    let (kind, items) = match how {
        Listing::Congruences => {
            let cs: Vec<Congruence> = enumerate_congruences(a);
            let blocks = cs
                .iter()
                .map(|c| c.blocks().into_iter().map(|b| braces(&names(a, b))).collect())
                .collect();
            ("congruence".to_string(), blocks)
        }
        Listing::Filters if a.profile().family() == Family::Dli && a.has_op(sym::G) => {
            subsets(FilterKind::TenseOneFilter)?
        }
        Listing::Filters => subsets(FilterKind::OneFilter)?,
        Listing::DeductiveSystems => subsets(FilterKind::CenteredTenseDs)?,
    };
    let mut text = format!("{kind} of {}: {}\n", a.name(), items.len());
    for item in &items {
        match how {
            Listing::Congruences => text += &format!("  {}\n", item.join(" ")),
            _ => text += &format!("  {}\n", braces(item)),
        }
    }
    let json = json!({ "algebra": a.name(), "kind": kind, "count": items.len(), "items": items });
    Ok(Output::passed(text, json))
}

fn verify_equivalence(a: &Algebra) -> Result<Output, Failure> {
    let side = match a.profile().family() {
        Family::Dli => EquivalenceSide::Dli,
        Family::Kleene => EquivalenceSide::Ki,
    };
    let r = equivalence_report(a, side, None)?;
    let unit = if side == EquivalenceSide::Dli { "alpha" } else { "beta" };
    let target = &r.unit.target;
    let pairs: Vec<(String, String)> = (0..a.size())
        .map(|x| (a.element_name(x).to_string(), target.element_name(r.unit.map[x]).to_string()))
        .collect();
    let mut text = format!("{unit} for {}\n", a.name());
    for (x, y) in &pairs {
        text += &format!("  {x} -> {y}\n");
    }
    text += &format!("isomorphism: {}\n", r.isomorphism);
    let json = json!({
        "algebra": a.name(),
        "unit": unit,
        "map": pairs.iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>(),
        "isomorphism": r.isomorphism,
    });
    Ok(Output {
        text,
        json: pretty(&json),
        ok: r.passed(),
    })
}

fn enumerate_tense(a: &Algebra, no_t0: bool, limit: Option<usize>) -> Result<Output, Failure> {
    let qs = enumerate_tense_structures(a, !no_t0, limit)?;
    let mut text = format!("tense structures on {}: {}\n", a.name(), qs.len());
    let mut items = Vec::new();
    for q in &qs {
        let row = |t: &[usize]| names(a, t.iter().copied()).join(" ");
        text += &format!("  G: {} | H: {} | F: {} | P: {}\n", row(&q.g), row(&q.h), row(&q.f), row(&q.p));
        items.push(json!({
            "G": names(a, q.g.iter().copied()),
            "H": names(a, q.h.iter().copied()),
            "F": names(a, q.f.iter().copied()),
            "P": names(a, q.p.iter().copied()),
        }));
    }
    let json = json!({ "algebra": a.name(), "t0": !no_t0, "count": qs.len(), "structures": items });
    Ok(Output::passed(text, json))
}

fn iso(a: &Algebra, b: &Algebra) -> Result<Output, Failure> {
    let found = find_isomorphism(a, b)?;
    let Some(m) = found else {
        let text = format!("no isomorphism from {} to {}\n", a.name(), b.name());
        let json = json!({ "left": a.name(), "right": b.name(), "isomorphism": null });
        return Ok(Output {
            text,
            json: pretty(&json),
            ok: false,
        });
    };
    let pairs: Vec<(String, String)> = (0..a.size())
        .map(|x| (a.element_name(x).to_string(), b.element_name(m.map[x]).to_string()))
        .collect();
    let mut text = format!("isomorphism from {} to {}\n", a.name(), b.name());
    for (x, y) in &pairs {
        text += &format!("  {x} -> {y}\n");
    }
    let json = json!({
        "left": a.name(),
        "right": b.name(),
        "isomorphism": pairs.iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>(),
    });
    Ok(Output::passed(text, json))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check { file, profile } => {
            let a = load(file)?;
            check(&a, profile.unwrap_or(a.profile()))
        }
        Command::Kalman { file } => Ok(construction(kalman_k(&load(file)?)?)),
        Command::Center { file } => Ok(construction(center_c(&load(file)?)?)),
        Command::Congruences { file, listing: how } => listing(&load(file)?, *how),
        Command::VerifyEquivalence { file } => verify_equivalence(&load(file)?),
        Command::EnumerateTense { file, no_t0, limit } => enumerate_tense(&load(file)?, *no_t0, *limit),
        Command::Iso { left, right } => iso(&load(left)?, &load(right)?),
        Command::TTerm { file, x, y, z } => {
            let a = load(file)?;
            let v = eval_t_term(&a, element(&a, x)?, element(&a, y)?, element(&a, z)?)?;
            let name = a.element_name(v).to_string();
            let json = json!({ "algebra": a.name(), "args": [x, y, z], "value": name });
            Ok(Output::passed(format!("{name}\n"), json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(Failure::Property(msg)) => {
            eprintln!("tdli: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Input(msg)) => {
            eprintln!("tdli: {msg}");
            return ExitCode::from(2);
        }
    };
    let body = if cli.json {
        format!("{}\n", out.json)
    } else {
        out.text
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("tdli: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
