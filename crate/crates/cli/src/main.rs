//! `sl3mtc` command-line front end.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sl3mtc::alcove::alcove_weights;
use sl3mtc::condense::{condensed_modular, modular_invariant, simplicity_certificate, CondensedData};
use sl3mtc::fusion::{FusionRules, FusionTable};
use sl3mtc::modular::{level_modular_data, render_value};
use sl3mtc::verify::{ReportDocument, VerifyParams};
use sl3mtc::witt::{resolve_label, run_full_ledger, Verdict};

#[derive(Parser)]
#[command(name = "sl3mtc", version, about = "Modular data, condensation and Witt-class checks for C(sl3,k)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Emit JSON (the default for data commands).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV with float columns.
    #[arg(long)]
    csv: bool,
    /// Include exact cyclotomic values.
    #[arg(long)]
    exact: bool,
    /// Include float renderings.
    #[arg(long)]
    float: bool,
    /// Significant digits for floats.
    #[arg(long, default_value_t = 12)]
    precision: u32,
    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

impl Output {
    /// Both renderings unless one is asked for.
    fn parts(&self) -> (bool, bool) {
        if self.exact || self.float {
            (self.exact, self.float)
        } else {
            (true, true)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the dominant weights of a level.
    Alcove {
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Fusion coefficients of a level.
    Fusion {
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Twists, dimensions, S-matrix and charge of a level.
    Modular {
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Simples, dimensions and twists of the condensed category at level 3m.
    Condense {
        #[arg(long)]
        level: u32,
        /// Include the resolved fusion table and modular data (levels 3 and 6).
        #[arg(long)]
        resolved: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Simplicity certificate for the condensed category at level 3m.
    Certify {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Modular invariant from the condensation at a level divisible by 3.
    Invariant {
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Central-charge ledger.
    Witt {
        /// Check every registered relation against the shipped pattern.
        #[arg(long)]
        check_all: bool,
        /// Resolve a single label.
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = VerifyParams::DEFAULT.max_level)]
        max_level: u32,
        #[arg(long, default_value_t = VerifyParams::DEFAULT.max_m)]
        max_m: u32,
        #[command(flatten)]
        out: Output,
    },
}

type Outcome = Result<(String, bool), sl3mtc::Error>;

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialise") + "\n"
}

fn float(x: f64, precision: u32) -> String {
    format!("{:.*e}", precision.saturating_sub(1) as usize, x)
}

fn alcove(level: u32, out: &Output) -> Outcome {
    let set = alcove_weights(level)?;
    if out.csv {
        let mut s = String::from("m1,m2\n");
        for w in set.iter() {
            s += &format!("{},{}\n", w.m1, w.m2);
        }
        return Ok((s, true));
    }
    Ok((pretty(&json!({ "level": level, "count": set.len(), "weights": set.weights })), true))
}

fn fusion(level: u32, out: &Output) -> Outcome {
    let table = FusionTable::build(level)?;
    if out.csv {
        let mut s = String::from("a,b,c,n\n");
        for (a, b, c, n) in table.nonzero() {
            s += &format!("\"{a}\",\"{b}\",\"{c}\",{n}\n");
        }
        return Ok((s, true));
    }
    Ok((pretty(&serde_json::to_value(&table).expect("tables serialise")), true))
}

fn modular(level: u32, out: &Output) -> Outcome {
    let (_, data) = level_modular_data(level)?;
    if out.csv {
        let p = out.precision;
        let mut s = String::from("label,dim,twist_re,twist_im\n");
        for i in 0..data.rank() {
            let t = data.twists[i].to_c64();
            s += &format!(
                "\"{}\",{},{},{}\n",
                data.labels[i],
                float(data.dims[i].to_c64().re, p),
                float(t.re, p),
                float(t.im, p)
            );
        }
        return Ok((s, true));
    }
    let (exact, flt) = out.parts();
    Ok((pretty(&data.to_json(exact, flt, out.precision)), true))
}

fn condense(level: u32, resolved: bool, out: &Output) -> Outcome {
    let data = CondensedData::build(level)?;
    let (exact, flt) = out.parts();
    let p = out.precision;
    if out.csv {
        let mut s = String::from("simple,dim,twist_re,twist_im\n");
        for (i, simple) in data.simples.iter().enumerate() {
            let t = data.twists[i].to_c64();
            s += &format!("{simple},{},{},{}\n", float(data.dims[i].to_c64().re, p), float(t.re, p), float(t.im, p));
        }
        return Ok((s, true));
    }
    let render = |c| render_value(c, exact, flt, p);
    let mut doc = json!({
        "level": level,
        "simples": data.simples,
        "names": data.simples.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "dims": data.dims.iter().map(render).collect::<Vec<_>>(),
        "twists": data.twists.iter().map(render).collect::<Vec<_>>(),
        "global_dim": render(&data.global_dim()),
        "branching": data.branching,
    });
    if resolved {
        let table = data.resolved.as_ref().ok_or(sl3mtc::Error::ResolutionUnavailable(level))?;
        let n = table.rank();
        let products: Vec<Vec<Vec<(usize, u32)>>> = (0..n).map(|a| (0..n).map(|b| table.product(a, b)).collect()).collect();
        doc["products"] = json!(products);
        doc["modular"] = condensed_modular(level)?.to_json(exact, flt, p);
    }
    Ok((pretty(&doc), true))
}

fn certify(m: u32) -> Outcome {
    let cert = simplicity_certificate(m)?;
    let ok = cert.as_expected();
    Ok((pretty(&serde_json::to_value(&cert).expect("certificates serialise")), ok))
}

fn invariant(level: u32, out: &Output) -> Outcome {
    let report = modular_invariant(level)?;
    if out.csv {
        let s: String = report
            .z
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(",") + "\n")
            .collect();
        return Ok((s, report.passed));
    }
    Ok((pretty(&serde_json::to_value(&report).expect("reports serialise")), report.passed))
}

fn witt(check_all: bool, label: Option<&str>, out: &Output) -> Outcome {
    if let Some(label) = label {
        let entry = resolve_label(label)?;
        return Ok((pretty(&serde_json::to_value(&entry).expect("entries serialise")), true));
    }
    let report = run_full_ledger()?;
    if check_all {
        if out.csv {
            let mut s = String::from("relation,source,residue,verdict\n");
            for v in &report.verdicts {
                let verdict = if v.verdict == Verdict::Flagged { "FLAGGED" } else { "consistent" };
                s += &format!("\"{}\",{},{},{verdict}\n", v.relation, v.source, v.residue);
            }
            return Ok((s, report.pattern_matches));
        }
        let verdicts = serde_json::to_value(&report.verdicts).expect("verdicts serialise");
        return Ok((pretty(&verdicts), report.pattern_matches));
    }
    Ok((pretty(&serde_json::to_value(&report).expect("reports serialise")), report.pattern_matches))
}

fn verify_all(max_level: u32, max_m: u32, out: &Output) -> Outcome {
    let doc = ReportDocument::run(VerifyParams { max_level, max_m });
    let ok = doc.all_passed();
    if out.json {
        return Ok((pretty(&serde_json::to_value(&doc).expect("reports serialise")), ok));
    }
    let mut s = String::new();
    for (line, c) in doc.summary_lines().into_iter().zip(&doc.criteria) {
        s += &line;
        s.push('\n');
        for d in c.details.iter().filter(|d| d.starts_with("FAIL")) {
            s += &format!("    {d}\n");
        }
        for f in &c.flagged {
            s += &format!("    FLAGGED {}: {}\n", f.item, f.value);
        }
    }
    s += &format!("{} passed, {} failed\n", doc.passed, doc.failed);
    Ok((s, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Alcove { level, out } => (alcove(*level, out), out),
        Command::Fusion { level, out } => (fusion(*level, out), out),
        Command::Modular { level, out } => (modular(*level, out), out),
        Command::Condense { level, resolved, out } => (condense(*level, *resolved, out), out),
        Command::Certify { m, out } => (certify(*m), out),
        Command::Invariant { level, out } => (invariant(*level, out), out),
        Command::Witt { check_all, label, out } => (witt(*check_all, label.as_deref(), out), out),
        Command::VerifyAll { max_level, max_m, out } => (verify_all(*max_level, *max_m, out), out),
    };
    match result {
        Ok((text, expected)) => {
            let written = match &out.out {
                Some(path) => fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                println!("{}", json!({ "error": format!("cannot write output: {e}") }));
                return ExitCode::from(1);
            }
            if expected { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(e) => {
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
