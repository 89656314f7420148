//! Command-line front end: enumeration, Hilbert series, presentation
//! verification, operad-law checks, bijections and rewriting traces.
//!
//! Exit codes: 0 on success (and verified checks), 1 when a check fails,
//! 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use word_operads::axioms;
use word_operads::bijections as bij;
use word_operads::families::{
    enumerate_by_membership, generate_by_arity, hilbert_prefix, EnumerationTable, FamilyId,
};
use word_operads::monoid::MonoidSpec;
use word_operads::presentations::{self, Presentation};
use word_operads::rewrite::{normalize_trace, RewriteSystem, DEFAULT_STEP_CAP};
use word_operads::tree::SyntaxTree;
use word_operads::word::OperadWord;

#[derive(Parser)]
#[command(
    name = "word-operads",
    version,
    about = "Operads of words over a monoid: enumeration, presentations, bijections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Membership,
    Generate,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the elements of a family arity by arity.
    Enumerate {
        /// Family name: end, pf, pw, per, prt, fcat:<k>, schr, motz, comp,
        /// da, scomp, di, tr.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        max_arity: usize,
        /// Print counts without the element lists.
        #[arg(long)]
        counts_only: bool,
        /// Cap on letter values (defaults to the family's own bound).
        #[arg(long)]
        letter_cap: Option<u64>,
        /// Enumerate through the membership test or build from generators.
        #[arg(long, value_enum, default_value = "membership")]
        method: Method,
        /// Show letters shifted up by one.
        #[arg(long)]
        untwist: bool,
        /// Compare the counts against a row of an expectations file.
        #[arg(long)]
        expect: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the first coefficients of a family's Hilbert series.
    Hilbert {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        max_arity: usize,
        #[arg(long)]
        expect: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify a cataloged presentation against its family.
    VerifyPresentation {
        /// Presentation name: prt, fcat, schr, motz, comp, da, scomp, dias,
        /// trias.
        #[arg(long)]
        name: String,
        /// Parameter for fcat.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 6)]
        max_arity: usize,
        /// Replace relations and orientation by the rules in a file.
        #[arg(long)]
        rules_file: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the operad-law suites on a word operad.
    CheckAxioms {
        /// Monoid spec: add, cyclic:<L>, mult.
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 3)]
        arity_cap: usize,
        #[arg(long, default_value_t = 2)]
        letter_cap: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        random_cases: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Map a word to its combinatorial object, or back with --inverse.
    Bijection {
        #[arg(long)]
        family: String,
        /// Word literal (digits, or comma-separated letters).
        #[arg(long)]
        word: Option<String>,
        /// Convert an object back to its word.
        #[arg(long)]
        inverse: bool,
        /// JSON rendering of the object (for --inverse).
        #[arg(long)]
        object: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rewrite a tree to its normal form under a presentation's orientation.
    Rewrite {
        /// Presentation selector such as `comp` or `fcat:1`.
        #[arg(long)]
        presentation: Option<String>,
        /// Rules file (lines `lhs -> rhs`) instead of a presentation.
        #[arg(long)]
        rules_file: Option<PathBuf>,
        /// Tree in term syntax, e.g. `g00(g00(L,L),L)`.
        #[arg(long)]
        tree: String,
        /// Print every intermediate tree.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(output: &OutputArgs, content: String) -> ExitCode {
    let content = if content.ends_with('\n') {
        content
    } else {
        content + "\n"
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = fs::write(path, content) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        None => {
            print!("{content}");
            ExitCode::SUCCESS
        }
    }
}

fn load_expected_row(path: &PathBuf, key: &str) -> Result<Vec<u64>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let name = parts.next().unwrap_or_default();
        if name == key {
            return parts
                .map(|p| p.parse::<u64>().map_err(|e| format!("bad count `{p}`: {e}")))
                .collect();
        }
    }
    Err(format!("no row `{key}` in {}", path.display()))
}

/// Compare computed counts against an expected row; reports the first
/// diverging arity.
fn check_expectation(counts: &[u64], expected: &[u64]) -> Result<usize, String> {
    let overlap = counts.len().min(expected.len());
    for n in 0..overlap {
        if counts[n] != expected[n] {
            return Err(format!(
                "first divergence at arity {}: computed {}, expected {}",
                n + 1,
                counts[n],
                expected[n]
            ));
        }
    }
    Ok(overlap)
}

fn render_table(table: &EnumerationTable, counts_only: bool, untwist: bool) -> String {
    let mut out = format!("family: {}\n", table.family);
    out.push_str("arity  count  elements\n");
    for (n, elems) in &table.levels {
        let rendered = if counts_only {
            String::new()
        } else {
            elems
                .iter()
                .map(|w| {
                    if untwist {
                        w.untwisted_string()
                    } else {
                        w.to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!("{n:>5}  {:>5}  {rendered}\n", elems.len()));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    family: &str,
    max_arity: usize,
    counts_only: bool,
    letter_cap: Option<u64>,
    method: Method,
    untwist: bool,
    expect: Option<&PathBuf>,
    output: &OutputArgs,
) -> ExitCode {
    let family = match FamilyId::parse(family) {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    if max_arity < 1 {
        return usage_error("--max-arity must be at least 1");
    }
    let table = match method {
        Method::Membership => enumerate_by_membership(family, max_arity, letter_cap),
        Method::Generate => match generate_by_arity(family, max_arity) {
            Ok(t) => t,
            Err(e) => return usage_error(&e.to_string()),
        },
    };
    if let Some(path) = expect {
        let expected = match load_expected_row(path, &family.to_string()) {
            Ok(v) => v,
            Err(e) => return usage_error(&e),
        };
        if let Err(msg) = check_expectation(&table.counts(), &expected) {
            eprintln!("{family}: {msg}");
            return ExitCode::from(1);
        }
    }
    let content = match output.format {
        Format::Json => table.to_json(counts_only).to_string(),
        Format::Table => render_table(&table, counts_only, untwist),
    };
    emit(output, content)
}

fn cmd_hilbert(
    family: &str,
    max_arity: usize,
    expect: Option<&PathBuf>,
    output: &OutputArgs,
) -> ExitCode {
    let family = match FamilyId::parse(family) {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    if max_arity < 1 {
        return usage_error("--max-arity must be at least 1");
    }
    let counts = hilbert_prefix(family, max_arity);
    if let Some(path) = expect {
        let expected = match load_expected_row(path, &family.to_string()) {
            Ok(v) => v,
            Err(e) => return usage_error(&e),
        };
        if let Err(msg) = check_expectation(&counts, &expected) {
            eprintln!("{family}: {msg}");
            return ExitCode::from(1);
        }
    }
    let content = match output.format {
        Format::Json => {
            serde_json::json!({ "family": family.to_string(), "counts": counts }).to_string()
        }
        Format::Table => {
            let joined = counts
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            format!("family: {family}\ncounts: {joined}")
        }
    };
    emit(output, content)
}

fn parse_presentation_selector(sel: &str) -> Result<Presentation, String> {
    let (name, k) = match sel.split_once(':') {
        Some((n, kk)) => {
            let k: u32 = kk.parse().map_err(|_| format!("bad parameter in `{sel}`"))?;
            (n, Some(k))
        }
        None => (sel, None),
    };
    presentations::catalog(name, k).map_err(|e| e.to_string())
}

fn cmd_verify(
    name: &str,
    k: Option<u32>,
    max_arity: usize,
    rules_file: Option<&PathBuf>,
    output: &OutputArgs,
) -> ExitCode {
    let mut p = match presentations::catalog(name, k) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    if max_arity < 2 {
        return usage_error("--max-arity must be at least 2");
    }
    if let Some(path) = rules_file {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
        };
        let sys = match RewriteSystem::parse(&text) {
            Ok(s) => s,
            Err(e) => return usage_error(&e.to_string()),
        };
        if let Some(foreign) = sys
            .alphabet()
            .iter()
            .find(|s| !p.alphabet.contains(s))
        {
            return usage_error(&format!(
                "rules use symbol {foreign}/{} outside the {} alphabet",
                foreign.arity(),
                p.name
            ));
        }
        p.relations = sys
            .rules()
            .iter()
            .map(|r| (r.lhs().clone(), r.rhs().clone()))
            .collect();
        p.orientation = sys;
    }
    let report = match presentations::verify_presentation(&p, max_arity) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let verified = report.verified();
    let content = match output.format {
        Format::Json => serde_json::to_string(&report).unwrap(),
        Format::Table => {
            let mut out = format!("presentation: {} (target {})\n", report.name, report.target);
            out.push_str(&format!("soundness: {}\n", report.soundness));
            if let Some(f) = &report.failing_relation {
                out.push_str(&format!("failing relation {f}\n"));
            }
            if let Some(t) = report.termination_bounded {
                out.push_str(&format!("termination bounded: {t}\n"));
            }
            if let Some(m) = report.measure_certified {
                out.push_str(&format!("measure certified: {m}\n"));
            }
            out.push_str("arity  presented  dimension  match\n");
            for c in &report.counts {
                out.push_str(&format!(
                    "{:>5}  {:>9}  {:>9}  {}\n",
                    c.n, c.presented, c.dimension, c.matches
                ));
            }
            out.push_str(&format!("verified: {verified}\n"));
            out
        }
    };
    let code = emit(output, content);
    if code != ExitCode::SUCCESS {
        return code;
    }
    if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_check_axioms(
    monoid: &str,
    arity_cap: usize,
    letter_cap: u64,
    seed: u64,
    random_cases: u64,
    output: &OutputArgs,
) -> ExitCode {
    let spec = match MonoidSpec::parse(monoid) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    let exhaustive = axioms::exhaustive_suite(spec, arity_cap, letter_cap);
    let random = axioms::random_suite(spec, seed, random_cases);
    let pm = axioms::pm_suite(arity_cap.min(4));
    let all_pass = exhaustive.passed() && random.passed() && pm.passed();
    let content = match output.format {
        Format::Json => {
            let law_json = |r: &axioms::SuiteReport| {
                r.laws
                    .iter()
                    .map(|l| {
                        serde_json::json!({
                            "law": l.law,
                            "cases": l.cases,
                            "failure": l.failure,
                        })
                    })
                    .collect::<Vec<_>>()
            };
            serde_json::json!({
                "monoid": spec.to_string(),
                "exhaustive": law_json(&exhaustive),
                "random": law_json(&random),
                "pm": law_json(&pm),
                "pass": all_pass,
            })
            .to_string()
        }
        Format::Table => {
            let mut out = format!("monoid: {spec}\n");
            for (tag, suite) in [
                ("exhaustive", &exhaustive),
                ("random", &random),
                ("pm", &pm),
            ] {
                for law in &suite.laws {
                    out.push_str(&format!(
                        "{tag:>10}  {:<28} {:>9} cases  {}\n",
                        law.law,
                        law.cases,
                        match &law.failure {
                            None => "ok".to_string(),
                            Some(f) => format!("FAIL {f}"),
                        }
                    ));
                }
            }
            out.push_str(&format!("pass: {all_pass}\n"));
            out
        }
    };
    let code = emit(output, content);
    if code != ExitCode::SUCCESS {
        return code;
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn object_to_json(family: FamilyId, word: &OperadWord) -> Result<serde_json::Value, String> {
    let v = match family {
        FamilyId::Prt => bij::phi_prt(word).map(|t| t.to_json()),
        FamilyId::FCat(k) => bij::phi_fcat(k, word).map(|t| t.to_json()),
        FamilyId::Schr => bij::phi_schr(word).map(|t| t.to_json()),
        FamilyId::Motz => bij::phi_motz(word).map(|u| u.to_json()),
        FamilyId::Comp => bij::phi_comp(word).map(|d| d.to_json()),
        FamilyId::Da => bij::phi_da(word).map(|u| u.to_json()),
        FamilyId::SComp => bij::phi_scomp(word).map(|s| s.to_json()),
        other => return Err(format!("no object bijection for family {other}")),
    };
    v.map_err(|e| e.to_string())
}

fn object_from_json(family: FamilyId, value: &serde_json::Value) -> Result<OperadWord, String> {
    let w = match family {
        FamilyId::Prt => bij::PlanarRootedTree::from_json(value).map(|t| bij::phi_prt_inv(&t)),
        FamilyId::FCat(k) => {
            bij::KLeafyTree::from_json(value).and_then(|t| bij::phi_fcat_inv(k, &t))
        }
        FamilyId::Schr => bij::SchroderTree::from_json(value).and_then(|t| bij::phi_schr_inv(&t)),
        FamilyId::Motz => bij::MotzkinWord::from_json(value).map(|u| bij::phi_motz_inv(&u)),
        FamilyId::Comp => bij::RibbonDiagram::from_json(value).map(|d| bij::phi_comp_inv(&d)),
        FamilyId::Da => bij::MotzkinPrefix::from_json(value).map(|u| bij::phi_da_inv(&u)),
        FamilyId::SComp => {
            bij::SegmentedComposition::from_json(value).and_then(|s| bij::phi_scomp_inv(&s))
        }
        other => return Err(format!("no object bijection for family {other}")),
    };
    w.map_err(|e| e.to_string())
}

fn cmd_bijection(
    family: &str,
    word: Option<&String>,
    inverse: bool,
    object: Option<&String>,
    output: &OutputArgs,
) -> ExitCode {
    let family = match FamilyId::parse(family) {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    if inverse {
        let Some(text) = object else {
            return usage_error("--inverse needs --object <json>");
        };
        let value: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return usage_error(&format!("bad JSON object: {e}")),
        };
        let w = match object_from_json(family, &value) {
            Ok(w) => w,
            Err(e) => return usage_error(&e),
        };
        let content = match output.format {
            Format::Json => {
                serde_json::json!({ "family": family.to_string(), "word": w.to_string() })
                    .to_string()
            }
            Format::Table => format!("word: {w}"),
        };
        emit(output, content)
    } else {
        let Some(text) = word else {
            return usage_error("--word is required (or use --inverse --object)");
        };
        let w = match OperadWord::parse(family.monoid_spec(), text) {
            Ok(w) => w,
            Err(e) => return usage_error(&e.to_string()),
        };
        let obj = match object_to_json(family, &w) {
            Ok(v) => v,
            Err(e) => return usage_error(&e),
        };
        let content = match output.format {
            Format::Json => {
                serde_json::json!({
                    "family": family.to_string(),
                    "word": w.to_string(),
                    "object": obj,
                })
                .to_string()
            }
            Format::Table => format!("family: {family}\nword: {w}\nobject: {obj}"),
        };
        emit(output, content)
    }
}

fn cmd_rewrite(
    presentation: Option<&String>,
    rules_file: Option<&PathBuf>,
    tree: &str,
    trace: bool,
    step_cap: usize,
    output: &OutputArgs,
) -> ExitCode {
    let system = match (presentation, rules_file) {
        (Some(sel), None) => match parse_presentation_selector(sel) {
            Ok(p) => p.orientation,
            Err(e) => return usage_error(&e),
        },
        (None, Some(path)) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
            };
            match RewriteSystem::parse(&text) {
                Ok(s) => s,
                Err(e) => return usage_error(&e.to_string()),
            }
        }
        _ => return usage_error("exactly one of --presentation or --rules-file is required"),
    };
    let start = match SyntaxTree::parse(tree) {
        Ok(t) => t,
        Err(e) => return usage_error(&e.to_string()),
    };
    let chain = match normalize_trace(&start, &system, step_cap) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let content = match output.format {
        Format::Json => serde_json::json!({
            "steps": chain.len() - 1,
            "trace": if trace {
                Some(chain.iter().map(|t| t.to_string()).collect::<Vec<_>>())
            } else {
                None
            },
            "normal_form": chain.last().unwrap().to_string(),
        })
        .to_string(),
        Format::Table => {
            let mut out = String::new();
            if trace {
                for (i, t) in chain.iter().enumerate() {
                    out.push_str(&format!("step {i}: {t}\n"));
                }
            }
            out.push_str(&format!("normal form: {}\n", chain.last().unwrap()));
            out
        }
    };
    emit(output, content)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Enumerate {
            family,
            max_arity,
            counts_only,
            letter_cap,
            method,
            untwist,
            expect,
            output,
        } => cmd_enumerate(
            family,
            *max_arity,
            *counts_only,
            *letter_cap,
            *method,
            *untwist,
            expect.as_ref(),
            output,
        ),
        Command::Hilbert {
            family,
            max_arity,
            expect,
            output,
        } => cmd_hilbert(family, *max_arity, expect.as_ref(), output),
        Command::VerifyPresentation {
            name,
            k,
            max_arity,
            rules_file,
            output,
        } => cmd_verify(name, *k, *max_arity, rules_file.as_ref(), output),
        Command::CheckAxioms {
            monoid,
            arity_cap,
            letter_cap,
            seed,
            random_cases,
            output,
        } => cmd_check_axioms(monoid, *arity_cap, *letter_cap, *seed, *random_cases, output),
        Command::Bijection {
            family,
            word,
            inverse,
            object,
            output,
        } => cmd_bijection(family, word.as_ref(), *inverse, object.as_ref(), output),
        Command::Rewrite {
            presentation,
            rules_file,
            tree,
            trace,
            step_cap,
            output,
        } => cmd_rewrite(
            presentation.as_ref(),
            rules_file.as_ref(),
            tree,
            *trace,
            *step_cap,
            output,
        ),
    }
}
