//! staplekit: covering-knot constructions on PD diagrams with
//! machine-checkable certificates.
//!
//! Every subcommand writes a JSON report to stdout (or --out) and a short
//! human summary to stderr. Exit codes: 0 all requested checks passed,
//! 1 a mathematical check failed, 2 input error.

use clap::{Args, Parser, Subcommand};
use staplekit::construction::{
    amplify, build_cover_knot, untwisted_double, verify_fixture, CoverOptions, StapleFixture,
};
use staplekit::diagram::{dt_code, gauss_code, parse_gauss, Diagram};
use staplekit::error::Error;
use staplekit::fixtures;
use staplekit::group::{verify_epimorphism, wirtinger, GroupDesc, PeripheralMap, PolyJson, Word};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "staplekit",
    version,
    about = "covering-knot construction toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed recorded in reports; the pipeline is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node budget for diagram simplification (overrides STAPLEKIT_BUDGET).
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial of a knot diagram.
    Alex {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Insert one staple into the ball around every crossing.
    Staple {
        input: String,
        /// Attest that the input diagram is crossing-minimal.
        #[arg(long)]
        minimal: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build the covering knot for a surgery vector and verify it.
    Cover {
        input: String,
        /// Comma-separated 1/q surgery coefficients, one per crossing.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        q: Vec<i64>,
        /// Finite quotient battery, e.g. S3,S4,S5,D5,D7. Defaults to the
        /// full battery S3,S4,S5,A5 and odd dihedrals through D13.
        #[arg(long, value_delimiter = ',')]
        quotients: Option<Vec<String>>,
        /// Battery for per-stage certificates (defaults to --quotients).
        #[arg(long, value_delimiter = ',')]
        stage_quotients: Option<Vec<String>>,
        /// Skip the per-stage certificates.
        #[arg(long)]
        no_stages: bool,
        /// Attach a ribbon-concordance certificate.
        #[arg(long)]
        ribbon: bool,
        /// Attest that the input diagram is crossing-minimal.
        #[arg(long)]
        minimal: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Connected-sum amplification with a trivial-polynomial summand.
    Amplify {
        input: String,
        /// Summand diagram; builtin:double(<name>) builds an untwisted double.
        #[arg(long)]
        k0: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Cover plus ribbon certificate only.
    Ribbon {
        input: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        q: Vec<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Verify a peripheral epimorphism: identity between equal diagrams,
    /// or re-verify the map stored in a cover record.
    EpiCheck {
        /// Source diagram, or a cover-record JSON with --record.
        input: String,
        /// Target diagram (defaults to the source: identity check).
        target: Option<String>,
        /// Treat `input` as a cover record produced by `cover`.
        #[arg(long)]
        record: bool,
        #[arg(long, value_delimiter = ',')]
        quotients: Option<Vec<String>>,
        #[command(flatten)]
        common: Common,
    },
    /// Export a diagram as pd, gauss, or dt codes.
    Export {
        input: String,
        #[arg(long, default_value = "pd")]
        format: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the staple gates on a fixture against a host knot.
    VerifyFixture {
        /// Host knot diagram (default builtin:trefoil).
        #[arg(long, default_value = "builtin:trefoil")]
        host: String,
        /// Fixture name: default, meridian-circle, extra-pass, hook.
        #[arg(long, default_value = "default")]
        fixture: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    std::process::exit(code);
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NontrivialAmplifier(_) | Error::AlexanderAtOne(_) | Error::BadMeridianImage(_) => 1,
        _ => 2,
    }
}

fn load_diagram(source: &str) -> Result<Diagram, Error> {
    if let Some(name) = source.strip_prefix("builtin:") {
        if let Some(inner) = name
            .strip_prefix("double(")
            .and_then(|s| s.strip_suffix(')'))
        {
            let base = load_diagram(&format!("builtin:{inner}"))?;
            return untwisted_double(&base);
        }
        let text = fixtures::builtin(name)
            .ok_or_else(|| Error::Other(format!("no builtin diagram {name}")))?;
        return Diagram::parse_pd(text);
    }
    let text = std::fs::read_to_string(source)?;
    if text.trim_start().starts_with('G') {
        parse_gauss(&text)
    } else {
        Diagram::parse_pd(&text)
    }
}

fn load_fixture(name: &str) -> Result<StapleFixture, Error> {
    match name {
        "default" | "staple-v1" => Ok(StapleFixture::default_fixture()),
        "meridian-circle" => Ok(StapleFixture::meridian_circle()),
        "extra-pass" => Ok(StapleFixture::extra_pass()),
        "hook" => Ok(StapleFixture::hook()),
        path => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| Error::Other(format!("bad fixture file: {e}")))
        }
    }
}

fn parse_quotients(names: &[String]) -> Result<Vec<GroupDesc>, Error> {
    names.iter().map(|s| s.parse()).collect()
}

fn emit(common: &Common, json: &serde_json::Value) -> Result<(), Error> {
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(json).expect("report serializes")
    );
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn budget_of(common: &Common) -> usize {
    common
        .budget
        .unwrap_or_else(staplekit::diagram::default_budget)
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Alex { input, common } => {
            let d = load_diagram(&input)?;
            let delta = staplekit::group::alexander_polynomial(&d)?;
            let json = serde_json::json!({
                "schema": "staplekit.alex.v1",
                "name": d.name,
                "crossings": d.crossing_count(),
                "delta": serde_json::to_value(PolyJson::of(&delta)).unwrap(),
            });
            emit(&common, &json)?;
            eprintln!("Δ({}) = {}", d.name, delta);
            Ok(0)
        }
        Command::Staple {
            input,
            minimal,
            common,
        } => {
            let d = load_diagram(&input)?;
            let stapled = staplekit::construction::insert_staples(
                &d,
                &StapleFixture::default_fixture(),
                minimal,
            )?;
            let json = serde_json::json!({
                "schema": "staplekit.staple.v1",
                "name": d.name,
                "trivial": stapled.trivial,
                "minimality_attested": stapled.minimality_attested,
                "components": stapled.diagram.component_count(),
                "crossings": stapled.diagram.crossing_count(),
                "placements": serde_json::to_value(&stapled.placements).unwrap(),
                "pd": stapled.diagram.canonical_code(),
            });
            emit(&common, &json)?;
            eprintln!(
                "stapled {}: {} components, {} crossings{}",
                d.name,
                stapled.diagram.component_count(),
                stapled.diagram.crossing_count(),
                if stapled.trivial {
                    " (no crossings, unchanged)"
                } else {
                    ""
                }
            );
            Ok(0)
        }
        Command::Cover {
            input,
            q,
            quotients,
            stage_quotients,
            no_stages,
            ribbon,
            minimal,
            common,
        } => {
            let d = load_diagram(&input)?;
            let opts = CoverOptions {
                quotients: match &quotients {
                    Some(names) => parse_quotients(names)?,
                    None => staplekit::group::default_battery(),
                },
                stage_quotients: match &stage_quotients {
                    Some(names) => Some(parse_quotients(names)?),
                    None => None,
                },
                verify_stages: !no_stages,
                with_ribbon: ribbon,
                budget: budget_of(&common),
                seed: common.seed,
                minimality_attested: minimal,
            };
            let (_, record) = build_cover_knot(&d, &StapleFixture::default_fixture(), &q, &opts)?;
            let json = serde_json::to_value(&record).expect("record serializes");
            emit(&common, &json)?;
            let verdict = if record.verified { "pass" } else { "FAIL" };
            eprintln!(
                "cover of {}: {} crossings, certificate {}",
                record.input_name, record.cover_crossings, verdict
            );
            if record.verified {
                Ok(0)
            } else {
                let mut failing = Vec::new();
                if !record.certificate.verified {
                    failing.push("epimorphism certificate");
                }
                if !record.chain_consistent {
                    failing.push("chain consistency");
                }
                if record.ribbon.as_ref().is_some_and(|r| !r.verified) {
                    failing.push("ribbon certificate");
                }
                eprintln!("failing: {}", failing.join(", "));
                Ok(1)
            }
        }
        Command::Amplify {
            input,
            k0,
            n,
            common,
        } => {
            let d = load_diagram(&input)?;
            let summand = load_diagram(&k0)?;
            let before = staplekit::group::alexander_polynomial(&d)?;
            let amped = amplify(&d, &summand, n)?;
            let after = staplekit::group::alexander_polynomial(&amped)?;
            let preserved = before == after;
            let json = serde_json::json!({
                "schema": "staplekit.amplify.v1",
                "name": amped.name,
                "summands": n,
                "crossings": amped.crossing_count(),
                "delta_before": serde_json::to_value(PolyJson::of(&before)).unwrap(),
                "delta_after": serde_json::to_value(PolyJson::of(&after)).unwrap(),
                "delta_preserved": preserved,
                "pd": amped.canonical_code(),
            });
            emit(&common, &json)?;
            eprintln!("amplified {}: Δ preserved = {}", amped.name, preserved);
            Ok(if preserved { 0 } else { 1 })
        }
        Command::Ribbon { input, q, common } => {
            let d = load_diagram(&input)?;
            let opts = CoverOptions {
                quotients: Vec::new(),
                stage_quotients: None,
                verify_stages: false,
                with_ribbon: true,
                budget: budget_of(&common),
                seed: common.seed,
                minimality_attested: false,
            };
            let (_, record) = build_cover_knot(&d, &StapleFixture::default_fixture(), &q, &opts)?;
            let ribbon = record.ribbon.expect("requested ribbon certificate");
            let json = serde_json::to_value(&ribbon).expect("ribbon serializes");
            emit(&common, &json)?;
            eprintln!(
                "ribbon: {} bands, {} circles, verified = {}",
                ribbon.bands.len(),
                ribbon.residual_circles,
                ribbon.verified
            );
            Ok(if ribbon.verified { 0 } else { 1 })
        }
        Command::EpiCheck {
            input,
            target,
            record,
            quotients,
            common,
        } => {
            let battery = match &quotients {
                Some(names) => parse_quotients(names)?,
                None => staplekit::group::default_battery(),
            };
            if record {
                let text = std::fs::read_to_string(&input)?;
                let rec: staplekit::construction::CoverRecord = serde_json::from_str(&text)
                    .map_err(|e| Error::Other(format!("bad cover record: {e}")))?;
                let src = Diagram::parse_pd(&rec.cover_pd)?;
                let dst = Diagram::parse_pd(&rec.input_pd)?;
                let pres_src = wirtinger(&src, 0)?;
                let pres_dst = wirtinger(&dst, 0)?;
                let images = parse_phi(&rec.certificate.phi, pres_src.generator_count())?;
                let phi = PeripheralMap {
                    images,
                    p: 0,
                    q: 0,
                    r: 1,
                };
                let cert = verify_epimorphism(
                    &pres_src,
                    &pres_dst,
                    &phi,
                    &battery,
                    &rec.certificate.source,
                    &rec.certificate.target,
                )?;
                let ok = cert.verified;
                emit(&common, &serde_json::to_value(&cert).unwrap())?;
                eprintln!(
                    "re-verified stored map: {}",
                    if ok { "pass" } else { "FAIL" }
                );
                return Ok(if ok { 0 } else { 1 });
            }
            let src = load_diagram(&input)?;
            let dst = match &target {
                Some(t) => load_diagram(t)?,
                None => src.clone(),
            };
            if !src.same_diagram(&dst) {
                return Err(Error::Other(
                    "epi-check without --record needs identical diagrams (identity map); \
                     use --record for constructed covers"
                        .into(),
                ));
            }
            let pres = wirtinger(&src, 0)?;
            let phi = PeripheralMap {
                images: (0..pres.generator_count()).map(Word::generator).collect(),
                p: 0,
                q: 0,
                r: 1,
            };
            let cert = verify_epimorphism(&pres, &pres, &phi, &battery, &src.name, &dst.name)?;
            let ok = cert.verified;
            emit(&common, &serde_json::to_value(&cert).unwrap())?;
            eprintln!(
                "identity check on {}: {}",
                src.name,
                if ok { "pass" } else { "FAIL" }
            );
            Ok(if ok { 0 } else { 1 })
        }
        Command::Export {
            input,
            format,
            common,
        } => {
            let d = load_diagram(&input)?.canonical();
            let text = match format.as_str() {
                "pd" => d.to_pd_string(),
                "gauss" => gauss_code(&d)?,
                "dt" => dt_code(&d)?,
                other => {
                    return Err(Error::Other(format!(
                        "unknown format {other}; expected pd, gauss, or dt"
                    )))
                }
            };
            match &common.out {
                Some(path) => std::fs::write(path, &text)?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            eprintln!("exported {} as {}", d.name, format);
            Ok(0)
        }
        Command::VerifyFixture {
            host,
            fixture,
            common,
        } => {
            let host_d = load_diagram(&host)?;
            let fix = load_fixture(&fixture)?;
            let report = verify_fixture(&fix, &host_d)?;
            let passed = report.passed;
            emit(&common, &serde_json::to_value(&report).unwrap())?;
            eprintln!(
                "fixture {} on {}: unknotted={} lk={} class_zero={:?} => {}",
                report.fixture,
                report.host,
                report.unknotted,
                report.linking_number,
                report.class_zero,
                if passed { "pass" } else { "FAIL" }
            );
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn parse_phi(
    table: &std::collections::BTreeMap<String, String>,
    n: usize,
) -> Result<Vec<Word>, Error> {
    let mut images = Vec::with_capacity(n);
    for g in 0..n {
        let name = format!("x{g}");
        let text = table
            .get(&name)
            .ok_or_else(|| Error::MapUndefined(name.clone()))?;
        images.push(parse_word(text)?);
    }
    Ok(images)
}

fn parse_word(text: &str) -> Result<Word, Error> {
    let mut letters = Vec::new();
    let trimmed = text.trim();
    if trimmed == "1" || trimmed.is_empty() {
        return Ok(Word::identity());
    }
    for tok in trimmed.split_whitespace() {
        let (gen_part, exp) = match tok.split_once('^') {
            Some((g, e)) => (
                g,
                e.parse::<i32>()
                    .map_err(|_| Error::Other(format!("bad exponent in {tok}")))?,
            ),
            None => (tok, 1),
        };
        let idx: usize = gen_part
            .strip_prefix('x')
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Other(format!("bad generator {tok}")))?;
        letters.push((idx, exp));
    }
    Ok(Word::from_letters(letters))
}
