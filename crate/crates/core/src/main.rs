//! `ring`: CLI front end for the finite-ring library.
//!
//! Subcommands: info, classify, inverse, transfer, verify, validate.
//! Exit codes: 0 success, 1 verification/validation failures, 2
//! configuration or usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use ringlab::inverses::{
    classify, drazin, strongly_clean_decompositions, Variant,
};
use ringlab::ring::{validate_ring, FiniteRing, RingError, RingSpec};
use ringlab::structure::StructureCache;
use ringlab::transfer::{
    cline, jacobson_inverse, pseudo_one_minus_transfer, strongly_clean_transfer,
};
use ringlab::verifier::{
    consistency_suite, registry_specs, run_theorem, Mode, RunOptions, TheoremId,
    VerificationReport, VerifierError,
};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "ring", version, about = "Finite-ring computer algebra and theorem verifier")]
struct Cli {
    /// Cap on the order of constructed rings.
    #[arg(long, global = true, default_value_t = 4096, env = "RING_ORDER_CAP")]
    order_cap: usize,
    /// Cap on ring order for exhaustive pair-quantified theorem runs.
    #[arg(long, global = true, default_value_t = 256)]
    exhaustive_cap: usize,
    /// Registry file: one RingSpec per line, '#' comments.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Group,
    Drazin,
    Pseudo,
    Generalized,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Group => Variant::Group,
            VariantArg::Drazin => Variant::Drazin,
            VariantArg::Pseudo => Variant::Pseudo,
            VariantArg::Generalized => Variant::Generalized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Jacobson,
    Cline,
    Clean,
    PseudoOneMinus,
}

#[derive(Subcommand)]
enum Command {
    /// Print the order and structural sets of a ring.
    Info {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the full property profile of one element.
    Classify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute a generalized inverse of one element.
    Inverse {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply one of the constructive transfer formulas to a pair (a, b).
    Transfer {
        #[arg(long, value_enum)]
        formula: FormulaArg,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Drazin variant, required for the cline formula.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively check a theorem (or all of them) over a ring or the registry.
    Verify {
        /// Theorem id (e.g. CLINE_D) or "all".
        #[arg(long)]
        theorem: String,
        /// A RingSpec, or "registry" for the built-in registry.
        #[arg(long)]
        ring: String,
        /// Check a seeded uniform sample of n cases instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the JSON report to a file, or to stdout when no path is given.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<PathBuf>,
        /// Run theorems on rings above the per-theorem cap.
        #[arg(long)]
        force: bool,
        /// Probe mode: also assert the corner P3 => P1 converse for
        /// non-central idempotents (not claimed by any theorem).
        #[arg(long)]
        weakened: bool,
    },
    /// Run the full axiom check on a ring and print the report.
    Validate {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        json: bool,
    },
}

fn build_ring(spec_text: &str, cap: usize) -> Result<Arc<FiniteRing>, RingError> {
    let spec: RingSpec = spec_text.parse()?;
    spec.build(cap)
}

fn label_set(r: &FiniteRing, members: &[usize]) -> String {
    let labels: Vec<&str> = members.iter().map(|&x| r.label(x)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn cmd_info(ring: &Arc<FiniteRing>, json: bool) {
    let cache = StructureCache::compute(ring);
    let units = cache.units();
    let idem = cache.idempotents();
    let nil = cache.nilpotents();
    let jac = cache.jacobson();
    let jsharp = cache.j_sharp();
    let qnil = cache.qnil();
    if json {
        let map_labels = |m: &BTreeMap<usize, usize>, value_label: bool| -> BTreeMap<String, serde_json::Value> {
            m.iter()
                .map(|(&k, &v)| {
                    let val = if value_label {
                        json!(ring.label(v))
                    } else {
                        json!(v)
                    };
                    (ring.label(k).to_string(), val)
                })
                .collect()
        };
        let labels = |s: &[usize]| -> Vec<String> {
            s.iter().map(|&x| ring.label(x).to_string()).collect()
        };
        let doc = json!({
            "ring": ring.spec(),
            "order": ring.order(),
            "zero": ring.label(ring.zero()),
            "one": ring.label(ring.one()),
            "units": map_labels(&units, true),
            "idempotents": labels(&idem),
            "nilpotents": map_labels(&nil, false),
            "jacobson": labels(&jac),
            "j_sharp": map_labels(&jsharp, false),
            "qnil": labels(&qnil),
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("ring {}", ring.spec());
        println!("order: {}", ring.order());
        println!(
            "units ({}): {}",
            units.len(),
            label_set(ring, &units.keys().copied().collect::<Vec<_>>())
        );
        println!("idempotents ({}): {}", idem.len(), label_set(ring, &idem));
        println!(
            "nilpotents ({}): {}",
            nil.len(),
            label_set(ring, &nil.keys().copied().collect::<Vec<_>>())
        );
        println!("jacobson ({}): {}", jac.len(), label_set(ring, &jac));
        println!(
            "j_sharp ({}): {}",
            jsharp.len(),
            label_set(ring, &jsharp.keys().copied().collect::<Vec<_>>())
        );
        println!("qnil ({}): {}", qnil.len(), label_set(ring, &qnil));
    }
}

fn cmd_classify(ring: &Arc<FiniteRing>, element: &str, json: bool) -> Result<(), RingError> {
    let e = ring.parse_element(element)?;
    let cache = StructureCache::compute(ring);
    let profile = classify(ring, &cache, e.index);
    if json {
        let doc = json!({
            "ring": ring.spec(),
            "element": e.label(),
            "profile": profile,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("element {} in {}", e.label(), ring.spec());
        let flags = [
            ("unit", profile.unit),
            ("idempotent", profile.idempotent),
            ("nilpotent", profile.nilpotent),
            ("in_jacobson", profile.in_jacobson),
            ("in_j_sharp", profile.in_j_sharp),
            ("quasinilpotent", profile.quasinilpotent),
            ("group_invertible", profile.group_invertible),
            ("drazin_invertible", profile.drazin_invertible),
            ("pseudo_drazin_invertible", profile.pseudo_drazin_invertible),
            (
                "generalized_drazin_invertible",
                profile.generalized_drazin_invertible,
            ),
            ("strongly_clean", profile.strongly_clean),
            ("strongly_pi_regular", profile.strongly_pi_regular),
            ("quasipolar", profile.quasipolar),
            ("pseudopolar", profile.pseudopolar),
        ];
        for (name, value) in flags {
            println!("{name}: {value}");
        }
    }
    Ok(())
}

fn cmd_inverse(
    ring: &Arc<FiniteRing>,
    variant: Variant,
    element: &str,
    json: bool,
) -> Result<(), RingError> {
    let e = ring.parse_element(element)?;
    let cache = StructureCache::compute(ring);
    let result = drazin(ring, &cache, e.index, variant);
    if json {
        let doc = match &result {
            None => json!({
                "ring": ring.spec(),
                "element": e.label(),
                "variant": variant,
                "inverse": null,
            }),
            Some(d) => json!({
                "ring": ring.spec(),
                "element": e.label(),
                "variant": variant,
                "inverse": ring.label(d.inverse),
                "index": d.index,
                "spectral_idempotent": ring.label(d.spectral_idempotent),
            }),
        };
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        match result {
            None => println!("none"),
            Some(d) => println!(
                "b = {}, index = {}, spectral_idempotent = {}",
                ring.label(d.inverse),
                d.index,
                ring.label(d.spectral_idempotent)
            ),
        }
    }
    Ok(())
}

struct Witness {
    formula: &'static str,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

impl Witness {
    fn to_json(&self) -> serde_json::Value {
        json!({
            "formula": self.formula,
            "inputs": self.inputs,
            "outputs": self.outputs,
        })
    }

    fn print_text(&self) {
        println!("formula: {}", self.formula);
        for (k, v) in &self.inputs {
            println!("  in  {k} = {v}");
        }
        for (k, v) in &self.outputs {
            println!("  out {k} = {v}");
        }
    }
}

fn cmd_transfer(
    ring: &Arc<FiniteRing>,
    formula: FormulaArg,
    a_text: &str,
    b_text: &str,
    variant: Option<VariantArg>,
    json: bool,
) -> Result<ExitCode, RingError> {
    let a = ring.parse_element(a_text)?.index;
    let b = ring.parse_element(b_text)?.index;
    let cache = StructureCache::compute(ring);
    let lbl = |x: usize| ring.label(x).to_string();
    let base_inputs = || {
        BTreeMap::from([("a".to_string(), lbl(a)), ("b".to_string(), lbl(b))])
    };
    let mut witnesses: Vec<Witness> = Vec::new();
    match formula {
        FormulaArg::Jacobson => {
            match jacobson_inverse(ring, &cache, a, b).map_err(config_from_transfer)? {
                None => {}
                Some(w) => witnesses.push(Witness {
                    formula: "jacobson",
                    inputs: base_inputs(),
                    outputs: BTreeMap::from([(
                        "(1+ba)^-1".to_string(),
                        lbl(w),
                    )]),
                }),
            }
        }
        FormulaArg::Cline => {
            let variant: Variant = variant
                .ok_or_else(|| RingError::BadSpec {
                    spec: "--variant".into(),
                    reason: "the cline formula requires --variant drazin|pseudo|generalized"
                        .into(),
                })?
                .into();
            if variant == Variant::Group {
                return Err(RingError::BadSpec {
                    spec: "--variant".into(),
                    reason: "cline applies to the drazin, pseudo and generalized variants"
                        .into(),
                });
            }
            if let Some(res) = cline(ring, &cache, a, b, variant).map_err(config_from_transfer)? {
                let mut inputs = base_inputs();
                inputs.insert("variant".into(), variant.name().into());
                witnesses.push(Witness {
                    formula: "cline",
                    inputs,
                    outputs: BTreeMap::from([
                        ("(ba)^inv".to_string(), lbl(res.inverse)),
                        ("index".to_string(), res.index.to_string()),
                        (
                            "spectral_idempotent".to_string(),
                            lbl(res.spectral_idempotent),
                        ),
                    ]),
                });
            }
        }
        FormulaArg::Clean => {
            let ab = ring.mul(a, b);
            for d in strongly_clean_decompositions(ring, &cache, ab) {
                let out = strongly_clean_transfer(ring, &cache, a, b, &d)
                    .map_err(config_from_transfer)?;
                let mut inputs = base_inputs();
                inputs.insert("e".into(), lbl(d.idempotent));
                inputs.insert("u".into(), lbl(d.unit));
                witnesses.push(Witness {
                    formula: "clean",
                    inputs,
                    outputs: BTreeMap::from([
                        ("g".to_string(), lbl(out.idempotent)),
                        ("v".to_string(), lbl(out.unit)),
                    ]),
                });
            }
        }
        FormulaArg::PseudoOneMinus => {
            if let Some(w) =
                pseudo_one_minus_transfer(ring, &cache, a, b).map_err(config_from_transfer)?
            {
                witnesses.push(Witness {
                    formula: "pseudo-one-minus",
                    inputs: base_inputs(),
                    outputs: BTreeMap::from([
                        ("alpha".to_string(), lbl(w.alpha)),
                        ("alpha^pD".to_string(), lbl(w.alpha_inverse)),
                        ("e".to_string(), lbl(w.e)),
                        ("u".to_string(), lbl(w.u)),
                        ("f".to_string(), lbl(w.f)),
                        ("beta".to_string(), lbl(w.beta)),
                        ("beta^pD".to_string(), lbl(w.beta_inverse)),
                        ("index".to_string(), w.index.to_string()),
                    ]),
                });
            }
        }
    }
    if json {
        let doc = json!({
            "ring": ring.spec(),
            "witnesses": witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else if witnesses.is_empty() {
        println!("none");
    } else {
        for w in &witnesses {
            w.print_text();
        }
    }
    Ok(ExitCode::SUCCESS)
}

// a transfer conclusion failing is a library bug surfaced to the user;
// map it onto the config-error channel with a clear message
fn config_from_transfer(e: ringlab::transfer::TransferError) -> RingError {
    RingError::BadSpec {
        spec: "transfer".into(),
        reason: e.to_string(),
    }
}

fn load_registry(
    cli_registry: &Option<PathBuf>,
    cap: usize,
) -> Result<Vec<Arc<FiniteRing>>, RingError> {
    let specs: Vec<RingSpec> = match cli_registry {
        None => registry_specs(),
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::parse)
                .collect::<Result<_, _>>()?
        }
    };
    specs.iter().map(|s| s.build(cap)).collect()
}

fn print_report(report: &VerificationReport) {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    println!(
        "{} {} {}: {} cases, {} checked, {} n/a, {} failures [{:.3}s]",
        status,
        report.theorem_id,
        report.ring,
        report.cases_total,
        report.cases_checked,
        report.cases_not_applicable,
        report.failures.len(),
        report.wall_time.as_secs_f64()
    );
    for f in &report.failures {
        println!("  FAIL case {}: {}", f.case, f.detail);
    }
    for n in &report.notes {
        println!("  note: {n}");
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    theorem: &str,
    ring_arg: &str,
    sample: Option<usize>,
    seed: u64,
    json: Option<PathBuf>,
    force: bool,
    weakened: bool,
    cli: &Cli,
) -> Result<ExitCode, VerifierError> {
    let rings: Vec<Arc<FiniteRing>> = if ring_arg == "registry" {
        load_registry(&cli.registry, cli.order_cap)?
    } else {
        vec![build_ring(ring_arg, cli.order_cap)?]
    };
    let theorems: Vec<TheoremId> = if theorem.eq_ignore_ascii_case("all") {
        TheoremId::ALL.to_vec()
    } else {
        vec![theorem.parse()?]
    };
    let run_all = theorem.eq_ignore_ascii_case("all");
    let mode = match sample {
        None => Mode::Exhaustive,
        Some(n) => Mode::Sample { n, seed },
    };
    let opts = RunOptions {
        pair_cap: cli.exhaustive_cap,
        force,
        weaken_corner_converse: weakened,
        ..RunOptions::default()
    };
    let mut reports = Vec::new();
    for ring in &rings {
        for &id in &theorems {
            reports.push(run_theorem(id, ring, mode, &opts)?);
        }
        if run_all && mode == Mode::Exhaustive {
            reports.push(consistency_suite(ring, &opts)?);
        }
    }
    let all_passed = reports.iter().all(VerificationReport::passed);
    match &json {
        Some(path) if path.as_os_str() == "-" => {
            let doc = json!({ "reports": reports, "all_passed": all_passed });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Some(path) => {
            let doc = json!({ "reports": reports, "all_passed": all_passed });
            std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap())
                .map_err(RingError::from)?;
            for r in &reports {
                print_report(r);
            }
        }
        None => {
            for r in &reports {
                print_report(r);
            }
        }
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_validate(spec_text: &str, cap: usize, json: bool) -> ExitCode {
    // table and corner specs validate during construction; surface that
    // failure as a validation result rather than a usage error
    match build_ring(spec_text, cap) {
        Ok(ring) => {
            let report = validate_ring(&ring);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "ring": ring.spec(),
                        "report": report,
                    }))
                    .unwrap()
                );
            } else {
                println!(
                    "{}: {}",
                    ring.spec(),
                    if report.valid { "valid" } else { "invalid" }
                );
                if let Some(f) = &report.failure {
                    println!("  {f}");
                }
            }
            if report.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(RingError::InvalidRing(msg)) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "ring": spec_text,
                        "report": { "valid": false, "failure": msg },
                    }))
                    .unwrap()
                );
            } else {
                println!("{spec_text}: invalid");
                println!("  {msg}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli.order_cap;
    let result: Result<ExitCode, String> = match &cli.command {
        Command::Info { ring, json } => build_ring(ring, cap)
            .map(|r| {
                cmd_info(&r, *json);
                ExitCode::SUCCESS
            })
            .map_err(|e| e.to_string()),
        Command::Classify { ring, element, json } => build_ring(ring, cap)
            .and_then(|r| cmd_classify(&r, element, *json).map(|_| ExitCode::SUCCESS))
            .map_err(|e| e.to_string()),
        Command::Inverse {
            variant,
            ring,
            element,
            json,
        } => build_ring(ring, cap)
            .and_then(|r| {
                cmd_inverse(&r, (*variant).into(), element, *json).map(|_| ExitCode::SUCCESS)
            })
            .map_err(|e| e.to_string()),
        Command::Transfer {
            formula,
            ring,
            a,
            b,
            variant,
            json,
        } => build_ring(ring, cap)
            .and_then(|r| cmd_transfer(&r, *formula, a, b, *variant, *json))
            .map_err(|e| e.to_string()),
        Command::Verify {
            theorem,
            ring,
            sample,
            seed,
            json,
            force,
            weakened,
        } => cmd_verify(
            theorem,
            ring,
            *sample,
            *seed,
            json.clone(),
            *force,
            *weakened,
            &cli,
        )
        .map_err(|e| e.to_string()),
        Command::Validate { ring, json } => Ok(cmd_validate(ring, cap, *json)),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
