use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hopf_brace::catalog::{self, BraceDescriptor, CatalogEntry, CatalogError};
use hopf_brace::extensions::{self, ConsequenceReport, HopfCocVerdict, HuqVerdict};
use hopf_brace::propositions::{verify_propositions, PropositionReport};
use hopf_brace::series::{self, SeriesKind};
use hopf_brace::verify::{self, VerificationReport, VerifyOptions, DEFAULT_SAMPLES, DEFAULT_SEED};
use hopf_brace::{Error, HopfBrace, HopfMorphism, SkewBrace, SubgroupSet};

const SEED_VAR: &str = "HOPFBRACE_SEED";

#[derive(Parser)]
#[command(
    name = "hopfbrace",
    version,
    about = "Invariants and identity checks for linearized skew braces"
)]
struct Cli {
    /// Emit a single JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a brace and report the first failing axiom.
    Validate { input: String },
    /// Compute the left, right or gamma series.
    Series {
        input: String,
        #[arg(long, value_enum, default_value = "right")]
        kind: KindArg,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
    },
    /// Socle, annihilator, center, abelianisations and nilpotency classes.
    Invariants {
        input: String,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
    },
    /// Centrality verdicts for a surjective morphism from a map file.
    CheckCentral {
        input: String,
        #[arg(long)]
        map: PathBuf,
    },
    /// Run a verification suite on one brace or the whole catalog.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        input: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Seed for random combinations; defaults to $HOPFBRACE_SEED or a fixed value.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Compare identities modulo this prime instead of over the rationals.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// List the built-in catalog.
    Catalog,
    /// Write a brace document for a named brace.
    Export { name: String, output: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Left,
    Right,
    Gamma,
}

impl From<KindArg> for SeriesKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Left => SeriesKind::Left,
            KindArg::Right => SeriesKind::Right,
            KindArg::Gamma => SeriesKind::Gamma,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Suite {
    Axioms,
    Lemma,
    Structure,
    Propositions,
}

/// Exit status: verification failure versus unusable input.
enum Failure {
    Verification(String),
    Input(String),
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<hopf_brace::HopfError> for Failure {
    fn from(e: hopf_brace::HopfError) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Serialize)]
struct Engine {
    name: &'static str,
    version: &'static str,
}

const ENGINE: Engine = Engine {
    name: "hopfbrace",
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Serialize)]
struct Report<T: Serialize> {
    engine: Engine,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    brace: Option<BraceDescriptor>,
    ok: bool,
    results: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

struct Ctx {
    json: bool,
    timing: bool,
    start: Instant,
}

impl Ctx {
    fn emit<T: Serialize>(
        &self,
        command: &'static str,
        brace: Option<&BraceDescriptor>,
        ok: bool,
        results: T,
        text: impl FnOnce() -> String,
    ) {
        if self.json {
            let report = Report {
                engine: ENGINE,
                command,
                brace: brace.cloned(),
                ok,
                results,
                elapsed_ms: self.timing.then(|| self.start.elapsed().as_millis()),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report is plain data")
            );
        } else {
            print!("{}", text());
            if self.timing {
                println!("elapsed: {} ms", self.start.elapsed().as_millis());
            }
        }
    }
}

/// A well-formed document that fails the brace axioms is a verification
/// failure; anything unreadable is an input error.
fn resolve(input: &str) -> Result<CatalogEntry, Failure> {
    catalog::resolve(input, None).map_err(|e| match e {
        CatalogError::Brace(e) => Failure::Verification(format!("invalid brace: {e}")),
        other => other.into(),
    })
}

/// `"2 {0, 2}"` style rendering with element names when they differ from indices.
fn carrier_text(set: &SubgroupSet, entry: &CatalogEntry) -> String {
    let parts: Vec<String> = set
        .members()
        .iter()
        .map(|&g| {
            let name = entry.element_name(g);
            if name == g.to_string() {
                name.to_string()
            } else {
                format!("{g}={name}")
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Serialize)]
struct CarrierJson {
    size: usize,
    members: Vec<usize>,
    names: Vec<String>,
}

fn carrier_json(set: &SubgroupSet, entry: &CatalogEntry) -> CarrierJson {
    CarrierJson {
        size: set.len(),
        members: set.members().to_vec(),
        names: set
            .members()
            .iter()
            .map(|&g| entry.element_name(g).to_string())
            .collect(),
    }
}

/// Greedy generating set: members not already generated by earlier picks.
fn generators(brace: &SkewBrace, set: &SubgroupSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = brace.dot().trivial_subgroup();
    for &g in set.members() {
        if !span.contains(g) {
            gens.push(g);
            span = brace
                .dot()
                .subgroup_generated(gens.iter().copied())
                .expect("indices in range");
        }
    }
    gens
}

fn cmd_validate(ctx: &Ctx, input: &str) -> Result<(), Failure> {
    // Only names and parse failures are input errors; a well-formed document
    // that fails the brace axioms is a verification failure.
    let entry = match catalog::resolve(input, None) {
        Ok(entry) => entry,
        Err(CatalogError::Brace(e)) => {
            let message = e.to_string();
            #[derive(Serialize)]
            struct Invalid {
                valid: bool,
                error: String,
            }
            ctx.emit(
                "validate",
                None,
                false,
                Invalid {
                    valid: false,
                    error: message.clone(),
                },
                || format!("invalid brace: {message}\n"),
            );
            return Err(Failure::Verification(message));
        }
        Err(e) => return Err(e.into()),
    };
    #[derive(Serialize)]
    struct Valid {
        valid: bool,
        order: usize,
        trivial: bool,
        dot_abelian: bool,
        circ_abelian: bool,
    }
    let b = &entry.brace;
    let results = Valid {
        valid: true,
        order: b.order(),
        trivial: b.is_trivial(),
        dot_abelian: b.dot().is_abelian(),
        circ_abelian: b.circ().is_abelian(),
    };
    ctx.emit("validate", Some(&entry.descriptor), true, results, || {
        format!(
            "{}: valid skew brace of order {}{}\n",
            entry.descriptor.name,
            b.order(),
            if b.is_trivial() { " (trivial)" } else { "" }
        )
    });
    Ok(())
}

fn cmd_series(ctx: &Ctx, input: &str, kind: SeriesKind, max: usize) -> Result<(), Failure> {
    let entry = resolve(input)?;
    let h = HopfBrace::new(entry.brace.clone());
    let s = series::series(&h, kind, max)?;
    #[derive(Serialize)]
    struct Term {
        carrier: CarrierJson,
        generators: Vec<usize>,
    }
    #[derive(Serialize)]
    struct SeriesJson {
        kind: SeriesKind,
        max: usize,
        sizes: Vec<usize>,
        terms: Vec<Term>,
        stabilized: bool,
        nil_class: Option<usize>,
    }
    let terms: Vec<Term> = s
        .terms
        .iter()
        .map(|t| Term {
            carrier: carrier_json(t.carrier(), &entry),
            generators: generators(&entry.brace, t.carrier()),
        })
        .collect();
    let results = SeriesJson {
        kind,
        max,
        sizes: s.sizes(),
        terms,
        stabilized: s.stabilized,
        nil_class: s.nil_class,
    };
    ctx.emit("series", Some(&entry.descriptor), true, &results, || {
        let mut out = format!("{} series of {}\n", kind, entry.descriptor.name);
        for (i, t) in s.terms.iter().enumerate() {
            out.push_str(&format!(
                "  term {}: size {:>3}  generators {:?}  carrier {}\n",
                i + 1,
                t.dim(),
                results.terms[i].generators,
                carrier_text(t.carrier(), &entry)
            ));
        }
        out.push_str(&format!("  sizes: {:?}\n", results.sizes));
        match (s.nil_class, s.stabilized) {
            (Some(c), _) => out.push_str(&format!("  reaches k1: nilpotency class {c}\n")),
            (None, true) => out.push_str("  stabilized without reaching k1\n"),
            (None, false) => out.push_str(&format!("  undecided within {max} steps\n")),
        }
        out
    });
    Ok(())
}

fn cmd_invariants(ctx: &Ctx, input: &str, max: usize) -> Result<(), Failure> {
    let entry = resolve(input)?;
    let h = HopfBrace::new(entry.brace.clone());
    let sa = series::soc_ann(&h)?;
    let center = series::hopf_center(&h);
    let (f, _) = series::abelianize_f(&h)?;
    let (ab, _) = series::abelianize_ab(&h)?;
    let star_image = series::star_image_subbrace(&h)?;
    let relative = series::relative_commutator(&hopf_brace::Subbrace::whole(&h), &h)?;
    let nil = series::nilpotency_report(&h, max)?;

    #[derive(Serialize)]
    struct Invariants {
        soc: CarrierJson,
        ann: CarrierJson,
        soc_space_dim: usize,
        ann_space_dim: usize,
        soc_strict_inclusion: bool,
        ann_strict_inclusion: bool,
        agree_space_dim: usize,
        soc_differs_from_agreement: bool,
        hopf_center: CarrierJson,
        star_image: CarrierJson,
        relative_commutator_hh: CarrierJson,
        dim_f: usize,
        dim_ab: usize,
        nilpotency: hopf_brace::NilpotencyReport,
    }
    let results = Invariants {
        soc: carrier_json(sa.soc.carrier(), &entry),
        ann: carrier_json(sa.ann.carrier(), &entry),
        soc_space_dim: sa.soc_space.dimension(),
        ann_space_dim: sa.ann_space.dimension(),
        soc_strict_inclusion: sa.soc_strict(),
        ann_strict_inclusion: sa.ann_strict(),
        agree_space_dim: sa.agree_space.dimension(),
        soc_differs_from_agreement: sa.soc_differs_from_agreement(),
        hopf_center: carrier_json(center.carrier(), &entry),
        star_image: carrier_json(star_image.carrier(), &entry),
        relative_commutator_hh: carrier_json(relative.carrier(), &entry),
        dim_f: f.dim(),
        dim_ab: ab.dim(),
        nilpotency: nil.clone(),
    };
    ctx.emit("invariants", Some(&entry.descriptor), true, &results, || {
        let class = |c: Option<usize>| c.map_or_else(|| format!("none within {max}"), |c| c.to_string());
        let strict = |s: bool| if s { " (strictly larger than the span)" } else { "" };
        let mut out = format!(
            "invariants of {} (order {})\n",
            entry.descriptor.name,
            entry.brace.order()
        );
        out.push_str(&format!(
            "  Soc            {}\n",
            carrier_text(sa.soc.carrier(), &entry)
        ));
        out.push_str(&format!(
            "  Ann            {}\n",
            carrier_text(sa.ann.carrier(), &entry)
        ));
        out.push_str(&format!(
            "  dim soc        {}{}\n",
            results.soc_space_dim,
            strict(results.soc_strict_inclusion)
        ));
        out.push_str(&format!(
            "  dim ann        {}{}\n",
            results.ann_space_dim,
            strict(results.ann_strict_inclusion)
        ));
        out.push_str(&format!(
            "  dim a·b = a•b  {}{}\n",
            results.agree_space_dim,
            if results.soc_differs_from_agreement {
                " (differs from soc)"
            } else {
                ""
            }
        ));
        out.push_str(&format!(
            "  HZ             {}\n",
            carrier_text(center.carrier(), &entry)
        ));
        out.push_str(&format!(
            "  <H⋆H>          {}\n",
            carrier_text(star_image.carrier(), &entry)
        ));
        out.push_str(&format!(
            "  [H,H]          {}\n",
            carrier_text(relative.carrier(), &entry)
        ));
        out.push_str(&format!("  dim F(H)       {}\n", results.dim_f));
        out.push_str(&format!("  dim ab(H)      {}\n", results.dim_ab));
        out.push_str(&format!("  left class     {}\n", class(nil.left_class)));
        out.push_str(&format!("  right class    {}\n", class(nil.right_class)));
        out.push_str(&format!("  [H^(n),H]=k1   {}\n", class(nil.right_commutator_class)));
        out.push_str(&format!("  gamma class    {}\n", class(nil.gamma_class)));
        out
    });
    Ok(())
}

fn cmd_check_central(ctx: &Ctx, input: &str, map: &Path) -> Result<(), Failure> {
    let entry = resolve(input)?;
    let loaded = catalog::load_map(map)?;
    if loaded.source.brace != entry.brace {
        return Err(Failure::Input(format!(
            "map source {} is not the brace {}",
            loaded.source.descriptor.name, entry.descriptor.name
        )));
    }
    let f = HopfMorphism::new(loaded.map.clone())?;
    let report = extensions::extension_report(&f)?;
    let consequences = extensions::centrality_consequences(&f)?;

    #[derive(Serialize)]
    struct Central {
        target: String,
        kernel: CarrierJson,
        surjective: bool,
        hopf_coc: HopfCocVerdict,
        huq: HuqVerdict,
        consequences: ConsequenceReport,
    }
    let results = Central {
        target: loaded.target.descriptor.name.clone(),
        kernel: carrier_json(report.kernel.carrier(), &entry),
        surjective: report.surjective,
        hopf_coc: report.hopf_coc.clone(),
        huq: report.huq.clone(),
        consequences: consequences.clone(),
    };
    let ok = consequences.holds();
    ctx.emit("check-central", Some(&entry.descriptor), ok, &results, || {
        let name = |g: usize| entry.element_name(g).to_string();
        let mut out = format!("{} → {}\n", entry.descriptor.name, results.target);
        out.push_str(&format!(
            "  kernel         {}\n",
            carrier_text(report.kernel.carrier(), &entry)
        ));
        match &report.hopf_coc.witness {
            None => out.push_str("  Hopf_coc       central\n"),
            Some(w) => {
                let (x, y) = match w.side {
                    extensions::StarSide::KernelLeft => (w.kernel, w.element),
                    extensions::StarSide::KernelRight => (w.element, w.kernel),
                };
                out.push_str(&format!(
                    "  Hopf_coc       not central: {}⋆{} = {}\n",
                    name(x),
                    name(y),
                    name(w.value)
                ));
            }
        }
        match &report.huq.witness {
            None => out.push_str("  Huq            central\n"),
            Some(w) => {
                let [ak, ka, kca, akc] = w.products.map(name);
                out.push_str(&format!(
                    "  Huq            not central: k = {}, a = {}: a·k = {ak}, k·a = {ka}, k∘a = {kca}, a∘k = {akc}\n",
                    name(w.kernel),
                    name(w.element)
                ));
            }
        }
        let verdict = match (consequences.central_hopfcoc, consequences.failure.is_none()) {
            (false, _) => "not applicable",
            (true, true) => "holds",
            (true, false) => "FAILS",
        };
        out.push_str(&format!(
            "  x·h = x∘h      {verdict} ({} pairs)\n",
            consequences.checked_pairs
        ));
        out
    });
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("centrality consequence failed".to_string()))
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum SuiteResult {
    Identities(VerificationReport),
    Propositions(PropositionReport),
}

impl SuiteResult {
    fn passed(&self) -> bool {
        match self {
            SuiteResult::Identities(r) => r.passed(),
            SuiteResult::Propositions(r) => r.passed(),
        }
    }

    fn summary(&self) -> String {
        match self {
            SuiteResult::Identities(r) => match r.first_violation() {
                None => format!("{} identities, 0 violations", r.outcomes.len()),
                Some((name, v)) => format!(
                    "{} violations; first: {name} at {} (lhs {}, rhs {})",
                    r.violation_count(),
                    v.inputs.join(", "),
                    v.lhs,
                    v.rhs
                ),
            },
            SuiteResult::Propositions(r) => match r.first_failure() {
                None => format!("{} propositions hold", r.outcomes.len()),
                Some(o) => format!("{} fails: {}", o.name, o.detail.as_deref().unwrap_or("")),
            },
        }
    }
}

fn run_suite(
    brace: &SkewBrace,
    suite: Suite,
    options: &VerifyOptions,
    prime: Option<u64>,
) -> Result<SuiteResult, Failure> {
    let h = match prime {
        None => HopfBrace::new(brace.clone()),
        Some(p) => HopfBrace::with_prime(brace.clone(), p)?,
    };
    Ok(match suite {
        Suite::Axioms => SuiteResult::Identities(verify::verify_hopf_brace_axiom(&h, options)?),
        Suite::Lemma => SuiteResult::Identities(verify::verify_star_lemma_all(&h, options)?),
        Suite::Structure => SuiteResult::Identities(verify::verify_structure_identities(&h, options)?),
        Suite::Propositions => SuiteResult::Propositions(verify_propositions(&h, 10)?),
    })
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{SEED_VAR}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    ctx: &Ctx,
    input: Option<&str>,
    all: bool,
    suite: Suite,
    seed: Option<u64>,
    samples: usize,
    prime: Option<u64>,
) -> Result<(), Failure> {
    let seed = match seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let options = VerifyOptions { samples, seed };
    let entries = if all {
        catalog::builtin_catalog()
    } else {
        vec![resolve(input.expect("clap requires an input without --all"))?]
    };

    #[derive(Serialize)]
    struct EntryResult {
        brace: String,
        order: usize,
        passed: bool,
        report: SuiteResult,
    }
    #[derive(Serialize)]
    struct VerifyJson {
        suite: Suite,
        seed: u64,
        samples: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        prime: Option<u64>,
        entries: Vec<EntryResult>,
    }
    let mut results = Vec::new();
    for entry in &entries {
        let report = run_suite(&entry.brace, suite, &options, prime)?;
        results.push(EntryResult {
            brace: entry.descriptor.name.clone(),
            order: entry.brace.order(),
            passed: report.passed(),
            report,
        });
    }
    let ok = results.iter().all(|r| r.passed);
    let first_failure = results
        .iter()
        .find(|r| !r.passed)
        .map(|r| format!("{}: {}", r.brace, r.report.summary()));
    let results = VerifyJson {
        suite,
        seed,
        samples,
        prime,
        entries: results,
    };
    let descriptor = (!all).then(|| entries[0].descriptor.clone());
    ctx.emit("verify", descriptor.as_ref(), ok, &results, || {
        let mut out = format!("seed {seed}, {samples} random samples per identity\n");
        for r in &results.entries {
            out.push_str(&format!(
                "  {} {:<28} order {:>3}  {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.brace,
                r.order,
                r.report.summary()
            ));
        }
        out
    });
    match first_failure {
        None => Ok(()),
        Some(f) => Err(Failure::Verification(f)),
    }
}

fn cmd_catalog(ctx: &Ctx) -> Result<(), Failure> {
    let entries = catalog::builtin_catalog();
    let descriptors: Vec<&BraceDescriptor> = entries.iter().map(|e| &e.descriptor).collect();
    ctx.emit("catalog", None, true, &descriptors, || {
        descriptors
            .iter()
            .map(|d| format!("{:<28} order {:>3}  {}\n", d.name, d.order, d.notes))
            .collect()
    });
    Ok(())
}

fn cmd_export(ctx: &Ctx, name: &str, output: &Path) -> Result<(), Failure> {
    let entry = resolve(name)?;
    catalog::save_brace(&entry.descriptor.name, &entry.brace, output)?;
    #[derive(Serialize)]
    struct Exported {
        path: String,
    }
    let path = output.display().to_string();
    ctx.emit(
        "export",
        Some(&entry.descriptor),
        true,
        Exported { path: path.clone() },
        || format!("wrote {path}\n"),
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        json: cli.json,
        timing: cli.timing,
        start: Instant::now(),
    };
    let result = match &cli.command {
        Command::Validate { input } => cmd_validate(&ctx, input),
        Command::Series { input, kind, max } => cmd_series(&ctx, input, (*kind).into(), *max as usize),
        Command::Invariants { input, max } => cmd_invariants(&ctx, input, *max as usize),
        Command::CheckCentral { input, map } => cmd_check_central(&ctx, input, map),
        Command::Verify {
            input,
            all,
            suite,
            seed,
            samples,
            prime,
        } => cmd_verify(&ctx, input.as_deref(), *all, *suite, *seed, *samples, *prime),
        Command::Catalog => cmd_catalog(&ctx),
        Command::Export { name, output } => cmd_export(&ctx, name, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(message)) => {
            eprintln!("verification failed: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
