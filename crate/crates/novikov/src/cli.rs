//! Command-line pipeline: parse, validate, sweep, rebuild pages, replay
//! cancellations and report, as text or as structured JSON.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Number, Value};

use crate::cancellation::{
    detect_orbits, events_match_differentials, flow_family, pivots_agree, run_rca, CaseRule,
    FlowFamily, PeriodicOrbit, RcaHistory,
};
use crate::complex::{
    parse_complex, render_grid, validate_differential, FilteredComplex, LineType, NovikovMatrix,
    ValidationReport,
};
use crate::error::{Error, Result};
use crate::spectral::{compute_sequence, ModuleStatus, SpectralSequence};
use crate::sssa::{
    check_block_invariants, check_block_isolation, check_final_matrix, check_idempotence, run_sssa,
    trace, SweepHistory, Track, ViolationReport,
};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check Δ² = 0 and the shape of every index-1 row and column.
    Validate,
    /// Run the spectral sequence sweep and its invariant checks.
    Sweep,
    /// Rebuild every page of the spectral sequence.
    Pages,
    /// Replay the critical-point cancellations of the row cancellation run.
    Cancel,
    /// List the periodic orbits born during the cancellations.
    Orbits,
    /// Everything above, cross-checked.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TrackSel {
    Main,
    Raw,
    Both,
}

impl TrackSel {
    fn tracks(self) -> &'static [Track] {
        match self {
            TrackSel::Main => &[Track::Main],
            TrackSel::Raw => &[Track::Raw],
            TrackSel::Both => &[Track::Main, Track::Raw],
        }
    }
}

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(
    name = "novikov",
    version,
    about = "Sweep filtered Novikov chain complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Matrix document to process; repeat for several inputs.
    #[arg(long = "input", global = true, value_name = "PATH")]
    pub inputs: Vec<PathBuf>,
    /// Number of series terms shown for non-polynomial entries.
    #[arg(long, global = true, default_value_t = 8,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub truncate: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Sweep track(s) to report.
    #[arg(long, global = true, value_enum, default_value_t = TrackSel::Both)]
    pub track: TrackSel,
    /// Report every step, not just the outcome.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Number of inputs processed concurrently.
    #[arg(long, global = true, default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

/// Settings for one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub command: Command,
    pub truncate: usize,
    pub format: Format,
    pub trace: bool,
    pub track: TrackSel,
}

/// Report text plus the error that ended the run, if any. A failing run may
/// still carry the part of the report computed before the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: String,
    pub error: Option<Error>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, Error::exit_code)
    }
}

struct Section {
    key: &'static str,
    text: String,
    data: Value,
}

struct Ctx<'a> {
    cfg: &'a PipelineConfig,
    complex: &'a FilteredComplex,
}

impl Ctx<'_> {
    fn label(&self, j: usize) -> &str {
        self.complex.label(j)
    }

    fn show(&self, s: &Scalar) -> String {
        s.series_string(self.cfg.truncate)
    }

    fn grid(&self, a: &NovikovMatrix) -> String {
        render_grid(a, self.complex.labels(), self.cfg.truncate)
    }
}

fn number(text: &str) -> Value {
    Number::from_str(text).map_or(Value::Null, Value::Number)
}

fn poly_json(p: &crate::Poly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!([e, number(&c.to_string())]))
            .collect(),
    )
}

fn scalar_json(s: &Scalar) -> Value {
    let mut o = Map::new();
    o.insert("poly".into(), poly_json(s.numerator()));
    if !s.is_polynomial() {
        o.insert("den".into(), poly_json(s.denominator()));
    }
    Value::Object(o)
}

fn matrix_json(a: &NovikovMatrix) -> Value {
    Value::Array(
        a.entries()
            .map(|((i, j), v)| {
                let mut o = match scalar_json(v) {
                    Value::Object(o) => o,
                    _ => unreachable!(),
                };
                o.insert("row".into(), json!(i));
                o.insert("col".into(), json!(j));
                Value::Object(o)
            })
            .collect(),
    )
}

fn line_type_name(t: &LineType) -> String {
    t.to_string()
}

fn validation_section(ctx: &Ctx, rep: &ValidationReport) -> Section {
    let c = ctx.complex;
    let mut text = String::from("validation\n");
    let counts: Vec<String> = (0..3u8)
        .map(|k| format!("{} of index {k}", c.partition().count(k)))
        .collect();
    let _ = writeln!(text, "  generators: {} ({})", c.m(), counts.join(", "));
    let _ = writeln!(
        text,
        "  Δ∘Δ = 0: {}",
        if rep.square_zero { "yes" } else { "no" }
    );
    for (what, lines) in [("column", &rep.columns), ("row", &rep.rows)] {
        for (j, t) in lines {
            let _ = writeln!(text, "  {what} {}: {}", ctx.label(*j), line_type_name(t));
        }
    }
    let verdict = if rep.admissible() {
        "admissible"
    } else {
        "inadmissible"
    };
    let _ = writeln!(text, "  verdict: {verdict}");
    for p in rep.problems() {
        let _ = writeln!(text, "  problem: {p}");
    }
    let lines = |v: &[(usize, LineType)]| -> Value {
        v.iter()
            .map(|(j, t)| json!({"generator": j, "type": t.number(), "shape": line_type_name(t)}))
            .collect()
    };
    Section {
        key: "validation",
        text,
        data: json!({
            "m": c.m(),
            "indices": c.partition().as_slice(),
            "square_zero": rep.square_zero,
            "columns": lines(&rep.columns),
            "rows": lines(&rep.rows),
            "admissible": rep.admissible(),
            "problems": rep.problems(),
        }),
    }
}

fn track_name(t: Track) -> &'static str {
    match t {
        Track::Main => "main",
        Track::Raw => "raw",
    }
}

fn sweep_section(ctx: &Ctx, h: &SweepHistory) -> Section {
    let mut text = String::from("sweep\n");
    let _ = writeln!(text, "  steps: L = {}", h.len());
    let mut marks = Vec::new();
    for k in h.marks() {
        let partner = k
            .partner
            .map(|u| format!(" (row primary in column {u})"))
            .unwrap_or_default();
        let _ = writeln!(
            text,
            "  diagonal {}: {} pivot ({},{}) = {}{partner}",
            k.diagonal,
            k.kind,
            k.row,
            k.col,
            ctx.show(&k.value)
        );
        marks.push(json!({
            "kind": k.kind.to_string(),
            "row": k.row,
            "col": k.col,
            "diagonal": k.diagonal,
            "value": scalar_json(&k.value),
            "partner": k.partner,
        }));
    }
    let mut steps = Vec::new();
    if ctx.cfg.trace {
        for st in trace(h) {
            let r = st.diagonal;
            let _ = writeln!(text, "  step {r}");
            for ((i, j), v) in &st.basis_change {
                let _ = writeln!(text, "    T^{r}({i},{j}) = {}", ctx.show(v));
            }
            let mut mats = Map::new();
            for &t in ctx.cfg.track.tracks() {
                let a = h.track(t, r + 1);
                let _ = write!(
                    text,
                    "    Δ^{} ({} track)\n{}",
                    r + 1,
                    track_name(t),
                    indent(&ctx.grid(a), 6)
                );
                mats.insert(track_name(t).into(), matrix_json(a));
            }
            steps.push(json!({
                "diagonal": r,
                "basis_change": st.basis_change.iter()
                    .map(|((i, j), v)| json!({"row": i, "col": j, "value": scalar_json(v)}))
                    .collect::<Vec<_>>(),
                "changed_columns": st.changed_columns,
                "matrices": mats,
            }));
        }
    }
    let mut finals = Map::new();
    for &t in ctx.cfg.track.tracks() {
        let a = h.track(t, h.len());
        let _ = write!(
            text,
            "  final matrix ({} track)\n{}",
            track_name(t),
            indent(&ctx.grid(a), 4)
        );
        finals.insert(track_name(t).into(), matrix_json(a));
    }
    Section {
        key: "sweep",
        text,
        data: json!({"steps": h.len(), "marks": marks, "trace": steps, "final": finals}),
    }
}

fn indent(s: &str, n: usize) -> String {
    let pad = " ".repeat(n);
    s.lines().map(|l| format!("{pad}{l}\n")).collect()
}

fn checks_section(h: &SweepHistory) -> Result<(Section, ViolationReport)> {
    let mut rep = check_block_invariants(h);
    rep.extend(check_final_matrix(h.final_matrix()).into_violations(h.len()));
    rep.extend(check_block_isolation(h)?);
    rep.extend(check_idempotence(h)?);
    let mut text = String::from("checks\n");
    if rep.is_clean() {
        text.push_str("  block invariants, final matrix, block isolation, idempotence: clean\n");
    }
    for v in &rep.violations {
        let _ = writeln!(text, "  violation: {v}");
    }
    let data = json!({
        "clean": rep.is_clean(),
        "violations": rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    });
    Ok((
        Section {
            key: "checks",
            text,
            data,
        },
        rep,
    ))
}

fn pages_section(ctx: &Ctx, seq: &SpectralSequence) -> Section {
    let mut text = String::from("pages\n");
    let mut pages = Vec::new();
    for r in 1..=seq.stabilization_step() {
        let page = seq.page(r);
        let free: Vec<String> = page
            .iter()
            .filter(|e| e.status.is_free())
            .map(|e| format!("E_{}", e.p))
            .collect();
        let _ = writeln!(
            text,
            "  E^{r}: free {}",
            if free.is_empty() {
                "none".to_string()
            } else {
                free.join(" ")
            }
        );
        let mut entries = Vec::new();
        for e in page {
            if let Some((d, tgt)) = e.nonzero_differential() {
                let _ = writeln!(
                    text,
                    "    d^{r}_{}: E^{r}_{} → E^{r}_{tgt} = {}",
                    e.p,
                    e.p,
                    ctx.show(d)
                );
            }
            let generator = match e.status {
                ModuleStatus::Zero => Value::Null,
                ModuleStatus::FreeRankOne { col, step } => json!({"col": col, "step": step}),
            };
            entries.push(json!({
                "p": e.p,
                "index": e.index,
                "free": e.status.is_free(),
                "generator": generator,
                "differential": e.differential.as_ref().map(scalar_json),
            }));
        }
        pages.push(json!({"r": r, "entries": entries}));
    }
    text.push_str("  cancellations:\n");
    let mut cancellations = Vec::new();
    for (r, p, q, d) in seq.nonzero_differentials() {
        let _ = writeln!(
            text,
            "    page {r}: d^{r}_{p} = {} kills E^{}_{p} and E^{}_{q} ({} ↔ {})",
            ctx.show(&d),
            r + 1,
            r + 1,
            ctx.label(p + 1),
            ctx.label(q + 1)
        );
        cancellations.push(json!({"r": r, "p": p, "target": q, "value": scalar_json(&d)}));
    }
    let ranks = seq.einfty_ranks();
    let einf: Vec<usize> = seq
        .einfty()
        .iter()
        .filter(|e| e.status.is_free())
        .map(|e| e.p)
        .collect();
    if einf.is_empty() {
        text.push_str("  E^∞ = 0 everywhere\n");
    } else {
        let list: Vec<String> = einf.iter().map(|p| format!("E_{p}")).collect();
        let _ = writeln!(
            text,
            "  E^∞ free at {} (ranks by index {:?})",
            list.join(" "),
            ranks
        );
    }
    Section {
        key: "pages",
        text,
        data: json!({
            "stabilization_step": seq.stabilization_step(),
            "pages": pages,
            "cancellations": cancellations,
            "einfty_free": einf,
            "einfty_ranks": ranks,
        }),
    }
}

fn rule_name(r: &CaseRule) -> String {
    match r {
        CaseRule::SinkBinomial => "saddle-sink, binomial pivot".into(),
        CaseRule::SourceBinomial => "source-saddle, binomial pivot".into(),
        CaseRule::SinkMonomial { partner: None } | CaseRule::SourceMonomial { partner: None } => {
            "monomial pivot, no partner".into()
        }
        CaseRule::SinkMonomial { partner: Some(i) } => format!("monomial pivot, partner sink {i}"),
        CaseRule::SourceMonomial { partner: Some(j) } => {
            format!("monomial pivot, partner source {j}")
        }
    }
}

fn cancellation_section(ctx: &Ctx, rc: &RcaHistory, fam: &FlowFamily) -> Section {
    let mut text = String::from("cancellation\n");
    let mut events = Vec::new();
    for e in fam.events() {
        let _ = writeln!(
            text,
            "  step {}: cancel {} with {} via pivot ({},{}) = {} [{}]",
            e.step,
            ctx.label(e.col),
            ctx.label(e.row),
            e.row,
            e.col,
            ctx.show(&e.pivot),
            rule_name(&e.rule)
        );
        for u in &e.updates {
            let _ = writeln!(
                text,
                "    N({}, {}): {} → {}",
                ctx.label(u.col),
                ctx.label(u.row),
                ctx.show(&u.old),
                ctx.show(&u.new)
            );
        }
        for a in &e.annotations {
            let _ = writeln!(text, "    note: {a}");
        }
        events.push(json!({
            "step": e.step,
            "col": e.col,
            "row": e.row,
            "index": e.index,
            "pivot": scalar_json(&e.pivot),
            "rule": rule_name(&e.rule),
            "updates": e.updates.iter().map(|u| json!({
                "col": u.col, "row": u.row,
                "old": scalar_json(&u.old), "new": scalar_json(&u.new),
            })).collect::<Vec<_>>(),
            "annotations": e.annotations,
        }));
    }
    let last = fam.last();
    let names: Vec<&str> = last.survivors.iter().map(|&j| ctx.label(j)).collect();
    let _ = writeln!(
        text,
        "  surviving generators: {}",
        if names.is_empty() {
            "none".to_string()
        } else {
            names.join(" ")
        }
    );
    for n in &fam.audit {
        let _ = writeln!(text, "  audit: {n}");
    }
    let mut flows = Vec::new();
    if ctx.cfg.trace {
        for s in &fam.states {
            let labels: Vec<String> = s
                .survivors
                .iter()
                .map(|&j| ctx.label(j).to_string())
                .collect();
            let _ = write!(
                text,
                "  flow f^{} on {} generators\n{}",
                s.step,
                s.survivors.len(),
                indent(&render_grid(&s.reduced, &labels, ctx.cfg.truncate), 4)
            );
            flows.push(json!({
                "step": s.step,
                "survivors": s.survivors,
                "reduced": matrix_json(&s.reduced),
            }));
        }
        for r in 0..rc.len() {
            let _ = write!(text, "  Δ̃^{r}\n{}", indent(&ctx.grid(rc.matrix(r)), 4));
        }
    }
    Section {
        key: "cancellation",
        text,
        data: json!({
            "events": events,
            "survivors": last.survivors,
            "audit": fam.audit.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
            "flows": flows,
        }),
    }
}

fn orbits_section(ctx: &Ctx, orbits: &[PeriodicOrbit]) -> Section {
    let mut text = String::from("orbits\n");
    if orbits.is_empty() {
        text.push_str("  none\n");
    }
    for o in orbits {
        let _ = writeln!(
            text,
            "  {} of period {} born at step {} from pivot ({},{}) = {}",
            o.stability,
            o.period,
            o.born_at_step,
            o.row,
            o.col,
            ctx.show(&o.pivot)
        );
    }
    let data = orbits
        .iter()
        .map(|o| {
            json!({
                "stability": o.stability.to_string(),
                "period": o.period,
                "born_at_step": o.born_at_step,
                "row": o.row,
                "col": o.col,
                "pivot": scalar_json(&o.pivot),
            })
        })
        .collect();
    Section {
        key: "orbits",
        text,
        data,
    }
}

fn render(cfg: &PipelineConfig, sections: &[Section]) -> String {
    match cfg.format {
        Format::Text => sections.iter().map(|s| s.text.as_str()).collect(),
        Format::Structured => {
            let mut o = Map::new();
            for s in sections {
                o.insert(s.key.into(), s.data.clone());
            }
            let mut out = serde_json::to_string_pretty(&Value::Object(o)).unwrap_or_default();
            out.push('\n');
            out
        }
    }
}

fn invariant(msg: String) -> Error {
    Error::InternalInvariantViolation(msg)
}

fn sections_for(cfg: &PipelineConfig, c: &FilteredComplex, out: &mut Vec<Section>) -> Result<()> {
    let ctx = Ctx { cfg, complex: c };
    let rep = validate_differential(c);
    let admissible = rep.admissible();
    if matches!(cfg.command, Command::Validate | Command::All) {
        out.push(validation_section(&ctx, &rep));
    }
    if !admissible {
        return Err(Error::Inadmissible(rep.problems().join("; ")));
    }
    if cfg.command == Command::Validate {
        return Ok(());
    }
    let wants = |cmds: &[Command]| cmds.contains(&cfg.command);
    let mut seq = None;
    if wants(&[Command::Sweep, Command::Pages, Command::All]) {
        let h = run_sssa(c)?;
        if wants(&[Command::Sweep, Command::All]) {
            out.push(sweep_section(&ctx, &h));
            let (sec, rep) = checks_section(&h)?;
            out.push(sec);
            if !rep.is_clean() {
                return Err(invariant(format!(
                    "{} sweep violations",
                    rep.violations.len()
                )));
            }
        }
        if wants(&[Command::Pages, Command::All]) {
            let s = compute_sequence(&h)?;
            if cfg.command == Command::Pages {
                out.push(pages_section(&ctx, &s));
            }
            seq = Some((h, s));
        }
    }
    if wants(&[Command::Cancel, Command::Orbits, Command::All]) {
        let rc = run_rca(c)?;
        let fam = flow_family(&rc)?;
        let orbits = detect_orbits(&fam.states, c.partition());
        if let Some((h, s)) = &seq {
            if !pivots_agree(h, &rc) {
                return Err(invariant("sweep and row cancellation pivots differ".into()));
            }
            if !events_match_differentials(&fam, s) {
                return Err(invariant(
                    "cancellation events do not match the nonzero page differentials".into(),
                ));
            }
            if !fam.audit.is_empty() {
                return Err(invariant(format!(
                    "{} incidence audit notes",
                    fam.audit.len()
                )));
            }
            out.push(pages_section(&ctx, s));
            let mut text = String::from("consistency\n");
            text.push_str("  sweep and row cancellation pivots agree\n");
            text.push_str("  cancellation events match the nonzero page differentials\n");
            out.push(Section {
                key: "consistency",
                text,
                data: json!({"pivots_agree": true, "events_match_differentials": true}),
            });
        }
        if wants(&[Command::Cancel, Command::All]) {
            out.push(cancellation_section(&ctx, &rc, &fam));
        }
        out.push(orbits_section(&ctx, &orbits));
    }
    Ok(())
}

/// Runs one command on one input file.
pub fn run_pipeline(cfg: &PipelineConfig) -> Outcome {
    let text = match std::fs::read_to_string(&cfg.input) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                report: String::new(),
                error: Some(Error::Io(format!("{}: {e}", cfg.input.display()))),
            }
        }
    };
    let complex = match parse_complex(&text) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                report: String::new(),
                error: Some(e),
            }
        }
    };
    let mut sections = Vec::new();
    let error = sections_for(cfg, &complex, &mut sections).err();
    Outcome {
        report: render(cfg, &sections),
        error,
    }
}

/// Runs the command on every input, `jobs` at a time, and returns the
/// outcomes in input order.
pub fn run_all(cli: &Cli) -> Vec<(PathBuf, Outcome)> {
    let configs: Vec<PipelineConfig> = cli
        .inputs
        .iter()
        .map(|p| PipelineConfig {
            input: p.clone(),
            command: cli.command,
            truncate: cli.truncate as usize,
            format: cli.format,
            trace: cli.trace,
            track: cli.track,
        })
        .collect();
    let jobs = (cli.jobs as usize).max(1);
    let mut results: Vec<Option<Outcome>> = vec![None; configs.len()];
    for (chunk_cfg, chunk_out) in configs.chunks(jobs).zip(results.chunks_mut(jobs)) {
        std::thread::scope(|s| {
            let handles: Vec<_> = chunk_cfg
                .iter()
                .map(|cfg| s.spawn(move || run_pipeline(cfg)))
                .collect();
            for (slot, h) in chunk_out.iter_mut().zip(handles) {
                *slot = Some(h.join().unwrap_or_else(|_| Outcome {
                    report: String::new(),
                    error: Some(invariant("worker panicked".into())),
                }));
            }
        });
    }
    configs
        .into_iter()
        .zip(results)
        .map(|(c, o)| (c.input, o.expect("every slot filled")))
        .collect()
}

/// Entry point shared by the binary: prints reports and returns the exit
/// status of the first failing input.
pub fn main_with(cli: &Cli) -> i32 {
    if cli.inputs.is_empty() {
        eprintln!("error: at least one --input is required");
        return 2;
    }
    let outcomes = run_all(cli);
    let many = outcomes.len() > 1;
    let mut code = 0;
    for (path, o) in &outcomes {
        if many && cli.format == Format::Text {
            println!("== {} ==", path.display());
        }
        print!("{}", o.report);
        if let Some(e) = &o.error {
            eprintln!("{}: {e}", path.display());
            if code == 0 {
                code = e.exit_code();
            }
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{generate_example, render_complex, Template};

    fn write_example(t: Template) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("novikov-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(format!(
            "{}.json",
            t.to_string().replace(['(', ')', ':'], "_")
        ));
        std::fs::write(&path, render_complex(&generate_example(t, &[]).unwrap())).unwrap();
        path
    }

    fn cfg(input: PathBuf, command: Command, format: Format) -> PipelineConfig {
        PipelineConfig {
            input,
            command,
            truncate: 8,
            format,
            trace: true,
            track: TrackSel::Both,
        }
    }

    #[test]
    fn all_is_clean_and_deterministic() {
        let p = write_example(Template::TorusB);
        for f in [Format::Text, Format::Structured] {
            let a = run_pipeline(&cfg(p.clone(), Command::All, f));
            assert_eq!(a.error, None, "{}", a.report);
            assert_eq!(a, run_pipeline(&cfg(p.clone(), Command::All, f)));
        }
        let s = run_pipeline(&cfg(p, Command::All, Format::Structured));
        let v: Value = serde_json::from_str(&s.report).unwrap();
        assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
        assert_eq!(v["pages"]["cancellations"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn missing_file_is_io_error() {
        let o = run_pipeline(&cfg(
            "/nonexistent/x.json".into(),
            Command::Validate,
            Format::Text,
        ));
        assert_eq!(o.exit_code(), 14);
    }

    #[test]
    fn cli_parses_flags_in_any_position() {
        let cli = Cli::try_parse_from([
            "novikov",
            "--truncate",
            "3",
            "pages",
            "--input",
            "a",
            "--input",
            "b",
            "--jobs",
            "2",
        ])
        .unwrap();
        assert_eq!(cli.command, Command::Pages);
        assert_eq!(cli.inputs.len(), 2);
        assert_eq!(cli.truncate, 3);
        assert!(Cli::try_parse_from(["novikov", "pages", "--truncate", "0"]).is_err());
    }
}
