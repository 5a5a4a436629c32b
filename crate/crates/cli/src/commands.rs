use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use triex_core::exploration::terminal::{run_terminal, TerminalOutcome};
use triex_core::exploration::wire::SessionConfig;
use triex_core::format::{parse_any, ContextDocument};
use triex_core::{
    conditional_implication_lattice, family_exploration, kc_lattice, label_nodes,
    triadic_exploration, ConditionSet, ContextFamily, ExplorationSession,
    ImplicationConditionContext, LabeledImplicationLattice, OracleExpert, Panel, SessionOptions,
    TriadicContext, Universe,
};

use crate::{Outputs, RunFlags};

/// Exit status for an inconsistency report.
const INCONSISTENT: u8 = 3;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        io::stdout().write_all(text.as_bytes())?;
        return Ok(());
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Snapshot writes go through a temporary file so an interrupted write never
/// clobbers the previous snapshot.
fn write_atomic(path: &Path, text: &str) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn json_value(text: &str) -> Option<serde_json::Map<String, serde_json::Value>> {
    serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .and_then(|v| v.as_object().cloned())
}

fn is_context(obj: &serde_json::Map<String, serde_json::Value>) -> bool {
    obj.contains_key("objects") || obj.contains_key("members")
}

fn is_snapshot(obj: &serde_json::Map<String, serde_json::Value>) -> bool {
    obj.contains_key("schedule")
}

pub fn validate(path: &Path) -> Result<ExitCode> {
    let text = read(path)?;
    let report = match json_value(&text) {
        Some(obj) if is_snapshot(&obj) => {
            let s = ExplorationSession::from_json(&text)?;
            format!(
                "session snapshot: {:?}, {} answers, condition set {}/{}",
                s.status(),
                s.seq(),
                s.node_index() + 1,
                s.schedule().len()
            )
        }
        Some(obj) if !is_context(&obj) => {
            let config: SessionConfig = serde_json::from_str(&text)?;
            let s = config.build()?;
            format!(
                "session config: {} attributes, {} conditions, {} condition sets",
                s.universe().attributes.len(),
                s.universe().conditions.len(),
                s.schedule().len()
            )
        }
        _ => match parse_any(&text)? {
            ContextDocument::Dyadic(c) => {
                format!(
                    "formal context: {} objects, {} attributes",
                    c.objects().len(),
                    c.attributes().len()
                )
            }
            ContextDocument::Triadic(t) => format!(
                "triadic context: {} objects, {} attributes, {} conditions, {} incidences",
                t.objects().len(),
                t.attributes().len(),
                t.conditions().len(),
                t.triples().count()
            ),
            ContextDocument::Family(f) => format!(
                "context family: {} experts, {} attributes",
                f.len(),
                f.attributes().len()
            ),
        },
    };
    println!("ok: {report}");
    Ok(ExitCode::SUCCESS)
}

enum Domain {
    Triadic(TriadicContext),
    Family(ContextFamily),
}

fn load_domain(path: &Path) -> Result<Domain> {
    match parse_any(&read(path)?).with_context(|| format!("parsing {}", path.display()))? {
        ContextDocument::Triadic(t) => Ok(Domain::Triadic(t)),
        ContextDocument::Family(f) => Ok(Domain::Family(f)),
        ContextDocument::Dyadic(c) => Ok(Domain::Triadic(TriadicContext::from_slices(
            vec!["all".into()],
            std::slice::from_ref(&c),
        )?)),
    }
}

fn check_schedule_size(conditions: usize, force: bool) -> Result<()> {
    if conditions > 12 && !force {
        bail!("{conditions} conditions give 2^{conditions} - 1 condition sets (more than 12 conditions); pass --force");
    }
    Ok(())
}

fn options(run: &RunFlags, conditions: &[String]) -> Result<SessionOptions> {
    check_schedule_size(conditions.len(), run.force)?;
    let mut opts = SessionOptions::default()
        .variant(run.variant)
        .order(run.order)
        .allow_large_schedule(run.force);
    if let Some(list) = &run.conditions {
        let set = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|c| {
                conditions
                    .iter()
                    .position(|b| b == c)
                    .with_context(|| format!("unknown condition {c:?}"))
            })
            .collect::<Result<ConditionSet>>()?;
        opts = opts.restrict_to(set);
    }
    Ok(opts)
}

fn lattice_of(kc: &ImplicationConditionContext) -> LabeledImplicationLattice {
    label_nodes(kc, &kc_lattice(kc))
}

fn write_outputs(out: &Outputs, u: &Universe, session: &ExplorationSession) -> Result<()> {
    if let Some(p) = &out.transcript {
        write_out(
            p,
            &triex_core::exploration::transcript_csv(u, session.transcript()),
        )?;
    }
    if out.lattice.is_some() || out.dot.is_some() {
        let lattice = lattice_of(&session.current_kc());
        if let Some(p) = &out.lattice {
            write_out(p, &(lattice.to_json() + "\n"))?;
        }
        if let Some(p) = &out.dot {
            write_out(p, &lattice.to_dot())?;
        }
    }
    Ok(())
}

pub fn oracle(domain: &Path, run: &RunFlags, out: &Outputs) -> Result<ExitCode> {
    let outcome = match load_domain(domain)? {
        Domain::Triadic(t) => {
            let opts = options(run, t.conditions())?;
            let empty = TriadicContext::empty(t.attributes().to_vec(), t.conditions().to_vec())?;
            triadic_exploration(empty, None, &mut OracleExpert::triadic(t), opts)?
        }
        Domain::Family(f) => {
            let opts = options(run, &f.member_ids())?;
            let empty = ContextFamily::empty(f.attributes().to_vec(), f.member_ids())?;
            family_exploration(empty, None, &mut Panel::oracles(&f), opts)?
        }
    };
    let accepted = outcome.transcript.iter().filter(|r| r.accepted()).count();
    let summary = format!(
        "{} questions ({} accepted), {} conditional implications",
        outcome.question_count(),
        accepted,
        outcome.kc.len()
    );
    if out.transcript.as_deref() == Some(Path::new("-")) {
        eprintln!("{summary}");
    } else {
        println!("{summary}");
    }
    if let Some(p) = &out.transcript {
        write_out(p, &outcome.transcript_csv())?;
    }
    if out.lattice.is_some() || out.dot.is_some() {
        let lattice = lattice_of(&outcome.kc);
        if let Some(p) = &out.lattice {
            write_out(p, &(lattice.to_json() + "\n"))?;
        }
        if let Some(p) = &out.dot {
            write_out(p, &lattice.to_dot())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn session_from_config(path: &Path) -> Result<ExplorationSession> {
    let text = read(path)?;
    let config: SessionConfig = match json_value(&text) {
        Some(obj) if is_context(&obj) => match parse_any(&text)? {
            ContextDocument::Triadic(t) => SessionConfig::for_triadic(&t),
            _ => bail!("only triadic contexts can seed a session directly; write a session config"),
        },
        _ => serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?,
    };
    Ok(config.build()?)
}

pub fn explore(
    config: Option<&Path>,
    resume: Option<&Path>,
    snapshot: Option<PathBuf>,
    out: &Outputs,
) -> Result<ExitCode> {
    let (mut session, snapshot) = match (config, resume) {
        (_, Some(r)) => (
            ExplorationSession::from_json(&read(r)?)
                .with_context(|| format!("loading {}", r.display()))?,
            snapshot.unwrap_or_else(|| r.to_owned()),
        ),
        (Some(c), None) => {
            let default = c.with_extension("session.json");
            (session_from_config(c)?, snapshot.unwrap_or(default))
        }
        (None, None) => bail!("give a session config or --resume a snapshot"),
    };
    let u = session.universe().clone();
    let outcome = run_terminal(&mut session, io::stdin().lock(), io::stdout().lock(), |s| {
        write_atomic(&snapshot, &s.to_json())
    })
    .context("terminal session")?;
    write_atomic(&snapshot, &session.to_json())
        .with_context(|| format!("writing {}", snapshot.display()))?;
    match outcome {
        TerminalOutcome::Finished => {
            for imp in session.kc().entries() {
                println!(
                    "{{{}}}  {}",
                    u.render_conditions(&imp.holds_for),
                    imp.implication.render(&u.attributes)
                );
            }
            write_outputs(out, &u, &session)?;
            Ok(ExitCode::SUCCESS)
        }
        TerminalOutcome::Interrupted => {
            println!("stopped; resume with --resume {}", snapshot.display());
            write_outputs(out, &u, &session)?;
            Ok(ExitCode::SUCCESS)
        }
        TerminalOutcome::Inconsistent(r) => {
            eprintln!(
                "inconsistent answer ({}); the question is still open, resume with --resume {}",
                r.code(),
                snapshot.display()
            );
            Ok(ExitCode::from(INCONSISTENT))
        }
    }
}

pub fn lattice(
    path: &Path,
    json: Option<&Path>,
    dot: Option<&Path>,
    force: bool,
) -> Result<ExitCode> {
    let text = read(path)?;
    let lattice = match json_value(&text) {
        Some(obj) if is_snapshot(&obj) => {
            lattice_of(&ExplorationSession::from_json(&text)?.current_kc())
        }
        _ => {
            let t = match load_domain(path)? {
                Domain::Triadic(t) => t,
                Domain::Family(f) => bail!(
                    "family domains have no single lattice of conditions; run `oracle --lattice` ({} experts)",
                    f.len()
                ),
            };
            check_schedule_size(t.conditions().len(), force)?;
            conditional_implication_lattice(&t)
        }
    };
    if let Some(p) = json {
        write_out(p, &(lattice.to_json() + "\n"))?;
    }
    if let Some(p) = dot {
        write_out(p, &lattice.to_dot())?;
    }
    if json.is_none() && dot.is_none() {
        for n in &lattice.nodes {
            let intent = match lattice.condition_names(&n.intent).join(", ") {
                s if s.is_empty() => "∅".to_owned(),
                s => s,
            };
            if n.universe {
                println!("{intent}  (all implications)");
                continue;
            }
            println!("{{{intent}}}");
            for l in lattice.render(&n.label) {
                println!("    {l}");
            }
        }
        for (lower, upper) in &lattice.edges {
            println!("edge {lower} -> {upper}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn serve(
    host: &str,
    port: u16,
    data_dir: PathBuf,
    static_dir: Option<PathBuf>,
) -> Result<ExitCode> {
    let store = triex_service::FileStore::open(&data_dir)
        .map_err(|e| io::Error::other(e.to_string()))
        .with_context(|| format!("opening {}", data_dir.display()))?;
    let service = Arc::new(triex_service::SessionService::new(store));
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .with_context(|| format!("binding {host}:{port}"))?;
        eprintln!(
            "serving on http://{} (sessions in {})",
            listener.local_addr()?,
            data_dir.display()
        );
        triex_service::serve(listener, triex_service::router(service, static_dir)).await?;
        Ok(ExitCode::SUCCESS)
    })
}
