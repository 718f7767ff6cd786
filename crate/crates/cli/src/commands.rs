//! Subcommand implementations. Each returns the text for stdout and an exit
//! code; errors propagate to `main` (exit 2).

use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use provlog_core::experiments::Suite;
use provlog_core::formula::{parse_formula, parse_il, Formula};
use provlog_core::glprover::{
    decide_fgl, decide_gl3_with, decide_gl4_with, decide_gl_closed, decide_gl_with,
    normal_form_traced, DecideOptions, Gl4Engine, Verdict,
};
use provlog_core::ignatiev::{linearity_experiment, TruncatedUniverse};
use provlog_core::interp::{decide_ilw3_with, translate_tr};
use provlog_core::kripke::{build_pmorphism_from_g1, model_to_dot, FrameJson};
use provlog_core::Limits;

use crate::{Command, Engine, ExportFormat};

/// Version of every `--json` document.
pub const SCHEMA_VERSION: u32 = 1;

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output { stdout, code: 0 }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Inline JSON if it starts with `{`, otherwise a file path.
fn read_json_arg(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Logic {
    Gl,
    Gl3,
    Gl4,
    GlClosed,
    Fgl(u32),
    Ilw3,
}

fn parse_logic(s: &str) -> Result<Logic> {
    Ok(match s {
        "gl" => Logic::Gl,
        "gl3" => Logic::Gl3,
        "gl4" => Logic::Gl4,
        "glclosed" => Logic::GlClosed,
        "ilw3" => Logic::Ilw3,
        _ => match s.strip_prefix("fgl:") {
            Some(n) => Logic::Fgl(
                n.parse()
                    .map_err(|_| anyhow!("bad constant count in {s:?}"))?,
            ),
            None => bail!("unknown logic {s:?}; expected gl, gl3, gl4, glclosed, fgl:<n> or ilw3"),
        },
    })
}

pub fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Decide {
            logic,
            formula,
            cross_check,
            dot,
            json,
            max_worlds,
            timeout,
            engine,
        } => {
            if !(timeout.is_finite() && timeout > 0.0) {
                bail!("--timeout must be a positive number of seconds");
            }
            let opts = DecideOptions {
                cross_check,
                limits: Limits::with_timeout(max_worlds, Duration::from_secs_f64(timeout)),
            };
            let engine = match engine {
                Engine::G1 => Gl4Engine::G1,
                Engine::Enumeration => Gl4Engine::Enumeration,
            };
            decide(&logic, &formula, &opts, engine, dot.as_deref(), json)
        }
        Command::Normalform {
            n,
            formula,
            trace,
            json,
        } => {
            let f = parse_formula(&formula)?;
            let (nf, log) = normal_form_traced(n, &f)?;
            let stdout = if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "normalform",
                    "n": n,
                    "formula": f.to_string(),
                    "normal_form": nf.to_string(),
                    "clauses": nf.clauses,
                    "trace": if trace { log } else { Vec::new() },
                }))
            } else {
                let mut s = format!("{nf}\n");
                if trace {
                    for line in log {
                        s.push_str(&format!("  {line}\n"));
                    }
                }
                s
            };
            Ok(Output::ok(stdout))
        }
        Command::Translate { formula, json } => {
            let f = parse_il(&formula)?;
            let t = translate_tr(&f)?;
            Ok(Output::ok(if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "translate",
                    "formula": f.to_string(),
                    "translation": t.to_string(),
                }))
            } else {
                format!("{t}\n")
            }))
        }
        Command::Modelcheck {
            model,
            world,
            formula,
            json,
        } => {
            let m = FrameJson::parse(&read_json_arg(&model)?)?.to_model()?;
            let f = parse_formula(&formula)?;
            let w = m.frame.index_of(&world)?;
            let truth = m.check(w, &f)?;
            Ok(Output::ok(if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "modelcheck",
                    "formula": f.to_string(),
                    "world": world,
                    "value": truth,
                }))
            } else {
                format!("{truth}\n")
            }))
        }
        Command::Ignatiev {
            bound,
            levels,
            export,
            linearity,
        } => ignatiev(bound, levels, export, linearity),
        Command::Pmorph { frame, world } => {
            let fr = FrameJson::parse(&read_json_arg(&frame)?)?.to_frame()?;
            let x = fr.index_of(&world)?;
            let (point, pm) = build_pmorphism_from_g1(&fr, x)?;
            let map: Vec<Value> = pm
                .map
                .iter()
                .enumerate()
                .map(|(k, &t)| json!({"from": pm.source.name(k), "to": pm.target.name(t)}))
                .collect();
            Ok(Output::ok(pretty(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "pmorph",
                "world": world,
                "point": point.to_string(),
                "verified": pm.is_valid(),
                "surjective": pm.is_surjective(),
                "map": map,
            }))))
        }
        Command::Experiment { suite, seed, json } => {
            let suite: Suite = suite.parse()?;
            let report = suite.run(seed);
            let code = if report.passed() { 0 } else { 1 };
            let stdout = if json {
                pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "experiment",
                    "report": report,
                }))
            } else {
                report.table()
            };
            Ok(Output { stdout, code })
        }
    }
}

fn decide(
    logic: &str,
    formula: &str,
    opts: &DecideOptions,
    engine: Gl4Engine,
    dot: Option<&std::path::Path>,
    json: bool,
) -> Result<Output> {
    let logic = parse_logic(logic)?;
    let mut translation: Option<Formula> = None;
    let (shown, verdict) = match logic {
        Logic::Ilw3 => {
            let f = parse_il(formula)?;
            let v = decide_ilw3_with(&f, opts)?;
            translation = Some(v.translation.clone());
            (f.to_string(), v.verdict)
        }
        _ => {
            let f = parse_formula(formula)?;
            let v = match logic {
                Logic::Gl => decide_gl_with(&f, opts)?,
                Logic::Gl3 => decide_gl3_with(&f, opts)?,
                Logic::Gl4 => decide_gl4_with(&f, engine, opts)?,
                Logic::GlClosed => decide_gl_closed(&f)?,
                Logic::Fgl(n) => decide_fgl(n, &f)?,
                Logic::Ilw3 => unreachable!("handled above"),
            };
            (f.to_string(), v)
        }
    };
    if let (Some(path), Verdict::Refuted { model, world }) = (dot, &verdict) {
        std::fs::write(path, model_to_dot(model, Some(*world)))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let code = if verdict.is_provable() { 0 } else { 1 };
    let stdout = match &verdict {
        Verdict::Provable { trace } if json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "decide",
            "formula": shown,
            "translation": translation.map(|t| t.to_string()),
            "verdict": "provable",
            "trace": trace,
        })),
        Verdict::Refuted { model, world } if json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "decide",
            "formula": shown,
            "translation": translation.map(|t| t.to_string()),
            "verdict": "refuted",
            "world": model.frame.name(*world),
            "countermodel": FrameJson::from_model(model),
        })),
        Verdict::Provable { trace } => {
            let mut s = String::from("provable\n");
            for line in trace {
                s.push_str(&format!("  {line}\n"));
            }
            s
        }
        Verdict::Refuted { model, world } => {
            let mut s = format!("refuted at world {}\n", model.frame.name(*world));
            if let Some(t) = &translation {
                s.push_str(&format!("countermodel for the translation {t}\n"));
            }
            s.push_str(&FrameJson::from_model(model).to_json());
            s.push('\n');
            if dot.is_none() {
                s.push_str(&model_to_dot(model, Some(*world)));
            }
            s
        }
    };
    Ok(Output { stdout, code })
}

fn ignatiev(
    bound: usize,
    levels: u32,
    export: Option<ExportFormat>,
    linearity: Option<Vec<String>>,
) -> Result<Output> {
    let tu = TruncatedUniverse::new(bound, levels)?;
    if let Some(args) = linearity {
        let a = parse_formula(&args[0])?;
        let b = parse_formula(&args[1])?;
        let report = linearity_experiment(&tu, &a, &b)?;
        let code = if report.violations.is_empty() { 0 } else { 1 };
        let stdout = pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "ignatiev",
            "bound": bound,
            "levels": levels,
            "report": report,
        }));
        return Ok(Output { stdout, code });
    }
    let stdout = match export {
        Some(ExportFormat::Json) => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "ignatiev",
            "truncation": tu.export(),
        })),
        Some(ExportFormat::Dot) => tu.to_dot(),
        None => {
            let mut s = format!(
                "truncation with coordinate size <= {bound}, relations R0..R{levels} (approximate)\n"
            );
            s.push_str(&format!("points: {}\n", tu.len()));
            for l in 0..=levels {
                s.push_str(&format!("R{l} edges: {}\n", tu.edge_count(l)));
            }
            s
        }
    };
    Ok(Output::ok(stdout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logics() {
        assert_eq!(parse_logic("fgl:2").unwrap(), Logic::Fgl(2));
        assert_eq!(parse_logic("gl4").unwrap(), Logic::Gl4);
        assert!(parse_logic("fgl:x").is_err());
        assert!(parse_logic("k4").is_err());
    }
}
