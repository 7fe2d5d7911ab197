//! Single-object commands: `oac`, `ai`, `glue`, `bounds`.

use std::fmt::{Display, Write as _};

use assembly_chains::addition_chains::{
    optimal_chains, schonhage_bracket, scholz_bracket, shortest_length, AdditionChain,
};
use assembly_chains::assembly_core::{
    to_dag, AssemblyChain, MemoCache, Parent, Solver, SolverConfig,
};
use assembly_chains::bounds::coarse_bounds;
use assembly_chains::{Error, Result};
use serde_json::{json, Value};

use crate::spaces::CliSpace;
use crate::sweep::{self, SweepRow};
use crate::Format;

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => csv_quote(s),
        other => csv_quote(&other.to_string()),
    }
}

/// Renders a flat record; `text` is `key=value` lines.
fn render_record(fields: &[(&str, Value)], format: Format) -> String {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, Value> =
                fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(map)).unwrap())
        }
        Format::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let vals: Vec<String> = fields.iter().map(|(_, v)| csv_value(v)).collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        Format::Text => {
            let mut out = String::new();
            for (k, v) in fields {
                let shown = match v {
                    Value::Null => continue,
                    Value::String(s) => s.clone(),
                    Value::Array(items) => format!(
                        "({})",
                        items.iter().map(|i| i.to_string().trim_matches('"').to_string()).collect::<Vec<_>>().join(",")
                    ),
                    other => other.to_string(),
                };
                if shown.contains('\n') {
                    let _ = writeln!(out, "{k}:\n{shown}");
                } else {
                    let _ = writeln!(out, "{k}={shown}");
                }
            }
            out
        }
    }
}

pub struct OacOptions {
    pub all: bool,
    pub brackets: bool,
}

pub fn oac(n: u64, opts: &OacOptions, format: Format) -> Result<String> {
    let ell = shortest_length(n)?;
    let mut fields = vec![("n", json!(n)), ("ell", json!(ell))];
    if opts.all {
        let chains: Vec<AdditionChain> = if n == 1 {
            vec![AdditionChain::new(vec![1])?]
        } else {
            optimal_chains(n)?.into_iter().collect()
        };
        fields.push(("optimal_count", json!(chains.len())));
        let list: Vec<String> = chains.iter().map(ToString::to_string).collect();
        fields.push((
            "optimal_chains",
            match format {
                Format::Text => json!(list.join("\n")),
                Format::Csv => json!(list.join(" ")),
                Format::Json => json!(chains.iter().map(|c| c.terms().to_vec()).collect::<Vec<_>>()),
            },
        ));
    }
    if opts.brackets {
        let (lo, hi) = schonhage_bracket(n)?;
        let round = |x: f64| (x * 100.0).round() / 100.0;
        fields.push(("schonhage", json!([round(lo), round(hi)])));
        fields.push((
            "scholz",
            match scholz_bracket(n) {
                Ok((a, b)) => json!([a, b]),
                Err(_) => Value::Null,
            },
        ));
    }
    Ok(render_record(&fields, format))
}

fn parent_label<O>(chain: &AssemblyChain<O>, p: &Parent<O>, code: impl Fn(&O) -> String) -> String {
    match p {
        Parent::Block(b) => code(b),
        Parent::Step(i) => format!("#{} {}", i + 1, code(&chain.steps[*i].object)),
    }
}

/// Outcome of `ai`: the report, and the budget error if the solver gave up.
pub struct AiReport {
    pub output: String,
    pub budget_error: Option<Error>,
}

pub fn ai<S: CliSpace>(
    space: &S,
    text: &str,
    node_budget: u64,
    memo: Option<&MemoCache>,
    format: Format,
) -> Result<AiReport>
where
    S::Object: Display,
{
    let target = space.parse_object(text)?;
    let size = space.size(&target) as u64;
    let ma = space.ma_values(size)?;
    let (lo, hi) = coarse_bounds(size)?;
    let mut fields = vec![
        ("space", json!(space.id())),
        ("object", json!(space.code(&target))),
        ("size", json!(size)),
        ("ell", json!(shortest_length(size)?)),
        ("coarse", json!([lo, hi])),
        ("ma_paper_literal", json!(ma.paper_literal)),
        ("ma_derived_count", json!(ma.derived_count)),
    ];
    let mut solver = Solver::with_config(
        space,
        SolverConfig {
            node_budget,
            ..SolverConfig::default()
        },
    );
    if let Some(m) = memo {
        solver = solver.with_memo(m);
    }
    let budget_error = match solver.solve(&target) {
        Ok(sol) => {
            let w = &sol.witness;
            let code = |o: &S::Object| space.code(o);
            fields.push(("ai", json!(sol.index)));
            fields.push(("nodes", json!(sol.nodes)));
            let objects: Vec<String> = w.objects().map(code).collect();
            fields.push(("witness", json!(objects)));
            let steps: Vec<String> = w
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    format!(
                        "#{} {} = {} + {}",
                        i + 1,
                        code(&s.object),
                        parent_label(w, &s.left, code),
                        parent_label(w, &s.right, code)
                    )
                })
                .collect();
            fields.push(("steps", if format == Format::Json { json!(steps) } else { json!(steps.join("\n")) }));
            let dot = to_dag(space, w)?.to_dot();
            fields.push(("dag", json!(dot.trim_end())));
            None
        }
        Err(e @ Error::BudgetExceeded { best_upper, .. }) => {
            fields.push(("ai_upper", json!(best_upper)));
            fields.push(("status", json!("budget-exceeded")));
            Some(e)
        }
        Err(e) => return Err(e),
    };
    Ok(AiReport {
        output: render_record(&fields, format),
        budget_error,
    })
}

pub fn glue<S: CliSpace>(space: &S, left: &str, right: &str, format: Format) -> Result<String>
where
    S::Object: Display,
{
    let x = space.parse_object(left)?;
    let y = space.parse_object(right)?;
    let codes: Vec<String> = space.glue(&x, &y)?.iter().map(|o| space.code(o)).collect();
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&codes).unwrap()),
        Format::Csv => {
            let mut out = String::from("object\n");
            for c in &codes {
                out.push_str(&csv_quote(c));
                out.push('\n');
            }
            out
        }
        Format::Text => codes.iter().map(|c| format!("{c}\n")).collect(),
    })
}

pub fn bounds<S: CliSpace>(space: &S, sizes: &[usize], format: Format) -> Result<String>
where
    S::Object: Display,
{
    let rows = sizes
        .iter()
        .map(|&s| {
            if s == 0 {
                return Err(Error::InvalidArgument("size must be positive".into()));
            }
            SweepRow::bounds(space, s, space.level_cardinality(s))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sweep::render(&rows, format, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use assembly_chains::space_strings::StringSpace;

    #[test]
    fn oac_text() {
        let out = oac(8, &OacOptions { all: false, brackets: true }, Format::Text).unwrap();
        assert_eq!(out, "n=8\nell=3\nschonhage=(0.87,3.0)\nscholz=(3,4)\n");
        let out = oac(7, &OacOptions { all: true, brackets: false }, Format::Csv).unwrap();
        assert!(out.starts_with("n,ell,optimal_count,optimal_chains\n7,4,5,"));
    }

    #[test]
    fn ai_json() {
        let r = ai(&StringSpace::directed(2), "0010", 1_000_000, None, Format::Json).unwrap();
        let v: Value = serde_json::from_str(&r.output).unwrap();
        assert_eq!(v["ai"], 3);
        assert_eq!(v["witness"], json!(["00", "001", "0010"]));
        assert!(v["dag"].as_str().unwrap().starts_with("digraph"));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_quote("0-1,1-2"), "\"0-1,1-2\"");
        assert_eq!(csv_quote("0010"), "0010");
    }
}
