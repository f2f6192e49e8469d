use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::{json, Value};

use crate::construct::StructureDoc;
use crate::io::{envelope, read_document, to_json, Outputs};
use crate::{CliResult, Common, Failure};
use poset_lab::priority::{stagewise_partial_order, stagewise_semi_transitive};
use poset_lab::structures::{
    check_semi_transitive, classify_elements, stability_kind, validate_partial_order, Class,
};
use poset_lab::Verdict;

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Structure file written by `construct` (or a bare structure document).
    #[arg(long)]
    pub input: PathBuf,
    /// Tail window for classifying an order; defaults to a tenth of its size.
    #[arg(long, visible_alias = "threshold")]
    pub tail_window: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

fn check<W: Serialize>(name: &str, verdict: &Verdict<W>) -> Value {
    json!({ "name": name, "pass": verdict.holds(), "witness": verdict.witness() })
}

fn verify(doc: &StructureDoc, tail_window: Option<usize>) -> CliResult<(Vec<Value>, Value)> {
    match doc {
        StructureDoc::Coloring { coloring } => {
            if coloring.colors() != 2 {
                return Err(Failure::Input(format!("expected a 2-coloring, got {} colors", coloring.colors())));
            }
            let semi = check_semi_transitive(coloring)?;
            let checks = vec![
                check("semi-transitive", &semi),
                check("stagewise-semi-transitive", &stagewise_semi_transitive(coloring)),
            ];
            Ok((checks, json!({ "type": "coloring", "size": coloring.size() })))
        }
        StructureDoc::Order { order } => {
            let stagewise = stagewise_partial_order(order);
            let mut checks = vec![check("stagewise-partial-order", &stagewise)];
            let p = match validate_partial_order(order.clone()) {
                Ok(p) => p,
                Err(v) => {
                    checks.push(check("partial-order", &Verdict::Fails(v)));
                    return Ok((checks, json!({ "type": "order", "size": order.size() })));
                }
            };
            checks.push(check::<()>("partial-order", &Verdict::Holds));
            let window = tail_window.unwrap_or((p.size() / 10).max(1));
            let cls = classify_elements(&p, window)?;
            let kind = stability_kind(&cls.classified_only())?;
            let verdict = if kind.is_weakly_stable() { Verdict::Holds } else { Verdict::Fails(kind) };
            checks.push(check("weakly-stable", &verdict));
            let count = |c: Class| cls.elements_of(c).count();
            let info = json!({
                "type": "order",
                "size": p.size(),
                "tail_window": window,
                "stability": kind,
                "small": count(Class::Small),
                "large": count(Class::Large),
                "isolated": count(Class::Isolated),
                "unstable": cls.unstable(),
            });
            Ok((checks, info))
        }
        StructureDoc::CeSet { columns, w } => {
            let mut sorted: Vec<_> = w.iter().collect();
            sorted.sort_by_key(|el| el.stage);
            let mut counts = vec![0usize; *columns];
            let mut verdict = Verdict::Holds;
            for el in sorted {
                if el.column < *columns {
                    counts[el.column] += 1;
                    if counts[el.column] > el.column && verdict.holds() {
                        verdict = Verdict::Fails(json!({ "stage": el.stage, "column": el.column }));
                    }
                }
            }
            Ok((vec![check("column-budget", &verdict)], json!({ "type": "ce-set", "enumerated": w.len() })))
        }
    }
}

pub fn run(args: VerifyArgs) -> CliResult<()> {
    let doc: StructureDoc = read_document(&args.input)?;
    let (checks, info) = verify(&doc, args.tail_window)?;
    let report = json!({ "structure": info, "checks": checks });
    let mut out = Outputs::new();
    out.add_primary("report.json", to_json(&envelope("verify", &args, args.common.seed, &report)));
    out.write(&args.common)?;
    let failed: Vec<&str> =
        checks.iter().filter(|c| c["pass"] == false).filter_map(|c| c["name"].as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant(failed.join(", ")))
    }
}
