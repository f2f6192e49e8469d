use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::io::{envelope, read_document, to_json, Outputs};
use crate::{CliResult, Common, Failure, Format};
use poset_lab::generate::{self, rng};
use poset_lab::priority::{
    build_ce_w, build_stable_semitransitive, build_weakly_stable_order, check_column_budget, check_injury_bound,
    check_markers, check_partitions, classification_matches_sides, stagewise_partial_order, stagewise_semi_transitive,
    verify_requirements, ConstructionTranscript, EnumeratedElement, OpponentSuite,
};
use poset_lab::reductions::semitransitive_to_order;
use poset_lab::structures::{to_dot, ColoringPrefix, Relation};
use poset_lab::{Pairing, Verdict};

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
pub enum Kind {
    #[value(name = "stable-semitransitive")]
    #[serde(rename = "stable-semitransitive")]
    StableSemitransitive,
    #[value(name = "weakly-stable-order")]
    #[serde(rename = "weakly-stable-order")]
    WeaklyStableOrder,
    #[value(name = "ce-W", alias = "ce-w")]
    #[serde(rename = "ce-W")]
    CeW,
}

#[derive(Args, Debug, Serialize)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Number of stages; the structure has one element per stage.
    #[arg(long, visible_alias = "horizon", value_parser = clap::value_parser!(u64).range(1..))]
    pub stages: u64,
    /// Opponent suite file, `none`, or `random` (generated from the seed).
    #[arg(long, default_value = "none")]
    pub opponents: String,
    /// Tail window for classifying the order: an element is stable when its
    /// relations do not change over the last this-many elements. Defaults to a
    /// tenth of the stages.
    #[arg(long, visible_alias = "threshold")]
    pub tail_window: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

/// A final structure, as written by `construct` and read by `verify` and `reduce`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum StructureDoc {
    Coloring { coloring: ColoringPrefix },
    Order { order: Relation },
    CeSet { columns: usize, w: Vec<EnumeratedElement> },
}

fn load_suite(args: &ConstructArgs, stages: usize) -> CliResult<OpponentSuite> {
    match args.opponents.as_str() {
        "none" => Ok(OpponentSuite::default()),
        "random" => {
            let mut r = rng(args.common.seed);
            let mut suite = OpponentSuite::default();
            match args.kind {
                Kind::StableSemitransitive => {
                    suite.pair = (0..5).map(|_| generate::essential_pair_script(&mut r, stages, 1)).collect();
                }
                Kind::WeaklyStableOrder => {
                    suite.r = (0..2).map(|_| generate::set_script(&mut r, stages, 1)).collect();
                    suite.s = (0..2).map(|_| generate::set_script(&mut r, stages, 1)).collect();
                    suite.t = (0..2).map(|_| generate::element_script(&mut r, stages, 1)).collect();
                }
                Kind::CeW => suite.functionals = generate::functional_suite(&mut r, Pairing::Cantor, 10, stages, 0.7),
            }
            Ok(suite)
        }
        path => read_document(&PathBuf::from(path)),
    }
}

fn check<W: Serialize>(name: &str, verdict: Verdict<W>) -> Value {
    json!({ "name": name, "pass": verdict.holds(), "witness": verdict.witness() })
}

fn transcript_checks(t: &ConstructionTranscript) -> Vec<Value> {
    vec![
        check("partitions", check_partitions(t)),
        check("markers", check_markers(t)),
        check("injury-bound", check_injury_bound(t)),
    ]
}

pub fn run(args: ConstructArgs) -> CliResult<()> {
    let stages = usize::try_from(args.stages).map_err(|_| Failure::Input("stage count too large".into()))?;
    let suite = load_suite(&args, stages)?;
    let common = &args.common;
    let pairing = Pairing::Cantor;
    let tail_window = args.tail_window.unwrap_or((stages / 10).max(1));

    let (transcript, structure, mut checks, dot) = match args.kind {
        Kind::StableSemitransitive => {
            let run = build_stable_semitransitive(&suite.pair, stages)?;
            let mut checks = vec![check("stagewise-semi-transitive", stagewise_semi_transitive(&run.coloring))];
            checks.extend(transcript_checks(&run.transcript));
            let dot = semitransitive_to_order(&run.coloring).ok().map(|p| to_dot(&p));
            (run.transcript, StructureDoc::Coloring { coloring: run.coloring }, checks, dot)
        }
        Kind::WeaklyStableOrder => {
            let run = build_weakly_stable_order(&suite.r, &suite.s, &suite.t, stages, tail_window)?;
            let mut checks = vec![
                check("stagewise-partial-order", stagewise_partial_order(run.order.relation())),
                check("classification-matches-sides", classification_matches_sides(&run.classification, run.final_sides())),
            ];
            checks.extend(transcript_checks(&run.transcript));
            let dot = Some(to_dot(&run.order));
            (run.transcript, StructureDoc::Order { order: run.order.into_relation() }, checks, dot)
        }
        Kind::CeW => {
            let run = build_ce_w(&suite.functionals, pairing, stages)?;
            let checks = vec![check("column-budget", check_column_budget(&run.transcript, pairing, stages))];
            (run.transcript, StructureDoc::CeSet { columns: stages, w: run.w }, checks, None)
        }
    };

    let report = verify_requirements(&transcript, &suite)?;
    checks.push(json!({ "name": "requirements", "pass": !report.any_failed(), "witness": Value::Null }));

    let mut out = Outputs::new();
    out.add("transcript.json", to_json(&envelope("construct", &args, common.seed, &transcript)));
    match common.format {
        Format::Json => out.add_primary("structure.json", to_json(&envelope("construct", &args, common.seed, &structure))),
        Format::Dot => {
            let dot = dot.ok_or_else(|| Failure::Input("DOT output needs an order or a semi-transitive coloring".into()))?;
            out.add_primary("structure.dot", dot);
        }
    }
    let summary = json!({ "checks": checks, "requirements": report });
    out.add("requirements.json", to_json(&envelope("construct", &args, common.seed, &summary)));
    out.write(common)?;

    let failed: Vec<&str> =
        checks.iter().filter(|c| c["pass"] == false).filter_map(|c| c["name"].as_str()).collect();
    if !failed.is_empty() {
        return Err(Failure::Invariant(failed.join(", ")));
    }
    Ok(())
}
