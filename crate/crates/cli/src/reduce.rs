use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::construct::StructureDoc;
use crate::io::{envelope, read_document, to_json, Outputs};
use crate::{CliResult, Common, Failure};
use poset_lab::generate::{random_coloring, rng};
use poset_lab::reductions::{
    close_semitransitive, induced_linear_order, linearize, pullback_g_to_f, pullback_h_to_g, solve_stable_linear,
};
use poset_lab::structures::{
    check_semi_transitive, classify_elements, is_pseudo_homogeneous, validate_partial_order, ColoringPrefix,
};

#[derive(Args, Debug, Serialize)]
pub struct ReduceArgs {
    /// Coloring file (a `construct` structure file or a bare coloring).
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub input: Option<PathBuf>,
    /// Use a uniformly random 2-coloring of this size instead of a file.
    #[arg(long)]
    pub random: Option<usize>,
    /// Tail window for classifying the linear order; defaults to a quarter of the size.
    #[arg(long, visible_alias = "threshold")]
    pub tail_window: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ColoringInput {
    Structure(StructureDoc),
    Bare(ColoringPrefix),
}

fn load(args: &ReduceArgs) -> CliResult<ColoringPrefix> {
    if let Some(n) = args.random {
        return Ok(random_coloring(&mut rng(args.common.seed), 2, n));
    }
    let path = args.input.as_ref().expect("clap requires one input");
    match read_document(path)? {
        ColoringInput::Structure(StructureDoc::Coloring { coloring }) | ColoringInput::Bare(coloring) => Ok(coloring),
        ColoringInput::Structure(_) => Err(Failure::Input("reduce needs a coloring".into())),
    }
}

fn ensure(ok: bool, what: &str) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Invariant(what.into()))
    }
}

pub fn run(args: ReduceArgs) -> CliResult<()> {
    let f = load(&args)?;
    if f.colors() != 2 {
        return Err(Failure::Input(format!("expected a 2-coloring, got {} colors", f.colors())));
    }
    if f.size() < 2 {
        return Err(Failure::Input("the coloring needs at least two elements".into()));
    }
    let window = args.tail_window.unwrap_or((f.size() / 4).max(1));

    let g = close_semitransitive(&f)?;
    ensure(check_semi_transitive(&g)?.holds(), "closure is not semi-transitive")?;
    let h = linearize(&g)?;
    let order = induced_linear_order(&h).map_err(|e| Failure::Invariant(format!("linearization: {e}")))?;
    ensure(validate_partial_order(order.as_partial().relation().clone()).is_ok(), "linear order")?;

    let cls = classify_elements(order.as_partial(), window)?.classified_only();
    let candidate = solve_stable_linear(&order, &cls)?;
    ensure(is_pseudo_homogeneous(&h, &candidate.elements, None), "candidate is not pseudo-homogeneous for h")?;
    let in_g = pullback_h_to_g(&candidate.elements, &g, &h)?;
    ensure(is_pseudo_homogeneous(&g, &in_g, None), "pull-back to g is not pseudo-homogeneous")?;
    let in_f = pullback_g_to_f(&in_g, &f, &g)?;
    ensure(is_pseudo_homogeneous(&f, &in_f, None), "pull-back to f is not pseudo-homogeneous")?;

    let seed = args.common.seed;
    let doc = |c: &ColoringPrefix| to_json(&envelope("reduce", &args, seed, StructureDoc::Coloring { coloring: c.clone() }));
    let report = json!({
        "size": f.size(),
        "tail_window": window,
        "candidate": candidate,
        "pullback_g": in_g,
        "pullback_f": in_f,
    });
    let mut out = Outputs::new();
    out.add("f.json", doc(&f));
    out.add("g.json", doc(&g));
    out.add("h.json", doc(&h));
    out.add("order.json", to_json(&envelope("reduce", &args, seed, StructureDoc::Order { order: order.as_partial().relation().clone() })));
    out.add_primary("report.json", to_json(&envelope("reduce", &args, seed, &report)));
    out.write(&args.common)
}
