use clap::{Args, ValueEnum};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{envelope, to_json, Outputs};
use crate::{CliResult, Common, Failure};
use poset_lab::forcing::{extend_both, split_pair_search, OrderCondition};
use poset_lab::generate::{self, rng};
use poset_lab::immunity::essential_check;
use poset_lab::immunity::Essentiality;
use poset_lab::oracle;
use poset_lab::reductions::{close_semitransitive, linearize};
use poset_lab::structures::{check_semi_transitive, classify_elements, ColoringPrefix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Closure,
    Linearize,
    SemiTransitive,
    Essential,
    SplitPairs,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fixture {
    /// A closure that returns its input unchanged.
    BuggyClosure,
}

#[derive(Args, Debug, Serialize)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = Check::All)]
    pub check: Check,
    /// Colorings of every size up to this one are enumerated exhaustively (at most 6).
    #[arg(long, default_value_t = 5)]
    pub max_size: usize,
    /// Number of random instances per check on top of the exhaustive ones.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Size of the random colorings (at most 12).
    #[arg(long, default_value_t = 7)]
    pub sample_size: usize,
    /// Replace an implementation with a known-bad one, to exercise mismatch reporting.
    #[arg(long, value_enum, hide = true)]
    pub fixture: Option<Fixture>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Serialize)]
struct CheckReport {
    check: Check,
    instances: usize,
    mismatches: usize,
    /// The least mismatching instance, by size and then by encoding.
    counterexample: Option<Value>,
}

/// Tallies instances and keeps the least mismatch under `key`.
struct Tally {
    check: Check,
    instances: usize,
    mismatches: usize,
    least: Option<((usize, Vec<u8>), Value)>,
}

impl Tally {
    fn new(check: Check) -> Self {
        Tally { check, instances: 0, mismatches: 0, least: None }
    }

    fn record(&mut self, ok: bool, key: impl FnOnce() -> (usize, Vec<u8>), detail: impl FnOnce() -> Value) {
        self.instances += 1;
        if ok {
            return;
        }
        self.mismatches += 1;
        let key = key();
        if self.least.as_ref().is_none_or(|(k, _)| key < *k) {
            self.least = Some((key, detail()));
        }
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            check: self.check,
            instances: self.instances,
            mismatches: self.mismatches,
            counterexample: self.least.map(|(_, v)| v),
        }
    }
}

/// Ordering key for colorings: size first, then the bit pattern read from the
/// highest pair down, matching the exhaustive enumeration order.
fn coloring_key(f: &ColoringPrefix) -> (usize, Vec<u8>) {
    (f.size(), f.upper().iter().rev().copied().collect())
}

fn colorings(args: &OracleArgs, stream: u64) -> impl Iterator<Item = ColoringPrefix> + '_ {
    let mut r = rng(args.common.seed ^ stream);
    let exhaustive = (0..=args.max_size).flat_map(oracle::all_colorings);
    exhaustive.chain((0..args.samples).map(move |_| generate::random_coloring(&mut r, 2, args.sample_size)))
}

fn check_closure(args: &OracleArgs) -> CliResult<CheckReport> {
    let mut t = Tally::new(Check::Closure);
    for f in colorings(args, 1) {
        let got = match args.fixture {
            Some(Fixture::BuggyClosure) => f.clone(),
            None => close_semitransitive(&f)?,
        };
        let expected = oracle::closure(&f);
        t.record(got == expected, || coloring_key(&f), || json!({ "f": f, "expected": expected, "got": got }));
    }
    Ok(t.finish())
}

fn check_linearize(args: &OracleArgs) -> CliResult<CheckReport> {
    let mut t = Tally::new(Check::Linearize);
    for f in colorings(args, 2) {
        let g = oracle::closure(&f);
        let got = linearize(&g)?;
        let expected = oracle::linearization(&g);
        let linear = oracle::is_linear_order(&poset_lab::structures::Relation::from_fn(got.size(), |x, y| {
            x == y || (x < y && got.get(x, y) == 1) || (y < x && got.get(y, x) == 0)
        }));
        t.record(got == expected && linear, || coloring_key(&g), || json!({ "g": g, "expected": expected, "got": got }));
    }
    Ok(t.finish())
}

fn check_semi_transitivity(args: &OracleArgs) -> CliResult<CheckReport> {
    let mut t = Tally::new(Check::SemiTransitive);
    for f in colorings(args, 3) {
        let got = check_semi_transitive(&f)?.witness().copied();
        let expected = oracle::semi_transitive_violation(&f);
        t.record(got == expected, || coloring_key(&f), || json!({ "f": f, "expected": expected, "got": got }));
    }
    Ok(t.finish())
}

fn check_essential(args: &OracleArgs) -> CliResult<CheckReport> {
    let mut t = Tally::new(Check::Essential);
    let mut r = rng(args.common.seed ^ 4);
    for i in 0..args.samples.div_ceil(10) {
        let budget = r.gen_range(4..=40);
        let gap = r.gen_range(1..=4);
        let script = generate::essential_pair_script(&mut r, budget, gap);
        let (xb, yb) = (r.gen_range(0..budget), r.gen_range(0..budget));
        let got = match essential_check(&script, xb, yb) {
            Essentiality::Essential { .. } => None,
            Essentiality::FailsAt { x } => Some(x),
        };
        let expected = oracle::essential_failure(&script, xb, yb);
        t.record(
            got == expected,
            || (budget, i.to_be_bytes().to_vec()),
            || json!({ "script": script, "x_bound": xb, "y_bound": yb, "expected": expected, "got": got }),
        );
    }
    Ok(t.finish())
}

fn check_split_pairs(args: &OracleArgs) -> CliResult<CheckReport> {
    let mut t = Tally::new(Check::SplitPairs);
    let mut r = rng(args.common.seed ^ 5);
    for i in 0..args.samples.div_ceil(100) {
        let size = r.gen_range(8..=30);
        let horizon = r.gen_range(1..=size);
        let (p, _) = generate::sided_order(&mut r, size, [2, 1, 2]);
        let cls = classify_elements(&p, (size / 4).max(1))?;
        let mut c = OrderCondition::default();
        for _ in 0..r.gen_range(0..2) {
            c = extend_both(&c, &p, &cls, horizon).unwrap_or(c);
        }
        for bound in 0..=2 {
            let got = split_pair_search(&c, &p, &cls, horizon, bound)?;
            let expected = oracle::split_pairs(&c, &p, horizon, bound);
            t.record(
                got == expected,
                || (size, (i as u64).to_be_bytes().to_vec()),
                || json!({ "order": p.relation(), "condition": c, "horizon": horizon, "bound": bound }),
            );
        }
    }
    Ok(t.finish())
}

pub fn run(args: OracleArgs) -> CliResult<()> {
    if args.max_size > 6 {
        return Err(Failure::Input("--max-size is at most 6".into()));
    }
    if args.sample_size > 12 {
        return Err(Failure::Input("--sample-size is at most 12".into()));
    }
    let selected: Vec<Check> = match args.check {
        Check::All => vec![Check::Closure, Check::Linearize, Check::SemiTransitive, Check::Essential, Check::SplitPairs],
        c => vec![c],
    };
    let mut reports = Vec::with_capacity(selected.len());
    for check in selected {
        reports.push(match check {
            Check::Closure => check_closure(&args)?,
            Check::Linearize => check_linearize(&args)?,
            Check::SemiTransitive => check_semi_transitivity(&args)?,
            Check::Essential => check_essential(&args)?,
            Check::SplitPairs => check_split_pairs(&args)?,
            Check::All => unreachable!(),
        });
    }
    let mut out = Outputs::new();
    out.add_primary("oracle.json", to_json(&envelope("oracle", &args, args.common.seed, &reports)));
    out.write(&args.common)?;

    let failing: Vec<String> = reports
        .iter()
        .filter(|r| r.mismatches > 0)
        .map(|r| {
            let ce = r.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default();
            format!("{}: {} of {} instances, least counterexample {ce}", json!(r.check).as_str().unwrap_or(""), r.mismatches, r.instances)
        })
        .collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(failing.join("; ")))
    }
}
