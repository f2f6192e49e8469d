//! Seeded instance generators shared by the test suite and the command line.
//!
//! Every generator draws only from the supplied RNG, so a seed fixes the
//! instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::immunity::{ArrayOfSets, CoCeApprox};
use crate::priority::{column_threshold, ElementEvent, OutputEvent, PairEvent, Script, SetEvent, TaggedFunctional};
use crate::reductions::close_semitransitive;
use crate::structures::{validate_partial_order, Color, ColoringPrefix, PartialOrderPrefix, Relation};
use crate::{Pairing, Result, SetPrefix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent uniform colors for every pair.
pub fn random_coloring<R: Rng>(rng: &mut R, colors: Color, size: usize) -> ColoringPrefix {
    ColoringPrefix::from_fn(colors, size, |_, _| rng.gen_range(0..colors)).expect("at least one color")
}

/// The semi-transitive closure of a coloring whose pairs are 1 with
/// probability `density`.
pub fn random_semi_transitive<R: Rng>(rng: &mut R, size: usize, density: f64) -> ColoringPrefix {
    let f = ColoringPrefix::from_fn(2, size, |_, _| u8::from(rng.gen_bool(density))).expect("two colors");
    close_semitransitive(&f).expect("two colors")
}

/// Draws a non-empty sorted set of at most `max_len` elements from `[lo, hi)`.
fn random_block<R: Rng>(rng: &mut R, lo: usize, hi: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len.min(hi - lo).max(1));
    let mut pool: Vec<usize> = (lo..hi).collect();
    pool.shuffle(rng);
    let mut v: Vec<usize> = pool.into_iter().take(len).collect();
    v.sort_unstable();
    v
}

/// A pair-formula script that, from stage 4 on, witnesses a fresh `R < S`
/// inside the upper half of the elements added so far at every `gap`-th stage.
/// Such scripts keep producing pairs above any marker, as an essential
/// formula does.
pub fn essential_pair_script<R: Rng>(rng: &mut R, budget: usize, gap: usize) -> Script<PairEvent> {
    let mut events = Vec::new();
    for t in (4..=budget).step_by(gap.max(1)) {
        let lo = t / 2;
        let split = rng.gen_range(lo + 1..t);
        let r = random_block(rng, lo, split, 2);
        let s = random_block(rng, split, t, 2);
        events.push(PairEvent { stage: t, r, s });
    }
    Script::new(budget, events).expect("generated events are well formed")
}

/// A set-formula script witnessing a small set inside the upper half of the
/// elements added so far at every `gap`-th stage.
pub fn set_script<R: Rng>(rng: &mut R, budget: usize, gap: usize) -> Script<SetEvent> {
    let events = (2..=budget)
        .step_by(gap.max(1))
        .map(|t| SetEvent { stage: t, r: random_block(rng, t / 2, t, 2) })
        .collect();
    Script::new(budget, events).expect("generated events are well formed")
}

/// An element-formula script witnessing a pair of distinct recent elements at
/// every `gap`-th stage.
pub fn element_script<R: Rng>(rng: &mut R, budget: usize, gap: usize) -> Script<ElementEvent> {
    let events = (2..=budget)
        .step_by(gap.max(1))
        .map(|t| {
            let b = random_block(rng, t / 2, t, 2);
            let (u, v) = if b.len() == 2 { (b[0], b[1]) } else { (t - 2, t - 1) };
            if rng.gen_bool(0.5) {
                ElementEvent { stage: t, u, v }
            } else {
                ElementEvent { stage: t, u: v, v: u }
            }
        })
        .collect();
    Script::new(budget, events).expect("generated events are well formed")
}

/// The least code `≥ from` whose column lies in `[lo, hi)`.
fn next_code_in_columns(pairing: Pairing, from: usize, lo: usize, hi: usize) -> usize {
    (from..).find(|&z| (lo..hi).contains(&pairing.column(z))).expect("columns are unbounded")
}

/// One functional attacking `(e, k)`. When `compliant`, it is total on
/// `[0, arguments)` with ordered blocks of at most `k` elements in the columns
/// `[i_{e,k}, max_stage)`; otherwise its blocks are one element too large.
pub fn functional<R: Rng>(
    rng: &mut R,
    pairing: Pairing,
    e: usize,
    k: usize,
    arguments: usize,
    max_stage: usize,
    compliant: bool,
) -> TaggedFunctional {
    let threshold = column_threshold(pairing, pairing.pair(e, k).expect("small pair"));
    let size = if compliant { k } else { k + 1 };
    let mut next = 0;
    let mut events = Vec::with_capacity(arguments);
    for x in 0..arguments {
        let mut value = Vec::with_capacity(size);
        for _ in 0..size {
            let z = next_code_in_columns(pairing, next + rng.gen_range(0..8), threshold, max_stage);
            value.push(z);
            next = z + 1;
        }
        events.push(OutputEvent { stage: rng.gen_range(x + 1..=max_stage), x, value });
    }
    events.sort_by_key(|ev| (ev.stage, ev.x));
    TaggedFunctional { e, k, script: Script::new(max_stage, events).expect("generated events are well formed") }
}

/// `count` functionals attacking distinct pairs `(e, k)` with `1 ≤ k ≤ 2`,
/// each compliant with probability `compliance`.
pub fn functional_suite<R: Rng>(
    rng: &mut R,
    pairing: Pairing,
    count: usize,
    max_stage: usize,
    compliance: f64,
) -> Vec<TaggedFunctional> {
    (0..count)
        .map(|i| {
            let compliant = rng.gen_bool(compliance);
            functional(rng, pairing, i / 2, 1 + i % 2, 6, max_stage, compliant)
        })
        .collect()
}

/// A co-c.e. approximation on `[0, domain)` over `stages` stages: each element
/// starts in with probability `density` and is later removed with
/// probability `removal`.
pub fn random_coce<R: Rng>(rng: &mut R, domain: usize, stages: usize, density: f64, removal: f64) -> CoCeApprox {
    let initial = SetPrefix::from_fn(domain, |_| rng.gen_bool(density));
    let removals: Vec<Option<usize>> = (0..domain)
        .map(|_| rng.gen_bool(removal).then(|| rng.gen_range(1..stages.max(2))))
        .collect();
    CoCeApprox::from_removals(&initial, &removals, stages).expect("one removal per element")
}

/// Up to `blocks` increasing blocks in `[0, domain)`, each of at most `width`
/// elements drawn from a short window and each meeting `target`. Stops early
/// when the domain runs out.
pub fn tracing_blocks<R: Rng>(rng: &mut R, target: &SetPrefix, blocks: usize, width: usize) -> Vec<Vec<usize>> {
    let width = width.max(1);
    let span = 2 * width + 2;
    let mut out = Vec::with_capacity(blocks);
    let mut lo = 0;
    while out.len() < blocks && lo < target.domain() {
        let hi = (lo + span).min(target.domain());
        let hits: Vec<usize> = (lo..hi).filter(|&x| target.contains(x)).collect();
        let Some(&hit) = hits.choose(rng) else {
            lo = hi;
            continue;
        };
        let mut others: Vec<usize> = (lo..hi).filter(|&x| x != hit).collect();
        others.shuffle(rng);
        let extra = rng.gen_range(0..width);
        let mut block: Vec<usize> = others.into_iter().take(extra).chain([hit]).collect();
        block.sort_unstable();
        lo = block.last().unwrap() + 1 + rng.gen_range(0..3);
        out.push(block);
    }
    out
}

pub fn tracing_array<R: Rng>(rng: &mut R, target: &SetPrefix, blocks: usize, width: usize) -> ArrayOfSets {
    ArrayOfSets::array(tracing_blocks(rng, target, blocks, width)).expect("blocks are increasing")
}

/// A `k`-enumeration of blocks of size at most `k`, each meeting `target`.
pub fn tracing_kenum<R: Rng>(rng: &mut R, target: &SetPrefix, blocks: usize, k: usize) -> ArrayOfSets {
    ArrayOfSets::kenum(k, tracing_blocks(rng, target, blocks, k)).expect("blocks fit the bound")
}

/// A partial order in which each element is small, large or isolated toward
/// every later element: `x ≤ y` iff `x = y`, or `x < y` and `x` is small, or
/// `y < x` and `y` is large. Sides are drawn with the given weights.
pub fn sided_order<R: Rng>(rng: &mut R, size: usize, weights: [u32; 3]) -> (PartialOrderPrefix, Vec<u8>) {
    let total: u32 = weights.iter().sum();
    let sides: Vec<u8> = (0..size)
        .map(|_| {
            let r = rng.gen_range(0..total.max(1));
            if r < weights[0] {
                b'S'
            } else if r < weights[0] + weights[1] {
                b'L'
            } else {
                b'I'
            }
        })
        .collect();
    let rel = Relation::from_fn(size, |x, y| x == y || (x < y && sides[x] == b'S') || (y < x && sides[y] == b'L'));
    (validate_partial_order(rel).expect("sided relations are partial orders"), sides)
}

/// A random linear order: the linearization of a random semi-transitive
/// coloring.
pub fn random_linear_coloring<R: Rng>(rng: &mut R, size: usize) -> Result<ColoringPrefix> {
    crate::reductions::linearize(&random_semi_transitive(rng, size, 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immunity::traces;
    use crate::structures::check_semi_transitive;

    #[test]
    fn seeds_fix_instances() {
        let a = random_coloring(&mut rng(7), 2, 9);
        let b = random_coloring(&mut rng(7), 2, 9);
        assert_eq!(a, b);
        assert!(check_semi_transitive(&random_semi_transitive(&mut rng(1), 12, 0.4)).unwrap().holds());
    }

    #[test]
    fn tracing_arrays_trace() {
        let mut r = rng(3);
        let target = SetPrefix::from_fn(200, |x| x % 7 == 3);
        let arr = tracing_array(&mut r, &target, 10, 3);
        assert_eq!(arr.len(), 10);
        assert!(traces(&arr, &target).unwrap().holds());
        let kenum = tracing_kenum(&mut r, &target, 10, 2);
        assert!(kenum.width() <= 2);
    }

    #[test]
    fn functionals_are_valid() {
        let p = Pairing::Cantor;
        let suite = functional_suite(&mut rng(5), p, 10, 300, 0.7);
        assert_eq!(suite.len(), 10);
        for f in &suite {
            let i = column_threshold(p, p.pair(f.e, f.k).unwrap());
            assert!(f.script.events().iter().flat_map(|ev| &ev.value).all(|&z| (i..300).contains(&p.column(z))));
        }
    }

    #[test]
    fn sided_orders_are_orders() {
        let (p, sides) = sided_order(&mut rng(2), 40, [1, 1, 1]);
        for x in 0..40 {
            for y in x + 1..40 {
                assert_eq!(p.lt(x, y), sides[x] == b'S');
            }
        }
    }
}
