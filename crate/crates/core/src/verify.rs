//! Self-check suite behind `hypercolor verify`: every structural invariant
//! of the workbench, run against brute-force oracles at small sizes.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::{
    alon_ratio, as_feasible, as_optimize, limit_sequence, pluhar_threshold, thm1_threshold,
    AsExponent, AsVariant, LimitKind, Orientation,
};
use crate::chains::{
    count_chains, count_ordered_chains, exists_good_order, greedy_color, is_ordered_chain,
    ordered_chain_probability, CountMode, GreedyOutcome,
};
use crate::colorers::{run_trials, Algorithm, Params};
use crate::coloring::{chromatic_number, is_proper, LinearOrder};
use crate::exact::{ratio, to_rational};
use crate::frecursion::{best_bound, extend_table, FTable};
use crate::generate::{random_small, Family};
use crate::hypergraph::Hypergraph;
use crate::inducibility::{aux_graph, blowup, count_induced_paths, example_formula, pg_bound_exact};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&Scale) -> Result<String, String>;

/// Sample sizes; `quick` trims the randomized sweeps.
pub struct Scale {
    pub random_hypergraphs: u64,
    pub trials: u64,
    pub r_max: usize,
}

impl Scale {
    pub fn new(quick: bool) -> Self {
        if quick {
            Self {
                random_hypergraphs: 40,
                trials: 2_000,
                r_max: 60,
            }
        } else {
            Self {
                random_hypergraphs: 150,
                trials: 10_000,
                r_max: 300,
            }
        }
    }
}

const CHECKS: &[(&str, Check)] = &[
    ("chromatic_oracles", chromatic_oracles),
    ("pluhar_equivalence", pluhar_equivalence),
    ("greedy_soundness_and_chain_link", greedy_link),
    ("ordered_chain_expectation", ordered_expectation),
    ("inducibility_sandwich", inducibility_sandwich),
    ("blowup_base_case", blowup_base),
    ("threshold_maximality_and_dominance", thresholds),
    ("limit_convergence", limits),
    ("weighted_colorer_optimizer", optimizer),
    ("f_table_pipeline", f_pipeline),
    ("colorer_properness", colorer_properness),
];

pub fn run(quick: bool) -> Vec<CheckResult> {
    let scale = Scale::new(quick);
    CHECKS
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = match check(&scale) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name, passed, detail }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: crate::Error) -> String {
    e.to_string()
}

fn chromatic_oracles(_: &Scale) -> Result<String, String> {
    let cases = [
        (Family::Fano, 3),
        (Family::Complete { v: 5, n: 3 }, 3),
        (Family::Complete { v: 7, n: 3 }, 4),
    ];
    for (fam, want) in cases {
        let got = chromatic_number(&fam.generate().map_err(e2s)?).map_err(e2s)?;
        ensure(got == want, || format!("chi({fam}) = {got}, expected {want}"))?;
    }
    for r in 1..=5 {
        let g = Family::Complete { v: r + 1, n: 2 }.generate().map_err(e2s)?;
        let got = chromatic_number(&g).map_err(e2s)?;
        ensure(got == r + 1 && g.num_edges() == r * (r + 1) / 2, || {
            format!("K_{} has chi {got}", r + 1)
        })?;
    }
    Ok("Fano 3, K(5,3) 3, K(7,3) 4, K_{r+1} r+1 for r <= 5".into())
}

fn small_family(scale: &Scale) -> Result<Vec<Hypergraph>, String> {
    let mut hs = vec![
        Family::Fano.generate().map_err(e2s)?,
        Family::SingleChain { n: 3, r: 2 }.generate().map_err(e2s)?,
        Family::SingleChain { n: 3, r: 3 }.generate().map_err(e2s)?,
        Family::SingleChain { n: 3, r: 4 }.generate().map_err(e2s)?,
        Family::Complete { v: 5, n: 3 }.generate().map_err(e2s)?,
    ];
    for seed in 0..scale.random_hypergraphs {
        hs.push(random_small(seed, 3..=7, 1..=6).map_err(e2s)?);
    }
    Ok(hs)
}

fn pluhar_equivalence(scale: &Scale) -> Result<String, String> {
    let hs = small_family(scale)?;
    for h in &hs {
        let chi = chromatic_number(h).map_err(e2s)?;
        for r in [2usize, 3] {
            let good = exists_good_order(h, r).map_err(e2s)?;
            ensure(good.is_some() == (chi <= r), || {
                format!("equivalence fails for r = {r} on {}", h.to_text())
            })?;
            if let Some(order) = good {
                let out = greedy_color(h, &order, r as u32).map_err(e2s)?;
                ensure(out.coloring().is_some(), || "witness order does not color".into())?;
            }
        }
    }
    Ok(format!("{} hypergraphs, r in {{2, 3}}", hs.len()))
}

fn greedy_link(scale: &Scale) -> Result<String, String> {
    let hs = small_family(scale)?;
    let mut failures = 0;
    let mut rng = crate::colorers::rng_for(7);
    for h in &hs {
        for _ in 0..5 {
            let order = LinearOrder::random(h.num_vertices(), &mut rng);
            for r in [2u32, 3] {
                match greedy_color(h, &order, r).map_err(e2s)? {
                    GreedyOutcome::Colored(c) => {
                        ensure(is_proper(h, &c).map_err(e2s)?, || "greedy coloring not proper".into())?
                    }
                    GreedyOutcome::Stuck { .. } => {
                        failures += 1;
                        let n = count_ordered_chains(h, r as usize, &order).map_err(e2s)?;
                        ensure(n > 0, || "greedy failed without an ordered chain".into())?;
                    }
                }
            }
        }
    }
    Ok(format!("{failures} greedy failures, each with an ordered chain"))
}

fn ordered_expectation(_: &Scale) -> Result<String, String> {
    // 4 of the 120 orders of a 2-chain make the forward sequence ordered
    let c = Family::SingleChain { n: 3, r: 2 }.generate().map_err(e2s)?;
    let mut forward = 0u64;
    for perm in permutations(5) {
        let order = LinearOrder::from_permutation(perm).map_err(e2s)?;
        if is_ordered_chain(&c, &[0, 1], &order).map_err(e2s)? {
            forward += 1;
        }
    }
    let p = ordered_chain_probability(3, 2).map_err(e2s)?;
    ensure(forward == 4 && p == ratio(4u32, 120u32), || format!("{forward} of 120 ordered"))?;

    let cases = [
        (Family::SingleChain { n: 3, r: 3 }, 3usize),
        (Family::Random { v: 7, m: 5, n: 3, seed: 3 }, 2),
        (Family::Random { v: 6, m: 6, n: 3, seed: 9 }, 3),
    ];
    for (fam, r) in cases {
        let h = fam.generate().map_err(e2s)?;
        let mut total = 0u64;
        let mut orders = 0u64;
        for perm in permutations(h.num_vertices()) {
            let order = LinearOrder::from_permutation(perm).map_err(e2s)?;
            total += count_ordered_chains(&h, r, &order).map_err(e2s)?;
            orders += 1;
        }
        let seqs = count_chains(&h, r, CountMode::Sequences).map_err(e2s)?;
        let expect = to_rational(seqs.into()) * ordered_chain_probability(3, r).map_err(e2s)?;
        ensure(ratio(total, orders) == expect, || {
            format!("{fam}: mean {total}/{orders} vs {expect}")
        })?;
    }
    Ok("exact mean over all orders matches count x probability".into())
}

fn inducibility_sandwich(scale: &Scale) -> Result<String, String> {
    let mut hs = vec![Family::Fano.generate().map_err(e2s)?];
    for seed in 0..scale.random_hypergraphs.max(50) {
        hs.push(random_small(seed + 1000, 5..=10, 3..=16).map_err(e2s)?);
    }
    for h in &hs {
        let g = aux_graph(h);
        for r in [2usize, 3] {
            let chains = count_chains(h, r, CountMode::Sets).map_err(e2s)?;
            let paths = count_induced_paths(&g, r).map_err(e2s)?;
            let bound = pg_bound_exact(h.num_edges(), r).map_err(e2s)?;
            ensure(chains <= paths && to_rational(paths.into()) <= bound, || {
                format!("{chains} <= {paths} <= {bound} fails")
            })?;
        }
    }
    Ok(format!("{} hypergraphs, r in {{2, 3}}", hs.len()))
}

fn blowup_base(_: &Scale) -> Result<String, String> {
    for r in [3usize, 4] {
        let g = blowup(r, 1).map_err(e2s)?;
        let paths = count_induced_paths(&g, r).map_err(e2s)?;
        let formula = example_formula(r, 1).map_err(e2s)?;
        ensure(to_rational(paths.into()) == formula, || format!("r = {r}: {paths} vs {formula}"))?;
    }
    let g = blowup(3, 2).map_err(e2s)?;
    let paths = count_induced_paths(&g, 3).map_err(e2s)?;
    let formula = example_formula(3, 2).map_err(e2s)?;
    ensure(to_rational(paths.into()) >= formula, || format!("k = 2: {paths} < {formula}"))?;
    Ok(format!("k = 1 exact; k = 2 enumeration {paths} vs formula {formula}"))
}

fn thresholds(scale: &Scale) -> Result<String, String> {
    let mut prev = (0u64, 0u64);
    for r in 2..=scale.r_max {
        let pl = pluhar_threshold(3, r, Orientation::AsPrinted).map_err(e2s)?;
        let th = thm1_threshold(r, Orientation::Corrected).map_err(e2s)?;
        let tp = thm1_threshold(r, Orientation::AsPrinted).map_err(e2s)?;
        ensure(pl.verify() && th.verify() && tp.verify(), || format!("maximality at r = {r}"))?;
        let cur = (pl.edges_u64(), th.edges_u64());
        ensure(cur.0 >= prev.0 && cur.1 >= prev.1, || format!("not monotone at r = {r}"))?;
        if r >= 3 {
            ensure(cur.1 >= cur.0, || format!("dominance fails at r = {r}"))?;
        }
        prev = cur;
    }
    let printed = thm1_threshold(2, Orientation::AsPrinted).map_err(e2s)?.edges_u64();
    let corrected = thm1_threshold(2, Orientation::Corrected).map_err(e2s)?.edges_u64();
    ensure(printed == 7 && corrected <= 5, || format!("r = 2: {printed}, {corrected}"))?;
    Ok(format!("r = 2..={}; printed factor gives 7 at r = 2 (Fano has 7 edges, chi 3)", scale.r_max))
}

fn limits(_: &Scale) -> Result<String, String> {
    for kind in [LimitKind::Thm1, LimitKind::Pluhar] {
        let v = limit_sequence(kind, 100_000).map_err(e2s)?;
        let rel = (v / kind.limit() - 1.0).abs();
        ensure(rel < 0.01, || format!("{kind:?} at 1e5: {v}"))?;
        let gaps: Vec<f64> = [1_000u64, 10_000, 100_000]
            .iter()
            .map(|&r| (limit_sequence(kind, r).unwrap() - kind.limit()).abs())
            .collect();
        ensure(gaps[0] > gaps[1] && gaps[1] > gaps[2], || format!("{kind:?} gaps {gaps:?}"))?;
    }
    for r in (6..=600).step_by(6) {
        ensure(alon_ratio(3, r).map_err(e2s)? == ratio(8u32, 27u32), || format!("alon r = {r}"))?;
    }
    Ok("thm1 and pluhar within 1% at r = 1e5; alon exact at multiples of 6".into())
}

fn optimizer(_: &Scale) -> Result<String, String> {
    use AsExponent::*;
    use AsVariant::*;
    ensure(as_feasible(Combined, Corrected, 0.42, 0.741, 1.05), || "target infeasible".into())?;
    ensure(!as_feasible(Combined, AsPrinted, 0.42, 0.741, 1.05), || "printed feasible".into())?;
    let comb = as_optimize(Combined, Corrected, 1000).map_err(e2s)?;
    let pure = as_optimize(Pure, Corrected, 1000).map_err(e2s)?;
    ensure((0.42..=0.44).contains(&comb.c), || format!("combined {comb:?}"))?;
    ensure((0.200..=0.210).contains(&pure.c), || format!("pure {pure:?}"))?;
    Ok(format!("combined c = {:.4}, pure c = {:.4}", comb.c, pure.c))
}

fn f_pipeline(_: &Scale) -> Result<String, String> {
    let seed = FTable::seed();
    let (base, _) = best_bound(&seed, 1..=26).map_err(e2s)?;
    ensure(base.m == 11 && base.l3_exact == ratio(11u32, 27u32), || format!("{base:?}"))?;
    let big = extend_table(&seed, 10_000, &[2, 3]).map_err(e2s)?;
    let (ext, _) = best_bound(&big, 1..=10_000).map_err(e2s)?;
    ensure(ext.l3_exact >= base.l3_exact, || "extension lowered the bound".into())?;
    ensure(big.upper().windows(2).all(|w| w[0] <= w[1]), || "table not monotone".into())?;
    // soundness against known constructions
    let fano = chromatic_number(&Family::Fano.generate().map_err(e2s)?).map_err(e2s)? as u64;
    ensure(big.get(7).unwrap() >= fano && big.get(1).unwrap() >= 2, || "u below f".into())?;
    Ok(format!(
        "seed-only L3 >= {} (M = 11); extended L3 >= {:.4} (M = {})",
        base.l3_exact,
        ext.l3_exact.to_f64().unwrap_or(f64::NAN),
        ext.m
    ))
}

fn colorer_properness(scale: &Scale) -> Result<String, String> {
    let hs = [
        Family::Complete { v: 5, n: 3 }.generate().map_err(e2s)?,
        Family::Fano.generate().map_err(e2s)?,
    ];
    let runs = [
        (Algorithm::Alon, Params { r: 3, a: Some(2), p: None }),
        (Algorithm::Pluhar, Params { r: 3, a: None, p: None }),
        (Algorithm::AkolzinShabanov, Params { r: 4, a: Some(3), p: Some(0.741) }),
    ];
    let mut total = 0;
    for h in &hs {
        for (alg, params) in &runs {
            // run_trials fails on any improper coloring
            let rep = run_trials(*alg, h, params, scale.trials, 2024).map_err(e2s)?;
            total += rep.successes;
        }
    }
    Ok(format!("{total} verified colorings"))
}

/// All permutations of `0..n` (Heap's algorithm).
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
