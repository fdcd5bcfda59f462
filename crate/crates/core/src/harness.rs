//! Seeded instance generation, differential checks against the oracle,
//! and timing.
//!
//! # Random stream
//!
//! Every draw comes from SplitMix64 seeded with the configured seed as its
//! raw state, so seeds are portable across implementations:
//!
//! - `bool(p)`: `(next >> 11) as f64 * 2^-53 < p`
//! - `below(k)`: `next % k`
//!
//! For each head `h` in index order, attacks are drawn before supports. For
//! each of the `n` candidate slots a `bool(p)` decides inclusion; an included
//! link draws its tail size as `1 + below(max_tail')` and its tail by a
//! partial Fisher-Yates shuffle (`below(remaining)` per pick) over the
//! candidate pool. Attack tails come from all arguments; support tails come
//! from the arguments other than `h`, restricted to indices below `h` when
//! `support_dag` is set. `max_tail'` is `max_tail` capped at the pool size;
//! an empty pool skips the slot without drawing further.

use std::collections::BTreeSet;
use std::time::Instant;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;

use crate::argset::ArgSet;
use crate::attack_split::{self, derive_attack_splitting};
use crate::combined_split::{self, derive_splitting};
use crate::error::{Error, Result};
use crate::framework::{ArgumentId, Framework};
use crate::io::{format_extension, serialize_framework};
use crate::semantics::{enumerate, ExtensionSet, Semantics};
use crate::solution::Solution;
use crate::split_finder::{enumerate_cuts_for, SplitMode};
use crate::support_split::{self, derive_support_splitting};

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub n_args: usize,
    pub p_attack: f64,
    pub p_support: f64,
    pub max_tail: usize,
    pub support_dag: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            n_args: 6,
            p_attack: 0.2,
            p_support: 0.1,
            max_tail: 2,
            support_dag: true,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_args == 0 {
            return Err(Error::InvalidConfig("n_args must be at least 1".into()));
        }
        if self.max_tail == 0 {
            return Err(Error::InvalidConfig("max_tail must be at least 1".into()));
        }
        for (name, p) in [("p_attack", self.p_attack), ("p_support", self.p_support)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// SplitMix64 with the draw helpers documented at module level.
pub struct Stream(SplitMix64);

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn bool(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }

    pub fn below(&mut self, k: usize) -> usize {
        (self.next_u64() % k as u64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64)
    }

    fn pick(&mut self, pool: &[usize], size: usize) -> Vec<usize> {
        let mut pool = pool.to_vec();
        for i in 0..size {
            let j = i + self.below(pool.len() - i);
            pool.swap(i, j);
        }
        pool.truncate(size);
        pool
    }
}

/// Generates a framework with arguments `a0, a1, ...` from `cfg`.
pub fn gen_random(cfg: &GenConfig) -> Result<Framework> {
    cfg.validate()?;
    let n = cfg.n_args;
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let mut rng = Stream::new(cfg.seed);
    let mut builder = Framework::builder().args(names.iter().cloned());
    let all: Vec<usize> = (0..n).collect();
    for h in 0..n {
        for _ in 0..n {
            if let Some(tail) = draw_tail(&mut rng, cfg.p_attack, &all, cfg.max_tail) {
                builder = builder.attack(tail.iter().map(|&i| names[i].clone()), names[h].clone());
            }
        }
        let pool: Vec<usize> = if cfg.support_dag {
            (0..h).collect()
        } else {
            (0..n).filter(|&i| i != h).collect()
        };
        for _ in 0..n {
            if let Some(tail) = draw_tail(&mut rng, cfg.p_support, &pool, cfg.max_tail) {
                builder = builder.support(tail.iter().map(|&i| names[i].clone()), names[h].clone());
            }
        }
    }
    builder.build()
}

fn draw_tail(rng: &mut Stream, p: f64, pool: &[usize], max_tail: usize) -> Option<Vec<usize>> {
    if !rng.bool(p) || pool.is_empty() {
        return None;
    }
    let size = 1 + rng.below(max_tail.min(pool.len()));
    Some(rng.pick(pool, size))
}

/// Solves through the splitting procedure named by `mode`.
pub fn solve_with_mode(
    f: &Framework,
    a1: &ArgSet,
    sem: Semantics,
    mode: SplitMode,
) -> Result<Solution> {
    match mode {
        SplitMode::Attack => attack_split::solve_attack_split(f, a1, sem),
        SplitMode::Support => support_split::solve_support_split(f, a1, sem),
        SplitMode::Combined => combined_split::solve_split(f, a1, sem),
    }
}

/// Checks that `a1` is a valid cut for `mode`.
pub fn validate_cut(f: &Framework, a1: &ArgSet, mode: SplitMode) -> Result<()> {
    match mode {
        SplitMode::Attack => derive_attack_splitting(f, a1).map(drop),
        SplitMode::Support => derive_support_splitting(f, a1).map(drop),
        SplitMode::Combined => derive_splitting(f, a1).map(drop),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// Nothing wrong was emitted, but some extensions are missing.
    SoundSubset,
    /// The split emitted a set the oracle rejects.
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub semantics: Semantics,
    pub mode: SplitMode,
    pub cut: ArgSet,
    pub missing: ExtensionSet,
    pub extra: ExtensionSet,
    pub verdict: Verdict,
    /// Whether the procedure may miss extensions under this semantics.
    pub possibly_incomplete: bool,
}

impl DiffReport {
    /// `Equal`, or `SoundSubset` where only soundness is promised.
    pub fn is_acceptable(&self) -> bool {
        match self.verdict {
            Verdict::Equal => true,
            Verdict::SoundSubset => self.possibly_incomplete,
            Verdict::Violation => false,
        }
    }
}

pub fn compare(
    oracle: &ExtensionSet,
    split: &Solution,
    cut: &ArgSet,
    mode: SplitMode,
) -> DiffReport {
    let missing: ExtensionSet = oracle.difference(&split.extensions).cloned().collect();
    let extra: ExtensionSet = split.extensions.difference(oracle).cloned().collect();
    let verdict = if !extra.is_empty() {
        Verdict::Violation
    } else if !missing.is_empty() {
        Verdict::SoundSubset
    } else {
        Verdict::Equal
    };
    DiffReport {
        semantics: split.semantics,
        mode,
        cut: cut.clone(),
        missing,
        extra,
        verdict,
        possibly_incomplete: split.possibly_incomplete,
    }
}

/// Compares the split solve of `mode` along `a1` with the oracle.
pub fn differential(
    f: &Framework,
    a1: &ArgSet,
    sem: Semantics,
    mode: SplitMode,
) -> Result<DiffReport> {
    let split = solve_with_mode(f, a1, sem, mode)?;
    let oracle = enumerate(f, sem)?;
    Ok(compare(&oracle, &split, a1, mode))
}

/// Oracle extensions that do not decompose: `E ∩ A1` must be an extension
/// of `F1` and `E ∩ A2` (for support and combined splits possibly with
/// `*2`) an extension of the reduct built for `E ∩ A1`.
pub fn projection_failures(
    f: &Framework,
    a1: &ArgSet,
    sem: Semantics,
    mode: SplitMode,
) -> Result<Vec<ArgSet>> {
    let a2 = f.args().difference(a1);
    let star2 = f.universe().dummy(crate::framework::ArgKind::Dummy2);
    type ReductFor = Box<dyn Fn(&ArgSet) -> Result<Framework>>;
    let (f1, reduct_for): (Framework, ReductFor) = match mode {
        SplitMode::Attack => {
            let spec = derive_attack_splitting(f, a1)?.close();
            (spec.f1().clone(), Box::new(move |e1| spec.star(e1)))
        }
        SplitMode::Support => {
            let spec = derive_support_splitting(f, a1)?;
            (spec.f1().clone(), Box::new(move |e1| spec.s_reduct(e1)))
        }
        SplitMode::Combined => {
            let spec = derive_splitting(f, a1)?;
            (spec.f1().clone(), Box::new(move |e1| spec.final_reduct(e1)))
        }
    };
    let first = enumerate(&f1, sem)?;
    let mut failures = Vec::new();
    for e in enumerate(f, sem)? {
        let e1 = e.intersection(a1);
        let e2 = e.intersection(&a2);
        let ok = first.contains(&e1) && {
            let second = enumerate(&reduct_for(&e1)?, sem)?;
            let mut with_dummy = e2.clone();
            with_dummy.insert(star2);
            second.contains(&e2) || (mode != SplitMode::Attack && second.contains(&with_dummy))
        };
        if !ok {
            failures.push(e);
        }
    }
    Ok(failures)
}

/// Attack splits only: closedness in `F` must coincide with closedness of
/// both projections, for every emitted set and every oracle extension, and
/// every emitted set must be closed.
pub fn closure_decomposition_failures(
    f: &Framework,
    a1: &ArgSet,
    sem: Semantics,
) -> Result<Vec<ArgSet>> {
    let spec = derive_attack_splitting(f, a1)?;
    let (f1, f2) = (spec.f1(), spec.f2());
    let a2 = spec.a2();
    let emitted = attack_split::solve_spec(&spec, sem)?.extensions;
    let oracle = enumerate(f, sem)?;
    let mut failures = Vec::new();
    for e in emitted.iter().chain(&oracle) {
        let whole = f.is_closed(e)?;
        let parts = f1.is_closed(&e.intersection(a1))? && f2.is_closed(&e.intersection(a2))?;
        if whole != parts || (emitted.contains(e) && !whole) {
            failures.push(e.clone());
        }
    }
    Ok(failures)
}

pub const BENCH_CSV_HEADER: &str = "n,cut_size,semantics,oracle_ms,split_ms,ext_count";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub cut_size: usize,
    pub semantics: Semantics,
    pub oracle_ms: f64,
    pub split_ms: f64,
    pub ext_count: usize,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.6},{:.6},{}",
            self.n, self.cut_size, self.semantics, self.oracle_ms, self.split_ms, self.ext_count
        )
    }
}

/// Times the oracle against the split solve. Fails with `Mismatch` unless
/// the split result passes [`DiffReport::is_acceptable`] and, where
/// completeness is promised, has the oracle's extension count.
pub fn bench(f: &Framework, a1: &ArgSet, sem: Semantics, mode: SplitMode) -> Result<BenchRecord> {
    validate_cut(f, a1, mode)?;
    let start = Instant::now();
    let oracle = enumerate(f, sem)?;
    let oracle_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let split = solve_with_mode(f, a1, sem, mode)?;
    let split_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = compare(&oracle, &split, a1, mode);
    if !report.is_acceptable() {
        return Err(Error::Mismatch(format!(
            "{} missing, {} extra",
            report.missing.len(),
            report.extra.len()
        )));
    }
    Ok(BenchRecord {
        n: f.len(),
        cut_size: a1.len(),
        semantics: sem,
        oracle_ms,
        split_ms,
        ext_count: oracle.len(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub seed: u64,
    pub count: usize,
    pub min_args: usize,
    pub max_args: usize,
    /// Upper bounds; each case draws its probabilities uniformly below them.
    pub p_attack: f64,
    pub p_support: f64,
    pub max_tail: usize,
    pub support_dag: bool,
    pub semantics: Vec<Semantics>,
    pub modes: Vec<SplitMode>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            count: 100,
            min_args: 2,
            max_args: 8,
            p_attack: 0.3,
            p_support: 0.25,
            max_tail: 2,
            support_dag: true,
            semantics: Semantics::SPLITTABLE.to_vec(),
            modes: SplitMode::ALL.to_vec(),
        }
    }
}

/// Seed of the `index`-th case; independent of how cases are scheduled.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
    Stream::new(seed.wrapping_add(GAMMA.wrapping_mul(index as u64))).next_u64()
}

impl CampaignConfig {
    /// Generator settings of the `index`-th case.
    pub fn case(&self, index: usize) -> GenConfig {
        let mut rng = Stream::new(case_seed(self.seed, index));
        let lo = self.min_args.clamp(1, self.max_args.max(1));
        let n_args = lo + rng.below(self.max_args.max(lo) - lo + 1);
        GenConfig {
            seed: rng.next_u64(),
            n_args,
            p_attack: self.p_attack * rng.unit(),
            p_support: self.p_support * rng.unit(),
            max_tail: self.max_tail,
            support_dag: self.support_dag,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseFailure {
    pub case: usize,
    pub config: GenConfig,
    pub framework: String,
    pub report: DiffReport,
    pub cut_names: String,
}

#[derive(Debug, Clone, Default)]
pub struct CampaignSummary {
    pub cases: usize,
    pub checks: usize,
    pub equal: usize,
    pub sound_subset: usize,
    pub failures: Vec<CaseFailure>,
}

impl CampaignSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `differential` for every case, mode, candidate cut and semantics.
/// Cases run in parallel; the summary does not depend on scheduling.
pub fn campaign(cfg: &CampaignConfig) -> Result<CampaignSummary> {
    let per_case: Vec<Result<CampaignSummary>> = (0..cfg.count)
        .into_par_iter()
        .map(|i| run_case(cfg, i))
        .collect();
    let mut total = CampaignSummary::default();
    for s in per_case {
        let s = s?;
        total.cases += s.cases;
        total.checks += s.checks;
        total.equal += s.equal;
        total.sound_subset += s.sound_subset;
        total.failures.extend(s.failures);
    }
    Ok(total)
}

fn run_case(cfg: &CampaignConfig, index: usize) -> Result<CampaignSummary> {
    let gen = cfg.case(index);
    let f = gen_random(&gen)?;
    let mut summary = CampaignSummary {
        cases: 1,
        ..Default::default()
    };
    let oracles = cfg
        .semantics
        .iter()
        .map(|&sem| Ok((sem, enumerate(&f, sem)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = BTreeSet::new();
    for &mode in &cfg.modes {
        for cut in enumerate_cuts_for(&f, mode) {
            if !seen.insert((mode, cut.clone())) {
                continue;
            }
            for (sem, oracle) in &oracles {
                let split = solve_with_mode(&f, &cut, *sem, mode)?;
                let report = compare(oracle, &split, &cut, mode);
                summary.checks += 1;
                match report.verdict {
                    Verdict::Equal => summary.equal += 1,
                    Verdict::SoundSubset => summary.sound_subset += 1,
                    Verdict::Violation => {}
                }
                if !report.is_acceptable() {
                    summary.failures.push(CaseFailure {
                        case: index,
                        config: gen.clone(),
                        framework: serialize_framework(&f),
                        cut_names: format_extension(&f, &cut),
                        report,
                    });
                }
            }
        }
    }
    Ok(summary)
}

/// Random sets of `f`'s arguments and arguments, for sampled checks.
pub fn sample_pairs(f: &Framework, seed: u64, count: usize) -> Vec<(ArgSet, ArgumentId)> {
    let ids: Vec<ArgumentId> = f.args().iter().collect();
    if ids.is_empty() {
        return Vec::new();
    }
    let mut rng = Stream::new(seed);
    (0..count)
        .map(|_| {
            let e = ids.iter().copied().filter(|_| rng.bool(0.5)).collect();
            (e, ids[rng.below(ids.len())])
        })
        .collect()
}
