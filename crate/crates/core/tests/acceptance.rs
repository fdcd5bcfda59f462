//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed even when stdout is captured.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bsaf::attack_split::solve_attack_split;
use bsaf::combined_split::{derive_splitting, solve_split};
use bsaf::harness::{
    bench, closure_decomposition_failures, compare, differential, gen_random, projection_failures,
    sample_pairs, solve_with_mode, validate_cut, CampaignConfig, GenConfig, Stream, Verdict,
    BENCH_CSV_HEADER,
};
use bsaf::semantics::{defends, defends_naive};
use bsaf::split_finder::{best_cut, enumerate_cuts_for, SplitMode};
use bsaf::{enumerate, ArgSet, ExtensionSet, Framework, Semantics};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sets(f: &Framework, lists: &[&[&str]]) -> ExtensionSet {
    lists
        .iter()
        .map(|l| f.set(l.iter().copied()).unwrap())
        .collect()
}

fn show(f: &Framework, exts: &ExtensionSet) -> String {
    let parts: Vec<String> = exts.iter().map(|e| f.render_set(e)).collect();
    format!("{{{}}}", parts.join(","))
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

/// Seeded frames (with their case index) that have at least one cut for
/// `mode`, drawn in case order.
fn frames_with_cuts(
    cfg: &CampaignConfig,
    mode: SplitMode,
    wanted: usize,
) -> Vec<(usize, Framework, Vec<ArgSet>)> {
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < wanted {
        let f = gen_random(&cfg.case(i)).unwrap();
        let cuts = enumerate_cuts_for(&f, mode);
        if !cuts.is_empty() {
            out.push((i, f, cuts));
        }
        i += 1;
    }
    out
}

fn fuzz_config(seed: u64, max_args: usize) -> CampaignConfig {
    CampaignConfig {
        seed,
        max_args,
        ..CampaignConfig::default()
    }
}

fn example1() -> Framework {
    Framework::builder()
        .args(["a", "b", "c", "d", "e", "f"])
        .attack(["f"], "c")
        .attack(["d", "e"], "f")
        .attack(["c"], "d")
        .support(["a", "b"], "c")
        .build()
        .unwrap()
}

fn setaf_example() -> Framework {
    Framework::builder()
        .args(["a", "b", "c", "x", "y", "z"])
        .attack(["a"], "c")
        .attack(["c"], "a")
        .attack(["b"], "b")
        .attack(["a", "z"], "x")
        .attack(["b", "z"], "y")
        .build()
        .unwrap()
}

fn grounded_counterexample() -> Framework {
    Framework::builder()
        .args(["a", "b", "c", "d", "e"])
        .attack(["a"], "b")
        .attack(["b"], "a")
        .attack(["a"], "c")
        .attack(["c"], "e")
        .support(["d"], "e")
        .build()
        .unwrap()
}

fn preferred_counterexample() -> Framework {
    Framework::builder()
        .args(["a", "b", "c", "d"])
        .attack(["d"], "c")
        .support(["a", "b"], "c")
        .build()
        .unwrap()
}

fn mixed_example() -> Framework {
    Framework::builder()
        .args(["a", "b", "c", "d", "x", "y", "z", "w"])
        .attack(["a"], "d")
        .attack(["d"], "d")
        .attack(["a"], "b")
        .support(["c"], "b")
        .attack(["c"], "x")
        .support(["x"], "b")
        .support(["y"], "d")
        .attack(["d"], "w")
        .attack(["z"], "w")
        .attack(["w"], "x")
        .build()
        .unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f = example1();
    let adm = enumerate(&f, Semantics::Admissible).unwrap();
    let com = enumerate(&f, Semantics::Complete).unwrap();
    let grd = enumerate(&f, Semantics::Grounded).unwrap();
    let expected = sets(&f, &[&[], &["a"], &["b"], &["e"], &["a", "e"], &["b", "e"]]);
    ensure(adm == expected, || format!("adm = {}", show(&f, &adm)))?;
    ensure(com.is_empty(), || format!("com = {}", show(&f, &com)))?;
    ensure(grd.is_empty(), || format!("grd = {}", show(&f, &grd)))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "adm has 6 sets, com = grd = {{}} in {:?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let f = setaf_example();
    let a1 = f.set(["a", "b", "c"]).unwrap();
    for sem in [
        Semantics::Admissible,
        Semantics::Complete,
        Semantics::Preferred,
        Semantics::Stable,
    ] {
        let split = solve_attack_split(&f, &a1, sem).unwrap().extensions;
        let oracle = enumerate(&f, sem).unwrap();
        ensure(split == oracle, || {
            format!(
                "{sem}: split {} vs oracle {}",
                show(&f, &split),
                show(&f, &oracle)
            )
        })?;
    }
    let adm = solve_attack_split(&f, &a1, Semantics::Admissible).unwrap();
    for e in [&["a", "z"][..], &["c", "x"], &["c", "z"], &["c", "x", "z"]] {
        let e = f.set(e.iter().copied()).unwrap();
        ensure(adm.contains(&e), || {
            format!("adm misses {}", f.render_set(&e))
        })?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "4 semantics equal to oracle in {:?}",
        start.elapsed()
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let cfg = fuzz_config(3, 7);
    let mut frames = 0;
    let mut mismatches: Vec<String> = Vec::new();
    let mut i = 0;
    while frames < 200 {
        let gen = cfg.case(i);
        i += 1;
        let f = gen_random(&gen).unwrap();
        if f.attacks().is_empty() {
            continue;
        }
        frames += 1;
        let mut rng = Stream::new(gen.seed ^ 0xC105E);
        let link = f.attacks()[rng.below(f.attacks().len())].clone();
        let closed = f.close_attack(&link).unwrap();
        for sem in Semantics::ALL {
            let before = enumerate(&f, sem).unwrap();
            let after = enumerate(&closed, sem).unwrap();
            if before != after {
                let gained: Vec<&ArgSet> = after.difference(&before).collect();
                let lost: Vec<&ArgSet> = before.difference(&after).collect();
                let sample = gained.first().or(lost.first()).map(|e| f.render_set(e));
                mismatches.push(format!(
                    "case {} {sem} closing {}: {} gained, {} lost, e.g. {}",
                    i - 1,
                    f.render_link(&link),
                    gained.len(),
                    lost.len(),
                    sample.unwrap_or_default(),
                ));
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    if mismatches.is_empty() {
        Ok(format!(
            "200 frames, 6 semantics unchanged in {:?}",
            start.elapsed()
        ))
    } else {
        let per_sem: Vec<String> = Semantics::ALL
            .iter()
            .map(|s| {
                let n = mismatches
                    .iter()
                    .filter(|m| m.contains(&format!(" {s} ")))
                    .count();
                format!("{s}={n}")
            })
            .collect();
        Err(format!(
            "{} mismatches ({}); first: {}",
            mismatches.len(),
            per_sem.join(" "),
            mismatches[0]
        ))
    }
}

const EXACT_ALL: [Semantics; 4] = [
    Semantics::Stable,
    Semantics::Admissible,
    Semantics::Complete,
    Semantics::Preferred,
];
const EXACT_SUPPORT: [Semantics; 3] = [
    Semantics::Stable,
    Semantics::Admissible,
    Semantics::Complete,
];

/// Runs the differential and projection checks of one procedure over every
/// frame and cut; `exact` semantics need equality, the rest soundness.
fn theorem_suite(
    frames: &[(usize, Framework, Vec<ArgSet>)],
    mode: SplitMode,
    exact: &[Semantics],
) -> Outcome {
    let mut checks = 0;
    let mut problems: Vec<String> = Vec::new();
    let mut tally: std::collections::BTreeMap<String, usize> = Default::default();
    for (case, f, cuts) in frames {
        for cut in cuts {
            for sem in Semantics::SPLITTABLE {
                checks += 1;
                let report = differential(f, cut, sem, mode).unwrap();
                let is_exact = exact.contains(&sem);
                let mut note = |kind: &str, detail: String| {
                    *tally.entry(format!("{sem} {kind}")).or_default() += 1;
                    problems.push(format!(
                        "case {case} cut {} {sem}: {detail}",
                        f.render_set(cut)
                    ));
                };
                if !report.extra.is_empty() {
                    note("unsound", format!("extra {}", show(f, &report.extra)));
                } else if is_exact && !report.missing.is_empty() {
                    note(
                        "incomplete",
                        format!("missing {}", show(f, &report.missing)),
                    );
                }
                if is_exact {
                    let bad = projection_failures(f, cut, sem, mode).unwrap();
                    if !bad.is_empty() {
                        note(
                            "projection",
                            format!("projection of {}", f.render_set(&bad[0])),
                        );
                    }
                }
            }
        }
    }
    if problems.is_empty() {
        Ok(format!("{} frames, {checks} checks", frames.len()))
    } else {
        let counts: Vec<String> = tally.iter().map(|(k, v)| format!("{k}={v}")).collect();
        Err(format!(
            "{} of {checks} checks failed ({}); first: {}",
            problems.len(),
            counts.join(", "),
            problems[0]
        ))
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let frames = frames_with_cuts(&fuzz_config(4, 8), SplitMode::Attack, 200);
    let summary = theorem_suite(&frames, SplitMode::Attack, &EXACT_ALL)?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{summary} in {:?}", start.elapsed()))
}

fn criterion_5() -> Outcome {
    let frames = frames_with_cuts(&fuzz_config(4, 8), SplitMode::Attack, 200);
    let mut subsets = 0;
    for (case, f, cuts) in &frames {
        for cut in cuts {
            let report = differential(f, cut, Semantics::Grounded, SplitMode::Attack).unwrap();
            ensure(report.extra.is_empty(), || {
                format!("case {case} cut {}: extra grounded sets", f.render_set(cut))
            })?;
            if report.verdict == Verdict::SoundSubset {
                subsets += 1;
            }
        }
    }
    let f = grounded_counterexample();
    let a1 = f.set(["a", "b"]).unwrap();
    let expected = sets(&f, &[&["a", "d", "e"]]);
    for mode in [SplitMode::Attack, SplitMode::Combined] {
        let report = differential(&f, &a1, Semantics::Grounded, mode).unwrap();
        let split = solve_with_mode(&f, &a1, Semantics::Grounded, mode).unwrap();
        ensure(split.extensions.is_empty(), || {
            format!("{mode}: split gave {}", show(&f, &split.extensions))
        })?;
        ensure(
            report.verdict == Verdict::SoundSubset && report.missing == expected,
            || {
                format!(
                    "{mode}: {:?} missing {}",
                    report.verdict,
                    show(&f, &report.missing)
                )
            },
        )?;
    }
    Ok(format!(
        "sound on every case ({subsets} strict subsets); witness split {{}} vs oracle {}",
        show(&f, &expected)
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let f = preferred_counterexample();
    let a1 = f.set(["a", "c", "d"]).unwrap();
    let report = differential(&f, &a1, Semantics::Preferred, SplitMode::Support).unwrap();
    let expected = sets(&f, &[&["b", "d"]]);
    let witness = ensure(
        report.verdict == Verdict::SoundSubset && report.missing == expected,
        || {
            format!(
                "preferred witness: {:?} missing {}",
                report.verdict,
                show(&f, &report.missing)
            )
        },
    );
    let frames = frames_with_cuts(&fuzz_config(6, 8), SplitMode::Support, 200);
    let summary = theorem_suite(&frames, SplitMode::Support, &EXACT_SUPPORT);
    let summary = match (summary, witness) {
        (Ok(s), Ok(())) => s,
        (Err(e), Ok(())) => return Err(format!("{e}; preferred witness reproduced")),
        (_, Err(e)) => return Err(e),
    };
    Ok(format!(
        "{summary}; witness missing {} in {:?}",
        show(&f, &report.missing),
        start.elapsed()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let frames = frames_with_cuts(&fuzz_config(7, 8), SplitMode::Combined, 200);
    let mixed = frames
        .iter()
        .flat_map(|(_, f, cuts)| cuts.iter().map(move |c| derive_splitting(f, c).unwrap()))
        .filter(|spec| !spec.r3().is_empty() && !spec.s3().is_empty())
        .count();
    ensure(mixed > 0, || {
        "no cut had both shared attacks and supports".into()
    })?;
    let summary = theorem_suite(&frames, SplitMode::Combined, &EXACT_SUPPORT)?;

    let f = mixed_example();
    let spec = derive_splitting(&f, &f.set(["a", "b", "c", "d"]).unwrap()).unwrap();
    let e1 = f.set(["a"]).unwrap();
    let reduct = spec.final_reduct(&e1).unwrap();
    let dummies = f.universe().dummies();
    let per_e1: ExtensionSet = enumerate(&reduct, Semantics::Admissible)
        .unwrap()
        .into_iter()
        .map(|e2| e1.union(&e2.difference(&dummies)))
        .collect();
    let expected = sets(&f, &[&["a"], &["a", "z"]]);
    ensure(per_e1 == expected, || {
        format!("per-E1 output {}", show(&f, &per_e1))
    })?;
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(format!(
        "{summary} ({mixed} cuts with both link kinds); per-E1 adm {} in {:?}",
        show(&f, &per_e1),
        start.elapsed()
    ))
}

fn criterion_8() -> Outcome {
    let frames = frames_with_cuts(&fuzz_config(4, 8), SplitMode::Attack, 200);
    let mut checks = 0;
    for (case, f, cuts) in &frames {
        for cut in cuts {
            for sem in Semantics::SPLITTABLE {
                let bad = closure_decomposition_failures(f, cut, sem).unwrap();
                ensure(bad.is_empty(), || {
                    format!(
                        "case {case} cut {} {sem}: {}",
                        f.render_set(cut),
                        f.render_set(&bad[0])
                    )
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} attack-pipeline checks"))
}

fn criterion_9() -> Outcome {
    let mut exhaustive = 0;
    for seed in 0..50u64 {
        let f = gen_random(&GenConfig {
            seed,
            n_args: 1 + (seed as usize % 6),
            p_attack: 0.3,
            p_support: 0.25,
            max_tail: 3,
            support_dag: seed % 3 != 0,
        })
        .unwrap();
        for e in enumerate(&f, Semantics::ConflictFree)
            .unwrap()
            .into_iter()
            .chain(subsets_of(f.args()))
        {
            for a in f.args().iter() {
                let fast = defends(&f, &e, a).unwrap();
                let naive = defends_naive(&f, &e, a).unwrap();
                ensure(fast == naive, || {
                    format!("seed {seed}: {} defends {}", f.render_set(&e), f.name(a))
                })?;
                exhaustive += 1;
            }
        }
    }
    let mut sampled = 0;
    for seed in 0..50u64 {
        let f = gen_random(&GenConfig {
            seed: 1000 + seed,
            n_args: 7 + (seed as usize % 4),
            p_attack: 0.2,
            p_support: 0.15,
            max_tail: 3,
            support_dag: seed % 3 != 0,
        })
        .unwrap();
        for (e, a) in sample_pairs(&f, seed, 40) {
            let fast = defends(&f, &e, a).unwrap();
            let naive = defends_naive(&f, &e, a).unwrap();
            ensure(fast == naive, || {
                format!(
                    "seed {}: {} defends {}",
                    1000 + seed,
                    f.render_set(&e),
                    f.name(a)
                )
            })?;
            sampled += 1;
        }
    }
    Ok(format!(
        "{exhaustive} exhaustive and {sampled} sampled pairs agree"
    ))
}

fn subsets_of(args: &ArgSet) -> Vec<ArgSet> {
    let members: Vec<_> = args.iter().collect();
    (0..1u32 << members.len())
        .map(|mask| {
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &a)| a)
                .collect()
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let cfg = fuzz_config(10, 8);
    let mut cuts_seen = 0;
    for case in 0..500 {
        let f = gen_random(&cfg.case(case)).unwrap();
        for mode in SplitMode::ALL {
            for cut in enumerate_cuts_for(&f, mode) {
                validate_cut(&f, &cut, mode).map_err(|e| format!("case {case} {mode}: {e}"))?;
                let report = differential(&f, &cut, Semantics::Admissible, mode).unwrap();
                ensure(report.verdict == Verdict::Equal, || {
                    format!(
                        "case {case} {mode} cut {}: {:?}",
                        f.render_set(&cut),
                        report.verdict
                    )
                })?;
                cuts_seen += 1;
            }
        }
    }
    Ok(format!("500 frames, {cuts_seen} cuts valid and adm-equal"))
}

fn criterion_11() -> Outcome {
    let frames = frames_with_cuts(&fuzz_config(11, 8), SplitMode::Attack, 100);
    let mut identities = 0;
    for (case, f, cuts) in &frames {
        for cut in cuts {
            for sem in Semantics::SPLITTABLE {
                let combined = solve_split(f, cut, sem).unwrap().extensions;
                let attack = solve_attack_split(f, cut, sem).unwrap().extensions;
                ensure(combined == attack, || {
                    format!(
                        "case {case} cut {} {sem}: combined differs",
                        f.render_set(cut)
                    )
                })?;
                identities += 1;
            }
        }
    }
    let setaf = CampaignConfig {
        p_support: 0.0,
        ..fuzz_config(12, 8)
    };
    let mut verdicts = 0;
    for case in 0..200 {
        let f = gen_random(&setaf.case(case)).unwrap();
        assert!(f.supports().is_empty());
        for mode in SplitMode::ALL {
            for cut in enumerate_cuts_for(&f, mode) {
                for sem in [
                    Semantics::Stable,
                    Semantics::Admissible,
                    Semantics::Complete,
                    Semantics::Preferred,
                ] {
                    let split = solve_with_mode(&f, &cut, sem, mode).unwrap();
                    let report = compare(&enumerate(&f, sem).unwrap(), &split, &cut, mode);
                    ensure(report.verdict == Verdict::Equal, || {
                        format!("setaf case {case} {mode} {sem}: {:?}", report.verdict)
                    })?;
                    verdicts += 1;
                }
            }
        }
    }
    Ok(format!(
        "{identities} combined/attack identities, {verdicts} support-free verdicts Equal"
    ))
}

fn criterion_12() -> Outcome {
    let names: Vec<String> = (0..12).map(|i| format!("a{i}")).collect();
    let mut b = Framework::builder().args(names.clone());
    for w in names.windows(2) {
        b = b.attack([w[0].clone()], w[1].clone());
    }
    for i in (0..10).step_by(3) {
        b = b.attack(
            [names[i].clone(), names[i + 1].clone()],
            names[i + 2].clone(),
        );
    }
    b = b.support([names[5].clone()], names[4].clone());
    b = b.support([names[9].clone()], names[8].clone());
    let f = b.build().unwrap();
    let cut = best_cut(&f).ok_or("no cut")?;
    ensure(cut.len() == 6, || {
        format!("cut {} is not balanced", f.render_set(&cut))
    })?;

    let start = Instant::now();
    let oracle = enumerate(&f, Semantics::Admissible).unwrap();
    let oracle_time = start.elapsed();
    let start = Instant::now();
    let split = solve_split(&f, &cut, Semantics::Admissible).unwrap();
    let split_time = start.elapsed();
    within(oracle_time, Duration::from_secs(60))?;
    within(split_time, Duration::from_secs(60))?;
    ensure(split.extensions == oracle, || {
        "split and oracle disagree".into()
    })?;
    let record =
        bench(&f, &cut, Semantics::Admissible, SplitMode::Combined).map_err(|e| e.to_string())?;
    ensure(record.oracle_ms > 0.0 && record.split_ms > 0.0, || {
        "zero duration".into()
    })?;
    println!("    {BENCH_CSV_HEADER}");
    println!("    {}", record.csv_row());
    Ok(format!(
        "{} admissible sets, oracle {oracle_time:?}, split {split_time:?}",
        oracle.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("example-1 regression", criterion_1),
        ("attack-split regression", criterion_2),
        ("link closing", criterion_3),
        ("attack-split suite", criterion_4),
        ("grounded soundness and witness", criterion_5),
        ("support-split suite", criterion_6),
        ("combined-split suite", criterion_7),
        ("closure decomposition", criterion_8),
        ("defense equivalence", criterion_9),
        ("split-finder soundness", criterion_10),
        ("degeneration identities", criterion_11),
        ("performance smoke", criterion_12),
    ];
    // keep panics from individual criteria from aborting the rest
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
