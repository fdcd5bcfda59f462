//! Differential campaign: every splitting procedure against the oracle on
//! seeded random frameworks.
//!
//! cargo run --release --example fuzz_campaign -- [SEED] [COUNT] [MAX_ARGS]

use bsaf::harness::{campaign, CampaignConfig};
use bsaf::io::format_extension;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let count = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);
    let max_args = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);

    let cfg = CampaignConfig {
        seed,
        count,
        max_args,
        ..CampaignConfig::default()
    };
    let summary = campaign(&cfg)?;
    println!(
        "cases={} checks={} equal={} sound_subset={} failures={}",
        summary.cases,
        summary.checks,
        summary.equal,
        summary.sound_subset,
        summary.failures.len()
    );
    for fail in summary.failures.iter().take(3) {
        let f = bsaf::io::parse_framework(&fail.framework)?;
        println!(
            "case {} ({} mode, {}, cut {}): missing {:?} extra {:?}",
            fail.case,
            fail.report.mode,
            fail.report.semantics,
            fail.cut_names,
            fail.report
                .missing
                .iter()
                .map(|e| format_extension(&f, e))
                .collect::<Vec<_>>(),
            fail.report
                .extra
                .iter()
                .map(|e| format_extension(&f, e))
                .collect::<Vec<_>>(),
        );
        print!("{}", fail.framework);
    }
    if !summary.passed() {
        std::process::exit(1);
    }
    Ok(())
}
