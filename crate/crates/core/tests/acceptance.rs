//! One pass/fail line per acceptance criterion. Limits and sample sizes are
//! pinned in `semichain::selftest`. Set `ACCEPTANCE_ONLY=4,8` to run a
//! subset.

use semichain::selftest::{self, Config, Scale};
use semichain::Exec;

#[test]
fn acceptance_criteria() {
    let cfg = Config { seed: 0, exec: Exec::Parallel, scale: Scale::Full };
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY").ok().map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut failed = vec![];
    for (id, _, _) in selftest::CRITERIA {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let o = selftest::run_criterion(id, &cfg);
        println!("{}", o.line());
        if !o.passed {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
