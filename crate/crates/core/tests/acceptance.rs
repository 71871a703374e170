use std::time::Duration;

use sl3mtc::verify::{ReportDocument, VerifyParams};

fn time_limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(1)),
        2 => Some(Duration::from_secs(30)),
        5 | 8 => Some(Duration::from_secs(60)),
        9 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

#[test]
fn acceptance() {
    let report = ReportDocument::run(VerifyParams::FULL);
    let mut failures = Vec::new();
    for c in &report.criteria {
        let within = time_limit(c.id).is_none_or(|limit| c.elapsed < limit);
        let ok = c.passed && within;
        let status = if ok { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2}: {} ({:.2?})", c.id, c.title, c.elapsed);
        for d in c.details.iter().filter(|d| !ok || d.starts_with("FAIL")) {
            println!("    {d}");
        }
        for f in &c.flagged {
            println!("    FLAGGED {}: {}", f.item, f.value);
        }
        if !within {
            println!("    over the time limit of {:?}", time_limit(c.id).unwrap());
        }
        if !ok {
            failures.push(c.id);
        }
    }
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
}
