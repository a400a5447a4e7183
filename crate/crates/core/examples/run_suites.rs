//! Running verification suites programmatically and reading the report.

use tama::report::Status;
use tama::suites::{run, RunConfig};

fn main() {
    let config = RunConfig::new("A", Some(2), Some(3)).with_suites(&["osp", "centre", "vogan"]);
    let report = run(&config).unwrap();
    for c in &report.checks {
        let mark = match c.status {
            Status::Pass => "ok  ",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        println!("{mark} {:<10} {}", c.suite, c.check);
    }
    let s = &report.summary;
    println!("{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
}
