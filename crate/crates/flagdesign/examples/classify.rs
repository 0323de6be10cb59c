//! Runs the classification sweep and prints one line per design family.
use flagdesign::search::{classify_bounds, classify_theorem_main};

fn main() {
    let q_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(25);
    let report = classify_theorem_main(q_max, &classify_bounds()).expect("classification");
    for g in &report.groups {
        eprintln!("{} |G|={} {:?} {:?}", g.group, g.order, g.strategy, g.tasks.iter().map(|(c, o)| format!("{:?}:{o}", c.tuple())).collect::<Vec<_>>());
    }
    for (d, groups) in report.lines() {
        println!("{d}: {}", groups.join(", "));
    }
}
