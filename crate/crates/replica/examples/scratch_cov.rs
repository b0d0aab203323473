use std::collections::BTreeSet;
fn main() {
    let reports = replica::verify::run_all();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut pass = 0;
    for r in &reports {
        if r.passed { pass += 1; } else { println!("FAIL {} {}: {}", r.number, r.name, r.detail); }
        seen.extend(r.consumed.iter().cloned());
    }
    let all: BTreeSet<String> = replica::fixtures::all_ids().unwrap().into_iter().collect();
    let missing: Vec<_> = all.difference(&seen).collect();
    let phantom: Vec<_> = seen.difference(&all).collect();
    println!("{} of {} criteria pass; {} of {} fixture ids consumed", pass, reports.len(), seen.len(), all.len());
    println!("uncovered: {:?}", missing);
    println!("unknown ids consumed: {:?}", phantom);
    let total: u128 = reports.iter().map(|r| r.millis).sum();
    println!("total wall time {} ms", total);
}
