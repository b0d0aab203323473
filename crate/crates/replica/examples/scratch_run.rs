fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let reports = if n == 0 { replica::verify::run_all() } else { vec![replica::verify::run_criterion(n)] };
    for r in &reports {
        println!(
            "[{}] {:>2} {:<24} {:>7} ms  fixtures {:>3}  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.number, r.name, r.millis, r.consumed.len(), r.detail
        );
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} of {} passed", reports.len() - failed, reports.len());
}
