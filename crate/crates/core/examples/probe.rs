use youngdim::analysis::fit_limit;
use youngdim::diagram::{Diagram, Mode};
use youngdim::growth::greedy_sequence;

fn main() {
    let run = greedy_sequence(Diagram::empty(), 50_000, Mode::Strict).unwrap();
    let pts: Vec<(u64, f64)> = run.samples().iter().filter(|s| s.n > 0).map(|s| (s.n, s.c)).collect();
    for &n in &[1000u64, 10_000, 30_000, 50_000] {
        println!("strict c({n}) = {:.6}", pts[(n - 1) as usize].1);
    }
    for w in [(10_000u64, 50_000u64), (20_000, 50_000), (5_000, 50_000)] {
        let f = fit_limit(&pts, w).unwrap();
        println!("strict window {:?}: C = {:.6}, a = {:.5}, rms = {:.2e}", w, f.limit, f.coeff, f.rms);
    }
    println!("strict tie_count = {}", run.tie_count());
}
