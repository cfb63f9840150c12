use std::time::Instant;
use stabzx::equality::equal_diagrams;
use stabzx::normalize::{reduce_with_stats, to_gslc};
use stabzx::semantics::random_stabilizer_diagram;

fn main() {
    for (n, depth) in [(20usize, 60usize), (50, 150), (100, 300)] {
        let t0 = Instant::now();
        let d1 = random_stabilizer_diagram(n, depth, 1);
        let d2 = random_stabilizer_diagram(n, depth, 2);
        let built = t0.elapsed();
        let t1 = Instant::now();
        let st = to_gslc(&d1).unwrap();
        let (r, stats) = reduce_with_stats(&st);
        let norm = t1.elapsed();
        let t2 = Instant::now();
        let eq_self = equal_diagrams(&d1, &d1).unwrap();
        let eq_other = equal_diagrams(&d1, &d2).unwrap();
        let decide = t2.elapsed();
        let reduced = matches!(r, stabzx::gslc::RGslcState::State(_));
        println!(
            "n={n} depth={depth}: build {built:?}, normalize {norm:?} (lc={}, elc={}, reduced={reduced}), equal self={eq_self} other={eq_other} in {decide:?}",
            stats.local_comps, stats.edge_comps
        );
        assert!(eq_self);
    }
}
