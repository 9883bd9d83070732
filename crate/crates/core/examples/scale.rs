use coprimality_core::lattice::*;
use std::time::Instant;

fn stats(w: &LatticeWindow, label: &str) {
    let mut max_terms = 0;
    let mut max_deg = 0;
    for (_, v) in w.iter() {
        max_terms = max_terms.max(v.num().terms().len().max(v.den().terms().len()));
        max_deg = max_deg.max(v.num().total_degree().max(v.den().total_degree()));
    }
    println!("  {label}: max terms {max_terms}, max deg {max_deg}");
}

fn main() {
    for (m, n) in [(3i64, 2i64), (3, 3), (4, 3), (4, 4), (5, 4)] {
        println!("window {m}x(0..{n})");
        let t0 = Instant::now();
        let ct = boundary_transform(m, n, &DeltaSpec::Symbolic);
        println!("  boundary_transform: {:?}", t0.elapsed());
        let t0 = Instant::now();
        let nb = ct.nonlinear_boundary(m, n);
        let direct = evolve_nonlinear(&nb, m, n, None).unwrap();
        println!("  direct nonlinear: {:?}", t0.elapsed());
        stats(&direct, "direct");
        let t0 = Instant::now();
        let bb = ct.bilinear_boundary(m, n + 1);
        let a = evolve_bilinear(&bb, m, n + 1, None).unwrap();
        println!("  bilinear: {:?}", t0.elapsed());
        stats(&a, "a-window");
        let t0 = Instant::now();
        let wa = w_from_a(&a).unwrap();
        println!("  w_from_a: {:?}", t0.elapsed());
        let t0 = Instant::now();
        let tb = ct.tilde_boundary(m, n);
        let at = evolve_bilinear_tilde(&tb, m, n, None).unwrap();
        let wt = w_from_a_tilde(&at).unwrap();
        println!("  tilde route: {:?}", t0.elapsed());
        assert_eq!(first_mismatch(&direct, &wa), None);
        assert_eq!(first_mismatch(&direct, &wt), None);
        println!("  all agree");
    }
}
