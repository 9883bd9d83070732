use coprimality_core::lattice::*;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let ct = boundary_transform(8, 7, &DeltaSpec::Symbolic);
    println!("boundary_transform(8,7): {:?}", t0.elapsed());
    for (l, y) in ct.y.iter().enumerate() {
        println!(
            "y_{}: num terms {}, den terms {}, den deg {}",
            l + 2,
            y.num().terms().len(),
            y.den().terms().len(),
            y.den().total_degree()
        );
    }
}
