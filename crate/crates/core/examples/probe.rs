use coprimality_core::analysis::*;
use coprimality_core::lattice::*;
use coprimality_core::laurent::UnitSpec;
use coprimality_core::recurrence::*;
use std::time::Instant;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "somos20" => {
            let t0 = Instant::now();
            let seq = evolve(&RecurrenceSpec::somos4(), 20).unwrap();
            println!("evolve somos n=20: {:?}", t0.elapsed());
            let spec = UnitSpec::monomial_ring("R", 0..4);
            let t0 = Instant::now();
            for (i, term) in seq.iter() {
                assert!(spec.is_laurent(term), "y_{i} not laurent");
            }
            println!("laurent check: {:?}", t0.elapsed());
            let y20 = seq.term(20).unwrap();
            println!("y20 num terms: {}", y20.num().terms().len());
        }
        "somos-coprime" => {
            let seq = evolve(&RecurrenceSpec::somos4(), 14).unwrap();
            let spec = UnitSpec::monomial_ring("R", 0..4);
            let t0 = Instant::now();
            let mut pairs = 0;
            for n in 5..=14 {
                for m in (n + 1)..=14 {
                    let v = coprime(seq.term(n).unwrap(), seq.term(m).unwrap(), &spec).unwrap();
                    assert!(v.coprime, "pair ({n},{m})");
                    pairs += 1;
                }
            }
            println!("somos coprime {pairs} pairs: {:?}", t0.elapsed());
        }
        "qrt12" => {
            let t0 = Instant::now();
            let seq = evolve(&RecurrenceSpec::qrt2(), 13).unwrap();
            println!("evolve qrt n=0..12: {:?}", t0.elapsed());
            let spec = UnitSpec::monomial_ring("tu", [0, 1]);
            let t0 = Instant::now();
            let factors = discover_factors_seq(&seq, 2, &spec).unwrap();
            println!("discover {} factors: {:?}", factors.len(), t0.elapsed());
            let t0 = Instant::now();
            for f in &factors {
                let p = confinement_profile(&seq, f).unwrap();
                let _ = p;
            }
            println!("profiles: {:?}", t0.elapsed());
        }
        "nonqrt8" => {
            let t0 = Instant::now();
            let seq = evolve(&RecurrenceSpec::nonqrt3(), 9).unwrap();
            println!("evolve nonqrt3 n=0..8: {:?}", t0.elapsed());
            let x8 = seq.term(8).unwrap();
            println!(
                "x8 num terms {} deg {}, den terms {} deg {}",
                x8.num().terms().len(),
                x8.num().total_degree(),
                x8.den().terms().len(),
                x8.den().total_degree()
            );
            let g = coprimality_core::parse::parse_poly("1+t", seq.vars()).unwrap();
            let t0 = Instant::now();
            let prof = confinement_profile(&seq, &g).unwrap();
            println!("profile {:?}: {:?}", prof.class, t0.elapsed());
            println!("window {:?}", prof.window);
        }
        "pipeline55" => {
            let t0 = Instant::now();
            let p = pipeline_windows(5, 4, &DeltaSpec::Symbolic).unwrap();
            println!("pipeline 5x(0..4): {:?}", t0.elapsed());
            assert_eq!(first_mismatch(&p.direct, &p.via_bilinear), None);
            assert_eq!(first_mismatch(&p.direct, &p.via_tilde), None);
            println!("agree");
            let w55 = p.direct.get(5, 4).unwrap();
            println!(
                "w_5^4 num terms {} den terms {}",
                w55.num().terms().len(),
                w55.den().terms().len()
            );
        }
        "laurent8" => {
            let t0 = Instant::now();
            let ct = boundary_transform(8, 7, &DeltaSpec::Symbolic);
            let bb = ct.bilinear_boundary(8, 8);
            let a = evolve_bilinear(&bb, 8, 8, Some(8)).unwrap();
            println!("bilinear w-vars m+n<=8: {:?}", t0.elapsed());
            let spec = ct.unit_spec_b();
            let t0 = Instant::now();
            for ((m, n), v) in a.iter() {
                assert!(spec.is_laurent(v), "a_{m}^{n} not laurent in B");
            }
            println!("B-laurent checks: {:?}", t0.elapsed());
        }
        "dkdv-coprime" => {
            let t0 = Instant::now();
            let ct = boundary_transform(5, 4, &DeltaSpec::Symbolic);
            let nb = ct.nonlinear_boundary(5, 4);
            let w = evolve_nonlinear(&nb, 5, 4, None).unwrap();
            println!("nonlinear 5x(0..4): {:?}", t0.elapsed());
            let spec = ct.unit_spec_w_monomial();
            let t0 = Instant::now();
            let cells: Vec<_> = w.iter().collect();
            let mut pairs = 0;
            let mut noncp = 0;
            for i in 0..cells.len() {
                for j in (i + 1)..cells.len() {
                    let (a, b) = (cells[i], cells[j]);
                    let dm = (a.0 .0 - b.0 .0).abs();
                    let dn = (a.0 .1 - b.0 .1).abs();
                    if dm >= 2 || dn >= 2 {
                        pairs += 1;
                        let v = coprime(a.1, b.1, &spec).unwrap();
                        if !v.coprime {
                            noncp += 1;
                            println!("NOT coprime: {:?} {:?}", a.0, b.0);
                        }
                    }
                }
            }
            println!("dkdv coprime {pairs} pairs, {noncp} bad: {:?}", t0.elapsed());
        }
        _ => eprintln!("unknown probe"),
    }
}
