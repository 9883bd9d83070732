//! The integrability-criterion layer: valuations, co-primeness verdicts,
//! confinement profiles, irreducibility certificates and degree growth.

use crate::lattice::LatticeWindow;
use crate::laurent::{RationalFunction, UnitSpec};
use crate::poly::{gcd, MultiPoly, PolyError, PrimePoly, VarTable, PRIME_POOL};
use crate::recurrence::TermSequence;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("valuation factor must be non-constant")]
    ConstantFactor,
    #[error("valuation factor must not be a unit (signed monomial)")]
    UnitFactor,
    #[error("valuation of the zero function is undefined")]
    ZeroInput,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Signed multiplicity `ord_g(f)`: positive when `g` divides the numerator,
/// negative for the denominator, zero otherwise. `g` is taken primitive and
/// sign-normalized.
pub fn valuation(f: &RationalFunction, g: &MultiPoly) -> Result<i64, AnalysisError> {
    if g.is_zero() || g.is_constant() {
        return Err(AnalysisError::ConstantFactor);
    }
    if g.is_signed_monomial() {
        return Err(AnalysisError::UnitFactor);
    }
    if f.is_zero() {
        return Err(AnalysisError::ZeroInput);
    }
    let p = g.primitive_part()?.normalize_sign();
    let mut k = 0i64;
    let mut h = f.num().clone();
    while let Ok(q) = h.exact_div(&p) {
        h = q;
        k += 1;
    }
    if k > 0 {
        return Ok(k);
    }
    let mut h = f.den().clone();
    while let Ok(q) = h.exact_div(&p) {
        h = q;
        k -= 1;
    }
    Ok(k)
}

/// Result of a pairwise co-primeness check: the witness is the first
/// non-unit common factor in the fixed order num-num, num-den, den-num,
/// den-den.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeVerdict {
    pub coprime: bool,
    pub witness: Option<MultiPoly>,
}

pub fn coprime(
    f: &RationalFunction,
    g: &RationalFunction,
    u: &UnitSpec,
) -> Result<CoprimeVerdict, PolyError> {
    let pairs = [
        (f.num(), g.num()),
        (f.num(), g.den()),
        (f.den(), g.num()),
        (f.den(), g.den()),
    ];
    for (p, q) in pairs {
        if p.is_zero() && q.is_zero() {
            continue;
        }
        let h = gcd(p, q);
        if h.is_constant() && !h.is_zero() {
            // integer gcd; a unit question only for non-invertible scalars
            if u.is_unit(&h)? {
                continue;
            }
            if h.is_one() {
                continue;
            }
            return Ok(CoprimeVerdict {
                coprime: false,
                witness: Some(h),
            });
        }
        let w = u.unit_free_part(&h)?;
        if !w.is_one() {
            return Ok(CoprimeVerdict {
                coprime: false,
                witness: Some(w.primitive_part()?),
            });
        }
    }
    Ok(CoprimeVerdict {
        coprime: true,
        witness: None,
    })
}

/// Primitive parts of all pairwise gcds (numerator/denominator cross pairs)
/// within the index radius, deduplicated up to sign.
pub fn discover_factors_seq(
    seq: &TermSequence,
    radius: i64,
    u: &UnitSpec,
) -> Result<Vec<MultiPoly>, PolyError> {
    let items: Vec<(i64, &RationalFunction)> = seq.iter().collect();
    discover(
        &items
            .iter()
            .map(|(i, f)| (vec![*i], *f))
            .collect::<Vec<_>>(),
        |a, b| (a[0] - b[0]).abs() <= radius,
        u,
    )
}

/// Window version; distance is the Chebyshev distance on (m, n).
pub fn discover_factors_window(
    w: &LatticeWindow,
    radius: i64,
    u: &UnitSpec,
) -> Result<Vec<MultiPoly>, PolyError> {
    let items: Vec<(Vec<i64>, &RationalFunction)> = w
        .iter()
        .map(|((m, n), f)| (vec![*m, *n], f))
        .collect();
    discover(
        &items,
        |a, b| (a[0] - b[0]).abs().max((a[1] - b[1]).abs()) <= radius,
        u,
    )
}

fn discover(
    items: &[(Vec<i64>, &RationalFunction)],
    near: impl Fn(&[i64], &[i64]) -> bool,
    u: &UnitSpec,
) -> Result<Vec<MultiPoly>, PolyError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if !near(&items[i].0, &items[j].0) {
                continue;
            }
            let (f, g) = (items[i].1, items[j].1);
            for (p, q) in [
                (f.num(), g.num()),
                (f.num(), g.den()),
                (f.den(), g.num()),
                (f.den(), g.den()),
            ] {
                if p.is_constant() || q.is_constant() {
                    continue;
                }
                let h = gcd(p, q);
                if h.is_constant() {
                    continue;
                }
                let w = u.unit_free_part(&h)?;
                if w.is_one() || w.is_constant() {
                    continue;
                }
                let w = w.primitive_part()?;
                let key = w.to_string();
                if seen.insert(key) {
                    out.push(w);
                }
            }
        }
    }
    Ok(out)
}

/// Classification of a factor's valuation support across a term window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfinementClass {
    /// Zero outside a contiguous block of the given width, with at least a
    /// two-index zero margin inside the computed horizon on both sides.
    Confined { width: usize },
    /// Non-zero from entry up to the horizon with strictly increasing
    /// absolute valuation.
    Unconfined,
    /// Support touches the horizon without a divergence pattern.
    Inconclusive { horizon: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfinementProfile {
    pub factor: MultiPoly,
    pub window: BTreeMap<i64, i64>,
    pub class: ConfinementClass,
}

/// Valuation table of `factor` across the sequence, with the confinement
/// classification.
pub fn confinement_profile(
    seq: &TermSequence,
    factor: &MultiPoly,
) -> Result<ConfinementProfile, AnalysisError> {
    let mut window = BTreeMap::new();
    for (i, term) in seq.iter() {
        window.insert(i, valuation(term, factor)?);
    }
    let (lo, hi) = seq.index_range();
    let nz: Vec<i64> = window
        .iter()
        .filter(|(_, &v)| v != 0)
        .map(|(&i, _)| i)
        .collect();
    let class = if nz.is_empty() {
        ConfinementClass::Confined { width: 0 }
    } else {
        let first = nz[0];
        let last = *nz.last().unwrap();
        if first >= lo + 2 && last <= hi - 2 {
            ConfinementClass::Confined {
                width: (last - first + 1) as usize,
            }
        } else {
            let tail_nonzero = (first..=hi).all(|i| window[&i] != 0);
            let increasing = (first..hi).all(|i| window[&i].abs() < window[&(i + 1)].abs());
            if last == hi && tail_nonzero && increasing {
                ConfinementClass::Unconfined
            } else {
                ConfinementClass::Inconclusive { horizon: hi }
            }
        }
    };
    Ok(ConfinementProfile {
        factor: factor.clone(),
        window,
        class,
    })
}

/// Valuation table of a factor across a lattice window (no classification;
/// confinement blocks are a sequence notion).
pub fn window_valuations(
    w: &LatticeWindow,
    factor: &MultiPoly,
) -> Result<BTreeMap<(i64, i64), i64>, AnalysisError> {
    let mut out = BTreeMap::new();
    for (key, term) in w.iter() {
        out.insert(*key, valuation(term, factor)?);
    }
    Ok(out)
}

/// Replayable irreducibility certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The element is a unit of the ring; units count as irreducible here.
    Unit,
    /// Constant with prime absolute value.
    ConstantPrime,
    /// Content check + degree-preserving specialization + factor-degree
    /// patterns from at least three primes intersecting to nothing proper.
    Specialization {
        main_var: usize,
        point: Vec<BigInt>,
        primes: Vec<u64>,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Irreducible(Certificate),
    ReducibleWitness(MultiPoly),
    Unknown { retries: u32 },
}

const CERTIFY_ATTEMPTS: u32 = 8;

/// One-sided irreducibility certifier.
///
/// `Irreducible` comes with a certificate that replays; `ReducibleWitness`
/// carries an exact non-unit divisor (from the supplied candidates, the
/// integer content, or the content in the chosen main variable); otherwise
/// `Unknown`.
pub fn irreducible_certify(
    f: &MultiPoly,
    u: &UnitSpec,
    seed: u64,
    candidates: &[MultiPoly],
) -> Result<IrreducibilityVerdict, PolyError> {
    let core = u.unit_free_part(f)?;
    if core.is_one() {
        return Ok(IrreducibilityVerdict::Irreducible(Certificate::Unit));
    }
    if core.is_constant() {
        return Ok(certify_constant(&core));
    }
    // supplied candidates: exact proper divisors with non-unit cofactor
    for cand in candidates {
        if cand.is_zero() || cand.is_constant() {
            continue;
        }
        let c = u.unit_free_part(cand)?;
        if c.is_one() || c.is_constant() {
            continue;
        }
        if let Ok(q) = core.exact_div(&c) {
            if !u.unit_free_part(&q)?.is_one() {
                return Ok(IrreducibilityVerdict::ReducibleWitness(c));
            }
        }
    }
    // integer content is a genuine factor when scalars are not invertible
    let content = core.content()?;
    if !content.is_one() && !u.is_unit(&MultiPoly::constant(core.vars(), content.clone()))? {
        return Ok(IrreducibilityVerdict::ReducibleWitness(MultiPoly::constant(
            core.vars(),
            content,
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = core.support();
    let mut retries = 0;
    for attempt in 0..CERTIFY_ATTEMPTS {
        let main = support[attempt as usize % support.len()];
        // (i) the content in the main variable must be a unit
        let (cont, _) = crate::poly::content_in_var(&core, main);
        let cont_free = u.unit_free_part(&cont)?;
        if !cont_free.is_one() {
            return Ok(IrreducibilityVerdict::ReducibleWitness(cont_free));
        }
        // (ii) specialize the other variables, preserving deg in main
        let bound = 10 + 5 * attempt as i64;
        let point: Vec<BigInt> = (0..core.vars().arity())
            .map(|_| {
                let mut v = 0i64;
                while v == 0 {
                    v = rng.gen_range(-bound..=bound);
                }
                BigInt::from(v)
            })
            .collect();
        let image = match core.specialize_int(main, &point) {
            Ok(h) => h,
            Err(PolyError::DegreeDrop) => {
                retries += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let deg = image.len() - 1;
        if deg == 1 {
            return Ok(IrreducibilityVerdict::Irreducible(
                Certificate::Specialization {
                    main_var: main,
                    point,
                    primes: Vec::new(),
                    seed,
                },
            ));
        }
        if !univar_squarefree(&image) {
            retries += 1;
            continue;
        }
        // (iii) intersect factor-degree patterns across primes
        if let Some(primes) = prime_pattern_proof(&image) {
            return Ok(IrreducibilityVerdict::Irreducible(
                Certificate::Specialization {
                    main_var: main,
                    point,
                    primes,
                    seed,
                },
            ));
        }
        retries += 1;
    }
    Ok(IrreducibilityVerdict::Unknown { retries })
}

fn certify_constant(core: &MultiPoly) -> IrreducibilityVerdict {
    let c = core.constant_value().expect("constant");
    let n = c.abs();
    if n.is_one() {
        return IrreducibilityVerdict::Irreducible(Certificate::Unit);
    }
    let mut d = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= limit {
        if (&n % &d).is_zero() {
            return IrreducibilityVerdict::ReducibleWitness(MultiPoly::constant(core.vars(), d));
        }
        d += 1;
    }
    if &d * &d > n {
        IrreducibilityVerdict::Irreducible(Certificate::ConstantPrime)
    } else {
        IrreducibilityVerdict::Unknown { retries: 0 }
    }
}

/// Squarefree over Q: gcd with the derivative is constant.
fn univar_squarefree(coeffs: &[BigInt]) -> bool {
    let vt = VarTable::new(&["X"]);
    let f = dense_to_poly(&vt, coeffs);
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let d = dense_to_poly(&vt, &deriv);
    if d.is_zero() {
        return false;
    }
    gcd(&f, &d).is_constant()
}

fn dense_to_poly(vt: &Arc<VarTable>, coeffs: &[BigInt]) -> MultiPoly {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            (
                crate::poly::Monomial(vec![e as u32]),
                c.clone(),
            )
        })
        .collect();
    MultiPoly::from_terms(vt, terms)
}

/// Walks the prime pool; returns the primes used once the intersection of
/// achievable proper factor degrees is empty (at least three primes), or
/// `None` if the pool is exhausted first.
fn prime_pattern_proof(image: &[BigInt]) -> Option<Vec<u64>> {
    let deg = image.len() - 1;
    let mut possible: Option<BTreeSet<usize>> = None;
    let mut used = Vec::new();
    for &p in PRIME_POOL.iter() {
        let pp = match PrimePoly::from_bigints(p, image) {
            Ok(pp) => pp,
            Err(_) => continue,
        };
        if !pp.is_squarefree() {
            continue;
        }
        let pattern = pp.distinct_degree_factorization();
        let sums = subset_sums(&pattern, deg);
        possible = Some(match possible {
            None => sums,
            Some(prev) => prev.intersection(&sums).copied().collect(),
        });
        used.push(p);
        if used.len() >= 3 && possible.as_ref().map(|s| s.is_empty()).unwrap_or(false) {
            return Some(used);
        }
    }
    None
}

/// Degrees in [1, deg-1] achievable as sums over sub-multisets of the
/// factor-degree pattern.
fn subset_sums(pattern: &[(usize, usize)], deg: usize) -> BTreeSet<usize> {
    let mut reachable = vec![false; deg + 1];
    reachable[0] = true;
    for &(d, count) in pattern {
        for _ in 0..count {
            for s in (0..=deg.saturating_sub(d)).rev() {
                if reachable[s] {
                    reachable[s + d] = true;
                }
            }
        }
    }
    (1..deg).filter(|&s| reachable[s]).collect()
}

/// Re-run a certificate; true iff it still proves the verdict.
pub fn replay_certificate(f: &MultiPoly, u: &UnitSpec, cert: &Certificate) -> bool {
    let core = match u.unit_free_part(f) {
        Ok(c) => c,
        Err(_) => return false,
    };
    match cert {
        Certificate::Unit => {
            core.is_one() || core.constant_value().map(|c| c.abs().is_one()).unwrap_or(false)
        }
        Certificate::ConstantPrime => matches!(
            certify_constant(&core),
            IrreducibilityVerdict::Irreducible(Certificate::ConstantPrime)
        ),
        Certificate::Specialization {
            main_var,
            point,
            primes,
            ..
        } => {
            if core.is_constant() {
                return false;
            }
            let (cont, _) = crate::poly::content_in_var(&core, *main_var);
            match u.unit_free_part(&cont) {
                Ok(c) if c.is_one() => {}
                _ => return false,
            }
            let image = match core.specialize_int(*main_var, point) {
                Ok(h) => h,
                Err(_) => return false,
            };
            let deg = image.len() - 1;
            if deg == 1 {
                return primes.is_empty();
            }
            if primes.len() < 3 {
                return false;
            }
            let mut possible: Option<BTreeSet<usize>> = None;
            for &p in primes {
                let pp = match PrimePoly::from_bigints(p, &image) {
                    Ok(pp) => pp,
                    Err(_) => return false,
                };
                if !pp.is_squarefree() {
                    return false;
                }
                let sums = subset_sums(&pp.distinct_degree_factorization(), deg);
                possible = Some(match possible {
                    None => sums,
                    Some(prev) => prev.intersection(&sums).copied().collect(),
                });
            }
            possible.map(|s| s.is_empty()).unwrap_or(false)
        }
    }
}

/// Per-term degree table and growth summary; the ratios are the only
/// approximate numbers the crate produces.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeGrowth {
    pub indices: Vec<i64>,
    pub degrees: Vec<u32>,
    pub differences: Vec<i64>,
    pub ratios: Vec<f64>,
}

pub fn degree_growth(seq: &TermSequence) -> DegreeGrowth {
    let mut indices = Vec::new();
    let mut degrees = Vec::new();
    for (i, term) in seq.iter() {
        indices.push(i);
        degrees.push(term.max_degree());
    }
    let differences = degrees
        .windows(2)
        .map(|w| w[1] as i64 - w[0] as i64)
        .collect();
    let ratios = degrees
        .windows(2)
        .map(|w| {
            if w[0] == 0 {
                f64::NAN
            } else {
                w[1] as f64 / w[0] as f64
            }
        })
        .collect();
    DegreeGrowth {
        indices,
        degrees,
        differences,
        ratios,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_rational};
    use crate::recurrence::{evolve, RecurrenceSpec};

    #[test]
    fn valuation_of_factor_in_itself_is_one() {
        let vt = VarTable::new(&["t", "u"]);
        let g = parse_poly("1+t+t^2*u", &vt).unwrap();
        let f = RationalFunction::from_poly(g.clone());
        assert_eq!(valuation(&f, &g).unwrap(), 1);
        let c = parse_poly("3", &vt).unwrap();
        assert!(matches!(
            valuation(&f, &c),
            Err(AnalysisError::ConstantFactor)
        ));
        let m = parse_poly("t*u", &vt).unwrap();
        assert!(matches!(valuation(&f, &m), Err(AnalysisError::UnitFactor)));
    }

    #[test]
    fn qrt_valuations_of_the_entering_factor() {
        let seq = evolve(&RecurrenceSpec::qrt2(), 6).unwrap();
        let g = parse_poly("1+t+t^2*u", seq.vars()).unwrap();
        assert_eq!(valuation(seq.term(3).unwrap(), &g).unwrap(), 1);
        assert_eq!(valuation(seq.term(4).unwrap(), &g).unwrap(), -2);
        assert_eq!(valuation(seq.term(5).unwrap(), &g).unwrap(), 1);
        assert_eq!(valuation(seq.term(2).unwrap(), &g).unwrap(), 0);
    }

    #[test]
    fn coprime_witness_for_adjacent_qrt_terms() {
        let seq = evolve(&RecurrenceSpec::qrt2(), 6).unwrap();
        let u = UnitSpec::monomial_ring("tu", [0, 1]);
        let v = coprime(seq.term(4).unwrap(), seq.term(5).unwrap(), &u).unwrap();
        assert!(!v.coprime);
        let expected = parse_poly("1+2*t+t^2+t*u+t^2*u+t^3*u^2", seq.vars()).unwrap();
        assert_eq!(v.witness.unwrap(), expected);
    }

    #[test]
    fn self_coprime_is_false_with_self_witness() {
        let vt = VarTable::new(&["t", "u"]);
        let u = UnitSpec::monomial_ring("tu", [0, 1]);
        let f = parse_rational("(1+t)/u", &vt).unwrap();
        let v = coprime(&f, &f, &u).unwrap();
        assert!(!v.coprime);
        assert_eq!(v.witness.unwrap(), parse_poly("1+t", &vt).unwrap());
    }

    #[test]
    fn discover_factors_on_qrt() {
        let seq = evolve(&RecurrenceSpec::qrt2(), 7).unwrap();
        let u = UnitSpec::monomial_ring("tu", [0, 1]);
        let factors = discover_factors_seq(&seq, 2, &u).unwrap();
        let f3 = parse_poly("1+t+t^2*u", seq.vars()).unwrap();
        assert!(factors.contains(&f3));
    }

    #[test]
    fn confinement_absent_factor_is_width_zero() {
        let seq = evolve(&RecurrenceSpec::qrt2(), 8).unwrap();
        let g = parse_poly("1+t+u", seq.vars()).unwrap();
        let prof = confinement_profile(&seq, &g).unwrap();
        assert_eq!(prof.class, ConfinementClass::Confined { width: 0 });
    }

    #[test]
    fn certifier_on_small_inputs() {
        let vt = VarTable::new(&["a", "b", "c", "d"]);
        let u = UnitSpec::monomial_ring("R", 0..4);
        // numerator of y_5
        let f = parse_poly("b*d+c^2", &vt).unwrap();
        let v = irreducible_certify(&f, &u, 7, &[]).unwrap();
        match &v {
            IrreducibilityVerdict::Irreducible(cert) => {
                assert!(replay_certificate(&f, &u, cert));
            }
            other => panic!("expected Irreducible, got {other:?}"),
        }
        // (1+t)^2 with a supplied candidate
        let vt2 = VarTable::new(&["t", "u"]);
        let u2 = UnitSpec::monomial_ring("tu", [0, 1]);
        let sq = parse_poly("(1+t)^2", &vt2).unwrap();
        let cand = parse_poly("1+t", &vt2).unwrap();
        let v = irreducible_certify(&sq, &u2, 7, &[cand.clone()]).unwrap();
        assert_eq!(v, IrreducibilityVerdict::ReducibleWitness(cand));
        // x*y + x has non-unit content in the main variable when no
        // monomials are declared units; the witness is an exact divisor
        let vt3 = VarTable::new(&["x", "y"]);
        let u3 = UnitSpec::monomial_ring("Z", Vec::<usize>::new());
        let f3 = parse_poly("x*y+x", &vt3).unwrap();
        match irreducible_certify(&f3, &u3, 7, &[]).unwrap() {
            IrreducibilityVerdict::ReducibleWitness(w) => {
                let q = f3.exact_div(&w).unwrap();
                assert!(!u3.unit_free_part(&q).unwrap().is_one());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        // with integer scalars, 2+2*t splits off its content
        let f4 = parse_poly("2+2*t", &vt2).unwrap();
        let v = irreducible_certify(&f4, &u2, 7, &[]).unwrap();
        assert_eq!(
            v,
            IrreducibilityVerdict::ReducibleWitness(MultiPoly::constant(&vt2, 2))
        );
    }

    #[test]
    fn degree_growth_of_constant_sequence() {
        let spec = RecurrenceSpec::parse("x[n+1] = x[n] + 0*x[n-1]").unwrap();
        let seq = evolve(&spec, 5).unwrap();
        let g = degree_growth(&seq);
        assert!(g.degrees.iter().all(|&d| d == 1));
        assert!(g.differences.iter().all(|&d| d == 0));
    }
}
