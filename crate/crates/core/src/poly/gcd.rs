//! Multivariate GCD over the integers.
//!
//! Layered strategy:
//!   1. strip integer content and common monomial factors;
//!   2. split off variables private to one operand via contents (exact);
//!   3. one remaining variable: small-prime modular gcd with CRT (exact);
//!   4. heuristic evaluation gcd: substitute a variable at a large integer,
//!      recurse, reconstruct from the balanced base-xi expansion, verify by
//!      exact division. Only a verified non-constant divisor is used, and
//!      the top level divides it out and repeats;
//!   5. a co-primality certificate: a degree-preserving specialization to
//!      one variable modulo a word prime. `lc_x(h)` divides `lc_x(f)`, so a
//!      point keeping `lc_x(f)` nonzero keeps `deg_x h`; a constant image
//!      gcd then proves `deg_x(gcd) = 0` and the answer reduces to contents;
//!   6. primitive-PRS recursion as the last exact resort.
//!
//! Every "co-prime" conclusion comes from an exact path (2, 3, 5 or 6), so
//! reduced forms downstream never silently keep a common factor.

use super::{same_table, Monomial, MultiPoly, VarTable};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::Arc;

/// Greatest common divisor, normalized to a positive leading coefficient
/// under graded lex; the integer content gcd is included. `gcd(f, 0)` is
/// `f` normalized. Both arguments zero is a usage error.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert!(same_table(f.vars(), g.vars()), "variable table mismatch");
    assert!(!(f.is_zero() && g.is_zero()), "gcd(0, 0) is undefined");
    if f.is_zero() {
        return g.normalize_sign();
    }
    if g.is_zero() {
        return f.normalize_sign();
    }
    let vars = f.vars();

    let cf = f.content().unwrap();
    let cg = g.content().unwrap();
    let c = cf.gcd(&cg);
    let fp = f.primitive_part().unwrap();
    let gp = g.primitive_part().unwrap();

    // shared monomial factor
    let mf = fp.min_exponents();
    let mg = gp.min_exponents();
    let shared = Monomial(mf.0.iter().zip(&mg.0).map(|(a, b)| *a.min(b)).collect());
    let fs = strip_monomial(&fp, &mf);
    let gs = strip_monomial(&gp, &mg);

    let mut acc = MultiPoly::monomial(vars, shared, c);
    if fs == gs || fs == gs.neg() {
        return (&acc * &fs).normalize_sign();
    }
    let mut a = fs;
    let mut b = gs;
    // gcd_inner may return a verified divisor that is not maximal; divide it
    // out and repeat until the cofactors are provably co-prime.
    loop {
        let h = gcd_inner(&a, &b);
        if h.is_one() {
            break;
        }
        a = a.exact_div(&h).expect("verified divisor");
        b = b.exact_div(&h).expect("verified divisor");
        acc = &acc * &h;
        if a.is_constant() || b.is_constant() {
            break;
        }
    }
    acc.normalize_sign()
}

fn strip_monomial(f: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_unit() {
        return f.clone();
    }
    MultiPoly::from_terms(
        f.vars(),
        f.terms()
            .iter()
            .map(|(mono, c)| (mono.try_div(m).expect("min exponents divide"), c.clone()))
            .collect(),
    )
}

/// Common divisor of primitive, monomial-free inputs. Returns 1 only along
/// an exact path; a non-constant result always divides both inputs.
fn gcd_inner(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.vars());
    }
    let sf = f.support();
    let sg = g.support();
    let common: Vec<usize> = sf.iter().copied().filter(|v| sg.contains(v)).collect();
    if common.is_empty() {
        return MultiPoly::one(f.vars());
    }
    // a variable private to one operand cannot appear in the gcd, so the
    // gcd lives in that operand's content with respect to it
    if let Some(&v) = sf.iter().find(|v| !sg.contains(v)) {
        let (cont, _) = content_in_var(f, v);
        return gcd(&cont, g);
    }
    if let Some(&v) = sg.iter().find(|v| !sf.contains(v)) {
        let (cont, _) = content_in_var(g, v);
        return gcd(f, &cont);
    }
    if let [v] = common[..] {
        return gcd_univar(f, g, v);
    }
    // quick divisibility shortcuts
    if f.total_degree() <= g.total_degree() && f.divides(g) {
        return f.normalize_sign();
    }
    if g.total_degree() < f.total_degree() && g.divides(f) {
        return g.normalize_sign();
    }
    // main variable per the degree heuristic
    let x = *common
        .iter()
        .min_by_key(|&&v| (f.degree_in(v).min(g.degree_in(v)), v))
        .expect("nonempty common support");
    // cheap exact certificate first: most queries are co-prime pairs
    if coprime_in_main_var(f, g, x) == Some(true) {
        // deg_x(gcd) = 0, so the gcd divides both contents
        let (cont_f, _) = content_in_var(f, x);
        if cont_f.is_one() {
            return MultiPoly::one(f.vars());
        }
        let (cont_g, _) = content_in_var(g, x);
        return gcd(&cont_f, &cont_g);
    }
    if let Some(h) = gcd_heuristic(f, g, &common) {
        return h;
    }
    gcd_prs(f, g, x)
}

// ---------------------------------------------------------------------------
// heuristic evaluation gcd
// ---------------------------------------------------------------------------

/// Bit-size cap on substituted coefficients; beyond this the heuristic gives
/// up and the exact paths run instead.
const HEU_BIT_CAP: u64 = 6_000_000;

fn height_bits(f: &MultiPoly) -> u64 {
    f.terms().iter().map(|(_, c)| c.bits()).max().unwrap_or(1)
}

/// Verified non-constant common divisor, or `None`. A constant candidate is
/// deliberately not returned: co-primality needs an exact certificate.
fn gcd_heuristic(f: &MultiPoly, g: &MultiPoly, common: &[usize]) -> Option<MultiPoly> {
    // substitute low-degree variables first; the highest-degree variable
    // stays for the modular univariate base case
    let mut order: Vec<usize> = common.to_vec();
    order.sort_by_key(|&v| (f.degree_in(v).max(g.degree_in(v)), v));
    let candidate = heu_rec(f, g, &order)?;
    if candidate.is_constant() {
        return None;
    }
    let candidate = candidate.primitive_part().ok()?.normalize_sign();
    if candidate.divides(f) && candidate.divides(g) {
        Some(candidate)
    } else {
        None
    }
}

/// Recursive core: `vars` are the common variables still symbolic, ordered
/// with the base-case variable last. Returns an unverified candidate.
fn heu_rec(f: &MultiPoly, g: &MultiPoly, vars: &[usize]) -> Option<MultiPoly> {
    match vars.len() {
        0 => {
            let a = f.constant_value().expect("no variables left");
            let b = g.constant_value().expect("no variables left");
            Some(MultiPoly::constant(f.vars(), a.gcd(&b)))
        }
        1 => {
            if f.is_constant() || g.is_constant() {
                let a = f.content().unwrap();
                let b = g.content().unwrap();
                Some(MultiPoly::constant(f.vars(), a.gcd(&b)))
            } else {
                Some(gcd_univar(f, g, vars[0]))
            }
        }
        _ => {
            let x = vars[0];
            let dx = f.degree_in(x).max(g.degree_in(x)) as u64;
            let hmin = height_bits(f).min(height_bits(g));
            let mut xi: BigInt = BigInt::from(2) * (BigInt::one() << hmin) + 29;
            for _ in 0..4 {
                if (xi.bits() + 1) * (dx + 1) + height_bits(f).max(height_bits(g)) > HEU_BIT_CAP {
                    return None;
                }
                let fx = subst_int(f, x, &xi);
                let gx = subst_int(g, x, &xi);
                if fx.is_zero() || gx.is_zero() {
                    xi = next_xi(&xi);
                    continue;
                }
                let gamma = heu_rec(&fx, &gx, &vars[1..])?;
                let cand = xi_adic_lift(&gamma, x, &xi);
                let cand = match cand.primitive_part() {
                    Ok(p) => p.normalize_sign(),
                    Err(_) => {
                        xi = next_xi(&xi);
                        continue;
                    }
                };
                if cand.divides(f) && cand.divides(g) {
                    return Some(cand);
                }
                xi = next_xi(&xi);
            }
            None
        }
    }
}

fn next_xi(xi: &BigInt) -> BigInt {
    xi * BigInt::from(73794u32) / BigInt::from(27011u32) + 1
}

/// Substitute `var := value`, keeping the other variables symbolic.
fn subst_int(f: &MultiPoly, var: usize, value: &BigInt) -> MultiPoly {
    let deg = f.degree_in(var);
    let mut powers: Vec<BigInt> = Vec::with_capacity(deg as usize + 1);
    powers.push(BigInt::one());
    for i in 1..=deg {
        let next = &powers[i as usize - 1] * value;
        powers.push(next);
    }
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut m2 = m.clone();
            let e = m2.0[var];
            m2.0[var] = 0;
            (m2, c * &powers[e as usize])
        })
        .collect();
    MultiPoly::from_terms(f.vars(), terms)
}

/// Inverse of substitution: expand `gamma` in balanced base `xi`, the digits
/// becoming the coefficients of the powers of `var`.
fn xi_adic_lift(gamma: &MultiPoly, var: usize, xi: &BigInt) -> MultiPoly {
    let half = xi / 2;
    let mut rest = gamma.clone();
    let mut terms = Vec::new();
    let mut power: u32 = 0;
    while !rest.is_zero() {
        let mut next_terms = Vec::new();
        for (m, c) in rest.terms() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                let mut md = m.clone();
                md.0[var] = power;
                terms.push((md, d.clone()));
            }
            let q = (c - d) / xi;
            if !q.is_zero() {
                next_terms.push((m.clone(), q));
            }
        }
        rest = MultiPoly::from_terms(gamma.vars(), next_terms);
        power += 1;
        if power > 100_000 {
            break; // runaway lift; verification will reject
        }
    }
    MultiPoly::from_terms(gamma.vars(), terms)
}

// ---------------------------------------------------------------------------
// co-primality certificate
// ---------------------------------------------------------------------------

/// Attempts to prove `deg_x(gcd(f, g)) = 0` by a specialization of the other
/// variables modulo a word prime that preserves `deg_x` of both inputs.
/// `Some(true)`: proven. `None`: no usable evidence (fall back to PRS).
fn coprime_in_main_var(f: &MultiPoly, g: &MultiPoly, x: usize) -> Option<bool> {
    for attempt in 0..4u64 {
        let p = CERT_PRIMES[attempt as usize % CERT_PRIMES.len()];
        let point = cert_point(f.vars().arity(), attempt, p);
        let fi = univar_image_mod(f, x, &point, p);
        let gi = univar_image_mod(g, x, &point, p);
        let (fi, gi) = match (fi, gi) {
            (Some(a), Some(b)) => (a, b),
            _ => continue, // leading coefficient vanished; new point
        };
        let h = gcd_mod(fi, gi, p);
        if h.len() == 1 {
            return Some(true);
        }
        // shared factor modulo p: could be real or an unlucky prime; after a
        // few consistent hits let the exact path decide
        if attempt == 3 {
            return None;
        }
    }
    None
}

const CERT_PRIMES: [u64; 4] = [2147483647, 2147483629, 2147483587, 2147483579];

fn cert_point(arity: usize, attempt: u64, p: u64) -> Vec<u64> {
    let mut state = 0x9E3779B97F4A7C15u64.wrapping_mul(attempt + 3);
    (0..arity)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            2 + (state >> 33) % (p.min(1 << 20) - 3)
        })
        .collect()
}

/// Image of `f` in `Z_p[x]` after substituting `point` for the other
/// variables; `None` when the leading `x`-coefficient vanishes.
fn univar_image_mod(f: &MultiPoly, x: usize, point: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = f.degree_in(x) as usize;
    let mut coeffs = vec![0u64; deg + 1];
    for (m, c) in f.terms() {
        let mut t = to_u64_mod(c, p);
        for (v, &e) in m.0.iter().enumerate() {
            if v != x && e > 0 {
                t = mul_mod(t, pow_mod_u64(point[v], e as u64, p), p);
            }
        }
        let idx = m.0[x] as usize;
        coeffs[idx] = (coeffs[idx] + t) % p;
    }
    if coeffs[deg] == 0 {
        return None;
    }
    Some(coeffs)
}

// ---------------------------------------------------------------------------
// modular univariate gcd
// ---------------------------------------------------------------------------

/// Dense univariate gcd over Z by gcd images modulo word-size primes and CRT
/// lifting, verified by exact trial division.
fn gcd_univar(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let vars = f.vars();
    let cf = f.content().unwrap();
    let cg = g.content().unwrap();
    let c = cf.gcd(&cg);
    let fp = f.primitive_part().unwrap();
    let gp = g.primitive_part().unwrap();
    let fd = to_dense(&fp, var);
    let gd = to_dense(&gp, var);
    let lc_f = fd.last().unwrap().clone();
    let lc_g = gd.last().unwrap().clone();
    let lcd = lc_f.gcd(&lc_g);

    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut lift: Vec<BigInt> = Vec::new();
    let mut prev: Option<Vec<BigInt>> = None;

    for p in Crt31::new() {
        let pb = BigInt::from(p);
        if (&lc_f % &pb).is_zero() || (&lc_g % &pb).is_zero() {
            continue;
        }
        let fm = dense_mod(&fd, p);
        let gm = dense_mod(&gd, p);
        let mut gm = gcd_mod(fm, gm, p);
        let e = gm.len() - 1;
        if e == 0 {
            return MultiPoly::constant(vars, c);
        }
        if e > best_deg {
            continue; // unlucky prime
        }
        // scale so the leading coefficient is lcd mod p
        let scale = mul_mod(to_u64_mod(&lcd, p), inv_mod(*gm.last().unwrap(), p), p);
        for x in gm.iter_mut() {
            *x = mul_mod(*x, scale, p);
        }
        if e < best_deg {
            best_deg = e;
            modulus = pb.clone();
            lift = gm.iter().map(|&x| balanced(x, p)).collect();
            prev = None;
            continue;
        }
        // CRT combine at equal degree
        let minv = inv_mod(to_u64_mod(&modulus, p), p);
        for (acc, &img) in lift.iter_mut().zip(&gm) {
            let cur = to_u64_mod(acc, p);
            let diff = mul_mod(sub_mod(img, cur, p), minv, p);
            *acc += &modulus * balanced(diff, p);
        }
        modulus *= &pb;
        let half = &modulus / 2;
        for x in lift.iter_mut() {
            let mut r = x.mod_floor(&modulus);
            if r > half {
                r -= &modulus;
            }
            *x = r;
        }
        if prev.as_deref() == Some(&lift[..]) {
            let cand = from_dense(vars, var, &lift);
            if let Ok(cand) = cand.primitive_part() {
                let cand = cand.normalize_sign();
                if cand.divides(&fp) && cand.divides(&gp) {
                    return cand.mul_bigint(&c);
                }
            }
        }
        prev = Some(lift.clone());
    }
    unreachable!("prime stream is unbounded")
}

fn to_dense(f: &MultiPoly, var: usize) -> Vec<BigInt> {
    let deg = f.degree_in(var) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in f.terms() {
        debug_assert!(m.0.iter().enumerate().all(|(v, &e)| v == var || e == 0));
        out[m.0[var] as usize] += c;
    }
    out
}

fn from_dense(vars: &Arc<VarTable>, var: usize, coeffs: &[BigInt]) -> MultiPoly {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            let mut m = Monomial::unit(vars.arity());
            m.0[var] = e as u32;
            (m, c.clone())
        })
        .collect();
    MultiPoly::from_terms(vars, terms)
}

fn to_u64_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn balanced(x: u64, p: u64) -> BigInt {
    if x > p / 2 {
        BigInt::from(x) - BigInt::from(p)
    } else {
        BigInt::from(x)
    }
}

fn dense_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f.iter().map(|c| to_u64_mod(c, p)).collect();
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod_u64(a, p - 2, p)
}

/// Monic gcd of dense mod-p polynomials (coefficients ascending).
pub(crate) fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    let trim = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    let lc = *a.last().unwrap();
    if lc != 0 && lc != 1 {
        let inv = inv_mod(lc, p);
        for x in a.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
    a
}

pub(crate) fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    let lb_inv = inv_mod(*b.last().unwrap(), p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let q = mul_mod(*r.last().unwrap(), lb_inv, p);
        if q != 0 {
            for i in 0..=db {
                let idx = dr - db + i;
                r[idx] = sub_mod(r[idx], mul_mod(q, b[i], p), p);
            }
        }
        r.pop();
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
    }
    if r.is_empty() {
        r.push(0);
    }
    r
}

/// Stream of primes descending from 2^31; deterministic Miller-Rabin.
struct Crt31 {
    next: u64,
}

impl Crt31 {
    fn new() -> Self {
        Crt31 { next: (1 << 31) - 1 }
    }
}

impl Iterator for Crt31 {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let n = self.next;
            self.next -= 2;
            if is_prime_u64(n) {
                return Some(n);
            }
        }
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// primitive PRS fallback
// ---------------------------------------------------------------------------

fn gcd_prs(f: &MultiPoly, g: &MultiPoly, x: usize) -> MultiPoly {
    let (cont_f, pp_f) = content_in_var(f, x);
    let (cont_g, pp_g) = content_in_var(g, x);
    let cont_gcd = gcd(&cont_f, &cont_g);

    let (mut a, mut b) = if f.degree_in(x) >= g.degree_in(x) {
        (pp_f, pp_g)
    } else {
        (pp_g, pp_f)
    };
    let head = loop {
        if b.is_zero() {
            break a;
        }
        if b.degree_in(x) == 0 {
            break MultiPoly::one(f.vars());
        }
        let r = pseudo_rem(&a, &b, x);
        let r = if r.is_zero() { r } else { content_in_var(&r, x).1 };
        a = b;
        b = r;
    };
    (&cont_gcd * &head).normalize_sign()
}

/// Content/primitive-part split with respect to one variable; the content is
/// the full gcd of the coefficient polynomials (integer content included).
pub fn content_in_var(f: &MultiPoly, x: usize) -> (MultiPoly, MultiPoly) {
    let coeffs = f.coeffs_in(x);
    let mut cont: Option<MultiPoly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        cont = Some(match cont {
            None => c.normalize_sign(),
            Some(acc) => gcd(&acc, c),
        });
        if cont.as_ref().map(|c| c.is_one()).unwrap_or(false) {
            break;
        }
    }
    let cont = cont.expect("nonzero polynomial");
    let pp = f.exact_div(&cont).expect("content divides");
    (cont, pp)
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, x: usize) -> MultiPoly {
    let db = b.degree_in(x);
    let lc_b = lead_coeff_in(b, x);
    let e = a.degree_in(x) as i64 - db as i64 + 1;
    let mut r = a.clone();
    let mut steps = 0i64;
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = lead_coeff_in(&r, x);
        let mut shift = Monomial::unit(a.vars().arity());
        shift.0[x] = dr - db;
        r = &(&r * &lc_b) - &(&lr * &b.mul_monomial(&shift));
        steps += 1;
    }
    let mut out = r;
    for _ in 0..(e - steps).max(0) {
        out = &out * &lc_b;
    }
    out
}

fn lead_coeff_in(f: &MultiPoly, x: usize) -> MultiPoly {
    let d = f.degree_in(x);
    let terms = f
        .terms()
        .iter()
        .filter(|(m, _)| m.0[x] == d)
        .map(|(m, c)| {
            let mut m2 = m.clone();
            m2.0[x] = 0;
            (m2, c.clone())
        })
        .collect();
    MultiPoly::from_terms(f.vars(), terms)
}

#[cfg(test)]
mod tests {
    use super::super::VarTable;
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn monomial_and_common_factor() {
        let vt = VarTable::new(&["t", "u"]);
        // gcd((1+t)^2 u, (1+t) t) = 1+t
        let f = parse_poly("(1+t)^2*u", &vt).unwrap();
        let g = parse_poly("(1+t)*t", &vt).unwrap();
        assert_eq!(gcd(&f, &g), parse_poly("1+t", &vt).unwrap());
    }

    #[test]
    fn gcd_with_self_and_zero() {
        let vt = VarTable::new(&["t", "u"]);
        let f = parse_poly("-2*t^2-2*t*u", &vt).unwrap();
        assert_eq!(gcd(&f, &f), parse_poly("2*t^2+2*t*u", &vt).unwrap());
        let z = MultiPoly::zero(&vt);
        assert_eq!(gcd(&f, &z), parse_poly("2*t^2+2*t*u", &vt).unwrap());
    }

    #[test]
    fn cofactor_structure() {
        let vt = VarTable::new(&["x", "y", "z"]);
        let h = parse_poly("x*y+z+1", &vt).unwrap();
        let f = parse_poly("(x+y)*(x*y+z+1)", &vt).unwrap();
        let g = parse_poly("(x-y+3)*(x*y+z+1)", &vt).unwrap();
        assert_eq!(gcd(&f, &g), h);
    }

    #[test]
    fn private_variables_reduce_to_contents() {
        let vt = VarTable::new(&["x", "y", "z"]);
        // y only in f, z only in g; shared part is x+1
        let f = parse_poly("(x+1)*(x*y+y+2)", &vt).unwrap();
        let g = parse_poly("(x+1)*(z+x)", &vt).unwrap();
        assert_eq!(gcd(&f, &g), parse_poly("x+1", &vt).unwrap());
    }

    #[test]
    fn univariate_modular_path() {
        let vt = VarTable::new(&["x"]);
        let f = parse_poly("(x^3-2*x+5)*(7*x^4+x+12)", &vt).unwrap();
        let g = parse_poly("(x^3-2*x+5)*(x^2+11)", &vt).unwrap();
        assert_eq!(gcd(&f, &g), parse_poly("x^3-2*x+5", &vt).unwrap());
    }

    #[test]
    fn integer_contents_combine() {
        let vt = VarTable::new(&["x"]);
        let f = parse_poly("6*x+6", &vt).unwrap();
        let g = parse_poly("4*x^2-4", &vt).unwrap();
        assert_eq!(gcd(&f, &g), parse_poly("2*x+2", &vt).unwrap());
    }
}
