//! Rational values kept as products of polynomial atoms with integer
//! exponents and an exact scalar.
//!
//! The lattice sweeps live on tau-function algebra: every value is a ratio
//! of products of a small set of recurring polynomial cores, and every sum
//! collapses back onto that set. Keeping the factorization explicit turns
//! the reductions into exact-division trials against known atoms, so no
//! general multivariate gcd runs inside a sweep. Correctness never depends
//! on the bookkeeping being maximal: expansion plus [`RationalFunction::reduce`]
//! re-verifies every cell.

use crate::laurent::RationalFunction;
use crate::poly::{MultiPoly, PolyError, VarTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// `coef * prod atom_i ^ exp_i`, atoms primitive with positive leading
/// coefficient and non-constant, keyed by canonical text.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredRational {
    vars: Arc<VarTable>,
    coef: BigRational,
    factors: BTreeMap<String, (MultiPoly, i64)>,
}

impl FactoredRational {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        FactoredRational {
            vars: Arc::clone(vars),
            coef: BigRational::zero(),
            factors: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        FactoredRational {
            vars: Arc::clone(vars),
            coef: BigRational::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: BigRational) -> Self {
        FactoredRational {
            vars: Arc::clone(vars),
            coef: c,
            factors: BTreeMap::new(),
        }
    }

    pub fn var(vars: &Arc<VarTable>, idx: usize) -> Self {
        Self::from_poly(&MultiPoly::var(vars, idx), &[])
    }

    /// Factor a polynomial against the hint atoms: integer content and the
    /// monomial part come off first, then hint divisions, and whatever
    /// remains becomes one atom.
    pub fn from_poly(p: &MultiPoly, hints: &[MultiPoly]) -> Self {
        let mut out = FactoredRational::one(p.vars());
        if p.is_zero() {
            return Self::zero(p.vars());
        }
        out.absorb(p, 1, hints);
        out
    }

    /// Convert a reduced rational function, factoring both sides.
    pub fn from_rf(f: &RationalFunction, hints: &[MultiPoly]) -> Self {
        if f.is_zero() {
            return Self::zero(f.vars());
        }
        let mut out = FactoredRational::one(f.vars());
        out.absorb(f.num(), 1, hints);
        out.absorb(f.den(), -1, hints);
        out
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&MultiPoly, i64)> {
        self.factors.values().map(|(p, e)| (p, *e))
    }

    fn push(&mut self, atom: MultiPoly, exp: i64) {
        if exp == 0 {
            return;
        }
        debug_assert!(!atom.is_constant());
        let key = atom.to_string();
        match self.factors.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert((atom, exp));
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().1 += exp;
                if e.get().1 == 0 {
                    e.remove();
                }
            }
        }
    }

    /// Multiply `p^exp` into the value, splitting content, monomial part and
    /// hint atoms off `p`.
    fn absorb(&mut self, p: &MultiPoly, exp: i64, hints: &[MultiPoly]) {
        debug_assert!(!p.is_zero());
        let content = p.content().expect("nonzero");
        let mut rest = p.primitive_part().expect("nonzero");
        if rest.leading_coeff().is_negative() {
            rest = rest.neg();
            if exp % 2 != 0 {
                self.coef = -self.coef.clone();
            }
        }
        let c = BigRational::from(content);
        self.coef *= pow_rational(&c, exp);
        let mins = rest.min_exponents();
        if !mins.is_unit() {
            let m = MultiPoly::monomial(&self.vars, mins.clone(), 1);
            rest = rest.exact_div(&m).expect("min exponents divide");
            for (v, &e) in mins.0.iter().enumerate() {
                if e > 0 {
                    self.push(MultiPoly::var(&self.vars, v), e as i64 * exp);
                }
            }
        }
        if rest.is_one() {
            return;
        }
        for hint in hints {
            if hint.is_constant() || hint.is_signed_monomial() {
                continue;
            }
            let h = hint
                .primitive_part()
                .expect("nonzero hint")
                .normalize_sign();
            let mut count = 0i64;
            while !rest.is_constant() {
                match rest.exact_div(&h) {
                    Ok(q) => {
                        rest = q;
                        count += 1;
                    }
                    Err(_) => break,
                }
            }
            if count > 0 {
                self.push(h, count * exp);
                if rest.leading_coeff().is_negative() {
                    rest = rest.neg();
                    if exp % 2 != 0 {
                        self.coef = -self.coef.clone();
                    }
                }
                let c2 = rest.content().expect("nonzero");
                if !c2.is_one() {
                    rest = rest.primitive_part().expect("nonzero");
                    self.coef *= pow_rational(&BigRational::from(c2), exp);
                }
            }
            if rest.is_one() {
                return;
            }
        }
        if !rest.is_one() {
            self.push(rest, exp);
        }
    }

    pub fn neg(&self) -> Self {
        FactoredRational {
            vars: Arc::clone(&self.vars),
            coef: -self.coef.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        Ok(FactoredRational {
            vars: Arc::clone(&self.vars),
            coef: self.coef.recip(),
            factors: self
                .factors
                .iter()
                .map(|(k, (p, e))| (k.clone(), (p.clone(), -e)))
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = self.clone();
        out.coef *= &other.coef;
        for (p, e) in other.factors() {
            out.push(p.clone(), e);
        }
        out
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        if e == 0 {
            return Ok(Self::one(&self.vars));
        }
        if self.is_zero() {
            if e < 0 {
                return Err(PolyError::ZeroDivisor);
            }
            return Ok(self.clone());
        }
        Ok(FactoredRational {
            vars: Arc::clone(&self.vars),
            coef: pow_rational(&self.coef, e),
            factors: self
                .factors
                .iter()
                .map(|(k, (p, x))| (k.clone(), (p.clone(), x * e)))
                .collect(),
        })
    }

    /// Sum, re-factoring the combined numerator against both operands'
    /// atoms plus the extra hints.
    pub fn add(&self, other: &Self, hints: &[MultiPoly]) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // union of denominator exponents over all atoms
        let mut shared: BTreeMap<String, (MultiPoly, i64)> = BTreeMap::new();
        for (k, (p, e)) in self.factors.iter().chain(other.factors.iter()) {
            let entry = shared
                .entry(k.clone())
                .or_insert_with(|| (p.clone(), 0));
            entry.1 = entry.1.min(*e);
        }
        // keep only negatives (the common denominator)
        shared.retain(|_, (_, e)| *e < 0);

        let residual = |side: &Self| -> Vec<(MultiPoly, u32)> {
            let mut out = Vec::new();
            for (k, (p, e)) in &side.factors {
                let base = shared.get(k).map(|(_, u)| *u).unwrap_or(0);
                let up = e - base;
                debug_assert!(up >= 0);
                if up > 0 {
                    out.push((p.clone(), up as u32));
                }
            }
            // shared denominator atoms missing from this side still scale
            // its numerator
            for (k, (p, base)) in &shared {
                if !side.factors.contains_key(k) {
                    out.push((p.clone(), (-base) as u32));
                }
            }
            out
        };
        let pa = expand_product(&self.vars, &residual(self));
        let pb = expand_product(&self.vars, &residual(other));
        // clear the rational scalars over a common integer denominator
        let (na, da) = (self.coef.numer(), self.coef.denom());
        let (nb, db) = (other.coef.numer(), other.coef.denom());
        let sa = pa.mul_bigint(&(na * db));
        let sb = pb.mul_bigint(&(nb * da));
        let sum = &sa + &sb;
        if sum.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = FactoredRational {
            vars: Arc::clone(&self.vars),
            coef: BigRational::new(BigInt::one(), da * db),
            factors: shared,
        };
        let mut all_hints: Vec<MultiPoly> = hints.to_vec();
        for (p, _) in self.factors.values().chain(other.factors.values()) {
            all_hints.push(p.clone());
        }
        out.absorb(&sum, 1, &all_hints);
        out
    }

    pub fn sub(&self, other: &Self, hints: &[MultiPoly]) -> Self {
        self.add(&other.neg(), hints)
    }

    /// Expand to an integer-coefficient numerator/denominator pair.
    pub fn expand_num_den(&self) -> (MultiPoly, MultiPoly) {
        let mut num_f: Vec<(MultiPoly, u32)> = Vec::new();
        let mut den_f: Vec<(MultiPoly, u32)> = Vec::new();
        for (p, e) in self.factors() {
            if e > 0 {
                num_f.push((p.clone(), e as u32));
            } else {
                den_f.push((p.clone(), (-e) as u32));
            }
        }
        let num = expand_product(&self.vars, &num_f).mul_bigint(self.coef.numer());
        let den = expand_product(&self.vars, &den_f).mul_bigint(self.coef.denom());
        (num, den)
    }

    /// Expand and reduce; the reduction re-verifies co-primeness of the
    /// expanded sides, so the factored bookkeeping is not trusted.
    pub fn to_rational(&self) -> Result<RationalFunction, PolyError> {
        let (num, den) = self.expand_num_den();
        RationalFunction::reduce(num, den)
    }
}

fn pow_rational(c: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        c.pow(e as i32)
    } else {
        c.recip().pow((-e) as i32)
    }
}

/// Expand a product of powers, smallest factors first.
fn expand_product(vars: &Arc<VarTable>, items: &[(MultiPoly, u32)]) -> MultiPoly {
    let mut parts: Vec<MultiPoly> = items
        .iter()
        .map(|(p, e)| p.pow(*e))
        .collect();
    parts.sort_by_key(|p| p.terms().len());
    let mut acc = MultiPoly::one(vars);
    for p in parts {
        acc = &acc * &p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_rational};

    #[test]
    fn add_cancels_against_known_atoms() {
        let vt = VarTable::new(&["x", "y"]);
        // 1/(x+y) + 1 = (1+x+y)/(x+y)
        let a = FactoredRational::from_rf(&parse_rational("1/(x+y)", &vt).unwrap(), &[]);
        let b = FactoredRational::one(&vt);
        let s = a.add(&b, &[]);
        let rf = s.to_rational().unwrap();
        assert_eq!(rf, parse_rational("(1+x+y)/(x+y)", &vt).unwrap());
    }

    #[test]
    fn sum_collapsing_to_an_atom_power() {
        let vt = VarTable::new(&["x"]);
        // (x^2 + 2x + 1)/(x+1) collapses to x+1
        let xp1 = parse_poly("x+1", &vt).unwrap();
        let a = FactoredRational::from_poly(&parse_poly("x^2+2*x", &vt).unwrap(), &[xp1.clone()]);
        let one = FactoredRational::one(&vt);
        let num = a.add(&one, &[xp1.clone()]);
        let den = FactoredRational::from_poly(&xp1, &[]);
        let q = num.div(&den).unwrap();
        assert_eq!(
            q.to_rational().unwrap(),
            parse_rational("x+1", &vt).unwrap()
        );
        // and the factored form itself knows the cancellation
        assert_eq!(q.factors().count(), 1);
    }

    #[test]
    fn scalars_and_signs() {
        let vt = VarTable::new(&["x"]);
        let f = parse_poly("-6*x^2-6*x", &vt).unwrap();
        let fr = FactoredRational::from_poly(&f, &[]);
        let rf = fr.to_rational().unwrap();
        assert_eq!(rf, parse_rational("-6*x^2-6*x", &vt).unwrap());
        let back = fr.inv().unwrap().to_rational().unwrap();
        assert_eq!(back, parse_rational("1/(-6*x^2-6*x)", &vt).unwrap());
    }

    #[test]
    fn zero_handling() {
        let vt = VarTable::new(&["x"]);
        let a = FactoredRational::var(&vt, 0);
        let z = a.sub(&a, &[]);
        assert!(z.is_zero());
        assert!(z.inv().is_err());
        assert!(z.to_rational().unwrap().is_zero());
    }
}
