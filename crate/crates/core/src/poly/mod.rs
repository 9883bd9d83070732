//! Sparse multivariate polynomial arithmetic over arbitrary-precision
//! integers.
//!
//! Polynomials are stored as term lists `(Monomial, BigInt)` sorted in
//! descending graded-lexicographic order with no zero coefficients, so equal
//! values have bit-identical representations and the text form is stable
//! across runs. Variables live in an append-only [`VarTable`] shared via
//! `Arc`; all operands of an arithmetic operation must use the same table.

mod gcd;
mod modp;

pub use gcd::{content_in_var, gcd};
pub use modp::{PrimePoly, PRIME_POOL};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

/// Errors raised by the polynomial kernel. `NonDivisible`, `DegreeDrop` and
/// `RetryPrime` are branch points for callers; the rest are usage errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operands use different variable tables")]
    VarTableMismatch,
    #[error("operation requires a nonzero polynomial")]
    ZeroInput,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("not exactly divisible")]
    NonDivisible,
    #[error("variable `{0}` has no assigned value")]
    Unassigned(String),
    #[error("specialization dropped the degree in the kept variable")]
    DegreeDrop,
    #[error("prime {0} divides the leading coefficient")]
    RetryPrime(u64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

/// Ordered, append-only registry of variable names. Indices of existing
/// variables never change; extension produces a new table sharing the prefix.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let prev = index.insert(n.clone(), i);
            assert!(prev.is_none(), "duplicate variable name `{n}`");
        }
        Arc::new(VarTable { names, index })
    }

    /// New table with `extra` appended after the existing variables.
    pub fn extended<S: AsRef<str>>(self: &Arc<Self>, extra: &[S]) -> Arc<Self> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        VarTable::new(&names)
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// Exponent vector, one entry per variable of the owning table.
/// Ordered by graded lex: total degree first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut e = vec![0; arity];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise quotient, or `None` when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with `BigInt` coefficients.
///
/// Invariants: terms are sorted in strictly descending graded-lex order, no
/// stored coefficient is zero, and every monomial has length equal to the
/// table arity. The zero polynomial is the empty term list.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    vars: Arc<VarTable>,
    terms: Vec<(Monomial, BigInt)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        MultiPoly {
            vars: Arc::clone(vars),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(vars);
        }
        MultiPoly {
            vars: Arc::clone(vars),
            terms: vec![(Monomial::unit(vars.arity()), c)],
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, 1)
    }

    pub fn var(vars: &Arc<VarTable>, idx: usize) -> Self {
        assert!(idx < vars.arity(), "variable index out of range");
        MultiPoly {
            vars: Arc::clone(vars),
            terms: vec![(Monomial::var(vars.arity(), idx), BigInt::one())],
        }
    }

    pub fn var_named(vars: &Arc<VarTable>, name: &str) -> Result<Self, PolyError> {
        let idx = vars
            .position(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, idx))
    }

    pub fn monomial(vars: &Arc<VarTable>, mono: Monomial, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        assert_eq!(mono.0.len(), vars.arity());
        if c.is_zero() {
            return Self::zero(vars);
        }
        MultiPoly {
            vars: Arc::clone(vars),
            terms: vec![(mono, c)],
        }
    }

    /// Canonicalize an arbitrary term list: merge duplicates, drop zeros,
    /// sort descending.
    pub fn from_terms(vars: &Arc<VarTable>, terms: Vec<(Monomial, BigInt)>) -> Self {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.arity());
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        MultiPoly {
            vars: Arc::clone(vars),
            terms: map.into_iter().rev().collect(),
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_unit() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_unit())
    }

    /// Single term with coefficient ±1 and possibly trivial monomial.
    pub fn is_signed_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.abs().is_one()
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn occurs(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Indices of variables that appear with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.arity()).filter(|&v| self.occurs(v)).collect()
    }

    /// For each variable, the minimum exponent over all terms. This is the
    /// maximal monomial dividing the polynomial.
    pub fn min_exponents(&self) -> Monomial {
        let arity = self.vars.arity();
        if self.terms.is_empty() {
            return Monomial::unit(arity);
        }
        let mut mins = self.terms[0].0 .0.clone();
        for (m, _) in &self.terms[1..] {
            for (acc, e) in mins.iter_mut().zip(&m.0) {
                if *e < *acc {
                    *acc = *e;
                }
            }
        }
        Monomial(mins)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !same_table(&self.vars, &other.vars) {
            return Err(PolyError::VarTableMismatch);
        }
        // merge two descending-sorted term lists
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: out,
        })
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !same_table(&self.vars, &other.vars) {
            return Err(PolyError::VarTableMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        Ok(MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: map.into_iter().rev().collect(),
        })
    }

    pub fn mul_bigint(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MultiPoly {
        MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division: returns `q` with `self = q * g`, or
    /// [`PolyError::NonDivisible`]. Divisor must be nonzero.
    pub fn exact_div(&self, g: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !same_table(&self.vars, &g.vars) {
            return Err(PolyError::VarTableMismatch);
        }
        if g.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let (gm, gc) = &g.terms[0];
        let mut rem: BTreeMap<Monomial, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let mut quo: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((rm, rc)) = rem.last_key_value() {
            let m = rm.try_div(gm).ok_or(PolyError::NonDivisible)?;
            let (q, r) = rc.div_rem(gc);
            if !r.is_zero() {
                return Err(PolyError::NonDivisible);
            }
            for (tm, tc) in &g.terms {
                let key = m.mul(tm);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-(&q * tc));
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &q * tc;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quo.push((m, q));
        }
        // leading monomials strictly decrease, so quo is already descending
        Ok(MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: quo,
        })
    }

    pub fn divides(&self, other: &MultiPoly) -> bool {
        other.exact_div(self).is_ok()
    }

    /// Positive gcd of all integer coefficients. Zero input is a usage error.
    pub fn content(&self) -> Result<BigInt, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let mut acc = BigInt::zero();
        for (_, c) in &self.terms {
            acc = acc.gcd(c);
            if acc.is_one() {
                break;
            }
        }
        Ok(acc)
    }

    /// `self = content() * primitive_part()`; the primitive part keeps the
    /// sign of the input.
    pub fn primitive_part(&self) -> Result<MultiPoly, PolyError> {
        let c = self.content()?;
        if c.is_one() {
            return Ok(self.clone());
        }
        Ok(MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k / &c))
                .collect(),
        })
    }

    /// Flip the sign if the leading coefficient is negative.
    pub fn normalize_sign(&self) -> MultiPoly {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact rational value at the given assignment. Every variable that
    /// occurs in the polynomial must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<usize, BigRational>) -> Result<BigRational, PolyError> {
        for v in self.support() {
            if !point.contains_key(&v) {
                return Err(PolyError::Unassigned(self.vars.name(v).to_string()));
            }
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[&v].pow(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn evaluate_named(
        &self,
        point: &BTreeMap<String, BigRational>,
    ) -> Result<BigRational, PolyError> {
        let mut by_idx = BTreeMap::new();
        for (name, v) in point {
            let idx = self
                .vars
                .position(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            by_idx.insert(idx, v.clone());
        }
        self.evaluate(&by_idx)
    }

    /// Integer evaluation of all variables except `keep`; values are read
    /// from `point` by variable index. Returns dense coefficients of the
    /// univariate image, ascending in the kept variable, or `DegreeDrop`
    /// when the leading coefficient vanishes.
    pub fn specialize_int(&self, keep: usize, point: &[BigInt]) -> Result<Vec<BigInt>, PolyError> {
        assert_eq!(point.len(), self.vars.arity());
        let deg = self.degree_in(keep) as usize;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if v != keep && e > 0 {
                    t *= point[v].pow(e);
                }
            }
            coeffs[m.0[keep] as usize] += t;
        }
        if coeffs[deg].is_zero() {
            return Err(PolyError::DegreeDrop);
        }
        Ok(coeffs)
    }

    /// Mod-p variant of [`Self::specialize_int`].
    pub fn specialize_mod_p(
        &self,
        keep: usize,
        point: &[BigInt],
        p: u64,
    ) -> Result<PrimePoly, PolyError> {
        let coeffs = self.specialize_int(keep, point)?;
        PrimePoly::from_bigints(p, &coeffs)
    }

    /// Coefficients of `self` viewed as univariate in `var`, ascending by
    /// power; each coefficient lives in the same table with `var` zeroed.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut stripped = m.clone();
            stripped.0[var] = 0;
            out[e].push((stripped, c.clone()));
        }
        out.into_iter()
            .map(|terms| MultiPoly::from_terms(&self.vars, terms))
            .collect()
    }

    /// Inverse of [`Self::coeffs_in`].
    pub fn from_coeffs_in(
        vars: &Arc<VarTable>,
        var: usize,
        coeffs: &[MultiPoly],
    ) -> MultiPoly {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                let mut m = m.clone();
                m.0[var] += e as u32;
                terms.push((m, k.clone()));
            }
        }
        MultiPoly::from_terms(vars, terms)
    }

    /// Re-express over a larger table produced by [`VarTable::extended`]
    /// (or any table containing all variables of `self` by name).
    pub fn lift(&self, target: &Arc<VarTable>) -> Result<MultiPoly, PolyError> {
        if same_table(&self.vars, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.arity());
        for name in self.vars.names() {
            map.push(
                target
                    .position(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?,
            );
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.arity()];
                for (v, &k) in m.0.iter().enumerate() {
                    e[map[v]] = k;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Substitute each variable by a polynomial image (same target table for
    /// all images).
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.arity());
        let target = images
            .first()
            .map(|p| Arc::clone(p.vars()))
            .expect("compose needs at least one image");
        let mut acc = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[v].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl std::ops::$trait for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$delegate(rhs).expect("variable table mismatch")
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Canonical text form: terms in descending graded-lex order, each written
/// `coef*var1^e1*var2^e2` with unit coefficients and exponents elided,
/// joined by `+`/`-`. Stable across runs; used in golden files.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if m.is_unit() {
                write!(f, "{mag}")?;
                continue;
            }
            let mut started = false;
            if !mag.is_one() {
                write!(f, "{mag}")?;
                started = true;
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if started {
                    write!(f, "*")?;
                }
                started = true;
                if e == 1 {
                    write!(f, "{}", self.vars.name(v))?;
                } else {
                    write!(f, "{}^{}", self.vars.name(v), e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn table() -> Arc<VarTable> {
        VarTable::new(&["t", "u"])
    }

    #[test]
    fn add_cancellation_and_identity() {
        let vt = table();
        let t = MultiPoly::var(&vt, 0);
        let one = MultiPoly::one(&vt);
        let f = &t + &one; // t + 1
        let g = MultiPoly::constant(&vt, -1);
        assert_eq!(&f + &g, t);
        let zero = MultiPoly::zero(&vt);
        assert_eq!(&f + &zero, f);
    }

    #[test]
    fn mul_square_and_identity() {
        let vt = table();
        let f = parse_poly("1+t", &vt).unwrap();
        let sq = &f * &f;
        assert_eq!(sq, parse_poly("1+2*t+t^2", &vt).unwrap());
        assert_eq!(sq.to_string(), "t^2+2*t+1");
        let one = MultiPoly::one(&vt);
        assert_eq!(&sq * &one, sq);
    }

    #[test]
    fn var_table_mismatch_is_a_usage_error() {
        let a = MultiPoly::var(&table(), 0);
        let b = MultiPoly::var(&VarTable::new(&["x"]), 0);
        assert_eq!(a.try_add(&b), Err(PolyError::VarTableMismatch));
    }

    #[test]
    fn exact_div_square() {
        let vt = table();
        let f = parse_poly("1+2*t+t^2", &vt).unwrap();
        let g = parse_poly("1+t", &vt).unwrap();
        assert_eq!(f.exact_div(&g).unwrap(), g);
        let t = MultiPoly::var(&vt, 0);
        assert_eq!(t.exact_div(&g), Err(PolyError::NonDivisible));
    }

    #[test]
    fn content_and_primitive_part() {
        let vt = table();
        let f = parse_poly("2+4*t", &vt).unwrap();
        assert_eq!(f.content().unwrap(), BigInt::from(2));
        assert_eq!(f.primitive_part().unwrap(), parse_poly("1+2*t", &vt).unwrap());
        let zero = MultiPoly::zero(&vt);
        assert_eq!(zero.content(), Err(PolyError::ZeroInput));
        // reconstruction
        let c = f.content().unwrap();
        assert_eq!(f.primitive_part().unwrap().mul_bigint(&c), f);
    }

    #[test]
    fn evaluate_constant_term_at_zero() {
        let vt = table();
        let f = parse_poly("3+t*u+t^2", &vt).unwrap();
        let mut point = BTreeMap::new();
        point.insert(0, BigRational::zero());
        point.insert(1, BigRational::zero());
        assert_eq!(f.evaluate(&point).unwrap(), BigRational::from(BigInt::from(3)));
        let partial: BTreeMap<usize, BigRational> = BTreeMap::new();
        assert!(matches!(f.evaluate(&partial), Err(PolyError::Unassigned(_))));
    }

    #[test]
    fn specialize_keeps_degree() {
        let vt = VarTable::new(&["x", "y"]);
        // (x+y)(y+1) at y=2 -> 3x+6
        let f = parse_poly("(x+y)*(y+1)", &vt).unwrap();
        let point = vec![BigInt::zero(), BigInt::from(2)];
        let coeffs = f.specialize_int(0, &point).unwrap();
        assert_eq!(coeffs, vec![BigInt::from(6), BigInt::from(3)]);

        let vt2 = VarTable::new(&["a", "b", "c", "d"]);
        // bd+c^2 at c=d=1, keep b -> b+1
        let f2 = parse_poly("b*d+c^2", &vt2).unwrap();
        let point2 = vec![BigInt::zero(), BigInt::zero(), BigInt::one(), BigInt::one()];
        assert_eq!(
            f2.specialize_int(1, &point2).unwrap(),
            vec![BigInt::one(), BigInt::one()]
        );
    }

    #[test]
    fn display_is_canonical() {
        let vt = table();
        let f = parse_poly("u*t - 2*t^2 + 1", &vt).unwrap();
        assert_eq!(f.to_string(), "-2*t^2+t*u+1");
        assert_eq!(MultiPoly::zero(&vt).to_string(), "0");
    }

    #[test]
    fn lift_preserves_value() {
        let vt = table();
        let f = parse_poly("1+t*u", &vt).unwrap();
        let big = vt.extended(&["w"]);
        let g = f.lift(&big).unwrap();
        assert_eq!(g.to_string(), "t*u+1");
        assert_eq!(g.vars().arity(), 3);
    }
}
