//! Laurent normalization, reduced rational functions and the notion of
//! "unit" for each localized ring in play.
//!
//! A [`UnitSpec`] declares which factors count as invertible: monomials in a
//! set of variables, any factor involving only the coefficient variables
//! (the symbolic delta), an explicit list of extra unit polynomials (the
//! cleared gamma parameters), and optionally all nonzero integers (field
//! coefficients). Everything else is a genuine factor.

use crate::poly::{gcd, same_table, Monomial, MultiPoly, PolyError, VarTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("denominator is not a unit of the specified ring")]
    NotLaurent,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Reduced quotient of two polynomials: `gcd(num, den) = 1`, `den` nonzero
/// with positive leading coefficient. All arithmetic preserves reducedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Reduce `num/den`: remove the gcd and normalize the denominator sign.
    pub fn reduce(num: MultiPoly, den: MultiPoly) -> Result<Self, PolyError> {
        if !same_table(num.vars(), den.vars()) {
            return Err(PolyError::VarTableMismatch);
        }
        if den.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: MultiPoly::one(den.vars()),
            });
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides"),
                    den.exact_div(&g).expect("gcd divides"),
                )
            }
        };
        if den.leading_coeff().is_negative() {
            Ok(RationalFunction {
                num: num.neg(),
                den: den.neg(),
            })
        } else {
            Ok(RationalFunction { num, den })
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.vars());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(vars: &Arc<VarTable>, c: impl Into<BigInt>) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn from_rational(vars: &Arc<VarTable>, c: &BigRational) -> Self {
        RationalFunction {
            num: MultiPoly::constant(vars, c.numer().clone()),
            den: MultiPoly::constant(vars, c.denom().clone()),
        }
    }

    pub fn var(vars: &Arc<VarTable>, idx: usize) -> Self {
        Self::from_poly(MultiPoly::var(vars, idx))
    }

    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Henrici's addition: with reduced inputs only `gcd(den, den')` and one
    /// follow-up gcd are needed, and the result is reduced by construction.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.num, &self.den);
        let (c, d) = (&other.num, &other.den);
        if b.is_one() && d.is_one() {
            return RationalFunction {
                num: a + c,
                den: b.clone(),
            };
        }
        let g0 = if b.is_one() || d.is_one() {
            MultiPoly::one(a.vars())
        } else {
            gcd(b, d)
        };
        if g0.is_one() {
            let num = &(a * d) + &(c * b);
            if num.is_zero() {
                return Self::zero(a.vars());
            }
            return RationalFunction { num, den: b * d };
        }
        let bp = b.exact_div(&g0).expect("gcd divides");
        let dp = d.exact_div(&g0).expect("gcd divides");
        let t = &(a * &dp) + &(c * &bp);
        if t.is_zero() {
            return Self::zero(a.vars());
        }
        let h = gcd(&t, &g0);
        if h.is_one() {
            RationalFunction {
                num: t,
                den: &bp * d,
            }
        } else {
            RationalFunction {
                num: t.exact_div(&h).expect("gcd divides"),
                den: &bp * &d.exact_div(&h).expect("gcd divides"),
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Henrici's multiplication via the two cross gcds.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.num.vars());
        }
        let (a, b) = (&self.num, &self.den);
        let (c, d) = (&other.num, &other.den);
        let g1 = if a.is_one() || d.is_one() {
            MultiPoly::one(a.vars())
        } else {
            gcd(a, d)
        };
        let g2 = if c.is_one() || b.is_one() {
            MultiPoly::one(a.vars())
        } else {
            gcd(c, b)
        };
        let an = if g1.is_one() {
            a.clone()
        } else {
            a.exact_div(&g1).expect("gcd divides")
        };
        let dn = if g1.is_one() {
            d.clone()
        } else {
            d.exact_div(&g1).expect("gcd divides")
        };
        let cn = if g2.is_one() {
            c.clone()
        } else {
            c.exact_div(&g2).expect("gcd divides")
        };
        let bn = if g2.is_one() {
            b.clone()
        } else {
            b.exact_div(&g2).expect("gcd divides")
        };
        let num = &an * &cn;
        let den = &bn * &dn;
        if den.leading_coeff().is_negative() {
            RationalFunction {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            RationalFunction { num, den }
        }
    }

    /// Reciprocal; the zero function has none.
    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RationalFunction { num, den })
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        if e < 0 {
            return Ok(self.inv()?.pow(-e)?);
        }
        let mut acc = Self::one(self.num.vars());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Exact value at a rational point; `None` when the denominator
    /// vanishes there.
    pub fn evaluate(
        &self,
        point: &BTreeMap<usize, BigRational>,
    ) -> Result<Option<BigRational>, PolyError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.num.evaluate(point)? / d))
    }

    /// Substitute every variable by a rational-function image (all images
    /// over one shared table).
    pub fn compose(&self, images: &[RationalFunction]) -> Result<Self, PolyError> {
        let num = compose_poly(&self.num, images);
        let den = compose_poly(&self.den, images);
        if den.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        num.div(&den)
    }

    pub fn lift(&self, target: &Arc<VarTable>) -> Result<Self, PolyError> {
        Ok(RationalFunction {
            num: self.num.lift(target)?,
            den: self.den.lift(target)?,
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }
}

/// Substitute rational functions for the variables of a polynomial.
pub fn compose_poly(p: &MultiPoly, images: &[RationalFunction]) -> RationalFunction {
    assert_eq!(images.len(), p.vars().arity());
    let target = images
        .first()
        .map(|f| Arc::clone(f.vars()))
        .expect("at least one image required");
    let mut acc = RationalFunction::zero(&target);
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(&target, c.clone());
        for (v, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(&images[v].pow(e as i64).expect("positive power"));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Signed Laurent monomial, used for monomial changes of variables.
#[derive(Debug, Clone)]
pub struct LaurentMonomial {
    pub coeff: BigInt,
    pub exps: Vec<i64>,
}

impl LaurentMonomial {
    pub fn var(target: &Arc<VarTable>, idx: usize) -> Self {
        let mut exps = vec![0i64; target.arity()];
        exps[idx] = 1;
        LaurentMonomial {
            coeff: BigInt::one(),
            exps,
        }
    }
}

/// Fast substitution when every variable maps to a signed Laurent monomial.
pub fn substitute_monomials(
    f: &MultiPoly,
    images: &[LaurentMonomial],
    target: &Arc<VarTable>,
) -> Result<RationalFunction, PolyError> {
    assert_eq!(images.len(), f.vars().arity());
    let arity = target.arity();
    let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::with_capacity(f.terms().len());
    for (m, c) in f.terms() {
        let mut exps = vec![0i64; arity];
        let mut coeff = c.clone();
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let img = &images[v];
            if !img.coeff.is_one() {
                coeff *= img.coeff.pow(e);
            }
            for (t, &ie) in exps.iter_mut().zip(&img.exps) {
                *t += ie * e as i64;
            }
        }
        terms.push((exps, coeff));
    }
    // clear negative exponents with a monomial denominator
    let mut shift = vec![0i64; arity];
    for (exps, _) in &terms {
        for (s, &e) in shift.iter_mut().zip(exps) {
            if e < *s {
                *s = e;
            }
        }
    }
    let num_terms = terms
        .into_iter()
        .map(|(exps, c)| {
            let m = Monomial(
                exps.iter()
                    .zip(&shift)
                    .map(|(&e, &s)| u32::try_from(e - s).expect("cleared exponent"))
                    .collect(),
            );
            (m, c)
        })
        .collect();
    let num = MultiPoly::from_terms(target, num_terms);
    let den = MultiPoly::monomial(
        target,
        Monomial(shift.iter().map(|&s| u32::try_from(-s).unwrap()).collect()),
        1,
    );
    RationalFunction::reduce(num, den)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Unit monomial times a sign times a monomial-free core with positive
/// leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub sign: i8,
    pub unit_exps: Vec<i64>,
    pub core: MultiPoly,
}

impl LaurentPoly {
    /// Factor out the maximal monomial and the sign of a nonzero polynomial.
    pub fn normalize(f: &MultiPoly) -> Result<Self, PolyError> {
        if f.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let mins = f.min_exponents();
        let core = if mins.is_unit() {
            f.clone()
        } else {
            let m = MultiPoly::monomial(f.vars(), mins.clone(), 1);
            f.exact_div(&m).expect("min exponents divide")
        };
        let sign = if core.leading_coeff().is_negative() { -1 } else { 1 };
        Ok(LaurentPoly {
            sign,
            unit_exps: mins.0.iter().map(|&e| e as i64).collect(),
            core: if sign < 0 { core.neg() } else { core },
        })
    }

    /// The represented value as a rational function.
    pub fn to_rational(&self) -> RationalFunction {
        let vars = self.core.vars();
        let pos = Monomial(
            self.unit_exps
                .iter()
                .map(|&e| if e > 0 { e as u32 } else { 0 })
                .collect(),
        );
        let neg = Monomial(
            self.unit_exps
                .iter()
                .map(|&e| if e < 0 { (-e) as u32 } else { 0 })
                .collect(),
        );
        let mut num = self.core.mul_monomial(&pos);
        if self.sign < 0 {
            num = num.neg();
        }
        let den = MultiPoly::monomial(vars, neg, 1);
        RationalFunction::reduce(num, den).expect("monomial denominator")
    }
}

/// Extra-unit exponents and coefficient-only cofactors accompanying a
/// Laurent normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCofactor {
    pub extra_exps: Vec<i64>,
    pub coeff_num: MultiPoly,
    pub coeff_den: MultiPoly,
}

/// Declaration of what counts as a unit in a localized Laurent ring.
#[derive(Debug, Clone)]
pub struct UnitSpec {
    pub name: String,
    monomial_vars: BTreeSet<usize>,
    coefficient_vars: BTreeSet<usize>,
    extra_units: Vec<MultiPoly>,
    scalars_invertible: bool,
}

impl UnitSpec {
    /// Plain Laurent-ring units: signed monomials in the given variables,
    /// integer coefficients (so constants other than ±1 are not units).
    pub fn monomial_ring(name: &str, monomial_vars: impl IntoIterator<Item = usize>) -> Self {
        UnitSpec {
            name: name.to_string(),
            monomial_vars: monomial_vars.into_iter().collect(),
            coefficient_vars: BTreeSet::new(),
            extra_units: Vec::new(),
            scalars_invertible: false,
        }
    }

    /// Localized ring over field coefficients: monomials in `monomial_vars`,
    /// arbitrary factors in `coefficient_vars`, the listed extra units, and
    /// all nonzero scalars are invertible.
    pub fn localized(
        name: &str,
        monomial_vars: impl IntoIterator<Item = usize>,
        coefficient_vars: impl IntoIterator<Item = usize>,
        extra_units: Vec<MultiPoly>,
    ) -> Self {
        UnitSpec {
            name: name.to_string(),
            monomial_vars: monomial_vars.into_iter().collect(),
            coefficient_vars: coefficient_vars.into_iter().collect(),
            extra_units,
            scalars_invertible: true,
        }
    }

    pub fn extra_units(&self) -> &[MultiPoly] {
        &self.extra_units
    }

    /// Divide out every unit factor: the maximal monomial in unit variables,
    /// coefficient-only content, and powers of the extra units. The result
    /// is 1 exactly when the input is a unit.
    pub fn unit_free_part(&self, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if f.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let vars = f.vars();
        let mut g = f.clone();
        loop {
            let mut changed = false;
            // monomial part over unit variables
            let mins = g.min_exponents();
            let strip = Monomial(
                mins.0
                    .iter()
                    .enumerate()
                    .map(|(v, &e)| {
                        if self.monomial_vars.contains(&v) || self.coefficient_vars.contains(&v) {
                            e
                        } else {
                            0
                        }
                    })
                    .collect(),
            );
            if !strip.is_unit() {
                let m = MultiPoly::monomial(vars, strip, 1);
                g = g.exact_div(&m).expect("min exponents divide");
                changed = true;
            }
            // coefficient-only content
            if self.scalars_invertible {
                let c = g.content()?;
                if !c.is_one() {
                    g = g.primitive_part()?;
                    changed = true;
                }
            }
            if !self.coefficient_vars.is_empty() {
                let mut c = self.coefficient_content(&g);
                if !self.scalars_invertible {
                    c = c.primitive_part()?;
                }
                if !c.is_one() && !c.is_constant() {
                    g = g.exact_div(&c).expect("content divides");
                    changed = true;
                }
            }
            // extra units by index
            for u in &self.extra_units {
                while let Ok(q) = g.exact_div(u) {
                    g = q;
                    changed = true;
                    if g.is_constant() {
                        break;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(g.normalize_sign())
    }

    /// Gcd of the coefficient polynomials when `f` is grouped by monomials
    /// in the non-coefficient variables.
    fn coefficient_content(&self, f: &MultiPoly) -> MultiPoly {
        let vars = f.vars();
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in f.terms() {
            let mut outer = m.clone();
            let mut inner = Monomial::unit(vars.arity());
            for (v, e) in outer.0.iter_mut().enumerate() {
                if self.coefficient_vars.contains(&v) {
                    inner.0[v] = *e;
                    *e = 0;
                }
            }
            groups.entry(outer).or_default().push((inner, c.clone()));
        }
        let mut acc: Option<MultiPoly> = None;
        for terms in groups.into_values() {
            let part = MultiPoly::from_terms(vars, terms);
            acc = Some(match acc {
                None => part.normalize_sign(),
                Some(prev) => gcd(&prev, &part),
            });
            if acc.as_ref().map(|a| a.is_one()).unwrap_or(false) {
                break;
            }
        }
        acc.expect("nonzero polynomial")
    }

    /// True iff `f` factors entirely into declared units.
    pub fn is_unit(&self, f: &MultiPoly) -> Result<bool, PolyError> {
        Ok(self.unit_free_part(f)?.is_one())
    }

    /// The Laurent property: the denominator of the reduced form is a unit.
    pub fn is_laurent(&self, f: &RationalFunction) -> bool {
        self.is_unit(f.den()).unwrap_or(false)
    }

    /// Exact Laurent form with declared units tracked separately; the gamma
    /// exponents are recorded, not expanded.
    pub fn to_laurent(
        &self,
        f: &RationalFunction,
    ) -> Result<(LaurentPoly, UnitCofactor), LaurentError> {
        if f.is_zero() {
            return Err(LaurentError::Poly(PolyError::ZeroInput));
        }
        let vars = f.vars();
        let mut unit_exps = vec![0i64; vars.arity()];
        let mut extra_exps = vec![0i64; self.extra_units.len()];

        // denominator: must decompose entirely into units
        let mut den = f.den().clone();
        let dmins = den.min_exponents();
        if !dmins.is_unit() {
            let m = MultiPoly::monomial(vars, dmins.clone(), 1);
            den = den.exact_div(&m).expect("min exponents divide");
            for (v, &e) in dmins.0.iter().enumerate() {
                unit_exps[v] -= e as i64;
            }
        }
        for (j, u) in self.extra_units.iter().enumerate() {
            while let Ok(q) = den.exact_div(u) {
                den = q;
                extra_exps[j] -= 1;
            }
        }
        let den_ok = den.support().iter().all(|v| self.coefficient_vars.contains(v))
            && dmins
                .0
                .iter()
                .enumerate()
                .all(|(v, &e)| {
                    e == 0
                        || self.monomial_vars.contains(&v)
                        || self.coefficient_vars.contains(&v)
                });
        if !den_ok || (!self.scalars_invertible && !den.is_one()) {
            return Err(LaurentError::NotLaurent);
        }
        let coeff_den = den;

        // numerator: monomial out, then extra units, then coefficient content
        let mut num = f.num().clone();
        let nmins = num.min_exponents();
        if !nmins.is_unit() {
            let m = MultiPoly::monomial(vars, nmins.clone(), 1);
            num = num.exact_div(&m).expect("min exponents divide");
            for (v, &e) in nmins.0.iter().enumerate() {
                unit_exps[v] += e as i64;
            }
        }
        for (j, u) in self.extra_units.iter().enumerate() {
            while let Ok(q) = num.exact_div(u) {
                num = q;
                extra_exps[j] += 1;
            }
        }
        let coeff_num = if !self.coefficient_vars.is_empty() && self.scalars_invertible {
            let c = self.coefficient_content(&num);
            if !c.is_one() {
                num = num.exact_div(&c).expect("content divides");
            }
            c
        } else {
            MultiPoly::one(vars)
        };
        let sign = if num.leading_coeff().is_negative() { -1 } else { 1 };
        if sign < 0 {
            num = num.neg();
        }
        Ok((
            LaurentPoly {
                sign,
                unit_exps,
                core: num,
            },
            UnitCofactor {
                extra_exps,
                coeff_num,
                coeff_den,
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_rational};

    #[test]
    fn reduce_removes_common_factor() {
        let vt = VarTable::new(&["t"]);
        let num = parse_poly("t^2-1", &vt).unwrap();
        let den = parse_poly("t-1", &vt).unwrap();
        let f = RationalFunction::reduce(num, den).unwrap();
        assert_eq!(f, parse_rational("t+1", &vt).unwrap());
        // f/1 stays f
        let g = parse_rational("(t^2+3)/(2*t)", &vt).unwrap();
        assert_eq!(g.div(&RationalFunction::one(&vt)).unwrap(), g);
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let vt = VarTable::new(&["t"]);
        let num = parse_poly("t", &vt).unwrap();
        let den = MultiPoly::zero(&vt);
        assert_eq!(
            RationalFunction::reduce(num, den),
            Err(PolyError::ZeroDivisor)
        );
    }

    #[test]
    fn normalize_examples() {
        let vt = VarTable::new(&["t", "u"]);
        // t^2 u -> unit t^2 u, core 1
        let f = parse_poly("t^2*u", &vt).unwrap();
        let lp = LaurentPoly::normalize(&f).unwrap();
        assert_eq!(lp.unit_exps, vec![2, 1]);
        assert!(lp.core.is_one());
        assert_eq!(lp.sign, 1);
        // t^3 u + t^2 u^2 -> unit t^2 u, core t+u
        let g = parse_poly("t^3*u+t^2*u^2", &vt).unwrap();
        let lp = LaurentPoly::normalize(&g).unwrap();
        assert_eq!(lp.unit_exps, vec![2, 1]);
        assert_eq!(lp.core, parse_poly("t+u", &vt).unwrap());
        // round trip
        assert_eq!(lp.to_rational(), RationalFunction::from_poly(g));
    }

    #[test]
    fn unit_tests_for_monomial_ring() {
        let vt = VarTable::new(&["t", "u"]);
        let spec = UnitSpec::monomial_ring("tu", [0, 1]);
        let m = parse_poly("-t^2*u", &vt).unwrap();
        assert!(spec.is_unit(&m).unwrap());
        let f = parse_poly("1+t", &vt).unwrap();
        assert!(!spec.is_unit(&f).unwrap());
        // integer scalars are not invertible here
        let two_t = parse_poly("2*t", &vt).unwrap();
        assert!(!spec.is_unit(&two_t).unwrap());
    }

    #[test]
    fn delta_factors_are_units_in_localized_spec() {
        let vt = VarTable::new(&["w", "delta"]);
        let spec = UnitSpec::localized("B", [0], [1], vec![]);
        // delta^2 (1+delta) is a unit
        let f = parse_poly("delta^2*(1+delta)", &vt).unwrap();
        assert!(spec.is_unit(&f).unwrap());
        // mixed factor is not
        let g = parse_poly("w+delta", &vt).unwrap();
        assert!(!spec.is_unit(&g).unwrap());
    }

    #[test]
    fn extra_units_strip_by_exact_division() {
        let vt = VarTable::new(&["w0", "w1", "delta"]);
        // cleared gamma_1 = delta*w0*w1 - (1+delta)
        let gamma = parse_poly("delta*w0*w1-1-delta", &vt).unwrap();
        let spec = UnitSpec::localized("B", [0, 1], [2], vec![gamma.clone()]);
        assert!(spec.is_unit(&gamma).unwrap());
        let f = &gamma * &parse_poly("w0^2*delta", &vt).unwrap();
        assert!(spec.is_unit(&f).unwrap());
        let g = &gamma * &parse_poly("w0+w1", &vt).unwrap();
        assert!(!spec.is_unit(&g).unwrap());
    }

    #[test]
    fn is_laurent_and_to_laurent() {
        let vt = VarTable::new(&["a", "b", "c", "d"]);
        let spec = UnitSpec::monomial_ring("R", 0..4);
        let y5 = parse_rational("(b*d+c^2)/a", &vt).unwrap();
        assert!(spec.is_laurent(&y5));
        let (lp, cof) = spec.to_laurent(&y5).unwrap();
        assert_eq!(lp.unit_exps, vec![-1, 0, 0, 0]);
        assert_eq!(lp.core, parse_poly("b*d+c^2", &vt).unwrap());
        assert_eq!(lp.sign, 1);
        assert!(cof.coeff_num.is_one() && cof.coeff_den.is_one());

        let vt2 = VarTable::new(&["t", "u"]);
        let spec2 = UnitSpec::monomial_ring("tu", [0, 1]);
        let x3 = parse_rational("t*u*(1+t+t^2*u)/((1+t)^2)", &vt2).unwrap();
        assert!(!spec2.is_laurent(&x3));
        assert!(matches!(spec2.to_laurent(&x3), Err(LaurentError::NotLaurent)));
        let poly = parse_rational("t^2+u", &vt2).unwrap();
        assert!(spec2.is_laurent(&poly));
    }
}
