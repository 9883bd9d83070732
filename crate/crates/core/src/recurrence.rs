//! Symbolic and numeric evolution of one-dimensional rational recurrences,
//! the three builtin maps, and the Somos-4 to QRT change of variables.

use crate::laurent::{compose_poly, substitute_monomials, LaurentMonomial, RationalFunction};
use crate::parse::{self, Expr, ParseError};
use crate::poly::{PolyError, VarTable};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvolveError {
    #[error("denominator identically zero at step {0}")]
    Singular(i64),
    #[error("division by zero in the numeric orbit at step {0}")]
    ZeroDivision(i64),
    #[error("need at least {order} terms, got {given}")]
    TooFewTerms { order: usize, given: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A recurrence `x[n+1] = update(x[n], ..., x[n-k+1])`, stored over formal
/// slot variables with slot 0 the most recent term.
#[derive(Debug, Clone)]
pub struct RecurrenceSpec {
    pub name: String,
    pub order: usize,
    /// Update over the slot table; slot `j` is the term `j` steps back.
    pub update: RationalFunction,
    pub initial_symbols: Vec<String>,
    /// Logical index of the first initial term.
    pub start_index: i64,
}

impl RecurrenceSpec {
    /// Parse a defining equation with the highest index isolated on the
    /// left, e.g. `x[n+1] = (x[n]+1)/(x[n-1]*x[n]^2)`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let (name, top, rhs) = parse::parse_equation(text)?;
        let mut min_shift = top;
        collect_shifts(&rhs, &name, top, &mut min_shift)?;
        if min_shift >= top {
            return Err(ParseError::Syntax {
                pos: 0,
                msg: "right-hand side must use lower indices than the left".into(),
            });
        }
        let order = usize::try_from(top - min_shift).unwrap();
        let slot_names: Vec<String> = (0..order).map(|j| format!("_slot{j}")).collect();
        let slots = VarTable::new(&slot_names);
        let update = lower_with_slots(&rhs, &name, top, &slots)?;
        if update.den().is_zero() {
            return Err(ParseError::ZeroDenominator);
        }
        let initial_symbols = (0..order).map(|j| format!("{name}{j}")).collect();
        Ok(RecurrenceSpec {
            name: "custom".into(),
            order,
            update,
            initial_symbols,
            start_index: 0,
        })
    }

    fn with_conventions(
        mut self,
        name: &str,
        symbols: &[&str],
        start_index: i64,
    ) -> RecurrenceSpec {
        self.name = name.into();
        self.initial_symbols = symbols.iter().map(|s| s.to_string()).collect();
        self.start_index = start_index;
        self
    }

    /// Somos-4: `y[n+2]*y[n-2] = y[n+1]*y[n-1] + y[n]^2`, initial terms
    /// y_1 = a, ..., y_4 = d.
    pub fn somos4() -> Self {
        RecurrenceSpec::parse("y[n+2] = (y[n+1]*y[n-1]+y[n]^2)/y[n-2]")
            .expect("builtin parses")
            .with_conventions("somos4", &["a", "b", "c", "d"], 1)
    }

    /// The QRT map `x[n+1] = (x[n]+1)/(x[n-1]*x[n]^2)`, x_0 = u, x_1 = t.
    pub fn qrt2() -> Self {
        RecurrenceSpec::parse("x[n+1] = (x[n]+1)/(x[n-1]*x[n]^2)")
            .expect("builtin parses")
            .with_conventions("qrt2", &["u", "t"], 0)
    }

    /// The non-integrable cousin `x[n+1] = (x[n]+1)/(x[n-1]*x[n]^3)`,
    /// x_0 = u, x_1 = t.
    pub fn nonqrt3() -> Self {
        RecurrenceSpec::parse("x[n+1] = (x[n]+1)/(x[n-1]*x[n]^3)")
            .expect("builtin parses")
            .with_conventions("nonqrt3", &["u", "t"], 0)
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "somos4" => Some(Self::somos4()),
            "qrt2" => Some(Self::qrt2()),
            "nonqrt3" => Some(Self::nonqrt3()),
            _ => None,
        }
    }
}

fn collect_shifts(e: &Expr, name: &str, top: i64, min_shift: &mut i64) -> Result<(), ParseError> {
    match e {
        Expr::Shift(n, k) => {
            if n != name {
                return Err(ParseError::UnknownSymbol(n.clone()));
            }
            if *k >= top {
                return Err(ParseError::Syntax {
                    pos: 0,
                    msg: format!("index n+{k} on the right is not below the left-hand index"),
                });
            }
            *min_shift = (*min_shift).min(*k);
            Ok(())
        }
        Expr::Sym(s) => Err(ParseError::UnknownSymbol(s.clone())),
        Expr::Int(_) => Ok(()),
        Expr::Neg(a) | Expr::Pow(a, _) => collect_shifts(a, name, top, min_shift),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            collect_shifts(a, name, top, min_shift)?;
            collect_shifts(b, name, top, min_shift)
        }
    }
}

fn lower_with_slots(
    e: &Expr,
    name: &str,
    top: i64,
    slots: &Arc<VarTable>,
) -> Result<RationalFunction, ParseError> {
    Ok(match e {
        Expr::Int(k) => RationalFunction::constant(slots, k.clone()),
        Expr::Shift(n, k) => {
            debug_assert_eq!(n, name);
            let slot = usize::try_from(top - 1 - *k).unwrap();
            RationalFunction::var(slots, slot)
        }
        Expr::Sym(s) => return Err(ParseError::UnknownSymbol(s.clone())),
        Expr::Neg(a) => lower_with_slots(a, name, top, slots)?.neg(),
        Expr::Add(a, b) => {
            lower_with_slots(a, name, top, slots)?.add(&lower_with_slots(b, name, top, slots)?)
        }
        Expr::Sub(a, b) => {
            lower_with_slots(a, name, top, slots)?.sub(&lower_with_slots(b, name, top, slots)?)
        }
        Expr::Mul(a, b) => {
            lower_with_slots(a, name, top, slots)?.mul(&lower_with_slots(b, name, top, slots)?)
        }
        Expr::Div(a, b) => {
            let d = lower_with_slots(b, name, top, slots)?;
            if d.is_zero() {
                return Err(ParseError::ZeroDenominator);
            }
            lower_with_slots(a, name, top, slots)?.div(&d)?
        }
        Expr::Pow(a, k) => {
            let base = lower_with_slots(a, name, top, slots)?;
            if *k < 0 && base.is_zero() {
                return Err(ParseError::ZeroDenominator);
            }
            base.pow(*k)?
        }
    })
}

/// Symbolic orbit of a recurrence: every term a reduced rational function of
/// the initial symbols.
#[derive(Debug, Clone)]
pub struct TermSequence {
    pub spec: RecurrenceSpec,
    vars: Arc<VarTable>,
    terms: Vec<RationalFunction>,
}

impl TermSequence {
    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// First and last logical index, inclusive.
    pub fn index_range(&self) -> (i64, i64) {
        (
            self.spec.start_index,
            self.spec.start_index + self.terms.len() as i64 - 1,
        )
    }

    /// Term by logical index.
    pub fn term(&self, n: i64) -> Option<&RationalFunction> {
        let off = n - self.spec.start_index;
        if off < 0 {
            return None;
        }
        self.terms.get(off as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &RationalFunction)> {
        let start = self.spec.start_index;
        self.terms
            .iter()
            .enumerate()
            .map(move |(i, t)| (start + i as i64, t))
    }
}

/// Evolve `n_terms` symbolic terms (including the initial symbols).
pub fn evolve(spec: &RecurrenceSpec, n_terms: usize) -> Result<TermSequence, EvolveError> {
    if n_terms < spec.order {
        return Err(EvolveError::TooFewTerms {
            order: spec.order,
            given: n_terms,
        });
    }
    let vars = VarTable::new(&spec.initial_symbols);
    let mut terms: Vec<RationalFunction> = (0..spec.order)
        .map(|i| RationalFunction::var(&vars, i))
        .collect();
    let unum = spec.update.num();
    let uden = spec.update.den();
    for step in spec.order..n_terms {
        let args: Vec<RationalFunction> = (1..=spec.order)
            .map(|back| terms[step - back].clone())
            .collect();
        let num = compose_poly(unum, &args);
        let den = compose_poly(uden, &args);
        if den.is_zero() {
            return Err(EvolveError::Singular(spec.start_index + step as i64));
        }
        terms.push(num.div(&den)?);
    }
    Ok(TermSequence {
        spec: spec.clone(),
        vars,
        terms,
    })
}

/// Exact rational orbit; the independent oracle for symbolic evolution.
pub fn numeric_evolve(
    spec: &RecurrenceSpec,
    init: &[BigRational],
    n_terms: usize,
) -> Result<Vec<BigRational>, EvolveError> {
    assert_eq!(init.len(), spec.order, "one value per initial symbol");
    if n_terms < spec.order {
        return Err(EvolveError::TooFewTerms {
            order: spec.order,
            given: n_terms,
        });
    }
    let mut orbit: Vec<BigRational> = init.to_vec();
    for step in spec.order..n_terms {
        let mut point = BTreeMap::new();
        for back in 1..=spec.order {
            point.insert(back - 1, orbit[step - back].clone());
        }
        let den = spec.update.den().evaluate(&point)?;
        if den.is_zero() {
            return Err(EvolveError::ZeroDivision(spec.start_index + step as i64));
        }
        let num = spec.update.num().evaluate(&point)?;
        orbit.push(num / den);
    }
    Ok(orbit)
}

/// Change of variables from Somos-4 to the QRT map:
/// `x_n = y_{n+3} y_{n+1} / y_{n+2}^2`, followed by the monomial
/// substitution `c = b^2 u / a`, `d = b^3 t u^2 / a^2`. Returns x_0..x_{count-1}
/// over the table (a, b, u, t); the values are independent of a and b.
pub fn somos_to_qrt(y_seq: &TermSequence, count: usize) -> Result<Vec<RationalFunction>, EvolveError> {
    let (lo, hi) = y_seq.index_range();
    debug_assert_eq!(lo, 1, "somos sequence starts at y_1");
    let needed = count as i64 + 2;
    if hi < needed {
        return Err(EvolveError::TooFewTerms {
            order: needed as usize,
            given: (hi - lo + 1) as usize,
        });
    }
    let target = VarTable::new(&["a", "b", "u", "t"]);
    let (ai, bi, ui, ti) = (0usize, 1usize, 2usize, 3usize);
    // monomial images of a, b, c, d in (a, b, u, t)
    let images = vec![
        LaurentMonomial::var(&target, ai),
        LaurentMonomial::var(&target, bi),
        LaurentMonomial {
            coeff: 1.into(),
            exps: {
                let mut e = vec![0i64; 4];
                e[ai] = -1;
                e[bi] = 2;
                e[ui] = 1;
                e
            },
        },
        LaurentMonomial {
            coeff: 1.into(),
            exps: {
                let mut e = vec![0i64; 4];
                e[ai] = -2;
                e[bi] = 3;
                e[ti] = 1;
                e[ui] = 2;
                e
            },
        },
    ];
    let subst = |f: &RationalFunction| -> Result<RationalFunction, PolyError> {
        let num = substitute_monomials(f.num(), &images, &target)?;
        let den = substitute_monomials(f.den(), &images, &target)?;
        num.div(&den)
    };
    let mut out = Vec::with_capacity(count);
    for n in 0..count as i64 {
        let y1 = y_seq.term(n + 1).expect("range checked");
        let y2 = y_seq.term(n + 2).expect("range checked");
        let y3 = y_seq.term(n + 3).expect("range checked");
        let x = y3.mul(y1).div(&y2.mul(y2))?;
        out.push(subst(&x)?);
    }
    Ok(out)
}

/// Somos-4 solved for the lowest index: from four consecutive terms
/// `(y_k, y_{k+1}, y_{k+2}, y_{k+3})` recover the `steps` terms before
/// `y_k`, most recent first.
pub fn somos4_backward(
    window: &[RationalFunction; 4],
    steps: usize,
) -> Result<Vec<RationalFunction>, EvolveError> {
    let mut w: Vec<RationalFunction> = window.to_vec();
    let mut out = Vec::with_capacity(steps);
    for step in 0..steps {
        // y_{k-1} = (y_k y_{k+2} + y_{k+1}^2) / y_{k+3}
        let den = &w[3];
        if den.is_zero() {
            return Err(EvolveError::Singular(-(step as i64 + 1)));
        }
        let num = w[0].mul(&w[2]).add(&w[1].mul(&w[1]));
        let prev = num.div(den)?;
        w = vec![prev.clone(), w[0].clone(), w[1].clone(), w[2].clone()];
        out.push(prev);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_rational;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn somos4_symbolic_y5() {
        let seq = evolve(&RecurrenceSpec::somos4(), 5).unwrap();
        let y5 = seq.term(5).unwrap();
        let expect = parse_rational("(b*d+c^2)/a", seq.vars()).unwrap();
        assert_eq!(*y5, expect);
    }

    #[test]
    fn qrt_symbolic_first_terms() {
        let seq = evolve(&RecurrenceSpec::qrt2(), 5).unwrap();
        let vt = seq.vars();
        assert_eq!(
            *seq.term(2).unwrap(),
            parse_rational("(1+t)/(t^2*u)", vt).unwrap()
        );
        assert_eq!(
            *seq.term(3).unwrap(),
            parse_rational("t*u*(1+t+t^2*u)/((1+t)^2)", vt).unwrap()
        );
        assert_eq!(
            *seq.term(4).unwrap(),
            parse_rational(
                "(1+t)*(1+2*t+t^2+t*u+t^2*u+t^3*u^2)/(u*(1+t+t^2*u)^2)",
                vt
            )
            .unwrap()
        );
    }

    #[test]
    fn nonqrt3_symbolic_first_terms() {
        let seq = evolve(&RecurrenceSpec::nonqrt3(), 4).unwrap();
        let vt = seq.vars();
        assert_eq!(
            *seq.term(2).unwrap(),
            parse_rational("(1+t)/(t^3*u)", vt).unwrap()
        );
        assert_eq!(
            *seq.term(3).unwrap(),
            parse_rational("t^5*u^2*(1+t+t^3*u)/((1+t)^3)", vt).unwrap()
        );
    }

    #[test]
    fn somos4_numeric_orbit() {
        let init = vec![rat(1), rat(1), rat(1), rat(1)];
        let orbit = numeric_evolve(&RecurrenceSpec::somos4(), &init, 14).unwrap();
        let expect: Vec<i64> = vec![1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209, 83313, 620297];
        assert_eq!(orbit, expect.into_iter().map(rat).collect::<Vec<_>>());
    }

    #[test]
    fn qrt_numeric_at_ones() {
        let orbit = numeric_evolve(&RecurrenceSpec::qrt2(), &[rat(1), rat(1)], 3).unwrap();
        assert_eq!(orbit[2], rat(2));
    }

    #[test]
    fn change_of_variables_matches_direct_evolution() {
        let y = evolve(&RecurrenceSpec::somos4(), 7).unwrap();
        let xs = somos_to_qrt(&y, 4).unwrap();
        let target = xs[0].vars();
        // x_0 = u, x_1 = t
        assert_eq!(xs[0], RationalFunction::var(target, 2));
        assert_eq!(xs[1], RationalFunction::var(target, 3));
        // x_3 equals the directly evolved QRT term
        let direct = evolve(&RecurrenceSpec::qrt2(), 4).unwrap();
        let lifted = direct.term(3).unwrap().lift(target).unwrap();
        assert_eq!(xs[3], lifted);
    }

    #[test]
    fn backward_recovers_initials() {
        let seq = evolve(&RecurrenceSpec::somos4(), 8).unwrap();
        let window = [
            seq.term(5).unwrap().clone(),
            seq.term(6).unwrap().clone(),
            seq.term(7).unwrap().clone(),
            seq.term(8).unwrap().clone(),
        ];
        let back = somos4_backward(&window, 4).unwrap();
        let vt = seq.vars();
        assert_eq!(back[0], RationalFunction::var(vt, 3)); // d
        assert_eq!(back[1], RationalFunction::var(vt, 2)); // c
        assert_eq!(back[2], RationalFunction::var(vt, 1)); // b
        assert_eq!(back[3], RationalFunction::var(vt, 0)); // a
    }

    #[test]
    fn parse_spec_shapes() {
        let spec = RecurrenceSpec::parse("x[n+1] = (x[n]+1)/(x[n-1]*x[n]^2)").unwrap();
        assert_eq!(spec.order, 2);
        let spec = RecurrenceSpec::parse("y[n+2] = (y[n+1]*y[n-1]+y[n]^2)/y[n-2]").unwrap();
        assert_eq!(spec.order, 4);
        assert!(RecurrenceSpec::parse("x[n+1] = z[n] + 1").is_err());
        assert!(RecurrenceSpec::parse("x[n+1] + 1 = x[n]").is_err());
    }
}
