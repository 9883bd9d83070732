//! The discrete KdV quarter-lattice: bilinear and nonlinear evolution with
//! general boundary data, the correspondence between the two boundary sets,
//! and the axis-interchanged tilde system.
//!
//! Sweeps run on [`FactoredRational`] values: tau-function algebra keeps
//! every cell a ratio of recurring polynomial cores, so reductions are exact
//! divisions against known atoms instead of general gcds. The public
//! windows expose reduced [`RationalFunction`] cells; expansion re-verifies
//! each one.

use crate::factored::FactoredRational;
use crate::laurent::{RationalFunction, UnitSpec};
use crate::poly::{MultiPoly, PolyError, VarTable};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("evolution hit an identically zero denominator at cell ({m},{n})")]
    Singular { m: i64, n: i64 },
    #[error("division by zero in the numeric sweep at cell ({m},{n})")]
    ZeroDivision { m: i64, n: i64 },
    #[error("cell ({m},{n}) is outside the computed window")]
    MissingCell { m: i64, n: i64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Symbolic delta, or an exact rational value.
#[derive(Debug, Clone, PartialEq)]
pub enum DeltaSpec {
    Symbolic,
    Numeric(BigRational),
}

/// Values on the quarter-lattice rectangle plus its initial strips; keys are
/// `(m, n)` and iteration order is deterministic.
#[derive(Debug, Clone)]
pub struct LatticeWindow {
    vars: Arc<VarTable>,
    pub mmax: i64,
    pub nmax: i64,
    values: BTreeMap<(i64, i64), RationalFunction>,
}

impl LatticeWindow {
    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn get(&self, m: i64, n: i64) -> Option<&RationalFunction> {
        self.values.get(&(m, n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &RationalFunction)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The factored counterpart of [`LatticeWindow`]; what the sweeps produce.
#[derive(Debug, Clone)]
pub struct FactoredWindow {
    vars: Arc<VarTable>,
    pub mmax: i64,
    pub nmax: i64,
    values: BTreeMap<(i64, i64), FactoredRational>,
}

impl FactoredWindow {
    fn new(vars: Arc<VarTable>, mmax: i64, nmax: i64) -> Self {
        FactoredWindow {
            vars,
            mmax,
            nmax,
            values: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn get(&self, m: i64, n: i64) -> Option<&FactoredRational> {
        self.values.get(&(m, n))
    }

    fn insert(&mut self, m: i64, n: i64, v: FactoredRational) {
        self.values.insert((m, n), v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &FactoredRational)> {
        self.values.iter()
    }

    /// Expand every cell to a reduced rational function.
    pub fn to_window(&self) -> Result<LatticeWindow, LatticeError> {
        let mut values = BTreeMap::new();
        for (key, v) in &self.values {
            values.insert(*key, v.to_rational()?);
        }
        Ok(LatticeWindow {
            vars: Arc::clone(&self.vars),
            mmax: self.mmax,
            nmax: self.nmax,
            values,
        })
    }
}

fn within(cap: Option<i64>, m: i64, n: i64) -> bool {
    cap.map(|c| m + n <= c).unwrap_or(true)
}

// ---------------------------------------------------------------------------
// boundaries
// ---------------------------------------------------------------------------

/// Boundary data I_a for the bilinear system: `a_m^0 = 1`, `a_0^1 = 1`,
/// `a_m^1 = x_m`, `a_0^n = y_n`.
#[derive(Debug, Clone)]
pub struct BilinearBoundary {
    pub vars: Arc<VarTable>,
    pub delta: RationalFunction,
    /// `x[m-1]` is `a_m^1`, m >= 1.
    pub x: Vec<RationalFunction>,
    /// `y[n-2]` is `a_0^n`, n >= 2.
    pub y: Vec<RationalFunction>,
    /// Atoms the boundary values factor over (e.g. the gamma parameters).
    pub hints: Vec<MultiPoly>,
}

impl BilinearBoundary {
    /// Free symbols x_1..x_mmax, y_2..y_nmax, and delta per `delta_spec`.
    pub fn symbolic(mmax: i64, nmax: i64, delta: &DeltaSpec) -> Self {
        let mut names: Vec<String> = (1..=mmax).map(|m| format!("x{m}")).collect();
        names.extend((2..=nmax).map(|n| format!("y{n}")));
        if matches!(delta, DeltaSpec::Symbolic) {
            names.push("delta".into());
        }
        let vars = VarTable::new(&names);
        let delta = match delta {
            DeltaSpec::Symbolic => RationalFunction::var(&vars, vars.arity() - 1),
            DeltaSpec::Numeric(r) => RationalFunction::from_rational(&vars, r),
        };
        let x = (0..mmax as usize)
            .map(|i| RationalFunction::var(&vars, i))
            .collect();
        let y = (0..(nmax - 1).max(0) as usize)
            .map(|i| RationalFunction::var(&vars, mmax as usize + i))
            .collect();
        BilinearBoundary {
            vars,
            delta,
            x,
            y,
            hints: Vec::new(),
        }
    }
}

/// Boundary data I_a-tilde for the axis-interchanged system:
/// `a~_0^n = 1`, `a~_1^0 = 1`, `a~_1^n = xt_n`, `a~_m^0 = yt_m`.
#[derive(Debug, Clone)]
pub struct TildeBoundary {
    pub vars: Arc<VarTable>,
    /// The tilde delta (already transformed), kept exact.
    pub delta_tilde: RationalFunction,
    /// `xt[n-1]` is `a~_1^n`, n >= 1.
    pub xt: Vec<RationalFunction>,
    /// `yt[m-2]` is `a~_m^0`, m >= 2.
    pub yt: Vec<RationalFunction>,
    pub hints: Vec<MultiPoly>,
}

/// Boundary data I_w for the nonlinear system: the bottom row `w_m^0`
/// (m >= 1) and left column `w_1^n` (n >= 0); the corner is shared.
#[derive(Debug, Clone)]
pub struct NonlinearBoundary {
    pub vars: Arc<VarTable>,
    pub delta: RationalFunction,
    /// `bottom[m-1]` is `w_m^0`, m >= 1.
    pub bottom: Vec<RationalFunction>,
    /// `left[n]` is `w_1^n`, n >= 0.
    pub left: Vec<RationalFunction>,
    pub hints: Vec<MultiPoly>,
}

impl NonlinearBoundary {
    /// Free symbols `w1_0..w{mmax}_0`, `w1_1..w1_{nmax}`, delta.
    pub fn symbolic(mmax: i64, nmax: i64, delta: &DeltaSpec) -> Self {
        let vars = w_table(mmax, nmax, delta);
        let delta = delta_on(&vars, delta);
        NonlinearBoundary {
            bottom: (1..=mmax)
                .map(|m| RationalFunction::var(&vars, (m - 1) as usize))
                .collect(),
            left: (0..=nmax)
                .map(|n| {
                    if n == 0 {
                        RationalFunction::var(&vars, 0)
                    } else {
                        RationalFunction::var(&vars, (mmax + n - 1) as usize)
                    }
                })
                .collect(),
            vars,
            delta,
            hints: Vec::new(),
        }
    }
}

/// The shared w-variable table: `w1_0..w{M}_0`, then `w1_1..w1_{N}`, then
/// delta when symbolic.
pub fn w_table(mmax: i64, nmax: i64, delta: &DeltaSpec) -> Arc<VarTable> {
    let mut names: Vec<String> = (1..=mmax).map(|m| format!("w{m}_0")).collect();
    names.extend((1..=nmax).map(|n| format!("w1_{n}")));
    if matches!(delta, DeltaSpec::Symbolic) {
        names.push("delta".into());
    }
    VarTable::new(&names)
}

fn delta_on(vars: &Arc<VarTable>, delta: &DeltaSpec) -> RationalFunction {
    match delta {
        DeltaSpec::Symbolic => {
            let idx = vars.position("delta").expect("delta in table");
            RationalFunction::var(vars, idx)
        }
        DeltaSpec::Numeric(r) => RationalFunction::from_rational(vars, r),
    }
}

/// `delta~ = -delta / (1 + 2 delta)`, kept exact.
pub fn delta_tilde_of(delta: &RationalFunction) -> RationalFunction {
    let vars = delta.vars();
    let one = RationalFunction::one(vars);
    let den = one.add(&delta.add(delta));
    delta
        .neg()
        .div(&den)
        .expect("1 + 2 delta is not identically zero")
}

// ---------------------------------------------------------------------------
// symbolic evolution
// ---------------------------------------------------------------------------

/// Sweep the bilinear dKdV equation upward row by row:
/// `(1+d) a_{m-1}^{n-1} a_m^{n+1} = a_{m-1}^n a_m^n + d a_{m-1}^{n+1} a_m^{n-1}`.
/// `cap` restricts to cells with `m + n <= cap`.
pub fn evolve_bilinear_factored(
    bd: &BilinearBoundary,
    mmax: i64,
    nmax: i64,
    cap: Option<i64>,
) -> Result<FactoredWindow, LatticeError> {
    let vars = &bd.vars;
    let one = FactoredRational::one(vars);
    let delta = FactoredRational::from_rf(&bd.delta, &bd.hints);
    let opd = delta.add(&one, &bd.hints);
    let opd_atoms: Vec<MultiPoly> = opd.factors().map(|(p, _)| p.clone()).collect();
    let mut w = FactoredWindow::new(Arc::clone(vars), mmax, nmax);
    for m in 0..=mmax {
        if within(cap, m, 0) {
            w.insert(m, 0, one.clone());
        }
    }
    if nmax >= 1 {
        if within(cap, 0, 1) {
            w.insert(0, 1, one.clone());
        }
        for m in 1..=mmax {
            if within(cap, m, 1) {
                w.insert(m, 1, FactoredRational::from_rf(&bd.x[(m - 1) as usize], &bd.hints));
            }
        }
    }
    for n in 2..=nmax {
        if within(cap, 0, n) {
            w.insert(0, n, FactoredRational::from_rf(&bd.y[(n - 2) as usize], &bd.hints));
        }
    }
    for n in 1..nmax {
        for m in 1..=mmax {
            if !within(cap, m, n + 1) {
                continue;
            }
            let a_ul = w.get(m - 1, n + 1).expect("stencil complete").clone();
            let a_l = w.get(m - 1, n).expect("stencil complete");
            let a_dl = w.get(m - 1, n - 1).expect("stencil complete");
            let a_c = w.get(m, n).expect("stencil complete");
            let a_d = w.get(m, n - 1).expect("stencil complete");
            if a_dl.is_zero() {
                return Err(LatticeError::Singular { m, n: n + 1 });
            }
            let den = opd.mul(a_dl);
            // atoms of the divisor guide the collapse of the sum
            let mut hints: Vec<MultiPoly> = den.factors().map(|(p, _)| p.clone()).collect();
            hints.extend(opd_atoms.iter().cloned());
            hints.extend(bd.hints.iter().cloned());
            let num = a_l.mul(a_c).add(&delta.mul(&a_ul.mul(a_d)), &hints);
            w.insert(m, n + 1, num.div(&den)?);
        }
    }
    Ok(w)
}

pub fn evolve_bilinear(
    bd: &BilinearBoundary,
    mmax: i64,
    nmax: i64,
    cap: Option<i64>,
) -> Result<LatticeWindow, LatticeError> {
    evolve_bilinear_factored(bd, mmax, nmax, cap)?.to_window()
}

/// Sweep the axis-interchanged bilinear system column by column:
/// `(1+d~) a~_{m-1}^{n-1} a~_{m+1}^n = d~ a~_{m+1}^{n-1} a~_{m-1}^n + a~_m^n a~_m^{n-1}`.
pub fn evolve_bilinear_tilde_factored(
    bd: &TildeBoundary,
    mmax: i64,
    nmax: i64,
    cap: Option<i64>,
) -> Result<FactoredWindow, LatticeError> {
    let vars = &bd.vars;
    let one = FactoredRational::one(vars);
    let dt = FactoredRational::from_rf(&bd.delta_tilde, &bd.hints);
    let opdt = dt.add(&one, &bd.hints);
    let opdt_atoms: Vec<MultiPoly> = opdt.factors().map(|(p, _)| p.clone()).collect();
    let mut w = FactoredWindow::new(Arc::clone(vars), mmax, nmax);
    for n in 0..=nmax {
        if within(cap, 0, n) {
            w.insert(0, n, one.clone());
        }
    }
    if mmax >= 1 {
        if within(cap, 1, 0) {
            w.insert(1, 0, one.clone());
        }
        for n in 1..=nmax {
            if within(cap, 1, n) {
                w.insert(1, n, FactoredRational::from_rf(&bd.xt[(n - 1) as usize], &bd.hints));
            }
        }
    }
    for m in 2..=mmax {
        if within(cap, m, 0) {
            w.insert(m, 0, FactoredRational::from_rf(&bd.yt[(m - 2) as usize], &bd.hints));
        }
    }
    for m in 1..mmax {
        for n in 1..=nmax {
            if !within(cap, m + 1, n) {
                continue;
            }
            let a_rd = w.get(m + 1, n - 1).expect("stencil complete").clone();
            let a_l = w.get(m - 1, n).expect("stencil complete");
            let a_ld = w.get(m - 1, n - 1).expect("stencil complete");
            let a_c = w.get(m, n).expect("stencil complete");
            let a_d = w.get(m, n - 1).expect("stencil complete");
            if a_ld.is_zero() {
                return Err(LatticeError::Singular { m: m + 1, n });
            }
            let den = opdt.mul(a_ld);
            let mut hints: Vec<MultiPoly> = den.factors().map(|(p, _)| p.clone()).collect();
            hints.extend(opdt_atoms.iter().cloned());
            hints.extend(bd.hints.iter().cloned());
            let num = dt.mul(&a_rd.mul(a_l)).add(&a_c.mul(a_d), &hints);
            w.insert(m + 1, n, num.div(&den)?);
        }
    }
    Ok(w)
}

pub fn evolve_bilinear_tilde(
    bd: &TildeBoundary,
    mmax: i64,
    nmax: i64,
    cap: Option<i64>,
) -> Result<LatticeWindow, LatticeError> {
    evolve_bilinear_tilde_factored(bd, mmax, nmax, cap)?.to_window()
}

/// Sweep the nonlinear dKdV equation:
/// `1/w_{m+1}^{n+1} - 1/w_m^n + d/(1+d) (w_m^{n+1} - w_{m+1}^n) = 0`.
/// Independent of the bilinear pipeline, and serves as its oracle.
pub fn evolve_nonlinear_factored(
    bd: &NonlinearBoundary,
    mmax: i64,
    nmax: i64,
    cap: Option<i64>,
) -> Result<FactoredWindow, LatticeError> {
    let vars = &bd.vars;
    let one = FactoredRational::one(vars);
    let delta = FactoredRational::from_rf(&bd.delta, &bd.hints);
    let coef = delta.div(&delta.add(&one, &bd.hints))?;
    let mut w = FactoredWindow::new(Arc::clone(vars), mmax, nmax);
    for m in 1..=mmax {
        if within(cap, m, 0) {
            w.insert(m, 0, FactoredRational::from_rf(&bd.bottom[(m - 1) as usize], &bd.hints));
        }
    }
    for n in 0..=nmax {
        if within(cap, 1, n) {
            w.insert(1, n, FactoredRational::from_rf(&bd.left[n as usize], &bd.hints));
        }
    }
    for n in 0..nmax {
        for m in 1..mmax {
            if !within(cap, m + 1, n + 1) {
                continue;
            }
            let w_c = w.get(m, n).expect("stencil complete");
            let w_up = w.get(m, n + 1).expect("stencil complete");
            let w_r = w.get(m + 1, n).expect("stencil complete");
            if w_c.is_zero() {
                return Err(LatticeError::Singular { m, n });
            }
            let hints: Vec<MultiPoly> = w_c
                .factors()
                .chain(w_up.factors())
                .chain(w_r.factors())
                .map(|(p, _)| p.clone())
                .collect();
            let den = w_c
                .inv()?
                .sub(&coef.mul(&w_up.sub(w_r, &hints)), &hints);
            if den.is_zero() {
                return Err(LatticeError::Singular { m: m + 1, n: n + 1 });
            }
            w.insert(m + 1, n + 1, den.inv()?);
        }
    }
    Ok(w)
}

pub fn evolve_nonlinear(
    bd: &NonlinearBoundary,
    mmax: i64,
    nmax: i64,
    cap: Option<i64>,
) -> Result<LatticeWindow, LatticeError> {
    evolve_nonlinear_factored(bd, mmax, nmax, cap)?.to_window()
}

/// The multiplicative stencil `w_m^n = a_{m-1}^{n+1} a_m^n / (a_m^{n+1} a_{m-1}^n)`.
pub fn w_from_a_factored(a: &FactoredWindow) -> Result<FactoredWindow, LatticeError> {
    let mut w = FactoredWindow::new(Arc::clone(&a.vars), a.mmax, a.nmax - 1);
    for m in 1..=a.mmax {
        for n in 0..a.nmax {
            let (ul, c, up, l) = match (
                a.get(m - 1, n + 1),
                a.get(m, n),
                a.get(m, n + 1),
                a.get(m - 1, n),
            ) {
                (Some(ul), Some(c), Some(up), Some(l)) => (ul, c, up, l),
                _ => continue,
            };
            let den = up.mul(l);
            if den.is_zero() {
                return Err(LatticeError::Singular { m, n });
            }
            w.insert(m, n, ul.mul(c).div(&den)?);
        }
    }
    Ok(w)
}

pub fn w_from_a(a: &LatticeWindow) -> Result<LatticeWindow, LatticeError> {
    factored_from_window(a)
        .and_then(|f| w_from_a_factored(&f))?
        .to_window()
}

/// The tilde stencil `w_m^n = a~_m^{n-1} a~_{m-1}^n / (a~_m^n a~_{m-1}^{n-1})`.
pub fn w_from_a_tilde_factored(at: &FactoredWindow) -> Result<FactoredWindow, LatticeError> {
    let mut w = FactoredWindow::new(Arc::clone(&at.vars), at.mmax, at.nmax);
    for m in 1..=at.mmax {
        for n in 1..=at.nmax {
            let (d, l, c, dl) = match (
                at.get(m, n - 1),
                at.get(m - 1, n),
                at.get(m, n),
                at.get(m - 1, n - 1),
            ) {
                (Some(d), Some(l), Some(c), Some(dl)) => (d, l, c, dl),
                _ => continue,
            };
            let den = c.mul(dl);
            if den.is_zero() {
                return Err(LatticeError::Singular { m, n });
            }
            w.insert(m, n, d.mul(l).div(&den)?);
        }
    }
    Ok(w)
}

pub fn w_from_a_tilde(at: &LatticeWindow) -> Result<LatticeWindow, LatticeError> {
    factored_from_window(at)
        .and_then(|f| w_from_a_tilde_factored(&f))?
        .to_window()
}

fn factored_from_window(w: &LatticeWindow) -> Result<FactoredWindow, LatticeError> {
    let mut out = FactoredWindow::new(Arc::clone(&w.vars), w.mmax, w.nmax);
    for (key, v) in w.iter() {
        out.values.insert(*key, FactoredRational::from_rf(v, &[]));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// boundary correspondence
// ---------------------------------------------------------------------------

/// The correspondence between I_w and the bilinear boundaries, plus the
/// gamma parameters and their tilde counterparts, all over the w-table.
#[derive(Debug, Clone)]
pub struct CorrespondenceTables {
    pub vars: Arc<VarTable>,
    pub delta: RationalFunction,
    pub delta_tilde: RationalFunction,
    /// `beta[j-1]` is `beta_j = (1+d)/w_1^j - d w_1^{j-1}`, j = 1..
    pub beta: Vec<RationalFunction>,
    /// `alpha[l-1]` is `alpha_l = prod_{j<=l} beta_j`.
    pub alpha: Vec<RationalFunction>,
    /// `x[l-1]` is `x_l = (prod_{i<=l} w_i^0)^{-1}`, l = 1..
    pub x: Vec<RationalFunction>,
    /// `y[l-2]` is `y_l = (prod_{j<l} alpha_j)^{-1}`, l = 2..
    pub y: Vec<RationalFunction>,
    /// Cleared `gamma_j = w_1^{j-1} w_1^j - (1+d)/d`, j = 1.. (delta-unit
    /// denominators dropped).
    pub gamma: Vec<MultiPoly>,
    pub beta_tilde: Vec<RationalFunction>,
    pub alpha_tilde: Vec<RationalFunction>,
    /// `x_tilde[l-1]` is `x~_l = (prod_{i<=l} w_1^i)^{-1}`, l = 1..
    pub x_tilde: Vec<RationalFunction>,
    /// `y_tilde[l-2]` is `y~_l`, l = 2..
    pub y_tilde: Vec<RationalFunction>,
    /// Cleared `gamma~_j = w_j^0 w_{j+1}^0 - (1+d~)/d~`, j = 1..
    pub gamma_tilde: Vec<MultiPoly>,
}

/// Build all correspondence tables for a w-table with `w_m^0`, m <= mmax and
/// `w_1^n`, n <= nmax.
pub fn boundary_transform(mmax: i64, nmax: i64, delta_spec: &DeltaSpec) -> CorrespondenceTables {
    let vars = w_table(mmax, nmax, delta_spec);
    let delta = delta_on(&vars, delta_spec);
    let one = RationalFunction::one(&vars);
    let one_plus_delta = one.add(&delta);
    let delta_tilde = delta_tilde_of(&delta);

    let w_bottom = |m: i64| RationalFunction::var(&vars, (m - 1) as usize);
    let w_left = |n: i64| {
        if n == 0 {
            RationalFunction::var(&vars, 0)
        } else {
            RationalFunction::var(&vars, (mmax + n - 1) as usize)
        }
    };

    // beta_j = (1+d)/w_1^j - d w_1^{j-1}
    let beta: Vec<RationalFunction> = (1..=nmax)
        .map(|j| {
            one_plus_delta
                .div(&w_left(j))
                .expect("symbol is nonzero")
                .sub(&delta.mul(&w_left(j - 1)))
        })
        .collect();
    let mut alpha = Vec::with_capacity(beta.len());
    let mut acc = one.clone();
    for b in &beta {
        acc = acc.mul(b);
        alpha.push(acc.clone());
    }
    let x: Vec<RationalFunction> = {
        let mut out = Vec::with_capacity(mmax as usize);
        let mut prod = one.clone();
        for m in 1..=mmax {
            prod = prod.mul(&w_bottom(m));
            out.push(prod.inv().expect("monomial"));
        }
        out
    };
    let y: Vec<RationalFunction> = {
        let mut out = Vec::new();
        let mut prod = one.clone();
        for l in 2..=nmax + 1 {
            prod = prod.mul(&alpha[(l - 2) as usize]);
            out.push(prod.inv().expect("generic boundary"));
        }
        out
    };
    // gamma_j cleared of its delta-unit denominator
    let gamma: Vec<MultiPoly> = (1..=nmax)
        .map(|j| {
            let raw = w_left(j - 1)
                .mul(&w_left(j))
                .sub(&one_plus_delta.div(&delta).expect("delta nonzero"));
            raw.num().primitive_part().expect("nonzero").normalize_sign()
        })
        .collect();

    // tilde side: beta~_j = (1+d~)/w_j^0 - d~ w_{j+1}^0, the form consistent
    // with gamma~_j = -(1/d~) w_j^0 beta~_j = w_j^0 w_{j+1}^0 - (1+d~)/d~
    // and with pipeline equality (the two factors trade places under the
    // axis interchange)
    let one_plus_dt = one.add(&delta_tilde);
    let beta_tilde: Vec<RationalFunction> = (1..mmax)
        .map(|j| {
            one_plus_dt
                .div(&w_bottom(j))
                .expect("symbol is nonzero")
                .sub(&delta_tilde.mul(&w_bottom(j + 1)))
        })
        .collect();
    let mut alpha_tilde = Vec::with_capacity(beta_tilde.len());
    let mut acc = one.clone();
    for b in &beta_tilde {
        acc = acc.mul(b);
        alpha_tilde.push(acc.clone());
    }
    let x_tilde: Vec<RationalFunction> = {
        let mut out = Vec::with_capacity(nmax as usize);
        let mut prod = one.clone();
        for n in 1..=nmax {
            prod = prod.mul(&w_left(n));
            out.push(prod.inv().expect("monomial"));
        }
        out
    };
    let y_tilde: Vec<RationalFunction> = {
        let mut out = Vec::new();
        let mut prod = one.clone();
        for l in 2..=mmax {
            prod = prod.mul(&alpha_tilde[(l - 2) as usize]);
            out.push(prod.inv().expect("generic boundary"));
        }
        out
    };
    let gamma_tilde: Vec<MultiPoly> = (1..mmax)
        .map(|j| {
            let raw = w_bottom(j)
                .mul(&w_bottom(j + 1))
                .sub(&one_plus_dt.div(&delta_tilde).expect("delta-tilde nonzero"));
            raw.num().primitive_part().expect("nonzero").normalize_sign()
        })
        .collect();

    CorrespondenceTables {
        vars,
        delta,
        delta_tilde,
        beta,
        alpha,
        x,
        y,
        gamma,
        beta_tilde,
        alpha_tilde,
        x_tilde,
        y_tilde,
        gamma_tilde,
    }
}

impl CorrespondenceTables {
    fn w_var_indices(&self) -> Vec<usize> {
        (0..self.vars.arity())
            .filter(|&v| self.vars.name(v) != "delta")
            .collect()
    }

    fn delta_index(&self) -> Vec<usize> {
        self.vars
            .position("delta")
            .map(|i| vec![i])
            .unwrap_or_default()
    }

    /// Ring B: w-monomials, delta-only factors, and the gamma parameters are
    /// invertible.
    pub fn unit_spec_b(&self) -> UnitSpec {
        UnitSpec::localized(
            "B",
            self.w_var_indices(),
            self.delta_index(),
            self.gamma.clone(),
        )
    }

    /// Ring B-tilde: same with the tilde gamma parameters.
    pub fn unit_spec_b_tilde(&self) -> UnitSpec {
        UnitSpec::localized(
            "B-tilde",
            self.w_var_indices(),
            self.delta_index(),
            self.gamma_tilde.clone(),
        )
    }

    /// The strict ring of the main theorem: only w-monomials and delta-only
    /// factors are units.
    pub fn unit_spec_w_monomial(&self) -> UnitSpec {
        UnitSpec::localized(
            "w-monomial",
            self.w_var_indices(),
            self.delta_index(),
            Vec::new(),
        )
    }

    fn all_hints(&self) -> Vec<MultiPoly> {
        let mut hints = self.gamma.clone();
        hints.extend(self.gamma_tilde.iter().cloned());
        hints
    }

    /// Bilinear boundary I_a expressed in the w-symbols.
    pub fn bilinear_boundary(&self, mmax: i64, nmax: i64) -> BilinearBoundary {
        assert!(mmax as usize <= self.x.len());
        assert!((nmax - 1).max(0) as usize <= self.y.len());
        BilinearBoundary {
            vars: Arc::clone(&self.vars),
            delta: self.delta.clone(),
            x: self.x[..mmax as usize].to_vec(),
            y: self.y[..(nmax - 1).max(0) as usize].to_vec(),
            hints: self.all_hints(),
        }
    }

    /// Tilde boundary I_a-tilde expressed in the w-symbols.
    pub fn tilde_boundary(&self, mmax: i64, nmax: i64) -> TildeBoundary {
        assert!(nmax as usize <= self.x_tilde.len());
        TildeBoundary {
            vars: Arc::clone(&self.vars),
            delta_tilde: self.delta_tilde.clone(),
            xt: self.x_tilde[..nmax as usize].to_vec(),
            yt: self.y_tilde[..(mmax - 1).max(0) as usize].to_vec(),
            hints: self.all_hints(),
        }
    }

    /// Nonlinear boundary with the plain w-symbols.
    pub fn nonlinear_boundary(&self, mmax: i64, nmax: i64) -> NonlinearBoundary {
        let w_left = |n: i64| {
            if n == 0 {
                RationalFunction::var(&self.vars, 0)
            } else {
                RationalFunction::var(&self.vars, (self.x.len() as i64 + n - 1) as usize)
            }
        };
        NonlinearBoundary {
            vars: Arc::clone(&self.vars),
            delta: self.delta.clone(),
            bottom: (1..=mmax)
                .map(|m| RationalFunction::var(&self.vars, (m - 1) as usize))
                .collect(),
            left: (0..=nmax).map(w_left).collect(),
            hints: self.all_hints(),
        }
    }
}

// ---------------------------------------------------------------------------
// pipelines and residuals
// ---------------------------------------------------------------------------

/// The three routes to the same w-window, in factored form.
#[derive(Debug, Clone)]
pub struct FactoredPipeline {
    pub tables: CorrespondenceTables,
    pub direct: FactoredWindow,
    pub via_bilinear: FactoredWindow,
    pub via_tilde: FactoredWindow,
    pub a_window: FactoredWindow,
    pub a_tilde_window: FactoredWindow,
}

/// The three routes, expanded.
#[derive(Debug, Clone)]
pub struct PipelineWindows {
    pub direct: LatticeWindow,
    pub via_bilinear: LatticeWindow,
    pub via_tilde: LatticeWindow,
}

/// Compute `w_m^n` (1 <= m <= mmax, 0 <= n <= nmax) three ways: directly
/// from the nonlinear equation, through the bilinear system, and through the
/// axis-interchanged bilinear system.
pub fn pipeline_factored(
    mmax: i64,
    nmax: i64,
    delta_spec: &DeltaSpec,
) -> Result<FactoredPipeline, LatticeError> {
    let ct = boundary_transform(mmax, nmax, delta_spec);
    let direct = evolve_nonlinear_factored(&ct.nonlinear_boundary(mmax, nmax), mmax, nmax, None)?;
    let a_window =
        evolve_bilinear_factored(&ct.bilinear_boundary(mmax, nmax + 1), mmax, nmax + 1, None)?;
    let via_bilinear = w_from_a_factored(&a_window)?;
    let a_tilde_window =
        evolve_bilinear_tilde_factored(&ct.tilde_boundary(mmax, nmax), mmax, nmax, None)?;
    let via_tilde = w_from_a_tilde_factored(&a_tilde_window)?;
    Ok(FactoredPipeline {
        tables: ct,
        direct,
        via_bilinear,
        via_tilde,
        a_window,
        a_tilde_window,
    })
}

pub fn pipeline_windows(
    mmax: i64,
    nmax: i64,
    delta_spec: &DeltaSpec,
) -> Result<PipelineWindows, LatticeError> {
    let p = pipeline_factored(mmax, nmax, delta_spec)?;
    Ok(PipelineWindows {
        direct: p.direct.to_window()?,
        via_bilinear: p.via_bilinear.to_window()?,
        via_tilde: p.via_tilde.to_window()?,
    })
}

/// First cell where the two windows are both defined but disagree.
pub fn first_mismatch(a: &LatticeWindow, b: &LatticeWindow) -> Option<(i64, i64)> {
    for (key, va) in a.iter() {
        if let Some(vb) = b.get(key.0, key.1) {
            if va != vb {
                return Some(*key);
            }
        }
    }
    None
}

/// First interior cell where the bilinear equation fails to hold exactly.
pub fn bilinear_residual(
    a: &FactoredWindow,
    delta: &RationalFunction,
) -> Result<Option<(i64, i64)>, LatticeError> {
    let one = FactoredRational::one(a.vars());
    let delta = FactoredRational::from_rf(delta, &[]);
    let opd = delta.add(&one, &[]);
    for m in 1..=a.mmax {
        for n in 1..a.nmax {
            let cells = (
                a.get(m - 1, n - 1),
                a.get(m, n + 1),
                a.get(m - 1, n),
                a.get(m, n),
                a.get(m - 1, n + 1),
                a.get(m, n - 1),
            );
            if let (Some(dl), Some(up), Some(l), Some(c), Some(ul), Some(d)) = cells {
                let hints: Vec<MultiPoly> = dl
                    .factors()
                    .chain(up.factors())
                    .chain(l.factors())
                    .chain(c.factors())
                    .chain(ul.factors())
                    .chain(d.factors())
                    .map(|(p, _)| p.clone())
                    .collect();
                let lhs = opd.mul(&dl.mul(up));
                let rhs = l.mul(c).add(&delta.mul(&ul.mul(d)), &hints);
                if !lhs.sub(&rhs, &hints).is_zero() {
                    return Ok(Some((m, n + 1)));
                }
            }
        }
    }
    Ok(None)
}

/// First cell where the nonlinear equation fails to hold exactly.
pub fn nonlinear_residual(
    w: &FactoredWindow,
    delta: &RationalFunction,
) -> Result<Option<(i64, i64)>, LatticeError> {
    let one = FactoredRational::one(w.vars());
    let delta = FactoredRational::from_rf(delta, &[]);
    let coef = delta.div(&delta.add(&one, &[]))?;
    for m in 1..w.mmax {
        for n in 0..w.nmax {
            let cells = (
                w.get(m + 1, n + 1),
                w.get(m, n),
                w.get(m, n + 1),
                w.get(m + 1, n),
            );
            if let (Some(wne), Some(wc), Some(wn_), Some(we)) = cells {
                if wne.is_zero() || wc.is_zero() {
                    return Ok(Some((m + 1, n + 1)));
                }
                let hints: Vec<MultiPoly> = wne
                    .factors()
                    .chain(wc.factors())
                    .chain(wn_.factors())
                    .chain(we.factors())
                    .map(|(p, _)| p.clone())
                    .collect();
                let resid = wne
                    .inv()?
                    .sub(&wc.inv()?, &hints)
                    .add(&coef.mul(&wn_.sub(we, &hints)), &hints);
                if !resid.is_zero() {
                    return Ok(Some((m + 1, n + 1)));
                }
            }
        }
    }
    Ok(None)
}

/// First cell where the tilde bilinear equation fails to hold exactly.
pub fn tilde_residual(
    at: &FactoredWindow,
    delta_tilde: &RationalFunction,
) -> Result<Option<(i64, i64)>, LatticeError> {
    let one = FactoredRational::one(at.vars());
    let dt = FactoredRational::from_rf(delta_tilde, &[]);
    let opdt = dt.add(&one, &[]);
    for m in 1..at.mmax {
        for n in 1..=at.nmax {
            let cells = (
                at.get(m - 1, n - 1),
                at.get(m + 1, n),
                at.get(m + 1, n - 1),
                at.get(m - 1, n),
                at.get(m, n),
                at.get(m, n - 1),
            );
            if let (Some(dl), Some(r), Some(rd), Some(l), Some(c), Some(d)) = cells {
                let hints: Vec<MultiPoly> = dl
                    .factors()
                    .chain(r.factors())
                    .chain(rd.factors())
                    .chain(l.factors())
                    .chain(c.factors())
                    .chain(d.factors())
                    .map(|(p, _)| p.clone())
                    .collect();
                let lhs = opdt.mul(&dl.mul(r));
                let rhs = dt.mul(&rd.mul(l)).add(&c.mul(d), &hints);
                if !lhs.sub(&rhs, &hints).is_zero() {
                    return Ok(Some((m + 1, n)));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// numeric sweeps (oracles)
// ---------------------------------------------------------------------------

pub type NumericWindow = BTreeMap<(i64, i64), BigRational>;

/// Numeric bilinear sweep over exact rationals; the oracle for the symbolic
/// window.
pub fn numeric_bilinear(
    x: &[BigRational],
    y: &[BigRational],
    delta: &BigRational,
    mmax: i64,
    nmax: i64,
) -> Result<NumericWindow, LatticeError> {
    let one = BigRational::one();
    let opd = &one + delta;
    let mut w = NumericWindow::new();
    for m in 0..=mmax {
        w.insert((m, 0), one.clone());
    }
    if nmax >= 1 {
        w.insert((0, 1), one.clone());
        for m in 1..=mmax {
            w.insert((m, 1), x[(m - 1) as usize].clone());
        }
    }
    for n in 2..=nmax {
        w.insert((0, n), y[(n - 2) as usize].clone());
    }
    for n in 1..nmax {
        for m in 1..=mmax {
            let den = &opd * &w[&(m - 1, n - 1)];
            if den.is_zero() {
                return Err(LatticeError::ZeroDivision { m, n: n + 1 });
            }
            let num =
                &w[&(m - 1, n)] * &w[&(m, n)] + delta * &w[&(m - 1, n + 1)] * &w[&(m, n - 1)];
            w.insert((m, n + 1), num / den);
        }
    }
    Ok(w)
}

/// Numeric nonlinear sweep over exact rationals.
pub fn numeric_nonlinear(
    bottom: &[BigRational],
    left: &[BigRational],
    delta: &BigRational,
    mmax: i64,
    nmax: i64,
) -> Result<NumericWindow, LatticeError> {
    let one = BigRational::one();
    let coef = delta / (&one + delta);
    let mut w = NumericWindow::new();
    for m in 1..=mmax {
        w.insert((m, 0), bottom[(m - 1) as usize].clone());
    }
    for n in 0..=nmax {
        w.insert((1, n), left[n as usize].clone());
    }
    for n in 0..nmax {
        for m in 1..mmax {
            let wc = &w[&(m, n)];
            if wc.is_zero() {
                return Err(LatticeError::ZeroDivision { m, n });
            }
            let den = wc.recip() - &coef * (&w[&(m, n + 1)] - &w[&(m + 1, n)]);
            if den.is_zero() {
                return Err(LatticeError::ZeroDivision { m: m + 1, n: n + 1 });
            }
            w.insert((m + 1, n + 1), den.recip());
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_rational;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bilinear_first_interior_cell() {
        let bd = BilinearBoundary::symbolic(2, 2, &DeltaSpec::Symbolic);
        let w = evolve_bilinear(&bd, 2, 2, None).unwrap();
        // a_1^2 = (x_1 + delta y_2) / (1 + delta)
        let expect = parse_rational("(x1+delta*y2)/(1+delta)", &bd.vars).unwrap();
        assert_eq!(*w.get(1, 2).unwrap(), expect);
        // boundary passthrough
        assert_eq!(*w.get(2, 1).unwrap(), RationalFunction::var(&bd.vars, 1));
    }

    #[test]
    fn w_from_a_matches_paper_corner_values() {
        let bd = BilinearBoundary::symbolic(2, 2, &DeltaSpec::Symbolic);
        let a = evolve_bilinear(&bd, 2, 2, None).unwrap();
        let w = w_from_a(&a).unwrap();
        // w_1^0 = 1/x_1, w_2^0 = x_1/x_2
        assert_eq!(
            *w.get(1, 0).unwrap(),
            parse_rational("1/x1", &bd.vars).unwrap()
        );
        assert_eq!(
            *w.get(2, 0).unwrap(),
            parse_rational("x1/x2", &bd.vars).unwrap()
        );
    }

    #[test]
    fn residuals_vanish_identically() {
        let bd = BilinearBoundary::symbolic(3, 3, &DeltaSpec::Symbolic);
        let a = evolve_bilinear_factored(&bd, 3, 3, None).unwrap();
        assert_eq!(bilinear_residual(&a, &bd.delta).unwrap(), None);
        let w = w_from_a_factored(&a).unwrap();
        assert_eq!(nonlinear_residual(&w, &bd.delta).unwrap(), None);
    }

    #[test]
    fn delta_tilde_is_an_involution() {
        let vt = VarTable::new(&["delta"]);
        let d = RationalFunction::var(&vt, 0);
        let dt = delta_tilde_of(&d);
        let dtdt = delta_tilde_of(&dt);
        assert_eq!(dtdt, d);
    }

    #[test]
    fn nonlinear_delta_zero_degenerates() {
        // at delta = 0 the equation collapses to w_{m+1}^{n+1} = w_m^n
        let bottom = vec![rat(3, 2), rat(5, 7), rat(2, 1)];
        let left = vec![rat(3, 2), rat(4, 3), rat(9, 5)];
        let w = numeric_nonlinear(&bottom, &left, &BigRational::zero(), 3, 2).unwrap();
        assert_eq!(w[&(2, 1)], w[&(1, 0)]);
        assert_eq!(w[&(3, 2)], w[&(2, 1)]);
    }

    #[test]
    fn correspondence_identities() {
        let ct = boundary_transform(4, 4, &DeltaSpec::Symbolic);
        // alpha_k = y_k / y_{k+1} with y_1 = 1
        let one = RationalFunction::one(&ct.vars);
        for k in 1..=3usize {
            let yk = if k == 1 { &one } else { &ct.y[k - 2] };
            let yk1 = &ct.y[k - 1];
            assert_eq!(ct.alpha[k - 1], yk.div(yk1).unwrap());
        }
        // beta_k = y_k^2 / (y_{k-1} y_{k+1}) with y_0 = y_1 = 1
        for k in 1..=3usize {
            let yk = if k == 1 { &one } else { &ct.y[k - 2] };
            let ykm1 = if k <= 2 { &one } else { &ct.y[k - 3] };
            let yk1 = &ct.y[k - 1];
            let expect = yk.mul(yk).div(&ykm1.mul(yk1)).unwrap();
            assert_eq!(ct.beta[k - 1], expect);
        }
        // gamma_j = -(1/delta) w_1^j beta_j, compared in cleared form
        for j in 1..=3usize {
            let w1j = RationalFunction::var(&ct.vars, ct.x.len() + j - 1);
            let raw = w1j.mul(&ct.beta[j - 1]).div(&ct.delta).unwrap().neg();
            let cleared = raw.num().primitive_part().unwrap().normalize_sign();
            assert_eq!(ct.gamma[j - 1], cleared);
        }
        // gamma~_j = -(1/d~) w_j^0 beta~_j in cleared form
        for j in 1..=3usize {
            let wj0 = RationalFunction::var(&ct.vars, j - 1);
            let raw = wj0
                .mul(&ct.beta_tilde[j - 1])
                .div(&ct.delta_tilde)
                .unwrap()
                .neg();
            let cleared = raw.num().primitive_part().unwrap().normalize_sign();
            assert_eq!(ct.gamma_tilde[j - 1], cleared);
        }
        // x_1 = 1/w_1^0 and y_2 = 1/beta_1
        assert_eq!(ct.x[0], RationalFunction::var(&ct.vars, 0).inv().unwrap());
        assert_eq!(ct.y[0], ct.beta[0].inv().unwrap());
    }

    #[test]
    fn pipelines_agree_on_a_small_window() {
        let p = pipeline_windows(3, 2, &DeltaSpec::Symbolic).unwrap();
        assert_eq!(first_mismatch(&p.direct, &p.via_bilinear), None);
        assert_eq!(first_mismatch(&p.direct, &p.via_tilde), None);
        assert!(p.via_tilde.get(2, 1).is_some());
    }

    #[test]
    fn numeric_delta_pipeline_also_agrees() {
        let p = pipeline_windows(3, 2, &DeltaSpec::Numeric(rat(1, 3))).unwrap();
        assert_eq!(first_mismatch(&p.direct, &p.via_bilinear), None);
        assert_eq!(first_mismatch(&p.direct, &p.via_tilde), None);
    }
}
