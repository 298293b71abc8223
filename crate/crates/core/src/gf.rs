//! Generating functions of the classes `A^{h_pi,>=}`.
//!
//! Every class obeys the same system: for `k > r`,
//!
//! ```text
//! A_k = p * A_{k-1} * (q + A_0 + A_1 + ... + A_k)
//! ```
//!
//! with the levels `A_0 ..= A_r` given. The partial sums
//! `B_k = A_0 + ... + A_k` then follow a Möbius recurrence
//! `B_k = (a + b B_{k-1}) / (c + d B_{k-1})` whose coefficients depend only
//! on `p`, `q`, `u = A_r` and `v = A_0 + ... + A_{r-1}`, and the full sum
//! `A` is the power-series root of `d A^2 + (c - b) A - a`.
//!
//! | family       | p     | q          |
//! |--------------|-------|------------|
//! | Dyck         | `x`   | `0`        |
//! | Motzkin      | `x^2` | `0`        |
//! | skew Dyck    | `x`   | `1`        |
//! | skew Motzkin | `x^2` | `x A_0 + 1`|
//!
//! Three independent routes to `A` are provided: direct iteration of the
//! system, the quadratic fixed point, and (for `q = 0` and `q = 1`) the
//! explicit radical forms.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::enumerate::{count_class, EnumerateError, DEFAULT_PATH_BUDGET};
use crate::paths::{Family, Pattern, SizeUnit};
use crate::series::{Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("system did not settle after {0} iterations")]
    NoConvergence(usize),
    #[error("c - b has zero constant term; the quadratic has no unique series root")]
    NonUnitLinearCoefficient,
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("{what} disagree at x^{index}: {left} vs {right}")]
    ConsistencyFailure {
        what: &'static str,
        index: usize,
        left: String,
        right: String,
    },
}

/// Data of the system: `p`, `q`, the anchor `r` and the given levels
/// `A_0 ..= A_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub p: Series,
    pub q: Series,
    pub r: usize,
    pub bases: Vec<Series>,
}

impl SystemSpec {
    /// `u = A_r`.
    pub fn u(&self) -> &Series {
        &self.bases[self.r]
    }

    /// `v = A_0 + ... + A_{r-1}`.
    pub fn v(&self) -> Series {
        let order = self.order();
        self.bases[..self.r]
            .iter()
            .fold(Series::zero(order), |acc, s| &acc + s)
    }

    /// Smallest order among the inputs.
    pub fn order(&self) -> usize {
        self.bases
            .iter()
            .map(Series::order)
            .chain([self.p.order(), self.q.order()])
            .min()
            .unwrap_or(0)
    }

    fn check(&self) -> Result<(), GfError> {
        if self.bases.len() != self.r + 1 {
            return Err(GfError::InvalidSystem(format!(
                "anchor r = {} needs {} base levels, got {}",
                self.r,
                self.r + 1,
                self.bases.len()
            )));
        }
        match self.p.valuation() {
            Some(0) => Err(GfError::InvalidSystem("p must have zero constant term".into())),
            _ => Ok(()),
        }
    }
}

/// Levels `A_0, A_1, ...` and partial sums `B_0, B_1, ...` of a solved
/// system. Levels past the last stored one are zero at the working order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSolution {
    levels: Vec<Series>,
    partial_sums: Vec<Series>,
}

impl SystemSolution {
    pub fn levels(&self) -> &[Series] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Series {
        self.levels
            .get(k)
            .cloned()
            .unwrap_or_else(|| Series::zero(self.total().order()))
    }

    /// `B_k`.
    pub fn partial_sum(&self, k: usize) -> &Series {
        let last = self.partial_sums.len() - 1;
        &self.partial_sums[k.min(last)]
    }

    /// `A = lim B_k`.
    pub fn total(&self) -> &Series {
        self.partial_sums.last().expect("at least one level")
    }
}

/// Solves the system level by level at `order`.
///
/// Each new level is isolated as
/// `A_k = p A_{k-1} (q + B_{k-1}) / (1 - p A_{k-1})`; the denominator is a
/// unit because `p(0) = 0`, and the valuation of `A_k` grows with `k`, so
/// the loop ends once a level vanishes.
pub fn iterate_system(spec: &SystemSpec, order: usize) -> Result<SystemSolution, GfError> {
    spec.check()?;
    if spec.order() < order {
        return Err(GfError::InvalidSystem(format!(
            "inputs are known to order {}, asked for {order}",
            spec.order()
        )));
    }
    let p = spec.p.truncate(order);
    let q = spec.q.truncate(order);
    let one = Series::one(order);
    let mut levels: Vec<Series> = spec.bases.iter().map(|b| b.truncate(order)).collect();
    let mut partial_sums = Vec::with_capacity(levels.len() + order + 1);
    let mut acc = Series::zero(order);
    for level in &levels {
        acc = &acc + level;
        partial_sums.push(acc.clone());
    }
    let limit = order + spec.r + 2;
    let mut prev = levels[spec.r].clone();
    let mut k = spec.r;
    while !prev.is_zero() {
        k += 1;
        if k > limit {
            return Err(GfError::NoConvergence(k));
        }
        let pa = &p * &prev;
        let next = (&pa * &(&q + &acc)).div(&(&one - &pa))?;
        if next.is_zero() {
            break;
        }
        acc = &acc + &next;
        partial_sums.push(acc.clone());
        levels.push(next.clone());
        prev = next;
    }
    Ok(SystemSolution {
        levels,
        partial_sums,
    })
}

/// Coefficients of the Möbius recurrence for the partial sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusCoeffs {
    pub a: Series,
    pub b: Series,
    pub c: Series,
    pub d: Series,
}

impl MoebiusCoeffs {
    /// `B -> (a + b B) / (c + d B)`.
    pub fn apply(&self, partial_sum: &Series) -> Result<Series, SeriesError> {
        Series::moebius(&self.a, &self.b, &self.c, &self.d, partial_sum)
    }

    /// `c - b`, the linear coefficient of the fixed-point quadratic.
    pub fn linear(&self) -> Series {
        &self.c - &self.b
    }

    pub fn order(&self) -> usize {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .map(|s| s.order())
            .min()
            .unwrap_or(0)
    }
}

/// ```text
/// a = p^2 q v (q + u + v) - p q u - u - v
/// b = -p (p q + 1) (q + v + u)
/// c = -p^2 v (q + u + v) - q p - p v - 1
/// d = p^2 (q + v + u)
/// ```
pub fn moebius_coeffs(p: &Series, q: &Series, u: &Series, v: &Series) -> MoebiusCoeffs {
    let order = [p.order(), q.order(), u.order(), v.order()]
        .into_iter()
        .min()
        .unwrap_or(0);
    let one = Series::one(order);
    let p2 = p * p;
    let quv = &(q + u) + v;
    let a = &(&(&(&(&p2 * q) * v) * &quv) - &(&(p * q) * u)) - &(u + v);
    let b = -(&(p * &(&(p * q) + &one)) * &quv);
    let c = &(&(&(-(&(&p2 * v) * &quv)) - &(q * p)) - &(p * v)) - &one;
    let d = &p2 * &quv;
    MoebiusCoeffs { a, b, c, d }
}

/// The power-series root of `d A^2 + (c - b) A - a` at `order`, found by
/// the fixed-point sweep `A <- (a - d A^2) / (c - b)`.
pub fn solve_quadratic(coeffs: &MoebiusCoeffs, order: usize) -> Result<Series, GfError> {
    let a = coeffs.a.truncate(order);
    let d = coeffs.d.truncate(order);
    let linear = coeffs.linear().truncate(order);
    if linear.coeff(0).is_zero() {
        return Err(GfError::NonUnitLinearCoefficient);
    }
    let seed = a.coeff(0) / linear.coeff(0);
    let mut root = Series::constant(seed, order);
    for _ in 0..=order + 1 {
        let next = (&a - &(&d * &(&root * &root))).div(&linear)?;
        if next == root {
            return Ok(root);
        }
        root = next;
    }
    Err(GfError::NoConvergence(order + 2))
}

/// `d A^2 + (c - b) A - a`; identically zero for the class series.
pub fn residual(coeffs: &MoebiusCoeffs, total: &Series) -> Series {
    let order = coeffs.order().min(total.order());
    let a = total.truncate(order);
    &(&(&coeffs.d.truncate(order) * &(&a * &a)) + &(&coeffs.linear().truncate(order) * &a))
        - &coeffs.a.truncate(order)
}

fn small(n: i64, order: usize) -> Series {
    Series::constant(BigRational::from_integer(n.into()), order)
}

/// Radical form for `q = 0` in the variable `t` (`t = x` for Dyck paths,
/// `t = x^2` for Motzkin paths), with `u`, `v` left as they are:
///
/// ```text
/// A = (t^2 u v + t^2 v^2 - u t + 1 - sqrt(Delta)) / (2 t^2 (v + u))
/// ```
///
/// The division by `t^2` costs `2 * valuation(t)` coefficients: the result
/// has order `order - 2 * valuation(t)`.
pub fn dyck_closed_form_in(t: &Series, u: &Series, v: &Series, order: usize) -> Result<Series, GfError> {
    let (t, u, v) = (t.truncate(order), u.truncate(order), v.truncate(order));
    let (t2, t3, t4) = (t.pow(2), t.pow(3), t.pow(4));
    let (u2, v2) = (u.pow(2), v.pow(2));
    let uv = &u * &v;
    let term = |k: i64, s: Series| s.scale(&BigRational::from_integer(k.into()));
    let delta = [
        term(1, &(&u2 * &v2) * &t4),
        term(2, &(&uv * &v2) * &t4),
        term(1, &v2.pow(2) * &t4),
        term(-2, &(&u2 * &v) * &t3),
        term(-2, &(&u * &v2) * &t3),
        term(-3, &u2 * &t2),
        term(-6, &t2 * &uv),
        term(-2, &t2 * &v2),
        term(-2, &u * &t),
        small(1, order),
    ]
    .into_iter()
    .fold(Series::zero(order), |acc, s| &acc + &s);
    let num = [
        &t2 * &uv,
        &t2 * &v2,
        -(&u * &t),
        small(1, order),
        -delta.sqrt()?,
    ]
    .into_iter()
    .fold(Series::zero(order), |acc, s| &acc + &s);
    let den = term(2, &t2 * &(&v + &u));
    Ok(num.div(&den)?)
}

/// [`dyck_closed_form_in`] with `t = x`.
pub fn dyck_closed_form(u: &Series, v: &Series, order: usize) -> Result<Series, GfError> {
    dyck_closed_form_in(&Series::x_pow(1, order), u, v, order)
}

/// Radical form for `q = 1` in the variable `t`:
///
/// ```text
/// A = (u v t^2 + v^2 t^2 - t^2 u - t u - t^2 + 1 - sqrt(Delta)) / (2 t^2 (1 + v + u))
/// ```
///
/// with the 25-term discriminant written out below. Same precision loss as
/// [`dyck_closed_form_in`].
pub fn skew_closed_form_in(t: &Series, u: &Series, v: &Series, order: usize) -> Result<Series, GfError> {
    let (t, u, v) = (t.truncate(order), u.truncate(order), v.truncate(order));
    let (t2, t3, t4) = (t.pow(2), t.pow(3), t.pow(4));
    let (u2, v2, v3) = (u.pow(2), v.pow(2), v.pow(3));
    let uv = &u * &v;
    let term = |k: i64, s: Series| s.scale(&BigRational::from_integer(k.into()));
    let delta = [
        term(1, &(&u2 * &v2) * &t4),
        term(2, &(&u * &v3) * &t4),
        term(1, &v2.pow(2) * &t4),
        term(2, &(&u2 * &v) * &t4),
        term(6, &(&u * &v2) * &t4),
        term(4, &v3 * &t4),
        term(-2, &(&u2 * &v) * &t3),
        term(1, &u2 * &t4),
        term(-2, &(&u * &v2) * &t3),
        term(6, &uv * &t4),
        term(6, &v2 * &t4),
        term(-2, &t3 * &u2),
        term(-4, &uv * &t3),
        term(2, &u * &t4),
        term(4, &v * &t4),
        term(-3, &u2 * &t2),
        term(-6, &uv * &t2),
        term(-2, &u * &t3),
        term(-2, &v2 * &t2),
        term(1, t4.clone()),
        term(-6, &t2 * &u),
        term(-4, &v * &t2),
        term(-2, &t * &u),
        term(-2, t2.clone()),
        small(1, order),
    ]
    .into_iter()
    .fold(Series::zero(order), |acc, s| &acc + &s);
    let num = [
        &uv * &t2,
        &v2 * &t2,
        -(&t2 * &u),
        -(&t * &u),
        -t2.clone(),
        small(1, order),
        -delta.sqrt()?,
    ]
    .into_iter()
    .fold(Series::zero(order), |acc, s| &acc + &s);
    let den = term(2, &t2 * &(&(&small(1, order) + &v) + &u));
    Ok(num.div(&den)?)
}

/// [`skew_closed_form_in`] with `t = x`.
pub fn skew_closed_form(u: &Series, v: &Series, order: usize) -> Result<Series, GfError> {
    skew_closed_form_in(&Series::x_pow(1, order), u, v, order)
}

/// Where the given levels `A_0 ..= A_r` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BaseSource {
    /// Exhaustive enumeration (works for every pattern).
    #[default]
    Oracle,
    /// Known rational forms; only Dyck paths with `UUD` or `DUU`.
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GfOptions {
    pub budget: u64,
    pub bases: BaseSource,
}

impl Default for GfOptions {
    fn default() -> Self {
        GfOptions {
            budget: DEFAULT_PATH_BUDGET,
            bases: BaseSource::Oracle,
        }
    }
}

/// Default truncation order: 11 for semilength families, 12 otherwise.
pub fn default_order(family: Family) -> usize {
    match family.size_unit() {
        SizeUnit::Semilength => 11,
        SizeUnit::StepCount => 12,
    }
}

/// Level at which the system is anchored: the amplitude, but at least 1.
///
/// For `F^k` (amplitude 0) level 1 is not produced by the recurrence from
/// level 0: a level-0 `alpha` that avoids the pattern gives a level-0
/// `U alpha D`. Anchoring at 1 restores the recurrence for `k >= 2`.
pub fn anchor_level(pattern: &Pattern) -> usize {
    pattern.amplitude().max(1) as usize
}

/// `p(x)` of the family.
pub fn family_p(family: Family, order: usize) -> Series {
    match family.size_unit() {
        SizeUnit::Semilength => Series::x_pow(1, order),
        SizeUnit::StepCount => Series::x_pow(2, order),
    }
}

/// `q(x)` of the family; skew Motzkin paths need `A_0`.
pub fn family_q(family: Family, level_zero: &Series) -> Series {
    let order = level_zero.order();
    match family {
        Family::Dyck | Family::Motzkin => Series::zero(order),
        Family::SkewDyck => Series::one(order),
        Family::SkewMotzkin => &level_zero.shift_up(1) + &Series::one(order),
    }
}

/// `A_0` and `A_2` for Dyck paths and `UUD`: `1/(1-x)` and
/// `x^2 / ((x-1)(x^2+x-1))`.
pub fn uud_base_levels(order: usize) -> Result<[Series; 2], SeriesError> {
    Ok([
        Series::rational_function(&[1], &[1, -1], order)?,
        Series::rational_function(&[0, 0, 1], &[1, -2, 0, 1], order)?,
    ])
}

/// `A_0` and `A_2` for Dyck paths and `DUU`: `(x-1)/(2x-1)` and
/// `x^3 / (2x-1)^2`.
///
/// A level-2 member is `U alpha D U beta D (UD)^k` with `alpha` an avoider
/// and `beta` a nonempty avoider; the factor `x^2 A_0 (A_0 - 1)` alone,
/// i.e. `x^3 (1-x) / (2x-1)^2`, drops the `(UD)^k` tail (it has 3 paths
/// at semilength 4 where there are 4: `UUDDUUDD`, `UDUUUDDD`, `UDUUDUDD`,
/// `UDUUDDUD`).
pub fn duu_base_levels(order: usize) -> Result<[Series; 2], SeriesError> {
    Ok([
        Series::rational_function(&[-1, 1], &[-1, 2], order)?,
        Series::rational_function(&[0, 0, 0, 1], &[1, -4, 4], order)?,
    ])
}

/// Builds the system of a class at `order`.
pub fn class_system(
    family: Family,
    pattern: &Pattern,
    order: usize,
    options: GfOptions,
) -> Result<SystemSpec, GfError> {
    let r = anchor_level(pattern);
    let bases = match (options.bases, family, pattern.to_string().as_str()) {
        (BaseSource::ClosedForm, Family::Dyck, word @ ("UUD" | "DUU")) => {
            let [zero, top] = if word == "UUD" {
                uud_base_levels(order)?
            } else {
                duu_base_levels(order)?
            };
            vec![zero, Series::zero(order), top]
        }
        (BaseSource::ClosedForm, ..) => {
            return Err(GfError::InvalidSystem(format!(
                "no closed-form base levels for {pattern} on {family} paths"
            )))
        }
        (BaseSource::Oracle, ..) => {
            let table = count_class(family, pattern, order, options.budget)?;
            (0..=r as u32).map(|k| table.level_series(k)).collect()
        }
    };
    Ok(SystemSpec {
        p: family_p(family, order),
        q: family_q(family, &bases[0]),
        r,
        bases,
    })
}

/// Generating functions of one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGf {
    pub family: Family,
    pub pattern: Pattern,
    pub system: SystemSpec,
    pub coeffs: MoebiusCoeffs,
    pub solution: SystemSolution,
}

impl ClassGf {
    /// `A(x)`.
    pub fn total(&self) -> &Series {
        self.solution.total()
    }

    /// `A_k(x)`.
    pub fn level(&self, k: usize) -> Series {
        self.solution.level(k)
    }

    pub fn u(&self) -> &Series {
        self.system.u()
    }

    pub fn v(&self) -> Series {
        self.system.v()
    }

    pub fn order(&self) -> usize {
        self.total().order()
    }

    /// Coefficients of `A` for sizes `1..=order`.
    pub fn counts(&self) -> Vec<u64> {
        self.total().to_counts().expect("class series has count coefficients")[1..].to_vec()
    }
}

/// Solves an explicit system by iteration and checks the result against
/// the quadratic root.
pub fn solve_class_system(
    family: Family,
    pattern: &Pattern,
    system: SystemSpec,
    order: usize,
) -> Result<ClassGf, GfError> {
    let solution = iterate_system(&system, order)?;
    let coeffs = moebius_coeffs(&system.p, &system.q, system.u(), &system.v());
    let root = solve_quadratic(&coeffs, order)?;
    ensure_equal("iterated and quadratic series", solution.total(), &root)?;
    Ok(ClassGf {
        family,
        pattern: pattern.clone(),
        system,
        coeffs,
        solution,
    })
}

/// `A(x)` and its levels for a family and pattern, to `order`.
pub fn class_gf(
    family: Family,
    pattern: &Pattern,
    order: usize,
    options: GfOptions,
) -> Result<ClassGf, GfError> {
    let system = class_system(family, pattern, order, options)?;
    solve_class_system(family, pattern, system, order)
}

/// Coefficientwise equality on the common order, as a typed error.
pub fn ensure_equal(what: &'static str, left: &Series, right: &Series) -> Result<(), GfError> {
    let order = left.order().min(right.order());
    match (0..=order).find(|&i| left.coeff(i) != right.coeff(i)) {
        None => Ok(()),
        Some(index) => Err(GfError::ConsistencyFailure {
            what,
            index,
            left: left.coeff(index).to_string(),
            right: right.coeff(index).to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ints(values: &[i64], order: usize) -> Series {
        Series::from_integers(values, order)
    }

    fn pat(w: &str) -> Pattern {
        Pattern::parse(w).unwrap()
    }

    const MOTZKIN: [i64; 13] = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798, 15511];

    fn dyck_prototype(order: usize) -> SystemSpec {
        SystemSpec {
            p: Series::x_pow(1, order),
            q: Series::zero(order),
            r: 0,
            bases: vec![Series::one(order)],
        }
    }

    #[test]
    fn prototype_system_gives_motzkin_numbers() {
        let sol = iterate_system(&dyck_prototype(12), 12).unwrap();
        assert_eq!(sol.total(), &ints(&MOTZKIN, 12));
    }

    #[test]
    fn zero_anchor_propagates() {
        let mut spec = dyck_prototype(8);
        spec.bases = vec![Series::zero(8)];
        let sol = iterate_system(&spec, 8).unwrap();
        assert!(sol.total().is_zero());
        assert_eq!(sol.levels().len(), 1);
    }

    #[test]
    fn rejects_unit_p_and_bad_anchor() {
        let mut spec = dyck_prototype(4);
        spec.p = Series::one(4);
        assert!(matches!(iterate_system(&spec, 4), Err(GfError::InvalidSystem(_))));
        let mut spec = dyck_prototype(4);
        spec.r = 2;
        assert!(matches!(iterate_system(&spec, 4), Err(GfError::InvalidSystem(_))));
        assert!(iterate_system(&dyck_prototype(4), 5).is_err());
    }

    #[test]
    fn coefficient_specializations() {
        let n = 6;
        let u = ints(&[0, 1, 1, 1], n);
        let v = ints(&[1, 2], n);
        let zero = Series::zero(n);
        let c = moebius_coeffs(&zero, &ints(&[1, 1], n), &u, &v);
        assert_eq!(c.a, -(&u + &v));
        assert!(c.b.is_zero() && c.d.is_zero());
        assert_eq!(c.c, ints(&[-1], n));

        let p = Series::x_pow(1, n);
        let c = moebius_coeffs(&p, &zero, &u, &v);
        let uv = &u + &v;
        assert_eq!(c.a, -uv.clone());
        assert_eq!(c.b, -(&p * &uv));
        assert_eq!(c.c, &(&(-(&(&(&p * &p) * &v) * &uv)) - &(&p * &v)) - &Series::one(n));
        assert_eq!(c.d, &(&p * &p) * &uv);
    }

    #[test]
    fn quadratic_linear_case() {
        let s = ints(&[1, 4, 9], 5);
        let coeffs = MoebiusCoeffs {
            a: -s.clone(),
            b: Series::zero(5),
            c: ints(&[-1], 5),
            d: Series::zero(5),
        };
        assert_eq!(solve_quadratic(&coeffs, 5).unwrap(), s);
        let degenerate = MoebiusCoeffs {
            c: Series::zero(5),
            ..coeffs
        };
        assert_eq!(
            solve_quadratic(&degenerate, 5),
            Err(GfError::NonUnitLinearCoefficient)
        );
    }

    #[test]
    fn quadratic_matches_prototype() {
        let spec = dyck_prototype(12);
        let coeffs = moebius_coeffs(&spec.p, &spec.q, spec.u(), &spec.v());
        assert_eq!(solve_quadratic(&coeffs, 12).unwrap(), ints(&MOTZKIN, 12));
    }

    #[test]
    fn moebius_maps_b1_to_b2_for_height() {
        // Dyck paths, pattern U: A_0 = 1, A_1 = x/(1-x).
        let n = 10;
        let u = Series::rational_function(&[0, 1], &[1, -1], n).unwrap();
        let spec = SystemSpec {
            p: Series::x_pow(1, n),
            q: Series::zero(n),
            r: 1,
            bases: vec![Series::one(n), u],
        };
        let sol = iterate_system(&spec, n).unwrap();
        let coeffs = moebius_coeffs(&spec.p, &spec.q, spec.u(), &spec.v());
        assert_eq!(&coeffs.apply(sol.partial_sum(1)).unwrap(), sol.partial_sum(2));
        assert_eq!(sol.total(), &ints(&MOTZKIN[..11], n));
    }

    #[test]
    fn residual_detects_perturbation() {
        let spec = dyck_prototype(9);
        let coeffs = moebius_coeffs(&spec.p, &spec.q, spec.u(), &spec.v());
        let root = solve_quadratic(&coeffs, 9).unwrap();
        assert!(residual(&coeffs, &root).is_zero());
        let mut bad = root.clone();
        bad.set_coeff(4, bad.coeff(4) + BigRational::one());
        assert!(!residual(&coeffs, &bad).is_zero());
    }

    #[test]
    fn closed_forms_for_height() {
        let n = 12;
        let u = Series::rational_function(&[0, 1], &[1, -1], n).unwrap();
        let a = dyck_closed_form(&u, &Series::one(n), n).unwrap();
        assert_eq!(a.order(), n - 2);
        assert_eq!(a, ints(&MOTZKIN[..11], n - 2));
    }

    #[test]
    fn degenerate_closed_form_matches_quadratic() {
        let n = 10;
        let (u, v) = (Series::zero(n), Series::one(n));
        let closed = dyck_closed_form(&u, &v, n).unwrap();
        let coeffs = moebius_coeffs(&Series::x_pow(1, n), &Series::zero(n), &u, &v);
        let root = solve_quadratic(&coeffs, n).unwrap();
        assert_eq!(closed, root.truncate(n - 2));
    }

    #[test]
    fn closed_form_base_levels() {
        let [a0, a2] = uud_base_levels(6).unwrap();
        assert_eq!(a0, ints(&[1; 7], 6));
        assert_eq!(a2, ints(&[0, 0, 1, 2, 4, 7, 12], 6));
        let [b0, b2] = duu_base_levels(7).unwrap();
        assert_eq!(b0, ints(&[1, 1, 2, 4, 8, 16, 32, 64], 7));
        assert_eq!(b2, ints(&[0, 0, 0, 1, 4, 12, 32, 80], 7));
    }

    #[test]
    fn class_examples() {
        let opts = GfOptions::default();
        let gf = class_gf(Family::Motzkin, &pat("UD"), 9, opts).unwrap();
        assert_eq!(gf.counts(), [1, 2, 3, 7, 13, 29, 61, 138, 308]);
        let gf = class_gf(Family::Dyck, &pat("DU"), 9, opts).unwrap();
        assert_eq!(gf.counts(), [1, 2, 4, 8, 17, 39, 94, 233, 588]);
        let gf = class_gf(Family::Motzkin, &pat("F"), 9, opts).unwrap();
        assert_eq!(gf.counts(), [1, 2, 4, 8, 17, 36, 78, 170, 374]);
    }

    #[test]
    fn closed_form_bases_agree_with_oracle() {
        for word in ["UUD", "DUU"] {
            let oracle = class_gf(Family::Dyck, &pat(word), 9, GfOptions::default()).unwrap();
            let closed = class_gf(
                Family::Dyck,
                &pat(word),
                9,
                GfOptions {
                    bases: BaseSource::ClosedForm,
                    ..GfOptions::default()
                },
            )
            .unwrap();
            assert_eq!(oracle.total(), closed.total());
        }
        let err = class_system(
            Family::Motzkin,
            &pat("UUD"),
            5,
            GfOptions {
                bases: BaseSource::ClosedForm,
                ..GfOptions::default()
            },
        );
        assert!(matches!(err, Err(GfError::InvalidSystem(_))));
    }
}
