//! Named pass/fail checks over a solved class, shared by the CLI `verify`
//! command and the test suites.

use std::fmt;

use crate::enumerate::ClassCountTable;
use crate::gf::{
    dyck_closed_form_in, ensure_equal, family_p, iterate_system, residual, skew_closed_form_in,
    solve_quadratic, ClassGf, GfError, SystemSpec,
};
use crate::paths::Family;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_result(name: String, result: Result<String, String>) -> Check {
        match result {
            Ok(detail) => Check {
                name,
                passed: true,
                detail,
            },
            Err(detail) => Check {
                name,
                passed: false,
                detail,
            },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn label(gf: &ClassGf) -> String {
    format!("{}/{}", gf.family, gf.pattern)
}

/// Totals and every level of the series against exhaustive counts, on
/// sizes `0..=min(order, max_size)`.
pub fn oracle_agreement(gf: &ClassGf, table: &ClassCountTable) -> Check {
    let upto = gf.order().min(table.max_size);
    let levels = (table.max_level() as usize).max(gf.solution.levels().len());
    let result = (|| {
        for n in 0..=upto {
            let series_total = gf.total().coeff(n);
            let count = table.total(n);
            if *series_total != num_rational::BigRational::from_integer(count.into()) {
                return Err(format!("total at n={n}: series {series_total}, oracle {count}"));
            }
            for k in 0..=levels {
                let s = gf.level(k);
                let c = table.count(n, k as u32);
                if *s.coeff(n) != num_rational::BigRational::from_integer(c.into()) {
                    return Err(format!("A_{k} at n={n}: series {}, oracle {c}", s.coeff(n)));
                }
            }
        }
        Ok(format!("sizes 0..={upto}, levels 0..={levels}"))
    })();
    Check::from_result(format!("{} oracle vs series", label(gf)), result)
}

/// The quadratic residual vanishes for the iterated series and for the
/// quadratic root.
pub fn residual_check(gf: &ClassGf) -> Check {
    let result = (|| {
        if !residual(&gf.coeffs, gf.total()).is_zero() {
            return Err("iterated series leaves a nonzero residual".to_string());
        }
        let root = solve_quadratic(&gf.coeffs, gf.order()).map_err(|e| e.to_string())?;
        if !residual(&gf.coeffs, &root).is_zero() {
            return Err("quadratic root leaves a nonzero residual".to_string());
        }
        Ok(format!("order {}", gf.order()))
    })();
    Check::from_result(format!("{} quadratic residual", label(gf)), result)
}

/// `B_k = (a + b B_{k-1}) / (c + d B_{k-1})` for `k = r+1 ..= r+steps`.
pub fn moebius_step_check(gf: &ClassGf, steps: usize) -> Check {
    let r = gf.system.r;
    let result = (|| {
        for k in r + 1..=r + steps {
            let next = gf
                .coeffs
                .apply(gf.solution.partial_sum(k - 1))
                .map_err(|e| e.to_string())?;
            ensure_equal("Möbius step and iteration", &next, gf.solution.partial_sum(k))
                .map_err(|e| format!("k={k}: {e}"))?;
        }
        Ok(format!("k = {}..={}", r + 1, r + steps))
    })();
    Check::from_result(format!("{} Möbius step law", label(gf)), result)
}

/// Number of coefficients a radical form loses for this family.
pub fn closed_form_loss(family: Family) -> usize {
    2 * family_p(family, 2).valuation().unwrap_or(1)
}

/// Evaluates the radical form matching the family (`q = 0` for Dyck and
/// Motzkin paths, `q = 1` for skew Dyck paths) on the system's `u`, `v`.
/// `None` for skew Motzkin paths, whose `q` is not constant.
pub fn closed_form(system: &SystemSpec, family: Family) -> Option<Result<Series, GfError>> {
    let order = system.order();
    let t = family_p(family, order);
    match family {
        Family::Dyck | Family::Motzkin => Some(dyck_closed_form_in(&t, system.u(), &system.v(), order)),
        Family::SkewDyck => Some(skew_closed_form_in(&t, system.u(), &system.v(), order)),
        Family::SkewMotzkin => None,
    }
}

/// Lifts the base levels to exact polynomials of order
/// `target + closed_form_loss`, then compares the radical form with the
/// iterated system to `target`.
pub fn closed_form_agreement(gf: &ClassGf, target: usize) -> Option<Check> {
    let family = gf.family;
    let lifted_order = target + closed_form_loss(family);
    let lifted = SystemSpec {
        p: family_p(family, lifted_order),
        q: gf.system.q.extend_as_polynomial(lifted_order),
        r: gf.system.r,
        bases: gf
            .system
            .bases
            .iter()
            .map(|b| b.extend_as_polynomial(lifted_order))
            .collect(),
    };
    let closed = closed_form(&lifted, family)?;
    let result = (|| {
        let closed = closed.map_err(|e| e.to_string())?;
        let iterated = iterate_system(&lifted, lifted_order).map_err(|e| e.to_string())?;
        if closed.order() < target {
            return Err(format!("radical form only known to order {}", closed.order()));
        }
        ensure_equal("radical form and iteration", &closed, &iterated.total().truncate(target))
            .map_err(|e| e.to_string())?;
        Ok(format!("order {target}"))
    })();
    Some(Check::from_result(format!("{} radical form", label(gf)), result))
}
