use latpath::checks::{closed_form_agreement, moebius_step_check, oracle_agreement, residual_check, Check};
use latpath::gf::solve_class_system;
use latpath::{
    check_phi, class_gf, count_class, verify_complement_symmetry, BijectionError, Family, GfOptions,
    Pattern, PatternPair,
};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::{Failure, VerifyLevel};

pub struct Settings {
    pub level: VerifyLevel,
    pub families: Vec<Family>,
    pub phi_steps: usize,
    pub budget: u64,
    pub corrupt_base: bool,
}

/// Pattern lengths and sizes of the reference tables.
fn scope(family: Family) -> (usize, usize) {
    match family {
        Family::Dyck => (3, 9),
        Family::Motzkin | Family::SkewDyck => (2, 9),
        Family::SkewMotzkin => (1, 11),
    }
}

const MOEBIUS_STEPS: usize = 5;
const CLOSED_FORM_ORDER: usize = 12;

fn class_checks(family: Family, pattern: &Pattern, n: usize, s: &Settings, corrupt: bool) -> Result<Vec<Check>, Failure> {
    let options = GfOptions {
        budget: s.budget,
        ..GfOptions::default()
    };
    let mut gf = class_gf(family, pattern, n, options)?;
    if corrupt {
        let base = &mut gf.system.bases[0];
        let bumped = base.coeff(2) + BigRational::from_integer(1.into());
        base.set_coeff(2, bumped);
        gf = solve_class_system(family, pattern, gf.system, n)?;
    }
    let table = count_class(family, pattern, n, s.budget)?;
    let mut checks = vec![
        oracle_agreement(&gf, &table),
        residual_check(&gf),
        moebius_step_check(&gf, MOEBIUS_STEPS),
    ];
    if s.level >= VerifyLevel::Full {
        checks.extend(closed_form_agreement(&gf, CLOSED_FORM_ORDER));
    }
    Ok(checks)
}

fn symmetry_checks(family: Family, pi: &Pattern, n: usize, s: &Settings) -> Result<Vec<Check>, Failure> {
    let pair = PatternPair::new(pi.clone()).map_err(BijectionError::from)?;
    let options = GfOptions {
        budget: s.budget,
        ..GfOptions::default()
    };
    let equal = verify_complement_symmetry(family, pi, n, options)?;
    let mut checks = vec![Check {
        name: format!("{family}/{} and {} same series", pair.pi, pair.sigma),
        passed: equal,
        detail: format!("order {n}"),
    }];
    if s.level >= VerifyLevel::Full {
        let report = check_phi(family, pi, s.phi_steps, s.budget)?;
        let detail = match report.failures.first() {
            Some(first) => format!("{} failures, first: {first}", report.failures.len()),
            None => format!(
                "{} paths onto {} up to {} steps",
                report.mapped, report.codomain, s.phi_steps
            ),
        };
        checks.push(Check {
            name: format!("{family}/{} phi bijection onto {}", pair.pi, pair.sigma),
            passed: report.is_bijection(),
            detail,
        });
    }
    Ok(checks)
}

pub fn run(s: &Settings) -> Result<Vec<Check>, Failure> {
    if s.level == VerifyLevel::None {
        return Ok(Vec::new());
    }
    let mut jobs: Vec<(Family, Pattern, usize, bool)> = Vec::new();
    let mut pairs: Vec<(Family, Pattern, usize)> = Vec::new();
    for &family in &s.families {
        let (max_len, n) = scope(family);
        let patterns: Vec<Pattern> = Pattern::all_over(family, max_len)
            .into_iter()
            .filter(|p| p.can_occur_in(family))
            .collect();
        for p in &patterns {
            let corrupt = s.corrupt_base && jobs.is_empty();
            jobs.push((family, p.clone(), n, corrupt));
            // C has no counterpart for L, and skew paths are not closed
            // under it: UU and DD already differ on skew Dyck paths.
            if family.has_left_steps() {
                continue;
            }
            let sigma = p.reversed_complement().map_err(BijectionError::from)?;
            // one check per unordered pair
            if sigma.to_string() >= p.to_string() {
                pairs.push((family, p.clone(), n));
            }
        }
    }
    let classes: Vec<Vec<Check>> = jobs
        .par_iter()
        .map(|(family, p, n, corrupt)| class_checks(*family, p, *n, s, *corrupt))
        .collect::<Result<_, _>>()?;
    let symmetric: Vec<Vec<Check>> = pairs
        .par_iter()
        .map(|(family, p, n)| symmetry_checks(*family, p, *n, s))
        .collect::<Result<_, _>>()?;
    Ok(classes.into_iter().chain(symmetric).flatten().collect())
}
