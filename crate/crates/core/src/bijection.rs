//! Reversed-complement symmetry between a pattern `pi` and `C(pi)`.
//!
//! Two routes: equality of the class series, and the explicit map `phi`
//! between the low levels (`0` and the amplitude) of the two classes,
//! checked exhaustively for bijectivity.

use std::collections::HashSet;

use thiserror::Error;

use crate::enumerate::{for_each_word, paths_up_to, EnumerateError, MembershipOracle};
use crate::gf::{class_gf, GfError, GfOptions};
use crate::paths::{
    contains_pattern, decompose, pattern_height, reversed_complement, steps_to_string,
    Decomposition, Family, Path, PathError, Pattern, Step,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("phi is defined on levels 0 and {amplitude} only; {word} has level {level}")]
    Domain {
        word: String,
        level: u32,
        amplitude: u32,
    },
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

/// A pattern and its reversed complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPair {
    pub pi: Pattern,
    pub sigma: Pattern,
}

impl PatternPair {
    pub fn new(pi: Pattern) -> Result<Self, PathError> {
        let sigma = pi.reversed_complement()?;
        Ok(PatternPair { pi, sigma })
    }

    pub fn is_self_paired(&self) -> bool {
        self.pi == self.sigma
    }
}

/// The map from the low levels of the `pi` class to those of the `C(pi)`
/// class.
///
/// Paths that avoid `pi` (and every path when `pi = F^k`) go to their
/// reversed complement. A path at level `r_pi` is split at its first
/// return. If the first block `U alpha D` reaches level `r_pi` the image
/// is `U C(alpha) D phi(beta)`. Otherwise every occurrence of `pi`
/// straddles the first return point, and `C(P)` would carry the `C(pi)`
/// occurrence at its *last* block junction, where membership forbids it.
/// The blocks `c_1 .. c_k` of `C(P)` are then rotated to bring that
/// junction to the front: `c_k c_1 .. c_{k-1}` if it contains `C(pi)`,
/// else `c_{k-1} c_k c_1 .. c_{k-2}`. With two blocks `C(P)` is already
/// in place. Rotation by one block is a bijection between "avoider then
/// block" and "block then avoider" words, and iterating it until the word
/// leaves the avoiders (at most twice) makes the whole map a bijection.
///
/// Checked exhaustively up to 12 steps for Dyck patterns of length at most
/// 3 and Motzkin patterns of length at most 2. Longer Motzkin patterns are
/// not covered: for `DFF` the member `UDFF` goes to `FUDF`, off level.
///
/// The caller guarantees membership in the class; only the level is
/// checked here.
pub fn phi(path: &Path, pi: &Pattern) -> Result<Path, BijectionError> {
    let image = phi_steps(path.steps(), path.family(), pi)?;
    Ok(Path::new(image, path.family())?)
}

fn phi_steps(steps: &[Step], family: Family, pi: &Pattern) -> Result<Vec<Step>, BijectionError> {
    if steps.is_empty() {
        return Ok(Vec::new());
    }
    let amplitude = pi.amplitude();
    let level = pattern_height(steps, pi);
    if level > amplitude {
        return Err(BijectionError::Domain {
            word: steps_to_string(steps),
            level,
            amplitude,
        });
    }
    if pi.is_flat() || !contains_pattern(steps, pi) {
        return Ok(reversed_complement(steps)?);
    }
    match decompose(steps, family)? {
        Decomposition::Peak { alpha, beta } => {
            let prime = &steps[..alpha.len() + 2];
            if pattern_height(prime, pi) == 0 {
                return straddle_image(steps, pi);
            }
            let mut out = Vec::with_capacity(steps.len());
            out.push(Step::U);
            out.extend(reversed_complement(alpha)?);
            out.push(Step::D);
            out.extend(phi_steps(beta, family, pi)?);
            Ok(out)
        }
        Decomposition::Flat { .. } => straddle_image(steps, pi),
        Decomposition::Left { .. } | Decomposition::LeftFlat { .. } => {
            Err(PathError::LeftStepComplement(steps_to_string(steps)).into())
        }
    }
}

/// Splits a path at its returns to the axis.
fn blocks(steps: &[Step]) -> Vec<&[Step]> {
    let mut out = Vec::new();
    let (mut y, mut start) = (0, 0);
    for (i, s) in steps.iter().enumerate() {
        y += s.rise();
        if y == 0 {
            out.push(&steps[start..=i]);
            start = i + 1;
        }
    }
    out
}

fn straddle_image(steps: &[Step], pi: &Pattern) -> Result<Vec<Step>, BijectionError> {
    let image = reversed_complement(steps)?;
    let c = blocks(&image);
    let k = c.len();
    if k <= 2 {
        return Ok(image);
    }
    let sigma = pi.reversed_complement()?;
    let once: Vec<Step> = c[k - 1..].iter().chain(&c[..k - 1]).flat_map(|b| b.iter().copied()).collect();
    if contains_pattern(&once, &sigma) {
        return Ok(once);
    }
    Ok(c[k - 2..].iter().chain(&c[..k - 2]).flat_map(|b| b.iter().copied()).collect())
}

/// True iff the classes of `pi` and `C(pi)` have the same series to
/// `order`.
pub fn verify_complement_symmetry(
    family: Family,
    pi: &Pattern,
    order: usize,
    options: GfOptions,
) -> Result<bool, BijectionError> {
    let pair = PatternPair::new(pi.clone())?;
    let left = class_gf(family, &pair.pi, order, options)?;
    if pair.is_self_paired() {
        return Ok(true);
    }
    let right = class_gf(family, &pair.sigma, order, options)?;
    Ok(left.total() == right.total())
}

/// Outcome of an exhaustive bijectivity check of `phi`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhiReport {
    /// Domain paths mapped.
    pub mapped: usize,
    /// Codomain paths found by direct enumeration.
    pub codomain: usize,
    pub failures: Vec<String>,
}

impl PhiReport {
    pub fn is_bijection(&self) -> bool {
        self.failures.is_empty() && self.mapped == self.codomain
    }
}

/// Maps every member of the `pi` class at level `0` or `r_pi` with at most
/// `max_steps` steps and checks that the images are distinct members of
/// the `C(pi)` class with the same size and level, and that they exhaust
/// the corresponding levels there.
pub fn check_phi(family: Family, pi: &Pattern, max_steps: usize, budget: u64) -> Result<PhiReport, BijectionError> {
    let pair = PatternPair::new(pi.clone())?;
    let amplitude = pi.amplitude();
    let max_size = match family.size_unit() {
        crate::paths::SizeUnit::StepCount => max_steps,
        crate::paths::SizeUnit::Semilength => max_steps / 2,
    };
    let needed = paths_up_to(family, max_size);
    if needed > u128::from(budget) {
        return Err(EnumerateError::BudgetExceeded {
            max_size,
            needed,
            budget,
        }
        .into());
    }
    let low = |level: u32| level == 0 || level == amplitude;
    let mut source = MembershipOracle::new(family, pair.pi.clone());
    let mut target = MembershipOracle::new(family, pair.sigma.clone());
    let mut report = PhiReport::default();
    for size in 0..=max_size {
        let steps = family.steps_for_size(size);
        let mut domain = Vec::new();
        let mut codomain = 0usize;
        for_each_word(family, steps, |w| {
            let v = source.verdict(w);
            if v.member && low(v.level) {
                domain.push((w.to_vec(), v.level));
            }
            let t = target.verdict(w);
            if t.member && low(t.level) {
                codomain += 1;
            }
        });
        let mut seen = HashSet::with_capacity(domain.len());
        for (word, level) in domain {
            let path = Path::new(word, family)?;
            let image = match phi(&path, &pair.pi) {
                Ok(image) => image,
                Err(e) => {
                    report.failures.push(format!("{path}: {e}"));
                    continue;
                }
            };
            let t = target.verdict(image.steps());
            if !t.member {
                report.failures.push(format!("{path} -> {image}: image not in the class of {}", pair.sigma));
            } else if t.level != level {
                report.failures.push(format!("{path} -> {image}: level {level} became {}", t.level));
            }
            if !seen.insert(image.steps().to_vec()) {
                report.failures.push(format!("{path} -> {image}: image already hit"));
            }
            report.mapped += 1;
        }
        report.codomain += codomain;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{is_member, DEFAULT_PATH_BUDGET};

    fn pat(w: &str) -> Pattern {
        Pattern::parse(w).unwrap()
    }

    #[test]
    fn empty_maps_to_empty() {
        let e = Path::empty(Family::Dyck);
        assert_eq!(phi(&e, &pat("DUU")).unwrap(), e);
    }

    #[test]
    fn avoiders_go_to_reversed_complement() {
        let p = Path::parse("UUDDUD", Family::Dyck).unwrap();
        let image = phi(&p, &pat("DUU")).unwrap();
        assert_eq!(image, p.reversed_complement().unwrap());
        assert!(!image.contains(&pat("DDU")));
    }

    #[test]
    fn domain_is_levels_zero_and_amplitude() {
        // h_UD(UUDD) = 2 > r_UD = 1
        let p = Path::parse("UUDD", Family::Dyck).unwrap();
        assert!(matches!(phi(&p, &pat("UD")), Err(BijectionError::Domain { level: 2, .. })));
    }

    #[test]
    fn recursive_case() {
        // UUD at the start of U(UD)D: level 2, alpha = UD avoids UUD.
        let p = Path::parse("UUDDUD", Family::Dyck).unwrap();
        assert_eq!(p.pattern_height(&pat("UUD")), 2);
        let image = phi(&p, &pat("UUD")).unwrap();
        assert_eq!(image.to_string(), "UUDDUD");
        assert_eq!(image.pattern_height(&pat("UDD")), 2);
    }

    #[test]
    fn straddling_occurrence_moves_to_the_front() {
        // DUU straddles UD|UUDDUD; C(P) = UD UUDD UD has DDU at its last
        // junction only, so it is rotated to UUDD UD UD.
        let p = Path::parse("UDUUDDUD", Family::Dyck).unwrap();
        let image = phi(&p, &pat("DUU")).unwrap();
        assert_eq!(image.to_string(), "UUDDUDUD");
        assert!(is_member(&image, &pat("DDU")));
    }

    #[test]
    fn long_motzkin_patterns_are_out_of_reach() {
        let p = Path::parse("UDFF", Family::Motzkin).unwrap();
        assert!(is_member(&p, &pat("DFF")));
        let image = phi(&p, &pat("DFF")).unwrap();
        assert_eq!(image.to_string(), "FUDF");
        assert_eq!(image.pattern_height(&pat("FFU")), 0);
    }

    #[test]
    fn small_bijections() {
        for w in ["DUU", "UUD", "UD", "DU", "DDU", "UDU", "DUD"] {
            let report = check_phi(Family::Dyck, &pat(w), 8, DEFAULT_PATH_BUDGET).unwrap();
            assert!(report.is_bijection(), "{w}: {:?}", report.failures);
        }
        for w in ["UF", "DU", "DF", "FU"] {
            let report = check_phi(Family::Motzkin, &pat(w), 8, DEFAULT_PATH_BUDGET).unwrap();
            assert!(report.is_bijection(), "{w}: {:?}", report.failures);
        }
    }

    #[test]
    fn series_symmetry() {
        let opts = GfOptions::default();
        assert!(verify_complement_symmetry(Family::Dyck, &pat("DUU"), 9, opts).unwrap());
        assert!(verify_complement_symmetry(Family::Motzkin, &pat("UF"), 9, opts).unwrap());
        assert!(verify_complement_symmetry(Family::Dyck, &pat("UD"), 9, opts).unwrap());
        assert!(verify_complement_symmetry(Family::SkewDyck, &pat("L"), 5, opts).is_err());
    }
}
