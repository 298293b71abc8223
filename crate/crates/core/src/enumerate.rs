//! Exhaustive enumeration: the brute-force side of every cross-check.
//!
//! Paths are generated step by step with pruning, membership in the class
//! `A^{h_pi,>=}` is decided by evaluating the recurrence condition on the
//! first-return decomposition, and the members are tallied by size and by
//! `h_pi` level. Nothing here consults a generating function.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use thiserror::Error;

use crate::paths::{decompose, pattern_height, validate, Decomposition, Family, Path, Pattern, Step};
use crate::series::Series;

/// Default cap on the number of paths an exhaustive search may visit.
pub const DEFAULT_PATH_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("exhaustive search up to size {max_size} needs {needed} paths, over the budget of {budget}")]
    BudgetExceeded { max_size: usize, needed: u128, budget: u64 },
    #[error("level {level} is above the amplitude {amplitude} of the pattern")]
    LevelAboveAmplitude { level: u32, amplitude: u32 },
}

/// Calls `visit` on every valid path of `family` with exactly `steps`
/// steps, in lexicographic order `U < D < F < L`.
pub fn for_each_word<F: FnMut(&[Step])>(family: Family, steps: usize, mut visit: F) {
    let mut buf = Vec::with_capacity(steps);
    walk(family, steps, 0, &mut buf, &mut visit);
}

fn walk<F: FnMut(&[Step])>(family: Family, total: usize, y: i32, buf: &mut Vec<Step>, visit: &mut F) {
    let remaining = (total - buf.len()) as i32;
    if remaining == 0 {
        if y == 0 {
            visit(buf);
        }
        return;
    }
    let last = buf.last().copied();
    for &s in family.alphabet() {
        // U immediately followed or preceded by L retraces the same segment.
        if matches!((last, s), (Some(Step::U), Step::L) | (Some(Step::L), Step::U)) {
            continue;
        }
        let ny = y + s.rise();
        if ny < 0 || ny > remaining - 1 {
            continue;
        }
        buf.push(s);
        walk(family, total, ny, buf, visit);
        buf.pop();
    }
}

/// All valid paths of the given size.
pub fn generate_paths(family: Family, size: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for_each_word(family, family.steps_for_size(size), |w| {
        out.push(Path::new_unchecked(w.to_vec(), family))
    });
    out
}

/// Number of valid paths of the given size, by a transfer count over
/// `(ordinate, previous step)` states. Used for budget checks.
pub fn path_count(family: Family, size: usize) -> u128 {
    let steps = family.steps_for_size(size);
    // state index: ordinate * 3 + tag, tag 0 = other, 1 = after U, 2 = after L
    let mut cur = vec![0u128; 3 * (steps + 2)];
    cur[0] = 1;
    for _ in 0..steps {
        let mut next = vec![0u128; cur.len()];
        for (idx, &ways) in cur.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            let (y, tag) = ((idx / 3) as i32, idx % 3);
            for &s in family.alphabet() {
                if (tag == 1 && s == Step::L) || (tag == 2 && s == Step::U) {
                    continue;
                }
                let ny = y + s.rise();
                if ny < 0 || ny as usize > steps {
                    continue;
                }
                let ntag = match s {
                    Step::U => 1,
                    Step::L => 2,
                    _ => 0,
                };
                next[ny as usize * 3 + ntag] += ways;
            }
        }
        cur = next;
    }
    cur[..3].iter().sum()
}

/// Total paths of sizes `0..=max_size`.
pub fn paths_up_to(family: Family, max_size: usize) -> u128 {
    (0..=max_size).map(|n| path_count(family, n)).sum()
}

fn check_budget(family: Family, max_size: usize, budget: u64) -> Result<(), EnumerateError> {
    let needed = paths_up_to(family, max_size);
    if needed > u128::from(budget) {
        return Err(EnumerateError::BudgetExceeded {
            max_size,
            needed,
            budget,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    /// `h_pi` of the path, whether or not it is a member.
    pub level: u32,
}

/// Decides membership in `A^{h_pi,>=}` for one family and pattern.
///
/// Sub-path verdicts are memoized; the memo is owned by the oracle, so use
/// one oracle per worker.
pub struct MembershipOracle {
    family: Family,
    pattern: Pattern,
    flat_level: u32,
    memo: HashMap<u128, Verdict>,
}

/// Two bits per step under a leading sentinel bit; `None` past 63 steps.
fn pack(steps: &[Step]) -> Option<u128> {
    if steps.len() > 63 {
        return None;
    }
    let mut key = 1u128;
    for &s in steps {
        key = (key << 2) | s as u128;
    }
    Some(key)
}

impl MembershipOracle {
    pub fn new(family: Family, pattern: Pattern) -> Self {
        let flat_level = pattern_height(&[Step::F], &pattern);
        MembershipOracle {
            family,
            pattern,
            flat_level,
            memo: HashMap::new(),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn is_member(&mut self, path: &Path) -> bool {
        self.verdict(path.steps()).member
    }

    /// Verdict for a word that must be a valid path of the family.
    pub fn verdict(&mut self, steps: &[Step]) -> Verdict {
        debug_assert!(validate(steps, self.family));
        self.evaluate(steps)
    }

    fn lookup(&mut self, steps: &[Step]) -> Verdict {
        match pack(steps) {
            Some(key) => {
                if let Some(&v) = self.memo.get(&key) {
                    return v;
                }
                let v = self.evaluate(steps);
                self.memo.insert(key, v);
                v
            }
            None => self.evaluate(steps),
        }
    }

    fn evaluate(&mut self, steps: &[Step]) -> Verdict {
        let level = pattern_height(steps, &self.pattern);
        if steps.is_empty() {
            return Verdict { member: true, level };
        }
        let parts = decompose(steps, self.family).expect("oracle called on an invalid path");
        let member = match parts {
            Decomposition::Peak { alpha, beta } => {
                let prime = &steps[..alpha.len() + 2];
                let b = self.lookup(beta);
                b.member
                    && self.lookup(alpha).member
                    && pattern_height(prime, &self.pattern) >= b.level
            }
            Decomposition::Flat { gamma } => {
                let g = self.lookup(gamma);
                g.member && self.flat_level >= g.level
            }
            Decomposition::Left { alpha } => !alpha.is_empty() && self.lookup(alpha).member,
            Decomposition::LeftFlat { alpha, gamma } => {
                let g = self.lookup(gamma);
                !alpha.is_empty()
                    && g.member
                    && self.flat_level >= g.level
                    && self.lookup(alpha).member
            }
        };
        Verdict { member, level }
    }
}

/// One-shot membership test.
pub fn is_member(path: &Path, pattern: &Pattern) -> bool {
    MembershipOracle::new(path.family(), pattern.clone()).is_member(path)
}

/// Members of `A^{h_pi,>=}` counted by size and by `h_pi` level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCountTable {
    pub family: Family,
    pub pattern: Pattern,
    pub max_size: usize,
    counts: BTreeMap<(usize, u32), u64>,
}

impl ClassCountTable {
    pub fn count(&self, size: usize, level: u32) -> u64 {
        self.counts.get(&(size, level)).copied().unwrap_or(0)
    }

    pub fn total(&self, size: usize) -> u64 {
        self.counts
            .range((size, 0)..=(size, u32::MAX))
            .map(|(_, &c)| c)
            .sum()
    }

    /// Totals for sizes `0..=max_size`.
    pub fn totals(&self) -> Vec<u64> {
        (0..=self.max_size).map(|n| self.total(n)).collect()
    }

    pub fn max_level(&self) -> u32 {
        self.counts.keys().map(|&(_, k)| k).max().unwrap_or(0)
    }

    /// Level `k` counts as a series of order `max_size`.
    pub fn level_series(&self, level: u32) -> Series {
        let values: Vec<BigInt> = (0..=self.max_size)
            .map(|n| BigInt::from(self.count(n, level)))
            .collect();
        Series::from_integers(&values, self.max_size)
    }

    pub fn total_series(&self) -> Series {
        Series::from_integers(&self.totals(), self.max_size)
    }

    /// Nonzero `(size, level, count)` cells in order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, u32, u64)> + '_ {
        self.counts.iter().map(|(&(n, k), &c)| (n, k, c))
    }
}

/// Exhaustive counts of the class for sizes `0..=max_size`.
pub fn count_class(
    family: Family,
    pattern: &Pattern,
    max_size: usize,
    budget: u64,
) -> Result<ClassCountTable, EnumerateError> {
    check_budget(family, max_size, budget)?;
    let mut oracle = MembershipOracle::new(family, pattern.clone());
    let mut counts = BTreeMap::new();
    for size in 0..=max_size {
        for_each_word(family, family.steps_for_size(size), |w| {
            let v = oracle.verdict(w);
            if v.member {
                *counts.entry((size, v.level)).or_insert(0) += 1;
            }
        });
    }
    Ok(ClassCountTable {
        family,
        pattern: pattern.clone(),
        max_size,
        counts,
    })
}

/// Generating series of the members at `h_pi` level `level`, constant term
/// included, to order `order`.
pub fn base_series(
    family: Family,
    pattern: &Pattern,
    level: u32,
    order: usize,
    budget: u64,
) -> Result<Series, EnumerateError> {
    let amplitude = pattern.amplitude();
    if level > amplitude.max(1) {
        return Err(EnumerateError::LevelAboveAmplitude { level, amplitude });
    }
    Ok(count_class(family, pattern, order, budget)?.level_series(level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{parse_steps, steps_to_string};

    fn pat(w: &str) -> Pattern {
        Pattern::parse(w).unwrap()
    }

    /// Every word over the alphabet, filtered by `validate`.
    fn naive_paths(family: Family, steps: usize) -> Vec<String> {
        let mut words = vec![Vec::new()];
        for _ in 0..steps {
            words = words
                .into_iter()
                .flat_map(|w: Vec<Step>| {
                    family.alphabet().iter().map(move |&s| {
                        let mut w = w.clone();
                        w.push(s);
                        w
                    })
                })
                .collect();
        }
        let mut out: Vec<String> = words
            .into_iter()
            .filter(|w| validate(w, family))
            .map(|w| steps_to_string(&w))
            .collect();
        out.sort_by_key(|w| parse_steps(w).unwrap());
        out
    }

    #[test]
    fn generator_matches_naive_filter() {
        for family in Family::ALL {
            for steps in 0..=8 {
                let mut got = Vec::new();
                for_each_word(family, steps, |w| got.push(steps_to_string(w)));
                assert_eq!(got, naive_paths(family, steps), "{family} with {steps} steps");
            }
        }
    }

    #[test]
    fn small_generation() {
        assert_eq!(generate_paths(Family::Dyck, 0), vec![Path::empty(Family::Dyck)]);
        assert_eq!(generate_paths(Family::Dyck, 3).len(), 5);
        assert_eq!(generate_paths(Family::SkewDyck, 3).len(), 10);
        let words: Vec<String> = generate_paths(Family::SkewDyck, 2)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(words, ["UUDD", "UUDL", "UDUD"]);
    }

    #[test]
    fn classical_path_counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        let motzkin = [1, 1, 2, 4, 9, 21, 51, 127, 323];
        let skew_dyck = [1, 1, 3, 10, 36, 137, 543, 2219, 9285];
        for n in 0..=8 {
            assert_eq!(generate_paths(Family::Dyck, n).len(), catalan[n]);
            assert_eq!(generate_paths(Family::Motzkin, n).len(), motzkin[n]);
            assert_eq!(generate_paths(Family::SkewDyck, n).len(), skew_dyck[n]);
            for family in Family::ALL {
                assert_eq!(path_count(family, n), generate_paths(family, n).len() as u128);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let u = pat("U");
        assert!(is_member(&Path::empty(Family::Dyck), &u));
        assert!(!is_member(&Path::parse("UDUUDD", Family::Dyck).unwrap(), &u));
        assert!(is_member(&Path::parse("UUDDUD", Family::Dyck).unwrap(), &u));
        // U alpha L needs a nonempty alpha; UUDL has alpha = UD.
        assert!(is_member(&Path::parse("UUDL", Family::SkewDyck).unwrap(), &u));
    }

    #[test]
    fn dyck_height_counts() {
        let table = count_class(Family::Dyck, &pat("U"), 8, DEFAULT_PATH_BUDGET).unwrap();
        assert_eq!(table.totals(), vec![1, 1, 2, 4, 9, 21, 51, 127, 323]);
    }

    #[test]
    fn level_gap() {
        let table = count_class(Family::Dyck, &pat("UUU"), 7, DEFAULT_PATH_BUDGET).unwrap();
        for n in 0..=7 {
            assert_eq!(table.count(n, 1), 0);
            assert_eq!(table.count(n, 2), 0);
        }
    }

    #[test]
    fn base_series_examples() {
        let uud = pat("UUD");
        let a0 = base_series(Family::Dyck, &uud, 0, 6, DEFAULT_PATH_BUDGET).unwrap();
        assert_eq!(a0, Series::from_integers(&[1; 7], 6));
        let a1 = base_series(Family::Dyck, &uud, 1, 6, DEFAULT_PATH_BUDGET).unwrap();
        assert!(a1.is_zero());
        let a2 = base_series(Family::Dyck, &pat("DUU"), 2, 7, DEFAULT_PATH_BUDGET).unwrap();
        assert_eq!(a2, Series::from_integers(&[0, 0, 0, 1, 4, 12, 32, 80], 7));
        assert!(matches!(
            base_series(Family::Dyck, &uud, 3, 6, DEFAULT_PATH_BUDGET),
            Err(EnumerateError::LevelAboveAmplitude { .. })
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let err = count_class(Family::Dyck, &pat("U"), 12, 1000).unwrap_err();
        assert!(matches!(err, EnumerateError::BudgetExceeded { budget: 1000, .. }));
    }

    #[test]
    fn packing_is_injective_on_lengths() {
        assert_ne!(pack(&[]), pack(&[Step::U]));
        assert_ne!(pack(&[Step::U]), pack(&[Step::U, Step::U]));
        assert_eq!(pack(&[Step::U; 64]), None);
    }
}
