//! Steps, paths and patterns.
//!
//! A path is a walk in the quarter plane that starts at the origin and ends
//! on the x-axis. The four families differ only in the step alphabet; the
//! skew families add left steps `L = (-1,-1)`, which may never traverse a
//! segment that an up step also traverses.
//!
//! The statistics live here too: the height of a path, the height
//! `h_pi(P)` of the highest occurrence of a pattern, and the amplitude of a
//! pattern.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A single lattice step.
///
/// The declaration order `U < D < F < L` is the lexicographic order used by
/// path generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Up step `(1, 1)`.
    U,
    /// Down step `(1, -1)`.
    D,
    /// Flat step `(1, 0)`.
    F,
    /// Left step `(-1, -1)`.
    L,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::U, Step::D, Step::F, Step::L];

    pub const fn displacement(self) -> (i32, i32) {
        match self {
            Step::U => (1, 1),
            Step::D => (1, -1),
            Step::F => (1, 0),
            Step::L => (-1, -1),
        }
    }

    /// Change in ordinate.
    #[inline]
    pub const fn rise(self) -> i32 {
        self.displacement().1
    }

    /// Reversed-complement image of a single step: `U <-> D`, `F` fixed.
    /// `None` for `L`, which has no image.
    pub const fn complement(self) -> Option<Step> {
        match self {
            Step::U => Some(Step::D),
            Step::D => Some(Step::U),
            Step::F => Some(Step::F),
            Step::L => None,
        }
    }

    pub const fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::F => 'F',
            Step::L => 'L',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c.to_ascii_uppercase() {
            'U' => Some(Step::U),
            'D' => Some(Step::D),
            'F' => Some(Step::F),
            'L' => Some(Step::L),
            _ => None,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Parses a word such as `"UUDL"` into steps.
pub fn parse_steps(word: &str) -> Result<Vec<Step>, PathError> {
    word.chars()
        .map(|c| Step::from_char(c).ok_or(PathError::UnknownStep(c)))
        .collect()
}

/// Renders steps as a word; the empty word renders as `""`.
pub fn steps_to_string(steps: &[Step]) -> String {
    steps.iter().map(|s| s.as_char()).collect()
}

/// How the size of a path is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SizeUnit {
    StepCount,
    /// Half the number of steps.
    Semilength,
}

/// The four path families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Dyck,
    Motzkin,
    SkewDyck,
    SkewMotzkin,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Dyck,
        Family::Motzkin,
        Family::SkewDyck,
        Family::SkewMotzkin,
    ];

    pub const fn alphabet(self) -> &'static [Step] {
        match self {
            Family::Dyck => &[Step::U, Step::D],
            Family::Motzkin => &[Step::U, Step::D, Step::F],
            Family::SkewDyck => &[Step::U, Step::D, Step::L],
            Family::SkewMotzkin => &[Step::U, Step::D, Step::F, Step::L],
        }
    }

    pub const fn size_unit(self) -> SizeUnit {
        match self {
            Family::Dyck | Family::SkewDyck => SizeUnit::Semilength,
            Family::Motzkin | Family::SkewMotzkin => SizeUnit::StepCount,
        }
    }

    pub fn allows(self, step: Step) -> bool {
        self.alphabet().contains(&step)
    }

    pub const fn has_left_steps(self) -> bool {
        matches!(self, Family::SkewDyck | Family::SkewMotzkin)
    }

    pub const fn has_flat_steps(self) -> bool {
        matches!(self, Family::Motzkin | Family::SkewMotzkin)
    }

    /// Number of steps of a path of the given size.
    pub const fn steps_for_size(self, size: usize) -> usize {
        match self.size_unit() {
            SizeUnit::StepCount => size,
            SizeUnit::Semilength => 2 * size,
        }
    }

    /// Kebab-case name, as accepted by [`FromStr`].
    pub const fn name(self) -> &'static str {
        match self {
            Family::Dyck => "dyck",
            Family::Motzkin => "motzkin",
            Family::SkewDyck => "skew-dyck",
            Family::SkewMotzkin => "skew-motzkin",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        match key.as_str() {
            "dyck" => Ok(Family::Dyck),
            "motzkin" => Ok(Family::Motzkin),
            "skewdyck" => Ok(Family::SkewDyck),
            "skewmotzkin" => Ok(Family::SkewMotzkin),
            _ => Err(PathError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("unknown step {0:?}; expected one of U, D, F, L")]
    UnknownStep(char),
    #[error("unknown path family {0:?}")]
    UnknownFamily(String),
    #[error("{word:?} is not a valid {family} path")]
    Invalid { word: String, family: Family },
    #[error("a pattern needs at least one step")]
    EmptyPattern,
    #[error("the reversed complement is not defined for left steps ({0:?})")]
    LeftStepComplement(String),
    #[error("cannot decompose the empty path")]
    EmptyPath,
}

/// Returns true iff `steps` is a valid path of `family`: alphabet, start at
/// the origin, never below the axis, end on the axis, and (for skew
/// families) no unit segment traversed by both a `U` and an `L` step.
pub fn validate(steps: &[Step], family: Family) -> bool {
    if !steps.iter().all(|&s| family.allows(s)) {
        return false;
    }
    let mut y = 0i32;
    for &s in steps {
        y += s.rise();
        if y < 0 {
            return false;
        }
    }
    if y != 0 {
        return false;
    }
    !family.has_left_steps() || segments_disjoint(steps)
}

/// Records every diagonal segment used by `U` and `L` steps, keyed by its
/// lower endpoint, and reports whether the two sets are disjoint.
fn segments_disjoint(steps: &[Step]) -> bool {
    let mut up = HashSet::new();
    let mut left = HashSet::new();
    let (mut x, mut y) = (0i32, 0i32);
    for &s in steps {
        let (dx, dy) = s.displacement();
        match s {
            Step::U => {
                if left.contains(&(x, y)) {
                    return false;
                }
                up.insert((x, y));
            }
            Step::L => {
                let lower = (x + dx, y + dy);
                if up.contains(&lower) {
                    return false;
                }
                left.insert(lower);
            }
            _ => {}
        }
        x += dx;
        y += dy;
    }
    true
}

/// Maximal ordinate over all visited points.
pub fn height(steps: &[Step]) -> u32 {
    let mut y = 0i32;
    let mut best = 0i32;
    for &s in steps {
        y += s.rise();
        best = best.max(y);
    }
    best as u32
}

/// `h_pi`: the maximal height over all occurrences of `pattern` as a run of
/// consecutive steps, both endpoints of every step included. Zero when the
/// pattern does not occur.
pub fn pattern_height(steps: &[Step], pattern: &Pattern) -> u32 {
    let pat = pattern.steps();
    if pat.len() > steps.len() {
        return 0;
    }
    let mut ordinates = Vec::with_capacity(steps.len() + 1);
    ordinates.push(0i32);
    let mut y = 0i32;
    for &s in steps {
        y += s.rise();
        ordinates.push(y);
    }
    let mut best = 0i32;
    for (i, window) in steps.windows(pat.len()).enumerate() {
        if window == pat {
            let top = ordinates[i..=i + pat.len()].iter().copied().max().unwrap_or(0);
            best = best.max(top);
        }
    }
    best as u32
}

/// True iff `pattern` occurs anywhere in `steps`.
pub fn contains_pattern(steps: &[Step], pattern: &Pattern) -> bool {
    let pat = pattern.steps();
    pat.len() <= steps.len() && steps.windows(pat.len()).any(|w| w == pat)
}

/// Reverses the word and swaps `U` with `D`; `F` is a fixed point.
pub fn reversed_complement(steps: &[Step]) -> Result<Vec<Step>, PathError> {
    steps
        .iter()
        .rev()
        .map(|s| {
            s.complement()
                .ok_or_else(|| PathError::LeftStepComplement(steps_to_string(steps)))
        })
        .collect()
}

/// A nonempty run of steps to be searched for inside paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    steps: Vec<Step>,
}

impl Pattern {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        if steps.is_empty() {
            return Err(PathError::EmptyPattern);
        }
        Ok(Pattern { steps })
    }

    pub fn parse(word: &str) -> Result<Self, PathError> {
        Pattern::new(parse_steps(word)?)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Always false; patterns are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Height of the pattern walk once it is lifted to touch the x-axis:
    /// highest prefix ordinate minus lowest, the empty prefix included.
    pub fn amplitude(&self) -> u32 {
        let (mut y, mut lo, mut hi) = (0i32, 0i32, 0i32);
        for &s in &self.steps {
            y += s.rise();
            lo = lo.min(y);
            hi = hi.max(y);
        }
        (hi - lo) as u32
    }

    /// True for `F^k`, the only patterns with amplitude zero.
    pub fn is_flat(&self) -> bool {
        self.steps.iter().all(|&s| s == Step::F)
    }

    pub fn has_left_steps(&self) -> bool {
        self.steps.contains(&Step::L)
    }

    /// True iff some path of the family contains the pattern: its steps are
    /// in the alphabet and it has no `UL` or `LU` factor, which would walk a
    /// segment twice.
    pub fn can_occur_in(&self, family: Family) -> bool {
        self.steps.iter().all(|&s| family.allows(s))
            && !self
                .steps
                .windows(2)
                .any(|w| matches!(w, [Step::U, Step::L] | [Step::L, Step::U]))
    }

    pub fn reversed_complement(&self) -> Result<Pattern, PathError> {
        Ok(Pattern {
            steps: reversed_complement(&self.steps)?,
        })
    }

    /// All patterns of length `1..=max_len` over the family alphabet, by
    /// length then lexicographically.
    pub fn all_over(family: Family, max_len: usize) -> Vec<Pattern> {
        let alphabet = family.alphabet();
        let mut out = Vec::new();
        let mut layer: Vec<Vec<Step>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * alphabet.len());
            for word in &layer {
                for &s in alphabet {
                    let mut w = word.clone();
                    w.push(s);
                    next.push(w);
                }
            }
            out.extend(next.iter().cloned().map(|steps| Pattern { steps }));
            layer = next;
        }
        out
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&steps_to_string(&self.steps))
    }
}

impl FromStr for Pattern {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::parse(s)
    }
}

/// A validated path of some family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    steps: Vec<Step>,
    family: Family,
}

impl Path {
    pub fn new(steps: Vec<Step>, family: Family) -> Result<Self, PathError> {
        if !validate(&steps, family) {
            return Err(PathError::Invalid {
                word: steps_to_string(&steps),
                family,
            });
        }
        Ok(Path { steps, family })
    }

    pub fn parse(word: &str, family: Family) -> Result<Self, PathError> {
        Path::new(parse_steps(word)?, family)
    }

    pub fn empty(family: Family) -> Self {
        Path {
            steps: Vec::new(),
            family,
        }
    }

    /// Skips validation; callers guarantee `validate(&steps, family)`.
    pub(crate) fn new_unchecked(steps: Vec<Step>, family: Family) -> Self {
        debug_assert!(validate(&steps, family));
        Path { steps, family }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Size in the family's unit: steps, or semilength.
    pub fn size(&self) -> usize {
        match self.family.size_unit() {
            SizeUnit::StepCount => self.steps.len(),
            SizeUnit::Semilength => self.steps.len() / 2,
        }
    }

    pub fn height(&self) -> u32 {
        height(&self.steps)
    }

    pub fn pattern_height(&self, pattern: &Pattern) -> u32 {
        pattern_height(&self.steps, pattern)
    }

    pub fn contains(&self, pattern: &Pattern) -> bool {
        contains_pattern(&self.steps, pattern)
    }

    /// Reversed complement of the whole path. Fails on left steps.
    pub fn reversed_complement(&self) -> Result<Path, PathError> {
        Ok(Path {
            steps: reversed_complement(&self.steps)?,
            family: self.family,
        })
    }

    pub fn first_return_decompose(&self) -> Result<Decomposition<'_>, PathError> {
        decompose(&self.steps, self.family)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&steps_to_string(&self.steps))
        }
    }
}

/// First-return decomposition of a nonempty path. Every component is
/// itself a (possibly empty) path of the same family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decomposition<'a> {
    /// `U alpha D beta`
    Peak { alpha: &'a [Step], beta: &'a [Step] },
    /// `F gamma`
    Flat { gamma: &'a [Step] },
    /// `U alpha L`
    Left { alpha: &'a [Step] },
    /// `U alpha L F gamma`
    LeftFlat {
        alpha: &'a [Step],
        gamma: &'a [Step],
    },
}

impl Decomposition<'_> {
    /// Concatenates the components back into the original word.
    pub fn recompose(&self) -> Vec<Step> {
        let mut out = Vec::new();
        match *self {
            Decomposition::Peak { alpha, beta } => {
                out.push(Step::U);
                out.extend_from_slice(alpha);
                out.push(Step::D);
                out.extend_from_slice(beta);
            }
            Decomposition::Flat { gamma } => {
                out.push(Step::F);
                out.extend_from_slice(gamma);
            }
            Decomposition::Left { alpha } => {
                out.push(Step::U);
                out.extend_from_slice(alpha);
                out.push(Step::L);
            }
            Decomposition::LeftFlat { alpha, gamma } => {
                out.push(Step::U);
                out.extend_from_slice(alpha);
                out.push(Step::L);
                out.push(Step::F);
                out.extend_from_slice(gamma);
            }
        }
        out
    }
}

/// Splits a valid nonempty path at its first return to the x-axis.
///
/// Works on raw steps; the caller is responsible for validity. A word that
/// matches none of the family's variants yields [`PathError::Invalid`].
pub fn decompose(steps: &[Step], family: Family) -> Result<Decomposition<'_>, PathError> {
    let invalid = || PathError::Invalid {
        word: steps_to_string(steps),
        family,
    };
    let first = *steps.first().ok_or(PathError::EmptyPath)?;
    if !family.allows(first) {
        return Err(invalid());
    }
    match first {
        Step::F => Ok(Decomposition::Flat { gamma: &steps[1..] }),
        Step::U => {
            let mut y = 0i32;
            let ret = steps
                .iter()
                .position(|s| {
                    y += s.rise();
                    y <= 0
                })
                .ok_or_else(invalid)?;
            if y < 0 {
                return Err(invalid());
            }
            let alpha = &steps[1..ret];
            let rest = &steps[ret + 1..];
            match steps[ret] {
                Step::D => Ok(Decomposition::Peak { alpha, beta: rest }),
                Step::L if rest.is_empty() => Ok(Decomposition::Left { alpha }),
                Step::L if rest[0] == Step::F && family.has_flat_steps() => {
                    Ok(Decomposition::LeftFlat {
                        alpha,
                        gamma: &rest[1..],
                    })
                }
                _ => Err(invalid()),
            }
        }
        Step::D | Step::L => Err(invalid()),
    }
}
