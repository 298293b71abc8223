use std::collections::BTreeMap;

use latpath::{class_gf, count_class, Family, GfError, GfOptions, Pattern, Step};
use rayon::prelude::*;
use serde::Serialize;

use crate::Failure;

/// Counts of one class, sizes `0..=order`.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesData {
    pub family: String,
    pub pattern: String,
    pub order: usize,
    pub coefficients: Vec<u64>,
    /// Nonzero levels `A_k`, by `k`.
    pub levels: BTreeMap<usize, Vec<u64>>,
}

impl SeriesData {
    pub fn level(&self, k: usize) -> Vec<u64> {
        self.levels
            .get(&k)
            .cloned()
            .unwrap_or_else(|| vec![0; self.order + 1])
    }
}

fn counts(series: &latpath::Series) -> Result<Vec<u64>, Failure> {
    series
        .to_counts()
        .ok_or_else(|| Failure::usage("a coefficient does not fit in 64 bits; lower the order"))
}

pub fn series_data(family: Family, pattern: &Pattern, order: usize, budget: u64) -> Result<SeriesData, Failure> {
    let mut data = SeriesData {
        family: family.to_string(),
        pattern: pattern.to_string(),
        order,
        coefficients: vec![1],
        levels: BTreeMap::from([(0, vec![1])]),
    };
    if order == 0 {
        return Ok(data);
    }
    let gf = class_gf(
        family,
        pattern,
        order,
        GfOptions {
            budget,
            ..GfOptions::default()
        },
    )?;
    data.coefficients = counts(gf.total())?;
    data.levels.clear();
    for (k, level) in gf.solution.levels().iter().enumerate() {
        if !level.is_zero() {
            data.levels.insert(k, counts(level)?);
        }
    }
    Ok(data)
}

/// Patterns sharing one sequence.
#[derive(Clone, Debug)]
pub struct Row {
    pub labels: Vec<String>,
    pub members: Vec<SeriesData>,
}

impl Row {
    /// `a_1 ..= a_n`.
    pub fn values(&self) -> &[u64] {
        &self.members[0].coefficients[1..]
    }
}

/// Every pattern of length `1..=max_len` that can occur in the family,
/// grouped by sequence; rows are ordered by their first pattern.
pub fn compute(family: Family, max_len: usize, n: usize, budget: u64) -> Result<Vec<Row>, Failure> {
    let patterns: Vec<Pattern> = Pattern::all_over(family, max_len)
        .into_iter()
        .filter(|p| p.can_occur_in(family))
        .collect();
    let data: Vec<SeriesData> = patterns
        .par_iter()
        .map(|p| series_data(family, p, n, budget))
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<Row> = Vec::new();
    for (pattern, d) in patterns.iter().zip(data) {
        match rows.iter_mut().find(|r| r.members[0].coefficients == d.coefficients) {
            Some(row) => {
                row.labels.push(pattern.to_string());
                row.members.push(d);
            }
            None => rows.push(Row {
                labels: vec![pattern.to_string()],
                members: vec![d],
            }),
        }
    }
    // the plain height statistic is h_U
    for row in &mut rows {
        if row.labels.iter().any(|l| l == Step::U.as_char().to_string().as_str()) {
            row.labels.insert(0, "h".to_string());
        }
    }
    Ok(rows)
}

/// Every cell (totals and levels) against exhaustive enumeration.
pub fn cross_check(rows: &[Row], family: Family, n: usize, budget: u64) -> Result<(), Failure> {
    let members: Vec<&SeriesData> = rows.iter().flat_map(|r| &r.members).collect();
    members.par_iter().try_for_each(|d| -> Result<(), Failure> {
        let pattern = Pattern::parse(&d.pattern).expect("pattern was printed by us");
        let table = count_class(family, &pattern, n, budget)?;
        for size in 0..=n {
            let mut expected = vec![(None, table.total(size), d.coefficients[size])];
            for k in 0..=table.max_level().max(d.levels.keys().max().copied().unwrap_or(0) as u32) {
                expected.push((Some(k), table.count(size, k), d.level(k as usize)[size]));
            }
            for (level, oracle, series) in expected {
                if oracle != series {
                    let what = match level {
                        Some(k) => format!("{family}/{pattern} A_{k}"),
                        None => format!("{family}/{pattern} A"),
                    };
                    return Err(GfError::ConsistencyFailure {
                        what: "enumeration and series",
                        index: size,
                        left: format!("{what}: {oracle}"),
                        right: series.to_string(),
                    }
                    .into());
                }
            }
        }
        Ok(())
    })
}
