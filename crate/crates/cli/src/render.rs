use std::fmt::Write;

use latpath::{Family, Series};
use serde::Serialize;

use crate::table::{Row, SeriesData};

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

pub fn text_table(family: Family, n: usize, rows: &[Row]) -> String {
    let labels: Vec<String> = rows.iter().map(|r| r.labels.join(", ")).collect();
    let header = "statistic";
    let width = labels.iter().map(String::len).chain([header.len()]).max().unwrap_or(0);
    let mut out = String::new();
    writeln!(out, "{family} paths").unwrap();
    writeln!(out, "{header:<width$} | a_n, 1 <= n <= {n}").unwrap();
    writeln!(out, "{}-+-{}", "-".repeat(width), "-".repeat(18)).unwrap();
    for (label, row) in labels.iter().zip(rows) {
        writeln!(out, "{label:<width$} | {}", join(row.values())).unwrap();
    }
    out
}

pub fn csv(n: usize, rows: &[Row]) -> String {
    let mut out = String::from("patterns");
    for i in 1..=n {
        write!(out, ",{i}").unwrap();
    }
    out.push('\n');
    for row in rows {
        out.push_str(&row.labels.join(" "));
        for v in row.values() {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct TableJson<'a> {
    family: String,
    n: usize,
    rows: Vec<RowJson<'a>>,
}

#[derive(Serialize)]
struct RowJson<'a> {
    patterns: &'a [String],
    classes: &'a [SeriesData],
}

pub fn table_json(family: Family, n: usize, rows: &[Row]) -> String {
    to_json(&TableJson {
        family: family.to_string(),
        n,
        rows: rows
            .iter()
            .map(|r| RowJson {
                patterns: &r.labels,
                classes: &r.members,
            })
            .collect(),
    })
}

/// `n a(n)` lines from `n = 1`; a lone constant term prints as `0 a(0)`.
pub fn b_file(coeffs: &[u64]) -> String {
    let mut out = String::new();
    if coeffs.len() == 1 {
        writeln!(out, "0 {}", coeffs[0]).unwrap();
    }
    for (n, a) in coeffs.iter().enumerate().skip(1) {
        writeln!(out, "{n} {a}").unwrap();
    }
    out
}

pub fn table_b_files(rows: &[Row]) -> String {
    let mut out = String::new();
    for row in rows {
        writeln!(out, "# {}", row.labels.join(", ")).unwrap();
        out.push_str(&b_file(&row.members[0].coefficients));
    }
    out
}

#[derive(Serialize)]
struct LevelJson<'a> {
    family: &'a str,
    pattern: &'a str,
    order: usize,
    level: usize,
    coefficients: Vec<u64>,
}

pub fn series_json(data: &SeriesData, level: Option<usize>) -> String {
    match level {
        None => to_json(data),
        Some(k) => to_json(&LevelJson {
            family: &data.family,
            pattern: &data.pattern,
            order: data.order,
            level: k,
            coefficients: data.level(k),
        }),
    }
}

fn as_series(coeffs: &[u64], order: usize) -> Series {
    Series::from_integers(coeffs, order)
}

pub fn series_text(data: &SeriesData, level: Option<usize>, all_levels: bool) -> String {
    let mut out = String::new();
    match level {
        Some(k) => writeln!(out, "A_{k}(x) = {}", as_series(&data.level(k), data.order)).unwrap(),
        None => writeln!(out, "A(x) = {}", as_series(&data.coefficients, data.order)).unwrap(),
    }
    if all_levels {
        for (k, coeffs) in &data.levels {
            writeln!(out, "A_{k}(x) = {}", as_series(coeffs, data.order)).unwrap();
        }
    }
    out
}

pub fn series_csv(data: &SeriesData, level: Option<usize>) -> String {
    let coeffs = level.map_or_else(|| data.coefficients.clone(), |k| data.level(k));
    let mut out = String::from("n,a_n\n");
    for (n, a) in coeffs.iter().enumerate() {
        writeln!(out, "{n},{a}").unwrap();
    }
    out
}

/// Terms `a(1), a(2), ...` from a b-file or a `series` JSON document.
pub fn parse_series_document(text: &str) -> Result<Vec<i128>, String> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("bad JSON: {e}"))?;
        let coeffs = value
            .get("coefficients")
            .and_then(|c| c.as_array())
            .ok_or("JSON document has no \"coefficients\" array")?;
        return coeffs
            .iter()
            .skip(1)
            .map(|c| c.as_i64().map(i128::from).ok_or_else(|| format!("not an integer: {c}")))
            .collect();
    }
    let mut terms = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(n), Some(a), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(format!("not a b-file line: {line:?}"));
        };
        let n: u64 = n.parse().map_err(|_| format!("bad index in {line:?}"))?;
        let a: i128 = a.parse().map_err(|_| format!("bad term in {line:?}"))?;
        if n >= 1 {
            terms.push(a);
        }
    }
    Ok(terms)
}
