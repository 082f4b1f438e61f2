//! Metric documents:
//!
//! ```text
//! # comment
//! chart x y
//! g(1,1) = 1 + y^2
//! g(1,2) = y
//! g(2,2) = 1
//! ginv(1,1) = 1
//! ginv(1,2) = -y
//! ginv(2,2) = 1 + y^2
//! gamma(1;1,2) = ...
//! ```
//!
//! Indices are 1-based, entries default to zero and are filled
//! symmetrically. Without any `gamma` line the Levi-Civita symbols are
//! computed. The data is validated before it is returned.

use super::{validate, zero_matrix, ConnectionData, MetricData};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::polyring::Polynomial;

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::InvalidMetric(format!("line {line}: {msg}"))
}

fn parse_indices(line: usize, s: &str, n: usize) -> Result<Vec<usize>> {
    s.split([',', ';'])
        .map(|t| {
            let i: usize = t.trim().parse().map_err(|_| bad(line, format!("bad index `{}`", t.trim())))?;
            if i == 0 || i > n {
                return Err(bad(line, format!("index {i} out of range 1..={n}")));
            }
            Ok(i - 1)
        })
        .collect()
}

pub fn parse_metric_document(src: &str) -> Result<ConnectionData> {
    let mut chart: Option<Chart> = None;
    let mut g = Vec::new();
    let mut ginv = Vec::new();
    let mut gamma: Option<Vec<Vec<Vec<Polynomial>>>> = None;
    for (no, raw) in src.lines().enumerate() {
        let line = no + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("chart") {
            if chart.is_some() {
                return Err(bad(line, "duplicate chart line"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if names.is_empty() {
                return Err(bad(line, "chart needs at least one variable"));
            }
            let c = Chart::base(names);
            g = zero_matrix(&c);
            ginv = zero_matrix(&c);
            chart = Some(c);
            continue;
        }
        let c = chart.as_ref().ok_or_else(|| bad(line, "entries before the chart line"))?;
        let n = c.dim();
        let (lhs, rhs) = text.split_once('=').ok_or_else(|| bad(line, "expected `name(i,j) = polynomial`"))?;
        let lhs = lhs.trim();
        let open = lhs.find('(').ok_or_else(|| bad(line, "missing `(`"))?;
        let inner = lhs[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| bad(line, "missing `)`"))?;
        let value = Polynomial::parse(c, rhs.trim()).map_err(|e| bad(line, e))?;
        let idx = parse_indices(line, inner, n)?;
        match (&lhs[..open], idx.as_slice()) {
            ("g", &[i, j]) => {
                g[i][j] = value.clone();
                g[j][i] = value;
            }
            ("ginv", &[i, j]) => {
                ginv[i][j] = value.clone();
                ginv[j][i] = value;
            }
            ("gamma", &[k, i, j]) if inner.contains(';') => {
                let gm = gamma.get_or_insert_with(|| vec![zero_matrix(c); n]);
                gm[k][i][j] = value.clone();
                gm[k][j][i] = value;
            }
            (name, _) => return Err(bad(line, format!("unrecognized entry `{name}({inner})`"))),
        }
    }
    let chart = chart.ok_or_else(|| Error::InvalidMetric("missing chart line".into()))?;
    let metric = MetricData::new(&chart, g, ginv)?;
    let conn = match gamma {
        Some(gm) => ConnectionData::new(&chart, gm, Some(metric.clone()))?,
        None => metric.levi_civita(),
    };
    let report = validate(&metric, &conn)?;
    if !report.is_valid() {
        return Err(Error::InvalidMetric(report.to_string()));
    }
    Ok(conn)
}

/// Inverse of [`parse_metric_document`]: chart line, nonzero `g`, `ginv`
/// and `gamma` entries with `i <= j`.
pub fn metric_document(conn: &ConnectionData) -> Option<String> {
    let metric = conn.metric()?;
    let chart = conn.chart();
    let n = chart.dim();
    let mut out = format!("chart {}\n", chart.names().join(" "));
    for (name, get) in [("g", MetricData::g as fn(&MetricData, usize, usize) -> &Polynomial), ("ginv", MetricData::ginv)] {
        for i in 0..n {
            for j in i..n {
                let v = get(metric, i, j);
                if !v.is_zero() {
                    out.push_str(&format!("{name}({},{}) = {v}\n", i + 1, j + 1));
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let v = conn.gamma(k, i, j);
                if !v.is_zero() {
                    out.push_str(&format!("gamma({};{},{}) = {v}\n", k + 1, i + 1, j + 1));
                }
            }
        }
    }
    Some(out)
}
