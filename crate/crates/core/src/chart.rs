//! Coordinate charts.
//!
//! A chart fixes the number of variables and their order. Base charts carry
//! arbitrary variable names (`x1`, `x2`, ... by default); the cotangent chart
//! of an `m`-dimensional base has `2m` variables ordered `q1..qm, p1..pm`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct ChartInner {
    names: Vec<String>,
    kind: ChartKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartKind {
    Base,
    Cotangent(Chart),
}

/// Shared, immutable chart handle. Cloning is cheap.
#[derive(Clone)]
pub struct Chart(Arc<ChartInner>);

impl Chart {
    /// Base chart with variables `x1..xm`.
    pub fn euclidean(dim: usize) -> Chart {
        Chart::base((1..=dim).map(|i| format!("x{i}")).collect())
    }

    pub fn base(names: Vec<String>) -> Chart {
        Chart(Arc::new(ChartInner {
            names,
            kind: ChartKind::Base,
        }))
    }

    /// Cotangent chart over `base`, variables `q1..qm, p1..pm`.
    pub fn cotangent(base: &Chart) -> Chart {
        let m = base.dim();
        let names = (1..=m)
            .map(|i| format!("q{i}"))
            .chain((1..=m).map(|i| format!("p{i}")))
            .collect();
        Chart(Arc::new(ChartInner {
            names,
            kind: ChartKind::Cotangent(base.clone()),
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn kind(&self) -> &ChartKind {
        &self.0.kind
    }

    pub fn is_cotangent(&self) -> bool {
        matches!(self.0.kind, ChartKind::Cotangent(_))
    }

    /// Base chart of a cotangent chart.
    pub fn base_chart(&self) -> Result<&Chart> {
        match &self.0.kind {
            ChartKind::Cotangent(base) => Ok(base),
            ChartKind::Base => Err(Error::NotCotangent(self.to_string())),
        }
    }

    /// Fiber variable indices `p1..pm` of a cotangent chart.
    pub fn fiber_vars(&self) -> Result<Vec<usize>> {
        let m = self.base_chart()?.dim();
        Ok((m..2 * m).collect())
    }

    pub fn ensure_same(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({self})")
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_cotangent() { "T*" } else { "" };
        write!(f, "{kind}{}", self.0.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cotangent_layout() {
        let base = Chart::euclidean(2);
        let tb = Chart::cotangent(&base);
        assert_eq!(tb.dim(), 4);
        assert_eq!(tb.names(), &["q1", "q2", "p1", "p2"]);
        assert_eq!(tb.fiber_vars().unwrap(), vec![2, 3]);
        assert_eq!(tb.base_chart().unwrap(), &base);
        assert!(base.base_chart().is_err());
    }

    #[test]
    fn structural_equality() {
        assert_eq!(Chart::euclidean(3), Chart::euclidean(3));
        assert_ne!(Chart::euclidean(3), Chart::euclidean(2));
        let base = Chart::euclidean(1);
        assert_ne!(Chart::cotangent(&base), Chart::euclidean(2));
    }
}
