//! Exact multivariate polynomials over the rationals.
//!
//! Every coefficient function in the crate is a [`Polynomial`] bound to a
//! [`Chart`]. Terms are kept in a `BTreeMap` keyed by dense exponent vectors,
//! so the representation is canonical: no zero coefficients, one entry per
//! monomial, and structural equality is mathematical equality.

pub(crate) mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chart::Chart;
use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector, one entry per chart variable.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    /// Degree counted only over the given variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| u32::from(self.0[v])).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(chart: &Chart) -> Self {
        Polynomial {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        let mut p = Polynomial::zero(chart);
        p.add_term(Monomial::one(chart.dim()), c);
        p
    }

    pub fn integer(chart: &Chart, c: i64) -> Self {
        Polynomial::constant(chart, Rational::from_integer(c.into()))
    }

    pub fn one(chart: &Chart) -> Self {
        Polynomial::integer(chart, 1)
    }

    /// The coordinate function of variable `index`.
    pub fn var(chart: &Chart, index: usize) -> Self {
        let mut p = Polynomial::zero(chart);
        p.add_term(Monomial::var(chart.dim(), index), Rational::one());
        p
    }

    pub fn monomial(chart: &Chart, monomial: Monomial, c: Rational) -> Self {
        assert_eq!(monomial.0.len(), chart.dim(), "monomial arity");
        let mut p = Polynomial::zero(chart);
        p.add_term(monomial, c);
        p
    }

    pub fn from_terms(chart: &Chart, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(chart);
        for (m, c) in terms {
            assert_eq!(m.0.len(), chart.dim(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.chart.dim()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = Polynomial::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.chart);
        }
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::one(&self.chart), |acc, _| &acc * self)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Polynomial {
        assert!(var < self.chart.dim(), "partial: variable out of range");
        let mut out = Polynomial::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.chart.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.chart.dim(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v *= x;
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Split into pieces homogeneous in `fiber_vars`, keyed by fiber degree.
    pub fn fiber_homogeneous_components(&self, fiber_vars: &[usize]) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree_in(fiber_vars))
                .or_insert_with(|| Polynomial::zero(&self.chart))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Re-express on another chart by mapping variable `i` to `var_map[i]`.
    pub(crate) fn relabel(&self, target: &Chart, var_map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.dim()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[var_map[i]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Leading coefficient sign, used for normalizing printed output.
    pub fn leading_is_negative(&self) -> bool {
        self.terms.values().next_back().is_some_and(Signed::is_negative)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart2() -> Chart {
        Chart::euclidean(2)
    }

    #[test]
    fn difference_of_squares() {
        let c = chart2();
        let x = Polynomial::var(&c, 0);
        let one = Polynomial::one(&c);
        let lhs = &(&x + &one) * &(&x - &one);
        let rhs = &x.pow(2) - &one;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity() {
        let c = chart2();
        let p = Polynomial::parse(&c, "3 * x1^2 * x2 - 1/2 * x2").unwrap();
        assert_eq!(&p + &Polynomial::zero(&c), p);
    }

    #[test]
    fn rational_product() {
        // (1/2 x1)(2/3 x2) = 1/3 x1 x2: 1*2 / (2*3) reduced
        let c = chart2();
        let a = Polynomial::var(&c, 0).scale(&rat(1, 2));
        let b = Polynomial::var(&c, 1).scale(&rat(2, 3));
        let expect = Polynomial::monomial(&c, Monomial::from_exponents(vec![1, 1]), rat(1, 3));
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn chart_mismatch() {
        let a = Polynomial::var(&Chart::euclidean(2), 0);
        let b = Polynomial::var(&Chart::euclidean(3), 0);
        assert!(matches!(a.try_add(&b), Err(Error::ChartMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::ChartMismatch { .. })));
    }

    #[test]
    fn partials() {
        let tb = Chart::cotangent(&Chart::euclidean(2));
        let p = Polynomial::parse(&tb, "q1^2 * q2").unwrap();
        assert_eq!(p.partial(0), Polynomial::parse(&tb, "2 * q1 * q2").unwrap());
        let q1 = Polynomial::var(&tb, 0);
        assert!(q1.partial(2).is_zero());
        let pp = Polynomial::parse(&tb, "p1 * p2").unwrap();
        assert_eq!(pp.partial(2), Polynomial::var(&tb, 3));
    }

    #[test]
    fn evaluation() {
        let tb = Chart::cotangent(&Chart::euclidean(2));
        let x = Polynomial::var(&tb, 0).pow(2);
        let pt = |v: [i64; 4]| v.map(|n| rat(n, 1)).to_vec();
        assert_eq!(x.evaluate(&pt([3, 0, 0, 0])).unwrap(), rat(9, 1));
        let five = Polynomial::integer(&tb, 5);
        assert_eq!(five.evaluate(&pt([1, -4, 2, 8])).unwrap(), rat(5, 1));
        let pp = Polynomial::parse(&tb, "p1 * p2").unwrap();
        assert_eq!(pp.evaluate(&pt([0, 0, 2, 7])).unwrap(), rat(14, 1));
        assert!(matches!(
            pp.evaluate(&[rat(1, 1)]),
            Err(Error::DimensionMismatch { expected: 4, got: 1 })
        ));
    }

    #[test]
    fn fiber_components() {
        let tb = Chart::cotangent(&Chart::euclidean(2));
        let fiber = tb.fiber_vars().unwrap();
        let p = Polynomial::parse(&tb, "p1 * p2 + q1 * p1").unwrap();
        let comps = p.fiber_homogeneous_components(&fiber);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&2], Polynomial::parse(&tb, "p1 * p2").unwrap());
        assert_eq!(comps[&1], Polynomial::parse(&tb, "q1 * p1").unwrap());

        let q = Polynomial::parse(&tb, "q1 * q2").unwrap();
        let comps = q.fiber_homogeneous_components(&fiber);
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert!(Polynomial::zero(&tb).fiber_homogeneous_components(&fiber).is_empty());
    }
}
