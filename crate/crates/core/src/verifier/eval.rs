//! Evaluation of expressions against a base chart, its cotangent chart, a
//! connection and named bindings.
//!
//! Free symbols resolve to bindings first, then to chart tokens: `x1`,
//! `dx1`, `v1` (or `vx1`) on the base, `q1`, `p1`, `dq1`, `dp1`, `vq1`, `vp1`
//! on the cotangent chart. A bare `I` is the vertical Euler field. Scalar
//! forms on the base are pulled back when combined with cotangent values.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::expr::Expr;
use crate::calculus::{
    exterior_d, extended_insert, fn_bracket, insert, lie_derivative, nr_bracket, schouten,
};
use crate::chart::Chart;
use crate::connection::{
    cov_exterior_diff, delta_g, delta_g_prime, nabla_bracket, nabla_lie, schouten_with_metric_defect,
    ConnectionData, MetricData,
};
use crate::cotangent::{
    graded_poisson_1, graded_poisson_2, h_map, hamiltonian, poincare_primitive, pullback, pullback_inverse,
    rho_extend, vertical_euler,
};
use crate::error::{Error, Result};
use crate::fields::MixedField;
use crate::polyring::Rational;

#[derive(Clone, Debug)]
enum Value {
    Num(Rational),
    Field(MixedField),
}

#[derive(Clone, Debug)]
pub struct Env {
    base: Chart,
    cot: Chart,
    conn: ConnectionData,
    bindings: BTreeMap<String, MixedField>,
}

/// Coordinate, differential or vector token on `chart`.
fn chart_token(chart: &Chart, name: &str) -> Option<MixedField> {
    if let Some(i) = chart.index_of(name) {
        return Some(MixedField::coordinate(chart, i));
    }
    if let Some(i) = name.strip_prefix('d').and_then(|r| chart.index_of(r)) {
        return Some(MixedField::differential(chart, i));
    }
    let rest = name.strip_prefix('v')?;
    if let Some(i) = chart.index_of(rest) {
        return Some(MixedField::vector(chart, i));
    }
    if chart.is_cotangent() {
        return None;
    }
    let i: usize = rest.parse().ok()?;
    (1..=chart.dim()).contains(&i).then(|| MixedField::vector(chart, i - 1))
}

impl Env {
    /// Environment over `base` with the flat connection.
    pub fn new(base: &Chart) -> Env {
        Env::with_connection(ConnectionData::flat(base))
    }

    pub fn with_connection(conn: ConnectionData) -> Env {
        let base = conn.chart().clone();
        Env {
            cot: Chart::cotangent(&base),
            base,
            conn,
            bindings: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn cotangent(&self) -> &Chart {
        &self.cot
    }

    pub fn connection(&self) -> &ConnectionData {
        &self.conn
    }

    pub fn bind(&mut self, name: impl Into<String>, value: MixedField) {
        self.bindings.insert(name.into(), value);
    }

    pub fn bindings(&self) -> &BTreeMap<String, MixedField> {
        &self.bindings
    }

    /// Read `name = expr` lines (`#` starts a comment). Each right-hand side
    /// may use the names bound above it.
    pub fn load_bindings(&mut self, src: &str) -> Result<()> {
        for (no, raw) in src.lines().enumerate() {
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let (name, rhs) = text
                .split_once('=')
                .ok_or_else(|| Error::syntax(0, format!("line {}: expected `name = expr`", no + 1)))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::syntax(0, format!("line {}: bad name `{name}`", no + 1)));
            }
            let value = self.eval_str(rhs)?;
            self.bind(name, value);
        }
        Ok(())
    }

    pub fn eval_str(&self, src: &str) -> Result<MixedField> {
        self.eval(&Expr::parse(src)?)
    }

    pub fn eval(&self, e: &Expr) -> Result<MixedField> {
        Ok(match self.value(e)? {
            Value::Num(r) => MixedField::constant(&self.base, r),
            Value::Field(f) => f,
        })
    }

    /// Evaluate and place the result on `chart` (base or cotangent).
    pub fn eval_on(&self, e: &Expr, chart: &Chart) -> Result<MixedField> {
        let v = match self.value(e)? {
            Value::Num(r) => return Ok(MixedField::constant(chart, r)),
            Value::Field(f) => f,
        };
        if chart.is_cotangent() && v.chart() != chart {
            return self.to_cot(v);
        }
        v.chart().ensure_same(chart)?;
        Ok(v)
    }

    fn symbol(&self, name: &str) -> Result<MixedField> {
        if let Some(v) = self.bindings.get(name) {
            return Ok(v.clone());
        }
        if name == "I" {
            return vertical_euler(&self.cot);
        }
        chart_token(&self.base, name)
            .or_else(|| chart_token(&self.cot, name))
            .ok_or_else(|| Error::UnboundSymbol(name.to_string()))
    }

    fn to_cot(&self, f: MixedField) -> Result<MixedField> {
        if f.chart().is_cotangent() || f.sym_degree() > 0 {
            return Ok(f);
        }
        pullback(&self.cot, &f)
    }

    fn field(&self, e: &Expr) -> Result<MixedField> {
        self.eval(e)
    }

    fn cot_field(&self, e: &Expr) -> Result<MixedField> {
        match self.value(e)? {
            Value::Num(r) => Ok(MixedField::constant(&self.cot, r)),
            Value::Field(f) => self.to_cot(f),
        }
    }

    /// Put two values on one chart.
    fn pair(&self, a: Value, b: Value) -> Result<(MixedField, MixedField)> {
        match (a, b) {
            (Value::Num(x), Value::Num(y)) => {
                Ok((MixedField::constant(&self.base, x), MixedField::constant(&self.base, y)))
            }
            (Value::Num(x), Value::Field(g)) => Ok((MixedField::constant(g.chart(), x), g)),
            (Value::Field(f), Value::Num(y)) => {
                let c = MixedField::constant(f.chart(), y);
                Ok((f, c))
            }
            (Value::Field(f), Value::Field(g)) => {
                if f.chart().is_cotangent() == g.chart().is_cotangent() {
                    Ok((f, g))
                } else {
                    Ok((self.to_cot(f)?, self.to_cot(g)?))
                }
            }
        }
    }

    fn field_pair(&self, a: &Expr, b: &Expr) -> Result<(MixedField, MixedField)> {
        self.pair(self.value(a)?, self.value(b)?)
    }

    fn metric(&self) -> Result<&MetricData> {
        self.conn
            .metric()
            .ok_or_else(|| Error::InvalidMetric("the connection carries no metric".into()))
    }

    fn value(&self, e: &Expr) -> Result<Value> {
        Ok(match e {
            Expr::Number(r) => Value::Num(r.clone()),
            Expr::Symbol(s) => Value::Field(self.symbol(s)?),
            Expr::Group(a) => self.value(a)?,
            Expr::Neg(a) => match self.value(a)? {
                Value::Num(r) => Value::Num(-r),
                Value::Field(f) => Value::Field(-&f),
            },
            Expr::Pow(a, n) => match self.value(a)? {
                Value::Num(r) => Value::Num(num_traits::pow(r, *n as usize)),
                Value::Field(f) => {
                    let mut acc = MixedField::one(f.chart());
                    for _ in 0..*n {
                        acc = acc.product(&f)?;
                    }
                    Value::Field(acc)
                }
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let neg = matches!(e, Expr::Sub(..));
                match (self.value(a)?, self.value(b)?) {
                    (Value::Num(x), Value::Num(y)) => Value::Num(if neg { x - y } else { x + y }),
                    (x, y) => {
                        let (f, g) = self.pair(x, y)?;
                        Value::Field(if neg { f.try_sub(&g)? } else { f.try_add(&g)? })
                    }
                }
            }
            Expr::Product(a, _, b) => match (self.value(a)?, self.value(b)?) {
                (Value::Num(x), Value::Num(y)) => Value::Num(x * y),
                (Value::Num(x), Value::Field(f)) | (Value::Field(f), Value::Num(x)) => Value::Field(f.scale(&x)),
                (x, y) => {
                    let (f, g) = self.pair(x, y)?;
                    Value::Field(f.product(&g)?)
                }
            },
            Expr::Apply { op, args } => Value::Field(self.apply(op, args)?),
        })
    }

    fn apply(&self, op: &str, args: &[Expr]) -> Result<MixedField> {
        let binary = |f: fn(&MixedField, &MixedField) -> Result<MixedField>| {
            let (a, b) = self.field_pair(&args[0], &args[1])?;
            f(&a, &b)
        };
        let cot_binary = |f: fn(&MixedField, &MixedField) -> Result<MixedField>| {
            f(&self.cot_field(&args[0])?, &self.cot_field(&args[1])?)
        };
        match op {
            "d" => exterior_d(&self.field(&args[0])?),
            "i" => binary(insert),
            "L" => binary(lie_derivative),
            "FN" => binary(fn_bracket),
            "NR" => binary(nr_bracket),
            "SCH" => binary(schouten),
            "XI" => binary(extended_insert),
            "rho" => rho_extend(&self.cot_field(&args[0])?),
            "H" => hamiltonian(&self.cot_field(&args[0])?),
            "h" => h_map(&self.cot, &self.field(&args[0])?),
            "pb" => pullback(&self.cot, &self.field(&args[0])?),
            "pbinv" => {
                let Value::Num(l) = self.value(&args[1])? else {
                    return Err(Error::valence("pbinv expects a literal symmetric degree"));
                };
                let l = l
                    .is_integer()
                    .then(|| l.to_integer().to_usize())
                    .flatten()
                    .ok_or_else(|| Error::valence(format!("pbinv degree {l} is not a natural number")))?;
                pullback_inverse(&self.cot_field(&args[0])?, l)
            }
            "gp1" => cot_binary(graded_poisson_1),
            "gp2" => cot_binary(graded_poisson_2),
            "I" => vertical_euler(&self.cot),
            "P" => poincare_primitive(&self.field(&args[0])?),
            "nabla" => cov_exterior_diff(&self.conn, &self.field(&args[0])?),
            "dg" => delta_g(self.metric()?, &self.field(&args[0])?),
            "dgp" => delta_g_prime(self.metric()?, &self.field(&args[0])?),
            "Dop" => schouten_with_metric_defect(&self.conn, &self.field(&args[0])?),
            "LN" => {
                let (a, w) = self.field_pair(&args[0], &args[1])?;
                nabla_lie(&self.conn, &a, &w)
            }
            "NB" => {
                let (a, b) = self.field_pair(&args[0], &args[1])?;
                nabla_bracket(&self.conn, &a, &b)
            }
            other => Err(Error::UnknownOperator(other.to_string())),
        }
    }
}

/// Parse `src` as a field on `chart`. On a cotangent chart, base scalar
/// forms are pulled back.
pub fn parse_field(chart: &Chart, src: &str) -> Result<MixedField> {
    let env = match chart.kind() {
        crate::chart::ChartKind::Cotangent(base) => {
            let mut env = Env::new(base);
            env.cot = chart.clone();
            env
        }
        _ => Env::new(chart),
    };
    env.eval_on(&Expr::parse(src)?, chart)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_values() {
        let env = Env::new(&Chart::euclidean(2));
        let v = env.eval_str("gp1(p1*dq1, p1*p2)").unwrap();
        assert_eq!(v, env.eval_str("p2*dp1").unwrap());
        assert_eq!(v.to_string(), "p2 * dp1");
        let dv = env.eval_str("d(gp1(p1*dq1, p1*p2))").unwrap();
        assert_eq!(dv, env.eval_str("-dp1^dp2").unwrap());
        assert!(env.eval_str("FN(dx1|v2, dx1|v2)").unwrap().is_zero());
    }

    #[test]
    fn bound_symbols() {
        let mut env = Env::new(&Chart::euclidean(2));
        env.load_bindings("# vector-valued forms\nK = x2*dx1|v1\nL = dx2|v1 + K\n").unwrap();
        let direct = fn_bracket(&env.bindings()["K"], &env.bindings()["L"]).unwrap();
        assert_eq!(env.eval_str("FN(K, L)").unwrap(), direct);
        let lifted = env.eval_str("FN(h(K), h(L))").unwrap();
        assert_eq!(lifted, h_map(env.cotangent(), &direct).unwrap());
        assert_eq!(env.eval_str("FN(K, M)").unwrap_err(), Error::UnboundSymbol("M".into()));
    }

    #[test]
    fn tokens_and_coercions() {
        let env = Env::new(&Chart::euclidean(2));
        assert_eq!(env.eval_str("v2").unwrap(), MixedField::vector(env.base(), 1));
        assert_eq!(env.eval_str("vx2").unwrap(), MixedField::vector(env.base(), 1));
        assert_eq!(env.eval_str("vp1").unwrap(), MixedField::vector(env.cotangent(), 2));
        // x1 on the base is pulled back next to p1
        assert_eq!(env.eval_str("x1*p1").unwrap(), env.eval_str("q1*p1").unwrap());
        assert_eq!(env.eval_str("1/2 * x1^2").unwrap().to_string(), "1/2 * x1^2");
        assert_eq!(env.eval_str("I").unwrap(), env.eval_str("p1*vp1 + p2*vp2").unwrap());
        assert_eq!(env.eval_str("pbinv(pb(x1*v1.v2), 2)").unwrap(), env.eval_str("x1*v1.v2").unwrap());
        assert!(matches!(env.eval_str("pbinv(p1, x1)"), Err(Error::BadValence(_))));
        assert!(env.eval_str("dg(v1)").is_ok());
    }

    #[test]
    fn parse_field_round_trips_display() {
        let base = Chart::euclidean(3);
        let cot = Chart::cotangent(&base);
        for (chart, src) in [
            (&base, "-2 * x1 * dx1^dx3 | v1.v2 + (x2 + 1) * dx2^dx3 | v2.v2"),
            (&cot, "p2 * dp1^dq2 | vq1 - 1/2 * q1^2 * dq1^dp3 | vp2"),
        ] {
            let f = parse_field(chart, src).unwrap();
            assert_eq!(parse_field(chart, &f.to_string()).unwrap(), f);
            assert_eq!(f.chart(), chart);
        }
        assert_eq!(parse_field(&cot, "x1").unwrap(), parse_field(&cot, "q1").unwrap());
    }
}
