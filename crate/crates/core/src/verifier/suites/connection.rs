use super::{fnb, k_of, lie, scale, sgn, wedge, zero_like};
use crate::calculus::schouten;
use crate::connection::{
    cov_exterior_diff, delta_g, delta_g_prime, nabla_bracket, nabla_lie, parse_metric_document,
    schouten_with_metric_defect, MetricData,
};
use crate::error::{Error, Result};
use crate::fields::MixedField;
use crate::verifier::eval::parse_field;
use crate::verifier::harness::{Case, Kind::*, Outcome, Suite};

fn metric(c: &Case) -> Result<&MetricData> {
    c.conn()
        .metric()
        .ok_or_else(|| Error::InvalidMetric("suite needs a metric".into()))
}

fn delta2(c: &Case) -> Result<Outcome> {
    let (a, g) = (c.get("A"), metric(c)?);
    Ok(Outcome::default()
        .eq("δ_g² = 0", delta_g(g, &delta_g(g, a)?)?, zero_like(a))
        .eq("δ'_g² = 0", delta_g_prime(g, &delta_g_prime(g, a)?)?, zero_like(a)))
}

fn anti(c: &Case) -> Result<Outcome> {
    let (a, g) = (c.get("A"), metric(c)?);
    let lhs = delta_g(g, &delta_g_prime(g, a)?)? + delta_g_prime(g, &delta_g(g, a)?)?;
    let total = (a.form_degree() + a.sym_degree()) as i64;
    Ok(Outcome::default().eq("δ_g δ'_g + δ'_g δ_g = (k+l) id", lhs, scale(a.clone(), total, 1)))
}

fn nabla_delta(c: &Case) -> Result<Outcome> {
    let (a, g, conn) = (c.get("A"), metric(c)?, c.conn());
    let lhs = cov_exterior_diff(conn, &delta_g(g, a)?)? + delta_g(g, &cov_exterior_diff(conn, a)?)?;
    Ok(Outcome::default().eq("∇δ_g + δ_g∇ = 0", lhs, zero_like(a)))
}

fn nb_fn(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    Ok(Outcome::default().eq("[K,L]_∇ = [K,L]", nabla_bracket(c.conn(), kf, lf)?, fnb(kf, lf)?))
}

fn nb_sch(c: &Case) -> Result<Outcome> {
    let (u, v) = (c.get("U"), c.get("V"));
    Ok(Outcome::default().eq("[U,V]_∇ = [U,V]", nabla_bracket(c.conn(), u, v)?, schouten(u, v)?))
}

fn d_sch(c: &Case) -> Result<Outcome> {
    let s = c.get("S");
    let gbar = metric(c)?.contravariant_field();
    let rhs = scale(schouten(&gbar, s)?, 1, 2);
    Ok(Outcome::default().eq("D S = ½[g̲,S]", schouten_with_metric_defect(c.conn(), s)?, rhs))
}

fn nb_anti(c: &Case) -> Result<Outcome> {
    let (a, b) = (c.get("A"), c.get("B"));
    let rhs = -sgn(k_of(a) * k_of(b), nabla_bracket(c.conn(), b, a)?);
    Ok(Outcome::default().eq("[A,B]_∇ = -(-1)^{ab}[B,A]_∇", nabla_bracket(c.conn(), a, b)?, rhs))
}

fn nb_deriv(c: &Case) -> Result<Outcome> {
    let (u, b, e) = (c.get("U"), c.get("B"), c.get("C"));
    let conn = c.conn();
    let lhs = nabla_bracket(conn, u, &wedge(b, e)?)?;
    let rhs = wedge(&nabla_bracket(conn, u, b)?, e)? + wedge(b, &nabla_bracket(conn, u, e)?)?;
    Ok(Outcome::default().eq("[U,B∧C]_∇ = [U,B]_∇∧C + B∧[U,C]_∇", lhs, rhs))
}

fn nb_lie(c: &Case) -> Result<Outcome> {
    let (kf, w) = (c.get("K"), c.get("omega"));
    Ok(Outcome::default().eq("L^∇_K ω = L_K ω", nabla_lie(c.conn(), kf, w)?, lie(kf, w)?))
}

fn nb_jacobi(c: &Case) -> Result<Outcome> {
    let (a, b, e) = (c.get("A"), c.get("B"), c.get("C"));
    let nb = |x: &MixedField, y: &MixedField| nabla_bracket(c.conn(), x, y);
    let lhs = nb(a, &nb(b, e)?)?;
    let rhs = nb(&nb(a, b)?, e)? + sgn(k_of(a) * k_of(b), nb(b, &nb(a, e)?)?);
    Ok(Outcome::default().eq("[A,[B,C]_∇]_∇ = [[A,B]_∇,C]_∇ + (-1)^{ab}[B,[A,C]_∇]_∇", lhs, rhs))
}

/// Flat metric on R²; the triple comes from exhausting small monomials.
pub(crate) const NB_WITNESS_METRIC: &str = "chart x1 x2\ng(1,1) = 1\ng(2,2) = 1\nginv(1,1) = 1\nginv(2,2) = 1\n";
pub(crate) const NB_WITNESS: [&str; 3] = ["x1 * v1.v2", "x2 * dx1", "dx2 | v1"];

fn nb_jacobi_pinned() -> Result<Case> {
    let conn = parse_metric_document(NB_WITNESS_METRIC)?;
    let base = conn.chart().clone();
    let mut case = Case::new(
        &base,
        vec![
            ("A", parse_field(&base, NB_WITNESS[0])?),
            ("B", parse_field(&base, NB_WITNESS[1])?),
            ("C", parse_field(&base, NB_WITNESS[2])?),
        ],
    );
    case.conn = Some(conn);
    Ok(case)
}

pub(crate) static SUITES: &[Suite] = &[
    Suite::new("CONN-DELTA2", "δ_g² = 0, δ'_g² = 0", &[("A", Any)], delta2).with_metric(),
    Suite::new("CONN-ANTI", "δ_g δ'_g + δ'_g δ_g = (k+l) id", &[("A", Any)], anti).with_metric(),
    Suite::new("CONN-NABLA-DELTA", "∇δ_g + δ_g∇ = 0", &[("A", Any)], nabla_delta).with_metric(),
    Suite::new("CONN-NB-FN", "[,]_∇ restricts to the FN bracket on Ω(M;TM)", &[("K", Vvf), ("L", Vvf)], nb_fn)
        .with_metric(),
    Suite::new("CONN-NB-SCH", "[,]_∇ restricts to the Schouten bracket on Γ(STM)", &[("U", Sym), ("V", Sym)], nb_sch)
        .with_metric(),
    Suite::new("CONN-D-SCH", "D = ½[g̲,·] on Γ(STM)", &[("S", Sym)], d_sch).with_metric(),
    Suite::new("CONN-NB-ANTI", "[A,B]_∇ = -(-1)^{ab}[B,A]_∇", &[("A", Any), ("B", Any)], nb_anti).with_metric(),
    Suite::new(
        "CONN-NB-DERIV",
        "[U,·]_∇ is a derivation for U of form degree 0",
        &[("U", Sym), ("B", Any), ("C", Any)],
        nb_deriv,
    )
    .with_metric(),
    Suite::new("CONN-NB-LIE", "L^∇_K = L_K for vector-valued forms", &[("K", Vvf), ("omega", Form)], nb_lie).with_metric(),
    Suite::new(
        "NB-JACOBI",
        "[,]_∇ violates the graded Jacobi identity",
        &[("A", Any), ("B", Any), ("C", Any)],
        nb_jacobi,
    )
    .with_metric()
    .min_dim(2)
    .expected_failure()
    .pinned(nb_jacobi_pinned),
];
