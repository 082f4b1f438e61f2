//! Identity suites. Each suite checks one formula on random cases.

mod brackets;
mod connection;
mod lifts;
mod poisson;

use super::harness::{Case, Suite};
use crate::calculus;
use crate::cotangent;
use crate::error::Result;
use crate::fields::MixedField;
use crate::polyring::Rational;

/// `(-1)^e · f`, with `e` possibly negative.
fn sgn(e: i64, f: MixedField) -> MixedField {
    f.signed(e.rem_euclid(2) == 1)
}

fn scale(f: MixedField, n: i64, d: i64) -> MixedField {
    f.scale(&Rational::new(n.into(), d.into()))
}

fn k_of(f: &MixedField) -> i64 {
    f.form_degree() as i64
}

fn l_of(f: &MixedField) -> i64 {
    f.sym_degree() as i64
}

fn zero_like(f: &MixedField) -> MixedField {
    MixedField::zero(f.chart(), 0, 0)
}

fn cot_zero(c: &Case) -> MixedField {
    MixedField::zero(&c.cot, 0, 0)
}

// Short names for the operations, as they appear in the statements.

fn d(a: &MixedField) -> Result<MixedField> {
    calculus::exterior_d(a)
}

fn ins(k: &MixedField, a: &MixedField) -> Result<MixedField> {
    calculus::insert(k, a)
}

fn lie(k: &MixedField, a: &MixedField) -> Result<MixedField> {
    calculus::lie_derivative(k, a)
}

fn fnb(k: &MixedField, l: &MixedField) -> Result<MixedField> {
    calculus::fn_bracket(k, l)
}

fn wedge(a: &MixedField, b: &MixedField) -> Result<MixedField> {
    a.product(b)
}

fn pb(c: &Case, a: &MixedField) -> Result<MixedField> {
    cotangent::pullback(&c.cot, a)
}

fn h(c: &Case, a: &MixedField) -> Result<MixedField> {
    cotangent::h_map(&c.cot, a)
}

/// `ρ(π* a)`.
fn rho_pb(c: &Case, a: &MixedField) -> Result<MixedField> {
    cotangent::rho_extend(&pb(c, a)?)
}

pub(crate) static CATALOG: &[&[Suite]] = &[
    lifts::PULLBACKS,
    lifts::COMMUTATORS,
    lifts::EXTENDED,
    lifts::HOMOMORPHISMS,
    brackets::SUITES,
    poisson::SUITES,
    connection::SUITES,
];

pub(crate) fn all() -> impl Iterator<Item = &'static Suite> {
    CATALOG.iter().flat_map(|s| s.iter())
}

pub(crate) fn find(id: &str) -> Option<&'static Suite> {
    all().find(|s| s.id.eq_ignore_ascii_case(id))
}
