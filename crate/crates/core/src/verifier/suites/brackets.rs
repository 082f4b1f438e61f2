use super::{d, fnb, ins, k_of, l_of, lie, pb, sgn, wedge, zero_like};
use crate::calculus::{fn_bracket_oracle, lie_bracket, nr_bracket, schouten};
use crate::cotangent::{poisson_fn, pullback_inverse};
use crate::error::Result;
use crate::fields::MixedField;
use crate::verifier::harness::{Case, Kind::*, Outcome, Suite};

fn d21_1(c: &Case) -> Result<Outcome> {
    let (kf, lf, psi) = (c.get("K"), c.get("L"), c.get("psi"));
    let (k, l) = (k_of(kf), k_of(lf));
    let lhs = lie(kf, &ins(lf, psi)?)? - sgn(k * (l - 1), ins(lf, &lie(kf, psi)?)?);
    // the sign is (-1)^{k(l-1)}: with (-1)^{kl}, K = Id and L = Y would give [d,i_Y] = -L_Y
    let rhs = ins(&fnb(kf, lf)?, psi)? - sgn(k * (l - 1), lie(&ins(lf, kf)?, psi)?);
    Ok(Outcome::default().eq("[L_K,i_L] = i([K,L]) - (-1)^{k(l-1)} L(i_L K)", lhs, rhs))
}

fn d21_2(c: &Case) -> Result<Outcome> {
    let (w, lf, psi) = (c.get("omega"), c.get("L"), c.get("psi"));
    let lhs = ins(&wedge(w, lf)?, psi)?;
    Ok(Outcome::default().eq("i(ω∧L)ψ = ω∧i(L)ψ", lhs, wedge(w, &ins(lf, psi)?)?))
}

fn d21_3(c: &Case) -> Result<Outcome> {
    let (w, kf, psi) = (c.get("omega"), c.get("K"), c.get("psi"));
    let (q, k) = (k_of(w), k_of(kf));
    let lhs = lie(&wedge(w, kf)?, psi)?;
    let rhs = wedge(w, &lie(kf, psi)?)? - sgn(q + k - 1, ins(&wedge(&d(w)?, kf)?, psi)?);
    Ok(Outcome::default().eq("L(ω∧K)ψ = ω∧L(K)ψ - (-1)^{q+k-1} i(dω∧K)ψ", lhs, rhs))
}

fn d21_4(c: &Case) -> Result<Outcome> {
    let (w, k1, k2) = (c.get("omega"), c.get("K1"), c.get("K2"));
    let (q, a, b) = (k_of(w), k_of(k1), k_of(k2));
    let lhs = fnb(&wedge(w, k1)?, k2)?;
    let rhs = wedge(w, &fnb(k1, k2)?)? - sgn((q + a) * b, wedge(&lie(k2, w)?, k1)?)
        + sgn(q + a, wedge(&d(w)?, &ins(k1, k2)?)?);
    Ok(Outcome::default().eq(
        "[ω∧K1,K2] = ω∧[K1,K2] - (-1)^{(q+k1)k2} L(K2)ω∧K1 + (-1)^{q+k1} dω∧i(K1)K2",
        lhs,
        rhs,
    ))
}

fn d21_5(c: &Case) -> Result<Outcome> {
    let (phi, x, psi, y) = (c.get("phi"), c.get("X"), c.get("psi"), c.get("Y"));
    let k = k_of(phi);
    let lhs = fnb(&wedge(phi, x)?, &wedge(psi, y)?)?;
    let t1 = wedge(&wedge(phi, psi)?, &lie_bracket(x, y)?)?;
    let t2 = wedge(&wedge(phi, &lie(x, psi)?)?, y)?;
    let t3 = wedge(&wedge(&lie(y, phi)?, psi)?, x)?;
    let t4 = wedge(&wedge(&d(phi)?, &ins(x, psi)?)?, y)?;
    let t5 = wedge(&wedge(&ins(y, phi)?, &d(psi)?)?, x)?;
    let rhs = t1 + t2 - t3 + sgn(k, t4 + t5);
    Ok(Outcome::default().eq(
        "[φ⊗X,ψ⊗Y] = φ∧ψ⊗[X,Y] + φ∧L_Xψ⊗Y - L_Yφ∧ψ⊗X + (-1)^k(dφ∧i_Xψ⊗Y + i_Yφ∧dψ⊗X)",
        lhs,
        rhs,
    ))
}

fn nr(c: &Case) -> Result<Outcome> {
    let (kf, lf, psi) = (c.get("K"), c.get("L"), c.get("psi"));
    let (k, l) = (k_of(kf), k_of(lf));
    let lhs = ins(&nr_bracket(kf, lf)?, psi)?;
    let rhs = ins(kf, &ins(lf, psi)?)? - sgn((k - 1) * (l - 1), ins(lf, &ins(kf, psi)?)?);
    Ok(Outcome::default().eq("i([K,L]^∧) = [i_K,i_L]", lhs, rhs))
}

fn fn_oracle(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    Ok(Outcome::default().eq("[K,L] = derivation oracle", fnb(kf, lf)?, fn_bracket_oracle(kf, lf)?))
}

fn fn_jacobi(c: &Case) -> Result<Outcome> {
    let (a, b, e) = (c.get("K1"), c.get("K2"), c.get("K3"));
    let lhs = fnb(a, &fnb(b, e)?)?;
    let rhs = fnb(&fnb(a, b)?, e)? + sgn(k_of(a) * k_of(b), fnb(b, &fnb(a, e)?)?);
    Ok(Outcome::default().eq("[K1,[K2,K3]] = [[K1,K2],K3] + (-1)^{k1k2}[K2,[K1,K3]]", lhs, rhs))
}

fn fn_anti(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    let rhs = -sgn(k_of(kf) * k_of(lf), fnb(lf, kf)?);
    Ok(Outcome::default().eq("[K,L] = -(-1)^{kl}[L,K]", fnb(kf, lf)?, rhs))
}

fn sch_x(c: &Case) -> Result<Outcome> {
    let (u, v) = (c.get("U"), c.get("V"));
    let direct = schouten(u, v)?;
    let total = l_of(u) + l_of(v);
    if total == 0 {
        return Ok(Outcome::default()
            .eq("[f,g] = 0", direct, zero_like(u))
            .detail("two functions"));
    }
    let (pu, pv) = (pb(c, u)?, pb(c, v)?);
    let bracket = poisson_fn(&pu.as_polynomial().expect("scalar"), &pv.as_polynomial().expect("scalar"))?;
    let oracle = pullback_inverse(&MixedField::scalar(bracket), (total - 1) as usize)?;
    Ok(Outcome::default().eq("[U,V] = (π*)⁻¹{π*U,π*V}", direct, oracle))
}

pub(crate) static SUITES: &[Suite] = &[
    Suite::new(
        "D21-1",
        "[L_K,i_L] = i([K,L]) - (-1)^{k(l-1)} L(i_L K)",
        &[("K", Vvf), ("L", Vvf), ("psi", Form)],
        d21_1,
    ),
    Suite::new("D21-2", "i(ω∧L)ψ = ω∧i(L)ψ", &[("omega", Form), ("L", Vvf), ("psi", Form)], d21_2),
    Suite::new(
        "D21-3",
        "L(ω∧K)ψ = ω∧L(K)ψ - (-1)^{q+k-1} i(dω∧K)ψ",
        &[("omega", Form), ("K", Vvf), ("psi", Form)],
        d21_3,
    ),
    Suite::new(
        "D21-4",
        "[ω∧K1,K2] = ω∧[K1,K2] - (-1)^{(q+k1)k2} L(K2)ω∧K1 + (-1)^{q+k1} dω∧i(K1)K2",
        &[("omega", Form), ("K1", Vvf), ("K2", Vvf)],
        d21_4,
    ),
    Suite::new(
        "D21-5",
        "[φ⊗X,ψ⊗Y] expanded",
        &[("phi", Form), ("X", Vector), ("psi", Form), ("Y", Vector)],
        d21_5,
    ),
    Suite::new("NR", "i([K,L]^∧) = [i_K,i_L]", &[("K", Vvf), ("L", Vvf), ("psi", Form)], nr),
    Suite::new("FN-ORACLE", "FN bracket = commutator of Lie derivations", &[("K", Vvf), ("L", Vvf)], fn_oracle),
    Suite::new(
        "FN-JACOBI",
        "graded Jacobi identity of the FN bracket",
        &[("K1", Vvf), ("K2", Vvf), ("K3", Vvf)],
        fn_jacobi,
    )
    .min_cases(50),
    Suite::new("FN-ANTI", "[K,L] = -(-1)^{kl}[L,K]", &[("K", Vvf), ("L", Vvf)], fn_anti).min_cases(50),
    Suite::new("SCH-X", "Schouten bracket = (π*)⁻¹ of the canonical Poisson bracket", &[("U", SymWide), ("V", SymWide)], sch_x)
        .min_cases(50),
];
