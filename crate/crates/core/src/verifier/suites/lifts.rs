use super::{cot_zero, d, fnb, h, ins, k_of, l_of, lie, pb, rho_pb, scale, sgn, zero_like};
use crate::calculus::{extended_insert, lie_bracket, schouten};
use crate::cotangent::{
    bracket_in_image, canonical_structures, graded_poisson_1, hamiltonian, poincare_primitive, pullback_inverse,
    vertical_euler, Membership, ObstructionKind,
};
use crate::error::Result;
use crate::fields::MixedField;
use crate::polyring::{Monomial, Polynomial};
use crate::verifier::eval::parse_field;
use crate::verifier::harness::{Case, Kind::*, Outcome, Suite};
use crate::Chart;

fn omega(c: &Case) -> Result<MixedField> {
    Ok(canonical_structures(&c.cot)?.symplectic)
}

/// Pullback along the zero section: set `p = 0`, drop `dp` factors.
fn zero_section(base: &Chart, phi: &MixedField) -> MixedField {
    let m = base.dim();
    let mut out = MixedField::zero(base, phi.form_degree(), 0);
    for (b, coeff) in phi.terms() {
        if b.form.indices().any(|i| i >= m) {
            continue;
        }
        let terms = coeff
            .terms()
            .filter(|(mono, _)| mono.exponents()[m..].iter().all(|&e| e == 0))
            .map(|(mono, r)| (Monomial::from_exponents(mono.exponents()[..m].to_vec()), r.clone()));
        let p = Polynomial::from_terms(base, terms);
        let form: Vec<usize> = b.form.indices().collect();
        out = &out + &MixedField::term(base, &form, &[], p).expect("horizontal basis word");
    }
    out
}

/// Fiber degree of a fiber-homogeneous form (0 for zero).
fn fiber_degree(c: &Case, phi: &MixedField) -> usize {
    let m = c.base.dim();
    phi.terms()
        .flat_map(|(_, p)| p.terms().map(|(mono, _)| mono.exponents()[m..].iter().map(|&e| e as usize).sum()))
        .next()
        .unwrap_or(0)
}

// pullbacks and the kernel of h

fn l32_2(c: &Case) -> Result<Outcome> {
    let a = c.get("A");
    let (k, l) = (k_of(a), l_of(a));
    let ha = h(c, a)?;
    let i_ha_omega = ins(&ha, &omega(c)?)?;
    if l > 0 {
        // dπ*A = (-1)^k/(k+1) i_{hA}ω and π*A = (1/l) i_I dπ*A
        let dpb = sgn(k, scale(i_ha_omega, 1, k + 1));
        let recovered = pullback_inverse(&scale(ins(&vertical_euler(&c.cot)?, &dpb)?, 1, l), l as usize)?;
        Ok(Outcome::default().eq("A = pbinv((1/l) i_I ((-1)^k/(k+1)) i_{hA}ω, l)", recovered, a.clone()))
    } else {
        let closed = d(a)?.is_zero();
        Ok(Outcome::default()
            .holds("hφ = 0 iff dφ = 0", ha.is_zero() == closed, format!("hφ = {ha}, closed: {closed}"))
            .eq("i_{hφ}ω = (-1)^k (k+1) dπ*φ", i_ha_omega, sgn(k, scale(d(&pb(c, a)?)?, k + 1, 1)))
            .detail(if closed { "closed φ" } else { "non-closed φ" }))
    }
}

fn l32_3(c: &Case) -> Result<Outcome> {
    let phi = c.get("phi");
    let lifted = pb(c, phi)?;
    let primitive = poincare_primitive(&lifted)?;
    let descended = zero_section(&c.base, &primitive);
    Ok(Outcome::default()
        .eq("dΨ = π*φ", d(&primitive)?, lifted)
        .eq("d(s*Ψ) = φ", d(&descended)?, phi.clone()))
}

fn l32_4(c: &Case) -> Result<Outcome> {
    let a = c.get("A");
    let l = a.sym_degree();
    let pa = pb(c, a)?;
    let phi = c.get("Phi");
    let lp = fiber_degree(c, phi);
    let i = vertical_euler(&c.cot)?;
    Ok(Outcome::default()
        .eq("L_I π*A = l π*A", lie(&i, &pa)?, scale(pa.clone(), l as i64, 1))
        .eq("pbinv(π*A, l) = A", pullback_inverse(&pa, l)?, a.clone())
        .eq("L_I Φ = l Φ", lie(&i, phi)?, scale(phi.clone(), lp as i64, 1))
        .eq("π* pbinv(Φ, l) = Φ", pb(c, &pullback_inverse(phi, lp)?)?, phi.clone()))
}

fn l32_symp(c: &Case) -> Result<Outcome> {
    let a = c.get("A");
    let w = omega(c)?;
    Ok(Outcome::default().eq("L_{hA} ω = 0", lie(&h(c, a)?, &w)?, zero_like(&w)))
}

pub(crate) static PULLBACKS: &[Suite] = &[
    Suite::new("L32-2", "h is injective for l > 0; for l = 0, hφ = 0 iff dφ = 0", &[("A", AnyOrClosed)], l32_2),
    Suite::new("L32-3", "π*φ exact implies φ exact", &[("phi", Exact)], l32_3),
    Suite::new(
        "L32-4",
        "im π* = horizontal forms with L_I Φ = l Φ",
        &[("A", Any), ("Phi", Horizontal)],
        l32_4,
    ),
    Suite::new("L32-SYMP", "L_{hA} ω = 0", &[("A", Any)], l32_symp),
];

// commutation relations of lifts

fn l33_1(c: &Case) -> Result<Outcome> {
    let (x, y) = (c.get("X"), c.get("Y"));
    Ok(Outcome::default().eq("[hX,hY] = h[X,Y]", fnb(&h(c, x)?, &h(c, y)?)?, h(c, &lie_bracket(x, y)?)?))
}

fn l33_2(c: &Case) -> Result<Outcome> {
    let (phi, psi) = (c.get("phi"), c.get("psi"));
    let rphi = rho_pb(c, phi)?;
    let rpsi = rho_pb(c, psi)?;
    Ok(Outcome::default()
        .eq("[ρφ,ρψ] = 0", fnb(&rphi, &rpsi)?, zero_like(&rphi))
        .eq("[hφ,ρψ] = 0", fnb(&h(c, phi)?, &rpsi)?, zero_like(&rphi)))
}

fn l33_3(c: &Case) -> Result<Outcome> {
    let (x, phi) = (c.get("X"), c.get("phi"));
    let hx = h(c, x)?;
    let lx_phi = lie(x, phi)?;
    Ok(Outcome::default()
        .eq("[hX,ρφ] = ρ L_Xφ", fnb(&hx, &rho_pb(c, phi)?)?, rho_pb(c, &lx_phi)?)
        .eq("[hX,hφ] = h L_Xφ", fnb(&hx, &h(c, phi)?)?, h(c, &lx_phi)?))
}

fn l33_4(c: &Case) -> Result<Outcome> {
    let (phi, psi) = (c.get("phi"), c.get("psi"));
    let rphi = rho_pb(c, phi)?;
    let z = cot_zero(c);
    Ok(Outcome::default()
        .eq("i_{ρφ}ψ = 0", ins(&rphi, &pb(c, psi)?)?, z.clone())
        .eq("i_{ρφ}ρψ = 0", ins(&rphi, &rho_pb(c, psi)?)?, z.clone())
        .eq("L_{ρφ}ψ = 0", lie(&rphi, &pb(c, psi)?)?, z))
}

fn l33_5(c: &Case) -> Result<Outcome> {
    let (phi, x) = (c.get("phi"), c.get("X"));
    let px = pb(c, x)?;
    Ok(Outcome::default()
        .eq("L_{ρφ}π*X = -i_Xφ", lie(&rho_pb(c, phi)?, &px)?, -pb(c, &ins(x, phi)?)?)
        .eq("L_{hφ}π*X = -i_X dφ", lie(&h(c, phi)?, &px)?, -pb(c, &ins(x, &d(phi)?)?)?))
}

fn l33_6(c: &Case) -> Result<Outcome> {
    let (kf, f, phi) = (c.get("K"), c.get("f"), c.get("phi"));
    let hk = h(c, kf)?;
    Ok(Outcome::default()
        .eq("L_{hK}f = L_K f", lie(&hk, &pb(c, f)?)?, pb(c, &lie(kf, f)?)?)
        .eq("L_{hK}φ = L_Kφ", lie(&hk, &pb(c, phi)?)?, pb(c, &lie(kf, phi)?)?)
        .eq("i_{hK}φ = i_Kφ", ins(&hk, &pb(c, phi)?)?, pb(c, &ins(kf, phi)?)?))
}

fn l33_7(c: &Case) -> Result<Outcome> {
    let (lf, f) = (c.get("L"), c.get("f"));
    Ok(Outcome::default().eq("[hL,hf] = h L_L f", fnb(&h(c, lf)?, &h(c, f)?)?, h(c, &lie(lf, f)?)?))
}

fn l33_8(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    let (k, l) = (k_of(kf), k_of(lf));
    let lhs = lie(&h(c, kf)?, &pb(c, lf)?)?;
    let rhs = pb(c, &fnb(kf, lf)?)? + sgn((k - 1) * l, d(&pb(c, &ins(lf, kf)?)?)?);
    Ok(Outcome::default().eq("L_{hK}π*L = π*[K,L] + (-1)^{(k-1)l} dπ*(i_L K)", lhs, rhs))
}

fn l33_9(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    let hk = h(c, kf)?;
    let lhs = d(&lie(&hk, &pb(c, lf)?)?)?;
    let mid = sgn(k_of(kf), lie(&hk, &d(&pb(c, lf)?)?)?);
    Ok(Outcome::default()
        .eq("dL_{hK}π*L = (-1)^k L_{hK}dπ*L", lhs.clone(), mid)
        .eq("dL_{hK}π*L = dπ*[K,L]", lhs, d(&pb(c, &fnb(kf, lf)?)?)?))
}

fn l33_10(c: &Case) -> Result<Outcome> {
    let (kf, psi) = (c.get("K"), c.get("psi"));
    let rk = rho_pb(c, kf)?;
    let ppsi = pb(c, psi)?;
    Ok(Outcome::default()
        .eq("i_{ρπ*K}ψ = 0", ins(&rk, &ppsi)?, cot_zero(c))
        .eq("L_{ρπ*K}ψ = 0", lie(&rk, &ppsi)?, cot_zero(c)))
}

fn l33_11(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    let (k, l) = (k_of(kf), k_of(lf));
    let lhs = lie(&rho_pb(c, kf)?, &pb(c, lf)?)?;
    let rhs = -sgn((k - 1) * l, pb(c, &ins(lf, kf)?)?);
    Ok(Outcome::default().eq("L_{ρπ*K}π*L = -(-1)^{(k-1)l} π*i_L K", lhs, rhs))
}

fn l33_12(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    Ok(Outcome::default().eq("i_{hK}π*L = π*i_K L", ins(&h(c, kf)?, &pb(c, lf)?)?, pb(c, &ins(kf, lf)?)?))
}

fn l33_13(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    let (k, l) = (k_of(kf), k_of(lf));
    let lhs = ins(&h(c, kf)?, &d(&pb(c, lf)?)?)?;
    let inner = ins(kf, lf)? + sgn((k - 1) * (l - 1), ins(lf, kf)?);
    let rhs = pb(c, &fnb(kf, lf)?)? - sgn(k, d(&pb(c, &inner)?)?);
    Ok(Outcome::default().eq(
        "i_{hK}dπ*L = π*[K,L] - (-1)^k dπ*(i_K L + (-1)^{(k-1)(l-1)} i_L K)",
        lhs,
        rhs,
    ))
}

fn l33_14(c: &Case) -> Result<Outcome> {
    let (x, psi) = (c.get("X"), c.get("psi"));
    let lhs = ins(&h(c, x)?, &rho_pb(c, psi)?)?;
    Ok(Outcome::default().eq("i_{hX}ρψ = -ρ i_Xψ", lhs, -rho_pb(c, &ins(x, psi)?)?))
}

fn l33_15(c: &Case) -> Result<Outcome> {
    let (phi, lf) = (c.get("phi"), c.get("L"));
    let (p, l) = (k_of(phi), k_of(lf));
    let lhs = lie(&h(c, phi)?, &pb(c, lf)?)?;
    let rhs = -sgn(p * l, pb(c, &ins(lf, &d(phi)?)?)?);
    Ok(Outcome::default().eq("L_{hφ}π*L = -(-1)^{pl} π*i_L dφ", lhs, rhs))
}

fn l33_16(c: &Case) -> Result<Outcome> {
    let (kf, psi) = (c.get("K"), c.get("psi"));
    let hpsi = h(c, psi)?;
    let lhs = fnb(&rho_pb(c, kf)?, &hpsi)?;
    // for k = 0 the bracket vanishes and i_{hX}hψ = -ρ i_X dψ, which fixes the sign
    let rhs = rho_pb(c, &ins(kf, &d(psi)?)?)? + sgn(k_of(kf), ins(&h(c, kf)?, &hpsi)?);
    Ok(Outcome::default().eq("[ρπ*K,hψ] = ρ(i_K dψ) + (-1)^k i_{hK}hψ", lhs, rhs))
}

pub(crate) static COMMUTATORS: &[Suite] = &[
    Suite::new("L33-1", "[hX,hY] = h[X,Y]", &[("X", Vector), ("Y", Vector)], l33_1),
    Suite::new("L33-2", "[ρφ,ρψ] = 0, [hφ,ρψ] = 0", &[("phi", FormPos), ("psi", FormPos)], l33_2),
    Suite::new("L33-3", "[hX,ρφ] = ρ L_Xφ, [hX,hφ] = h L_Xφ", &[("X", Vector), ("phi", Form)], l33_3),
    Suite::new(
        "L33-4",
        "i_{ρφ}ψ = 0, i_{ρφ}ρψ = 0, L_{ρφ}ψ = 0",
        &[("phi", FormPos), ("psi", Form)],
        l33_4,
    ),
    Suite::new("L33-5", "L_{ρφ}π*X = -i_Xφ, L_{hφ}π*X = -i_X dφ", &[("phi", FormPos), ("X", Vector)], l33_5),
    Suite::new(
        "L33-6",
        "L_{hK}f = L_K f, L_{hK}φ = L_Kφ, i_{hK}φ = i_Kφ",
        &[("K", Vvf), ("f", Function), ("phi", Form)],
        l33_6,
    ),
    Suite::new("L33-7", "[hL,hf] = h L_L f", &[("L", Vvf), ("f", Function)], l33_7),
    Suite::new("L33-8", "L_{hK}π*L = π*[K,L] + (-1)^{(k-1)l} dπ*(i_L K)", &[("K", Vvf), ("L", Vvf)], l33_8),
    Suite::new("L33-9", "dL_{hK}π*L = (-1)^k L_{hK}dπ*L = dπ*[K,L]", &[("K", Vvf), ("L", Vvf)], l33_9),
    Suite::new("L33-10", "i_{ρπ*K}ψ = 0, L_{ρπ*K}ψ = 0", &[("K", VvfPos), ("psi", Form)], l33_10),
    Suite::new("L33-11", "L_{ρπ*K}π*L = -(-1)^{(k-1)l} π*i_L K", &[("K", VvfPos), ("L", Vvf)], l33_11),
    Suite::new("L33-12", "i_{hK}π*L = π*i_K L", &[("K", Vvf), ("L", Vvf)], l33_12),
    Suite::new(
        "L33-13",
        "i_{hK}dπ*L = π*[K,L] - (-1)^k dπ*(i_K L + (-1)^{(k-1)(l-1)} i_L K)",
        &[("K", Vvf), ("L", Vvf)],
        l33_13,
    ),
    Suite::new("L33-14", "i_{hX}ρψ = -ρ i_Xψ", &[("X", Vector), ("psi", FormPos)], l33_14),
    Suite::new("L33-15", "L_{hφ}π*L = -(-1)^{pl} π*i_L dφ", &[("phi", Form), ("L", Vvf)], l33_15),
    Suite::new("L33-16", "[ρπ*K,hψ] = ρ(i_K dψ) + (-1)^k i_{hK}hψ", &[("K", Vvf), ("psi", Form)], l33_16),
];

// mixed fields and extended insertion

fn l34_1(c: &Case) -> Result<Outcome> {
    let (a, psi) = (c.get("A"), c.get("psi"));
    let lhs = lie(&h(c, psi)?, &pb(c, a)?)?;
    let rhs = -sgn(k_of(psi) * k_of(a), pb(c, &extended_insert(a, &d(psi)?)?)?);
    Ok(Outcome::default().eq("L_{hψ}π*A = -(-1)^{qk} π*i_A dψ", lhs, rhs))
}

fn l34_2(c: &Case) -> Result<Outcome> {
    let (a, psi) = (c.get("A"), c.get("psi"));
    let hpsi = h(c, psi)?;
    let lhs = fnb(&rho_pb(c, a)?, &hpsi)?;
    // L33-16 is the case l = 1
    let rhs = rho_pb(c, &extended_insert(a, &d(psi)?)?)? + sgn(k_of(a), ins(&h(c, a)?, &hpsi)?);
    Ok(Outcome::default().eq("[ρπ*A,hψ] = ρπ*(i_A dψ) + (-1)^k i_{hA}hψ", lhs, rhs))
}

pub(crate) static EXTENDED: &[Suite] = &[
    Suite::new("L34-1", "L_{hψ}π*A = -(-1)^{qk} π*i_A dψ", &[("A", Mixed), ("psi", Form)], l34_1),
    Suite::new("L34-2", "[ρπ*A,hψ] = ρπ*(i_A dψ) + (-1)^k i_{hA}hψ", &[("A", Mixed), ("psi", Form)], l34_2),
];

// bracket homomorphisms

fn t35_1(c: &Case) -> Result<Outcome> {
    let (kf, lf) = (c.get("K"), c.get("L"));
    Ok(Outcome::default().eq("[hK,hL] = h[K,L]", fnb(&h(c, kf)?, &h(c, lf)?)?, h(c, &fnb(kf, lf)?)?))
}

fn t35_2(c: &Case) -> Result<Outcome> {
    let (u, v) = (c.get("U"), c.get("V"));
    Ok(Outcome::default().eq("[hU,hV] = h[U,V]", fnb(&h(c, u)?, &h(c, v)?)?, h(c, &schouten(u, v)?)?))
}

fn t35_3(c: &Case) -> Result<Outcome> {
    let (phi, psi) = (c.get("phi"), c.get("psi"));
    Ok(Outcome::default().eq("[hφ,hψ] = 0", fnb(&h(c, phi)?, &h(c, psi)?)?, cot_zero(c)))
}

fn t35_4(c: &Case) -> Result<Outcome> {
    let (a, psi) = (c.get("A"), c.get("psi"));
    let lhs = fnb(&h(c, a)?, &h(c, psi)?)?;
    Ok(Outcome::default().eq("[hA,hψ] = h i_A dψ", lhs, h(c, &extended_insert(a, &d(psi)?)?)?))
}

fn t35_5(c: &Case) -> Result<Outcome> {
    let (a, b) = (c.get("A"), c.get("B"));
    let chi = graded_poisson_1(&pb(c, a)?, &pb(c, b)?)?;
    let membership = bracket_in_image(&c.cot, a, b)?;
    let mut out = Outcome::default().eq(
        "[hA,hB] = H{π*A,π*B}¹",
        fnb(&h(c, a)?, &h(c, b)?)?,
        hamiltonian(&chi)?,
    );
    let detail = match &membership {
        Membership::Image(rep) => {
            // the representative must reproduce the bracket
            out = out.eq("[hA,hB] = h(representative)", fnb(&h(c, a)?, &h(c, b)?)?, h(c, rep)?);
            format!("in the image of h: representative {rep}")
        }
        Membership::Obstructed(o) => format!("outside the image of h: {:?}, candidate {}", o.kind, o.candidate),
    };
    if c.pinned {
        let cot = &c.cot;
        out = out
            .eq("{p1 dq1, p1 p2}¹ = p2 dp1", chi.clone(), parse_field(cot, "p2*dp1")?)
            .eq("d{p1 dq1, p1 p2}¹ = -dp1^dp2", d(&chi)?, parse_field(cot, "-dp1^dp2")?)
            .holds(
                "obstruction is non-horizontality",
                matches!(&membership, Membership::Obstructed(o) if o.kind == ObstructionKind::NotHorizontal),
                format!("{membership:?}"),
            );
        return Ok(out.detail(format!("{{π*A,π*B}}¹ = {chi}, d = {}; {detail}", d(&chi)?)));
    }
    Ok(out.detail(detail))
}

fn t35_5_pinned() -> Result<Case> {
    let base = Chart::euclidean(2);
    // π*A = p1 dq1, π*B = p1 p2
    let a = parse_field(&base, "dx1 | v1")?;
    let b = parse_field(&base, "v1.v2")?;
    Ok(Case::new(&base, vec![("A", a), ("B", b)]))
}

pub(crate) static HOMOMORPHISMS: &[Suite] = &[
    Suite::new("T35-1", "[hK,hL] = h[K,L]", &[("K", Vvf), ("L", Vvf)], t35_1),
    Suite::new("T35-2", "[hU,hV] = h[U,V] (Schouten)", &[("U", Sym), ("V", Sym)], t35_2),
    Suite::new("T35-3", "[hφ,hψ] = 0", &[("phi", Form), ("psi", Form)], t35_3),
    Suite::new("T35-4", "[hA,hψ] = h i_A dψ", &[("A", Mixed), ("psi", Form)], t35_4),
    Suite::new(
        "T35-5",
        "[hA,hB] = H{π*A,π*B}¹ need not lie in im h",
        &[("A", Mixed), ("B", Mixed)],
        t35_5,
    )
    .pinned(t35_5_pinned),
];
