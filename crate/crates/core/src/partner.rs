//! Electrostatic partners and every polynomial identity tied to them:
//! second-order pairs, the coupling polynomial, partner equations, and the
//! third-order data. All divisions are exact-or-error; nothing is patched
//! numerically in this module.

use crate::rat::RatExt;
use crate::error::{Error, Result};
use crate::laurent::LaurentTail;
use crate::mop::MopRecord;
use crate::poly::{wronskian, ExactPoly};
use crate::rat::Rat;
use crate::weights::SemiclassicalWeight;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartnerBundle {
    /// The partner polynomial, in the weight's moment normalization.
    pub s: ExactPoly,
    /// Monic copy for fixture comparison; partners are printed up to scale.
    pub s_monic: ExactPoly,
    /// Series order through which the non-polynomial part was checked zero.
    pub tail_checked_to: usize,
    /// Power of the weight's scale tag carried by `s`.
    pub scale_power: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdePair {
    pub s: ExactPoly,
    pub c: ExactPoly,
}

/// S = polynomial part of P (A c' - B c) - A P' c, where c is the weighted
/// Cauchy transform expansion. Every trusted tail coefficient of the
/// expression must vanish; a nonzero one means the weight datum and the
/// expansion are inconsistent.
pub fn electrostatic_partner(
    p: &ExactPoly,
    w: &SemiclassicalWeight,
    cauchy: &LaurentTail,
) -> Result<PartnerBundle> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::InvalidParameters("partner of the zero polynomial".into()))?;
    let guard_needed = deg + w.sigma + 1;
    if cauchy.order() < guard_needed {
        return Err(Error::PrecisionExhausted(format!(
            "cauchy tail order {} below deg P + sigma + 1 = {}",
            cauchy.order(),
            guard_needed
        )));
    }
    let expr = partner_expression(p, &w.a, &w.b, cauchy)?;
    let tail_checked_to = expr.require_tail_zero()?;
    let s = expr.into_poly_part();
    if let Some(ds) = s.degree() {
        debug_assert!(ds <= deg + w.sigma, "partner degree bound violated");
    }
    Ok(PartnerBundle {
        s_monic: s.monic(),
        s,
        tail_checked_to,
        scale_power: 1,
    })
}

/// The defining expression as a truncated Laurent object.
fn partner_expression(
    p: &ExactPoly,
    a: &ExactPoly,
    b: &ExactPoly,
    cauchy: &LaurentTail,
) -> Result<LaurentTail> {
    let acp = cauchy.differentiate().mul_poly(a)?;
    let bc = cauchy.mul_poly(b)?;
    let first = acp.sub(&bc).mul_poly(p)?;
    let second = cauchy.mul_poly(&(a * &p.derivative()))?;
    Ok(first.sub(&second))
}

/// Top-coefficient test from the quasi-orthogonality expansion: the
/// coefficient of z^{N-n+sigma} in S must equal
/// m_n * [ (N+n+1) when deg A - 2 = sigma ] + m_n * [ kappa when deg B - 1 = sigma ].
pub fn leading_check(
    bundle: &PartnerBundle,
    m_n: &Rat,
    total: usize,
    n: usize,
    w: &SemiclassicalWeight,
) -> bool {
    let sigma = w.sigma as i64;
    let mut expected = Rat::new();
    if w.a.degree().map_or(false, |d| d as i64 - 2 == sigma) {
        expected += rug::Rational::from(m_n * Rat::from((total + n + 1) as u64));
    }
    if w.b.degree().map_or(false, |d| d as i64 - 1 == sigma) {
        expected += rug::Rational::from(m_n * w.b.leading().unwrap());
    }
    let top_deg = total - n + w.sigma;
    if bundle.s.coeff(top_deg) != expected {
        return false;
    }
    if !expected.is_zero() && bundle.s.degree() != Some(top_deg) {
        return false;
    }
    true
}

/// The decomposition behind the partner determinant identity:
/// e = polynomial part of A P'/P at infinity, u = A P' - e P (degree <= N-1),
/// h = polynomial part of A c' - (B + e) c - c_w[u] (degree <= sigma, zero
/// once the orthogonality count reaches sigma + 1).
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeDecomposition {
    pub u: ExactPoly,
    pub h: ExactPoly,
    pub e: ExactPoly,
    /// Cauchy expansion of u, reusable by the determinant check.
    pub cauchy_u: LaurentTail,
}

pub fn compute_u_h(
    p: &ExactPoly,
    w: &SemiclassicalWeight,
    cauchy: &LaurentTail,
) -> Result<DerivativeDecomposition> {
    let (e, u) = (&w.a * &p.derivative()).div_rem(p);
    let moments = w.pearson_moments(cauchy.order() + p.degree().unwrap_or(0))?;
    let cauchy_u = if u.is_zero() {
        LaurentTail::pure_tail(vec![Rat::new(); cauchy.order()])
    } else {
        LaurentTail::cauchy_of(&u, &moments)?
    };
    let lhs = cauchy
        .differentiate()
        .mul_poly(&w.a)?
        .sub(&cauchy.mul_poly(&(&w.b + &e))?)
        .sub(&cauchy_u);
    lhs.require_tail_zero()?;
    let h = lhs.into_poly_part();
    if let Some(dh) = h.degree() {
        debug_assert!(dh <= w.sigma, "defect polynomial exceeds the weight class");
    }
    Ok(DerivativeDecomposition { u, h, e, cauchy_u })
}

/// Check that the 2x2 determinant built from (p, c_w[p]; u, c_w[u] + h)
/// reproduces the partner coefficientwise to the available order. Returns
/// None when verified, or the first mismatching order.
pub fn verify_partner_determinant(
    p: &ExactPoly,
    decomposition: &DerivativeDecomposition,
    cauchy_p: &LaurentTail,
    s: &ExactPoly,
) -> Result<Option<usize>> {
    let right = decomposition
        .cauchy_u
        .add(&LaurentTail::with_poly(
            vec![Rat::new(); decomposition.cauchy_u.order()],
            decomposition.h.clone(),
        ))
        .mul_poly(p)?;
    let left = cauchy_p.mul_poly(&decomposition.u)?;
    let det = right.sub(&left);
    // polynomial part must equal S, tail must vanish
    let diff = &det.poly_part().clone() - s;
    if !diff.is_zero() {
        let k = diff.degree().unwrap();
        return Ok(Some(k));
    }
    if let Some(k) = det.first_nonzero() {
        return Ok(Some(k));
    }
    Ok(None)
}

/// Van Vleck completion: C = -(A S P'' + (A'S - AS' + BS) P') / P exactly.
pub fn van_vleck(p: &ExactPoly, bundle: &PartnerBundle, w: &SemiclassicalWeight) -> Result<OdePair> {
    let s = &bundle.s;
    let mid = &(&(&w.a.derivative() * s) - &(&w.a * &s.derivative())) + &(&w.b * s);
    let num = &(&(&w.a * s) * &p.derivative().derivative()) + &(&mid * &p.derivative());
    let c = -&num.div_exact(p)?;
    Ok(OdePair { s: s.clone(), c })
}

/// Residual of the second-order equation at y: A S y'' + (A'S - AS' + BS) y' + C y.
pub fn second_order_residual(
    y: &ExactPoly,
    pair: &OdePair,
    w: &SemiclassicalWeight,
) -> ExactPoly {
    let s = &pair.s;
    let mid = &(&(&w.a.derivative() * s) - &(&w.a * &s.derivative())) + &(&w.b * s);
    &(&(&(&w.a * s) * &y.derivative().derivative()) + &(&mid * &y.derivative())) + &(&pair.c * y)
}

/// Coupling polynomial of a two-weight record:
/// R = [ -W(A1,A2) S1 S2 + A1 A2 W(S1,S2) + (A2 B1 - A1 B2) S1 S2 ] / P.
/// When A1 = A2 the result is additionally divisible by A (returned as is);
/// when also B1 = B2, R / A^2 is returned as the second component.
pub fn r_polynomial(
    rec: &MopRecord,
    w1: &SemiclassicalWeight,
    w2: &SemiclassicalWeight,
) -> Result<(ExactPoly, Option<ExactPoly>)> {
    let [s1, s2] = both_partners(rec)?;
    let s1s2 = &s1.s * &s2.s;
    let mut num = &(&w1.a * &w2.a) * &wronskian(&s1.s, &s2.s);
    num = &num - &(&wronskian(&w1.a, &w2.a) * &s1s2);
    num = &num + &(&(&(&w2.a * &w1.b) - &(&w1.a * &w2.b)) * &s1s2);
    let r = num.div_exact(&rec.poly)?;
    let r_star = if w1.a == w2.a && w1.b == w2.b {
        let a2 = &w1.a * &w1.a;
        Some(r.div_exact(&a2)?)
    } else if w1.a == w2.a && !r.is_zero() {
        // divisibility by A is part of the construction; surface a failure
        r.div_exact(&w1.a)?;
        None
    } else {
        None
    };
    Ok((r, r_star))
}

fn both_partners(rec: &MopRecord) -> Result<[&PartnerBundle; 2]> {
    if rec.channels.len() != 2 {
        return Err(Error::NotApplicable("two weight channels required".into()));
    }
    let s1 = rec.channels[0]
        .partner
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("partner 1 not computed".into()))?;
    let s2 = rec.channels[1]
        .partner
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("partner 2 not computed".into()))?;
    Ok([s1, s2])
}

/// Third-order data (E, F): coefficients of y' and y in the equation whose
/// solution space is spanned by P and both second-kind functions. Computed
/// twice, once through each channel, and required to agree.
pub fn third_order(
    rec: &MopRecord,
    w1: &SemiclassicalWeight,
    w2: &SemiclassicalWeight,
) -> Result<(ExactPoly, ExactPoly)> {
    let [s1, s2] = both_partners(rec)?;
    let c1 = rec.channels[0]
        .vanvleck
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("van Vleck 1 not computed".into()))?;
    let c2 = rec.channels[1]
        .vanvleck
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("van Vleck 2 not computed".into()))?;
    let r = rec
        .r_poly
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("coupling polynomial not computed".into()))?;
    if r.is_zero() {
        return Err(Error::NonNormalIndex(
            "coupling polynomial vanishes identically; no third-order equation".into(),
        ));
    }
    let (e1, f1) = third_order_route(&s1.s, c1, r, &w1.a, &w2.a, &w1.b, &w2.b)?;
    let (e2, f2) = third_order_route(&s2.s, c2, r, &w2.a, &w1.a, &w2.b, &w1.b)?;
    if e1 != e2 || f1 != f2 {
        return Err(Error::AsymmetryDetected("third-order coefficients".into()));
    }
    Ok((e1, f1))
}

/// One route of the third-order computation, through the channel with data
/// (S, C) for the weight (a1, b1) against the opposite weight (a2, b2):
/// E S = a2 R [ (a1'S - a1 S' + b1 S)' + C ] - [a2 R' - R(2 a2' + b2)] (a1'S - a1 S' + b1 S)
/// F S = (a2 C' + (b2 + 2 a2') C) R - a2 C R'.
fn third_order_route(
    s: &ExactPoly,
    c: &ExactPoly,
    r: &ExactPoly,
    a1: &ExactPoly,
    a2: &ExactPoly,
    b1: &ExactPoly,
    b2: &ExactPoly,
) -> Result<(ExactPoly, ExactPoly)> {
    let mid = &(&(&a1.derivative() * s) - &(a1 * &s.derivative())) + &(b1 * s);
    let bracket = &(a2 * &r.derivative()) - &(r * &(&a2.derivative().scale(&Rat::from(2)) + b2));
    let es = &(&(a2 * r) * &(&mid.derivative() + c)) - &(&bracket * &mid);
    let e = es.div_exact(s)?;
    let fs = &(&(a2 * r) * &c.derivative()) - &(&bracket * c);
    let f = fs.div_exact(s)?;
    Ok((e, f))
}

/// Residual of the third-order equation at y:
/// A1 A2 R y''' + [ (A1(2A2'+B2) + A2(2A1'+B1)) R - A1 A2 R' ] y'' + E y' + F y.
pub fn third_order_residual(
    y: &ExactPoly,
    r: &ExactPoly,
    e: &ExactPoly,
    f: &ExactPoly,
    w1: &SemiclassicalWeight,
    w2: &SemiclassicalWeight,
) -> ExactPoly {
    let two = Rat::from(2);
    let g3 = &(&w1.a * &w2.a) * r;
    let s1 = &w1.a * &(&w2.a.derivative().scale(&two) + &w2.b);
    let s2 = &w2.a * &(&w1.a.derivative().scale(&two) + &w1.b);
    let g2 = &(&(&s1 + &s2) * r) - &(&(&w1.a * &w2.a) * &r.derivative());
    let y3 = y.derivative().derivative().derivative();
    &(&(&(&g3 * &y3) + &(&g2 * &y.derivative().derivative())) + &(e * &y.derivative())) + &(f * y)
}

/// The second-order equation satisfied by one partner:
/// A1 A2 P R y'' + G_i y' + D_i y = 0 at y = S_i, where
/// G_1 = (2 A1 A2' + A1 B2 - A2 B1) P R - A1 A2 (P R' + P' R) and G_2 swaps
/// the roles (2 A1' A2 - A1 B2 + A2 B1). Returns D_i by exact division.
pub fn partner_ode(
    rec: &MopRecord,
    w1: &SemiclassicalWeight,
    w2: &SemiclassicalWeight,
    which: usize,
) -> Result<ExactPoly> {
    let [s1, s2] = both_partners(rec)?;
    let r = rec
        .r_poly
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("coupling polynomial not computed".into()))?;
    if r.is_zero() {
        return Err(Error::NonNormalIndex(
            "coupling polynomial vanishes identically".into(),
        ));
    }
    let s = match which {
        1 => &s1.s,
        2 => &s2.s,
        _ => return Err(Error::NotApplicable("which must be 1 or 2".into())),
    };
    let g1 = partner_ode_first_coeff(&rec.poly, r, w1, w2, which);
    let lead = &(&(&w1.a * &w2.a) * &rec.poly) * r;
    let num = &(&lead * &s.derivative().derivative()) + &(&g1 * &s.derivative());
    let d = -&num.div_exact(s)?;
    Ok(d)
}

fn partner_ode_first_coeff(
    p: &ExactPoly,
    r: &ExactPoly,
    w1: &SemiclassicalWeight,
    w2: &SemiclassicalWeight,
    which: usize,
) -> ExactPoly {
    let two = Rat::from(2);
    let pr = p * r;
    let cross = &(p * &r.derivative()) + &(&p.derivative() * r);
    let lead = match which {
        1 => &(&(&w1.a * &w2.a.derivative()).scale(&two) + &(&w1.a * &w2.b)) - &(&w2.a * &w1.b),
        _ => &(&(&w1.a.derivative() * &w2.a).scale(&two) - &(&w1.a * &w2.b)) + &(&w2.a * &w1.b),
    };
    &(&lead * &pr) - &(&(&w1.a * &w2.a) * &cross)
}

/// Residual of the partner equation at y (zero exactly at y = S_which).
pub fn partner_ode_residual(
    y: &ExactPoly,
    d: &ExactPoly,
    rec: &MopRecord,
    w1: &SemiclassicalWeight,
    w2: &SemiclassicalWeight,
    which: usize,
) -> ExactPoly {
    let r = rec.r_poly.as_ref().expect("coupling polynomial");
    let lead = &(&(&w1.a * &w2.a) * &rec.poly) * r;
    let g1 = partner_ode_first_coeff(&rec.poly, r, w1, w2, which);
    &(&(&lead * &y.derivative().derivative()) + &(&g1 * &y.derivative())) + &(d * y)
}

/// Equal-weight reduction: both partners solve
/// P R* y'' - (P R*)' y' + D* y = 0 with D* = W(S1', S2'); additionally
/// W(S1, S2) = P R* exactly. Returns D* after checking both facts.
pub fn partner_ode_reduced(rec: &MopRecord) -> Result<ExactPoly> {
    let [s1, s2] = both_partners(rec)?;
    let r_star = rec
        .r_star
        .as_ref()
        .ok_or_else(|| Error::NotApplicable("equal-weight record required".into()))?;
    let pr = &rec.poly * r_star;
    if wronskian(&s1.s, &s2.s) != pr {
        return Err(Error::AsymmetryDetected("equal-weight Wronskian identity".into()));
    }
    let d_star = wronskian(&s1.s.derivative(), &s2.s.derivative());
    for s in [&s1.s, &s2.s] {
        let res = &(&(&pr * &s.derivative().derivative()) - &(&pr.derivative() * &s.derivative()))
            + &(&d_star * s);
        if !res.is_zero() {
            return Err(Error::AsymmetryDetected("reduced partner equation".into()));
        }
    }
    Ok(d_star)
}

/// Run the whole partner pipeline on a record, filling every slot:
/// partners, van Vleck pairs, coupling polynomial, partner equations,
/// third-order data, and the common-zero warnings.
pub fn compute_all(rec: &mut MopRecord, weights: &[&SemiclassicalWeight]) -> Result<()> {
    if rec.channels.len() != weights.len() {
        return Err(Error::InvalidParameters(
            "one weight per channel is required".into(),
        ));
    }
    for (ch, w) in rec.channels.iter_mut().zip(weights) {
        let bundle = electrostatic_partner(&rec.poly, w, &ch.cauchy)?;
        let pair = van_vleck(&rec.poly, &bundle, w)?;
        // common zeros of P and A*S violate the equilibrium preconditions;
        // warn, do not fail
        let a_s = &w.a * &bundle.s;
        let g = rec.poly.gcd(&a_s);
        if g.degree().map_or(false, |d| d > 0) {
            rec.warnings.push(format!(
                "polynomial shares zeros with A*S (gcd degree {})",
                g.degree().unwrap()
            ));
        }
        ch.vanvleck = Some(pair.c);
        ch.partner = Some(bundle);
    }
    if rec.channels.len() == 2 {
        let (r, r_star) = r_polynomial(rec, weights[0], weights[1])?;
        rec.r_poly = Some(r);
        rec.r_star = r_star;
        let independent = !rec.r_poly.as_ref().unwrap().is_zero();
        if independent {
            let (e, f) = third_order(rec, weights[0], weights[1])?;
            rec.e_poly = Some(e);
            rec.f_poly = Some(f);
            for which in [1, 2] {
                let d = partner_ode(rec, weights[0], weights[1], which)?;
                rec.channels[which - 1].d_poly = Some(d);
            }
        } else {
            rec.warnings.push(
                "coupling polynomial is identically zero; the quasi-orthogonality systems are dependent"
                    .into(),
            );
        }
    }
    Ok(())
}
