//! Explicit Jacobi polynomials with rational (possibly non-standard)
//! parameters, and the degenerate two-channel construction they induce.

use crate::rat::RatExt;
use crate::error::{Error, Result};
use crate::mop::{record_from_polynomial, MopRecord};
use crate::poly::ExactPoly;
use crate::rat::{is_integer, rat_floor, Rat};
use crate::weights::{family, FamilySpec, SemiclassicalWeight};
use rug::Rational;

/// P_n^{(alpha,beta)}(x) = sum_s C(n+alpha, n-s) C(n+beta, s)
/// ((x-1)/2)^s ((x+1)/2)^{n-s}, exact for rational parameters.
pub fn jacobi_explicit(n: usize, alpha: &Rat, beta: &Rat) -> ExactPoly {
    let half = Rat::from((1, 2));
    let xm = ExactPoly::from_coeffs(vec![Rational::from(-&half), half.clone()]);
    let xp = ExactPoly::from_coeffs(vec![half.clone(), half]);
    let mut acc = ExactPoly::zero();
    for s in 0..=n {
        let c = Rational::from(
            gbinom(&Rational::from(alpha + Rational::from(n as u64)), n - s)
                * gbinom(&Rational::from(beta + Rational::from(n as u64)), s),
        );
        if c.is_zero() {
            continue;
        }
        let mut term = ExactPoly::constant(c);
        for _ in 0..s {
            term = &term * &xm;
        }
        for _ in 0..(n - s) {
            term = &term * &xp;
        }
        acc = &acc + &term;
    }
    acc
}

/// Generalized binomial (top choose k) for rational top.
fn gbinom(top: &Rat, k: usize) -> Rat {
    let mut num = Rat::from(1);
    for i in 0..k {
        num *= Rational::from(top - Rational::from(i as u64));
        num /= Rational::from(i as u64 + 1);
    }
    num
}

/// The non-standard Jacobi construction: for -N < alpha < -1 (alpha, beta,
/// alpha+beta non-integral rationals), P_N^{(alpha,beta)} satisfies two
/// quasi-orthogonality systems sharing A = x^2 - 1: the modified real weight
/// with exponent alpha + [-alpha] and the loop weight with exponent alpha.
/// The pair is degenerate: the next weighted moment of the second channel
/// vanishes, and the coupling polynomial is identically zero.
pub fn nonstandard_jacobi_record(
    total: usize,
    alpha: &Rat,
    beta: &Rat,
) -> Result<(MopRecord, Vec<SemiclassicalWeight>)> {
    if is_integer(alpha) || is_integer(beta) || is_integer(&Rational::from(alpha + beta)) {
        return Err(Error::InvalidParameters(
            "alpha, beta, alpha+beta must be non-integral".into(),
        ));
    }
    if *alpha >= -1 || *alpha <= Rational::from(-(total as i64)) {
        return Err(Error::InvalidParameters("need -N < alpha < -1".into()));
    }
    if *beta <= -1 {
        return Err(Error::InvalidParameters("need beta > -1".into()));
    }
    let shift = rat_floor(&Rational::from(-alpha.clone()))
        .to_usize()
        .ok_or_else(|| Error::InvalidParameters("alpha out of range".into()))?;
    let n1 = total - shift;
    let n2 = shift;
    let alpha_mod = Rational::from(alpha + Rational::from(shift as u64));
    // both channels share A = x^2 - 1; the loop channel's moments satisfy the
    // same recurrence as the (alpha, beta) pair by analytic continuation, with
    // the closed-loop boundary terms vanishing
    let w1 = family(&FamilySpec::new(
        "jacobi",
        &[("alpha", &alpha_mod.to_string()), ("beta", &beta.to_string())],
    ))?
    .remove(0);
    // the loop channel sits outside the catalog's validity region (alpha < -1);
    // its moments still satisfy the Jacobi recurrence because the closed
    // contour kills the boundary terms, so build it directly
    let w2 = SemiclassicalWeight::new(
        ExactPoly::from_i64s(&[-1, 0, 1]),
        ExactPoly::from_coeffs(vec![
            Rational::from(alpha - beta),
            Rational::from(alpha + beta),
        ]),
        vec![crate::weights::SupportComponent::ContourTag {
            id: "loop_through_minus_one".into(),
            legs: vec![],
        }],
        crate::weights::MomentBackend::ExactRecurrence { seeds: vec![vec!["1".into()]] },
        "loop_normalization",
    )?;
    let p = jacobi_explicit(total, alpha, beta).monic();
    let rec = record_from_polynomial(&p, &[&w1, &w2], &[n1, n2], None)?;
    Ok((rec, vec![w1, w2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{parse_rat, rat, rat_i};

    #[test]
    fn legendre_values() {
        // alpha = beta = 0: Legendre; P_3 monic = x^3 - (3/5) x
        let p = jacobi_explicit(3, &rat_i(0), &rat_i(0)).monic();
        assert_eq!(p, ExactPoly::from_coeffs(vec![rat_i(0), rat(-3, 5), rat_i(0), rat_i(1)]));
    }

    #[test]
    fn quasi_orthogonality_of_nonstandard_pair() {
        let alpha = parse_rat("-7/2").unwrap();
        let beta = parse_rat("1/3").unwrap();
        let (rec, ws) = nonstandard_jacobi_record(6, &alpha, &beta).unwrap();
        assert_eq!(rec.channels[0].orth_conditions, 3);
        assert_eq!(rec.channels[1].orth_conditions, 3);
        // the real channel has a nonzero next moment; the loop channel's vanishes
        assert!(!rec.channels[0].m_n_rat().is_zero());
        assert!(rec.channels[1].m_n_rat().is_zero());
        // orthogonality holds in both channels
        for (w, n) in [(&ws[0], 3usize), (&ws[1], 3)] {
            let u = w.pearson_moments(rec.poly.degree().unwrap() + n).unwrap();
            for j in 0..n {
                let mut s = Rat::new();
                for (m, pm) in rec.poly.coeffs().iter().enumerate() {
                    s += Rational::from(pm * &u[m + j]);
                }
                assert!(s.is_zero(), "channel residual at j={j}");
            }
        }
    }
}
