//! Type II multiple-orthogonality and quasi-orthogonality linear systems,
//! solved exactly from the weights' moment sequences.

use crate::rat::RatExt;
use crate::error::{Error, Result};
use crate::laurent::LaurentTail;
use crate::linalg::solve_exact;
use crate::poly::ExactPoly;
use crate::rat::{parse_rat, rat_string, Rat};
use crate::weights::SemiclassicalWeight;
use rug::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiIndex {
    pub n1: usize,
    pub n2: usize,
}

impl MultiIndex {
    pub fn new(n1: usize, n2: usize) -> Self {
        MultiIndex { n1, n2 }
    }

    pub fn total(&self) -> usize {
        self.n1 + self.n2
    }
}

/// Everything the pipeline knows about one weight channel of a record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightChannel {
    /// Number of orthogonality conditions imposed against this weight.
    pub orth_conditions: usize,
    /// First non-vanishing weighted moment, in the weight's normalization.
    pub m_n: String,
    pub cauchy: LaurentTail,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<crate::partner::PartnerBundle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanvleck: Option<ExactPoly>,
    /// Zeroth coefficient of the 2nd-order equation satisfied by the partner.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_poly: Option<ExactPoly>,
}

impl WeightChannel {
    pub fn m_n_rat(&self) -> Rat {
        parse_rat(&self.m_n).expect("m_n is stored canonically")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MopRecord {
    /// Multi-index for two-weight records; None for quasi-orthogonal ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<MultiIndex>,
    /// Monic polynomial of degree = total conditions.
    pub poly: ExactPoly,
    pub channels: Vec<WeightChannel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_poly: Option<ExactPoly>,
    /// R / A^2 in the equal-weight case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_star: Option<ExactPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_poly: Option<ExactPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_poly: Option<ExactPoly>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Default number of tail coefficients computed beyond the construction's
/// minimum; gives the zero-tail checks headroom.
pub const GUARD_MOMENTS: usize = 8;

/// Series order for a record of total degree N over weights of class sigma.
pub fn default_series_order(total: usize, sigma_max: usize) -> usize {
    2 * total + sigma_max + GUARD_MOMENTS
}

fn require_exact(w: &SemiclassicalWeight) -> Result<()> {
    if !w.has_exact_backend() {
        return Err(Error::InvalidParameters(
            "numeric-backend weights cannot be solved exactly; import the polynomial instead"
                .into(),
        ));
    }
    Ok(())
}

/// Weighted moment sum_m p_m u_{m+k} (includes the monic leading term).
fn weighted_moment(p: &ExactPoly, u: &[Rat], k: usize) -> Rat {
    let mut s = Rat::new();
    for (m, pm) in p.coeffs().iter().enumerate() {
        if !pm.is_zero() {
            s += Rational::from(pm * &u[m + k]);
        }
    }
    s
}

/// Solve the type II system: monic P of degree n1+n2 with
/// sum_m p_m u^{(i)}_{m+j} = 0 for j < n_i, and first nonzero weighted
/// moment at j = n_i for both weights.
pub fn solve_mop(
    w1: &SemiclassicalWeight,
    w2: &SemiclassicalWeight,
    index: MultiIndex,
    series_order: Option<usize>,
) -> Result<MopRecord> {
    require_exact(w1)?;
    require_exact(w2)?;
    let total = index.total();
    if total == 0 {
        return Err(Error::InvalidParameters("total degree must be at least 1".into()));
    }
    let order = series_order.unwrap_or_else(|| default_series_order(total, w1.sigma.max(w2.sigma)));
    let u1 = w1.pearson_moments(total + order)?;
    let u2 = w2.pearson_moments(total + order)?;

    let mut rows = Vec::with_capacity(total);
    let mut rhs = Vec::with_capacity(total);
    for (u, n) in [(&u1, index.n1), (&u2, index.n2)] {
        for j in 0..n {
            rows.push((0..total).map(|m| u[m + j].clone()).collect());
            rhs.push(Rational::from(-u[total + j].clone()));
        }
    }
    let sol = solve_exact(&rows, &rhs).ok_or_else(|| {
        Error::NonNormalIndex(format!("orthogonality system singular at ({}, {})", index.n1, index.n2))
    })?;
    let mut coeffs = sol;
    coeffs.push(Rat::from(1));
    let p = ExactPoly::from_coeffs(coeffs);
    debug_assert_eq!(p.degree(), Some(total));

    let mut channels = Vec::with_capacity(2);
    for (u, n, which) in [(&u1, index.n1, 1), (&u2, index.n2, 2)] {
        let m_n = weighted_moment(&p, u, n);
        if m_n.is_zero() {
            return Err(Error::NonNormalIndex(format!(
                "weighted moment m_n vanishes for weight {which} at ({}, {})",
                index.n1, index.n2
            )));
        }
        channels.push(WeightChannel {
            orth_conditions: n,
            m_n: rat_string(&m_n),
            cauchy: LaurentTail::cauchy_of(&p, u)?,
            partner: None,
            vanvleck: None,
            d_poly: None,
        });
    }
    Ok(MopRecord {
        index: Some(index),
        poly: p,
        channels,
        r_poly: None,
        r_star: None,
        e_poly: None,
        f_poly: None,
        warnings: vec![],
    })
}

/// How to pin down the quasi-orthogonal solution when n < N.
#[derive(Debug, Clone, PartialEq)]
pub enum CompletionRule {
    /// n = N: the N-th monic orthogonal polynomial.
    Orthogonal,
    /// P = P_N + c P_{N-1} with monic orthogonal P_N, P_{N-1}; needs n = N-1.
    MonicCombination { c: Rat },
    /// Coefficients of x^{N-1}, ..., x^{n} prescribed (highest first).
    PinnedTop { coeffs: Vec<Rat> },
}

/// Solve the quasi-orthogonality system: monic P of degree `total` with `n`
/// orthogonality conditions and m_n != 0, completed per `rule`.
pub fn solve_quasi(
    w: &SemiclassicalWeight,
    total: usize,
    n: usize,
    rule: &CompletionRule,
    series_order: Option<usize>,
) -> Result<MopRecord> {
    require_exact(w)?;
    if n > total || total == 0 {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= n <= N, got n={n}, N={total}"
        )));
    }
    let order = series_order.unwrap_or_else(|| default_series_order(total, w.sigma));
    let u = w.pearson_moments(total + order)?;

    let p = match rule {
        CompletionRule::Orthogonal => {
            if n != total {
                return Err(Error::InvalidParameters(
                    "Orthogonal completion requires n = N".into(),
                ));
            }
            orthogonal_poly(&u, total)?
        }
        CompletionRule::MonicCombination { c } => {
            if n + 1 != total {
                return Err(Error::InvalidParameters(
                    "MonicCombination requires n = N - 1".into(),
                ));
            }
            let pn = orthogonal_poly(&u, total)?;
            let pn1 = orthogonal_poly(&u, total - 1)?;
            &pn + &pn1.scale(c)
        }
        CompletionRule::PinnedTop { coeffs } => {
            if coeffs.len() != total - n {
                return Err(Error::InvalidParameters(format!(
                    "PinnedTop needs {} coefficients, got {}",
                    total - n,
                    coeffs.len()
                )));
            }
            // unknowns p_0..p_{n-1}; pinned p_{N-1}..p_n (highest first) and p_N = 1
            let mut fixed = vec![Rat::new(); total + 1];
            fixed[total] = Rat::from(1);
            for (i, c) in coeffs.iter().enumerate() {
                fixed[total - 1 - i] = c.clone();
            }
            let fixed_poly = ExactPoly::from_coeffs(fixed);
            let mut rows = Vec::with_capacity(n);
            let mut rhs = Vec::with_capacity(n);
            for j in 0..n {
                rows.push((0..n).map(|m| u[m + j].clone()).collect());
                rhs.push(Rational::from(-weighted_moment(&fixed_poly, &u, j)));
            }
            let sol = solve_exact(&rows, &rhs)
                .ok_or_else(|| Error::NonNormalIndex(format!("quasi system singular at n={n}")))?;
            let mut coeffs_all = sol;
            coeffs_all.extend(fixed_poly.coeffs()[n..].iter().cloned());
            ExactPoly::from_coeffs(coeffs_all)
        }
    };
    if p.degree() != Some(total) {
        return Err(Error::NonNormalIndex(format!(
            "quasi solution degenerated below degree {total}"
        )));
    }

    let m_n = weighted_moment(&p, &u, n);
    if m_n.is_zero() {
        return Err(Error::NonNormalIndex(format!(
            "weighted moment m_n vanishes at n={n}"
        )));
    }
    Ok(MopRecord {
        index: None,
        poly: p.clone(),
        channels: vec![WeightChannel {
            orth_conditions: n,
            m_n: rat_string(&m_n),
            cauchy: LaurentTail::cauchy_of(&p, &u)?,
            partner: None,
            vanvleck: None,
            d_poly: None,
        }],
        r_poly: None,
        r_star: None,
        e_poly: None,
        f_poly: None,
        warnings: vec![],
    })
}

/// Monic orthogonal polynomial of the given degree from exact moments.
pub fn orthogonal_poly(u: &[Rat], degree: usize) -> Result<ExactPoly> {
    if degree == 0 {
        return Ok(ExactPoly::one());
    }
    if u.len() < 2 * degree {
        return Err(Error::InsufficientMoments { needed: 2 * degree, have: u.len() });
    }
    let rows: Vec<Vec<Rat>> = (0..degree)
        .map(|j| (0..degree).map(|m| u[m + j].clone()).collect())
        .collect();
    let rhs: Vec<Rat> = (0..degree)
        .map(|j| Rational::from(-u[degree + j].clone()))
        .collect();
    let sol = solve_exact(&rows, &rhs)
        .ok_or_else(|| Error::NonNormalIndex(format!("moment Hankel system singular at degree {degree}")))?;
    let mut coeffs = sol;
    coeffs.push(Rat::from(1));
    Ok(ExactPoly::from_coeffs(coeffs))
}

/// Assemble a record around an externally supplied polynomial: Cauchy tails
/// and weighted moments are computed, no orthogonality is assumed. The
/// per-channel `orders` give the number of orthogonality conditions to
/// attribute (for degree bounds and m_n bookkeeping).
pub fn record_from_polynomial(
    p: &ExactPoly,
    weights: &[&SemiclassicalWeight],
    orders: &[usize],
    series_order: Option<usize>,
) -> Result<MopRecord> {
    let total = p
        .degree()
        .ok_or_else(|| Error::InvalidParameters("record polynomial must be nonzero".into()))?;
    if weights.len() != orders.len() || weights.is_empty() {
        return Err(Error::InvalidParameters(
            "one orthogonality order per weight is required".into(),
        ));
    }
    let sigma_max = weights.iter().map(|w| w.sigma).max().unwrap();
    let order = series_order.unwrap_or_else(|| default_series_order(total, sigma_max));
    let mut channels = Vec::with_capacity(weights.len());
    for (w, &n) in weights.iter().zip(orders) {
        require_exact(w)?;
        let u = w.pearson_moments(total + order)?;
        let m_n = weighted_moment(p, &u, n);
        channels.push(WeightChannel {
            orth_conditions: n,
            m_n: rat_string(&m_n),
            cauchy: LaurentTail::cauchy_of(p, &u)?,
            partner: None,
            vanvleck: None,
            d_poly: None,
        });
    }
    let index = if orders.len() == 2 {
        Some(MultiIndex::new(orders[0], orders[1]))
    } else {
        None
    };
    Ok(MopRecord {
        index,
        poly: p.clone(),
        channels,
        r_poly: None,
        r_star: None,
        e_poly: None,
        f_poly: None,
        warnings: vec![],
    })
}

/// True iff the two quasi-orthogonality systems are independent, measured by
/// the coupling polynomial being not identically zero at the available order.
/// (Whether this coincides with normality of the index is an open question;
/// the two signals are reported separately.)
pub fn check_independence(rec: &MopRecord) -> Result<bool> {
    if rec.channels.len() != 2 {
        return Err(Error::NotApplicable(
            "independence requires a two-weight record".into(),
        ));
    }
    let r = rec.r_poly.as_ref().ok_or_else(|| {
        Error::NotApplicable("coupling polynomial not computed; run the partner pipeline".into())
    })?;
    Ok(!r.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};
    use crate::weights::{family, FamilySpec};

    #[test]
    fn hermite_quasi_n2() {
        let w = &family(&FamilySpec::new("hermite", &[])).unwrap()[0];
        let rec = solve_quasi(w, 2, 2, &CompletionRule::Orthogonal, None).unwrap();
        assert_eq!(rec.poly, ExactPoly::from_coeffs(vec![rat(-1, 2), rat_i(0), rat_i(1)]));
    }

    #[test]
    fn legendre_three() {
        let w = &family(&FamilySpec::new("jacobi", &[("alpha", "0"), ("beta", "0")])).unwrap()[0];
        let rec = solve_quasi(w, 3, 3, &CompletionRule::Orthogonal, None).unwrap();
        assert_eq!(
            rec.poly,
            ExactPoly::from_coeffs(vec![rat_i(0), rat(-3, 5), rat_i(0), rat_i(1)])
        );
    }

    #[test]
    fn mh55_fixture_coefficients() {
        let ws = family(&FamilySpec::new("multiple_hermite", &[("c1", "1"), ("c2", "-1")])).unwrap();
        let rec = solve_mop(&ws[0], &ws[1], MultiIndex::new(5, 5), None).unwrap();
        assert_eq!(rec.poly.coeff(0), rat(-39971, 1024));
        assert_eq!(rec.poly.coeff(8), rat(-95, 4));
        assert!(rec.poly.is_monic());
        // leading Cauchy coefficient index: first nonzero c_k at k = n_i
        for ch in &rec.channels {
            let c = &ch.cauchy;
            assert_eq!(c.first_nonzero(), Some(ch.orth_conditions));
            assert_eq!(c.coeffs()[ch.orth_conditions], -ch.m_n_rat());
        }
    }

    #[test]
    fn orthogonality_residuals_vanish() {
        let ws = family(&FamilySpec::new(
            "jacobi_pineiro",
            &[("alpha", "0"), ("beta1", "0"), ("beta2", "-1/2")],
        ))
        .unwrap();
        let idx = MultiIndex::new(3, 2);
        let rec = solve_mop(&ws[0], &ws[1], idx, None).unwrap();
        for (w, n) in [(&ws[0], idx.n1), (&ws[1], idx.n2)] {
            let u = w.pearson_moments(rec.poly.degree().unwrap() + n + 1).unwrap();
            for j in 0..n {
                assert!(weighted_moment(&rec.poly, &u, j).is_zero());
            }
            assert!(!weighted_moment(&rec.poly, &u, n).is_zero());
        }
    }

    #[test]
    fn pinned_top_completion() {
        let w = &family(&FamilySpec::new("jacobi", &[("alpha", "0"), ("beta", "0")])).unwrap()[0];
        // degree 5, 4 conditions, pinned x^4 coefficient 1
        let rec = solve_quasi(
            w,
            5,
            4,
            &CompletionRule::PinnedTop { coeffs: vec![rat_i(1)] },
            None,
        )
        .unwrap();
        assert_eq!(rec.poly.coeff(4), rat_i(1));
        assert_eq!(rec.poly.degree(), Some(5));
        let u = w.pearson_moments(12).unwrap();
        for j in 0..4 {
            assert!(weighted_moment(&rec.poly, &u, j).is_zero());
        }
    }

    #[test]
    fn monic_combination_matches_sum() {
        let w = &family(&FamilySpec::new("jacobi", &[("alpha", "0"), ("beta", "0")])).unwrap()[0];
        let u = w.pearson_moments(20).unwrap();
        let p5 = orthogonal_poly(&u, 5).unwrap();
        let p4 = orthogonal_poly(&u, 4).unwrap();
        let rec = solve_quasi(
            w,
            5,
            4,
            &CompletionRule::MonicCombination { c: rat_i(1) },
            None,
        )
        .unwrap();
        assert_eq!(rec.poly, &p5 + &p4);
    }

    #[test]
    fn numeric_backend_refused() {
        let ws = family(&FamilySpec::new(
            "angelesco_jacobi",
            &[("a", "-1"), ("alpha", "1/2"), ("beta", "0"), ("gamma", "0")],
        ))
        .unwrap();
        let err = solve_mop(&ws[0], &ws[1], MultiIndex::new(2, 2), None).unwrap_err();
        assert!(matches!(err, Error::InvalidParameters(_)));
    }

    #[test]
    fn record_json_round_trip() {
        let ws = family(&FamilySpec::new("multiple_hermite", &[("c1", "1"), ("c2", "-1")])).unwrap();
        let rec = solve_mop(&ws[0], &ws[1], MultiIndex::new(2, 1), None).unwrap();
        let s = serde_json::to_string(&rec).unwrap();
        let back: MopRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back.poly, rec.poly);
        assert_eq!(back.channels[0].cauchy, rec.channels[0].cauchy);
    }
}
