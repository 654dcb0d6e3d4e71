//! Semiclassical weights: Pearson datum (A, B), support, moment backends,
//! and the catalog of named families.

use crate::rat::RatExt;
use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::rat::{is_integer, parse_rat, rat_string, Rat};
use rug::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One leg of a complex contour: an infinite ray from `vertex` in direction
/// exp(2*pi*i*angle_turns), traversed outward (+1) or inward (-1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourLeg {
    pub vertex_re: String,
    pub vertex_im: String,
    pub angle_turns: String,
    pub orientation: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SupportComponent {
    /// Bounded interval (left < right) or a ray / the full line when an
    /// endpoint is absent. Orientation is left-to-right when `true`.
    BoundedInterval {
        left: String,
        right: String,
        #[serde(default = "default_orientation")]
        orientation: bool,
    },
    Ray {
        #[serde(skip_serializing_if = "Option::is_none")]
        left: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        right: Option<String>,
        #[serde(default = "default_orientation")]
        orientation: bool,
    },
    ContourTag {
        id: String,
        legs: Vec<ContourLeg>,
    },
}

fn default_orientation() -> bool {
    true
}

impl SupportComponent {
    pub fn interval(left: Rat, right: Rat) -> Self {
        assert!(left < right, "interval endpoints out of order");
        SupportComponent::BoundedInterval {
            left: rat_string(&left),
            right: rat_string(&right),
            orientation: true,
        }
    }

    pub fn ray_right(left: Rat) -> Self {
        SupportComponent::Ray {
            left: Some(rat_string(&left)),
            right: None,
            orientation: true,
        }
    }

    pub fn ray_left(right: Rat) -> Self {
        SupportComponent::Ray {
            left: None,
            right: Some(rat_string(&right)),
            orientation: true,
        }
    }

    pub fn real_line() -> Self {
        SupportComponent::Ray {
            left: None,
            right: None,
            orientation: true,
        }
    }

    /// Finite endpoints as rationals: (left, right), None when infinite.
    pub fn endpoints(&self) -> Result<(Option<Rat>, Option<Rat>)> {
        match self {
            SupportComponent::BoundedInterval { left, right, .. } => {
                Ok((Some(parse_rat(left)?), Some(parse_rat(right)?)))
            }
            SupportComponent::Ray { left, right, .. } => Ok((
                left.as_deref().map(parse_rat).transpose()?,
                right.as_deref().map(parse_rat).transpose()?,
            )),
            SupportComponent::ContourTag { id, .. } => Err(Error::NotApplicable(format!(
                "contour {id} has no real endpoints"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum MomentBackend {
    /// Seed moments per support component; the Pearson recurrence extends them.
    ExactRecurrence { seeds: Vec<Vec<String>> },
    /// Named closed-form generator (exact).
    ClosedForm { id: String },
    /// Double-exponential quadrature at a working precision.
    NumericQuadrature { precision: u32, scheme: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiclassicalWeight {
    /// Monic polynomial whose zeros host the support endpoints.
    pub a: ExactPoly,
    pub b: ExactPoly,
    pub support: Vec<SupportComponent>,
    pub sigma: usize,
    pub backend: MomentBackend,
    /// Opaque label for the common transcendental prefactor of the moments;
    /// carried, never evaluated, in the exact pipeline.
    pub scale_tag: String,
}

/// class of the pair (A, B): max(deg A - 2, deg B - 1), clamped at 0.
pub fn pair_class(a: &ExactPoly, b: &ExactPoly) -> usize {
    let da = a.degree().map_or(0i64, |d| d as i64 - 2);
    let db = b.degree().map_or(i64::MIN, |d| d as i64 - 1);
    da.max(db).max(0) as usize
}

/// Number of seed moments the recurrence needs per component:
/// max(deg A - 1, deg B), at least 1.
pub fn seed_count(a: &ExactPoly, b: &ExactPoly) -> usize {
    let da = a.degree().map_or(i64::MIN, |d| d as i64 - 1);
    let db = b.degree().map_or(i64::MIN, |d| d as i64);
    da.max(db).max(1) as usize
}

impl SemiclassicalWeight {
    pub fn new(
        a: ExactPoly,
        b: ExactPoly,
        support: Vec<SupportComponent>,
        backend: MomentBackend,
        scale_tag: &str,
    ) -> Result<Self> {
        if !a.is_monic() {
            return Err(Error::InvalidParameters("A must be monic".into()));
        }
        let sigma = pair_class(&a, &b);
        let w = SemiclassicalWeight {
            a,
            b,
            support,
            sigma,
            backend,
            scale_tag: scale_tag.to_string(),
        };
        if let MomentBackend::ExactRecurrence { seeds } = &w.backend {
            let need = seed_count(&w.a, &w.b);
            if seeds.len() != w.support.len() {
                return Err(Error::InvalidParameters(format!(
                    "{} seed lists for {} support components",
                    seeds.len(),
                    w.support.len()
                )));
            }
            for (ci, s) in seeds.iter().enumerate() {
                if s.len() < need {
                    return Err(Error::SeedMomentsMissing {
                        component: ci,
                        needed: need,
                        have: s.len(),
                    });
                }
            }
        }
        Ok(w)
    }

    pub fn has_exact_backend(&self) -> bool {
        matches!(
            self.backend,
            MomentBackend::ExactRecurrence { .. } | MomentBackend::ClosedForm { .. }
        )
    }

    /// Exact moments u_0..u_{count-1}; sums per-component sequences.
    pub fn pearson_moments(&self, count: usize) -> Result<Vec<Rat>> {
        match &self.backend {
            MomentBackend::ExactRecurrence { seeds } => {
                let mut total = vec![Rat::new(); count];
                for (ci, seed_strs) in seeds.iter().enumerate() {
                    let seed: Vec<Rat> = seed_strs
                        .iter()
                        .map(|s| parse_rat(s))
                        .collect::<Result<_>>()?;
                    let comp = recurrence_extend(&self.a, &self.b, &seed, count)
                        .map_err(|e| match e {
                            Error::SeedMomentsMissing { needed, have, .. } => {
                                Error::SeedMomentsMissing { component: ci, needed, have }
                            }
                            other => other,
                        })?;
                    for (t, c) in total.iter_mut().zip(comp) {
                        *t += c;
                    }
                }
                Ok(total)
            }
            MomentBackend::ClosedForm { id } => closed_form_moments(id, count),
            MomentBackend::NumericQuadrature { .. } => Err(Error::InvalidParameters(
                "numeric backend has no exact moments; use numeric_moments".into(),
            )),
        }
    }
}

/// Extend seed moments with the recurrence
/// sum_i (k+i) a_i u_{k+i-1} + sum_j b_j u_{k+j} = 0, k = 0, 1, ...
/// derived from integrating x^k (A w)' = x^k (A' + B) w with vanishing
/// boundary terms. Verifies that the seeds themselves satisfy it.
pub fn recurrence_extend(
    a: &ExactPoly,
    b: &ExactPoly,
    seeds: &[Rat],
    count: usize,
) -> Result<Vec<Rat>> {
    let da = a.degree().ok_or_else(|| Error::InvalidParameters("A is zero".into()))? as i64;
    let db = b.degree().map_or(i64::MIN, |d| d as i64);
    let r = (da - 1).max(db);
    if r < 0 {
        return Err(Error::InvalidParameters(
            "recurrence is empty for deg A <= 0 and B = 0".into(),
        ));
    }
    let r = r as usize;
    if seeds.is_empty() {
        return Err(Error::SeedMomentsMissing {
            component: 0,
            needed: seed_count(a, b),
            have: 0,
        });
    }
    let mut u: Vec<Rat> = seeds.to_vec();
    let mut k = 0usize;
    loop {
        let target = k + r;
        // terms of the relation at this k: (index, coefficient)
        let mut lead = Rat::new();
        let mut rest_terms: Vec<(usize, Rat)> = vec![];
        for (i, ai) in a.coeffs().iter().enumerate() {
            let coef = Rational::from(ai * Rational::from(k as u64 + i as u64));
            let idx = k as i64 + i as i64 - 1;
            if idx >= 0 && !coef.is_zero() {
                rest_terms.push((idx as usize, coef));
            }
        }
        for (j, bj) in b.coeffs().iter().enumerate() {
            if !bj.is_zero() {
                rest_terms.push((k + j, bj.clone()));
            }
        }
        rest_terms.retain(|(idx, coef)| {
            if *idx == target {
                lead += coef;
                false
            } else {
                true
            }
        });
        if target < u.len() {
            // consistency of supplied seeds
            let mut resid = Rational::from(&lead * &u[target]);
            for (idx, coef) in &rest_terms {
                resid += Rational::from(coef * &u[*idx]);
            }
            if !resid.is_zero() {
                return Err(Error::InvalidParameters(format!(
                    "seed moments violate the Pearson recurrence at k={k}"
                )));
            }
        } else if u.len() >= count {
            break;
        } else if target == u.len() {
            if lead.is_zero() {
                return Err(Error::RecurrenceSingular { index: target });
            }
            let mut rest = Rat::new();
            for (idx, coef) in &rest_terms {
                rest += Rational::from(coef * &u[*idx]);
            }
            u.push(Rational::from(-rest) / lead);
        } else {
            // gap between the seeds and the first index the recurrence reaches
            return Err(Error::SeedMomentsMissing {
                component: 0,
                needed: seed_count(a, b),
                have: seeds.len(),
            });
        }
        k += 1;
    }
    u.truncate(count);
    Ok(u)
}

fn closed_form_moments(id: &str, count: usize) -> Result<Vec<Rat>> {
    match id {
        // w = 1 on [0,1]
        "uniform01" => Ok((0..count).map(|k| Rat::from((1, k as i64 + 1))).collect()),
        other => Err(Error::InvalidParameters(format!(
            "unknown closed-form moment generator {other:?}"
        ))),
    }
}

/// Exact moments of x^k times an expanded polynomial weight over [a, b].
fn poly_weight_moments(w: &ExactPoly, a: &Rat, b: &Rat, count: usize) -> Vec<Rat> {
    (0..count)
        .map(|k| {
            let anti = (&ExactPoly::monomial(k) * w).antiderivative();
            anti.eval(b) - anti.eval(a)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

impl FamilySpec {
    pub fn new(id: &str, params: &[(&str, &str)]) -> Self {
        FamilySpec {
            id: id.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    fn get(&self, key: &str) -> Result<Rat> {
        let s = self.params.get(key).ok_or_else(|| {
            Error::InvalidParameters(format!("family {:?} requires parameter {key}", self.id))
        })?;
        parse_rat(s)
    }

    fn get_or(&self, key: &str, default: Rat) -> Result<Rat> {
        match self.params.get(key) {
            Some(s) => parse_rat(s),
            None => Ok(default),
        }
    }
}

/// Catalog ids understood by `family`.
pub const FAMILY_IDS: &[&str] = &[
    "multiple_hermite",
    "hermite",
    "mlaguerre1",
    "laguerre",
    "mlaguerre2",
    "jacobi_pineiro",
    "jacobi",
    "angelesco_jacobi",
    "appell",
    "cubic",
];

/// Build the weights of a named family. Returns one weight for the classical
/// families and two for the multiple-orthogonality pairs.
pub fn family(spec: &FamilySpec) -> Result<Vec<SemiclassicalWeight>> {
    let one = || ExactPoly::one();
    match spec.id.as_str() {
        "multiple_hermite" => {
            let c1 = spec.get("c1")?;
            let c2 = spec.get("c2")?;
            if c1 == c2 {
                return Err(Error::InvalidParameters("multiple_hermite requires c1 != c2".into()));
            }
            let mk = |c: &Rat| {
                SemiclassicalWeight::new(
                    one(),
                    ExactPoly::from_coeffs(vec![c.clone(), Rat::from(-2)]),
                    vec![SupportComponent::real_line()],
                    MomentBackend::ExactRecurrence { seeds: vec![vec!["1".into()]] },
                    &format!("sqrt(pi)*exp(({})^2/4)", rat_string(c)),
                )
            };
            Ok(vec![mk(&c1)?, mk(&c2)?])
        }
        "hermite" => {
            let c = spec.get_or("c", Rat::new())?;
            Ok(vec![SemiclassicalWeight::new(
                one(),
                ExactPoly::from_coeffs(vec![c.clone(), Rat::from(-2)]),
                vec![SupportComponent::real_line()],
                MomentBackend::ExactRecurrence { seeds: vec![vec!["1".into()]] },
                &format!("sqrt(pi)*exp(({})^2/4)", rat_string(&c)),
            )?])
        }
        "mlaguerre1" => {
            let a1 = spec.get("alpha1")?;
            let a2 = spec.get("alpha2")?;
            for a in [&a1, &a2] {
                if *a <= -1 {
                    return Err(Error::InvalidParameters("mlaguerre1 requires alpha_i > -1".into()));
                }
            }
            if is_integer(&Rational::from(&a1 - &a2)) {
                return Err(Error::InvalidParameters(
                    "mlaguerre1 requires alpha1 - alpha2 not an integer".into(),
                ));
            }
            let mk = |al: &Rat| laguerre_weight(al, &Rat::from(1));
            Ok(vec![mk(&a1)?, mk(&a2)?])
        }
        "laguerre" => {
            let al = spec.get("alpha")?;
            if al <= -1 {
                return Err(Error::InvalidParameters("laguerre requires alpha > -1".into()));
            }
            let c = spec.get_or("c", Rat::from(1))?;
            if c <= 0 {
                return Err(Error::InvalidParameters("laguerre requires c > 0".into()));
            }
            Ok(vec![laguerre_weight(&al, &c)?])
        }
        "mlaguerre2" => {
            let al = spec.get("alpha")?;
            let c1 = spec.get("c1")?;
            let c2 = spec.get("c2")?;
            if al <= -1 {
                return Err(Error::InvalidParameters("mlaguerre2 requires alpha > -1".into()));
            }
            if c1 <= 0 || c2 <= 0 || c1 == c2 {
                return Err(Error::InvalidParameters(
                    "mlaguerre2 requires c1, c2 > 0 and c1 != c2".into(),
                ));
            }
            Ok(vec![laguerre_weight(&al, &c1)?, laguerre_weight(&al, &c2)?])
        }
        "jacobi_pineiro" => {
            let al = spec.get("alpha")?;
            let b1 = spec.get("beta1")?;
            let b2 = spec.get("beta2")?;
            for v in [&al, &b1, &b2] {
                if *v <= -1 {
                    return Err(Error::InvalidParameters(
                        "jacobi_pineiro requires alpha, beta_i > -1".into(),
                    ));
                }
            }
            if is_integer(&Rational::from(&b1 - &b2)) {
                return Err(Error::InvalidParameters(
                    "jacobi_pineiro requires beta1 - beta2 not an integer".into(),
                ));
            }
            let mk = |be: &Rat| {
                // w = x^beta (1-x)^alpha on [0,1]; A = x^2 - x, B = (beta+alpha)x - beta
                SemiclassicalWeight::new(
                    ExactPoly::from_i64s(&[0, -1, 1]),
                    ExactPoly::from_coeffs(vec![
                        Rational::from(-be.clone()),
                        Rational::from(be + &al),
                    ]),
                    vec![SupportComponent::interval(Rat::new(), Rat::from(1))],
                    MomentBackend::ExactRecurrence { seeds: vec![vec!["1".into()]] },
                    &format!("Beta({}+1,{}+1)", rat_string(be), rat_string(&al)),
                )
            };
            Ok(vec![mk(&b1)?, mk(&b2)?])
        }
        "jacobi" => {
            let al = spec.get("alpha")?;
            let be = spec.get("beta")?;
            if al <= -1 || be <= -1 {
                return Err(Error::InvalidParameters("jacobi requires alpha, beta > -1".into()));
            }
            Ok(vec![jacobi_weight(&al, &be)?])
        }
        "angelesco_jacobi" => {
            let a = spec.get("a")?;
            let al = spec.get("alpha")?;
            let be = spec.get("beta")?;
            let ga = spec.get("gamma")?;
            if a >= 0 {
                return Err(Error::InvalidParameters("angelesco_jacobi requires a < 0".into()));
            }
            for v in [&al, &be, &ga] {
                if *v <= -1 {
                    return Err(Error::InvalidParameters(
                        "angelesco_jacobi requires alpha, beta, gamma > -1".into(),
                    ));
                }
            }
            angelesco_jacobi_weights(&a, &al, &be, &ga)
        }
        "appell" => angelesco_jacobi_weights(&Rat::from(-1), &Rat::new(), &Rat::new(), &Rat::new()),
        "cubic" => {
            // w = exp(-z^3) on two contours meeting at the origin
            let b = ExactPoly::from_i64s(&[0, 0, -3]);
            let leg = |turns: &str, orientation: i8| ContourLeg {
                vertex_re: "0".into(),
                vertex_im: "0".into(),
                angle_turns: turns.into(),
                orientation,
            };
            let w1 = SemiclassicalWeight::new(
                one(),
                b.clone(),
                vec![SupportComponent::ContourTag {
                    id: "cubic_sector_minus_to_zero".into(),
                    legs: vec![leg("-1/3", -1), leg("0", 1)],
                }],
                MomentBackend::NumericQuadrature { precision: 128, scheme: "exp_sinh".into() },
                "1",
            )?;
            let w2 = SemiclassicalWeight::new(
                one(),
                b,
                vec![SupportComponent::ContourTag {
                    id: "cubic_sector_minus_to_plus".into(),
                    legs: vec![leg("-1/3", -1), leg("1/3", 1)],
                }],
                MomentBackend::NumericQuadrature { precision: 128, scheme: "exp_sinh".into() },
                "1",
            )?;
            Ok(vec![w1, w2])
        }
        other => Err(Error::InvalidParameters(format!(
            "unknown family {other:?}; known: {FAMILY_IDS:?}"
        ))),
    }
}

fn laguerre_weight(al: &Rat, c: &Rat) -> Result<SemiclassicalWeight> {
    // w = x^alpha e^{-c x} on [0, inf); A = x, B = alpha - c x
    SemiclassicalWeight::new(
        ExactPoly::monomial(1),
        ExactPoly::from_coeffs(vec![al.clone(), Rational::from(-c.clone())]),
        vec![SupportComponent::ray_right(Rat::new())],
        MomentBackend::ExactRecurrence { seeds: vec![vec!["1".into()]] },
        &format!("Gamma({}+1)/({})^({}+1)", rat_string(al), rat_string(c), rat_string(al)),
    )
}

fn jacobi_weight(al: &Rat, be: &Rat) -> Result<SemiclassicalWeight> {
    // w = (x-1)^alpha (x+1)^beta on [-1,1]; A = x^2-1, B = (a+b)x + a-b
    SemiclassicalWeight::new(
        ExactPoly::from_i64s(&[-1, 0, 1]),
        ExactPoly::from_coeffs(vec![Rational::from(al - be), Rational::from(al + be)]),
        vec![SupportComponent::interval(Rat::from(-1), Rat::from(1))],
        MomentBackend::ExactRecurrence { seeds: vec![vec!["1".into()]] },
        &format!("2^({a}+{b}+1)*Beta({a}+1,{b}+1)", a = rat_string(al), b = rat_string(be)),
    )
}

fn angelesco_jacobi_weights(a: &Rat, al: &Rat, be: &Rat, ga: &Rat) -> Result<Vec<SemiclassicalWeight>> {
    // w = (x-a)^alpha |x|^beta (1-x)^gamma; A = x(x-a)(x-1),
    // B = alpha x(x-1) + beta (x-a)(x-1) + gamma x(x-a)
    let x = ExactPoly::monomial(1);
    let xa = ExactPoly::from_coeffs(vec![Rational::from(-a.clone()), Rat::from(1)]);
    let x1 = ExactPoly::from_i64s(&[-1, 1]);
    let a_poly = &(&x * &xa) * &x1;
    let b_poly = &(&(&x * &x1).scale(al) + &(&xa * &x1).scale(be)) + &(&x * &xa).scale(ga);
    let exact = [al, be, ga].iter().all(|v| is_integer(v) && **v >= 0);
    let support1 = SupportComponent::interval(a.clone(), Rat::new());
    let support2 = SupportComponent::interval(Rat::new(), Rat::from(1));
    let scale = format!(
        "angelesco_jacobi(a={},{},{},{})",
        rat_string(a), rat_string(al), rat_string(be), rat_string(ga)
    );
    if exact {
        // expanded polynomial weights per side: (x-a)^al (-x)^be (1-x)^ga on [a,0],
        // (x-a)^al x^be (1-x)^ga on [0,1]
        let pow = |p: &ExactPoly, e: &Rat| -> ExactPoly {
            let mut acc = ExactPoly::one();
            let mut n = e.numer().to_usize_wrapping();
            while n > 0 {
                acc = &acc * p;
                n -= 1;
            }
            acc
        };
        let minus_x = ExactPoly::from_i64s(&[0, -1]);
        let one_minus_x = ExactPoly::from_i64s(&[1, -1]);
        let w_left = &(&pow(&xa, al) * &pow(&minus_x, be)) * &pow(&one_minus_x, ga);
        let w_right = &(&pow(&xa, al) * &pow(&x, be)) * &pow(&one_minus_x, ga);
        let need = seed_count(&a_poly, &b_poly);
        let seeds_left: Vec<String> = poly_weight_moments(&w_left, a, &Rat::new(), need)
            .iter()
            .map(rat_string)
            .collect();
        let seeds_right: Vec<String> = poly_weight_moments(&w_right, &Rat::new(), &Rat::from(1), need)
            .iter()
            .map(rat_string)
            .collect();
        let w1 = SemiclassicalWeight::new(
            a_poly.clone(),
            b_poly.clone(),
            vec![support1],
            MomentBackend::ExactRecurrence { seeds: vec![seeds_left] },
            &scale,
        )?;
        let w2 = SemiclassicalWeight::new(
            a_poly,
            b_poly,
            vec![support2],
            MomentBackend::ExactRecurrence { seeds: vec![seeds_right] },
            &scale,
        )?;
        Ok(vec![w1, w2])
    } else {
        let mk = |support: SupportComponent| {
            SemiclassicalWeight::new(
                a_poly.clone(),
                b_poly.clone(),
                vec![support],
                MomentBackend::NumericQuadrature { precision: 256, scheme: "tanh_sinh".into() },
                &scale,
            )
        };
        Ok(vec![mk(support1)?, mk(support2)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    #[test]
    fn hermite_moment_recurrence() {
        // e^{-x^2+x}: 2u_{k+1} = u_k + k u_{k-1}
        let spec = FamilySpec::new("multiple_hermite", &[("c1", "1"), ("c2", "-1")]);
        let ws = family(&spec).unwrap();
        let u = ws[0].pearson_moments(4).unwrap();
        assert_eq!(u, vec![rat_i(1), rat(1, 2), rat(3, 4), rat(7, 8)]);
        assert_eq!(ws[0].sigma, 0);
        assert_eq!(ws[1].b, ExactPoly::from_i64s(&[-1, -2]));
    }

    #[test]
    fn laguerre_moments_match_gamma_ratios() {
        // x^{1/2} e^{-x}: u_1 = 3/2, u_2 = 15/4
        let ws = family(&FamilySpec::new("mlaguerre1", &[("alpha1", "1/2"), ("alpha2", "1")])).unwrap();
        let u = ws[0].pearson_moments(3).unwrap();
        assert_eq!(u, vec![rat_i(1), rat(3, 2), rat(15, 4)]);
        assert_eq!(ws[0].a, ExactPoly::monomial(1));
    }

    #[test]
    fn appell_component_moments() {
        // w = 1 on [0,1]: u_k = 1/(k+1) (closed form and recurrence agree)
        let u = closed_form_moments("uniform01", 5).unwrap();
        assert_eq!(u[3], rat(1, 4));
        let ws = family(&FamilySpec::new("appell", &[])).unwrap();
        assert_eq!(ws.len(), 2);
        let m2 = ws[1].pearson_moments(6).unwrap();
        assert_eq!(m2, (0..6).map(|k| rat(1, k + 1)).collect::<Vec<_>>());
        let m1 = ws[0].pearson_moments(4).unwrap();
        assert_eq!(m1, vec![rat_i(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]);
        assert_eq!(ws[0].sigma, 1);
    }

    #[test]
    fn catalog_class_values() {
        for (spec, sigmas) in [
            (FamilySpec::new("multiple_hermite", &[("c1", "1"), ("c2", "-1")]), vec![0, 0]),
            (FamilySpec::new("mlaguerre1", &[("alpha1", "1/2"), ("alpha2", "1")]), vec![0, 0]),
            (FamilySpec::new("mlaguerre2", &[("alpha", "1"), ("c1", "1"), ("c2", "2")]), vec![0, 0]),
            (
                FamilySpec::new("jacobi_pineiro", &[("alpha", "0"), ("beta1", "0"), ("beta2", "-1/2")]),
                vec![0, 0],
            ),
            (FamilySpec::new("jacobi", &[("alpha", "0"), ("beta", "0")]), vec![0]),
            (FamilySpec::new("appell", &[]), vec![1, 1]),
        ] {
            let ws = family(&spec).unwrap();
            let got: Vec<usize> = ws.iter().map(|w| w.sigma).collect();
            assert_eq!(got, sigmas, "family {}", spec.id);
        }
    }

    #[test]
    fn angelesco_catalog_entry() {
        let ws = family(&FamilySpec::new(
            "angelesco_jacobi",
            &[("a", "-1"), ("alpha", "0"), ("beta", "0"), ("gamma", "0")],
        ))
        .unwrap();
        assert_eq!(ws[0].a, ExactPoly::from_i64s(&[0, -1, 0, 1]));
        assert!(ws[0].b.is_zero());
        assert_eq!(ws[0].sigma, 1);
        // non-integer parameters fall back to the numeric backend
        let wn = family(&FamilySpec::new(
            "angelesco_jacobi",
            &[("a", "-1"), ("alpha", "1/2"), ("beta", "0"), ("gamma", "0")],
        ))
        .unwrap();
        assert!(!wn[0].has_exact_backend());
    }

    #[test]
    fn invalid_parameters_are_named() {
        let err = family(&FamilySpec::new("multiple_hermite", &[("c1", "1"), ("c2", "1")]))
            .unwrap_err();
        assert!(err.to_string().contains("c1 != c2"));
        assert!(family(&FamilySpec::new("mlaguerre1", &[("alpha1", "1"), ("alpha2", "2")])).is_err());
        assert!(family(&FamilySpec::new("jacobi", &[("alpha", "-2"), ("beta", "0")])).is_err());
    }

    #[test]
    fn seed_inconsistency_detected() {
        let bad = SemiclassicalWeight::new(
            ExactPoly::from_i64s(&[0, -1, 1]),
            ExactPoly::zero(),
            vec![SupportComponent::interval(Rat::new(), Rat::from(1))],
            MomentBackend::ExactRecurrence { seeds: vec![vec!["1".into(), "1".into()]] },
            "",
        )
        .unwrap();
        // u_1 = 1 violates (k+2)u_{k+1} = (k+1)u_k at k=0 (u_1 should be 1/2)
        assert!(bad.pearson_moments(5).is_err());
    }

    #[test]
    fn weight_json_round_trip() {
        let ws = family(&FamilySpec::new("jacobi_pineiro", &[("alpha", "0"), ("beta1", "0"), ("beta2", "-1/2")])).unwrap();
        let s = serde_json::to_string(&ws[1]).unwrap();
        let back: SemiclassicalWeight = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ws[1]);
        assert_eq!(back.pearson_moments(4).unwrap(), ws[1].pearson_moments(4).unwrap());
    }

    #[test]
    fn shared_factor_pair_is_accepted() {
        // A and B share the factor x: (A, B) = (x*(x^2-1), x*0 + ...) built by
        // scaling the Jacobi pair by x. Moments are those of the plain Jacobi
        // weight, and they satisfy the scaled recurrence as well.
        let ws = family(&FamilySpec::new("jacobi", &[("alpha", "0"), ("beta", "0")])).unwrap();
        let u = ws[0].pearson_moments(8).unwrap();
        let x = ExactPoly::monomial(1);
        let a_shared = &x * &ws[0].a;
        let b_shared = &x * &ws[0].b;
        // the scaled relation integrates against the same boundary-vanishing
        // factor, so true Jacobi moments satisfy it identically
        let need = seed_count(&a_shared, &b_shared);
        assert_eq!(need, 2);
        let seeds: Vec<String> = u[..need].iter().map(rat_string).collect();
        let w = SemiclassicalWeight::new(
            a_shared,
            b_shared,
            vec![SupportComponent::interval(Rat::from(-1), Rat::from(1))],
            MomentBackend::ExactRecurrence { seeds: vec![seeds] },
            "",
        )
        .unwrap();
        assert_eq!(w.sigma, 1);
        assert_eq!(w.pearson_moments(6).unwrap(), u[..6]);
    }
}
