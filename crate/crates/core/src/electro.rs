//! Discrete weighted energies and the scalar/vector criticality residuals
//! evaluated at computed zero configurations.

use crate::rat::RatExt;
use crate::bigfloat::{eval_poly_complex, infinity, real_from_rat, BigComplex, Float};
use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::rat::Rat;
use crate::weights::SemiclassicalWeight;
use crate::zeros::ZeroSet;
use rug::Rational;
use serde::Serialize;

#[derive(Debug, Clone)]
pub enum FieldKind {
    /// coeff * log |p(z)|
    LogAbsPoly(ExactPoly),
    /// coeff * log |w(z)| for the semiclassical weight with Pearson pair (a, b)
    LogAbsWeight { a: ExactPoly, b: ExactPoly },
}

#[derive(Debug, Clone)]
pub struct FieldTerm {
    pub coeff: Rat,
    pub kind: FieldKind,
}

/// phi(z) = sum of terms; the analytic derivative of the underlying potential
/// is the rational function sum coeff * p'/p (resp. coeff * B/A).
#[derive(Debug, Clone, Default)]
pub struct ExternalField {
    pub terms: Vec<FieldTerm>,
}

impl ExternalField {
    pub fn zero() -> Self {
        ExternalField { terms: vec![] }
    }

    pub fn with_term(mut self, coeff: Rat, kind: FieldKind) -> Self {
        if !coeff.is_zero() {
            self.terms.push(FieldTerm { coeff, kind });
        }
        self
    }

    /// Polynomials whose zeros are poles of the derivative.
    pub fn pole_polynomials(&self) -> Vec<&ExactPoly> {
        self.terms
            .iter()
            .filter_map(|t| match &t.kind {
                FieldKind::LogAbsPoly(p) => {
                    if p.degree().map_or(false, |d| d > 0) {
                        Some(p)
                    } else {
                        None
                    }
                }
                FieldKind::LogAbsWeight { a, .. } => {
                    if a.degree().map_or(false, |d| d > 0) {
                        Some(a)
                    } else {
                        None
                    }
                }
            })
            .collect()
    }

    /// Phi'(z) at a complex point.
    pub fn derivative_at(&self, z: &BigComplex) -> BigComplex {
        let mut acc = BigComplex::zero(z.prec());
        for t in &self.terms {
            let coeff = real_from_rat(z.prec(), &t.coeff);
            let contrib = match &t.kind {
                FieldKind::LogAbsPoly(p) => {
                    let v = eval_poly_complex(p, z);
                    let d = eval_poly_complex(&p.derivative(), z);
                    d.div(&v)
                }
                FieldKind::LogAbsWeight { a, b } => {
                    let av = eval_poly_complex(a, z);
                    let bv = eval_poly_complex(b, z);
                    bv.div(&av)
                }
            };
            acc = acc.add(&contrib.mul_real(&coeff));
        }
        acc
    }

    /// Phi'(x) exactly at a rational point off the poles.
    pub fn derivative_at_rat(&self, x: &Rat) -> Result<Rat> {
        let mut acc = Rat::new();
        for t in &self.terms {
            let (num, den) = match &t.kind {
                FieldKind::LogAbsPoly(p) => (p.derivative().eval(x), p.eval(x)),
                FieldKind::LogAbsWeight { a, b } => (b.eval(x), a.eval(x)),
            };
            if den.is_zero() {
                return Err(Error::PoleCollision { index: 0 });
            }
            acc += Rational::from(&t.coeff * Rational::from(num / den));
        }
        Ok(acc)
    }

    /// phi(z) = Re Phi(z). Weight terms are decomposed through the rational
    /// zeros of A (the catalog always splits); the polynomial part of B/A is
    /// integrated exactly and log-terms carry the residues.
    pub fn value_at(&self, z: &BigComplex) -> Result<Float> {
        let prec = z.prec();
        let mut acc = Float::with_val(prec, 0);
        for t in &self.terms {
            let coeff = real_from_rat(prec, &t.coeff);
            let v = match &t.kind {
                FieldKind::LogAbsPoly(p) => eval_poly_complex(p, z).abs().ln(),
                FieldKind::LogAbsWeight { a, b } => {
                    if a.degree() == Some(0) {
                        // log w = poly part only
                        let anti = b.antiderivative();
                        eval_poly_complex(&anti, z).re
                    } else {
                        let roots = a.rational_roots();
                        let found: usize = roots.iter().map(|(_, m)| m).sum();
                        if Some(found) != a.degree() || roots.iter().any(|(_, m)| *m > 1) {
                            return Err(Error::InvalidParameters(
                                "field weight A must split with simple rational zeros".into(),
                            ));
                        }
                        let (quot, _) = b.div_rem(a);
                        let ap = a.derivative();
                        let mut val = eval_poly_complex(&quot.antiderivative(), z).re;
                        for (root, _) in roots {
                            let residue = Rational::from(b.eval(&root) / ap.eval(&root));
                            let dz = z.sub(&BigComplex::from_rat(prec, &root));
                            val += real_from_rat(prec, &residue) * dz.abs().ln();
                        }
                        val
                    }
                }
            };
            acc += v * coeff;
        }
        Ok(acc)
    }
}

/// The scalar equilibrium field (1/2) log |S / (A w)| for one channel.
pub fn scalar_equilibrium_field(w: &SemiclassicalWeight, s: &ExactPoly) -> ExternalField {
    let half = Rat::from((1, 2));
    let mhalf = Rat::from((-1, 2));
    ExternalField::zero()
        .with_term(half, FieldKind::LogAbsPoly(s.clone()))
        .with_term(mhalf.clone(), FieldKind::LogAbsPoly(w.a.clone()))
        .with_term(
            mhalf,
            FieldKind::LogAbsWeight { a: w.a.clone(), b: w.b.clone() },
        )
}

/// Vector external fields for the pair (zeros of P, zeros of S_which):
/// component 1: (1/2) log |1/v_which|; component 2: (1/2) log |R/(A1 A2)| +
/// (1/2) log |v_which / v_other|. The equal-weight case reduces to
/// ((1/2) log|1/v|, (1/2) log |R*|).
pub fn vector_fields(
    w1: &SemiclassicalWeight,
    w2: &SemiclassicalWeight,
    r_poly: &ExactPoly,
    r_star: Option<&ExactPoly>,
    which: usize,
) -> (ExternalField, ExternalField) {
    let half = Rat::from((1, 2));
    let mhalf = Rat::from((-1, 2));
    let (wa, wb) = if which == 1 { (w1, w2) } else { (w2, w1) };
    let phi1 = ExternalField::zero()
        .with_term(mhalf.clone(), FieldKind::LogAbsPoly(wa.a.clone()))
        .with_term(
            mhalf.clone(),
            FieldKind::LogAbsWeight { a: wa.a.clone(), b: wa.b.clone() },
        );
    if let Some(rs) = r_star {
        let phi2 = ExternalField::zero().with_term(half, FieldKind::LogAbsPoly(rs.clone()));
        return (phi1, phi2);
    }
    let phi2 = ExternalField::zero()
        .with_term(half.clone(), FieldKind::LogAbsPoly(r_poly.clone()))
        .with_term(mhalf.clone(), FieldKind::LogAbsPoly(w1.a.clone()))
        .with_term(mhalf.clone(), FieldKind::LogAbsPoly(w2.a.clone()))
        // log |v_a / v_b| = log|A_a| - log|A_b| + log w_a - log w_b
        .with_term(half.clone(), FieldKind::LogAbsPoly(wa.a.clone()))
        .with_term(
            half,
            FieldKind::LogAbsWeight { a: wa.a.clone(), b: wa.b.clone() },
        )
        .with_term(mhalf.clone(), FieldKind::LogAbsPoly(wb.a.clone()))
        .with_term(
            mhalf,
            FieldKind::LogAbsWeight { a: wb.a.clone(), b: wb.b.clone() },
        );
    (phi1, phi2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportComponent {
    Scalar,
    Vector1,
    Vector2,
}

#[derive(Debug, Clone)]
pub struct EquilibriumReport {
    pub residuals: Vec<BigComplex>,
    pub max_abs: Float,
    pub component: ReportComponent,
    pub precision: u32,
    /// Indices excluded for sitting within 2x certified radius of a field pole.
    pub excluded: Vec<usize>,
}

impl EquilibriumReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "component": self.component,
            "precision": self.precision,
            "max_abs": self.max_abs.to_f64(),
            "max_abs_log2": log2_of(&self.max_abs),
            "excluded": self.excluded,
            "residuals": self.residuals.iter().map(|z| {
                serde_json::json!([z.re.to_f64(), z.im.to_f64()])
            }).collect::<Vec<_>>(),
        })
    }
}

fn log2_of(f: &Float) -> f64 {
    if f.is_zero() {
        return f64::NEG_INFINITY;
    }
    let exp = f.get_exp().unwrap_or(0) as f64;
    let mut m = f.clone().abs();
    m >>= f.get_exp().unwrap_or(0);
    exp + m.to_f64().log2()
}

/// Pole locations of the field at working precision.
fn field_poles(field: &ExternalField, prec: u32) -> Result<Vec<(BigComplex, Float)>> {
    let mut out = vec![];
    for p in field.pole_polynomials() {
        let zs = crate::zeros::find_zeros(p, prec)?;
        for (z, r) in zs.points.into_iter().zip(zs.radii) {
            out.push((z, r));
        }
    }
    Ok(out)
}

/// Indices of points within 2x their certified radius of a pole.
fn excluded_points(zs: &ZeroSet, poles: &[(BigComplex, Float)]) -> Vec<usize> {
    let mut excluded = vec![];
    for (i, (z, r)) in zs.points.iter().zip(&zs.radii).enumerate() {
        for (p, pr) in poles {
            let d = z.sub(p).abs();
            let bound = Float::with_val(d.prec(), Float::with_val(d.prec(), r * 2u32) + pr);
            if d <= bound {
                excluded.push(i);
                break;
            }
        }
    }
    excluded
}

/// residual_j = sum_{i != j} 1/(z_j - z_i) - Phi'(z_j) over the configuration.
pub fn scalar_residual(zs: &ZeroSet, field: &ExternalField) -> Result<EquilibriumReport> {
    let prec = zs
        .points
        .first()
        .map(|z| z.prec())
        .ok_or_else(|| Error::InvalidParameters("empty configuration".into()))?;
    let poles = field_poles(field, zs.precision)?;
    let excluded = excluded_points(zs, &poles);
    if excluded.len() == zs.len() {
        return Err(Error::PoleCollision { index: excluded[0] });
    }
    let active: Vec<usize> = (0..zs.len()).filter(|i| !excluded.contains(i)).collect();
    let mut residuals = vec![];
    let mut max_abs = Float::with_val(prec, 0);
    for &j in &active {
        let mut acc = BigComplex::zero(prec);
        for &i in &active {
            if i == j {
                continue;
            }
            let diff = zs.points[j].sub(&zs.points[i]);
            if diff.abs().is_zero() {
                return Err(Error::OverlapDetected(j, i));
            }
            acc = acc.add(&diff.recip());
        }
        acc = acc.sub(&field.derivative_at(&zs.points[j]));
        let a = acc.abs();
        if a > max_abs {
            max_abs = a.clone();
        }
        residuals.push(acc);
    }
    Ok(EquilibriumReport {
        residuals,
        max_abs,
        component: ReportComponent::Scalar,
        precision: zs.precision,
        excluded,
    })
}

/// Vector residuals: component 1 at zeros of the first set with the cross
/// term a * sum 1/(z - xi), component 2 symmetrically.
pub fn vector_residual(
    zp: &ZeroSet,
    zs: &ZeroSet,
    a: &Rat,
    fields: (&ExternalField, &ExternalField),
) -> Result<Vec<EquilibriumReport>> {
    let prec = zp
        .points
        .first()
        .map(|z| z.prec())
        .ok_or_else(|| Error::InvalidParameters("empty configuration".into()))?;
    // overlap within certified radii is a model violation
    for (i, (z, rz)) in zp.points.iter().zip(&zp.radii).enumerate() {
        for (j, (x, rx)) in zs.points.iter().zip(&zs.radii).enumerate() {
            let d = z.sub(x).abs();
            let bound = Float::with_val(prec, rz + rx);
            if d <= bound {
                return Err(Error::OverlapDetected(i, j));
            }
        }
    }
    let mut out = vec![];
    for (which, (own, other, field)) in [
        (ReportComponent::Vector1, (zp, zs, fields.0)),
        (ReportComponent::Vector2, (zs, zp, fields.1)),
    ] {
        let poles = field_poles(field, own.precision)?;
        let excluded = excluded_points(own, &poles);
        if excluded.len() == own.len() {
            return Err(Error::PoleCollision {
                index: excluded[0],
            });
        }
        let active: Vec<usize> = (0..own.len()).filter(|i| !excluded.contains(i)).collect();
        let a_f = real_from_rat(prec, a);
        let mut residuals = vec![];
        let mut max_abs = Float::with_val(prec, 0);
        for &j in &active {
            let mut acc = BigComplex::zero(prec);
            for &i in &active {
                if i == j {
                    continue;
                }
                let diff = own.points[j].sub(&own.points[i]);
                if diff.abs().is_zero() {
                    return Err(Error::OverlapDetected(j, i));
                }
                acc = acc.add(&diff.recip());
            }
            let mut cross = BigComplex::zero(prec);
            for x in &other.points {
                cross = cross.add(&own.points[j].sub(x).recip());
            }
            acc = acc.add(&cross.mul_real(&a_f));
            acc = acc.sub(&field.derivative_at(&own.points[j]));
            let ab = acc.abs();
            if ab > max_abs {
                max_abs = ab.clone();
            }
            residuals.push(acc);
        }
        out.push(EquilibriumReport {
            residuals,
            max_abs,
            component: which,
            precision: own.precision,
            excluded,
        });
    }
    Ok(out)
}

/// Discrete weighted (vector) energy. Coincident points give +infinity.
/// One set: E(mu) + 2 sum phi; two sets add both self-energies, the cross
/// term 2a sum log 1/|z - xi|, and both field sums.
pub fn energy(
    sets: &[&ZeroSet],
    a: Option<&Rat>,
    fields: &[&ExternalField],
    prec: u32,
) -> Result<Float> {
    if sets.is_empty() || sets.len() > 2 || sets.len() != fields.len() {
        return Err(Error::InvalidParameters(
            "energy takes one or two sets with matching fields".into(),
        ));
    }
    let mut total = Float::with_val(prec, 0);
    for (zs, field) in sets.iter().zip(fields) {
        for (i, zi) in zs.points.iter().enumerate() {
            for (j, zj) in zs.points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = zi.sub(zj).abs();
                if d.is_zero() {
                    return Ok(infinity(prec));
                }
                total -= Float::with_val(prec, d.ln_ref());
            }
            total += Float::with_val(prec, field.value_at(&zi.with_prec(prec))?) * 2u32;
        }
    }
    if sets.len() == 2 {
        let a = a.ok_or_else(|| {
            Error::InvalidParameters("two-component energy needs the interaction parameter".into())
        })?;
        let a_f = real_from_rat(prec, a);
        let mut cross = Float::with_val(prec, 0);
        for z in &sets[0].points {
            for x in &sets[1].points {
                let d = z.sub(x).abs();
                if d.is_zero() {
                    return Ok(infinity(prec));
                }
                cross -= Float::with_val(prec, d.ln_ref());
            }
        }
        total += cross * a_f * 2u32;
    }
    Ok(total)
}

#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub bins: Vec<(f64, f64, f64)>, // (left, right, density)
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Histogram {
    pub fn csv(&self) -> String {
        let mut s = String::from("bin_left,bin_right,density\n");
        for (l, r, d) in &self.bins {
            s.push_str(&format!("{l},{r},{d}\n"));
        }
        s
    }
}

/// Normalized histogram of the scaled real zeros.
pub fn histogram_export(zs: &ZeroSet, scaling: f64, bins: usize) -> Result<Histogram> {
    let xs: Vec<f64> = zs
        .real_points()
        .iter()
        .map(|(x, _)| x.to_f64() * scaling)
        .collect();
    if xs.is_empty() || bins == 0 {
        return Err(Error::InvalidParameters("no real zeros to bin".into()));
    }
    let min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = ((max - min) / bins as f64).max(f64::MIN_POSITIVE);
    let mut counts = vec![0usize; bins];
    for &x in &xs {
        let mut idx = ((x - min) / width) as usize;
        if idx >= bins {
            idx = bins - 1;
        }
        counts[idx] += 1;
    }
    let n = xs.len() as f64;
    let bins_out = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            (
                min + i as f64 * width,
                min + (i as f64 + 1.0) * width,
                c as f64 / (n * width),
            )
        })
        .collect();
    Ok(Histogram {
        bins: bins_out,
        min,
        max,
        count: xs.len(),
    })
}
