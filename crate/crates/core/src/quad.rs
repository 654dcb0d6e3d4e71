//! Double-exponential quadrature for numeric moments and Cauchy-transform
//! evaluation. Endpoint algebraic singularities of the catalog weights are
//! absorbed by the tanh-sinh substitution; rays use exp-sinh, the full line
//! sinh-sinh.

use crate::bigfloat::{eval_poly_real, pow2, BigComplex, Float};
use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::rat::{parse_rat, Rat};
use crate::weights::{SemiclassicalWeight, SupportComponent};
use rug::ops::Pow;
use rug::Rational;

/// Numeric moments with per-moment certified relative error bounds.
#[derive(Debug, Clone)]
pub struct NumericMoments {
    pub values: Vec<BigComplex>,
    pub errors: Vec<Float>,
    pub precision: u32,
}

/// w(x) = prod |x - r_k|^{e_k} * exp(poly(x)) from the Pearson pair, with the
/// poles of B/A resolved over the rationals.
pub struct WeightEvaluator {
    factors: Vec<(Rat, Rat)>, // (root, exponent)
    exp_part: ExactPoly,      // antiderivative of the polynomial part of B/A
}

impl WeightEvaluator {
    pub fn build(w: &SemiclassicalWeight) -> Result<Self> {
        let a = &w.a;
        let b = &w.b;
        if a.degree() == Some(0) {
            return Ok(WeightEvaluator {
                factors: vec![],
                exp_part: b.antiderivative(),
            });
        }
        let roots = a.rational_roots();
        let found: usize = roots.iter().map(|(_, m)| m).sum();
        if Some(found) != a.degree() {
            return Err(Error::InvalidParameters(
                "A does not split over the rationals; numeric weight evaluation unsupported".into(),
            ));
        }
        if roots.iter().any(|(_, m)| *m > 1) {
            return Err(Error::InvalidParameters(
                "repeated zeros of A give essential singularities; unsupported numerically".into(),
            ));
        }
        // B/A = quotient + sum residue_k / (x - r_k), residue = B(r)/A'(r)
        let (quot, _) = b.div_rem(a);
        let ap = a.derivative();
        let factors = roots
            .into_iter()
            .map(|(r, _)| {
                let res = Rational::from(b.eval(&r) / ap.eval(&r));
                (r, res)
            })
            .collect();
        Ok(WeightEvaluator {
            factors,
            exp_part: quot.antiderivative(),
        })
    }

    /// Evaluate at x given externally computed stable distances to selected
    /// roots (near endpoints |x - r| cancels badly; the substitution knows the
    /// distance directly).
    pub fn eval(&self, x: &Float, stable_dists: &[(Rat, Float)]) -> Float {
        let prec = x.prec();
        let mut acc = eval_poly_real(&self.exp_part, x).exp();
        for (root, expo) in &self.factors {
            let dist = stable_dists
                .iter()
                .find(|(r, _)| r == root)
                .map(|(_, d)| d.clone())
                .unwrap_or_else(|| {
                    Float::with_val(prec, x - &crate::bigfloat::real_from_rat(prec, root)).abs()
                });
            let e = crate::bigfloat::real_from_rat(prec, expo);
            acc *= dist.pow(e);
        }
        acc
    }

    /// Exponents at the two endpoints of a component (0 when not a factor).
    fn exponent_at(&self, point: &Rat) -> Rat {
        self.factors
            .iter()
            .find(|(r, _)| r == point)
            .map(|(_, e)| e.clone())
            .unwrap_or_default()
    }
}

/// Integrate f over one support component; f receives (x, dist_left, dist_right)
/// with stable endpoint distances (infinite endpoints get the unused value 1).
pub fn integrate_component<F: FnMut(&Float, &Float, &Float) -> Float>(
    comp: &SupportComponent,
    mut f: F,
    prec: u32,
) -> Result<(Float, Float)> {
    let wp = prec + 32;
    let (left, right) = comp.endpoints()?;
    match (left, right) {
        (Some(a), Some(b)) => {
            // x = (a+b)/2 + (b-a)/2 tanh(u), u = (pi/2) sinh(t)
            let a_f = crate::bigfloat::real_from_rat(wp, &a);
            let half = Float::with_val(wp, &crate::bigfloat::real_from_rat(wp, &b) - &a_f) / 2u32;
            de_sum(wp, prec, |t| {
                let u = Float::with_val(wp, t.sinh_ref()) * half_pi(wp);
                // distances from the endpoints, computed without cancellation:
                // 1 + tanh u = 2 / (1 + e^{-2u}), 1 - tanh u = 2 / (1 + e^{2u})
                let two_u = Float::with_val(wp, &u * 2u32);
                let da = Float::with_val(wp, 2) / (Float::with_val(wp, (-two_u.clone()).exp()) + 1u32)
                    * &half;
                let db = Float::with_val(wp, 2) / (Float::with_val(wp, two_u.exp()) + 1u32) * &half;
                let x = Float::with_val(wp, &a_f + &da);
                // dx/dt = half * (pi/2) cosh t / cosh^2 u
                let sech = Float::with_val(wp, u.cosh_ref()).recip();
                let jac = Float::with_val(wp, t.cosh_ref())
                    * half_pi(wp)
                    * Float::with_val(wp, sech.square_ref())
                    * &half;
                f(&x, &da, &db) * jac
            })
        }
        (Some(a), None) => {
            // x = a + exp((pi/2) sinh t)
            let a_f = crate::bigfloat::real_from_rat(wp, &a);
            de_sum(wp, prec, |t| {
                let u = Float::with_val(wp, t.sinh_ref()) * half_pi(wp);
                let da = u.clone().exp();
                let x = Float::with_val(wp, &a_f + &da);
                let jac = Float::with_val(wp, t.cosh_ref()) * half_pi(wp) * &da;
                let one = Float::with_val(wp, 1);
                f(&x, &da, &one) * jac
            })
        }
        (None, Some(b)) => {
            let b_f = crate::bigfloat::real_from_rat(wp, &b);
            de_sum(wp, prec, |t| {
                let u = Float::with_val(wp, t.sinh_ref()) * half_pi(wp);
                let db = u.clone().exp();
                let x = Float::with_val(wp, &b_f - &db);
                let jac = Float::with_val(wp, t.cosh_ref()) * half_pi(wp) * &db;
                let one = Float::with_val(wp, 1);
                f(&x, &one, &db) * jac
            })
        }
        (None, None) => {
            // x = sinh((pi/2) sinh t)
            de_sum(wp, prec, |t| {
                let u = Float::with_val(wp, t.sinh_ref()) * half_pi(wp);
                let x = Float::with_val(wp, u.sinh_ref());
                let jac = Float::with_val(wp, t.cosh_ref())
                    * half_pi(wp)
                    * Float::with_val(wp, u.cosh_ref());
                let one = Float::with_val(wp, 1);
                f(&x, &one, &one) * jac
            })
        }
    }
}

fn half_pi(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Pi) / 2u32
}

/// Trapezoid sums over t with halving step until two consecutive levels agree
/// to the requested precision. Each direction sweeps outward and may stop
/// only beyond |t| >= 4 after several negligible terms: double-exponential
/// integrands of the catalog have all their mass well inside, while moment
/// integrands x^k w(x) can be tiny near t = 0 without having decayed.
pub fn de_sum<F: FnMut(&Float) -> Float>(wp: u32, prec: u32, mut f: F) -> Result<(Float, Float)> {
    let tiny = pow2(wp, -(wp as i32) - 8);
    let mut h = Float::with_val(wp, 1);
    let mut level = 0u32;
    let mut prev: Option<Float> = None;
    let max_levels = 13;
    let mut value = Float::with_val(wp, 0);
    let mut mass = Float::with_val(wp, 0); // L1 accumulation; convergence scale
    loop {
        // at level 0 sum all nodes; afterwards only odd multiples of h
        let mut sum = Float::with_val(wp, 0);
        let mut abs_sum = Float::with_val(wp, 0);
        let h_f = h.to_f64();
        for dir in [1i64, -1] {
            let mut k = if level == 0 && dir == 1 { 0i64 } else { 1 };
            let step = if level == 0 { 1 } else { 2 };
            let mut streak = 0;
            loop {
                let t = Float::with_val(wp, k * dir) * &h;
                let v = f(&t);
                let mag = if v.is_finite() {
                    sum += &v;
                    let a = v.abs();
                    abs_sum += &a;
                    a
                } else {
                    Float::with_val(wp, 0)
                };
                let t_abs = (k as f64) * h_f;
                let scale = Float::with_val(wp, abs_sum.clone() + 1u32);
                if mag < Float::with_val(wp, &tiny * &scale) {
                    if t_abs >= 4.0 {
                        streak += 1;
                        if streak >= 3 {
                            break;
                        }
                    }
                } else {
                    streak = 0;
                }
                k += step;
                if t_abs > 12.0 {
                    break;
                }
            }
        }
        value = if level == 0 {
            Float::with_val(wp, &sum * &h)
        } else {
            Float::with_val(wp, &value / 2u32) + Float::with_val(wp, &sum * &h)
        };
        mass = if level == 0 {
            Float::with_val(wp, &abs_sum * &h)
        } else {
            Float::with_val(wp, &mass / 2u32) + Float::with_val(wp, &abs_sum * &h)
        };
        if let Some(p) = &prev {
            let diff = Float::with_val(wp, &value - p).abs();
            // scale by the L1 mass: exactly-vanishing integrals (odd moments
            // of symmetric weights) are certified in the mass scale
            let scale = Float::with_val(wp, mass.clone().abs() + pow2(wp, -(wp as i32)));
            let target = Float::with_val(wp, &scale * pow2(wp, -(prec as i32) + 6));
            if diff <= target {
                let bound = Float::with_val(wp, &scale * pow2(wp, -(prec as i32) + 16));
                return Ok((value, bound));
            }
        }
        prev = Some(value.clone());
        h /= 2u32;
        level += 1;
        if level > max_levels {
            return Err(Error::QuadratureNotConverged(format!(
                "double-exponential sum did not converge in {max_levels} levels"
            )));
        }
    }
}

/// Numeric moments of a weight over its full support (sum of components).
/// Complex contours integrate leg by leg; real components use the evaluator.
pub fn numeric_moments(
    w: &SemiclassicalWeight,
    count: usize,
    precision: u32,
) -> Result<NumericMoments> {
    let wp = precision + 32;
    let mut values = vec![BigComplex::zero(wp); count];
    let mut errors = vec![Float::with_val(wp, 0); count];
    for comp in &w.support {
        match comp {
            SupportComponent::ContourTag { legs, .. } => {
                if w.a.degree() != Some(0) {
                    return Err(Error::InvalidParameters(
                        "contour moments only supported for A = 1".into(),
                    ));
                }
                let exp_part = w.b.antiderivative();
                for leg in legs {
                    for k in 0..count {
                        let (v, e) = contour_leg_moment(&exp_part, leg, k, wp, precision)?;
                        values[k] = values[k].add(&v);
                        errors[k] += e;
                    }
                }
            }
            real_comp => {
                let ev = WeightEvaluator::build(w)?;
                let (lo, hi) = real_comp.endpoints()?;
                let e_lo = lo.as_ref().map(|p| ev.exponent_at(p));
                let e_hi = hi.as_ref().map(|p| ev.exponent_at(p));
                for k in 0..count {
                    let (v, e) = integrate_component(
                        real_comp,
                        |x, da, db| {
                            let mut dists = vec![];
                            if let (Some(p), Some(_)) = (&lo, &e_lo) {
                                dists.push((p.clone(), da.clone()));
                            }
                            if let (Some(p), Some(_)) = (&hi, &e_hi) {
                                dists.push((p.clone(), db.clone()));
                            }
                            let xv = ev.eval(x, &dists);
                            let mut xk = Float::with_val(x.prec(), 1);
                            for _ in 0..k {
                                xk *= x;
                            }
                            xk * xv
                        },
                        precision,
                    )?;
                    values[k].re += v;
                    errors[k] += e;
                }
            }
        }
    }
    Ok(NumericMoments {
        values,
        errors,
        precision,
    })
}

/// Moment of one contour ray: orientation * e^{i theta (k+1)} *
/// int_0^inf t^k w(vertex + t e^{i theta}) dt for weights w = exp(poly).
fn contour_leg_moment(
    exp_part: &ExactPoly,
    leg: &crate::weights::ContourLeg,
    k: usize,
    wp: u32,
    prec: u32,
) -> Result<(BigComplex, Float)> {
    let angle = parse_rat(&leg.angle_turns)?;
    let vx = parse_rat(&leg.vertex_re)?;
    let vy = parse_rat(&leg.vertex_im)?;
    let two_pi = Float::with_val(wp, rug::float::Constant::Pi) * 2u32;
    let theta = Float::with_val(wp, &two_pi * &crate::bigfloat::real_from_rat(wp, &angle));
    let (sin_t, cos_t) = theta.clone().sin_cos(Float::new(wp));
    let dir = BigComplex::new(cos_t, sin_t);
    let vertex = BigComplex::new(
        crate::bigfloat::real_from_rat(wp, &vx),
        crate::bigfloat::real_from_rat(wp, &vy),
    );
    // integrate the real and imaginary parts of t^k exp(poly(z(t))) separately
    let mut re_err = Float::with_val(wp, 0);
    let mut parts = vec![];
    for want_im in [false, true] {
        let (v, e) = de_sum(wp, prec, |t| {
            // exp-sinh: t = exp((pi/2) sinh s) over s
            // reuse de_sum directly over the ray substitution
            let u = Float::with_val(wp, t.sinh_ref()) * half_pi(wp);
            let radius = u.clone().exp();
            let jac = Float::with_val(wp, t.cosh_ref()) * half_pi(wp) * &radius;
            let z = vertex.add(&dir.mul_real(&radius));
            let w = eval_exp_poly_complex(exp_part, &z);
            let mut tk = Float::with_val(wp, 1);
            for _ in 0..k {
                tk *= &radius;
            }
            let val = w.mul_real(&tk);
            let res = if want_im { val.im } else { val.re };
            res * jac
        })?;
        re_err += e;
        parts.push(v);
    }
    let raw = BigComplex::new(parts[0].clone(), parts[1].clone());
    // multiply by exp(i theta (k+1)) and orientation
    let phase_angle = Float::with_val(wp, &theta * Float::with_val(wp, k as u32 + 1));
    let (ps, pc) = phase_angle.sin_cos(Float::new(wp));
    let phase = BigComplex::new(pc, ps);
    let mut out = raw.mul(&phase);
    if leg.orientation < 0 {
        out = out.neg();
    }
    Ok((out, re_err))
}

fn eval_exp_poly_complex(exp_part: &ExactPoly, z: &BigComplex) -> BigComplex {
    let v = crate::bigfloat::eval_poly_complex(exp_part, z);
    // e^{a+bi} = e^a (cos b + i sin b)
    let ea = v.re.clone().exp();
    let (s, c) = v.im.clone().sin_cos(Float::new(z.prec()));
    BigComplex::new(c, s).mul_real(&ea)
}

/// Numerically evaluate the weighted Cauchy transform of p at a real point
/// off the support.
pub fn cauchy_eval(
    p: &ExactPoly,
    w: &SemiclassicalWeight,
    x0: &Rat,
    precision: u32,
) -> Result<Float> {
    let wp = precision + 32;
    let ev = WeightEvaluator::build(w)?;
    let x0f = crate::bigfloat::real_from_rat(wp, x0);
    let mut total = Float::with_val(wp, 0);
    for comp in &w.support {
        let (lo, hi) = comp.endpoints()?;
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if x0 >= l && x0 <= h {
                return Err(Error::InvalidParameters(
                    "evaluation point lies on the support".into(),
                ));
            }
        }
        let (v, _) = integrate_component(
            comp,
            |x, da, db| {
                let mut dists = vec![];
                if let Some(pt) = &lo {
                    dists.push((pt.clone(), da.clone()));
                }
                if let Some(pt) = &hi {
                    dists.push((pt.clone(), db.clone()));
                }
                let wx = ev.eval(x, &dists);
                let px = eval_poly_real(p, x);
                let denom = Float::with_val(x.prec(), x - &x0f);
                px * wx / denom
            },
            precision,
        )?;
        total += v;
    }
    Ok(total)
}
