//! Multiprecision root finding (simultaneous Aberth iteration over exact
//! input) plus the combinatorial zero-location predicates: interlacing,
//! sign-change counting, cluster detection.

use crate::bigfloat::{pow2, BigComplex, Float};
use crate::rat::RatExt;
use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::rat::Rat;
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub points: Vec<BigComplex>,
    /// Per-point inclusion radius (0 for exactly known rational roots).
    pub radii: Vec<Float>,
    pub precision: u32,
    pub source_degree: usize,
    /// Groups of indices sharing a location (exact multiplicities) or whose
    /// certification disks overlap (flagged clusters).
    pub clusters: Vec<Vec<usize>>,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points certified real: imaginary part below both the inclusion radius
    /// scale and the output-precision scale.
    pub fn real_points(&self) -> Vec<(Float, Float)> {
        let mut out = vec![];
        for (z, r) in self.points.iter().zip(&self.radii) {
            if is_real_point(z, r, self.precision) {
                out.push((z.re.clone(), r.clone()));
            }
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        out
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("re,im,radius\n");
        for (z, r) in self.points.iter().zip(&self.radii) {
            s.push_str(&format!(
                "{},{},{}\n",
                fmt_float(&z.re),
                fmt_float(&z.im),
                fmt_float(r)
            ));
        }
        s
    }
}

fn is_real_point(z: &BigComplex, radius: &Float, precision: u32) -> bool {
    let prec = z.prec();
    let scale = Float::with_val(prec, z.re.clone().abs() + 1u32);
    let thresh = Float::with_val(
        prec,
        Float::with_val(prec, radius * Float::with_val(prec, 4))
            .max(&(scale * pow2(prec, -(precision as i32) / 2))),
    );
    z.im.clone().abs() <= thresh
}

fn fmt_float(f: &Float) -> String {
    let digits = (f.prec() as f64 * 0.3010) as usize + 2;
    f.to_string_radix(10, Some(digits))
}

#[derive(Debug, Clone, Serialize)]
pub struct InterlaceReport {
    pub interval: (String, String),
    pub count_inside_a: usize,
    pub count_inside_b: usize,
    pub interlaced_pairs: usize,
    /// Gap indices of `a` holding a number of `b`-points different from one.
    pub violations: Vec<usize>,
}

const PRECISION_CAP: u32 = 1 << 14;
const MAX_SWEEPS: usize = 2000;

/// All roots of an exact polynomial with residual-based certification.
/// Exact multiple roots are split off square-free first, rational roots are
/// deflated exactly (radius 0), and the rest go through Aberth iteration.
/// Certification failure doubles the working precision up to a cap; stable
/// near-multiple groups are then flagged as clusters instead of separated.
pub fn find_zeros(p: &ExactPoly, precision: u32) -> Result<ZeroSet> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::InvalidParameters("zero polynomial has no roots".into()))?;
    if deg == 0 {
        return Err(Error::InvalidParameters("constant polynomial has no roots".into()));
    }
    let square_free = p.square_free_decomposition();

    // (exact point, multiplicity) for rational roots; square-free remainders
    let mut exact_roots: Vec<(Rat, usize)> = vec![];
    let mut numeric_parts: Vec<(ExactPoly, usize)> = vec![];
    for (factor, mult) in square_free {
        let mut rest = factor.clone();
        for (root, m) in factor.rational_roots() {
            debug_assert_eq!(m, 1, "square-free factor with repeated rational root");
            let lin = ExactPoly::from_coeffs(vec![rug::Rational::from(-root.clone()), Rat::from(1)]);
            rest = rest.div_exact(&lin).unwrap();
            exact_roots.push((root, mult));
        }
        if rest.degree().map_or(false, |d| d > 0) {
            numeric_parts.push((rest, mult));
        }
    }

    let mut wp = precision + 32;
    loop {
        let (set, uncertified) = attempt(&exact_roots, &numeric_parts, precision, wp, deg)?;
        if uncertified.is_empty() {
            return Ok(set);
        }
        if wp < PRECISION_CAP {
            wp = (wp * 2).min(PRECISION_CAP);
            continue;
        }
        // at the cap: acceptable only if every uncertified point sits inside a
        // flagged overlap cluster (a stable near-multiple group)
        let covered = uncertified
            .iter()
            .all(|i| set.clusters.iter().any(|g| g.contains(i)));
        if covered {
            return Ok(set);
        }
        return Err(Error::PrecisionCapExceeded {
            cap: PRECISION_CAP,
            context: "certifying simple roots".into(),
        });
    }
}

fn attempt(
    exact_roots: &[(Rat, usize)],
    numeric_parts: &[(ExactPoly, usize)],
    precision: u32,
    wp: u32,
    source_degree: usize,
) -> Result<(ZeroSet, Vec<usize>)> {
    // approximate all numeric roots: (point, raw radius, multiplicity)
    let mut located: Vec<(BigComplex, Float, usize)> = vec![];
    for (r, mult) in exact_roots {
        located.push((BigComplex::from_rat(wp, r), Float::with_val(wp, 0), *mult));
    }
    for (factor, mult) in numeric_parts {
        let fdeg = factor.degree().unwrap();
        let roots = aberth(factor, wp)?;
        for z in roots {
            let (v, d) = crate::bigfloat::eval_poly_and_deriv(factor, &z);
            let radius = if d.abs().is_zero() {
                Float::with_val(wp, 1) // forces a retry via certification failure
            } else {
                Float::with_val(wp, v.abs() / d.abs()) * Float::with_val(wp, fdeg as u32)
            };
            located.push((z, radius, *mult));
        }
    }
    located.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap()
            .then(a.0.im.partial_cmp(&b.0.im).unwrap())
    });
    // certification: residual over nearest-neighbour distance below 2^{-precision/2}
    let threshold = pow2(wp, -((precision / 2) as i32));
    let n = located.len();
    let mut bad_located: Vec<usize> = vec![];
    for i in 0..n {
        let mut nearest: Option<Float> = None;
        for (j, other) in located.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = located[i].0.sub(&other.0).abs();
            if nearest.as_ref().map_or(true, |m| d < *m) {
                nearest = Some(d);
            }
        }
        let ok = match &nearest {
            Some(d) if !d.is_zero() => Float::with_val(wp, &located[i].1 / d) <= threshold,
            Some(_) => located[i].1.is_zero(), // coincident with another point
            None => true,                      // single root
        };
        if !ok {
            bad_located.push(i);
        }
    }
    // assemble with multiplicities; exact multiple roots grouped as clusters
    let mut points = vec![];
    let mut radii = vec![];
    let mut clusters: Vec<Vec<usize>> = vec![];
    let mut uncertified: Vec<usize> = vec![];
    for (li, (z, r, mult)) in located.iter().enumerate() {
        let start = points.len();
        for _ in 0..*mult {
            if bad_located.contains(&li) {
                uncertified.push(points.len());
            }
            points.push(z.clone());
            radii.push(r.clone());
        }
        if *mult > 1 {
            clusters.push((start..start + *mult).collect());
        }
    }
    // overlapping disks among distinct points are flagged clusters
    if !uncertified.is_empty() {
        let n = points.len();
        let mut grouped = vec![false; n];
        for i in 0..n {
            if grouped[i] {
                continue;
            }
            let mut group = vec![i];
            for j in i + 1..n {
                let d = points[i].sub(&points[j]).abs();
                let rr = Float::with_val(wp, &radii[i] + &radii[j]);
                if !d.is_zero() && d <= rr {
                    group.push(j);
                }
            }
            if group.len() > 1 {
                for &g in &group {
                    grouped[g] = true;
                }
                clusters.push(group);
            }
        }
    }
    Ok((
        ZeroSet {
            points,
            radii,
            precision,
            source_degree,
            clusters,
        },
        uncertified,
    ))
}

/// Aberth simultaneous iteration on a square-free polynomial. Deterministic:
/// fixed initial layout, fixed sweep order.
fn aberth(p: &ExactPoly, wp: u32) -> Result<Vec<BigComplex>> {
    let n = p.degree().unwrap();
    let coeffs: Vec<BigComplex> = p
        .coeffs()
        .iter()
        .map(|c| BigComplex::from_rat(wp, c))
        .collect();
    let eval = |z: &BigComplex| -> (BigComplex, BigComplex) {
        let mut v = BigComplex::zero(wp);
        let mut d = BigComplex::zero(wp);
        for c in coeffs.iter().rev() {
            d = d.mul(z).add(&v);
            v = v.mul(z).add(c);
        }
        (v, d)
    };

    let mut z = initial_guesses(p, n, wp);
    let eps = pow2(wp, -(wp as i32) + 8);
    for _ in 0..MAX_SWEEPS {
        let mut worst = Float::with_val(wp, 0);
        for k in 0..n {
            let (v, d) = eval(&z[k]);
            if v.abs().is_zero() {
                continue;
            }
            let newton = if d.abs().is_zero() {
                // nudge off a critical point
                BigComplex::from_f64(wp, 1e-3, 1e-3)
            } else {
                v.div(&d)
            };
            let mut sum = BigComplex::zero(wp);
            for j in 0..n {
                if j != k {
                    let diff = z[k].sub(&z[j]);
                    if diff.abs().is_zero() {
                        continue;
                    }
                    sum = sum.add(&diff.recip());
                }
            }
            let denom = BigComplex::from_f64(wp, 1.0, 0.0).sub(&newton.mul(&sum));
            let w = if denom.abs().is_zero() { newton } else { newton.div(&denom) };
            let scale = Float::with_val(wp, z[k].abs() + 1u32);
            let rel = Float::with_val(wp, w.abs() / scale);
            if rel > worst {
                worst = rel;
            }
            z[k] = z[k].sub(&w);
        }
        if worst <= eps {
            return Ok(z);
        }
    }
    // non-convergence surfaces as certification failure upstream
    Ok(z)
}

/// Initial points from the Newton-polygon modulus estimates (upper convex
/// hull of (i, log2 |a_i|)), spread on circles with an angular offset.
fn initial_guesses(p: &ExactPoly, n: usize, wp: u32) -> Vec<BigComplex> {
    let logs: Vec<Option<f64>> = p.coeffs().iter().map(log2_rat).collect();
    // upper convex hull over points with finite log
    let pts: Vec<(f64, f64)> = logs
        .iter()
        .enumerate()
        .filter_map(|(i, l)| l.map(|v| (i as f64, v)))
        .collect();
    let mut hull: Vec<(f64, f64)> = vec![];
    for &pt in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b.1 - a.1) * (pt.0 - a.0) <= (pt.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut z = Vec::with_capacity(n);
    let golden = 0.618_033_988_749_894_9_f64;
    let mut placed = 0usize;
    for seg in hull.windows(2) {
        let (i0, l0) = seg[0];
        let (i1, l1) = seg[1];
        let count = (i1 - i0).round() as usize;
        // |roots| on this segment ~ 2^{-(l1-l0)/(i1-i0)}
        let log_r = -(l1 - l0) / (i1 - i0);
        let e = log_r.floor();
        let frac = (log_r - e).exp2();
        let r = Float::with_val(wp, Float::i_exp(1, e as i32)) * Float::with_val(53, frac);
        for t in 0..count {
            let angle = 2.0 * std::f64::consts::PI
                * ((placed + t) as f64 / n as f64 + golden * (placed as f64 + 1.0));
            let re = Float::with_val(wp, &r * Float::with_val(53, angle.cos()));
            let im = Float::with_val(wp, &r * Float::with_val(53, angle.sin()));
            z.push(BigComplex::new(re, im));
        }
        placed += count;
    }
    while z.len() < n {
        let angle = 2.0 * std::f64::consts::PI * (z.len() as f64 / n as f64 + 0.37);
        z.push(BigComplex::from_f64(wp, angle.cos(), angle.sin()));
    }
    z.truncate(n);
    z
}

/// log2 |r| as f64 (None for zero), safe for huge numerators/denominators.
fn log2_rat(r: &Rat) -> Option<f64> {
    if r.is_zero() {
        return None;
    }
    let f = Float::with_val(64, r);
    let exp = f.get_exp().unwrap_or(0) as f64;
    // mantissa in [0.5, 1): log2 f = exp + log2(mantissa)
    let mant = {
        let mut m = f.clone().abs();
        m >>= f.get_exp().unwrap_or(0);
        m.to_f64()
    };
    Some(exp + mant.log2())
}

/// Count real zeros of each set inside the interval and the consecutive
/// a-gaps holding exactly one b-point. Comparisons that fall within a point's
/// certified radius of an endpoint or a gap boundary are ambiguous.
pub fn interlacing_report(
    za: &ZeroSet,
    zb: &ZeroSet,
    interval: (&Rat, &Rat),
) -> Result<InterlaceReport> {
    let (lo, hi) = interval;
    if lo >= hi {
        return Err(Error::InvalidParameters("empty interval".into()));
    }
    let a_pts = locate_in_interval(za, lo, hi)?;
    let b_pts = locate_in_interval(zb, lo, hi)?;
    let mut interlaced = 0usize;
    let mut violations = vec![];
    for (gap_idx, w) in a_pts.windows(2).enumerate() {
        let (l, r) = (&w[0], &w[1]);
        let mut inside = 0usize;
        for (x, rad) in &b_pts {
            let dl = Float::with_val(x.prec(), x - &l.0);
            let dr = Float::with_val(x.prec(), &r.0 - x);
            let margin = Float::with_val(x.prec(), rad + &l.1) + &r.1;
            let exact = margin.is_zero();
            if !exact && (dl.clone().abs() <= margin || dr.clone().abs() <= margin) {
                return Err(Error::AmbiguousAtPrecision(format!(
                    "b-point within certified radius of an a-gap boundary (gap {gap_idx})"
                )));
            }
            if dl > 0 && dr > 0 {
                inside += 1;
            }
        }
        if inside == 1 {
            interlaced += 1;
        } else {
            violations.push(gap_idx);
        }
    }
    Ok(InterlaceReport {
        interval: (lo.to_string(), hi.to_string()),
        count_inside_a: a_pts.len(),
        count_inside_b: b_pts.len(),
        interlaced_pairs: interlaced,
        violations,
    })
}

/// Real points strictly inside [lo, hi); ambiguity within certified radii of
/// either endpoint is an error, except for exactly-known points (radius 0).
fn locate_in_interval(zs: &ZeroSet, lo: &Rat, hi: &Rat) -> Result<Vec<(Float, Float)>> {
    let mut out = vec![];
    for (x, rad) in zs.real_points() {
        let p = x.prec();
        let dlo = Float::with_val(p, &x - &crate::bigfloat::real_from_rat(p, lo));
        let dhi = Float::with_val(p, &crate::bigfloat::real_from_rat(p, hi) - &x);
        for d in [&dlo, &dhi] {
            let exact_on_endpoint = d.is_zero() && rad.is_zero();
            if !exact_on_endpoint && d.clone().abs() <= rad {
                return Err(Error::AmbiguousAtPrecision(
                    "zero within certified radius of an interval endpoint".into(),
                ));
            }
        }
        // half-open [lo, hi): include lo exactly, exclude hi exactly
        let inside = (dlo.is_zero() || dlo > 0) && dhi > 0;
        if inside {
            out.push((x, rad));
        }
    }
    Ok(out)
}

/// Lower bound on the number of sign changes of `f` on (lo, hi): uniform grid
/// refined by bounded bisection, signs compressed in evaluation order (exact
/// zeros at nodes never overcount).
pub fn sign_changes<F: FnMut(&Float) -> Float>(
    mut f: F,
    interval: (&Float, &Float),
    grid: usize,
    refine_depth: usize,
) -> usize {
    let (lo, hi) = interval;
    let prec = lo.prec().max(hi.prec());
    let n = grid.max(2);
    let mut signs: Vec<i8> = vec![];
    for i in 0..n {
        let t0 = Float::with_val(prec, i as u32) / Float::with_val(prec, n as u32);
        let t1 = Float::with_val(prec, i as u32 + 1) / Float::with_val(prec, n as u32);
        let x0 = Float::with_val(prec, hi - lo) * &t0 + lo;
        let x1 = Float::with_val(prec, hi - lo) * &t1 + lo;
        if i == 0 {
            let v = f(&x0);
            signs.push(sign_of(&v));
        }
        collect_signs(&mut f, &x0, &x1, refine_depth, &mut signs);
    }
    let compressed: Vec<i8> = signs.into_iter().filter(|s| *s != 0).collect();
    compressed.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_of(v: &Float) -> i8 {
    if v.is_zero() {
        0
    } else if *v > 0 {
        1
    } else {
        -1
    }
}

/// In-order signs over (xl, xr], subdividing to the given depth.
fn collect_signs<F: FnMut(&Float) -> Float>(
    f: &mut F,
    xl: &Float,
    xr: &Float,
    depth: usize,
    signs: &mut Vec<i8>,
) {
    if depth > 0 {
        let prec = xl.prec();
        let xm = Float::with_val(prec, xl + xr) / 2u32;
        collect_signs(f, xl, &xm, depth - 1, signs);
        collect_signs(f, &xm, xr, depth - 1, signs);
    } else {
        let v = f(xr);
        signs.push(sign_of(&v));
    }
}

/// 1D cluster count of the real zeros inside the window under a relative-gap
/// threshold (a gap splits clusters when it exceeds `rel_gap` times the span),
/// plus the largest internal gap.
pub fn cluster_gap(zs: &ZeroSet, window: (&Rat, &Rat), rel_gap: f64) -> (usize, Float) {
    let prec = 64.max(zs.precision);
    let lo = crate::bigfloat::real_from_rat(prec, window.0);
    let hi = crate::bigfloat::real_from_rat(prec, window.1);
    let xs: Vec<Float> = zs
        .real_points()
        .into_iter()
        .map(|(x, _)| x)
        .filter(|x| *x >= lo && *x <= hi)
        .collect();
    if xs.is_empty() {
        return (0, Float::with_val(prec, 0));
    }
    let span = Float::with_val(prec, xs.last().unwrap() - &xs[0]);
    let mut clusters = 1usize;
    let mut max_gap = Float::with_val(prec, 0);
    let threshold = Float::with_val(prec, &span * Float::with_val(prec, rel_gap));
    for w in xs.windows(2) {
        let g = Float::with_val(prec, &w[1] - &w[0]);
        if g > max_gap {
            max_gap = g.clone();
        }
        if !span.is_zero() && g > threshold {
            clusters += 1;
        }
    }
    (clusters, max_gap)
}

/// Default relative-gap threshold: separates the one-cut and two-cut regimes
/// of the symmetric degree-70 probe while ignoring edge spacing.
pub const DEFAULT_REL_GAP: f64 = 0.05;
