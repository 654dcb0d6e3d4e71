//! Dense univariate polynomials with exact rational coefficients.

use crate::rat::RatExt;
use crate::error::{Error, Result};
use crate::rat::{parse_rat, rat_string, Rat};
use rug::Rational;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients ascending by degree; the last entry is nonzero unless the
/// polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactPoly {
    coeffs: Vec<Rat>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        ExactPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        ExactPoly::constant(Rat::from(1))
    }

    pub fn constant(c: Rat) -> Self {
        ExactPoly::from_coeffs(vec![c])
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rat::new(); k + 1];
        coeffs[k] = Rat::from(1);
        ExactPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        ExactPoly::from_coeffs(cs.iter().map(|&c| Rat::from(c)).collect())
    }

    pub fn from_strs(cs: &[&str]) -> Result<Self> {
        Ok(ExactPoly::from_coeffs(
            cs.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| *c == 1)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return ExactPoly::zero();
        }
        ExactPoly {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => ExactPoly::zero(),
            Some(l) => self.scale(&Rational::from(l.recip_ref())),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ExactPoly::zero();
        }
        ExactPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| Rational::from(c * Rational::from(i as u64 + 1)))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![Rat::new()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(Rational::from(c / Rational::from(i as u64 + 1)));
        }
        ExactPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::new();
        for c in self.coeffs.iter().rev() {
            acc = Rational::from(&acc * x) + c;
        }
        acc
    }

    /// p(x - 0) shifted: returns p(x + a) via Horner on (x + a).
    pub fn compose_linear_shift(&self, a: &Rat) -> Self {
        let shift = ExactPoly::from_coeffs(vec![a.clone(), Rat::from(1)]);
        let mut acc = ExactPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &ExactPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division: (quotient, remainder) with deg r < deg den.
    pub fn div_rem(&self, den: &ExactPoly) -> (ExactPoly, ExactPoly) {
        assert!(!den.is_zero(), "division by the zero polynomial");
        let dd = den.coeffs.len();
        if self.coeffs.len() < dd {
            return (ExactPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::new(); self.coeffs.len() - dd + 1];
        let lead = den.coeffs.last().unwrap();
        while rem.len() >= dd {
            let c = Rational::from(rem.last().unwrap() / lead);
            let pos = rem.len() - dd;
            quot[pos] = c.clone();
            for (i, b) in den.coeffs.iter().enumerate().take(dd - 1) {
                let t = Rational::from(b * &c);
                rem[pos + i] -= t;
            }
            rem.pop(); // leading term cancels exactly by choice of c
            while rem.last().map_or(false, |x| x.is_zero()) {
                rem.pop();
            }
        }
        (ExactPoly::from_coeffs(quot), ExactPoly::from_coeffs(rem))
    }

    /// Exact division; `InexactDivision` when the remainder is nonzero.
    pub fn div_exact(&self, den: &ExactPoly) -> Result<ExactPoly> {
        if den.is_zero() {
            return Err(Error::InexactDivision("division by zero polynomial".into()));
        }
        let (q, r) = self.div_rem(den);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!(
                "remainder of degree {:?} dividing by {}",
                r.degree(),
                den
            )))
        }
    }

    /// Monic gcd (euclidean); gcd(0, 0) = 0.
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `root` as a zero of self (0 when not a root).
    pub fn root_multiplicity(&self, root: &Rat) -> usize {
        let lin = ExactPoly::from_coeffs(vec![Rational::from(-root.clone()), Rat::from(1)]);
        let mut m = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            m += 1;
            cur = q;
        }
        m
    }

    /// Rational roots with multiplicities, found by the rational root test on
    /// the integer-cleared polynomial. Complete only if the polynomial splits
    /// over Q times an irreducible factor with no rational roots.
    pub fn rational_roots(&self) -> Vec<(Rat, usize)> {
        if self.is_zero() || self.degree() == Some(0) {
            return vec![];
        }
        // clear denominators and content
        let mut den_lcm = rug::Integer::from(1);
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<rug::Integer> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = Rational::from(c * Rational::from(den_lcm.clone()));
                debug_assert_eq!(*r.denom(), 1);
                r.numer().clone()
            })
            .collect();
        let a0 = ints.iter().find(|x| **x != 0).unwrap().clone();
        let an = ints.last().unwrap().clone();
        let mut out = vec![];
        // trailing zero coefficients mean roots at 0
        let zero_mult = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            out.push((Rat::new(), zero_mult));
        }
        let div_a0 = small_divisors(&a0);
        let div_an = small_divisors(&an);
        let mut reduced = self.clone();
        for p in &div_a0 {
            for q in &div_an {
                for sign in [1i64, -1] {
                    let cand = Rational::from((p.clone() * sign, q.clone()));
                    if out.iter().any(|(r, _)| *r == cand) || cand.is_zero() {
                        continue;
                    }
                    let m = reduced.root_multiplicity(&cand);
                    if m > 0 {
                        out.push((cand.clone(), m));
                        let lin = ExactPoly::from_coeffs(vec![
                            Rational::from(-cand),
                            Rat::from(1),
                        ]);
                        for _ in 0..m {
                            reduced = reduced.div_exact(&lin).unwrap();
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Square-free decomposition (Yun): returns [(factor, multiplicity)] with
    /// each factor square-free, pairwise coprime, product of factor^mult = monic(self).
    pub fn square_free_decomposition(&self) -> Vec<(ExactPoly, usize)> {
        let p = self.monic();
        let Some(deg) = p.degree() else { return vec![] };
        if deg == 0 {
            return vec![];
        }
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.degree() == Some(0) {
            return vec![(p, 1)];
        }
        let mut b = p.div_exact(&g).unwrap();
        let mut d = &dp.div_exact(&g).unwrap() - &b.derivative();
        let mut out = vec![];
        let mut i = 1usize;
        while b.degree().map_or(false, |x| x > 0) {
            let f = b.gcd(&d);
            if f.degree().map_or(false, |x| x > 0) {
                out.push((f.clone(), i));
            }
            b = b.div_exact(&f).unwrap();
            let c = d.div_exact(&f).unwrap();
            d = &c - &b.derivative();
            i += 1;
            debug_assert!(i <= deg + 1);
        }
        out
    }
}

fn small_divisors(n: &rug::Integer) -> Vec<rug::Integer> {
    // All positive divisors when n is small; for big n only divisors up to a
    // bound plus |n| itself (enough for the catalog's A polynomials).
    let n = rug::Integer::from(n.abs_ref());
    let mut out = vec![];
    let cap = 10_000u64;
    let mut d = rug::Integer::from(1);
    let limit = rug::Integer::from(cap);
    while d.clone().square() <= n && d <= limit {
        if n.is_divisible(&d) {
            out.push(d.clone());
            out.push(rug::Integer::from(&n / &d));
        }
        d += 1;
    }
    if !out.contains(&n) && n > 0 {
        out.push(n.clone());
    }
    out.sort();
    out.dedup();
    out
}

/// p q' - p' q
pub fn wronskian(p: &ExactPoly, q: &ExactPoly) -> ExactPoly {
    &(p * &q.derivative()) - &(&p.derivative() * q)
}

/// Exact quotient wrapper used throughout the identity layer.
pub fn poly_div_exact(num: &ExactPoly, den: &ExactPoly) -> Result<ExactPoly> {
    num.div_exact(den)
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(b) = rhs.coeffs.get(i) {
                c += b;
            }
            out.push(c);
        }
        ExactPoly::from_coeffs(out)
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(b) = rhs.coeffs.get(i) {
                c -= b;
            }
            out.push(c);
        }
        ExactPoly::from_coeffs(out)
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![Rat::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        ExactPoly::from_coeffs(out)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c.clone())).collect(),
        }
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if *c < 0 { "-" } else { "+" };
            let mag = Rational::from(c.abs_ref());
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&rat_string(c))?;
        }
        seq.end()
    }
}

struct PolyVisitor;

impl<'de> Visitor<'de> for PolyVisitor {
    type Value = ExactPoly;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an array of rational strings, ascending degree")
    }
    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
        let mut coeffs = vec![];
        while let Some(s) = seq.next_element::<String>()? {
            coeffs.push(parse_rat(&s).map_err(serde::de::Error::custom)?);
        }
        Ok(ExactPoly::from_coeffs(coeffs))
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_seq(PolyVisitor)
    }
}
