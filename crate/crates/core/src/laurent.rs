//! Truncated expansions at infinity: poly_part(z) + sum coeffs[k] z^{-k-1}.
//!
//! Every operation tracks how many tail coefficients remain trustworthy and
//! refuses to report more than the inputs justify. Partner extraction depends
//! on this bookkeeping being conservative.

use crate::rat::RatExt;
use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::rat::{rat_string, Rat};
use rug::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentTail {
    /// coeffs[k] multiplies z^{-k-1}; all entries are trusted.
    coeffs: Vec<Rat>,
    poly_part: ExactPoly,
}

impl LaurentTail {
    pub fn pure_tail(coeffs: Vec<Rat>) -> Self {
        LaurentTail {
            coeffs,
            poly_part: ExactPoly::zero(),
        }
    }

    pub fn with_poly(coeffs: Vec<Rat>, poly_part: ExactPoly) -> Self {
        LaurentTail { coeffs, poly_part }
    }

    /// Expansion of the weighted Cauchy transform of `p` at infinity:
    /// coefficient of z^{-k-1} is -sum_m p_m u_{m+k}.
    pub fn cauchy_of(p: &ExactPoly, moments: &[Rat]) -> Result<Self> {
        let deg = p
            .degree()
            .ok_or_else(|| Error::InvalidParameters("Cauchy transform of the zero polynomial".into()))?;
        if moments.len() <= deg {
            return Err(Error::InsufficientMoments {
                needed: deg + 1,
                have: moments.len(),
            });
        }
        let order = moments.len() - deg;
        let mut coeffs = Vec::with_capacity(order);
        for k in 0..order {
            let mut c = Rat::new();
            for (m, pm) in p.coeffs().iter().enumerate() {
                if !pm.is_zero() {
                    c += Rational::from(pm * &moments[m + k]);
                }
            }
            coeffs.push(-c);
        }
        Ok(LaurentTail::pure_tail(coeffs))
    }

    /// Number of trusted tail coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn poly_part(&self) -> &ExactPoly {
        &self.poly_part
    }

    pub fn into_poly_part(self) -> ExactPoly {
        self.poly_part
    }

    /// Index of the first nonzero trusted tail coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Error unless every trusted tail coefficient vanishes.
    pub fn require_tail_zero(&self) -> Result<usize> {
        if let Some(k) = self.first_nonzero() {
            return Err(Error::TailNotVanishing {
                index: k,
                value: rat_string(&self.coeffs[k]),
            });
        }
        Ok(self.order())
    }

    pub fn add(&self, other: &LaurentTail) -> LaurentTail {
        let order = self.order().min(other.order());
        let mut coeffs = Vec::with_capacity(order);
        for k in 0..order {
            coeffs.push(Rational::from(&self.coeffs[k] + &other.coeffs[k]));
        }
        LaurentTail {
            coeffs,
            poly_part: &self.poly_part + &other.poly_part,
        }
    }

    pub fn sub(&self, other: &LaurentTail) -> LaurentTail {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentTail {
        LaurentTail {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c.clone())).collect(),
            poly_part: -&self.poly_part,
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentTail {
        LaurentTail {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
            poly_part: self.poly_part.scale(c),
        }
    }

    /// d/dz: z^{-k-1} -> -(k+1) z^{-k-2}; gains one trusted coefficient.
    pub fn differentiate(&self) -> LaurentTail {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(Rat::new());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(Rational::from(c * Rational::from(-((k as i64) + 1))));
        }
        LaurentTail {
            coeffs,
            poly_part: self.poly_part.derivative(),
        }
    }

    /// Multiply by a polynomial. The trusted order drops by deg(p).
    pub fn mul_poly(&self, p: &ExactPoly) -> Result<LaurentTail> {
        if p.is_zero() {
            // exactly zero; tail knowledge is unlimited but keep the current order
            return Ok(LaurentTail {
                coeffs: vec![Rat::new(); self.order()],
                poly_part: ExactPoly::zero(),
            });
        }
        let d = p.degree().unwrap();
        if d > self.order() {
            return Err(Error::PrecisionExhausted(format!(
                "multiplying a tail of order {} by a polynomial of degree {}",
                self.order(),
                d
            )));
        }
        let mut poly = &self.poly_part * p;
        // tail coefficients crossing into nonnegative powers: p_j c_k z^{j-k-1}, j > k
        let mut extra = vec![Rat::new(); d.max(1)];
        for (j, pj) in p.coeffs().iter().enumerate() {
            if pj.is_zero() {
                continue;
            }
            for k in 0..j.min(self.coeffs.len()) {
                extra[j - k - 1] += Rational::from(pj * &self.coeffs[k]);
            }
        }
        poly = &poly + &ExactPoly::from_coeffs(extra);
        // negative powers: coefficient at z^{-k-1} is sum_j p_j c_{k+j}
        let new_order = self.order() - d;
        let mut coeffs = Vec::with_capacity(new_order);
        for k in 0..new_order {
            let mut c = Rat::new();
            for (j, pj) in p.coeffs().iter().enumerate() {
                if !pj.is_zero() {
                    c += Rational::from(pj * &self.coeffs[k + j]);
                }
            }
            coeffs.push(c);
        }
        Ok(LaurentTail { coeffs, poly_part: poly })
    }

    /// Full product of two truncated expansions (Cauchy convolution of the
    /// tails; the pure-tail part of the product starts at z^{-2}).
    pub fn series_mul(&self, other: &LaurentTail) -> Result<LaurentTail> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Err(Error::PrecisionExhausted(
                "series_mul requires at least one stored coefficient on each side".into(),
            ));
        }
        // ta*tb: z^{-k-1} coefficient for k>=1 is sum_{i+j=k-1} a_i b_j
        let conv_order = self.order().min(other.order()) + 1;
        let mut conv = Vec::with_capacity(conv_order);
        conv.push(Rat::new());
        for k in 1..conv_order {
            let mut c = Rat::new();
            for i in 0..k {
                let j = k - 1 - i;
                if i < self.coeffs.len() && j < other.coeffs.len() {
                    c += Rational::from(&self.coeffs[i] * &other.coeffs[j]);
                }
            }
            conv.push(c);
        }
        // (pa + ta)(pb + tb) = ta*tb + pa*(pb + tb) + pb*ta; zero polynomial
        // parts contribute nothing and must not truncate the trusted order
        let mut acc = LaurentTail::pure_tail(conv);
        if !self.poly_part.is_zero() {
            acc = acc.add(&other.mul_poly(&self.poly_part)?);
        }
        if !other.poly_part.is_zero() {
            let ta = LaurentTail::pure_tail(self.coeffs.clone());
            acc = acc.add(&ta.mul_poly(&other.poly_part)?);
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct TailRepr {
    order: usize,
    coeffs: Vec<String>,
    poly_part: ExactPoly,
}

impl Serialize for LaurentTail {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TailRepr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(rat_string).collect(),
            poly_part: self.poly_part.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentTail {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TailRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| crate::rat::parse_rat(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        if coeffs.len() != repr.order {
            return Err(serde::de::Error::custom("order does not match coeffs length"));
        }
        Ok(LaurentTail::with_poly(coeffs, repr.poly_part))
    }
}
