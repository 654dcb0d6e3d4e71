//! Arbitrary-precision binary floats (MPFR) and a complex wrapper.
//!
//! Precision is explicit everywhere: binary operations allocate the result at
//! the larger operand precision, never silently downcasting.

use crate::poly::ExactPoly;
use crate::rat::Rat;
use rug::float::Special;
pub use rug::Float;

pub fn real(prec: u32, x: i64) -> Float {
    Float::with_val(prec, x)
}

pub fn real_from_rat(prec: u32, r: &Rat) -> Float {
    Float::with_val(prec, r)
}

pub fn real_from_f64(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x)
}

pub fn infinity(prec: u32) -> Float {
    Float::with_val(prec, Special::Infinity)
}

/// 2^exp at the given precision.
pub fn pow2(prec: u32, exp: i32) -> Float {
    Float::with_val(prec, Float::i_exp(1, exp))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        let p = re.prec().max(im.prec());
        BigComplex {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_rat(prec: u32, re: &Rat) -> Self {
        BigComplex {
            re: real_from_rat(prec, re),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Round a copy to a new working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        BigComplex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        BigComplex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec().max(o.prec());
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        BigComplex {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        BigComplex {
            re: Float::with_val(p, &self.re * x),
            im: Float::with_val(p, &self.im * x),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re / &n),
            im: -Float::with_val(p, &self.im / &n),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Horner evaluation of an exact polynomial at a complex point; coefficients
/// are rounded to the point's working precision.
pub fn eval_poly_complex(p: &ExactPoly, z: &BigComplex) -> BigComplex {
    let prec = z.prec();
    let mut acc = BigComplex::zero(prec);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += real_from_rat(prec, c);
    }
    acc
}

/// Value and derivative in one pass.
pub fn eval_poly_and_deriv(p: &ExactPoly, z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.prec();
    let mut v = BigComplex::zero(prec);
    let mut d = BigComplex::zero(prec);
    for c in p.coeffs().iter().rev() {
        d = d.mul(z).add(&v);
        v = v.mul(z);
        v.re += real_from_rat(prec, c);
    }
    (v, d)
}

/// Real-axis Horner evaluation.
pub fn eval_poly_real(p: &ExactPoly, x: &Float) -> Float {
    let prec = x.prec();
    let mut acc = Float::with_val(prec, 0);
    for c in p.coeffs().iter().rev() {
        acc *= x;
        acc += real_from_rat(prec, c);
    }
    acc
}
