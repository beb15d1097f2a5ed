//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in ascending power order. The coefficient list never ends in a
/// zero; the zero polynomial is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_bigints<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    /// `c * t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// The polynomial `1 - t`.
    pub fn one_minus_t() -> Self {
        Self::from_ints([1, -1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / BigRational::from_integer((k + 1).into()));
        }
        Self::new(coeffs)
    }

    /// Exact definite integral over `[0, 1]`.
    pub fn integral_unit(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (k, c)| {
                acc + c / BigRational::from_integer((k + 1).into())
            })
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Floating-point Horner evaluation.
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Synthetic division by `(t - r)`: returns quotient and remainder.
    pub fn div_linear(&self, r: &BigRational) -> (Self, BigRational) {
        if self.coeffs.is_empty() {
            return (Self::zero(), BigRational::zero());
        }
        let mut quotient = vec![BigRational::zero(); self.coeffs.len() - 1];
        let mut carry = BigRational::zero();
        for k in (0..self.coeffs.len()).rev() {
            carry = &carry * r + &self.coeffs[k];
            if k > 0 {
                quotient[k - 1] = carry.clone();
            }
        }
        (Self::new(quotient), carry)
    }

    /// Multiplicity of `r` as a root. The zero polynomial reports `usize::MAX`.
    pub fn root_multiplicity(&self, r: &BigRational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.div_linear(r);
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            p = q;
        }
    }

    /// Returns `Some(c)` with `self == c * other` when such a rational exists.
    pub fn ratio_to(&self, other: &RationalPoly) -> Option<BigRational> {
        if self.is_zero() && other.is_zero() {
            return Some(BigRational::one());
        }
        if self.degree() != other.degree() || other.is_zero() {
            return None;
        }
        let c = self.leading()? / other.leading()?;
        (other.scale(&c) == *self).then_some(c)
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}
