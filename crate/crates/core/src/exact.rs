//! Exact rational verification of the orthonormal Bernstein identities:
//! Bernstein inner products, the orthonormality double sum, the mixed
//! `phi`·`B` integrals, an independent Gram–Schmidt construction and the
//! Sturm–Liouville eigen-equation.
//!
//! Everything here works on radical-free polynomials. The factor
//! `sqrt(2(n-j)+1)` is carried separately and only meets floating point at
//! the boundary ([`PhiBernIntegral::value`]).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::basis::{binomial, check_index, onb_coeffs, Interval};
use crate::error::{Error, Result};
use crate::poly::RationalPoly;

/// Highest degree accepted by the O(n^2)-and-worse exact routines.
pub const EXACT_MAX_DEGREE: usize = 15;

fn guard(n: usize) -> Result<()> {
    if n > EXACT_MAX_DEGREE {
        return Err(Error::Capability(format!(
            "degree {n} exceeds the exact-verification limit {EXACT_MAX_DEGREE}"
        )));
    }
    Ok(())
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn int(v: usize) -> BigInt {
    BigInt::from(v)
}

/// `B_{j,n}(t)` in the power basis.
pub fn bernstein_poly(j: usize, n: usize) -> Result<RationalPoly> {
    check_index(n, j)?;
    let c = BigRational::from_integer(binomial(n, j));
    Ok(&RationalPoly::monomial(c, j) * &RationalPoly::one_minus_t().pow(n - j))
}

/// `∫_0^1 B_{p,q} B_{r,s} dt = C(q,p) C(s,r) / ((q+s+1) C(q+s, p+r))`.
pub fn bernstein_pair_integral(p: usize, q: usize, r: usize, s: usize) -> Result<BigRational> {
    check_index(q, p)?;
    check_index(s, r)?;
    Ok(ratio(
        binomial(q, p) * binomial(s, r),
        int(q + s + 1) * binomial(q + s, p + r),
    ))
}

/// The orthonormality double sum with the radical prefactor removed:
/// zero for `i != j`, `1/(2(n-i)+1)` on the diagonal.
pub fn ortho_double_sum(n: usize, i: usize, j: usize) -> Result<BigRational> {
    check_index(n, i)?;
    check_index(n, j)?;
    let side = |m: usize, k: usize| binomial(2 * n + 1 - k, m - k) * binomial(m, k);
    let left: Vec<BigInt> = (0..=i).map(|k| side(i, k)).collect();
    let right: Vec<BigInt> = (0..=j).map(|l| side(j, l)).collect();
    let mut acc = BigRational::zero();
    for (k, lk) in left.iter().enumerate() {
        for (l, rl) in right.iter().enumerate() {
            let s = k + l;
            let term = ratio(lk * rl, int(2 * n + 1 - s) * binomial(2 * n - s, i + j - s));
            if s % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    Ok(acc)
}

/// `∫_a^b phi_{i,n} B_{j,n} dx = length * sqrt(radicand) * rational`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiBernIntegral {
    pub length: f64,
    pub radicand: u64,
    pub rational: BigRational,
}

impl PhiBernIntegral {
    pub fn value(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.length * (self.radicand as f64).sqrt() * self.rational.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }
}

/// Mixed integral of an orthonormal and a classical Bernstein polynomial;
/// exactly zero below the diagonal (`j < i`).
pub fn phi_bern_integral(
    n: usize,
    i: usize,
    j: usize,
    interval: Interval,
) -> Result<PhiBernIntegral> {
    check_index(n, i)?;
    check_index(n, j)?;
    let radicand = (2 * (n - i) + 1) as u64;
    let rational = if j < i {
        BigRational::zero()
    } else {
        let mut acc = BigRational::zero();
        for k in 0..=i {
            let term = ratio(
                binomial(2 * n + 1 - k, i - k) * binomial(i, k) * binomial(n, j),
                int(2 * n + 1 - k) * binomial(2 * n - k, i + j - k),
            );
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    };
    Ok(PhiBernIntegral {
        length: interval.length(),
        radicand,
        rational,
    })
}

/// Exact `(n+1)×(n+1)` table of [`phi_bern_integral`] rationals on `[0, 1]`,
/// row `i`, column `j`.
pub fn phi_bern_table(n: usize) -> Result<Vec<Vec<PhiBernIntegral>>> {
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| phi_bern_integral(n, i, j, Interval::unit()))
                .collect()
        })
        .collect()
}

/// Unnormalized Gram–Schmidt output over `{B_{0,n}, …, B_{n,n}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramSchmidtResult {
    pub n: usize,
    pub polys: Vec<RationalPoly>,
    pub sq_norms: Vec<BigRational>,
}

/// Classical Gram–Schmidt in exact arithmetic, processing `B_{0,n}` first.
/// Inner products come from [`bernstein_pair_integral`] only.
pub fn gram_schmidt_oracle(n: usize) -> Result<GramSchmidtResult> {
    guard(n)?;
    let size = n + 1;
    let gram: Vec<Vec<BigRational>> = (0..size)
        .map(|p| {
            (0..size)
                .map(|r| bernstein_pair_integral(p, n, r, n))
                .collect()
        })
        .collect::<Result<_>>()?;
    let inner = |u: &[BigRational], v: &[BigRational]| {
        let mut acc = BigRational::zero();
        for (p, up) in u.iter().enumerate() {
            if up.is_zero() {
                continue;
            }
            for (r, vr) in v.iter().enumerate() {
                if !vr.is_zero() {
                    acc += up * vr * &gram[p][r];
                }
            }
        }
        acc
    };

    // each vector holds coordinates in the degree-n Bernstein basis
    let mut ortho: Vec<Vec<BigRational>> = Vec::with_capacity(size);
    let mut sq_norms: Vec<BigRational> = Vec::with_capacity(size);
    for j in 0..size {
        let mut v = vec![BigRational::zero(); size];
        v[j] = BigRational::one();
        let b = v.clone();
        for (u, norm) in ortho.iter().zip(&sq_norms) {
            let c = inner(&b, u) / norm;
            for (vk, uk) in v.iter_mut().zip(u) {
                *vk -= &c * uk;
            }
        }
        sq_norms.push(inner(&v, &v));
        ortho.push(v);
    }

    let basis: Vec<RationalPoly> = (0..size)
        .map(|j| bernstein_poly(j, n))
        .collect::<Result<_>>()?;
    let polys = ortho
        .iter()
        .map(|coords| {
            coords
                .iter()
                .zip(&basis)
                .fold(RationalPoly::zero(), |acc, (c, b)| &acc + &b.scale(c))
        })
        .collect();
    Ok(GramSchmidtResult { n, polys, sq_norms })
}

/// Coefficient functions and eigenvalue of
/// `(p phi')' + q phi + lambda w phi = 0` for one `(n, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SturmLiouvilleData {
    pub n: usize,
    pub j: usize,
    /// `x (1 - x)^2`
    pub p_poly: RationalPoly,
    /// `n (n + 2) (1 - x)`
    pub q_poly: RationalPoly,
    pub w: BigRational,
    /// `(n - j + 1)(j - n)`
    pub lambda: BigRational,
}

impl SturmLiouvilleData {
    pub fn new(n: usize, j: usize) -> Result<Self> {
        check_index(n, j)?;
        let p_poly = &RationalPoly::t() * &RationalPoly::one_minus_t().pow(2);
        let q_poly =
            RationalPoly::one_minus_t().scale(&BigRational::from_integer(int(n * (n + 2))));
        let lambda = BigRational::from_integer(
            BigInt::from((n - j + 1) as i64) * BigInt::from(j as i64 - n as i64),
        );
        Ok(Self {
            n,
            j,
            p_poly,
            q_poly,
            w: BigRational::one(),
            lambda,
        })
    }

    /// Applies the operator to `phi` with this data's eigenvalue.
    pub fn residual(&self, phi: &RationalPoly) -> RationalPoly {
        let flux = &self.p_poly * &phi.derivative();
        let lw = &self.lambda * &self.w;
        &(&flux.derivative() + &(&self.q_poly * phi)) + &phi.scale(&lw)
    }
}

/// Residual of the Sturm–Liouville equation on the radical-free `phi_{j,n}`;
/// the zero polynomial when the identity holds.
pub fn sturm_residual(n: usize, j: usize) -> Result<RationalPoly> {
    guard(n)?;
    let data = SturmLiouvilleData::new(n, j)?;
    let phi = onb_coeffs(n, j)?.power;
    Ok(data.residual(&phi))
}

/// As [`sturm_residual`] with an explicit eigenvalue.
pub fn sturm_residual_with_lambda(n: usize, j: usize, lambda: BigRational) -> Result<RationalPoly> {
    guard(n)?;
    let mut data = SturmLiouvilleData::new(n, j)?;
    data.lambda = lambda;
    let phi = onb_coeffs(n, j)?.power;
    Ok(data.residual(&phi))
}
