//! Classical and orthonormal Bernstein bases on `[0, 1]` and on arbitrary
//! intervals.
//!
//! The orthonormal polynomial of index `j` and degree `n` is
//!
//! ```text
//! phi_{j,n}(t) = sqrt(2(n-j)+1) * sum_{k=0..j} w_{j,k} B_{j-k, n-k}(t)
//! w_{j,k}      = (-1)^k C(2n+1-k, j-k) C(j,k) / C(n-k, j-k)
//! ```
//!
//! equivalently `sqrt(2(n-j)+1) (1-t)^(n-j) sum_k (-1)^k C(2n+1-k, j-k) C(j,k) t^(j-k)`.
//!
//! The alternating sum cancels badly in floating point once `n` reaches the
//! high teens, so [`OrthoBasis`] evaluates it exactly: an `f64` abscissa is a
//! dyadic rational, every term becomes an integer over a common power of
//! two, and the radical-free value is rounded once at the end.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::dyadic::{ratio_pow2_to_f64, split_unit};
use crate::error::{Error, Result};
use crate::poly::RationalPoly;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 64;

/// A closed interval `[a, b]` with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(Self { a, b })
    }

    pub const fn unit() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    /// Maps `x` to `t = (x - a) / (b - a)`, rejecting points outside.
    pub fn to_unit(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::Domain {
                x,
                a: self.a,
                b: self.b,
            });
        }
        if x == self.b {
            return Ok(1.0);
        }
        Ok(((x - self.a) / self.length()).clamp(0.0, 1.0))
    }

    /// `n` uniformly spaced points including both endpoints.
    pub fn linspace(&self, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![self.a],
            _ => {
                let h = self.length() / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        if i == n - 1 {
                            self.b
                        } else {
                            self.a + h * i as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

impl Default for Interval {
    fn default() -> Self {
        Self::unit()
    }
}

/// Degree plus defining interval; names one complete basis of `n + 1`
/// functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisSpec {
    n: usize,
    interval: Interval,
}

impl BasisSpec {
    pub fn new(n: usize, interval: Interval) -> Result<Self> {
        if n > MAX_DEGREE {
            return Err(Error::DegreeCap { n, max: MAX_DEGREE });
        }
        Ok(Self { n, interval })
    }

    pub fn unit(n: usize) -> Result<Self> {
        Self::new(n, Interval::unit())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn check_index(&self, j: usize) -> Result<()> {
        check_index(self.n, j)
    }
}

pub(crate) fn check_index(n: usize, j: usize) -> Result<()> {
    if j > n {
        return Err(Error::Index {
            j: j as i64,
            n: n as i64,
        });
    }
    Ok(())
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Row `n` of the Bernstein triangle at `t`; no binomials are formed.
fn bernstein_row(n: usize, t: f64) -> Vec<f64> {
    let s = 1.0 - t;
    let mut row = Vec::with_capacity(n + 1);
    row.push(1.0);
    for r in 1..=n {
        let mut prev = 0.0;
        for value in row.iter_mut() {
            let cur = *value;
            *value = s * cur + t * prev;
            prev = cur;
        }
        row.push(t * prev);
        debug_assert_eq!(row.len(), r + 1);
    }
    row
}

/// `B_{j,n}(x)` on the spec's interval.
pub fn bernstein_eval(spec: &BasisSpec, j: usize, x: f64) -> Result<f64> {
    spec.check_index(j)?;
    Ok(bernstein_eval_all(spec, x)?[j])
}

/// All `n + 1` Bernstein values at `x`, via the triangular recurrence.
pub fn bernstein_eval_all(spec: &BasisSpec, x: f64) -> Result<Vec<f64>> {
    let t = spec.interval.to_unit(x)?;
    Ok(bernstein_row(spec.n, t))
}

/// Exact data for one orthonormal polynomial `phi_{j,n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoCoeffs {
    pub n: usize,
    pub j: usize,
    /// `2(n-j)+1`; the scale factor is its square root.
    pub radicand: u64,
    pub scale: f64,
    /// `(k, w_{j,k})` for `k = 0..=j`, multiplying `B_{j-k, n-k}`.
    pub combo: Vec<(usize, BigRational)>,
    /// Power-basis coefficients of `phi_{j,n} / scale`.
    pub power: RationalPoly,
}

impl OrthoCoeffs {
    /// The non-factorable part `sum_k (-1)^k C(2n+1-k, j-k) C(j,k) t^(j-k)`.
    pub fn inner_poly(&self) -> RationalPoly {
        RationalPoly::from_bigints(integer_weights(self.n, self.j).into_iter().rev())
    }

    /// `phi_{j,n}(t)` from the Bernstein combination, exact then rounded.
    pub fn eval_combo(&self, t: f64) -> f64 {
        let t = exact_unit(t);
        let one_minus = BigRational::one() - &t;
        let sum = self.combo.iter().fold(BigRational::zero(), |acc, (k, w)| {
            let (p, q) = (self.j - k, self.n - k);
            let b = BigRational::from_integer(binomial(q, p))
                * num_traits::pow(t.clone(), p)
                * num_traits::pow(one_minus.clone(), q - p);
            acc + w * b
        });
        self.scale * sum.to_f64().unwrap_or(f64::NAN)
    }

    /// `phi_{j,n}(t)` from the expanded power form, exact then rounded.
    pub fn eval_power(&self, t: f64) -> f64 {
        self.scale * self.power.eval(&exact_unit(t)).to_f64().unwrap_or(f64::NAN)
    }
}

fn exact_unit(t: f64) -> BigRational {
    let (m, e) = split_unit(t.clamp(0.0, 1.0));
    BigRational::new(BigInt::from(m), BigInt::one() << e)
}

/// `c_{j,k} = (-1)^k C(2n+1-k, j-k) C(j,k)` for `k = 0..=j`.
fn integer_weights(n: usize, j: usize) -> Vec<BigInt> {
    (0..=j)
        .map(|k| {
            let c = binomial(2 * n + 1 - k, j - k) * binomial(j, k);
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

fn radicand(n: usize, j: usize) -> u64 {
    (2 * (n - j) + 1) as u64
}

/// Exact construction of `phi_{j,n}`.
pub fn onb_coeffs(n: usize, j: usize) -> Result<OrthoCoeffs> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeCap { n, max: MAX_DEGREE });
    }
    check_index(n, j)?;
    let ints = integer_weights(n, j);
    let combo = ints
        .iter()
        .enumerate()
        .map(|(k, c)| (k, BigRational::new(c.clone(), binomial(n - k, j - k))))
        .collect();
    let inner = RationalPoly::from_bigints(ints.into_iter().rev());
    let power = &RationalPoly::one_minus_t().pow(n - j) * &inner;
    let radicand = radicand(n, j);
    Ok(OrthoCoeffs {
        n,
        j,
        radicand,
        scale: (radicand as f64).sqrt(),
        combo,
        power,
    })
}

/// Orthonormal basis of one degree on one interval, with the integer
/// weights precomputed. Immutable; share freely across threads.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    spec: BasisSpec,
    scales: Vec<f64>,
    weights: Vec<Vec<BigInt>>,
}

impl OrthoBasis {
    pub fn new(spec: BasisSpec) -> Self {
        let n = spec.n;
        Self {
            spec,
            scales: (0..=n).map(|j| (radicand(n, j) as f64).sqrt()).collect(),
            weights: (0..=n).map(|j| integer_weights(n, j)).collect(),
        }
    }

    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn eval(&self, j: usize, x: f64) -> Result<f64> {
        self.spec.check_index(j)?;
        let t = self.spec.interval.to_unit(x)?;
        let powers = DyadicPowers::new(t, self.spec.n);
        Ok(self.scales[j] * powers.radical_free(self.spec.n, j, &self.weights[j]))
    }

    pub fn eval_all(&self, x: f64) -> Result<Vec<f64>> {
        let t = self.spec.interval.to_unit(x)?;
        Ok(self.eval_unit_all(t))
    }

    /// All values at a parameter `t` already in `[0, 1]`.
    pub(crate) fn eval_unit_all(&self, t: f64) -> Vec<f64> {
        let n = self.spec.n;
        let powers = DyadicPowers::new(t, n);
        (0..=n)
            .map(|j| self.scales[j] * powers.radical_free(n, j, &self.weights[j]))
            .collect()
    }
}

/// Powers of `u` and `v` where `t = u / 2^e`, `1 - t = v / 2^e`.
struct DyadicPowers {
    e: u64,
    u_pow: Vec<BigInt>,
    v_pow: Vec<BigInt>,
}

impl DyadicPowers {
    fn new(t: f64, n: usize) -> Self {
        let (u, e) = split_unit(t);
        let v = (BigUint::one() << e) - &u;
        let powers = |base: BigInt| {
            let mut out = Vec::with_capacity(n + 1);
            out.push(BigInt::one());
            for k in 1..=n {
                let next = &out[k - 1] * &base;
                out.push(next);
            }
            out
        };
        Self {
            e,
            u_pow: powers(BigInt::from(u)),
            v_pow: powers(BigInt::from(v)),
        }
    }

    /// `phi_{j,n}(t) / scale`. Over the common denominator `2^(e n)` the
    /// Bernstein term `w_{j,k} B_{j-k,n-k}(t)` is `c_{j,k} u^(j-k) v^(n-j) 2^(e k)`.
    fn radical_free(&self, n: usize, j: usize, weights: &[BigInt]) -> f64 {
        let mut acc = BigInt::zero();
        for (k, c) in weights.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = (c * &self.u_pow[j - k]) << (self.e * k as u64);
            acc += term;
        }
        if acc.is_zero() {
            return 0.0;
        }
        let num = acc * &self.v_pow[n - j];
        ratio_pow2_to_f64(&num, self.e * n as u64)
    }
}

/// `phi_{j,n}((x - a)/(b - a))`.
pub fn onb_eval(spec: &BasisSpec, j: usize, x: f64) -> Result<f64> {
    spec.check_index(j)?;
    let t = spec.interval.to_unit(x)?;
    let powers = DyadicPowers::new(t, spec.n);
    let w = integer_weights(spec.n, j);
    Ok((radicand(spec.n, j) as f64).sqrt() * powers.radical_free(spec.n, j, &w))
}

/// All `n + 1` orthonormal values at `x`.
pub fn onb_eval_all(spec: &BasisSpec, x: f64) -> Result<Vec<f64>> {
    OrthoBasis::new(*spec).eval_all(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn interval_rejects_degenerate() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn degree_cap() {
        assert!(BasisSpec::unit(MAX_DEGREE).is_ok());
        assert_eq!(
            BasisSpec::unit(MAX_DEGREE + 1),
            Err(Error::DegreeCap { n: 65, max: 64 })
        );
        assert!(onb_coeffs(65, 0).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(
            binomial(129, 64).to_string(),
            "47533812913980349072792166510047556550"
        );
    }

    #[test]
    fn bernstein_examples() {
        let s1 = BasisSpec::unit(1).unwrap();
        assert_eq!(bernstein_eval(&s1, 0, 0.5).unwrap(), 0.5);
        let s4 = BasisSpec::unit(4).unwrap();
        assert_eq!(bernstein_eval(&s4, 2, 0.5).unwrap(), 0.375);
        let s7 = BasisSpec::new(7, Interval::new(-2.0, 3.0).unwrap()).unwrap();
        let v = bernstein_eval_all(&s7, -2.0).unwrap();
        assert_eq!(v[0], 1.0);
        assert!(v[1..].iter().all(|&b| b == 0.0));
    }

    #[test]
    fn bernstein_all_examples() {
        let s2 = BasisSpec::unit(2).unwrap();
        assert_eq!(bernstein_eval_all(&s2, 0.0).unwrap(), vec![1.0, 0.0, 0.0]);
        let s3 = BasisSpec::unit(3).unwrap();
        assert_eq!(
            bernstein_eval_all(&s3, 0.5).unwrap(),
            vec![0.125, 0.375, 0.375, 0.125]
        );
        let s20 = BasisSpec::unit(20).unwrap();
        let sum: f64 = bernstein_eval_all(&s20, 0.3).unwrap().iter().sum();
        assert!((sum - 1.0).abs() < 1e-13);
    }

    #[test]
    fn bernstein_errors() {
        let s = BasisSpec::unit(3).unwrap();
        assert!(matches!(
            bernstein_eval(&s, 0, 2.0),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            bernstein_eval(&s, 4, 0.5),
            Err(Error::Index { j: 4, n: 3 })
        ));
        assert!(matches!(onb_eval(&s, 0, -0.1), Err(Error::Domain { .. })));
    }

    #[test]
    fn endpoint_deltas_exact() {
        let spec = BasisSpec::new(9, Interval::new(-1.5, 4.0).unwrap()).unwrap();
        let left = bernstein_eval_all(&spec, -1.5).unwrap();
        let right = bernstein_eval_all(&spec, 4.0).unwrap();
        for j in 0..=9 {
            assert_eq!(left[j], if j == 0 { 1.0 } else { 0.0 });
            assert_eq!(right[j], if j == 9 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn n5_listing_coefficients() {
        let c0 = onb_coeffs(5, 0).unwrap();
        assert_eq!(c0.radicand, 11);
        assert_eq!(c0.power, RationalPoly::one_minus_t().pow(5));

        let c5 = onb_coeffs(5, 5).unwrap();
        assert_eq!(c5.radicand, 1);
        assert_eq!(
            c5.power,
            RationalPoly::from_ints([-1, 35, -280, 840, -1050, 462])
        );

        let c1 = onb_coeffs(5, 1).unwrap();
        assert_eq!(c1.scale, 3.0);
        let expected = &RationalPoly::one_minus_t().pow(4) * &RationalPoly::from_ints([-1, 11]);
        assert_eq!(c1.power, expected);
    }

    #[test]
    fn combo_structure() {
        for n in 0..=12 {
            for j in 0..=n {
                let c = onb_coeffs(n, j).unwrap();
                assert_eq!(c.combo.len(), j + 1);
                for (k, w) in &c.combo {
                    assert_eq!(w.is_positive(), k % 2 == 0, "n={n} j={j} k={k}");
                }
            }
        }
        // w_{1,0} for n = 1 is C(3,1)/C(1,1) = 3, w_{1,1} = -C(2,0)C(1,1)/C(0,0) = -1
        let c = onb_coeffs(1, 1).unwrap();
        assert_eq!(c.combo, vec![(0, q(3, 1)), (1, q(-1, 1))]);
    }

    #[test]
    fn root_at_one() {
        let one = BigRational::one();
        for n in 0..=15 {
            for j in 0..=n {
                let c = onb_coeffs(n, j).unwrap();
                assert_eq!(c.power.root_multiplicity(&one), n - j, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn onb_eval_examples() {
        let s5 = BasisSpec::unit(5).unwrap();
        assert_relative_eq!(
            onb_eval(&s5, 0, 0.0).unwrap(),
            11f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            onb_eval(&s5, 0, 0.0).unwrap(),
            3.3166247903554,
            epsilon = 1e-12
        );
        assert_eq!(onb_eval(&s5, 5, 0.0).unwrap(), -1.0);
        assert_eq!(onb_eval(&s5, 5, 1.0).unwrap(), 6.0);
    }

    #[test]
    fn onb_eval_all_examples() {
        let s0 = BasisSpec::unit(0).unwrap();
        assert_eq!(onb_eval_all(&s0, 0.7).unwrap(), vec![1.0]);

        let s1 = BasisSpec::unit(1).unwrap();
        let v = onb_eval_all(&s1, 1.0 / 3.0).unwrap();
        assert_relative_eq!(v[0], 3f64.sqrt() * 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(v[0], 1.1547005383792515, max_relative = 1e-15);
        assert!(v[1].abs() < 1e-15);

        let s8 = BasisSpec::unit(8).unwrap();
        let all = onb_eval_all(&s8, 0.5).unwrap();
        for (j, &value) in all.iter().enumerate() {
            assert_eq!(value, onb_eval(&s8, j, 0.5).unwrap());
        }
    }

    #[test]
    fn onb_matches_exact_forms_at_high_degree() {
        for &n in &[20usize, 40, 64] {
            let spec = BasisSpec::unit(n).unwrap();
            let basis = OrthoBasis::new(spec);
            for &t in &[0.0, 0.013, 0.37, 0.5, 0.91, 1.0] {
                let values = basis.eval_all(t).unwrap();
                for j in (0..=n).step_by(7) {
                    let c = onb_coeffs(n, j).unwrap();
                    let reference = c.eval_power(t);
                    let tol = 1e-13 * reference.abs().max(1e-300);
                    assert!((values[j] - reference).abs() <= tol, "n={n} j={j} t={t}");
                }
            }
        }
    }

    #[test]
    fn onb_on_general_interval_uses_mapping() {
        let spec = BasisSpec::new(6, Interval::new(-3.0, 5.0).unwrap()).unwrap();
        let unit = BasisSpec::unit(6).unwrap();
        let x = 1.0; // t = 0.5
        assert_eq!(
            onb_eval_all(&spec, x).unwrap(),
            onb_eval_all(&unit, 0.5).unwrap()
        );
    }

    #[test]
    fn linspace_endpoints() {
        let iv = Interval::new(-1.0, 2.0).unwrap();
        let g = iv.linspace(7);
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], -1.0);
        assert_eq!(g[6], 2.0);
    }
}
