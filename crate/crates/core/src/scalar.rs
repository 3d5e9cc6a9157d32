//! Scalar arithmetic underlying every other module: exact rationals, the
//! quotient ring `Q[xi]/(xi^d + 1)`, complex doubles, and dense univariate
//! polynomials over the rationals.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Exact rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Complex double used by the numeric paths.
pub type ComplexF = Complex64;

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render as "num/den" (canonical zero is "0/1").
pub fn rat_to_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse "num/den" or a bare integer.
pub fn rat_from_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Approximate a rational by a double.
pub fn rat_to_f64(x: &Rational) -> f64 {
    // Good enough for the desk-scale magnitudes used here.
    let n = x.numer();
    let d = x.denom();
    str::parse::<f64>(&n.to_string()).unwrap() / str::parse::<f64>(&d.to_string()).unwrap()
}

/// The four exact field operations. Division by zero is an error.
pub fn rational_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => {
            if b.is_zero() {
                Err(Error::DivisionByZero)
            } else {
                Ok(a / b)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Falling factorial `(x)_k = x (x-1) ... (x-k+1)`; empty product is 1.
pub fn falling(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x - rat_int(i as i64);
    }
    acc
}

/// `k!` as a big integer.
pub fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k as u64 {
        acc *= BigInt::from(i);
    }
    acc
}

/// Integer binomial coefficient; 0 when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        acc = acc * BigInt::from(n as u64 - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(x, k) = (x)_k / k!` for rational `x`.
pub fn binomial_rational(x: &Rational, k: u32) -> Rational {
    falling(x, k) / Rational::from_integer(factorial(k))
}

/// Element of `Q[xi]/(xi^d + 1)`, where `xi` stands for a d-th root of -1.
///
/// Stored as the coefficient vector of `c_0 + c_1 xi + ... + c_{d-1} xi^{d-1}`.
/// The relation `xi^d = -1` is applied after every multiplication; `xi^d + 1`
/// need not be irreducible, since identities valid modulo it are valid at
/// every root simultaneously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiElement {
    coeffs: Vec<Rational>,
}

impl XiElement {
    /// The zero element of the degree-`d` quotient ring.
    pub fn zero(d: usize) -> Self {
        assert!(d >= 1);
        XiElement {
            coeffs: vec![Rational::zero(); d],
        }
    }

    /// The multiplicative identity.
    pub fn one(d: usize) -> Self {
        Self::from_rational(d, Rational::one())
    }

    /// The generator `xi` itself. For `d = 1` this is the constant `-1`.
    pub fn xi(d: usize) -> Self {
        let mut e = Self::zero(d);
        if d == 1 {
            e.coeffs[0] = -Rational::one();
        } else {
            e.coeffs[1] = Rational::one();
        }
        e
    }

    /// Embed a rational as a constant.
    pub fn from_rational(d: usize, c: Rational) -> Self {
        let mut e = Self::zero(d);
        e.coeffs[0] = c;
        e
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        XiElement { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            Err(Error::XiDimensionMismatch(self.degree(), other.degree()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(XiElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        XiElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        XiElement {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Product reduced by `xi^d = -1`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let d = self.degree();
        let mut out = vec![Rational::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = i + j;
                let term = a * b;
                if k < d {
                    out[k] += term;
                } else {
                    out[k - d] -= term;
                }
            }
        }
        Ok(XiElement { coeffs: out })
    }

    /// `xi^e` for any integer `e`, using `xi^{-1} = -xi^{d-1}`.
    pub fn xi_pow(d: usize, e: i64) -> Self {
        // xi has order 2d, so reduce the exponent mod 2d first.
        let m = 2 * d as i64;
        let e = e.rem_euclid(m) as usize;
        let mut acc = Self::one(d);
        let x = Self::xi(d);
        for _ in 0..e {
            acc = acc.mul(&x).unwrap();
        }
        acc
    }

    /// Evaluate at a numeric d-th root of -1, `exp(i pi (2m+1)/d)`.
    pub fn eval_at_root(&self, m: usize) -> ComplexF {
        let d = self.degree() as f64;
        let root = ComplexF::from_polar(1.0, std::f64::consts::PI * (2.0 * m as f64 + 1.0) / d);
        let mut acc = ComplexF::new(0.0, 0.0);
        let mut p = ComplexF::new(1.0, 0.0);
        for c in &self.coeffs {
            acc += rat_to_f64(c) * p;
            p *= root;
        }
        acc
    }
}

impl fmt::Display for XiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => rat_to_string(c),
                1 => format!("{}*xi", rat_to_string(c)),
                _ => format!("{}*xi^{}", rat_to_string(c), i),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0/1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Product of two xi-ring elements, checking that both live in degree `d`.
pub fn xi_mul(a: &XiElement, b: &XiElement, d: usize) -> Result<XiElement> {
    if a.degree() != d {
        return Err(Error::XiDimensionMismatch(a.degree(), d));
    }
    a.mul(b)
}

/// Dense univariate polynomial over the rationals, index = degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            UniPoly { coeffs: vec![c] }
        }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        UniPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Falling factorial `(p)_k` of a polynomial argument.
    pub fn falling(&self, k: u32) -> Self {
        let mut acc = UniPoly::one();
        for i in 0..k {
            acc = acc.mul(&self.sub(&UniPoly::constant(rat_int(i as i64))));
        }
        acc
    }
}

/// Falling factorial dispatching on the argument kind per the shared
/// definition `(x)_k = prod_{i=1}^k (x - i + 1)`.
pub enum FallingArg<'a> {
    Scalar(&'a Rational),
    Poly(&'a UniPoly),
}

pub enum FallingOut {
    Scalar(Rational),
    Poly(UniPoly),
}

pub fn falling_factorial(x: FallingArg<'_>, k: u32) -> FallingOut {
    match x {
        FallingArg::Scalar(r) => FallingOut::Scalar(falling(r, k)),
        FallingArg::Poly(p) => FallingOut::Poly(p.falling(k)),
    }
}

/// Check a complex value for NaN/Inf.
pub fn ensure_finite(z: ComplexF) -> Result<ComplexF> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arith_examples() {
        let half = rat(1, 2);
        let third = rat(1, 3);
        assert_eq!(rational_arith(&half, &third, ArithOp::Add).unwrap(), rat(5, 6));
        let x = rat(-7, 3);
        assert_eq!(rational_arith(&x, &rat_int(1), ArithOp::Mul).unwrap(), x);
        let y = rat(7, 6);
        assert_eq!(rational_arith(&y, &y, ArithOp::Sub).unwrap(), rat(0, 1));
        assert!(matches!(
            rational_arith(&half, &Rational::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn rational_string_round_trip() {
        let x = rat(-22, 8);
        let s = rat_to_string(&x);
        assert_eq!(s, "-11/4");
        assert_eq!(rat_from_str(&s).unwrap(), x);
        assert_eq!(rat_from_str("3").unwrap(), rat_int(3));
        assert!(rat_from_str("1/0").is_err());
    }

    #[test]
    fn falling_examples() {
        assert_eq!(falling(&rat_int(7), 0), rat_int(1));
        assert_eq!(falling(&rat_int(5), 3), rat_int(60));
        assert_eq!(falling(&rat(1, 2), 2), rat(-1, 4));
    }

    #[test]
    fn falling_split_property() {
        // (x)_{m+n} = (x)_m (x - m)_n
        let x = rat(9, 4);
        for m in 0..=10u32 {
            for n in 0..=10u32 {
                let lhs = falling(&x, m + n);
                let rhs = falling(&x, m) * falling(&(&x - rat_int(m as i64)), n);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn xi_defining_relation() {
        // d=2: xi * xi = -1
        let x = XiElement::xi(2);
        let p = xi_mul(&x, &x, 2).unwrap();
        assert_eq!(p, XiElement::from_rational(2, rat_int(-1)));
    }

    #[test]
    fn xi_identity_and_expand() {
        // d=3: (1+xi)*1 = 1+xi
        let e = XiElement::one(3).add(&XiElement::xi(3)).unwrap();
        assert_eq!(e.mul(&XiElement::one(3)).unwrap(), e);
        // d=2: (1+xi)(1-xi) = 1 - xi^2 = 2
        let a = XiElement::one(2).add(&XiElement::xi(2)).unwrap();
        let b = XiElement::one(2).sub(&XiElement::xi(2)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), XiElement::from_rational(2, rat_int(2)));
    }

    #[test]
    fn xi_dimension_mismatch() {
        let a = XiElement::one(2);
        let b = XiElement::one(3);
        assert!(xi_mul(&a, &b, 2).is_err());
    }

    #[test]
    fn xi_negative_powers() {
        for d in 1..=4usize {
            let inv = XiElement::xi_pow(d, -1);
            let prod = inv.mul(&XiElement::xi(d)).unwrap();
            assert_eq!(prod, XiElement::one(d));
            // order 2d
            assert_eq!(XiElement::xi_pow(d, 2 * d as i64), XiElement::one(d));
        }
    }

    #[test]
    fn unipoly_basics() {
        let x = UniPoly::x();
        // (x)_2 = x^2 - x
        let p = x.falling(2);
        assert_eq!(p.coeff(0), rat_int(0));
        assert_eq!(p.coeff(1), rat_int(-1));
        assert_eq!(p.coeff(2), rat_int(1));
        assert_eq!(p.eval(&rat(1, 2)), rat(-1, 4));
    }
}
