//! Taylor coefficients of the perturbed zero of `g(z) = 1 + b z^beta` under
//! the perturbation `f(z) = g(z) + sum_i a_i z^{gamma_i}`: the closed product
//! formula, the partition-recursion oracle that recomputes every coefficient
//! independently, and numeric branch selection plus residual verification.
//!
//! In exact mode `alpha` (the unperturbed zero) stays a formal symbol: no
//! relation `g(alpha) = 0` is ever applied, so closed-form and recursion
//! results can be compared for literal equality.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde_json::json;

use crate::combinatorics::{multiset_partitions, remove_index, MultiIndex, OrderedMultiset};
use crate::scalar::{falling, rat_int, rat_to_f64, rat_to_string, ComplexF, Rational};
use crate::{Error, Result};

/// Coefficient field for the series: exact rationals or complex doubles.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn render(&self) -> String;
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(<Rational as One>::one() / self)
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn render(&self) -> String {
        rat_to_string(self)
    }
}

impl Scalar for ComplexF {
    fn zero() -> Self {
        ComplexF::new(0.0, 0.0)
    }
    fn one() -> Self {
        ComplexF::new(1.0, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        ComplexF::new(rat_to_f64(r), 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if self.norm() == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(ComplexF::new(1.0, 0.0) / self)
        }
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn render(&self) -> String {
        format!("{},{}", self.re, self.im)
    }
}

fn pow_u<T: Scalar>(x: &T, n: u32) -> T {
    let mut acc = T::one();
    for _ in 0..n {
        acc = acc.mul(x);
    }
    acc
}

/// Rational power `x^n`, `n >= 0`.
fn rat_pow(x: &Rational, n: u32) -> Rational {
    let mut acc = <Rational as One>::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// The perturbation problem: base `g(z) = 1 + b z^beta`, perturbing exponents
/// `gamma_1 .. gamma_d`, and the branch index selecting which zero of `g` is
/// tracked. Exponents are kept rational so formal `alpha`-powers stay exact;
/// the coefficient `b` ranges over the scalar field.
#[derive(Debug, Clone)]
pub struct ProblemSpec<T: Scalar> {
    pub b: T,
    pub beta: Rational,
    pub gammas: Vec<Rational>,
    pub branch_m: i64,
}

impl<T: Scalar> ProblemSpec<T> {
    pub fn new(b: T, beta: Rational, gammas: Vec<Rational>, branch_m: i64) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::InvalidArgument("b must be nonzero".into()));
        }
        if Zero::is_zero(&beta) {
            return Err(Error::InvalidArgument("beta must be nonzero".into()));
        }
        if gammas.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one perturbing exponent is required".into(),
            ));
        }
        Ok(ProblemSpec {
            b,
            beta,
            gammas,
            branch_m,
        })
    }

    pub fn dim(&self) -> usize {
        self.gammas.len()
    }

    /// `sum_j n_j gamma_j`.
    fn gamma_dot(&self, n: &MultiIndex) -> Rational {
        n.entries()
            .iter()
            .zip(&self.gammas)
            .map(|(&c, g)| rat_int(c as i64) * g)
            .sum()
    }
}

/// `coeff * alpha^alpha_exp` with `alpha` formal. Two monomials with zero
/// coefficient are equal regardless of their recorded exponents.
#[derive(Debug, Clone)]
pub struct AlphaMonomial<T: Scalar> {
    pub coeff: T,
    pub alpha_exp: Rational,
}

impl<T: Scalar> AlphaMonomial<T> {
    pub fn new(coeff: T, alpha_exp: Rational) -> Self {
        AlphaMonomial { coeff, alpha_exp }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        AlphaMonomial {
            coeff: self.coeff.mul(&other.coeff),
            alpha_exp: &self.alpha_exp + &other.alpha_exp,
        }
    }

    pub fn render(&self) -> String {
        format!(
            "({}) * alpha^({})",
            self.coeff.render(),
            rat_to_string(&self.alpha_exp)
        )
    }
}

impl<T: Scalar> PartialEq for AlphaMonomial<T> {
    fn eq(&self, other: &Self) -> bool {
        if self.coeff.is_zero() && other.coeff.is_zero() {
            return true;
        }
        self.coeff == other.coeff && self.alpha_exp == other.alpha_exp
    }
}

/// Closed product formula for the mixed partial `d_n phi` at `a = 0`:
/// `-alpha^{1 + sum n_i (gamma_i - 1)} / g'(alpha)^{sum n}
///    * prod_{i=1}^{sum n - 1} (-1 + i beta - sum n_j gamma_j)`.
/// `g'(alpha)^N = b^N beta^N alpha^{N(beta-1)}` is absorbed into the
/// coefficient and the formal exponent.
pub fn coeff_closed<T: Scalar>(n: &MultiIndex, spec: &ProblemSpec<T>) -> Result<AlphaMonomial<T>> {
    if n.dim() != spec.dim() {
        return Err(Error::InvalidArgument(format!(
            "multi-index dimension {} != spec dimension {}",
            n.dim(),
            spec.dim()
        )));
    }
    let big_n = n.order();
    if big_n == 0 {
        return Err(Error::InvalidArgument(
            "total order must be >= 1; the order-0 value is alpha itself".into(),
        ));
    }
    let s = spec.gamma_dot(n);
    let mut prod = <Rational as One>::one();
    for i in 1..big_n {
        prod *= rat_int(-1) + rat_int(i as i64) * &spec.beta - &s;
    }
    let coeff_rat = -prod / rat_pow(&spec.beta, big_n);
    let b_inv = spec.b.inv()?;
    let coeff = T::from_rational(&coeff_rat).mul(&pow_u(&b_inv, big_n));
    let alpha_exp = rat_int(1)
        + n.entries()
            .iter()
            .zip(&spec.gammas)
            .map(|(&c, g)| rat_int(c as i64) * (g - rat_int(1)))
            .sum::<Rational>()
        - rat_int(big_n as i64) * (&spec.beta - rat_int(1));
    Ok(AlphaMonomial::new(coeff, alpha_exp))
}

/// Both printed forms of the order-`N` product agree:
/// `prod_{i=1}^{N-1} (-1 + i beta - S) = (-beta)^{N-1} (1/beta - 1 + S/beta)_{N-1}`
/// with `S = sum n_j gamma_j`, checked exactly.
pub fn formula_forms_agree<T: Scalar>(n: &MultiIndex, spec: &ProblemSpec<T>) -> Result<bool> {
    let big_n = n.order();
    if big_n == 0 {
        return Err(Error::InvalidArgument("total order must be >= 1".into()));
    }
    if Zero::is_zero(&spec.beta) {
        return Err(Error::DivisionByZero);
    }
    let s = spec.gamma_dot(n);
    let mut lhs = <Rational as One>::one();
    for i in 1..big_n {
        lhs *= rat_int(-1) + rat_int(i as i64) * &spec.beta - &s;
    }
    let inv_beta = rat_int(1) / &spec.beta;
    let arg = &inv_beta - rat_int(1) + &inv_beta * &s;
    let rhs = rat_pow(&(-&spec.beta), big_n - 1) * falling(&arg, big_n - 1);
    Ok(lhs == rhs)
}

/// Memoized partition-recursion oracle. Solves
/// `g'(alpha) d(phi, I) = -[first-derivative sum] - [higher-g sum]`
/// from the lower-order values, entirely independent of the closed formula.
pub struct RecursionOracle<'a, T: Scalar> {
    spec: &'a ProblemSpec<T>,
    memo: HashMap<Vec<usize>, AlphaMonomial<T>>,
}

impl<'a, T: Scalar> RecursionOracle<'a, T> {
    pub fn new(spec: &'a ProblemSpec<T>) -> Self {
        RecursionOracle {
            spec,
            memo: HashMap::new(),
        }
    }

    /// `d(phi, I)` for an ordered multiset of derivative slots. The result
    /// depends on `I` only through its multiplicities.
    pub fn coeff(&mut self, i: &OrderedMultiset) -> Result<AlphaMonomial<T>> {
        if i.entries().iter().any(|&e| e > self.spec.dim()) {
            return Err(Error::InvalidArgument(format!(
                "multiset entry exceeds dimension {}",
                self.spec.dim()
            )));
        }
        let mut key: Vec<usize> = i.entries().to_vec();
        key.sort_unstable();
        self.solve(key)
    }

    fn solve(&mut self, key: Vec<usize>) -> Result<AlphaMonomial<T>> {
        if let Some(m) = self.memo.get(&key) {
            return Ok(m.clone());
        }
        let spec = self.spec;
        let b_inv = spec.b.inv()?;
        let result = if key.len() == 1 {
            // d(phi, {i}) = -alpha^{gamma_i} / g'(alpha)
            let coeff = T::from_rational(&(-rat_int(1) / &spec.beta)).mul(&b_inv);
            let exp = &spec.gammas[key[0] - 1] - &spec.beta + rat_int(1);
            AlphaMonomial::new(coeff, exp)
        } else {
            let i = OrderedMultiset::new(key.clone());
            let l = i.order();
            // accumulate the right-hand side as a formal polynomial in alpha;
            // every surviving term must share one exponent; the map verifies it
            let mut poly: BTreeMap<Rational, T> = BTreeMap::new();
            let push = |poly: &mut BTreeMap<Rational, T>, exp: Rational, c: T| {
                let entry = poly.entry(exp).or_insert_with(T::zero);
                *entry = entry.add(&c);
            };
            // sum over which slot h takes the plain first derivative:
            // (gamma_{I(h)})_k alpha^{gamma_{I(h)} - k} * partition products
            for h in 1..=l {
                let g_h = spec.gammas[i.at(h) - 1].clone();
                let rest = remove_index(&i, h)?;
                for k in 1..=(l - 1) {
                    let fall = falling(&g_h, k as u32);
                    if Zero::is_zero(&fall) {
                        continue;
                    }
                    for parts in multiset_partitions(&rest, k) {
                        let mut c = T::from_rational(&fall);
                        let mut exp = &g_h - rat_int(k as i64);
                        for part in &parts {
                            let m = self.solve({
                                let mut e = part.entries().to_vec();
                                e.sort_unstable();
                                e
                            })?;
                            c = c.mul(&m.coeff);
                            exp += &m.alpha_exp;
                        }
                        push(&mut poly, exp, c);
                    }
                }
            }
            // g^{(k)}(alpha) = b (beta)_k alpha^{beta - k}, k >= 2
            for k in 2..=l {
                let fall = falling(&spec.beta, k as u32);
                if Zero::is_zero(&fall) {
                    continue;
                }
                for parts in multiset_partitions(&i, k) {
                    let mut c = T::from_rational(&fall).mul(&spec.b);
                    let mut exp = &spec.beta - rat_int(k as i64);
                    for part in &parts {
                        let m = self.solve({
                            let mut e = part.entries().to_vec();
                            e.sort_unstable();
                            e
                        })?;
                        c = c.mul(&m.coeff);
                        exp += &m.alpha_exp;
                    }
                    push(&mut poly, exp, c);
                }
            }
            poly.retain(|_, c| !c.is_zero());
            if poly.len() > 1 {
                return Err(Error::InvalidArgument(format!(
                    "recursion failed to collapse to a single alpha power for {key:?}"
                )));
            }
            // divide by -g'(alpha) = -b beta alpha^{beta - 1}
            let div = T::from_rational(&(-rat_int(1) / &spec.beta)).mul(&b_inv);
            match poly.into_iter().next() {
                Some((exp, c)) => AlphaMonomial::new(c.mul(&div), exp - &spec.beta + rat_int(1)),
                None => {
                    // cancelled to zero; exponent is still structurally fixed
                    let sum_gamma: Rational =
                        key.iter().map(|&e| spec.gammas[e - 1].clone()).sum();
                    let exp = rat_int(1) + sum_gamma - rat_int(l as i64) * &spec.beta;
                    AlphaMonomial::new(T::zero(), exp)
                }
            }
        };
        self.memo.insert(key, result.clone());
        Ok(result)
    }
}

/// Convenience wrapper computing a single oracle value.
pub fn coeff_recursive<T: Scalar>(
    i: &OrderedMultiset,
    spec: &ProblemSpec<T>,
) -> Result<AlphaMonomial<T>> {
    RecursionOracle::new(spec).coeff(i)
}

/// Table of coefficients for every multi-index with `sum n <= K`. The order-0
/// entry is `alpha` itself. When `normalized`, entries are Taylor coefficients
/// `d_n phi / prod n_i!`; otherwise raw partials.
#[derive(Debug, Clone)]
pub struct SeriesTable<T: Scalar> {
    pub entries: Vec<(MultiIndex, AlphaMonomial<T>)>,
    pub normalized: bool,
}

impl<T: Scalar> SeriesTable<T> {
    pub fn get(&self, n: &MultiIndex) -> Option<&AlphaMonomial<T>> {
        self.entries
            .iter()
            .find(|(m, _)| m == n)
            .map(|(_, v)| v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(n, m)| {
                json!({
                    "multi_index": n.entries(),
                    "coeff": m.coeff.render(),
                    "alpha_exp": rat_to_string(&m.alpha_exp),
                })
            })
            .collect();
        json!({
            "normalized": self.normalized,
            "coefficients": rows,
        })
    }
}

/// Assemble the closed-formula coefficient table up to total order `K`.
pub fn taylor_table<T: Scalar>(
    spec: &ProblemSpec<T>,
    k: u32,
    normalized: bool,
) -> Result<SeriesTable<T>> {
    let mut entries = Vec::new();
    for n in MultiIndex::all_up_to(spec.dim(), k) {
        let m = if n.order() == 0 {
            AlphaMonomial::new(T::one(), rat_int(1))
        } else {
            let mut m = coeff_closed(&n, spec)?;
            if normalized {
                let denom: Rational = n
                    .entries()
                    .iter()
                    .map(|&c| Rational::from_integer(crate::scalar::factorial(c)))
                    .product();
                m.coeff = m.coeff.mul(&T::from_rational(&(<Rational as One>::one() / denom)));
            }
            m
        };
        entries.push((n, m));
    }
    Ok(SeriesTable {
        entries,
        normalized,
    })
}

/// One zero of `g` on the log Riemann surface, parametrized by modulus `r`,
/// principal angle `theta` in `(-pi, pi]`, and sheet index `n`.
#[derive(Debug, Clone)]
pub struct AlphaBranch {
    pub r: f64,
    pub theta: f64,
    pub n: i64,
    pub value: ComplexF,
}

impl AlphaBranch {
    /// Full logarithm on the stored branch, `ln r + i(theta + 2 pi n)`.
    pub fn lambda(&self) -> ComplexF {
        ComplexF::new(self.r.ln(), self.theta + 2.0 * std::f64::consts::PI * self.n as f64)
    }

    /// `alpha^e` on this branch: `exp(e * lambda)`.
    pub fn pow(&self, e: &Rational) -> ComplexF {
        (self.lambda() * rat_to_f64(e)).exp()
    }

    /// `z^e` for a point near `alpha` on the same sheet, reached by the
    /// principal logarithm of the ratio `z / alpha`.
    pub fn pow_of(&self, z: ComplexF, e: &Rational) -> ComplexF {
        let lam = self.lambda() + (z / self.value).ln();
        (lam * rat_to_f64(e)).exp()
    }
}

fn principal_angle(z: ComplexF) -> f64 {
    // arg in (-pi, pi]
    let a = z.arg();
    if a <= -std::f64::consts::PI {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Locate the zero of `g(z) = 1 + b z^beta` selected by `branch_m`:
/// with `b = r0 e^{i theta0}` and `beta = beta1 + i beta2`,
/// `r = exp((beta2((2m+1)pi - theta0) - beta1 ln r0)/|beta|^2)` and
/// `theta_raw = (beta1((2m+1)pi - theta0) + beta2 ln r0)/|beta|^2`,
/// then the sheet index `n` is chosen so `theta` lands in `(-pi, pi]`.
/// The value is polished by Newton iteration in `lambda = log z`.
pub fn alpha_branch(spec: &ProblemSpec<ComplexF>) -> Result<AlphaBranch> {
    let pi = std::f64::consts::PI;
    let b = spec.b;
    let r0 = b.norm();
    let theta0 = principal_angle(b);
    let beta1 = rat_to_f64(&spec.beta);
    let beta2 = 0.0; // exponents are kept rational, hence real
    let norm2 = beta1 * beta1 + beta2 * beta2;
    let m = spec.branch_m as f64;
    let angle = (2.0 * m + 1.0) * pi - theta0;
    let r = ((beta2 * angle - beta1 * r0.ln()) / norm2).exp();
    let theta_raw = (beta1 * angle + beta2 * r0.ln()) / norm2;
    if !r.is_finite() || !theta_raw.is_finite() {
        return Err(Error::NonFinite);
    }
    // peel off full turns: theta = theta_raw - 2 pi n with theta in (-pi, pi]
    let mut n = (theta_raw / (2.0 * pi)).round() as i64;
    let mut theta = theta_raw - 2.0 * pi * n as f64;
    if theta <= -pi {
        theta += 2.0 * pi;
        n -= 1;
    } else if theta > pi {
        theta -= 2.0 * pi;
        n += 1;
    }

    // Newton in lambda = log z on the fixed sheet: h(lambda) = 1 + b e^{beta lambda}
    let beta_c = ComplexF::new(beta1, beta2);
    let mut lambda = ComplexF::new(r.ln(), theta + 2.0 * pi * n as f64);
    let mut residual = f64::INFINITY;
    for _ in 0..64 {
        let e = (beta_c * lambda).exp();
        let h = ComplexF::new(1.0, 0.0) + b * e;
        let scale = 1.0 + (b * e).norm();
        residual = h.norm() / scale;
        if residual <= 1e-15 {
            break;
        }
        let dh = b * beta_c * e;
        if dh.norm() == 0.0 {
            return Err(Error::BranchNotConverged(residual));
        }
        lambda -= h / dh;
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    if residual > 1e-12 {
        return Err(Error::BranchNotConverged(residual));
    }
    let r = lambda.re.exp();
    let mut n = (lambda.im / (2.0 * pi)).round() as i64;
    let mut theta = lambda.im - 2.0 * pi * n as f64;
    if theta <= -pi {
        theta += 2.0 * pi;
        n -= 1;
    } else if theta > pi {
        theta -= 2.0 * pi;
        n += 1;
    }
    Ok(AlphaBranch {
        r,
        theta,
        n,
        value: lambda.exp(),
    })
}

/// Evaluate the truncated series `phi_K(a)` from a normalized table on the
/// given branch.
pub fn eval_series(
    table: &SeriesTable<ComplexF>,
    branch: &AlphaBranch,
    a: &[ComplexF],
) -> ComplexF {
    assert!(table.normalized, "evaluation needs Taylor-normalized entries");
    let mut total = ComplexF::new(0.0, 0.0);
    for (n, m) in &table.entries {
        let mut term = m.coeff * branch.pow(&m.alpha_exp);
        for (i, &c) in n.entries().iter().enumerate() {
            for _ in 0..c {
                term *= a[i];
            }
        }
        total += term;
    }
    total
}

/// `f(z; a) = 1 + b z^beta + sum a_i z^{gamma_i}` with all powers taken on
/// the branch through `alpha`.
pub fn eval_f(
    spec: &ProblemSpec<ComplexF>,
    branch: &AlphaBranch,
    z: ComplexF,
    a: &[ComplexF],
) -> ComplexF {
    let mut total = ComplexF::new(1.0, 0.0) + spec.b * branch.pow_of(z, &spec.beta);
    for (g, &ai) in spec.gammas.iter().zip(a) {
        total += ai * branch.pow_of(z, g);
    }
    total
}

/// Newton-track the perturbed root of `f(.; a)` starting from `alpha`, in
/// log coordinates on the fixed sheet.
pub fn newton_root(
    spec: &ProblemSpec<ComplexF>,
    branch: &AlphaBranch,
    a: &[ComplexF],
) -> Result<ComplexF> {
    let beta = rat_to_f64(&spec.beta);
    let beta_c = ComplexF::new(beta, 0.0);
    let mut lambda = branch.lambda();
    for _ in 0..64 {
        let mut h = ComplexF::new(1.0, 0.0) + spec.b * (beta_c * lambda).exp();
        let mut dh = spec.b * beta_c * (beta_c * lambda).exp();
        for (g, &ai) in spec.gammas.iter().zip(a) {
            let gc = ComplexF::new(rat_to_f64(g), 0.0);
            h += ai * (gc * lambda).exp();
            dh += ai * gc * (gc * lambda).exp();
        }
        if h.norm() <= 1e-15 * (1.0 + dh.norm()) {
            break;
        }
        if dh.norm() == 0.0 {
            return Err(Error::BranchNotConverged(h.norm()));
        }
        lambda -= h / dh;
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    Ok(lambda.exp())
}

/// Result of the residual-scaling verification.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ResidualReport {
    pub residuals: Vec<f64>,
    /// Fitted log-residual vs log-scale slope; absent when every residual is
    /// below the float noise floor.
    pub slope: Option<f64>,
    pub noise_floor: f64,
    pub required_slope: f64,
    pub pass: bool,
}

/// Truncate the series at total order `K`, evaluate `f(phi_K(s a))` over the
/// scales, and check that the residual decays like `s^{K+1}`: fitted slope at
/// least `K + 1 - 0.2` whenever the residuals rise above `1e-13`.
pub fn residual_check(
    spec: &ProblemSpec<ComplexF>,
    k: u32,
    a_point: &[ComplexF],
    scales: &[f64],
) -> Result<ResidualReport> {
    if a_point.len() != spec.dim() {
        return Err(Error::InvalidArgument(
            "perturbation point dimension mismatch".into(),
        ));
    }
    let noise_floor = 1e-13;
    let required_slope = k as f64 + 1.0 - 0.2;
    let branch = alpha_branch(spec)?;
    let table = taylor_table(spec, k, true)?;
    let mut pts = Vec::new();
    let mut residuals = Vec::new();
    for &s in scales {
        let a: Vec<ComplexF> = a_point.iter().map(|&x| x * s).collect();
        let phi = eval_series(&table, &branch, &a);
        let res = eval_f(spec, &branch, phi, &a).norm();
        if !res.is_finite() {
            return Err(Error::NonFinite);
        }
        residuals.push(res);
        if res > noise_floor && s > 0.0 {
            pts.push((s.ln(), res.ln()));
        }
    }
    // least-squares slope through the points above the noise floor
    let slope = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
    } else {
        None
    };
    let pass = match slope {
        Some(sl) => sl >= required_slope,
        None => true, // everything at noise level: nothing to falsify
    };
    Ok(ResidualReport {
        residuals,
        slope,
        noise_floor,
        required_slope,
        pass,
    })
}

/// Numeric value of a formal coefficient on a concrete branch.
pub fn monomial_value(m: &AlphaMonomial<ComplexF>, branch: &AlphaBranch) -> ComplexF {
    m.coeff * branch.pow(&m.alpha_exp)
}

/// Finite-difference partial `d_n` of the Newton-tracked root at `a = 0`,
/// central differences with step `h`; supports total order <= 2.
pub fn finite_difference_partial(
    spec: &ProblemSpec<ComplexF>,
    branch: &AlphaBranch,
    n: &MultiIndex,
    h: f64,
) -> Result<ComplexF> {
    let d = spec.dim();
    let root_at = |offsets: &[(usize, f64)]| -> Result<ComplexF> {
        let mut a = vec![ComplexF::new(0.0, 0.0); d];
        for &(i, o) in offsets {
            a[i] += ComplexF::new(o, 0.0);
        }
        newton_root(spec, branch, &a)
    };
    let nz: Vec<(usize, u32)> = n
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| (i, c))
        .collect();
    match (n.order(), nz.as_slice()) {
        (1, [(i, 1)]) => {
            let p = root_at(&[(*i, h)])?;
            let m = root_at(&[(*i, -h)])?;
            Ok((p - m) / (2.0 * h))
        }
        (2, [(i, 2)]) => {
            let p = root_at(&[(*i, h)])?;
            let c = root_at(&[])?;
            let m = root_at(&[(*i, -h)])?;
            Ok((p - 2.0 * c + m) / (h * h))
        }
        (2, [(i, 1), (j, 1)]) => {
            let pp = root_at(&[(*i, h), (*j, h)])?;
            let pm = root_at(&[(*i, h), (*j, -h)])?;
            let mp = root_at(&[(*i, -h), (*j, h)])?;
            let mm = root_at(&[(*i, -h), (*j, -h)])?;
            Ok((pp - pm - mp + mm) / (4.0 * h * h))
        }
        _ => Err(Error::InvalidArgument(
            "finite differences implemented for total order 1 and 2".into(),
        )),
    }
}
