//! Hypergeometric bracket series for the roots of a degree-n polynomial
//! `a_0 + a_1 z + ... + a_n z^n`, attached to a pair of indices `(i1, i2)`
//! and a d-th root `xi` of -1, together with the cross-check against the
//! closed perturbed-root formula.
//!
//! Coefficients are computed per term: each bracket admits at most one
//! lattice vector matching a given monomial in the free variables, found by
//! completing the free entries, so no series is ever materialized.

use num_traits::{One, Signed, Zero};

use crate::combinatorics::MultiIndex;
use crate::root_series::{coeff_closed, ProblemSpec};
use crate::scalar::{factorial, falling, rat, rat_int, rat_to_string, Rational, XiElement};
use crate::{Error, Result};

/// The polynomial degree `n`, the marked pair `i1 < i2`, and `d = i2 - i1`.
/// The root series lives in `Q[xi]/(xi^d + 1)`-coefficient monomials.
#[derive(Debug, Clone)]
pub struct GkzConfig {
    pub n: usize,
    pub i1: usize,
    pub i2: usize,
}

impl GkzConfig {
    pub fn new(n: usize, i1: usize, i2: usize) -> Result<Self> {
        if n < 2 || i1 >= i2 || i2 > n {
            return Err(Error::InvalidArgument(format!(
                "need n >= 2 and 0 <= i1 < i2 <= n, got n={n} i1={i1} i2={i2}"
            )));
        }
        Ok(GkzConfig { n, i1, i2 })
    }

    pub fn d(&self) -> usize {
        self.i2 - self.i1
    }

    /// Indices `0..=n` other than `i1`, `i2`, in increasing order; these are
    /// the free variables of the series.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..=self.n).filter(|&i| i != self.i1 && i != self.i2).collect()
    }

    /// `C = sum over free i of (i - i1) n_i` for a free-variable multi-index.
    pub fn weight_c(&self, n_free: &MultiIndex) -> i64 {
        self.free_positions()
            .iter()
            .zip(n_free.entries())
            .map(|(&i, &c)| (i as i64 - self.i1 as i64) * c as i64)
            .sum()
    }
}

/// Complete a lattice vector of the rank-2 relation matrix (rows `(0,1,...,n)`
/// and `(1,...,1)`) from its free entries:
/// `v_{i2} = -(1/d) sum (i - i1) v_i`, `v_{i1} = -(1/d) sum (i2 - i) v_i`.
/// Returns `None` when either completed entry is non-integral.
pub fn lattice_complete(free: &[i64], cfg: &GkzConfig) -> Option<Vec<i64>> {
    let positions = cfg.free_positions();
    assert_eq!(free.len(), positions.len());
    let d = cfg.d() as i64;
    let s_right: i64 = positions
        .iter()
        .zip(free)
        .map(|(&i, &v)| (i as i64 - cfg.i1 as i64) * v)
        .sum();
    let s_left: i64 = positions
        .iter()
        .zip(free)
        .map(|(&i, &v)| (cfg.i2 as i64 - i as i64) * v)
        .sum();
    if s_right % d != 0 || s_left % d != 0 {
        return None;
    }
    let mut v = vec![0i64; cfg.n + 1];
    for (&i, &f) in positions.iter().zip(free) {
        v[i] = f;
    }
    v[cfg.i2] = -s_right / d;
    v[cfg.i1] = -s_left / d;
    Some(v)
}

/// The per-slot factor of a bracket series:
/// 1 if `v = 0`; `(u)_{|v|}` if `v < 0`; 0 if `u` is an integer with
/// `0 > u >= -v`; otherwise `1 / prod_{i=1}^{v} (u + i)`.
pub fn gamma_uv(u: &Rational, v: i64) -> Rational {
    if v == 0 {
        return Rational::one();
    }
    if v < 0 {
        return falling(u, (-v) as u32);
    }
    if u.is_integer() && u.is_negative() && *u >= rat_int(-v) {
        return Rational::zero();
    }
    let mut denom = Rational::one();
    for i in 1..=v {
        denom *= u + rat_int(i);
    }
    Rational::one() / denom
}

/// One term of the root series: `coeff * a_{i1}^p * a_{i2}^q` with `coeff` in
/// the xi-ring. Terms with zero coefficient compare equal regardless of the
/// recorded exponents.
#[derive(Debug, Clone)]
pub struct GkzMonomial {
    pub coeff: XiElement,
    pub p: Rational,
    pub q: Rational,
}

impl GkzMonomial {
    pub fn render(&self) -> String {
        format!(
            "({}) * a_i1^({}) * a_i2^({})",
            self.coeff,
            rat_to_string(&self.p),
            rat_to_string(&self.q)
        )
    }
}

impl PartialEq for GkzMonomial {
    fn eq(&self, other: &Self) -> bool {
        if self.coeff.is_zero() && other.coeff.is_zero() {
            return true;
        }
        self.coeff == other.coeff && self.p == other.p && self.q == other.q
    }
}

/// One bracket series of the root-series sum, described by its prefactor,
/// its exponent vector `u`, and (for all but the leading bracket) the slot
/// whose series variable carries an explicit extra power.
struct Bracket {
    /// 0 for the trailing bracket, 1..=d otherwise.
    j: usize,
    prefactor: XiElement,
    u: Vec<Rational>,
    /// Free slot that absorbs one unit of the monomial degree.
    marker: Option<usize>,
}

fn brackets(cfg: &GkzConfig) -> Vec<Bracket> {
    let d = cfg.d();
    let n = cfg.n;
    let inv_d = rat(1, d as i64);
    let mut out = Vec::new();
    // leading bracket: xi [a_{i1}^{1/d} a_{i2}^{-1/d}]
    let mut u = vec![Rational::zero(); n + 1];
    u[cfg.i1] = inv_d.clone();
    u[cfg.i2] = -&inv_d;
    out.push(Bracket {
        j: 1,
        prefactor: XiElement::xi(d),
        u,
        marker: None,
    });
    // middle and last brackets: (xi^j / d) a_{i1+j-1} [a_{i1}^{(j-d)/d} a_{i2}^{-j/d} ...]
    for j in 2..=d {
        let mut u = vec![Rational::zero(); n + 1];
        u[cfg.i1] = rat(j as i64 - d as i64, d as i64);
        u[cfg.i1 + j - 1] += Rational::one();
        u[cfg.i2] = rat(-(j as i64), d as i64);
        out.push(Bracket {
            j,
            prefactor: XiElement::xi_pow(d, j as i64).scale(&inv_d),
            u,
            marker: Some(cfg.i1 + j - 1),
        });
    }
    // trailing bracket: (1/d) a_{i1-1} [a_{i1}^{-1} ...]; absent when i1 = 0
    if cfg.i1 >= 1 {
        let mut u = vec![Rational::zero(); n + 1];
        u[cfg.i1 - 1] += Rational::one();
        u[cfg.i1] = rat_int(-1);
        out.push(Bracket {
            j: 0,
            prefactor: XiElement::one(d).scale(&inv_d),
            u,
            marker: Some(cfg.i1 - 1),
        });
    }
    out
}

/// Coefficient of `prod a_i^{n_i}` (over the free variables) in the root
/// series, computed bracket by bracket. At most one bracket can contain the
/// term, or two exactly when `C = -1 mod d`; both facts are asserted.
pub fn x_series_coeff(n_free: &MultiIndex, cfg: &GkzConfig) -> Result<GkzMonomial> {
    let positions = cfg.free_positions();
    if n_free.dim() != positions.len() {
        return Err(Error::InvalidArgument(format!(
            "free multi-index dimension {} != {}",
            n_free.dim(),
            positions.len()
        )));
    }
    let d = cfg.d();
    let c = cfg.weight_c(n_free);
    let mut total = XiElement::zero(d);
    let mut exps: Option<(Rational, Rational)> = None;
    let mut nonzero_js: Vec<usize> = Vec::new();
    for bracket in brackets(cfg) {
        let free_v: Vec<i64> = positions
            .iter()
            .zip(n_free.entries())
            .map(|(&i, &cnt)| cnt as i64 - i64::from(bracket.marker == Some(i)))
            .collect();
        let v = match lattice_complete(&free_v, cfg) {
            Some(v) => v,
            None => continue,
        };
        let mut factor = Rational::one();
        for (ui, &vi) in bracket.u.iter().zip(&v) {
            factor *= gamma_uv(ui, vi);
            if factor.is_zero() {
                break;
            }
        }
        if factor.is_zero() {
            continue;
        }
        nonzero_js.push(bracket.j);
        let p = &bracket.u[cfg.i1] + rat_int(v[cfg.i1]);
        let q = &bracket.u[cfg.i2] + rat_int(v[cfg.i2]);
        match &exps {
            None => exps = Some((p, q)),
            Some((ep, eq)) => assert!(
                *ep == p && *eq == q,
                "contributing brackets disagree on the monomial exponents"
            ),
        }
        total = total.add(&bracket.prefactor.scale(&factor))?;
    }
    assert!(
        nonzero_js.len() <= 2,
        "more than two brackets contain one term"
    );
    if nonzero_js.len() == 2 {
        assert!(
            (c + 1).rem_euclid(d as i64) == 0,
            "two brackets contributed with C != -1 mod d"
        );
        // the candidates share k = 0 but occupy disjoint ranges of M
        assert!(
            !(nonzero_js.contains(&0) && nonzero_js.contains(&d)),
            "trailing and last brackets were expected to be disjoint"
        );
    }
    let (p, q) = exps.unwrap_or_else(|| {
        // zero coefficient: report the exponents the term would carry
        let sum_n = n_free.order() as i64;
        let cp1 = rat(c + 1, d as i64);
        (&cp1 - rat_int(sum_n), -cp1)
    });
    Ok(GkzMonomial { coeff: total, p, q })
}

/// Closed-form coefficient of the same term:
/// `(xi^k / d) (-1)^M (a_{i1}/a_{i2})^{(C+1)/d}
///  ((C+1)/d - 1)_{sum n - 1} / (a_{i1}^{sum n} prod n_i!)`
/// with `C = k - 1 + M d`, `0 <= k <= d-1`.
pub fn recovery_formula_coeff(n_free: &MultiIndex, cfg: &GkzConfig) -> Result<GkzMonomial> {
    let positions = cfg.free_positions();
    if n_free.dim() != positions.len() {
        return Err(Error::InvalidArgument(format!(
            "free multi-index dimension {} != {}",
            n_free.dim(),
            positions.len()
        )));
    }
    let sum_n = n_free.order();
    if sum_n == 0 {
        return Err(Error::InvalidArgument(
            "the closed recovery formula requires a not-all-zero multi-index".into(),
        ));
    }
    let d = cfg.d();
    let c = cfg.weight_c(n_free);
    let k = (c + 1).rem_euclid(d as i64);
    let m = (c + 1 - k) / d as i64;
    let cp1_over_d = rat(c + 1, d as i64);
    let mut scalar = falling(&(&cp1_over_d - rat_int(1)), sum_n - 1) / rat_int(d as i64);
    if m.rem_euclid(2) == 1 {
        scalar = -scalar;
    }
    for &cnt in n_free.entries() {
        scalar /= Rational::from_integer(factorial(cnt));
    }
    let coeff = XiElement::xi_pow(d, k).scale(&scalar);
    let p = &cp1_over_d - rat_int(sum_n as i64);
    let q = -cp1_over_d;
    Ok(GkzMonomial { coeff, p, q })
}

/// Compare the recovery formula against the perturbed-root closed formula
/// specialized to `beta = d`, `gamma_i = i - i1` over the free positions,
/// `alpha = xi a_{i1}^{1/d} a_{i2}^{-1/d}`, and `b` the formal ratio
/// `a_{i2}/a_{i1}`, including the chain-rule factor `a_{i1}^{-sum n}` from
/// rescaling the polynomial coefficients.
pub fn recovery_vs_main(n_free: &MultiIndex, cfg: &GkzConfig) -> Result<bool> {
    let positions = cfg.free_positions();
    let d = cfg.d();
    let sum_n = n_free.order();
    if sum_n == 0 {
        return Err(Error::InvalidArgument(
            "comparison requires a not-all-zero multi-index".into(),
        ));
    }
    // exact closed formula with formal b = 1 (its powers are restored below
    // as explicit a_{i1}/a_{i2} exponents)
    let gammas: Vec<Rational> = positions
        .iter()
        .map(|&i| rat_int(i as i64 - cfg.i1 as i64))
        .collect();
    let spec = ProblemSpec::new(Rational::one(), rat_int(d as i64), gammas, 0)?;
    let mono = coeff_closed(n_free, &spec)?;
    // Taylor normalization
    let mut scalar = mono.coeff;
    for &cnt in n_free.entries() {
        scalar /= Rational::from_integer(factorial(cnt));
    }
    // alpha^e with e = mono.alpha_exp, necessarily an integer here
    if !mono.alpha_exp.is_integer() {
        return Err(Error::InvalidArgument(
            "alpha exponent failed to be integral under the substitution".into(),
        ));
    }
    let e = mono
        .alpha_exp
        .to_integer()
        .try_into()
        .map_err(|_| Error::InvalidArgument("alpha exponent out of range".into()))?;
    let coeff = XiElement::xi_pow(d, e).scale(&scalar);
    let e_over_d = rat(e, d as i64);
    let n_rat = rat_int(sum_n as i64);
    // b^{-N} = a_{i1}^N a_{i2}^{-N}; the chain rule contributes a_{i1}^{-N},
    // cancelling it, so only alpha^e remains in p while q keeps the -N
    let closed = GkzMonomial {
        coeff,
        p: e_over_d.clone(),
        q: -e_over_d - n_rat,
    };
    let recovered = recovery_formula_coeff(n_free, cfg)?;
    Ok(closed == recovered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ComplexF;

    #[test]
    fn lattice_examples() {
        let cfg = GkzConfig::new(2, 0, 2).unwrap();
        assert_eq!(lattice_complete(&[2], &cfg), Some(vec![-1, 2, -1]));
        assert_eq!(lattice_complete(&[0], &cfg), Some(vec![0, 0, 0]));
        assert_eq!(lattice_complete(&[1], &cfg), None);
        // relation matrix annihilates every completed vector
        let cfg = GkzConfig::new(4, 1, 3).unwrap();
        for f0 in -2..=2i64 {
            for f2 in -2..=2i64 {
                for f4 in -2..=2i64 {
                    if let Some(v) = lattice_complete(&[f0, f2, f4], &cfg) {
                        let row1: i64 = v.iter().enumerate().map(|(i, &x)| i as i64 * x).sum();
                        let row2: i64 = v.iter().sum();
                        assert_eq!((row1, row2), (0, 0), "{v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_uv(&rat(7, 5), 0), rat_int(1));
        assert_eq!(gamma_uv(&rat_int(-1), 1), rat_int(0));
        assert_eq!(gamma_uv(&rat_int(-2), 1), rat_int(-1));
        // v < 0 is a falling factorial
        assert_eq!(gamma_uv(&rat(1, 2), -2), rat(-1, 4));
        // generic positive v
        assert_eq!(gamma_uv(&rat(1, 2), 2), rat(1, 1) / (rat(3, 2) * rat(5, 2)));
    }

    #[test]
    fn constant_term_is_xi_monomial() {
        for (n, i1, i2) in [(2, 0, 2), (3, 0, 2), (3, 1, 3), (4, 1, 4)] {
            let cfg = GkzConfig::new(n, i1, i2).unwrap();
            let d = cfg.d();
            let zero = MultiIndex::new(vec![0; n - 1]);
            let got = x_series_coeff(&zero, &cfg).unwrap();
            assert_eq!(got.coeff, XiElement::xi(d), "n={n} i1={i1} i2={i2}");
            assert_eq!(got.p, rat(1, d as i64));
            assert_eq!(got.q, rat(-1, d as i64));
        }
    }

    #[test]
    fn both_paths_agree_small_grid() {
        for n in 2..=4usize {
            for i1 in 0..n {
                for i2 in (i1 + 1)..=n {
                    let cfg = GkzConfig::new(n, i1, i2).unwrap();
                    for nf in MultiIndex::all_up_to(n - 1, 4) {
                        let series = x_series_coeff(&nf, &cfg).unwrap();
                        if nf.order() == 0 {
                            continue;
                        }
                        let closed = recovery_formula_coeff(&nf, &cfg).unwrap();
                        assert_eq!(
                            series, closed,
                            "n={n} i1={i1} i2={i2} nf={:?}: {} vs {}",
                            nf.entries(),
                            series.render(),
                            closed.render()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn recovery_matches_perturbed_root_formula() {
        for n in 2..=3usize {
            for i1 in 0..n {
                for i2 in (i1 + 1)..=n {
                    let cfg = GkzConfig::new(n, i1, i2).unwrap();
                    for nf in MultiIndex::all_up_to(n - 1, 3) {
                        if nf.order() == 0 {
                            continue;
                        }
                        assert!(
                            recovery_vs_main(&nf, &cfg).unwrap(),
                            "n={n} i1={i1} i2={i2} nf={:?}",
                            nf.entries()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn all_zero_multi_index_is_an_error() {
        let cfg = GkzConfig::new(2, 0, 2).unwrap();
        let zero = MultiIndex::new(vec![0]);
        assert!(recovery_formula_coeff(&zero, &cfg).is_err());
        assert!(recovery_vs_main(&zero, &cfg).is_err());
    }

    #[test]
    fn quadratic_series_matches_quadratic_formula() {
        // X_{0,2,xi} at a0 = a2 = 1, small real a1, xi evaluated at i
        let cfg = GkzConfig::new(2, 0, 2).unwrap();
        let a1: f64 = 0.01;
        let mut total = ComplexF::new(0.0, 0.0);
        for k in 0..=6u32 {
            let mono = x_series_coeff(&MultiIndex::new(vec![k]), &cfg).unwrap();
            // a0 = a2 = 1 makes the fractional powers trivial
            total += mono.coeff.eval_at_root(0) * a1.powi(k as i32);
        }
        let a = ComplexF::new(a1, 0.0);
        let explicit =
            (-a + ComplexF::new(0.0, 1.0) * (ComplexF::new(4.0, 0.0) - a * a).sqrt()) / 2.0;
        assert!(
            (total - explicit).norm() / explicit.norm() < 1e-10,
            "{total} vs {explicit}"
        );
    }
}
