//! Commutative rings carrying a derivation, concrete polynomial and truncated
//! power-series instances, and the subset/partition derivative identities as
//! exact executable checks.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{set_partitions, subsets};
use crate::scalar::{binomial, factorial, falling, rat_int, Rational, UniPoly};
use crate::{Error, Result};

/// A commutative ring element together with a derivation.
///
/// No multiplicative identity is assumed; integer multiples are built from
/// the additive structure alone via [`DiffRing::scale_int`].
pub trait DiffRing: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// The derivation applied once.
    fn delta(&self) -> Self;

    fn nth_delta(&self, n: u32) -> Self {
        let mut acc = self.clone();
        for _ in 0..n {
            acc = acc.delta();
        }
        acc
    }

    /// `n f = f + ... + f`, extended to all integers; double-and-add.
    fn scale_int(&self, n: &BigInt) -> Self {
        if n.is_negative() {
            return self.neg().scale_int(&-n);
        }
        let mut result = self.add(&self.neg()); // zero
        let mut base = self.clone();
        let mut n = n.clone();
        let two = BigInt::from(2);
        while !n.is_zero() {
            if (&n % &two).is_one() {
                result = result.add(&base);
            }
            base = base.add(&base);
            n /= &two;
        }
        result
    }
}

/// Polynomials in `t` over the rationals with `delta = d/dt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyT(pub UniPoly);

impl PolyT {
    /// `t^n`.
    pub fn t_pow(n: u32) -> Self {
        let mut coeffs = vec![Rational::zero(); n as usize + 1];
        coeffs[n as usize] = Rational::one();
        PolyT(UniPoly::from_coeffs(coeffs))
    }
}

impl DiffRing for PolyT {
    fn add(&self, rhs: &Self) -> Self {
        PolyT(self.0.add(&rhs.0))
    }

    fn neg(&self) -> Self {
        PolyT(self.0.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        PolyT(self.0.mul(&rhs.0))
    }

    fn delta(&self) -> Self {
        let cs = self.0.coeffs();
        let mut out = Vec::with_capacity(cs.len().saturating_sub(1));
        for (i, c) in cs.iter().enumerate().skip(1) {
            out.push(c * rat_int(i as i64));
        }
        PolyT(UniPoly::from_coeffs(out))
    }
}

/// Power series in `t` truncated at a fixed order; multiplication truncates,
/// `delta` is termwise `d/dt`. Coefficients beyond the stored order are
/// unknown, so a derivative consumes one order of exact information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `-ln(1-t)` truncated.
    pub fn neg_log(order: usize) -> Self {
        let mut s = Self::zero(order);
        for k in 1..=order {
            s.coeffs[k] = rat_int(1) / rat_int(k as i64);
        }
        s
    }

    /// n-th power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Equality of the leading coefficients through `order` inclusive.
    pub fn agrees_to(&self, other: &Self, order: usize) -> bool {
        (0..=order).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl DiffRing for TruncSeries {
    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order());
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order());
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    fn delta(&self) -> Self {
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for i in 1..=n {
            out[i - 1] = &self.coeffs[i] * rat_int(i as i64);
        }
        TruncSeries { coeffs: out }
    }
}

/// Leibniz rule spot check: `delta(fg) = delta(f) g + f delta(g)`.
pub fn leibniz_holds<R: DiffRing>(f: &R, g: &R) -> bool {
    let lhs = f.mul(g).delta();
    let rhs = f.delta().mul(g).add(&f.mul(&g.delta()));
    lhs == rhs
}

fn product<R: DiffRing>(items: &mut impl Iterator<Item = R>) -> Option<R> {
    let first = items.next()?;
    Some(items.fold(first, |acc, x| acc.mul(&x)))
}

/// Left side of the subset derivative identity:
/// `sum_{w subset [1,M]} delta^{|w^c|-1}(delta(fA) prod_{w^c} f_i)
///     * delta^{|w|}(fB prod_w f_i)`,
/// where the `w^c`-empty factor `delta^{-1}(delta fA)` denotes `fA` itself.
pub fn deriv_set_lhs<R: DiffRing>(fa: &R, fb: &R, fs: &[R]) -> R {
    let m = fs.len();
    let mut total: Option<R> = None;
    for w in subsets(m) {
        let wc: Vec<usize> = (1..=m).filter(|i| !w.contains(i)).collect();
        let left = if wc.is_empty() {
            fa.clone()
        } else {
            let mut p = fa.delta();
            for &i in &wc {
                p = p.mul(&fs[i - 1]);
            }
            p.nth_delta((wc.len() - 1) as u32)
        };
        let mut right = fb.clone();
        for &i in &w {
            right = right.mul(&fs[i - 1]);
        }
        let right = right.nth_delta(w.len() as u32);
        let term = left.mul(&right);
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term),
        });
    }
    total.expect("at least the empty subset contributes")
}

/// Right side of the same identity: `delta^M(fA fB prod f_i)`.
pub fn deriv_set_rhs<R: DiffRing>(fa: &R, fb: &R, fs: &[R]) -> R {
    let mut p = fa.mul(fb);
    for f in fs {
        p = p.mul(f);
    }
    p.nth_delta(fs.len() as u32)
}

/// Strictly increasing k-tuples in `[1, max]`; `k = 0` yields the empty tuple.
pub fn tau_sequences(max: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > max {
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, max: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=max {
            if max - v + 1 + cur.len() < k {
                break;
            }
            cur.push(v);
            rec(v + 1, max, k, cur, out);
            cur.pop();
        }
    }
    rec(1, max, k, &mut cur, &mut out);
    out
}

/// The double sum over tau-sequences and set partitions:
/// for each `tau in T(N-j, k)` and `s in S(N, N-j)`, the marked parts
/// `s_{tau(i)}` contribute `C(|s_{tau(i)}|-1, u_i) delta^{|s_{tau(i)}|-1-u_i}`
/// of their product, the unmarked parts a full `delta^{|s_i|-1}`; terms with
/// `|s_{tau(i)}|-1-u_i < 0` vanish. The range `i not in tau` is read as
/// `[1, N-j]` minus the image of `tau`.
pub fn big_f<R: DiffRing>(j: usize, fs: &[R], u: &[u32]) -> R {
    let n = fs.len();
    let k = u.len();
    assert!(j < n && k <= n - j);
    let zero = fs[0].add(&fs[0].neg());
    let mut total = zero.clone();
    for tau in tau_sequences(n - j, k) {
        for s in set_partitions(n, n - j) {
            let mut term: Option<R> = None;
            let mut coeff = BigInt::one();
            let mut dead = false;
            for (i, &ti) in tau.iter().enumerate() {
                let part = &s.parts()[ti - 1];
                let size1 = (part.len() - 1) as u32;
                if size1 < u[i] {
                    dead = true;
                    break;
                }
                coeff *= binomial(size1, u[i]);
                let p = product(&mut part.iter().map(|&h| fs[h - 1].clone())).unwrap();
                let p = p.nth_delta(size1 - u[i]);
                term = Some(match term {
                    None => p,
                    Some(t) => t.mul(&p),
                });
            }
            if dead {
                continue;
            }
            for (i, part) in s.parts().iter().enumerate() {
                if tau.contains(&(i + 1)) {
                    continue;
                }
                let p = product(&mut part.iter().map(|&h| fs[h - 1].clone())).unwrap();
                let p = p.nth_delta((part.len() - 1) as u32);
                term = Some(match term {
                    None => p,
                    Some(t) => t.mul(&p),
                });
            }
            let term = term.expect("N-j >= 1 parts");
            total = total.add(&term.scale_int(&coeff));
        }
    }
    total
}

/// The closed-form constant multiplying `delta^{j - sum u}(prod f_i)`:
/// `(N-1)! (N-j+sum u) / [ (N-j-k)! (j-sum u)! prod u_i!
///     prod_{i=1}^k (k-i+1+sum_{g=i}^k u_g) ]`.
pub fn big_c(j: usize, n: usize, u: &[u32]) -> Result<Rational> {
    let k = u.len();
    let su: u32 = u.iter().sum();
    if (j as i64) < su as i64 {
        return Err(Error::InvalidArgument(format!(
            "j - sum(u) = {} is negative",
            j as i64 - su as i64
        )));
    }
    if n < j + k {
        return Err(Error::InvalidArgument(format!(
            "N - j - k = {} is negative",
            n as i64 - j as i64 - k as i64
        )));
    }
    let mut numer = Rational::from_integer(factorial((n - 1) as u32))
        * rat_int((n - j) as i64 + su as i64);
    let mut denom = Rational::from_integer(factorial((n - j - k) as u32))
        * Rational::from_integer(factorial(j as u32 - su));
    for &ui in u {
        denom *= Rational::from_integer(factorial(ui));
    }
    for i in 1..=k {
        let tail: u32 = u[i - 1..].iter().sum();
        denom *= rat_int((k - i + 1) as i64 + tail as i64);
    }
    numer /= denom;
    Ok(numer)
}

/// True iff `big_f(j, fs, u) = big_c(j, N, u) * delta^{j - sum u}(prod f_i)`
/// in the instance ring. The rational constant is cleared to integers so the
/// comparison stays inside a ring without rational scalars.
pub fn check_s_tau<R: DiffRing>(j: usize, fs: &[R], u: &[u32]) -> Result<bool> {
    let n = fs.len();
    let su: u32 = u.iter().sum();
    let c = big_c(j, n, u)?;
    let lhs = big_f(j, fs, u);
    let rhs = product(&mut fs.iter().cloned())
        .unwrap()
        .nth_delta(j as u32 - su);
    let lhs = lhs.scale_int(&c.denom().clone());
    let rhs = rhs.scale_int(&c.numer().clone());
    Ok(lhs == rhs)
}

/// `X = k + sum u_i` in the notation of the u-independence evaluators.
fn x_value(k: u32, u: &[u32]) -> Rational {
    rat_int(k as i64 + u.iter().sum::<u32>() as i64)
}

fn degsum(part: &[usize], ns: &[Rational]) -> Rational {
    part.iter().map(|&i| ns[i - 1].clone()).sum()
}

/// Direct evaluator for the u-dependent partition sum
/// `sum_v U(v-l+a, u) sum_{sigma in S(l,v)} sum_{tau in T(v, v-l+a)} Y(...)`.
pub fn u_independent_with_u(l: usize, a: usize, ns: &[Rational], u: &[u32], k: u32) -> Rational {
    assert!(a <= l && ns.len() == l && u.len() >= a);
    let x = x_value(k, u);
    let mut total = Rational::zero();
    for v in (l - a)..=l {
        let h = v + a - l;
        // U(h, u) = prod_{i=1}^h (X - i + 1 - sum_{g<i} u_g)
        let mut cap_u = Rational::one();
        for i in 1..=h {
            let head: u32 = u[..i - 1].iter().sum();
            cap_u *= &x - rat_int(i as i64 - 1) - rat_int(head as i64);
        }
        for sigma in set_partitions(l, v) {
            for tau in tau_sequences(v, h) {
                let mut y = Rational::one();
                for (i, &ti) in tau.iter().enumerate() {
                    let part = &sigma.parts()[ti - 1];
                    let arg = rat_int(u[i] as i64) + degsum(part, ns);
                    y *= falling(&arg, (part.len() - 1) as u32);
                }
                for (i, part) in sigma.parts().iter().enumerate() {
                    if tau.contains(&(i + 1)) {
                        continue;
                    }
                    y *= falling(&degsum(part, ns), (part.len() - 1) as u32);
                }
                total += &cap_u * y;
            }
        }
    }
    total
}

/// The u-free closed form the previous sum collapses to:
/// `sum_v (l-1)! v / ((l-a)! (l-v)! (v-l+a)!) (X)_{v-l+a} (sum n)_{l-v}`.
pub fn u_independent_without_u(l: usize, a: usize, ns: &[Rational], u: &[u32], k: u32) -> Rational {
    assert!(a <= l && ns.len() == l);
    let x = x_value(k, u);
    let sum_n: Rational = ns.iter().sum();
    let mut total = Rational::zero();
    for v in (l - a)..=l {
        let h = (v + a - l) as u32;
        let c = Rational::from_integer(factorial((l - 1) as u32)) * rat_int(v as i64)
            / (Rational::from_integer(factorial((l - a) as u32))
                * Rational::from_integer(factorial((l - v) as u32))
                * Rational::from_integer(factorial(h)));
        total += c * falling(&x, h) * falling(&sum_n, (l - v) as u32);
    }
    total
}

fn pass_check(name: &str, inputs: &str, fails: Vec<String>) -> crate::report::Check {
    crate::report::Check::new(
        name,
        inputs,
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    )
}

/// Non-decreasing exponent tuples of length `len` over `0..=max`. Products
/// are symmetric in their factors, so the sorted representatives cover every
/// instance up to the permutation invariance checked separately.
fn sorted_tuples(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    fn rec(cur: &mut Vec<u32>, pos: usize, lo: u32, max: u32, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur[pos] = v;
            rec(cur, pos + 1, v, max, out);
        }
    }
    rec(&mut cur, 0, 0, max, &mut out);
    out
}

/// The derivation-identity suite: subset identity over polynomials and
/// truncated series, the partition-sum constant on an exhaustive small grid,
/// permutation invariance, u-independence, and Leibniz spot checks.
pub fn identity_suite_derivation(seed: u64) -> Vec<crate::report::Check> {
    use crate::sampling;
    use rand::seq::SliceRandom;
    use rand::Rng;

    let mut rng = sampling::rng(seed);
    let mut checks = Vec::new();

    let random_poly = |rng: &mut rand_chacha::ChaCha8Rng, max_deg: usize| -> PolyT {
        let deg = rng.gen_range(0..=max_deg);
        PolyT(UniPoly::from_coeffs(sampling::small_rationals(rng, deg + 1)))
    };

    // subset identity over random polynomials, M <= 6, deg <= 4, 50 trials
    let mut fails = Vec::new();
    for trial in 0..50 {
        let m = rng.gen_range(0..=6usize);
        let fa = random_poly(&mut rng, 4);
        let fb = random_poly(&mut rng, 4);
        let fs: Vec<PolyT> = (0..m).map(|_| random_poly(&mut rng, 4)).collect();
        if deriv_set_lhs(&fa, &fb, &fs) != deriv_set_rhs(&fa, &fb, &fs) {
            fails.push(format!("trial={trial} M={m}"));
        }
    }
    checks.push(pass_check(
        "deriv_subset_poly",
        "50 random polynomial instances, M<=6, deg<=4",
        fails,
    ));

    // subset identity over truncated series, order 12, 20 trials
    let mut fails = Vec::new();
    for trial in 0..20 {
        let m = rng.gen_range(0..=6usize);
        let order = 12;
        let work = order + m; // headroom: each derivative consumes one order
        let fa = TruncSeries::from_coeffs(sampling::small_rationals(&mut rng, work + 1));
        let fb = TruncSeries::from_coeffs(sampling::small_rationals(&mut rng, work + 1));
        let fs: Vec<TruncSeries> = (0..m)
            .map(|_| TruncSeries::from_coeffs(sampling::small_rationals(&mut rng, work + 1)))
            .collect();
        let lhs = deriv_set_lhs(&fa, &fb, &fs);
        let rhs = deriv_set_rhs(&fa, &fb, &fs);
        if !lhs.agrees_to(&rhs, order) {
            fails.push(format!("trial={trial} M={m}"));
        }
    }
    checks.push(pass_check(
        "deriv_subset_series",
        "20 random truncated-series instances, order 12, M<=6",
        fails,
    ));

    // partition-sum constant, exhaustive grid: N <= 5, 0 <= j < N, k <= N-j,
    // sum u <= j with u_i <= 3, f_i = t^{n_i} with n_i <= 3 (sorted tuples;
    // permutation invariance is its own check below)
    let mut fails = Vec::new();
    for n in 1..=5usize {
        for exps in sorted_tuples(n, 3) {
            let fs: Vec<PolyT> = exps.iter().map(|&e| PolyT::t_pow(e)).collect();
            for j in 0..n {
                for k in 0..=(n - j) {
                    for total_u in 0..=j as u32 {
                        for u in crate::combinatorics::compositions(total_u, k) {
                            if u.iter().any(|&ui| ui > 3) {
                                continue;
                            }
                            match check_s_tau(j, &fs, &u) {
                                Ok(true) => {}
                                _ => fails.push(format!("N={n} j={j} u={u:?} exps={exps:?}")),
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push(pass_check(
        "deriv_partition_constant",
        "exhaustive N<=5, j<N, k<=N-j, sum u<=j, u_i<=3, f_i=t^{n_i}, n_i<=3",
        fails,
    ));

    // the big multi-derivative sum is symmetric in its factor list
    let mut fails = Vec::new();
    for trial in 0..30 {
        let n = rng.gen_range(2..=4usize);
        let j = rng.gen_range(0..n);
        let k = rng.gen_range(0..=(n - j).min(2));
        let u: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=2u32)).collect();
        let fs: Vec<PolyT> = (0..n).map(|_| random_poly(&mut rng, 3)).collect();
        let mut shuffled = fs.clone();
        shuffled.shuffle(&mut rng);
        if big_f(j, &fs, &u) != big_f(j, &shuffled, &u) {
            fails.push(format!("trial={trial} N={n} j={j} u={u:?}"));
        }
    }
    checks.push(pass_check(
        "deriv_sum_symmetry",
        "30 random permuted factor lists, N<=4",
        fails,
    ));

    // the u-dependent partition sum collapses to a u-free closed form
    let mut fails = Vec::new();
    for l in 1..=4usize {
        for a in 0..=l {
            for trial in 0..3 {
                let ns = sampling::small_rationals(&mut rng, l);
                let k = rng.gen_range(a as u32..=a as u32 + 2);
                let u: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=3u32)).collect();
                if u_independent_with_u(l, a, &ns, &u, k) != u_independent_without_u(l, a, &ns, &u, k) {
                    fails.push(format!("l={l} a={a} trial={trial} u={u:?}"));
                }
            }
        }
    }
    checks.push(pass_check(
        "deriv_u_independence",
        "l<=4, all a<=l, 3 random draws each",
        fails,
    ));

    // Leibniz rule on the concrete instances
    let mut fails = Vec::new();
    for trial in 0..50 {
        let f = random_poly(&mut rng, 4);
        let g = random_poly(&mut rng, 4);
        if !leibniz_holds(&f, &g) {
            fails.push(format!("trial={trial}"));
        }
    }
    checks.push(pass_check(
        "deriv_leibniz_poly",
        "50 random polynomial pairs",
        fails,
    ));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::scalar::rat;
    use rand::Rng;

    fn random_poly(rng: &mut rand_chacha::ChaCha8Rng, max_deg: usize) -> PolyT {
        let deg = rng.gen_range(0..=max_deg);
        PolyT(UniPoly::from_coeffs(sampling::small_rationals(rng, deg + 1)))
    }

    #[test]
    fn deriv_set_base_cases() {
        // M=0: fA * fB on both sides
        let fa = PolyT::t_pow(3);
        let fb = PolyT::t_pow(2);
        assert_eq!(deriv_set_lhs(&fa, &fb, &[]), deriv_set_rhs(&fa, &fb, &[]));
        assert_eq!(deriv_set_rhs(&fa, &fb, &[]), fa.mul(&fb));
        // M=1, all t: both sides delta(t^3) = 3t^2
        let t = PolyT::t_pow(1);
        let lhs = deriv_set_lhs(&t, &t, &[t.clone()]);
        let expect = PolyT(UniPoly::from_coeffs(vec![
            Rational::zero(),
            Rational::zero(),
            rat_int(3),
        ]));
        assert_eq!(lhs, expect);
        assert_eq!(lhs, deriv_set_rhs(&t, &t, &[t.clone()]));
    }

    #[test]
    fn deriv_set_random_polys() {
        let mut rng = sampling::rng(3);
        for m in 0..=4usize {
            for _ in 0..10 {
                let fa = random_poly(&mut rng, 3);
                let fb = random_poly(&mut rng, 3);
                let fs: Vec<PolyT> = (0..m).map(|_| random_poly(&mut rng, 3)).collect();
                assert_eq!(deriv_set_lhs(&fa, &fb, &fs), deriv_set_rhs(&fa, &fb, &fs));
            }
        }
    }

    #[test]
    fn deriv_set_truncated_series() {
        // order with headroom for the derivatives taken on each side
        let order = 12;
        for m in 0..=3usize {
            let work = order + m;
            let log = TruncSeries::neg_log(work);
            let fa = log.pow(2);
            let fb = log.pow(1);
            let fs: Vec<TruncSeries> = (0..m).map(|i| log.pow(i as u32 + 1)).collect();
            let lhs = deriv_set_lhs(&fa, &fb, &fs);
            let rhs = deriv_set_rhs(&fa, &fb, &fs);
            assert!(lhs.agrees_to(&rhs, order), "M={m}");
        }
    }

    #[test]
    fn leibniz_spot_checks() {
        let mut rng = sampling::rng(9);
        for _ in 0..100 {
            let f = random_poly(&mut rng, 4);
            let g = random_poly(&mut rng, 4);
            assert!(leibniz_holds(&f, &g));
        }
        let order = 10;
        for _ in 0..20 {
            let f = TruncSeries::from_coeffs(sampling::small_rationals(&mut rng, order + 1));
            let g = TruncSeries::from_coeffs(sampling::small_rationals(&mut rng, order + 1));
            let lhs = f.mul(&g).delta();
            let rhs = f.delta().mul(&g).add(&f.mul(&g.delta()));
            // one order is consumed by the derivative
            assert!(lhs.agrees_to(&rhs, order - 1));
        }
    }

    #[test]
    fn big_f_trivial_cases() {
        // k=0, j=0: only the all-singletons partition survives, giving prod f_i
        let fs = vec![PolyT::t_pow(2), PolyT::t_pow(1), PolyT::t_pow(3)];
        let f = big_f(0, &fs, &[]);
        let expect = fs[0].mul(&fs[1]).mul(&fs[2]);
        assert_eq!(f, expect);
        // N=1
        let fs = vec![PolyT::t_pow(2)];
        assert_eq!(big_f(0, &fs, &[]), fs[0].clone());
    }

    #[test]
    fn big_f_against_big_c() {
        // N=3, j=1, k=1, u=(0), f_i = t: F = C * delta(t^3)
        let fs = vec![PolyT::t_pow(1); 3];
        let f = big_f(1, &fs, &[0]);
        let c = big_c(1, 3, &[0]).unwrap();
        assert_eq!(c, rat_int(4));
        let rhs = fs[0].mul(&fs[1]).mul(&fs[2]).delta();
        assert_eq!(f, rhs.scale_int(&c.numer().clone()));
        assert!(check_s_tau(1, &fs, &[0]).unwrap());
    }

    #[test]
    fn big_c_examples_and_errors() {
        // k=0 reduces to (N-1)!(N-j)/((N-j)! j!)
        assert_eq!(big_c(0, 2, &[]).unwrap(), rat_int(1));
        assert_eq!(big_c(1, 3, &[]).unwrap(), rat(2 * 2, 2)); // 2!*2/(2!*1!) = 2
        assert!(big_c(0, 3, &[1]).is_err()); // j - sum u < 0
        assert!(big_c(2, 2, &[0]).is_err()); // N - j - k < 0
    }

    #[test]
    fn s_tau_small_grid() {
        for n in 1..=4usize {
            for j in 0..n {
                for k in 0..=(n - j).min(2) {
                    let us = (0..=j as u32)
                        .flat_map(|m| crate::combinatorics::compositions(m, k))
                        .collect::<Vec<_>>();
                    for u in us {
                        let fs: Vec<PolyT> = (0..n).map(|i| PolyT::t_pow((i % 3) as u32 + 1)).collect();
                        assert!(
                            check_s_tau(j, &fs, &u).unwrap(),
                            "N={n} j={j} u={u:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn u_independent_evaluators_agree() {
        let mut rng = sampling::rng(41);
        for l in 1..=4usize {
            for a in 0..=l {
                for _ in 0..5 {
                    let ns = sampling::small_rationals(&mut rng, l);
                    let k = rng.gen_range(a as u32..=a as u32 + 2);
                    let u: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=3u32)).collect();
                    let with_u = u_independent_with_u(l, a, &ns, &u, k);
                    let without_u = u_independent_without_u(l, a, &ns, &u, k);
                    assert_eq!(with_u, without_u, "l={l} a={a} u={u:?}");
                }
            }
        }
    }

    #[test]
    fn tau_sequence_counts() {
        assert_eq!(tau_sequences(4, 2).len(), 6);
        assert_eq!(tau_sequences(3, 0), vec![Vec::<usize>::new()]);
        assert!(tau_sequences(2, 3).is_empty());
    }
}
