//! Set partitions, ordered multisets, Stirling tables, shifted Stirling
//! polynomials, Newton-series reconstruction, and the partition/subset
//! identities built from them, implemented as exact executable checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::report::Check;
use crate::sampling;
use crate::scalar::{
    binomial, binomial_rational, factorial, falling, rat_int, rat_to_string, Rational, UniPoly,
};
use crate::{Error, Result};

/// A d-tuple of non-negative integers, the derivative multi-index `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty());
        MultiIndex { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Total order `sum n_i`.
    pub fn order(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// All multi-indices of the given dimension with total order <= max.
    pub fn all_up_to(dim: usize, max_order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fn rec(cur: &mut Vec<u32>, pos: usize, budget: u32, out: &mut Vec<MultiIndex>) {
            if pos == cur.len() {
                out.push(MultiIndex::new(cur.clone()));
                return;
            }
            for v in 0..=budget {
                cur[pos] = v;
                rec(cur, pos + 1, budget - v, out);
            }
            cur[pos] = 0;
        }
        rec(&mut cur, 0, max_order, &mut out);
        out.sort();
        out
    }
}

/// An N-tuple of integers in `[1, d]`, recording one derivative per slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedMultiset {
    entries: Vec<usize>,
}

impl OrderedMultiset {
    pub fn new(entries: Vec<usize>) -> Self {
        assert!(!entries.is_empty());
        assert!(entries.iter().all(|&e| e >= 1));
        OrderedMultiset { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    /// 1-based access `I(i)`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    /// Multiplicity vector over `[1, d]`.
    pub fn multiplicities(&self, d: usize) -> MultiIndex {
        let mut m = vec![0u32; d];
        for &e in &self.entries {
            assert!(e <= d);
            m[e - 1] += 1;
        }
        MultiIndex::new(m)
    }

    /// The canonical multiset of a multi-index: value i repeated n_i times.
    pub fn from_multi_index(n: &MultiIndex) -> Option<Self> {
        let mut entries = Vec::new();
        for (i, &c) in n.entries().iter().enumerate() {
            for _ in 0..c {
                entries.push(i + 1);
            }
        }
        if entries.is_empty() {
            None
        } else {
            Some(OrderedMultiset::new(entries))
        }
    }
}

/// `I(h-hat)`: remove the element at 1-based index `h`.
pub fn remove_index(i: &OrderedMultiset, h: usize) -> Result<OrderedMultiset> {
    if i.order() < 2 {
        return Err(Error::InvalidArgument(
            "cannot remove from a multiset of order 1".into(),
        ));
    }
    if h < 1 || h > i.order() {
        return Err(Error::InvalidArgument(format!(
            "index {h} out of range 1..={}",
            i.order()
        )));
    }
    let mut entries = i.entries.clone();
    entries.remove(h - 1);
    Ok(OrderedMultiset::new(entries))
}

/// Partition of `[1, N]` into nonempty parts, parts ordered by minimum,
/// elements within a part strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPartition {
    parts: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }
}

/// All partitions of `[1, N]` into exactly `k` parts, in restricted-growth
/// order. Empty when `k > N` or `k == 0`.
pub fn set_partitions(n: usize, k: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    // Assign elements 1..=n in order; part j may be opened only after part
    // j-1, which makes the min-ordering canonical by construction.
    let mut parts: Vec<Vec<usize>> = Vec::new();
    fn rec(e: usize, n: usize, k: usize, parts: &mut Vec<Vec<usize>>, out: &mut Vec<SetPartition>) {
        if e > n {
            if parts.len() == k {
                out.push(SetPartition {
                    parts: parts.clone(),
                });
            }
            return;
        }
        let remaining = n - e + 1;
        for j in 0..parts.len() {
            if parts.len() + remaining - 1 >= k {
                parts[j].push(e);
                rec(e + 1, n, k, parts, out);
                parts[j].pop();
            }
        }
        if parts.len() < k {
            parts.push(vec![e]);
            rec(e + 1, n, k, parts, out);
            parts.pop();
        }
    }
    rec(1, n, k, &mut parts, &mut out);
    out
}

/// All subsets of `[1, m]` (as sorted vectors), 2^m of them.
pub fn subsets(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(1 << m);
    for mask in 0u64..(1u64 << m) {
        let s: Vec<usize> = (1..=m).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        out.push(s);
    }
    out
}

/// Complement of a sorted subset of `[1, m]`.
pub fn complement(w: &[usize], m: usize) -> Vec<usize> {
    (1..=m).filter(|i| !w.contains(i)).collect()
}

/// Multiset partitions of `I` with `k` parts: the image of the set partitions
/// of `[1, |I|]` under `J_i = (I(s_i(1)), ..., I(s_i(m)))`.
pub fn multiset_partitions(i: &OrderedMultiset, k: usize) -> Vec<Vec<OrderedMultiset>> {
    set_partitions(i.order(), k)
        .into_iter()
        .map(|s| {
            s.parts()
                .iter()
                .map(|part| OrderedMultiset::new(part.iter().map(|&p| i.at(p)).collect()))
                .collect()
        })
        .collect()
}

/// All compositions of `n` into `k` non-negative parts.
pub fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(vec![]);
        }
        return out;
    }
    let mut cur = vec![0u32; k];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(cur, pos + 1, left - v, out);
        }
    }
    rec(&mut cur, 0, n, &mut out);
    out
}

/// Tables of unsigned first-kind and second-kind Stirling numbers built from
/// their recurrences, arbitrary precision.
pub struct StirlingTables {
    n_max: usize,
    first: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigInt>>,
}

impl StirlingTables {
    pub const DEFAULT_N_MAX: usize = 32;

    pub fn new(n_max: usize) -> Self {
        let mut first = vec![vec![BigInt::zero(); n_max + 2]; n_max + 1];
        let mut second = vec![vec![BigInt::zero(); n_max + 2]; n_max + 1];
        first[0][0] = BigInt::one();
        second[0][0] = BigInt::one();
        for n in 0..n_max {
            for r in 0..=n {
                // [n r] + n [n r+1] = [n+1 r+1]
                let v = &first[n][r] + BigInt::from(n) * &first[n][r + 1];
                first[n + 1][r + 1] = v;
                // {n r} + (r+1) {n r+1} = {n+1 r+1}
                let v = &second[n][r] + BigInt::from(r + 1) * &second[n][r + 1];
                second[n + 1][r + 1] = v;
            }
        }
        StirlingTables {
            n_max,
            first,
            second,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Unsigned Stirling number of the first kind `[n r]`.
    pub fn first_kind(&self, n: usize, r: usize) -> BigInt {
        assert!(n <= self.n_max, "table built up to {}", self.n_max);
        if r > n {
            BigInt::zero()
        } else {
            self.first[n][r].clone()
        }
    }

    /// Stirling number of the second kind `{n r}`.
    pub fn second_kind(&self, n: usize, r: usize) -> BigInt {
        assert!(n <= self.n_max, "table built up to {}", self.n_max);
        if r > n {
            BigInt::zero()
        } else {
            self.second[n][r].clone()
        }
    }
}

impl Default for StirlingTables {
    fn default() -> Self {
        StirlingTables::new(Self::DEFAULT_N_MAX)
    }
}

/// Shifted Stirling number `[N r]_X`: the coefficient of `Y^r` in
/// `(Y + X - 1)_N`, as a polynomial in `X`. Zero when `N < 0`.
pub fn stirling_shifted(n: i64, r: u32) -> UniPoly {
    if n < 0 {
        return UniPoly::zero();
    }
    // Track (Y + X - 1)_N as coefficients in Y, each a polynomial in X.
    let mut coeffs: Vec<UniPoly> = vec![UniPoly::one()];
    for i in 1..=n {
        // multiply by (Y + X - i)
        let shift = UniPoly::x().sub(&UniPoly::constant(rat_int(i)));
        let mut next: Vec<UniPoly> = vec![UniPoly::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] = next[j + 1].add(c);
            next[j] = next[j].add(&c.mul(&shift));
        }
        coeffs = next;
    }
    coeffs
        .into_iter()
        .nth(r as usize)
        .unwrap_or_else(UniPoly::zero)
}

/// `[N r]_X` evaluated at a rational `x` without building the X-polynomial.
pub fn stirling_shifted_at(n: i64, r: u32, x: &Rational) -> Rational {
    if n < 0 {
        return Rational::zero();
    }
    let mut coeffs: Vec<Rational> = vec![Rational::one()];
    for i in 1..=n {
        let c = x - rat_int(i);
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (j, a) in coeffs.iter().enumerate() {
            next[j + 1] += a;
            next[j] += a * &c;
        }
        coeffs = next;
    }
    coeffs
        .into_iter()
        .nth(r as usize)
        .unwrap_or_else(Rational::zero)
}

/// Reconstruct `F(x)` from its values at `1, ..., m+1` via the Newton series
/// `F(x) = sum_{k=1}^{m+1} (x-1)_{k-1}/(k-1)! sum_r (-1)^{k-1-r} C(k-1,r) F(r+1)`.
pub fn newton_reconstruct(samples: &[Rational], x: &Rational) -> Rational {
    let mut total = Rational::zero();
    let xm1 = x - rat_int(1);
    for k in 1..=samples.len() {
        let k1 = (k - 1) as u32;
        let mut inner = Rational::zero();
        for r in 0..k {
            let sign = if (k - 1 - r) % 2 == 0 { 1 } else { -1 };
            inner += rat_int(sign)
                * Rational::from_integer(binomial(k1, r as u32))
                * &samples[r];
        }
        total += falling(&xm1, k1) / Rational::from_integer(factorial(k1)) * inner;
    }
    total
}

/// Both sides of the partition identity in `nu` and `x_1..x_N`:
/// the alternating Newton-style sum on the left, a sum over `S(N, k)` of
/// products of falling factorials on the right. Returns true iff they agree
/// at the given rational point.
pub fn identity_check_nu(n: usize, k: usize, nu: &Rational, xs: &[Rational]) -> bool {
    assert!(1 <= k && k <= n && xs.len() == n);
    let sum_x: Rational = xs.iter().sum();
    let k1 = (k - 1) as u32;
    let mut lhs = Rational::zero();
    for r in 0..k {
        let sign = if (k - 1 - r) % 2 == 0 { 1 } else { -1 };
        let arg = rat_int(r as i64 + 1) * nu - rat_int(1) + &sum_x;
        lhs += rat_int(sign)
            * Rational::from_integer(binomial(k1, r as u32))
            * falling(&arg, (n - 1) as u32);
    }
    lhs /= Rational::from_integer(factorial(k1));

    let mut rhs = Rational::zero();
    for s in set_partitions(n, k) {
        let mut prod = Rational::one();
        for part in s.parts() {
            let sum_part: Rational = part.iter().map(|&m| xs[m - 1].clone()).sum();
            let arg = nu - rat_int(1) + sum_part;
            prod *= falling(&arg, (part.len() - 1) as u32);
        }
        rhs += prod;
    }
    let mut nu_pow = Rational::one();
    for _ in 0..k1 {
        nu_pow *= nu;
    }
    rhs *= nu_pow;

    lhs == rhs
}

/// The `nu = 1` specialization:
/// `C(N-1, j) (sum x)_j = sum_{s in S(N, N-j)} prod (sum_{s_i} x)_{|s_i|-1}`.
/// Both sides are homogeneous of degree `j`; the falling-factorial order on
/// the left follows from the Newton-coefficient lemma with `n = N-1`,
/// `i = k-1 = N-j-1`, which leaves `(sum x)_{n-i}`.
pub fn identity_check_nu1(n: usize, j: usize, xs: &[Rational]) -> bool {
    assert!(j < n && xs.len() == n);
    let sum_x: Rational = xs.iter().sum();
    let lhs =
        Rational::from_integer(binomial((n - 1) as u32, j as u32)) * falling(&sum_x, j as u32);
    let mut rhs = Rational::zero();
    for s in set_partitions(n, n - j) {
        let mut prod = Rational::one();
        for part in s.parts() {
            let sum_part: Rational = part.iter().map(|&m| xs[m - 1].clone()).sum();
            prod *= falling(&sum_part, (part.len() - 1) as u32);
        }
        rhs += prod;
    }
    lhs == rhs
}

/// Subset convolution of shifted Stirling numbers:
/// `sum_{w subset [1,M]} [|w^c|-1, a-1]_{X_wc} [|w|, b]_{X_w}
///   = C(a+b, a) [M, a+b]_{X_all}`,
/// where each shifted number is evaluated at the sum of the `x_i` over the
/// indicated subset. Exact check at a rational point.
pub fn identity_check_stirling_set(m: usize, a: u32, b: u32, xs: &[Rational]) -> bool {
    assert!(a >= 1 && xs.len() == m);
    let mut lhs = Rational::zero();
    for w in subsets(m) {
        let wc = complement(&w, m);
        let sum_w: Rational = w.iter().map(|&i| xs[i - 1].clone()).sum();
        let sum_wc: Rational = wc.iter().map(|&i| xs[i - 1].clone()).sum();
        let left = stirling_shifted_at(wc.len() as i64 - 1, a - 1, &sum_wc);
        if left.is_zero() {
            continue;
        }
        lhs += left * stirling_shifted_at(w.len() as i64, b, &sum_w);
    }
    let sum_all: Rational = xs.iter().sum();
    let rhs = Rational::from_integer(binomial(a + b, a))
        * stirling_shifted_at(m as i64, a + b, &sum_all);
    lhs == rhs
}

fn big_to_rat(b: BigInt) -> Rational {
    Rational::from_integer(b)
}

/// Coefficients of `(-ln(1-t))^n / n!` up to `t^order`.
fn neg_log_power_over_factorial(n: u32, order: usize) -> Vec<Rational> {
    // -ln(1-t) = sum_{k>=1} t^k / k
    let mut log: Vec<Rational> = vec![Rational::zero(); order + 1];
    for k in 1..=order {
        log[k] = rat_int(1) / rat_int(k as i64);
    }
    let mut acc: Vec<Rational> = vec![Rational::zero(); order + 1];
    acc[0] = Rational::one();
    for _ in 0..n {
        let mut next = vec![Rational::zero(); order + 1];
        for i in 0..=order {
            if acc[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if !log[j].is_zero() {
                    next[i + j] += &acc[i] * &log[j];
                }
            }
        }
        acc = next;
    }
    let f = big_to_rat(factorial(n));
    acc.into_iter().map(|c| c / &f).collect()
}

/// Run the Stirling-identity suite exactly and return one record per identity
/// family. Randomized families draw from the given seed.
pub fn identity_suite_stirling(seed: u64) -> Vec<Check> {
    let mut rng = sampling::rng(seed);
    let tables = StirlingTables::default();
    let mut checks = Vec::new();

    // (1/a!) sum (-1)^{a-r} C(a,r) (r+1)^n = {n+1, a+1}, a,n <= 12
    let mut fails = Vec::new();
    for a in 0..=12u32 {
        for n in 0..=12u32 {
            let mut lhs = Rational::zero();
            for r in 0..=a {
                let sign = if (a - r) % 2 == 0 { 1 } else { -1 };
                let mut pw = Rational::one();
                for _ in 0..n {
                    pw *= rat_int(r as i64 + 1);
                }
                lhs += rat_int(sign) * big_to_rat(binomial(a, r)) * pw;
            }
            lhs /= big_to_rat(factorial(a));
            let rhs = big_to_rat(tables.second_kind(n as usize + 1, a as usize + 1));
            if lhs != rhs {
                fails.push(format!("a={a} n={n}"));
            }
        }
    }
    checks.push(Check::new(
        "stirling_2_a_n",
        "a,n in 0..=12",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    // [N r]_{X+Y} = sum_i X^i C(r+i, i) [N r+i]_Y as polynomials in X,
    // Y instantiated at 5 rational points, N <= 10
    let y_points = [rat_int(0), rat_int(1), rat_int(-2), crate::scalar::rat(3, 2), crate::scalar::rat(-5, 7)];
    let mut fails = Vec::new();
    for n in 0..=10i64 {
        for r in 0..=n as u32 {
            for y in &y_points {
                // LHS: coefficient of Y'^r in (Y' + X + y - 1)_N as UniPoly in X,
                // i.e. the shifted polynomial with X replaced by X + y.
                let mut lhs_coeffs: Vec<UniPoly> = vec![UniPoly::one()];
                let shift = UniPoly::x().add(&UniPoly::constant(y.clone()));
                for i in 1..=n {
                    let c = shift.sub(&UniPoly::constant(rat_int(i)));
                    let mut next = vec![UniPoly::zero(); lhs_coeffs.len() + 1];
                    for (j, p) in lhs_coeffs.iter().enumerate() {
                        next[j + 1] = next[j + 1].add(p);
                        next[j] = next[j].add(&p.mul(&c));
                    }
                    lhs_coeffs = next;
                }
                let lhs = lhs_coeffs
                    .into_iter()
                    .nth(r as usize)
                    .unwrap_or_else(UniPoly::zero);
                let mut rhs = UniPoly::zero();
                for i in 0..=(n as u32 - r) {
                    let coeff = big_to_rat(binomial(r + i, i)) * stirling_shifted_at(n, r + i, y);
                    let mut mono = vec![Rational::zero(); i as usize + 1];
                    mono[i as usize] = coeff;
                    rhs = rhs.add(&UniPoly::from_coeffs(mono));
                }
                if lhs != rhs {
                    fails.push(format!("N={n} r={r} Y={}", rat_to_string(y)));
                }
            }
        }
    }
    checks.push(Check::new(
        "stirling_x_y",
        "N<=10, 5 rational Y points",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    // (-ln(1-t))^n / n! = sum_k [k n]/k! t^k through order 12
    let order = 12;
    let mut fails = Vec::new();
    for n in 0..=order as u32 {
        let lhs = neg_log_power_over_factorial(n, order);
        for k in 0..=order {
            let rhs = big_to_rat(tables.first_kind(k, n as usize)) / big_to_rat(factorial(k as u32));
            if lhs[k] != rhs {
                fails.push(format!("n={n} k={k}"));
            }
        }
    }
    checks.push(Check::new(
        "stirling_gf",
        "truncation order 12",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    // sum_{i=r}^k {i r} C(k,i) = {k+1 r+1}, k <= 15
    let big_tables = StirlingTables::new(16);
    let mut fails = Vec::new();
    for k in 0..=15usize {
        for r in 0..=k {
            let mut lhs = BigInt::zero();
            for i in r..=k {
                lhs += big_tables.second_kind(i, r) * binomial(k as u32, i as u32);
            }
            let rhs = big_tables.second_kind(k + 1, r + 1);
            if lhs != rhs {
                fails.push(format!("k={k} r={r}"));
            }
        }
    }
    checks.push(Check::new(
        "stirling_2_sum",
        "0<=r<=k<=15",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    // (a+b)_n = sum_i C(n,i) (a)_i (b)_{n-i} at random rational points
    let mut fails = Vec::new();
    for trial in 0..100 {
        let a = sampling::small_rational(&mut rng);
        let b = sampling::small_rational(&mut rng);
        let n = rng.gen_range(0..=8u32);
        let lhs = falling(&(&a + &b), n);
        let mut rhs = Rational::zero();
        for i in 0..=n {
            rhs += big_to_rat(binomial(n, i)) * falling(&a, i) * falling(&b, n - i);
        }
        if lhs != rhs {
            fails.push(format!(
                "trial={trial} a={} b={} n={n}",
                rat_to_string(&a),
                rat_to_string(&b)
            ));
        }
    }
    checks.push(Check::new(
        "fall_identity",
        "100 random rational points, n<=8",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    // sum_r (-1)^{i-r} C(i,r) C(b+r, n) = C(b, n-i) at random rational b
    let mut fails = Vec::new();
    for trial in 0..100 {
        let b = sampling::small_rational(&mut rng);
        let i = rng.gen_range(0..=6u32);
        let n = rng.gen_range(0..=6u32);
        let mut lhs = Rational::zero();
        for r in 0..=i {
            let sign = if (i - r) % 2 == 0 { 1 } else { -1 };
            lhs += rat_int(sign)
                * big_to_rat(binomial(i, r))
                * binomial_rational(&(&b + rat_int(r as i64)), n);
        }
        let rhs = if n >= i {
            binomial_rational(&b, n - i)
        } else {
            Rational::zero()
        };
        if lhs != rhs {
            fails.push(format!("trial={trial} b={} i={i} n={n}", rat_to_string(&b)));
        }
    }
    checks.push(Check::new(
        "newton_coeff",
        "100 random rational b, i,n<=6",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    // Newton-series reconstruction of random polynomials, deg <= 6
    let mut fails = Vec::new();
    for trial in 0..50 {
        let deg = rng.gen_range(0..=6usize);
        let coeffs = sampling::small_rationals(&mut rng, deg + 1);
        let p = UniPoly::from_coeffs(coeffs);
        let samples: Vec<Rational> = (1..=deg as i64 + 1).map(|v| p.eval(&rat_int(v))).collect();
        let x = sampling::small_rational(&mut rng);
        if newton_reconstruct(&samples, &x) != p.eval(&x) {
            fails.push(format!("trial={trial}"));
        }
    }
    checks.push(Check::new(
        "newton_series_reconstruct",
        "50 random rational polynomials, deg<=6",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    checks
}

/// Randomized checks of the partition identities in `nu` and their `nu = 1`
/// specialization, plus the shifted-Stirling subset convolution.
pub fn identity_suite_partition(seed: u64) -> Vec<Check> {
    let mut rng = sampling::rng(seed);
    let mut checks = Vec::new();

    let mut fails = Vec::new();
    for trial in 0..200 {
        let n = rng.gen_range(1..=6usize);
        let k = rng.gen_range(1..=n);
        let nu = sampling::small_rational(&mut rng);
        let xs = sampling::small_rationals(&mut rng, n);
        if !identity_check_nu(n, k, &nu, &xs) {
            fails.push(format!("trial={trial} N={n} k={k}"));
        }
    }
    checks.push(Check::new(
        "partition_nu",
        "200 random rational points, N<=6",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    let mut fails = Vec::new();
    for trial in 0..200 {
        let n = rng.gen_range(1..=7usize);
        let j = rng.gen_range(0..n);
        let xs = sampling::small_rationals(&mut rng, n);
        if !identity_check_nu1(n, j, &xs) {
            fails.push(format!("trial={trial} N={n} j={j}"));
        }
    }
    checks.push(Check::new(
        "partition_nu_one",
        "200 random rational points, N<=7",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    let mut fails = Vec::new();
    for trial in 0..50 {
        let m = rng.gen_range(0..=6usize);
        let a = rng.gen_range(1..=4u32);
        let b = rng.gen_range(0..=4u32);
        let xs = sampling::small_rationals(&mut rng, m);
        if !identity_check_stirling_set(m, a, b, &xs) {
            fails.push(format!("trial={trial} M={m} a={a} b={b}"));
        }
    }
    checks.push(Check::new(
        "stirling_subset_convolution",
        "50 random rational points, M<=6",
        "all equal",
        if fails.is_empty() {
            "all equal".into()
        } else {
            format!("failed at {}", fails.join(", "))
        },
        fails.is_empty(),
    ));

    checks
}

/// Sign `(-1)^e` as a rational, for possibly negative `e`.
pub fn sign_pow(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn set_partitions_3_2() {
        let ps = set_partitions(3, 2);
        let got: Vec<Vec<Vec<usize>>> = ps.iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(ps.len(), 3);
        assert!(got.contains(&vec![vec![1], vec![2, 3]]));
        assert!(got.contains(&vec![vec![1, 2], vec![3]]));
        assert!(got.contains(&vec![vec![1, 3], vec![2]]));
    }

    #[test]
    fn set_partitions_forced_and_empty() {
        let ps = set_partitions(4, 4);
        assert_eq!(ps.len(), 1);
        assert_eq!(
            ps[0].parts(),
            &[vec![1], vec![2], vec![3], vec![4]]
        );
        assert!(set_partitions(3, 5).is_empty());
        assert_eq!(set_partitions(4, 2).len(), 7);
    }

    #[test]
    fn set_partition_counts_match_second_kind() {
        let tables = StirlingTables::default();
        for n in 1..=9usize {
            for k in 1..=n {
                assert_eq!(
                    BigInt::from(set_partitions(n, k).len()),
                    tables.second_kind(n, k),
                    "N={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn multiset_partition_examples() {
        let i = OrderedMultiset::new(vec![1, 1]);
        let ps = multiset_partitions(&i, 2);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0], vec![
            OrderedMultiset::new(vec![1]),
            OrderedMultiset::new(vec![1])
        ]);

        let i = OrderedMultiset::new(vec![1, 2]);
        let ps = multiset_partitions(&i, 1);
        assert_eq!(ps, vec![vec![OrderedMultiset::new(vec![1, 2])]]);

        let i = OrderedMultiset::new(vec![1, 1, 2]);
        assert_eq!(multiset_partitions(&i, 2).len(), 3);
    }

    #[test]
    fn remove_index_examples() {
        let i = OrderedMultiset::new(vec![3, 1, 2]);
        assert_eq!(
            remove_index(&i, 2).unwrap(),
            OrderedMultiset::new(vec![3, 2])
        );
        assert_eq!(
            remove_index(&OrderedMultiset::new(vec![1, 1]), 1).unwrap(),
            OrderedMultiset::new(vec![1])
        );
        assert_eq!(
            remove_index(&OrderedMultiset::new(vec![2, 2, 2]), 3).unwrap(),
            OrderedMultiset::new(vec![2, 2])
        );
        assert!(remove_index(&OrderedMultiset::new(vec![1]), 1).is_err());
    }

    #[test]
    fn stirling_shifted_examples() {
        assert!(stirling_shifted(-1, 0).is_zero());
        // (Y + X - 1)_1 = Y + X - 1, so [1 0]_X = X - 1
        let p = stirling_shifted(1, 0);
        assert_eq!(p.coeff(0), rat_int(-1));
        assert_eq!(p.coeff(1), rat_int(1));
        // leading coefficient of a degree-2 falling factorial
        assert_eq!(stirling_shifted(2, 2), UniPoly::one());
    }

    #[test]
    fn stirling_shifted_specializations() {
        let tables = StirlingTables::default();
        for n in 0..=12i64 {
            for r in 0..=n as u32 {
                let sign = sign_pow(n - r as i64);
                let at0 = stirling_shifted_at(n, r, &Rational::zero());
                let expect0 = &sign
                    * Rational::from_integer(tables.first_kind(n as usize + 1, r as usize + 1));
                assert_eq!(at0, expect0, "X=0, N={n} r={r}");
                let at1 = stirling_shifted_at(n, r, &rat_int(1));
                let expect1 =
                    &sign * Rational::from_integer(tables.first_kind(n as usize, r as usize));
                assert_eq!(at1, expect1, "X=1, N={n} r={r}");
                // polynomial and direct evaluation agree
                assert_eq!(stirling_shifted(n, r).eval(&rat(3, 7)), stirling_shifted_at(n, r, &rat(3, 7)));
            }
        }
    }

    #[test]
    fn newton_reconstruct_examples() {
        // degree-0
        let samples = vec![rat_int(4)];
        assert_eq!(newton_reconstruct(&samples, &rat(17, 3)), rat_int(4));
        // F(x) = x
        let samples = vec![rat_int(1), rat_int(2)];
        assert_eq!(newton_reconstruct(&samples, &rat_int(5)), rat_int(5));
        // F(x) = x^2 at x = 1/2
        let samples = vec![rat_int(1), rat_int(4), rat_int(9)];
        assert_eq!(newton_reconstruct(&samples, &rat(1, 2)), rat(1, 4));
    }

    #[test]
    fn nu_identity_examples() {
        // k=1 is trivially true
        assert!(identity_check_nu(3, 1, &rat(2, 3), &[rat_int(1), rat(1, 2), rat_int(-2)]));
        // N=2, k=2, nu=1, xs=(1,1): both sides 1
        assert!(identity_check_nu(2, 2, &rat_int(1), &[rat_int(1), rat_int(1)]));
    }

    #[test]
    fn nu_identity_random() {
        let mut rng = sampling::rng(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6usize);
            let k = rng.gen_range(1..=n);
            let nu = sampling::small_rational(&mut rng);
            let xs = sampling::small_rationals(&mut rng, n);
            assert!(identity_check_nu(n, k, &nu, &xs), "N={n} k={k}");
        }
    }

    #[test]
    fn stirling_set_examples() {
        assert!(identity_check_stirling_set(0, 1, 0, &[]));
        assert!(identity_check_stirling_set(1, 1, 0, &[rat_int(1)]));
        let mut rng = sampling::rng(5);
        for _ in 0..30 {
            let m = rng.gen_range(0..=6usize);
            let a = rng.gen_range(1..=4u32);
            let b = rng.gen_range(0..=4u32);
            let xs = sampling::small_rationals(&mut rng, m);
            assert!(identity_check_stirling_set(m, a, b, &xs), "M={m} a={a} b={b}");
        }
    }

    #[test]
    fn nu1_identity_random() {
        let mut rng = sampling::rng(23);
        for _ in 0..30 {
            let n = rng.gen_range(1..=7usize);
            let j = rng.gen_range(0..n);
            let xs = sampling::small_rationals(&mut rng, n);
            assert!(identity_check_nu1(n, j, &xs), "N={n} j={j}");
        }
    }

    #[test]
    fn suite_passes() {
        let checks = identity_suite_stirling(7);
        for c in &checks {
            assert!(c.pass, "{}: {}", c.name, c.actual);
        }
    }

    #[test]
    fn compositions_basic() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 0), vec![Vec::<u32>::new()]);
        assert!(compositions(2, 0).is_empty());
    }
}
