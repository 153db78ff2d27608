//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Every S-matrix entry, twist and quantum dimension in this crate is an
//! element of some `Q(zeta_N)`, stored as `N` rational coefficients over the
//! power basis `{zeta_N^k : 0 <= k < N}` and reduced modulo the `N`-th
//! cyclotomic polynomial after every operation. Reduction makes the
//! representation canonical on the first `phi(N)` coefficients (the rest are
//! zero), so equality is a coefficient comparison and all category identities
//! can be checked with `==` instead of a tolerance.
//!
//! Binary operations between different orders embed both operands into
//! `Q(zeta_lcm)`; the order is never shrunk silently. Orders are capped at
//! [`ORDER_CAP`] so runaway lcm growth is an explicit error instead of a
//! hang.
//!
//! [`Scalar`] wraps the exact representation together with a quarantined
//! complex-float variant used by the file format. The two variants never mix
//! inside one operation; conversion is explicit via [`Scalar::to_complex`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

/// Largest cyclotomic field order accepted by any operation.
pub const ORDER_CAP: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("cyclotomic order {0} exceeds the cap {ORDER_CAP}")]
    OrderCap(u64),
    #[error("root of unity denominator must be positive")]
    ZeroDenominator,
    #[error("mixed exact/float arithmetic; convert explicitly first")]
    MixedVariant,
    #[error("no exact square root available: {0}")]
    NoExactSqrt(String),
}

// ---------------------------------------------------------------------------
// integer polynomial helpers for cyclotomic polynomials
// ---------------------------------------------------------------------------

/// Exact division of integer polynomials, panics if not divisible.
/// Little-endian coefficients, divisor monic or with unit content in our use.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    assert!(!lead.is_zero());
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    while rem.iter().rev().take_while(|c| c.is_zero()).count() < rem.len().saturating_sub(dd) {
        let rd = rem.len() - 1 - rem.iter().rev().take_while(|c| c.is_zero()).count();
        if rd < dd {
            break;
        }
        let (q, r) = rem[rd].div_rem(lead);
        assert!(r.is_zero(), "non-exact cyclotomic division");
        let shift = rd - dd;
        for (i, dc) in den.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &q * dc;
        }
        quot[shift] = q;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// The `n`-th cyclotomic polynomial, memoized, little-endian integer
/// coefficients, degree `phi(n)`.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    static CACHE: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(p) = CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // (x^n - 1) / prod_{d | n, d < n} Phi_d
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::from(1);
        let mut acc = num;
        for d in 1..n {
            if n.is_multiple_of(d) {
                let phi_d = cyclotomic_polynomial(d);
                acc = int_poly_div_exact(&acc, &phi_d);
            }
        }
        acc
    };
    CACHE.lock().unwrap().insert(n, poly.clone());
    poly
}

type ReductionRows = std::sync::Arc<Vec<Vec<BigInt>>>;

/// Reduced forms of `x^k mod Phi_n` for `k < 2n`, memoized: products of two
/// reduced elements reduce by a sparse row sum instead of long division.
fn reduction_rows(n: u32) -> ReductionRows {
    static CACHE: Lazy<Mutex<HashMap<u32, ReductionRows>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(rows) = CACHE.lock().unwrap().get(&n) {
        return rows.clone();
    }
    let phi = cyclotomic_polynomial(n).len() - 1;
    let m = cyclotomic_polynomial(n);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n as usize);
    for k in 0..2 * n as usize {
        if k < phi {
            let mut row = vec![BigInt::zero(); phi];
            row[k] = BigInt::one();
            rows.push(row);
        } else {
            // x^k = x * x^{k-1} reduced: shift previous row, fold the
            // overflow with -Phi's lower part (Phi monic)
            let prev = &rows[k - 1];
            let mut row = vec![BigInt::zero(); phi + 1];
            row[1..=phi].clone_from_slice(prev);
            let lead = row[phi].clone();
            if !lead.is_zero() {
                for (i, slot) in row.iter_mut().take(phi).enumerate() {
                    *slot = &*slot - &lead * &m[i];
                }
            }
            row.truncate(phi);
            rows.push(row);
        }
    }
    let rows = std::sync::Arc::new(rows);
    CACHE.lock().unwrap().insert(n, rows.clone());
    rows
}

// ---------------------------------------------------------------------------
// rational polynomial helpers
// ---------------------------------------------------------------------------

fn rat_zero() -> BigRational {
    BigRational::zero()
}

fn poly_degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder of `p` modulo the monic integer polynomial `m`.
fn poly_rem_monic(p: &mut [BigRational], m: &[BigInt]) {
    let dm = m.len() - 1;
    debug_assert!(m[dm].is_one());
    while let Some(dp) = poly_degree(p) {
        if dp < dm {
            break;
        }
        let q = p[dp].clone();
        let shift = dp - dm;
        for (i, mc) in m.iter().enumerate() {
            let delta = &q * BigRational::from(mc.clone());
            p[shift + i] = &p[shift + i] - delta;
        }
        p[dp] = rat_zero();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![rat_zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = &out[i + j] + ai * bj;
            }
        }
    }
    out
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Extended Euclid over Q[x]: returns `u` with `u a = 1 mod m` whenever
/// `gcd(a, m) = 1` (true for `m` irreducible and `a != 0 mod m`).
fn poly_inverse_mod(a: &[BigRational], m: &[BigInt]) -> Option<Vec<BigRational>> {
    let mut r0: Vec<BigRational> = m.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut r1 = poly_trim(a.to_vec());
    let mut u0 = vec![rat_zero()];
    let mut u1 = vec![BigRational::one()];
    loop {
        let d1 = poly_degree(&r1)?;
        if d1 == 0 {
            // r1 is a nonzero constant: inverse is u1 / r1
            let c = r1[0].clone();
            return Some(u1.into_iter().map(|x| x / c.clone()).collect());
        }
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut quot = vec![rat_zero(); rem.len().max(d1 + 1)];
        while let Some(d0) = poly_degree(&rem) {
            if d0 < d1 {
                break;
            }
            let q = &rem[d0] / &r1[d1];
            let shift = d0 - d1;
            for i in 0..=d1 {
                if !r1[i].is_zero() {
                    rem[shift + i] = &rem[shift + i] - &q * &r1[i];
                }
            }
            rem[d0] = rat_zero();
            quot[shift] = q;
        }
        // u_next = u0 - quot * u1
        let qu = poly_mul(&quot, &u1);
        let len = qu.len().max(u0.len());
        let mut u_next = vec![rat_zero(); len];
        for (i, slot) in u_next.iter_mut().enumerate() {
            let a = u0.get(i).cloned().unwrap_or_else(rat_zero);
            let b = qu.get(i).cloned().unwrap_or_else(rat_zero);
            *slot = a - b;
        }
        r0 = r1;
        r1 = poly_trim(rem);
        u0 = u1;
        u1 = u_next;
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic
// ---------------------------------------------------------------------------

/// An element of `Q(zeta_order)` in reduced canonical form: `coeffs[k]` is the
/// rational coefficient of `zeta_order^k`, `coeffs.len() == order`, and all
/// coefficients from `phi(order)` upward are zero.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn reduced(order: u32, mut coeffs: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(order).len() - 1;
        if coeffs.len() <= 2 * order as usize {
            // sparse row-sum reduction via the memoized monomial table
            let rows = reduction_rows(order);
            let mut out = vec![rat_zero(); order as usize];
            for (k, c) in coeffs.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if k < phi {
                    out[k] = &out[k] + c;
                } else {
                    for (i, r) in rows[k].iter().enumerate() {
                        if !r.is_zero() {
                            out[i] = &out[i] + &c * BigRational::from(r.clone());
                        }
                    }
                }
            }
            return Cyclotomic { order, coeffs: out };
        }
        let m = cyclotomic_polynomial(order);
        poly_rem_monic(&mut coeffs, &m);
        coeffs.resize(order as usize, rat_zero());
        Cyclotomic { order, coeffs }
    }

    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: vec![rat_zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Cyclotomic { order: 1, coeffs: vec![BigRational::from(BigInt::from(n))] }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Cyclotomic::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact `e^{2 pi i numer/denom}` in `Q(zeta_d)` with `d` the reduced
    /// denominator.
    pub fn root_of_unity(numer: i64, denom: u32) -> Result<Self, ScalarError> {
        if denom == 0 {
            return Err(ScalarError::ZeroDenominator);
        }
        let k = numer.rem_euclid(denom as i64) as u32;
        let g = k.gcd(&denom);
        let (e, n) = if k == 0 { (0u32, 1u32) } else { (k / g, denom / g) };
        if n > ORDER_CAP {
            return Err(ScalarError::OrderCap(n as u64));
        }
        let mut coeffs = vec![rat_zero(); e as usize + 1];
        coeffs[e as usize] = BigRational::one();
        Ok(Cyclotomic::reduced(n, coeffs))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Rebuild from raw coefficients over `{zeta_order^k}` (reduces them).
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self, ScalarError> {
        if order == 0 || order > ORDER_CAP {
            return Err(ScalarError::OrderCap(order as u64));
        }
        Ok(Cyclotomic::reduced(order, coeffs))
    }

    /// Same element written in `Q(zeta_m)`, `order | m`.
    pub fn embedded(&self, m: u32) -> Result<Self, ScalarError> {
        if m == self.order {
            return Ok(self.clone());
        }
        assert!(m.is_multiple_of(self.order), "embedding target must be a multiple of the order");
        if m > ORDER_CAP {
            return Err(ScalarError::OrderCap(m as u64));
        }
        let step = (m / self.order) as usize;
        let mut coeffs = vec![rat_zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * step] = c.clone();
            }
        }
        Ok(Cyclotomic::reduced(m, coeffs))
    }

    fn common_order(&self, other: &Self) -> Result<u32, ScalarError> {
        let l = (self.order as u64).lcm(&(other.order as u64));
        if l > ORDER_CAP as u64 {
            return Err(ScalarError::OrderCap(l));
        }
        Ok(l as u32)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.order == other.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(x, y)| x + y)
                .collect();
            return Ok(Cyclotomic { order: self.order, coeffs });
        }
        let n = self.common_order(other)?;
        let a = self.embedded(n)?;
        let b = other.embedded(n)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Ok(Cyclotomic { order: n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.is_zero() || other.is_zero() {
            let n = self.common_order(other)?;
            return Ok(Cyclotomic { order: n, coeffs: vec![rat_zero(); n as usize] });
        }
        if self.order == other.order {
            let prod = poly_mul(&self.coeffs, &other.coeffs);
            return Ok(Cyclotomic::reduced(self.order, prod));
        }
        let n = self.common_order(other)?;
        let a = self.embedded(n)?;
        let b = other.embedded(n)?;
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Ok(Cyclotomic::reduced(n, prod))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // monomial fast path: (c zeta^k)^-1 = c^-1 zeta^-k; covers rationals
        // and all twists, skipping the extended Euclid
        let support: Vec<usize> =
            (0..self.coeffs.len()).filter(|&k| !self.coeffs[k].is_zero()).collect();
        if support.len() == 1 {
            let k = support[0];
            let c = self.coeffs[k].recip();
            let n = self.order as usize;
            let mut coeffs = vec![rat_zero(); n];
            coeffs[(n - k) % n] = c;
            return Ok(Cyclotomic::reduced(self.order, coeffs));
        }
        let m = cyclotomic_polynomial(self.order);
        let u = poly_inverse_mod(&self.coeffs, &m).ok_or(ScalarError::DivisionByZero)?;
        Ok(Cyclotomic::reduced(self.order, u))
    }

    /// Complex conjugation: `zeta_N -> zeta_N^{N-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut coeffs = vec![rat_zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(n - k) % n] = c.clone();
            }
        }
        Cyclotomic::reduced(self.order, coeffs)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut exp = e as u64;
        let mut acc = Cyclotomic::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|q| q.is_one()).unwrap_or(false)
    }

    /// `Some(q)` if the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// `Some(n)` if the element is a (possibly negative) integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let q = self.as_rational()?;
        if q.denom().is_one() {
            Some(q.numer().clone())
        } else {
            None
        }
    }

    /// Exact realness test: fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// True when `x^(2 order) = 1`, which captures every root of unity of
    /// `Q(zeta_order)`.
    pub fn is_root_of_unity(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        match self.pow(2 * self.order as i64) {
            Ok(p) => p.is_one(),
            Err(_) => false,
        }
    }

    /// Numeric embedding `sum coeffs[k] e^{2 pi i k/order}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (self.order as f64);
            re += x * ang.cos();
            im += x * ang.sin();
        }
        (re, im)
    }

    pub fn abs_approx(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    /// Sign decision for exactly-real scalars with a `1e-9` numeric margin.
    /// Returns `None` when the element is not exactly real or the embedding
    /// is too close to zero to call.
    pub fn real_sign(&self) -> Option<i8> {
        if !self.is_real() {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        let (re, _) = self.to_complex();
        if re > 1e-9 {
            Some(1)
        } else if re < -1e-9 {
            Some(-1)
        } else {
            None
        }
    }

    /// Exact positive square root of a positive rational, as a cyclotomic
    /// element (`sqrt 2 = zeta_8 + zeta_8^-1`, odd primes via quadratic Gauss
    /// sums).
    pub fn sqrt_positive_rational(q: &BigRational) -> Result<Self, ScalarError> {
        if !q.is_positive() {
            return Err(ScalarError::NoExactSqrt(format!("{q} is not positive")));
        }
        // sqrt(a/b) = sqrt(a b) / b
        let ab = q.numer() * q.denom();
        let mut square_part = BigInt::one();
        let mut free_part = BigInt::one();
        let mut rest = ab.clone();
        let mut p = BigInt::from(2);
        let limit = BigInt::from(1_000_000u64);
        while &p * &p <= rest {
            if p > limit {
                return Err(ScalarError::NoExactSqrt(format!(
                    "cannot factor {ab} for an exact square root"
                )));
            }
            let mut e = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            if e > 0 {
                square_part *= p.pow(e / 2);
                if e % 2 == 1 {
                    free_part *= &p;
                }
            }
            p += 1;
        }
        if rest > BigInt::one() {
            free_part *= &rest; // rest is prime
        }
        let mut out =
            Cyclotomic::from_rational(BigRational::new(square_part, q.denom().clone()));
        // multiply sqrt of each remaining prime
        let mut f = free_part.clone();
        let mut p = BigInt::from(2);
        while f > BigInt::one() {
            if (&f % &p).is_zero() {
                f /= &p;
                let pp = p.to_u32().ok_or_else(|| {
                    ScalarError::NoExactSqrt("prime too large for exact square root".into())
                })?;
                out = out.mul(&Cyclotomic::sqrt_prime(pp)?)?;
            } else {
                p += 1;
            }
        }
        Ok(out)
    }

    fn sqrt_prime(p: u32) -> Result<Self, ScalarError> {
        if p == 2 {
            let z = Cyclotomic::root_of_unity(1, 8)?;
            return z.add(&z.conj());
        }
        // quadratic Gauss sum: g = sum_a legendre(a) zeta_p^a equals sqrt(p)
        // for p = 1 mod 4 and i sqrt(p) for p = 3 mod 4
        let mut g = Cyclotomic::zero();
        for a in 1..p {
            let chi = legendre(a, p);
            let z = Cyclotomic::root_of_unity(a as i64, p)?;
            g = if chi == 1 { g.add(&z)? } else { g.sub(&z)? };
        }
        if p % 4 == 1 {
            Ok(g)
        } else {
            let minus_i = Cyclotomic::root_of_unity(3, 4)?;
            g.mul(&minus_i)
        }
    }
}

fn legendre(mut a: u32, p: u32) -> i32 {
    a %= p;
    let mut r = 1u64;
    let mut base = a as u64;
    let mut e = (p as u64 - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let l = (self.order as u64).lcm(&(other.order as u64));
        assert!(
            l <= ORDER_CAP as u64,
            "equality between Q(zeta_{}) and Q(zeta_{}) exceeds the order cap",
            self.order,
            other.order
        );
        let a = self.embedded(l as u32).expect("cap checked");
        let b = other.embedded(l as u32).expect("cap checked");
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z{}^{}", self.order, k)?;
            } else {
                write!(f, "{a}*z{}^{}", self.order, k)?;
            }
            first = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Scalar: exact + quarantined float variant
// ---------------------------------------------------------------------------

/// A scalar for file data: exact cyclotomic or complex double. Arithmetic
/// requires both operands in the same variant.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Cyclotomic),
    Float { re: f64, im: f64 },
}

impl Scalar {
    pub fn root_of_unity(numer: i64, denom: u32) -> Result<Self, ScalarError> {
        Ok(Scalar::Exact(Cyclotomic::root_of_unity(numer, denom)?))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_complex(&self) -> (f64, f64) {
        match self {
            Scalar::Exact(c) => c.to_complex(),
            Scalar::Float { re, im } => (*re, *im),
        }
    }

    fn binop(
        &self,
        other: &Self,
        exact: impl FnOnce(&Cyclotomic, &Cyclotomic) -> Result<Cyclotomic, ScalarError>,
        float: impl FnOnce((f64, f64), (f64, f64)) -> Result<(f64, f64), ScalarError>,
    ) -> Result<Self, ScalarError> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(exact(a, b)?)),
            (Scalar::Float { re: ar, im: ai }, Scalar::Float { re: br, im: bi }) => {
                let (re, im) = float((*ar, *ai), (*br, *bi))?;
                Ok(Scalar::Float { re, im })
            }
            _ => Err(ScalarError::MixedVariant),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binop(other, Cyclotomic::add, |a, b| Ok((a.0 + b.0, a.1 + b.1)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binop(other, Cyclotomic::sub, |a, b| Ok((a.0 - b.0, a.1 - b.1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binop(other, Cyclotomic::mul, |a, b| {
            Ok((a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0))
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binop(other, Cyclotomic::div, |a, b| {
            let n = b.0 * b.0 + b.1 * b.1;
            if n == 0.0 {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n))
        })
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.conj()),
            Scalar::Float { re, im } => Scalar::Float { re: *re, im: -*im },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(n: u32) -> Cyclotomic {
        Cyclotomic::root_of_unity(1, n).unwrap()
    }

    #[test]
    fn root_of_unity_identity_case() {
        assert_eq!(Cyclotomic::root_of_unity(0, 1).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn root_of_unity_i() {
        let i = Cyclotomic::root_of_unity(1, 4).unwrap();
        let (re, im) = i.to_complex();
        assert!(re.abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zeta16_squared_is_zeta8() {
        let z16 = zeta(16);
        let sq = z16.mul(&z16).unwrap();
        assert_eq!(sq, zeta(8));
        // and stays equal after embedding into Q(zeta_16)
        assert_eq!(sq, zeta(8).embedded(16).unwrap());
    }

    #[test]
    fn root_of_unity_reduces_fraction() {
        let z = Cyclotomic::root_of_unity(2, 16).unwrap();
        assert_eq!(z.order(), 8);
        assert_eq!(z, zeta(8));
    }

    #[test]
    fn root_of_unity_negative_numerator() {
        let z = Cyclotomic::root_of_unity(-1, 16).unwrap();
        assert_eq!(z, zeta(16).conj());
        assert_eq!(Cyclotomic::root_of_unity(-16, 16).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            Cyclotomic::root_of_unity(1, 0).unwrap_err(),
            ScalarError::ZeroDenominator
        );
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let z = zeta(8);
        let s = z.add(&z.pow(7).unwrap()).unwrap();
        assert_eq!(s.mul(&s).unwrap(), Cyclotomic::from_integer(2));
        let (re, im) = s.to_complex();
        assert!((re - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
    }

    #[test]
    fn conj_times_self_is_unit_modulus() {
        let z = zeta(16);
        assert!(z.conj().mul(&z).unwrap().is_one());
    }

    #[test]
    fn cyclotomic_relation_zeta3() {
        let z = zeta(3);
        let s = z.add(&z.mul(&z).unwrap()).unwrap().add(&Cyclotomic::one()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn to_complex_values() {
        assert_eq!(Cyclotomic::one().to_complex(), (1.0, 0.0));
        let (re, im) = zeta(16).to_complex();
        assert!((re - 0.9238795325112867).abs() < 1e-12);
        assert!((im - 0.3826834323650898).abs() < 1e-12);
    }

    #[test]
    fn division_and_inverse() {
        let z = zeta(16);
        let x = z.add(&Cyclotomic::from_integer(3)).unwrap();
        let y = x.div(&x).unwrap();
        assert!(y.is_one());
        assert_eq!(
            Cyclotomic::one().div(&Cyclotomic::zero()).unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn order_cap_enforced() {
        assert!(matches!(
            Cyclotomic::root_of_unity(1, 2048),
            Err(ScalarError::OrderCap(2048))
        ));
        // lcm(729, 512) far exceeds the cap
        let a = zeta(729);
        let b = zeta(512);
        assert!(matches!(a.mul(&b), Err(ScalarError::OrderCap(_))));
    }

    #[test]
    fn roots_of_unity_have_full_order() {
        for n in 1..=64u32 {
            for k in 0..n {
                let z = Cyclotomic::root_of_unity(k as i64, n).unwrap();
                assert!(z.pow(n as i64).unwrap().is_one(), "({k},{n})^{n} != 1");
            }
        }
    }

    #[test]
    fn is_root_of_unity_detects() {
        assert!(zeta(16).is_root_of_unity());
        assert!(Cyclotomic::from_integer(-1).is_root_of_unity());
        assert!(!Cyclotomic::from_integer(2).is_root_of_unity());
        assert!(!zeta(8).add(&Cyclotomic::one()).unwrap().is_root_of_unity());
    }

    #[test]
    fn sqrt_positive_rationals() {
        for (num, den) in [(4i64, 1i64), (2, 1), (9, 4), (3, 2), (20, 1), (1, 3)] {
            let q = BigRational::new(BigInt::from(num), BigInt::from(den));
            let r = Cyclotomic::sqrt_positive_rational(&q).unwrap();
            assert_eq!(r.mul(&r).unwrap(), Cyclotomic::from_rational(q.clone()), "sqrt({num}/{den})");
            assert!(r.to_complex().0 > 0.0);
            assert!(r.is_real());
        }
    }

    #[test]
    fn to_complex_tracks_exact_arithmetic_at_large_coefficients() {
        // ring homomorphism within 1e-12 relative error for coefficient
        // magnitudes up to 10^6
        let coeffs = vec![
            BigRational::new(BigInt::from(1_000_000), BigInt::from(1)),
            BigRational::new(BigInt::from(-999_983), BigInt::from(7)),
            BigRational::new(BigInt::from(345_678), BigInt::from(11)),
            BigRational::new(BigInt::from(-1), BigInt::from(3)),
        ];
        let a = Cyclotomic::from_coeffs(8, coeffs).unwrap();
        let (ar, ai) = a.to_complex();
        let (pr, pi) = a.mul(&a).unwrap().to_complex();
        let er = ar * ar - ai * ai;
        let ei = 2.0 * ar * ai;
        let scale = er.hypot(ei).max(1.0);
        assert!((pr - er).abs() / scale < 1e-12);
        assert!((pi - ei).abs() / scale < 1e-12);
    }

    #[test]
    fn real_sign_margin() {
        assert_eq!(Cyclotomic::from_ratio(1, 2).real_sign(), Some(1));
        assert_eq!(Cyclotomic::from_ratio(-1, 1_000).real_sign(), Some(-1));
        assert_eq!(zeta(16).real_sign(), None);
        assert_eq!(Cyclotomic::zero().real_sign(), Some(0));
    }

    #[test]
    fn mixed_variant_rejected() {
        let a = Scalar::Exact(Cyclotomic::one());
        let b = Scalar::Float { re: 1.0, im: 0.0 };
        assert_eq!(a.add(&b).unwrap_err(), ScalarError::MixedVariant);
        assert_eq!(a.mul(&b).unwrap_err(), ScalarError::MixedVariant);
    }

    #[test]
    fn float_variant_arithmetic() {
        let a = Scalar::Float { re: 1.0, im: 2.0 };
        let b = Scalar::Float { re: 3.0, im: -1.0 };
        let p = a.mul(&b).unwrap();
        assert_eq!(p.to_complex(), (5.0, 5.0));
        let z = Scalar::Float { re: 0.0, im: 0.0 };
        assert_eq!(a.div(&z).unwrap_err(), ScalarError::DivisionByZero);
    }

    fn small_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
        (1u32..=12, proptest::collection::vec((-4i64..=4, 1i64..=3), 1..=6)).prop_map(|(n, cs)| {
            let coeffs = cs
                .into_iter()
                .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect();
            Cyclotomic::from_coeffs(n, coeffs).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn add_associative(a in small_cyclotomic(), b in small_cyclotomic(), c in small_cyclotomic()) {
            let l = a.add(&b).unwrap().add(&c).unwrap();
            let r = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn mul_distributes(a in small_cyclotomic(), b in small_cyclotomic(), c in small_cyclotomic()) {
            let l = a.mul(&b.add(&c).unwrap()).unwrap();
            let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn conj_multiplicative(a in small_cyclotomic(), b in small_cyclotomic()) {
            let l = a.mul(&b).unwrap().conj();
            let r = a.conj().mul(&b.conj()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn to_complex_is_ring_hom(a in small_cyclotomic(), b in small_cyclotomic()) {
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            let (sr, si) = a.add(&b).unwrap().to_complex();
            let (pr, pi) = a.mul(&b).unwrap().to_complex();
            let scale = 1.0 + ar.abs() + ai.abs() + br.abs() + bi.abs();
            prop_assert!((sr - (ar + br)).abs() < 1e-12 * scale);
            prop_assert!((si - (ai + bi)).abs() < 1e-12 * scale);
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-12 * scale * scale);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-12 * scale * scale);
        }

        #[test]
        fn inverse_roundtrip(a in small_cyclotomic()) {
            prop_assume!(!a.is_zero());
            let inv = a.inv().unwrap();
            prop_assert!(a.mul(&inv).unwrap().is_one());
        }
    }
}
