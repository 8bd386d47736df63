//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! An element is stored in the power basis `1, z, ..., z^(phi(N)-1)` of the
//! smallest cyclotomic field containing it. Keeping the conductor minimal
//! after every operation makes structural equality coincide with field
//! equality, so elements of different conductors never need lifting just to
//! be compared.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Euler's totient.
pub fn euler_phi(n: u64) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The `n`-th cyclotomic polynomial, by exact division of `X^n - 1` by
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Result<Poly<BigRational>> {
    if n == 0 {
        return Err(Error::InvalidSize("cyclotomic polynomial of order 0".into()));
    }
    Ok(phi_poly(n).as_ref().clone())
}

fn phi_poly(n: u64) -> Arc<Poly<BigRational>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Poly<BigRational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = Poly::monomial(BigRational::one(), n as usize);
    num = &num - &Poly::one();
    for d in divisors(n) {
        if d < n {
            num = num.exact_div(&phi_poly(d)).expect("Phi_d divides X^n - 1");
        }
    }
    cache.lock().unwrap().entry(n).or_insert(Arc::new(num)).clone()
}

/// Per-conductor data: `Phi_N` and the reduction of `X^k` modulo `Phi_N`
/// for `0 <= k < N`.
struct Context {
    n: u64,
    phi: usize,
    powers: Vec<Vec<BigRational>>,
    /// `powers` again, as sparse integer rows (Phi_N is monic and integral).
    int_powers: Vec<Vec<(usize, BigInt)>>,
}

fn context(n: u64) -> Arc<Context> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Context>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = cache.lock().unwrap().get(&n) {
        return ctx.clone();
    }
    let phi_poly = phi_poly(n).as_ref().clone();
    let phi = euler_phi(n);
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigRational::zero(); phi];
    cur[0] = BigRational::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by X, then eliminate X^phi with the monic Phi_N
        let top = cur.pop().expect("phi >= 1");
        cur.insert(0, BigRational::zero());
        if !top.is_zero() {
            for (k, c) in cur.iter_mut().enumerate() {
                *c -= top.clone() * phi_poly.coeff(k);
            }
        }
    }
    let int_powers = powers
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.to_integer()))
                .collect()
        })
        .collect();
    let ctx = Arc::new(Context {
        n,
        phi,
        powers,
        int_powers,
    });
    cache.lock().unwrap().entry(n).or_insert(ctx).clone()
}

/// Left inverse data for descending from `Q(zeta_n)` to `Q(zeta_m)`, `m | n`.
struct Descent {
    rows: Vec<usize>,
    inverse: Matrix<BigRational>,
    /// Sparse functionals cutting out `Q(zeta_m)`; a generic element fails
    /// the first one, which is much cheaper than the full descent.
    filters: Vec<Vec<(usize, BigRational)>>,
}

fn descent(n: u64, m: u64) -> Arc<Descent> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<Descent>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&(n, m)) {
        return d.clone();
    }
    let big = context(n);
    let small_phi = euler_phi(m);
    let step = (n / m) as usize;
    // lift matrix: column j holds the coordinates of zeta_n^(step*j)
    let lift = Matrix::from_fn(big.phi, small_phi, |r, c| big.powers[step * c][r].clone());
    let pivots = lift.transpose().rref().pivots;
    let square = Matrix::from_fn(small_phi, small_phi, |r, c| lift[(pivots[r], c)].clone());
    let inverse = square.inverse().expect("pivot rows are independent");
    let mut filters: Vec<Vec<(usize, BigRational)>> = lift
        .transpose()
        .nullspace()
        .into_iter()
        .map(|y| y.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    filters.sort_by_key(Vec::len);
    let d = Arc::new(Descent {
        rows: pivots,
        inverse,
        filters,
    });
    cache.lock().unwrap().entry((n, m)).or_insert(d).clone()
}

/// An element of a cyclotomic field, canonical (minimal conductor).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// Builds `sum coeffs[k] * zeta_conductor^k` and canonicalizes it.
    pub fn new(conductor: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidSize("conductor must be positive".into()));
        }
        let phi = euler_phi(conductor);
        if coeffs.len() != phi {
            return Err(Error::Shape(format!(
                "conductor {conductor} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { conductor, coeffs }.canonical())
    }

    pub fn rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `zeta_n = exp(2 pi i / n)`.
    pub fn zeta(n: u64) -> Self {
        Self::zeta_power(n, 1)
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_power(n: u64, k: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let ctx = context(n);
        let idx = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            conductor: n,
            coeffs: ctx.powers[idx].clone(),
        }
        .canonical()
    }

    /// Rebuilds from coordinates at a conductor that is a multiple of the
    /// element's own; used by the root search.
    pub fn from_coords(conductor: u64, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), euler_phi(conductor));
        Cyclotomic { conductor, coeffs }.canonical()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Coordinates in the power basis of `Q(zeta_target)`; `target` must be a
    /// multiple of the conductor.
    pub fn lift_to(&self, target: u64) -> Vec<BigRational> {
        assert!(
            target % self.conductor == 0,
            "cannot lift conductor {} to {target}",
            self.conductor
        );
        if target == self.conductor {
            return self.coeffs.clone();
        }
        let ctx = context(target);
        let step = (target / self.conductor) as usize;
        let mut out = vec![BigRational::zero(); ctx.phi];
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&ctx.powers[step * m]) {
                if !t.is_zero() {
                    *o += c.clone() * t;
                }
            }
        }
        out
    }

    /// Galois automorphism `zeta -> zeta^k`, `gcd(k, conductor) = 1`.
    pub fn galois(&self, k: u64) -> Self {
        let n = self.conductor;
        debug_assert_eq!(k.gcd(&n), 1);
        let ctx = context(n);
        let mut out = vec![BigRational::zero(); ctx.phi];
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((k % n) * m as u64 % n) as usize;
            for (o, t) in out.iter_mut().zip(&ctx.powers[idx]) {
                if !t.is_zero() {
                    *o += c.clone() * t;
                }
            }
        }
        Cyclotomic {
            conductor: n,
            coeffs: out,
        }
        .canonical()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let n = self.conductor;
        let mut acc = Cyclotomic::one();
        for k in 1..=n {
            if k.gcd(&n) == 1 {
                acc = acc * self.galois(k);
            }
        }
        acc.as_rational()
            .cloned()
            .expect("the norm of a cyclotomic element is rational")
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.checked_inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn canonical(mut self) -> Self {
        loop {
            if self.conductor == 1 {
                return self;
            }
            if self.coeffs[1..].iter().all(Zero::is_zero) {
                let q = self.coeffs.swap_remove(0);
                return Cyclotomic::rational(q);
            }
            let mut descended = false;
            for q in prime_divisors(self.conductor) {
                let m = self.conductor / q;
                if let Some(coeffs) = self.try_descend(m) {
                    self = Cyclotomic {
                        conductor: m,
                        coeffs,
                    };
                    descended = true;
                    break;
                }
            }
            if !descended {
                return self;
            }
        }
    }

    fn try_descend(&self, m: u64) -> Option<Vec<BigRational>> {
        let d = descent(self.conductor, m);
        for y in &d.filters {
            let vanishes = match y.as_slice() {
                [(i, _)] => self.coeffs[*i].is_zero(),
                _ => y
                    .iter()
                    .fold(BigRational::zero(), |acc, (i, w)| acc + w * &self.coeffs[*i])
                    .is_zero(),
            };
            if !vanishes {
                return None;
            }
        }
        let picked: Vec<BigRational> = d.rows.iter().map(|&r| self.coeffs[r].clone()).collect();
        let candidate = d.inverse.mul_vec(&picked);
        let back = Cyclotomic {
            conductor: m,
            coeffs: candidate.clone(),
        }
        .lift_to(self.conductor);
        (back == self.coeffs).then_some(candidate)
    }

    fn binary(&self, rhs: &Self, op: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let l = self.conductor.lcm(&rhs.conductor);
        let a = self.lift_to(l);
        let b = rhs.lift_to(l);
        Cyclotomic {
            conductor: l,
            coeffs: a.iter().zip(&b).map(|(x, y)| op(x, y)).collect(),
        }
        .canonical()
    }

    fn multiply(&self, rhs: &Self) -> Self {
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        let l = self.conductor.lcm(&rhs.conductor);
        let ctx = context(l);
        let a = self.lift_to(l);
        let b = rhs.lift_to(l);
        // integer numerators over one common denominator per factor, so
        // that no gcd is taken until the end
        let (da, ia) = integral(&a);
        let (db, ib) = integral(&b);
        from_integral(l, int_mul(&ctx, &ia, &ib), &(da * db))
    }

    fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

/// Product of integer coordinate vectors in `Q(zeta_n)`.
fn int_mul(ctx: &Context, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = ctx.n as usize;
    let mut conv = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                conv[(i + j) % n] += x * y;
            }
        }
    }
    reduce(ctx, &conv)
}

/// Coordinates of `sum c_k zeta^k` for `k < n`.
fn reduce(ctx: &Context, conv: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); ctx.phi];
    for (k, c) in conv.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (idx, t) in &ctx.int_powers[k] {
            out[*idx] += c * t;
        }
    }
    out
}

/// `zeta -> zeta^k` on integer coordinates.
fn int_galois(ctx: &Context, a: &[BigInt], k: u64) -> Vec<BigInt> {
    let n = ctx.n;
    let mut conv = vec![BigInt::zero(); n as usize];
    for (m, c) in a.iter().enumerate() {
        if !c.is_zero() {
            conv[(k * m as u64 % n) as usize] += c;
        }
    }
    reduce(ctx, &conv)
}

fn from_integral(conductor: u64, ints: Vec<BigInt>, den: &BigInt) -> Cyclotomic {
    Cyclotomic {
        conductor,
        coeffs: ints
            .into_iter()
            .map(|c| BigRational::new(c, den.clone()))
            .collect(),
    }
    .canonical()
}

/// The lcm `d` of the denominators and the integers `d * x`.
fn integral(xs: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let d = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = xs
        .iter()
        .map(|x| x.numer() * (&d / x.denom()))
        .collect();
    (d, ints)
}

/// `exp(2 pi i e)` for a rational exponent `e = p/q`: the power
/// `zeta_q^(p mod q)`, reduced to its minimal conductor.
pub fn root_of_unity(e: &BigRational) -> Cyclotomic {
    let q = e.denom().to_u64().expect("exponent denominator fits in u64");
    let p = e.numer().mod_floor(e.denom()).to_i64().expect("fits");
    Cyclotomic::zeta_power(q, p)
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::rational(BigRational::one())
    }
}

impl FromPrimitive for Cyclotomic {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Cyclotomic::integer(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Cyclotomic::rational(BigRational::from_integer(BigInt::from(n))))
    }
}

impl Field for Cyclotomic {
    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Cyclotomic::rational(q.recip()));
        }
        // x^-1 = (product of the other conjugates) / norm, in integers
        let ctx = context(self.conductor);
        let n = self.conductor;
        let (d, x) = integral(&self.coeffs);
        let mut others = vec![BigInt::zero(); ctx.phi];
        others[0] = BigInt::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = int_mul(&ctx, &others, &int_galois(&ctx, &x, k));
            }
        }
        let norm = int_mul(&ctx, &x, &others);
        debug_assert!(norm[1..].iter().all(Zero::is_zero), "the norm is rational");
        // x = X / d and the conjugate product is P / d^(phi-1), so x^-1 = P d / N(X)
        let scaled: Vec<BigInt> = others.into_iter().map(|c| c * &d).collect();
        Some(from_integral(n, scaled, &norm[0]))
    }

    fn from_rational(q: &BigRational) -> Self {
        Cyclotomic::rational(q.clone())
    }

    fn conductor(&self) -> u64 {
        self.conductor
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |x, y| x - y)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.multiply(rhs)
    }
}

impl<'a> Div<&'a Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign for Cyclotomic {
    fn add_assign(&mut self, rhs: Cyclotomic) {
        *self = &*self + &rhs;
    }
}

impl SubAssign for Cyclotomic {
    fn sub_assign(&mut self, rhs: Cyclotomic) {
        *self = &*self - &rhs;
    }
}

impl MulAssign for Cyclotomic {
    fn mul_assign(&mut self, rhs: Cyclotomic) {
        *self = &*self * &rhs;
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -self.clone()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let n = self.conductor;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z{n}")?,
                (1, false) => write!(f, "{mag}*z{n}")?,
                (_, true) => write!(f, "z{n}^{k}")?,
                (_, false) => write!(f, "{mag}*z{n}^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn ints(p: &Poly<BigRational>) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1).unwrap()), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2).unwrap()), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4).unwrap()), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12).unwrap()), vec![1, 0, -1, 0, 1]);
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn phi_12_by_explicit_division() {
        // (X^12 - 1) / (Phi1 Phi2 Phi3 Phi4 Phi6), with the small factors written out
        let p = |c: &[i64]| Poly::new(c.iter().map(|&n| BigRational::from_integer(n.into())).collect());
        let mut num = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        for f in [p(&[-1, 1]), p(&[1, 1]), p(&[1, 1, 1]), p(&[1, 0, 1]), p(&[1, -1, 1])] {
            num = num.exact_div(&f).unwrap();
        }
        assert_eq!(ints(&num), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity(&q("0")), Cyclotomic::one());
        assert_eq!(root_of_unity(&q("1/2")), Cyclotomic::integer(-1));
        let i = root_of_unity(&q("1/4"));
        assert_eq!(i.conductor(), 4);
        assert_eq!(i.coeffs(), &[q("0"), q("1")]);
        assert_eq!(root_of_unity(&q("5/4")), i);
        assert_eq!(root_of_unity(&q("-3/4")), i);
    }

    #[test]
    fn conductor_two_mod_four_descends() {
        // zeta_6 = -zeta_3^2 lives in Q(zeta_3)
        let z6 = Cyclotomic::zeta(6);
        assert_eq!(z6.conductor(), 3);
        assert_eq!(z6, -Cyclotomic::zeta_power(3, 2));
        assert_eq!(Cyclotomic::zeta(2), Cyclotomic::integer(-1));
    }

    #[test]
    fn arithmetic_examples() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::integer(-1));
        let half = Cyclotomic::rational(q("1/2"));
        let z3 = Cyclotomic::zeta(3);
        assert_eq!((&half + &z3) + (&half - &z3), Cyclotomic::one());
        let z8 = Cyclotomic::zeta(8);
        let inv = Cyclotomic::one().checked_div(&z8).unwrap();
        assert_eq!(&inv * &z8, Cyclotomic::one());
        assert_eq!(inv, Cyclotomic::zeta_power(8, 7));
        assert_eq!(inv, -Cyclotomic::zeta_power(8, 3));
        assert_eq!(
            Cyclotomic::one().checked_div(&Cyclotomic::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mixed_conductors_meet_in_lcm() {
        // zeta_3 * zeta_4 = zeta_12^7
        let p = Cyclotomic::zeta(3) * Cyclotomic::zeta(4);
        assert_eq!(p, Cyclotomic::zeta_power(12, 7));
        assert_eq!(p.conductor(), 12);
        // sqrt(2) = zeta_8 + zeta_8^-1 squares to 2
        let s = Cyclotomic::zeta(8) + Cyclotomic::zeta_power(8, -1);
        assert_eq!(&s * &s, Cyclotomic::integer(2));
        assert_eq!(s.conductor(), 8);
    }

    #[test]
    fn cancellation_descends_to_rational() {
        let z5 = Cyclotomic::zeta(5);
        let sum = (0..5).fold(Cyclotomic::zero(), |acc, k| acc + z5.pow(k));
        assert!(sum.is_zero());
        assert!(sum.is_rational());
    }

    #[test]
    fn new_validates_length() {
        assert!(Cyclotomic::new(4, vec![q("1")]).is_err());
        assert!(Cyclotomic::new(0, vec![]).is_err());
        let x = Cyclotomic::new(8, vec![q("0"), q("0"), q("1"), q("0")]).unwrap();
        assert_eq!(x, Cyclotomic::zeta(4));
    }

    #[test]
    fn norm_and_conjugate() {
        let i = Cyclotomic::zeta(4);
        let x = Cyclotomic::integer(1) + &i;
        assert_eq!(x.norm(), q("2"));
        assert_eq!(x.conj(), Cyclotomic::integer(1) - &i);
    }

    #[test]
    fn display() {
        let x = Cyclotomic::rational(q("1/2")) - Cyclotomic::zeta_power(5, 2);
        assert_eq!(x.to_string(), "1/2 - z5^2");
        assert_eq!(Cyclotomic::zeta(4).to_string(), "z4");
    }
}
