//! Roots of a polynomial that lie in the working field.
//!
//! Over `Q(zeta_L)` the search is p-adic. A prime `p = 1 (mod L)` splits
//! completely, so `Z[zeta_L]` has a prime `P` of degree one above it and
//! reduction mod `P^K` is the map `zeta -> omega`, with `omega` a lifted root
//! of `Phi_L`. Each root mod `p` is Hensel-lifted to `p^K` and the algebraic
//! integer reducing to it is recovered as a short vector of `target + P^K`
//! (LLL followed by Babai's nearest plane). Candidates are verified exactly,
//! so the bounds only affect completeness, never soundness.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{cyclotomic_polynomial, euler_phi, prime_divisors, Cyclotomic};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Roots found in the field, with multiplicities, and the monic cofactor
/// that has no roots there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roots<F> {
    pub roots: Vec<(F, usize)>,
    pub residual: Poly<F>,
}

impl<F: Field> Roots<F> {
    pub fn splits(&self) -> bool {
        self.residual.is_constant()
    }

    /// Roots repeated according to multiplicity, in order.
    pub fn multiset(&self) -> Vec<F> {
        self.roots
            .iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
            .collect()
    }
}

/// Fields in which roots of polynomials can be found exactly.
pub trait FindRoots: Field {
    /// Roots in the smallest natural field containing the coefficients,
    /// widened by `extra_conductor` (ignored over `Q`).
    fn roots_with(poly: &Poly<Self>, extra_conductor: u64) -> Roots<Self>;

    fn roots(poly: &Poly<Self>) -> Roots<Self> {
        Self::roots_with(poly, 1)
    }
}

impl FindRoots for BigRational {
    fn roots_with(poly: &Poly<Self>, _extra_conductor: u64) -> Roots<Self> {
        let lifted = poly.map(|c| Cyclotomic::rational(c.clone()));
        let found = search(&lifted.squarefree_part(), 1)
            .into_iter()
            .map(|r| r.as_rational().cloned().expect("conductor 1"))
            .collect();
        assemble(poly, found)
    }
}

impl FindRoots for Cyclotomic {
    fn roots_with(poly: &Poly<Self>, extra_conductor: u64) -> Roots<Self> {
        if poly.is_constant() {
            return assemble(poly, Vec::new());
        }
        let f = poly.monic();
        let c = coefficient_conductor(&f);
        let unity = unity_roots(&f, c);
        let mut rest = f.clone();
        let mut l = c.lcm(&extra_conductor.max(1));
        for r in &unity {
            l = l.lcm(&r.conductor());
            let lin = Poly::linear(r);
            while let Some(q) = rest.exact_div(&lin) {
                rest = q;
            }
        }
        let mut found = unity;
        if !rest.is_constant() {
            let g = if squarefree_mod_some_prime(&rest) {
                rest
            } else {
                rest.squarefree_part()
            };
            found.extend(search(&g, l));
        }
        assemble(poly, found)
    }
}

fn assemble<F: Field>(poly: &Poly<F>, mut found: Vec<F>) -> Roots<F> {
    if poly.is_zero() {
        return Roots {
            roots: Vec::new(),
            residual: Poly::zero(),
        };
    }
    found.sort();
    found.dedup();
    let mut rest = poly.monic();
    let mut roots = Vec::new();
    for r in found {
        let lin = Poly::linear(&r);
        let mut m = 0;
        while let Some(q) = rest.exact_div(&lin) {
            rest = q;
            m += 1;
        }
        if m > 0 {
            roots.push((r, m));
        }
    }
    Roots {
        roots,
        residual: rest,
    }
}

fn coefficient_conductor(poly: &Poly<Cyclotomic>) -> u64 {
    poly.coeffs()
        .iter()
        .fold(1, |acc, c| acc.lcm(&c.conductor()))
}

/// Roots of `f` that are roots of unity. A root `zeta_M^j` of a degree-`n`
/// polynomial over `Q(zeta_c)` generates an extension of degree at most `n`,
/// which bounds `M`. Candidates are screened modulo two split primes and
/// confirmed exactly.
fn unity_roots(f: &Poly<Cyclotomic>, c: u64) -> Vec<Cyclotomic> {
    let n = f.degree().unwrap_or(0);
    let cap = n * euler_phi(c);
    let bound = 2 * (cap as u64) * (cap as u64) + 2;
    let mut out = Vec::new();
    for m in 1..=bound {
        let big = c.lcm(&m);
        if euler_phi(big) > cap {
            continue;
        }
        let mut candidates: Vec<u64> = (0..m).filter(|j| j.gcd(&m) == 1).collect();
        for (p, omega) in split_primes(big, f).into_iter().take(2) {
            let fp = reduce_mod(f, big, p, omega);
            let step = big / m;
            candidates.retain(|&j| eval_mod(&fp, powmod(omega, j * step, p), p) == 0);
        }
        for j in candidates {
            let z = Cyclotomic::zeta_power(m, j as i64);
            if f.eval(&z).is_zero() {
                out.push(z);
            }
        }
    }
    out
}

/// Primes `p = 1 (mod l)` not dividing any coefficient denominator, each
/// with a primitive `l`-th root of unity modulo `p`.
fn split_primes(l: u64, f: &Poly<Cyclotomic>) -> impl Iterator<Item = (u64, u64)> + '_ {
    (1u64..)
        .map(move |t| l * t + 1)
        .filter(|&p| p >= 3 && is_prime(p))
        .filter(move |&p| {
            let pb = BigInt::from(p);
            f.coeffs()
                .iter()
                .flat_map(|x| x.coeffs())
                .all(|q| !q.denom().is_multiple_of(&pb))
        })
        .map(move |p| (p, primitive_root_of_order(l, p)))
}

/// Image of `f` under `zeta_l -> omega` in `F_p`; every coefficient
/// conductor must divide `l`.
fn reduce_mod(f: &Poly<Cyclotomic>, l: u64, p: u64, omega: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let to_fp = |q: &BigRational| {
        let num = q.numer().mod_floor(&pb).to_u64().expect("reduced");
        let den = q.denom().mod_floor(&pb).to_u64().expect("reduced");
        mulmod(num, powmod(den, p - 2, p), p)
    };
    f.coeffs()
        .iter()
        .map(|x| {
            let w = powmod(omega, l / x.conductor(), p);
            x.coeffs()
                .iter()
                .rev()
                .fold(0, |acc, q| (mulmod(acc, w, p) + to_fp(q)) % p)
        })
        .collect()
}

fn squarefree_mod_some_prime(f: &Poly<Cyclotomic>) -> bool {
    let c = coefficient_conductor(f);
    let n = f.degree().unwrap_or(0);
    split_primes(c, f).take(3).any(|(p, omega)| {
        let fp = reduce_mod(f, c, p, omega);
        if fp.len() != n + 1 || fp[n] == 0 {
            return false;
        }
        let deriv: Vec<u64> = (1..=n).map(|i| mulmod(fp[i], i as u64 % p, p)).collect();
        poly_gcd_degree_mod(fp, deriv, p) == 0
    })
}

/// Distinct roots in `Q(zeta_l)` of a monic squarefree polynomial whose
/// coefficients lie in that field.
fn search(g: &Poly<Cyclotomic>, l: u64) -> Vec<Cyclotomic> {
    let Some(m) = g.degree() else {
        return Vec::new();
    };
    match m {
        0 => return Vec::new(),
        1 => return vec![-g.coeff(0)],
        _ => {}
    }
    let d = euler_phi(l);
    let coords: Vec<Vec<BigRational>> = (0..m).map(|i| g.coeff(i).lift_to(l)).collect();
    let den = coords
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // h(y) = den^m g(y / den) is monic with algebraic-integer coefficients
    let h: Vec<Vec<BigInt>> = coords
        .iter()
        .enumerate()
        .map(|(i, cs)| {
            let scale = BigRational::from_integer(num_traits::pow(den.clone(), m - i));
            cs.iter().map(|c| (c * &scale).to_integer()).collect()
        })
        .collect();
    let Some(prime) = choose_prime(&h, l, m) else {
        return Vec::new();
    };
    if prime.residues.is_empty() {
        return Vec::new();
    }

    // any root's embeddings are bounded by R (Cauchy); coordinates by d R tau
    let r_bound = h
        .iter()
        .map(|cs| cs.iter().fold(BigInt::zero(), |acc, c| acc + c.abs()))
        .max()
        .unwrap_or_default()
        + BigInt::one();
    let tau = trace_dual_bound(l);
    let b = (BigRational::from_integer(r_bound * BigInt::from(d)) * tau)
        .ceil()
        .to_integer();
    let half = d.div_ceil(2);
    let factor = BigInt::from(d) * (BigInt::one() + (BigInt::one() << half)) * b;
    let target_norm = num_traits::pow(factor, d);
    let p_big = BigInt::from(prime.p);
    let mut k_max = 1usize;
    let mut pk = p_big.clone();
    while pk <= target_norm {
        pk *= &p_big;
        k_max += 1;
    }

    let mut schedule: Vec<usize> = [k_max / 8, k_max / 4, k_max / 2, k_max]
        .into_iter()
        .filter(|&k| k >= 1)
        .collect();
    schedule.dedup();

    let phi_l: Vec<BigInt> = cyclotomic_polynomial(l)
        .expect("l >= 1")
        .coeffs()
        .iter()
        .map(|c| c.to_integer())
        .collect();

    let mut pending = prime.residues.clone();
    let mut found = Vec::new();
    let den_q = BigRational::from_integer(den.clone());
    for k in schedule {
        let modulus = num_traits::pow(p_big.clone(), k);
        let omega = hensel_lift(&phi_l, BigInt::from(prime.omega), &modulus);
        let h_mod: Vec<BigInt> = h
            .iter()
            .map(|cs| eval_at(cs, &omega, &modulus))
            .chain(std::iter::once(BigInt::one()))
            .collect();
        let lattice = ReducedLattice::new(prime_power_lattice(&omega, &modulus, d));
        pending.retain(|&r| {
            let r_k = hensel_lift(&h_mod, BigInt::from(r), &modulus);
            let mut target = vec![BigInt::zero(); d];
            target[0] = r_k;
            let short = lattice.reduce_target(target);
            let candidate = Cyclotomic::from_coords(
                l,
                short
                    .into_iter()
                    .map(|x| BigRational::from_integer(x) / &den_q)
                    .collect(),
            );
            if g.eval(&candidate).is_zero() {
                found.push(candidate);
                false
            } else {
                true
            }
        });
        if pending.is_empty() || found.len() == prime.residues.len() {
            break;
        }
    }
    found
}

struct PrimeChoice {
    p: u64,
    omega: u64,
    residues: Vec<u64>,
}

/// Among the first few admissible primes, the one with fewest roots of `h`
/// modulo `P`; the number of roots in the field is at most that count.
fn choose_prime(h: &[Vec<BigInt>], l: u64, m: usize) -> Option<PrimeChoice> {
    let mut best: Option<PrimeChoice> = None;
    let mut admissible = 0;
    let mut t = 1u64;
    while admissible < 5 && t < 100_000 {
        let p = l * t + 1;
        t += 1;
        if p < 3 || !is_prime(p) {
            continue;
        }
        let omega = primitive_root_of_order(l, p);
        let pb = BigInt::from(p);
        let mut hp: Vec<u64> = h
            .iter()
            .map(|cs| {
                let mut acc = 0u64;
                for c in cs.iter().rev() {
                    let ci = c.mod_floor(&pb).to_u64().expect("reduced mod p");
                    acc = (mulmod(acc, omega, p) + ci) % p;
                }
                acc
            })
            .collect();
        hp.push(1);
        let deriv: Vec<u64> = (1..=m).map(|i| mulmod(hp[i], i as u64 % p, p)).collect();
        if poly_gcd_degree_mod(hp.clone(), deriv, p) != 0 {
            continue;
        }
        admissible += 1;
        let residues: Vec<u64> = (0..p).filter(|&x| eval_mod(&hp, x, p) == 0).collect();
        if best
            .as_ref()
            .is_none_or(|b| residues.len() < b.residues.len())
        {
            best = Some(PrimeChoice { p, omega, residues });
        }
        if best.as_ref().is_some_and(|b| b.residues.is_empty()) {
            break;
        }
    }
    best
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn primitive_root_of_order(l: u64, p: u64) -> u64 {
    if l == 1 {
        return 1;
    }
    let primes = prime_divisors(l);
    (2..p)
        .map(|a| powmod(a, (p - 1) / l, p))
        .find(|&w| primes.iter().all(|&q| powmod(w, l / q, p) != 1))
        .expect("p = 1 mod l has primitive l-th roots")
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a, b)` over `F_p`; `b` must be nonzero.
fn poly_gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    if b.is_empty() {
        return a.len().saturating_sub(1);
    }
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let c = mulmod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - mulmod(c, bi, p)) % p;
            }
            trim_mod(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

fn eval_at(coeffs: &[BigInt], x: &BigInt, modulus: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(modulus))
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> BigInt {
    let e = a.mod_floor(modulus).extended_gcd(modulus);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(modulus)
}

/// Newton iteration for a simple root modulo a prime power.
fn hensel_lift(coeffs: &[BigInt], mut x: BigInt, modulus: &BigInt) -> BigInt {
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    loop {
        let fx = eval_at(coeffs, &x, modulus);
        if fx.is_zero() {
            return x;
        }
        let inv = mod_inverse(&eval_at(&deriv, &x, modulus), modulus);
        x = (x - fx * inv).mod_floor(modulus);
    }
}

/// Rows `p^K e_0` and `e_k - omega^k e_0`: the kernel of `zeta -> omega`
/// modulo `p^K`, in power-basis coordinates.
fn prime_power_lattice(omega: &BigInt, modulus: &BigInt, d: usize) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::with_capacity(d);
    let mut first = vec![BigInt::zero(); d];
    first[0] = modulus.clone();
    rows.push(first);
    let mut w = BigInt::one();
    for k in 1..d {
        w = (w * omega).mod_floor(modulus);
        let mut row = vec![BigInt::zero(); d];
        row[0] = (-&w).mod_floor(modulus);
        row[k] = BigInt::one();
        rows.push(row);
    }
    rows
}

/// An LLL-reduced basis together with its Gram-Schmidt data.
struct ReducedLattice {
    basis: Vec<Vec<BigInt>>,
    gs: Vec<Vec<BigRational>>,
    norms: Vec<BigRational>,
}

fn round(q: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (q + half).floor().to_integer()
}

impl ReducedLattice {
    fn new(mut b: Vec<Vec<BigInt>>) -> Self {
        lll(&mut b);
        let (gs, norms) = gram_schmidt(&b);
        ReducedLattice {
            basis: b,
            gs,
            norms,
        }
    }

    /// Babai's nearest plane: returns `target - w` for the lattice vector
    /// `w` it selects, a short representative of `target + L`.
    fn reduce_target(&self, mut t: Vec<BigInt>) -> Vec<BigInt> {
        for j in (0..self.basis.len()).rev() {
            let tq: BigRational = t
                .iter()
                .zip(&self.gs[j])
                .map(|(x, y)| y * x)
                .fold(BigRational::zero(), |acc, v| acc + v);
            let c = round(&(tq / &self.norms[j]));
            if c.is_zero() {
                continue;
            }
            for (x, y) in t.iter_mut().zip(&self.basis[j]) {
                *x -= &c * y;
            }
        }
        t
    }
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let mut gs: Vec<Vec<BigRational>> = Vec::with_capacity(b.len());
    let mut norms: Vec<BigRational> = Vec::with_capacity(b.len());
    for row in b {
        let mut v: Vec<BigRational> = row.iter().cloned().map(BigRational::from_integer).collect();
        for (g, n) in gs.iter().zip(&norms) {
            let mu = row
                .iter()
                .zip(g)
                .map(|(x, y)| y * x)
                .fold(BigRational::zero(), |acc, t| acc + t)
                / n;
            for (x, y) in v.iter_mut().zip(g) {
                *x -= &mu * y;
            }
        }
        norms.push(v.iter().map(|x| x * x).fold(BigRational::zero(), |a, t| a + t));
        gs.push(v);
    }
    (gs, norms)
}

/// LLL with `delta = 3/4` and incremental Gram-Schmidt updates; `b` must
/// be a basis (independent rows).
fn lll(b: &mut [Vec<BigInt>]) {
    let n = b.len();
    if n < 2 {
        return;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let (gs, mut norms) = gram_schmidt(b);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..i {
            let ip = b[i]
                .iter()
                .zip(&gs[j])
                .map(|(x, y)| y * x)
                .fold(BigRational::zero(), |a, t| a + t);
            mu[i][j] = ip / &norms[j];
        }
    }
    let size_reduce = |b: &mut [Vec<BigInt>], mu: &mut [Vec<BigRational>], k: usize, j: usize| {
        let q = round(&mu[k][j]);
        if q.is_zero() {
            return;
        }
        let (lo, hi) = b.split_at_mut(k);
        for (x, y) in hi[0].iter_mut().zip(&lo[j]) {
            *x -= &q * y;
        }
        let qq = BigRational::from_integer(q);
        for l in 0..j {
            let t = &qq * &mu[j][l];
            mu[k][l] -= t;
        }
        mu[k][j] -= &qq;
    };
    let mut k = 1;
    while k < n {
        size_reduce(b, &mut mu, k, k - 1);
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            for j in (0..k - 1).rev() {
                size_reduce(b, &mut mu, k, j);
            }
            k += 1;
            continue;
        }
        let m = mu[k][k - 1].clone();
        let big = &norms[k] + &m * &m * &norms[k - 1];
        mu[k][k - 1] = &m * &norms[k - 1] / &big;
        norms[k] = &norms[k - 1] * &norms[k] / &big;
        norms[k - 1] = big;
        b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = mu[k][j].clone();
            mu[k][j] = std::mem::replace(&mut mu[k - 1][j], t);
        }
        for i in k + 1..n {
            let t = mu[i][k].clone();
            mu[i][k] = &mu[i][k - 1] - &m * &t;
            mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
        }
        k = (k - 1).max(1);
    }
}

/// `max_k sum_m |(T^-1)_km|` for the trace form `T_mk = Tr(zeta^(m+k))`
/// of `Q(zeta_l)`; converts embedding bounds into coordinate bounds.
fn trace_dual_bound(l: u64) -> BigRational {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&l) {
        return t.as_ref().clone();
    }
    let d = euler_phi(l);
    let gram = Matrix::from_fn(d, d, |m, k| {
        BigRational::from_integer(BigInt::from(ramanujan_sum(l, (m + k) as u64)))
    });
    let inv = gram.inverse().expect("the trace form is nondegenerate");
    let tau = (0..d)
        .map(|r| {
            inv.row(r)
                .iter()
                .fold(BigRational::zero(), |acc, x| acc + x.abs())
        })
        .max()
        .unwrap_or_else(BigRational::one);
    cache
        .lock()
        .unwrap()
        .entry(l)
        .or_insert(Arc::new(tau))
        .as_ref()
        .clone()
}

/// `Tr(zeta_l^j)`, the Ramanujan sum `c_l(j)`.
fn ramanujan_sum(l: u64, j: u64) -> i64 {
    let g = l.gcd(&(j % l));
    let t = l / g;
    let primes = prime_divisors(t);
    let squarefree = primes.iter().product::<u64>() == t;
    if !squarefree {
        return 0;
    }
    let sign = if primes.len() % 2 == 0 { 1 } else { -1 };
    sign * (euler_phi(l) / euler_phi(t)) as i64
}
