//! Integer number theory behind the square-class and local-symbol computations.
//!
//! Rational square classes need the squarefree part of an integer, which needs
//! its factorization. Primes below 10^6 are removed by trial division; the
//! remaining cofactor has no small prime factors and must fit in 64 bits. It is
//! split exactly with a deterministic Miller-Rabin test, perfect square and
//! cube tests, and Pollard's rho. Larger cofactors are rejected with
//! [`Error::FactorizationBound`].

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Integer `k`-th root (floor), for `k` = 2 or 3.
fn iroot(n: u64, k: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / k as f64) as u64;
    let pow = |r: u64| r.checked_pow(k);
    while pow(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while pow(r + 1).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

// Brent-style cycle search; `n` is odd, composite and not a prime power.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

// `n` has no prime factor below the trial limit, hence at most three.
fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for k in [2, 3] {
        let r = iroot(n, k);
        if r.pow(k) == n {
            for _ in 0..k {
                split_large(r, out);
            }
            return;
        }
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

fn collect(mut primes: Vec<u64>, out: &mut Vec<(u64, u32)>) {
    primes.sort_unstable();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
}

/// Prime factorization of a nonzero `n`, sorted by prime.
pub fn factor(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::ZeroScalar);
    }
    let mut out = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d < TRIAL_LIMIT && d * d <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut large = Vec::new();
    split_large(rest, &mut large);
    collect(large, &mut out);
    Ok(out)
}

/// Prime factorization of `|n|` for a nonzero integer of any size whose part
/// free of primes below 10^6 fits in 64 bits.
pub fn factor_bigint(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroScalar);
    }
    if let Some(m) = n.magnitude().to_u64() {
        return factor(m);
    }
    let mut rest = n.magnitude().clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_LIMIT {
        if (&rest % d).is_zero() {
            let mut e = 0;
            while (&rest % d).is_zero() {
                rest /= d;
                e += 1;
            }
            out.push((d, e));
            if let Some(small) = rest.to_u64() {
                // finish on machine integers; remaining primes are >= d
                let mut tail = factor(small)?;
                out.append(&mut tail);
                return Ok(out);
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let rest = rest
        .to_u64()
        .ok_or_else(|| Error::FactorizationBound(n.to_string()))?;
    let mut large = Vec::new();
    split_large(rest, &mut large);
    collect(large, &mut out);
    Ok(out)
}

/// Signed squarefree part of a nonzero integer and the primes dividing it.
pub fn squarefree_part(n: &BigInt) -> Result<(BigInt, Vec<u64>)> {
    let mut part = BigInt::one();
    let mut primes = Vec::new();
    for (p, e) in factor_bigint(n)? {
        if e % 2 == 1 {
            part *= p;
            primes.push(p);
        }
    }
    if n.is_negative() {
        part = -part;
    }
    Ok((part, primes))
}

/// Square-class representative of a nonzero rational: a signed squarefree
/// integer, together with its prime divisors.
pub fn rational_square_class(q: &BigRational) -> Result<(BigInt, Vec<u64>)> {
    if q.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let (a, pa) = squarefree_part(q.numer())?;
    let (b, pb) = squarefree_part(q.denom())?;
    // a/b ~ a*b; squarefree(a*b) drops the primes both share
    let mut primes: Vec<u64> = pa
        .iter()
        .filter(|p| !pb.contains(p))
        .chain(pb.iter().filter(|p| !pa.contains(p)))
        .copied()
        .collect();
    primes.sort_unstable();
    let g = a.gcd(&b);
    Ok(((a * b) / (&g * &g), primes))
}

fn residue(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    if p % 2 == 0 {
        return Err(Error::EvenModulus(p));
    }
    let r = residue(a, p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// A place of the rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn sign_from_parity(odd: bool) -> i8 {
    if odd {
        -1
    } else {
        1
    }
}

// (u - 1)/2 mod 2 for odd u
fn eps(u: &BigInt) -> bool {
    residue(u, 4) == 3
}

// (u^2 - 1)/8 mod 2 for odd u
fn omega(u: &BigInt) -> bool {
    matches!(residue(u, 8), 3 | 5)
}

fn split_valuation(a: &BigInt, p: u64) -> (bool, BigInt) {
    let pb = BigInt::from(p);
    let (q, r) = a.div_rem(&pb);
    if r.is_zero() {
        (true, q)
    } else {
        (false, a.clone())
    }
}

/// Local Hilbert symbol `(a, b)_v` of two nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroScalar);
    }
    match place {
        Place::Infinity => Ok(sign_from_parity(a.is_negative() && b.is_negative())),
        Place::Prime(p) => {
            let (a, _) = rational_square_class(a)?;
            let (b, _) = rational_square_class(b)?;
            Ok(hilbert_squarefree(&a, &b, p))
        }
    }
}

/// Hilbert symbol at a prime for squarefree integer representatives.
pub(crate) fn hilbert_squarefree(a: &BigInt, b: &BigInt, p: u64) -> i8 {
    let (alpha, u) = split_valuation(a, p);
    let (beta, v) = split_valuation(b, p);
    if p == 2 {
        let odd = (eps(&u) && eps(&v)) ^ (alpha && omega(&v)) ^ (beta && omega(&u));
        sign_from_parity(odd)
    } else {
        let mut s = sign_from_parity(alpha && beta && p % 4 == 3);
        if beta {
            s *= legendre(&u, p).unwrap();
        }
        if alpha {
            s *= legendre(&v, p).unwrap();
        }
        s
    }
}

/// `true` if `n` is a nonzero perfect square (sign included).
pub fn is_square_integer(n: &BigInt) -> bool {
    n.sign() == Sign::Plus && {
        let r = n.sqrt();
        &r * &r == *n
    }
}
