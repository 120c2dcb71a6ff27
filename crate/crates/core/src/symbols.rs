//! Legendre and Hilbert symbols over Q, and the ramification of `(a,b/Q)`.

use std::fmt;

use crate::arith::{factorize, is_prime, pow_mod, split_valuation};
use crate::error::{Error, Result};

/// A place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidPrime(p as i64));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

fn unit_legendre(u: i64, p: u64) -> i8 {
    legendre(u, p).expect("p is an odd prime")
}

fn odd_symbol(a: i64, b: i64, p: u64) -> i8 {
    let (va, u) = split_valuation(a, p);
    let (vb, v) = split_valuation(b, p);
    let mut s: i8 = 1;
    if (va as u64 * vb as u64 * ((p - 1) / 2)) % 2 == 1 {
        s = -s;
    }
    if vb % 2 == 1 {
        s *= unit_legendre(u, p);
    }
    if va % 2 == 1 {
        s *= unit_legendre(v, p);
    }
    s
}

fn two_adic_symbol(a: i64, b: i64) -> i8 {
    let (va, u) = split_valuation(a, 2);
    let (vb, v) = split_valuation(b, 2);
    // epsilon(x) = (x-1)/2 mod 2, omega(x) = (x^2-1)/8 mod 2, for odd x
    let eps = |x: i64| u32::from(x.rem_euclid(4) == 3);
    let omega = |x: i64| u32::from(matches!(x.rem_euclid(8), 3 | 5));
    let e = eps(u) * eps(v) + va * omega(v) + vb * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn infinite_symbol(a: i64, b: i64) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

/// Primes dividing `2ab`, ascending.
fn bad_primes(a: i64, b: i64) -> Vec<u64> {
    let mut ps: Vec<u64> = factorize(a.unsigned_abs())
        .into_iter()
        .chain(factorize(b.unsigned_abs()))
        .map(|(p, _)| p)
        .chain(std::iter::once(2))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// The Hilbert symbol `(a,b)_v`; `-1` exactly when `(a,b/Q)` ramifies at `v`.
///
/// At `v = 2` the local 2-adic formula is cross-checked against the value
/// forced by the product formula over all other places.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroArgument);
    }
    match place {
        Place::Infinite => Ok(infinite_symbol(a, b)),
        Place::Prime(2) => {
            let local = two_adic_symbol(a, b);
            let forced = bad_primes(a, b)
                .into_iter()
                .filter(|&p| p != 2)
                .fold(infinite_symbol(a, b), |acc, p| acc * odd_symbol(a, b, p));
            if local != forced {
                return Err(Error::Internal(format!(
                    "({a},{b})_2: local formula gives {local}, product formula gives {forced}"
                )));
            }
            Ok(local)
        }
        Place::Prime(p) if is_prime(p) => Ok(odd_symbol(a, b, p)),
        Place::Prime(p) => Err(Error::InvalidPrime(p as i64)),
    }
}

/// Symbols at infinity and at every prime dividing `2ab` (all other primes give `+1`).
pub fn hilbert_table(a: i64, b: i64) -> Result<Vec<(Place, i8)>> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroArgument);
    }
    std::iter::once(Place::Infinite)
        .chain(bad_primes(a, b).into_iter().map(Place::Prime))
        .map(|v| hilbert_symbol(a, b, v).map(|s| (v, s)))
        .collect()
}

/// Finite primes at which `(a,b/Q)` ramifies, ascending.
pub fn ramified_primes(a: i64, b: i64) -> Result<Vec<u64>> {
    Ok(hilbert_table(a, b)?
        .into_iter()
        .filter_map(|(v, s)| match v {
            Place::Prime(p) if s == -1 => Some(p),
            _ => None,
        })
        .collect())
}
