//! Slow, independent reference implementations used to check the library.
//! Nothing here calls the library's linear algebra, enumeration or symbol code.
#![allow(dead_code)]

use amlat::exact::{Rat, RatMat};
use num_traits::{One, Signed, Zero};

pub type Q4 = [Rat; 4];

pub fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Product in `(a,b/Q)` written out from `i^2 = a`, `j^2 = b`, `ij = -ji`.
pub fn qmul(a: i64, b: i64, x: &Q4, y: &Q4) -> Q4 {
    let (a, b) = (r(a), r(b));
    let ab = &a * &b;
    let [x0, x1, x2, x3] = x;
    let [y0, y1, y2, y3] = y;
    [
        x0 * y0 + &a * x1 * y1 + &b * x2 * y2 - &ab * x3 * y3,
        x0 * y1 + x1 * y0 - &b * x2 * y3 + &b * x3 * y2,
        x0 * y2 + x2 * y0 + &a * x1 * y3 - &a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    ]
}

pub fn qconj(x: &Q4) -> Q4 {
    [x[0].clone(), -&x[1], -&x[2], -&x[3]]
}

pub fn qnrd(a: i64, b: i64, x: &Q4) -> Rat {
    qmul(a, b, x, &qconj(x))[0].clone()
}

/// `trd(α x conj(y))` on the given rows.
pub fn gram(a: i64, b: i64, rows: &[Q4], alpha: &Rat) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|x| {
            rows.iter()
                .map(|y| qmul(a, b, x, &qconj(y))[0].clone() * r(2) * alpha)
                .collect()
        })
        .collect()
}

pub fn rows_of(m: &RatMat) -> Vec<Vec<Rat>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Determinant by Laplace expansion along the first row.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut acc = Rat::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn minor(m: &[Vec<Rat>], skip_r: usize, skip_c: usize) -> Vec<Vec<Rat>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(k, _)| *k != skip_c)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// `x` with `x M = v` (row convention), by Cramer's rule.
pub fn solve_row(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    let d = det(m);
    (0..m.len())
        .map(|i| {
            let mut mi = m.to_vec();
            mi[i] = v.to_vec();
            det(&mi) / &d
        })
        .collect()
}

pub fn is_int(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn quad(g: &[Vec<Rat>], x: &[i64]) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..x.len() {
        for j in 0..x.len() {
            acc += &g[i][j] * r(x[i] * x[j]);
        }
    }
    acc
}

/// Sylvester's criterion.
pub fn positive_definite(g: &[Vec<Rat>]) -> bool {
    (1..=g.len()).all(|k| {
        let lead: Vec<Vec<Rat>> = g[..k].iter().map(|row| row[..k].to_vec()).collect();
        det(&lead).is_positive()
    })
}

/// Smallest `R` such that every `x` with `q(x) <= min diagonal` has all
/// `|x_i| <= R`, from `x_i^2 <= q(x) (G^-1)_ii`.
pub fn certified_box(g: &[Vec<Rat>]) -> i64 {
    let d = det(g);
    let m = (0..g.len()).map(|i| g[i][i].clone()).min().unwrap();
    (0..g.len())
        .map(|i| {
            let inv_ii = det(&minor(g, i, i)) / &d;
            let bound = &m * inv_ii;
            let mut k = 0i64;
            while r(k * k) < bound {
                k += 1;
            }
            k
        })
        .max()
        .unwrap()
}

/// Minimum and number of minimal vectors over the box `|x_i| <= radius`.
pub fn brute_min(g: &[Vec<Rat>], radius: i64) -> (Rat, u64) {
    let n = g.len();
    let mut best: Option<Rat> = None;
    let mut count = 0;
    let mut x = vec![-radius; n];
    loop {
        if x.iter().any(|&c| c != 0) {
            let v = quad(g, &x);
            match &best {
                Some(b) if v > *b => {}
                Some(b) if v == *b => count += 1,
                _ => {
                    best = Some(v);
                    count = 1;
                }
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return (best.unwrap(), count);
            }
            if x[k] < radius {
                x[k] += 1;
                break;
            }
            x[k] = -radius;
            k += 1;
        }
    }
}

pub fn squarefree_part(n: i64) -> i64 {
    let mut m = n;
    let mut d = 2;
    while d * d <= m.abs() {
        while m % (d * d) == 0 {
            m /= d * d;
        }
        d += 1;
    }
    m
}

/// `(a,b)_p` by deciding whether `z^2 = a x^2 + b y^2` has a nontrivial
/// `p`-adic solution. After removing square factors the coefficients have
/// valuation at most 1, and a primitive solution lifts by Hensel's lemma as
/// soon as it exists modulo `p` (odd `p`) or `8` (`p = 2`) with some unit
/// variable carrying a unit coefficient. When `p` divides both coefficients
/// the pair is first replaced by `(a, -ab)`, which has the same symbol.
pub fn hilbert_by_search(a: i64, b: i64, p: u64) -> i8 {
    let m = if p == 2 { 8 } else { p as i64 };
    let p = p as i64;
    let unit = |v: i64| v.rem_euclid(p) != 0;
    let a = squarefree_part(a);
    let mut b = squarefree_part(b);
    if !unit(a) && !unit(b) {
        b = squarefree_part(-a * b);
    }
    // for each residue v: (has a square root, has a unit square root)
    let mut roots = vec![(false, false); m as usize];
    for z in 0..m {
        let e = &mut roots[(z * z % m) as usize];
        e.0 = true;
        e.1 |= unit(z);
    }
    for x in 0..m {
        for y in 0..m {
            let (any, unit_root) = roots[(a * x * x + b * y * y).rem_euclid(m) as usize];
            let side = (unit(x) && unit(a)) || (unit(y) && unit(b));
            if unit_root || (any && side) {
                return 1;
            }
        }
    }
    -1
}

pub fn hilbert_at_infinity(a: i64, b: i64) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

pub fn small_primes(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}
