//! Exact short-vector enumeration for positive definite rational Gram matrices.
//!
//! The form is rewritten as `q(x) = Σ d_i (x_i + Σ_{j>i} m_ij x_j)^2` (rational
//! LDL^T, no square roots) and coordinates are enumerated from the last one
//! down. Every bound comparison is an exact rational comparison.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rat, RatMat};

/// `(d, m)` with `d_i > 0` on the diagonal of the returned matrix and the
/// multipliers `m_ij` above it.
fn ldl(gram: &RatMat) -> Result<RatMat> {
    if !gram.is_symmetric() {
        return Err(Error::NotPositiveDefinite);
    }
    let n = gram.rows();
    let mut q = gram.clone();
    for i in 0..n {
        if !q[(i, i)].is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            q[(j, i)] = q[(i, j)].clone();
            q[(i, j)] = &q[(i, j)] / &q[(i, i)];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[(k, i)] * &q[(i, l)];
                q[(k, l)] -= v;
            }
        }
    }
    Ok(q)
}

pub fn quadratic_form(gram: &RatMat, x: &[i64]) -> Rat {
    let n = gram.rows();
    let mut acc = Rat::zero();
    for i in 0..n {
        for j in 0..n {
            acc += &gram[(i, j)] * Rat::from_integer((x[i] * x[j]).into());
        }
    }
    acc
}

struct Search<'a, F> {
    q: &'a RatMat,
    x: Vec<i64>,
    bound: Rat,
    visit: F,
}

impl<F: FnMut(&[i64], &Rat) -> Option<Rat>> Search<'_, F> {
    /// `partial` is the contribution of coordinates `i+1..n`.
    fn level(&mut self, i: usize, partial: Rat) {
        let n = self.x.len();
        let center = (i + 1..n).fold(Rat::zero(), |acc, j| {
            acc + &self.q[(i, j)] * Rat::from_integer(self.x[j].into())
        });
        let d = self.q[(i, i)].clone();
        let start = (-&center).round().to_integer();
        let start: i64 = i64::try_from(&start).expect("coordinate fits in i64");
        for dir in [1i64, -1] {
            let mut xi = if dir == 1 { start } else { start - 1 };
            loop {
                let shifted = Rat::from_integer(xi.into()) + &center;
                let total = &partial + &d * &shifted * &shifted;
                if total > self.bound {
                    break;
                }
                self.x[i] = xi;
                if i == 0 {
                    if self.x.iter().any(|&c| c != 0) {
                        if let Some(b) = (self.visit)(&self.x, &total) {
                            self.bound = b;
                        }
                    }
                } else {
                    self.level(i - 1, total);
                }
                xi += dir;
            }
        }
        self.x[i] = 0;
    }
}

/// Calls `visit(x, q(x))` for every nonzero integer `x` with `q(x) <= bound`.
/// `visit` may return a smaller bound to shrink the search.
pub fn for_each_short_vector(
    gram: &RatMat,
    bound: &Rat,
    visit: impl FnMut(&[i64], &Rat) -> Option<Rat>,
) -> Result<()> {
    let q = ldl(gram)?;
    let n = gram.rows();
    if n == 0 {
        return Ok(());
    }
    let mut s = Search {
        q: &q,
        x: vec![0; n],
        bound: bound.clone(),
        visit,
    };
    s.level(n - 1, Rat::zero());
    Ok(())
}

/// All nonzero `x` with `q(x) <= bound`, each with its norm, in enumeration order.
pub fn short_vectors(gram: &RatMat, bound: &Rat) -> Result<Vec<(Vec<i64>, Rat)>> {
    let mut out = Vec::new();
    for_each_short_vector(gram, bound, |x, n| {
        out.push((x.to_vec(), n.clone()));
        None
    })?;
    Ok(out)
}

/// All `x` with `q(x) = norm` exactly.
pub fn vectors_of_norm(gram: &RatMat, norm: &Rat) -> Result<Vec<Vec<i64>>> {
    Ok(short_vectors(gram, norm)?
        .into_iter()
        .filter(|(_, n)| n == norm)
        .map(|(x, _)| x)
        .collect())
}

/// Exact minimum of `q` over nonzero integer vectors and the number of
/// vectors attaining it (both signs counted).
///
/// The radius starts at the smallest diagonal entry and shrinks whenever a
/// shorter vector turns up.
pub fn minimum_and_kissing(gram: &RatMat) -> Result<(Rat, u64)> {
    let n = gram.rows();
    if n == 0 {
        return Err(Error::NotPositiveDefinite);
    }
    let seed = (0..n)
        .map(|i| gram[(i, i)].clone())
        .min()
        .expect("nonempty diagonal");
    let mut best = seed.clone();
    let mut count = 0u64;
    for_each_short_vector(gram, &seed, |_, norm| {
        if *norm < best {
            best = norm.clone();
            count = 1;
            Some(best.clone())
        } else {
            if *norm == best {
                count += 1;
            }
            None
        }
    })?;
    Ok((best, count))
}
