//! Choosing an algebra, maximal order, `β`, ideal and `α` that realize an
//! Arakelov-modular lattice of a given level, and deciding existence over a
//! fixed maximal order.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::arith::{factorize, is_prime, primes_below};
use crate::enumerate::vectors_of_norm;
use crate::error::{Error, Result};
use crate::exact::{Int, Rat};
use crate::ideal::{prime_ideal_above, TwoSidedIdeal};
use crate::ideal_lattice::{
    gram_of_basis, verify_arakelov_modular, IdealLattice, ModularityCertificate,
};
use crate::order::{CatalogOrder, Order};
use crate::quaternion::{QElem, QuaternionAlgebra};
use crate::symbols::{legendre, ramified_primes};

pub const SEARCH_BOUND_VAR: &str = "AMLAT_SEARCH_BOUND";
pub const DEFAULT_SEARCH_BOUND: usize = 64;

/// Maximum number of norm shells the composite-level search may enumerate.
pub fn search_bound() -> Result<usize> {
    match std::env::var(SEARCH_BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEARCH_BOUND_VAR}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_SEARCH_BOUND),
    }
}

/// `ℓ = ∏ p^{r_p}` split as `ℓ1^2 ℓ2`, where `ℓ2` collects the primes of odd
/// exponent and `ℓ1` the square root of the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelFactorization {
    pub ell: u64,
    pub ell1: u64,
    pub ell2: u64,
    pub exponents: BTreeMap<u64, u32>,
}

impl LevelFactorization {
    pub fn new(ell: u64) -> Result<Self> {
        if ell < 1 {
            return Err(Error::Parse("level must be positive".into()));
        }
        let exponents: BTreeMap<u64, u32> = factorize(ell).into_iter().collect();
        let mut ell1 = 1;
        let mut ell2 = 1;
        for (&p, &r) in &exponents {
            if r % 2 == 1 {
                ell2 *= p.pow(r);
            } else {
                ell1 *= p.pow(r / 2);
            }
        }
        Ok(LevelFactorization {
            ell,
            ell1,
            ell2,
            exponents,
        })
    }

    /// Primes with odd exponent: the only possible finite ramification.
    pub fn odd_support(&self) -> Vec<u64> {
        self.exponents
            .iter()
            .filter(|(_, r)| *r % 2 == 1)
            .map(|(p, _)| *p)
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.ell2 == 1
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }

    /// `ℓ1 ∏ p^{(r_p - 1)/2}`: the rational factor of `β` once `β0` has
    /// norm `∏ p`.
    pub fn beta_scale(&self) -> u64 {
        self.odd_support()
            .iter()
            .fold(self.ell1, |acc, &p| acc * p.pow((self.exponent(p) - 1) / 2))
    }
}

/// Which of the prime-level constructions applies, by residue class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `p = 2`.
    One,
    /// `p ≡ 3 mod 4`.
    Two,
    /// `p ≡ 5 mod 8`.
    Three,
    /// `p ≡ 1 mod 8`.
    Four,
    /// More than one ramified prime.
    Composite,
}

impl Case {
    pub fn of_prime(p: u64) -> Case {
        match (p, p % 8) {
            (2, _) => Case::One,
            (_, 3 | 7) => Case::Two,
            (_, 5) => Case::Three,
            _ => Case::Four,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::One => "1",
            Case::Two => "2",
            Case::Three => "3",
            Case::Four => "4",
            Case::Composite => "composite",
        })
    }
}

/// Everything needed to build the lattice `(J, q_α)` with `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub factorization: LevelFactorization,
    pub case: Case,
    pub algebra: QuaternionAlgebra,
    /// The auxiliary prime used in case 4.
    pub q: Option<u64>,
    /// Catalog preset name, or `"maximalized"`.
    pub order_name: String,
    pub order: Order,
    /// `β0` with `nrd(β0) = ∏ ramified p`.
    pub beta0: QElem,
    /// `β = ℓ1 ∏ p^{(r_p-1)/2} β0`.
    pub beta: QElem,
    /// Exponent of the prime above each ramified `p` in `J`.
    pub ideal_exponents: BTreeMap<u64, u32>,
    pub alpha: Rat,
    pub t: QElem,
}

/// The definite algebra ramified exactly at the prime `ell`, with the
/// auxiliary prime `q` when `ell ≡ 1 mod 8`.
pub fn algebra_for_prime(ell: u64) -> Result<(QuaternionAlgebra, Option<u64>)> {
    if !is_prime(ell) {
        return Err(Error::InvalidPrime(ell as i64));
    }
    let l = ell as i64;
    let (a, b, q) = match Case::of_prime(ell) {
        Case::One => (-1, -1, None),
        Case::Two => (-1, -l, None),
        Case::Three => (-2, -l, None),
        _ => {
            let q = (3..)
                .step_by(4)
                .filter(|&q| is_prime(q))
                .find(|&q| legendre(l, q) == Ok(-1))
                .expect("a prime q ≡ 3 mod 4 with (ℓ/q) = -1 exists");
            (-(q as i64), -l, Some(q))
        }
    };
    let algebra = QuaternionAlgebra::new(a, b)?;
    if algebra.ramified_primes() != [ell] {
        return Err(Error::RamificationCheckFailed { a, b, ell });
    }
    Ok((algebra, q))
}

fn prime_order(ell: u64, algebra: &QuaternionAlgebra) -> Result<(String, Order)> {
    let preset = match Case::of_prime(ell) {
        Case::One => Some(CatalogOrder::Hurwitz),
        Case::Two => Some(CatalogOrder::Case2),
        Case::Three => Some(CatalogOrder::Case3),
        _ if (algebra.a(), algebra.b()) == (-3, -17) => Some(CatalogOrder::Example17),
        _ => None,
    };
    match preset {
        Some(c) => Ok((c.name().to_string(), c.order(algebra)?)),
        None => Ok((
            "maximalized".into(),
            Order::standard(algebra)?.maximalize()?,
        )),
    }
}

/// `i - j` for `p = 2`, else `j`, checked to lie in `Λ ∩ N(Λ)` with norm `p`.
pub fn beta_for(case: Case, order: &Order, p: u64) -> Result<QElem> {
    let beta = match case {
        Case::One => &QElem::i() - &QElem::j(),
        _ => QElem::j(),
    };
    if !order.contains(&beta) {
        return Err(Error::BetaVerificationFailed(format!(
            "{beta} is not in the order"
        )));
    }
    if !order.normalizer_contains(&beta) {
        return Err(Error::BetaVerificationFailed(format!(
            "{beta} does not normalize the order"
        )));
    }
    let n = order.algebra().nrd(&beta);
    if n != Rat::from_integer(Int::from(p)) {
        return Err(Error::BetaVerificationFailed(format!(
            "nrd({beta}) = {n}, expected {p}"
        )));
    }
    Ok(beta)
}

/// The first element of `Λ ∩ N(Λ)` with reduced norm `m`, enumerating the
/// shell `q_1(x) = 2m` of `(Λ, q_1)`.
pub fn find_normalizing_element(order: &Order, m: u64) -> Result<Option<QElem>> {
    let alg = order.algebra();
    let basis = order.elements();
    let gram = gram_of_basis(alg, &basis, &Rat::from_integer(1.into()));
    let target = Rat::from_integer(Int::from(2 * m));
    for x in vectors_of_norm(&gram, &target)? {
        let elem = x.iter().zip(&basis).fold(QElem::zero(), |acc, (&c, v)| {
            &acc + &v.scale(&Rat::from_integer(c.into()))
        });
        if order.normalizer_contains(&elem) {
            return Ok(Some(elem));
        }
    }
    Ok(None)
}

/// Candidate parameters for the composite search: first `-1, -2, -3, -5, ...`
/// up to `-bound`, then the remaining negative square-free `-d`, `d <= bound`.
/// Prime parameters alone cannot ramify at two odd primes together with 2.
fn grid_values(bound: u64) -> Vec<Vec<i64>> {
    let mut primes = vec![-1, -2];
    primes.extend(
        primes_below(bound + 1)
            .filter(|&q| q > 2)
            .map(|q| -(q as i64)),
    );
    let squarefree = (1..=bound as i64)
        .map(|d| -d)
        .filter(|d| !primes.contains(d))
        .filter(|d| factorize(d.unsigned_abs()).iter().all(|&(_, e)| e == 1));
    let mut all = primes.clone();
    all.extend(squarefree);
    vec![primes, all]
}

fn composite_plan_parts(support: &[u64]) -> Result<(QuaternionAlgebra, Order, QElem)> {
    let bound = search_bound()?;
    let m: u64 = support.iter().product();
    let mut shells = 0usize;
    let mut seen = std::collections::BTreeSet::new();
    let grids = grid_values(4 * m);
    let pairs = grids.iter().flat_map(|values| {
        values
            .iter()
            .enumerate()
            .flat_map(move |(ia, &a)| values[ia..].iter().map(move |&b| (a, b)))
    });
    for (a, b) in pairs {
        if !seen.insert((a, b)) || ramified_primes(a, b)? != support {
            continue;
        }
        if shells == bound {
            return Err(Error::NoPlanFound(format!(
                "search bound of {bound} shells exhausted"
            )));
        }
        shells += 1;
        let algebra = QuaternionAlgebra::new(a, b)?;
        let order = Order::standard(&algebra)?.maximalize()?;
        if let Some(beta0) = find_normalizing_element(&order, m)? {
            return Ok((algebra, order, beta0));
        }
    }
    Err(Error::NoPlanFound(format!(
        "no algebra in the search grid ramified at {support:?} admits β"
    )))
}

/// Picks algebra, order, `β`, ideal exponents and `α = ℓ1` for level `ell`.
pub fn plan(ell: u64) -> Result<ConstructionPlan> {
    if ell < 2 {
        return Err(Error::Parse("level must be at least 2".into()));
    }
    let f = LevelFactorization::new(ell)?;
    if f.is_square() {
        return Err(Error::NoPlanFound("square level".into()));
    }
    let support = f.odd_support();
    if support.len() % 2 == 0 {
        return Err(Error::NoPlanFound(format!(
            "primes of odd exponent {support:?} are even in number, but a definite algebra over Q ramifies at an odd number of primes"
        )));
    }
    let (case, algebra, q, order_name, order, beta0) = if let [p] = support[..] {
        let case = Case::of_prime(p);
        let (algebra, q) = algebra_for_prime(p)?;
        let (name, order) = prime_order(p, &algebra)?;
        let beta0 = beta_for(case, &order, p)?;
        (case, algebra, q, name, order, beta0)
    } else {
        let (algebra, order, beta0) = composite_plan_parts(&support)?;
        (
            Case::Composite,
            algebra,
            None,
            "maximalized".into(),
            order,
            beta0,
        )
    };
    let beta = beta0.scale(&Rat::from_integer(f.beta_scale().into()));
    let ideal_exponents = support
        .iter()
        .map(|&p| (p, (f.exponent(p) - 1) / 2))
        .collect();
    Ok(ConstructionPlan {
        alpha: Rat::from_integer(f.ell1.into()),
        factorization: f,
        case,
        algebra,
        q,
        order_name,
        order,
        beta0,
        beta,
        ideal_exponents,
        t: QElem::one(),
    })
}

impl ConstructionPlan {
    /// `J = ∏ P_p^{e_p}`.
    pub fn ideal(&self) -> Result<TwoSidedIdeal> {
        let mut j = TwoSidedIdeal::unit(&self.order)?;
        for (&p, &e) in &self.ideal_exponents {
            if e > 0 {
                j = j.mul(&prime_ideal_above(&self.order, p)?.pow(e)?)?;
            }
        }
        Ok(j)
    }

    pub fn realize(&self) -> Result<(IdealLattice, ModularityCertificate)> {
        let lattice = IdealLattice::new(self.ideal()?, self.alpha.clone())?;
        let cert = verify_arakelov_modular(&lattice, &self.beta, self.factorization.ell)?;
        if !cert.is_valid() {
            return Err(Error::Internal(format!(
                "constructed lattice fails {:?}",
                cert.checks.failures()
            )));
        }
        Ok((lattice, cert))
    }
}

/// An Arakelov-modular lattice of level `ell` with its certificate.
pub fn construct(ell: u64) -> Result<(IdealLattice, ModularityCertificate)> {
    plan(ell)?.realize()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Existence {
    pub exists: bool,
    pub reason: String,
    pub beta: Option<QElem>,
}

impl Existence {
    fn no(reason: String) -> Self {
        Existence {
            exists: false,
            reason,
            beta: None,
        }
    }
}

/// Decides whether an Arakelov-modular lattice of level `ell` exists over the
/// maximal order `order`.
///
/// Such a lattice needs `β ∈ Λ ∩ N(Λ)` with `nrd(β) = ℓ`. Up to rational
/// scaling `βΛ` is a product of distinct ramified primes, so `ℓ` must have odd
/// exponent exactly at the ramified primes, and `β` exists iff some element of
/// `Λ ∩ N(Λ)` has norm `∏ ramified p`.
pub fn exists_arakelov_modular(order: &Order, ell: u64) -> Result<Existence> {
    if !order.is_maximal() {
        return Err(Error::NotMaximal(order.reduced_discriminant().to_string()));
    }
    let f = LevelFactorization::new(ell)?;
    if f.is_square() {
        return Ok(Existence::no("square level".into()));
    }
    let ram = order.algebra().ramified_primes();
    if f.odd_support() != ram {
        return Ok(Existence::no(format!(
            "primes of odd exponent {:?} differ from the ramified primes {ram:?}",
            f.odd_support()
        )));
    }
    if f.ell1.gcd(&f.ell2) != 1 {
        return Ok(Existence::no(format!(
            "gcd(ℓ1, ℓ2) = gcd({}, {}) != 1",
            f.ell1, f.ell2
        )));
    }
    let m: u64 = ram.iter().product();
    match find_normalizing_element(order, m)? {
        Some(beta0) => Ok(Existence {
            exists: true,
            reason: format!("β0 = {beta0} has norm {m} and normalizes the order"),
            beta: Some(beta0.scale(&Rat::from_integer(f.beta_scale().into()))),
        }),
        None => Ok(Existence::no(format!(
            "no element of Λ ∩ N(Λ) has reduced norm {m}"
        ))),
    }
}
