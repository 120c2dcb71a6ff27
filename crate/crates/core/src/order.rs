//! Orders in `(a,b/Q)`: validation, reduced discriminant, maximality,
//! maximalization, left/right orders, normalizer membership, and the
//! catalog of explicit maximal orders.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::exact::{int_sqrt_exact, is_integer, Int, Rat, RatMat};
use crate::lattice::ZLat4;
use crate::quaternion::{QElem, QuaternionAlgebra};

/// A full-rank subring of `A` whose elements have integral trace and norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order {
    lattice: ZLat4,
    reduced_disc: Int,
}

/// Integrality checks on a basis: `trd(v)`, `nrd(v)` and `nrd(v + w)` must be integers.
fn check_integral(algebra: &QuaternionAlgebra, basis: &[QElem]) -> Result<()> {
    for (k, v) in basis.iter().enumerate() {
        if !is_integer(&v.trd()) {
            return Err(Error::NotIntegral(format!("trd({v}) = {}", v.trd())));
        }
        let n = algebra.nrd(v);
        if !is_integer(&n) {
            return Err(Error::NotIntegral(format!("nrd({v}) = {n}")));
        }
        for w in &basis[k + 1..] {
            let s = v + w;
            let n = algebra.nrd(&s);
            if !is_integer(&n) {
                return Err(Error::NotIntegral(format!("nrd({s}) = {n}")));
            }
        }
    }
    Ok(())
}

/// `(trd(v_k v_l))` for the given elements.
pub fn trace_form(algebra: &QuaternionAlgebra, basis: &[QElem]) -> RatMat {
    let n = basis.len();
    let mut t = RatMat::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            t[(k, l)] = algebra.mul(&basis[k], &basis[l]).trd();
        }
    }
    t
}

fn reduced_disc_of(lattice: &ZLat4) -> Result<Int> {
    let det = trace_form(lattice.algebra(), &lattice.elements())
        .det()?
        .abs();
    if !is_integer(&det) {
        return Err(Error::InternalNonSquareDiscriminant(det.to_string()));
    }
    int_sqrt_exact(&det.to_integer())
        .ok_or_else(|| Error::InternalNonSquareDiscriminant(det.to_string()))
}

impl Order {
    /// Validates that `basis` spans an order: full rank, contains 1, integral,
    /// and closed under multiplication.
    pub fn from_basis(algebra: &QuaternionAlgebra, basis: &[QElem]) -> Result<Order> {
        let lattice = ZLat4::from_generators(algebra, basis).map_err(|e| match e {
            Error::SingularBasis { .. } => Error::NotFullRank,
            other => other,
        })?;
        Self::from_lattice(lattice)
    }

    pub fn from_lattice(lattice: ZLat4) -> Result<Order> {
        if !lattice.contains(&QElem::one()) {
            return Err(Error::NotARing("1 is not in the lattice".into()));
        }
        let algebra = lattice.algebra().clone();
        let elems = lattice.elements();
        check_integral(&algebra, &elems)?;
        for x in &elems {
            for y in &elems {
                let xy = algebra.mul(x, y);
                if !lattice.contains(&xy) {
                    return Err(Error::NotARing(format!("{x} * {y} = {xy}")));
                }
            }
        }
        let reduced_disc = reduced_disc_of(&lattice)?;
        Ok(Order {
            lattice,
            reduced_disc,
        })
    }

    /// `Z<1, i, j, ij>`.
    pub fn standard(algebra: &QuaternionAlgebra) -> Result<Order> {
        Self::from_basis(
            algebra,
            &[QElem::one(), QElem::i(), QElem::j(), QElem::ij()],
        )
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        self.lattice.algebra()
    }

    pub fn lattice(&self) -> &ZLat4 {
        &self.lattice
    }

    pub fn elements(&self) -> Vec<QElem> {
        self.lattice.elements()
    }

    pub fn contains(&self, x: &QElem) -> bool {
        self.lattice.contains(x)
    }

    /// The positive `d` with `d^2 = |det(trd(v_k v_l))|`.
    pub fn reduced_discriminant(&self) -> &Int {
        &self.reduced_disc
    }

    /// Maximal iff the reduced discriminant equals the product of ramified primes.
    pub fn is_maximal(&self) -> bool {
        self.reduced_disc == Int::from(self.algebra().discriminant())
    }

    /// Dual of the order under `(x, y) -> trd(x y)`; for a maximal order this
    /// is the codifferent.
    pub fn trace_dual(&self) -> Result<ZLat4> {
        let elems = self.elements();
        let t = trace_form(self.algebra(), &elems);
        let b = RatMat::from_rows(elems.iter().map(|e| e.0.to_vec()).collect())?;
        ZLat4::from_matrix(self.algebra(), &(&t.inverse()? * &b))
    }

    /// `{x ∈ Λ : trd(x Λ) ⊆ pZ}`, a two-sided ideal between `pΛ` and `Λ`
    /// containing the Jacobson radical lift at `p`.
    pub fn trace_kernel(&self, p: u64) -> Result<ZLat4> {
        let pd = self.trace_dual()?.scale(&Rat::from_integer(p.into()))?;
        ZLat4::intersect_all(&[self.lattice.clone(), pd])
    }

    /// `β Λ β^-1 ⊆ Λ`, checked on the basis.
    pub fn normalizer_contains(&self, beta: &QElem) -> bool {
        let alg = self.algebra();
        let Some(inv) = alg.inverse(beta) else {
            return false;
        };
        self.elements()
            .iter()
            .all(|v| self.contains(&alg.mul(&alg.mul(beta, v), &inv)))
    }

    /// A maximal order containing `self`.
    ///
    /// At each prime `p` where the discriminant is too large, the elements
    /// `x = y/p` with `y` in the trace kernel at `p` are exactly the candidates
    /// for a first step up (any overorder of `p`-power index contains one). Each
    /// integral candidate is closed under multiplication inside the trace dual;
    /// the first closure that is an order replaces the current one.
    pub fn maximalize(&self) -> Result<Order> {
        let target = Int::from(self.algebra().discriminant());
        let mut current = self.clone();
        for (p, _) in factorize(self.reduced_disc.to_u64_checked()?) {
            let pi = Int::from(p);
            while valuation(&current.reduced_disc, &pi) > valuation(&target, &pi) {
                current = current.enlarge_at(p)?.ok_or_else(|| {
                    Error::MaximalizationFailed(format!(
                        "no overorder at p = {p}, discriminant {}",
                        current.reduced_disc
                    ))
                })?;
            }
        }
        if !current.is_maximal() {
            return Err(Error::MaximalizationFailed(format!(
                "fixpoint with discriminant {}",
                current.reduced_disc
            )));
        }
        Ok(current)
    }

    fn enlarge_at(&self, p: u64) -> Result<Option<Order>> {
        let alg = self.algebra();
        let elems = self.elements();
        let basis = self.lattice.basis();
        let ceiling = self.trace_dual()?;
        let kernel = self.trace_kernel(p)?;
        // kernel in coordinates of the order's basis; rows with pivot 1 span kernel / pΛ
        let coords = kernel.basis() * &basis.inverse()?;
        let coords = crate::exact::canonical_lattice_basis(&coords)?;
        let gens: Vec<Vec<Int>> = (0..4)
            .filter(|&r| {
                let pivot = coords.row(r).iter().find(|x| !x.is_zero());
                pivot.is_some_and(|x| x.is_one())
            })
            .map(|r| coords.row(r).iter().map(Rat::to_integer).collect())
            .collect();
        let pr = Rat::new(Int::one(), Int::from(p));
        for combo in projective_points(gens.len(), p) {
            let mut y = vec![Int::zero(); 4];
            for (c, g) in combo.iter().zip(&gens) {
                for k in 0..4 {
                    y[k] += Int::from(*c) * &g[k];
                }
            }
            let x = y
                .iter()
                .zip(&elems)
                .fold(QElem::zero(), |acc, (c, v)| {
                    &acc + &v.scale(&Rat::from_integer(c.mod_floor(&Int::from(p))))
                })
                .scale(&pr);
            if self.contains(&x) || !is_integer(&alg.nrd(&x)) {
                continue;
            }
            let mut gens_x = elems.clone();
            gens_x.push(x);
            let start = ZLat4::from_generators(alg, &gens_x)?;
            if let Some(closed) = ring_closure(start, &ceiling)? {
                if let Ok(order) = Order::from_lattice(closed) {
                    if order.reduced_disc < self.reduced_disc {
                        return Ok(Some(order));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `{x : x L ⊆ L}`.
    pub fn left_order_of(l: &ZLat4) -> Result<Order> {
        Order::from_lattice(l.left_colon(l)?)
    }

    /// `{x : L x ⊆ L}`.
    pub fn right_order_of(l: &ZLat4) -> Result<Order> {
        Order::from_lattice(l.right_colon(l)?)
    }
}

trait ToU64Checked {
    fn to_u64_checked(&self) -> Result<u64>;
}

impl ToU64Checked for Int {
    fn to_u64_checked(&self) -> Result<u64> {
        u64::try_from(self).map_err(|_| Error::Internal(format!("{self} does not fit in u64")))
    }
}

fn valuation(n: &Int, p: &Int) -> u32 {
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// Coefficient vectors in `F_p^k` whose first nonzero entry is 1.
fn projective_points(k: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (p as u128).pow(k as u32);
    (1..total).filter_map(move |mut n| {
        let mut v = vec![0u64; k];
        for slot in v.iter_mut().rev() {
            *slot = (n % p as u128) as u64;
            n /= p as u128;
        }
        (v.iter().find(|&&c| c != 0) == Some(&1)).then_some(v)
    })
}

/// Smallest ring containing `start`, or `None` if it leaves `ceiling`.
fn ring_closure(start: ZLat4, ceiling: &ZLat4) -> Result<Option<ZLat4>> {
    let mut l = start;
    loop {
        if !l.is_sublattice_of(ceiling) {
            return Ok(None);
        }
        let next = l.sum(&l.product(&l)?)?;
        if next == l {
            return Ok(Some(l));
        }
        l = next;
    }
}

pub fn left_order(l: &ZLat4) -> Result<Order> {
    Order::left_order_of(l)
}

pub fn right_order(l: &ZLat4) -> Result<Order> {
    Order::right_order_of(l)
}

/// Explicit maximal orders with closed-form bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogOrder {
    /// `{1, i, j, (1+i+j+ij)/2}` in `(-1,-1)`.
    Hurwitz,
    /// `{1, i, (1+j)/2, (i+ij)/2}` in `(-1,-ℓ)`, `ℓ ≡ 3 mod 4`.
    Case2,
    /// `{i, (1+i+j)/2, j, (2+i+ij)/4}` in `(-2,-ℓ)`, `ℓ ≡ 5 mod 8`.
    Case3,
    /// `{1, (1+i)/2, (3+i+3j+ij)/6, (-3+i-2ij)/6}` in `(-3,-17)`.
    Example17,
}

impl CatalogOrder {
    pub const ALL: [CatalogOrder; 4] = [
        CatalogOrder::Hurwitz,
        CatalogOrder::Case2,
        CatalogOrder::Case3,
        CatalogOrder::Example17,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogOrder::Hurwitz => "hurwitz",
            CatalogOrder::Case2 => "case2",
            CatalogOrder::Case3 => "case3",
            CatalogOrder::Example17 => "ell17",
        }
    }

    pub fn basis(self) -> [QElem; 4] {
        match self {
            CatalogOrder::Hurwitz => [
                QElem::one(),
                QElem::i(),
                QElem::j(),
                QElem::from_ratio([1, 1, 1, 1], 2),
            ],
            CatalogOrder::Case2 => [
                QElem::one(),
                QElem::i(),
                QElem::from_ratio([1, 0, 1, 0], 2),
                QElem::from_ratio([0, 1, 0, 1], 2),
            ],
            CatalogOrder::Case3 => [
                QElem::i(),
                QElem::from_ratio([1, 1, 1, 0], 2),
                QElem::j(),
                QElem::from_ratio([2, 1, 0, 1], 4),
            ],
            CatalogOrder::Example17 => [
                QElem::one(),
                QElem::from_ratio([1, 1, 0, 0], 2),
                QElem::from_ratio([3, 1, 3, 1], 6),
                QElem::from_ratio([-3, 1, 0, -2], 6),
            ],
        }
    }

    /// The smallest algebra the preset is stated for.
    pub fn default_algebra(self) -> QuaternionAlgebra {
        let (a, b) = match self {
            CatalogOrder::Hurwitz => (-1, -1),
            CatalogOrder::Case2 => (-1, -3),
            CatalogOrder::Case3 => (-2, -5),
            CatalogOrder::Example17 => (-3, -17),
        };
        QuaternionAlgebra::new(a, b).expect("nonzero parameters")
    }

    pub fn order(self, algebra: &QuaternionAlgebra) -> Result<Order> {
        Order::from_basis(algebra, &self.basis())
    }
}

impl fmt::Display for CatalogOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CatalogOrder::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown order preset {s:?}")))
    }
}
