//! Generalized two-sided ideals `I = J t` of a maximal order `Λ`, with `J`
//! two-sided (`O_l(J) = O_r(J) = Λ`) and `t` invertible.

use crate::error::{Error, Result};
use crate::exact::{rat_sqrt, Rat};
use crate::lattice::ZLat4;
use crate::order::Order;
use crate::quaternion::QElem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoSidedIdeal {
    order: Order,
    j: ZLat4,
    t: QElem,
    lattice: ZLat4,
}

fn require_maximal(order: &Order) -> Result<()> {
    if order.is_maximal() {
        Ok(())
    } else {
        Err(Error::NotMaximal(order.reduced_discriminant().to_string()))
    }
}

impl TwoSidedIdeal {
    /// `J t`, after checking that `J` is two-sided over the maximal order.
    pub fn new(order: &Order, j: ZLat4, t: QElem) -> Result<Self> {
        require_maximal(order)?;
        let alg = order.algebra();
        if alg.inverse(&t).is_none() {
            return Err(Error::NotTwoSided(format!("t = {t} is not invertible")));
        }
        let left = j.left_colon(&j)?;
        let right = j.right_colon(&j)?;
        if &left != order.lattice() || &right != order.lattice() {
            return Err(Error::NotTwoSided(
                "left or right order differs from the order".into(),
            ));
        }
        let lattice = j.mul_right(&t)?;
        Ok(TwoSidedIdeal {
            order: order.clone(),
            j,
            t,
            lattice,
        })
    }

    pub fn two_sided(order: &Order, j: ZLat4) -> Result<Self> {
        Self::new(order, j, QElem::one())
    }

    /// `Λ` itself.
    pub fn unit(order: &Order) -> Result<Self> {
        Self::two_sided(order, order.lattice().clone())
    }

    /// `q Λ` for a nonzero rational `q`.
    pub fn scalar(order: &Order, q: &Rat) -> Result<Self> {
        Self::two_sided(order, order.lattice().scale(q)?)
    }

    /// `β Λ` for `β` in the normalizer (where `β Λ = Λ β`).
    pub fn principal(order: &Order, beta: &QElem) -> Result<Self> {
        Self::two_sided(order, order.lattice().mul_left(beta)?)
    }

    /// `Λ t`, the simplest generalized ideal with a nontrivial `t`.
    pub fn order_times(order: &Order, t: &QElem) -> Result<Self> {
        Self::new(order, order.lattice().clone(), t.clone())
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn j(&self) -> &ZLat4 {
        &self.j
    }

    pub fn t(&self) -> &QElem {
        &self.t
    }

    /// The lattice `J t`.
    pub fn lattice(&self) -> &ZLat4 {
        &self.lattice
    }

    pub fn is_two_sided(&self) -> bool {
        let l = &self.lattice;
        matches!(
            (l.left_colon(l), l.right_colon(l)),
            (Ok(a), Ok(b)) if &a == self.order.lattice() && &b == self.order.lattice()
        )
    }

    /// Lattice product. The result is re-split as `J' (t1 t2)`; this needs
    /// `t1` to normalize `Λ`, otherwise `NotTwoSided` is returned.
    pub fn mul(&self, other: &TwoSidedIdeal) -> Result<TwoSidedIdeal> {
        if self.order != other.order {
            return Err(Error::OrderMismatch);
        }
        let alg = self.order.algebra();
        let lattice = self.lattice.product(&other.lattice)?;
        let t = alg.mul(&self.t, &other.t);
        let t_inv = alg.inverse(&t).ok_or(Error::SingularMatrix)?;
        Self::new(&self.order, lattice.mul_right(&t_inv)?, t)
    }

    pub fn pow(&self, e: u32) -> Result<TwoSidedIdeal> {
        let mut acc = Self::unit(&self.order)?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `{x : I x ⊆ Λ}` for a two-sided `I`; verified by `I I^-1 = I^-1 I = Λ`.
    pub fn inverse(&self) -> Result<TwoSidedIdeal> {
        if !self.is_two_sided() {
            return Err(Error::NotTwoSided(
                "inverse needs O_l(I) = O_r(I) = Λ".into(),
            ));
        }
        let inv = self.lattice.right_colon(self.order.lattice())?;
        let ideal = Self::two_sided(&self.order, inv)?;
        let unit = self.order.lattice();
        if self.lattice.product(&ideal.lattice)? != *unit
            || ideal.lattice.product(&self.lattice)? != *unit
        {
            return Err(Error::InverseVerificationFailed);
        }
        Ok(ideal)
    }

    /// `conj(J t) = conj(t) J`, re-split as `(conj(t) J conj(t)^-1) conj(t)`.
    pub fn conj(&self) -> Result<TwoSidedIdeal> {
        let alg = self.order.algebra();
        let tb = self.t.conj();
        let tb_inv = alg.inverse(&tb).ok_or(Error::SingularMatrix)?;
        let lattice = self.lattice.conj()?;
        Self::new(&self.order, lattice.mul_right(&tb_inv)?, tb)
    }

    /// Reduced norm `n(I) = n(J) nrd(t)`, from `n(I)^2 = [Λ : I]`.
    pub fn nrd(&self) -> Result<Rat> {
        let index = self.lattice.index_in(self.order.lattice());
        rat_sqrt(&index)
            .ok_or_else(|| Error::Internal(format!("index {index} is not a rational square")))
    }
}

/// The codifferent `{x : trd(x Λ) ⊆ Z}` of a maximal order.
pub fn codifferent(order: &Order) -> Result<ZLat4> {
    require_maximal(order)?;
    order.trace_dual()
}

/// The different: the inverse of the codifferent.
pub fn different(order: &Order) -> Result<TwoSidedIdeal> {
    TwoSidedIdeal::two_sided(order, codifferent(order)?)?.inverse()
}

/// The prime `P` above a ramified `p`, characterized by `P^2 = pΛ`.
///
/// For a maximal order `P` is the trace kernel `{x ∈ Λ : trd(xΛ) ⊆ pZ}`,
/// i.e. `pΛ` plus the lift of the radical of `Λ/pΛ`.
pub fn prime_ideal_above(order: &Order, p: u64) -> Result<TwoSidedIdeal> {
    if !order.algebra().is_ramified_at(p) {
        return Err(Error::NotRamified(p));
    }
    require_maximal(order)?;
    let prime = TwoSidedIdeal::two_sided(order, order.trace_kernel(p)?)?;
    let p_lambda = order.lattice().scale(&Rat::from_integer(p.into()))?;
    if prime.lattice.product(&prime.lattice)? != p_lambda {
        return Err(Error::Internal(format!("P^2 != {p}Λ")));
    }
    Ok(prime)
}

/// `n(I)` as a free function.
pub fn nrd_ideal(ideal: &TwoSidedIdeal) -> Result<Rat> {
    ideal.nrd()
}
