//! Ideal lattices `(I, q_α)` with `q_α(x, y) = trd(α x conj(y))`, their duals,
//! and certificates of Arakelov-modularity.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::enumerate;
use crate::error::{Error, Result};
use crate::exact::{as_string, is_integer, Int, Rat, RatMat};
use crate::ideal::{codifferent, TwoSidedIdeal};
use crate::lattice::ZLat4;
use crate::quaternion::{QElem, QuaternionAlgebra};

/// `G_kl = trd(α w_k conj(w_l))`.
pub fn gram_of_basis(algebra: &QuaternionAlgebra, basis: &[QElem], alpha: &Rat) -> RatMat {
    let n = basis.len();
    let mut g = RatMat::zeros(n, n);
    for k in 0..n {
        for l in k..n {
            let v = algebra.mul(&basis[k], &basis[l].conj()).trd() * alpha;
            g[(l, k)] = v.clone();
            g[(k, l)] = v;
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    ideal: TwoSidedIdeal,
    alpha: Rat,
    gram: RatMat,
}

impl IdealLattice {
    pub fn new(ideal: TwoSidedIdeal, alpha: Rat) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::NonPositiveAlpha);
        }
        let gram = gram_of_basis(ideal.order().algebra(), &ideal.lattice().elements(), &alpha);
        Ok(IdealLattice { ideal, alpha, gram })
    }

    pub fn ideal(&self) -> &TwoSidedIdeal {
        &self.ideal
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    /// Gram matrix on the canonical basis of `I`.
    pub fn gram(&self) -> &RatMat {
        &self.gram
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        self.ideal.order().algebra()
    }

    /// `det(G)`, checked against `α^4 n(I)^4 d(A)^2`.
    pub fn discriminant(&self) -> Result<Rat> {
        let det = self.gram.det()?;
        let n = self.ideal.nrd()?;
        let d = Rat::from_integer(Int::from(self.algebra().discriminant()));
        let a2 = &self.alpha * &self.alpha;
        let n2 = &n * &n;
        let formula = &a2 * &a2 * &n2 * &n2 * &d * &d;
        if det != formula {
            return Err(Error::DiscriminantFormulaMismatch {
                gram: det.to_string(),
                formula: formula.to_string(),
            });
        }
        Ok(det)
    }

    /// The dual as the span of `G^-1 B`.
    pub fn dual_by_gram(&self) -> Result<ZLat4> {
        let b = self.ideal.lattice().basis();
        ZLat4::from_matrix(self.algebra(), &(&self.gram.inverse()? * b))
    }

    /// The dual as `α^-1 𝒟^-1 conj(I)^-1`. With `I = J t` this is
    /// `α^-1 𝒟^-1 conj(J)^-1 conj(t)^-1`.
    pub fn dual_by_ideal(&self) -> Result<ZLat4> {
        let order = self.ideal.order();
        let alg = self.algebra();
        let jbar = TwoSidedIdeal::two_sided(order, self.ideal.j().conj()?)?;
        let jbar_inv = jbar.inverse()?;
        let tbar_inv = alg
            .inverse(&self.ideal.t().conj())
            .ok_or(Error::SingularMatrix)?;
        codifferent(order)?
            .product(jbar_inv.lattice())?
            .mul_right(&tbar_inv)?
            .scale(&self.alpha.recip())
    }

    /// The dual lattice, computed both ways and required to agree.
    pub fn dual(&self) -> Result<ZLat4> {
        let a = self.dual_by_gram()?;
        if a != self.dual_by_ideal()? {
            return Err(Error::DualMismatch);
        }
        Ok(a)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    /// Integral with even diagonal; for an integral form this makes every norm even.
    pub fn is_even(&self) -> bool {
        let two = Rat::from_integer(2.into());
        self.is_integral() && (0..4).all(|i| is_integer(&(&self.gram[(i, i)] / &two)))
    }

    pub fn minimum_and_kissing(&self) -> Result<(Rat, u64)> {
        enumerate::minimum_and_kissing(&self.gram)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub beta_in_order: bool,
    pub beta_in_normalizer: bool,
    pub nrd_beta_eq_ell: bool,
    pub dual_identity: bool,
    pub similitude_identity: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.beta_in_order
            && self.beta_in_normalizer
            && self.nrd_beta_eq_ell
            && self.dual_identity
            && self.similitude_identity
    }

    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("beta_in_order", self.beta_in_order),
            ("beta_in_normalizer", self.beta_in_normalizer),
            ("nrd_beta_eq_ell", self.nrd_beta_eq_ell),
            ("dual_identity", self.dual_identity),
            ("similitude_identity", self.similitude_identity),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularityCertificate {
    #[serde(with = "as_string")]
    pub ell: u64,
    pub beta: QElem,
    pub beta_prime: QElem,
    pub t: QElem,
    #[serde(with = "as_string")]
    pub alpha: Rat,
    pub checks: CertificateChecks,
}

impl ModularityCertificate {
    pub fn is_valid(&self) -> bool {
        self.checks.all()
    }
}

/// Checks that `(I, q_α)` is Arakelov-modular of level `ell` via `β`.
///
/// Failed checks are recorded in the certificate. Errors are reserved for
/// internal inconsistencies such as the two duals disagreeing.
pub fn verify_arakelov_modular(
    lattice: &IdealLattice,
    beta: &QElem,
    ell: u64,
) -> Result<ModularityCertificate> {
    let alg = lattice.algebra();
    let order = lattice.ideal().order();
    let t = lattice.ideal().t().clone();
    let tbar = t.conj();
    let beta_prime = match alg.inverse(&tbar) {
        Some(inv) => alg.mul(&alg.mul(&tbar, beta), &inv),
        None => return Err(Error::SingularMatrix),
    };
    let ell_q = Rat::from_integer(Int::from(ell));

    let dual = lattice.dual()?;
    let invertible = alg.inverse(&beta_prime).is_some();
    let dual_identity = invertible && dual.mul_right(&beta_prime)? == *lattice.ideal().lattice();

    let dual_basis = dual.elements();
    let moved: Vec<QElem> = dual_basis.iter().map(|x| alg.mul(x, &beta_prime)).collect();
    let similitude_identity = gram_of_basis(alg, &moved, lattice.alpha())
        == gram_of_basis(alg, &dual_basis, lattice.alpha()).scale(&ell_q);

    Ok(ModularityCertificate {
        ell,
        beta: beta.clone(),
        beta_prime,
        t,
        alpha: lattice.alpha().clone(),
        checks: CertificateChecks {
            beta_in_order: order.contains(beta),
            beta_in_normalizer: order.normalizer_contains(beta),
            nrd_beta_eq_ell: alg.nrd(beta) == ell_q,
            dual_identity,
            similitude_identity,
        },
    })
}

/// `det(dual Gram) = 1 / det(G)`, as a consistency check usable from tests.
pub fn dual_gram(lattice: &IdealLattice) -> Result<RatMat> {
    let dual = lattice.dual()?;
    Ok(gram_of_basis(
        lattice.algebra(),
        &dual.elements(),
        lattice.alpha(),
    ))
}
