//! Full-rank Z-lattices inside a quaternion algebra, stored by canonical basis.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{
    canonical_lattice_basis, lattice_contains, lattice_intersection, lattice_sum, Rat, RatMat,
};
use crate::quaternion::{QElem, QuaternionAlgebra};

/// A rank-4 lattice in `A`. Two values are equal iff they span the same lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZLat4 {
    algebra: QuaternionAlgebra,
    basis: RatMat,
}

fn elems_to_mat(elems: &[QElem]) -> Result<RatMat> {
    RatMat::from_rows(elems.iter().map(|e| e.0.to_vec()).collect())
}

impl ZLat4 {
    /// The lattice spanned by `gens` (any number of generators, rank must be 4).
    pub fn from_generators(algebra: &QuaternionAlgebra, gens: &[QElem]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::SingularBasis {
                rank: 0,
                expected: 4,
            });
        }
        Self::from_matrix(algebra, &elems_to_mat(gens)?)
    }

    pub fn from_matrix(algebra: &QuaternionAlgebra, gens: &RatMat) -> Result<Self> {
        if gens.cols() != 4 {
            return Err(Error::Dimension(
                "lattice generators must have 4 coordinates".into(),
            ));
        }
        Ok(ZLat4 {
            algebra: algebra.clone(),
            basis: canonical_lattice_basis(gens)?,
        })
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    /// Canonical basis, one element per row.
    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    pub fn elements(&self) -> Vec<QElem> {
        (0..4)
            .map(|i| QElem(self.basis.row(i).to_vec().try_into().expect("4 columns")))
            .collect()
    }

    pub fn contains(&self, x: &QElem) -> bool {
        lattice_contains(&self.basis, &x.0)
    }

    /// `self ⊆ other`.
    pub fn is_sublattice_of(&self, other: &ZLat4) -> bool {
        self.elements().iter().all(|e| other.contains(e))
    }

    /// `|det|` of the basis: the covolume in standard coordinates.
    pub fn covolume(&self) -> Rat {
        self.basis.det().expect("square basis").abs()
    }

    /// Generalized index `[other : self] = covol(self) / covol(other)`.
    pub fn index_in(&self, other: &ZLat4) -> Rat {
        self.covolume() / other.covolume()
    }

    pub fn sum(&self, other: &ZLat4) -> Result<ZLat4> {
        Ok(ZLat4 {
            algebra: self.algebra.clone(),
            basis: lattice_sum(&self.basis, &other.basis)?,
        })
    }

    pub fn intersect_all(lattices: &[ZLat4]) -> Result<ZLat4> {
        let first = lattices
            .first()
            .ok_or(Error::Dimension("empty intersection".into()))?;
        let bases: Vec<RatMat> = lattices.iter().map(|l| l.basis.clone()).collect();
        Ok(ZLat4 {
            algebra: first.algebra.clone(),
            basis: lattice_intersection(&bases)?,
        })
    }

    fn map(&self, f: impl Fn(&QElem) -> QElem) -> Result<ZLat4> {
        let imgs: Vec<QElem> = self.elements().iter().map(f).collect();
        ZLat4::from_generators(&self.algebra, &imgs)
    }

    /// `{x t : x ∈ L}`.
    pub fn mul_right(&self, t: &QElem) -> Result<ZLat4> {
        self.map(|x| self.algebra.mul(x, t))
    }

    /// `{t x : x ∈ L}`.
    pub fn mul_left(&self, t: &QElem) -> Result<ZLat4> {
        self.map(|x| self.algebra.mul(t, x))
    }

    pub fn scale(&self, s: &Rat) -> Result<ZLat4> {
        self.map(|x| x.scale(s))
    }

    pub fn conj(&self) -> Result<ZLat4> {
        self.map(QElem::conj)
    }

    /// The lattice spanned by all products `x y`, `x ∈ self`, `y ∈ other`.
    pub fn product(&self, other: &ZLat4) -> Result<ZLat4> {
        let left = self.elements();
        let right = other.elements();
        let gens: Vec<QElem> = left
            .iter()
            .flat_map(|x| right.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.algebra.mul(x, y))
            .collect();
        ZLat4::from_generators(&self.algebra, &gens)
    }

    /// `{x : x L ⊆ M}` where `L = self`, `M = target`: the intersection of `M w^-1`
    /// over the basis `w` of `L`.
    pub fn left_colon(&self, target: &ZLat4) -> Result<ZLat4> {
        let parts = self
            .elements()
            .iter()
            .map(|w| {
                let inv = self.algebra.inverse(w).ok_or(Error::SingularMatrix)?;
                target.mul_right(&inv)
            })
            .collect::<Result<Vec<_>>>()?;
        ZLat4::intersect_all(&parts)
    }

    /// `{x : L x ⊆ M}` where `L = self`, `M = target`.
    pub fn right_colon(&self, target: &ZLat4) -> Result<ZLat4> {
        let parts = self
            .elements()
            .iter()
            .map(|w| {
                let inv = self.algebra.inverse(w).ok_or(Error::SingularMatrix)?;
                target.mul_left(&inv)
            })
            .collect::<Result<Vec<_>>>()?;
        ZLat4::intersect_all(&parts)
    }
}
