//! Exact arithmetic for ideal lattices in definite quaternion algebras over Q.
//!
//! Given a level `ell`, [`classify::plan`] picks an algebra, a maximal order
//! and a two-sided ideal whose trace form, scaled by a rational `α`, is
//! isometric to its dual up to the similitude `x ↦ x β'` of norm `ell`.
//! [`classify::construct`] builds the lattice and returns a
//! [`ideal_lattice::ModularityCertificate`] whose checks are all recomputed
//! from scratch. Every quantity is a big rational; nothing is floating point.
//!
//! ```
//! let (lattice, cert) = amlat::classify::construct(2).unwrap();
//! assert!(cert.is_valid());
//! let (min, kissing) = lattice.minimum_and_kissing().unwrap();
//! assert_eq!((min.to_string(), kissing), ("2".to_string(), 24));
//! ```

pub mod arith;
pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod ideal;
pub mod ideal_lattice;
pub mod lattice;
pub mod order;
pub mod quaternion;
pub mod record;
pub mod symbols;
