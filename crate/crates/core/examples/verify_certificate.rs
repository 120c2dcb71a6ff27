//! Check a modularity certificate by hand: the level-3 ideal lattice over
//! the maximal order of `(-1,-3)`, with a good and a bad `β`.

use amlat::exact::Rat;
use amlat::ideal::TwoSidedIdeal;
use amlat::ideal_lattice::{verify_arakelov_modular, IdealLattice};
use amlat::order::CatalogOrder;
use amlat::quaternion::QElem;
use amlat::record::LatticeRecord;

fn main() -> amlat::error::Result<()> {
    let preset = CatalogOrder::Case2;
    let order = preset.order(&preset.default_algebra())?;
    let lattice = IdealLattice::new(TwoSidedIdeal::unit(&order)?, Rat::from_integer(1.into()))?;

    for beta in [QElem::j(), QElem::i()] {
        let cert = verify_arakelov_modular(&lattice, &beta, 3)?;
        println!(
            "beta = {beta}: valid = {}, failing {:?}",
            cert.is_valid(),
            cert.checks.failures()
        );
    }

    let cert = verify_arakelov_modular(&lattice, &QElem::j(), 3)?;
    println!("{}", LatticeRecord::new(&lattice, cert)?.to_json());
    Ok(())
}
