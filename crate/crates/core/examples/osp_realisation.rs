//! The osp(1|2) realisation inside H ⊗ C and its Casimir elements.

use std::sync::Arc;

use tama::cherednik::{Algebra, Params};
use tama::osp::Osp;
use tama::roots::RootDatum;

fn main() {
    let rd = Arc::new(RootDatum::from_spec("B", Some(2), None).unwrap());
    let group = Arc::new(rd.enumerate().unwrap());
    let alg = Algebra::new(rd, group, Params::symbolic(2));
    let osp = Osp::build(&alg).unwrap();
    println!("H = {}", osp.h);
    println!("F+ = {}", osp.f_plus);
    for row in osp.bracket_table(&alg) {
        println!("{:<18} holds: {}", row.relation, row.residual.is_zero());
    }
    println!("S² = Ω_osp + 1/4: {}", osp.scasimir_square_check(&alg));
    println!("Ω_osp commutes with osp(1|2): {}", osp.in_centraliser(&alg, &osp.casimir));
    println!("projection of S: {}", osp.project(&alg, &osp.scasimir).unwrap());
}
