//! The generators Ǒ_j and O_A of the centraliser algebra and the relations
//! among them.

use std::sync::Arc;

use tama::cherednik::{Algebra, Params};
use tama::roots::RootDatum;
use tama::tama::Tama;

fn main() {
    let rd = Arc::new(RootDatum::from_spec("A1^4", None, None).unwrap());
    let group = Arc::new(rd.enumerate().unwrap());
    let num_orbits = rd.num_orbits;
    let alg = Algebra::new(rd, group, Params::single_c(num_orbits));
    let tama = Tama::build(&alg).unwrap();
    println!("Ǒ_1 = {}", tama.oc(1));
    println!("O_12 = {}", tama.o(&alg, &[1, 2]));
    println!("O_123 = {}", tama.o(&alg, &[1, 2, 3]));
    for rec in tama.relation_suite(&alg, None) {
        let extra = rec.note.or(rec.witness).unwrap_or_default();
        println!("{:<8} {:<24} {extra}", format!("{:?}", rec.status), rec.check);
    }
}
