//! The Clifford algebra, the pin double cover of W and how classes of W
//! split in it.

use tama::clifford::{pseudo_scalar, Clifford};
use tama::numfield::Qi2;
use tama::pin::{pin_conjugacy, PinCover};
use tama::roots::RootDatum;

fn main() {
    let d = 3;
    let e1: Clifford<Qi2> = Clifford::gen(d, 1);
    let e2: Clifford<Qi2> = Clifford::gen(d, 2);
    println!("e1 e2 = {}, e2 e1 = {}", e1.mul(&e2), e2.mul(&e1));
    let g: Clifford<Qi2> = pseudo_scalar(d);
    println!("Γ = {g}, Γ² = {}", g.mul(&g));

    for (family, rank, ambient) in [("A", Some(3), Some(4)), ("B", Some(3), None)] {
        let rd = RootDatum::from_spec(family, rank, ambient).unwrap();
        let group = rd.enumerate().unwrap();
        let cover = PinCover::build(&rd, &group, 2 * group.order()).unwrap();
        println!("{}: |W| = {}, |W~| = {}", rd.name(), group.order(), cover.order());
        for row in pin_conjugacy(&rd, &group, &cover, &group.conjugacy_classes()) {
            println!(
                "  {:>12}  parity {}  splits in cover {:5}  splits in even part {}",
                row.label, row.parity, row.splits_in_cover, row.splits_in_even
            );
        }
    }
}
