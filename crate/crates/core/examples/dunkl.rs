//! Products in the rational Cherednik algebra tensored with the Clifford
//! algebra, for S3 with symbolic parameters.

use std::sync::Arc;

use tama::cherednik::{Algebra, Params};
use tama::roots::{Family, RootDatum};

fn main() {
    let rd = Arc::new(RootDatum::build(Family::A, 2, 3).unwrap());
    let group = Arc::new(rd.enumerate().unwrap());
    let alg = Algebra::new(rd, group, Params::symbolic(1));

    let (x1, x2, y1) = (alg.x(1), alg.x(2), alg.y(1));
    println!("y1 x1 = {}", alg.mul(&y1, &x1));
    println!("y1 x2 = {}", alg.mul(&y1, &x2));
    println!("[y1, x1 x2] = {}", alg.gb(&y1, &alg.mul(&x1, &x2)));
    let s = alg.group_elem(alg.refl[0]);
    println!("s x1 s = {}", alg.product(&[&s, &x1, &s]));
    let a = alg.mul(&x1, &alg.e(1));
    println!("(x1 ⊗ e1)• = {}", alg.bullet(&a));
    println!("memoised straightenings: {}", alg.memo_len());
}
