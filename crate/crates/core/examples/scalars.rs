//! Exact arithmetic in ℚ(i, √2)(s, c1, …): rational functions, conjugation
//! and specialisation.

use tama::numfield::Qi2;
use tama::rational::Rat;
use tama::scalar::Scalar;

fn main() {
    let t = Scalar::t();
    println!("t = {t}");
    let c = Scalar::c(1);
    let x = t.sub(&c.scale(&Qi2::int(2))).div(&t.add(&Scalar::int(1))).unwrap();
    println!("x = (t - 2 c1) / (t + 1) = {x}");
    let ix = x.mul(&Scalar::i());
    println!("i x = {ix}, conjugate {}", ix.conj());
    let y = x.mul(&x.inv().unwrap());
    println!("x / x = {y}");
    let r2 = Scalar::sqrt2();
    println!("√2 · √2 = {}", r2.mul(&r2));
    // s = 2, c1 = 1/3
    let at = x.substitute(&[(0, Qi2::int(2)), (1, Qi2::rat(Rat::new(1, 3)))]).unwrap();
    println!("x at s = 2, c1 = 1/3: {at}");
}
