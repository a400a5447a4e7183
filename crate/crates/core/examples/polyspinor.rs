//! Polyspinor modules: the Fischer form, Hermitian checks and Dirac
//! cohomology for S4 at s = 2, c = 1/3.

use std::sync::Arc;

use tama::cherednik::{Algebra, Params};
use tama::pin::lift_reflection;
use tama::polyspinor::PolySpinor;
use tama::rational::Rat;
use tama::roots::RootDatum;
use tama::scalar::Scalar;
use tama::tama::Tama;

fn main() {
    let rd = Arc::new(RootDatum::from_spec("A", Some(3), Some(4)).unwrap());
    let group = Arc::new(rd.enumerate().unwrap());
    let alg = Algebra::new(rd, group, Params::specialized(Rat::int(2), &[Rat::new(1, 3)]));
    let tama = Tama::build(&alg).unwrap();
    let ps = PolySpinor::new(&alg);
    for k in 0..=2 {
        let row = ps.hermitian_check(k).unwrap();
        println!("degree {k}: dim {}, Hermitian {}, positive minors {}", ps.dim(k), row.hermitian(), row.positive_minors);
    }
    let simple: Vec<_> = alg.rd.simple.iter().map(|&k| alg.rho(&lift_reflection(&alg.rd, &alg.group, k))).collect();
    let shift = tama.osp.casimir.add(&alg.scalar(Scalar::rat(1, 4)));
    for r in ps.cohomology(&tama.dirac, &shift, &simple, 2).unwrap() {
        println!(
            "H(X, 0) degree {}: ker {}, ker ∩ im {}, cohomology {}, central character {}",
            r.degree, r.ker, r.ker_cap_im, r.cohomology, r.central_character
        );
    }
}
