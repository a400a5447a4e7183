//! The ε-centre of the twisted group algebra of the pin cover and its
//! admissible elements.

use std::sync::Arc;

use tama::admissible::{sn_partition_predictions, TwistedGroupAlgebra};
use tama::roots::{fmt_partition, RootDatum};

fn main() {
    for (family, rank, ambient) in [("A", Some(3), Some(4)), ("B", Some(3), None), ("A", Some(2), Some(3))] {
        let rd = Arc::new(RootDatum::from_spec(family, rank, ambient).unwrap());
        let group = Arc::new(rd.enumerate().unwrap());
        let tga = TwistedGroupAlgebra::build(rd.clone(), group, 10_000).unwrap();
        let cat = tga.catalog();
        println!("{}: ε-centre dimension {} (brute force {})", rd.name(), cat.epsilon_centre.len(), cat.brute_force.len());
        for row in &cat.rows {
            match (&row.admissible, row.zero_reason) {
                (Some(_), _) => println!("  {:>12}  admissible, stated phase {}", row.split.label, row.stated_phase),
                (None, Some(why)) => println!("  {:>12}  zero: {why}", row.split.label),
                (None, None) => println!("  {:>12}  no •-fixed normalisation", row.split.label),
            }
        }
        if family == "A" {
            for p in sn_partition_predictions(&tga) {
                if p.predicted != p.computed {
                    println!("  partition {} predicted {} computed {}", fmt_partition(&p.partition), p.predicted, p.computed);
                }
            }
        }
    }
}
