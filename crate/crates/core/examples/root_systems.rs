//! Root data, reflection groups and conjugacy classes for a few families.

use tama::roots::{class_labels, RootDatum};

fn main() {
    for (family, rank, ambient) in [("A", Some(3), Some(4)), ("B", Some(3), None), ("D", Some(4), None), ("A1^3", None, None)] {
        let rd = RootDatum::from_spec(family, rank, ambient).unwrap();
        let group = rd.enumerate().unwrap();
        let classes = group.conjugacy_classes();
        let labels = class_labels(&rd, &group, &classes);
        println!(
            "{}: {} positive roots in {} orbit(s), |W| = {}, {} classes",
            rd.name(),
            rd.roots.len(),
            rd.num_orbits,
            group.order(),
            classes.len()
        );
        for (c, l) in classes.iter().zip(&labels) {
            println!("  {l:>12}  size {:>3}  det {:+}", c.members.len(), group.det(c.representative));
        }
    }
}
