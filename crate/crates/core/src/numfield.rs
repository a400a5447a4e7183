//! The constant field ℚ(i, √2).
//!
//! An element is `a + b·i + c·r + d·i·r` with `i² = -1` and `r² = 2`.

use std::fmt;

use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Qi2 {
    /// Components in the order `1, i, r, i·r`.
    pub c: [Rat; 4],
}

impl Qi2 {
    pub fn zero() -> Qi2 {
        Qi2::default()
    }

    pub fn one() -> Qi2 {
        Qi2::rat(Rat::ONE)
    }

    pub fn rat(q: Rat) -> Qi2 {
        Qi2 { c: [q, Rat::ZERO, Rat::ZERO, Rat::ZERO] }
    }

    pub fn int(n: i64) -> Qi2 {
        Qi2::rat(Rat::int(n))
    }

    pub fn i() -> Qi2 {
        Qi2 { c: [Rat::ZERO, Rat::ONE, Rat::ZERO, Rat::ZERO] }
    }

    pub fn sqrt2() -> Qi2 {
        Qi2 { c: [Rat::ZERO, Rat::ZERO, Rat::ONE, Rat::ZERO] }
    }

    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Qi2 {
        Qi2 { c: [a, b, c, d] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Rat::is_zero)
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.c[1..].iter().all(Rat::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn neg(&self) -> Qi2 {
        Qi2 { c: [self.c[0].neg(), self.c[1].neg(), self.c[2].neg(), self.c[3].neg()] }
    }

    pub fn add(&self, o: &Qi2) -> Qi2 {
        Qi2 {
            c: [
                self.c[0].add(&o.c[0]),
                self.c[1].add(&o.c[1]),
                self.c[2].add(&o.c[2]),
                self.c[3].add(&o.c[3]),
            ],
        }
    }

    pub fn sub(&self, o: &Qi2) -> Qi2 {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rat) -> Qi2 {
        Qi2 { c: [self.c[0].mul(q), self.c[1].mul(q), self.c[2].mul(q), self.c[3].mul(q)] }
    }

    pub fn mul(&self, o: &Qi2) -> Qi2 {
        if let Some(q) = o.as_rat() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rat() {
            return o.scale(q);
        }
        // (p1 + q1 r)(p2 + q2 r) with p, q in Q(i)
        let p1 = (&self.c[0], &self.c[1]);
        let q1 = (&self.c[2], &self.c[3]);
        let p2 = (&o.c[0], &o.c[1]);
        let q2 = (&o.c[2], &o.c[3]);
        let cm = |x: (&Rat, &Rat), y: (&Rat, &Rat)| -> (Rat, Rat) {
            (x.0.mul(y.0).sub(&x.1.mul(y.1)), x.0.mul(y.1).add(&x.1.mul(y.0)))
        };
        let pp = cm(p1, p2);
        let qq = cm(q1, q2);
        let pq = cm(p1, q2);
        let qp = cm(q1, p2);
        let two = Rat::int(2);
        Qi2 {
            c: [
                pp.0.add(&qq.0.mul(&two)),
                pp.1.add(&qq.1.mul(&two)),
                pq.0.add(&qp.0),
                pq.1.add(&qp.1),
            ],
        }
    }

    /// Complex conjugation `i -> -i`, fixing `r`.
    pub fn conj(&self) -> Qi2 {
        Qi2 { c: [self.c[0].clone(), self.c[1].neg(), self.c[2].clone(), self.c[3].neg()] }
    }

    /// `√2 -> -√2`, fixing `i`.
    fn r_conj(&self) -> Qi2 {
        Qi2 { c: [self.c[0].clone(), self.c[1].clone(), self.c[2].neg(), self.c[3].neg()] }
    }

    pub fn inv(&self) -> Option<Qi2> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rat() {
            return q.inv().map(Qi2::rat);
        }
        // x * r_conj(x) lies in Q(i); then invert there through its norm.
        let xr = self.r_conj();
        let m = self.mul(&xr);
        let mc = m.conj();
        let n = m.mul(&mc);
        let n = n.as_rat().expect("norm lies in Q").inv()?;
        Some(xr.mul(&mc).scale(&n))
    }

    pub fn div(&self, o: &Qi2) -> Option<Qi2> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: u32) -> Qi2 {
        let mut acc = Qi2::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Number of nonzero components.
    pub fn weight(&self) -> usize {
        self.c.iter().filter(|q| !q.is_zero()).count()
    }
}

impl From<i64> for Qi2 {
    fn from(n: i64) -> Self {
        Qi2::int(n)
    }
}

impl From<Rat> for Qi2 {
    fn from(q: Rat) -> Self {
        Qi2::rat(q)
    }
}

/// Canonical rendering `a+b*i+c*r+d*i*r`, omitting zero components.
impl fmt::Display for Qi2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "i", "r", "i*r"];
        let mut out = String::new();
        for (q, unit) in self.c.iter().zip(UNITS) {
            if q.is_zero() {
                continue;
            }
            let neg = q.signum() < 0;
            let mag = if neg { q.neg() } else { q.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if unit.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(unit);
            } else {
                out.push_str(&format!("{mag}*{unit}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        assert_eq!(Qi2::i().mul(&Qi2::i()), Qi2::int(-1));
        assert_eq!(Qi2::sqrt2().mul(&Qi2::sqrt2()), Qi2::int(2));
    }

    #[test]
    fn inverse_of_general_element() {
        let x = Qi2::new(Rat::int(1), Rat::int(2), Rat::new(-1, 3), Rat::int(5));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), Qi2::one());
    }

    #[test]
    fn rendering() {
        let x = Qi2::new(Rat::int(1), Rat::int(-1), Rat::ZERO, Rat::new(1, 2));
        assert_eq!(x.to_string(), "1-i+1/2*i*r");
        assert_eq!(Qi2::sqrt2().neg().to_string(), "-r");
    }
}
