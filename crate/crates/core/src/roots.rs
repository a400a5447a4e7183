//! Root data for the supported reflection groups, written in orthonormal
//! coordinates, together with brute-force group enumeration and conjugacy
//! classes.
//!
//! Every reflection of the supported families is a signed permutation
//! matrix, so group elements are stored as [`SignedPerm`]s.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported ambient dimension (Clifford subsets are `u8` masks).
pub const MAX_DIM: usize = 8;

pub const DEFAULT_GROUP_BOUND: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported family `{0}` (expected A, B, D or A1^d)")]
    UnsupportedFamily(String),
    #[error("family {family} of rank {rank} needs ambient dimension at least {need}, got {got}")]
    AmbientTooSmall { family: String, rank: usize, need: usize, got: usize },
    #[error("rank {0} is not valid for this family")]
    BadRank(usize),
    #[error("ambient dimension {0} exceeds the supported maximum {MAX_DIM}")]
    TooLarge(usize),
    #[error("{0} root orbits need more than the {max} available parameters", max = crate::scalar::MAX_ORBIT_PARAMS)]
    TooManyOrbits(usize),
    #[error("group order exceeds the bound {0}")]
    BoundExceeded(usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Symmetric group `S_{rank+1}` permuting the first `rank+1` coordinates.
    A,
    B,
    D,
    /// Product of `rank` copies of `A1`, one sign flip per coordinate.
    A1Product,
}

impl Family {
    pub fn name(&self, rank: usize) -> String {
        match self {
            Family::A => "A".into(),
            Family::B => "B".into(),
            Family::D => "D".into(),
            Family::A1Product => format!("A1^{rank}"),
        }
    }
}

/// Parses `"A"`, `"B"`, `"D"` or `"A1^d"`. The latter also fixes the rank.
pub fn parse_family(s: &str) -> Result<(Family, Option<usize>), RootError> {
    match s {
        "A" => Ok((Family::A, None)),
        "B" => Ok((Family::B, None)),
        "D" => Ok((Family::D, None)),
        _ => {
            let rest = s.strip_prefix("A1^").ok_or_else(|| RootError::UnsupportedFamily(s.into()))?;
            let d = usize::from_str(rest).map_err(|_| RootError::UnsupportedFamily(s.into()))?;
            if d == 0 {
                return Err(RootError::UnsupportedFamily(s.into()));
            }
            Ok((Family::A1Product, Some(d)))
        }
    }
}

/// A signed permutation `x_i ↦ sign_i · x_{π(i)}`, stored as
/// `img[i] = ±(π(i) + 1)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub d: u8,
    pub img: [i8; MAX_DIM],
}

impl SignedPerm {
    pub fn identity(d: usize) -> SignedPerm {
        let mut img = [0i8; MAX_DIM];
        for (i, v) in img.iter_mut().enumerate().take(d) {
            *v = i as i8 + 1;
        }
        SignedPerm { d: d as u8, img }
    }

    pub fn minus_identity(d: usize) -> SignedPerm {
        let mut w = SignedPerm::identity(d);
        for v in w.img.iter_mut().take(d) {
            *v = -*v;
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.d as usize
    }

    /// Target index and sign of `w(x_i)`.
    #[inline]
    pub fn apply(&self, i: usize) -> (usize, i8) {
        let v = self.img[i];
        ((v.unsigned_abs() - 1) as usize, v.signum())
    }

    /// Builds from an integer matrix acting on coordinate vectors, which
    /// must be a signed permutation matrix.
    pub fn from_matrix(m: &[Vec<i64>]) -> Option<SignedPerm> {
        let d = m.len();
        let mut img = [0i8; MAX_DIM];
        for i in 0..d {
            let mut found = None;
            for (j, row) in m.iter().enumerate() {
                match row[i] {
                    0 => {}
                    1 | -1 if found.is_none() => found = Some((j, row[i])),
                    _ => return None,
                }
            }
            let (j, s) = found?;
            img[i] = (s as i8) * (j as i8 + 1);
        }
        Some(SignedPerm { d: d as u8, img })
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut m = vec![vec![0i64; d]; d];
        for i in 0..d {
            let (j, s) = self.apply(i);
            m[j][i] = s as i64;
        }
        m
    }

    /// `(self ∘ o)(x_i) = self(o(x_i))`.
    pub fn compose(&self, o: &SignedPerm) -> SignedPerm {
        let mut img = [0i8; MAX_DIM];
        for (i, v) in img.iter_mut().enumerate().take(self.dim()) {
            let (j, s1) = o.apply(i);
            let (k, s2) = self.apply(j);
            *v = s1 * s2 * (k as i8 + 1);
        }
        SignedPerm { d: self.d, img }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut img = [0i8; MAX_DIM];
        for i in 0..self.dim() {
            let (j, s) = self.apply(i);
            img[j] = s * (i as i8 + 1);
        }
        SignedPerm { d: self.d, img }
    }

    /// Image of an integer coordinate vector.
    pub fn act_vec(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &a) in v.iter().enumerate() {
            let (j, s) = self.apply(i);
            out[j] += s as i64 * a;
        }
        out
    }

    /// Determinant, ±1.
    pub fn det(&self) -> i8 {
        let d = self.dim();
        let mut sign = 1i8;
        let mut seen = [false; MAX_DIM];
        for i in 0..d {
            let (_, s) = self.apply(i);
            sign *= s;
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.apply(j).0;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn is_identity(&self) -> bool {
        *self == SignedPerm::identity(self.dim())
    }

    /// Cycles of the underlying permutation with the product of the signs
    /// along each cycle.
    pub fn signed_cycles(&self) -> Vec<(usize, i8)> {
        let d = self.dim();
        let mut seen = [false; MAX_DIM];
        let mut out = Vec::new();
        for i in 0..d {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut sign = 1i8;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                let (k, s) = self.apply(j);
                sign *= s;
                j = k;
                len += 1;
            }
            out.push((len, sign));
        }
        out
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.img[..self.dim()].iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Root datum of a reflection group in orthonormal coordinates.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub family: Family,
    pub rank: usize,
    pub d: usize,
    /// Positive roots as integer coordinate vectors.
    pub roots: Vec<Vec<i64>>,
    /// Coroots `2α/|α|²`.
    pub coroots: Vec<Vec<i64>>,
    /// `|α|²`, 1 or 2.
    pub norm2: Vec<i64>,
    /// Indices into `roots` of the simple roots.
    pub simple: Vec<usize>,
    /// Orbit label of each positive root, `0..num_orbits`.
    pub orbit: Vec<usize>,
    pub num_orbits: usize,
    pub reflections: Vec<SignedPerm>,
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflection_matrix(alpha: &[i64], coroot: &[i64]) -> Vec<Vec<i64>> {
    let d = alpha.len();
    let mut m = vec![vec![0i64; d]; d];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = i64::from(i == j) - alpha[i] * coroot[j];
        }
    }
    m
}

impl RootDatum {
    pub fn build(family: Family, rank: usize, ambient: usize) -> Result<RootDatum, RootError> {
        let fname = family.name(rank);
        if ambient > MAX_DIM {
            return Err(RootError::TooLarge(ambient));
        }
        let need = match family {
            Family::A => rank + 1,
            _ => rank,
        };
        let min_rank = match family {
            Family::D => 2,
            _ => 1,
        };
        if rank < min_rank {
            return Err(RootError::BadRank(rank));
        }
        if ambient < need {
            return Err(RootError::AmbientTooSmall { family: fname, rank, need, got: ambient });
        }
        let d = ambient;
        let mut roots = Vec::new();
        let mut simple = Vec::new();
        let diff = |i: usize, j: usize| {
            let mut v = vec![0; d];
            v[i] = 1;
            v[j] = -1;
            v
        };
        let sum = |i: usize, j: usize| {
            let mut v = vec![0; d];
            v[i] = 1;
            v[j] = 1;
            v
        };
        match family {
            Family::A => {
                let n = rank + 1;
                for i in 0..n {
                    for j in i + 1..n {
                        roots.push(diff(i, j));
                    }
                }
            }
            Family::B | Family::D => {
                let n = rank;
                for i in 0..n {
                    for j in i + 1..n {
                        roots.push(diff(i, j));
                        roots.push(sum(i, j));
                    }
                }
                if family == Family::B {
                    for i in 0..n {
                        roots.push(unit(d, i));
                    }
                }
            }
            Family::A1Product => {
                for i in 0..rank {
                    roots.push(unit(d, i));
                }
            }
        }
        let find = |v: &Vec<i64>| roots.iter().position(|r| r == v).expect("simple root present");
        match family {
            Family::A => {
                for i in 0..rank {
                    simple.push(find(&diff(i, i + 1)));
                }
            }
            Family::B => {
                for i in 0..rank - 1 {
                    simple.push(find(&diff(i, i + 1)));
                }
                simple.push(find(&unit(d, rank - 1)));
            }
            Family::D => {
                for i in 0..rank - 1 {
                    simple.push(find(&diff(i, i + 1)));
                }
                simple.push(find(&sum(rank - 2, rank - 1)));
            }
            Family::A1Product => simple = (0..rank).collect(),
        }
        let norm2: Vec<i64> = roots.iter().map(|r| dot(r, r)).collect();
        let coroots: Vec<Vec<i64>> =
            roots.iter().zip(&norm2).map(|(r, &n)| r.iter().map(|x| 2 * x / n).collect()).collect();
        let reflections: Vec<SignedPerm> = roots
            .iter()
            .zip(&coroots)
            .map(|(a, c)| {
                SignedPerm::from_matrix(&reflection_matrix(a, c)).expect("signed permutation reflection")
            })
            .collect();
        let mut rd = RootDatum {
            family,
            rank,
            d,
            roots,
            coroots,
            norm2,
            simple,
            orbit: Vec::new(),
            num_orbits: 0,
            reflections,
        };
        rd.compute_orbits();
        if rd.num_orbits > crate::scalar::MAX_ORBIT_PARAMS {
            return Err(RootError::TooManyOrbits(rd.num_orbits));
        }
        Ok(rd)
    }

    /// Parses the family string and builds; `rank` may be omitted for
    /// `A1^d`.
    pub fn from_spec(family: &str, rank: Option<usize>, ambient: Option<usize>) -> Result<RootDatum, RootError> {
        let (fam, implied) = parse_family(family)?;
        let rank = match (implied, rank) {
            (Some(r), Some(given)) if r != given => return Err(RootError::BadRank(given)),
            (Some(r), _) => r,
            (None, Some(r)) => r,
            (None, None) => return Err(RootError::BadRank(0)),
        };
        let ambient = ambient.unwrap_or(match fam {
            Family::A => rank + 1,
            _ => rank,
        });
        RootDatum::build(fam, rank, ambient)
    }

    /// Orbits of the simple reflections acting on `±R⁺`, labelled in order
    /// of first appearance among the positive roots.
    fn compute_orbits(&mut self) {
        let n = self.roots.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([self.roots[start].clone()]);
            while let Some(v) = queue.pop_front() {
                for s in &self.reflections {
                    let img = s.act_vec(&v);
                    if let Some(k) = self.positive_index(&img) {
                        if label[k] == usize::MAX {
                            label[k] = next;
                            queue.push_back(self.roots[k].clone());
                        }
                    }
                }
            }
            next += 1;
        }
        self.orbit = label;
        self.num_orbits = next;
    }

    /// Index of the positive root `±v`, if `v` is a root.
    pub fn positive_index(&self, v: &[i64]) -> Option<usize> {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.roots.iter().position(|r| r.as_slice() == v || *r == neg)
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::A1Product if self.d == self.rank => self.family.name(self.rank),
            _ => format!("{}{} on C^{}", self.family.name(self.rank), self.rank, self.d),
        }
    }

    /// Dimensions below 3 are accepted but flagged in reports.
    pub fn small_dimension(&self) -> bool {
        self.d < 3
    }

    pub fn enumerate(&self) -> Result<Group, RootError> {
        Group::generate(self, DEFAULT_GROUP_BOUND)
    }
}

/// A finite group of signed permutations with its multiplication data.
#[derive(Clone, Debug)]
pub struct Group {
    pub d: usize,
    pub elements: Vec<SignedPerm>,
    index: HashMap<SignedPerm, u32>,
    mult: Option<Vec<u32>>,
    inv: Vec<u32>,
}

/// Above this order the multiplication table is not materialised.
const TABLE_LIMIT: usize = 1024;

impl Group {
    /// Closure of the reflections by breadth-first search from the identity.
    pub fn generate(rd: &RootDatum, bound: usize) -> Result<Group, RootError> {
        let id = SignedPerm::identity(rd.d);
        let mut elements = vec![id];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut head = 0;
        let gens: Vec<SignedPerm> = rd.simple.iter().map(|&k| rd.reflections[k]).collect();
        while head < elements.len() {
            let g = elements[head];
            head += 1;
            for s in &gens {
                let h = g.compose(s);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(h) {
                    if elements.len() >= bound {
                        return Err(RootError::BoundExceeded(bound));
                    }
                    e.insert(elements.len() as u32);
                    elements.push(h);
                }
            }
        }
        let n = elements.len();
        let inv = elements.iter().map(|g| index[&g.inverse()]).collect();
        let mult = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)]);
                }
            }
            t
        });
        Ok(Group { d: rd.d, elements, index, mult, inv })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn index_of(&self, g: &SignedPerm) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn elem(&self, i: u32) -> &SignedPerm {
        &self.elements[i as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mult {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn det(&self, a: u32) -> i8 {
        self.elements[a as usize].det()
    }

    /// Conjugacy classes in order of first appearance; each class lists its
    /// members in increasing index order, the first being the representative.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n as u32 {
            if class_of[g as usize] != usize::MAX {
                continue;
            }
            let mut members: HashMap<u32, u32> = HashMap::new();
            for h in 0..n as u32 {
                // h g h⁻¹
                let c = self.mul(self.mul(h, g), self.inv(h));
                members.entry(c).or_insert(h);
            }
            let mut list: Vec<(u32, u32)> = members.into_iter().collect();
            list.sort_unstable();
            for (m, _) in &list {
                class_of[*m as usize] = classes.len();
            }
            classes.push(ConjugacyClass {
                representative: g,
                members: list.iter().map(|p| p.0).collect(),
                witnesses: list.iter().map(|p| p.1).collect(),
            });
        }
        classes
    }

    pub fn minus_identity(&self) -> Option<u32> {
        self.index_of(&SignedPerm::minus_identity(self.d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: u32,
    pub members: Vec<u32>,
    /// `witnesses[k] · representative · witnesses[k]⁻¹ = members[k]`.
    pub witnesses: Vec<u32>,
}

/// Partition label `(3,1)` of a permutation of the first `n` coordinates.
pub fn cycle_type(g: &SignedPerm, n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = g.apply(j).0;
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn fmt_partition(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Human-readable class labels: cycle types for type A, sign patterns for
/// products of `A1`, signed cycle types otherwise. Repeated labels get a
/// `#k` suffix.
pub fn class_labels(rd: &RootDatum, group: &Group, classes: &[ConjugacyClass]) -> Vec<String> {
    let mut labels: Vec<String> = classes
        .iter()
        .map(|c| {
            let g = group.elem(c.representative);
            match rd.family {
                Family::A => fmt_partition(&cycle_type(g, rd.rank + 1)),
                Family::A1Product => {
                    let signs: String =
                        (0..rd.d).map(|i| if g.apply(i).1 < 0 { '-' } else { '+' }).collect();
                    format!("diag({signs})")
                }
                _ => {
                    let mut cyc = g.signed_cycles();
                    cyc.sort_unstable_by(|a, b| b.cmp(a));
                    let parts: Vec<String> = cyc
                        .iter()
                        .map(|(l, s)| format!("{l}{}", if *s < 0 { '-' } else { '+' }))
                        .collect();
                    format!("({})", parts.join(","))
                }
            }
        })
        .collect();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for l in labels.iter_mut() {
        let k = seen.entry(l.clone()).or_insert(0);
        *k += 1;
        if *k > 1 {
            l.push_str(&format!("#{k}"));
        }
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        assert_eq!(RootDatum::build(Family::A, 2, 3).unwrap().roots.len(), 3);
        assert_eq!(RootDatum::build(Family::B, 3, 3).unwrap().roots.len(), 9);
        let a16 = RootDatum::build(Family::A1Product, 6, 6).unwrap();
        assert_eq!(a16.roots.len(), 6);
        assert_eq!(a16.num_orbits, 6);
        assert_eq!(RootDatum::build(Family::B, 3, 3).unwrap().num_orbits, 2);
        assert_eq!(RootDatum::from_spec("A1^8", None, None).unwrap_err(), RootError::TooManyOrbits(8));
        assert_eq!(RootDatum::build(Family::D, 4, 4).unwrap().roots.len(), 12);
    }

    #[test]
    fn group_orders() {
        let order = |f, r, a| RootDatum::build(f, r, a).unwrap().enumerate().unwrap().order();
        assert_eq!(order(Family::A, 2, 3), 6);
        assert_eq!(order(Family::B, 3, 3), 48);
        assert_eq!(order(Family::A1Product, 6, 6), 64);
        assert_eq!(order(Family::D, 4, 4), 192);
        assert_eq!(order(Family::A, 4, 5), 120);
    }

    #[test]
    fn class_counts() {
        let classes = |f, r, a| {
            let rd = RootDatum::build(f, r, a).unwrap();
            rd.enumerate().unwrap().conjugacy_classes().len()
        };
        assert_eq!(classes(Family::A, 2, 3), 3);
        assert_eq!(classes(Family::A, 3, 4), 5);
        assert_eq!(classes(Family::A1Product, 3, 3), 8);
        assert_eq!(classes(Family::B, 3, 3), 10);
    }

    #[test]
    fn minus_identity() {
        let has = |f, r, a| RootDatum::build(f, r, a).unwrap().enumerate().unwrap().minus_identity().is_some();
        assert!(has(Family::B, 3, 3));
        assert!(!has(Family::A, 3, 4));
        assert!(has(Family::A1Product, 6, 6));
        assert!(!has(Family::D, 3, 3));
        assert!(has(Family::D, 4, 4));
    }

    #[test]
    fn reflection_invariants() {
        for (f, r, a) in [(Family::A, 3, 4), (Family::B, 3, 3), (Family::D, 4, 4), (Family::A1Product, 3, 3)] {
            let rd = RootDatum::build(f, r, a).unwrap();
            for (k, s) in rd.reflections.iter().enumerate() {
                assert!(s.compose(s).is_identity());
                assert_eq!(s.det(), -1);
                let neg: Vec<i64> = rd.roots[k].iter().map(|x| -x).collect();
                assert_eq!(s.act_vec(&rd.roots[k]), neg);
                assert_eq!(dot(&rd.roots[k], &rd.coroots[k]), 2);
            }
        }
    }

    #[test]
    fn parse_family_strings() {
        assert_eq!(parse_family("A1^6").unwrap(), (Family::A1Product, Some(6)));
        assert!(parse_family("E8").is_err());
        assert!(parse_family("A1^x").is_err());
    }
}
