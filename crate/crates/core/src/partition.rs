//! Partitions, their transposes, diagonal lengths, and the strict partitions
//! that index Schubert classes on the Lagrangian Grassmannian.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ambient parameter `m`: the Grassmannian is Gr(m, V) with `dim V = 2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxBound(u32);

impl BoxBound {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("m must be at least 1".into()));
        }
        Ok(BoxBound(m))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn usize(self) -> usize {
        self.0 as usize
    }

    /// The full `m x m` box, i.e. the class of a point in Gr(m, 2m).
    pub fn full_box(self) -> Partition {
        Partition(vec![self.0; self.0 as usize])
    }

    pub fn contains(self, lambda: &Partition) -> bool {
        lambda.len() <= self.usize() && lambda.first().is_none_or(|p| p <= self.0)
    }

    /// Dimension of Gr(m, 2m).
    pub fn grassmannian_dim(self) -> u32 {
        self.0 * self.0
    }
}

impl fmt::Display for BoxBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the zero partition.
///
/// The derived ordering is lexicographic on the part sequence, which is the
/// canonical order used for enumeration output.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, dropping trailing zeros. Fails if the parts are
    /// not weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "partition has a zero part before a positive one: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `|λ|`, the number of boxes.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The transpose `λ'` with `λ'_j = #{i : λ_i >= j}`.
    pub fn conjugate(&self) -> Partition {
        let cols = self.first().unwrap_or(0);
        let parts = (1..=cols)
            .map(|j| self.0.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.conjugate()
    }

    /// Number of boxes on the main diagonal, `#{i : λ_i >= i}`.
    pub fn diagonal_length(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p as usize > *i)
            .count() as u32
    }

    /// `λ ⊆ μ` as Young diagrams.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Codimension `‖λ‖ = (|λ| + ℓ(λ)) / 2` of the Lagrangian Schubert
    /// variety indexed by a symmetric `λ`.
    pub fn lg_codim(&self) -> Result<u32> {
        self.require_symmetric()?;
        Ok((self.weight() + self.diagonal_length()) / 2)
    }

    /// The strict partition `ν_i = λ_i - i + 1`, `i = 1..ℓ(λ)`: the arm-plus-one
    /// lengths of the diagonal hooks.
    pub fn to_strict(&self) -> Result<StrictPartition> {
        self.require_symmetric()?;
        let parts = (0..self.diagonal_length() as usize)
            .map(|i| self.0[i] - i as u32)
            .collect();
        Ok(StrictPartition(parts))
    }

    /// Complement in the `m x m` box, rotated: `λ^∨_i = m - λ_{m+1-i}`.
    pub fn box_complement(&self, m: BoxBound) -> Option<Partition> {
        if !m.contains(self) {
            return None;
        }
        let m = m.usize();
        let mut parts: Vec<u32> = (0..m).map(|i| m as u32 - self.part(m - 1 - i)).collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Some(Partition(parts))
    }

    fn require_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "partition ({self}) is not symmetric (its transpose is ({}))",
                self.conjugate()
            )))
        }
    }
}

/// Canonical encoding: comma-joined parts, the empty partition is `""`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A strictly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidInput(format!(
                "strict partition parts must be positive and strictly decreasing, got {parts:?}"
            )));
        }
        Ok(StrictPartition(parts))
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] > w[1]));
        StrictPartition(parts)
    }

    /// The staircase `(m, m-1, ..., 1)`, the point class of LG(m, 2m).
    pub fn staircase(m: u32) -> Self {
        StrictPartition((1..=m).rev().collect())
    }

    /// The special (one-row) partition `(r)`.
    pub fn special(r: u32) -> Self {
        if r == 0 {
            StrictPartition::empty()
        } else {
            StrictPartition(vec![r])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fits(&self, m: u32) -> bool {
        self.0.first().is_none_or(|&p| p <= m)
    }

    /// The strict partition whose parts are `{1..m}` minus the parts of
    /// `self`; indexes the Poincaré-dual class on LG(m, 2m).
    pub fn dual(&self, m: u32) -> StrictPartition {
        StrictPartition((1..=m).rev().filter(|p| !self.0.contains(p)).collect())
    }

    /// Inverse of [`Partition::to_strict`]: the symmetric partition whose
    /// diagonal hooks have arm lengths `ν_i - 1`.
    pub fn to_symmetric(&self) -> Partition {
        let ell = self.len();
        let mut parts: Vec<u32> = self.0.iter().enumerate().map(|(i, &v)| v + i as u32).collect();
        // rows below the diagonal are the transpose of the columns right of it
        let max_row = parts.first().copied().unwrap_or(0) as usize;
        for i in ell..max_row {
            let col = i as u32 + 1;
            let len = parts[..ell].iter().filter(|&&p| p >= col).count() as u32;
            if len == 0 {
                break;
            }
            parts.push(len);
        }
        Partition(parts)
    }

    /// Dominance order on strict partitions of equal weight.
    pub fn dominates(&self, other: &StrictPartition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StrictPartition::new(parse_parts(s)?)
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad partition part {tok:?} in {s:?}")))
        })
        .collect()
}

/// All partitions fitting in the `m x m` box (including the empty one),
/// in lexicographic order.
pub fn enumerate_box(m: BoxBound) -> Vec<Partition> {
    fn rec(m: u32, rows_left: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition(cur.clone()));
        if rows_left == 0 {
            return;
        }
        for p in 1..=max_part.min(m) {
            cur.push(p);
            rec(m, rows_left - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m.get(), m.usize(), m.get(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All nonempty symmetric partitions in the `m x m` box, in lexicographic
/// order. Built from the strict partitions with parts `<= m` through the
/// diagonal-hook correspondence.
pub fn enumerate_symmetric(m: BoxBound) -> Vec<Partition> {
    let m = m.get();
    let mut out: Vec<Partition> = (1u32..(1 << m))
        .map(|mask| {
            let parts: Vec<u32> = (1..=m).rev().filter(|v| mask & (1 << (v - 1)) != 0).collect();
            StrictPartition(parts).to_symmetric()
        })
        .collect();
    out.sort();
    out
}

/// All strict partitions with parts `<= m`, i.e. all subsets of `{1..m}`.
pub fn enumerate_strict(m: u32) -> Vec<StrictPartition> {
    let mut out: Vec<StrictPartition> = (0u32..(1 << m))
        .map(|mask| StrictPartition((1..=m).rev().filter(|v| mask & (1 << (v - 1)) != 0).collect()))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn m(v: u32) -> BoxBound {
        BoxBound::new(v).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("2,1,1").conjugate(), p("3,1"));
        assert_eq!(p("2,2").conjugate(), p("2,2"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn symmetry_examples() {
        assert!(p("3,2,1").is_symmetric());
        assert!(p("2,2").is_symmetric());
        assert!(!p("2,1,1").is_symmetric());
        assert!(p("1").is_symmetric());
    }

    #[test]
    fn diagonal_length_and_weight() {
        assert_eq!(p("2,2").diagonal_length(), 2);
        assert_eq!(p("2,1").diagonal_length(), 1);
        assert_eq!(Partition::empty().diagonal_length(), 0);
        assert_eq!(p("3,2,1").weight(), 6);
        assert_eq!(p("2,2").weight(), 4);
        assert_eq!(Partition::empty().weight(), 0);
    }

    #[test]
    fn lg_codim_examples() {
        assert_eq!(p("2,2").lg_codim().unwrap(), 3);
        assert_eq!(p("3,2,1").lg_codim().unwrap(), 4);
        assert_eq!(p("1").lg_codim().unwrap(), 1);
        assert!(p("2,1,1").lg_codim().is_err());
    }

    #[test]
    fn to_strict_examples() {
        assert_eq!(p("3,2,1").to_strict().unwrap().parts(), &[3, 1]);
        assert_eq!(p("2,2").to_strict().unwrap().parts(), &[2, 1]);
        assert_eq!(p("1").to_strict().unwrap().parts(), &[1]);
        assert!(p("3,1").to_strict().is_err());
    }

    #[test]
    fn enumerate_symmetric_examples() {
        assert_eq!(enumerate_symmetric(m(1)), vec![p("1")]);
        assert_eq!(enumerate_symmetric(m(2)), vec![p("1"), p("2,1"), p("2,2")]);
        let expected: Vec<Partition> = ["1", "2,1", "2,2", "3,1,1", "3,2,1", "3,3,2", "3,3,3"]
            .iter()
            .map(|s| p(s))
            .collect();
        assert_eq!(enumerate_symmetric(m(3)), expected);
    }

    #[test]
    fn symmetric_enumeration_matches_brute_force() {
        for k in 1..=6 {
            let brute: Vec<Partition> = enumerate_box(m(k))
                .into_iter()
                .filter(|l| !l.is_empty() && *l == l.conjugate())
                .collect();
            assert_eq!(enumerate_symmetric(m(k)), brute, "m = {k}");
        }
    }

    #[test]
    fn to_strict_is_a_bijection_onto_strict_partitions_in_box() {
        for k in 1..=5 {
            let mut images: Vec<StrictPartition> = enumerate_symmetric(m(k))
                .iter()
                .map(|l| l.to_strict().unwrap())
                .collect();
            images.push(StrictPartition::empty());
            images.sort();
            images.dedup();
            assert_eq!(images, enumerate_strict(k), "m = {k}");
        }
    }

    #[test]
    fn box_complement() {
        assert_eq!(p("2,1").box_complement(m(2)), Some(p("1")));
        assert_eq!(p("3,1").box_complement(m(3)), Some(p("3,2")));
        assert_eq!(Partition::empty().box_complement(m(2)), Some(p("2,2")));
        assert_eq!(p("3").box_complement(m(2)), None);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("(3,2,1)".parse::<Partition>().unwrap(), p("3,2,1"));
        assert_eq!("3,1,0".parse::<Partition>().unwrap(), p("3,1"));
        assert!("2,2".parse::<StrictPartition>().is_err());
    }

    #[test]
    fn strict_dual_and_dominance() {
        let nu: StrictPartition = "3,1".parse().unwrap();
        assert_eq!(nu.dual(4).parts(), &[4, 2]);
        let a: StrictPartition = "3".parse().unwrap();
        let b: StrictPartition = "2,1".parse().unwrap();
        assert!(a.dominates(&b));
        assert!(!b.dominates(&a));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn partition() -> impl Strategy<Value = Partition> {
            proptest::collection::vec(1u32..8, 0..8).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Partition::new(v).unwrap()
            })
        }

        proptest! {
            #[test]
            fn conjugation_is_involutive(l in partition()) {
                prop_assert_eq!(l.conjugate().conjugate(), l);
            }

            #[test]
            fn symmetric_weight_is_sum_of_diagonal_hooks(l in partition()) {
                let sym = l.to_strict().ok();
                prop_assert_eq!(sym.is_some(), l == l.conjugate());
                if l.is_symmetric() {
                    let hooks: u32 = (0..l.diagonal_length() as usize)
                        .map(|i| 2 * (l.part(i) - i as u32 - 1) + 1)
                        .sum();
                    prop_assert_eq!(hooks, l.weight());
                    prop_assert_eq!((l.weight() + l.diagonal_length()) % 2, 0);
                    prop_assert_eq!(sym.unwrap().weight(), l.lg_codim().unwrap());
                }
            }

            #[test]
            fn display_parse_roundtrip(l in partition()) {
                prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
            }
        }
    }
}
