//! Schubert calculus on Gr(m, 2m): Littlewood-Richardson coefficients, class
//! products truncated to the `m x m` box, and the degree `d(λ)` of a Schubert
//! problem.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_box, BoxBound, Partition};

type LrKey = (Partition, Partition, Partition);

static LR_MEMO: LazyLock<RwLock<HashMap<LrKey, u64>>> = LazyLock::new(Default::default);

/// Littlewood-Richardson coefficient `c^ν_{λμ}`: the number of skew
/// tableaux of shape `ν/λ` and content `μ` whose reverse reading word is a
/// lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.weight() + mu.weight() != nu.weight()
        || !lambda.is_contained_in(nu)
        || !mu.is_contained_in(nu)
    {
        return 0;
    }
    if lambda.is_empty() {
        return u64::from(mu == nu);
    }
    if mu.is_empty() {
        return u64::from(lambda == nu);
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&c) = LR_MEMO.read().unwrap().get(&key) {
        return c;
    }
    let c = LrFiller::new(lambda, mu, nu).count();
    LR_MEMO.write().unwrap().insert(key, c);
    c
}

/// Row-by-row filler for LR tableaux. Row `r` holds only entries `<= r + 1`;
/// within a row the entries are weakly increasing, and the lattice condition
/// reads each row right to left.
struct LrFiller<'a> {
    inner: &'a [u32],
    outer: &'a [u32],
    content: &'a [u32],
}

impl<'a> LrFiller<'a> {
    fn new(lambda: &'a Partition, mu: &'a Partition, nu: &'a Partition) -> Self {
        LrFiller { inner: lambda.parts(), outer: nu.parts(), content: mu.parts() }
    }

    fn count(&self) -> u64 {
        let mut used = vec![0u32; self.content.len()];
        self.fill_row(0, &mut used, &[])
    }

    fn fill_row(&self, r: usize, used: &mut [u32], prev: &[u32]) -> u64 {
        if r == self.outer.len() {
            return u64::from(used == self.content);
        }
        let start = self.inner.get(r).copied().unwrap_or(0) as usize;
        let end = self.outer[r] as usize;
        let kinds = (r + 1).min(self.content.len());
        let mut counts = vec![0u32; kinds];
        let mut total = 0;
        self.choose_counts(r, 0, (end - start) as u32, &mut counts, used, prev, start, &mut total);
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_counts(
        &self,
        r: usize,
        k: usize,
        left: u32,
        counts: &mut [u32],
        used: &mut [u32],
        prev: &[u32],
        start: usize,
        total: &mut u64,
    ) {
        if k == counts.len() {
            if left != 0 {
                return;
            }
            // lay out the row and check column strictness against the row above
            let mut row = vec![0u32; start];
            for (v, &c) in counts.iter().enumerate() {
                row.extend(std::iter::repeat_n(v as u32 + 1, c as usize));
            }
            if row[start..].iter().enumerate().any(|(j, &e)| {
                let col = start + j;
                col < prev.len() && prev[col] >= e
            }) {
                return;
            }
            for (u, &c) in used.iter_mut().zip(counts.iter()) {
                *u += c;
            }
            *total += self.fill_row(r + 1, used, &row);
            for (u, &c) in used.iter_mut().zip(counts.iter()) {
                *u -= c;
            }
            return;
        }
        let mut max = self.content[k] - used[k];
        if k > 0 {
            // entries k+1 of this row are read before the entries k of this row
            max = max.min(used[k - 1].saturating_sub(used[k]));
        }
        max = max.min(left);
        // the last admissible value must absorb what is left
        let lo = if k + 1 == counts.len() { left } else { 0 };
        if lo > max {
            return;
        }
        for c in lo..=max {
            counts[k] = c;
            self.choose_counts(r, k + 1, left - c, counts, used, prev, start, total);
        }
        counts[k] = 0;
    }
}

/// `σ_a σ_b` as `(index, coefficient)` pairs.
type ProductTable = HashMap<(usize, usize), Arc<[(usize, u64)]>>;

/// Multiplication tables for the Schubert basis of Gr(m, 2m), indexed by
/// position in [`enumerate_box`].
pub(crate) struct SchurRing {
    pub(crate) m: BoxBound,
    pub(crate) basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
    products: RwLock<ProductTable>,
}

static RINGS: LazyLock<RwLock<HashMap<BoxBound, Arc<SchurRing>>>> = LazyLock::new(Default::default);

pub(crate) type SparseClass = Vec<(usize, BigInt)>;

impl SchurRing {
    pub(crate) fn get(m: BoxBound) -> Arc<SchurRing> {
        if let Some(r) = RINGS.read().unwrap().get(&m) {
            return r.clone();
        }
        let basis = enumerate_box(m);
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let ring = Arc::new(SchurRing { m, basis, index, products: RwLock::new(HashMap::new()) });
        RINGS.write().unwrap().entry(m).or_insert(ring).clone()
    }

    pub(crate) fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Expansion of `σ_a · σ_b` in the box.
    pub(crate) fn product(&self, a: usize, b: usize) -> Arc<[(usize, u64)]> {
        let key = (a.min(b), a.max(b));
        if let Some(t) = self.products.read().unwrap().get(&key) {
            return t.clone();
        }
        let (pa, pb) = (&self.basis[key.0], &self.basis[key.1]);
        let w = pa.weight() + pb.weight();
        let terms: Arc<[(usize, u64)]> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, nu)| nu.weight() == w)
            .filter_map(|(i, nu)| {
                let c = lr_coefficient(pa, pb, nu);
                (c != 0).then_some((i, c))
            })
            .collect();
        self.products.write().unwrap().insert(key, terms.clone());
        terms
    }

    /// `v · σ_b` for a sparse class `v` sorted by index.
    pub(crate) fn mul_basis(&self, v: &[(usize, BigInt)], b: usize) -> SparseClass {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (a, coeff) in v {
            for &(nu, c) in self.product(*a, b).iter() {
                *acc.entry(nu).or_default() += coeff * BigInt::from(c);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub(crate) fn top_index(&self) -> usize {
        self.index[&self.m.full_box()]
    }
}

/// Integer combination of Schubert classes of Gr(m, 2m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVectorA {
    m: BoxBound,
    terms: BTreeMap<Partition, BigInt>,
}

impl ClassVectorA {
    pub fn zero(m: BoxBound) -> Self {
        ClassVectorA { m, terms: BTreeMap::new() }
    }

    /// The class `[∅]`, the unit of the ring.
    pub fn one(m: BoxBound) -> Self {
        Self::basis(m, Partition::empty()).expect("empty partition fits every box")
    }

    pub fn basis(m: BoxBound, lambda: Partition) -> Result<Self> {
        if !m.contains(&lambda) {
            return Err(Error::InvalidInput(format!("({lambda}) does not fit in the {m}x{m} box")));
        }
        let mut terms = BTreeMap::new();
        terms.insert(lambda, BigInt::from(1));
        Ok(ClassVectorA { m, terms })
    }

    pub fn m(&self) -> BoxBound {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · [λ]`; partitions outside the box are dropped.
    pub fn add_term(&mut self, lambda: Partition, c: BigInt) {
        if !self.m.contains(&lambda) || c.is_zero() {
            return;
        }
        let e = self.terms.entry(lambda.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn to_sparse(&self, ring: &SchurRing) -> SparseClass {
        self.terms
            .iter()
            .map(|(p, c)| (ring.index_of(p).expect("terms fit the box"), c.clone()))
            .collect()
    }

    fn from_sparse(ring: &SchurRing, v: SparseClass) -> Self {
        let terms = v.into_iter().map(|(i, c)| (ring.basis[i].clone(), c)).collect();
        ClassVectorA { m: ring.m, terms }
    }
}

/// `v · σ_λ`, expanded with the LR rule and truncated to the box.
pub fn multiply_class(v: &ClassVectorA, lambda: &Partition) -> Result<ClassVectorA> {
    let ring = SchurRing::get(v.m);
    let b = ring.index_of(lambda).ok_or_else(|| {
        Error::InvalidInput(format!("({lambda}) does not fit in the {0}x{0} box", v.m))
    })?;
    Ok(ClassVectorA::from_sparse(&ring, ring.mul_basis(&v.to_sparse(&ring), b)))
}

/// A list of conditions on Gr(m, 2m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchubertProblem {
    pub m: BoxBound,
    pub conditions: Vec<Partition>,
}

impl SchubertProblem {
    /// Validates the zero-dimensional condition `Σ|λ^i| = m²` and that every
    /// condition is nonempty and fits the box.
    pub fn new(m: BoxBound, conditions: Vec<Partition>) -> Result<Self> {
        if conditions.is_empty() {
            return Err(Error::InvalidInput("a Schubert problem needs at least one condition".into()));
        }
        for c in &conditions {
            if c.is_empty() {
                return Err(Error::InvalidInput("conditions must be nonempty partitions".into()));
            }
            if !m.contains(c) {
                return Err(Error::InvalidInput(format!("condition ({c}) does not fit in the {m}x{m} box")));
            }
        }
        let total: u32 = conditions.iter().map(Partition::weight).sum();
        if total != m.grassmannian_dim() {
            return Err(Error::InvalidInput(format!(
                "condition weights sum to {total}, but a Schubert problem on Gr({m},{}) needs {}",
                2 * m.get(),
                m.grassmannian_dim()
            )));
        }
        Ok(SchubertProblem { m, conditions })
    }

    /// As [`SchubertProblem::new`], additionally requiring every condition to
    /// be symmetric.
    pub fn symmetric(m: BoxBound, conditions: Vec<Partition>) -> Result<Self> {
        let p = Self::new(m, conditions)?;
        if let Some(c) = p.conditions.iter().find(|c| !c.is_symmetric()) {
            return Err(Error::InvalidProblem(format!(
                "condition ({c}) is not symmetric (transpose ({}))",
                c.conjugate()
            )));
        }
        Ok(p)
    }

    pub fn is_symmetric(&self) -> bool {
        self.conditions.iter().all(Partition::is_symmetric)
    }

    /// Conditions sorted in decreasing lexicographic order.
    pub fn canonical(&self) -> SchubertProblem {
        let mut conditions = self.conditions.clone();
        conditions.sort_by(|a, b| b.cmp(a));
        SchubertProblem { m: self.m, conditions }
    }

    /// `Σ ℓ(λ^i)`.
    pub fn sum_length(&self) -> u32 {
        self.conditions.iter().map(Partition::diagonal_length).sum()
    }

    /// Conditions of the canonical form joined by `|`, e.g. `3,2,1|3,2,1|2,1|1`.
    pub fn conditions_key(&self) -> String {
        let c = self.canonical();
        c.conditions.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("|")
    }

    /// Cache key `m;cond1|cond2|...`.
    pub fn encode(&self) -> String {
        format!("{};{}", self.m, self.conditions_key())
    }
}

impl fmt::Display for SchubertProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl FromStr for SchubertProblem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (m, conds) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidInput(format!("expected `m;cond|cond...`, got {s:?}")))?;
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad m in {s:?}")))?;
        let conditions = conds.split('|').map(str::parse).collect::<Result<Vec<_>>>()?;
        SchubertProblem::new(BoxBound::new(m)?, conditions)
    }
}

/// Number of points `d(λ)` in a general intersection: the coefficient of the
/// point class in the product of the condition classes.
pub fn problem_degree(p: &SchubertProblem) -> Result<BigUint> {
    let p = SchubertProblem::new(p.m, p.conditions.clone())?;
    let ring = SchurRing::get(p.m);
    let mut conds: Vec<usize> = p
        .conditions
        .iter()
        .map(|c| ring.index_of(c).expect("validated"))
        .collect();
    conds.sort_by_key(|&i| std::cmp::Reverse((ring.basis[i].weight(), i)));
    let mut v: SparseClass = vec![(ring.index_of(&Partition::empty()).unwrap(), BigInt::from(1))];
    for c in conds {
        v = ring.mul_basis(&v, c);
        if v.is_empty() {
            break;
        }
    }
    let top = ring.top_index();
    let d = v.into_iter().find(|(i, _)| *i == top).map(|(_, c)| c).unwrap_or_default();
    Ok(d.to_biguint().expect("products of Schubert classes are nonnegative"))
}
