//! Schubert calculus on the Lagrangian Grassmannian LG(m, 2m).
//!
//! Classes are indexed by strict partitions with parts `<= m`. Only the Pieri
//! rule for special classes `σ_r` is implemented directly (Hiller-Boe: the
//! shifted skew shape `μ/ν` is a horizontal strip, weighted by two to the
//! number of its connected components that avoid the main diagonal). General
//! products go through the monomial basis `σ_{κ_1} σ_{κ_2} ⋯`, which is
//! unitriangular against the Schubert basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::{enumerate_strict, BoxBound, Partition, StrictPartition};

/// `dim LG(m, 2m) = m(m+1)/2`.
pub fn lg_dimension(m: u32) -> u32 {
    m * (m + 1) / 2
}

/// Integer combination of Schubert classes of LG(m, 2m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVectorC {
    m: u32,
    terms: BTreeMap<StrictPartition, BigInt>,
}

impl ClassVectorC {
    pub fn zero(m: u32) -> Self {
        ClassVectorC { m, terms: BTreeMap::new() }
    }

    pub fn one(m: u32) -> Self {
        Self::basis(m, StrictPartition::empty()).expect("empty fits")
    }

    pub fn basis(m: u32, nu: StrictPartition) -> Result<Self> {
        if !nu.fits(m) {
            return Err(Error::InvalidInput(format!("strict partition ({nu}) has a part larger than m = {m}")));
        }
        let mut v = Self::zero(m);
        v.add_term(nu, BigInt::one());
        Ok(v)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<StrictPartition, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, nu: &StrictPartition) -> BigInt {
        self.terms.get(nu).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · σ_ν`; classes with a part larger than `m` vanish.
    pub fn add_term(&mut self, nu: StrictPartition, c: BigInt) {
        if !nu.fits(self.m) || c.is_zero() {
            return;
        }
        let e = self.terms.entry(nu.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&nu);
        }
    }

    fn add_scaled(&mut self, other: &ClassVectorC, scale: &BigInt) {
        for (nu, c) in &other.terms {
            self.add_term(nu.clone(), c * scale);
        }
    }

    /// Coefficient of the point class `σ_{(m, m-1, ..., 1)}`.
    pub fn top_coefficient(&self) -> BigInt {
        self.coefficient(&StrictPartition::staircase(self.m))
    }
}

/// `σ_r · σ_ν` on LG(m, 2m).
pub fn lg_pieri(nu: &StrictPartition, r: u32, m: u32) -> Result<ClassVectorC> {
    if r == 0 || r > m {
        return Err(Error::InvalidInput(format!("special class index r = {r} must lie in 1..={m}")));
    }
    if !nu.fits(m) {
        return Err(Error::InvalidInput(format!("({nu}) has a part larger than m = {m}")));
    }
    let mut out = ClassVectorC::zero(m);
    for (mu, exponent) in pieri_terms(nu, r, m) {
        out.add_term(mu, BigInt::one() << exponent);
    }
    Ok(out)
}

/// Strict `μ ⊇ ν` with `|μ| = |ν| + r`, parts `<= m` and `μ_{i+1} <= ν_i`,
/// paired with the number of diagonal-free components of the shifted strip.
fn pieri_terms(nu: &StrictPartition, r: u32, m: u32) -> Vec<(StrictPartition, u32)> {
    fn rec(nu: &StrictPartition, m: u32, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i > nu.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = nu.part(i);
        let mut hi = if i == 0 { m } else { nu.part(i - 1).min(cur[i - 1].saturating_sub(1)) };
        hi = hi.min(lo + left);
        if lo > hi {
            return;
        }
        for v in lo..=hi {
            if v == 0 {
                // nothing more can be added below an empty row
                if left == 0 {
                    out.push(cur.clone());
                }
                continue;
            }
            cur.push(v);
            rec(nu, m, i + 1, left - (v - lo), cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(nu, m, 0, r, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|parts| {
            let mu = StrictPartition::from_sorted(parts);
            let n = free_components(nu, &mu);
            (mu, n)
        })
        .collect()
}

/// Number of edge-connected components of the shifted skew diagram `μ/ν`
/// containing no diagonal cell.
fn free_components(nu: &StrictPartition, mu: &StrictPartition) -> u32 {
    // row i of a shifted diagram starts at column i
    let cells: Vec<(u32, u32)> = (0..mu.len())
        .flat_map(|i| {
            let row = i as u32;
            (row + nu.part(i)..row + mu.part(i)).map(move |c| (row, c))
        })
        .collect();
    let pos: HashMap<(u32, u32), usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, &(r, c)) in cells.iter().enumerate() {
        for nb in [(r, c + 1), (r + 1, c)] {
            if let Some(&j) = pos.get(&nb) {
                let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut touches_diagonal: HashMap<usize, bool> = HashMap::new();
    for (k, &(r, c)) in cells.iter().enumerate() {
        let root = find(&mut parent, k);
        *touches_diagonal.entry(root).or_default() |= r == c;
    }
    touches_diagonal.values().filter(|&&d| !d).count() as u32
}

/// Per-`m` basis-change data.
struct LgRing {
    m: u32,
    /// `σ_ν = Σ coeff · σ_{κ_1} ⋯ σ_{κ_k}` for every strict `ν` in the box.
    class_to_monomial: HashMap<StrictPartition, Vec<(StrictPartition, BigInt)>>,
}

static LG_RINGS: LazyLock<RwLock<HashMap<u32, Arc<LgRing>>>> = LazyLock::new(Default::default);

impl LgRing {
    fn get(m: u32) -> Arc<LgRing> {
        if let Some(r) = LG_RINGS.read().unwrap().get(&m) {
            return r.clone();
        }
        let ring = Arc::new(LgRing::build(m));
        LG_RINGS.write().unwrap().entry(m).or_insert(ring).clone()
    }

    fn build(m: u32) -> LgRing {
        let basis = enumerate_strict(m);
        // monomial -> classes, by iterated Pieri
        let mono: HashMap<StrictPartition, ClassVectorC> = basis
            .iter()
            .map(|k| (k.clone(), monomial_product(&ClassVectorC::one(m), k)))
            .collect();
        for (k, v) in &mono {
            debug_assert_eq!(v.coefficient(k), BigInt::one(), "monomial {k} is not unitriangular");
            debug_assert!(v.terms.keys().all(|mu| mu.dominates(k)));
        }
        // invert the unitriangular transition; a class is resolved once every
        // class strictly above it in its monomial is resolved
        let mut class_to_monomial: HashMap<StrictPartition, Vec<(StrictPartition, BigInt)>> = HashMap::new();
        let mut pending: Vec<StrictPartition> = basis;
        while !pending.is_empty() {
            let mut progressed = false;
            let mut rest = Vec::new();
            for nu in pending {
                let higher: Vec<(&StrictPartition, &BigInt)> =
                    mono[&nu].terms.iter().filter(|(mu, _)| **mu != nu).collect();
                if higher.iter().all(|(mu, _)| class_to_monomial.contains_key(*mu)) {
                    let mut acc: BTreeMap<StrictPartition, BigInt> = BTreeMap::new();
                    acc.insert(nu.clone(), BigInt::one());
                    for (mu, c) in higher {
                        for (k, d) in &class_to_monomial[mu] {
                            *acc.entry(k.clone()).or_default() -= c * d;
                        }
                    }
                    class_to_monomial.insert(nu, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
                    progressed = true;
                } else {
                    rest.push(nu);
                }
            }
            assert!(progressed, "monomial transition is not triangular for m = {m}");
            pending = rest;
        }
        LgRing { m, class_to_monomial }
    }
}

/// `v · σ_{κ_1} ⋯ σ_{κ_k}` by repeated Pieri.
fn monomial_product(v: &ClassVectorC, kappa: &StrictPartition) -> ClassVectorC {
    let mut cur = v.clone();
    for &r in kappa.parts() {
        let mut next = ClassVectorC::zero(v.m);
        for (nu, c) in &cur.terms {
            let p = lg_pieri(nu, r, v.m).expect("parts of κ are <= m");
            next.add_scaled(&p, c);
        }
        cur = next;
        if cur.is_zero() {
            break;
        }
    }
    cur
}

/// Expresses `σ_ν` as an integer combination of monomials in the special
/// classes; each key `κ` stands for `σ_{κ_1} σ_{κ_2} ⋯`.
pub fn lg_class_in_monomials(nu: &StrictPartition, m: u32) -> Result<Vec<(StrictPartition, BigInt)>> {
    if !nu.fits(m) {
        return Err(Error::InvalidInput(format!("({nu}) has a part larger than m = {m}")));
    }
    Ok(LgRing::get(m).class_to_monomial[nu].clone())
}

/// Product in the cohomology ring of LG(m, 2m).
pub fn lg_multiply(a: &ClassVectorC, b: &ClassVectorC) -> Result<ClassVectorC> {
    if a.m != b.m {
        return Err(Error::InvalidInput(format!("cannot multiply classes of LG({}) and LG({})", a.m, b.m)));
    }
    let ring = LgRing::get(a.m);
    debug_assert_eq!(ring.m, a.m);
    let mut out = ClassVectorC::zero(a.m);
    for (nu, c) in &b.terms {
        for (kappa, d) in &ring.class_to_monomial[nu] {
            out.add_scaled(&monomial_product(a, kappa), &(c * d));
        }
    }
    Ok(out)
}

/// Product of the Lagrangian classes `σ_{to_strict(λ)}` of symmetric
/// conditions, with no dimension requirement.
pub fn lg_condition_product(conditions: &[Partition], m: BoxBound) -> Result<ClassVectorC> {
    let m = m.get();
    let mut v = ClassVectorC::one(m);
    for c in conditions {
        let nu = c.to_strict()?;
        v = lg_multiply(&v, &ClassVectorC::basis(m, nu)?)?;
        if v.is_zero() {
            break;
        }
    }
    Ok(v)
}

/// `c(λ)`: the number of Lagrangian subspaces in a general intersection of
/// Lagrangian Schubert varieties, defined when `Σ‖λ^i‖ = dim LG`.
pub fn lg_problem_degree(conditions: &[Partition], m: BoxBound) -> Result<BigUint> {
    for c in conditions {
        if !m.contains(c) {
            return Err(Error::InvalidInput(format!("condition ({c}) does not fit in the {m}x{m} box")));
        }
    }
    let codims = conditions.iter().map(Partition::lg_codim).collect::<Result<Vec<_>>>()?;
    let total: u32 = codims.iter().sum();
    let dim = lg_dimension(m.get());
    if total != dim {
        let (what, by) = if total < dim { ("deficit", dim - total) } else { ("excess", total - dim) };
        return Err(Error::InvalidProblem(format!(
            "Lagrangian codimensions sum to {total} but dim LG({m}) = {dim} ({what} of {by})"
        )));
    }
    let v = lg_condition_product(conditions, m)?;
    Ok(v.top_coefficient().to_biguint().expect("structure constants are nonnegative"))
}

/// True if every coefficient is a power of two.
pub fn is_power_of_two_vector(v: &ClassVectorC) -> bool {
    v.terms.values().all(|c| c.is_positive() && (c & (c - 1u32)).is_zero())
}
