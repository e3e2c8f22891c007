//! Exact instances: the symplectic form, isotropic and osculating flags, the
//! Lagrangian involution, and Schubert membership by rank conditions.
//!
//! Coordinates are the divided-power basis of the rational normal curve
//! `γ(t) = (1, t, t²/2!, …, t^{2m-1}/(2m-1)!)`, and the form pairs `e_i` with
//! `e_{2m+1-i}` with sign `(-1)^{i-1}`. In these coordinates
//! `⟨γ(s), γ(t)⟩ = (t - s)^{2m-1} / (2m-1)!`, so every osculating flag is
//! isotropic.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, Field, GaussianRational, Matrix, Rational, RationalMatrix};
use crate::partition::{BoxBound, Partition};

/// Nondegenerate alternating form `⟨v, w⟩ = vᵀ J w`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm {
    j: RationalMatrix,
}

impl SymplecticForm {
    pub fn matrix(&self) -> &RationalMatrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn pair<F: Field>(&self, v: &[F], w: &[F]) -> F {
        let n = self.dim();
        let mut acc = F::zero();
        for i in 0..n {
            for k in 0..n {
                let c = &self.j[(i, k)];
                if !Field::is_zero(c) {
                    acc = acc + v[i].clone() * F::from_rational(c.clone()) * w[k].clone();
                }
            }
        }
        acc
    }

    fn lifted<F: Field>(&self) -> Matrix<F> {
        self.j.map(|q| F::from_rational(q.clone()))
    }
}

/// Antidiagonal form with `⟨e_i, e_{2m+1-i}⟩ = (-1)^{i-1}` (1-based).
pub fn standard_form(m: BoxBound) -> SymplecticForm {
    let n = 2 * m.usize();
    let mut j = RationalMatrix::zeros(n, n);
    for i in 0..n {
        j[(i, n - 1 - i)] = rat(if i % 2 == 0 { 1 } else { -1 });
    }
    SymplecticForm { j }
}

/// Column span of a full-column-rank matrix.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    /// Span of the columns of `mat`, keeping a maximal independent subset.
    pub fn span(mat: &Matrix<F>) -> Self {
        let cols = mat.independent_columns();
        Subspace { basis: mat.select_columns(&cols) }
    }

    /// Wraps a basis; fails if the columns are dependent.
    pub fn from_basis(basis: Matrix<F>) -> Result<Self> {
        if basis.rank() != basis.cols() {
            return Err(Error::InvalidInput(format!(
                "basis has {} columns but rank {}",
                basis.cols(),
                basis.rank()
            )));
        }
        Ok(Subspace { basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(ambient, 0) }
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn same_span(&self, other: &Subspace<F>) -> bool {
        self.dim() == other.dim() && self.basis.hcat(&other.basis).rank() == self.dim()
    }

    /// `dim (self ∩ other)`.
    pub fn meet_dim(&self, other: &Subspace<F>) -> usize {
        self.dim() + other.dim() - self.basis.hcat(&other.basis).rank()
    }

    pub fn conj(&self) -> Self {
        Subspace { basis: self.basis.conj() }
    }
}

/// A complete flag: `F_i` is the span of the first `i` columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag<F> {
    mat: Matrix<F>,
}

pub type FlagMatrix = Flag<Rational>;
/// Flag with Gaussian-rational entries; conjugation negates imaginary parts.
pub type ComplexFlag = Flag<GaussianRational>;

impl<F: Field> Flag<F> {
    pub fn new(mat: Matrix<F>) -> Result<Self> {
        if mat.rows() != mat.cols() || !mat.rows().is_multiple_of(2) || mat.rows() == 0 {
            return Err(Error::InvalidInput(format!(
                "flag matrix must be 2m x 2m, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.rank() != mat.rows() {
            return Err(Error::InvalidInput("flag matrix is singular".into()));
        }
        Ok(Flag { mat })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn m(&self) -> usize {
        self.dim() / 2
    }

    /// `F_i`; `F_0 = 0`.
    pub fn step(&self, i: usize) -> Subspace<F> {
        Subspace { basis: self.mat.leading_columns(i) }
    }

    /// Same subspace at every step (the matrices may differ).
    pub fn same_steps(&self, other: &Flag<F>) -> bool {
        self.dim() == other.dim() && (1..self.dim()).all(|i| self.step(i).same_span(&other.step(i)))
    }

    pub fn conj(&self) -> Self {
        Flag { mat: self.mat.conj() }
    }
}

impl FlagMatrix {
    pub fn to_complex(&self) -> ComplexFlag {
        Flag { mat: self.mat.to_complex() }
    }
}

/// Flag osculating the rational normal curve at `t`: column `i` is
/// `γ^{(i-1)}(t)`, whose `k`-th coordinate is `t^{k-i+1} / (k-i+1)!`.
pub fn osculating_flag<F: Field>(t: &F, m: BoxBound) -> Flag<F> {
    let n = 2 * m.usize();
    let mut powers = vec![F::one()];
    for k in 1..n {
        let p = powers[k - 1].clone() * t.clone();
        powers.push(p);
    }
    let mut fact = rat(1);
    let divided: Vec<F> = (0..n)
        .map(|k| {
            if k > 0 {
                fact *= rat(k as i64);
            }
            powers[k].clone() * F::from_rational(fact.recip())
        })
        .collect();
    let mut mat = Matrix::zeros(n, n);
    for col in 0..n {
        for row in col..n {
            mat[(row, col)] = divided[row - col].clone();
        }
    }
    Flag { mat }
}

/// `∠(W) = {v : ⟨v, w⟩ = 0 for all w ∈ W}`, the kernel of `Wᵀ J`.
pub fn annihilator<F: Field>(w: &Subspace<F>, form: &SymplecticForm) -> Subspace<F> {
    if w.dim() == 0 {
        return Subspace { basis: Matrix::identity(form.dim()) };
    }
    let wt_j = w.basis.transpose().mul(&form.lifted());
    Subspace { basis: wt_j.kernel() }
}

/// The flag whose `i`-plane is `∠(F_{2m-i})`.
pub fn involute_flag<F: Field>(flag: &Flag<F>, form: &SymplecticForm) -> Flag<F> {
    let n = flag.dim();
    let mut cols: Vec<Vec<F>> = Vec::with_capacity(n);
    for i in 1..=n {
        let target = annihilator(&flag.step(n - i), form);
        let rank = cols.len();
        let pick = (0..target.dim())
            .map(|k| target.basis.column(k))
            .find(|c| {
                let mut ext = cols.clone();
                ext.push(c.clone());
                Matrix::from_columns(&ext).rank() > rank
            })
            .expect("annihilators of a flag form a flag");
        cols.push(pick);
    }
    Flag { mat: Matrix::from_columns(&cols) }
}

/// `∠(F•) = F•` step by step.
pub fn is_isotropic<F: Field>(flag: &Flag<F>, form: &SymplecticForm) -> bool {
    flag.same_steps(&involute_flag(flag, form))
}

/// `H ∈ X_λ F•`: `dim H ∩ F_{m+i-λ_i} >= i` for `i = 1..m`, checked as
/// `rank [H | F_{m+i-λ_i}] <= 2m + i - λ_i - i`.
pub fn schubert_membership<F: Field>(h: &Subspace<F>, lambda: &Partition, flag: &Flag<F>) -> Result<bool> {
    let n = flag.dim();
    let m = n / 2;
    if h.ambient() != n || h.dim() != m {
        return Err(Error::InvalidInput(format!(
            "expected an {m}-plane in dimension {n}, got a {}-plane in dimension {}",
            h.dim(),
            h.ambient()
        )));
    }
    let bound = BoxBound::new(m as u32)?;
    if !bound.contains(lambda) {
        return Err(Error::InvalidInput(format!("({lambda}) does not fit in the {m}x{m} box")));
    }
    for i in 1..=m {
        let k = m + i - lambda.part(i - 1) as usize;
        if h.meet_dim(&flag.step(k)) < i {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `H` is an `m`-plane with `Hᵀ J H = 0`.
pub fn is_lagrangian<F: Field>(h: &Subspace<F>, form: &SymplecticForm) -> bool {
    h.dim() * 2 == form.dim() && h.basis.transpose().mul(&form.lifted()).mul(&h.basis).is_zero()
}

/// Deterministic isotropic flag: the standard flag moved by a random
/// symplectic matrix built from block generators with small integer entries.
pub fn random_isotropic_flag(seed: u64, m: BoxBound) -> FlagMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = m.usize();
    let n = 2 * k;
    let g0 = [
        Generator::Swap,
        Generator::Upper,
        Generator::Lower,
        Generator::Block,
        Generator::Upper,
        Generator::Lower,
    ]
    .iter()
    .fold(RationalMatrix::identity(n), |acc, g| acc.mul(&g.sample(&mut rng, k)));
    // P maps the Darboux basis (J0 = [[0, I], [-I, 0]]) to the antidiagonal one
    let mut p = RationalMatrix::zeros(n, n);
    for i in 0..k {
        p[(i, i)] = rat(1);
        p[(n - 1 - i, k + i)] = rat(if i % 2 == 0 { 1 } else { -1 });
    }
    let g = p.mul(&g0).mul(&p.inverse().expect("signed permutation"));
    Flag { mat: g }
}

enum Generator {
    /// `[[0, I], [-I, 0]]`
    Swap,
    /// `[[I, B], [0, I]]`, `B` symmetric
    Upper,
    /// `[[I, 0], [C, I]]`, `C` symmetric
    Lower,
    /// `[[A, 0], [0, A^{-T}]]`, `A` unimodular
    Block,
}

impl Generator {
    fn sample(&self, rng: &mut ChaCha8Rng, k: usize) -> RationalMatrix {
        let n = 2 * k;
        let mut g = RationalMatrix::identity(n);
        match self {
            Generator::Swap => {
                g = RationalMatrix::zeros(n, n);
                for i in 0..k {
                    g[(i, k + i)] = rat(1);
                    g[(k + i, i)] = rat(-1);
                }
            }
            Generator::Upper | Generator::Lower => {
                let s = random_symmetric(rng, k);
                let (r0, c0) = if matches!(self, Generator::Upper) { (0, k) } else { (k, 0) };
                for i in 0..k {
                    for j in 0..k {
                        g[(r0 + i, c0 + j)] = s[(i, j)].clone();
                    }
                }
            }
            Generator::Block => {
                let mut lower = RationalMatrix::identity(k);
                let mut upper = RationalMatrix::identity(k);
                for i in 0..k {
                    for j in 0..i {
                        lower[(i, j)] = rat(rng.gen_range(-3..=3));
                        upper[(j, i)] = rat(rng.gen_range(-3..=3));
                    }
                }
                let a = lower.mul(&upper);
                let a_inv_t = a.inverse().expect("unimodular").transpose();
                for i in 0..k {
                    for j in 0..k {
                        g[(i, j)] = a[(i, j)].clone();
                        g[(k + i, k + j)] = a_inv_t[(i, j)].clone();
                    }
                }
            }
        }
        g
    }
}

fn random_symmetric(rng: &mut ChaCha8Rng, k: usize) -> RationalMatrix {
    let mut s = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = rat(rng.gen_range(-3..=3));
            s[(i, j)] = v.clone();
            s[(j, i)] = v;
        }
    }
    s
}

/// A random invertible flag with small integer entries; in general not
/// isotropic.
pub fn random_flag(seed: u64, m: BoxBound) -> FlagMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * m.usize();
    loop {
        let data = (0..n * n).map(|_| rat(rng.gen_range(-4..=4))).collect();
        let mat = RationalMatrix::from_vec(n, n, data);
        if mat.rank() == n {
            return Flag { mat };
        }
    }
}

/// A real instance condition: every flag's conjugate is some flag of the
/// list carrying the same partition.
pub fn conjugate_pairing_check(flags: &[(Partition, ComplexFlag)]) -> bool {
    flags.iter().all(|(lambda, f)| {
        let c = f.conj();
        flags.iter().any(|(mu, g)| mu == lambda && c.same_steps(g))
    })
}

/// Row-major rational matrix with entries written as `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl MatrixJson {
    pub fn from_matrix(m: &RationalMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.data().iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<RationalMatrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::InvalidInput(format!(
                "matrix is {}x{} but has {} entries",
                self.rows,
                self.cols,
                self.entries.len()
            )));
        }
        let data = self.entries.iter().map(|e| parse_rational(e)).collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix::from_vec(self.rows, self.cols, data))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
    let d: BigInt = d.trim().parse().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Osculating { points: Vec<String> },
    RandomIsotropic { seed: u64 },
    Explicit,
}

/// A problem together with one flag per condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub m: u32,
    pub conditions: Vec<Partition>,
    pub provenance: Provenance,
    pub flags: Vec<MatrixJson>,
}

impl InstanceDoc {
    pub fn new(m: BoxBound, conditions: Vec<Partition>, flags: &[FlagMatrix], provenance: Provenance) -> Self {
        InstanceDoc {
            m: m.get(),
            conditions,
            provenance,
            flags: flags.iter().map(|f| MatrixJson::from_matrix(f.matrix())).collect(),
        }
    }

    /// Osculating flags at the given rational points, one per condition.
    pub fn osculating(m: BoxBound, conditions: Vec<Partition>, points: &[Rational]) -> Result<Self> {
        if points.len() != conditions.len() {
            return Err(Error::InvalidInput(format!(
                "{} osculation points for {} conditions",
                points.len(),
                conditions.len()
            )));
        }
        let flags: Vec<FlagMatrix> = points.iter().map(|t| osculating_flag(t, m)).collect();
        let prov = Provenance::Osculating { points: points.iter().map(|t| t.to_string()).collect() };
        Ok(Self::new(m, conditions, &flags, prov))
    }

    /// Random isotropic flags; flag `i` uses seed `seed + i`.
    pub fn random_isotropic(m: BoxBound, conditions: Vec<Partition>, seed: u64) -> Self {
        let flags: Vec<FlagMatrix> = (0..conditions.len())
            .map(|i| random_isotropic_flag(seed.wrapping_add(i as u64), m))
            .collect();
        Self::new(m, conditions, &flags, Provenance::RandomIsotropic { seed })
    }

    pub fn box_bound(&self) -> Result<BoxBound> {
        BoxBound::new(self.m)
    }

    pub fn flag_matrices(&self) -> Result<Vec<FlagMatrix>> {
        self.flags
            .iter()
            .map(|j| {
                let f = Flag::new(j.to_matrix()?)?;
                if f.dim() != 2 * self.m as usize {
                    return Err(Error::InvalidInput(format!("flag of dimension {} for m = {}", f.dim(), self.m)));
                }
                Ok(f)
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n").map_err(|e| Error::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn bm(m: u32) -> BoxBound {
        BoxBound::new(m).unwrap()
    }

    fn span(cols: &[&[i64]]) -> Subspace<Rational> {
        let cols: Vec<Vec<Rational>> = cols.iter().map(|c| c.iter().map(|&x| rat(x)).collect()).collect();
        Subspace::from_basis(Matrix::from_columns(&cols)).unwrap()
    }

    #[test]
    fn standard_form_shape() {
        let j = standard_form(bm(1));
        assert_eq!(j.matrix(), &Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]]));
        for m in 1..=4 {
            let j = standard_form(bm(m));
            assert_eq!(j.matrix().transpose(), j.matrix().map(|q| -q.clone()));
            assert!(j.matrix().inverse().is_some());
        }
        let j2 = standard_form(bm(2));
        let anti: Vec<Rational> = (0..4).map(|i| j2.matrix()[(i, 3 - i)].clone()).collect();
        assert_eq!(anti, vec![rat(1), rat(-1), rat(1), rat(-1)]);
    }

    #[test]
    fn osculating_examples() {
        assert_eq!(osculating_flag(&rat(0), bm(3)).matrix(), &RationalMatrix::identity(6));
        let f = osculating_flag(&rat(1), bm(2));
        let cols: Vec<Vec<Rational>> = (0..4).map(|j| f.matrix().column(j)).collect();
        assert_eq!(cols[0], vec![rat(1), rat(1), ratio(1, 2), ratio(1, 6)]);
        assert_eq!(cols[1], vec![rat(0), rat(1), rat(1), ratio(1, 2)]);
        assert_eq!(cols[2], vec![rat(0), rat(0), rat(1), rat(1)]);
        assert_eq!(cols[3], vec![rat(0), rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn curve_pairing_vanishes_to_high_order() {
        // ⟨γ(t), γ'(t)⟩ = 0 identically
        let j = standard_form(bm(2));
        for t in [rat(0), rat(2), ratio(-3, 5)] {
            let f = osculating_flag(&t, bm(2));
            assert_eq!(j.pair(&f.matrix().column(0), &f.matrix().column(1)), rat(0));
            assert!(is_isotropic(&f, &j));
        }
    }

    #[test]
    fn annihilator_examples() {
        let j = standard_form(bm(2));
        let v = Subspace::span(&RationalMatrix::identity(4));
        assert_eq!(annihilator(&v, &j).dim(), 0);
        let w = span(&[&[1, 0, 0, 0]]);
        assert!(annihilator(&w, &j).same_span(&span(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])));
        assert_eq!(annihilator(&Subspace::<Rational>::zero(4), &j).dim(), 4);
    }

    #[test]
    fn lagrangian_examples() {
        let j1 = standard_form(bm(1));
        assert!(is_lagrangian(&span(&[&[3, -7]]), &j1));
        let j = standard_form(bm(2));
        assert!(is_lagrangian(&span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]), &j));
        assert!(!is_lagrangian(&span(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]), &j));
    }

    #[test]
    fn membership_examples() {
        let f = osculating_flag(&rat(0), bm(2));
        let h = span(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert!(schubert_membership(&h, &Partition::empty(), &f).unwrap());
        assert!(schubert_membership(&f.step(2), &"2,2".parse().unwrap(), &f).unwrap());
        // det [e1+e3, e2+e4, e1, e2] = 1 != 0, so H misses F_2
        assert!(!schubert_membership(&h, &"1".parse().unwrap(), &f).unwrap());
        let h2 = span(&[&[1, 0, 1, 0], &[0, 1, 0, 0]]);
        assert!(schubert_membership(&h2, &"1".parse().unwrap(), &f).unwrap());
        assert!(schubert_membership(&span(&[&[1, 0, 0, 0]]), &"1".parse().unwrap(), &f).is_err());
    }

    #[test]
    fn random_isotropic_flags() {
        let j = standard_form(bm(1));
        assert!(is_isotropic(&random_isotropic_flag(3, bm(1)), &j));
        for m in 2..=4 {
            let j = standard_form(bm(m));
            for seed in 0..5 {
                assert!(is_isotropic(&random_isotropic_flag(seed, bm(m)), &j), "m={m} seed={seed}");
            }
        }
        assert_eq!(random_isotropic_flag(7, bm(3)), random_isotropic_flag(7, bm(3)));
        let j = standard_form(bm(2));
        assert!(!is_isotropic(&random_flag(1, bm(2)), &j));
    }

    #[test]
    fn conjugate_pairing() {
        let m = bm(2);
        let l: Partition = "1".parse().unwrap();
        let real = osculating_flag(&rat(2), m).to_complex();
        let plus_i = osculating_flag(&GaussianRational::i(), m);
        let minus_i = osculating_flag(&-GaussianRational::i(), m);
        assert!(conjugate_pairing_check(&[(l.clone(), real.clone())]));
        assert!(conjugate_pairing_check(&[(l.clone(), plus_i.clone()), (l.clone(), minus_i.clone()), (l.clone(), real)]));
        assert!(!conjugate_pairing_check(&[(l.clone(), plus_i.clone())]));
        let other: Partition = "2,1".parse().unwrap();
        assert!(!conjugate_pairing_check(&[(l, plus_i), (other, minus_i)]));
    }

    #[test]
    fn instance_json_roundtrip() {
        let m = bm(2);
        let conds: Vec<Partition> = vec!["1".parse().unwrap(); 4];
        let doc = InstanceDoc::osculating(m, conds, &[rat(0), ratio(1, 2), rat(2), rat(-3)]).unwrap();
        let text = doc.to_json().unwrap();
        assert!(text.contains("\"1/6\"") || text.contains("\"-9/2\""));
        let back = InstanceDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json().unwrap(), text);
        let flags = back.flag_matrices().unwrap();
        assert_eq!(flags[1], osculating_flag(&ratio(1, 2), m));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
    }
}
