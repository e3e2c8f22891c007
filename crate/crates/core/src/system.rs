//! Polynomial systems for Schubert problems in a local chart, their text
//! format, and verification of externally computed solutions.
//!
//! A chart fixes `m` rows `R` of the `2m x m` matrix `H` to the identity and
//! makes the remaining rows free: row `q` (in increasing order) of the free
//! block holds `y_q_1 … y_q_m`. For a condition `λ` and each essential corner
//! `i` (`λ_i > λ_{i+1}`), the rank condition `rank [H | F_k] <= 2m - λ_i`
//! with `k = m + i - λ_i` is imposed by the maximal minors of size
//! `2m - λ_i + 1` that contain every column of `F_k`; the remaining minors lie
//! in the ideal these generate.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{parse_rational, standard_form, FlagMatrix, InstanceDoc, MatrixJson, Provenance};
use crate::linalg::{self, GaussianRational, Matrix, Rational, RationalMatrix};
use crate::partition::{BoxBound, Partition};
use crate::schur::{problem_degree, SchubertProblem};

/// Default tolerance for realness, pairing and the Lagrangian test.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Seed for the chart retry order.
pub const DEFAULT_CHART_SEED: u64 = 0;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial::one(n_vars), c);
        p
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        let mut p = Self::zero(n_vars);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mon: Monomial, c: Rational) {
        assert_eq!(mon.0.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mon).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Polynomial { n_vars: self.n_vars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }

    /// Scaled so the leading coefficient is 1.
    pub fn normalized(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn eval<F: linalg::Field>(&self, y: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(c.clone());
            for (v, &e) in y.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval_complex(&self, y: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for (m, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (v, &e) in y.iter().zip(&m.0) {
                t *= v.powu(e);
            }
            acc += t;
        }
        acc
    }

    /// `p/q*y_1_1^2*y_2_1 + -1/1*y_1_2 + 3/1`.
    pub fn to_text(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0/1".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
            for (v, &e) in vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => write!(out, "*{v}").unwrap(),
                    _ => write!(out, "*{v}^{e}").unwrap(),
                }
            }
        }
        out
    }

    pub fn parse(text: &str, vars: &[String]) -> std::result::Result<Polynomial, String> {
        let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut p = Polynomial::zero(vars.len());
        for term in text.split(" + ") {
            let mut factors = term.trim().split('*');
            let coef = factors.next().unwrap_or_default();
            let c = parse_rational(coef).map_err(|_| format!("bad coefficient {coef:?}"))?;
            let mut e = vec![0u32; vars.len()];
            for f in factors {
                let (name, pow) = match f.split_once('^') {
                    Some((n, k)) => (n, k.parse::<u32>().map_err(|_| format!("bad exponent in {f:?}"))?),
                    None => (f, 1),
                };
                let i = *index.get(name).ok_or_else(|| format!("unknown variable {name:?}"))?;
                e[i] += pow;
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }
}

/// Local chart of Gr(m, 2m): identity on `rows`, free elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub m: usize,
    /// 0-based identity rows, increasing.
    pub rows: Vec<usize>,
}

impl Chart {
    pub fn new(m: usize, mut rows: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        rows.dedup();
        if rows.len() != m || rows.iter().any(|&r| r >= 2 * m) {
            return Err(Error::InvalidInput(format!("chart needs {m} distinct rows below {}", 2 * m)));
        }
        Ok(Chart { m, rows })
    }

    pub fn n_vars(&self) -> usize {
        self.m * self.m
    }

    pub fn var_names(&self) -> Vec<String> {
        (1..=self.m).flat_map(|q| (1..=self.m).map(move |c| format!("y_{q}_{c}"))).collect()
    }

    fn free_rows(&self) -> Vec<usize> {
        (0..2 * self.m).filter(|r| !self.rows.contains(r)).collect()
    }

    /// Every flag meets the coordinate plane of the free rows properly:
    /// `rank [F_k | E_free] = min(2m, k + m)`.
    pub fn is_generic(&self, flags: &[FlagMatrix]) -> bool {
        let n = 2 * self.m;
        let mut e = RationalMatrix::zeros(n, self.m);
        for (c, &r) in self.free_rows().iter().enumerate() {
            e[(r, c)] = Rational::one();
        }
        flags.iter().all(|f| (1..n).all(|k| f.matrix().leading_columns(k).hcat(&e).rank() == n.min(k + self.m)))
    }

    /// Tries the pivot rows of the first flag's `F_m`, then every row subset
    /// in a seeded random order.
    pub fn select(m: BoxBound, flags: &[FlagMatrix], seed: u64) -> Result<Self> {
        let m = m.usize();
        if let Some(first) = flags.first() {
            let pivots = first.matrix().leading_columns(m).transpose().independent_columns();
            let chart = Chart::new(m, pivots)?;
            if chart.is_generic(flags) {
                return Ok(chart);
            }
        } else {
            return Chart::new(m, (0..m).collect());
        }
        let mut subsets = combinations(2 * m, m);
        subsets.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        for rows in subsets {
            let chart = Chart { m, rows };
            if chart.is_generic(flags) {
                return Ok(chart);
            }
        }
        Err(Error::Chart(format!("no coordinate chart of Gr({m},{}) is generic for the given flags", 2 * m)))
    }

    /// `H` as a matrix of polynomials in the chart variables.
    pub fn symbolic(&self) -> Vec<Vec<Polynomial>> {
        let n = self.n_vars();
        let mut h = vec![vec![Polynomial::zero(n); self.m]; 2 * self.m];
        for (c, &r) in self.rows.iter().enumerate() {
            h[r][c] = Polynomial::constant(n, Rational::one());
        }
        for (q, &r) in self.free_rows().iter().enumerate() {
            for c in 0..self.m {
                h[r][c] = Polynomial::var(n, q * self.m + c);
            }
        }
        h
    }

    /// The point of the chart with coordinates `y`, as a `2m x m` matrix.
    pub fn point<F: linalg::Field>(&self, y: &[F]) -> Matrix<F> {
        let mut h = Matrix::zeros(2 * self.m, self.m);
        for (c, &r) in self.rows.iter().enumerate() {
            h[(r, c)] = F::one();
        }
        for (q, &r) in self.free_rows().iter().enumerate() {
            for c in 0..self.m {
                h[(r, c)] = y[q * self.m + c].clone();
            }
        }
        h
    }

    fn point_complex(&self, y: &[Complex64]) -> Vec<Vec<Complex64>> {
        let mut h = vec![vec![Complex64::zero(); self.m]; 2 * self.m];
        for (c, &r) in self.rows.iter().enumerate() {
            h[r][c] = Complex64::new(1.0, 0.0);
        }
        for (q, &r) in self.free_rows().iter().enumerate() {
            for c in 0..self.m {
                h[r][c] = y[q * self.m + c];
            }
        }
        h
    }

    /// Chart coordinates of the column span of `h`; fails if the span is not
    /// in this chart.
    pub fn coordinates<F: linalg::Field>(&self, h: &Matrix<F>) -> Result<Vec<F>> {
        if h.rows() != 2 * self.m || h.cols() != self.m {
            return Err(Error::InvalidInput(format!("expected a {}x{} matrix", 2 * self.m, self.m)));
        }
        let inv = h
            .select_rows(&self.rows)
            .inverse()
            .ok_or_else(|| Error::Chart("subspace is not in the chart".into()))?;
        let y = h.select_rows(&self.free_rows()).mul(&inv);
        Ok(y.data().to_vec())
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant of a square matrix of polynomials, expanding column by column
/// over the set of rows already used.
fn determinant(a: &[Vec<Polynomial>], n_vars: usize) -> Polynomial {
    let s = a.len();
    let mut layer: HashMap<u32, Polynomial> = HashMap::from([(0, Polynomial::constant(n_vars, Rational::one()))]);
    for col in 0..s {
        let mut next: HashMap<u32, Polynomial> = HashMap::new();
        for (mask, p) in &layer {
            for r in 0..s {
                if mask & (1 << r) != 0 || a[r][col].is_zero() {
                    continue;
                }
                let above = (mask >> (r + 1)).count_ones();
                let mut term = p.mul(&a[r][col]);
                if above % 2 == 1 {
                    term = term.scale(&-Rational::one());
                }
                let slot = next.entry(mask | (1 << r)).or_insert_with(|| Polynomial::zero(n_vars));
                *slot = slot.add(&term);
            }
        }
        next.retain(|_, p| !p.is_zero());
        layer = next;
    }
    layer.remove(&((1u32 << s) - 1)).unwrap_or_else(|| Polynomial::zero(n_vars))
}

/// Equations of `X_λ F•` on `chart`, normalized and without repeats.
pub fn condition_polynomials(chart: &Chart, lambda: &Partition, flag: &FlagMatrix) -> Vec<Polynomial> {
    let m = chart.m;
    let n_vars = chart.n_vars();
    let h = chart.symbolic();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 1..=lambda.len() {
        let li = lambda.part(i - 1) as usize;
        if li == lambda.part(i) as usize {
            continue;
        }
        let k = m + i - li;
        let size = 2 * m - li + 1;
        let f: Vec<Vec<Polynomial>> = (0..2 * m)
            .map(|r| (0..k).map(|c| Polynomial::constant(n_vars, flag.matrix()[(r, c)].clone())).collect())
            .collect();
        for hcols in combinations(m, size - k) {
            for rows in combinations(2 * m, size) {
                let sub: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .map(|&r| hcols.iter().map(|&c| h[r][c].clone()).chain(f[r].iter().cloned()).collect())
                    .collect();
                let p = determinant(&sub, n_vars);
                if p.is_zero() {
                    continue;
                }
                let p = p.normalized();
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemMeta {
    pub m: u32,
    pub conditions: Vec<Partition>,
    /// 1-based identity rows of the chart.
    pub chart_rows: Vec<usize>,
    pub chart_seed: u64,
    pub provenance: Provenance,
    pub flags: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub vars: Vec<String>,
    pub polynomials: Vec<Polynomial>,
    pub meta: SystemMeta,
}

impl PolySystem {
    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn chart(&self) -> Result<Chart> {
        Chart::new(self.meta.m as usize, self.meta.chart_rows.iter().map(|r| r.wrapping_sub(1)).collect())
    }

    pub fn problem(&self) -> Result<SchubertProblem> {
        SchubertProblem::new(BoxBound::new(self.meta.m)?, self.meta.conditions.clone())
    }

    pub fn flags(&self) -> Result<Vec<FlagMatrix>> {
        self.meta
            .flags
            .iter()
            .map(|j| FlagMatrix::new(j.to_matrix()?))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.vars.join(" "));
        for p in &self.polynomials {
            out.push_str(&p.to_text(&self.vars));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str, meta: SystemMeta, label: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let err = |line: usize, msg: String| Error::Parse { path: label.into(), line, msg };
        let vars: Vec<String> = match lines.next() {
            Some((_, h)) => match h.strip_prefix("vars:") {
                Some(rest) => rest.split_whitespace().map(str::to_string).collect(),
                None => return Err(err(1, "expected a `vars:` header".into())),
            },
            None => return Err(err(1, "empty system file".into())),
        };
        let m = meta.m as usize;
        if vars.len() != m * m {
            return Err(err(1, format!("{} variables for m = {m}", vars.len())));
        }
        let mut polynomials = Vec::new();
        for (k, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let p = Polynomial::parse(line, &vars).map_err(|msg| err(k + 1, msg))?;
            if p.is_zero() {
                return Err(err(k + 1, "zero polynomial".into()));
            }
            polynomials.push(p);
        }
        Ok(PolySystem { vars, polynomials, meta })
    }
}

/// The sidecar holding the metadata of the system file `path`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// The system of `p` with one flag per condition, on a chart chosen by
/// [`Chart::select`].
pub fn generate_system(p: &SchubertProblem, flags: &[FlagMatrix]) -> Result<PolySystem> {
    generate_system_with(p, flags, Provenance::Explicit, DEFAULT_CHART_SEED)
}

pub fn generate_system_with(
    p: &SchubertProblem,
    flags: &[FlagMatrix],
    provenance: Provenance,
    chart_seed: u64,
) -> Result<PolySystem> {
    let m = p.m;
    if flags.len() != p.conditions.len() {
        return Err(Error::InvalidInput(format!(
            "{} flags for {} conditions",
            flags.len(),
            p.conditions.len()
        )));
    }
    if let Some(f) = flags.iter().find(|f| f.dim() != 2 * m.usize()) {
        return Err(Error::InvalidInput(format!("flag of dimension {} for m = {m}", f.dim())));
    }
    let chart = Chart::select(m, flags, chart_seed)?;
    let mut seen = BTreeSet::new();
    let mut polynomials = Vec::new();
    for (lambda, flag) in p.conditions.iter().zip(flags) {
        for q in condition_polynomials(&chart, lambda, flag) {
            if seen.insert(q.clone()) {
                polynomials.push(q);
            }
        }
    }
    Ok(PolySystem {
        vars: chart.var_names(),
        polynomials,
        meta: SystemMeta {
            m: m.get(),
            conditions: p.conditions.clone(),
            chart_rows: chart.rows.iter().map(|r| r + 1).collect(),
            chart_seed,
            provenance,
            flags: flags.iter().map(|f| MatrixJson::from_matrix(f.matrix())).collect(),
        },
    })
}

pub fn generate_from_instance(doc: &InstanceDoc) -> Result<PolySystem> {
    let p = SchubertProblem::new(doc.box_bound()?, doc.conditions.clone())?;
    generate_system_with(&p, &doc.flag_matrices()?, doc.provenance.clone(), DEFAULT_CHART_SEED)
}

/// Writes the system file and its JSON sidecar.
pub fn write_system(sys: &PolySystem, path: &Path) -> Result<()> {
    std::fs::write(path, sys.to_text()).map_err(|e| Error::io(path, e))?;
    let side = sidecar_path(path);
    let json = serde_json::to_string_pretty(&sys.meta)? + "\n";
    std::fs::write(&side, json).map_err(|e| Error::io(&side, e))
}

pub fn read_system(path: &Path) -> Result<PolySystem> {
    let side = sidecar_path(path);
    let meta_text = std::fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
    let meta: SystemMeta = serde_json::from_str(&meta_text)?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    PolySystem::parse_text(&text, meta, &path.display().to_string())
}

/// Points reported by an external solver.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolutionSet {
    pub points: Vec<Vec<Complex64>>,
    pub provenance: String,
    /// Exact coordinates, when the points were constructed rather than solved.
    pub exact: Option<Vec<Vec<GaussianRational>>>,
}

impl SolutionSet {
    pub fn new(points: Vec<Vec<Complex64>>, provenance: impl Into<String>) -> Self {
        SolutionSet { points, provenance: provenance.into(), exact: None }
    }

    pub fn from_exact(points: Vec<Vec<GaussianRational>>, provenance: impl Into<String>) -> Self {
        let approx = points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|z| Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)))
                    .collect()
            })
            .collect();
        SolutionSet { points: approx, provenance: provenance.into(), exact: Some(points) }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One point per line, `re,im` pairs separated by `;`; blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str, label: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { path: label.into(), line: k + 1, msg };
            let mut pt = Vec::new();
            for coord in line.split(';') {
                let (re, im) = coord
                    .split_once(',')
                    .ok_or_else(|| err(format!("coordinate {coord:?} is not `re,im`")))?;
                let re: f64 = re.trim().parse().map_err(|_| err(format!("bad real part in {coord:?}")))?;
                let im: f64 = im.trim().parse().map_err(|_| err(format!("bad imaginary part in {coord:?}")))?;
                pt.push(Complex64::new(re, im));
            }
            points.push(pt);
        }
        Ok(SolutionSet::new(points, label))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let coords: Vec<String> = p.iter().map(|z| format!("{:e},{:e}", z.re, z.im)).collect();
            out.push_str(&coords.join(";"));
            out.push('\n');
        }
        out
    }
}

pub fn read_solutions(path: &Path) -> Result<SolutionSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    SolutionSet::parse(&text, &path.display().to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n_points: usize,
    pub n_real: usize,
    pub n_conjugate_pairs: usize,
    /// Nonreal points whose conjugate is not in the set.
    pub n_unpaired: usize,
    pub n_lagrangian: usize,
    pub expected_degree: String,
    pub congruence_guaranteed: bool,
    /// `None` when the congruence is not guaranteed.
    pub mod4_consistent: Option<bool>,
    pub residual_max: f64,
    pub solver_overcount: bool,
    pub solver_undercount: bool,
    pub tol: f64,
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
}

pub fn is_real_point(p: &[Complex64], tol: f64) -> bool {
    p.iter().all(|z| z.im.abs() <= tol)
}

/// `(n_real, n_conjugate_pairs)`, pairing nonreal points greedily in order.
pub fn count_real_and_pairs(points: &[Vec<Complex64>], tol: f64) -> (usize, usize) {
    let n_real = points.iter().filter(|p| is_real_point(p, tol)).count();
    let nonreal: Vec<&Vec<Complex64>> = points.iter().filter(|p| !is_real_point(p, tol)).collect();
    let mut used = vec![false; nonreal.len()];
    let mut pairs = 0;
    for i in 0..nonreal.len() {
        if used[i] {
            continue;
        }
        let conj: Vec<Complex64> = nonreal[i].iter().map(|z| z.conj()).collect();
        if let Some(j) = (i + 1..nonreal.len()).find(|&j| !used[j] && close(&conj, nonreal[j], tol)) {
            used[i] = true;
            used[j] = true;
            pairs += 1;
        }
    }
    (n_real, pairs)
}

/// `n_real ≡ d (mod 4)` when the congruence applies.
pub fn mod4_verdict(n_real: usize, degree: &BigUint, guaranteed: bool) -> Option<bool> {
    guaranteed.then(|| (BigUint::from(n_real) % 4u32) == degree % 4u32)
}

/// Real count, pairing, Lagrangian count, residuals and the congruence check
/// for `sols` as points of the chart of `sys`.
pub fn verify_solutions(sys: &PolySystem, sols: &SolutionSet, tol: f64) -> Result<VerificationReport> {
    let n = sys.n_vars();
    if let Some((k, p)) = sols.points.iter().enumerate().find(|(_, p)| p.len() != n) {
        return Err(Error::InvalidInput(format!("point {} has {} coordinates, expected {n}", k + 1, p.len())));
    }
    let chart = sys.chart()?;
    let m = BoxBound::new(sys.meta.m)?;
    let form = standard_form(m);
    let p = sys.problem()?;
    let degree = problem_degree(&p)?;
    let guaranteed = p.is_symmetric() && p.sum_length() >= m.get() + 4;

    let mut residual_max = 0.0f64;
    let mut n_lagrangian = 0;
    for (k, y) in sols.points.iter().enumerate() {
        let (res, lagrangian) = match sols.exact.as_ref().and_then(|e| e.get(k)) {
            Some(exact) => {
                let res = sys
                    .polynomials
                    .iter()
                    .map(|q| gaussian_abs(&q.eval(exact)))
                    .fold(0.0, f64::max);
                let h = chart.point(exact);
                let jl = form.matrix().to_complex();
                (res, h.transpose().mul(&jl).mul(&h).is_zero())
            }
            None => {
                let res = sys.polynomials.iter().map(|q| q.eval_complex(y).norm()).fold(0.0, f64::max);
                (res, lagrangian_defect(&chart.point_complex(y), form.matrix()) <= tol)
            }
        };
        residual_max = residual_max.max(res);
        if lagrangian {
            n_lagrangian += 1;
        }
    }
    let (n_real, n_conjugate_pairs) = count_real_and_pairs(&sols.points, tol);
    let n_points = sols.points.len();
    let d = degree.to_usize().unwrap_or(usize::MAX);
    Ok(VerificationReport {
        n_points,
        n_real,
        n_conjugate_pairs,
        n_unpaired: n_points - n_real - 2 * n_conjugate_pairs,
        n_lagrangian,
        expected_degree: degree.to_string(),
        congruence_guaranteed: guaranteed,
        mod4_consistent: mod4_verdict(n_real, &degree, guaranteed),
        residual_max,
        solver_overcount: n_points > d,
        solver_undercount: n_points < d,
        tol,
    })
}

fn gaussian_abs(z: &GaussianRational) -> f64 {
    let re = z.re.to_f64().unwrap_or(f64::INFINITY);
    let im = z.im.to_f64().unwrap_or(f64::INFINITY);
    re.hypot(im)
}

/// Largest entry of `|Hᵀ J H|`.
fn lagrangian_defect(h: &[Vec<Complex64>], j: &RationalMatrix) -> f64 {
    let n = h.len();
    let m = h.first().map_or(0, Vec::len);
    let jf: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| j[(r, c)].to_f64().unwrap_or(0.0)).collect()).collect();
    let mut worst = 0.0f64;
    for a in 0..m {
        for b in 0..m {
            let mut acc = Complex64::zero();
            for r in 0..n {
                for c in 0..n {
                    if jf[r][c] != 0.0 {
                        acc += h[r][a] * jf[r][c] * h[c][b];
                    }
                }
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}
