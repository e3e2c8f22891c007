//! Exhaustive enumeration of symmetric Schubert problems on Gr(m, 2m).
//!
//! Problems are multisets of nonempty symmetric partitions in the `m x m` box
//! with total weight `m²`. The search walks non-increasing index sequences
//! over the symmetric partitions, carrying the partial class product so that
//! a zero partial product prunes the whole subtree. Work is split across
//! threads by the first (largest) condition.

use std::io::Write;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::DegreeCache;
use crate::classify::{classify_with_degree, Classification};
use crate::error::{Error, Result};
use crate::partition::{enumerate_symmetric, BoxBound, Partition};
use crate::schur::{SchubertProblem, SchurRing, SparseClass};

/// Largest `m` accepted by the enumerator.
pub const MAX_M: u32 = 7;

/// Which problems count. The default (`d >= 2`) is the convention that
/// reproduces the published counts: problems with a single solution are not
/// counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationFilter {
    pub min_degree: u64,
    pub min_conditions: usize,
    pub exclude_full_box_conditions: bool,
}

impl Default for EnumerationFilter {
    fn default() -> Self {
        EnumerationFilter { min_degree: 2, min_conditions: 1, exclude_full_box_conditions: false }
    }
}

impl EnumerationFilter {
    /// Every problem with nonzero degree.
    pub fn all() -> Self {
        EnumerationFilter { min_degree: 1, ..Default::default() }
    }

    fn accepts(&self, m: BoxBound, conditions: &[Partition], degree: &BigUint) -> bool {
        *degree >= BigUint::from(self.min_degree.max(1))
            && conditions.len() >= self.min_conditions
            && !(self.exclude_full_box_conditions && conditions.contains(&m.full_box()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemRecord {
    pub problem: SchubertProblem,
    pub degree: BigUint,
    pub classification: Classification,
}

impl ProblemRecord {
    /// Counted in the "lower bound of two" column.
    pub fn has_lower_bound_two(&self) -> bool {
        self.classification.congruence_guaranteed && self.classification.real_lower_bound == 2
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: u32,
    pub n_symmetric: usize,
    pub n_lower_bound: usize,
    pub elapsed: f64,
}

impl TableRow {
    pub fn percentage(&self) -> f64 {
        if self.n_symmetric == 0 {
            0.0
        } else {
            100.0 * self.n_lower_bound as f64 / self.n_symmetric as f64
        }
    }
}

/// All symmetric problems on Gr(m, 2m) with nonzero degree that pass
/// `filter`, each once, conditions in canonical (decreasing) order, sorted.
/// `jobs` is the number of worker threads.
pub fn enumerate_problems(m: BoxBound, filter: &EnumerationFilter, jobs: usize) -> Result<Vec<ProblemRecord>> {
    enumerate_with_cache(m, filter, jobs, None)
}

/// As [`enumerate_problems`]; every computed degree is merged into `cache`.
pub fn enumerate_with_cache(
    m: BoxBound,
    filter: &EnumerationFilter,
    jobs: usize,
    cache: Option<&DegreeCache>,
) -> Result<Vec<ProblemRecord>> {
    if m.get() > MAX_M {
        return Err(Error::InvalidInput(format!("m = {m} exceeds the supported maximum {MAX_M}")));
    }
    if jobs == 0 {
        return Err(Error::InvalidInput("jobs must be at least 1".into()));
    }
    let ring = SchurRing::get(m);
    let syms: Vec<usize> = enumerate_symmetric(m)
        .iter()
        .map(|p| ring.index_of(p).expect("symmetric partitions fit the box"))
        .collect();
    let search = Search { ring: &ring, syms: &syms, target: m.grassmannian_dim() };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start {jobs} worker threads: {e}")))?;
    let found: Vec<Vec<(Vec<usize>, BigUint)>> = pool.install(|| {
        (0..syms.len())
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let one = vec![(ring.index_of(&Partition::empty()).unwrap(), BigInt::from(1))];
                search.extend(&one, 0, first, &mut vec![], &mut out);
                out
            })
            .collect()
    });

    let mut records = Vec::new();
    let worker_cache = DegreeCache::new();
    for (seq, degree) in found.into_iter().flatten() {
        let conditions: Vec<Partition> = seq.iter().map(|&k| ring.basis[syms[k]].clone()).collect();
        let problem = SchubertProblem { m, conditions };
        worker_cache.insert(&problem, degree.clone());
        if !filter.accepts(m, &problem.conditions, &degree) {
            continue;
        }
        let classification = classify_with_degree(&problem, &degree)?;
        records.push(ProblemRecord { problem, degree, classification });
    }
    if let Some(cache) = cache {
        cache.merge(worker_cache);
    }
    records.sort_by(|a, b| a.problem.cmp(&b.problem));
    Ok(records)
}

struct Search<'a> {
    ring: &'a SchurRing,
    /// Ring indices of the symmetric partitions, in increasing order.
    syms: &'a [usize],
    target: u32,
}

impl Search<'_> {
    /// Appends `syms[k]` to the partial problem and continues with indices `<= k`.
    fn extend(&self, v: &SparseClass, weight: u32, k: usize, seq: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, BigUint)>) {
        let lambda = self.syms[k];
        let w = weight + self.ring.basis[lambda].weight();
        if w > self.target {
            return;
        }
        let next = self.ring.mul_basis(v, lambda);
        if next.is_empty() {
            return;
        }
        seq.push(k);
        if w == self.target {
            let top = self.ring.top_index();
            let d = next.iter().find(|(i, _)| *i == top).map(|(_, c)| c.clone()).unwrap_or_default();
            out.push((seq.clone(), d.to_biguint().expect("nonnegative")));
        } else {
            for j in (0..=k).rev() {
                self.extend(&next, w, j, seq, out);
            }
        }
        seq.pop();
    }
}

/// One column of the published table: the number of problems passing the
/// filter and how many of them are forced to have two real solutions.
pub fn table1_row(m: BoxBound, filter: &EnumerationFilter, jobs: usize) -> Result<TableRow> {
    let start = Instant::now();
    let records = enumerate_problems(m, filter, jobs)?;
    Ok(TableRow {
        m: m.get(),
        n_symmetric: records.len(),
        n_lower_bound: records.iter().filter(|r| r.has_lower_bound_two()).count(),
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// CSV with columns `m,conditions,degree,sum_length,guaranteed,lower_bound`.
pub fn write_csv<W: Write>(records: &[ProblemRecord], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["m", "conditions", "degree", "sum_length", "guaranteed", "lower_bound"])?;
    for r in records {
        let c = &r.classification;
        wr.write_record([
            c.m.to_string(),
            c.conditions.clone(),
            c.degree.clone(),
            c.sum_length.to_string(),
            c.congruence_guaranteed.to_string(),
            c.real_lower_bound.to_string(),
        ])?;
    }
    wr.flush().map_err(|e| Error::io("<csv output>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bm(m: u32) -> BoxBound {
        BoxBound::new(m).unwrap()
    }

    fn keys(records: &[ProblemRecord]) -> Vec<String> {
        records.iter().map(|r| r.problem.conditions_key()).collect()
    }

    #[test]
    fn m2_default_filter() {
        let r = enumerate_problems(bm(2), &EnumerationFilter::default(), 1).unwrap();
        assert_eq!(keys(&r), vec!["1|1|1|1"]);
    }

    #[test]
    fn m2_all_degrees() {
        let f = EnumerationFilter { min_degree: 0, ..Default::default() };
        let r = enumerate_problems(bm(2), &f, 2).unwrap();
        let mut k = keys(&r);
        k.sort();
        assert_eq!(k, vec!["1|1|1|1", "2,1|1", "2,2"]);
    }

    #[test]
    fn m1_is_empty_by_default() {
        assert!(enumerate_problems(bm(1), &EnumerationFilter::default(), 1).unwrap().is_empty());
        let all = enumerate_problems(bm(1), &EnumerationFilter::all(), 1).unwrap();
        assert_eq!(keys(&all), vec!["1"]);
    }

    #[test]
    fn small_rows() {
        let f = EnumerationFilter::default();
        let r2 = table1_row(bm(2), &f, 1).unwrap();
        assert_eq!((r2.n_symmetric, r2.n_lower_bound), (1, 0));
        let r3 = table1_row(bm(3), &f, 2).unwrap();
        assert_eq!((r3.n_symmetric, r3.n_lower_bound), (8, 2));
        assert!((r3.percentage() - 25.0).abs() < 1e-9);
    }

    #[test]
    fn csv_output() {
        let r = enumerate_problems(bm(2), &EnumerationFilter::default(), 1).unwrap();
        let mut buf = Vec::new();
        write_csv(&r, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "m,conditions,degree,sum_length,guaranteed,lower_bound\n2,1|1|1|1,2,4,false,0\n"
        );
    }

    #[test]
    fn rejects_large_m_and_zero_jobs() {
        assert!(enumerate_problems(bm(8), &EnumerationFilter::default(), 1).is_err());
        assert!(enumerate_problems(bm(2), &EnumerationFilter::default(), 0).is_err());
    }
}
