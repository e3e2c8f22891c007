//! Mod-4 classification of symmetric Schubert problems.
//!
//! For a symmetric problem given by isotropic flags, the Lagrangian
//! involution permutes the solutions and its fixed locus has codimension at
//! least `(Σℓ(λ^i) - m) / 2`. Once that codimension reaches two
//! (`Σℓ >= m + 4`), the number of real solutions is congruent to `d(λ)`
//! modulo four.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lagrangian::lg_problem_degree;
use crate::schur::{problem_degree, SchubertProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCase {
    None,
    /// `Σℓ = m`: the problem is also a Schubert problem on LG.
    AtLgDim,
    /// `Σℓ = m + 2`: the Lagrangian intersection is empty, but the fixed
    /// locus may still have codimension one.
    AtLgDimPlus2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub m: u32,
    pub conditions: String,
    pub sum_length: u32,
    pub parity_ok: bool,
    pub min_bound_ok: bool,
    /// `(Σℓ - m) / 2`, rendered as `p` or `p/2`.
    pub fixed_codim_bound: String,
    pub congruence_guaranteed: bool,
    pub degree: String,
    pub degree_mod4: u8,
    pub real_lower_bound: u8,
    pub boundary_case: BoundaryCase,
}

impl Classification {
    pub fn fixed_codim_ratio(&self) -> Ratio<i64> {
        Ratio::new(self.sum_length as i64 - self.m as i64, 2)
    }
}

/// Classifies a symmetric problem with `d(λ) != 0`.
pub fn classify(p: &SchubertProblem) -> Result<Classification> {
    let degree = problem_degree(p)?;
    classify_with_degree(p, &degree)
}

/// As [`classify`] with a precomputed degree.
pub fn classify_with_degree(p: &SchubertProblem, degree: &BigUint) -> Result<Classification> {
    let p = SchubertProblem::symmetric(p.m, p.conditions.clone())?;
    if *degree == BigUint::default() {
        return Err(Error::InvalidProblem(format!(
            "problem {p} has degree 0 (no solutions for general flags)"
        )));
    }
    let m = p.m.get();
    let sum_length = p.sum_length();
    let degree_mod4 = (degree % 4u32).to_u8().expect("< 4");
    let congruence_guaranteed = sum_length >= m + 4;
    let real_lower_bound = if congruence_guaranteed && degree_mod4 == 2 { 2 } else { degree_mod4 % 2 };
    let boundary_case = if sum_length == m {
        BoundaryCase::AtLgDim
    } else if sum_length == m + 2 {
        BoundaryCase::AtLgDimPlus2
    } else {
        BoundaryCase::None
    };
    let codim = Ratio::new(sum_length as i64 - m as i64, 2);
    Ok(Classification {
        m,
        conditions: p.conditions_key(),
        sum_length,
        parity_ok: sum_length % 2 == m % 2,
        min_bound_ok: sum_length >= m,
        fixed_codim_bound: codim.to_string(),
        congruence_guaranteed,
        degree: degree.to_string(),
        degree_mod4,
        real_lower_bound,
        boundary_case,
    })
}

/// Number of Lagrangian solutions among the `d(λ)` solutions for general
/// isotropic flags: `c(λ)` when `Σℓ = m`, zero when `Σℓ >= m + 2` (the
/// Lagrangian intersection is then empty by dimension count), and `None`
/// when `Σℓ < m`, which cannot occur for a problem with `d(λ) != 0`.
pub fn lagrangian_analysis(p: &SchubertProblem) -> Result<Option<BigUint>> {
    let p = SchubertProblem::symmetric(p.m, p.conditions.clone())?;
    let m = p.m.get();
    let sum_length = p.sum_length();
    if sum_length == m {
        lg_problem_degree(&p.conditions, p.m).map(Some)
    } else if sum_length > m {
        Ok(Some(BigUint::default()))
    } else {
        Ok(None)
    }
}
