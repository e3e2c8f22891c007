//! Symmetric Schubert problems on the square Grassmannian Gr(m, 2m) and the
//! Lagrangian Grassmannian LG(m, 2m).
//!
//! The crate computes intersection numbers with the Littlewood-Richardson rule
//! (type A) and the Hiller-Boe Pieri rule (type C), classifies symmetric
//! problems by the diagonal-length criterion for the mod-4 congruence of real
//! solutions, enumerates all symmetric problems for small `m`, and builds exact
//! rational instances (isotropic and osculating flags) together with their
//! polynomial systems.

pub mod cache;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod instance;
pub mod lagrangian;
pub mod linalg;
pub mod partition;
pub mod schur;
pub mod system;

pub use classify::{classify, lagrangian_analysis, BoundaryCase, Classification};
pub use enumerate::{enumerate_problems, table1_row, EnumerationFilter, ProblemRecord, TableRow};
pub use error::{Error, Result};
pub use lagrangian::{lg_dimension, lg_multiply, lg_pieri, lg_problem_degree, ClassVectorC};
pub use partition::{BoxBound, Partition, StrictPartition};
pub use schur::{lr_coefficient, multiply_class, problem_degree, ClassVectorA, SchubertProblem};
pub use instance::{
    annihilator, conjugate_pairing_check, involute_flag, is_isotropic, is_lagrangian, osculating_flag,
    random_isotropic_flag, schubert_membership, standard_form, ComplexFlag, Flag, FlagMatrix, InstanceDoc,
    Subspace, SymplecticForm,
};
pub use system::{
    generate_system, read_solutions, read_system, verify_solutions, write_system, PolySystem, Polynomial,
    SolutionSet, VerificationReport,
};
