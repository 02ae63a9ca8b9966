//! Stable commutator length in free products of cyclic groups.
//!
//! Words alternating between two cyclic factors are reduced to a linear
//! program over doubly stochastic matrices whose optimum gives scl exactly.
//! Every numeric routine is generic over [`Scalar`]; the aliases below fix the
//! exact rational instantiation, which is what certificates are built from.
//!
//! ```
//! use sclkit::{compute_scl, AlternatingWord, FactorSignature, Rational, SclOptions};
//!
//! let sig = FactorSignature::parse("3,4").unwrap();
//! let w = AlternatingWord::parse("abAB", &sig).unwrap();
//! let r = compute_scl::<Rational>(&w, &SclOptions::default()).unwrap();
//! assert_eq!(r.value, Rational::new(1.into(), 6.into()));
//! ```

pub mod bounds;
pub mod disks;
pub mod error;
pub mod fatgraph;
pub mod polytope;
pub mod pricing;
pub mod scalar;
pub mod scl;
pub mod simplex;
pub mod words;

pub use bounds::{
    cl_lower_bound, cl_version_bound, kappa_claim_bound, multi_factor_bound, product_gap,
    refine_bound, ClBoundQuery,
};
pub use disks::{
    default_k_max, enumerate_checked, enumerate_irreducible, is_disk_sequence, is_irreducible,
    DiskEnumeration, DiskVector,
};
pub use error::{Error, Result};
pub use fatgraph::{
    build_turn_graph, certificate_check, check_admissible, factor_contribution, BoundaryTrace,
    CertificateReport, CheckStatus, Fatgraph, TurnGraph,
};
pub use polytope::{phi_index, StochasticMatrix};
pub use pricing::{cheapest_disks, walk_bound};
pub use scalar::{format_rational, parse_rational, Scalar};
pub use scl::{
    compute_scl, joint_optimize, kappa, kappa_complete, restricted_optimize, seed_columns,
    verify_certificate, BoundKind, CertificateCheck, KappaDecomposition, SclOptions, SclResult,
};
pub use simplex::{simplex_solve, LinearProgram, LpSolution, Relation};
pub use words::{
    abelianization_check, cyclically_reduce, parse_word, syllable_decomposition, AlternatingWord,
    FactorOrder, FactorSignature, Letter, ReducedWord,
};

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;
pub type Matrix = StochasticMatrix<Rational>;
pub type ExactScl = SclResult<Rational>;
pub type ExactDecomposition = KappaDecomposition<Rational>;
pub type FloatScl = SclResult<f64>;
pub type FloatMatrix = StochasticMatrix<f64>;
