//! Exact, checkable machinery for (d+1)-uniform set families of VC-dimension at most `d`.
//!
//! Everything works on subsets of `[n]`, `n <= 63`, packed into a single word
//! ([`SubsetWord`]). On top of the substrate sit the certificate calculus, an
//! Erdős–Rado sunflower extractor, benchmark generators, the partition
//! pipeline that turns a family into an injection certifying its size bound,
//! and a branch-and-bound search for extremal sizes.
//!
//! ```
//! use vcx_core::{star_family, vc_dimension, build_assignment};
//!
//! let star = star_family(5, 2).unwrap();
//! assert_eq!(star.len(), 6);
//! assert_eq!(vc_dimension(&star), 2);
//! let assign = build_assignment(&star, 2).unwrap();
//! assert_eq!(assign.stratum(2).len(), 6);
//! ```

pub mod certificates;
pub mod constructions;
pub mod error;
pub mod family;
pub mod pipeline;
pub mod search;
pub mod shatter;
pub mod subset;
pub mod sunflower;
mod trace_state;
pub mod validate;

pub use certificates::{
    build_assignment, build_assignment_with, certificates_of, check_fiber_structure,
    classify_fiber, fiber_size_bound, fiber_size_histogram, max_certificate,
    CertificateAssignment, FiberHistogram, FiberShape,
};
pub use constructions::{complete_family, random_maximal_vc_family, star_family, FuzzSeed, SplitMix64};
pub use error::{Error, Result};
pub use family::UniformFamily;
pub use pipeline::{run_pipeline, PipelineOptions, PartitionReport};
pub use search::{
    certificate_order_max, exact_max, lower_bound_witness, Budget, SearchMode, SearchResult,
};
pub use shatter::{
    check_size_bounds, complement_shadow, frankl_pach_bound, is_shattered, sauer_shelah_bound,
    shadow, shattered_witness, trace, vc_dimension, ShadowSet,
};
pub use subset::{binomial, k_subsets, SubsetWord};
pub use sunflower::{erdos_rado_threshold, find_sunflower, validate_sunflower, Sunflower};
pub use validate::{validate_instance, InstanceStats};
