//! Isomorphism classes of stable graph matrices.

mod canon;
mod refine;
mod store;

pub use canon::{
    canonical_key, canonical_key_with_guard, canonical_matrix, CanonicalKey, DEFAULT_GUARD,
};
pub use refine::color_classes;
pub use store::{Bucket, IsoClassStore};
