//! LMF document model, serialization, reading and canonicalization.

pub mod canon;
pub mod emit;
pub mod model;
pub mod read;
pub mod xml;

pub use canon::canonicalize;
pub use emit::{emit_behaviour, emit_element, emit_lmf};
pub use model::{FrameOut, LexicalEntryOut, LmfDocument, Metadata, MweRef};
pub use read::{dangling_references, read_lmf, read_lmf_lenient};
