//! Power-conjugate presentations and collection.

mod collector;
mod consistency;
mod presentation;
mod rewrite;
mod source;
mod word;

pub use consistency::{ConsistencyReport, OverlapOutcome, OverlapTest};
pub use presentation::{PcBuilder, PcPresentation, DEFAULT_FUEL};
pub use rewrite::SitePolicy;
pub use source::parse_presentation;
pub use word::{Exp, PcElement, PcWord};
