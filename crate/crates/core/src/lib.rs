//! Exact generation and verification of Penrose tilings.
//!
//! * [`exact`]: arithmetic in Q(φ) and Z[ζ₅].
//! * [`robinson`]: half-tile substitution, composition and pairing.
//! * [`penrose`]: kites and darts, matching rules, vertex atlas, motif search.
//! * [`tilingspace`]: index sequences, towers and Bratteli data.
//! * [`pentagrid`]: de Bruijn's pentagrid, its dual rhombus tiling and the
//!   cut-and-project description.

pub mod exact;
pub mod penrose;
pub mod pentagrid;
pub mod robinson;
pub mod tilingspace;
