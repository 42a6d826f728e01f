//! Polyomino chain graphs: encoding and realization, the general
//! sum-connectivity index chi_alpha (direct and segment closed form),
//! exhaustive enumeration with symmetry dedup, and brute-force verification
//! of the extremal classification over all alpha regimes.

pub mod chain;
pub mod enumerate;
pub mod extremal;
pub mod index;

pub use chain::{
    CanonicalKey, Cell, ChainError, LengthVector, PolyominoChain, SegmentIndicators, SegmentSpan,
    Turn, TurnSequence,
};
pub use enumerate::{
    census, cell_path_key_set, enumerate_chains, Census, CensusClass, ChainRecord,
    ChainRecordJson, EnumerationError, EnumerationRequest,
};
pub use extremal::moves::{psi_exchange_delta, End, ExchangeMove, PsiDelta};
pub use extremal::{
    classify_family, default_alpha_samples, extremal_search, find_root, regime_of, table1_prediction,
    verify_table1, x0, x1, AlphaSample, ExtremalError, ExtremalReport, ExtremalSide, FamilyRule,
    FamilyTag, RegimeTag, RootTarget, SearchOptions, SetMatch, Table1Cell, Table1Summary, Verdict,
};
pub use index::{
    chi_closed, chi_direct, closed_form_constant, f_val, first_zagreb, g_val, h_val, harmonic, psi,
    Alpha, IndexError,
};
