//! Subset-sum toolkit built around the set of distinct subset sums.
//!
//! The column-wise enumerator constructs every distinct sum exactly once,
//! paired with a canonical (lexicographically minimal) witness mask — a
//! constructive certificate whose size, not the power set, governs the
//! work. On top of it sit an interleaved double meet-in-the-middle solver,
//! a controlled-aliasing mode that contracts the half-space by a 3/4
//! factor behind four memo lanes, a truncated-enumeration litmus test for
//! early hardness prediction, instance generators for structural sweeps,
//! and a brute-force oracle backing the test suite.

pub mod aliasing;
pub mod certfile;
pub mod combine;
pub mod enumerator;
pub mod error;
pub mod generators;
pub mod harness;
pub mod hashing;
pub mod instance;
pub mod litmus;
pub mod mask;
pub mod oracle;
pub mod solver;

pub use aliasing::{
    alias_state, alias_state_of, aliased_subset_sum, aliased_value, choose_alias_pairs,
    corrected_sum, find_solution_aliased, insert_lane, AliasConfig, AliasPair, AliasPolicy,
};
pub use certfile::{
    format_certificate, parse_certificate, read_certificate, write_certificate,
    CertificateProgram, QueryAnswer,
};
pub use combine::{check, check_aliased, reconstruct, SolutionKind, SolutionReport};
pub use enumerator::{
    enumerate_deterministic, enumerate_instance, enumerate_randomized, CertificateTable,
    ColumnDelta, EnumMode, Enumeration, Frontier, MemoEntry, RunReport, SumState,
};
pub use error::{Error, Result};
pub use generators::{generate, Family, GenSpec};
pub use harness::{
    bench_row, format_rows, parse_plan, parse_rows, run_plan, BenchRow, PlanRow,
};
pub use hashing::{mask_hash, MaskHasher, HASH_PRIME};
pub use instance::{
    format_instance, metrics, parse_instance, read_instance, write_instance, Instance, Metrics,
    MAX_ELEMENTS, MAX_TOTAL,
};
pub use litmus::{litmus, LitmusReport, DEFAULT_COLUMNS, DEFAULT_THRESHOLD};
pub use mask::{lex_smaller, IndexMask, MAX_WIDTH};
pub use oracle::{brute_alias, brute_decide, brute_sigma, OracleResult};
pub use solver::{solve, split, SolveConfig, SolveOutcome, SplitInstance, SplitPolicy};
