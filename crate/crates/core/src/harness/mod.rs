//! Corpus handling, table reproduction, verification suites and reports.

mod cache;
mod config;
mod corpus;
mod named;
mod report;
mod suites;
mod tables;

pub use cache::{lattice_key, Analysis, CacheStats, DiskCache, Engine, ALGORITHM_VERSION, CACHE_ENV};
pub use config::{AllowSource, Config, Settings};
pub use corpus::{parse_group_file, render_group_file, Corpus, CorpusEntry, GroupRecord, DEFAULT_SPECS};
pub use named::{alt, cyclic, dihedral, direct_product, mathieu11, named_group, psl2, sym, MAX_N, MAX_Q};
pub use report::{report_document, AllowlistEcho, ConfigEcho, Counts, ReportItem, Status, Timing, VerificationReport};
pub use suites::{run_suite, suite_primes, Runner, SuiteId};
pub use tables::{
    expected_tables, reproduce, reproduce_table, CellMismatch, ComputedClass, ExpectedRow, ExpectedTable, RowResult,
    TableReport,
};
