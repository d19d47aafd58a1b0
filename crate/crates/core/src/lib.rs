//! Exact search and verification of qudit graph codes.
//!
//! A graph code on a weighted graph `G` with edge multiplicities mod `D` is a
//! set of labels `a ∈ Z_D^n`, each standing for the state `Z^a|G⟩`. Pauli
//! products act on these labels by translation, so distances, codeword
//! searches and stabilizer checks all reduce to arithmetic over `Z_D`. The
//! [`oracle`] module recomputes the same quantities on dense state vectors.

pub mod codes;
pub mod constructions;
pub mod distance;
pub mod error;
pub mod graphs;
pub mod limits;
pub mod oracle;
pub mod pauli;
pub mod report;
pub mod search;
pub mod stabilizer;
pub mod zmod;

pub use codes::{assert_distance, check_codewords, is_additive, qs_bound, DistanceReport, GraphCode, Violation};
pub use constructions::{hypercube16_code, partition_code, star_code_odd, PartitionSpec};
pub use distance::{
    build_distance_table, build_distance_table_with, pair_distance, Distance, DistanceTable, TableOptions,
};
pub use error::{Error, ParseErrorKind, Result};
pub use graphs::{apply_pauli_symbolic, build_family, parse_graph, serialize_graph, Family, FamilyOptions, Graph};
pub use oracle::{kl_verify, DenseState, DenseState32, DenseStateOf, KlReport};
pub use pauli::{commutation_exponent, enumerate_by_size, multiply, parse_pauli, PauliProduct};
pub use report::CodeReport;
pub use search::{search_additive, search_code, SearchOptions};
pub use stabilizer::{stabilizer_subgroup, verify_stabilizer, StabilizerGroup, StabilizerReport};
pub use zmod::{diagonalize, dual_generators, solve_dual, span, GeneratorMatrix, LabelSpace, ModTuple};
