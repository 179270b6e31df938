//! Fuzzy queries over object datasets whose attribute values are crisp
//! numbers or linguistic terms.
//!
//! Each attribute carries a hedge algebra that maps terms such as
//! `little long` onto sub-intervals of its domain. At level `k` the domain
//! splits into similarity classes; a crisp or linguistic value matches a
//! condition when both fall into the same class.
//!
//! ```
//! use hedgeql_core::{fixtures, run_query};
//!
//! let data = fixtures::rectangle_dataset();
//! let (_, result) = run_query(
//!     r#"select * from Rectangular where length = "little long" or width = "little short""#,
//!     &data,
//! )
//! .unwrap();
//! assert_eq!(result.ids, ["iD1", "iD2", "iD5", "iD6"]);
//! ```

pub mod algebra;
pub mod display;
pub mod fixtures;
pub mod partition;
pub mod query;
pub mod schema;

pub use algebra::{
    parse_term, validate_config, BoundaryTerm, ConfigError, DomainScale, FuzzyInterval,
    HedgeAlgebraConfig, HedgeId, HedgeSpec, LinguisticValue, Polarity, ScaleError, Term, TermError,
    ValidatedAlgebra, Violation,
};
pub use partition::{
    build_partition, AttrValue, LevelPartition, Located, MatchError, PartitionError,
    SimilarityClass, MAX_LEVEL,
};
pub use query::{
    bind, bind_with_level, exec_sasn, exec_smsn, execute, explain, parse_query, run_query,
    BoundQuery, QueryAst, QueryError, ResultSet, SyntaxError, Trace,
};
pub use schema::{
    load_dataset, load_schema, resolve_synonym, AttributeSpec, Connective, Dataset,
    FuzzyClassSchema, FuzzyObject, LoadError, MethodSpec,
};
