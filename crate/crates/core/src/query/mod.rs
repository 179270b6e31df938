//! The fuzzy query language: parsing, binding and evaluation.

pub mod ast;
pub mod engine;
pub mod parser;

pub use ast::{
    AttrPredicate, CompareOp, Condition, MethodPredicate, Operand, Projection, QueryAst,
};
pub use engine::{
    bind, bind_with_level, exec_sasn, exec_smsn, execute, explain, run_query, BoundLeaf,
    BoundQuery, CheckTrace, ConditionBinding, LeafKind, LeafTrace, ObjectTrace, QueryError,
    ResultSet, Trace, UnmatchableCondition,
};
pub use parser::{parse_query, SyntaxError};
