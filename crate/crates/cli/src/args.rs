use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "hedgeql",
    version,
    about = "Query fuzzy object datasets with hedge-algebra linguistic terms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one query and print the matching objects.
    Query(QueryArgs),
    /// Read queries interactively from standard input.
    Repl(ReplArgs),
    /// Print the classes and gaps of one attribute's level-k partition.
    Partition(PartitionArgs),
    /// Find the neighborhood of a number or a linguistic term.
    Locate(LocateArgs),
    /// Check a schema file and, optionally, a dataset file.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long, value_name = "PATH")]
    pub schema: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub data: PathBuf,
    /// Query text.
    #[arg(
        long = "q",
        value_name = "TEXT",
        required_unless_present = "query_file"
    )]
    pub q: Option<String>,
    /// File holding the query text.
    #[arg(long, value_name = "PATH", conflicts_with = "q")]
    pub query_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Append the per-object evaluation trace.
    #[arg(long)]
    pub explain: bool,
    /// Evaluate every condition at this level instead of its term length.
    #[arg(long, value_name = "K")]
    pub level: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReplArgs {
    #[arg(long, value_name = "PATH")]
    pub schema: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub data: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Start with tracing enabled.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long, value_name = "PATH")]
    pub schema: PathBuf,
    #[arg(long, value_name = "NAME")]
    pub attr: String,
    #[arg(long, value_name = "K")]
    pub level: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct LocateArgs {
    #[arg(long, value_name = "PATH")]
    pub schema: PathBuf,
    #[arg(long, value_name = "NAME")]
    pub attr: String,
    #[arg(long, value_name = "K")]
    pub level: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// A number in the attribute's domain or a linguistic term.
    #[arg(value_name = "VALUE_OR_TERM", allow_hyphen_values = true)]
    pub value: String,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, value_name = "PATH")]
    pub schema: PathBuf,
    #[arg(long, value_name = "PATH")]
    pub data: Option<PathBuf>,
}
