use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "kgroth", version, about = "Residue calculus for stable Grothendieck and K-theoretic Thom polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Double Grothendieck polynomial of a permutation, or G_lambda^{k,l} of a partition.
    Groth {
        #[arg(long, required_unless_present = "partition", conflicts_with = "partition")]
        perm: Option<String>,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, requires = "l")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        l: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rewrite G_I in the partition basis.
    Straighten {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expand G_I G_J in the G_lambda^{k,l} basis.
    Product {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// K-theoretic Thom polynomial for maps C^a -> C^b.
    Ktp {
        #[arg(value_enum)]
        singularity: Singularity,
        #[arg(long, required_if_eq("singularity", "sigma"))]
        r: Option<usize>,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum)]
        expand: Option<Expand>,
        #[arg(long = "N", requires = "expand")]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Coefficient tables.
    Coeff {
        #[arg(value_enum)]
        table: Table,
        #[arg(long, required_if_eq("table", "D"))]
        l: Option<usize>,
        #[arg(long)]
        rmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, hide = true)]
        corrupt_d_table: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Singularity {
    A2,
    A3,
    Sigma,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expand {
    Stable,
    Minimal,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Table {
    #[value(name = "d")]
    #[serde(rename = "d")]
    Small,
    #[value(name = "D")]
    #[serde(rename = "D")]
    Minimal,
    #[value(name = "d3")]
    #[serde(rename = "d3")]
    Triple,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    Fast,
    Full,
}
