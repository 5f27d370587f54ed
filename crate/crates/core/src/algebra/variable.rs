use std::fmt;

use serde::{Deserialize, Serialize};

/// Variable families. The declaration order is the global variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// K-theoretic roots of the first alphabet of a Grothendieck polynomial.
    Alpha,
    /// K-theoretic roots of the second alphabet (target roots for Thom polynomials).
    Beta,
    /// K-theoretic domain roots of a map germ.
    Epsilon,
    /// Residue variables.
    Z,
    Omega,
    Sigma,
    Tau,
    T,
    X,
    /// Cohomological roots paired with `Alpha`/`Epsilon`.
    ABar,
    /// Cohomological roots paired with `Beta`.
    BBar,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Alpha,
        Family::Beta,
        Family::Epsilon,
        Family::Z,
        Family::Omega,
        Family::Sigma,
        Family::Tau,
        Family::T,
        Family::X,
        Family::ABar,
        Family::BBar,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Alpha => "a",
            Family::Beta => "b",
            Family::Epsilon => "e",
            Family::Z => "z",
            Family::Omega => "w",
            Family::Sigma => "s",
            Family::Tau => "u",
            Family::T => "t",
            Family::X => "x",
            Family::ABar => "A",
            Family::BBar => "B",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Family::Alpha => "\\alpha",
            Family::Beta => "\\beta",
            Family::Epsilon => "\\varepsilon",
            Family::Z => "z",
            Family::Omega => "\\omega",
            Family::Sigma => "\\sigma",
            Family::Tau => "\\tau",
            Family::T => "t",
            Family::X => "x",
            Family::ABar => "\\bar\\alpha",
            Family::BBar => "\\bar\\beta",
        }
    }
}

/// An indeterminate `(family, index)`; ordered by family rank, then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub family: Family,
    pub index: u16,
}

impl Variable {
    pub const fn new(family: Family, index: u16) -> Self {
        Variable { family, index }
    }
}

macro_rules! family_ctor {
    ($($name:ident => $fam:ident),* $(,)?) => {
        $(
            #[inline]
            pub const fn $name(index: u16) -> Variable {
                Variable::new(Family::$fam, index)
            }
        )*
    };
}

family_ctor! {
    alpha => Alpha,
    beta => Beta,
    epsilon => Epsilon,
    z => Z,
    omega => Omega,
    sigma => Sigma,
    tau => Tau,
    x => X,
    abar => ABar,
    bbar => BBar,
}

/// The single variable of family `T`.
pub const fn t() -> Variable {
    Variable::new(Family::T, 1)
}

impl Variable {
    pub fn to_latex(&self) -> String {
        match self.family {
            Family::T if self.index == 1 => "t".into(),
            fam => format!("{}_{{{}}}", fam.latex(), self.index),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::T if self.index == 1 => write!(f, "t"),
            fam => write!(f, "{}{}", fam.symbol(), self.index),
        }
    }
}
