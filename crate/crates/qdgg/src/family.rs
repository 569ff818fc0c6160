use std::fmt;
use std::str::FromStr;

use qdgg_core::fibonacci::{fib_graphs, FibWord};
use qdgg_core::permutations::{perm_graphs, Permutation};
use qdgg_core::reflection::{build_by_reflection, ReflectedVertex};
use qdgg_core::tableaux::{tab_graphs, StandardTableau};
use qdgg_core::trees::{tree_graphs, PlaneBinaryTree};
use qdgg_core::{QDGGPair, VertexKey};

use crate::error::{CliError, Result};

/// Environment variable replacing every per-family height limit.
pub const MAX_HEIGHT_VAR: &str = "QDGG_MAX_HEIGHT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Fib,
    Perm,
    Tab,
    Tree,
    Reflect,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Fib,
        Family::Perm,
        Family::Tab,
        Family::Tree,
        Family::Reflect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fib => "fib",
            Family::Perm => "perm",
            Family::Tab => "tab",
            Family::Tree => "tree",
            Family::Reflect => "reflect",
        }
    }

    /// Whether `r` is a free parameter; the other families have `r = 1`.
    pub fn takes_r(self) -> bool {
        matches!(self, Family::Fib | Family::Reflect)
    }

    /// Default height limit.
    pub fn max_height(self) -> usize {
        match self {
            Family::Perm | Family::Tab => 8,
            Family::Tree => 10,
            Family::Fib | Family::Reflect => 14,
        }
    }

    /// Checks `r` and `height` against the family and the height limit.
    /// `limit_override` comes from [`MAX_HEIGHT_VAR`]; `allow_large` lifts the
    /// limit entirely.
    pub fn validate(
        self,
        r: Option<u32>,
        height: usize,
        allow_large: bool,
        limit_override: Option<usize>,
    ) -> Result<u32> {
        let r = match (r, self.takes_r()) {
            (Some(_), false) => {
                return Err(CliError::Usage(format!(
                    "--r does not apply to family {}",
                    self.name()
                )));
            }
            (Some(0), true) => return Err(CliError::Usage("--r must be positive".into())),
            (Some(r), true) => r,
            (None, _) => 1,
        };
        let limit = limit_override.unwrap_or(self.max_height());
        if height > limit && !allow_large {
            return Err(CliError::Usage(format!(
                "height {height} exceeds the limit {limit} for family {}; pass --allow-large or set {MAX_HEIGHT_VAR}",
                self.name()
            )));
        }
        Ok(r)
    }

    pub fn build(self, r: u32, height: usize) -> Result<Built> {
        Ok(match self {
            Family::Fib => Built::Fib(fib_graphs(r, height)?),
            Family::Perm => Built::Perm(perm_graphs(height)?),
            Family::Tab => Built::Tab(tab_graphs(height)?),
            Family::Tree => Built::Tree(tree_graphs(height)?),
            Family::Reflect => Built::Reflect(build_by_reflection(r, height)?),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown family {s:?}")))
    }
}

/// A built pair with its typed payloads.
#[derive(Clone, Debug)]
pub enum Built {
    Fib(QDGGPair<FibWord>),
    Perm(QDGGPair<Permutation>),
    Tab(QDGGPair<StandardTableau>),
    Tree(QDGGPair<PlaneBinaryTree>),
    Reflect(QDGGPair<ReflectedVertex>),
}

impl Built {
    pub fn family(&self) -> Family {
        match self {
            Built::Fib(_) => Family::Fib,
            Built::Perm(_) => Family::Perm,
            Built::Tab(_) => Family::Tab,
            Built::Tree(_) => Family::Tree,
            Built::Reflect(_) => Family::Reflect,
        }
    }

    /// The same pair with payloads replaced by their keys.
    pub fn keyed(&self) -> QDGGPair<String> {
        fn keys<P: VertexKey>(pair: &QDGGPair<P>) -> QDGGPair<String> {
            pair.map_payloads(P::key)
                .expect("keys of a built pair are distinct")
        }
        match self {
            Built::Fib(p) => keys(p),
            Built::Perm(p) => keys(p),
            Built::Tab(p) => keys(p),
            Built::Tree(p) => keys(p),
            Built::Reflect(p) => keys(p),
        }
    }
}
