use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use chipfire::exactla::IntMatrix;
use chipfire::fixtures;
use chipfire::pair::ChipFiringPair;
use chipfire::sgraph::SignedGraph;
use clap::{Args, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// The 3-site signed triangle example
    Run3,
    /// Its M paired with itself
    Run3Unsigned,
    /// The signed 6-cycle whose criticals have no maximum
    C6,
}

/// Where the pair comes from. Exactly one source must be given.
#[derive(Debug, Clone, Args)]
pub struct PairSource {
    /// JSON file {"L": [[..]], "M": [[..]]}
    #[arg(long, global = true, conflicts_with_all = ["graph", "fixture"])]
    pub pair: Option<PathBuf>,
    /// Signed graph, edge-list text ("n <count> sink <id>" then "u v +|-") or JSON
    #[arg(long, global = true, conflicts_with = "fixture")]
    pub graph: Option<PathBuf>,
    /// Built-in example pair
    #[arg(long, global = true, value_enum)]
    pub fixture: Option<Fixture>,
}

#[derive(Deserialize)]
struct PairFile {
    #[serde(alias = "L")]
    l: IntMatrix,
    #[serde(alias = "M")]
    m: IntMatrix,
}

impl PairSource {
    /// The raw matrices `(L, M)` without validating `M`.
    pub fn matrices(&self) -> Result<(IntMatrix, IntMatrix)> {
        if let Some(path) = &self.pair {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let f: PairFile = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", path.display()))?;
            return Ok((f.l, f.m));
        }
        if let Some(path) = &self.graph {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let g =
                SignedGraph::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
            return Ok(g.reduced_matrices());
        }
        match self.fixture {
            Some(Fixture::Run3) => Ok((fixtures::run3_l(), fixtures::run3_m())),
            Some(Fixture::Run3Unsigned) => Ok((fixtures::run3_m(), fixtures::run3_m())),
            Some(Fixture::C6) => Ok(fixtures::c6_graph().reduced_matrices()),
            None => bail!("no pair given: use --pair, --graph or --fixture"),
        }
    }

    pub fn load(&self, cap: u64) -> Result<ChipFiringPair> {
        let (l, m) = self.matrices()?;
        Ok(ChipFiringPair::with_cap(l, m, cap)?)
    }
}
