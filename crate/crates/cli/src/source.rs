use std::path::PathBuf;

use clap::{Args, ValueEnum};
use metrized_tau::families;
use metrized_tau::MetrizedGraph;

use crate::error::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Hexagonal torus H(n, m), structural indices.
    Hex,
    /// MM(a, b).
    Mm,
    /// TT(a, b, c).
    Tt,
    /// Cycle with --v vertices.
    Circle,
    /// Complete graph on --v vertices.
    Complete,
    /// Path with --v edges.
    Path,
    /// Seeded random bridgeless graph on --v vertices with --chords extra edges.
    Random,
}

/// A family member or an edge-list file.
#[derive(Args, Clone, Debug, Default)]
pub struct GraphSource {
    #[arg(value_enum, required_unless_present = "input")]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub v: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub chords: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV edge list `a,b,length` (0-based vertices, `#` comments).
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
}

fn need(value: Option<usize>, flag: &str, family: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

impl GraphSource {
    pub fn hex(n: usize, m: usize) -> Self {
        Self {
            family: Some(Family::Hex),
            n: Some(n),
            m: Some(m),
            ..Self::default()
        }
    }

    pub fn mm(a: usize, b: usize) -> Self {
        Self {
            family: Some(Family::Mm),
            a: Some(a),
            b: Some(b),
            ..Self::default()
        }
    }

    pub fn tt(a: usize, b: usize, c: usize) -> Self {
        Self {
            family: Some(Family::Tt),
            a: Some(a),
            b: Some(b),
            c: Some(c),
            ..Self::default()
        }
    }

    /// Structural `(n, m)` when this is a hexagonal torus.
    pub fn hex_params(&self) -> Result<Option<(usize, usize)>, CliError> {
        if self.family != Some(Family::Hex) {
            return Ok(None);
        }
        Ok(Some((need(self.n, "n", "hex")?, need(self.m, "m", "hex")?)))
    }

    /// Vertex count without building the graph, where it is cheap to know.
    pub fn predicted_vertices(&self) -> Option<usize> {
        match self.family? {
            Family::Hex => Some(2 * (self.n? + 1) * (self.m? + 1)),
            Family::Mm => Some(4 * self.a? * self.b?),
            Family::Tt => {
                let a = self.a?;
                (a < 40).then(|| 3 * (1usize << a) - 2)
            }
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match (self.family, &self.input) {
            (_, Some(path)) => path.display().to_string(),
            (Some(Family::Hex), _) => format!("H({},{})", opt(self.n), opt(self.m)),
            (Some(Family::Mm), _) => format!("MM({},{})", opt(self.a), opt(self.b)),
            (Some(Family::Tt), _) => format!("TT({},{},{})", opt(self.a), opt(self.b), opt(self.c)),
            (Some(Family::Circle), _) => format!("C{}", opt(self.v)),
            (Some(Family::Complete), _) => format!("K{}", opt(self.v)),
            (Some(Family::Path), _) => format!("P{}", opt(self.v)),
            (Some(Family::Random), _) => format!("random(v={},chords={},seed={})", opt(self.v), self.chords, self.seed),
            (None, None) => "?".into(),
        }
    }

    pub fn resolve(&self) -> Result<(String, MetrizedGraph), CliError> {
        if let Some(path) = &self.input {
            return Ok((self.label(), metrized_tau::graph::read_edge_list_file(path)?));
        }
        let family = self.family.ok_or_else(|| CliError::Usage("a family or --input is required".into()))?;
        let g = match family {
            Family::Hex => families::hexagonal_torus(need(self.n, "n", "hex")?, need(self.m, "m", "hex")?)?,
            Family::Mm => families::mm_graph(need(self.a, "a", "mm")?, need(self.b, "b", "mm")?)?,
            Family::Tt => families::tt_graph(
                need(self.a, "a", "tt")?,
                need(self.b, "b", "tt")?,
                need(self.c, "c", "tt")?,
            )?,
            Family::Circle => families::circle(at_least(need(self.v, "v", "circle")?, 1, "circle")?),
            Family::Complete => families::complete(at_least(need(self.v, "v", "complete")?, 2, "complete")?),
            Family::Path => families::path(at_least(need(self.v, "v", "path")?, 1, "path")?),
            Family::Random => {
                families::random_bridgeless(at_least(need(self.v, "v", "random")?, 3, "random")?, self.chords, self.seed)
            }
        };
        Ok((self.label(), g))
    }
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "?".into(), |v| v.to_string())
}

fn at_least(v: usize, min: usize, family: &str) -> Result<usize, CliError> {
    if v < min {
        Err(CliError::Usage(format!("{family} needs --v >= {min}")))
    } else {
        Ok(v)
    }
}
