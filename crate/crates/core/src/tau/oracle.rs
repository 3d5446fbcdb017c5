//! Brute-force tau straight from its integral definition, for cross-checking
//! the closed routes on small graphs.

use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;
use crate::laplacian::{DiscreteLaplacian, PseudoInverse};
use crate::sum::CompensatedSum;

pub const ORACLE_MAX_VERTICES: usize = 12;
pub const ORACLE_MIN_MESH: usize = 64;

/// `¼∫(d/dx r(x,p))² dx` by sampling `r(x,p)` at `mesh + 1` equally spaced
/// points per edge. Each interior sample inserts a valence-2 vertex and
/// recomputes a fresh pseudo-inverse; the derivative on each cell is the
/// forward difference and the integral is the composite midpoint rule.
pub fn tau_integral_oracle(g: &MetrizedGraph, mesh: usize, base: usize) -> Result<f64> {
    if mesh < ORACLE_MIN_MESH {
        return Err(Error::ParameterOutOfRange(format!(
            "mesh {mesh} is below {ORACLE_MIN_MESH}"
        )));
    }
    let g = if g.is_adequate() {
        g.clone()
    } else {
        g.make_adequate().graph
    };
    let v = g.vertex_count();
    if v > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge {
            vertices: v,
            limit: ORACLE_MAX_VERTICES,
            what: "the integral oracle",
        });
    }
    if base >= v {
        return Err(Error::IndexOutOfRange {
            index: base,
            vertex_count: v,
        });
    }
    let pinv = PseudoInverse::dense(&DiscreteLaplacian::from_adequate(&g)?)?;
    let mut integral = CompensatedSum::new();
    for (id, e) in g.edges().iter().enumerate() {
        let h = e.length / mesh as f64;
        let mut prev = pinv.resistance(e.a, base)?;
        for k in 1..=mesh {
            let next = if k == mesh {
                pinv.resistance(e.b, base)?
            } else {
                let sub = g.subdivide_edge(id, k as f64 / mesh as f64)?;
                let sub_pinv = PseudoInverse::dense(&DiscreteLaplacian::from_adequate(&sub)?)?;
                sub_pinv.resistance(v, base)?
            };
            let slope = (next - prev) / h;
            integral.add(slope * slope * h);
            prev = next;
        }
    }
    Ok(integral.value() / 4.0)
}
