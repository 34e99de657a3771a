//! Greedy first-fit coloring, generic over the neighborhood distance, plus
//! verification and counting.
//!
//! The coloring loop visits vertices in a caller-supplied order and gives
//! each the smallest color not used within distance `ell`. `ell = 1` reads
//! adjacency directly; `ell > 1` walks a depth-capped BFS on the fly so the
//! power graph is never materialized.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BfsScratch, Graph, VertexId};
use crate::ordering::Permutation;

const UNCOLORED: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("permutation covers {got} vertices but the graph has {expected}")]
    WrongPermutationSize { expected: usize, got: usize },
    #[error("colors do not form a contiguous range starting at 0")]
    NonContiguousColors,
    #[error("not every vertex is colored")]
    Incomplete,
}

/// A complete vertex coloring with colors `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: u32,
}

impl Coloring {
    /// Wrap an explicit assignment, checking completeness and that the
    /// colors form a contiguous range `{0..max}`.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self, ColoringError> {
        if colors.iter().any(|&c| c == UNCOLORED) {
            return Err(ColoringError::Incomplete);
        }
        let num_colors = match colors.iter().max() {
            None => 0,
            Some(&max) => max + 1,
        };
        let mut present = vec![false; num_colors as usize];
        for &c in &colors {
            present[c as usize] = true;
        }
        if present.iter().any(|&p| !p) {
            return Err(ColoringError::NonContiguousColors);
        }
        Ok(Coloring { colors, num_colors })
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: VertexId) -> u32 {
        self.colors[v as usize]
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    /// CSV export: `vertex,color` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("vertex,color\n");
        for (v, c) in self.colors.iter().enumerate() {
            out.push_str(&format!("{v},{c}\n"));
        }
        out
    }
}

/// JSON summary of one coloring run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringSummary {
    pub strategy: String,
    pub ell: u32,
    pub num_colors: u32,
    pub runtime_ms: f64,
}

/// Greedy first-fit coloring: visit vertices in `order`, assigning each the
/// smallest color absent from its already-colored distance-`ell`
/// neighborhood. The result is a proper `ell`-distance coloring.
pub fn greedy_color(g: &Graph, order: &Permutation, ell: u32) -> Result<Coloring, ColoringError> {
    assert!(ell >= 1, "ell must be at least 1");
    let n = g.n();
    if order.len() != n {
        return Err(ColoringError::WrongPermutationSize {
            expected: n,
            got: order.len(),
        });
    }

    let mut colors = vec![UNCOLORED; n];
    // Forbidden-color scratch indexed by color, reset via the touched list;
    // a vertex never needs a color beyond its ell-neighborhood size.
    let mut forbidden = vec![false; n + 1];
    let mut touched: Vec<u32> = Vec::new();
    let mut bfs = (ell > 1).then(|| BfsScratch::new(n));
    let mut max_color = 0u32;

    for &v in order.order() {
        touched.clear();
        let forbid = |c: u32, forbidden: &mut Vec<bool>, touched: &mut Vec<u32>| {
            if c != UNCOLORED && !forbidden[c as usize] {
                forbidden[c as usize] = true;
                touched.push(c);
            }
        };
        match &mut bfs {
            None => {
                for &u in g.neighbors(v) {
                    forbid(colors[u as usize], &mut forbidden, &mut touched);
                }
            }
            Some(scratch) => {
                scratch.run(g, v, ell);
                for &u in scratch.visited() {
                    if u != v {
                        forbid(colors[u as usize], &mut forbidden, &mut touched);
                    }
                }
            }
        }
        let mut col = 0u32;
        while forbidden[col as usize] {
            col += 1;
        }
        colors[v as usize] = col;
        max_color = max_color.max(col);
        for &c in &touched {
            forbidden[c as usize] = false;
        }
    }

    Ok(Coloring {
        colors,
        num_colors: if n == 0 { 0 } else { max_color + 1 },
    })
}

/// True iff no two distinct vertices within distance `ell` share a color.
pub fn verify(g: &Graph, coloring: &Coloring, ell: u32) -> bool {
    assert!(ell >= 1, "ell must be at least 1");
    let n = g.n();
    if coloring.colors.len() != n {
        return false;
    }
    if ell == 1 {
        return (0..n as VertexId).all(|v| {
            g.neighbors(v)
                .iter()
                .all(|&u| coloring.colors[u as usize] != coloring.colors[v as usize])
        });
    }
    let mut scratch = BfsScratch::new(n);
    for v in 0..n as VertexId {
        scratch.run(g, v, ell);
        for &u in scratch.visited() {
            if u != v && coloring.colors[u as usize] == coloring.colors[v as usize] {
                return false;
            }
        }
    }
    true
}

/// Number of distinct colors used.
pub fn count_colors(coloring: &Coloring) -> usize {
    let mut present = vec![false; coloring.num_colors as usize];
    for &c in &coloring.colors {
        present[c as usize] = true;
    }
    present.iter().filter(|&&p| p).count()
}
