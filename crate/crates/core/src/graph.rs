//! Compressed-adjacency undirected simple graph, Matrix Market ingestion,
//! and the BFS primitives every ordering metric is built on.
//!
//! The representation is CSR-style: `offsets[v]..offsets[v + 1]` indexes a
//! sorted slice of `v`'s neighbors. Graphs are immutable after construction
//! and safe to share across threads; BFS state lives in a caller-owned
//! [`BfsScratch`] so many traversals can run concurrently over one graph.

use std::io::BufRead;
use std::io::Write;

use thiserror::Error;

/// Vertex identifier. Internally 0-based; Matrix Market's 1-based indices
/// are converted at the parse boundary.
pub type VertexId = u32;

/// Distance reported for vertices a BFS did not reach, or that lie beyond
/// its depth cap.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge endpoint {endpoint} out of bounds for {n} vertices")]
    EndpointOutOfBounds { endpoint: VertexId, n: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError::Malformed {
            line,
            message: message.into(),
        }
    }
}

/// What the parser cleaned out of the raw input while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    /// Diagonal entries (self-loops) dropped.
    pub loops_dropped: usize,
    /// Undirected edges that appeared more than once (duplicate nonzeros, or
    /// both triangles of a `general` file) and were merged.
    pub duplicates_merged: usize,
}

/// Immutable undirected simple graph in compressed row layout.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

impl Graph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v as VertexId)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Undirected edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n() as VertexId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Build a graph from an explicit edge list. Self-loops are dropped,
    /// duplicates merged, and both directions of every edge stored.
    pub fn from_edge_list(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        for &(u, v) in edges {
            for endpoint in [u, v] {
                if endpoint as usize >= n {
                    return Err(GraphError::EndpointOutOfBounds { endpoint, n });
                }
            }
        }
        Ok(Self::from_pairs(n, edges).0)
    }

    /// Shared construction path: clean loops, symmetrize, dedup, pack CSR.
    fn from_pairs(n: usize, edges: &[(VertexId, VertexId)]) -> (Self, ParseStats) {
        let mut stats = ParseStats::default();
        let mut directed: Vec<(VertexId, VertexId)> = Vec::with_capacity(edges.len() * 2);
        for &(u, v) in edges {
            if u == v {
                stats.loops_dropped += 1;
            } else {
                directed.push((u, v));
                directed.push((v, u));
            }
        }
        directed.sort_unstable();
        let before = directed.len();
        directed.dedup();
        stats.duplicates_merged = (before - directed.len()) / 2;

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &directed {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = directed.into_iter().map(|(_, v)| v).collect();
        (Graph { offsets, neighbors }, stats)
    }

    /// Parse a Matrix Market `coordinate` file into the simple undirected
    /// graph on its rows/columns: every off-diagonal nonzero `(i, j)` becomes
    /// the edge `{i-1, j-1}`. Diagonal entries are dropped, duplicates merged,
    /// and `general` inputs symmetrized by union. Numeric values are ignored;
    /// only the sparsity pattern matters.
    pub fn parse_matrix_market<R: BufRead>(reader: R) -> Result<(Self, ParseStats), ParseError> {
        let mut lines = reader.lines().enumerate();

        let (header_idx, header) = match lines.next() {
            Some((i, line)) => (i + 1, line?),
            None => return Err(ParseError::at(1, "empty input, expected Matrix Market header")),
        };
        let mut tokens = header.split_whitespace();
        let banner = tokens.next().unwrap_or("");
        if !banner.eq_ignore_ascii_case("%%MatrixMarket") {
            return Err(ParseError::at(
                header_idx,
                "header must start with %%MatrixMarket",
            ));
        }
        let object = tokens.next().unwrap_or("").to_ascii_lowercase();
        if object != "matrix" {
            return Err(ParseError::at(header_idx, format!("unsupported object `{object}`, expected `matrix`")));
        }
        let format = tokens.next().unwrap_or("").to_ascii_lowercase();
        if format != "coordinate" {
            return Err(ParseError::at(header_idx, format!("unsupported format `{format}`, expected `coordinate`")));
        }
        let field = tokens.next().unwrap_or("").to_ascii_lowercase();
        let values_per_entry = match field.as_str() {
            "pattern" => 0,
            "real" | "integer" => 1,
            "complex" => 2,
            other => {
                return Err(ParseError::at(header_idx, format!("unsupported field `{other}`")));
            }
        };
        let symmetry = tokens.next().unwrap_or("").to_ascii_lowercase();
        if symmetry != "symmetric" && symmetry != "general" {
            return Err(ParseError::at(header_idx, format!("unsupported symmetry `{symmetry}`")));
        }

        // Size line: first non-comment, non-blank line after the header.
        let mut size: Option<(usize, usize, usize, usize)> = None;
        for (i, line) in &mut lines {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') {
                continue;
            }
            let mut it = trimmed.split_whitespace();
            let rows: usize = parse_token(&mut it, i + 1, "row count")?;
            let cols: usize = parse_token(&mut it, i + 1, "column count")?;
            let nnz: usize = parse_token(&mut it, i + 1, "nonzero count")?;
            size = Some((i + 1, rows, cols, nnz));
            break;
        }
        let (size_line, rows, cols, nnz) = match size {
            Some(s) => s,
            None => return Err(ParseError::at(header_idx + 1, "missing size line")),
        };
        let _ = size_line;

        let n = rows.max(cols);
        let mut raw_edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(nnz);
        let mut seen = 0usize;
        for (i, line) in &mut lines {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') {
                continue;
            }
            let lineno = i + 1;
            if seen == nnz {
                return Err(ParseError::at(lineno, format!("more than the declared {nnz} entries")));
            }
            let mut it = trimmed.split_whitespace();
            let row: usize = parse_token(&mut it, lineno, "row index")?;
            let col: usize = parse_token(&mut it, lineno, "column index")?;
            for k in 0..values_per_entry {
                let token = it.next().ok_or_else(|| {
                    ParseError::at(lineno, format!("missing value token {}", k + 1))
                })?;
                token.parse::<f64>().map_err(|_| {
                    ParseError::at(lineno, format!("unparseable value `{token}`"))
                })?;
            }
            if row == 0 || row > rows {
                return Err(ParseError::at(lineno, format!("row index {row} out of declared bounds 1..={rows}")));
            }
            if col == 0 || col > cols {
                return Err(ParseError::at(lineno, format!("column index {col} out of declared bounds 1..={cols}")));
            }
            raw_edges.push((row as VertexId - 1, col as VertexId - 1));
            seen += 1;
        }
        if seen != nnz {
            return Err(ParseError::at(
                size_line,
                format!("declared {nnz} entries but found {seen}"),
            ));
        }

        Ok(Self::from_pairs(n, &raw_edges))
    }

    /// Parse the plain edge-list text format: first line `n m`, then `m`
    /// lines of 0-based `u v` pairs. Lines starting with `#` or `%` are
    /// comments.
    pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(Self, ParseStats), ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let lineno = i + 1;
            let mut it = trimmed.split_whitespace();
            match header {
                None => {
                    let n: usize = parse_token(&mut it, lineno, "vertex count")?;
                    let m: usize = parse_token(&mut it, lineno, "edge count")?;
                    header = Some((n, m));
                    edges.reserve(m);
                }
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(ParseError::at(lineno, format!("more than the declared {m} edges")));
                    }
                    let u: usize = parse_token(&mut it, lineno, "edge endpoint")?;
                    let v: usize = parse_token(&mut it, lineno, "edge endpoint")?;
                    if u >= n || v >= n {
                        return Err(ParseError::at(lineno, format!("endpoint out of bounds for {n} vertices")));
                    }
                    edges.push((u as VertexId, v as VertexId));
                }
            }
        }
        match header {
            None => Err(ParseError::at(1, "empty input, expected `n m` header")),
            Some((n, m)) => {
                if edges.len() != m {
                    return Err(ParseError::at(
                        1,
                        format!("declared {m} edges but found {}", edges.len()),
                    ));
                }
                Ok(Self::from_pairs(n, &edges))
            }
        }
    }

    /// Write the graph as a `pattern symmetric` Matrix Market file
    /// (lower-triangle entries, 1-based).
    pub fn write_matrix_market<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "%%MatrixMarket matrix coordinate pattern symmetric")?;
        writeln!(w, "{} {} {}", self.n(), self.n(), self.m())?;
        for (u, v) in self.edges() {
            writeln!(w, "{} {}", v + 1, u + 1)?;
        }
        Ok(())
    }

    /// Validate the structural invariants; used by tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n();
        if *self.offsets.first().unwrap() != 0 || *self.offsets.last().unwrap() != self.neighbors.len() {
            return Err("offset bounds broken".into());
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err("offsets not nondecreasing".into());
        }
        for v in 0..n as VertexId {
            let nb = self.neighbors(v);
            if nb.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("neighbors of {v} not strictly sorted"));
            }
            for &u in nb {
                if u as usize >= n {
                    return Err(format!("neighbor {u} of {v} out of range"));
                }
                if u == v {
                    return Err(format!("self-loop at {v}"));
                }
                if !self.has_edge(u, v) {
                    return Err(format!("edge {v}->{u} not symmetric"));
                }
            }
        }
        Ok(())
    }
}

fn parse_token<'a, T: std::str::FromStr>(
    it: &mut impl Iterator<Item = &'a str>,
    lineno: usize,
    what: &str,
) -> Result<T, ParseError> {
    let token = it
        .next()
        .ok_or_else(|| ParseError::at(lineno, format!("missing {what}")))?;
    token
        .parse::<T>()
        .map_err(|_| ParseError::at(lineno, format!("unparseable {what} `{token}`")))
}

/// Per-source BFS result: exact unweighted shortest-path distances, with
/// [`UNREACHABLE`] marking vertices beyond the cap or in other components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceField {
    pub source: VertexId,
    pub dist: Vec<u32>,
}

/// Reusable BFS state. `run` leaves distances readable until the next call,
/// so a thread can sweep many sources with two allocations total.
pub struct BfsScratch {
    dist: Vec<u32>,
    queue: Vec<VertexId>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![UNREACHABLE; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Breadth-first search from `source`, not expanding past depth `cap`
    /// (pass `u32::MAX` for no cap).
    pub fn run(&mut self, g: &Graph, source: VertexId, cap: u32) {
        debug_assert!((source as usize) < g.n());
        for &v in &self.queue {
            self.dist[v as usize] = UNREACHABLE;
        }
        self.queue.clear();
        self.dist[source as usize] = 0;
        self.queue.push(source);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let dv = self.dist[v as usize];
            if dv == cap {
                continue;
            }
            for &u in g.neighbors(v) {
                if self.dist[u as usize] == UNREACHABLE {
                    self.dist[u as usize] = dv + 1;
                    self.queue.push(u);
                }
            }
        }
    }

    /// Vertices reached by the last `run`, in BFS order (source first).
    pub fn visited(&self) -> &[VertexId] {
        &self.queue
    }

    /// Distance of `v` per the last `run`.
    pub fn dist(&self, v: VertexId) -> u32 {
        self.dist[v as usize]
    }
}

/// Exact unweighted shortest-path distances from `source`; vertices beyond
/// `cap` (when given) or unreachable report [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, source: VertexId, cap: Option<u32>) -> DistanceField {
    assert!((source as usize) < g.n(), "source {source} out of range");
    let mut scratch = BfsScratch::new(g.n());
    scratch.run(g, source, cap.unwrap_or(u32::MAX));
    DistanceField {
        source,
        dist: scratch.dist,
    }
}
