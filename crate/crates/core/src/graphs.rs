//! Explicit constructions of the graph families plus an edge-list reader.
//!
//! Internal vertex indices are 0-based. Family coordinates are 1-based and
//! live only in the coordinate map, so formula code never does index
//! arithmetic on raw vertex numbers. Numbering is deterministic: BFS order
//! from the root for trees, row-major everywhere else.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A family-specific vertex address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Coord {
    /// Raw 0-based index; valid for every graph.
    Index(usize),
    /// Tree vertex at `depth`, `ordinal`-th (1-based) in BFS order on that level.
    Depth { depth: usize, ordinal: usize },
    /// The parent that lost a child in `TreeMinusChild`.
    Bereaved,
    /// 1-based `(row, col)`: comb tooth/position, torus row/column, two-cycle path/position.
    Cell { row: usize, col: usize },
    /// First vertex of the middle path of a two-cycle graph.
    LeftJunction,
    /// Last vertex of the middle path of a two-cycle graph.
    RightJunction,
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Index(i) => write!(f, "{i}"),
            Coord::Depth { depth, ordinal } => write!(f, "depth:{depth}:{ordinal}"),
            Coord::Bereaved => write!(f, "bereaved"),
            Coord::Cell { row, col } => write!(f, "({row},{col})"),
            Coord::LeftJunction => write!(f, "left-junction"),
            Coord::RightJunction => write!(f, "right-junction"),
        }
    }
}

impl FromStr for Coord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnknownCoordinate(s.to_string());
        match s {
            "bereaved" => return Ok(Coord::Bereaved),
            "left-junction" => return Ok(Coord::LeftJunction),
            "right-junction" => return Ok(Coord::RightJunction),
            _ => {}
        }
        if let Ok(i) = s.parse::<usize>() {
            return Ok(Coord::Index(i));
        }
        if let Some(rest) = s.strip_prefix("depth:") {
            let (d, o) = rest.split_once(':').ok_or_else(bad)?;
            return Ok(Coord::Depth {
                depth: d.parse().map_err(|_| bad())?,
                ordinal: o.parse().map_err(|_| bad())?,
            });
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        let (r, c) = inner.split_once(',').ok_or_else(bad)?;
        Ok(Coord::Cell {
            row: r.trim().parse().map_err(|_| bad())?,
            col: c.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// Parameters selecting one member of a graph family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Perfect `m`-ary tree of height `h`.
    PerfectTree {
        h: usize,
        m: usize,
    },
    /// Perfect tree with one depth-`k+1` child subtree removed.
    TreeMinusChild {
        h: usize,
        m: usize,
        k: usize,
    },
    /// `m` paths `P_n` joined through their `k`-th vertices.
    Comb {
        m: usize,
        n: usize,
        k: usize,
    },
    /// `C_2 x C_n`, as a simple graph.
    Torus {
        n: usize,
    },
    /// Paths `P_{a1}`, `P_{a2}`, `P_{a3}` with both end columns joined into paths.
    TwoCycles {
        a1: usize,
        a2: usize,
        a3: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilySpec::PerfectTree { m, .. } => m >= 2,
            FamilySpec::TreeMinusChild { h, m, k } => h >= 1 && m >= 2 && k < h,
            FamilySpec::Comb { m, n, k } => m >= 1 && n >= 2 && (1..=n).contains(&k),
            FamilySpec::Torus { n } => n >= 1,
            FamilySpec::TwoCycles { a1, a2, a3 } => a1 >= 2 && a2 >= 2 && a3 >= 2,
            FamilySpec::Path { n } => n >= 1,
            FamilySpec::Cycle { n } => n >= 3,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamily(format!("{self:?}")))
        }
    }

    /// Vertex count implied by the parameters.
    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::PerfectTree { h, m } => perfect_tree_size(h, m),
            FamilySpec::TreeMinusChild { h, m, k } => {
                perfect_tree_size(h, m) - perfect_tree_size(h - k - 1, m)
            }
            FamilySpec::Comb { m, n, .. } => m * n,
            FamilySpec::Torus { n } => 2 * n,
            FamilySpec::TwoCycles { a1, a2, a3 } => a1 + a2 + a3,
            FamilySpec::Path { n } | FamilySpec::Cycle { n } => n,
        }
    }
}

/// `(m^{h+1} - 1) / (m - 1)`.
pub fn perfect_tree_size(h: usize, m: usize) -> usize {
    (0..=h).map(|d| m.pow(d as u32)).sum()
}

/// `name:key=value,...`, e.g. `comb:m=2,n=3,k=2` or `tree-minus-child:h=2,m=2,k=0`.
/// The result is validated.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidFamily(format!("`{s}`: {msg}"));
        let (name, rest) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let mut params = HashMap::new();
        for pair in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, found `{pair}`")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad value for `{}`", k.trim())))?;
            params.insert(k.trim(), v);
        }
        let mut take = |key: &str| {
            params
                .remove(key)
                .ok_or_else(|| bad(format!("missing `{key}`")))
        };
        let spec = match name {
            "tree" => FamilySpec::PerfectTree {
                h: take("h")?,
                m: take("m")?,
            },
            "tree-minus-child" => FamilySpec::TreeMinusChild {
                h: take("h")?,
                m: take("m")?,
                k: take("k")?,
            },
            "comb" => FamilySpec::Comb {
                m: take("m")?,
                n: take("n")?,
                k: take("k")?,
            },
            "torus" => FamilySpec::Torus { n: take("n")? },
            "twocycles" => FamilySpec::TwoCycles {
                a1: take("a1")?,
                a2: take("a2")?,
                a3: take("a3")?,
            },
            "path" => FamilySpec::Path { n: take("n")? },
            "cycle" => FamilySpec::Cycle { n: take("n")? },
            _ => {
                return Err(Error::Unknown {
                    kind: "family",
                    name: name.to_string(),
                })
            }
        };
        if let Some(key) = params.keys().next() {
            return Err(bad(format!("unexpected `{key}`")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Undirected simple graph with sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    coords: HashMap<Coord, usize>,
    family: Option<FamilySpec>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            adjacency,
            coords: HashMap::new(),
            family: None,
        })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// The family that built this graph, if any.
    pub fn family(&self) -> Option<FamilySpec> {
        self.family
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.n()).collect();
        self.is_connected_subset(&all)
    }

    /// Whether `subset` induces a connected subgraph. The empty set is not connected.
    pub fn is_connected_subset(&self, subset: &[usize]) -> bool {
        let Some(&first) = subset.first() else {
            return false;
        };
        let mut inside = vec![false; self.n()];
        for &v in subset {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([first]);
        seen[first] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        let distinct = inside.iter().filter(|&&b| b).count();
        reached == distinct
    }

    /// Resolves a family coordinate to an internal index.
    pub fn vertex_at(&self, coord: Coord) -> Result<usize> {
        if let Coord::Index(i) = coord {
            return if i < self.n() {
                Ok(i)
            } else {
                Err(Error::UnknownCoordinate(coord.to_string()))
            };
        }
        self.coords
            .get(&coord)
            .copied()
            .ok_or_else(|| Error::UnknownCoordinate(coord.to_string()))
    }

    /// All vertices carrying a `Depth` coordinate at the given depth, in BFS order.
    pub fn vertices_at_depth(&self, depth: usize) -> Vec<usize> {
        let mut out: Vec<(usize, usize)> = self
            .coords
            .iter()
            .filter_map(|(c, &v)| match *c {
                Coord::Depth { depth: d, ordinal } if d == depth => Some((ordinal, v)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.into_iter().map(|(_, v)| v).collect()
    }
}

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    coords: HashMap<Coord, usize>,
}

impl Builder {
    fn new() -> Self {
        Self {
            n: 0,
            edges: Vec::new(),
            coords: HashMap::new(),
        }
    }

    fn add_vertex(&mut self, coord: Coord) -> usize {
        let v = self.n;
        self.n += 1;
        self.coords.insert(coord, v);
        v
    }

    fn alias(&mut self, coord: Coord, v: usize) {
        self.coords.insert(coord, v);
    }

    fn edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.edges.push((u, v));
        }
    }

    fn finish(self, family: FamilySpec) -> Result<Graph> {
        let mut g = Graph::from_edges(self.n, self.edges)?;
        g.coords = self.coords;
        g.family = Some(family);
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(g)
    }
}

/// Constructs the graph selected by `spec`.
pub fn build_family(spec: FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let mut b = Builder::new();
    match spec {
        FamilySpec::PerfectTree { h, m } => build_tree(&mut b, h, m, None),
        FamilySpec::TreeMinusChild { h, m, k } => build_tree(&mut b, h, m, Some(k)),
        FamilySpec::Comb { m, n, k } => {
            for i in 1..=m {
                for j in 1..=n {
                    b.add_vertex(Coord::Cell { row: i, col: j });
                }
            }
            let at = |i: usize, j: usize| (i - 1) * n + (j - 1);
            for i in 1..=m {
                for j in 1..n {
                    b.edge(at(i, j), at(i, j + 1));
                }
            }
            for i in 1..m {
                b.edge(at(i, k), at(i + 1, k));
            }
        }
        FamilySpec::Torus { n } => {
            for r in 1..=2 {
                for c in 1..=n {
                    b.add_vertex(Coord::Cell { row: r, col: c });
                }
            }
            let at = |r: usize, c: usize| (r - 1) * n + (c - 1) % n;
            for r in 1..=2 {
                for c in 1..=n {
                    b.edge(at(r, c), at(r, c + 1));
                }
            }
            for c in 1..=n {
                b.edge(at(1, c), at(2, c));
            }
        }
        FamilySpec::TwoCycles { a1, a2, a3 } => {
            let lens = [a1, a2, a3];
            let mut start = [0usize; 3];
            for (r, &len) in lens.iter().enumerate() {
                start[r] = b.n;
                for c in 1..=len {
                    b.add_vertex(Coord::Cell { row: r + 1, col: c });
                }
                for c in 0..len - 1 {
                    b.edge(start[r] + c, start[r] + c + 1);
                }
            }
            let last = |r: usize| start[r] + lens[r] - 1;
            b.edge(start[0], start[1]);
            b.edge(start[1], start[2]);
            b.edge(last(0), last(1));
            b.edge(last(1), last(2));
            b.alias(Coord::LeftJunction, start[1]);
            b.alias(Coord::RightJunction, last(1));
        }
        FamilySpec::Path { n } | FamilySpec::Cycle { n } => {
            for c in 1..=n {
                b.add_vertex(Coord::Cell { row: 1, col: c });
            }
            for c in 0..n - 1 {
                b.edge(c, c + 1);
            }
            if matches!(spec, FamilySpec::Cycle { .. }) {
                b.edge(n - 1, 0);
            }
        }
    }
    b.finish(spec)
}

/// BFS-numbered perfect tree; with `removed = Some(k)` the last depth-`k`
/// vertex gets only `m - 1` children.
fn build_tree(b: &mut Builder, h: usize, m: usize, removed: Option<usize>) {
    let root = b.add_vertex(Coord::Depth {
        depth: 0,
        ordinal: 1,
    });
    let mut level = vec![root];
    for depth in 0..h {
        let mut next = Vec::with_capacity(level.len() * m);
        for (pos, &parent) in level.iter().enumerate() {
            let bereaved = removed == Some(depth) && pos + 1 == level.len();
            let children = if bereaved { m - 1 } else { m };
            if bereaved {
                b.alias(Coord::Bereaved, parent);
            }
            for _ in 0..children {
                let v = b.add_vertex(Coord::Depth {
                    depth: depth + 1,
                    ordinal: next.len() + 1,
                });
                b.edge(parent, v);
                next.push(v);
            }
        }
        level = next;
    }
}

/// Reads the edge-list format: the first non-comment line holds the vertex
/// count, every further non-empty line holds `u v`. Lines starting with `#`
/// are comments.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(err(format!("expected vertex count, found `{line}`")));
                }
                n = Some(
                    fields[0]
                        .parse()
                        .map_err(|_| err(format!("bad vertex count `{}`", fields[0])))?,
                );
            }
            Some(count) => {
                if fields.len() != 2 {
                    return Err(err(format!("expected `u v`, found `{line}`")));
                }
                let parse = |f: &str| {
                    f.parse::<usize>()
                        .map_err(|_| err(format!("bad vertex index `{f}`")))
                };
                let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                for w in [u, v] {
                    if w >= count {
                        return Err(err(format!("vertex index {w} out of range (n = {count})")));
                    }
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing vertex count".into(),
    })?;
    Graph::from_edges(n, edges)
}
