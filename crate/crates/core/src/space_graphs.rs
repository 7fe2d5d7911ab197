//! Edge-coloured simple connected graphs glued by vertex identification.
//!
//! `{G1} ∘ {G2}` is the set of graphs `G` whose edges split into two
//! complementary subgraphs isomorphic to `G1` and `G2`. Constructively: keep
//! `G2`, add `G1` and identify a non-empty set of `G1`'s vertices with
//! distinct vertices of `G2`, dropping identifications that would create a
//! parallel edge. Building blocks are single edges of one colour.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assembly_core::AssemblySpace;
use crate::error::{Error, Result};

/// Most vertices a graph may have (edge endpoints are stored as `u8`).
pub const MAX_VERTICES: usize = 65;

const NO_EDGE: u8 = u8::MAX;

/// A connected simple graph with coloured edges and no isolated vertices.
///
/// Edges are stored as `(u, v, colour)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColoredGraph {
    pub colors: u8,
    pub vertices: usize,
    pub edges: Vec<(u8, u8, u8)>,
}

/// Byte string identifying a colour-preserving isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalGraphCode(pub Vec<u8>);

impl ColoredGraph {
    /// Builds and validates a graph from `(u, v, colour)` triples.
    pub fn new(colors: u8, vertices: usize, edges: &[(usize, usize, u8)]) -> Result<Self> {
        if vertices > MAX_VERTICES {
            return Err(Error::InvalidObject(format!(
                "at most {MAX_VERTICES} vertices supported"
            )));
        }
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v, c) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidObject(format!(
                    "edge {u}-{v} outside {vertices} vertices"
                )));
            }
            list.push((u.min(v) as u8, u.max(v) as u8, c));
        }
        list.sort_unstable();
        let g = Self {
            colors,
            vertices,
            edges: list,
        };
        g.check()?;
        Ok(g)
    }

    /// A path on `n` edges of one colour.
    pub fn path(colors: u8, color: u8, n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, i + 1, color)).collect();
        Self::new(colors, n + 1, &edges)
    }

    pub fn check(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::InvalidObject("graph has no edges".into()));
        }
        let mut seen = HashSet::new();
        let mut touched = vec![false; self.vertices];
        for &(u, v, c) in &self.edges {
            if u == v {
                return Err(Error::InvalidObject(format!("loop at vertex {u}")));
            }
            if c >= self.colors {
                return Err(Error::InvalidObject(format!(
                    "colour {c} outside palette of {}",
                    self.colors
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidObject(format!("parallel edges {u}-{v}")));
            }
            touched[u as usize] = true;
            touched[v as usize] = true;
        }
        if let Some(v) = touched.iter().position(|t| !t) {
            return Err(Error::InvalidObject(format!("vertex {v} has no edges")));
        }
        if !self.is_connected() {
            return Err(Error::InvalidObject("graph is not connected".into()));
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = self.vertices;
        for &(u, v, _) in &self.edges {
            let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// `n x n` matrix of edge colours, `NO_EDGE` where absent.
    fn color_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![NO_EDGE; self.vertices]; self.vertices];
        for &(u, v, c) in &self.edges {
            m[u as usize][v as usize] = c;
            m[v as usize][u as usize] = c;
        }
        m
    }

    fn neighbours(&self) -> Vec<Vec<(usize, u8)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v, c) in &self.edges {
            adj[u as usize].push((v as usize, c));
            adj[v as usize].push((u as usize, c));
        }
        adj
    }

    /// The subgraph spanned by the edges in `mask`, vertices renumbered in
    /// order of first appearance. Not canonicalized.
    pub fn edge_subgraph(&self, mask: u64) -> Self {
        let mut label = vec![usize::MAX; self.vertices];
        let mut next = 0;
        let mut edges = Vec::new();
        for (i, &(u, v, c)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for w in [u, v] {
                    if label[w as usize] == usize::MAX {
                        label[w as usize] = next;
                        next += 1;
                    }
                }
                let (a, b) = (label[u as usize] as u8, label[v as usize] as u8);
                edges.push((a.min(b), a.max(b), c));
            }
        }
        edges.sort_unstable();
        Self {
            colors: self.colors,
            vertices: next,
            edges,
        }
    }

    /// Parses `"0-1,1-2:1"`: comma-separated edges, optional `:colour`
    /// (default 0).
    pub fn parse_edges(colors: u8, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut vertices = 0;
        for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (pair, color) = match item.split_once(':') {
                Some((p, c)) => (
                    p,
                    c.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad colour in '{item}'")))?,
                ),
                None => (item, 0),
            };
            let (u, v) = pair
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("expected u-v in '{item}'")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex in '{item}'")))
            };
            let (u, v) = (parse(u)?, parse(v)?);
            vertices = vertices.max(u + 1).max(v + 1);
            edges.push((u, v, color));
        }
        Self::new(colors, vertices, &edges).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses `{"vertices": n, "edges": [[u, v, colour], ...]}`.
    pub fn from_json(colors: u8, text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: usize,
            edges: Vec<(usize, usize, u8)>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(colors, raw.vertices, &raw.edges).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let edges: Vec<[usize; 3]> = self
            .edges
            .iter()
            .map(|&(u, v, c)| [u as usize, v as usize, c as usize])
            .collect();
        serde_json::json!({ "vertices": self.vertices, "edges": edges }).to_string()
    }
}

impl fmt::Display for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|(u, v, c)| format!("{u}-{v}:{c}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Ordered-partition refinement with individualization; keeps the least edge
/// list over all leaves. Vertices with identical coloured neighbourhoods are
/// interchangeable, so only one of each such group is individualized.
struct Canonizer {
    n: usize,
    matrix: Vec<Vec<u8>>,
    adj: Vec<Vec<(usize, u8)>>,
    best: Option<Vec<(u8, u8, u8)>>,
}

impl Canonizer {
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let mut cell_of = vec![0usize; self.n];
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u8)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<(usize, u8)> =
                            self.adj[v].iter().map(|&(u, c)| (cell_of[u], c)).collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            // Cells only ever split, so a stable count means a stable partition.
            let changed = next.len() != cells.len();
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        (0..self.n).all(|x| x == a || x == b || self.matrix[a][x] == self.matrix[b][x])
    }

    fn search(&mut self, mut cells: Vec<Vec<usize>>) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let mut label = vec![0u8; self.n];
            for (i, cell) in cells.iter().enumerate() {
                label[cell[0]] = i as u8;
            }
            let mut code: Vec<(u8, u8, u8)> = Vec::new();
            for u in 0..self.n {
                for &(v, c) in &self.adj[u] {
                    if u < v {
                        let (a, b) = (label[u], label[v]);
                        code.push((a.min(b), a.max(b), c));
                    }
                }
            }
            code.sort_unstable();
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code);
            }
            return;
        };
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            let mut split = cells.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
            split[target] = vec![v];
            split.insert(target + 1, rest);
            self.search(split);
        }
    }
}

/// The canonical relabelling of `g`: equal for two graphs iff they are
/// isomorphic by a colour-preserving vertex bijection.
pub fn canonical_form(g: &ColoredGraph) -> ColoredGraph {
    let mut canon = Canonizer {
        n: g.vertices,
        matrix: g.color_matrix(),
        adj: g.neighbours(),
        best: None,
    };
    canon.search(vec![(0..g.vertices).collect()]);
    ColoredGraph {
        colors: g.colors,
        vertices: g.vertices,
        edges: canon.best.expect("search reaches a leaf"),
    }
}

/// Byte code of the canonical form.
pub fn canonical_code(g: &ColoredGraph) -> CanonicalGraphCode {
    let c = canonical_form(g);
    let mut bytes = vec![c.vertices as u8];
    for (u, v, col) in c.edges {
        bytes.extend_from_slice(&[u, v, col]);
    }
    CanonicalGraphCode(bytes)
}

fn same_palette(g1: &ColoredGraph, g2: &ColoredGraph) -> Result<()> {
    if g1.colors != g2.colors {
        return Err(Error::PaletteMismatch {
            left: g1.colors as usize,
            right: g2.colors as usize,
        });
    }
    Ok(())
}

/// All canonical graphs obtained by overlapping `g1` and `g2` on at least one
/// vertex with disjoint edge sets.
pub fn glue_graphs(g1: &ColoredGraph, g2: &ColoredGraph) -> Result<Vec<ColoredGraph>> {
    same_palette(g1, g2)?;
    g1.check()?;
    g2.check()?;
    if g1.vertices + g2.vertices > MAX_VERTICES + 1 {
        return Err(Error::InvalidArgument("glued graph too large".into()));
    }
    let mut out = BTreeSet::new();
    let mut overlap = Overlap {
        g1,
        g2,
        matrix2: g2.color_matrix(),
        adj1: g1.neighbours(),
        map: vec![None; g1.vertices],
        used: vec![false; g2.vertices],
        out: &mut out,
    };
    overlap.assign(0, 0);
    Ok(out.into_iter().collect())
}

struct Overlap<'a> {
    g1: &'a ColoredGraph,
    g2: &'a ColoredGraph,
    matrix2: Vec<Vec<u8>>,
    adj1: Vec<Vec<(usize, u8)>>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    out: &'a mut BTreeSet<ColoredGraph>,
}

impl Overlap<'_> {
    fn assign(&mut self, a: usize, identified: usize) {
        if a == self.g1.vertices {
            if identified > 0 {
                self.emit();
            }
            return;
        }
        self.map[a] = None;
        self.assign(a + 1, identified);
        for t in 0..self.g2.vertices {
            if self.used[t] {
                continue;
            }
            // Would any edge to an already identified vertex double up?
            let clash = self.adj1[a].iter().any(|&(b, _)| {
                b < a && matches!(self.map[b], Some(tb) if self.matrix2[t][tb] != NO_EDGE)
            });
            if clash {
                continue;
            }
            self.map[a] = Some(t);
            self.used[t] = true;
            self.assign(a + 1, identified + 1);
            self.used[t] = false;
            self.map[a] = None;
        }
    }

    fn emit(&mut self) {
        let mut label = Vec::with_capacity(self.g1.vertices);
        let mut next = self.g2.vertices;
        for m in &self.map {
            label.push(match m {
                Some(t) => *t,
                None => {
                    next += 1;
                    next - 1
                }
            });
        }
        let mut edges: Vec<(usize, usize, u8)> = self
            .g2
            .edges
            .iter()
            .map(|&(u, v, c)| (u as usize, v as usize, c))
            .collect();
        edges.extend(
            self.g1
                .edges
                .iter()
                .map(|&(u, v, c)| (label[u as usize], label[v as usize], c)),
        );
        let g = ColoredGraph::new(self.g1.colors, next, &edges).expect("overlap is valid");
        self.out.insert(canonical_form(&g));
    }
}

/// Whether the edges of `g` split into complementary subgraphs isomorphic to
/// `g1` and `g2` (the good-triple relation, checked directly).
pub fn is_good_triple(g1: &ColoredGraph, g2: &ColoredGraph, g: &ColoredGraph) -> bool {
    let m = g.edges.len();
    if g1.edges.len() + g2.edges.len() != m || m > 24 {
        return false;
    }
    let (c1, c2) = (canonical_form(g1), canonical_form(g2));
    (0u64..1 << m).any(|mask| {
        mask.count_ones() as usize == g1.edges.len() && {
            let a = g.edge_subgraph(mask);
            let b = g.edge_subgraph(!mask & ((1 << m) - 1));
            a.is_connected() && b.is_connected() && canonical_form(&a) == c1 && canonical_form(&b) == c2
        }
    })
}

/// Number of connected 2-edge graphs over `colors` colours: a 3-vertex path
/// with an unordered colour pair.
pub fn level2_count(colors: u64) -> Result<u64> {
    if colors == 0 {
        return Err(Error::InvalidArgument("colors must be positive".into()));
    }
    Ok(colors + colors * (colors - 1) / 2)
}

/// Colour-preserving monomorphism search: can `piece` be placed inside `target`?
fn subgraph_embeds(target: &ColoredGraph, piece: &ColoredGraph) -> bool {
    if piece.vertices > target.vertices || piece.edges.len() > target.edges.len() {
        return false;
    }
    let tm = target.color_matrix();
    let padj = piece.neighbours();
    // Visit piece vertices in BFS order so every vertex after the first has a
    // placed neighbour.
    let mut order = vec![0usize];
    let mut seen = vec![false; piece.vertices];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &(w, _) in &padj[order[i]] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    fn place(
        k: usize,
        order: &[usize],
        padj: &[Vec<(usize, u8)>],
        tm: &[Vec<u8>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for t in 0..tm.len() {
            if used[t] {
                continue;
            }
            let fits = padj[v]
                .iter()
                .all(|&(w, c)| map[w] == usize::MAX || tm[t][map[w]] == c);
            if fits {
                map[v] = t;
                used[t] = true;
                if place(k + 1, order, padj, tm, map, used) {
                    return true;
                }
                used[t] = false;
                map[v] = usize::MAX;
            }
        }
        false
    }
    let mut map = vec![usize::MAX; piece.vertices];
    let mut used = vec![false; target.vertices];
    place(0, &order, &padj, &tm, &mut map, &mut used)
}

/// Connected edge-coloured simple graphs over a palette of `colors` colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphSpace {
    pub colors: u8,
}

impl GraphSpace {
    pub fn new(colors: u8) -> Self {
        Self { colors }
    }

    pub fn parse_edges(&self, text: &str) -> Result<ColoredGraph> {
        Ok(canonical_form(&ColoredGraph::parse_edges(self.colors, text)?))
    }

    pub fn from_json(&self, text: &str) -> Result<ColoredGraph> {
        Ok(canonical_form(&ColoredGraph::from_json(self.colors, text)?))
    }
}

impl AssemblySpace for GraphSpace {
    type Object = ColoredGraph;

    fn id(&self) -> String {
        format!("graphs-{}", self.colors)
    }

    fn building_blocks(&self) -> Vec<ColoredGraph> {
        (0..self.colors)
            .map(|c| ColoredGraph {
                colors: self.colors,
                vertices: 2,
                edges: vec![(0, 1, c)],
            })
            .collect()
    }

    fn size(&self, x: &ColoredGraph) -> usize {
        x.edges.len()
    }

    fn validate(&self, x: &ColoredGraph) -> Result<()> {
        if x.colors != self.colors {
            return Err(Error::PaletteMismatch {
                left: self.colors as usize,
                right: x.colors as usize,
            });
        }
        x.check()
    }

    fn canonical(&self, x: &ColoredGraph) -> ColoredGraph {
        canonical_form(x)
    }

    fn code(&self, x: &ColoredGraph) -> String {
        x.to_string()
    }

    fn glue(&self, x: &ColoredGraph, y: &ColoredGraph) -> Result<Vec<ColoredGraph>> {
        self.validate(x)?;
        self.validate(y)?;
        let mut out = glue_graphs(x, y)?;
        out.sort_by_key(|g| g.to_string());
        Ok(out)
    }

    fn level_cardinality(&self, k: usize) -> Option<u128> {
        match k {
            1 => Some(self.colors as u128),
            2 => level2_count(self.colors as u64).ok().map(u128::from),
            _ if k <= 5 || (self.colors == 1 && k <= 8) => {
                self.enumerate(k).ok().map(|v| v.len() as u128)
            }
            _ => None,
        }
    }

    /// Growth enumeration: every connected graph with `k` edges arises from
    /// one with `k - 1` edges by adding a chord or a pendant edge.
    fn enumerate(&self, k: usize) -> Result<Vec<ColoredGraph>> {
        if k == 0 || k > 12 {
            return Err(Error::InvalidArgument(format!(
                "refusing to enumerate graphs with {k} edges"
            )));
        }
        let mut level: BTreeSet<ColoredGraph> = self.building_blocks().into_iter().collect();
        for _ in 1..k {
            let mut next = BTreeSet::new();
            for g in &level {
                let m = g.color_matrix();
                let base: Vec<(usize, usize, u8)> = g
                    .edges
                    .iter()
                    .map(|&(u, v, c)| (u as usize, v as usize, c))
                    .collect();
                for c in 0..self.colors {
                    for u in 0..g.vertices {
                        for v in u + 1..=g.vertices {
                            if v < g.vertices && m[u][v] != NO_EDGE {
                                continue;
                            }
                            let mut edges = base.clone();
                            edges.push((u, v, c));
                            let grown =
                                ColoredGraph::new(self.colors, g.vertices.max(v + 1), &edges)?;
                            next.insert(canonical_form(&grown));
                        }
                    }
                }
            }
            level = next;
        }
        let mut out: Vec<ColoredGraph> = level.into_iter().collect();
        out.sort_by_key(|g| g.to_string());
        Ok(out)
    }

    fn embeds(&self, target: &ColoredGraph, piece: &ColoredGraph) -> bool {
        subgraph_embeds(target, piece)
    }

    /// Edges touching a common vertex are adjacent atoms.
    fn adjacency(&self, x: &ColoredGraph) -> Vec<u64> {
        let mut at_vertex = vec![0u64; x.vertices];
        for (i, &(u, v, _)) in x.edges.iter().enumerate() {
            at_vertex[u as usize] |= 1 << i;
            at_vertex[v as usize] |= 1 << i;
        }
        x.edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v, _))| (at_vertex[u as usize] | at_vertex[v as usize]) & !(1 << i))
            .collect()
    }

    fn sub_object(&self, x: &ColoredGraph, mask: u64) -> ColoredGraph {
        canonical_form(&x.edge_subgraph(mask))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addition_chains::shortest_length;
    use crate::assembly_core::{assembly_index, bfs_assembly_index};
    use proptest::prelude::*;

    fn g(colors: u8, text: &str) -> ColoredGraph {
        ColoredGraph::parse_edges(colors, text).unwrap()
    }

    /// Least edge list over all vertex permutations.
    fn brute_canonical(x: &ColoredGraph) -> Vec<(u8, u8, u8)> {
        fn permutations(n: usize) -> Vec<Vec<u8>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, (n - 1) as u8);
                    out.push(q);
                }
            }
            out
        }
        permutations(x.vertices)
            .into_iter()
            .map(|p| {
                let mut e: Vec<(u8, u8, u8)> = x
                    .edges
                    .iter()
                    .map(|&(u, v, c)| {
                        let (a, b) = (p[u as usize], p[v as usize]);
                        (a.min(b), a.max(b), c)
                    })
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap()
    }

    fn relabel(x: &ColoredGraph, perm: &[usize]) -> ColoredGraph {
        let edges: Vec<_> = x
            .edges
            .iter()
            .map(|&(u, v, c)| (perm[u as usize], perm[v as usize], c))
            .collect();
        ColoredGraph::new(x.colors, x.vertices, &edges).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ColoredGraph::new(1, 3, &[(0, 1, 0), (1, 2, 0)]).is_ok());
        assert!(ColoredGraph::new(1, 2, &[(0, 0, 0)]).is_err());
        assert!(ColoredGraph::new(1, 2, &[(0, 1, 0), (1, 0, 0)]).is_err());
        assert!(ColoredGraph::new(1, 4, &[(0, 1, 0), (2, 3, 0)]).is_err());
        assert!(ColoredGraph::new(1, 3, &[(0, 1, 0)]).is_err());
        assert!(ColoredGraph::new(1, 2, &[(0, 1, 1)]).is_err());
    }

    #[test]
    fn parsing() {
        let x = g(2, "0-1,1-2:1");
        assert_eq!(x.edges, vec![(0, 1, 0), (1, 2, 1)]);
        let y = ColoredGraph::from_json(2, r#"{"vertices": 3, "edges": [[0,1,0],[1,2,1]]}"#).unwrap();
        assert_eq!(x, y);
        assert_eq!(ColoredGraph::from_json(2, &x.to_json()).unwrap(), x);
        assert!(ColoredGraph::parse_edges(1, "0-1,1").is_err());
        assert!(ColoredGraph::parse_edges(1, "0-x").is_err());
        assert!(ColoredGraph::from_json(1, "{").is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&g(1, "0-1,1-2")), canonical_form(&g(1, "2-1,1-0")));
        assert_eq!(canonical_form(&g(2, "0-1:0,1-2:1")), canonical_form(&g(2, "0-1:1,1-2:0")));
        assert_ne!(canonical_form(&g(1, "0-1,1-2,0-2")), canonical_form(&g(1, "0-1,1-2,2-3")));
        assert_ne!(canonical_code(&g(2, "0-1:0,1-2:0")), canonical_code(&g(2, "0-1:0,1-2:1")));
    }

    #[test]
    fn canonical_form_matches_permutation_oracle() {
        for colors in [1u8, 2] {
            let space = GraphSpace::new(colors);
            let max = if colors == 1 { 5 } else { 4 };
            let mut brute = BTreeSet::new();
            let mut total = 0;
            for k in 1..=max {
                for x in space.enumerate(k).unwrap() {
                    if x.vertices <= 6 {
                        total += 1;
                        assert!(brute.insert(brute_canonical(&x)), "duplicate class {x}");
                        let n = x.vertices;
                        let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 3) % n).collect();
                        let mut sorted = perm.clone();
                        sorted.sort();
                        if sorted == (0..n).collect::<Vec<_>>() {
                            assert_eq!(canonical_form(&relabel(&x, &perm)), x);
                        }
                    }
                }
            }
            assert_eq!(brute.len(), total);
        }
    }

    #[test]
    fn connected_graph_counts() {
        let space = GraphSpace::new(1);
        let counts: Vec<usize> = (1..=7).map(|k| space.enumerate(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 5, 12, 30, 79]);
    }

    #[test]
    fn level2_count_matches_enumeration() {
        for colors in 1..=4u8 {
            let n = GraphSpace::new(colors).enumerate(2).unwrap().len() as u64;
            assert_eq!(level2_count(colors as u64).unwrap(), n);
        }
        assert_eq!(level2_count(1).unwrap(), 1);
        assert_eq!(level2_count(2).unwrap(), 3);
        assert_eq!(level2_count(3).unwrap(), 6);
    }

    #[test]
    fn single_edge_gluing() {
        let red = g(2, "0-1:0");
        let blue = g(2, "0-1:1");
        assert_eq!(glue_graphs(&red, &red).unwrap(), vec![canonical_form(&g(2, "0-1:0,1-2:0"))]);
        assert_eq!(glue_graphs(&red, &blue).unwrap(), vec![canonical_form(&g(2, "0-1:0,1-2:1"))]);
        assert!(glue_graphs(&red, &g(1, "0-1")).is_err());
    }

    /// Claw (two black edges and a red one) glued with a triangle with one
    /// blue edge. Vertices: a=0, b=1, d=2 (centre), c=3, e=4, f=5.
    #[test]
    fn claw_and_triangle() {
        let claw = g(3, "0-2:0,2-1:0,2-3:1");
        let triangle = g(3, "0-1:2,1-2:0,2-0:0");
        let pictured = [
            "0-2:0,2-1:0,2-3:1,1-5:2,1-4:0,4-5:0",
            "0-2:0,2-1:0,2-3:1,1-5:0,1-4:0,4-5:2",
            "0-2:0,2-1:0,2-3:1,3-4:2,4-5:0,5-3:0",
            "0-2:0,2-1:0,2-3:1,4-5:2,5-3:0,3-4:0",
            "0-2:0,2-1:0,2-3:1,4-5:2,5-2:0,2-4:0",
            "0-2:0,2-1:0,2-3:1,2-5:2,2-4:0,4-5:0",
            "0-2:0,2-1:0,2-3:1,0-3:2,0-4:0,4-3:0",
            "0-2:0,2-1:0,2-3:1,4-3:2,4-0:0,0-3:0",
            "0-2:0,2-1:0,2-3:1,4-0:2,4-3:0,3-0:0",
        ];
        let result = glue_graphs(&claw, &triangle).unwrap();
        for p in pictured {
            assert!(result.contains(&canonical_form(&g(3, p))), "{p}");
        }
        let distinct: BTreeSet<_> = pictured.iter().map(|p| canonical_form(&g(3, p))).collect();
        assert_eq!(distinct.len(), 9);
        // Six single-vertex overlaps, five two-vertex overlaps, two copies of K4.
        assert_eq!(result.len(), 13);
        for x in &result {
            assert!(is_good_triple(&claw, &triangle, x));
        }
    }

    #[test]
    fn glue_matches_declarative_oracle() {
        let space = GraphSpace::new(1);
        for k1 in 1..=3 {
            for k2 in k1..=3 {
                let candidates = space.enumerate(k1 + k2).unwrap();
                for x in space.enumerate(k1).unwrap() {
                    for y in space.enumerate(k2).unwrap() {
                        let glued: BTreeSet<_> = glue_graphs(&x, &y).unwrap().into_iter().collect();
                        let declared: BTreeSet<_> = candidates
                            .iter()
                            .filter(|z| is_good_triple(&x, &y, z))
                            .cloned()
                            .collect();
                        assert_eq!(glued, declared, "{x} o {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn embedding() {
        let target = g(1, "0-1,1-2,2-0,2-3");
        assert!(subgraph_embeds(&target, &g(1, "0-1,1-2,2-3")));
        assert!(subgraph_embeds(&target, &g(1, "0-1,1-2,2-0")));
        assert!(!subgraph_embeds(&target, &g(1, "0-1,0-2,0-3,0-4")));
        assert!(!subgraph_embeds(&g(2, "0-1:0,1-2:0"), &g(2, "0-1:1")));
    }

    #[test]
    fn monochromatic_paths_follow_shortest_chains() {
        let space = GraphSpace::new(1);
        for n in 1..=12 {
            let path = canonical_form(&ColoredGraph::path(1, 0, n).unwrap());
            let a = assembly_index(&space, &path, 5_000_000).unwrap().index;
            assert_eq!(a as u32, shortest_length(n as u64).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn solver_matches_oracle_on_small_graphs() {
        let space = GraphSpace::new(2);
        for k in 1..=3 {
            for x in space.enumerate(k).unwrap() {
                let fast = assembly_index(&space, &x, 1_000_000).unwrap().index;
                assert_eq!(fast, bfs_assembly_index(&space, &x, 1_000_000).unwrap(), "{x}");
            }
        }
    }

    #[test]
    fn building_block_multiset_of_two_colour_path() {
        let space = GraphSpace::new(2);
        let x = canonical_form(&g(2, "0-1:0,1-2:1"));
        let counts = space.building_block_multiset(&x);
        assert_eq!(counts.len(), 2);
        assert!(counts.values().all(|&c| c == 1));
    }

    fn arbitrary_graph() -> impl Strategy<Value = ColoredGraph> {
        // A random tree plus chords, with random colours.
        (2usize..7, prop::collection::vec((any::<u16>(), 0u8..2), 0..5), any::<u64>()).prop_map(
            |(n, extra, seed)| {
                let mut edges: Vec<(usize, usize, u8)> = (1..n)
                    .map(|v| ((seed as usize >> v) % v, v, ((seed >> (v + 16)) & 1) as u8))
                    .collect();
                for (r, c) in extra {
                    let u = r as usize % n;
                    let v = (r as usize / n) % n;
                    if u != v && !edges.iter().any(|&(a, b, _)| (a, b) == (u.min(v), u.max(v)) || (b, a) == (u.min(v), u.max(v))) {
                        edges.push((u.min(v), u.max(v), c));
                    }
                }
                ColoredGraph::new(2, n, &edges).unwrap()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonical_form_is_a_relabelling_invariant(x in arbitrary_graph(), rot in 0usize..7) {
            let n = x.vertices;
            let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).rev().collect();
            let c = canonical_form(&x);
            prop_assert_eq!(&canonical_form(&relabel(&x, &perm)), &c);
            prop_assert_eq!(&canonical_form(&c), &c);
            prop_assert_eq!(brute_canonical(&x), brute_canonical(&c));
        }

        #[test]
        fn glue_is_additive_symmetric_and_simple(x in arbitrary_graph(), y in arbitrary_graph()) {
            prop_assume!(x.edges.len() + y.edges.len() <= 8);
            let xy = glue_graphs(&x, &y).unwrap();
            let yx = glue_graphs(&y, &x).unwrap();
            prop_assert_eq!(&xy, &yx);
            for z in &xy {
                prop_assert_eq!(z.edges.len(), x.edges.len() + y.edges.len());
                prop_assert!(z.check().is_ok());
            }
        }
    }
}
