//! Coloured free polyominoes glued edge to edge, their skeleton graphs and
//! the hooked blocks used by the polyomino bound.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assembly_core::AssemblySpace;
use crate::error::{Error, Result};

const DIRECTIONS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Edge-connected coloured cells, translated to `min x = min y = 0`.
///
/// Cells are `(x, y, colour)`, sorted. Values built through
/// [`PolyominoSpace::canonical`] are also reduced modulo rotation and
/// reflection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColoredPolyomino {
    pub colors: u8,
    pub cells: Vec<(i32, i32, u8)>,
}

fn normalize(mut cells: Vec<(i32, i32, u8)>) -> Vec<(i32, i32, u8)> {
    let min_x = cells.iter().map(|c| c.0).min().unwrap_or(0);
    let min_y = cells.iter().map(|c| c.1).min().unwrap_or(0);
    for c in &mut cells {
        c.0 -= min_x;
        c.1 -= min_y;
    }
    cells.sort_unstable();
    cells
}

/// The eight symmetries of the square.
fn transform(t: usize, x: i32, y: i32) -> (i32, i32) {
    match t {
        0 => (x, y),
        1 => (-x, y),
        2 => (x, -y),
        3 => (-x, -y),
        4 => (y, x),
        5 => (-y, x),
        6 => (y, -x),
        _ => (-y, -x),
    }
}

fn cells_connected(cells: &[(i32, i32, u8)]) -> bool {
    if cells.is_empty() {
        return false;
    }
    let set: HashSet<(i32, i32)> = cells.iter().map(|c| (c.0, c.1)).collect();
    let mut seen = HashSet::from([(cells[0].0, cells[0].1)]);
    let mut stack = vec![(cells[0].0, cells[0].1)];
    while let Some((x, y)) = stack.pop() {
        for (dx, dy) in DIRECTIONS {
            let n = (x + dx, y + dy);
            if set.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == set.len()
}

impl ColoredPolyomino {
    /// Validates cells and translates them to the origin (no rotation).
    pub fn new(colors: u8, cells: Vec<(i32, i32, u8)>) -> Result<Self> {
        let p = Self {
            colors,
            cells: normalize(cells),
        };
        p.check()?;
        Ok(p)
    }

    /// A `1 x n` bar of one colour.
    pub fn bar(colors: u8, color: u8, n: usize) -> Result<Self> {
        Self::new(colors, (0..n as i32).map(|x| (x, 0, color)).collect())
    }

    pub fn check(&self) -> Result<()> {
        if self.cells.is_empty() {
            return Err(Error::InvalidObject("polyomino has no cells".into()));
        }
        let mut seen = HashSet::new();
        for &(x, y, c) in &self.cells {
            if c >= self.colors {
                return Err(Error::InvalidObject(format!(
                    "colour {c} outside palette of {}",
                    self.colors
                )));
            }
            if !seen.insert((x, y)) {
                return Err(Error::InvalidObject(format!("cell ({x},{y}) repeated")));
            }
        }
        if !cells_connected(&self.cells) {
            return Err(Error::InvalidObject("cells are not edge-connected".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The image under symmetry `t` (0..8), translated to the origin.
    pub fn transformed(&self, t: usize) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|&(x, y, c)| {
                let (a, b) = transform(t, x, y);
                (a, b, c)
            })
            .collect();
        Self {
            colors: self.colors,
            cells: normalize(cells),
        }
    }

    /// Least of the eight images.
    pub fn canonical(&self) -> Self {
        (0..8).map(|t| self.transformed(t)).min().expect("eight images")
    }

    /// Distinct images under the eight symmetries.
    fn orientations(&self) -> Vec<Self> {
        let set: BTreeSet<Self> = (0..8).map(|t| self.transformed(t)).collect();
        set.into_iter().collect()
    }

    /// Parses `"0,0;1,0;1,1"`: semicolon-separated cells, optional third
    /// component colour (default 0).
    pub fn parse_cells(colors: u8, text: &str) -> Result<Self> {
        let mut cells = Vec::new();
        for item in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let parts: Vec<&str> = item.split(',').map(str::trim).collect();
            if parts.len() != 2 && parts.len() != 3 {
                return Err(Error::Parse(format!("expected x,y[,colour] in '{item}'")));
            }
            let num = |t: &str| {
                t.parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad number in '{item}'")))
            };
            let color = match parts.get(2) {
                Some(c) => c
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad colour in '{item}'")))?,
                None => 0,
            };
            cells.push((num(parts[0])?, num(parts[1])?, color));
        }
        Self::new(colors, cells).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses `{"cells": [[x, y, colour], ...]}`.
    pub fn from_json(colors: u8, text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            cells: Vec<(i32, i32, u8)>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(colors, raw.cells).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "cells": self.cells }).to_string()
    }

    fn cell_index(&self) -> HashMap<(i32, i32), usize> {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, &(x, y, _))| ((x, y), i))
            .collect()
    }
}

impl fmt::Display for ColoredPolyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .cells
            .iter()
            .map(|(x, y, c)| format!("{x},{y},{c}"))
            .collect();
        f.write_str(&parts.join(";"))
    }
}

fn same_palette(p1: &ColoredPolyomino, p2: &ColoredPolyomino) -> Result<()> {
    if p1.colors != p2.colors {
        return Err(Error::PaletteMismatch {
            left: p1.colors as usize,
            right: p2.colors as usize,
        });
    }
    Ok(())
}

/// All canonical polyominoes formed by placing some orientation of `p2`
/// next to `p1` without overlap, touching along at least one edge.
pub fn glue_polyominoes(p1: &ColoredPolyomino, p2: &ColoredPolyomino) -> Result<Vec<ColoredPolyomino>> {
    same_palette(p1, p2)?;
    p1.check()?;
    p2.check()?;
    let occupied: HashSet<(i32, i32)> = p1.cells.iter().map(|c| (c.0, c.1)).collect();
    let mut out = BTreeSet::new();
    for q in p2.orientations() {
        let mut offsets = BTreeSet::new();
        for &(ax, ay, _) in &p1.cells {
            for &(bx, by, _) in &q.cells {
                for (dx, dy) in DIRECTIONS {
                    offsets.insert((ax + dx - bx, ay + dy - by));
                }
            }
        }
        for (ox, oy) in offsets {
            if q.cells.iter().any(|&(x, y, _)| occupied.contains(&(x + ox, y + oy))) {
                continue;
            }
            let mut cells = p1.cells.clone();
            cells.extend(q.cells.iter().map(|&(x, y, c)| (x + ox, y + oy, c)));
            let joined = ColoredPolyomino {
                colors: p1.colors,
                cells: normalize(cells),
            };
            out.insert(joined.canonical());
        }
    }
    Ok(out.into_iter().collect())
}

/// All free polyominoes of `n` cells coloured from `colors` colours.
pub fn enumerate_free(n: usize, colors: u8) -> Result<Vec<ColoredPolyomino>> {
    if n == 0 || colors == 0 {
        return Err(Error::InvalidArgument("n and colors must be positive".into()));
    }
    if n > 12 {
        return Err(Error::InvalidArgument(format!(
            "refusing to enumerate polyominoes of {n} cells"
        )));
    }
    let mut level: BTreeSet<ColoredPolyomino> = (0..colors)
        .map(|c| ColoredPolyomino {
            colors,
            cells: vec![(0, 0, c)],
        })
        .collect();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for p in &level {
            let occupied: HashSet<(i32, i32)> = p.cells.iter().map(|c| (c.0, c.1)).collect();
            let mut frontier = BTreeSet::new();
            for &(x, y, _) in &p.cells {
                for (dx, dy) in DIRECTIONS {
                    if !occupied.contains(&(x + dx, y + dy)) {
                        frontier.insert((x + dx, y + dy));
                    }
                }
            }
            for &(x, y) in &frontier {
                for c in 0..colors {
                    let mut cells = p.cells.clone();
                    cells.push((x, y, c));
                    let grown = ColoredPolyomino {
                        colors,
                        cells: normalize(cells),
                    };
                    next.insert(grown.canonical());
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// Vertex-coloured adjacency graph of a polyomino's cells.
///
/// Vertices keep their lattice coordinates: the adjacency graph alone does not
/// determine the shape (the straight and bent trominoes both give a path).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    pub colors: u8,
    /// `(x, y, colour)` per vertex.
    pub vertices: Vec<(i32, i32, u8)>,
    /// One edge per pair of cells sharing a side, `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
}

pub fn to_skeleton(p: &ColoredPolyomino) -> Skeleton {
    let index = p.cell_index();
    let mut edges = Vec::new();
    for (i, &(x, y, _)) in p.cells.iter().enumerate() {
        for (dx, dy) in [(1, 0), (0, 1)] {
            if let Some(&j) = index.get(&(x + dx, y + dy)) {
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    edges.sort_unstable();
    Skeleton {
        colors: p.colors,
        vertices: p.cells.clone(),
        edges,
    }
}

/// Rebuilds the polyomino of a skeleton, rejecting graphs whose edges are not
/// exactly the side adjacencies of their vertex positions.
pub fn from_skeleton(sk: &Skeleton) -> Result<ColoredPolyomino> {
    let p = ColoredPolyomino::new(sk.colors, sk.vertices.clone())?;
    let mut index = HashMap::new();
    for (i, &(x, y, _)) in sk.vertices.iter().enumerate() {
        index.insert((x, y), i);
    }
    let mut claimed: Vec<(usize, usize)> = Vec::with_capacity(sk.edges.len());
    for &(i, j) in &sk.edges {
        if i >= sk.vertices.len() || j >= sk.vertices.len() || i == j {
            return Err(Error::InvalidObject(format!("edge {i}-{j} is not between vertices")));
        }
        claimed.push((i.min(j), i.max(j)));
    }
    claimed.sort_unstable();
    let mut actual = Vec::new();
    for (i, &(x, y, _)) in sk.vertices.iter().enumerate() {
        for (dx, dy) in [(1, 0), (0, 1)] {
            if let Some(&j) = index.get(&(x + dx, y + dy)) {
                actual.push((i.min(j), i.max(j)));
            }
        }
    }
    actual.sort_unstable();
    if claimed != actual {
        return Err(Error::InvalidObject(
            "edges do not match the side adjacencies of the cells".into(),
        ));
    }
    Ok(p.canonical())
}

/// Position of the uncoloured attachment vertex on a two-edge path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum HookShape {
    HollowMiddle,
    HollowEnd,
}

/// A two-edge path with two coloured vertices and one uncoloured one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HookedBlock {
    pub shape: HookShape,
    /// Vertex labels along the path; `None` marks the uncoloured vertex.
    pub path: [Option<u8>; 3],
}

/// All hooked blocks of a shape up to reversal of the path.
pub fn enumerate_hooked_blocks(colors: u8, shape: HookShape) -> Vec<HookedBlock> {
    let hollow = match shape {
        HookShape::HollowMiddle => 1,
        HookShape::HollowEnd => 0,
    };
    let mut out = BTreeSet::new();
    for a in 0..colors {
        for b in 0..colors {
            let mut path = [None; 3];
            let others: Vec<usize> = (0..3).filter(|&i| i != hollow).collect();
            path[others[0]] = Some(a);
            path[others[1]] = Some(b);
            let mut rev = path;
            rev.reverse();
            out.insert(HookedBlock {
                shape,
                path: path.min(rev),
            });
        }
    }
    out.into_iter().collect()
}

/// Colourings of the two hooked-block shapes: `c + C(c,2)` with the hollow
/// vertex in the middle, `c + c(c-1)` with it at an end.
pub fn hooked_block_counts(colors: u64) -> Result<(u64, u64)> {
    if colors == 0 {
        return Err(Error::InvalidArgument("colors must be positive".into()));
    }
    Ok((
        colors + colors * (colors - 1) / 2,
        colors + colors * (colors - 1),
    ))
}

/// Coloured free polyominoes over a palette of `colors` colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyominoSpace {
    pub colors: u8,
}

impl PolyominoSpace {
    pub fn new(colors: u8) -> Self {
        Self { colors }
    }

    pub fn parse_cells(&self, text: &str) -> Result<ColoredPolyomino> {
        Ok(ColoredPolyomino::parse_cells(self.colors, text)?.canonical())
    }

    pub fn from_json(&self, text: &str) -> Result<ColoredPolyomino> {
        Ok(ColoredPolyomino::from_json(self.colors, text)?.canonical())
    }
}

impl AssemblySpace for PolyominoSpace {
    type Object = ColoredPolyomino;

    fn id(&self) -> String {
        format!("poly-{}", self.colors)
    }

    fn building_blocks(&self) -> Vec<ColoredPolyomino> {
        (0..self.colors)
            .map(|c| ColoredPolyomino {
                colors: self.colors,
                cells: vec![(0, 0, c)],
            })
            .collect()
    }

    fn size(&self, x: &ColoredPolyomino) -> usize {
        x.len()
    }

    fn validate(&self, x: &ColoredPolyomino) -> Result<()> {
        if x.colors != self.colors {
            return Err(Error::PaletteMismatch {
                left: self.colors as usize,
                right: x.colors as usize,
            });
        }
        x.check()
    }

    fn canonical(&self, x: &ColoredPolyomino) -> ColoredPolyomino {
        x.canonical()
    }

    fn code(&self, x: &ColoredPolyomino) -> String {
        x.to_string()
    }

    fn glue(&self, x: &ColoredPolyomino, y: &ColoredPolyomino) -> Result<Vec<ColoredPolyomino>> {
        self.validate(x)?;
        self.validate(y)?;
        let mut out = glue_polyominoes(x, y)?;
        out.sort_by_key(|p| p.to_string());
        Ok(out)
    }

    fn level_cardinality(&self, k: usize) -> Option<u128> {
        if k <= 6 || (self.colors == 1 && k <= 10) {
            enumerate_free(k, self.colors).ok().map(|v| v.len() as u128)
        } else {
            None
        }
    }

    fn enumerate(&self, k: usize) -> Result<Vec<ColoredPolyomino>> {
        let mut out = enumerate_free(k, self.colors)?;
        out.sort_by_key(|p| p.to_string());
        Ok(out)
    }

    /// Some orientation of `piece` fits inside `target` with matching colours.
    fn embeds(&self, target: &ColoredPolyomino, piece: &ColoredPolyomino) -> bool {
        if piece.len() > target.len() {
            return false;
        }
        let cells: HashMap<(i32, i32), u8> =
            target.cells.iter().map(|&(x, y, c)| ((x, y), c)).collect();
        piece.orientations().iter().any(|q| {
            let (ax, ay, _) = q.cells[0];
            target.cells.iter().any(|&(tx, ty, _)| {
                let (ox, oy) = (tx - ax, ty - ay);
                q.cells
                    .iter()
                    .all(|&(x, y, c)| cells.get(&(x + ox, y + oy)) == Some(&c))
            })
        })
    }

    fn adjacency(&self, x: &ColoredPolyomino) -> Vec<u64> {
        let index = x.cell_index();
        x.cells
            .iter()
            .map(|&(cx, cy, _)| {
                DIRECTIONS
                    .iter()
                    .filter_map(|(dx, dy)| index.get(&(cx + dx, cy + dy)))
                    .fold(0u64, |m, &j| m | 1 << j)
            })
            .collect()
    }

    fn sub_object(&self, x: &ColoredPolyomino, mask: u64) -> ColoredPolyomino {
        let cells = x
            .cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        ColoredPolyomino {
            colors: x.colors,
            cells: normalize(cells),
        }
        .canonical()
    }
}
