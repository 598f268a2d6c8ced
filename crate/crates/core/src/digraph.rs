//! Digraphs, walks, and the walk predicates (congruence, faithful edges,
//! avoidance, protection) shared by every other module.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertices are dense ids `0..n`.
pub type Vertex = usize;

/// Orientation of an edge relative to the arc set.
///
/// `uv` is a forward edge when `u -> v` is an arc and a backward edge when
/// `v -> u` is an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "F")]
    Forward,
    #[serde(rename = "B")]
    Backward,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Backward];

    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "F",
            Direction::Backward => "B",
        })
    }
}

/// A finite digraph on vertices `0..n`. Loops are allowed, parallel arcs are not.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DigraphRepr", into = "DigraphRepr")]
pub struct Digraph {
    n: usize,
    adjacency: Vec<bool>,
    arcs: Vec<(Vertex, Vertex)>,
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct DigraphRepr {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
}

impl TryFrom<DigraphRepr> for Digraph {
    type Error = Error;

    fn try_from(repr: DigraphRepr) -> Result<Self> {
        Digraph::new(repr.n, repr.arcs)
    }
}

impl From<Digraph> for DigraphRepr {
    fn from(d: Digraph) -> Self {
        DigraphRepr { n: d.n, arcs: d.arcs }
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({}; ", self.n)?;
        f.debug_list().entries(self.arcs.iter()).finish()?;
        f.write_str(")")
    }
}

impl Digraph {
    /// Builds a digraph, rejecting out-of-range endpoints and repeated arcs.
    pub fn new<I>(n: usize, arcs: I) -> Result<Digraph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![false; n * n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if std::mem::replace(&mut adjacency[u * n + v], true) {
                return Err(Error::DuplicateArc(u, v));
            }
        }
        Ok(Self::from_adjacency(n, adjacency))
    }

    /// Like [`Digraph::new`] but silently merges repeated arcs.
    pub fn from_arc_set<I>(n: usize, arcs: I) -> Result<Digraph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![false; n * n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            adjacency[u * n + v] = true;
        }
        Ok(Self::from_adjacency(n, adjacency))
    }

    /// The digraph whose arc set is encoded by bit `u * n + v` of `mask`.
    /// Used for exhaustive enumeration of small digraphs.
    pub fn from_mask(n: usize, mask: u64) -> Digraph {
        assert!(n * n <= 64, "mask encoding needs n*n <= 64");
        let adjacency = (0..n * n).map(|i| mask >> i & 1 == 1).collect();
        Self::from_adjacency(n, adjacency)
    }

    fn from_adjacency(n: usize, adjacency: Vec<bool>) -> Digraph {
        let mut arcs = Vec::new();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if adjacency[u * n + v] {
                    arcs.push((u, v));
                    out[u].push(v);
                    inc[v].push(u);
                }
            }
        }
        Digraph {
            n,
            adjacency,
            arcs,
            out,
            inc,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    #[inline]
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u * self.n + v]
    }

    /// Unchecked edge probe: is `uv` an edge in direction `dir`?
    #[inline]
    pub fn edge(&self, u: Vertex, v: Vertex, dir: Direction) -> bool {
        match dir {
            Direction::Forward => self.has_arc(u, v),
            Direction::Backward => self.has_arc(v, u),
        }
    }

    /// Checked version of [`Digraph::edge`].
    pub fn has_edge(&self, u: Vertex, v: Vertex, dir: Direction) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.edge(u, v, dir))
    }

    /// Vertices `v` such that `uv` is an edge in direction `dir`.
    #[inline]
    pub fn neighbors(&self, u: Vertex, dir: Direction) -> &[Vertex] {
        match dir {
            Direction::Forward => &self.out[u],
            Direction::Backward => &self.inc[u],
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Is there a directed path (possibly of length zero) from `s` to `t`?
    pub fn reaches(&self, s: Vertex, t: Vertex) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            if u == t {
                return true;
            }
            for &v in &self.out[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }
}

/// A walk: a start vertex followed by oriented steps.
///
/// The direction of each step is stored explicitly, so congruence is a
/// comparison of direction sequences and does not depend on a host digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Walk {
    pub start: Vertex,
    pub steps: Vec<(Direction, Vertex)>,
}

impl Walk {
    pub fn new(start: Vertex, steps: Vec<(Direction, Vertex)>) -> Walk {
        Walk { start, steps }
    }

    pub fn trivial(start: Vertex) -> Walk {
        Walk::new(start, Vec::new())
    }

    /// An all-forward walk through the given vertex sequence.
    pub fn forward(vertices: &[Vertex]) -> Walk {
        Walk::with_pattern(vertices, &vec![Direction::Forward; vertices.len().saturating_sub(1)])
    }

    /// Walk through `vertices` where step `i` has direction `pattern[i]`.
    pub fn with_pattern(vertices: &[Vertex], pattern: &[Direction]) -> Walk {
        assert_eq!(vertices.len(), pattern.len() + 1);
        Walk {
            start: vertices[0],
            steps: pattern.iter().copied().zip(vertices[1..].iter().copied()).collect(),
        }
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The `i`-th vertex, `0 <= i <= len()`.
    #[inline]
    pub fn vertex(&self, i: usize) -> Vertex {
        if i == 0 {
            self.start
        } else {
            self.steps[i - 1].1
        }
    }

    /// Direction of the step from vertex `i` to vertex `i + 1`.
    #[inline]
    pub fn direction(&self, i: usize) -> Direction {
        self.steps[i].0
    }

    pub fn end(&self) -> Vertex {
        self.steps.last().map_or(self.start, |s| s.1)
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        (0..=self.len()).map(|i| self.vertex(i)).collect()
    }

    pub fn pattern(&self) -> Vec<Direction> {
        self.steps.iter().map(|s| s.0).collect()
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &Walk) -> Walk {
        assert_eq!(self.end(), other.start, "walks do not meet");
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Walk::new(self.start, steps)
    }

    fn check_range(&self, d: &Digraph) -> Result<()> {
        d.check_vertex(self.start)?;
        self.steps.iter().try_for_each(|&(_, v)| d.check_vertex(v))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for (dir, v) in &self.steps {
            match dir {
                Direction::Forward => write!(f, " -> {v}")?,
                Direction::Backward => write!(f, " <- {v}")?,
            }
        }
        Ok(())
    }
}

/// Every step of `w` is an edge of `d` in the recorded direction.
pub fn validate_walk(d: &Digraph, w: &Walk) -> bool {
    if w.check_range(d).is_err() {
        return false;
    }
    (0..w.len()).all(|i| d.edge(w.vertex(i), w.vertex(i + 1), w.direction(i)))
}

pub fn congruent(w1: &Walk, w2: &Walk) -> bool {
    w1.len() == w2.len() && w1.steps.iter().zip(&w2.steps).all(|(a, b)| a.0 == b.0)
}

pub fn reverse_walk(w: &Walk) -> Walk {
    let n = w.len();
    let steps = (0..n).rev().map(|i| (w.direction(i).reversed(), w.vertex(i))).collect();
    Walk::new(w.end(), steps)
}

/// Is `x_i y_{i+1}` an edge of `d` in the direction of step `i`?
#[inline]
pub fn is_faithful(d: &Digraph, from: &Walk, to: &Walk, i: usize) -> bool {
    d.edge(from.vertex(i), to.vertex(i + 1), from.direction(i))
}

fn check_congruent(d: &Digraph, walks: &[&Walk]) -> Result<()> {
    for w in walks {
        w.check_range(d)?;
    }
    if walks.windows(2).all(|p| congruent(p[0], p[1])) {
        Ok(())
    } else {
        Err(Error::NotCongruent)
    }
}

/// `X` avoids `Y`: there is no faithful edge from `X` to `Y`.
pub fn avoids(d: &Digraph, x: &Walk, y: &Walk) -> Result<bool> {
    check_congruent(d, &[x, y])?;
    Ok((0..x.len()).all(|i| !is_faithful(d, x, y, i)))
}

/// `Z` protects `Y` from `X`: every faithful edge `x_i z_{i+1}` and every
/// faithful edge `z_j y_{j+1}` satisfy `j <= i`.
pub fn protects(d: &Digraph, z: &Walk, y: &Walk, x: &Walk) -> Result<bool> {
    check_congruent(d, &[x, y, z])?;
    let first_xz = (0..x.len()).find(|&i| is_faithful(d, x, z, i));
    let last_zy = (0..z.len()).rev().find(|&j| is_faithful(d, z, y, j));
    Ok(match (first_xz, last_zy) {
        (Some(i), Some(j)) => j <= i,
        _ => true,
    })
}
