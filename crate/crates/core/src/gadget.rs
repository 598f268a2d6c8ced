//! The reduction from directed st-connectivity to `LHOM(H)` for a template
//! with a circular N.
//!
//! Every arc `uv` of the st-graph is replaced by a fresh copy of a path `P`
//! congruent to the witness walk `X`, with `u` as its first vertex and `v`
//! as its last. The `i`-th vertex of a copy gets the list
//! `{x_i, y_i, z_i}`. Finally `L(s) = {x}` and `L(t) = {y}`. The resulting
//! instance has a list homomorphism exactly when `t` is unreachable from
//! `s`.

use serde::{Deserialize, Serialize};

use crate::detect::CircularNWitness;
use crate::digraph::{Digraph, Direction, Vertex};
use crate::error::{Error, Result};
use crate::solver::Instance;

/// Where a vertex of the gadget instance comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// A vertex of the st-graph; path copies start and end at these.
    Original { vertex: Vertex },
    /// The interior vertex at `position` of the copy replacing `arc`.
    Path { arc: (Vertex, Vertex), position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetOutput {
    #[serde(flatten)]
    pub instance: Instance,
    /// One entry per vertex of the gadget instance.
    pub provenance: Vec<Provenance>,
}

/// Builds the gadget instance. Vertices `0..st.n()` are the st-graph
/// vertices; the interior vertices of the path copies follow in arc order.
pub fn build_gadget(h: &Digraph, w: &CircularNWitness, st: &Digraph, s: Vertex, t: Vertex) -> Result<GadgetOutput> {
    w.validate(h).map_err(Error::InvalidWitness)?;
    st.check_vertex(s)?;
    st.check_vertex(t)?;
    if s == t {
        return Err(Error::EqualVertices(s));
    }

    let len = w.x.len();
    let list_at = |i: usize| {
        let mut l = vec![w.x.vertex(i), w.y.vertex(i), w.z.vertex(i)];
        l.sort_unstable();
        l.dedup();
        l
    };

    let mut provenance: Vec<Provenance> = (0..st.n()).map(|vertex| Provenance::Original { vertex }).collect();
    let mut lists: Vec<Option<Vec<Vertex>>> = vec![None; st.n()];
    let mut arcs = Vec::new();
    let intersect = |slot: &mut Option<Vec<Vertex>>, with: &[Vertex]| {
        *slot = Some(match slot.take() {
            None => with.to_vec(),
            Some(l) => l.into_iter().filter(|c| with.contains(c)).collect(),
        });
    };

    for &(u, v) in st.arcs() {
        intersect(&mut lists[u], &list_at(0));
        intersect(&mut lists[v], &list_at(len));
        let mut prev = u;
        for i in 1..=len {
            let cur = if i == len {
                v
            } else {
                provenance.push(Provenance::Path {
                    arc: (u, v),
                    position: i,
                });
                lists.push(Some(list_at(i)));
                provenance.len() - 1
            };
            arcs.push(match w.x.direction(i - 1) {
                Direction::Forward => (prev, cur),
                Direction::Backward => (cur, prev),
            });
            prev = cur;
        }
    }
    intersect(&mut lists[s], &[w.x.start]);
    intersect(&mut lists[t], &[w.y.start]);

    let n = provenance.len();
    let g = Digraph::from_arc_set(n, arcs)?;
    let lists = lists
        .into_iter()
        .map(|l| l.unwrap_or_else(|| (0..h.n()).collect()))
        .collect();
    Ok(GadgetOutput {
        instance: Instance::new(g, lists)?,
        provenance,
    })
}
