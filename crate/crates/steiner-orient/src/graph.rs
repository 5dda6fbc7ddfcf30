//! Loopless multigraphs, digraphs, orientations, and the bookkeeping needed
//! to transform graphs while remembering where every edge came from.
//!
//! Vertices and edges are dense indices. Transformations that rebuild a graph
//! (edge deletion, vertex deletion, degree-2 suppression) return an
//! [`AncestorMap`] that maps each surviving or newly created edge back to the
//! ordered, oriented list of source edges it represents.

use thiserror::Error;

/// Dense vertex index.
pub type VertexId = usize;
/// Dense edge index of an undirected multigraph.
pub type EdgeId = usize;
/// Dense arc index of a digraph. Orienting a multigraph preserves indices,
/// so the arc with id `e` is the oriented image of the edge with id `e`.
pub type ArcId = usize;

/// Errors raised by graph construction and transformation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// An edge or arc joins a vertex to itself.
    #[error("edge {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: VertexId },
    /// An edge or arc endpoint is not a valid vertex.
    #[error("edge {index} references vertex {vertex}, but the graph has {vertex_count} vertices")]
    EndpointOutOfRange {
        index: usize,
        vertex: VertexId,
        vertex_count: usize,
    },
    /// A vertex argument is not a valid vertex.
    #[error("vertex {vertex} is out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
    /// Suppression requires an undirected degree of exactly 2.
    #[error("cannot suppress vertex {vertex} with degree {degree}")]
    SuppressDegree { vertex: VertexId, degree: usize },
    /// Directed suppression requires in-degree 1 and out-degree 1.
    #[error(
        "cannot suppress vertex {vertex} with in-degree {in_degree} and out-degree {out_degree}"
    )]
    SuppressDegreeDirected {
        vertex: VertexId,
        in_degree: usize,
        out_degree: usize,
    },
}

/// Direction assigned to one edge by an orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    /// The edge is traversed from its first listed endpoint to its second.
    AsListed,
    /// The edge is traversed from its second listed endpoint to its first.
    Reversed,
}

impl Dir {
    /// The opposite direction.
    pub fn flip(self) -> Dir {
        match self {
            Dir::AsListed => Dir::Reversed,
            Dir::Reversed => Dir::AsListed,
        }
    }
}

/// Direction state of one edge in a partial orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartialDir {
    AsListed,
    Reversed,
    Undecided,
}

impl PartialDir {
    /// The decided direction, if any.
    pub fn decided(self) -> Option<Dir> {
        match self {
            PartialDir::AsListed => Some(Dir::AsListed),
            PartialDir::Reversed => Some(Dir::Reversed),
            PartialDir::Undecided => None,
        }
    }
}

impl From<Dir> for PartialDir {
    fn from(d: Dir) -> PartialDir {
        match d {
            Dir::AsListed => PartialDir::AsListed,
            Dir::Reversed => PartialDir::Reversed,
        }
    }
}

/// A complete assignment of one direction per edge of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    dirs: Vec<Dir>,
}

impl Orientation {
    /// Wraps an explicit direction list.
    pub fn new(dirs: Vec<Dir>) -> Orientation {
        Orientation { dirs }
    }

    /// The orientation that keeps every edge as listed.
    pub fn all_as_listed(edge_count: usize) -> Orientation {
        Orientation {
            dirs: vec![Dir::AsListed; edge_count],
        }
    }

    /// Number of edges covered.
    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    /// True when no edges are covered.
    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// Direction of edge `e`.
    pub fn dir(&self, e: EdgeId) -> Dir {
        self.dirs[e]
    }

    /// Overwrites the direction of edge `e`.
    pub fn set(&mut self, e: EdgeId, d: Dir) {
        self.dirs[e] = d;
    }

    /// All directions, indexed by edge id.
    pub fn dirs(&self) -> &[Dir] {
        &self.dirs
    }
}

/// A per-edge assignment in which some edges may still be undecided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOrientation {
    dirs: Vec<PartialDir>,
}

impl PartialOrientation {
    /// All edges undecided.
    pub fn undecided(edge_count: usize) -> PartialOrientation {
        PartialOrientation {
            dirs: vec![PartialDir::Undecided; edge_count],
        }
    }

    /// Wraps an explicit state list.
    pub fn new(dirs: Vec<PartialDir>) -> PartialOrientation {
        PartialOrientation { dirs }
    }

    /// A fully decided partial orientation mirroring `o`.
    pub fn from_orientation(o: &Orientation) -> PartialOrientation {
        PartialOrientation {
            dirs: o.dirs().iter().map(|&d| d.into()).collect(),
        }
    }

    /// Number of edges covered.
    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    /// True when no edges are covered.
    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// State of edge `e`.
    pub fn get(&self, e: EdgeId) -> PartialDir {
        self.dirs[e]
    }

    /// Overwrites the state of edge `e`.
    pub fn set(&mut self, e: EdgeId, d: PartialDir) {
        self.dirs[e] = d;
    }

    /// All states, indexed by edge id.
    pub fn dirs(&self) -> &[PartialDir] {
        &self.dirs
    }

    /// Ids of the edges that are still undecided, ascending.
    pub fn undecided_edges(&self) -> Vec<EdgeId> {
        (0..self.dirs.len())
            .filter(|&e| self.dirs[e] == PartialDir::Undecided)
            .collect()
    }

    /// Number of undecided edges.
    pub fn undecided_count(&self) -> usize {
        self.dirs
            .iter()
            .filter(|&&d| d == PartialDir::Undecided)
            .count()
    }

    /// The completed orientation, if every edge is decided.
    pub fn complete(&self) -> Option<Orientation> {
        let mut dirs = Vec::with_capacity(self.dirs.len());
        for d in &self.dirs {
            dirs.push(d.decided()?);
        }
        Some(Orientation { dirs })
    }
}

/// Traversal sense of an ancestor edge.
///
/// `Forward` means the ancestor edge is traversed from its first listed
/// endpoint to its second when the derived edge is traversed from its own
/// first listed endpoint to its second; `Backward` means the opposite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Forward,
    Backward,
}

impl Sense {
    /// The opposite sense.
    pub fn flip(self) -> Sense {
        match self {
            Sense::Forward => Sense::Backward,
            Sense::Backward => Sense::Forward,
        }
    }

    /// Translates a direction on a derived edge to the direction it induces
    /// on an ancestor edge carried with this sense.
    pub fn apply(self, d: Dir) -> Dir {
        match self {
            Sense::Forward => d,
            Sense::Backward => d.flip(),
        }
    }
}

/// Maps the edges and vertices of a derived graph back to a source graph.
///
/// `edge_ancestors[e]` lists the source edges that derived edge `e` stands
/// for, in traversal order from `e`'s first listed endpoint to its second,
/// each with the sense in which it is traversed. A surviving source edge has
/// the single ancestor `(source_id, Forward)`; an edge created by suppressing
/// a degree-2 vertex concatenates the ancestor lists of the two edges it
/// replaces. `vertex_origin[v]` is the source vertex that derived vertex `v`
/// is a copy of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncestorMap {
    /// Ordered, oriented source edges per derived edge.
    pub edge_ancestors: Vec<Vec<(EdgeId, Sense)>>,
    /// Source vertex per derived vertex.
    pub vertex_origin: Vec<VertexId>,
}

impl AncestorMap {
    /// The identity map of a graph with the given sizes onto itself.
    pub fn identity(vertex_count: usize, edge_count: usize) -> AncestorMap {
        AncestorMap {
            edge_ancestors: (0..edge_count).map(|e| vec![(e, Sense::Forward)]).collect(),
            vertex_origin: (0..vertex_count).collect(),
        }
    }

    /// Composes this map with the map of an earlier transformation step.
    ///
    /// If `earlier` maps graph `B` back to graph `A` and `self` maps graph
    /// `C` back to `B`, the result maps `C` back to `A`. Traversing a `B`
    /// ancestor backwards reverses and flips its own ancestor list.
    pub fn compose(&self, earlier: &AncestorMap) -> AncestorMap {
        let edge_ancestors = self
            .edge_ancestors
            .iter()
            .map(|seq| {
                let mut out = Vec::new();
                for &(mid, sense) in seq {
                    match sense {
                        Sense::Forward => out.extend(earlier.edge_ancestors[mid].iter().copied()),
                        Sense::Backward => out.extend(
                            earlier.edge_ancestors[mid]
                                .iter()
                                .rev()
                                .map(|&(src, s)| (src, s.flip())),
                        ),
                    }
                }
                out
            })
            .collect();
        let vertex_origin = self
            .vertex_origin
            .iter()
            .map(|&v| earlier.vertex_origin[v])
            .collect();
        AncestorMap {
            edge_ancestors,
            vertex_origin,
        }
    }
}

/// A loopless undirected multigraph with dense vertex and edge indices.
///
/// Parallel edges are allowed and keep distinct ids. The listed endpoint
/// order of each edge is preserved; orientations refer to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    /// Incident edge ids per vertex, ascending.
    incidence: Vec<Vec<EdgeId>>,
}

/// Builds a multigraph, rejecting loops and out-of-range endpoints.
pub fn build_multigraph(
    vertex_count: usize,
    edges: &[(VertexId, VertexId)],
) -> Result<MultiGraph, GraphError> {
    for (index, &(u, v)) in edges.iter().enumerate() {
        for &w in &[u, v] {
            if w >= vertex_count {
                return Err(GraphError::EndpointOutOfRange {
                    index,
                    vertex: w,
                    vertex_count,
                });
            }
        }
        if u == v {
            return Err(GraphError::Loop { index, vertex: u });
        }
    }
    let mut incidence = vec![Vec::new(); vertex_count];
    for (e, &(u, v)) in edges.iter().enumerate() {
        incidence[u].push(e);
        incidence[v].push(e);
    }
    Ok(MultiGraph {
        vertex_count,
        edges: edges.to_vec(),
        incidence,
    })
}

impl MultiGraph {
    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of edges, counting parallels separately.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` in listed order.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// All edges, indexed by edge id.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Ids of the edges incident to `v`, ascending.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// Degree of `v`, counting parallels separately.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    /// The endpoint of edge `e` other than `v`. Panics if `v` is not an
    /// endpoint of `e`.
    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            assert_eq!(b, v, "vertex {v} is not an endpoint of edge {e}");
            a
        }
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.incidence[u]
            .iter()
            .filter(|&&e| self.other_endpoint(e, u) == v)
            .count()
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn distinct_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut ns: Vec<VertexId> = self.incidence[v]
            .iter()
            .map(|&e| self.other_endpoint(e, v))
            .collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    /// True when every vertex is reachable from vertex 0 (vacuously true for
    /// the empty graph).
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in &self.incidence[v] {
                let w = self.other_endpoint(e, v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Removes edge `e`. Later edges shift down by one id; vertices keep
    /// their ids. Returns the new graph and its map back to `self`.
    pub fn delete_edge(&self, e: EdgeId) -> (MultiGraph, AncestorMap) {
        assert!(e < self.edges.len(), "edge {e} out of range");
        let mut edges = Vec::with_capacity(self.edges.len() - 1);
        let mut edge_ancestors = Vec::with_capacity(self.edges.len() - 1);
        for (old, &pair) in self.edges.iter().enumerate() {
            if old != e {
                edges.push(pair);
                edge_ancestors.push(vec![(old, Sense::Forward)]);
            }
        }
        let graph = build_multigraph(self.vertex_count, &edges)
            .expect("deleting an edge keeps the graph valid");
        let map = AncestorMap {
            edge_ancestors,
            vertex_origin: (0..self.vertex_count).collect(),
        };
        (graph, map)
    }

    /// Removes vertex `v` and every edge incident to it. Surviving edges and
    /// vertices are compacted preserving relative order. Returns the new
    /// graph and its map back to `self`.
    pub fn delete_vertex(&self, v: VertexId) -> (MultiGraph, AncestorMap) {
        assert!(v < self.vertex_count, "vertex {v} out of range");
        let remap = |x: VertexId| if x > v { x - 1 } else { x };
        let mut edges = Vec::new();
        let mut edge_ancestors = Vec::new();
        for (old, &(a, b)) in self.edges.iter().enumerate() {
            if a != v && b != v {
                edges.push((remap(a), remap(b)));
                edge_ancestors.push(vec![(old, Sense::Forward)]);
            }
        }
        let graph = build_multigraph(self.vertex_count - 1, &edges)
            .expect("deleting a vertex keeps the graph valid");
        let map = AncestorMap {
            edge_ancestors,
            vertex_origin: (0..self.vertex_count).filter(|&x| x != v).collect(),
        };
        (graph, map)
    }
}

/// Orients every edge of `g` according to `o`. Arc ids equal edge ids.
pub fn orient(g: &MultiGraph, o: &Orientation) -> DiGraph {
    assert_eq!(
        o.len(),
        g.edge_count(),
        "orientation covers {} edges but the graph has {}",
        o.len(),
        g.edge_count()
    );
    let arcs = g
        .edges
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| match o.dir(e) {
            Dir::AsListed => (u, v),
            Dir::Reversed => (v, u),
        })
        .collect();
    DiGraph::new_unchecked(g.vertex_count, arcs)
}

/// Suppresses a vertex of undirected degree exactly 2.
///
/// Let `e1 < e2` be the two incident edges, `u` the far endpoint of `e1` and
/// `w` the far endpoint of `e2`. If `u != w`, both edges are removed and a
/// new edge `(u, w)` is appended with the highest edge id; its ancestors
/// traverse `e1` from `u` to `v` and then `e2` from `v` to `w`. If `u == w`
/// (a parallel pair), both edges are removed and nothing replaces them.
/// Vertex `v` is removed and vertex ids are compacted preserving order.
pub fn suppress_vertex(
    g: &MultiGraph,
    v: VertexId,
) -> Result<(MultiGraph, AncestorMap), GraphError> {
    if v >= g.vertex_count {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            vertex_count: g.vertex_count,
        });
    }
    if g.degree(v) != 2 {
        return Err(GraphError::SuppressDegree {
            vertex: v,
            degree: g.degree(v),
        });
    }
    let e1 = g.incidence[v][0];
    let e2 = g.incidence[v][1];
    let u = g.other_endpoint(e1, v);
    let w = g.other_endpoint(e2, v);
    let remap = |x: VertexId| if x > v { x - 1 } else { x };

    let mut edges = Vec::new();
    let mut edge_ancestors = Vec::new();
    for (old, &(a, b)) in g.edges.iter().enumerate() {
        if old != e1 && old != e2 {
            edges.push((remap(a), remap(b)));
            edge_ancestors.push(vec![(old, Sense::Forward)]);
        }
    }
    if u != w {
        // Traversal u -> v -> w; each sense records whether the listed
        // endpoint order agrees with the traversal.
        let s1 = if g.edges[e1].0 == u {
            Sense::Forward
        } else {
            Sense::Backward
        };
        let s2 = if g.edges[e2].0 == v {
            Sense::Forward
        } else {
            Sense::Backward
        };
        edges.push((remap(u), remap(w)));
        edge_ancestors.push(vec![(e1, s1), (e2, s2)]);
    }
    let graph =
        build_multigraph(g.vertex_count - 1, &edges).expect("suppression keeps the graph valid");
    let map = AncestorMap {
        edge_ancestors,
        vertex_origin: (0..g.vertex_count).filter(|&x| x != v).collect(),
    };
    Ok((graph, map))
}

/// A digraph with dense vertex and arc indices. Loops are rejected; parallel
/// and antiparallel arcs are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    vertex_count: usize,
    arcs: Vec<(VertexId, VertexId)>,
    /// Outgoing arc ids per vertex, ascending.
    out: Vec<Vec<ArcId>>,
    /// Incoming arc ids per vertex, ascending.
    inn: Vec<Vec<ArcId>>,
}

impl DiGraph {
    /// Builds a digraph, rejecting loops and out-of-range endpoints.
    pub fn new(
        vertex_count: usize,
        arcs: Vec<(VertexId, VertexId)>,
    ) -> Result<DiGraph, GraphError> {
        for (index, &(u, v)) in arcs.iter().enumerate() {
            for &w in &[u, v] {
                if w >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        index,
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::Loop { index, vertex: u });
            }
        }
        Ok(DiGraph::new_unchecked(vertex_count, arcs))
    }

    fn new_unchecked(vertex_count: usize, arcs: Vec<(VertexId, VertexId)>) -> DiGraph {
        let mut out = vec![Vec::new(); vertex_count];
        let mut inn = vec![Vec::new(); vertex_count];
        for (a, &(t, h)) in arcs.iter().enumerate() {
            out[t].push(a);
            inn[h].push(a);
        }
        DiGraph {
            vertex_count,
            arcs,
            out,
            inn,
        }
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of arcs.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Tail and head of arc `a`.
    pub fn arc(&self, a: ArcId) -> (VertexId, VertexId) {
        self.arcs[a]
    }

    /// Tail of arc `a`.
    pub fn tail(&self, a: ArcId) -> VertexId {
        self.arcs[a].0
    }

    /// Head of arc `a`.
    pub fn head(&self, a: ArcId) -> VertexId {
        self.arcs[a].1
    }

    /// All arcs, indexed by arc id.
    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    /// Ids of the arcs leaving `v`, ascending.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out[v]
    }

    /// Ids of the arcs entering `v`, ascending.
    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.inn[v]
    }

    /// Out-degree of `v`.
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    /// In-degree of `v`.
    pub fn in_degree(&self, v: VertexId) -> usize {
        self.inn[v].len()
    }

    /// Number of arcs from `u` to `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.out[u].iter().filter(|&&a| self.arcs[a].1 == v).count()
    }

    /// Removes arc `a`. Later arcs shift down by one id; vertices keep their
    /// ids. Returns the new digraph and its map back to `self`.
    pub fn delete_arc(&self, a: ArcId) -> (DiGraph, AncestorMap) {
        assert!(a < self.arcs.len(), "arc {a} out of range");
        let mut arcs = Vec::with_capacity(self.arcs.len() - 1);
        let mut edge_ancestors = Vec::with_capacity(self.arcs.len() - 1);
        for (old, &pair) in self.arcs.iter().enumerate() {
            if old != a {
                arcs.push(pair);
                edge_ancestors.push(vec![(old, Sense::Forward)]);
            }
        }
        let graph = DiGraph::new_unchecked(self.vertex_count, arcs);
        let map = AncestorMap {
            edge_ancestors,
            vertex_origin: (0..self.vertex_count).collect(),
        };
        (graph, map)
    }

    /// Removes vertex `v` and every arc incident to it. Surviving arcs and
    /// vertices are compacted preserving relative order. Returns the new
    /// digraph and its map back to `self`.
    pub fn delete_vertex(&self, v: VertexId) -> (DiGraph, AncestorMap) {
        assert!(v < self.vertex_count, "vertex {v} out of range");
        let remap = |x: VertexId| if x > v { x - 1 } else { x };
        let mut arcs = Vec::new();
        let mut edge_ancestors = Vec::new();
        for (old, &(t, h)) in self.arcs.iter().enumerate() {
            if t != v && h != v {
                arcs.push((remap(t), remap(h)));
                edge_ancestors.push(vec![(old, Sense::Forward)]);
            }
        }
        let graph = DiGraph::new_unchecked(self.vertex_count - 1, arcs);
        let map = AncestorMap {
            edge_ancestors,
            vertex_origin: (0..self.vertex_count).filter(|&x| x != v).collect(),
        };
        (graph, map)
    }

    /// Forgets arc directions, producing the underlying multigraph with the
    /// same indices: edge `a` is listed `(tail, head)`.
    pub fn underlying(&self) -> MultiGraph {
        build_multigraph(self.vertex_count, &self.arcs)
            .expect("a valid digraph has a valid underlying multigraph")
    }
}

/// Suppresses a vertex with in-degree 1 and out-degree 1.
///
/// Let `u -> v` and `v -> w` be the incident arcs. If `u != w`, both arcs are
/// removed and a new arc `u -> w` is appended with the highest arc id; its
/// ancestors traverse both arcs forward. If `u == w` (a directed 2-cycle),
/// both arcs are removed and nothing replaces them. Vertex `v` is removed and
/// vertex ids are compacted preserving order.
pub fn suppress_vertex_directed(
    d: &DiGraph,
    v: VertexId,
) -> Result<(DiGraph, AncestorMap), GraphError> {
    if v >= d.vertex_count {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            vertex_count: d.vertex_count,
        });
    }
    if d.in_degree(v) != 1 || d.out_degree(v) != 1 {
        return Err(GraphError::SuppressDegreeDirected {
            vertex: v,
            in_degree: d.in_degree(v),
            out_degree: d.out_degree(v),
        });
    }
    let a_in = d.inn[v][0];
    let a_out = d.out[v][0];
    let u = d.arcs[a_in].0;
    let w = d.arcs[a_out].1;
    let remap = |x: VertexId| if x > v { x - 1 } else { x };

    let mut arcs = Vec::new();
    let mut edge_ancestors = Vec::new();
    for (old, &(t, h)) in d.arcs.iter().enumerate() {
        if old != a_in && old != a_out {
            arcs.push((remap(t), remap(h)));
            edge_ancestors.push(vec![(old, Sense::Forward)]);
        }
    }
    if u != w {
        arcs.push((remap(u), remap(w)));
        edge_ancestors.push(vec![(a_in, Sense::Forward), (a_out, Sense::Forward)]);
    }
    let graph = DiGraph::new_unchecked(d.vertex_count - 1, arcs);
    let map = AncestorMap {
        edge_ancestors,
        vertex_origin: (0..d.vertex_count).filter(|&x| x != v).collect(),
    };
    Ok((graph, map))
}

/// Multiplicity matrices for isomorphism and canonical codes.
struct MultMatrix {
    n: usize,
    /// `fwd[u][v]` counts edges listed or directed `u -> v`; undirected
    /// graphs store the symmetric count in both triangles.
    fwd: Vec<Vec<usize>>,
    directed: bool,
}

impl MultMatrix {
    fn undirected(g: &MultiGraph) -> MultMatrix {
        let n = g.vertex_count();
        let mut fwd = vec![vec![0usize; n]; n];
        for &(u, v) in g.edges() {
            fwd[u][v] += 1;
            fwd[v][u] += 1;
        }
        MultMatrix {
            n,
            fwd,
            directed: false,
        }
    }

    fn directed(d: &DiGraph) -> MultMatrix {
        let n = d.vertex_count();
        let mut fwd = vec![vec![0usize; n]; n];
        for &(u, v) in d.arcs() {
            fwd[u][v] += 1;
        }
        MultMatrix {
            n,
            fwd,
            directed: true,
        }
    }

    /// Degree key used for pruning: undirected degree, or the pair
    /// (out-degree, in-degree).
    fn degree_key(&self, v: VertexId) -> (usize, usize) {
        let out: usize = self.fwd[v].iter().sum();
        if self.directed {
            let inn = (0..self.n).map(|u| self.fwd[u][v]).sum();
            (out, inn)
        } else {
            (out, 0)
        }
    }

    /// True when mapping `a -> ma` and `b -> mb` preserves multiplicities in
    /// every direction against `other`.
    fn pair_matches(
        &self,
        a: VertexId,
        b: VertexId,
        other: &MultMatrix,
        ma: VertexId,
        mb: VertexId,
    ) -> bool {
        if self.fwd[a][b] != other.fwd[ma][mb] {
            return false;
        }
        !self.directed || self.fwd[b][a] == other.fwd[mb][ma]
    }

    /// Bytes appended to a canonical code when the vertex at `perm[pos]` is
    /// placed: its multiplicities towards every earlier position.
    fn row_bytes(&self, perm: &[VertexId], pos: usize, out: &mut Vec<u8>) {
        let v = perm[pos];
        for &q in &perm[..pos] {
            let f = self.fwd[v][q];
            assert!(f <= u8::MAX as usize, "multiplicity too large for code");
            out.push(f as u8);
            if self.directed {
                let b = self.fwd[q][v];
                assert!(b <= u8::MAX as usize, "multiplicity too large for code");
                out.push(b as u8);
            }
        }
    }
}

fn validate_fixed(w: &[VertexId], n: usize) {
    let mut seen = vec![false; n];
    for &v in w {
        assert!(v < n, "fixed vertex {v} out of range");
        assert!(!seen[v], "fixed vertex {v} listed twice");
        seen[v] = true;
    }
}

/// Backtracking isomorphism search shared by the directed and undirected
/// entry points. Vertices in `w` must map to themselves.
fn fixed_isomorphic_impl(
    m1: &MultMatrix,
    m2: &MultMatrix,
    w: &[VertexId],
) -> Option<Vec<VertexId>> {
    let n = m1.n;
    if m2.n != n {
        return None;
    }
    let mut deg1: Vec<(usize, usize)> = (0..n).map(|v| m1.degree_key(v)).collect();
    let mut deg2: Vec<(usize, usize)> = (0..n).map(|v| m2.degree_key(v)).collect();
    let key1 = deg1.clone();
    let key2 = deg2.clone();
    deg1.sort_unstable();
    deg2.sort_unstable();
    if deg1 != deg2 {
        return None;
    }

    let mut mapping: Vec<Option<VertexId>> = vec![None; n];
    let mut used = vec![false; n];
    let mut placed: Vec<VertexId> = Vec::new();
    for &v in w {
        if key1[v] != key2[v] {
            return None;
        }
        for &p in &placed {
            if !m1.pair_matches(v, p, m2, v, mapping[p].unwrap()) {
                return None;
            }
        }
        mapping[v] = Some(v);
        used[v] = true;
        placed.push(v);
    }
    let free: Vec<VertexId> = (0..n).filter(|v| mapping[*v].is_none()).collect();

    fn search(
        idx: usize,
        free: &[VertexId],
        m1: &MultMatrix,
        m2: &MultMatrix,
        key1: &[(usize, usize)],
        key2: &[(usize, usize)],
        mapping: &mut Vec<Option<VertexId>>,
        used: &mut Vec<bool>,
        placed: &mut Vec<VertexId>,
    ) -> bool {
        if idx == free.len() {
            return true;
        }
        let v = free[idx];
        for c in 0..m2.n {
            if used[c] || key1[v] != key2[c] {
                continue;
            }
            if !placed
                .iter()
                .all(|&p| m1.pair_matches(v, p, m2, c, mapping[p].unwrap()))
            {
                continue;
            }
            mapping[v] = Some(c);
            used[c] = true;
            placed.push(v);
            if search(idx + 1, free, m1, m2, key1, key2, mapping, used, placed) {
                return true;
            }
            placed.pop();
            used[c] = false;
            mapping[v] = None;
        }
        false
    }

    if search(
        0,
        &free,
        m1,
        m2,
        &key1,
        &key2,
        &mut mapping,
        &mut used,
        &mut placed,
    ) {
        Some(mapping.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// Finds an isomorphism from `g1` to `g2` that maps every vertex in `w` to
/// itself, or `None` if there is none. The order of `w` is irrelevant.
pub fn fixed_isomorphic(g1: &MultiGraph, g2: &MultiGraph, w: &[VertexId]) -> Option<Vec<VertexId>> {
    validate_fixed(w, g1.vertex_count());
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    fixed_isomorphic_impl(&MultMatrix::undirected(g1), &MultMatrix::undirected(g2), w)
}

/// Directed variant of [`fixed_isomorphic`]: arc multiplicities must match in
/// both directions.
pub fn fixed_isomorphic_directed(
    d1: &DiGraph,
    d2: &DiGraph,
    w: &[VertexId],
) -> Option<Vec<VertexId>> {
    validate_fixed(w, d1.vertex_count());
    if d1.vertex_count() != d2.vertex_count() || d1.arc_count() != d2.arc_count() {
        return None;
    }
    fixed_isomorphic_impl(&MultMatrix::directed(d1), &MultMatrix::directed(d2), w)
}

/// Lexicographically smallest code over all vertex orders that start with the
/// fixed sequence `w`.
fn canonical_code_impl(mat: &MultMatrix, w: &[VertexId], edge_count: usize) -> Vec<u8> {
    let n = mat.n;
    assert!(n <= u8::MAX as usize, "too many vertices for a code");
    assert!(edge_count <= u8::MAX as usize, "too many edges for a code");
    let mut prefix = vec![n as u8, edge_count as u8, w.len() as u8];
    let mut perm: Vec<VertexId> = w.to_vec();
    perm.resize(n, usize::MAX);
    for pos in 0..w.len() {
        mat.row_bytes(&perm, pos, &mut prefix);
    }
    let mut used = vec![false; n];
    for &v in w {
        used[v] = true;
    }

    struct State<'a> {
        mat: &'a MultMatrix,
        n: usize,
        best: Option<Vec<u8>>,
    }

    fn search(
        st: &mut State,
        pos: usize,
        perm: &mut Vec<VertexId>,
        used: &mut Vec<bool>,
        cur: &mut Vec<u8>,
    ) {
        if pos == st.n {
            if st.best.as_ref().map_or(true, |b| cur[..] < b[..]) {
                st.best = Some(cur.clone());
            }
            return;
        }
        for v in 0..st.n {
            if used[v] {
                continue;
            }
            let mark = cur.len();
            perm[pos] = v;
            st.mat.row_bytes(perm, pos, cur);
            // Prune any branch already worse than the best complete code.
            let viable = st.best.as_ref().map_or(true, |b| cur[..] <= b[..cur.len()]);
            if viable {
                used[v] = true;
                search(st, pos + 1, perm, used, cur);
                used[v] = false;
            }
            cur.truncate(mark);
        }
    }

    let mut st = State { mat, n, best: None };
    search(&mut st, w.len(), &mut perm, &mut used, &mut prefix);
    st.best.expect("every graph has a code")
}

/// Canonical byte code of `g` relative to the fixed vertex sequence `w`.
///
/// The vertices of `w` occupy the first positions of the canonical order, in
/// the given order; the remaining positions minimize the code. Two graphs
/// have equal codes exactly when some isomorphism between them maps each
/// vertex of `w` to itself (with both graphs using the same sequence `w`).
pub fn canonical_code(g: &MultiGraph, w: &[VertexId]) -> Vec<u8> {
    validate_fixed(w, g.vertex_count());
    canonical_code_impl(&MultMatrix::undirected(g), w, g.edge_count())
}

/// Directed variant of [`canonical_code`]: each vertex pair contributes the
/// arc multiplicities in both directions.
pub fn canonical_code_directed(d: &DiGraph, w: &[VertexId]) -> Vec<u8> {
    validate_fixed(w, d.vertex_count());
    canonical_code_impl(&MultMatrix::directed(d), w, d.arc_count())
}
