//! Fixed topological minor testing (undirected and directed), enumeration of
//! minimal 3-regular instances, and a catalog-backed decision procedure.
//!
//! A pattern graph embeds into a host as a fixed topological minor when an
//! injective vertex map (fixing a prescribed vertex set `W` pointwise) sends
//! every pattern edge to a host path between the images, the paths are
//! pairwise internally disjoint, and no path passes through an image or a
//! `W` vertex internally. Minor tests run by exhaustive backtracking, which
//! is fast at the pattern sizes produced by the enumerator.

use crate::connectivity::{lambda_at_least, SteinerInstance};
use crate::graph::{
    build_multigraph, canonical_code, canonical_code_directed, DiGraph, EdgeId, MultiGraph,
    VertexId,
};
use crate::solver::{solve, SolveResult};
use rayon::prelude::*;
use std::collections::{BTreeSet, VecDeque};
use thiserror::Error;

/// Errors raised by minor tests and the enumeration pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinorError {
    /// A backtracking or generation budget ran out before a definite answer.
    #[error("search budget exhausted after {explored} nodes")]
    BudgetExhausted { explored: u64 },
    /// A fixed vertex must exist in both the host and the pattern.
    #[error("fixed vertex {vertex} is out of range (host has {host_vertices} vertices, pattern {pattern_vertices})")]
    FixedVertexOutOfRange {
        vertex: VertexId,
        host_vertices: usize,
        pattern_vertices: usize,
    },
    /// The catalog decision requires the degree profile of a 3-regular
    /// instance: members of degree `k`, internal vertices of degree 3.
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    DegreeProfile {
        vertex: VertexId,
        degree: usize,
        expected: usize,
    },
}

/// A witness that a pattern embeds in a host as a fixed topological minor.
///
/// `vertex_map[p]` is the host image of pattern vertex `p`; `paths[e]` lists
/// the host edges (arcs, in the directed case) of the path realizing pattern
/// edge `e`, walked from the image of its first endpoint to the image of its
/// second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub vertex_map: Vec<VertexId>,
    pub paths: Vec<Vec<EdgeId>>,
}

impl Embedding {
    /// Structural re-validation against an undirected host: injectivity,
    /// `W` fixing, path endpoints and connectivity, and internal
    /// disjointness from images, `W`, and other paths.
    pub fn validate(&self, host: &MultiGraph, pattern: &MultiGraph, w: &[VertexId]) -> bool {
        self.validate_impl(
            host.vertex_count(),
            pattern.vertex_count(),
            pattern.edges(),
            w,
            host.edge_count(),
            |f, cur| {
                let (a, b) = host.endpoints(f);
                if a == cur {
                    Some(b)
                } else if b == cur {
                    Some(a)
                } else {
                    None
                }
            },
        )
    }

    /// Structural re-validation against a directed host: as undirected, with
    /// every path arc traversed from tail to head.
    pub fn validate_directed(&self, host: &DiGraph, pattern: &DiGraph, w: &[VertexId]) -> bool {
        self.validate_impl(
            host.vertex_count(),
            pattern.vertex_count(),
            pattern.arcs(),
            w,
            host.arc_count(),
            |f, cur| {
                let (a, b) = host.arc(f);
                if a == cur {
                    Some(b)
                } else {
                    None
                }
            },
        )
    }

    fn validate_impl(
        &self,
        host_n: usize,
        pattern_n: usize,
        pattern_links: &[(VertexId, VertexId)],
        w: &[VertexId],
        host_m: usize,
        step: impl Fn(usize, VertexId) -> Option<VertexId>,
    ) -> bool {
        if self.vertex_map.len() != pattern_n || self.paths.len() != pattern_links.len() {
            return false;
        }
        let mut image = vec![false; host_n];
        for &hv in &self.vertex_map {
            if hv >= host_n || image[hv] {
                return false;
            }
            image[hv] = true;
        }
        if w.iter()
            .any(|&x| x >= self.vertex_map.len() || x >= host_n || self.vertex_map[x] != x)
        {
            return false;
        }
        let blocked: BTreeSet<VertexId> = w.iter().copied().collect();
        let mut edge_used = vec![false; host_m];
        let mut internal_used = vec![false; host_n];
        for (e, path) in self.paths.iter().enumerate() {
            if path.is_empty() {
                return false;
            }
            let (pu, pv) = pattern_links[e];
            let mut cur = self.vertex_map[pu];
            let goal = self.vertex_map[pv];
            for (i, &f) in path.iter().enumerate() {
                if f >= host_m || edge_used[f] {
                    return false;
                }
                edge_used[f] = true;
                let Some(nxt) = step(f, cur) else {
                    return false;
                };
                let last = i + 1 == path.len();
                if last {
                    if nxt != goal {
                        return false;
                    }
                } else {
                    if image[nxt] || blocked.contains(&nxt) || internal_used[nxt] {
                        return false;
                    }
                    internal_used[nxt] = true;
                }
                cur = nxt;
            }
        }
        true
    }
}

fn check_fixed(w: &[VertexId], host_n: usize, pattern_n: usize) -> Result<(), MinorError> {
    for &x in w {
        if x >= host_n || x >= pattern_n {
            return Err(MinorError::FixedVertexOutOfRange {
                vertex: x,
                host_vertices: host_n,
                pattern_vertices: pattern_n,
            });
        }
    }
    Ok(())
}

/// Host access used by the minor search: either a multigraph (edges usable
/// in both directions) or a digraph (arcs traversed tail to head).
enum EdgeView<'a> {
    Undirected(&'a MultiGraph),
    Directed(&'a DiGraph),
}

impl<'a> EdgeView<'a> {
    fn vertex_count(&self) -> usize {
        match self {
            EdgeView::Undirected(g) => g.vertex_count(),
            EdgeView::Directed(d) => d.vertex_count(),
        }
    }

    fn edge_count(&self) -> usize {
        match self {
            EdgeView::Undirected(g) => g.edge_count(),
            EdgeView::Directed(d) => d.arc_count(),
        }
    }

    /// Edges usable from `v` in traversal order, paired with the vertex they
    /// lead to.
    fn steps(&self, v: VertexId) -> Vec<(usize, VertexId)> {
        match self {
            EdgeView::Undirected(g) => g
                .incident_edges(v)
                .iter()
                .map(|&f| (f, g.other_endpoint(f, v)))
                .collect(),
            EdgeView::Directed(d) => d.out_arcs(v).iter().map(|&a| (a, d.arc(a).1)).collect(),
        }
    }

    /// Degree filter for image candidates: a host vertex must offer at least
    /// as many incidences (per direction, when directed) as the pattern
    /// vertex consumes.
    fn degree_ok(&self, hv: VertexId, need: &(usize, usize)) -> bool {
        match self {
            EdgeView::Undirected(g) => g.degree(hv) >= need.0,
            EdgeView::Directed(d) => d.out_degree(hv) >= need.0 && d.in_degree(hv) >= need.1,
        }
    }
}

/// Backtracking state shared by the undirected and directed testers.
struct MinorSearch<'a> {
    host: EdgeView<'a>,
    pattern_n: usize,
    /// Pattern edges (or arcs); paths run image-of-first to image-of-second.
    pattern_links: &'a [(VertexId, VertexId)],
    /// Per pattern vertex: (degree, 0) undirected, (out, in) directed.
    need: Vec<(usize, usize)>,
    fixed: Vec<bool>,
    image: Vec<Option<VertexId>>,
    taken: Vec<bool>,
    edge_used: Vec<bool>,
    internal_used: Vec<bool>,
    paths: Vec<Vec<EdgeId>>,
    budget: u64,
    nodes: u64,
}

impl<'a> MinorSearch<'a> {
    fn tick(&mut self) -> Result<(), MinorError> {
        if self.nodes >= self.budget {
            return Err(MinorError::BudgetExhausted {
                explored: self.nodes,
            });
        }
        self.nodes += 1;
        Ok(())
    }

    fn assign(&mut self, pv: VertexId) -> Result<bool, MinorError> {
        if pv == self.pattern_n {
            return self.pack(0);
        }
        self.tick()?;
        if self.fixed[pv] {
            // Fixed vertices map to themselves; `taken` was preset.
            return self.assign(pv + 1);
        }
        for hv in 0..self.host.vertex_count() {
            if self.taken[hv] || !self.host.degree_ok(hv, &self.need[pv]) {
                continue;
            }
            self.image[pv] = Some(hv);
            self.taken[hv] = true;
            if self.assign(pv + 1)? {
                return Ok(true);
            }
            self.image[pv] = None;
            self.taken[hv] = false;
        }
        Ok(false)
    }

    fn pack(&mut self, e: EdgeId) -> Result<bool, MinorError> {
        if e == self.pattern_links.len() {
            return Ok(true);
        }
        let (pu, pv) = self.pattern_links[e];
        let start = self.image[pu].expect("all images assigned");
        let goal = self.image[pv].expect("all images assigned");
        self.extend(e, start, goal)
    }

    fn extend(&mut self, e: EdgeId, cur: VertexId, goal: VertexId) -> Result<bool, MinorError> {
        self.tick()?;
        for (f, nxt) in self.host.steps(cur) {
            if self.edge_used[f] {
                continue;
            }
            if nxt == goal {
                self.edge_used[f] = true;
                self.paths[e].push(f);
                if self.pack(e + 1)? {
                    return Ok(true);
                }
                self.paths[e].pop();
                self.edge_used[f] = false;
            } else if !self.taken[nxt] && !self.internal_used[nxt] {
                self.edge_used[f] = true;
                self.internal_used[nxt] = true;
                self.paths[e].push(f);
                if self.extend(e, nxt, goal)? {
                    return Ok(true);
                }
                self.paths[e].pop();
                self.internal_used[nxt] = false;
                self.edge_used[f] = false;
            }
        }
        Ok(false)
    }

    fn run(mut self) -> Result<Option<Embedding>, MinorError> {
        if self.assign(0)? {
            Ok(Some(Embedding {
                vertex_map: self.image.into_iter().map(|x| x.unwrap()).collect(),
                paths: self.paths,
            }))
        } else {
            Ok(None)
        }
    }
}

fn search_minor(
    host: EdgeView<'_>,
    pattern_n: usize,
    pattern_links: &[(VertexId, VertexId)],
    w: &[VertexId],
    budget: u64,
) -> Result<Option<Embedding>, MinorError> {
    check_fixed(w, host.vertex_count(), pattern_n)?;
    let directed = matches!(host, EdgeView::Directed(_));
    let mut need = vec![(0usize, 0usize); pattern_n];
    for &(u, v) in pattern_links {
        if directed {
            need[u].0 += 1;
            need[v].1 += 1;
        } else {
            need[u].0 += 1;
            need[v].0 += 1;
        }
    }
    let mut fixed = vec![false; pattern_n];
    let mut image = vec![None; pattern_n];
    let mut taken = vec![false; host.vertex_count()];
    for &x in w {
        fixed[x] = true;
        image[x] = Some(x);
        taken[x] = true;
    }
    let paths = vec![Vec::new(); pattern_links.len()];
    let edge_used = vec![false; host.edge_count()];
    let internal_used = vec![false; host.vertex_count()];
    MinorSearch {
        host,
        pattern_n,
        pattern_links,
        need,
        fixed,
        image,
        taken,
        edge_used,
        internal_used,
        paths,
        budget,
        nodes: 0,
    }
    .run()
}

/// Tests whether `pattern` is a `w`-fixed topological minor of `host` by
/// backtracking: choose injective images for the pattern vertices (fixed
/// vertices map to themselves), then route pairwise internally disjoint host
/// paths for the pattern edges. Returns a validated embedding, `None` after
/// exhaustive search, or a budget error.
pub fn fixed_topo_minor(
    host: &MultiGraph,
    pattern: &MultiGraph,
    w: &[VertexId],
    budget: u64,
) -> Result<Option<Embedding>, MinorError> {
    let found = search_minor(
        EdgeView::Undirected(host),
        pattern.vertex_count(),
        pattern.edges(),
        w,
        budget,
    )?;
    if let Some(emb) = &found {
        assert!(
            emb.validate(host, pattern, w),
            "embedding failed structural validation"
        );
    }
    Ok(found)
}

/// Directed analogue of [`fixed_topo_minor`]: every pattern arc maps to a
/// directed host path from the image of its tail to the image of its head.
pub fn fixed_topo_minor_directed(
    host: &DiGraph,
    pattern: &DiGraph,
    w: &[VertexId],
    budget: u64,
) -> Result<Option<Embedding>, MinorError> {
    let found = search_minor(
        EdgeView::Directed(host),
        pattern.vertex_count(),
        pattern.arcs(),
        w,
        budget,
    )?;
    if let Some(emb) = &found {
        assert!(
            emb.validate_directed(host, pattern, w),
            "embedding failed structural validation"
        );
    }
    Ok(found)
}

/// Oracle form of the minor test: true iff some sequence of edge deletions
/// and deletions/suppressions of non-`w` vertices turns `g1` into a graph
/// `w`-fixed-isomorphic to `g2`. Breadth-first search over graph states,
/// deduplicated by canonical code; intended for hosts with at most 12 edges.
pub fn suppression_reachable(
    g1: &MultiGraph,
    g2: &MultiGraph,
    w: &[VertexId],
    budget: u64,
) -> Result<bool, MinorError> {
    check_fixed(w, g1.vertex_count(), g2.vertex_count())?;
    assert!(g1.edge_count() <= 12, "oracle intended for tiny graphs");
    let target = canonical_code(g2, w);
    let start_code = canonical_code(g1, w);
    if start_code == target {
        return Ok(true);
    }
    let mut seen = BTreeSet::from([start_code]);
    let mut queue = VecDeque::from([(g1.clone(), w.to_vec())]);
    let mut expanded = 0u64;
    while let Some((g, wids)) = queue.pop_front() {
        if expanded >= budget {
            return Err(MinorError::BudgetExhausted { explored: expanded });
        }
        expanded += 1;
        let mut push = |h: MultiGraph, hw: Vec<VertexId>| -> bool {
            if h.vertex_count() < g2.vertex_count() || h.edge_count() < g2.edge_count() {
                return false;
            }
            let code = canonical_code(&h, &hw);
            if code == target {
                return true;
            }
            if seen.insert(code) {
                queue.push_back((h, hw));
            }
            false
        };
        for e in 0..g.edge_count() {
            let (h, _) = g.delete_edge(e);
            if push(h, wids.clone()) {
                return Ok(true);
            }
        }
        for v in 0..g.vertex_count() {
            if wids.contains(&v) {
                continue;
            }
            let (h, map) = g.delete_vertex(v);
            let hw = relocate(&wids, &map.vertex_origin);
            if push(h, hw) {
                return Ok(true);
            }
            if g.degree(v) == 2 {
                if let Ok((h, map)) = crate::graph::suppress_vertex(&g, v) {
                    let hw = relocate(&wids, &map.vertex_origin);
                    if push(h, hw) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Directed counterpart of [`suppression_reachable`]: arc deletions plus
/// deletions/suppressions (in-degree 1, out-degree 1) of non-`w` vertices.
pub fn suppression_reachable_directed(
    d1: &DiGraph,
    d2: &DiGraph,
    w: &[VertexId],
    budget: u64,
) -> Result<bool, MinorError> {
    check_fixed(w, d1.vertex_count(), d2.vertex_count())?;
    assert!(d1.arc_count() <= 12, "oracle intended for tiny graphs");
    let target = canonical_code_directed(d2, w);
    let start_code = canonical_code_directed(d1, w);
    if start_code == target {
        return Ok(true);
    }
    let mut seen = BTreeSet::from([start_code]);
    let mut queue = VecDeque::from([(d1.clone(), w.to_vec())]);
    let mut expanded = 0u64;
    while let Some((d, wids)) = queue.pop_front() {
        if expanded >= budget {
            return Err(MinorError::BudgetExhausted { explored: expanded });
        }
        expanded += 1;
        let mut push = |h: DiGraph, hw: Vec<VertexId>| -> bool {
            if h.vertex_count() < d2.vertex_count() || h.arc_count() < d2.arc_count() {
                return false;
            }
            let code = canonical_code_directed(&h, &hw);
            if code == target {
                return true;
            }
            if seen.insert(code) {
                queue.push_back((h, hw));
            }
            false
        };
        for a in 0..d.arc_count() {
            let (h, _) = d.delete_arc(a);
            if push(h, wids.clone()) {
                return Ok(true);
            }
        }
        for v in 0..d.vertex_count() {
            if wids.contains(&v) {
                continue;
            }
            let (h, map) = d.delete_vertex(v);
            let hw = relocate(&wids, &map.vertex_origin);
            if push(h, hw) {
                return Ok(true);
            }
            if d.in_degree(v) == 1 && d.out_degree(v) == 1 {
                if let Ok((h, map)) = crate::graph::suppress_vertex_directed(&d, v) {
                    let hw = relocate(&wids, &map.vertex_origin);
                    if push(h, hw) {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// New ids of the tracked fixed vertices after a vertex-removing step.
fn relocate(wids: &[VertexId], vertex_origin: &[VertexId]) -> Vec<VertexId> {
    wids.iter()
        .map(|&old| {
            vertex_origin
                .iter()
                .position(|&o| o == old)
                .expect("fixed vertices are never deleted")
        })
        .collect()
}

/// True iff the instance is feasible and deleting any single edge makes it
/// infeasible. Budget errors from any sub-solve propagate.
pub fn is_minimal_feasible(inst: &SteinerInstance, budget: u64) -> Result<bool, MinorError> {
    match solve(inst, budget) {
        SolveResult::No => return Ok(false),
        SolveResult::Unknown(nodes) => return Err(MinorError::BudgetExhausted { explored: nodes }),
        SolveResult::Yes(_) => {}
    }
    for e in 0..inst.graph().edge_count() {
        let (g, _) = inst.graph().delete_edge(e);
        let sub = SteinerInstance::new(g, inst.root(), inst.terminals().to_vec(), inst.k())
            .expect("edge deletion keeps the instance well-formed");
        match solve(&sub, budget) {
            SolveResult::Yes(_) => return Ok(false),
            SolveResult::Unknown(nodes) => {
                return Err(MinorError::BudgetExhausted { explored: nodes })
            }
            SolveResult::No => {}
        }
    }
    Ok(true)
}

/// One enumerated minimal 3-regular instance with its canonical code under
/// the fixed sequence root, then terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub instance: SteinerInstance,
    pub code: Vec<u8>,
}

/// Result of an enumeration run. `complete` is false when a generation or
/// solve budget cut the sweep short, in which case `entries` is still a
/// correct but possibly partial list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub complete: bool,
}

/// One enumerated minimal digraph: root 0 with in-degree 0 and out-degree
/// `k`, terminals `1..=t` with in-degree `k` and out-degree 0, other
/// vertices with total degree 3, `k` arc-disjoint root-to-terminal paths per
/// terminal, and no removable arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphCatalogEntry {
    pub digraph: DiGraph,
    pub code: Vec<u8>,
}

/// Directed analogue of [`Catalog`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphCatalog {
    pub entries: Vec<DigraphCatalogEntry>,
    pub complete: bool,
}

/// Generates all degree-constrained multigraphs by assigning a multiplicity
/// to every vertex pair in lexicographic order. `deg[v]` is the exact target
/// degree; `max_mult` caps each pair. Calls `sink` on every completion;
/// returns false when the node budget ran out.
fn degree_graphs(
    deg: &[usize],
    max_mult: usize,
    budget: &mut u64,
    sink: &mut dyn FnMut(&[(VertexId, VertexId)]),
) -> bool {
    let n = deg.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    let mut remaining: Vec<usize> = deg.to_vec();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    // Degree still reachable for vertex v using pairs from index p on.
    fn feasible(remaining: &[usize], pairs: &[(usize, usize)], p: usize, max_mult: usize) -> bool {
        let mut room = vec![0usize; remaining.len()];
        for &(i, j) in &pairs[p..] {
            room[i] += max_mult;
            room[j] += max_mult;
        }
        remaining
            .iter()
            .zip(&room)
            .all(|(&need, &have)| need <= have)
    }
    fn rec(
        p: usize,
        pairs: &[(usize, usize)],
        remaining: &mut Vec<usize>,
        edges: &mut Vec<(VertexId, VertexId)>,
        max_mult: usize,
        budget: &mut u64,
        sink: &mut dyn FnMut(&[(VertexId, VertexId)]),
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if p == pairs.len() {
            if remaining.iter().all(|&r| r == 0) {
                sink(edges);
            }
            return true;
        }
        if !feasible(remaining, pairs, p, max_mult) {
            return true;
        }
        let (i, j) = pairs[p];
        let top = max_mult.min(remaining[i]).min(remaining[j]);
        for mult in 0..=top {
            remaining[i] -= mult;
            remaining[j] -= mult;
            for _ in 0..mult {
                edges.push((i, j));
            }
            let ok = rec(p + 1, pairs, remaining, edges, max_mult, budget, sink);
            for _ in 0..mult {
                edges.pop();
            }
            remaining[i] += mult;
            remaining[j] += mult;
            if !ok {
                return false;
            }
        }
        true
    }
    rec(
        0,
        &pairs,
        &mut remaining,
        &mut edges,
        max_mult,
        budget,
        sink,
    )
}

/// Enumerates, up to fixed isomorphism on the sequence (root, terminals),
/// all minimal feasible instances with root and terminal degrees exactly
/// `k`, internal degrees exactly 3, parallel multiplicity at most `2k`, and
/// at most `max_vertices` vertices. Root is vertex 0 and terminal `i` is
/// vertex `i`; entries are sorted by canonical code. `budget` bounds both
/// generation and per-instance solving; exhausting it yields a partial
/// catalog with `complete` set to false.
pub fn enumerate_minimal(k: usize, t: usize, max_vertices: usize, budget: u64) -> Catalog {
    assert!(k >= 1, "requirement must be positive");
    assert!(
        max_vertices >= t + 1,
        "need room for the root and terminals"
    );
    let w: Vec<VertexId> = (0..=t).collect();
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    let mut complete = true;
    for n in (t + 1)..=max_vertices {
        let mut deg = vec![k; t + 1];
        deg.extend(std::iter::repeat(3).take(n - t - 1));
        if deg.iter().sum::<usize>() % 2 != 0 {
            continue;
        }
        let mut gen_budget = budget;
        let mut candidates: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
        let finished = degree_graphs(&deg, 2 * k, &mut gen_budget, &mut |edges| {
            candidates.push(edges.to_vec());
        });
        if !finished {
            complete = false;
        }
        // Deduplicate sequentially so the surviving candidate list is
        // thread-count independent, then filter for minimality in
        // parallel; the per-candidate budget is fixed, so results (and
        // therefore the catalog) are identical under any pool size.
        let mut unique: Vec<(Vec<u8>, SteinerInstance)> = Vec::new();
        for edges in candidates {
            let g = build_multigraph(n, &edges).expect("generator emits valid edges");
            if !g.is_connected() {
                continue;
            }
            let code = canonical_code(&g, &w);
            if !seen.insert(code.clone()) {
                continue;
            }
            let inst = SteinerInstance::new(g, 0, (1..=t).collect(), k)
                .expect("generator respects the instance shape");
            unique.push((code, inst));
        }
        let verdicts: Vec<Result<bool, MinorError>> = unique
            .par_iter()
            .map(|(_, inst)| is_minimal_feasible(inst, budget))
            .collect();
        for ((code, inst), verdict) in unique.into_iter().zip(verdicts) {
            match verdict {
                Ok(true) => entries.push(CatalogEntry {
                    instance: inst,
                    code,
                }),
                Ok(false) => {}
                Err(_) => {
                    complete = false;
                }
            }
        }
    }
    entries.sort_by(|a, b| a.code.cmp(&b.code));
    Catalog { entries, complete }
}

/// Directed analogue of [`enumerate_minimal`]: enumerates minimal digraphs
/// with in(root)=0, out(root)=`k`, in(terminal)=`k`, out(terminal)=0, other
/// vertices of total degree 3, same-direction multiplicity at most `k`, and
/// `k` arc-disjoint root-to-terminal paths per terminal, such that every arc
/// deletion breaks some terminal's connectivity.
pub fn enumerate_minimal_digraphs(
    k: usize,
    t: usize,
    max_vertices: usize,
    budget: u64,
) -> DigraphCatalog {
    assert!(k >= 1, "requirement must be positive");
    assert!(
        max_vertices >= t + 1,
        "need room for the root and terminals"
    );
    let w: Vec<VertexId> = (0..=t).collect();
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    let mut complete = true;
    for n in (t + 1)..=max_vertices {
        let mut deg = vec![k; t + 1];
        deg.extend(std::iter::repeat(3).take(n - t - 1));
        if deg.iter().sum::<usize>() % 2 != 0 {
            continue;
        }
        let mut gen_budget = budget;
        let mut skeletons: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
        let finished = degree_graphs(&deg, 2 * k, &mut gen_budget, &mut |edges| {
            skeletons.push(edges.to_vec());
        });
        if !finished {
            complete = false;
        }
        for edges in skeletons {
            let g = build_multigraph(n, &edges).expect("generator emits valid edges");
            if !g.is_connected() {
                continue;
            }
            // Orient each skeleton edge both ways; prune by degree profile.
            let m = edges.len();
            if m > 24 {
                complete = false;
                continue;
            }
            for mask in 0u64..(1u64 << m) {
                let arcs: Vec<(VertexId, VertexId)> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| if mask >> i & 1 == 0 { (u, v) } else { (v, u) })
                    .collect();
                if let Some(entry) = minimal_digraph_entry(n, &arcs, k, t, &w, &mut seen) {
                    entries.push(entry);
                }
            }
        }
    }
    entries.sort_by(|a, b| a.code.cmp(&b.code));
    DigraphCatalog { entries, complete }
}

fn minimal_digraph_entry(
    n: usize,
    arcs: &[(VertexId, VertexId)],
    k: usize,
    t: usize,
    w: &[VertexId],
    seen: &mut BTreeSet<Vec<u8>>,
) -> Option<DigraphCatalogEntry> {
    let d = DiGraph::new(n, arcs.to_vec()).expect("skeleton has no loops");
    if d.in_degree(0) != 0 || d.out_degree(0) != k {
        return None;
    }
    for s in 1..=t {
        if d.in_degree(s) != k || d.out_degree(s) != 0 {
            return None;
        }
    }
    if arcs.iter().any(|&(u, v)| d.multiplicity(u, v) > k) {
        return None;
    }
    let code = canonical_code_directed(&d, w);
    if seen.contains(&code) {
        return None;
    }
    let connected =
        (1..=t).all(|s| lambda_at_least(&d, 0, s, k).expect("root and terminals are distinct"));
    if !connected {
        return None;
    }
    for a in 0..d.arc_count() {
        let (h, _) = d.delete_arc(a);
        let still =
            (1..=t).all(|s| lambda_at_least(&h, 0, s, k).expect("root and terminals are distinct"));
        if still {
            seen.insert(code);
            return None;
        }
    }
    seen.insert(code.clone());
    Some(DigraphCatalogEntry { digraph: d, code })
}

/// Verdict of the catalog decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogVerdict {
    /// Some catalog entry embeds; the index refers to the given catalog.
    Yes { entry: usize },
    /// No entry embeds, and the catalog is not known to be exhaustive.
    NoWithinCatalog,
    /// No entry embeds and the catalog is exhaustive for this (k, t), so the
    /// instance is infeasible.
    No,
}

/// Decides a 3-regular instance against a catalog of minimal instances: the
/// instance is feasible iff some minimal instance embeds as a fixed
/// topological minor on the sequence (root, terminals). The host is
/// relabeled so its root is 0 and its terminals are 1..=t, matching the
/// catalog convention; entries are tried in catalog order.
pub fn catalog_decide(
    inst: &SteinerInstance,
    catalog: &Catalog,
    complete: bool,
    budget: u64,
) -> Result<CatalogVerdict, MinorError> {
    let g = inst.graph();
    for v in 0..g.vertex_count() {
        let expected = if inst.is_terminal(v) || v == inst.root() {
            inst.k()
        } else {
            3
        };
        if g.degree(v) != expected {
            return Err(MinorError::DegreeProfile {
                vertex: v,
                degree: g.degree(v),
                expected,
            });
        }
    }
    let t = inst.terminals().len();
    // Relabel so the members take the catalog positions; edge order (and
    // thus EdgeId) is preserved.
    let mut relabel = vec![usize::MAX; g.vertex_count()];
    relabel[inst.root()] = 0;
    for (i, &s) in inst.terminals().iter().enumerate() {
        relabel[s] = 1 + i;
    }
    let mut next = t + 1;
    for v in 0..g.vertex_count() {
        if relabel[v] == usize::MAX {
            relabel[v] = next;
            next += 1;
        }
    }
    let edges: Vec<(VertexId, VertexId)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (relabel[u], relabel[v]))
        .collect();
    let host = build_multigraph(g.vertex_count(), &edges).expect("relabeling keeps edges valid");
    let w: Vec<VertexId> = (0..=t).collect();
    for (i, entry) in catalog.entries.iter().enumerate() {
        if fixed_topo_minor(&host, entry.instance.graph(), &w, budget)?.is_some() {
            return Ok(CatalogVerdict::Yes { entry: i });
        }
    }
    Ok(if complete {
        CatalogVerdict::No
    } else {
        CatalogVerdict::NoWithinCatalog
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_multigraph;

    fn mg(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
        build_multigraph(n, edges).unwrap()
    }

    fn dg(n: usize, arcs: &[(usize, usize)]) -> DiGraph {
        DiGraph::new(n, arcs.to_vec()).unwrap()
    }

    const B: u64 = 1 << 22;

    #[test]
    fn identity_embedding() {
        let g = mg(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let w: Vec<usize> = (0..4).collect();
        let emb = fixed_topo_minor(&g, &g, &w, B).unwrap().unwrap();
        assert_eq!(emb.vertex_map, vec![0, 1, 2, 3]);
        assert!(emb.paths.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn identity_embedding_directed() {
        let d = dg(3, &[(0, 1), (1, 2), (2, 0)]);
        let w: Vec<usize> = (0..3).collect();
        let emb = fixed_topo_minor_directed(&d, &d, &w, B).unwrap().unwrap();
        assert_eq!(emb.vertex_map, vec![0, 1, 2]);
    }

    #[test]
    fn single_edge_pattern_uses_any_internal_path() {
        // Host path 0-2-3-1; pattern edge 0-1; W = {0, 1}.
        let host = mg(4, &[(0, 2), (2, 3), (3, 1)]);
        let pattern = mg(2, &[(0, 1)]);
        let emb = fixed_topo_minor(&host, &pattern, &[0, 1], B)
            .unwrap()
            .unwrap();
        assert_eq!(emb.paths[0], vec![0, 1, 2]);
    }

    #[test]
    fn directed_path_suppresses_to_arc() {
        let host = dg(3, &[(0, 2), (2, 1)]);
        let pattern = dg(2, &[(0, 1)]);
        assert!(fixed_topo_minor_directed(&host, &pattern, &[0, 1], B)
            .unwrap()
            .is_some());
        // The reverse arc is not reachable.
        let back = dg(2, &[(1, 0)]);
        assert!(fixed_topo_minor_directed(&host, &back, &[0, 1], B)
            .unwrap()
            .is_none());
    }

    #[test]
    fn parallel_pattern_needs_disjoint_paths() {
        let pattern = mg(2, &[(0, 1), (0, 1)]);
        let two_paths = mg(4, &[(0, 2), (2, 1), (0, 3), (3, 1)]);
        assert!(fixed_topo_minor(&two_paths, &pattern, &[0, 1], B)
            .unwrap()
            .is_some());
        let one_path = mg(3, &[(0, 2), (2, 1)]);
        assert!(fixed_topo_minor(&one_path, &pattern, &[0, 1], B)
            .unwrap()
            .is_none());
    }

    #[test]
    fn budget_error_reports_exploration() {
        let host = mg(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let err = fixed_topo_minor(&host, &host, &[0], 1).unwrap_err();
        assert!(matches!(err, MinorError::BudgetExhausted { .. }));
    }

    #[test]
    fn suppression_reachable_identity_and_path() {
        let g = mg(3, &[(0, 2), (2, 1)]);
        assert!(suppression_reachable(&g, &g, &[0, 1], B).unwrap());
        let target = mg(2, &[(0, 1)]);
        assert!(suppression_reachable(&g, &target, &[0, 1], B).unwrap());
        let parallel = mg(2, &[(0, 1), (0, 1)]);
        assert!(!suppression_reachable(&g, &parallel, &[0, 1], B).unwrap());
    }

    #[test]
    fn suppression_reachable_directed_respects_orientation() {
        let d = dg(3, &[(0, 2), (2, 1)]);
        let fwd = dg(2, &[(0, 1)]);
        let back = dg(2, &[(1, 0)]);
        assert!(suppression_reachable_directed(&d, &fwd, &[0, 1], B).unwrap());
        assert!(!suppression_reachable_directed(&d, &back, &[0, 1], B).unwrap());
    }

    #[test]
    fn minor_test_agrees_with_suppression_oracle_on_samples() {
        let host = mg(5, &[(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (2, 3)]);
        let patterns = vec![
            mg(2, &[(0, 1)]),
            mg(2, &[(0, 1), (0, 1)]),
            mg(3, &[(0, 2), (2, 1), (0, 1)]),
            mg(2, &[(0, 1), (0, 1), (0, 1)]),
        ];
        for p in patterns {
            let direct = fixed_topo_minor(&host, &p, &[0, 1], B).unwrap().is_some();
            let oracle = suppression_reachable(&host, &p, &[0, 1], B).unwrap();
            assert_eq!(direct, oracle);
        }
    }

    fn inst(
        n: usize,
        edges: &[(usize, usize)],
        root: usize,
        ts: &[usize],
        k: usize,
    ) -> SteinerInstance {
        SteinerInstance::new(mg(n, edges), root, ts.to_vec(), k).unwrap()
    }

    #[test]
    fn minimal_feasibility_examples() {
        assert!(is_minimal_feasible(&inst(2, &[(0, 1)], 0, &[1], 1), B).unwrap());
        assert!(!is_minimal_feasible(&inst(2, &[(0, 1), (0, 1)], 0, &[1], 1), B).unwrap());
        let star = inst(4, &[(0, 3), (3, 1), (3, 2)], 0, &[1, 2], 1);
        assert!(is_minimal_feasible(&star, B).unwrap());
    }

    #[test]
    fn enumerate_k1_t1_single_edge() {
        let cat = enumerate_minimal(1, 1, 4, B);
        assert!(cat.complete);
        assert_eq!(cat.entries.len(), 1);
        let e = &cat.entries[0];
        assert_eq!(e.instance.graph().vertex_count(), 2);
        assert_eq!(e.instance.graph().edges(), &[(0, 1)]);
    }

    #[test]
    fn enumerate_k1_t2_single_star() {
        let cat = enumerate_minimal(1, 2, 6, B);
        assert!(cat.complete);
        assert_eq!(cat.entries.len(), 1);
        let e = &cat.entries[0];
        assert_eq!(e.instance.graph().vertex_count(), 4);
        assert_eq!(e.instance.graph().degree(3), 3);
    }

    #[test]
    fn enumerate_digraphs_tiny() {
        let cat = enumerate_minimal_digraphs(1, 1, 4, B);
        assert!(cat.complete);
        assert_eq!(cat.entries.len(), 1);
        assert_eq!(cat.entries[0].digraph.arcs(), &[(0, 1)]);

        let cat = enumerate_minimal_digraphs(1, 2, 6, B);
        assert!(cat.complete);
        assert_eq!(cat.entries.len(), 1);
        let d = &cat.entries[0].digraph;
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.in_degree(3), 1);
        assert_eq!(d.out_degree(3), 2);
    }

    #[test]
    fn enumerated_digraphs_lose_connectivity_per_arc() {
        let cat = enumerate_minimal_digraphs(1, 2, 6, B);
        for entry in &cat.entries {
            let d = &entry.digraph;
            for a in 0..d.arc_count() {
                let (h, _) = d.delete_arc(a);
                let broken = (1..=2).any(|s| !lambda_at_least(&h, 0, s, 1).unwrap());
                assert!(broken);
            }
        }
    }

    #[test]
    fn catalog_decide_empty_catalog() {
        let star = inst(4, &[(0, 3), (3, 1), (3, 2)], 0, &[1, 2], 1);
        let empty = Catalog {
            entries: Vec::new(),
            complete: false,
        };
        assert_eq!(
            catalog_decide(&star, &empty, false, B).unwrap(),
            CatalogVerdict::NoWithinCatalog
        );
        assert_eq!(
            catalog_decide(&star, &empty, true, B).unwrap(),
            CatalogVerdict::No
        );
    }

    #[test]
    fn catalog_decide_matches_solve_on_pendant_triangle() {
        // Root and terminals hang off a triangle; feasible for k = 1.
        let host = inst(
            6,
            &[(0, 3), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
            0,
            &[1, 2],
            1,
        );
        let cat = enumerate_minimal(1, 2, 6, B);
        let verdict = catalog_decide(&host, &cat, true, B).unwrap();
        assert_eq!(verdict, CatalogVerdict::Yes { entry: 0 });
        assert!(solve(&host, B).is_yes());
    }

    #[test]
    fn catalog_decide_rejects_bad_degree_profile() {
        let path = inst(3, &[(0, 2), (2, 1)], 0, &[1], 1);
        let cat = enumerate_minimal(1, 1, 4, B);
        assert!(matches!(
            catalog_decide(&path, &cat, true, B),
            Err(MinorError::DegreeProfile { vertex: 2, .. })
        ));
    }
}
