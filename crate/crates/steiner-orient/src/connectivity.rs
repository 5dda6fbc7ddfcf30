//! Unit-capacity max-flow/min-cut, orientation verification, tight-cut
//! queries, and the mixed-graph relaxation bound used by the solver.
//!
//! All connectivity values are computed by Dinic's algorithm on unit (or
//! merged-parallel) capacities. Undirected and undecided edges are modeled as
//! antiparallel unit arc pairs, which is exact for single-commodity flow
//! because opposite flows cancel.

use crate::graph::{
    orient, ArcId, DiGraph, MultiGraph, Orientation, PartialDir, PartialOrientation, VertexId,
};
use thiserror::Error;

/// Errors raised by connectivity queries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    /// Source and sink coincide.
    #[error("source and sink must differ (both are vertex {vertex})")]
    SameVertex { vertex: VertexId },
    /// A vertex argument is not a valid vertex.
    #[error("vertex {vertex} is out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
    /// An arc argument is not a valid arc.
    #[error("arc {arc} is out of range for a digraph with {arc_count} arcs")]
    ArcOutOfRange { arc: ArcId, arc_count: usize },
    /// A query required `lambda(d, r, s)` to equal a stated value.
    #[error("query requires lambda(r, s) = {expected}, but it is {found}")]
    LambdaMismatch { expected: usize, found: usize },
    /// The forced vertex sets of a constrained cut query conflict.
    #[error("constraint sets conflict: {reason}")]
    ConstraintConflict { reason: String },
}

/// Errors raised when assembling a [`SteinerInstance`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("root {root} is out of range for a graph with {vertex_count} vertices")]
    RootOutOfRange { root: VertexId, vertex_count: usize },
    #[error("terminal {terminal} is out of range for a graph with {vertex_count} vertices")]
    TerminalOutOfRange {
        terminal: VertexId,
        vertex_count: usize,
    },
    #[error("root {root} is also listed as a terminal")]
    RootIsTerminal { root: VertexId },
    #[error("terminal {terminal} is listed more than once")]
    DuplicateTerminal { terminal: VertexId },
    #[error("the connectivity requirement k must be at least 1")]
    ZeroRequirement,
}

/// An orientation problem: a multigraph, a root, an ordered terminal list,
/// and a connectivity requirement `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerInstance {
    graph: MultiGraph,
    root: VertexId,
    terminals: Vec<VertexId>,
    k: usize,
}

impl SteinerInstance {
    /// Validates and assembles an instance. The terminal order is preserved.
    pub fn new(
        graph: MultiGraph,
        root: VertexId,
        terminals: Vec<VertexId>,
        k: usize,
    ) -> Result<SteinerInstance, InstanceError> {
        let n = graph.vertex_count();
        if root >= n {
            return Err(InstanceError::RootOutOfRange {
                root,
                vertex_count: n,
            });
        }
        let mut seen = vec![false; n];
        for &t in &terminals {
            if t >= n {
                return Err(InstanceError::TerminalOutOfRange {
                    terminal: t,
                    vertex_count: n,
                });
            }
            if t == root {
                return Err(InstanceError::RootIsTerminal { root });
            }
            if seen[t] {
                return Err(InstanceError::DuplicateTerminal { terminal: t });
            }
            seen[t] = true;
        }
        if k == 0 {
            return Err(InstanceError::ZeroRequirement);
        }
        Ok(SteinerInstance {
            graph,
            root,
            terminals,
            k,
        })
    }

    /// The underlying multigraph.
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    /// The root vertex.
    pub fn root(&self) -> VertexId {
        self.root
    }

    /// The terminals in their given order.
    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    /// The terminals in ascending id order.
    pub fn terminals_ascending(&self) -> Vec<VertexId> {
        let mut ts = self.terminals.clone();
        ts.sort_unstable();
        ts
    }

    /// The connectivity requirement.
    pub fn k(&self) -> usize {
        self.k
    }

    /// True when `v` is a terminal.
    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.terminals.contains(&v)
    }

    /// Root and terminals, ascending.
    pub fn members(&self) -> Vec<VertexId> {
        let mut ms = self.terminals.clone();
        ms.push(self.root);
        ms.sort_unstable();
        ms
    }
}

/// A cut separating the root side from one terminal.
///
/// `side` is the set `U` containing the root and not the separated terminal;
/// `out_degree` counts the arcs (or edges, for undirected certificates)
/// leaving `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    /// The root-side vertex set `U`, ascending.
    pub side: Vec<VertexId>,
    /// The terminal separated from the root (not in `U`).
    pub separated_terminal: VertexId,
    /// Number of arcs or edges leaving `U`.
    pub out_degree: usize,
}

/// Outcome of verifying an orientation against an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every terminal reaches the requirement.
    Ok,
    /// Some terminal falls short; the certificate cut has `out_degree < k`.
    Violated(CutCertificate),
}

/// Residual flow network with paired arcs (`arc ^ 1` is the reverse).
pub(crate) struct FlowNet {
    to: Vec<usize>,
    cap: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    pub(crate) fn new(vertex_count: usize) -> FlowNet {
        FlowNet {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); vertex_count],
        }
    }

    /// Adds the arc pair `u -> v` / `v -> u` with the given capacities.
    pub(crate) fn add(&mut self, u: usize, v: usize, cap_uv: usize, cap_vu: usize) {
        let a = self.to.len();
        self.to.push(v);
        self.cap.push(cap_uv);
        self.to.push(u);
        self.cap.push(cap_vu);
        self.adj[u].push(a);
        self.adj[v].push(a + 1);
    }

    fn bfs_levels(&self, s: usize) -> Vec<i32> {
        let mut level = vec![-1; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &a in &self.adj[v] {
                let u = self.to[a];
                if self.cap[a] > 0 && level[u] < 0 {
                    level[u] = level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        level
    }

    fn dfs(&mut self, v: usize, t: usize, f: usize, level: &[i32], iter: &mut [usize]) -> usize {
        if v == t {
            return f;
        }
        while iter[v] < self.adj[v].len() {
            let a = self.adj[v][iter[v]];
            let u = self.to[a];
            if self.cap[a] > 0 && level[u] == level[v] + 1 {
                let d = self.dfs(u, t, f.min(self.cap[a]), level, iter);
                if d > 0 {
                    self.cap[a] -= d;
                    self.cap[a ^ 1] += d;
                    return d;
                }
            }
            iter[v] += 1;
        }
        0
    }

    /// Dinic's algorithm, stopping early once `limit` units have been pushed.
    /// If the returned value is below `limit`, it is the exact max flow.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let level = self.bfs_levels(s);
            if level[t] < 0 {
                break;
            }
            let mut iter = vec![0usize; self.adj.len()];
            while flow < limit {
                let pushed = self.dfs(s, t, limit - flow, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }

    /// Vertices reachable from `s` in the residual network, ascending. After
    /// an uncapped (or short-of-limit) max-flow run this is the minimum cut's
    /// source side.
    pub(crate) fn residual_side(&self, s: usize) -> Vec<usize> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &a in &self.adj[v] {
                let u = self.to[a];
                if self.cap[a] > 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        (0..self.adj.len()).filter(|&v| seen[v]).collect()
    }
}

fn net_of_digraph(d: &DiGraph) -> FlowNet {
    let mut net = FlowNet::new(d.vertex_count());
    for &(t, h) in d.arcs() {
        net.add(t, h, 1, 0);
    }
    net
}

/// Flags the arcs carrying flow in one integral `k`-flow from `r` to `s`,
/// or `None` when the maximum flow falls short of `k`. Arc `a` corresponds
/// to the network arc pair `(2a, 2a + 1)`, so a drained forward capacity
/// means the arc is saturated.
pub(crate) fn k_flow_arcs(d: &DiGraph, r: VertexId, s: VertexId, k: usize) -> Option<Vec<bool>> {
    let mut net = net_of_digraph(d);
    if net.max_flow(r, s, k) < k {
        return None;
    }
    Some((0..d.arc_count()).map(|a| net.cap[2 * a] == 0).collect())
}

fn net_of_multigraph(g: &MultiGraph) -> FlowNet {
    let mut net = FlowNet::new(g.vertex_count());
    for &(u, v) in g.edges() {
        net.add(u, v, 1, 1);
    }
    net
}

fn net_of_partial(g: &MultiGraph, p: &PartialOrientation) -> FlowNet {
    assert_eq!(
        p.len(),
        g.edge_count(),
        "partial orientation covers {} edges but the graph has {}",
        p.len(),
        g.edge_count()
    );
    let mut net = FlowNet::new(g.vertex_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match p.get(e) {
            PartialDir::AsListed => net.add(u, v, 1, 0),
            PartialDir::Reversed => net.add(v, u, 1, 0),
            PartialDir::Undecided => net.add(u, v, 1, 1),
        }
    }
    net
}

fn check_pair(u: VertexId, v: VertexId, n: usize) -> Result<(), ConnectivityError> {
    for &x in &[u, v] {
        if x >= n {
            return Err(ConnectivityError::VertexOutOfRange {
                vertex: x,
                vertex_count: n,
            });
        }
    }
    if u == v {
        return Err(ConnectivityError::SameVertex { vertex: u });
    }
    Ok(())
}

/// Maximum number of pairwise arc-disjoint directed `u`-to-`v` paths.
pub fn lambda(d: &DiGraph, u: VertexId, v: VertexId) -> Result<usize, ConnectivityError> {
    check_pair(u, v, d.vertex_count())?;
    Ok(net_of_digraph(d).max_flow(u, v, usize::MAX))
}

/// Capped variant of [`lambda`] for yes/no queries: stops augmenting at `k`.
pub(crate) fn lambda_at_least(
    d: &DiGraph,
    u: VertexId,
    v: VertexId,
    k: usize,
) -> Result<bool, ConnectivityError> {
    check_pair(u, v, d.vertex_count())?;
    Ok(net_of_digraph(d).max_flow(u, v, k) >= k)
}

/// Minimum `u`-to-`v` arc cut, reported as the residual-reachable (hence
/// inclusionwise smallest) source side.
pub fn min_cut(d: &DiGraph, u: VertexId, v: VertexId) -> Result<CutCertificate, ConnectivityError> {
    check_pair(u, v, d.vertex_count())?;
    let mut net = net_of_digraph(d);
    let flow = net.max_flow(u, v, usize::MAX);
    Ok(CutCertificate {
        side: net.residual_side(u),
        separated_terminal: v,
        out_degree: flow,
    })
}

/// Maximum number of pairwise edge-disjoint undirected `u`-to-`v` paths.
pub fn undirected_lambda(
    g: &MultiGraph,
    u: VertexId,
    v: VertexId,
) -> Result<usize, ConnectivityError> {
    check_pair(u, v, g.vertex_count())?;
    Ok(net_of_multigraph(g).max_flow(u, v, usize::MAX))
}

/// Checks an orientation against the instance requirement.
///
/// Returns [`Verdict::Ok`] when every terminal `s` satisfies
/// `lambda(orient(g, o), r, s) >= k`; otherwise returns a violated cut for
/// the failing terminal with the smallest id.
pub fn verify(inst: &SteinerInstance, o: &Orientation) -> Verdict {
    let d = orient(inst.graph(), o);
    let k = inst.k();
    for s in inst.terminals_ascending() {
        let mut net = net_of_digraph(&d);
        let flow = net.max_flow(inst.root(), s, k);
        if flow < k {
            // The capped run fell short, so it is a complete max flow and the
            // residual side is a true minimum cut.
            return Verdict::Violated(CutCertificate {
                side: net.residual_side(inst.root()),
                separated_terminal: s,
                out_degree: flow,
            });
        }
    }
    Verdict::Ok
}

/// Sufficient feasibility condition: every pair of members (root and
/// terminals) is joined by at least `2k` edge-disjoint undirected paths.
pub fn nash_williams_sufficient(inst: &SteinerInstance) -> bool {
    let members = inst.members();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let net_flow = net_of_multigraph(inst.graph()).max_flow(x, y, 2 * inst.k());
            if net_flow < 2 * inst.k() {
                return false;
            }
        }
    }
    true
}

/// Necessary feasibility condition: no orientation can exceed the undirected
/// connectivity, so an undirected cut of size `< k` between the root and a
/// terminal proves infeasibility. Returns such a certificate for the failing
/// terminal with the smallest id, or `None`.
pub fn necessary_cut_check(inst: &SteinerInstance) -> Option<CutCertificate> {
    let k = inst.k();
    for s in inst.terminals_ascending() {
        let mut net = net_of_multigraph(inst.graph());
        let flow = net.max_flow(inst.root(), s, k);
        if flow < k {
            return Some(CutCertificate {
                side: net.residual_side(inst.root()),
                separated_terminal: s,
                out_degree: flow,
            });
        }
    }
    None
}

/// Upper bound on the connectivity from the root to terminal `s` achievable
/// by any completion of the partial orientation `p`: decided edges contribute
/// their single arc, undecided edges an antiparallel unit pair.
pub fn mixed_upper_bound(inst: &SteinerInstance, p: &PartialOrientation, s: VertexId) -> usize {
    assert!(
        inst.is_terminal(s),
        "mixed_upper_bound queried for non-terminal vertex {s}"
    );
    net_of_partial(inst.graph(), p).max_flow(inst.root(), s, usize::MAX)
}

/// Uncapped mixed-relaxation flow value without instance plumbing.
pub(crate) fn mixed_bound_raw(
    g: &MultiGraph,
    p: &PartialOrientation,
    r: VertexId,
    s: VertexId,
) -> usize {
    net_of_partial(g, p).max_flow(r, s, usize::MAX)
}

/// Source side of a minimum cut of the mixed relaxation, as a membership
/// vector. Used to pick branch edges crossing a tight relaxation cut.
pub(crate) fn mixed_min_cut_side(
    g: &MultiGraph,
    p: &PartialOrientation,
    r: VertexId,
    s: VertexId,
) -> Vec<bool> {
    let mut net = net_of_partial(g, p);
    net.max_flow(r, s, usize::MAX);
    let mut side = vec![false; g.vertex_count()];
    for v in net.residual_side(r) {
        side[v] = true;
    }
    side
}

/// Capped variant of [`mixed_upper_bound`] for the solver's pruning loop.
pub(crate) fn mixed_flow_at_least(
    g: &MultiGraph,
    p: &PartialOrientation,
    r: VertexId,
    s: VertexId,
    k: usize,
) -> bool {
    net_of_partial(g, p).max_flow(r, s, k) >= k
}

/// True when arc `a` leaves some minimum `r`-to-`s` cut, given that
/// `lambda(d, r, s) = k`. Equivalent test: deleting `a` drops the
/// connectivity to `k - 1`.
pub fn arc_in_some_min_cut(
    d: &DiGraph,
    r: VertexId,
    s: VertexId,
    a: ArcId,
    k: usize,
) -> Result<bool, ConnectivityError> {
    check_pair(r, s, d.vertex_count())?;
    if a >= d.arc_count() {
        return Err(ConnectivityError::ArcOutOfRange {
            arc: a,
            arc_count: d.arc_count(),
        });
    }
    let found = lambda(d, r, s)?;
    if found != k {
        return Err(ConnectivityError::LambdaMismatch { expected: k, found });
    }
    // Deleting one arc drops lambda by at most one, so a capped run decides.
    let (without, _) = d.delete_arc(a);
    Ok(!lambda_at_least(&without, r, s, k)?)
}

/// Minimum `r`-to-`s` cut among cuts whose source side contains all of
/// `must_inside` and none of `must_outside`. Forced vertices are bound to the
/// source or sink with arcs too heavy to cross a minimal cut.
pub fn constrained_min_cut(
    d: &DiGraph,
    r: VertexId,
    s: VertexId,
    must_inside: &[VertexId],
    must_outside: &[VertexId],
) -> Result<CutCertificate, ConnectivityError> {
    check_pair(r, s, d.vertex_count())?;
    let n = d.vertex_count();
    for &v in must_inside.iter().chain(must_outside.iter()) {
        if v >= n {
            return Err(ConnectivityError::VertexOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
    }
    if must_inside.contains(&s) {
        return Err(ConnectivityError::ConstraintConflict {
            reason: format!("sink {s} is forced inside the cut"),
        });
    }
    if must_outside.contains(&r) {
        return Err(ConnectivityError::ConstraintConflict {
            reason: format!("source {r} is forced outside the cut"),
        });
    }
    if let Some(&v) = must_inside.iter().find(|v| must_outside.contains(v)) {
        return Err(ConnectivityError::ConstraintConflict {
            reason: format!("vertex {v} is forced both inside and outside"),
        });
    }
    let heavy = d.arc_count() + 1;
    let mut net = net_of_digraph(d);
    for &v in must_inside {
        if v != r {
            net.add(r, v, heavy, 0);
        }
    }
    for &v in must_outside {
        if v != s {
            net.add(v, s, heavy, 0);
        }
    }
    let flow = net.max_flow(r, s, usize::MAX);
    Ok(CutCertificate {
        side: net.residual_side(r),
        separated_terminal: s,
        out_degree: flow,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_multigraph, Dir};

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> DiGraph {
        DiGraph::new(n, arcs.to_vec()).unwrap()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
        build_multigraph(n, edges).unwrap()
    }

    #[test]
    fn lambda_parallel_arcs() {
        let d = digraph(2, &[(0, 1), (0, 1)]);
        assert_eq!(lambda(&d, 0, 1).unwrap(), 2);
    }

    #[test]
    fn lambda_directed_four_cycle() {
        // r=0 -> a=1 -> s=2 -> b=3 -> r
        let d = digraph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(lambda(&d, 0, 2).unwrap(), 1);
    }

    #[test]
    fn lambda_two_arc_path() {
        let d = digraph(3, &[(0, 1), (1, 2)]);
        assert_eq!(lambda(&d, 0, 2).unwrap(), 1);
    }

    #[test]
    fn lambda_rejects_same_vertex() {
        let d = digraph(2, &[(0, 1)]);
        assert_eq!(
            lambda(&d, 1, 1).unwrap_err(),
            ConnectivityError::SameVertex { vertex: 1 }
        );
    }

    #[test]
    fn min_cut_parallel_arcs() {
        let d = digraph(2, &[(0, 1), (0, 1)]);
        let cut = min_cut(&d, 0, 1).unwrap();
        assert_eq!(cut.side, vec![0]);
        assert_eq!(cut.out_degree, 2);
        assert_eq!(cut.separated_terminal, 1);
    }

    #[test]
    fn min_cut_reports_residual_reachable_side() {
        // r=0 -> a=1 -> s=2: both {r} and {r, a} are minimum cuts; the
        // residual-reachable policy yields the inclusionwise smallest, {r}.
        let d = digraph(3, &[(0, 1), (1, 2)]);
        let cut = min_cut(&d, 0, 2).unwrap();
        assert_eq!(cut.side, vec![0]);
        assert_eq!(cut.out_degree, 1);
    }

    fn four_cycle_instance(k: usize) -> SteinerInstance {
        // r=0 - a=1 - s=2 - b=3 - r, terminal s.
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        SteinerInstance::new(g, 0, vec![2], k).unwrap()
    }

    #[test]
    fn verify_four_cycle_two_paths() {
        let inst = four_cycle_instance(2);
        // Orient both paths from r towards s: 0->1, 1->2, 3->2... edges are
        // (0,1),(1,2),(2,3),(3,0): third edge reversed, fourth reversed.
        let o = Orientation::new(vec![
            Dir::AsListed,
            Dir::AsListed,
            Dir::Reversed,
            Dir::Reversed,
        ]);
        assert_eq!(verify(&inst, &o), Verdict::Ok);
    }

    #[test]
    fn verify_directed_cycle_violates() {
        let inst = four_cycle_instance(2);
        let o = Orientation::all_as_listed(4);
        match verify(&inst, &o) {
            Verdict::Violated(cut) => {
                assert_eq!(cut.side, vec![0]);
                assert_eq!(cut.out_degree, 1);
                assert_eq!(cut.separated_terminal, 2);
            }
            Verdict::Ok => panic!("expected a violation"),
        }
    }

    #[test]
    fn verify_single_edge_wrong_way() {
        let g = graph(2, &[(0, 1)]);
        let inst = SteinerInstance::new(g, 0, vec![1], 1).unwrap();
        let o = Orientation::new(vec![Dir::Reversed]);
        match verify(&inst, &o) {
            Verdict::Violated(cut) => assert_eq!(cut.out_degree, 0),
            Verdict::Ok => panic!("expected a violation"),
        }
    }

    #[test]
    fn undirected_lambda_examples() {
        let cycle = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(undirected_lambda(&cycle, 0, 2).unwrap(), 2);
        let single = graph(2, &[(0, 1)]);
        assert_eq!(undirected_lambda(&single, 0, 1).unwrap(), 1);
    }

    #[test]
    fn nash_williams_examples() {
        assert!(nash_williams_sufficient(&four_cycle_instance(1)));
        let single = graph(2, &[(0, 1)]);
        let inst = SteinerInstance::new(single, 0, vec![1], 1).unwrap();
        // The single edge is feasible but fails the sufficient condition.
        assert!(!nash_williams_sufficient(&inst));
        // K5 with k = 2: all pairwise undirected connectivities are 4.
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let k5 = graph(5, &edges);
        let inst = SteinerInstance::new(k5, 0, vec![2, 3], 2).unwrap();
        assert!(nash_williams_sufficient(&inst));
    }

    #[test]
    fn necessary_cut_examples() {
        let inst = four_cycle_instance(3);
        let cut = necessary_cut_check(&inst).unwrap();
        assert_eq!(cut.side, vec![0]);
        assert_eq!(cut.out_degree, 2);
        assert_eq!(cut.separated_terminal, 2);
        let parallel = graph(2, &[(0, 1), (0, 1)]);
        let inst = SteinerInstance::new(parallel, 0, vec![1], 2).unwrap();
        assert!(necessary_cut_check(&inst).is_none());
    }

    #[test]
    fn mixed_upper_bound_collapses() {
        let inst = four_cycle_instance(2);
        let undecided = PartialOrientation::undecided(4);
        assert_eq!(
            mixed_upper_bound(&inst, &undecided, 2),
            undirected_lambda(inst.graph(), 0, 2).unwrap()
        );
        let o = Orientation::all_as_listed(4);
        let decided = PartialOrientation::from_orientation(&o);
        assert_eq!(
            mixed_upper_bound(&inst, &decided, 2),
            lambda(&orient(inst.graph(), &o), 0, 2).unwrap()
        );
    }

    #[test]
    fn arc_in_some_min_cut_examples() {
        let d = digraph(2, &[(0, 1)]);
        assert!(arc_in_some_min_cut(&d, 0, 1, 0, 1).unwrap());
        let d = digraph(2, &[(0, 1), (0, 1)]);
        assert!(arc_in_some_min_cut(&d, 0, 1, 0, 2).unwrap());
        assert!(arc_in_some_min_cut(&d, 0, 1, 1, 2).unwrap());
        // Deleting an arc off every minimum cut leaves lambda unchanged.
        let d = digraph(4, &[(0, 1), (1, 2), (1, 3), (3, 1)]);
        assert!(!arc_in_some_min_cut(&d, 0, 2, 3, 1).unwrap());
        // Wrong stated k is rejected.
        assert_eq!(
            arc_in_some_min_cut(&d, 0, 2, 3, 2).unwrap_err(),
            ConnectivityError::LambdaMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn constrained_min_cut_no_constraints_matches_min_cut() {
        let d = digraph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let free = min_cut(&d, 0, 2).unwrap();
        let constrained = constrained_min_cut(&d, 0, 2, &[], &[]).unwrap();
        assert_eq!(free, constrained);
    }

    #[test]
    fn constrained_min_cut_forces_whole_side() {
        let d = digraph(4, &[(0, 1), (1, 2), (1, 3), (3, 2)]);
        let cut = constrained_min_cut(&d, 0, 2, &[1, 3], &[]).unwrap();
        assert_eq!(cut.side, vec![0, 1, 3]);
        // In-degree of the sink.
        assert_eq!(cut.out_degree, 2);
    }

    #[test]
    fn constrained_min_cut_rejects_conflicts() {
        let d = digraph(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            constrained_min_cut(&d, 0, 2, &[2], &[]),
            Err(ConnectivityError::ConstraintConflict { .. })
        ));
        assert!(matches!(
            constrained_min_cut(&d, 0, 2, &[1], &[1]),
            Err(ConnectivityError::ConstraintConflict { .. })
        ));
    }

    #[test]
    fn instance_validation() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert!(SteinerInstance::new(g.clone(), 0, vec![2], 1).is_ok());
        assert_eq!(
            SteinerInstance::new(g.clone(), 0, vec![0], 1).unwrap_err(),
            InstanceError::RootIsTerminal { root: 0 }
        );
        assert_eq!(
            SteinerInstance::new(g.clone(), 0, vec![2, 2], 1).unwrap_err(),
            InstanceError::DuplicateTerminal { terminal: 2 }
        );
        assert_eq!(
            SteinerInstance::new(g.clone(), 0, vec![2], 0).unwrap_err(),
            InstanceError::ZeroRequirement
        );
        assert_eq!(
            SteinerInstance::new(g, 7, vec![2], 1).unwrap_err(),
            InstanceError::RootOutOfRange {
                root: 7,
                vertex_count: 3
            }
        );
    }
}
