//! Structural diagnostics on directed graphs: feedback arc/vertex sets,
//! vertex-disjoint cycle packings, minimal flow supports with path
//! decompositions, essential cycles, ordered cycle witnesses, and a
//! tight-cut lattice sampler.
//!
//! Exact optimizers run branch-and-bound when the cyclic core is small
//! enough and fall back to flagged greedy bounds otherwise; everything is
//! deterministic, with randomized sampling driven by an explicit seed.

use crate::connectivity::{
    arc_in_some_min_cut, constrained_min_cut, k_flow_arcs, lambda, lambda_at_least,
    ConnectivityError, CutCertificate,
};
use crate::graph::{ArcId, DiGraph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

/// Errors raised by the structural diagnostics.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
    /// An operation needs at least `required` arc-disjoint paths.
    #[error("connectivity {found} is below the required {required}")]
    InsufficientConnectivity { required: usize, found: usize },
    /// An operation needs the connectivity to equal `required` exactly.
    #[error("connectivity must be exactly {required}, found {found}")]
    LambdaNotExact { required: usize, found: usize },
    /// The given arcs do not form a simple directed cycle.
    #[error("arcs do not form a simple directed cycle: {reason}")]
    CycleInvalid { reason: String },
    /// Cycles passed as pairwise disjoint share a vertex.
    #[error("cycles share vertex {vertex}")]
    CyclesNotDisjoint { vertex: VertexId },
}

/// An inclusionwise minimal arc set carrying `k` arc-disjoint paths from the
/// root to one terminal, together with one such decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSupport {
    pub terminal: VertexId,
    /// Support arcs, ascending; equal to the union of the decomposition.
    pub arcs: Vec<ArcId>,
    /// `k` arc-disjoint root-to-terminal paths covering every support arc.
    pub decomposition: Vec<Vec<ArcId>>,
}

/// A per-cycle family of tight cuts witnessing an ordered cycle sequence:
/// cut `i` is tight, contains every earlier cycle, avoids every later cycle,
/// and properly intersects cycle `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedCycleWitness {
    pub cycles: Vec<Vec<ArcId>>,
    pub cuts: Vec<CutCertificate>,
}

/// Finds one directed cycle avoiding dead arcs and vertices, as an arc list
/// in traversal order, via depth-first search (ascending vertex and arc
/// order, so the result is deterministic).
fn find_cycle(d: &DiGraph, arc_dead: &[bool], vertex_dead: &[bool]) -> Option<Vec<ArcId>> {
    fn go(
        d: &DiGraph,
        v: VertexId,
        color: &mut [u8],
        parent_arc: &mut [Option<ArcId>],
        arc_dead: &[bool],
        vertex_dead: &[bool],
    ) -> Option<Vec<ArcId>> {
        color[v] = 1;
        for &a in d.out_arcs(v) {
            if arc_dead[a] {
                continue;
            }
            let w = d.arc(a).1;
            if vertex_dead[w] {
                continue;
            }
            match color[w] {
                0 => {
                    parent_arc[w] = Some(a);
                    if let Some(c) = go(d, w, color, parent_arc, arc_dead, vertex_dead) {
                        return Some(c);
                    }
                }
                1 => {
                    // Back arc: the cycle runs w -> ... -> v -> w.
                    let mut rev = vec![a];
                    let mut x = v;
                    while x != w {
                        let pa = parent_arc[x].expect("tree path exists");
                        rev.push(pa);
                        x = d.arc(pa).0;
                    }
                    rev.reverse();
                    return Some(rev);
                }
                _ => {}
            }
        }
        color[v] = 2;
        None
    }
    let n = d.vertex_count();
    let mut color = vec![0u8; n];
    let mut parent_arc = vec![None; n];
    for v in 0..n {
        if color[v] == 0 && !vertex_dead[v] {
            if let Some(c) = go(d, v, &mut color, &mut parent_arc, arc_dead, vertex_dead) {
                return Some(c);
            }
        }
    }
    None
}

/// Arcs lying on some directed cycle: both endpoints in one strongly
/// connected component (Kosaraju's two-pass computation).
fn cyclic_core_arcs(d: &DiGraph) -> Vec<bool> {
    let n = d.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    fn fwd(d: &DiGraph, v: VertexId, seen: &mut [bool], order: &mut Vec<VertexId>) {
        seen[v] = true;
        for &a in d.out_arcs(v) {
            let w = d.arc(a).1;
            if !seen[w] {
                fwd(d, w, seen, order);
            }
        }
        order.push(v);
    }
    for v in 0..n {
        if !seen[v] {
            fwd(d, v, &mut seen, &mut order);
        }
    }
    let mut comp = vec![usize::MAX; n];
    fn back(d: &DiGraph, v: VertexId, c: usize, comp: &mut [usize]) {
        comp[v] = c;
        for &a in d.in_arcs(v) {
            let w = d.arc(a).0;
            if comp[w] == usize::MAX {
                back(d, w, c, comp);
            }
        }
    }
    let mut c = 0;
    for &v in order.iter().rev() {
        if comp[v] == usize::MAX {
            back(d, v, c, &mut comp);
            c += 1;
        }
    }
    d.arcs().iter().map(|&(u, v)| comp[u] == comp[v]).collect()
}

/// Greedy count of arc-disjoint (or vertex-disjoint) cycles: a lower bound
/// on the feedback number since every cycle needs its own deletion.
fn packing_bound(d: &DiGraph, arc_dead: &[bool], vertex_dead: &[bool], by_vertex: bool) -> usize {
    let mut arcs = arc_dead.to_vec();
    let mut verts = vertex_dead.to_vec();
    let mut count = 0;
    while let Some(cycle) = find_cycle(d, &arcs, &verts) {
        for &a in &cycle {
            arcs[a] = true;
            if by_vertex {
                verts[d.arc(a).0] = true;
            }
        }
        count += 1;
    }
    count
}

fn fas_branch(
    d: &DiGraph,
    deleted: &mut Vec<bool>,
    no_vertex: &[bool],
    current: &mut Vec<ArcId>,
    best: &mut Vec<ArcId>,
) {
    if current.len() + packing_bound(d, deleted, no_vertex, false) >= best.len() {
        return;
    }
    match find_cycle(d, deleted, no_vertex) {
        None => *best = current.clone(),
        Some(cycle) => {
            for &a in &cycle {
                deleted[a] = true;
                current.push(a);
                fas_branch(d, deleted, no_vertex, current, best);
                current.pop();
                deleted[a] = false;
            }
        }
    }
}

/// A minimum set of arcs intersecting every directed cycle, exact when the
/// cyclic core has at most `exact_limit` arcs (flag true); otherwise a
/// greedy cycle-hitting upper bound (flag false). The result is ascending.
pub fn min_feedback_arc_set(d: &DiGraph, exact_limit: usize) -> (Vec<ArcId>, bool) {
    let core = cyclic_core_arcs(d);
    let core_size = core.iter().filter(|&&x| x).count();
    let no_vertex = vec![false; d.vertex_count()];
    let mut greedy = Vec::new();
    let mut dead = vec![false; d.arc_count()];
    while let Some(cycle) = find_cycle(d, &dead, &no_vertex) {
        let a = *cycle.iter().min().expect("cycles are nonempty");
        dead[a] = true;
        greedy.push(a);
    }
    greedy.sort_unstable();
    if core_size > exact_limit {
        return (greedy, false);
    }
    let mut best = greedy;
    let mut deleted = vec![false; d.arc_count()];
    let mut current = Vec::new();
    fas_branch(d, &mut deleted, &no_vertex, &mut current, &mut best);
    best.sort_unstable();
    (best, true)
}

fn fvs_branch(
    d: &DiGraph,
    deleted: &mut Vec<bool>,
    no_arc: &[bool],
    current: &mut Vec<VertexId>,
    best: &mut Vec<VertexId>,
) {
    if current.len() + packing_bound(d, no_arc, deleted, true) >= best.len() {
        return;
    }
    match find_cycle(d, no_arc, deleted) {
        None => *best = current.clone(),
        Some(cycle) => {
            for &a in &cycle {
                let v = d.arc(a).0;
                deleted[v] = true;
                current.push(v);
                fvs_branch(d, deleted, no_arc, current, best);
                current.pop();
                deleted[v] = false;
            }
        }
    }
}

/// A minimum set of vertices intersecting every directed cycle, exact when
/// the vertices on cycles number at most `exact_limit` (flag true);
/// otherwise greedy (flag false). The result is ascending.
pub fn min_feedback_vertex_set(d: &DiGraph, exact_limit: usize) -> (Vec<VertexId>, bool) {
    let core = cyclic_core_arcs(d);
    let mut core_vertices = BTreeSet::new();
    for (a, &on) in core.iter().enumerate() {
        if on {
            let (u, v) = d.arc(a);
            core_vertices.insert(u);
            core_vertices.insert(v);
        }
    }
    let no_arc = vec![false; d.arc_count()];
    let mut greedy = Vec::new();
    let mut dead = vec![false; d.vertex_count()];
    while let Some(cycle) = find_cycle(d, &no_arc, &dead) {
        let v = cycle
            .iter()
            .map(|&a| d.arc(a).0)
            .min()
            .expect("cycles are nonempty");
        dead[v] = true;
        greedy.push(v);
    }
    greedy.sort_unstable();
    if core_vertices.len() > exact_limit {
        return (greedy, false);
    }
    let mut best = greedy;
    let mut deleted = vec![false; d.vertex_count()];
    let mut current = Vec::new();
    fvs_branch(d, &mut deleted, &no_arc, &mut current, &mut best);
    best.sort_unstable();
    (best, true)
}

/// Every simple directed cycle, as arc lists in traversal order starting at
/// the cycle's smallest vertex. Parallel arcs yield distinct cycles.
pub fn simple_cycles(d: &DiGraph) -> Vec<Vec<ArcId>> {
    fn go(
        d: &DiGraph,
        start: VertexId,
        v: VertexId,
        on_path: &mut [bool],
        path: &mut Vec<ArcId>,
        out: &mut Vec<Vec<ArcId>>,
    ) {
        for &a in d.out_arcs(v) {
            let w = d.arc(a).1;
            if w == start {
                let mut cycle = path.clone();
                cycle.push(a);
                out.push(cycle);
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(a);
                go(d, start, w, on_path, path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let n = d.vertex_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for start in 0..n {
        go(d, start, start, &mut on_path, &mut path, &mut out);
    }
    out
}

fn cycle_vertices(cycles: &[Vec<ArcId>], d: &DiGraph) -> Vec<BTreeSet<VertexId>> {
    cycles
        .iter()
        .map(|c| c.iter().map(|&a| d.arc(a).0).collect())
        .collect()
}

fn pack_branch(
    d: &DiGraph,
    cycles: &[Vec<ArcId>],
    vsets: &[BTreeSet<VertexId>],
    idx: usize,
    used: &mut [bool],
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if current.len() + (cycles.len() - idx) <= best.len() {
        return;
    }
    if idx == cycles.len() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if vsets[idx].iter().all(|&v| !used[v]) {
        for &v in &vsets[idx] {
            used[v] = true;
        }
        current.push(idx);
        pack_branch(d, cycles, vsets, idx + 1, used, current, best);
        current.pop();
        for &v in &vsets[idx] {
            used[v] = false;
        }
    }
    pack_branch(d, cycles, vsets, idx + 1, used, current, best);
}

/// A maximum family of pairwise vertex-disjoint directed cycles, exact when
/// the cyclic core has at most `exact_limit` arcs (flag true); otherwise a
/// greedy packing (flag false).
pub fn max_disjoint_cycles(d: &DiGraph, exact_limit: usize) -> (Vec<Vec<ArcId>>, bool) {
    let core = cyclic_core_arcs(d);
    let core_size = core.iter().filter(|&&x| x).count();
    if core_size > exact_limit {
        let mut dead = vec![false; d.vertex_count()];
        let no_arc = vec![false; d.arc_count()];
        let mut out = Vec::new();
        while let Some(cycle) = find_cycle(d, &no_arc, &dead) {
            for &a in &cycle {
                dead[d.arc(a).0] = true;
            }
            out.push(cycle);
        }
        return (out, false);
    }
    let mut cycles = simple_cycles(d);
    cycles.sort_by_key(|c| (c.len(), c.clone()));
    let vsets = cycle_vertices(&cycles, d);
    let mut used = vec![false; d.vertex_count()];
    let mut current = Vec::new();
    let mut best = Vec::new();
    pack_branch(d, &cycles, &vsets, 0, &mut used, &mut current, &mut best);
    (best.iter().map(|&i| cycles[i].clone()).collect(), true)
}

fn support_lambda_at_least(
    d: &DiGraph,
    in_support: &[bool],
    r: VertexId,
    s: VertexId,
    k: usize,
) -> bool {
    let arcs: Vec<(VertexId, VertexId)> = d
        .arcs()
        .iter()
        .zip(in_support)
        .filter(|(_, &keep)| keep)
        .map(|(&a, _)| a)
        .collect();
    let sub = DiGraph::new(d.vertex_count(), arcs).expect("sub-digraph of a valid digraph");
    lambda_at_least(&sub, r, s, k).expect("r and s are a valid pair")
}

/// An inclusionwise minimal arc set carrying `k` arc-disjoint `r`-to-`s`
/// paths: extract an integral `k`-flow, cancel flow cycles so the support is
/// acyclic, then drop any arc whose removal keeps `k` paths within the
/// support (ascending, to fixpoint), and decompose by repeatedly walking the
/// smallest unused support arc.
pub fn minimal_flow_support(
    d: &DiGraph,
    r: VertexId,
    s: VertexId,
    k: usize,
) -> Result<FlowSupport, StructureError> {
    let found = lambda(d, r, s)?;
    if found < k {
        return Err(StructureError::InsufficientConnectivity { required: k, found });
    }
    let mut in_support = k_flow_arcs(d, r, s, k).expect("connectivity checked above");
    // Cancel circulations: any cycle inside the support carries removable
    // flow, and removing it keeps the flow value.
    loop {
        let dead: Vec<bool> = in_support.iter().map(|&x| !x).collect();
        let none = vec![false; d.vertex_count()];
        match find_cycle(d, &dead, &none) {
            Some(cycle) => {
                for &a in &cycle {
                    in_support[a] = false;
                }
            }
            None => break,
        }
    }
    // Minimality trim. An acyclic saturated unit flow is already minimal,
    // so this loop is expected not to fire; it stays as the contract's
    // stated fixpoint.
    loop {
        let mut changed = false;
        for a in 0..d.arc_count() {
            if !in_support[a] {
                continue;
            }
            in_support[a] = false;
            if support_lambda_at_least(d, &in_support, r, s, k) {
                changed = true;
            } else {
                in_support[a] = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut used = vec![false; d.arc_count()];
    let mut decomposition = Vec::with_capacity(k);
    for _ in 0..k {
        let mut path = Vec::new();
        let mut cur = r;
        while cur != s {
            let a = d
                .out_arcs(cur)
                .iter()
                .copied()
                .find(|&a| in_support[a] && !used[a])
                .expect("support carries k arc-disjoint paths");
            used[a] = true;
            path.push(a);
            cur = d.arc(a).1;
        }
        decomposition.push(path);
    }
    let arcs: Vec<ArcId> = (0..d.arc_count()).filter(|&a| in_support[a]).collect();
    let covered = decomposition.iter().flatten().count();
    assert_eq!(covered, arcs.len(), "decomposition must cover the support");
    Ok(FlowSupport {
        terminal: s,
        arcs,
        decomposition,
    })
}

/// Checks that the arcs form a simple directed cycle and returns its vertex
/// set (the arc tails).
fn check_cycle(d: &DiGraph, cycle: &[ArcId]) -> Result<BTreeSet<VertexId>, StructureError> {
    if cycle.is_empty() {
        return Err(StructureError::CycleInvalid {
            reason: "empty arc list".into(),
        });
    }
    for &a in cycle {
        if a >= d.arc_count() {
            return Err(StructureError::CycleInvalid {
                reason: format!("arc {a} out of range"),
            });
        }
    }
    let mut seen = BTreeSet::new();
    for window in cycle.windows(2) {
        if d.arc(window[0]).1 != d.arc(window[1]).0 {
            return Err(StructureError::CycleInvalid {
                reason: format!("arcs {} and {} do not chain", window[0], window[1]),
            });
        }
    }
    let last = *cycle.last().expect("nonempty");
    if d.arc(last).1 != d.arc(cycle[0]).0 {
        return Err(StructureError::CycleInvalid {
            reason: "walk does not close".into(),
        });
    }
    for &a in cycle {
        let v = d.arc(a).0;
        if !seen.insert(v) {
            return Err(StructureError::CycleInvalid {
                reason: format!("vertex {v} repeats"),
            });
        }
    }
    Ok(seen)
}

/// True iff some tight cut properly intersects the cycle, i.e. some arc of
/// the cycle lies in a minimum `r`-`s` cut. Requires the connectivity to
/// equal `k` exactly.
pub fn is_s_essential(
    d: &DiGraph,
    r: VertexId,
    s: VertexId,
    cycle: &[ArcId],
    k: usize,
) -> Result<bool, StructureError> {
    let found = lambda(d, r, s)?;
    if found != k {
        return Err(StructureError::LambdaNotExact { required: k, found });
    }
    check_cycle(d, cycle)?;
    for &a in cycle {
        if arc_in_some_min_cut(d, r, s, a, k)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Searches, for each cycle in the given order, a tight cut containing all
/// earlier cycles, avoiding all later cycles, and properly intersecting the
/// cycle itself. Each cut is found by forcing, per cycle arc `(u, v)`, the
/// earlier cycles and `u` inside and the later cycles and `v` outside, and
/// accepting a constrained minimum cut of value exactly `k`. Returns `None`
/// when some position admits no such cut.
pub fn find_s_ordered_witness(
    d: &DiGraph,
    r: VertexId,
    s: VertexId,
    cycles: &[Vec<ArcId>],
    k: usize,
) -> Result<Option<OrderedCycleWitness>, StructureError> {
    let found = lambda(d, r, s)?;
    if found != k {
        return Err(StructureError::LambdaNotExact { required: k, found });
    }
    let vsets: Vec<BTreeSet<VertexId>> = cycles
        .iter()
        .map(|c| check_cycle(d, c))
        .collect::<Result<_, _>>()?;
    for i in 0..vsets.len() {
        for j in (i + 1)..vsets.len() {
            if let Some(&v) = vsets[i].intersection(&vsets[j]).next() {
                return Err(StructureError::CyclesNotDisjoint { vertex: v });
            }
        }
    }
    let mut cuts = Vec::with_capacity(cycles.len());
    for i in 0..cycles.len() {
        let earlier: Vec<VertexId> = vsets[..i].iter().flatten().copied().collect();
        let later: Vec<VertexId> = vsets[i + 1..].iter().flatten().copied().collect();
        let mut cut = None;
        for &a in &cycles[i] {
            let (u, v) = d.arc(a);
            let mut inside = earlier.clone();
            inside.push(u);
            let mut outside = later.clone();
            outside.push(v);
            match constrained_min_cut(d, r, s, &inside, &outside) {
                Ok(cert) if cert.out_degree == k => {
                    cut = Some(cert);
                    break;
                }
                Ok(_) => {}
                Err(ConnectivityError::ConstraintConflict { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
        match cut {
            Some(c) => cuts.push(c),
            None => return Ok(None),
        }
    }
    // Re-validate the witness invariants before returning it.
    for (i, cert) in cuts.iter().enumerate() {
        assert_eq!(cert.out_degree, k, "witness cuts must be tight");
        let side: BTreeSet<VertexId> = cert.side.iter().copied().collect();
        for (j, vs) in vsets.iter().enumerate() {
            if j < i {
                assert!(vs.iter().all(|v| side.contains(v)));
            } else if j > i {
                assert!(vs.iter().all(|v| !side.contains(v)));
            } else {
                assert!(vs.iter().any(|v| side.contains(v)));
                assert!(vs.iter().any(|v| !side.contains(v)));
            }
        }
    }
    Ok(Some(OrderedCycleWitness {
        cycles: cycles.to_vec(),
        cuts,
    }))
}

/// A violation of the minimality properties relating directed cycles to
/// minimal flow supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalityViolation {
    /// Some cycle arc lies in no terminal's support.
    Uncovered { cycle: Vec<ArcId> },
    /// One terminal's support contains the whole cycle.
    Swallowed {
        cycle: Vec<ArcId>,
        terminal: VertexId,
    },
}

/// For a minimally connected digraph, every directed cycle must be covered
/// by the union of the terminals' minimal flow supports, and no single
/// support may contain a whole cycle. Returns all violations (expected none
/// when the caller's minimality guarantee holds).
pub fn check_lemma_minimality(
    d: &DiGraph,
    root: VertexId,
    terminals: &[VertexId],
    k: usize,
) -> Result<Vec<MinimalityViolation>, StructureError> {
    let supports: Vec<FlowSupport> = terminals
        .iter()
        .map(|&s| minimal_flow_support(d, root, s, k))
        .collect::<Result<_, _>>()?;
    let mut in_union = vec![false; d.arc_count()];
    let masks: Vec<Vec<bool>> = supports
        .iter()
        .map(|sup| {
            let mut mask = vec![false; d.arc_count()];
            for &a in &sup.arcs {
                mask[a] = true;
                in_union[a] = true;
            }
            mask
        })
        .collect();
    let mut violations = Vec::new();
    for cycle in simple_cycles(d) {
        if cycle.iter().any(|&a| !in_union[a]) {
            violations.push(MinimalityViolation::Uncovered {
                cycle: cycle.clone(),
            });
        }
        for (sup, mask) in supports.iter().zip(&masks) {
            if cycle.iter().all(|&a| mask[a]) {
                violations.push(MinimalityViolation::Swallowed {
                    cycle: cycle.clone(),
                    terminal: sup.terminal,
                });
            }
        }
    }
    Ok(violations)
}

/// Outcome of sampling tight-cut pairs: how many distinct tight cuts the
/// constrained sampler found, how many pairs were checked, and every pair
/// whose union or intersection failed to be tight (expected none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub cuts_found: usize,
    pub pairs_checked: usize,
    pub violations: Vec<(Vec<VertexId>, Vec<VertexId>)>,
}

fn side_out_degree(d: &DiGraph, inside: &[bool]) -> usize {
    d.arcs()
        .iter()
        .filter(|&&(u, v)| inside[u] && !inside[v])
        .count()
}

/// Samples tight `s`-cuts by running constrained minimum cuts from random
/// vertex constraints, then checks that union and intersection of every
/// sampled pair are tight again. `samples` bounds both the constraint draws
/// and the number of pairs checked; the seed fixes the draw sequence.
pub fn tight_cut_lattice_check(
    d: &DiGraph,
    r: VertexId,
    s: VertexId,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<LatticeReport, StructureError> {
    let found = lambda(d, r, s)?;
    if found != k {
        return Err(StructureError::LambdaNotExact { required: k, found });
    }
    let n = d.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts: Vec<Vec<bool>> = Vec::new();
    for _ in 0..samples {
        let mut inside = vec![r];
        let mut outside = vec![s];
        for v in 0..n {
            if v == r || v == s {
                continue;
            }
            match rng.random_range(0..4u8) {
                0 => inside.push(v),
                1 => outside.push(v),
                _ => {}
            }
        }
        if let Ok(cert) = constrained_min_cut(d, r, s, &inside, &outside) {
            if cert.out_degree == k {
                let mut mask = vec![false; n];
                for &v in &cert.side {
                    mask[v] = true;
                }
                if !cuts.contains(&mask) {
                    cuts.push(mask);
                }
            }
        }
    }
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    'outer: for i in 0..cuts.len() {
        for j in (i + 1)..cuts.len() {
            if pairs_checked >= samples {
                break 'outer;
            }
            pairs_checked += 1;
            let union: Vec<bool> = cuts[i].iter().zip(&cuts[j]).map(|(&a, &b)| a | b).collect();
            let inter: Vec<bool> = cuts[i].iter().zip(&cuts[j]).map(|(&a, &b)| a & b).collect();
            if side_out_degree(d, &union) != k || side_out_degree(d, &inter) != k {
                let to_list = |mask: &[bool]| {
                    mask.iter()
                        .enumerate()
                        .filter(|(_, &m)| m)
                        .map(|(v, _)| v)
                        .collect::<Vec<_>>()
                };
                violations.push((to_list(&cuts[i]), to_list(&cuts[j])));
            }
        }
    }
    Ok(LatticeReport {
        cuts_found: cuts.len(),
        pairs_checked,
        violations,
    })
}
