//! Satisfiability-to-orientation generators and witness converters.
//!
//! Three formula families are supported: not-all-equal formulas over
//! nonnegated variables, two-literal CNF formulas with a global
//! satisfaction target, and 3-colored two-literal CNF formulas with
//! per-class targets. Each generator emits a fixed, documented vertex and
//! edge layout, so satisfying assignments translate mechanically into
//! feasible orientations and feasible orientations translate back into
//! satisfying assignments. A desk-scale exhaustive satisfiability search
//! doubles as the testing oracle for all of them.

use thiserror::Error;

use crate::connectivity::{verify, SteinerInstance, Verdict};
use crate::graph::{
    build_multigraph, Dir, EdgeId, Orientation, PartialDir, PartialOrientation, VertexId,
};
use crate::solver::{solve_with_preoriented, SolveResult};

/// Upper bound on variable count for the exhaustive satisfiability search.
pub const BRUTE_FORCE_VARIABLE_LIMIT: usize = 20;

/// A rejected formula, coloring, or threshold vector.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("clause {clause} uses variable {variable} but only {variable_count} variables exist")]
    VariableOutOfRange {
        clause: usize,
        variable: usize,
        variable_count: usize,
    },
    #[error("clause {clause} carries color {color}; colors must lie in 1..=3")]
    ColorOutOfRange { clause: usize, color: usize },
    #[error("coloring covers {got} clauses but the formula has {expected}")]
    ColoringSize { got: usize, expected: usize },
    #[error("clauses {first} and {second} share variable {variable} yet both have color {color}")]
    ImproperColoring {
        first: usize,
        second: usize,
        variable: usize,
        color: usize,
    },
    #[error("color class {color} has {class_size} clauses, below its target {threshold}")]
    ThresholdExceedsClass {
        color: usize,
        threshold: usize,
        class_size: usize,
    },
}

/// A rejected generator or converter call.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum HardnessError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("assignment covers {got} variables but {expected} are needed")]
    AssignmentSize { got: usize, expected: usize },
    #[error("orientation covers {got} edges but the instance has {expected}")]
    OrientationSize { got: usize, expected: usize },
    #[error("clause {clause} has all three variables equal under the assignment")]
    ClauseViolated { clause: usize },
    #[error("color class {color} reaches only {satisfied} satisfied clauses, below its target {threshold}")]
    ThresholdMissed {
        color: usize,
        satisfied: usize,
        threshold: usize,
    },
    #[error("orientation is not a feasible witness: a cut separating terminal {separated_terminal} has out-degree {out_degree}, below {required}")]
    WitnessInvalid {
        separated_terminal: VertexId,
        out_degree: usize,
        required: usize,
    },
    #[error("edge {edge} is oriented into the preoriented set y")]
    BoundaryNotRespected { edge: EdgeId },
    #[error("the instance requires k = {k}, but this lift starts from k = 2")]
    NotK2 { k: usize },
    #[error("terminal boundary identity fails: d(S) + |E[S]| = {found}, expected {required}")]
    SideCondition { found: usize, required: usize },
    #[error("lift target {k_target} is below 2")]
    KTargetTooSmall { k_target: usize },
    #[error("clause {clause} contains variable {variable} twice")]
    RepeatedVariable { clause: usize, variable: usize },
    #[error("a positive requirement needs at least one clause")]
    EmptyClauseSet,
    #[error("the preoriented form needs exactly 3 terminals, found {got}")]
    TerminalCount { got: usize },
    #[error("vertex {vertex} in y is out of range for {vertex_count} vertices")]
    YOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("vertex {vertex} is listed in y more than once")]
    DuplicateY { vertex: VertexId },
    #[error("the root {root} must belong to y")]
    RootNotInY { root: VertexId },
    #[error("terminal {vertex} may not belong to y")]
    TerminalInY { vertex: VertexId },
    #[error("cannot pad to {t_target} terminals, the instance already has {t}")]
    PadBelowCurrent { t_target: usize, t: usize },
    #[error("{variable_count} variables exceed the exhaustive-search limit {limit}")]
    TooManyVariables { variable_count: usize, limit: usize },
}

/// A total truth assignment, indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    /// Value of the given variable. Panics when out of range.
    pub fn value(&self, variable: usize) -> bool {
        self.values[variable]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn variable_count(&self) -> usize {
        self.values.len()
    }
}

/// A formula whose clauses each list exactly three nonnegated variables; a
/// clause is satisfied when its variables do not all carry the same value.
/// A clause may repeat a variable, which only makes it harder to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaeFormula {
    variable_count: usize,
    clauses: Vec<[usize; 3]>,
}

impl NaeFormula {
    /// Validates variable ranges and assembles the formula.
    pub fn new(
        variable_count: usize,
        clauses: Vec<[usize; 3]>,
    ) -> Result<NaeFormula, FormulaError> {
        for (clause, vars) in clauses.iter().enumerate() {
            for &variable in vars {
                if variable >= variable_count {
                    return Err(FormulaError::VariableOutOfRange {
                        clause,
                        variable,
                        variable_count,
                    });
                }
            }
        }
        Ok(NaeFormula {
            variable_count,
            clauses,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// First clause whose three variables all agree under `a`, if any.
    /// Panics when `a` is shorter than the formula's variable range.
    pub fn violated_clause(&self, a: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| a.value(c[0]) == a.value(c[1]) && a.value(c[1]) == a.value(c[2]))
    }
}

/// A possibly negated variable occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal {
    pub variable: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(variable: usize) -> Literal {
        Literal {
            variable,
            negated: false,
        }
    }

    pub fn neg(variable: usize) -> Literal {
        Literal {
            variable,
            negated: true,
        }
    }

    /// Truth value under the assignment.
    pub fn eval(&self, a: &Assignment) -> bool {
        a.value(self.variable) != self.negated
    }
}

/// A CNF formula with exactly two literals per clause and a target: an
/// assignment wins when it satisfies at least `k` clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCnf {
    variable_count: usize,
    clauses: Vec<[Literal; 2]>,
    k: usize,
}

impl TwoCnf {
    /// Validates literal ranges and assembles the formula.
    pub fn new(
        variable_count: usize,
        clauses: Vec<[Literal; 2]>,
        k: usize,
    ) -> Result<TwoCnf, FormulaError> {
        for (clause, lits) in clauses.iter().enumerate() {
            for lit in lits {
                if lit.variable >= variable_count {
                    return Err(FormulaError::VariableOutOfRange {
                        clause,
                        variable: lit.variable,
                        variable_count,
                    });
                }
            }
        }
        Ok(TwoCnf {
            variable_count,
            clauses,
            k,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[[Literal; 2]] {
        &self.clauses
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of clauses satisfied under `a`.
    pub fn satisfied_count(&self, a: &Assignment) -> usize {
        self.clauses
            .iter()
            .filter(|c| c[0].eval(a) || c[1].eval(a))
            .count()
    }
}

/// A two-literal CNF whose clauses carry colors in `1..=3` such that
/// same-colored clauses never share a variable, plus a per-color target:
/// an assignment wins when it satisfies at least `thresholds[i-1]` clauses
/// of each color `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTwoCnf {
    variable_count: usize,
    clauses: Vec<[Literal; 2]>,
    coloring: Vec<usize>,
    thresholds: [usize; 3],
}

impl ColoredTwoCnf {
    /// Validates ranges, the coloring property, and the thresholds.
    pub fn new(
        variable_count: usize,
        clauses: Vec<[Literal; 2]>,
        coloring: Vec<usize>,
        thresholds: [usize; 3],
    ) -> Result<ColoredTwoCnf, FormulaError> {
        for (clause, lits) in clauses.iter().enumerate() {
            for lit in lits {
                if lit.variable >= variable_count {
                    return Err(FormulaError::VariableOutOfRange {
                        clause,
                        variable: lit.variable,
                        variable_count,
                    });
                }
            }
        }
        if coloring.len() != clauses.len() {
            return Err(FormulaError::ColoringSize {
                got: coloring.len(),
                expected: clauses.len(),
            });
        }
        for (clause, &color) in coloring.iter().enumerate() {
            if !(1..=3).contains(&color) {
                return Err(FormulaError::ColorOutOfRange { clause, color });
            }
        }
        for first in 0..clauses.len() {
            for second in first + 1..clauses.len() {
                if coloring[first] != coloring[second] {
                    continue;
                }
                for a in clauses[first] {
                    for b in clauses[second] {
                        if a.variable == b.variable {
                            return Err(FormulaError::ImproperColoring {
                                first,
                                second,
                                variable: a.variable,
                                color: coloring[first],
                            });
                        }
                    }
                }
            }
        }
        let mut class_sizes = [0usize; 3];
        for &color in &coloring {
            class_sizes[color - 1] += 1;
        }
        for color in 1..=3 {
            if thresholds[color - 1] > class_sizes[color - 1] {
                return Err(FormulaError::ThresholdExceedsClass {
                    color,
                    threshold: thresholds[color - 1],
                    class_size: class_sizes[color - 1],
                });
            }
        }
        Ok(ColoredTwoCnf {
            variable_count,
            clauses,
            coloring,
            thresholds,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[[Literal; 2]] {
        &self.clauses
    }

    pub fn coloring(&self) -> &[usize] {
        &self.coloring
    }

    pub fn thresholds(&self) -> [usize; 3] {
        self.thresholds
    }

    /// Clause counts per color.
    pub fn class_sizes(&self) -> [usize; 3] {
        let mut sizes = [0usize; 3];
        for &color in &self.coloring {
            sizes[color - 1] += 1;
        }
        sizes
    }

    /// Satisfied clause counts per color under `a`.
    pub fn satisfied_per_class(&self, a: &Assignment) -> [usize; 3] {
        let mut sat = [0usize; 3];
        for (c, lits) in self.clauses.iter().enumerate() {
            if lits[0].eval(a) || lits[1].eval(a) {
                sat[self.coloring[c] - 1] += 1;
            }
        }
        sat
    }

    /// Whether every color class reaches its target under `a`.
    pub fn meets_thresholds(&self, a: &Assignment) -> bool {
        let sat = self.satisfied_per_class(a);
        (0..3).all(|i| sat[i] >= self.thresholds[i])
    }
}

/// Any of the three supported formula shapes, for uniform oracle dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Nae(NaeFormula),
    TwoCnf(TwoCnf),
    Colored(ColoredTwoCnf),
}

impl Formula {
    pub fn variable_count(&self) -> usize {
        match self {
            Formula::Nae(f) => f.variable_count(),
            Formula::TwoCnf(f) => f.variable_count(),
            Formula::Colored(f) => f.variable_count(),
        }
    }

    /// Whether `a` wins under the family's own satisfaction rule.
    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        match self {
            Formula::Nae(f) => f.violated_clause(a).is_none(),
            Formula::TwoCnf(f) => f.satisfied_count(a) >= f.k(),
            Formula::Colored(f) => f.meets_thresholds(a),
        }
    }
}

/// Exhaustive satisfiability search: returns the first winning assignment
/// in binary counting order (variable `x` is bit `x`), or `None`.
pub fn brute_force_sat(f: &Formula) -> Result<Option<Assignment>, HardnessError> {
    let variable_count = f.variable_count();
    if variable_count > BRUTE_FORCE_VARIABLE_LIMIT {
        return Err(HardnessError::TooManyVariables {
            variable_count,
            limit: BRUTE_FORCE_VARIABLE_LIMIT,
        });
    }
    for mask in 0u64..(1u64 << variable_count) {
        let a = Assignment::new((0..variable_count).map(|x| mask >> x & 1 == 1).collect());
        if f.is_satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Verifies `o` against `inst`, mapping a violation to a typed error.
fn require_witness(inst: &SteinerInstance, o: &Orientation) -> Result<(), HardnessError> {
    if o.len() != inst.graph().edge_count() {
        return Err(HardnessError::OrientationSize {
            got: o.len(),
            expected: inst.graph().edge_count(),
        });
    }
    match verify(inst, o) {
        Verdict::Ok => Ok(()),
        Verdict::Violated(cut) => Err(HardnessError::WitnessInvalid {
            separated_terminal: cut.separated_terminal,
            out_degree: cut.out_degree,
            required: inst.k(),
        }),
    }
}

/// Number of edges with at least one endpoint in the terminal set, which
/// equals `d(S) + |E[S]|`.
fn terminal_boundary_sum(inst: &SteinerInstance) -> usize {
    let mut in_s = vec![false; inst.graph().vertex_count()];
    for &s in inst.terminals() {
        in_s[s] = true;
    }
    inst.graph()
        .edges()
        .iter()
        .filter(|&&(u, v)| in_s[u] || in_s[v])
        .count()
}

/// Vertex and edge layout of the not-all-equal generator.
///
/// Vertices: root `0`; feeders `z_i = i` for sides `i in 1..=2`; variable
/// gates `u(x, i) = 3 + 2x + (i-1)`; variable terminals
/// `s_var(x) = 3 + 2X + x`; clause slot terminals
/// `slot(c, i, j) = 3 + 3X + 6c + 3(i-1) + j` for slot `j in 0..3`.
///
/// Edge blocks, in order: the two root-feeder edges; feeder-gate edges
/// (side 1 for all variables, then side 2); one gate-gate edge per
/// variable; gate-terminal edges (side 1, then side 2); gate-slot edges
/// (side outer, clause, slot); slot triangles (side outer, clause) listed
/// as the pairs `(0,1)`, `(0,2)`, `(1,2)`.
struct MnaeLayout {
    x: usize,
    m: usize,
}

impl MnaeLayout {
    fn of(f: &NaeFormula) -> MnaeLayout {
        MnaeLayout {
            x: f.variable_count(),
            m: f.clauses().len(),
        }
    }

    fn z(&self, i: usize) -> VertexId {
        i
    }

    fn u(&self, x: usize, i: usize) -> VertexId {
        3 + 2 * x + (i - 1)
    }

    fn s_var(&self, x: usize) -> VertexId {
        3 + 2 * self.x + x
    }

    fn slot(&self, c: usize, i: usize, j: usize) -> VertexId {
        3 + 3 * self.x + 6 * c + 3 * (i - 1) + j
    }

    fn vertex_count(&self) -> usize {
        3 + 3 * self.x + 6 * self.m
    }

    fn edge_count(&self) -> usize {
        2 + 5 * self.x + 12 * self.m
    }

    /// Edge id of the gate-gate edge of variable `x` (third block).
    fn variable_edge(&self, x: usize) -> EdgeId {
        2 + 2 * self.x + x
    }
}

/// Encodes a not-all-equal formula as an orientation instance with
/// requirement 2: the formula is satisfiable exactly when the instance is
/// feasible. Every vertex from `3 + 2X` upward is a terminal. The terminal
/// boundary identity `d(S) + |E[S]| = 2|S|` is asserted on the result.
pub fn gen_mnae_to_k2(f: &NaeFormula) -> SteinerInstance {
    let lay = MnaeLayout::of(f);
    let mut edges = Vec::with_capacity(lay.edge_count());
    edges.push((0, lay.z(1)));
    edges.push((0, lay.z(2)));
    for i in 1..=2 {
        for x in 0..lay.x {
            edges.push((lay.z(i), lay.u(x, i)));
        }
    }
    for x in 0..lay.x {
        edges.push((lay.u(x, 1), lay.u(x, 2)));
    }
    for i in 1..=2 {
        for x in 0..lay.x {
            edges.push((lay.u(x, i), lay.s_var(x)));
        }
    }
    for i in 1..=2 {
        for (c, clause) in f.clauses().iter().enumerate() {
            for (j, &x) in clause.iter().enumerate() {
                edges.push((lay.u(x, i), lay.slot(c, i, j)));
            }
        }
    }
    for i in 1..=2 {
        for c in 0..lay.m {
            let t = [lay.slot(c, i, 0), lay.slot(c, i, 1), lay.slot(c, i, 2)];
            edges.push((t[0], t[1]));
            edges.push((t[0], t[2]));
            edges.push((t[1], t[2]));
        }
    }
    debug_assert_eq!(edges.len(), lay.edge_count());
    let graph = build_multigraph(lay.vertex_count(), &edges)
        .expect("layout ids lie below the vertex count");
    let terminals: Vec<VertexId> = (3 + 2 * lay.x..lay.vertex_count()).collect();
    let inst = SteinerInstance::new(graph, 0, terminals, 2)
        .expect("the root is 0 and terminal ids are distinct");
    assert_eq!(
        terminal_boundary_sum(&inst),
        2 * inst.terminals().len(),
        "the generator must meet the terminal boundary identity"
    );
    inst
}

/// Turns a not-all-equal-satisfying assignment into a feasible orientation
/// of the generated instance: everything flows from the root through the
/// feeders and gates into the terminals, each slot triangle is directed
/// cyclically, and the gate-gate edge of variable `x` points from side 1
/// to side 2 exactly when `a(x)` is true.
pub fn nae_assignment_to_orientation(
    f: &NaeFormula,
    a: &Assignment,
) -> Result<Orientation, HardnessError> {
    if a.variable_count() != f.variable_count() {
        return Err(HardnessError::AssignmentSize {
            got: a.variable_count(),
            expected: f.variable_count(),
        });
    }
    if let Some(clause) = f.violated_clause(a) {
        return Err(HardnessError::ClauseViolated { clause });
    }
    let lay = MnaeLayout::of(f);
    let mut dirs = Vec::with_capacity(lay.edge_count());
    dirs.extend([Dir::AsListed; 2]);
    dirs.extend(std::iter::repeat(Dir::AsListed).take(2 * lay.x));
    for x in 0..lay.x {
        dirs.push(if a.value(x) {
            Dir::AsListed
        } else {
            Dir::Reversed
        });
    }
    dirs.extend(std::iter::repeat(Dir::AsListed).take(2 * lay.x));
    dirs.extend(std::iter::repeat(Dir::AsListed).take(6 * lay.m));
    for _ in 0..2 * lay.m {
        dirs.extend([Dir::AsListed, Dir::Reversed, Dir::AsListed]);
    }
    let o = Orientation::new(dirs);
    let inst = gen_mnae_to_k2(f);
    assert!(
        matches!(verify(&inst, &o), Verdict::Ok),
        "a not-all-equal-satisfying assignment always yields a feasible orientation"
    );
    Ok(o)
}

/// Reads a satisfying assignment off a feasible orientation of the
/// generated instance: `a(x)` is true exactly when the gate-gate edge of
/// variable `x` points from side 1 to side 2.
pub fn orientation_to_nae_assignment(
    f: &NaeFormula,
    o: &Orientation,
) -> Result<Assignment, HardnessError> {
    let inst = gen_mnae_to_k2(f);
    require_witness(&inst, o)?;
    let lay = MnaeLayout::of(f);
    let values = (0..lay.x)
        .map(|x| o.dir(lay.variable_edge(x)) == Dir::AsListed)
        .collect();
    let a = Assignment::new(values);
    assert!(
        f.violated_clause(&a).is_none(),
        "a feasible witness always induces a not-all-equal assignment"
    );
    Ok(a)
}

/// Raises the requirement of a 2-instance that meets the terminal boundary
/// identity `d(S) + |E[S]| = 2|S|`: adds `k_target - 2` new vertices, each
/// joined to the root and to every terminal, preserving feasibility. A
/// target of 2 returns the instance unchanged.
pub fn lift_k(inst: &SteinerInstance, k_target: usize) -> Result<SteinerInstance, HardnessError> {
    if inst.k() != 2 {
        return Err(HardnessError::NotK2 { k: inst.k() });
    }
    let required = 2 * inst.terminals().len();
    let found = terminal_boundary_sum(inst);
    if found != required {
        return Err(HardnessError::SideCondition { found, required });
    }
    if k_target < 2 {
        return Err(HardnessError::KTargetTooSmall { k_target });
    }
    if k_target == 2 {
        return Ok(inst.clone());
    }
    let n = inst.graph().vertex_count();
    let mut edges = inst.graph().edges().to_vec();
    for w in n..n + (k_target - 2) {
        edges.push((w, inst.root()));
        for &s in inst.terminals() {
            edges.push((w, s));
        }
    }
    let graph = build_multigraph(n + (k_target - 2), &edges)
        .expect("appended ids lie below the new vertex count");
    SteinerInstance::new(graph, inst.root(), inst.terminals().to_vec(), k_target)
        .map_err(|_| unreachable!("root and terminals were already valid"))
}

/// Extends a feasible 2-witness across [`lift_k`]: each added vertex
/// receives flow from the root and passes it to every terminal.
pub fn lift_k_orientation(
    inst: &SteinerInstance,
    o: &Orientation,
    k_target: usize,
) -> Result<Orientation, HardnessError> {
    let lifted = lift_k(inst, k_target)?;
    require_witness(inst, o)?;
    let mut dirs = o.dirs().to_vec();
    for _ in 0..k_target.saturating_sub(2) {
        dirs.push(Dir::Reversed);
        dirs.extend(std::iter::repeat(Dir::AsListed).take(inst.terminals().len()));
    }
    let lifted_o = Orientation::new(dirs);
    assert!(
        matches!(verify(&lifted, &lifted_o), Verdict::Ok),
        "the extension of a feasible 2-witness stays feasible after lifting"
    );
    Ok(lifted_o)
}

/// Restricts a feasible witness of the lifted instance back to the
/// original edges; the restriction is again a feasible 2-witness.
pub fn restrict_lift_k_orientation(
    inst: &SteinerInstance,
    o_lifted: &Orientation,
    k_target: usize,
) -> Result<Orientation, HardnessError> {
    let lifted = lift_k(inst, k_target)?;
    require_witness(&lifted, o_lifted)?;
    let o = Orientation::new(o_lifted.dirs()[..inst.graph().edge_count()].to_vec());
    assert!(
        matches!(verify(inst, &o), Verdict::Ok),
        "the restriction of a lifted witness stays feasible"
    );
    Ok(o)
}

/// Copy bookkeeping for the chained clause rewriting: each variable `x`
/// with `m_x` occurrences receives `m_x` rounded up to even fresh copies,
/// laid out variable-major starting at `offsets[x]`.
struct CopyLayout {
    offsets: Vec<usize>,
    copy_counts: Vec<usize>,
    total: usize,
}

fn copy_layout(f: &TwoCnf) -> Result<CopyLayout, HardnessError> {
    let mut occurrences = vec![0usize; f.variable_count()];
    for (clause, lits) in f.clauses().iter().enumerate() {
        if lits[0].variable == lits[1].variable {
            return Err(HardnessError::RepeatedVariable {
                clause,
                variable: lits[0].variable,
            });
        }
        for lit in lits {
            occurrences[lit.variable] += 1;
        }
    }
    let copy_counts: Vec<usize> = occurrences.iter().map(|&m| m + (m & 1)).collect();
    let mut offsets = Vec::with_capacity(copy_counts.len());
    let mut total = 0;
    for &w in &copy_counts {
        offsets.push(total);
        total += w;
    }
    Ok(CopyLayout {
        offsets,
        copy_counts,
        total,
    })
}

/// Rewrites a two-literal CNF with target `k` into a colored one: the
/// `j`th occurrence of variable `x` becomes a fresh copy, and each
/// variable's copies are chained by cyclic implication clauses
/// `(copy_j or not copy_{j+1})` that force all copies equal. Chain clauses
/// alternate colors 1 and 2 by position and must all be satisfied;
/// rewritten clauses take color 3 with target `k`. Rejects clauses that
/// repeat a variable.
pub fn gen_max2sat_to_3col(f: &TwoCnf) -> Result<ColoredTwoCnf, HardnessError> {
    let lay = copy_layout(f)?;
    let mut clauses = Vec::new();
    let mut coloring = Vec::new();
    let mut seen = vec![0usize; f.variable_count()];
    for lits in f.clauses() {
        let rewritten = lits.map(|lit| {
            seen[lit.variable] += 1;
            Literal {
                variable: lay.offsets[lit.variable] + seen[lit.variable] - 1,
                negated: lit.negated,
            }
        });
        clauses.push(rewritten);
        coloring.push(3);
    }
    for x in 0..f.variable_count() {
        let w = lay.copy_counts[x];
        for j in 1..=w {
            clauses.push([
                Literal::pos(lay.offsets[x] + j - 1),
                Literal::neg(lay.offsets[x] + (j % w)),
            ]);
            coloring.push(if j % 2 == 1 { 1 } else { 2 });
        }
    }
    let half: usize = lay.copy_counts.iter().map(|w| w / 2).sum();
    ColoredTwoCnf::new(lay.total, clauses, coloring, [half, half, f.k()]).map_err(Into::into)
}

/// Replicates an assignment of the original variables onto all copies;
/// the result satisfies every chain clause.
pub fn expand_assignment_to_3col(f: &TwoCnf, a: &Assignment) -> Result<Assignment, HardnessError> {
    if a.variable_count() != f.variable_count() {
        return Err(HardnessError::AssignmentSize {
            got: a.variable_count(),
            expected: f.variable_count(),
        });
    }
    let lay = copy_layout(f)?;
    let mut values = Vec::with_capacity(lay.total);
    for x in 0..f.variable_count() {
        values.extend(std::iter::repeat(a.value(x)).take(lay.copy_counts[x]));
    }
    Ok(Assignment::new(values))
}

/// Reads the original assignment off the first copy of each variable;
/// variables with no occurrences default to false.
pub fn project_assignment_from_3col(
    f: &TwoCnf,
    a: &Assignment,
) -> Result<Assignment, HardnessError> {
    let lay = copy_layout(f)?;
    if a.variable_count() != lay.total {
        return Err(HardnessError::AssignmentSize {
            got: a.variable_count(),
            expected: lay.total,
        });
    }
    let values = (0..f.variable_count())
        .map(|x| lay.copy_counts[x] > 0 && a.value(lay.offsets[x]))
        .collect();
    Ok(Assignment::new(values))
}

/// An orientation instance with exactly three terminals plus a vertex set
/// `y` containing the root: deciding it means searching only orientations
/// in which every edge leaving `y` points away from `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifiedInstance {
    instance: SteinerInstance,
    y: Vec<VertexId>,
}

impl ModifiedInstance {
    /// Validates the shape; `y` is stored ascending.
    pub fn new(
        instance: SteinerInstance,
        mut y: Vec<VertexId>,
    ) -> Result<ModifiedInstance, HardnessError> {
        if instance.terminals().len() != 3 {
            return Err(HardnessError::TerminalCount {
                got: instance.terminals().len(),
            });
        }
        y.sort_unstable();
        let n = instance.graph().vertex_count();
        for pair in y.windows(2) {
            if pair[0] == pair[1] {
                return Err(HardnessError::DuplicateY { vertex: pair[0] });
            }
        }
        for &vertex in &y {
            if vertex >= n {
                return Err(HardnessError::YOutOfRange {
                    vertex,
                    vertex_count: n,
                });
            }
            if instance.is_terminal(vertex) {
                return Err(HardnessError::TerminalInY { vertex });
            }
        }
        if !y.contains(&instance.root()) {
            return Err(HardnessError::RootNotInY {
                root: instance.root(),
            });
        }
        Ok(ModifiedInstance { instance, y })
    }

    pub fn instance(&self) -> &SteinerInstance {
        &self.instance
    }

    pub fn y(&self) -> &[VertexId] {
        &self.y
    }

    fn in_y(&self) -> Vec<bool> {
        let mut in_y = vec![false; self.instance.graph().vertex_count()];
        for &v in &self.y {
            in_y[v] = true;
        }
        in_y
    }

    /// Edges with exactly one endpoint in `y`, ascending.
    pub fn boundary_edges(&self) -> Vec<EdgeId> {
        let in_y = self.in_y();
        (0..self.instance.graph().edge_count())
            .filter(|&e| {
                let (u, v) = self.instance.graph().endpoints(e);
                in_y[u] != in_y[v]
            })
            .collect()
    }

    /// Partial orientation fixing every boundary edge away from `y` and
    /// leaving all other edges undecided.
    pub fn preorientation(&self) -> PartialOrientation {
        let in_y = self.in_y();
        let mut p = PartialOrientation::undecided(self.instance.graph().edge_count());
        for e in 0..self.instance.graph().edge_count() {
            let (u, v) = self.instance.graph().endpoints(e);
            if in_y[u] && !in_y[v] {
                p.set(e, PartialDir::AsListed);
            } else if in_y[v] && !in_y[u] {
                p.set(e, PartialDir::Reversed);
            }
        }
        p
    }
}

/// Decides the instance over orientations that respect the preoriented
/// boundary of `y`.
pub fn decide_modified(mi: &ModifiedInstance, budget: u64) -> SolveResult {
    solve_with_preoriented(mi.instance(), &mi.preorientation(), budget)
}

/// Checks that `o` orients every boundary edge of `y` away from `y`.
fn require_boundary_respected(mi: &ModifiedInstance, o: &Orientation) -> Result<(), HardnessError> {
    if o.len() != mi.instance().graph().edge_count() {
        return Err(HardnessError::OrientationSize {
            got: o.len(),
            expected: mi.instance().graph().edge_count(),
        });
    }
    let p = mi.preorientation();
    for e in 0..o.len() {
        if let Some(d) = p.get(e).decided() {
            if o.dir(e) != d {
                return Err(HardnessError::BoundaryNotRespected { edge: e });
            }
        }
    }
    Ok(())
}

/// Vertex and edge layout of the colored-CNF generator.
///
/// Vertices: root `0`; literal gates `u_lit = 1 + 2x` (positive) and
/// `2 + 2x` (negated); clause hubs `v(c) = 1 + 2X + c`; terminals
/// `s(i) = 1 + 2X + M + (i-1)`.
///
/// Edge blocks, in order: root-gate edges (variable-major, positive
/// first); one gate-gate edge per variable; two parallel gate-hub edges
/// per literal occurrence (clause-major, literal order); three parallel
/// hub-terminal edges per clause (color-major, clause order); root-terminal
/// padding per color.
struct ColoredLayout {
    x: usize,
    m: usize,
}

impl ColoredLayout {
    fn of(f: &ColoredTwoCnf) -> ColoredLayout {
        ColoredLayout {
            x: f.variable_count(),
            m: f.clauses().len(),
        }
    }

    fn u_lit(&self, lit: Literal) -> VertexId {
        1 + 2 * lit.variable + lit.negated as usize
    }

    fn v(&self, c: usize) -> VertexId {
        1 + 2 * self.x + c
    }

    fn s(&self, i: usize) -> VertexId {
        1 + 2 * self.x + self.m + (i - 1)
    }

    fn vertex_count(&self) -> usize {
        1 + 2 * self.x + self.m + 3
    }

    /// Edge id of the gate-gate edge of variable `x` (second block).
    fn variable_edge(&self, x: usize) -> EdgeId {
        2 * self.x + x
    }
}

/// Encodes a colored two-literal CNF as a preoriented-boundary instance
/// with requirement `k = 3M`: the thresholds are reachable exactly when an
/// orientation respecting the boundary of `y` is feasible. The set `y`
/// holds the root and all literal gates. Per color `i`, the padding block
/// adds `k - (2|class i| + threshold_i)` parallel root-terminal edges.
/// Rejects formulas with no clauses.
pub fn gen_3col_to_modified(f: &ColoredTwoCnf) -> Result<ModifiedInstance, HardnessError> {
    if f.clauses().is_empty() {
        return Err(HardnessError::EmptyClauseSet);
    }
    let lay = ColoredLayout::of(f);
    let sizes = f.class_sizes();
    let thresholds = f.thresholds();
    let k = 3 * lay.m;
    let mut edges = Vec::new();
    for x in 0..lay.x {
        edges.push((0, lay.u_lit(Literal::pos(x))));
        edges.push((0, lay.u_lit(Literal::neg(x))));
    }
    for x in 0..lay.x {
        edges.push((lay.u_lit(Literal::pos(x)), lay.u_lit(Literal::neg(x))));
    }
    for (c, lits) in f.clauses().iter().enumerate() {
        for &lit in lits {
            edges.push((lay.u_lit(lit), lay.v(c)));
            edges.push((lay.u_lit(lit), lay.v(c)));
        }
    }
    for i in 1..=3 {
        for (c, &color) in f.coloring().iter().enumerate() {
            if color == i {
                for _ in 0..3 {
                    edges.push((lay.v(c), lay.s(i)));
                }
            }
        }
    }
    for i in 1..=3 {
        for _ in 0..k - (2 * sizes[i - 1] + thresholds[i - 1]) {
            edges.push((0, lay.s(i)));
        }
    }
    let graph = build_multigraph(lay.vertex_count(), &edges)
        .expect("layout ids lie below the vertex count");
    let instance = SteinerInstance::new(graph, 0, vec![lay.s(1), lay.s(2), lay.s(3)], k)
        .expect("the terminals are three distinct non-root ids and k >= 3");
    ModifiedInstance::new(instance, (0..=2 * lay.x).collect())
}

/// Turns a threshold-meeting assignment into a feasible boundary-respecting
/// orientation of the generated instance: everything flows from the root
/// through the gates and hubs into the terminals, and the gate-gate edge
/// of variable `x` points toward the positive gate exactly when `a(x)` is
/// true.
pub fn colored_assignment_to_orientation(
    f: &ColoredTwoCnf,
    a: &Assignment,
) -> Result<Orientation, HardnessError> {
    if a.variable_count() != f.variable_count() {
        return Err(HardnessError::AssignmentSize {
            got: a.variable_count(),
            expected: f.variable_count(),
        });
    }
    let sat = f.satisfied_per_class(a);
    let thresholds = f.thresholds();
    for i in 0..3 {
        if sat[i] < thresholds[i] {
            return Err(HardnessError::ThresholdMissed {
                color: i + 1,
                satisfied: sat[i],
                threshold: thresholds[i],
            });
        }
    }
    let mi = gen_3col_to_modified(f)?;
    let lay = ColoredLayout::of(f);
    let m_edges = mi.instance().graph().edge_count();
    let mut dirs = Vec::with_capacity(m_edges);
    dirs.extend(std::iter::repeat(Dir::AsListed).take(2 * lay.x));
    for x in 0..lay.x {
        dirs.push(if a.value(x) {
            Dir::Reversed
        } else {
            Dir::AsListed
        });
    }
    dirs.extend(std::iter::repeat(Dir::AsListed).take(m_edges - 3 * lay.x));
    let o = Orientation::new(dirs);
    debug_assert!(require_boundary_respected(&mi, &o).is_ok());
    assert!(
        matches!(verify(mi.instance(), &o), Verdict::Ok),
        "a threshold-meeting assignment always yields a feasible orientation"
    );
    Ok(o)
}

/// Reads a threshold-meeting assignment off a feasible boundary-respecting
/// orientation: `a(x)` is true exactly when the gate-gate edge of variable
/// `x` points toward the positive gate.
pub fn orientation_to_colored_assignment(
    f: &ColoredTwoCnf,
    o: &Orientation,
) -> Result<Assignment, HardnessError> {
    let mi = gen_3col_to_modified(f)?;
    require_boundary_respected(&mi, o)?;
    require_witness(mi.instance(), o)?;
    let lay = ColoredLayout::of(f);
    let values = (0..lay.x)
        .map(|x| o.dir(lay.variable_edge(x)) == Dir::Reversed)
        .collect();
    let a = Assignment::new(values);
    assert!(
        f.meets_thresholds(&a),
        "a feasible boundary-respecting witness always induces a threshold-meeting assignment"
    );
    Ok(a)
}

/// Vertex and edge layout of the four-terminal wrapper around a
/// preoriented-boundary instance.
///
/// Per boundary edge `e` (index `p`, ascending edge id) two relay vertices
/// `a(p) = n + 2p` and `b(p) = n + 2p + 1` are added, then shadow
/// terminals `s_prime(i) = n + 2d + (i-1)` and the collector
/// `s_star = n + 2d + 3`.
///
/// Edge blocks, in order: all non-boundary edges of the base graph
/// (ascending, original listing); relay paths `(y, a) (a, b) (b, y')` per
/// boundary edge with `y` the endpoint in `y`; relay-collector edges
/// `(b, s_star)`; `k` parallel root-collector edges; `k` parallel
/// terminal-shadow edges per base terminal; root-relay edges `(r, a)`;
/// relay-shadow edges `(a, s_prime(i))` (boundary edge outer, `i` inner).
struct FourTermLayout {
    boundary: Vec<EdgeId>,
    non_boundary: Vec<EdgeId>,
    n: usize,
    k: usize,
}

impl FourTermLayout {
    fn of(mi: &ModifiedInstance) -> FourTermLayout {
        let boundary = mi.boundary_edges();
        let is_boundary = {
            let mut mask = vec![false; mi.instance().graph().edge_count()];
            for &e in &boundary {
                mask[e] = true;
            }
            mask
        };
        let non_boundary = (0..mi.instance().graph().edge_count())
            .filter(|&e| !is_boundary[e])
            .collect();
        FourTermLayout {
            boundary,
            non_boundary,
            n: mi.instance().graph().vertex_count(),
            k: mi.instance().k(),
        }
    }

    fn d(&self) -> usize {
        self.boundary.len()
    }

    fn a(&self, p: usize) -> VertexId {
        self.n + 2 * p
    }

    fn b(&self, p: usize) -> VertexId {
        self.n + 2 * p + 1
    }

    fn s_prime(&self, i: usize) -> VertexId {
        self.n + 2 * self.d() + (i - 1)
    }

    fn s_star(&self) -> VertexId {
        self.n + 2 * self.d() + 3
    }

    fn vertex_count(&self) -> usize {
        self.n + 2 * self.d() + 4
    }
}

/// Wraps a preoriented-boundary instance into a plain four-terminal
/// instance with requirement `k' = k + d`, where `d` counts the boundary
/// edges of `y`: each boundary edge is subdivided through a relay pair
/// forced to carry flow outward, and three shadow terminals plus a
/// collector absorb the extra connectivity. Feasibility is preserved in
/// both directions.
pub fn gen_modified_to_4term(mi: &ModifiedInstance) -> SteinerInstance {
    let lay = FourTermLayout::of(mi);
    let g = mi.instance().graph();
    let in_y = {
        let mut mask = vec![false; g.vertex_count()];
        for &v in mi.y() {
            mask[v] = true;
        }
        mask
    };
    let root = mi.instance().root();
    let terminals = mi.instance().terminals();
    let mut edges = Vec::new();
    for &e in &lay.non_boundary {
        edges.push(g.endpoints(e));
    }
    for (p, &e) in lay.boundary.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        let (y, y_out) = if in_y[u] { (u, v) } else { (v, u) };
        edges.push((y, lay.a(p)));
        edges.push((lay.a(p), lay.b(p)));
        edges.push((lay.b(p), y_out));
    }
    for p in 0..lay.d() {
        edges.push((lay.b(p), lay.s_star()));
    }
    for _ in 0..lay.k {
        edges.push((root, lay.s_star()));
    }
    for i in 1..=3 {
        for _ in 0..lay.k {
            edges.push((terminals[i - 1], lay.s_prime(i)));
        }
    }
    for p in 0..lay.d() {
        edges.push((root, lay.a(p)));
    }
    for p in 0..lay.d() {
        for i in 1..=3 {
            edges.push((lay.a(p), lay.s_prime(i)));
        }
    }
    let graph = build_multigraph(lay.vertex_count(), &edges)
        .expect("layout ids lie below the vertex count");
    SteinerInstance::new(
        graph,
        root,
        vec![lay.s_prime(1), lay.s_prime(2), lay.s_prime(3), lay.s_star()],
        lay.k + lay.d(),
    )
    .expect("the four new terminals are distinct non-root ids and k' >= 1")
}

/// Extends a feasible boundary-respecting witness across
/// [`gen_modified_to_4term`]: base edges keep their direction, every relay
/// path carries flow outward, and all wrapper edges run from the root side
/// toward the new terminals.
pub fn modified_orientation_to_4term(
    mi: &ModifiedInstance,
    o: &Orientation,
) -> Result<Orientation, HardnessError> {
    require_boundary_respected(mi, o)?;
    require_witness(mi.instance(), o)?;
    let four = gen_modified_to_4term(mi);
    let lay = FourTermLayout::of(mi);
    let mut dirs = Vec::with_capacity(four.graph().edge_count());
    for &e in &lay.non_boundary {
        dirs.push(o.dir(e));
    }
    dirs.extend(
        std::iter::repeat(Dir::AsListed).take(four.graph().edge_count() - lay.non_boundary.len()),
    );
    let o4 = Orientation::new(dirs);
    assert!(
        matches!(verify(&four, &o4), Verdict::Ok),
        "the extension of a feasible boundary-respecting witness stays feasible"
    );
    Ok(o4)
}

/// Restricts a feasible witness of the four-terminal wrapper back to the
/// base instance: non-boundary edges keep their direction and boundary
/// edges are forced away from `y`. The result is a feasible
/// boundary-respecting witness.
pub fn four_term_orientation_to_modified(
    mi: &ModifiedInstance,
    o4: &Orientation,
) -> Result<Orientation, HardnessError> {
    let four = gen_modified_to_4term(mi);
    require_witness(&four, o4)?;
    let lay = FourTermLayout::of(mi);
    let g = mi.instance().graph();
    let in_y = {
        let mut mask = vec![false; g.vertex_count()];
        for &v in mi.y() {
            mask[v] = true;
        }
        mask
    };
    let mut dirs = vec![Dir::AsListed; g.edge_count()];
    for (pos, &e) in lay.non_boundary.iter().enumerate() {
        dirs[e] = o4.dir(pos);
    }
    for &e in &lay.boundary {
        let (u, _) = g.endpoints(e);
        dirs[e] = if in_y[u] {
            Dir::AsListed
        } else {
            Dir::Reversed
        };
    }
    let o = Orientation::new(dirs);
    debug_assert!(require_boundary_respected(mi, &o).is_ok());
    assert!(
        matches!(verify(mi.instance(), &o), Verdict::Ok),
        "the restriction of a feasible wrapper witness stays feasible"
    );
    Ok(o)
}

/// Appends `t_target - t` fresh terminals, each joined to the root by `k`
/// parallel edges; feasibility is unchanged. A target equal to the current
/// terminal count returns the instance unchanged.
pub fn pad_terminals(
    inst: &SteinerInstance,
    t_target: usize,
) -> Result<SteinerInstance, HardnessError> {
    let t = inst.terminals().len();
    if t_target < t {
        return Err(HardnessError::PadBelowCurrent { t_target, t });
    }
    if t_target == t {
        return Ok(inst.clone());
    }
    let n = inst.graph().vertex_count();
    let mut edges = inst.graph().edges().to_vec();
    let mut terminals = inst.terminals().to_vec();
    for w in n..n + (t_target - t) {
        for _ in 0..inst.k() {
            edges.push((inst.root(), w));
        }
        terminals.push(w);
    }
    let graph = build_multigraph(n + (t_target - t), &edges)
        .expect("appended ids lie below the new vertex count");
    SteinerInstance::new(graph, inst.root(), terminals, inst.k())
        .map_err(|_| unreachable!("padding keeps terminals distinct and non-root"))
}

/// Extends a feasible witness across [`pad_terminals`]: every padding edge
/// carries flow from the root to its new terminal.
pub fn pad_terminals_orientation(
    inst: &SteinerInstance,
    o: &Orientation,
    t_target: usize,
) -> Result<Orientation, HardnessError> {
    let padded = pad_terminals(inst, t_target)?;
    require_witness(inst, o)?;
    let mut dirs = o.dirs().to_vec();
    dirs.extend(std::iter::repeat(Dir::AsListed).take(padded.graph().edge_count() - o.len()));
    let padded_o = Orientation::new(dirs);
    assert!(
        matches!(verify(&padded, &padded_o), Verdict::Ok),
        "the extension of a feasible witness over padding stays feasible"
    );
    Ok(padded_o)
}
