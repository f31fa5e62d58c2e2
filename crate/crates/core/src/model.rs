//! Hypergraphs, CNF formulas and the structural quantities measured on them.
//!
//! Vertices and variables are 0-indexed in memory. Every k-CNF induces a
//! k-uniform multi-hypergraph whose edges are the variable sets of its
//! clauses, in clause order.

use serde::Serialize;

use crate::error::{Error, Result};

/// Clause width `k` and intersection bound `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    pub k: usize,
    pub alpha: usize,
}

impl Params {
    pub fn new(k: usize, alpha: usize) -> Result<Self> {
        if k < 1 || alpha < 1 || alpha > k {
            return Err(Error::InvalidParams(format!(
                "need k >= 1 and 1 <= alpha <= k, got k = {k}, alpha = {alpha}"
            )));
        }
        Ok(Params { k, alpha })
    }

    /// Parameters for the threshold results, which need `alpha < k`.
    pub fn strict(k: usize, alpha: usize) -> Result<Self> {
        let p = Self::new(k, alpha)?;
        if alpha >= k {
            return Err(Error::InvalidParams(format!(
                "need alpha < k, got k = {k}, alpha = {alpha}"
            )));
        }
        Ok(p)
    }
}

/// A (multi-)hypergraph on vertices `0..n`. Each edge is strictly sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge. Rejects out-of-range and repeated vertices.
    pub fn new(n: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        let mut edges = edges;
        for e in &mut edges {
            e.sort_unstable();
            for w in e.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateVertex(w[0]));
                }
            }
            if let Some(&v) = e.last() {
                if v as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v as u64,
                        n,
                    });
                }
            }
        }
        Ok(Hypergraph { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        Hypergraph {
            n,
            edges: Vec::new(),
        }
    }

    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<Vec<u32>>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|e| e.windows(2).all(|w| w[0] < w[1]) && e.iter().all(|&v| (v as usize) < n)));
        Hypergraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<&[u32]> {
        self.edges
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index,
                len: self.edges.len(),
            })
    }

    /// Common edge size, `None` when empty or mixed.
    pub fn uniform_width(&self) -> Option<usize> {
        let w = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == w).then_some(w)
    }

    /// Errors unless every edge has exactly `k` vertices. An edgeless hypergraph passes.
    pub fn require_uniform(&self, k: usize) -> Result<()> {
        match self.edges.iter().find(|e| e.len() != k) {
            Some(e) => Err(Error::NotUniform {
                expected: k,
                found: e.len(),
            }),
            None => Ok(()),
        }
    }

    /// Width of a uniform hypergraph; errors on mixed widths, `None` when edgeless.
    pub(crate) fn width_checked(&self) -> Result<Option<usize>> {
        match self.edges.first() {
            None => Ok(None),
            Some(e) => {
                self.require_uniform(e.len())?;
                Ok(Some(e.len()))
            }
        }
    }

    /// `result[v]` is the number of edges containing `v`.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    pub fn max_vertex_degree(&self) -> usize {
        self.vertex_degrees().into_iter().max().unwrap_or(0)
    }

    /// Number of other edges sharing at least one vertex with `edges[index]`.
    pub fn clause_degree(&self, index: usize) -> Result<usize> {
        self.edge(index)?;
        let inc = self.incidence();
        let mut scan = NeighbourScan::new(self.m());
        Ok(scan.visit(self, &inc, index).len())
    }

    /// Unordered pairs of distinct edges sharing at least one vertex.
    pub fn intersection_pairs(&self) -> usize {
        self.overlap_summary().intersection_pairs
    }

    /// The lexicographically first pair of edges sharing more than `alpha` vertices.
    pub fn check_alpha_intersecting(&self, alpha: usize) -> AlphaCheck {
        let inc = self.incidence();
        let mut scan = NeighbourScan::new(self.m());
        for a in 0..self.m() {
            let hit = scan
                .visit(self, &inc, a)
                .iter()
                .filter(|&&(b, shared)| b > a && shared > alpha)
                .min_by_key(|&&(b, _)| b)
                .copied();
            if let Some((b, shared)) = hit {
                return AlphaCheck::Violation { a, b, shared };
            }
        }
        AlphaCheck::Ok
    }

    pub fn require_alpha_intersecting(&self, alpha: usize) -> Result<()> {
        match self.check_alpha_intersecting(alpha) {
            AlphaCheck::Ok => Ok(()),
            AlphaCheck::Violation { a, b, shared } => {
                Err(Error::NotAlphaIntersecting(a, b, shared, alpha))
            }
        }
    }

    pub(crate) fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.n];
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(j as u32);
            }
        }
        inc
    }

    /// Intersection pairs, maximum edge degree and maximum pairwise overlap in one pass.
    pub(crate) fn overlap_summary(&self) -> OverlapSummary {
        let inc = self.incidence();
        let mut scan = NeighbourScan::new(self.m());
        let mut degree_sum = 0usize;
        let mut max_degree = 0usize;
        let mut max_shared = 0usize;
        for j in 0..self.m() {
            let nb = scan.visit(self, &inc, j);
            degree_sum += nb.len();
            max_degree = max_degree.max(nb.len());
            if let Some(s) = nb.iter().map(|&(_, s)| s).max() {
                max_shared = max_shared.max(s);
            }
        }
        OverlapSummary {
            intersection_pairs: degree_sum / 2,
            max_edge_degree: max_degree,
            max_shared,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct OverlapSummary {
    pub intersection_pairs: usize,
    pub max_edge_degree: usize,
    pub max_shared: usize,
}

/// Outcome of an alpha-intersecting check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlphaCheck {
    Ok,
    Violation { a: usize, b: usize, shared: usize },
}

impl AlphaCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, AlphaCheck::Ok)
    }
}

/// Reusable scratch space listing the neighbours of one edge with overlap sizes.
struct NeighbourScan {
    count: Vec<u32>,
    order: Vec<usize>,
    touched: Vec<(usize, usize)>,
}

impl NeighbourScan {
    fn new(m: usize) -> Self {
        NeighbourScan {
            count: vec![0; m],
            order: Vec::new(),
            touched: Vec::new(),
        }
    }

    fn visit(&mut self, h: &Hypergraph, inc: &[Vec<u32>], j: usize) -> &[(usize, usize)] {
        self.order.clear();
        for &v in &h.edges[j] {
            for &l in &inc[v as usize] {
                let l = l as usize;
                if l == j {
                    continue;
                }
                if self.count[l] == 0 {
                    self.order.push(l);
                }
                self.count[l] += 1;
            }
        }
        self.touched.clear();
        for &l in &self.order {
            self.touched.push((l, self.count[l] as usize));
            self.count[l] = 0;
        }
        &self.touched
    }
}

/// A literal: variable id plus sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Lit {
    pub var: u32,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: u32) -> Self {
        Lit {
            var,
            negated: false,
        }
    }

    pub fn neg(var: u32) -> Self {
        Lit { var, negated: true }
    }

    pub fn is_true(&self, value: bool) -> bool {
        value != self.negated
    }
}

/// A disjunction of literals over distinct variables, sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(lits: Vec<Lit>) -> Result<Self> {
        let mut lits = lits;
        lits.sort_unstable();
        for w in lits.windows(2) {
            if w[0].var == w[1].var {
                return Err(Error::DuplicateVariable(w[0].var));
            }
        }
        Ok(Clause { lits })
    }

    /// Clause over a sorted edge; bit `j` of `pattern` negates the `j`-th smallest variable.
    pub fn from_pattern(edge: &[u32], pattern: u64) -> Self {
        debug_assert!(edge.windows(2).all(|w| w[0] < w[1]));
        let lits = edge
            .iter()
            .enumerate()
            .map(|(j, &var)| Lit {
                var,
                negated: pattern >> j & 1 == 1,
            })
            .collect();
        Clause { lits }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn vars(&self) -> Vec<u32> {
        self.lits.iter().map(|l| l.var).collect()
    }

    pub fn is_satisfied(&self, a: &Assignment) -> bool {
        self.lits.iter().any(|l| l.is_true(a.get(l.var as usize)))
    }

    /// Keeps only the literals whose variables are not in `drop` (sorted).
    pub(crate) fn without_vars(&self, drop: &[u32]) -> Clause {
        Clause {
            lits: self
                .lits
                .iter()
                .filter(|l| drop.binary_search(&l.var).is_err())
                .copied()
                .collect(),
        }
    }
}

/// A CNF formula over variables `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    n: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(n: usize, clauses: Vec<Clause>) -> Result<Self> {
        for c in &clauses {
            if let Some(l) = c.lits.last() {
                if l.var as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: l.var as u64,
                        n,
                    });
                }
            }
        }
        Ok(CnfFormula { n, clauses })
    }

    pub fn empty(n: usize) -> Self {
        CnfFormula {
            n,
            clauses: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn uniform_width(&self) -> Option<usize> {
        let w = self.clauses.first()?.width();
        self.clauses.iter().all(|c| c.width() == w).then_some(w)
    }

    pub fn require_uniform(&self, k: usize) -> Result<()> {
        match self.clauses.iter().find(|c| c.width() != k) {
            Some(c) => Err(Error::NotUniform {
                expected: k,
                found: c.width(),
            }),
            None => Ok(()),
        }
    }

    /// Edge `j` is the variable set of clause `j`.
    pub fn induced_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_sorted_unchecked(self.n, self.clauses.iter().map(Clause::vars).collect())
    }

    /// Copy without clause `index`.
    pub fn without_clause(&self, index: usize) -> CnfFormula {
        let mut clauses = self.clauses.clone();
        clauses.remove(index);
        CnfFormula { n: self.n, clauses }
    }

    /// Every clause has a true literal under `a`.
    pub fn verify(&self, a: &Assignment) -> Result<bool> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: a.len(),
            });
        }
        Ok(self.clauses.iter().all(|c| c.is_satisfied(a)))
    }

    pub fn metrics(&self) -> MetricsReport {
        MetricsReport::of_hypergraph(&self.induced_hypergraph())
    }
}

/// A total truth assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    pub fn all_false(n: usize) -> Self {
        Assignment {
            bits: vec![false; n],
        }
    }

    /// Variable `i` takes bit `i` of `index`.
    pub fn from_index(n: usize, index: u64) -> Self {
        Assignment {
            bits: (0..n).map(|i| index >> i & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, var: usize) -> bool {
        self.bits[var]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.bits[var] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Structural quantities of a formula or hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MetricsReport {
    pub n: usize,
    pub m: usize,
    /// Unordered pairs of clauses sharing a variable.
    pub i: usize,
    pub delta_vertex: usize,
    pub delta_clause: usize,
    pub alpha_measured: usize,
    pub width: Option<usize>,
}

impl MetricsReport {
    pub fn of_hypergraph(h: &Hypergraph) -> Self {
        let overlap = h.overlap_summary();
        MetricsReport {
            n: h.n(),
            m: h.m(),
            i: overlap.intersection_pairs,
            delta_vertex: h.max_vertex_degree(),
            delta_clause: overlap.max_edge_degree,
            alpha_measured: overlap.max_shared,
            width: h.uniform_width(),
        }
    }
}

/// All `2^k` clauses on variables `0..k`, in increasing sign-pattern order.
pub fn complete_formula(k: usize) -> Result<CnfFormula> {
    if !(1..=20).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "complete formula needs 1 <= k <= 20, got {k}"
        )));
    }
    let edge: Vec<u32> = (0..k as u32).collect();
    let clauses = (0..1u64 << k)
        .map(|p| Clause::from_pattern(&edge, p))
        .collect();
    Ok(CnfFormula { n: k, clauses })
}
