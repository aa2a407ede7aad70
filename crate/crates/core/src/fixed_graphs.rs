//! Decorated trees indexing the torus-fixed loci of `M_{0,k}(P^n, d)`.
//!
//! A fixed locus is described by a tree whose vertices carry a fixed point
//! label in `0..=n` and a set of marked points, and whose edges carry the
//! covering degree of a coordinate line. Enumeration works in two stages:
//! unmarked classes ("skeletons") are found by canonical-form deduplication,
//! then marks are distributed over each skeleton one orbit of its
//! automorphism group at a time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub label: u32,
    /// Sorted, 1-based mark indices.
    pub marks: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub aut_order: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("expected {expected} edges for {vertices} vertices, found {found}")]
    EdgeCount {
        vertices: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {0} references a missing vertex")]
    DanglingEdge(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge {0} joins two vertices with the same label")]
    RepeatedLabel(usize),
    #[error("edge {0} has degree zero")]
    ZeroDegree(usize),
    #[error("label {label} exceeds ambient dimension {n}")]
    LabelRange { label: u32, n: u32 },
    #[error("edge degrees sum to {found}, expected {expected}")]
    DegreeSum { expected: u32, found: u32 },
    #[error("marks do not partition 1..={0}")]
    Marks(usize),
    #[error("stored automorphism order {stored} differs from computed {computed}")]
    AutOrder { stored: u64, computed: u64 },
}

impl FixedGraph {
    pub fn total_degree(&self) -> u32 {
        self.edges.iter().map(|e| e.degree).sum()
    }

    pub fn mark_count(&self) -> usize {
        self.vertices.iter().map(|v| v.marks.len()).sum()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.a].push((e.b, e.degree));
            adj[e.b].push((e.a, e.degree));
        }
        adj
    }

    /// Checks every structural invariant, including the stored automorphism
    /// order, against a query `(n, d, k)`.
    pub fn validate(&self, n: u32, d: u32, k: usize) -> Result<(), GraphError> {
        let nv = self.vertices.len();
        if self.edges.len() + 1 != nv {
            return Err(GraphError::EdgeCount {
                vertices: nv,
                expected: nv.saturating_sub(1),
                found: self.edges.len(),
            });
        }
        for (idx, e) in self.edges.iter().enumerate() {
            if e.a >= nv || e.b >= nv {
                return Err(GraphError::DanglingEdge(idx));
            }
            if e.degree == 0 {
                return Err(GraphError::ZeroDegree(idx));
            }
            if self.vertices[e.a].label == self.vertices[e.b].label {
                return Err(GraphError::RepeatedLabel(idx));
            }
        }
        if let Some(v) = self.vertices.iter().find(|v| v.label > n) {
            return Err(GraphError::LabelRange { label: v.label, n });
        }
        let adj = self.adjacency();
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GraphError::Disconnected);
        }
        if self.total_degree() != d {
            return Err(GraphError::DegreeSum {
                expected: d,
                found: self.total_degree(),
            });
        }
        let marks: Vec<u32> = self
            .vertices
            .iter()
            .flat_map(|v| v.marks.iter().copied())
            .collect();
        let distinct: BTreeSet<u32> = marks.iter().copied().collect();
        if marks.len() != k || distinct.len() != k || distinct.iter().any(|&m| m < 1 || m as usize > k)
        {
            return Err(GraphError::Marks(k));
        }
        let computed = automorphism_order(self);
        if computed != self.aut_order {
            return Err(GraphError::AutOrder {
                stored: self.aut_order,
                computed,
            });
        }
        Ok(())
    }

    /// Stable single-line text form: canonical encoding, tab, automorphism
    /// order.
    pub fn dump_line(&self) -> String {
        let canon = canonical_form(self);
        format!("{}\t{}", String::from_utf8_lossy(&canon), self.aut_order)
    }
}

/// Writes one graph per line in the [`FixedGraph::dump_line`] format.
pub fn write_dump<W: io::Write>(graphs: &[FixedGraph], mut out: W) -> io::Result<()> {
    for g in graphs {
        writeln!(out, "{}", g.dump_line())?;
    }
    Ok(())
}

// Rooted encoding: `label[marks](deg:child;deg:child;)`, children sorted.
// Parentheses keep the encoding unambiguous, so equal strings mean
// isomorphic rooted trees.
fn rooted_code(
    g: &FixedGraph,
    adj: &[Vec<(usize, u32)>],
    v: usize,
    parent: Option<usize>,
) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&(u, _)| Some(u) != parent)
        .map(|&(u, deg)| format!("{}:{}", deg, rooted_code(g, adj, u, Some(v))))
        .collect();
    children.sort();
    let vert = &g.vertices[v];
    let mut s = String::new();
    write!(s, "{}[", vert.label).unwrap();
    for (i, m) in vert.marks.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "{}", m).unwrap();
    }
    s.push_str("](");
    for c in children {
        s.push_str(&c);
        s.push(';');
    }
    s.push(')');
    s
}

// Order of the automorphism group of the tree rooted at `v`.
fn rooted_aut(adj: &[Vec<(usize, u32)>], codes: &dyn Fn(usize, usize) -> String, v: usize, parent: Option<usize>) -> u64 {
    let mut groups: BTreeMap<(u32, String), u64> = BTreeMap::new();
    let mut product = 1u64;
    for &(u, deg) in &adj[v] {
        if Some(u) == parent {
            continue;
        }
        product *= rooted_aut(adj, codes, u, Some(v));
        *groups.entry((deg, codes(u, v))).or_insert(0) += 1;
    }
    for &mult in groups.values() {
        product *= (1..=mult).product::<u64>();
    }
    product
}

fn canonical_root(g: &FixedGraph) -> (Vec<String>, usize) {
    let adj = g.adjacency();
    let codes: Vec<String> = (0..g.vertices.len())
        .map(|v| rooted_code(g, &adj, v, None))
        .collect();
    let root = (0..codes.len()).min_by(|&a, &b| codes[a].cmp(&codes[b])).unwrap();
    (codes, root)
}

/// Byte encoding that is equal for two graphs iff they are isomorphic as
/// decorated trees: the smallest rooted encoding over all choices of root.
pub fn canonical_form(g: &FixedGraph) -> Vec<u8> {
    let (mut codes, root) = canonical_root(g);
    codes.swap_remove(root).into_bytes()
}

/// Automorphism order read off the canonical form: the number of vertices
/// whose rooted encoding is minimal (the orbit of the canonical root) times
/// the stabilizer of that root.
pub fn automorphism_order(g: &FixedGraph) -> u64 {
    let adj = g.adjacency();
    let (codes, root) = canonical_root(g);
    let orbit = codes.iter().filter(|c| **c == codes[root]).count() as u64;
    let child_code = |u: usize, parent: usize| rooted_code(g, &adj, u, Some(parent));
    orbit * rooted_aut(&adj, &child_code, root, None)
}

/// An unmarked fixed-locus class together with its full automorphism group,
/// given as vertex permutations.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub graph: FixedGraph,
    pub automorphisms: Vec<Vec<usize>>,
}

impl Skeleton {
    fn new(graph: FixedGraph) -> Self {
        let automorphisms = vertex_automorphisms(&graph);
        let mut graph = graph;
        graph.aut_order = automorphisms.len() as u64;
        Skeleton {
            graph,
            automorphisms,
        }
    }

    /// One graph per isomorphism class of ways to attach marks `1..=k`,
    /// in lexicographic order of the mark-to-vertex assignment.
    pub fn markings(&self, k: usize) -> Markings<'_> {
        Markings {
            skeleton: self,
            assignment: vec![0; k],
            done: false,
        }
    }

    fn marked(&self, assignment: &[usize], aut_order: u64) -> FixedGraph {
        let mut graph = self.graph.clone();
        for (mark, &v) in assignment.iter().enumerate() {
            graph.vertices[v].marks.push(mark as u32 + 1);
        }
        graph.aut_order = aut_order;
        graph
    }
}

pub struct Markings<'a> {
    skeleton: &'a Skeleton,
    assignment: Vec<usize>,
    done: bool,
}

impl Markings<'_> {
    fn advance(&mut self) {
        let nv = self.skeleton.graph.vertices.len();
        for slot in self.assignment.iter_mut().rev() {
            *slot += 1;
            if *slot < nv {
                return;
            }
            *slot = 0;
        }
        self.done = true;
    }

    // Some(stabilizer order) if `assignment` is the smallest in its orbit.
    fn orbit_minimum(&self) -> Option<u64> {
        let mut stabilizer = 0;
        let mut image = vec![0; self.assignment.len()];
        for perm in &self.skeleton.automorphisms {
            for (slot, &v) in image.iter_mut().zip(&self.assignment) {
                *slot = perm[v];
            }
            match image.cmp(&self.assignment) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => stabilizer += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        Some(stabilizer)
    }
}

impl Iterator for Markings<'_> {
    type Item = FixedGraph;

    fn next(&mut self) -> Option<FixedGraph> {
        while !self.done {
            let found = self
                .orbit_minimum()
                .map(|stab| self.skeleton.marked(&self.assignment, stab));
            self.advance();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// All permutations of the vertices preserving labels, adjacency, and edge
/// degrees. Marks are ignored.
fn vertex_automorphisms(g: &FixedGraph) -> Vec<Vec<usize>> {
    let nv = g.vertices.len();
    let mut degree_between = vec![vec![0u32; nv]; nv];
    for e in &g.edges {
        degree_between[e.a][e.b] = e.degree;
        degree_between[e.b][e.a] = e.degree;
    }
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(nv);
    let mut used = vec![false; nv];
    fn extend(
        g: &FixedGraph,
        between: &[Vec<u32>],
        image: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = image.len();
        if v == g.vertices.len() {
            out.push(image.clone());
            return;
        }
        for u in 0..g.vertices.len() {
            if used[u] || g.vertices[u].label != g.vertices[v].label {
                continue;
            }
            if (0..v).any(|w| between[v][w] != between[u][image[w]]) {
                continue;
            }
            used[u] = true;
            image.push(u);
            extend(g, between, image, used, out);
            image.pop();
            used[u] = false;
        }
    }
    extend(g, &degree_between, &mut image, &mut used, &mut out);
    out
}

/// Edge lists of all trees on `nv` vertices up to isomorphism.
fn tree_shapes(nv: usize) -> Vec<Vec<(usize, usize)>> {
    if nv == 1 {
        return vec![vec![]];
    }
    if nv == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut shapes = BTreeMap::new();
    let mut prufer = vec![0usize; nv - 2];
    loop {
        let edges = prufer_decode(&prufer, nv);
        let plain = FixedGraph {
            vertices: vec![
                Vertex {
                    label: 0,
                    marks: vec![],
                };
                nv
            ],
            edges: edges.iter().map(|&(a, b)| Edge { a, b, degree: 1 }).collect(),
            aut_order: 1,
        };
        shapes.entry(canonical_form(&plain)).or_insert(edges);
        // odometer
        let mut i = prufer.len();
        loop {
            if i == 0 {
                return shapes.into_values().collect();
            }
            i -= 1;
            prufer[i] += 1;
            if prufer[i] < nv {
                break;
            }
            prufer[i] = 0;
        }
    }
}

fn prufer_decode(seq: &[usize], nv: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; nv];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(nv - 1);
    for &s in seq {
        let leaf = (0..nv).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..nv).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts as u32 - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Vertex labelings in `0..=n` with distinct labels on adjacent vertices.
/// Vertices are labeled in breadth-first order from vertex 0.
fn proper_labelings(nv: usize, edges: &[(usize, usize)], n: u32) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); nv];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; nv];
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                order.push(u);
            }
        }
    }
    let mut out = Vec::new();
    let mut labels = vec![0u32; nv];
    fn assign(
        pos: usize,
        order: &[usize],
        parent: &[usize],
        n: u32,
        labels: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == order.len() {
            out.push(labels.clone());
            return;
        }
        let v = order[pos];
        for l in 0..=n {
            if pos > 0 && labels[parent[v]] == l {
                continue;
            }
            labels[v] = l;
            assign(pos + 1, order, parent, n, labels, out);
        }
    }
    assign(0, &order, &parent, n, &mut labels, &mut out);
    out
}

/// Unmarked fixed-locus classes for degree-`d` maps to `P^n`, sorted by
/// canonical encoding.
pub fn enumerate_skeletons(n: u32, d: u32) -> Vec<Skeleton> {
    let mut classes: BTreeMap<Vec<u8>, FixedGraph> = BTreeMap::new();
    for edge_count in 1..=d as usize {
        let nv = edge_count + 1;
        for shape in tree_shapes(nv) {
            let labelings = proper_labelings(nv, &shape, n);
            for degrees in compositions(d, edge_count) {
                for labels in &labelings {
                    let graph = FixedGraph {
                        vertices: labels
                            .iter()
                            .map(|&label| Vertex {
                                label,
                                marks: vec![],
                            })
                            .collect(),
                        edges: shape
                            .iter()
                            .zip(&degrees)
                            .map(|(&(a, b), &degree)| Edge { a, b, degree })
                            .collect(),
                        aut_order: 1,
                    };
                    classes.entry(canonical_form(&graph)).or_insert(graph);
                }
            }
        }
    }
    classes.into_values().map(Skeleton::new).collect()
}

/// One representative per isomorphism class of decorated trees for
/// `M_{0,k}(P^n, d)`, sorted by canonical encoding.
pub fn enumerate_graphs(n: u32, d: u32, k: usize) -> Vec<FixedGraph> {
    let mut keyed: Vec<(Vec<u8>, FixedGraph)> = enumerate_skeletons(n, d)
        .iter()
        .flat_map(|s| s.markings(k).collect::<Vec<_>>())
        .map(|g| (canonical_form(&g), g))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, g)| g).collect()
}
