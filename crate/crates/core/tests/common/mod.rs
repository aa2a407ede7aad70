//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the enumeration or canonical-form code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gwloc::fixed_graphs::FixedGraph;

/// A labeled decorated tree on vertex set `0..labels.len()`.
#[derive(Clone, Debug)]
pub struct Labeled {
    pub labels: Vec<u32>,
    pub edges: Vec<(usize, usize, u32)>,
    pub mark_at: Vec<usize>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

type Encoding = (Vec<u32>, Vec<(usize, usize, u32)>, Vec<usize>);

fn relabel(g: &Labeled, perm: &[usize]) -> Encoding {
    let mut labels = vec![0; g.labels.len()];
    for (v, &l) in g.labels.iter().enumerate() {
        labels[perm[v]] = l;
    }
    let mut edges: Vec<_> = g
        .edges
        .iter()
        .map(|&(a, b, d)| {
            let (x, y) = (perm[a], perm[b]);
            (x.min(y), x.max(y), d)
        })
        .collect();
    edges.sort();
    let marks = g.mark_at.iter().map(|&v| perm[v]).collect();
    (labels, edges, marks)
}

/// Canonical encoding by minimizing over every vertex permutation, plus the
/// number of permutations that fix the encoding.
pub fn brute_canonical(g: &Labeled) -> (Encoding, u64) {
    let perms = permutations(g.labels.len());
    let own = relabel(g, &(0..g.labels.len()).collect::<Vec<_>>());
    let mut best: Option<Encoding> = None;
    let mut stabilizer = 0;
    for p in &perms {
        let e = relabel(g, p);
        if e == own {
            stabilizer += 1;
        }
        if best.as_ref().map_or(true, |b| e < *b) {
            best = Some(e);
        }
    }
    (best.unwrap(), stabilizer)
}

pub fn from_fixed(g: &FixedGraph) -> Labeled {
    let mut mark_at = vec![0; g.mark_count()];
    for (v, vert) in g.vertices.iter().enumerate() {
        for &m in &vert.marks {
            mark_at[m as usize - 1] = v;
        }
    }
    Labeled {
        labels: g.vertices.iter().map(|v| v.label).collect(),
        edges: g.edges.iter().map(|e| (e.a, e.b, e.degree)).collect(),
        mark_at,
    }
}

fn is_spanning_tree(nv: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    edges.len() + 1 == nv
}

fn product_space(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..base).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every labeled decorated tree on `nv` vertices for `(n, d, k)`: spanning
/// trees of the complete graph chosen as edge subsets, all proper labelings,
/// all positive edge degrees summing to `d`, all mark placements.
pub fn labeled_trees(n: u32, d: u32, k: usize, nv: usize) -> Vec<Labeled> {
    let all_pairs: Vec<(usize, usize)> = (0..nv)
        .flat_map(|a| (a + 1..nv).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all_pairs.len()) {
        let edges: Vec<(usize, usize)> = all_pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if !is_spanning_tree(nv, &edges) {
            continue;
        }
        for labels in product_space(n as usize + 1, nv) {
            if edges.iter().any(|&(a, b)| labels[a] == labels[b]) {
                continue;
            }
            for degs in product_space(d as usize, edges.len()) {
                let degs: Vec<u32> = degs.iter().map(|&x| x as u32 + 1).collect();
                if degs.iter().sum::<u32>() != d {
                    continue;
                }
                for marks in product_space(nv, k) {
                    out.push(Labeled {
                        labels: labels.iter().map(|&l| l as u32).collect(),
                        edges: edges
                            .iter()
                            .zip(&degs)
                            .map(|(&(a, b), &dg)| (a, b, dg))
                            .collect(),
                        mark_at: marks,
                    });
                }
            }
        }
    }
    out
}

/// Isomorphism classes with automorphism orders, found by brute force.
pub fn brute_classes(n: u32, d: u32, k: usize) -> BTreeMap<Encoding, u64> {
    let mut classes = BTreeMap::new();
    for nv in 2..=d as usize + 1 {
        for g in labeled_trees(n, d, k, nv) {
            let (enc, stab) = brute_canonical(&g);
            classes.insert(enc, stab);
        }
    }
    classes
}

/// Labeled-object count per vertex count.
pub fn labeled_counts(n: u32, d: u32, k: usize) -> BTreeMap<usize, u64> {
    (2..=d as usize + 1)
        .map(|nv| (nv, labeled_trees(n, d, k, nv).len() as u64))
        .collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `Σ_{classes with nv vertices} nv! / |Aut|` per vertex count.
pub fn orbit_stabilizer_counts(graphs: &[FixedGraph]) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for g in graphs {
        let nv = g.vertices.len();
        let f = factorial(nv);
        assert_eq!(f % g.aut_order, 0, "aut order must divide {nv}!");
        *out.entry(nv).or_insert(0) += f / g.aut_order;
    }
    out
}

pub fn encodings(graphs: &[FixedGraph]) -> BTreeSet<Encoding> {
    graphs.iter().map(|g| brute_canonical(&from_fixed(g)).0).collect()
}
