//! Foldability of simplicial complexes: dual graph bipartition, the
//! `(d+1)`-coloring of vertices it induces, and the signature.

use std::collections::VecDeque;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::subdivision::{normalized_volume, SimplicialComplex};

/// Number of common vertices of two sorted index lists.
fn shared(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Adjacency lists over facet indices; two facets are adjacent iff they
/// share a ridge (`d` common vertices). Lists are sorted.
pub fn dual_graph(complex: &SimplicialComplex) -> Vec<Vec<usize>> {
    let facets = complex.facets();
    let d = complex.dim();
    let mut adj = vec![Vec::new(); facets.len()];
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if shared(&facets[i], &facets[j]) == d {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

/// A closed walk of odd length in the dual graph, certifying that the
/// complex is not foldable. Consecutive facets (cyclically) share a ridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub facets: Vec<usize>,
}

impl OddCycle {
    pub fn verify(&self, complex: &SimplicialComplex) -> bool {
        let n = self.facets.len();
        let d = complex.dim();
        let fs = complex.facets();
        n % 2 == 1
            && self.facets.iter().all(|&f| f < fs.len())
            && (0..n).all(|i| {
                let (a, b) = (self.facets[i], self.facets[(i + 1) % n]);
                a != b && shared(&fs[a], &fs[b]) == d
            })
    }
}

/// Black/white facet classes with no ridge inside either class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetBipartition {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
}

impl FacetBipartition {
    pub fn swapped(&self) -> Self {
        Self {
            black: self.white.clone(),
            white: self.black.clone(),
        }
    }

    pub fn is_black(&self, facet: usize) -> bool {
        self.black.binary_search(&facet).is_ok()
    }

    pub fn is_valid_for(&self, complex: &SimplicialComplex) -> bool {
        let n = complex.len();
        let mut side = vec![None; n];
        for (&f, s) in self
            .black
            .iter()
            .map(|f| (f, true))
            .chain(self.white.iter().map(|f| (f, false)))
        {
            if f >= n || side[f].is_some() {
                return false;
            }
            side[f] = Some(s);
        }
        if side.iter().any(Option::is_none) {
            return false;
        }
        dual_graph(complex)
            .iter()
            .enumerate()
            .all(|(i, nb)| nb.iter().all(|&j| side[i] != side[j]))
    }
}

/// Breadth-first 2-coloring of the dual graph. Each component starts from
/// its lowest-indexed facet, which is colored black.
pub fn facet_bipartition(
    complex: &SimplicialComplex,
) -> std::result::Result<FacetBipartition, OddCycle> {
    let adj = dual_graph(complex);
    let n = adj.len();
    let mut depth: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<usize> = (0..n).collect();
    for root in 0..n {
        if depth[root].is_some() {
            continue;
        }
        depth[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = depth[u].unwrap();
            for &v in &adj[u] {
                match depth[v] {
                    None => {
                        depth[v] = Some(du + 1);
                        parent[v] = u;
                        queue.push_back(v);
                    }
                    Some(dv) if dv % 2 == du % 2 => {
                        return Err(odd_cycle(u, v, &depth, &parent));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let (mut black, mut white) = (Vec::new(), Vec::new());
    for (f, d) in depth.iter().enumerate() {
        if d.unwrap() % 2 == 0 {
            black.push(f);
        } else {
            white.push(f);
        }
    }
    Ok(FacetBipartition { black, white })
}

/// Closes the BFS-tree paths from `u` and `v` (same parity, adjacent) at
/// their lowest common ancestor.
fn odd_cycle(u: usize, v: usize, depth: &[Option<usize>], parent: &[usize]) -> OddCycle {
    let (mut a, mut b) = (u, v);
    let (mut left, mut right) = (vec![a], vec![b]);
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    OddCycle { facets: left }
}

/// Color classes `0..=d` on the vertices of a foldable complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    num_colors: usize,
    /// Indexed by point index; `None` for points not in any facet.
    colors: Vec<Option<usize>>,
}

impl VertexColoring {
    pub fn new(num_colors: usize, colors: Vec<Option<usize>>) -> Self {
        Self { num_colors, colors }
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn color(&self, point: usize) -> Option<usize> {
        self.colors.get(point).copied().flatten()
    }

    pub fn colors(&self) -> &[Option<usize>] {
        &self.colors
    }

    /// Point indices of each color, indexed by color.
    pub fn classes_by_color(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_colors];
        for (j, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                classes[*c].push(j);
            }
        }
        classes
    }

    /// Nonempty color classes ordered by their smallest member. This is the
    /// labelling-independent form: two colorings differing by a permutation
    /// of colors have equal partitions.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = self
            .classes_by_color()
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect();
        classes.sort();
        classes
    }

    pub fn is_proper_for(&self, complex: &SimplicialComplex) -> bool {
        complex.facets().iter().all(|f| {
            let mut cs: Vec<Option<usize>> = f.iter().map(|&j| self.color(j)).collect();
            if cs.iter().any(|c| c.is_none_or(|c| c >= self.num_colors)) {
                return false;
            }
            cs.sort_unstable();
            cs.dedup();
            cs.len() == f.len()
        })
    }
}

/// Proper `(d+1)`-coloring of the vertices, propagated breadth-first over
/// the dual graph from facet 0. Facet 0's vertices receive colors `0..=d`
/// in ascending index order; crossing a ridge, the new vertex takes the
/// color of the vertex it replaces.
pub fn vertex_coloring(complex: &SimplicialComplex) -> Result<VertexColoring> {
    facet_bipartition(complex)?;
    let adj = dual_graph(complex);
    let facets = complex.facets();
    let n_points = complex.config().len();
    let mut colors: Vec<Option<usize>> = vec![None; n_points];
    for (c, &v) in facets[0].iter().enumerate() {
        colors[v] = Some(c);
    }
    let mut visited = vec![false; facets.len()];
    visited[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        for &g in &adj[f] {
            if visited[g] {
                continue;
            }
            visited[g] = true;
            let leaving = facets[f].iter().find(|v| !facets[g].contains(v)).unwrap();
            let entering = *facets[g].iter().find(|v| !facets[f].contains(v)).unwrap();
            let inherited = colors[*leaving];
            match colors[entering] {
                None => colors[entering] = inherited,
                Some(c) if Some(c) != inherited => {
                    return Err(Error::ColoringConflict { vertex: entering });
                }
                Some(_) => {}
            }
            queue.push_back(g);
        }
    }
    if visited.iter().any(|v| !v) {
        return Err(Error::DisconnectedComplex);
    }
    let coloring = VertexColoring::new(complex.dim() + 1, colors);
    // propagation only checks tree edges; a ridge closing a cycle could
    // still repeat a color inside a facet
    if let Some(f) = facets.iter().find(|f| {
        let mut cs: Vec<_> = f.iter().map(|&v| coloring.color(v)).collect();
        cs.sort_unstable();
        cs.dedup();
        cs.len() != f.len()
    }) {
        return Err(Error::ColoringConflict { vertex: f[0] });
    }
    Ok(coloring)
}

/// `|#odd black facets - #odd white facets|`, parity taken on normalized
/// volumes.
pub fn signature(complex: &SimplicialComplex, bipartition: &FacetBipartition) -> usize {
    let config = complex.config();
    let odd = |fs: &[usize]| {
        fs.iter()
            .filter(|&&f| normalized_volume(config, &complex.facets()[f]).is_odd())
            .count()
    };
    odd(&bipartition.black).abs_diff(odd(&bipartition.white))
}
