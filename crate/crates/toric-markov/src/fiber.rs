//! Fibers and fiber graphs.
//!
//! The fiber of a key `t` is the finite set `{u in N^n : A u = t}`. Its fiber
//! graph joins two elements whenever they share a coordinate of common
//! positive support; the connected components of that graph are the raw
//! material for everything the crate computes. Graphs are cached per matrix
//! because the same fibers are consulted by counting, enumeration, sampling,
//! and verification.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::ConfigMatrix;
use crate::moves::MarkovBasis;

/// A fiber key: an integer point of the affine semigroup, one coordinate per
/// matrix row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiberKey(Vec<BigInt>);

impl FiberKey {
    pub fn new(coords: Vec<BigInt>) -> Self {
        FiberKey(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        FiberKey(coords.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FiberKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The complete, lexicographically sorted fiber of a key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    key: FiberKey,
    elements: Vec<Vec<i64>>,
}

impl Fiber {
    pub fn key(&self) -> &FiberKey {
        &self.key
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A fiber together with the partition of its elements into connected
/// components under the shared-support edge rule. Components are sorted by
/// smallest member, members sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberGraph {
    fiber: Fiber,
    components: Vec<Vec<usize>>,
    component_sizes: Vec<usize>,
}

impl FiberGraph {
    pub fn fiber(&self) -> &Fiber {
        &self.fiber
    }

    pub fn key(&self) -> &FiberKey {
        self.fiber.key()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_sizes(&self) -> &[usize] {
        &self.component_sizes
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    /// Partition as sorted groups ordered by smallest member.
    pub fn groups(&mut self, n: usize) -> Vec<Vec<usize>> {
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for i in 0..n {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        groups.sort_by_key(|g| g[0]);
        groups
    }
}

/// Enumerate the complete fiber of `key`: depth-first over coordinates with
/// the grading bound `u_i <= (c·r)/(c·a_i)` on the residual `r`, plus sign
/// pruning on rows whose remaining entries are all nonnegative (or all
/// nonpositive). Exactness is structural: a leaf is recorded only when the
/// residual is exactly zero.
pub fn enumerate_fiber(a: &ConfigMatrix, key: &FiberKey) -> Result<Fiber> {
    if key.len() != a.row_count() {
        return Err(Error::KeyDimension {
            got: key.len(),
            expected: a.row_count(),
        });
    }
    let d = a.row_count();
    let n = a.col_count();
    let limit = a.fiber_limit();

    // suffix_nonneg[i][r]: every entry of row r in columns i.. is >= 0.
    let mut suffix_nonneg = vec![vec![true; d]; n + 1];
    let mut suffix_nonpos = vec![vec![true; d]; n + 1];
    for i in (0..n).rev() {
        for r in 0..d {
            suffix_nonneg[i][r] = suffix_nonneg[i + 1][r] && !a.entry(r, i).is_negative();
            suffix_nonpos[i][r] = suffix_nonpos[i + 1][r] && !a.entry(r, i).is_positive();
        }
    }

    let mut residual: Vec<BigInt> = key.coords().to_vec();
    let mut residual_degree = a.key_degree(key);
    let mut current = vec![0i64; n];
    let mut out: Vec<Vec<i64>> = Vec::new();

    struct Dfs<'m> {
        a: &'m ConfigMatrix,
        suffix_nonneg: Vec<Vec<bool>>,
        suffix_nonpos: Vec<Vec<bool>>,
        limit: usize,
    }

    impl Dfs<'_> {
        fn run(
            &self,
            i: usize,
            residual: &mut Vec<BigInt>,
            residual_degree: &mut BigInt,
            current: &mut Vec<i64>,
            out: &mut Vec<Vec<i64>>,
        ) -> Result<()> {
            for (r, res) in residual.iter().enumerate() {
                if self.suffix_nonneg[i][r] && res.is_negative() {
                    return Ok(());
                }
                if self.suffix_nonpos[i][r] && res.is_positive() {
                    return Ok(());
                }
            }
            let n = self.a.col_count();
            if i == n {
                // The sign prunes above leave only residual == 0 here.
                debug_assert!(residual.iter().all(|v| v.is_zero()));
                if out.len() == self.limit {
                    return Err(Error::FiberTooLarge {
                        key: FiberKey::new(Vec::new()),
                        limit: self.limit,
                    });
                }
                out.push(current.clone());
                return Ok(());
            }
            let bound_big = residual_degree.div_floor(self.a.col_degree(i));
            if bound_big.is_negative() {
                return Ok(());
            }
            let bound = bound_big.to_i64().ok_or(Error::Overflow {
                context: "bounding a fiber coordinate",
            })?;
            let mut v = 0i64;
            loop {
                current[i] = v;
                self.run(i + 1, residual, residual_degree, current, out)?;
                if v == bound {
                    break;
                }
                v += 1;
                for (r, res) in residual.iter_mut().enumerate() {
                    *res -= self.a.entry(r, i);
                }
                *residual_degree -= self.a.col_degree(i);
            }
            // Backtrack the residual updates.
            if bound > 0 {
                for (r, res) in residual.iter_mut().enumerate() {
                    *res += self.a.entry(r, i) * BigInt::from(bound);
                }
                *residual_degree += self.a.col_degree(i) * BigInt::from(bound);
            }
            current[i] = 0;
            Ok(())
        }
    }

    let dfs = Dfs {
        a,
        suffix_nonneg,
        suffix_nonpos,
        limit,
    };
    match dfs.run(
        0,
        &mut residual,
        &mut residual_degree,
        &mut current,
        &mut out,
    ) {
        Ok(()) => {}
        Err(Error::FiberTooLarge { limit, .. }) => {
            return Err(Error::FiberTooLarge {
                key: key.clone(),
                limit,
            })
        }
        Err(e) => return Err(e),
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]), "DFS yields lex order");
    Ok(Fiber {
        key: key.clone(),
        elements: out,
    })
}

fn components_of(fiber: &Fiber, n: usize) -> Vec<Vec<usize>> {
    let m = fiber.len();
    let mut uf = UnionFind::new(m);
    // Clique contraction per coordinate: all elements positive in coordinate
    // i are pairwise adjacent, so unioning them in a chain is enough. This
    // never materializes the quadratic edge set.
    for i in 0..n {
        let mut first: Option<usize> = None;
        for (idx, u) in fiber.elements().iter().enumerate() {
            if u[i] > 0 {
                match first {
                    None => first = Some(idx),
                    Some(f) => uf.union(f, idx),
                }
            }
        }
    }
    uf.groups(m)
}

/// The fiber graph of `key`, memoized on the matrix.
pub fn fiber_graph(a: &ConfigMatrix, key: &FiberKey) -> Result<Arc<FiberGraph>> {
    if let Some(hit) = a.cache.lock().unwrap().get(key) {
        return Ok(Arc::clone(hit));
    }
    let graph = Arc::new(fiber_graph_uncached(a, key)?);
    let mut cache = a.cache.lock().unwrap();
    let stored = cache.entry(key.clone()).or_insert(graph);
    Ok(Arc::clone(stored))
}

/// Same computation as [`fiber_graph`] with the cache bypassed.
pub fn fiber_graph_uncached(a: &ConfigMatrix, key: &FiberKey) -> Result<FiberGraph> {
    let fiber = enumerate_fiber(a, key)?;
    let components = components_of(&fiber, a.col_count());
    let component_sizes = components.iter().map(|c| c.len()).collect();
    Ok(FiberGraph {
        fiber,
        components,
        component_sizes,
    })
}

/// Fiber graphs of the generating fibers reachable from a seed basis: the
/// distinct keys of the seed's moves whose graphs are disconnected, sorted by
/// weighted degree then key. Callers must pass a seed that generates the
/// toric ideal; keys of a generating seed cover every generating fiber.
pub fn generating_fiber_graphs(
    a: &ConfigMatrix,
    seed: &MarkovBasis,
) -> Result<Vec<Arc<FiberGraph>>> {
    let keys: BTreeSet<FiberKey> = seed.moves().iter().map(|m| m.key().clone()).collect();
    let mut graphs = Vec::new();
    for key in keys {
        let g = fiber_graph(a, &key)?;
        if g.component_count() >= 2 {
            graphs.push(g);
        }
    }
    graphs.sort_by_cached_key(|g| (a.key_degree(g.key()), g.key().clone()));
    Ok(graphs)
}

/// DOT rendering of a fiber graph with explicit shared-support edges; meant
/// for small fibers.
pub fn fiber_graph_dot(g: &FiberGraph) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let elems = g.fiber().elements();
    writeln!(s, "graph \"fiber {}\" {{", g.key()).unwrap();
    for (i, u) in elems.iter().enumerate() {
        let label: Vec<String> = u.iter().map(|v| v.to_string()).collect();
        writeln!(s, "  v{} [label=\"({})\"];", i, label.join(",")).unwrap();
    }
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if shares_support(&elems[i], &elems[j]) {
                writeln!(s, "  v{i} -- v{j};").unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}

pub(crate) fn shares_support(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).any(|(&a, &b)| a > 0 && b > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[i64]]) -> ConfigMatrix {
        ConfigMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn k(coords: &[i64]) -> FiberKey {
        FiberKey::from_i64(coords)
    }

    #[test]
    fn running_example_fibers() {
        let a = matrix(&[&[1, 2, 3]]);
        let f2 = enumerate_fiber(&a, &k(&[2])).unwrap();
        assert_eq!(f2.elements(), &[vec![0, 1, 0], vec![2, 0, 0]]);
        let f3 = enumerate_fiber(&a, &k(&[3])).unwrap();
        assert_eq!(
            f3.elements(),
            &[vec![0, 0, 1], vec![1, 1, 0], vec![3, 0, 0]]
        );
    }

    #[test]
    fn zero_key_is_origin_only() {
        let a = matrix(&[&[1, 2, 3]]);
        let f = enumerate_fiber(&a, &k(&[0])).unwrap();
        assert_eq!(f.elements(), &[vec![0, 0, 0]]);
        let g = fiber_graph(&a, &k(&[0])).unwrap();
        assert_eq!(g.component_sizes(), &[1]);
    }

    #[test]
    fn unreachable_key_is_empty() {
        let a = matrix(&[&[2]]);
        let f = enumerate_fiber(&a, &k(&[1])).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn key_dimension_is_checked() {
        let a = matrix(&[&[1, 2, 3]]);
        let err = enumerate_fiber(&a, &k(&[1, 2])).unwrap_err();
        assert!(matches!(
            err,
            Error::KeyDimension {
                got: 2,
                expected: 1
            }
        ));
    }

    #[test]
    fn running_example_components() {
        let a = matrix(&[&[1, 2, 3]]);
        let g3 = fiber_graph(&a, &k(&[3])).unwrap();
        // (0,0,1) isolated; (1,1,0)-(3,0,0) share the first coordinate.
        assert_eq!(g3.components(), &[vec![0], vec![1, 2]]);
        assert_eq!(g3.component_sizes(), &[1, 2]);
        let g2 = fiber_graph(&a, &k(&[2])).unwrap();
        assert_eq!(g2.component_sizes(), &[1, 1]);
    }

    #[test]
    fn fiber_limit_is_an_error_not_truncation() {
        let a = matrix(&[&[1, 2, 3]]).with_fiber_limit(2);
        let err = enumerate_fiber(&a, &k(&[3])).unwrap_err();
        match err {
            Error::FiberTooLarge { key, limit } => {
                assert_eq!(key, k(&[3]));
                assert_eq!(limit, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cache_returns_identical_results() {
        let a = matrix(&[&[1, 2, 3]]);
        let g1 = fiber_graph(&a, &k(&[3])).unwrap();
        let g2 = fiber_graph(&a, &k(&[3])).unwrap();
        assert!(Arc::ptr_eq(&g1, &g2));
        let fresh = fiber_graph_uncached(&a, &k(&[3])).unwrap();
        assert_eq!(*g1, fresh);
    }

    /// Brute-force completeness oracle: enumerate the whole box `u_i <= t`
    /// for one-row matrices and compare.
    #[test]
    fn completeness_against_box_enumeration() {
        for entries in [vec![1i64, 2, 3], vec![2, 3, 7], vec![4, 6, 9, 11]] {
            let a = matrix(&[&entries]);
            for t in 0..=30i64 {
                let fiber = enumerate_fiber(&a, &k(&[t])).unwrap();
                let mut expected = Vec::new();
                let n = entries.len();
                let mut u = vec![0i64; n];
                'outer: loop {
                    let dot: i64 = entries.iter().zip(&u).map(|(a, b)| a * b).sum();
                    if dot == t {
                        expected.push(u.clone());
                    }
                    let mut i = n;
                    loop {
                        if i == 0 {
                            break 'outer;
                        }
                        i -= 1;
                        u[i] += 1;
                        if entries[i] * u[i] <= t {
                            break;
                        }
                        u[i] = 0;
                    }
                }
                expected.sort();
                assert_eq!(fiber.elements(), expected.as_slice(), "t = {t}");
            }
        }
    }

    /// The clique-contraction components must match components of the
    /// explicit quadratic edge graph.
    #[test]
    fn components_match_explicit_edges() {
        let a = matrix(&[&[2, 3, 7]]);
        for t in 0..=40i64 {
            let g = fiber_graph_uncached(&a, &k(&[t])).unwrap();
            let elems = g.fiber().elements();
            let m = elems.len();
            let mut uf = UnionFind::new(m);
            for i in 0..m {
                for j in i + 1..m {
                    if shares_support(&elems[i], &elems[j]) {
                        uf.union(i, j);
                    }
                }
            }
            assert_eq!(g.components(), uf.groups(m).as_slice(), "t = {t}");
        }
    }

    #[test]
    fn partition_is_valid() {
        let a = matrix(&[&[7, 8, 9, 10]]);
        for t in 0..=35i64 {
            let g = fiber_graph_uncached(&a, &k(&[t])).unwrap();
            let total: usize = g.component_sizes().iter().sum();
            assert_eq!(total, g.fiber().len());
            let mut seen = std::collections::BTreeSet::new();
            for comp in g.components() {
                assert!(!comp.is_empty());
                for &idx in comp {
                    assert!(seen.insert(idx));
                }
            }
            assert_eq!(seen.len(), g.fiber().len());
        }
    }

    #[test]
    fn matrix_and_cache_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<ConfigMatrix>();

        let a = matrix(&[&[7, 8, 9, 10]]);
        let keys: Vec<FiberKey> = (0..=35).map(|t| k(&[t])).collect();
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| {
                    for key in &keys {
                        let g = fiber_graph(&a, key).unwrap();
                        let fresh = fiber_graph_uncached(&a, key).unwrap();
                        assert_eq!(*g, fresh);
                    }
                });
            }
        });
    }

    #[test]
    fn dot_output_lists_nodes_and_edges() {
        let a = matrix(&[&[1, 2, 3]]);
        let g = fiber_graph(&a, &k(&[3])).unwrap();
        let dot = fiber_graph_dot(&g);
        assert!(dot.contains("v0 [label=\"(0,0,1)\"]"));
        assert!(dot.contains("v1 -- v2;"));
        assert!(!dot.contains("v0 -- v1;"));
    }
}
