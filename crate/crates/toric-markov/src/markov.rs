//! Counting, enumerating, sampling, and verifying minimal Markov bases.
//!
//! Everything here reads off the generating fiber graphs: a fiber with `k`
//! components of sizes `m_1..m_k` contributes a spanning tree on the
//! components plus one chosen element per tree-edge endpoint, and a minimal
//! basis is exactly one such selection per generating fiber. Counting
//! multiplies `m_1 ··· m_k (m_1 + ··· + m_k)^(k-2)` per fiber; enumeration
//! walks Prüfer sequences and endpoint choices in lexicographic order; exact
//! uniform sampling draws Prüfer symbols weighted by component size, which
//! makes every minimal basis equally likely.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fiber::{fiber_graph, generating_fiber_graphs, FiberGraph, FiberKey};
use crate::matrix::ConfigMatrix;
use crate::moves::{BasisKind, MarkovBasis, Move};
use crate::seed::seed_markov_basis;

/// Arbitrary-precision count of minimal Markov bases.
pub type BigCount = BigUint;

/// Default cap for materializing bases in memory; streaming has no cap.
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 100_000;

/// Decode a Prüfer sequence into the edge set of the labelled tree on
/// `{0..n-1}`. Edges are emitted in decode order, each as `(min, max)`:
/// repeatedly join the smallest leaf to the head of the remaining sequence.
pub fn prufer_tree(seq: &[usize], n: usize) -> Result<Vec<(usize, usize)>> {
    if n < 2 {
        return Err(Error::BadSequence {
            reason: format!("need at least two vertices, got {n}"),
        });
    }
    if seq.len() != n - 2 {
        return Err(Error::BadSequence {
            reason: format!(
                "sequence length {} does not match {} vertices",
                seq.len(),
                n
            ),
        });
    }
    if let Some(&bad) = seq.iter().find(|&&s| s >= n) {
        return Err(Error::BadSequence {
            reason: format!("label {bad} out of range 0..{n}"),
        });
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(u) = leaves.pop().expect("two vertices remain");
    let Reverse(v) = leaves.pop().expect("two vertices remain");
    edges.push((u.min(v), u.max(v)));
    Ok(edges)
}

/// Verdict of checking a move set against reference fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Every reference fiber is connected by the moves.
    pub generates: bool,
    /// `generates`, the move count matches the minimal size, and removing
    /// any one move disconnects some reference fiber.
    pub minimal: bool,
    /// On failure, a disconnected fiber and two elements it cannot join.
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub fiber: FiberKey,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
}

/// Connectivity data of one fiber under a move set.
struct FiberEdges {
    graph: Arc<FiberGraph>,
    /// Edges `(from, to, move_index)` of the move-restricted graph.
    edges: Vec<(usize, usize, usize)>,
}

fn move_edges(a: &ConfigMatrix, key: &FiberKey, moves: &[Move]) -> Result<FiberEdges> {
    let graph = fiber_graph(a, key)?;
    let elements = graph.fiber().elements();
    let index: HashMap<&[i64], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, u)| (u.as_slice(), i))
        .collect();
    let mut edges = Vec::new();
    for (mi, m) in moves.iter().enumerate() {
        for (ui, u) in elements.iter().enumerate() {
            let shifted: Vec<i64> = u.iter().zip(m.vector()).map(|(x, z)| x + z).collect();
            if shifted.iter().any(|&v| v < 0) {
                continue;
            }
            if let Some(&vi) = index.get(shifted.as_slice()) {
                edges.push((ui, vi, mi));
            }
        }
    }
    Ok(FiberEdges { graph, edges })
}

fn connected_without(fe: &FiberEdges, skip: Option<usize>) -> bool {
    let m = fe.graph.fiber().len();
    if m <= 1 {
        return true;
    }
    let mut uf = crate::fiber::UnionFind::new(m);
    for &(u, v, mi) in &fe.edges {
        if Some(mi) != skip {
            uf.union(u, v);
        }
    }
    let root = uf.find(0);
    (1..m).all(|i| uf.find(i) == root)
}

fn first_disconnection(fe: &FiberEdges) -> Option<(Vec<i64>, Vec<i64>)> {
    let m = fe.graph.fiber().len();
    let mut uf = crate::fiber::UnionFind::new(m);
    for &(u, v, _) in &fe.edges {
        uf.union(u, v);
    }
    let root = uf.find(0);
    let other = (1..m).find(|&i| uf.find(i) != root)?;
    let elems = fe.graph.fiber().elements();
    Some((elems[0].clone(), elems[other].clone()))
}

/// Check a move set against reference fibers: does it connect each of them,
/// and is it a minimal such set?
///
/// The reference keys should be the generating fibers of the matrix, obtained
/// from any verified seed; connectivity there is what forces generation. A
/// set that genuinely generates always carries moves keyed by every
/// generating fiber, so verifying a candidate against its own keys rejects
/// any set that fails on a fiber it touches; it cannot detect a candidate
/// that omits a generating degree entirely.
pub fn verify_markov_basis(
    a: &ConfigMatrix,
    vectors: &[Vec<i64>],
    reference: &[FiberKey],
) -> Result<Verdict> {
    let mut moves = Vec::with_capacity(vectors.len());
    for (i, z) in vectors.iter().enumerate() {
        moves.push(Move::new_indexed(a, z.clone(), i)?);
    }
    moves.sort();
    moves.dedup();
    let keys: BTreeSet<FiberKey> = reference.iter().cloned().collect();
    let mut fibers = Vec::with_capacity(keys.len());
    for key in &keys {
        fibers.push(move_edges(a, key, &moves)?);
    }

    let mut generates = true;
    let mut certificate = None;
    for fe in &fibers {
        if !connected_without(fe, None) {
            generates = false;
            let (u, v) = first_disconnection(fe).expect("disconnected fiber has a witness");
            certificate = Some(Certificate {
                fiber: fe.graph.key().clone(),
                u,
                v,
            });
            break;
        }
    }

    let mut minimal = generates;
    if minimal {
        let expected: usize = fibers
            .iter()
            .map(|fe| fe.graph.component_count().saturating_sub(1))
            .sum();
        minimal = moves.len() == expected;
    }
    if minimal {
        'moves: for mi in 0..moves.len() {
            for fe in &fibers {
                if !connected_without(fe, Some(mi)) {
                    continue 'moves;
                }
            }
            minimal = false; // this move is redundant
            break;
        }
    }
    Ok(Verdict {
        generates,
        minimal,
        certificate,
    })
}

/// Require that a seed connects the fiber of every key it touches; a set
/// failing this cannot generate the toric ideal.
pub(crate) fn check_connects_own_fibers(a: &ConfigMatrix, basis: &MarkovBasis) -> Result<()> {
    let keys: BTreeSet<FiberKey> = basis.moves().iter().map(|m| m.key().clone()).collect();
    for key in keys {
        let fe = move_edges(a, &key, basis.moves())?;
        if !connected_without(&fe, None) {
            let (u, v) = first_disconnection(&fe).expect("disconnected fiber has a witness");
            return Err(Error::NotGenerating { fiber: key, u, v });
        }
    }
    Ok(())
}

/// The generating fiber graphs reachable from a seed, after checking the
/// seed connects its own fibers. Sorted by weighted degree, then key.
pub fn generating_fibers(a: &ConfigMatrix, seed: &MarkovBasis) -> Result<Vec<Arc<FiberGraph>>> {
    check_connects_own_fibers(a, seed)?;
    generating_fiber_graphs(a, seed)
}

/// Admit an externally supplied seed basis.
///
/// Three checks run before the set is accepted: every vector lies in the
/// kernel, the vectors span the full kernel lattice over the integers, and
/// the set connects the fiber of every key it touches. Each rejection comes
/// with a concrete witness. A set that passes and truly generates drives the
/// downstream pipeline correctly; a set that spans the lattice and connects
/// its own fibers but silently omits an entire generating degree is not
/// detectable without rerunning completion, and stays the caller's
/// responsibility.
pub fn verify_seed_basis(a: &ConfigMatrix, vectors: &[Vec<i64>]) -> Result<MarkovBasis> {
    let mut moves = Vec::with_capacity(vectors.len());
    for (i, z) in vectors.iter().enumerate() {
        moves.push(Move::new_indexed(a, z.clone(), i)?);
    }
    let gens: Vec<Vec<num_bigint::BigInt>> = vectors
        .iter()
        .map(|z| z.iter().map(|&v| num_bigint::BigInt::from(v)).collect())
        .collect();
    for z in a.kernel_basis().vectors() {
        if !crate::lattice::lattice_contains(&gens, z) {
            return Err(Error::SeedLatticeIncomplete { missing: z.clone() });
        }
    }
    let basis = MarkovBasis::new(a, moves, BasisKind::Seed);
    check_connects_own_fibers(a, &basis)?;
    Ok(basis)
}

fn count_from_graphs(graphs: &[Arc<FiberGraph>]) -> BigCount {
    let mut total = BigCount::one();
    for g in graphs {
        let sizes = g.component_sizes();
        let k = sizes.len();
        debug_assert!(k >= 2);
        let mut factor = BigCount::one();
        for &m in sizes {
            factor *= BigCount::from(m);
        }
        let sum: usize = sizes.iter().sum();
        // k = 2 contributes exponent zero: an empty product, never division.
        factor *= BigCount::from(sum).pow((k - 2) as u32);
        total *= factor;
    }
    total
}

/// Number of minimal Markov bases, computed without enumerating them.
pub fn count_markov(a: &ConfigMatrix) -> Result<BigCount> {
    let seed = seed_markov_basis(a)?;
    count_markov_from_seed(a, &seed)
}

pub fn count_markov_from_seed(a: &ConfigMatrix, seed: &MarkovBasis) -> Result<BigCount> {
    Ok(count_from_graphs(&generating_fibers(a, seed)?))
}

/// Per-fiber enumeration state: a Prüfer odometer over component labels and
/// an endpoint-choice odometer per tree edge, both advancing
/// lexicographically.
struct FiberSelector {
    key: FiberKey,
    elements: Vec<Vec<i64>>,
    components: Vec<Vec<usize>>,
    prufer: Vec<usize>,
    edges: Vec<(usize, usize)>,
    choices: Vec<(usize, usize)>,
}

impl FiberSelector {
    fn new(graph: &FiberGraph) -> Self {
        let k = graph.component_count();
        let prufer = vec![0usize; k.saturating_sub(2)];
        let edges = decode_edges(&prufer, k);
        let choices = vec![(0usize, 0usize); edges.len()];
        FiberSelector {
            key: graph.key().clone(),
            elements: graph.fiber().elements().to_vec(),
            components: graph.components().to_vec(),
            prufer,
            edges,
            choices,
        }
    }

    fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Step to the next selection; returns true when the odometer wrapped
    /// back to the initial state.
    fn advance(&mut self) -> bool {
        for e in (0..self.edges.len()).rev() {
            let (a, b) = self.edges[e];
            let (ca, cb) = (self.components[a].len(), self.components[b].len());
            let slot = &mut self.choices[e];
            slot.1 += 1;
            if slot.1 < cb {
                return false;
            }
            slot.1 = 0;
            slot.0 += 1;
            if slot.0 < ca {
                return false;
            }
            slot.0 = 0;
        }
        let k = self.component_count();
        for p in (0..self.prufer.len()).rev() {
            self.prufer[p] += 1;
            if self.prufer[p] < k {
                self.refresh_tree();
                return false;
            }
            self.prufer[p] = 0;
        }
        self.refresh_tree();
        true
    }

    fn refresh_tree(&mut self) {
        self.edges = decode_edges(&self.prufer, self.component_count());
        self.choices = vec![(0, 0); self.edges.len()];
    }

    /// Moves of the current selection, sorted by vector.
    fn current_moves(&self, out: &mut Vec<Move>) {
        let mut local = Vec::with_capacity(self.edges.len());
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (pa, pb) = self.choices[e];
            let u = &self.elements[self.components[a][pa]];
            let v = &self.elements[self.components[b][pb]];
            let z: Vec<i64> = u.iter().zip(v).map(|(x, y)| x - y).collect();
            local.push(Move::with_key(z, self.key.clone()));
        }
        local.sort();
        out.extend(local);
    }
}

fn decode_edges(prufer: &[usize], k: usize) -> Vec<(usize, usize)> {
    let mut edges = prufer_tree(prufer, k).expect("internal sequences are well formed");
    edges.sort();
    edges
}

/// Lazy stream of every minimal Markov basis in a fixed deterministic order:
/// the cartesian product over generating fibers (ascending weighted degree,
/// then key) of Prüfer sequences in lexicographic order and endpoint choices
/// in lexicographic order.
pub struct BasisStream {
    selectors: Vec<FiberSelector>,
    started: bool,
    exhausted: bool,
}

impl BasisStream {
    fn emit(&self) -> MarkovBasis {
        let mut moves = Vec::new();
        for s in &self.selectors {
            s.current_moves(&mut moves);
        }
        MarkovBasis::from_sorted(moves, BasisKind::Minimal)
    }
}

impl Iterator for BasisStream {
    type Item = MarkovBasis;

    fn next(&mut self) -> Option<MarkovBasis> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.emit());
        }
        // Odometer across fibers, last fiber fastest.
        for i in (0..self.selectors.len()).rev() {
            if !self.selectors[i].advance() {
                return Some(self.emit());
            }
        }
        self.exhausted = true;
        None
    }
}

/// Stream of all minimal Markov bases, seeded by the completion engine.
pub fn markov_bases(a: &ConfigMatrix) -> Result<BasisStream> {
    let seed = seed_markov_basis(a)?;
    markov_bases_from_seed(a, &seed)
}

pub fn markov_bases_from_seed(a: &ConfigMatrix, seed: &MarkovBasis) -> Result<BasisStream> {
    let graphs = generating_fibers(a, seed)?;
    Ok(BasisStream {
        selectors: graphs.iter().map(|g| FiberSelector::new(g)).collect(),
        started: false,
        exhausted: false,
    })
}

/// Materialize every minimal basis, guarded by `limit` (defaults to
/// [`DEFAULT_MATERIALIZE_LIMIT`] when `None`). Streaming has no such cap.
pub fn collect_markov_bases(
    a: &ConfigMatrix,
    seed: &MarkovBasis,
    limit: Option<usize>,
) -> Result<Vec<MarkovBasis>> {
    let limit = limit.unwrap_or(DEFAULT_MATERIALIZE_LIMIT);
    let count = count_markov_from_seed(a, seed)?;
    if count > BigCount::from(limit) {
        return Err(Error::TooManyBases { count, limit });
    }
    Ok(markov_bases_from_seed(a, seed)?.collect())
}

/// The distinguished minimal basis: the first element of the enumeration
/// stream. Errors with a certificate if the seed does not connect one of its
/// own fibers.
pub fn minimize(a: &ConfigMatrix, seed: &MarkovBasis) -> Result<MarkovBasis> {
    let graphs = generating_fibers(a, seed)?;
    let mut moves = Vec::new();
    for g in &graphs {
        FiberSelector::new(g).current_moves(&mut moves);
    }
    Ok(MarkovBasis::from_sorted(moves, BasisKind::Minimal))
}

/// Draw `count` independent, exactly uniform samples from the set of minimal
/// Markov bases.
///
/// Per generating fiber with component sizes `m_1..m_k`, the `k-2` Prüfer
/// symbols are drawn i.i.d. with probability `m_j / (m_1+..+m_k)` for
/// component `j`, the tree is decoded, and each edge picks its endpoints
/// uniformly inside their components. Weighting the symbols by component
/// size is what makes the distribution over bases exactly uniform. The
/// generator is ChaCha8 seeded with `rng_seed`, so results are reproducible
/// across runs and platforms.
pub fn random_markov(a: &ConfigMatrix, rng_seed: u64, count: usize) -> Result<Vec<MarkovBasis>> {
    let seed = seed_markov_basis(a)?;
    random_markov_from_seed(a, &seed, rng_seed, count)
}

pub fn random_markov_from_seed(
    a: &ConfigMatrix,
    seed: &MarkovBasis,
    rng_seed: u64,
    count: usize,
) -> Result<Vec<MarkovBasis>> {
    let graphs = generating_fibers(a, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(sample_one(&graphs, &mut rng));
    }
    Ok(out)
}

fn sample_one(graphs: &[Arc<FiberGraph>], rng: &mut ChaCha8Rng) -> MarkovBasis {
    let mut moves = Vec::new();
    for g in graphs {
        let sizes = g.component_sizes();
        let k = sizes.len();
        let total: usize = sizes.iter().sum();
        // Size-weighted Prüfer symbols, in sequence order.
        let mut symbols = Vec::with_capacity(k.saturating_sub(2));
        for _ in 0..k.saturating_sub(2) {
            let mut r = rng.gen_range(0..total);
            let mut comp = 0usize;
            while r >= sizes[comp] {
                r -= sizes[comp];
                comp += 1;
            }
            symbols.push(comp);
        }
        let edges = decode_edges(&symbols, k);
        let elements = g.fiber().elements();
        let components = g.components();
        let mut local = Vec::with_capacity(edges.len());
        for (ca, cb) in edges {
            let pa = rng.gen_range(0..components[ca].len());
            let pb = rng.gen_range(0..components[cb].len());
            let u = &elements[components[ca][pa]];
            let v = &elements[components[cb][pb]];
            let z: Vec<i64> = u.iter().zip(v).map(|(x, y)| x - y).collect();
            local.push(Move::with_key(z, g.key().clone()));
        }
        local.sort();
        moves.extend(local);
    }
    MarkovBasis::from_sorted(moves, BasisKind::Sample)
}

fn relabel(basis: MarkovBasis, kind: BasisKind) -> MarkovBasis {
    MarkovBasis::from_sorted(basis.moves().to_vec(), kind)
}

/// Moves present in every minimal Markov basis: one per generating fiber
/// whose graph is exactly two singleton components.
pub fn indispensable_set(a: &ConfigMatrix) -> Result<MarkovBasis> {
    let seed = seed_markov_basis(a)?;
    indispensable_from_seed(a, &seed)
}

pub fn indispensable_from_seed(a: &ConfigMatrix, seed: &MarkovBasis) -> Result<MarkovBasis> {
    let graphs = generating_fibers(a, seed)?;
    let mut moves = Vec::new();
    for g in &graphs {
        if g.fiber().len() == 2 && g.component_sizes() == [1, 1] {
            let e = g.fiber().elements();
            let z: Vec<i64> = e[0].iter().zip(&e[1]).map(|(x, y)| x - y).collect();
            moves.push(Move::with_key(z, g.key().clone()));
        }
    }
    Ok(relabel(
        MarkovBasis::new(a, moves, BasisKind::Indispensable),
        BasisKind::Indispensable,
    ))
}

/// Moves present in some minimal Markov basis: for each generating fiber,
/// every element pair spanning two distinct components.
pub fn universal_markov(a: &ConfigMatrix) -> Result<MarkovBasis> {
    let seed = seed_markov_basis(a)?;
    universal_from_seed(a, &seed)
}

pub fn universal_from_seed(a: &ConfigMatrix, seed: &MarkovBasis) -> Result<MarkovBasis> {
    let graphs = generating_fibers(a, seed)?;
    let mut moves = Vec::new();
    for g in &graphs {
        let comps = g.components();
        let elems = g.fiber().elements();
        for ca in 0..comps.len() {
            for cb in ca + 1..comps.len() {
                for &iu in &comps[ca] {
                    for &iv in &comps[cb] {
                        let z: Vec<i64> = elems[iu]
                            .iter()
                            .zip(&elems[iv])
                            .map(|(x, y)| x - y)
                            .collect();
                        moves.push(Move::with_key(z, g.key().clone()));
                    }
                }
            }
        }
    }
    Ok(relabel(
        MarkovBasis::new(a, moves, BasisKind::Universal),
        BasisKind::Universal,
    ))
}
