//! Moves and Markov bases.
//!
//! A move is a nonzero integer kernel vector in canonical sign form (first
//! nonzero entry positive); it stands for the binomial with the positive part
//! as one monomial and the negative part as the other. Its fiber key is the
//! image of the positive part under the matrix, which equals the image of
//! the negative part.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fiber::FiberKey;
use crate::matrix::ConfigMatrix;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    vector: Vec<i64>,
    key: FiberKey,
}

/// Flip the sign so the first nonzero entry is positive. Idempotent.
pub fn canonical_sign(mut z: Vec<i64>) -> Vec<i64> {
    if let Some(first) = z.iter().find(|&&v| v != 0) {
        if *first < 0 {
            for v in z.iter_mut() {
                *v = -*v;
            }
        }
    }
    z
}

impl Move {
    /// Construct a move from a kernel vector, canonicalizing the sign and
    /// computing the fiber key. Rejects vectors outside the kernel or zero.
    pub fn new(a: &ConfigMatrix, vector: Vec<i64>) -> Result<Self> {
        Self::new_indexed(a, vector, 0)
    }

    /// As [`Move::new`] but reporting `index` in the error, for batch input.
    pub fn new_indexed(a: &ConfigMatrix, vector: Vec<i64>, index: usize) -> Result<Self> {
        if vector.len() != a.col_count()
            || vector.iter().all(|&v| v == 0)
            || !a.is_kernel_vector(&vector)
        {
            return Err(Error::MovesNotInKernel { index, vector });
        }
        Ok(Self::from_kernel_vector(a, vector))
    }

    /// Construct from a vector already known to be a nonzero kernel vector.
    pub(crate) fn from_kernel_vector(a: &ConfigMatrix, vector: Vec<i64>) -> Self {
        let vector = canonical_sign(vector);
        debug_assert!(a.is_kernel_vector(&vector));
        let pos = positive_part(&vector);
        let key = FiberKey::new(a.apply(&pos));
        Move { vector, key }
    }

    /// Construct from a kernel vector when the fiber key is already known.
    pub(crate) fn with_key(vector: Vec<i64>, key: FiberKey) -> Self {
        Move {
            vector: canonical_sign(vector),
            key,
        }
    }

    pub fn vector(&self) -> &[i64] {
        &self.vector
    }

    /// The fiber key, i.e. the degree of the move under the matrix.
    pub fn key(&self) -> &FiberKey {
        &self.key
    }

    pub fn positive_part(&self) -> Vec<i64> {
        positive_part(&self.vector)
    }

    pub fn negative_part(&self) -> Vec<i64> {
        self.vector
            .iter()
            .map(|&v| if v < 0 { -v } else { 0 })
            .collect()
    }
}

pub(crate) fn positive_part(z: &[i64]) -> Vec<i64> {
    z.iter().map(|&v| if v > 0 { v } else { 0 }).collect()
}

/// What a set of moves claims to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Seed,
    Minimal,
    Universal,
    Indispensable,
    Sample,
}

impl BasisKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasisKind::Seed => "seed",
            BasisKind::Minimal => "minimal",
            BasisKind::Universal => "universal",
            BasisKind::Indispensable => "indispensable",
            BasisKind::Sample => "sample",
        }
    }
}

/// A duplicate-free, canonically sorted set of moves.
///
/// Canonical order is ascending weighted degree of the fiber key, then the
/// key itself, then the vector; that groups moves by fiber the same way the
/// enumeration visits them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovBasis {
    moves: Vec<Move>,
    kind: BasisKind,
}

impl MarkovBasis {
    pub fn new(a: &ConfigMatrix, mut moves: Vec<Move>, kind: BasisKind) -> Self {
        moves.sort_by_cached_key(|m| (a.key_degree(m.key()), m.key().clone(), m.vector().to_vec()));
        moves.dedup();
        MarkovBasis { moves, kind }
    }

    /// Moves already in canonical order and duplicate-free.
    pub(crate) fn from_sorted(moves: Vec<Move>, kind: BasisKind) -> Self {
        MarkovBasis { moves, kind }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// The set of canonical vectors, for order-insensitive comparison.
    pub fn vector_set(&self) -> BTreeSet<Vec<i64>> {
        self.moves.iter().map(|m| m.vector().to_vec()).collect()
    }

    /// Multiset of weighted fiber-key degrees, sorted ascending.
    pub fn degree_multiset(&self, a: &ConfigMatrix) -> Vec<BigInt> {
        let mut degrees: Vec<BigInt> = self.moves.iter().map(|m| a.key_degree(m.key())).collect();
        degrees.sort();
        degrees
    }
}
