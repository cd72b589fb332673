//! Seed Markov bases by binomial completion.
//!
//! The toric ideal of an admitted matrix is obtained from its kernel lattice
//! by saturation: start from the binomials of a lattice basis, then for each
//! variable in turn compute a Gröbner basis under a weighted reverse
//! lexicographic order that makes that variable cheapest and divide every
//! element by its common power of the variable. Binomials with exponent
//! differences in the kernel stay binomials under S-pairs and reduction, so
//! the whole engine is vector arithmetic on exponent pairs; no general
//! polynomial machinery is involved.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::ConfigMatrix;
use crate::moves::{BasisKind, MarkovBasis, Move};

/// Caps for the completion engine. The pair cap counts S-pairs actually
/// processed across all saturation rounds of one completion.
#[derive(Debug, Clone)]
pub struct CompletionBudget {
    pub max_pairs: usize,
    pub wall_limit: Option<Duration>,
}

impl Default for CompletionBudget {
    fn default() -> Self {
        CompletionBudget {
            max_pairs: 1_000_000,
            wall_limit: None,
        }
    }
}

struct BudgetTracker<'b> {
    budget: &'b CompletionBudget,
    started: Instant,
    processed: usize,
}

impl<'b> BudgetTracker<'b> {
    fn new(budget: &'b CompletionBudget) -> Self {
        BudgetTracker {
            budget,
            started: Instant::now(),
            processed: 0,
        }
    }

    fn charge(&mut self, basis_size: usize, variable: usize, variables: usize) -> Result<()> {
        self.processed += 1;
        let out_of_time = match self.budget.wall_limit {
            Some(limit) => self.started.elapsed() > limit,
            None => false,
        };
        if self.processed > self.budget.max_pairs || out_of_time {
            return Err(Error::BudgetExceeded {
                pairs_processed: self.processed,
                basis_size,
                variable,
                variables,
            });
        }
        Ok(())
    }
}

/// Weighted degree reverse-lexicographic term order.
///
/// Monomials compare first by weighted degree (weights are the grading
/// degrees of the columns, all positive), then by reverse lexicographic
/// tie-break over a variable permutation: scanning from the cheapest
/// variable, the monomial with the smaller exponent at the first difference
/// is the larger one.
#[derive(Debug, Clone)]
pub struct TermOrder {
    weights: Vec<i64>,
    /// Variables from most significant to cheapest.
    significance: Vec<usize>,
}

impl TermOrder {
    /// Order for saturating `cheapest`: that variable goes last, the rest
    /// keep ascending index order.
    pub fn with_cheapest(weights: Vec<i64>, cheapest: usize) -> Self {
        let n = weights.len();
        debug_assert!(cheapest < n);
        let mut significance: Vec<usize> = (0..n).filter(|&j| j != cheapest).collect();
        significance.push(cheapest);
        TermOrder {
            weights,
            significance,
        }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weighted_degree(&self, exps: &[i64]) -> Result<i64> {
        let mut acc: i128 = 0;
        for (e, w) in exps.iter().zip(&self.weights) {
            acc += (*e as i128) * (*w as i128);
        }
        acc.to_i64().ok_or(Error::Overflow {
            context: "computing a weighted degree",
        })
    }

    pub fn cmp_monomials(&self, a: &[i64], b: &[i64]) -> Ordering {
        let da: i128 = a
            .iter()
            .zip(&self.weights)
            .map(|(e, w)| (*e as i128) * (*w as i128))
            .sum();
        let db: i128 = b
            .iter()
            .zip(&self.weights)
            .map(|(e, w)| (*e as i128) * (*w as i128))
            .sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            other => return other,
        }
        for &v in self.significance.iter().rev() {
            if a[v] != b[v] {
                // Smaller exponent on the cheaper variable wins.
                return b[v].cmp(&a[v]);
            }
        }
        Ordering::Equal
    }
}

/// A pure-difference binomial as an oriented pair of monomials, lead first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    lead: Vec<i64>,
    tail: Vec<i64>,
    lead_mask: u64,
    degree: i64,
}

fn support_mask(exps: &[i64]) -> u64 {
    let mut m = 0u64;
    for (i, &e) in exps.iter().take(64).enumerate() {
        if e > 0 {
            m |= 1 << i;
        }
    }
    m
}

fn divides(small: &[i64], small_mask: u64, m: &[i64], m_mask: u64) -> bool {
    if small_mask & !m_mask != 0 {
        return false;
    }
    small.iter().zip(m).all(|(s, v)| s <= v)
}

impl Binomial {
    /// Orient a monomial pair under the order; `None` when the sides match.
    pub fn from_parts(a: Vec<i64>, b: Vec<i64>, order: &TermOrder) -> Result<Option<Self>> {
        match order.cmp_monomials(&a, &b) {
            Ordering::Equal => Ok(None),
            Ordering::Greater => Ok(Some(Self::assemble(a, b, order)?)),
            Ordering::Less => Ok(Some(Self::assemble(b, a, order)?)),
        }
    }

    /// Binomial of a kernel vector: positive part against negative part.
    pub fn from_vector(z: &[i64], order: &TermOrder) -> Result<Option<Self>> {
        let pos: Vec<i64> = z.iter().map(|&v| if v > 0 { v } else { 0 }).collect();
        let neg: Vec<i64> = z.iter().map(|&v| if v < 0 { -v } else { 0 }).collect();
        Self::from_parts(pos, neg, order)
    }

    fn assemble(lead: Vec<i64>, tail: Vec<i64>, order: &TermOrder) -> Result<Self> {
        let degree = order.weighted_degree(&lead)?;
        let lead_mask = support_mask(&lead);
        Ok(Binomial {
            lead,
            tail,
            lead_mask,
            degree,
        })
    }

    pub fn lead(&self) -> &[i64] {
        &self.lead
    }

    pub fn tail(&self) -> &[i64] {
        &self.tail
    }

    /// Exponent-difference vector `lead - tail`.
    pub fn vector(&self) -> Vec<i64> {
        self.lead
            .iter()
            .zip(&self.tail)
            .map(|(a, b)| a - b)
            .collect()
    }
}

/// `m - sub + add`, exact and checked.
fn transplant(m: &[i64], sub: &[i64], add: &[i64]) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.len() {
        let v = m[i] - sub[i];
        debug_assert!(v >= 0);
        let v = v.checked_add(add[i]).ok_or(Error::Overflow {
            context: "combining monomials during reduction",
        })?;
        out.push(v);
    }
    Ok(out)
}

/// Reduce the monomial pair to normal form against `basis`; `None` when it
/// collapses to zero. The reducer is always the lowest-index match, so the
/// result is deterministic.
fn normal_form(
    mut a: Vec<i64>,
    mut b: Vec<i64>,
    basis: &[Binomial],
    order: &TermOrder,
) -> Result<Option<Binomial>> {
    'outer: loop {
        match order.cmp_monomials(&a, &b) {
            Ordering::Equal => return Ok(None),
            Ordering::Less => std::mem::swap(&mut a, &mut b),
            Ordering::Greater => {}
        }
        let a_mask = support_mask(&a);
        for g in basis {
            if divides(&g.lead, g.lead_mask, &a, a_mask) {
                a = transplant(&a, &g.lead, &g.tail)?;
                continue 'outer;
            }
        }
        // Lead irreducible; take the tail to normal form as well.
        'tail: loop {
            let b_mask = support_mask(&b);
            for g in basis {
                if divides(&g.lead, g.lead_mask, &b, b_mask) {
                    b = transplant(&b, &g.lead, &g.tail)?;
                    continue 'tail;
                }
            }
            break;
        }
        debug_assert_ne!(a, b);
        return Ok(Some(Binomial::assemble(a, b, order)?));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    degree: i64,
    lcm: Vec<i64>,
    i: usize,
    j: usize,
}

fn lcm_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| (*x).max(*y)).collect()
}

fn coprime_leads(f: &Binomial, g: &Binomial) -> bool {
    if f.lead_mask & g.lead_mask != 0 {
        return false;
    }
    f.lead.iter().zip(&g.lead).all(|(a, b)| *a == 0 || *b == 0)
}

/// A Gröbner basis of a binomial ideal under its term order; auto-reduced.
#[derive(Debug, Clone)]
pub struct BinomialGb {
    elements: Vec<Binomial>,
    order: TermOrder,
}

impl BinomialGb {
    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn vectors(&self) -> Vec<Vec<i64>> {
        self.elements.iter().map(|b| b.vector()).collect()
    }
}

/// Make the set auto-reduced: no lead divides another lead, all tails in
/// normal form, zero reductions dropped. The generated ideal is unchanged.
fn interreduce(mut set: Vec<Binomial>, order: &TermOrder) -> Result<Vec<Binomial>> {
    loop {
        let mut changed = false;
        let mut idx = 0;
        while idx < set.len() {
            let current = set.remove(idx);
            match normal_form(current.lead.clone(), current.tail.clone(), &set, order)? {
                None => {
                    changed = true;
                }
                Some(reduced) => {
                    if reduced != current {
                        changed = true;
                    }
                    set.insert(idx, reduced);
                    idx += 1;
                }
            }
        }
        if !changed {
            break;
        }
    }
    set.sort_by(|x, y| {
        x.degree
            .cmp(&y.degree)
            .then_with(|| x.lead.cmp(&y.lead))
            .then_with(|| x.tail.cmp(&y.tail))
    });
    set.dedup();
    Ok(set)
}

fn buchberger_tracked(
    gens: Vec<Binomial>,
    order: &TermOrder,
    tracker: &mut BudgetTracker,
    variable: usize,
    variables: usize,
) -> Result<Vec<Binomial>> {
    let mut basis = interreduce(gens, order)?;
    let mut queue: BinaryHeap<std::cmp::Reverse<PairKey>> = BinaryHeap::new();
    let push_pairs = |queue: &mut BinaryHeap<std::cmp::Reverse<PairKey>>,
                      basis: &[Binomial],
                      new_idx: usize,
                      order: &TermOrder|
     -> Result<()> {
        for k in 0..new_idx {
            if coprime_leads(&basis[k], &basis[new_idx]) {
                continue; // first Buchberger criterion
            }
            let lcm = lcm_exps(&basis[k].lead, &basis[new_idx].lead);
            let degree = order.weighted_degree(&lcm)?;
            queue.push(std::cmp::Reverse(PairKey {
                degree,
                lcm,
                i: k,
                j: new_idx,
            }));
        }
        Ok(())
    };
    for idx in 1..basis.len() {
        push_pairs(&mut queue, &basis, idx, order)?;
    }
    while let Some(std::cmp::Reverse(pair)) = queue.pop() {
        tracker.charge(basis.len(), variable, variables)?;
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        let a = transplant(&pair.lcm, &f.lead, &f.tail)?;
        let b = transplant(&pair.lcm, &g.lead, &g.tail)?;
        if let Some(h) = normal_form(a, b, &basis, order)? {
            basis.push(h);
            let new_idx = basis.len() - 1;
            push_pairs(&mut queue, &basis, new_idx, order)?;
        }
    }
    interreduce(basis, order)
}

/// Buchberger completion of a binomial generating set under `order`.
pub fn buchberger(
    gens: Vec<Binomial>,
    order: TermOrder,
    budget: &CompletionBudget,
) -> Result<BinomialGb> {
    let mut tracker = BudgetTracker::new(budget);
    let n = order.weights().len();
    let elements = buchberger_tracked(gens, &order, &mut tracker, n, n)?;
    Ok(BinomialGb { elements, order })
}

/// Divide every element of a Gröbner basis by its common power of the given
/// variable. With the variable cheapest in the order this turns a basis of
/// the ideal into a basis of its saturation with respect to that variable.
pub fn saturate_variable(gb: BinomialGb, var: usize) -> Result<BinomialGb> {
    let order = gb.order;
    let mut out = Vec::with_capacity(gb.elements.len());
    for b in gb.elements {
        let common = b.lead[var].min(b.tail[var]);
        if common == 0 {
            out.push(b);
            continue;
        }
        let mut lead = b.lead;
        let mut tail = b.tail;
        lead[var] -= common;
        tail[var] -= common;
        // Division preserves the orientation: term orders are translation
        // invariant.
        out.push(Binomial::assemble(lead, tail, &order)?);
    }
    let elements = interreduce(out, &order)?;
    Ok(BinomialGb { elements, order })
}

/// Compute a seed Markov basis for the matrix with the default budget.
pub fn seed_markov_basis(a: &ConfigMatrix) -> Result<MarkovBasis> {
    seed_markov_basis_with_budget(a, &CompletionBudget::default())
}

/// Compute a seed Markov basis: a finite set of moves generating the toric
/// ideal, produced by variable-by-variable saturation of the kernel lattice
/// ideal. The result is verified to connect the fibers of its own keys
/// before it is returned.
pub fn seed_markov_basis_with_budget(
    a: &ConfigMatrix,
    budget: &CompletionBudget,
) -> Result<MarkovBasis> {
    let lattice = a.kernel_basis();
    if lattice.is_empty() {
        return Ok(MarkovBasis::new(a, Vec::new(), BasisKind::Seed));
    }
    let n = a.col_count();
    let weights: Vec<i64> = (0..n)
        .map(|j| {
            a.col_degree(j).to_i64().ok_or(Error::Overflow {
                context: "converting grading degrees for the completion engine",
            })
        })
        .collect::<Result<_>>()?;
    let vectors: Vec<Vec<i64>> = lattice
        .vectors()
        .iter()
        .map(|z| {
            z.iter()
                .map(|v| {
                    v.to_i64().ok_or(Error::Overflow {
                        context: "converting kernel basis vectors for the completion engine",
                    })
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;

    let mut tracker = BudgetTracker::new(budget);
    let mut current: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for z in &vectors {
        let pos: Vec<i64> = z.iter().map(|&v| if v > 0 { v } else { 0 }).collect();
        let neg: Vec<i64> = z.iter().map(|&v| if v < 0 { -v } else { 0 }).collect();
        current.push((pos, neg));
    }
    for var in 0..n {
        let order = TermOrder::with_cheapest(weights.clone(), var);
        let mut gens = Vec::with_capacity(current.len());
        for (p, q) in current {
            if let Some(b) = Binomial::from_parts(p, q, &order)? {
                gens.push(b);
            }
        }
        let elements = buchberger_tracked(gens, &order, &mut tracker, var, n)?;
        let saturated = saturate_variable(
            BinomialGb {
                elements,
                order: order.clone(),
            },
            var,
        )?;
        current = saturated
            .elements
            .into_iter()
            .map(|b| (b.lead, b.tail))
            .collect();
    }

    let moves: Vec<Move> = current
        .iter()
        .map(|(p, q)| {
            let z: Vec<i64> = p.iter().zip(q).map(|(x, y)| x - y).collect();
            debug_assert!(a.is_kernel_vector(&z));
            Move::from_kernel_vector(a, z)
        })
        .collect();
    let basis = MarkovBasis::new(a, moves, BasisKind::Seed);
    crate::markov::check_connects_own_fibers(a, &basis)?;
    Ok(basis)
}
