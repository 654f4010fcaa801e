//! Sparse Smith normal form over the integers.
//!
//! Each step picks a nonzero entry of minimal absolute value (ties broken by
//! Markowitz fill cost, then position), clears its column with row operations
//! and its row with column operations, moving the pivot to any smaller
//! remainder that appears. The pivots form a permuted diagonal; a final
//! gcd/lcm pass turns them into a divisibility chain.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Invariant factors `d_1 | d_2 | … | d_r` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigUint>,
    pub rank: usize,
}

impl SnfResult {
    /// Factors greater than one, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

struct Reducer {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
    record: bool,
    /// `row[dst] += factor * row[src]`, in application order.
    log: Vec<(usize, usize, BigInt)>,
    /// `(row, col, |value|)` of each finished pivot.
    pivots: Vec<(usize, usize, BigInt)>,
}

impl Reducer {
    fn new(m: &IntMatrix, record: bool) -> Self {
        let mut rows = vec![BTreeMap::new(); m.nrows()];
        let mut cols = vec![BTreeSet::new(); m.ncols()];
        for (r, c, v) in m.triplets() {
            rows[r].insert(c, v.clone());
            cols[c].insert(r);
        }
        Reducer { rows, cols, record, log: Vec::new(), pivots: Vec::new() }
    }

    fn select_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(&BigInt, usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            let row_cost = row.len().saturating_sub(1);
            for (&c, v) in row {
                let cost = row_cost * self.cols[c].len().saturating_sub(1);
                let better = match best {
                    None => true,
                    Some((bv, bcost, _, _)) => match v.magnitude().cmp(bv.magnitude()) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => cost < bcost,
                        std::cmp::Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((v, cost, r, c));
                    if cost == 0 && v.magnitude().is_one() {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn add_row(&mut self, src: usize, dst: usize, factor: &BigInt) {
        let src_entries: Vec<(usize, BigInt)> =
            self.rows[src].iter().map(|(c, v)| (*c, v.clone())).collect();
        for (c, v) in src_entries {
            let entry = self.rows[dst].entry(c).or_default();
            *entry += factor * v;
            if entry.is_zero() {
                self.rows[dst].remove(&c);
                self.cols[c].remove(&dst);
            } else {
                self.cols[c].insert(dst);
            }
        }
        if self.record {
            self.log.push((src, dst, factor.clone()));
        }
    }

    fn smallest_in_column(&self, q: usize, except: usize) -> Option<usize> {
        self.cols[q]
            .iter()
            .filter(|&&r| r != except)
            .min_by(|&&a, &&b| self.rows[a][&q].magnitude().cmp(self.rows[b][&q].magnitude()))
            .copied()
    }

    fn smallest_in_row(&self, p: usize, except: usize) -> Option<usize> {
        self.rows[p]
            .iter()
            .filter(|(&c, _)| c != except)
            .min_by(|a, b| a.1.magnitude().cmp(b.1.magnitude()))
            .map(|(&c, _)| c)
    }

    fn eliminate(&mut self, mut p: usize, mut q: usize) {
        loop {
            let piv = self.rows[p][&q].clone();
            let others: Vec<usize> = self.cols[q].iter().copied().filter(|&r| r != p).collect();
            for r in others {
                let f = -(&self.rows[r][&q] / &piv);
                if !f.is_zero() {
                    self.add_row(p, r, &f);
                }
            }
            if let Some(r) = self.smallest_in_column(q, p) {
                p = r;
                continue;
            }
            // Column q is now zero off the pivot, so a column operation
            // col_c -= f * col_q only touches row p: it leaves the remainder.
            let others: Vec<usize> = self.rows[p].keys().copied().filter(|&c| c != q).collect();
            for c in others {
                let rem = &self.rows[p][&c] % &piv;
                if rem.is_zero() {
                    self.rows[p].remove(&c);
                    self.cols[c].remove(&p);
                } else {
                    self.rows[p].insert(c, rem);
                }
            }
            if let Some(c) = self.smallest_in_row(p, q) {
                q = c;
                continue;
            }
            self.rows[p].remove(&q);
            self.cols[q].remove(&p);
            self.pivots.push((p, q, piv.abs()));
            return;
        }
    }

    fn run(mut self) -> Self {
        while let Some((p, q)) = self.select_pivot() {
            self.eliminate(p, q);
        }
        self
    }
}

/// Turns a multiset of positive diagonal entries into the equivalent
/// divisibility chain.
fn divisibility_chain(mut diag: Vec<BigUint>) -> Vec<BigUint> {
    diag.sort();
    let len = diag.len();
    for i in 0..len {
        for k in i + 1..len {
            if (&diag[k] % &diag[i]).is_zero() {
                continue;
            }
            let g = diag[i].gcd(&diag[k]);
            let l = diag[i].lcm(&diag[k]);
            diag[i] = g;
            diag[k] = l;
        }
    }
    diag
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let reduced = Reducer::new(m, false).run();
    let diag: Vec<BigUint> = reduced
        .pivots
        .iter()
        .map(|(_, _, v)| v.magnitude().clone())
        .collect();
    SnfResult { rank: diag.len(), invariant_factors: divisibility_chain(diag) }
}

/// Decides integer solvability of `A x = b` for a fixed `A`.
///
/// Built from one Smith reduction of `A` that records its row operations `U`;
/// `U A V` is a permuted diagonal, so `A x = b` has an integral solution iff
/// `U b` vanishes off the pivot rows and each pivot divides its entry.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    nrows: usize,
    log: Vec<(usize, usize, BigInt)>,
    pivot_of_row: BTreeMap<usize, BigInt>,
    snf: SnfResult,
}

impl IntegerSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let reduced = Reducer::new(a, true).run();
        let diag = reduced.pivots.iter().map(|(_, _, v)| v.magnitude().clone()).collect::<Vec<_>>();
        let snf = SnfResult { rank: diag.len(), invariant_factors: divisibility_chain(diag) };
        IntegerSolver {
            nrows: a.nrows(),
            log: reduced.log,
            pivot_of_row: reduced.pivots.into_iter().map(|(p, _, v)| (p, v)).collect(),
            snf,
        }
    }

    pub fn snf(&self) -> &SnfResult {
        &self.snf
    }

    /// True iff some integer vector `x` has `A x = b`. Panics if `b` has the
    /// wrong length.
    pub fn is_solvable(&self, b: &[BigInt]) -> bool {
        assert_eq!(b.len(), self.nrows, "right-hand side has wrong length");
        let mut y = b.to_vec();
        for (src, dst, f) in &self.log {
            if !y[*src].is_zero() {
                let delta = f * &y[*src];
                y[*dst] += delta;
            }
        }
        y.iter().enumerate().all(|(r, v)| match self.pivot_of_row.get(&r) {
            Some(d) => (v % d).is_zero(),
            None => v.is_zero(),
        })
    }
}
