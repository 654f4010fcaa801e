//! Rank over the rationals by fraction-free sparse elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

type SparseVec = BTreeMap<usize, BigInt>;

/// Incremental row echelon basis over `Q`, keyed by leading index. Vectors
/// are kept primitive (content 1) to limit coefficient growth.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    pivots: BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts `v`; returns true iff it was independent of the basis.
    pub fn insert<I>(&mut self, v: I) -> bool
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut v: SparseVec = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        loop {
            let Some((&lead, _)) = v.iter().next() else {
                return false;
            };
            let Some(p) = self.pivots.get(&lead) else {
                make_primitive(&mut v);
                self.pivots.insert(lead, v);
                return true;
            };
            // v <- a*v - b*p with a, b chosen to cancel the leading entry.
            let (pl, vl) = (&p[&lead], &v[&lead]);
            let g = pl.gcd(vl);
            let a = pl / &g;
            let b = vl / &g;
            let mut next = SparseVec::new();
            for (i, x) in &v {
                next.insert(*i, x * &a);
            }
            for (i, x) in p {
                let e = next.entry(*i).or_default();
                *e -= x * &b;
            }
            next.retain(|_, x| !x.is_zero());
            make_primitive(&mut next);
            v = next;
        }
    }
}

fn make_primitive(v: &mut SparseVec) {
    let g = v.values().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.values_mut() {
            *x /= &g;
        }
    }
    if v.values().next().is_some_and(|x| x.is_negative()) {
        for x in v.values_mut() {
            *x = -&*x;
        }
    }
}

/// Rank of `m` over `Q` (column rank).
pub fn rational_rank(m: &IntMatrix) -> usize {
    let mut basis = EchelonBasis::new();
    for col in m.columns() {
        basis.insert(col.iter().cloned());
    }
    basis.rank()
}
