use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::PartialPartition;
use crate::{Error, Result};

/// Integer chain on canonically oriented simplices: a simplex is a partial
/// partition whose blocks are listed in the global block order.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    degree: isize,
    terms: BTreeMap<PartialPartition, BigInt>,
}

impl Chain {
    pub fn zero(degree: isize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn simplex(face: PartialPartition) -> Self {
        let degree = face.dim();
        let mut terms = BTreeMap::new();
        terms.insert(face, BigInt::one());
        Chain { degree, terms }
    }

    /// Sums the given terms; every face must have dimension `degree`.
    pub fn from_terms<I>(degree: isize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PartialPartition, BigInt)>,
    {
        let mut chain = Chain::zero(degree);
        for (face, coeff) in terms {
            if face.dim() != degree {
                return Err(Error::Precondition(format!(
                    "face {face} has dimension {}, chain has degree {degree}",
                    face.dim()
                )));
            }
            chain.add_term(face, coeff);
        }
        Ok(chain)
    }

    fn add_term(&mut self, face: PartialPartition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(face);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, face: &PartialPartition) -> BigInt {
        self.terms.get(face).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PartialPartition, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &PartialPartition> {
        self.terms.keys()
    }

    pub fn scaled(&self, factor: &BigInt) -> Chain {
        let mut out = Chain::zero(self.degree);
        for (f, c) in &self.terms {
            out.add_term(f.clone(), c * factor);
        }
        out
    }

    /// Simplicial boundary, augmented: a vertex maps to the empty face.
    /// Removing the block at position `i` contributes sign `(-1)^i`.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.degree - 1);
        for (face, coeff) in &self.terms {
            for i in 0..face.len() {
                let c = if i % 2 == 0 { coeff.clone() } else { -coeff };
                out.add_term(face.remove_at(i), c);
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    fn combine(mut self, rhs: &Chain, sign: i8) -> Chain {
        assert_eq!(self.degree, rhs.degree, "adding chains of different degree");
        for (f, c) in &rhs.terms {
            let c = if sign < 0 { -c } else { c.clone() };
            self.add_term(f.clone(), c);
        }
        self
    }
}

impl Add<&Chain> for Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        self.combine(rhs, 1)
    }
}

impl Sub<&Chain> for Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        self.combine(rhs, -1)
    }
}

impl Neg for Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scaled(&BigInt::from(-1))
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (face, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "[{face}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain<{}>({self})", self.degree)
    }
}
