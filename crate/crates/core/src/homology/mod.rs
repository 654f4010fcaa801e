//! Reduced integral homology of finite complexes of partial partitions.
//!
//! Chains live in the augmented complex: the empty face is the unique
//! `(-1)`-simplex and `∂_0` sends every vertex to it. Matrix rows and columns
//! follow the complex's canonical face order, so every matrix here is
//! reproducible.

mod chain;
mod matrix;
mod rank;
mod snf;

pub use chain::Chain;
pub use matrix::IntMatrix;
pub use rank::{rational_rank, EchelonBasis};
pub use snf::{smith_normal_form, IntegerSolver, SnfResult};

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::complex::SimplicialComplex;
use crate::{Error, Result};

/// Matrix of `∂_d : C_d → C_{d-1}`; rows are `(d-1)`-faces, columns `d`-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dim: isize,
    pub matrix: IntMatrix,
}

pub fn boundary_matrix(c: &SimplicialComplex, d: isize) -> BoundaryMatrix {
    let rows = c.faces_of_dim(d - 1);
    let cols = c.faces_of_dim(d);
    let mut m = IntMatrix::zeros(rows.len(), 0);
    for face in cols {
        let column = (0..face.len())
            .map(|i| {
                let row = c
                    .index_of(&face.remove_at(i))
                    .expect("complex is closed under taking faces");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (row, BigInt::from(sign))
            })
            .collect();
        m.push_column(column);
    }
    BoundaryMatrix { dim: d, matrix: m }
}

/// Rank and torsion data for every boundary map of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    /// `face_counts[d + 1]` = number of `d`-faces.
    face_counts: Vec<usize>,
    /// `boundary_ranks[d]` = rank of `∂_d`, for `d = 0 ..= dim + 1`.
    boundary_ranks: Vec<usize>,
    /// Invariant factors > 1 of `∂_{d+1}`, keyed by `d`.
    torsion: BTreeMap<isize, Vec<BigUint>>,
}

impl Homology {
    fn rank_of(&self, d: isize) -> usize {
        if d < 0 {
            0
        } else {
            self.boundary_ranks.get(d as usize).copied().unwrap_or(0)
        }
    }

    /// Reduced Betti number in degree `d >= -1`.
    pub fn betti(&self, d: isize) -> BigUint {
        let faces = if d < -1 {
            0
        } else {
            self.face_counts.get((d + 1) as usize).copied().unwrap_or(0)
        };
        BigUint::from(faces - self.rank_of(d) - self.rank_of(d + 1))
    }

    /// `[β̃_0, …, β̃_dim]`.
    pub fn betti_vector(&self) -> Vec<BigUint> {
        let top = self.face_counts.len() as isize - 2;
        (0..=top).map(|d| self.betti(d)).collect()
    }

    pub fn torsion(&self, d: isize) -> Vec<BigUint> {
        self.torsion.get(&d).cloned().unwrap_or_default()
    }

    /// `Σ_{d >= -1} (-1)^d β̃_d`.
    pub fn euler_characteristic(&self) -> BigInt {
        let top = self.face_counts.len() as isize - 2;
        (-1..=top)
            .map(|d| {
                let b = BigInt::from(self.betti(d));
                if d.rem_euclid(2) == 0 { b } else { -b }
            })
            .sum()
    }
}

/// Integral homology via Smith normal form of every boundary matrix.
pub fn integral_homology(c: &SimplicialComplex) -> Homology {
    let mut boundary_ranks = Vec::new();
    let mut torsion = BTreeMap::new();
    for d in 0..=c.dim() + 1 {
        let snf = smith_normal_form(&boundary_matrix(c, d).matrix);
        boundary_ranks.push(snf.rank);
        torsion.insert(d - 1, snf.torsion());
    }
    Homology { face_counts: c.f_vector(), boundary_ranks, torsion }
}

/// Ranks over `Q` only; torsion is not computed and reported empty.
pub fn rational_homology(c: &SimplicialComplex) -> Homology {
    let boundary_ranks = (0..=c.dim() + 1)
        .map(|d| rational_rank(&boundary_matrix(c, d).matrix))
        .collect();
    Homology { face_counts: c.f_vector(), boundary_ranks, torsion: BTreeMap::new() }
}

/// `[β̃_0, …, β̃_dim]` from integer Smith normal form.
pub fn reduced_betti(c: &SimplicialComplex) -> Vec<BigUint> {
    integral_homology(c).betti_vector()
}

/// Invariant factors greater than one of `∂_{d+1}`: the torsion of `H̃_d`.
pub fn torsion_coefficients(c: &SimplicialComplex, d: isize) -> Vec<BigUint> {
    smith_normal_form(&boundary_matrix(c, d + 1).matrix).torsion()
}

/// `Σ_{d >= -1} (-1)^d f_d` with the empty face counted at `d = -1`.
pub fn reduced_euler_from_faces(c: &SimplicialComplex) -> BigInt {
    c.f_vector()
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            // i = d + 1
            if i % 2 == 1 { BigInt::from(f) } else { -BigInt::from(f) }
        })
        .sum()
}

/// Coordinates of `ch` in the canonical basis of `C_degree(c)`.
pub fn chain_vector(c: &SimplicialComplex, ch: &Chain) -> Result<Vec<BigInt>> {
    let mut v = vec![BigInt::zero(); c.faces_of_dim(ch.degree()).len()];
    for (face, coeff) in ch.terms() {
        let i = c
            .index_of(face)
            .ok_or_else(|| Error::Precondition(format!("face {face} is not in the complex")))?;
        v[i] = coeff.clone();
    }
    Ok(v)
}

pub fn is_cycle(ch: &Chain) -> bool {
    ch.is_cycle()
}

/// Membership in the image of `∂_{d+1}` over the integers, for degree-`d`
/// cycles of a fixed complex. Reuses one recorded Smith reduction.
pub struct BoundarySolver<'a> {
    complex: &'a SimplicialComplex,
    degree: isize,
    solver: IntegerSolver,
}

impl<'a> BoundarySolver<'a> {
    pub fn new(complex: &'a SimplicialComplex, degree: isize) -> Self {
        let solver = IntegerSolver::new(&boundary_matrix(complex, degree + 1).matrix);
        BoundarySolver { complex, degree, solver }
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    /// Fails if `ch` has the wrong degree, leaves the complex or is not a cycle.
    pub fn is_boundary(&self, ch: &Chain) -> Result<bool> {
        if ch.degree() != self.degree {
            return Err(Error::Precondition(format!(
                "chain of degree {} given to a degree-{} solver",
                ch.degree(),
                self.degree
            )));
        }
        if !ch.is_cycle() {
            return Err(Error::Precondition(format!("{ch} is not a cycle")));
        }
        let b = chain_vector(self.complex, ch)?;
        Ok(self.solver.is_solvable(&b))
    }
}

/// Is the cycle `ch` an integral boundary in `c`?
pub fn is_boundary(c: &SimplicialComplex, ch: &Chain) -> Result<bool> {
    BoundarySolver::new(c, ch.degree()).is_boundary(ch)
}

/// Rank over `Q` of the classes of `cycles` in `H̃_d(c)`:
/// `rank [cycles | ∂_{d+1}] - rank ∂_{d+1}`.
pub fn quotient_rank(c: &SimplicialComplex, cycles: &[Chain], d: isize) -> Result<usize> {
    let mut basis = EchelonBasis::new();
    let boundaries = boundary_matrix(c, d + 1);
    for col in boundaries.matrix.columns() {
        basis.insert(col.iter().cloned());
    }
    let base = basis.rank();
    for ch in cycles {
        if ch.degree() != d {
            return Err(Error::Precondition(format!("cycle {ch} does not have degree {d}")));
        }
        if !ch.is_cycle() {
            return Err(Error::Precondition(format!("{ch} is not a cycle")));
        }
        let v = chain_vector(c, ch)?;
        basis.insert(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()));
    }
    Ok(basis.rank() - base)
}
