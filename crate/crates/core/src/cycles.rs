//! Cross-polytope cycles for partitions without singleton blocks.
//!
//! For `F = {x_1, …, x_j}` with every `|x_i| >= 2` and a chosen element
//! `s_i ∈ x_i`, write `x_i^{+1} = x_i` and `x_i^{-1} = {s_i}`. The faces
//! `{x_1^{ε_1}, …, x_j^{ε_j}}`, `ε ∈ {±1}^j`, are the facets of a
//! combinatorial cross-polytope boundary. Giving the `ε`-face the coefficient
//! `Π ε_i` when its blocks are listed in index order yields a `(j-1)`-cycle
//! `σ_F`; the classes of these cycles over all such `F` with `j` blocks form
//! a basis of `H̃_{j-1}(D_n)`.
//!
//! Blocks of `F` are indexed in the global block order.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::combinatorics;
use crate::complex::{Block, PartialPartition, SimplicialComplex};
use crate::homology::{self, BoundarySolver, Chain, Homology};
use crate::{Error, Result};

/// A chosen element of every block of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepresentativeChoice {
    reps: BTreeMap<Block, u32>,
}

impl RepresentativeChoice {
    pub fn new(f: &PartialPartition, reps: BTreeMap<Block, u32>) -> Result<Self> {
        if reps.len() != f.len() || !f.blocks().iter().all(|b| reps.contains_key(b)) {
            return Err(Error::Precondition(format!(
                "representatives must cover exactly the blocks of {f}"
            )));
        }
        if let Some((b, e)) = reps.iter().find(|(b, &e)| !b.contains(e)) {
            return Err(Error::Precondition(format!("{e} is not an element of {b}")));
        }
        Ok(RepresentativeChoice { reps })
    }

    /// Representatives listed in the block order of `f`.
    pub fn from_elements(f: &PartialPartition, elements: &[u32]) -> Result<Self> {
        if elements.len() != f.len() {
            return Err(Error::Precondition(format!(
                "{} representatives given for {} blocks",
                elements.len(),
                f.len()
            )));
        }
        Self::new(f, f.blocks().iter().copied().zip(elements.iter().copied()).collect())
    }

    /// `min(x)` for every block.
    pub fn canonical(f: &PartialPartition) -> Self {
        RepresentativeChoice {
            reps: f.blocks().iter().map(|&b| (b, b.min_element())).collect(),
        }
    }

    /// Every choice for `f`, in lexicographic order of representatives.
    pub fn all(f: &PartialPartition) -> Vec<Self> {
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        for b in f.blocks() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    b.elements().map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|els| Self::from_elements(f, &els).expect("elements drawn from their blocks"))
            .collect()
    }

    pub fn get(&self, block: Block) -> Option<u32> {
        self.reps.get(&block).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Block, u32)> + '_ {
        self.reps.iter().map(|(b, e)| (*b, *e))
    }
}

/// A vector in `{-1, 0, +1}^j`; `0` marks an omitted block.
pub type SignVector = Vec<i8>;

fn require_non_singleton(f: &PartialPartition, choice: &RepresentativeChoice) -> Result<()> {
    if f.is_empty() {
        return Err(Error::Precondition("F must have at least one block".into()));
    }
    if let Some(b) = f.blocks().iter().find(|b| b.is_singleton()) {
        return Err(Error::Precondition(format!(
            "{f} has the singleton block {b}; its representative would coincide with it"
        )));
    }
    for &b in f.blocks() {
        match choice.get(b) {
            Some(e) if b.contains(e) => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "choice does not give an element of block {b}"
                )))
            }
        }
    }
    if choice.reps.len() != f.len() {
        return Err(Error::Precondition("choice has blocks not in F".into()));
    }
    Ok(())
}

/// The block `x_i^{ε}` for `ε ∈ {-1, 0, +1}`; `None` for `0`.
fn signed_block(x: Block, rep: u32, eps: i8) -> Option<Block> {
    match eps {
        1 => Some(x),
        -1 => Some(Block::singleton(rep)),
        _ => None,
    }
}

/// All sign vectors of length `j` over `values`, first coordinate varying
/// slowest.
fn sign_vectors(j: usize, values: &[i8]) -> Vec<SignVector> {
    let mut out: Vec<SignVector> = vec![Vec::new()];
    for _ in 0..j {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// The face selected by `eps`, with its blocks in index order (not sorted).
fn indexed_blocks(f: &PartialPartition, choice: &RepresentativeChoice, eps: &[i8]) -> Vec<Block> {
    f.blocks()
        .iter()
        .zip(eps)
        .filter_map(|(&x, &e)| signed_block(x, choice.get(x).expect("validated"), e))
        .collect()
}

fn face_of(f: &PartialPartition, choice: &RepresentativeChoice, eps: &[i8]) -> PartialPartition {
    PartialPartition::new(indexed_blocks(f, choice, eps)).expect("blocks of HO(F) are disjoint")
}

/// `HO(F)`: the `2^j` faces `{x_1^{ε_1}, …, x_j^{ε_j}}`, `ε ∈ {±1}^j`, with
/// `ε = (+1, …, +1)` (that is, `F` itself) first.
pub fn ho_set(f: &PartialPartition, choice: &RepresentativeChoice) -> Result<Vec<PartialPartition>> {
    require_non_singleton(f, choice)?;
    Ok(sign_vectors(f.len(), &[1, -1])
        .iter()
        .map(|eps| face_of(f, choice, eps))
        .collect())
}

/// Sign of the permutation that sorts `blocks` into the global block order.
fn sorting_sign(blocks: &[Block]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..blocks.len() {
        for k in i + 1..blocks.len() {
            if blocks[i] > blocks[k] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `σ_F`: the `ε`-face of `HO(F)` with coefficient `Π ε_i` times the sign
/// that re-orients its index-order listing canonically.
pub fn sigma_chain(f: &PartialPartition, choice: &RepresentativeChoice) -> Result<Chain> {
    require_non_singleton(f, choice)?;
    let terms = sign_vectors(f.len(), &[1, -1]).into_iter().map(|eps| {
        let listed = indexed_blocks(f, choice, &eps);
        let product: i64 = eps.iter().map(|&e| e as i64).product();
        let coeff = BigInt::from(product * sorting_sign(&listed));
        (PartialPartition::new(listed).expect("disjoint"), coeff)
    });
    Chain::from_terms(f.dim(), terms)
}

/// Closure of `HO(F)`; `3^j` faces including the empty face.
pub fn ho_closure(f: &PartialPartition, choice: &RepresentativeChoice) -> Result<SimplicialComplex> {
    let faces = ho_set(f, choice)?;
    Ok(SimplicialComplex::generated(faces.iter()))
}

/// Face poset of the boundary of the `j`-dimensional cross-polytope, as sign
/// vectors: `a <= b` iff each `a_k` is `0` or equal to `b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossPolytopePoset {
    pub j: usize,
    pub elements: Vec<SignVector>,
}

impl CrossPolytopePoset {
    pub fn leq(a: &[i8], b: &[i8]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| x == 0 || x == y)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements with no strictly larger element.
    pub fn maximal(&self) -> Vec<&SignVector> {
        self.elements
            .iter()
            .filter(|a| {
                !self
                    .elements
                    .iter()
                    .any(|b| b != *a && Self::leq(a, b))
            })
            .collect()
    }

    /// Number of elements with exactly `s` nonzero coordinates.
    pub fn count_with_support(&self, s: usize) -> usize {
        self.elements
            .iter()
            .filter(|e| e.iter().filter(|&&x| x != 0).count() == s)
            .count()
    }
}

pub fn crosspolytope_poset(j: usize) -> Result<CrossPolytopePoset> {
    if j == 0 {
        return Err(Error::Precondition("cross-polytope dimension must be at least 1".into()));
    }
    Ok(CrossPolytopePoset { j, elements: sign_vectors(j, &[-1, 0, 1]) })
}

/// Checks that `G ↦ (ε_1, …, ε_j)`, with `ε_i = +1` if `x_i ∈ G`, `-1` if
/// `{s_i} ∈ G` and `0` otherwise, is an order isomorphism from the faces of
/// the closure of `HO(F)` (ordered by inclusion) onto the cross-polytope
/// poset.
pub fn verify_crosspolytope_iso(f: &PartialPartition, choice: &RepresentativeChoice) -> Result<bool> {
    let closure = ho_closure(f, choice)?;
    let poset = crosspolytope_poset(f.len())?;

    let mut image: HashMap<SignVector, PartialPartition> = HashMap::new();
    for g in closure.faces() {
        let mut eps = vec![0i8; f.len()];
        let mut used = 0usize;
        for (i, &x) in f.blocks().iter().enumerate() {
            let single = Block::singleton(choice.get(x).expect("validated"));
            if g.contains_block(x) {
                eps[i] = 1;
                used += 1;
            }
            if g.contains_block(single) {
                if eps[i] != 0 {
                    return Ok(false);
                }
                eps[i] = -1;
                used += 1;
            }
        }
        // Every block of G must be accounted for.
        if used != g.len() {
            return Ok(false);
        }
        if image.insert(eps, g.clone()).is_some() {
            return Ok(false);
        }
    }
    if image.len() != poset.len() || !poset.elements.iter().all(|e| image.contains_key(e)) {
        return Ok(false);
    }
    for a in &poset.elements {
        for b in &poset.elements {
            if CrossPolytopePoset::leq(a, b) != image[a].is_subface_of(&image[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks a single σ_F: cycle, unit coefficients, support size `2^j` with
/// exactly one member of `D_{n,j,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCheck {
    pub is_cycle: bool,
    pub unit_coefficients: bool,
    pub support_size: usize,
    pub non_singleton_partitions_in_support: usize,
    pub closure_faces: usize,
}

impl CycleCheck {
    pub fn passes(&self, j: usize) -> bool {
        self.is_cycle
            && self.unit_coefficients
            && self.support_size == 1 << j
            && self.non_singleton_partitions_in_support == 1
            && self.closure_faces == 3usize.pow(j as u32)
    }
}

pub fn check_cycle(n: usize, f: &PartialPartition, choice: &RepresentativeChoice) -> Result<CycleCheck> {
    let sigma = sigma_chain(f, choice)?;
    let j = f.len();
    let unit_coefficients = sigma.terms().all(|(_, c)| c.abs().is_one());
    let non_singleton_partitions_in_support = sigma
        .support()
        .filter(|g| g.is_partition_of(n) && g.len() == j && g.non_singleton_count() == j)
        .count();
    Ok(CycleCheck {
        is_cycle: sigma.is_cycle(),
        unit_coefficients,
        support_size: sigma.len(),
        non_singleton_partitions_in_support,
        closure_faces: ho_closure(f, choice)?.face_count(),
    })
}

/// One `σ_F` per `F ∈ D_{n,j,j}` with representatives `min(x)`.
pub fn basis_cycles(n: usize, j: usize) -> Result<Vec<Chain>> {
    if j == 0 || j > n {
        return Err(Error::Precondition(format!("need 1 <= j <= n, got j={j}, n={n}")));
    }
    combinatorics::enumerate_d_njk(n, j, j)?
        .iter()
        .map(|f| sigma_chain(f, &RepresentativeChoice::canonical(f)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub n: usize,
    pub j: usize,
    pub cycle_count: usize,
    pub all_cycles: bool,
    pub quotient_rank: usize,
    pub d_count: u64,
    pub betti: u64,
}

impl BasisReport {
    pub fn verified(&self) -> bool {
        self.all_cycles
            && self.cycle_count as u64 == self.d_count
            && self.quotient_rank as u64 == self.d_count
            && self.d_count == self.betti
    }
}

/// Basis check against an already built `D_n`.
pub fn verify_basis_in(dn: &SimplicialComplex, j: usize) -> Result<BasisReport> {
    verify_basis_with(dn, &homology::integral_homology(dn), j)
}

/// As [`verify_basis_in`], reusing homology already computed for `dn`.
pub fn verify_basis_with(dn: &SimplicialComplex, h: &Homology, j: usize) -> Result<BasisReport> {
    let n = dn.ground_size();
    let cycles = basis_cycles(n, j)?;
    let all_cycles = cycles.iter().all(Chain::is_cycle);
    let quotient_rank = if all_cycles {
        homology::quotient_rank(dn, &cycles, j as isize - 1)?
    } else {
        0
    };
    let betti = h.betti(j as isize - 1);
    Ok(BasisReport {
        n,
        j,
        cycle_count: cycles.len(),
        all_cycles,
        quotient_rank,
        d_count: combinatorics::d_count(n, j as isize, j as isize)
            .to_u64()
            .unwrap_or(u64::MAX),
        betti: betti.to_u64().unwrap_or(u64::MAX),
    })
}

pub fn verify_basis(n: usize, j: usize) -> Result<bool> {
    let dn = SimplicialComplex::partial_partitions(n)?;
    Ok(verify_basis_in(&dn, j)?.verified())
}

/// `σ_F(a) - σ_F(b)` is an integral boundary in `D_n`, decided with a
/// prepared solver for degree `|F| - 1`.
pub fn choice_difference_is_boundary(
    solver: &BoundarySolver<'_>,
    f: &PartialPartition,
    a: &RepresentativeChoice,
    b: &RepresentativeChoice,
) -> Result<bool> {
    let diff = sigma_chain(f, a)? - &sigma_chain(f, b)?;
    solver.is_boundary(&diff)
}

pub fn verify_choice_independence(
    f: &PartialPartition,
    a: &RepresentativeChoice,
    b: &RepresentativeChoice,
) -> Result<bool> {
    let dn = SimplicialComplex::partial_partitions(f.max_element())?;
    let solver = BoundarySolver::new(&dn, f.dim());
    choice_difference_is_boundary(&solver, f, a, b)
}
