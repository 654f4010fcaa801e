//! Blocks, partial partitions and the simplicial complex `D_n`.
//!
//! A [`Block`] is a nonempty subset of `[n]` stored as a bit set, element `i`
//! at bit `i - 1`. Blocks are totally ordered by minimum element, then by bit
//! value; that order fixes the orientation of every simplex. A
//! [`PartialPartition`] keeps its blocks sorted in this order.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::combinatorics;
use crate::limits::{self, HARD_MAX_N};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block(u32);

impl Block {
    pub fn from_bits(bits: u32) -> Result<Self> {
        if bits == 0 {
            return Err(Error::InvalidBlock("a block must be nonempty".into()));
        }
        Ok(Block(bits))
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u32;
        for e in elements {
            if e == 0 || e as usize > HARD_MAX_N {
                return Err(Error::InvalidBlock(format!("element {e} outside 1..={HARD_MAX_N}")));
            }
            bits |= 1 << (e - 1);
        }
        Block::from_bits(bits)
    }

    /// Panics if `element` is not in `1..=32`.
    pub fn singleton(element: u32) -> Self {
        assert!((1..=HARD_MAX_N as u32).contains(&element), "element {element} out of range");
        Block(1 << (element - 1))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn min_element(self) -> u32 {
        self.0.trailing_zeros() + 1
    }

    /// Number of elements; never zero.
    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_singleton(self) -> bool {
        self.0.is_power_of_two()
    }

    #[inline]
    pub fn contains(self, element: u32) -> bool {
        (1..=32).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Block) -> bool {
        self.0 & other.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (0..32u32).filter(move |i| bits & (1 << i) != 0).map(|i| i + 1)
    }

    /// Splits off the minimum element: `({min}, rest)`. `None` for singletons.
    pub fn split_min(self) -> Option<(Block, Block)> {
        if self.is_singleton() {
            return None;
        }
        let low = self.0 & self.0.wrapping_neg();
        Some((Block(low), Block(self.0 ^ low)))
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        self.min_element()
            .cmp(&other.min_element())
            .then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.elements().any(|e| e > 9);
        let mut first = true;
        for e in self.elements() {
            if wide && !first {
                f.write_str(".")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Block({self})")
    }
}

/// A set of pairwise-disjoint blocks, i.e. a face of `D_n`.
///
/// Derived ordering compares the sorted block sequences lexicographically,
/// which is the canonical partition order used for tie-breaking.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartialPartition {
    blocks: Vec<Block>,
}

impl PartialPartition {
    pub fn empty() -> Self {
        PartialPartition { blocks: Vec::new() }
    }

    pub fn new(mut blocks: Vec<Block>) -> Result<Self> {
        blocks.sort_unstable();
        let mut seen = 0u32;
        for b in &blocks {
            if seen & b.bits() != 0 {
                return Err(Error::InvalidFace(format!(
                    "block {b} overlaps another block"
                )));
            }
            seen |= b.bits();
        }
        Ok(PartialPartition { blocks })
    }

    /// Builds from block bit masks.
    pub fn from_masks(masks: &[u32]) -> Result<Self> {
        let blocks = masks
            .iter()
            .map(|&m| Block::from_bits(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }

    /// Parses the brace-dropping notation: `"12,34"`, `"1,2,34"`; `""` or
    /// `"∅"` is the empty face. Elements must be single digits.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Self::empty());
        }
        let blocks = s
            .split(',')
            .map(|part| {
                let digits = part
                    .trim()
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .filter(|&d| d > 0)
                            .ok_or_else(|| Error::InvalidFace(format!("bad element {c:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Block::from_elements(digits)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }

    pub(crate) fn from_sorted_unchecked(blocks: Vec<Block>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0] < w[1]));
        PartialPartition { blocks }
    }

    #[inline]
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Simplex dimension, `len - 1`; the empty face has dimension `-1`.
    #[inline]
    pub fn dim(&self) -> isize {
        self.blocks.len() as isize - 1
    }

    /// Union of all blocks as a bit mask.
    pub fn support(&self) -> u32 {
        self.blocks.iter().fold(0, |acc, b| acc | b.bits())
    }

    pub fn masks(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b.bits()).collect()
    }

    pub fn contains_block(&self, block: Block) -> bool {
        self.blocks.binary_search(&block).is_ok()
    }

    pub fn is_subface_of(&self, other: &PartialPartition) -> bool {
        self.blocks.iter().all(|&b| other.contains_block(b))
    }

    pub fn is_partition_of(&self, n: usize) -> bool {
        self.support() == full_mask(n)
    }

    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.is_singleton()).count()
    }

    pub fn non_singleton_count(&self) -> usize {
        self.len() - self.singleton_count()
    }

    pub fn without(&self, block: Block) -> PartialPartition {
        PartialPartition {
            blocks: self.blocks.iter().copied().filter(|&b| b != block).collect(),
        }
    }

    /// Adds a block; fails if it meets an existing one.
    pub fn with(&self, block: Block) -> Result<PartialPartition> {
        if self.support() & block.bits() != 0 {
            return Err(Error::InvalidFace(format!("block {block} overlaps {self}")));
        }
        let mut blocks = self.blocks.clone();
        let pos = blocks.binary_search(&block).unwrap_err();
        blocks.insert(pos, block);
        Ok(PartialPartition { blocks })
    }

    /// Face obtained by deleting the block at position `i`.
    pub fn remove_at(&self, i: usize) -> PartialPartition {
        let mut blocks = self.blocks.clone();
        blocks.remove(i);
        PartialPartition { blocks }
    }

    pub fn intersection(&self, other: &PartialPartition) -> PartialPartition {
        PartialPartition {
            blocks: self
                .blocks
                .iter()
                .copied()
                .filter(|&b| other.contains_block(b))
                .collect(),
        }
    }

    pub fn difference(&self, other: &PartialPartition) -> PartialPartition {
        PartialPartition {
            blocks: self
                .blocks
                .iter()
                .copied()
                .filter(|&b| !other.contains_block(b))
                .collect(),
        }
    }

    /// Sub-face selected by the bits of `mask` (bit `i` keeps block `i`).
    pub fn subface(&self, mask: u64) -> PartialPartition {
        PartialPartition {
            blocks: self
                .blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &b)| b)
                .collect(),
        }
    }

    /// All `2^len` sub-faces, empty face first.
    pub fn subfaces(&self) -> impl Iterator<Item = PartialPartition> + '_ {
        (0..(1u64 << self.len())).map(move |m| self.subface(m))
    }

    /// Number of elements in the highest element present, i.e. the smallest
    /// `n` with this face in `D_n`.
    pub fn max_element(&self) -> usize {
        32 - self.support().leading_zeros() as usize
    }
}

impl fmt::Display for PartialPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("∅");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// All `2^|f|` sub-partial-partitions of `f`, the empty face included.
pub fn closure(f: &PartialPartition) -> Vec<PartialPartition> {
    f.subfaces().collect()
}

/// A finite simplicial complex on blocks of `[n]`, stored with an explicit,
/// sorted face list per dimension. Immutable after construction.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<PartialPartition>,
    /// `faces[d + 1]` holds the `d`-faces in canonical order.
    faces: Vec<Vec<PartialPartition>>,
    index: HashMap<PartialPartition, usize>,
}

impl SimplicialComplex {
    fn from_face_set(n: usize, face_set: HashSet<PartialPartition>, facets: Option<Vec<PartialPartition>>) -> Self {
        let top = face_set.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut faces: Vec<Vec<PartialPartition>> = vec![Vec::new(); top + 1];
        for f in face_set {
            faces[f.len()].push(f);
        }
        let mut index = HashMap::new();
        for layer in faces.iter_mut() {
            layer.sort_unstable();
            for (i, f) in layer.iter().enumerate() {
                index.insert(f.clone(), i);
            }
        }
        let facets = facets.unwrap_or_else(|| maximal_faces(&faces));
        SimplicialComplex { n, facets, faces, index }
    }

    /// `D_n`: every partial partition of `[n]`. Facets are the partitions of
    /// `[n]` in restricted-growth-string order.
    pub fn partial_partitions(n: usize) -> Result<Self> {
        limits::check_n(n)?;
        let faces: HashSet<_> = combinatorics::PartialPartitions::new(n)?.collect();
        let facets = combinatorics::set_partitions_of_n(n)?;
        Ok(Self::from_face_set(n, faces, Some(facets)))
    }

    /// Union of the closures of `generators` (always contains the empty face).
    pub fn generated<'a, I>(generators: I) -> Self
    where
        I: IntoIterator<Item = &'a PartialPartition>,
    {
        let mut faces = HashSet::new();
        faces.insert(PartialPartition::empty());
        let mut n = 0;
        for g in generators {
            n = n.max(g.max_element());
            for f in g.subfaces() {
                faces.insert(f);
            }
        }
        Self::from_face_set(n, faces, None)
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[PartialPartition] {
        &self.facets
    }

    /// Top dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// Faces of dimension `d` in canonical order (empty for out-of-range `d`).
    pub fn faces_of_dim(&self, d: isize) -> &[PartialPartition] {
        if d < -1 {
            return &[];
        }
        self.faces.get((d + 1) as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn faces(&self) -> impl Iterator<Item = &PartialPartition> {
        self.faces.iter().flatten()
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, f: &PartialPartition) -> bool {
        self.index.contains_key(f)
    }

    /// Position of `f` within [`Self::faces_of_dim`] for its dimension.
    pub fn index_of(&self, f: &PartialPartition) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Face counts by dimension; entry `d + 1` counts `d`-faces, entry 0 is
    /// the empty face.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// True iff every maximal face has dimension exactly `d`.
    pub fn is_pure_of_dim(&self, d: isize) -> bool {
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// Connected components of the 1-skeleton, isolated vertices included.
    pub fn connected_components(&self) -> usize {
        let vertices = self.faces_of_dim(0);
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = vertices.len();
        for edge in self.faces_of_dim(1) {
            let a = self.index[&edge.subface(0b01)];
            let b = self.index[&edge.subface(0b10)];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }
}

fn maximal_faces(faces: &[Vec<PartialPartition>]) -> Vec<PartialPartition> {
    let mut covered: HashSet<PartialPartition> = HashSet::new();
    for f in faces.iter().skip(1).flatten() {
        // Downward closure means codimension-one faces suffice.
        for i in 0..f.len() {
            covered.insert(f.remove_at(i));
        }
    }
    faces
        .iter()
        .flatten()
        .filter(|f| !covered.contains(f))
        .cloned()
        .collect()
}

/// Generated subcomplex; alias of [`SimplicialComplex::generated`].
pub fn generated_subcomplex<'a, I>(faces: I) -> SimplicialComplex
where
    I: IntoIterator<Item = &'a PartialPartition>,
{
    SimplicialComplex::generated(faces)
}

/// `D_n`; alias of [`SimplicialComplex::partial_partitions`].
pub fn build_dn(n: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::partial_partitions(n)
}
