//! Facet orders, shellability checks, restriction sets and the classes
//! `Γ_{j,k}`.
//!
//! Two independent checkers are provided. [`verify_shelling_definition`]
//! grows the subcomplex `Δ_{s-1}` face by face and tests that its
//! intersection with each new facet's closure is pure of codimension one.
//! [`verify_shelling_lemma`] checks the exchange criterion: for every
//! `q < s` there are `r < s` and `x ∈ F_s` with
//! `F_q ∩ F_s ⊆ F_r ∩ F_s = F_s ∖ {x}`.

use std::collections::{BTreeMap, HashSet};

use crate::combinatorics;
use crate::complex::{Block, PartialPartition, SimplicialComplex};
use crate::limits;
use crate::{Error, Result};

/// How facets with equal block counts are ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Canonical partition order.
    #[default]
    Lex,
    /// Canonical partition order, reversed.
    RevLex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingOrder {
    facets: Vec<PartialPartition>,
}

impl ShellingOrder {
    pub fn new(facets: Vec<PartialPartition>) -> Self {
        ShellingOrder { facets }
    }

    pub fn facets(&self) -> &[PartialPartition] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn into_facets(self) -> Vec<PartialPartition> {
        self.facets
    }
}

/// Partitions of `[n]` by strictly decreasing block count, ties broken by
/// `tie_break`.
pub fn default_shelling_order(n: usize, tie_break: TieBreak) -> Result<ShellingOrder> {
    limits::check_n(n)?;
    let ground: Vec<u32> = (1..=n as u32).collect();
    let mut facets = combinatorics::enumerate_set_partitions(&ground)?;
    facets.sort_by(|a, b| {
        b.len().cmp(&a.len()).then_with(|| match tie_break {
            TieBreak::Lex => a.cmp(b),
            TieBreak::RevLex => b.cmp(a),
        })
    });
    Ok(ShellingOrder { facets })
}

/// Outcome of a shellability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingVerdict {
    /// 1-based position `s` of the first facet violating the condition.
    pub first_failure: Option<usize>,
}

impl ShellingVerdict {
    pub fn is_shelling(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn check_is_facet_permutation(c: &SimplicialComplex, order: &[PartialPartition]) -> Result<()> {
    let expected: HashSet<&PartialPartition> = c.facets().iter().collect();
    let given: HashSet<&PartialPartition> = order.iter().collect();
    if order.len() != c.facets().len() || given.len() != order.len() || given != expected {
        return Err(Error::Precondition(
            "order is not a permutation of the complex's facets".into(),
        ));
    }
    Ok(())
}

/// Shellability straight from the definition: for each `s >= 2` the complex
/// `(∪_{r<s} closure(F_r)) ∩ closure(F_s)` must be pure of dimension
/// `dim F_s - 1`.
pub fn verify_shelling_definition(
    c: &SimplicialComplex,
    order: &[PartialPartition],
) -> Result<ShellingVerdict> {
    check_is_facet_permutation(c, order)?;
    let mut built: HashSet<PartialPartition> = HashSet::new();
    for (s, facet) in order.iter().enumerate() {
        if s > 0 {
            let j = facet.len();
            // Subsets of F_s lying in Δ_{s-1}, as bit masks over F_s's blocks.
            let shared: HashSet<u64> = (0..(1u64 << j))
                .filter(|&m| built.contains(&facet.subface(m)))
                .collect();
            let pure = shared.iter().all(|&m| {
                let maximal = (0..j).all(|i| m & (1 << i) != 0 || !shared.contains(&(m | 1 << i)));
                !maximal || m.count_ones() as usize + 1 == j
            });
            if !pure {
                return Ok(ShellingVerdict { first_failure: Some(s + 1) });
            }
        }
        built.extend(facet.subfaces());
    }
    Ok(ShellingVerdict { first_failure: None })
}

/// Blocks `x ∈ F_s` for which some earlier facet meets `F_s` in exactly
/// `F_s ∖ {x}`.
fn exchange_blocks(order: &[PartialPartition], s: usize) -> Vec<Block> {
    let fs = &order[s];
    let mut found: Vec<Block> = Vec::new();
    for fr in &order[..s] {
        let meet = fr.intersection(fs);
        if meet.len() + 1 == fs.len() {
            let x = fs.difference(&meet).blocks()[0];
            if !found.contains(&x) {
                found.push(x);
            }
        }
    }
    found
}

/// Shellability via the exchange criterion.
pub fn verify_shelling_lemma(
    c: &SimplicialComplex,
    order: &[PartialPartition],
) -> Result<ShellingVerdict> {
    check_is_facet_permutation(c, order)?;
    for s in 1..order.len() {
        let candidates = exchange_blocks(order, s);
        // F_q ∩ F_s ⊆ F_s ∖ {x} iff x ∉ F_q.
        let ok = order[..s]
            .iter()
            .all(|fq| candidates.iter().any(|&x| !fq.contains_block(x)));
        if !ok {
            return Ok(ShellingVerdict { first_failure: Some(s + 1) });
        }
    }
    Ok(ShellingVerdict { first_failure: None })
}

/// For partitions `F_q ≠ F_s` of the same ground set with `|F_q| >= |F_s|`,
/// a block `x ∈ F_s ∖ F_q` and the partition `F_r = (F_s ∖ {x}) ∪ {x_1, x_2}`,
/// where `x` splits as `{min x}` and the rest. Then
/// `F_q ∩ F_s ⊆ F_r ∩ F_s = F_s ∖ {x}` and `|F_r| = |F_s| + 1`.
pub fn exchange_witness(fq: &PartialPartition, fs: &PartialPartition) -> Result<(Block, PartialPartition)> {
    if fq == fs {
        return Err(Error::Precondition("exchange witness needs distinct facets".into()));
    }
    if fq.len() < fs.len() {
        return Err(Error::Precondition(format!(
            "{fq} has fewer blocks than {fs}"
        )));
    }
    if fq.support() != fs.support() {
        return Err(Error::Precondition(format!(
            "{fq} and {fs} partition different sets"
        )));
    }
    for &x in fs.difference(fq).blocks() {
        let Some((x1, x2)) = x.split_min() else {
            continue;
        };
        let fr = fs.without(x).with(x1)?.with(x2)?;
        let meet = fr.intersection(fs);
        if fq.intersection(fs).is_subface_of(&meet) && meet == fs.without(x) {
            return Ok((x, fr));
        }
    }
    Err(Error::Consistency(format!(
        "no non-singleton block of {fs} outside {fq}"
    )))
}

/// `R(F_s)`: blocks whose deletion from `F_s` lands in `Δ_{s-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionSet {
    pub facet: PartialPartition,
    pub removable: Vec<Block>,
}

/// Restriction sets of every facet along `order`.
pub fn restrictions(order: &[PartialPartition]) -> Vec<RestrictionSet> {
    let mut built: HashSet<PartialPartition> = HashSet::new();
    let mut out = Vec::with_capacity(order.len());
    for facet in order {
        let removable = facet
            .blocks()
            .iter()
            .copied()
            .filter(|&x| built.contains(&facet.without(x)))
            .collect();
        out.push(RestrictionSet { facet: facet.clone(), removable });
        built.extend(facet.subfaces());
    }
    out
}

/// Restriction of the facet at 1-based position `s`.
pub fn restriction(order: &[PartialPartition], s: usize) -> Result<RestrictionSet> {
    if s == 0 || s > order.len() {
        return Err(Error::Precondition(format!(
            "position {s} outside 1..={}",
            order.len()
        )));
    }
    let built: HashSet<PartialPartition> = order[..s - 1].iter().flat_map(|f| f.subfaces()).collect();
    let facet = &order[s - 1];
    let removable = facet
        .blocks()
        .iter()
        .copied()
        .filter(|&x| built.contains(&facet.without(x)))
        .collect();
    Ok(RestrictionSet { facet: facet.clone(), removable })
}

/// Facets keyed by `(|F|, |R(F)|)`; each cell keeps order of appearance.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GammaTable {
    pub entries: BTreeMap<(usize, usize), Vec<PartialPartition>>,
}

impl GammaTable {
    pub fn cell(&self, j: usize, k: usize) -> &[PartialPartition] {
        self.entries.get(&(j, k)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Same cells, each sorted canonically; for order-independent comparison.
    pub fn normalized(&self) -> GammaTable {
        let mut entries = self.entries.clone();
        for cell in entries.values_mut() {
            cell.sort();
        }
        GammaTable { entries }
    }
}

pub fn gamma_table(order: &[PartialPartition]) -> GammaTable {
    let mut entries: BTreeMap<(usize, usize), Vec<PartialPartition>> = BTreeMap::new();
    for r in restrictions(order) {
        entries
            .entry((r.facet.len(), r.removable.len()))
            .or_default()
            .push(r.facet);
    }
    GammaTable { entries }
}

/// Compares every cell of `table` with `D_{n,j,k}` as sets.
pub fn gamma_matches_d_njk(n: usize, table: &GammaTable) -> Result<bool> {
    let normalized = table.normalized();
    for j in 0..=n {
        for k in 0..=j {
            let mut expected = combinatorics::enumerate_d_njk(n, j, k)?;
            expected.sort();
            if normalized.cell(j, k) != expected.as_slice() {
                return Ok(false);
            }
        }
    }
    // No cell outside 0 <= k <= j <= n may be populated.
    Ok(normalized.entries.keys().all(|&(j, k)| k <= j && j <= n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_dn;

    fn pp(s: &str) -> PartialPartition {
        PartialPartition::parse(s).unwrap()
    }

    #[test]
    fn default_orders() {
        let o2 = default_shelling_order(2, TieBreak::Lex).unwrap();
        assert_eq!(o2.facets(), &[pp("1,2"), pp("12")]);
        let o3 = default_shelling_order(3, TieBreak::Lex).unwrap();
        assert_eq!(o3.facets().first(), Some(&pp("1,2,3")));
        assert_eq!(o3.facets().last(), Some(&pp("123")));
        let o4 = default_shelling_order(4, TieBreak::RevLex).unwrap();
        assert_eq!(o4.len(), 15);
        assert_eq!(o4.facets()[0], pp("1,2,3,4"));
        assert!(o4.facets().windows(2).all(|w| w[0].len() >= w[1].len()));
    }

    #[test]
    fn d2_reversed_is_not_a_shelling() {
        let c = build_dn(2).unwrap();
        let order = [pp("12"), pp("1,2")];
        let def = verify_shelling_definition(&c, &order).unwrap();
        let lem = verify_shelling_lemma(&c, &order).unwrap();
        assert_eq!(def.first_failure, Some(2));
        assert_eq!(lem.first_failure, Some(2));
    }

    #[test]
    fn single_facet() {
        let c = build_dn(1).unwrap();
        assert!(verify_shelling_definition(&c, &[pp("1")]).unwrap().is_shelling());
        assert!(verify_shelling_lemma(&c, &[pp("1")]).unwrap().is_shelling());
    }

    #[test]
    fn d4_default_and_broken() {
        let c = build_dn(4).unwrap();
        let order = default_shelling_order(4, TieBreak::Lex).unwrap().into_facets();
        assert!(verify_shelling_definition(&c, &order).unwrap().is_shelling());
        assert!(verify_shelling_lemma(&c, &order).unwrap().is_shelling());

        let mut broken = order.clone();
        let a = broken.iter().position(|f| *f == pp("1,2,3,4")).unwrap();
        let b = broken.iter().position(|f| *f == pp("12,34")).unwrap();
        broken.swap(a, b);
        let def = verify_shelling_definition(&c, &broken).unwrap();
        let lem = verify_shelling_lemma(&c, &broken).unwrap();
        assert!(!def.is_shelling());
        assert_eq!(def, lem);
    }

    #[test]
    fn rejects_non_permutations() {
        let c = build_dn(3).unwrap();
        let mut order = default_shelling_order(3, TieBreak::Lex).unwrap().into_facets();
        order.pop();
        assert!(verify_shelling_definition(&c, &order).is_err());
        order.push(order[0].clone());
        assert!(verify_shelling_lemma(&c, &order).is_err());
    }

    #[test]
    fn witnesses() {
        let (x, fr) = exchange_witness(&pp("1,2,3,4"), &pp("12,34")).unwrap();
        assert_eq!(x, Block::from_elements([1, 2]).unwrap());
        assert_eq!(fr, pp("1,2,34"));

        let fq = pp("1,234");
        let fs = pp("12,34");
        let (x, fr) = exchange_witness(&fq, &fs).unwrap();
        assert!(fq.intersection(&fs).is_subface_of(&fr.intersection(&fs)));
        assert_eq!(fr.intersection(&fs), fs.without(x));
        assert_eq!(fr.len(), fs.len() + 1);

        assert!(exchange_witness(&fs, &fs).is_err());
        assert!(exchange_witness(&pp("1234"), &pp("12,34")).is_err());
    }

    #[test]
    fn restriction_sets_d4() {
        let order = default_shelling_order(4, TieBreak::Lex).unwrap().into_facets();
        assert!(restriction(&order, 1).unwrap().removable.is_empty());
        let s = order.iter().position(|f| *f == pp("12,34")).unwrap() + 1;
        let r = restriction(&order, s).unwrap();
        assert_eq!(
            r.removable,
            vec![Block::from_elements([1, 2]).unwrap(), Block::from_elements([3, 4]).unwrap()]
        );
        let s = order.iter().position(|f| *f == pp("1,2,34")).unwrap() + 1;
        assert_eq!(
            restriction(&order, s).unwrap().removable,
            vec![Block::from_elements([3, 4]).unwrap()]
        );
        assert!(restriction(&order, 0).is_err());
        assert_eq!(restrictions(&order)[s - 1], restriction(&order, s).unwrap());
    }

    #[test]
    fn gamma_d4() {
        let order = default_shelling_order(4, TieBreak::Lex).unwrap().into_facets();
        let g = gamma_table(&order).normalized();
        assert_eq!(g.cell(2, 2), &[pp("12,34"), pp("13,24"), pp("14,23")]);
        assert_eq!(g.cell(4, 0), &[pp("1,2,3,4")]);
        let mut green: Vec<_> = ["1,2,34", "1,3,24", "1,4,23", "2,3,14", "2,4,13", "3,4,12"]
            .iter()
            .map(|s| pp(s))
            .collect();
        green.sort();
        assert_eq!(g.cell(3, 1), green.as_slice());
        assert!(gamma_matches_d_njk(4, &g).unwrap());
    }
}
