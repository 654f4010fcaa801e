//! JSON fragments for faces, counts, chains and complexes.
//!
//! Faces are arrays of block bitmasks (element `i` is bit `i - 1`); counts
//! are emitted as exact integers of any size.

use std::fmt::Display;

use parthom_core::homology::Homology;
use parthom_core::shelling::{GammaTable, RestrictionSet};
use parthom_core::{Chain, PartialPartition, SimplicialComplex};
use serde_json::{json, Map, Number, Value};

/// An exact integer as a JSON number, without a detour through `f64`.
pub fn int<T: Display>(v: T) -> Value {
    let s = v.to_string();
    Value::Number(s.parse::<Number>().expect("integer literal"))
}

pub fn face(f: &PartialPartition) -> Value {
    Value::from(f.masks())
}

pub fn faces<'a, I: IntoIterator<Item = &'a PartialPartition>>(fs: I) -> Value {
    Value::Array(fs.into_iter().map(face).collect())
}

pub fn ints<T: Display, I: IntoIterator<Item = T>>(xs: I) -> Value {
    Value::Array(xs.into_iter().map(int).collect())
}

pub fn complex(c: &SimplicialComplex) -> Value {
    json!({
        "n": c.ground_size(),
        "facets": faces(c.facets()),
        "fvector": ints(c.f_vector()),
    })
}

pub fn homology(c: &SimplicialComplex, h: &Homology) -> Value {
    let mut torsion = Map::new();
    for d in 0..=c.dim().max(-1) {
        torsion.insert(d.to_string(), ints(h.torsion(d)));
    }
    json!({
        "betti": ints(h.betti_vector()),
        "torsion": torsion,
        "fvector": ints(c.f_vector()),
        "eulerReduced": int(h.euler_characteristic()),
    })
}

pub fn gamma(table: &GammaTable) -> Value {
    let cells: Map<String, Value> = table
        .entries
        .iter()
        .map(|((j, k), fs)| (format!("{j},{k}"), faces(fs)))
        .collect();
    Value::Object(cells)
}

pub fn restrictions(rs: &[RestrictionSet]) -> Value {
    Value::Array(
        rs.iter()
            .map(|r| Value::from(r.removable.iter().map(|b| b.bits()).collect::<Vec<_>>()))
            .collect(),
    )
}

pub fn chain(ch: &Chain) -> Value {
    Value::Array(
        ch.terms()
            .map(|(f, c)| json!({ "simplex": face(f), "coeff": int(c) }))
            .collect(),
    )
}
