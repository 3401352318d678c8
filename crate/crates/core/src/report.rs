//! The full invariant summary of a terminal Fano polytope.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::{anticanonical_degree, class_group_rank, genus, picard_rank};
use crate::linear::{IntVector, Rational};
use crate::polytope::{classify, LatticePolytope, PropertyFlags};
use crate::symmetry::{automorphism_group, fixed_subspace_dim, vertex_orbits};

fn as_fraction<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Invariants of the toric variety of a Fano polytope. The JSON form has a
/// fixed key set and writes `degree` as a reduced fraction string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub id: String,
    pub vertices: Vec<IntVector>,
    pub flags: PropertyFlags,
    #[serde(skip)]
    pub n_vertices: usize,
    pub rk_cl: usize,
    pub rk_pic: usize,
    #[serde(serialize_with = "as_fraction")]
    pub degree: Rational,
    pub genus: i64,
    pub aut_order: usize,
    pub n_orbits: usize,
    pub fixed_dim: usize,
    pub inv_cl_rank: usize,
    pub is_gfano: bool,
}

impl InvariantReport {
    /// `rk_cl = v - 3`, `1 <= inv_cl_rank <= rk_cl`, `rk_pic <= rk_cl`.
    pub fn is_consistent(&self) -> bool {
        self.rk_cl + 3 == self.n_vertices
            && 1 <= self.inv_cl_rank
            && self.inv_cl_rank <= self.rk_cl
            && self.rk_pic <= self.rk_cl
            && self.is_gfano == (self.inv_cl_rank == 1)
    }
}

pub fn invariant_report(id: &str, p: &LatticePolytope) -> Result<InvariantReport> {
    if p.dim() != 3 {
        return Err(Error::UnsupportedDimension(p.dim()));
    }
    let flags = classify(p);
    if !flags.is_fano {
        return Err(Error::NotFano);
    }
    let group = automorphism_group(p);
    let n_orbits = vertex_orbits(p, &group)?.len();
    let fixed_dim = fixed_subspace_dim(&group);
    let inv_cl_rank = n_orbits - fixed_dim;
    Ok(InvariantReport {
        id: id.to_string(),
        vertices: p.vertices().to_vec(),
        flags,
        n_vertices: p.n_vertices(),
        rk_cl: class_group_rank(p),
        rk_pic: picard_rank(p),
        degree: anticanonical_degree(p)?,
        genus: genus(p)?,
        aut_order: group.order(),
        n_orbits,
        fixed_dim,
        inv_cl_rank,
        is_gfano: inv_cl_rank == 1,
    })
}
