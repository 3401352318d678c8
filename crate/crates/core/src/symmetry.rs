//! Lattice automorphisms of polytopes and the invariant part of the class
//! group.
//!
//! For a group `G` of lattice automorphisms preserving `P`, the exact
//! sequence `0 -> M_Q -> Div_T(X)_Q -> Cl(X)_Q -> 0` stays exact on
//! invariants, so `rk Cl^G = #(ray orbits) - dim M_Q^G`. `dim M_Q^G` equals
//! the dimension of the fixed space of `G` on `N_Q`: the two representations
//! are dual, and a finite group's character sum is unchanged by inversion.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linear::{hnf, integral_right_solve, IntMatrix, IntVector};
use crate::polytope::LatticePolytope;

const MAX_GROUP_ORDER: usize = 100_000;

/// A finite group of unimodular matrices, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGroup {
    dim: usize,
    elements: Vec<IntMatrix>,
}

impl PointGroup {
    pub fn trivial(dim: usize) -> Self {
        PointGroup { dim, elements: vec![IntMatrix::identity(dim)] }
    }

    /// Closure of `generators` under multiplication.
    pub fn generate(dim: usize, generators: &[IntMatrix]) -> Result<Self> {
        for g in generators {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(Error::NotSquare { expected: dim, rows: g.nrows(), cols: g.ncols() });
            }
        }
        let mut seen: BTreeSet<IntMatrix> = BTreeSet::new();
        let id = IntMatrix::identity(dim);
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = g.mul(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(PointGroup { dim, elements: seen.into_iter().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn contains(&self, a: &IntMatrix) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PointGroup) -> bool {
        self.elements.iter().all(|a| other.contains(a))
    }

    /// True when the element list is closed under products.
    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&a.mul(b))))
    }
}

/// Partition of a polytope's vertex indices into orbits, each orbit sorted,
/// orbits ordered by their smallest index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// The vertex permutation induced by `a`, or `None` if `a` does not map the
/// vertex set onto itself.
pub fn vertex_permutation(p: &LatticePolytope, a: &IntMatrix) -> Option<Vec<usize>> {
    let perm: Vec<usize> = p
        .vertices()
        .iter()
        .map(|v| p.vertex_index(&a.apply(v)))
        .collect::<Option<_>>()?;
    let distinct: BTreeSet<usize> = perm.iter().copied().collect();
    (distinct.len() == perm.len()).then_some(perm)
}

/// Ordered `dim`-tuples of consecutive vertices along some facet, in both
/// directions. Lattice automorphisms permute this set, so it can serve as the
/// set of anchor images.
fn facet_flags(p: &LatticePolytope) -> Vec<Vec<usize>> {
    let d = p.dim();
    let mut out = Vec::new();
    for f in p.facets() {
        let vs = &f.vertices;
        let k = vs.len();
        if d == 2 {
            out.push(vec![vs[0], vs[1]]);
            out.push(vec![vs[1], vs[0]]);
            continue;
        }
        for s in 0..k {
            out.push((0..d).map(|j| vs[(s + j) % k]).collect());
            out.push((0..d).map(|j| vs[(s + k - j) % k]).collect());
        }
    }
    out.sort();
    out.dedup();
    out
}

fn columns_of(p: &LatticePolytope, idx: &[usize]) -> IntMatrix {
    let cols: Vec<IntVector> = idx.iter().map(|&i| p.vertices()[i].clone()).collect();
    IntMatrix::from_columns(&cols)
}

/// All `A` in `GL(d, Z)` with `A·vert(P) = vert(P)`.
///
/// An anchor flag `B` of linearly independent vertices is fixed; every
/// automorphism sends it to another flag `C`, and `A = C·B^{-1}` is kept when
/// it is integral, unimodular and permutes the vertices.
pub fn automorphism_group(p: &LatticePolytope) -> PointGroup {
    let flags = facet_flags(p);
    let anchor = flags
        .iter()
        .find(|f| !columns_of(p, f).det().unwrap().is_zero())
        .expect("full-dimensional polytope has an independent facet flag");
    let b = columns_of(p, anchor);
    let mut elements: BTreeSet<IntMatrix> = BTreeSet::new();
    for c in &flags {
        let Some(a) = integral_right_solve(&b, &columns_of(p, c)) else { continue };
        if a.is_unimodular() && vertex_permutation(p, &a).is_some() {
            elements.insert(a);
        }
    }
    PointGroup { dim: p.dim(), elements: elements.into_iter().collect() }
}

/// Orbits of the vertices under `g`.
pub fn vertex_orbits(p: &LatticePolytope, g: &PointGroup) -> Result<OrbitPartition> {
    let n = p.n_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in g.elements() {
        let perm = vertex_permutation(p, a).ok_or(Error::NotASymmetry)?;
        for (i, &j) in perm.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[root_slot[r]].push(i);
    }
    Ok(OrbitPartition { orbits })
}

/// `dim {x in Q^d : A·x = x for all A in G}`.
pub fn fixed_subspace_dim(g: &PointGroup) -> usize {
    let d = g.dim();
    let id = IntMatrix::identity(d);
    let rows: Vec<Vec<BigInt>> = g
        .elements()
        .iter()
        .flat_map(|a| {
            (0..d)
                .map(|i| (0..d).map(|j| a.get(i, j) - id.get(i, j)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .collect();
    d - IntMatrix::from_rows(rows).rank()
}

/// `rk Cl(X)^G = #orbits - dim M_Q^G`.
pub fn invariant_class_rank(p: &LatticePolytope, g: &PointGroup) -> Result<usize> {
    let orbits = vertex_orbits(p, g)?.len();
    Ok(orbits - fixed_subspace_dim(g))
}

/// Whether some group of lattice automorphisms makes the invariant class
/// group rank one. Invariants under a larger group form a subspace of those
/// under a subgroup, so it suffices to test the full automorphism group.
pub fn is_gfano(p: &LatticePolytope) -> bool {
    let g = automorphism_group(p);
    invariant_class_rank(p, &g).expect("automorphisms preserve the vertices") == 1
}

pub fn is_vertex_transitive(p: &LatticePolytope) -> bool {
    let g = automorphism_group(p);
    vertex_orbits(p, &g).expect("automorphisms preserve the vertices").len() == 1
}

/// Canonical representative of the `GL(d, Z)` class of `P`, as the matrix
/// whose columns are the transformed vertices.
///
/// For each anchor flag `B`, the unimodular `U` with `U·B` in Hermite normal
/// form is unique; the candidate is `U·vert(P)` with columns sorted. The
/// lexicographically smallest candidate is returned.
pub fn normal_form(p: &LatticePolytope) -> IntMatrix {
    let mut best: Option<Vec<IntVector>> = None;
    for flag in facet_flags(p) {
        let b = columns_of(p, &flag);
        if b.det().unwrap().is_zero() {
            continue;
        }
        let (_, u) = hnf(&b);
        let mut cols: Vec<IntVector> = p.vertices().iter().map(|v| u.apply(v)).collect();
        cols.sort();
        if best.as_ref().is_none_or(|cur| cols < *cur) {
            best = Some(cols);
        }
    }
    IntMatrix::from_columns(&best.expect("full-dimensional polytope has an independent facet flag"))
}

/// Canonical representative of the affine-unimodular class of a polygon:
/// every vertex is tried as the origin, with the two adjacent edge vectors
/// as the anchor.
pub fn affine_normal_form_2d(p: &LatticePolytope) -> Result<IntMatrix> {
    let cycle = p.boundary_cycle().ok_or(Error::UnsupportedDimension(p.dim()))?;
    let k = cycle.len();
    let vs = p.vertices();
    let mut best: Option<Vec<IntVector>> = None;
    for i in 0..k {
        let origin = &vs[cycle[i]];
        let next = &vs[cycle[(i + 1) % k]] - origin;
        let prev = &vs[cycle[(i + k - 1) % k]] - origin;
        for b in [IntMatrix::from_columns(&[next.clone(), prev.clone()]), IntMatrix::from_columns(&[prev, next.clone()])] {
            let (_, u) = hnf(&b);
            let mut cols: Vec<IntVector> = vs.iter().map(|v| u.apply(&(v - origin))).collect();
            cols.sort();
            if best.as_ref().is_none_or(|cur| cols < *cur) {
                best = Some(cols);
            }
        }
    }
    Ok(IntMatrix::from_columns(&best.expect("polygon has vertices")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[[i64; 3]]) -> LatticePolytope {
        LatticePolytope::from_i64s(pts).unwrap()
    }

    fn mat(rows: [[i64; 3]; 3]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows)
    }

    fn octahedron() -> LatticePolytope {
        poly(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]])
    }

    fn simplex() -> LatticePolytope {
        poly(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]])
    }

    fn pyramid32() -> LatticePolytope {
        poly(&[[1, 0, 0], [0, 1, 0], [1, 1, 1], [-1, -1, 0], [0, 0, -1]])
    }

    fn antiprism47() -> LatticePolytope {
        poly(&[[1, 1, 0], [-1, -1, 0], [1, 0, 1], [-1, 0, -1], [0, 1, 1], [0, -1, -1]])
    }

    fn p1xp2() -> LatticePolytope {
        poly(&[[1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 1], [0, 0, -1]])
    }

    fn w2() -> IntMatrix {
        mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    }

    /// Every signed permutation matrix.
    fn signed_permutations() -> Vec<IntMatrix> {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::new();
        for p in perms {
            for signs in 0..8 {
                let mut rows = [[0i64; 3]; 3];
                for i in 0..3 {
                    rows[i][p[i]] = if signs >> i & 1 == 1 { -1 } else { 1 };
                }
                out.push(mat(rows));
            }
        }
        out
    }

    #[test]
    fn octahedron_group_is_signed_permutations() {
        let g = automorphism_group(&octahedron());
        assert_eq!(g.order(), 48);
        let oracle = signed_permutations();
        assert!(oracle.iter().all(|a| vertex_permutation(&octahedron(), a).is_some()));
        assert!(oracle.iter().all(|a| g.contains(a)));
        assert!(g.is_closed());
    }

    #[test]
    fn simplex_group_is_symmetric_group() {
        let p = simplex();
        let g = automorphism_group(&p);
        assert_eq!(g.order(), 24);
        // every vertex permutation is realised exactly once
        let perms: BTreeSet<Vec<usize>> = g.elements().iter().map(|a| vertex_permutation(&p, a).unwrap()).collect();
        assert_eq!(perms.len(), 24);
    }

    #[test]
    fn pyramid_contains_printed_c4() {
        let g = automorphism_group(&pyramid32());
        let c4 = mat([[1, 0, -1], [1, 0, 0], [1, -1, 0]]);
        assert!(g.contains(&c4));
        let h = PointGroup::generate(3, &[c4]).unwrap();
        assert_eq!(h.order(), 4);
        assert!(h.is_subgroup_of(&g));
    }

    #[test]
    fn orbit_examples() {
        let p = octahedron();
        let w = PointGroup::generate(3, &[w2()]).unwrap();
        let orbits = vertex_orbits(&p, &w).unwrap();
        let as_points: BTreeSet<BTreeSet<IntVector>> = orbits
            .orbits
            .iter()
            .map(|o| o.iter().map(|&i| p.vertices()[i].clone()).collect())
            .collect();
        let pos: BTreeSet<IntVector> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|x| IntVector::from_i64s(x)).collect();
        let neg: BTreeSet<IntVector> = pos.iter().map(|v| -v).collect();
        assert_eq!(as_points, [pos, neg].into_iter().collect());

        assert_eq!(vertex_orbits(&p, &PointGroup::trivial(3)).unwrap().len(), 6);
        assert_eq!(vertex_orbits(&p, &automorphism_group(&p)).unwrap().len(), 1);

        let w1 = PointGroup::generate(3, &[mat([[1, 0, 0], [0, 0, -1], [0, 1, -1]])]).unwrap();
        assert_eq!(w1.order(), 3);
        assert_eq!(vertex_orbits(&p, &w1), Err(Error::NotASymmetry));
    }

    #[test]
    fn fixed_dims() {
        assert_eq!(fixed_subspace_dim(&PointGroup::trivial(3)), 3);
        assert_eq!(fixed_subspace_dim(&PointGroup::generate(3, &[w2()]).unwrap()), 1);
        let minus = mat([[-1, 0, 0], [0, -1, 0], [0, 0, -1]]);
        assert_eq!(fixed_subspace_dim(&PointGroup::generate(3, &[minus]).unwrap()), 0);
    }

    #[test]
    fn invariant_rank_examples() {
        let w = PointGroup::generate(3, &[w2()]).unwrap();
        assert_eq!(invariant_class_rank(&octahedron(), &w).unwrap(), 1);

        let cube = poly(&[[1, 0, 0], [-1, 0, 0], [0, 0, 1], [0, 0, -1], [1, 1, 1], [-1, -1, -1], [0, 1, 0], [0, -1, 0]]);
        let c4 = PointGroup::generate(3, &[mat([[0, -1, 1], [0, 0, 1], [-1, 0, 1]])]).unwrap();
        assert_eq!(c4.order(), 4);
        assert_eq!(vertex_orbits(&cube, &c4).unwrap().len(), 2);
        assert_eq!(fixed_subspace_dim(&c4), 1);
        assert_eq!(invariant_class_rank(&cube, &c4).unwrap(), 1);

        let p = p1xp2();
        assert_eq!(invariant_class_rank(&p, &automorphism_group(&p)).unwrap(), 2);
    }

    #[test]
    fn gfano_examples() {
        assert!(is_gfano(&octahedron()));
        assert!(!is_gfano(&p1xp2()));
        assert!(is_gfano(&simplex()));
    }

    #[test]
    fn normal_form_examples() {
        let a = normal_form(&octahedron());
        let b = normal_form(&antiprism47());
        assert_ne!(a, b);
        let u = mat([[2, 1, 0], [1, 1, 0], [3, -2, 1]]);
        assert!(u.is_unimodular());
        assert_eq!(normal_form(&antiprism47().transform(&u).unwrap()), b);
        assert_eq!(normal_form(&simplex().transform(&u).unwrap()), normal_form(&simplex()));
    }

    #[test]
    fn vertex_transitivity() {
        assert!(is_vertex_transitive(&octahedron()));
        assert!(!is_vertex_transitive(&pyramid32()));
        assert!(is_vertex_transitive(&antiprism47()));
    }

    #[test]
    fn affine_polygon_normal_form() {
        let t1 = LatticePolytope::from_i64s(&[[0, 0], [1, 0], [0, 1]]).unwrap();
        let t2 = LatticePolytope::from_i64s(&[[3, 5], [4, 5], [4, 6]]).unwrap();
        let sq = LatticePolytope::from_i64s(&[[0, 0], [1, 0], [0, 1], [1, 1]]).unwrap();
        let par = LatticePolytope::from_i64s(&[[0, 0], [1, 0], [2, 1], [1, 1]]).unwrap();
        assert_eq!(affine_normal_form_2d(&t1).unwrap(), affine_normal_form_2d(&t2).unwrap());
        assert_eq!(affine_normal_form_2d(&sq).unwrap(), affine_normal_form_2d(&par).unwrap());
        assert_ne!(affine_normal_form_2d(&t1).unwrap(), affine_normal_form_2d(&sq).unwrap());
    }

    /// Burnside oracle: fixed vertices minus trace, averaged over the group.
    fn burnside_rank(p: &LatticePolytope, g: &PointGroup) -> BigInt {
        let total: BigInt = g
            .elements()
            .iter()
            .map(|a| {
                let fixed = p.vertices().iter().filter(|v| a.apply(v) == **v).count();
                BigInt::from(fixed) - a.trace()
            })
            .sum();
        total / BigInt::from(g.order())
    }

    #[test]
    fn burnside_agrees() {
        let p = octahedron();
        let g = automorphism_group(&p);
        assert_eq!(burnside_rank(&p, &g), BigInt::from(invariant_class_rank(&p, &g).unwrap()));
        let q = p1xp2();
        let h = automorphism_group(&q);
        assert_eq!(burnside_rank(&q, &h), BigInt::from(2));
    }
}
