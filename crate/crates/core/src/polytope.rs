//! Exact convex hulls of lattice points in dimensions 2 and 3, lattice-point
//! enumeration, and the Fano predicate family (Fano, terminal, canonical,
//! reflexive, simplicial, regular).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{IntMatrix, IntVector};

/// A facet `{x : <normal, x> = -offset}`; the polytope lies in
/// `<normal, x> >= -offset`. `vertices` are indices into the owning
/// polytope's vertex list, in cyclic order around the facet (counterclockwise
/// seen from outside in 3D; the two endpoints of an edge in 2D, in
/// counterclockwise boundary order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: IntVector,
    pub offset: BigInt,
    pub vertices: Vec<usize>,
}

impl Facet {
    /// `<normal, x> + offset`; zero on the facet, positive inside.
    pub fn slack(&self, x: &IntVector) -> BigInt {
        self.normal.dot(x) + &self.offset
    }
}

/// A full-dimensional lattice polytope with its vertex and facet
/// descriptions. Vertices are sorted lexicographically, facets by
/// `(normal, offset)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVector>,
    facets: Vec<Facet>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyFlags {
    pub is_fano: bool,
    pub is_terminal: bool,
    pub is_canonical: bool,
    pub is_reflexive: bool,
    pub is_simplicial: bool,
    pub is_regular: bool,
}

impl LatticePolytope {
    /// Convex hull of `points`. See [`convex_hull`].
    pub fn new(points: &[IntVector]) -> Result<Self> {
        convex_hull(points)
    }

    pub fn from_i64s<R: AsRef<[i64]>>(points: &[R]) -> Result<Self> {
        let pts: Vec<IntVector> = points.iter().map(|p| IntVector::from_i64s(p.as_ref())).collect();
        convex_hull(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Image under the linear map `a`, i.e. `a·P`.
    pub fn transform(&self, a: &IntMatrix) -> Result<LatticePolytope> {
        let pts: Vec<IntVector> = self.vertices.iter().map(|v| a.apply(v)).collect();
        convex_hull(&pts)
    }

    pub fn translate(&self, t: &IntVector) -> Result<LatticePolytope> {
        let pts: Vec<IntVector> = self.vertices.iter().map(|v| v + t).collect();
        convex_hull(&pts)
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn contains_strictly(&self, x: &IntVector) -> bool {
        self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    pub fn origin_is_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    pub fn vertex_index(&self, v: &IntVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Unordered vertex pairs spanning an edge, as `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let k = f.vertices.len();
            if self.dim == 2 {
                out.insert((f.vertices[0].min(f.vertices[1]), f.vertices[0].max(f.vertices[1])));
                continue;
            }
            for i in 0..k {
                let (a, b) = (f.vertices[i], f.vertices[(i + 1) % k]);
                out.insert((a.min(b), a.max(b)));
            }
        }
        out.into_iter().collect()
    }

    /// Vertex indices in counterclockwise boundary order (2D only).
    pub fn boundary_cycle(&self) -> Option<Vec<usize>> {
        if self.dim != 2 {
            return None;
        }
        let next: HashMap<usize, usize> = self
            .facets
            .iter()
            .map(|f| (f.vertices[0], f.vertices[1]))
            .collect();
        let mut cycle = vec![0];
        let mut cur = next[&0];
        while cur != 0 {
            cycle.push(cur);
            cur = next[&cur];
        }
        Some(cycle)
    }

    /// Integer bounding box of the vertices, per coordinate.
    fn bounding_box(&self) -> Vec<(i64, i64)> {
        (0..self.dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| &v.coords()[i]).min().unwrap();
                let hi = self.vertices.iter().map(|v| &v.coords()[i]).max().unwrap();
                (
                    lo.to_i64().expect("bounding box exceeds i64"),
                    hi.to_i64().expect("bounding box exceeds i64"),
                )
            })
            .collect()
    }

    fn scan_box(&self, mut keep: impl FnMut(&IntVector) -> bool) -> Vec<IntVector> {
        let bb = self.bounding_box();
        let mut out = Vec::new();
        let mut cur: Vec<i64> = bb.iter().map(|b| b.0).collect();
        loop {
            let p = IntVector::from_i64s(&cur);
            if keep(&p) {
                out.push(p);
            }
            // odometer, last coordinate fastest so output is lexicographic
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < bb[i].1 {
                    cur[i] += 1;
                    for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                        *c = bb[j].0;
                    }
                    break;
                }
            }
        }
    }
}

fn cross(a: &IntVector, b: &IntVector) -> IntVector {
    let (a, b) = (a.coords(), b.coords());
    IntVector::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// `det(b - a, c - a, p - a)`.
fn orient3(a: &IntVector, b: &IntVector, c: &IntVector, p: &IntVector) -> BigInt {
    cross(&(b - a), &(c - a)).dot(&(p - a))
}

/// `det(b - a, p - a)`; positive when `p` is left of `a -> b`.
fn orient2(a: &IntVector, b: &IntVector, p: &IntVector) -> BigInt {
    let (u, w) = (b - a, p - a);
    &u.coords()[0] * &w.coords()[1] - &u.coords()[1] * &w.coords()[0]
}

/// Exact convex hull of a finite set of lattice points in dimension 2 or 3.
///
/// The result has a minimal, lexicographically sorted vertex list and facets
/// with primitive inward normals. Lower-dimensional input is rejected.
pub fn convex_hull(points: &[IntVector]) -> Result<LatticePolytope> {
    let dim = points.first().ok_or(Error::Degenerate)?.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
    }
    let mut pts: Vec<IntVector> = points.to_vec();
    pts.sort();
    pts.dedup();
    match dim {
        2 => hull2(pts),
        3 => hull3(pts),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn hull2(pts: Vec<IntVector>) -> Result<LatticePolytope> {
    if pts.len() < 3 {
        return Err(Error::Degenerate);
    }
    // Andrew's monotone chain, dropping collinear points.
    let mut lower: Vec<&IntVector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !orient2(lower[lower.len() - 2], lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&IntVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !orient2(upper[upper.len() - 2], upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let ring: Vec<IntVector> = lower.into_iter().chain(upper).cloned().collect();
    if ring.len() < 3 {
        return Err(Error::Degenerate);
    }
    let mut vertices = ring.clone();
    vertices.sort();
    let index = |v: &IntVector| vertices.binary_search(v).unwrap();
    let mut facets = Vec::with_capacity(ring.len());
    for i in 0..ring.len() {
        let (a, b) = (&ring[i], &ring[(i + 1) % ring.len()]);
        let d = b - a;
        let normal = IntVector::new(vec![-d.coords()[1].clone(), d.coords()[0].clone()])
            .primitivize()
            .expect("distinct hull vertices");
        let offset = -normal.dot(a);
        facets.push(Facet { normal, offset, vertices: vec![index(a), index(b)] });
    }
    facets.sort_by(|x, y| (&x.normal, &x.offset).cmp(&(&y.normal, &y.offset)));
    Ok(LatticePolytope { dim: 2, vertices, facets })
}

fn hull3(pts: Vec<IntVector>) -> Result<LatticePolytope> {
    let n = pts.len();
    if n < 4 {
        return Err(Error::Degenerate);
    }
    // Initial tetrahedron.
    let i0 = 0;
    let i1 = (1..n).find(|&i| pts[i] != pts[i0]).ok_or(Error::Degenerate)?;
    let d1 = &pts[i1] - &pts[i0];
    let i2 = (1..n)
        .find(|&i| !cross(&d1, &(&pts[i] - &pts[i0])).is_zero())
        .ok_or(Error::Degenerate)?;
    let i3 = (1..n)
        .find(|&i| !orient3(&pts[i0], &pts[i1], &pts[i2], &pts[i]).is_zero())
        .ok_or(Error::Degenerate)?;

    // Faces are stored with outward orientation: orient3(face, p) < 0 for
    // points p inside the hull.
    let mut faces: Vec<[usize; 3]> = Vec::new();
    let base = [i0, i1, i2, i3];
    for skip in 0..4 {
        let tri: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| base[k]).collect();
        let (a, b, c) = (tri[0], tri[1], tri[2]);
        if orient3(&pts[a], &pts[b], &pts[c], &pts[base[skip]]).is_positive() {
            faces.push([a, c, b]);
        } else {
            faces.push([a, b, c]);
        }
    }

    for p in 0..n {
        if base.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| orient3(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[p]).is_positive())
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut hidden_edges = BTreeSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| !v) {
            for k in 0..3 {
                hidden_edges.insert((f[k], f[(k + 1) % 3]));
            }
        }
        let mut next = Vec::with_capacity(faces.len() + 4);
        let mut added = Vec::new();
        for (f, &vis) in faces.iter().zip(&visible) {
            if !vis {
                next.push(*f);
                continue;
            }
            for k in 0..3 {
                let (u, v) = (f[k], f[(k + 1) % 3]);
                if hidden_edges.contains(&(v, u)) {
                    added.push([u, v, p]);
                }
            }
        }
        next.extend(added);
        faces = next;
    }

    // Merge coplanar triangles into facets.
    let mut planes: BTreeMap<(IntVector, BigInt), ()> = BTreeMap::new();
    for f in &faces {
        let (a, b, c) = (&pts[f[0]], &pts[f[1]], &pts[f[2]]);
        let outward = cross(&(b - a), &(c - a));
        let normal = (-&outward).primitivize().expect("nondegenerate hull face");
        let offset = -normal.dot(a);
        planes.insert((normal, offset), ());
    }
    let planes: Vec<(IntVector, BigInt)> = planes.into_keys().collect();

    // A hull point is a vertex iff it lies on at least three facet planes.
    let mut vertices: Vec<IntVector> = pts
        .iter()
        .filter(|p| planes.iter().filter(|(nrm, off)| (nrm.dot(p) + off).is_zero()).count() >= 3)
        .cloned()
        .collect();
    vertices.sort();

    let facets = planes
        .into_iter()
        .map(|(normal, offset)| {
            let on: Vec<usize> = (0..vertices.len())
                .filter(|&i| (normal.dot(&vertices[i]) + &offset).is_zero())
                .collect();
            let vertices_ccw = cyclic_order(&vertices, on, &normal);
            Facet { normal, offset, vertices: vertices_ccw }
        })
        .collect();
    Ok(LatticePolytope { dim: 3, vertices, facets })
}

/// Orders the vertices of a convex facet polygon counterclockwise as seen
/// from outside (i.e. against the inward normal).
fn cyclic_order(vertices: &[IntVector], mut on: Vec<usize>, inward: &IntVector) -> Vec<usize> {
    let pivot = on.remove(0);
    let w0 = &vertices[pivot];
    let outward = -inward;
    on.sort_by(|&u, &w| {
        let s = cross(&(&vertices[u] - w0), &(&vertices[w] - w0)).dot(&outward);
        if s.is_positive() {
            Ordering::Less
        } else if s.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    let mut out = vec![pivot];
    out.extend(on);
    out
}

/// All lattice points of `p`, sorted lexicographically.
pub fn lattice_points(p: &LatticePolytope) -> Vec<IntVector> {
    p.scan_box(|x| p.contains(x))
}

/// Lattice points strictly inside `p`, sorted lexicographically.
pub fn interior_lattice_points(p: &LatticePolytope) -> Vec<IntVector> {
    p.scan_box(|x| p.contains_strictly(x))
}

pub fn classify(p: &LatticePolytope) -> PropertyFlags {
    let dim = p.dim();
    let origin = IntVector::zero(dim);
    let is_fano = p.origin_is_interior() && p.vertices().iter().all(IntVector::is_primitive);
    let is_simplicial = p.facets().iter().all(|f| f.vertices.len() == dim);
    let is_reflexive = p.facets().iter().all(|f| f.offset.is_one());

    let (mut is_terminal, mut is_canonical) = (false, false);
    if is_fano {
        let pts = lattice_points(p);
        is_terminal = pts.len() == p.n_vertices() + 1
            && pts.iter().all(|x| x == &origin || p.vertex_index(x).is_some());
        let interior = interior_lattice_points(p);
        is_canonical = interior.len() == 1 && interior[0] == origin;
    }
    let is_regular = is_fano
        && is_simplicial
        && p.facets().iter().all(|f| {
            let cols: Vec<IntVector> = f.vertices.iter().map(|&i| p.vertices()[i].clone()).collect();
            IntMatrix::from_columns(&cols).is_unimodular()
        });
    PropertyFlags { is_fano, is_terminal, is_canonical, is_reflexive, is_simplicial, is_regular }
}

/// Number of vertices on each facet, sorted ascending.
pub fn facet_vertex_counts(p: &LatticePolytope) -> Vec<usize> {
    let mut c: Vec<usize> = p.facets().iter().map(|f| f.vertices.len()).collect();
    c.sort_unstable();
    c
}

/// Lattice-point counts of a polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonCounts {
    pub twice_area: BigInt,
    pub interior: usize,
    pub boundary: BigInt,
}

/// Twice the area (shoelace), interior and boundary lattice-point counts of a
/// lattice polygon.
pub fn polygon_counts(v: &LatticePolytope) -> Result<PolygonCounts> {
    let cycle = v.boundary_cycle().ok_or(Error::UnsupportedDimension(v.dim()))?;
    let pts = v.vertices();
    let k = cycle.len();
    let mut twice_area = BigInt::zero();
    let mut boundary = BigInt::zero();
    for i in 0..k {
        let (a, b) = (pts[cycle[i]].coords(), pts[cycle[(i + 1) % k]].coords());
        twice_area += &a[0] * &b[1] - &a[1] * &b[0];
        boundary += (&b[0] - &a[0]).abs().gcd(&(&b[1] - &a[1]).abs());
    }
    Ok(PolygonCounts {
        twice_area: twice_area.abs(),
        interior: interior_lattice_points(v).len(),
        boundary,
    })
}
