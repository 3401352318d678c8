//! Exhaustive search for terminal Fano polytopes (3D) and empty lattice
//! polygons (2D) with vertices in a box, deduplicated by normal form.
//!
//! Candidate points are taken in a fixed lexicographic order and a branch
//! only ever appends points later than its last one. A branch is cut as soon
//! as the hull of the chosen points contains a lattice point that is neither
//! the origin (3D) nor one of the chosen points, or a chosen point stops
//! being a vertex: hulls only grow, so neither defect can be repaired later.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::linear::{IntMatrix, IntVector};
use crate::polytope::{classify, convex_hull, polygon_counts, LatticePolytope};
use crate::symmetry::{affine_normal_form_2d, normal_form};

/// Search parameters. Vertices range over `[-box_bound, box_bound]^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub box_bound: i64,
    pub dim: usize,
    pub max_vertices: usize,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

impl EnumConfig {
    pub fn new(box_bound: i64, dim: usize) -> Self {
        EnumConfig { box_bound, dim, max_vertices: 14, jobs: 0 }
    }

    fn validate(&self) {
        assert!(self.box_bound >= 1, "box bound must be at least 1");
        assert!(self.dim == 2 || self.dim == 3, "only dimensions 2 and 3 are supported");
        assert!(self.max_vertices > self.dim, "max_vertices must exceed the dimension");
    }
}

/// One equivalence class found by the search.
#[derive(Clone, Debug)]
pub struct EnumeratedClass {
    pub normal_form: IntMatrix,
    pub polytope: LatticePolytope,
}

type Point = [i64; 3];

/// Supporting hyperplane `<normal, x> + offset >= 0` with primitive normal.
type Plane = (Point, i64);

fn sub(a: &Point, b: &Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: &Point, b: &Point) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &Point, b: &Point) -> Point {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Facet planes of the hull of a small point set, by testing every plane
/// through `dim` of the points. Returns `None` if the set is not
/// full-dimensional. Coordinates are bounded by the search box, so `i64`
/// never overflows here.
fn supporting_planes(pts: &[Point], dim: usize) -> Option<Vec<Plane>> {
    let n = pts.len();
    let mut planes = Vec::new();
    let mut full = false;
    let mut consider = |normal: Point, base: &Point| {
        if normal == [0, 0, 0] {
            return;
        }
        let (mut pos, mut neg) = (false, false);
        for p in pts {
            let s = dot(&normal, &sub(p, base));
            pos |= s > 0;
            neg |= s < 0;
        }
        full |= pos || neg;
        if pos && neg {
            return;
        }
        let sign = if neg { -1 } else { 1 };
        let g = gcd(gcd(normal[0], normal[1]), normal[2]);
        let nrm = [sign * normal[0] / g, sign * normal[1] / g, sign * normal[2] / g];
        planes.push((nrm, -dot(&nrm, base)));
    };
    if dim == 2 {
        for a in 0..n {
            for b in a + 1..n {
                let d = sub(&pts[b], &pts[a]);
                consider([-d[1], d[0], 0], &pts[a]);
            }
        }
    } else {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    consider(cross(&sub(&pts[b], &pts[a]), &sub(&pts[c], &pts[a])), &pts[a]);
                }
            }
        }
    }
    if !full {
        return None;
    }
    planes.sort_unstable();
    planes.dedup();
    Some(planes)
}

struct Search<'a> {
    cfg: &'a EnumConfig,
    candidates: Vec<Point>,
    /// Lattice points that may never lie in a hull unless chosen.
    forbidden: Vec<Point>,
    /// Symmetries of the box, as permutations of candidate indices.
    box_symmetries: Vec<Vec<usize>>,
}

enum NodeState {
    /// The chosen set is lower-dimensional; nothing can be decided yet.
    Flat,
    Dead,
    Alive { origin_interior: bool },
}

impl Search<'_> {
    fn examine(&self, chosen: &[usize]) -> NodeState {
        let pts: Vec<Point> = chosen.iter().map(|&i| self.candidates[i]).collect();
        if pts.len() <= self.cfg.dim {
            return NodeState::Flat;
        }
        let Some(planes) = supporting_planes(&pts, self.cfg.dim) else {
            return NodeState::Flat;
        };
        // every chosen point must stay a vertex
        let facets_needed = self.cfg.dim;
        for p in &pts {
            let on = planes.iter().filter(|(n, o)| dot(n, p) + o == 0).count();
            if on < facets_needed {
                return NodeState::Dead;
            }
        }
        let inside = |x: &Point| planes.iter().all(|(n, o)| dot(n, x) + o >= 0);
        if self.forbidden.iter().any(|x| inside(x) && !pts.contains(x)) {
            return NodeState::Dead;
        }
        NodeState::Alive { origin_interior: planes.iter().all(|(_, o)| *o > 0) }
    }

    /// True when no box symmetry maps the chosen set to a lexicographically
    /// smaller index set, so each orbit is emitted once.
    fn is_orbit_minimal(&self, chosen: &[usize]) -> bool {
        let mut image = Vec::with_capacity(chosen.len());
        for sym in &self.box_symmetries {
            image.clear();
            image.extend(chosen.iter().map(|&i| sym[i]));
            image.sort_unstable();
            if image.as_slice() < chosen {
                return false;
            }
        }
        true
    }

    fn emit(&self, chosen: &[usize], out: &mut BTreeMap<IntMatrix, LatticePolytope>) {
        if !self.is_orbit_minimal(chosen) {
            return;
        }
        let pts: Vec<IntVector> = chosen
            .iter()
            .map(|&i| IntVector::from_i64s(&self.candidates[i][..self.cfg.dim]))
            .collect();
        let hull = convex_hull(&pts).expect("full-dimensional by construction");
        let nf = if self.cfg.dim == 2 {
            affine_normal_form_2d(&hull).expect("2D polygon")
        } else {
            normal_form(&hull)
        };
        out.entry(nf).or_insert(hull);
    }

    fn dfs(&self, chosen: &mut Vec<usize>, out: &mut BTreeMap<IntMatrix, LatticePolytope>) {
        let next = chosen.last().map_or(0, |&l| l + 1);
        for i in next..self.candidates.len() {
            chosen.push(i);
            match self.examine(chosen) {
                NodeState::Dead => {}
                NodeState::Flat => self.dfs(chosen, out),
                NodeState::Alive { origin_interior } => {
                    if self.cfg.dim == 2 || origin_interior {
                        self.emit(chosen, out);
                    }
                    if chosen.len() < self.cfg.max_vertices {
                        self.dfs(chosen, out);
                    }
                }
            }
            chosen.pop();
        }
    }

    fn run(&self) -> BTreeMap<IntMatrix, LatticePolytope> {
        // top-level branches are independent work units
        let roots: Vec<usize> = (0..self.candidates.len()).collect();
        let parts: Vec<BTreeMap<IntMatrix, LatticePolytope>> = roots
            .par_iter()
            .map(|&r| {
                let mut out = BTreeMap::new();
                let mut chosen = vec![r];
                self.dfs(&mut chosen, &mut out);
                out
            })
            .collect();
        let mut merged = BTreeMap::new();
        for part in parts {
            for (k, v) in part {
                merged.entry(k).or_insert(v);
            }
        }
        merged
    }
}

/// Signed permutation matrices of the given dimension (the symmetries of a
/// centred box), acting on points padded to three coordinates.
fn signed_permutations(dim: usize) -> Vec<[[i64; 3]; 3]> {
    let perms: Vec<Vec<usize>> = if dim == 2 {
        vec![vec![0, 1], vec![1, 0]]
    } else {
        vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]]
    };
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..1u32 << dim {
            let mut m = [[0i64; 3]; 3];
            for i in 0..dim {
                m[i][p[i]] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

fn symmetry_permutations(candidates: &[Point], dim: usize) -> Vec<Vec<usize>> {
    signed_permutations(dim)
        .into_iter()
        .map(|m| {
            candidates
                .iter()
                .map(|p| {
                    let q = [dot(&m[0], p), dot(&m[1], p), dot(&m[2], p)];
                    candidates.binary_search(&q).expect("box symmetries preserve the candidates")
                })
                .collect()
        })
        .collect()
}

fn box_points(bound: i64, dim: usize) -> Vec<Point> {
    let range = |d: usize| if d < dim { -bound..=bound } else { 0..=0 };
    let mut out = Vec::new();
    for x in range(0) {
        for y in range(1) {
            for z in range(2) {
                out.push([x, y, z]);
            }
        }
    }
    out
}

fn run_with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

fn finish(found: BTreeMap<IntMatrix, LatticePolytope>) -> Vec<EnumeratedClass> {
    found
        .into_iter()
        .map(|(normal_form, polytope)| EnumeratedClass { normal_form, polytope })
        .collect()
}

/// All `GL(3, Z)` classes of terminal Fano polytopes with vertices in the
/// box, sorted by normal form. Every returned polytope is re-verified.
pub fn enumerate_terminal_fano(cfg: &EnumConfig) -> Vec<EnumeratedClass> {
    cfg.validate();
    assert_eq!(cfg.dim, 3, "terminal Fano enumeration is three-dimensional");
    let all = box_points(cfg.box_bound, 3);
    let candidates: Vec<Point> = all.iter().filter(|p| gcd(gcd(p[0], p[1]), p[2]) == 1).copied().collect();
    let forbidden: Vec<Point> = all.into_iter().filter(|p| *p != [0, 0, 0]).collect();
    let box_symmetries = symmetry_permutations(&candidates, 3);
    let search = Search { cfg, candidates, forbidden, box_symmetries };
    let classes = finish(run_with_jobs(cfg.jobs, || search.run()));
    for c in &classes {
        let f = classify(&c.polytope);
        assert!(f.is_fano && f.is_terminal && c.polytope.n_vertices() <= cfg.max_vertices);
    }
    classes
}

/// All affine-unimodular classes of lattice polygons whose only lattice
/// points are their vertices, with vertices in the box.
pub fn enumerate_empty_polygons(cfg: &EnumConfig) -> Vec<EnumeratedClass> {
    cfg.validate();
    assert_eq!(cfg.dim, 2, "empty polygon enumeration is two-dimensional");
    let all = box_points(cfg.box_bound, 2);
    let box_symmetries = symmetry_permutations(&all, 2);
    let search = Search { cfg, candidates: all.clone(), forbidden: all, box_symmetries };
    let classes = finish(run_with_jobs(cfg.jobs, || search.run()));
    for c in &classes {
        let counts = polygon_counts(&c.polytope).expect("2D polygon");
        assert!(counts.interior == 0 && counts.boundary == c.polytope.n_vertices().into());
        assert!(!counts.twice_area.is_zero());
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygons_in_small_boxes() {
        for b in [1, 2] {
            let classes = enumerate_empty_polygons(&EnumConfig::new(b, 2));
            let sizes: Vec<usize> = classes.iter().map(|c| c.polytope.n_vertices()).collect();
            assert_eq!(classes.len(), 2, "box {b}");
            assert!(sizes.contains(&3) && sizes.contains(&4));
        }
    }

    #[test]
    fn hull_growth_is_monotone() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let pts: Vec<IntVector> = (0..6)
                .map(|_| IntVector::from_i64s(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)]))
                .collect();
            let Ok(small) = convex_hull(&pts) else { continue };
            let mut more = pts.clone();
            more.push(IntVector::from_i64s(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3)]));
            let big = convex_hull(&more).unwrap();
            for x in box_points(3, 3).iter().map(|p| IntVector::from_i64s(p)) {
                if small.contains_strictly(&x) {
                    assert!(big.contains_strictly(&x));
                }
                if small.contains(&x) && small.vertex_index(&x).is_none() {
                    assert!(big.contains(&x) && big.vertex_index(&x).is_none());
                }
            }
        }
    }
}
