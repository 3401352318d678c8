//! Toric invariants of Fano polytopes: the dual polytope, anticanonical
//! degree, genus, class-group and Picard ranks. Also constructs the polytopes
//! of weighted projective spaces and of finite lattice quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linear::{hnf, rational_det3, snf, IntMatrix, IntVector, Rational};
use crate::polytope::{convex_hull, LatticePolytope};

/// A polytope in `M_Q` with rational vertices. Each facet is stored as an
/// integral normal in `N` together with an offset, so the polytope is
/// `{m : <m, normal> >= -offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub vertices: Vec<Vec<Rational>>,
    pub facets: Vec<(IntVector, Rational)>,
}

impl RationalPolytope {
    pub fn is_lattice_polytope(&self) -> bool {
        self.vertices.iter().flatten().all(Rational::is_integer)
    }

    /// Integral vertices, when every vertex is a lattice point.
    pub fn lattice_vertices(&self) -> Option<Vec<IntVector>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| c.is_integer().then(|| c.to_integer()))
                    .collect::<Option<Vec<_>>>()
                    .map(IntVector::new)
            })
            .collect()
    }

    pub fn contains(&self, m: &[Rational]) -> bool {
        self.facets.iter().all(|(n, off)| {
            let s: Rational = n.coords().iter().zip(m).map(|(a, b)| b * a).sum();
            s + off >= Rational::zero()
        })
    }
}

/// `P* = {m : <m, v> >= -1 for every vertex v of P}`. Its vertices are
/// `normal_F / offset_F` over the facets `F` of `P`, listed in facet order.
pub fn dual_polytope(p: &LatticePolytope) -> Result<RationalPolytope> {
    if !p.origin_is_interior() {
        return Err(Error::DualUndefined);
    }
    let vertices = p
        .facets()
        .iter()
        .map(|f| {
            f.normal
                .coords()
                .iter()
                .map(|c| Rational::new(c.clone(), f.offset.clone()))
                .collect()
        })
        .collect();
    let facets = p
        .vertices()
        .iter()
        .map(|v| (v.clone(), Rational::one()))
        .collect();
    Ok(RationalPolytope { vertices, facets })
}

/// The facets through vertex `vi`, in cyclic order around it.
fn facet_cycle(p: &LatticePolytope, vi: usize) -> Vec<usize> {
    let around: Vec<usize> = (0..p.facets().len())
        .filter(|&f| p.facets()[f].vertices.contains(&vi))
        .collect();
    let neighbours = |f: usize| {
        let vs = &p.facets()[f].vertices;
        let k = vs.len();
        let pos = vs.iter().position(|&x| x == vi).unwrap();
        (vs[(pos + k - 1) % k], vs[(pos + 1) % k])
    };
    let mut cycle = vec![around[0]];
    loop {
        let cur = *cycle.last().unwrap();
        let (_, next_v) = neighbours(cur);
        // the facet on the other side of edge (vi, next_v) sees it reversed
        let nxt = *around
            .iter()
            .find(|&&g| g != cur && neighbours(g).0 == next_v)
            .expect("closed facet cycle around a vertex");
        if nxt == cycle[0] {
            break;
        }
        cycle.push(nxt);
    }
    cycle
}

/// `(-K)^3 = 3!·vol(P*)`, computed by coning each facet of `P*` to the origin
/// and fan-triangulating it.
pub fn anticanonical_degree(p: &LatticePolytope) -> Result<Rational> {
    if p.dim() != 3 {
        return Err(Error::UnsupportedDimension(p.dim()));
    }
    let dual = dual_polytope(p)?;
    let mut total = Rational::zero();
    for vi in 0..p.n_vertices() {
        let cyc = facet_cycle(p, vi);
        let q0 = &dual.vertices[cyc[0]];
        for w in cyc[1..].windows(2) {
            let d = rational_det3(&[q0.clone(), dual.vertices[w[0]].clone(), dual.vertices[w[1]].clone()]);
            total += d.abs();
        }
    }
    Ok(total)
}

/// Lattice points of `P*`, sorted lexicographically.
pub fn dual_lattice_points(p: &LatticePolytope) -> Result<Vec<IntVector>> {
    let dual = dual_polytope(p)?;
    let dim = p.dim();
    let bounds: Vec<(i64, i64)> = (0..dim)
        .map(|i| {
            let lo = dual.vertices.iter().map(|v| v[i].floor()).min().unwrap();
            let hi = dual.vertices.iter().map(|v| v[i].ceil()).max().unwrap();
            (lo.to_integer().to_i64().unwrap(), hi.to_integer().to_i64().unwrap())
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    'scan: loop {
        let m = IntVector::from_i64s(&cur);
        if p.vertices().iter().all(|v| m.dot(v) >= BigInt::from(-1)) {
            out.push(m);
        }
        let mut i = dim;
        loop {
            if i == 0 {
                break 'scan;
            }
            i -= 1;
            if cur[i] < bounds[i].1 {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                    *c = bounds[j].0;
                }
                break;
            }
        }
    }
    Ok(out)
}

/// `g = dim|-K| - 1 = #(P* ∩ M) - 2`.
pub fn genus(p: &LatticePolytope) -> Result<i64> {
    Ok(dual_lattice_points(p)?.len() as i64 - 2)
}

/// `rk Cl = #rays - dim`.
pub fn class_group_rank(p: &LatticePolytope) -> usize {
    p.n_vertices() - p.dim()
}

/// Rank of the Picard group of the toric variety of the face fan of `p`.
///
/// A torus-invariant divisor `sum a_r D_r` is Q-Cartier iff for every facet
/// cone there is `m` with `<m, v_r> = -a_r` on all of its rays. The unknowns
/// `(a, m_F...)` satisfy one homogeneous linear equation per (facet, ray)
/// incidence; since each facet cone is full-dimensional, the projection to
/// `a` is injective, so the Cartier divisors have rank `#unknowns - rank`.
/// Principal divisors account for `dim` of it.
pub fn picard_rank(p: &LatticePolytope) -> usize {
    let (v, d) = (p.n_vertices(), p.dim());
    let nf = p.facets().len();
    let cols = v + d * nf;
    let mut rows = Vec::new();
    for (fi, f) in p.facets().iter().enumerate() {
        for &ri in &f.vertices {
            let mut row = vec![BigInt::zero(); cols];
            row[ri] = BigInt::one();
            for (k, c) in p.vertices()[ri].coords().iter().enumerate() {
                row[v + d * fi + k] = c.clone();
            }
            rows.push(row);
        }
    }
    let rank = IntMatrix::from_rows(rows).rank();
    cols - rank - d
}

/// Well-formed weights: all positive and every `n-1` of them coprime.
fn check_well_formed(w: &[u64]) -> Result<()> {
    if w.len() != 4 || w.contains(&0) {
        return Err(Error::NotWellFormed(w.to_vec()));
    }
    for skip in 0..4 {
        let g = (0..4).filter(|&i| i != skip).fold(0u64, |g, i| g.gcd(&w[i]));
        if g != 1 {
            return Err(Error::NotWellFormed(w.to_vec()));
        }
    }
    Ok(())
}

/// The Fano polytope of the weighted projective space `P(w0,w1,w2,w3)`:
/// the images of the standard basis of `Z^4` in `Z^4 / Z·w`, in a basis
/// obtained from the Smith normal form of `w`.
pub fn wps_polytope(weights: [u64; 4]) -> Result<LatticePolytope> {
    check_well_formed(&weights)?;
    let w = IntMatrix::from_rows(weights.iter().map(|&x| vec![BigInt::from(x)]).collect());
    // U·w·V = (1,0,0,0)^T with V = (±1), so rows 1..4 of U kill w.
    let (_, u, _) = snf(&w);
    let vertices: Vec<IntVector> = (0..4)
        .map(|i| IntVector::new((1..4).map(|r| u.get(r, i).clone()).collect()))
        .collect();
    if !vertices.iter().all(IntVector::is_primitive) {
        return Err(Error::NotWellFormed(weights.to_vec()));
    }
    convex_hull(&vertices)
}

/// Refines the lattice to `N' = N + Z·g`, where `g` has order `k` modulo
/// `N`, and returns the polytope whose vertices are the primitive `N'`
/// generators of the rays of `p`, written in a basis of `N'`.
///
/// The result is not re-validated: terminality and the Fano property must
/// be checked by the caller.
pub fn lattice_quotient(p: &LatticePolytope, g: &[Rational], k: u64) -> Result<LatticePolytope> {
    let d = p.dim();
    if g.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: g.len() });
    }
    if g.iter().all(Rational::is_integer) {
        return Err(Error::TrivialQuotient);
    }
    let kk = BigInt::from(k);
    let scaled: Vec<Rational> = g.iter().map(|c| c * Rational::from_integer(kk.clone())).collect();
    if k == 0 || !scaled.iter().all(Rational::is_integer) {
        return Err(Error::NonIntegralGenerator { k });
    }
    // Generators of k·N' as rows: k·e_i and k·g.
    let mut gens: Vec<Vec<BigInt>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { kk.clone() } else { BigInt::zero() }).collect())
        .collect();
    gens.push(scaled.iter().map(Rational::to_integer).collect());
    let (h, _) = hnf(&IntMatrix::from_rows(gens));
    let basis = IntMatrix::from_rows(h.rows()[..d].to_vec());
    let det = basis.det()?.abs();
    let full = kk.pow(d as u32);
    let index = &full / &det;
    if !(&index * &det == full && index == kk) {
        return Err(Error::WrongIndex { index: Rational::new(full, det).to_string(), k });
    }
    // v = c·(basis / k)  =>  c = k·v·adj(basis) / det(basis)
    let adj = basis.adjugate()?;
    let signed_det = basis.det()?;
    let mut rays = Vec::with_capacity(p.n_vertices());
    for v in p.vertices() {
        let row = IntMatrix::from_vectors(&[v.scale(&kk)]).mul(&adj);
        let coords: Vec<BigInt> = row.rows()[0]
            .iter()
            .map(|x| {
                debug_assert!(x.is_multiple_of(&signed_det));
                x / &signed_det
            })
            .collect();
        rays.push(IntVector::new(coords).primitivize()?);
    }
    convex_hull(&rays)
}
