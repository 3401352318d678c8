//! Lattice quotients: the index-2 quotient of the octahedron and the index-5
//! quotient of the simplex, checked against exhaustive searches.

use num_bigint::BigInt;
use tfano_core::invariants::{anticanonical_degree, genus, lattice_quotient};
use num_traits::Signed;
use tfano_core::linear::{IntMatrix, IntVector, Rational};
use tfano_core::polytope::{classify, facet_vertex_counts, LatticePolytope};
use tfano_core::symmetry::normal_form;

fn simplex() -> LatticePolytope {
    LatticePolytope::from_i64s(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]).unwrap()
}

fn fifths(a: i64, b: i64, c: i64) -> Vec<Rational> {
    [a, b, c].iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(5))).collect()
}

#[test]
fn index_five_quotients_of_the_simplex() {
    let p = simplex();
    let mut hits = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let q = lattice_quotient(&p, &fifths(a, b, c), 5).unwrap();
                let f = classify(&q);
                if f.is_fano && f.is_terminal {
                    let d = anticanonical_degree(&q).unwrap();
                    hits.push(((a, b, c), normal_form(&q), d, genus(&q).unwrap()));
                }
            }
        }
    }
    // one class only, with v = 4, degree 64/5 and genus 5
    assert_eq!(hits.len(), 24);
    let nf = &hits[0].1;
    for (_, other, d, g) in &hits {
        assert_eq!(other, nf);
        assert_eq!(*d, Rational::new(64.into(), 5.into()));
        assert_eq!(*g, 5);
    }
    // weights (1,2,3,4) on the rays e1, e2, e3, -e1-e2-e3 give the class of
    // (1-4, 2-4, 3-4)/5 = (2,3,4)/5 mod N
    assert!(hits.iter().any(|h| h.0 == (2, 3, 4)));
    let q = lattice_quotient(&p, &fifths(2, 3, 4), 5).unwrap();
    assert_eq!(q.n_vertices(), 4);
}

#[test]
fn octahedron_quotient_is_the_antiprism() {
    let oct = LatticePolytope::from_i64s(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]).unwrap();
    let half = Rational::new(1.into(), 2.into());
    let q = lattice_quotient(&oct, &[half.clone(), half.clone(), half], 2).unwrap();
    let antiprism =
        LatticePolytope::from_i64s(&[[1, 1, 0], [-1, -1, 0], [1, 0, 1], [-1, 0, -1], [0, 1, 1], [0, -1, -1]]).unwrap();
    assert_eq!(normal_form(&q), normal_form(&antiprism));
    assert_ne!(normal_form(&q), normal_form(&oct));
}

#[test]
fn quotient_keeps_the_combinatorics() {
    let p = simplex();
    let q = lattice_quotient(&p, &fifths(2, 3, 4), 5).unwrap();
    assert_eq!(q.n_vertices(), p.n_vertices());
    assert_eq!(facet_vertex_counts(&q), facet_vertex_counts(&p));
    // the refined lattice has index 5, so every simplex cone has volume 5
    for f in q.facets() {
        let cols: Vec<IntVector> = f.vertices.iter().map(|&i| q.vertices()[i].clone()).collect();
        let d = IntMatrix::from_columns(&cols).det().unwrap();
        assert_eq!(d.abs(), BigInt::from(5));
    }
}
