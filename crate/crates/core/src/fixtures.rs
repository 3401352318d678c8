//! The thirteen toric G-Fano threefolds with terminal singularities, and the
//! harness that recomputes their tabulated invariants.
//!
//! Fixtures are described by a `theorem1.toml` manifest. Rank-one varieties
//! are constructed (weighted projective spaces and the index-5 quotient of
//! `P^3`); the others are read from vertex files next to the manifest.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::format::parse_polytope;
use crate::invariants::{lattice_quotient, wps_polytope};
use crate::linear::Rational;
use crate::polytope::LatticePolytope;
use crate::report::{invariant_report, InvariantReport};

pub const MANIFEST: &str = "theorem1.toml";

/// Fixture ids whose varieties have Picard rank 3.
pub const PICARD_RANK_THREE: [&str; 2] = ["47", "62"];

const BUILTIN_MANIFEST: &str = include_str!("../fixtures/theorem1.toml");
const BUILTIN_FILES: [(&str, &str); 5] = [
    ("32.txt", include_str!("../fixtures/32.txt")),
    ("47.txt", include_str!("../fixtures/47.txt")),
    ("62.txt", include_str!("../fixtures/62.txt")),
    ("92.txt", include_str!("../fixtures/92.txt")),
    ("297.txt", include_str!("../fixtures/297.txt")),
];

#[derive(Debug, Deserialize)]
struct Manifest {
    fixture: Vec<RawFixture>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    id: String,
    label: String,
    wps: Option<[u64; 4]>,
    quotient: Option<RawQuotient>,
    file: Option<String>,
    rk_pic: usize,
    rk_cl: usize,
    degree: String,
    genus: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuotient {
    base: String,
    generator: Vec<String>,
    order: u64,
}

/// Tabulated values for one variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub rk_pic: usize,
    pub rk_cl: usize,
    pub degree: Rational,
    pub genus: i64,
}

#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub id: String,
    pub label: String,
    pub polytope: LatticePolytope,
    pub expected: Expected,
}

fn parse_rational(s: &str, id: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Fixture(format!("fixture {id}: bad rational {s:?}")))
}

fn build(manifest: &str, read: impl Fn(&str) -> Result<String>) -> Result<Vec<FixtureEntry>> {
    let manifest: Manifest = toml::from_str(manifest).map_err(|e| Error::Fixture(e.to_string()))?;
    let mut built: BTreeMap<String, LatticePolytope> = BTreeMap::new();
    let mut pending: Vec<&RawFixture> = manifest.fixture.iter().collect();

    // Quotients refer to other fixtures, so resolve until no progress.
    while !pending.is_empty() {
        let before = pending.len();
        let mut rest = Vec::new();
        for raw in pending {
            let sources = [raw.wps.is_some(), raw.quotient.is_some(), raw.file.is_some()];
            if sources.iter().filter(|&&s| s).count() != 1 {
                return Err(Error::Fixture(format!("fixture {} needs exactly one of wps, quotient, file", raw.id)));
            }
            let poly = if let Some(w) = raw.wps {
                wps_polytope(w)?
            } else if let Some(q) = &raw.quotient {
                let Some(base) = built.get(&q.base) else {
                    rest.push(raw);
                    continue;
                };
                let g = q
                    .generator
                    .iter()
                    .map(|s| parse_rational(s, &raw.id))
                    .collect::<Result<Vec<_>>>()?;
                lattice_quotient(base, &g, q.order)?
            } else {
                let name = raw.file.as_deref().unwrap();
                parse_polytope(&read(name)?).map_err(|e| Error::Fixture(format!("{name}: {e}")))?
            };
            if built.insert(raw.id.clone(), poly).is_some() {
                return Err(Error::Fixture(format!("duplicate fixture id {}", raw.id)));
            }
        }
        if rest.len() == before {
            let ids: Vec<&str> = rest.iter().map(|r| r.id.as_str()).collect();
            return Err(Error::Fixture(format!("unresolved quotient bases for fixtures {ids:?}")));
        }
        pending = rest;
    }

    let mut out = manifest
        .fixture
        .iter()
        .map(|raw| {
            Ok(FixtureEntry {
                id: raw.id.clone(),
                label: raw.label.clone(),
                polytope: built[&raw.id].clone(),
                expected: Expected {
                    rk_pic: raw.rk_pic,
                    rk_cl: raw.rk_cl,
                    degree: parse_rational(&raw.degree, &raw.id)?,
                    genus: raw.genus,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_by_id(&mut out);
    Ok(out)
}

fn sort_by_id(entries: &mut [FixtureEntry]) {
    entries.sort_by(|a, b| {
        let key = |s: &str| (s.parse::<u64>().unwrap_or(u64::MAX), s.to_string());
        key(&a.id).cmp(&key(&b.id))
    });
}

/// The fixtures compiled into the library.
pub fn builtin() -> Vec<FixtureEntry> {
    build(BUILTIN_MANIFEST, |name| {
        BUILTIN_FILES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| Error::Fixture(format!("no builtin file {name}")))
    })
    .expect("builtin fixtures are valid")
}

/// Loads `theorem1.toml` and the vertex files it names from `dir`.
pub fn load_dir(dir: &Path) -> Result<Vec<FixtureEntry>> {
    let manifest_path = dir.join(MANIFEST);
    let manifest = std::fs::read_to_string(&manifest_path)
        .map_err(|e| Error::Io(format!("{}: {e}", manifest_path.display())))?;
    build(&manifest, |name| {
        let path = dir.join(name);
        std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    })
}

/// Outcome of recomputing one fixture.
#[derive(Clone, Debug)]
pub struct FixtureCheck {
    pub id: String,
    pub label: String,
    pub expected: Expected,
    pub report: Option<InvariantReport>,
    pub mismatches: Vec<String>,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recomputes every tabulated value, the G-Fano property and the Picard
/// rank structure (rank 1 or 3, and 3 only for fixtures 47 and 62).
/// Results are ordered by numeric id regardless of input order.
pub fn verify_theorem1(fixtures: &[FixtureEntry]) -> Vec<FixtureCheck> {
    let mut sorted = fixtures.to_vec();
    sort_by_id(&mut sorted);
    sorted
        .into_iter()
        .map(|f| {
            let mut mismatches = Vec::new();
            let report = match invariant_report(&f.id, &f.polytope) {
                Ok(r) => Some(r),
                Err(e) => {
                    mismatches.push(format!("invariants: {e}"));
                    None
                }
            };
            if let Some(r) = &report {
                let e = &f.expected;
                if !(r.flags.is_fano && r.flags.is_terminal) {
                    mismatches.push("not a terminal Fano polytope".into());
                }
                if r.rk_cl != e.rk_cl {
                    mismatches.push(format!("rk_cl: expected {}, got {}", e.rk_cl, r.rk_cl));
                }
                if r.rk_pic != e.rk_pic {
                    mismatches.push(format!("rk_pic: expected {}, got {}", e.rk_pic, r.rk_pic));
                }
                if r.degree != e.degree {
                    mismatches.push(format!("degree: expected {}, got {}", e.degree, r.degree));
                }
                if r.genus != e.genus {
                    mismatches.push(format!("genus: expected {}, got {}", e.genus, r.genus));
                }
                if !r.is_gfano {
                    mismatches.push(format!("not G-Fano: invariant class rank {}", r.inv_cl_rank));
                }
                let pic_three = PICARD_RANK_THREE.contains(&f.id.as_str());
                if !(r.rk_pic == 1 || r.rk_pic == 3) || (r.rk_pic == 3) != pic_three {
                    mismatches.push(format!("Picard structure: rk_pic {} for fixture {}", r.rk_pic, f.id));
                }
            }
            FixtureCheck { id: f.id, label: f.label, expected: f.expected, report, mismatches }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_thirteen_fixtures() {
        let f = builtin();
        assert_eq!(f.len(), 13);
        let ids: Vec<&str> = f.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["1", "2", "3", "4", "5", "6", "7", "8", "32", "47", "62", "92", "297"]);
    }

    #[test]
    fn printed_vertex_lists_are_verbatim() {
        let f = builtin();
        let p92 = &f.iter().find(|e| e.id == "92").unwrap().polytope;
        let expect = LatticePolytope::from_i64s(&[[-1, -1, 0], [1, 0, 0], [1, 1, 1], [-2, -1, -1], [0, 0, -1], [0, 1, 0]]).unwrap();
        assert_eq!(p92, &expect);
    }

    #[test]
    fn manifest_errors() {
        let no_source = "[[fixture]]\nid = \"x\"\nlabel = \"x\"\nrk_pic = 1\nrk_cl = 1\ndegree = \"1\"\ngenus = 0\n";
        assert!(matches!(build(no_source, |_| unreachable!()), Err(Error::Fixture(_))));
        let dangling = "[[fixture]]\nid = \"x\"\nlabel = \"x\"\nquotient = { base = \"nope\", generator = [\"1/2\", \"1/2\", \"1/2\"], order = 2 }\nrk_pic = 1\nrk_cl = 1\ndegree = \"1\"\ngenus = 0\n";
        assert!(matches!(build(dangling, |_| unreachable!()), Err(Error::Fixture(_))));
    }
}
