//! The eleven vertex-transitive (Archimedean) tilings of the plane,
//! given as fundamental-domain templates: a set of vertex classes per
//! unit cell and the face cycles per cell, each corner written as a
//! (vertex class, cell offset) pair. The translation lattice is always
//! the unit cell shifts (1,0) and (0,1).

use crate::error::{Error, Result};
use crate::mapcore::{canonical_cycle, FlagMap};
use crate::symbols::VertexSymbol;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TilingId {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
    E9,
    E10,
    E11,
}

pub const ALL_TILINGS: [TilingId; 11] = [
    TilingId::E1,
    TilingId::E2,
    TilingId::E3,
    TilingId::E4,
    TilingId::E5,
    TilingId::E6,
    TilingId::E7,
    TilingId::E8,
    TilingId::E9,
    TilingId::E10,
    TilingId::E11,
];

impl TilingId {
    pub fn index(self) -> usize {
        ALL_TILINGS.iter().position(|&t| t == self).unwrap()
    }

    /// The vertex symbol of every vertex of this tiling.
    pub fn type_symbol(self) -> VertexSymbol {
        let text = match self {
            TilingId::E1 => "3^6",
            TilingId::E2 => "4^4",
            TilingId::E3 => "6^3",
            TilingId::E4 => "3^3.4^2",
            TilingId::E5 => "3^2.4.3.4",
            TilingId::E6 => "3.6.3.6",
            TilingId::E7 => "3^4.6",
            TilingId::E8 => "3.4.6.4",
            TilingId::E9 => "3.12^2",
            TilingId::E10 => "4.6.12",
            TilingId::E11 => "4.8^2",
        };
        VertexSymbol::parse(text).unwrap()
    }
}

impl fmt::Display for TilingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.index() + 1)
    }
}

impl FromStr for TilingId {
    type Err = Error;
    fn from_str(s: &str) -> Result<TilingId> {
        let s = s.trim();
        let n: usize = s
            .strip_prefix('E')
            .or_else(|| s.strip_prefix('e'))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::UnknownTiling(s.to_string()))?;
        if (1..=11).contains(&n) {
            Ok(ALL_TILINGS[n - 1])
        } else {
            Err(Error::UnknownTiling(s.to_string()))
        }
    }
}

/// A face corner: vertex class index plus cell offset.
pub type Corner = (usize, i32, i32);

#[derive(Debug, Clone)]
pub struct TilingTemplate {
    pub id: TilingId,
    pub symbol: VertexSymbol,
    /// Names of the vertex classes in one unit cell.
    pub classes: Vec<String>,
    /// Face cycles per unit cell, corners as (class, dx, dy).
    pub faces: Vec<Vec<Corner>>,
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn build_templates() -> Vec<TilingTemplate> {
    let mut ts = Vec::new();

    // E1: triangular lattice; neighbours of u_{i,j} are the six shifts
    // (+-1,0), (0,+-1), (1,-1), (-1,1). Two triangles per cell.
    ts.push(TilingTemplate {
        id: TilingId::E1,
        symbol: TilingId::E1.type_symbol(),
        classes: names(&["u"]),
        faces: vec![
            vec![(0, 0, 0), (0, 1, 0), (0, 0, 1)],
            vec![(0, 1, 0), (0, 1, 1), (0, 0, 1)],
        ],
    });

    // E2: square lattice, one square per cell.
    ts.push(TilingTemplate {
        id: TilingId::E2,
        symbol: TilingId::E2.type_symbol(),
        classes: names(&["u"]),
        faces: vec![vec![(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1)]],
    });

    // E3: honeycomb; classes u, v with v_{i,j} adjacent to u_{i,j},
    // u_{i+1,j}, u_{i,j+1}. One hexagon per cell.
    ts.push(TilingTemplate {
        id: TilingId::E3,
        symbol: TilingId::E3.type_symbol(),
        classes: names(&["u", "v"]),
        faces: vec![vec![
            (0, 0, 0),
            (1, -1, 0),
            (0, -1, 0),
            (1, -1, -1),
            (0, 0, -1),
            (1, 0, -1),
        ]],
    });

    // E4: rows of squares between double rows of triangles.
    ts.push(TilingTemplate {
        id: TilingId::E4,
        symbol: TilingId::E4.type_symbol(),
        classes: names(&["u", "v"]),
        faces: vec![
            vec![(0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)],
            vec![(1, 0, 0), (1, 1, 0), (0, 0, 1)],
            vec![(1, 1, 0), (0, 1, 1), (0, 0, 1)],
        ],
    });

    // E5: snub square tiling, four classes per cell, two squares and
    // four triangles per cell, one fixed chirality.
    ts.push(TilingTemplate {
        id: TilingId::E5,
        symbol: TilingId::E5.type_symbol(),
        classes: names(&["u", "v", "w", "x"]),
        faces: vec![
            vec![(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0)],
            vec![(0, 0, 0), (1, -1, 0), (2, -1, -1), (3, 0, -1)],
            vec![(0, 0, 0), (1, 0, 0), (2, 0, -1)],
            vec![(0, 0, 0), (2, 0, -1), (3, 0, -1)],
            vec![(0, 0, 0), (3, 0, 0), (1, -1, 0)],
            vec![(3, 0, 0), (2, -1, 0), (1, -1, 0)],
        ],
    });

    // E6: kagome (edge midpoints of E1); two triangles and one hexagon
    // per cell.
    ts.push(TilingTemplate {
        id: TilingId::E6,
        symbol: TilingId::E6.type_symbol(),
        classes: names(&["u", "v", "w"]),
        faces: vec![
            vec![(0, 0, 0), (2, 0, 0), (1, 0, 0)],
            vec![(1, 1, 0), (0, 0, 1), (2, 0, 0)],
            vec![
                (0, 0, 0),
                (1, 0, 0),
                (2, -1, 0),
                (0, -1, 0),
                (1, 0, -1),
                (2, 0, -1),
            ],
        ],
    });

    // E7: snub hexagonal tiling, derived below from E1 by deleting the
    // index-7 sublattice of vertices with x - 4y = 0 (mod 7) and taking
    // the surviving triangles together with the hexagonal holes.
    ts.push(derive_snub_hexagonal());

    // E8: rhombitrihexagonal; classes (u,v,w) x parity. One hexagon,
    // three squares, two triangles per cell.
    ts.push(TilingTemplate {
        id: TilingId::E8,
        symbol: TilingId::E8.type_symbol(),
        classes: names(&["u0", "v0", "w0", "u1", "v1", "w1"]),
        faces: vec![
            // hexagon
            vec![(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (4, 0, 0), (5, 0, 0)],
            vec![(0, 0, 0), (1, 0, 0), (3, 0, -1), (4, 0, -1)],
            vec![(1, 0, 0), (5, 1, -1), (3, 0, -1)],
            vec![(1, 0, 0), (2, 0, 0), (4, 1, -1), (5, 1, -1)],
            vec![(2, 0, 0), (0, 1, 0), (4, 1, -1)],
            vec![(2, 0, 0), (0, 1, 0), (5, 1, 0), (3, 0, 0)],
        ],
    });

    // E9: truncated hexagonal; one 12-gon and two triangles per cell.
    ts.push(TilingTemplate {
        id: TilingId::E9,
        symbol: TilingId::E9.type_symbol(),
        classes: names(&["u0", "v0", "w0", "u1", "v1", "w1"]),
        faces: vec![
            vec![
                (1, 0, 0),
                (4, 0, 0),
                (2, 0, 0),
                (5, 0, 0),
                (3, 0, 0),
                (0, 0, 1),
                (4, 0, 1),
                (1, 0, 1),
                (5, -1, 1),
                (2, -1, 1),
                (0, -1, 1),
                (3, -1, 0),
            ],
            vec![(5, -1, 0), (1, 0, 0), (3, -1, 0)],
            vec![(4, 0, 0), (0, 0, 0), (2, 0, 0)],
        ],
    });

    // E10: truncated trihexagonal; three squares, two hexagons and one
    // 12-gon per cell, twelve classes.
    ts.push(TilingTemplate {
        id: TilingId::E10,
        symbol: TilingId::E10.type_symbol(),
        classes: names(&[
            "a0", "b0", "c0", "d0", "e0", "f0", "a1", "b1", "c1", "d1", "e1", "f1",
        ]),
        faces: vec![
            // 12-gon
            vec![
                (2, 0, 0),
                (5, 0, 0),
                (4, 0, 0),
                (3, 0, 0),
                (6, 0, 0),
                (7, 0, 0),
                (8, 0, 0),
                (11, 0, 0),
                (10, 0, 0),
                (9, 0, 0),
                (0, 0, 0),
                (1, 0, 0),
            ],
            // squares
            vec![(3, 0, 0), (0, 1, 0), (9, 1, 0), (6, 0, 0)],
            vec![(1, 0, 0), (2, 0, 0), (7, 0, -1), (8, 0, -1)],
            vec![(5, 0, 0), (4, 0, 0), (11, 1, -1), (10, 1, -1)],
            // hexagons
            vec![(4, 0, 0), (3, 0, 0), (0, 1, 0), (1, 1, 0), (8, 1, -1), (11, 1, -1)],
            vec![(2, 0, 0), (5, 0, 0), (10, 1, -1), (9, 1, -1), (6, 0, -1), (7, 0, -1)],
        ],
    });

    // E11: truncated square tiling; one square and one octagon per cell.
    ts.push(TilingTemplate {
        id: TilingId::E11,
        symbol: TilingId::E11.type_symbol(),
        classes: names(&["u", "v", "w", "x"]),
        faces: vec![
            vec![(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0)],
            vec![
                (2, 0, 0),
                (0, 1, 0),
                (3, 1, 0),
                (1, 1, 1),
                (0, 1, 1),
                (2, 0, 1),
                (1, 0, 1),
                (3, 0, 0),
            ],
        ],
    });

    ts
}

/// Residue class (1..=6) of an E1 vertex that survives deletion of the
/// index-7 sublattice {x - 4y = 0 (mod 7)}; 0 means deleted.
pub fn snub_residue(x: i64, y: i64) -> usize {
    (x - 4 * y).rem_euclid(7) as usize
}

/// Cell of a surviving E1 vertex in the derived snub coordinates.
pub fn snub_cell(x: i64, y: i64) -> (i64, i64) {
    let k = snub_residue(x, y) as i64;
    ((x - 4 * y - k) / 7, y)
}

/// Build the snub hexagonal template from the triangular one: delete the
/// sublattice u_{x,y} with x - 4y = 0 (mod 7); the surviving triangles
/// plus one hexagon (the hole left by each deleted vertex) form the new
/// faces, with six vertex classes per (larger) cell.
fn derive_snub_hexagonal() -> TilingTemplate {
    let to_corner = |x: i64, y: i64| -> Corner {
        let k = snub_residue(x, y);
        assert!(k != 0, "corner on the deleted sublattice");
        let (i, j) = snub_cell(x, y);
        (k - 1, i as i32, j as i32)
    };
    let normalize = |face: Vec<Corner>| -> Vec<Corner> {
        let (di, dj) = face.iter().map(|&(_, i, j)| (i, j)).min().unwrap();
        face.into_iter().map(|(c, i, j)| (c, i - di, j - dj)).collect()
    };

    let mut faces = Vec::new();
    // one fundamental domain of the deleted lattice: E1 cells (x,0),
    // x = 0..6, two triangles each; drop the ones touching a deleted vertex
    for x in 0..7i64 {
        for tri in [
            [(x, 0), (x + 1, 0), (x, 1)],
            [(x + 1, 0), (x + 1, 1), (x, 1)],
        ] {
            if tri.iter().all(|&(a, b)| snub_residue(a, b) != 0) {
                faces.push(normalize(tri.iter().map(|&(a, b)| to_corner(a, b)).collect()));
            }
        }
    }
    // the hexagonal hole around the deleted vertex (0,0): its six E1
    // neighbours in rotation order
    let hole = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
    faces.push(normalize(hole.iter().map(|&(a, b)| to_corner(a, b)).collect()));

    TilingTemplate {
        id: TilingId::E7,
        symbol: TilingId::E7.type_symbol(),
        classes: names(&["u1", "u2", "u3", "u4", "u5", "u6"]),
        faces,
    }
}

static TEMPLATES: OnceLock<Vec<TilingTemplate>> = OnceLock::new();

pub fn template(id: TilingId) -> &'static TilingTemplate {
    &TEMPLATES.get_or_init(build_templates)[id.index()]
}

/// Finite window onto a tiling: all face templates instantiated at cells
/// |i|, |j| <= radius, with vertex coordinates retained.
#[derive(Debug, Clone)]
pub struct Patch {
    pub tiling: TilingId,
    pub map: FlagMap,
    /// (class, x, y) plane coordinates per vertex label.
    pub coords: Vec<(usize, i32, i32)>,
    /// Labels of vertices whose full face cycle is present.
    pub interior: Vec<usize>,
}

impl Patch {
    pub fn is_interior(&self, label: usize) -> bool {
        self.interior.binary_search(&label).is_ok()
    }

    /// Vertex label at given plane coordinates, if present.
    pub fn label_at(&self, class: usize, x: i32, y: i32) -> Option<usize> {
        self.coords.iter().position(|&c| c == (class, x, y))
    }
}

/// Instantiate the face templates of `t` at all cells in the square
/// window, as coordinate cycles.
fn window_faces(t: &TilingTemplate, radius: i32) -> Vec<Vec<(usize, i32, i32)>> {
    let mut out = Vec::new();
    for j in -radius..=radius {
        for i in -radius..=radius {
            for face in &t.faces {
                out.push(
                    face.iter()
                        .map(|&(c, dx, dy)| (c, i + dx, j + dy))
                        .collect(),
                );
            }
        }
    }
    out
}

pub fn patch(t: &TilingTemplate, radius: i32) -> Patch {
    assert!(radius >= 0);
    let coord_faces = window_faces(t, radius);
    // deterministic labels: sort vertices by (x, y, class)
    let mut vmap: BTreeMap<(i32, i32, usize), usize> = BTreeMap::new();
    for face in &coord_faces {
        for &(c, x, y) in face {
            vmap.entry((x, y, c)).or_insert(0);
        }
    }
    for (n, slot) in vmap.values_mut().enumerate() {
        *slot = n;
    }
    let mut coords = vec![(0usize, 0i32, 0i32); vmap.len()];
    for (&(x, y, c), &n) in &vmap {
        coords[n] = (c, x, y);
    }
    let faces: Vec<Vec<usize>> = coord_faces
        .iter()
        .map(|f| f.iter().map(|&(c, x, y)| vmap[&(x, y, c)]).collect())
        .collect();
    let map = FlagMap::build_from_faces(&faces).expect("patch faces are well-formed");
    let mut interior: Vec<usize> = (0..map.num_vertices())
        .filter(|&v| map.is_interior_vertex(v))
        .map(|v| map.vertex_label(v))
        .collect();
    interior.sort_unstable();
    Patch {
        tiling: t.id,
        map,
        coords,
        interior,
    }
}

#[derive(Debug, Clone, Default)]
pub struct TemplateReport {
    pub failures: Vec<String>,
}

impl TemplateReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Build-time gate over the authored template data: a radius-3 patch must
/// be polyhedral as a bordered map, every interior vertex must carry the
/// declared vertex symbol, and unit translations must map the face set
/// into itself.
pub fn validate_template(t: &TilingTemplate) -> TemplateReport {
    let mut failures = Vec::new();
    let p = patch(t, 3);

    let report = p.map.is_polyhedral();
    if let Some(v) = &report.violation {
        failures.push(format!("{}: patch not polyhedral: {v:?}", t.id));
    }

    if p.interior.is_empty() {
        failures.push(format!("{}: radius-3 patch has no interior vertices", t.id));
    }
    for v in 0..p.map.num_vertices() {
        if !p.map.is_interior_vertex(v) {
            continue;
        }
        match p
            .map
            .face_cycle(v)
            .and_then(|c| VertexSymbol::canonicalize(&c))
        {
            Ok(sym) if sym == t.symbol => {}
            Ok(sym) => {
                failures.push(format!(
                    "{}: interior vertex {} has symbol {} (want {})",
                    t.id,
                    p.map.vertex_label(v),
                    sym,
                    t.symbol
                ));
            }
            Err(e) => failures.push(format!("{}: {e}", t.id)),
        }
    }

    // translation invariance on the window: every face of a cell with
    // room to shift must reappear shifted by (1,0) and by (0,1)
    let all: std::collections::HashSet<Vec<(usize, i32, i32)>> = window_faces(t, 3)
        .into_iter()
        .map(canonical_coord_cycle)
        .collect();
    for j in -3..=2i32 {
        for i in -3..=2i32 {
            for face in &t.faces {
                for (si, sj) in [(1, 0), (0, 1)] {
                    let shifted: Vec<(usize, i32, i32)> = face
                        .iter()
                        .map(|&(c, dx, dy)| (c, i + si + dx, j + sj + dy))
                        .collect();
                    if !all.contains(&canonical_coord_cycle(shifted)) {
                        failures.push(format!(
                            "{}: face of cell ({i},{j}) missing its ({si},{sj}) translate",
                            t.id
                        ));
                    }
                }
            }
        }
    }

    TemplateReport { failures }
}

fn canonical_coord_cycle(cycle: Vec<(usize, i32, i32)>) -> Vec<(usize, i32, i32)> {
    // reuse the usize cycle canonicalizer via an index indirection
    let mut items = cycle.clone();
    items.sort_unstable();
    items.dedup();
    let idx: Vec<usize> = cycle
        .iter()
        .map(|c| items.binary_search(c).unwrap())
        .collect();
    canonical_cycle(idx)
        .into_iter()
        .map(|i| items[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_and_print() {
        for (n, id) in ALL_TILINGS.iter().enumerate() {
            assert_eq!(format!("E{}", n + 1).parse::<TilingId>().unwrap(), *id);
            assert_eq!(id.to_string(), format!("E{}", n + 1));
        }
        assert!("E12".parse::<TilingId>().is_err());
        assert!("foo".parse::<TilingId>().is_err());
    }

    #[test]
    fn class_counts() {
        let want = [1, 1, 2, 2, 4, 3, 6, 6, 6, 12, 4];
        for (id, &w) in ALL_TILINGS.iter().zip(&want) {
            assert_eq!(template(*id).classes.len(), w, "{id}");
        }
    }

    #[test]
    fn square_patch_counts() {
        let p = patch(template(TilingId::E2), 1);
        assert_eq!(p.map.num_vertices(), 16);
        assert_eq!(p.map.num_faces(), 9);
        assert_eq!(p.interior.len(), 4);
    }

    #[test]
    fn all_templates_validate() {
        for id in ALL_TILINGS {
            let rep = validate_template(template(id));
            assert!(rep.is_valid(), "{id}: {:?}", rep.failures);
        }
    }

    #[test]
    fn flipped_face_fails_validation() {
        // break E4 by reflecting one triangle's attachment
        let mut t = template(TilingId::E4).clone();
        t.faces[1] = vec![(1, 0, 0), (1, 1, 0), (0, 1, 1)];
        let rep = validate_template(&t);
        assert!(!rep.is_valid());
    }

    #[test]
    fn snub_hexagonal_face_mix() {
        let t = template(TilingId::E7);
        let mut sizes: Vec<usize> = t.faces.iter().map(|f| f.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 3, 3, 3, 3, 3, 3, 3, 6]);
    }

    #[test]
    fn interior_count_grows_quadratically() {
        for id in ALL_TILINGS {
            let t = template(id);
            let counts: Vec<usize> = (2..=5).map(|r| patch(t, r).interior.len()).collect();
            assert!(counts.windows(2).all(|w| w[0] < w[1]), "{id}");
            // second difference of a quadratic is constant
            let d2a = counts[2] + counts[0] - 2 * counts[1];
            let d2b = counts[3] + counts[1] - 2 * counts[2];
            assert_eq!(d2a, d2b, "{id}: not quadratic in radius");
            assert!(d2a > 0, "{id}");
        }
    }
}
