//! Torus quotients of the plane tilings by sublattices of the unit-cell
//! translation lattice, plus sublattice enumeration in Hermite normal
//! form.

use crate::error::{Error, Result};
use crate::mapcore::FlagMap;
use crate::tilings::{Corner, TilingTemplate};
use serde::{Deserialize, Serialize};

/// An index-(a·d) sublattice of ℤ², as the column basis
/// [[a, b], [0, d]] in Hermite normal form: a, d >= 1 and 0 <= b < a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SublatticeBasis {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

impl SublatticeBasis {
    pub fn new(a: i64, b: i64, d: i64) -> Result<SublatticeBasis> {
        if a < 1 || d < 1 || b < 0 || b >= a {
            return Err(Error::InvalidBasis(format!(
                "[[{a},{b}],[0,{d}]] is not in Hermite normal form"
            )));
        }
        Ok(SublatticeBasis { a, b, d })
    }

    /// Normalize an arbitrary basis of column vectors (p, r), (q, s).
    pub fn from_columns(p: i64, r: i64, q: i64, s: i64) -> Result<SublatticeBasis> {
        let det = p * s - q * r;
        if det == 0 {
            return Err(Error::InvalidBasis("columns are linearly dependent".into()));
        }
        // second HNF column (b, d): d = gcd of the y-components
        let (d, u, w) = ext_gcd(r, s);
        let bx = u * p + w * q;
        let a = (det / d).abs();
        let b = bx.rem_euclid(a);
        SublatticeBasis::new(a, b, d)
    }

    pub fn index(&self) -> i64 {
        self.a * self.d
    }

    /// Residue of a plane cell modulo this sublattice, in the canonical
    /// fundamental domain 0 <= i < a, 0 <= j < d.
    pub fn reduce(&self, x: i64, y: i64) -> (i64, i64) {
        let j = y.rem_euclid(self.d);
        let t = (y - j) / self.d;
        let i = (x - t * self.b).rem_euclid(self.a);
        (i, j)
    }

    /// True when (x, y) lies in the sublattice.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.reduce(x, y) == (0, 0)
    }

    /// True when every vector of `other` lies in this lattice.
    pub fn contains_lattice(&self, other: &SublatticeBasis) -> bool {
        self.contains(other.a, 0) && self.contains(other.b, other.d)
    }

    /// Flat index of a reduced residue, 0 .. index.
    pub fn residue_index(&self, i: i64, j: i64) -> usize {
        (j * self.a + i) as usize
    }

    pub fn residues(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let (a, d) = (self.a, self.d);
        (0..d).flat_map(move |j| (0..a).map(move |i| (i, j)))
    }
}

/// All sublattices of ℤ² of index at most `max_index`, sorted by
/// (index, a, b). The count at exact index n is the divisor sum σ(n).
pub fn enumerate_sublattices(max_index: i64) -> Vec<SublatticeBasis> {
    assert!(max_index >= 1);
    let mut out = Vec::new();
    for a in 1..=max_index {
        for d in 1..=(max_index / a) {
            for b in 0..a {
                out.push(SublatticeBasis { a, b, d });
            }
        }
    }
    out.sort_by_key(|l| (l.index(), l.a, l.b));
    out
}

/// Quotient of the tiling by the sublattice: faces are the template
/// faces instantiated at every residue cell. Always a closed map with
/// Euler characteristic 0; small indices may be non-polyhedral (loops,
/// parallel edges), which is reported by the polyhedrality check, not
/// here.
pub fn torus_quotient(t: &TilingTemplate, lat: &SublatticeBasis) -> FlagMap {
    let n_classes = t.classes.len();
    let n_cells = lat.index() as usize;

    // flag layout inside one cell: faces in template order, face f gets
    // 2·|f| flags, slot k end e at face_base[f] + 2k + e
    let mut face_base = Vec::with_capacity(t.faces.len());
    let mut per_cell = 0usize;
    for f in &t.faces {
        face_base.push(per_cell);
        per_cell += 2 * f.len();
    }

    // pair each (face, slot) with its opposite (face', slot', cell shift,
    // end flip) by matching plane edges in the universal cover
    let pairing = slot_pairing(t);

    let total = n_cells * per_cell;
    let mut s0 = vec![0usize; total];
    let mut s1 = vec![0usize; total];
    let mut s2 = vec![0usize; total];
    let mut labels_per_flag = vec![0usize; total];

    let cells: Vec<(i64, i64)> = lat.residues().collect();
    for (ci, &(cx, cy)) in cells.iter().enumerate() {
        let cell_base = ci * per_cell;
        for (fi, face) in t.faces.iter().enumerate() {
            let p = face.len();
            let fb = cell_base + face_base[fi];
            for k in 0..p {
                let f0 = fb + 2 * k;
                let f1 = fb + 2 * k + 1;
                s0[f0] = f1;
                s0[f1] = f0;
                let next0 = fb + 2 * ((k + 1) % p);
                s1[f1] = next0;
                s1[next0] = f1;

                let (c0, dx0, dy0) = face[k];
                let (c1, dx1, dy1) = face[(k + 1) % p];
                labels_per_flag[f0] = vertex_label(lat, n_classes, c0, cx + dx0 as i64, cy + dy0 as i64);
                labels_per_flag[f1] = vertex_label(lat, n_classes, c1, cx + dx1 as i64, cy + dy1 as i64);

                let pr = &pairing[fi][k];
                let (oi, oj) = lat.reduce(cx + pr.shift.0, cy + pr.shift.1);
                let other_base = lat.residue_index(oi, oj) * per_cell + face_base[pr.face];
                let g0 = other_base + 2 * pr.slot + usize::from(pr.flip);
                let g1 = other_base + 2 * pr.slot + usize::from(!pr.flip);
                s2[f0] = g0;
                s2[f1] = g1;
            }
        }
    }

    let m = FlagMap::from_involutions(s0, s1, s2, Vec::new())
        .expect("quotient involutions are well-formed");
    // vertex orbits correspond bijectively to (class, residue) pairs;
    // relabel accordingly
    let mut labels = vec![usize::MAX; m.num_vertices()];
    for f in 0..m.num_flags() {
        let v = m.vertex_of(f);
        debug_assert!(labels[v] == usize::MAX || labels[v] == labels_per_flag[f]);
        labels[v] = labels_per_flag[f];
    }
    FlagMap::relabel_vertices(m, labels)
}

fn vertex_label(lat: &SublatticeBasis, n_classes: usize, class: usize, x: i64, y: i64) -> usize {
    let (i, j) = lat.reduce(x, y);
    lat.residue_index(i, j) * n_classes + class
}

struct SlotPartner {
    face: usize,
    slot: usize,
    shift: (i64, i64),
    /// true when the partner slot traverses the edge in the opposite
    /// vertex order, so flag ends swap across sigma2
    flip: bool,
}

/// For each (face, slot) of the template, the unique other face-slot
/// instance in the plane sharing that edge.
fn slot_pairing(t: &TilingTemplate) -> Vec<Vec<SlotPartner>> {
    type PlaneVert = (usize, i64, i64);
    let slot_edge = |face: &[Corner], k: usize, shift: (i64, i64)| -> (PlaneVert, PlaneVert) {
        let (c0, x0, y0) = face[k];
        let (c1, x1, y1) = face[(k + 1) % face.len()];
        (
            (c0, x0 as i64 + shift.0, y0 as i64 + shift.1),
            (c1, x1 as i64 + shift.0, y1 as i64 + shift.1),
        )
    };

    t.faces
        .iter()
        .enumerate()
        .map(|(fi, face)| {
            (0..face.len())
                .map(|k| {
                    let (v0, v1) = slot_edge(face, k, (0, 0));
                    let mut found: Option<SlotPartner> = None;
                    // the partner's cell shift is bounded by the offsets
                    // appearing in the template
                    for (gi, other) in t.faces.iter().enumerate() {
                        for l in 0..other.len() {
                            for sx in -3..=3i64 {
                                for sy in -3..=3i64 {
                                    if gi == fi && l == k && sx == 0 && sy == 0 {
                                        continue;
                                    }
                                    let (w0, w1) = slot_edge(other, l, (sx, sy));
                                    let (hit, flip) = if (w0, w1) == (v0, v1) {
                                        (true, false)
                                    } else if (w0, w1) == (v1, v0) {
                                        (true, true)
                                    } else {
                                        (false, false)
                                    };
                                    if hit {
                                        assert!(
                                            found.is_none(),
                                            "edge of face {fi} slot {k} covered three times"
                                        );
                                        found = Some(SlotPartner {
                                            face: gi,
                                            slot: l,
                                            shift: (sx, sy),
                                            flip,
                                        });
                                    }
                                }
                            }
                        }
                    }
                    found.expect("closed tiling: every edge covered twice")
                })
                .collect()
        })
        .collect()
}

/// One census row: a quotient of a tiling by one sublattice, with the
/// symmetry data populated when the quotient is polyhedral.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientRecord {
    pub tiling: String,
    pub basis: SublatticeBasis,
    pub vertices: usize,
    pub polyhedral: bool,
    pub type_symbol: Option<String>,
    pub orbit_count: Option<usize>,
    pub vertex_transitive: Option<bool>,
}

impl QuotientRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.tiling,
            self.basis.a,
            self.basis.b,
            self.basis.d,
            self.basis.index(),
            self.vertices,
            self.polyhedral,
            self.type_symbol.as_deref().unwrap_or(""),
            self.orbit_count.map_or(String::new(), |n| n.to_string()),
            self.vertex_transitive
                .map_or(String::new(), |b| b.to_string()),
        )
    }
}

pub const CENSUS_CSV_HEADER: &str = "tiling,a,b,d,index,vertices,polyhedral,type,orbits,vt";

/// Default per-tiling census budget: chosen so the largest quotients stay
/// well under ten thousand flags while still containing every sharpness
/// witness.
pub fn default_census_budget(t: &TilingTemplate) -> i64 {
    match t.classes.len() {
        1..=4 => 16,
        5..=6 => 12,
        _ => 8,
    }
}

/// Evaluate one sublattice: construct the quotient and, when polyhedral,
/// its type and orbit structure.
pub fn quotient_record(t: &TilingTemplate, lat: &SublatticeBasis) -> QuotientRecord {
    let q = torus_quotient(t, lat);
    let polyhedral = q.is_polyhedral().is_polyhedral();
    let (type_symbol, orbit_count, vertex_transitive) = if polyhedral {
        let sym = crate::symbols::semi_equivelar_type(&q)
            .expect("polyhedral quotient is semi-equivelar");
        let orbits = crate::symmetry::vertex_orbits(&q);
        (
            Some(sym.to_string()),
            Some(orbits.orbit_count()),
            Some(orbits.orbit_count() == 1),
        )
    } else {
        (None, None, None)
    };
    QuotientRecord {
        tiling: t.id.to_string(),
        basis: *lat,
        vertices: q.num_vertices(),
        polyhedral,
        type_symbol,
        orbit_count,
        vertex_transitive,
    }
}

/// Full census of sublattices up to `max_index`, in enumeration order.
/// Rows are evaluated in parallel; the output order is fixed by the
/// enumeration, not by completion.
pub fn census(t: &TilingTemplate, max_index: i64) -> Vec<QuotientRecord> {
    use rayon::prelude::*;
    enumerate_sublattices(max_index)
        .par_iter()
        .map(|lat| quotient_record(t, lat))
        .collect()
}

/// First census record (in enumeration order) with exactly the requested
/// orbit count.
pub fn find_sharp_witness(
    t: &TilingTemplate,
    target_orbits: usize,
    max_index: i64,
) -> Option<QuotientRecord> {
    census(t, max_index)
        .into_iter()
        .find(|r| r.orbit_count == Some(target_orbits))
}

/// Smallest sublattice index whose quotient of `t` is polyhedral.
pub fn minimum_polyhedral_index(t: &TilingTemplate) -> Result<i64> {
    const CAP: i64 = 64;
    for lat in enumerate_sublattices(CAP) {
        let q = torus_quotient(t, &lat);
        if q.is_polyhedral().is_polyhedral() {
            return Ok(lat.index());
        }
    }
    Err(Error::SearchBudgetExceeded(CAP as usize))
}
