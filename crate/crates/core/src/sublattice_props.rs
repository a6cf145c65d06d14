//! The marked-subset machinery on the triangular tiling: the
//! unique-neighbour property, the fourteen distinguished subsets, and
//! the deletion construction that turns a triangulation into a snub
//! hexagonal map (and back).

use crate::error::{Error, Result};
use crate::mapcore::FlagMap;
use crate::quotients::SublatticeBasis;
use crate::tilings::{snub_residue, Patch, TilingId};
use std::collections::{BTreeMap, BTreeSet};

/// A vertex subset of a triangular-tiling host (an E1 patch or an E1
/// quotient), stored as vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSubset {
    pub name: String,
    pub members: BTreeSet<usize>,
}

/// The index-7 sublattice of E1 vertices with x = 4y (mod 7).
pub fn lambda7() -> SublatticeBasis {
    SublatticeBasis::new(7, 4, 1).unwrap()
}

/// Members of the distinguished subset on an E1 patch: vertices whose
/// plane coordinates satisfy x - 4y = 0 (mod 7).
pub fn u0_members_patch(p: &Patch) -> Result<MarkedSubset> {
    if p.tiling != TilingId::E1 {
        return Err(Error::WrongHost(format!(
            "expected an E1 patch, got {}",
            p.tiling
        )));
    }
    let members = p
        .coords
        .iter()
        .enumerate()
        .filter(|&(_, &(_, x, y))| snub_residue(x as i64, y as i64) == 0)
        .map(|(label, _)| label)
        .collect();
    Ok(MarkedSubset {
        name: "U0".into(),
        members,
    })
}

/// Members of the distinguished subset on an E1 quotient: the lattice
/// must refine the index-7 sublattice, otherwise the subset is not
/// well-defined downstairs.
pub fn u0_members_quotient(tiling: TilingId, lat: &SublatticeBasis) -> Result<MarkedSubset> {
    if tiling != TilingId::E1 {
        return Err(Error::WrongHost(format!(
            "expected an E1 quotient, got {tiling}"
        )));
    }
    if !lambda7().contains_lattice(lat) {
        return Err(Error::WrongHost(format!(
            "lattice {lat:?} is not contained in the index-7 sublattice"
        )));
    }
    // quotient vertex labels are residue_index(i, j); membership is a
    // residue condition, invariant under the (finer) lattice
    let members = lat
        .residues()
        .filter(|&(i, j)| snub_residue(i, j) == 0)
        .map(|(i, j)| lat.residue_index(i, j))
        .collect();
    Ok(MarkedSubset {
        name: "U0".into(),
        members,
    })
}

fn orbit_of_label(m: &FlagMap) -> BTreeMap<usize, usize> {
    (0..m.num_vertices())
        .map(|v| (m.vertex_label(v), v))
        .collect()
}

/// Every interior non-member vertex has exactly one member neighbour,
/// and no interior member has a member neighbour. On closed maps every
/// vertex is interior, so the property is checked everywhere.
pub fn unique_neighbor_property(m: &FlagMap, s: &MarkedSubset) -> bool {
    let by_label = orbit_of_label(m);
    for (&label, &v) in &by_label {
        if !m.is_interior_vertex(v) {
            continue;
        }
        let nbrs = m.neighbors_around_vertex(v).expect("interior vertex");
        let member_nbrs = nbrs
            .iter()
            .filter(|&&u| s.members.contains(&m.vertex_label(u)))
            .count();
        let want = if s.members.contains(&label) { 0 } else { 1 };
        if member_nbrs != want {
            return false;
        }
    }
    true
}

/// The fourteen distinguished subsets on an E1 patch: the seven
/// translates {x - 4y = i (mod 7)} and their images under the
/// reflection u_{x,y} -> u_{x+y,-y}, which are {x - 2y = i (mod 7)}.
pub fn fourteen_sets(p: &Patch) -> Result<Vec<MarkedSubset>> {
    if p.tiling != TilingId::E1 {
        return Err(Error::WrongHost(format!(
            "expected an E1 patch, got {}",
            p.tiling
        )));
    }
    let mut out = Vec::with_capacity(14);
    for (mult, tag) in [(4i64, "U"), (2i64, "bU")] {
        for i in 0..7i64 {
            let members = p
                .coords
                .iter()
                .enumerate()
                .filter(|&(_, &(_, x, y))| (x as i64 - mult * y as i64).rem_euclid(7) == i)
                .map(|(label, _)| label)
                .collect();
            out.push(MarkedSubset {
                name: format!("{tag}{i}"),
                members,
            });
        }
    }
    Ok(out)
}

/// Delete every member vertex of a triangulation together with its
/// edges; the hole left by each member becomes a hexagon (the member's
/// link). Requires the unique-neighbour property, and produces a map of
/// type [3^4,6]. Vertex labels of the result are indices into the
/// sorted list of surviving input labels.
pub fn delete_centers(m: &FlagMap, s: &MarkedSubset) -> Result<FlagMap> {
    let sym = crate::symbols::semi_equivelar_type(m)?;
    if sym.to_string() != "3^6" {
        return Err(Error::WrongType {
            required: "3^6".into(),
            found: sym.to_string(),
        });
    }
    if !unique_neighbor_property(m, s) {
        return Err(Error::PropertyFails);
    }
    let member_orbits: BTreeSet<usize> = (0..m.num_vertices())
        .filter(|&v| s.members.contains(&m.vertex_label(v)))
        .collect();
    // compact the surviving labels
    let survivors: Vec<usize> = (0..m.num_vertices())
        .filter(|v| !member_orbits.contains(v))
        .map(|v| m.vertex_label(v))
        .collect();
    let mut sorted = survivors.clone();
    sorted.sort_unstable();
    let new_id = |label: usize| sorted.binary_search(&label).expect("surviving label");

    let mut faces: Vec<Vec<usize>> = Vec::new();
    for g in 0..m.num_faces() {
        let corners = m.face_corners(g);
        if corners.iter().all(|v| !member_orbits.contains(v)) {
            faces.push(corners.iter().map(|&v| new_id(m.vertex_label(v))).collect());
        }
    }
    for &v in &member_orbits {
        let link = m.neighbors_around_vertex(v)?;
        faces.push(link.iter().map(|&u| new_id(m.vertex_label(u))).collect());
    }
    FlagMap::build_from_faces(&faces)
}

/// Inverse of `delete_centers`: put a fresh vertex at the centre of
/// every hexagon and cone it to the six corners; triangles pass through
/// unchanged.
pub fn reinsert_centers(m: &FlagMap) -> Result<FlagMap> {
    let sym = crate::symbols::semi_equivelar_type(m)?;
    if sym.to_string() != "3^4.6" {
        return Err(Error::WrongType {
            required: "3^4.6".into(),
            found: sym.to_string(),
        });
    }
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut next = m.num_vertices();
    for g in 0..m.num_faces() {
        let corners = m.face_corners(g);
        if corners.len() == 3 {
            faces.push(corners);
        } else {
            let center = next;
            next += 1;
            for k in 0..corners.len() {
                faces.push(vec![center, corners[k], corners[(k + 1) % corners.len()]]);
            }
        }
    }
    FlagMap::build_from_faces(&faces)
}
