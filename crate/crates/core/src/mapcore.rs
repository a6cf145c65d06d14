//! Maps on surfaces as finite flag sets with three involutions.
//!
//! A flag is an incident (vertex, edge, face) triple. `sigma0` moves the
//! vertex along the edge, `sigma1` moves the edge around the vertex inside
//! the face, `sigma2` moves the face across the edge. Boundary edges are
//! encoded as `sigma2` fixed points. Vertices, edges and faces are the
//! orbits of the respective subgroups generated by two of the involutions.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Dense flag index, 0..F-1.
pub type Flag = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagMap {
    sigma: [Vec<Flag>; 3],
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
    face_of: Vec<usize>,
    /// Original vertex label per vertex orbit (input ids for maps built
    /// from face cycles; provenance labels for quotients and patches).
    vertex_labels: Vec<usize>,
    nv: usize,
    ne: usize,
    nf: usize,
}

fn orbits(n: usize, perms: &[&[Flag]]) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        id[start] = count;
        while let Some(f) = stack.pop() {
            for p in perms {
                let g = p[f];
                if id[g] == usize::MAX {
                    id[g] = count;
                    stack.push(g);
                }
            }
        }
        count += 1;
    }
    (id, count)
}

impl FlagMap {
    /// Build directly from the three involutions. `vertex_labels` gives the
    /// provenance label of each vertex orbit, in orbit order; pass an empty
    /// vec to use orbit indices as labels.
    pub fn from_involutions(
        sigma0: Vec<Flag>,
        sigma1: Vec<Flag>,
        sigma2: Vec<Flag>,
        vertex_labels: Vec<usize>,
    ) -> Result<FlagMap> {
        let n = sigma0.len();
        if sigma1.len() != n || sigma2.len() != n {
            return Err(Error::Io("involution length mismatch".into()));
        }
        let (vertex_of, nv) = orbits(n, &[&sigma1, &sigma2]);
        let (edge_of, ne) = orbits(n, &[&sigma0, &sigma2]);
        let (face_of, nf) = orbits(n, &[&sigma0, &sigma1]);
        let vertex_labels = if vertex_labels.is_empty() {
            (0..nv).collect()
        } else {
            vertex_labels
        };
        let m = FlagMap {
            sigma: [sigma0, sigma1, sigma2],
            vertex_of,
            edge_of,
            face_of,
            vertex_labels,
            nv,
            ne,
            nf,
        };
        m.check_involution_axioms()?;
        Ok(m)
    }

    fn check_involution_axioms(&self) -> Result<()> {
        let n = self.num_flags();
        for f in 0..n {
            for i in 0..3 {
                let g = self.sigma[i][f];
                if g >= n || self.sigma[i][g] != f {
                    return Err(Error::Io(format!("sigma{i} is not an involution")));
                }
            }
            if self.sigma[0][f] == f || self.sigma[1][f] == f {
                return Err(Error::Io("sigma0/sigma1 must be fixed-point free".into()));
            }
            // (sigma0 sigma2)^2 = id
            let g = self.sigma[2][self.sigma[0][self.sigma[2][self.sigma[0][f]]]];
            if g != f {
                return Err(Error::Io("(sigma0 sigma2)^2 != id".into()));
            }
            if !self.is_boundary_flag(f) && self.sigma[2][self.sigma[0][f]] == f {
                return Err(Error::Io("sigma0 sigma2 fixes an interior flag".into()));
            }
        }
        Ok(())
    }

    /// Build from face cycles given as vertex-id cycles. Edges occurring in
    /// exactly one cycle become boundary.
    pub fn build_from_faces(faces: &[Vec<usize>]) -> Result<FlagMap> {
        let mut max_v = 0usize;
        for cycle in faces {
            if cycle.len() < 3 {
                return Err(Error::DegenerateFace(format!(
                    "cycle of length {} (need >= 3)",
                    cycle.len()
                )));
            }
            for k in 0..cycle.len() {
                let a = cycle[k];
                let b = cycle[(k + 1) % cycle.len()];
                if a == b {
                    return Err(Error::DegenerateFace(format!(
                        "immediate repeat of vertex {a}"
                    )));
                }
                max_v = max_v.max(a).max(b);
            }
        }
        let n_labels = if faces.is_empty() { 0 } else { max_v + 1 };
        let mut seen = vec![false; n_labels];

        // flag ids: per face, slot k gets flags base+2k (vertex c_k) and
        // base+2k+1 (vertex c_{k+1})
        let total: usize = faces.iter().map(|c| 2 * c.len()).sum();
        let mut s0 = vec![0; total];
        let mut s1 = vec![0; total];
        let mut s2: Vec<Flag> = (0..total).collect();
        let mut flag_vertex = vec![0usize; total];
        // edge (a,b) -> list of (flag with vertex a, flag with vertex b)
        let mut edge_slots: HashMap<(usize, usize), Vec<(Flag, Flag)>> = HashMap::new();

        let mut base = 0;
        for cycle in faces {
            let p = cycle.len();
            for k in 0..p {
                let a = cycle[k];
                let b = cycle[(k + 1) % p];
                seen[a] = true;
                let f0 = base + 2 * k;
                let f1 = base + 2 * k + 1;
                s0[f0] = f1;
                s0[f1] = f0;
                flag_vertex[f0] = a;
                flag_vertex[f1] = b;
                // sigma1 pairs (k,0) with (k-1,1): both at vertex c_k
                let prev1 = base + 2 * ((k + p - 1) % p) + 1;
                s1[f0] = prev1;
                s1[prev1] = f0;
                let key = (a.min(b), a.max(b));
                let entry = (if a < b { (f0, f1) } else { (f1, f0) },);
                let slots = edge_slots.entry(key).or_default();
                if slots.len() >= 2 {
                    return Err(Error::EdgeUsedThrice(key.0, key.1));
                }
                slots.push(entry.0);
            }
            base += 2 * p;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidVertexIds(format!(
                "vertex id {missing} unused"
            )));
        }
        for slots in edge_slots.values() {
            if slots.len() == 2 {
                let (a0, b0) = slots[0];
                let (a1, b1) = slots[1];
                s2[a0] = a1;
                s2[a1] = a0;
                s2[b0] = b1;
                s2[b1] = b0;
            }
        }

        let mut m = FlagMap::from_involutions(s0, s1, s2, Vec::new())?;
        // label each vertex orbit by the input id of any of its flags
        let mut labels = vec![usize::MAX; m.nv];
        for f in 0..m.num_flags() {
            labels[m.vertex_of[f]] = flag_vertex[f];
        }
        m.vertex_labels = labels;
        Ok(m)
    }

    pub fn num_flags(&self) -> usize {
        self.sigma[0].len()
    }
    pub fn num_vertices(&self) -> usize {
        self.nv
    }
    pub fn num_edges(&self) -> usize {
        self.ne
    }
    pub fn num_faces(&self) -> usize {
        self.nf
    }
    pub fn sigma(&self, i: usize, f: Flag) -> Flag {
        self.sigma[i][f]
    }
    pub fn vertex_of(&self, f: Flag) -> usize {
        self.vertex_of[f]
    }
    pub fn edge_of(&self, f: Flag) -> usize {
        self.edge_of[f]
    }
    pub fn face_of(&self, f: Flag) -> usize {
        self.face_of[f]
    }
    pub fn vertex_label(&self, v: usize) -> usize {
        self.vertex_labels[v]
    }

    /// Replace the provenance labels of the vertex orbits.
    pub fn relabel_vertices(mut m: FlagMap, labels: Vec<usize>) -> FlagMap {
        assert_eq!(labels.len(), m.nv);
        m.vertex_labels = labels;
        m
    }

    pub fn is_boundary_flag(&self, f: Flag) -> bool {
        self.sigma[2][f] == f
    }
    pub fn has_boundary(&self) -> bool {
        (0..self.num_flags()).any(|f| self.is_boundary_flag(f))
    }
    pub fn is_closed(&self) -> bool {
        !self.has_boundary()
    }

    /// A vertex is interior when none of its flags lies on the boundary.
    pub fn is_interior_vertex(&self, v: usize) -> bool {
        (0..self.num_flags()).all(|f| self.vertex_of[f] != v || !self.is_boundary_flag(f))
    }

    pub fn is_connected(&self) -> bool {
        if self.num_flags() == 0 {
            return true;
        }
        let refs: Vec<&[Flag]> = self.sigma.iter().map(|s| s.as_slice()).collect();
        let (_, count) = orbits(self.num_flags(), &refs);
        count == 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.nv as i64 - self.ne as i64 + self.nf as i64
    }

    /// One representative flag per face, ordered by face id.
    fn face_reps(&self) -> Vec<Flag> {
        let mut reps = vec![usize::MAX; self.nf];
        for f in (0..self.num_flags()).rev() {
            reps[self.face_of[f]] = f;
        }
        reps
    }

    /// Corner sequence of a face as vertex orbit ids, starting at the
    /// smallest flag of the face.
    pub fn face_corners(&self, face: usize) -> Vec<usize> {
        let start = self.face_reps()[face];
        self.face_corners_from(start)
    }

    fn face_corners_from(&self, start: Flag) -> Vec<usize> {
        let mut corners = Vec::new();
        let mut f = start;
        loop {
            corners.push(self.vertex_of[f]);
            f = self.sigma[1][self.sigma[0][f]];
            if f == start {
                break;
            }
        }
        corners
    }

    pub fn face_size(&self, face: usize) -> usize {
        self.face_corners(face).len()
    }

    /// All faces as cycles of vertex labels.
    pub fn faces_as_label_cycles(&self) -> Vec<Vec<usize>> {
        (0..self.nf)
            .map(|g| {
                self.face_corners(g)
                    .into_iter()
                    .map(|v| self.vertex_labels[v])
                    .collect()
            })
            .collect()
    }

    /// Faces around an interior vertex in rotation order, as face ids.
    pub fn faces_around_vertex(&self, v: usize) -> Result<Vec<usize>> {
        if !self.is_interior_vertex(v) {
            return Err(Error::BoundaryVertex(self.vertex_labels[v]));
        }
        let start = (0..self.num_flags())
            .find(|&f| self.vertex_of[f] == v)
            .expect("vertex has flags");
        let mut faces = Vec::new();
        let mut f = start;
        loop {
            faces.push(self.face_of[f]);
            f = self.sigma[1][self.sigma[2][f]];
            if f == start {
                break;
            }
        }
        Ok(faces)
    }

    /// Cyclic sequence of face sizes around an interior vertex, starting at
    /// the smallest incident face id, direction chosen so the next face id
    /// is minimal.
    pub fn face_cycle(&self, v: usize) -> Result<Vec<usize>> {
        let faces = self.faces_around_vertex(v)?;
        let d = faces.len();
        let imin = (0..d).min_by_key(|&i| faces[i]).unwrap();
        let fwd = faces[(imin + 1) % d];
        let bwd = faces[(imin + d - 1) % d];
        let ordered: Vec<usize> = if fwd <= bwd {
            (0..d).map(|i| faces[(imin + i) % d]).collect()
        } else {
            (0..d).map(|i| faces[(imin + d - i) % d]).collect()
        };
        Ok(ordered.into_iter().map(|g| self.face_size(g)).collect())
    }

    /// Neighbours of a vertex in rotation order (interior vertices only).
    pub fn neighbors_around_vertex(&self, v: usize) -> Result<Vec<usize>> {
        if !self.is_interior_vertex(v) {
            return Err(Error::BoundaryVertex(self.vertex_labels[v]));
        }
        let start = (0..self.num_flags())
            .find(|&f| self.vertex_of[f] == v)
            .expect("vertex has flags");
        let mut nbrs = Vec::new();
        let mut f = start;
        loop {
            nbrs.push(self.vertex_of[self.sigma[0][f]]);
            f = self.sigma[1][self.sigma[2][f]];
            if f == start {
                break;
            }
        }
        Ok(nbrs)
    }

    /// Endpoint vertex ids of every edge.
    pub fn edge_endpoints(&self) -> Vec<(usize, usize)> {
        let mut eps = vec![(usize::MAX, usize::MAX); self.ne];
        for f in 0..self.num_flags() {
            let e = self.edge_of[f];
            let (a, b) = (self.vertex_of[f], self.vertex_of[self.sigma[0][f]]);
            eps[e] = (a.min(b), a.max(b));
        }
        eps
    }

    /// Swap the roles of sigma0 and sigma2; vertices of the dual are the
    /// faces of the original map.
    pub fn dual(&self) -> Result<FlagMap> {
        if self.has_boundary() {
            return Err(Error::BoundaryNotSupported);
        }
        FlagMap::from_involutions(
            self.sigma[2].clone(),
            self.sigma[1].clone(),
            self.sigma[0].clone(),
            Vec::new(),
        )
    }

    pub fn is_polyhedral(&self) -> PolyhedralReport {
        // (a) every face boundary is a simple cycle
        for g in 0..self.nf {
            let corners = self.face_corners(g);
            let mut sorted = corners.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != corners.len() {
                return PolyhedralReport::fail(PolyhedralViolation::NonSimpleFaceBoundary {
                    face: g,
                });
            }
        }
        // (b) the 1-skeleton is a simple graph
        let eps = self.edge_endpoints();
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (e, &(a, b)) in eps.iter().enumerate() {
            if a == b {
                return PolyhedralReport::fail(PolyhedralViolation::LoopEdge { edge: e });
            }
            if let Some(&prev) = seen.get(&(a, b)) {
                return PolyhedralReport::fail(PolyhedralViolation::ParallelEdges {
                    edges: (prev, e),
                });
            }
            seen.insert((a, b), e);
        }
        // (c) two distinct faces share nothing, one vertex, or one edge
        let mut face_verts: Vec<Vec<usize>> = Vec::with_capacity(self.nf);
        let mut face_edges: Vec<Vec<usize>> = vec![Vec::new(); self.nf];
        for g in 0..self.nf {
            let mut vs = self.face_corners(g);
            vs.sort_unstable();
            face_verts.push(vs);
        }
        for f in 0..self.num_flags() {
            face_edges[self.face_of[f]].push(self.edge_of[f]);
        }
        for es in face_edges.iter_mut() {
            es.sort_unstable();
            es.dedup();
        }
        for g1 in 0..self.nf {
            for g2 in (g1 + 1)..self.nf {
                let shared_v = intersect_count(&face_verts[g1], &face_verts[g2]);
                let shared_e = intersect_count(&face_edges[g1], &face_edges[g2]);
                let ok = match (shared_v, shared_e) {
                    (0, 0) | (1, 0) | (2, 1) => true,
                    _ => false,
                };
                if !ok {
                    return PolyhedralReport::fail(PolyhedralViolation::BadFacePair {
                        faces: (g1, g2),
                        shared_vertices: shared_v,
                        shared_edges: shared_e,
                    });
                }
            }
        }
        PolyhedralReport { violation: None }
    }

    /// JSON interchange form with faces in deterministic order.
    pub fn to_json(&self) -> MapJson {
        let mut faces: Vec<Vec<usize>> = self
            .faces_as_label_cycles()
            .into_iter()
            .map(canonical_cycle)
            .collect();
        faces.sort();
        let vertices = self.vertex_labels.iter().copied().max().map_or(0, |m| m + 1);
        MapJson {
            vertices,
            faces,
            interior: None,
        }
    }

    pub fn from_json(j: &MapJson) -> Result<FlagMap> {
        let m = FlagMap::build_from_faces(&j.faces)?;
        Ok(m)
    }
}

fn intersect_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Lexicographically least rotation over both directions of a cycle.
pub fn canonical_cycle(cycle: Vec<usize>) -> Vec<usize> {
    let n = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for rev in [false, true] {
        let seq: Vec<usize> = if rev {
            cycle.iter().rev().copied().collect()
        } else {
            cycle.clone()
        };
        for s in 0..n {
            let cand: Vec<usize> = (0..n).map(|i| seq[(s + i) % n]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyhedralViolation {
    NonSimpleFaceBoundary { face: usize },
    LoopEdge { edge: usize },
    ParallelEdges { edges: (usize, usize) },
    BadFacePair {
        faces: (usize, usize),
        shared_vertices: usize,
        shared_edges: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralReport {
    pub violation: Option<PolyhedralViolation>,
}

impl PolyhedralReport {
    fn fail(v: PolyhedralViolation) -> Self {
        PolyhedralReport { violation: Some(v) }
    }
    pub fn is_polyhedral(&self) -> bool {
        self.violation.is_none()
    }
}

/// Interchange format for all CLI subcommands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapJson {
    pub vertices: usize,
    pub faces: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior: Option<Vec<usize>>,
}

impl MapJson {
    pub fn new(vertices: usize, faces: Vec<Vec<usize>>) -> Self {
        MapJson {
            vertices,
            faces,
            interior: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triangle_disk() {
        let m = FlagMap::build_from_faces(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(m.num_faces(), 1);
        assert_eq!(m.num_vertices(), 3);
        assert_eq!(m.num_edges(), 3);
        assert_eq!(m.euler_characteristic(), 1);
        assert!(m.has_boundary());
        assert!(m.is_polyhedral().is_polyhedral());
        // all 3 edges are boundary
        let boundary_edges: std::collections::HashSet<_> = (0..m.num_flags())
            .filter(|&f| m.is_boundary_flag(f))
            .map(|f| m.edge_of(f))
            .collect();
        assert_eq!(boundary_edges.len(), 3);
    }

    #[test]
    fn two_triangles_share_edge() {
        let m = FlagMap::build_from_faces(&[vec![0, 1, 2], vec![0, 2, 3]]).unwrap();
        assert_eq!(m.num_faces(), 2);
        assert_eq!(m.num_vertices(), 4);
        assert_eq!(m.num_edges(), 5);
        assert_eq!(m.euler_characteristic(), 1);
    }

    #[test]
    fn edge_used_thrice_rejected() {
        let err = FlagMap::build_from_faces(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]])
            .unwrap_err();
        assert!(matches!(err, Error::EdgeUsedThrice(0, 1)));
    }

    #[test]
    fn degenerate_faces_rejected() {
        assert!(matches!(
            FlagMap::build_from_faces(&[vec![0, 1]]),
            Err(Error::DegenerateFace(_))
        ));
        assert!(matches!(
            FlagMap::build_from_faces(&[vec![0, 1, 1, 2]]),
            Err(Error::DegenerateFace(_))
        ));
    }

    #[test]
    fn faces_read_back_up_to_rotation() {
        let input = vec![vec![0, 1, 2, 3], vec![0, 3, 4]];
        let m = FlagMap::build_from_faces(&input).unwrap();
        let mut got: Vec<Vec<usize>> = m
            .faces_as_label_cycles()
            .into_iter()
            .map(canonical_cycle)
            .collect();
        got.sort();
        let mut want: Vec<Vec<usize>> = input.into_iter().map(canonical_cycle).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn tetrahedron_is_closed_and_polyhedral() {
        let m = FlagMap::build_from_faces(&[
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 1],
            vec![1, 3, 2],
        ])
        .unwrap();
        assert!(m.is_closed());
        assert_eq!(m.euler_characteristic(), 2);
        assert!(m.is_polyhedral().is_polyhedral());
        assert!(m.is_connected());
        let cycle = m.face_cycle(0).unwrap();
        assert_eq!(cycle, vec![3, 3, 3]);
    }

    #[test]
    fn dual_requires_closed() {
        let disk = FlagMap::build_from_faces(&[vec![0, 1, 2]]).unwrap();
        assert!(matches!(disk.dual(), Err(Error::BoundaryNotSupported)));
        let tet = FlagMap::build_from_faces(&[
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 1],
            vec![1, 3, 2],
        ])
        .unwrap();
        let d = tet.dual().unwrap();
        assert_eq!(d.num_vertices(), tet.num_faces());
        assert_eq!(d.num_faces(), tet.num_vertices());
    }
}
