//! Auxiliary graphs on the vertices of a semi-equivelar torus map:
//! diagonal graphs of even faces and the nice-edge matching. Their cycle
//! structure, refined by neighbourhood signatures, yields certified
//! lower bounds on the number of automorphism orbits of vertices,
//! independently of the automorphism search.

use crate::error::{Error, Result};
use crate::mapcore::FlagMap;
use crate::symbols::semi_equivelar_type;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// A multigraph on the vertex ids of a map.
#[derive(Debug, Clone, Default)]
pub struct AuxGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl AuxGraph {
    fn merge(mut self, other: AuxGraph) -> AuxGraph {
        assert_eq!(self.n, other.n);
        self.edges.extend(other.edges);
        self.edges.sort_unstable();
        self
    }

    /// Incidence lists as (neighbour, edge index) pairs.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(|a| a.len()).collect()
    }

    pub fn is_two_regular(&self) -> bool {
        self.degrees().iter().all(|&d| d == 2)
    }

    /// Decompose a 2-regular multigraph into its cycles, each returned
    /// as the vertex sequence, starting from the smallest vertex.
    pub fn cycle_decomposition(&self) -> Vec<Vec<usize>> {
        assert!(self.is_two_regular(), "cycle decomposition needs 2-regularity");
        let adj = self.adjacency();
        let mut used = vec![false; self.edges.len()];
        let mut cycles = Vec::new();
        for start in 0..self.n {
            if adj[start].iter().all(|&(_, e)| used[e]) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            loop {
                cycle.push(v);
                let &(w, e) = adj[v]
                    .iter()
                    .find(|&&(_, e)| !used[e])
                    .expect("walk continues until closed");
                used[e] = true;
                v = w;
                if v == start && adj[v].iter().all(|&(_, e)| used[e]) {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Sorted multiset of cycle lengths.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycle_decomposition().iter().map(|c| c.len()).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Graphviz rendering (undirected).
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {name} {{");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

/// The diagonal graph of all faces of the given size: each 2m-gon
/// contributes the m chords joining corners at face-distance m; 4-gons
/// contribute both diagonals.
pub fn long_diagonal_graph(m: &FlagMap, face_size: usize) -> Result<AuxGraph> {
    if !matches!(face_size, 4 | 6 | 12) {
        return Err(Error::NoSuchFaceSize(face_size));
    }
    let mut edges = Vec::new();
    let mut seen = false;
    for g in 0..m.num_faces() {
        let corners = m.face_corners(g);
        if corners.len() != face_size {
            continue;
        }
        seen = true;
        let half = face_size / 2;
        for i in 0..half {
            let (u, v) = (corners[i], corners[i + half]);
            edges.push((u.min(v), u.max(v)));
        }
    }
    if !seen {
        return Err(Error::NoSuchFaceSize(face_size));
    }
    edges.sort_unstable();
    Ok(AuxGraph {
        n: m.num_vertices(),
        edges,
    })
}

/// Sizes of the five faces around `v`, fanned from one side of the edge
/// `e` to the other, together with the face ids.
fn fan_across(m: &FlagMap, start_flag: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut f = start_flag;
    loop {
        sizes.push(m.face_size(m.face_of(f)));
        let next = m.sigma(2, m.sigma(1, f));
        if m.edge_of(next) == m.edge_of(start_flag) {
            break;
        }
        f = next;
    }
    sizes
}

/// In a [3^4,6] map: edges at whose both endpoints the four triangles
/// split three against one across the edge — equivalently, fanning the
/// five faces from one side of the edge to the other, the hexagon sits
/// at the second or fourth position. These edges form a perfect
/// matching.
pub fn nice_edges(m: &FlagMap) -> Result<BTreeSet<(usize, usize)>> {
    let sym = semi_equivelar_type(m)?;
    if sym.to_string() != "3^4.6" {
        return Err(Error::WrongType {
            required: "3^4.6".into(),
            found: sym.to_string(),
        });
    }
    let nice_at = |flag: usize| -> bool {
        let sizes = fan_across(m, flag);
        debug_assert_eq!(sizes.len(), 5);
        let hex = sizes.iter().position(|&s| s == 6);
        matches!(hex, Some(1) | Some(3))
    };
    let mut out = BTreeSet::new();
    let mut flag_of_edge_end: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in 0..m.num_flags() {
        flag_of_edge_end.insert((m.edge_of(f), m.vertex_of(f)), f);
    }
    for (e, &(u, v)) in m.edge_endpoints().iter().enumerate() {
        let fu = flag_of_edge_end[&(e, u)];
        let fv = flag_of_edge_end[&(e, v)];
        if nice_at(fu) && nice_at(fv) {
            out.insert((u.min(v), u.max(v)));
        }
    }
    Ok(out)
}

/// The orbit-separation certificate: the auxiliary graph's cycle
/// decomposition plus the signature-refined colour classes.
#[derive(Debug, Clone)]
pub struct SeparatorCertificate {
    pub graph: AuxGraph,
    pub cycles: Vec<Vec<usize>>,
    /// Colour classes after refinement; unions of Aut-orbits, so their
    /// number bounds the orbit count from below.
    pub classes: Vec<Vec<usize>>,
    pub lower_bound: usize,
}

/// Build the type's auxiliary graph, decompose it into cycles, and
/// refine the cycle-length colouring by neighbourhood signatures.
/// Supported types: [3,6,3,6], [3^4,6], [3,4,6,4], [3,12^2], [4,6,12].
pub fn orbit_separator(m: &FlagMap) -> Result<SeparatorCertificate> {
    let sym = semi_equivelar_type(m)?.to_string();
    let graph = match sym.as_str() {
        "3.6.3.6" => long_diagonal_graph(m, 6)?,
        "3^4.6" => {
            let diag = long_diagonal_graph(m, 6)?;
            let nice = AuxGraph {
                n: m.num_vertices(),
                edges: nice_edges(m)?.into_iter().collect(),
            };
            diag.merge(nice)
        }
        "3.4.6.4" => long_diagonal_graph(m, 4)?,
        "3.12^2" => long_diagonal_graph(m, 12)?,
        "4.6.12" => {
            let d4 = long_diagonal_graph(m, 4)?;
            let d12 = long_diagonal_graph(m, 12)?;
            d4.merge(d12)
        }
        other => {
            return Err(Error::WrongType {
                required: "one of 3.6.3.6, 3^4.6, 3.4.6.4, 3.12^2, 4.6.12".into(),
                found: other.to_string(),
            })
        }
    };

    let cycles = graph.cycle_decomposition();
    let n = m.num_vertices();
    // initial colour: length of the vertex's auxiliary cycle
    let mut color = vec![0usize; n];
    for c in &cycles {
        for &v in c {
            color[v] = c.len();
        }
    }
    color = normalize_colors(&color);

    // Refine the colouring by invariants of the pair (map, auxiliary
    // graph). Torus quotients are locally homogeneous — every small ball
    // looks the same — so purely local signatures cannot separate
    // orbits; the profile below therefore uses global distances,
    // together with the link pattern that tells which colour pairs of a
    // vertex's neighbours are joined by an auxiliary edge. Every
    // ingredient is invariant under automorphisms, so the colour
    // classes stay unions of Aut-orbits and their number is a sound
    // lower bound for the orbit count.
    {
        let map_adj: Vec<Vec<usize>> = (0..n)
            .map(|v| m.neighbors_around_vertex(v).expect("closed map"))
            .collect();
        let mut comb_adj = map_adj.clone();
        for &(u, v) in &graph.edges {
            comb_adj[u].push(v);
            comb_adj[v].push(u);
        }
        let dist_map: Vec<Vec<usize>> = (0..n).map(|v| bfs(&map_adj, v)).collect();
        let dist_comb: Vec<Vec<usize>> = (0..n).map(|v| bfs(&comb_adj, v)).collect();
        let aux_edge_set: BTreeSet<(usize, usize)> = graph
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        loop {
            let sigs: Vec<_> = (0..n)
                .map(|v| {
                    // distance profile to every colour class
                    let mut profile: Vec<(usize, usize, usize)> = (0..n)
                        .map(|u| (color[u], dist_map[v][u], dist_comb[v][u]))
                        .collect();
                    profile.sort_unstable();
                    // colour pairs of neighbours joined by an auxiliary
                    // edge inside the link of v
                    let nb = &map_adj[v];
                    let mut linked: Vec<(usize, usize)> = Vec::new();
                    for i in 0..nb.len() {
                        for j in (i + 1)..nb.len() {
                            let key = (nb[i].min(nb[j]), nb[i].max(nb[j]));
                            if aux_edge_set.contains(&key) {
                                let (a, b) = (color[nb[i]], color[nb[j]]);
                                linked.push((a.min(b), a.max(b)));
                            }
                        }
                    }
                    linked.sort_unstable();
                    (color[v], profile, linked)
                })
                .collect();
            let mut distinct: Vec<_> = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<usize> = sigs
                .iter()
                .map(|s| distinct.binary_search(s).unwrap())
                .collect();
            let next = normalize_colors(&next);
            if next == color {
                break;
            }
            color = next;
        }
    }

    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in color.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let lower_bound = classes.len();
    Ok(SeparatorCertificate {
        graph,
        cycles,
        classes,
        lower_bound,
    })
}

fn bfs(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Renumber colours by first occurrence so iterations compare stably.
fn normalize_colors(color: &[usize]) -> Vec<usize> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    color
        .iter()
        .map(|&c| {
            let next = seen.len();
            *seen.entry(c).or_insert(next)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::{torus_quotient, SublatticeBasis};
    use crate::symmetry::{automorphism_group, vertex_orbits};
    use crate::tilings::{template, TilingId};

    fn quot(id: TilingId, a: i64, b: i64, d: i64) -> FlagMap {
        torus_quotient(template(id), &SublatticeBasis::new(a, b, d).unwrap())
    }

    #[test]
    fn hexagon_diagonals_two_regular() {
        let m = quot(TilingId::E6, 4, 0, 4);
        let g = long_diagonal_graph(&m, 6).unwrap();
        assert!(g.is_two_regular());
    }

    #[test]
    fn twelve_gon_diagonals_two_regular() {
        let m = quot(TilingId::E9, 3, 0, 3);
        let g = long_diagonal_graph(&m, 12).unwrap();
        assert!(g.is_two_regular());
    }

    #[test]
    fn square_diagonals_two_regular_on_3464() {
        let m = quot(TilingId::E8, 3, 0, 3);
        let g = long_diagonal_graph(&m, 4).unwrap();
        assert!(g.is_two_regular());
    }

    #[test]
    fn missing_face_size_rejected() {
        let m = quot(TilingId::E6, 4, 0, 4);
        assert!(matches!(
            long_diagonal_graph(&m, 12),
            Err(Error::NoSuchFaceSize(12))
        ));
        assert!(matches!(
            long_diagonal_graph(&m, 8),
            Err(Error::NoSuchFaceSize(8))
        ));
    }

    #[test]
    fn nice_edges_form_perfect_matching() {
        let m = quot(TilingId::E7, 2, 0, 2);
        let nice = nice_edges(&m).unwrap();
        assert_eq!(nice.len(), m.num_vertices() / 2);
        let mut covered = BTreeSet::new();
        for &(u, v) in &nice {
            assert!(covered.insert(u));
            assert!(covered.insert(v));
        }
        assert_eq!(covered.len(), m.num_vertices());
    }

    #[test]
    fn nice_edges_wrong_type() {
        let m = quot(TilingId::E1, 7, 4, 1);
        assert!(matches!(nice_edges(&m), Err(Error::WrongType { .. })));
    }

    #[test]
    fn separator_sound_on_small_quotients() {
        for (id, a, b, d) in [
            (TilingId::E6, 3, 0, 3),
            (TilingId::E7, 2, 0, 2),
            (TilingId::E8, 3, 0, 2),
            (TilingId::E9, 3, 0, 3),
            (TilingId::E10, 2, 0, 2),
        ] {
            let m = quot(id, a, b, d);
            assert!(m.is_polyhedral().is_polyhedral(), "{id}");
            let cert = orbit_separator(&m).unwrap();
            let exact = vertex_orbits(&m).orbit_count();
            assert!(
                cert.lower_bound <= exact,
                "{id}: bound {} > exact {exact}",
                cert.lower_bound
            );
        }
    }

    #[test]
    fn separator_wrong_type() {
        let m = quot(TilingId::E2, 3, 0, 3);
        assert!(matches!(orbit_separator(&m), Err(Error::WrongType { .. })));
    }

    #[test]
    fn aux_graph_is_aut_equivariant() {
        let m = quot(TilingId::E6, 3, 0, 3);
        let g = long_diagonal_graph(&m, 6).unwrap();
        let edge_set: BTreeSet<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        for aut in automorphism_group(&m) {
            let vp = aut.vertex_perm(&m);
            for &(u, v) in &edge_set {
                let (a, b) = (vp[u], vp[v]);
                assert!(edge_set.contains(&(a.min(b), a.max(b))));
            }
        }
    }

    #[test]
    fn vertex_transitive_case_gives_bound_one() {
        let m = quot(TilingId::E6, 2, 0, 2);
        if m.is_polyhedral().is_polyhedral() && vertex_orbits(&m).orbit_count() == 1 {
            let cert = orbit_separator(&m).unwrap();
            let lens: BTreeSet<usize> = cert.cycles.iter().map(|c| c.len()).collect();
            assert_eq!(lens.len(), 1);
            assert_eq!(cert.lower_bound, 1);
        }
    }

    #[test]
    fn dot_export_shape() {
        let m = quot(TilingId::E6, 3, 0, 3);
        let g = long_diagonal_graph(&m, 6).unwrap();
        let dot = g.to_dot("aux");
        assert!(dot.starts_with("graph aux {"));
        assert!(dot.contains(" -- "));
        assert!(dot.trim_end().ends_with('}'));
    }
}
