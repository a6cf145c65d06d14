//! Automorphism groups, map isomorphism and vertex orbits, all by
//! flag-extension search: an automorphism of a connected map is
//! determined by the image of a single flag, so trying every image of a
//! fixed base flag enumerates the whole group in O(F^2).

use crate::mapcore::{Flag, FlagMap};

/// A flag permutation commuting with all three involutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    pub flag_perm: Vec<Flag>,
}

impl Automorphism {
    pub fn is_identity(&self) -> bool {
        self.flag_perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Induced permutation of vertex ids.
    pub fn vertex_perm(&self, m: &FlagMap) -> Vec<usize> {
        let mut p = vec![usize::MAX; m.num_vertices()];
        for (f, &g) in self.flag_perm.iter().enumerate() {
            p[m.vertex_of(f)] = m.vertex_of(g);
        }
        p
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            flag_perm: self.flag_perm.iter().map(|&f| other.flag_perm[f]).collect(),
        }
    }
}

/// Extend base_flag -> image to a full flag bijection from `src` to
/// `dst` commuting with the involutions. Boundary flags of `src` must
/// stay boundary in `dst` (automatic from the sigma2 commutation).
fn extend(src: &FlagMap, dst: &FlagMap, base: Flag, image: Flag) -> Option<Vec<Flag>> {
    let n = src.num_flags();
    if dst.num_flags() != n {
        return None;
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    perm[base] = image;
    used[image] = true;
    let mut queue = vec![base];
    while let Some(f) = queue.pop() {
        for i in 0..3 {
            let g = src.sigma(i, f);
            let h = dst.sigma(i, perm[f]);
            if perm[g] == usize::MAX {
                if used[h] {
                    return None;
                }
                perm[g] = h;
                used[h] = true;
                queue.push(g);
            } else if perm[g] != h {
                return None;
            }
        }
    }
    if perm.contains(&usize::MAX) {
        return None; // src not connected; cannot certify
    }
    Some(perm)
}

/// The full automorphism group, one permutation per element.
pub fn automorphism_group(m: &FlagMap) -> Vec<Automorphism> {
    let n = m.num_flags();
    if n == 0 {
        return vec![Automorphism { flag_perm: vec![] }];
    }
    (0..n)
        .filter_map(|image| extend(m, m, 0, image))
        .map(|flag_perm| Automorphism { flag_perm })
        .collect()
}

#[derive(Debug, Clone)]
pub struct OrbitPartition {
    /// Sorted vertex-id classes, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    pub group_order: usize,
}

impl OrbitPartition {
    pub fn orbit_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(|c| c.len()).collect();
        s.sort_unstable();
        s
    }
}

/// Orbits of the vertex set under the full automorphism group.
pub fn vertex_orbits(m: &FlagMap) -> OrbitPartition {
    let group = automorphism_group(m);
    let nv = m.num_vertices();
    let mut repr: Vec<usize> = (0..nv).collect();
    fn find(repr: &mut Vec<usize>, v: usize) -> usize {
        if repr[v] != v {
            let r = find(repr, repr[v]);
            repr[v] = r;
        }
        repr[v]
    }
    for aut in &group {
        let vp = aut.vertex_perm(m);
        for v in 0..nv {
            let (a, b) = (find(&mut repr, v), find(&mut repr, vp[v]));
            if a != b {
                repr[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; nv];
    for v in 0..nv {
        let r = find(&mut repr, v);
        if class_of[r] == usize::MAX {
            class_of[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of[r]].push(v);
    }
    OrbitPartition {
        classes,
        group_order: group.len(),
    }
}

pub fn is_vertex_transitive(m: &FlagMap) -> bool {
    vertex_orbits(m).orbit_count() == 1
}

/// Decide isomorphism; on success returns a witness flag bijection
/// m1 -> m2 commuting with all three involutions.
pub fn isomorphic(m1: &FlagMap, m2: &FlagMap) -> Option<Vec<Flag>> {
    if m1.num_flags() != m2.num_flags()
        || m1.num_vertices() != m2.num_vertices()
        || m1.num_edges() != m2.num_edges()
        || m1.num_faces() != m2.num_faces()
    {
        return None;
    }
    if m1.num_flags() == 0 {
        return Some(vec![]);
    }
    (0..m2.num_flags()).find_map(|image| extend(m1, m2, 0, image))
}

/// Injective flag morphism from a bordered map into a host: commutes
/// with sigma0 and sigma1 everywhere, and with sigma2 on the
/// non-boundary flags of `small`. Boundary flags of `small` may land
/// anywhere. Returns the flag injection if one exists.
pub fn embed_bordered(small: &FlagMap, big: &FlagMap) -> Option<Vec<Flag>> {
    let n = small.num_flags();
    if n == 0 {
        return Some(vec![]);
    }
    let nb = big.num_flags();
    'cand: for image in 0..nb {
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; nb];
        perm[0] = image;
        used[image] = true;
        let mut queue = vec![0usize];
        while let Some(f) = queue.pop() {
            for i in 0..3 {
                if i == 2 && small.is_boundary_flag(f) {
                    continue;
                }
                let g = small.sigma(i, f);
                let h = big.sigma(i, perm[f]);
                if perm[g] == usize::MAX {
                    if used[h] {
                        continue 'cand;
                    }
                    perm[g] = h;
                    used[h] = true;
                    queue.push(g);
                } else if perm[g] != h {
                    continue 'cand;
                }
            }
        }
        if perm.contains(&usize::MAX) {
            continue; // small map disconnected away from its boundary
        }
        return Some(perm);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotients::{torus_quotient, SublatticeBasis};
    use crate::tilings::{patch, template, TilingId};

    fn e2_quotient(a: i64, b: i64, d: i64) -> FlagMap {
        torus_quotient(
            template(TilingId::E2),
            &SublatticeBasis::new(a, b, d).unwrap(),
        )
    }

    #[test]
    fn square_3x3_group_order_72() {
        let q = e2_quotient(3, 0, 3);
        let group = automorphism_group(&q);
        assert_eq!(group.len(), 72);
        assert!(group.iter().any(|g| g.is_identity()));
        assert!(is_vertex_transitive(&q));
    }

    #[test]
    fn group_elements_commute_with_involutions() {
        let q = e2_quotient(3, 1, 2);
        for aut in automorphism_group(&q) {
            for f in 0..q.num_flags() {
                for i in 0..3 {
                    assert_eq!(
                        aut.flag_perm[q.sigma(i, f)],
                        q.sigma(i, aut.flag_perm[f])
                    );
                }
            }
        }
    }

    #[test]
    fn group_closed_under_composition() {
        let q = e2_quotient(2, 1, 2);
        let group = automorphism_group(&q);
        for a in group.iter().take(6) {
            for b in group.iter().take(6) {
                let c = a.compose(b);
                assert!(group.contains(&c));
            }
        }
    }

    #[test]
    fn seven_vertex_triangulation_vertex_transitive() {
        let q = torus_quotient(
            template(TilingId::E1),
            &SublatticeBasis::new(7, 4, 1).unwrap(),
        );
        let orbits = vertex_orbits(&q);
        assert_eq!(orbits.orbit_count(), 1);
        assert_eq!(orbits.group_order % 7, 0);
    }

    #[test]
    fn rectangle_quotients_isomorphic() {
        let m1 = e2_quotient(2, 0, 3);
        let m2 = e2_quotient(3, 0, 2);
        let w = isomorphic(&m1, &m2).expect("2x3 and 3x2 tori are the same map");
        for f in 0..m1.num_flags() {
            for i in 0..3 {
                assert_eq!(w[m1.sigma(i, f)], m2.sigma(i, w[f]));
            }
        }
        assert!(isomorphic(&m1, &m1).is_some());
    }

    #[test]
    fn skew_line_quotient_vs_rectangle() {
        // 6x1 cylinder-like torus against 3x2: different maps
        let m1 = e2_quotient(6, 0, 1);
        let m2 = e2_quotient(3, 0, 2);
        assert!(isomorphic(&m1, &m2).is_none());
    }

    #[test]
    fn orbit_multisets_are_isomorphism_invariant() {
        let m1 = e2_quotient(2, 0, 3);
        let m2 = e2_quotient(3, 0, 2);
        assert_eq!(
            vertex_orbits(&m1).class_sizes(),
            vertex_orbits(&m2).class_sizes()
        );
    }

    #[test]
    fn patch_embeds_in_larger_patch() {
        let small = patch(template(TilingId::E5), 1);
        let big = patch(template(TilingId::E5), 3);
        let inj = embed_bordered(&small.map, &big.map).expect("radius-1 fits in radius-3");
        // injective and sigma0/sigma1-equivariant everywhere
        let mut seen = std::collections::HashSet::new();
        for f in 0..small.map.num_flags() {
            assert!(seen.insert(inj[f]));
            for i in 0..2 {
                assert_eq!(inj[small.map.sigma(i, f)], big.map.sigma(i, inj[f]));
            }
            if !small.map.is_boundary_flag(f) {
                assert_eq!(inj[small.map.sigma(2, f)], big.map.sigma(2, inj[f]));
            }
        }
    }

    #[test]
    fn mismatched_patches_do_not_embed() {
        let small = patch(template(TilingId::E1), 1);
        let big = patch(template(TilingId::E2), 3);
        assert!(embed_bordered(&small.map, &big.map).is_none());
    }
}
