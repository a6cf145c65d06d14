//! Deterministic local growth: starting from one edge with its two
//! incident faces, repeatedly complete the face cycle of every boundary
//! vertex whose completion is forced by the vertex symbol. Choice
//! points (more than one locally consistent completion) are logged and
//! both options are explored, so the result is the full set of grown
//! patches together with a branch log.

use crate::error::{Error, Result};
use crate::mapcore::FlagMap;
use crate::symbols::VertexSymbol;
use crate::symmetry::embed_bordered;
use crate::tilings::{patch, template, ALL_TILINGS};

/// One explored choice point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchEvent {
    pub vertex: usize,
    pub choices: usize,
    pub taken: usize,
}

/// A grown patch: its faces as vertex cycles, the bordered map, and the
/// branch decisions that led to it.
#[derive(Debug, Clone)]
pub struct GrowthOutcome {
    pub faces: Vec<Vec<usize>>,
    pub map: FlagMap,
    pub branch_log: Vec<BranchEvent>,
}

/// All distinct cyclic arrangements (rotations of the word and of its
/// reversal) of the flat symbol.
fn dihedral_arrangements(flat: &[usize]) -> Vec<Vec<usize>> {
    let q = flat.len();
    let mut out = Vec::new();
    for rev in [false, true] {
        let seq: Vec<usize> = if rev {
            flat.iter().rev().copied().collect()
        } else {
            flat.to_vec()
        };
        for s in 0..q {
            let w: Vec<usize> = (0..q).map(|i| seq[(s + i) % q]).collect();
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

/// Distinct ways to extend the contiguous arc of face sizes around a
/// vertex to the full cyclic symbol; each result is the sequence of
/// missing face sizes in fan order.
fn completions(arrangements: &[Vec<usize>], arc: &[usize]) -> Vec<Vec<usize>> {
    let mut rems: Vec<Vec<usize>> = arrangements
        .iter()
        .filter(|w| w.len() >= arc.len() && w[..arc.len()] == *arc)
        .map(|w| w[arc.len()..].to_vec())
        .collect();
    rems.sort();
    rems.dedup();
    rems
}

/// The fan of faces around one vertex: faces in rotation order and the
/// neighbour across each consecutive edge. Open fans have one more
/// neighbour than faces (the two outermost neighbours span the boundary
/// edges); closed fans have equally many, cyclically.
#[derive(Debug, Clone)]
struct Fan {
    faces: Vec<usize>,
    nbrs: Vec<usize>,
    closed: bool,
}

impl Fan {
    fn arc_sizes(&self, faces: &[Vec<usize>]) -> Vec<usize> {
        self.faces.iter().map(|&f| faces[f].len()).collect()
    }
}

/// Chain the incident (face, neighbour, neighbour) triples of one
/// vertex into a fan; errors when an edge lies in three faces or the
/// incident faces do not form a single chain or cycle.
fn chain_fan(v: usize, inc: &[(usize, usize, usize)]) -> Result<Fan> {
    if inc.is_empty() {
        return Ok(Fan {
            faces: Vec::new(),
            nbrs: Vec::new(),
            closed: false,
        });
    }
    let mut by_nb: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, &(_, a, b)) in inc.iter().enumerate() {
        by_nb.entry(a).or_default().push(i);
        by_nb.entry(b).or_default().push(i);
    }
    if by_nb.values().any(|l| l.len() > 2) {
        return Err(Error::GrowthStuck(v));
    }
    let ends: Vec<usize> = by_nb
        .iter()
        .filter(|(_, l)| l.len() == 1)
        .map(|(&u, _)| u)
        .collect();
    let closed = ends.is_empty();
    if !closed && ends.len() != 2 {
        return Err(Error::GrowthStuck(v));
    }
    let start = if closed {
        *by_nb.keys().next().unwrap()
    } else {
        ends[0]
    };
    let mut faces = Vec::with_capacity(inc.len());
    let mut nbrs = vec![start];
    let mut used = vec![false; inc.len()];
    let mut cur = start;
    while let Some(&fi) = by_nb[&cur].iter().find(|&&i| !used[i]) {
        used[fi] = true;
        let (f, a, b) = inc[fi];
        let nxt = if a == cur { b } else { a };
        faces.push(f);
        nbrs.push(nxt);
        cur = nxt;
        if closed && cur == start {
            break;
        }
    }
    if faces.len() != inc.len() {
        // the incident faces split into several fans
        return Err(Error::GrowthStuck(v));
    }
    if closed {
        nbrs.pop();
    }
    Ok(Fan { faces, nbrs, closed })
}

/// Which end of an open fan a new face attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone)]
struct Grower {
    flat: Vec<usize>,
    arrangements: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    next_vertex: usize,
    branch_log: Vec<BranchEvent>,
}

impl Grower {
    fn seed(symbol: &VertexSymbol) -> Grower {
        let flat = symbol.flat().to_vec();
        let arrangements = dihedral_arrangements(&flat);
        // seed on the adjacent face pair whose continuation around a
        // shared vertex is most constrained (fewest completions of the
        // two-face arc); ties go to the largest pair
        let q = flat.len();
        let (mut p1, mut p2) = (0usize, 0usize);
        let mut best = usize::MAX;
        for i in 0..q {
            let (a, b) = (flat[i], flat[(i + 1) % q]);
            let (hi, lo) = (a.max(b), a.min(b));
            let count = completions(&arrangements, &[hi, lo]).len();
            if count < best || (count == best && (hi, lo) > (p1, p2)) {
                best = count;
                (p1, p2) = (hi, lo);
            }
        }
        // face A = 0..p1-1, face B shares edge (0,1)
        let face_a: Vec<usize> = (0..p1).collect();
        let mut face_b = vec![1, 0];
        face_b.extend(p1..(p1 + p2 - 2));
        Grower {
            arrangements,
            flat,
            next_vertex: p1 + p2 - 2,
            faces: vec![face_a, face_b],
            branch_log: Vec::new(),
        }
    }

    /// Derive every vertex's fan from the face list; errors indicate a
    /// structurally invalid state (edge in three faces, split fan, ...).
    fn fans(&self) -> Result<Vec<Fan>> {
        let n = self.next_vertex;
        // incident (face, left nb, right nb) per vertex
        let mut inc: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
        for (fi, cycle) in self.faces.iter().enumerate() {
            let p = cycle.len();
            for (i, &v) in cycle.iter().enumerate() {
                inc[v].push((fi, cycle[(i + p - 1) % p], cycle[(i + 1) % p]));
            }
        }
        let mut out = Vec::with_capacity(n);
        for v in 0..n {
            out.push(chain_fan(v, &inc[v])?);
        }
        Ok(out)
    }

    fn fresh(&mut self) -> usize {
        self.next_vertex += 1;
        self.next_vertex - 1
    }

    /// Append one face of the given size to one end of v's fan;
    /// `closing` means this face also reconnects to the opposite end
    /// edge.
    ///
    /// Neighbouring boundary vertices whose fans are closed by the new
    /// face force it to run along their other boundary edge, so forced
    /// identifications are walked from both attachment ends before the
    /// remaining corners are filled with fresh vertices.
    fn append_face(&mut self, v: usize, size: usize, closing: bool, side: Side) -> Result<()> {
        let q = self.flat.len();
        let fans = self.fans()?;
        let fan = &fans[v];
        let (r, l) = match side {
            Side::Right => (*fan.nbrs.last().unwrap(), fan.nbrs[0]),
            Side::Left => (fan.nbrs[0], *fan.nbrs.last().unwrap()),
        };
        let other_end = |cur: usize, prev: usize| -> Result<usize> {
            let f = &fans[cur];
            if f.closed || f.faces.is_empty() {
                return Err(Error::GrowthStuck(cur));
            }
            if prev == *f.nbrs.last().unwrap() {
                Ok(f.nbrs[0])
            } else if prev == f.nbrs[0] {
                Ok(*f.nbrs.last().unwrap())
            } else {
                // entering edge is not on the fan boundary
                Err(Error::GrowthStuck(cur))
            }
        };
        let place = |slots: &mut Vec<Option<usize>>, pos: usize, w: usize| -> Result<()> {
            match slots[pos] {
                Some(x) if x != w => Err(Error::GrowthStuck(v)),
                _ => {
                    slots[pos] = Some(w);
                    Ok(())
                }
            }
        };
        let mut slots: Vec<Option<usize>> = vec![None; size];
        slots[0] = Some(v);
        slots[1] = Some(r);
        if closing {
            place(&mut slots, size - 1, l)?;
        }
        // forced walk forward from the right attachment edge
        let mut prev = v;
        let mut cur = r;
        let mut pos = 1;
        while pos < size - 1 && fans[cur].faces.len() + 1 == q {
            let next = other_end(cur, prev)?;
            pos += 1;
            place(&mut slots, pos, next)?;
            prev = cur;
            cur = next;
        }
        // forced walk backward from the left attachment edge
        if closing {
            prev = v;
            cur = l;
            pos = size - 1;
            while pos > 1 && fans[cur].faces.len() + 1 == q {
                let next = other_end(cur, prev)?;
                pos -= 1;
                place(&mut slots, pos, next)?;
                prev = cur;
                cur = next;
            }
        }
        let verts: Vec<usize> = slots
            .into_iter()
            .map(|s| s.unwrap_or_else(|| self.fresh()))
            .collect();
        // a face visits each vertex once
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != verts.len() {
            return Err(Error::GrowthStuck(v));
        }
        self.faces.push(verts);
        self.validate()
    }

    /// Structural and symbol consistency of the whole grown patch.
    fn validate(&self) -> Result<()> {
        let fans = self.fans()?;
        for (v, fan) in fans.iter().enumerate() {
            if fan.faces.is_empty() {
                continue;
            }
            let arc = fan.arc_sizes(&self.faces);
            if fan.closed {
                let ok = arc.len() == self.flat.len()
                    && self.arrangements.iter().any(|w| *w == arc);
                if !ok {
                    return Err(Error::GrowthStuck(v));
                }
            } else if completions(&self.arrangements, &arc).is_empty() {
                return Err(Error::GrowthStuck(v));
            }
        }
        Ok(())
    }

    /// Add the missing faces around v. A face attached at one end of
    /// the fan can have a corner whose identity is only forced by the
    /// face at the other end, so the two attachment orders are searched
    /// with backtracking; the first fully consistent order is kept.
    fn apply_completion(&mut self, v: usize, rem: &[usize]) -> Result<()> {
        match rem {
            [] => Ok(()),
            [s] => self.append_face(v, *s, true, Side::Right),
            _ => {
                let mut fork = self.clone();
                if fork.append_face(v, rem[0], false, Side::Right).is_ok()
                    && fork.apply_completion(v, &rem[1..]).is_ok()
                {
                    *self = fork;
                    return Ok(());
                }
                let mut fork = self.clone();
                if fork
                    .append_face(v, *rem.last().unwrap(), false, Side::Left)
                    .is_ok()
                    && fork.apply_completion(v, &rem[..rem.len() - 1]).is_ok()
                {
                    *self = fork;
                    return Ok(());
                }
                Err(Error::GrowthStuck(v))
            }
        }
    }

    /// Completion candidates at v that survive simulation plus a
    /// one-step lookahead: after the candidate is applied, every open
    /// vertex lying on one of the new faces must still admit at least
    /// one consistent completion of its own (a fresh corner placed here
    /// may otherwise contradict an identification forced elsewhere).
    fn viable_completions(&self, v: usize, arc: &[usize]) -> Vec<Vec<usize>> {
        completions(&self.arrangements, arc)
            .into_iter()
            .filter(|rem| {
                let mut probe = self.clone();
                if probe.apply_completion(v, rem).is_err() {
                    return false;
                }
                let touched: std::collections::BTreeSet<usize> = probe.faces
                    [self.faces.len()..]
                    .iter()
                    .flatten()
                    .copied()
                    .collect();
                let Ok(fans) = probe.fans() else { return false };
                touched.into_iter().all(|w| {
                    let f = &fans[w];
                    if f.closed || f.faces.is_empty() {
                        return true;
                    }
                    let warc = f.arc_sizes(&probe.faces);
                    completions(&probe.arrangements, &warc)
                        .iter()
                        .any(|r| probe.clone().apply_completion(w, r).is_ok())
                })
            })
            .collect()
    }

    fn open_vertices(&self) -> Result<Vec<usize>> {
        Ok(self
            .fans()?
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.faces.is_empty() && !f.closed)
            .map(|(v, _)| v)
            .collect())
    }

    /// One sweep: complete every currently open vertex whose completion
    /// is forced. Returns whether anything was completed.
    fn sweep(&mut self) -> Result<bool> {
        let snapshot = self.open_vertices()?;
        let mut progressed = false;
        for v in snapshot {
            let fans = self.fans()?;
            if fans[v].closed {
                continue;
            }
            let arc = fans[v].arc_sizes(&self.faces);
            let viable = self.viable_completions(v, &arc);
            if viable.len() == 1 {
                self.apply_completion(v, &viable[0])?;
                progressed = true;
            }
            // 0 or >1 viable: deferred, completing another vertex first
            // may make this one forced
        }
        Ok(progressed)
    }

    fn into_outcome(self) -> Result<GrowthOutcome> {
        let map = FlagMap::build_from_faces(&self.faces)?;
        Ok(GrowthOutcome {
            faces: self.faces,
            map,
            branch_log: self.branch_log,
        })
    }

    fn run(mut self, sweeps: usize) -> Result<Vec<GrowthOutcome>> {
        let mut remaining = sweeps;
        while remaining > 0 {
            if self.sweep()? {
                remaining -= 1;
                continue;
            }
            // nothing forced: either everything is closed (impossible
            // for a plane type at finite radius) or we branch on the
            // lowest open vertex
            let open = self.open_vertices()?;
            if open.is_empty() {
                break;
            }
            let fans = self.fans()?;
            // branch on the lowest open vertex that still has options
            let mut picked = None;
            for &w in &open {
                let arc = fans[w].arc_sizes(&self.faces);
                let viable = self.viable_completions(w, &arc);
                if viable.len() >= 2 {
                    picked = Some((w, viable));
                    break;
                }
            }
            let Some((v, viable)) = picked else {
                return Err(Error::GrowthStuck(open[0]));
            };
            let mut all = Vec::new();
            for (taken, rem) in viable.iter().enumerate() {
                let mut fork = self.clone();
                fork.branch_log.push(BranchEvent {
                    vertex: v,
                    choices: viable.len(),
                    taken,
                });
                fork.apply_completion(v, rem)?;
                all.extend(fork.run(remaining)?);
            }
            return Ok(all);
        }
        Ok(vec![self.into_outcome()?])
    }
}

/// Grow `rings` completion sweeps from the canonical seed of the given
/// vertex symbol; returns every branch outcome (one when growth is
/// fully forced).
pub fn grow_patch(symbol: &VertexSymbol, rings: usize) -> Result<Vec<GrowthOutcome>> {
    assert!(rings >= 1);
    Grower::seed(symbol).run(rings)
}

/// Rebuild a grown patch with all face cycles reversed (the mirror
/// image).
pub fn mirror_of(outcome: &GrowthOutcome) -> Result<FlagMap> {
    let reversed: Vec<Vec<usize>> = outcome
        .faces
        .iter()
        .map(|f| f.iter().rev().copied().collect())
        .collect();
    FlagMap::build_from_faces(&reversed)
}

/// True iff every branch outcome of growing the symbol embeds into a
/// large patch of the matching tiling template (false when no template
/// carries the symbol).
pub fn growth_matches_template(symbol: &VertexSymbol, rings: usize) -> Result<bool> {
    let Some(id) = ALL_TILINGS
        .iter()
        .copied()
        .find(|id| id.type_symbol() == *symbol)
    else {
        return Ok(false);
    };
    let host = patch(template(id), rings as i32 + 2);
    let outcomes = grow_patch(symbol, rings)?;
    Ok(outcomes
        .iter()
        .all(|o| embed_bordered(&o.map, &host.map).is_some()))
}
