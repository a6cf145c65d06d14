//! Euler-characteristic arithmetic for the seven disk counting lemmas:
//! hypothetical maps on the 2-disk with a prescribed interior vertex
//! configuration and boundary profile. Whenever all the integrality
//! constraints on the face counts hold, the vertex/edge/face counts sum
//! to Euler characteristic 0 — contradicting chi(D^2) = 1, which is the
//! impossibility content these lemmas carry. Inputs are abstract counts;
//! no disk map is constructed.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiskLemmaId {
    /// [3,4,6,4] interior; boundary: 2k vertices in one 6-gon + one
    /// 4-gon, l in one 6-gon only; k-1 <= l <= k+2.
    L3464A,
    /// [3,4,6,4] interior; boundary: 2k vertices in one 4-gon + one
    /// 3-gon, l in two 4-gons + one 3-gon; k-1 <= l <= k+1.
    L3464B,
    /// [3,12^2] interior; boundary: 2k vertices in one 3-gon + one
    /// 12-gon, 2l in one 12-gon only; k-1 <= l <= k+3.
    L3122,
    /// [4,6,12] interior; boundary: 2k vertices in one 4-gon + one
    /// 12-gon, 2l in one 12-gon only; 2k-2 <= l <= 2k+2.
    L4612A,
    /// [4,6,12] interior; boundary: 4k vertices in one 4-gon + one
    /// 6-gon, 2l in one 6-gon only; k-1 <= l <= k.
    L4612B,
    /// [4,8^2] interior; boundary: k vertices in two 8-gons, 2l in one
    /// 8-gon only; k <= l <= k+3.
    L482A,
    /// [4,8^2] interior; boundary: k vertices in one 4-gon, 2l in one
    /// 4-gon + one 8-gon; k <= l <= k+2.
    L482B,
}

pub const ALL_LEMMAS: [DiskLemmaId; 7] = [
    DiskLemmaId::L3464A,
    DiskLemmaId::L3464B,
    DiskLemmaId::L3122,
    DiskLemmaId::L4612A,
    DiskLemmaId::L4612B,
    DiskLemmaId::L482A,
    DiskLemmaId::L482B,
];

impl fmt::Display for DiskLemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Coefficients (cn, ck, cl) of a linear form cn*n + ck*k + cl*l.
type Form = (i64, i64, i64);

struct LemmaData {
    /// window: wk*k + lo <= l <= wk*k + hi
    wk: i64,
    lo: i64,
    hi: i64,
    /// f0 = n + ck*k + cl*l
    f0: Form,
    /// 2*f1 = cn*n + ck*k + cl*l
    f1_twice: Form,
    /// each face count = form / divisor; all must be integral
    faces: &'static [(i64, Form)],
    /// the l the integrality constraints force: fk*k
    forced_mult: i64,
}

fn data(lemma: DiskLemmaId) -> LemmaData {
    use DiskLemmaId::*;
    match lemma {
        L3464A => LemmaData {
            wk: 1,
            lo: -1,
            hi: 2,
            f0: (1, 2, 1),
            f1_twice: (4, 6, 2),
            // n3 = n/3, n4 = (n+k)/2, n6 = (n+2k+l)/6
            faces: &[(3, (1, 0, 0)), (2, (1, 1, 0)), (6, (1, 2, 1))],
            forced_mult: 1,
        },
        L3464B => LemmaData {
            wk: 1,
            lo: -1,
            hi: 1,
            f0: (1, 2, 1),
            f1_twice: (4, 6, 4),
            // n6 = n/6, n4 = (n+k+l)/2, n3 = (n+2k+l)/3
            faces: &[(6, (1, 0, 0)), (2, (1, 1, 1)), (3, (1, 2, 1))],
            forced_mult: 1,
        },
        L3122 => LemmaData {
            wk: 1,
            lo: -1,
            hi: 3,
            f0: (1, 2, 2),
            f1_twice: (3, 6, 4),
            // the deduction here uses only the combined count
            // f2 = n3 + n12 = (6n+10k+2l)/12, not the two summands
            // separately (n3 = (n+2k)/3 need not be integral on its own
            // for the boundary length to be forced)
            faces: &[(12, (6, 10, 2))],
            forced_mult: 1,
        },
        L4612A => LemmaData {
            wk: 2,
            lo: -2,
            hi: 2,
            f0: (1, 2, 2),
            f1_twice: (3, 6, 4),
            // n6 = n/6, n4 = (n+2k)/4, n12 = (n+2k+2l)/12
            faces: &[(6, (1, 0, 0)), (4, (1, 2, 0)), (12, (1, 2, 2))],
            forced_mult: 2,
        },
        L4612B => LemmaData {
            wk: 1,
            lo: -1,
            hi: 0,
            f0: (1, 4, 2),
            f1_twice: (3, 12, 4),
            // n12 = n/12, n4 = (n+4k)/4, n6 = (n+4k+2l)/6
            faces: &[(12, (1, 0, 0)), (4, (1, 4, 0)), (6, (1, 4, 2))],
            forced_mult: 1,
        },
        L482A => LemmaData {
            wk: 1,
            lo: 0,
            hi: 3,
            f0: (1, 1, 2),
            f1_twice: (3, 3, 4),
            // n4 = n/4, n8 = (n+k+l)/4
            faces: &[(4, (1, 0, 0)), (4, (1, 1, 1))],
            forced_mult: 1,
        },
        L482B => LemmaData {
            wk: 1,
            lo: 0,
            hi: 2,
            f0: (1, 1, 2),
            f1_twice: (3, 2, 6),
            // n4 = (n+k+2l)/4, n8 = (n+l)/4
            faces: &[(4, (1, 1, 2)), (4, (1, 0, 1))],
            forced_mult: 1,
        },
    }
}

fn eval(form: Form, n: i64, k: i64, l: i64) -> i64 {
    form.0 * n + form.1 * k + form.2 * l
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiskCounts {
    pub feasible: bool,
    pub f0: i64,
    pub f1: Option<i64>,
    pub f2: Option<i64>,
    pub chi: Option<i64>,
}

/// Vertex/edge/face counts of the hypothetical disk, with feasibility =
/// all the lemma's integrality constraints on edge and face counts.
pub fn disk_counts(lemma: DiskLemmaId, n: i64, k: i64, l: i64) -> Result<DiskCounts> {
    assert!(n >= 0 && k >= 1);
    let d = data(lemma);
    let (lo, hi) = (d.wk * k + d.lo, d.wk * k + d.hi);
    if l < lo || l > hi {
        return Err(Error::RangeViolation { l, lo, hi });
    }
    let f0 = eval(d.f0, n, k, l);
    let twice_f1 = eval(d.f1_twice, n, k, l);
    let mut feasible = twice_f1 % 2 == 0;
    let mut f2 = 0i64;
    for &(div, form) in d.faces {
        let num = eval(form, n, k, l);
        if num % div != 0 {
            feasible = false;
        } else {
            f2 += num / div;
        }
    }
    if !feasible {
        return Ok(DiskCounts {
            feasible,
            f0,
            f1: None,
            f2: None,
            chi: None,
        });
    }
    let f1 = twice_f1 / 2;
    Ok(DiskCounts {
        feasible,
        f0,
        f1: Some(f1),
        f2: Some(f2),
        chi: Some(f0 - f1 + f2),
    })
}

/// The unique l in the window making all counts integral, or None. The
/// integrality constraints always single out l = k (l = 2k for L4612A).
pub fn forced_boundary(lemma: DiskLemmaId, n: i64, k: i64) -> Option<i64> {
    let d = data(lemma);
    let mut found = None;
    for l in (d.wk * k + d.lo)..=(d.wk * k + d.hi) {
        if disk_counts(lemma, n, k, l).unwrap().feasible {
            assert!(found.is_none(), "{lemma}: two feasible boundary lengths");
            found = Some(l);
        }
    }
    found
}

/// The boundary length the lemma's proof deduces (k, or 2k for L4612A).
pub fn deduced_boundary(lemma: DiskLemmaId, k: i64) -> i64 {
    data(lemma).forced_mult * k
}

/// Sweep all (n, k, l) in range and check the contradiction law: every
/// feasible case has chi = 0 and l equal to the deduced value. Returns
/// the number of feasible cases checked.
pub fn verify_contradiction_law(max_n: i64, max_k: i64) -> Result<usize> {
    let mut checked = 0;
    for lemma in ALL_LEMMAS {
        checked += verify_lemma(lemma, max_n, max_k)?;
    }
    Ok(checked)
}

/// The contradiction-law sweep for a single lemma; returns the number
/// of feasible cases checked.
pub fn verify_lemma(lemma: DiskLemmaId, max_n: i64, max_k: i64) -> Result<usize> {
    let mut checked = 0;
    {
        let d = data(lemma);
        for n in 0..=max_n {
            for k in 1..=max_k {
                let mut feasible_l = None;
                for l in (d.wk * k + d.lo)..=(d.wk * k + d.hi) {
                    let c = disk_counts(lemma, n, k, l)?;
                    if !c.feasible {
                        continue;
                    }
                    if c.chi != Some(0) {
                        return Err(Error::Io(format!(
                            "{lemma}: feasible (n={n}, k={k}, l={l}) has chi {:?}",
                            c.chi
                        )));
                    }
                    if l != deduced_boundary(lemma, k) {
                        return Err(Error::Io(format!(
                            "{lemma}: feasible (n={n}, k={k}) at l={l}, expected {}",
                            deduced_boundary(lemma, k)
                        )));
                    }
                    if feasible_l.replace(l).is_some() {
                        return Err(Error::Io(format!(
                            "{lemma}: multiple feasible l at (n={n}, k={k})"
                        )));
                    }
                    checked += 1;
                }
                if forced_boundary(lemma, n, k) != feasible_l {
                    return Err(Error::Io(format!(
                        "{lemma}: forced_boundary disagrees with scan at (n={n}, k={k})"
                    )));
                }
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use DiskLemmaId::*;

    #[test]
    fn worked_examples() {
        let c = disk_counts(L3464A, 6, 2, 2).unwrap();
        assert!(c.feasible);
        assert_eq!((c.f0, c.f1, c.f2, c.chi), (12, Some(20), Some(8), Some(0)));

        let c = disk_counts(L482A, 4, 2, 2).unwrap();
        assert!(c.feasible);
        assert_eq!((c.f0, c.f1, c.f2, c.chi), (10, Some(13), Some(3), Some(0)));

        let c = disk_counts(L4612A, 6, 3, 6).unwrap();
        assert!(c.feasible);
        assert_eq!((c.f0, c.f1, c.f2, c.chi), (24, Some(30), Some(6), Some(0)));
    }

    #[test]
    fn forced_boundary_examples() {
        assert_eq!(forced_boundary(L3464A, 6, 2), Some(2));
        assert_eq!(forced_boundary(L4612A, 6, 3), Some(6));
        assert_eq!(forced_boundary(L3122, 6, 2), Some(2));
        // interior divisibility fails: no feasible boundary at all
        assert_eq!(forced_boundary(L3464A, 5, 2), None);
    }

    #[test]
    fn out_of_window_rejected() {
        let err = disk_counts(L3464A, 6, 2, 5).unwrap_err();
        assert!(matches!(
            err,
            crate::error::Error::RangeViolation { l: 5, lo: 1, hi: 4 }
        ));
        assert!(disk_counts(L4612B, 12, 3, 4).is_err());
    }

    #[test]
    fn contradiction_law_small_sweep() {
        let checked = verify_contradiction_law(120, 24).unwrap();
        assert!(checked > 100);
    }

    #[test]
    fn infeasible_cases_reported() {
        // l = k + 2 breaks 6 | (n + 2k + l) in L3464A
        let c = disk_counts(L3464A, 6, 2, 4).unwrap();
        assert!(!c.feasible);
        assert_eq!(c.chi, None);
    }
}
