//! Vertex symbols: the cyclic sequence of face sizes around a vertex, up
//! to rotation and reflection, written in run-length form like `3^2.4.3.4`.

use crate::error::{Error, Result};
use crate::mapcore::FlagMap;
use std::fmt;

/// Canonical form of a cyclic face-size sequence: the lexicographically
/// least flat sequence over all rotations of both directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSymbol {
    flat: Vec<usize>,
}

impl VertexSymbol {
    pub fn canonicalize(sizes: &[usize]) -> Result<VertexSymbol> {
        if sizes.len() < 3 {
            return Err(Error::TooShort(sizes.len()));
        }
        let n = sizes.len();
        let mut best: Option<Vec<usize>> = None;
        for rev in [false, true] {
            let seq: Vec<usize> = if rev {
                sizes.iter().rev().copied().collect()
            } else {
                sizes.to_vec()
            };
            for s in 0..n {
                let cand: Vec<usize> = (0..n).map(|i| seq[(s + i) % n]).collect();
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        Ok(VertexSymbol {
            flat: best.unwrap(),
        })
    }

    /// The canonical flat sequence of face sizes.
    pub fn flat(&self) -> &[usize] {
        &self.flat
    }

    pub fn degree(&self) -> usize {
        self.flat.len()
    }

    /// Run-length pairs (size, multiplicity) of the canonical sequence.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &s in &self.flat {
            match runs.last_mut() {
                Some((v, c)) if *v == s => *c += 1,
                _ => runs.push((s, 1)),
            }
        }
        runs
    }

    /// Parse `3^2.4.3.4` style text (canonicalizes the result).
    pub fn parse(text: &str) -> Result<VertexSymbol> {
        let text = text.trim();
        let text = text
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        let mut flat = Vec::new();
        for part in text.split('.') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (part, "1"),
            };
            let size: usize = base
                .parse()
                .map_err(|_| Error::Io(format!("bad face size {base:?} in symbol")))?;
            let count: usize = exp
                .parse()
                .map_err(|_| Error::Io(format!("bad exponent {exp:?} in symbol")))?;
            if size < 3 || count == 0 {
                return Err(Error::Io(format!("invalid term {part:?} in symbol")));
            }
            flat.extend(std::iter::repeat(size).take(count));
        }
        VertexSymbol::canonicalize(&flat)
    }

    /// True when this symbol is one of the eleven types realizable by a
    /// vertex-transitive tiling of the plane (and so of the torus).
    pub fn is_torus_type(&self) -> bool {
        TORUS_TYPES
            .iter()
            .any(|t| VertexSymbol::parse(t).unwrap() == *self)
    }
}

/// The eleven vertex symbols of the Archimedean plane tilings.
pub const TORUS_TYPES: [&str; 11] = [
    "3^6",
    "4^4",
    "6^3",
    "3^4.6",
    "3^3.4^2",
    "3^2.4.3.4",
    "3.6.3.6",
    "3.4.6.4",
    "3.12^2",
    "4.8^2",
    "4.6.12",
];

impl fmt::Display for VertexSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (size, count) in self.runs() {
            if !first {
                write!(f, ".")?;
            }
            first = false;
            if count == 1 {
                write!(f, "{size}")?;
            } else {
                write!(f, "{size}^{count}")?;
            }
        }
        Ok(())
    }
}

/// The common vertex symbol of a closed polyhedral map in which every
/// vertex has the same symbol; errors when the map is not polyhedral or
/// the symbols differ.
pub fn semi_equivelar_type(map: &FlagMap) -> Result<VertexSymbol> {
    if map.has_boundary() {
        return Err(Error::BoundaryNotSupported);
    }
    let report = map.is_polyhedral();
    if let Some(v) = report.violation {
        return Err(Error::NotPolyhedral(format!("{v:?}")));
    }
    let mut common: Option<VertexSymbol> = None;
    for v in 0..map.num_vertices() {
        let sym = VertexSymbol::canonicalize(&map.face_cycle(v)?)?;
        match &common {
            None => common = Some(sym),
            Some(c) if *c == sym => {}
            Some(c) => {
                return Err(Error::WrongType {
                    required: c.to_string(),
                    found: sym.to_string(),
                })
            }
        }
    }
    common.ok_or_else(|| Error::Io("empty map has no type".into()))
}
