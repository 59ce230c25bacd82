//! Simplicial complexes on the vertex set [ℓ] = {1, …, ℓ}, ℓ ≤ 30.
//!
//! Faces are bit masks (vertex `v` is bit `v - 1`). A complex is kept as the
//! sorted list of all of its faces, empty face included.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 30;

/// A set of vertices σ ⊆ [ℓ].
///
/// Ordered by cardinality, then lexicographically on the sorted vertex
/// list, so {1,2} < {1,3} < {2,3} < {1,2,3}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_mask(mask: u32) -> Self {
        Face(mask)
    }

    /// Builds a face from 1-based vertex numbers, all of which must lie in [1, ℓ].
    pub fn new(ell: usize, vertices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &v in vertices {
            if v == 0 || v > ell || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, ell });
            }
            mask |= 1 << (v - 1);
        }
        Ok(Face(mask))
    }

    pub fn singleton(v: usize) -> Self {
        Face(1 << (v - 1))
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        (1..=32).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    #[inline]
    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << (v - 1)))
    }

    #[inline]
    pub fn with(self, v: usize) -> Face {
        Face(self.0 | 1 << (v - 1))
    }

    /// Sorted 1-based vertices.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |i| mask >> i & 1 == 1).map(|i| i + 1)
    }

    /// All subsets of this face, including the empty face and itself.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = Some(full);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(Face(cur))
        })
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices().collect::<Vec<_>>().serialize(s)
    }
}

/// All k-subsets of [ℓ] in face order.
pub fn subsets_of_size(ell: usize, k: usize) -> Vec<Face> {
    let mut out = Vec::new();
    if k > ell {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Face(idx.iter().fold(0, |m, &v| m | 1 << (v - 1))));
        // advance to the next combination in lex order
        let mut i = k;
        while i > 0 && idx[i - 1] == ell - k + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for t in i..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
    out
}

/// A downward-closed family of subsets of [ℓ] containing ∅ and (unless
/// degenerate) every singleton.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ell: usize,
    faces: Vec<Face>,
    degenerate: bool,
}

impl SimplicialComplex {
    /// The smallest complex on [ℓ] containing every facet. Every vertex
    /// must appear in some facet.
    pub fn from_facets(ell: usize, facets: &[Face]) -> Result<Self> {
        if ell > MAX_VERTICES {
            return Err(Error::Range(format!("ℓ = {ell} exceeds {MAX_VERTICES}")));
        }
        let universe = if ell == 0 { 0 } else { u32::MAX >> (32 - ell) };
        let mut covered = 0u32;
        for f in facets {
            if f.mask() & !universe != 0 {
                let vertex = f.vertices().find(|&v| v > ell).unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, ell });
            }
            covered |= f.mask();
        }
        if let Some(v) = (1..=ell).find(|&v| covered >> (v - 1) & 1 == 0) {
            return Err(Error::UncoveredVertex(v));
        }
        let mut set: HashSet<Face> = HashSet::new();
        set.insert(Face::EMPTY);
        for f in facets {
            if set.contains(f) {
                continue;
            }
            set.extend(f.subsets());
        }
        let mut faces: Vec<Face> = set.into_iter().collect();
        faces.sort_unstable();
        Ok(Self {
            ell,
            faces,
            degenerate: false,
        })
    }

    /// Δ(ℓ, h): every subset of [ℓ] of size at most h.
    ///
    /// For h = 0 and ℓ ≥ 1 the vertices are not faces; the complex is still
    /// built and [`Self::is_degenerate`] reports it.
    pub fn skeleton(ell: usize, h: usize) -> Result<Self> {
        if h > ell {
            return Err(Error::Range(format!(
                "skeleton needs h ≤ ℓ, got h={h}, ℓ={ell}"
            )));
        }
        if ell > MAX_VERTICES {
            return Err(Error::Range(format!("ℓ = {ell} exceeds {MAX_VERTICES}")));
        }
        let faces = (0..=h).flat_map(|k| subsets_of_size(ell, k)).collect();
        Ok(Self {
            ell,
            faces,
            degenerate: h == 0 && ell > 0,
        })
    }

    pub fn full_simplex(ell: usize) -> Result<Self> {
        Self::skeleton(ell, ell)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// All faces in face order (∅ first).
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// True when some vertex is not a face (only possible for Δ(ℓ, 0)).
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn contains(&self, face: Face) -> bool {
        self.faces.binary_search(&face).is_ok()
    }

    /// Largest face size minus one; −1 for the complex {∅}.
    pub fn dim(&self) -> isize {
        self.faces.last().map_or(0, |f| f.len()) as isize - 1
    }

    /// Inclusion-maximal faces, in face order.
    pub fn facets(&self) -> Vec<Face> {
        let set: HashSet<Face> = self.faces.iter().copied().collect();
        self.faces
            .iter()
            .copied()
            .filter(|f| (1..=self.ell).all(|v| f.contains(v) || !set.contains(&f.with(v))))
            .collect()
    }

    /// f_i = number of faces with i vertices, f_0 = 1; the last entry is nonzero.
    pub fn f_vector(&self) -> Vec<u64> {
        let top = self.faces.last().map_or(0, |f| f.len());
        let mut f = vec![0u64; top + 1];
        for face in &self.faces {
            f[face.len()] += 1;
        }
        f
    }

    /// Inclusion-minimal non-faces, i.e. the supports of the monomial
    /// generators of the Stanley–Reisner ideal.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let set: HashSet<Face> = self.faces.iter().copied().collect();
        let mut out: HashSet<Face> = HashSet::new();
        // A minimal non-face minus any vertex is a face, so it is τ ∪ {v}.
        for &tau in &self.faces {
            for v in 1..=self.ell {
                if tau.contains(v) {
                    continue;
                }
                let sigma = tau.with(v);
                if set.contains(&sigma) || out.contains(&sigma) {
                    continue;
                }
                if sigma.vertices().all(|u| set.contains(&sigma.without(u))) {
                    out.insert(sigma);
                }
            }
        }
        let mut out: Vec<Face> = out.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Text form: `ℓ` on the first line, then one facet per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.ell);
        for f in self.facets() {
            let v: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
            s.push_str(&v.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        let ell: usize = head.trim().parse().map_err(|e| Error::Parse {
            line: 1,
            msg: format!("vertex count: {e}"),
        })?;
        let mut facets = Vec::new();
        for (i, line) in lines {
            let verts = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            facets.push(Face::new(ell, &verts)?);
        }
        Self::from_facets(ell, &facets)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex(ℓ={}, facets={:?})",
            self.ell,
            self.facets()
        )
    }
}
