//! Central subspace arrangements over GF(q): intersection lattices, Möbius
//! values, characteristic polynomials and point sets.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{check_modulus, intersect_row_spaces, Point, PrimeFieldMatrix};
use crate::simplicial::{Face, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subspace {
    /// span{b_i : i ∈ σ} for the standard basis b_1, …, b_ℓ.
    Coordinate(Face),
    /// Row space of the given matrix.
    General(PrimeFieldMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceArrangement {
    ell: usize,
    q: u8,
    subspaces: Vec<Subspace>,
}

/// Row-reduced basis of the coordinate subspace X_σ.
fn coordinate_basis(face: Face, ell: usize, q: u8) -> PrimeFieldMatrix {
    let mut m = PrimeFieldMatrix::zeros(q as u32, face.len(), ell).expect("q already checked");
    for (r, v) in face.vertices().enumerate() {
        m.set(r, v - 1, 1);
    }
    m
}

impl SubspaceArrangement {
    pub fn new(ell: usize, q: u32, subspaces: Vec<Subspace>) -> Result<Self> {
        let q = check_modulus(q)?;
        for s in &subspaces {
            match s {
                Subspace::Coordinate(f) => {
                    if let Some(v) = f.vertices().find(|&v| v > ell) {
                        return Err(Error::VertexOutOfRange { vertex: v, ell });
                    }
                }
                Subspace::General(m) => {
                    if m.q() != q {
                        return Err(Error::FieldMismatch(m.q(), q));
                    }
                    if m.cols() != ell {
                        return Err(Error::Shape(format!(
                            "subspace basis has {} columns in an ambient space of dimension {ell}",
                            m.cols()
                        )));
                    }
                }
            }
        }
        Ok(Self { ell, q, subspaces })
    }

    /// A_Δ: one coordinate subspace per facet of Δ. Smaller faces span
    /// subspaces of some facet's subspace and add nothing to the union or
    /// the lattice.
    pub fn coordinate(complex: &SimplicialComplex, q: u32) -> Result<Self> {
        let subspaces = complex
            .facets()
            .into_iter()
            .map(Subspace::Coordinate)
            .collect();
        Self::new(complex.ell(), q, subspaces)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn is_coordinate(&self) -> bool {
        self.subspaces
            .iter()
            .all(|s| matches!(s, Subspace::Coordinate(_)))
    }

    /// Canonical (row-reduced) basis of member `i`.
    pub fn basis(&self, i: usize) -> PrimeFieldMatrix {
        match &self.subspaces[i] {
            Subspace::Coordinate(f) => coordinate_basis(*f, self.ell, self.q),
            Subspace::General(m) => m.rref().basis(),
        }
    }

    /// The same arrangement with every member given by an explicit basis.
    pub fn to_general(&self) -> Self {
        Self {
            ell: self.ell,
            q: self.q,
            subspaces: (0..self.subspaces.len())
                .map(|i| Subspace::General(self.basis(i)))
                .collect(),
        }
    }

    /// P(A): the union of the members, sorted in canonical point order.
    pub fn points(&self) -> Vec<Point> {
        let chunks: Vec<Vec<Point>> = (0..self.subspaces.len())
            .into_par_iter()
            .map(|i| match &self.subspaces[i] {
                Subspace::Coordinate(f) => coordinate_points(*f, self.ell, self.q),
                Subspace::General(m) => m.enumerate_points(),
            })
            .collect();
        let set: BTreeSet<Point> = chunks.into_iter().flatten().collect();
        set.into_iter().collect()
    }

    pub fn intersection_lattice(&self) -> IntersectionLattice {
        if self.is_coordinate() {
            coordinate_lattice(self)
        } else {
            general_lattice(self)
        }
    }

    /// Lattice built through explicit bases and row-space intersection even
    /// when every member is a coordinate subspace.
    pub fn intersection_lattice_general(&self) -> IntersectionLattice {
        general_lattice(&self.to_general())
    }
}

fn coordinate_points(face: Face, ell: usize, q: u8) -> Vec<Point> {
    let support: Vec<usize> = face.vertices().map(|v| v - 1).collect();
    let total = (q as usize).pow(support.len() as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0u8; support.len()];
    for _ in 0..total {
        let mut p = vec![0u8; ell];
        for (&c, &d) in support.iter().zip(&digits) {
            p[c] = d;
        }
        out.push(p);
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeElement {
    /// Row-reduced basis; structural equality of bases is subspace equality.
    pub basis: PrimeFieldMatrix,
    pub dim: usize,
    pub mobius: i64,
}

/// L(A) ordered by reverse inclusion, with V (the empty intersection) on top.
///
/// If V is itself a member of A, the empty intersection and that member
/// coincide as subspaces; their Möbius values are merged, so μ(V) = 1 − 1 = 0
/// and χ vanishes, matching an empty complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    ell: usize,
    q: u8,
    elements: Vec<LatticeElement>,
    whole_space_member: bool,
}

impl IntersectionLattice {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Elements by decreasing dimension; element 0 is V.
    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn has_whole_space_member(&self) -> bool {
        self.whole_space_member
    }

    pub fn index_of(&self, basis: &PrimeFieldMatrix) -> Option<usize> {
        self.elements.iter().position(|e| &e.basis == basis)
    }

    pub fn characteristic_polynomial(&self) -> CharacteristicPolynomial {
        let mut coefficients = vec![0i64; self.ell + 1];
        for e in &self.elements {
            coefficients[e.dim] += e.mobius;
        }
        CharacteristicPolynomial { coefficients }
    }

    /// |P(A)| predicted as q^ℓ − χ(A, q).
    pub fn athanasiadis_count(&self, q: u32) -> i128 {
        (q as i128).pow(self.ell as u32) - self.characteristic_polynomial().evaluate(q as i64)
    }
}

/// χ(A, t) = Σ μ(X) t^dim X, stored by ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicPolynomial {
    pub coefficients: Vec<i64>,
}

impl CharacteristicPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn evaluate(&self, t: i64) -> i128 {
        self.coefficients
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * t as i128 + c as i128)
    }

    /// Coefficients from degree ℓ down to 0.
    pub fn descending(&self) -> Vec<i64> {
        self.coefficients.iter().rev().copied().collect()
    }
}

impl fmt::Display for CharacteristicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.descending().iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Closure of the members under intersection, indexed by a key type with
/// structural equality. `meet` intersects two keys and `contains(y, x)`
/// tests y ⊇ x.
fn close_and_mobius<K, M, C>(
    top: K,
    members: Vec<K>,
    dim: impl Fn(&K) -> usize,
    meet: M,
    contains: C,
) -> (Vec<(K, i64)>, bool)
where
    K: Clone + Ord,
    M: Fn(&K, &K) -> K,
    C: Fn(&K, &K) -> bool,
{
    let whole = members.contains(&top);
    let mut members = members;
    members.sort();
    members.dedup();
    let mut seen: BTreeSet<K> = members.iter().cloned().collect();
    seen.insert(top.clone());
    let mut frontier: Vec<K> = members.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for m in &members {
                let y = meet(x, m);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<K> = seen.into_iter().collect();
    // V first; otherwise by decreasing dimension, ties broken by key order.
    elements.sort_by(|a, b| {
        (b == &top)
            .cmp(&(a == &top))
            .then(dim(b).cmp(&dim(a)))
            .then(a.cmp(b))
    });
    let mut mobius: Vec<i64> = Vec::with_capacity(elements.len());
    for (i, x) in elements.iter().enumerate() {
        let mu = if i == 0 {
            1 - whole as i64
        } else {
            -(0..i)
                .filter(|&j| dim(&elements[j]) > dim(x) && contains(&elements[j], x))
                .map(|j| mobius[j])
                .sum::<i64>()
        };
        mobius.push(mu);
    }
    (elements.into_iter().zip(mobius).collect(), whole)
}

/// Keeps V first and orders the rest by decreasing dimension, then by basis
/// rows, so both construction paths list elements identically.
fn canonical_order(mut elements: Vec<LatticeElement>) -> Vec<LatticeElement> {
    elements[1..].sort_by(|a, b| {
        b.dim
            .cmp(&a.dim)
            .then_with(|| a.basis.to_rows().cmp(&b.basis.to_rows()))
    });
    elements
}

fn coordinate_lattice(a: &SubspaceArrangement) -> IntersectionLattice {
    let full = if a.ell == 0 {
        0
    } else {
        u32::MAX >> (32 - a.ell)
    };
    let members: Vec<u32> = a
        .subspaces
        .iter()
        .map(|s| match s {
            Subspace::Coordinate(f) => f.mask(),
            Subspace::General(_) => unreachable!("coordinate arrangement"),
        })
        .collect();
    let (pairs, whole) = close_and_mobius(
        full,
        members,
        |m| m.count_ones() as usize,
        |x, y| x & y,
        |y, x| x & !y == 0,
    );
    IntersectionLattice {
        ell: a.ell,
        q: a.q,
        elements: canonical_order(
            pairs
                .into_iter()
                .map(|(mask, mobius)| {
                    let face = Face::from_mask(mask);
                    LatticeElement {
                        basis: coordinate_basis(face, a.ell, a.q),
                        dim: face.len(),
                        mobius,
                    }
                })
                .collect(),
        ),
        whole_space_member: whole,
    }
}

fn general_lattice(a: &SubspaceArrangement) -> IntersectionLattice {
    let q = a.q;
    let ell = a.ell;
    let top = PrimeFieldMatrix::identity(q as u32, ell)
        .expect("q checked")
        .to_rows();
    let members: Vec<Vec<Vec<u8>>> = (0..a.subspaces.len())
        .map(|i| a.basis(i).to_rows())
        .collect();
    let to_matrix = |rows: &Vec<Vec<u8>>| {
        PrimeFieldMatrix::from_rows(q as u32, ell, rows).expect("rows have ambient width")
    };
    let (pairs, whole) = close_and_mobius(
        top,
        members,
        |rows| rows.len(),
        |x, y| {
            intersect_row_spaces(&to_matrix(x), &to_matrix(y))
                .expect("same ambient space")
                .to_rows()
        },
        |y, x| {
            let ym = to_matrix(y);
            ym.vstack(&to_matrix(x)).expect("same width").rank() == y.len()
        },
    );
    IntersectionLattice {
        ell,
        q,
        elements: pairs
            .into_iter()
            .map(|(rows, mobius)| LatticeElement {
                dim: rows.len(),
                basis: to_matrix(&rows),
                mobius,
            })
            .collect(),
        whole_space_member: whole,
    }
}
