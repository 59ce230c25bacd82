//! Evaluation codes C(A, j): rows are the monomials of degree ≤ j, columns
//! are the points of the arrangement, and entry (r, c) is monomial r
//! evaluated at point c.
//!
//! For the binary skeleton codes K(ℓ, h, j) the columns are grouped by
//! Hamming weight, which makes the blocks B_rs (degree-r monomials against
//! weight-s points) contiguous submatrices.

use std::fmt;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::SubspaceArrangement;
use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::linalg::{mul_mod, Point, PrimeFieldMatrix};
use crate::simplicial::{subsets_of_size, Face, MAX_VERTICES};

/// x_1^{e_1} ⋯ x_ℓ^{e_ℓ} with every exponent below q.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Monomial {
    pub exponents: Vec<u8>,
}

impl Monomial {
    pub fn constant(ell: usize) -> Self {
        Self {
            exponents: vec![0; ell],
        }
    }

    /// The square-free monomial x_σ.
    pub fn from_face(ell: usize, face: Face) -> Self {
        let mut exponents = vec![0; ell];
        for v in face.vertices() {
            exponents[v - 1] = 1;
        }
        Self { exponents }
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    /// Support as a face, meaningful for square-free monomials.
    pub fn support(&self) -> Face {
        Face::from_mask(
            self.exponents
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0, |m, (i, _)| m | 1 << i),
        )
    }

    pub fn is_square_free(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monomials spanning S_{≤j} as functions on GF(q)^ℓ, in degree-lex order:
/// by degree, then earlier variables first (x1 before x2, x1x2 before x1x3).
pub fn monomial_basis(ell: usize, j: usize, q: u32) -> Vec<Monomial> {
    let cap = (q.saturating_sub(1)).min(255) as u8;
    let mut out = Vec::new();
    let mut current = vec![0u8; ell];
    fn rec(pos: usize, left: usize, cap: u8, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if pos == cur.len() {
            out.push(Monomial {
                exponents: cur.clone(),
            });
            return;
        }
        for e in 0..=cap.min(left.min(255) as u8) {
            cur[pos] = e;
            rec(pos + 1, left - e as usize, cap, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, j, cap, &mut current, &mut out);
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.exponents.cmp(&a.exponents))
    });
    out
}

/// Π p_i^{e_i} mod q, with 0^0 = 1.
pub fn evaluate(m: &Monomial, p: &[u8], q: u8) -> u8 {
    debug_assert_eq!(m.exponents.len(), p.len());
    let mut acc = 1u8 % q;
    for (&e, &x) in m.exponents.iter().zip(p) {
        for _ in 0..e {
            acc = mul_mod(acc, x, q);
        }
    }
    acc
}

/// Column order of an evaluation code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum PointOrder {
    /// By Hamming weight, then lexicographically on the list of nonzero
    /// (coordinate, value) pairs. Weight classes are contiguous.
    #[default]
    Graded,
    /// Lexicographically on the list of nonzero (coordinate, value) pairs
    /// alone, a prefix sorting first: 000, 100, 110, 101, 010, 011, 001.
    SupportLex,
}

fn support_key(p: &[u8]) -> Vec<(usize, u8)> {
    p.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x))
        .collect()
}

pub fn hamming_weight(p: &[u8]) -> usize {
    p.iter().filter(|&&x| x != 0).count()
}

pub fn sort_points(points: &mut [Point], order: PointOrder) {
    match order {
        PointOrder::Graded => points.sort_by_cached_key(|p| (hamming_weight(p), support_key(p))),
        PointOrder::SupportLex => points.sort_by_cached_key(|p| support_key(p)),
    }
}

/// Position of one block B_rs inside the generator matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockIndex {
    /// Monomial degree of the rows.
    pub r: usize,
    /// Hamming weight of the column points.
    pub s: usize,
    pub rows: Range<usize>,
    pub cols: Range<usize>,
}

/// Row ranges per degree and column ranges per weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub row_blocks: Vec<Range<usize>>,
    pub col_blocks: Vec<Range<usize>>,
}

impl BlockLayout {
    pub fn blocks(&self) -> Vec<BlockIndex> {
        let mut out = Vec::new();
        for (r, rows) in self.row_blocks.iter().enumerate() {
            for (s, cols) in self.col_blocks.iter().enumerate() {
                out.push(BlockIndex {
                    r,
                    s,
                    rows: rows.clone(),
                    cols: cols.clone(),
                });
            }
        }
        out
    }
}

fn group_ranges(keys: impl Iterator<Item = usize>) -> Option<Vec<Range<usize>>> {
    let mut ranges: Vec<Range<usize>> = Vec::new();
    let mut last = 0;
    for (i, k) in keys.enumerate() {
        if k < last {
            return None;
        }
        // classes with no members keep an empty range
        while ranges.len() <= k {
            ranges.push(i..i);
        }
        ranges[k].end = i + 1;
        last = k;
    }
    Some(ranges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationCode {
    q: u8,
    points: Vec<Point>,
    monomials: Vec<Monomial>,
    generator: PrimeFieldMatrix,
    order: PointOrder,
    source: String,
    blocks: Option<BlockLayout>,
}

impl EvaluationCode {
    fn assemble(
        q: u8,
        points: Vec<Point>,
        monomials: Vec<Monomial>,
        order: PointOrder,
        source: String,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let n = points.len();
        let generator = if q == 2 {
            let rows: Vec<BitVector> = monomials
                .par_iter()
                .map(|m| BitVector::from_bits(points.iter().map(|p| evaluate(m, p, 2) == 1)))
                .collect();
            PrimeFieldMatrix::from_bit_rows(n, rows)?
        } else {
            let rows: Vec<Vec<u8>> = monomials
                .par_iter()
                .map(|m| points.iter().map(|p| evaluate(m, p, q)).collect())
                .collect();
            PrimeFieldMatrix::from_rows(q as u32, n, &rows)?
        };
        let blocks = match order {
            PointOrder::Graded => {
                let rows = group_ranges(monomials.iter().map(Monomial::degree));
                let cols = group_ranges(points.iter().map(|p| hamming_weight(p)));
                rows.zip(cols).map(|(row_blocks, col_blocks)| BlockLayout {
                    row_blocks,
                    col_blocks,
                })
            }
            PointOrder::SupportLex => None,
        };
        Ok(Self {
            q,
            points,
            monomials,
            generator,
            order,
            source,
            blocks,
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn generator(&self) -> &PrimeFieldMatrix {
        &self.generator
    }

    pub fn order(&self) -> PointOrder {
        self.order
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Block layout; present for graded column order.
    pub fn blocks(&self) -> Option<&BlockLayout> {
        self.blocks.as_ref()
    }

    fn layout(&self) -> Result<&BlockLayout> {
        self.blocks
            .as_ref()
            .ok_or_else(|| Error::Unsupported("block structure needs graded column order".into()))
    }

    /// B_rs: degree-r rows against weight-s columns.
    pub fn block(&self, r: usize, s: usize) -> Result<PrimeFieldMatrix> {
        let l = self.layout()?;
        let rows = l
            .row_blocks
            .get(r)
            .ok_or_else(|| Error::Range(format!("row block {r}")))?;
        let cols = l
            .col_blocks
            .get(s)
            .ok_or_else(|| Error::Range(format!("column block {s}")))?;
        Ok(self.generator.submatrix(rows.clone(), cols.clone()))
    }

    /// RB_t: every row of degree t.
    pub fn row_block(&self, t: usize) -> Result<PrimeFieldMatrix> {
        let l = self.layout()?;
        let rows = l
            .row_blocks
            .get(t)
            .ok_or_else(|| Error::Range(format!("row block {t}")))?;
        Ok(self.generator.submatrix(rows.clone(), 0..self.n()))
    }

    /// CB_t: every column whose point has weight t.
    pub fn column_block(&self, t: usize) -> Result<PrimeFieldMatrix> {
        let l = self.layout()?;
        let cols = l
            .col_blocks
            .get(t)
            .ok_or_else(|| Error::Range(format!("column block {t}")))?;
        Ok(self
            .generator
            .submatrix(0..self.generator.rows(), cols.clone()))
    }

    /// The generator in matrix text form, optionally preceded by `#` lines
    /// naming the row monomials and column points.
    pub fn to_text(&self, header: bool) -> String {
        let mut s = String::new();
        if header {
            let rows: Vec<String> = self.monomials.iter().map(|m| m.to_string()).collect();
            let cols: Vec<String> = self.points.iter().map(|p| format_point(p)).collect();
            s.push_str(&format!("# code {}\n", self.source));
            s.push_str(&format!("# rows {}\n", rows.join(" ")));
            s.push_str(&format!("# cols {}\n", cols.join(" ")));
        }
        s.push_str(&self.generator.to_text());
        s
    }
}

pub fn format_point(p: &[u8]) -> String {
    let parts: Vec<String> = p.iter().map(u8::to_string).collect();
    format!("({})", parts.join(","))
}

/// C(A, j) with graded column order.
pub fn build_code(a: &SubspaceArrangement, j: usize) -> Result<EvaluationCode> {
    build_code_ordered(a, j, PointOrder::Graded)
}

pub fn build_code_ordered(
    a: &SubspaceArrangement,
    j: usize,
    order: PointOrder,
) -> Result<EvaluationCode> {
    let mut points = a.points();
    sort_points(&mut points, order);
    let monomials = monomial_basis(a.ell(), j, a.q() as u32);
    let source = format!("C(A,{j}) over GF({})^{}", a.q(), a.ell());
    EvaluationCode::assemble(a.q(), points, monomials, order, source)
}

fn check_skeleton_params(ell: usize, h: usize, j: usize) -> Result<()> {
    if !(j <= h && h <= ell) {
        return Err(Error::Range(format!(
            "K(ℓ,h,j) needs 0 ≤ j ≤ h ≤ ℓ, got ({ell},{h},{j})"
        )));
    }
    if ell > MAX_VERTICES {
        return Err(Error::Range(format!("ℓ = {ell} exceeds {MAX_VERTICES}")));
    }
    Ok(())
}

fn face_point(ell: usize, face: Face) -> Point {
    (1..=ell).map(|v| face.contains(v) as u8).collect()
}

/// The binary skeleton code K(ℓ, h, j) in graded column order, with its
/// B_rs block layout.
pub fn skeleton_code(ell: usize, h: usize, j: usize) -> Result<EvaluationCode> {
    skeleton_code_ordered(ell, h, j, PointOrder::Graded)
}

pub fn skeleton_code_ordered(
    ell: usize,
    h: usize,
    j: usize,
    order: PointOrder,
) -> Result<EvaluationCode> {
    check_skeleton_params(ell, h, j)?;
    let mut supports: Vec<Face> = (0..=h).flat_map(|w| subsets_of_size(ell, w)).collect();
    if order == PointOrder::SupportLex {
        supports.sort_by_key(|f| f.vertices().collect::<Vec<_>>());
    }
    let monomials: Vec<Monomial> = (0..=j)
        .flat_map(|d| subsets_of_size(ell, d))
        .map(|f| Monomial::from_face(ell, f))
        .collect();
    let points: Vec<Point> = supports.iter().map(|&f| face_point(ell, f)).collect();
    EvaluationCode::assemble(2, points, monomials, order, format!("K({ell},{h},{j})"))
}

/// Row x_σ of the skeleton matrix G(ℓ, h, ℓ) in graded column order: bit τ
/// is set iff σ ⊆ τ. Rows of degree above j are not part of K(ℓ, h, j) but
/// share its columns.
pub fn skeleton_row(ell: usize, h: usize, sigma: Face) -> BitVector {
    BitVector::from_bits(
        (0..=h)
            .flat_map(|w| subsets_of_size(ell, w))
            .map(|tau| sigma.is_subset_of(tau)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialComplex;

    fn mono(s: &str, ell: usize) -> Monomial {
        if s == "1" {
            return Monomial::constant(ell);
        }
        let vs: Vec<usize> = s
            .split('x')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().unwrap())
            .collect();
        Monomial::from_face(ell, Face::new(ell, &vs).unwrap())
    }

    fn planes(q: u32) -> SubspaceArrangement {
        let tri = SimplicialComplex::skeleton(3, 2).unwrap();
        SubspaceArrangement::coordinate(&tri, q).unwrap()
    }

    #[test]
    fn monomial_bases() {
        assert_eq!(
            monomial_basis(3, 1, 2),
            ["1", "x1", "x2", "x3"].map(|s| mono(s, 3))
        );
        assert_eq!(monomial_basis(2, 0, 2), vec![Monomial::constant(2)]);
        // every square-free mask of degree ≤ 2, sorted by degree then lex
        let mut masks: Vec<Face> = (0u32..8)
            .map(Face::from_mask)
            .filter(|f| f.len() <= 2)
            .collect();
        masks.sort();
        let expected: Vec<Monomial> = masks
            .into_iter()
            .map(|f| Monomial::from_face(3, f))
            .collect();
        assert_eq!(monomial_basis(3, 2, 2), expected);
        assert_eq!(
            monomial_basis(3, 2, 2)
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>(),
            ["1", "x1", "x2", "x3", "x1x2", "x1x3", "x2x3"]
        );
        let cubic = monomial_basis(2, 2, 3);
        assert_eq!(
            cubic.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            ["1", "x1", "x2", "x1^2", "x1x2", "x2^2"]
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(evaluate(&Monomial::constant(3), &[0, 1, 0], 2), 1);
        assert_eq!(evaluate(&mono("x1", 3), &[1, 1, 0], 2), 1);
        assert_eq!(evaluate(&mono("x3", 3), &[1, 1, 0], 2), 0);
        assert_eq!(evaluate(&mono("x1x2", 2), &[1, 2], 3), 2);
        let sq = Monomial {
            exponents: vec![2, 0],
        };
        assert_eq!(evaluate(&sq, &[2, 0], 3), 1);
    }

    const EXAMPLE_743: [[u8; 7]; 4] = [
        [1, 1, 1, 1, 1, 1, 1],
        [0, 1, 1, 1, 0, 0, 0],
        [0, 0, 1, 0, 1, 1, 0],
        [0, 0, 0, 1, 0, 1, 1],
    ];

    #[test]
    fn planes_code_in_support_lex_order() {
        let code = build_code_ordered(&planes(2), 1, PointOrder::SupportLex).unwrap();
        assert_eq!(
            code.points(),
            &[
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 0, 1]
            ]
        );
        assert_eq!(
            code.generator().to_rows(),
            EXAMPLE_743.map(|r| r.to_vec()).to_vec()
        );
        let k = skeleton_code_ordered(3, 2, 1, PointOrder::SupportLex).unwrap();
        assert_eq!(k.generator(), code.generator());
    }

    #[test]
    fn skeleton_code_equals_arrangement_code() {
        for (ell, h, j) in [(3, 2, 1), (4, 2, 2), (5, 3, 1), (4, 4, 3), (3, 0, 0)] {
            let k = skeleton_code(ell, h, j).unwrap();
            let s = SimplicialComplex::skeleton(ell, h).unwrap();
            let a = SubspaceArrangement::coordinate(&s, 2).unwrap();
            let c = build_code(&a, j).unwrap();
            assert_eq!(k.generator(), c.generator(), "K({ell},{h},{j})");
            assert_eq!(k.points(), c.points());
        }
    }

    #[test]
    fn reed_muller_and_origin_cases() {
        let full = SimplicialComplex::full_simplex(4).unwrap();
        let rm = build_code(&SubspaceArrangement::coordinate(&full, 2).unwrap(), 1).unwrap();
        assert_eq!(rm.n(), 16);
        assert_eq!(rm.generator().rows(), 5);

        let origin = crate::arrangement::Subspace::Coordinate(Face::EMPTY);
        let a = SubspaceArrangement::new(3, 2, vec![origin]).unwrap();
        let c = build_code(&a, 2).unwrap();
        assert_eq!(c.n(), 1);
        assert_eq!(c.generator().row(0), vec![1]);
        assert!((1..c.generator().rows()).all(|r| c.generator().row(r) == vec![0]));

        let empty = SubspaceArrangement::new(3, 2, vec![]).unwrap();
        assert_eq!(build_code(&empty, 1), Err(Error::EmptyPointSet));
    }

    #[test]
    fn constant_row_code() {
        let k = skeleton_code(5, 3, 0).unwrap();
        assert_eq!(k.generator().rows(), 1);
        assert_eq!(k.n(), 1 + 5 + 10 + 10);
        assert_eq!(k.generator().row_weight(0), 26);
        assert!(matches!(skeleton_code(3, 2, 3), Err(Error::Range(_))));
        assert!(matches!(skeleton_code(3, 4, 1), Err(Error::Range(_))));
    }

    #[test]
    fn blocks_of_k321() {
        let k = skeleton_code(3, 2, 1).unwrap();
        let rb1 = k.row_block(1).unwrap();
        assert_eq!(rb1.rows(), 3);
        assert_eq!(rb1.row(0), vec![0, 1, 0, 0, 1, 1, 0]);
        let cb0 = k.column_block(0).unwrap();
        assert_eq!(cb0.to_rows(), vec![vec![1], vec![0], vec![0], vec![0]]);
        assert_eq!(
            k.block(1, 1).unwrap(),
            PrimeFieldMatrix::identity(2, 3).unwrap()
        );
        assert!(matches!(k.row_block(2), Err(Error::Range(_))));
        assert!(matches!(k.column_block(3), Err(Error::Range(_))));
        let layout = k.blocks().unwrap();
        assert_eq!(layout.row_blocks, vec![0..1, 1..4]);
        assert_eq!(layout.col_blocks, vec![0..1, 1..4, 4..7]);
        let lex = skeleton_code_ordered(3, 2, 1, PointOrder::SupportLex).unwrap();
        assert!(lex.block(0, 0).is_err());
    }

    #[test]
    fn skeleton_row_matches_generator_rows() {
        let k = skeleton_code(5, 3, 3).unwrap();
        for (r, m) in k.monomials().iter().enumerate() {
            let row = skeleton_row(5, 3, m.support());
            assert_eq!(&row, &k.generator().bit_rows().unwrap()[r]);
        }
    }

    #[test]
    fn annotated_text() {
        let k = skeleton_code(3, 1, 1).unwrap();
        assert_eq!(
            k.to_text(true),
            "# code K(3,1,1)\n# rows 1 x1 x2 x3\n# cols (0,0,0) (1,0,0) (0,1,0) (0,0,1)\n\
             4 4 2\n1 1 1 1\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"
        );
    }
}
