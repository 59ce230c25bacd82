//! Binary Hamming codes and a certificate that a code is one, up to column
//! permutation.
//!
//! A binary [2^r − 1, 2^r − 1 − r] code is a Hamming code exactly when some
//! parity check has pairwise distinct nonzero columns; that is also what
//! forces d = 3. The certificate is the parity check read off the standard
//! form [I | A] of the generator.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evalcode::EvaluationCode;
use crate::linalg::PrimeFieldMatrix;
use crate::params::{self, DistanceOptions, Method};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityCheck {
    pub matrix: PrimeFieldMatrix,
}

impl ParityCheck {
    pub fn r(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// True when no column is zero and no two columns coincide.
    pub fn columns_distinct_nonzero(&self) -> bool {
        let t = self.matrix.transpose();
        let mut seen = HashSet::new();
        (0..t.rows()).all(|c| {
            let col = t.row(c);
            col.iter().any(|&e| e != 0) && seen.insert(col)
        })
    }

    /// G · Hᵀ = 0.
    pub fn annihilates(&self, g: &PrimeFieldMatrix) -> Result<bool> {
        Ok(g.mul(&self.matrix.transpose())?.is_zero())
    }
}

/// Hamming code of redundancy r: H lists 1..2^r − 1 as r-bit columns,
/// most significant bit in the first row; G is a null-space basis of H.
pub fn hamming_code(r: usize) -> Result<(PrimeFieldMatrix, ParityCheck)> {
    if !(2..=20).contains(&r) {
        return Err(Error::Range(format!(
            "hamming redundancy must be in 2..=20, got {r}"
        )));
    }
    let n = (1usize << r) - 1;
    let mut h = PrimeFieldMatrix::zeros(2, r, n)?;
    for c in 0..n {
        let value = c + 1;
        for row in 0..r {
            h.set(row, c, (value >> (r - 1 - row) & 1) as u8);
        }
    }
    Ok((h.null_space(), ParityCheck { matrix: h }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardForm {
    /// [I_k | A] in permuted coordinates.
    pub generator: PrimeFieldMatrix,
    /// Column i of `generator` is column `permutation[i]` of the input.
    pub permutation: Vec<usize>,
    /// Rows dropped because the input was rank deficient.
    pub dropped_rows: usize,
}

impl StandardForm {
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// [−Aᵀ | I_{n−k}] in permuted coordinates.
    pub fn parity_check(&self) -> ParityCheck {
        let (k, n) = (self.generator.rows(), self.generator.cols());
        let q = self.generator.q();
        let mut h = PrimeFieldMatrix::zeros(q as u32, n - k, n).expect("modulus already checked");
        for i in 0..n - k {
            for row in 0..k {
                let a = self.generator.get(row, k + i);
                h.set(i, row, (q - a) % q);
            }
            h.set(i, k + i, 1);
        }
        ParityCheck { matrix: h }
    }

    /// Moves a matrix on permuted coordinates back to the input's columns.
    pub fn unpermute(&self, m: &PrimeFieldMatrix) -> PrimeFieldMatrix {
        let mut inverse = vec![0; self.permutation.len()];
        for (i, &p) in self.permutation.iter().enumerate() {
            inverse[p] = i;
        }
        m.select_columns(&inverse)
    }
}

/// Row reduces, drops zero rows and moves pivot columns to the front.
pub fn standard_form(g: &PrimeFieldMatrix) -> Result<StandardForm> {
    let red = g.rref();
    if red.rank == 0 {
        return Err(Error::ZeroCode);
    }
    let mut permutation = red.pivot_columns.clone();
    permutation.extend((0..g.cols()).filter(|c| !red.pivot_columns.contains(c)));
    Ok(StandardForm {
        generator: red.basis().select_columns(&permutation),
        permutation,
        dropped_rows: g.rows() - red.rank,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HammingVerdict {
    pub equivalent: bool,
    /// Redundancy when n has the form 2^r − 1.
    pub r: Option<usize>,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub method: Option<Method>,
    /// Parity check in the code's own column order.
    pub certificate: Option<ParityCheck>,
    pub reason: String,
}

pub fn is_hamming_equivalent(
    code: &EvaluationCode,
    opts: &DistanceOptions,
) -> Result<HammingVerdict> {
    is_hamming_generator(code.generator(), opts)
}

pub fn is_hamming_generator(
    g: &PrimeFieldMatrix,
    opts: &DistanceOptions,
) -> Result<HammingVerdict> {
    if g.q() != 2 {
        return Err(Error::Unsupported(
            "Hamming equivalence is binary only".into(),
        ));
    }
    let n = g.cols();
    let k = g.rank();
    let r = (n + 1)
        .is_power_of_two()
        .then(|| (n + 1).trailing_zeros() as usize);
    let mut verdict = HammingVerdict {
        equivalent: false,
        r,
        n,
        k,
        d: None,
        method: None,
        certificate: None,
        reason: String::new(),
    };
    let Some(r) = r.filter(|&r| r >= 2) else {
        verdict.reason = format!("n = {n} is not 2^r - 1 with r >= 2");
        return Ok(verdict);
    };
    if k + r != n {
        verdict.reason = format!("k = {k}, expected {}", n - r);
        return Ok(verdict);
    }
    let sf = standard_form(g)?;
    let certificate = ParityCheck {
        matrix: sf.unpermute(&sf.parity_check().matrix),
    };
    let md = params::min_distance(g, opts)?;
    verdict.d = Some(md.d);
    verdict.method = Some(md.method);
    let distinct = certificate.columns_distinct_nonzero();
    let annihilates = certificate.annihilates(g)?;
    verdict.equivalent = md.d == 3 && distinct && annihilates;
    verdict.reason = if verdict.equivalent {
        "parity check columns are the distinct nonzero vectors".into()
    } else if !annihilates {
        "parity check does not annihilate the generator".into()
    } else if !distinct {
        "parity check has repeated or zero columns".into()
    } else {
        format!("d = {}", md.d)
    };
    verdict.certificate = Some(certificate);
    Ok(verdict)
}
