//! Exact code parameters: dimension by rank, minimum distance by exhaustive
//! Gray-code enumeration or by Brouwer–Zimmermann information sets, and
//! full weight distributions.
//!
//! Both distance engines run on a row-reduced basis of the generator, so
//! dependent generator rows never enlarge the search.

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::evalcode::EvaluationCode;
use crate::linalg::{add_mod, PrimeFieldMatrix};

/// Default largest dimension searched exhaustively.
pub const DEFAULT_K_CAP: usize = 26;
/// Largest q^k the weight distribution will enumerate.
pub const WEIGHT_DISTRIBUTION_CAP: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    InformationSet,
    Formula,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::InformationSet => "information_set",
            Method::Formula => "formula",
        })
    }
}

/// [n, k, d] with the provenance of d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub method: Option<Method>,
}

impl std::fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.d {
            Some(d) => write!(f, "[{},{},{}]", self.n, self.k, d),
            None => write!(f, "[{},{},?]", self.n, self.k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinDistance {
    pub d: usize,
    /// A codeword of weight d.
    pub witness: Vec<u8>,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    /// counts[w] = number of codewords of weight w, for w = 0..=n.
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Smallest nonzero weight that occurs, if any.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts
            .iter()
            .skip(1)
            .position(|&c| c > 0)
            .map(|w| w + 1)
    }
}

/// Which engine computes d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Exhaustive up to `k_cap`, information sets above it.
    #[default]
    Auto,
    Exhaustive,
    InformationSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceOptions {
    pub engine: Engine,
    /// Largest k for exhaustive search (q = 2); generic q needs q^k ≤ 2^k_cap.
    pub k_cap: usize,
    /// Largest k for the information-set engine; `None` means unbounded.
    pub is_k_cap: Option<usize>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            engine: Engine::Auto,
            k_cap: DEFAULT_K_CAP,
            is_k_cap: None,
        }
    }
}

fn basis_of(g: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix> {
    let basis = g.rref().basis();
    if basis.rows() == 0 {
        return Err(Error::ZeroCode);
    }
    Ok(basis)
}

/// n = column count and k = rank; d is left open.
pub fn parameters(code: &EvaluationCode) -> Result<CodeParameters> {
    generator_parameters(code.generator())
}

pub fn generator_parameters(g: &PrimeFieldMatrix) -> Result<CodeParameters> {
    let k = g.rank();
    if k == 0 {
        return Err(Error::ZeroCode);
    }
    Ok(CodeParameters {
        n: g.cols(),
        k,
        d: None,
        method: None,
    })
}

/// n, k and d, with d from the engine selected by `opts`.
pub fn parameters_with_distance(
    g: &PrimeFieldMatrix,
    opts: &DistanceOptions,
) -> Result<CodeParameters> {
    let mut p = generator_parameters(g)?;
    let md = min_distance(g, opts)?;
    p.d = Some(md.d);
    p.method = Some(md.method);
    Ok(p)
}

pub fn min_distance(g: &PrimeFieldMatrix, opts: &DistanceOptions) -> Result<MinDistance> {
    let k = g.rank();
    let exhaustive_ok = if g.q() == 2 {
        k <= opts.k_cap
    } else {
        (g.q() as f64).powi(k as i32) <= 2f64.powi(opts.k_cap as i32)
    };
    let is_ok = g.q() == 2 && opts.is_k_cap.is_none_or(|cap| k <= cap);
    match opts.engine {
        Engine::Exhaustive => min_distance_exhaustive(g, opts.k_cap),
        Engine::InformationSet => {
            if !is_ok {
                return Err(Error::CapExceeded(format!(
                    "k = {k} is beyond the information-set cap {:?} or q ≠ 2",
                    opts.is_k_cap
                )));
            }
            min_distance_information_set(g)
        }
        Engine::Auto if exhaustive_ok => min_distance_exhaustive(g, opts.k_cap),
        Engine::Auto if is_ok => min_distance_information_set(g),
        Engine::Auto => Err(Error::CapExceeded(format!(
            "k = {k} is beyond both engine caps"
        ))),
    }
}

/// Number of leading message digits fixed per parallel chunk.
fn chunk_digits(k: usize, q: u64) -> usize {
    let mut p = 0;
    let mut chunks = 1u64;
    while p < k && chunks < 64 && k - p > 4 {
        chunks *= q;
        p += 1;
    }
    p
}

/// Visits every codeword of the binary code spanned by `rows` exactly once.
/// The message space is split on its top bits; each chunk runs its own
/// Gray sequence over the remaining bits, flipping one row per step.
fn binary_scan<A, I, V>(rows: &[BitVector], init: I, visit: V) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[u64]) + Sync,
{
    let k = rows.len();
    let top = chunk_digits(k, 2);
    let low = k - top;
    let words: Vec<&[u64]> = rows.iter().map(|r| r.words()).collect();
    let width = rows.first().map_or(0, |r| r.words().len());
    (0u64..1 << top)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = init();
            let mut cur = vec![0u64; width];
            for b in 0..top {
                if chunk >> b & 1 == 1 {
                    for (c, w) in cur.iter_mut().zip(words[low + b]) {
                        *c ^= w;
                    }
                }
            }
            visit(&mut acc, &cur);
            if width == 1 {
                let mut c = cur[0];
                let single: Vec<u64> = words.iter().map(|w| w[0]).collect();
                for i in 1u64..1 << low {
                    c ^= single[i.trailing_zeros() as usize];
                    visit(&mut acc, std::slice::from_ref(&c));
                }
            } else {
                for i in 1u64..1 << low {
                    for (c, w) in cur.iter_mut().zip(words[i.trailing_zeros() as usize]) {
                        *c ^= w;
                    }
                    visit(&mut acc, &cur);
                }
            }
            acc
        })
        .collect()
}

/// Generic-q counterpart of [`binary_scan`]: a modular q-ary Gray sequence
/// where step i adds row v_q(i) (the q-adic valuation of i) once.
fn qary_scan<A, I, V>(rows: &[Vec<u8>], q: u8, init: I, visit: V) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[u8]) + Sync,
{
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let qq = q as u64;
    let top = chunk_digits(k, qq);
    let low = k - top;
    (0..qq.pow(top as u32))
        .into_par_iter()
        .map(|chunk| {
            let mut acc = init();
            let mut cur = vec![0u8; n];
            let mut rest = chunk;
            for b in 0..top {
                let digit = (rest % qq) as u8;
                rest /= qq;
                for _ in 0..digit {
                    for (c, &r) in cur.iter_mut().zip(&rows[low + b]) {
                        *c = add_mod(*c, r, q);
                    }
                }
            }
            visit(&mut acc, &cur);
            for i in 1..qq.pow(low as u32) {
                let mut m = i;
                let mut pos = 0;
                while m % qq == 0 {
                    m /= qq;
                    pos += 1;
                }
                for (c, &r) in cur.iter_mut().zip(&rows[pos]) {
                    *c = add_mod(*c, r, q);
                }
                visit(&mut acc, &cur);
            }
            acc
        })
        .collect()
}

fn unpack(words: &[u64], n: usize) -> Vec<u8> {
    (0..n)
        .map(|i| (words[i / 64] >> (i % 64) & 1) as u8)
        .collect()
}

/// d as the least weight over all q^k − 1 nonzero codewords.
pub fn min_distance_exhaustive(g: &PrimeFieldMatrix, k_cap: usize) -> Result<MinDistance> {
    let basis = basis_of(g)?;
    let k = basis.rows();
    let n = basis.cols();
    type Best = Option<(usize, Vec<u8>)>;
    let pick = |found: Vec<Best>| -> MinDistance {
        // lowest weight, earliest chunk on ties
        let (d, witness) = found
            .into_iter()
            .flatten()
            .min_by_key(|(w, _)| *w)
            .expect("a nonzero code has a nonzero codeword");
        MinDistance {
            d,
            witness,
            method: Method::Exhaustive,
        }
    };
    if g.q() == 2 {
        if k > k_cap {
            return Err(Error::CapExceeded(format!(
                "k = {k} > exhaustive cap {k_cap}"
            )));
        }
        let rows = basis.bit_rows().expect("binary storage").to_vec();
        let found = binary_scan(
            &rows,
            || None,
            |best: &mut Best, cw| {
                let w: usize = cw.iter().map(|x| x.count_ones() as usize).sum();
                if w > 0 && best.as_ref().is_none_or(|(b, _)| w < *b) {
                    *best = Some((w, unpack(cw, n)));
                }
            },
        );
        Ok(pick(found))
    } else {
        if (g.q() as f64).powi(k as i32) > 2f64.powi(k_cap as i32) {
            return Err(Error::CapExceeded(format!(
                "q^k = {}^{k} > 2^{k_cap}",
                g.q()
            )));
        }
        let rows = basis.to_rows();
        let found = qary_scan(
            &rows,
            g.q(),
            || None,
            |best: &mut Best, cw| {
                let w = cw.iter().filter(|&&x| x != 0).count();
                if w > 0 && best.as_ref().is_none_or(|(b, _)| w < *b) {
                    *best = Some((w, cw.to_vec()));
                }
            },
        );
        Ok(pick(found))
    }
}

/// A_w counts over every codeword, zero included.
pub fn weight_distribution(g: &PrimeFieldMatrix) -> Result<WeightDistribution> {
    let basis = g.rref().basis();
    let k = basis.rows();
    let n = basis.cols();
    let size = (g.q() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > WEIGHT_DISTRIBUTION_CAP {
        return Err(Error::CapExceeded(format!("q^k = {}^{k} > 2^24", g.q())));
    }
    let mut counts = vec![0u64; n + 1];
    if k == 0 {
        counts[0] = 1;
        return Ok(WeightDistribution { counts });
    }
    let parts: Vec<Vec<u64>> = if g.q() == 2 {
        let rows = basis.bit_rows().expect("binary storage").to_vec();
        binary_scan(
            &rows,
            || vec![0u64; n + 1],
            |acc, cw| {
                acc[cw.iter().map(|x| x.count_ones() as usize).sum::<usize>()] += 1;
            },
        )
    } else {
        qary_scan(
            &basis.to_rows(),
            g.q(),
            || vec![0u64; n + 1],
            |acc, cw| {
                acc[cw.iter().filter(|&&x| x != 0).count()] += 1;
            },
        )
    };
    for part in parts {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    Ok(WeightDistribution { counts })
}

/// One systematic generator: the first `rank` rows carry an identity on
/// `pivots`, the remaining rows vanish there.
struct InformationSet {
    rows: Vec<BitVector>,
    rank: usize,
}

/// Systematic generators on pairwise disjoint information sets, chosen
/// greedily left to right among columns not yet used.
fn disjoint_information_sets(basis: &[BitVector], n: usize) -> Vec<InformationSet> {
    let k = basis.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let mut rows = basis.to_vec();
        let mut pivots = Vec::new();
        for (c, &taken) in used.iter().enumerate() {
            if taken || pivots.len() == k {
                continue;
            }
            let next = pivots.len();
            let Some(p) = (next..k).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
        }
        if pivots.is_empty() {
            break;
        }
        for &c in &pivots {
            used[c] = true;
        }
        out.push(InformationSet {
            rank: pivots.len(),
            rows,
        });
        if used.iter().all(|&u| u) {
            break;
        }
    }
    out
}

/// Lightest codeword among all sums of exactly `w` rows; ties go to the
/// lexicographically first row selection.
fn lightest_combination(rows: &[BitVector], w: usize) -> Option<(usize, BitVector)> {
    fn rec(
        rows: &[BitVector],
        start: usize,
        left: usize,
        acc: &mut BitVector,
        best: &mut Option<(usize, BitVector)>,
    ) {
        if left == 0 {
            let wt = acc.weight();
            if wt > 0 && best.as_ref().is_none_or(|(b, _)| wt < *b) {
                *best = Some((wt, acc.clone()));
            }
            return;
        }
        for i in start..=rows.len() - left {
            acc.xor_assign(&rows[i]);
            rec(rows, i + 1, left - 1, acc, best);
            acc.xor_assign(&rows[i]);
        }
    }
    let k = rows.len();
    if w == 0 || w > k {
        return None;
    }
    let n = rows[0].len();
    (0..=k - w)
        .into_par_iter()
        .map(|first| {
            let mut acc = rows[first].clone();
            let mut best = None;
            rec(rows, first + 1, w - 1, &mut acc, &mut best);
            debug_assert_eq!(acc.len(), n);
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .min_by_key(|(wt, _)| *wt)
}

/// Brouwer–Zimmermann: enumerate messages of weight 1, 2, … under each
/// systematic generator; after all messages of weight ≤ w under generator
/// i are seen, any unseen codeword has weight at least
/// max(0, w + 1 − (k − rank_i)) on information set i. The search stops when
/// the summed lower bound reaches the best weight found.
pub fn min_distance_information_set(g: &PrimeFieldMatrix) -> Result<MinDistance> {
    if g.q() != 2 {
        return Err(Error::Unsupported(
            "information-set search is binary only".into(),
        ));
    }
    let basis = basis_of(g)?;
    let rows = basis.bit_rows().expect("binary storage").to_vec();
    let k = rows.len();
    let n = basis.cols();
    let sets = disjoint_information_sets(&rows, n);
    let mut best: Option<(usize, BitVector)> = None;
    let contribution = |w: usize, rank: usize| (w + 1).saturating_sub(k - rank);
    for w in 1..=k {
        for (i, set) in sets.iter().enumerate() {
            if let Some((wt, cw)) = lightest_combination(&set.rows, w) {
                if best.as_ref().is_none_or(|(b, _)| wt < *b) {
                    best = Some((wt, cw));
                }
            }
            let lower: usize = sets
                .iter()
                .enumerate()
                .map(|(t, s)| contribution(if t <= i { w } else { w - 1 }, s.rank))
                .sum();
            let (upper, _) = best
                .as_ref()
                .expect("weight-1 messages are rows of a basis");
            if lower >= *upper {
                return Ok(finish(best, n));
            }
        }
    }
    Ok(finish(best, n))
}

fn finish(best: Option<(usize, BitVector)>, n: usize) -> MinDistance {
    let (d, cw) = best.expect("nonzero code");
    debug_assert_eq!(cw.len(), n);
    MinDistance {
        d,
        witness: cw.iter().map(u8::from).collect(),
        method: Method::InformationSet,
    }
}

/// Whether `word` lies in the row space of `g`.
pub fn is_codeword(g: &PrimeFieldMatrix, word: &[u8]) -> Result<bool> {
    g.row_space_contains(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalcode::skeleton_code;

    /// Plain enumeration of all q^k messages against the raw generator.
    fn brute_distribution(g: &PrimeFieldMatrix) -> Vec<u64> {
        let basis = g.rref().basis();
        let q = g.q() as usize;
        let rows = basis.to_rows();
        let mut counts = vec![0u64; g.cols() + 1];
        for m in 0..q.pow(rows.len() as u32) {
            let mut cw = vec![0u8; g.cols()];
            let mut rest = m;
            for row in &rows {
                let c = (rest % q) as u32;
                rest /= q;
                for (x, &r) in cw.iter_mut().zip(row) {
                    *x = ((*x as u32 + c * r as u32) % q as u32) as u8;
                }
            }
            counts[cw.iter().filter(|&&x| x != 0).count()] += 1;
        }
        counts
    }

    #[test]
    fn small_skeleton_distances() {
        let k = skeleton_code(3, 2, 1).unwrap();
        let md = min_distance_exhaustive(k.generator(), DEFAULT_K_CAP).unwrap();
        assert_eq!(md.d, 3);
        assert_eq!(md.witness.iter().filter(|&&x| x == 1).count(), 3);
        assert!(is_codeword(k.generator(), &md.witness).unwrap());
        assert_eq!(
            min_distance_exhaustive(skeleton_code(5, 2, 1).unwrap().generator(), 26)
                .unwrap()
                .d,
            5
        );
    }

    #[test]
    fn parameters_of_examples() {
        let p = parameters(&skeleton_code(3, 2, 1).unwrap()).unwrap();
        assert_eq!((p.n, p.k, p.d), (7, 4, None));
        let p = parameters(&skeleton_code(5, 2, 1).unwrap()).unwrap();
        assert_eq!((p.n, p.k), (16, 6));
        assert_eq!(parameters(&skeleton_code(6, 3, 0).unwrap()).unwrap().k, 1);
        let z = PrimeFieldMatrix::zeros(2, 2, 3).unwrap();
        assert_eq!(generator_parameters(&z), Err(Error::ZeroCode));
        assert_eq!(min_distance_exhaustive(&z, 26), Err(Error::ZeroCode));
    }

    #[test]
    fn caps() {
        let k = skeleton_code(5, 4, 2).unwrap();
        assert!(matches!(
            min_distance_exhaustive(k.generator(), 10),
            Err(Error::CapExceeded(_))
        ));
        let opts = DistanceOptions {
            engine: Engine::Auto,
            k_cap: 10,
            is_k_cap: Some(12),
        };
        assert!(matches!(
            min_distance(k.generator(), &opts),
            Err(Error::CapExceeded(_))
        ));
        let opts = DistanceOptions {
            is_k_cap: Some(16),
            ..opts
        };
        let md = min_distance(k.generator(), &opts).unwrap();
        assert_eq!((md.d, md.method), (7, Method::InformationSet));
    }

    #[test]
    fn weight_distributions() {
        let wd = weight_distribution(skeleton_code(3, 2, 1).unwrap().generator()).unwrap();
        assert_eq!(wd.counts, vec![1, 0, 0, 7, 7, 0, 0, 1]);
        assert_eq!(wd.min_distance(), Some(3));

        let ones = PrimeFieldMatrix::new(2, 1, 5, &[1; 5]).unwrap();
        assert_eq!(
            weight_distribution(&ones).unwrap().counts,
            vec![1, 0, 0, 0, 0, 1]
        );

        let k521 = skeleton_code(5, 2, 1).unwrap();
        let wd = weight_distribution(k521.generator()).unwrap();
        assert_eq!(wd.total(), 64);
        assert!(wd.counts[1..5].iter().all(|&c| c == 0));
        assert!(wd.counts[5] > 0);
        assert_eq!(wd.counts, brute_distribution(k521.generator()));
    }

    #[test]
    fn qary_engines() {
        let g = PrimeFieldMatrix::new(3, 2, 4, &[1, 0, 1, 1, 0, 1, 1, 2]).unwrap();
        let wd = weight_distribution(&g).unwrap();
        assert_eq!(wd.counts, brute_distribution(&g));
        assert_eq!(wd.total(), 9);
        let md = min_distance_exhaustive(&g, 26).unwrap();
        assert_eq!(Some(md.d), wd.min_distance());
        assert!(is_codeword(&g, &md.witness).unwrap());

        let big = PrimeFieldMatrix::identity(5, 12).unwrap();
        assert!(matches!(
            min_distance_exhaustive(&big, 26),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn information_set_trivial_codes() {
        let row = PrimeFieldMatrix::new(2, 1, 6, &[1, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(min_distance_information_set(&row).unwrap().d, 4);
        let id = PrimeFieldMatrix::identity(2, 9).unwrap();
        assert_eq!(min_distance_information_set(&id).unwrap().d, 1);
        let g3 = PrimeFieldMatrix::identity(3, 2).unwrap();
        assert!(matches!(
            min_distance_information_set(&g3),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn engines_agree_on_small_skeletons() {
        for ell in 1..=6 {
            for h in 0..=ell {
                for j in 0..=h {
                    let g = skeleton_code(ell, h, j).unwrap();
                    if g.generator().rank() > 22 {
                        continue;
                    }
                    let a = min_distance_exhaustive(g.generator(), 26).unwrap();
                    let b = min_distance_information_set(g.generator()).unwrap();
                    assert_eq!(a.d, b.d, "K({ell},{h},{j})");
                    assert!(is_codeword(g.generator(), &b.witness).unwrap());
                    assert_eq!(b.witness.iter().filter(|&&x| x == 1).count(), b.d);
                }
            }
        }
    }
}
