//! Closed-form parameters of K(ℓ, h, j) and the weight formulas for sums of
//! generator rows.
//!
//! Binomials vanish outside 0 ≤ k ≤ n; every sum below relies on that.
//! Arithmetic is exact in `i128`, which covers ℓ ≤ 64 and families of up to
//! 60 rows without overflow.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::Face;

/// C(n, k), zero when k < 0, k > n or n < 0.
pub fn binom(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn range_err(what: &str, detail: String) -> Error {
    Error::Range(format!("{what}: {detail}"))
}

fn check_order(what: &str, lo: usize, mid: usize, hi: usize, names: &str) -> Result<()> {
    if lo <= mid && mid <= hi {
        Ok(())
    } else {
        Err(range_err(
            what,
            format!("need {names}, got ({lo},{mid},{hi})"),
        ))
    }
}

/// n = Σ_{i=0}^{h} C(ℓ, i).
pub fn closed_length(ell: usize, h: usize) -> Result<i128> {
    check_order("length", 0, h, ell, "0 ≤ h ≤ ℓ")?;
    Ok((0..=h).map(|i| binom(ell as i64, i as i64)).sum())
}

/// k = Σ_{i=0}^{j} C(ℓ, i).
pub fn closed_dimension(ell: usize, j: usize) -> Result<i128> {
    check_order("dimension", 0, j, ell, "0 ≤ j ≤ ℓ")?;
    Ok((0..=j).map(|i| binom(ell as i64, i as i64)).sum())
}

/// d(K(ℓ, h, 1)) = Σ_{a=1}^{h} C(ℓ−1, a−1).
pub fn theorem_main_distance(ell: usize, h: usize) -> Result<i128> {
    check_order("degree-one distance", 1, h, ell, "1 ≤ h ≤ ℓ")?;
    Ok((1..=h).map(|a| binom(ell as i64 - 1, a as i64 - 1)).sum())
}

/// Weight of one degree-j row: Σ_{i=0}^{h−j} C(ℓ−j, i), an upper bound on d.
pub fn upper_bound_distance(ell: usize, h: usize, j: usize) -> Result<i128> {
    check_order("row-weight bound", j, h, ell, "0 ≤ j ≤ h ≤ ℓ")?;
    Ok(row_weight(ell, h, j))
}

/// Weight of the row x_σ with |σ| = `size` over the points of Δ(ℓ, h);
/// zero when size > h.
pub fn row_weight(ell: usize, h: usize, size: usize) -> i128 {
    if size > h {
        return 0;
    }
    (0..=(h - size) as i64)
        .map(|i| binom(ell as i64 - size as i64, i))
        .sum()
}

/// c_t = (−2)^{t−1}: the multiplier that turns inclusion–exclusion over
/// t-fold intersections into a parity count.
pub fn ie_coefficient(t: u32) -> Result<i128> {
    if t == 0 {
        return Err(range_err("coefficient", "t ≥ 1".into()));
    }
    Ok((-2i128).pow(t - 1))
}

/// Σ_{r=1}^{t} C(t, r) c_r; equals 1 for odd t and 0 for even t.
pub fn ie_defining_sum(t: u32) -> Result<i128> {
    (1..=t)
        .map(|r| Ok(binom(t as i64, r as i64) * ie_coefficient(r)?))
        .sum()
}

/// Weight of the sum of s distinct degree-one rows of K(ℓ, h, 1):
/// Σ_{a=1}^{h} Σ_{t=1}^{s} (−2)^{t−1} C(s, t) C(ℓ−t, a−t).
pub fn weight_sum_rows_j1(ell: usize, h: usize, s: usize) -> Result<i128> {
    check_order("degree-one row sum", 1, s, ell, "1 ≤ s ≤ ℓ")?;
    if h > ell {
        return Err(range_err(
            "degree-one row sum",
            format!("h = {h} > ℓ = {ell}"),
        ));
    }
    let (l, s) = (ell as i64, s as i64);
    let mut total = 0i128;
    for a in 1..=h as i64 {
        for t in 1..=s {
            total += (-2i128).pow(t as u32 - 1) * binom(s, t) * binom(l - t, a - t);
        }
    }
    Ok(total)
}

/// Both sides of g_i^s = Σ_{t=1}^{i} C(s−t, i−t) C(s, t) (−2)^{t−1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GValue {
    pub sum: i128,
    /// Claimed closed form: C(s, i) for even i, 0 for odd i.
    pub closed: i128,
    /// Closed form the sum actually satisfies: C(s, i) for odd i, 0 for even i.
    /// Follows from C(s, t) C(s−t, i−t) = C(s, i) C(i, t).
    pub parity_swapped: i128,
}

impl GValue {
    /// Whether the sum matches the claimed closed form.
    pub fn agrees(&self) -> bool {
        self.sum == self.closed
    }

    pub fn agrees_swapped(&self) -> bool {
        self.sum == self.parity_swapped
    }
}

pub fn g_value(i: usize, s: usize) -> Result<GValue> {
    check_order("g", 1, i, s, "1 ≤ i ≤ s")?;
    let (i, s) = (i as i64, s as i64);
    let sum = (1..=i)
        .map(|t| binom(s - t, i - t) * binom(s, t) * (-2i128).pow(t as u32 - 1))
        .sum();
    let (even, odd) = if i % 2 == 0 {
        (binom(s, i), 0)
    } else {
        (0, binom(s, i))
    };
    Ok(GValue {
        sum,
        closed: even,
        parity_swapped: odd,
    })
}

/// Supports σ_1, …, σ_n of generator rows of K(ℓ, h, ·) whose sum is
/// weighed. The empty support is the constant row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaFamily {
    pub ell: usize,
    pub h: usize,
    pub sets: Vec<Face>,
}

impl SigmaFamily {
    pub fn new(ell: usize, h: usize, sets: Vec<Face>) -> Result<Self> {
        if h > ell {
            return Err(range_err("family", format!("h = {h} > ℓ = {ell}")));
        }
        if sets.is_empty() {
            return Err(range_err("family", "at least one support".into()));
        }
        for s in &sets {
            if let Some(v) = s.vertices().find(|&v| v > ell) {
                return Err(Error::VertexOutOfRange { vertex: v, ell });
            }
        }
        Ok(Self { ell, h, sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn with_sets(&self, sets: Vec<Face>) -> Self {
        Self {
            ell: self.ell,
            h: self.h,
            sets,
        }
    }

    fn is_distinct(&self) -> bool {
        let mut v = self.sets.clone();
        v.sort();
        v.windows(2).all(|w| w[0] != w[1])
    }
}

/// B(σ_1, …, σ_n) = Σ_{e=1}^{n} (−2)^{e−1} Σ_{|I|=e} Σ_{i=0}^{h−|∪σ_I|} C(ℓ−|∪σ_I|, i),
/// reading each union as a row of the full matrix G(ℓ, h, ℓ).
pub fn b_weight(family: &SigmaFamily) -> i128 {
    let n = family.sets.len();
    assert!(n < 64, "family too large for subset enumeration");
    let mut total = 0i128;
    for subset in 1u64..1 << n {
        let union = (0..n)
            .filter(|i| subset >> i & 1 == 1)
            .fold(Face::EMPTY, |u, i| u.union(family.sets[i]));
        let e = subset.count_ones();
        total += (-2i128).pow(e - 1) * row_weight(family.ell, family.h, union.len());
    }
    total
}

/// B(σ_1..σ_n) = B(σ_1..σ_{n−1}) + B(σ_n) − 2 B(σ_1∪σ_n, …, σ_{n−1}∪σ_n).
pub fn b_recursion_check(family: &SigmaFamily) -> Result<bool> {
    let n = family.sets.len();
    if n < 2 {
        return Err(range_err("recursion", "needs at least two supports".into()));
    }
    let last = family.sets[n - 1];
    let head = family.with_sets(family.sets[..n - 1].to_vec());
    let tail = family.with_sets(vec![last]);
    let merged = family.with_sets(family.sets[..n - 1].iter().map(|s| s.union(last)).collect());
    Ok(b_weight(family) == b_weight(&head) + b_weight(&tail) - 2 * b_weight(&merged))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropLastOutcome {
    /// Whether the size hypothesis applies to this family.
    pub hypothesis: bool,
    /// Whether B(σ_1, …, σ_n) ≥ B(σ_n).
    pub holds: bool,
    pub lhs: i128,
    pub rhs: i128,
}

/// Sorts the family by |σ| and tests B(σ_1..σ_n) ≥ B(σ_n).
///
/// The hypothesis needs distinct supports and an index k with
/// |σ_k| < |σ_{k+1}| = … = |σ_n| and |σ_k| < (n − k) + |σ_n|. When every
/// support has the same size no such k exists and the hypothesis is
/// reported as not met.
pub fn prop_last_check(family: &SigmaFamily) -> PropLastOutcome {
    let mut sets = family.sets.clone();
    sets.sort_by_key(|s| s.len());
    let n = sets.len();
    let top = sets[n - 1].len();
    let k = sets.iter().filter(|s| s.len() < top).count();
    let hypothesis = family.is_distinct() && k >= 1 && sets[k - 1].len() < (n - k) + top;
    let lhs = b_weight(&family.with_sets(sets.clone()));
    let rhs = b_weight(&family.with_sets(vec![sets[n - 1]]));
    PropLastOutcome {
        hypothesis,
        holds: lhs >= rhs,
        lhs,
        rhs,
    }
}

/// Where the conjectured distance sum starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexConvention {
    /// Σ_{i=0}^{h−j} C(ℓ−j, i), the single-row weight.
    FromZero,
    /// Σ_{i=1}^{h−j} C(ℓ−j, i).
    FromOne,
}

pub fn conjecture_distance(
    ell: usize,
    h: usize,
    j: usize,
    convention: IndexConvention,
) -> Result<i128> {
    check_order("conjecture", j, h, ell, "1 ≤ j ≤ h ≤ ℓ")?;
    if j == 0 {
        return Err(range_err("conjecture", "j ≥ 1".into()));
    }
    let start = match convention {
        IndexConvention::FromZero => 0,
        IndexConvention::FromOne => 1,
    };
    Ok((start..=(h - j) as i64)
        .map(|i| binom((ell - j) as i64, i))
        .sum())
}

/// Every prediction available for K(ℓ, h, j).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predictions {
    pub n: i128,
    pub k: i128,
    /// Exact d where a closed form is proved: j = 0 (d = n), j = 1, j = h.
    pub d: Option<i128>,
    /// Single-row upper bound on d.
    pub d_upper: i128,
    pub conjecture_from_zero: Option<i128>,
    pub conjecture_from_one: Option<i128>,
}

pub fn predictions(ell: usize, h: usize, j: usize) -> Result<Predictions> {
    check_order("predictions", j, h, ell, "0 ≤ j ≤ h ≤ ℓ")?;
    let n = closed_length(ell, h)?;
    let d = match j {
        0 => Some(n),
        1 => Some(theorem_main_distance(ell, h)?),
        _ if j == h => Some(1),
        _ => None,
    };
    let conj = |c| {
        if j >= 1 {
            conjecture_distance(ell, h, j, c).ok()
        } else {
            None
        }
    };
    Ok(Predictions {
        n,
        k: closed_dimension(ell, j)?,
        d,
        d_upper: upper_bound_distance(ell, h, j)?,
        conjecture_from_zero: conj(IndexConvention::FromZero),
        conjecture_from_one: conj(IndexConvention::FromOne),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(ell: usize, h: usize, sets: &[&[usize]]) -> SigmaFamily {
        SigmaFamily::new(
            ell,
            h,
            sets.iter().map(|s| Face::new(ell, s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn binomials_vanish_out_of_range() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(5, -1), 0);
        assert_eq!(binom(5, 6), 0);
        assert_eq!(binom(-1, 0), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(60, 30), 118264581564861424);
    }

    #[test]
    fn lengths_and_dimensions() {
        assert_eq!(closed_length(5, 2).unwrap(), 16);
        assert_eq!(closed_length(3, 2).unwrap(), 7);
        assert_eq!(closed_length(9, 9).unwrap(), 512);
        assert!(closed_length(2, 3).is_err());
        assert_eq!(closed_dimension(5, 1).unwrap(), 6);
        assert_eq!(closed_dimension(3, 1).unwrap(), 4);
        assert_eq!(closed_dimension(7, 0).unwrap(), 1);
        assert!(closed_dimension(2, 3).is_err());
    }

    #[test]
    fn distances() {
        assert_eq!(theorem_main_distance(3, 2).unwrap(), 3);
        assert_eq!(theorem_main_distance(5, 2).unwrap(), 5);
        assert_eq!(theorem_main_distance(8, 8).unwrap(), 128);
        assert!(theorem_main_distance(3, 0).is_err());
        assert_eq!(upper_bound_distance(3, 2, 1).unwrap(), 3);
        assert_eq!(upper_bound_distance(7, 4, 4).unwrap(), 1);
        // 1 + 4 + 6
        assert_eq!(upper_bound_distance(6, 4, 2).unwrap(), 11);
        assert!(upper_bound_distance(3, 2, 3).is_err());
    }

    #[test]
    fn degree_one_distance_is_the_j1_row_bound() {
        for ell in 1..=20 {
            for h in 1..=ell {
                assert_eq!(
                    theorem_main_distance(ell, h).unwrap(),
                    upper_bound_distance(ell, h, 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn ie_coefficients() {
        assert_eq!(ie_coefficient(1).unwrap(), 1);
        assert_eq!(ie_coefficient(2).unwrap(), -2);
        assert_eq!(ie_coefficient(3).unwrap(), 4);
        assert_eq!(ie_defining_sum(2).unwrap(), 2 - 2);
        assert_eq!(ie_defining_sum(3).unwrap(), 3 - 6 + 4);
        assert!(ie_coefficient(0).is_err());
        for t in 1..=30u32 {
            assert_eq!(ie_defining_sum(t).unwrap(), (t % 2) as i128);
        }
    }

    #[test]
    fn degree_one_row_sums() {
        assert_eq!(weight_sum_rows_j1(3, 2, 1).unwrap(), 3);
        // rows x1 + x2 of the 7-column example: 0101110
        assert_eq!(weight_sum_rows_j1(3, 2, 2).unwrap(), 4);
        assert!(weight_sum_rows_j1(3, 2, 0).is_err());
        assert!(weight_sum_rows_j1(3, 2, 4).is_err());
        for ell in 1..=10 {
            for h in 1..=ell {
                let d = theorem_main_distance(ell, h).unwrap();
                for s in 1..=ell {
                    assert!(
                        weight_sum_rows_j1(ell, h, s).unwrap() >= d,
                        "({ell},{h},{s})"
                    );
                }
            }
        }
    }

    #[test]
    fn g_values() {
        // g(3, s) = C(s, 3), not 0
        assert_eq!(g_value(3, 3).unwrap().sum, 1);
        assert_eq!(g_value(3, 4).unwrap().sum, 4);
        // g(2, 4) = 12 − 12
        let g = g_value(2, 4).unwrap();
        assert_eq!((g.sum, g.closed, g.parity_swapped), (0, 6, 0));
        for s in 1..=12 {
            let g = g_value(1, s).unwrap();
            assert_eq!(g.sum, s as i128);
            assert_eq!(g.closed, 0);
        }
        for s in 1..=12 {
            for i in 1..=s {
                let g = g_value(i, s).unwrap();
                assert!(g.agrees_swapped(), "g({i},{s})");
                assert!(!g.agrees(), "g({i},{s})");
            }
        }
        assert!(g_value(0, 3).is_err());
        assert!(g_value(4, 3).is_err());
    }

    #[test]
    fn b_weight_cases() {
        // a single support of size r gives the row weight
        for r in 0..=4 {
            let sigma: Vec<usize> = (1..=r).collect();
            assert_eq!(b_weight(&fam(6, 4, &[&sigma])), row_weight(6, 4, r));
        }
        assert_eq!(b_weight(&fam(5, 3, &[&[1, 2], &[1, 2]])), 0);
        assert!(SigmaFamily::new(3, 2, vec![Face::from_mask(0b1000)]).is_err());
        assert!(SigmaFamily::new(3, 2, vec![]).is_err());
    }

    #[test]
    fn recursion_and_prop_last() {
        let f = fam(4, 3, &[&[1], &[2], &[1, 2]]);
        assert!(b_recursion_check(&f).unwrap());
        assert!(b_recursion_check(&fam(4, 3, &[&[1]])).is_err());
        let two = fam(5, 3, &[&[1], &[2, 3]]);
        assert!(b_recursion_check(&two).unwrap());
        let out = prop_last_check(&two);
        assert!(out.hypothesis && out.holds);
        let equal = prop_last_check(&fam(5, 3, &[&[1], &[2]]));
        assert!(!equal.hypothesis);
        let dup = prop_last_check(&fam(5, 3, &[&[1], &[2, 3], &[2, 3]]));
        assert!(!dup.hypothesis);
    }

    #[test]
    fn conjecture_conventions() {
        use IndexConvention::*;
        assert_eq!(conjecture_distance(6, 4, 2, FromZero).unwrap(), 11);
        assert_eq!(conjecture_distance(6, 4, 2, FromOne).unwrap(), 10);
        assert_eq!(conjecture_distance(5, 3, 3, FromZero).unwrap(), 1);
        assert_eq!(
            conjecture_distance(3, 2, 1, FromZero).unwrap(),
            theorem_main_distance(3, 2).unwrap()
        );
        assert!(conjecture_distance(3, 2, 0, FromZero).is_err());
    }

    #[test]
    fn predictions_for_examples() {
        let p = predictions(5, 2, 1).unwrap();
        assert_eq!((p.n, p.k, p.d, p.d_upper), (16, 6, Some(5), 5));
        let p = predictions(4, 4, 4).unwrap();
        assert_eq!((p.n, p.k, p.d), (16, 16, Some(1)));
        let p = predictions(6, 4, 2).unwrap();
        assert_eq!(
            (p.d, p.conjecture_from_zero, p.conjecture_from_one),
            (None, Some(11), Some(10))
        );
    }
}
