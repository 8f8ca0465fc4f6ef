//! Integer-weight combinatorics for GL_k: Weyl dimensions, the ρ-shift
//! pushforward along Grassmannian fibrations, staircase complexes on Gr(2,V)
//! and their images on Gr(k,V), and the Euler-characteristic checks for the
//! complexes K_t on IGr(k,2n).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;
use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("non-dominant weight {0}")]
    NonDominant(Weight),
    #[error("weight length {got} does not match rank {expected}")]
    Length { expected: usize, got: usize },
    #[error("usage: {0}")]
    Usage(String),
    #[error("ρ-shift disagrees with the closed form for {weight}: computed {computed}, closed form {closed}")]
    ClosedFormMismatch { weight: Weight, computed: PushResult, closed: PushResult },
}

fn usage(msg: impl Into<String>) -> WeightError {
    WeightError::Usage(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight(entries)
    }

    /// `ρ_k = (k, k−1, …, 1)`.
    pub fn rho(k: usize) -> Self {
        Weight((1..=k as i64).rev().collect())
    }

    /// `(a1, a2, 0, …, 0)` of length `k`.
    pub fn padded(head: &[i64], k: usize) -> Self {
        let mut v = head.to_vec();
        v.resize(k.max(head.len()), 0);
        Weight(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PushResult {
    Zero,
    Shifted { weight: Weight, shift: usize },
}

impl PushResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, PushResult::Zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            PushResult::Zero => json!("zero"),
            PushResult::Shifted { weight, shift } => json!({ "weight": weight.entries(), "shift": shift }),
        }
    }
}

impl fmt::Display for PushResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PushResult::Zero => write!(f, "0"),
            PushResult::Shifted { weight, shift } => write!(f, "{weight}[{shift}]"),
        }
    }
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Dimension of the irreducible GL_k representation of highest weight `lambda`.
pub fn weyl_dim_gl(lambda: &Weight) -> Result<BigInt, WeightError> {
    if !lambda.is_dominant() {
        return Err(WeightError::NonDominant(lambda.clone()));
    }
    let l = lambda.entries();
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            num *= l[i] - l[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Borel–Bott–Weil along a Gr(·,k) fibration: add ρ_k, sort, count inversions.
pub fn bbw_pushforward(gamma: &Weight) -> PushResult {
    let k = gamma.len();
    let shifted = gamma.add(&Weight::rho(k));
    let b = shifted.entries();
    let mut inversions = 0;
    for i in 0..k {
        for j in i + 1..k {
            match b[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => return PushResult::Zero,
                std::cmp::Ordering::Less => inversions += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    let mut sorted = b.to_vec();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    PushResult::Shifted { weight: Weight(sorted).sub(&Weight::rho(k)), shift: inversions }
}

/// Closed three-case form of the pushforward of Σ^{α₁,α₂}U₂^∨ to Gr(k,V).
pub fn tphi_closed_form(alpha1: i64, alpha2: i64, k: usize) -> PushResult {
    let ki = k as i64;
    if alpha2 >= 0 {
        PushResult::Shifted { weight: Weight::padded(&[alpha1, alpha2], k), shift: 0 }
    } else if alpha2 >= 2 - ki {
        PushResult::Zero
    } else {
        let mut w = vec![alpha1];
        w.extend(std::iter::repeat_n(-1, k - 2));
        w.push(ki - 2 + alpha2);
        PushResult::Shifted { weight: Weight(w), shift: k - 2 }
    }
}

pub fn tphi_on_weight(alpha1: i64, alpha2: i64, k: usize) -> Result<PushResult, WeightError> {
    if k < 3 || alpha1 < alpha2 || alpha1 < -1 {
        return Err(usage(format!("tphi needs α₁ ≥ α₂, α₁ ≥ −1, k ≥ 3; got ({alpha1},{alpha2}), k={k}")));
    }
    let weight = Weight::padded(&[alpha1, alpha2], k);
    let computed = bbw_pushforward(&weight);
    let closed = tphi_closed_form(alpha1, alpha2, k);
    if computed != closed {
        return Err(WeightError::ClosedFormMismatch { weight, computed, closed });
    }
    Ok(computed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseTerm {
    pub position: usize,
    pub wedge_exp: i64,
    pub weight: Weight,
}

impl StaircaseTerm {
    /// `dim Λ^j V^∨ · dim Σ^weight`, with `dim V = 2n`.
    pub fn dim(&self, n: usize) -> BigInt {
        binomial(2 * n as i64, self.wedge_exp) * weyl_dim_gl(&self.weight).expect("staircase weights are dominant")
    }
}

impl fmt::Display for StaircaseTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}⊗Σ{}@{}", self.wedge_exp, self.weight, self.position)
    }
}

/// Terms of the staircase complex on Gr(2,2n) resolving Σ^{α₁,α₂}U^∨,
/// left to right.
pub fn staircase_terms_gr2(alpha1: i64, alpha2: i64, n: usize) -> Result<Vec<StaircaseTerm>, WeightError> {
    let two_n = 2 * n as i64;
    if !(alpha1 >= alpha2 && alpha2 >= alpha1 - two_n + 2) {
        return Err(usage(format!("staircase needs α₁ ≥ α₂ ≥ α₁ − 2n + 2; got ({alpha1},{alpha2}), n={n}")));
    }
    let mut terms = Vec::new();
    // top row: Λ^j ⊗ Σ^{α₂−1, α₁+1−j}, j = 2n … α₁−α₂+2
    for j in (alpha1 - alpha2 + 2..=two_n).rev() {
        terms.push((j, Weight(vec![alpha2 - 1, alpha1 + 1 - j])));
    }
    // bottom row: Λ^j ⊗ Σ^{α₁−j, α₂}, j = α₁−α₂ … 0
    for j in (0..=alpha1 - alpha2).rev() {
        terms.push((j, Weight(vec![alpha1 - j, alpha2])));
    }
    Ok(terms
        .into_iter()
        .enumerate()
        .map(|(position, (wedge_exp, weight))| StaircaseTerm { position, wedge_exp, weight })
        .collect())
}

pub fn alternating_dim_sum(terms: &[StaircaseTerm], n: usize) -> BigInt {
    terms.iter().fold(BigInt::zero(), |acc, t| {
        let d = t.dim(n);
        if t.position % 2 == 0 {
            acc + d
        } else {
            acc - d
        }
    })
}

/// Staircase complex on Gr(k,2n) for (α₁,α₂,0,…,0), written out row by row
/// (top, middle, bottom) with wedge exponents, independently of any ρ-shift.
pub fn staircase_shape_grk(alpha1: i64, alpha2: i64, k: usize, n: usize) -> Vec<(i64, Weight)> {
    let two_n = 2 * n as i64;
    let ki = k as i64;
    let mut shape = Vec::new();
    // top: Σ^{α₂−1,−1,…,−1,m}, m from α₁−2n+k−1 up to −1, wedge from 2n down
    for (step, m) in (alpha1 - two_n + ki - 1..=-1).enumerate() {
        let mut w = vec![alpha2 - 1];
        w.extend(std::iter::repeat_n(-1, k - 2));
        w.push(m);
        shape.push((two_n - step as i64, Weight(w)));
    }
    // middle: Σ^{α₂−1,m,0,…,0}, m from 0 up to α₂−1, wedge from α₁+1 down
    for m in 0..alpha2 {
        shape.push((alpha1 + 1 - m, Weight::padded(&[alpha2 - 1, m], k)));
    }
    // bottom: Σ^{w,α₂,0,…,0}, w from α₂ up to α₁, wedge from α₁−α₂ down
    for w in alpha2..=alpha1 {
        shape.push((alpha1 - w, Weight::padded(&[w, alpha2], k)));
    }
    shape
}

/// Pushes the Gr(2,V) staircase for (α₁,α₂) to Gr(k,V) termwise and checks
/// that the result is again a staircase complex.
pub fn verify_staircase_pushforward(alpha1: i64, alpha2: i64, k: usize, n: usize) -> Result<Report, WeightError> {
    let ki = k as i64;
    let two_n = 2 * n as i64;
    if !(3 <= k && k <= n && two_n - ki >= alpha1 && alpha1 >= alpha2 && alpha2 >= 0) {
        return Err(usage(format!(
            "staircase pushforward needs 2n−k ≥ α₁ ≥ α₂ ≥ 0, 3 ≤ k ≤ n; got ({alpha1},{alpha2}), k={k}, n={n}"
        )));
    }
    let mut report =
        Report::new("staircase").param("n", n).param("k", k).param("alpha1", alpha1).param("alpha2", alpha2);

    let gr2 = staircase_terms_gr2(alpha1, alpha2, n)?;
    let mut survivors: Vec<StaircaseTerm> = Vec::new();
    for term in &gr2 {
        let w = term.weight.entries();
        match tphi_on_weight(w[0], w[1], k)? {
            PushResult::Zero => {}
            PushResult::Shifted { weight, shift } => {
                survivors.push(StaircaseTerm { position: term.position + shift, wedge_exp: term.wedge_exp, weight })
            }
        }
    }

    let increasing = survivors.windows(2).all(|w| w[0].position < w[1].position);
    let offending = survivors.windows(2).find(|w| w[0].position >= w[1].position).map(|w| w[1].to_string());
    let chi = alternating_dim_sum(&survivors, n);
    let shape: Vec<(i64, Weight)> = survivors.iter().map(|t| (t.wedge_exp, t.weight.clone())).collect();
    let expected_shape = staircase_shape_grk(alpha1, alpha2, k, n);
    let shape_ok = shape == expected_shape;

    report = report
        .expect("positions_increasing", true)
        .compute("positions_increasing", increasing)
        .expect("euler", 0)
        .compute("euler", big_json(&chi))
        .expect("shape_matches", true)
        .compute("shape_matches", shape_ok)
        .compute("survivors", survivors.len());
    report.expected.insert("survivors".into(), json!(expected_shape.len()));
    if let Some(term) = offending {
        report = report.note("offending_term", term);
    } else if !shape_ok {
        let first_bad = shape
            .iter()
            .zip(&expected_shape)
            .find(|(a, b)| a != b)
            .map(|(a, _)| format!("Λ{}⊗Σ{}", a.0, a.1))
            .unwrap_or_else(|| "length".into());
        report = report.note("offending_term", first_bad);
    }
    Ok(report.finish())
}

/// Every top-row term Σ^{α₂−1,m}, α₁+1−2n ≤ m ≤ −1, pushes to zero when
/// α₁ lies in the vanishing band 2n−k+1 … 2n−2.
pub fn verify_vanishing_band(alpha1: i64, alpha2: i64, k: usize, n: usize) -> Result<Report, WeightError> {
    let ki = k as i64;
    let two_n = 2 * n as i64;
    if !(3 <= k && k <= n && two_n - ki < alpha1 && alpha1 <= two_n - 2 && 0 <= alpha2 && alpha2 <= alpha1) {
        return Err(usage(format!(
            "vanishing band needs 2n−k+1 ≤ α₁ ≤ 2n−2, 0 ≤ α₂ ≤ α₁; got ({alpha1},{alpha2}), k={k}, n={n}"
        )));
    }
    let mut nonzero = Vec::new();
    for m in alpha1 + 1 - two_n..=-1 {
        let r = tphi_on_weight(alpha2 - 1, m, k)?;
        if !r.is_zero() {
            nonzero.push(format!("Σ({},{})→{}", alpha2 - 1, m, r));
        }
    }
    let mut report = Report::new("vanishing")
        .param("n", n)
        .param("k", k)
        .param("alpha1", alpha1)
        .param("alpha2", alpha2)
        .expect("nonzero_terms", 0)
        .compute("nonzero_terms", nonzero.len());
    if let Some(t) = nonzero.first() {
        report = report.note("offending_term", t.clone());
    }
    Ok(report.finish())
}

/// Rank of K^{α₁,α₂} on Gr(k,2n) from its resolution by Λ^jV^∨ ⊗ Σ^β U^∨.
pub fn rank_k(alpha1: i64, alpha2: i64, k: usize, n: usize) -> Result<BigInt, WeightError> {
    let ki = k as i64;
    if !(2 <= k && k <= n && 2 * n as i64 - ki >= alpha1 && alpha1 >= alpha2 && alpha2 >= 0) {
        return Err(usage(format!(
            "rank_K needs 2n−k ≥ α₁ ≥ α₂ ≥ 0, 2 ≤ k ≤ n; got ({alpha1},{alpha2}), k={k}, n={n}"
        )));
    }
    let mut terms: Vec<(i64, Weight)> = Vec::new();
    for m in 0..alpha2 {
        terms.push((alpha1 + 1 - m, Weight::padded(&[alpha2 - 1, m], k)));
    }
    for w in alpha2..=alpha1 {
        terms.push((alpha1 - w, Weight::padded(&[w, alpha2], k)));
    }
    let two_n = 2 * n as i64;
    let mut acc = BigInt::zero();
    for (pos, (j, w)) in terms.iter().enumerate() {
        let d = binomial(two_n, *j) * weyl_dim_gl(w)?;
        if pos % 2 == 0 {
            acc += d;
        } else {
            acc -= d;
        }
    }
    // the resolution starts right after K, so the sign of the first term is +
    debug_assert!(!acc.is_negative());
    Ok(acc)
}

/// Rank of E^{a,b} on Gr(2,2n) from its two-step filtration.
pub fn rank_e(a: i64, b: i64, n: usize) -> BigInt {
    let m = 2 * n as i64 - 2;
    binomial(m, a) * BigInt::from(b + 1) + binomial(m, a - 1) * BigInt::from(b)
}

/// Rank of the symplectic wedge power ∧^m_Sp of a rank-`r` symplectic bundle.
pub fn dim_wedge_sp(r: i64, m: i64) -> BigInt {
    if m < 0 || 2 * m > r {
        return BigInt::zero();
    }
    binomial(r, m) - binomial(r, m - 2)
}

/// Signed cohomology rank predicted for K_t on IGr(k,2n): positive in degree
/// 0, negative in degree 1.
pub fn predicted_k_cohomology(n: usize, k: usize, t: usize) -> (i64, BigInt) {
    let (n, k, t) = (n as i64, k as i64, t as i64);
    let r = 2 * n - 2 * k;
    if t <= n - k {
        (0, dim_wedge_sp(r, t))
    } else if n - k + 2 <= t && t <= 2 * (n - k + 1) {
        (1, dim_wedge_sp(r, 2 * (n - k + 1) - t))
    } else {
        (0, BigInt::zero())
    }
}

pub fn euler_check_kt(n: usize, k: usize, t: usize) -> Result<Report, WeightError> {
    if !(2 <= k && k <= n && t <= 2 * n - k) {
        return Err(usage(format!("euler check needs 2 ≤ k ≤ n, 0 ≤ t ≤ 2n−k; got n={n}, k={k}, t={t}")));
    }
    let base = (2 * n - k - t) as i64;
    let mut chi = BigInt::zero();
    for i in 0..=t as i64 {
        let r = rank_k(base + i, i, k, n)?;
        if i % 2 == 0 {
            chi += r;
        } else {
            chi -= r;
        }
    }
    let (degree, rank) = predicted_k_cohomology(n, k, t);
    let expected = if degree == 0 { rank } else { -rank };
    Ok(Report::new("euler")
        .param("n", n)
        .param("k", k)
        .param("t", t)
        .expect("chi", big_json(&expected))
        .compute("chi", big_json(&chi))
        .finish())
}

/// Weight (−1,−1,1^{j−s},0^{k−2−i−j+2s},(−1)^{i−s}) of the filtration piece
/// indexed by (i,j,s) on the isotropic flag variety.
pub fn phi_cs_weight(k: usize, i: usize, j: usize, s: i64) -> Weight {
    let (ki, ii, ji) = (k as i64, i as i64, j as i64);
    let mut w = vec![-1, -1];
    w.extend(std::iter::repeat_n(1, (ji - s) as usize));
    w.extend(std::iter::repeat_n(0, (ki - 2 - ii - ji + 2 * s) as usize));
    w.extend(std::iter::repeat_n(-1, (ii - s) as usize));
    Weight(w)
}

/// Lower end ⌈(i+j−r)/2⌉ of the Pieri summation for Λ^iW ⊗ Λ^jW^∨, rank W = r,
/// clamped at zero.
pub fn pieri_lower_halved(r: usize, i: usize, j: usize) -> i64 {
    let x = i as i64 + j as i64 - r as i64;
    Integer::div_ceil(&x, &2).max(0)
}

/// Lower end of the Pieri summation that actually decomposes Λ^iW ⊗ Λ^jW^∨.
pub fn pieri_lower_exact(r: usize, i: usize, j: usize) -> i64 {
    (i as i64 + j as i64 - r as i64).max(0)
}

/// `(i, j, s)`
pub type PieriIndex = (usize, usize, i64);

/// All (i,j,s) with 0 ≤ i,j ≤ k−2 and s in the halved Pieri range whose
/// weight survives the pushforward, together with the result.
pub fn phi_cs_survivors(k: usize) -> Result<Vec<(PieriIndex, PushResult)>, WeightError> {
    if k < 3 {
        return Err(usage(format!("phi_cs_survivors needs k ≥ 3; got {k}")));
    }
    let r = k - 2;
    let mut out = Vec::new();
    for i in 0..=r {
        for j in 0..=r {
            for s in pieri_lower_halved(r, i, j)..=i.min(j) as i64 {
                let push = bbw_pushforward(&phi_cs_weight(k, i, j, s));
                if !push.is_zero() {
                    out.push(((i, j, s), push));
                }
            }
        }
    }
    Ok(out)
}

fn pieri_sum(r: usize, i: usize, j: usize, lower: i64) -> BigInt {
    let (ri, ii, ji) = (r as i64, i as i64, j as i64);
    (lower..=ii.min(ji))
        .map(|s| {
            let mut w = Vec::new();
            w.extend(std::iter::repeat_n(1, (ji - s) as usize));
            w.extend(std::iter::repeat_n(0, (ri - ii - ji + 2 * s) as usize));
            w.extend(std::iter::repeat_n(-1, (ii - s) as usize));
            weyl_dim_gl(&Weight(w)).expect("pieri weights are dominant")
        })
        .sum()
}

/// C(r,i)·C(r,j) against the Pieri sum starting at ⌈(i+j−r)/2⌉.
pub fn pieri_dim_check(r: usize, i: usize, j: usize) -> bool {
    let lhs = binomial(r as i64, i as i64) * binomial(r as i64, j as i64);
    lhs == pieri_sum(r, i, j, pieri_lower_halved(r, i, j))
}

/// Same identity with the summation starting at max(0, i+j−r).
pub fn pieri_dim_check_exact(r: usize, i: usize, j: usize) -> bool {
    let lhs = binomial(r as i64, i as i64) * binomial(r as i64, j as i64);
    lhs == pieri_sum(r, i, j, pieri_lower_exact(r, i, j))
}

pub(crate) fn big_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    /// Semistandard tableaux of shape `lambda` (non-negative partition) in
    /// `k` letters, by brute-force filling.
    fn count_ssyt(lambda: &[i64], k: i64) -> u64 {
        let cells: Vec<(usize, usize)> =
            lambda.iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
        let mut grid = vec![vec![0i64; lambda.first().copied().unwrap_or(0) as usize]; lambda.len()];
        fn go(idx: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<i64>>, k: i64) -> u64 {
            if idx == cells.len() {
                return 1;
            }
            let (r, c) = cells[idx];
            let mut total = 0;
            for v in 1..=k {
                if c > 0 && grid[r][c - 1] > v {
                    continue;
                }
                if r > 0 && grid[r - 1][c] >= v {
                    continue;
                }
                grid[r][c] = v;
                total += go(idx + 1, cells, grid, k);
            }
            total
        }
        go(0, &cells, &mut grid, k)
    }

    #[test]
    fn weyl_dims_small() {
        assert_eq!(weyl_dim_gl(&w(&[1, 0, 0])).unwrap(), BigInt::from(3));
        assert_eq!(weyl_dim_gl(&w(&[1, 1, 0])).unwrap(), BigInt::from(3));
        // oracle: tableau counts
        for shape in [[2, 1, 0], [3, 1, 0], [5, 1, 0]] {
            let expected = count_ssyt(&shape, 3);
            assert_eq!(weyl_dim_gl(&w(&shape)).unwrap(), BigInt::from(expected));
        }
        assert_eq!(count_ssyt(&[2, 1, 0], 3), 8);
        assert_eq!(count_ssyt(&[3, 1, 0], 3), 15);
        assert_eq!(count_ssyt(&[5, 1, 0], 3), 35);
    }

    #[test]
    fn weyl_dim_rejects_non_dominant() {
        assert!(matches!(weyl_dim_gl(&w(&[0, 1])), Err(WeightError::NonDominant(_))));
    }

    #[test]
    fn weyl_dim_twist_invariant() {
        // shifting every entry by a constant tensors with a power of det
        assert_eq!(weyl_dim_gl(&w(&[-1, -1, -3])).unwrap(), weyl_dim_gl(&w(&[2, 2, 0])).unwrap());
        assert_eq!(weyl_dim_gl(&w(&[-1, -1, -3])).unwrap(), BigInt::from(6));
    }

    #[test]
    fn bbw_examples() {
        assert_eq!(bbw_pushforward(&w(&[5, 2, 0])), PushResult::Shifted { weight: w(&[5, 2, 0]), shift: 0 });
        assert_eq!(bbw_pushforward(&w(&[3, -1, 0])), PushResult::Zero);
        assert_eq!(bbw_pushforward(&w(&[3, -3, 0, 0])), PushResult::Shifted { weight: w(&[3, -1, -1, -1]), shift: 2 });
    }

    #[test]
    fn tphi_examples() {
        assert_eq!(tphi_on_weight(4, 1, 3).unwrap(), PushResult::Shifted { weight: w(&[4, 1, 0]), shift: 0 });
        assert_eq!(tphi_on_weight(4, -2, 4).unwrap(), PushResult::Zero);
        // (−1,−4,0)+ρ = (2,−2,1) → (2,1,−2), one transposition
        assert_eq!(tphi_on_weight(-1, -4, 3).unwrap(), PushResult::Shifted { weight: w(&[-1, -1, -3]), shift: 1 });
        assert!(matches!(tphi_on_weight(0, 1, 3), Err(WeightError::Usage(_))));
        assert!(matches!(tphi_on_weight(-2, -3, 3), Err(WeightError::Usage(_))));
        assert!(matches!(tphi_on_weight(1, 0, 2), Err(WeightError::Usage(_))));
    }

    #[test]
    fn staircase_gr2_example() {
        let terms = staircase_terms_gr2(1, 0, 3).unwrap();
        let shape: Vec<(i64, Vec<i64>)> = terms.iter().map(|t| (t.wedge_exp, t.weight.entries().to_vec())).collect();
        assert_eq!(
            shape,
            vec![
                (6, vec![-1, -4]),
                (5, vec![-1, -3]),
                (4, vec![-1, -2]),
                (3, vec![-1, -1]),
                (1, vec![0, 0]),
                (0, vec![1, 0]),
            ]
        );
        assert_eq!(terms.iter().map(|t| t.position).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5]);
        let dims: Vec<BigInt> = terms.iter().map(|t| t.dim(3)).collect();
        assert_eq!(dims, [4, 18, 30, 20, 6, 2].map(BigInt::from).to_vec());
        assert_eq!(alternating_dim_sum(&terms, 3), BigInt::zero());
    }

    #[test]
    fn staircase_gr2_corner_case() {
        let terms = staircase_terms_gr2(0, 0, 3).unwrap();
        assert_eq!(terms.last().unwrap().weight, w(&[0, 0]));
        assert_eq!(terms.last().unwrap().wedge_exp, 0);
        assert_eq!(alternating_dim_sum(&terms, 3), BigInt::zero());
        assert!(staircase_terms_gr2(5, 0, 3).is_err());
    }

    #[test]
    fn staircase_wedge_drops() {
        let terms = staircase_terms_gr2(3, 1, 4).unwrap();
        let drops: Vec<i64> = terms.windows(2).map(|p| p[0].wedge_exp - p[1].wedge_exp).collect();
        assert_eq!(drops.iter().filter(|&&d| d == 2).count(), 1);
        assert!(drops.iter().all(|&d| d == 1 || d == 2));
    }

    #[test]
    fn staircase_pushforward_example() {
        let report = verify_staircase_pushforward(1, 0, 3, 3).unwrap();
        assert!(report.passed(), "{report:?}");
        // termwise: Λ⁶→(−1,−1,−3)[1], Λ⁵→(−1,−1,−2)[1], Λ⁴→(−1,−1,−1)[1], Λ³→0
        let pushed: Vec<PushResult> = staircase_terms_gr2(1, 0, 3)
            .unwrap()
            .iter()
            .map(|t| tphi_on_weight(t.weight.entries()[0], t.weight.entries()[1], 3).unwrap())
            .collect();
        assert_eq!(pushed[0], PushResult::Shifted { weight: w(&[-1, -1, -3]), shift: 1 });
        assert_eq!(pushed[1], PushResult::Shifted { weight: w(&[-1, -1, -2]), shift: 1 });
        assert_eq!(pushed[2], PushResult::Shifted { weight: w(&[-1, -1, -1]), shift: 1 });
        assert_eq!(pushed[3], PushResult::Zero);
        assert_eq!(pushed[4], PushResult::Shifted { weight: w(&[0, 0, 0]), shift: 0 });
        assert_eq!(pushed[5], PushResult::Shifted { weight: w(&[1, 0, 0]), shift: 0 });
        assert!(verify_staircase_pushforward(2, 1, 3, 3).unwrap().passed());
        assert!(verify_staircase_pushforward(4, 0, 3, 3).is_err());
    }

    #[test]
    fn rank_k_examples() {
        assert_eq!(rank_k(3, 0, 3, 3).unwrap(), BigInt::from(1));
        assert_eq!(rank_k(5, 1, 3, 4).unwrap(), BigInt::from(3));
        // k = 2 against the filtration closed form
        let n = 3;
        let (a1, a2) = (4i64, 2i64);
        let m = 2 * n as i64 - 2;
        let closed = binomial(m, m - a1) * BigInt::from(a2 + 1) + binomial(m, m - 1 - a1) * BigInt::from(a2);
        assert_eq!(closed, BigInt::from(3));
        assert_eq!(rank_k(a1, a2, 2, n).unwrap(), closed);
        assert!(rank_k(5, 0, 3, 3).is_err());
    }

    #[test]
    fn rank_k_alpha2_zero_is_wedge_of_perp() {
        for n in 2..=6usize {
            for k in 2..=n {
                for a1 in 0..=(2 * n - k) as i64 {
                    assert_eq!(rank_k(a1, 0, k, n).unwrap(), binomial((2 * n - k) as i64, a1));
                }
            }
        }
    }

    #[test]
    fn rank_k_k2_matches_e_ranks() {
        for n in 2..=6usize {
            let m = 2 * n as i64 - 2;
            for a1 in 0..=m {
                for a2 in 0..=a1 {
                    assert_eq!(rank_k(a1, a2, 2, n).unwrap(), rank_e(m - a1, a2, n));
                }
            }
        }
    }

    /// Wedging by a symplectic form on a rank-4 space, brute force.
    #[test]
    fn wedge_sp_against_brute_force() {
        use crate::exactlinalg::{rat, SparseMatrix};
        fn subsets(r: usize, m: usize) -> Vec<u32> {
            (0u32..1 << r).filter(|s| s.count_ones() as usize == m).collect()
        }
        let r = 4usize;
        let pairs = [(0usize, 2usize), (1, 3)];
        for m in 0..=2usize {
            let src = if m >= 2 { subsets(r, m - 2) } else { Vec::new() };
            let dst = subsets(r, m);
            let mut trip = Vec::new();
            for (c, &s) in src.iter().enumerate() {
                for &(p, q) in &pairs {
                    if s & (1 << p | 1 << q) != 0 {
                        continue;
                    }
                    let t = s | 1 << p | 1 << q;
                    let sign = (s >> (p + 1)).count_ones() + (s >> (q + 1)).count_ones();
                    let row = dst.iter().position(|&x| x == t).unwrap();
                    trip.push((row, c, rat(if sign % 2 == 0 { 1 } else { -1 })));
                }
            }
            let mat = SparseMatrix::from_triplets(dst.len(), src.len(), trip);
            let coker = dst.len() - mat.rank();
            assert_eq!(BigInt::from(coker), dim_wedge_sp(r as i64, m as i64), "m={m}");
        }
        assert_eq!(dim_wedge_sp(4, 0), BigInt::from(1));
        assert_eq!(dim_wedge_sp(4, 2), BigInt::from(5));
        assert_eq!(dim_wedge_sp(0, 0), BigInt::from(1));
        assert_eq!(dim_wedge_sp(4, 3), BigInt::zero());
        assert_eq!(dim_wedge_sp(4, -1), BigInt::zero());
    }

    #[test]
    fn euler_examples() {
        let r = euler_check_kt(4, 3, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.computed["chi"], json!(2));
        let r = euler_check_kt(3, 2, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.computed["chi"], json!(-1));
        let r = euler_check_kt(3, 2, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.computed["chi"], json!(0));
        assert!(euler_check_kt(3, 2, 5).is_err());
        assert!(euler_check_kt(3, 4, 0).is_err());
    }

    #[test]
    fn euler_k2_n3_t4_terms() {
        // 1 − 14 + 26 − 19 + 5
        let ranks: Vec<BigInt> = (0..=4).map(|i| rank_k(i, i, 2, 3).unwrap()).collect();
        assert_eq!(ranks, [1, 14, 26, 19, 5].map(BigInt::from).to_vec());
    }

    #[test]
    fn phi_cs_examples() {
        let s3 = phi_cs_survivors(3).unwrap();
        assert_eq!(s3.len(), 1);
        assert_eq!(s3[0].0, (1, 0, 0));
        assert_eq!(s3[0].1, PushResult::Shifted { weight: w(&[-1, -1, -1]), shift: 0 });
        // the other two candidates of k = 3 collide in the ρ-shift
        assert_eq!(bbw_pushforward(&phi_cs_weight(3, 0, 0, 0)), PushResult::Zero);
        assert_eq!(bbw_pushforward(&phi_cs_weight(3, 1, 1, 1)), PushResult::Zero);
        let s4 = phi_cs_survivors(4).unwrap();
        assert_eq!(s4.iter().map(|x| x.0).collect::<Vec<_>>(), vec![(2, 0, 0)]);
        assert!(phi_cs_survivors(2).is_err());
    }

    #[test]
    fn pieri_examples() {
        assert!(pieri_dim_check(2, 1, 1));
        assert!(pieri_dim_check(1, 0, 0));
        assert!(pieri_dim_check(3, 2, 1));
        // starting at ⌈(i+j−r)/2⌉ drops terms once i + j − r ≥ 2
        assert!(!pieri_dim_check(2, 2, 2));
        assert!(pieri_dim_check_exact(2, 2, 2));
    }

    #[test]
    fn pieri_exact_holds_on_grid() {
        for r in 0..=6 {
            for i in 0..=r {
                for j in 0..=r {
                    assert!(pieri_dim_check_exact(r, i, j), "({r},{i},{j})");
                    let halved_fails = !pieri_dim_check(r, i, j);
                    assert_eq!(halved_fails, i as i64 + j as i64 - r as i64 >= 2, "({r},{i},{j})");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn bbw_output_dominant(entries in prop::collection::vec(-10i64..=10, 1..=6)) {
            let gamma = Weight::new(entries);
            match bbw_pushforward(&gamma) {
                PushResult::Zero => {}
                PushResult::Shifted { weight, shift } => {
                    let k = gamma.len();
                    prop_assert!(weight.is_dominant());
                    prop_assert!(shift <= k * (k - 1) / 2);
                    prop_assert_eq!(weight.len(), k);
                }
            }
        }

        #[test]
        fn bbw_fixes_dominant(mut entries in prop::collection::vec(-10i64..=10, 1..=6)) {
            entries.sort_unstable_by(|a, b| b.cmp(a));
            let gamma = Weight::new(entries);
            prop_assert_eq!(bbw_pushforward(&gamma), PushResult::Shifted { weight: gamma.clone(), shift: 0 });
        }

        #[test]
        fn staircase_gr2_exact(n in 2usize..=6, a1 in -8i64..=8, d in 0i64..=10) {
            let a2 = a1 - d;
            prop_assume!(a2 >= a1 - 2 * n as i64 + 2);
            let terms = staircase_terms_gr2(a1, a2, n).unwrap();
            prop_assert_eq!(alternating_dim_sum(&terms, n), BigInt::zero());
            prop_assert!(terms.windows(2).all(|p| p[0].wedge_exp > p[1].wedge_exp));
        }
    }
}
