//! The fiber of IGr(2,2n) at one isotropic point.
//!
//! `V` has basis `e_0 … e_{2n−1}` with dual basis `x^0 … x^{2n−1}`; the
//! symplectic form is `ω = Σ_i x^i ∧ x^{n+i}` and the base point is
//! `U = span(e_0, e_1)`. The lifts of the dual basis of `U` are `x^0, x^1`, so
//! `U^⊥` is spanned by the remaining `x^j`.
//!
//! A basis element of `Λ^a V^∨ ⊗ S^B U` is a sorted index subset (stored as
//! a bitmask) together with the exponent `p` of `e_0` in `e_0^p e_1^{B−p}`.
//! Contraction with `e_i` is evaluation in the last slot:
//! `ι_i(x^{s_1}∧…∧x^{s_a}) = (−1)^{a−k} x^{s_1}∧…x̂^{s_k}…∧x^{s_a}` when `s_k = i`.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactlinalg::{
    rat, ratio, restrict, subspace_equal, LinalgError, Rational, SparseMatrix, SparseVec, SubspaceBasis,
};
use crate::report::Report;
use crate::weights::rank_e;

/// Bits of the two lifted functionals `x^0, x^1` dual to the basis of `U`.
const U_DUAL: u32 = 0b11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{what}: expected dimension {expected}, got {got}")]
    DimensionMismatch { what: String, expected: usize, got: usize },
    #[error("kernel and lifted constructions of E^{{{a},{b}}} disagree")]
    ConstructionDisagreement { a: usize, b: usize },
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
}

fn usage(msg: impl Into<String>) -> FiberError {
    FiberError::Usage(msg.into())
}

/// Sparse integer form in the exterior algebra, keyed by index bitmask.
pub type Form = Vec<(u32, i64)>;

fn popcount_above(mask: u32, j: usize) -> u32 {
    (mask >> (j + 1)).count_ones()
}

/// `x^S ∧ x^T` as a signed monomial, or `None` if the subsets overlap.
pub fn wedge_monomials(s: u32, t: u32) -> Option<(i64, u32)> {
    if s & t != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        swaps += popcount_above(s, j);
        rest &= rest - 1;
    }
    Some((if swaps % 2 == 0 { 1 } else { -1 }, s | t))
}

/// Last-slot contraction of a monomial with `e_j`.
pub fn contract_monomial(mask: u32, j: usize) -> Option<(i64, u32)> {
    if mask >> j & 1 == 0 {
        return None;
    }
    let sign = if popcount_above(mask, j).is_multiple_of(2) { 1 } else { -1 };
    Some((sign, mask & !(1 << j)))
}

fn normalize_form(mut terms: Vec<(u32, i64)>) -> Form {
    terms.sort_unstable_by_key(|(m, _)| *m);
    let mut out: Form = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

pub fn wedge_form(mask: u32, form: &Form) -> Form {
    normalize_form(form.iter().filter_map(|(m, c)| wedge_monomials(mask, *m).map(|(s, r)| (r, s * c))).collect())
}

pub fn contract_form(form: &Form, j: usize) -> Form {
    normalize_form(form.iter().filter_map(|(m, c)| contract_monomial(*m, j).map(|(s, r)| (r, s * c))).collect())
}

fn add_forms(a: &Form, b: &Form) -> Form {
    normalize_form(a.iter().chain(b).copied().collect())
}

/// `Λ^a V^∨ ⊗ S^B U ⊗ (det U^∨)^grade`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedSpace {
    pub a: usize,
    pub sym: usize,
    pub grade: i64,
}

impl TwistedSpace {
    pub fn new(a: usize, sym: usize, grade: i64) -> Self {
        TwistedSpace { a, sym, grade }
    }
}

impl fmt::Display for TwistedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}⊗S{}({})", self.a, self.sym, self.grade)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub subset: u32,
    pub e1_power: usize,
}

impl Monomial {
    /// Sorted 0-based indices of the wedge factor.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.subset >> i & 1 == 1).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    D0,
    D1,
    D2,
    D,
    Trace,
    WedgeOmegaBar,
}

/// A matrix together with the twisted spaces it maps between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberMap {
    pub domain: TwistedSpace,
    pub codomain: TwistedSpace,
    pub matrix: SparseMatrix,
}

impl FiberMap {
    /// `self ∘ inner`.
    pub fn after(&self, inner: &FiberMap) -> Result<FiberMap, FiberError> {
        if inner.codomain != self.domain {
            return Err(FiberError::GradeMismatch(format!(
                "cannot compose {} → {} after {} → {}",
                self.domain, self.codomain, inner.domain, inner.codomain
            )));
        }
        Ok(FiberMap { domain: inner.domain, codomain: self.codomain, matrix: self.matrix.compose(&inner.matrix)? })
    }

    /// `self + f · other`.
    pub fn plus(&self, f: &Rational, other: &FiberMap) -> Result<FiberMap, FiberError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(FiberError::GradeMismatch(format!(
                "cannot add maps {} → {} and {} → {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(FiberMap { domain: self.domain, codomain: self.codomain, matrix: self.matrix.add_scaled(f, &other.matrix)? })
    }

    pub fn scaled(&self, f: &Rational) -> FiberMap {
        FiberMap { domain: self.domain, codomain: self.codomain, matrix: self.matrix.scale(f) }
    }
}

#[derive(Clone, Debug)]
pub struct FiberModel {
    n: usize,
    /// index subsets of each size, lexicographic
    subsets: Vec<Vec<u32>>,
    /// position of a mask within `subsets[popcount]`
    subset_rank: Vec<usize>,
    omega: Form,
    omega_u: [Form; 2],
    omega_bar: Form,
}

fn lex_subsets(m: usize, a: usize) -> Vec<u32> {
    fn go(start: usize, m: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=m - left {
            go(i + 1, m, left - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if a <= m {
        go(0, m, a, 0, &mut out);
    }
    out
}

impl FiberModel {
    pub fn new(n: usize) -> Result<FiberModel, FiberError> {
        if !(2..=10).contains(&n) {
            return Err(usage(format!("fiber model needs 2 ≤ n ≤ 10, got {n}")));
        }
        let dim = 2 * n;
        let subsets: Vec<Vec<u32>> = (0..=dim).map(|a| lex_subsets(dim, a)).collect();
        let mut subset_rank = vec![0usize; 1 << dim];
        for level in &subsets {
            for (i, &m) in level.iter().enumerate() {
                subset_rank[m as usize] = i;
            }
        }
        let omega: Form = (0..n).map(|i| ((1u32 << i) | (1u32 << (n + i)), 1)).collect();
        let omega_u = [contract_form(&omega, 0), contract_form(&omega, 1)];
        let lifts =
            omega_u.iter().enumerate().fold(omega.clone(), |acc, (i, w)| add_forms(&acc, &wedge_form(1 << i, w)));
        Ok(FiberModel { n, subsets, subset_rank, omega, omega_u, omega_bar: lifts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_v(&self) -> usize {
        2 * self.n
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    /// `ω_i = ι_{e_i} ω`, i ∈ {0, 1}.
    pub fn omega_u(&self, i: usize) -> &Form {
        &self.omega_u[i]
    }

    /// `ω̄ = ω + x^0∧ω_0 + x^1∧ω_1`.
    pub fn omega_bar(&self) -> &Form {
        &self.omega_bar
    }

    pub fn check_space(&self, s: TwistedSpace) -> Result<(), FiberError> {
        if s.a > self.dim_v() {
            return Err(usage(format!("wedge degree {} exceeds 2n = {}", s.a, self.dim_v())));
        }
        Ok(())
    }

    pub fn dim(&self, s: TwistedSpace) -> usize {
        self.subsets.get(s.a).map_or(0, Vec::len) * (s.sym + 1)
    }

    pub fn basis_of(&self, s: TwistedSpace) -> Vec<Monomial> {
        self.subsets[s.a]
            .iter()
            .flat_map(|&subset| (0..=s.sym).map(move |e1_power| Monomial { subset, e1_power }))
            .collect()
    }

    pub fn index(&self, s: TwistedSpace, subset: u32, e1_power: usize) -> usize {
        debug_assert_eq!(subset.count_ones() as usize, s.a);
        debug_assert!(e1_power <= s.sym);
        self.subset_rank[subset as usize] * (s.sym + 1) + e1_power
    }

    fn build<F>(&self, src: TwistedSpace, dst: TwistedSpace, mut f: F) -> FiberMap
    where
        F: FnMut(u32, usize, &mut Vec<(u32, usize, i64)>),
    {
        let mut triplets = Vec::new();
        let mut out = Vec::new();
        for (col, mono) in self.basis_of(src).into_iter().enumerate() {
            out.clear();
            f(mono.subset, mono.e1_power, &mut out);
            for &(mask, p, c) in &out {
                triplets.push((self.index(dst, mask, p), col, rat(c)));
            }
        }
        FiberMap {
            domain: src,
            codomain: dst,
            matrix: SparseMatrix::from_triplets(self.dim(dst), self.dim(src), triplets),
        }
    }

    /// `∂P/∂e_i` on `e_0^p e_1^{B−p}`: (new exponent of e_0, factor).
    fn derivative(p: usize, sym: usize, i: usize) -> Option<(usize, i64)> {
        match i {
            0 if p > 0 => Some((p - 1, p as i64)),
            1 if sym > p => Some((p, (sym - p) as i64)),
            _ => None,
        }
    }

    fn d1(&self, src: TwistedSpace) -> FiberMap {
        let dst = TwistedSpace::new(src.a + 1, src.sym - 1, src.grade);
        self.build(src, dst, |mask, p, out| {
            for i in 0..2 {
                let (Some((np, der)), Some((s, m))) = (Self::derivative(p, src.sym, i), contract_monomial(mask, i))
                else {
                    continue;
                };
                for (m2, c) in wedge_form(m, &self.omega) {
                    out.push((m2, np, s * c * der));
                }
            }
        })
    }

    fn d2(&self, src: TwistedSpace) -> FiberMap {
        let dst = TwistedSpace::new(src.a + 1, src.sym - 1, src.grade);
        self.build(src, dst, |mask, p, out| {
            for i in 0..2 {
                let Some((np, der)) = Self::derivative(p, src.sym, i) else { continue };
                for (m2, c) in wedge_form(mask, &self.omega_u[i]) {
                    out.push((m2, np, c * der));
                }
            }
        })
    }

    fn d0(&self, src: TwistedSpace) -> FiberMap {
        let dst = TwistedSpace::new(src.a - 1, src.sym + 1, src.grade + 1);
        self.build(src, dst, |mask, p, out| {
            // λ_0 ⊗ e_1·P − λ_1 ⊗ e_0·P
            if let Some((s, m)) = contract_monomial(mask, 0) {
                out.push((m, p, s));
            }
            if let Some((s, m)) = contract_monomial(mask, 1) {
                out.push((m, p + 1, -s));
            }
        })
    }

    fn trace(&self, src: TwistedSpace) -> FiberMap {
        let dst = TwistedSpace::new(src.a - 1, src.sym - 1, src.grade);
        self.build(src, dst, |mask, p, out| {
            for i in 0..2 {
                let (Some((np, der)), Some((s, m))) = (Self::derivative(p, src.sym, i), contract_monomial(mask, i))
                else {
                    continue;
                };
                out.push((m, np, s * der));
            }
        })
    }

    /// `λ ⊗ P ↦ (λ ∧ form) ⊗ P` for a homogeneous form of degree `deg`.
    pub fn wedge_map(&self, form: &Form, deg: usize, src: TwistedSpace) -> Result<FiberMap, FiberError> {
        self.check_space(src)?;
        if src.a + deg > self.dim_v() {
            return Err(usage(format!("wedge by a {deg}-form leaves Λ^{}", src.a)));
        }
        let dst = TwistedSpace::new(src.a + deg, src.sym, src.grade);
        Ok(self.build(src, dst, |mask, p, out| {
            for (m2, c) in wedge_form(mask, form) {
                out.push((m2, p, c));
            }
        }))
    }

    pub fn structure_map(&self, kind: StructureKind, src: TwistedSpace) -> Result<FiberMap, FiberError> {
        self.check_space(src)?;
        let top = self.dim_v();
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(usage(format!("{what} undefined on {src}"))) };
        match kind {
            StructureKind::D1 | StructureKind::D2 | StructureKind::D => {
                need(src.sym >= 1 && src.a < top, "d₁/d₂/d")?;
            }
            StructureKind::D0 => need(src.a >= 1, "d₀")?,
            StructureKind::Trace => need(src.a >= 1 && src.sym >= 1, "tr")?,
            StructureKind::WedgeOmegaBar => need(src.a + 2 <= top, "ω̄∧")?,
        }
        Ok(match kind {
            StructureKind::D0 => self.d0(src),
            StructureKind::D1 => self.d1(src),
            StructureKind::D2 => self.d2(src),
            StructureKind::D => {
                let d1 = self.d1(src);
                let d2 = self.d2(src);
                d2.plus(&ratio(1, src.sym as i64 + 1), &d1)?
            }
            StructureKind::Trace => self.trace(src),
            StructureKind::WedgeOmegaBar => self.wedge_map(&self.omega_bar, 2, src)?,
        })
    }

    /// `d₁ + c·d₂` on `src`.
    pub fn d1_plus(&self, c: i64, src: TwistedSpace) -> Result<FiberMap, FiberError> {
        let d1 = self.structure_map(StructureKind::D1, src)?;
        let d2 = self.structure_map(StructureKind::D2, src)?;
        d1.plus(&rat(c), &d2)
    }

    /// `Λ^a U^⊥ ⊗ S^B U` inside `Λ^a V^∨ ⊗ S^B U`.
    pub fn fiber_wedge_perp(&self, a: usize, sym: usize) -> SubspaceBasis {
        let s = TwistedSpace::new(a, sym, 0);
        let dim = self.dim(s);
        if a > self.dim_v() {
            return SubspaceBasis::zero(0);
        }
        let idx: Vec<usize> = self.subsets[a]
            .iter()
            .filter(|&&m| m & U_DUAL == 0)
            .flat_map(|&m| (0..=sym).map(move |p| (m, p)))
            .map(|(m, p)| self.index(s, m, p))
            .collect();
        SubspaceBasis::coordinate(dim, idx)
    }

    /// Whether a vector of `Λ^a V^∨ ⊗ S^B U` lies in `Λ^a U^⊥ ⊗ S^B U`.
    pub fn is_perp_supported(&self, s: TwistedSpace, v: &[(usize, Rational)]) -> bool {
        let level = &self.subsets[s.a];
        v.iter().all(|(i, _)| level[i / (s.sym + 1)] & U_DUAL == 0)
    }

    /// `ξ(μ ⊗ Q) = (μ∧x^0)⊗(e_0·Q) + (μ∧x^1)⊗(e_1·Q)`, extended linearly from
    /// `Λ^{a−1} V^∨ ⊗ S^{b−1} U` to `Λ^a V^∨ ⊗ S^b U`.
    pub fn xi_lift(&self, a: usize, b: usize, v: &[(usize, Rational)]) -> SparseVec {
        let src = TwistedSpace::new(a - 1, b - 1, 0);
        let dst = TwistedSpace::new(a, b, 0);
        let level = &self.subsets[a - 1];
        let mut pairs = Vec::new();
        for (i, c) in v {
            let mask = level[i / (src.sym + 1)];
            let q = i % (src.sym + 1);
            for (bit, p) in [(0usize, q + 1), (1, q)] {
                if let Some((s, m)) = wedge_monomials(mask, 1 << bit) {
                    pairs.push((self.index(dst, m, p), c * rat(s)));
                }
            }
        }
        crate::exactlinalg::sparse_from_pairs(pairs)
    }

    fn check_ab(&self, a: usize, b: usize) -> Result<(), FiberError> {
        if a + b > 2 * self.n - 2 {
            return Err(usage(format!("E^{{{a},{b}}} needs a + b ≤ 2n − 2 = {}", 2 * self.n - 2)));
        }
        Ok(())
    }

    /// `E^{a,b}` as the kernel of `d₀`, without the cross-check.
    pub fn fiber_e_kernel(&self, a: usize, b: usize) -> Result<SubspaceBasis, FiberError> {
        self.check_ab(a, b)?;
        let s = TwistedSpace::new(a, b, 0);
        let basis = if a == 0 {
            SubspaceBasis::full(self.dim(s))
        } else {
            self.structure_map(StructureKind::D0, s)?.matrix.kernel()
        };
        let expected = rank_e(a as i64, b as i64, self.n);
        let expected = usize::try_from(expected).expect("small rank");
        if basis.dim() != expected {
            return Err(FiberError::DimensionMismatch { what: format!("E^{{{a},{b}}}"), expected, got: basis.dim() });
        }
        Ok(basis)
    }

    /// `E^{a,b}` spanned by `Λ^a U^⊥ ⊗ S^b U` and the lifts `ξ` of
    /// `Λ^{a−1} U^⊥ ⊗ S^{b−1} U`.
    pub fn fiber_e_lifted(&self, a: usize, b: usize) -> Result<SubspaceBasis, FiberError> {
        self.check_ab(a, b)?;
        let mut vectors: Vec<SparseVec> = self.fiber_wedge_perp(a, b).vectors().to_vec();
        if a >= 1 && b >= 1 {
            for v in self.fiber_wedge_perp(a - 1, b - 1).vectors() {
                vectors.push(self.xi_lift(a, b, v));
            }
        }
        Ok(SubspaceBasis::new(self.dim(TwistedSpace::new(a, b, 0)), vectors)?)
    }

    /// `E^{a,b} ⊂ Λ^a V^∨ ⊗ S^b U`: the kernel construction, checked against
    /// the rank formula and the lifted construction.
    pub fn fiber_e(&self, a: usize, b: usize) -> Result<SubspaceBasis, FiberError> {
        let kernel = self.fiber_e_kernel(a, b)?;
        let lifted = self.fiber_e_lifted(a, b)?;
        if !subspace_equal(&kernel, &lifted)? {
            return Err(FiberError::ConstructionDisagreement { a, b });
        }
        Ok(kernel)
    }

    /// `d : E^{a,b} → E^{a+1,b−1}` in the bases returned by [`Self::fiber_e_kernel`].
    pub fn restricted_d(&self, a: usize, b: usize) -> Result<SparseMatrix, FiberError> {
        if b == 0 {
            return Err(usage("restricted d needs b ≥ 1"));
        }
        let dom = self.fiber_e_kernel(a, b)?;
        let cod = self.fiber_e_kernel(a + 1, b - 1)?;
        self.restricted_d_between(a, b, &dom, &cod)
    }

    pub fn restricted_d_between(
        &self,
        a: usize,
        b: usize,
        dom: &SubspaceBasis,
        cod: &SubspaceBasis,
    ) -> Result<SparseMatrix, FiberError> {
        let d = self.structure_map(StructureKind::D, TwistedSpace::new(a, b, 0))?;
        Ok(restrict(&d.matrix, dom, cod)?)
    }
}

/// `d₀ ∘ (d₁ + (B+1)d₂)` type identities, evaluated as matrices.
pub mod identities {
    use super::*;

    /// `(d₁ + B·d₂) ∘ (d₁ + (B+1)·d₂)` from `Λ^a ⊗ S^B`; zero for every `B ≥ 2`.
    pub fn composition_zero(model: &FiberModel, a: usize, sym: usize) -> Result<bool, FiberError> {
        let first = model.d1_plus(sym as i64 + 1, TwistedSpace::new(a, sym, 0))?;
        let second = model.d1_plus(sym as i64, first.codomain)?;
        Ok(second.after(&first)?.matrix.is_zero())
    }

    /// `d₀∘[(b+2)(d₁+(b+1)d₂)] + [b(d₁+(b+2)d₂)]∘d₀` on `Λ^a ⊗ S^b`.
    pub fn anticommutator(model: &FiberModel, a: usize, b: usize) -> Result<SparseMatrix, FiberError> {
        let src = TwistedSpace::new(a, b, 0);
        let top = model.d1_plus(b as i64 + 1, src)?.scaled(&rat(b as i64 + 2));
        let right = model.structure_map(StructureKind::D0, top.codomain)?;
        let left = model.structure_map(StructureKind::D0, src)?;
        let bottom = model.d1_plus(b as i64 + 2, left.codomain)?.scaled(&rat(b as i64));
        let one = right.after(&top)?;
        let two = bottom.after(&left)?;
        Ok(one.plus(&rat(1), &two)?.matrix)
    }
}

impl FiberModel {
    /// Vectors spanning `ω_0∧Λ^{m−1}U^⊥ + ω_1∧Λ^{m−1}U^⊥ ⊂ Λ^m U^⊥`, i.e. the
    /// image of `U ⊗ Λ^{m−1}U^⊥`, in coordinates of `Λ^m V^∨`.
    pub fn u_ideal(&self, m: usize) -> Vec<SparseVec> {
        if m == 0 || m > self.dim_v() {
            return Vec::new();
        }
        let dst = TwistedSpace::new(m, 0, 0);
        let mut out = Vec::new();
        for &mask in self.subsets[m - 1].iter().filter(|&&x| x & U_DUAL == 0) {
            for w in &self.omega_u {
                let v: SparseVec =
                    wedge_form(mask, w).into_iter().map(|(m2, c)| (self.index(dst, m2, 0), rat(c))).collect::<Vec<_>>();
                let v = crate::exactlinalg::sparse_from_pairs(v);
                if !v.is_empty() {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Perp-supported basis vectors of `Λ^m U^⊥` (symmetric degree 0).
    pub fn perp_vectors(&self, m: usize) -> Vec<SparseVec> {
        self.fiber_wedge_perp(m, 0).vectors().to_vec()
    }

    pub fn zero_check(&self, v: &[(usize, Rational)]) -> bool {
        v.iter().all(|(_, x)| x.is_zero())
    }
}

/// `0 → E^{a,b} → Λ^aV^∨⊗S^bU → E^{a−1,b+1}(1) → 0` via `d₀`.
pub fn verify_ces(model: &FiberModel, a: usize, b: usize) -> Result<Report, FiberError> {
    if a == 0 {
        return Err(usage("the exact sequence needs a ≥ 1"));
    }
    let s = TwistedSpace::new(a, b, 0);
    let d0 = model.structure_map(StructureKind::D0, s)?;
    let kernel = d0.matrix.kernel();
    let image = d0.matrix.image();
    let sub = model.fiber_e_lifted(a, b)?;
    let quotient = model.fiber_e_kernel(a - 1, b + 1)?;
    Ok(Report::new("ces")
        .param("n", model.n())
        .param("a", a)
        .param("b", b)
        .check("kernel_is_e", true, subspace_equal(&kernel, &sub)?)
        .check("image_is_e", true, subspace_equal(&image, &quotient)?)
        .check("dim", model.dim(s), sub.dim() + quotient.dim())
        .finish())
}

/// Composition-zero and anticommutativity identities on `Λ^a ⊗ S^b`, where defined.
pub fn verify_identities(model: &FiberModel, a: usize, b: usize) -> Result<Report, FiberError> {
    model.check_ab(a, b)?;
    let mut report = Report::new("d2zero").param("n", model.n()).param("a", a).param("b", b);
    if b >= 2 {
        report = report.check("composition_zero", true, identities::composition_zero(model, a, b)?);
    }
    if a >= 1 && b >= 1 {
        report = report.check("anticommutes", true, identities::anticommutator(model, a, b)?.is_zero());
    }
    Ok(report.finish())
}

/// Kernel and lifted constructions of `E^{a,b}` agree.
pub fn verify_cross(model: &FiberModel, a: usize, b: usize) -> Result<Report, FiberError> {
    let kernel = match model.fiber_e_kernel(a, b) {
        Ok(k) => k,
        Err(FiberError::DimensionMismatch { expected, got, .. }) => {
            return Ok(Report::new("cross")
                .param("n", model.n())
                .param("a", a)
                .param("b", b)
                .check("dim", expected, got)
                .finish())
        }
        Err(e) => return Err(e),
    };
    let lifted = model.fiber_e_lifted(a, b)?;
    let expected = usize::try_from(rank_e(a as i64, b as i64, model.n())).expect("small rank");
    Ok(Report::new("cross")
        .param("n", model.n())
        .param("a", a)
        .param("b", b)
        .check("dim", expected, kernel.dim())
        .check("equal", true, subspace_equal(&kernel, &lifted)?)
        .finish())
}
