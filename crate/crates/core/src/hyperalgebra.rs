//! The negative/toral part of the hyperalgebra of `SL_n` in canonical form,
//! and the operators used by the reduction criterion.
//!
//! Elements are finite sums `Σ_N F^{(N)} · ℋ_N` where `N` runs over strictly
//! upper-triangular matrices with nonnegative entries, `F^{(N)}` is the
//! canonical product of divided powers `E_{b,a}^{(N_{a,b})}` (factors ordered
//! by `(b, a)` lexicographically), and `ℋ_N` is a linear combination of
//! monomials `∏_l binom(H_l, k_l)` in the binomial generators of the torus.
//!
//! The toral generators use the shift rule
//! `binom(H + r, m) = Σ_k binom(H, k)·binom(r, m−k)` and the degree-1 product
//! `H·binom(H, k) = (k+1)·binom(H, k+1) + k·binom(H, k)`; no general product
//! of hyperalgebra elements is needed anywhere in the crate, and none is
//! implemented.

use num::bigint::BigInt;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{binom_int, FieldCtx, Scalar};
use crate::flows;
use crate::weights::WeightVec;

/// A strictly upper-triangular `n × n` matrix with nonnegative entries,
/// stored in the canonical factor order: entry `(a, b)` (with `a < b`) holds
/// the exponent of `E_{b,a}`, and entries are laid out sorted by `(b, a)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UTMatrix {
    n: usize,
    ent: Vec<u32>,
}

fn tri_len(n: usize) -> usize {
    n * (n - 1) / 2
}

fn tri_idx(a: usize, b: usize) -> usize {
    debug_assert!(1 <= a && a < b);
    (b - 1) * (b - 2) / 2 + (a - 1)
}

impl UTMatrix {
    pub fn zeros(n: usize) -> UTMatrix {
        assert!((2..=64).contains(&n), "rank context n={n} out of supported range");
        UTMatrix { n, ent: vec![0; tri_len(n)] }
    }

    /// Matrix with a single entry `m` at `(a, b)`, i.e. the exponent pattern
    /// of `E_{b,a}^{(m)}`.
    pub fn unit(n: usize, a: usize, b: usize, m: u32) -> Result<UTMatrix> {
        let mut mat = UTMatrix::zeros(n);
        if !(1 <= a && a < b && b <= n) {
            return Err(Error::IndexRange(format!("matrix position ({a},{b}) for n={n}")));
        }
        mat.ent[tri_idx(a, b)] = m;
        Ok(mat)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        if a < b && b <= self.n {
            self.ent[tri_idx(a, b)]
        } else {
            0
        }
    }

    pub fn set(&mut self, a: usize, b: usize, v: u32) {
        assert!(1 <= a && a < b && b <= self.n);
        self.ent[tri_idx(a, b)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.ent.iter().all(|&v| v == 0)
    }

    /// Row sum `N^s = Σ_t N_{s,t}`.
    pub fn row_sum(&self, s: usize) -> u32 {
        (s + 1..=self.n).map(|t| self.get(s, t)).sum()
    }

    /// Total root height `Σ N_{a,b}·(b − a)` (the number of simple-root steps
    /// the monomial lowers by).
    pub fn root_height(&self) -> u32 {
        self.iter_entries().map(|(a, b, v)| v * (b - a) as u32).sum()
    }

    /// Nonzero entries `(a, b, N_{a,b})` in canonical factor order.
    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (2..=self.n)
            .flat_map(move |b| (1..b).map(move |a| (a, b)))
            .filter_map(move |(a, b)| {
                let v = self.ent[tri_idx(a, b)];
                (v > 0).then_some((a, b, v))
            })
    }

    /// Entrywise difference; `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &UTMatrix) -> Option<UTMatrix> {
        assert_eq!(self.n, other.n);
        let mut ent = Vec::with_capacity(self.ent.len());
        for (x, y) in self.ent.iter().zip(&other.ent) {
            ent.push(x.checked_sub(*y)?);
        }
        Some(UTMatrix { n: self.n, ent })
    }

    pub fn add(&self, other: &UTMatrix) -> UTMatrix {
        assert_eq!(self.n, other.n);
        UTMatrix {
            n: self.n,
            ent: self.ent.iter().zip(&other.ent).map(|(x, y)| x + y).collect(),
        }
    }

    /// Applies a list of signed unit shifts; `None` if any entry goes negative.
    pub fn shifted(&self, deltas: &[(usize, usize, i64)]) -> Option<UTMatrix> {
        let mut out = self.clone();
        for &(a, b, d) in deltas {
            let idx = tri_idx(a, b);
            let v = out.ent[idx] as i64 + d;
            if v < 0 {
                return None;
            }
            out.ent[idx] = v as u32;
        }
        Some(out)
    }

    /// The weight of `F^{(N)}` in fundamental coordinates.
    pub fn weight(&self) -> WeightVec {
        let mut eps = vec![0i64; self.n];
        for (a, b, v) in self.iter_entries() {
            eps[a - 1] -= v as i64;
            eps[b - 1] += v as i64;
        }
        WeightVec::from_eps(&eps)
    }

    /// All matrices with per-row sum caps `N^a ≤ caps[a−1]`.
    pub fn enumerate_with_row_caps(n: usize, caps: &[u32]) -> Vec<UTMatrix> {
        assert_eq!(caps.len(), n);
        let mut out = vec![UTMatrix::zeros(n)];
        for a in 1..n {
            let cells: Vec<(usize, usize)> = (a + 1..=n).map(|b| (a, b)).collect();
            let mut next = Vec::new();
            for base in &out {
                distribute(base, &cells, caps[a - 1], &mut next);
            }
            out = next;
        }
        out
    }

    /// All matrices with total root height ≤ `max_height`.
    pub fn enumerate_by_height(n: usize, max_height: u32) -> Vec<UTMatrix> {
        let cells: Vec<(usize, usize)> = (2..=n).flat_map(|b| (1..b).map(move |a| (a, b))).collect();
        let mut out = Vec::new();
        let mut cur = UTMatrix::zeros(n);
        fn rec(
            cells: &[(usize, usize)],
            idx: usize,
            budget: u32,
            cur: &mut UTMatrix,
            out: &mut Vec<UTMatrix>,
        ) {
            if idx == cells.len() {
                out.push(cur.clone());
                return;
            }
            let (a, b) = cells[idx];
            let step = (b - a) as u32;
            let mut v = 0u32;
            loop {
                if v * step > budget {
                    break;
                }
                cur.set(a, b, v);
                rec(cells, idx + 1, budget - v * step, cur, out);
                v += 1;
            }
            cur.set(a, b, 0);
        }
        rec(&cells, 0, max_height, &mut cur, &mut out);
        out
    }
}

fn distribute(base: &UTMatrix, cells: &[(usize, usize)], cap: u32, out: &mut Vec<UTMatrix>) {
    fn rec(m: &mut UTMatrix, cells: &[(usize, usize)], budget: u32, out: &mut Vec<UTMatrix>) {
        match cells.split_first() {
            None => out.push(m.clone()),
            Some((&(a, b), rest)) => {
                for v in 0..=budget {
                    m.set(a, b, v);
                    rec(m, rest, budget - v, out);
                }
                m.set(a, b, 0);
            }
        }
    }
    let mut m = base.clone();
    rec(&mut m, cells, cap, out);
}

/// A monomial `∏_l binom(H_l, k_l)` in the binomial toral generators;
/// `exps[l−1] = k_l`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HMonomial {
    exps: Vec<u32>,
}

impl HMonomial {
    pub fn identity(n: usize) -> HMonomial {
        HMonomial { exps: vec![0; n - 1] }
    }

    pub fn new(exps: Vec<u32>) -> HMonomial {
        HMonomial { exps }
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }

    pub fn at(&self, l: usize) -> u32 {
        self.exps[l - 1]
    }

    pub fn with_at(&self, l: usize, k: u32) -> HMonomial {
        let mut exps = self.exps.clone();
        exps[l - 1] = k;
        HMonomial { exps }
    }

    pub fn rank_positions(&self) -> usize {
        self.exps.len()
    }
}

/// A canonical basis monomial `F^{(N)} · ∏ binom(H_l, k_l)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub mat: UTMatrix,
    pub h: HMonomial,
}

impl Monomial {
    pub fn pure(mat: UTMatrix) -> Monomial {
        let n = mat.n();
        Monomial { mat, h: HMonomial::identity(n) }
    }
}

/// An element of the negative/toral subalgebra in canonical form: a finite
/// linear combination of [`Monomial`]s with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UElem {
    field: FieldCtx,
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Hash for UElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.n.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl UElem {
    pub fn zero(field: FieldCtx, n: usize) -> UElem {
        assert!((2..=64).contains(&n));
        UElem { field, n, terms: BTreeMap::new() }
    }

    pub fn scalar(field: FieldCtx, n: usize, c: Scalar) -> UElem {
        let mut e = UElem::zero(field, n);
        e.add_term(Monomial::pure(UTMatrix::zeros(n)), c);
        e
    }

    pub fn one(field: FieldCtx, n: usize) -> UElem {
        UElem::scalar(field, n, field.one())
    }

    /// The monomial `F^{(N)}` with coefficient 1.
    pub fn monomial(field: FieldCtx, mat: UTMatrix) -> UElem {
        let n = mat.n();
        let mut e = UElem::zero(field, n);
        e.add_term(Monomial::pure(mat), field.one());
        e
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Accumulates `c` on `mono`, dropping the term if the total vanishes.
    pub fn add_term(&mut self, mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mono.mat.n(), self.n);
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &UElem) -> UElem {
        self.check_compat(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UElem) -> UElem {
        self.check_compat(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> UElem {
        let mut out = UElem::zero(self.field, self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> UElem {
        let mut out = UElem::zero(self.field, self.n);
        if c.is_zero() {
            return out;
        }
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k.mul(c));
        }
        out
    }

    fn check_compat(&self, other: &UElem) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.n, other.n, "rank mismatch");
    }

    /// True when no term carries toral factors (the element lies in `𝒰⁻`).
    pub fn is_in_u_minus(&self) -> bool {
        self.terms.keys().all(|m| m.h.is_identity())
    }

    /// `Some(c)` when the element is the scalar `c·1` (nonzero).
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        (m.mat.is_zero() && m.h.is_identity()).then(|| c.clone())
    }

    /// Divides by the coefficient of the canonically least monomial, yielding
    /// the scale-normalized representative used for memoization.
    pub fn normalized(&self) -> UElem {
        match self.terms.values().next() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("stored coefficients are nonzero")),
        }
    }

    /// Lifts an `𝔽_p` element to `ℚ` using canonical residue representatives.
    pub fn lift_to_rationals(&self) -> UElem {
        let mut out = UElem::zero(FieldCtx::Rationals, self.n);
        for (m, c) in &self.terms {
            let v = c.lift_to_int().expect("residues lift");
            out.add_term(m.clone(), FieldCtx::Rationals.from_bigint(&v));
        }
        out
    }

    /// Reduces a `ℚ`-element with integral coefficients into `𝔽_p`.
    /// Errors if a coefficient is not an integer.
    pub fn reduce_mod(&self, field: FieldCtx) -> Result<UElem> {
        let mut out = UElem::zero(field, self.n);
        for (m, c) in &self.terms {
            let v = c
                .lift_to_int()
                .ok_or_else(|| Error::Internal(format!("non-integral coefficient {c} in reduction")))?;
            out.add_term(m.clone(), field.from_bigint(&v));
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// weight bookkeeping
// ---------------------------------------------------------------------------

/// The common weight of all terms: `Ok(Some(w))` for a weight-homogeneous
/// element, `Ok(None)` for mixed weights, error on zero input.
pub fn weight_of(p: &UElem) -> Result<Option<WeightVec>> {
    let mut it = p.terms();
    let first = match it.next() {
        None => return Err(Error::ZeroInput("weight of the zero element is undefined")),
        Some((m, _)) => m.mat.weight(),
    };
    for (m, _) in it {
        if m.mat.weight() != first {
            return Ok(None);
        }
    }
    Ok(Some(first))
}

/// Splits into weight-homogeneous components, ordered by weight.
pub fn weight_components(p: &UElem) -> Vec<UElem> {
    let mut buckets: BTreeMap<WeightVec, UElem> = BTreeMap::new();
    for (m, c) in p.terms() {
        buckets
            .entry(m.mat.weight())
            .or_insert_with(|| UElem::zero(p.field(), p.n()))
            .add_term(m.clone(), c.clone());
    }
    buckets.into_values().collect()
}

/// Coordinates `k_l ≥ 0` of `−weight(p) = Σ_l k_l·α_l` in the simple-root
/// basis; requires a weight-homogeneous nonzero element.
pub fn weight_root_coords(p: &UElem) -> Result<Vec<u32>> {
    match weight_of(p)? {
        None => Err(Error::MixedWeight),
        Some(_) => {
            let (m, _) = p.terms().next().unwrap();
            let n = p.n();
            let mut k = vec![0u32; n - 1];
            for (a, b, v) in m.mat.iter_entries() {
                for item in k.iter_mut().take(b - 1).skip(a - 1) {
                    *item += v;
                }
            }
            Ok(k)
        }
    }
}

// ---------------------------------------------------------------------------
// toral operators: ev, theta, degree-1 multiplication
// ---------------------------------------------------------------------------

/// Evaluation at the weight `ω`: replaces each `binom(H_l, k)` by the integer
/// `binom(ω(H_l), k)`. Defined for arbitrary integral `ω`.
pub fn ev(omega: &WeightVec, p: &UElem) -> Result<UElem> {
    check_rank(omega, p)?;
    let mut out = UElem::zero(p.field(), p.n());
    for (m, c) in p.terms() {
        let mut factor = BigInt::one();
        for l in 1..p.n() {
            let k = m.h.at(l);
            if k > 0 {
                factor *= binom_int(omega.coord(l), k);
                if factor.is_zero() {
                    break;
                }
            }
        }
        out.add_term(Monomial::pure(m.mat.clone()), c.mul(&p.field().from_bigint(&factor)));
    }
    Ok(out)
}

/// Expansion of `∏_l binom(H_l + δ_l, k_l)` back into the binomial basis.
fn theta_hmono(delta: &WeightVec, h: &HMonomial) -> Vec<(HMonomial, BigInt)> {
    let mut acc: Vec<(HMonomial, BigInt)> =
        vec![(HMonomial::identity(h.rank_positions() + 1), BigInt::one())];
    for l in 1..=h.rank_positions() {
        let m = h.at(l);
        if m == 0 {
            continue;
        }
        let d = delta.coord(l);
        let mut next = Vec::with_capacity(acc.len() * (m as usize + 1));
        for (partial, c) in &acc {
            for k in 0..=m {
                let b = binom_int(d, m - k);
                if b.is_zero() {
                    continue;
                }
                next.push((partial.with_at(l, k), c * b));
            }
        }
        acc = next;
    }
    acc
}

/// The twist `θ_δ`: substitutes `binom(H_l, k) ↦ binom(H_l + δ(H_l), k)` in
/// every toral factor and re-expands. An algebra automorphism of the toral
/// part; `θ_δ ∘ θ_δ' = θ_{δ+δ'}`.
pub fn theta(delta: &WeightVec, p: &UElem) -> Result<UElem> {
    check_rank(delta, p)?;
    let mut out = UElem::zero(p.field(), p.n());
    for (m, c) in p.terms() {
        for (h2, coef) in theta_hmono(delta, &m.h) {
            out.add_term(
                Monomial { mat: m.mat.clone(), h: h2 },
                c.mul(&p.field().from_bigint(&coef)),
            );
        }
    }
    Ok(out)
}

/// Left multiplication of the toral part by the degree-1 generator `H_l`,
/// via `H·binom(H, k) = (k+1)·binom(H, k+1) + k·binom(H, k)`.
pub fn h1_times(l: usize, p: &UElem) -> Result<UElem> {
    check_simple_index(l, p.n())?;
    let mut out = UElem::zero(p.field(), p.n());
    for (m, c) in p.terms() {
        let k = m.h.at(l);
        out.add_term(
            Monomial { mat: m.mat.clone(), h: m.h.with_at(l, k + 1) },
            c.mul(&p.field().from_int(k as i64 + 1)),
        );
        if k > 0 {
            out.add_term(m.clone(), c.mul(&p.field().from_int(k as i64)));
        }
    }
    Ok(out)
}

fn check_rank(w: &WeightVec, p: &UElem) -> Result<()> {
    if w.n() != p.n() {
        return Err(Error::Weight(format!(
            "weight has {} coordinates but the element lives at rank n={}",
            w.n() - 1,
            p.n()
        )));
    }
    Ok(())
}

fn check_simple_index(l: usize, n: usize) -> Result<()> {
    if l < 1 || l >= n {
        return Err(Error::IndexRange(format!("simple index {l} for n={n}")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// eta: projection of a raising action to the negative/toral part
// ---------------------------------------------------------------------------

/// `η_{α_l}` for a simple index `l`: the component in the negative/toral part
/// of `X_{α_l,1} · P`, modulo the left ideal generated by positive raising
/// operators. Acts on the whole negative/toral subalgebra.
///
/// For an input term `F^{(M)}·ℋ` the output collects, per the commutation
/// rules of the divided-power generators:
/// * for each `s < l` with `M_{s,l+1} ≥ 1`: the term at
///   `N = M + E_{s,l} − E_{s,l+1}` scaled by `N_{s,l}`;
/// * for `M_{l,l+1} ≥ 1`: the term at `N = M − E_{l,l+1}` with toral part
///   `(H_l − N^l + N^{l+1})·ℋ`;
/// * for each `t > l+1` with `M_{l,t} ≥ 1`: the term at
///   `N = M − E_{l,t} + E_{l+1,t}` scaled by `−N_{l+1,t}`.
pub fn eta_simple(l: usize, p: &UElem) -> Result<UElem> {
    check_simple_index(l, p.n())?;
    let n = p.n();
    let field = p.field();
    let mut out = UElem::zero(field, n);
    for (m, c) in p.terms() {
        // transit through an earlier row: (s,l+1) -> (s,l)
        for s in 1..l {
            if m.mat.get(s, l + 1) >= 1 {
                let nm = m.mat.shifted(&[(s, l, 1), (s, l + 1, -1)]).unwrap();
                let mult = field.from_int(nm.get(s, l) as i64);
                out.add_term(Monomial { mat: nm, h: m.h.clone() }, c.mul(&mult));
            }
        }
        // absorb one simple lowering step, producing the H_l correction
        if m.mat.get(l, l + 1) >= 1 {
            let nm = m.mat.shifted(&[(l, l + 1, -1)]).unwrap();
            let shift = nm.row_sum(l + 1) as i64 - nm.row_sum(l) as i64;
            // (H_l + shift) · ℋ
            let k = m.h.at(l);
            out.add_term(
                Monomial { mat: nm.clone(), h: m.h.with_at(l, k + 1) },
                c.mul(&field.from_int(k as i64 + 1)),
            );
            let diag = field.from_int(k as i64 + shift);
            out.add_term(Monomial { mat: nm, h: m.h.clone() }, c.mul(&diag));
        }
        // push a tail across: (l,t) -> (l+1,t)
        for t in l + 2..=n {
            if m.mat.get(l, t) >= 1 {
                let nm = m.mat.shifted(&[(l, t, -1), (l + 1, t, 1)]).unwrap();
                let mult = field.from_int(-(nm.get(l + 1, t) as i64));
                out.add_term(Monomial { mat: nm, h: m.h.clone() }, c.mul(&mult));
            }
        }
    }
    Ok(out)
}

/// `η_α` for the positive root `α = α_i + ⋯ + α_{j−1}`, built recursively as
/// the operator commutator `[η_{α_i}, η_{α_{i+1}+⋯+α_{j−1}}]`, mirroring
/// `X_α = [X_{α_i}, X_{α_{i+1}+⋯+α_{j−1}}]` for the matrix units.
pub fn eta_root(i: usize, j: usize, p: &UElem) -> Result<UElem> {
    if !(1 <= i && i < j && j <= p.n()) {
        return Err(Error::IndexRange(format!("root indices ({i},{j}) for n={}", p.n())));
    }
    if j == i + 1 {
        return eta_simple(i, p);
    }
    let a = eta_simple(i, &eta_root(i + 1, j, p)?)?;
    let b = eta_root(i + 1, j, &eta_simple(i, p)?)?;
    Ok(a.sub(&b))
}

/// `η_{α,m}` for the divided power `X_{α,m} = X_α^m / m!`. Over `ℚ` this is
/// `η_α^m / m!`; over `𝔽_p` the computation is lifted to `ℤ` via canonical
/// residues, divided exactly (integrality is an invariant of the integral
/// form and is asserted), and reduced back.
pub fn eta_divided(i: usize, j: usize, m: u32, p: &UElem) -> Result<UElem> {
    if m == 0 {
        return Ok(p.clone());
    }
    if m == 1 {
        return eta_root(i, j, p);
    }
    let compute = |q: &UElem| -> Result<UElem> {
        let mut acc = q.clone();
        for _ in 0..m {
            acc = eta_root(i, j, &acc)?;
        }
        let mut fact = BigInt::one();
        for t in 2..=m as u64 {
            fact *= BigInt::from(t);
        }
        let inv = FieldCtx::Rationals
            .from_bigint(&fact)
            .inv()
            .expect("factorial is nonzero");
        Ok(acc.scale(&inv))
    };
    match p.field() {
        FieldCtx::Rationals => compute(p),
        f @ FieldCtx::Prime(_) => {
            let lifted = compute(&p.lift_to_rationals())?;
            lifted.reduce_mod(f)
        }
    }
}

/// `r^ω_{α,m} = ev^ω ∘ η_{α,m}` for `α = α_i + ⋯ + α_{j−1}`: the obstruction
/// operator of the reduction criterion.
pub fn r_raise(omega: &WeightVec, i: usize, j: usize, m: u32, f: &UElem) -> Result<UElem> {
    ev(omega, &eta_divided(i, j, m, f)?)
}

// ---------------------------------------------------------------------------
// xi and its commutator form
// ---------------------------------------------------------------------------

/// `ξ_i(a; b)`: the flow-indexed operator
/// `Σ_N F^{(N)} Σ_{Γ ∈ ℱ_i(a;b)} sgn_i(Γ)·θ_{ω_i}(ℋ_{N+Γ})`.
///
/// `sources`/`sinks` follow the family shape `a_1 < ⋯ < a_q ≤ i < b_q < ⋯ < b_1`.
pub fn xi(i: usize, sources: &[usize], sinks: &[usize], p: &UElem) -> Result<UElem> {
    let n = p.n();
    check_simple_index(i, n)?;
    let fam = flows::enumerate_family(n, i, sources, sinks)?;
    let omega_i = WeightVec::fundamental(n, i)?;
    let field = p.field();
    let mut out = UElem::zero(field, n);
    for gamma in &fam {
        let sign = gamma.sign(i)?;
        let gmat = gamma.matrix();
        for (m, c) in p.terms() {
            if let Some(nm) = m.mat.checked_sub(&gmat) {
                let cc = if sign < 0 { c.neg() } else { c.clone() };
                for (h2, coef) in theta_hmono(&omega_i, &m.h) {
                    out.add_term(
                        Monomial { mat: nm.clone(), h: h2 },
                        cc.mul(&field.from_bigint(&coef)),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// All interleavings of the ascending run `a, a+1, …, i−1` with the
/// descending run `b, b−1, …, i+1` (the order condition `𝒪(a, i, b)`).
/// Callers working with a family sink `b_j` pass `b = b_j − 1`.
pub fn o_sequences(a: usize, i: usize, b: usize) -> Vec<Vec<usize>> {
    let asc: Vec<usize> = (a..i).collect();
    let desc: Vec<usize> = (i + 1..=b).rev().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(asc.len() + desc.len());
    fn merge(
        asc: &[usize],
        desc: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if asc.is_empty() && desc.is_empty() {
            out.push(cur.clone());
            return;
        }
        if let Some((&x, rest)) = asc.split_first() {
            cur.push(x);
            merge(rest, desc, cur, out);
            cur.pop();
        }
        if let Some((&x, rest)) = desc.split_first() {
            cur.push(x);
            merge(asc, rest, cur, out);
            cur.pop();
        }
    }
    merge(&asc, &desc, &mut cur, &mut out);
    out
}

/// Checks membership in `𝒪(a, i, b)`; the two runs are disjoint (ascending
/// part below `i`, descending part above), so the check is a two-pointer scan.
pub fn is_o_sequence(seq: &[usize], a: usize, i: usize, b: usize) -> bool {
    let asc: Vec<usize> = (a..i).collect();
    let desc: Vec<usize> = (i + 1..=b).rev().collect();
    let (mut p1, mut p2) = (0usize, 0usize);
    for &x in seq {
        if p1 < asc.len() && x == asc[p1] {
            p1 += 1;
        } else if p2 < desc.len() && x == desc[p2] {
            p2 += 1;
        } else {
            return false;
        }
    }
    p1 == asc.len() && p2 == desc.len()
}

/// The nested right-normed commutator form of `ξ_i(a; b)`:
/// `[η_{t_1}, η_{t_2}, …, η_{t_K}, θ_{ω_i}]` where the token list interleaves
/// one validated order-condition sequence per source (given for sources
/// `a_q, a_{q−1}, …, a_1`, i.e. in bracket reading order) with a copy of `i`
/// after each. Agrees with [`xi`] for every valid choice of interleavings.
pub fn bracket_xi(i: usize, sequences: &[Vec<usize>], p: &UElem) -> Result<UElem> {
    let n = p.n();
    check_simple_index(i, n)?;
    // infer (a_j, b_j) per sequence and validate the family shape
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(sequences.len());
    for seq in sequences {
        let a = seq.iter().copied().filter(|&x| x < i).min().unwrap_or(i);
        let bm1 = seq.iter().copied().filter(|&x| x > i).max().unwrap_or(i);
        if seq.iter().any(|&x| x == i || x == 0 || x >= n) {
            return Err(Error::Input(format!("bracket sequence {seq:?} has out-of-range entries")));
        }
        if !is_o_sequence(seq, a, i, bm1) {
            return Err(Error::Input(format!(
                "sequence {seq:?} violates the order condition O({a},{i},{bm1})"
            )));
        }
        pairs.push((a, bm1 + 1));
    }
    // bracket order lists a_q first: sources strictly decreasing, sinks strictly increasing
    for w in pairs.windows(2) {
        if !(w[1].0 < w[0].0 && w[1].1 > w[0].1) {
            return Err(Error::Input(
                "bracket sequences must be given for sources a_q, …, a_1 (nested pairs)".into(),
            ));
        }
    }
    if let Some(&(aq, bq)) = pairs.first() {
        if !(aq >= 1 && aq <= i && bq > i && pairs.last().unwrap().1 <= n) {
            return Err(Error::Input("bracket sequences leave the family range".into()));
        }
    }
    let mut tokens: Vec<usize> = Vec::new();
    for seq in sequences {
        tokens.extend_from_slice(seq);
        tokens.push(i);
    }
    let omega_i = WeightVec::fundamental(n, i)?;
    comm_apply(&tokens, &omega_i, p)
}

fn comm_apply(tokens: &[usize], omega_i: &WeightVec, p: &UElem) -> Result<UElem> {
    match tokens.split_first() {
        None => theta(omega_i, p),
        Some((&t, rest)) => {
            let a = eta_simple(t, &comm_apply(rest, omega_i, p)?)?;
            let b = comm_apply(rest, omega_i, &eta_simple(t, p)?)?;
            Ok(a.sub(&b))
        }
    }
}

// ---------------------------------------------------------------------------
// canonical printing
// ---------------------------------------------------------------------------

impl fmt::Display for UElem {
    /// Canonical form: terms in increasing monomial order, divided-power
    /// factors in the `(b, a)` order, exponent `(1)` omitted, toral factors
    /// printed after the matrix factors. Parseable by the expression grammar
    /// whenever the element lies in `𝒰⁻`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (neg, mag) = match c {
                Scalar::Rat(r) => {
                    if r < &num::rational::BigRational::zero() {
                        (true, Scalar::Rat(-r))
                    } else {
                        (false, c.clone())
                    }
                }
                Scalar::Mod(..) => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (a, b, v) in m.mat.iter_entries() {
                if v == 1 {
                    factors.push(format!("E({b},{a})"));
                } else {
                    factors.push(format!("E({b},{a})^({v})"));
                }
            }
            for l in 1..self.n {
                let k = m.h.at(l);
                if k == 1 {
                    factors.push(format!("H({l})"));
                } else if k > 1 {
                    factors.push(format!("H({l})^({k})"));
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
