//! Brute-force model of the Weyl module inside tensor space.
//!
//! For a dominant weight `ω` with coherent partition `λ` (|λ| = r boxes), the
//! module is realized as the span of `{F_T · e⁺ : T standard of shape λ}`
//! inside the r-fold tensor power of the natural module, where `e⁺` is the
//! column-wise antisymmetrization of the canonical filling. Everything is
//! computed exactly over ℚ or 𝔽_p, giving an independent oracle for the
//! symbolic operator layer.

use std::collections::BTreeMap;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::field::{binom_int, FieldCtx, Scalar};
use crate::flows::Flow;
use crate::hyperalgebra::{HMonomial, UElem};
use crate::tableaux::{coherent_partition, enumerate_standard, tableau_cmp, Composition, Tableau};
use crate::weights::WeightVec;

/// A vector in the r-fold tensor power of the natural module: a finite sum of
/// words over the alphabet `{1, …, n}` with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorVec {
    field: FieldCtx,
    n: usize,
    r: usize,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl TensorVec {
    pub fn zero(field: FieldCtx, n: usize, r: usize) -> TensorVec {
        TensorVec { field, n, r, terms: BTreeMap::new() }
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[u8]) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, word: Vec<u8>, c: Scalar) {
        debug_assert_eq!(word.len(), self.r);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn add(&self, other: &TensorVec) -> TensorVec {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorVec) -> TensorVec {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TensorVec {
        let mut out = TensorVec::zero(self.field, self.n, self.r);
        if c.is_zero() {
            return out;
        }
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), a.mul(c));
        }
        out
    }

    /// Splits into weight-homogeneous parts, keyed by letter content.
    pub fn weight_components(&self) -> BTreeMap<Vec<u32>, TensorVec> {
        let mut out: BTreeMap<Vec<u32>, TensorVec> = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut content = vec![0u32; self.n];
            for &l in w {
                content[l as usize - 1] += 1;
            }
            out.entry(content)
                .or_insert_with(|| TensorVec::zero(self.field, self.n, self.r))
                .add_term(w.clone(), c.clone());
        }
        out
    }
}

/// Applies the divided power of the elementary operator sending letter `src`
/// to letter `dst`: each m-subset of `src`-positions is rewritten, with
/// multiplicity one (the divided power absorbs the factorial).
pub fn act_divided(v: &TensorVec, dst: usize, src: usize, m: u32) -> TensorVec {
    assert!(dst != src && dst >= 1 && src >= 1 && dst <= v.n && src <= v.n);
    if m == 0 {
        return v.clone();
    }
    let m = m as usize;
    let mut out = TensorVec::zero(v.field, v.n, v.r);
    for (w, c) in &v.terms {
        let positions: Vec<usize> =
            (0..w.len()).filter(|&p| w[p] as usize == src).collect();
        let l = positions.len();
        if l < m {
            continue;
        }
        let mut pick = (0..m).collect::<Vec<usize>>();
        loop {
            let mut nw = w.clone();
            for &k in &pick {
                nw[positions[k]] = dst as u8;
            }
            out.add_term(nw, c.clone());
            // advance to the next m-combination of indices into `positions`
            let mut t = m;
            while t > 0 && pick[t - 1] == l - m + (t - 1) {
                t -= 1;
            }
            if t == 0 {
                break;
            }
            pick[t - 1] += 1;
            for u in t..m {
                pick[u] = pick[u - 1] + 1;
            }
        }
    }
    out
}

/// Applies a binomial toral monomial: each word is an eigenvector, with the
/// `l`-th factor acting by `binom(content_l − content_{l+1}, k_l)`.
pub fn act_h_monomial(v: &TensorVec, h: &HMonomial) -> TensorVec {
    if h.is_identity() {
        return v.clone();
    }
    let mut out = TensorVec::zero(v.field, v.n, v.r);
    for (w, c) in &v.terms {
        let mut content = vec![0i64; v.n];
        for &l in w {
            content[l as usize - 1] += 1;
        }
        let mut scalar = c.clone();
        for l in 1..=h.rank_positions() {
            let k = h.at(l);
            if k == 0 {
                continue;
            }
            let eig = content[l - 1] - content[l];
            scalar = scalar.mul(&v.field.from_bigint(&binom_int(eig, k)));
            if scalar.is_zero() {
                break;
            }
        }
        out.add_term(w.clone(), scalar);
    }
    out
}

/// Applies a hyperalgebra element: for each term, the toral part acts first,
/// then the lowering factors in reverse canonical order (the rightmost factor
/// of the written monomial acts first).
pub fn apply_uelem(u: &UElem, v: &TensorVec) -> Result<TensorVec> {
    if u.field() != v.field {
        return Err(Error::InvalidField("element and vector live over different fields".into()));
    }
    if u.n() != v.n {
        return Err(Error::IndexRange(format!("rank mismatch: {} vs {}", u.n(), v.n)));
    }
    let mut out = TensorVec::zero(v.field, v.n, v.r);
    for (mono, coeff) in u.terms() {
        let mut cur = act_h_monomial(v, &mono.h);
        for (a, b, m) in mono.mat.iter_entries().collect::<Vec<_>>().into_iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = act_divided(&cur, b, a, m);
        }
        out = out.add(&cur.scale(coeff));
    }
    Ok(out)
}

fn perms_with_sign(h: usize) -> Vec<(Vec<u8>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    let mut used = vec![false; h];
    fn rec(
        h: usize,
        cur: &mut Vec<u8>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<u8>, i64)>,
    ) {
        if cur.len() == h {
            // count inversions for the sign
            let mut inv = 0usize;
            for i in 0..h {
                for j in i + 1..h {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..h {
            if !used[v] {
                used[v] = true;
                cur.push((v + 1) as u8);
                rec(h, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(h, &mut cur, &mut used, &mut out);
    out
}

/// The standard-tableau basis of the module, kept in reduced row echelon form
/// over the word coordinates together with the change-of-basis rows, so that
/// coordinates of arbitrary vectors are read off in one elimination pass.
pub struct StandardBasis {
    tableaux: Vec<Tableau>,
    word_index: BTreeMap<Vec<u8>, usize>,
    echelon: Vec<Vec<Scalar>>,
    combos: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl StandardBasis {
    fn build(ctx: &WeylContext) -> Result<StandardBasis> {
        let tableaux = enumerate_standard(&ctx.lambda)?;
        let field = ctx.field;
        let vecs: Vec<TensorVec> = tableaux
            .iter()
            .map(|t| ctx.vector_of(&t.f_of(field)?))
            .collect::<Result<_>>()?;
        let mut word_index = BTreeMap::new();
        for v in &vecs {
            for (w, _) in v.terms() {
                let next = word_index.len();
                word_index.entry(w.clone()).or_insert(next);
            }
        }
        let ncols = word_index.len();
        let k = vecs.len();
        let mut echelon: Vec<Vec<Scalar>> = Vec::with_capacity(k);
        let mut combos: Vec<Vec<Scalar>> = Vec::with_capacity(k);
        let mut pivots: Vec<usize> = Vec::with_capacity(k);
        for (idx, v) in vecs.iter().enumerate() {
            let mut row = vec![field.zero(); ncols];
            for (w, c) in v.terms() {
                row[word_index[w]] = c.clone();
            }
            let mut combo = vec![field.zero(); k];
            combo[idx] = field.one();
            // eliminate against existing echelon rows
            for t in 0..echelon.len() {
                let factor = row[pivots[t]].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..ncols {
                    row[j] = row[j].sub(&factor.mul(&echelon[t][j]));
                }
                for j in 0..k {
                    combo[j] = combo[j].sub(&factor.mul(&combos[t][j]));
                }
            }
            let pivot = match row.iter().position(|c| !c.is_zero()) {
                Some(p) => p,
                None => {
                    return Err(Error::Internal(format!(
                        "standard basis vectors are linearly dependent at tableau {}",
                        tableaux[idx]
                    )))
                }
            };
            let inv = row[pivot]
                .inv()
                .expect("pivot entries are nonzero by construction");
            for c in row.iter_mut() {
                *c = c.mul(&inv);
            }
            for c in combo.iter_mut() {
                *c = c.mul(&inv);
            }
            // clear the new pivot column from earlier rows (full RREF)
            for t in 0..echelon.len() {
                let factor = echelon[t][pivot].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..ncols {
                    let delta = factor.mul(&row[j]);
                    echelon[t][j] = echelon[t][j].sub(&delta);
                }
                for j in 0..k {
                    let delta = factor.mul(&combo[j]);
                    combos[t][j] = combos[t][j].sub(&delta);
                }
            }
            echelon.push(row);
            combos.push(combo);
            pivots.push(pivot);
        }
        Ok(StandardBasis { tableaux, word_index, echelon, combos, pivots })
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    /// Coordinates of `v` in the standard-tableau basis, or `NotInSpan`.
    pub fn coords(&self, v: &TensorVec) -> Result<Vec<Scalar>> {
        let field = v.field;
        let ncols = self.word_index.len();
        let mut residual = vec![field.zero(); ncols];
        for (w, c) in v.terms() {
            match self.word_index.get(w) {
                Some(&j) => residual[j] = c.clone(),
                None => return Err(Error::NotInSpan),
            }
        }
        let mut out = vec![field.zero(); self.tableaux.len()];
        for (row, (e, combo)) in self.echelon.iter().zip(&self.combos).enumerate() {
            let alpha = residual[self.pivots[row]].clone();
            if alpha.is_zero() {
                continue;
            }
            for j in 0..ncols {
                residual[j] = residual[j].sub(&alpha.mul(&e[j]));
            }
            for j in 0..out.len() {
                out[j] = out[j].add(&alpha.mul(&combo[j]));
            }
        }
        if residual.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInSpan);
        }
        Ok(out)
    }
}

/// A fixed dominant weight together with its tensor-space realization.
pub struct WeylContext {
    field: FieldCtx,
    n: usize,
    omega: WeightVec,
    lambda: Composition,
    col_heights: Vec<u32>,
    r: usize,
    highest: OnceCell<TensorVec>,
    basis: OnceCell<StandardBasis>,
}

/// One factor of a module-operator word: a divided-power raise
/// `X_{α(i,j),m}` or the single descend.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModToken {
    Raise { i: usize, j: usize, m: u32 },
    Descend,
}

/// Data certifying that a commutator word keeps a given vector nonzero: the
/// descend level `i`, the source/sink family read off the witness flow, and
/// the simple-raise token word.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub i: usize,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub tokens: Vec<usize>,
    pub tableau: Tableau,
}

impl WeylContext {
    pub fn new(field: FieldCtx, omega: &WeightVec) -> Result<WeylContext> {
        let lambda = coherent_partition(omega)?;
        let n = lambda.n();
        if n < 2 {
            return Err(Error::Weight("need rank at least 2".into()));
        }
        let width = lambda.row(1) as usize;
        let col_heights: Vec<u32> = (1..=width)
            .map(|c| (1..=n).filter(|&a| lambda.row(a) as usize >= c).count() as u32)
            .collect();
        let r = lambda.size() as usize;
        Ok(WeylContext {
            field,
            n,
            omega: omega.clone(),
            lambda,
            col_heights,
            r,
            highest: OnceCell::new(),
            basis: OnceCell::new(),
        })
    }

    pub fn field(&self) -> FieldCtx {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &WeightVec {
        &self.omega
    }

    pub fn lambda(&self) -> &Composition {
        &self.lambda
    }

    pub fn rank_boxes(&self) -> usize {
        self.r
    }

    /// The highest weight vector: the product over columns of the
    /// antisymmetrized canonical filling (letters `1..h` down each column).
    pub fn highest(&self) -> &TensorVec {
        self.highest.get_or_init(|| {
            let mut words: Vec<(Vec<u8>, i64)> = vec![(Vec::new(), 1)];
            for &h in &self.col_heights {
                let perms = perms_with_sign(h as usize);
                let mut next = Vec::with_capacity(words.len() * perms.len());
                for (w, s) in &words {
                    for (p, ps) in &perms {
                        let mut nw = w.clone();
                        nw.extend_from_slice(p);
                        next.push((nw, s * ps));
                    }
                }
                words = next;
            }
            let mut v = TensorVec::zero(self.field, self.n, self.r);
            for (w, s) in words {
                v.add_term(w, self.field.from_int(s));
            }
            v
        })
    }

    /// The image of the highest weight vector under a hyperalgebra element.
    pub fn vector_of(&self, u: &UElem) -> Result<TensorVec> {
        apply_uelem(u, self.highest())
    }

    pub fn basis(&self) -> Result<&StandardBasis> {
        self.basis.get_or_try_init(|| StandardBasis::build(self))
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.basis()?.dimension())
    }

    pub fn coords(&self, v: &TensorVec) -> Result<Vec<Scalar>> {
        self.basis()?.coords(v)
    }

    /// The descend map at level `i`: reads off the coefficient of the strictly
    /// increasing filling `1..i` at the removed column's positions. On images
    /// of the highest weight vector it sends `F·e⁺` to `F·e⁺` of the smaller
    /// weight.
    pub fn d_map(&self, i: usize, v: &TensorVec, dst: &WeylContext) -> Result<TensorVec> {
        if i < 1 || i >= self.n {
            return Err(Error::IndexRange(format!("descend level {i} for n={}", self.n)));
        }
        if self.omega.coord(i) < 1 {
            return Err(Error::Weight(format!(
                "weight {} does not support a descend at level {i}",
                self.omega
            )));
        }
        if dst.field != self.field || dst.omega != self.omega.minus_fundamental(i)? {
            return Err(Error::Weight("descend target context mismatch".into()));
        }
        let cstar = self.lambda.row(i) as usize;
        let off: usize = self.col_heights[..cstar - 1].iter().map(|&h| h as usize).sum();
        debug_assert_eq!(self.col_heights[cstar - 1] as usize, i);
        let mut out = TensorVec::zero(self.field, self.n, self.r - i);
        'words: for (w, c) in v.terms() {
            for k in 0..i {
                if w[off + k] as usize != k + 1 {
                    continue 'words;
                }
            }
            let mut nw = Vec::with_capacity(self.r - i);
            nw.extend_from_slice(&w[..off]);
            nw.extend_from_slice(&w[off + i..]);
            out.add_term(nw, c.clone());
        }
        Ok(out)
    }

    /// True when every simple raise (first divided power) kills `v`.
    pub fn is_simply_primitive(&self, v: &TensorVec) -> bool {
        (1..self.n).all(|l| act_divided(v, l, l + 1, 1).is_zero())
    }

    /// True when every simple divided-power raise kills `v`; powers above the
    /// box count vanish identically, so the check is finite and complete.
    pub fn is_primitive(&self, v: &TensorVec) -> bool {
        (1..self.n).all(|l| (1..=self.r as u32).all(|m| act_divided(v, l, l + 1, m).is_zero()))
    }

    /// A basis of the primitive vectors of the given weight, as combinations
    /// of standard basis vectors.
    pub fn primitive_space(&self, weight: &WeightVec) -> Result<Vec<TensorVec>> {
        let basis = self.basis()?;
        let field = self.field;
        let members: Vec<(usize, TensorVec)> = basis
            .tableaux()
            .iter()
            .enumerate()
            .filter(|(_, t)| &t.weight() == weight)
            .map(|(k, t)| Ok((k, self.vector_of(&t.f_of(field)?)?)))
            .collect::<Result<_>>()?;
        if members.is_empty() {
            return Ok(Vec::new());
        }
        // rows: one constraint per (l, m, word) triple; columns: members
        let mut images: Vec<Vec<TensorVec>> = Vec::new();
        for (_, v) in &members {
            let mut per = Vec::new();
            for l in 1..self.n {
                for m in 1..=self.r as u32 {
                    per.push(act_divided(v, l, l + 1, m));
                }
            }
            images.push(per);
        }
        let nconstraint = images[0].len();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for k in 0..nconstraint {
            let mut words: std::collections::BTreeSet<Vec<u8>> = std::collections::BTreeSet::new();
            for img in &images {
                for (w, _) in img[k].terms() {
                    words.insert(w.clone());
                }
            }
            for w in words {
                rows.push(images.iter().map(|img| img[k].coefficient(&w)).collect());
            }
        }
        let kernel = crate::linalg::nullspace(field, rows, members.len());
        Ok(kernel
            .into_iter()
            .map(|x| {
                let mut v = TensorVec::zero(field, self.n, self.r);
                for (c, (_, b)) in x.iter().zip(&members) {
                    v = v.add(&b.scale(c));
                }
                v
            })
            .collect())
    }

    /// The right-normed commutator of simple raises against a descend,
    /// expanded recursively: `[E_{t_1}, [E_{t_2}, …, [E_{t_K}, d_i]…]]`.
    pub fn z_op(
        &self,
        tokens: &[usize],
        i: usize,
        v: &TensorVec,
        dst: &WeylContext,
    ) -> Result<TensorVec> {
        match tokens.split_first() {
            None => self.d_map(i, v, dst),
            Some((&t, rest)) => {
                if t < 1 || t >= self.n {
                    return Err(Error::IndexRange(format!("raise token {t} for n={}", self.n)));
                }
                let after = act_divided(&self.z_op(rest, i, v, dst)?, t, t + 1, 1);
                let before = self.z_op(rest, i, &act_divided(v, t, t + 1, 1), dst)?;
                Ok(after.sub(&before))
            }
        }
    }

    /// Applies a product of divided-power raises and exactly one descend,
    /// rightmost factor first, on `Δ(ω) ⊕ Δ(ω−ω_i)`. The descend acts by
    /// `d_map` on the first summand and by zero on the second — any
    /// extension with the same restriction to `Δ(ω)` computes the same
    /// result. Returns the component landing in the target module.
    pub fn apply_word(
        &self,
        word: &[ModToken],
        i: usize,
        v: &TensorVec,
        dst: &WeylContext,
    ) -> Result<TensorVec> {
        let descends = word.iter().filter(|t| matches!(t, ModToken::Descend)).count();
        if descends != 1 {
            return Err(Error::Input(format!(
                "the word must contain exactly one descend, found {descends}"
            )));
        }
        let mut top = v.clone();
        let mut bottom = TensorVec::zero(self.field, self.n, dst.r);
        for token in word.iter().rev() {
            match *token {
                ModToken::Raise { i: a, j: b, m } => {
                    if a < 1 || a >= b || b > self.n {
                        return Err(Error::IndexRange(format!(
                            "raise ({a},{b}) is not a positive root for n={}",
                            self.n
                        )));
                    }
                    top = act_divided(&top, a, b, m);
                    bottom = act_divided(&bottom, a, b, m);
                }
                ModToken::Descend => {
                    bottom = self.d_map(i, &top, dst)?;
                    top = TensorVec::zero(self.field, self.n, self.r);
                }
            }
        }
        Ok(bottom)
    }

    /// Builds the commutator word that provably keeps a nonzero vector
    /// nonzero: take a minimal standard tableau in the support, read the
    /// first-column entries exceeding their row index as flow edges, and lay
    /// out the canonical interleaving word for each source/sink pair.
    pub fn raise_certificate(&self, v: &TensorVec) -> Result<Certificate> {
        if v.is_zero() {
            return Err(Error::ZeroInput("raise certificate"));
        }
        let i = (1..=self.n).filter(|&s| self.lambda.row(s) >= 1).count();
        if i == 0 {
            return Err(Error::Input("the zero weight admits no descend".into()));
        }
        let basis = self.basis()?;
        let coords = basis.coords(v)?;
        let support: Vec<&Tableau> = basis
            .tableaux()
            .iter()
            .zip(&coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, _)| t)
            .collect();
        let mut minimal = support[0];
        loop {
            let mut changed = false;
            for t in &support {
                if tableau_cmp(t, minimal)? == Some(std::cmp::Ordering::Less) {
                    minimal = t;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let firstcol: Vec<usize> =
            (1..=i).map(|s| minimal.entry(s, 1).unwrap() as usize).collect();
        let edges: Vec<(usize, usize)> = (1..=i)
            .filter(|&s| firstcol[s - 1] > s)
            .map(|s| (s, firstcol[s - 1]))
            .collect();
        let (sources, sinks, tokens) = if edges.is_empty() {
            (Vec::new(), Vec::new(), Vec::new())
        } else {
            let flow = Flow::new(self.n, edges)?;
            let cls = flow.classify();
            let sources = cls.sources.clone();
            let sinks = cls.sinks.clone();
            let q = sources.len();
            let mut tokens = Vec::new();
            for j in (0..q).rev() {
                tokens.extend(sources[j]..i);
                tokens.extend(((i + 1)..sinks[j]).rev());
                tokens.push(i);
            }
            (sources, sinks, tokens)
        };
        Ok(Certificate { i, sources, sinks, tokens, tableau: minimal.clone() })
    }
}
