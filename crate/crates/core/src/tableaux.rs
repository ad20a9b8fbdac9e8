//! Tableaux of composition shapes with entries in `{1, …, n}`, their matrix
//! encoding, and the flow-driven shape surgery `σ_{Γ,i}`.
//!
//! A tableau is *row standard* when rows weakly increase, *regular* when
//! additionally every entry in row `i` is ≥ `i` (so it encodes a canonical
//! monomial via [`Tableau::mat_of`]), and *standard* when its shape is a
//! partition and columns strictly increase.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::flows::Flow;
use crate::hyperalgebra::{UElem, UTMatrix};
use crate::weights::WeightVec;

/// A composition: a length-`n` vector of nonnegative row lengths (trailing
/// zeros significant).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn row(&self, i: usize) -> u32 {
        self.0[i - 1]
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dominance comparison by prefix sums (totals may differ; the order is
/// partial). `Less` means the left argument is dominated.
pub fn dominance_cmp(a: &Composition, b: &Composition) -> Result<Option<Ordering>> {
    if a.n() != b.n() {
        return Err(Error::Tableau("dominance comparison needs equal lengths".into()));
    }
    let (mut pa, mut pb) = (0i64, 0i64);
    let (mut le, mut ge) = (true, true);
    for (x, y) in a.0.iter().zip(&b.0) {
        pa += *x as i64;
        pb += *y as i64;
        le &= pa <= pb;
        ge &= pa >= pb;
    }
    Ok(match (le, ge, a == b) {
        (_, _, true) => Some(Ordering::Equal),
        (true, false, _) => Some(Ordering::Less),
        (false, true, _) => Some(Ordering::Greater),
        (true, true, false) => Some(Ordering::Less), // equal prefixes everywhere but unequal is impossible
        (false, false, _) => None,
    })
}

pub fn dominance_leq(a: &Composition, b: &Composition) -> Result<bool> {
    Ok(matches!(dominance_cmp(a, b)?, Some(Ordering::Less) | Some(Ordering::Equal)))
}

/// The partition `λ` coherent with a dominant weight `ω` in the sense
/// `λ_j − λ_{j+1} = ω(H_{α_j})`, normalized by `λ_n = 0`.
pub fn coherent_partition(omega: &WeightVec) -> Result<Composition> {
    if !omega.is_dominant() {
        return Err(Error::Weight(format!("weight {omega} is not dominant")));
    }
    let n = omega.n();
    let mut lambda = vec![0u32; n];
    for j in (1..n).rev() {
        lambda[j - 1] = lambda[j] + omega.coord(j) as u32;
    }
    Ok(Composition(lambda))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tableau {
    n: usize,
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    /// Builds a tableau with `n` rows (missing trailing rows are added empty);
    /// entries must lie in `1..=n`.
    pub fn new(n: usize, rows: Vec<Vec<u8>>) -> Result<Tableau> {
        if rows.len() > n {
            return Err(Error::Tableau(format!("{} rows for n={n}", rows.len())));
        }
        for row in &rows {
            if row.iter().any(|&e| e < 1 || e as usize > n) {
                return Err(Error::Tableau(format!("entries must lie in 1..={n}")));
            }
        }
        let mut rows = rows;
        rows.resize(n, Vec::new());
        Ok(Tableau { n, rows })
    }

    /// The tableau with row `i` filled by the entry `i`, the unique standard
    /// tableau of minimal content.
    pub fn superstandard(lambda: &Composition) -> Result<Tableau> {
        let n = lambda.n();
        let rows = (1..=n).map(|i| vec![i as u8; lambda.row(i) as usize]).collect();
        Tableau::new(n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<u8> {
        self.rows.get(i - 1).and_then(|r| r.get(j - 1)).copied()
    }

    pub fn shape(&self) -> Composition {
        Composition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn is_row_standard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
    }

    /// Row standard with every entry in row `i` at least `i`.
    pub fn is_regular_row_standard(&self) -> bool {
        self.is_row_standard()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i0, r)| r.iter().all(|&e| e as usize >= i0 + 1))
    }

    /// Partition shape, weakly increasing rows, strictly increasing columns.
    pub fn is_standard(&self) -> bool {
        if !self.shape().is_partition() || !self.is_row_standard() {
            return false;
        }
        for i in 1..self.n {
            let (upper, lower) = (&self.rows[i - 1], &self.rows[i]);
            for (j, &e) in lower.iter().enumerate() {
                if upper[j] >= e {
                    return false;
                }
            }
        }
        true
    }

    /// Entry multiplicities: `content()[k−1]` counts the entries equal to `k`.
    pub fn content(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.n];
        for row in &self.rows {
            for &e in row {
                c[e as usize - 1] += 1;
            }
        }
        c
    }

    /// The torus weight of the content, in fundamental coordinates.
    pub fn weight(&self) -> WeightVec {
        WeightVec::from_eps(&self.content().iter().map(|&c| c as i64).collect::<Vec<_>>())
    }

    /// The matrix with `(i,j)`-entry the multiplicity of `j` in row `i`;
    /// requires a regular row standard tableau.
    pub fn mat_of(&self) -> Result<UTMatrix> {
        if !self.is_regular_row_standard() {
            return Err(Error::Tableau("mat_of needs a regular row standard tableau".into()));
        }
        let mut m = UTMatrix::zeros(self.n);
        for (i0, row) in self.rows.iter().enumerate() {
            for &e in row {
                let (i, j) = (i0 + 1, e as usize);
                if j > i {
                    m.set(i, j, m.get(i, j) + 1);
                }
            }
        }
        Ok(m)
    }

    /// The canonical monomial `F^{(Mat_T)}` with coefficient 1.
    pub fn f_of(&self, field: FieldCtx) -> Result<UElem> {
        Ok(UElem::monomial(field, self.mat_of()?))
    }

    /// Reconstructs the regular row standard tableau of shape `lambda` with
    /// matrix `mat` (row `i` gets `λ_i − N^i` copies of `i`, then the larger
    /// entries).
    pub fn from_mat(lambda: &Composition, mat: &UTMatrix) -> Result<Tableau> {
        let n = lambda.n();
        if mat.n() != n {
            return Err(Error::Tableau("shape and matrix rank differ".into()));
        }
        let mut rows = Vec::with_capacity(n);
        for i in 1..=n {
            let used: u32 = mat.row_sum(i);
            let cap = lambda.row(i);
            if used > cap {
                return Err(Error::Tableau(format!(
                    "row {i} holds {used} entries but the shape allows {cap}"
                )));
            }
            let mut row = vec![i as u8; (cap - used) as usize];
            for j in i + 1..=n {
                row.extend(std::iter::repeat(j as u8).take(mat.get(i, j) as usize));
            }
            rows.push(row);
        }
        Tableau::new(n, rows)
    }

    /// Restriction `T[m]`: keeps the entries ≤ m.
    pub fn restrict(&self, m: usize) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().copied().filter(|&e| (e as usize) <= m).collect())
            .collect();
        Tableau { n: self.n, rows }
    }

    /// The shape chain `(shape(T[1]), …, shape(T[n]))`.
    pub fn chain(&self) -> Vec<Composition> {
        (1..=self.n).map(|m| self.restrict(m).shape()).collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                if r.is_empty() {
                    "-".to_string()
                } else {
                    r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("")
                }
            })
            .collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

/// The shape surgery `σ_{Γ,i}`: for each edge `(s,t)` one occurrence of `t`
/// in row `s` becomes `s`; a new box `k` is appended to every row
/// `k = i+1, …, n`; rows are re-sorted. Returns `Ok(None)` when some edge
/// finds no entry to replace (the operation is undefined on this input, which
/// is not an error).
pub fn sigma(gamma: &Flow, i: usize, t: &Tableau) -> Result<Option<Tableau>> {
    let n = t.n();
    if gamma.n() != n {
        return Err(Error::Tableau("flow and tableau rank differ".into()));
    }
    if i < 1 || i >= n {
        return Err(Error::IndexRange(format!("level i={i} for n={n}")));
    }
    if !t.is_regular_row_standard() {
        return Err(Error::Tableau("sigma needs a regular row standard tableau".into()));
    }
    let mut rows = t.rows.clone();
    for (s, tt) in gamma.edges() {
        let row = &mut rows[s - 1];
        match row.iter().position(|&e| e as usize == tt) {
            None => return Ok(None),
            Some(pos) => row[pos] = s as u8,
        }
    }
    for (k, row) in rows.iter_mut().enumerate().take(n).skip(i) {
        row.push((k + 1) as u8);
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    Ok(Some(Tableau { n, rows }))
}

/// Antilexicographic-by-chain comparison of same-shape tableaux: scan the
/// restriction chains from `n` downward; at the first index where the shapes
/// differ, compare them in dominance order. Incomparable chains give `None`.
pub fn tableau_cmp(t: &Tableau, s: &Tableau) -> Result<Option<Ordering>> {
    if t.n() != s.n() || t.shape() != s.shape() {
        return Err(Error::Tableau("tableau comparison needs equal shapes".into()));
    }
    for m in (1..=t.n()).rev() {
        let ct = t.restrict(m).shape();
        let cs = s.restrict(m).shape();
        if ct == cs {
            continue;
        }
        return dominance_cmp(&ct, &cs);
    }
    Ok(Some(Ordering::Equal))
}

/// Row-wise concatenation followed by sorting: the shape adds, and the
/// restriction chains add as well.
pub fn tab_sum(s: &Tableau, t: &Tableau) -> Result<Tableau> {
    if s.n() != t.n() {
        return Err(Error::Tableau("tab_sum needs equal ranks".into()));
    }
    let rows = s
        .rows
        .iter()
        .zip(&t.rows)
        .map(|(a, b)| {
            let mut r: Vec<u8> = a.iter().chain(b.iter()).copied().collect();
            r.sort_unstable();
            r
        })
        .collect();
    Ok(Tableau { n: s.n(), rows })
}

/// All standard tableaux of partition shape `lambda` with entries ≤ n,
/// enumerated in lexicographic row-filling order.
pub fn enumerate_standard(lambda: &Composition) -> Result<Vec<Tableau>> {
    if !lambda.is_partition() {
        return Err(Error::Tableau(format!("{lambda} is not a partition")));
    }
    let n = lambda.n();
    let mut rows: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut out = Vec::new();
    fn fill(
        lambda: &Composition,
        n: usize,
        i: usize,
        j: usize,
        rows: &mut Vec<Vec<u8>>,
        out: &mut Vec<Tableau>,
    ) {
        if i > n {
            out.push(Tableau { n, rows: rows.clone() });
            return;
        }
        if j > lambda.row(i) as usize {
            fill(lambda, n, i + 1, 1, rows, out);
            return;
        }
        let mut lo = 1u8;
        if j > 1 {
            lo = lo.max(rows[i - 1][j - 2]);
        }
        if i > 1 {
            lo = lo.max(rows[i - 2][j - 1] + 1);
        }
        for v in lo..=(n as u8) {
            rows[i - 1].push(v);
            fill(lambda, n, i, j + 1, rows, out);
            rows[i - 1].pop();
        }
    }
    fill(lambda, n, 1, 1, &mut rows, &mut out);
    Ok(out)
}

/// All regular row standard tableaux of shape `lambda` (entries ≤ n), via the
/// matrices with row sums capped by the shape.
pub fn enumerate_regular_row_standard(lambda: &Composition) -> Result<Vec<Tableau>> {
    let n = lambda.n();
    let caps: Vec<u32> = (1..=n).map(|i| lambda.row(i)).collect();
    UTMatrix::enumerate_with_row_caps(n, &caps)
        .iter()
        .map(|m| Tableau::from_mat(lambda, m))
        .collect()
}
