//! Flows: finite sets of increasing edges with in- and out-degree at most
//! one, the combinatorial skeleton of the `ξ` operators.
//!
//! A flow decomposes into vertex-disjoint increasing paths. Path starts are
//! *sources*, path ends are *sinks*, interior vertices are *transit points*.
//! The family `ℱ_i(a_1,…,a_q; b_1,…,b_q)` collects the flows with the given
//! sources/sinks (`a_1 < ⋯ < a_q ≤ i < b_q < ⋯ < b_1`) and no transit point
//! above `i`. Vertices live in `[1, n]`; an operator that would move an edge
//! endpoint outside this range is treated as not well-defined.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::hyperalgebra::UTMatrix;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Flow {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Vertex classification of a flow.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classified {
    /// sources, ascending: `a_1 < a_2 < ⋯`
    pub sources: Vec<usize>,
    /// sinks, descending: `b_1 > b_2 > ⋯`
    pub sinks: Vec<usize>,
    /// transit points, ascending
    pub transit: Vec<usize>,
    /// linking permutation: `sigma[j−1] = k` when `a_j`'s path ends at `b_k`
    pub sigma: Vec<usize>,
}

impl Classified {
    pub fn sigma_sign(&self) -> i64 {
        let mut seen = vec![false; self.sigma.len()];
        let mut sign = 1i64;
        for start in 0..self.sigma.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.sigma[cur] - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

/// The six elementary operators on flow families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FlowOp {
    L1,
    L2,
    L3,
    M1,
    M2,
    R,
}

impl fmt::Display for FlowOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FlowOp::L1 => "L1",
            FlowOp::L2 => "L2",
            FlowOp::L3 => "L3",
            FlowOp::M1 => "M1",
            FlowOp::M2 => "M2",
            FlowOp::R => "R",
        };
        write!(f, "{s}")
    }
}

/// The inverse direction: which of the three shift kinds to undo.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InvKind {
    L,
    M,
    R,
}

/// Result of applying an elementary operator: either a flow, or (for `L3`
/// when the shifted vertex was a transit point) an edge set that is not one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OpResult {
    Flow(Flow),
    Invalid(BTreeSet<(usize, usize)>),
}

impl OpResult {
    pub fn flow(self) -> Option<Flow> {
        match self {
            OpResult::Flow(g) => Some(g),
            OpResult::Invalid(_) => None,
        }
    }
}

impl Flow {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Flow> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        let mut indeg: BTreeMap<usize, usize> = BTreeMap::new();
        let mut outdeg: BTreeMap<usize, usize> = BTreeMap::new();
        for &(s, t) in &edges {
            if !(1 <= s && s < t && t <= n) {
                return Err(Error::Flow(format!("edge ({s},{t}) out of range for n={n}")));
            }
            *outdeg.entry(s).or_default() += 1;
            *indeg.entry(t).or_default() += 1;
        }
        if let Some((v, _)) = outdeg.iter().find(|(_, &d)| d > 1) {
            return Err(Error::Flow(format!("vertex {v} has two outgoing edges")));
        }
        if let Some((v, _)) = indeg.iter().find(|(_, &d)| d > 1) {
            return Err(Error::Flow(format!("vertex {v} has two incoming edges")));
        }
        Ok(Flow { n, edges })
    }

    pub fn empty(n: usize) -> Flow {
        Flow { n, edges: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, s: usize, t: usize) -> bool {
        self.edges.contains(&(s, t))
    }

    /// The 0/1 upper-triangular matrix with `N_{s,t} = 1` per edge `(s,t)`.
    pub fn matrix(&self) -> UTMatrix {
        let mut m = UTMatrix::zeros(self.n);
        for &(s, t) in &self.edges {
            m.set(s, t, 1);
        }
        m
    }

    pub fn from_matrix(m: &UTMatrix) -> Result<Flow> {
        let mut edges = Vec::new();
        for (a, b, v) in m.iter_entries() {
            if v != 1 {
                return Err(Error::Flow(format!("matrix entry ({a},{b}) = {v} is not 0/1")));
            }
            edges.push((a, b));
        }
        Flow::new(m.n(), edges)
    }

    fn out_edge(&self, v: usize) -> Option<(usize, usize)> {
        self.edges.range((v, 0)..(v + 1, 0)).next().copied()
    }

    fn in_edge(&self, v: usize) -> Option<(usize, usize)> {
        self.edges.iter().find(|&&(_, t)| t == v).copied()
    }

    /// Sources, sinks (descending), transit points, and the linking
    /// permutation between them.
    pub fn classify(&self) -> Classified {
        let starts: BTreeSet<usize> = self.edges.iter().map(|&(s, _)| s).collect();
        let ends: BTreeSet<usize> = self.edges.iter().map(|&(_, t)| t).collect();
        let sources: Vec<usize> = starts.difference(&ends).copied().collect();
        let mut sinks: Vec<usize> = ends.difference(&starts).copied().collect();
        sinks.reverse();
        let transit: Vec<usize> = starts.intersection(&ends).copied().collect();
        let mut sigma = Vec::with_capacity(sources.len());
        for &a in &sources {
            let mut v = a;
            while let Some((_, t)) = self.out_edge(v) {
                v = t;
            }
            let k = sinks.iter().position(|&b| b == v).expect("path ends at a sink") + 1;
            sigma.push(k);
        }
        Classified { sources, sinks, transit, sigma }
    }

    /// Membership in `ℱ_i(a; b)`.
    pub fn in_family(&self, i: usize, sources: &[usize], sinks: &[usize]) -> bool {
        let c = self.classify();
        c.sources == sources && c.sinks == sinks && c.transit.iter().all(|&t| t <= i)
    }

    /// The sign `sgn_i(Γ) = sgn(σ)·(−1)^{Σ_j (b_j − i) + #transit}`.
    /// Requires the flow to lie in some family at level `i` (sources ≤ i,
    /// sinks > i, transit ≤ i).
    pub fn sign(&self, i: usize) -> Result<i64> {
        let c = self.classify();
        if c.sources.iter().any(|&a| a > i)
            || c.sinks.iter().any(|&b| b <= i)
            || c.transit.iter().any(|&t| t > i)
        {
            return Err(Error::Flow(format!("flow is not in a family at level i={i}")));
        }
        let shift: i64 = c.sinks.iter().map(|&b| b as i64 - i as i64).sum::<i64>()
            + c.transit.len() as i64;
        Ok(c.sigma_sign() * if shift % 2 == 0 { 1 } else { -1 })
    }

    /// `ν_m(Γ)`: the `ε`-vector counting edges that straddle `m`
    /// (`s ≤ m < t` contributes `ε_s`). Length-`n` result.
    pub fn nu(&self, m: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.n];
        for &(s, t) in &self.edges {
            if s <= m && m < t {
                v[s - 1] += 1;
            }
        }
        v
    }

    /// Edges sorted by decreasing end vertex (ends are pairwise distinct).
    pub fn edges_by_decreasing_end(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        e.sort_by(|x, y| y.1.cmp(&x.1));
        e
    }
}

fn validate_family_shape(n: usize, i: usize, sources: &[usize], sinks: &[usize]) -> Result<()> {
    if i < 1 || i >= n {
        return Err(Error::IndexRange(format!("family level i={i} for n={n}")));
    }
    if sources.len() != sinks.len() {
        return Err(Error::Flow("source and sink lists must have equal length".into()));
    }
    let q = sources.len();
    for w in sources.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Flow("sources must be strictly increasing".into()));
        }
    }
    for w in sinks.windows(2) {
        if w[0] <= w[1] {
            return Err(Error::Flow("sinks must be strictly decreasing".into()));
        }
    }
    if q > 0 {
        if sources[0] < 1 || sources[q - 1] > i {
            return Err(Error::Flow(format!("sources must lie in [1, {i}]")));
        }
        if sinks[q - 1] <= i || sinks[0] > n {
            return Err(Error::Flow(format!("sinks must lie in ({i}, {n}]")));
        }
    }
    Ok(())
}

/// Enumerates `ℱ_i(a; b)` for vertices in `[1, n]`, sorted ascending in the
/// total order of the family (see [`cmp_flows`]).
pub fn enumerate_family(
    n: usize,
    i: usize,
    sources: &[usize],
    sinks: &[usize],
) -> Result<Vec<Flow>> {
    validate_family_shape(n, i, sources, sinks)?;
    let q = sources.len();
    if q == 0 {
        return Ok(vec![Flow::empty(n)]);
    }
    let used: BTreeSet<usize> = sources.iter().chain(sinks.iter()).copied().collect();
    let candidates: Vec<usize> = (1..=i).filter(|v| !used.contains(v)).collect();
    let mut flows = Vec::new();
    // choose the transit set, then match every start (source or transit) to a
    // strictly larger target (transit or sink), bijectively
    for mask in 0u64..(1 << candidates.len()) {
        let transit: Vec<usize> = candidates
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let starts: Vec<usize> = {
            let mut s: Vec<usize> = sources.iter().chain(transit.iter()).copied().collect();
            s.sort_unstable();
            s
        };
        let targets: Vec<usize> = {
            let mut t: Vec<usize> = sinks.iter().chain(transit.iter()).copied().collect();
            t.sort_unstable();
            t
        };
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(starts.len());
        let mut taken = vec![false; targets.len()];
        fn assign(
            starts: &[usize],
            targets: &[usize],
            taken: &mut Vec<bool>,
            edges: &mut Vec<(usize, usize)>,
            n: usize,
            out: &mut Vec<Flow>,
        ) {
            match starts.split_first() {
                None => {
                    out.push(Flow::new(n, edges.iter().copied()).expect("constructed edges are a flow"));
                }
                Some((&s, rest)) => {
                    for (k, &t) in targets.iter().enumerate() {
                        if !taken[k] && t > s {
                            taken[k] = true;
                            edges.push((s, t));
                            assign(rest, targets, taken, edges, n, out);
                            edges.pop();
                            taken[k] = false;
                        }
                    }
                }
            }
        }
        assign(&starts, &targets, &mut taken, &mut edges, n, &mut flows);
    }
    flows.sort_by(|x, y| cmp_flows(x, y).expect("same family"));
    flows.dedup();
    Ok(flows)
}

/// Applies one of the elementary operators at level `i`, checking its
/// condition. Only `L3` can produce a non-flow ([`OpResult::Invalid`]).
pub fn apply_op(op: FlowOp, gamma: &Flow, i: usize) -> Result<OpResult> {
    let n = gamma.n();
    let c = gamma.classify();
    if c.sources.iter().any(|&a| a > i)
        || c.sinks.iter().any(|&b| b <= i)
        || c.transit.iter().any(|&t| t > i)
    {
        return Err(Error::Flow(format!("flow is not in a family at level i={i}")));
    }
    let need_q = |label: &str| -> Result<()> {
        if c.sources.is_empty() {
            Err(Error::NotWellDefined(format!("{label} needs at least one source")))
        } else {
            Ok(())
        }
    };
    let replace = |from: (usize, usize), to: (usize, usize)| -> BTreeSet<(usize, usize)> {
        let mut e = gamma.edges.clone();
        e.remove(&from);
        e.insert(to);
        e
    };
    match op {
        FlowOp::L1 => {
            need_q("L1")?;
            let aq = *c.sources.last().unwrap();
            let x = aq - 1;
            if x < 1 || !c.transit.contains(&x) {
                return Err(Error::NotWellDefined(format!("L1 requires {x} to be a transit point")));
            }
            let (s, _) = gamma.in_edge(x).unwrap();
            Ok(OpResult::Flow(Flow::new(n, replace((s, x), (s, aq)))?))
        }
        FlowOp::L2 => {
            need_q("L2")?;
            let aq = *c.sources.last().unwrap();
            let x = aq - 1;
            if x < 1 || gamma.out_edge(x).is_some() {
                return Err(Error::NotWellDefined(format!("L2 requires no edge to begin at {x}")));
            }
            let mut e = gamma.edges.clone();
            e.insert((x, aq));
            Ok(OpResult::Flow(Flow::new(n, e)?))
        }
        FlowOp::L3 => {
            need_q("L3")?;
            let aq = *c.sources.last().unwrap();
            let x = aq - 1;
            if x < 1 || c.sources.contains(&x) {
                return Err(Error::NotWellDefined(format!("L3 requires {x} not to be a source")));
            }
            let (_, t) = gamma.out_edge(aq).unwrap();
            let e = replace((aq, t), (x, t));
            if c.transit.contains(&x) {
                // x now has two outgoing edges
                Ok(OpResult::Invalid(e))
            } else {
                Ok(OpResult::Flow(Flow::new(n, e)?))
            }
        }
        FlowOp::M1 => {
            if i + 1 > n || c.sinks.contains(&(i + 1)) {
                return Err(Error::NotWellDefined("M1 requires i+1 not to be a sink".into()));
            }
            if !c.transit.contains(&i) {
                return Err(Error::NotWellDefined("M1 requires i to be a transit point".into()));
            }
            let (s, _) = gamma.in_edge(i).unwrap();
            Ok(OpResult::Flow(Flow::new(n, replace((s, i), (s, i + 1)))?))
        }
        FlowOp::M2 => {
            if i + 1 > n || c.sinks.contains(&(i + 1)) {
                return Err(Error::NotWellDefined("M2 requires i+1 not to be a sink".into()));
            }
            if gamma.out_edge(i).is_some() {
                return Err(Error::NotWellDefined("M2 requires no edge to begin at i".into()));
            }
            let mut e = gamma.edges.clone();
            e.insert((i, i + 1));
            Ok(OpResult::Flow(Flow::new(n, e)?))
        }
        FlowOp::R => {
            need_q("R")?;
            let bq = *c.sinks.last().unwrap();
            if bq + 1 > n || c.sinks.contains(&(bq + 1)) {
                return Err(Error::NotWellDefined(format!(
                    "R requires {} to be available and not a sink",
                    bq + 1
                )));
            }
            let (s, _) = gamma.in_edge(bq).unwrap();
            Ok(OpResult::Flow(Flow::new(n, replace((s, bq), (s, bq + 1)))?))
        }
    }
}

/// For a flow where `L3` is not well-behaved (`a_q − 1` a transit point),
/// the unique sign-opposite partner in the same family with the same `L3`
/// image: swap the continuations of `a_q − 1` and `a_q`.
pub fn l3_partner(gamma: &Flow, i: usize) -> Result<Flow> {
    let c = gamma.classify();
    let aq = *c
        .sources
        .last()
        .ok_or_else(|| Error::NotWellDefined("partner needs at least one source".into()))?;
    let x = aq - 1;
    if x < 1 || !c.transit.contains(&x) {
        return Err(Error::NotWellDefined(format!(
            "partner is defined only when {x} is a transit point"
        )));
    }
    let _ = i;
    let (_, r) = gamma.out_edge(x).unwrap();
    let (_, t) = gamma.out_edge(aq).unwrap();
    let mut e = gamma.edges.clone();
    e.remove(&(x, r));
    e.remove(&(aq, t));
    e.insert((aq, r));
    e.insert((x, t));
    Flow::new(gamma.n(), e)
}

/// Reconstructs `(op, Γ)` from the image `Γ′` of a source-, middle- or
/// sink-shift step at level `i`. The shifted family parameters are read off
/// `Γ′` itself (largest source / smallest sink).
pub fn inverse_op(gamma_p: &Flow, i: usize, kind: InvKind) -> Result<(FlowOp, Flow)> {
    let n = gamma_p.n();
    let c = gamma_p.classify();
    match kind {
        InvKind::L => {
            let v = *c
                .sources
                .last()
                .ok_or_else(|| Error::NotWellDefined("L-inverse needs a source".into()))?;
            let aq = v + 1;
            if aq > i {
                return Err(Error::NotWellDefined(format!(
                    "L-inverse would need source {aq} > i={i}"
                )));
            }
            if let Some((s, _)) = gamma_p.in_edge(aq) {
                if s < v {
                    // undo L1: (s, a_q) came from (s, a_q − 1)
                    let mut e = gamma_p.edges.clone();
                    e.remove(&(s, aq));
                    e.insert((s, v));
                    return Ok((FlowOp::L1, Flow::new(n, e)?));
                }
                debug_assert_eq!(s, v);
                // undo L2: drop the added edge (a_q − 1, a_q)
                let mut e = gamma_p.edges.clone();
                e.remove(&(v, aq));
                return Ok((FlowOp::L2, Flow::new(n, e)?));
            }
            // undo L3: the out-edge of a_q − 1 returns to a_q
            let (_, t) = gamma_p
                .out_edge(v)
                .ok_or_else(|| Error::Internal("source without outgoing edge".into()))?;
            let mut e = gamma_p.edges.clone();
            e.remove(&(v, t));
            e.insert((aq, t));
            Ok((FlowOp::L3, Flow::new(n, e)?))
        }
        InvKind::M => {
            let last_source = c.sources.last().copied();
            let small_sink = c.sinks.last().copied();
            if last_source != Some(i) || small_sink != Some(i + 1) {
                return Err(Error::NotWellDefined(
                    "M-inverse needs largest source i and smallest sink i+1".into(),
                ));
            }
            let (s, _) = gamma_p.in_edge(i + 1).unwrap();
            if s < i {
                let mut e = gamma_p.edges.clone();
                e.remove(&(s, i + 1));
                e.insert((s, i));
                Ok((FlowOp::M1, Flow::new(n, e)?))
            } else {
                debug_assert_eq!(s, i);
                let mut e = gamma_p.edges.clone();
                e.remove(&(i, i + 1));
                Ok((FlowOp::M2, Flow::new(n, e)?))
            }
        }
        InvKind::R => {
            let w = *c
                .sinks
                .last()
                .ok_or_else(|| Error::NotWellDefined("R-inverse needs a sink".into()))?;
            if w <= i + 1 {
                return Err(Error::NotWellDefined(format!(
                    "R-inverse would need sink {} ≤ i={i}",
                    w - 1
                )));
            }
            let (s, _) = gamma_p.in_edge(w).unwrap();
            let mut e = gamma_p.edges.clone();
            e.remove(&(s, w));
            e.insert((s, w - 1));
            Ok((FlowOp::R, Flow::new(n, e)?))
        }
    }
}

/// Total order within a family: list both edge sequences by decreasing end;
/// at the first differing position the ends agree and the flow whose edge
/// begins *higher* is smaller. Errors when the flows have different
/// source/sink lists.
pub fn cmp_flows(g1: &Flow, g2: &Flow) -> Result<Ordering> {
    let c1 = g1.classify();
    let c2 = g2.classify();
    if c1.sources != c2.sources || c1.sinks != c2.sinks {
        return Err(Error::Flow("flows from different families are incomparable".into()));
    }
    let e1 = g1.edges_by_decreasing_end();
    let e2 = g2.edges_by_decreasing_end();
    for (x, y) in e1.iter().zip(&e2) {
        if x == y {
            continue;
        }
        debug_assert_eq!(x.1, y.1, "first differing edges share their end vertex");
        return Ok(y.0.cmp(&x.0));
    }
    if e1.len() != e2.len() {
        // a proper prefix would force equal flows after peeling the shared
        // edges, so this cannot happen for members of one family
        return Err(Error::Internal("one edge list is a proper prefix of the other".into()));
    }
    Ok(Ordering::Equal)
}
