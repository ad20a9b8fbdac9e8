//! Acceptance gate: ten end-to-end suites, one per shipped guarantee.
//!
//! Each suite checks computed values against hand-checkable data or against
//! the independent tensor-space oracle, with exact arithmetic throughout, and
//! ends by printing a single `ACCEPTANCE <k> <label>: PASS` line (a failing
//! suite panics with a precise description instead).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylcrit::criterion::{
    check_irreducible_nonzero, check_nonzero, cross_validate, cross_validate_with, verify_witness,
    GridParams,
};
use weylcrit::field::{FieldCtx, Scalar};
use weylcrit::flows::{
    apply_op, cmp_flows, enumerate_family, inverse_op, l3_partner, Flow, FlowOp, InvKind, OpResult,
};
use weylcrit::hyperalgebra::{
    bracket_xi, eta_divided, o_sequences, r_raise, theta, xi, HMonomial, Monomial, UElem, UTMatrix,
};
use weylcrit::linalg;
use weylcrit::oracle::{
    act_divided, act_h_monomial, apply_uelem, ModToken, TensorVec, WeylContext,
};
use weylcrit::tableaux::{
    coherent_partition, dominance_cmp, enumerate_regular_row_standard, enumerate_standard, sigma,
    tab_sum, tableau_cmp, Composition, Tableau,
};
use weylcrit::weights::WeightVec;
use weylcrit::Error;

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

fn fq() -> FieldCtx {
    FieldCtx::Rationals
}

fn fp(p: u64) -> FieldCtx {
    FieldCtx::prime(p).expect("prime modulus")
}

fn all_fields() -> Vec<FieldCtx> {
    vec![fq(), fp(2), fp(3)]
}

fn wv(coords: &[i64]) -> WeightVec {
    WeightVec(coords.to_vec())
}

fn flow(n: usize, edges: &[(usize, usize)]) -> Flow {
    Flow::new(n, edges.iter().copied()).expect("valid flow")
}

fn mat(n: usize, entries: &[(usize, usize, u32)]) -> UTMatrix {
    let mut m = UTMatrix::zeros(n);
    for &(a, b, v) in entries {
        m.set(a, b, v);
    }
    m
}

fn mono(field: FieldCtx, n: usize, entries: &[(usize, usize, u32)]) -> UElem {
    UElem::monomial(field, mat(n, entries))
}

/// All dominant weights of rank `n` with coordinate sum at most `max_height`.
fn dominant_weights(n: usize, max_height: i64) -> Vec<WeightVec> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 1..n {
        let mut next = Vec::new();
        for w in &out {
            let used: i64 = w.iter().sum();
            for c in 0..=(max_height - used) {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(WeightVec).collect()
}

/// All dominant weights of rank `n` with every coordinate at most `max_coeff`.
fn coeff_weights(n: usize, max_coeff: i64) -> Vec<WeightVec> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 1..n {
        let mut next = Vec::new();
        for w in &out {
            for c in 0..=max_coeff {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(WeightVec).collect()
}

fn subsets(items: &[usize], q: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], q: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for k in start..items.len() {
            cur.push(items[k]);
            rec(items, q, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, q, 0, &mut Vec::new(), &mut out);
    out
}

/// Every admissible source/sink shape `a_1 < ⋯ < a_q ≤ i < b_q < ⋯ < b_1 ≤ n`
/// with `q ≤ max_q` (sinks returned in the descending convention).
fn family_shapes(n: usize, i: usize, max_q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let below: Vec<usize> = (1..=i).collect();
    let above: Vec<usize> = (i + 1..=n).collect();
    let mut out = Vec::new();
    for q in 0..=max_q {
        for sources in subsets(&below, q) {
            for mut sinks in subsets(&above, q) {
                sinks.reverse();
                out.push((sources.clone(), sinks));
            }
        }
    }
    out
}

/// Exact rank of a set of tensor vectors (columns indexed by occurring words).
fn tensor_rank(vecs: &[TensorVec]) -> usize {
    let mut cols: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for v in vecs {
        for (w, _) in v.terms() {
            let next = cols.len();
            cols.entry(w.clone()).or_insert(next);
        }
    }
    if cols.is_empty() {
        return 0;
    }
    let width = cols.len();
    let rows: Vec<Vec<Scalar>> = vecs
        .iter()
        .map(|v| {
            let mut row = vec![v.field().zero(); width];
            for (w, c) in v.terms() {
                row[cols[w]] = c.clone();
            }
            row
        })
        .collect();
    linalg::rank(rows)
}

/// Constraint rows for "the combination of the spanning vectors is killed by
/// every listed operator": `images[op][k]` is one operator's image of the
/// `k`-th vector, and each occurring word contributes one row.
fn constraint_rows(images: &[Vec<TensorVec>]) -> Vec<Vec<Scalar>> {
    let mut rows = Vec::new();
    for imgs in images {
        let mut words: BTreeSet<Vec<u8>> = BTreeSet::new();
        for v in imgs {
            for (w, _) in v.terms() {
                words.insert(w.clone());
            }
        }
        for w in &words {
            rows.push(imgs.iter().map(|v| v.coefficient(w)).collect());
        }
    }
    rows
}

fn rand_umat(rng: &mut ChaCha8Rng, n: usize, max_height: u32) -> UTMatrix {
    let mut m = UTMatrix::zeros(n);
    let mut budget = max_height;
    loop {
        let roots: Vec<(usize, usize)> = (1..n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .filter(|&(a, b)| (b - a) as u32 <= budget)
            .collect();
        if roots.is_empty() || rng.gen_ratio(1, 3) {
            break;
        }
        let (a, b) = roots[rng.gen_range(0..roots.len())];
        m.set(a, b, m.get(a, b) + 1);
        budget -= (b - a) as u32;
    }
    m
}

fn rand_coeff(rng: &mut ChaCha8Rng, field: FieldCtx) -> Scalar {
    let mut c = rng.gen_range(-3i64..=3);
    if c == 0 {
        c = 1;
    }
    field.from_int(c)
}

/// A random element of the lowering/toral subalgebra (`with_h` controls
/// whether binomial toral factors may appear).
fn rand_uelem(
    rng: &mut ChaCha8Rng,
    field: FieldCtx,
    n: usize,
    max_terms: usize,
    with_h: bool,
) -> UElem {
    let mut u = UElem::zero(field, n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = rand_umat(rng, n, 4);
        let h = if with_h && rng.gen_ratio(1, 2) {
            HMonomial::new((1..n).map(|_| rng.gen_range(0..=2u32)).collect())
        } else {
            HMonomial::identity(n)
        };
        u.add_term(Monomial { mat: m, h }, rand_coeff(rng, field));
    }
    u
}

fn rand_tensor(rng: &mut ChaCha8Rng, field: FieldCtx, n: usize, r: usize, terms: usize) -> TensorVec {
    let mut v = TensorVec::zero(field, n, r);
    for _ in 0..terms {
        let w: Vec<u8> = (0..r).map(|_| rng.gen_range(1..=n as u8)).collect();
        v.add_term(w, rand_coeff(rng, field));
    }
    v
}

/// A random nonzero module element with small support in the standard basis.
fn rand_module_vec(rng: &mut ChaCha8Rng, ctx: &WeylContext, max_support: usize) -> TensorVec {
    let field = ctx.field();
    let dim = ctx.basis().expect("basis").tableaux().len();
    loop {
        let mut v = TensorVec::zero(field, ctx.n(), ctx.rank_boxes());
        for _ in 0..rng.gen_range(1..=max_support.min(dim)) {
            let t = ctx.basis().expect("basis").tableaux()[rng.gen_range(0..dim)].clone();
            let f = t.f_of(field).expect("tableau monomial");
            let u = ctx.vector_of(&f).expect("basis vector");
            v = v.add(&u.scale(&rand_coeff(rng, field)));
        }
        if !v.is_zero() {
            return v;
        }
    }
}

fn basis_vectors(ctx: &WeylContext) -> Vec<TensorVec> {
    let tabs: Vec<Tableau> = ctx.basis().expect("basis").tableaux().to_vec();
    tabs.iter()
        .map(|t| {
            let f = t.f_of(ctx.field()).expect("tableau monomial");
            ctx.vector_of(&f).expect("basis vector")
        })
        .collect()
}

fn h_elem(field: FieldCtx, n: usize, h: HMonomial) -> UElem {
    let mut u = UElem::zero(field, n);
    u.add_term(Monomial { mat: UTMatrix::zeros(n), h }, field.one());
    u
}

fn act_h1(v: &TensorVec, l: usize) -> TensorVec {
    act_h_monomial(v, &HMonomial::identity(v.n()).with_at(l, 1))
}

// ---------------------------------------------------------------------------
// 1. worked examples, reproduced bit-exactly
// ---------------------------------------------------------------------------

#[test]
fn a01_worked_examples() {
    let q = fq();

    // Raise-then-evaluate on a divided square of a simple lowering generator:
    // X_{α_i,1}·X_{−α_i,2} ↦ (a_i − 1)·X_{−α_i,1} after evaluation at ω.
    for n in 2..=4usize {
        for i in 1..n {
            let coords: Vec<i64> = (1..n).map(|l| l as i64 + 1).collect();
            let omega = wv(&coords);
            let f = mono(q, n, &[(i, i + 1, 2)]);
            let got = r_raise(&omega, i, i + 1, 1, &f).expect("raise");
            let expected = mono(q, n, &[(i, i + 1, 1)]).scale(&q.from_int(coords[i - 1] - 1));
            assert_eq!(got, expected, "divided-square raise at n={n} i={i}");
        }
        // with a_i = 1 the image vanishes
        let omega = wv(&vec![1; n - 1]);
        let f = mono(q, n, &[(1, 2, 2)]);
        assert!(r_raise(&omega, 1, 2, 1, &f).expect("raise").is_zero());
    }

    // Six-edge flow: classification, family membership and its sign at level 6.
    let g = flow(9, &[(5, 9), (3, 8), (6, 7), (4, 6), (2, 4), (1, 3)]);
    let c = g.classify();
    assert_eq!(c.sources, vec![1, 2, 5]);
    assert_eq!(c.sinks, vec![9, 8, 7]);
    assert_eq!(c.transit, vec![3, 4, 6]);
    assert_eq!(c.sigma, vec![2, 3, 1]);
    assert!(g.in_family(6, &[1, 2, 5], &[9, 8, 7]));
    assert_eq!(g.sign(6).expect("sign"), -1);

    // The three source-shift operators on that flow.
    let l1 = apply_op(FlowOp::L1, &g, 6).expect("L1").flow().expect("L1 flow");
    assert_eq!(l1, flow(9, &[(5, 9), (3, 8), (6, 7), (4, 6), (2, 5), (1, 3)]));
    assert!(matches!(apply_op(FlowOp::L2, &g, 6), Err(Error::NotWellDefined(_))));
    let invalid_edges: BTreeSet<(usize, usize)> =
        [(4, 9), (3, 8), (6, 7), (4, 6), (2, 4), (1, 3)].into_iter().collect();
    match apply_op(FlowOp::L3, &g, 6).expect("L3") {
        OpResult::Invalid(edges) => assert_eq!(edges, invalid_edges),
        OpResult::Flow(_) => panic!("the source shift must leave the flow class here"),
    }
    let partner = l3_partner(&g, 6).expect("partner");
    assert_ne!(partner, g);
    assert!(partner.in_family(6, &[1, 2, 5], &[9, 8, 7]));
    assert_eq!(partner.sign(6).expect("sign"), 1);
    match apply_op(FlowOp::L3, &partner, 6).expect("L3 on partner") {
        OpResult::Invalid(edges) => assert_eq!(edges, invalid_edges),
        OpResult::Flow(_) => panic!("the partner image must leave the flow class too"),
    }

    // Reconstructing the unique source-shift preimage.
    let gp = flow(5, &[(2, 5), (3, 4), (1, 3)]);
    let (op, g0) = inverse_op(&gp, 3, InvKind::L).expect("inverse");
    assert_eq!(op, FlowOp::L1);
    assert_eq!(g0, flow(5, &[(2, 5), (3, 4), (1, 2)]));
    assert_eq!(apply_op(op, &g0, 3).expect("roundtrip").flow().as_ref(), Some(&gp));

    // Matrix and canonical monomial of a standard tableau.
    let t = Tableau::new(4, vec![vec![1, 2, 2, 3, 4], vec![2, 3, 3], vec![3, 4]]).expect("tableau");
    assert!(t.is_standard());
    assert_eq!(t.shape(), Composition(vec![5, 3, 2, 0]));
    let tm = mat(4, &[(1, 2, 2), (1, 3, 1), (1, 4, 1), (2, 3, 2), (3, 4, 1)]);
    assert_eq!(t.mat_of().expect("matrix"), tm);
    assert_eq!(t.f_of(q).expect("monomial"), UElem::monomial(q, tm));

    // Shape surgery along a flow: the worked case and the undefined case.
    let g2 = flow(4, &[(1, 4), (2, 3)]);
    assert!(g2.in_family(2, &[1, 2], &[4, 3]));
    let surgered =
        Tableau::new(4, vec![vec![1, 1, 2, 2, 3], vec![2, 2, 3], vec![3, 3, 4], vec![4]])
            .expect("tableau");
    assert_eq!(sigma(&g2, 2, &t).expect("surgery"), Some(surgered));
    let g2p = flow(4, &[(2, 4)]);
    assert_eq!(sigma(&g2p, 2, &t).expect("surgery"), None);

    // Row-wise tableau sum and its shape additivity.
    let s5 = Tableau::new(5, vec![vec![1, 2, 4, 5], vec![2, 2, 4], vec![5], vec![5]])
        .expect("tableau");
    let t5 = Tableau::new(5, vec![vec![3], vec![3, 5], vec![4, 5]]).expect("tableau");
    let sum = tab_sum(&s5, &t5).expect("sum");
    assert_eq!(
        sum,
        Tableau::new(5, vec![vec![1, 2, 3, 4, 5], vec![2, 2, 3, 4, 5], vec![4, 5, 5], vec![5]])
            .expect("tableau")
    );
    assert_eq!(s5.shape(), Composition(vec![4, 3, 1, 1, 0]));
    assert_eq!(t5.shape(), Composition(vec![1, 2, 2, 0, 0]));
    assert_eq!(sum.shape(), Composition(vec![5, 5, 3, 1, 0]));

    // Flow comparison and the straddle-count vectors.
    let ga = flow(6, &[(3, 6), (4, 5), (2, 4), (1, 2)]);
    let gb = flow(6, &[(3, 6), (4, 5), (1, 4)]);
    assert!(ga.in_family(4, &[1, 3], &[6, 5]));
    assert!(gb.in_family(4, &[1, 3], &[6, 5]));
    assert_eq!(cmp_flows(&ga, &gb).expect("comparison"), Ordering::Less);
    assert_eq!(ga.nu(3), vec![0, 1, 1, 0, 0, 0]);
    assert_eq!(gb.nu(3), vec![1, 0, 1, 0, 0, 0]);
    assert_eq!(ga.nu(4), vec![0, 0, 1, 1, 0, 0]);
    assert_eq!(gb.nu(4), ga.nu(4));
    assert_eq!(ga.nu(5), vec![0, 0, 1, 0, 0, 0]);
    assert_eq!(gb.nu(5), ga.nu(5));
    assert_eq!(ga.nu(6), vec![0; 6]);
    assert_eq!(gb.nu(6), vec![0; 6]);
    assert_eq!(
        dominance_cmp(&Composition(ga.nu(3)), &Composition(gb.nu(3))).expect("dominance"),
        Some(Ordering::Less)
    );

    println!("ACCEPTANCE 01 worked-examples: PASS");
}

// ---------------------------------------------------------------------------
// 2. elementary flow operators, exhaustively over small families
// ---------------------------------------------------------------------------

fn check_family_ops(n: usize, i: usize, sources: &[usize], sinks: &[usize], fam: &[Flow]) {
    let q = sources.len();
    let label = format!("n={n} i={i} a={sources:?} b={sinks:?}");
    let aq = q.checked_sub(1).map(|k| sources[k]);
    let bq = q.checked_sub(1).map(|k| sinks[k]);

    // shifted parameter lists, when the shape admits them
    let src_shift: Option<(Vec<usize>, Vec<usize>)> = aq.and_then(|a| {
        (a >= 2 && !sources.contains(&(a - 1))).then(|| {
            let mut s = sources[..q - 1].to_vec();
            s.push(a - 1);
            s.sort_unstable();
            (s, sinks.to_vec())
        })
    });
    let mid_shift: Option<(Vec<usize>, Vec<usize>)> = {
        let ok = q == 0 || (sources[q - 1] < i && sinks[q - 1] > i + 1);
        ok.then(|| {
            let mut s = sources.to_vec();
            s.push(i);
            let mut b = sinks.to_vec();
            b.push(i + 1);
            (s, b)
        })
    };
    let sink_shift: Option<(Vec<usize>, Vec<usize>)> = bq.and_then(|b| {
        (b + 1 <= n && !sinks.contains(&(b + 1))).then(|| {
            let mut bb = sinks[..q - 1].to_vec();
            bb.push(b + 1);
            (sources.to_vec(), bb)
        })
    });

    for g in fam {
        let c = g.classify();
        let sign = g.sign(i).expect("sign");
        let has_out = |v: usize| c.sources.contains(&v) || c.transit.contains(&v);

        // L1: the next vertex below the top source is a transit point.
        let l1_def = aq.map_or(false, |a| a >= 2 && c.transit.contains(&(a - 1)));
        let r1 = apply_op(FlowOp::L1, g, i);
        assert_eq!(r1.is_ok(), l1_def, "L1 condition {label}");
        if let Ok(res) = r1 {
            let out = res.flow().expect("L1 image is a flow");
            let (s, b) = src_shift.as_ref().expect("L1 target shape");
            assert!(out.in_family(i, s, b), "L1 target {label}");
            assert_eq!(out.sign(i).expect("sign"), -sign, "L1 sign {label}");
        }

        // L2: nothing leaves the vertex below the top source.
        let l2_def = aq.map_or(false, |a| a >= 2 && !has_out(a - 1));
        let r2 = apply_op(FlowOp::L2, g, i);
        assert_eq!(r2.is_ok(), l2_def, "L2 condition {label}");
        if let Ok(res) = r2 {
            let out = res.flow().expect("L2 image is a flow");
            let (s, b) = src_shift.as_ref().expect("L2 target shape");
            assert!(out.in_family(i, s, b), "L2 target {label}");
            assert_eq!(out.sign(i).expect("sign"), -sign, "L2 sign {label}");
        }

        // L3: the vertex below the top source is no source; the image is a
        // flow exactly when that vertex is no transit point, and otherwise
        // the unique sign-opposite partner shares the image.
        let l3_def = aq.map_or(false, |a| a >= 2 && !c.sources.contains(&(a - 1)));
        let r3 = apply_op(FlowOp::L3, g, i);
        assert_eq!(r3.is_ok(), l3_def, "L3 condition {label}");
        if let Ok(res) = r3 {
            let transited = c.transit.contains(&(aq.unwrap() - 1));
            match res {
                OpResult::Flow(out) => {
                    assert!(!transited, "L3 flow image despite a transit point {label}");
                    let (s, b) = src_shift.as_ref().expect("L3 target shape");
                    assert!(out.in_family(i, s, b), "L3 target {label}");
                    assert_eq!(out.sign(i).expect("sign"), sign, "L3 keeps the sign {label}");
                }
                OpResult::Invalid(edges) => {
                    assert!(transited, "L3 left the flow class without a transit point {label}");
                    let partner = l3_partner(g, i).expect("partner");
                    assert_ne!(&partner, g, "partner must differ {label}");
                    assert!(partner.in_family(i, sources, sinks), "partner family {label}");
                    assert_eq!(partner.sign(i).expect("sign"), -sign, "partner sign {label}");
                    match apply_op(FlowOp::L3, &partner, i).expect("L3 on partner") {
                        OpResult::Invalid(e2) => assert_eq!(e2, edges, "shared image {label}"),
                        OpResult::Flow(_) => panic!("partner image must not be a flow {label}"),
                    }
                    let sharers = fam
                        .iter()
                        .filter(|h| {
                            matches!(apply_op(FlowOp::L3, h, i),
                                     Ok(OpResult::Invalid(ref e)) if *e == edges)
                        })
                        .count();
                    assert_eq!(sharers, 2, "exactly two flows share the image {label}");
                }
            }
        }

        // M1/M2: adjoin the pair (i, i+1) to the shape.
        let i1_free = !c.sinks.contains(&(i + 1));
        let m1_def = i1_free && c.transit.contains(&i);
        let rm1 = apply_op(FlowOp::M1, g, i);
        assert_eq!(rm1.is_ok(), m1_def, "M1 condition {label}");
        if let Ok(res) = rm1 {
            let out = res.flow().expect("M1 image is a flow");
            let (s, b) = mid_shift.as_ref().expect("M1 target shape");
            assert!(out.in_family(i, s, b), "M1 target {label}");
            assert_eq!(out.sign(i).expect("sign"), -sign, "M1 sign {label}");
        }
        let m2_def = i1_free && !has_out(i);
        let rm2 = apply_op(FlowOp::M2, g, i);
        assert_eq!(rm2.is_ok(), m2_def, "M2 condition {label}");
        if let Ok(res) = rm2 {
            let out = res.flow().expect("M2 image is a flow");
            let (s, b) = mid_shift.as_ref().expect("M2 target shape");
            assert!(out.in_family(i, s, b), "M2 target {label}");
            assert_eq!(out.sign(i).expect("sign"), -sign, "M2 sign {label}");
        }

        // R: push the lowest sink up by one.
        let r_def = bq.map_or(false, |b| b + 1 <= n && !c.sinks.contains(&(b + 1)));
        let rr = apply_op(FlowOp::R, g, i);
        assert_eq!(rr.is_ok(), r_def, "R condition {label}");
        if let Ok(res) = rr {
            let out = res.flow().expect("R image is a flow");
            let (s, b) = sink_shift.as_ref().expect("R target shape");
            assert!(out.in_family(i, s, b), "R target {label}");
            assert_eq!(out.sign(i).expect("sign"), -sign, "R sign {label}");
        }
    }

    // unique preimages: every member of a shifted family arises from exactly
    // one (operator, flow) pair over the base family
    if let Some((s, b)) = &src_shift {
        for gp in &enumerate_family(n, i, s, b).expect("shifted family") {
            let (op, g0) = inverse_op(gp, i, InvKind::L).expect("source-shift inverse");
            assert!(matches!(op, FlowOp::L1 | FlowOp::L2 | FlowOp::L3), "L kind {label}");
            assert!(g0.in_family(i, sources, sinks), "L preimage family {label}");
            assert_eq!(apply_op(op, &g0, i).expect("roundtrip").flow().as_ref(), Some(gp));
            let count: usize = fam
                .iter()
                .map(|h| {
                    [FlowOp::L1, FlowOp::L2, FlowOp::L3]
                        .iter()
                        .filter(|&&k| {
                            matches!(apply_op(k, h, i), Ok(OpResult::Flow(ref out)) if out == gp)
                        })
                        .count()
                })
                .sum();
            assert_eq!(count, 1, "unique source-shift preimage of {gp:?} {label}");
        }
    }
    if let Some((s, b)) = &mid_shift {
        for gp in &enumerate_family(n, i, s, b).expect("shifted family") {
            let (op, g0) = inverse_op(gp, i, InvKind::M).expect("middle-shift inverse");
            assert!(matches!(op, FlowOp::M1 | FlowOp::M2), "M kind {label}");
            assert!(g0.in_family(i, sources, sinks), "M preimage family {label}");
            assert_eq!(apply_op(op, &g0, i).expect("roundtrip").flow().as_ref(), Some(gp));
            let count: usize = fam
                .iter()
                .map(|h| {
                    [FlowOp::M1, FlowOp::M2]
                        .iter()
                        .filter(|&&k| {
                            matches!(apply_op(k, h, i), Ok(OpResult::Flow(ref out)) if out == gp)
                        })
                        .count()
                })
                .sum();
            assert_eq!(count, 1, "unique middle-shift preimage of {gp:?} {label}");
        }
    }
    if let Some((s, b)) = &sink_shift {
        for gp in &enumerate_family(n, i, s, b).expect("shifted family") {
            let (op, g0) = inverse_op(gp, i, InvKind::R).expect("sink-shift inverse");
            assert_eq!(op, FlowOp::R, "R kind {label}");
            assert!(g0.in_family(i, sources, sinks), "R preimage family {label}");
            assert_eq!(apply_op(op, &g0, i).expect("roundtrip").flow().as_ref(), Some(gp));
            let count = fam
                .iter()
                .filter(|h| {
                    matches!(apply_op(FlowOp::R, h, i), Ok(OpResult::Flow(ref out)) if out == gp)
                })
                .count();
            assert_eq!(count, 1, "unique sink-shift preimage of {gp:?} {label}");
        }
    }
}

#[test]
fn a02_flow_operators() {
    for n in 2..=6usize {
        for i in 1..n {
            for (sources, sinks) in family_shapes(n, i, 2) {
                let fam = enumerate_family(n, i, &sources, &sinks).expect("family");
                check_family_ops(n, i, &sources, &sinks, &fam);
            }
        }
    }
    println!("ACCEPTANCE 02 flow-operators: PASS");
}

// ---------------------------------------------------------------------------
// 3. the commutator word equals the flow-indexed sum
// ---------------------------------------------------------------------------

/// Up to `want` choices of one order-condition interleaving per source, in
/// bracket reading order (top source first).
fn interleaving_choices(
    i: usize,
    sources: &[usize],
    sinks: &[usize],
    want: usize,
) -> Vec<Vec<Vec<usize>>> {
    let q = sources.len();
    let per_pair: Vec<Vec<Vec<usize>>> =
        (0..q).rev().map(|j| o_sequences(sources[j], i, sinks[j] - 1)).collect();
    let max = per_pair.iter().map(|p| p.len()).max().unwrap_or(1);
    let picks = want.min(max);
    (0..picks)
        .map(|k| {
            per_pair
                .iter()
                .map(|p| {
                    let idx = if picks == 1 { 0 } else { k * (p.len() - 1) / (picks - 1) };
                    p[idx].clone()
                })
                .collect()
        })
        .collect()
}

#[test]
fn a03_commutator_flow_sum() {
    let q = fq();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA03);
    for n in 2..=5usize {
        for i in 1..n {
            for (sources, sinks) in family_shapes(n, i, 2) {
                if sources.is_empty() {
                    continue;
                }
                let choices = interleaving_choices(i, &sources, &sinks, 3);
                for _ in 0..50 {
                    let f = rand_uelem(&mut rng, q, n, 2, true);
                    let direct = xi(i, &sources, &sinks, &f).expect("flow sum");
                    for seqs in &choices {
                        let via_bracket = bracket_xi(i, seqs, &f).expect("bracket");
                        assert_eq!(
                            via_bracket, direct,
                            "n={n} i={i} a={sources:?} b={sinks:?} seqs={seqs:?} f={f}"
                        );
                    }
                }
            }
        }
    }
    println!("ACCEPTANCE 03 commutator-flow-sum: PASS");
}

// ---------------------------------------------------------------------------
// 4. standard-tableau basis: dimension, spanning rank, triangularity
// ---------------------------------------------------------------------------

#[test]
fn a04_standard_basis() {
    for n in [2usize, 3, 4] {
        for omega in dominant_weights(n, 3) {
            let lambda = coherent_partition(&omega).expect("partition");
            let standard = enumerate_standard(&lambda).expect("standard tableaux");
            let regular = enumerate_regular_row_standard(&lambda).expect("regular tableaux");
            for field in all_fields() {
                let label = format!("n={n} ω={omega} field={field}");
                let ctx = WeylContext::new(field, &omega).expect("context");
                assert_eq!(
                    ctx.dimension().expect("dimension"),
                    standard.len(),
                    "independent standard images {label}"
                );

                // spanning: the full capped monomial grid has the same rank
                let caps: Vec<u32> = (1..=n).map(|a| lambda.row(a) + 1).collect();
                let vecs: Vec<TensorVec> = UTMatrix::enumerate_with_row_caps(n, &caps)
                    .into_iter()
                    .map(|m| {
                        ctx.vector_of(&UElem::monomial(field, m)).expect("monomial image")
                    })
                    .collect();
                assert_eq!(tensor_rank(&vecs), standard.len(), "monomial-grid rank {label}");

                // non-standard regular fillings expand over strictly larger
                // standard tableaux
                for t in &regular {
                    if t.is_standard() {
                        continue;
                    }
                    let v = ctx
                        .vector_of(&t.f_of(field).expect("tableau monomial"))
                        .expect("tableau image");
                    let coords = ctx.coords(&v).expect("expansion");
                    for (s, c) in ctx.basis().expect("basis").tableaux().iter().zip(&coords) {
                        if c.is_zero() {
                            continue;
                        }
                        assert_eq!(
                            tableau_cmp(s, t).expect("comparable"),
                            Some(Ordering::Greater),
                            "support of {t} must exceed it: {s} {label}"
                        );
                    }
                }
            }
        }
    }
    println!("ACCEPTANCE 04 standard-basis: PASS");
}

// ---------------------------------------------------------------------------
// 5. symbolic operators against the tensor-space oracle
// ---------------------------------------------------------------------------

struct GridCell {
    field: FieldCtx,
    omega: WeightVec,
    ctx: WeylContext,
}

fn grid_cells() -> Vec<GridCell> {
    let mut out = Vec::new();
    for n in [2usize, 3, 4] {
        for omega in dominant_weights(n, 3) {
            for field in all_fields() {
                let ctx = WeylContext::new(field, &omega).expect("context");
                out.push(GridCell { field, omega: omega.clone(), ctx });
            }
        }
    }
    out
}

fn rand_root(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(1..n);
    let j = rng.gen_range(i + 1..=n);
    (i, j)
}

fn valid_descents(omega: &WeightVec) -> Vec<usize> {
    (1..omega.n()).filter(|&l| omega.coord(l) >= 1).collect()
}

/// raise-then-evaluate agrees with the module-side divided raise
fn suite_raise_vs_oracle(cells: &[GridCell]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0501);
    for k in 0..200 {
        let cell = &cells[k % cells.len()];
        let n = cell.omega.n();
        let f = rand_uelem(&mut rng, cell.field, n, 2, false);
        let (i, j) = rand_root(&mut rng, n);
        let m = rng.gen_range(1..=3u32);
        let lhs = cell
            .ctx
            .vector_of(&r_raise(&cell.omega, i, j, m, &f).expect("raise"))
            .expect("raised image");
        let rhs = act_divided(&cell.ctx.vector_of(&f).expect("image"), i, j, m);
        assert_eq!(lhs, rhs, "raise-vs-oracle ω={} field={} f={f} root=({i},{j}) m={m}",
                   cell.omega, cell.field);
    }
}

/// the five commutation identities of divided powers, on random tensors
fn suite_commutation_identities(cells: &[GridCell]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0502);
    let mut done = 0usize;
    let mut k = 0usize;
    while done < 200 {
        let cell = &cells[k % cells.len()];
        k += 1;
        let n = cell.omega.n();
        let r = cell.ctx.rank_boxes();
        if r == 0 {
            continue;
        }
        let v = rand_tensor(&mut rng, cell.field, n, r, 3);
        let m = rng.gen_range(1..=3u32);
        let label = format!("ω={} field={} m={m}", cell.omega, cell.field);

        if n >= 3 {
            // pick mutually distinct i, j, k
            let mut idx: Vec<usize> = (1..=n).collect();
            for p in 0..3 {
                let swap = rng.gen_range(p..idx.len());
                idx.swap(p, swap);
            }
            let (i, j, l) = (idx[0], idx[1], idx[2]);
            // [E_{i,j}, E^{(m)}_{j,l}] = E_{i,l} E^{(m−1)}_{j,l}
            let comm = act_divided(&act_divided(&v, j, l, m), i, j, 1)
                .sub(&act_divided(&act_divided(&v, i, j, 1), j, l, m));
            let rhs = act_divided(&act_divided(&v, j, l, m - 1), i, l, 1);
            assert_eq!(comm, rhs, "same-inner-index commutation {label} ({i},{j},{l})");
            // [E_{i,j}, E^{(m)}_{l,i}] = −E_{l,j} E^{(m−1)}_{l,i}
            let comm = act_divided(&act_divided(&v, l, i, m), i, j, 1)
                .sub(&act_divided(&act_divided(&v, i, j, 1), l, i, m));
            let rhs = act_divided(&act_divided(&v, l, i, m - 1), l, j, 1)
                .scale(&cell.field.from_int(-1));
            assert_eq!(comm, rhs, "same-outer-index commutation {label} ({i},{j},{l})");
        }

        // [E_{l,l+1}, E^{(m)}_{l+1,l}] = E^{(m−1)}_{l+1,l} (H_l + 1 − m)
        let l = rng.gen_range(1..n);
        let comm = act_divided(&act_divided(&v, l + 1, l, m), l, l + 1, 1)
            .sub(&act_divided(&act_divided(&v, l, l + 1, 1), l + 1, l, m));
        let inner = act_h1(&v, l).add(&v.scale(&cell.field.from_int(1 - m as i64)));
        assert_eq!(comm, act_divided(&inner, l + 1, l, m - 1), "opposite-root commutation {label}");

        // H_l E^{(m)}_{i,j} = E^{(m)}_{i,j} (H_l + m(δ_{l=i} − δ_{l=j} − δ_{l+1=i} + δ_{l+1=j}))
        let (i, j) = {
            let (a, b) = rand_root(&mut rng, n);
            if rng.gen_bool(0.5) {
                (a, b)
            } else {
                (b, a)
            }
        };
        let d = |p: bool| if p { 1i64 } else { 0 };
        let shift = d(l == i) - d(l == j) - d(l + 1 == i) + d(l + 1 == j);
        let lhs = act_h1(&act_divided(&v, i, j, m), l);
        let rhs = act_divided(&act_h1(&v, l), i, j, m)
            .add(&act_divided(&v, i, j, m).scale(&cell.field.from_int(m as i64 * shift)));
        assert_eq!(lhs, rhs, "toral shift {label} ({i},{j}) l={l}");

        // E^{(m)}_{i,j} E_{i,j} = (m+1) E^{(m+1)}_{i,j}
        let lhs = act_divided(&act_divided(&v, i, j, 1), i, j, m);
        let rhs = act_divided(&v, i, j, m + 1).scale(&cell.field.from_int(m as i64 + 1));
        assert_eq!(lhs, rhs, "divided-power merge {label} ({i},{j})");

        done += 1;
    }
}

/// the descent intertwines toral monomials through the shift automorphism
fn suite_descent_toral(cells: &[GridCell]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0503);
    let mut done = 0usize;
    let mut k = 0usize;
    while done < 200 {
        let cell = &cells[k % cells.len()];
        k += 1;
        let descents = valid_descents(&cell.omega);
        if descents.is_empty() {
            continue;
        }
        let n = cell.omega.n();
        let i = descents[rng.gen_range(0..descents.len())];
        let dst = WeylContext::new(cell.field, &cell.omega.minus_fundamental(i).expect("weight"))
            .expect("target context");
        let f = rand_uelem(&mut rng, cell.field, n, 2, false);
        let v = cell.ctx.vector_of(&f).expect("image");
        let h = HMonomial::new((1..n).map(|_| rng.gen_range(0..=2u32)).collect());
        let omega_i = WeightVec::fundamental(n, i).expect("fundamental");
        let lhs = cell.ctx.d_map(i, &act_h_monomial(&v, &h), &dst).expect("descent");
        let shifted = theta(&omega_i, &h_elem(cell.field, n, h.clone())).expect("shift");
        let rhs = apply_uelem(&shifted, &cell.ctx.d_map(i, &v, &dst).expect("descent"))
            .expect("shifted action");
        assert_eq!(lhs, rhs, "descent-toral ω={} field={} i={i} h={h:?}", cell.omega, cell.field);
        done += 1;
    }
}

/// descents at different levels commute
fn suite_descents_commute(cells: &[GridCell]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0504);
    let mut done = 0usize;
    let mut k = 0usize;
    while done < 200 {
        let cell = &cells[k % cells.len()];
        k += 1;
        let descents = valid_descents(&cell.omega);
        if descents.len() < 2 {
            continue;
        }
        let i = descents[rng.gen_range(0..descents.len())];
        let j = loop {
            let j = descents[rng.gen_range(0..descents.len())];
            if j != i {
                break j;
            }
        };
        let f = rand_uelem(&mut rng, cell.field, cell.omega.n(), 2, false);
        let v = cell.ctx.vector_of(&f).expect("image");
        let mid_i = WeylContext::new(cell.field, &cell.omega.minus_fundamental(i).expect("weight"))
            .expect("context");
        let mid_j = WeylContext::new(cell.field, &cell.omega.minus_fundamental(j).expect("weight"))
            .expect("context");
        let end = WeylContext::new(
            cell.field,
            &cell.omega.minus_fundamental(i).expect("weight").minus_fundamental(j).expect("weight"),
        )
        .expect("context");
        let via_i = mid_i.d_map(j, &cell.ctx.d_map(i, &v, &mid_i).expect("descent"), &end)
            .expect("descent");
        let via_j = mid_j.d_map(i, &cell.ctx.d_map(j, &v, &mid_j).expect("descent"), &end)
            .expect("descent");
        assert_eq!(via_i, via_j, "descents commute ω={} field={} i={i} j={j} f={f}",
                   cell.omega, cell.field);
        done += 1;
    }
}

/// the kernel of a descent is closed under taking weight components
fn suite_descent_kernel_components(cells: &[GridCell]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0505);
    let mut done = 0usize;
    let mut k = 0usize;
    while done < 200 {
        let cell = &cells[k % cells.len()];
        k += 1;
        let descents = valid_descents(&cell.omega);
        if descents.is_empty() {
            continue;
        }
        let i = descents[k % descents.len()];
        let dst = WeylContext::new(cell.field, &cell.omega.minus_fundamental(i).expect("weight"))
            .expect("context");
        let basis = basis_vectors(&cell.ctx);
        let images: Vec<TensorVec> =
            basis.iter().map(|u| cell.ctx.d_map(i, u, &dst).expect("descent")).collect();
        let null = linalg::nullspace(cell.field, constraint_rows(&[images]), basis.len());
        if null.is_empty() {
            continue;
        }
        // a few random kernel vectors per admissible context
        for _ in 0..4 {
            let mut v = TensorVec::zero(cell.field, cell.omega.n(), cell.ctx.rank_boxes());
            for nv in &null {
                let c = rand_coeff(&mut rng, cell.field);
                for (u, x) in basis.iter().zip(nv) {
                    v = v.add(&u.scale(&x.mul(&c)));
                }
            }
            assert!(
                cell.ctx.d_map(i, &v, &dst).expect("descent").is_zero(),
                "kernel combination ω={} field={} i={i}",
                cell.omega,
                cell.field
            );
            for (_, comp) in v.weight_components() {
                assert!(
                    cell.ctx.d_map(i, &comp, &dst).expect("descent").is_zero(),
                    "kernel weight component ω={} field={} i={i}",
                    cell.omega,
                    cell.field
                );
            }
            done += 1;
        }
    }
}

/// module-side operator words match the symbolic route through the algebra
fn suite_word_routes(cells: &[GridCell]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0506);
    let mut done = 0usize;
    let mut k = 0usize;
    while done < 200 {
        let cell = &cells[k % cells.len()];
        k += 1;
        let descents = valid_descents(&cell.omega);
        if descents.is_empty() {
            continue;
        }
        let n = cell.omega.n();
        let i = descents[rng.gen_range(0..descents.len())];
        let dst = WeylContext::new(cell.field, &cell.omega.minus_fundamental(i).expect("weight"))
            .expect("context");
        let mut word = Vec::new();
        for _ in 0..rng.gen_range(0..=2usize) {
            let (a, b) = rand_root(&mut rng, n);
            word.push(ModToken::Raise { i: a, j: b, m: rng.gen_range(1..=2) });
        }
        word.push(ModToken::Descend);
        for _ in 0..rng.gen_range(0..=2usize) {
            let (a, b) = rand_root(&mut rng, n);
            word.push(ModToken::Raise { i: a, j: b, m: rng.gen_range(1..=2) });
        }
        let f = rand_uelem(&mut rng, cell.field, n, 2, true);
        let module_side = cell
            .ctx
            .apply_word(&word, i, &cell.ctx.vector_of(&f).expect("image"), &dst)
            .expect("module word");
        let omega_i = WeightVec::fundamental(n, i).expect("fundamental");
        let mut g = f.clone();
        for token in word.iter().rev() {
            g = match *token {
                ModToken::Raise { i: a, j: b, m } => eta_divided(a, b, m, &g).expect("raise"),
                ModToken::Descend => theta(&omega_i, &g).expect("shift"),
            };
        }
        let algebra_side = dst.vector_of(&g).expect("algebra image");
        assert_eq!(module_side, algebra_side, "word route ω={} field={} i={i} word={word:?} f={f}",
                   cell.omega, cell.field);
        done += 1;
    }
}

/// the commutator ladder against the descent equals the flow-indexed sum,
/// evaluated in the target module
fn suite_ladder_vs_flow_sum(cells: &[GridCell]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0507);
    let mut done = 0usize;
    let mut k = 0usize;
    while done < 200 {
        let cell = &cells[k % cells.len()];
        k += 1;
        let descents = valid_descents(&cell.omega);
        if descents.is_empty() {
            continue;
        }
        let n = cell.omega.n();
        let i = descents[rng.gen_range(0..descents.len())];
        let shapes: Vec<(Vec<usize>, Vec<usize>)> =
            family_shapes(n, i, 2).into_iter().filter(|(s, _)| !s.is_empty()).collect();
        if shapes.is_empty() {
            continue;
        }
        let (sources, sinks) = shapes[rng.gen_range(0..shapes.len())].clone();
        let q = sources.len();
        let mut tokens = Vec::new();
        for j in (0..q).rev() {
            tokens.extend(sources[j]..i);
            tokens.extend((i + 1..sinks[j]).rev());
            tokens.push(i);
        }
        let dst = WeylContext::new(cell.field, &cell.omega.minus_fundamental(i).expect("weight"))
            .expect("context");
        let f = rand_uelem(&mut rng, cell.field, n, 2, true);
        let v = cell.ctx.vector_of(&f).expect("image");
        let lhs = cell.ctx.z_op(&tokens, i, &v, &dst).expect("ladder");
        let rhs = dst
            .vector_of(&xi(i, &sources, &sinks, &f).expect("flow sum"))
            .expect("flow-sum image");
        assert_eq!(lhs, rhs, "ladder ω={} field={} i={i} a={sources:?} b={sinks:?} f={f}",
                   cell.omega, cell.field);
        done += 1;
    }
}

#[test]
fn a05_operator_oracle() {
    let cells = grid_cells();
    suite_raise_vs_oracle(&cells);
    suite_commutation_identities(&cells);
    suite_descent_toral(&cells);
    suite_descents_commute(&cells);
    suite_descent_kernel_components(&cells);
    suite_word_routes(&cells);
    suite_ladder_vs_flow_sum(&cells);
    println!("ACCEPTANCE 05 operator-oracle: PASS");
}

// ---------------------------------------------------------------------------
// 6. joint kernel of all descents and simple raises is trivial
// ---------------------------------------------------------------------------

#[test]
fn a06_joint_kernel() {
    for n in [2usize, 3, 4] {
        for omega in dominant_weights(n, 3) {
            if omega.is_zero() {
                continue;
            }
            for field in all_fields() {
                let ctx = WeylContext::new(field, &omega).expect("context");
                let basis = basis_vectors(&ctx);
                let mut images: Vec<Vec<TensorVec>> = Vec::new();
                for i in valid_descents(&omega) {
                    let dst =
                        WeylContext::new(field, &omega.minus_fundamental(i).expect("weight"))
                            .expect("context");
                    images.push(
                        basis.iter().map(|u| ctx.d_map(i, u, &dst).expect("descent")).collect(),
                    );
                }
                for l in 1..n {
                    images.push(basis.iter().map(|u| act_divided(u, l, l + 1, 1)).collect());
                }
                let null = linalg::nullspace(field, constraint_rows(&images), basis.len());
                assert!(
                    null.is_empty(),
                    "joint kernel must vanish: n={n} ω={omega} field={field} dim={}",
                    null.len()
                );
            }
        }
    }
    println!("ACCEPTANCE 06 joint-kernel: PASS");
}

// ---------------------------------------------------------------------------
// 7. decision procedure against the oracle, exhaustively
// ---------------------------------------------------------------------------

#[test]
fn a07_decision_crosscheck() {
    let params = GridParams {
        n_values: vec![2, 3],
        fields: all_fields(),
        max_coeff: 2,
        max_height: 4,
        max_omega_height: None,
        jobs: 1,
        sample: None,
    };
    let report = cross_validate(&params).expect("sweep");
    assert_eq!(report.cells, 639, "expected grid size");
    assert!(report.mismatches.is_empty(), "verdict mismatches: {:?}", report.mismatches);
    assert!(report.failures.is_empty(), "failures: {:?}", report.failures);
    assert!(report.criterion_nonzero > 0, "the sweep must contain positive verdicts");

    // the sweep must detect injected faults: a silenced checker...
    let small = GridParams {
        n_values: vec![2],
        fields: vec![fq()],
        max_coeff: 1,
        max_height: 2,
        max_omega_height: None,
        jobs: 1,
        sample: None,
    };
    let silenced = cross_validate_with(&small, |_, _| Ok(None)).expect("sweep");
    assert!(!silenced.ok() && !silenced.mismatches.is_empty(), "silencing must be caught");
    // ...and a checker that corrupts the witness scalar
    let corrupted = cross_validate_with(&small, |f, w| {
        Ok(check_nonzero(f, w)?.map(|mut wit| {
            wit.scalar = wit.scalar.add(&fq().one());
            wit
        }))
    })
    .expect("sweep");
    assert!(!corrupted.ok() && !corrupted.failures.is_empty(), "bad witnesses must be caught");

    println!("ACCEPTANCE 07 decision-crosscheck: PASS");
}

// ---------------------------------------------------------------------------
// 8. the certificate word keeps nonzero vectors nonzero
// ---------------------------------------------------------------------------

#[test]
fn a08_raise_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA08);
    for n in [2usize, 3, 4] {
        for omega in dominant_weights(n, 3) {
            if omega.is_zero() {
                continue;
            }
            for field in all_fields() {
                let ctx = WeylContext::new(field, &omega).expect("context");
                let mut dst: Option<WeylContext> = None;
                for _ in 0..100 {
                    let v = rand_module_vec(&mut rng, &ctx, 2);
                    let cert = ctx.raise_certificate(&v).expect("certificate");
                    let dst = dst.get_or_insert_with(|| {
                        WeylContext::new(
                            field,
                            &omega.minus_fundamental(cert.i).expect("weight"),
                        )
                        .expect("context")
                    });
                    let z = ctx.z_op(&cert.tokens, cert.i, &v, dst).expect("ladder");
                    assert!(
                        !z.is_zero(),
                        "certificate must not vanish: n={n} ω={omega} field={field} \
                         tokens={:?} tableau={}",
                        cert.tokens,
                        cert.tableau
                    );
                }
            }
        }
    }
    println!("ACCEPTANCE 08 certificate: PASS");
}

// ---------------------------------------------------------------------------
// 9. the rank-one ladder
// ---------------------------------------------------------------------------

#[test]
fn a09_sl2_ladder() {
    for field in [fq(), fp(2), fp(3), fp(5)] {
        for a in 0..=6i64 {
            let omega = wv(&[a]);
            for m in 0..=8u32 {
                let f = mono(field, 2, &[(1, 2, m)]);
                let witness = check_nonzero(&f, &omega).expect("check");
                assert_eq!(
                    witness.is_some(),
                    i64::from(m) <= a,
                    "ladder field={field} a={a} m={m}"
                );
                if let Some(w) = witness {
                    verify_witness(&f, &omega, &w).expect("witness replays");
                }
            }
        }
    }
    println!("ACCEPTANCE 09 sl2-ladder: PASS");
}

// ---------------------------------------------------------------------------
// 10. the raising-only checker and the irreducible head
// ---------------------------------------------------------------------------

#[test]
fn a10_irreducible_head() {
    for n in [2usize, 3] {
        let mats = UTMatrix::enumerate_by_height(n, 4);
        for omega in coeff_weights(n, 2) {
            // characteristic zero: the head is the whole module, so the
            // raising-only checker must match the oracle exactly
            let ctx = WeylContext::new(fq(), &omega).expect("context");
            for m in &mats {
                let f = UElem::monomial(fq(), m.clone());
                let irr = check_irreducible_nonzero(&f, &omega).expect("check").is_some();
                let oracle = !ctx.vector_of(&f).expect("image").is_zero();
                assert_eq!(irr, oracle, "rational head n={n} ω={omega} f={f}");
            }
            // positive characteristic: surviving in the head implies
            // surviving in the module
            for p in [2u64, 3] {
                let field = fp(p);
                let ctx = WeylContext::new(field, &omega).expect("context");
                for m in &mats {
                    let f = UElem::monomial(field, m.clone());
                    if check_irreducible_nonzero(&f, &omega).expect("check").is_some() {
                        assert!(
                            !ctx.vector_of(&f).expect("image").is_zero(),
                            "head-nonzero must imply module-nonzero: p={p} ω={omega} f={f}"
                        );
                    }
                }
            }
        }
    }
    println!("ACCEPTANCE 10 irreducible-head: PASS");
}
