//! Executable property suites.
//!
//! Every suite returns the number of instances it checked and a list of
//! human-readable violations. Randomised suites draw from a seeded ChaCha
//! stream so results are reproducible.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomp::{are_isomorphic, decompose, is_indecomposable, iso_to_indecomposable, Budgets};
use crate::error::Result;
use crate::grcore::{submodules, GrEngine};
use crate::linalg::{Field, FieldElem, Matrix, Subspace};
use crate::measure::{compare, GrMeasure};
use crate::quiver::Quiver;
use crate::rep::{hom_basis, Rep};
use crate::segments::{
    check_sink_source_prop, is_type_a_tilde, verify_main_theorem, Analysis, IndexType, Partition, SegmentRole,
};
use crate::tame::{ar_translate, dims_to_vec, Catalog, Direction, Position};

const MAX_REPORTED: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    /// At most the first twenty violations.
    pub violations: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult { name: name.into(), checked: 0, failed: 0, violations: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.violations.len() < MAX_REPORTED {
                self.violations.push(msg());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub order_samples: usize,
    pub lemma_samples: usize,
    pub rep_samples: usize,
    /// Largest module length for which whole submodule lattices are scanned.
    pub lattice_length: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 20240917, order_samples: 100_000, lemma_samples: 10_000, rep_samples: 40, lattice_length: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub quiver: String,
    pub p: u32,
    pub bound: usize,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub all_pass: bool,
}

// ---------------------------------------------------------------- order

pub fn random_measure(rng: &mut impl Rng, universe: u32) -> GrMeasure {
    loop {
        let v: Vec<u32> = (1..=universe).filter(|_| rng.gen_bool(0.5)).collect();
        if let Ok(m) = GrMeasure::new(v) {
            return m;
        }
    }
}

/// A measure sharing a random-length prefix with `base`, continued randomly.
fn measure_near(rng: &mut impl Rng, base: &GrMeasure, universe: u32) -> Option<GrMeasure> {
    let k = rng.gen_range(0..=base.len());
    let mut v = base.elements()[..k].to_vec();
    let from = v.last().copied().unwrap_or(0) + 1;
    v.extend((from..=universe).filter(|_| rng.gen_bool(0.4)));
    GrMeasure::new(v).ok()
}

/// Totality, antisymmetry, transitivity, prefix order and extension.
pub fn order_laws(seed: u64, samples: usize) -> SuiteResult {
    let mut s = SuiteResult::new("order-laws");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (a, b, c) = (random_measure(&mut rng, 12), random_measure(&mut rng, 12), random_measure(&mut rng, 12));
        let (ab, ba) = (compare(&a, &b), compare(&b, &a));
        s.check(ab == ba.reverse(), || format!("compare({a},{b}) and compare({b},{a}) disagree"));
        s.check((ab == std::cmp::Ordering::Equal) == (a == b), || format!("{a} and {b} tie without being equal"));
        if a <= b && b <= c {
            s.check(a <= c, || format!("{a} <= {b} <= {c} but not {a} <= {c}"));
        }
        if b.starts_with(&a) {
            s.check(a <= b, || format!("{b} starts with {a} but is smaller"));
        }
        if a.top() < 40 {
            let m = rng.gen_range(a.top() + 1..=40);
            let e = a.extend(m).expect("larger element");
            s.check(a < e, || format!("{a} is not below its extension {e}"));
        }
    }
    s
}

/// Anything strictly between `I` and a measure starting with `I` also starts with `I`.
pub fn prefix_between(seed: u64, samples: usize) -> SuiteResult {
    let mut s = SuiteResult::new("prefix-between");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
    let mut attempts = 0;
    while s.checked < samples && attempts < samples * 400 {
        attempts += 1;
        let i = random_measure(&mut rng, 9);
        if i.top() >= 12 {
            continue;
        }
        let tail: Vec<u32> = (i.top() + 1..=12).filter(|_| rng.gen_bool(0.4)).collect();
        if tail.is_empty() {
            continue;
        }
        let mut jv = i.elements().to_vec();
        jv.extend(tail);
        let j = GrMeasure::new(jv).expect("increasing");
        let Some(mid) = measure_near(&mut rng, &j, 12) else { continue };
        if i < mid && mid < j {
            s.check(mid.starts_with(&i), || format!("{i} < {mid} < {j} but {mid} does not start with {i}"));
        }
    }
    s
}

/// Anything strictly between `I` and `I ∪ {m}` has top above `m`.
pub fn extension_gap(seed: u64, samples: usize) -> SuiteResult {
    let mut s = SuiteResult::new("extension-gap");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5a5);
    let mut attempts = 0;
    while s.checked < samples && attempts < samples * 400 {
        attempts += 1;
        let i = random_measure(&mut rng, 9);
        if i.top() >= 11 {
            continue;
        }
        let m = rng.gen_range(i.top() + 1..12);
        let j = i.extend(m).expect("larger element");
        let Some(mid) = measure_near(&mut rng, &j, 14) else { continue };
        if i < mid && mid < j {
            s.check(mid.top() > m, || format!("{i} < {mid} < {j} but top({mid}) <= {m}"));
        }
    }
    s
}

// --------------------------------------------------------- linear algebra

fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..field.p() as i64)).collect();
    Matrix::from_data(field, rows, cols, data).expect("shape")
}

fn random_invertible(rng: &mut impl Rng, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_subspace(rng: &mut impl Rng, field: Field, n: usize) -> Subspace {
    let k = rng.gen_range(0..=n);
    Subspace::span(&random_matrix(rng, field, k, n))
}

fn elements_of(u: &Subspace) -> Vec<Vec<FieldElem>> {
    let field = u.field();
    let n = u.ambient_dim();
    let mut out = vec![vec![0; n]];
    for row in u.basis().to_rows() {
        let mut next = Vec::new();
        for v in &out {
            for c in field.elements() {
                next.push((0..n).map(|x| field.add(v[x], field.mul(c, row[x]))).collect());
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Modular law, canonical forms against element enumeration, RREF idempotence.
pub fn subspace_laws(seed: u64, samples: usize, field: Field) -> SuiteResult {
    let mut s = SuiteResult::new("subspace-laws");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1111);
    let max_n = (1..=6).rev().find(|&n| (field.p() as u64).pow(n as u32) <= 1 << 12).unwrap_or(1);
    for _ in 0..samples {
        let n = rng.gen_range(1..=max_n);
        let (u, v) = (random_subspace(&mut rng, field, n), random_subspace(&mut rng, field, n));
        let sum = u.sum(&v).expect("same ambient");
        let cap = u.intersect(&v).expect("same ambient");
        s.check(sum.dim() + cap.dim() == u.dim() + v.dim(), || {
            format!("dim(U+V)+dim(U∩V) = {} but dim U + dim V = {}", sum.dim() + cap.dim(), u.dim() + v.dim())
        });
        let (eu, ev) = (elements_of(&u), elements_of(&v));
        let expected_cap: Vec<_> = eu.iter().filter(|x| ev.binary_search(x).is_ok()).cloned().collect();
        s.check(elements_of(&cap) == expected_cap, || "intersection differs from element enumeration".into());
        let mut expected_sum: Vec<Vec<FieldElem>> =
            eu.iter().flat_map(|a| ev.iter().map(move |b| (0..n).map(|x| field.add(a[x], b[x])).collect())).collect();
        expected_sum.sort();
        expected_sum.dedup();
        s.check(elements_of(&sum) == expected_sum, || "sum differs from element enumeration".into());
        let respanned = Subspace::from_vectors(field, n, &eu);
        s.check(respanned == u, || "spanning all elements changed the canonical form".into());
        let rows = rng.gen_range(0..=4);
        let a = random_matrix(&mut rng, field, rows, n);
        let r = a.rref();
        s.check(r.matrix.rref().matrix == r.matrix && r.rank == a.rank(), || "rref is not idempotent".into());
    }
    s
}

// --------------------------------------------------------- representations

pub fn random_rep(rng: &mut impl Rng, q: &std::sync::Arc<Quiver>, field: Field, max_len: usize) -> Rep {
    loop {
        let dims: Vec<usize> = (0..q.vertex_count()).map(|_| rng.gen_range(0..=2)).collect();
        let len: usize = dims.iter().sum();
        if len == 0 || len > max_len {
            continue;
        }
        let maps = q.arrows().iter().map(|&(s, t)| random_matrix(rng, field, dims[t], dims[s])).collect();
        return Rep::new(q.clone(), field, dims, maps).expect("shapes match");
    }
}

fn random_basis_change(rng: &mut impl Rng, m: &Rep) -> Rep {
    let g: Vec<Matrix> = m.dims().iter().map(|&d| random_invertible(rng, m.field(), d)).collect();
    m.change_basis(&g).expect("invertible")
}

/// Hom dimensions, decompositions, isomorphism and Krull–Schmidt on random modules.
pub fn representation_laws(
    seed: u64,
    samples: usize,
    q: &std::sync::Arc<Quiver>,
    field: Field,
    budgets: &Budgets,
) -> Result<Vec<SuiteResult>> {
    let mut hom = SuiteResult::new("hom-dimension-basis-invariance");
    let mut dec = SuiteResult::new("decomposition-lengths");
    let mut iso = SuiteResult::new("isomorphism-equivalence");
    let mut ks = SuiteResult::new("krull-schmidt");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2222);
    for _ in 0..samples {
        let m = random_rep(&mut rng, q, field, 4);
        let n = random_rep(&mut rng, q, field, 4);
        let (m2, n2) = (random_basis_change(&mut rng, &m), random_basis_change(&mut rng, &n));
        let d = hom_basis(&m, &n)?.dim();
        hom.check(hom_basis(&m2, &n2)?.dim() == d, || format!("dim Hom changed under basis change for {:?}, {:?}", m.dims(), n.dims()));

        let parts = decompose(&m, budgets)?;
        dec.check(parts.iter().map(Rep::length).sum::<usize>() == m.length(), || "summand lengths do not add up".into());
        for p in &parts {
            dec.check(is_indecomposable(p, budgets)?, || "a summand is decomposable".into());
        }

        let m3 = random_basis_change(&mut rng, &m2);
        iso.check(are_isomorphic(&m, &m, budgets)?, || "not reflexive".into());
        let (a, b) = (are_isomorphic(&m, &m2, budgets)?, are_isomorphic(&m2, &m, budgets)?);
        iso.check(a && b, || "basis change is not an isomorphism in both directions".into());
        iso.check(are_isomorphic(&m, &m3, budgets)?, || "not transitive".into());
        iso.check(are_isomorphic(&m, &n, budgets)? == are_isomorphic(&n, &m, budgets)?, || "not symmetric".into());

        let whole = decompose(&m.direct_sum(&n)?, budgets)?;
        let mut pool: Vec<Option<Rep>> = parts.into_iter().chain(decompose(&n, budgets)?).map(Some).collect();
        let mut ok = whole.len() == pool.len();
        for w in &whole {
            let mut found = false;
            for slot in pool.iter_mut() {
                if let Some(p) = slot {
                    if iso_to_indecomposable(w, p)? {
                        *slot = None;
                        found = true;
                        break;
                    }
                }
            }
            ok &= found;
        }
        ks.check(ok, || format!("summands of M ⊕ N differ from those of M and N for {:?}, {:?}", m.dims(), n.dims()));
    }
    Ok(vec![hom, dec, iso, ks])
}

// --------------------------------------------------------------- measures

/// Proper indecomposable submodules have smaller measure.
pub fn gr_monotone(c: &Catalog, engine: &GrEngine, max_len: usize) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("gr-monotone");
    for e in c.entries.iter().filter(|e| e.length() <= max_len) {
        let lattice = submodules(&e.module, engine.budgets())?;
        for l in &lattice.entries {
            if l.indecomposable && l.length > 0 && l.length < e.length() {
                let t = engine.measure(&e.module.subrep(&l.spaces)?)?;
                s.check(t < e.measure, || format!("entry {} has a submodule with measure {t} >= {}", e.id, e.measure));
            }
        }
    }
    Ok(s)
}

/// The measure is the set of lengths along its witness chain.
pub fn witness_chain_lengths(c: &Catalog, engine: &GrEngine) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("witness-chain-lengths");
    for e in &c.entries {
        let r = engine.gr_measure(&e.module)?;
        let lengths: Vec<u32> =
            r.witness_chain.iter().map(|t| t.iter().map(Subspace::dim).sum::<usize>() as u32).collect();
        s.check(r.measure == e.measure && lengths == e.measure.elements(), || {
            format!("entry {}: witness lengths {lengths:?} against {}", e.id, e.measure)
        });
    }
    Ok(s)
}

/// GR submodules of `X_i` are preprojective or isomorphic to `X_{i−1}`.
pub fn regular_gr_submodules(c: &Catalog, engine: &GrEngine) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("regular-gr-submodules");
    for e in c.entries.iter().filter(|e| e.position == Position::Regular) {
        let Some(tp) = e.tube else { continue };
        let prev = (tp.quasi_length >= 2)
            .then(|| c.x_entry(tp.tube, tp.quasi_socle, tp.quasi_length - 1))
            .flatten()
            .map(|i| &c.entries[i].module);
        for t in engine.gr_submodules(&e.module)? {
            let pre = c.euler.defect(&dims_to_vec(t.dims())) < 0;
            let ok = pre || match prev {
                Some(x) => iso_to_indecomposable(&t, x)?,
                None => false,
            };
            s.check(ok, || {
                format!("entry {} (X_{} of tube {}): GR submodule {:?} is neither", e.id, tp.quasi_length, tp.tube, t.dims())
            });
        }
    }
    Ok(s)
}

// ------------------------------------------------------------ tame data

/// Exceptional quasi-simple count read off the orientation, when tabulated.
pub fn tabulated_b(q: &Quiver) -> Option<usize> {
    let n = q.vertex_count();
    let part = |k: usize| if k >= 2 { k } else { 0 };
    if is_type_a_tilde(q) {
        // walk the cycle counting arrows traversed forwards
        let (mut v, mut used, mut forward) = (0, vec![false; q.arrow_count()], 0);
        for _ in 0..q.arrow_count() {
            let (a, &(s, t)) = q.arrows().iter().enumerate().find(|(a, &(s, t))| !used[*a] && (s == v || t == v))?;
            used[a] = true;
            if s == v {
                forward += 1;
                v = t;
            } else {
                v = s;
            }
        }
        return Some(part(forward) + part(n - forward));
    }
    let mut degree = vec![0; n];
    for &(s, t) in q.arrows() {
        degree[s] += 1;
        degree[t] += 1;
    }
    (n == 5 && q.arrow_count() == 4 && degree.contains(&4)).then_some(6)
}

pub fn tame_invariants(c: &Catalog, budgets: &Budgets) -> Result<Vec<SuiteResult>> {
    let mut cox = SuiteResult::new("coxeter-consistency");
    let mut def = SuiteResult::new("defect-position");
    let mut tube = SuiteResult::new("tube-dimension-sum");
    let mut b = SuiteResult::new("exceptional-count");
    let mut ind = SuiteResult::new("catalog-indecomposable-distinct");
    let mut proj = SuiteResult::new("projectives-present");

    for e in &c.entries {
        let d = dims_to_vec(&e.dimv);
        if let Some(n) = ar_translate(&e.module, Direction::TauInverse, budgets)? {
            let back = c.euler.tau_dims(&dims_to_vec(n.dims()));
            cox.check(back == d, || format!("entry {}: Φ·dim τ⁻M = {back:?}, dim M = {d:?}", e.id));
        }
        let expected = match c.euler.defect(&d).signum() {
            -1 => Position::Preprojective,
            0 => Position::Regular,
            _ => Position::Preinjective,
        };
        def.check(expected == e.position, || format!("entry {} labelled {} with defect sign of {}", e.id, e.position.as_str(), expected.as_str()));
        ind.check(is_indecomposable(&e.module, budgets)?, || format!("entry {} is decomposable", e.id));
    }
    let mut by_dims: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    for e in &c.entries {
        by_dims.entry(&e.dimv).or_default().push(e.id);
    }
    for ids in by_dims.values() {
        for (k, &i) in ids.iter().enumerate() {
            for &j in &ids[k + 1..] {
                let same = iso_to_indecomposable(&c.entries[i].module, &c.entries[j].module)?;
                ind.check(!same, || format!("entries {i} and {j} are isomorphic"));
            }
        }
    }
    for t in &c.tubes {
        let mut sum = vec![0i64; c.euler.vertex_count()];
        for d in &t.quasi_simple_dims {
            for (x, y) in sum.iter_mut().zip(d) {
                *x += *y as i64;
            }
        }
        tube.check(sum == c.euler.delta, || format!("tube {} quasi-simples sum to {sum:?}", t.id));
    }
    if let Some(expected) = tabulated_b(&c.quiver) {
        let got = c.exceptional_quasi_simple_count();
        b.check(got == expected, || format!("found {got} exceptional quasi-simples, orientation predicts {expected}"));
    }
    for v in 0..c.quiver.vertex_count() {
        let p = Rep::projective(c.quiver.clone(), c.field, v)?;
        let present = c.entries.iter().any(|e| {
            e.dimv == p.dims() && e.position == Position::Preprojective && iso_to_indecomposable(&e.module, &p).unwrap_or(false)
        });
        proj.check(present || p.length() > c.bound, || format!("P({v}) missing"));
    }
    Ok(vec![cox, def, tube, b, ind, proj])
}

// --------------------------------------------------------------- segments

struct Chain {
    tube: usize,
    socle: usize,
    rank: usize,
    measures: Vec<GrMeasure>,
}

fn chains(c: &Catalog) -> Vec<Chain> {
    c.tubes
        .iter()
        .flat_map(|t| {
            (0..t.rank).map(move |s| Chain {
                tube: t.id,
                socle: s,
                rank: t.rank,
                measures: c.x_chain(t.id, s).iter().map(|&i| c.entries[i].measure.clone()).collect(),
            })
        })
        .collect()
}

/// Chains whose `X_R` already reaches `μ(H_1)`.
fn above_h1(ch: &Chain, h1: Option<&GrMeasure>) -> bool {
    match (h1, ch.measures.get(ch.rank - 1)) {
        (Some(h), Some(xr)) => xr >= h,
        _ => false,
    }
}

pub fn segment_suites(c: &Catalog, an: &Analysis) -> Vec<SuiteResult> {
    let h1 = c.h1().map(|i| c.entries[i].measure.clone());
    let chains = chains(c);
    let index: HashMap<&GrMeasure, usize> = an.universe.iter().enumerate().map(|(k, r)| (&r.measure, k)).collect();
    let record = |m: &GrMeasure| index.get(m).map(|&k| &an.universe[k]);
    let regular_places = |m: &GrMeasure| -> Vec<(usize, usize, usize)> {
        record(m)
            .map(|r| r.modules.iter().filter_map(|&i| c.entries[i].tube.map(|t| (t.tube, t.quasi_socle, t.quasi_length))).collect())
            .unwrap_or_default()
    };
    let centrals = || an.segments.iter().filter(|s| s.role == SegmentRole::Central);

    let mut startwith = SuiteResult::new("startwith-chain");
    for seg in centrals() {
        for (k, first) in seg.measures.iter().enumerate() {
            for later in seg.measures[k + 1..].iter().take_while(|m| m.top() >= first.top()) {
                startwith.check(later.starts_with(first), || format!("{later} follows {first} in a chain but does not start with it"));
            }
        }
    }

    let mut nearest = SuiteResult::new("nearest-lower-regular");
    for seg in centrals() {
        for (k, m) in seg.measures.iter().enumerate() {
            for (tube, socle, s) in regular_places(m).into_iter().filter(|p| p.2 >= 2) {
                let Some(lower) = seg.measures[..k].iter().rev().find(|l| !regular_places(l).is_empty()) else { continue };
                let want = c.x_entry(tube, socle, s - 1).map(|i| &c.entries[i].measure);
                nearest.check(want == Some(lower), || {
                    format!("nearest regular below X_{s} of tube {tube} at {m} is {lower}, not μ(X_{})", s - 1)
                });
            }
        }
    }

    let mut tails = SuiteResult::new("measure-coincidence-tails");
    let mut past = SuiteResult::new("regular-fiber-past-2r");
    for x in chains.iter().filter(|x| above_h1(x, h1.as_ref())) {
        for (i, mx) in x.measures.iter().enumerate().skip(2 * x.rank - 1) {
            let i = i + 1;
            if let Some(r) = record(mx) {
                past.check(r.only(Position::Regular), || format!("μ(X_{i}) = {mx} of tube {} shares its fiber with non-regular modules", x.tube));
            }
            for y in chains.iter().filter(|y| (y.tube, y.socle) != (x.tube, x.socle)) {
                if !y.measures.contains(mx) {
                    continue;
                }
                let same_tail = (x.rank..x.measures.len().min(y.measures.len())).all(|t| x.measures[t] == y.measures[t]);
                tails.check(x.rank == y.rank && same_tail, || {
                    format!("μ(X_{i}) of tube {} equals a measure of tube {} with different rank or tail", x.tube, y.tube)
                });
            }
        }
    }

    let mut zshape = SuiteResult::new("z-segment-shape");
    for seg in centrals().filter(|s| s.index_type == IndexType::Z) {
        let run = seg.measures.iter().take_while(|m| record(m).is_some_and(|r| r.only(Position::Preinjective))).count();
        zshape.check(run >= an.config.z_min_run, || format!("Z segment at {} has a preinjective run of {run}", seg.measures[0]));
        for m in &seg.measures {
            zshape.check(h1.as_ref().is_some_and(|h| m > h), || format!("Z segment member {m} does not exceed μ(H_1)"));
        }
    }

    let mut tail = SuiteResult::new("central-tail-single-tube");
    for seg in centrals().filter(|s| matches!(s.index_type, IndexType::N | IndexType::Z)) {
        let k = seg.measures.iter().rev().take_while(|m| record(m).is_some_and(|r| r.only(Position::Regular))).count();
        let tail_ms = &seg.measures[seg.measures.len() - k..];
        let follows = |ch: &Chain| {
            (0..ch.measures.len()).any(|t| ch.measures.len() >= t + k && ch.measures[t..t + k] == *tail_ms)
        };
        tail.check(k > 0 && chains.iter().any(follows), || format!("central segment at {} has no tail along a single tube", seg.measures[0]));
    }

    let mut takeoff = SuiteResult::new("preprojective-take-off");
    for r in an.universe.iter().filter(|r| r.has(Position::Preprojective)) {
        takeoff.check(r.partition == Partition::TakeOff, || format!("preprojective measure {} labelled {}", r.measure, r.partition.as_str()));
        if let Some(h) = &h1 {
            takeoff.check(r.measure < *h, || format!("preprojective measure {} is not below μ(H_1)", r.measure));
        }
    }
    if let Some(h) = &h1 {
        let label = record(h).map(|r| r.partition);
        takeoff.check(label == Some(Partition::Central), || format!("μ(H_1) = {h} is labelled {label:?}"));
    }

    let mut consecutive = SuiteResult::new("certified-successors-consecutive");
    for e in an.edges.iter().filter(|e| e.edge.certificate.is_theory()) {
        consecutive.check(index[&e.edge.from] + 1 == index[&e.edge.to], || format!("{} -> {} skips a measure", e.edge.from, e.edge.to));
    }
    for ch in &chains {
        let pairs = ch.measures.windows(2).enumerate();
        for (j, w) in pairs {
            let certified = ch.rank == 1 || (above_h1(ch, h1.as_ref()) && j + 1 >= 2 * ch.rank);
            if certified {
                let found = an.edges.iter().any(|e| e.edge.from == w[0] && e.edge.to == w[1] && e.edge.certificate.is_theory());
                consecutive.check(found, || format!("{} -> {} in tube {} is not a certified catalog edge", w[0], w[1], ch.tube));
            }
        }
    }

    let mut bounds = SuiteResult::new("segment-count-bounds");
    for ch in verify_main_theorem(c, an).checks {
        bounds.check(ch.holds != Some(false), || format!("{}: {} exceeds {:?}", ch.name, ch.value, ch.bound));
    }

    let mut orientation = SuiteResult::new("sink-source-pattern");
    if let Ok(r) = check_sink_source_prop(&c.quiver, an) {
        orientation.check(r.consistent, || format!("{r:?}"));
    }

    vec![startwith, nearest, tails, past, zshape, tail, takeoff, consecutive, bounds, orientation]
}

// ----------------------------------------------------------------- runner

/// Runs every suite against one catalog and its analysis.
pub fn run_all(c: &Catalog, an: &Analysis, engine: &GrEngine, cfg: &VerifyConfig) -> Result<VerifyReport> {
    type Job<'a> = Box<dyn Fn() -> Result<Vec<SuiteResult>> + Send + Sync + 'a>;
    let budgets = *engine.budgets();
    let jobs: Vec<Job> = vec![
        Box::new(|| Ok(vec![order_laws(cfg.seed, cfg.order_samples)])),
        Box::new(|| Ok(vec![prefix_between(cfg.seed, cfg.lemma_samples), extension_gap(cfg.seed, cfg.lemma_samples)])),
        Box::new(|| Ok(vec![subspace_laws(cfg.seed, cfg.rep_samples * 10, c.field)])),
        Box::new(move || representation_laws(cfg.seed, cfg.rep_samples, &c.quiver, c.field, &budgets)),
        Box::new(|| Ok(vec![gr_monotone(c, engine, cfg.lattice_length)?, witness_chain_lengths(c, engine)?])),
        Box::new(|| Ok(vec![regular_gr_submodules(c, engine)?])),
        Box::new(move || tame_invariants(c, &budgets)),
        Box::new(|| Ok(segment_suites(c, an))),
    ];
    let results: Vec<Result<Vec<SuiteResult>>> = jobs.par_iter().map(|j| j()).collect();
    let mut suites = Vec::new();
    for r in results {
        suites.extend(r?);
    }
    let all_pass = suites.iter().all(SuiteResult::passed);
    Ok(VerifyReport { quiver: c.quiver.name().into(), p: c.field.p() as u32, bound: c.bound, seed: cfg.seed, suites, all_pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;
    use crate::segments::{assemble_segments, SegmentConfig};
    use crate::tame::build_catalog_with;

    #[test]
    fn order_suites_pass() {
        assert!(order_laws(1, 5000).passed());
        let s = prefix_between(1, 500);
        assert!(s.passed() && s.checked == 500);
        let s = extension_gap(1, 500);
        assert!(s.passed() && s.checked == 500);
    }

    #[test]
    fn suites_detect_a_broken_order() {
        let mut s = SuiteResult::new("x");
        s.check(false, || "bad".into());
        assert!(!s.passed());
        assert_eq!((s.checked, s.failed), (1, 1));
    }

    #[test]
    fn tabulated_counts() {
        for (name, b) in [("kronecker", 0), ("a21", 2), ("a22_sink_source", 4), ("d4_tilde", 6)] {
            assert_eq!(tabulated_b(&preset(name).unwrap().quiver().unwrap()), Some(b), "{name}");
        }
    }

    #[test]
    fn kronecker_passes_everything() {
        let s = preset("kronecker").unwrap();
        let engine = GrEngine::default();
        let c = build_catalog_with(s.quiver().unwrap(), s.field().unwrap(), s.bound, &engine).unwrap();
        let an = assemble_segments(&c, SegmentConfig::default()).unwrap();
        let cfg = VerifyConfig { order_samples: 2000, lemma_samples: 200, rep_samples: 10, ..VerifyConfig::default() };
        let r = run_all(&c, &an, &engine, &cfg).unwrap();
        for s in &r.suites {
            assert!(s.passed(), "{}: {:?}", s.name, s.violations);
        }
        let checked = |n: &str| r.suites.iter().find(|s| s.name == n).unwrap().checked;
        assert!(checked("regular-gr-submodules") > 0);
        assert!(checked("startwith-chain") > 0);
        assert!(checked("measure-coincidence-tails") > 0);
    }
}
