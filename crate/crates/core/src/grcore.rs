//! Gabriel-Roiter measures of concrete representations.
//!
//! `μ(M)` is computed by memoised recursion over maximal submodules: every
//! indecomposable submodule of `M` other than `M` itself sits inside a
//! maximal one, and `μ` is monotone under inclusion, so
//!
//! * `μ(M) = max_U μ(U) ∪ {|M|}` for `M` indecomposable,
//! * `μ(M) = max_U μ(U)` for `M` decomposable,
//!
//! with `U` ranging over the maximal submodules. The memo is keyed by
//! isomorphism class: indecomposables are matched with the exact
//! local-endomorphism-ring test, decomposables by their multiset of
//! indecomposable summand classes.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Mutex;

use crate::decomp::{decompose, is_indecomposable, iso_to_indecomposable, Budgets};
use crate::error::{Error, Result};
use crate::linalg::{enumerate_subspaces, subspace_count, Subspace};
use crate::measure::GrMeasure;
use crate::rep::{projective_points, Rep, SubspaceTuple};

/// One submodule in a lattice.
#[derive(Clone, Debug)]
pub struct LatticeEntry {
    pub spaces: SubspaceTuple,
    pub length: usize,
    pub indecomposable: bool,
}

/// Every subrepresentation of `parent`, each exactly once.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    pub parent: Rep,
    pub entries: Vec<LatticeEntry>,
}

impl SubmoduleLattice {
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// All submodules, generated from the cyclic ones (closures of single
/// vectors) and saturated under pairwise sums.
pub fn submodules(m: &Rep, budgets: &Budgets) -> Result<SubmoduleLattice> {
    let field = m.field();
    for (v, &d) in m.dims().iter().enumerate() {
        let count = subspace_count(d, field.p() as u64);
        if count > budgets.subspace {
            return Err(Error::Budget {
                what: format!("subspaces at vertex {v} (dimension {d})"),
                needed: count,
                cap: budgets.subspace,
            });
        }
    }
    let mut seen: HashSet<SubspaceTuple> = HashSet::new();
    let mut all: Vec<SubspaceTuple> = Vec::new();
    let push = |t: SubspaceTuple, seen: &mut HashSet<SubspaceTuple>, all: &mut Vec<SubspaceTuple>| {
        if seen.insert(t.clone()) {
            all.push(t);
        }
    };
    push(m.zero_tuple(), &mut seen, &mut all);
    let mut cyclic = Vec::new();
    for v in 0..m.dims().len() {
        for x in projective_points(&Subspace::full(field, m.dims()[v])) {
            let mut gens = vec![Vec::new(); m.dims().len()];
            gens[v].push(x);
            let t = m.generated_by(&gens);
            if !seen.contains(&t) {
                cyclic.push(t.clone());
            }
            push(t, &mut seen, &mut all);
        }
    }
    // saturate: sums of an existing entry with a cyclic one reach every sum
    let mut i = 0;
    while i < all.len() {
        for c in &cyclic {
            let s: SubspaceTuple = all[i].iter().zip(c).map(|(a, b)| a.sum(b).unwrap()).collect();
            if !seen.contains(&s) {
                if all.len() as u64 >= budgets.subspace {
                    return Err(Error::Budget {
                        what: "submodule lattice".into(),
                        needed: all.len() as u64 + 1,
                        cap: budgets.subspace,
                    });
                }
                push(s, &mut seen, &mut all);
            }
        }
        i += 1;
    }
    let mut entries = Vec::with_capacity(all.len());
    for spaces in all {
        let length: usize = spaces.iter().map(|s| s.dim()).sum();
        let indecomposable = length > 0 && is_indecomposable(&m.subrep_unchecked(&spaces), budgets)?;
        entries.push(LatticeEntry { spaces, length, indecomposable });
    }
    entries.sort_by_key(|e| e.length);
    Ok(SubmoduleLattice { parent: m.clone(), entries })
}

/// Submodule tuples enumerated vertex by vertex; used for cross-checks.
pub fn submodules_by_product(m: &Rep, budgets: &Budgets) -> Result<Vec<SubspaceTuple>> {
    let per_vertex: Vec<Vec<Subspace>> = m
        .dims()
        .iter()
        .map(|&d| enumerate_subspaces(d, m.field(), budgets.subspace))
        .collect::<Result<_>>()?;
    let total = per_vertex.iter().fold(1u64, |a, v| a.saturating_mul(v.len() as u64));
    if total > budgets.subspace {
        return Err(Error::Budget { what: "subspace tuples".into(), needed: total, cap: budgets.subspace });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        let t: SubspaceTuple = idx.iter().enumerate().map(|(v, &k)| per_vertex[v][k].clone()).collect();
        if m.closure_violation(&t).is_none() {
            out.push(t);
        }
        let mut v = 0;
        loop {
            if v == idx.len() {
                return Ok(out);
            }
            idx[v] += 1;
            if idx[v] == per_vertex[v].len() {
                idx[v] = 0;
                v += 1;
            } else {
                break;
            }
        }
    }
}

/// Result of a full GR computation on one module.
#[derive(Clone, Debug)]
pub struct GrResult {
    pub measure: GrMeasure,
    /// Subspace tuples `M_1 ⊂ … ⊂ M_t = M` of indecomposables whose lengths
    /// are exactly the elements of `measure`.
    pub witness_chain: Vec<SubspaceTuple>,
    /// One representative per isomorphism class of GR submodule (empty for
    /// simple or decomposable input).
    pub gr_submodules: Vec<Rep>,
}

struct ClassEntry {
    rep: Rep,
    measure: Option<GrMeasure>,
    gr_subs: Option<Vec<usize>>,
}

#[derive(Default)]
struct Memo {
    classes: Vec<ClassEntry>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
    composite: HashMap<Vec<usize>, GrMeasure>,
    composite_hits: HashMap<Vec<usize>, Vec<usize>>,
}

/// Memoised GR machinery shared across all modules of one quiver.
///
/// Safe to use from several threads; answers do not depend on the order in
/// which classes enter the memo.
pub struct GrEngine {
    budgets: Budgets,
    memo: Mutex<Memo>,
}

impl GrEngine {
    pub fn new(budgets: Budgets) -> Self {
        GrEngine { budgets, memo: Mutex::new(Memo::default()) }
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    /// Number of indecomposable isomorphism classes seen so far.
    pub fn class_count(&self) -> usize {
        self.memo.lock().unwrap().classes.len()
    }

    fn identify(&self, ind: &Rep) -> Result<usize> {
        let (snapshot, len): (Vec<(usize, Rep)>, usize) = {
            let memo = self.memo.lock().unwrap();
            let ids = memo.buckets.get(ind.dims()).cloned().unwrap_or_default();
            (ids.iter().map(|&i| (i, memo.classes[i].rep.clone())).collect(), memo.classes.len())
        };
        for (id, r) in &snapshot {
            if iso_to_indecomposable(ind, r)? {
                return Ok(*id);
            }
        }
        let mut memo = self.memo.lock().unwrap();
        // classes added while the lock was released
        let fresh: Vec<(usize, Rep)> = memo
            .buckets
            .get(ind.dims())
            .map(|ids| ids.iter().filter(|&&i| i >= len).map(|&i| (i, memo.classes[i].rep.clone())).collect())
            .unwrap_or_default();
        for (id, r) in &fresh {
            if iso_to_indecomposable(ind, r)? {
                return Ok(*id);
            }
        }
        let id = memo.classes.len();
        memo.classes.push(ClassEntry { rep: ind.clone(), measure: None, gr_subs: None });
        memo.buckets.entry(ind.dims().to_vec()).or_default().push(id);
        Ok(id)
    }

    /// Sorted multiset of indecomposable summand classes.
    fn key_of(&self, m: &Rep) -> Result<Vec<usize>> {
        let mut key = decompose(m, &self.budgets)?
            .iter()
            .map(|x| self.identify(x))
            .collect::<Result<Vec<_>>>()?;
        key.sort_unstable();
        Ok(key)
    }

    fn class_rep(&self, id: usize) -> Rep {
        self.memo.lock().unwrap().classes[id].rep.clone()
    }

    fn class_measure(&self, id: usize) -> Result<GrMeasure> {
        if let Some(mu) = &self.memo.lock().unwrap().classes[id].measure {
            return Ok(mu.clone());
        }
        let rep = self.class_rep(id);
        let best = self.max_over_maximal(&rep)?;
        let mu = GrMeasure::extend_opt(best.as_ref(), rep.length() as u32)?;
        self.memo.lock().unwrap().classes[id].measure = Some(mu.clone());
        Ok(mu)
    }

    fn max_over_maximal(&self, m: &Rep) -> Result<Option<GrMeasure>> {
        let mut best: Option<GrMeasure> = None;
        for u in m.maximal_submodules() {
            let mu = self.module_measure(&m.subrep_unchecked(&u))?;
            if mu > best {
                best = mu;
            }
        }
        Ok(best)
    }

    /// `μ` of an arbitrary module; `None` for the zero module.
    fn module_measure(&self, m: &Rep) -> Result<Option<GrMeasure>> {
        if m.is_zero() {
            return Ok(None);
        }
        let key = self.key_of(m)?;
        if key.len() == 1 {
            return self.class_measure(key[0]).map(Some);
        }
        if let Some(mu) = self.memo.lock().unwrap().composite.get(&key) {
            return Ok(Some(mu.clone()));
        }
        let mu = self.max_over_maximal(m)?.expect("nonzero module has an indecomposable submodule");
        self.memo.lock().unwrap().composite.insert(key, mu.clone());
        Ok(Some(mu))
    }

    /// Gabriel-Roiter measure of a nonzero module.
    pub fn measure(&self, m: &Rep) -> Result<GrMeasure> {
        self.module_measure(m)?.ok_or(Error::ZeroModule)
    }

    /// Classes of indecomposable submodules `T ⊆ m` with `μ(T) = target`,
    /// given `μ(m) = target`.
    fn hits_within(&self, m: &Rep, target: &GrMeasure) -> Result<Vec<usize>> {
        let key = self.key_of(m)?;
        if key.len() == 1 {
            return Ok(key);
        }
        if let Some(h) = self.memo.lock().unwrap().composite_hits.get(&key) {
            return Ok(h.clone());
        }
        let mut set = BTreeSet::new();
        for u in m.maximal_submodules() {
            let sub = m.subrep_unchecked(&u);
            if self.module_measure(&sub)?.as_ref() == Some(target) {
                set.extend(self.hits_within(&sub, target)?);
            }
        }
        let hits: Vec<usize> = set.into_iter().collect();
        self.memo.lock().unwrap().composite_hits.insert(key, hits.clone());
        Ok(hits)
    }

    fn class_gr_subs(&self, id: usize) -> Result<Vec<usize>> {
        if let Some(g) = &self.memo.lock().unwrap().classes[id].gr_subs {
            return Ok(g.clone());
        }
        let rep = self.class_rep(id);
        let mu = self.class_measure(id)?;
        let mut set = BTreeSet::new();
        if let Some(target) = mu.without_top() {
            for u in rep.maximal_submodules() {
                let sub = rep.subrep_unchecked(&u);
                if self.module_measure(&sub)?.as_ref() == Some(&target) {
                    set.extend(self.hits_within(&sub, &target)?);
                }
            }
        }
        let subs: Vec<usize> = set.into_iter().collect();
        self.memo.lock().unwrap().classes[id].gr_subs = Some(subs.clone());
        Ok(subs)
    }

    fn require_indecomposable(&self, m: &Rep) -> Result<usize> {
        if m.is_zero() {
            return Err(Error::ZeroModule);
        }
        let key = self.key_of(m)?;
        if key.len() != 1 {
            return Err(Error::Decomposable);
        }
        Ok(key[0])
    }

    /// One representative per isomorphism class of GR submodules of an
    /// indecomposable module, in canonical order.
    pub fn gr_submodules(&self, m: &Rep) -> Result<Vec<Rep>> {
        let id = self.require_indecomposable(m)?;
        let mut reps: Vec<Rep> = self.class_gr_subs(id)?.into_iter().map(|i| self.class_rep(i)).collect();
        crate::decomp::sort_canonical(&mut reps);
        Ok(reps)
    }

    /// Tuple (in `m`'s coordinates) of an indecomposable submodule with
    /// measure `target`, given `μ(m) = target`.
    fn find_within(&self, m: &Rep, target: &GrMeasure) -> Result<SubspaceTuple> {
        if self.key_of(m)?.len() == 1 {
            return Ok(m.full_tuple());
        }
        for u in m.maximal_submodules() {
            let sub = m.subrep_unchecked(&u);
            if self.module_measure(&sub)?.as_ref() == Some(target) {
                let inner = self.find_within(&sub, target)?;
                return Ok(Rep::compose_tuple(&u, &inner));
            }
        }
        Err(Error::Construction("measure not realised by any maximal submodule".into()))
    }

    /// A GR submodule of indecomposable `m` as a tuple in `m`'s coordinates.
    fn gr_step(&self, m: &Rep, target: &GrMeasure) -> Result<SubspaceTuple> {
        for u in m.maximal_submodules() {
            let sub = m.subrep_unchecked(&u);
            if self.module_measure(&sub)?.as_ref() == Some(target) {
                let inner = self.find_within(&sub, target)?;
                return Ok(Rep::compose_tuple(&u, &inner));
            }
        }
        Err(Error::Construction("GR submodule not found".into()))
    }

    /// Chain `M_1 ⊂ … ⊂ M_t = m` of GR inclusions for indecomposable `m`.
    fn chain_tuples(&self, m: &Rep) -> Result<Vec<SubspaceTuple>> {
        let mut tuples = vec![m.full_tuple()];
        let mut cur = m.clone();
        loop {
            let mu = self.measure(&cur)?;
            let Some(target) = mu.without_top() else { break };
            let inner = self.gr_step(&cur, &target)?;
            let t = Rep::compose_tuple(tuples.last().unwrap(), &inner);
            cur = m.subrep_unchecked(&t);
            tuples.push(t);
        }
        tuples.reverse();
        Ok(tuples)
    }

    /// Measure, a witness chain and the GR submodule classes.
    pub fn gr_measure(&self, m: &Rep) -> Result<GrResult> {
        let measure = self.measure(m)?;
        let key = self.key_of(m)?;
        if key.len() == 1 {
            return Ok(GrResult {
                witness_chain: self.chain_tuples(m)?,
                gr_submodules: self.gr_submodules(m)?,
                measure,
            });
        }
        let inner = self.find_within(m, &measure)?;
        let n = m.subrep_unchecked(&inner);
        let chain = self
            .chain_tuples(&n)?
            .iter()
            .map(|t| Rep::compose_tuple(&inner, t))
            .collect();
        Ok(GrResult { measure, witness_chain: chain, gr_submodules: vec![] })
    }

    /// GR filtration of an indecomposable module, smallest term first.
    pub fn gr_filtration(&self, m: &Rep) -> Result<Vec<Rep>> {
        self.require_indecomposable(m)?;
        Ok(self.chain_tuples(m)?.iter().map(|t| m.subrep_unchecked(t)).collect())
    }

    /// Whether `μ(m)` is `μ(t)` followed by `|m|`.
    pub fn is_gr_pair(&self, t: &Rep, m: &Rep) -> Result<bool> {
        let mt = self.measure(t)?;
        Ok(self.measure(m)?.without_top().as_ref() == Some(&mt))
    }
}

impl Default for GrEngine {
    fn default() -> Self {
        GrEngine::new(Budgets::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Field, Matrix};
    use crate::quiver::Quiver;
    use std::sync::Arc;

    fn kronecker() -> Arc<Quiver> {
        Arc::new(Quiver::new("kronecker", 2, vec![(0, 1), (0, 1)]).unwrap())
    }

    fn mat(r: usize, c: usize, d: &[i64]) -> Matrix {
        Matrix::from_data(Field::two(), r, c, d.to_vec()).unwrap()
    }

    fn h1(q: &Arc<Quiver>) -> Rep {
        Rep::new(q.clone(), Field::two(), vec![1, 1], vec![mat(1, 1, &[1]), mat(1, 1, &[0])]).unwrap()
    }

    fn h2(q: &Arc<Quiver>) -> Rep {
        Rep::new(q.clone(), Field::two(), vec![2, 2], vec![mat(2, 2, &[1, 0, 0, 1]), mat(2, 2, &[0, 1, 0, 0])]).unwrap()
    }

    fn m(v: &[u32]) -> GrMeasure {
        GrMeasure::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lattice_examples() {
        let q = kronecker();
        let b = Budgets::default();
        let s1 = Rep::simple(q.clone(), Field::two(), 0);
        assert_eq!(submodules(&s1, &b).unwrap().len(), 2);
        assert_eq!(submodules(&h1(&q), &b).unwrap().len(), 3);
        // P(source) = (1,2): zero, three lines and the plane at the sink, and the whole
        let p = Rep::projective(q.clone(), Field::two(), 0).unwrap();
        assert_eq!(submodules(&p, &b).unwrap().len(), 6);
        assert_eq!(submodules_by_product(&p, &b).unwrap().len(), 6);
    }

    #[test]
    fn lattice_matches_product_enumeration() {
        let q = kronecker();
        let b = Budgets::default();
        for x in [h2(&q), h1(&q).direct_sum(&h2(&q)).unwrap()] {
            let lat: HashSet<SubspaceTuple> = submodules(&x, &b).unwrap().entries.into_iter().map(|e| e.spaces).collect();
            let prod: HashSet<SubspaceTuple> = submodules_by_product(&x, &b).unwrap().into_iter().collect();
            assert_eq!(lat, prod);
        }
    }

    #[test]
    fn kronecker_measures() {
        let q = kronecker();
        let e = GrEngine::default();
        let f = Field::two();
        assert_eq!(e.measure(&Rep::simple(q.clone(), f, 0)).unwrap(), m(&[1]));
        assert_eq!(e.measure(&Rep::simple(q.clone(), f, 1)).unwrap(), m(&[1]));
        assert_eq!(e.measure(&h1(&q)).unwrap(), m(&[1, 2]));
        let p = Rep::projective(q.clone(), f, 0).unwrap();
        assert_eq!(e.measure(&p).unwrap(), m(&[1, 3]));
        assert_eq!(e.measure(&h2(&q)).unwrap(), m(&[1, 2, 4]));
        assert!(matches!(e.measure(&Rep::zero(q, f)), Err(Error::ZeroModule)));
    }

    #[test]
    fn gr_submodules_and_filtrations() {
        let q = kronecker();
        let e = GrEngine::default();
        let f = Field::two();
        let subs = e.gr_submodules(&h2(&q)).unwrap();
        assert_eq!(subs.len(), 1);
        assert!(iso_to_indecomposable(&subs[0], &h1(&q)).unwrap());
        assert!(e.gr_submodules(&Rep::simple(q.clone(), f, 1)).unwrap().is_empty());
        let p = Rep::projective(q.clone(), f, 0).unwrap();
        let subs = e.gr_submodules(&p).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].dims(), &[0, 1]);

        let filt = e.gr_filtration(&h2(&q)).unwrap();
        assert_eq!(filt.iter().map(|x| x.length()).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(filt[0].dims(), &[0, 1]);
        assert!(iso_to_indecomposable(&filt[1], &h1(&q)).unwrap());
        let filt = e.gr_filtration(&p).unwrap();
        assert_eq!(filt.iter().map(|x| x.dims().to_vec()).collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 2]]);
        assert!(matches!(e.gr_filtration(&h1(&q).direct_sum(&h1(&q)).unwrap()), Err(Error::Decomposable)));
    }

    #[test]
    fn witness_chain_lengths_match_measure() {
        let q = kronecker();
        let e = GrEngine::default();
        let x = h2(&q).direct_sum(&Rep::projective(q.clone(), Field::two(), 0).unwrap()).unwrap();
        let r = e.gr_measure(&x).unwrap();
        assert_eq!(r.measure, m(&[1, 2, 4]));
        let lens: Vec<u32> = r.witness_chain.iter().map(|t| t.iter().map(|s| s.dim() as u32).sum()).collect();
        assert_eq!(lens, r.measure.elements());
        for t in &r.witness_chain {
            assert!(is_indecomposable(&x.subrep(t).unwrap(), e.budgets()).unwrap());
        }
    }
}
