//! Brute-force Gabriel-Roiter measure, written against element sets only.
//!
//! Subspaces are explicit sets of vectors, submodules are tuples of such sets
//! closed under the arrow maps, indecomposability is a search for a pair of
//! complementary submodules, and the measure is the maximum over every chain
//! of indecomposable submodules.

use std::cmp::Ordering;
use std::collections::BTreeSet;

pub type Vector = Vec<u8>;
pub type Space = BTreeSet<Vector>;

/// A module as plain data: `maps[a]` is a `dims[t] × dims[s]` row-major table.
pub struct PlainModule {
    pub p: u8,
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
    pub maps: Vec<Vec<Vec<u8>>>,
}

impl PlainModule {
    pub fn from_rep(m: &grseg_core::Rep) -> Self {
        let maps = (0..m.quiver().arrow_count())
            .map(|a| {
                let x = m.map(a);
                (0..x.rows()).map(|r| (0..x.cols()).map(|c| x.get(r, c)).collect()).collect()
            })
            .collect();
        PlainModule { p: m.field().p(), dims: m.dims().to_vec(), arrows: m.quiver().arrows().to_vec(), maps }
    }
}

fn all_vectors(p: u8, n: usize) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..p).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn add(p: u8, a: &[u8], b: &[u8]) -> Vector {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

fn scale(p: u8, c: u8, a: &[u8]) -> Vector {
    a.iter().map(|x| (c as u16 * *x as u16 % p as u16) as u8).collect()
}

fn close(p: u8, mut s: Space) -> Space {
    loop {
        let mut next = s.clone();
        for a in &s {
            for b in &s {
                next.insert(add(p, a, b));
            }
            for c in 0..p {
                next.insert(scale(p, c, a));
            }
        }
        if next.len() == s.len() {
            return s;
        }
        s = next;
    }
}

/// Every subspace of `F_p^n` as an element set.
pub fn subspaces(p: u8, n: usize) -> Vec<Space> {
    let zero: Space = [vec![0; n]].into_iter().collect();
    let vectors = all_vectors(p, n);
    let mut found: BTreeSet<Space> = [zero.clone()].into_iter().collect();
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let mut t = s.clone();
            t.insert(v.clone());
            let t = close(p, t);
            if found.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    found.into_iter().collect()
}

fn apply(p: u8, m: &[Vec<u8>], v: &[u8]) -> Vector {
    m.iter().map(|row| (row.iter().zip(v).map(|(a, b)| *a as u32 * *b as u32).sum::<u32>() % p as u32) as u8).collect()
}

fn log_dim(p: u8, s: &Space) -> usize {
    let mut n = 0;
    let mut k = 1usize;
    while k < s.len() {
        k *= p as usize;
        n += 1;
    }
    n
}

#[derive(Clone, PartialEq, Eq)]
pub struct Sub {
    pub spaces: Vec<Space>,
    pub length: usize,
}

/// All submodules, by filtering the full product of vertex subspaces.
pub fn submodules(m: &PlainModule) -> Vec<Sub> {
    let per_vertex: Vec<Vec<Space>> = m.dims.iter().map(|&d| subspaces(m.p, d)).collect();
    let mut tuples: Vec<Vec<Space>> = vec![vec![]];
    for choices in &per_vertex {
        tuples = tuples
            .into_iter()
            .flat_map(|t| choices.iter().map(move |c| [t.clone(), vec![c.clone()]].concat()))
            .collect();
    }
    tuples
        .into_iter()
        .filter(|t| {
            m.arrows.iter().enumerate().all(|(a, &(s, tg))| t[s].iter().all(|v| t[tg].contains(&apply(m.p, &m.maps[a], v))))
        })
        .map(|spaces| {
            let length = spaces.iter().map(|s| log_dim(m.p, s)).sum();
            Sub { spaces, length }
        })
        .collect()
}

fn contained(a: &Sub, b: &Sub) -> bool {
    a.spaces.iter().zip(&b.spaces).all(|(x, y)| x.is_subset(y))
}

fn meet_is_zero(a: &Sub, b: &Sub) -> bool {
    a.spaces.iter().zip(&b.spaces).all(|(x, y)| x.intersection(y).count() == 1)
}

/// Whether `u` is a nonzero module with no decomposition `u = a ⊕ b`.
pub fn indecomposable(u: &Sub, all: &[Sub]) -> bool {
    if u.length == 0 {
        return false;
    }
    let inside: Vec<&Sub> = all.iter().filter(|s| s.length > 0 && s.length < u.length && contained(s, u)).collect();
    !inside
        .iter()
        .any(|a| inside.iter().any(|b| a.length + b.length == u.length && meet_is_zero(a, b)))
}

/// The order on finite sets: the smallest element of the symmetric
/// difference decides, and a proper prefix is smaller.
pub fn compare_sets(a: &[u32], b: &[u32]) -> Ordering {
    let sa: BTreeSet<u32> = a.iter().copied().collect();
    let sb: BTreeSet<u32> = b.iter().copied().collect();
    match sa.symmetric_difference(&sb).next() {
        None => Ordering::Equal,
        Some(x) if sa.contains(x) => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

/// Maximum over all chains `U_1 ⊂ … ⊂ U_k` of indecomposable submodules of
/// the set of lengths `{|U_1|, …, |U_k|}`.
pub fn brute_force_measure(m: &PlainModule) -> Option<Vec<u32>> {
    let all = submodules(m);
    let ind: Vec<&Sub> = all.iter().filter(|u| indecomposable(u, &all)).collect();
    let mut best: Option<Vec<u32>> = None;
    let mut stack: Vec<Vec<usize>> = (0..ind.len()).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let top = ind[*chain.last().unwrap()];
        let lengths: Vec<u32> = chain.iter().map(|&i| ind[i].length as u32).collect();
        if best.as_ref().is_none_or(|b| compare_sets(&lengths, b) == Ordering::Greater) {
            best = Some(lengths);
        }
        for (j, v) in ind.iter().enumerate() {
            if v.length > top.length && contained(top, v) {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    best
}
