//! Indecomposability, Krull-Schmidt decomposition and isomorphism tests.
//!
//! A representation is indecomposable iff its endomorphism ring is local.
//! Splittings are found with Fitting's lemma: an endomorphism that is
//! neither nilpotent nor invertible splits `M = ker f^N ⊕ im f^N`. When no
//! such element turns up among cheap candidates, locality is certified
//! exactly, either by exhibiting a nilpotent ideal of codimension one or by
//! enumerating the whole ring within the configured budget.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{FieldElem, Subspace};
use crate::rep::{hom_basis, Morphism, Rep, SubspaceTuple};

/// Enumeration caps. Exceeding one is reported, never silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest number of subspaces (or subspace tuples) enumerated at once.
    pub subspace: u64,
    /// Largest endomorphism or Hom space enumerated element by element.
    pub end: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { subspace: 1 << 20, end: 1 << 20 }
    }
}

const RANDOM_PROBES: usize = 48;
const PROBE_SEED: u64 = 0x6772_7365_6731;

enum Locality {
    Local,
    Split(Morphism),
}

fn nilpotent_or_invertible(g: &Morphism, dims: &[usize]) -> bool {
    g.maps.iter().zip(dims).all(|(m, &d)| m.pow(d as u64).is_zero()) || g.is_invertible()
}

/// Fitting power: `g^K` with `K` the largest vertex dimension.
fn fitting_power(g: &Morphism, dims: &[usize]) -> Morphism {
    let k = dims.iter().copied().max().unwrap_or(0) as u64;
    g.pow(k.max(1))
}

/// Looks for `c` with `f - c` neither nilpotent nor invertible.
fn splitter(f: &Morphism, m: &Rep) -> Option<Morphism> {
    let dims = m.dims();
    for c in m.field().elements() {
        let g = f.sub(&Morphism::scalar(m, c));
        if !nilpotent_or_invertible(&g, dims) {
            return Some(fitting_power(&g, dims));
        }
    }
    None
}

fn locality(m: &Rep, budgets: &Budgets) -> Result<Locality> {
    let end = hom_basis(m, m)?.basis;
    let d = end.len();
    if d <= 1 {
        return Ok(Locality::Local);
    }
    let field = m.field();
    let p = field.p();

    // cheap candidates: basis elements, then deterministic random combinations
    for e in &end {
        if let Some(h) = splitter(e, m) {
            return Ok(Locality::Split(h));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED ^ d as u64);
    for _ in 0..RANDOM_PROBES {
        let coeffs: Vec<FieldElem> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        let f = Morphism::combination(&end, &coeffs).unwrap();
        if let Some(h) = splitter(&f, m) {
            return Ok(Locality::Split(h));
        }
        let f2 = f.compose(&f);
        if let Some(h) = splitter(&f2, m) {
            return Ok(Locality::Split(h));
        }
    }

    // certificate: every basis element is (scalar + nilpotent) and the
    // nilpotent parts generate a nilpotent algebra, so End/J = F_p.
    let dims = m.dims();
    let mut shifted = Vec::with_capacity(d);
    let mut rational = true;
    for e in &end {
        let found = field.elements().find_map(|c| {
            let g = e.sub(&Morphism::scalar(m, c));
            g.maps.iter().zip(dims).all(|(x, &n)| x.pow(n as u64).is_zero()).then_some(g)
        });
        match found {
            Some(g) => shifted.push(g),
            None => {
                rational = false;
                break;
            }
        }
    }
    if rational && generates_nilpotent(&shifted, m) {
        return Ok(Locality::Local);
    }

    // exhaustive fallback
    let size = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if size > budgets.end {
        return Err(Error::Undecided(format!(
            "End has dimension {d} over F_{p}; {size} elements exceed the cap {}",
            budgets.end
        )));
    }
    let mut coeffs = vec![0u8; d];
    loop {
        let f = Morphism::combination(&end, &coeffs).unwrap();
        if !nilpotent_or_invertible(&f, dims) {
            return Ok(Locality::Split(fitting_power(&f, dims)));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == d {
                return Ok(Locality::Local);
            }
            coeffs[i] += 1;
            if coeffs[i] == p {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Whether the algebra generated by `gens` acts nilpotently on `m`.
fn generates_nilpotent(gens: &[Morphism], m: &Rep) -> bool {
    let mut spaces: SubspaceTuple = m.full_tuple();
    for _ in 0..=m.length() {
        if spaces.iter().all(|s| s.is_zero()) {
            return true;
        }
        let next: SubspaceTuple = (0..spaces.len())
            .map(|v| {
                let mut acc = Subspace::zero(m.field(), m.dims()[v]);
                for g in gens {
                    acc = acc.sum(&spaces[v].image_under(&g.maps[v])).unwrap();
                }
                acc
            })
            .collect();
        if next == spaces {
            return false;
        }
        spaces = next;
    }
    spaces.iter().all(|s| s.is_zero())
}

/// True iff `End(M)` is local. Budget failures surface as `Undecided`.
pub fn is_indecomposable(m: &Rep, budgets: &Budgets) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(matches!(locality(m, budgets)?, Locality::Local))
}

/// Indecomposable summands, sorted by (length, dimension vector, encoding).
pub fn decompose(m: &Rep, budgets: &Budgets) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match locality(&x, budgets)? {
            Locality::Local => out.push(x),
            Locality::Split(h) => {
                stack.push(x.subrep_unchecked(&h.kernel()));
                stack.push(x.subrep_unchecked(&h.image()));
            }
        }
    }
    sort_canonical(&mut out);
    Ok(out)
}

pub fn sort_canonical(reps: &mut [Rep]) {
    reps.sort_by(|a, b| {
        (a.length(), a.dims(), a.encode()).cmp(&(b.length(), b.dims(), b.encode()))
    });
}

/// Isomorphism test for `m` indecomposable: `m ≅ n` iff some basis element of
/// `Hom(m, n)` is invertible, since the non-units of a local ring form a subspace.
pub fn iso_to_indecomposable(m: &Rep, n: &Rep) -> Result<bool> {
    m.same_quiver(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    Ok(hom_basis(m, n)?.basis.iter().any(|f| f.is_invertible()))
}

/// Exact isomorphism test via Krull-Schmidt.
pub fn are_isomorphic(m: &Rep, n: &Rep, budgets: &Budgets) -> Result<bool> {
    m.same_quiver(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let a = decompose(m, budgets)?;
    let mut b = decompose(n, budgets)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    for x in &a {
        let mut hit = None;
        for (k, y) in b.iter().enumerate() {
            if iso_to_indecomposable(x, y)? {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) => {
                b.swap_remove(k);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
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

    fn mat(f: Field, r: usize, c: usize, d: &[i64]) -> Matrix {
        Matrix::from_data(f, r, c, d.to_vec()).unwrap()
    }

    fn h1(q: &Arc<Quiver>, a: i64, b: i64) -> Rep {
        let f = Field::two();
        Rep::new(q.clone(), f, vec![1, 1], vec![mat(f, 1, 1, &[a]), mat(f, 1, 1, &[b])]).unwrap()
    }

    /// H_2 at λ: maps identity and λ·identity + Jordan step.
    fn h2(q: &Arc<Quiver>, lambda: i64) -> Rep {
        let f = Field::two();
        Rep::new(
            q.clone(),
            f,
            vec![2, 2],
            vec![mat(f, 2, 2, &[1, 0, 0, 1]), mat(f, 2, 2, &[lambda, 1, 0, lambda])],
        )
        .unwrap()
    }

    #[test]
    fn indecomposability_examples() {
        let q = kronecker();
        let f = Field::two();
        let b = Budgets::default();
        let s2 = Rep::simple(q.clone(), f, 1);
        assert!(is_indecomposable(&s2, &b).unwrap());
        let sum = h1(&q, 1, 0).direct_sum(&s2).unwrap();
        assert!(!is_indecomposable(&sum, &b).unwrap());
        assert!(is_indecomposable(&h2(&q, 0), &b).unwrap());
        assert!(is_indecomposable(&h2(&q, 1), &b).unwrap());
        assert!(matches!(is_indecomposable(&Rep::zero(q, f), &b), Err(Error::ZeroModule)));
    }

    #[test]
    fn isomorphism_examples() {
        let q = kronecker();
        let f = Field::two();
        let b = Budgets::default();
        let m = h2(&q, 1);
        assert!(are_isomorphic(&m, &m, &b).unwrap());
        assert!(!are_isomorphic(&Rep::simple(q.clone(), f, 0), &Rep::simple(q.clone(), f, 1), &b).unwrap());
        assert!(!are_isomorphic(&h1(&q, 1, 0), &h1(&q, 1, 1), &b).unwrap());
        let g = vec![mat(f, 2, 2, &[1, 1, 0, 1]), mat(f, 2, 2, &[0, 1, 1, 0])];
        assert!(are_isomorphic(&m, &m.change_basis(&g).unwrap(), &b).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let q = kronecker();
        let f = Field::two();
        let b = Budgets::default();
        let s1 = Rep::simple(q.clone(), f, 0);
        let s2 = Rep::simple(q.clone(), f, 1);
        let parts = decompose(&s1.direct_sum(&s2).unwrap(), &b).unwrap();
        assert_eq!(parts.len(), 2);
        // canonical order compares dimension vectors lexicographically
        assert_eq!(parts[0].dims(), &[0, 1]);
        assert_eq!(parts[1].dims(), &[1, 0]);

        let m = h2(&q, 0);
        assert_eq!(decompose(&m, &b).unwrap().len(), 1);

        let h = h1(&q, 1, 1);
        let parts = decompose(&h.direct_sum(&h).unwrap(), &b).unwrap();
        assert_eq!(parts.len(), 2);
        for x in &parts {
            assert!(iso_to_indecomposable(&h, x).unwrap());
        }
    }

    #[test]
    fn non_rational_residue_field_is_still_indecomposable() {
        // dims (2,2) with maps I and a companion matrix of x^2+x+1: End = F_4
        let q = kronecker();
        let f = Field::two();
        let m = Rep::new(q, f, vec![2, 2], vec![mat(f, 2, 2, &[1, 0, 0, 1]), mat(f, 2, 2, &[0, 1, 1, 1])]).unwrap();
        assert!(is_indecomposable(&m, &Budgets::default()).unwrap());
        let tiny = Budgets { subspace: 1, end: 1 };
        assert!(matches!(is_indecomposable(&m.direct_sum(&m).unwrap(), &tiny), Ok(false) | Err(Error::Undecided(_))));
    }
}
