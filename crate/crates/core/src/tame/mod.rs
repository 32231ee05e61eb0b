//! Auslander-Reiten machinery for tame acyclic quivers.
//!
//! Dimension vectors are column vectors. With `E = I − A` (`A` the arrow
//! count matrix) the Euler form is `⟨d, e⟩ = d·E·eᵀ` and the Coxeter matrix
//! is `Φ = −E⁻¹Eᵀ`, so that `dim τM = Φ·dim M` for non-projective
//! indecomposable `M`.

mod catalog;
mod rational;

pub use catalog::{
    build_catalog, build_catalog_with, parse_catalog_csv, Catalog, CatalogEntry, CatalogRow, CatalogJson, EntryJson, OrbitPlace, Position, Tube, TubePlace,
};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::decomp::{is_indecomposable, iso_to_indecomposable, Budgets};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::quiver::Quiver;
use crate::rep::Rep;

use rational::radical_generator;

/// Integer forms attached to a tame quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerData {
    pub euler_matrix: Vec<Vec<i64>>,
    pub coxeter_matrix: Vec<Vec<i64>>,
    pub coxeter_inverse: Vec<Vec<i64>>,
    pub delta: Vec<i64>,
    /// `+1` or `−1`, chosen so that projectives have negative defect.
    pub defect_sign: i64,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Apply an integer matrix to a column vector.
pub fn apply(m: &[Vec<i64>], d: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum()).collect()
}

pub fn dims_to_vec(d: &[usize]) -> Vec<i64> {
    d.iter().map(|&x| x as i64).collect()
}

/// Euler, Coxeter and null-root data; rejects quivers that are not tame.
pub fn euler_data(q: &Quiver) -> Result<EulerData> {
    if !q.is_acyclic() {
        return Err(Error::NotTame("oriented cycles are not supported".into()));
    }
    let n = q.vertex_count();
    let a = q.adjacency();
    let e: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j) - a[i][j]).collect()).collect();
    // A is nilpotent, so E⁻¹ = Σ Aᵏ
    let mut inv = identity(n);
    let mut pow = identity(n);
    for _ in 1..n {
        pow = mat_mul(&pow, &a);
        for i in 0..n {
            for j in 0..n {
                inv[i][j] += pow[i][j];
            }
        }
    }
    let et = transpose(&e);
    let coxeter: Vec<Vec<i64>> = mat_mul(&inv, &et).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    let coxeter_inverse: Vec<Vec<i64>> =
        mat_mul(&transpose(&inv), &e).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    let sym: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| e[i][j] + e[j][i]).collect()).collect();
    let delta = radical_generator(&sym).ok_or_else(|| {
        Error::NotTame(format!("{}: symmetrised Euler form has no positive one-dimensional radical", q.name()))
    })?;
    let mut data = EulerData { euler_matrix: e, coxeter_matrix: coxeter, coxeter_inverse, delta, defect_sign: 1 };
    let field = crate::linalg::Field::two();
    let arc = Arc::new(q.clone());
    let raw: Vec<i64> = (0..n)
        .map(|v| Rep::projective(arc.clone(), field, v).map(|p| data.euler(&data.delta, &dims_to_vec(p.dims()))))
        .collect::<Result<_>>()?;
    if raw.iter().all(|&x| x > 0) {
        data.defect_sign = -1;
    } else if !raw.iter().all(|&x| x < 0) {
        return Err(Error::NotTame("projective defects do not share a sign".into()));
    }
    Ok(data)
}

impl EulerData {
    pub fn vertex_count(&self) -> usize {
        self.delta.len()
    }

    pub fn euler(&self, d: &[i64], e: &[i64]) -> i64 {
        let n = d.len();
        (0..n).map(|i| (0..n).map(|j| d[i] * self.euler_matrix[i][j] * e[j]).sum::<i64>()).sum()
    }

    pub fn defect(&self, d: &[i64]) -> i64 {
        self.defect_sign * self.euler(&self.delta, d)
    }

    pub fn delta_length(&self) -> usize {
        self.delta.iter().sum::<i64>() as usize
    }

    /// `dim τM` predicted from `dim M`.
    pub fn tau_dims(&self, d: &[i64]) -> Vec<i64> {
        apply(&self.coxeter_matrix, d)
    }

    /// `dim τ⁻M` predicted from `dim M`.
    pub fn tau_inv_dims(&self, d: &[i64]) -> Vec<i64> {
        apply(&self.coxeter_inverse, d)
    }
}

/// `defect` as a free function over Euler data.
pub fn defect(e: &EulerData, d: &[i64]) -> i64 {
    e.defect(d)
}

/// BGP reflection at a sink (`σ⁺`) or source (`σ⁻`) of the module's quiver.
/// The result lives on the quiver with the arrows at `v` reversed.
pub fn reflect(m: &Rep, v: usize) -> Result<Rep> {
    let q = m.quiver();
    if v >= q.vertex_count() {
        return Err(Error::NotSinkOrSource { vertex: v });
    }
    let field = m.field();
    let new_q = Arc::new(q.reflected_at(v));
    let mut dims = m.dims().to_vec();
    let mut maps = m.maps().to_vec();
    if q.is_sink(v) && !q.arrows_into(v).is_empty() {
        let incoming = q.arrows_into(v);
        let mut phi = Matrix::zeros(field, m.dims()[v], 0);
        let mut offsets = Vec::new();
        for &a in &incoming {
            offsets.push(phi.cols());
            phi = phi.hstack(m.map(a));
        }
        let kernel = phi.nullspace();
        let r = kernel.rows();
        dims[v] = r;
        let kt = kernel.transpose();
        for (k, &a) in incoming.iter().enumerate() {
            let s = q.source(a);
            maps[a] = kt.row_block(offsets[k], m.dims()[s]);
        }
        if r == 0 {
            for &a in &incoming {
                maps[a] = Matrix::zeros(field, m.dims()[q.source(a)], 0);
            }
        }
    } else if q.is_source(v) && !q.arrows_out_of(v).is_empty() {
        let outgoing = q.arrows_out_of(v);
        let mut psi = Matrix::zeros(field, 0, m.dims()[v]);
        let mut offsets = Vec::new();
        for &a in &outgoing {
            offsets.push(psi.rows());
            psi = psi.vstack(m.map(a));
        }
        let image = if psi.rows() == 0 || psi.cols() == 0 {
            Subspace::zero(field, psi.rows())
        } else {
            Subspace::span(&psi.transpose())
        };
        let quot = image.quotient_map();
        dims[v] = quot.rows();
        for (k, &a) in outgoing.iter().enumerate() {
            let t = q.target(a);
            maps[a] = quot.col_block(offsets[k], m.dims()[t]);
        }
    } else {
        return Err(Error::NotSinkOrSource { vertex: v });
    }
    Rep::new(new_q, field, dims, maps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Tau,
    TauInverse,
}

fn coxeter_functor(m: &Rep, dir: Direction) -> Result<Rep> {
    let original = m.quiver().clone();
    let order = original
        .sink_ordering()
        .ok_or_else(|| Error::NotTame("oriented cycles are not supported".into()))?;
    let mut cur = m.clone();
    match dir {
        Direction::Tau => {
            for &v in &order {
                cur = reflect(&cur, v)?;
            }
        }
        Direction::TauInverse => {
            for &v in order.iter().rev() {
                cur = reflect(&cur, v)?;
            }
        }
    }
    cur.with_quiver(original)
}

/// AR translate of an indecomposable module; `None` when it vanishes
/// (projective for `τ`, injective for `τ⁻`).
pub fn ar_translate(m: &Rep, dir: Direction, budgets: &Budgets) -> Result<Option<Rep>> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    if !is_indecomposable(m, budgets)? {
        return Err(Error::Decomposable);
    }
    let r = coxeter_functor(m, dir)?;
    Ok((!r.is_zero()).then_some(r))
}

/// Whether `x` is regular quasi-simple: indecomposable, defect zero, and no
/// proper nonzero submodule of defect zero.
pub fn is_quasi_simple(x: &Rep, e: &EulerData, budgets: &Budgets) -> Result<bool> {
    if x.is_zero() || e.defect(&dims_to_vec(x.dims())) != 0 || !is_indecomposable(x, budgets)? {
        return Ok(false);
    }
    let lattice = crate::grcore::submodules(x, budgets)?;
    let total = x.length();
    Ok(lattice.entries.iter().all(|u| {
        if u.length == 0 || u.length == total {
            return true;
        }
        let d: Vec<i64> = u.spaces.iter().map(|s| s.dim() as i64).collect();
        e.defect(&d) != 0
    }))
}

/// The τ⁻-orbit `X, τ⁻X, …, τ^{-(R−1)}X` of a regular quasi-simple.
pub fn tau_orbit(x: &Rep, e: &EulerData, budgets: &Budgets) -> Result<Vec<Rep>> {
    if !is_quasi_simple(x, e, budgets)? {
        return Err(Error::NotQuasiSimple);
    }
    let mut orbit = vec![x.clone()];
    let bound = 4 * e.delta_length() + 4;
    loop {
        let next = coxeter_functor(orbit.last().unwrap(), Direction::TauInverse)?;
        if next.dims() == x.dims() && iso_to_indecomposable(&next, x)? {
            return Ok(orbit);
        }
        if orbit.len() > bound {
            return Err(Error::Construction("τ-orbit of a quasi-simple does not close".into()));
        }
        orbit.push(next);
    }
}

/// Rank `R_X` of the tube of a regular quasi-simple.
pub fn rank(x: &Rep, e: &EulerData, budgets: &Budgets) -> Result<usize> {
    Ok(tau_orbit(x, e, budgets)?.len())
}

/// Extension data for `Ext¹(n, m)`: a basis of cocycles `(ξ_a)` whose
/// classes span the extension space.
pub fn ext_classes(n: &Rep, m: &Rep) -> Result<Vec<Vec<Matrix>>> {
    n.same_quiver(m)?;
    let q = m.quiver().clone();
    let f = m.field();
    let dn = n.dims();
    let dm = m.dims();
    // layout of ⊕_a Hom(N_s, M_t), row-major per arrow
    let mut off = Vec::new();
    let mut total = 0;
    for &(s, t) in q.arrows() {
        off.push(total);
        total += dm[t] * dn[s];
    }
    let mut images: Vec<Vec<u8>> = Vec::new();
    for v in 0..q.vertex_count() {
        for i in 0..dm[v] {
            for j in 0..dn[v] {
                let mut fv = Matrix::zeros(f, dm[v], dn[v]);
                fv.set(i, j, 1);
                let mut img = vec![0u8; total];
                for (a, &(s, t)) in q.arrows().iter().enumerate() {
                    let mut block = Matrix::zeros(f, dm[t], dn[s]);
                    if s == v {
                        block = block.add(&m.map(a).mul(&fv));
                    }
                    if t == v {
                        block = block.sub(&fv.mul(n.map(a)));
                    }
                    for r in 0..dm[t] {
                        for c in 0..dn[s] {
                            img[off[a] + r * dn[s] + c] = block.get(r, c);
                        }
                    }
                }
                images.push(img);
            }
        }
    }
    let coboundaries = Subspace::from_vectors(f, total, &images);
    let free: Vec<usize> = (0..total).filter(|c| !coboundaries.pivots().contains(c)).collect();
    Ok(free
        .into_iter()
        .map(|c| {
            q.arrows()
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    let mut xi = Matrix::zeros(f, dm[t], dn[s]);
                    let k = c.wrapping_sub(off[a]);
                    if c >= off[a] && k < dm[t] * dn[s] {
                        xi.set(k / dn[s], k % dn[s], 1);
                    }
                    xi
                })
                .collect()
        })
        .collect())
}

/// Middle term of the extension of `n` by `m` given by the cocycle `xi`:
/// `m` is the submodule on the first coordinates.
pub fn extension(m: &Rep, n: &Rep, xi: &[Matrix]) -> Result<Rep> {
    let q = m.quiver().clone();
    let f = m.field();
    let dims: Vec<usize> = m.dims().iter().zip(n.dims()).map(|(a, b)| a + b).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let top = m.map(a).hstack(&xi[a]);
            let bottom = Matrix::zeros(f, n.dims()[t], m.dims()[s]).hstack(n.map(a));
            top.vstack(&bottom)
        })
        .collect();
    Rep::new(q, f, dims, maps)
}

/// `X_i`: the indecomposable regular of quasi-socle `X` and quasi-length `i`.
pub fn build_x_chain(x: &Rep, i: usize, e: &EulerData, budgets: &Budgets) -> Result<Rep> {
    let orbit = tau_orbit(x, e, budgets)?;
    build_x_chain_from_orbit(&orbit, i, budgets).map(|mut v| v.pop().unwrap())
}

/// `X_1, …, X_i` for the quasi-simple `orbit[0]`, given its τ⁻-orbit.
pub fn build_x_chain_from_orbit(orbit: &[Rep], i: usize, budgets: &Budgets) -> Result<Vec<Rep>> {
    if i == 0 {
        return Err(Error::Construction("quasi-length must be positive".into()));
    }
    let r = orbit.len();
    let mut chain = vec![orbit[0].clone()];
    for j in 2..=i {
        let prev = chain.last().unwrap();
        let top = &orbit[(j - 1) % r];
        let classes = ext_classes(top, prev)?;
        let mut found = None;
        for xi in &classes {
            let candidate = extension(prev, top, xi)?;
            if is_indecomposable(&candidate, budgets)? {
                found = Some(candidate);
                break;
            }
        }
        let next = found.ok_or_else(|| {
            Error::Construction(format!("no indecomposable extension for quasi-length {j}"))
        })?;
        chain.push(next);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::are_isomorphic;
    use crate::linalg::Field;

    pub(crate) fn kronecker() -> Arc<Quiver> {
        Arc::new(Quiver::new("kronecker", 2, vec![(0, 1), (0, 1)]).unwrap())
    }
    pub(crate) fn a21() -> Arc<Quiver> {
        Arc::new(Quiver::new("a21", 3, vec![(0, 1), (1, 2), (0, 2)]).unwrap())
    }
    fn d4() -> Arc<Quiver> {
        Arc::new(Quiver::new("d4_tilde", 5, vec![(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap())
    }

    fn h1(q: &Arc<Quiver>, a: i64, b: i64) -> Rep {
        let f = Field::two();
        Rep::new(
            q.clone(),
            f,
            vec![1, 1],
            vec![Matrix::from_data(f, 1, 1, vec![a]).unwrap(), Matrix::from_data(f, 1, 1, vec![b]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn euler_examples() {
        let k = euler_data(&kronecker()).unwrap();
        assert_eq!(k.delta, vec![1, 1]);
        assert_eq!(k.coxeter_matrix, vec![vec![3, -2], vec![2, -1]]);
        assert_eq!(k.tau_inv_dims(&[0, 1]), vec![2, 3]);
        assert_eq!(k.defect(&[1, 1]), 0);
        assert!(k.defect(&[1, 2]) < 0);
        assert!(k.defect(&[2, 1]) > 0);
        assert_eq!(euler_data(&a21()).unwrap().delta, vec![1, 1, 1]);
        let d = euler_data(&d4()).unwrap();
        assert_eq!(d.delta, vec![1, 1, 1, 1, 2]);
        assert_eq!(d.delta_length(), 6);
        let prod = mat_mul(&d.coxeter_matrix, &d.coxeter_inverse);
        assert_eq!(prod, identity(5));
    }

    #[test]
    fn non_tame_rejected() {
        let a2 = Quiver::new("a2", 2, vec![(0, 1)]).unwrap();
        assert!(matches!(euler_data(&a2), Err(Error::NotTame(_))));
        let k3 = Quiver::new("k3", 2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(matches!(euler_data(&k3), Err(Error::NotTame(_))));
        let cyc = Quiver::new("cyc", 2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(matches!(euler_data(&cyc), Err(Error::NotTame(_))));
    }

    #[test]
    fn reflection_examples() {
        let q = kronecker();
        let f = Field::two();
        let p = Rep::projective(q.clone(), f, 0).unwrap();
        let r = reflect(&p, 1).unwrap();
        assert_eq!(r.dims(), &[1, 0]);
        assert!(reflect(&Rep::simple(q.clone(), f, 1), 1).unwrap().is_zero());
        assert!(matches!(reflect(&h1(&q, 1, 0), 5), Err(Error::NotSinkOrSource { .. })));
        let h = h1(&q, 1, 1);
        let back = reflect(&reflect(&h, 1).unwrap(), 1).unwrap().with_quiver(q.clone()).unwrap();
        assert!(are_isomorphic(&back, &h, &Budgets::default()).unwrap());
    }

    #[test]
    fn translates() {
        let q = kronecker();
        let f = Field::two();
        let b = Budgets::default();
        let e = euler_data(&q).unwrap();
        for v in 0..2 {
            assert!(ar_translate(&Rep::projective(q.clone(), f, v).unwrap(), Direction::Tau, &b).unwrap().is_none());
            assert!(ar_translate(&Rep::injective(q.clone(), f, v).unwrap(), Direction::TauInverse, &b).unwrap().is_none());
        }
        let h = h1(&q, 0, 1);
        let t = ar_translate(&h, Direction::Tau, &b).unwrap().unwrap();
        assert!(iso_to_indecomposable(&t, &h).unwrap());
        let s = Rep::simple(q.clone(), f, 1);
        let t = ar_translate(&s, Direction::TauInverse, &b).unwrap().unwrap();
        assert_eq!(dims_to_vec(t.dims()), e.tau_inv_dims(&[0, 1]));
        assert_eq!(e.tau_dims(&dims_to_vec(t.dims())), vec![0, 1]);
    }

    #[test]
    fn ranks_and_chains() {
        let b = Budgets::default();
        let f = Field::two();
        let q = kronecker();
        let e = euler_data(&q).unwrap();
        let h = h1(&q, 1, 1);
        assert_eq!(rank(&h, &e, &b).unwrap(), 1);
        let h2 = build_x_chain(&h, 2, &e, &b).unwrap();
        assert_eq!(h2.dims(), &[2, 2]);
        let jordan = Rep::new(
            q.clone(),
            f,
            vec![2, 2],
            vec![
                Matrix::identity(f, 2),
                Matrix::from_data(f, 2, 2, vec![1, 1, 0, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(iso_to_indecomposable(&h2, &jordan).unwrap());
        assert_eq!(build_x_chain(&h, 1, &e, &b).unwrap(), h);

        let q = a21();
        let e = euler_data(&q).unwrap();
        let x = Rep::new(
            q.clone(),
            f,
            vec![1, 0, 1],
            vec![Matrix::zeros(f, 0, 1), Matrix::zeros(f, 1, 0), Matrix::identity(f, 1)],
        )
        .unwrap();
        assert!(is_quasi_simple(&x, &e, &b).unwrap());
        assert_eq!(rank(&x, &e, &b).unwrap(), 2);
        let s = Rep::simple(q.clone(), f, 1);
        assert_eq!(rank(&s, &e, &b).unwrap(), 2);
        let x2 = build_x_chain(&x, 2, &e, &b).unwrap();
        assert_eq!(x2.dims(), &[1, 1, 1]);
        assert!(matches!(rank(&Rep::projective(q, f, 0).unwrap(), &e, &b), Err(Error::NotQuasiSimple)));
    }
}
