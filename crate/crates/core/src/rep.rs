//! Representations of quivers over `F_p` and the morphisms between them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, FieldElem, Matrix, Subspace};
use crate::quiver::Quiver;

/// A subspace at every vertex.
pub type SubspaceTuple = Vec<Subspace>;

/// A representation: a vector space `F_p^{dims[v]}` at each vertex and a
/// `dims[t] × dims[s]` matrix for each arrow `s → t`.
#[derive(Clone, Debug)]
pub struct Rep {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.quiver.same_shape(&other.quiver) && self.dims == other.dims && self.maps == other.maps
    }
}

impl Eq for Rep {}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::Shape(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(Error::Shape(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.arrow_count()
            )));
        }
        for (a, m) in maps.iter().enumerate() {
            let (s, t) = quiver.arrows()[a];
            if m.shape() != (dims[t], dims[s]) || m.field() != field {
                return Err(Error::Shape(format!(
                    "arrow {a} needs a {}x{} matrix over F_{}, got {}x{}",
                    dims[t],
                    dims[s],
                    field.p(),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Rep { quiver, field, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Rep {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Rep { quiver, field, dims, maps }
    }

    pub fn simple(quiver: Arc<Quiver>, field: Field, v: usize) -> Rep {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[v] = 1;
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(field, dims[t], dims[s]))
            .collect();
        Rep { quiver, field, dims, maps }
    }

    /// The indecomposable projective at `v`: basis of the space at `u` is the
    /// set of paths `v ⇝ u`, arrows act by post-composition.
    pub fn projective(quiver: Arc<Quiver>, field: Field, v: usize) -> Result<Rep> {
        if !quiver.is_acyclic() {
            return Err(Error::InvalidQuiver("projectives need an acyclic quiver".into()));
        }
        let paths = quiver.paths_from(v);
        let n = quiver.vertex_count();
        let mut index = vec![Vec::new(); n];
        for (k, (end, _)) in paths.iter().enumerate() {
            index[*end].push(k);
        }
        let dims: Vec<usize> = index.iter().map(|x| x.len()).collect();
        let pos = |k: usize| -> usize { index[paths[k].0].iter().position(|&j| j == k).unwrap() };
        let mut maps: Vec<Matrix> =
            quiver.arrows().iter().map(|&(s, t)| Matrix::zeros(field, dims[t], dims[s])).collect();
        for (k, (end, path)) in paths.iter().enumerate() {
            for a in quiver.arrows_out_of(*end) {
                let mut ext = path.clone();
                ext.push(a);
                let j = paths.iter().position(|(_, p)| *p == ext).unwrap();
                maps[a].set(pos(j), pos(k), 1);
            }
        }
        Rep::new(quiver, field, dims, maps)
    }

    /// The indecomposable injective at `v`, as the dual of the projective at
    /// `v` over the opposite quiver.
    pub fn injective(quiver: Arc<Quiver>, field: Field, v: usize) -> Result<Rep> {
        let op = Arc::new(quiver.opposite());
        let p = Rep::projective(op, field, v)?;
        Ok(p.dual_onto(quiver))
    }

    /// `D M` viewed over `target`, which must be the opposite of this quiver.
    fn dual_onto(&self, target: Arc<Quiver>) -> Rep {
        let maps = self.maps.iter().map(|m| m.transpose()).collect();
        Rep { quiver: target, field: self.field, dims: self.dims.clone(), maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }
    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }
    pub fn length(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.length() == 0
    }

    /// Replaces the quiver handle by an equal-shaped one.
    pub fn with_quiver(mut self, quiver: Arc<Quiver>) -> Result<Rep> {
        if !quiver.same_shape(&self.quiver) {
            return Err(Error::QuiverMismatch);
        }
        self.quiver = quiver;
        Ok(self)
    }

    pub fn same_quiver(&self, other: &Rep) -> Result<()> {
        if self.quiver.same_shape(&other.quiver) && self.field == other.field {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn is_simple(&self) -> bool {
        self.length() == 1
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        self.same_quiver(other)?;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(self.field, dims[t], dims[s]);
                let (x, y) = (&self.maps[a], &other.maps[a]);
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        m.set(r, c, x.get(r, c));
                    }
                }
                for r in 0..y.rows() {
                    for c in 0..y.cols() {
                        m.set(x.rows() + r, x.cols() + c, y.get(r, c));
                    }
                }
                m
            })
            .collect();
        Rep::new(self.quiver.clone(), self.field, dims, maps)
    }

    /// Conjugates by invertible matrices `g_v`: the map at `a` becomes
    /// `g_t · M_a · g_s⁻¹`.
    pub fn change_basis(&self, g: &[Matrix]) -> Result<Rep> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Shape("basis change must be invertible".into())))
            .collect::<Result<_>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| g[t].mul(&self.maps[a]).mul(&inv[s]))
            .collect();
        Rep::new(self.quiver.clone(), self.field, self.dims.clone(), maps)
    }

    /// Canonical byte encoding: dimensions followed by the arrow matrices.
    pub fn encode(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.dims.iter().map(|&d| d as u8).collect();
        for m in &self.maps {
            out.extend_from_slice(m.data());
        }
        out
    }

    pub fn full_tuple(&self) -> SubspaceTuple {
        self.dims.iter().map(|&d| Subspace::full(self.field, d)).collect()
    }

    pub fn zero_tuple(&self) -> SubspaceTuple {
        self.dims.iter().map(|&d| Subspace::zero(self.field, d)).collect()
    }

    /// Whether `spaces` is a subrepresentation; returns the first offending arrow otherwise.
    pub fn closure_violation(&self, spaces: &[Subspace]) -> Option<usize> {
        self.quiver.arrows().iter().enumerate().find_map(|(a, &(s, t))| {
            let img = spaces[s].image_under(&self.maps[a]);
            (!spaces[t].contains(&img).unwrap_or(false)).then_some(a)
        })
    }

    fn check_tuple(&self, spaces: &[Subspace]) -> Result<()> {
        if spaces.len() != self.dims.len()
            || spaces.iter().zip(&self.dims).any(|(u, &d)| u.ambient_dim() != d)
        {
            return Err(Error::Shape("subspace tuple does not match the dimension vector".into()));
        }
        if let Some(arrow) = self.closure_violation(spaces) {
            return Err(Error::NotClosed { arrow });
        }
        Ok(())
    }

    /// The subrepresentation on `spaces`, written in their RREF bases.
    pub fn subrep(&self, spaces: &[Subspace]) -> Result<Rep> {
        self.check_tuple(spaces)?;
        Ok(self.subrep_unchecked(spaces))
    }

    pub(crate) fn subrep_unchecked(&self, spaces: &[Subspace]) -> Rep {
        let dims: Vec<usize> = spaces.iter().map(|u| u.dim()).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(self.field, dims[t], dims[s]);
                let basis = spaces[s].basis();
                for j in 0..dims[s] {
                    let img = self.maps[a].mul_vec(basis.row(j));
                    let coords = spaces[t].coordinates(&img).expect("closed tuple");
                    for (i, &x) in coords.iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        Rep { quiver: self.quiver.clone(), field: self.field, dims, maps }
    }

    /// The quotient `M / U` in the standard complement bases.
    pub fn quotient(&self, spaces: &[Subspace]) -> Result<Rep> {
        self.check_tuple(spaces)?;
        let dims: Vec<usize> = spaces.iter().zip(&self.dims).map(|(u, &d)| d - u.dim()).collect();
        let lifts: Vec<Vec<usize>> = spaces
            .iter()
            .zip(&self.dims)
            .map(|(u, &d)| (0..d).filter(|c| !u.pivots().contains(c)).collect())
            .collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(self.field, dims[t], dims[s]);
                for (j, &c) in lifts[s].iter().enumerate() {
                    let mut e = vec![0; self.dims[s]];
                    e[c] = 1;
                    let img = self.maps[a].mul_vec(&e);
                    for (i, &x) in spaces[t].quotient_coordinates(&img).iter().enumerate() {
                        m.set(i, j, x);
                    }
                }
                m
            })
            .collect();
        Rep::new(self.quiver.clone(), self.field, dims, maps)
    }

    /// Radical: at `v`, the sum of the images of all arrows ending at `v`.
    pub fn radical(&self) -> SubspaceTuple {
        (0..self.dims.len())
            .map(|v| {
                let mut u = Subspace::zero(self.field, self.dims[v]);
                for a in self.quiver.arrows_into(v) {
                    let s = self.quiver.source(a);
                    let img = Subspace::full(self.field, self.dims[s]).image_under(&self.maps[a]);
                    u = u.sum(&img).expect("same ambient");
                }
                u
            })
            .collect()
    }

    /// Every maximal subrepresentation: full spaces except a hyperplane
    /// containing the radical at a single vertex.
    pub fn maximal_submodules(&self) -> Vec<SubspaceTuple> {
        let rad = self.radical();
        let mut out = Vec::new();
        for v in 0..self.dims.len() {
            let ann = rad[v].annihilator();
            for phi in projective_points(&ann) {
                let hyper = Subspace::span(&Matrix::from_data(self.field, 1, phi.len(), phi.iter().map(|&x| x as i64).collect()).unwrap())
                    .annihilator();
                let mut t = self.full_tuple();
                t[v] = hyper;
                out.push(t);
            }
        }
        out
    }

    /// Smallest subrepresentation containing the given vectors (one list per vertex).
    pub fn generated_by(&self, generators: &[Vec<Vec<FieldElem>>]) -> SubspaceTuple {
        let mut spaces: SubspaceTuple = (0..self.dims.len())
            .map(|v| Subspace::from_vectors(self.field, self.dims[v], &generators[v]))
            .collect();
        // acyclic or not, the sum stabilises after at most Σ dims rounds
        loop {
            let mut changed = false;
            for (a, &(s, t)) in self.quiver.arrows().iter().enumerate() {
                let img = spaces[s].image_under(&self.maps[a]);
                if !spaces[t].contains(&img).unwrap() {
                    spaces[t] = spaces[t].sum(&img).unwrap();
                    changed = true;
                }
            }
            if !changed {
                return spaces;
            }
        }
    }

    /// Inclusion tuples of a submodule of a submodule, expressed back in the ambient.
    pub fn compose_tuple(outer: &[Subspace], inner: &[Subspace]) -> SubspaceTuple {
        outer
            .iter()
            .zip(inner)
            .map(|(o, i)| {
                if i.dim() == 0 {
                    Subspace::zero(o.field(), o.ambient_dim())
                } else {
                    Subspace::span(&i.basis().mul(o.basis()))
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            dims: self.dims.clone(),
            maps: self
                .maps
                .iter()
                .enumerate()
                .map(|(a, m)| ArrowMap { arrow: a, entries: m.to_rows() })
                .collect(),
        }
    }

    pub fn from_json(quiver: Arc<Quiver>, field: Field, json: &RepJson) -> Result<Rep> {
        let mut maps: Vec<Option<Matrix>> = vec![None; quiver.arrow_count()];
        for am in &json.maps {
            if am.arrow >= maps.len() {
                return Err(Error::Parse(format!("arrow {} out of range", am.arrow)));
            }
            let (s, t) = quiver.arrows()[am.arrow];
            let (rows, cols) = (
                *json.dims.get(t).ok_or_else(|| Error::Parse("dims too short".into()))?,
                *json.dims.get(s).ok_or_else(|| Error::Parse("dims too short".into()))?,
            );
            let data: Vec<Vec<i64>> = am.entries.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            if data.len() != rows {
                return Err(Error::Shape(format!("arrow {} needs {rows} rows", am.arrow)));
            }
            if am.entries.iter().flatten().any(|&x| x >= field.p()) {
                return Err(Error::Parse(format!("entry outside F_{}", field.p())));
            }
            maps[am.arrow] = Some(Matrix::from_rows(field, &data, cols)?);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(a, m)| {
                m.map(Ok).unwrap_or_else(|| {
                    let (s, t) = quiver.arrows()[a];
                    match (json.dims.get(t), json.dims.get(s)) {
                        (Some(&r), Some(&c)) if r == 0 || c == 0 => Ok(Matrix::zeros(field, r, c)),
                        _ => Err(Error::Parse(format!("missing map for arrow {a}"))),
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Rep::new(quiver, field, json.dims.clone(), maps)
    }
}

/// Representatives of the nonzero vectors of `u` up to scalars: the
/// vectors whose first nonzero coordinate in the RREF basis is 1.
pub(crate) fn projective_points(u: &Subspace) -> Vec<Vec<FieldElem>> {
    let f = u.field();
    let k = u.dim();
    let p = f.p() as usize;
    let mut out = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        for code in 0..p.pow(free as u32) {
            let mut coeffs = vec![0u8; k];
            coeffs[lead] = 1;
            let mut x = code;
            for c in coeffs.iter_mut().skip(lead + 1) {
                *c = (x % p) as u8;
                x /= p;
            }
            let mut v = vec![0u8; u.ambient_dim()];
            for (r, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (j, x) in v.iter_mut().enumerate() {
                    *x = f.add(*x, f.mul(c, u.basis().get(r, j)));
                }
            }
            out.push(v);
        }
    }
    out
}

/// JSON form of a representation: `{dims: [...], maps: [{arrow, entries}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub dims: Vec<usize>,
    pub maps: Vec<ArrowMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowMap {
    pub arrow: usize,
    pub entries: Vec<Vec<u8>>,
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub maps: Vec<Matrix>,
}

impl Morphism {
    pub fn identity(m: &Rep) -> Morphism {
        Morphism { maps: m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect() }
    }

    pub fn scalar(m: &Rep, c: FieldElem) -> Morphism {
        Morphism { maps: m.dims.iter().map(|&d| Matrix::scalar(m.field, d, c)).collect() }
    }

    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&first.maps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: FieldElem) -> Morphism {
        Morphism { maps: self.maps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn is_invertible(&self) -> bool {
        self.maps.iter().all(|m| m.is_invertible())
    }

    /// `f^e` for an endomorphism.
    pub fn pow(&self, e: u64) -> Morphism {
        Morphism { maps: self.maps.iter().map(|m| m.pow(e)).collect() }
    }

    /// `Σ c_i b_i` over a basis.
    pub fn combination(basis: &[Morphism], coeffs: &[FieldElem]) -> Option<Morphism> {
        let first = basis.first()?;
        let mut acc = first.scale(0);
        for (b, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                for (x, y) in acc.maps.iter_mut().zip(&b.maps) {
                    x.add_scaled(y, c);
                }
            }
        }
        Some(acc)
    }

    pub fn kernel(&self) -> SubspaceTuple {
        self.maps.iter().map(|m| Subspace::span(&m.nullspace())).collect()
    }

    pub fn image(&self) -> SubspaceTuple {
        self.maps
            .iter()
            .map(|m| Subspace::full(m.field(), m.cols()).image_under(m))
            .collect()
    }

    /// Flattened entries, for spans inside a Hom space.
    pub fn flatten(&self) -> Vec<FieldElem> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }
}

/// A basis of `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of all vertex-wise maps `f` with `f_t · M_a = N_a · f_s` for every arrow.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<HomSpace> {
    m.same_quiver(n)?;
    let q = &m.quiver;
    let field = m.field;
    let nv = q.vertex_count();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let vars = offset[nv];
    if vars == 0 {
        return Ok(HomSpace { basis: vec![] });
    }
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![0u8; vars];
                for k in 0..m.dims[t] {
                    let c = ma.get(k, j);
                    if c != 0 {
                        let x = var(t, i, k);
                        row[x] = field.add(row[x], c);
                    }
                }
                for k in 0..n.dims[s] {
                    let c = na.get(i, k);
                    if c != 0 {
                        let x = var(s, k, j);
                        row[x] = field.sub(row[x], c);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_data(
        field,
        rows.len(),
        vars,
        rows.into_iter().flatten().map(|x| x as i64).collect(),
    )?;
    let ns = system.nullspace();
    let basis = (0..ns.rows())
        .map(|r| {
            let row = ns.row(r);
            Morphism {
                maps: (0..nv)
                    .map(|v| {
                        let data = row[offset[v]..offset[v + 1]].iter().map(|&x| x as i64).collect();
                        Matrix::from_data(field, n.dims[v], m.dims[v], data).unwrap()
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(HomSpace { basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> Arc<Quiver> {
        Arc::new(Quiver::new("kronecker", 2, vec![(0, 1), (0, 1)]).unwrap())
    }

    pub(crate) fn h1(q: &Arc<Quiver>, a: i64, b: i64) -> Rep {
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
    fn kronecker_homs() {
        let q = kronecker();
        let f = Field::two();
        let s1 = Rep::simple(q.clone(), f, 0);
        let s2 = Rep::simple(q.clone(), f, 1);
        assert_eq!(hom_basis(&s1, &s2).unwrap().dim(), 0);
        assert_eq!(hom_basis(&s2, &h1(&q, 1, 0)).unwrap().dim(), 1);
        assert_eq!(hom_basis(&s2, &s2).unwrap().dim(), 1);
        let h = h1(&q, 1, 1);
        for g in hom_basis(&h, &h).unwrap().basis {
            for (a, &(s, t)) in q.arrows().iter().enumerate() {
                assert_eq!(g.maps[t].mul(h.map(a)), h.map(a).mul(&g.maps[s]));
            }
        }
    }

    #[test]
    fn projectives_and_injectives() {
        let q = kronecker();
        let f = Field::two();
        assert_eq!(Rep::projective(q.clone(), f, 0).unwrap().dims(), &[1, 2]);
        assert_eq!(Rep::projective(q.clone(), f, 1).unwrap().dims(), &[0, 1]);
        assert_eq!(Rep::injective(q.clone(), f, 0).unwrap().dims(), &[1, 0]);
        assert_eq!(Rep::injective(q.clone(), f, 1).unwrap().dims(), &[2, 1]);
        let a21 = Arc::new(Quiver::new("a21", 3, vec![(0, 1), (1, 2), (0, 2)]).unwrap());
        assert_eq!(Rep::projective(a21.clone(), f, 0).unwrap().dims(), &[1, 1, 2]);
        assert_eq!(Rep::injective(a21, f, 2).unwrap().dims(), &[2, 1, 1]);
    }

    #[test]
    fn sub_and_quotient() {
        let q = kronecker();
        let f = Field::two();
        let h = h1(&q, 1, 0);
        let full = h.subrep(&h.full_tuple()).unwrap();
        assert_eq!(full, h);
        assert!(h.subrep(&h.zero_tuple()).unwrap().is_zero());
        let top = vec![Subspace::zero(f, 1), Subspace::full(f, 1)];
        let s = h.subrep(&top).unwrap();
        assert_eq!(s, Rep::simple(q.clone(), f, 1));
        assert_eq!(h.quotient(&top).unwrap(), Rep::simple(q.clone(), f, 0));
        let bad = vec![Subspace::full(f, 1), Subspace::zero(f, 1)];
        assert!(matches!(h.subrep(&bad), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn maximal_submodules_of_projective() {
        let q = kronecker();
        let f = Field::two();
        let p = Rep::projective(q, f, 0).unwrap();
        let maxes = p.maximal_submodules();
        assert_eq!(maxes.len(), 1);
        assert_eq!(maxes[0][0].dim(), 0);
        assert_eq!(maxes[0][1].dim(), 2);
    }

    #[test]
    fn json_roundtrip() {
        let q = kronecker();
        let h = h1(&q, 1, 1).direct_sum(&Rep::simple(q.clone(), Field::two(), 1)).unwrap();
        let text = serde_json::to_string(&h.to_json()).unwrap();
        let back: RepJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Rep::from_json(q.clone(), Field::two(), &back).unwrap(), h);
        let broken: RepJson = serde_json::from_str(r#"{"dims":[1,1],"maps":[{"arrow":0,"entries":[[1,1]]}]}"#).unwrap();
        assert!(Rep::from_json(q, Field::two(), &broken).is_err());
    }
}
