//! Bounded-length catalog of indecomposables of a tame quiver.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{build_x_chain_from_orbit, coxeter_functor, dims_to_vec, euler_data, is_quasi_simple, Direction, EulerData};
use crate::decomp::{is_indecomposable, iso_to_indecomposable, Budgets};
use crate::error::{Error, Result};
use crate::grcore::GrEngine;
use crate::linalg::{Field, Matrix};
use crate::measure::GrMeasure;
use crate::quiver::Quiver;
use crate::rep::{Rep, RepJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Preprojective,
    Regular,
    Preinjective,
}

impl Position {
    pub fn as_str(self) -> &'static str {
        match self {
            Position::Preprojective => "preprojective",
            Position::Regular => "regular",
            Position::Preinjective => "preinjective",
        }
    }
}

/// Where a regular entry sits: `X_i` with `X` the quasi-simple
/// `tubes[tube].quasi_simples[quasi_socle]` and `i = quasi_length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TubePlace {
    pub tube: usize,
    pub quasi_socle: usize,
    pub quasi_length: usize,
    pub rank: usize,
}

/// `τ^{-step} P(vertex)` for preprojectives, `τ^{step} I(vertex)` for
/// preinjectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitPlace {
    pub vertex: usize,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tube {
    pub id: usize,
    pub rank: usize,
    /// Quasi-simple dimension vectors in τ⁻-order.
    pub quasi_simple_dims: Vec<Vec<usize>>,
    /// Catalog ids of the quasi-simples (absent when longer than the bound).
    pub quasi_simple_entries: Vec<Option<usize>>,
}

impl Tube {
    pub fn is_homogeneous(&self) -> bool {
        self.rank == 1
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: usize,
    pub module: Rep,
    pub dimv: Vec<usize>,
    pub position: Position,
    pub tube: Option<TubePlace>,
    pub orbit: Option<OrbitPlace>,
    pub measure: GrMeasure,
}

impl CatalogEntry {
    pub fn length(&self) -> usize {
        self.dimv.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub quiver: Arc<Quiver>,
    pub field: Field,
    pub bound: usize,
    pub euler: EulerData,
    pub entries: Vec<CatalogEntry>,
    pub tubes: Vec<Tube>,
    pub note: String,
}

const NOTE: &str = "homogeneous tubes are built only at F_p-rational points; \
regular modules come from quasi-simples of dimension at most the null root";

struct Pending {
    module: Rep,
    position: Position,
    tube: Option<TubePlace>,
    orbit: Option<OrbitPlace>,
}

/// Every representation with the given dimension vector.
fn all_reps(q: &Arc<Quiver>, field: Field, dims: &[usize], budget: u64) -> Result<Vec<Rep>> {
    let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|&(s, t)| (dims[t], dims[s])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let p = field.p() as u64;
    let count = (0..entries).try_fold(1u64, |acc, _| acc.checked_mul(p)).unwrap_or(u64::MAX);
    if count > budget {
        return Err(Error::Budget { what: format!("representations of dimension {dims:?}"), needed: count, cap: budget });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u8; entries];
    loop {
        let mut k = 0;
        let maps = shapes
            .iter()
            .map(|&(r, c)| {
                let data: Vec<i64> = digits[k..k + r * c].iter().map(|&x| x as i64).collect();
                k += r * c;
                Matrix::from_data(field, r, c, data).unwrap()
            })
            .collect();
        out.push(Rep::new(q.clone(), field, dims.to_vec(), maps)?);
        let mut i = 0;
        loop {
            if i == entries {
                return Ok(out);
            }
            digits[i] += 1;
            if digits[i] as u64 == p {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

fn dims_below(delta: &[i64]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in delta {
        out = out
            .into_iter()
            .flat_map(|pre: Vec<usize>| {
                (0..=d as usize).map(move |x| {
                    let mut v = pre.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.retain(|d| d.iter().any(|&x| x > 0));
    out
}

/// Regular quasi-simples up to isomorphism, each represented by its
/// lexicographically least encoding.
fn quasi_simple_classes(q: &Arc<Quiver>, field: Field, e: &EulerData, budgets: &Budgets) -> Result<Vec<Rep>> {
    let mut classes: Vec<Rep> = Vec::new();
    for d in dims_below(&e.delta) {
        if e.defect(&dims_to_vec(&d)) != 0 {
            continue;
        }
        let reps = all_reps(q, field, &d, budgets.subspace)?;
        let flags: Vec<bool> =
            reps.par_iter().map(|r| is_quasi_simple(r, e, budgets)).collect::<Result<_>>()?;
        let mut qs: Vec<(Vec<u8>, Rep)> =
            reps.into_iter().zip(flags).filter(|(_, f)| *f).map(|(r, _)| (r.encode(), r)).collect();
        qs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut local: Vec<Rep> = Vec::new();
        for (_, r) in qs {
            let mut known = false;
            for c in &local {
                if iso_to_indecomposable(&r, c)? {
                    known = true;
                    break;
                }
            }
            if !known {
                local.push(r);
            }
        }
        classes.extend(local);
    }
    crate::decomp::sort_canonical(&mut classes);
    Ok(classes)
}

fn class_index(classes: &[Rep], m: &Rep) -> Result<Option<usize>> {
    for (i, c) in classes.iter().enumerate() {
        if c.dims() == m.dims() && iso_to_indecomposable(m, c)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Lengths `|τ^{∓k} start|` predicted by the Coxeter matrix, up to the last
/// step of length at most `bound`.
fn orbit_steps(start: &[usize], e: &EulerData, dir: Direction, bound: usize) -> usize {
    let n = start.len();
    let mut d = dims_to_vec(start);
    let mut last = 0;
    let mut over = 0;
    for k in 1..=(4 * (bound + 1) * n) {
        d = match dir {
            Direction::Tau => e.tau_dims(&d),
            Direction::TauInverse => e.tau_inv_dims(&d),
        };
        if d.iter().any(|&x| x < 0) {
            break;
        }
        if d.iter().sum::<i64>() as usize <= bound {
            last = k;
            over = 0;
        } else {
            over += 1;
            if over > 2 * n {
                break;
            }
        }
    }
    last
}

fn orbit_entries(
    start: Rep,
    vertex: usize,
    position: Position,
    dir: Direction,
    e: &EulerData,
    bound: usize,
) -> Result<Vec<Pending>> {
    let steps = orbit_steps(start.dims(), e, dir, bound);
    let mut out = Vec::new();
    let mut cur = start;
    for step in 0..=steps {
        if step > 0 {
            cur = coxeter_functor(&cur, dir)?;
            if cur.is_zero() {
                break;
            }
        }
        if cur.length() <= bound {
            out.push(Pending { module: cur.clone(), position, tube: None, orbit: Some(OrbitPlace { vertex, step }) });
        }
    }
    Ok(out)
}

/// Catalog with a fresh GR engine.
pub fn build_catalog(q: Arc<Quiver>, field: Field, bound: usize, budgets: &Budgets) -> Result<Catalog> {
    let engine = GrEngine::new(*budgets);
    build_catalog_with(q, field, bound, &engine)
}

/// Catalog whose measures are computed by (and memoised in) `engine`.
pub fn build_catalog_with(q: Arc<Quiver>, field: Field, bound: usize, engine: &GrEngine) -> Result<Catalog> {
    let budgets = *engine.budgets();
    let e = euler_data(&q)?;
    let n = q.vertex_count();
    let mut pending: Vec<Pending> = Vec::new();
    for v in 0..n {
        let p = Rep::projective(q.clone(), field, v)?;
        pending.extend(orbit_entries(p, v, Position::Preprojective, Direction::TauInverse, &e, bound)?);
        let i = Rep::injective(q.clone(), field, v)?;
        pending.extend(orbit_entries(i, v, Position::Preinjective, Direction::Tau, &e, bound)?);
    }

    let classes = quasi_simple_classes(&q, field, &e, &budgets)?;
    let mut tube_of = vec![usize::MAX; classes.len()];
    let mut tube_orbits: Vec<Vec<usize>> = Vec::new();
    for c in 0..classes.len() {
        if tube_of[c] != usize::MAX {
            continue;
        }
        let mut orbit = vec![c];
        let mut cur = classes[c].clone();
        loop {
            cur = coxeter_functor(&cur, Direction::TauInverse)?;
            let k = class_index(&classes, &cur)?
                .ok_or_else(|| Error::Construction("τ⁻ of a quasi-simple left the quasi-simple list".into()))?;
            if k == c {
                break;
            }
            if orbit.contains(&k) || orbit.len() > classes.len() {
                return Err(Error::Construction("τ-orbit of a quasi-simple does not close".into()));
            }
            orbit.push(k);
        }
        for &k in &orbit {
            tube_of[k] = tube_orbits.len();
        }
        tube_orbits.push(orbit);
    }

    // X_i for each quasi-simple, rotating its tube's orbit to start there
    let jobs: Vec<(usize, usize, Vec<usize>)> = tube_orbits
        .iter()
        .enumerate()
        .flat_map(|(t, orbit)| {
            (0..orbit.len()).map(move |s| {
                let rotated: Vec<usize> = (0..orbit.len()).map(|k| orbit[(s + k) % orbit.len()]).collect();
                (t, s, rotated)
            })
        })
        .collect();
    let regular: Vec<Vec<Pending>> = jobs
        .par_iter()
        .map(|(t, s, rotated)| {
            let reps: Vec<Rep> = rotated.iter().map(|&k| classes[k].clone()).collect();
            let mut len = 0;
            let mut count = 0;
            while len + reps[count % reps.len()].length() <= bound {
                len += reps[count % reps.len()].length();
                count += 1;
            }
            if count == 0 {
                return Ok(vec![]);
            }
            let chain = build_x_chain_from_orbit(&reps, count, &budgets)?;
            Ok(chain
                .into_iter()
                .enumerate()
                .map(|(i, m)| Pending {
                    module: m,
                    position: Position::Regular,
                    tube: Some(TubePlace { tube: *t, quasi_socle: *s, quasi_length: i + 1, rank: reps.len() }),
                    orbit: None,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    pending.extend(regular.into_iter().flatten());

    // dedupe by isomorphism within dimension buckets
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut kept: Vec<Pending> = Vec::new();
    for p in pending {
        let ids = buckets.entry(p.module.dims().to_vec()).or_default();
        let mut dup = false;
        for &i in ids.iter() {
            if iso_to_indecomposable(&p.module, &kept[i].module)? {
                dup = true;
                break;
            }
        }
        if !dup {
            ids.push(kept.len());
            kept.push(p);
        }
    }
    type SortKey = (usize, Vec<usize>, Vec<u8>);
    let mut keyed: Vec<(SortKey, Pending)> = kept
        .into_iter()
        .map(|p| ((p.module.length(), p.module.dims().to_vec(), p.module.encode()), p))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));

    let measures: Vec<GrMeasure> =
        keyed.par_iter().map(|(_, p)| engine.measure(&p.module)).collect::<Result<_>>()?;
    let entries: Vec<CatalogEntry> = keyed
        .into_iter()
        .zip(measures)
        .enumerate()
        .map(|(id, (((_, dimv, _), p), measure))| CatalogEntry {
            id,
            module: p.module,
            dimv,
            position: p.position,
            tube: p.tube,
            orbit: p.orbit,
            measure,
        })
        .collect();

    let tubes = tube_orbits
        .iter()
        .enumerate()
        .map(|(t, orbit)| Tube {
            id: t,
            rank: orbit.len(),
            quasi_simple_dims: orbit.iter().map(|&k| classes[k].dims().to_vec()).collect(),
            quasi_simple_entries: (0..orbit.len())
                .map(|s| {
                    entries.iter().position(|x| {
                        x.tube.is_some_and(|tp| tp.tube == t && tp.quasi_socle == s && tp.quasi_length == 1)
                    })
                })
                .collect(),
        })
        .collect();
    Ok(Catalog { quiver: q, field, bound, euler: e, entries, tubes, note: NOTE.into() })
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, pos: Position) -> usize {
        self.entries.iter().filter(|e| e.position == pos).count()
    }

    /// Entry id of `X_i` for the given tube and quasi-socle.
    pub fn x_entry(&self, tube: usize, quasi_socle: usize, i: usize) -> Option<usize> {
        self.entries.iter().position(|e| {
            e.tube.is_some_and(|tp| tp.tube == tube && tp.quasi_socle == quasi_socle && tp.quasi_length == i)
        })
    }

    /// `X_1, X_2, …` present for a quasi-simple, by quasi-length.
    pub fn x_chain(&self, tube: usize, quasi_socle: usize) -> Vec<usize> {
        (1..).map_while(|i| self.x_entry(tube, quasi_socle, i)).collect()
    }

    pub fn homogeneous_tubes(&self) -> impl Iterator<Item = &Tube> {
        self.tubes.iter().filter(|t| t.is_homogeneous())
    }

    pub fn exceptional_quasi_simple_count(&self) -> usize {
        self.tubes.iter().filter(|t| !t.is_homogeneous()).map(|t| t.rank).sum()
    }

    /// Catalog id of a homogeneous quasi-simple `H_1`, the first in tube order.
    pub fn h1(&self) -> Option<usize> {
        self.homogeneous_tubes().find_map(|t| t.quasi_simple_entries[0])
    }

    pub fn to_json(&self) -> CatalogJson {
        CatalogJson {
            quiver: (*self.quiver).clone(),
            p: self.field.p() as u32,
            bound: self.bound,
            note: self.note.clone(),
            tubes: self.tubes.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| EntryJson {
                    id: e.id,
                    dims: e.dimv.clone(),
                    position: e.position,
                    tube: e.tube,
                    orbit: e.orbit,
                    measure: e.measure.clone(),
                    module: e.module.to_json(),
                })
                .collect(),
        }
    }

    /// Rebuilds a catalog from its JSON form, revalidating every module.
    pub fn from_json(json: &CatalogJson, budgets: &Budgets) -> Result<Catalog> {
        let q = Arc::new(Quiver::new(json.quiver.name(), json.quiver.vertex_count(), json.quiver.arrows().to_vec())?);
        let field = Field::new(json.p)?;
        let euler = euler_data(&q)?;
        let mut entries = Vec::with_capacity(json.entries.len());
        for (k, ej) in json.entries.iter().enumerate() {
            if ej.id != k {
                return Err(Error::Parse(format!("entry {k} carries id {}", ej.id)));
            }
            let module = Rep::from_json(q.clone(), field, &ej.module)?;
            if module.dims() != ej.dims.as_slice() {
                return Err(Error::Parse(format!("entry {k}: dimension vector does not match its module")));
            }
            if module.length() > json.bound || !is_indecomposable(&module, budgets)? {
                return Err(Error::Parse(format!("entry {k}: not an indecomposable within the bound")));
            }
            if let Some(tp) = ej.tube {
                if tp.tube >= json.tubes.len() {
                    return Err(Error::Parse(format!("entry {k}: unknown tube {}", tp.tube)));
                }
            }
            entries.push(CatalogEntry {
                id: k,
                module,
                dimv: ej.dims.clone(),
                position: ej.position,
                tube: ej.tube,
                orbit: ej.orbit,
                measure: ej.measure.clone(),
            });
        }
        Ok(Catalog {
            quiver: q,
            field,
            bound: json.bound,
            euler,
            entries,
            tubes: json.tubes.clone(),
            note: json.note.clone(),
        })
    }

    /// One CSV row per entry.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            w.serialize(CatalogRow {
                id: e.id,
                dims: e.dimv.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
                length: e.length(),
                position: e.position,
                tube: e.tube.map(|t| t.tube),
                quasi_socle: e.tube.map(|t| t.quasi_socle),
                quasi_length: e.tube.map(|t| t.quasi_length),
                rank: e.tube.map(|t| t.rank),
                measure: e.measure.clone(),
            })
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }
}

/// One row of the catalog CSV; `dims` is space separated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub id: usize,
    pub dims: String,
    pub length: usize,
    pub position: Position,
    pub tube: Option<usize>,
    pub quasi_socle: Option<usize>,
    pub quasi_length: Option<usize>,
    pub rank: Option<usize>,
    pub measure: GrMeasure,
}

pub fn parse_catalog_csv(text: &str) -> Result<Vec<CatalogRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogJson {
    pub quiver: Quiver,
    pub p: u32,
    pub bound: usize,
    pub note: String,
    pub tubes: Vec<Tube>,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryJson {
    pub id: usize,
    pub dims: Vec<usize>,
    pub position: Position,
    pub tube: Option<TubePlace>,
    pub orbit: Option<OrbitPlace>,
    pub measure: GrMeasure,
    pub module: RepJson,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> Arc<Quiver> {
        Arc::new(Quiver::new("kronecker", 2, vec![(0, 1), (0, 1)]).unwrap())
    }

    #[test]
    fn all_reps_counts() {
        let q = kronecker();
        assert_eq!(all_reps(&q, Field::two(), &[1, 1], 100).unwrap().len(), 4);
        assert!(all_reps(&q, Field::two(), &[3, 3], 100).is_err());
    }

    #[test]
    fn kronecker_census() {
        let c = build_catalog(kronecker(), Field::two(), 10, &Budgets::default()).unwrap();
        assert_eq!(c.len(), 25);
        assert_eq!(c.count(Position::Preprojective), 5);
        assert_eq!(c.count(Position::Preinjective), 5);
        assert_eq!(c.count(Position::Regular), 15);
        assert_eq!(c.tubes.len(), 3);
        assert_eq!(c.exceptional_quasi_simple_count(), 0);
        for e in &c.entries {
            let d = c.euler.defect(&dims_to_vec(&e.dimv));
            match e.position {
                Position::Preprojective => assert!(d < 0),
                Position::Regular => assert_eq!(d, 0),
                Position::Preinjective => assert!(d > 0),
            }
        }
        let back = Catalog::from_json(&c.to_json(), &Budgets::default()).unwrap();
        assert_eq!(back.len(), 25);
        let csv = c.to_csv();
        assert_eq!(csv.lines().count(), 26);
        assert!(csv.starts_with("id,dims,length,position,tube,quasi_socle,quasi_length,rank,measure\n"));
        let rows = parse_catalog_csv(&csv).unwrap();
        for (r, e) in rows.iter().zip(&c.entries) {
            assert_eq!((r.id, r.position, &r.measure, r.rank), (e.id, e.position, &e.measure, e.tube.map(|t| t.rank)));
        }
        assert!(parse_catalog_csv("id,dims\n0,\"1 1\"\n").is_err());
    }
}
