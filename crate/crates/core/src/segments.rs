//! Measure-level structure of a catalog: fibers, direct successors,
//! the take-off/central/landing partition and GR segments.
//!
//! Everything here is relative to the catalog's length bound `L`. Labels are
//! tested for stability against the smaller window `L − Δ`: a label that
//! differs between the two windows is reported as unstable rather than
//! guessed.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::GrMeasure;
use crate::quiver::Quiver;
use crate::tame::{Catalog, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Partition {
    TakeOff,
    Central,
    Landing,
    Unstable,
}

impl Partition {
    pub fn as_str(self) -> &'static str {
        match self {
            Partition::TakeOff => "take-off",
            Partition::Central => "central",
            Partition::Landing => "landing",
            Partition::Unstable => "unstable",
        }
    }
}

/// A measure together with its fiber `A(I)` in the catalog.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureRecord {
    pub measure: GrMeasure,
    pub modules: Vec<usize>,
    pub partition: Partition,
    pub positions_present: Vec<Position>,
}

impl MeasureRecord {
    pub fn only(&self, p: Position) -> bool {
        self.positions_present == [p]
    }
    pub fn has(&self, p: Position) -> bool {
        self.positions_present.contains(&p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certificate {
    CatalogRelative,
    TheoryHomogeneous,
    TheoryStable,
}

impl Certificate {
    pub fn is_theory(self) -> bool {
        self != Certificate::CatalogRelative
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccessorEdge {
    pub from: GrMeasure,
    pub to: GrMeasure,
    pub certificate: Certificate,
}

/// An edge of the catalog's successor relation with its window stability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeInfo {
    #[serde(flatten)]
    pub edge: SuccessorEdge,
    pub stable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexType {
    N,
    NegN,
    Z,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentRole {
    TakeOff,
    Central,
    Landing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub role: SegmentRole,
    pub measures: Vec<GrMeasure>,
    pub index_type: IndexType,
    pub anchor: String,
    /// Preinjective-only fibers at the bottom of the segment.
    pub preinjective_run: usize,
    /// Whether the topmost edge carries a theory certificate.
    pub certified_top: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentConfig {
    /// Gap `Δ` between the two stability windows.
    pub delta: usize,
    /// Minimum downward run of preinjective-only fibers for `Z`.
    pub z_min_run: usize,
}

impl Default for SegmentConfig {
    fn default() -> Self {
        SegmentConfig { delta: 2, z_min_run: 3 }
    }
}

/// Full measure-level analysis of one catalog.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Analysis {
    pub bound: usize,
    pub window: usize,
    pub config: SegmentConfig,
    pub universe: Vec<MeasureRecord>,
    pub edges: Vec<EdgeInfo>,
    pub segments: Vec<Segment>,
    pub notes: Vec<String>,
}

fn fibers(c: &Catalog, bound: usize) -> BTreeMap<GrMeasure, Vec<usize>> {
    let mut map: BTreeMap<GrMeasure, Vec<usize>> = BTreeMap::new();
    for e in c.entries.iter().filter(|e| e.length() <= bound) {
        map.entry(e.measure.clone()).or_default().push(e.id);
    }
    map
}

fn records(c: &Catalog, bound: usize) -> Vec<MeasureRecord> {
    fibers(c, bound)
        .into_iter()
        .map(|(measure, modules)| {
            let positions: BTreeSet<Position> = modules.iter().map(|&i| c.entries[i].position).collect();
            MeasureRecord { measure, modules, partition: Partition::Unstable, positions_present: positions.into_iter().collect() }
        })
        .collect()
}

/// Distinct catalog measures in ascending order with their fibers.
/// Partition labels are left as `Unstable` until [`partition`] runs.
pub fn measure_universe(c: &Catalog) -> Vec<MeasureRecord> {
    records(c, c.bound)
}

/// Pairs certified as direct successors by theory, and measures known to
/// have a strict extension by a module longer than the bound.
struct Theory {
    homogeneous: HashSet<(GrMeasure, GrMeasure)>,
    stable: HashSet<(GrMeasure, GrMeasure)>,
    extended_beyond: HashSet<GrMeasure>,
}

fn theory(c: &Catalog) -> Theory {
    let mut homogeneous = HashSet::new();
    let mut stable = HashSet::new();
    let mut extended_beyond = HashSet::new();
    let h1 = c.h1().map(|i| c.entries[i].measure.clone());
    for t in &c.tubes {
        for s in 0..t.rank {
            let chain: Vec<&GrMeasure> = c.x_chain(t.id, s).iter().map(|&i| &c.entries[i].measure).collect();
            // the chain stops at the bound, so X_{k+1} is longer than it
            let Some(&last) = chain.last() else { continue };
            if t.is_homogeneous() {
                for w in chain.windows(2) {
                    homogeneous.insert((w[0].clone(), w[1].clone()));
                }
                extended_beyond.insert(last.clone());
                continue;
            }
            let r = t.rank;
            let (Some(h1), Some(xr)) = (h1.as_ref(), chain.get(r - 1)) else { continue };
            if *xr >= h1 {
                for j in (2 * r)..chain.len() {
                    stable.insert((chain[j - 1].clone(), chain[j].clone()));
                }
                // X_k is then the unique GR submodule of X_{k+1}
                extended_beyond.insert(last.clone());
            }
        }
    }
    Theory { homogeneous, stable, extended_beyond }
}

fn certify(th: &Theory, from: &GrMeasure, to: &GrMeasure) -> Certificate {
    let key = (from.clone(), to.clone());
    if th.homogeneous.contains(&key) {
        Certificate::TheoryHomogeneous
    } else if th.stable.contains(&key) {
        Certificate::TheoryStable
    } else {
        Certificate::CatalogRelative
    }
}

/// The least catalog measure above `i`, with the strongest certificate the
/// fiber data supports.
pub fn successor_in(c: &Catalog, i: &GrMeasure) -> Option<SuccessorEdge> {
    let next = c.entries.iter().map(|e| &e.measure).filter(|m| *m > i).min()?.clone();
    let th = theory(c);
    Some(SuccessorEdge { certificate: certify(&th, i, &next), from: i.clone(), to: next })
}

/// Labels every measure of the catalog by comparing windows `L` and `L − Δ`.
/// Measures up to the largest preprojective one are take-off regardless.
pub fn partition(c: &Catalog, delta: usize) -> Result<(Vec<MeasureRecord>, Vec<String>)> {
    if delta == 0 || delta >= c.bound {
        return Err(Error::Construction(format!("window gap {delta} must lie in 1..{}", c.bound)));
    }
    let window = c.bound - delta;
    let mut full = records(c, c.bound);
    let small: Vec<GrMeasure> = records(c, window).into_iter().map(|r| r.measure).collect();
    let prefix = full.iter().zip(&small).take_while(|(a, b)| a.measure == **b).count();
    let suffix = full
        .iter()
        .rev()
        .zip(small.iter().rev())
        .take_while(|(a, b)| a.measure == **b)
        .count()
        .min(full.len() - prefix);
    // preprojectives are take-off and take-off measures form an initial segment
    let take_off_top = full.iter().rposition(|r| r.has(Position::Preprojective)).map_or(0, |k| k + 1);
    let prefix = prefix.max(take_off_top);
    let suffix = suffix.min(full.len() - prefix);
    let n = full.len();
    for (k, r) in full.iter_mut().enumerate() {
        r.partition = if k < prefix {
            Partition::TakeOff
        } else if k >= n - suffix {
            Partition::Landing
        } else if r.measure.top() as usize <= window {
            Partition::Central
        } else {
            Partition::Unstable
        };
    }
    let mut notes = Vec::new();
    if prefix == 0 {
        notes.push("no take-off measure is stable between the two windows".into());
    }
    if suffix == 0 {
        notes.push("no landing measure is stable between the two windows".into());
    }
    if !full.iter().any(|r| r.partition == Partition::Central) {
        notes.push("no central measure is stable between the two windows".into());
    }
    Ok((full, notes))
}

fn anchor_of(c: &Catalog, rec: &MeasureRecord) -> Option<String> {
    let mut tubes = BTreeSet::new();
    for &i in &rec.modules {
        if let Some(tp) = c.entries[i].tube {
            tubes.insert((tp.tube, tp.quasi_socle));
        }
    }
    let (t, s) = *tubes.iter().next()?;
    Some(if c.tubes[t].is_homogeneous() {
        format!("homogeneous tube {t}")
    } else {
        format!("tube {t}, quasi-simple {s}")
    })
}

/// Partition, successor edges and typed segments for a catalog.
pub fn assemble_segments(c: &Catalog, cfg: SegmentConfig) -> Result<Analysis> {
    let (universe, mut notes) = partition(c, cfg.delta)?;
    let window = c.bound - cfg.delta;
    let th = theory(c);
    let edges: Vec<EdgeInfo> = universe
        .windows(2)
        .map(|w| EdgeInfo {
            edge: SuccessorEdge {
                from: w[0].measure.clone(),
                to: w[1].measure.clone(),
                certificate: certify(&th, &w[0].measure, &w[1].measure),
            },
            stable: w[0].measure.top() as usize <= window
                && w[1].measure.top() as usize <= window
                && !th.extended_beyond.contains(&w[0].measure),
        })
        .collect();

    let homogeneous_measures: HashSet<&GrMeasure> = th.homogeneous.iter().flat_map(|(a, b)| [a, b]).collect();
    let h_singletons: HashSet<GrMeasure> = c
        .homogeneous_tubes()
        .flat_map(|t| c.x_chain(t.id, 0))
        .map(|i| c.entries[i].measure.clone())
        .collect();

    let mut segments = Vec::new();
    let of = |role: Partition| -> Vec<GrMeasure> {
        universe.iter().filter(|r| r.partition == role).map(|r| r.measure.clone()).collect()
    };
    let take_off = of(Partition::TakeOff);
    if !take_off.is_empty() {
        segments.push(Segment {
            role: SegmentRole::TakeOff,
            measures: take_off,
            index_type: IndexType::N,
            anchor: "take-off".into(),
            preinjective_run: 0,
            certified_top: false,
        });
    }

    // maximal runs of central measures joined by stable edges
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for (k, r) in universe.iter().enumerate() {
        if r.partition != Partition::Central {
            continue;
        }
        let joined = k > 0
            && universe[k - 1].partition == Partition::Central
            && edges[k - 1].stable
            && runs.last().is_some_and(|run| *run.last().unwrap() == k - 1);
        if joined {
            runs.last_mut().unwrap().push(k);
        } else {
            runs.push(vec![k]);
        }
    }
    for run in runs {
        let recs: Vec<&MeasureRecord> = run.iter().map(|&k| &universe[k]).collect();
        let certified_top = run.len() >= 2 && edges[run[run.len() - 2]].edge.certificate.is_theory();
        let preinjective_run = recs.iter().take_while(|r| r.only(Position::Preinjective)).count();
        let homogeneous = recs
            .iter()
            .any(|r| h_singletons.contains(&r.measure) || homogeneous_measures.contains(&r.measure));
        let bottom_regular = recs[0].has(Position::Regular);
        let index_type = if homogeneous {
            IndexType::N
        } else if certified_top && preinjective_run >= cfg.z_min_run {
            IndexType::Z
        } else if certified_top && bottom_regular {
            IndexType::N
        } else {
            IndexType::Unknown
        };
        let anchor = if homogeneous {
            "homogeneous".to_string()
        } else {
            anchor_of(c, recs.last().unwrap()).unwrap_or_else(|| "unanchored".into())
        };
        segments.push(Segment {
            role: SegmentRole::Central,
            measures: recs.iter().map(|r| r.measure.clone()).collect(),
            index_type,
            anchor,
            preinjective_run,
            certified_top,
        });
    }

    let landing = of(Partition::Landing);
    if !landing.is_empty() {
        segments.push(Segment {
            role: SegmentRole::Landing,
            measures: landing,
            index_type: IndexType::NegN,
            anchor: "landing".into(),
            preinjective_run: 0,
            certified_top: false,
        });
    }
    if segments.iter().any(|s| s.index_type == IndexType::Unknown) {
        notes.push("some central segments could not be typed within the catalog bound".into());
    }
    Ok(Analysis { bound: c.bound, window, config: cfg, universe, edges, segments, notes })
}

/// Number of exceptional quasi-simples (rank at least two).
pub fn compute_b(c: &Catalog) -> usize {
    c.exceptional_quasi_simple_count()
}

/// Number of exceptional quasi-simples `X` with `μ(X_{R_X}) ≥ μ(H_1)`.
pub fn compute_a(c: &Catalog) -> Result<usize> {
    let h1 = c
        .h1()
        .map(|i| c.entries[i].measure.clone())
        .ok_or_else(|| Error::Undecided("no homogeneous quasi-simple within the catalog bound".into()))?;
    let mut a = 0;
    for t in c.tubes.iter().filter(|t| !t.is_homogeneous()) {
        for s in 0..t.rank {
            let xr = c.x_entry(t.id, s, t.rank).ok_or_else(|| {
                Error::Undecided(format!("X_{} of tube {} is longer than the catalog bound", t.rank, t.id))
            })?;
            if c.entries[xr].measure >= h1 {
                a += 1;
            }
        }
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: usize,
    pub bound: Option<usize>,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub quiver: String,
    pub p: u32,
    pub bound: usize,
    pub window: usize,
    pub a: Option<usize>,
    pub b: usize,
    pub z_segments: usize,
    pub central_n_or_z: usize,
    pub unknown_segments: usize,
    pub total_segments: usize,
    pub checks: Vec<BoundCheck>,
    pub all_hold: bool,
    pub catalog_relative: bool,
    pub caveat: String,
}

/// Compares segment counts with the bounds `a`, `b + 1` and `b + 3`.
pub fn verify_main_theorem(c: &Catalog, an: &Analysis) -> TheoremReport {
    let a = compute_a(c).ok();
    let b = compute_b(c);
    let z = an.segments.iter().filter(|s| s.index_type == IndexType::Z).count();
    let central = an
        .segments
        .iter()
        .filter(|s| s.role == SegmentRole::Central && matches!(s.index_type, IndexType::N | IndexType::Z))
        .count();
    let unknown = an.segments.iter().filter(|s| s.index_type == IndexType::Unknown).count();
    let total = an.segments.len();
    let check = |name: &str, value: usize, bound: Option<usize>| BoundCheck {
        name: name.into(),
        value,
        bound,
        holds: bound.map(|b| value <= b),
    };
    let checks = vec![
        check("z-indexed segments <= a", z, a),
        check("central N- or Z-indexed segments <= b+1", central, Some(b + 1)),
        check("all segments <= b+3", total, Some(b + 3)),
    ];
    let all_hold = checks.iter().all(|c| c.holds != Some(false));
    TheoremReport {
        quiver: c.quiver.name().to_string(),
        p: c.field.p() as u32,
        bound: c.bound,
        window: an.window,
        a,
        b,
        z_segments: z,
        central_n_or_z: central,
        unknown_segments: unknown,
        total_segments: total,
        checks,
        all_hold,
        catalog_relative: true,
        caveat: format!(
            "counts use only modules of length at most {} and labels stable down to length {}; {}",
            c.bound, an.window, c.note
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinkSourceReport {
    pub sink_source_orientation: bool,
    pub preinjective_central: bool,
    pub z_segment: bool,
    /// Whether "not sink-source", "a central preinjective exists" and "a
    /// Z-indexed segment exists" all agree.
    pub consistent: bool,
}

/// Whether the underlying graph is a single cycle.
pub fn is_type_a_tilde(q: &Quiver) -> bool {
    let n = q.vertex_count();
    if q.arrow_count() != n {
        return false;
    }
    let mut degree = vec![0; n];
    for &(s, t) in q.arrows() {
        degree[s] += 1;
        degree[t] += 1;
    }
    degree.iter().all(|&d| d == 2)
}

/// Orientation test against central preinjectives and Z-indexed segments.
pub fn check_sink_source_prop(q: &Quiver, an: &Analysis) -> Result<SinkSourceReport> {
    if !is_type_a_tilde(q) {
        return Err(Error::InvalidQuiver(format!("{} is not of cyclic type", q.name())));
    }
    let sink_source = (0..q.vertex_count()).all(|v| q.is_sink(v) || q.is_source(v));
    let preinjective_central =
        an.universe.iter().any(|r| r.partition == Partition::Central && r.has(Position::Preinjective));
    let z_segment = an.segments.iter().any(|s| s.index_type == IndexType::Z);
    Ok(SinkSourceReport {
        sink_source_orientation: sink_source,
        preinjective_central,
        z_segment,
        consistent: !sink_source == preinjective_central && !sink_source == z_segment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::Budgets;
    use crate::presets::preset;
    use crate::tame::build_catalog;

    fn kronecker() -> Catalog {
        let s = preset("kronecker").unwrap();
        build_catalog(s.quiver().unwrap(), s.field().unwrap(), s.bound, &Budgets::default()).unwrap()
    }

    fn m(s: &str) -> GrMeasure {
        s.parse().unwrap()
    }

    #[test]
    fn kronecker_partition() {
        let c = kronecker();
        let (u, _) = partition(&c, 2).unwrap();
        let label = |s: &str| u.iter().find(|r| r.measure == m(s)).unwrap().partition;
        assert_eq!(label("{1,3,5}"), Partition::TakeOff);
        assert_eq!(label("{1,2}"), Partition::Central);
        assert_eq!(label("{1,2,4,6,8}"), Partition::Central);
        assert_eq!(label("{1,2,3}"), Partition::Landing);
        assert!(u.windows(2).all(|w| w[0].measure < w[1].measure));
        assert!(partition(&c, 0).is_err());
        assert!(partition(&c, c.bound).is_err());
    }

    #[test]
    fn kronecker_successor_certificates() {
        let c = kronecker();
        let e = successor_in(&c, &m("{1,2}")).unwrap();
        assert_eq!(e.to, m("{1,2,4}"));
        assert_eq!(e.certificate, Certificate::TheoryHomogeneous);
        let e = successor_in(&c, &m("{1}")).unwrap();
        assert_eq!(e.certificate, Certificate::CatalogRelative);
        assert!(successor_in(&c, &m("{1,2,3}")).is_none());
    }

    #[test]
    fn kronecker_segments_and_bounds() {
        let c = kronecker();
        let an = assemble_segments(&c, SegmentConfig::default()).unwrap();
        let central: Vec<&Segment> = an.segments.iter().filter(|s| s.role == SegmentRole::Central).collect();
        assert_eq!(central.len(), 1);
        assert_eq!(central[0].index_type, IndexType::N);
        assert!(central[0].certified_top);
        assert_eq!(compute_b(&c), 0);
        assert_eq!(compute_a(&c).unwrap(), 0);
        let rep = verify_main_theorem(&c, &an);
        assert!(rep.all_hold);
        assert_eq!((rep.z_segments, rep.central_n_or_z, rep.total_segments), (0, 1, 3));
        let ss = check_sink_source_prop(&c.quiver, &an).unwrap();
        assert!(ss.sink_source_orientation && !ss.z_segment && ss.consistent);
    }

    #[test]
    fn edges_past_the_window_are_unstable() {
        let c = kronecker();
        let an = assemble_segments(&c, SegmentConfig::default()).unwrap();
        for e in &an.edges {
            if e.stable {
                assert!(e.edge.from.top() as usize <= an.window && e.edge.to.top() as usize <= an.window);
            }
        }
        // H_4 has length 8 and H_5 lies past the bound
        let last_h = an.edges.iter().find(|e| e.edge.from == m("{1,2,4,6,8}")).unwrap();
        assert!(!last_h.stable);
    }

    #[test]
    fn cyclic_type_detection() {
        let c = kronecker();
        assert!(is_type_a_tilde(&c.quiver));
        let d4 = preset("d4_tilde").unwrap().quiver().unwrap();
        assert!(!is_type_a_tilde(&d4));
        let s = preset("d4_tilde").unwrap();
        let small = build_catalog(d4, s.field().unwrap(), 4, &Budgets::default()).unwrap();
        let an = assemble_segments(&small, SegmentConfig::default()).unwrap();
        assert!(check_sink_source_prop(&small.quiver, &an).is_err());
    }
}
