//! File formats for segment analyses: measures CSV, segments JSON and a
//! Hasse diagram in DOT.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::GrMeasure;
use crate::segments::{Analysis, Certificate, Partition, TheoremReport};

/// One row of `measures.csv`. `positions` and `modules` are space separated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureRow {
    pub measure: GrMeasure,
    pub size: usize,
    pub fiber_size: usize,
    pub positions: String,
    pub partition: Partition,
    pub modules: String,
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn measures_csv(an: &Analysis) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &an.universe {
        w.serialize(MeasureRow {
            measure: r.measure.clone(),
            size: r.measure.len(),
            fiber_size: r.modules.len(),
            positions: join(r.positions_present.iter().map(|p| p.as_str())),
            partition: r.partition,
            modules: join(&r.modules),
        })
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

pub fn parse_measures_csv(text: &str) -> Result<Vec<MeasureRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse(e.to_string()))
}

pub fn segments_json(an: &Analysis) -> String {
    serde_json::to_string_pretty(an).expect("analysis serialises")
}

pub fn parse_segments_json(text: &str) -> Result<Analysis> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn theorem_json(r: &TheoremReport) -> String {
    serde_json::to_string_pretty(r).expect("report serialises")
}

pub fn parse_theorem_json(text: &str) -> Result<TheoremReport> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn color(c: Certificate) -> &'static str {
    match c {
        Certificate::TheoryHomogeneous => "blue",
        Certificate::TheoryStable => "darkgreen",
        Certificate::CatalogRelative => "gray40",
    }
}

fn fill(p: Partition) -> &'static str {
    match p {
        Partition::TakeOff => "lightyellow",
        Partition::Central => "lightblue",
        Partition::Landing => "mistyrose",
        Partition::Unstable => "white",
    }
}

/// Successor relation drawn bottom to top; dashed edges are unstable.
pub fn hasse_dot(an: &Analysis) -> String {
    let mut s = String::from("digraph successors {\n  rankdir=BT;\n  node [shape=box, style=filled, fontname=\"monospace\"];\n");
    for (k, r) in an.universe.iter().enumerate() {
        let _ = writeln!(
            s,
            "  m{k} [label=\"{}\\n{} | fiber {}\", fillcolor={}];",
            r.measure,
            r.partition.as_str(),
            r.modules.len(),
            fill(r.partition)
        );
    }
    for (k, e) in an.edges.iter().enumerate() {
        let style = if e.stable { "solid" } else { "dashed" };
        let _ = writeln!(s, "  m{k} -> m{} [color={}, style={style}];", k + 1, color(e.edge.certificate));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::Budgets;
    use crate::presets::preset;
    use crate::segments::{assemble_segments, verify_main_theorem, SegmentConfig};
    use crate::tame::build_catalog;

    fn analysis() -> (crate::tame::Catalog, Analysis) {
        let s = preset("kronecker").unwrap();
        let c = build_catalog(s.quiver().unwrap(), s.field().unwrap(), s.bound, &Budgets::default()).unwrap();
        let an = assemble_segments(&c, SegmentConfig::default()).unwrap();
        (c, an)
    }

    #[test]
    fn formats_round_trip() {
        let (c, an) = analysis();
        let rows = parse_measures_csv(&measures_csv(&an)).unwrap();
        assert_eq!(rows.len(), an.universe.len());
        assert_eq!(rows[0].measure, "{1}".parse().unwrap());
        assert_eq!(rows[0].partition, Partition::TakeOff);
        let back = parse_segments_json(&segments_json(&an)).unwrap();
        assert_eq!(back.segments, an.segments);
        assert_eq!(back.edges, an.edges);
        let r = verify_main_theorem(&c, &an);
        assert_eq!(parse_theorem_json(&theorem_json(&r)).unwrap(), r);
        assert!(parse_segments_json("{}").is_err());
    }

    #[test]
    fn dot_has_one_node_per_measure() {
        let (_, an) = analysis();
        let dot = hasse_dot(&an);
        assert_eq!(dot.matches("fillcolor").count(), an.universe.len());
        assert_eq!(dot.matches("->").count(), an.edges.len());
        assert!(dot.contains("color=blue"));
    }
}
