use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite connected directed multigraph without loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    name: String,
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(name: impl Into<String>, vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        for &(s, t) in &arrows {
            if s >= vertex_count || t >= vertex_count {
                return Err(Error::InvalidQuiver(format!("arrow {s}->{t} leaves the vertex range")));
            }
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at vertex {s}")));
            }
        }
        let q = Quiver { name: name.into(), vertex_count, arrows };
        if !q.is_connected() {
            return Err(Error::InvalidQuiver("underlying graph is not connected".into()));
        }
        Ok(q)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }
    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].0
    }
    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].1
    }

    /// Same vertices and arrows; names are ignored.
    pub fn same_shape(&self, other: &Quiver) -> bool {
        self.vertex_count == other.vertex_count && self.arrows == other.arrows
    }

    pub fn arrows_into(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].1 == v).collect()
    }

    pub fn arrows_out_of(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].0 == v).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(s, t) in &self.arrows {
                for (x, y) in [(s, t), (t, s)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertices ordered so every arrow goes forward.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertex_count];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut order = Vec::with_capacity(self.vertex_count);
        let mut ready: Vec<usize> = (0..self.vertex_count).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.pop() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        (order.len() == self.vertex_count).then_some(order)
    }

    /// Sink-removal ordering: repeatedly take the smallest-id vertex with no
    /// arrow to a remaining vertex. `None` for quivers with oriented cycles.
    pub fn sink_ordering(&self) -> Option<Vec<usize>> {
        let mut removed = vec![false; self.vertex_count];
        let mut order = Vec::with_capacity(self.vertex_count);
        for _ in 0..self.vertex_count {
            let v = (0..self.vertex_count).find(|&v| {
                !removed[v] && self.arrows.iter().all(|&(s, t)| s != v || removed[t])
            })?;
            removed[v] = true;
            order.push(v);
        }
        Some(order)
    }

    /// The quiver with every arrow at `v` reversed.
    pub fn reflected_at(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == v || t == v { (t, s) } else { (s, t) })
            .collect();
        Quiver { name: self.name.clone(), vertex_count: self.vertex_count, arrows }
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            name: format!("{}^op", self.name),
            vertex_count: self.vertex_count,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Number of arrows `i → j` for every ordered pair.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.vertex_count]; self.vertex_count];
        for &(s, t) in &self.arrows {
            a[s][t] += 1;
        }
        a
    }

    /// All paths starting at `v` (as arrow sequences, first arrow first),
    /// including the trivial path. Requires an acyclic quiver.
    pub fn paths_from(&self, v: usize) -> Vec<(usize, Vec<usize>)> {
        let mut out = vec![(v, vec![])];
        let mut i = 0;
        while i < out.len() {
            let (end, path) = out[i].clone();
            for a in self.arrows_out_of(end) {
                let mut p = path.clone();
                p.push(a);
                out.push((self.target(a), p));
            }
            i += 1;
        }
        out
    }
}
