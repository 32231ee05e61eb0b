//! Finite subsets of the positive integers with the Gabriel-Roiter order.
//!
//! Two different sets compare by the smallest element of their symmetric
//! difference: the set containing it is the larger one. On characteristic
//! sequences this is the lexicographic order with `1 > 0`, so `{1,3} < {1,2}`
//! and `{1} < {1,3,5,...}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonempty strictly increasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrMeasure(Vec<u32>);

impl GrMeasure {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidMeasure("empty set".into()));
        }
        if elements[0] == 0 {
            return Err(Error::InvalidMeasure("elements must be positive".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMeasure(format!(
                "{elements:?} is not strictly increasing"
            )));
        }
        Ok(GrMeasure(elements))
    }

    /// The measure of a simple module.
    pub fn simple() -> Self {
        GrMeasure(vec![1])
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The maximal element; the length of every module with this measure.
    pub fn top(&self) -> u32 {
        *self.0.last().expect("measures are nonempty")
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `I.extend(m) = I ∪ {m}` for `m > top(I)`; one GR inclusion step.
    pub fn extend(&self, m: u32) -> Result<Self> {
        if m <= self.top() {
            return Err(Error::InvalidExtension {
                measure: self.to_string(),
                value: m,
            });
        }
        let mut v = self.0.clone();
        v.push(m);
        Ok(GrMeasure(v))
    }

    /// Extends an optional measure (`None` standing for the empty chain).
    pub fn extend_opt(base: Option<&GrMeasure>, m: u32) -> Result<Self> {
        match base {
            Some(b) => b.extend(m),
            None if m >= 1 => Ok(GrMeasure(vec![m])),
            None => Err(Error::InvalidMeasure("elements must be positive".into())),
        }
    }

    /// `self` starts with `prefix`: equal, or `prefix ⊂ self` with every new
    /// element above every element of `prefix`.
    pub fn starts_with(&self, prefix: &GrMeasure) -> bool {
        self.0.len() >= prefix.0.len() && self.0[..prefix.0.len()] == prefix.0[..]
    }

    /// Drops the top element; `None` for singletons.
    pub fn without_top(&self) -> Option<GrMeasure> {
        if self.0.len() <= 1 {
            None
        } else {
            Some(GrMeasure(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// The elements not exceeding `bound`, if any.
    pub fn truncate(&self, bound: u32) -> Option<GrMeasure> {
        let v: Vec<u32> = self.0.iter().copied().filter(|&x| x <= bound).collect();
        if v.is_empty() {
            None
        } else {
            Some(GrMeasure(v))
        }
    }
}

/// Order of two measures.
pub fn compare(i: &GrMeasure, j: &GrMeasure) -> Ordering {
    let (a, b) = (&i.0, &j.0);
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            Ordering::Equal => {
                x += 1;
                y += 1;
            }
            // a[x] is the smallest element of the symmetric difference and lies in I
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    match (x < a.len(), y < b.len()) {
        (false, false) => Ordering::Equal,
        (true, _) => Ordering::Greater,
        (_, true) => Ordering::Less,
    }
}

/// `J` starts with `I`.
pub fn starts_with(j: &GrMeasure, i: &GrMeasure) -> bool {
    j.starts_with(i)
}

/// The maximum of a nonempty list.
pub fn max_of<'a, I>(measures: I) -> Result<GrMeasure>
where
    I: IntoIterator<Item = &'a GrMeasure>,
{
    measures
        .into_iter()
        .max()
        .cloned()
        .ok_or(Error::Empty("max_of needs at least one measure"))
}

impl Ord for GrMeasure {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for GrMeasure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GrMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GrMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GrMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("measure must look like {{1,2,4}}: {s:?}")))?;
        let elements = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad element {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GrMeasure::new(elements)
    }
}

impl Serialize for GrMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GrMeasure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
