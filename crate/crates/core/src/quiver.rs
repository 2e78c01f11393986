//! Finite quivers without loops or 2-cycles, their mutation, and eventually
//! periodic orientation words describing quivers on the A-infinity line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex {0}")]
    UnknownVertex(i64),
    #[error("loop at vertex {0}")]
    Loop(i64),
    #[error("arrows in both directions between {0} and {1}")]
    TwoCycle(i64, i64),
    #[error("bad window [{lo}, {hi}]")]
    BadWindow { lo: i64, hi: i64 },
    #[error("bad arrow {0:?}, expected \"u->v\"")]
    BadArrow(String),
    #[error("bad orientation word {0:?}")]
    BadWord(String),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
}

/// A finite quiver on integer-labelled vertices. Arrows are a multiset,
/// stored as multiplicities per ordered pair.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuiverRepr", into = "QuiverRepr")]
pub struct Quiver {
    vertices: BTreeSet<i64>,
    arrows: BTreeMap<(i64, i64), u32>,
}

impl Quiver {
    pub fn new(vertices: impl IntoIterator<Item = i64>) -> Self {
        Quiver { vertices: vertices.into_iter().collect(), arrows: BTreeMap::new() }
    }

    /// Builds a quiver and checks the loop and 2-cycle invariants.
    pub fn from_arrows(
        vertices: impl IntoIterator<Item = i64>,
        arrows: impl IntoIterator<Item = (i64, i64)>,
    ) -> Result<Self, QuiverError> {
        let mut q = Quiver::new(vertices);
        for (u, v) in arrows {
            q.add_arrow(u, v)?;
        }
        Ok(q)
    }

    /// The linearly oriented quiver `1 -> 2 -> ... -> n`.
    pub fn linear_an(n: u32) -> Self {
        let n = i64::from(n);
        Quiver::from_arrows(1..=n, (1..n).map(|i| (i, i + 1))).expect("valid")
    }

    pub fn add_arrow(&mut self, u: i64, v: i64) -> Result<(), QuiverError> {
        for w in [u, v] {
            if !self.vertices.contains(&w) {
                return Err(QuiverError::UnknownVertex(w));
            }
        }
        if u == v {
            return Err(QuiverError::Loop(u));
        }
        if self.arrows.contains_key(&(v, u)) {
            return Err(QuiverError::TwoCycle(u, v));
        }
        *self.arrows.entry((u, v)).or_insert(0) += 1;
        Ok(())
    }

    pub fn add_vertex(&mut self, v: i64) {
        self.vertices.insert(v);
    }

    pub fn vertices(&self) -> &BTreeSet<i64> {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: i64) -> bool {
        self.vertices.contains(&v)
    }

    /// Arrows with multiplicity, in lexicographic order.
    pub fn arrows(&self) -> impl Iterator<Item = ((i64, i64), u32)> + '_ {
        self.arrows.iter().map(|(&k, &m)| (k, m))
    }

    /// Number of arrows `u -> v`.
    pub fn multiplicity(&self, u: i64, v: i64) -> u32 {
        self.arrows.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn num_arrows(&self) -> u32 {
        self.arrows.values().sum()
    }

    /// Arrows leaving `k`, as `(target, multiplicity)`.
    pub fn out_arrows(&self, k: i64) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.arrows.iter().filter(move |((u, _), _)| *u == k).map(|(&(_, v), &m)| (v, m))
    }

    /// Arrows entering `k`, as `(source, multiplicity)`.
    pub fn in_arrows(&self, k: i64) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.arrows.iter().filter(move |((_, v), _)| *v == k).map(|(&(u, _), &m)| (u, m))
    }

    /// Whether the loop and 2-cycle invariants hold. Always true for values
    /// built through this API; exposed for property tests.
    pub fn is_valid(&self) -> bool {
        self.arrows.iter().all(|(&(u, v), &m)| {
            m > 0
                && u != v
                && self.vertices.contains(&u)
                && self.vertices.contains(&v)
                && !self.arrows.contains_key(&(v, u))
        })
    }

    /// Mutation at `k`: compose every path `i -> k -> j` into an arrow
    /// `i -> j`, reverse the arrows at `k`, then cancel 2-cycles.
    pub fn mutate(&self, k: i64) -> Result<Quiver, QuiverError> {
        if !self.vertices.contains(&k) {
            return Err(QuiverError::UnknownVertex(k));
        }
        let ins: Vec<(i64, u32)> = self.in_arrows(k).collect();
        let outs: Vec<(i64, u32)> = self.out_arrows(k).collect();

        let mut count: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for (&(u, v), &m) in &self.arrows {
            let key = if u == k || v == k { (v, u) } else { (u, v) };
            *count.entry(key).or_insert(0) += i64::from(m);
        }
        for &(i, a) in &ins {
            for &(j, b) in &outs {
                *count.entry((i, j)).or_insert(0) += i64::from(a * b);
            }
        }

        let mut arrows = BTreeMap::new();
        for (&(u, v), &m) in &count {
            let back = count.get(&(v, u)).copied().unwrap_or(0);
            if m > back {
                arrows.insert((u, v), (m - back) as u32);
            }
        }
        Ok(Quiver { vertices: self.vertices.clone(), arrows })
    }

    /// The full subquiver on `keep`.
    pub fn restrict(&self, keep: &BTreeSet<i64>) -> Quiver {
        Quiver {
            vertices: self.vertices.intersection(keep).copied().collect(),
            arrows: self
                .arrows
                .iter()
                .filter(|((u, v), _)| keep.contains(u) && keep.contains(v))
                .map(|(&k, &m)| (k, m))
                .collect(),
        }
    }

    /// Renames vertices through `f`, which must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(i64) -> i64) -> Quiver {
        Quiver {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            arrows: self.arrows.iter().map(|(&(u, v), &m)| ((f(u), f(v)), m)).collect(),
        }
    }

    /// Skew-symmetric exchange matrix `b_uv = #(u -> v) - #(v -> u)`.
    pub fn to_matrix(&self) -> ExchangeMatrix {
        let labels: Vec<i64> = self.vertices.iter().copied().collect();
        let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = labels.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (&(u, v), &m) in &self.arrows {
            let (a, b) = (index[&u], index[&v]);
            entries[a][b] += i64::from(m);
            entries[b][a] -= i64::from(m);
        }
        ExchangeMatrix { labels, entries }
    }

    pub fn from_matrix(b: &ExchangeMatrix) -> Result<Quiver, QuiverError> {
        if !b.is_skew_symmetric() {
            return Err(QuiverError::NotSkewSymmetric);
        }
        let mut q = Quiver::new(b.labels.iter().copied());
        for (i, row) in b.entries.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e > 0 {
                    q.arrows.insert((b.labels[i], b.labels[j]), e as u32);
                }
            }
        }
        Ok(q)
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<BTreeSet<i64>> {
        let mut adj: BTreeMap<i64, Vec<i64>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in self.arrows.keys() {
            adj.get_mut(&u).expect("vertex").push(v);
            adj.get_mut(&v).expect("vertex").push(u);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(i64::to_string).collect();
        write!(f, "vertices: {}", vs.join(" "))?;
        for (&(u, v), &m) in &self.arrows {
            for _ in 0..m {
                write!(f, "\n{u}->{v}")?;
            }
        }
        Ok(())
    }
}

/// Wire form: `{"vertices": [..], "arrows": ["u->v", ..]}`, with parallel
/// arrows repeated.
#[derive(Serialize, Deserialize)]
struct QuiverRepr {
    vertices: Vec<i64>,
    arrows: Vec<String>,
}

impl From<Quiver> for QuiverRepr {
    fn from(q: Quiver) -> Self {
        let mut arrows = Vec::new();
        for (&(u, v), &m) in &q.arrows {
            for _ in 0..m {
                arrows.push(format!("{u}->{v}"));
            }
        }
        QuiverRepr { vertices: q.vertices.into_iter().collect(), arrows }
    }
}

impl TryFrom<QuiverRepr> for Quiver {
    type Error = QuiverError;
    fn try_from(r: QuiverRepr) -> Result<Self, Self::Error> {
        let arrows = r
            .arrows
            .iter()
            .map(|s| parse_arrow(s))
            .collect::<Result<Vec<_>, _>>()?;
        Quiver::from_arrows(r.vertices, arrows)
    }
}

pub fn parse_arrow(s: &str) -> Result<(i64, i64), QuiverError> {
    let bad = || QuiverError::BadArrow(s.to_string());
    let (u, v) = s.split_once("->").ok_or_else(bad)?;
    Ok((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
}

/// Skew-symmetric integer matrix with rows and columns indexed by `labels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeMatrix {
    pub labels: Vec<i64>,
    pub entries: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn get(&self, u: i64, v: i64) -> Option<i64> {
        let a = self.labels.iter().position(|&w| w == u)?;
        let b = self.labels.iter().position(|&w| w == v)?;
        Some(self.entries[a][b])
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.labels.len();
        self.entries.len() == n
            && self.entries.iter().all(|r| r.len() == n)
            && (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == -self.entries[j][i]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    /// `i -> i+1`
    R,
    /// `i <- i+1`
    L,
}

/// An eventually periodic orientation of the line `1 - 2 - 3 - ...`.
/// Letter `k` (1-based) orients the edge between `k` and `k+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientationWord {
    prefix: Vec<Dir>,
    period: Vec<Dir>,
}

impl OrientationWord {
    pub fn new(prefix: Vec<Dir>, period: Vec<Dir>) -> Result<Self, QuiverError> {
        if period.is_empty() {
            return Err(QuiverError::BadWord("empty period".into()));
        }
        Ok(OrientationWord { prefix, period })
    }

    pub fn prefix(&self) -> &[Dir] {
        &self.prefix
    }

    pub fn period(&self) -> &[Dir] {
        &self.period
    }

    /// Orientation of the edge `k - (k+1)`, for `k >= 1`.
    pub fn letter(&self, k: i64) -> Dir {
        assert!(k >= 1, "edges are numbered from 1");
        let i = (k - 1) as usize;
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// The finite window on vertices `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Quiver, QuiverError> {
        if lo < 1 || lo >= hi {
            return Err(QuiverError::BadWindow { lo, hi });
        }
        let arrows = (lo..hi).map(|k| match self.letter(k) {
            Dir::R => (k, k + 1),
            Dir::L => (k + 1, k),
        });
        Quiver::from_arrows(lo..=hi, arrows)
    }

    /// Whether the tail is constant, i.e. the word eventually contains a
    /// linearly oriented ray.
    pub fn has_linear_tail(&self) -> bool {
        self.period.iter().all(|&d| d == self.period[0])
    }

    /// First edge index from which the word is constant, if it ever is.
    pub fn linear_tail_start(&self) -> Option<i64> {
        if !self.has_linear_tail() {
            return None;
        }
        let d = self.period[0];
        let mut start = self.prefix.len();
        while start > 0 && self.prefix[start - 1] == d {
            start -= 1;
        }
        Some(start as i64 + 1)
    }
}

fn dir_char(d: Dir) -> char {
    match d {
        Dir::R => 'R',
        Dir::L => 'L',
    }
}

impl fmt::Display for OrientationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: String = self.prefix.iter().copied().map(dir_char).collect();
        let q: String = self.period.iter().copied().map(dir_char).collect();
        write!(f, "{p}|{q}")
    }
}

impl FromStr for OrientationWord {
    type Err = QuiverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QuiverError::BadWord(s.to_string());
        let (p, q) = s.trim().split_once('|').ok_or_else(bad)?;
        let letters = |t: &str| -> Result<Vec<Dir>, QuiverError> {
            t.chars()
                .map(|c| match c {
                    'R' | 'r' => Ok(Dir::R),
                    'L' | 'l' => Ok(Dir::L),
                    _ => Err(bad()),
                })
                .collect()
        };
        OrientationWord::new(letters(p)?, letters(q)?).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(vs: &[i64], arrows: &[(i64, i64)]) -> Quiver {
        Quiver::from_arrows(vs.iter().copied(), arrows.iter().copied()).unwrap()
    }

    #[test]
    fn sink_reversal() {
        assert_eq!(q(&[1, 2], &[(1, 2)]).mutate(2).unwrap(), q(&[1, 2], &[(2, 1)]));
    }

    #[test]
    fn path_composition() {
        let a3 = q(&[1, 2, 3], &[(1, 2), (2, 3)]);
        let m = a3.mutate(2).unwrap();
        assert_eq!(m, q(&[1, 2, 3], &[(2, 1), (3, 2), (1, 3)]));
        assert_eq!(m.mutate(2).unwrap(), a3);
    }

    #[test]
    fn linear_a4_involution() {
        let a4 = Quiver::linear_an(4);
        assert_eq!(a4.mutate(2).unwrap().mutate(2).unwrap(), a4);
    }

    #[test]
    fn cancellation_of_two_cycles() {
        // 1 -> 2 -> 3 -> 1: mutating at 2 creates 1 -> 3 which cancels 3 -> 1
        let c = q(&[1, 2, 3], &[(1, 2), (2, 3), (3, 1)]);
        let m = c.mutate(2).unwrap();
        assert_eq!(m, q(&[1, 2, 3], &[(2, 1), (3, 2)]));
        assert!(m.is_valid());
    }

    #[test]
    fn mutation_errors() {
        assert_eq!(Quiver::linear_an(2).mutate(7), Err(QuiverError::UnknownVertex(7)));
        assert_eq!(Quiver::from_arrows([1], [(1, 1)]), Err(QuiverError::Loop(1)));
        assert_eq!(Quiver::from_arrows([1, 2], [(1, 2), (2, 1)]), Err(QuiverError::TwoCycle(2, 1)));
    }

    #[test]
    fn linear_an_shapes() {
        assert_eq!(Quiver::linear_an(1), q(&[1], &[]));
        assert_eq!(Quiver::linear_an(2), q(&[1, 2], &[(1, 2)]));
        assert_eq!(Quiver::linear_an(4), q(&[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4)]));
    }

    #[test]
    fn matrices() {
        let b = q(&[1, 2], &[(1, 2)]).to_matrix();
        assert_eq!((b.get(1, 2), b.get(2, 1)), (Some(1), Some(-1)));
        let e = Quiver::new([1, 2, 3]).to_matrix();
        assert!(e.entries.iter().flatten().all(|&x| x == 0));
        let t = q(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)]).to_matrix();
        assert_eq!(t.get(1, 3), Some(1));
        assert!(t.is_skew_symmetric());
        assert_eq!(Quiver::from_matrix(&t).unwrap().to_matrix(), t);
    }

    #[test]
    fn word_windows() {
        let w: OrientationWord = "|R".parse().unwrap();
        assert_eq!(w.window(1, 4).unwrap(), Quiver::linear_an(4));
        let w: OrientationWord = "|RL".parse().unwrap();
        assert_eq!(w.window(1, 4).unwrap(), q(&[1, 2, 3, 4], &[(1, 2), (3, 2), (3, 4)]));
        let w: OrientationWord = "L|R".parse().unwrap();
        assert_eq!(w.window(1, 3).unwrap(), q(&[1, 2, 3], &[(2, 1), (2, 3)]));
        assert_eq!(w.window(0, 3), Err(QuiverError::BadWindow { lo: 0, hi: 3 }));
        assert_eq!(w.window(3, 3), Err(QuiverError::BadWindow { lo: 3, hi: 3 }));
    }

    #[test]
    fn linear_tails() {
        let t = |s: &str| s.parse::<OrientationWord>().unwrap().has_linear_tail();
        assert!(t("|R"));
        assert!(!t("|RL"));
        assert!(t("RRRL|LL"));
        assert!(t("RL|L"));
        assert_eq!("RRRL|LL".parse::<OrientationWord>().unwrap().linear_tail_start(), Some(4));
        assert_eq!("|RL".parse::<OrientationWord>().unwrap().linear_tail_start(), None);
    }

    #[test]
    fn word_round_trip_and_errors() {
        for s in ["|RL", "RRRL|LL", "L|R"] {
            assert_eq!(s.parse::<OrientationWord>().unwrap().to_string(), s);
        }
        assert!("RL|".parse::<OrientationWord>().is_err());
        assert!("RX|R".parse::<OrientationWord>().is_err());
        assert!("RL".parse::<OrientationWord>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = q(&[-1, 0, 5], &[(-1, 0), (-1, 0), (5, 0)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"vertices":[-1,0,5],"arrows":["-1->0","-1->0","5->0"]}"#);
        assert_eq!(serde_json::from_str::<Quiver>(&s).unwrap(), a);
        assert!(serde_json::from_str::<Quiver>(r#"{"vertices":[1],"arrows":["1->2"]}"#).is_err());
    }

    #[test]
    fn components_of_disjoint_rays() {
        let a = q(&[1, 2, 3, 4], &[(1, 2), (4, 3)]);
        assert_eq!(a.components(), vec![BTreeSet::from([1, 2]), BTreeSet::from([3, 4])]);
    }
}
