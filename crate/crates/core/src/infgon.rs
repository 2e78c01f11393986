//! Arcs and triangulations of the infinity-gon, the strip with one marked
//! point per integer.
//!
//! A triangulation is infinite, so it is presented as a [`BaseFamily`] with a
//! closed form plus a finite list of flips. [`ArcSet`] answers membership and
//! incidence queries exactly for such presentations (and for finite
//! perturbations that are not triangulations, which tests use as negative
//! controls). Everything a query needs is finite: a vertex meets either
//! finitely many arcs on a side or a whole fan.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::quiver::{Dir, OrientationWord, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InfgonError {
    #[error("({0},{1}) is not an arc: need m < n")]
    BadArc(i64, i64),
    #[error("{0} is a boundary arc")]
    BoundaryArc(Arc),
    #[error("bad window [{lo}, {hi}]")]
    BadWindow { lo: i64, hi: i64 },
    #[error("{0} is not in the triangulation")]
    NotInTriangulation(Arc),
    #[error("{0} is frozen: it bounds a single triangle")]
    FrozenArc(Arc),
    #[error("invalid frozen-gap polygon: {0}")]
    BadInner(String),
    #[error("flip #{index} of {arc} rejected: {source}")]
    BadFlip {
        index: usize,
        arc: Arc,
        #[source]
        source: Box<InfgonError>,
    },
}

/// An arc `(m, n)` with `m < n`; boundary when `n - m = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Arc {
    pub m: i64,
    pub n: i64,
}

impl Arc {
    pub fn new(m: i64, n: i64) -> Result<Self, InfgonError> {
        if m < n {
            Ok(Arc { m, n })
        } else {
            Err(InfgonError::BadArc(m, n))
        }
    }

    pub fn gap(self) -> i64 {
        self.n - self.m
    }

    pub fn is_boundary(self) -> bool {
        self.gap() == 1
    }

    pub fn is_internal(self) -> bool {
        self.gap() >= 2
    }
}

impl TryFrom<(i64, i64)> for Arc {
    type Error = InfgonError;
    fn try_from((m, n): (i64, i64)) -> Result<Self, Self::Error> {
        Arc::new(m, n)
    }
}

impl From<Arc> for (i64, i64) {
    fn from(a: Arc) -> Self {
        (a.m, a.n)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl std::str::FromStr for Arc {
    type Err = InfgonError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InfgonError::BadArc(0, 0);
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        let m = a.trim().parse().map_err(|_| bad())?;
        let n = b.trim().parse().map_err(|_| bad())?;
        Arc::new(m, n)
    }
}

fn arc(m: i64, n: i64) -> Arc {
    Arc { m, n }
}

pub fn cross(a: Arc, b: Arc) -> bool {
    (a.m < b.m && b.m < a.n && a.n < b.n) || (b.m < a.m && a.m < b.n && b.n < a.n)
}

/// Whether `w = (s,t)` spans `d = (u,v)`: `s <= u < v < t` or `s < u < v <= t`.
pub fn spans(w: Arc, d: Arc) -> bool {
    let (s, t, u, v) = (w.m, w.n, d.m, d.n);
    (s <= u && u < v && v < t) || (s < u && u < v && v <= t)
}

/// Internal arcs spanned by an internal arc `w`.
pub fn spanned_arcs(w: Arc) -> Result<Vec<Arc>, InfgonError> {
    if !w.is_internal() {
        return Err(InfgonError::BoundaryArc(w));
    }
    let mut out = Vec::new();
    for u in w.m..w.n {
        for v in u + 2..=w.n {
            let d = arc(u, v);
            if spans(w, d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZigzagVariant {
    Left,
    Right,
}

/// Closed-form triangulations. Arcs are listed relative to the anchor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BaseFamily {
    /// Left: `(-n, n)` and `(-n, n+1)` for `n >= 1`, shifted by `n0`.
    /// Right: `(-n, n)` and `(-n-1, n)`.
    Zigzag { n0: i64, variant: ZigzagVariant },
    /// `(m, v)` for `m <= v-2` and `(v, p)` for `p >= v+2`.
    Fountain { v: i64 },
    /// `(m, m0)` for `m <= m0-2` and `(m0+1, p)` for `p >= m0+3`.
    #[serde(rename = "splitfountain")]
    SplitFountain { m0: i64 },
    /// Fans into `m0` and out of `n0`, the arc `(m0, n0)`, and a
    /// triangulation `inner` of the polygon on `m0..=n0`.
    #[serde(rename = "frozengap")]
    FrozenGap {
        m0: i64,
        n0: i64,
        #[serde(default)]
        inner: Vec<Arc>,
    },
}

/// The arcs at a vertex on one side: finitely many far endpoints, or a fan
/// (left: every `m <= bound`; right: every `p >= bound`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Side {
    Finite(Vec<i64>),
    Fan(i64),
}

impl BaseFamily {
    pub fn zigzag_left(n0: i64) -> Self {
        BaseFamily::Zigzag { n0, variant: ZigzagVariant::Left }
    }

    /// Checks the family parameters.
    pub fn validate(&self) -> Result<(), InfgonError> {
        let BaseFamily::FrozenGap { m0, n0, inner } = self else {
            return Ok(());
        };
        let (m0, n0) = (*m0, *n0);
        if n0 - m0 < 2 {
            return Err(InfgonError::BadInner(format!("gap {} < 2", n0 - m0)));
        }
        let set: BTreeSet<Arc> = inner.iter().copied().collect();
        if set.len() != inner.len() {
            return Err(InfgonError::BadInner("repeated arc".into()));
        }
        for &a in inner {
            if !a.is_internal() || a.m < m0 || a.n > n0 || a == arc(m0, n0) {
                return Err(InfgonError::BadInner(format!("{a} is not a diagonal of the polygon")));
            }
        }
        for (i, &a) in inner.iter().enumerate() {
            if let Some(&b) = inner[i + 1..].iter().find(|&&b| cross(a, b)) {
                return Err(InfgonError::BadInner(format!("{a} crosses {b}")));
            }
        }
        let want = (n0 - m0 - 2) as usize;
        if inner.len() != want {
            return Err(InfgonError::BadInner(format!(
                "{} diagonals, a triangulation needs {want}",
                inner.len()
            )));
        }
        Ok(())
    }

    pub fn left_side(&self, v: i64) -> Side {
        match *self {
            BaseFamily::Zigzag { n0, variant } => {
                let w = v - n0;
                let far = match variant {
                    ZigzagVariant::Left if w == 1 => vec![-1],
                    ZigzagVariant::Left if w >= 2 => vec![-w, -w + 1],
                    ZigzagVariant::Right if w >= 1 => vec![-w - 1, -w],
                    _ => vec![],
                };
                Side::Finite(far.into_iter().map(|x| x + n0).collect())
            }
            BaseFamily::Fountain { v: c } => {
                if v == c {
                    Side::Fan(c - 2)
                } else if v >= c + 2 {
                    Side::Finite(vec![c])
                } else {
                    Side::Finite(vec![])
                }
            }
            BaseFamily::SplitFountain { m0 } => {
                if v == m0 {
                    Side::Fan(m0 - 2)
                } else if v >= m0 + 3 {
                    Side::Finite(vec![m0 + 1])
                } else {
                    Side::Finite(vec![])
                }
            }
            BaseFamily::FrozenGap { m0, n0, ref inner } => {
                if v == m0 {
                    Side::Fan(m0 - 2)
                } else if v > m0 && v <= n0 {
                    let mut far: Vec<i64> = inner.iter().filter(|a| a.n == v).map(|a| a.m).collect();
                    if v == n0 {
                        far.push(m0);
                    }
                    far.sort_unstable();
                    Side::Finite(far)
                } else if v >= n0 + 2 {
                    Side::Finite(vec![n0])
                } else {
                    Side::Finite(vec![])
                }
            }
        }
    }

    pub fn right_side(&self, v: i64) -> Side {
        match *self {
            BaseFamily::Zigzag { n0, variant } => {
                let w = v - n0;
                let far = match variant {
                    ZigzagVariant::Left if w <= -1 => vec![-w, -w + 1],
                    ZigzagVariant::Right if w <= -2 => vec![-w - 1, -w],
                    ZigzagVariant::Right if w == -1 => vec![1],
                    _ => vec![],
                };
                Side::Finite(far.into_iter().map(|x| x + n0).collect())
            }
            BaseFamily::Fountain { v: c } => {
                if v == c {
                    Side::Fan(c + 2)
                } else if v <= c - 2 {
                    Side::Finite(vec![c])
                } else {
                    Side::Finite(vec![])
                }
            }
            BaseFamily::SplitFountain { m0 } => {
                if v == m0 + 1 {
                    Side::Fan(m0 + 3)
                } else if v <= m0 - 2 {
                    Side::Finite(vec![m0])
                } else {
                    Side::Finite(vec![])
                }
            }
            BaseFamily::FrozenGap { m0, n0, ref inner } => {
                if v == n0 {
                    Side::Fan(n0 + 2)
                } else if v >= m0 && v < n0 {
                    let mut far: Vec<i64> = inner.iter().filter(|a| a.m == v).map(|a| a.n).collect();
                    if v == m0 {
                        far.push(n0);
                    }
                    far.sort_unstable();
                    Side::Finite(far)
                } else if v <= m0 - 2 {
                    Side::Finite(vec![m0])
                } else {
                    Side::Finite(vec![])
                }
            }
        }
    }

    pub fn contains(&self, a: Arc) -> bool {
        if !a.is_internal() {
            return false;
        }
        match self.right_side(a.m) {
            Side::Fan(b) => a.n >= b,
            Side::Finite(far) => far.contains(&a.n),
        }
    }

    /// `(left fountain, right fountain)`.
    pub fn fountains(&self) -> (Option<i64>, Option<i64>) {
        match *self {
            BaseFamily::Zigzag { .. } => (None, None),
            BaseFamily::Fountain { v } => (Some(v), Some(v)),
            BaseFamily::SplitFountain { m0 } => (Some(m0), Some(m0 + 1)),
            BaseFamily::FrozenGap { m0, n0, .. } => (Some(m0), Some(n0)),
        }
    }
}

pub type Triangle = [i64; 3];

/// A base family with finitely many arcs removed and added.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcSet {
    base: BaseFamily,
    removed: BTreeSet<Arc>,
    added: BTreeSet<Arc>,
}

impl ArcSet {
    pub fn new(base: BaseFamily) -> Self {
        ArcSet { base, removed: BTreeSet::new(), added: BTreeSet::new() }
    }

    pub fn base(&self) -> &BaseFamily {
        &self.base
    }

    /// The set without `a` (no triangulation check).
    pub fn without(&self, a: Arc) -> ArcSet {
        let mut s = self.clone();
        s.remove(a);
        s
    }

    /// The set with `a` added (no triangulation check).
    pub fn with(&self, a: Arc) -> ArcSet {
        let mut s = self.clone();
        s.insert(a);
        s
    }

    fn remove(&mut self, a: Arc) {
        if !self.added.remove(&a) && self.base.contains(a) {
            self.removed.insert(a);
        }
    }

    fn insert(&mut self, a: Arc) {
        if !a.is_internal() {
            return;
        }
        if !self.removed.remove(&a) && !self.base.contains(a) {
            self.added.insert(a);
        }
    }

    pub fn contains(&self, a: Arc) -> bool {
        a.is_internal()
            && (self.added.contains(&a) || (!self.removed.contains(&a) && self.base.contains(a)))
    }

    pub fn contains_or_boundary(&self, a: Arc) -> bool {
        a.is_boundary() || self.contains(a)
    }

    /// Far endpoints of all arcs `(m, v)`, if finitely many.
    pub fn left_finite(&self, v: i64) -> Option<Vec<i64>> {
        let Side::Finite(far) = self.base.left_side(v) else {
            return None;
        };
        let mut out: BTreeSet<i64> =
            far.into_iter().filter(|&m| !self.removed.contains(&arc(m, v))).collect();
        out.extend(self.added.iter().filter(|a| a.n == v).map(|a| a.m));
        Some(out.into_iter().collect())
    }

    /// Far endpoints of all arcs `(v, p)`, if finitely many.
    pub fn right_finite(&self, v: i64) -> Option<Vec<i64>> {
        let Side::Finite(far) = self.base.right_side(v) else {
            return None;
        };
        let mut out: BTreeSet<i64> =
            far.into_iter().filter(|&p| !self.removed.contains(&arc(v, p))).collect();
        out.extend(self.added.iter().filter(|a| a.m == v).map(|a| a.n));
        Some(out.into_iter().collect())
    }

    /// Far endpoints `p <= hi` of arcs `(v, p)`, ascending.
    pub fn right_upto(&self, v: i64, hi: i64) -> Vec<i64> {
        match self.right_finite(v) {
            Some(far) => far.into_iter().filter(|&p| p <= hi).collect(),
            None => (v + 2..=hi).filter(|&p| self.contains(arc(v, p))).collect(),
        }
    }

    /// Far endpoints `m >= lo` of arcs `(m, v)`, ascending.
    pub fn left_from(&self, v: i64, lo: i64) -> Vec<i64> {
        match self.left_finite(v) {
            Some(far) => far.into_iter().filter(|&m| m >= lo).collect(),
            None => (lo..=v - 2).filter(|&m| self.contains(arc(m, v))).collect(),
        }
    }

    /// Whether some arc `(v, p)` has `p > bound`.
    fn reaches_right_of(&self, v: i64, bound: i64) -> bool {
        match self.right_finite(v) {
            Some(far) => far.last().is_some_and(|&p| p > bound),
            None => true,
        }
    }

    /// Whether some arc `(m, v)` has `m < bound`.
    fn reaches_left_of(&self, v: i64, bound: i64) -> bool {
        match self.left_finite(v) {
            Some(far) => far.first().is_some_and(|&m| m < bound),
            None => true,
        }
    }

    /// Whether some arc of the set crosses `a`.
    pub fn crosses_some(&self, a: Arc) -> bool {
        (a.m + 1..a.n).any(|c| self.reaches_right_of(c, a.n) || self.reaches_left_of(c, a.m))
    }

    pub fn arcs_in_window(&self, lo: i64, hi: i64) -> Result<Vec<Arc>, InfgonError> {
        check_window(lo, hi)?;
        Ok((lo..hi).flat_map(|v| self.right_upto(v, hi).into_iter().map(move |p| arc(v, p))).collect())
    }

    pub fn is_non_crossing(&self, lo: i64, hi: i64) -> Result<bool, InfgonError> {
        let arcs = self.arcs_in_window(lo, hi)?;
        Ok(arcs.iter().enumerate().all(|(i, &a)| arcs[i + 1..].iter().all(|&b| !cross(a, b))))
    }

    /// Every internal arc inside the window is in the set or crosses an arc
    /// of the set (possibly one leaving the window).
    pub fn is_locally_max(&self, lo: i64, hi: i64) -> Result<bool, InfgonError> {
        self.is_locally_max_with(lo, hi, Exec::default())
    }

    pub fn is_locally_max_with(&self, lo: i64, hi: i64, exec: Exec) -> Result<bool, InfgonError> {
        check_window(lo, hi)?;
        let uncovered = exec.flat_map_range(lo, hi, |u| {
            (u + 2..=hi)
                .map(|v| arc(u, v))
                .filter(|&a| !self.contains(a) && !self.crosses_some(a))
                .collect()
        });
        Ok(uncovered.is_empty())
    }

    /// The triangles with side `a`, each listed as `u < v < w`.
    pub fn adjacent_triangles(&self, a: Arc) -> Result<Vec<Triangle>, InfgonError> {
        if !self.contains(a) {
            return Err(InfgonError::NotInTriangulation(a));
        }
        let (u, w) = (a.m, a.n);
        let mut out = Vec::new();
        for v in u + 1..w {
            if self.contains_or_boundary(arc(u, v)) && self.contains_or_boundary(arc(v, w)) {
                out.push([u, v, w]);
            }
        }

        let left: BTreeSet<i64> = match (self.left_finite(u), self.left_finite(w)) {
            (Some(far), _) => far.into_iter().chain([u - 1]).collect(),
            (None, Some(far)) => far.into_iter().filter(|&p| p < u).collect(),
            (None, None) => BTreeSet::new(),
        };
        for p in left {
            if self.contains_or_boundary(arc(p, u)) && self.contains(arc(p, w)) {
                out.push([p, u, w]);
            }
        }
        let right: BTreeSet<i64> = match (self.right_finite(w), self.right_finite(u)) {
            (Some(far), _) => far.into_iter().chain([w + 1]).collect(),
            (None, Some(far)) => far.into_iter().filter(|&p| p > w).collect(),
            (None, None) => BTreeSet::new(),
        };
        for p in right {
            if self.contains(arc(u, p)) && self.contains_or_boundary(arc(w, p)) {
                out.push([u, w, p]);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The arc replacing `a` under a flip, without applying it.
    pub fn flip_target(&self, a: Arc) -> Result<Arc, InfgonError> {
        let tris = self.adjacent_triangles(a)?;
        let [t1, t2] = tris.as_slice() else {
            return Err(InfgonError::FrozenArc(a));
        };
        let apex = |t: &Triangle| *t.iter().find(|&&x| x != a.m && x != a.n).expect("apex");
        let (p, q) = (apex(t1), apex(t2));
        Ok(arc(p.min(q), p.max(q)))
    }

    /// Flips `a` in place, returning the new arc.
    fn flip_in_place(&mut self, a: Arc) -> Result<Arc, InfgonError> {
        let b = self.flip_target(a)?;
        self.remove(a);
        self.insert(b);
        Ok(b)
    }

    pub fn fountains(&self) -> (Option<i64>, Option<i64>) {
        self.base.fountains()
    }

    pub fn frozen_arcs(&self, lo: i64, hi: i64) -> Result<Vec<Arc>, InfgonError> {
        let arcs = self.arcs_in_window(lo, hi)?;
        Ok(arcs
            .into_iter()
            .filter(|&a| self.adjacent_triangles(a).map(|t| t.len() == 1).unwrap_or(false))
            .collect())
    }

    /// `Q_T` on the arcs inside the window. For a triangle `u < v < w` with
    /// sides `s1 = (u,v)`, `s2 = (v,w)`, `s3 = (u,w)` the arrows are
    /// `s1 -> s3 -> s2 -> s1`, kept when both ends are window arcs.
    pub fn quiver_of(&self, lo: i64, hi: i64) -> Result<ArcQuiver, InfgonError> {
        let arcs = self.arcs_in_window(lo, hi)?;
        let inside: BTreeSet<Arc> = arcs.iter().copied().collect();
        let mut triangles = BTreeSet::new();
        for &a in &arcs {
            triangles.extend(self.adjacent_triangles(a)?);
        }
        let mut count: BTreeMap<(Arc, Arc), i64> = BTreeMap::new();
        for [u, v, w] in triangles {
            let (s1, s2, s3) = (arc(u, v), arc(v, w), arc(u, w));
            for (x, y) in [(s1, s3), (s3, s2), (s2, s1)] {
                if inside.contains(&x) && inside.contains(&y) {
                    *count.entry((x, y)).or_insert(0) += 1;
                }
            }
        }
        let mut quiver = Quiver::new(arcs.iter().map(|&a| arc_label(a)));
        for (&(x, y), &c) in &count {
            let back = count.get(&(y, x)).copied().unwrap_or(0);
            for _ in 0..(c - back).max(0) {
                quiver.add_arrow(arc_label(x), arc_label(y)).expect("window arcs");
            }
        }
        Ok(ArcQuiver { quiver, arcs })
    }
}

fn check_window(lo: i64, hi: i64) -> Result<(), InfgonError> {
    if lo < hi {
        Ok(())
    } else {
        Err(InfgonError::BadWindow { lo, hi })
    }
}

const LABEL_SHIFT: i64 = 1 << 32;

/// Integer vertex label of an arc in [`ArcQuiver`]; inverse of [`label_arc`].
pub fn arc_label(a: Arc) -> i64 {
    a.m * LABEL_SHIFT + (a.n - a.m)
}

pub fn label_arc(label: i64) -> Arc {
    let m = label.div_euclid(LABEL_SHIFT);
    arc(m, m + label.rem_euclid(LABEL_SHIFT))
}

/// A window of `Q_T`, with vertices labelled by [`arc_label`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcQuiver {
    pub quiver: Quiver,
    pub arcs: Vec<Arc>,
}

impl ArcQuiver {
    /// Arrows as arc pairs, with multiplicity.
    pub fn arc_arrows(&self) -> Vec<(Arc, Arc, u32)> {
        self.quiver.arrows().map(|((u, v), m)| (label_arc(u), label_arc(v), m)).collect()
    }

    /// Relabels through `f`; arcs outside its domain are dropped.
    pub fn relabel(&self, f: &BTreeMap<Arc, i64>) -> Quiver {
        let keep: BTreeSet<i64> = f.keys().map(|&a| arc_label(a)).collect();
        self.quiver.restrict(&keep).relabel(|l| f[&label_arc(l)])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TriType {
    I,
    II,
    III(u64),
}

impl fmt::Display for TriType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriType::I => write!(f, "I"),
            TriType::II => write!(f, "II"),
            TriType::III(k) => write!(f, "III {k}"),
        }
    }
}

/// A triangulation given as a base family and a list of flips applied in
/// order. Flips are validated when the presentation is built.
#[derive(Debug, Clone)]
pub struct TriPresentation {
    base: BaseFamily,
    flips: Vec<Arc>,
    produced: Vec<Arc>,
    set: ArcSet,
}

impl PartialEq for TriPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.flips == other.flips
    }
}

impl Eq for TriPresentation {}

impl TriPresentation {
    pub fn new(base: BaseFamily, flips: Vec<Arc>) -> Result<Self, InfgonError> {
        base.validate()?;
        let mut t = TriPresentation {
            set: ArcSet::new(base.clone()),
            base,
            flips: Vec::new(),
            produced: Vec::new(),
        };
        for (index, &a) in flips.iter().enumerate() {
            t = t.flip(a).map_err(|e| InfgonError::BadFlip { index, arc: a, source: Box::new(e) })?;
        }
        Ok(t)
    }

    pub fn from_base(base: BaseFamily) -> Result<Self, InfgonError> {
        TriPresentation::new(base, Vec::new())
    }

    pub fn base(&self) -> &BaseFamily {
        &self.base
    }

    pub fn flips(&self) -> &[Arc] {
        &self.flips
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.set
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.set.contains(a)
    }

    /// Flips `a`. Flipping back the arc produced by the previous flip
    /// cancels that flip, so a flip followed by its reverse restores an
    /// equal presentation.
    pub fn flip(&self, a: Arc) -> Result<TriPresentation, InfgonError> {
        let mut t = self.clone();
        let b = t.set.flip_in_place(a)?;
        if t.produced.last() == Some(&a) && t.flips.last() == Some(&b) {
            t.flips.pop();
            t.produced.pop();
        } else {
            t.flips.push(a);
            t.produced.push(b);
        }
        Ok(t)
    }

    pub fn adjacent_triangles(&self, a: Arc) -> Result<Vec<Triangle>, InfgonError> {
        self.set.adjacent_triangles(a)
    }

    pub fn arcs_in_window(&self, lo: i64, hi: i64) -> Result<Vec<Arc>, InfgonError> {
        self.set.arcs_in_window(lo, hi)
    }

    pub fn fountains(&self) -> (Option<i64>, Option<i64>) {
        self.base.fountains()
    }

    pub fn classify(&self) -> TriType {
        classify_fountains(self.fountains())
    }

    /// The frozen arc, which joins the two fountains when they are at least
    /// two apart.
    pub fn frozen_arc(&self) -> Option<Arc> {
        match self.fountains() {
            (Some(l), Some(r)) if r - l >= 2 => Some(arc(l, r)),
            _ => None,
        }
    }

    pub fn quiver_of(&self, lo: i64, hi: i64) -> Result<ArcQuiver, InfgonError> {
        self.set.quiver_of(lo, hi)
    }
}

fn classify_fountains(f: (Option<i64>, Option<i64>)) -> TriType {
    match f {
        (Some(l), Some(r)) if r - l >= 2 => {
            let g = (r - l) as u64;
            TriType::III((g + 1) * (g - 2) / 2)
        }
        (Some(_), Some(_)) => TriType::II,
        _ => TriType::I,
    }
}

/// Connected flip components, as determined by the type: one for I, two
/// fountain sides for II, the two sides plus the polygon under the frozen
/// arc for III (that polygon has no diagonal when k = 0).
pub fn component_count(t: TriType) -> u32 {
    match t {
        TriType::I => 1,
        TriType::II | TriType::III(0) => 2,
        TriType::III(_) => 3,
    }
}

pub fn congruent(a: &TriPresentation, b: &TriPresentation) -> bool {
    a.classify() == b.classify()
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    base: BaseFamily,
    #[serde(default)]
    flips: Vec<Arc>,
}

impl Serialize for TriPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PresentationRepr { base: self.base.clone(), flips: self.flips.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PresentationRepr::deserialize(d)?;
        TriPresentation::new(r.base, r.flips).map_err(serde::de::Error::custom)
    }
}

/// Whether the word's quiver is `Q_T` for some triangulation: exactly when
/// it has no linearly oriented tail.
pub fn realizable_as_qt(w: &OrientationWord) -> bool {
    !w.has_linear_tail()
}

/// A triangulation whose quiver contains the word's quiver as a full
/// subquiver, with vertex `i` of the word sent to `gamma(i)`.
#[derive(Debug, Clone)]
pub enum Embedding {
    /// The word has no linear tail; nothing to build.
    Identity,
    Fountain { presentation: Box<TriPresentation>, snake: Vec<Arc>, tail: Dir },
}

impl Embedding {
    /// Image of vertex `i >= 1` of the word.
    pub fn gamma(&self, i: i64) -> Option<Arc> {
        let Embedding::Fountain { snake, tail, .. } = self else {
            return None;
        };
        let k = snake.len() as i64;
        if i < 1 {
            return None;
        }
        if i <= k {
            return Some(snake[i as usize - 1]);
        }
        let last = snake[k as usize - 1];
        Some(match tail {
            Dir::R => arc(last.m, last.n + (i - k)),
            Dir::L => arc(last.m - (i - k), last.n),
        })
    }
}

/// Embeds a word with a linear tail into a fountain triangulation: vertex 1
/// goes to `(0,2)` and each letter grows the arc by one step (R moves the
/// right end, L the left end), so the tail runs along the fan and the other
/// fan of the fountain is the opposite ray.
pub fn embed_in_qt(w: &OrientationWord) -> Result<Embedding, InfgonError> {
    let Some(start) = w.linear_tail_start() else {
        return Ok(Embedding::Identity);
    };
    let mut snake = vec![arc(0, 2)];
    for k in 1..start {
        let g = *snake.last().expect("nonempty");
        snake.push(match w.letter(k) {
            Dir::R => arc(g.m, g.n + 1),
            Dir::L => arc(g.m - 1, g.n),
        });
    }
    let tail = w.period()[0];
    let outer = *snake.last().expect("nonempty");
    let centre = match tail {
        Dir::R => outer.m,
        Dir::L => outer.n,
    };
    let base = BaseFamily::Fountain { v: centre };

    // Start from the snake inside the polygon under `outer` and flip towards
    // the fan at `centre`; the reversed sequence turns the fan into the snake.
    let mut set = ArcSet::new(base.clone());
    for p in outer.m..=outer.n {
        for q in p + 2..=outer.n {
            if arc(p, q) != outer {
                set.remove(arc(p, q));
            }
        }
    }
    for &g in &snake[..snake.len() - 1] {
        set.insert(g);
    }
    let mut produced = Vec::new();
    loop {
        let mut nbrs: Vec<i64> = (outer.m..=outer.n)
            .filter(|&p| p != centre && ((p - centre).abs() == 1 || set.contains(arc(p.min(centre), p.max(centre)))))
            .collect();
        nbrs.sort_unstable();
        let Some(pair) = nbrs.windows(2).find(|p| p[1] - p[0] >= 2) else {
            break;
        };
        let b = set.flip_in_place(arc(pair[0], pair[1]))?;
        produced.push(b);
    }
    produced.reverse();
    let presentation = TriPresentation::new(base, produced)?;
    Ok(Embedding::Fountain { presentation: Box::new(presentation), snake, tail })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> TriPresentation {
        TriPresentation::from_base(BaseFamily::zigzag_left(0)).unwrap()
    }

    fn tprime() -> TriPresentation {
        TriPresentation::from_base(BaseFamily::FrozenGap { m0: -1, n0: 1, inner: vec![] }).unwrap()
    }

    fn fountain(v: i64) -> TriPresentation {
        TriPresentation::from_base(BaseFamily::Fountain { v }).unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(cross(arc(0, 2), arc(1, 3)));
        assert!(!cross(arc(0, 2), arc(2, 4)));
        assert!(!cross(arc(-1, 1), arc(-3, -1)));
        assert!(!cross(arc(0, 2), arc(0, 2)));
    }

    #[test]
    fn spanning_examples() {
        assert!(spans(arc(0, 3), arc(0, 2)));
        assert!(!spans(arc(0, 3), arc(0, 3)));
        assert!(spanned_arcs(arc(-1, 1)).unwrap().is_empty());
        assert_eq!(spanned_arcs(arc(0, 3)).unwrap(), vec![arc(0, 2), arc(1, 3)]);
        assert_eq!(spanned_arcs(arc(0, 4)).unwrap().len(), 5);
        assert_eq!(spanned_arcs(arc(0, 1)), Err(InfgonError::BoundaryArc(arc(0, 1))));
    }

    #[test]
    fn membership() {
        assert!(zz().contains(arc(-2, 2)));
        assert!(zz().contains(arc(-2, 3)));
        assert!(!zz().contains(arc(-2, 1)));
        assert!(fountain(0).contains(arc(0, 5)));
        assert!(tprime().contains(arc(-1, 1)));
        let right = ArcSet::new(BaseFamily::Zigzag { n0: 0, variant: ZigzagVariant::Right });
        assert!(right.contains(arc(-2, 1)) && right.contains(arc(-2, 2)) && !right.contains(arc(-2, 3)));
    }

    #[test]
    fn windows() {
        assert_eq!(zz().arcs_in_window(-2, 2).unwrap(), vec![arc(-2, 2), arc(-1, 1), arc(-1, 2)]);
        assert_eq!(
            fountain(0).arcs_in_window(-3, 3).unwrap(),
            vec![arc(-3, 0), arc(-2, 0), arc(0, 2), arc(0, 3)]
        );
        assert!(zz().arcs_in_window(0, 1).unwrap().is_empty());
        assert_eq!(zz().arcs_in_window(2, 2), Err(InfgonError::BadWindow { lo: 2, hi: 2 }));
    }

    #[test]
    fn local_maximality() {
        assert!(zz().arcs().is_locally_max(-10, 10).unwrap());
        let holed = zz().arcs().without(arc(-1, 2));
        assert!(!holed.is_locally_max(-10, 10).unwrap());
    }

    #[test]
    fn triangles() {
        assert_eq!(zz().adjacent_triangles(arc(-1, 1)).unwrap(), vec![[-1, 0, 1], [-1, 1, 2]]);
        assert_eq!(tprime().adjacent_triangles(arc(-1, 1)).unwrap(), vec![[-1, 0, 1]]);
        assert_eq!(fountain(0).adjacent_triangles(arc(0, 2)).unwrap(), vec![[0, 1, 2], [0, 2, 3]]);
        assert_eq!(
            zz().adjacent_triangles(arc(0, 2)),
            Err(InfgonError::NotInTriangulation(arc(0, 2)))
        );
    }

    #[test]
    fn flips() {
        let t = zz().flip(arc(-1, 1)).unwrap();
        assert!(t.contains(arc(0, 2)) && !t.contains(arc(-1, 1)));
        assert_eq!(tprime().flip(arc(-1, 1)), Err(InfgonError::FrozenArc(arc(-1, 1))));
        assert_eq!(t.flip(arc(0, 2)).unwrap(), zz());
    }

    #[test]
    fn invalid_flip_lists_are_rejected() {
        let e = TriPresentation::new(BaseFamily::zigzag_left(0), vec![arc(0, 2)]);
        assert!(matches!(e, Err(InfgonError::BadFlip { index: 0, .. })));
    }

    #[test]
    fn fountains_and_types() {
        assert_eq!(zz().fountains(), (None, None));
        assert_eq!(fountain(0).fountains(), (Some(0), Some(0)));
        assert_eq!(tprime().fountains(), (Some(-1), Some(1)));
        assert_eq!(zz().classify(), TriType::I);
        assert_eq!(fountain(0).classify(), TriType::II);
        assert_eq!(tprime().classify(), TriType::III(0));
        assert_eq!(tprime().frozen_arc(), Some(arc(-1, 1)));
        let g3 = TriPresentation::from_base(BaseFamily::FrozenGap { m0: 0, n0: 3, inner: vec![arc(0, 2)] })
            .unwrap();
        assert_eq!(g3.classify(), TriType::III(2));
        assert_eq!(TriType::III(0).to_string(), "III 0");
    }

    #[test]
    fn frozen_gap_validation() {
        let bad = |inner: Vec<Arc>, m0, n0| {
            matches!(
                TriPresentation::from_base(BaseFamily::FrozenGap { m0, n0, inner }),
                Err(InfgonError::BadInner(_))
            )
        };
        assert!(bad(vec![], 0, 3));
        assert!(bad(vec![arc(0, 2), arc(1, 3)], 0, 3));
        assert!(bad(vec![arc(0, 2), arc(1, 3)], 0, 4));
        assert!(bad(vec![], 0, 1));
        assert!(bad(vec![arc(-1, 2)], 0, 3));
    }

    #[test]
    fn congruence() {
        let z5 = TriPresentation::from_base(BaseFamily::zigzag_left(5)).unwrap();
        assert!(congruent(&zz(), &z5));
        assert!(!congruent(&fountain(0), &tprime()));
    }

    #[test]
    fn labels_round_trip() {
        for a in [arc(-5, 7), arc(0, 2), arc(-1, 0), arc(3, 100)] {
            assert_eq!(label_arc(arc_label(a)), a);
        }
    }

    #[test]
    fn json_presentation() {
        let s = r#"{"base":{"kind":"frozengap","m0":-1,"n0":1,"inner":[]},"flips":[]}"#;
        let t: TriPresentation = serde_json::from_str(s).unwrap();
        assert_eq!(t, tprime());
        assert_eq!(serde_json::to_string(&t).unwrap(), s);
        let z = zz().flip(arc(-1, 1)).unwrap();
        let back: TriPresentation = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<TriPresentation>(
            r#"{"base":{"kind":"zigzag","n0":0,"variant":"left"},"flips":[[0,2]]}"#
        )
        .is_err());
    }

    #[test]
    fn word_embedding() {
        let w: OrientationWord = "RL|R".parse().unwrap();
        let e = embed_in_qt(&w).unwrap();
        let Embedding::Fountain { presentation, .. } = &e else { panic!("expected fountain") };
        let n = 8;
        let labels: BTreeMap<Arc, i64> = (1..=n).map(|i| (e.gamma(i).unwrap(), i)).collect();
        let q = presentation.quiver_of(-12, 12).unwrap();
        assert_eq!(q.relabel(&labels), w.window(1, n).unwrap());
        assert!(matches!(embed_in_qt(&"|RL".parse().unwrap()).unwrap(), Embedding::Identity));
    }
}
