//! The category of diagonals of the infinity-gon.
//!
//! Indecomposables are diagonals `(m, n)`, `n - m >= 2`; boundary arcs are
//! zero. Hom spaces are at most one-dimensional. A nonzero map `x -> y` is
//! forward when `y` lies in `F_R(x) = {(p,q) : m <= p <= n-2, q >= n}` and
//! backward when `y` lies in `F_L(x) = {(p,q) : p <= m-2, m <= q <= n-2}`.
//! The same category in standard coordinates `(m,n) = Sigma^{-n} X_{n-m-2}`
//! is handled by [`hom_dim_d`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;
use crate::infgon::{cross, Arc, ArcSet, InfgonError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagError {
    #[error("the zero object has no coordinates")]
    ZeroObject,
    #[error("no nonzero morphism {0} -> {1}")]
    NoSuchMorphism(CObj, CObj),
    #[error("morphisms do not compose: {0} != {1}")]
    NotComposable(CObj, CObj),
    #[error("cannot parse object {0:?}")]
    Parse(String),
    #[error(transparent)]
    Infgon(#[from] InfgonError),
}

/// An indecomposable object, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CObj {
    Zero,
    Diag(i64, i64),
}

impl CObj {
    /// `(m, n)`; boundary arcs become `Zero`. Panics unless `m < n`.
    pub fn new(m: i64, n: i64) -> CObj {
        assert!(m < n, "({m},{n}) is not an arc");
        if n - m == 1 {
            CObj::Zero
        } else {
            CObj::Diag(m, n)
        }
    }

    pub fn from_arc(a: Arc) -> CObj {
        CObj::new(a.m, a.n)
    }

    pub fn arc(self) -> Option<Arc> {
        match self {
            CObj::Zero => None,
            CObj::Diag(m, n) => Some(Arc { m, n }),
        }
    }

    pub fn is_zero(self) -> bool {
        self == CObj::Zero
    }
}

impl fmt::Display for CObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CObj::Zero => write!(f, "0"),
            CObj::Diag(m, n) => write!(f, "({m},{n})"),
        }
    }
}

impl FromStr for CObj {
    type Err = DiagError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "0" {
            return Ok(CObj::Zero);
        }
        let a: Arc = s.parse().map_err(|_| DiagError::Parse(s.to_string()))?;
        Ok(CObj::from_arc(a))
    }
}

impl Serialize for CObj {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `Sigma^{-shift} X_radius`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DCoord {
    pub shift: i64,
    pub radius: i64,
}

pub fn to_coords(x: CObj) -> Result<DCoord, DiagError> {
    match x {
        CObj::Zero => Err(DiagError::ZeroObject),
        CObj::Diag(m, n) => Ok(DCoord { shift: n, radius: n - m - 2 }),
    }
}

/// Inverse of [`to_coords`]. Panics on a negative radius.
pub fn from_coords(c: DCoord) -> CObj {
    assert!(c.radius >= 0, "negative radius");
    CObj::Diag(c.shift - c.radius - 2, c.shift)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HomKind {
    Zero,
    Forward,
    Backward,
}

impl fmt::Display for HomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomKind::Zero => "zero",
            HomKind::Forward => "forward",
            HomKind::Backward => "backward",
        })
    }
}

fn in_f_r((m, n): (i64, i64), (p, q): (i64, i64)) -> bool {
    m <= p && p <= n - 2 && q >= n
}

fn in_f_l((m, n): (i64, i64), (p, q): (i64, i64)) -> bool {
    p <= m - 2 && m <= q && q <= n - 2
}

/// Dimension of `Hom(x, y)` and the kind of its basis morphism.
pub fn hom_dim(x: CObj, y: CObj) -> (u8, HomKind) {
    let (CObj::Diag(m, n), CObj::Diag(p, q)) = (x, y) else {
        return (0, HomKind::Zero);
    };
    let fwd = in_f_r((m, n), (p, q));
    let bwd = in_f_l((m, n), (p, q));
    debug_assert!(!(fwd && bwd), "F_R and F_L overlap at {x} -> {y}");
    if fwd {
        (1, HomKind::Forward)
    } else if bwd {
        (1, HomKind::Backward)
    } else {
        (0, HomKind::Zero)
    }
}

/// `Hom(x, y)` computed in standard coordinates: nonzero iff `y` lies in
/// `H(Sigma x)`, the union of a forward rectangle `H+` and a backward
/// rectangle `H-` in the AR quiver.
pub fn hom_dim_d(x: CObj, y: CObj) -> u8 {
    let (Ok(cx), Ok(cy)) = (to_coords(x), to_coords(y)) else {
        return 0;
    };
    // Sigma x has shift one less and the same radius.
    let (j0, r0) = (cx.shift - 1, cx.radius);
    let (j, r) = (cy.shift, cy.radius);
    // steps along the shift direction, measured from x itself
    let d = j - j0 - 1;
    let plus = 0 <= d && d <= r && r <= r0 + d;
    let e = j0 + 1 - j;
    let minus = 2 <= e && e <= r0 + 2 && r >= r0 + 2 - e;
    u8::from(plus || minus)
}

/// `x[k] = (m-k, n-k)`.
pub fn shift(x: CObj, k: i64) -> CObj {
    match x {
        CObj::Zero => CObj::Zero,
        CObj::Diag(m, n) => CObj::Diag(m - k, n - k),
    }
}

pub fn serre(x: CObj) -> CObj {
    shift(x, 2)
}

pub fn tau(x: CObj) -> CObj {
    shift(x, 1)
}

/// `s(m,n) = (m+1, n)`, zero when it becomes a boundary arc.
pub fn op_s(x: CObj) -> CObj {
    match x {
        CObj::Zero => CObj::Zero,
        CObj::Diag(m, n) => CObj::new(m + 1, n),
    }
}

/// `(m,n)e = (m, n+1)`.
pub fn op_e(x: CObj) -> CObj {
    match x {
        CObj::Zero => CObj::Zero,
        CObj::Diag(m, n) => CObj::Diag(m, n + 1),
    }
}

pub fn ext1_nonzero(x: CObj, y: CObj) -> bool {
    hom_dim(x, shift(y, 1)).0 == 1
}

/// Whether `y[1]` is `s^z (x) e^n` with `n >= 0`, `0 <= z <= l-2`, or
/// `(i-n-2, j-r)` with `n >= 0`, `2 <= r <= l`, where `x = (i,j)` and
/// `l = j - i`. Found by enumerating the parameters.
pub fn ext_shift_form(x: CObj, y: CObj) -> bool {
    let (CObj::Diag(i, j), CObj::Diag(p, q)) = (x, shift(y, 1)) else {
        return false;
    };
    let l = j - i;
    let n_max = (q - j).max(i - p).max(0);
    let first = (0..=n_max).any(|n| (0..=l - 2).any(|z| (p, q) == (i + z, j + n)));
    let second = (0..=n_max).any(|n| (2..=l).any(|r| (p, q) == (i - n - 2, j - r)));
    first || second
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArTriangle {
    pub start: CObj,
    pub middle: (CObj, CObj),
    pub cone: CObj,
    pub end: CObj,
}

/// `x -> s(x) + (x)e -> s(x)e -> x[1]`.
pub fn ar_triangle(x: CObj) -> Result<ArTriangle, DiagError> {
    if x.is_zero() {
        return Err(DiagError::ZeroObject);
    }
    Ok(ArTriangle { start: x, middle: (op_s(x), op_e(x)), cone: op_s(op_e(x)), end: shift(x, 1) })
}

/// A scalar multiple of the basis morphism `source -> target`. Scalar 0 is
/// the zero morphism, which exists between any two objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub source: CObj,
    pub target: CObj,
    pub scalar: i64,
}

impl Morphism {
    pub fn new(source: CObj, target: CObj, scalar: i64) -> Result<Morphism, DiagError> {
        if scalar != 0 && hom_dim(source, target).0 == 0 {
            return Err(DiagError::NoSuchMorphism(source, target));
        }
        Ok(Morphism { source, target, scalar })
    }

    pub fn identity(x: CObj) -> Morphism {
        Morphism { source: x, target: x, scalar: i64::from(!x.is_zero()) }
    }

    pub fn kind(&self) -> HomKind {
        if self.scalar == 0 {
            HomKind::Zero
        } else {
            hom_dim(self.source, self.target).1
        }
    }
}

/// `g . f` for `f: x -> y`, `g: y -> z`. Forward after forward is the
/// forward basis map when `x -> z` is forward; forward after backward is
/// the backward basis map when `x -> z` is backward; every other composite
/// of non-identities is zero.
pub fn compose(f: Morphism, g: Morphism) -> Result<Morphism, DiagError> {
    if f.target != g.source {
        return Err(DiagError::NotComposable(f.target, g.source));
    }
    for h in [f, g] {
        if h.scalar != 0 && hom_dim(h.source, h.target).0 == 0 {
            return Err(DiagError::NoSuchMorphism(h.source, h.target));
        }
    }
    let (x, y, z) = (f.source, f.target, g.target);
    let scalar = f.scalar * g.scalar;
    let zero = Morphism { source: x, target: z, scalar: 0 };
    if scalar == 0 {
        return Ok(zero);
    }
    if x == y || y == z {
        return Ok(Morphism { source: x, target: z, scalar });
    }
    if x == z {
        // a non-invertible endomorphism of an indecomposable
        return Ok(zero);
    }
    let through = hom_dim(x, z).1;
    let nonzero = match (f.kind(), g.kind()) {
        (HomKind::Forward, HomKind::Forward) => through == HomKind::Forward,
        (HomKind::Backward, HomKind::Forward) => through == HomKind::Backward,
        _ => false,
    };
    Ok(if nonzero { Morphism { source: x, target: z, scalar } } else { zero })
}

/// All diagonals `(m, n)` with `lo <= m < n <= hi`.
pub fn window_diagonals(lo: i64, hi: i64) -> Vec<CObj> {
    (lo..=hi).flat_map(|m| (m + 2..=hi).map(move |n| CObj::Diag(m, n))).collect()
}

/// Ordered pairs of window diagonals on which `pred` fails.
pub fn pair_failures_with<F>(lo: i64, hi: i64, exec: Exec, pred: F) -> Vec<(CObj, CObj)>
where
    F: Fn(CObj, CObj) -> bool + Sync + Send,
{
    let objs = window_diagonals(lo, hi);
    let per_x = exec.map(&objs, |&x| {
        objs.iter().filter(|&&y| !pred(x, y)).map(|&y| (x, y)).collect::<Vec<_>>()
    });
    per_x.into_iter().flatten().collect()
}

/// Composable triples `x -> y -> z` of nonzero basis maps in the window on
/// which composition is not associative with every third map `z -> w`.
/// Returns the number of quadruples checked and the failures.
pub fn associativity_failures_with(
    lo: i64,
    hi: i64,
    exec: Exec,
) -> (usize, Vec<(CObj, CObj, CObj, CObj)>) {
    let objs = window_diagonals(lo, hi);
    let succ: Vec<Vec<CObj>> =
        objs.iter().map(|&x| objs.iter().copied().filter(|&y| hom_dim(x, y).0 == 1).collect()).collect();
    let index: std::collections::HashMap<CObj, usize> =
        objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let basis = |a: CObj, b: CObj| Morphism { source: a, target: b, scalar: 1 };
    let per_x = exec.map(&objs, |&x| {
        let mut checked = 0usize;
        let mut bad = Vec::new();
        for &y in &succ[index[&x]] {
            for &z in &succ[index[&y]] {
                for &w in &succ[index[&z]] {
                    checked += 1;
                    let (f, g, h) = (basis(x, y), basis(y, z), basis(z, w));
                    let left = compose(compose(f, g).expect("valid"), h).expect("valid");
                    let right = compose(f, compose(g, h).expect("valid")).expect("valid");
                    if left != right {
                        bad.push((x, y, z, w));
                    }
                }
            }
        }
        (checked, bad)
    });
    per_x.into_iter().fold((0, Vec::new()), |(c, mut b), (c2, b2)| {
        b.extend(b2);
        (c + c2, b)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TiltingReport {
    /// No Ext between window arcs, and every other window diagonal has Ext
    /// with some arc of the set.
    pub ext_route: bool,
    /// Non-crossing and locally maximal on the window.
    pub crossing_route: bool,
}

impl TiltingReport {
    pub fn agree(&self) -> bool {
        self.ext_route == self.crossing_route
    }
}

/// Arcs of `set` with an endpoint strictly inside `d` that leave `d` on the
/// other side; for fans one representative suffices.
fn crossing_candidates(set: &ArcSet, d: Arc) -> Vec<Arc> {
    let mut out = Vec::new();
    for v in d.m + 1..d.n {
        match set.right_finite(v) {
            Some(far) => out.extend(far.into_iter().filter(|&p| p > d.n).map(|p| Arc { m: v, n: p })),
            None => {
                let p = (d.n + 1..).find(|&p| set.contains(Arc { m: v, n: p })).expect("fan");
                out.push(Arc { m: v, n: p });
            }
        }
        match set.left_finite(v) {
            Some(far) => out.extend(far.into_iter().filter(|&m| m < d.m).map(|m| Arc { m, n: v })),
            None => {
                let m = (i64::MIN..d.m).rev().find(|&m| set.contains(Arc { m, n: v })).expect("fan");
                out.push(Arc { m, n: v });
            }
        }
    }
    out
}

pub fn is_weak_cluster_tilting(set: &ArcSet, lo: i64, hi: i64) -> Result<TiltingReport, DiagError> {
    is_weak_cluster_tilting_with(set, lo, hi, Exec::default())
}

pub fn is_weak_cluster_tilting_with(
    set: &ArcSet,
    lo: i64,
    hi: i64,
    exec: Exec,
) -> Result<TiltingReport, DiagError> {
    let arcs: Vec<CObj> = set.arcs_in_window(lo, hi)?.into_iter().map(CObj::from_arc).collect();
    let orthogonal = exec.all(&arcs, |&x| arcs.iter().all(|&y| !ext1_nonzero(x, y)));
    let others: Vec<Arc> = window_diagonals(lo, hi)
        .into_iter()
        .filter_map(CObj::arc)
        .filter(|&d| !set.contains(d))
        .collect();
    let maximal = exec.all(&others, |&d| {
        crossing_candidates(set, d)
            .into_iter()
            .any(|a| ext1_nonzero(CObj::from_arc(d), CObj::from_arc(a)))
    });
    let crossing_route = set.is_non_crossing(lo, hi)? && set.is_locally_max_with(lo, hi, exec)?;
    Ok(TiltingReport { ext_route: orthogonal && maximal, crossing_route })
}

/// Whether two diagonals cross, as objects.
pub fn cross_objects(x: CObj, y: CObj) -> bool {
    match (x.arc(), y.arc()) {
        (Some(a), Some(b)) => cross(a, b),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infgon::{BaseFamily, TriPresentation};

    fn d(m: i64, n: i64) -> CObj {
        CObj::new(m, n)
    }

    #[test]
    fn coordinates() {
        assert_eq!(to_coords(d(0, 2)).unwrap(), DCoord { shift: 2, radius: 0 });
        assert_eq!(to_coords(d(-4, 1)).unwrap(), DCoord { shift: 1, radius: 3 });
        assert_eq!(to_coords(CObj::Zero), Err(DiagError::ZeroObject));
        for x in window_diagonals(-4, 4) {
            assert_eq!(from_coords(to_coords(x).unwrap()), x);
        }
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_dim(d(0, 3), d(1, 4)), (1, HomKind::Forward));
        assert_eq!(hom_dim(d(0, 3), d(-2, 0)), (1, HomKind::Backward));
        assert_eq!(hom_dim(d(0, 3), d(-3, 1)), (1, HomKind::Backward));
        assert_eq!(hom_dim(d(0, 3), d(-2, 2)), (0, HomKind::Zero));
        assert_eq!(hom_dim(d(0, 3), d(0, 3)), (1, HomKind::Forward));
        assert_eq!(hom_dim(CObj::Zero, d(0, 3)), (0, HomKind::Zero));
        assert_eq!(hom_dim(d(0, 2), d(-1, 1)), (0, HomKind::Zero));
        assert_eq!(hom_dim_d(d(0, 2), d(-1, 1)), 0);
        assert_eq!(hom_dim_d(d(0, 3), d(0, 3)), 1);
    }

    #[test]
    fn shifts() {
        assert_eq!(shift(d(0, 3), 1), d(-1, 2));
        assert_eq!(shift(d(0, 3), -1), d(1, 4));
        assert_eq!(serre(d(0, 4)), d(-2, 2));
        assert_eq!(tau(d(0, 4)), d(-1, 3));
        assert_eq!(serre(d(3, 7)), tau(shift(d(3, 7), 1)));
    }

    #[test]
    fn s_and_e() {
        assert_eq!(op_s(d(0, 2)), CObj::Zero);
        assert_eq!(op_e(d(0, 2)), d(0, 3));
        assert_eq!(op_s(op_e(d(0, 3))), op_e(op_s(d(0, 3))));
    }

    #[test]
    fn ext_examples() {
        assert!(ext1_nonzero(d(0, 2), d(1, 3)));
        assert!(cross_objects(d(0, 2), d(1, 3)));
        assert!(!ext1_nonzero(d(0, 2), d(2, 4)));
        assert!(ext_shift_form(d(0, 2), d(1, 3)));
        assert!(!ext_shift_form(d(0, 2), d(2, 4)));
    }

    #[test]
    fn ar_examples() {
        let t = ar_triangle(d(0, 3)).unwrap();
        assert_eq!(t.middle, (d(1, 3), d(0, 4)));
        assert_eq!((t.cone, t.end), (d(1, 4), d(-1, 2)));
        let q = ar_triangle(d(0, 2)).unwrap();
        assert_eq!((q.middle, q.cone), ((CObj::Zero, d(0, 3)), d(1, 3)));
        assert_eq!(tau(q.cone), d(0, 2));
        assert_eq!(ar_triangle(CObj::Zero), Err(DiagError::ZeroObject));
    }

    #[test]
    fn composition() {
        let f = Morphism::new(d(0, 3), d(1, 4), 3).unwrap();
        let id = Morphism::identity(d(0, 3));
        assert_eq!(compose(id, f).unwrap(), f);
        let g = Morphism::new(d(1, 4), d(2, 5), 5).unwrap();
        assert_eq!(hom_dim(d(0, 3), d(2, 5)).0, 0);
        assert_eq!(compose(f, g).unwrap().scalar, 0);
        let g = Morphism::new(d(1, 4), d(1, 6), 5).unwrap();
        assert_eq!(compose(f, g).unwrap(), Morphism { source: d(0, 3), target: d(1, 6), scalar: 15 });
        assert_eq!(Morphism::new(d(0, 3), d(5, 9), 1), Err(DiagError::NoSuchMorphism(d(0, 3), d(5, 9))));
        assert!(matches!(compose(f, f), Err(DiagError::NotComposable(..))));
    }

    #[test]
    fn tilting_on_zigzag() {
        let t = TriPresentation::from_base(BaseFamily::zigzag_left(0)).unwrap();
        let r = is_weak_cluster_tilting(t.arcs(), -8, 8).unwrap();
        assert!(r.ext_route && r.crossing_route);
        let holed = t.arcs().without(Arc { m: -2, n: 2 });
        let r = is_weak_cluster_tilting(&holed, -8, 8).unwrap();
        assert!(!r.ext_route && !r.crossing_route);
        let crossed = t.arcs().with(Arc { m: 0, n: 2 });
        let r = is_weak_cluster_tilting(&crossed, -8, 8).unwrap();
        assert!(!r.ext_route && !r.crossing_route);
    }

    #[test]
    fn parse_objects() {
        assert_eq!("(0,3)".parse::<CObj>().unwrap(), d(0, 3));
        assert_eq!("(0,1)".parse::<CObj>().unwrap(), CObj::Zero);
        assert_eq!("0".parse::<CObj>().unwrap(), CObj::Zero);
        assert!("(3,0)".parse::<CObj>().is_err());
    }
}
