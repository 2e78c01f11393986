//! Seeds, seed mutation through the exchange relation, and the cluster
//! variables of type A_n computed two ways: by closing the initial seed
//! under mutation, and by the mesh recurrence on the AR grid.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::exec::Exec;
use crate::laurent::{LaurentError, LaurentPoly};
use crate::quiver::{Quiver, QuiverError};

/// Largest rank accepted by [`enumerate_variables_an`] and [`ArGrid::new`].
pub const MAX_RANK: u32 = 10;

/// Default bound on the number of seeds the closure may visit.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("position {0} is not exchangeable")]
    NotExchangeable(i64),
    #[error("unknown position {0}")]
    UnknownPosition(i64),
    #[error("exchange relation has no Laurent solution at position {0}")]
    NotDivisible(i64),
    #[error("seed closure exceeded the cap of {0} seeds")]
    CapExceeded(usize),
    #[error("rank {0} outside 1..={MAX_RANK}")]
    BadRank(u32),
    #[error("mesh recurrence failed at ({0}, {1})")]
    RecurrenceFailure(u32, u32),
    #[error("cluster value at position {0} is zero")]
    ZeroValue(i64),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A cluster together with its exchangeable positions and quiver. The
/// positions are the quiver's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    values: BTreeMap<i64, LaurentPoly>,
    ex: BTreeSet<i64>,
    quiver: Quiver,
}

impl Seed {
    /// The initial seed on `quiver`: the `k`-th smallest vertex carries
    /// `x_k`, every position exchangeable.
    pub fn initial(quiver: Quiver) -> Self {
        let values = quiver
            .vertices()
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, LaurentPoly::var(k as u32 + 1)))
            .collect();
        let ex = quiver.vertices().clone();
        Seed { values, ex, quiver }
    }

    pub fn initial_an(n: u32) -> Self {
        Seed::initial(Quiver::linear_an(n))
    }

    pub fn from_parts(
        values: BTreeMap<i64, LaurentPoly>,
        ex: BTreeSet<i64>,
        quiver: Quiver,
    ) -> Result<Self, SeedError> {
        let positions: BTreeSet<i64> = values.keys().copied().collect();
        if let Some(&p) = positions.symmetric_difference(quiver.vertices()).next() {
            return Err(SeedError::UnknownPosition(p));
        }
        if let Some(&p) = ex.difference(&positions).next() {
            return Err(SeedError::UnknownPosition(p));
        }
        if let Some((&p, _)) = values.iter().find(|(_, v)| v.is_zero()) {
            return Err(SeedError::ZeroValue(p));
        }
        Ok(Seed { values, ex, quiver })
    }

    /// Returns a copy with only `ex` exchangeable.
    pub fn with_exchangeable(&self, ex: BTreeSet<i64>) -> Result<Self, SeedError> {
        Seed::from_parts(self.values.clone(), ex, self.quiver.clone())
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.keys().copied()
    }

    pub fn value(&self, k: i64) -> Option<&LaurentPoly> {
        self.values.get(&k)
    }

    pub fn values(&self) -> &BTreeMap<i64, LaurentPoly> {
        &self.values
    }

    pub fn exchangeable(&self) -> &BTreeSet<i64> {
        &self.ex
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// The cluster as an unordered set.
    pub fn cluster(&self) -> BTreeSet<LaurentPoly> {
        self.values.values().cloned().collect()
    }

    /// The two monomials of the exchange relation at `k`: product over
    /// arrows out of `k`, product over arrows into `k`.
    pub fn exchange_binomial(&self, k: i64) -> LaurentPoly {
        let prod = |it: &mut dyn Iterator<Item = (i64, u32)>| -> LaurentPoly {
            it.map(|(v, m)| self.values[&v].pow(m)).product()
        };
        let out = prod(&mut self.quiver.out_arrows(k));
        let inc = prod(&mut self.quiver.in_arrows(k));
        &out + &inc
    }

    pub fn mutate(&self, k: i64) -> Result<Seed, SeedError> {
        let old = self.values.get(&k).ok_or(SeedError::UnknownPosition(k))?;
        if !self.ex.contains(&k) {
            return Err(SeedError::NotExchangeable(k));
        }
        let new = self.exchange_binomial(k).div_exact(old).map_err(|e| match e {
            LaurentError::NotDivisible => SeedError::NotDivisible(k),
            _ => SeedError::ZeroValue(k),
        })?;
        let mut values = self.values.clone();
        values.insert(k, new);
        Ok(Seed { values, ex: self.ex.clone(), quiver: self.quiver.mutate(k)? })
    }

    pub fn mutate_sequence(&self, ks: &[i64]) -> Result<Seed, SeedError> {
        ks.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Whether each `ks[i]` is exchangeable at its turn.
    pub fn is_admissible(&self, ks: &[i64]) -> bool {
        // Exchangeability never changes under mutation; the check is still
        // run along the path so that mutation failures are caught too.
        let mut s = self.clone();
        for &k in ks {
            match s.mutate(k) {
                Ok(t) => s = t,
                Err(_) => return false,
            }
        }
        true
    }
}

/// All cluster variables of the type A_n algebra, by breadth-first closure
/// of the initial seed under mutation. Seeds are identified by their
/// cluster as a set.
pub fn enumerate_variables_an(n: u32, cap: usize) -> Result<BTreeSet<LaurentPoly>, SeedError> {
    enumerate_variables_an_with(n, cap, Exec::default())
}

pub fn enumerate_variables_an_with(
    n: u32,
    cap: usize,
    exec: Exec,
) -> Result<BTreeSet<LaurentPoly>, SeedError> {
    if n == 0 || n > MAX_RANK {
        return Err(SeedError::BadRank(n));
    }
    let start = Seed::initial_an(n);
    let mut variables = start.cluster();
    let mut seen: HashSet<BTreeSet<LaurentPoly>> = HashSet::from([start.cluster()]);
    let mut frontier = vec![start];
    let positions: Vec<i64> = (1..=i64::from(n)).collect();

    while !frontier.is_empty() {
        let children: Vec<Result<Vec<Seed>, SeedError>> = exec.map(&frontier, |s| {
            positions.iter().map(|&k| s.mutate(k)).collect()
        });
        let mut next = Vec::new();
        for batch in children {
            for child in batch? {
                let key = child.cluster();
                if seen.contains(&key) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(SeedError::CapExceeded(cap));
                }
                variables.extend(key.iter().cloned());
                seen.insert(key);
                next.push(child);
            }
        }
        frontier = next;
    }
    Ok(variables)
}

/// Number of distinct clusters reached by the closure (for reporting).
pub fn count_clusters_an(n: u32, cap: usize) -> Result<usize, SeedError> {
    if n == 0 || n > MAX_RANK {
        return Err(SeedError::BadRank(n));
    }
    let start = Seed::initial_an(n);
    let mut seen = HashSet::from([start.cluster()]);
    let mut frontier = vec![start];
    while let Some(s) = frontier.pop() {
        for k in 1..=i64::from(n) {
            let t = s.mutate(k)?;
            if seen.insert(t.cluster()) {
                if seen.len() > cap {
                    return Err(SeedError::CapExceeded(cap));
                }
                frontier.push(t);
            }
        }
    }
    Ok(seen.len())
}

/// The cluster variables of type A_n laid out on the AR quiver:
/// `y(0, j) = x_j` and the mesh relation
/// `y(i+1, j) * y(i, j) = 1 + y(i+1, j-1) * y(i, j+1)`, where references
/// with `j = 0` or outside the triangle `i + j <= n + 1`, `j <= n` read as 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArGrid {
    n: u32,
    entries: BTreeMap<(u32, u32), LaurentPoly>,
}

impl ArGrid {
    pub fn new(n: u32) -> Result<Self, SeedError> {
        if n == 0 || n > MAX_RANK {
            return Err(SeedError::BadRank(n));
        }
        let mut g = ArGrid { n, entries: BTreeMap::new() };
        for j in 1..=n {
            g.entries.insert((0, j), LaurentPoly::var(j));
        }
        for i in 0..n {
            for j in 1..=(n - i) {
                let v = g.step(i, j)?;
                g.entries.insert((i + 1, j), v);
            }
        }
        Ok(g)
    }

    /// `y(i+1, j)` from the mesh ending there.
    fn step(&self, i: u32, j: u32) -> Result<LaurentPoly, SeedError> {
        let num = &LaurentPoly::one() + &(&self.get_or_one(i + 1, j - 1) * &self.get_or_one(i, j + 1));
        num.div_exact(&self.get_or_one(i, j))
            .map_err(|_| SeedError::RecurrenceFailure(i + 1, j))
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn in_domain(&self, i: u32, j: u32) -> bool {
        i <= self.n && (1..=self.n).contains(&j) && i + j <= self.n + 1
    }

    pub fn get(&self, i: u32, j: u32) -> Option<&LaurentPoly> {
        self.entries.get(&(i, j))
    }

    /// Grid value, or 1 outside the domain.
    pub fn get_or_one(&self, i: u32, j: u32) -> LaurentPoly {
        self.get(i, j).cloned().unwrap_or_else(LaurentPoly::one)
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), LaurentPoly> {
        &self.entries
    }

    pub fn value_set(&self) -> BTreeSet<LaurentPoly> {
        self.entries.values().cloned().collect()
    }

    /// One more step of the recurrence past the triangle, along
    /// `i + j = n + 2`. Entry `s - 1` is `y(s+1, n+1-s)` for `s = 1..=n`;
    /// on a correct grid it equals `x_s`, which is how the AR quiver closes
    /// up into a Moebius strip.
    pub fn wrap_diagonal(&self) -> Result<Vec<LaurentPoly>, SeedError> {
        let n = self.n;
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(n as usize);
        for s in 1..=n {
            let j = n + 1 - s;
            // y(s, j+1) is the previous wrap entry, or 1 past the last column
            let above = if s == 1 { LaurentPoly::one() } else { out[s as usize - 2].clone() };
            let left = if j >= 2 { self.get_or_one(s + 1, j - 1) } else { LaurentPoly::one() };
            let num = &LaurentPoly::one() + &(&left * &above);
            let v = num
                .div_exact(&self.get_or_one(s, j))
                .map_err(|_| SeedError::RecurrenceFailure(s + 1, j))?;
            out.push(v);
        }
        Ok(out)
    }
}
