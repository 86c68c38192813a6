//! Linear and semilinear subsets of `ℕ^d`.

pub(crate) mod expr;

pub use expr::LetterRegex;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector of `ℕ^d`, one coordinate per letter.
pub type Vector = Vec<u32>;

/// The set `base + ℕ periods[0] + ... + ℕ periods[k-1]`.
///
/// Periods are kept sorted, without duplicates, without the zero vector and
/// without periods that are ℕ-combinations of the others; none of these
/// changes the denoted set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearPiece {
    base: Vector,
    periods: Vec<Vector>,
}

impl LinearPiece {
    pub fn new(base: Vector, periods: impl IntoIterator<Item = Vector>) -> Self {
        let d = base.len();
        let set: BTreeSet<Vector> = periods
            .into_iter()
            .inspect(|p| assert_eq!(p.len(), d, "period dimension"))
            .filter(|p| p.iter().any(|&x| x > 0))
            .collect();
        let mut periods: Vec<Vector> = set.into_iter().collect();
        // Largest first, so sums are dropped before their summands.
        let mut order: Vec<Vector> = periods.clone();
        order.sort_by_key(|p| std::cmp::Reverse(p.iter().sum::<u32>()));
        for p in order {
            let others: Vec<Vector> = periods.iter().filter(|&q| *q != p).cloned().collect();
            if in_cone(&others, &mut p.clone()) {
                periods = others;
            }
        }
        LinearPiece { base, periods }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &Vector {
        &self.base
    }

    pub fn periods(&self) -> &[Vector] {
        &self.periods
    }

    /// Coordinatewise sum of the periods.
    pub fn period_sum(&self) -> Vector {
        let mut r = vec![0; self.dim()];
        for p in &self.periods {
            add_into(&mut r, p);
        }
        r
    }

    /// Letters with a positive base coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&z| self.base[z] > 0).collect()
    }

    /// Whether `Σ periods ≤ base` holds coordinatewise (which implies the
    /// periods live on the support of the base).
    pub fn is_normal(&self) -> bool {
        self.period_sum().iter().zip(&self.base).all(|(r, q)| r <= q)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.dim() {
            return false;
        }
        let mut rem = Vec::with_capacity(v.len());
        for (&x, &q) in v.iter().zip(&self.base) {
            if x < q {
                return false;
            }
            rem.push(x - q);
        }
        in_cone(&self.periods, &mut rem)
    }

    /// Whether every element of `self` lies in `other`.
    ///
    /// Sufficient test: the base of `self` is in `other` and every period of
    /// `self` is an ℕ-combination of the periods of `other`.
    fn subsumed_by(&self, other: &LinearPiece) -> bool {
        other.contains(&self.base)
            && self
                .periods
                .iter()
                .all(|p| in_cone(&other.periods, &mut p.clone()))
    }
}

/// Whether `rem` is an ℕ-combination of `periods`. `rem` is restored on return.
fn in_cone(periods: &[Vector], rem: &mut [u32]) -> bool {
    if rem.iter().all(|&x| x == 0) {
        return true;
    }
    let Some((p, rest)) = periods.split_first() else {
        return false;
    };
    // Every positive coordinate must still be coverable.
    for (z, &x) in rem.iter().enumerate() {
        if x > 0 && periods.iter().all(|q| q[z] == 0) {
            return false;
        }
    }
    let max_k = p
        .iter()
        .zip(rem.iter())
        .filter(|(&pz, _)| pz > 0)
        .map(|(&pz, &x)| x / pz)
        .min()
        .unwrap_or(0);
    let mut found = false;
    let mut k = 0;
    loop {
        if in_cone(rest, rem) {
            found = true;
        }
        if found || k == max_k {
            break;
        }
        sub_from(rem, p);
        k += 1;
    }
    for _ in 0..k {
        add_into(rem, p);
    }
    found
}

/// Fuses pairs `(q + P) ∪ (q + p + ℕp + P)` into `q + ℕp + P`.
fn merge_split_pairs(set: &mut BTreeSet<LinearPiece>) {
    loop {
        let mut merge = None;
        'search: for b in set.iter() {
            for (i, p) in b.periods.iter().enumerate() {
                if b.base.iter().zip(p).any(|(q, x)| q < x) {
                    continue;
                }
                let mut rest = b.periods.clone();
                rest.remove(i);
                let a = LinearPiece {
                    base: b.base.iter().zip(p).map(|(q, x)| q - x).collect(),
                    periods: rest,
                };
                if set.contains(&a) {
                    merge = Some((a, b.clone()));
                    break 'search;
                }
            }
        }
        let Some((a, b)) = merge else { break };
        set.remove(&a);
        set.remove(&b);
        set.insert(LinearPiece::new(a.base, b.periods));
    }
}

fn add_into(acc: &mut [u32], v: &[u32]) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a += x;
    }
}

fn sub_from(acc: &mut [u32], v: &[u32]) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a -= x;
    }
}

fn add(u: &[u32], v: &[u32]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

/// A finite union of linear sets, all of the same dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilinearSet {
    dim: usize,
    pieces: Vec<LinearPiece>,
}

impl SemilinearSet {
    /// The empty set.
    pub fn empty(dim: usize) -> Self {
        SemilinearSet { dim, pieces: Vec::new() }
    }

    /// The set `{0}`.
    pub fn zero(dim: usize) -> Self {
        Self::from_pieces(dim, vec![LinearPiece::new(vec![0; dim], [])]).unwrap()
    }

    /// The set `{e_i}`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut q = vec![0; dim];
        q[i] = 1;
        Self::from_pieces(dim, vec![LinearPiece::new(q, [])]).unwrap()
    }

    pub fn from_pieces(dim: usize, pieces: Vec<LinearPiece>) -> Result<Self> {
        for p in &pieces {
            if p.dim() != dim {
                return Err(Error::Dimension(dim, p.dim()));
            }
        }
        let mut s = SemilinearSet { dim, pieces };
        s.simplify(true);
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[LinearPiece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    fn check(&self, other: &SemilinearSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn union(&self, other: &SemilinearSet) -> Result<SemilinearSet> {
        self.check(other)?;
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Self::from_pieces(self.dim, pieces)
    }

    /// Minkowski sum `{u + v : u ∈ self, v ∈ other}`.
    pub fn sum(&self, other: &SemilinearSet) -> Result<SemilinearSet> {
        self.check(other)?;
        let mut pieces = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for a in &self.pieces {
            for b in &other.pieces {
                pieces.push(LinearPiece::new(
                    add(&a.base, &b.base),
                    a.periods.iter().chain(&b.periods).cloned(),
                ));
            }
        }
        Self::from_pieces(self.dim, pieces)
    }

    /// Parikh image of the Kleene star of a language with Parikh image `self`.
    ///
    /// The star of a finite set of vectors is the linear set generated by
    /// them, so pieces without periods only add periods. Refuses sets with
    /// more than `cap` pieces that have periods (the result has up to
    /// `2^pieces` pieces).
    pub fn star(&self, cap: usize) -> Result<SemilinearSet> {
        let nonzero = |p: &&LinearPiece| !(p.periods.is_empty() && p.base.iter().all(|&x| x == 0));
        let (free, pieces): (Vec<&LinearPiece>, Vec<&LinearPiece>) =
            self.pieces.iter().filter(nonzero).partition(|p| p.periods.is_empty());
        if pieces.len() > cap {
            return Err(Error::resource(format!(
                "Kleene star of a set with {} linear pieces with periods (cap {cap})",
                pieces.len()
            )));
        }
        let generators: Vec<Vector> = free.iter().map(|p| p.base.clone()).collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pieces.len()) {
            let mut base = vec![0; self.dim];
            let mut periods = generators.clone();
            for (j, p) in pieces.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    add_into(&mut base, &p.base);
                    periods.push(p.base.clone());
                    periods.extend(p.periods.iter().cloned());
                }
            }
            out.push(LinearPiece::new(base, periods));
        }
        Self::from_pieces(self.dim, out)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.pieces.iter().any(|p| p.contains(v))
    }

    /// Splits pieces until every one satisfies `Σ periods ≤ base`.
    ///
    /// Uses `q + ℕp₁ + ... = (q + ℕp₂ + ...) ∪ (q + p₁ + ℕp₁ + ℕp₂ + ...)`
    /// with `p₁` positive on a coordinate where the inequality fails.
    pub fn normalize(&self, cap: usize) -> Result<SemilinearSet> {
        let mut work: Vec<LinearPiece> = self.pieces.clone();
        let mut done: BTreeSet<LinearPiece> = BTreeSet::new();
        while let Some(piece) = work.pop() {
            let r = piece.period_sum();
            let deficit = (0..self.dim).find(|&z| r[z] > piece.base[z]);
            let Some(z) = deficit else {
                done.insert(piece);
                if done.len() > cap {
                    return Err(Error::resource(format!("normalization exceeds {cap} pieces")));
                }
                continue;
            };
            let i = piece.periods.iter().position(|p| p[z] > 0).expect("deficit has a period");
            let p1 = piece.periods[i].clone();
            let mut without = piece.periods.clone();
            without.remove(i);
            work.push(LinearPiece::new(piece.base.clone(), without));
            work.push(LinearPiece::new(add(&piece.base, &p1), piece.periods.iter().cloned()));
            if work.len() + done.len() > cap {
                return Err(Error::resource(format!("normalization exceeds {cap} pieces")));
            }
        }
        // Merging would undo the splits, so only drop redundant pieces.
        let mut s = SemilinearSet {
            dim: self.dim,
            pieces: done.into_iter().collect(),
        };
        s.simplify(false);
        Ok(s)
    }

    /// Removes duplicate pieces and pieces contained in another one, and
    /// optionally fuses pairs that a normalization split would produce.
    fn simplify(&mut self, merge_splits: bool) {
        let mut set: BTreeSet<LinearPiece> = std::mem::take(&mut self.pieces).into_iter().collect();
        if merge_splits {
            merge_split_pairs(&mut set);
        }
        let mut uniq: Vec<LinearPiece> = set.into_iter().collect();
        // Try to drop pieces with few periods first; they are the ones most
        // likely to be covered by a larger piece.
        uniq.sort_by_key(|p| std::cmp::Reverse(p.periods.len()));
        let mut kept: Vec<LinearPiece> = Vec::new();
        for p in uniq {
            if !kept.iter().any(|k| p.subsumed_by(k)) {
                kept.retain(|k| !k.subsumed_by(&p));
                kept.push(p);
            }
        }
        kept.sort();
        self.pieces = kept;
    }

    /// One line per piece: `q=<vec> P={<vec>;...}`.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

fn fmt_vec(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for LinearPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.periods.iter().map(|p| fmt_vec(p)).collect();
        write!(f, "q={} P={{{}}}", fmt_vec(&self.base), ps.join(";"))
    }
}

impl fmt::Display for SemilinearSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pieces {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(q: &[u32], ps: &[&[u32]]) -> SemilinearSet {
        SemilinearSet::from_pieces(q.len(), vec![LinearPiece::new(q.to_vec(), ps.iter().map(|p| p.to_vec()))])
            .unwrap()
    }

    fn boxed(dim: usize, max: u32) -> Vec<Vector> {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v: Vector| {
                    (0..=max).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn sum_examples() {
        let s = lin(&[1, 0], &[]).sum(&lin(&[0, 1], &[])).unwrap();
        assert_eq!(s, lin(&[1, 1], &[]));
        let s = lin(&[1, 0], &[&[1, 0]]).sum(&lin(&[0, 1], &[])).unwrap();
        assert_eq!(s, lin(&[1, 1], &[&[1, 0]]));
    }

    #[test]
    fn union_dedupes() {
        let a = lin(&[1, 2], &[&[0, 1]]);
        assert_eq!(a.union(&a).unwrap().pieces().len(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(lin(&[1], &[]).union(&lin(&[1, 0], &[])), Err(Error::Dimension(1, 2)));
    }

    #[test]
    fn star_examples() {
        let s = lin(&[1], &[]).star(12).unwrap();
        for v in 0..10 {
            assert!(s.contains(&[v]));
        }
        let s = lin(&[2], &[]).star(12).unwrap();
        for v in 0..=10 {
            assert_eq!(s.contains(&[v]), v % 2 == 0, "{v}");
        }
        let s = SemilinearSet::unit(2, 0).union(&SemilinearSet::unit(2, 1)).unwrap().star(12).unwrap();
        for v in boxed(2, 4) {
            assert!(s.contains(&v));
        }
    }

    #[test]
    fn star_cap() {
        let many = (0..3).fold(SemilinearSet::empty(3), |s, i| {
            let mut p = vec![0; 3];
            p[i] = 2;
            s.union(&lin(&p, &[&p])).unwrap()
        });
        assert!(matches!(many.star(2), Err(Error::Resource(_))));
        let s = many.star(3).unwrap();
        for v in boxed(3, 4) {
            assert_eq!(s.contains(&v), v.iter().all(|x| x % 2 == 0), "{v:?}");
        }
    }

    #[test]
    fn star_of_finite_set_is_one_piece() {
        let units = (0..3).fold(SemilinearSet::empty(3), |s, i| s.union(&SemilinearSet::unit(3, i)).unwrap());
        let s = units.star(0).unwrap();
        assert_eq!(s.pieces().len(), 1);
        assert!(boxed(3, 3).iter().all(|v| s.contains(v)));
    }

    #[test]
    fn redundant_periods_are_dropped() {
        let p = LinearPiece::new(vec![0, 0], [vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 3]]);
        assert_eq!(p.periods(), &[vec![0, 1], vec![1, 0]]);
        let p = LinearPiece::new(vec![0], [vec![2], vec![3], vec![5], vec![6]]);
        assert_eq!(p.periods(), &[vec![2], vec![3]]);
    }

    #[test]
    fn contains_examples() {
        let s = lin(&[1], &[&[2]]);
        assert!(s.contains(&[3]));
        assert!(!s.contains(&[2]));
        let s = lin(&[1, 1], &[&[1, 0], &[0, 1]]);
        assert!(s.contains(&[3, 2]));
        assert!(!s.contains(&[0, 2]));
    }

    #[test]
    fn normalize_examples() {
        // Duplicate periods collapse, leaving a piece that is already normal.
        let s = lin(&[1], &[&[1], &[1]]);
        assert_eq!(s.pieces()[0].periods().len(), 1);
        assert_eq!(s.normalize(100).unwrap(), s);

        let s = lin(&[0, 1], &[&[1, 0]]);
        let n = s.normalize(100).unwrap();
        assert!(n.pieces().iter().all(LinearPiece::is_normal));
        for v in boxed(2, 4) {
            assert_eq!(s.contains(&v), n.contains(&v), "{v:?}");
        }
        assert!(n.pieces().contains(&LinearPiece::new(vec![0, 1], [])));
    }

    #[test]
    fn dump_format() {
        let s = lin(&[1, 0], &[&[1, 0], &[0, 2]]);
        assert_eq!(s.dump(), "q=1,0 P={0,2;1,0}\n");
    }
}
