//! Bigraded dimension tables and bigraded linear maps.
//!
//! A [`LawsonTable`] stores `dim L_p H_k` for `0 <= 2p <= k <= 2m`. Lookups
//! outside the stored range follow two rules: a negative cycle dimension `p`
//! reads the `p = 0` row of the same degree, and `k < 2p` (or `k` outside
//! `[0, 2m]`) is zero. Every arithmetic operation on tables goes through
//! [`LawsonTable::lookup`], so these rules are applied in one place.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Rational};

/// One cell of a table: an exact dimension, or an upper bound on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimEntry {
    Exact(u64),
    AtMost(u64),
}

impl DimEntry {
    pub const ZERO: DimEntry = DimEntry::Exact(0);

    pub fn exact(v: u64) -> Self {
        DimEntry::Exact(v)
    }

    /// `at_most(0)` collapses to the canonical zero.
    pub fn at_most(v: u64) -> Self {
        if v == 0 {
            DimEntry::Exact(0)
        } else {
            DimEntry::AtMost(v)
        }
    }

    pub fn value(self) -> u64 {
        match self {
            DimEntry::Exact(v) | DimEntry::AtMost(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, DimEntry::Exact(_))
    }

    pub fn is_zero(self) -> bool {
        self == DimEntry::ZERO
    }

    pub fn exact_value(self) -> Option<u64> {
        match self {
            DimEntry::Exact(v) => Some(v),
            DimEntry::AtMost(_) => None,
        }
    }
}

impl Default for DimEntry {
    fn default() -> Self {
        DimEntry::ZERO
    }
}

impl Add for DimEntry {
    type Output = DimEntry;

    fn add(self, rhs: DimEntry) -> DimEntry {
        match (self, rhs) {
            (DimEntry::Exact(a), DimEntry::Exact(b)) => DimEntry::Exact(a + b),
            (a, b) => DimEntry::at_most(a.value() + b.value()),
        }
    }
}

impl fmt::Display for DimEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimEntry::Exact(v) => write!(f, "{v}"),
            DimEntry::AtMost(v) => write!(f, "<={v}"),
        }
    }
}

/// Index pair `(p, k)`. Ordered by `k` first, then `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub k: i64,
    pub p: i64,
}

impl Bidegree {
    pub fn new(p: i64, k: i64) -> Self {
        Bidegree { k, p }
    }

    /// The bidegree reached by a map of degree `d`.
    pub fn shifted(self, d: i64) -> Self {
        Bidegree::new(self.p + d, self.k + 2 * d)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.k)
    }
}

/// Which duality statement covers a table, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Origin {
    #[default]
    Unflagged,
    Smooth,
    Quotient,
}

impl Origin {
    /// Origin of a product of two such varieties.
    pub fn product(self, other: Origin) -> Origin {
        match (self, other) {
            (Origin::Unflagged, _) | (_, Origin::Unflagged) => Origin::Unflagged,
            (Origin::Smooth, Origin::Smooth) => Origin::Smooth,
            _ => Origin::Quotient,
        }
    }

    pub fn has_duality(self) -> bool {
        self != Origin::Unflagged
    }
}

#[derive(Clone, Debug, Default)]
pub struct LawsonTable {
    dim: u32,
    entries: BTreeMap<Bidegree, DimEntry>,
    origin: Origin,
}

// Origin is provenance metadata; two tables are equal when their cells are.
impl PartialEq for LawsonTable {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for LawsonTable {}

fn check_support(dim: u32, p: i64, k: i64) -> Result<()> {
    if p < 0 {
        return Err(Error::Support {
            p,
            k,
            reason: "p < 0 is never stored",
        });
    }
    if k < 2 * p {
        return Err(Error::Support {
            p,
            k,
            reason: "k < 2p",
        });
    }
    if k > 2 * i64::from(dim) {
        return Err(Error::Support {
            p,
            k,
            reason: "k > 2*dim",
        });
    }
    Ok(())
}

impl LawsonTable {
    /// Build from `((p, k), entry)` pairs. Zero entries are dropped; keys
    /// outside `0 <= 2p <= k <= 2*dim` and repeated keys are rejected.
    pub fn new<I>(dim: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((i64, i64), DimEntry)>,
    {
        let mut map = BTreeMap::new();
        for ((p, k), e) in entries {
            check_support(dim, p, k)?;
            let key = Bidegree::new(p, k);
            if map.contains_key(&key) {
                return Err(Error::InvalidArgument(format!("duplicate entry at {key}")));
            }
            if !e.is_zero() {
                map.insert(key, e);
            }
        }
        Ok(LawsonTable {
            dim,
            entries: map,
            origin: Origin::Unflagged,
        })
    }

    /// Build from exact integer triples `(p, k, dim)`.
    pub fn from_exact(dim: u32, cells: &[(i64, i64, u64)]) -> Result<Self> {
        Self::new(
            dim,
            cells.iter().map(|&(p, k, d)| ((p, k), DimEntry::Exact(d))),
        )
    }

    pub fn empty(dim: u32) -> Self {
        LawsonTable {
            dim,
            entries: BTreeMap::new(),
            origin: Origin::Unflagged,
        }
    }

    pub fn point() -> Self {
        let mut t = Self::empty(0);
        t.entries.insert(Bidegree::new(0, 0), DimEntry::Exact(1));
        t.origin = Origin::Smooth;
        t
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    /// Stored nonzero cells, sorted by `(k, p)`.
    pub fn entries(&self) -> impl Iterator<Item = (Bidegree, DimEntry)> + '_ {
        self.entries.iter().map(|(b, e)| (*b, *e))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, p: i64, k: i64) -> DimEntry {
        let p = p.max(0);
        if k < 2 * p || k < 0 || k > 2 * i64::from(self.dim) {
            return DimEntry::ZERO;
        }
        self.entries
            .get(&Bidegree::new(p, k))
            .copied()
            .unwrap_or(DimEntry::ZERO)
    }

    pub fn is_exact(&self) -> bool {
        self.entries.values().all(|e| e.is_exact())
    }

    pub fn require_exact(&self, context: &str) -> Result<()> {
        match self.entries.iter().find(|(_, e)| !e.is_exact()) {
            None => Ok(()),
            Some((b, _)) => Err(Error::BoundedEntry {
                context: format!("{context}: cell {b}"),
            }),
        }
    }

    /// Exact dimension of a cell after clamping; errors on a bound.
    pub fn exact_dim(&self, p: i64, k: i64) -> Result<usize> {
        match self.lookup(p, k) {
            DimEntry::Exact(v) => Ok(v as usize),
            DimEntry::AtMost(_) => Err(Error::BoundedEntry {
                context: format!("cell ({p},{k})"),
            }),
        }
    }

    /// Sum of all stored cells.
    pub fn total_dimension(&self) -> u64 {
        self.entries.values().map(|e| e.value()).sum()
    }

    /// Sum of the `p = 0` row, the total Betti number.
    pub fn total_betti(&self) -> u64 {
        self.homology_row().iter().map(|e| e.value()).sum()
    }

    /// Alternating sum of the `p = 0` row.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=2 * i64::from(self.dim))
            .map(|k| {
                let v = self.lookup(0, k).value() as i64;
                if k % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// Values of the `p = 0` row for `k = 0..=2m`.
    pub fn homology_row(&self) -> Vec<DimEntry> {
        (0..=2 * i64::from(self.dim))
            .map(|k| self.lookup(0, k))
            .collect()
    }

    /// The table restricted to its `p = 0` row.
    pub fn p0_row(&self) -> LawsonTable {
        LawsonTable {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .filter(|(b, _)| b.p == 0)
                .map(|(b, e)| (*b, *e))
                .collect(),
            origin: Origin::Unflagged,
        }
    }

    /// Twist by `r`: the result reads `self` at `(p + r, k + 2r)`, so
    /// `r = -1` tensors with the Lefschetz motive. The dimension moves by
    /// `-r`; cells pushed below `k = 0` are dropped.
    pub fn twist(&self, r: i64) -> LawsonTable {
        if r == 0 {
            return self.clone().with_origin(Origin::Unflagged);
        }
        let dim = (i64::from(self.dim) - r).max(0);
        let mut entries = BTreeMap::new();
        for k in 0..=2 * dim {
            for p in 0..=k / 2 {
                let e = self.lookup(p + r, k + 2 * r);
                if !e.is_zero() {
                    entries.insert(Bidegree::new(p, k), e);
                }
            }
        }
        LawsonTable {
            dim: dim as u32,
            entries,
            origin: Origin::Unflagged,
        }
    }

    /// Multiplicities of classes by their top cycle dimension.
    ///
    /// A class of degree `k` that lives in every row `p <= j` contributes
    /// to the generator at `(j, k)`; the stored table is recovered by
    /// summing generators over `j >= p` ([`LawsonTable::from_generators`]).
    /// Twisted points and curve pieces each contribute a single generator,
    /// which is what makes products and symmetric powers computable.
    pub fn generators(&self) -> Result<BTreeMap<Bidegree, i64>> {
        self.require_exact("generator decomposition")?;
        let mut out = BTreeMap::new();
        for (&b, e) in &self.entries {
            let here = e.value() as i64;
            let above = self.lookup(b.p + 1, b.k).value() as i64;
            let g = here - above;
            if g != 0 {
                out.insert(b, g);
            }
        }
        // Columns that vanish at p but not at p + 1 also need a generator.
        for (&b, e) in &self.entries {
            if b.p > 0 && self.lookup(b.p - 1, b.k).is_zero() {
                let below = Bidegree::new(b.p - 1, b.k);
                *out.entry(below).or_insert(0) -= e.value() as i64;
            }
        }
        out.retain(|_, g| *g != 0);
        Ok(out)
    }

    /// Inverse of [`LawsonTable::generators`].
    pub fn from_generators(dim: u32, gens: &BTreeMap<Bidegree, i64>) -> Result<LawsonTable> {
        let mut acc: BTreeMap<Bidegree, i64> = BTreeMap::new();
        for (&b, &g) in gens {
            check_support(dim, b.p, b.k)?;
            for p in 0..=b.p {
                *acc.entry(Bidegree::new(p, b.k)).or_insert(0) += g;
            }
        }
        let mut entries = BTreeMap::new();
        for (b, v) in acc {
            if v < 0 {
                return Err(Error::NegativeDimension { p: b.p, k: b.k });
            }
            if v > 0 {
                entries.insert(b, DimEntry::Exact(v as u64));
            }
        }
        Ok(LawsonTable {
            dim,
            entries,
            origin: Origin::Unflagged,
        })
    }

    /// True when every class sits in even degree `2j` with top cycle
    /// dimension `j`, the shape produced by an affine cell decomposition.
    pub fn is_cellular_shaped(&self) -> bool {
        match self.generators() {
            Ok(g) => g
                .iter()
                .all(|(b, &v)| b.k % 2 == 0 && b.p == b.k / 2 && v > 0),
            Err(_) => false,
        }
    }

    /// Morphic table via `L^q H^l = L_{m-q} H_{2m-l}`.
    pub fn dual_relabel(&self) -> Result<MorphicTable> {
        if !self.origin.has_duality() {
            return Err(Error::DualityUnavailable);
        }
        let m = i64::from(self.dim);
        let mut entries = BTreeMap::new();
        for q in 0..=m {
            for l in 0..=2 * q {
                let e = self.lookup(m - q, 2 * m - l);
                if !e.is_zero() {
                    entries.insert((l, q), e);
                }
            }
        }
        Ok(MorphicTable {
            dim: self.dim,
            stable_from: m,
            entries,
        })
    }
}

/// Entrywise sum; the dimension of the result is the largest summand's.
pub fn direct_sum<'a, I>(tables: I) -> LawsonTable
where
    I: IntoIterator<Item = &'a LawsonTable>,
{
    let mut out = LawsonTable::empty(0);
    for t in tables {
        out.dim = out.dim.max(t.dim);
        for (&b, &e) in &t.entries {
            let cur = out.entries.get(&b).copied().unwrap_or_default();
            out.entries.insert(b, cur + e);
        }
    }
    out
}

/// Product table of two exact tables, by convolving their generators.
/// Only meaningful when one factor is cellular; callers enforce that.
pub fn tensor_convolve(a: &LawsonTable, b: &LawsonTable) -> Result<LawsonTable> {
    let ga = a.generators()?;
    let gb = b.generators()?;
    let mut out: BTreeMap<Bidegree, i64> = BTreeMap::new();
    for (x, &u) in &ga {
        for (y, &v) in &gb {
            let key = Bidegree::new(x.p + y.p, x.k + y.k);
            *out.entry(key).or_insert(0) += u * v;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(LawsonTable::from_generators(a.dim + b.dim, &out)?.with_origin(a.origin.product(b.origin)))
}

/// Morphic cohomology dimensions `dim L^q H^l`, zero unless `0 <= l <= 2q`.
///
/// Rows stabilize in `q`: every row `q >= stable_from` equals the row at
/// `stable_from`, so only finitely many cells are stored.
#[derive(Clone, Debug)]
pub struct MorphicTable {
    dim: u32,
    stable_from: i64,
    entries: BTreeMap<(i64, i64), DimEntry>,
}

impl MorphicTable {
    pub fn empty(dim: u32) -> Self {
        MorphicTable {
            dim,
            stable_from: 0,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn stable_from(&self) -> i64 {
        self.stable_from
    }

    pub fn lookup(&self, q: i64, l: i64) -> DimEntry {
        if q < 0 || l < 0 || 2 * q < l {
            return DimEntry::ZERO;
        }
        let q = q.min(self.stable_from);
        self.entries.get(&(l, q)).copied().unwrap_or(DimEntry::ZERO)
    }

    /// Stored cells `(q, l, entry)` for `q <= stable_from`, sorted by `(l, q)`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, DimEntry)> + '_ {
        self.entries.iter().map(|(&(l, q), &e)| (q, l, e))
    }

    fn from_fn(dim: u32, stable_from: i64, f: impl Fn(i64, i64) -> DimEntry) -> Self {
        let mut entries = BTreeMap::new();
        for q in 0..=stable_from {
            for l in 0..=2 * q {
                let e = f(q, l);
                if !e.is_zero() {
                    entries.insert((l, q), e);
                }
            }
        }
        MorphicTable {
            dim,
            stable_from,
            entries,
        }
    }

    /// The table read at `(q - s, l - 2s)`.
    pub fn shift(&self, s: i64) -> MorphicTable {
        let stable = (self.stable_from + s).max(0);
        let dim = (i64::from(self.dim) + s).max(0) as u32;
        MorphicTable::from_fn(dim, stable, |q, l| self.lookup(q - s, l - 2 * s))
    }

    pub fn direct_sum<'a, I>(tables: I) -> MorphicTable
    where
        I: IntoIterator<Item = &'a MorphicTable>,
    {
        let tables: Vec<&MorphicTable> = tables.into_iter().collect();
        let stable = tables.iter().map(|t| t.stable_from).max().unwrap_or(0);
        let dim = tables.iter().map(|t| t.dim).max().unwrap_or(0);
        MorphicTable::from_fn(dim, stable, |q, l| {
            tables
                .iter()
                .fold(DimEntry::ZERO, |acc, t| acc + t.lookup(q, l))
        })
    }
}

impl PartialEq for MorphicTable {
    fn eq(&self, other: &Self) -> bool {
        let top = self.stable_from.max(other.stable_from) + 1;
        (0..=top).all(|q| (0..=2 * q).all(|l| self.lookup(q, l) == other.lookup(q, l)))
    }
}

impl Eq for MorphicTable {}

/// A family of rational matrices of degree `d`, taking the cell at `(p, k)`
/// of the source table to the cell at `(p + d, k + 2d)` of the target.
/// Missing blocks are zero.
#[derive(Clone, Debug)]
pub struct BigradedMap {
    source: LawsonTable,
    target: LawsonTable,
    degree: i64,
    blocks: BTreeMap<Bidegree, Matrix>,
}

impl BigradedMap {
    pub fn new(
        source: LawsonTable,
        target: LawsonTable,
        degree: i64,
        blocks: BTreeMap<Bidegree, Matrix>,
    ) -> Result<Self> {
        source.require_exact("bigraded map source")?;
        target.require_exact("bigraded map target")?;
        let mut kept = BTreeMap::new();
        for (b, m) in blocks {
            let rows = cell_dim(&target, b.shifted(degree));
            let cols = cell_dim(&source, b);
            if m.shape() != (rows, cols) {
                return Err(Error::Shape {
                    expected_rows: rows,
                    expected_cols: cols,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            if !m.is_zero() {
                kept.insert(b, m);
            }
        }
        Ok(BigradedMap {
            source,
            target,
            degree,
            blocks: kept,
        })
    }

    pub fn zero(source: LawsonTable, target: LawsonTable, degree: i64) -> Result<Self> {
        Self::new(source, target, degree, BTreeMap::new())
    }

    pub fn identity(table: &LawsonTable) -> Result<Self> {
        Self::scalar(table, &Rational::from_integer(1.into()))
    }

    /// `c` times the identity.
    pub fn scalar(table: &LawsonTable, c: &Rational) -> Result<Self> {
        let blocks = table
            .entries()
            .map(|(b, e)| (b, Matrix::scalar(e.value() as usize, c)))
            .collect();
        Self::new(table.clone(), table.clone(), 0, blocks)
    }

    pub fn source(&self) -> &LawsonTable {
        &self.source
    }

    pub fn target(&self) -> &LawsonTable {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Bidegree, &Matrix)> {
        self.blocks.iter().map(|(b, m)| (*b, m))
    }

    /// Block at a source bidegree; zero when absent.
    pub fn block(&self, b: Bidegree) -> Matrix {
        self.blocks.get(&b).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                cell_dim(&self.target, b.shifted(self.degree)),
                cell_dim(&self.source, b),
            )
        })
    }

    fn same_frame(&self, other: &BigradedMap) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree
        {
            return Err(Error::Mismatch(
                "maps have different source, target or degree".to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &BigradedMap) -> Result<BigradedMap> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &BigradedMap) -> Result<BigradedMap> {
        self.combine(other, |a, b| a.sub(b))
    }

    fn combine(
        &self,
        other: &BigradedMap,
        op: impl Fn(&Matrix, &Matrix) -> Result<Matrix>,
    ) -> Result<BigradedMap> {
        self.same_frame(other)?;
        let mut blocks = BTreeMap::new();
        for (b, _) in self.source.entries() {
            blocks.insert(b, op(&self.block(b), &other.block(b))?);
        }
        Self::new(
            self.source.clone(),
            self.target.clone(),
            self.degree,
            blocks,
        )
    }

    pub fn scale(&self, c: &Rational) -> BigradedMap {
        let blocks = self
            .blocks
            .iter()
            .map(|(b, m)| (*b, m.scale(c)))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        BigradedMap {
            blocks,
            ..self.clone()
        }
    }

    /// Degree-0 endomorphism with `p * p = p` in every block.
    pub fn check_idempotent(&self) -> Result<()> {
        if self.degree != 0 || self.source != self.target {
            return Err(Error::Mismatch(
                "projector must be a degree-0 endomorphism".to_string(),
            ));
        }
        for (b, m) in &self.blocks {
            if &m.mul(m)? != m {
                return Err(Error::NotIdempotent { p: b.p, k: b.k });
            }
        }
        Ok(())
    }

    /// Block-wise transpose, a map of degree `-d` from target to source.
    pub fn transpose(&self) -> BigradedMap {
        let blocks = self
            .blocks
            .iter()
            .map(|(b, m)| (b.shifted(self.degree), m.transpose()))
            .collect();
        BigradedMap {
            source: self.target.clone(),
            target: self.source.clone(),
            degree: -self.degree,
            blocks,
        }
    }

    /// Ranks of the blocks, placed at their target bidegrees.
    pub fn image_dims(&self) -> LawsonTable {
        let mut t = LawsonTable::empty(self.target.dim);
        for (b, m) in &self.blocks {
            let r = m.rank() as u64;
            if r > 0 {
                t.entries.insert(b.shifted(self.degree), DimEntry::Exact(r));
            }
        }
        t
    }
}

impl PartialEq for BigradedMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.degree == other.degree
            && self.blocks == other.blocks
    }
}

impl Eq for BigradedMap {}

fn cell_dim(t: &LawsonTable, b: Bidegree) -> usize {
    if b.p < 0 {
        return 0;
    }
    t.lookup(b.p, b.k).value() as usize
}

/// `g` after `f`.
pub fn map_compose(g: &BigradedMap, f: &BigradedMap) -> Result<BigradedMap> {
    if f.target != g.source {
        return Err(Error::Mismatch(
            "target of the first map is not the source of the second".to_string(),
        ));
    }
    let mut blocks = BTreeMap::new();
    for (b, fm) in &f.blocks {
        let mid = b.shifted(f.degree);
        if let Some(gm) = g.blocks.get(&mid) {
            blocks.insert(*b, gm.mul(fm)?);
        }
    }
    BigradedMap::new(
        f.source.clone(),
        g.target.clone(),
        f.degree + g.degree,
        blocks,
    )
}

/// True when the map is zero in every block.
pub fn is_zero_map(f: &BigradedMap) -> bool {
    f.blocks.values().all(Matrix::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::integer;
    use alloc::vec;

    fn p1() -> LawsonTable {
        LawsonTable::from_exact(1, &[(0, 0, 1), (0, 2, 1), (1, 2, 1)]).unwrap()
    }

    fn p2() -> LawsonTable {
        LawsonTable::from_exact(
            2,
            &[
                (0, 0, 1),
                (0, 2, 1),
                (1, 2, 1),
                (0, 4, 1),
                (1, 4, 1),
                (2, 4, 1),
            ],
        )
        .unwrap()
    }

    fn column_table(dim: u32, cols: &[(i64, i64, u64)]) -> LawsonTable {
        // (k, top p, value): value in every row p <= top
        let mut cells = vec![];
        for &(k, top, v) in cols {
            for p in 0..=top {
                cells.push((p, k, v));
            }
        }
        LawsonTable::from_exact(dim, &cells).unwrap()
    }

    #[test]
    fn lookup_rules() {
        let t = p2();
        assert_eq!(t.lookup(0, 5), DimEntry::ZERO);
        assert_eq!(t.lookup(3, 4), DimEntry::ZERO);
        assert_eq!(t.lookup(-3, 2), DimEntry::Exact(1));
        assert_eq!(t.lookup(0, -1), DimEntry::ZERO);
        assert_eq!(t.lookup(0, 6), DimEntry::ZERO);
    }

    #[test]
    fn construction_rejects_bad_keys() {
        let err = LawsonTable::from_exact(1, &[(2, 2, 1)]).unwrap_err();
        assert!(matches!(
            err,
            Error::Support {
                reason: "k < 2p",
                ..
            }
        ));
        assert!(LawsonTable::from_exact(1, &[(0, 3, 1)]).is_err());
        assert!(LawsonTable::from_exact(1, &[(-1, 0, 1)]).is_err());
    }

    #[test]
    fn at_most_zero_normalizes() {
        assert_eq!(DimEntry::at_most(0), DimEntry::Exact(0));
        assert_eq!(
            DimEntry::Exact(2) + DimEntry::at_most(1),
            DimEntry::AtMost(3)
        );
    }

    #[test]
    fn twist_examples() {
        let lef = LawsonTable::point().twist(-1);
        assert_eq!(lef, column_table(1, &[(2, 1, 1)]));
        assert_eq!(p2().twist(0), p2());
        let t = p1().twist(-1);
        assert_eq!(t, column_table(2, &[(2, 1, 1), (4, 2, 1)]));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum([]), LawsonTable::empty(0));
        let pt = LawsonTable::point();
        let two = direct_sum([&pt, &pt]);
        assert_eq!(two.lookup(0, 0), DimEntry::Exact(2));
        let tw = p1().twist(-1);
        let s = direct_sum([&p1(), &tw]);
        assert_eq!(s, column_table(2, &[(0, 0, 1), (2, 1, 2), (4, 2, 1)]));
    }

    #[test]
    fn dual_relabel_examples() {
        let t = p2().with_origin(Origin::Smooth);
        let m = t.dual_relabel().unwrap();
        assert_eq!(m.lookup(1, 2), DimEntry::Exact(1));
        assert_eq!(m.lookup(0, 1), DimEntry::ZERO);
        assert_eq!(m.lookup(3, 2), DimEntry::Exact(1));
        assert_eq!(m.lookup(7, 4), DimEntry::Exact(1));
        assert_eq!(p2().dual_relabel().unwrap_err(), Error::DualityUnavailable);
    }

    #[test]
    fn tensor_convolve_examples() {
        let pt = LawsonTable::point();
        assert_eq!(tensor_convolve(&pt, &p2()).unwrap(), p2());
        assert_eq!(
            tensor_convolve(&p1(), &p1()).unwrap(),
            column_table(2, &[(0, 0, 1), (2, 1, 2), (4, 2, 1)])
        );
        // pairs i1 + i2 = j with 0 <= i1, i2 <= 2
        assert_eq!(
            tensor_convolve(&p2(), &p2()).unwrap(),
            column_table(4, &[(0, 0, 1), (2, 1, 2), (4, 2, 3), (6, 3, 2), (8, 4, 1)])
        );
    }

    #[test]
    fn generators_round_trip_irregular_columns() {
        // column k=2 with values 1 at p=0 and 2 at p=1
        let t = LawsonTable::from_exact(1, &[(0, 2, 1), (1, 2, 2)]).unwrap();
        let g = t.generators().unwrap();
        assert_eq!(g.get(&Bidegree::new(0, 2)), Some(&-1));
        assert_eq!(LawsonTable::from_generators(1, &g).unwrap(), t);
        // a gap at p=0 under a nonzero p=1 cell
        let t = LawsonTable::from_exact(1, &[(1, 2, 1)]).unwrap();
        let g = t.generators().unwrap();
        assert_eq!(LawsonTable::from_generators(1, &g).unwrap(), t);
        assert!(!t.is_cellular_shaped());
        assert!(p2().is_cellular_shaped());
    }

    #[test]
    fn map_compose_and_units() {
        let t = p1();
        let id = BigradedMap::identity(&t).unwrap();
        let mut blocks = BTreeMap::new();
        blocks.insert(Bidegree::new(0, 2), Matrix::from_i64(&[&[3]]));
        let f = BigradedMap::new(t.clone(), t.clone(), 0, blocks).unwrap();
        assert_eq!(map_compose(&id, &f).unwrap(), f);
        assert_eq!(map_compose(&f, &id).unwrap(), f);
        let img = f.image_dims();
        assert_eq!(img.lookup(0, 2), DimEntry::Exact(1));
        assert_eq!(img.lookup(0, 0), DimEntry::ZERO);
        assert_eq!(id.image_dims(), t);
        let zero = BigradedMap::zero(t.clone(), t.clone(), 0).unwrap();
        assert!(zero.image_dims().is_empty());
    }

    #[test]
    fn map_shape_checked() {
        let t = p1();
        let mut blocks = BTreeMap::new();
        blocks.insert(Bidegree::new(0, 2), Matrix::from_i64(&[&[1, 0]]));
        assert!(matches!(
            BigradedMap::new(t.clone(), t.clone(), 0, blocks),
            Err(Error::Shape { .. })
        ));
        let other = p2();
        let f = BigradedMap::identity(&t).unwrap();
        let g = BigradedMap::identity(&other).unwrap();
        assert!(map_compose(&g, &f).is_err());
    }

    #[test]
    fn rank_one_projector_image() {
        let t = LawsonTable::from_exact(1, &[(0, 1, 2)]).unwrap();
        let mut blocks = BTreeMap::new();
        blocks.insert(Bidegree::new(0, 1), Matrix::from_i64(&[&[1, 1], &[0, 0]]));
        let f = BigradedMap::new(t.clone(), t, 0, blocks).unwrap();
        f.check_idempotent().unwrap();
        assert_eq!(f.image_dims().lookup(0, 1), DimEntry::Exact(1));
        let scaled = f.scale(&integer(0));
        assert!(is_zero_map(&scaled));
    }

    #[test]
    fn euler_and_total() {
        assert_eq!(p2().euler_characteristic(), 3);
        assert_eq!(p2().total_dimension(), 6);
    }
}
