//! Partitions and the tables of Hilbert schemes of points on a surface.
//!
//! For a surface `X`, the table of `X^[n]` is the sum over partitions `nu`
//! of `n` of the table of `X^(nu) = X^(a_1) x ... x X^(a_n)` twisted by
//! `-(n - l(nu))`, where `a_i` counts the parts equal to `i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::atoms::Atom;
use crate::bigraded::{direct_sum, DimEntry, LawsonTable, MorphicTable, Origin};
use crate::error::{Error, Result};
use crate::quotient::{sym_product_table, SymScope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionData {
    parts: Vec<u32>,
    multiplicities: Vec<u32>,
    sign_weight: i64,
}

impl PartitionData {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".to_string(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n: u32 = parts.iter().sum();
        let mut multiplicities = alloc::vec![0u32; n as usize];
        for &p in &parts {
            multiplicities[p as usize - 1] += 1;
        }
        let sign = if (n as usize - parts.len()).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let sign_weight = sign * parts.iter().map(|&p| i64::from(p)).product::<i64>();
        Ok(PartitionData {
            parts,
            multiplicities,
            sign_weight,
        })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(nu)`.
    pub fn length(&self) -> u32 {
        self.parts.len() as u32
    }

    /// `a_i` at index `i - 1`.
    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// `(-1)^(n - l) * prod parts`.
    pub fn sign_weight(&self) -> i64 {
        self.sign_weight
    }

    /// The Tate twist `n - l(nu)` carried by this stratum.
    pub fn shift(&self) -> u32 {
        self.size() - self.length()
    }
}

impl fmt::Display for PartitionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, largest first part first.
pub fn partitions_of(n: u32) -> Result<Vec<PartitionData>> {
    if n < 1 {
        return Err(Error::InvalidArgument("partitions need n >= 1".to_string()));
    }
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    go(n, n, &mut Vec::new(), &mut raw);
    raw.into_iter().map(PartitionData::new).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbMode {
    Numeric,
    Symbolic,
    /// The `p = 0` row only; valid for any surface.
    P0Row,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTerm {
    pub partition: PartitionData,
    pub p_shift: u32,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicDecomposition {
    pub n: u32,
    pub terms: Vec<SymbolicTerm>,
}

impl fmt::Display for SymbolicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{}  shift={}  {}", t.partition, t.p_shift, t.label)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbOutput {
    Table(LawsonTable),
    Symbolic(SymbolicDecomposition),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphicOutput {
    Table(MorphicTable),
    Symbolic(SymbolicDecomposition),
}

fn index_offset(base: &str, s: u32, factor: u32) -> String {
    match s * factor {
        0 => base.to_string(),
        d => format!("{base}-{d}"),
    }
}

fn symbolic(surface: &Atom, n: u32, morphic: bool) -> Result<SymbolicDecomposition> {
    let terms = partitions_of(n)?
        .into_iter()
        .map(|nu| {
            let s = nu.shift();
            let space = format!("{}^{}", surface.name(), nu);
            let label = if morphic {
                format!(
                    "L^{{{}}}H^{{{}}}({space})",
                    index_offset("q", s, 1),
                    index_offset("l", s, 2)
                )
            } else {
                format!(
                    "L_{{{}}}H_{{{}}}({space})",
                    index_offset("p", s, 1),
                    index_offset("k", s, 2)
                )
            };
            SymbolicTerm {
                partition: nu,
                p_shift: s,
                label,
            }
        })
        .collect();
    Ok(SymbolicDecomposition { n, terms })
}

fn check_surface(surface: &Atom) -> Result<()> {
    if surface.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: i64::from(surface.dim()),
        });
    }
    Ok(())
}

/// Tables of the strata `X^(nu)`, one per partition of `n`.
pub fn strata_tables(
    surface: &Atom,
    n: u32,
    scope: SymScope,
) -> Result<Vec<(PartitionData, LawsonTable)>> {
    check_surface(surface)?;
    partitions_of(n)?
        .into_iter()
        .map(|nu| {
            let t = sym_product_table(surface, nu.multiplicities(), scope)?;
            Ok((nu, t))
        })
        .collect()
}

/// Assemble the table of `X^[n]` from tables of its strata, which may be
/// supplied by the caller for surfaces without a cellular structure.
pub fn hilb_from_strata(n: u32, strata: &[(PartitionData, LawsonTable)]) -> Result<LawsonTable> {
    if n == 0 {
        return Ok(LawsonTable::point());
    }
    let mut parts = Vec::with_capacity(strata.len());
    for (nu, t) in strata {
        if nu.size() != n {
            return Err(Error::InvalidArgument(format!(
                "stratum {nu} is not a partition of {n}"
            )));
        }
        parts.push(t.twist(-i64::from(nu.shift())));
    }
    let mut out = direct_sum(&parts);
    if out.dim() < 2 * n {
        out = direct_sum([&out, &LawsonTable::empty(2 * n)]);
    }
    Ok(out.with_origin(Origin::Smooth))
}

fn require_cellular(surface: &Atom, n: u32) -> Result<()> {
    if !surface.is_cellular() {
        return Err(Error::KunnethGuard {
            detail: format!(
                "`{}` is not cellular; the numeric table of its Hilbert scheme of {n} points \
                 needs products of non-cellular factors",
                surface.name()
            ),
        });
    }
    Ok(())
}

pub fn hilb_lawson(surface: &Atom, n: u32, mode: HilbMode) -> Result<HilbOutput> {
    check_surface(surface)?;
    if mode == HilbMode::Symbolic {
        return symbolic(surface, n, false).map(HilbOutput::Symbolic);
    }
    if n == 0 {
        return Ok(HilbOutput::Table(LawsonTable::point()));
    }
    match mode {
        HilbMode::Numeric => {
            require_cellular(surface, n)?;
            let strata = strata_tables(surface, n, SymScope::Cellular)?;
            hilb_from_strata(n, &strata).map(HilbOutput::Table)
        }
        _ => {
            let strata = strata_tables(surface, n, SymScope::P0Row)?;
            let row = hilb_from_strata(n, &strata)?.p0_row();
            Ok(HilbOutput::Table(row))
        }
    }
}

/// Numeric table, as a convenience for callers that need one.
pub fn hilb_table(surface: &Atom, n: u32) -> Result<LawsonTable> {
    match hilb_lawson(surface, n, HilbMode::Numeric)? {
        HilbOutput::Table(t) => Ok(t),
        HilbOutput::Symbolic(_) => unreachable!("numeric mode returns a table"),
    }
}

pub fn hilb_morphic(surface: &Atom, n: u32, mode: HilbMode) -> Result<MorphicOutput> {
    check_surface(surface)?;
    match mode {
        HilbMode::Symbolic => symbolic(surface, n, true).map(MorphicOutput::Symbolic),
        HilbMode::P0Row => Err(Error::InvalidArgument(
            "morphic tables have no p = 0 row mode; use numeric".to_string(),
        )),
        HilbMode::Numeric => {
            if n == 0 {
                return LawsonTable::point()
                    .dual_relabel()
                    .map(MorphicOutput::Table);
            }
            require_cellular(surface, n)?;
            let parts = strata_tables(surface, n, SymScope::Cellular)?
                .into_iter()
                .map(|(nu, t)| Ok(t.dual_relabel()?.shift(i64::from(nu.shift()))))
                .collect::<Result<Vec<_>>>()?;
            Ok(MorphicOutput::Table(MorphicTable::direct_sum(&parts)))
        }
    }
}

/// How to read the semi-topological K-theory decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsstForm {
    /// `sum_j dim L_j H_{2j+p}(X^[n])`.
    Reindexed,
    /// `sum_nu sum_j dim L_j H_{2j+p-n+l(nu)}(X^(nu))`, as usually printed.
    Literal,
}

pub fn ksst_dims(surface: &Atom, n: u32, p: i64, form: KsstForm) -> Result<DimEntry> {
    check_surface(surface)?;
    require_cellular(surface, n.max(1))?;
    let top = 4 * i64::from(n);
    match form {
        KsstForm::Reindexed => {
            let h = hilb_table(surface, n)?;
            Ok((0..=top).fold(DimEntry::ZERO, |acc, j| acc + h.lookup(j, 2 * j + p)))
        }
        KsstForm::Literal => {
            if n == 0 {
                return Ok(LawsonTable::point().lookup(0, p));
            }
            let mut acc = DimEntry::ZERO;
            for (nu, t) in strata_tables(surface, n, SymScope::Cellular)? {
                let s = i64::from(nu.shift());
                for j in 0..=top {
                    acc = acc + t.lookup(j, 2 * j + p - s);
                }
            }
            Ok(acc)
        }
    }
}

/// Polynomial in `q, s, t` with nonnegative integer coefficients; `q`
/// counts points, `s` the cycle dimension `p`, `t` the degree `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<(u32, i64, i64), u64>,
}

impl Polynomial {
    /// Coefficient of `q^n s^p t^k`.
    pub fn coefficient(&self, n: u32, p: i64, k: i64) -> u64 {
        self.terms.get(&(n, k, p)).copied().unwrap_or(0)
    }

    /// `(n, p, k, coefficient)` sorted by `(n, k, p)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64, i64, u64)> + '_ {
        self.terms.iter().map(|(&(n, k, p), &c)| (n, p, k, c))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(n, k, p), &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (var, e) in [("q", i64::from(n)), ("s", p), ("t", k)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    e => factors.push(format!("{var}^{e}")),
                }
            }
            match (c, factors.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", factors.join("*"))?,
                (c, false) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `sum_{n <= max_n} q^n sum_{(p,k)} dim L_p H_k(X^[n]) s^p t^k`.
pub fn generating_function(surface: &Atom, max_n: u32) -> Result<Polynomial> {
    let mut poly = Polynomial::default();
    for n in 0..=max_n {
        let t = hilb_table(surface, n)?;
        for (b, e) in t.entries() {
            poly.terms.insert((n, b.k, b.p), e.value());
        }
    }
    Ok(poly)
}
