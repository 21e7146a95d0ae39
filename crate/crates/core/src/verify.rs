//! Independent oracles and the invariant suites built on them.
//!
//! Oracles work from definitions: explicit tensor bases with Koszul signs,
//! explicit permutation matrices, naive power series and multiset
//! enumeration. Suites compare them with the engine and report exact
//! values.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::atoms::{builtin_atom, Atom, AtomSpec, Builtin};
use crate::bigraded::{direct_sum, map_compose, Bidegree, BigradedMap, DimEntry, LawsonTable};
use crate::decompose::{
    blow_up, cellular_decompose, product_with_cellular, projective_bundle, CellList,
};
use crate::error::{Error, Result};
use crate::hilb::{
    hilb_lawson, hilb_morphic, hilb_table, ksst_dims, strata_tables, HilbMode, HilbOutput,
    KsstForm, MorphicOutput,
};
use crate::matrix::{Matrix, Rational};
use crate::quotient::{graded_sym_power, reynolds_invariants, GroupAction, SymScope};

/// Largest basis the tensor oracle will expand.
pub const TENSOR_BASIS_CAP: usize = 6;
/// Largest tensor power the tensor oracle will expand.
pub const TENSOR_POWER_CAP: u32 = 4;
/// Largest `n` for the Euler product oracle.
pub const EULER_MAX_N: u32 = 12;
/// Largest `n` in the Hilbert-scheme suites.
pub const HILB_MAX_N: u32 = 6;
/// Largest `n` in the duality suite.
pub const DUALITY_MAX_N: u32 = 4;
pub const BLOWUP_INSTANCES: usize = 20;
pub const QUOTIENT_INSTANCES_PER_GROUP: usize = 4;
pub const SEED: u64 = 0x4c61_7773_6f6e;

pub const SUITES: &[&str] = &[
    "blowup-cellular",
    "curve-sym",
    "duality",
    "hilb-euler",
    "hilb-p0",
    "ksst",
    "kunneth-guard",
    "pn-closed-form",
    "quotient-identities",
    "sym2-p1",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub suite: String,
    pub oracle: String,
    pub instance: String,
    pub expected: String,
    pub engine: String,
    pub passed: bool,
}

impl OracleReport {
    fn new(suite: &str, oracle: &str, instance: String, expected: String, engine: String) -> Self {
        let passed = expected == engine;
        OracleReport {
            suite: suite.to_string(),
            oracle: oracle.to_string(),
            instance,
            expected,
            engine,
            passed,
        }
    }

    fn from_result(
        suite: &str,
        oracle: &str,
        instance: String,
        expected: Result<String>,
        engine: Result<String>,
    ) -> Self {
        let show = |r: Result<String>| r.unwrap_or_else(|e| format!("error: {e}"));
        let both_ok = expected.is_ok() && engine.is_ok();
        let mut r = Self::new(suite, oracle, instance, show(expected), show(engine));
        r.passed &= both_ok;
        r
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} [{}] expected={} engine={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.oracle,
            self.instance,
            self.expected,
            self.engine
        )
    }
}

/// Compact exact rendering of a table: `dim|p,k=v;...` sorted by `(k, p)`.
pub fn table_signature(t: &LawsonTable) -> String {
    let mut s = format!("dim{}|", t.dim());
    let cells: Vec<String> = t
        .entries()
        .filter(|(_, e)| !e.is_zero())
        .map(|(b, e)| format!("{},{}={}", b.p, b.k, e))
        .collect();
    s.push_str(&cells.join(";"));
    s
}

fn row_signature(row: &BTreeMap<i64, u64>) -> String {
    let cells: Vec<String> = row
        .iter()
        .filter(|(_, &v)| v != 0)
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    cells.join(" ")
}

// ---------------------------------------------------------------------------
// oracles

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Nondecreasing index sequences of length `n` over `0..size`.
fn multisets(size: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, size: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..size {
            cur.push(i);
            go(i, size, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, size, n, &mut Vec::new(), &mut out);
    out
}

/// Sign of moving the factor in slot `i` to slot `sigma[i]` for factors of
/// the given parities.
fn koszul_sign(sigma: &[usize], odd: &[bool]) -> i64 {
    let mut sign = 1;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] && odd[i] && odd[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Per-bidegree invariants of `S_n` acting on the `n`-th tensor power with
/// Koszul signs, by explicit permutation matrices on each orbit block.
///
/// The input is read through its generators `g(j,k) = T(j,k) - T(j+1,k)`,
/// one basis vector each; the result is expanded back down the columns.
pub fn oracle_tensor_invariants(table: &LawsonTable, n: u32) -> Result<LawsonTable> {
    if n > TENSOR_POWER_CAP {
        return Err(Error::CapExceeded(format!(
            "tensor power {n} exceeds {TENSOR_POWER_CAP}"
        )));
    }
    table.require_exact("tensor oracle")?;
    let mut basis: Vec<(i64, i64)> = Vec::new();
    for k in 0..=2 * i64::from(table.dim()) {
        for j in 0..=k / 2 {
            let here = table.lookup(j, k).value() as i64;
            let above = table.lookup(j + 1, k).value() as i64;
            if here < above {
                return Err(Error::NegativeDimension { p: j, k });
            }
            for _ in 0..here - above {
                basis.push((j, k));
            }
        }
    }
    if basis.len() > TENSOR_BASIS_CAP {
        return Err(Error::CapExceeded(format!(
            "basis of size {} exceeds {TENSOR_BASIS_CAP}",
            basis.len()
        )));
    }
    let n = n as usize;
    let perms = permutations(n);
    let mut gens: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for orbit in multisets(basis.len(), n) {
        // all distinct arrangements of the multiset span one block
        let mut words: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| {
                let mut w = alloc::vec![0; n];
                for i in 0..n {
                    w[s[i]] = orbit[i];
                }
                w
            })
            .collect();
        words.sort();
        words.dedup();
        let index = |w: &[usize]| words.iter().position(|x| x == w).expect("word in orbit");
        let mut rows = alloc::vec![alloc::vec![Rational::from_integer(BigInt::from(0)); words.len()]; words.len()];
        for (col, w) in words.iter().enumerate() {
            let odd: Vec<bool> = w.iter().map(|&i| basis[i].1 % 2 != 0).collect();
            for s in &perms {
                let mut image = alloc::vec![0; n];
                for i in 0..n {
                    image[s[i]] = w[i];
                }
                let row = index(&image);
                rows[row][col] += Rational::from_integer(BigInt::from(koszul_sign(s, &odd)));
            }
        }
        let rank = Matrix::from_rows(rows)?.rank() as u64;
        if rank > 0 {
            let deg = orbit
                .iter()
                .fold((0, 0), |acc, &i| (acc.0 + basis[i].0, acc.1 + basis[i].1));
            *gens.entry(deg).or_insert(0) += rank;
        }
    }
    let mut cells = Vec::new();
    for &(j, k) in gens.keys() {
        for p in 0..=j {
            let v: u64 = gens
                .iter()
                .filter(|(&(jj, kk), _)| kk == k && jj >= p)
                .map(|(_, &v)| v)
                .sum();
            cells.push((p, k, v));
        }
    }
    cells.sort_unstable();
    cells.dedup();
    LawsonTable::from_exact(table.dim() * n as u32, &cells)
}

/// Coefficients of `prod_{m=1}^{max_n} (1 - q^m)^{-chi}` up to `q^max_n`.
pub fn oracle_euler_product(chi: i64, max_n: u32) -> Result<Vec<i128>> {
    if max_n > EULER_MAX_N {
        return Err(Error::CapExceeded(format!(
            "max_n {max_n} exceeds {EULER_MAX_N}"
        )));
    }
    let len = max_n as usize + 1;
    let mut c = alloc::vec![0i128; len];
    c[0] = 1;
    for m in 1..len {
        for _ in 0..chi.unsigned_abs() {
            if chi > 0 {
                for i in m..len {
                    c[i] = c[i].checked_add(c[i - m]).ok_or(Error::Overflow)?;
                }
            } else {
                for i in (m..len).rev() {
                    c[i] = c[i].checked_sub(c[i - m]).ok_or(Error::Overflow)?;
                }
            }
        }
    }
    Ok(c)
}

fn own_partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in own_partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Degrees of a basis of `Sym^a` of a graded space, odd classes squaring
/// to zero.
fn sym_degrees(degrees: &[i64], a: usize) -> Vec<i64> {
    multisets(degrees.len(), a)
        .into_iter()
        .filter(|m| m.windows(2).all(|w| w[0] != w[1] || degrees[w[0]] % 2 == 0))
        .map(|m| m.iter().map(|&i| degrees[i]).sum())
        .collect()
}

/// Rational homology of `X^[n]` for a surface with the given Betti row,
/// by enumerating bases of `X^(nu)` directly.
pub fn oracle_hilb_p0_row(betti: &[u64], n: u32) -> BTreeMap<i64, u64> {
    let degrees: Vec<i64> = betti
        .iter()
        .enumerate()
        .flat_map(|(k, &b)| core::iter::repeat_n(k as i64, b as usize))
        .collect();
    let n = n as usize;
    let mut out = BTreeMap::new();
    for nu in own_partitions(n, n) {
        let mut counts = alloc::vec![0usize; n + 1];
        for &part in &nu {
            counts[part] += 1;
        }
        let mut basis: Vec<i64> = alloc::vec![0];
        for &a in counts.iter().filter(|&&a| a > 0) {
            let factor = sym_degrees(&degrees, a);
            basis = basis
                .iter()
                .flat_map(|&x| factor.iter().map(move |&y| x + y))
                .collect();
        }
        let shift = 2 * (n - nu.len()) as i64;
        for d in basis {
            *out.entry(d + shift).or_insert(0) += 1;
        }
    }
    out
}

/// The set `{(p,k) : k even, 0 <= k <= 2n, 2p <= k}`.
pub fn oracle_projective_support(n: u32) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for k in (0..=2 * i64::from(n)).step_by(2) {
        for p in 0..=k / 2 {
            out.push((p, k));
        }
    }
    out.sort_by_key(|&(p, k)| (k, p));
    out
}

// ---------------------------------------------------------------------------
// suites

fn below(rng: &mut ChaCha8Rng, n: u32) -> u32 {
    rng.next_u32() % n
}

fn suite_pn(out: &mut Vec<OracleReport>) {
    for n in 0..=6u32 {
        let expected: Vec<String> = oracle_projective_support(n)
            .into_iter()
            .map(|(p, k)| format!("{p},{k}=1"))
            .collect();
        let mut iterated = LawsonTable::point();
        for i in 1..=n {
            // P^i from P^(i-1): the next cell on top of the previous space
            iterated = direct_sum([&LawsonTable::point(), &iterated.twist(-1)]);
            debug_assert_eq!(iterated.dim(), i);
        }
        for (route, t) in [
            ("bundle", projective_bundle(&LawsonTable::point(), n)),
            ("iterated", iterated),
            (
                "builtin",
                builtin_atom(Builtin::ProjectiveSpace(n)).table().clone(),
            ),
        ] {
            let engine: Vec<String> = t
                .entries()
                .map(|(b, e)| format!("{},{}={}", b.p, b.k, e))
                .collect();
            out.push(OracleReport::new(
                "pn-closed-form",
                "set-construction",
                format!("P{n} {route}"),
                expected.join(";"),
                engine.join(";"),
            ));
        }
    }
}

fn random_cells(rng: &mut ChaCha8Rng, dim: u32) -> Vec<u32> {
    let mut cells = alloc::vec![0, dim];
    for _ in 0..below(rng, 2 * dim + 1) {
        cells.push(below(rng, dim + 1));
    }
    cells.sort_unstable();
    cells
}

fn suite_blowup(out: &mut Vec<OracleReport>) {
    let pt = LawsonTable::point();
    let p2 = builtin_atom(Builtin::ProjectiveSpace(2));
    out.push(OracleReport::from_result(
        "blowup-cellular",
        "cell-filtration",
        "Bl_pt P2 vs cells {0,1,1,2}".to_string(),
        CellList::points(&[0, 1, 1, 2]).map(|c| table_signature(&cellular_decompose(&c))),
        blow_up(p2.table(), &pt, 2).map(|t| table_signature(&t)),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..BLOWUP_INSTANCES {
        let dim = 2 + below(&mut rng, 4);
        let codim = 2 + below(&mut rng, dim - 1);
        let x_cells = random_cells(&mut rng, dim);
        let v_cells = random_cells(&mut rng, dim - codim);
        let chi_x = x_cells.len() as i64;
        let chi_v = v_cells.len() as i64;
        let mut all = x_cells.clone();
        for s in 1..codim {
            all.extend(v_cells.iter().map(|c| c + s));
        }
        let instance = format!("#{i} X{:?} V{:?} codim {codim}", x_cells, v_cells);
        let engine = blow_up(
            &crate::atoms::cellular_table(&x_cells),
            &crate::atoms::cellular_table(&v_cells),
            codim,
        );
        out.push(OracleReport::from_result(
            "blowup-cellular",
            "euler-identity",
            instance.clone(),
            Ok((chi_x + (i64::from(codim) - 1) * chi_v).to_string()),
            engine.clone().map(|t| t.euler_characteristic().to_string()),
        ));
        out.push(OracleReport::from_result(
            "blowup-cellular",
            "cell-filtration",
            instance,
            CellList::points(&all).map(|c| table_signature(&cellular_decompose(&c))),
            engine.map(|t| table_signature(&t)),
        ));
    }
}

#[derive(Clone, Copy, Debug)]
enum TestGroup {
    S2,
    S3,
    Cyclic(u32),
}

impl TestGroup {
    fn order(self) -> u64 {
        match self {
            TestGroup::S2 => 2,
            TestGroup::S3 => 6,
            TestGroup::Cyclic(n) => u64::from(n),
        }
    }

    fn name(self) -> String {
        match self {
            TestGroup::S2 => "S2".to_string(),
            TestGroup::S3 => "S3".to_string(),
            TestGroup::Cyclic(n) => format!("Z{n}"),
        }
    }
}

fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn block_diag(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(Matrix::rows).sum();
    let mut m = Matrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(at + i, at + j, b.get(i, j).clone());
            }
        }
        at += b.rows();
    }
    m
}

fn cycle(len: usize) -> Matrix {
    Matrix::permutation(&(0..len).map(|i| (i + 1) % len).collect::<Vec<_>>())
}

/// Random representation of dimension `d`: generator matrices before
/// conjugation and the dimension of the invariants.
fn random_rep(rng: &mut ChaCha8Rng, group: TestGroup, d: usize) -> (Vec<Matrix>, u64) {
    let gens = match group {
        TestGroup::S3 => 2,
        _ => 1,
    };
    let mut pieces: Vec<Vec<Matrix>> = alloc::vec![Vec::new(); gens];
    let mut invariants = 0;
    let mut left = d;
    while left > 0 {
        match group {
            TestGroup::S2 | TestGroup::Cyclic(_) => {
                let n = match group {
                    TestGroup::Cyclic(n) => n as usize,
                    _ => 2,
                };
                let lens: Vec<usize> = (1..=left.min(n)).filter(|l| n % l == 0).collect();
                let sign_ok = n % 2 == 0;
                let pick = below(rng, lens.len() as u32 + u32::from(sign_ok)) as usize;
                if pick < lens.len() {
                    pieces[0].push(cycle(lens[pick]));
                    invariants += 1;
                    left -= lens[pick];
                } else {
                    pieces[0].push(Matrix::scalar(1, &integer(-1)));
                    left -= 1;
                }
            }
            TestGroup::S3 => {
                let choice = below(rng, if left >= 3 { 3 } else { 2 });
                match choice {
                    0 => {
                        pieces[0].push(Matrix::identity(1));
                        pieces[1].push(Matrix::identity(1));
                        invariants += 1;
                        left -= 1;
                    }
                    1 => {
                        pieces[0].push(Matrix::scalar(1, &integer(-1)));
                        pieces[1].push(Matrix::identity(1));
                        left -= 1;
                    }
                    _ => {
                        pieces[0].push(Matrix::permutation(&[1, 0, 2]));
                        pieces[1].push(cycle(3));
                        invariants += 1;
                        left -= 3;
                    }
                }
            }
        }
    }
    (pieces.iter().map(|p| block_diag(p)).collect(), invariants)
}

/// Unit lower times unit upper triangular, so determinant one.
fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut l = Matrix::identity(d);
    let mut u = Matrix::identity(d);
    for i in 0..d {
        for j in 0..i {
            l.set(i, j, integer(i64::from(below(rng, 5)) - 2));
            u.set(j, i, integer(i64::from(below(rng, 5)) - 2));
        }
    }
    l.mul(&u).expect("square factors")
}

fn quotient_instance(rng: &mut ChaCha8Rng, group: TestGroup) -> Result<(String, String, String)> {
    let m = 1 + below(rng, 3) as i64;
    let mut cells: Vec<(i64, i64)> = Vec::new();
    for _ in 0..1 + below(rng, 4) {
        let k = i64::from(below(rng, 2 * m as u32 + 1));
        let p = i64::from(below(rng, k as u32 / 2 + 1));
        if !cells.contains(&(p, k)) {
            cells.push((p, k));
        }
    }
    let mut reps = Vec::new();
    let mut dims = Vec::new();
    let mut expected = Vec::new();
    for &(p, k) in &cells {
        let d = 1 + below(rng, 4) as usize;
        let (gens, inv) = random_rep(rng, group, d);
        let conj = random_unimodular(rng, d);
        let conj_inv = conj.inverse().ok_or(Error::NotInvertible { p, k })?;
        let gens = gens
            .iter()
            .map(|g| conj.mul(g)?.mul(&conj_inv))
            .collect::<Result<Vec<_>>>()?;
        dims.push((p, k, d as u64));
        expected.push((p, k, inv));
        reps.push(gens);
    }
    let table = LawsonTable::from_exact(m as u32, &dims)?;
    let ngens = reps[0].len();
    let generators = (0..ngens)
        .map(|g| {
            let blocks = cells
                .iter()
                .zip(&reps)
                .map(|(&(p, k), r)| (Bidegree::new(p, k), r[g].clone()))
                .collect();
            BigradedMap::new(table.clone(), table.clone(), 0, blocks)
        })
        .collect::<Result<Vec<_>>>()?;
    let action = GroupAction::new(&table, group.order(), generators)?;
    let q = reynolds_invariants(&table, &action)?;

    let order = integer(group.order() as i64);
    let down_up = map_compose(&q.projection, &q.inclusion)?;
    let up_down = map_compose(&q.inclusion, &q.projection)?;
    let reynolds = action.reynolds_operator()?;
    let checks = [
        down_up == BigradedMap::scalar(&q.invariant_table, &order)?,
        up_down == action.element_sum()?,
        map_compose(&reynolds, &reynolds)? == reynolds,
    ];
    let expected_invariants = table_signature(&LawsonTable::from_exact(m as u32, &expected)?);
    let instance = format!("{} on {}", group.name(), table_signature(&table));
    Ok((
        instance,
        format!("{:?}|{expected_invariants}", [true; 3]),
        format!("{checks:?}|{}", table_signature(&q.invariant_table)),
    ))
}

fn suite_quotient(out: &mut Vec<OracleReport>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x51);
    let groups = [
        TestGroup::S2,
        TestGroup::S3,
        TestGroup::Cyclic(2),
        TestGroup::Cyclic(3),
        TestGroup::Cyclic(4),
        TestGroup::Cyclic(5),
        TestGroup::Cyclic(6),
    ];
    for group in groups {
        for i in 0..QUOTIENT_INSTANCES_PER_GROUP {
            let report = match quotient_instance(&mut rng, group) {
                Ok((instance, expected, engine)) => OracleReport::new(
                    "quotient-identities",
                    "explicit-representation",
                    instance,
                    expected,
                    engine,
                ),
                Err(e) => OracleReport::from_result(
                    "quotient-identities",
                    "explicit-representation",
                    format!("{} #{i}", group.name()),
                    Ok("identities hold".to_string()),
                    Err(e),
                ),
            };
            out.push(report);
        }
    }
}

/// `P^1 x P^1` with the factor swap.
pub fn swap_action_p1xp1() -> Result<(LawsonTable, GroupAction)> {
    let table = LawsonTable::from_exact(
        2,
        &[
            (0, 0, 1),
            (0, 2, 2),
            (1, 2, 2),
            (0, 4, 1),
            (1, 4, 1),
            (2, 4, 1),
        ],
    )?;
    let swap = Matrix::permutation(&[1, 0]);
    let blocks = table
        .entries()
        .map(|(b, e)| {
            let m = if e.value() == 2 {
                swap.clone()
            } else {
                Matrix::identity(1)
            };
            (b, m)
        })
        .collect();
    let g = BigradedMap::new(table.clone(), table.clone(), 0, blocks)?;
    let action = GroupAction::new(&table, 2, alloc::vec![g])?;
    Ok((table, action))
}

fn suite_sym2_p1(out: &mut Vec<OracleReport>) {
    let p1 = builtin_atom(Builtin::ProjectiveSpace(1));
    let p2 = builtin_atom(Builtin::ProjectiveSpace(2));
    let expected = table_signature(p2.table());
    let reynolds = swap_action_p1xp1()
        .and_then(|(t, a)| reynolds_invariants(&t, &a))
        .map(|q| table_signature(&q.invariant_table));
    let routes = [
        ("reynolds-swap", reynolds),
        (
            "graded-sym-power",
            graded_sym_power(p1.table(), 2, SymScope::Cellular).map(|t| table_signature(&t)),
        ),
        (
            "tensor-oracle",
            oracle_tensor_invariants(p1.table(), 2).map(|t| table_signature(&t)),
        ),
    ];
    for (route, engine) in routes {
        out.push(OracleReport::from_result(
            "sym2-p1",
            route,
            "Sym^2 P1 vs P2".to_string(),
            Ok(expected.clone()),
            engine,
        ));
    }
}

fn suite_curve_sym(out: &mut Vec<OracleReport>) {
    for genus in 1..=2 {
        let c = builtin_atom(Builtin::Curve { genus });
        let row = c.table().p0_row();
        for n in 1..=TENSOR_POWER_CAP {
            out.push(OracleReport::from_result(
                "curve-sym",
                "tensor-koszul",
                format!("Sym^{n} C_g{genus} p=0 row"),
                oracle_tensor_invariants(&row, n).map(|t| table_signature(&t)),
                graded_sym_power(c.table(), n, SymScope::P0Row).map(|t| table_signature(&t)),
            ));
        }
    }
    let c1 = builtin_atom(Builtin::Curve { genus: 1 });
    let literal =
        LawsonTable::from_exact(2, &[(0, 0, 1), (0, 1, 2), (0, 2, 2), (0, 3, 2), (0, 4, 1)])
            .map(|t| table_signature(&t));
    out.push(OracleReport::from_result(
        "curve-sym",
        "literal",
        "Sym^2 C_g1 row (1,2,2,2,1)".to_string(),
        literal,
        graded_sym_power(c1.table(), 2, SymScope::P0Row).map(|t| table_signature(&t)),
    ));
}

fn p0_row_map(t: &LawsonTable) -> BTreeMap<i64, u64> {
    t.entries()
        .filter(|(b, _)| b.p == 0)
        .map(|(b, e)| (b.k, e.value()))
        .collect()
}

fn suite_hilb_p0(out: &mut Vec<OracleReport>) {
    let p2 = builtin_atom(Builtin::ProjectiveSpace(2));
    let betti: Vec<u64> = p2
        .table()
        .homology_row()
        .iter()
        .map(|e| e.value())
        .collect();
    for n in 1..=HILB_MAX_N {
        let expected = row_signature(&oracle_hilb_p0_row(&betti, n));
        let p0_mode = match hilb_lawson(&p2, n, HilbMode::P0Row) {
            Ok(HilbOutput::Table(t)) => Ok(row_signature(&p0_row_map(&t))),
            Ok(HilbOutput::Symbolic(_)) => {
                Err(Error::InvalidArgument("symbolic output".to_string()))
            }
            Err(e) => Err(e),
        };
        out.push(OracleReport::from_result(
            "hilb-p0",
            "multiset-plethysm",
            format!("P2^[{n}] p0 mode"),
            Ok(expected.clone()),
            p0_mode,
        ));
        // the clamp: the p = 0 row of the full table must agree as well
        out.push(OracleReport::from_result(
            "hilb-p0",
            "multiset-plethysm",
            format!("P2^[{n}] numeric p=0 row"),
            Ok(expected),
            hilb_table(&p2, n).map(|t| row_signature(&p0_row_map(&t))),
        ));
    }
    let full = [1u64, 0, 2, 0, 3, 0, 2, 0, 1];
    let mut cells = Vec::new();
    for (k, &c) in full.iter().enumerate() {
        for p in 0..=k as i64 / 2 {
            if c > 0 {
                cells.push((p, k as i64, c));
            }
        }
    }
    out.push(OracleReport::from_result(
        "hilb-p0",
        "literal",
        "P2^[2] full table".to_string(),
        LawsonTable::from_exact(4, &cells).map(|t| table_signature(&t)),
        hilb_table(&p2, 2).map(|t| table_signature(&t)),
    ));
}

fn suite_hilb_euler(out: &mut Vec<OracleReport>) {
    let p2 = builtin_atom(Builtin::ProjectiveSpace(2));
    let series = oracle_euler_product(3, HILB_MAX_N);
    for n in 1..=HILB_MAX_N {
        out.push(OracleReport::from_result(
            "hilb-euler",
            "euler-product",
            format!("chi(P2^[{n}])"),
            series.clone().map(|s| s[n as usize].to_string()),
            hilb_table(&p2, n).map(|t| t.euler_characteristic().to_string()),
        ));
    }
}

/// Compare the morphic route with the duality relabeling of the Lawson
/// table, with `twist_error` added to the twist of the stratum `nu = (n)`.
pub fn duality_report(surface: &Atom, n: u32, twist_error: i64) -> OracleReport {
    let lawson = strata_tables(surface, n, SymScope::Cellular).and_then(|strata| {
        let parts: Vec<LawsonTable> = strata
            .iter()
            .enumerate()
            .map(|(i, (nu, t))| {
                let error = if i == 0 { twist_error } else { 0 };
                t.twist(-i64::from(nu.shift()) - error)
            })
            .collect();
        let sum = direct_sum([&direct_sum(&parts), &LawsonTable::empty(2 * n)])
            .with_origin(crate::bigraded::Origin::Smooth);
        sum.dual_relabel()
    });
    let morphic = match hilb_morphic(surface, n, HilbMode::Numeric) {
        Ok(MorphicOutput::Table(t)) => Ok(t),
        Ok(MorphicOutput::Symbolic(_)) => {
            Err(Error::InvalidArgument("symbolic output".to_string()))
        }
        Err(e) => Err(e),
    };
    let instance = format!("{}^[{n}] twist error {twist_error}", surface.name());
    match (lawson, morphic) {
        (Ok(a), Ok(b)) => {
            let bound = a.stable_from().max(b.stable_from()) + 1;
            let render = |t: &crate::bigraded::MorphicTable| {
                let mut cells = Vec::new();
                for q in 0..=bound {
                    for l in 0..=2 * q {
                        let v = t.lookup(q, l);
                        if !v.is_zero() {
                            cells.push(format!("{q},{l}={v}"));
                        }
                    }
                }
                cells.join(";")
            };
            OracleReport::new("duality", "dual-relabel", instance, render(&a), render(&b))
        }
        (a, b) => OracleReport::from_result(
            "duality",
            "dual-relabel",
            instance,
            a.map(|_| String::new()),
            b.map(|_| String::new()),
        ),
    }
}

fn suite_duality(out: &mut Vec<OracleReport>) {
    let p2 = builtin_atom(Builtin::ProjectiveSpace(2));
    for n in 1..=DUALITY_MAX_N {
        out.push(duality_report(&p2, n, 0));
        let direct = hilb_table(&p2, n).and_then(|t| t.dual_relabel());
        let morphic = hilb_morphic(&p2, n, HilbMode::Numeric);
        let agree = match (direct, morphic) {
            (Ok(a), Ok(MorphicOutput::Table(b))) => Ok((a == b).to_string()),
            (Err(e), _) | (_, Err(e)) => Err(e),
            _ => Err(Error::InvalidArgument("symbolic output".to_string())),
        };
        out.push(OracleReport::from_result(
            "duality",
            "hilb-vs-morphic",
            format!("P2^[{n}]"),
            Ok("true".to_string()),
            agree,
        ));
    }
}

fn suite_ksst(out: &mut Vec<OracleReport>) {
    let p2 = builtin_atom(Builtin::ProjectiveSpace(2));
    let cases = [
        (1, 0, KsstForm::Reindexed, 3u64),
        (2, 0, KsstForm::Reindexed, 9),
        (2, 0, KsstForm::Literal, 6),
        (2, 1, KsstForm::Reindexed, 0),
        (2, 3, KsstForm::Reindexed, 0),
    ];
    for (n, p, form, want) in cases {
        out.push(OracleReport::from_result(
            "ksst",
            "contraction",
            format!("P2^[{n}] p={p} {form:?}"),
            Ok(DimEntry::Exact(want).to_string()),
            ksst_dims(&p2, n, p, form).map(|d| d.to_string()),
        ));
    }
    let gap = ksst_dims(&p2, 2, 0, KsstForm::Reindexed).and_then(|a| {
        ksst_dims(&p2, 2, 0, KsstForm::Literal).map(|b| (a.value() - b.value()).to_string())
    });
    out.push(OracleReport::from_result(
        "ksst",
        "literal-discrepancy",
        "P2^[2] p=0 reindexed minus literal".to_string(),
        Ok("3".to_string()),
        gap,
    ));
}

/// A surface entered by table alone, so the engine cannot treat it as
/// cellular.
pub fn non_cellular_surface() -> Result<Atom> {
    let c = builtin_atom(Builtin::Curve { genus: 1 });
    let p1 = builtin_atom(Builtin::ProjectiveSpace(1));
    let table = product_with_cellular(c.table(), &p1)?;
    Atom::from_spec(AtomSpec {
        name: "C_g1xP1".to_string(),
        dim: 2,
        smooth: true,
        table: Some(table),
        ..Default::default()
    })
}

fn guard_outcome<T>(r: Result<T>) -> Result<String> {
    match r {
        Err(Error::KunnethGuard { .. }) => Ok("refused".to_string()),
        Err(e) => Err(e),
        Ok(_) => Ok("computed".to_string()),
    }
}

fn suite_guard(out: &mut Vec<OracleReport>) {
    let c1 = builtin_atom(Builtin::Curve { genus: 1 });
    let c2 = builtin_atom(Builtin::Curve { genus: 2 });
    out.push(OracleReport::from_result(
        "kunneth-guard",
        "refusal",
        "C_g1 x C_g1".to_string(),
        Ok("refused".to_string()),
        guard_outcome(product_with_cellular(c1.table(), &c1)),
    ));
    out.push(OracleReport::from_result(
        "kunneth-guard",
        "refusal",
        "C_g1 x C_g2".to_string(),
        Ok("refused".to_string()),
        guard_outcome(product_with_cellular(c1.table(), &c2)),
    ));
    let surface = non_cellular_surface();
    for n in 1..=3 {
        out.push(OracleReport::from_result(
            "kunneth-guard",
            "refusal",
            format!("hilb numeric C_g1xP1 entered non-cellular, n={n}"),
            Ok("refused".to_string()),
            surface
                .clone()
                .and_then(|s| guard_outcome(hilb_lawson(&s, n, HilbMode::Numeric))),
        ));
    }
    out.push(OracleReport::from_result(
        "kunneth-guard",
        "refusal",
        "Sym^2 C_g1 full table".to_string(),
        Ok("refused".to_string()),
        guard_outcome(graded_sym_power(c1.table(), 2, SymScope::Cellular)),
    ));
}

/// Run one named suite.
pub fn run_one(name: &str) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    match name {
        "pn-closed-form" => suite_pn(&mut out),
        "blowup-cellular" => suite_blowup(&mut out),
        "quotient-identities" => suite_quotient(&mut out),
        "sym2-p1" => suite_sym2_p1(&mut out),
        "curve-sym" => suite_curve_sym(&mut out),
        "hilb-p0" => suite_hilb_p0(&mut out),
        "hilb-euler" => suite_hilb_euler(&mut out),
        "duality" => suite_duality(&mut out),
        "ksst" => suite_ksst(&mut out),
        "kunneth-guard" => suite_guard(&mut out),
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    Ok(out)
}

/// Expand `all`, reject unknown names, dedupe and sort.
pub fn resolve_suites<S: AsRef<str>>(names: &[S]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for n in names {
        let n = n.as_ref();
        if n == "all" {
            out.extend_from_slice(SUITES);
        } else {
            match SUITES.iter().find(|s| **s == n) {
                Some(s) => out.push(*s),
                None => return Err(Error::UnknownSuite(n.to_string())),
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Reports of the selected suites, grouped by suite name.
pub fn run_suite<S: AsRef<str>>(names: &[S]) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for s in resolve_suites(names)? {
        out.extend(run_one(s)?);
    }
    Ok(out)
}
