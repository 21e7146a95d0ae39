//! Finite group actions on tables, rational invariants, and graded
//! symmetric powers.
//!
//! For `pi: X -> X/G` the rational table of `X/G` is the `G`-invariant part
//! of the table of `X`. We model `pi^*` as the inclusion of the invariant
//! subspace and `pi_*` as `sum_g g` followed by coordinates in that
//! subspace, so that `pi_* pi^* = |G| id` and `pi^* pi_* = sum_g g`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::atoms::Atom;
use crate::bigraded::{map_compose, Bidegree, BigradedMap, LawsonTable, Origin};
use crate::error::{Error, Result};
use crate::matrix::Rational;

#[derive(Clone, Debug)]
pub struct GroupAction {
    table: LawsonTable,
    order: u64,
    generators: Vec<BigradedMap>,
    /// The image of the group, without repetitions.
    image: Vec<BigradedMap>,
}

impl GroupAction {
    /// Expand the action generated by `generators`. The image may be a
    /// proper quotient of the group (a non-faithful action); its size must
    /// divide `order`.
    pub fn new(table: &LawsonTable, order: u64, generators: Vec<BigradedMap>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Group("group order must be positive".to_string()));
        }
        table.require_exact("group action")?;
        for g in &generators {
            check_generator(table, g)?;
        }
        let id = BigradedMap::identity(table)?;
        let mut image = alloc::vec![id];
        let mut frontier = 0;
        while frontier < image.len() {
            let e = image[frontier].clone();
            frontier += 1;
            for g in &generators {
                let h = map_compose(g, &e)?;
                if !image.contains(&h) {
                    if image.len() as u64 >= order {
                        return Err(Error::Group(format!(
                            "generators produce more than {order} elements"
                        )));
                    }
                    image.push(h);
                }
            }
        }
        if !order.is_multiple_of(image.len() as u64) {
            return Err(Error::Group(format!(
                "action image has {} elements, which does not divide {order}",
                image.len()
            )));
        }
        Ok(GroupAction {
            table: table.clone(),
            order,
            generators,
            image,
        })
    }

    /// Action given by its full list of `|G|` elements.
    pub fn from_elements(table: &LawsonTable, elements: Vec<BigradedMap>) -> Result<Self> {
        let order = elements.len() as u64;
        let action = Self::new(table, order.max(1), elements.clone())?;
        for a in &elements {
            for b in &elements {
                if !elements.contains(&map_compose(a, b)?) {
                    return Err(Error::Group("element list is not closed".to_string()));
                }
            }
        }
        Ok(action)
    }

    pub fn trivial(table: &LawsonTable) -> Result<Self> {
        Self::new(table, 1, Vec::new())
    }

    pub fn table(&self) -> &LawsonTable {
        &self.table
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[BigradedMap] {
        &self.generators
    }

    /// Distinct maps in the image of the group.
    pub fn image(&self) -> &[BigradedMap] {
        &self.image
    }

    /// `sum_{g in G} g`, counting each image element `|G| / |image|` times.
    pub fn element_sum(&self) -> Result<BigradedMap> {
        let mut acc = BigradedMap::zero(self.table.clone(), self.table.clone(), 0)?;
        for g in &self.image {
            acc = acc.add(g)?;
        }
        let mult = self.order / self.image.len() as u64;
        Ok(acc.scale(&Rational::from_integer(BigInt::from(mult))))
    }

    /// `(1/|G|) sum_g g`.
    pub fn reynolds_operator(&self) -> Result<BigradedMap> {
        Ok(self
            .element_sum()?
            .scale(&Rational::new(1.into(), BigInt::from(self.order))))
    }
}

fn check_generator(table: &LawsonTable, g: &BigradedMap) -> Result<()> {
    if g.degree() != 0 || g.source() != table || g.target() != table {
        return Err(Error::Mismatch(
            "generator must be a degree-0 endomorphism of the table".to_string(),
        ));
    }
    for (b, _) in table.entries() {
        if g.block(b).inverse().is_none() {
            return Err(Error::NotInvertible { p: b.p, k: b.k });
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct QuotientRealization {
    pub total: LawsonTable,
    pub action: GroupAction,
    pub invariant_table: LawsonTable,
    /// Model of `pi^*`: invariant table into the total table.
    pub inclusion: BigradedMap,
    /// Model of `pi_*`: total table onto the invariant table.
    pub projection: BigradedMap,
}

impl QuotientRealization {
    /// Re-check `pi_* pi^* = |G| id` and `pi^* pi_* = sum_g g` exactly.
    pub fn verify_identities(&self) -> Result<()> {
        let order = Rational::from_integer(BigInt::from(self.action.order()));
        let down_up = map_compose(&self.projection, &self.inclusion)?;
        if down_up != BigradedMap::scalar(&self.invariant_table, &order)? {
            return Err(Error::Group(
                "projection after inclusion is not |G| id".to_string(),
            ));
        }
        let up_down = map_compose(&self.inclusion, &self.projection)?;
        if up_down != self.action.element_sum()? {
            return Err(Error::Group(
                "inclusion after projection is not the element sum".to_string(),
            ));
        }
        Ok(())
    }
}

pub fn reynolds_invariants(
    table: &LawsonTable,
    action: &GroupAction,
) -> Result<QuotientRealization> {
    table.require_exact("invariants")?;
    if action.table() != table {
        return Err(Error::Mismatch(
            "action is on a different table".to_string(),
        ));
    }
    let sum = action.element_sum()?;
    let order = Rational::from_integer(BigInt::from(action.order()));
    let mut dims = Vec::new();
    let mut up = BTreeMap::new();
    let mut down = BTreeMap::new();
    for (b, _) in table.entries() {
        let s = sum.block(b);
        let reynolds = s.scale(&order.recip());
        let (basis, pivots) = reynolds.column_space_basis();
        if pivots.is_empty() {
            continue;
        }
        dims.push((
            (b.p, b.k),
            crate::bigraded::DimEntry::Exact(pivots.len() as u64),
        ));
        up.insert(b, basis);
        down.insert(b, s.select_rows(&pivots));
    }
    let origin = if action.image().len() > 1 {
        Origin::Quotient
    } else {
        table.origin()
    };
    let invariant_table = LawsonTable::new(table.dim(), dims)?.with_origin(origin);
    let inclusion = BigradedMap::new(invariant_table.clone(), table.clone(), 0, up)?;
    let projection = BigradedMap::new(table.clone(), invariant_table.clone(), 0, down)?;
    let q = QuotientRealization {
        total: table.clone(),
        action: action.clone(),
        invariant_table,
        inclusion,
        projection,
    };
    q.verify_identities()?;
    Ok(q)
}

/// Which part of a symmetric power the caller may ask for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymScope {
    /// Full bigraded table; the input must have the shape of a cellular
    /// table.
    Cellular,
    /// Only the `p = 0` row, i.e. rational singular homology.
    P0Row,
}

fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i)).ok_or(Error::Overflow)? / u128::from(i + 1);
    }
    Ok(acc)
}

/// Degree-`n` part of the free graded-commutative algebra on the given
/// generators: symmetric on even `k`, exterior on odd `k`.
fn sym_power_generators(gens: &BTreeMap<Bidegree, u64>, n: u32) -> Result<BTreeMap<Bidegree, u64>> {
    let n = n as usize;
    let mut layers: Vec<BTreeMap<Bidegree, u128>> = alloc::vec![BTreeMap::new(); n + 1];
    layers[0].insert(Bidegree::new(0, 0), 1);
    for (&b, &count) in gens {
        let coeff = |m: u64| -> Result<u128> {
            if b.k % 2 == 0 {
                binomial(count + m - 1, m).map(|c| if m == 0 { 1 } else { c })
            } else {
                binomial(count, m)
            }
        };
        let mut next: Vec<BTreeMap<Bidegree, u128>> = alloc::vec![BTreeMap::new(); n + 1];
        for (d, layer) in layers.iter().enumerate() {
            for m in 0..=(n - d) {
                let c = coeff(m as u64)?;
                if c == 0 {
                    break;
                }
                let step = Bidegree::new(b.p * m as i64, b.k * m as i64);
                for (&x, &v) in layer {
                    let key = Bidegree::new(x.p + step.p, x.k + step.k);
                    let add = v.checked_mul(c).ok_or(Error::Overflow)?;
                    let slot = next[d + m].entry(key).or_insert(0);
                    *slot = slot.checked_add(add).ok_or(Error::Overflow)?;
                }
            }
        }
        layers = next;
    }
    layers[n]
        .iter()
        .map(|(&b, &v)| {
            u64::try_from(v)
                .map(|v| (b, v))
                .map_err(|_| Error::Overflow)
        })
        .collect()
}

fn scoped_generators(table: &LawsonTable, scope: SymScope) -> Result<BTreeMap<Bidegree, u64>> {
    match scope {
        SymScope::Cellular => {
            table.require_exact("symmetric power")?;
            if !table.is_cellular_shaped() {
                return Err(Error::KunnethGuard {
                    detail: "full symmetric-power tables need a cellular input; \
                             restrict to the p = 0 row instead"
                        .to_string(),
                });
            }
            Ok(table
                .generators()?
                .into_iter()
                .map(|(b, g)| (b, g as u64))
                .collect())
        }
        SymScope::P0Row => {
            let row = table.p0_row();
            row.require_exact("symmetric power")?;
            Ok(row
                .entries()
                .filter(|(b, _)| b.p == 0)
                .map(|(b, e)| (b, e.value()))
                .collect())
        }
    }
}

/// Table of the `n`-th symmetric power, from the generating product
/// `prod_{k even} (1 - z x)^{-a} prod_{k odd} (1 + z x)^{a}` over the
/// generators `x = s^p t^k` of the input.
pub fn graded_sym_power(table: &LawsonTable, n: u32, scope: SymScope) -> Result<LawsonTable> {
    let gens = scoped_generators(table, scope)?;
    let power = sym_power_generators(&gens, n)?;
    let signed: BTreeMap<Bidegree, i64> = power
        .into_iter()
        .map(|(b, v)| {
            i64::try_from(v)
                .map(|v| (b, v))
                .map_err(|_| Error::Overflow)
        })
        .collect::<Result<_>>()?;
    let dim = table.dim() * n;
    let out = LawsonTable::from_generators(dim, &signed)?;
    let origin = match (scope, n) {
        (SymScope::P0Row, _) => Origin::Unflagged,
        (_, 0) => Origin::Smooth,
        (_, 1) => table.origin(),
        _ if table.origin().has_duality() => Origin::Quotient,
        _ => Origin::Unflagged,
    };
    Ok(out.with_origin(origin))
}

/// `X^(a_1) x ... x X^(a_n)` for multiplicities `a_i`.
pub fn sym_product_table(
    atom: &Atom,
    multiplicities: &[u32],
    scope: SymScope,
) -> Result<LawsonTable> {
    if scope == SymScope::Cellular && !atom.is_cellular() {
        return Err(Error::KunnethGuard {
            detail: format!(
                "`{}` is not cellular; products of its symmetric powers have no numeric table",
                atom.name()
            ),
        });
    }
    let mut acc = LawsonTable::point();
    if scope == SymScope::P0Row {
        acc = acc.p0_row();
    }
    for &a in multiplicities.iter().filter(|&&a| a > 0) {
        let factor = graded_sym_power(atom.table(), a, scope)?;
        acc = crate::bigraded::tensor_convolve(&acc, &factor)?;
    }
    Ok(acc)
}

/// Bidegree of an intersection product of classes in `(p, k)` and `(q, l)`
/// on a variety of dimension `m`.
pub fn intersection_degree(p: i64, k: i64, q: i64, l: i64, m: i64) -> (i64, i64) {
    (p + q - m, k + l - 2 * m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::{builtin_atom, Builtin};
    use crate::bigraded::DimEntry;
    use crate::matrix::{integer, Matrix};

    fn p1xp1() -> LawsonTable {
        crate::atoms::cellular_table(&[0, 1, 1, 2]).with_origin(Origin::Smooth)
    }

    fn swap_action(t: &LawsonTable) -> GroupAction {
        let blocks = t
            .entries()
            .map(|(b, e)| {
                let m = if e.value() == 2 {
                    Matrix::from_i64(&[&[0, 1], &[1, 0]])
                } else {
                    Matrix::identity(e.value() as usize)
                };
                (b, m)
            })
            .collect();
        let g = BigradedMap::new(t.clone(), t.clone(), 0, blocks).unwrap();
        GroupAction::new(t, 2, alloc::vec![g]).unwrap()
    }

    #[test]
    fn trivial_group() {
        let t = builtin_atom(Builtin::ProjectiveSpace(2)).table().clone();
        let q = reynolds_invariants(&t, &GroupAction::trivial(&t).unwrap()).unwrap();
        assert_eq!(q.invariant_table, t);
        assert_eq!(q.inclusion, BigradedMap::identity(&t).unwrap());
        assert_eq!(q.projection, BigradedMap::identity(&t).unwrap());
    }

    #[test]
    fn swap_on_p1_squared() {
        let t = p1xp1();
        let q = reynolds_invariants(&t, &swap_action(&t)).unwrap();
        assert_eq!(
            &q.invariant_table,
            builtin_atom(Builtin::ProjectiveSpace(2)).table()
        );
        assert_eq!(q.invariant_table.origin(), Origin::Quotient);
        q.action
            .reynolds_operator()
            .unwrap()
            .check_idempotent()
            .unwrap();
    }

    #[test]
    fn sign_on_elliptic_curve() {
        let t = builtin_atom(Builtin::Curve { genus: 1 }).table().clone();
        let blocks = t
            .entries()
            .map(|(b, e)| {
                let n = e.value() as usize;
                let m = if b.k == 1 {
                    Matrix::scalar(n, &integer(-1))
                } else {
                    Matrix::identity(n)
                };
                (b, m)
            })
            .collect();
        let g = BigradedMap::new(t.clone(), t.clone(), 0, blocks).unwrap();
        let q = reynolds_invariants(&t, &GroupAction::new(&t, 2, alloc::vec![g]).unwrap()).unwrap();
        let row: Vec<u64> = q
            .invariant_table
            .homology_row()
            .iter()
            .map(|e| e.value())
            .collect();
        assert_eq!(row, [1, 0, 1]);
    }

    #[test]
    fn non_faithful_action_counts_multiplicity() {
        // Z/4 acting through Z/2
        let t = p1xp1();
        let q = reynolds_invariants(&t, &{
            let s = swap_action(&t);
            GroupAction::new(&t, 4, s.generators().to_vec()).unwrap()
        })
        .unwrap();
        assert_eq!(q.action.image().len(), 2);
        assert_eq!(q.invariant_table.lookup(0, 2), DimEntry::Exact(1));
        assert!(GroupAction::new(&t, 3, swap_action(&t).generators().to_vec()).is_err());
    }

    #[test]
    fn generator_validation() {
        let t = p1xp1();
        let singular = BigradedMap::zero(t.clone(), t.clone(), 0).unwrap();
        assert!(matches!(
            GroupAction::new(&t, 2, alloc::vec![singular]),
            Err(Error::NotInvertible { .. })
        ));
        assert!(GroupAction::new(&t, 0, alloc::vec![]).is_err());
    }

    #[test]
    fn sym_power_examples() {
        let p1 = builtin_atom(Builtin::ProjectiveSpace(1));
        let p2 = builtin_atom(Builtin::ProjectiveSpace(2));
        let t = p2.table();
        assert_eq!(&graded_sym_power(t, 1, SymScope::Cellular).unwrap(), t);
        assert_eq!(
            &graded_sym_power(p1.table(), 2, SymScope::Cellular).unwrap(),
            t
        );
        assert_eq!(
            graded_sym_power(t, 0, SymScope::Cellular).unwrap(),
            LawsonTable::point()
        );
        let c = builtin_atom(Builtin::Curve { genus: 1 });
        let row = graded_sym_power(c.table(), 2, SymScope::P0Row).unwrap();
        let v: Vec<u64> = row.homology_row().iter().map(|e| e.value()).collect();
        assert_eq!(v, [1, 2, 2, 2, 1]);
        assert!(row.entries().all(|(b, _)| b.p == 0));
        assert_eq!(row.euler_characteristic(), 0);
        assert!(matches!(
            graded_sym_power(c.table(), 2, SymScope::Cellular),
            Err(Error::KunnethGuard { .. })
        ));
    }

    #[test]
    fn sym_power_single_degree_binomials() {
        for m in 1..6u64 {
            let odd = LawsonTable::from_exact(1, &[(0, 1, m)]).unwrap();
            let s = graded_sym_power(&odd, 2, SymScope::P0Row).unwrap();
            assert_eq!(s.lookup(0, 2).value(), m * (m - 1) / 2);
            let even = LawsonTable::from_exact(1, &[(0, 2, m)]).unwrap();
            let s = graded_sym_power(&even, 2, SymScope::P0Row).unwrap();
            assert_eq!(s.lookup(0, 4).value(), m * (m + 1) / 2);
        }
    }

    #[test]
    fn sym_product_examples() {
        let p2 = builtin_atom(Builtin::ProjectiveSpace(2));
        assert_eq!(
            &sym_product_table(&p2, &[1], SymScope::Cellular).unwrap(),
            p2.table()
        );
        let s2 = sym_product_table(&p2, &[2], SymScope::Cellular).unwrap();
        let mut cells = alloc::vec![];
        for (k, v) in [(0, 1), (2, 1), (4, 2), (6, 1), (8, 1)] {
            for p in 0..=k / 2 {
                cells.push((p, k, v));
            }
        }
        assert_eq!(s2, LawsonTable::from_exact(4, &cells).unwrap());
        let s21 = sym_product_table(&p2, &[2, 1], SymScope::Cellular).unwrap();
        assert_eq!(
            s21,
            crate::bigraded::tensor_convolve(&s2, p2.table()).unwrap()
        );
        let c = builtin_atom(Builtin::Curve { genus: 1 });
        assert!(matches!(
            sym_product_table(&c, &[2], SymScope::Cellular),
            Err(Error::KunnethGuard { .. })
        ));
    }

    #[test]
    fn intersection_degrees() {
        assert_eq!(intersection_degree(3, 6, 3, 6, 3), (3, 6));
        assert_eq!(intersection_degree(1, 2, 1, 2, 2), (0, 0));
        assert_eq!(intersection_degree(0, 1, 0, 1, 1), (-1, 0));
    }
}
