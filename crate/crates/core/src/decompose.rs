//! Decomposition rules: projective bundles, blow-ups, affine-cell
//! filtrations and products with a cellular factor.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::atoms::{builtin_atom, Atom, Builtin};
use crate::bigraded::{direct_sum, LawsonTable, Origin};
use crate::error::{Error, Result};

/// Table of a bundle with fiber `P^n` over `base`.
pub fn projective_bundle(base: &LawsonTable, n: u32) -> LawsonTable {
    let twists: Vec<LawsonTable> = (0..=i64::from(n)).map(|i| base.twist(-i)).collect();
    direct_sum(&twists).with_origin(base.origin())
}

/// Blow-up of `x` along a smooth centre `v` of codimension `codim`.
pub fn blow_up(x: &LawsonTable, v: &LawsonTable, codim: u32) -> Result<LawsonTable> {
    if codim < 2 {
        return Err(Error::InvalidArgument(format!(
            "blow-up centre must have codimension at least 2, got {codim}"
        )));
    }
    let expected = i64::from(x.dim()) - i64::from(codim);
    if i64::from(v.dim()) != expected {
        return Err(Error::Dimension {
            expected,
            found: i64::from(v.dim()),
        });
    }
    let mut parts = Vec::with_capacity(codim as usize);
    parts.push(x.clone());
    parts.extend((1..i64::from(codim)).map(|i| v.twist(-i)));
    Ok(direct_sum(&parts).with_origin(x.origin()))
}

/// Strata `(Y_i, m_i)`: each stratum is an affine bundle of relative
/// dimension `m_i` over the smooth projective base `Y_i`.
#[derive(Clone, Debug)]
pub struct CellList {
    cells: Vec<(Atom, u32)>,
}

impl CellList {
    pub fn new(cells: Vec<(Atom, u32)>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidArgument("cell list is empty".to_string()));
        }
        Ok(CellList { cells })
    }

    /// Affine cells of the given dimensions over a point.
    pub fn points(dims: &[u32]) -> Result<Self> {
        let pt = builtin_atom(Builtin::Point);
        Self::new(dims.iter().map(|&m| (pt.clone(), m)).collect())
    }

    pub fn cells(&self) -> &[(Atom, u32)] {
        &self.cells
    }

    /// Dimension of the total space.
    pub fn dim(&self) -> u32 {
        self.cells
            .iter()
            .map(|(a, m)| a.dim() + m)
            .max()
            .unwrap_or(0)
    }
}

pub fn cellular_decompose(cells: &CellList) -> LawsonTable {
    let parts: Vec<LawsonTable> = cells
        .cells
        .iter()
        .map(|(y, m)| y.table().twist(-i64::from(*m)))
        .collect();
    direct_sum(&parts).with_origin(Origin::Smooth)
}

/// `x` times a cellular `y`, filtering the product over the cells of `y`.
/// A non-cellular `y` is refused: there is no general product formula.
pub fn product_with_cellular(x: &LawsonTable, y: &Atom) -> Result<LawsonTable> {
    let cells = match (y.is_cellular(), y.cells()) {
        (true, Some(c)) => c,
        _ => {
            return Err(Error::KunnethGuard {
                detail: format!(
                    "`{}` is not cellular; a product table needs a cellular factor",
                    y.name()
                ),
            })
        }
    };
    let parts: Vec<LawsonTable> = cells.iter().map(|&c| x.twist(-i64::from(c))).collect();
    Ok(direct_sum(&parts).with_origin(x.origin().product(y.table().origin())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::tensor_convolve;

    fn atom(b: Builtin) -> Atom {
        builtin_atom(b)
    }

    fn column_table(dim: u32, cols: &[(i64, i64, u64)]) -> LawsonTable {
        let mut cells = alloc::vec![];
        for &(k, top, v) in cols {
            for p in 0..=top {
                cells.push((p, k, v));
            }
        }
        LawsonTable::from_exact(dim, &cells).unwrap()
    }

    #[test]
    fn projective_bundle_examples() {
        let pt = LawsonTable::point();
        assert_eq!(projective_bundle(&pt, 0), pt);
        let p2 = atom(Builtin::ProjectiveSpace(2));
        assert_eq!(&projective_bundle(&pt, 2), p2.table());
        let p1 = atom(Builtin::ProjectiveSpace(1));
        assert_eq!(
            projective_bundle(p1.table(), 1),
            column_table(2, &[(0, 0, 1), (2, 1, 2), (4, 2, 1)])
        );
    }

    #[test]
    fn blow_up_examples() {
        let pt = LawsonTable::point();
        let p2 = atom(Builtin::ProjectiveSpace(2));
        let p3 = atom(Builtin::ProjectiveSpace(3));
        let p1 = atom(Builtin::ProjectiveSpace(1));
        let bl = blow_up(p2.table(), &pt, 2).unwrap();
        assert_eq!(bl, column_table(2, &[(0, 0, 1), (2, 1, 2), (4, 2, 1)]));
        assert_eq!(
            bl,
            cellular_decompose(&CellList::points(&[0, 1, 1, 2]).unwrap())
        );

        let bl3 = blow_up(p3.table(), p1.table(), 2).unwrap();
        assert_eq!(
            bl3,
            column_table(3, &[(0, 0, 1), (2, 1, 2), (4, 2, 2), (6, 3, 1)])
        );

        assert!(matches!(
            blow_up(p3.table(), &pt, 2),
            Err(Error::Dimension { .. })
        ));
        assert!(blow_up(p2.table(), p1.table(), 1).is_err());
    }

    #[test]
    fn cellular_examples() {
        let pt = LawsonTable::point();
        assert_eq!(cellular_decompose(&CellList::points(&[0]).unwrap()), pt);
        assert_eq!(
            &cellular_decompose(&CellList::points(&[0, 1, 2]).unwrap()),
            atom(Builtin::ProjectiveSpace(2)).table()
        );
        assert!(CellList::new(alloc::vec![]).is_err());
    }

    #[test]
    fn cellular_over_curve_base() {
        // a P^1-bundle over an elliptic curve: strata C x A^0 and C x A^1
        let c = atom(Builtin::Curve { genus: 1 });
        let cells = CellList::new(alloc::vec![(c.clone(), 0), (c.clone(), 1)]).unwrap();
        assert_eq!(cells.dim(), 2);
        assert_eq!(cellular_decompose(&cells), projective_bundle(c.table(), 1));
    }

    #[test]
    fn product_examples() {
        let pt = atom(Builtin::Point);
        let p2 = atom(Builtin::ProjectiveSpace(2));
        assert_eq!(&product_with_cellular(p2.table(), &pt).unwrap(), p2.table());

        let c = atom(Builtin::Curve { genus: 1 });
        let p1 = atom(Builtin::ProjectiveSpace(1));
        let prod = product_with_cellular(c.table(), &p1).unwrap();
        assert_eq!(
            prod,
            column_table(2, &[(0, 0, 1), (1, 0, 2), (2, 1, 2), (3, 1, 2), (4, 2, 1)])
        );
        assert_eq!(prod, tensor_convolve(c.table(), p1.table()).unwrap());

        let c2 = atom(Builtin::Curve { genus: 2 });
        assert!(matches!(
            product_with_cellular(c.table(), &c2),
            Err(Error::KunnethGuard { .. })
        ));
    }

    #[test]
    fn euler_identities() {
        let c = atom(Builtin::Curve { genus: 3 });
        let p3 = atom(Builtin::ProjectiveSpace(3));
        let prod = product_with_cellular(c.table(), &p3).unwrap();
        assert_eq!(
            prod.euler_characteristic(),
            c.table().euler_characteristic() * p3.table().euler_characteristic()
        );
        let p4 = atom(Builtin::ProjectiveSpace(4));
        let p1 = atom(Builtin::ProjectiveSpace(1));
        let bl = blow_up(p4.table(), p1.table(), 3).unwrap();
        assert_eq!(bl.euler_characteristic(), 5 + 2 * 2);
        assert_eq!(
            projective_bundle(c.table(), 2).total_betti(),
            3 * c.table().total_betti()
        );
    }
}
