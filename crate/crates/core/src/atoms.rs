//! Atomic varieties with known tables.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bigraded::{DimEntry, LawsonTable, Origin};
use crate::decompose::projective_bundle;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    name: String,
    dim: u32,
    table: LawsonTable,
    cellular: bool,
    cells: Option<Vec<u32>>,
    smooth: bool,
    quotient: bool,
}

/// Raw fields of an atom before validation.
#[derive(Clone, Debug, Default)]
pub struct AtomSpec {
    pub name: String,
    pub dim: u32,
    pub smooth: bool,
    /// Finite quotient of a smooth variety; enables duality when not smooth.
    pub quotient: bool,
    pub cellular: bool,
    pub cells: Option<Vec<u32>>,
    pub table: Option<LawsonTable>,
}

impl Atom {
    pub fn from_spec(spec: AtomSpec) -> Result<Atom> {
        let fail = |reason: String| Error::Atom {
            name: spec.name.clone(),
            reason,
        };
        if let Some(cells) = &spec.cells {
            match cells.iter().max() {
                None => return Err(fail("cell list is empty".to_string())),
                Some(&top) if top != spec.dim => {
                    return Err(fail(format!(
                        "largest cell has dimension {top}, atom has dimension {}",
                        spec.dim
                    )))
                }
                _ => {}
            }
        }
        if spec.cellular && spec.cells.is_none() {
            return Err(fail("cellular atom needs a cell list".to_string()));
        }
        let table = match (&spec.table, &spec.cells) {
            (Some(t), _) => t.clone(),
            (None, Some(cells)) => cellular_table(cells),
            (None, None) => return Err(fail("needs a table or a cell list".to_string())),
        };
        if table.dim() != spec.dim {
            return Err(fail(format!(
                "table dimension {} differs from atom dimension {}",
                table.dim(),
                spec.dim
            )));
        }
        if let Some(cells) = &spec.cells {
            if cellular_table(cells) != table {
                return Err(fail("table disagrees with the cellular rule".to_string()));
            }
        }
        let origin = if spec.smooth {
            Origin::Smooth
        } else if spec.quotient {
            Origin::Quotient
        } else {
            Origin::Unflagged
        };
        Ok(Atom {
            table: table.with_origin(origin),
            name: spec.name,
            dim: spec.dim,
            cellular: spec.cellular,
            cells: spec.cells,
            smooth: spec.smooth,
            quotient: spec.quotient,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn table(&self) -> &LawsonTable {
        &self.table
    }

    pub fn is_cellular(&self) -> bool {
        self.cellular
    }

    pub fn cells(&self) -> Option<&[u32]> {
        self.cells.as_deref()
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn is_quotient(&self) -> bool {
        self.quotient
    }

    pub fn renamed(mut self, name: &str) -> Atom {
        self.name = name.to_string();
        self
    }
}

/// A cell of dimension `j` contributes one class to every `(p, 2j)` with
/// `p <= j`.
pub fn cellular_table(cells: &[u32]) -> LawsonTable {
    let dim = cells.iter().copied().max().unwrap_or(0);
    let mut counts = alloc::collections::BTreeMap::<u32, u64>::new();
    for &c in cells {
        *counts.entry(c).or_insert(0) += 1;
    }
    let entries = counts.iter().flat_map(|(&j, &n)| {
        let j = i64::from(j);
        (0..=j).map(move |p| ((p, 2 * j), DimEntry::Exact(n)))
    });
    LawsonTable::new(dim, entries).expect("cellular cells are in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Point,
    ProjectiveSpace(u32),
    Curve { genus: u32 },
}

impl Builtin {
    /// `pt`, `P<n>` or `C_g<g>`.
    pub fn parse(name: &str) -> Option<Builtin> {
        if name == "pt" {
            return Some(Builtin::Point);
        }
        if let Some(n) = name.strip_prefix("C_g") {
            return n.parse().ok().map(|genus| Builtin::Curve { genus });
        }
        if let Some(n) = name.strip_prefix('P') {
            return n.parse().ok().map(Builtin::ProjectiveSpace);
        }
        None
    }

    pub fn name(self) -> String {
        match self {
            Builtin::Point => "pt".to_string(),
            Builtin::ProjectiveSpace(n) => format!("P{n}"),
            Builtin::Curve { genus } => format!("C_g{genus}"),
        }
    }
}

pub fn builtin_atom(which: Builtin) -> Atom {
    match which {
        Builtin::Point => Atom {
            name: which.name(),
            dim: 0,
            table: LawsonTable::point(),
            cellular: true,
            cells: Some(alloc::vec![0]),
            smooth: true,
            quotient: false,
        },
        Builtin::ProjectiveSpace(n) => Atom {
            name: which.name(),
            dim: n,
            table: projective_bundle(&LawsonTable::point(), n),
            cellular: true,
            cells: Some((0..=n).collect()),
            smooth: true,
            quotient: false,
        },
        Builtin::Curve { genus } => {
            // The cycle map is an isomorphism for curves, so every row in
            // range repeats the singular homology of the curve.
            let table = LawsonTable::from_exact(
                1,
                &[
                    (0, 0, 1),
                    (0, 1, 2 * u64::from(genus)),
                    (0, 2, 1),
                    (1, 2, 1),
                ],
            )
            .expect("curve table is in range")
            .with_origin(Origin::Smooth);
            let cellular = genus == 0;
            Atom {
                name: which.name(),
                dim: 1,
                table,
                cellular,
                cells: cellular.then(|| alloc::vec![0, 1]),
                smooth: true,
                quotient: false,
            }
        }
    }
}

/// Smooth unirational threefold or fourfold from its Betti numbers.
///
/// Threefolds: every `L_p H_k` in range equals `H_k`. Fourfolds: the same,
/// except `L_2 H_4`, which only injects into `H_4` and is stored as a bound.
pub fn unirational_atom(name: &str, dim: u32, betti: &[u64]) -> Result<Atom> {
    let fail = |reason: String| Error::Atom {
        name: name.to_string(),
        reason,
    };
    if dim != 3 && dim != 4 {
        return Err(fail(format!(
            "unirational tables are known only in dimensions 3 and 4, not {dim}"
        )));
    }
    let len = 2 * dim as usize + 1;
    if betti.len() != len {
        return Err(fail(format!(
            "expected {len} Betti numbers, got {}",
            betti.len()
        )));
    }
    if betti[0] != 1 || betti[len - 1] != 1 {
        return Err(fail("b_0 and b_top must both be 1".to_string()));
    }
    let entries = (0..len as i64).flat_map(|k| {
        (0..=k / 2).map(move |p| {
            let b = betti[k as usize];
            let e = if dim == 4 && (p, k) == (2, 4) {
                DimEntry::at_most(b)
            } else {
                DimEntry::Exact(b)
            };
            ((p, k), e)
        })
    });
    let table = LawsonTable::new(dim, entries)?;
    Atom::from_spec(AtomSpec {
        name: name.to_string(),
        dim,
        smooth: true,
        quotient: false,
        cellular: false,
        cells: None,
        table: Some(table),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{cellular_decompose, CellList};

    fn p(n: u32) -> Atom {
        builtin_atom(Builtin::ProjectiveSpace(n))
    }

    #[test]
    fn builtin_tables() {
        let pt = builtin_atom(Builtin::Point);
        assert_eq!(
            pt.table(),
            &LawsonTable::from_exact(0, &[(0, 0, 1)]).unwrap()
        );

        let p2 = p(2);
        let cells: Vec<_> = p2.table().entries().map(|(b, e)| (b.p, b.k, e)).collect();
        assert_eq!(
            cells,
            [(0, 0), (0, 2), (1, 2), (0, 4), (1, 4), (2, 4)]
                .iter()
                .map(|&(p, k)| (p, k, DimEntry::Exact(1)))
                .collect::<Vec<_>>()
        );

        let c = builtin_atom(Builtin::Curve { genus: 2 });
        assert_eq!(
            c.table(),
            &LawsonTable::from_exact(1, &[(0, 0, 1), (0, 1, 4), (0, 2, 1), (1, 2, 1)]).unwrap()
        );
        assert!(!c.is_cellular());
    }

    #[test]
    fn projective_space_counts_and_euler() {
        for n in 0..7u32 {
            let t = p(n);
            let cells = t.table().entries().count() as u32;
            assert_eq!(cells, (n + 1) * (n + 2) / 2);
            assert!(t.table().entries().all(|(_, e)| e == DimEntry::Exact(1)));
            assert_eq!(t.table().euler_characteristic(), i64::from(n) + 1);
        }
        for g in 0..5u32 {
            let c = builtin_atom(Builtin::Curve { genus: g });
            assert_eq!(c.table().euler_characteristic(), 2 - 2 * i64::from(g));
        }
    }

    #[test]
    fn builtin_cellular_round_trip() {
        for a in [
            builtin_atom(Builtin::Point),
            p(1),
            p(3),
            p(5),
            builtin_atom(Builtin::Curve { genus: 0 }),
        ] {
            let cells = CellList::points(a.cells().unwrap()).unwrap();
            assert_eq!(&cellular_decompose(&cells), a.table(), "{}", a.name());
            assert_eq!(&cellular_table(a.cells().unwrap()), a.table());
        }
    }

    #[test]
    fn unirational_rules() {
        let a = unirational_atom("X", 3, &[1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(a.table(), p(3).table());

        let b = unirational_atom("Y", 4, &[1, 0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(b.table().lookup(2, 4), DimEntry::AtMost(1));
        assert_eq!(b.table().lookup(1, 4), DimEntry::Exact(1));
        for (bd, e) in p(4).table().entries() {
            if (bd.p, bd.k) != (2, 4) {
                assert_eq!(b.table().lookup(bd.p, bd.k), e);
            }
        }

        let c = unirational_atom("Z", 3, &[1, 0, 3, 4, 3, 0, 1]).unwrap();
        assert_eq!(c.table().lookup(1, 3), DimEntry::Exact(4));

        assert!(unirational_atom("W", 5, &[1; 11]).is_err());
        assert!(unirational_atom("W", 3, &[1, 0, 1]).is_err());
    }

    #[test]
    fn spec_validation() {
        let blown = Atom::from_spec(AtomSpec {
            name: "Bl".into(),
            dim: 2,
            smooth: true,
            cellular: true,
            cells: Some(alloc::vec![0, 1, 1, 2]),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(blown.table().lookup(1, 2), DimEntry::Exact(2));
        assert_eq!(blown.table().lookup(2, 4), DimEntry::Exact(1));

        let mismatch = Atom::from_spec(AtomSpec {
            name: "bad".into(),
            dim: 2,
            cellular: true,
            cells: Some(alloc::vec![0, 1, 2]),
            table: Some(p(1).table().clone()),
            ..Default::default()
        });
        assert!(mismatch.is_err());

        let wrong_top = Atom::from_spec(AtomSpec {
            name: "bad".into(),
            dim: 3,
            cells: Some(alloc::vec![0, 1, 2]),
            ..Default::default()
        });
        assert!(wrong_top.is_err());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(Builtin::parse("P2"), Some(Builtin::ProjectiveSpace(2)));
        assert_eq!(Builtin::parse("C_g1"), Some(Builtin::Curve { genus: 1 }));
        assert_eq!(Builtin::parse("pt"), Some(Builtin::Point));
        assert_eq!(Builtin::parse("Q3"), None);
        assert_eq!(Builtin::parse("Px"), None);
    }
}
