//! Formal motives `(X, p, r)` and their realizations as tables.
//!
//! Correspondences are represented only through the bigraded maps they
//! induce on the atom tables; composition of correspondences is composition
//! of those maps.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::atoms::Atom;
use crate::bigraded::{direct_sum, map_compose, BigradedMap, LawsonTable, MorphicTable};
use crate::error::{Error, Result};

/// A single triple `(X, p, r)`, i.e. the image of `p` in `h(X)(-r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motive {
    atom: Arc<Atom>,
    projector: BigradedMap,
    twist: i64,
}

impl Motive {
    pub fn new(atom: Arc<Atom>, projector: BigradedMap, twist: i64) -> Result<Self> {
        if projector.source() != atom.table() || projector.target() != atom.table() {
            return Err(Error::Mismatch(format!(
                "projector does not act on the table of `{}`",
                atom.name()
            )));
        }
        projector.check_idempotent()?;
        Ok(Motive {
            atom,
            projector,
            twist,
        })
    }

    /// `h(X)(-r)`, with the identity projector.
    pub fn whole(atom: Arc<Atom>, twist: i64) -> Result<Self> {
        let id = BigradedMap::identity(atom.table()).map_err(|e| bounded(&atom, e))?;
        Self::new(atom, id, twist)
    }

    pub fn atom(&self) -> &Arc<Atom> {
        &self.atom
    }

    pub fn projector(&self) -> &BigradedMap {
        &self.projector
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn twisted(&self, by: i64) -> Motive {
        Motive {
            twist: self.twist + by,
            ..self.clone()
        }
    }

    pub fn realize_lawson(&self) -> Result<LawsonTable> {
        self.atom.table().require_exact("motive realization")?;
        Ok(self.projector.image_dims().twist(self.twist))
    }

    pub fn realize_morphic(&self) -> Result<MorphicTable> {
        self.atom.table().require_exact("motive realization")?;
        let image = self
            .projector
            .image_dims()
            .with_origin(self.atom.table().origin());
        Ok(image.dual_relabel()?.shift(-self.twist))
    }
}

fn bounded(atom: &Atom, e: Error) -> Error {
    match e {
        Error::BoundedEntry { .. } => Error::BoundedEntry {
            context: format!("atom `{}` has bounded cells", atom.name()),
        },
        other => other,
    }
}

/// Formal direct sum of motives.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MotiveExpr {
    summands: Vec<Motive>,
}

impl MotiveExpr {
    pub fn new(summands: Vec<Motive>) -> Self {
        MotiveExpr { summands }
    }

    pub fn single(m: Motive) -> Self {
        MotiveExpr {
            summands: alloc::vec![m],
        }
    }

    pub fn summands(&self) -> &[Motive] {
        &self.summands
    }

    pub fn sum(mut self, other: MotiveExpr) -> MotiveExpr {
        self.summands.extend(other.summands);
        self
    }

    pub fn twisted(&self, by: i64) -> MotiveExpr {
        MotiveExpr {
            summands: self.summands.iter().map(|m| m.twisted(by)).collect(),
        }
    }

    pub fn realize_lawson(&self) -> Result<LawsonTable> {
        let parts = self
            .summands
            .iter()
            .map(Motive::realize_lawson)
            .collect::<Result<Vec<_>>>()?;
        Ok(direct_sum(&parts))
    }

    pub fn realize_morphic(&self) -> Result<MorphicTable> {
        let parts = self
            .summands
            .iter()
            .map(Motive::realize_morphic)
            .collect::<Result<Vec<_>>>()?;
        Ok(MorphicTable::direct_sum(&parts))
    }
}

/// `h(X) = im(p) + im(id - p)`.
pub fn split_by_projector(
    atom: Arc<Atom>,
    projector: BigradedMap,
) -> Result<(MotiveExpr, MotiveExpr)> {
    let id = BigradedMap::identity(atom.table())?;
    let complement = id.sub(&projector)?;
    let first = Motive::new(atom.clone(), projector, 0)?;
    let second = Motive::new(atom, complement, 0)?;
    Ok((MotiveExpr::single(first), MotiveExpr::single(second)))
}

/// Which theory the induced map acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realization {
    Lawson,
    Morphic,
}

impl Realization {
    fn flipped(self) -> Self {
        match self {
            Realization::Lawson => Realization::Morphic,
            Realization::Morphic => Realization::Lawson,
        }
    }
}

/// A morphism of motives, kept as the bigraded map it induces between the
/// atom tables. Its degree is the difference of the twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    source: Motive,
    target: Motive,
    map: BigradedMap,
    realization: Realization,
}

impl Correspondence {
    pub fn new(
        source: Motive,
        target: Motive,
        map: BigradedMap,
        realization: Realization,
    ) -> Result<Self> {
        if map.source() != source.atom.table() || map.target() != target.atom.table() {
            return Err(Error::Mismatch(
                "map does not run between the atom tables".to_string(),
            ));
        }
        let expected = target.twist - source.twist;
        if map.degree() != expected {
            return Err(Error::Dimension {
                expected,
                found: map.degree(),
            });
        }
        Ok(Correspondence {
            source,
            target,
            map,
            realization,
        })
    }

    /// The identity of a motive is its projector.
    pub fn identity(m: &Motive, realization: Realization) -> Self {
        Correspondence {
            source: m.clone(),
            target: m.clone(),
            map: m.projector.clone(),
            realization,
        }
    }

    pub fn source(&self) -> &Motive {
        &self.source
    }

    pub fn target(&self) -> &Motive {
        &self.target
    }

    pub fn map(&self) -> &BigradedMap {
        &self.map
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    /// Transposed correspondence; the blocks transpose and the map moves to
    /// the dual theory. Needs both atoms to satisfy duality.
    pub fn transpose(&self) -> Result<Correspondence> {
        for m in [&self.source, &self.target] {
            if !m.atom.table().origin().has_duality() {
                return Err(Error::DualityUnavailable);
            }
        }
        Ok(Correspondence {
            source: self.target.clone(),
            target: self.source.clone(),
            map: self.map.transpose(),
            realization: self.realization.flipped(),
        })
    }
}

/// `g` after `f`.
pub fn compose(g: &Correspondence, f: &Correspondence) -> Result<Correspondence> {
    if f.target != g.source {
        return Err(Error::Mismatch(
            "target of the first correspondence is not the source of the second".to_string(),
        ));
    }
    if f.realization != g.realization {
        return Err(Error::Mismatch(
            "correspondences act on different theories".to_string(),
        ));
    }
    Ok(Correspondence {
        source: f.source.clone(),
        target: g.target.clone(),
        map: map_compose(&g.map, &f.map)?,
        realization: f.realization,
    })
}
