//! Prefix expressions for motives:
//! `sum(h(X), twist(h(Y), -1), proj(h(Z), P1))`.

use std::sync::Arc;

use lawson_core::bigraded::map_compose;
use lawson_core::motive::{Motive, MotiveExpr};
use lawson_core::{Atom, Error};

use crate::formats::NamedProjector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    H(String),
    Sum(Vec<Expr>),
    Twist(Box<Expr>, i64),
    Proj(Box<Expr>, String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown projector `{0}`")]
    UnknownProjector(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(0, char::len_utf8);
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            col: self.pos + 1,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> Result<(), ExprError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn peek(&mut self, c: char) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(c)
    }

    fn word(&mut self) -> Result<&'a str, ExprError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_alphanumeric() || "_-+.^".contains(c)))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.fail("expected a name");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let head = self.word()?;
        self.eat('(')?;
        let e = match head {
            "h" => Expr::H(self.word()?.to_string()),
            "sum" => {
                let mut items = vec![self.expr()?];
                while self.peek(',') {
                    self.eat(',')?;
                    items.push(self.expr()?);
                }
                Expr::Sum(items)
            }
            "twist" => {
                let inner = self.expr()?;
                self.eat(',')?;
                self.skip_ws();
                let at = self.pos;
                let w = self.word()?;
                let r = w.parse().or_else(|_| {
                    self.pos = at;
                    self.fail(format!("`{w}` is not an integer"))
                })?;
                Expr::Twist(Box::new(inner), r)
            }
            "proj" => {
                let inner = self.expr()?;
                self.eat(',')?;
                Expr::Proj(Box::new(inner), self.word()?.to_string())
            }
            other => {
                self.pos = start;
                return self.fail(format!(
                    "unknown form `{other}`; expected h, sum, twist or proj"
                ));
            }
        };
        self.eat(')')?;
        Ok(e)
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut lx = Lexer { src, pos: 0 };
    let e = lx.expr()?;
    lx.skip_ws();
    if lx.pos != src.len() {
        return lx.fail("trailing input");
    }
    Ok(e)
}

/// Evaluate against an atom resolver and named projectors. `proj` composes
/// the named projector with each summand's projector.
pub fn evaluate(
    e: &Expr,
    atoms: &dyn Fn(&str) -> Option<Atom>,
    projectors: &[NamedProjector],
) -> Result<MotiveExpr, ExprError> {
    match e {
        Expr::H(name) => {
            let atom = atoms(name).ok_or_else(|| ExprError::UnknownAtom(name.clone()))?;
            Ok(MotiveExpr::single(Motive::whole(Arc::new(atom), 0)?))
        }
        Expr::Sum(items) => items.iter().try_fold(MotiveExpr::default(), |acc, x| {
            Ok(acc.sum(evaluate(x, atoms, projectors)?))
        }),
        Expr::Twist(inner, r) => Ok(evaluate(inner, atoms, projectors)?.twisted(*r)),
        Expr::Proj(inner, name) => {
            let p = projectors
                .iter()
                .rev()
                .find(|p| &p.name == name)
                .ok_or_else(|| ExprError::UnknownProjector(name.clone()))?;
            let base = evaluate(inner, atoms, projectors)?;
            let summands = base
                .summands()
                .iter()
                .map(|m| {
                    let map = map_compose(&p.map, m.projector())?;
                    Motive::new(m.atom().clone(), map, m.twist())
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(MotiveExpr::new(summands))
        }
    }
}
