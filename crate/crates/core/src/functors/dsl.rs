//! Pipeline expressions:
//!
//! ```text
//! expr   := term | atom "." expr
//! term   := factor ("_" atom | "^" atom)*
//! factor := "Phi(" atom ")" | "(" expr ")"
//! atom   := X | L1 | L2 | S | Pc | Pci | E1 | T1 | Max2star
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::sets::{Atom, FunctorContext, Level, SubgroupSet};
use crate::error::{Error, Result};

/// Reading of the "^" combinator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Caret {
    Union,
    #[default]
    Intersection,
}

impl Caret {
    pub fn name(self) -> &'static str {
        match self {
            Caret::Union => "union",
            Caret::Intersection => "intersection",
        }
    }
}

impl FromStr for Caret {
    type Err = Error;
    fn from_str(s: &str) -> Result<Caret> {
        match s {
            "union" => Ok(Caret::Union),
            "intersection" => Ok(Caret::Intersection),
            _ => Err(Error::Unknown {
                kind: "caret semantics",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctorExpr {
    Phi(Atom),
    /// `e _ a`
    Contract(Box<FunctorExpr>, Atom),
    /// `e ^ a`
    Extend(Box<FunctorExpr>, Atom),
    /// `a . e`
    Dot(Atom, Box<FunctorExpr>),
}

impl FunctorExpr {
    pub fn parse(text: &str) -> Result<FunctorExpr> {
        let mut p = Parser {
            toks: tokenize(text)?,
            pos: 0,
            end: text.len(),
        };
        let e = p.expr()?;
        if let Some(t) = p.peek() {
            return Err(Error::Parse {
                pos: t.pos,
                msg: format!("unexpected `{}`", t.kind),
            });
        }
        Ok(e)
    }

    /// Canonical text; reparses to the same tree.
    pub fn render(&self) -> String {
        match self {
            FunctorExpr::Phi(a) => format!("Phi({a})"),
            FunctorExpr::Contract(e, a) => format!("{}_{a}", e.render_factor()),
            FunctorExpr::Extend(e, a) => format!("{}^{a}", e.render_factor()),
            FunctorExpr::Dot(a, e) => match **e {
                FunctorExpr::Phi(_) | FunctorExpr::Dot(..) => format!("{a}.{}", e.render()),
                _ => format!("{a}.({})", e.render()),
            },
        }
    }

    fn render_factor(&self) -> String {
        match self {
            FunctorExpr::Dot(..) => format!("({})", self.render()),
            _ => self.render(),
        }
    }

    /// Atoms in order of appearance.
    pub fn atoms(&self) -> Vec<Atom> {
        match self {
            FunctorExpr::Phi(a) => vec![*a],
            FunctorExpr::Contract(e, a) | FunctorExpr::Extend(e, a) => {
                let mut v = e.atoms();
                v.push(*a);
                v
            }
            FunctorExpr::Dot(a, e) => {
                let mut v = vec![*a];
                v.extend(e.atoms());
                v
            }
        }
    }

    pub fn eval(&self, ctx: &FunctorContext<'_>, caret: Caret) -> Result<SubgroupSet> {
        match self {
            FunctorExpr::Phi(a) => ctx.phi(&ctx.base_set(*a)),
            FunctorExpr::Contract(e, a) => e.eval(ctx, caret)?.contract(&second_level(ctx, *a)?),
            FunctorExpr::Extend(e, a) => {
                let y = e.eval(ctx, caret)?;
                let z = second_level(ctx, *a)?;
                match caret {
                    Caret::Union => y.extend(&z),
                    Caret::Intersection => y.contract(&z),
                }
            }
            FunctorExpr::Dot(a, e) => second_level(ctx, *a)?.contract(&e.eval(ctx, caret)?),
        }
    }
}

fn second_level(ctx: &FunctorContext<'_>, a: Atom) -> Result<SubgroupSet> {
    if a.level() != Level::Max2 {
        return Err(Error::LevelMismatch {
            expected: "Max2",
            found: "Max",
        });
    }
    Ok(ctx.base_set(a))
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for FunctorExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<FunctorExpr> {
        FunctorExpr::parse(s)
    }
}

pub fn parse_functor(text: &str) -> Result<FunctorExpr> {
    FunctorExpr::parse(text)
}

pub fn eval_functor(e: &FunctorExpr, ctx: &FunctorContext<'_>, caret: Caret) -> Result<SubgroupSet> {
    e.eval(ctx, caret)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Ident(String),
    LParen,
    RParen,
    Under,
    Caret,
    Dot,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Ident(s) => f.write_str(s),
            Kind::LParen => f.write_str("("),
            Kind::RParen => f.write_str(")"),
            Kind::Under => f.write_str("_"),
            Kind::Caret => f.write_str("^"),
            Kind::Dot => f.write_str("."),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let kind = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => Kind::LParen,
            ')' => Kind::RParen,
            '_' => Kind::Under,
            '^' => Kind::Caret,
            '.' => Kind::Dot,
            c if c.is_ascii_alphanumeric() => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !c.is_ascii_alphanumeric() {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push(Token {
                    kind: Kind::Ident(s),
                    pos,
                });
                continue;
            }
            other => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        out.push(Token { kind, pos });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_kind(&self, off: usize) -> Option<&Kind> {
        self.toks.get(self.pos + off).map(|t| &t.kind)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn expect(&mut self, kind: Kind) -> Result<()> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(Error::Parse {
                pos: t.pos,
                msg: format!("expected `{kind}`, found `{}`", t.kind),
            }),
            None => Err(Error::Parse {
                pos: self.end,
                msg: format!("expected `{kind}`, found end of input"),
            }),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek().cloned() {
            Some(Token {
                kind: Kind::Ident(name),
                pos,
            }) => {
                self.pos += 1;
                Atom::from_name(&name).ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("unknown atom `{name}`"),
                })
            }
            Some(t) => Err(Error::Parse {
                pos: t.pos,
                msg: format!("expected an atom, found `{}`", t.kind),
            }),
            None => Err(Error::Parse {
                pos: self.end,
                msg: "expected an atom, found end of input".into(),
            }),
        }
    }

    fn expr(&mut self) -> Result<FunctorExpr> {
        let is_phi =
            matches!(self.peek_kind(0), Some(Kind::Ident(s)) if s == "Phi") && self.peek_kind(1) == Some(&Kind::LParen);
        if matches!(self.peek_kind(0), Some(Kind::Ident(_))) && !is_phi {
            let a = self.atom()?;
            self.expect(Kind::Dot)?;
            let e = self.expr()?;
            return Ok(FunctorExpr::Dot(a, Box::new(e)));
        }
        self.term()
    }

    fn term(&mut self) -> Result<FunctorExpr> {
        let mut e = self.factor()?;
        loop {
            match self.peek_kind(0) {
                Some(Kind::Under) => {
                    self.pos += 1;
                    e = FunctorExpr::Contract(Box::new(e), self.atom()?);
                }
                Some(Kind::Caret) => {
                    self.pos += 1;
                    e = FunctorExpr::Extend(Box::new(e), self.atom()?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn factor(&mut self) -> Result<FunctorExpr> {
        match self.peek_kind(0) {
            Some(Kind::Ident(s)) if s == "Phi" => {
                self.pos += 1;
                self.expect(Kind::LParen)?;
                let a = self.atom()?;
                self.expect(Kind::RParen)?;
                Ok(FunctorExpr::Phi(a))
            }
            Some(Kind::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Kind::RParen)?;
                Ok(e)
            }
            _ => Err(Error::Parse {
                pos: self.here(),
                msg: "expected `Phi(` or `(`".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_dot_caret_pipeline() {
        let e = FunctorExpr::parse("Pci.(Phi(X)_L1 ^ E1)").unwrap();
        let want = FunctorExpr::Dot(
            Atom::Pci,
            Box::new(FunctorExpr::Extend(
                Box::new(FunctorExpr::Contract(Box::new(FunctorExpr::Phi(Atom::X)), Atom::L1)),
                Atom::E1,
            )),
        );
        assert_eq!(e, want);
        assert_eq!(e.render(), "Pci.(Phi(X)_L1^E1)");
    }

    #[test]
    fn max2star_is_alias() {
        assert_eq!(
            FunctorExpr::parse("Phi(X)_Max2star").unwrap(),
            FunctorExpr::parse("Phi(X)_S").unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        match FunctorExpr::parse("Phi(X)_Q7") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        match FunctorExpr::parse("Phi(X") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match FunctorExpr::parse("Phi(X) L1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(FunctorExpr::parse("Pci Phi(X)").is_err());
        assert!(FunctorExpr::parse("Phi(X)_L1 $").is_err());
    }
}
