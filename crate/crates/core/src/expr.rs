//! Operator expressions over the generators of a Fock space.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('.' factor)*
//! factor := scalar? (atom | 'adj(' expr ')' | '(' expr ')')
//! atom   := 'L[' edge ']' | 'R[' edge ']' | 'P[' vertex ']' | 'Q[' vertex ']' | 'E[' k ']' | 'I'
//! scalar := num | num 'i' | num ('+' | '-') num 'i'
//! ```

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::scalar::Scalar;
use crate::sparse::SparseOperator;
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    L(String),
    R(String),
    P(String),
    Q(String),
    E(usize),
    I,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OpExpr {
    /// An atom with the byte offset of its label.
    Atom(Atom, usize),
    Scale(C64, Box<OpExpr>),
    Adj(Box<OpExpr>),
    Sum(Box<OpExpr>, Box<OpExpr>),
    Diff(Box<OpExpr>, Box<OpExpr>),
    Product(Box<OpExpr>, Box<OpExpr>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn expr(&mut self) -> Result<OpExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat("+") {
                lhs = OpExpr::Sum(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat("-") {
                lhs = OpExpr::Diff(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<OpExpr> {
        let mut lhs = self.factor()?;
        while self.eat(".") {
            lhs = OpExpr::Product(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<OpExpr> {
        let scalar = self.scalar()?;
        let body = if self.eat("adj(") {
            let inner = self.expr()?;
            self.expect(")")?;
            OpExpr::Adj(Box::new(inner))
        } else if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            inner
        } else {
            self.atom()?
        };
        Ok(match scalar {
            Some(s) => OpExpr::Scale(s, Box::new(body)),
            None => body,
        })
    }

    fn number(&mut self) -> Option<f64> {
        self.skip_ws();
        let r = self.rest();
        let int = r.bytes().take_while(u8::is_ascii_digit).count();
        if int == 0 {
            return None;
        }
        let mut len = int;
        if r[len..].starts_with('.') {
            let frac = r[len + 1..].bytes().take_while(u8::is_ascii_digit).count();
            if frac > 0 {
                len += 1 + frac;
            }
        }
        let v = r[..len].parse().ok()?;
        self.pos += len;
        Some(v)
    }

    fn scalar(&mut self) -> Result<Option<C64>> {
        let Some(a) = self.number() else {
            return Ok(None);
        };
        if self.rest().starts_with('i') {
            self.pos += 1;
            return Ok(Some(Complex::new(0.0, a)));
        }
        // a real part followed by a sign can only open a complex literal
        let save = self.pos;
        let sign = if self.eat("+") {
            1.0
        } else if self.eat("-") {
            -1.0
        } else {
            return Ok(Some(Complex::new(a, 0.0)));
        };
        match self.number() {
            Some(b) if self.rest().starts_with('i') => {
                self.pos += 1;
                Ok(Some(Complex::new(a, sign * b)))
            }
            _ => {
                self.pos = save;
                self.err("a scalar must be followed by an operator")
            }
        }
    }

    fn label(&mut self) -> Result<(String, usize)> {
        let start = self.pos;
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        if len == 0 {
            return self.err("expected a label");
        }
        self.pos += len;
        let label = self.src[start..start + len].to_string();
        self.expect("]")?;
        Ok((label, start))
    }

    fn atom(&mut self) -> Result<OpExpr> {
        self.skip_ws();
        let start = self.pos;
        let kinds: [(&str, fn(String) -> Atom); 4] =
            [("L[", Atom::L), ("R[", Atom::R), ("P[", Atom::P), ("Q[", Atom::Q)];
        for (prefix, make) in kinds {
            if self.eat(prefix) {
                let (label, at) = self.label()?;
                return Ok(OpExpr::Atom(make(label), at));
            }
        }
        if self.eat("E[") {
            let (label, at) = self.label()?;
            return match label.parse() {
                Ok(k) => Ok(OpExpr::Atom(Atom::E(k), at)),
                Err(_) => Err(Error::Parse {
                    offset: at,
                    message: format!("level `{label}` is not a non-negative integer"),
                }),
            };
        }
        if self.eat("I") {
            return Ok(OpExpr::Atom(Atom::I, start));
        }
        self.err("expected an operator")
    }
}

/// Parses an operator expression; errors carry the byte offset.
pub fn parse_op_expr(text: &str) -> Result<OpExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn fmt_scalar(s: &C64) -> String {
    match (s.re, s.im) {
        (re, im) if im == 0.0 => format!("{re}"),
        (re, im) if re == 0.0 && im > 0.0 => format!("{im}i"),
        (re, im) if im < 0.0 => format!("{re}-{}i", -im),
        (re, im) => format!("{re}+{im}i"),
    }
}

impl OpExpr {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // prec 0: expr, 1: term, 2: factor body
        let (own, paren) = match self {
            OpExpr::Sum(..) | OpExpr::Diff(..) => (0, prec > 0),
            OpExpr::Product(..) => (1, prec > 1),
            _ => (2, false),
        };
        if paren {
            f.write_str("(")?;
        }
        match self {
            OpExpr::Atom(a, _) => match a {
                Atom::L(l) => write!(f, "L[{l}]")?,
                Atom::R(l) => write!(f, "R[{l}]")?,
                Atom::P(l) => write!(f, "P[{l}]")?,
                Atom::Q(l) => write!(f, "Q[{l}]")?,
                Atom::E(k) => write!(f, "E[{k}]")?,
                Atom::I => f.write_str("I")?,
            },
            OpExpr::Scale(s, e) => {
                f.write_str(&fmt_scalar(s))?;
                // a scaled body is a factor body; nested scales need parentheses
                if matches!(**e, OpExpr::Scale(..)) {
                    write!(f, "({e})")?;
                } else {
                    e.fmt_prec(f, 2)?;
                }
            }
            OpExpr::Adj(e) => {
                f.write_str("adj(")?;
                e.fmt_prec(f, 0)?;
                f.write_str(")")?;
            }
            OpExpr::Sum(a, b) | OpExpr::Diff(a, b) => {
                a.fmt_prec(f, own)?;
                f.write_str(if matches!(self, OpExpr::Sum(..)) { " + " } else { " - " })?;
                b.fmt_prec(f, own + 1)?;
            }
            OpExpr::Product(a, b) => {
                a.fmt_prec(f, own)?;
                f.write_str(".")?;
                b.fmt_prec(f, own + 1)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }

    /// Checks every label against the space's graph.
    pub fn resolve(&self, space: &FockSpace) -> Result<()> {
        match self {
            OpExpr::Atom(a, at) => resolve_atom(a, *at, space).map(|_| ()),
            OpExpr::Scale(_, e) | OpExpr::Adj(e) => e.resolve(space),
            OpExpr::Sum(a, b) | OpExpr::Diff(a, b) | OpExpr::Product(a, b) => {
                a.resolve(space)?;
                b.resolve(space)
            }
        }
    }
}

enum Resolved {
    Edge(crate::graph::EdgeId),
    Vertex(crate::graph::VertexId),
    Other,
}

fn resolve_atom(a: &Atom, at: usize, space: &FockSpace) -> Result<Resolved> {
    let g = space.graph();
    let unknown = |label: &String| Error::UnknownLabel {
        label: label.clone(),
        offset: at,
    };
    Ok(match a {
        Atom::L(l) | Atom::R(l) => Resolved::Edge(g.edge_id(l).map_err(|_| unknown(l))?),
        Atom::P(l) | Atom::Q(l) => Resolved::Vertex(g.vertex(l).map_err(|_| unknown(l))?),
        Atom::E(_) | Atom::I => Resolved::Other,
    })
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn eval_in<T: Scalar>(e: &OpExpr, space: &FockSpace, lit: &dyn Fn(&C64) -> Option<T>) -> Result<SparseOperator<T>> {
    Ok(match e {
        OpExpr::Atom(a, at) => match (a, resolve_atom(a, *at, space)?) {
            (Atom::L(_), Resolved::Edge(e)) => space.left(e),
            (Atom::R(_), Resolved::Edge(e)) => space.right(e),
            (Atom::P(_), Resolved::Vertex(x)) => space.vertex_projection(x),
            (Atom::Q(_), Resolved::Vertex(x)) => space.source_projection(x),
            (Atom::E(k), _) => space.level_projection(*k)?,
            _ => space.identity(),
        },
        OpExpr::Scale(s, inner) => {
            let s = lit(s).ok_or_else(|| Error::Format(format!("scalar {} is not representable", fmt_scalar(s))))?;
            eval_in(inner, space, lit)?.scale(&s)
        }
        OpExpr::Adj(inner) => eval_in(inner, space, lit)?.adjoint(),
        OpExpr::Sum(a, b) => &eval_in(a, space, lit)? + &eval_in(b, space, lit)?,
        OpExpr::Diff(a, b) => &eval_in(a, space, lit)? - &eval_in(b, space, lit)?,
        OpExpr::Product(a, b) => &eval_in(a, space, lit)? * &eval_in(b, space, lit)?,
    })
}

/// Evaluates with complex floating scalars; degrees follow the operator rules.
pub fn evaluate(expr: &OpExpr, space: &FockSpace) -> Result<SparseOperator<C64>> {
    eval_in(expr, space, &|s| Some(*s))
}

/// Evaluates exactly over the Gaussian integers; fails on other scalars.
pub fn evaluate_exact(expr: &OpExpr, space: &FockSpace) -> Result<SparseOperator<Complex<i64>>> {
    fn int(x: f64) -> Option<i64> {
        (x.fract() == 0.0 && x.abs() < 1e15).then_some(x as i64)
    }
    eval_in(expr, space, &|s| Some(Complex::new(int(s.re)?, int(s.im)?)))
}
