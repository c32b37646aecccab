//! Parser for operator and module-element expressions such as
//! `(x^2+1)*d1^2*a1 + 3*d2` or `d1*e1 - x*e2`.
//!
//! `d<i>` and `a<i>` name the basic operators, `e<i>` the module basis, and
//! any other identifier a ground-field indeterminate. Products are taken
//! left to right in the operator ring, so `d1*x` expands to `x*d1 + 1` when
//! `d1` differentiates `x`. A basis vector must be the rightmost factor.
//! `A/c` multiplies on the right by the inverse of the scalar `c`.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Algebra, ModuleElement, OreOperator};
use crate::error::{Error, Result};
use crate::monoid::Exponent;
use crate::ratfun::RatFun;

#[derive(Clone, Debug)]
enum Value {
    Op(OreOperator),
    Elem(ModuleElement),
}

struct Parser<'a> {
    alg: &'a Algebra,
    rank: Option<usize>,
    src: &'a [u8],
    pos: usize,
}

fn negate(v: Value) -> Value {
    match v {
        Value::Op(a) => Value::Op(a.neg()),
        Value::Elem(a) => Value::Elem(a.neg()),
    }
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, message: message.into() })
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn scalar(&self, c: RatFun) -> Value {
        Value::Op(OreOperator::scalar(self.alg.width(), c))
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = if self.eat(b'-') {
            negate(self.term()?)
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            let at = self.pos;
            let rhs = if self.eat(b'+') {
                self.term()?
            } else if self.eat(b'-') {
                negate(self.term()?)
            } else {
                break;
            };
            acc = match (acc, rhs) {
                (Value::Op(a), Value::Op(b)) => Value::Op(a.add(&b)),
                (Value::Elem(a), Value::Elem(b)) => Value::Elem(a.add(&b)),
                (Value::Op(a), Value::Elem(b)) | (Value::Elem(b), Value::Op(a)) if a.is_zero() => Value::Elem(b),
                _ => return err(at, "cannot add an operator to a module element"),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let at = self.pos;
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = match (acc, rhs) {
                    (Value::Op(a), Value::Op(b)) => Value::Op(self.alg.op_mul(&a, &b)?),
                    (Value::Op(a), Value::Elem(b)) => Value::Elem(self.alg.act(&a, &b)?),
                    (Value::Elem(_), _) => return err(at, "a module basis vector must be the rightmost factor"),
                };
            } else if self.eat(b'/') {
                let rhs_at = self.pos;
                let c = match self.unary()? {
                    Value::Op(b) => match b.as_scalar() {
                        Some(c) => c.clone(),
                        None if b.is_zero() => return err(rhs_at, "division by zero"),
                        None => return err(rhs_at, "can only divide by a scalar"),
                    },
                    Value::Elem(_) => return err(rhs_at, "can only divide by a scalar"),
                };
                acc = match acc {
                    Value::Op(a) => Value::Op(self.alg.op_mul(&a, &OreOperator::scalar(self.alg.width(), c.inv()))?),
                    Value::Elem(_) => return err(at, "cannot divide a module element"),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat(b'-') {
            let v = self.unary()?;
            return Ok(negate(v));
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let k = match self.integer()? {
            Some(k) => k,
            None => return err(at, "expected a nonnegative integer exponent"),
        };
        let k: u32 = match u32::try_from(&k) {
            Ok(k) if k <= 4096 => k,
            _ => return err(at, "exponent too large"),
        };
        match base {
            Value::Op(a) => {
                let mut acc = OreOperator::scalar(self.alg.width(), self.alg.field.one());
                for _ in 0..k {
                    acc = self.alg.op_mul(&acc, &a)?;
                }
                Ok(Value::Op(acc))
            }
            Value::Elem(_) => err(at, "cannot raise a module element to a power"),
        }
    }

    fn integer(&mut self) -> Result<Option<BigInt>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(Some(digits.parse::<BigInt>().expect("digits")))
    }

    fn atom(&mut self) -> Result<Value> {
        let Some(c) = self.peek() else {
            return err(self.pos, "unexpected end of input");
        };
        let at = self.pos;
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            if !self.eat(b')') {
                return err(self.pos, "expected ')'");
            }
            return Ok(v);
        }
        if let Some(k) = self.integer()? {
            let nv = self.alg.field.nvars();
            return Ok(self.scalar(RatFun::constant(nv, BigRational::from_integer(k))));
        }
        if c.is_ascii_alphabetic() {
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let word = core::str::from_utf8(&self.src[at..self.pos]).unwrap();
            return self.ident(word, at);
        }
        err(at, format!("unexpected character {:?}", c as char))
    }

    fn ident(&self, word: &str, at: usize) -> Result<Value> {
        if let Some(v) = self.alg.field.names().iter().position(|n| n == word) {
            return Ok(self.scalar(self.alg.field.var(v)));
        }
        let (head, tail) = word.split_at(1);
        let index = tail.parse::<usize>().ok().filter(|&i| i >= 1 && tail.chars().all(|c| c.is_ascii_digit()));
        let sig = self.alg.signature();
        let one = self.alg.field.one();
        match (head, index) {
            ("d", Some(i)) if i <= sig.m => {
                Ok(Value::Op(OreOperator::monomial(Exponent::unit(self.alg.width(), i - 1), one)))
            }
            ("a", Some(j)) if j <= sig.n => {
                Ok(Value::Op(OreOperator::monomial(Exponent::unit(self.alg.width(), sig.m + j - 1), one)))
            }
            ("e", Some(i)) => match self.rank {
                Some(s) if i <= s => Ok(Value::Elem(ModuleElement::basis(self.alg, s, i - 1))),
                Some(s) => err(at, format!("e{} exceeds the module rank {}", i, s)),
                None => err(at, "module basis vectors are not allowed in an operator"),
            },
            ("d" | "a", Some(_)) => err(at, format!("{} is not an operator of this signature", word)),
            _ => err(at, format!("unknown identifier {}", word)),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return err(self.pos, "unexpected trailing input");
        }
        Ok(())
    }
}

/// Parses an operator over `alg`.
pub fn parse_operator(alg: &Algebra, src: &str) -> Result<OreOperator> {
    let mut p = Parser { alg, rank: None, src: src.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.finish()?;
    match v {
        Value::Op(a) => Ok(a),
        Value::Elem(_) => err(0, "expected an operator"),
    }
}

/// Parses an element of the free module of rank `rank` over `alg`.
pub fn parse_element(alg: &Algebra, rank: usize, src: &str) -> Result<ModuleElement> {
    let mut p = Parser { alg, rank: Some(rank), src: src.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.finish()?;
    match v {
        Value::Elem(v) => Ok(ModuleElement { rank, ..v }),
        Value::Op(a) if a.is_zero() => Ok(ModuleElement::zero(rank)),
        Value::Op(_) => err(0, "expected a module element (multiply by some e<i>)"),
    }
}
