//! Module expressions: `V(lambda=[3])`, `Vt(lambda=[1], t=4)`,
//! `Block(lambda=[3], f="y-2", r=1)`, `Verma(lambda=[1])`, `tensor(A, B)`,
//! `sum(A, B, ...)`. Arguments may also be given positionally.

use std::sync::Arc;

use hopfore::exactnum::{Field, UniPoly};
use hopfore::grouprep::Character;
use hopfore::hopfcore::HopfPresentation;
use hopfore::weightmod::{
    make_block, make_serial, make_simple_onedim, make_verma_quotient, mod_direct_sum, mod_tensor, WeightModule,
};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Call(Expr),
    List(Vec<String>),
    Str(String),
    Atom(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub name: String,
    pub args: Vec<(Option<String>, Value)>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn err<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Expr(msg.into()))
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest().len() - self.rest().trim_start().len();
        self.pos += t;
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> CliResult<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            err(format!("expected '{c}' at {:?}", self.rest()))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let n = self
            .rest()
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let s = self.rest()[..n].to_string();
        self.pos += n;
        s
    }

    /// Raw text up to the next top-level `,` or closing bracket.
    fn atom(&mut self) -> String {
        self.skip_ws();
        let mut depth = 0i32;
        let mut end = self.rest().len();
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' if depth == 0 => {
                    end = i;
                    break;
                }
                ')' | ']' => depth -= 1,
                ',' if depth == 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        let s = self.rest()[..end].trim().to_string();
        self.pos += end;
        s
    }

    fn value(&mut self) -> CliResult<Value> {
        let v = match self.peek() {
            Some('[') => {
                self.eat('[')?;
                let mut items = Vec::new();
                while self.peek() != Some(']') {
                    let a = self.atom();
                    if a.is_empty() {
                        return err("empty list entry");
                    }
                    items.push(a);
                    if self.peek() == Some(',') {
                        self.eat(',')?;
                    }
                }
                self.eat(']')?;
                Ok(Value::List(items))
            }
            Some('"') => {
                self.pos += 1;
                let Some(n) = self.rest().find('"') else {
                    return err("unterminated string");
                };
                let s = self.rest()[..n].to_string();
                self.pos += n + 1;
                Ok(Value::Str(s))
            }
            Some(c) if c.is_alphabetic() => {
                let save = self.pos;
                self.ident();
                if self.peek() == Some('(') {
                    self.pos = save;
                    Ok(Value::Call(self.call()?))
                } else {
                    self.pos = save;
                    Ok(Value::Atom(self.atom()))
                }
            }
            Some(_) => Ok(Value::Atom(self.atom())),
            None => err("unexpected end of input"),
        }?;
        match &v {
            Value::Atom(a) if a.is_empty() => err("empty argument"),
            _ => Ok(v),
        }
    }

    fn call(&mut self) -> CliResult<Expr> {
        let name = self.ident();
        if name.is_empty() {
            return err(format!("expected a constructor name at {:?}", self.rest()));
        }
        self.eat('(')?;
        let mut args = Vec::new();
        while self.peek() != Some(')') {
            // keyword argument?
            let save = self.pos;
            let key = self.ident();
            let key = if !key.is_empty() && self.peek() == Some('=') {
                self.eat('=')?;
                Some(key)
            } else {
                self.pos = save;
                None
            };
            args.push((key, self.value()?));
            match self.peek() {
                Some(',') => self.eat(',')?,
                Some(')') => {}
                _ => return err(format!("expected ',' or ')' at {:?}", self.rest())),
            }
        }
        self.eat(')')?;
        Ok(Expr { name, args })
    }
}

pub fn parse_expr(src: &str) -> CliResult<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.call()?;
    if p.peek().is_some() {
        return err(format!("trailing input {:?}", p.rest()));
    }
    Ok(e)
}

impl Expr {
    /// Argument by keyword, or else by position.
    fn arg(&self, key: &str, pos: usize) -> CliResult<&Value> {
        if let Some((_, v)) = self.args.iter().find(|(k, _)| k.as_deref() == Some(key)) {
            return Ok(v);
        }
        match self.args.get(pos) {
            Some((None, v)) => Ok(v),
            _ => err(format!("{}: missing argument {key}", self.name)),
        }
    }

    fn arg_opt(&self, key: &str, pos: usize) -> Option<&Value> {
        self.arg(key, pos).ok()
    }

    fn check_arity(&self, allowed: &[&str]) -> CliResult<()> {
        if self.args.len() > allowed.len() {
            return err(format!("{} takes at most {} arguments", self.name, allowed.len()));
        }
        for (k, _) in &self.args {
            if let Some(k) = k {
                if !allowed.contains(&k.as_str()) {
                    return err(format!("{}: unknown argument {k}", self.name));
                }
            }
        }
        Ok(())
    }
}

fn character<F: Field>(field: &F, v: &Value) -> CliResult<Character<F::Elem>> {
    let items = match v {
        Value::List(items) => items.clone(),
        Value::Atom(a) | Value::Str(a) => vec![a.clone()],
        Value::Call(_) => return err("a weight must be a list of generator images"),
    };
    let imgs: CliResult<Vec<F::Elem>> = items.iter().map(|s| Ok(field.parse_elem(s)?)).collect();
    Ok(Character::new(imgs?))
}

fn integer(v: &Value, what: &str) -> CliResult<u32> {
    match v {
        Value::Atom(a) | Value::Str(a) => a
            .parse()
            .map_err(|_| CliError::Expr(format!("{what} must be a positive integer, got {a:?}"))),
        _ => err(format!("{what} must be a positive integer")),
    }
}

fn module<F: Field>(hopf: &Arc<HopfPresentation<F>>, v: &Value) -> CliResult<WeightModule<F>> {
    match v {
        Value::Call(e) => eval(hopf, e),
        _ => err("expected a module expression"),
    }
}

pub fn eval<F: Field>(hopf: &Arc<HopfPresentation<F>>, e: &Expr) -> CliResult<WeightModule<F>> {
    let f = hopf.field();
    match e.name.as_str() {
        "V" => {
            e.check_arity(&["lambda"])?;
            Ok(make_simple_onedim(hopf, &character(f, e.arg("lambda", 0)?)?)?)
        }
        "Vt" => {
            e.check_arity(&["lambda", "t"])?;
            let l = character(f, e.arg("lambda", 0)?)?;
            Ok(make_serial(hopf, &l, integer(e.arg("t", 1)?, "t")?)?)
        }
        "Block" => {
            e.check_arity(&["lambda", "f", "r"])?;
            let l = character(f, e.arg("lambda", 0)?)?;
            let p = match e.arg("f", 1)? {
                Value::Str(s) | Value::Atom(s) => UniPoly::parse(f, s)?,
                _ => return err("f must be a polynomial in y"),
            };
            let r = match e.arg_opt("r", 2) {
                Some(v) => integer(v, "r")?,
                None => 1,
            };
            Ok(make_block(hopf, &l, &p, r)?)
        }
        "Verma" => {
            e.check_arity(&["lambda"])?;
            Ok(make_verma_quotient(hopf, &character(f, e.arg("lambda", 0)?)?)?)
        }
        "tensor" | "sum" => {
            if e.args.len() < 2 || e.args.iter().any(|(k, _)| k.is_some()) {
                return err(format!("{} takes two or more module arguments", e.name));
            }
            let mut acc = module(hopf, &e.args[0].1)?;
            for (_, v) in &e.args[1..] {
                let m = module(hopf, v)?;
                acc = if e.name == "sum" {
                    mod_direct_sum(&acc, &m)?
                } else {
                    mod_tensor(&acc, &m)?
                };
            }
            Ok(acc)
        }
        other => err(format!("unknown constructor {other:?}")),
    }
}
