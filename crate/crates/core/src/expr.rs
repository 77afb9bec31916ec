//! A small expression language for parametric curves and surfaces.
//!
//! Grammar (standard precedence, `^` binds tightest, `+ - * /` left
//! associative, `^` takes a constant exponent):
//!
//! ```text
//! expr     := term { ("+" | "-") term }
//! term     := factor { ("*" | "/") factor }
//! factor   := "-" factor | power
//! power    := atom [ "^" exponent ]
//! atom     := number | ident "(" expr ")" | ident | "(" expr ")"
//! exponent := [ "-" ] ( number | "(" expr ")" )     -- must fold to a constant
//! ```
//!
//! Functions: `sin cos tan exp log sqrt abs`. Exponents may be rational
//! constants like `(1/3)`; variable exponents are rejected at parse time.
//! Evaluation produces jets of any order up to [`crate::jet::MAX_ORDER`];
//! domain violations (log/sqrt of a non-positive value, division by zero at
//! the base point, fractional power of a negative base) surface as
//! [`Error::Domain`] at evaluation time.

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::jet2::Jet2;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Const(f64),
    Var(usize),
    Unary(UnaryOp, Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    /// Power with a constant exponent.
    Pow(Box<Node>, f64),
}

/// Parsed expression together with its declared variable names.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprAst {
    root: Node,
    variables: Vec<String>,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::Eof, start));
        }
        let b = self.src[self.pos];
        let simple = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((t, start));
        }
        if b.is_ascii_digit() || b == b'.' {
            let mut end = self.pos;
            while end < self.src.len()
                && (self.src[end].is_ascii_digit() || self.src[end] == b'.')
            {
                end += 1;
            }
            if end < self.src.len() && (self.src[end] == b'e' || self.src[end] == b'E') {
                let mut e = end + 1;
                if e < self.src.len() && (self.src[e] == b'+' || self.src[e] == b'-') {
                    e += 1;
                }
                if e < self.src.len() && self.src[e].is_ascii_digit() {
                    while e < self.src.len() && self.src[e].is_ascii_digit() {
                        e += 1;
                    }
                    end = e;
                }
            }
            let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
            let v: f64 = text.parse().map_err(|_| Error::Syntax {
                offset: start,
                message: format!("malformed number '{text}'"),
            })?;
            self.pos = end;
            return Ok((Tok::Num(v), start));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            let mut end = self.pos;
            while end < self.src.len()
                && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
            {
                end += 1;
            }
            let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
            self.pos = end;
            return Ok((Tok::Ident(text), start));
        }
        Err(Error::Syntax {
            offset: start,
            message: format!("unexpected character '{}'", b as char),
        })
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    variables: &'a [String],
}

const FUNCTIONS: [(&str, UnaryOp); 7] = [
    ("sin", UnaryOp::Sin),
    ("cos", UnaryOp::Cos),
    ("tan", UnaryOp::Tan),
    ("exp", UnaryOp::Exp),
    ("log", UnaryOp::Log),
    ("sqrt", UnaryOp::Sqrt),
    ("abs", UnaryOp::Abs),
];

impl<'a> Parser<'a> {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.idx]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.idx].clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let (t, off) = self.bump();
        if t == want {
            Ok(())
        } else {
            Err(Error::Syntax {
                offset: off,
                message: format!("expected {what}"),
            })
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Node::Bin(BinOp::Add, Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Node::Bin(BinOp::Sub, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().0 {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Node::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Node::Bin(BinOp::Div, Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Node> {
        if self.peek().0 == Tok::Minus {
            self.bump();
            let inner = self.factor()?;
            return Ok(Node::Unary(UnaryOp::Neg, Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.peek().0 == Tok::Caret {
            self.bump();
            let p = self.exponent()?;
            return Ok(Node::Pow(Box::new(base), p));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<f64> {
        let mut sign = 1.0;
        if self.peek().0 == Tok::Minus {
            self.bump();
            sign = -1.0;
        }
        let (t, off) = self.bump();
        match t {
            Tok::Num(v) => Ok(sign * v),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                match fold_const(&inner) {
                    Some(v) => Ok(sign * v),
                    None => Err(Error::Syntax {
                        offset: off,
                        message: "exponent must be a constant".into(),
                    }),
                }
            }
            _ => Err(Error::Syntax {
                offset: off,
                message: "expected a constant exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Node> {
        let (t, off) = self.bump();
        match t {
            Tok::Num(v) => Ok(Node::Const(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if let Some((_, op)) = FUNCTIONS.iter().find(|(n, _)| *n == name) {
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(Node::Unary(*op, Box::new(arg)));
                }
                match self.variables.iter().position(|v| *v == name) {
                    Some(i) => Ok(Node::Var(i)),
                    None => Err(Error::Syntax {
                        offset: off,
                        message: format!("unknown identifier '{name}'"),
                    }),
                }
            }
            Tok::Eof => Err(Error::Syntax {
                offset: off,
                message: "unexpected end of input".into(),
            }),
            _ => Err(Error::Syntax {
                offset: off,
                message: "expected a value".into(),
            }),
        }
    }
}

fn fold_const(node: &Node) -> Option<f64> {
    match node {
        Node::Const(v) => Some(*v),
        Node::Var(_) => None,
        Node::Unary(UnaryOp::Neg, a) => fold_const(a).map(|v| -v),
        Node::Unary(op, a) => {
            let v = fold_const(a)?;
            Some(match op {
                UnaryOp::Sin => v.sin(),
                UnaryOp::Cos => v.cos(),
                UnaryOp::Tan => v.tan(),
                UnaryOp::Exp => v.exp(),
                UnaryOp::Log => v.ln(),
                UnaryOp::Sqrt => v.sqrt(),
                UnaryOp::Abs => v.abs(),
                UnaryOp::Neg => unreachable!(),
            })
        }
        Node::Bin(op, a, b) => {
            let (x, y) = (fold_const(a)?, fold_const(b)?);
            Some(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => x / y,
            })
        }
        Node::Pow(a, p) => fold_const(a).map(|v| v.powf(*p)),
    }
}

/// Parse `source` against the declared variable list.
pub fn parse(source: &str, variables: &[&str]) -> Result<ExprAst> {
    if source.trim().is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty expression".into(),
        });
    }
    let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
    let mut lexer = Lexer::new(source);
    let mut toks = Vec::new();
    loop {
        let (t, off) = lexer.next()?;
        let eof = t == Tok::Eof;
        toks.push((t, off));
        if eof {
            break;
        }
    }
    let mut p = Parser {
        toks,
        idx: 0,
        variables: &vars,
    };
    let root = p.expr()?;
    let (t, off) = p.peek().clone();
    if t != Tok::Eof {
        return Err(Error::Syntax {
            offset: off,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(ExprAst {
        root,
        variables: vars,
    })
}

impl ExprAst {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Evaluate as a jet in one active variable, all others frozen.
    pub fn eval_jet(
        &self,
        active: &str,
        at: f64,
        order: usize,
        frozen: &[(&str, f64)],
    ) -> Result<Jet> {
        let seeds = self.seed_env(active, frozen)?;
        let env: Vec<Jet> = seeds
            .iter()
            .map(|s| match s {
                Seed::Active => Jet::variable(at, order),
                Seed::Frozen(v) => Jet::constant(*v, order, at),
            })
            .collect();
        eval_node(&self.root, &env, &JET_OPS)
    }

    /// Evaluate as a bivariate jet in two active variables.
    pub fn eval_jet2(
        &self,
        active_u: (&str, f64),
        active_v: (&str, f64),
        order: usize,
        frozen: &[(&str, f64)],
    ) -> Result<Jet2> {
        let mut env = Vec::with_capacity(self.variables.len());
        for name in &self.variables {
            if name == active_u.0 {
                env.push(Jet2::variable_u(active_u.1, order));
            } else if name == active_v.0 {
                env.push(Jet2::variable_v(active_v.1, order));
            } else if let Some((_, v)) = frozen.iter().find(|(n, _)| n == name) {
                env.push(Jet2::constant(*v, order));
            } else {
                return Err(Error::InvalidInput(format!(
                    "variable '{name}' not assigned"
                )));
            }
        }
        eval_node(&self.root, &env, &JET2_OPS)
    }

    /// Plain evaluation at a point.
    pub fn eval(&self, values: &[(&str, f64)]) -> Result<f64> {
        let frozen: Vec<(&str, f64)> = values.to_vec();
        let first = values.first().ok_or_else(|| {
            Error::InvalidInput("no variable assignment given".into())
        })?;
        Ok(self.eval_jet(first.0, first.1, 0, &frozen)?.value())
    }

    fn seed_env(&self, active: &str, frozen: &[(&str, f64)]) -> Result<Vec<Seed>> {
        let mut env = Vec::with_capacity(self.variables.len());
        for name in &self.variables {
            if name == active {
                env.push(Seed::Active);
            } else if let Some((_, v)) = frozen.iter().find(|(n, _)| n == name) {
                env.push(Seed::Frozen(*v));
            } else {
                return Err(Error::InvalidInput(format!(
                    "variable '{name}' not assigned"
                )));
            }
        }
        Ok(env)
    }
}

enum Seed {
    Active,
    Frozen(f64),
}

/// Vtable of jet operations so one evaluator covers both jet types.
struct Ops<T> {
    constant_like: fn(&T, f64) -> T,
    add: fn(&T, &T) -> T,
    sub: fn(&T, &T) -> T,
    mul: fn(&T, &T) -> T,
    div: fn(&T, &T) -> Result<T>,
    neg: fn(&T) -> T,
    sin: fn(&T) -> T,
    cos: fn(&T) -> T,
    tan: fn(&T) -> Result<T>,
    exp: fn(&T) -> T,
    ln: fn(&T) -> Result<T>,
    sqrt: fn(&T) -> Result<T>,
    abs: fn(&T) -> Result<T>,
    powf: fn(&T, f64) -> Result<T>,
}

static JET_OPS: Ops<Jet> = Ops {
    constant_like: |t, v| Jet::constant(v, t.order(), t.base()),
    add: |a, b| a.add(b),
    sub: |a, b| a.sub(b),
    mul: |a, b| a.mul(b),
    div: |a, b| a.div(b),
    neg: |a| a.neg(),
    sin: |a| a.sin(),
    cos: |a| a.cos(),
    tan: |a| a.tan(),
    exp: |a| a.exp(),
    ln: |a| a.ln(),
    sqrt: |a| a.sqrt(),
    abs: |a| a.abs(),
    powf: |a, p| a.powf(p),
};

static JET2_OPS: Ops<Jet2> = Ops {
    constant_like: |t, v| Jet2::constant(v, t.order()),
    add: |a, b| a.add(b),
    sub: |a, b| a.sub(b),
    mul: |a, b| a.mul(b),
    div: |a, b| a.div(b),
    neg: |a| a.neg(),
    sin: |a| a.sin(),
    cos: |a| a.cos(),
    tan: |a| a.tan(),
    exp: |a| a.exp(),
    ln: |a| a.ln(),
    sqrt: |a| a.sqrt(),
    abs: |a| a.abs(),
    powf: |a, p| a.powf(p),
};

fn eval_node<T: Copy>(node: &Node, env: &[T], ops: &Ops<T>) -> Result<T> {
    match node {
        Node::Const(v) => Ok((ops.constant_like)(&env[0], *v)),
        Node::Var(i) => Ok(env[*i]),
        Node::Unary(op, a) => {
            let x = eval_node(a, env, ops)?;
            match op {
                UnaryOp::Neg => Ok((ops.neg)(&x)),
                UnaryOp::Sin => Ok((ops.sin)(&x)),
                UnaryOp::Cos => Ok((ops.cos)(&x)),
                UnaryOp::Tan => (ops.tan)(&x),
                UnaryOp::Exp => Ok((ops.exp)(&x)),
                UnaryOp::Log => (ops.ln)(&x),
                UnaryOp::Sqrt => (ops.sqrt)(&x),
                UnaryOp::Abs => (ops.abs)(&x),
            }
        }
        Node::Bin(op, a, b) => {
            let x = eval_node(a, env, ops)?;
            let y = eval_node(b, env, ops)?;
            match op {
                BinOp::Add => Ok((ops.add)(&x, &y)),
                BinOp::Sub => Ok((ops.sub)(&x, &y)),
                BinOp::Mul => Ok((ops.mul)(&x, &y)),
                BinOp::Div => (ops.div)(&x, &y),
            }
        }
        Node::Pow(a, p) => {
            let x = eval_node(a, env, ops)?;
            (ops.powf)(&x, *p)
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(node: &Node, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                Node::Const(v) => {
                    if *v < 0.0 {
                        write!(f, "({v})")
                    } else {
                        write!(f, "{v}")
                    }
                }
                Node::Var(i) => write!(f, "{}", vars[*i]),
                Node::Unary(UnaryOp::Neg, a) => {
                    write!(f, "(-")?;
                    go(a, vars, f)?;
                    write!(f, ")")
                }
                Node::Unary(op, a) => {
                    let name = match op {
                        UnaryOp::Sin => "sin",
                        UnaryOp::Cos => "cos",
                        UnaryOp::Tan => "tan",
                        UnaryOp::Exp => "exp",
                        UnaryOp::Log => "log",
                        UnaryOp::Sqrt => "sqrt",
                        UnaryOp::Abs => "abs",
                        UnaryOp::Neg => unreachable!(),
                    };
                    write!(f, "{name}(")?;
                    go(a, vars, f)?;
                    write!(f, ")")
                }
                Node::Bin(op, a, b) => {
                    let sym = match op {
                        BinOp::Add => "+",
                        BinOp::Sub => "-",
                        BinOp::Mul => "*",
                        BinOp::Div => "/",
                    };
                    write!(f, "(")?;
                    go(a, vars, f)?;
                    write!(f, "{sym}")?;
                    go(b, vars, f)?;
                    write!(f, ")")
                }
                Node::Pow(a, p) => {
                    write!(f, "(")?;
                    go(a, vars, f)?;
                    if *p < 0.0 {
                        write!(f, "^({p}))")
                    } else {
                        write!(f, "^{p})")
                    }
                }
            }
        }
        go(&self.root, &self.variables, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parse_shapes() {
        let ast = parse("t^2/2", &["t"]).unwrap();
        match ast.root() {
            Node::Bin(BinOp::Div, l, r) => {
                assert!(matches!(**l, Node::Pow(_, p) if p == 2.0));
                assert!(matches!(**r, Node::Const(c) if c == 2.0));
            }
            other => panic!("unexpected shape {other:?}"),
        }
        let ast = parse("sin(t)*exp(t)", &["t"]).unwrap();
        match ast.root() {
            Node::Bin(BinOp::Mul, l, r) => {
                assert!(matches!(**l, Node::Unary(UnaryOp::Sin, _)));
                assert!(matches!(**r, Node::Unary(UnaryOp::Exp, _)));
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn caret_caret_is_error_at_offset_2() {
        match parse("t^^2", &["t"]) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_identifier_offset() {
        match parse("sin(q)", &["t"]) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unbalanced_parens() {
        assert!(matches!(parse("(t+1", &["t"]), Err(Error::Syntax { .. })));
        assert!(matches!(parse("t)", &["t"]), Err(Error::Syntax { .. })));
        assert!(matches!(parse("", &["t"]), Err(Error::Syntax { .. })));
        assert!(matches!(parse("1+*2", &["t"]), Err(Error::Syntax { .. })));
    }

    #[test]
    fn eval_jet_examples() {
        let ast = parse("t^2", &["t"]).unwrap();
        let j = ast.eval_jet("t", 3.0, 2, &[]).unwrap();
        assert_eq!(j.derivatives(), vec![9.0, 6.0, 2.0]);

        let ast = parse("sin(t)", &["t"]).unwrap();
        let j = ast.eval_jet("t", 0.0, 5, &[]).unwrap();
        let expect = [0.0, 1.0, 0.0, -1.0, 0.0, 1.0];
        for (k, e) in expect.iter().enumerate() {
            assert_relative_eq!(j.derivative(k), e, epsilon = 1e-14);
        }

        let ast = parse("exp(t)/t", &["t"]).unwrap();
        assert!(matches!(
            ast.eval_jet("t", 0.0, 1, &[]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rational_exponent() {
        let ast = parse("t^(1/3)", &["t"]).unwrap();
        let j = ast.eval_jet("t", 8.0, 1, &[]).unwrap();
        assert_relative_eq!(j.value(), 2.0, epsilon = 1e-14);
        assert_relative_eq!(j.derivative(1), 1.0 / 12.0, epsilon = 1e-14);
        // fractional power of a negative base is a domain error
        assert!(ast.eval_jet("t", -8.0, 1, &[]).is_err());
    }

    #[test]
    fn precedence_unary_minus_vs_power() {
        // -t^2 must parse as -(t^2)
        let ast = parse("-t^2", &["t"]).unwrap();
        let j = ast.eval_jet("t", 3.0, 0, &[]).unwrap();
        assert_relative_eq!(j.value(), -9.0);
    }

    #[test]
    fn frozen_variables() {
        let ast = parse("u*v^2", &["u", "v"]).unwrap();
        let j = ast.eval_jet("u", 2.0, 1, &[("v", 3.0)]).unwrap();
        assert_relative_eq!(j.value(), 18.0);
        assert_relative_eq!(j.derivative(1), 9.0);
    }

    #[test]
    fn print_reparse_roundtrip() {
        let srcs = [
            "t^2/2",
            "sin(t)*exp(t)+1",
            "-t^2 + 3*t - 4/(t+5)",
            "sqrt(abs(t))*log(t+2)",
            "t^(1/3) - 2e-3*t",
        ];
        for s in srcs {
            let a = parse(s, &["t"]).unwrap();
            let printed = a.to_string();
            let b = parse(&printed, &["t"]).unwrap();
            assert_eq!(a, b, "round trip failed for {s} -> {printed}");
        }
    }
}
