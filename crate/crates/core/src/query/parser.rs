//! Recursive-descent parser for the query language.
//!
//! ```text
//! query    := "select" proj "from" IDENT "where" or_expr
//! proj     := "*" | IDENT {"," IDENT}
//! or_expr  := and_expr {"or" and_expr}
//! and_expr := pred {"and" pred}
//! pred     := IDENT ["(" ")"] ("=" | ">=") (STRING | NUMBER) | "(" or_expr ")"
//! ```
//!
//! Keywords are case-insensitive. Strings use double or single quotes with
//! backslash escapes.

use std::fmt;

use thiserror::Error;

use super::ast::{
    AttrPredicate, CompareOp, Condition, MethodPredicate, Operand, Projection, QueryAst,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct SyntaxError {
    /// Character offset into the query text.
    pub position: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }

    /// The query with a caret under the offending position.
    pub fn render(&self, query: &str) -> String {
        format!("{query}\n{}^ {}", " ".repeat(self.position), self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Number(f64),
    Star,
    Comma,
    LParen,
    RParen,
    Eq,
    Ge,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Number(x) => write!(f, "number {x}"),
            Tok::Star => f.write_str("`*`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Ge => f.write_str("`>=`"),
            Tok::Eof => f.write_str("end of query"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, start));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Eq, start));
                i += 1;
            }
            '>' if chars.get(i + 1) == Some(&'=') => {
                toks.push((Tok::Ge, start));
                i += 2;
            }
            '"' | '\'' => {
                let quote = c;
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(SyntaxError::new(start, "unterminated string")),
                        Some(&'\\') => {
                            match chars.get(i + 1) {
                                Some(&e) => s.push(e),
                                None => return Err(SyntaxError::new(start, "unterminated string")),
                            }
                            i += 2;
                        }
                        Some(&q) if q == quote => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                toks.push((Tok::Str(s), start));
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                i += 1;
                while i < chars.len()
                    && (chars[i].is_ascii_digit()
                        || chars[i] == '.'
                        || chars[i] == 'e'
                        || chars[i] == 'E'
                        || ((chars[i] == '-' || chars[i] == '+')
                            && matches!(chars[i - 1], 'e' | 'E')))
                {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let x: f64 = s
                    .parse()
                    .map_err(|_| SyntaxError::new(start, format!("invalid number `{s}`")))?;
                if !x.is_finite() {
                    return Err(SyntaxError::new(start, format!("invalid number `{s}`")));
                }
                toks.push((Tok::Number(x), start));
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '-')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
            }
            other => {
                return Err(SyntaxError::new(
                    start,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    toks.push((Tok::Eof, chars.len()));
    Ok(toks)
}

const KEYWORDS: [&str; 5] = ["select", "from", "where", "and", "or"];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.iter().any(|k| k.eq_ignore_ascii_case(s))
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> SyntaxError {
        SyntaxError::new(
            self.pos(),
            format!("expected {expected}, found {}", self.peek()),
        )
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s.eq_ignore_ascii_case(kw))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.at_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), SyntaxError> {
        match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => {
                let s = s.clone();
                let (_, pos) = self.bump();
                Ok((s, pos))
            }
            _ => Err(self.error(what)),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn query(&mut self) -> Result<QueryAst, SyntaxError> {
        self.keyword("select")?;
        let projection = if *self.peek() == Tok::Star {
            self.bump();
            Projection::All
        } else {
            let mut names = vec![self.ident("`*` or an attribute name")?.0];
            while *self.peek() == Tok::Comma {
                self.bump();
                names.push(self.ident("an attribute name")?.0);
            }
            Projection::Names(names)
        };
        self.keyword("from")?;
        let (class, _) = self.ident("a class name")?;
        self.keyword("where")?;
        let condition = self.or_expr()?;
        if *self.peek() != Tok::Eof {
            return Err(self.error("`and`, `or` or end of query"));
        }
        Ok(QueryAst {
            projection,
            class,
            condition,
        })
    }

    fn or_expr(&mut self) -> Result<Condition, SyntaxError> {
        let mut terms = vec![self.and_expr()?];
        while self.at_keyword("or") {
            self.bump();
            terms.push(self.and_expr()?);
        }
        Ok(flatten(terms, Condition::Or))
    }

    fn and_expr(&mut self) -> Result<Condition, SyntaxError> {
        let mut terms = vec![self.pred()?];
        while self.at_keyword("and") {
            self.bump();
            terms.push(self.pred()?);
        }
        Ok(flatten(terms, Condition::And))
    }

    fn pred(&mut self) -> Result<Condition, SyntaxError> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let inner = self.or_expr()?;
            self.expect(Tok::RParen)?;
            return Ok(inner);
        }
        let (name, position) = self.ident("a condition")?;
        let is_method = *self.peek() == Tok::LParen;
        if is_method {
            self.bump();
            self.expect(Tok::RParen)?;
        }
        let op_pos = self.pos();
        let op = match self.peek() {
            Tok::Eq => CompareOp::EqK,
            Tok::Ge => CompareOp::GeK,
            _ => return Err(self.error("`=` or `>=`")),
        };
        self.bump();
        let rhs_pos = self.pos();
        let rhs = match self.peek().clone() {
            Tok::Str(s) => Operand::Term(s),
            Tok::Number(x) => Operand::Number(x),
            _ => return Err(self.error("a quoted term or a number")),
        };
        self.bump();

        if is_method {
            if op == CompareOp::GeK {
                return Err(SyntaxError::new(
                    op_pos,
                    "method conditions only support `=`",
                ));
            }
            let Operand::Term(term) = rhs else {
                return Err(SyntaxError::new(
                    rhs_pos,
                    "method conditions take a quoted term",
                ));
            };
            return Ok(Condition::Method(MethodPredicate {
                method: name,
                term,
                position,
            }));
        }
        Ok(Condition::Attr(AttrPredicate {
            attribute: name,
            op,
            rhs,
            position,
        }))
    }
}

/// Merge same-kind children so `a or (b or c)` becomes one three-way `Or`.
fn flatten(terms: Vec<Condition>, make: fn(Vec<Condition>) -> Condition) -> Condition {
    if terms.len() == 1 {
        return terms.into_iter().next().unwrap();
    }
    let probe = make(Vec::new());
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        match (&probe, t) {
            (Condition::And(_), Condition::And(cs)) | (Condition::Or(_), Condition::Or(cs)) => {
                out.extend(cs)
            }
            (_, t) => out.push(t),
        }
    }
    make(out)
}

/// Parse query text into an AST.
pub fn parse_query(text: &str) -> Result<QueryAst, SyntaxError> {
    let toks = lex(text)?;
    Parser { toks, at: 0 }.query()
}
