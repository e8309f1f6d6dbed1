//! Recursive-descent parser for the shared formula syntax.
//!
//! `~ & | ->` with the usual precedence (`->` right-associative),
//! quantifiers `A x0.` / `E X1.` extending as far right as possible,
//! atoms `x0 < x1`, `x0 = x1`, `x0 <= x1`, `S(x0)`, `p0 in x0`,
//! `x0 in X0`. The requested language tag is checked after parsing.

use super::{check_language, Formula, FormulaError, LanguageTag, Sort, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Var(Var),
    KwA,
    KwE,
    KwS,
    KwIn,
    Less,
    LessEq,
    Eq,
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    Dot,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    toks: Vec<(usize, Tok)>,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, FormulaError> {
    let mut l = Lexer { src: src.as_bytes(), pos: 0, toks: Vec::new() };
    while l.pos < l.src.len() {
        let c = l.src[l.pos];
        let start = l.pos;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                l.pos += 1;
                continue;
            }
            b'(' => l.push1(Tok::LParen),
            b')' => l.push1(Tok::RParen),
            b'.' => l.push1(Tok::Dot),
            b'~' => l.push1(Tok::Not),
            b'&' => l.push1(Tok::And),
            b'|' => l.push1(Tok::Or),
            b'=' => l.push1(Tok::Eq),
            b'<' => {
                if l.src.get(l.pos + 1) == Some(&b'=') {
                    l.pos += 2;
                    l.toks.push((start, Tok::LessEq));
                } else {
                    l.push1(Tok::Less);
                }
            }
            b'-' => {
                if l.src.get(l.pos + 1) == Some(&b'>') {
                    l.pos += 2;
                    l.toks.push((start, Tok::Implies));
                } else {
                    return Err(FormulaError::Parse { pos: start, msg: "expected '->'".into() });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = l.pos + 1;
                while end < l.src.len() && l.src[end].is_ascii_alphanumeric() {
                    end += 1;
                }
                let word = std::str::from_utf8(&l.src[l.pos..end]).unwrap();
                let tok = match word {
                    "A" => Tok::KwA,
                    "E" => Tok::KwE,
                    "S" => Tok::KwS,
                    "in" => Tok::KwIn,
                    _ => Tok::Var(parse_var(word).ok_or_else(|| FormulaError::Parse {
                        pos: start,
                        msg: format!("unknown identifier '{word}'"),
                    })?),
                };
                l.pos = end;
                l.toks.push((start, tok));
            }
            _ => {
                return Err(FormulaError::Parse {
                    pos: start,
                    msg: format!("unexpected character '{}'", c as char),
                })
            }
        }
    }
    Ok(l.toks)
}

impl Lexer<'_> {
    fn push1(&mut self, t: Tok) {
        self.toks.push((self.pos, t));
        self.pos += 1;
    }
}

fn parse_var(word: &str) -> Option<Var> {
    let (sort, rest) = match word.as_bytes()[0] {
        b'x' => (Sort::Ind, &word[1..]),
        b'p' => (Sort::Ur, &word[1..]),
        b'X' => (Sort::Set, &word[1..]),
        _ => return None,
    };
    if rest.is_empty() || !rest.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse::<u32>().ok().map(|index| Var { sort, index })
}

struct P {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl P {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), FormulaError> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    // implies := or ('->' implies)?
    fn implies(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.at += 1;
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::KwA) | Some(Tok::KwE) => {
                let universal = self.peek() == Some(&Tok::KwA);
                self.at += 1;
                let v = match self.bump() {
                    Some(Tok::Var(v)) => v,
                    _ => return self.err("expected a variable after quantifier"),
                };
                self.expect(Tok::Dot, "'.' after quantified variable")?;
                let body = self.implies()?;
                Ok(if universal { Formula::forall(v, body) } else { Formula::exists(v, body) })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.implies()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::KwS) => {
                self.at += 1;
                self.expect(Tok::LParen, "'(' after S")?;
                let v = match self.bump() {
                    Some(Tok::Var(v)) => v,
                    _ => return self.err("expected a variable in S(..)"),
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(Formula::S(v))
            }
            Some(Tok::Var(_)) => self.atom(),
            _ => self.err("expected a formula"),
        }
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        let a = match self.bump() {
            Some(Tok::Var(v)) => v,
            _ => return self.err("expected a variable"),
        };
        let op = self.bump();
        let b = match self.bump() {
            Some(Tok::Var(v)) => v,
            _ => return self.err("expected a variable on the right of the atom"),
        };
        let mk = |f: Formula| -> Result<Formula, FormulaError> { Ok(f) };
        match op {
            Some(Tok::Less) => {
                if a.sort == Sort::Ind && b.sort == Sort::Ind {
                    mk(Formula::Less(a, b))
                } else {
                    Err(FormulaError::Sort(format!("{a} < {b}: '<' takes individual variables")))
                }
            }
            Some(Tok::LessEq) => {
                if a.sort == Sort::Ind && b.sort == Sort::Ind {
                    mk(Formula::Subeq(a, b))
                } else {
                    Err(FormulaError::Sort(format!("{a} <= {b}: '<=' takes individual variables")))
                }
            }
            Some(Tok::Eq) => match (a.sort, b.sort) {
                (Sort::Ind, Sort::Ind) => mk(Formula::Eq(a, b)),
                (Sort::Ur, Sort::Ur) => mk(Formula::UrEq(a, b)),
                _ => Err(FormulaError::Sort(format!("{a} = {b}: mismatched sorts"))),
            },
            Some(Tok::KwIn) => match (a.sort, b.sort) {
                (Sort::Ur, Sort::Ind) => mk(Formula::UrIn(a, b)),
                (Sort::Ind, Sort::Set) => mk(Formula::In(a, b)),
                _ => Err(FormulaError::Sort(format!("{a} in {b}: mismatched sorts"))),
            },
            _ => self.err("expected '<', '<=', '=' or 'in'"),
        }
    }
}

/// Parse `text` and check it against `tag`.
pub fn parse(text: &str, tag: LanguageTag) -> Result<Formula, FormulaError> {
    let toks = lex(text)?;
    let mut p = P { toks, at: 0, end: text.len() };
    let f = p.implies()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    check_language(&f, tag)?;
    Ok(f)
}
