//! Recursive-descent parser for model expressions.
//!
//! ```text
//! model  := term { "#" term }
//! term   := bundle | blowup | flip | cn | "(" model ")"
//! bundle := "O(-" INT ")" [ "^" INT ] "->" "P^" INT
//! blowup := "Bl(" INT "," model ")"
//! flip   := "flip(" model "," INT "," INT ")"
//! cn     := "C^" INT
//! ```

use std::fmt;

use thiserror::Error;

use crate::geometry::{BundleModel, ModelExpr};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u32),
    LParen,
    RParen,
    Comma,
    Hash,
    Caret,
    Minus,
    Arrow,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Hash => f.write_str("'#'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let err = |message: String| ParseError { line: l, column: col, message };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            _ if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '#' => Tok::Hash,
            '^' => Tok::Caret,
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push(Spanned { tok: Tok::Arrow, line: l, column: col });
                } else {
                    out.push(Spanned { tok: Tok::Minus, line: l, column: col });
                }
                continue;
            }
            _ if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    bump(&mut chars);
                }
                let n = digits.parse().map_err(|_| err(format!("integer {digits} is too large")))?;
                out.push(Spanned { tok: Tok::Int(n), line: l, column: col });
                continue;
            }
            _ if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_alphabetic() {
                        break;
                    }
                    word.push(d);
                    bump(&mut chars);
                }
                out.push(Spanned { tok: Tok::Ident(word), line: l, column: col });
                continue;
            }
            _ => return Err(err(format!("unexpected character '{c}'"))),
        };
        bump(&mut chars);
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Spanned, message: String) -> ParseError {
        ParseError { line: t.line, column: t.column, message }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(())
        } else {
            Err(self.error_at(&t, format!("expected {want}, found {}", t.tok)))
        }
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(*n),
            other => Err(self.error_at(&t, format!("expected an integer, found {other}"))),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        self.expect(Tok::Ident(word.to_string()))
    }

    fn model(&mut self) -> Result<ModelExpr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.peek().tok == Tok::Hash {
            self.next();
            terms.push(self.term()?);
        }
        let last = terms.pop().expect("at least one term");
        Ok(terms.into_iter().rev().fold(last, |acc, t| ModelExpr::conn_sum(t, acc)))
    }

    fn term(&mut self) -> Result<ModelExpr, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::LParen => {
                self.next();
                let m = self.model()?;
                self.expect(Tok::RParen)?;
                Ok(m)
            }
            Tok::Ident(w) if w == "O" => self.bundle(),
            Tok::Ident(w) if w == "Bl" => {
                self.next();
                self.expect(Tok::LParen)?;
                let count = self.int()?;
                self.expect(Tok::Comma)?;
                let child = self.model()?;
                self.expect(Tok::RParen)?;
                Ok(ModelExpr::blowup(count, child))
            }
            Tok::Ident(w) if w == "flip" => {
                self.next();
                self.expect(Tok::LParen)?;
                let child = self.model()?;
                self.expect(Tok::Comma)?;
                let n1 = self.int()?;
                self.expect(Tok::Comma)?;
                let n2 = self.int()?;
                self.expect(Tok::RParen)?;
                Ok(ModelExpr::flip(child, n1, n2))
            }
            Tok::Ident(w) if w == "C" => {
                self.next();
                self.expect(Tok::Caret)?;
                Ok(ModelExpr::Cn(self.int()?))
            }
            other => Err(self.error_at(
                &t,
                format!("expected a bundle, 'Bl', 'flip', 'C^n' or '(', found {other}"),
            )),
        }
    }

    fn bundle(&mut self) -> Result<ModelExpr, ParseError> {
        self.keyword("O")?;
        self.expect(Tok::LParen)?;
        self.expect(Tok::Minus)?;
        let m = self.int()?;
        self.expect(Tok::RParen)?;
        let n1 = if self.peek().tok == Tok::Caret {
            self.next();
            self.int()?
        } else {
            1
        };
        self.expect(Tok::Arrow)?;
        self.keyword("P")?;
        self.expect(Tok::Caret)?;
        let n2 = self.int()?;
        // range checks happen during validation so they surface as domain errors
        Ok(ModelExpr::Bundle(BundleModel { m, n1, n2 }))
    }
}

/// Parses the surface syntax without validating parameters.
pub fn parse_syntax(text: &str) -> Result<ModelExpr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    if p.peek().tok == Tok::End {
        return Err(p.error_at(p.peek(), "empty model expression".into()));
    }
    let m = p.model()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.error_at(&t, format!("unexpected {} after complete expression", t.tok)));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_syntax("O(-1)^2 -> P^3").unwrap(), ModelExpr::bundle(1, 2, 3).unwrap());
        assert_eq!(parse_syntax("Bl(3, C^2)").unwrap(), ModelExpr::blowup(3, ModelExpr::Cn(2)));
        assert_eq!(
            parse_syntax("(O(-1) -> P^2) # flip(C^3, 1, 2)").unwrap(),
            ModelExpr::conn_sum(ModelExpr::bundle(1, 1, 2).unwrap(), ModelExpr::flip(ModelExpr::Cn(3), 1, 2))
        );
        assert_eq!(parse_syntax(" O ( - 2 )->P^ 2").unwrap(), ModelExpr::bundle(2, 1, 2).unwrap());
    }

    #[test]
    fn hash_is_right_associative() {
        let e = parse_syntax("C^2 # C^2 # Bl(1, C^2)").unwrap();
        let ModelExpr::ConnSum(a, rest) = e else { panic!("not a sum") };
        assert_eq!(*a, ModelExpr::Cn(2));
        assert!(matches!(*rest, ModelExpr::ConnSum(..)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_syntax("O(-1) -> Q^2").unwrap_err();
        assert_eq!((e.line, e.column), (1, 10));
        let e = parse_syntax("Bl(2,\n  C^2").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
        assert!(e.message.contains("')'"));
        let e = parse_syntax("C^2 $").unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse_syntax("   ").is_err());
        assert!(parse_syntax("C^99999999999").is_err());
    }
}
