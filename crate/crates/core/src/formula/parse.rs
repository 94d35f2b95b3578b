//! Precedence-climbing parser for the formula grammar.
//!
//! ```text
//! formula := implies
//! implies := or ( "->" implies )?          right associative
//! or      := and ( "|" and )*              left associative
//! and     := unary ( "&" unary )*          left associative
//! unary   := "!" unary | "(" formula ")" | identifier
//! ```
//!
//! `¬ ∧ ∨ →` are accepted as aliases. Positions are character offsets.

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token `{ch}` at position {position}")]
    UnknownToken { position: usize, ch: char },
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax { position: usize, expected: &'static str, found: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnknownToken { position, .. } | ParseError::Syntax { position, .. } => {
                *position
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("`{name}`"),
            Token::Not => "`!`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' | '¬' => Token::Not,
            '&' | '∧' => Token::And,
            '|' | '∨' => Token::Or,
            '→' => Token::Implies,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Token::Implies
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                Token::Ident(chars[start..=i].iter().collect())
            }
            ch => return Err(ParseError::UnknownToken { position: start, ch }),
        };
        tokens.push((start, token));
        i += 1;
    }
    tokens.push((chars.len(), Token::End));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (usize, Token) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let (position, token) = &self.tokens[self.pos];
        ParseError::Syntax { position: *position, expected, found: token.describe() }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Token::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Token::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Token::LParen => {
                self.bump();
                let inner = self.implies()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            Token::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            _ => Err(self.error("an atom, `!` or `(`")),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser { tokens: tokenize(text)?, pos: 0 };
    let formula = parser.implies()?;
    if *parser.peek() != Token::End {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(formula)
}
