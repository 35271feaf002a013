//! Recursive-descent parser for address queries.
//!
//! ```text
//! query   := or
//! or      := and  ("or"  and)*
//! and     := same ("and" same)*
//! same    := not  ("same" not)*        only inside ad=( ... )
//! not     := primary ("not" primary)*
//! primary := "(" or ")"
//!          | field "=" "(" or ")"      field: ad | py
//!          | "py" "=" YEAR
//!          | "ad" "=" WORD
//!          | WORD+                     phrase (ad scope) or YEAR (py scope)
//! ```
//!
//! Binding strength NOT > SAME > AND > OR; all binary operators are left-associative.

use thiserror::Error;

use super::ast::{Field, Query};
use super::lexer::{tokenize, Keyword, Token, TokenKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at offset {pos}: {message}")]
pub struct SyntaxError {
    pub pos: usize,
    pub message: String,
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
}

pub fn parse_query(text: &str) -> Result<Query, SyntaxError> {
    let mut parser = Parser { tokens: tokenize(text), at: 0, end: text.len() };
    if parser.tokens.is_empty() {
        return Err(SyntaxError { pos: 0, message: "empty query".into() });
    }
    let query = parser.or(None)?;
    if let Some(tok) = parser.peek() {
        let message = match tok.kind {
            TokenKind::RParen => "unbalanced ')'".to_string(),
            _ => "unexpected trailing input".to_string(),
        };
        return Err(parser.error_at(tok.pos, message));
    }
    Ok(query)
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn peek_kind(&self, offset: usize) -> Option<&TokenKind> {
        self.tokens.get(self.at + offset).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError { pos, message: message.into() }
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        if self.peek_kind(0) == Some(&TokenKind::Keyword(kw)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self, scope: Option<Field>) -> Result<Query, SyntaxError> {
        let mut left = self.and(scope)?;
        while self.eat_keyword(Keyword::Or) {
            left = Query::or(left, self.and(scope)?);
        }
        Ok(left)
    }

    fn and(&mut self, scope: Option<Field>) -> Result<Query, SyntaxError> {
        let mut left = self.same(scope)?;
        while self.eat_keyword(Keyword::And) {
            left = Query::and(left, self.same(scope)?);
        }
        Ok(left)
    }

    fn same(&mut self, scope: Option<Field>) -> Result<Query, SyntaxError> {
        let mut left = self.not(scope)?;
        loop {
            let pos = self.pos();
            if !self.eat_keyword(Keyword::Same) {
                return Ok(left);
            }
            if scope != Some(Field::Ad) {
                return Err(self.error_at(pos, "SAME is only valid inside ad=( ... )"));
            }
            left = Query::same(left, self.not(scope)?);
        }
    }

    fn not(&mut self, scope: Option<Field>) -> Result<Query, SyntaxError> {
        let mut left = self.primary(scope)?;
        while self.eat_keyword(Keyword::Not) {
            left = Query::not(left, self.primary(scope)?);
        }
        Ok(left)
    }

    fn primary(&mut self, scope: Option<Field>) -> Result<Query, SyntaxError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error_at(self.end, "unexpected end of query"));
        };
        match tok.kind {
            TokenKind::LParen => {
                self.at += 1;
                let inner = self.or(scope)?;
                if self.peek_kind(0) != Some(&TokenKind::RParen) {
                    return Err(self.error_at(tok.pos, "unbalanced '('"));
                }
                self.at += 1;
                Ok(inner)
            }
            TokenKind::Word(ref word) if self.peek_kind(1) == Some(&TokenKind::Eq) => {
                if scope.is_some() {
                    return Err(self.error_at(tok.pos, "field tags cannot be nested"));
                }
                let field = match word.as_str() {
                    "ad" => Field::Ad,
                    "py" => Field::Py,
                    other => return Err(self.error_at(tok.pos, format!("unknown field tag {other:?}"))),
                };
                self.at += 2;
                self.scoped(field)
            }
            TokenKind::Word(_) => match scope {
                None => Err(self.error_at(tok.pos, "search term outside a field scope")),
                Some(Field::Py) => self.year(),
                Some(Field::Ad) => self.phrase(),
            },
            TokenKind::Keyword(kw) => Err(self.error_at(tok.pos, format!("dangling operator {kw:?}"))),
            TokenKind::RParen => Err(self.error_at(tok.pos, "missing operand before ')'")),
            TokenKind::Eq => Err(self.error_at(tok.pos, "'=' without a field tag")),
        }
    }

    fn scoped(&mut self, field: Field) -> Result<Query, SyntaxError> {
        match self.peek_kind(0) {
            Some(TokenKind::LParen) => {
                let open = self.pos();
                self.at += 1;
                let expr = self.or(Some(field))?;
                if self.peek_kind(0) != Some(&TokenKind::RParen) {
                    return Err(self.error_at(open, "unbalanced '('"));
                }
                self.at += 1;
                Ok(Query::scope(field, expr))
            }
            Some(TokenKind::Word(_)) => match field {
                Field::Py => self.year(),
                Field::Ad => {
                    let pos = self.pos();
                    let Some(TokenKind::Word(word)) = self.peek_kind(0).cloned() else { unreachable!() };
                    self.at += 1;
                    if matches!(self.peek_kind(0), Some(TokenKind::Word(_))) {
                        return Err(self.error_at(pos, "multi-word ad value needs parentheses"));
                    }
                    Ok(Query::scope(Field::Ad, Query::Phrase(vec![word])))
                }
            },
            _ => Err(self.error_at(self.pos(), format!("expected a value after {}=", field.tag()))),
        }
    }

    fn year(&mut self) -> Result<Query, SyntaxError> {
        let pos = self.pos();
        let Some(TokenKind::Word(word)) = self.peek_kind(0).cloned() else {
            return Err(self.error_at(pos, "expected a year"));
        };
        let year = word
            .parse::<i32>()
            .ok()
            .filter(|y| *y > 0)
            .ok_or_else(|| self.error_at(pos, format!("invalid year {word:?}")))?;
        self.at += 1;
        if matches!(self.peek_kind(0), Some(TokenKind::Word(_))) {
            return Err(self.error_at(self.pos(), "expected an operator after the year"));
        }
        Ok(Query::YearEquals(year))
    }

    fn phrase(&mut self) -> Result<Query, SyntaxError> {
        let mut tokens = Vec::new();
        while let Some(TokenKind::Word(word)) = self.peek_kind(0) {
            if self.peek_kind(1) == Some(&TokenKind::Eq) {
                return Err(self.error_at(self.pos(), "field tags cannot be nested"));
            }
            tokens.push(word.clone());
            self.at += 1;
        }
        Ok(Query::Phrase(tokens))
    }
}
