#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Keyword {
    And,
    Or,
    Not,
    Same,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    LParen,
    RParen,
    Eq,
    Keyword(Keyword),
    /// Normalized (lowercased, punctuation-stripped) word.
    Word(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    /// Byte offset in the query text.
    pub pos: usize,
}

/// Characters dropped from words, matching address normalization.
pub(crate) fn is_stripped(c: char) -> bool {
    matches!(c, ',' | '.')
}

pub(crate) fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '=' => TokenKind::Eq,
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            _ => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '=') {
                        break;
                    }
                    if !is_stripped(c) {
                        word.extend(c.to_lowercase());
                    }
                    chars.next();
                }
                if word.is_empty() {
                    continue;
                }
                let kind = match word.as_str() {
                    "and" => TokenKind::Keyword(Keyword::And),
                    "or" => TokenKind::Keyword(Keyword::Or),
                    "not" => TokenKind::Keyword(Keyword::Not),
                    "same" => TokenKind::Keyword(Keyword::Same),
                    _ => TokenKind::Word(word),
                };
                tokens.push(Token { kind, pos });
                continue;
            }
        };
        chars.next();
        tokens.push(Token { kind, pos });
    }
    tokens
}
