use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(u64),
    Eq,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Slash,
    DotDot,
    Plus,
    Minus,
    Star,
    Caret,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ident(s) => write!(f, "`{s}`"),
            Self::Int(n) => write!(f, "`{n}`"),
            Self::Eq => f.write_str("`=`"),
            Self::LBracket => f.write_str("`[`"),
            Self::RBracket => f.write_str("`]`"),
            Self::LParen => f.write_str("`(`"),
            Self::RParen => f.write_str("`)`"),
            Self::Comma => f.write_str("`,`"),
            Self::Semi => f.write_str("`;`"),
            Self::Slash => f.write_str("`/`"),
            Self::DotDot => f.write_str("`..`"),
            Self::Plus => f.write_str("`+`"),
            Self::Minus => f.write_str("`-`"),
            Self::Star => f.write_str("`*`"),
            Self::Caret => f.write_str("`^`"),
        }
    }
}

/// Byte span and 1-based line and column of a token's start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

/// A syntax or name-resolution error with its source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Line and column of a byte offset.
pub fn position(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let err = |offset: usize, message: String| {
        let (line, col) = position(src, offset);
        ParseError { line, col, message }
    };
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        let (kind, end) = if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    end = j + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            (TokenKind::Ident(src[i..end].to_string()), end)
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    end = j + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            let n = src[i..end]
                .parse::<u64>()
                .map_err(|_| err(i, format!("integer `{}` is too large", &src[i..end])))?;
            (TokenKind::Int(n), end)
        } else {
            chars.next();
            let kind = match c {
                '=' => TokenKind::Eq,
                '[' => TokenKind::LBracket,
                ']' => TokenKind::RBracket,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                ',' => TokenKind::Comma,
                ';' => TokenKind::Semi,
                '/' => TokenKind::Slash,
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '^' => TokenKind::Caret,
                '.' if chars.peek().is_some_and(|&(_, c)| c == '.') => {
                    chars.next();
                    let (line, col) = position(src, i);
                    out.push(Token {
                        kind: TokenKind::DotDot,
                        start: i,
                        end: i + 2,
                        line,
                        col,
                    });
                    continue;
                }
                other => return Err(err(i, format!("unexpected character `{other}`"))),
            };
            (kind, i + c.len_utf8())
        };
        let (line, col) = position(src, i);
        out.push(Token {
            kind,
            start: i,
            end,
            line,
            col,
        });
    }
    Ok(out)
}
