use std::fmt;

use super::ast::Pos;
use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Colon,
    Comma,
    LParen,
    RParen,
    Prime,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Arrow,
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Ne,
    Plus,
    Minus,
    Star,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Num(n) => return write!(f, "`{n}`"),
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Prime => "'",
            Tok::Not => "~",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Implies => "=>",
            Tok::Iff => "<=>",
            Tok::Arrow => "->",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Le => "<=",
            Tok::Ge => ">=",
            Tok::Eq => "=",
            Tok::Ne => "!=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Whether whitespace or a comment separates this token from the previous one.
    pub spaced: bool,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    let mut spaced = true;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos::new(line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            spaced = true;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            spaced = true;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            spaced = true;
            continue;
        }
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut u32| {
            out.push(Token { tok, pos, spaced });
            *i += len;
            *col += len as u32;
        };
        let rest = |k: usize| chars.get(i + k).copied();
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Ident(word),
                pos,
                spaced,
            });
            col += (i - start) as u32;
            spaced = false;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse::<u64>()
                .map_err(|_| ParseError::new(pos, format!("number `{text}` is too large")))?;
            out.push(Token {
                tok: Tok::Num(n),
                pos,
                spaced,
            });
            col += (i - start) as u32;
            spaced = false;
            continue;
        }
        let (tok, len) = match (c, rest(1), rest(2)) {
            ('<', Some('='), Some('>')) => (Tok::Iff, 3),
            ('<', Some('='), _) => (Tok::Le, 2),
            ('<', _, _) => (Tok::Lt, 1),
            ('>', Some('='), _) => (Tok::Ge, 2),
            ('>', _, _) => (Tok::Gt, 1),
            ('=', Some('>'), _) => (Tok::Implies, 2),
            ('=', _, _) => (Tok::Eq, 1),
            ('!', Some('='), _) => (Tok::Ne, 2),
            ('-', Some('>'), _) => (Tok::Arrow, 2),
            ('-', _, _) => (Tok::Minus, 1),
            ('/', Some('\\'), _) => (Tok::And, 2),
            ('/', _, _) => (Tok::Slash, 1),
            ('\\', Some('/'), _) => (Tok::Or, 2),
            ('~', _, _) | ('¬', _, _) => (Tok::Not, 1),
            ('∧', _, _) => (Tok::And, 1),
            ('∨', _, _) => (Tok::Or, 1),
            ('⇒', _, _) => (Tok::Implies, 1),
            ('⇔', _, _) => (Tok::Iff, 1),
            ('→', _, _) => (Tok::Arrow, 1),
            ('≤', _, _) => (Tok::Le, 1),
            ('≥', _, _) => (Tok::Ge, 1),
            ('≠', _, _) => (Tok::Ne, 1),
            ('+', _, _) => (Tok::Plus, 1),
            ('*', _, _) => (Tok::Star, 1),
            (':', _, _) => (Tok::Colon, 1),
            (',', _, _) => (Tok::Comma, 1),
            ('(', _, _) => (Tok::LParen, 1),
            (')', _, _) => (Tok::RParen, 1),
            ('\'', _, _) | ('’', _, _) => (Tok::Prime, 1),
            _ => return Err(ParseError::new(pos, format!("unexpected character `{c}`"))),
        };
        push(tok, len, &mut i, &mut col);
        spaced = false;
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos::new(line, col),
        spaced: true,
    });
    Ok(out)
}
