use std::fmt;

use super::{Pos, SyntaxError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tok {
    Backslash,
    Colon,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Star,
    At,
    Num(u64),
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Backslash => f.write_str("`\\`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::At => f.write_str("`@`"),
            Tok::Num(n) => write!(f, "numeral `{n}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits `src` into tokens. `--` starts a comment running to the end of the line.
pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        let tok = match c {
            '\\' | 'λ' => {
                bump!();
                Tok::Backslash
            }
            ':' => {
                bump!();
                Tok::Colon
            }
            '(' => {
                bump!();
                Tok::LParen
            }
            ')' => {
                bump!();
                Tok::RParen
            }
            '[' => {
                bump!();
                Tok::LBracket
            }
            ']' => {
                bump!();
                Tok::RBracket
            }
            ',' => {
                bump!();
                Tok::Comma
            }
            '+' => {
                bump!();
                Tok::Plus
            }
            '*' => {
                bump!();
                Tok::Star
            }
            '@' => {
                bump!();
                Tok::At
            }
            '-' => {
                bump!();
                match chars.peek() {
                    Some('>') => {
                        bump!();
                        Tok::Arrow
                    }
                    Some('-') => {
                        while let Some(&c) = chars.peek() {
                            if c == '\n' {
                                break;
                            }
                            bump!();
                        }
                        continue;
                    }
                    _ => return Err(SyntaxError::new(pos, "expected `->` or `--` after `-`")),
                }
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    bump!();
                }
                let n = digits.parse().map_err(|_| {
                    SyntaxError::new(pos, format!("numeral `{digits}` is too large"))
                })?;
                Tok::Num(n)
            }
            c if is_ident_start(c) => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if !is_ident_char(d) {
                        break;
                    }
                    name.push(d);
                    bump!();
                }
                Tok::Ident(name)
            }
            other => {
                return Err(SyntaxError::new(
                    pos,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}
