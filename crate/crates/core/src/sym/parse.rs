use super::{neg_type, Side, SymContext, SymTerm, SymType};
use crate::lexer::{Cursor, ParseError, Tok};

const KEYWORDS: &[&str] = &["inl", "inr"];

pub fn parse_sym_type(src: &str) -> Result<SymType, ParseError> {
    let mut cur = Cursor::new(src, true)?;
    let t = sym_type(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

/// Parses a term; names with the reserved `!` prefix are rejected.
pub fn parse_sym_term(src: &str) -> Result<SymTerm, ParseError> {
    parse_sym_term_with(src, false)
}

pub fn parse_sym_term_with(src: &str, allow_reserved: bool) -> Result<SymTerm, ParseError> {
    let mut cur = Cursor::new(src, allow_reserved)?;
    let t = sym_term(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

/// Parses `x:A, y:B, ...` (possibly empty).
pub fn parse_sym_context(src: &str) -> Result<SymContext, ParseError> {
    let mut cur = Cursor::new(src, true)?;
    let mut ctx = SymContext::new();
    if *cur.peek() == Tok::Eof {
        return Ok(ctx);
    }
    loop {
        let off = cur.offset();
        let x = cur.ident(KEYWORDS)?;
        cur.expect(Tok::Colon)?;
        let t = sym_type(&mut cur)?;
        if ctx.insert(x.clone(), t).is_some() {
            return Err(ParseError::at(src, off, format!("`{x}` is bound twice")));
        }
        if *cur.peek() != Tok::Comma {
            break;
        }
        cur.bump();
    }
    cur.finish()?;
    Ok(ctx)
}

pub(crate) fn sym_type(cur: &mut Cursor) -> Result<SymType, ParseError> {
    let left = and_type(cur)?;
    if *cur.peek() == Tok::Or {
        cur.bump();
        Ok(SymType::or(left, sym_type(cur)?))
    } else {
        Ok(left)
    }
}

fn and_type(cur: &mut Cursor) -> Result<SymType, ParseError> {
    let left = atomic_type(cur)?;
    if *cur.peek() == Tok::And {
        cur.bump();
        Ok(SymType::and(left, and_type(cur)?))
    } else {
        Ok(left)
    }
}

fn atomic_type(cur: &mut Cursor) -> Result<SymType, ParseError> {
    match cur.peek().clone() {
        Tok::Hash => {
            cur.bump();
            Ok(SymType::Bottom)
        }
        Tok::Tilde => {
            let off = cur.offset();
            cur.bump();
            let inner = atomic_type(cur)?;
            neg_type(&inner).map_err(|e| ParseError::at(cur.src, off, e.to_string()))
        }
        Tok::LParen => {
            cur.bump();
            let t = sym_type(cur)?;
            cur.expect(Tok::RParen)?;
            Ok(t)
        }
        Tok::Ident(_) => Ok(SymType::Atom(cur.ident(&[])?)),
        other => Err(cur.error(format!("expected a type, found {other}"))),
    }
}

fn sym_term(cur: &mut Cursor) -> Result<SymTerm, ParseError> {
    match cur.peek().clone() {
        Tok::Lt => {
            cur.bump();
            let p = sym_term(cur)?;
            cur.expect(Tok::Comma)?;
            let q = sym_term(cur)?;
            cur.expect(Tok::Gt)?;
            Ok(SymTerm::pair(p, q))
        }
        Tok::Backslash => {
            cur.bump();
            let x = cur.ident(KEYWORDS)?;
            cur.expect(Tok::Colon)?;
            let ann = sym_type(cur)?;
            cur.expect(Tok::Dot)?;
            let body = sym_term(cur)?;
            Ok(SymTerm::lam(x, ann, body))
        }
        Tok::LParen => {
            cur.bump();
            let p = sym_term(cur)?;
            if *cur.peek() == Tok::Star {
                cur.bump();
                let q = sym_term(cur)?;
                cur.expect(Tok::RParen)?;
                Ok(SymTerm::star(p, q))
            } else {
                cur.expect(Tok::RParen)?;
                Ok(p)
            }
        }
        Tok::Ident(kw) if kw == "inl" || kw == "inr" => {
            cur.bump();
            let side = if kw == "inl" { Side::Left } else { Side::Right };
            cur.expect(Tok::LBrack)?;
            let other = sym_type(cur)?;
            cur.expect(Tok::RBrack)?;
            let body = sym_term(cur)?;
            Ok(SymTerm::inj(side, other, body))
        }
        Tok::Ident(_) => Ok(SymTerm::Var(cur.ident(KEYWORDS)?)),
        other => Err(cur.error(format!("expected a term, found {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types_parse_with_precedence() {
        let t = parse_sym_type("a /\\ b \\/ ~c").unwrap();
        assert_eq!(
            t,
            SymType::or(SymType::and(SymType::atom("a"), SymType::atom("b")), SymType::neg_atom("c"))
        );
        assert_eq!(
            parse_sym_type("~(a /\\ b)").unwrap(),
            SymType::or(SymType::neg_atom("a"), SymType::neg_atom("b"))
        );
        assert_eq!(parse_sym_type("~~a").unwrap(), SymType::atom("a"));
        assert!(parse_sym_type("~#").is_err());
    }

    #[test]
    fn terms_round_trip_through_display() {
        let srcs = [
            "\\z:~a. (y * inl[~b] z)",
            "<x, inr[a /\\ b] \\w:a. (w * v)>",
            "((\\x:a. (y * x)) * z)",
        ];
        for src in srcs {
            let t = parse_sym_term(src).unwrap();
            assert_eq!(parse_sym_term(&t.to_string()).unwrap(), t, "{src}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_sym_term("(x * )").unwrap_err();
        assert_eq!((err.line, err.column), (1, 6));
        assert!(parse_sym_term("!x").is_err());
        assert!(parse_sym_term_with("!x", true).is_ok());
        assert!(parse_sym_term("inl x").is_err());
    }

    #[test]
    fn contexts() {
        let ctx = parse_sym_context("y:~a, z:a").unwrap();
        assert_eq!(ctx.get("y"), Some(&SymType::neg_atom("a")));
        assert!(parse_sym_context("").unwrap().is_empty());
        assert!(parse_sym_context("x:a, x:b").is_err());
    }
}
