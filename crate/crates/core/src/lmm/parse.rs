use super::{LmmSequent, LmmTerm, LmmType, Sort};
use crate::lexer::{Cursor, ParseError, Tok};

const KEYWORDS: &[&str] = &["mu", "mut", "bar", "tilde"];

pub fn parse_lmm_type(src: &str) -> Result<LmmType, ParseError> {
    let mut cur = Cursor::new(src, true)?;
    let t = lmm_type(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

/// Parses a term of any sort: a command if it starts with `<`, otherwise an
/// l-term if possible and an r-term failing that. A bare name is read as an
/// l-variable; use [`parse_lmm_as`] to force a sort.
pub fn parse_lmm_term(src: &str) -> Result<LmmTerm, ParseError> {
    let mut cur = Cursor::new(src, false)?;
    if *cur.peek() == Tok::Lt {
        let c = c_term(&mut cur)?;
        cur.finish()?;
        return Ok(c);
    }
    let l = l_term(&mut cur).and_then(|t| cur.finish().map(|_| t));
    match l {
        Ok(t) => Ok(t),
        Err(l_err) => {
            let mut cur = Cursor::new(src, false)?;
            r_term(&mut cur)
                .and_then(|t| cur.finish().map(|_| t))
                .map_err(|r_err| if r_err.offset >= l_err.offset { r_err } else { l_err })
        }
    }
}

pub fn parse_lmm_as(src: &str, sort: Sort) -> Result<LmmTerm, ParseError> {
    parse_lmm_as_with(src, sort, false)
}

pub fn parse_lmm_as_with(src: &str, sort: Sort, allow_reserved: bool) -> Result<LmmTerm, ParseError> {
    let mut cur = Cursor::new(src, allow_reserved)?;
    let t = match sort {
        Sort::C => c_term(&mut cur)?,
        Sort::L => l_term(&mut cur)?,
        Sort::R => r_term(&mut cur)?,
    };
    cur.finish()?;
    Ok(t)
}

/// Parses `x:A, y:B` into a name-to-type map (possibly empty).
pub fn parse_lmm_bindings(src: &str) -> Result<std::collections::BTreeMap<String, LmmType>, ParseError> {
    let mut cur = Cursor::new(src, true)?;
    let mut out = std::collections::BTreeMap::new();
    if *cur.peek() == Tok::Eof {
        return Ok(out);
    }
    loop {
        let off = cur.offset();
        let x = cur.ident(KEYWORDS)?;
        cur.expect(Tok::Colon)?;
        let t = lmm_type(&mut cur)?;
        if out.insert(x.clone(), t).is_some() {
            return Err(ParseError::at(src, off, format!("`{x}` is bound twice")));
        }
        if *cur.peek() != Tok::Comma {
            break;
        }
        cur.bump();
    }
    cur.finish()?;
    Ok(out)
}

pub fn parse_lmm_sequent(gamma: &str, delta: &str) -> Result<LmmSequent, ParseError> {
    Ok(LmmSequent {
        gamma: parse_lmm_bindings(gamma)?,
        delta: parse_lmm_bindings(delta)?,
    })
}

fn lmm_type(cur: &mut Cursor) -> Result<LmmType, ParseError> {
    let dom = unary_type(cur)?;
    if *cur.peek() == Tok::Arrow {
        cur.bump();
        Ok(LmmType::arrow(dom, lmm_type(cur)?))
    } else {
        Ok(dom)
    }
}

fn unary_type(cur: &mut Cursor) -> Result<LmmType, ParseError> {
    match cur.peek().clone() {
        Tok::Tilde => {
            cur.bump();
            Ok(LmmType::neg(unary_type(cur)?))
        }
        Tok::LParen => {
            cur.bump();
            let t = lmm_type(cur)?;
            cur.expect(Tok::RParen)?;
            Ok(t)
        }
        Tok::Ident(_) => Ok(LmmType::Atom(cur.ident(&[])?)),
        other => Err(cur.error(format!("expected a type, found {other}"))),
    }
}

fn binder(cur: &mut Cursor) -> Result<(String, LmmType), ParseError> {
    cur.bump();
    let x = cur.ident(KEYWORDS)?;
    cur.expect(Tok::Colon)?;
    let a = lmm_type(cur)?;
    cur.expect(Tok::Dot)?;
    Ok((x, a))
}

fn c_term(cur: &mut Cursor) -> Result<LmmTerm, ParseError> {
    if *cur.peek() == Tok::LParen {
        cur.bump();
        let c = c_term(cur)?;
        cur.expect(Tok::RParen)?;
        return Ok(c);
    }
    cur.expect(Tok::Lt)?;
    let t = l_term(cur)?;
    cur.expect(Tok::Bar)?;
    let e = r_term(cur)?;
    cur.expect(Tok::Gt)?;
    Ok(LmmTerm::cut(t, e))
}

fn l_term(cur: &mut Cursor) -> Result<LmmTerm, ParseError> {
    match cur.peek().clone() {
        Tok::Backslash => {
            let (x, a) = binder(cur)?;
            Ok(LmmTerm::lam(x, a, l_term(cur)?))
        }
        Tok::LParen => {
            cur.bump();
            let t = l_term(cur)?;
            cur.expect(Tok::RParen)?;
            Ok(t)
        }
        Tok::Ident(kw) if kw == "mu" => {
            let (x, a) = binder(cur)?;
            Ok(LmmTerm::mu(x, a, c_term(cur)?))
        }
        Tok::Ident(kw) if kw == "bar" => {
            cur.bump();
            cur.expect(Tok::LParen)?;
            let e = r_term(cur)?;
            cur.expect(Tok::RParen)?;
            Ok(LmmTerm::bar(e))
        }
        Tok::Ident(_) => Ok(LmmTerm::LVar(cur.ident(KEYWORDS)?)),
        other => Err(cur.error(format!("expected an l-term, found {other}"))),
    }
}

fn r_term(cur: &mut Cursor) -> Result<LmmTerm, ParseError> {
    let start = cur.pos;
    if let Ok(t) = l_term(cur) {
        if *cur.peek() == Tok::Dot {
            cur.bump();
            return Ok(LmmTerm::cons(t, r_term(cur)?));
        }
    }
    cur.pos = start;
    match cur.peek().clone() {
        Tok::LParen => {
            cur.bump();
            let e = r_term(cur)?;
            cur.expect(Tok::RParen)?;
            Ok(e)
        }
        Tok::Ident(kw) if kw == "mut" => {
            let (x, a) = binder(cur)?;
            Ok(LmmTerm::mutilde(x, a, c_term(cur)?))
        }
        Tok::Ident(kw) if kw == "tilde" => {
            cur.bump();
            cur.expect(Tok::LParen)?;
            let t = l_term(cur)?;
            cur.expect(Tok::RParen)?;
            Ok(LmmTerm::tilde(t))
        }
        Tok::Ident(_) => Ok(LmmTerm::RVar(cur.ident(KEYWORDS)?)),
        other => Err(cur.error(format!("expected an r-term, found {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types() {
        let t = parse_lmm_type("a -> b -> ~c").unwrap();
        assert_eq!(
            t,
            LmmType::arrow(LmmType::atom("a"), LmmType::arrow(LmmType::atom("b"), LmmType::neg(LmmType::atom("c"))))
        );
        assert_eq!(parse_lmm_type(&t.to_string()).unwrap(), t);
        let t = parse_lmm_type("~(a -> b) -> a").unwrap();
        assert_eq!(parse_lmm_type(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn terms_of_each_sort() {
        let c = parse_lmm_term("< \\x:a. x | y . al >").unwrap();
        assert_eq!(
            c,
            LmmTerm::cut(
                LmmTerm::lam("x", LmmType::atom("a"), LmmTerm::lvar("x")),
                LmmTerm::cons(LmmTerm::lvar("y"), LmmTerm::rvar("al"))
            )
        );
        assert_eq!(parse_lmm_term("x").unwrap(), LmmTerm::lvar("x"));
        assert_eq!(parse_lmm_as("al", Sort::R).unwrap(), LmmTerm::rvar("al"));
        assert_eq!(parse_lmm_term("x . y . al").unwrap().sort(), Sort::R);
        assert_eq!(parse_lmm_term("tilde(x)").unwrap().sort(), Sort::R);
        assert_eq!(parse_lmm_term("mut x:a. < x | al >").unwrap().sort(), Sort::R);
        assert_eq!(parse_lmm_term("bar(mut x:a. < x | al >)").unwrap().sort(), Sort::L);
    }

    #[test]
    fn printing_round_trips() {
        let srcs = [
            "< mu al:a. < y | al > | mut x:a. < z | be > >",
            "(\\x:a. x) . al",
            "bar(tilde(\\x:~a. bar(x . al)))",
        ];
        for src in srcs {
            let t = parse_lmm_term(src).unwrap();
            assert_eq!(parse_lmm_term(&t.to_string()).unwrap(), t, "{src}");
        }
    }

    #[test]
    fn errors() {
        assert!(parse_lmm_term("< x | >").is_err());
        assert!(parse_lmm_term("mu x:a. y").is_err());
        assert!(parse_lmm_term("!x").is_err());
    }
}
