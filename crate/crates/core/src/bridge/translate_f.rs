use super::BridgeError;
use crate::lmm::{canonicalize_type, LmmSequent, LmmTerm, LmmType};
use crate::names::{NameSupply, Path};
use crate::sym::{infer_type, neg_type, Side, SymContext, SymTerm, SymType};

/// Type translation into λ̄μμ̃*: `A /\ B` becomes `~(A -> ~B)` and
/// `A \/ B` becomes `~A -> B`. The result is canonical.
pub fn type_f(a: &SymType) -> Result<LmmType, BridgeError> {
    fn go(a: &SymType) -> Result<LmmType, BridgeError> {
        Ok(match a {
            SymType::Atom(n) => LmmType::atom(n.clone()),
            SymType::NegAtom(n) => LmmType::neg(LmmType::atom(n.clone())),
            SymType::And(x, y) => LmmType::neg(LmmType::arrow(go(x)?, LmmType::neg(go(y)?))),
            SymType::Or(x, y) => LmmType::arrow(LmmType::neg(go(x)?), go(y)?),
            SymType::Bottom => return Err(BridgeError::BottomType),
        })
    }
    Ok(canonicalize_type(&go(a)?))
}

/// Every variable of `ctx` as an l-variable of the translated type.
pub fn context_f(ctx: &SymContext) -> Result<LmmSequent, BridgeError> {
    let mut seq = LmmSequent::new();
    for (x, a) in ctx.iter() {
        seq.gamma.insert(x.clone(), type_f(a)?);
    }
    Ok(seq)
}

struct FTrans {
    supply: NameSupply,
}

impl FTrans {
    fn go(&mut self, ctx: &SymContext, m: &SymTerm) -> Result<LmmTerm, BridgeError> {
        Ok(match m {
            SymTerm::Var(x) => LmmTerm::lvar(x),
            SymTerm::Star(p, q) => LmmTerm::cut(self.go(ctx, q)?, LmmTerm::tilde(self.go(ctx, p)?)),
            SymTerm::Lam(x, a, body) => {
                let inner = ctx.clone().with(x, a.clone());
                LmmTerm::bar(LmmTerm::mutilde(x, type_f(a)?, self.go(&inner, body)?))
            }
            SymTerm::Pair(p, q) => {
                LmmTerm::bar(LmmTerm::cons(self.go(ctx, p)?, LmmTerm::tilde(self.go(ctx, q)?)))
            }
            SymTerm::Inj(Side::Left, b, body) => {
                let a = infer_type(ctx, body)?;
                let x = self.supply.fresh("x");
                let beta = self.supply.fresh("b");
                let body_f = self.go(ctx, body)?;
                LmmTerm::lam(
                    &x,
                    LmmType::neg(type_f(&a)?),
                    LmmTerm::mu(beta, type_f(b)?, LmmTerm::cut(body_f, LmmTerm::tilde(LmmTerm::lvar(&x)))),
                )
            }
            SymTerm::Inj(Side::Right, a, body) => {
                let x = self.supply.fresh("x");
                LmmTerm::lam(x, LmmType::neg(type_f(a)?), self.go(ctx, body)?)
            }
        })
    }
}

/// Translation of a typed λSym term into λ̄μμ̃*. Terms of type `#` become
/// commands, all others l-terms.
pub fn term_f(ctx: &SymContext, m: &SymTerm) -> Result<LmmTerm, BridgeError> {
    infer_type(ctx, m)?;
    let mut names = std::collections::BTreeSet::new();
    m.all_names(&mut names);
    names.extend(ctx.names().cloned());
    let mut tr = FTrans {
        supply: NameSupply::new(names),
    };
    tr.go(ctx, m)
}

/// Where the image of the subterm at `path` of `m` sits inside `term_f(m)`.
pub fn f_path(m: &SymTerm, path: &[usize]) -> Option<Path> {
    let mut out = Vec::new();
    let mut cur = m;
    for &i in path {
        let seg: &[usize] = match (cur, i) {
            (SymTerm::Star(..), 0) => &[1, 0],
            (SymTerm::Star(..), 1) => &[0],
            (SymTerm::Pair(..), 0) => &[0, 0],
            (SymTerm::Pair(..), 1) => &[0, 1, 0],
            (SymTerm::Lam(..), 0) => &[0, 0],
            (SymTerm::Inj(Side::Left, ..), 0) => &[0, 0, 0],
            (SymTerm::Inj(Side::Right, ..), 0) => &[0],
            _ => return None,
        };
        out.extend_from_slice(seg);
        cur = cur.subterm(&[i])?;
    }
    Some(out)
}

/// `type_f` commutes with negation up to canonical form.
pub fn type_f_respects_negation(a: &SymType) -> bool {
    match (neg_type(a), type_f(a)) {
        (Ok(n), Ok(fa)) => type_f(&n).ok() == Some(canonicalize_type(&LmmType::neg(fa))),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmm::{parse_lmm_type, typecheck_lmm};
    use crate::sym::{parse_sym_context, parse_sym_term, parse_sym_type};

    #[test]
    fn types() {
        let t = |s: &str| type_f(&parse_sym_type(s).unwrap()).unwrap();
        assert_eq!(t("a"), LmmType::atom("a"));
        assert_eq!(t("~a"), parse_lmm_type("~a").unwrap());
        assert_eq!(t("a /\\ b"), canonicalize_type(&parse_lmm_type("~(a -> ~b)").unwrap()));
        assert_eq!(t("a \\/ b"), parse_lmm_type("~a -> b").unwrap());
        assert_eq!(type_f(&SymType::Bottom), Err(BridgeError::BottomType));
        for s in ["a", "~a", "a /\\ ~b", "(a \\/ b) /\\ ~c"] {
            assert!(type_f_respects_negation(&parse_sym_type(s).unwrap()), "{s}");
        }
    }

    #[test]
    fn star_and_lambda() {
        let ctx = parse_sym_context("p:~a, q:a").unwrap();
        let m = parse_sym_term("(p * q)").unwrap();
        assert_eq!(term_f(&ctx, &m).unwrap().to_string(), "< q | tilde(p) >");
        let m = parse_sym_term("\\x:a. (p * x)").unwrap();
        assert_eq!(term_f(&ctx, &m).unwrap().to_string(), "bar(mut x:a. < x | tilde(p) >)");
    }

    #[test]
    fn images_typecheck() {
        let ctx = parse_sym_context("p:~a, q:a, r:b").unwrap();
        let seq = context_f(&ctx).unwrap();
        for (src, ty) in [
            ("inl[b] q", "a \\/ b"),
            ("inr[a] r", "a \\/ b"),
            ("<q, r>", "a /\\ b"),
            ("\\x:a /\\ b. (x * inl[~b] p)", "~a \\/ ~b"),
        ] {
            let m = parse_sym_term(src).unwrap();
            let u = term_f(&ctx, &m).unwrap();
            let got = typecheck_lmm(&seq, &u).unwrap().unwrap();
            assert_eq!(got, type_f(&parse_sym_type(ty).unwrap()).unwrap(), "{src}");
        }
    }
}
