use std::collections::BTreeSet;

use super::BridgeError;
use crate::lmm::{canonicalize_type, typecheck_lmm, LmmSequent, LmmTerm, LmmType, VarKind};
use crate::names::{barred, NameSupply, Path};
use crate::sym::{neg_type, Side, SymContext, SymTerm, SymType};

fn neg(a: &SymType) -> SymType {
    neg_type(a).expect("images of λ̄μμ̃* types are m-types")
}

/// Type translation into λSym: atoms are fixed, `~A` becomes the dual and
/// `A -> B` becomes `~A \/ B`.
pub fn type_e(a: &LmmType) -> SymType {
    match canonicalize_type(a) {
        LmmType::Atom(n) => SymType::Atom(n),
        LmmType::Neg(inner) => neg(&type_e(&inner)),
        LmmType::Arrow(x, y) => SymType::or(neg(&type_e(&x)), type_e(&y)),
    }
}

/// `Γᵉ` together with `!α : ~(Aᵉ)` for every `α : A` in `Δ`.
pub fn context_e(seq: &LmmSequent) -> Result<SymContext, BridgeError> {
    let mut ctx = SymContext::new();
    for (x, a) in &seq.gamma {
        ctx.insert(x.clone(), type_e(a));
    }
    for (alpha, a) in &seq.delta {
        let name = barred(alpha);
        if ctx.insert(name.clone(), neg(&type_e(a))).is_some() {
            return Err(BridgeError::NameCollision(name));
        }
    }
    Ok(ctx)
}

/// The projection `πᵢ(y)` for `y : a₁ ∧ a₂`, a term of type `aᵢ`.
pub fn projection(i: Side, y: &str, y_type: &SymType, z: &str) -> SymTerm {
    let SymType::And(a1, a2) = y_type else {
        panic!("projection from a non-conjunction {y_type}");
    };
    let (ai, other) = match i {
        Side::Left => (a1, a2),
        Side::Right => (a2, a1),
    };
    SymTerm::lam(
        z,
        neg(ai),
        SymTerm::star(SymTerm::var(y), SymTerm::inj(i, neg(other), SymTerm::var(z))),
    )
}

pub(crate) fn lmm_names(seq: &LmmSequent, u: &LmmTerm) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    u.all_names(VarKind::L, &mut names);
    let mut rnames = BTreeSet::new();
    u.all_names(VarKind::R, &mut rnames);
    names.extend(seq.gamma.keys().cloned());
    rnames.extend(seq.delta.keys().cloned());
    names.extend(rnames.iter().map(|a| barred(a)));
    names
}

pub(crate) fn extend_l(seq: &LmmSequent, x: &str, a: &LmmType) -> LmmSequent {
    let mut s = seq.clone();
    s.gamma.insert(x.to_string(), a.clone());
    s
}

pub(crate) fn extend_r(seq: &LmmSequent, alpha: &str, a: &LmmType) -> LmmSequent {
    let mut s = seq.clone();
    s.delta.insert(alpha.to_string(), a.clone());
    s
}

pub(crate) fn lmm_type_of(seq: &LmmSequent, u: &LmmTerm) -> Result<LmmType, BridgeError> {
    typecheck_lmm(seq, u)?.ok_or_else(|| BridgeError::Untyped(format!("`{u}` is a command")))
}

struct ETrans {
    supply: NameSupply,
}

impl ETrans {
    fn go(&mut self, seq: &LmmSequent, u: &LmmTerm) -> Result<SymTerm, BridgeError> {
        Ok(match u {
            LmmTerm::Cut(t, e) => SymTerm::star(self.go(seq, e)?, self.go(seq, t)?),
            LmmTerm::LVar(x) => SymTerm::var(x),
            LmmTerm::RVar(alpha) => SymTerm::var(barred(alpha)),
            LmmTerm::Lam(x, a, body) => {
                let inner = extend_l(seq, x, a);
                let b = lmm_type_of(&inner, body)?;
                let ae = type_e(a);
                let y_type = SymType::and(ae.clone(), neg(&type_e(&b)));
                let y = self.supply.fresh("y");
                let z1 = self.supply.fresh("z");
                let z2 = self.supply.fresh("z");
                let body_e = self.go(&inner, body)?;
                let p1 = projection(Side::Left, &y, &y_type, &z1);
                let p2 = projection(Side::Right, &y, &y_type, &z2);
                SymTerm::lam(
                    y,
                    y_type,
                    SymTerm::star(SymTerm::lam(x, ae, SymTerm::star(p2, body_e)), p1),
                )
            }
            LmmTerm::MuTilde(x, a, c) => SymTerm::lam(x, type_e(a), self.go(&extend_l(seq, x, a), c)?),
            LmmTerm::Mu(alpha, a, c) => {
                SymTerm::lam(barred(alpha), neg(&type_e(a)), self.go(&extend_r(seq, alpha, a), c)?)
            }
            LmmTerm::BarE(inner) | LmmTerm::TildeT(inner) => self.go(seq, inner)?,
            LmmTerm::Cons(t, e) => SymTerm::pair(self.go(seq, t)?, self.go(seq, e)?),
        })
    }
}

/// Translation of a typed λ̄μμ̃* term into λSym. Commands become ⊥-typed
/// terms, r-variables `α` become the variables `!α`.
pub fn term_e(seq: &LmmSequent, u: &LmmTerm) -> Result<SymTerm, BridgeError> {
    typecheck_lmm(seq, u)?;
    let mut tr = ETrans {
        supply: NameSupply::new(lmm_names(seq, u)),
    };
    tr.go(seq, u)
}

/// Where the image of the subterm at `path` of `u` sits inside `term_e(u)`.
pub fn e_path(u: &LmmTerm, path: &[usize]) -> Option<Path> {
    let mut out = Vec::new();
    let mut cur = u;
    for &i in path {
        let seg: &[usize] = match (cur, i) {
            (LmmTerm::Cut(..), 0) => &[1],
            (LmmTerm::Cut(..), 1) => &[0],
            (LmmTerm::Lam(..), 0) => &[0, 0, 0, 1],
            (LmmTerm::Mu(..) | LmmTerm::MuTilde(..), 0) => &[0],
            (LmmTerm::BarE(_) | LmmTerm::TildeT(_), 0) => &[],
            (LmmTerm::Cons(..), 0) => &[0],
            (LmmTerm::Cons(..), 1) => &[1],
            _ => return None,
        };
        out.extend_from_slice(seg);
        cur = cur.subterm(&[i])?;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmm::{parse_lmm_sequent, parse_lmm_term};
    use crate::sym::{parse_sym_type, typecheck_sym};

    #[test]
    fn type_examples() {
        let a = LmmType::atom("a");
        let b = LmmType::atom("b");
        assert_eq!(type_e(&a), SymType::atom("a"));
        assert_eq!(type_e(&LmmType::arrow(a.clone(), b.clone())), parse_sym_type("~a \\/ b").unwrap());
        assert_eq!(type_e(&LmmType::neg(LmmType::arrow(a, b))), parse_sym_type("a /\\ ~b").unwrap());
    }

    #[test]
    fn contexts() {
        let seq = parse_lmm_sequent("x:a", "").unwrap();
        assert_eq!(context_e(&seq).unwrap(), SymContext::new().with("x", SymType::atom("a")));
        let seq = parse_lmm_sequent("", "al:a -> b").unwrap();
        assert_eq!(
            context_e(&seq).unwrap(),
            SymContext::new().with("!al", parse_sym_type("a /\\ ~b").unwrap())
        );
    }

    #[test]
    fn projection_types() {
        let y_type = parse_sym_type("a /\\ b").unwrap();
        let ctx = SymContext::new().with("y", y_type.clone());
        let p1 = projection(Side::Left, "y", &y_type, "z");
        let p2 = projection(Side::Right, "y", &y_type, "z");
        assert_eq!(typecheck_sym(&ctx, &p1).unwrap().0, SymType::atom("a"));
        assert_eq!(typecheck_sym(&ctx, &p2).unwrap().0, SymType::atom("b"));
    }

    #[test]
    fn term_examples() {
        let seq = parse_lmm_sequent("x:a, t:a", "al:~a").unwrap();
        let u = parse_lmm_term("bar(tilde(x))").unwrap();
        assert_eq!(term_e(&seq, &u).unwrap(), SymTerm::var("x"));
        let u = parse_lmm_term("t . al").unwrap();
        assert_eq!(term_e(&seq, &u).unwrap(), SymTerm::pair(SymTerm::var("t"), SymTerm::var("!al")));
        let u = parse_lmm_term("< \\w:a. w | x . be >").unwrap();
        let seq = seq.with_r("be", LmmType::atom("a"));
        let m = term_e(&seq, &u).unwrap();
        let ctx = context_e(&seq).unwrap();
        assert_eq!(typecheck_sym(&ctx, &m).unwrap().0, SymType::Bottom);
    }

    #[test]
    fn paths_follow_the_image() {
        let seq = parse_lmm_sequent("x:a", "be:a").unwrap();
        let u = parse_lmm_term("< \\w:a. w | x . be >").unwrap();
        let m = term_e(&seq, &u).unwrap();
        for (path, image) in [(vec![0, 0], vec![1, 0, 0, 0, 1]), (vec![1, 1], vec![0, 1])] {
            assert_eq!(e_path(&u, &path).unwrap(), image);
            let sub_l = u.subterm(&path).unwrap();
            let sub_s = m.subterm(&image).unwrap();
            assert_eq!(sub_s.to_string(), sub_l.to_string().replace("be", "!be"));
        }
    }
}
