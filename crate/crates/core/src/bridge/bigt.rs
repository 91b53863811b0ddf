use super::translate_e::{extend_l, extend_r, lmm_names, lmm_type_of, projection, type_e};
use super::translate_f::{term_f, type_f};
use super::BridgeError;
use crate::lmm::{subst_l, typecheck_lmm, LmmSequent, LmmTerm};
use crate::names::{barred, NameSupply};
use crate::sym::{neg_type, Side, SymContext, SymType};

struct BigT {
    supply: NameSupply,
}

impl BigT {
    fn go(&mut self, seq: &LmmSequent, u: &LmmTerm) -> Result<LmmTerm, BridgeError> {
        Ok(match u {
            LmmTerm::LVar(x) => LmmTerm::lvar(x),
            LmmTerm::RVar(alpha) => LmmTerm::lvar(barred(alpha)),
            LmmTerm::Lam(x, a, v) => {
                let inner = extend_l(seq, x, a);
                let b = lmm_type_of(&inner, v)?;
                let y_type = SymType::and(type_e(a), neg_type(&type_e(&b))?);
                let y = self.supply.fresh("y");
                let z = self.supply.fresh("z");
                let yctx = SymContext::new().with(&y, y_type.clone());
                let p1 = term_f(&yctx, &projection(Side::Left, &y, &y_type, &z))?;
                let p2 = term_f(&yctx, &projection(Side::Right, &y, &y_type, &z))?;
                let tv = self.go(&inner, v)?;
                LmmTerm::bar(LmmTerm::mutilde(
                    y,
                    type_f(&y_type)?,
                    LmmTerm::cut(subst_l(&tv, x, &p1), LmmTerm::tilde(p2)),
                ))
            }
            LmmTerm::Mu(alpha, a, p) => LmmTerm::bar(LmmTerm::mutilde(
                barred(alpha),
                type_f(&neg_type(&type_e(a))?)?,
                self.go(&extend_r(seq, alpha, a), p)?,
            )),
            LmmTerm::MuTilde(x, a, p) => {
                LmmTerm::bar(LmmTerm::mutilde(x, type_f(&type_e(a))?, self.go(&extend_l(seq, x, a), p)?))
            }
            LmmTerm::BarE(inner) | LmmTerm::TildeT(inner) => self.go(seq, inner)?,
            LmmTerm::Cons(t, e) => LmmTerm::bar(LmmTerm::cons(self.go(seq, t)?, LmmTerm::tilde(self.go(seq, e)?))),
            LmmTerm::Cut(t, e) => LmmTerm::cut(self.go(seq, t)?, LmmTerm::tilde(self.go(seq, e)?)),
        })
    }
}

/// The normal shape that `term_f(term_e(u))` reduces to: bars and tildes
/// are stripped, r-variables `α` become l-variables `!α`, and each lambda
/// is rebuilt around the images of the two projections.
pub fn big_t(seq: &LmmSequent, u: &LmmTerm) -> Result<LmmTerm, BridgeError> {
    typecheck_lmm(seq, u)?;
    let mut t = BigT {
        supply: NameSupply::new(lmm_names(seq, u)),
    };
    t.go(seq, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmm::{parse_lmm_sequent, parse_lmm_term};

    #[test]
    fn examples() {
        let seq = parse_lmm_sequent("x:a", "be:a").unwrap();
        let t = |s: &str| big_t(&seq, &parse_lmm_term(s).unwrap()).unwrap().to_string();
        assert_eq!(t("x"), "x");
        assert_eq!(t("bar(tilde(x))"), "x");
        assert_eq!(t("< x | be >"), "< x | tilde(!be) >");
        assert_eq!(t("x . be"), "bar(x . tilde(!be))");
    }
}
