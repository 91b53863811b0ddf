//! Seeded generation of well-typed terms for both calculi, and shrinking
//! of failing samples.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lmm::{canonicalize_type, typecheck_lmm, LmmSequent, LmmTerm, LmmType, Sort};
use crate::names::Path;
use crate::sym::{neg_type, subterm_types, typecheck_sym, SymContext, SymTerm, SymType};

/// Attempts per sample before generation is declared broken.
pub const RETRY_BOUND: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    /// Upper bound on the number of nodes of a generated term.
    pub max_size: usize,
    pub atom_pool: Vec<String>,
    /// Probability that a λSym sample has type `#`.
    pub bottom_bias: f64,
    /// Probability that a λ̄μμ̃* sample is a command.
    pub command_bias: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_size: 20,
            atom_pool: vec!["a".into(), "b".into(), "c".into()],
            bottom_bias: 0.3,
            command_bias: 0.3,
        }
    }
}

impl GenConfig {
    pub fn new(seed: u64, max_size: usize) -> Self {
        GenConfig {
            seed,
            max_size,
            ..GenConfig::default()
        }
    }

    fn validate(&self) {
        assert!(self.max_size >= 1, "max_size must be at least 1");
        assert!(!self.atom_pool.is_empty(), "atom_pool must not be empty");
    }
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// Index into `weights` chosen proportionally; zero weights are skipped.
fn weighted(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut x = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if *w > 0.0 && x < *w {
            return i;
        }
        x -= w;
    }
    weights.iter().rposition(|w| *w > 0.0).expect("some weight is positive")
}

fn split(rng: &mut ChaCha8Rng, budget: usize) -> (usize, usize) {
    let left = rng.gen_range(1..budget);
    (left, budget - left)
}

fn target_budget(rng: &mut ChaCha8Rng, max_size: usize) -> usize {
    rng.gen_range(max_size.div_ceil(3)..=max_size)
}

/// A stream of typed λSym samples.
pub struct SymGen {
    cfg: GenConfig,
    rng: ChaCha8Rng,
    ctx: SymContext,
    scope: Vec<(String, SymType)>,
    bound: usize,
}

impl SymGen {
    pub fn new(cfg: GenConfig) -> Self {
        cfg.validate();
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        SymGen {
            cfg,
            rng,
            ctx: SymContext::new(),
            scope: Vec::new(),
            bound: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn max_size(&self) -> usize {
        self.cfg.max_size
    }

    pub fn gen_type(&mut self, depth: usize) -> SymType {
        let atom = pick(&mut self.rng, &self.cfg.atom_pool).clone();
        if depth == 0 || self.rng.gen_bool(0.5) {
            return if self.rng.gen_bool(0.5) {
                SymType::Atom(atom)
            } else {
                SymType::NegAtom(atom)
            };
        }
        let a = self.gen_type(depth - 1);
        let b = self.gen_type(depth - 1);
        if self.rng.gen_bool(0.5) {
            SymType::and(a, b)
        } else {
            SymType::or(a, b)
        }
    }

    fn variable(&mut self, ty: &SymType) -> SymTerm {
        let mut candidates: Vec<String> = self.scope.iter().filter(|(_, t)| t == ty).map(|(x, _)| x.clone()).collect();
        candidates.extend(self.ctx.iter().filter(|(_, t)| *t == ty).map(|(x, _)| x.clone()));
        if !candidates.is_empty() && self.rng.gen_bool(0.8) {
            return SymTerm::var(pick(&mut self.rng, &candidates).clone());
        }
        let mut i = self.ctx.iter().count();
        let name = loop {
            let n = format!("v{i}");
            if self.ctx.get(&n).is_none() && !self.scope.iter().any(|(x, _)| *x == n) {
                break n;
            }
            i += 1;
        };
        self.ctx.insert(name.clone(), ty.clone());
        SymTerm::var(name)
    }

    fn cut_type(&mut self) -> SymType {
        let in_scope: Vec<SymType> = self.scope.iter().map(|(_, t)| t.clone()).collect();
        if !in_scope.is_empty() && self.rng.gen_bool(0.5) {
            pick(&mut self.rng, &in_scope).clone()
        } else {
            self.gen_type(2)
        }
    }

    /// A term of type `ty` with at most `budget` nodes; `ty = #` needs at
    /// least 3.
    pub fn term(&mut self, ty: &SymType, budget: usize) -> SymTerm {
        if ty.is_bottom() {
            assert!(budget >= 3, "a #-typed term needs 3 nodes");
            let a = self.cut_type();
            let na = neg_type(&a).expect("cut types are m-types");
            let (l, r) = split(&mut self.rng, budget - 1);
            let p = self.term(&a, l);
            let q = self.term(&na, r);
            return SymTerm::star(p, q);
        }
        if budget == 1 {
            return self.variable(ty);
        }
        let var_w = if budget < 6 { 1.0 } else { 0.3 };
        let lam_w = if budget >= 4 { 2.0 } else { 0.0 };
        let intro_w = match ty {
            SymType::And(..) if budget >= 3 => 3.0,
            SymType::Or(..) => 3.0,
            _ => 0.0,
        };
        match weighted(&mut self.rng, &[var_w, lam_w, intro_w]) {
            0 => self.variable(ty),
            1 => {
                let x = format!("x{}", self.bound);
                self.bound += 1;
                let a = neg_type(ty).expect("m-type");
                self.scope.push((x.clone(), a.clone()));
                let body = self.term(&SymType::Bottom, budget - 1);
                self.scope.pop();
                SymTerm::lam(x, a, body)
            }
            _ => match ty {
                SymType::And(a, b) => {
                    let (l, r) = split(&mut self.rng, budget - 1);
                    let p = self.term(a, l);
                    let q = self.term(b, r);
                    SymTerm::pair(p, q)
                }
                SymType::Or(a, b) => {
                    let inner = budget - 1;
                    if self.rng.gen_bool(0.5) {
                        SymTerm::inj(crate::sym::Side::Left, (**b).clone(), self.term(a, inner))
                    } else {
                        SymTerm::inj(crate::sym::Side::Right, (**a).clone(), self.term(b, inner))
                    }
                }
                _ => unreachable!("intro weight is zero"),
            },
        }
    }

    /// A term of type `ty` whose free variables extend `base`.
    pub fn sample_of_type(&mut self, base: &SymContext, ty: &SymType) -> (SymContext, SymTerm) {
        for _ in 0..RETRY_BOUND {
            self.ctx = base.clone();
            self.scope.clear();
            let min = if ty.is_bottom() { 3 } else { 1 };
            let budget = target_budget(&mut self.rng, self.cfg.max_size).max(min);
            let m = self.term(ty, budget);
            let ctx = std::mem::take(&mut self.ctx);
            if typecheck_sym(&ctx, &m).map(|(t, _)| &t == ty).unwrap_or(false) {
                return (ctx, m);
            }
        }
        panic!("λSym generator failed {RETRY_BOUND} times in a row");
    }

    pub fn sample(&mut self) -> (SymContext, SymTerm, SymType) {
        let ty = if self.cfg.max_size >= 3 && self.rng.gen_bool(self.cfg.bottom_bias) {
            SymType::Bottom
        } else {
            self.gen_type(2)
        };
        let (ctx, m) = self.sample_of_type(&SymContext::new(), &ty);
        (ctx, m, ty)
    }
}

/// One typed λSym sample: context, term and its type.
pub fn gen_sym(cfg: &GenConfig) -> (SymContext, SymTerm, SymType) {
    SymGen::new(cfg.clone()).sample()
}

/// A stream of typed λ̄μμ̃* samples.
pub struct LmmGen {
    cfg: GenConfig,
    rng: ChaCha8Rng,
    seq: LmmSequent,
    l_scope: Vec<(String, LmmType)>,
    r_scope: Vec<(String, LmmType)>,
    bound: usize,
}

impl LmmGen {
    pub fn new(cfg: GenConfig) -> Self {
        cfg.validate();
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        LmmGen {
            cfg,
            rng,
            seq: LmmSequent::new(),
            l_scope: Vec::new(),
            r_scope: Vec::new(),
            bound: 0,
        }
    }

    pub fn gen_type(&mut self, depth: usize) -> LmmType {
        if depth == 0 || self.rng.gen_bool(0.4) {
            let a = LmmType::atom(pick(&mut self.rng, &self.cfg.atom_pool).clone());
            return if self.rng.gen_bool(0.3) { LmmType::neg(a) } else { a };
        }
        let t = match self.rng.gen_range(0..3) {
            0 => LmmType::neg(self.gen_type(depth - 1)),
            _ => LmmType::arrow(self.gen_type(depth - 1), self.gen_type(depth - 1)),
        };
        canonicalize_type(&t)
    }

    fn fresh_bound(&mut self, stem: &str) -> String {
        let n = format!("{stem}{}", self.bound);
        self.bound += 1;
        n
    }

    fn variable(&mut self, kind: Sort, ty: &LmmType) -> LmmTerm {
        let (scope, free, stem) = match kind {
            Sort::L => (&self.l_scope, &self.seq.gamma, "v"),
            _ => (&self.r_scope, &self.seq.delta, "k"),
        };
        let mut candidates: Vec<String> = scope.iter().filter(|(_, t)| t == ty).map(|(x, _)| x.clone()).collect();
        candidates.extend(free.iter().filter(|(_, t)| *t == ty).map(|(x, _)| x.clone()));
        let name = if !candidates.is_empty() && self.rng.gen_bool(0.8) {
            pick(&mut self.rng, &candidates).clone()
        } else {
            let mut i = free.len();
            let n = loop {
                let n = format!("{stem}{i}");
                if !free.contains_key(&n) {
                    break n;
                }
                i += 1;
            };
            match kind {
                Sort::L => self.seq.gamma.insert(n.clone(), ty.clone()),
                _ => self.seq.delta.insert(n.clone(), ty.clone()),
            };
            n
        };
        match kind {
            Sort::L => LmmTerm::lvar(name),
            _ => LmmTerm::rvar(name),
        }
    }

    /// A command with at most `budget` (at least 3) nodes.
    pub fn command(&mut self, budget: usize) -> LmmTerm {
        let in_scope: Vec<LmmType> = self.l_scope.iter().chain(&self.r_scope).map(|(_, t)| t.clone()).collect();
        let a = if !in_scope.is_empty() && self.rng.gen_bool(0.5) {
            pick(&mut self.rng, &in_scope).clone()
        } else {
            self.gen_type(2)
        };
        let (l, r) = split(&mut self.rng, budget - 1);
        let t = self.l_term(&a, l);
        let e = self.r_term(&a, r);
        LmmTerm::cut(t, e)
    }

    /// An l-term of canonical type `ty`.
    pub fn l_term(&mut self, ty: &LmmType, budget: usize) -> LmmTerm {
        if budget == 1 {
            return self.variable(Sort::L, ty);
        }
        let var_w = if budget < 6 { 1.0 } else { 0.3 };
        let lam_w = if matches!(ty, LmmType::Arrow(..)) { 3.0 } else { 0.0 };
        let mu_w = if budget >= 4 { 1.5 } else { 0.0 };
        match weighted(&mut self.rng, &[var_w, lam_w, mu_w, 1.0]) {
            0 => self.variable(Sort::L, ty),
            1 => {
                let LmmType::Arrow(a, b) = ty else { unreachable!() };
                let x = self.fresh_bound("x");
                self.l_scope.push((x.clone(), (**a).clone()));
                let body = self.l_term(b, budget - 1);
                self.l_scope.pop();
                LmmTerm::lam(x, (**a).clone(), body)
            }
            2 => {
                let alpha = self.fresh_bound("a");
                self.r_scope.push((alpha.clone(), ty.clone()));
                let c = self.command(budget - 1);
                self.r_scope.pop();
                LmmTerm::mu(alpha, ty.clone(), c)
            }
            _ => LmmTerm::bar(self.r_term(&ty.negated(), budget - 1)),
        }
    }

    /// An r-term of canonical type `ty`.
    pub fn r_term(&mut self, ty: &LmmType, budget: usize) -> LmmTerm {
        if budget == 1 {
            return self.variable(Sort::R, ty);
        }
        let var_w = if budget < 6 { 1.0 } else { 0.3 };
        let cons_w = if matches!(ty, LmmType::Arrow(..)) && budget >= 3 { 3.0 } else { 0.0 };
        let mut_w = if budget >= 4 { 1.5 } else { 0.0 };
        match weighted(&mut self.rng, &[var_w, cons_w, mut_w, 1.0]) {
            0 => self.variable(Sort::R, ty),
            1 => {
                let LmmType::Arrow(a, b) = ty else { unreachable!() };
                let (l, r) = split(&mut self.rng, budget - 1);
                let t = self.l_term(a, l);
                let e = self.r_term(b, r);
                LmmTerm::cons(t, e)
            }
            2 => {
                let x = self.fresh_bound("x");
                self.l_scope.push((x.clone(), ty.clone()));
                let c = self.command(budget - 1);
                self.l_scope.pop();
                LmmTerm::mutilde(x, ty.clone(), c)
            }
            _ => LmmTerm::tilde(self.l_term(&ty.negated(), budget - 1)),
        }
    }

    /// A term of sort `sort` (l or r) and type `ty` whose free variables
    /// extend `base`.
    pub fn sample_of_type(&mut self, base: &LmmSequent, sort: Sort, ty: &LmmType) -> (LmmSequent, LmmTerm) {
        let ty = canonicalize_type(ty);
        for _ in 0..RETRY_BOUND {
            self.seq = base.clone();
            self.l_scope.clear();
            self.r_scope.clear();
            let budget = target_budget(&mut self.rng, self.cfg.max_size);
            let u = match sort {
                Sort::L => self.l_term(&ty, budget),
                _ => self.r_term(&ty, budget),
            };
            let seq = std::mem::take(&mut self.seq);
            if typecheck_lmm(&seq, &u).map(|t| t == Some(ty.clone())).unwrap_or(false) {
                return (seq, u);
            }
        }
        panic!("λ̄μμ̃* generator failed {RETRY_BOUND} times in a row");
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn sample(&mut self) -> (LmmSequent, LmmTerm) {
        for _ in 0..RETRY_BOUND {
            self.seq = LmmSequent::new();
            self.l_scope.clear();
            self.r_scope.clear();
            let budget = target_budget(&mut self.rng, self.cfg.max_size);
            let u = if budget >= 3 && self.rng.gen_bool(self.cfg.command_bias) {
                self.command(budget)
            } else {
                let ty = self.gen_type(2);
                if self.rng.gen_bool(0.5) {
                    self.l_term(&ty, budget)
                } else {
                    self.r_term(&ty, budget)
                }
            };
            let seq = std::mem::take(&mut self.seq);
            if typecheck_lmm(&seq, &u).is_ok() {
                return (seq, u);
            }
        }
        panic!("λ̄μμ̃* generator failed {RETRY_BOUND} times in a row");
    }
}

/// One typed λ̄μμ̃* sample of any sort.
pub fn gen_lmm(cfg: &GenConfig) -> (LmmSequent, LmmTerm) {
    LmmGen::new(cfg.clone()).sample()
}

/// Greedy shrinking: repeatedly moves to the first candidate on which
/// `fails` still holds. Candidates must be strictly smaller.
pub fn shrink<T: Clone>(start: T, candidates: impl Fn(&T) -> Vec<T>, fails: impl Fn(&T) -> bool) -> T {
    let mut cur = start;
    'outer: loop {
        for c in candidates(&cur) {
            if fails(&c) {
                cur = c;
                continue 'outer;
            }
        }
        return cur;
    }
}

fn fresh_ctx_var(ctx: &SymContext, m: &SymTerm) -> String {
    let mut taken = BTreeSet::new();
    m.all_names(&mut taken);
    taken.extend(ctx.names().cloned());
    crate::names::fresh_name("v", &taken)
}

/// Typed one-step simplifications of a λSym sample: a compound m-typed
/// subterm replaced by a fresh variable, a `#`-typed subterm replaced by
/// a smaller one inside it, or a pair or injection replaced by a
/// component of the same type. Contexts are trimmed to the free variables.
pub fn sym_shrink_candidates(sample: &(SymContext, SymTerm)) -> Vec<(SymContext, SymTerm)> {
    let (ctx, m) = sample;
    let Ok(types) = subterm_types(ctx, m) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut push = |ctx: SymContext, t: SymTerm| {
        if typecheck_sym(&ctx, &t).is_ok() {
            let fv = t.free_vars();
            out.push((ctx.restrict(&fv), t));
        }
    };
    let mut by_size: Vec<&(Path, SymType)> = types.iter().collect();
    by_size.sort_by_key(|(p, _)| std::cmp::Reverse(m.subterm(p).map(SymTerm::size).unwrap_or(0)));
    for (path, ty) in by_size {
        let sub = m.subterm(path).expect("typed position");
        if sub.is_var() {
            continue;
        }
        if !ty.is_bottom() {
            let v = fresh_ctx_var(ctx, m);
            let new = m.replace_at(path, SymTerm::var(&v)).expect("path exists");
            push(ctx.clone().with(v, ty.clone()), new);
        }
        for (inner, ity) in types.iter().filter(|(q, _)| q.len() > path.len() && q.starts_with(path)) {
            if ity == ty {
                let repl = m.subterm(inner).expect("typed position").clone();
                let binders = m.binders_along(inner);
                let outer_binders = m.binders_along(path);
                let captured = binders[outer_binders.len()..].iter().any(|b| repl.occurs_free(b));
                if !captured {
                    push(ctx.clone(), m.replace_at(path, repl).expect("path exists"));
                }
            }
        }
    }
    out
}

/// `shrink` specialized to typed λSym samples.
pub fn shrink_sym(
    sample: (SymContext, SymTerm),
    fails: impl Fn(&SymContext, &SymTerm) -> bool,
) -> (SymContext, SymTerm) {
    shrink(sample, sym_shrink_candidates, |(c, m)| fails(c, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one_is_a_variable() {
        for seed in 0..20 {
            let cfg = GenConfig::new(seed, 1);
            let (ctx, m, _) = gen_sym(&cfg);
            assert!(m.is_var());
            assert_eq!(ctx.iter().count(), 1);
            let (_, u) = gen_lmm(&cfg);
            assert!(matches!(u, LmmTerm::LVar(_) | LmmTerm::RVar(_)));
        }
    }

    #[test]
    fn samples_typecheck_and_respect_size() {
        let mut g = SymGen::new(GenConfig::new(7, 30));
        let mut h = LmmGen::new(GenConfig::new(7, 30));
        for _ in 0..300 {
            let (ctx, m, ty) = g.sample();
            assert_eq!(typecheck_sym(&ctx, &m).unwrap().0, ty);
            assert!(m.size() <= 30);
            let (seq, u) = h.sample();
            typecheck_lmm(&seq, &u).unwrap();
            assert!(u.size() <= 30);
        }
    }

    #[test]
    fn all_sorts_appear() {
        let mut h = LmmGen::new(GenConfig::new(1, 20));
        let sorts: BTreeSet<_> = (0..200).map(|_| format!("{:?}", h.sample().1.sort())).collect();
        assert_eq!(sorts.len(), 3);
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = GenConfig::new(42, 25);
        assert_eq!(gen_sym(&cfg), gen_sym(&cfg));
        assert_eq!(gen_lmm(&cfg), gen_lmm(&cfg));
    }

    #[test]
    fn shrinking() {
        let mut g = SymGen::new(GenConfig::new(3, 25));
        let (ctx, m) = loop {
            let (ctx, m, ty) = g.sample();
            if !ty.is_bottom() && m.size() > 5 {
                break (ctx, m);
            }
        };
        let (_, small) = shrink_sym((ctx.clone(), m.clone()), |_, _| true);
        assert!(small.is_var());

        let has_star = |_: &SymContext, t: &SymTerm| t.positions().iter().any(|p| matches!(t.subterm(p), Some(SymTerm::Star(..))));
        let (ctx, m) = loop {
            let (ctx, m, _) = g.sample();
            if has_star(&ctx, &m) && (6..=10).contains(&m.size()) {
                break (ctx, m);
            }
        };
        let mut best = m.size();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(ctx.clone(), m.clone())];
        while let Some(s) = stack.pop() {
            for c in sym_shrink_candidates(&s) {
                if has_star(&c.0, &c.1) && seen.insert(c.1.alpha_key()) {
                    best = best.min(c.1.size());
                    stack.push(c);
                }
            }
        }
        let once = shrink_sym((ctx, m), has_star);
        assert_eq!(once.1.size(), best, "{}", once.1);
        let twice = shrink_sym(once.clone(), has_star);
        assert_eq!(once, twice);
    }
}
