//! Variable names, fresh-name supply and subterm addresses.

use std::collections::BTreeSet;

/// Address of a subterm: the child indices followed from the root.
pub type Path = Vec<usize>;

/// Prefix of names the parsers refuse in user input. The e-translation uses
/// it to turn an r-variable `a` into the λSym variable `!a`.
pub const RESERVED_PREFIX: char = '!';

pub fn is_reserved(name: &str) -> bool {
    name.starts_with(RESERVED_PREFIX)
}

/// The λSym variable standing for the negation of an r-variable.
pub fn barred(name: &str) -> String {
    format!("{RESERVED_PREFIX}{name}")
}

/// Returns `base` with trailing digits stripped and the smallest numeric
/// suffix that avoids every name in `avoid`: `x`, `x0`, `x1`, ...
pub fn fresh_name<S>(base: &str, avoid: &BTreeSet<S>) -> String
where
    S: AsRef<str> + Ord + std::borrow::Borrow<str>,
{
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (0..)
        .map(|i| format!("{stem}{i}"))
        .find(|candidate| !avoid.contains(candidate.as_str()))
        .expect("unbounded supply")
}

/// Supply of names that never repeat and never collide with an initial set.
#[derive(Debug, Clone, Default)]
pub struct NameSupply {
    taken: BTreeSet<String>,
}

impl NameSupply {
    pub fn new<I, S>(taken: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        NameSupply {
            taken: taken.into_iter().map(Into::into).collect(),
        }
    }

    pub fn reserve(&mut self, name: &str) {
        self.taken.insert(name.to_string());
    }

    pub fn fresh(&mut self, base: &str) -> String {
        let name = fresh_name(base, &self.taken);
        self.taken.insert(name.clone());
        name
    }
}

/// `true` when `prefix` addresses an ancestor-or-self of `path`.
pub fn is_prefix(prefix: &[usize], path: &[usize]) -> bool {
    path.len() >= prefix.len() && path[..prefix.len()] == *prefix
}

pub fn join(a: &[usize], b: &[usize]) -> Path {
    let mut p = a.to_vec();
    p.extend_from_slice(b);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_skip_taken_ones() {
        let avoid: BTreeSet<String> = ["y0".to_string(), "y".to_string()].into();
        assert_eq!(fresh_name("y", &avoid), "y1");
        assert_eq!(fresh_name("y12", &avoid), "y1");
        let mut supply = NameSupply::new(["x0"]);
        assert_eq!(supply.fresh("x"), "x1");
        assert_eq!(supply.fresh("x"), "x2");
    }

    #[test]
    fn prefixes() {
        assert!(is_prefix(&[], &[1, 0]));
        assert!(is_prefix(&[1], &[1, 0]));
        assert!(!is_prefix(&[0], &[1, 0]));
        assert!(!is_prefix(&[1, 0, 0], &[1, 0]));
    }
}
