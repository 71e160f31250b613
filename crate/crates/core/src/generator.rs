//! Free-algebra generators with resolution bidegrees, including the
//! operation symbols (E-operations and cup-2 monomials) materialized as
//! generators in their own right.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// The role of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// An ordinary named generator.
    Plain,
    /// An E-operation symbol `E(w_1,...,w_k; v)` with word-valued left
    /// arguments and a generator-valued right argument. Arity is
    /// `left.len() >= 1`. `E(w; v)` with one argument is the cup-1 product.
    ESymbol { left: Vec<Word>, right: Generator },
    /// A cup-2 monomial on a sorted multiset of at least two factors;
    /// a repeated factor encodes a cup-2 power.
    Cup2 { factors: Vec<Generator> },
}

#[derive(Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct GenData {
    name: String,
    res_degree: i64,
    int_degree: i64,
    kind: GenKind,
}

/// A generator of the free graded algebra. Cheap to clone; equality and
/// ordering go through the canonical name, which is injective on the
/// structure.
#[derive(Clone)]
pub struct Generator(Arc<GenData>);

impl Generator {
    /// A plain generator with resolution degree `res <= 0` and internal
    /// degree `int >= 0`. Total degree must be at least 2 (the algebras in
    /// play are 1-reduced).
    pub fn plain(name: impl Into<String>, res_degree: i64, int_degree: i64) -> Generator {
        let name = name.into();
        assert!(res_degree <= 0, "resolution degree must be <= 0");
        assert!(int_degree >= 0, "internal degree must be >= 0");
        assert!(
            res_degree + int_degree >= 2,
            "generator `{name}` must have total degree >= 2"
        );
        Generator(Arc::new(GenData {
            name,
            res_degree,
            int_degree,
            kind: GenKind::Plain,
        }))
    }

    /// A plain generator in resolution degree 0 with the given total degree.
    pub fn cocycle(name: impl Into<String>, total_degree: i64) -> Generator {
        Generator::plain(name, 0, total_degree)
    }

    pub(crate) fn raw_e_symbol(left: Vec<Word>, right: Generator) -> Generator {
        assert!(!left.is_empty(), "E-symbol arity must be >= 1");
        assert!(
            left.iter().all(|w| !w.is_empty()),
            "E-symbol left arguments must not be the unit"
        );
        let k = left.len() as i64;
        let res = left.iter().map(|w| w.res_degree()).sum::<i64>() + right.res_degree() - k;
        let int = left.iter().map(|w| w.int_degree()).sum::<i64>() + right.int_degree();
        let args: Vec<String> = left.iter().map(|w| w.name()).collect();
        let name = format!("E({};{})", args.join(","), right.name());
        Generator(Arc::new(GenData {
            name,
            res_degree: res,
            int_degree: int,
            kind: GenKind::ESymbol { left, right },
        }))
    }

    /// A cup-2 monomial on the given factors (at least two). Factors are
    /// flattened (nested cup-2 monomials merge their factor lists) and
    /// sorted. Returns `None` when the monomial vanishes, which happens
    /// exactly when an odd-degree factor repeats.
    pub fn cup2(factors: Vec<Generator>) -> Option<Generator> {
        let mut flat: Vec<Generator> = Vec::new();
        for f in factors {
            match &f.0.kind {
                GenKind::Cup2 { factors: inner } => flat.extend(inner.iter().cloned()),
                _ => flat.push(f),
            }
        }
        assert!(flat.len() >= 2, "cup-2 monomial needs at least two factors");
        flat.sort();
        for pair in flat.windows(2) {
            if pair[0] == pair[1] && pair[0].total_degree() % 2 != 0 {
                return None;
            }
        }
        let n = flat.len() as i64;
        let res = flat.iter().map(|g| g.res_degree()).sum::<i64>() - 2 * (n - 1);
        let int = flat.iter().map(|g| g.int_degree()).sum::<i64>();
        let names: Vec<&str> = flat.iter().map(|g| g.name()).collect();
        let name = format!("cup2({})", names.join(","));
        Some(Generator(Arc::new(GenData {
            name,
            res_degree: res,
            int_degree: int,
            kind: GenKind::Cup2 { factors: flat },
        })))
    }

    /// The cup-2 power `g^{cup2 n}`; `n = 1` is the generator itself.
    pub fn cup2_power(g: &Generator, n: usize) -> Option<Generator> {
        assert!(n >= 1);
        if n == 1 {
            return Some(g.clone());
        }
        Generator::cup2(vec![g.clone(); n])
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn res_degree(&self) -> i64 {
        self.0.res_degree
    }

    pub fn int_degree(&self) -> i64 {
        self.0.int_degree
    }

    pub fn total_degree(&self) -> i64 {
        self.0.res_degree + self.0.int_degree
    }

    pub fn kind(&self) -> &GenKind {
        &self.0.kind
    }

    pub fn is_plain(&self) -> bool {
        matches!(self.0.kind, GenKind::Plain)
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Generator {}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}

impl std::hash::Hash for Generator {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.name)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.name)
    }
}

/// A word in the free tensor algebra: an ordered list of generators. The
/// empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn single(g: Generator) -> Word {
        Word(vec![g])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|g| g.total_degree()).sum()
    }

    pub fn res_degree(&self) -> i64 {
        self.0.iter().map(|g| g.res_degree()).sum()
    }

    pub fn int_degree(&self) -> i64 {
        self.0.iter().map(|g| g.int_degree()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters)
    }

    pub fn name(&self) -> String {
        if self.is_empty() {
            "1".to_string()
        } else {
            self.0
                .iter()
                .map(|g| g.name())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Canonical term order: first by length, then letterwise by name.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_of_symbols() {
        let x = Generator::cocycle("x", 2);
        let y = Generator::cocycle("y", 3);
        let e = Generator::raw_e_symbol(vec![Word::single(x.clone())], y.clone());
        assert_eq!(e.total_degree(), 4); // 2 + 3 - 1
        assert_eq!(e.res_degree(), -1);
        assert_eq!(e.int_degree(), 5);

        let c = Generator::cup2(vec![x.clone(), x.clone()]).unwrap();
        assert_eq!(c.total_degree(), 2); // 2+2 - 2
        assert_eq!(c.res_degree(), -2);

        // odd-degree square vanishes
        assert!(Generator::cup2(vec![y.clone(), y.clone()]).is_none());
        // distinct odd factors do not
        let z = Generator::cocycle("z", 3);
        assert!(Generator::cup2(vec![y, z]).is_some());
    }

    #[test]
    fn cup2_flattens_and_sorts() {
        let a = Generator::cocycle("a", 2);
        let b = Generator::cocycle("b", 2);
        let ab = Generator::cup2(vec![b.clone(), a.clone()]).unwrap();
        let ba = Generator::cup2(vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(ab, ba);
        let p = Generator::cup2(vec![ab, a.clone()]).unwrap();
        assert_eq!(p.name(), "cup2(a,a,b)");
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let x = Generator::cocycle("x", 2);
        let y = Generator::cocycle("y", 3);
        let xy = Word(vec![x.clone(), y.clone()]);
        let yx = Word(vec![y.clone(), x.clone()]);
        let long = Word(vec![x.clone(), x.clone(), x.clone()]);
        assert!(Word::single(y) > Word::single(x));
        assert!(xy < yx);
        assert!(yx < long);
    }
}
