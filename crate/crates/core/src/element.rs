//! Integer-linear combinations of tensor words: the universal value type of
//! the symbolic layer.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::generator::{Generator, Word};

/// A finite integer combination of words. Zero coefficients are never
/// stored; the term map is ordered by the canonical word order, so display
/// and iteration are deterministic.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, BigInt>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn unit() -> Element {
        Element::from_word(Word::unit())
    }

    pub fn generator(g: &Generator) -> Element {
        Element::from_word(Word::single(g.clone()))
    }

    pub fn from_word(w: Word) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        Element { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, BigInt)>) -> Element {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scaled(&self, factor: &BigInt) -> Element {
        if factor.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    /// Whether every term is homogeneous of one total degree; returns it.
    /// The zero element has any degree (`None` here).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for w in self.terms.keys() {
            match deg {
                None => deg = Some(w.total_degree()),
                Some(d) if d != w.total_degree() => return None,
                _ => {}
            }
        }
        deg
    }

    /// The part spanned by words of length exactly `len`.
    pub fn length_part(&self, len: usize) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == len)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The decomposable part: words of length at least 2.
    pub fn decomposable_part(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() >= 2)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of the length-one words, keyed by generator.
    pub fn linear_coefficients(&self) -> BTreeMap<Generator, BigInt> {
        self.terms
            .iter()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (w.letters()[0].clone(), c.clone()))
            .collect()
    }

    /// Reduces all coefficients modulo m (m = 0 leaves the element intact).
    pub fn reduced_mod(&self, m: u64) -> Element {
        if m == 0 {
            return self.clone();
        }
        let modulus = BigInt::from(m);
        Element::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.clone(), c % &modulus)),
        )
    }

    /// Every generator occurring in any word, including nested occurrences
    /// only at the top level of words (not inside symbol arguments).
    pub fn support_generators(&self) -> impl Iterator<Item = &Generator> {
        self.terms.keys().flat_map(|w| w.letters().iter())
    }
}

/// Concatenation product, extended bilinearly. Concatenation in a free
/// algebra carries no sign.
pub fn multiply(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            out.add_term(wa.concat(wb), ca * cb);
        }
    }
    out
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl AddAssign for Element {
    fn add_assign(&mut self, rhs: Element) {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        self + (-rhs)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        multiply(self, rhs)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() && !w.is_empty() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinearity() {
        let x = Generator::cocycle("x", 2);
        let y = Generator::cocycle("y", 3);
        let two_x_minus_y = Element::generator(&x).scaled(&BigInt::from(2)) - Element::generator(&y);
        let prod = multiply(&two_x_minus_y, &Element::generator(&y));
        let xy = Word(vec![x.clone(), y.clone()]);
        let yy = Word(vec![y.clone(), y.clone()]);
        assert_eq!(prod.coefficient(&xy), BigInt::from(2));
        assert_eq!(prod.coefficient(&yy), BigInt::from(-1));
        assert_eq!(prod.num_terms(), 2);
    }

    #[test]
    fn unit_is_identity() {
        let x = Generator::cocycle("x", 2);
        let e = Element::generator(&x);
        assert_eq!(multiply(&Element::unit(), &e), e);
        assert_eq!(multiply(&e, &Element::unit()), e);
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = Generator::cocycle("x", 2);
        let e = Element::generator(&x) - Element::generator(&x);
        assert!(e.is_zero());
    }

    #[test]
    fn parts() {
        let x = Generator::cocycle("x", 2);
        let y = Generator::cocycle("y", 2);
        let mut e = Element::generator(&x).scaled(&BigInt::from(3));
        e += multiply(&Element::generator(&x), &Element::generator(&y));
        assert_eq!(e.length_part(1).num_terms(), 1);
        assert_eq!(e.decomposable_part().num_terms(), 1);
        let lin = e.linear_coefficients();
        assert_eq!(lin.get(&x), Some(&BigInt::from(3)));
    }
}
