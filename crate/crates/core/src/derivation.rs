//! Degree +1 derivations on the free graded algebra under the Koszul sign
//! rule, plus the d-squared instance checker.

use std::collections::BTreeMap;
use std::fmt;


use crate::element::{multiply, Element};
use crate::error::AlgebraError;
use crate::generator::{Generator, Word};

/// Anything that assigns differential images to generators. The extension
/// to words and elements is the signed Leibniz rule provided by
/// [`Derivation::apply`].
pub trait Derivation {
    fn generator_image(&self, g: &Generator) -> Result<Element, AlgebraError>;

    /// d(a_1...a_n) = sum_k (-1)^(|a_1|+...+|a_{k-1}|) a_1...d(a_k)...a_n,
    /// extended linearly.
    fn apply(&self, e: &Element) -> Result<Element, AlgebraError> {
        let mut out = Element::zero();
        for (word, coeff) in e.terms() {
            let letters = word.letters();
            let mut sign_exp = 0i64;
            for (k, g) in letters.iter().enumerate() {
                let image = self.generator_image(g)?;
                if !image.is_zero() {
                    let prefix = Element::from_word(Word(letters[..k].to_vec()));
                    let suffix: Element = Element::from_word(Word(letters[k + 1..].to_vec()));
                    let mut term = multiply(&prefix, &image);
                    term = multiply(&term, &suffix);
                    let signed = if sign_exp % 2 == 0 {
                        term.scaled(coeff)
                    } else {
                        term.scaled(&-coeff.clone())
                    };
                    out += signed;
                }
                sign_exp += g.total_degree();
            }
        }
        Ok(out)
    }
}

/// A derivation given by an explicit image table on plain generators.
#[derive(Clone, Default)]
pub struct DerivationSpec {
    images: BTreeMap<Generator, Element>,
}

impl DerivationSpec {
    pub fn new() -> DerivationSpec {
        DerivationSpec::default()
    }

    pub fn with_images(images: impl IntoIterator<Item = (Generator, Element)>) -> DerivationSpec {
        let mut spec = DerivationSpec::new();
        for (g, e) in images {
            spec.set_image(g, e);
        }
        spec
    }

    pub fn set_image(&mut self, g: Generator, image: Element) {
        if let Some(deg) = image.homogeneous_degree() {
            assert_eq!(
                deg,
                g.total_degree() + 1,
                "image of `{g}` must be homogeneous of degree |g|+1"
            );
        }
        self.images.insert(g, image);
    }

    pub fn image(&self, g: &Generator) -> Option<&Element> {
        self.images.get(g)
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.images.keys()
    }
}

impl Derivation for DerivationSpec {
    fn generator_image(&self, g: &Generator) -> Result<Element, AlgebraError> {
        self.images
            .get(g)
            .cloned()
            .ok_or_else(|| AlgebraError::MissingImage(g.name().to_string()))
    }
}

/// All words of total degree exactly `n` over the given generators, in the
/// canonical (length, then letterwise) order. Finite because every
/// generator has total degree at least 2.
pub fn basis_words(n: i64, gens: &[Generator]) -> Vec<Word> {
    assert!(
        gens.iter().all(|g| g.total_degree() >= 2),
        "basis enumeration needs generator degrees >= 2"
    );
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: i64, gens: &[Generator], current: &mut Vec<Generator>, out: &mut Vec<Word>) {
        if n == 0 {
            out.push(Word(current.clone()));
            return;
        }
        for g in gens {
            let d = g.total_degree();
            if d <= n {
                current.push(g.clone());
                rec(n - d, gens, current, out);
                current.pop();
            }
        }
    }
    if n >= 0 {
        rec(n, gens, &mut current, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// Outcome of a d-squared sweep: success, or the first generator on which
/// the differential fails to square to zero, with the residue.
#[derive(Clone, Debug)]
pub enum DSquaredReport {
    Success { checked: usize },
    Failure { generator: Generator, residue: Element },
}

impl DSquaredReport {
    pub fn is_success(&self) -> bool {
        matches!(self, DSquaredReport::Success { .. })
    }
}

impl fmt::Display for DSquaredReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DSquaredReport::Success { checked } => {
                write!(f, "d^2 = 0 on all {checked} generators checked")
            }
            DSquaredReport::Failure { generator, residue } => {
                write!(f, "d^2({generator}) = {residue} != 0")
            }
        }
    }
}

/// Applies the derivation twice to every listed generator of total degree
/// at most `up_to_degree`, optionally reducing residues modulo `modulus`
/// before testing for zero.
pub fn check_d_squared(
    d: &dyn Derivation,
    gens: &[Generator],
    up_to_degree: i64,
    modulus: u64,
) -> Result<DSquaredReport, AlgebraError> {
    let mut checked = 0;
    for g in gens {
        if g.total_degree() > up_to_degree {
            continue;
        }
        let image = d.generator_image(g)?;
        let second = d.apply(&image)?;
        let residue = second.reduced_mod(modulus);
        if !residue.is_zero() {
            return Ok(DSquaredReport::Failure {
                generator: g.clone(),
                residue,
            });
        }
        checked += 1;
    }
    Ok(DSquaredReport::Success { checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn leibniz_even_degree() {
        // d(a*a) with da = 2b, |a| even -> 2(b*a + a*b)
        let a = Generator::cocycle("a", 2);
        let b = Generator::cocycle("b", 3);
        let d = DerivationSpec::with_images([
            (a.clone(), Element::generator(&b).scaled(&BigInt::from(2))),
            (b.clone(), Element::zero()),
        ]);
        let aa = Element::from_word(Word(vec![a.clone(), a.clone()]));
        let res = d.apply(&aa).unwrap();
        let ba = Word(vec![b.clone(), a.clone()]);
        let ab = Word(vec![a.clone(), b.clone()]);
        assert_eq!(res.coefficient(&ba), BigInt::from(2));
        assert_eq!(res.coefficient(&ab), BigInt::from(2));
    }

    #[test]
    fn leibniz_koszul_sign() {
        // d(a*a) with |a| odd, da = c -> c*a - a*c
        let a = Generator::cocycle("a", 3);
        let c = Generator::cocycle("c", 4);
        let d = DerivationSpec::with_images([
            (a.clone(), Element::generator(&c)),
            (c.clone(), Element::zero()),
        ]);
        let aa = Element::from_word(Word(vec![a.clone(), a.clone()]));
        let res = d.apply(&aa).unwrap();
        assert_eq!(res.coefficient(&Word(vec![c.clone(), a.clone()])), BigInt::one());
        assert_eq!(
            res.coefficient(&Word(vec![a.clone(), c.clone()])),
            BigInt::from(-1)
        );
    }

    #[test]
    fn derivative_of_unit_vanishes() {
        let d = DerivationSpec::new();
        assert!(d.apply(&Element::unit()).unwrap().is_zero());
    }

    #[test]
    fn missing_image_errors() {
        let a = Generator::cocycle("a", 2);
        let d = DerivationSpec::new();
        assert_eq!(
            d.apply(&Element::generator(&a)).unwrap_err(),
            AlgebraError::MissingImage("a".into())
        );
    }

    #[test]
    fn basis_word_enumeration() {
        let x = Generator::cocycle("x", 2);
        let y = Generator::cocycle("y", 3);
        assert_eq!(basis_words(0, &[x.clone(), y.clone()]), vec![Word::unit()]);
        let deg6_x_only = basis_words(6, &[x.clone()]);
        assert_eq!(deg6_x_only.len(), 1);
        assert_eq!(deg6_x_only[0].len(), 3);
        let deg5 = basis_words(5, &[x.clone(), y.clone()]);
        assert_eq!(
            deg5,
            vec![
                Word(vec![x.clone(), y.clone()]),
                Word(vec![y.clone(), x.clone()])
            ]
        );
    }

    #[test]
    fn d_squared_on_moore_fragment() {
        // da = 2b, db = 0
        let a = Generator::cocycle("a", 2);
        let b = Generator::cocycle("b", 3);
        let d = DerivationSpec::with_images([
            (a.clone(), Element::generator(&b).scaled(&BigInt::from(2))),
            (b.clone(), Element::zero()),
        ]);
        let report = check_d_squared(&d, &[a.clone(), b.clone()], 10, 0).unwrap();
        assert!(report.is_success());

        // corrupted image: db = a*a has degree 4 = |b|+1, but d^2(a) != 0
        let d_bad = DerivationSpec::with_images([
            (a.clone(), Element::generator(&b).scaled(&BigInt::from(2))),
            (
                b.clone(),
                Element::from_word(Word(vec![a.clone(), a.clone()])),
            ),
        ]);
        let report = check_d_squared(&d_bad, &[a.clone(), b.clone()], 10, 0).unwrap();
        match report {
            DSquaredReport::Failure { generator, .. } => assert_eq!(generator, a),
            _ => panic!("expected failure"),
        }
    }
}
