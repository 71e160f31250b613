//! The homotopy G-algebra operation calculus: E-operation symbols, their
//! differential and product expansions, cup-2 monomial differentials, and
//! the augmented cup-1 product.
//!
//! Every sign in this file flows through [`eps`] and [`sign_of`]; nothing
//! else in the crate introduces operation signs. The exponent convention is
//! `eps_i = |a_1| + ... + |a_i| + i` over the left arguments, and it is
//! validated instance-wise by the d-squared suites rather than assumed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::derivation::{check_d_squared, DSquaredReport, Derivation, DerivationSpec};
use crate::element::{multiply, Element};
use crate::error::AlgebraError;
use crate::generator::{GenKind, Generator, Word};

/// `eps_i` over the left argument words.
fn eps(left: &[Word], i: usize) -> i64 {
    left[..i].iter().map(|w| w.total_degree()).sum::<i64>() + i as i64
}

fn sign_of(exp: i64) -> BigInt {
    if exp.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Builds the E-operation symbol `E(left; right)` with a generator-valued
/// right argument, normalizing nested arity-one symbols in the single left
/// slot into right-nested form:
/// `E(E(w; r); v) = E(w; E(r; v))`.
///
/// The associativity axiom relating the two nestings is not part of the
/// materialized structure, so the left-nested form is folded away here;
/// the d-squared suites check the convention on every fragment they touch.
pub fn e_symbol(left: &[Word], right: &Generator) -> Element {
    if left.iter().any(|w| w.is_empty()) {
        return Element::zero();
    }
    if left.len() == 1 && left[0].len() == 1 {
        if let GenKind::ESymbol {
            left: inner_left,
            right: inner_right,
        } = left[0].letters()[0].kind()
        {
            if inner_left.len() == 1 {
                let tail = e_symbol(&[Word::single(inner_right.clone())], right);
                return e_apply(inner_left, &tail);
            }
        }
    }
    Element::generator(&Generator::raw_e_symbol(left.to_vec(), right.clone()))
}

/// The cup-1 product of two generators, `E(x; y)`.
pub fn cup1(x: &Generator, y: &Generator) -> Element {
    e_symbol(&[Word::single(x.clone())], y)
}

/// Applies `E(left; -)` to an arbitrary element, multilinearly. Right
/// arguments that are products split by the product expansion
///
/// `E_k(a_1..a_k; b.c) = sum_i (-1)^{|b|(eps_i + eps_k)}
///                       E_i(a_1..a_i; b) . E_{k-i}(a_{i+1}..a_k; c)`,
///
/// applied with `b` the first letter, recursively. Unit right arguments
/// vanish for arity >= 1.
pub fn e_apply(left: &[Word], right: &Element) -> Element {
    if left.is_empty() {
        return right.clone();
    }
    if left.iter().any(|w| w.is_empty()) {
        return Element::zero();
    }
    let k = left.len();
    let mut out = Element::zero();
    for (word, coeff) in right.terms() {
        if word.is_empty() {
            continue;
        }
        if word.len() == 1 {
            out += e_symbol(left, &word.letters()[0]).scaled(coeff);
            continue;
        }
        let b = &word.letters()[0];
        let rest = Word(word.letters()[1..].to_vec());
        let rest_elem = Element::from_word(rest);
        for i in 0..=k {
            let sgn = sign_of(b.total_degree() * (eps(left, i) + eps(left, k)));
            let head = if i == 0 {
                Element::generator(b)
            } else {
                e_symbol(&left[..i], b)
            };
            let tail = e_apply(&left[i..], &rest_elem);
            out += multiply(&head, &tail).scaled(&(coeff * sgn));
        }
    }
    out
}

/// Product expansion of a single symbol whose right argument is the given
/// word; the arity-k expansion has k+1 terms for a two-letter word.
pub fn e_product_expand(left: &[Word], right: &Word) -> Element {
    e_apply(left, &Element::from_word(right.clone()))
}

/// Differential of the E-operation symbol `E(left; right)`:
///
/// `d E_k(a_1,..,a_k; b) =
///    sum_i (-1)^{eps_{i-1}} E_k(a_1,..,da_i,..,a_k; b)
///  + (-1)^{eps_k} E_k(a_1,..,a_k; db)
///  + sum_{i<k} (-1)^{eps_i} E_{k-1}(a_1,..,a_i a_{i+1},..,a_k; b)
///  + (-1)^{eps_k + |a_k||b|} E_{k-1}(a_1,..,a_{k-1}; b) . a_k
///  + (-1)^{|a_1|} a_1 . E_{k-1}(a_2,..,a_k; b)`.
pub fn e_differential(
    left: &[Word],
    right: &Generator,
    d: &dyn Derivation,
) -> Result<Element, AlgebraError> {
    let k = left.len();
    assert!(k >= 1);
    let mut out = Element::zero();

    for i in 1..=k {
        let image = d.apply(&Element::from_word(left[i - 1].clone()))?;
        if image.is_zero() {
            continue;
        }
        let sgn = sign_of(eps(left, i - 1));
        for (w, c) in image.terms() {
            let mut slots = left.to_vec();
            slots[i - 1] = w.clone();
            out += e_symbol(&slots, right).scaled(&(c * &sgn));
        }
    }

    let right_image = d.generator_image(right)?;
    if !right_image.is_zero() {
        let sgn = sign_of(eps(left, k));
        out += e_apply(left, &right_image).scaled(&sgn);
    }

    for i in 1..k {
        let sgn = sign_of(eps(left, i));
        let mut slots: Vec<Word> = left[..i - 1].to_vec();
        slots.push(left[i - 1].concat(&left[i]));
        slots.extend_from_slice(&left[i + 1..]);
        out += e_symbol(&slots, right).scaled(&sgn);
    }

    let b_deg = right.total_degree();
    let last = &left[k - 1];
    let sgn = sign_of(eps(left, k) + last.total_degree() * b_deg);
    let head = if k == 1 {
        Element::generator(right)
    } else {
        e_symbol(&left[..k - 1], right)
    };
    out += multiply(&head, &Element::from_word(last.clone())).scaled(&sgn);

    let first = &left[0];
    let sgn = sign_of(first.total_degree());
    let tail = if k == 1 {
        Element::generator(right)
    } else {
        e_symbol(&left[1..], right)
    };
    out += multiply(&Element::from_word(first.clone()), &tail).scaled(&sgn);

    Ok(out)
}

/// Differential of a symbol generator of E-operation kind.
pub fn e_symbol_differential(sym: &Generator, d: &dyn Derivation) -> Result<Element, AlgebraError> {
    match sym.kind() {
        GenKind::ESymbol { left, right } => e_differential(left, right, d),
        _ => panic!("`{sym}` is not an E-operation symbol"),
    }
}

/// The unshuffle part of the differential of a cup-2 monomial on cocycle
/// factors:
///
/// `d(a_1 cup2 ... cup2 a_n) = sum (-1)^{|a_{i_1}|+...+|a_{i_k}|}
///     (a_{i_1} cup2 .. cup2 a_{i_k}) cup1 (a_{j_1} cup2 .. cup2 a_{j_l})`
///
/// over proper unshuffles, counted once per distinct value split (repeated
/// factors do not multiply terms).
pub fn cup2_unshuffle_sum(factors: &[Generator]) -> Element {
    let mut distinct: Vec<(Generator, usize)> = Vec::new();
    for g in factors {
        match distinct.last_mut() {
            Some((h, m)) if h == g => *m += 1,
            _ => distinct.push((g.clone(), 1)),
        }
    }
    let radidx: Vec<usize> = distinct.iter().map(|(_, m)| m + 1).collect();
    let total: usize = factors.len();
    let mut counters = vec![0usize; distinct.len()];
    let mut out = Element::zero();
    loop {
        let picked: usize = counters.iter().sum();
        if picked > 0 && picked < total {
            let mut left_side = Vec::new();
            let mut right_side = Vec::new();
            for (idx, (g, m)) in distinct.iter().enumerate() {
                left_side.extend(std::iter::repeat(g.clone()).take(counters[idx]));
                right_side.extend(std::iter::repeat(g.clone()).take(m - counters[idx]));
            }
            let sgn = sign_of(left_side.iter().map(|g| g.total_degree()).sum());
            let lhs = side_monomial(left_side);
            let rhs = side_monomial(right_side);
            out += e_symbol(&[Word::single(lhs)], &rhs).scaled(&sgn);
        }
        // mixed-radix increment
        let mut pos = 0;
        loop {
            if pos == counters.len() {
                return out;
            }
            counters[pos] += 1;
            if counters[pos] < radidx[pos] {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

fn side_monomial(mut gens: Vec<Generator>) -> Generator {
    if gens.len() == 1 {
        gens.pop().unwrap()
    } else {
        Generator::cup2(gens).expect("sides of a nonvanishing cup-2 monomial do not vanish")
    }
}

/// Differential of a cup-2 monomial on cocycle factors. Errors with
/// `NonCocycleBase` when a factor is not a cocycle; the structural
/// differential used inside fragments extends this by the internal terms.
pub fn cup2_power_diff(p: &Generator, d: &dyn Derivation) -> Result<Element, AlgebraError> {
    let GenKind::Cup2 { factors } = p.kind() else {
        panic!("`{p}` is not a cup-2 monomial");
    };
    for g in factors {
        if !d.generator_image(g)?.is_zero() {
            return Err(AlgebraError::NonCocycleBase(g.name().to_string()));
        }
    }
    Ok(cup2_unshuffle_sum(factors))
}

/// Full structural differential of a cup-2 monomial: the unshuffle sum plus
/// one internal term per distinct non-cocycle factor. Replacing one
/// occurrence of `g` by a generator `g'` of its differential contributes
/// the sign of the factors before `g`, times the multiplicity of `g'` in
/// the resulting monomial (the symmetrized substitution count).
pub fn cup2_structural_diff(
    factors: &[Generator],
    d: &dyn Derivation,
) -> Result<Element, AlgebraError> {
    let mut out = cup2_unshuffle_sum(factors);
    let mut seen: Option<&Generator> = None;
    for (pos, g) in factors.iter().enumerate() {
        if seen == Some(g) {
            continue;
        }
        seen = Some(g);
        let image = d.generator_image(g)?;
        if image.is_zero() {
            continue;
        }
        if !image.decomposable_part().is_zero() {
            return Err(AlgebraError::UnsupportedShape(
                format!("cup2 factor {g}"),
                "factor differential has a decomposable part".to_string(),
            ));
        }
        let sgn = sign_of(factors[..pos].iter().map(|f| f.total_degree()).sum());
        for (gprime, c) in image.linear_coefficients() {
            let mut replaced: Vec<Generator> = Vec::with_capacity(factors.len());
            let mut removed = false;
            for f in factors {
                if !removed && f == g {
                    removed = true;
                    continue;
                }
                replaced.push(f.clone());
            }
            replaced.push(gprime.clone());
            let Some(monomial) = Generator::cup2(replaced) else {
                continue;
            };
            let mult = match monomial.kind() {
                GenKind::Cup2 { factors } => {
                    factors.iter().filter(|f| **f == gprime).count() as i64
                }
                _ => unreachable!(),
            };
            out += Element::generator(&monomial).scaled(&(c * &sgn * BigInt::from(mult)));
        }
    }
    Ok(out)
}

/// A derivation that reads plain generators from an explicit table and
/// differentiates operation symbols structurally.
#[derive(Clone, Default)]
pub struct HgaDerivation {
    base: DerivationSpec,
}

impl HgaDerivation {
    pub fn new(base: DerivationSpec) -> HgaDerivation {
        HgaDerivation { base }
    }

    pub fn base(&self) -> &DerivationSpec {
        &self.base
    }
}

impl Derivation for HgaDerivation {
    fn generator_image(&self, g: &Generator) -> Result<Element, AlgebraError> {
        match g.kind() {
            GenKind::Plain => self.base.generator_image(g),
            GenKind::ESymbol { left, right } => e_differential(left, right, self),
            GenKind::Cup2 { factors } => cup2_structural_diff(factors, self),
        }
    }
}

/// Result of the augmented cup-1 product `x bold-cup1 c = eta + x cup1 c`,
/// whose differential has no generator term outside `lambda V`.
#[derive(Clone, Debug)]
pub struct BoldCup1 {
    pub eta: Element,
    pub result: Element,
}

/// Builds the augmented cup-1 product for the two supported shapes of
/// `dx`: entirely inside `lambda V` (then `eta = 0`), or a sum of
/// two-letter words plus a `lambda V` part with both letters of every word
/// having differentials in `lambda V` (then `eta` is the matching sum of
/// arity-2 symbols `(-1)^{|a|} E(a, b; c)`).
pub fn bold_cup1(
    x: &Generator,
    c: &Generator,
    lambda: &BigInt,
    d: &dyn Derivation,
) -> Result<BoldCup1, AlgebraError> {
    assert!(!lambda.is_one(), "lambda must be non-invertible");
    let dx = d.generator_image(x)?;
    let in_lambda_v = |e: &Element| -> bool {
        e.terms().all(|(w, coeff)| {
            w.len() == 1
                && if lambda.is_zero() {
                    coeff.is_zero()
                } else {
                    (coeff % lambda).is_zero()
                }
        })
    };

    let eta = if in_lambda_v(&dx) {
        Element::zero()
    } else {
        let too_long = dx.terms().any(|(w, _)| w.len() > 2);
        if too_long {
            return Err(AlgebraError::UnsupportedShape(
                x.name().to_string(),
                "differential has words of length greater than two".to_string(),
            ));
        }
        if !in_lambda_v(&dx.length_part(1)) {
            return Err(AlgebraError::UnsupportedShape(
                x.name().to_string(),
                "generator part of the differential is not in lambda V".to_string(),
            ));
        }
        let mut eta = Element::zero();
        for (w, coeff) in dx.length_part(2).terms() {
            let a = &w.letters()[0];
            let b = &w.letters()[1];
            for letter in [a, b] {
                if !in_lambda_v(&d.generator_image(letter)?) {
                    return Err(AlgebraError::UnsupportedShape(
                        x.name().to_string(),
                        format!("word letter `{letter}` has differential outside lambda V"),
                    ));
                }
            }
            let sgn = sign_of(a.total_degree());
            let sym = e_symbol(&[Word::single(a.clone()), Word::single(b.clone())], c);
            eta += sym.scaled(&(coeff * sgn));
        }
        eta
    };

    let result = eta.clone() + cup1(x, c);
    let boundary = d.apply(&result)?;
    let linear = boundary.length_part(1) + boundary.length_part(0);
    if !in_lambda_v(&linear) {
        return Err(AlgebraError::BoldCupUnverified(
            format!("{x} bold-cup1 {c}"),
            format!("linear boundary part {linear} escapes lambda V"),
        ));
    }
    Ok(BoldCup1 { eta, result })
}

/// Shapes of E-operation symbols materialized over a set of plain
/// generators, bounded by total degree and arity.
pub struct MaterializeConfig {
    pub max_degree: i64,
    pub max_arity: usize,
    pub max_cup2_exponent: usize,
}

impl Default for MaterializeConfig {
    fn default() -> Self {
        MaterializeConfig {
            max_degree: 16,
            max_arity: 3,
            max_cup2_exponent: 4,
        }
    }
}

/// Enumerates operation symbols over the given plain generators: right
/// nested cup-1 towers, arity-2 and arity-3 symbols with short word
/// arguments, single-slot symbols with two-letter words, cup-2 powers and
/// monomials, and mixed symbol/power combinations.
pub fn materialize_symbols(plain: &[Generator], config: &MaterializeConfig) -> Vec<Generator> {
    let mut symbols: Vec<Generator> = Vec::new();
    let max_deg = config.max_degree;
    let keep = |g: &Generator| g.total_degree() <= max_deg;

    let push = |elem: Element, symbols: &mut Vec<Generator>| {
        for (w, _) in elem.terms() {
            if w.len() == 1 {
                let g = &w.letters()[0];
                if !g.is_plain() && keep(g) && !symbols.contains(g) {
                    symbols.push(g.clone());
                }
            }
        }
    };

    // cup-1 towers: E(g; E(h; ...)) right-nested over the plain generators
    let mut layer: Vec<Generator> = plain.to_vec();
    loop {
        let mut next = Vec::new();
        for g in plain {
            for t in &layer {
                if g.total_degree() + t.total_degree() - 1 <= max_deg {
                    let sym = e_symbol(&[Word::single(g.clone())], t);
                    for (w, _) in sym.terms() {
                        if w.len() == 1 && !w.letters()[0].is_plain() {
                            next.push(w.letters()[0].clone());
                        }
                    }
                }
            }
        }
        next.retain(|s| !symbols.contains(s));
        next.sort();
        next.dedup();
        if next.is_empty() {
            break;
        }
        symbols.extend(next.iter().cloned());
        layer = next;
    }

    // single-slot symbols with two-letter words, arity-2 and arity-3 symbols
    let mut words: Vec<Word> = plain.iter().map(|g| Word::single(g.clone())).collect();
    for a in plain {
        for b in plain {
            words.push(Word(vec![a.clone(), b.clone()]));
        }
    }
    for w in &words {
        for v in plain {
            if w.total_degree() + v.total_degree() - 1 <= max_deg {
                push(e_symbol(&[w.clone()], v), &mut symbols);
            }
        }
    }
    if config.max_arity >= 2 {
        for w1 in &words {
            for w2 in &words {
                for v in plain {
                    let deg = w1.total_degree() + w2.total_degree() + v.total_degree() - 2;
                    if deg <= max_deg {
                        push(e_symbol(&[w1.clone(), w2.clone()], v), &mut symbols);
                    }
                }
            }
        }
    }
    if config.max_arity >= 3 {
        for g1 in plain {
            for g2 in plain {
                for g3 in plain {
                    for v in plain {
                        let deg = g1.total_degree()
                            + g2.total_degree()
                            + g3.total_degree()
                            + v.total_degree()
                            - 3;
                        if deg <= max_deg {
                            push(
                                e_symbol(
                                    &[
                                        Word::single(g1.clone()),
                                        Word::single(g2.clone()),
                                        Word::single(g3.clone()),
                                    ],
                                    v,
                                ),
                                &mut symbols,
                            );
                        }
                    }
                }
            }
        }
    }

    // cup-2 powers and monomials on even-degree generators, with at most
    // one odd factor
    let mut cup2_gens: Vec<Generator> = Vec::new();
    for g in plain {
        if g.total_degree() % 2 == 0 {
            for n in 2..=config.max_cup2_exponent {
                if let Some(p) = Generator::cup2_power(g, n) {
                    if keep(&p) {
                        cup2_gens.push(p);
                    }
                }
            }
        }
    }
    for (i, g) in plain.iter().enumerate() {
        for h in plain.iter().skip(i + 1) {
            if g.total_degree() % 2 == 0 || h.total_degree() % 2 == 0 {
                if let Some(p) = Generator::cup2(vec![g.clone(), h.clone()]) {
                    if keep(&p) {
                        cup2_gens.push(p.clone());
                    }
                    if g.total_degree() % 2 == 0 {
                        if let Some(q) = Generator::cup2(vec![g.clone(), g.clone(), h.clone()]) {
                            if keep(&q) {
                                cup2_gens.push(q);
                            }
                        }
                    }
                }
            }
        }
    }
    for (i, g) in plain.iter().enumerate() {
        for h in plain.iter().skip(i + 1) {
            for f in plain.iter() {
                if f != g && f != h && [g, h, f].iter().filter(|x| x.total_degree() % 2 != 0).count() <= 1 {
                    if let Some(p) = Generator::cup2(vec![g.clone(), h.clone(), f.clone()]) {
                        if keep(&p) && !cup2_gens.contains(&p) {
                            cup2_gens.push(p);
                        }
                    }
                }
            }
        }
    }
    cup2_gens.sort();
    cup2_gens.dedup();

    // mixed: symbols over the cup-2 monomials
    for p in &cup2_gens {
        for g in plain {
            if p.total_degree() + g.total_degree() - 1 <= max_deg {
                push(e_symbol(&[Word::single(p.clone())], g), &mut symbols);
                push(e_symbol(&[Word::single(g.clone())], p), &mut symbols);
            }
        }
    }
    symbols.extend(cup2_gens);

    symbols.retain(keep);
    symbols.sort();
    symbols.dedup();
    symbols
}

/// Materializes symbols over the fragment's plain cocycle generators and
/// checks that the structural differential squares to zero on each.
pub fn verify_hga_fragment(
    plain: &[Generator],
    d: &dyn Derivation,
    up_to_degree: i64,
) -> Result<DSquaredReport, AlgebraError> {
    let config = MaterializeConfig {
        max_degree: up_to_degree,
        ..MaterializeConfig::default()
    };
    let mut gens = plain.to_vec();
    gens.extend(materialize_symbols(plain, &config));
    check_d_squared(d, &gens, up_to_degree, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_cocycles(degs: &[(&str, i64)]) -> (Vec<Generator>, HgaDerivation) {
        let gens: Vec<Generator> = degs
            .iter()
            .map(|(n, d)| Generator::cocycle(*n, *d))
            .collect();
        let spec = DerivationSpec::with_images(
            gens.iter().map(|g| (g.clone(), Element::zero())),
        );
        (gens, HgaDerivation::new(spec))
    }

    #[test]
    fn hirsch_formula_for_cocycles() {
        // d(a cup1 b) with da = db = 0 has exactly the two product terms
        let (gens, d) = free_cocycles(&[("a", 2), ("b", 2)]);
        let (a, b) = (&gens[0], &gens[1]);
        let sym = Generator::raw_e_symbol(vec![Word::single(a.clone())], b.clone());
        let diff = e_symbol_differential(&sym, &d).unwrap();
        // (-1)^{eps_1 + |a||b|} b.a + (-1)^{|a|} a.b with |a| = |b| = 2:
        // eps_1 = 3, so -(b.a) + a.b
        let ba = Word(vec![b.clone(), a.clone()]);
        let ab = Word(vec![a.clone(), b.clone()]);
        assert_eq!(diff.coefficient(&ba), BigInt::from(-1));
        assert_eq!(diff.coefficient(&ab), BigInt::from(1));
        assert_eq!(diff.num_terms(), 2);
    }

    #[test]
    fn full_hirsch_formula_with_differentials() {
        // k = 1, |a| = |b| = 2 with nonzero da, db: four-term expansion
        let a = Generator::cocycle("a", 2);
        let b = Generator::cocycle("b", 2);
        let u = Generator::cocycle("u", 3);
        let v = Generator::cocycle("v", 3);
        let spec = DerivationSpec::with_images([
            (a.clone(), Element::generator(&u)),
            (b.clone(), Element::generator(&v)),
            (u.clone(), Element::zero()),
            (v.clone(), Element::zero()),
        ]);
        let d = HgaDerivation::new(spec);
        let diff = e_differential(&[Word::single(a.clone())], &b, &d).unwrap();
        // du cup1 b - a cup1 dv - b.a + a.b  (eps_1 = 3 odd)
        let e_ub = Generator::raw_e_symbol(vec![Word::single(u.clone())], b.clone());
        let e_av = Generator::raw_e_symbol(vec![Word::single(a.clone())], v.clone());
        assert_eq!(diff.coefficient(&Word::single(e_ub)), BigInt::one());
        assert_eq!(diff.coefficient(&Word::single(e_av)), BigInt::from(-1));
        assert_eq!(
            diff.coefficient(&Word(vec![b.clone(), a.clone()])),
            BigInt::from(-1)
        );
        assert_eq!(
            diff.coefficient(&Word(vec![a.clone(), b.clone()])),
            BigInt::one()
        );
        assert_eq!(diff.num_terms(), 4);
    }

    #[test]
    fn product_expansion_counts() {
        let (gens, _) = free_cocycles(&[("a", 2), ("b", 2), ("c", 2), ("x", 2), ("y", 2)]);
        let (a, b, c, x, y) = (&gens[0], &gens[1], &gens[2], &gens[3], &gens[4]);
        // k = 0: E(; b.c) = b.c
        let bc = Word(vec![b.clone(), c.clone()]);
        assert_eq!(e_apply(&[], &Element::from_word(bc.clone())), Element::from_word(bc.clone()));
        // k = 1: a cup1 (b.c) = (a cup1 b).c + (-1)^{|b|(|a|+1)} b.(a cup1 c)
        let expanded = e_product_expand(&[Word::single(a.clone())], &bc);
        assert_eq!(expanded.num_terms(), 2);
        // k = 2 split enumeration has exactly 3 terms
        let expanded = e_product_expand(
            &[Word::single(x.clone()), Word::single(y.clone())],
            &bc,
        );
        assert_eq!(expanded.num_terms(), 3);
    }

    #[test]
    fn cup2_power_convolution() {
        let (gens, d) = free_cocycles(&[("a", 2)]);
        let a = &gens[0];
        for n in 2..=5usize {
            let p = Generator::cup2_power(a, n).unwrap();
            let diff = cup2_power_diff(&p, &d).unwrap();
            let mut expected = Element::zero();
            for k in 1..n {
                let lhs = Generator::cup2_power(a, k).unwrap();
                let rhs = Generator::cup2_power(a, n - k).unwrap();
                expected += e_symbol(&[Word::single(lhs)], &rhs);
            }
            assert_eq!(diff, expected, "convolution mismatch at n = {n}");
        }
    }

    #[test]
    fn cup2_distinct_two_factors() {
        let (gens, d) = free_cocycles(&[("a", 2), ("b", 4)]);
        let (a, b) = (&gens[0], &gens[1]);
        let p = Generator::cup2(vec![a.clone(), b.clone()]).unwrap();
        let diff = cup2_power_diff(&p, &d).unwrap();
        // two proper unshuffles with signs (-1)^{|a|}, (-1)^{|b|}
        let ab = e_symbol(&[Word::single(a.clone())], b);
        let ba = e_symbol(&[Word::single(b.clone())], a);
        assert_eq!(diff, ab + ba);
        // d^2 = 0 under the expansion of the differential formula
        let d2 = d.apply(&d.generator_image(&p).unwrap()).unwrap();
        assert!(d2.is_zero(), "d^2(a cup2 b) = {d2}");
    }

    #[test]
    fn cup2_non_cocycle_errors() {
        let a = Generator::cocycle("a", 2);
        let b = Generator::cocycle("b", 3);
        let spec = DerivationSpec::with_images([
            (a.clone(), Element::generator(&b)),
            (b.clone(), Element::zero()),
        ]);
        let d = HgaDerivation::new(spec);
        let p = Generator::cup2_power(&a, 2).unwrap();
        assert_eq!(
            cup2_power_diff(&p, &d).unwrap_err(),
            AlgebraError::NonCocycleBase("a".into())
        );
    }

    #[test]
    fn brace_normalization_rewrites_left_nesting() {
        let (gens, _) = free_cocycles(&[("x", 2), ("y", 2), ("z", 2)]);
        let (x, y, z) = (&gens[0], &gens[1], &gens[2]);
        let xy = Generator::raw_e_symbol(vec![Word::single(x.clone())], y.clone());
        let left_nested = e_symbol(&[Word::single(xy)], z);
        let yz = Generator::raw_e_symbol(vec![Word::single(y.clone())], z.clone());
        let right_nested = Generator::raw_e_symbol(vec![Word::single(x.clone())], yz);
        assert_eq!(left_nested, Element::generator(&right_nested));
    }

    #[test]
    fn d_squared_on_triple_cup2() {
        let (gens, d) = free_cocycles(&[("a", 2), ("b", 2), ("c", 4)]);
        let p = Generator::cup2(vec![gens[0].clone(), gens[1].clone(), gens[2].clone()]).unwrap();
        let d2 = d.apply(&d.generator_image(&p).unwrap()).unwrap();
        assert!(d2.is_zero(), "d^2(a cup2 b cup2 c) = {d2}");
    }

    #[test]
    fn odd_power_vanishes_and_mixed_powers_close() {
        let (gens, d) = free_cocycles(&[("a", 2), ("t", 3)]);
        let (a, t) = (&gens[0], &gens[1]);
        assert!(Generator::cup2_power(t, 2).is_none());
        let mixed = Generator::cup2(vec![a.clone(), a.clone(), t.clone()]).unwrap();
        let d2 = d.apply(&d.generator_image(&mixed).unwrap()).unwrap();
        assert!(d2.is_zero(), "d^2(a cup2 a cup2 t) = {d2}");
    }

    #[test]
    fn bold_cup1_shapes() {
        // dx in lambda V: eta = 0
        let x = Generator::plain("x", -1, 4);
        let v = Generator::cocycle("v", 4);
        let c = Generator::cocycle("c", 4);
        let two = BigInt::from(2);
        let spec = DerivationSpec::with_images([
            (x.clone(), Element::generator(&v).scaled(&two)),
            (v.clone(), Element::zero()),
            (c.clone(), Element::zero()),
        ]);
        let d = HgaDerivation::new(spec);
        let out = bold_cup1(&x, &c, &two, &d).unwrap();
        assert!(out.eta.is_zero());
        assert_eq!(out.result, cup1(&x, &c));

        // dx = a.b + 2v: eta = (-1)^{|a|} E(a,b;c)
        let a = Generator::cocycle("a", 2);
        let b = Generator::cocycle("b", 3);
        let x2 = Generator::plain("x2", -1, 7);
        let v2 = Generator::plain("v2", 0, 6);
        let mut dx = Element::from_word(Word(vec![a.clone(), b.clone()]));
        dx += Element::generator(&v2).scaled(&two);
        let spec = DerivationSpec::with_images([
            (x2.clone(), dx),
            (a.clone(), Element::zero()),
            (b.clone(), Element::zero()),
            (v2.clone(), Element::zero()),
            (c.clone(), Element::zero()),
        ]);
        let d = HgaDerivation::new(spec);
        let out = bold_cup1(&x2, &c, &two, &d).unwrap();
        let expected = e_symbol(
            &[Word::single(a.clone()), Word::single(b.clone())],
            &c,
        );
        assert_eq!(out.eta, expected);

        // unsupported: a two-letter word whose letters have decomposable
        // differentials
        let w = Generator::plain("w", -1, 7);
        let bad = Generator::plain("bad", 0, 4);
        let spec = DerivationSpec::with_images([
            (
                w.clone(),
                Element::from_word(Word(vec![bad.clone(), b.clone()])),
            ),
            (
                bad.clone(),
                Element::from_word(Word(vec![a.clone(), b.clone()])).length_part(9) // zero
                    + Element::from_word(Word(vec![a.clone(), a.clone()])) - Element::from_word(Word(vec![a.clone(), a.clone()]))
                    + Element::generator(&c) + Element::from_word(Word(vec![a.clone(), a.clone()])),
            ),
            (b.clone(), Element::zero()),
            (a.clone(), Element::zero()),
            (c.clone(), Element::zero()),
        ]);
        let d = HgaDerivation::new(spec);
        assert!(matches!(
            bold_cup1(&w, &c, &two, &d),
            Err(AlgebraError::UnsupportedShape(_, _))
        ));
    }

    #[test]
    fn verify_fragment_and_negative_control() {
        let (gens, d) = free_cocycles(&[("x", 2)]);
        let report = verify_hga_fragment(&gens, &d, 10).unwrap();
        assert!(report.is_success(), "{report}");

        // corrupt the image of one symbol through a wrapper derivation
        struct Corrupted<'a> {
            inner: &'a HgaDerivation,
            victim: Generator,
        }
        impl Derivation for Corrupted<'_> {
            fn generator_image(&self, g: &Generator) -> Result<Element, AlgebraError> {
                let img = self.inner.generator_image(g)?;
                if *g == self.victim {
                    Ok(-img)
                } else {
                    Ok(img)
                }
            }
        }
        let x = &gens[0];
        let xx = Generator::raw_e_symbol(vec![Word::single(x.clone())], x.clone());
        let tower = Generator::raw_e_symbol(vec![Word::single(x.clone())], xx.clone());
        let bad = Corrupted {
            inner: &d,
            victim: xx.clone(),
        };
        // d^2 through the corrupted image no longer cancels on the tower
        let residue = bad.apply(&bad.generator_image(&tower).unwrap()).unwrap();
        assert!(!residue.is_zero());
    }
}
