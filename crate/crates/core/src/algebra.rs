//! Free associative unital algebra over Z2 or Z2[H1] on a graded alphabet.
//!
//! Elements are canonical sets of terms. A term is a Laurent monomial in the
//! homology variables `t_1..t_r` times a word in the generators. Addition is
//! symmetric difference, so equal terms cancel in pairs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::Rational64;

use crate::error::AlgebraError;

/// Position of a generator in its signature's declaration order.
pub type GenIdx = u32;

/// Exponent vector of a Laurent monomial `t_1^{e_1} ... t_r^{e_r}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMonomial(pub Vec<i64>);

impl GroupMonomial {
    pub fn unit(rank: usize) -> Self {
        GroupMonomial(vec![0; rank])
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &GroupMonomial) -> GroupMonomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        GroupMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> GroupMonomial {
        GroupMonomial(self.0.iter().map(|e| -e).collect())
    }

    /// `sum e_j * mu(t_j)`.
    pub fn maslov(&self, maslov_t: &[i64]) -> i64 {
        self.0.iter().zip(maslov_t).map(|(e, m)| e * m).sum()
    }
}

/// A word in the generators. The empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<GenIdx>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: GenIdx) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

/// Coefficient monomial times a word. Ordered by coefficient, then word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub coeff: GroupMonomial,
    pub word: Word,
}

impl Term {
    pub fn new(coeff: GroupMonomial, word: Word) -> Self {
        Term { coeff, word }
    }

    pub fn unit(rank: usize) -> Self {
        Term::new(GroupMonomial::unit(rank), Word::empty())
    }

    pub fn mul(&self, other: &Term) -> Term {
        Term::new(self.coeff.mul(&other.coeff), self.word.concat(&other.word))
    }

    /// A constant term has the empty word, whatever its coefficient.
    pub fn is_constant(&self) -> bool {
        self.word.is_empty()
    }
}

/// Canonical Z2-linear combination of terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeSet<Term>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one(rank: usize) -> Self {
        Element::from_term(Term::unit(rank))
    }

    pub fn from_term(t: Term) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(t);
        Element { terms }
    }

    pub fn generator(g: GenIdx, rank: usize) -> Self {
        Element::from_term(Term::new(GroupMonomial::unit(rank), Word::letter(g)))
    }

    pub fn monomial(coeff: GroupMonomial, word: Vec<GenIdx>) -> Self {
        Element::from_term(Term::new(coeff, Word(word)))
    }

    /// Sum of terms, cancelling repeats in pairs.
    pub fn from_terms<I: IntoIterator<Item = Term>>(it: I) -> Self {
        let mut e = Element::zero();
        for t in it {
            e.toggle(t);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = Term> {
        self.terms.into_iter()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    /// Adds a single term in place.
    pub fn toggle(&mut self, t: Term) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        Element {
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        }
    }

    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &GroupMonomial) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(t.coeff.mul(c), t.word.clone()))
                .collect(),
        }
    }

    pub fn contains_letter(&self, g: GenIdx) -> bool {
        self.terms.iter().any(|t| t.word.0.contains(&g))
    }

    /// Every term's word avoids the given letters.
    pub fn avoids(&self, mut pred: impl FnMut(GenIdx) -> bool) -> bool {
        self.terms.iter().all(|t| !t.word.0.iter().any(|&g| pred(g)))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && {
            let t = self.terms.iter().next().unwrap();
            t.word.is_empty() && t.coeff.is_unit()
        }
    }

    /// Algebra homomorphism fixing coefficients and sending letter `g` to `images[g]`.
    pub fn substitute(&self, images: &[Element]) -> Element {
        let mut out = Element::zero();
        for t in &self.terms {
            let mut acc = Element::from_term(Term::new(t.coeff.clone(), Word::empty()));
            for &g in &t.word.0 {
                acc = acc.mul(&images[g as usize]);
                if acc.is_zero() {
                    break;
                }
            }
            for s in acc.terms {
                out.toggle(s);
            }
        }
        out
    }

    /// Applies `f` to every term and sums the results.
    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Option<Term>) -> Element {
        Element::from_terms(self.terms.iter().filter_map(&mut f))
    }
}

impl From<BTreeSet<Term>> for Element {
    fn from(terms: BTreeSet<Term>) -> Self {
        Element { terms }
    }
}

/// Degree of a homogeneous element, or `Mixed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Pure(i64),
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub degree: i64,
    pub action: Option<Rational64>,
}

impl Generator {
    pub fn new(id: impl Into<String>, degree: i64) -> Self {
        Generator {
            id: id.into(),
            degree,
            action: None,
        }
    }

    pub fn with_action(mut self, action: Rational64) -> Self {
        self.action = Some(action);
        self
    }
}

/// Ordered graded alphabet plus the grading data of the coefficient ring.
#[derive(Clone, Debug)]
pub struct GradedSignature {
    ambient_dim: u32,
    modulus: u32,
    maslov_t: Vec<i64>,
    generators: Vec<Generator>,
    index: HashMap<String, GenIdx>,
}

impl PartialEq for GradedSignature {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.modulus == other.modulus
            && self.maslov_t == other.maslov_t
            && self.generators == other.generators
    }
}

impl Eq for GradedSignature {}

fn valid_name(id: &str) -> bool {
    !id.is_empty()
        && id != "0"
        && id != "1"
        && !id
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '+' | '*' | '\u{b7}' | '"'))
}

impl GradedSignature {
    pub fn new(
        ambient_dim: u32,
        modulus: u32,
        maslov_t: Vec<i64>,
        generators: Vec<Generator>,
    ) -> Result<Self, AlgebraError> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(&g.id) {
                return Err(AlgebraError::InvalidName(g.id.clone()));
            }
            if let Some(a) = g.action {
                if a <= Rational64::from_integer(0) {
                    return Err(AlgebraError::NonPositiveAction(g.id.clone()));
                }
            }
            if index.insert(g.id.clone(), i as GenIdx).is_some() {
                return Err(AlgebraError::DuplicateGenerator(g.id.clone()));
            }
        }
        Ok(GradedSignature {
            ambient_dim,
            modulus,
            maslov_t,
            generators,
            index,
        })
    }

    /// Z-graded signature over Z2 with no actions.
    pub fn simple(ambient_dim: u32, gens: &[(&str, i64)]) -> Result<Self, AlgebraError> {
        Self::new(
            ambient_dim,
            0,
            Vec::new(),
            gens.iter().map(|&(n, d)| Generator::new(n, d)).collect(),
        )
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn maslov_t(&self) -> &[i64] {
        &self.maslov_t
    }

    pub fn h1_rank(&self) -> usize {
        self.maslov_t.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, g: GenIdx) -> &Generator {
        &self.generators[g as usize]
    }

    pub fn name(&self, g: GenIdx) -> &str {
        &self.generators[g as usize].id
    }

    pub fn lookup(&self, id: &str) -> Result<GenIdx, AlgebraError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownGenerator(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// All generators carry an action value.
    pub fn has_actions(&self) -> bool {
        self.generators.iter().all(|g| g.action.is_some())
    }

    /// Reduces an integer degree into the grading group.
    pub fn reduce(&self, d: i64) -> i64 {
        if self.modulus == 0 {
            d
        } else {
            d.rem_euclid(self.modulus as i64)
        }
    }

    pub fn gen_degree(&self, g: GenIdx) -> i64 {
        self.reduce(self.generators[g as usize].degree)
    }

    /// Unreduced degree of a term.
    pub fn raw_term_degree(&self, t: &Term) -> i64 {
        let letters: i64 = t
            .word
            .0
            .iter()
            .map(|&g| self.generators[g as usize].degree)
            .sum();
        letters - t.coeff.maslov(&self.maslov_t)
    }

    pub fn term_degree(&self, t: &Term) -> i64 {
        self.reduce(self.raw_term_degree(t))
    }

    pub fn degree(&self, e: &Element) -> Result<Degree, AlgebraError> {
        let mut it = e.terms().map(|t| self.term_degree(t));
        let first = it.next().ok_or(AlgebraError::ZeroDegree)?;
        if it.all(|d| d == first) {
            Ok(Degree::Pure(first))
        } else {
            Ok(Degree::Mixed)
        }
    }

    /// Checks that every letter and coefficient of `e` belongs here.
    pub fn validate(&self, e: &Element) -> Result<(), AlgebraError> {
        for t in e.terms() {
            if t.coeff.rank() != self.h1_rank() {
                return Err(AlgebraError::CoefficientRank {
                    expected: self.h1_rank(),
                    found: t.coeff.rank(),
                });
            }
            if let Some(&g) = t.word.0.iter().find(|&&g| g as usize >= self.len()) {
                return Err(AlgebraError::ForeignGenerator(g));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(a.add(b))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(a.mul(b))
    }

    pub fn one(&self) -> Element {
        Element::one(self.h1_rank())
    }

    pub fn gen(&self, g: GenIdx) -> Element {
        Element::generator(g, self.h1_rank())
    }

    /// Element for a generator name.
    pub fn gen_named(&self, id: &str) -> Result<Element, AlgebraError> {
        Ok(self.gen(self.lookup(id)?))
    }

    /// Same letters and degrees; used to compare alphabets across DGAs.
    pub fn same_alphabet(&self, other: &GradedSignature) -> bool {
        self.generators.len() == other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a.id == b.id && a.degree == b.degree)
            && self.maslov_t == other.maslov_t
            && self.modulus == other.modulus
    }

    fn coeff_var(&self, j: usize) -> String {
        if self.h1_rank() == 1 {
            "t".to_string()
        } else {
            format!("t{}", j + 1)
        }
    }

    pub fn format_term(&self, t: &Term) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (j, &e) in t.coeff.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.coeff_var(j)),
                _ => parts.push(format!("{}^{}", self.coeff_var(j), e)),
            }
        }
        parts.extend(t.word.0.iter().map(|&g| self.name(g).to_string()));
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    /// Text form: `0`, `1`, or terms joined by ` + ` in canonical order.
    pub fn format(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        e.terms()
            .map(|t| self.format_term(t))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn parse_coeff_token(&self, tok: &str) -> Option<(usize, i64)> {
        let (var, exp) = match tok.split_once('^') {
            Some((v, e)) => (v, e.parse::<i64>().ok()?),
            None => (tok, 1),
        };
        let rest = var.strip_prefix('t')?;
        let j = if rest.is_empty() {
            if self.h1_rank() != 1 {
                return None;
            }
            0
        } else {
            rest.parse::<usize>().ok()?.checked_sub(1)?
        };
        (j < self.h1_rank()).then_some((j, exp))
    }

    /// Parses the text form produced by [`GradedSignature::format`].
    ///
    /// Letters may be separated by spaces, `*` or a middle dot.
    pub fn parse(&self, s: &str) -> Result<Element, AlgebraError> {
        let err = |reason: &str| AlgebraError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed == "0" {
            return Ok(Element::zero());
        }
        let mut out = Element::zero();
        for chunk in trimmed.split('+') {
            let toks: Vec<&str> = chunk
                .split(|c: char| c.is_whitespace() || c == '*' || c == '\u{b7}')
                .filter(|t| !t.is_empty())
                .collect();
            if toks.is_empty() {
                return Err(err("empty term"));
            }
            let mut coeff = GroupMonomial::unit(self.h1_rank());
            let mut word = Vec::new();
            for tok in toks {
                if let Some(&g) = self.index.get(tok) {
                    word.push(g);
                } else if tok == "1" {
                } else if let Some((j, e)) = self.parse_coeff_token(tok) {
                    coeff.0[j] += e;
                } else {
                    return Err(AlgebraError::UnknownGenerator(tok.to_string()));
                }
            }
            out.toggle(Term::new(coeff, Word(word)));
        }
        Ok(out)
    }

    /// Picks `base`, or `base` followed by enough primes to avoid `taken`.
    pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
        let mut name = base.to_string();
        while taken(&name) {
            name.push('\u{2032}');
        }
        name
    }
}

/// Displays an element with generator names.
pub struct Display<'a>(pub &'a GradedSignature, pub &'a Element);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1))
    }
}
