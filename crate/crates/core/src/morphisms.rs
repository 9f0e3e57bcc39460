//! Elementary and tame automorphisms, stabilization, and the two constructive
//! isomorphisms: the handle slide `a ↦ a + A b` and destabilization.

use std::collections::BTreeMap;

use crate::algebra::{Degree, Element, GenIdx, Generator, GradedSignature, GroupMonomial, Term, Word};
use crate::dga::Dga;
use crate::error::MorphismError;

/// `a_i ↦ A_i a_i` for `i != target` and `a_target ↦ A_target a_target + shift`.
///
/// Missing entries of `unit_coeffs` are the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryAuto {
    pub target: GenIdx,
    pub unit_coeffs: BTreeMap<GenIdx, GroupMonomial>,
    pub shift: Element,
}

impl ElementaryAuto {
    pub fn shift(target: GenIdx, shift: Element) -> Self {
        ElementaryAuto {
            target,
            unit_coeffs: BTreeMap::new(),
            shift,
        }
    }

    fn coeff(&self, g: GenIdx, rank: usize) -> GroupMonomial {
        self.unit_coeffs
            .get(&g)
            .cloned()
            .unwrap_or_else(|| GroupMonomial::unit(rank))
    }

    /// Images of all generators of `sig`.
    pub fn images(&self, sig: &GradedSignature) -> Vec<Element> {
        let rank = sig.h1_rank();
        (0..sig.len() as GenIdx)
            .map(|g| {
                let mut img = Element::monomial(self.coeff(g, rank), vec![g]);
                if g == self.target {
                    img.add_assign(&self.shift);
                }
                img
            })
            .collect()
    }

    pub fn apply(&self, sig: &GradedSignature, e: &Element) -> Element {
        if self.unit_coeffs.is_empty() {
            // Only the target letter moves.
            if !e.contains_letter(self.target) {
                return e.clone();
            }
        }
        e.substitute(&self.images(sig))
    }

    pub fn validate(&self, sig: &GradedSignature) -> Result<(), MorphismError> {
        if self.target as usize >= sig.len() {
            return Err(crate::error::AlgebraError::ForeignGenerator(self.target).into());
        }
        sig.validate(&self.shift)?;
        let name = sig.name(self.target).to_string();
        if self.shift.contains_letter(self.target) {
            return Err(MorphismError::ShiftContainsTarget(name));
        }
        if !self.shift.is_zero()
            && sig.degree(&self.shift)? != Degree::Pure(sig.gen_degree(self.target))
        {
            return Err(MorphismError::DegreeMismatch { target: name });
        }
        for (&g, c) in &self.unit_coeffs {
            if g as usize >= sig.len() {
                return Err(crate::error::AlgebraError::ForeignGenerator(g).into());
            }
            if c.rank() != sig.h1_rank() {
                return Err(crate::error::AlgebraError::CoefficientRank {
                    expected: sig.h1_rank(),
                    found: c.rank(),
                }
                .into());
            }
            if sig.reduce(c.maslov(sig.maslov_t())) != 0 {
                return Err(MorphismError::DegreeMismatch {
                    target: sig.name(g).to_string(),
                });
            }
        }
        Ok(())
    }

    /// Closed-form inverse: `a_i ↦ A_i^{-1} a_i`, `a_j ↦ A_j^{-1}(a_j + ψ(u))`.
    pub fn inverse(&self, sig: &GradedSignature) -> ElementaryAuto {
        let rank = sig.h1_rank();
        let inv: BTreeMap<GenIdx, GroupMonomial> = self
            .unit_coeffs
            .iter()
            .map(|(&g, c)| (g, c.inverse()))
            .collect();
        let scaled_letters = ElementaryAuto {
            target: self.target,
            unit_coeffs: inv.clone(),
            shift: Element::zero(),
        };
        let psi_u = scaled_letters.apply(sig, &self.shift);
        ElementaryAuto {
            target: self.target,
            shift: psi_u.scale(&self.coeff(self.target, rank).inverse()),
            unit_coeffs: inv,
        }
    }

    fn relabeled(&self, map: &[GenIdx]) -> ElementaryAuto {
        ElementaryAuto {
            target: map[self.target as usize],
            unit_coeffs: self
                .unit_coeffs
                .iter()
                .map(|(&g, c)| (map[g as usize], c.clone()))
                .collect(),
            shift: rename(&self.shift, map),
        }
    }
}

fn rename(e: &Element, map: &[GenIdx]) -> Element {
    e.map_terms(|t| {
        Some(Term::new(
            t.coeff.clone(),
            Word(t.word.0.iter().map(|&g| map[g as usize]).collect()),
        ))
    })
}

/// Relabel from the domain alphabet onto the codomain alphabet, then a chain of
/// elementary automorphisms of the codomain applied first to last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameMorphism {
    pub relabel: Vec<GenIdx>,
    pub chain: Vec<ElementaryAuto>,
}

impl TameMorphism {
    pub fn identity(n: usize) -> Self {
        TameMorphism {
            relabel: (0..n as GenIdx).collect(),
            chain: Vec::new(),
        }
    }

    pub fn elementary(n: usize, auto: ElementaryAuto) -> Self {
        TameMorphism {
            relabel: (0..n as GenIdx).collect(),
            chain: vec![auto],
        }
    }

    /// Checks that the relabel is a degree preserving bijection and each
    /// elementary automorphism is graded.
    pub fn validate(&self, from: &GradedSignature, to: &GradedSignature) -> Result<(), MorphismError> {
        if self.relabel.len() != from.len() || from.len() != to.len() {
            return Err(MorphismError::BadRelabel(format!(
                "{} generators map onto {}",
                from.len(),
                to.len()
            )));
        }
        if from.maslov_t() != to.maslov_t() {
            return Err(MorphismError::BadRelabel("coefficient rings differ".into()));
        }
        let mut seen = vec![false; to.len()];
        for (g, &h) in self.relabel.iter().enumerate() {
            let h = h as usize;
            if h >= to.len() || std::mem::replace(&mut seen[h], true) {
                return Err(MorphismError::BadRelabel(format!(
                    "`{}` has no distinct image",
                    from.name(g as GenIdx)
                )));
            }
            if to.reduce(from.generator(g as GenIdx).degree) != to.gen_degree(h as GenIdx) {
                return Err(MorphismError::BadRelabel(format!(
                    "`{}` and `{}` have different degrees",
                    from.name(g as GenIdx),
                    to.name(h as GenIdx)
                )));
            }
        }
        for a in &self.chain {
            a.validate(to)?;
        }
        Ok(())
    }

    /// Image of a domain element; `to` is the codomain signature.
    pub fn apply(&self, to: &GradedSignature, e: &Element) -> Element {
        let mut x = rename(e, &self.relabel);
        for a in &self.chain {
            x = a.apply(to, &x);
        }
        x
    }

    pub fn apply_checked(
        &self,
        from: &GradedSignature,
        to: &GradedSignature,
        e: &Element,
    ) -> Result<Element, MorphismError> {
        from.validate(e)?;
        self.validate(from, to)?;
        Ok(self.apply(to, e))
    }

    /// Inverse morphism from `to` back to the domain.
    pub fn inverse(&self, to: &GradedSignature) -> TameMorphism {
        let mut back = vec![0; self.relabel.len()];
        for (g, &h) in self.relabel.iter().enumerate() {
            back[h as usize] = g as GenIdx;
        }
        let chain = self
            .chain
            .iter()
            .rev()
            .map(|a| a.inverse(to).relabeled(&back))
            .collect();
        TameMorphism {
            relabel: back,
            chain,
        }
    }
}

/// `φ(∂_from c) = ∂_to(φ(c))` for every generator `c`.
pub fn verify_chain_iso(phi: &TameMorphism, from: &Dga, to: &Dga) -> Result<bool, MorphismError> {
    phi.validate(from.sig(), to.sig())?;
    Ok(first_chain_failure(phi, from, to).is_none())
}

fn first_chain_failure(phi: &TameMorphism, from: &Dga, to: &Dga) -> Option<GenIdx> {
    (0..from.sig().len() as GenIdx).find(|&c| {
        let lhs = phi.apply(to.sig(), from.diff(c));
        let rhs = to.d(&phi.apply(to.sig(), &from.sig().gen(c)));
        lhs != rhs
    })
}

/// Adjoins `e1` of degree `i` and `e2` of degree `i - 1` with `∂e1 = e2`.
///
/// The new generators are appended last; names get primes if taken.
pub fn stabilize(d: &Dga, i: i64) -> Dga {
    let sig = d.sig();
    let e1 = GradedSignature::fresh_name("e1", |n| sig.contains(n));
    let e2 = GradedSignature::fresh_name("e2", |n| sig.contains(n) || n == e1);
    let n = sig.len() as GenIdx;
    d.extended(vec![Generator::new(e1, i), Generator::new(e2, i - 1)], |s| {
        vec![s.gen(n + 1), Element::zero()]
    })
    .expect("fresh names are valid")
}

/// Data for a stable tame isomorphism between two DGAs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableTameWitness {
    pub stabilizations_left: Vec<i64>,
    pub stabilizations_right: Vec<i64>,
    pub morphism: TameMorphism,
}

impl StableTameWitness {
    pub fn stabilized(&self, left: &Dga, right: &Dga) -> (Dga, Dga) {
        let l = self.stabilizations_left.iter().fold(left.clone(), |d, &i| stabilize(&d, i));
        let r = self.stabilizations_right.iter().fold(right.clone(), |d, &i| stabilize(&d, i));
        (l, r)
    }

    pub fn verify(&self, left: &Dga, right: &Dga) -> Result<bool, MorphismError> {
        let (l, r) = self.stabilized(left, right);
        verify_chain_iso(&self.morphism, &l, &r)
    }
}

/// Slides `a` over `shift = A b`. Returns `∂_+` and `φ_a` with `φ_a(a) = a + A b`.
pub fn handle_slide_transport(
    minus: &Dga,
    a: &str,
    shift: &Element,
) -> Result<(Dga, TameMorphism), MorphismError> {
    let sig = minus.sig();
    let ai = sig.lookup(a)?;
    sig.validate(shift)?;
    if shift.len() != 1 {
        return Err(MorphismError::NotMonomial(sig.format(shift)));
    }
    let auto = ElementaryAuto::shift(ai, shift.clone());
    auto.validate(sig)?;
    let pre = |equation: &str| MorphismError::Precondition {
        equation: equation.to_string(),
        generator: a.to_string(),
    };
    if minus.d(shift).contains_letter(ai) {
        return Err(pre("∂(A b) free of a"));
    }
    if minus.diff(ai).contains_letter(ai) {
        return Err(pre("∂a free of a"));
    }
    let diff = (0..sig.len() as GenIdx)
        .map(|c| {
            if c == ai {
                minus.diff(c).add(&minus.d(shift))
            } else {
                auto.apply(sig, minus.diff(c))
            }
        })
        .collect();
    let plus = Dga::new(minus.name(), sig.clone(), diff)?;
    Ok((plus, TameMorphism::elementary(sig.len(), auto)))
}

/// The homotopy `H`: on a word whose first `e`-letter is `e2`, replace that
/// letter by `e1`; every other word goes to zero.
pub fn homotopy(e: &Element, e1: GenIdx, e2: GenIdx) -> Element {
    e.map_terms(|t| {
        let pos = t.word.0.iter().position(|&g| g == e1 || g == e2)?;
        if t.word.0[pos] == e1 {
            return None;
        }
        let mut w = t.word.0.clone();
        w[pos] = e1;
        Some(Term::new(t.coeff.clone(), Word(w)))
    })
}

/// `τ`: the algebra map killing `e1` and `e2`.
pub fn kill_pair(e: &Element, e1: GenIdx, e2: GenIdx) -> Element {
    e.map_terms(|t| (!t.word.0.iter().any(|&g| g == e1 || g == e2)).then(|| t.clone()))
}

/// Builds `Φ: A_+ → S_j(A_-)` with `j = |a|`, checking every hypothesis first.
///
/// Generators of `plus` must be declared in ascending action: the subalgebra
/// generators `B`, then `b`, then `a`, then `a_1, ..., a_l`.
pub fn destabilization_iso(
    plus: &Dga,
    minus: &Dga,
    a: &str,
    b: &str,
) -> Result<TameMorphism, MorphismError> {
    let ps = plus.sig();
    let ms = minus.sig();
    let ai = ps.lookup(a)?;
    let bi = ps.lookup(b)?;
    let pre = |equation: &str, generator: &str| MorphismError::Precondition {
        equation: equation.to_string(),
        generator: generator.to_string(),
    };
    let j = ps.generator(ai).degree;
    if ps.generator(bi).degree != j - 1 {
        return Err(pre("|a| = |b| + 1", b));
    }
    if ps.maslov_t() != ms.maslov_t() || ps.modulus() != ms.modulus() {
        return Err(pre("matching coefficient rings", a));
    }
    if ms.contains(a) || ms.contains(b) {
        return Err(pre("a and b absent from A_-", if ms.contains(a) { a } else { b }));
    }
    if ps.len() != ms.len() + 2 {
        return Err(pre("gens(A_+) = {a, b} ∪ gens(A_-)", a));
    }
    let stab = stabilize(minus, j);
    let ss = stab.sig();
    let (e1, e2) = (ms.len() as GenIdx, ms.len() as GenIdx + 1);
    let mut relabel = Vec::with_capacity(ps.len());
    for g in 0..ps.len() as GenIdx {
        let gen = ps.generator(g);
        relabel.push(if g == ai {
            e1
        } else if g == bi {
            e2
        } else {
            let h = ms.lookup(&gen.id).map_err(|_| pre("gens(A_+) = {a, b} ∪ gens(A_-)", &gen.id))?;
            if ms.generator(h).degree != gen.degree {
                return Err(pre("matching degrees", &gen.id));
            }
            h
        });
    }
    if ai != bi + 1 {
        return Err(pre("b < a adjacent in action order", a));
    }
    if ps.has_actions() {
        let gens = ps.generators();
        if let Some(w) = gens.windows(2).find(|w| w[0].action > w[1].action) {
            return Err(pre("actions nondecreasing in declaration order", &w[1].id));
        }
        if gens[bi as usize].action >= gens[ai as usize].action {
            return Err(pre("Z(b) < Z(a)", a));
        }
    }

    let mut v = plus.diff(ai).clone();
    let b_term = Term::new(GroupMonomial::unit(ps.h1_rank()), Word::letter(bi));
    if !v.contains(&b_term) {
        return Err(pre("∂+a = b + v", a));
    }
    v.toggle(b_term);
    if !v.avoids(|g| g >= bi) {
        return Err(pre("∂+a = b + v with v in B", a));
    }
    for g in ai + 1..ps.len() as GenIdx {
        if !plus.diff(g).avoids(|h| h >= g) {
            return Err(pre("∂+a_i in A_{i-1}", ps.name(g)));
        }
    }

    let mut phi = TameMorphism {
        chain: vec![ElementaryAuto::shift(e2, rename(&v, &relabel))],
        relabel,
    };
    for w in 0..=ai {
        let lhs = phi.apply(ss, plus.diff(w));
        let rhs = stab.d(&phi.apply(ss, &ps.gen(w)));
        if lhs != rhs {
            return Err(pre("Φ0 ∂+ = ∂s Φ0 on a, b, B", ps.name(w)));
        }
    }
    for x in 0..ps.len() as GenIdx {
        let lhs = kill_pair(&phi.apply(ss, plus.diff(x)), e1, e2);
        let rhs = kill_pair(&stab.d(&phi.apply(ss, &ps.gen(x))), e1, e2);
        if lhs != rhs {
            return Err(pre("τ Φ0 ∂+ = τ ∂s Φ0", ps.name(x)));
        }
    }
    for g in ai + 1..ps.len() as GenIdx {
        let u = homotopy(&phi.apply(ss, plus.diff(g)), e1, e2);
        if !u.is_zero() {
            phi.chain.push(ElementaryAuto::shift(phi.relabel[g as usize], u));
        }
    }
    phi.validate(ps, ss)?;
    if let Some(c) = first_chain_failure(&phi, plus, &stab) {
        return Err(MorphismError::NotChainMap(ps.name(c).to_string()));
    }
    Ok(phi)
}
