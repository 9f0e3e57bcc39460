//! Differential graded algebras: Leibniz extension and the axiom checks.

use num_rational::Rational64;

use crate::algebra::{GenIdx, GradedSignature, Element, Term, Word, GroupMonomial, Generator};
use crate::error::{AlgebraError, DgaError};

/// Differential graded algebra with a differential entry for every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    name: String,
    sig: GradedSignature,
    diff: Vec<Element>,
}

/// Which axiom an offending term breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// A term of `∂∂c`.
    DSquared,
    /// A term of `∂c` whose degree is not `|c| - 1`.
    Degree,
    /// A term of `∂c` whose letters do not have smaller total action.
    Action,
}

impl FailureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureKind::DSquared => "d2",
            FailureKind::Degree => "degree",
            FailureKind::Action => "action",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub generator: GenIdx,
    pub kind: FailureKind,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaReport {
    pub d2_ok: bool,
    pub degree_ok: bool,
    pub action_ok: Option<bool>,
    pub good: bool,
    pub unit_exact: bool,
    pub failures: Vec<Failure>,
}

impl DgaReport {
    /// `∂² = 0` and `∂` has degree `-1`.
    pub fn is_dga(&self) -> bool {
        self.d2_ok && self.degree_ok
    }
}

impl Dga {
    pub fn new(
        name: impl Into<String>,
        sig: GradedSignature,
        diff: Vec<Element>,
    ) -> Result<Self, DgaError> {
        if diff.len() != sig.len() {
            return Err(DgaError::DifferentialCount {
                expected: sig.len(),
                found: diff.len(),
            });
        }
        for e in &diff {
            sig.validate(e)?;
        }
        Ok(Dga {
            name: name.into(),
            sig,
            diff,
        })
    }

    /// Builds a DGA from text differentials, one per generator in order.
    pub fn parse(
        name: impl Into<String>,
        sig: GradedSignature,
        diffs: &[&str],
    ) -> Result<Self, DgaError> {
        let diff = diffs
            .iter()
            .map(|s| sig.parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        Dga::new(name, sig, diff)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn sig(&self) -> &GradedSignature {
        &self.sig
    }

    pub fn diff(&self, g: GenIdx) -> &Element {
        &self.diff[g as usize]
    }

    pub fn diffs(&self) -> &[Element] {
        &self.diff
    }

    pub fn diff_named(&self, id: &str) -> Result<&Element, AlgebraError> {
        Ok(self.diff(self.sig.lookup(id)?))
    }

    /// Leibniz extension of `∂` to `e`. The caller guarantees `e` is over this signature.
    pub fn d(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for t in e.terms() {
            let w = &t.word.0;
            for (i, &g) in w.iter().enumerate() {
                for s in self.diff[g as usize].terms() {
                    let mut word = Vec::with_capacity(w.len() + s.word.len());
                    word.extend_from_slice(&w[..i]);
                    word.extend_from_slice(&s.word.0);
                    word.extend_from_slice(&w[i + 1..]);
                    out.toggle(Term::new(t.coeff.mul(&s.coeff), Word(word)));
                }
            }
        }
        out
    }

    pub fn apply_differential(&self, e: &Element) -> Result<Element, AlgebraError> {
        self.sig.validate(e)?;
        Ok(self.d(e))
    }

    pub fn check(&self) -> DgaReport {
        let sig = &self.sig;
        let mut failures = Vec::new();
        let mut d2_ok = true;
        let mut degree_ok = true;
        let mut good = true;
        let mut unit_exact = false;
        let with_actions = sig.has_actions();
        let mut action_ok = true;

        for (i, dc) in self.diff.iter().enumerate() {
            let g = i as GenIdx;
            let target = sig.reduce(sig.generator(g).degree - 1);
            for t in dc.terms() {
                if sig.term_degree(t) != target {
                    degree_ok = false;
                    failures.push(Failure { generator: g, kind: FailureKind::Degree, term: t.clone() });
                }
                if t.is_constant() {
                    good = false;
                }
                if with_actions {
                    let below: Rational64 = t
                        .word
                        .0
                        .iter()
                        .map(|&b| sig.generator(b).action.unwrap())
                        .sum();
                    if sig.generator(g).action.unwrap() - below <= Rational64::from_integer(0) {
                        action_ok = false;
                        failures.push(Failure { generator: g, kind: FailureKind::Action, term: t.clone() });
                    }
                }
            }
            if dc.is_one() {
                unit_exact = true;
            }
            let dd = self.d(dc);
            if !dd.is_zero() {
                d2_ok = false;
                failures.extend(dd.into_terms().map(|term| Failure {
                    generator: g,
                    kind: FailureKind::DSquared,
                    term,
                }));
            }
        }
        DgaReport {
            d2_ok,
            degree_ok,
            action_ok: with_actions.then_some(action_ok),
            good,
            unit_exact,
            failures,
        }
    }

    /// Sets every `t_j` to 1 and regrades mod `modulus`.
    pub fn reduce_coefficients(&self, modulus: u32) -> Dga {
        let sig = GradedSignature::new(
            self.sig.ambient_dim(),
            modulus,
            Vec::new(),
            self.sig.generators().to_vec(),
        )
        .expect("generators were already validated");
        let diff = self
            .diff
            .iter()
            .map(|e| Element::from_terms(e.terms().map(|t| Term::new(GroupMonomial::unit(0), t.word.clone()))))
            .collect();
        Dga {
            name: self.name.clone(),
            sig,
            diff,
        }
    }

    /// Maslov number implied by the signature: gcd of the modulus and all `|mu(t_j)|`.
    pub fn maslov_number(&self) -> u32 {
        self.sig
            .maslov_t()
            .iter()
            .fold(self.sig.modulus() as i64, |acc, &m| num_integer::gcd(acc, m)) as u32
    }

    /// Appends generators with their differentials, which may mention the new letters.
    pub(crate) fn extended(
        &self,
        extra: Vec<Generator>,
        diffs: impl FnOnce(&GradedSignature) -> Vec<Element>,
    ) -> Result<Dga, DgaError> {
        let mut gens = self.sig.generators().to_vec();
        gens.extend(extra);
        let sig = GradedSignature::new(
            self.sig.ambient_dim(),
            self.sig.modulus(),
            self.sig.maslov_t().to_vec(),
            gens,
        )?;
        let mut diff = self.diff.clone();
        diff.extend(diffs(&sig));
        Dga::new(self.name.clone(), sig, diff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_without_signs() {
        let sig = GradedSignature::simple(1, &[("a", 2), ("b", 1), ("c", 0)]).unwrap();
        let d = Dga::parse("x", sig, &["b c + c b", "0", "0"]).unwrap();
        let aa = d.sig().parse("a a").unwrap();
        assert_eq!(
            d.sig().format(&d.d(&aa)),
            d.sig().format(&d.sig().parse("b c a + c b a + a b c + a c b").unwrap())
        );
        assert!(d.d(&d.sig().one()).is_zero());
    }

    #[test]
    fn degree_drop_of_zero_is_flagged() {
        let sig = GradedSignature::simple(1, &[("a", 1), ("c", 1)]).unwrap();
        let d = Dga::parse("x", sig, &["c", "0"]).unwrap();
        let r = d.check();
        assert!(!r.degree_ok);
        assert!(r.d2_ok);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].kind, FailureKind::Degree);
    }

    #[test]
    fn constant_terms_allowed_in_degree_one() {
        let sig = GradedSignature::simple(1, &[("a", 1), ("b", 2)]).unwrap();
        let d = Dga::parse("x", sig, &["1", "1"]).unwrap();
        let r = d.check();
        assert!(!r.degree_ok);
        assert!(r.unit_exact);
        assert!(!r.good);
        assert_eq!(r.failures[0].generator, 1);
    }

    #[test]
    fn d_squared_failure_reports_terms() {
        let sig = GradedSignature::simple(1, &[("a", 2), ("b", 1), ("c", 0)]).unwrap();
        let d = Dga::parse("x", sig, &["b", "c", "0"]).unwrap();
        let r = d.check();
        assert!(!r.d2_ok);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(d.sig().format_term(&r.failures[0].term), "c");
    }

    #[test]
    fn action_check_is_strict() {
        let gens = vec![
            Generator::new("a", 1).with_action(Rational64::new(3, 1)),
            Generator::new("b", 0).with_action(Rational64::new(3, 2)),
        ];
        let sig = GradedSignature::new(1, 0, vec![], gens).unwrap();
        let d = Dga::parse("x", sig.clone(), &["b", "0"]).unwrap();
        assert_eq!(d.check().action_ok, Some(true));
        let d = Dga::parse("x", sig, &["b b", "0"]).unwrap();
        assert_eq!(d.check().action_ok, Some(false));
        let plain = GradedSignature::simple(1, &[("a", 1)]).unwrap();
        assert_eq!(Dga::parse("x", plain, &["0"]).unwrap().check().action_ok, None);
    }

    #[test]
    fn coefficient_reduction_cancels() {
        let sig = GradedSignature::new(1, 0, vec![0], vec![Generator::new("a", 1), Generator::new("c", 0)]).unwrap();
        let d = Dga::parse("x", sig, &["t c + c", "0"]).unwrap();
        let r = d.reduce_coefficients(0);
        assert!(r.diff(0).is_zero());
        assert_eq!(r.sig().h1_rank(), 0);
        let d = Dga::parse("x", d.sig().clone(), &["t c + t^2 c", "0"]).unwrap();
        assert!(d.reduce_coefficients(0).diff(0).is_zero());
    }

    #[test]
    fn reduction_without_coefficients_is_identity() {
        let sig = GradedSignature::simple(1, &[("a", 1), ("c", 0)]).unwrap();
        let d = Dga::parse("x", sig, &["1 + c", "0"]).unwrap();
        assert_eq!(d.reduce_coefficients(0), d);
    }

    #[test]
    fn rejects_wrong_entry_count() {
        let sig = GradedSignature::simple(1, &[("a", 1), ("c", 0)]).unwrap();
        assert!(matches!(
            Dga::parse("x", sig, &["c"]),
            Err(DgaError::DifferentialCount { expected: 2, found: 1 })
        ));
    }
}
