//! JSON interchange documents.
//!
//! Object keys serialize in sorted order, terms in canonical order, and
//! actions as exact `p/q` strings. Canonical documents round-trip byte for byte
//! through [`DgaDocument::to_dga`] and [`DgaDocument::from_dga`].

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Element, GenIdx, Generator, GradedSignature, GroupMonomial, Term, Word};
use crate::dga::{Dga, DgaReport};
use crate::error::{DgaError, Error};
use crate::linearized::{Augmentation, LinearizedComplex, PoincarePolynomial};
use crate::morphisms::{ElementaryAuto, StableTameWitness, TameMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub t: Vec<i64>,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    pub degree: i64,
    pub id: String,
}

/// A DGA, or gradings-only data when `differential` is absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaDocument {
    pub ambient_dim: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<BTreeMap<String, Vec<TermDoc>>>,
    pub generators: Vec<GeneratorDoc>,
    pub h1_rank: usize,
    pub maslov_t: Vec<i64>,
    pub modulus: u32,
    pub name: String,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

pub fn format_rational(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational64, Error> {
    let bad = || doc_err(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(n, d))
}

pub fn element_to_doc(sig: &GradedSignature, e: &Element) -> Vec<TermDoc> {
    e.terms()
        .map(|t| TermDoc {
            t: t.coeff.0.clone(),
            word: t.word.0.iter().map(|&g| sig.name(g).to_string()).collect(),
        })
        .collect()
}

pub fn element_from_doc(sig: &GradedSignature, terms: &[TermDoc]) -> Result<Element, Error> {
    let mut e = Element::zero();
    for td in terms {
        if td.t.len() != sig.h1_rank() {
            return Err(doc_err(format!(
                "term has {} exponents, expected {}",
                td.t.len(),
                sig.h1_rank()
            )));
        }
        let word = td
            .word
            .iter()
            .map(|id| sig.lookup(id))
            .collect::<Result<Vec<GenIdx>, _>>()?;
        e.toggle(Term::new(GroupMonomial(td.t.clone()), Word(word)));
    }
    Ok(e)
}

impl DgaDocument {
    fn header(name: &str, sig: &GradedSignature) -> DgaDocument {
        DgaDocument {
            ambient_dim: sig.ambient_dim(),
            differential: None,
            generators: sig
                .generators()
                .iter()
                .map(|g| GeneratorDoc {
                    action: g.action.map(format_rational),
                    degree: g.degree,
                    id: g.id.clone(),
                })
                .collect(),
            h1_rank: sig.h1_rank(),
            maslov_t: sig.maslov_t().to_vec(),
            modulus: sig.modulus(),
            name: name.to_string(),
        }
    }

    pub fn from_dga(d: &Dga) -> DgaDocument {
        let sig = d.sig();
        let mut doc = Self::header(d.name(), sig);
        doc.differential = Some(
            (0..sig.len() as GenIdx)
                .map(|g| (sig.name(g).to_string(), element_to_doc(sig, d.diff(g))))
                .collect(),
        );
        doc
    }

    pub fn from_gradings(name: &str, sig: &GradedSignature) -> DgaDocument {
        Self::header(name, sig)
    }

    pub fn signature(&self) -> Result<GradedSignature, Error> {
        if self.maslov_t.len() != self.h1_rank {
            return Err(doc_err(format!(
                "maslov_t has length {} but h1_rank is {}",
                self.maslov_t.len(),
                self.h1_rank
            )));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut gen = Generator::new(g.id.clone(), g.degree);
                if let Some(a) = &g.action {
                    gen.action = Some(parse_rational(a)?);
                }
                Ok(gen)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(GradedSignature::new(
            self.ambient_dim,
            self.modulus,
            self.maslov_t.clone(),
            gens,
        )?)
    }

    pub fn is_gradings_only(&self) -> bool {
        self.differential.is_none()
    }

    pub fn to_dga(&self) -> Result<Dga, Error> {
        let sig = self.signature()?;
        let diff_doc = self
            .differential
            .as_ref()
            .ok_or_else(|| doc_err("document has no differential"))?;
        if let Some(extra) = diff_doc.keys().find(|k| !sig.contains(k)) {
            return Err(doc_err(format!("differential given for unknown generator `{extra}`")));
        }
        let diff = sig
            .generators()
            .iter()
            .map(|g| {
                let terms = diff_doc
                    .get(&g.id)
                    .ok_or_else(|| Error::Dga(DgaError::MissingDifferential(g.id.clone())))?;
                element_from_doc(&sig, terms)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Dga::new(self.name.clone(), sig, diff)?)
    }

    pub fn parse(text: &str) -> Result<DgaDocument, Error> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Degrees as string keys in numeric order.
impl Serialize for PoincarePolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        for (k, n) in self.iter() {
            m.serialize_entry(&k.to_string(), &n)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for PoincarePolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, usize> = BTreeMap::deserialize(d)?;
        raw.into_iter()
            .map(|(k, n)| {
                k.parse::<i64>()
                    .map(|k| (k, n))
                    .map_err(|_| serde::de::Error::custom(format!("degree key `{k}` is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(PoincarePolynomial::from_pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureDoc {
    pub generator: String,
    pub kind: String,
    pub term: TermDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action_ok: Option<bool>,
    pub d2_ok: bool,
    pub degree_ok: bool,
    pub failures: Vec<FailureDoc>,
    pub good: bool,
    pub unit_exact: bool,
}

impl ReportDoc {
    pub fn new(sig: &GradedSignature, r: &DgaReport) -> Self {
        ReportDoc {
            action_ok: r.action_ok,
            d2_ok: r.d2_ok,
            degree_ok: r.degree_ok,
            failures: r
                .failures
                .iter()
                .map(|f| FailureDoc {
                    generator: sig.name(f.generator).to_string(),
                    kind: f.kind.as_str().to_string(),
                    term: element_to_doc(sig, &Element::from_term(f.term.clone())).remove(0),
                })
                .collect(),
            good: r.good,
            unit_exact: r.unit_exact,
        }
    }
}

/// Generators an augmentation sends to 1.
pub fn augmentation_to_doc(sig: &GradedSignature, a: &Augmentation) -> Vec<String> {
    a.support().map(|g| sig.name(g).to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeDoc {
    pub basis: Vec<String>,
    pub degree: i64,
    /// Image of each basis element as names of degree `degree - 1` basis elements.
    pub differential: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub degrees: Vec<DegreeDoc>,
    pub modulus: u32,
}

impl ComplexDoc {
    pub fn from_complex(c: &LinearizedComplex) -> Self {
        let elements = c.elements();
        let images = c.images();
        let mut degrees: Vec<DegreeDoc> = Vec::new();
        for ((name, k), img) in elements.iter().zip(&images) {
            if degrees.last().is_none_or(|d| d.degree != *k) {
                degrees.push(DegreeDoc {
                    basis: Vec::new(),
                    degree: *k,
                    differential: Vec::new(),
                });
            }
            let d = degrees.last_mut().unwrap();
            d.basis.push(name.clone());
            d.differential.push(img.iter().map(|&j| elements[j].0.clone()).collect());
        }
        ComplexDoc {
            degrees,
            modulus: c.modulus(),
        }
    }

    pub fn to_complex(&self) -> Result<LinearizedComplex, Error> {
        let mut elements = Vec::new();
        let mut pos: BTreeMap<(i64, &str), usize> = BTreeMap::new();
        for d in &self.degrees {
            if d.differential.len() != d.basis.len() {
                return Err(doc_err(format!("degree {}: one image per basis element", d.degree)));
            }
            for b in &d.basis {
                if pos.insert((d.degree, b.as_str()), elements.len()).is_some() {
                    return Err(doc_err(format!("duplicate basis element `{b}`")));
                }
                elements.push((b.clone(), d.degree));
            }
        }
        let reduce = |k: i64| if self.modulus == 0 { k } else { k.rem_euclid(self.modulus as i64) };
        let mut images = Vec::new();
        for d in &self.degrees {
            for img in &d.differential {
                let lower = reduce(d.degree - 1);
                images.push(
                    img.iter()
                        .map(|n| {
                            pos.get(&(lower, n.as_str()))
                                .copied()
                                .ok_or_else(|| doc_err(format!("unknown basis element `{n}` in degree {lower}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
        }
        Ok(LinearizedComplex::from_images(self.modulus, elements, &images)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementaryDoc {
    pub shift: Vec<TermDoc>,
    pub target: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub unit_coeffs: BTreeMap<String, Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TameDoc {
    pub chain: Vec<ElementaryDoc>,
    /// Domain generator name to codomain generator name.
    pub relabel: BTreeMap<String, String>,
}

impl TameDoc {
    pub fn from_morphism(phi: &TameMorphism, from: &GradedSignature, to: &GradedSignature) -> Self {
        TameDoc {
            chain: phi
                .chain
                .iter()
                .map(|a| ElementaryDoc {
                    shift: element_to_doc(to, &a.shift),
                    target: to.name(a.target).to_string(),
                    unit_coeffs: a
                        .unit_coeffs
                        .iter()
                        .map(|(&g, c)| (to.name(g).to_string(), c.0.clone()))
                        .collect(),
                })
                .collect(),
            relabel: phi
                .relabel
                .iter()
                .enumerate()
                .map(|(g, &h)| (from.name(g as GenIdx).to_string(), to.name(h).to_string()))
                .collect(),
        }
    }

    pub fn to_morphism(&self, from: &GradedSignature, to: &GradedSignature) -> Result<TameMorphism, Error> {
        if self.relabel.len() != from.len() {
            return Err(doc_err(format!(
                "relabel covers {} of {} generators",
                self.relabel.len(),
                from.len()
            )));
        }
        let mut relabel = vec![0; from.len()];
        for (a, b) in &self.relabel {
            relabel[from.lookup(a)? as usize] = to.lookup(b)?;
        }
        let chain = self
            .chain
            .iter()
            .map(|e| {
                let unit_coeffs = e
                    .unit_coeffs
                    .iter()
                    .map(|(g, c)| Ok((to.lookup(g)?, GroupMonomial(c.clone()))))
                    .collect::<Result<BTreeMap<_, _>, Error>>()?;
                Ok(ElementaryAuto {
                    target: to.lookup(&e.target)?,
                    unit_coeffs,
                    shift: element_from_doc(to, &e.shift)?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(TameMorphism { relabel, chain })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub morphism: TameDoc,
    pub stabilizations_left: Vec<i64>,
    pub stabilizations_right: Vec<i64>,
}

impl WitnessDoc {
    pub fn from_witness(w: &StableTameWitness, left: &Dga, right: &Dga) -> Self {
        let (l, r) = w.stabilized(left, right);
        WitnessDoc {
            morphism: TameDoc::from_morphism(&w.morphism, l.sig(), r.sig()),
            stabilizations_left: w.stabilizations_left.clone(),
            stabilizations_right: w.stabilizations_right.clone(),
        }
    }

    /// Resolves names against the stabilized algebras.
    pub fn to_witness(&self, left: &Dga, right: &Dga) -> Result<StableTameWitness, Error> {
        let mut w = StableTameWitness {
            stabilizations_left: self.stabilizations_left.clone(),
            stabilizations_right: self.stabilizations_right.clone(),
            morphism: TameMorphism::identity(0),
        };
        let (l, r) = w.stabilized(left, right);
        w.morphism = self.morphism.to_morphism(l.sig(), r.sig())?;
        Ok(w)
    }
}
