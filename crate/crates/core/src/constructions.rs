//! Algebraic shadows of geometric constructions: connected sum, Legendrian
//! stabilization, and the front-spinning suspension calculus.

use std::collections::BTreeSet;

use crate::algebra::{Element, GenIdx, Generator, GradedSignature, GroupMonomial, Term, Word};
use crate::dga::Dga;
use crate::error::{AlgebraError, ConstructionError};
use crate::linearized::LinearizedComplex;

/// `D1 # D2`: the disjoint union of the chords plus a closed generator `h` of degree `n - 1`.
///
/// Colliding names from `D2` get primes. Homology coefficients are combined as a
/// direct sum, and the grading modulus becomes the gcd of the two.
pub fn connected_sum(d1: &Dga, d2: &Dga, n: u32) -> Result<Dga, ConstructionError> {
    let (s1, s2) = (d1.sig(), d2.sig());
    if s1.ambient_dim() != n || s2.ambient_dim() != n {
        return Err(ConstructionError::Incompatible(format!(
            "ambient dimension: {} and {} against {n}",
            s1.ambient_dim(),
            s2.ambient_dim()
        )));
    }
    if (s1.h1_rank() == 0) != (s2.h1_rank() == 0) {
        return Err(ConstructionError::Incompatible("coefficient rings".into()));
    }
    let (r1, r2) = (s1.h1_rank(), s2.h1_rank());
    let mut gens: Vec<Generator> = s1.generators().to_vec();
    let mut taken: BTreeSet<String> = gens.iter().map(|g| g.id.clone()).collect();
    for g in s2.generators() {
        let id = GradedSignature::fresh_name(&g.id, |x| taken.contains(x));
        taken.insert(id.clone());
        gens.push(Generator { id, ..g.clone() });
    }
    let h = GradedSignature::fresh_name("h", |x| taken.contains(x));
    gens.push(Generator::new(h, n as i64 - 1));
    let mut maslov = s1.maslov_t().to_vec();
    maslov.extend_from_slice(s2.maslov_t());
    let modulus = num_integer::gcd(s1.modulus(), s2.modulus());
    let sig = GradedSignature::new(n, modulus, maslov, gens)?;

    let offset = s1.len() as GenIdx;
    let pad = |e: &Element, before: usize, shift: GenIdx| {
        e.map_terms(|t| {
            let mut c = vec![0; r1 + r2];
            c[before..before + t.coeff.rank()].copy_from_slice(&t.coeff.0);
            Some(Term::new(
                GroupMonomial(c),
                Word(t.word.0.iter().map(|&g| g + shift).collect()),
            ))
        })
    };
    let mut diff: Vec<Element> = d1.diffs().iter().map(|e| pad(e, 0, 0)).collect();
    diff.extend(d2.diffs().iter().map(|e| pad(e, r1, offset)));
    diff.push(Element::zero());
    Ok(Dga::new(format!("{}#{}", d1.name(), d2.name()), sig, diff)?)
}

/// Connected sum of gradings-only data.
pub fn connected_sum_gradings(
    s1: &GradedSignature,
    s2: &GradedSignature,
    n: u32,
) -> Result<GradedSignature, ConstructionError> {
    let empty = |s: &GradedSignature| {
        Dga::new("", s.clone(), vec![Element::zero(); s.len()]).map_err(ConstructionError::from)
    };
    let reduced = |s: &GradedSignature| {
        GradedSignature::new(s.ambient_dim(), s.modulus(), Vec::new(), s.generators().to_vec())
            .map_err(ConstructionError::from)
    };
    let sum = connected_sum(&empty(&reduced(s1)?)?, &empty(&reduced(s2)?)?, n)?;
    Ok(sum.sig().clone())
}

/// Flagged chords get degree `n - 2 - d`.
pub fn legendrian_stabilization_regrade(
    sig: &GradedSignature,
    flagged: &[&str],
    n: i64,
) -> Result<GradedSignature, AlgebraError> {
    let mut gens = sig.generators().to_vec();
    for f in flagged {
        let g = sig.lookup(f)? as usize;
        gens[g].degree = n - 2 - sig.generators()[g].degree;
    }
    GradedSignature::new(sig.ambient_dim(), sig.modulus(), sig.maslov_t().to_vec(), gens)
}

/// tb after a Legendrian stabilization along a region with Euler characteristic `chi_m`.
pub fn stabilization_tb(tb: i64, n: i64, d_minus_u: i64, chi_m: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        tb
    } else {
        let sign = if d_minus_u.rem_euclid(2) == 0 { 1 } else { -1 };
        tb + sign * 2 * chi_m
    }
}

/// Adds `c1` (degree 0, closed) and `c2` (degree 1, `∂c2 = 1`).
pub fn cusp_stabilize(d: &Dga) -> Dga {
    let sig = d.sig();
    let c1 = GradedSignature::fresh_name("c1", |n| sig.contains(n));
    let c2 = GradedSignature::fresh_name("c2", |n| sig.contains(n) || n == c1);
    d.extended(vec![Generator::new(c1, 0), Generator::new(c2, 1)], |s| {
        vec![Element::zero(), s.one()]
    })
    .expect("fresh names are valid")
}

/// Classical invariants of the front spinning `ΣL`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionClassical {
    pub tb: i64,
    pub maslov: Vec<i64>,
    pub maslov_number: u64,
}

pub fn suspension_classical(_tb_base: i64, maslov_base: &[i64]) -> SuspensionClassical {
    let mut maslov = maslov_base.to_vec();
    maslov.push(0);
    let maslov_number = maslov.iter().fold(0i64, |acc, &m| num_integer::gcd(acc, m)) as u64;
    SuspensionClassical {
        tb: 0,
        maslov,
        maslov_number,
    }
}

/// Symbols built from a base alphabet: hats `c^` and the brackets `c[-1]`, `c[0]`, `c[1]`.
#[derive(Clone, Debug)]
pub struct SuspensionAlphabet {
    base: GradedSignature,
    hatted: GradedSignature,
    brackets: GradedSignature,
    projected: GradedSignature,
}

impl SuspensionAlphabet {
    pub fn new(base: &GradedSignature) -> Self {
        let mk = |gens: Vec<Generator>| {
            GradedSignature::new(base.ambient_dim(), base.modulus(), base.maslov_t().to_vec(), gens)
                .expect("derived names are distinct")
        };
        let with_fresh = |extra: Vec<Generator>| {
            let mut gens = base.generators().to_vec();
            let mut taken: BTreeSet<String> = gens.iter().map(|g| g.id.clone()).collect();
            for g in extra {
                let id = GradedSignature::fresh_name(&g.id, |x| taken.contains(x));
                taken.insert(id.clone());
                gens.push(Generator { id, ..g });
            }
            mk(gens)
        };
        let plain = |g: &Generator, suffix: &str, shift: i64| Generator::new(format!("{}{suffix}", g.id), g.degree + shift);
        let hatted = with_fresh(base.generators().iter().map(|g| plain(g, "^", 1)).collect());
        let brackets = mk(base
            .generators()
            .iter()
            .flat_map(|g| [plain(g, "[-1]", 0), plain(g, "[0]", 1), plain(g, "[1]", 0)])
            .collect());
        let projected = with_fresh(base.generators().iter().map(|g| plain(g, "[0]", 1)).collect());
        SuspensionAlphabet {
            base: base.clone(),
            hatted,
            brackets,
            projected,
        }
    }

    pub fn base(&self) -> &GradedSignature {
        &self.base
    }

    /// Base letters followed by their hats.
    pub fn hatted(&self) -> &GradedSignature {
        &self.hatted
    }

    /// `c[-1], c[0], c[1]` for each base letter in turn.
    pub fn brackets(&self) -> &GradedSignature {
        &self.brackets
    }

    /// Target of `π`: base letters followed by the `c[0]`.
    pub fn projected(&self) -> &GradedSignature {
        &self.projected
    }

    pub fn hat(&self, g: GenIdx) -> GenIdx {
        self.base.len() as GenIdx + g
    }

    /// `c[s]` for `s` in `-1..=1`.
    pub fn bracket(&self, g: GenIdx, s: i8) -> GenIdx {
        assert!((-1..=1).contains(&s));
        3 * g + (s + 1) as GenIdx
    }

    fn split(&self, b: GenIdx) -> (GenIdx, i8) {
        (b / 3, (b % 3) as i8 - 1)
    }

    /// `Γ(c_1 ... c_r) = Σ_j c_1 ... ĉ_j ... c_r`, with `Γ(1) = 0`.
    pub fn gamma(&self, e: &Element) -> Result<Element, AlgebraError> {
        self.base.validate(e)?;
        let mut out = Element::zero();
        for t in e.terms() {
            for j in 0..t.word.len() {
                let mut w = t.word.0.clone();
                w[j] = self.hat(w[j]);
                out.toggle(Term::new(t.coeff.clone(), Word(w)));
            }
        }
        Ok(out)
    }

    /// `Γ0(c_1 ... c_r) = Σ_i c_1[1] ... c_{i-1}[1] c_i[0] c_{i+1}[-1] ... c_r[-1]`.
    pub fn gamma0(&self, e: &Element) -> Result<Element, AlgebraError> {
        self.base.validate(e)?;
        let mut out = Element::zero();
        for t in e.terms() {
            let w = &t.word.0;
            for i in 0..w.len() {
                let word = w
                    .iter()
                    .enumerate()
                    .map(|(p, &g)| self.bracket(g, -((p as isize - i as isize).signum() as i8)))
                    .collect();
                out.toggle(Term::new(t.coeff.clone(), Word(word)));
            }
        }
        Ok(out)
    }

    /// Relabels every letter `c ↦ c[s]` for `s = ±1`.
    pub fn gamma_pm(&self, e: &Element, s: i8) -> Result<Element, AlgebraError> {
        self.base.validate(e)?;
        Ok(e.map_terms(|t| {
            Some(Term::new(
                t.coeff.clone(),
                Word(t.word.0.iter().map(|&g| self.bracket(g, s)).collect()),
            ))
        }))
    }

    /// Replaces the single `c[0]` of a word by `c[-1] + c[1]`; words with any
    /// other number of `[0]` letters go to zero.
    pub fn sigma(&self, e: &Element) -> Result<Element, AlgebraError> {
        self.brackets.validate(e)?;
        let mut out = Element::zero();
        for t in e.terms() {
            let zeros: Vec<usize> = (0..t.word.len())
                .filter(|&p| self.split(t.word.0[p]).1 == 0)
                .collect();
            if let [p] = zeros[..] {
                let g = self.split(t.word.0[p]).0;
                for s in [-1, 1] {
                    let mut w = t.word.0.clone();
                    w[p] = self.bracket(g, s);
                    out.toggle(Term::new(t.coeff.clone(), Word(w)));
                }
            }
        }
        Ok(out)
    }

    /// Algebra map `c[±1] ↦ c`, `c[0] ↦ c[0]` into [`SuspensionAlphabet::projected`].
    pub fn pi(&self, e: &Element) -> Result<Element, AlgebraError> {
        self.brackets.validate(e)?;
        let n = self.base.len() as GenIdx;
        Ok(e.map_terms(|t| {
            Some(Term::new(
                t.coeff.clone(),
                Word(
                    t.word
                        .0
                        .iter()
                        .map(|&b| match self.split(b) {
                            (g, 0) => n + g,
                            (g, _) => g,
                        })
                        .collect(),
                ),
            ))
        }))
    }
}

/// Linearized complex of a suspension: alias kept for readability at call sites.
pub type SuspendedComplex = LinearizedComplex;

/// Basis `V[0] ⊕ V[2] ⊕ V̂[1] ⊕ V̂[3]` with `d(v[α]) = (Mv)[α]` and
/// `d(v̂[β]) = v[β-1] + v[β+1] + (Mv)^[β]`, indices mod 4.
pub fn suspend_linearized(c: &LinearizedComplex) -> SuspendedComplex {
    let base = c.elements();
    let images = c.images();
    let mut elements = Vec::with_capacity(4 * base.len());
    let mut out = Vec::with_capacity(4 * base.len());
    for (i, (name, k)) in base.iter().enumerate() {
        elements.push((format!("{name}[0]"), *k));
        elements.push((format!("{name}[2]"), *k));
        elements.push((format!("{name}^[1]"), k + 1));
        elements.push((format!("{name}^[3]"), k + 1));
        for q in 0..4 {
            let mut img: Vec<usize> = images[i].iter().map(|&j| 4 * j + q).collect();
            if q >= 2 {
                img.push(4 * i);
                img.push(4 * i + 1);
            }
            out.push(img);
        }
    }
    LinearizedComplex::from_images(c.modulus(), elements, &out)
        .expect("suspension of a complex is a complex")
}
