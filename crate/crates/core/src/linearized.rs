//! Augmentations, linearized complexes and their homology.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::algebra::{Element, GenIdx, GradedSignature, Term};
use crate::dga::Dga;
use crate::error::LinearizedError;
use crate::linalg::{compose_check, BitMatrix};

/// Default bound on the number of degree-0 generators for enumeration.
pub const DEFAULT_AUG_CAP: usize = 24;

/// Environment variable overriding [`DEFAULT_AUG_CAP`].
pub const AUG_CAP_ENV: &str = "LCH_AUG_CAP";

/// Graded dimensions; only positive entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PoincarePolynomial(BTreeMap<i64, usize>);

impl PoincarePolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, usize)>>(it: I) -> Self {
        let mut p = Self::new();
        for (k, n) in it {
            p.add(k, n);
        }
        p
    }

    pub fn add(&mut self, degree: i64, n: usize) {
        if n > 0 {
            *self.0.entry(degree).or_insert(0) += n;
        }
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    /// Ungraded dimension.
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&k, &n)| (k, n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree shift `k ↦ k + s`, reduced mod `modulus` when positive.
    pub fn shifted(&self, s: i64, modulus: u32) -> Self {
        Self::from_pairs(self.iter().map(|(k, n)| (reduce(k + s, modulus), n)))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_pairs(self.iter().chain(other.iter()))
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, n)| format!("{k}:{n}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn reduce(d: i64, modulus: u32) -> i64 {
    if modulus == 0 {
        d
    } else {
        d.rem_euclid(modulus as i64)
    }
}

/// Values of an augmentation on every generator; only degree-0 letters may be 1.
///
/// Ordered lexicographically by the bit pattern in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Augmentation {
    values: Vec<bool>,
}

impl Augmentation {
    pub fn zero(n: usize) -> Self {
        Augmentation { values: vec![false; n] }
    }

    /// Checks the support against the signature.
    pub fn new(sig: &GradedSignature, values: Vec<bool>) -> Result<Self, LinearizedError> {
        if values.len() != sig.len() {
            return Err(LinearizedError::InvalidAugmentation(format!(
                "{} values for {} generators",
                values.len(),
                sig.len()
            )));
        }
        if let Some(g) = (0..sig.len()).find(|&g| values[g] && sig.gen_degree(g as GenIdx) != 0) {
            return Err(LinearizedError::AugmentationDegree(sig.name(g as GenIdx).to_string()));
        }
        Ok(Augmentation { values })
    }

    /// Augmentation equal to 1 exactly on the named generators.
    pub fn from_names(sig: &GradedSignature, names: &[&str]) -> Result<Self, LinearizedError> {
        let mut values = vec![false; sig.len()];
        for n in names {
            values[sig.lookup(n)? as usize] = true;
        }
        Self::new(sig, values)
    }

    pub fn value(&self, g: GenIdx) -> bool {
        self.values[g as usize]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Generators sent to 1, in declaration order.
    pub fn support(&self) -> impl Iterator<Item = GenIdx> + '_ {
        (0..self.values.len() as GenIdx).filter(|&g| self.values[g as usize])
    }
}

fn require_z2(d: &Dga) -> Result<(), LinearizedError> {
    match d.sig().h1_rank() {
        0 => Ok(()),
        r => Err(LinearizedError::NeedsZ2(r)),
    }
}

/// `ε̄(∂c)` for every `c`, as XOR-sums of AND-monomials over the degree-0 variables.
struct Constraints {
    vars: Vec<GenIdx>,
    polys: Vec<(GenIdx, Vec<u64>)>,
}

impl Constraints {
    fn build(d: &Dga) -> Result<Self, LinearizedError> {
        let sig = d.sig();
        let vars: Vec<GenIdx> = (0..sig.len() as GenIdx).filter(|&g| sig.gen_degree(g) == 0).collect();
        if vars.len() > 64 {
            return Err(LinearizedError::TooManyDegreeZero { count: vars.len(), cap: 64 });
        }
        let mut slot = HashMap::new();
        for (i, &g) in vars.iter().enumerate() {
            slot.insert(g, i);
        }
        let polys = d
            .diffs()
            .iter()
            .enumerate()
            .map(|(c, dc)| {
                let mut monos: BTreeSet<u64> = BTreeSet::new();
                for t in dc.terms() {
                    let mask = t
                        .word
                        .0
                        .iter()
                        .try_fold(0u64, |m, g| slot.get(g).map(|&i| m | 1 << i));
                    if let Some(m) = mask {
                        if !monos.remove(&m) {
                            monos.insert(m);
                        }
                    }
                }
                (c as GenIdx, monos.into_iter().collect())
            })
            .collect();
        Ok(Constraints { vars, polys })
    }

    fn eval(monos: &[u64], ones: u64) -> bool {
        monos.iter().fold(false, |acc, &m| acc ^ (m & ones == m))
    }
}

/// Cap from `LCH_AUG_CAP`, else [`DEFAULT_AUG_CAP`].
pub fn augmentation_cap() -> usize {
    std::env::var(AUG_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_AUG_CAP)
}

pub fn enumerate_augmentations(d: &Dga) -> Result<Vec<Augmentation>, LinearizedError> {
    enumerate_augmentations_capped(d, augmentation_cap())
}

/// All augmentations in lexicographic order of their bit patterns.
pub fn enumerate_augmentations_capped(d: &Dga, cap: usize) -> Result<Vec<Augmentation>, LinearizedError> {
    require_z2(d)?;
    let cons = Constraints::build(d)?;
    let k = cons.vars.len();
    if k > cap {
        return Err(LinearizedError::TooManyDegreeZero { count: k, cap });
    }
    // A constraint is checked once its highest variable is assigned.
    let mut due: Vec<Vec<&[u64]>> = vec![Vec::new(); k + 1];
    for (_, monos) in &cons.polys {
        let level = monos.iter().map(|&m| 64 - m.leading_zeros() as usize).max().unwrap_or(0);
        if !monos.is_empty() {
            due[level].push(monos);
        }
    }
    let mut out = Vec::new();
    if due[0].iter().any(|m| Constraints::eval(m, 0)) {
        return Ok(out);
    }
    fn dfs(level: usize, k: usize, ones: u64, due: &[Vec<&[u64]>], found: &mut Vec<u64>) {
        if level == k {
            found.push(ones);
            return;
        }
        for bit in [0u64, 1] {
            let next = ones | bit << level;
            if due[level + 1].iter().all(|m| !Constraints::eval(m, next)) {
                dfs(level + 1, k, next, due, found);
            }
        }
    }
    let mut found = Vec::new();
    dfs(0, k, 0, &due, &mut found);
    for ones in found {
        let mut values = vec![false; d.sig().len()];
        for (i, &g) in cons.vars.iter().enumerate() {
            values[g as usize] = ones >> i & 1 == 1;
        }
        out.push(Augmentation { values });
    }
    Ok(out)
}

/// `ε̄(∂c) = 0` for every generator.
pub fn is_augmentation(d: &Dga, eps: &Augmentation) -> Result<bool, LinearizedError> {
    Ok(first_violation(d, eps)?.is_none())
}

fn first_violation(d: &Dga, eps: &Augmentation) -> Result<Option<GenIdx>, LinearizedError> {
    require_z2(d)?;
    if eps.values.len() != d.sig().len() {
        return Err(LinearizedError::InvalidAugmentation("wrong number of values".into()));
    }
    let cons = Constraints::build(d)?;
    let mut ones = 0u64;
    for (i, &g) in cons.vars.iter().enumerate() {
        if eps.value(g) {
            ones |= 1 << i;
        }
    }
    Ok(cons
        .polys
        .iter()
        .find(|(_, m)| Constraints::eval(m, ones))
        .map(|(c, _)| *c))
}

/// `∂^g c = g(∂c)` with `g(c) = c + ε(c)`.
pub fn conjugate(d: &Dga, eps: &Augmentation) -> Result<Dga, LinearizedError> {
    if let Some(c) = first_violation(d, eps)? {
        return Err(LinearizedError::InvalidAugmentation(d.sig().name(c).to_string()));
    }
    let sig = d.sig();
    let images: Vec<Element> = (0..sig.len() as GenIdx)
        .map(|g| {
            let mut x = sig.gen(g);
            if eps.value(g) {
                x.add_assign(&sig.one());
            }
            x
        })
        .collect();
    let diff = d.diffs().iter().map(|e| e.substitute(&images)).collect();
    Ok(Dga::new(d.name(), sig.clone(), diff).expect("same signature"))
}

/// Chain complex over GF(2) graded by `Z` or by residues mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedComplex {
    modulus: u32,
    basis: BTreeMap<i64, Vec<String>>,
    d: BTreeMap<i64, BitMatrix>,
}

impl LinearizedComplex {
    /// Builds a complex from basis elements with degrees and the indices of
    /// the basis elements in each differential (repeats cancel).
    pub fn from_images(
        modulus: u32,
        elements: Vec<(String, i64)>,
        images: &[Vec<usize>],
    ) -> Result<Self, LinearizedError> {
        let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut pos = Vec::with_capacity(elements.len());
        let mut degs = Vec::with_capacity(elements.len());
        for (name, k) in elements {
            let k = reduce(k, modulus);
            let v = basis.entry(k).or_default();
            pos.push(v.len());
            degs.push(k);
            v.push(name);
        }
        let dim = |k: i64| basis.get(&k).map_or(0, Vec::len);
        let mut d: BTreeMap<i64, BitMatrix> = BTreeMap::new();
        for (i, targets) in images.iter().enumerate() {
            let k = degs[i];
            for &j in targets {
                if degs[j] != reduce(k - 1, modulus) {
                    return Err(LinearizedError::Unsupported(format!(
                        "a degree {} differential term in degree {}",
                        degs[j], k
                    )));
                }
                d.entry(k)
                    .or_insert_with(|| BitMatrix::zeros(dim(reduce(k - 1, modulus)), dim(k)))
                    .flip(pos[j], pos[i]);
            }
        }
        d.retain(|_, m| !m.is_zero());
        let c = LinearizedComplex { modulus, basis, d };
        if let Some(k) = c.d_squared_failure() {
            return Err(LinearizedError::Unsupported(format!("d² = 0 fails in degree {k}")));
        }
        Ok(c)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.basis.keys().copied()
    }

    pub fn basis(&self, k: i64) -> &[String] {
        self.basis.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis(k).len()
    }

    /// Matrix of `d_k: V_k → V_{k-1}`.
    pub fn matrix(&self, k: i64) -> BitMatrix {
        self.d
            .get(&k)
            .cloned()
            .unwrap_or_else(|| BitMatrix::zeros(self.dim(self.shift(k, -1)), self.dim(k)))
    }

    /// Rank of `d_k`.
    pub fn rank(&self, k: i64) -> usize {
        self.d.get(&k).map_or(0, BitMatrix::rank)
    }

    pub fn shift(&self, k: i64, s: i64) -> i64 {
        reduce(k + s, self.modulus)
    }

    /// Degree where `d_{k-1} ∘ d_k` is nonzero, if any.
    pub fn d_squared_failure(&self) -> Option<i64> {
        self.d.keys().copied().find(|&k| {
            let lower = self.shift(k, -1);
            self.d
                .get(&lower)
                .is_some_and(|m| !compose_check(m, &self.d[&k]))
        })
    }

    /// Total dimension of the chain space.
    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// Per-degree basis as `(name, degree)` in degree order.
    pub fn elements(&self) -> Vec<(String, i64)> {
        self.basis
            .iter()
            .flat_map(|(&k, v)| v.iter().map(move |n| (n.clone(), k)))
            .collect()
    }

    /// For every basis element in [`LinearizedComplex::elements`] order, the
    /// indices of the basis elements in its differential.
    pub fn images(&self) -> Vec<Vec<usize>> {
        let mut offset = BTreeMap::new();
        let mut acc = 0;
        for (&k, v) in &self.basis {
            offset.insert(k, acc);
            acc += v.len();
        }
        let mut out = Vec::with_capacity(acc);
        for (&k, v) in &self.basis {
            let m = self.d.get(&k);
            let lo = offset.get(&self.shift(k, -1)).copied().unwrap_or(0);
            for col in 0..v.len() {
                let mut img = Vec::new();
                if let Some(m) = m {
                    for r in 0..m.rows() {
                        if m.get(r, col) {
                            img.push(lo + r);
                        }
                    }
                }
                out.push(img);
            }
        }
        out
    }
}

/// `dim_k = nullity(d_k) - rank(d_{k+1})`.
pub fn homology(c: &LinearizedComplex) -> PoincarePolynomial {
    PoincarePolynomial::from_pairs(
        c.degrees()
            .map(|k| (k, c.dim(k) - c.rank(k) - c.rank(c.shift(k, 1)))),
    )
}

/// Length-one part of the differential of a good DGA over Z2.
pub fn linearize(d: &Dga) -> Result<LinearizedComplex, LinearizedError> {
    require_z2(d)?;
    let sig = d.sig();
    let mut images = Vec::with_capacity(sig.len());
    for (c, dc) in d.diffs().iter().enumerate() {
        if dc.terms().any(Term::is_constant) {
            return Err(LinearizedError::NotGood(sig.name(c as GenIdx).to_string()));
        }
        images.push(
            dc.terms()
                .filter(|t| t.word.len() == 1)
                .map(|t| t.word.0[0] as usize)
                .collect::<Vec<_>>(),
        );
    }
    complex_for(sig, &images)
}

fn complex_for(sig: &GradedSignature, images: &[Vec<usize>]) -> Result<LinearizedComplex, LinearizedError> {
    let elements = sig
        .generators()
        .iter()
        .map(|g| (g.id.clone(), g.degree))
        .collect();
    LinearizedComplex::from_images(sig.modulus(), elements, images)
}

/// Linearization of `conjugate(d, eps)` read off without expanding products.
///
/// The linear coefficient of letter `y_i` in `g(y_1 ... y_L)` is the product of
/// `ε(y_j)` over the other positions.
pub fn linearize_at(d: &Dga, eps: &Augmentation) -> Result<LinearizedComplex, LinearizedError> {
    if let Some(c) = first_violation(d, eps)? {
        return Err(LinearizedError::InvalidAugmentation(d.sig().name(c).to_string()));
    }
    let images: Vec<Vec<usize>> = d
        .diffs()
        .iter()
        .map(|dc| {
            let mut lin = Vec::new();
            for t in dc.terms() {
                let w = &t.word.0;
                let misses: Vec<usize> = (0..w.len()).filter(|&i| !eps.value(w[i])).collect();
                match misses.as_slice() {
                    [] => lin.extend(w.iter().map(|&g| g as usize)),
                    [i] => lin.push(w[*i] as usize),
                    _ => {}
                }
            }
            lin
        })
        .collect();
    complex_for(d.sig(), &images)
}

/// One isomorphism class of linearized homology and the augmentations realizing it.
#[derive(Clone, Debug)]
pub struct HlcClass {
    pub poincare: PoincarePolynomial,
    pub augmentations: Vec<Augmentation>,
    pub complex: LinearizedComplex,
}

/// Classes sorted by Poincaré polynomial, each with its augmentations in
/// enumeration order and the complex of the first one.
pub fn hlc_classes(d: &Dga) -> Result<Vec<HlcClass>, LinearizedError> {
    hlc_classes_capped(d, augmentation_cap())
}

pub fn hlc_classes_capped(d: &Dga, cap: usize) -> Result<Vec<HlcClass>, LinearizedError> {
    let mut classes: BTreeMap<PoincarePolynomial, HlcClass> = BTreeMap::new();
    for eps in enumerate_augmentations_capped(d, cap)? {
        let c = linearize_at(d, &eps)?;
        let p = homology(&c);
        classes
            .entry(p.clone())
            .or_insert_with(|| HlcClass {
                poincare: p,
                augmentations: Vec::new(),
                complex: c,
            })
            .augmentations
            .push(eps);
    }
    Ok(classes.into_values().collect())
}

pub fn hlc_set(d: &Dga) -> Result<BTreeSet<PoincarePolynomial>, LinearizedError> {
    Ok(hlc_classes(d)?.into_iter().map(|c| c.poincare).collect())
}

/// Result of [`full_homology`]; `unit_exact` marks the vanishing shortcut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullHomology {
    pub dims: PoincarePolynomial,
    pub unit_exact: bool,
}

/// Homology of the whole algebra in degrees `0..=max_degree` for a linear
/// differential, as the tensor algebra on the linearized homology.
pub fn full_homology(d: &Dga, max_degree: i64) -> Result<FullHomology, LinearizedError> {
    if d.diffs().iter().any(Element::is_one) {
        return Ok(FullHomology {
            dims: PoincarePolynomial::new(),
            unit_exact: true,
        });
    }
    require_z2(d)?;
    let sig = d.sig();
    if sig.modulus() != 0 {
        return Err(LinearizedError::Unsupported("a Z grading (modulus 0)".into()));
    }
    if let Some(g) = sig.generators().iter().find(|g| g.degree < 1) {
        return Err(LinearizedError::Unsupported(format!(
            "positive generator degrees; `{}` has degree {}",
            g.id, g.degree
        )));
    }
    for (c, dc) in d.diffs().iter().enumerate() {
        if dc.terms().any(|t| t.word.len() != 1) {
            return Err(LinearizedError::Unsupported(format!(
                "a linear differential; ∂{} is not",
                sig.name(c as GenIdx)
            )));
        }
    }
    let h = homology(&linearize(d)?);
    let mut dims = PoincarePolynomial::new();
    if max_degree < 0 {
        return Ok(FullHomology { dims, unit_exact: false });
    }
    let mut words = vec![0usize; max_degree as usize + 1];
    words[0] = 1;
    for k in 1..=max_degree as usize {
        words[k] = h
            .iter()
            .filter(|&(deg, _)| deg as usize <= k)
            .map(|(deg, n)| n * words[k - deg as usize])
            .sum();
    }
    for (k, &n) in words.iter().enumerate() {
        dims.add(k as i64, n);
    }
    Ok(FullHomology { dims, unit_exact: false })
}
