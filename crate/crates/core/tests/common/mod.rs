//! Oracles and generators shared by the integration tests.
//!
//! Everything here is written against the public API only and recomputes
//! answers by brute force, so it stays independent of the library's own
//! algorithms.
#![allow(dead_code)]

use lch_core::algebra::{Element, GenIdx, Generator, GradedSignature, GroupMonomial};
use lch_core::dga::Dga;
use lch_core::linearized::{LinearizedComplex, PoincarePolynomial};
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Sparse GF(2) elimination

/// Rank over GF(2) of sparse vectors given as lists of row codes.
///
/// Vectors are sorted in decreasing order and reduced one at a time against
/// pivots keyed by their largest entry.
pub struct SparseEliminator {
    pivots: FxHashMap<u64, Vec<u64>>,
}

impl SparseEliminator {
    pub fn new() -> Self {
        SparseEliminator { pivots: FxHashMap::default() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a column given as row codes with repeats; repeats cancel in pairs.
    pub fn insert_raw(&mut self, mut v: Vec<u64>) {
        v.sort_unstable_by(|a, b| b.cmp(a));
        let mut dedup: Vec<u64> = Vec::with_capacity(v.len());
        for c in v {
            if dedup.last() == Some(&c) {
                dedup.pop();
            } else {
                dedup.push(c);
            }
        }
        self.insert(dedup);
    }

    fn insert(&mut self, mut v: Vec<u64>) {
        while let Some(&lead) = v.first() {
            match self.pivots.get(&lead) {
                Some(p) => v = xor_desc(&v, p),
                None => {
                    self.pivots.insert(lead, v);
                    return;
                }
            }
        }
    }
}

fn xor_desc(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match b[j].cmp(&a[i]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

// ---------------------------------------------------------------------------
// Differentials and evaluation

/// Leibniz extension of the generator differentials, term by term.
pub fn leibniz(diffs: &[Element], rank: usize, e: &Element) -> Element {
    let mut out = Element::zero();
    for t in e.terms() {
        let w = &t.word.0;
        for p in 0..w.len() {
            let left = Element::monomial(t.coeff.clone(), w[..p].to_vec());
            let right = Element::monomial(GroupMonomial::unit(rank), w[p + 1..].to_vec());
            out.add_assign(&left.mul(&diffs[w[p] as usize]).mul(&right));
        }
    }
    out
}

pub fn oracle_d(d: &Dga, e: &Element) -> Element {
    leibniz(d.diffs(), d.sig().h1_rank(), e)
}

/// `∂∂c = 0` for every generator, recomputed from scratch.
pub fn d_squared_zero(d: &Dga) -> bool {
    d.diffs().iter().all(|dc| oracle_d(d, dc).is_zero())
}

/// Every term of `∂c` has degree `|c| - 1`, recomputed from scratch.
pub fn degrees_drop_by_one(d: &Dga) -> bool {
    let sig = d.sig();
    let m = sig.modulus() as i64;
    let red = |x: i64| if m == 0 { x } else { x.rem_euclid(m) };
    (0..sig.len()).all(|c| {
        let want = red(sig.generators()[c].degree - 1);
        d.diffs()[c].terms().all(|t| {
            let letters: i64 = t.word.0.iter().map(|&g| sig.generators()[g as usize].degree).sum();
            let coeff: i64 = t.coeff.0.iter().zip(sig.maslov_t()).map(|(e, mu)| e * mu).sum();
            red(letters - coeff) == want
        })
    })
}

/// `ε(e)` over GF(2), coefficients set to 1.
pub fn evaluate(e: &Element, values: &[bool]) -> bool {
    e.terms()
        .filter(|t| t.word.0.iter().all(|&g| values[g as usize]))
        .count()
        % 2
        == 1
}

/// Chain-map check `φ(∂_from c) = ∂_to(φ(c))` using substitution and [`leibniz`].
pub fn chain_map_holds(images: &[Element], from: &Dga, to: &Dga) -> bool {
    (0..from.sig().len()).all(|c| {
        let lhs = from.diffs()[c].substitute(images);
        let rhs = oracle_d(to, &images[c]);
        lhs == rhs
    })
}

// ---------------------------------------------------------------------------
// Augmentations and linearized homology

fn is_degree_zero(sig: &GradedSignature, g: usize) -> bool {
    sig.gen_degree(g as GenIdx) == 0
}

/// All augmentations by trying every assignment on the degree-0 generators,
/// in lexicographic order with the first degree-0 generator most significant.
pub fn brute_force_augmentations(d: &Dga) -> Vec<Vec<bool>> {
    let sig = d.sig();
    let vars: Vec<usize> = (0..sig.len()).filter(|&g| is_degree_zero(sig, g)).collect();
    let k = vars.len();
    assert!(k <= 20, "brute force over {k} variables");
    let mut out = Vec::new();
    for mask in 0u64..1 << k {
        let mut values = vec![false; sig.len()];
        for (i, &g) in vars.iter().enumerate() {
            values[g] = mask >> (k - 1 - i) & 1 == 1;
        }
        if d.diffs().iter().all(|dc| !evaluate(dc, &values)) {
            out.push(values);
        }
    }
    out
}

/// Linearized homology at `ε` by expanding `∂c` after `c ↦ c + ε(c)` and
/// keeping words of length one.
pub fn linearized_homology_oracle(d: &Dga, values: &[bool]) -> PoincarePolynomial {
    let sig = d.sig();
    let m = sig.modulus() as i64;
    let red = |x: i64| if m == 0 { x } else { x.rem_euclid(m) };
    let shifted: Vec<Element> = (0..sig.len())
        .map(|g| {
            let mut e = sig.gen(g as GenIdx);
            if values[g] {
                e.add_assign(&sig.one());
            }
            e
        })
        .collect();
    let linear: Vec<Vec<u64>> = d
        .diffs()
        .iter()
        .map(|dc| {
            dc.substitute(&shifted)
                .terms()
                .filter(|t| t.word.len() == 1)
                .map(|t| t.word.0[0] as u64)
                .collect()
        })
        .collect();
    let mut by_degree: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for g in 0..sig.len() {
        by_degree.entry(red(sig.generators()[g].degree)).or_default().push(g);
    }
    let rank = |k: i64| -> usize {
        let mut elim = SparseEliminator::new();
        for &g in by_degree.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
            elim.insert_raw(linear[g].clone());
        }
        elim.rank()
    };
    PoincarePolynomial::from_pairs(
        by_degree
            .iter()
            .map(|(&k, gens)| (k, gens.len() - rank(k) - rank(red(k + 1)))),
    )
}

/// Homology of a complex from its basis degrees and images alone.
pub fn complex_homology_oracle(c: &LinearizedComplex) -> PoincarePolynomial {
    let m = c.modulus() as i64;
    let red = |x: i64| if m == 0 { x } else { x.rem_euclid(m) };
    let elements = c.elements();
    let images = c.images();
    let mut by_degree: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for (i, (_, k)) in elements.iter().enumerate() {
        by_degree.entry(red(*k)).or_default().push(i);
    }
    let rank = |k: i64| -> usize {
        let mut elim = SparseEliminator::new();
        for &i in by_degree.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
            elim.insert_raw(images[i].iter().map(|&j| j as u64).collect());
        }
        elim.rank()
    };
    PoincarePolynomial::from_pairs(
        by_degree
            .iter()
            .map(|(&k, v)| (k, v.len() - rank(k) - rank(red(k + 1)))),
    )
}

// ---------------------------------------------------------------------------
// Homology of the whole algebra on the word basis

/// Words of a given length whose letter degrees sum to `degree`.
fn words_of(degrees: &[i64], len: usize, degree: i64, f: &mut impl FnMut(&[GenIdx])) {
    fn go(degrees: &[i64], len: usize, left: i64, w: &mut Vec<GenIdx>, f: &mut impl FnMut(&[GenIdx])) {
        if w.len() == len {
            if left == 0 {
                f(w);
            }
            return;
        }
        let slots = (len - w.len()) as i64;
        for (g, &d) in degrees.iter().enumerate() {
            let rest = left - d;
            if rest < slots - 1 {
                continue;
            }
            w.push(g as GenIdx);
            go(degrees, len, rest, w, f);
            w.pop();
        }
    }
    go(degrees, len, degree, &mut Vec::with_capacity(len), f);
}

fn count_words(degrees: &[i64], len: usize, degree: i64) -> usize {
    if len == 0 {
        return (degree == 0) as usize;
    }
    degrees
        .iter()
        .filter(|&&d| d <= degree)
        .map(|&d| count_words(degrees, len - 1, degree - d))
        .sum()
}

fn encode(w: &[GenIdx], radix: u64) -> u64 {
    w.iter().fold(0, |acc, &g| acc * radix + g as u64)
}

/// Homology of the whole algebra by Gaussian elimination on the word basis,
/// degree by degree and word length by word length. Needs a linear
/// differential over GF(2) and generator degrees at least 1.
pub fn word_basis_homology(d: &Dga, max_degree: i64) -> PoincarePolynomial {
    let sig = d.sig();
    let degrees: Vec<i64> = sig.generators().iter().map(|g| g.degree).collect();
    assert!(degrees.iter().all(|&k| k >= 1), "oracle needs positive degrees");
    let radix = sig.len() as u64;
    let closed: Vec<bool> = d.diffs().iter().map(Element::is_zero).collect();
    let images: Vec<Vec<GenIdx>> = d
        .diffs()
        .iter()
        .map(|e| {
            e.terms()
                .map(|t| {
                    assert_eq!(t.word.len(), 1, "oracle needs a linear differential");
                    t.word.0[0]
                })
                .collect()
        })
        .collect();
    // rank of ∂ on words of degree k and length len
    let rank = |k: i64, len: usize| -> usize {
        let mut elim = SparseEliminator::new();
        let mut buf: Vec<GenIdx> = Vec::new();
        words_of(&degrees, len, k, &mut |w| {
            if w.iter().all(|&g| closed[g as usize]) {
                return;
            }
            let mut col = Vec::new();
            buf.clear();
            buf.extend_from_slice(w);
            for p in 0..w.len() {
                for &img in &images[w[p] as usize] {
                    buf[p] = img;
                    col.push(encode(&buf, radix));
                }
                buf[p] = w[p];
            }
            elim.insert_raw(col);
        });
        elim.rank()
    };
    let mut out = PoincarePolynomial::new();
    if max_degree >= 0 {
        out.add(0, 1);
    }
    for k in 1..=max_degree {
        let mut dim = 0usize;
        for len in 1..=k as usize {
            let count = count_words(&degrees, len, k);
            if count > 0 {
                dim += count - rank(k, len) - rank(k + 1, len);
            }
        }
        out.add(k, dim);
    }
    out
}

/// Number of words of each degree in a free algebra on letters of the given degrees.
pub fn free_word_counts(letter_degrees: &[i64], max_degree: i64) -> PoincarePolynomial {
    let mut counts = vec![0usize; max_degree as usize + 1];
    counts[0] = 1;
    for k in 1..=max_degree as usize {
        counts[k] = letter_degrees
            .iter()
            .filter(|&&d| d as usize <= k)
            .map(|&d| counts[k - d as usize])
            .sum();
    }
    PoincarePolynomial::from_pairs(counts.into_iter().enumerate().map(|(k, n)| (k as i64, n)))
}

// ---------------------------------------------------------------------------
// Index oracle

/// Integers strictly between `a` and `b`, counted one by one.
pub fn enumerate_open(a: Rational64, b: Rational64) -> i64 {
    let lo = a.floor().to_integer() - 1;
    let hi = b.ceil().to_integer() + 1;
    (lo..=hi)
        .filter(|&z| {
            let z = Rational64::from_integer(z);
            a < z && z < b
        })
        .count() as i64
}

/// The model operator index from explicit integer enumeration.
pub fn model_index_oracle(pairs: &[(Rational64, Rational64, Rational64)]) -> i64 {
    let one = Rational64::from_integer(1);
    pairs
        .iter()
        .map(|&(theta, mu_plus, mu_minus)| {
            let (lo, hi) = (mu_minus + theta, mu_plus + theta);
            enumerate_open(-lo, -hi) - enumerate_open(lo - one, hi - one)
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Random admissible instances

/// Words over `letters` of length at most `max_len` with degree sum `target`.
pub fn words_with_degree(
    sig: &GradedSignature,
    letters: &[GenIdx],
    target: i64,
    max_len: usize,
) -> Vec<Vec<GenIdx>> {
    let mut out = Vec::new();
    let mut frontier: Vec<(Vec<GenIdx>, i64)> = vec![(Vec::new(), 0)];
    for len in 0..=max_len {
        let mut next = Vec::new();
        for (w, deg) in frontier {
            if deg == target {
                out.push(w.clone());
            }
            if len < max_len {
                for &g in letters {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push((w2, deg + sig.generators()[g as usize].degree));
                }
            }
        }
        frontier = next;
    }
    out
}

/// A random sum of words drawn from `pool`.
pub fn random_sum(rng: &mut impl Rng, pool: &[Vec<GenIdx>], max_terms: usize, rank: usize) -> Element {
    let mut e = Element::zero();
    if pool.is_empty() {
        return e;
    }
    for _ in 0..rng.gen_range(0..=max_terms) {
        let w = pool.choose(rng).unwrap();
        e.add_assign(&Element::monomial(GroupMonomial::unit(rank), w.clone()));
    }
    e
}

/// `ψ ∂ ψ` for the involution `ψ(x) = x + u` where `u` avoids `x`.
pub fn conjugate_by_shift(d: &Dga, x: GenIdx, u: &Element) -> Dga {
    let sig = d.sig();
    assert!(!u.contains_letter(x));
    let images: Vec<Element> = (0..sig.len() as GenIdx)
        .map(|g| if g == x { sig.gen(g).add(u) } else { sig.gen(g) })
        .collect();
    let diff = (0..sig.len())
        .map(|g| oracle_d(d, &images[g]).substitute(&images))
        .collect();
    Dga::new(d.name(), sig.clone(), diff).expect("conjugate is well formed")
}

/// A triangular DGA over GF(2): the first few generators have zero
/// differential, the rest map into words of those. Random triangular shifts
/// are then conjugated in.
pub fn random_triangular_dga(rng: &mut impl Rng, n: usize, shifts: usize) -> Dga {
    let degrees: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=2)).collect();
    let gens: Vec<Generator> = (0..n)
        .map(|i| Generator::new(format!("x{i}"), degrees[i]))
        .collect();
    let sig = GradedSignature::new(1, 0, Vec::new(), gens).unwrap();
    let closed = rng.gen_range(1..=n.div_ceil(2));
    let closed_letters: Vec<GenIdx> = (0..closed as GenIdx).collect();
    let diff: Vec<Element> = (0..n)
        .map(|g| {
            if g < closed {
                Element::zero()
            } else {
                let pool = words_with_degree(&sig, &closed_letters, degrees[g] - 1, 3);
                random_sum(rng, &pool, 3, 0)
            }
        })
        .collect();
    let mut d = Dga::new("random", sig.clone(), diff).unwrap();
    for _ in 0..if n > 1 { shifts } else { 0 } {
        let x = rng.gen_range(1..n) as GenIdx;
        let earlier: Vec<GenIdx> = (0..x).collect();
        let pool: Vec<Vec<GenIdx>> = words_with_degree(&sig, &earlier, degrees[x as usize], 2)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        let u = random_sum(rng, &pool, 2, 0);
        d = conjugate_by_shift(&d, x, &u);
    }
    d
}

/// An admissible destabilization: `plus` on `B.., b, a, a1..` and `minus` on `B.., a1..`.
pub struct DestabInstance {
    pub plus: Dga,
    pub minus: Dga,
    pub j: i64,
}

pub fn random_destab_instance(rng: &mut impl Rng) -> DestabInstance {
    let j: i64 = rng.gen_range(0..=2);
    let nb = rng.gen_range(1..=3);
    let l = rng.gen_range(0..=(6 - nb).min(3));
    let mut gens: Vec<Generator> = Vec::new();
    for i in 0..nb {
        gens.push(Generator::new(format!("B{i}"), rng.gen_range(-1..=2)));
    }
    let bi = nb as GenIdx;
    let ai = bi + 1;
    gens.push(Generator::new("b", j - 1));
    gens.push(Generator::new("a", j));
    for i in 0..l {
        gens.push(Generator::new(format!("a{}", i + 1), rng.gen_range(-1..=2)));
    }
    let n = gens.len();
    let sig = GradedSignature::new(1, 0, Vec::new(), gens).unwrap();
    let deg = |g: usize| sig.generators()[g].degree;

    // base differential: B layered, ∂a = b, a_i into closed letters
    let closed_b = rng.gen_range(1..=nb);
    let b_closed: Vec<GenIdx> = (0..closed_b as GenIdx).collect();
    let mut closed = b_closed.clone();
    closed.push(bi);
    let mut diff = vec![Element::zero(); n];
    for (g, slot) in diff.iter_mut().enumerate().take(nb).skip(closed_b) {
        let pool = words_with_degree(&sig, &b_closed, deg(g) - 1, 3);
        *slot = random_sum(rng, &pool, 3, 0);
    }
    diff[ai as usize] = sig.gen(bi);
    for (g, slot) in diff.iter_mut().enumerate().skip(ai as usize + 1) {
        let pool = words_with_degree(&sig, &closed, deg(g) - 1, 3);
        *slot = random_sum(rng, &pool, 3, 0);
    }
    let mut plus = Dga::new("plus", sig.clone(), diff).unwrap();

    // triangular shifts; those of b and a stay inside B
    let b_letters: Vec<GenIdx> = (0..nb as GenIdx).collect();
    for _ in 0..rng.gen_range(0..=6) {
        let x = rng.gen_range(1..n) as GenIdx;
        let letters: Vec<GenIdx> = if x == bi || x == ai { b_letters.clone() } else { (0..x).collect() };
        let pool: Vec<Vec<GenIdx>> = words_with_degree(&sig, &letters, deg(x as usize), 2)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        let u = random_sum(rng, &pool, 2, 0);
        plus = conjugate_by_shift(&plus, x, &u);
    }

    // ∂_- is ∂_+ with b ↦ v and a ↦ 0, where ∂_+ a = b + v
    let v = plus.diffs()[ai as usize].add(&sig.gen(bi));
    assert!(!v.contains_letter(ai) && !v.contains_letter(bi));
    let keep: Vec<usize> = (0..n).filter(|&g| g != ai as usize && g != bi as usize).collect();
    let msig = GradedSignature::new(
        1,
        0,
        Vec::new(),
        keep.iter().map(|&g| sig.generators()[g].clone()).collect(),
    )
    .unwrap();
    let mut plain = vec![Element::zero(); n];
    for (i, &g) in keep.iter().enumerate() {
        plain[g] = msig.gen(i as GenIdx);
    }
    let mut to_minus = plain.clone();
    to_minus[bi as usize] = v.substitute(&plain);
    let mdiff = keep.iter().map(|&g| plus.diffs()[g].substitute(&to_minus)).collect();
    let minus = Dga::new("minus", msig, mdiff).unwrap();
    DestabInstance { plus, minus, j }
}

/// Slides `a ↦ a + w` that are admissible: `w` a nonempty word of degree
/// `|a|` without `a`, `∂w` and `∂a` free of `a`.
pub fn admissible_slides(d: &Dga, max_len: usize) -> Vec<(String, Element)> {
    let sig = d.sig();
    let n = sig.len() as GenIdx;
    let mut out = Vec::new();
    for a in 0..n {
        if d.diffs()[a as usize].contains_letter(a) {
            continue;
        }
        let others: Vec<GenIdx> = (0..n).filter(|&g| g != a).collect();
        for w in words_with_degree(sig, &others, sig.generators()[a as usize].degree, max_len) {
            if w.is_empty() {
                continue;
            }
            let shift = Element::monomial(GroupMonomial::unit(sig.h1_rank()), w);
            if !oracle_d(d, &shift).contains_letter(a) {
                out.push((sig.name(a).to_string(), shift));
            }
        }
    }
    out
}

/// A random DGA with an admissible handle slide on it.
pub fn random_slide_instance(rng: &mut impl Rng) -> (Dga, String, Element) {
    loop {
        let n = rng.gen_range(2..=7);
        let shifts = rng.gen_range(0..=4);
        let d = random_triangular_dga(rng, n, shifts);
        let slides = admissible_slides(&d, 3);
        if let Some((a, w)) = slides.choose(rng) {
            return (d.clone(), a.clone(), w.clone());
        }
    }
}

/// A random word over all letters of `sig`.
pub fn random_word(rng: &mut impl Rng, sig: &GradedSignature, max_len: usize) -> Element {
    let len = rng.gen_range(0..=max_len);
    let w: Vec<GenIdx> = (0..len).map(|_| rng.gen_range(0..sig.len()) as GenIdx).collect();
    Element::monomial(GroupMonomial::unit(sig.h1_rank()), w)
}
