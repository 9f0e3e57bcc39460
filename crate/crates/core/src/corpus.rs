//! Constructors for the standard example algebras and grading datasets.

use crate::algebra::{Element, GenIdx, Generator, GradedSignature, GroupMonomial, Term, Word};
use crate::constructions::{connected_sum_gradings, cusp_stabilize, suspend_linearized};
use crate::dga::Dga;
use crate::error::CorpusError;
use crate::linearized::{enumerate_augmentations, linearize_at, LinearizedComplex};

/// The one-chord sphere: `c` of degree `n`, `∂c = 0`.
pub fn make_l0(n: u32) -> Result<Dga, CorpusError> {
    if n < 1 {
        return Err(CorpusError::Parameter("L0 needs n >= 1".into()));
    }
    let sig = GradedSignature::simple(n, &[("c", n as i64)]).expect("valid");
    Ok(Dga::new(format!("L0({n})"), sig, vec![Element::zero()])?)
}

/// Index subsets of odd size of `1..=m`, each as a strictly decreasing word.
fn odd_decreasing_words(m: usize) -> Vec<Vec<usize>> {
    (1u64..1 << m)
        .filter(|mask| mask.count_ones() % 2 == 1)
        .map(|mask| (0..m).rev().filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// `a1, a2` of degree 1 and `c1..c_{2k+1}` of degree 0.
///
/// `∂a1 = 1 +` every odd-length strictly decreasing word in the `c`'s and
/// `∂a2` is the increasing analogue.
pub fn make_tk(k: u32) -> Result<Dga, CorpusError> {
    if k < 1 {
        return Err(CorpusError::Parameter("Tk needs k >= 1".into()));
    }
    let m = 2 * k as usize + 1;
    let mut gens = vec![Generator::new("a1", 1), Generator::new("a2", 1)];
    gens.extend((1..=m).map(|i| Generator::new(format!("c{i}"), 0)));
    let sig = GradedSignature::new(1, 0, vec![], gens).expect("valid");
    let c = |i: usize| (i + 2) as GenIdx;
    let mut d1 = sig.one();
    let mut d2 = sig.one();
    for w in odd_decreasing_words(m) {
        d1.toggle(Term::new(GroupMonomial::unit(0), Word(w.iter().map(|&i| c(i)).collect())));
        d2.toggle(Term::new(GroupMonomial::unit(0), Word(w.iter().rev().map(|&i| c(i)).collect())));
    }
    let mut diff = vec![d1, d2];
    diff.resize(sig.len(), Element::zero());
    Ok(Dga::new(format!("Tk({k})"), sig, diff)?)
}

/// `c0..cs` of degree 1, `a1` of degree `s - 2`, `a2` of degree `2 - s`, `a3..a_{s+2}` of degree 0.
pub fn make_ws(s: u32) -> Result<Dga, CorpusError> {
    if s < 3 {
        return Err(CorpusError::Parameter("Ws needs s >= 3".into()));
    }
    let s = s as usize;
    let mut gens: Vec<Generator> = (0..=s).map(|i| Generator::new(format!("c{i}"), 1)).collect();
    gens.push(Generator::new("a1", s as i64 - 2));
    gens.push(Generator::new("a2", 2 - s as i64));
    gens.extend((3..=s + 2).map(|i| Generator::new(format!("a{i}"), 0)));
    let sig = GradedSignature::new(1, 0, vec![], gens).expect("valid");
    let a = |i: usize| format!("a{i}");
    let mut diffs = vec![format!("1 + a1 a2 + {}", a(s + 2)), "1 + a3".to_string()];
    diffs.extend((2..=s).map(|i| format!("1 + {} {}", a(i + 1), a(i + 2))));
    diffs.extend(std::iter::repeat_n("0".to_string(), s + 2));
    let refs: Vec<&str> = diffs.iter().map(String::as_str).collect();
    Ok(Dga::parse(format!("Ws({s})"), sig, &refs)?)
}

/// Genus `g` surface: `a_j, ah_j` (degree 2), `b_k, bh_k` (degree 1), `c_j` (degree 1)
/// with the chain of linear differentials `∂a_j = b_{j-1} + b_j + c_j`.
pub fn make_fg(g: u32) -> Result<Dga, CorpusError> {
    if g < 1 {
        return Err(CorpusError::Parameter("Fg needs g >= 1".into()));
    }
    let g = g as usize;
    let mut gens = Vec::new();
    for p in ["a", "ah"] {
        gens.extend((1..=g + 1).map(|j| Generator::new(format!("{p}{j}"), 2)));
    }
    for p in ["b", "bh"] {
        gens.extend((1..=g).map(|j| Generator::new(format!("{p}{j}"), 1)));
    }
    gens.extend((1..=g + 1).map(|j| Generator::new(format!("c{j}"), 1)));
    let sig = GradedSignature::new(2, 0, vec![], gens).expect("valid");
    let mut diffs = Vec::new();
    for b in ["b", "bh"] {
        for j in 1..=g + 1 {
            let mut parts = Vec::new();
            if j > 1 {
                parts.push(format!("{b}{}", j - 1));
            }
            if j <= g {
                parts.push(format!("{b}{j}"));
            }
            parts.push(format!("c{j}"));
            diffs.push(parts.join(" + "));
        }
    }
    diffs.extend(std::iter::repeat_n("0".to_string(), 3 * g + 1));
    let refs: Vec<&str> = diffs.iter().map(String::as_str).collect();
    Ok(Dga::parse(format!("Fg({g})"), sig, &refs)?)
}

fn gradings(n: u32, gens: &[(&str, i64)]) -> Result<GradedSignature, CorpusError> {
    if n < 2 {
        return Err(CorpusError::Parameter("gradings datasets need n >= 2".into()));
    }
    Ok(GradedSignature::simple(n, gens).expect("valid"))
}

pub fn make_l1_gradings(n: u32) -> Result<GradedSignature, CorpusError> {
    let n_ = n as i64;
    gradings(n, &[("a1", n_), ("a2", n_), ("a3", -1), ("a4", 0), ("a5", n_), ("a6", -1), ("b", n_ - 1)])
}

pub fn make_l1prime_gradings(n: u32) -> Result<GradedSignature, CorpusError> {
    let n_ = n as i64;
    gradings(
        n,
        &[("a1", n_), ("a2", n_), ("a3", n_ - 1), ("a4", 0), ("a5", n_), ("a6", n_ - 1), ("b", n_ - 1)],
    )
}

pub fn make_lprime_gradings(n: u32) -> Result<GradedSignature, CorpusError> {
    let n_ = n as i64;
    gradings(n, &[("c", n_ + 2), ("a", 1), ("b", n_)])
}

/// `k`-fold connected sum of the `L1` gradings.
pub fn make_lk_gradings(k: u32, n: u32) -> Result<GradedSignature, CorpusError> {
    if k < 1 {
        return Err(CorpusError::Parameter("Lk needs k >= 1".into()));
    }
    let l1 = make_l1_gradings(n)?;
    let mut acc = l1.clone();
    for _ in 1..k {
        acc = connected_sum_gradings(&acc, &l1, n)?;
    }
    Ok(acc)
}

/// `F_g^k = F_g^{k-1} # L1` gradings, with `F_g^0 = F_g`.
pub fn make_fgk_gradings(g: u32, k: u32) -> Result<GradedSignature, CorpusError> {
    let l1 = make_l1_gradings(2)?;
    let mut acc = make_fg(g)?.sig().clone();
    for _ in 0..k {
        acc = connected_sum_gradings(&acc, &l1, 2)?;
    }
    Ok(acc)
}

/// `n`-fold suspension of the linearized complex of `T_k` at its first augmentation.
pub fn make_sigma_tk(n: u32, k: u32) -> Result<LinearizedComplex, CorpusError> {
    let t = make_tk(k)?;
    let eps = enumerate_augmentations(&t)
        .ok()
        .and_then(|v| v.into_iter().next())
        .ok_or_else(|| CorpusError::Parameter(format!("Tk({k}) has no augmentation")))?;
    let mut c = linearize_at(&t, &eps).map_err(|e| CorpusError::Parameter(e.to_string()))?;
    for _ in 0..n {
        c = suspend_linearized(&c);
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    FullDga,
    GradingsOnly,
    LinearizedComplex,
}

impl CorpusKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CorpusKind::FullDga => "full_dga",
            CorpusKind::GradingsOnly => "gradings_only",
            CorpusKind::LinearizedComplex => "linearized_complex",
        }
    }
}

#[derive(Clone, Debug)]
pub enum CorpusPayload {
    Dga(Dga),
    Gradings(GradedSignature),
    Complex(LinearizedComplex),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: CorpusKind,
    pub payload: CorpusPayload,
    pub provenance: String,
}

/// Family parameters; unused ones are ignored.
#[derive(Clone, Copy, Debug, Default)]
pub struct Params {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub s: Option<u32>,
    pub g: Option<u32>,
}

fn need(p: Option<u32>, what: &str, family: &str) -> Result<u32, CorpusError> {
    p.ok_or_else(|| CorpusError::Parameter(format!("{family} needs --{what}")))
}

/// Family names understood by [`make_entry`].
pub const FAMILIES: &[&str] = &[
    "L0", "Tk", "Ws", "Fg", "cuspL0", "L1", "L1prime", "Lprime", "Lk", "Fgk", "SigmaTk",
];

/// Builds one catalog entry from a family name and its parameters.
pub fn make_entry(family: &str, p: Params) -> Result<CorpusEntry, CorpusError> {
    let full = |d: Dga, prov: &str| CorpusEntry {
        name: d.name().to_string(),
        kind: CorpusKind::FullDga,
        payload: CorpusPayload::Dga(d),
        provenance: prov.to_string(),
    };
    let grad = |name: String, s: GradedSignature, prov: &str| CorpusEntry {
        name,
        kind: CorpusKind::GradingsOnly,
        payload: CorpusPayload::Gradings(s),
        provenance: prov.to_string(),
    };
    Ok(match family {
        "L0" => full(make_l0(need(p.n, "n", family)?)?, "standard sphere with a single Reeb chord"),
        "Tk" => full(make_tk(need(p.k, "k", family)?)?, "knot with two degree-1 and 2k+1 degree-0 chords"),
        "Ws" => full(make_ws(need(p.s, "s", family)?)?, "knot with a unique augmentation"),
        "Fg" => full(make_fg(need(p.g, "g", family)?)?, "genus g surface with linear differential"),
        "cuspL0" => {
            let n = need(p.n, "n", family)?;
            let d = cusp_stabilize(&make_l0(n)?).with_name(format!("cuspL0({n})"));
            full(d, "sphere after cusp stabilization")
        }
        "L1" => {
            let n = need(p.n, "n", family)?;
            grad(format!("L1({n})"), make_l1_gradings(n)?, "stabilized sphere, gradings of seven chords")
        }
        "L1prime" => {
            let n = need(p.n, "n", family)?;
            grad(format!("L1prime({n})"), make_l1prime_gradings(n)?, "alternative stabilized sphere")
        }
        "Lprime" => {
            let n = need(p.n, "n", family)?;
            grad(format!("Lprime({n})"), make_lprime_gradings(n)?, "sphere with three chords")
        }
        "Lk" => {
            let (k, n) = (need(p.k, "k", family)?, need(p.n, "n", family)?);
            grad(format!("Lk({k},{n})"), make_lk_gradings(k, n)?, "iterated connected sum of L1")
        }
        "Fgk" => {
            let (g, k) = (need(p.g, "g", family)?, need(p.k, "k", family)?);
            grad(format!("Fgk({g},{k})"), make_fgk_gradings(g, k)?, "Fg summed with k copies of L1")
        }
        "SigmaTk" => {
            let (n, k) = (need(p.n, "n", family)?, need(p.k, "k", family)?);
            CorpusEntry {
                name: format!("SigmaTk({n},{k})"),
                kind: CorpusKind::LinearizedComplex,
                payload: CorpusPayload::Complex(make_sigma_tk(n, k)?),
                provenance: "n-fold front spinning of Tk, linearized".into(),
            }
        }
        other => return Err(CorpusError::UnknownFamily(other.to_string())),
    })
}

/// Deterministic catalog of every family at small parameters.
pub fn list_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |family: &str, p: Params| out.push(make_entry(family, p).expect("catalog parameters are valid"));
    let none = Params::default();
    for n in 1..=5 {
        push("L0", Params { n: Some(n), ..none });
    }
    for k in 1..=4 {
        push("Tk", Params { k: Some(k), ..none });
    }
    for s in 3..=6 {
        push("Ws", Params { s: Some(s), ..none });
    }
    for g in 1..=3 {
        push("Fg", Params { g: Some(g), ..none });
    }
    for n in 2..=3 {
        push("cuspL0", Params { n: Some(n), ..none });
    }
    for fam in ["L1", "L1prime", "Lprime"] {
        for n in 2..=4 {
            push(fam, Params { n: Some(n), ..none });
        }
    }
    for k in 2..=3 {
        for n in 2..=3 {
            push("Lk", Params { k: Some(k), n: Some(n), ..none });
        }
    }
    for g in 1..=2 {
        for k in 1..=2 {
            push("Fgk", Params { g: Some(g), k: Some(k), ..none });
        }
    }
    for n in 1..=3 {
        for k in 1..=3 {
            push("SigmaTk", Params { n: Some(n), k: Some(k), ..none });
        }
    }
    out
}

/// The full DGAs of the catalog.
pub fn full_dgas() -> Vec<Dga> {
    list_corpus()
        .into_iter()
        .filter_map(|e| match e.payload {
            CorpusPayload::Dga(d) => Some(d),
            _ => None,
        })
        .collect()
}
