//! Closed-form index formulas: gradings from front data, Thurston–Bennequin,
//! moduli dimensions and Fredholm indices.
//!
//! Gradings from fronts depend on a choice of capping paths; callers supply
//! the path data and get an answer well defined only modulo the Maslov number.

use num_rational::Rational64;

use crate::error::IndexError;

/// Cusp counts along a capping path and the Morse index at the chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrontChordData {
    pub down_cusps: u32,
    pub up_cusps: u32,
    pub hessian_index: u32,
}

impl FrontChordData {
    /// Conley–Zehnder index `ν = D - U + Index`.
    pub fn cz(&self) -> i64 {
        self.down_cusps as i64 - self.up_cusps as i64 + self.hessian_index as i64
    }

    /// Generator grading `ν - 1`.
    pub fn grading(&self) -> i64 {
        self.cz() - 1
    }
}

/// `ν = D - U + Index`; checks `hessian_index <= n`.
pub fn cz_from_front(f: FrontChordData, n: u32) -> Result<i64, IndexError> {
    if f.hessian_index > n {
        return Err(IndexError::Invalid(format!(
            "Hessian index {} exceeds dimension {n}",
            f.hessian_index
        )));
    }
    Ok(f.cz())
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^{(n-2)(n-1)/2} Σ (-1)^{|c|}`.
pub fn thurston_bennequin(n: i64, degrees: &[i64]) -> i64 {
    sign((n - 2) * (n - 1) / 2) * degrees.iter().map(|&d| sign(d)).sum::<i64>()
}

/// `μ(A) + |a| - |b| - 1`.
pub fn moduli_dimension(mu_a: i64, deg_a: i64, deg_b_sum: i64) -> i64 {
    mu_a + deg_a - deg_b_sum - 1
}

/// `μ(A) + ν(a) - Σ ν(b_j) + max(0, m - 2)` with `m` negative punctures.
pub fn dimension_cor914(mu_a: i64, nu_a: i64, nu_b: &[i64], m: i64) -> Result<i64, IndexError> {
    if m != nu_b.len() as i64 {
        return Err(IndexError::Invalid(format!(
            "m = {m} but {} negative punctures given",
            nu_b.len()
        )));
    }
    Ok(mu_a + nu_a - nu_b.iter().sum::<i64>() + (m - 2).max(0))
}

/// `μ(B) + (1 - j) n + Σ ν(a_r) - Σ ν(b_r)` with `j` positive punctures.
pub fn fredholm_index_cz(mu_b: i64, n: i64, nu_pos: &[i64], nu_neg: &[i64]) -> Result<i64, IndexError> {
    let j = nu_pos.len() as i64;
    if j < 1 {
        return Err(IndexError::Invalid("at least one positive puncture".into()));
    }
    Ok(mu_b + (1 - j) * n + nu_pos.iter().sum::<i64>() - nu_neg.iter().sum::<i64>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfTangencyVariant {
    Weighted,
    Tilde,
}

/// Index for disks near a self-tangency chord `c`.
///
/// `is_c[r]` flags negative punctures at `c`; `positive_at_c` flags the positive one.
/// The weighted variant adds one for each flagged negative puncture; the tilde
/// variant counts the positive puncture at `c` as `ν(c) + 1`.
pub fn fredholm_index_selftangency(
    mu_b: i64,
    nu_a: i64,
    nu_b: &[i64],
    is_c: &[bool],
    positive_at_c: bool,
    variant: SelfTangencyVariant,
) -> Result<i64, IndexError> {
    if nu_b.len() != is_c.len() {
        return Err(IndexError::Invalid(format!(
            "{} negative indices but {} flags",
            nu_b.len(),
            is_c.len()
        )));
    }
    let neg: i64 = nu_b.iter().sum();
    Ok(match variant {
        SelfTangencyVariant::Weighted => {
            mu_b + nu_a - neg - is_c.iter().filter(|&&f| f).count() as i64
        }
        SelfTangencyVariant::Tilde => mu_b + nu_a + positive_at_c as i64 - neg,
    })
}

/// One coordinate of the model operator, in units of π.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightAnglePair {
    pub theta: Rational64,
    pub mu_plus: Rational64,
    pub mu_minus: Rational64,
}

impl WeightAnglePair {
    pub fn new(theta: Rational64, mu_plus: Rational64, mu_minus: Rational64) -> Self {
        WeightAnglePair {
            theta,
            mu_plus,
            mu_minus,
        }
    }

    fn check(&self) -> Result<(), IndexError> {
        let zero = Rational64::from_integer(0);
        if self.theta < zero || self.theta >= Rational64::from_integer(1) {
            return Err(IndexError::Invalid(format!("θ/π = {} outside [0, 1)", self.theta)));
        }
        for mu in [self.mu_plus, self.mu_minus] {
            if (self.theta + mu).is_integer() {
                return Err(IndexError::Degenerate(format!(
                    "θ/π + μ/π = {} is an integer",
                    self.theta + mu
                )));
            }
        }
        Ok(())
    }
}

/// Number of integers in the open interval `(a, b)`; zero when `a >= b`.
pub fn integers_in_open(a: Rational64, b: Rational64) -> i64 {
    if a >= b {
        return 0;
    }
    (b.ceil().to_integer() - a.floor().to_integer() - 1).max(0)
}

/// `Σ_j #(-(μ⁻+θ), -(μ⁺+θ)) - #((μ⁻+θ) - 1, (μ⁺+θ) - 1)`, all in units of π.
pub fn model_index(pairs: &[WeightAnglePair]) -> Result<i64, IndexError> {
    let one = Rational64::from_integer(1);
    pairs.iter().try_fold(0, |acc, p| {
        p.check()?;
        let (lo, hi) = (p.mu_minus + p.theta, p.mu_plus + p.theta);
        Ok(acc + integers_in_open(-lo, -hi) - integers_in_open(lo - one, hi - one))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn cz_examples() {
        let f = |d, u, h| FrontChordData { down_cusps: d, up_cusps: u, hessian_index: h };
        assert_eq!(cz_from_front(f(0, 0, 2), 3), Ok(2));
        assert_eq!(cz_from_front(f(2, 1, 3), 3), Ok(4));
        assert_eq!(f(1, 0, 2).grading(), 2);
        assert!(cz_from_front(f(0, 0, 4), 3).is_err());
    }

    #[test]
    fn tb_examples() {
        assert_eq!(thurston_bennequin(2, &[2]), 1);
        assert_eq!(thurston_bennequin(2, &[4, 1, 2]), 1);
        assert_eq!(thurston_bennequin(5, &[]), 0);
        assert_eq!(thurston_bennequin(2, &[2, 2, 2, 1, 0, -1, -1]), 1);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(moduli_dimension(0, 1, 0), 0);
        assert_eq!(moduli_dimension(0, 4, 3), 0);
        assert_eq!(moduli_dimension(0, 1, 1), -1);
        assert_eq!(dimension_cor914(3, 2, &[], 0), Ok(5));
        assert_eq!(dimension_cor914(0, 1, &[1, 1], 2), Ok(-1));
        assert!(dimension_cor914(0, 1, &[1], 2).is_err());
    }

    #[test]
    fn fredholm_examples() {
        assert_eq!(fredholm_index_cz(1, 3, &[4], &[1, 2]), Ok(2));
        assert_eq!(fredholm_index_cz(0, 3, &[0, 0], &[]), Ok(-3));
        assert!(fredholm_index_cz(0, 3, &[], &[1]).is_err());
    }

    #[test]
    fn selftangency_examples() {
        use SelfTangencyVariant::*;
        let w = fredholm_index_selftangency(0, 3, &[1, 1], &[false, true], false, Weighted).unwrap();
        let t = fredholm_index_selftangency(0, 3, &[1, 1], &[false, true], false, Tilde).unwrap();
        assert_eq!(t - w, 1);
        let w = fredholm_index_selftangency(0, 3, &[1], &[false], true, Weighted).unwrap();
        let t = fredholm_index_selftangency(0, 3, &[1], &[false], true, Tilde).unwrap();
        assert_eq!(t - w, 1);
        assert!(fredholm_index_selftangency(0, 3, &[1], &[], false, Tilde).is_err());
    }

    #[test]
    fn model_index_examples() {
        let p = WeightAnglePair::new(r(1, 2), r(-1, 1), r(1, 1));
        assert_eq!(model_index(&[p]), Ok(2));
        let q = WeightAnglePair::new(r(1, 2), r(1, 1), r(-1, 1));
        assert_eq!(model_index(&[q]), Ok(-2));
        let same = WeightAnglePair::new(r(1, 3), r(5, 7), r(5, 7));
        assert_eq!(model_index(&[same]), Ok(0));
        let bad = WeightAnglePair::new(r(1, 2), r(1, 2), r(0, 1));
        assert!(matches!(model_index(&[bad]), Err(IndexError::Degenerate(_))));
    }

    #[test]
    fn open_interval_counts() {
        assert_eq!(integers_in_open(r(-3, 2), r(1, 2)), 2);
        assert_eq!(integers_in_open(r(0, 1), r(1, 1)), 0);
        assert_eq!(integers_in_open(r(0, 1), r(2, 1)), 1);
        assert_eq!(integers_in_open(r(1, 2), r(-3, 2)), 0);
    }
}
