//! Symmetric tridiagonal matrices `Λ(c_1, …, c_ℓ)` with unit off-diagonal.
//!
//! The associated matrix `A(c) = S G(c_1) ⋯ G(c_ℓ)`, with `S = (0, -1; 1, 0)`
//! and `G(c) = (c, -1; 1, 0)`, drives everything here: `Λ` is invertible iff
//! its bottom-left entry `γ` is nonzero, the four corners of `Λ^{-1}` are
//! read off from it, and the signature can be computed by peeling one
//! diagonal entry at a time.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dedekind::{dedekind_symbol, CoprimePair};
use crate::rational::{q, sgn, Q};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tridiagonal(Vec<Q>);

impl Tridiagonal {
    pub fn new(diagonal: Vec<Q>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::InvalidInput("empty tridiagonal matrix".into()));
        }
        Ok(Self(diagonal))
    }

    pub fn from_ints(diagonal: &[i64]) -> Result<Self> {
        Self::new(diagonal.iter().map(|&c| q(c)).collect())
    }

    pub fn diagonal(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn trace(&self) -> Q {
        self.0.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// The full `ℓ × ℓ` matrix, row major.
    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let n = self.len();
        let mut m = vec![vec![Q::zero(); n]; n];
        for (i, c) in self.0.iter().enumerate() {
            m[i][i] = c.clone();
            if i + 1 < n {
                m[i][i + 1] = Q::one();
                m[i + 1][i] = Q::one();
            }
        }
        m
    }
}

/// Rational 2×2 matrix `(α, β; γ, δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2Q {
    pub alpha: Q,
    pub beta: Q,
    pub gamma: Q,
    pub delta: Q,
}

impl Mat2Q {
    pub fn new(alpha: Q, beta: Q, gamma: Q, delta: Q) -> Self {
        Self { alpha, beta, gamma, delta }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(q(a), q(b), q(c), q(d))
    }

    fn s() -> Self {
        Self::from_ints(0, -1, 1, 0)
    }

    /// Right multiplication by `(c, -1; 1, 0)`.
    fn times_generator(&self, c: &Q) -> Self {
        Self {
            alpha: &self.alpha * c + &self.beta,
            beta: -self.alpha.clone(),
            gamma: &self.gamma * c + &self.delta,
            delta: -self.gamma.clone(),
        }
    }

    pub fn det(&self) -> Q {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }
}

pub fn associated_mat2(t: &Tridiagonal) -> Mat2Q {
    associated(t.diagonal())
}

fn associated(c: &[Q]) -> Mat2Q {
    c.iter().fold(Mat2Q::s(), |m, ci| m.times_generator(ci))
}

/// Signature by peeling from the right:
/// `ζ(c_1..c_ℓ) = ζ(c_1..c_{ℓ-1}) - sgn(γ) sgn(δ)` with `(α, β; γ, δ) = A(c_1..c_ℓ)`.
pub fn signature_recursive(t: &Tridiagonal) -> i64 {
    let c = t.diagonal();
    let mut m = Mat2Q::s().times_generator(&c[0]);
    let mut zeta = sgn(&c[0]) as i64;
    for ci in &c[1..] {
        m = m.times_generator(ci);
        zeta -= (sgn(&m.gamma) * sgn(&m.delta)) as i64;
    }
    zeta
}

/// Signature by peeling from the left:
/// `ζ(c_1..c_ℓ) = ζ(c_2..c_ℓ) - sgn(γ) sgn(α)`.
pub fn signature_recursive_left(t: &Tridiagonal) -> i64 {
    let c = t.diagonal();
    let l = c.len();
    let mut zeta = sgn(&c[l - 1]) as i64;
    for start in (0..l - 1).rev() {
        let m = associated(&c[start..]);
        zeta -= (sgn(&m.gamma) * sgn(&m.alpha)) as i64;
    }
    zeta
}

/// Signature through exact symmetric congruence diagonalization of the full
/// matrix. Independent of the recursions above.
pub fn signature_oracle(t: &Tridiagonal) -> i64 {
    signature_of_symmetric(t.to_dense())
}

/// Signature of an arbitrary symmetric rational matrix.
pub fn signature_of_symmetric(mut m: Vec<Vec<Q>>) -> i64 {
    let n = m.len();
    let mut zeta = 0i64;
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal. Either the rest of the form vanishes, or some
                // m[i][j] != 0 and adding row/col j to i creates the pivot
                // 2 m[i][j] (a hyperbolic pair contributes +1 and -1).
                let hit = active.iter().find_map(|&i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !m[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = hit else { break };
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[i][k] += v;
                }
                for k in 0..n {
                    let v = m[k][j].clone();
                    m[k][i] += v;
                }
                i
            }
        };
        let d = m[p][p].clone();
        zeta += sgn(&d) as i64;
        active.retain(|&i| i != p);
        let row = m[p].clone();
        for &i in &active {
            if m[i][p].is_zero() {
                continue;
            }
            let f = &m[i][p] / &d;
            for &k in &active {
                m[i][k] -= &f * &row[k];
            }
            m[i][p] = Q::zero();
            m[p][i] = Q::zero();
        }
    }
    zeta
}

/// `(Λ^{-1}_{11}, Λ^{-1}_{1ℓ}, Λ^{-1}_{ℓℓ}) = (-α/γ, (-1)^{ℓ+1}/γ, -δ/γ)`.
pub fn inverse_corners(t: &Tridiagonal) -> Result<(Q, Q, Q)> {
    let m = associated_mat2(t);
    if m.gamma.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let sign = if t.len() % 2 == 1 { Q::one() } else { -Q::one() };
    Ok((-&m.alpha / &m.gamma, sign / &m.gamma, -&m.delta / &m.gamma))
}

/// Both sides of `3 ζ(Λ) - tr(Λ) = S(α/γ) - (α + δ)/γ` (or `-β/α` when `γ = 0`).
///
/// Requires integer entries, so that `(α, γ)` is a coprime pair.
pub fn kirby_melvin(t: &Tridiagonal) -> Result<(Q, Q)> {
    if !t.is_integral() {
        return Err(Error::InvalidInput(
            "Kirby–Melvin identity needs an integral tridiagonal matrix".into(),
        ));
    }
    let lhs = q(3 * signature_recursive(t)) - t.trace();
    let m = associated_mat2(t);
    let rhs = if m.gamma.is_zero() {
        -&m.beta / &m.alpha
    } else {
        let (a, c) = (m.alpha.to_integer(), m.gamma.to_integer());
        if !a.gcd(&c).is_one() {
            return Err(Error::Consistency(format!("alpha = {a} and gamma = {c} not coprime")));
        }
        dedekind_symbol(&CoprimePair::new(a, c)?) - (&m.alpha + &m.delta) / &m.gamma
    };
    Ok((lhs, rhs))
}

/// Exact inverse by Gauss–Jordan elimination, or `None` when singular.
pub fn dense_inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let v = &f * &a[col][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn t(c: &[i64]) -> Tridiagonal {
        Tridiagonal::from_ints(c).unwrap()
    }

    #[test]
    fn associated_examples() {
        assert_eq!(associated_mat2(&t(&[0])), Mat2Q::from_ints(-1, 0, 0, -1));
        assert_eq!(associated_mat2(&t(&[1])), Mat2Q::from_ints(-1, 0, 1, -1));
        assert_eq!(associated_mat2(&t(&[2, 2])), Mat2Q::from_ints(-2, 1, 3, -2));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature_recursive(&t(&[0])), 0);
        assert_eq!(signature_recursive(&t(&[2, 2])), 2);
        assert_eq!(signature_recursive(&t(&[0, 0])), 0);
        assert_eq!(signature_oracle(&t(&[1])), 1);
        assert_eq!(signature_oracle(&t(&[-3])), -1);
        assert_eq!(signature_oracle(&t(&[2, 2])), 2);
        assert_eq!(signature_oracle(&t(&[0, 0])), 0);
        assert_eq!(signature_oracle(&t(&[0, 0, 0])), 0);
    }

    #[test]
    fn corner_examples() {
        assert_eq!(
            inverse_corners(&t(&[2, 2])).unwrap(),
            (frac(2, 3), frac(-1, 3), frac(2, 3))
        );
        assert_eq!(inverse_corners(&t(&[1])).unwrap(), (q(1), q(1), q(1)));
        assert_eq!(inverse_corners(&t(&[0])), Err(Error::SingularMatrix));
    }

    #[test]
    fn kirby_melvin_examples() {
        assert_eq!(kirby_melvin(&t(&[0])).unwrap(), (q(0), q(0)));
        assert_eq!(kirby_melvin(&t(&[1])).unwrap(), (q(2), q(2)));
        assert_eq!(kirby_melvin(&t(&[2, 2])).unwrap(), (q(2), q(2)));
        let half = Tridiagonal::new(vec![frac(1, 2)]).unwrap();
        assert!(kirby_melvin(&half).is_err());
    }

    fn rational_entry() -> impl Strategy<Value = Q> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| frac(n, d))
    }

    proptest! {
        #[test]
        fn recursions_match_oracle(c in prop::collection::vec(rational_entry(), 1..=10)) {
            let t = Tridiagonal::new(c).unwrap();
            let z = signature_oracle(&t);
            prop_assert_eq!(signature_recursive(&t), z);
            prop_assert_eq!(signature_recursive_left(&t), z);
        }

        #[test]
        fn corners_match_dense_inverse(c in prop::collection::vec(rational_entry(), 1..=8)) {
            let t = Tridiagonal::new(c).unwrap();
            let dense = dense_inverse(&t.to_dense());
            match inverse_corners(&t) {
                Ok((tl, off, br)) => {
                    let inv = dense.expect("gamma != 0 means invertible");
                    let l = t.len();
                    prop_assert_eq!(&inv[0][0], &tl);
                    prop_assert_eq!(&inv[0][l - 1], &off);
                    prop_assert_eq!(&inv[l - 1][0], &off);
                    prop_assert_eq!(&inv[l - 1][l - 1], &br);
                }
                Err(_) => prop_assert!(dense.is_none()),
            }
        }

        #[test]
        fn associated_has_unit_determinant(c in prop::collection::vec(rational_entry(), 1..=8)) {
            let t = Tridiagonal::new(c).unwrap();
            prop_assert_eq!(associated_mat2(&t).det(), Q::one());
        }

        #[test]
        fn kirby_melvin_identity(c in prop::collection::vec(-5i64..=5, 1..=8)) {
            let (lhs, rhs) = kirby_melvin(&t(&c)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
