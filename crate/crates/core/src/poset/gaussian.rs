//! Gaussian binomial `[a choose b]_q` via exact integer polynomial division:
//!
//! ```text
//! [a choose b]_q = (1-q)(1-q^2)...(1-q^a) / ((1-q)...(1-q^b) * (1-q)...(1-q^{a-b}))
//! ```

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial in `q`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![BigInt::one()] }
    }

    /// `1 - q^k` for `k >= 1`.
    pub fn one_minus_q_pow(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::one();
        coeffs[k] = -BigInt::one();
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial { coeffs: Vec::new() };
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }

    /// Exact quotient `self / divisor`; `None` if the division leaves a
    /// remainder or is not integral.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(Zero::is_zero).then(|| Polynomial { coeffs: Vec::new() });
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return None;
            }
            let q = top / lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * d;
            }
            quot[shift] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Polynomial::from_coeffs(quot))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

fn q_factorial(k: usize) -> Polynomial {
    (1..=k).fold(Polynomial::one(), |acc, i| acc.mul(&Polynomial::one_minus_q_pow(i)))
}

/// `[a choose b]_q`; the zero polynomial when `b > a`.
pub fn gaussian_binomial(a: usize, b: usize) -> Polynomial {
    if b > a {
        return Polynomial { coeffs: Vec::new() };
    }
    let numerator = q_factorial(a);
    let denominator = q_factorial(b).mul(&q_factorial(a - b));
    numerator.div_exact(&denominator).expect("q-factorial quotient is always an integer polynomial")
}
