//! Exact integer sequences and rational generating functions.
//!
//! Everything here is arbitrary precision; no operation silently truncates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// F(n) with F(0) = 0, F(1) = 1, F(n) = k*F(n-1) + F(n-2).
///
/// k = 1 gives the Fibonacci numbers, k = 2 the Pell numbers.
pub fn k_fibonacci(n: u64, k: u64) -> BigInt {
    let kb = BigInt::from(k);
    let (mut a, mut b) = (BigInt::zero(), BigInt::one()); // F(0), F(1)
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let next = &kb * &b + &a;
        a = b;
        b = next;
    }
    b
}

pub fn fibonacci(n: u64) -> BigInt {
    k_fibonacci(n, 1)
}

pub fn pell(n: u64) -> BigInt {
    k_fibonacci(n, 2)
}

/// Dense polynomial with integer coefficients, index = degree.
///
/// Canonical form: no trailing zero coefficients; the zero polynomial is
/// an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
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
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients in degree-ascending order as decimal strings, the
    /// serialization used by every JSON report.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{}", term(c, i, false))?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", term(&-c, i, true))?;
            } else {
                write!(f, " + {}", term(c, i, true))?;
            }
        }
        Ok(())
    }
}

fn term(c: &BigInt, deg: usize, magnitude_only: bool) -> String {
    let _ = magnitude_only;
    let cs = c.to_string();
    match deg {
        0 => cs,
        1 if c.is_one() => "x".to_string(),
        1 => format!("{cs}x"),
        _ if c.is_one() => format!("x^{deg}"),
        _ => format!("{cs}x^{deg}"),
    }
}

/// numerator(t) / denominator(t) as a formal power series in t.
#[derive(Debug, Clone)]
pub struct RationalGF {
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
}

/// First `count` power-series coefficients of `gf`.
///
/// Runs the standard long-division recurrence
/// c_i = (num_i - sum_{j>=1} den_j * c_{i-j}) / den_0 and fails if any
/// coefficient is not an exact integer.
pub fn gf_coefficients(gf: &RationalGF, count: usize) -> Result<Vec<BigInt>> {
    let d0 = gf.denominator.coeff(0);
    if d0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for i in 0..count {
        let mut acc = gf.numerator.coeff(i);
        for j in 1..=i.min(gf.denominator.degree()) {
            acc -= gf.denominator.coeff(j) * &out[i - j];
        }
        if !(&acc % &d0).is_zero() {
            return Err(Error::NonIntegralCoefficient { index: i });
        }
        out.push(acc / &d0);
    }
    Ok(out)
}

/// t / (1 - k t - t^2), the generating function of the k-Fibonacci numbers.
pub fn k_fibonacci_gf(k: u64) -> RationalGF {
    RationalGF {
        numerator: IntPolynomial::from_i64(&[0, 1]),
        denominator: IntPolynomial::new(vec![
            BigInt::one(),
            -BigInt::from(k),
            -BigInt::one(),
        ]),
    }
}

/// ((k - 1 + t) t) / (1 - k t - t^2)^2, whose n-th coefficient is the edge
/// count of the n-th k-Pell graph.
pub fn edge_count_gf(k: u64) -> RationalGF {
    let lin = IntPolynomial::new(vec![
        BigInt::one(),
        -BigInt::from(k),
        -BigInt::one(),
    ]);
    RationalGF {
        numerator: IntPolynomial::new(vec![
            BigInt::zero(),
            BigInt::from(k - 1),
            BigInt::one(),
        ]),
        denominator: lin.mul(&lin),
    }
}
