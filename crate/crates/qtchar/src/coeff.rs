//! Coefficients `lam + mu*I` over the quotient Z[I]/(I^2 - I).
//!
//! `I` stands for the interpolating idempotent of the ambient scheme
//! (alpha, beta, or their reverse companions). Because `I` is idempotent,
//! a coefficient is equivalently a pair of integers: its value at `I = 0`
//! and its value at `I = 1`. All arithmetic is componentwise in that basis,
//! which is what makes the two specialization maps exact on coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// An element `lam + mu*I` with `I^2 = I`. Integers are arbitrary precision.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Coeff {
    pub lam: BigInt,
    pub mu: BigInt,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff {
            lam: BigInt::one(),
            mu: BigInt::zero(),
        }
    }

    /// The idempotent itself, `0 + 1*I`.
    pub fn iota() -> Self {
        Coeff {
            lam: BigInt::zero(),
            mu: BigInt::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Coeff {
            lam: BigInt::from(n),
            mu: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lam.is_zero() && self.mu.is_zero()
    }

    /// Value at `I = 0`.
    pub fn at_zero(&self) -> BigInt {
        self.lam.clone()
    }

    /// Value at `I = 1`.
    pub fn at_one(&self) -> BigInt {
        &self.lam + &self.mu
    }

    /// Rebuild from the evaluation pair `(at_zero, at_one)`.
    pub fn from_evals(at_zero: BigInt, at_one: BigInt) -> Self {
        let mu = &at_one - &at_zero;
        Coeff { lam: at_zero, mu }
    }

    /// True when the coefficient mentions `I` (mu != 0).
    pub fn has_iota(&self) -> bool {
        !self.mu.is_zero()
    }

    /// Render with the scheme's idempotent symbol, e.g. `1`, `a`, `1+aL`, `2`.
    pub fn render(&self, symbol: &str) -> String {
        if self.mu.is_zero() {
            return self.lam.to_string();
        }
        let mu_part = if self.mu == BigInt::one() {
            symbol.to_string()
        } else if self.mu == -BigInt::one() {
            format!("-{symbol}")
        } else {
            format!("{}{symbol}", self.mu)
        };
        if self.lam.is_zero() {
            mu_part
        } else if self.mu.sign() == num_bigint::Sign::Minus {
            format!("{}{}", self.lam, mu_part)
        } else {
            format!("{}+{}", self.lam, mu_part)
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        Coeff {
            lam: &self.lam + &rhs.lam,
            mu: &self.mu + &rhs.mu,
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        Coeff {
            lam: &self.lam - &rhs.lam,
            mu: &self.mu - &rhs.mu,
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        // (l1 + m1 I)(l2 + m2 I) = l1 l2 + (l1 m2 + m1 l2 + m1 m2) I
        Coeff {
            lam: &self.lam * &rhs.lam,
            mu: &self.lam * &rhs.mu + &self.mu * &rhs.lam + &self.mu * &rhs.mu,
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            lam: -self.lam.clone(),
            mu: -self.mu.clone(),
        }
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.lam += &rhs.lam;
        self.mu += &rhs.mu;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        self.lam -= &rhs.lam;
        self.mu -= &rhs.mu;
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("I"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_square() {
        let i = Coeff::iota();
        assert_eq!(&i * &i, i);
    }

    #[test]
    fn one_minus_iota_kills_iota() {
        let i = Coeff::iota();
        let co = &Coeff::one() - &i;
        assert!((&co * &i).is_zero());
    }

    #[test]
    fn multiplication_is_componentwise_in_evals() {
        let a = Coeff {
            lam: BigInt::from(3),
            mu: BigInt::from(-2),
        };
        let b = Coeff {
            lam: BigInt::from(-1),
            mu: BigInt::from(7),
        };
        let p = &a * &b;
        assert_eq!(p.at_zero(), a.at_zero() * b.at_zero());
        assert_eq!(p.at_one(), a.at_one() * b.at_one());
    }

    #[test]
    fn eval_roundtrip() {
        let c = Coeff {
            lam: BigInt::from(5),
            mu: BigInt::from(-9),
        };
        assert_eq!(Coeff::from_evals(c.at_zero(), c.at_one()), c);
    }

    #[test]
    fn rendering() {
        assert_eq!(Coeff::one().render("a"), "1");
        assert_eq!(Coeff::iota().render("a"), "a");
        assert_eq!(
            Coeff {
                lam: BigInt::one(),
                mu: BigInt::one()
            }
            .render("aL"),
            "1+aL"
        );
        assert_eq!(Coeff::from_int(2).render("b"), "2");
        assert_eq!(
            Coeff {
                lam: BigInt::zero(),
                mu: BigInt::from(-3)
            }
            .render("b"),
            "-3b"
        );
    }
}
