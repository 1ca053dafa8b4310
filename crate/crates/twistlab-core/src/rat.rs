//! Exact rational scalars.
//!
//! `Rat` wraps `Ratio<i128>`. All workspace profiles build with
//! `overflow-checks = true`, so an overflow aborts instead of wrapping.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(Ratio<i128>);

impl Rat {
    pub const fn raw(r: Ratio<i128>) -> Self {
        Rat(r)
    }

    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(Ratio::new(num, den))
    }

    pub fn int(n: i128) -> Self {
        Rat(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Rat(Ratio::zero())
    }

    pub fn one() -> Self {
        Rat(Ratio::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn pow(&self, k: i32) -> Self {
        if k >= 0 {
            let mut acc = Rat::one();
            for _ in 0..k {
                acc *= *self;
            }
            acc
        } else {
            self.recip().pow(-k)
        }
    }

    /// Generalized binomial coefficient `c (c-1) ... (c-k+1) / k!`.
    pub fn binomial(c: Rat, k: u32) -> Rat {
        let mut num = Rat::one();
        for j in 0..k {
            num *= c - Rat::int(j as i128);
        }
        num / Rat::int(factorial(k))
    }

    /// True when the rational is an integer.
    pub fn is_integer(&self) -> bool {
        self.denom() == 1
    }
}

pub fn factorial(k: u32) -> i128 {
    (1..=k as i128).product()
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Rat {
    fn mul_assign(&mut self, rhs: Rat) {
        self.0 *= rhs.0;
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n as i128)
    }
}
