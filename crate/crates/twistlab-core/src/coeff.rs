//! Exact scalar arithmetic: multivariate polynomials over the rationals in a
//! fixed registry of formal parameters, plus truncated power series.
//!
//! Every parameter exponent is a non-negative integer except for `s`, the only
//! parameter allowed Laurent (negative) powers. Series arithmetic is carried
//! out modulo a declared truncation order and never silently extends it.

use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Number of registered formal parameters.
pub const NPARAMS: usize = 12;

/// Identifier of a formal parameter in the fixed registry.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ParamId(pub u8);

pub mod params {
    use super::ParamId;
    pub const XI: ParamId = ParamId(0);
    pub const XI1: ParamId = ParamId(1);
    pub const XI2: ParamId = ParamId(2);
    pub const ZETA: ParamId = ParamId(3);
    pub const ETA: ParamId = ParamId(4);
    pub const MU: ParamId = ParamId(5);
    pub const LAMBDA: ParamId = ParamId(6);
    pub const T: ParamId = ParamId(7);
    pub const S: ParamId = ParamId(8);
    pub const A: ParamId = ParamId(9);
    pub const ALPHA1: ParamId = ParamId(10);
    pub const ALPHA2: ParamId = ParamId(11);
}

pub const PARAM_NAMES: [&str; NPARAMS] = [
    "xi", "xi1", "xi2", "zeta", "eta", "mu", "lambda", "t", "s", "a", "alpha1", "alpha2",
];

impl ParamId {
    pub fn name(&self) -> &'static str {
        PARAM_NAMES[self.0 as usize]
    }

    pub fn by_name(name: &str) -> Option<ParamId> {
        PARAM_NAMES
            .iter()
            .position(|n| *n == name)
            .map(|i| ParamId(i as u8))
    }

    /// `s` is the only parameter permitted negative exponents.
    pub fn allows_laurent(&self) -> bool {
        *self == params::S
    }
}

/// Exponent vector of a polynomial monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono(pub [i16; NPARAMS]);

impl Mono {
    pub fn unit() -> Mono {
        Mono([0; NPARAMS])
    }

    pub fn param(p: ParamId, k: i16) -> Mono {
        let mut e = [0; NPARAMS];
        e[p.0 as usize] = k;
        Mono(e)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0; NPARAMS];
        for i in 0..NPARAMS {
            e[i] = self.0[i] + other.0[i];
        }
        Mono(e)
    }

    pub fn exp(&self, p: ParamId) -> i16 {
        self.0[p.0 as usize]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn check_valid(&self) {
        for i in 0..NPARAMS {
            if self.0[i] < 0 && !ParamId(i as u8).allows_laurent() {
                panic!("negative exponent of {}", PARAM_NAMES[i]);
            }
        }
    }
}

/// Multivariate polynomial over `Rat`, Laurent only in `s`.
/// No zero coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly {
        Poly::rat(Rat::one())
    }

    pub fn rat(r: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Mono::unit(), r);
        }
        Poly { terms }
    }

    pub fn int(n: i128) -> Poly {
        Poly::rat(Rat::int(n))
    }

    pub fn param(p: ParamId) -> Poly {
        Poly::term(Rat::one(), Mono::param(p, 1))
    }

    pub fn term(c: Rat, m: Mono) -> Poly {
        m.check_valid();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Constant term (coefficient of the unit monomial).
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Mono::unit())
            .copied()
            .unwrap_or_else(Rat::zero)
    }

    /// `Some(r)` when the polynomial is the constant `r`.
    pub fn as_const(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            Some(Rat::zero())
        } else if self.terms.len() == 1 {
            self.terms
                .get(&Mono::unit())
                .copied()
                .or(None)
                .filter(|_| true)
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        m.check_valid();
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, -*c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            out.terms.insert(*m, -*c);
        }
        out
    }

    pub fn scale(&self, r: Rat) -> Poly {
        let mut out = Poly::zero();
        if r.is_zero() {
            return out;
        }
        for (m, c) in self.terms.iter() {
            out.terms.insert(*m, *c * r);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                out.add_term(m1.mul(m2), *c1 * *c2);
            }
        }
        out
    }

    pub fn mul_param(&self, p: ParamId, k: i16) -> Poly {
        let mut out = Poly::zero();
        let shift = Mono::param(p, k);
        for (m, c) in self.terms.iter() {
            out.add_term(m.mul(&shift), *c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree in parameter `p` (maximal exponent), 0 for the zero poly.
    pub fn degree_in(&self, p: ParamId) -> i16 {
        self.terms.keys().map(|m| m.exp(p)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, p: ParamId) -> i16 {
        self.terms.keys().map(|m| m.exp(p)).min().unwrap_or(0)
    }

    pub fn depends_on(&self, p: ParamId) -> bool {
        self.terms.keys().any(|m| m.exp(p) != 0)
    }

    /// Split into powers of `p`: degree -> coefficient polynomial free of `p`.
    pub fn collect_powers(&self, p: ParamId) -> BTreeMap<i16, Poly> {
        let mut out: BTreeMap<i16, Poly> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let k = m.exp(p);
            let mut stripped = *m;
            stripped.0[p.0 as usize] = 0;
            out.entry(k).or_insert_with(Poly::zero).add_term(stripped, *c);
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Coefficient of `p^k` (a polynomial free of `p`).
    pub fn coeff_of(&self, p: ParamId, k: i16) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            if m.exp(p) == k {
                let mut stripped = *m;
                stripped.0[p.0 as usize] = 0;
                out.add_term(stripped, *c);
            }
        }
        out
    }

    /// Substitute a polynomial for a parameter. The parameter must occur with
    /// non-negative exponents only.
    pub fn subst(&self, p: ParamId, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            let k = m.exp(p);
            assert!(k >= 0, "cannot substitute into a Laurent power");
            let mut stripped = *m;
            stripped.0[p.0 as usize] = 0;
            let repl = value.pow(k as u32).scale(*c);
            for (mr, cr) in repl.terms.iter() {
                out.add_term(stripped.mul(mr), *cr);
            }
        }
        out
    }

    /// Drop every term whose `s`-exponent lies outside `[lo, hi]`.
    pub fn clamp_s(&self, lo: i16, hi: i16) -> Poly {
        let s = params::S;
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            let k = m.exp(s);
            if k >= lo && k <= hi {
                out.add_term(*m, *c);
            }
        }
        out
    }

    /// Generalized binomial coefficient with a polynomial top argument:
    /// `c (c-1) ... (c-k+1) / k!`.
    pub fn binomial(c: &Poly, k: u32) -> Poly {
        let mut num = Poly::one();
        for j in 0..k {
            num = num.mul(&c.sub(&Poly::int(j as i128)));
        }
        num.scale(Rat::int(crate::rat::factorial(k)).recip())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            let mut part = String::new();
            if m.is_unit() {
                part = alloc::format!("{}", c);
            } else {
                if !c.is_one() {
                    if *c == -Rat::one() {
                        part.push('-');
                    } else {
                        part = alloc::format!("{}*", c);
                    }
                }
                let mut firstp = true;
                for i in 0..NPARAMS {
                    let e = m.0[i];
                    if e != 0 {
                        if !firstp {
                            part.push('*');
                        }
                        firstp = false;
                        if e == 1 {
                            part.push_str(PARAM_NAMES[i]);
                        } else {
                            part.push_str(&alloc::format!("{}^{}", PARAM_NAMES[i], e));
                        }
                    }
                }
            }
            if first {
                write!(f, "{}", part)?;
            } else if part.starts_with('-') {
                write!(f, " - {}", &part[1..])?;
            } else {
                write!(f, " + {}", part)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Element types usable as truncated-series coefficients.
pub trait SeriesElem: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: Rat) -> Self;
    fn one() -> Self;
}

impl SeriesElem for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn neg(&self) -> Self {
        self.neg()
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scale(&self, r: Rat) -> Self {
        self.scale(r)
    }
    fn one() -> Self {
        Poly::one()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesError {
    NonUnitLeadingTerm,
    BadLeadingTerm,
    IllegalLaurent,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonUnitLeadingTerm => write!(f, "leading coefficient is not invertible"),
            SeriesError::BadLeadingTerm => write!(f, "series does not start with the identity"),
            SeriesError::IllegalLaurent => {
                write!(f, "substitution creates negative powers outside s")
            }
        }
    }
}

/// Truncated (Laurent) series in one distinguished parameter with coefficients
/// in `T`. Coefficients must be free of the series variable. Equality and all
/// ring operations are understood modulo degree `n + 1`; arithmetic never
/// extends the truncation order.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<T: SeriesElem> {
    pub var: ParamId,
    /// Lowest represented order (may be negative only for `s`).
    pub lo: i32,
    /// Truncation order: coefficients are tracked for degrees `lo ..= n`.
    pub n: i32,
    coeffs: Vec<T>,
}

impl<T: SeriesElem> TruncSeries<T> {
    pub fn zero(var: ParamId, n: i32) -> Self {
        TruncSeries {
            var,
            lo: 0,
            n,
            coeffs: vec![T::zero(); (n + 1).max(0) as usize],
        }
    }

    pub fn one(var: ParamId, n: i32) -> Self {
        Self::from_coeff(var, n, 0, T::one())
    }

    /// Series with the single term `c * var^k`.
    pub fn from_coeff(var: ParamId, n: i32, k: i32, c: T) -> Self {
        assert!(k >= 0 || var.allows_laurent(), "negative order requires s");
        let lo = k.min(0);
        let mut coeffs = vec![T::zero(); (n - lo + 1).max(0) as usize];
        if k <= n {
            coeffs[(k - lo) as usize] = c;
        }
        TruncSeries { var, lo, n, coeffs }
    }

    pub fn coeff(&self, k: i32) -> T {
        if k < self.lo || k > self.n {
            T::zero()
        } else {
            self.coeffs[(k - self.lo) as usize].clone()
        }
    }

    pub fn set_coeff(&mut self, k: i32, c: T) {
        assert!(k <= self.n, "order beyond truncation");
        if k < self.lo {
            assert!(k >= 0 || self.var.allows_laurent());
            let extra = (self.lo - k) as usize;
            let mut new = vec![T::zero(); extra];
            new.extend(self.coeffs.drain(..));
            self.coeffs = new;
            self.lo = k;
        }
        self.coeffs[(k - self.lo) as usize] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest order with a nonzero coefficient.
    pub fn min_order(&self) -> Option<i32> {
        (self.lo..=self.n).find(|&k| !self.coeff(k).is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var);
        let n = self.n.min(other.n);
        let lo = self.lo.min(other.lo);
        let mut out = TruncSeries {
            var: self.var,
            lo,
            n,
            coeffs: vec![T::zero(); (n - lo + 1).max(0) as usize],
        };
        for k in lo..=n {
            out.coeffs[(k - lo) as usize] = self.coeff(k).add(&other.coeff(k));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, r: Rat) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.scale(r);
        }
        out
    }

    pub fn scale_elem(&self, e: &T) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.mul(e);
        }
        out
    }

    /// Product modulo the common truncation. With Laurent tails the result is
    /// valid to order `min(n1 + lo2, n2 + lo1)`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var);
        let n = (self.n + other.lo).min(other.n + self.lo);
        let lo = self.lo + other.lo;
        let mut out = TruncSeries {
            var: self.var,
            lo: lo.min(0),
            n,
            coeffs: vec![T::zero(); (n - lo.min(0) + 1).max(0) as usize],
        };
        for i in self.lo..=self.n {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in other.lo..=other.n {
                if i + j > n {
                    break;
                }
                let b = other.coeff(j);
                if b.is_zero() {
                    continue;
                }
                let idx = (i + j - out.lo) as usize;
                out.coeffs[idx] = out.coeffs[idx].add(&a.mul(&b));
            }
        }
        out
    }

    /// Multiply by `var^k`. Negative `k` requires that no nonzero coefficient
    /// lands below order zero (unless the variable is `s`).
    pub fn shift(&self, k: i32) -> Result<Self, SeriesError> {
        let mut out = self.clone();
        out.lo += k;
        out.n += k;
        if out.lo < 0 && !self.var.allows_laurent() {
            // Tolerate structurally-zero leading coefficients.
            while out.lo < 0 {
                if !out.coeffs.first().map(|c| c.is_zero()).unwrap_or(true) {
                    return Err(SeriesError::IllegalLaurent);
                }
                out.coeffs.remove(0);
                out.lo += 1;
            }
        }
        Ok(out)
    }

    /// Truncate to a smaller order.
    pub fn truncate(&self, n: i32) -> Self {
        assert!(n <= self.n);
        let mut out = self.clone();
        out.coeffs.truncate((n - out.lo + 1).max(0) as usize);
        out.n = n;
        out
    }

    /// Exponential of a series whose lowest nonzero order is >= 1.
    pub fn exp(&self) -> Self {
        assert!(
            self.min_order().map(|m| m >= 1).unwrap_or(true),
            "exp argument must vanish at order 0"
        );
        let mut acc = Self::one(self.var, self.n);
        let mut power = Self::one(self.var, self.n);
        for k in 1..=self.n.max(0) {
            power = power.mul(self).truncate(self.n.min(power.n));
            // power has lowest order >= k; stop once it is identically zero.
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(Rat::int(crate::rat::factorial(k as u32)).recip()));
        }
        acc
    }

    /// `ln(1 + f)` of a series `f` with lowest nonzero order >= 1.
    pub fn ln_one_plus(&self) -> Self {
        assert!(
            self.min_order().map(|m| m >= 1).unwrap_or(true),
            "log argument must vanish at order 0"
        );
        let mut acc = Self::zero(self.var, self.n);
        let mut power = Self::one(self.var, self.n);
        for k in 1..=self.n.max(0) {
            power = power.mul(self).truncate(self.n.min(power.n));
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
            acc = acc.add(&power.scale(sign / Rat::int(k as i128)));
        }
        acc
    }

    /// `(1 + f)^c` by the generalized binomial series; `f` must vanish at
    /// order 0 and `c` is an arbitrary exact scalar coefficient.
    pub fn pow_binomial(&self, c: &Poly) -> Self
    where
        T: ScaleByPoly,
    {
        assert!(
            self.min_order().map(|m| m >= 1).unwrap_or(true),
            "binomial argument must vanish at order 0"
        );
        let mut acc = Self::one(self.var, self.n);
        let mut power = Self::one(self.var, self.n);
        for k in 1..=self.n.max(0) {
            power = power.mul(self).truncate(self.n.min(power.n));
            if power.is_zero() {
                break;
            }
            let b = Poly::binomial(c, k as u32);
            if b.is_zero() {
                continue;
            }
            acc = acc.add(&power.scale_poly(&b));
        }
        acc
    }

    pub fn scale_poly(&self, p: &Poly) -> Self
    where
        T: ScaleByPoly,
    {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.scale_poly(p);
        }
        out
    }

    /// Map every coefficient.
    pub fn map<U: SeriesElem>(&self, f: impl Fn(&T) -> U) -> TruncSeries<U> {
        TruncSeries {
            var: self.var,
            lo: self.lo,
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| f(c)).collect(),
        }
    }
}

/// Coefficient types that can be rescaled by a polynomial.
pub trait ScaleByPoly {
    fn scale_poly(&self, p: &Poly) -> Self;
}

impl ScaleByPoly for Poly {
    fn scale_poly(&self, p: &Poly) -> Self {
        self.mul(p)
    }
}

impl TruncSeries<Poly> {
    /// Invert a series whose lowest-order coefficient is a nonzero rational
    /// constant, by order-by-order recursion.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let m = self.min_order().ok_or(SeriesError::NonUnitLeadingTerm)?;
        let u = self.coeff(m);
        let u0 = u.as_const().ok_or(SeriesError::NonUnitLeadingTerm)?;
        if u0.is_zero() {
            return Err(SeriesError::NonUnitLeadingTerm);
        }
        if m != 0 && !(self.var.allows_laurent() || m > 0) {
            return Err(SeriesError::NonUnitLeadingTerm);
        }
        // g has orders -m .. n - 2m so that f*g == 1 mod var^{n - m + 1}.
        let glo = -m;
        let gn = self.n - 2 * m;
        if glo < 0 && !self.var.allows_laurent() {
            return Err(SeriesError::IllegalLaurent);
        }
        let uinv = Poly::rat(u0.recip());
        let mut g = TruncSeries::<Poly>::zero(self.var, gn.max(glo));
        g.set_coeff(glo, uinv.clone());
        for k in (glo + 1)..=gn {
            // coefficient of var^{k+m} in f*g must vanish
            let mut acc = Poly::zero();
            for j in glo..k {
                let fj = self.coeff(k + m - j);
                if fj.is_zero() {
                    continue;
                }
                acc = acc.add(&fj.mul(&g.coeff(j)));
            }
            g.set_coeff(k, acc.neg().mul(&uinv));
        }
        Ok(g)
    }

    /// Coefficient of the first power of the series variable.
    pub fn d_at_zero(&self, p: ParamId) -> Poly {
        assert_eq!(p, self.var, "derivative parameter must be the series variable");
        assert!(self.n >= 1, "series not truncated to order >= 1");
        self.coeff(1)
    }

    /// Substitute `p -> c * var^k` inside the coefficients, re-binning series
    /// orders. Fails if a nonzero term would land at a negative order.
    pub fn subst_param_curve(&self, p: ParamId, c: &Poly, k: i32) -> Result<Self, SeriesError> {
        assert_ne!(p, self.var);
        assert!(!c.depends_on(self.var) && !c.depends_on(p));
        let mut out = TruncSeries::<Poly>::zero(self.var, self.n);
        for d in self.lo..=self.n {
            let coeff = self.coeff(d);
            if coeff.is_zero() {
                continue;
            }
            for (j, cj) in coeff.collect_powers(p) {
                assert!(j >= 0);
                let nd = d + k * j as i32;
                if nd < 0 && !self.var.allows_laurent() {
                    return Err(SeriesError::IllegalLaurent);
                }
                if nd > self.n {
                    continue;
                }
                let scaled = cj.mul(&c.pow(j as u32));
                let cur = out.coeff(nd);
                out.set_coeff(nd, cur.add(&scaled));
            }
        }
        Ok(out)
    }
}

impl<T: SeriesElem> fmt::Debug for TruncSeries<T>
where
    T: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}; {}..{}](", self.var.name(), self.lo, self.n)?;
        let mut first = true;
        for k in self.lo..=self.n {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})*{}^{}", c, self.var.name(), k)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::params::*;
    use super::*;

    fn xi_series(coeffs: &[i128], n: i32) -> TruncSeries<Poly> {
        let mut s = TruncSeries::<Poly>::zero(XI, n);
        for (k, c) in coeffs.iter().enumerate() {
            s.set_coeff(k as i32, Poly::int(*c));
        }
        s
    }

    #[test]
    fn invert_identity() {
        let one = TruncSeries::<Poly>::one(XI, 6);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn invert_geometric() {
        // 1 + xi  ->  1 - xi + xi^2 - ... +- xi^N
        let f = xi_series(&[1, 1], 6);
        let g = f.invert().unwrap();
        for k in 0..=6 {
            let want = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(g.coeff(k), Poly::int(want));
        }
        assert!(f.mul(&g).sub(&TruncSeries::one(XI, 6)).is_zero());
    }

    #[test]
    fn invert_product_order3() {
        // Oracle: multiply back and check == 1 mod xi^4.
        let f = xi_series(&[1, 1], 3).mul(&xi_series(&[1, 2], 3));
        let g = f.invert().unwrap();
        assert_eq!(g.coeff(0), Poly::int(1));
        assert_eq!(g.coeff(1), Poly::int(-3));
        assert_eq!(g.coeff(2), Poly::int(7));
        assert_eq!(g.coeff(3), Poly::int(-15));
        assert!(f.mul(&g).sub(&TruncSeries::one(XI, 3)).is_zero());
    }

    #[test]
    fn non_unit_leading_term() {
        let f = TruncSeries::from_coeff(XI, 4, 0, Poly::param(ETA));
        assert_eq!(f.invert().unwrap_err(), SeriesError::NonUnitLeadingTerm);
    }

    #[test]
    fn d_at_zero_examples() {
        let one = TruncSeries::<Poly>::one(XI, 4);
        assert!(one.d_at_zero(XI).is_zero());

        let mut f = TruncSeries::<Poly>::one(XI, 4);
        f.set_coeff(1, Poly::int(3));
        f.set_coeff(2, Poly::int(1));
        assert_eq!(f.d_at_zero(XI), Poly::int(3));

        // ln(1 + xi) has first-order coefficient 1 (series-expansion oracle).
        let xi = TruncSeries::from_coeff(XI, 6, 1, Poly::one());
        let log = xi.ln_one_plus();
        assert_eq!(log.d_at_zero(XI), Poly::one());
        for k in 2..=6 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(log.coeff(k), Poly::rat(Rat::new(sign, k as i128)));
        }
    }

    #[test]
    fn exp_ln_roundtrip() {
        let xi = TruncSeries::from_coeff(XI, 6, 1, Poly::int(2));
        let e = xi.exp();
        let back = e.sub(&TruncSeries::one(XI, 6)).ln_one_plus();
        assert!(back.sub(&xi).is_zero());
    }

    #[test]
    fn pow_binomial_matches_geometric() {
        let xi = TruncSeries::from_coeff(XI, 5, 1, Poly::one());
        let inv = xi.pow_binomial(&Poly::int(-1));
        let direct = TruncSeries::one(XI, 5).add(&xi).invert().unwrap();
        assert!(inv.sub(&direct).is_zero());
    }

    #[test]
    fn subst_param_curve_downshift() {
        // f = zeta * xi^2: substituting zeta -> c/xi gives c * xi.
        let f = TruncSeries::from_coeff(XI, 4, 2, Poly::param(ZETA));
        let g = f.subst_param_curve(ZETA, &Poly::param(ETA), -1).unwrap();
        assert_eq!(g.coeff(1), Poly::param(ETA));
        // f = zeta * xi^0 would create xi^{-1}.
        let bad = TruncSeries::from_coeff(XI, 4, 0, Poly::param(ZETA));
        assert!(bad.subst_param_curve(ZETA, &Poly::one(), -1).is_err());
    }

    proptest::proptest! {
        #[test]
        fn ring_axioms_mod_truncation(a in proptest::collection::vec(-4i128..=4, 4),
                                      b in proptest::collection::vec(-4i128..=4, 4),
                                      c in proptest::collection::vec(-4i128..=4, 4)) {
            let f = xi_series(&a, 5);
            let g = xi_series(&b, 5);
            let h = xi_series(&c, 5);
            let lhs = f.mul(&g).mul(&h);
            let rhs = f.mul(&g.mul(&h));
            proptest::prop_assert!(lhs.sub(&rhs).is_zero());
            let d1 = f.mul(&g.add(&h));
            let d2 = f.mul(&g).add(&f.mul(&h));
            proptest::prop_assert!(d1.sub(&d2).is_zero());
        }

        #[test]
        fn invert_is_right_inverse(a in proptest::collection::vec(-3i128..=3, 5)) {
            let mut coeffs = alloc::vec![1i128];
            coeffs.extend(a);
            let f = xi_series(&coeffs, 6);
            let g = f.invert().unwrap();
            proptest::prop_assert!(f.mul(&g).sub(&TruncSeries::one(XI, 6)).is_zero());
        }

        #[test]
        fn no_zero_terms_stored(a in -3i128..=3, b in -3i128..=3) {
            let p = Poly::int(a).add(&Poly::term(Rat::int(b), Mono::param(XI, 1)));
            let q = p.sub(&p);
            proptest::prop_assert!(q.num_terms() == 0);
            let r = p.mul(&Poly::zero());
            proptest::prop_assert!(r.num_terms() == 0);
        }
    }
}
