//! Exact matrix evaluation in the fundamental (and, behind a flag, adjoint)
//! representation: finite exponentials and logarithms of nilpotent matrices,
//! Kronecker products, matrix R-matrices, the Yang-Baxter and triangularity
//! checks, and the cross-validation against the symbolic engine.
//!
//! Everything here is a polynomial identity: series collapse to finite sums
//! because the relevant matrices are nilpotent, so no truncation is involved
//! on the matrix side.

use crate::coeff::{ParamId, Poly};
use crate::hopf::{TwistSeries, USeries};
use crate::lie::{bracket_gens, GeneratorId, GENERATORS};
use crate::paperdata::{named_element, EvalError, Expr, ParseError};
use crate::pbw::{PbwMonomial, UElement};
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

/// Dense matrix with polynomial entries.
#[derive(Clone, PartialEq)]
pub struct PMat {
    pub n: usize,
    pub e: Vec<Poly>,
}

impl PMat {
    pub fn zero(n: usize) -> Self {
        PMat {
            n,
            e: vec![Poly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.e[i * n + i] = Poly::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.e[i * self.n + j] = p;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        PMat {
            n: self.n,
            e: self
                .e
                .iter()
                .zip(other.e.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        PMat {
            n: self.n,
            e: self
                .e
                .iter()
                .zip(other.e.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> Self {
        PMat {
            n: self.n,
            e: self.e.iter().map(|a| a.mul(p)).collect(),
        }
    }

    pub fn scale(&self, r: Rat) -> Self {
        PMat {
            n: self.n,
            e: self.e.iter().map(|a| a.scale(r)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|p| p.is_zero())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let n = self.n * other.n;
        let mut out = Self::zero(n);
        for i1 in 0..self.n {
            for j1 in 0..self.n {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.n {
                    for j2 in 0..other.n {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i1 * other.n + i2, j1 * other.n + j2, a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Exponential of a nilpotent matrix (errors if not nilpotent).
    pub fn exp_nilpotent(&self) -> Result<Self, EvalError> {
        let mut acc = Self::identity(self.n);
        let mut power = Self::identity(self.n);
        for k in 1..=64 {
            power = power.mul(self);
            if power.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&power.scale(Rat::int(crate::rat::factorial(k)).recip()));
        }
        Err(EvalError::TypeMismatch(
            "matrix exponent is not nilpotent".to_string(),
        ))
    }

    /// `ln(1 + N)` for nilpotent `N = self`.
    pub fn ln_one_plus_nilpotent(&self) -> Result<Self, EvalError> {
        let mut acc = Self::zero(self.n);
        let mut power = Self::identity(self.n);
        for k in 1..=64 {
            power = power.mul(self);
            if power.is_zero() {
                return Ok(acc);
            }
            let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
            acc = acc.add(&power.scale(sign / Rat::int(k)));
        }
        Err(EvalError::TypeMismatch(
            "matrix log argument is not unipotent".to_string(),
        ))
    }

    /// `(1 + N)^c` for nilpotent `N = self` and polynomial exponent `c`.
    pub fn pow_binomial_nilpotent(&self, c: &Poly) -> Result<Self, EvalError> {
        let mut acc = Self::identity(self.n);
        let mut power = Self::identity(self.n);
        for k in 1..=64 {
            power = power.mul(self);
            if power.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&power.scale_poly(&Poly::binomial(c, k)));
        }
        Err(EvalError::TypeMismatch(
            "matrix binomial base is not unipotent".to_string(),
        ))
    }

    /// Exact entry-wise division by `var^k`.
    pub fn xdiv(&self, var: ParamId, k: i32) -> Result<Self, EvalError> {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let mut q = Poly::zero();
                for (deg, coeff) in p.collect_powers(var) {
                    let nd = deg as i32 - k;
                    if nd < 0 {
                        return Err(EvalError::Series(
                            crate::coeff::SeriesError::IllegalLaurent,
                        ));
                    }
                    for (m, c) in coeff.mul_param(var, nd as i16).iter() {
                        q.add_term(*m, *c);
                    }
                }
                out.set(i, j, q);
            }
        }
        Ok(out)
    }

    /// Truncate every entry at degree `n` in `var`.
    pub fn truncate_var(&self, var: ParamId, n: i32) -> Self {
        let mut out = Self::zero(self.n);
        for idx in 0..self.e.len() {
            let p = &self.e[idx];
            let mut q = Poly::zero();
            for (m, c) in p.iter() {
                if (m.exp(var) as i32) <= n {
                    q.add_term(*m, *c);
                }
            }
            out.e[idx] = q;
        }
        out
    }

    /// Determinant over the rational-function field.
    pub fn det(&self) -> crate::lie::PolyFrac {
        use crate::lie::PolyFrac;
        let n = self.n;
        let mut rows: Vec<Vec<PolyFrac>> = (0..n)
            .map(|i| (0..n).map(|j| PolyFrac::from_poly(self.get(i, j).clone())).collect())
            .collect();
        let mut det = PolyFrac::from_poly(Poly::one());
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return PolyFrac::zero();
            };
            if p != col {
                rows.swap(col, p);
                det = det.neg();
            }
            let pv = rows[col][col].clone();
            det = det.mul(&pv);
            for r in (col + 1)..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].div(&pv);
                for c in col..n {
                    let delta = factor.mul(&rows[col][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        det
    }
}

impl core::fmt::Debug for PMat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "PMat[{}x{}]", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  [")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Which representation to evaluate in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepKind {
    /// Defining 3-dimensional representation.
    Fundamental,
    /// 8-dimensional adjoint representation (structure constants).
    Adjoint,
}

impl RepKind {
    pub fn dim(&self) -> usize {
        match self {
            RepKind::Fundamental => 3,
            RepKind::Adjoint => 8,
        }
    }
}

/// Matrix of a single generator.
pub fn rep_gen(kind: RepKind, g: GeneratorId) -> PMat {
    match kind {
        RepKind::Fundamental => {
            let mut m = PMat::zero(3);
            for (i, j, v) in g.rep3() {
                m.set(i, j, Poly::rat(v));
            }
            m
        }
        RepKind::Adjoint => {
            // ad(g) b_j = sum_i c_{ij} b_i
            let mut m = PMat::zero(8);
            for (j, bj) in GENERATORS.iter().enumerate() {
                let br = bracket_gens(g, *bj);
                for (gi, c) in br.iter() {
                    m.set(gi.index(), j, c.clone());
                }
            }
            m
        }
    }
}

/// Evaluate a PBW monomial: ordered product of generator powers.
pub fn rep_mono(kind: RepKind, m: &PbwMonomial) -> PMat {
    let mut acc = PMat::identity(kind.dim());
    for i in 0..8 {
        for _ in 0..m.0[i] {
            acc = acc.mul(&rep_gen(kind, GENERATORS[i]));
        }
    }
    acc
}

/// Linear, multiplicative evaluation of a `U(sl3)` element.
pub fn rep_u(kind: RepKind, x: &UElement) -> PMat {
    let mut acc = PMat::zero(kind.dim());
    for (m, c) in x.iter() {
        acc = acc.add(&rep_mono(kind, m).scale_poly(c));
    }
    acc
}

/// Evaluate a 2-leg tensor: leg-wise representation then Kronecker product.
pub fn rep_tensor2(kind: RepKind, t: &crate::hopf::Tensor2) -> PMat {
    let d = kind.dim();
    let mut acc = PMat::zero(d * d);
    for ([a, b], c) in t.iter() {
        let ma = rep_mono(kind, a);
        let mb = rep_mono(kind, b);
        acc = acc.add(&ma.kron(&mb).scale_poly(c));
    }
    acc
}

/// Evaluate a truncated tensor series: `sum_d rep(F_d) var^d`. The result is
/// exact only modulo `var^{n+1}`.
pub fn rep_twist_series(kind: RepKind, f: &TwistSeries) -> PMat {
    let d = kind.dim();
    let mut acc = PMat::zero(d * d);
    for k in f.lo.max(0)..=f.n {
        let c = f.coeff(k);
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&rep_tensor2(kind, &c).scale_poly(&Poly::term(
            Rat::one(),
            crate::coeff::Mono::param(f.var, k as i16),
        )));
    }
    acc
}

pub fn rep_useries(kind: RepKind, f: &USeries) -> PMat {
    let d = kind.dim();
    let mut acc = PMat::zero(d);
    for k in f.lo.max(0)..=f.n {
        let c = f.coeff(k);
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&rep_u(kind, &c).scale_poly(&Poly::term(
            Rat::one(),
            crate::coeff::Mono::param(f.var, k as i16),
        )));
    }
    acc
}

// ---------------------------------------------------------------------------
// Exact matrix evaluation of catalog expressions
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub enum MVal {
    Scalar(Poly),
    M(PMat),
    T(PMat),
}

/// Exact matrix backend for the expression grammar. The series variable is an
/// ordinary polynomial parameter here; exponentials and logarithms must have
/// nilpotent arguments, which holds for every catalog factor.
pub struct MatrixCtx {
    pub kind: RepKind,
    pub var: ParamId,
    pub param_subst: BTreeMap<ParamId, Poly>,
}

impl MatrixCtx {
    pub fn new(kind: RepKind, var: ParamId) -> Self {
        MatrixCtx {
            kind,
            var,
            param_subst: BTreeMap::new(),
        }
    }

    fn dim(&self) -> usize {
        self.kind.dim()
    }

    fn promote_m(&self, v: MVal) -> Result<PMat, EvalError> {
        match v {
            MVal::Scalar(p) => Ok(PMat::identity(self.dim()).scale_poly(&p)),
            MVal::M(m) => Ok(m),
            MVal::T(_) => Err(EvalError::TypeMismatch(
                "tensor matrix where a single-leg matrix was expected".to_string(),
            )),
        }
    }

    fn promote_t(&self, v: MVal) -> Result<PMat, EvalError> {
        match v {
            MVal::Scalar(p) => {
                Ok(PMat::identity(self.dim() * self.dim()).scale_poly(&p))
            }
            MVal::T(m) => Ok(m),
            MVal::M(_) => Err(EvalError::TypeMismatch(
                "single-leg matrix where a tensor matrix was expected".to_string(),
            )),
        }
    }

    fn rank(v: &MVal) -> u8 {
        match v {
            MVal::Scalar(_) => 0,
            MVal::M(_) => 1,
            MVal::T(_) => 2,
        }
    }

    fn binop(&self, a: MVal, b: MVal, mul: bool) -> Result<MVal, EvalError> {
        let rank = Self::rank(&a).max(Self::rank(&b));
        match rank {
            0 => {
                let (MVal::Scalar(x), MVal::Scalar(y)) = (a, b) else {
                    unreachable!()
                };
                Ok(MVal::Scalar(if mul { x.mul(&y) } else { x.add(&y) }))
            }
            1 => {
                let x = self.promote_m(a)?;
                let y = self.promote_m(b)?;
                Ok(MVal::M(if mul { x.mul(&y) } else { x.add(&y) }))
            }
            _ => {
                let x = self.promote_t(a)?;
                let y = self.promote_t(b)?;
                Ok(MVal::T(if mul { x.mul(&y) } else { x.add(&y) }))
            }
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<MVal, EvalError> {
        match e {
            Expr::Num(r) => Ok(MVal::Scalar(Poly::rat(*r))),
            Expr::Param(p) => {
                if let Some(sub) = self.param_subst.get(p) {
                    return Ok(MVal::Scalar(sub.clone()));
                }
                Ok(MVal::Scalar(Poly::param(*p)))
            }
            Expr::Atom(name) => {
                let lie = named_element(name)
                    .ok_or_else(|| EvalError::Parse(ParseError::UnknownAtom(name.clone())))?;
                Ok(MVal::M(rep_u(self.kind, &UElement::from_lie(&lie))))
            }
            Expr::Add(items) => {
                let mut acc = self.eval(&items[0])?;
                for i in &items[1..] {
                    acc = self.binop(acc, self.eval(i)?, false)?;
                }
                Ok(acc)
            }
            Expr::Mul(items) => {
                let mut acc = self.eval(&items[0])?;
                for i in &items[1..] {
                    acc = self.binop(acc, self.eval(i)?, true)?;
                }
                Ok(acc)
            }
            Expr::Tensor(a, b) => {
                let x = self.promote_m(self.eval(a)?)?;
                let y = self.promote_m(self.eval(b)?)?;
                Ok(MVal::T(x.kron(&y)))
            }
            Expr::Exp(arg) => match self.eval(arg)? {
                MVal::Scalar(_) => Err(EvalError::TypeMismatch(
                    "scalar exponentials are not supported at matrix level".to_string(),
                )),
                MVal::M(m) => Ok(MVal::M(m.exp_nilpotent()?)),
                MVal::T(m) => Ok(MVal::T(m.exp_nilpotent()?)),
            },
            Expr::Ln(arg) => {
                let strip_one = |m: PMat| -> PMat { m.sub(&PMat::identity(m.n)) };
                match self.eval(arg)? {
                    MVal::Scalar(_) => Err(EvalError::TypeMismatch(
                        "scalar logs are not supported at matrix level".to_string(),
                    )),
                    MVal::M(m) => Ok(MVal::M(strip_one(m).ln_one_plus_nilpotent()?)),
                    MVal::T(m) => Ok(MVal::T(strip_one(m).ln_one_plus_nilpotent()?)),
                }
            }
            Expr::Pow(base, expo) => {
                let c = match self.eval(expo)? {
                    MVal::Scalar(p) => p,
                    _ => {
                        return Err(EvalError::BadExponent(
                            "exponent must be scalar".to_string(),
                        ))
                    }
                };
                if let Some(k) = c.as_const().filter(|r| r.is_integer() && !r.is_negative()) {
                    let k = k.numer() as u32;
                    let mut acc = MVal::Scalar(Poly::one());
                    let b = self.eval(base)?;
                    for _ in 0..k {
                        acc = self.binop(acc, b.clone(), true)?;
                    }
                    return Ok(acc);
                }
                match self.eval(base)? {
                    MVal::Scalar(_) => Err(EvalError::BadExponent(
                        "scalar binomials are not supported at matrix level".to_string(),
                    )),
                    MVal::M(m) => Ok(MVal::M(
                        m.sub(&PMat::identity(m.n)).pow_binomial_nilpotent(&c)?,
                    )),
                    MVal::T(m) => Ok(MVal::T(
                        m.sub(&PMat::identity(m.n)).pow_binomial_nilpotent(&c)?,
                    )),
                }
            }
            Expr::XDiv(k, arg) => match self.eval(arg)? {
                MVal::Scalar(p) => {
                    let mut q = Poly::zero();
                    for (deg, coeff) in p.collect_powers(self.var) {
                        let nd = deg as i32 - k;
                        if nd < 0 {
                            return Err(EvalError::Series(
                                crate::coeff::SeriesError::IllegalLaurent,
                            ));
                        }
                        for (m, c) in coeff.mul_param(self.var, nd as i16).iter() {
                            q.add_term(*m, *c);
                        }
                    }
                    Ok(MVal::Scalar(q))
                }
                MVal::M(m) => Ok(MVal::M(m.xdiv(self.var, *k)?)),
                MVal::T(m) => Ok(MVal::T(m.xdiv(self.var, *k)?)),
            },
        }
    }

    pub fn eval_tensor(&self, e: &Expr) -> Result<PMat, EvalError> {
        let v = self.eval(e)?;
        self.promote_t(v)
    }
}

// ---------------------------------------------------------------------------
// Yang-Baxter and triangularity checks on represented R-matrices
// ---------------------------------------------------------------------------

fn embed3(r: &PMat, d: usize, legs: (usize, usize)) -> PMat {
    // r acts on legs `legs` of a 3-fold tensor of dimension d each.
    let n = d * d * d;
    let mut out = PMat::zero(n);
    let idx = |a: usize, b: usize, c: usize| (a * d + b) * d + c;
    for i0 in 0..d {
        for i1 in 0..d {
            for i2 in 0..d {
                let is = [i0, i1, i2];
                for j0 in 0..d {
                    for j1 in 0..d {
                        for j2 in 0..d {
                            let js = [j0, j1, j2];
                            // spectator leg must match
                            let spectator = (0..3)
                                .find(|k| *k != legs.0 && *k != legs.1)
                                .unwrap();
                            if is[spectator] != js[spectator] {
                                continue;
                            }
                            let v = r.get(
                                is[legs.0] * d + is[legs.1],
                                js[legs.0] * d + js[legs.1],
                            );
                            if v.is_zero() {
                                continue;
                            }
                            out.set(idx(i0, i1, i2), idx(j0, j1, j2), v.clone());
                        }
                    }
                }
            }
        }
    }
    out
}

/// `R_21` on a 2-fold tensor of leg dimension `d`.
pub fn flip_matrix(r: &PMat, d: usize) -> PMat {
    let mut out = PMat::zero(d * d);
    for i0 in 0..d {
        for i1 in 0..d {
            for j0 in 0..d {
                for j1 in 0..d {
                    let v = r.get(i1 * d + i0, j1 * d + j0);
                    if !v.is_zero() {
                        out.set(i0 * d + i1, j0 * d + j1, v.clone());
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct QybeReport {
    pub ok: bool,
    pub triangular: bool,
    pub det_is_unit: bool,
}

/// Verify `R12 R13 R23 = R23 R13 R12` and `R21 R = 1`, exactly in polynomial
/// entries; `R` is a `d^2 x d^2` matrix.
pub fn qybe_check(r: &PMat, d: usize) -> QybeReport {
    assert_eq!(r.n, d * d);
    let r12 = embed3(r, d, (0, 1));
    let r13 = embed3(r, d, (0, 2));
    let r23 = embed3(r, d, (1, 2));
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    let ok = lhs.sub(&rhs).is_zero();
    let r21 = flip_matrix(r, d);
    let triangular = r21.mul(r).sub(&PMat::identity(d * d)).is_zero();
    let det = r.det();
    let det_is_unit = det
        .num
        .as_const()
        .map(|c| !c.is_zero())
        .unwrap_or(false)
        && det.den.as_const().map(|c| !c.is_zero()).unwrap_or(false);
    QybeReport {
        ok,
        triangular,
        det_is_unit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::params::XI;
    use crate::lie::GeneratorId::*;

    #[test]
    fn rep_examples() {
        // rep(E12 * E23) = e13
        let x = UElement::gen(E12).mul(&UElement::gen(E23));
        let m = rep_u(RepKind::Fundamental, &x);
        let mut expected = PMat::zero(3);
        expected.set(0, 2, Poly::one());
        assert_eq!(m, expected);
        // rep(H13) = diag(1, 0, -1)
        let h13 = UElement::gen(H12).add(&UElement::gen(H23));
        let m = rep_u(RepKind::Fundamental, &h13);
        let mut expected = PMat::zero(3);
        expected.set(0, 0, Poly::one());
        expected.set(2, 2, Poly::int(-1));
        assert_eq!(m, expected);
    }

    #[test]
    fn casimir_is_scalar_matrix() {
        let c2 = crate::pbw::quadratic_casimir();
        let m = rep_u(RepKind::Fundamental, &c2);
        let diag = m.get(0, 0).clone();
        let expected = PMat::identity(3).scale_poly(&diag);
        assert_eq!(m, expected);
        assert!(!diag.is_zero());
    }

    #[test]
    fn rep_tensor_identity_and_nilpotent_exp() {
        let id = crate::hopf::Tensor2::identity();
        assert_eq!(rep_tensor2(RepKind::Fundamental, &id), PMat::identity(9));
        // exp(xi E13⊗E13) = I9 + xi(e13⊗e13) exactly
        let e13 = rep_gen(RepKind::Fundamental, E13);
        let arg = e13.kron(&e13).scale_poly(&Poly::param(XI));
        let m = arg.exp_nilpotent().unwrap();
        let expected = PMat::identity(9).add(&arg);
        assert_eq!(m, expected);
    }

    #[test]
    fn qybe_identity_and_counterexample() {
        let rep = qybe_check(&PMat::identity(9), 3);
        assert!(rep.ok && rep.triangular && rep.det_is_unit);
        // R = I9 + xi e12⊗e21 fails the Yang-Baxter identity.
        let e12 = rep_gen(RepKind::Fundamental, E12);
        let e21 = rep_gen(RepKind::Fundamental, E21);
        let r = PMat::identity(9).add(&e12.kron(&e21).scale_poly(&Poly::param(XI)));
        let rep = qybe_check(&r, 3);
        assert!(!rep.ok);
    }

    #[test]
    fn adjoint_rep_is_representation() {
        // ad([x,y]) = [ad x, ad y] on a few pairs.
        for (x, y) in [(E12, E21), (E12, E23), (H12, E13), (E23, E31)] {
            let ax = rep_gen(RepKind::Adjoint, x);
            let ay = rep_gen(RepKind::Adjoint, y);
            let lhs = ax.mul(&ay).sub(&ay.mul(&ax));
            let rhs = rep_u(RepKind::Adjoint, &UElement::from_lie(&bracket_gens(x, y)));
            assert_eq!(lhs, rhs);
        }
    }
}
