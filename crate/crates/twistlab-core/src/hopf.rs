//! Tensor powers of `U(sl3)`, the primitive coproduct and the twist engine:
//! cocycle/counit verification, twist inversion, twisted coproducts,
//! universal R-matrices, classical r-matrix extraction and the Schouten
//! bracket test of the classical Yang-Baxter equation.

use crate::coeff::{Poly, ScaleByPoly, SeriesElem, SeriesError, TruncSeries};
use crate::lie::{bracket_gens, GeneratorId, LieElement, RMatrixClassical, GENERATORS};
use crate::pbw::{mul_monomials, PbwMonomial, UElement};
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// Tensor with `L` legs over PBW monomials.
#[derive(Clone, PartialEq, Default)]
pub struct Tensor<const L: usize> {
    terms: BTreeMap<[PbwMonomial; L], Poly>,
}

pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

impl<const L: usize> Tensor<L> {
    pub fn zero() -> Self {
        Tensor {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        Self::term([PbwMonomial::unit(); L], Poly::one())
    }

    pub fn term(key: [PbwMonomial; L], c: Poly) -> Self {
        let mut t = Self::zero();
        t.add_term(key, c);
        t
    }

    pub fn add_term(&mut self, key: [PbwMonomial; L], c: Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Poly::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[PbwMonomial; L], &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms.iter() {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms.iter() {
            out.terms.insert(*k, c.neg());
        }
        out
    }

    pub fn scale(&self, r: Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, c) in self.terms.iter() {
            out.terms.insert(*k, c.scale(r));
        }
        out
    }

    pub fn scale_poly(&self, p: &Poly) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(*k, c.mul(p));
        }
        out
    }

    /// Leg-wise product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in self.terms.iter() {
            for (k2, c2) in other.terms.iter() {
                // expand leg products one leg at a time
                let mut partial: Vec<([PbwMonomial; L], Poly)> =
                    alloc::vec![([PbwMonomial::unit(); L], c1.mul(c2))];
                for leg in 0..L {
                    let prod = mul_monomials(k1[leg], k2[leg]);
                    let mut next = Vec::with_capacity(partial.len() * prod.num_terms());
                    for (key, coeff) in partial.iter() {
                        for (m, cm) in prod.iter() {
                            let mut nk = *key;
                            nk[leg] = *m;
                            next.push((nk, coeff.mul(cm)));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_term(k, c);
                }
            }
        }
        out
    }

    pub fn substitute_params(&self, p: crate::coeff::ParamId, value: &Poly) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(*k, c.subst(p, value));
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| k.iter().map(|m| m.degree()).sum())
            .max()
            .unwrap_or(0)
    }
}

impl<const L: usize> SeriesElem for Tensor<L> {
    fn zero() -> Self {
        Tensor::zero()
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
        Tensor::identity()
    }
}

impl<const L: usize> ScaleByPoly for Tensor<L> {
    fn scale_poly(&self, p: &Poly) -> Self {
        self.scale_poly(p)
    }
}

impl<const L: usize> fmt::Debug for Tensor<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})·", c)?;
            for (i, m) in k.iter().enumerate() {
                if i > 0 {
                    write!(f, "⊗")?;
                }
                write!(f, "{:?}", UElement::term(*m, Poly::one()))?;
            }
        }
        Ok(())
    }
}

impl Tensor2 {
    pub fn flip(&self) -> Self {
        let mut out = Self::zero();
        for ([a, b], c) in self.terms.iter() {
            out.add_term([*b, *a], c.clone());
        }
        out
    }

    pub fn from_legs(a: &UElement, b: &UElement) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                out.add_term([*ma, *mb], ca.mul(cb));
            }
        }
        out
    }

    /// Embed into legs (1,2), (2,3) or (1,3) of a 3-leg tensor.
    pub fn embed(&self, legs: (usize, usize)) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ([a, b], c) in self.terms.iter() {
            let mut key = [PbwMonomial::unit(); 3];
            key[legs.0] = *a;
            key[legs.1] = *b;
            out.add_term(key, c.clone());
        }
        out
    }

    /// Apply the coproduct to one leg: `(Δ⊗id)` for `leg = 0`,
    /// `(id⊗Δ)` for `leg = 1`.
    pub fn coproduct_leg(&self, leg: usize) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ([a, b], c) in self.terms.iter() {
            let (split, fixed) = if leg == 0 { (a, b) } else { (b, a) };
            let d = coproduct_monomial(split);
            for ([x, y], cd) in d.terms.iter() {
                let key = if leg == 0 {
                    [*x, *y, *fixed]
                } else {
                    [*fixed, *x, *y]
                };
                out.add_term(key, c.mul(cd));
            }
        }
        out
    }

    /// Contract one leg with the counit.
    pub fn counit_leg(&self, leg: usize) -> UElement {
        let mut out = UElement::zero();
        for ([a, b], c) in self.terms.iter() {
            let (kill, keep) = if leg == 0 { (a, b) } else { (b, a) };
            if kill.is_unit() {
                out.add_term(*keep, c.clone());
            }
        }
        out
    }
}

/// Primitive coproduct of a PBW monomial:
/// `Δ(g^a) = Σ C(a,k) g^k ⊗ g^{a-k}` extended multiplicatively. Both legs of
/// every resulting term are canonical, so no reordering is needed.
pub fn coproduct_monomial(m: &PbwMonomial) -> Tensor2 {
    let mut out = Tensor2::identity();
    for i in 0..8 {
        let a = m.0[i];
        if a == 0 {
            continue;
        }
        let mut next = Tensor2::zero();
        for k in 0..=a {
            let binom = Rat::binomial(Rat::int(a as i128), k as u32);
            for ([x, y], c) in out.terms.iter() {
                let mut nx = *x;
                let mut ny = *y;
                nx.0[i] += k;
                ny.0[i] += a - k;
                next.add_term([nx, ny], c.scale(binom));
            }
        }
        out = next;
    }
    out
}

/// Primitive coproduct, `Δ(g) = g⊗1 + 1⊗g` on generators, extended as an
/// algebra morphism.
pub fn coproduct(x: &UElement) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (m, c) in x.iter() {
        let d = coproduct_monomial(m);
        for (k, cd) in d.terms.iter() {
            out.add_term(*k, c.mul(cd));
        }
    }
    out
}

/// Counit.
pub fn counit(x: &UElement) -> Poly {
    x.counit()
}

/// Series of 2-leg tensors in one deformation parameter; the order-0 term of
/// a twist must be `1⊗1`.
pub type TwistSeries = TruncSeries<Tensor2>;
pub type USeries = TruncSeries<UElement>;

/// Lift `Σ a_i ξ^i ⊗ Σ b_j ξ^j` to a tensor series.
pub fn tensor_series(a: &USeries, b: &USeries) -> TwistSeries {
    assert_eq!(a.var, b.var);
    let n = (a.n + b.lo).min(b.n + a.lo);
    let lo = (a.lo + b.lo).min(0);
    let mut out = TwistSeries::zero(a.var, n);
    for i in a.lo..=a.n {
        let ai = a.coeff(i);
        if ai.is_zero() {
            continue;
        }
        for j in b.lo..=b.n {
            if i + j > n || i + j < lo {
                continue;
            }
            let bj = b.coeff(j);
            if bj.is_zero() {
                continue;
            }
            let cur = out.coeff(i + j);
            out.set_coeff(i + j, cur.add(&Tensor2::from_legs(&ai, &bj)));
        }
    }
    out
}

/// Constant series holding a single element.
pub fn useries_const(var: crate::coeff::ParamId, n: i32, x: &UElement) -> USeries {
    TruncSeries::from_coeff(var, n, 0, x.clone())
}

/// `ln(1 + arg)` with `arg` a U-valued series vanishing at order 0.
pub fn u_log_one_plus(arg: &USeries) -> USeries {
    arg.ln_one_plus()
}

#[derive(Clone, Debug)]
pub struct CocycleReport {
    pub ok: bool,
    pub counit_ok: bool,
    pub first_failing_order: Option<i32>,
}

/// Invert a twist series with leading term `1⊗1`.
pub fn invert_twist(f: &TwistSeries) -> Result<TwistSeries, SeriesError> {
    if f.lo < 0 || f.coeff(0) != Tensor2::identity() {
        return Err(SeriesError::BadLeadingTerm);
    }
    let mut g = TwistSeries::zero(f.var, f.n);
    g.set_coeff(0, Tensor2::identity());
    for k in 1..=f.n {
        let mut acc = Tensor2::zero();
        for j in 1..=k {
            let fj = f.coeff(j);
            if fj.is_zero() {
                continue;
            }
            acc = acc.add(&fj.mul(&g.coeff(k - j)));
        }
        g.set_coeff(k, acc.neg());
    }
    Ok(g)
}

/// Cocycle and counit verification, order by order.
pub fn check_cocycle(f: &TwistSeries) -> CocycleReport {
    let mut counit_ok = true;
    for k in f.lo..=f.n {
        let c = f.coeff(k);
        let left = c.counit_leg(0);
        let right = c.counit_leg(1);
        let expect = if k == 0 {
            UElement::one()
        } else {
            UElement::zero()
        };
        if left != expect || right != expect {
            counit_ok = false;
        }
    }
    let lhs_right = |fs: &TwistSeries| -> TruncSeries<Tensor3> { fs.map(|t| t.coproduct_leg(0)) };
    let rhs_right = |fs: &TwistSeries| -> TruncSeries<Tensor3> { fs.map(|t| t.coproduct_leg(1)) };
    let f12 = f.map(|t| t.embed((0, 1)));
    let f23 = f.map(|t| t.embed((1, 2)));
    let lhs = f12.mul(&lhs_right(f));
    let rhs = f23.mul(&rhs_right(f));
    let mut first_failing_order = None;
    for k in 0..=f.n.min(lhs.n).min(rhs.n) {
        if lhs.coeff(k) != rhs.coeff(k) {
            first_failing_order = Some(k);
            break;
        }
    }
    CocycleReport {
        ok: first_failing_order.is_none() && counit_ok,
        counit_ok,
        first_failing_order,
    }
}

/// `F Δ(x) F^{-1}` as a series in the twist parameter.
pub fn twisted_coproduct(f: &TwistSeries, x: &UElement) -> Result<TwistSeries, SeriesError> {
    let finv = invert_twist(f)?;
    let dx = TwistSeries::from_coeff(f.var, f.n, 0, coproduct(x));
    Ok(f.mul(&dx).mul(&finv))
}

/// Twisted coproduct of a series-valued element (e.g. `σ(ξ)`).
pub fn twisted_coproduct_series(f: &TwistSeries, x: &USeries) -> Result<TwistSeries, SeriesError> {
    let finv = invert_twist(f)?;
    let dx = x.map(|u| coproduct(u));
    Ok(f.mul(&dx).mul(&finv))
}

/// Primitive embedding of a series-valued element: `x⊗1 + 1⊗x` per order.
pub fn primitive_series(x: &USeries) -> TwistSeries {
    x.map(|u| {
        Tensor2::from_legs(u, &UElement::one()).add(&Tensor2::from_legs(&UElement::one(), u))
    })
}

/// Universal R-matrix `R = F_21 F^{-1}`; triangularity `R_21 R = 1⊗1` is
/// re-verified.
pub fn universal_r(f: &TwistSeries) -> Result<TwistSeries, SeriesError> {
    let finv = invert_twist(f)?;
    let f21 = f.map(|t| t.flip());
    let r = f21.mul(&finv);
    let check = r.map(|t| t.flip()).mul(&r);
    debug_assert!(
        check.sub(&TwistSeries::one(f.var, check.n)).is_zero(),
        "triangularity violated"
    );
    Ok(r)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassicalRError {
    Series(SeriesError),
    NotLieLie,
}

impl fmt::Display for ClassicalRError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalRError::Series(e) => write!(f, "{}", e),
            ClassicalRError::NotLieLie => {
                write!(f, "first-order term is not an element of g⊗g")
            }
        }
    }
}

/// Classical r-matrix of a twist: the first-order coefficient of
/// `F_21 F^{-1}`, returned in wedge form. Fails when the order-1 term does
/// not lie in `g ⊗ g` (a sign of a wrong substitution curve).
pub fn classical_r(f: &TwistSeries) -> Result<RMatrixClassical, ClassicalRError> {
    let r = universal_r(f).map_err(ClassicalRError::Series)?;
    let lin = r.coeff(1);
    let mut pairs: BTreeMap<(GeneratorId, GeneratorId), Poly> = BTreeMap::new();
    for ([a, b], c) in lin.iter() {
        if a.degree() != 1 || b.degree() != 1 {
            return Err(ClassicalRError::NotLieLie);
        }
        let ga = GENERATORS[(0..8).find(|&i| a.0[i] == 1).unwrap()];
        let gb = GENERATORS[(0..8).find(|&i| b.0[i] == 1).unwrap()];
        let e = pairs.entry((ga, gb)).or_insert_with(Poly::zero);
        *e = e.add(c);
    }
    // Antisymmetry must hold exactly; store the upper triangle as wedges.
    let mut wedges = Vec::new();
    for ((ga, gb), c) in pairs.iter() {
        let back = pairs
            .get(&(*gb, *ga))
            .cloned()
            .unwrap_or_else(Poly::zero);
        if !back.add(c).is_zero() {
            return Err(ClassicalRError::NotLieLie);
        }
        if ga < gb {
            wedges.push((c.clone(), LieElement::gen(*ga), LieElement::gen(*gb)));
        }
    }
    Ok(RMatrixClassical::new(wedges))
}

/// Schouten bracket `[r12,r13] + [r12,r23] + [r13,r23]` in `U⊗3`; the result
/// is zero exactly when `r` solves the classical Yang-Baxter equation.
pub fn cybe_check(r: &RMatrixClassical) -> bool {
    schouten(r).is_zero()
}

pub fn schouten(r: &RMatrixClassical) -> Tensor3 {
    let expanded = r.expand();
    let bracket_term = |g1: GeneratorId, g2: GeneratorId| -> UElement {
        UElement::from_lie(&bracket_gens(g1, g2))
    };
    let mut out = Tensor3::zero();
    let mut add3 = |a: &UElement, b: &UElement, c: &UElement, w: &Poly| {
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                for (mc, cc) in c.iter() {
                    out.add_term([*ma, *mb, *mc], w.mul(ca).mul(cb).mul(cc));
                }
            }
        }
    };
    for ((a1, a2), c1) in expanded.iter() {
        for ((b1, b2), c2) in expanded.iter() {
            let w = c1.mul(c2);
            // [r12, r13] = [a1,b1] ⊗ a2 ⊗ b2
            add3(
                &bracket_term(*a1, *b1),
                &UElement::gen(*a2),
                &UElement::gen(*b2),
                &w,
            );
            // [r12, r23] = a1 ⊗ [a2,b1] ⊗ b2
            add3(
                &UElement::gen(*a1),
                &bracket_term(*a2, *b1),
                &UElement::gen(*b2),
                &w,
            );
            // [r13, r23] = a1 ⊗ b1 ⊗ [a2,b2]
            add3(
                &UElement::gen(*a1),
                &UElement::gen(*b1),
                &bracket_term(*a2, *b2),
                &w,
            );
        }
    }
    out
}

/// Exponential of a tensor-series argument that vanishes at order 0.
pub fn exp_tensor(arg: &TwistSeries) -> TwistSeries {
    arg.exp()
}

/// Substitute `p -> c * var^k` inside the coefficients of a tensor series,
/// re-binning the series orders. Fails if a nonzero term would land at a
/// negative order.
pub fn twist_subst_param_curve(
    f: &TwistSeries,
    p: crate::coeff::ParamId,
    c: &Poly,
    k: i32,
) -> Result<TwistSeries, SeriesError> {
    assert_ne!(p, f.var);
    let mut out = TwistSeries::zero(f.var, f.n);
    for d in f.lo..=f.n {
        let t = f.coeff(d);
        for (key, poly) in t.iter() {
            for (j, cj) in poly.collect_powers(p) {
                assert!(j >= 0);
                let nd = d + k * j as i32;
                if nd < 0 && !f.var.allows_laurent() {
                    return Err(SeriesError::IllegalLaurent);
                }
                if nd > f.n {
                    continue;
                }
                let mut cur = out.coeff(nd);
                cur.add_term(*key, cj.mul(&c.pow(j as u32)));
                out.set_coeff(nd, cur);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::params::*;
    use crate::lie::{h_perp, GeneratorId::*};

    fn xi_term(k: i32, n: i32, t: Tensor2) -> TwistSeries {
        TwistSeries::from_coeff(XI, n, k, t)
    }

    fn gen_t2(a: GeneratorId, b: GeneratorId) -> Tensor2 {
        Tensor2::from_legs(&UElement::gen(a), &UElement::gen(b))
    }

    #[test]
    fn coproduct_examples() {
        // Δ(E12) = E12⊗1 + 1⊗E12
        let d = coproduct(&UElement::gen(E12));
        let expected = Tensor2::from_legs(&UElement::gen(E12), &UElement::one())
            .add(&Tensor2::from_legs(&UElement::one(), &UElement::gen(E12)));
        assert_eq!(d, expected);
        // Δ(E12^2) = E12^2⊗1 + 2 E12⊗E12 + 1⊗E12^2
        let sq = UElement::gen(E12).pow(2);
        let d = coproduct(&sq);
        let expected = Tensor2::from_legs(&sq, &UElement::one())
            .add(&gen_t2(E12, E12).scale(Rat::int(2)))
            .add(&Tensor2::from_legs(&UElement::one(), &sq));
        assert_eq!(d, expected);
    }

    #[test]
    fn coproduct_counit_oracle() {
        // (ε⊗id)Δ = id on a nontrivial product.
        let x = UElement::gen(E12).mul(&UElement::gen(E21));
        let d = coproduct(&x);
        assert_eq!(d.counit_leg(0), x);
        assert_eq!(d.counit_leg(1), x);
        // Δ is an algebra morphism on this example.
        let dx = coproduct(&UElement::gen(E12));
        let dy = coproduct(&UElement::gen(E21));
        assert_eq!(d, dx.mul(&dy));
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&UElement::one()), Poly::one());
        let x = UElement::gen(H12).mul(&UElement::gen(E13));
        assert!(counit(&x).is_zero());
    }

    #[test]
    fn invert_twist_examples() {
        let n = 6;
        let id = TwistSeries::one(XI, n);
        assert_eq!(invert_twist(&id).unwrap(), id);

        // F = exp(xi H12⊗H23): inverse is exp(-xi H12⊗H23).
        let arg = xi_term(1, n, gen_t2(H12, H23));
        let f = exp_tensor(&arg);
        let finv = invert_twist(&f).unwrap();
        let expected = exp_tensor(&arg.neg());
        assert!(finv.sub(&expected).is_zero());
        assert!(f.mul(&finv).sub(&TwistSeries::one(XI, n)).is_zero());
    }

    #[test]
    fn cocycle_identity_and_abelian() {
        let n = 4;
        assert!(check_cocycle(&TwistSeries::one(XI, n)).ok);
        let f = exp_tensor(&xi_term(1, n, gen_t2(H12, H23)));
        let rep = check_cocycle(&f);
        assert!(rep.ok, "{:?}", rep);
    }

    #[test]
    fn cocycle_counterexample_fails_at_order_two() {
        let n = 4;
        let f = exp_tensor(&xi_term(1, n, gen_t2(E12, E21)));
        let rep = check_cocycle(&f);
        assert!(!rep.ok);
        assert_eq!(rep.first_failing_order, Some(2));
    }

    #[test]
    fn twisted_coproduct_abelian() {
        let n = 4;
        let f = exp_tensor(&xi_term(1, n, gen_t2(H12, H23)));
        // Cartans stay primitive.
        let d = twisted_coproduct(&f, &UElement::gen(H12)).unwrap();
        let prim = TwistSeries::from_coeff(XI, n, 0, coproduct(&UElement::gen(H12)));
        assert!(d.sub(&prim).is_zero());
        // Δ_F(E12) = E12 ⊗ e^{2ξH23} + e^{-ξH12} ⊗ E12.
        let d = twisted_coproduct(&f, &UElement::gen(E12)).unwrap();
        let exp_2h23 = USeries::from_coeff(XI, n, 1, UElement::gen(H23).scale(Rat::int(2))).exp();
        let exp_neg_h12 = USeries::from_coeff(XI, n, 1, UElement::gen(H12).neg()).exp();
        let left = tensor_series(&useries_const(XI, n, &UElement::gen(E12)), &exp_2h23);
        let right = tensor_series(&exp_neg_h12, &useries_const(XI, n, &UElement::gen(E12)));
        assert!(d.sub(&left.add(&right)).is_zero());
    }

    #[test]
    fn universal_r_abelian() {
        let n = 4;
        let f = exp_tensor(&xi_term(1, n, gen_t2(H12, H23)));
        let r = universal_r(&f).unwrap();
        let expected = exp_tensor(
            &xi_term(1, n, gen_t2(H23, H12)).sub(&xi_term(1, n, gen_t2(H12, H23))),
        );
        assert!(r.sub(&expected).is_zero());
        assert_eq!(universal_r(&TwistSeries::one(XI, n)).unwrap(), TwistSeries::one(XI, n));
    }

    #[test]
    fn classical_r_of_cartan_root_twist() {
        let n = 3;
        let hp = UElement::from_lie(&h_perp(1, 2));
        let arg = xi_term(1, n, Tensor2::from_legs(&hp, &UElement::gen(E12)));
        let f = exp_tensor(&arg);
        let r = classical_r(&f).unwrap();
        // r = E12 ⊗ hp - hp ⊗ E12 = -(hp ∧ E12)
        let expected = RMatrixClassical::wedge(h_perp(1, 2), LieElement::gen(E12)).neg();
        assert!(r.equals(&expected));
    }

    #[test]
    fn cybe_examples() {
        // Abelian wedge solves CYBE.
        let r = RMatrixClassical::wedge(LieElement::gen(H12), LieElement::gen(H23));
        assert!(cybe_check(&r));
        // E12 ∧ E21 does not.
        let bad = RMatrixClassical::wedge(LieElement::gen(E12), LieElement::gen(E21));
        assert!(!cybe_check(&bad));
    }

    #[test]
    fn gauge_identity_preserves_cybe() {
        use crate::lie::gauge_transform_r;
        // r1(-a^2/2) = H23∧E23 - a^2 E12∧E13  ->  r2(a) under Ad(exp(a E12))⊗2.
        let a = Poly::param(A);
        let a2 = a.mul(&a);
        let r1 = RMatrixClassical::wedge(LieElement::gen(H23), LieElement::gen(E23)).add(
            &RMatrixClassical::new(alloc::vec![(
                a2.neg(),
                LieElement::gen(E12),
                LieElement::gen(E13),
            )]),
        );
        let g = LieElement::term(E12, a.clone());
        let out = gauge_transform_r(&r1, &g).unwrap();
        let r2 = RMatrixClassical::wedge(LieElement::gen(H23), LieElement::gen(E23))
            .add(&RMatrixClassical::new(alloc::vec![
                (a.clone(), LieElement::gen(H23), LieElement::gen(E13)),
                (a.clone(), LieElement::gen(E12), LieElement::gen(E23)),
            ]));
        assert!(out.equals(&r2), "gauge image mismatch: {:?}", out);
        assert!(cybe_check(&r1));
        assert!(cybe_check(&out));
        // identity gauge
        let same = gauge_transform_r(&r1, &LieElement::zero()).unwrap();
        assert!(same.equals(&r1));
    }

    #[test]
    fn triangularity_of_r() {
        let n = 4;
        let hp = UElement::from_lie(&h_perp(1, 2));
        let f = exp_tensor(&xi_term(1, n, Tensor2::from_legs(&hp, &UElement::gen(E12))));
        let r = universal_r(&f).unwrap();
        let prod = r.map(|t| t.flip()).mul(&r);
        assert!(prod.sub(&TwistSeries::one(XI, prod.n)).is_zero());
    }
}
