//! `U(sl3)` as linear combinations of PBW-ordered monomials.
//!
//! Monomials are exponent vectors over the fixed basis order
//! `E31 < E21 < E32 < H12 < H23 < E12 < E23 < E13`. Multiplication rewrites
//! the leftmost out-of-order adjacent pair `xy -> yx + [x,y]` and recurses;
//! the `(degree, disorder)` measure strictly decreases, so rewriting
//! terminates. Generator-pair swaps come straight from the structure-constant
//! table.

use crate::coeff::{Poly, SeriesElem};
use crate::lie::{bracket_gens, GeneratorId, LieElement, GENERATORS};
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// PBW monomial: exponents over the fixed basis order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PbwMonomial(pub [u8; 8]);

impl PbwMonomial {
    pub fn unit() -> Self {
        PbwMonomial([0; 8])
    }

    pub fn gen(g: GeneratorId) -> Self {
        let mut e = [0; 8];
        e[g.index()] = 1;
        PbwMonomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn top_index(&self) -> Option<usize> {
        (0..8).rev().find(|&i| self.0[i] > 0)
    }

    fn bump(&self, i: usize) -> Self {
        let mut e = self.0;
        e[i] += 1;
        PbwMonomial(e)
    }

    fn drop_top(&self, i: usize) -> Self {
        let mut e = self.0;
        e[i] -= 1;
        PbwMonomial(e)
    }
}

/// Element of `U(sl3)`: finite map from PBW monomials to coefficients.
#[derive(Clone, PartialEq, Default)]
pub struct UElement {
    terms: BTreeMap<PbwMonomial, Poly>,
}

impl UElement {
    pub fn zero() -> Self {
        UElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(PbwMonomial::unit(), Poly::one())
    }

    pub fn gen(g: GeneratorId) -> Self {
        Self::term(PbwMonomial::gen(g), Poly::one())
    }

    pub fn term(m: PbwMonomial, c: Poly) -> Self {
        let mut out = UElement::zero();
        out.add_term(m, c);
        out
    }

    pub fn from_lie(x: &LieElement) -> Self {
        let mut out = UElement::zero();
        for (g, c) in x.iter() {
            out.add_term(PbwMonomial::gen(*g), c.clone());
        }
        out
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Poly::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, &Poly)> {
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
        for (m, c) in other.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = UElement::zero();
        for (m, c) in self.terms.iter() {
            out.terms.insert(*m, c.neg());
        }
        out
    }

    pub fn scale(&self, r: Rat) -> Self {
        if r.is_zero() {
            return UElement::zero();
        }
        let mut out = UElement::zero();
        for (m, c) in self.terms.iter() {
            out.terms.insert(*m, c.scale(r));
        }
        out
    }

    pub fn scale_poly(&self, p: &Poly) -> Self {
        let mut out = UElement::zero();
        for (m, c) in self.terms.iter() {
            out.add_term(*m, c.mul(p));
        }
        out
    }

    /// Normal-ordered product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = UElement::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                let prod = mul_monomials(*m1, *m2);
                let c = c1.mul(c2);
                for (m, cm) in prod.terms.iter() {
                    out.add_term(*m, cm.mul(&c));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = UElement::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Counit: the algebra morphism killing all generators.
    pub fn counit(&self) -> Poly {
        self.coeff(&PbwMonomial::unit())
    }

    /// Coefficient-wise substitution of a parameter, re-canonicalized.
    pub fn substitute_params(&self, p: crate::coeff::ParamId, value: &Poly) -> Self {
        let mut out = UElement::zero();
        for (m, c) in self.terms.iter() {
            out.add_term(*m, c.subst(p, value));
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

impl SeriesElem for UElement {
    fn zero() -> Self {
        UElement::zero()
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
        UElement::one()
    }
}

impl crate::coeff::ScaleByPoly for UElement {
    fn scale_poly(&self, p: &Poly) -> Self {
        self.scale_poly(p)
    }
}

/// Product of two canonical monomials.
pub fn mul_monomials(a: PbwMonomial, b: PbwMonomial) -> UElement {
    // Fast path: concatenation already ordered.
    if let (Some(ta), Some(hb)) = (a.top_index(), lowest_index(&b)) {
        if ta <= hb {
            let mut e = a.0;
            for i in 0..8 {
                e[i] += b.0[i];
            }
            return UElement::term(PbwMonomial(e), Poly::one());
        }
    } else {
        // One of the factors is the unit.
        let mut e = a.0;
        for i in 0..8 {
            e[i] += b.0[i];
        }
        return UElement::term(PbwMonomial(e), Poly::one());
    }
    // Fold the letters of b, lowest first, into a.
    let mut acc = UElement::term(a, Poly::one());
    for i in 0..8 {
        for _ in 0..b.0[i] {
            let mut next = UElement::zero();
            for (m, c) in acc.terms.iter() {
                let prod = mul_term_by_gen(*m, GENERATORS[i]);
                for (mp, cp) in prod.terms.iter() {
                    next.add_term(*mp, cp.mul(c));
                }
            }
            acc = next;
        }
    }
    acc
}

fn lowest_index(m: &PbwMonomial) -> Option<usize> {
    (0..8).find(|&i| m.0[i] > 0)
}

/// Multiply a canonical monomial by a single generator on the right.
///
/// Every structure-constant correction only involves generators with strictly
/// smaller basis index than the letter being moved, so appending the stripped
/// top letter afterwards keeps monomials canonical.
fn mul_term_by_gen(m: PbwMonomial, g: GeneratorId) -> UElement {
    let gi = g.index();
    match m.top_index() {
        None => UElement::term(PbwMonomial::gen(g), Poly::one()),
        Some(hi) if hi <= gi => UElement::term(m.bump(gi), Poly::one()),
        Some(hi) => {
            let rest = m.drop_top(hi);
            // rest * g, then append generator `hi`. Terms that kept full
            // degree end at or below `hi` and can be bumped directly; the
            // degree-dropped correction terms may end higher (e.g. [E23,E12]
            // = -E13) and are multiplied recursively — they have strictly
            // smaller degree, so the recursion terminates.
            let part1 = mul_term_by_gen(rest, g);
            let mut out = UElement::zero();
            for (mp, cp) in part1.terms.iter() {
                if mp.top_index().map(|t| t <= hi).unwrap_or(true) {
                    out.add_term(mp.bump(hi), cp.clone());
                } else {
                    let fixed = mul_term_by_gen(*mp, GeneratorId::from_index(hi));
                    for (mf, cf) in fixed.terms.iter() {
                        out.add_term(*mf, cf.mul(cp));
                    }
                }
            }
            // rest * [top, g]
            let corr = bracket_gens(GeneratorId::from_index(hi), g);
            for (cg, cc) in corr.iter() {
                let sub = mul_term_by_gen(rest, *cg);
                for (mp, cp) in sub.terms.iter() {
                    out.add_term(*mp, cp.mul(cc));
                }
            }
            out
        }
    }
}

/// Dual basis of the generators with respect to the Killing form, paired as
/// `(x_i, x^i)`; used to build the quadratic Casimir.
pub fn killing_dual_pairs() -> Vec<(UElement, UElement)> {
    use GeneratorId::*;
    let sixth = Rat::new(1, 6);
    let third = Rat::new(1, 3);
    let mut pairs: Vec<(UElement, UElement)> = Vec::new();
    for (a, b) in [(E12, E21), (E21, E12), (E13, E31), (E31, E13), (E23, E32), (E32, E23)] {
        pairs.push((UElement::gen(a), UElement::gen(b).scale(sixth)));
    }
    // Cartan block: K(H12,H12)=K(H23,H23)=12, K(H12,H23)=-6. Inverse Gram of
    // [[12,-6],[-6,12]] is (1/18)[[2,1],[1,2]].
    let h12 = UElement::gen(H12);
    let h23 = UElement::gen(H23);
    let dual_h12 = h12.scale(third).add(&h23.scale(sixth)).scale(Rat::new(1, 3));
    let dual_h23 = h12.scale(sixth).add(&h23.scale(third)).scale(Rat::new(1, 3));
    pairs.push((h12.clone(), dual_h12));
    pairs.push((h23.clone(), dual_h23));
    pairs
}

/// Quadratic Casimir `sum_i x_i x^i` built from the Killing dual basis.
pub fn quadratic_casimir() -> UElement {
    let mut acc = UElement::zero();
    for (x, xd) in killing_dual_pairs() {
        acc = acc.add(&x.mul(&xd));
    }
    acc
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if m.is_unit() {
                write!(f, "*1")?;
            } else {
                for i in 0..8 {
                    if m.0[i] > 0 {
                        let mut name = String::from(GENERATORS[i].name());
                        if m.0[i] > 1 {
                            name = alloc::format!("{}^{}", name, m.0[i]);
                        }
                        write!(f, "*{}", name)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::params;
    use crate::lie::GeneratorId::*;
    use proptest::prelude::*;

    fn gen_u(g: GeneratorId) -> UElement {
        UElement::gen(g)
    }

    #[test]
    fn single_reordering_step() {
        // E12 * E21 = E21*E12 + H12
        let prod = gen_u(E12).mul(&gen_u(E21));
        let mut expected = UElement::zero();
        let mut m = [0u8; 8];
        m[E21.index()] = 1;
        m[E12.index()] = 1;
        expected.add_term(PbwMonomial(m), Poly::one());
        expected.add_term(PbwMonomial::gen(H12), Poly::one());
        assert_eq!(prod, expected);
    }

    #[test]
    fn commuting_generators() {
        // E13 * E12 = E12 * E13 in canonical order
        let prod = gen_u(E13).mul(&gen_u(E12));
        let mut m = [0u8; 8];
        m[E12.index()] = 1;
        m[E13.index()] = 1;
        assert_eq!(prod, UElement::term(PbwMonomial(m), Poly::one()));
    }

    #[test]
    fn degree_one_products_reproduce_bracket() {
        for x in GENERATORS {
            for y in GENERATORS {
                let xy = gen_u(x).mul(&gen_u(y));
                let yx = gen_u(y).mul(&gen_u(x));
                let diff = xy.sub(&yx);
                let br = UElement::from_lie(&bracket_gens(x, y));
                assert_eq!(diff, br, "bracket mismatch for {:?} {:?}", x, y);
            }
        }
    }

    #[test]
    fn exhaustive_low_degree_termination() {
        // Every product of degree <= 2 monomials canonicalizes and respects
        // the degree filtration.
        let mut monos = alloc::vec![PbwMonomial::unit()];
        for i in 0..8 {
            for j in i..8 {
                let mut e = [0u8; 8];
                e[i] += 1;
                e[j] += 1;
                monos.push(PbwMonomial(e));
            }
            let mut e = [0u8; 8];
            e[i] = 1;
            monos.push(PbwMonomial(e));
        }
        for a in monos.iter() {
            for b in monos.iter() {
                let prod = mul_monomials(*a, *b);
                let deg = a.degree() + b.degree();
                for (m, _) in prod.iter() {
                    assert!(m.degree() <= deg);
                }
            }
        }
    }

    #[test]
    fn casimir_is_central() {
        let c2 = quadratic_casimir();
        for g in GENERATORS {
            let x = gen_u(g);
            let comm = x.mul(&c2).sub(&c2.mul(&x));
            assert!(comm.is_zero(), "[{:?}, C2] != 0: {:?}", g, comm);
        }
    }

    #[test]
    fn substitute_params_examples() {
        // coefficient zeta, map zeta -> eta*xi
        let x = UElement::term(PbwMonomial::gen(E12), Poly::param(params::ZETA));
        let target = Poly::param(params::ETA).mul(&Poly::param(params::XI));
        let out = x.substitute_params(params::ZETA, &target);
        assert_eq!(out.coeff(&PbwMonomial::gen(E12)), target);
        // identity map
        let same = x.substitute_params(params::ZETA, &Poly::param(params::ZETA));
        assert_eq!(same, x);
    }

    fn arb_low_degree_element() -> impl Strategy<Value = UElement> {
        proptest::collection::vec((0usize..8, -2i128..=2), 1..=3).prop_map(|parts| {
            let mut u = UElement::zero();
            let mut m = [0u8; 8];
            let mut coeff = Rat::one();
            for (idx, c) in parts {
                if m.iter().map(|&e| e as u32).sum::<u32>() < 3 {
                    m[idx] += 1;
                }
                if c != 0 {
                    coeff = coeff * Rat::int(c);
                }
            }
            u.add_term(PbwMonomial(m), Poly::rat(coeff));
            u.add_term(PbwMonomial::unit(), Poly::one());
            u
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn associativity_on_random_triples(
            a in arb_low_degree_element(),
            b in arb_low_degree_element(),
            c in arb_low_degree_element(),
        ) {
            let lhs = a.mul(&b).mul(&c);
            let rhs = a.mul(&b.mul(&c));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
