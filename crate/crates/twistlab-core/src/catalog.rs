//! The twist catalog: constructors for every twisting element, their
//! carrier subalgebras, declared classical r-matrices, and the comparison of
//! machine-computed coproducts against the transcribed tables.
//!
//! Sign convention: `classical_r` extracts `d/dξ F_21 F^{-1}` at `ξ = 0`,
//! while the declared r-matrices are oriented as `R = 1⊗1 - ξ r + O(ξ²)`.
//! The two differ by a global factor of `-1`, recorded once here as
//! [`R_SIGN`]; every agreement check in this module uses it.

use crate::coeff::{params, ParamId, Poly, TruncSeries};
use crate::hopf::{
    check_cocycle, classical_r, invert_twist, twisted_coproduct, CocycleReport, TwistSeries,
};
use crate::lie::{h13, h_perp, Carrier, GeneratorId, LieElement, RMatrixClassical};
use crate::paperdata::{parse_expr, CoproductEntry, EvalCtx, EvalError, Expr, PaperCoproductTable};
use crate::rat::Rat;
use crate::rep3::{rep_tensor2, rep_twist_series, MatrixCtx, PMat, RepKind};
use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Global sign relating machine-extracted classical r-matrices to the
/// declared ones: `classical_r(build_twist(f)) = R_SIGN * declared_r(f)`.
pub const R_SIGN: Rat = Rat::raw(num_rational::Ratio::new_raw(-1, 1));

/// Every implemented twist family.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Family {
    AbelianCartan,
    CartanRoot,
    NilpotentAbelian,
    JordanianReg1,
    JordanianReg2,
    JordanianReg3,
    IrregularJordanian,
    ExtJordanian,
    ExtJordanianPrimed,
    Jr,
    PeriphericP,
    PeriphericPPrime,
    PeriphericRp,
    PeriphericShifted,
    PeriphericP10,
    DoubleJordanian,
    DoubleJordanianR,
    Parabolic,
    AppendixJpj,
    AppendixJj,
}

pub const ALL_FAMILIES: [Family; 20] = [
    Family::AbelianCartan,
    Family::CartanRoot,
    Family::NilpotentAbelian,
    Family::JordanianReg1,
    Family::JordanianReg2,
    Family::JordanianReg3,
    Family::IrregularJordanian,
    Family::ExtJordanian,
    Family::ExtJordanianPrimed,
    Family::Jr,
    Family::PeriphericP,
    Family::PeriphericPPrime,
    Family::PeriphericRp,
    Family::PeriphericShifted,
    Family::PeriphericP10,
    Family::DoubleJordanian,
    Family::DoubleJordanianR,
    Family::Parabolic,
    Family::AppendixJpj,
    Family::AppendixJj,
];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatalogError {
    UnknownFamily,
    NoDeclaredR,
}

impl core::fmt::Display for CatalogError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CatalogError::UnknownFamily => write!(f, "unknown twist family"),
            CatalogError::NoDeclaredR => write!(f, "family has no declared r-matrix"),
        }
    }
}

impl Family {
    pub fn slug(&self) -> &'static str {
        match self {
            Family::AbelianCartan => "abelian-cartan",
            Family::CartanRoot => "cartan-root",
            Family::NilpotentAbelian => "nilpotent-abelian",
            Family::JordanianReg1 => "jordanian-reg1",
            Family::JordanianReg2 => "jordanian-reg2",
            Family::JordanianReg3 => "jordanian-reg3",
            Family::IrregularJordanian => "irregular-jordanian",
            Family::ExtJordanian => "ext-jordanian",
            Family::ExtJordanianPrimed => "ext-jordanian-primed",
            Family::Jr => "jr",
            Family::PeriphericP => "peripheric",
            Family::PeriphericPPrime => "peripheric-prime",
            Family::PeriphericRp => "peripheric-rp",
            Family::PeriphericShifted => "peripheric-shifted",
            Family::PeriphericP10 => "peripheric-p10",
            Family::DoubleJordanian => "double-jordanian",
            Family::DoubleJordanianR => "double-jordanian-r",
            Family::Parabolic => "parabolic",
            Family::AppendixJpj => "appendix-jpj",
            Family::AppendixJj => "appendix-jj",
        }
    }

    pub fn by_slug(slug: &str) -> Option<Family> {
        ALL_FAMILIES.iter().copied().find(|f| f.slug() == slug)
    }

    /// Free formal parameters of the family besides the series variable.
    pub fn formal_params(&self) -> &'static [ParamId] {
        match self {
            Family::NilpotentAbelian | Family::JordanianReg1 => &[params::MU],
            Family::IrregularJordanian | Family::Jr | Family::Parabolic => &[params::ETA],
            Family::ExtJordanian
            | Family::ExtJordanianPrimed
            | Family::PeriphericRp
            | Family::PeriphericShifted => &[params::ZETA],
            Family::DoubleJordanian => &[params::ALPHA1, params::ALPHA2],
            Family::DoubleJordanianR => &[params::ALPHA1, params::ALPHA2, params::ZETA],
            _ => &[],
        }
    }

    /// Exponential factors of the twisting element, leftmost first.
    pub fn factors(&self) -> &'static [&'static str] {
        match self {
            Family::AbelianCartan => &["(exp (* xi (T H12 H23)))"],
            Family::CartanRoot => &["(exp (* xi (T HP12 E12)))"],
            Family::NilpotentAbelian => &["(exp (* xi (T (+ E12 (* mu E23)) E13)))"],
            Family::JordanianReg1 => {
                &["(exp (T (+ (* mu H12) (* (+ (* 2 mu) -1) H23)) (ln (+ 1 (* xi E12)))))"]
            }
            Family::JordanianReg2 => &["(exp (T H13 (ln (+ 1 (* xi (+ E12 E23))))))"],
            Family::JordanianReg3 => &["(exp (T HP23 (ln (+ 1 (* xi (+ E12 E13))))))"],
            Family::IrregularJordanian => {
                &["(exp (T (+ HP12 (* eta E12)) (ln (+ 1 (* xi E13)))))"]
            }
            Family::ExtJordanian => &[
                "(exp (* xi (T E12 (* E23 (^ (+ 1 (* xi E13)) (+ zeta -1/2))))))",
                "(exp (T (+ (* 1/2 H13) (* zeta HP13)) (ln (+ 1 (* xi E13)))))",
            ],
            Family::ExtJordanianPrimed => &[
                "(exp (* -1 xi (T E23 (* E12 (^ (+ 1 (* xi E13)) (* -1 (+ zeta 1/2)))))))",
                "(exp (T (+ (* 1/2 H13) (* zeta HP13)) (ln (+ 1 (* xi E13)))))",
            ],
            Family::Jr => &[
                "(exp (* 1/2 (T H23 (ln (+ 1 (* xi E23) (* -1/2 eta xi xi (^ E13 2)))))))",
                "(exp (* eta xi (T E12 E13)))",
            ],
            Family::PeriphericP => &[
                "(exp (* xi (T E12 (* E23 (inv (+ 1 (* xi E13)))))))",
                "(exp (T HP12 (ln (+ 1 (* xi E13)))))",
            ],
            Family::PeriphericPPrime => &[
                "(exp (* -1 xi (T E23 E12)))",
                "(exp (T HP12 (ln (+ 1 (* xi E13)))))",
            ],
            Family::PeriphericRp => &[
                "(exp (* zeta (T (* E23 (inv (+ 1 (* xi E13)))) (ln (+ 1 (* xi E13))))))",
                "(exp (* xi (T E12 (* E23 (inv (+ 1 (* xi E13)))))))",
                "(exp (T HP12 (ln (+ 1 (* xi E13)))))",
            ],
            Family::PeriphericShifted => &[
                "(exp (* xi (T E12 (* (+ E23 (* zeta E13)) (inv (+ 1 (* xi E13)))))))",
                "(exp (T HP12 (ln (+ 1 (* xi E13)))))",
            ],
            Family::PeriphericP10 => &[
                "(exp (* xi (T E12 E23)))",
                "(exp (T HP23 (ln (+ 1 (* xi E13)))))",
            ],
            Family::DoubleJordanian => &[
                "(exp (T HP13 (ln (+ 1 (* alpha1 xi E12)))))",
                "(exp (T HP12 (ln (+ 1 (* alpha2 xi E13)))))",
            ],
            Family::DoubleJordanianR => &[
                "(exp (* zeta (xdiv 1 (T (ln (+ 1 (* alpha1 xi E12))) (ln (+ 1 (* alpha2 xi E13)))))))",
                "(exp (T HP13 (ln (+ 1 (* alpha1 xi E12)))))",
                "(exp (T HP12 (ln (+ 1 (* alpha2 xi E13)))))",
            ],
            Family::Parabolic => &[
                "(exp (T HP13 (+ (* 2 (ln (+ 1 (* xi E13)))) (ln (+ 1 (* eta xi E32))))))",
                "(exp (* -1 xi (T E23 (* E12 (+ 1 (* xi E13))))))",
                "(exp (T H23 (ln (+ 1 (* xi E13)))))",
            ],
            Family::AppendixJpj => &[
                "(exp (T HP13 (ln (+ 1 (* xi E12)))))",
                "(exp (* xi (T E12 E23)))",
                "(exp (T HP23 (ln (+ 1 (* xi E13)))))",
            ],
            Family::AppendixJj => &[
                "(exp (T (+ HP23 (* -1 HP13) E23) (ln (+ 1 (* xi E13)))))",
                "(exp (T (+ HP13 (* -1 E23)) (ln (+ 1 (* xi (+ E12 E13))))))",
            ],
        }
    }

    /// Transcription-table keys associated with this family.
    pub fn data_keys(&self) -> Vec<&'static str> {
        match self {
            Family::ExtJordanian => vec!["ext-jordanian", "ext-jordanian-embedded"],
            _ => vec![self.slug()],
        }
    }

    /// Parameter substitutions to apply when evaluating the transcribed
    /// coproduct table for this family.
    pub fn data_substs(&self) -> Vec<(ParamId, &'static str)> {
        match self {
            Family::Jr => vec![(params::ZETA, "(* eta xi)")],
            Family::DoubleJordanian | Family::DoubleJordanianR => vec![
                (params::XI1, "(* alpha1 xi)"),
                (params::XI2, "(* alpha2 xi)"),
            ],
            Family::Parabolic => vec![(params::XI1, "xi"), (params::XI2, "(* eta xi)")],
            _ => Vec::new(),
        }
    }
}

fn reg1_cartan() -> LieElement {
    // mu H12 + (2 mu - 1) H23
    let mu = Poly::param(params::MU);
    let two_mu_m1 = mu.scale(Rat::int(2)).sub(&Poly::one());
    LieElement::term(GeneratorId::H12, mu).add(&LieElement::term(GeneratorId::H23, two_mu_m1))
}

fn ext_cartan() -> LieElement {
    // 1/2 H13 + zeta HP13
    h13()
        .scale(Rat::new(1, 2))
        .add(&h_perp(1, 3).scale_poly(&Poly::param(params::ZETA)))
}

/// Declared carrier subalgebra.
pub fn declared_carrier(f: Family) -> Carrier {
    use GeneratorId::*;
    let g = LieElement::gen;
    match f {
        Family::AbelianCartan => Carrier::new(vec![("H12", g(H12)), ("H23", g(H23))]),
        Family::CartanRoot => Carrier::new(vec![("HP12", h_perp(1, 2)), ("E12", g(E12))]),
        Family::NilpotentAbelian => {
            let x = g(E12).add(&g(E23).scale_poly(&Poly::param(params::MU)));
            Carrier::new(vec![("X", x), ("E13", g(E13))])
        }
        Family::JordanianReg1 => Carrier::new(vec![("H", reg1_cartan()), ("E12", g(E12))]),
        Family::JordanianReg2 => {
            Carrier::new(vec![("H13", h13()), ("E", g(E12).add(&g(E23)))])
        }
        Family::JordanianReg3 => {
            Carrier::new(vec![("HP23", h_perp(2, 3)), ("E", g(E12).add(&g(E13)))])
        }
        Family::IrregularJordanian => {
            let h = h_perp(1, 2).add(&g(E12).scale_poly(&Poly::param(params::ETA)));
            Carrier::new(vec![("H", h), ("E13", g(E13))])
        }
        Family::ExtJordanian | Family::ExtJordanianPrimed => Carrier::new(vec![
            ("H", ext_cartan()),
            ("A", g(E12)),
            ("B", g(E23)),
            ("E", g(E13)),
        ]),
        Family::Jr => Carrier::new(vec![
            ("H", g(H23)),
            ("A", g(E12)),
            ("B", g(E23)),
            ("E", g(E13)),
        ]),
        Family::PeriphericP
        | Family::PeriphericPPrime
        | Family::PeriphericRp
        | Family::PeriphericShifted => Carrier::new(vec![
            ("H", h_perp(1, 2)),
            ("A", g(E12)),
            ("B", g(E23)),
            ("E", g(E13)),
        ]),
        Family::PeriphericP10 => Carrier::new(vec![
            ("H", h_perp(2, 3)),
            ("A", g(E12)),
            ("B", g(E23)),
            ("E", g(E13)),
        ]),
        Family::DoubleJordanian | Family::DoubleJordanianR => Carrier::new(vec![
            ("HP13", h_perp(1, 3)),
            ("HP12", h_perp(1, 2)),
            ("E12", g(E12)),
            ("E13", g(E13)),
        ]),
        Family::Parabolic => Carrier::new(vec![
            ("HP13", h_perp(1, 3)),
            ("HP23", h_perp(2, 3)),
            ("E12", g(E12)),
            ("E13", g(E13)),
            ("E23", g(E23)),
            ("E32", g(E32)),
        ]),
        Family::AppendixJpj | Family::AppendixJj => {
            // Deformed carrier at unit parameter: B = E23 - HP13.
            let b = g(E23).sub(&h_perp(1, 3));
            Carrier::new(vec![
                ("HP", h_perp(2, 3)),
                ("E12", g(E12)),
                ("E13", g(E13)),
                ("B", b),
            ])
        }
    }
}

/// Declared classical r-matrix, in the catalog's `R = 1 - ξ r + ...`
/// orientation.
pub fn declared_r(f: Family) -> Result<RMatrixClassical, CatalogError> {
    use GeneratorId::*;
    let g = LieElement::gen;
    let w = RMatrixClassical::wedge;
    let r = match f {
        Family::AbelianCartan => w(g(H12), g(H23)),
        Family::CartanRoot => w(h_perp(1, 2), g(E12)),
        Family::NilpotentAbelian => {
            let x = g(E12).add(&g(E23).scale_poly(&Poly::param(params::MU)));
            w(x, g(E13))
        }
        Family::JordanianReg1 => w(reg1_cartan(), g(E12)),
        Family::JordanianReg2 => w(h13(), g(E12).add(&g(E23))),
        Family::JordanianReg3 => w(h_perp(2, 3), g(E12).add(&g(E13))),
        Family::IrregularJordanian => {
            let h = h_perp(1, 2).add(&g(E12).scale_poly(&Poly::param(params::ETA)));
            w(h, g(E13))
        }
        Family::ExtJordanian | Family::ExtJordanianPrimed => {
            w(ext_cartan(), g(E13)).add(&w(g(E12), g(E23)))
        }
        Family::Jr => {
            let half = RMatrixClassical::new(vec![(
                Poly::rat(Rat::new(1, 2)),
                g(H23),
                g(E23),
            )]);
            half.add(&RMatrixClassical::new(vec![(
                Poly::param(params::ETA),
                g(E12),
                g(E13),
            )]))
        }
        Family::PeriphericP | Family::PeriphericPPrime => {
            w(h_perp(1, 2), g(E13)).add(&w(g(E12), g(E23)))
        }
        Family::PeriphericRp => w(h_perp(1, 2), g(E13))
            .add(&w(g(E12), g(E23)))
            .add(&RMatrixClassical::new(vec![(
                Poly::param(params::ZETA),
                g(E23),
                g(E13),
            )])),
        Family::PeriphericShifted => w(h_perp(1, 2), g(E13))
            .add(&w(g(E12), g(E23)))
            .add(&RMatrixClassical::new(vec![(
                Poly::param(params::ZETA),
                g(E12),
                g(E13),
            )])),
        Family::PeriphericP10 => w(h_perp(2, 3), g(E13)).add(&w(g(E12), g(E23))),
        Family::DoubleJordanian => RMatrixClassical::new(vec![
            (Poly::param(params::ALPHA1), h_perp(1, 3), g(E12)),
            (Poly::param(params::ALPHA2), h_perp(1, 2), g(E13)),
        ]),
        Family::DoubleJordanianR => RMatrixClassical::new(vec![
            (Poly::param(params::ALPHA1), h_perp(1, 3), g(E12)),
            (Poly::param(params::ALPHA2), h_perp(1, 2), g(E13)),
            (
                Poly::param(params::ZETA)
                    .mul(&Poly::param(params::ALPHA1))
                    .mul(&Poly::param(params::ALPHA2)),
                g(E12),
                g(E13),
            ),
        ]),
        Family::Parabolic => w(h_perp(2, 3), g(E13))
            .add(&w(g(E12), g(E23)))
            .add(&RMatrixClassical::new(vec![(
                Poly::param(params::ETA),
                h_perp(1, 3),
                g(E32),
            )])),
        Family::AppendixJpj | Family::AppendixJj => {
            // E12 ∧ (E23 - HP13) + HP23 ∧ E13, with both legs inside the
            // deformed carrier.
            w(g(E12), g(E23).sub(&h_perp(1, 3))).add(&w(h_perp(2, 3), g(E13)))
        }
    };
    Ok(r)
}

/// Build the twisting element as a series in `var` to order `n`, with
/// optional extra parameter substitutions (used for limit comparisons along
/// curves such as `xi -> 2t^2`).
pub fn build_twist_with(
    f: Family,
    var: ParamId,
    n: i32,
    substs: &[(ParamId, &str)],
) -> Result<TwistSeries, EvalError> {
    let mut ctx = EvalCtx::new(var, n);
    for (p, src) in substs {
        ctx = ctx.with_param(*p, parse_expr(src)?);
    }
    let mut acc = TwistSeries::one(var, n);
    for factor in f.factors() {
        let e = parse_expr(factor)?;
        let t = ctx.eval_tensor(&e)?;
        acc = acc.mul(&t);
    }
    Ok(acc)
}

/// Build the twisting element in the default variable `xi` to order `n`.
pub fn build_twist(f: Family, n: i32) -> TwistSeries {
    build_twist_with(f, params::XI, n, &[]).expect("catalog factors must evaluate")
}

/// Cocycle + counit verification of a catalog twist.
pub fn verify_cocycle(f: Family, n: i32) -> CocycleReport {
    check_cocycle(&build_twist(f, n))
}

/// Machine classical r-matrix of the family.
pub fn machine_r(f: Family, n: i32) -> Result<RMatrixClassical, crate::hopf::ClassicalRError> {
    classical_r(&build_twist(f, n.max(2)))
}

/// `classical_r(build_twist) == R_SIGN * declared_r`?
pub fn r_matrix_agrees(f: Family) -> bool {
    let Ok(machine) = machine_r(f, 2) else {
        return false;
    };
    let Ok(declared) = declared_r(f) else {
        return false;
    };
    machine.equals(&declared.scale(R_SIGN))
}

// ---------------------------------------------------------------------------
// Representation oracle
// ---------------------------------------------------------------------------

fn negate_exp_factor(e: &Expr) -> Expr {
    match e {
        Expr::Exp(arg) => Expr::Exp(Box::new(Expr::Mul(vec![
            Expr::Num(-Rat::one()),
            (**arg).clone(),
        ]))),
        _ => panic!("catalog factors must be exponentials"),
    }
}

/// Exact represented twist and its inverse, computed factor by factor at the
/// matrix level (independently of the PBW expansion).
pub fn rep_twist_exact(f: Family, kind: RepKind) -> Result<(PMat, PMat), EvalError> {
    let ctx = MatrixCtx::new(kind, params::XI);
    let d = kind.dim();
    let mut m = PMat::identity(d * d);
    let mut minv = PMat::identity(d * d);
    for factor in f.factors() {
        let e = parse_expr(factor)?;
        let fm = ctx.eval_tensor(&e)?;
        let fm_inv = ctx.eval_tensor(&negate_exp_factor(&e))?;
        m = m.mul(&fm);
        minv = fm_inv.mul(&minv);
    }
    Ok((m, minv))
}

/// Exact represented R-matrix `rep(F_21) rep(F)^{-1}`.
pub fn rep_r_matrix(f: Family, kind: RepKind) -> Result<PMat, EvalError> {
    let (m, minv) = rep_twist_exact(f, kind)?;
    let m21 = crate::rep3::flip_matrix(&m, kind.dim());
    Ok(m21.mul(&minv))
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub agree: bool,
}

/// Compare the represented twisted coproduct of `x` against the conjugation
/// of the represented primitive coproduct by the exact matrix twist; the two
/// paths are independent and must agree modulo `xi^{n+1}`.
pub fn oracle_compare(
    f: Family,
    x: GeneratorId,
    kind: RepKind,
    n: i32,
) -> Result<OracleReport, EvalError> {
    let twist = build_twist(f, n);
    let lhs_series = twisted_coproduct(&twist, &crate::pbw::UElement::gen(x))?;
    let lhs = rep_twist_series(kind, &lhs_series);
    let (m, minv) = rep_twist_exact(f, kind)?;
    let dx = rep_tensor2(kind, &crate::hopf::coproduct(&crate::pbw::UElement::gen(x)));
    let rhs = m.mul(&dx).mul(&minv).truncate_var(params::XI, n);
    Ok(OracleReport {
        agree: lhs.sub(&rhs).is_zero(),
    })
}

// ---------------------------------------------------------------------------
// Paper-data diffing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct DiffEntry {
    pub name: String,
    pub matched: bool,
    /// `machine - transcription`, order by order, when they differ.
    pub correction: Option<TwistSeries>,
}

#[derive(Clone, Debug)]
pub struct DiffReport {
    pub family: Family,
    pub entries: Vec<DiffEntry>,
}

impl DiffReport {
    pub fn all_match(&self) -> bool {
        self.entries.iter().all(|e| e.matched)
    }
}

/// Compare machine-twisted coproducts against the transcription table.
pub fn diff_paper_coproducts(
    f: Family,
    table: &PaperCoproductTable,
    n: i32,
) -> Result<DiffReport, EvalError> {
    let mut entries: Vec<&CoproductEntry> = Vec::new();
    for key in f.data_keys() {
        if let Some(es) = table.for_twist(key) {
            entries.extend(es.iter());
        }
    }
    let twist = build_twist(f, n);
    let finv = invert_twist(&twist)?;
    let mut ctx = EvalCtx::new(params::XI, n);
    for (p, src) in f.data_substs() {
        ctx = ctx.with_param(p, parse_expr(src)?);
    }
    let mut out = Vec::new();
    for CoproductEntry { name, lhs, rhs } in entries.into_iter() {
        let x = ctx.eval_u_const(lhs)?;
        let dx = TwistSeries::from_coeff(params::XI, n, 0, crate::hopf::coproduct(&x));
        let machine = twist.mul(&dx).mul(&finv);
        let data = ctx.eval_tensor(rhs)?;
        let diff = machine.sub(&data);
        let matched = diff.is_zero();
        out.push(DiffEntry {
            name: name.clone(),
            matched,
            correction: if matched { None } else { Some(diff) },
        });
    }
    Ok(DiffReport {
        family: f,
        entries: out,
    })
}

/// Convenience: the embedded transcription table.
pub fn embedded_table() -> PaperCoproductTable {
    PaperCoproductTable::parse(crate::paperdata::COPRODUCTS_ASSET)
        .expect("embedded coproduct table must parse")
}

// ---------------------------------------------------------------------------
// Misc structural checks used by the verification suites
// ---------------------------------------------------------------------------

/// The peripheric twist produces a pair of commuting primitive elements:
/// `σ` and `B e^{-σ}`. Returns true when both are primitive in the twisted
/// coalgebra.
pub fn peripheric_primitive_pair(n: i32) -> bool {
    use crate::hopf::{primitive_series, twisted_coproduct_series, USeries};
    let f = build_twist(Family::PeriphericP, n);
    let xi_e13 = USeries::from_coeff(params::XI, n, 1, crate::pbw::UElement::gen(GeneratorId::E13));
    let sigma = xi_e13.ln_one_plus();
    let e23 = USeries::from_coeff(params::XI, n, 0, crate::pbw::UElement::gen(GeneratorId::E23));
    // B e^{-σ} = E23 (1 + ξ E13)^{-1}
    let b_esig = e23.mul(&xi_e13.pow_binomial(&Poly::int(-1)));
    for x in [sigma, b_esig] {
        let lhs = twisted_coproduct_series(&f, &x).unwrap();
        let rhs = primitive_series(&x);
        if !lhs.sub(&rhs).is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{cybe_check, universal_r};
    use crate::lie::{carrier_closure_check, frobenius_form_check};

    #[test]
    fn all_twists_start_with_identity() {
        for f in ALL_FAMILIES {
            let t = build_twist(f, 2);
            assert_eq!(
                t.coeff(0),
                crate::hopf::Tensor2::identity(),
                "family {:?}",
                f
            );
        }
    }

    #[test]
    fn all_twists_cocycle_low_order() {
        for f in ALL_FAMILIES {
            let rep = verify_cocycle(f, 3);
            assert!(rep.ok, "cocycle fails for {:?}: {:?}", f, rep);
        }
    }

    #[test]
    fn jordanian_low_order_expansion() {
        // Independent oracle: exp(H⊗σ) with σ = ξE - ξ²E²/2 expanded by hand
        // to second order equals 1⊗1 + ξ H⊗E + ξ² (H²⊗E² - H⊗E²)/2.
        use crate::hopf::{tensor_series, Tensor2, USeries};
        use crate::pbw::UElement;
        let n = 2;
        let f = build_twist(Family::JordanianReg2, n);
        let h = UElement::from_lie(&h13());
        let e = UElement::gen(GeneratorId::E12).add(&UElement::gen(GeneratorId::E23));
        let e2 = e.mul(&e);
        let mut expected = TwistSeries::one(params::XI, n);
        let hc = |u: &UElement, k: i32| {
            tensor_series(
                &USeries::from_coeff(params::XI, n, k, h.clone()),
                &USeries::from_coeff(params::XI, n, 0, u.clone()),
            )
        };
        // ξ H⊗E
        expected = expected.add(&hc(&e, 1));
        // ξ² [ (H²-H)⊗E² ] / 2  =  ξ² [H(H-1)]⊗E² / 2
        let h2 = h.mul(&h).sub(&h);
        expected = expected.add(
            &tensor_series(
                &USeries::from_coeff(params::XI, n, 2, h2),
                &USeries::from_coeff(params::XI, n, 0, e2),
            )
            .scale(Rat::new(1, 2)),
        );
        assert!(f.sub(&expected).is_zero());
    }

    #[test]
    fn abelian_at_zero_is_identity() {
        let f = build_twist(Family::AbelianCartan, 0);
        assert!(f.sub(&TwistSeries::one(params::XI, 0)).is_zero());
    }

    #[test]
    fn primed_variant_is_automorphism_image() {
        // A -> -B, B -> A, alpha <-> beta realized in the embedding as
        // E12 -> -E23, E23 -> E12, zeta -> -zeta applied to the unprimed
        // extension factor.
        let n = 4;
        let primed = build_twist(Family::ExtJordanianPrimed, n);
        let mut ctx = EvalCtx::new(params::XI, n)
            .with_atom("E12", parse_expr("(* -1 E23)").unwrap())
            .with_atom("E23", parse_expr("E12").unwrap())
            .with_param(params::ZETA, parse_expr("(* -1 zeta)").unwrap());
        let mut acc = TwistSeries::one(params::XI, n);
        for factor in Family::ExtJordanian.factors() {
            let e = parse_expr(factor).unwrap();
            acc = acc.mul(&ctx.eval_tensor(&e).unwrap());
        }
        // The H factor maps to 1/2 H13 - zeta HP13 under zeta -> -zeta, which
        // is not the primed H; rebuild it explicitly instead: the primed
        // twist shares the unprimed Jordanian factor.
        ctx = EvalCtx::new(params::XI, n)
            .with_atom("E12", parse_expr("(* -1 E23)").unwrap())
            .with_atom("E23", parse_expr("E12").unwrap());
        let ext = parse_expr(Family::ExtJordanian.factors()[0]).unwrap();
        // substitute beta-exponent: e^{-beta sigma} with beta = alpha' means
        // exponent (zeta - 1/2) -> -(zeta + 1/2).
        let ext_sub = match &ext {
            Expr::Exp(_) => ctx
                .with_param(params::ZETA, parse_expr("(* -1 zeta)").unwrap())
                .eval_tensor(&ext)
                .unwrap(),
            _ => unreachable!(),
        };
        let jord = EvalCtx::new(params::XI, n)
            .eval_tensor(&parse_expr(Family::ExtJordanian.factors()[1]).unwrap())
            .unwrap();
        let image = ext_sub.mul(&jord);
        assert!(image.sub(&primed).is_zero());
        let _ = acc;
    }

    #[test]
    fn r_matrices_agree_with_declared() {
        for f in ALL_FAMILIES {
            assert!(r_matrix_agrees(f), "r mismatch for {:?}", f);
        }
    }

    #[test]
    fn declared_r_solves_cybe() {
        for f in ALL_FAMILIES {
            let r = declared_r(f).unwrap();
            assert!(cybe_check(&r), "CYBE fails for {:?}", f);
        }
    }

    #[test]
    fn carriers_close() {
        for f in ALL_FAMILIES {
            let c = declared_carrier(f);
            let rep = carrier_closure_check(&c).unwrap();
            assert!(rep.closed, "carrier not closed for {:?}", f);
        }
    }

    #[test]
    fn frobenius_on_4_and_6_dim_carriers() {
        for f in ALL_FAMILIES {
            let c = declared_carrier(f);
            if c.dim() < 4 {
                continue;
            }
            let r = declared_r(f).unwrap();
            let rep = frobenius_form_check(&r, &c).unwrap();
            assert!(
                rep.nondegenerate && rep.cocycle_zero,
                "frobenius fails for {:?}: {:?}",
                f,
                rep
            );
        }
    }

    #[test]
    fn jr_four_factor_r_matrix() {
        // R = exp(σ/2 ⊗ H) exp(ζ E⊗A) exp(-ζ A⊗E) exp(-H ⊗ σ/2) with
        // ζ = ηξ, compared against F_21 F^{-1} through order 4.
        let n = 4;
        let f = build_twist(Family::Jr, n);
        let r = universal_r(&f).unwrap();
        let ctx = EvalCtx::new(params::XI, n);
        let sigma = "(ln (+ 1 (* xi E23) (* -1/2 eta xi xi (^ E13 2))))";
        let factors = [
            alloc::format!("(exp (* 1/2 (T {} H23)))", sigma),
            "(exp (* eta xi (T E13 E12)))".to_string(),
            "(exp (* -1 eta xi (T E12 E13)))".to_string(),
            alloc::format!("(exp (* -1/2 (T H23 {})))", sigma),
        ];
        let mut expected = TwistSeries::one(params::XI, n);
        for fac in factors {
            expected = expected.mul(&ctx.eval_tensor(&parse_expr(&fac).unwrap()).unwrap());
        }
        assert!(r.sub(&expected).is_zero());
    }

    #[test]
    fn double_jordanian_r_via_substitution_curve() {
        // Building with the inline xdiv equals building with a formal zeta
        // and substituting zeta -> zeta/xi afterwards.
        let n = 4;
        let direct = build_twist(Family::DoubleJordanianR, n);
        // Formal variant: exp(zeta σ12⊗σ13) without the 1/xi. It must be
        // expanded to order 2n so the down-shift keeps every contribution.
        let ctx = EvalCtx::new(params::XI, 2 * n);
        let raw = ctx
            .eval_tensor(
                &parse_expr(
                    "(exp (* zeta (T (ln (+ 1 (* alpha1 xi E12))) (ln (+ 1 (* alpha2 xi E13))))))",
                )
                .unwrap(),
            )
            .unwrap();
        let rest = build_twist(Family::DoubleJordanian, 2 * n);
        let formal = raw.mul(&rest);
        let curved =
            crate::hopf::twist_subst_param_curve(&formal, params::ZETA, &Poly::param(params::ZETA), -1)
                .unwrap()
                .truncate(n);
        assert!(curved.sub(&direct).is_zero());
    }

    #[test]
    fn peripheric_primitive_pair_holds() {
        assert!(peripheric_primitive_pair(4));
    }

    #[test]
    fn appendix_twists_share_r() {
        let r1 = machine_r(Family::AppendixJpj, 2).unwrap();
        let r2 = machine_r(Family::AppendixJj, 2).unwrap();
        assert!(r1.equals(&r2));
    }
}

#[cfg(test)]
mod diff_tests {
    use super::*;

    fn diff(f: Family, n: i32) -> DiffReport {
        diff_paper_coproducts(f, &embedded_table(), n).unwrap()
    }

    #[test]
    fn short_lists_match_machine_truth() {
        // Families whose transcribed tables must agree exactly.
        for f in [
            Family::AbelianCartan,
            Family::CartanRoot,
            Family::PeriphericP,
            Family::PeriphericP10,
        ] {
            let rep = diff(f, 4);
            assert!(!rep.entries.is_empty());
            for e in &rep.entries {
                assert!(e.matched, "{} mismatch for {:?}: {:?}", e.name, f, e.correction);
            }
        }
    }

    #[test]
    fn ext_jordanian_abstract_entries_match() {
        let rep = diff(Family::ExtJordanian, 4);
        for e in rep.entries.iter().filter(|e| ["H", "A", "B", "E"].contains(&e.name.as_str())) {
            assert!(e.matched, "{} mismatch: {:?}", e.name, e.correction);
        }
    }

    #[test]
    fn double_jordanian_list_matches() {
        let rep = diff(Family::DoubleJordanian, 4);
        assert_eq!(rep.entries.len(), 8);
        for e in &rep.entries {
            assert!(e.matched, "{} mismatch: {:?}", e.name, e.correction);
        }
    }

    #[test]
    fn long_lists_generate_reports() {
        for f in [
            Family::NilpotentAbelian,
            Family::IrregularJordanian,
            Family::Jr,
            Family::Parabolic,
        ] {
            let rep = diff(f, 3);
            assert_eq!(rep.entries.len(), 8, "family {:?}", f);
            for e in &rep.entries {
                if !e.matched {
                    assert!(e.correction.is_some());
                }
            }
        }
    }
}
