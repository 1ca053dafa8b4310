//! Line-oriented text format for algebra-valued expressions, used both for
//! the catalog's twist factors and for the transcribed coproduct tables.
//!
//! Expressions are prefix s-expressions over generator tags, named Cartan
//! elements, parameters and rational literals:
//!
//! ```text
//! (+ a b ...)        sum
//! (* a b ...)        product
//! (T a b)            2-leg tensor a ⊗ b
//! (exp u)            exponential; u must vanish at order 0
//! (ln u)             logarithm; u must equal 1 + higher order
//! (^ u c)            power; c a scalar (integer, rational or parameter)
//! (inv u)            shorthand for (^ u -1)
//! (xdiv k u)         exact division by the k-th power of the series variable
//! ```
//!
//! Atoms: `E12 E13 E23 E21 E31 E32 H12 H23 H13 HP12 HP13 HP23`, parameter
//! names (`xi eta zeta mu lambda t s a alpha1 alpha2 xi1 xi2`), rational
//! literals such as `2`, `-1/2`.
//!
//! A transcription table is a sequence of blocks:
//!
//! ```text
//! twist <slug>
//! cop <name> : <lhs-expr> = <rhs-expr>
//! ```
//!
//! with `#` starting a comment. Transcriptions are data, never ground truth:
//! corrections to them are recorded in the changelog at the top of the asset
//! file and surface in the diff report.

use crate::coeff::{ParamId, Poly, SeriesError, TruncSeries};
use crate::hopf::{tensor_series, Tensor2, TwistSeries, USeries};
use crate::lie::{h13, h_perp, GeneratorId, LieElement};
use crate::pbw::UElement;
use crate::rat::Rat;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rat),
    Param(ParamId),
    Atom(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    XDiv(i32, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParseError {
    UnexpectedEof,
    UnexpectedToken(String),
    UnknownAtom(String),
    Malformed(String),
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ParseError::UnexpectedEof => write!(f, "unexpected end of input"),
            ParseError::UnexpectedToken(t) => write!(f, "unexpected token `{}`", t),
            ParseError::UnknownAtom(t) => write!(f, "unknown atom `{}`", t),
            ParseError::Malformed(m) => write!(f, "malformed entry: {}", m),
        }
    }
}

fn tokenize(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(core::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(core::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_rat(tok: &str) -> Option<Rat> {
    let (num_str, den_str) = match tok.split_once('/') {
        Some((a, b)) => (a, b),
        None => (tok, "1"),
    };
    let num: i128 = num_str.parse().ok()?;
    let den: i128 = den_str.parse().ok()?;
    if den == 0 {
        return None;
    }
    Some(Rat::new(num, den))
}

fn parse_atom(tok: &str) -> Result<Expr, ParseError> {
    if tok
        .chars()
        .next()
        .map(|c| c.is_ascii_digit() || c == '-')
        .unwrap_or(false)
    {
        if let Some(r) = parse_rat(tok) {
            return Ok(Expr::Num(r));
        }
    }
    if let Some(p) = ParamId::by_name(tok) {
        return Ok(Expr::Param(p));
    }
    match tok {
        "E12" | "E13" | "E23" | "E21" | "E31" | "E32" | "H12" | "H23" | "H13" | "HP12"
        | "HP13" | "HP23" => Ok(Expr::Atom(tok.to_string())),
        _ => Err(ParseError::UnknownAtom(tok.to_string())),
    }
}

struct Parser<'a> {
    toks: &'a [String],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(|s| s.as_str())
    }

    fn next(&mut self) -> Result<&'a str, ParseError> {
        let t = self.toks.get(self.pos).ok_or(ParseError::UnexpectedEof)?;
        self.pos += 1;
        Ok(t.as_str())
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        let t = self.next()?;
        if t == tok {
            Ok(())
        } else {
            Err(ParseError::UnexpectedToken(t.to_string()))
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let t = self.next()?;
        if t != "(" {
            return parse_atom(t);
        }
        let head = self.next()?.to_string();
        let expr = match head.as_str() {
            "+" | "*" => {
                let mut items = Vec::new();
                while self.peek() != Some(")") {
                    items.push(self.parse_expr()?);
                }
                if items.is_empty() {
                    return Err(ParseError::Malformed("empty sum/product".to_string()));
                }
                if head == "+" {
                    Expr::Add(items)
                } else {
                    Expr::Mul(items)
                }
            }
            "T" => {
                let a = self.parse_expr()?;
                let b = self.parse_expr()?;
                Expr::Tensor(Box::new(a), Box::new(b))
            }
            "exp" => Expr::Exp(Box::new(self.parse_expr()?)),
            "ln" => Expr::Ln(Box::new(self.parse_expr()?)),
            "^" => {
                let base = self.parse_expr()?;
                let expo = self.parse_expr()?;
                Expr::Pow(Box::new(base), Box::new(expo))
            }
            "inv" => Expr::Pow(
                Box::new(self.parse_expr()?),
                Box::new(Expr::Num(-Rat::one())),
            ),
            "xdiv" => {
                let k = self.next()?;
                let k: i32 = k
                    .parse()
                    .map_err(|_| ParseError::Malformed(format!("bad xdiv power `{}`", k)))?;
                Expr::XDiv(k, Box::new(self.parse_expr()?))
            }
            other => return Err(ParseError::UnexpectedToken(other.to_string())),
        };
        self.expect(")")?;
        Ok(expr)
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src);
    let mut p = Parser {
        toks: &toks,
        pos: 0,
    };
    let e = p.parse_expr()?;
    if p.pos != toks.len() {
        return Err(ParseError::UnexpectedToken(toks[p.pos].clone()));
    }
    Ok(e)
}

/// Resolve a named algebra atom to a Lie element.
pub fn named_element(name: &str) -> Option<LieElement> {
    if let Some(g) = GeneratorId::by_name(name) {
        return Some(LieElement::gen(g));
    }
    match name {
        "H13" => Some(h13()),
        "HP12" => Some(h_perp(1, 2)),
        "HP13" => Some(h_perp(1, 3)),
        "HP23" => Some(h_perp(2, 3)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Series evaluation
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub enum SVal {
    Scalar(TruncSeries<Poly>),
    U(USeries),
    T(TwistSeries),
}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    Parse(ParseError),
    Series(SeriesError),
    TypeMismatch(String),
    BadExponent(String),
}

impl core::fmt::Display for EvalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EvalError::Parse(p) => write!(f, "{}", p),
            EvalError::Series(s) => write!(f, "{}", s),
            EvalError::TypeMismatch(m) => write!(f, "type mismatch: {}", m),
            EvalError::BadExponent(m) => write!(f, "bad exponent: {}", m),
        }
    }
}

impl From<ParseError> for EvalError {
    fn from(p: ParseError) -> Self {
        EvalError::Parse(p)
    }
}

impl From<SeriesError> for EvalError {
    fn from(s: SeriesError) -> Self {
        EvalError::Series(s)
    }
}

/// Evaluation context: the series variable, truncation order and optional
/// substitutions applied to parameters and algebra atoms.
pub struct EvalCtx {
    pub var: ParamId,
    pub n: i32,
    pub param_subst: BTreeMap<ParamId, Expr>,
    pub atom_subst: BTreeMap<String, Expr>,
}

impl EvalCtx {
    pub fn new(var: ParamId, n: i32) -> Self {
        EvalCtx {
            var,
            n,
            param_subst: BTreeMap::new(),
            atom_subst: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, p: ParamId, e: Expr) -> Self {
        self.param_subst.insert(p, e);
        self
    }

    pub fn with_atom(mut self, name: &str, e: Expr) -> Self {
        self.atom_subst.insert(name.to_string(), e);
        self
    }

    fn scalar_one(&self) -> TruncSeries<Poly> {
        TruncSeries::one(self.var, self.n)
    }

    fn promote_u(&self, v: SVal) -> Result<USeries, EvalError> {
        match v {
            SVal::Scalar(s) => Ok(s.map(|p| UElement::one().scale_poly(p))),
            SVal::U(u) => Ok(u),
            SVal::T(_) => Err(EvalError::TypeMismatch(
                "tensor value where an algebra value was expected".to_string(),
            )),
        }
    }

    fn promote_t(&self, v: SVal) -> Result<TwistSeries, EvalError> {
        match v {
            SVal::Scalar(s) => Ok(s.map(|p| Tensor2::identity().scale_poly(p))),
            SVal::T(t) => Ok(t),
            SVal::U(_) => Err(EvalError::TypeMismatch(
                "algebra value where a tensor value was expected".to_string(),
            )),
        }
    }

    fn rank(v: &SVal) -> u8 {
        match v {
            SVal::Scalar(_) => 0,
            SVal::U(_) => 1,
            SVal::T(_) => 2,
        }
    }

    fn binop(&self, a: SVal, b: SVal, mul: bool) -> Result<SVal, EvalError> {
        let rank = Self::rank(&a).max(Self::rank(&b));
        match rank {
            0 => {
                let (SVal::Scalar(x), SVal::Scalar(y)) = (a, b) else {
                    unreachable!()
                };
                Ok(SVal::Scalar(if mul { x.mul(&y) } else { x.add(&y) }))
            }
            1 => {
                let x = self.promote_u(a)?;
                let y = self.promote_u(b)?;
                Ok(SVal::U(if mul { x.mul(&y) } else { x.add(&y) }))
            }
            _ => {
                let x = self.promote_t(a)?;
                let y = self.promote_t(b)?;
                Ok(SVal::T(if mul { x.mul(&y) } else { x.add(&y) }))
            }
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<SVal, EvalError> {
        match e {
            Expr::Num(r) => Ok(SVal::Scalar(self.scalar_one().scale(*r))),
            Expr::Param(p) => {
                if let Some(sub) = self.param_subst.get(p) {
                    // Substitutions are applied once, not chained.
                    return EvalCtx::new(self.var, self.n).eval(sub);
                }
                if *p == self.var {
                    Ok(SVal::Scalar(TruncSeries::from_coeff(
                        self.var,
                        self.n,
                        1,
                        Poly::one(),
                    )))
                } else {
                    Ok(SVal::Scalar(TruncSeries::from_coeff(
                        self.var,
                        self.n,
                        0,
                        Poly::param(*p),
                    )))
                }
            }
            Expr::Atom(name) => {
                if let Some(sub) = self.atom_subst.get(name) {
                    // Substitutions are applied once, not chained.
                    return EvalCtx::new(self.var, self.n).eval(sub);
                }
                let lie = named_element(name)
                    .ok_or_else(|| EvalError::Parse(ParseError::UnknownAtom(name.clone())))?;
                Ok(SVal::U(TruncSeries::from_coeff(
                    self.var,
                    self.n,
                    0,
                    UElement::from_lie(&lie),
                )))
            }
            Expr::Add(items) => {
                let mut acc = self.eval(&items[0])?;
                for item in &items[1..] {
                    let v = self.eval(item)?;
                    acc = self.binop(acc, v, false)?;
                }
                Ok(acc)
            }
            Expr::Mul(items) => {
                let mut acc = self.eval(&items[0])?;
                for item in &items[1..] {
                    let v = self.eval(item)?;
                    acc = self.binop(acc, v, true)?;
                }
                Ok(acc)
            }
            Expr::Tensor(a, b) => {
                let x = self.promote_u(self.eval(a)?)?;
                let y = self.promote_u(self.eval(b)?)?;
                Ok(SVal::T(tensor_series(&x, &y)))
            }
            Expr::Exp(arg) => match self.eval(arg)? {
                SVal::Scalar(s) => Ok(SVal::Scalar(s.exp())),
                SVal::U(u) => Ok(SVal::U(u.exp())),
                SVal::T(t) => Ok(SVal::T(t.exp())),
            },
            Expr::Ln(arg) => match self.eval(arg)? {
                SVal::Scalar(s) => Ok(SVal::Scalar(s.sub(&self.scalar_one()).ln_one_plus())),
                SVal::U(u) => Ok(SVal::U(
                    u.sub(&TruncSeries::one(self.var, self.n)).ln_one_plus(),
                )),
                SVal::T(t) => Ok(SVal::T(
                    t.sub(&TruncSeries::one(self.var, self.n)).ln_one_plus(),
                )),
            },
            Expr::Pow(base, expo) => {
                let c = match self.eval(expo)? {
                    SVal::Scalar(s) => {
                        if s.min_order().map(|m| m < 0).unwrap_or(false) {
                            return Err(EvalError::BadExponent(
                                "exponent has negative series order".to_string(),
                            ));
                        }
                        let mut p = Poly::zero();
                        for k in 0..=s.n {
                            let ck = s.coeff(k);
                            if ck.is_zero() {
                                continue;
                            }
                            if k != 0 {
                                return Err(EvalError::BadExponent(
                                    "exponent must not depend on the series variable".to_string(),
                                ));
                            }
                            p = p.add(&ck);
                        }
                        p
                    }
                    _ => {
                        return Err(EvalError::BadExponent(
                            "exponent must be scalar".to_string(),
                        ))
                    }
                };
                // Plain repeated multiplication for literal non-negative
                // integer exponents; binomial series otherwise.
                if let Some(k) = c.as_const().filter(|r| r.is_integer() && !r.is_negative()) {
                    let k = k.numer() as u32;
                    let mut acc = SVal::Scalar(self.scalar_one());
                    let b = self.eval(base)?;
                    for _ in 0..k {
                        acc = self.binop(acc, b.clone(), true)?;
                    }
                    return Ok(acc);
                }
                match self.eval(base)? {
                    SVal::Scalar(s) => {
                        Ok(SVal::Scalar(s.sub(&self.scalar_one()).pow_binomial(&c)))
                    }
                    SVal::U(u) => Ok(SVal::U(
                        u.sub(&TruncSeries::one(self.var, self.n)).pow_binomial(&c),
                    )),
                    SVal::T(t) => Ok(SVal::T(
                        t.sub(&TruncSeries::one(self.var, self.n)).pow_binomial(&c),
                    )),
                }
            }
            Expr::XDiv(k, arg) => match self.eval(arg)? {
                SVal::Scalar(s) => Ok(SVal::Scalar(s.shift(-k)?)),
                SVal::U(u) => Ok(SVal::U(u.shift(-k)?)),
                SVal::T(t) => Ok(SVal::T(t.shift(-k)?)),
            },
        }
    }

    pub fn eval_tensor(&self, e: &Expr) -> Result<TwistSeries, EvalError> {
        let v = self.eval(e)?;
        self.promote_t(v)
    }

    pub fn eval_u(&self, e: &Expr) -> Result<USeries, EvalError> {
        let v = self.eval(e)?;
        self.promote_u(v)
    }

    /// Evaluate an expression that must be a series-constant algebra element.
    pub fn eval_u_const(&self, e: &Expr) -> Result<UElement, EvalError> {
        let u = self.eval_u(e)?;
        for k in u.lo..=u.n {
            if k != 0 && !u.coeff(k).is_zero() {
                return Err(EvalError::TypeMismatch(
                    "expected a series-constant element".to_string(),
                ));
            }
        }
        Ok(u.coeff(0))
    }
}

// ---------------------------------------------------------------------------
// Transcription tables
// ---------------------------------------------------------------------------

/// One transcribed coproduct: name, left-hand element, right-hand tensor.
#[derive(Clone, Debug)]
pub struct CoproductEntry {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

#[derive(Clone, Debug, Default)]
pub struct PaperCoproductTable {
    pub entries: BTreeMap<String, Vec<CoproductEntry>>,
}

impl PaperCoproductTable {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut table = PaperCoproductTable::default();
        let mut current: Option<String> = None;
        for (lineno, raw) in src.lines().enumerate() {
            let line = match raw.split_once('#') {
                Some((body, _)) => body.trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("twist ") {
                current = Some(rest.trim().to_string());
                table.entries.entry(rest.trim().to_string()).or_default();
                continue;
            }
            if let Some(rest) = line.strip_prefix("cop ") {
                let slug = current.clone().ok_or_else(|| {
                    ParseError::Malformed(format!("line {}: cop before twist", lineno + 1))
                })?;
                let (name, rest) = rest.split_once(':').ok_or_else(|| {
                    ParseError::Malformed(format!("line {}: missing `:`", lineno + 1))
                })?;
                let (lhs_src, rhs_src) = rest.split_once('=').ok_or_else(|| {
                    ParseError::Malformed(format!("line {}: missing `=`", lineno + 1))
                })?;
                let entry = CoproductEntry {
                    name: name.trim().to_string(),
                    lhs: parse_expr(lhs_src)?,
                    rhs: parse_expr(rhs_src)?,
                };
                table.entries.get_mut(&slug).unwrap().push(entry);
                continue;
            }
            return Err(ParseError::Malformed(format!(
                "line {}: unrecognized directive",
                lineno + 1
            )));
        }
        Ok(table)
    }

    pub fn for_twist(&self, slug: &str) -> Option<&[CoproductEntry]> {
        self.entries.get(slug).map(|v| v.as_slice())
    }
}

/// Embedded transcription of the coproduct lists.
pub const COPRODUCTS_ASSET: &str = include_str!("../assets/coproducts.txt");

/// Embedded classical targets for the q-limit cases.
pub const QTARGETS_ASSET: &str = include_str!("../assets/qtargets.txt");

/// Parsed q-limit targets: case name -> expected classical tensor expression.
#[derive(Clone, Debug)]
pub struct QTargetTable {
    pub entries: BTreeMap<String, Expr>,
}

impl QTargetTable {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in src.lines().enumerate() {
            let line = match raw.split_once('#') {
                Some((body, _)) => body.trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            let (name, expr_src) = line.split_once('=').ok_or_else(|| {
                ParseError::Malformed(format!("line {}: missing `=`", lineno + 1))
            })?;
            entries.insert(name.trim().to_string(), parse_expr(expr_src)?);
        }
        Ok(QTargetTable { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::params::*;

    #[test]
    fn parse_and_eval_scalar() {
        let ctx = EvalCtx::new(XI, 4);
        let e = parse_expr("(+ 1 (* 2 xi) (* -1/2 xi xi))").unwrap();
        let SVal::Scalar(s) = ctx.eval(&e).unwrap() else {
            panic!()
        };
        assert_eq!(s.coeff(0), Poly::one());
        assert_eq!(s.coeff(1), Poly::int(2));
        assert_eq!(s.coeff(2), Poly::rat(Rat::new(-1, 2)));
    }

    #[test]
    fn eval_jordanian_factor() {
        // exp(H13 ⊗ ln(1+xi (E12+E23))) starts with the identity.
        let ctx = EvalCtx::new(XI, 3);
        let e = parse_expr("(exp (T H13 (ln (+ 1 (* xi (+ E12 E23))))))").unwrap();
        let t = ctx.eval_tensor(&e).unwrap();
        assert_eq!(t.coeff(0), Tensor2::identity());
        assert!(!t.coeff(1).is_zero());
    }

    #[test]
    fn pow_with_parameter_exponent() {
        // (1 + xi E13)^(zeta - 1/2) has first-order coefficient (zeta-1/2) E13.
        let ctx = EvalCtx::new(XI, 3);
        let e = parse_expr("(^ (+ 1 (* xi E13)) (+ zeta -1/2))").unwrap();
        let u = ctx.eval_u(&e).unwrap();
        let c = Poly::param(ZETA).sub(&Poly::rat(Rat::new(1, 2)));
        let expected = UElement::gen(crate::lie::GeneratorId::E13).scale_poly(&c);
        assert_eq!(u.coeff(1), expected);
    }

    #[test]
    fn xdiv_cancels_positive_orders() {
        let ctx = EvalCtx::new(XI, 4);
        let e = parse_expr("(xdiv 1 (* xi xi (T E12 E13)))").unwrap();
        let t = ctx.eval_tensor(&e).unwrap();
        assert!(t.coeff(0).is_zero());
        assert!(!t.coeff(1).is_zero());
        // dividing by more than the available power fails
        let bad = parse_expr("(xdiv 2 (* xi (T E12 E13)))").unwrap();
        assert!(ctx.eval(&bad).is_err());
    }

    #[test]
    fn parse_table() {
        let src = "# changelog: none\ntwist demo\ncop H12 : H12 = (+ (T H12 1) (T 1 H12))\n";
        let table = PaperCoproductTable::parse(src).unwrap();
        let entries = table.for_twist("demo").unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].name, "H12");
    }

    #[test]
    fn atom_substitution() {
        // E12 -> -E23 swap used by the carrier automorphism checks.
        let ctx = EvalCtx::new(XI, 2).with_atom("E12", parse_expr("(* -1 E23)").unwrap());
        let e = parse_expr("(T E12 E12)").unwrap();
        let t = ctx.eval_tensor(&e).unwrap();
        let e23 = UElement::gen(crate::lie::GeneratorId::E23);
        let expected = Tensor2::from_legs(&e23, &e23);
        assert_eq!(t.coeff(0), expected);
    }
}
