//! The Lie algebra `sl3`: Chevalley basis, structure constants, root data,
//! orthogonal Cartan elements, carrier subalgebras, quasi-Frobenius form
//! checks and the second-cohomology dimensions of the 4-dimensional carriers.

use crate::coeff::Poly;
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// The eight basis generators, in the fixed PBW order
/// `E31 < E21 < E32 < H12 < H23 < E12 < E23 < E13`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GeneratorId {
    E31 = 0,
    E21 = 1,
    E32 = 2,
    H12 = 3,
    H23 = 4,
    E12 = 5,
    E23 = 6,
    E13 = 7,
}

pub const GENERATORS: [GeneratorId; 8] = [
    GeneratorId::E31,
    GeneratorId::E21,
    GeneratorId::E32,
    GeneratorId::H12,
    GeneratorId::H23,
    GeneratorId::E12,
    GeneratorId::E23,
    GeneratorId::E13,
];

impl GeneratorId {
    pub fn index(&self) -> usize {
        *self as usize
    }

    pub fn from_index(i: usize) -> GeneratorId {
        GENERATORS[i]
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorId::E31 => "E31",
            GeneratorId::E21 => "E21",
            GeneratorId::E32 => "E32",
            GeneratorId::H12 => "H12",
            GeneratorId::H23 => "H23",
            GeneratorId::E12 => "E12",
            GeneratorId::E23 => "E23",
            GeneratorId::E13 => "E13",
        }
    }

    pub fn by_name(name: &str) -> Option<GeneratorId> {
        GENERATORS.iter().copied().find(|g| g.name() == name)
    }

    /// 3x3 matrix of the generator in the defining representation,
    /// as (row, col, value) triples. `H12 = E11 - E22`, `H23 = E22 - E33`.
    pub fn rep3(&self) -> Vec<(usize, usize, Rat)> {
        let one = Rat::one();
        match self {
            GeneratorId::E31 => vec![(2, 0, one)],
            GeneratorId::E21 => vec![(1, 0, one)],
            GeneratorId::E32 => vec![(2, 1, one)],
            GeneratorId::H12 => vec![(0, 0, one), (1, 1, -one)],
            GeneratorId::H23 => vec![(1, 1, one), (2, 2, -one)],
            GeneratorId::E12 => vec![(0, 1, one)],
            GeneratorId::E23 => vec![(1, 2, one)],
            GeneratorId::E13 => vec![(0, 2, one)],
        }
    }
}

/// Element of `sl3` with polynomial coefficients in the formal parameters.
#[derive(Clone, PartialEq, Default)]
pub struct LieElement {
    terms: BTreeMap<GeneratorId, Poly>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn gen(g: GeneratorId) -> Self {
        Self::term(g, Poly::one())
    }

    pub fn term(g: GeneratorId, c: Poly) -> Self {
        let mut e = LieElement::zero();
        e.add_term(g, c);
        e
    }

    pub fn add_term(&mut self, g: GeneratorId, c: Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g).or_insert_with(Poly::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn coeff(&self, g: GeneratorId) -> Poly {
        self.terms.get(&g).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms.iter() {
            out.add_term(*g, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = LieElement::zero();
        for (g, c) in self.terms.iter() {
            out.terms.insert(*g, c.neg());
        }
        out
    }

    pub fn scale(&self, r: Rat) -> Self {
        self.scale_poly(&Poly::rat(r))
    }

    pub fn scale_poly(&self, p: &Poly) -> Self {
        let mut out = LieElement::zero();
        for (g, c) in self.terms.iter() {
            out.add_term(*g, c.mul(p));
        }
        out
    }

    pub fn subst(&self, p: crate::coeff::ParamId, value: &Poly) -> Self {
        let mut out = LieElement::zero();
        for (g, c) in self.terms.iter() {
            out.add_term(*g, c.subst(p, value));
        }
        out
    }

    /// Diagonal (Cartan) element from `diag(d1, d2, d3)` with `d1+d2+d3 = 0`:
    /// the decomposition is `d1 * H12 - d3 * H23`.
    pub fn diag(d1: Rat, d2: Rat, d3: Rat) -> Self {
        assert!((d1 + d2 + d3).is_zero(), "diagonal must be traceless");
        let mut e = LieElement::zero();
        e.add_term(GeneratorId::H12, Poly::rat(d1));
        e.add_term(GeneratorId::H23, Poly::rat(-d3));
        e
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}", c, g.name())?;
        }
        Ok(())
    }
}

/// Structure constants computed from the defining representation:
/// `[x, y] = xy - yx` on 3x3 matrices, decomposed back into the basis.
pub fn bracket_gens(x: GeneratorId, y: GeneratorId) -> LieElement {
    let mut m = [[Rat::zero(); 3]; 3];
    for (i, j, v) in x.rep3() {
        for (k, l, w) in y.rep3() {
            if j == k {
                m[i][l] += v * w;
            }
            if l == i {
                m[k][j] -= w * v;
            }
        }
    }
    decompose_matrix(&m)
}

fn decompose_matrix(m: &[[Rat; 3]; 3]) -> LieElement {
    let mut e = LieElement::zero();
    let offdiag = [
        (2usize, 0usize, GeneratorId::E31),
        (1, 0, GeneratorId::E21),
        (2, 1, GeneratorId::E32),
        (0, 1, GeneratorId::E12),
        (1, 2, GeneratorId::E23),
        (0, 2, GeneratorId::E13),
    ];
    for (i, j, g) in offdiag {
        if !m[i][j].is_zero() {
            e.add_term(g, Poly::rat(m[i][j]));
        }
    }
    let trace = m[0][0] + m[1][1] + m[2][2];
    assert!(trace.is_zero(), "bracket left the traceless subspace");
    e.add_term(GeneratorId::H12, Poly::rat(m[0][0]));
    e.add_term(GeneratorId::H23, Poly::rat(-m[2][2]));
    e
}

/// Bilinear bracket of two general elements.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (gx, cx) in x.iter() {
        for (gy, cy) in y.iter() {
            let b = bracket_gens(*gx, *gy);
            out = out.add(&b.scale_poly(&cx.mul(cy)));
        }
    }
    out
}

/// Killing form: trace form of the defining representation scaled by 6.
pub fn killing(x: &LieElement, y: &LieElement) -> Poly {
    let mut acc = Poly::zero();
    for (gx, cx) in x.iter() {
        for (gy, cy) in y.iter() {
            let mut tr = Rat::zero();
            for (i, j, v) in gx.rep3() {
                for (k, l, w) in gy.rep3() {
                    if j == k && l == i {
                        tr += v * w;
                    }
                }
            }
            if !tr.is_zero() {
                acc = acc.add(&cx.mul(cy).scale(tr * Rat::int(6)));
            }
        }
    }
    acc
}

/// Trace-zero diagonal element whose dual is orthogonal to the root
/// `e_i - e_j`. The `(2,3)` representative is oriented so that it acts with
/// eigenvalue `+1` on `E13`; the others follow the `1/3,1/3,-2/3` pattern.
pub fn h_perp(i: usize, j: usize) -> LieElement {
    let third = Rat::new(1, 3);
    let two_thirds = Rat::new(2, 3);
    match (i, j) {
        (1, 2) => LieElement::diag(third, third, -two_thirds),
        (1, 3) => LieElement::diag(third, -two_thirds, third),
        (2, 3) => LieElement::diag(two_thirds, -third, -third),
        _ => panic!("h_perp expects a positive root pair"),
    }
}

/// `H13 = H12 + H23`.
pub fn h13() -> LieElement {
    LieElement::gen(GeneratorId::H12).add(&LieElement::gen(GeneratorId::H23))
}

// ---------------------------------------------------------------------------
// Linear algebra over polynomial fractions (small systems only).
// ---------------------------------------------------------------------------

/// Unreduced polynomial fraction. Only rational content is normalized; this
/// is enough for the 4x4 and 6x6 systems that arise here.
#[derive(Clone, PartialEq)]
pub struct PolyFrac {
    pub num: Poly,
    pub den: Poly,
}

impl PolyFrac {
    pub fn from_poly(p: Poly) -> Self {
        PolyFrac {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.den = Poly::one();
            return self;
        }
        if let Some(c) = self.den.as_const() {
            self.num = self.num.scale(c.recip());
            self.den = Poly::one();
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyFrac {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
        .normalize()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PolyFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        PolyFrac {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .normalize()
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero fraction");
        PolyFrac {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        }
        .normalize()
    }
}

impl fmt::Debug for PolyFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_const().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Rank of a matrix with `PolyFrac` entries by fraction Gaussian elimination.
pub fn frac_rank(rows: &mut Vec<Vec<PolyFrac>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        let pv = rows[rank][col].clone();
        for r in (rank + 1)..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].div(&pv);
            for c in col..ncols {
                let delta = factor.mul(&rows[rank][c]);
                rows[r][c] = rows[r][c].sub(&delta);
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Solve `M x = b` with `M` square and invertible over the fraction field.
pub fn frac_solve(m: &[Vec<PolyFrac>], b: &[PolyFrac]) -> Option<Vec<PolyFrac>> {
    let n = m.len();
    let mut aug: Vec<Vec<PolyFrac>> = (0..n)
        .map(|r| {
            let mut row = m[r].clone();
            row.push(b[r].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let pv = aug[col][col].clone();
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].div(&pv);
            for c in col..=n {
                let delta = factor.mul(&aug[col][c]);
                aug[r][c] = aug[r][c].sub(&delta);
            }
        }
    }
    Some(
        (0..n)
            .map(|r| aug[r][n].div(&aug[r][r]))
            .collect::<Vec<_>>(),
    )
}

fn lie_to_column(x: &LieElement) -> Vec<PolyFrac> {
    GENERATORS
        .iter()
        .map(|g| PolyFrac::from_poly(x.coeff(*g)))
        .collect()
}

/// Express `x` in the given basis if possible.
pub fn coords_in_basis(basis: &[LieElement], x: &LieElement) -> Option<Vec<PolyFrac>> {
    // Least-squares-free approach: pick a maximal independent row subset.
    let cols: Vec<Vec<PolyFrac>> = basis.iter().map(lie_to_column).collect();
    let target = lie_to_column(x);
    let n = basis.len();
    // Find n row indices giving an invertible square system.
    let mut chosen: Vec<usize> = Vec::new();
    let mut test: Vec<Vec<PolyFrac>> = Vec::new();
    for row in 0..8 {
        if chosen.len() == n {
            break;
        }
        let mut cand = test.clone();
        cand.push((0..n).map(|c| cols[c][row].clone()).collect());
        let mut probe = cand.clone();
        if frac_rank(&mut probe) == cand.len() {
            test = cand;
            chosen.push(row);
        }
    }
    if chosen.len() < n {
        return None;
    }
    let b: Vec<PolyFrac> = chosen.iter().map(|&r| target[r].clone()).collect();
    let sol = frac_solve(&test, &b)?;
    // Verify on all rows; the unchosen ones may be inconsistent.
    for row in 0..8 {
        let mut acc = PolyFrac::zero();
        for c in 0..n {
            acc = acc.add(&sol[c].mul(&cols[c][row]));
        }
        if !acc.sub(&target[row]).is_zero() {
            return None;
        }
    }
    Some(sol)
}

// ---------------------------------------------------------------------------
// Carriers
// ---------------------------------------------------------------------------

/// A carrier subalgebra, given by an explicit basis inside `sl3`.
#[derive(Clone)]
pub struct Carrier {
    pub basis: Vec<LieElement>,
    pub names: Vec<String>,
}

impl Carrier {
    pub fn new(named: Vec<(&str, LieElement)>) -> Self {
        Carrier {
            names: named.iter().map(|(n, _)| String::from(*n)).collect(),
            basis: named.into_iter().map(|(_, e)| e).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub closed: bool,
    /// `(i, j, coords)` with `[b_i, b_j] = sum_k coords[k] b_k`; `None` when
    /// the bracket leaves the span.
    pub table: Vec<(usize, usize, Option<Vec<PolyFrac>>)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LieError {
    DependentBasis,
    SingularR,
    NotNilpotent,
    NoDeclaredR,
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::DependentBasis => write!(f, "basis elements are linearly dependent"),
            LieError::SingularR => write!(f, "r-matrix is degenerate on the carrier"),
            LieError::NotNilpotent => write!(f, "adjoint action is not nilpotent"),
            LieError::NoDeclaredR => write!(f, "family has no declared r-matrix"),
        }
    }
}

/// Check that a carrier basis is independent and closed under the bracket,
/// returning the structure table in the given basis.
pub fn carrier_closure_check(c: &Carrier) -> Result<ClosureReport, LieError> {
    let mut rows: Vec<Vec<PolyFrac>> = c.basis.iter().map(lie_to_column).collect();
    if frac_rank(&mut rows) < c.dim() {
        return Err(LieError::DependentBasis);
    }
    let mut table = Vec::new();
    let mut closed = true;
    for i in 0..c.dim() {
        for j in (i + 1)..c.dim() {
            let b = bracket(&c.basis[i], &c.basis[j]);
            let coords = if b.is_zero() {
                Some(vec![PolyFrac::zero(); c.dim()])
            } else {
                coords_in_basis(&c.basis, &b)
            };
            if coords.is_none() {
                closed = false;
            }
            table.push((i, j, coords));
        }
    }
    Ok(ClosureReport { closed, table })
}

// ---------------------------------------------------------------------------
// Classical r-matrices
// ---------------------------------------------------------------------------

/// Antisymmetric 2-tensor stored as a sum of weighted wedges `c * x ∧ y`
/// with `x ∧ y = x⊗y - y⊗x`.
#[derive(Clone, Default)]
pub struct RMatrixClassical {
    pub wedges: Vec<(Poly, LieElement, LieElement)>,
}

impl RMatrixClassical {
    pub fn new(wedges: Vec<(Poly, LieElement, LieElement)>) -> Self {
        RMatrixClassical { wedges }
    }

    pub fn wedge(x: LieElement, y: LieElement) -> Self {
        RMatrixClassical {
            wedges: vec![(Poly::one(), x, y)],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut w = self.wedges.clone();
        w.extend(other.wedges.iter().cloned());
        RMatrixClassical { wedges: w }
    }

    pub fn scale(&self, r: Rat) -> Self {
        RMatrixClassical {
            wedges: self
                .wedges
                .iter()
                .map(|(c, x, y)| (c.scale(r), x.clone(), y.clone()))
                .collect(),
        }
    }

    /// Expand to a generator-indexed antisymmetric tensor:
    /// map `(g1, g2) -> coefficient` of `g1 ⊗ g2`.
    pub fn expand(&self) -> BTreeMap<(GeneratorId, GeneratorId), Poly> {
        let mut out: BTreeMap<(GeneratorId, GeneratorId), Poly> = BTreeMap::new();
        let mut put = |g1: GeneratorId, g2: GeneratorId, c: Poly| {
            if c.is_zero() {
                return;
            }
            let e = out.entry((g1, g2)).or_insert_with(Poly::zero);
            *e = e.add(&c);
        };
        for (c, x, y) in self.wedges.iter() {
            for (gx, cx) in x.iter() {
                for (gy, cy) in y.iter() {
                    let w = c.mul(&cx.mul(cy));
                    put(*gx, *gy, w.clone());
                    put(*gy, *gx, w.neg());
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.expand().is_empty()
    }

    pub fn equals(&self, other: &Self) -> bool {
        let a = self.expand();
        let b = other.expand();
        if a.len() != b.len() {
            return false;
        }
        a.iter()
            .all(|(k, v)| b.get(k).map(|w| w == v).unwrap_or(false))
    }

    pub fn neg(&self) -> Self {
        self.scale(-Rat::one())
    }
}

impl fmt::Debug for RMatrixClassical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.wedges.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, x, y) in self.wedges.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) ({:?})∧({:?})", c, x, y)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct FrobeniusReport {
    pub nondegenerate: bool,
    pub cocycle_zero: bool,
}

/// Build the matrix of `r` in the carrier basis, invert it to the 2-form
/// `omega`, and check nondegeneracy plus the 2-cocycle identity on all basis
/// triples. The wedge legs of `r` must lie in the carrier span.
pub fn frobenius_form_check(
    r: &RMatrixClassical,
    c: &Carrier,
) -> Result<FrobeniusReport, LieError> {
    let n = c.dim();
    // r = sum w (x⊗y - y⊗x) with both legs expressed in carrier coordinates.
    let mut rmat = vec![vec![PolyFrac::zero(); n]; n];
    for (w, x, y) in r.wedges.iter() {
        let cx = coords_in_basis(&c.basis, x).ok_or(LieError::SingularR)?;
        let cy = coords_in_basis(&c.basis, y).ok_or(LieError::SingularR)?;
        let wf = PolyFrac::from_poly(w.clone());
        for i in 0..n {
            for j in 0..n {
                let fwd = wf.mul(&cx[i]).mul(&cy[j]);
                let bwd = wf.mul(&cy[i]).mul(&cx[j]);
                rmat[i][j] = rmat[i][j].add(&fwd).sub(&bwd);
            }
        }
    }
    frobenius_from_matrix(rmat, c)
}

fn frobenius_from_matrix(
    rmat: Vec<Vec<PolyFrac>>,
    c: &Carrier,
) -> Result<FrobeniusReport, LieError> {
    let n = c.dim();
    let mut probe = rmat.clone();
    if frac_rank(&mut probe) < n {
        return Ok(FrobeniusReport {
            nondegenerate: false,
            cocycle_zero: false,
        });
    }
    // omega = rmat^{-1}: solve column by column.
    let mut omega = vec![vec![PolyFrac::zero(); n]; n];
    for col in 0..n {
        let mut b = vec![PolyFrac::zero(); n];
        b[col] = PolyFrac::from_poly(Poly::one());
        let x = frac_solve(&rmat, &b).ok_or(LieError::SingularR)?;
        for row in 0..n {
            omega[row][col] = x[row].clone();
        }
    }
    // Structure constants in the carrier basis.
    let mut struc: Vec<Vec<Vec<PolyFrac>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                struc[i][j] = vec![PolyFrac::zero(); n];
                continue;
            }
            let b = bracket(&c.basis[i], &c.basis[j]);
            let coords = if b.is_zero() {
                vec![PolyFrac::zero(); n]
            } else {
                coords_in_basis(&c.basis, &b).ok_or(LieError::DependentBasis)?
            };
            struc[i][j] = coords;
        }
    }
    // omega(b_i, [b_j, b_k]) + omega(b_j, [b_k, b_i]) + omega(b_k, [b_i, b_j]) = 0
    let mut cocycle_zero = true;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut acc = PolyFrac::zero();
                for m in 0..n {
                    acc = acc.add(&struc[j][k][m].mul(&omega[i][m]));
                    acc = acc.add(&struc[k][i][m].mul(&omega[j][m]));
                    acc = acc.add(&struc[i][j][m].mul(&omega[k][m]));
                }
                if !acc.is_zero() {
                    cocycle_zero = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(FrobeniusReport {
        nondegenerate: true,
        cocycle_zero,
    })
}

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg cohomology of the 4-dimensional carriers
// ---------------------------------------------------------------------------

/// Second-cohomology data `(dim Z^2, dim B^2, dim H^2)` of the Lie algebra
/// with relations `[H,A] = alpha A`, `[H,B] = beta B`, `[H,E] = E`,
/// `[A,B] = E` (requires `alpha + beta = 1`).
pub fn cohomology_dims(alpha: Rat, beta: Rat) -> (usize, usize, usize) {
    assert!(
        (alpha + beta - Rat::one()).is_zero(),
        "carrier relations require alpha + beta = 1"
    );
    // Basis order: x0=H, x1=A, x2=B, x3=E.
    // Nonzero brackets as coordinate vectors.
    let mut brackets = BTreeMap::new();
    brackets.insert((0usize, 1usize), (1usize, alpha)); // [H,A] = alpha A
    brackets.insert((0, 2), (2, beta)); // [H,B] = beta B
    brackets.insert((0, 3), (3, Rat::one())); // [H,E] = E
    brackets.insert((1, 2), (3, Rat::one())); // [A,B] = E
    let br = |i: usize, j: usize| -> Option<(usize, Rat)> {
        if i == j {
            return None;
        }
        if i < j {
            brackets.get(&(i, j)).copied()
        } else {
            brackets.get(&(j, i)).map(|(k, c)| (*k, -*c))
        }
    };

    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
        .collect();
    let triples: Vec<(usize, usize, usize)> = (0..4)
        .flat_map(|i| {
            ((i + 1)..4).flat_map(move |j| ((j + 1)..4).map(move |k| (i, j, k)))
        })
        .collect();

    let pair_index = |i: usize, j: usize| -> (usize, Rat) {
        if i < j {
            (
                pairs.iter().position(|&p| p == (i, j)).unwrap(),
                Rat::one(),
            )
        } else {
            (
                pairs.iter().position(|&p| p == (j, i)).unwrap(),
                -Rat::one(),
            )
        }
    };

    // d1: L* -> Λ²L*, (d phi)(x,y) = -phi([x,y]).
    let mut d1 = vec![vec![Rat::zero(); 4]; pairs.len()];
    for (row, &(i, j)) in pairs.iter().enumerate() {
        if let Some((k, c)) = br(i, j) {
            d1[row][k] = -c;
        }
    }
    // d2: Λ²L* -> Λ³L*,
    // (d w)(x,y,z) = -[ w([x,y],z) - w([x,z],y) + w([y,z],x) ].
    let mut d2 = vec![vec![Rat::zero(); pairs.len()]; triples.len()];
    for (row, &(i, j, k)) in triples.iter().enumerate() {
        let mut add = |a: Option<(usize, Rat)>, other: usize, sign: Rat| {
            if let Some((m, c)) = a {
                if m != other {
                    let (idx, orient) = pair_index(m, other);
                    d2[row][idx] += sign * c * orient;
                }
            }
        };
        add(br(i, j), k, -Rat::one());
        add(br(i, k), j, Rat::one());
        add(br(j, k), i, -Rat::one());
    }

    let rank = |m: &Vec<Vec<Rat>>| -> usize {
        let mut rows: Vec<Vec<PolyFrac>> = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| PolyFrac::from_poly(Poly::rat(*c)))
                    .collect()
            })
            .collect();
        frac_rank(&mut rows)
    };

    let rank_d2 = rank(&d2);
    let rank_d1 = rank(&d1);
    let dim_z2 = pairs.len() - rank_d2;
    let dim_b2 = rank_d1;
    (dim_z2, dim_b2, dim_z2 - dim_b2)
}

/// Adjoint action `exp(ad_x)` applied to `y`; `x` must be ad-nilpotent.
pub fn ad_exp(x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
    let mut acc = y.clone();
    let mut term = y.clone();
    for k in 1..=16 {
        term = bracket(x, &term).scale(Rat::int(k as i128).recip());
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&term);
    }
    Err(LieError::NotNilpotent)
}

/// `Ad(exp x) ⊗ Ad(exp x)` applied wedge-wise to a classical r-matrix.
pub fn gauge_transform_r(
    r: &RMatrixClassical,
    x: &LieElement,
) -> Result<RMatrixClassical, LieError> {
    let mut wedges = Vec::new();
    for (c, a, b) in r.wedges.iter() {
        wedges.push((c.clone(), ad_exp(x, a)?, ad_exp(x, b)?));
    }
    Ok(RMatrixClassical { wedges })
}

#[cfg(test)]
mod tests {
    use super::GeneratorId::*;
    use super::*;
    use crate::coeff::{params, Poly};

    #[test]
    fn bracket_examples() {
        // [H12, E12] = 2 E12
        assert_eq!(
            bracket_gens(H12, E12),
            LieElement::term(E12, Poly::int(2))
        );
        // [E12, E23] = E13
        assert_eq!(bracket_gens(E12, E23), LieElement::gen(E13));
        // [E12 + mu E23, E13] = 0
        let x = LieElement::gen(E12).add(&LieElement::term(E23, Poly::param(params::MU)));
        assert!(bracket(&x, &LieElement::gen(E13)).is_zero());
    }

    #[test]
    fn jacobi_all_triples() {
        for x in GENERATORS {
            for y in GENERATORS {
                for z in GENERATORS {
                    let a = bracket(&LieElement::gen(x), &bracket_gens(y, z));
                    let b = bracket(&LieElement::gen(y), &bracket_gens(z, x));
                    let c = bracket(&LieElement::gen(z), &bracket_gens(x, y));
                    assert!(a.add(&b).add(&c).is_zero(), "jacobi fails at {:?} {:?} {:?}", x, y, z);
                }
            }
        }
    }

    #[test]
    fn killing_symmetric_and_invariant() {
        for x in GENERATORS {
            for y in GENERATORS {
                let xe = LieElement::gen(x);
                let ye = LieElement::gen(y);
                assert!(killing(&xe, &ye).sub(&killing(&ye, &xe)).is_zero());
                for z in GENERATORS {
                    let ze = LieElement::gen(z);
                    // K([x,z], y) + K(x, [y,z])  ... ad-invariance:
                    // K([z,x], y) = K(z, [x,y]) variant
                    let lhs = killing(&bracket(&ze, &xe), &ye);
                    let rhs = killing(&ze, &bracket(&xe, &ye));
                    assert!(lhs.sub(&rhs).is_zero());
                }
            }
        }
    }

    #[test]
    fn h_perp_examples() {
        // (1,3) -> diag(1/3, -2/3, 1/3)
        let h = h_perp(1, 3);
        assert_eq!(h.coeff(H12), Poly::rat(Rat::new(1, 3)));
        assert_eq!(h.coeff(H23), Poly::rat(Rat::new(-1, 3)));
        // (1,2) -> 1/3(E11+E22) - 2/3 E33
        let h = h_perp(1, 2);
        assert_eq!(h.coeff(H12), Poly::rat(Rat::new(1, 3)));
        assert_eq!(h.coeff(H23), Poly::rat(Rat::new(2, 3)));
        // orthogonality against the matching Cartan and commutation with the root vector
        assert!(killing(&h13(), &h_perp(1, 3)).is_zero());
        assert!(bracket(&h_perp(1, 3), &LieElement::gen(E13)).is_zero());
        assert!(bracket(&h_perp(1, 2), &LieElement::gen(E12)).is_zero());
        assert!(bracket(&h_perp(2, 3), &LieElement::gen(E23)).is_zero());
        let h12_gen = LieElement::gen(H12);
        assert!(killing(&h12_gen, &h_perp(1, 2)).is_zero());
        let h23_gen = LieElement::gen(H23);
        assert!(killing(&h23_gen, &h_perp(2, 3)).is_zero());
    }

    #[test]
    fn closure_check_examples() {
        // {H13, E12+E23}: closed with [H, E] = E
        let c = Carrier::new(vec![
            ("H", h13()),
            ("E", LieElement::gen(E12).add(&LieElement::gen(E23))),
        ]);
        let rep = carrier_closure_check(&c).unwrap();
        assert!(rep.closed);
        let (_, _, coords) = &rep.table[0];
        let coords = coords.as_ref().unwrap();
        assert!(coords[0].is_zero());
        assert!(coords[1].sub(&PolyFrac::from_poly(Poly::one())).is_zero());

        // {E12, E21} is not closed (misses H12)
        let c = Carrier::new(vec![("A", LieElement::gen(E12)), ("B", LieElement::gen(E21))]);
        assert!(!carrier_closure_check(&c).unwrap().closed);

        // Deformed 4-dim carrier {H_P, E12, E13, B = E23 - xi*H13perp}:
        // [E12, B] = E13 + xi*E12.
        let xi = Poly::param(params::XI);
        let b = LieElement::gen(E23).sub(&h_perp(1, 3).scale_poly(&xi));
        let c = Carrier::new(vec![
            ("HP", h_perp(2, 3)),
            ("E12", LieElement::gen(E12)),
            ("E13", LieElement::gen(E13)),
            ("B", b.clone()),
        ]);
        let rep = carrier_closure_check(&c).unwrap();
        assert!(rep.closed);
        let br = bracket(&LieElement::gen(E12), &b);
        let expected = LieElement::gen(E13).add(&LieElement::term(E12, xi));
        assert_eq!(br, expected);
    }

    #[test]
    fn dependent_basis_detected() {
        let c = Carrier::new(vec![
            ("X", LieElement::gen(E12)),
            ("Y", LieElement::gen(E12).scale(Rat::int(2))),
        ]);
        assert_eq!(carrier_closure_check(&c).unwrap_err(), LieError::DependentBasis);
    }

    #[test]
    fn cohomology_table() {
        assert_eq!(cohomology_dims(Rat::new(1, 2), Rat::new(1, 2)), (3, 3, 0));
        assert_eq!(cohomology_dims(Rat::int(0), Rat::int(1)), (3, 2, 1));
        assert_eq!(cohomology_dims(Rat::int(1), Rat::int(0)), (3, 2, 1));
        assert_eq!(cohomology_dims(Rat::int(-1), Rat::int(2)), (4, 3, 1));
        assert_eq!(cohomology_dims(Rat::int(2), Rat::int(-1)), (4, 3, 1));
    }

    fn l_alpha_beta_carrier(zeta: Poly) -> Carrier {
        // H = 1/2 H13 + zeta * H13perp, A = E12, B = E23, E = E13.
        let h = h13().scale(Rat::new(1, 2)).add(&h_perp(1, 3).scale_poly(&zeta));
        Carrier::new(vec![
            ("H", h),
            ("A", LieElement::gen(E12)),
            ("B", LieElement::gen(E23)),
            ("E", LieElement::gen(E13)),
        ])
    }

    #[test]
    fn frobenius_extended_jordanian() {
        // r = H∧E + A∧B with generic zeta: nondegenerate cocycle.
        let zeta = Poly::param(params::ZETA);
        let c = l_alpha_beta_carrier(zeta.clone());
        let h = c.basis[0].clone();
        let r = RMatrixClassical::wedge(h, LieElement::gen(E13)).add(
            &RMatrixClassical::wedge(LieElement::gen(E12), LieElement::gen(E23)),
        );
        let rep = frobenius_form_check(&r, &c).unwrap();
        assert!(rep.nondegenerate);
        assert!(rep.cocycle_zero);
    }

    #[test]
    fn frobenius_degenerate_control() {
        // r = H∧E alone on the 4-dim carrier: rank 2 < 4.
        let c = l_alpha_beta_carrier(Poly::param(params::ZETA));
        let h = c.basis[0].clone();
        let r = RMatrixClassical::wedge(h, LieElement::gen(E13));
        let rep = frobenius_form_check(&r, &c).unwrap();
        assert!(!rep.nondegenerate);
    }

    #[test]
    fn frobenius_parabolic() {
        // r = HP23∧E13 + E12∧E23 + eta*HP13∧E32 on the 6-dim parabolic.
        let eta = Poly::param(params::ETA);
        let c = Carrier::new(vec![
            ("HP13", h_perp(1, 3)),
            ("HP23", h_perp(2, 3)),
            ("E12", LieElement::gen(E12)),
            ("E13", LieElement::gen(E13)),
            ("E23", LieElement::gen(E23)),
            ("E32", LieElement::gen(E32)),
        ]);
        let r = RMatrixClassical::wedge(h_perp(2, 3), LieElement::gen(E13))
            .add(&RMatrixClassical::wedge(
                LieElement::gen(E12),
                LieElement::gen(E23),
            ))
            .add(&RMatrixClassical::new(vec![(
                eta,
                h_perp(1, 3),
                LieElement::gen(E32),
            )]));
        let rep = frobenius_form_check(&r, &c).unwrap();
        assert!(rep.nondegenerate);
        assert!(rep.cocycle_zero);
        // eta = 0 control: degenerate on the 6-dim carrier.
        let r0 = RMatrixClassical::wedge(h_perp(2, 3), LieElement::gen(E13)).add(
            &RMatrixClassical::wedge(LieElement::gen(E12), LieElement::gen(E23)),
        );
        assert!(!frobenius_form_check(&r0, &c).unwrap().nondegenerate);
    }

    #[test]
    fn ad_exp_nilpotent() {
        // exp(ad of a E12) on E21: finite series.
        let a = LieElement::term(E12, Poly::param(params::A));
        let out = ad_exp(&a, &LieElement::gen(E21)).unwrap();
        // [aE12, E21] = a H12; [aE12, aH12] = -2a^2 E12; then zero.
        let a1 = Poly::param(params::A);
        let expected = LieElement::gen(E21)
            .add(&LieElement::term(H12, a1.clone()))
            .sub(&LieElement::term(E12, a1.mul(&a1)));
        assert_eq!(out, expected);
        // Cartan directions are not ad-nilpotent.
        assert!(ad_exp(&LieElement::gen(H12), &LieElement::gen(E12)).is_err());
    }
}
