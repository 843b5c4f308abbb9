//! Realizations of matroids and their configuration algebra: the
//! configuration polynomial ψ_W, the configuration form Q_W, the submaximal
//! minor ideal M_W and Jacobian ideal J_W, realization-level minors
//! (restriction, deletion, contraction, duality), elementary quotients, and
//! the identity checks the structure theory predicts (deletion–contraction,
//! Dodgson, handle and 2-separation factorizations, …).
//!
//! A realization is a full-row-rank matrix whose columns are labelled by the
//! ground set; the labels double as the polynomial variables.  ψ_W is only
//! well defined up to a nonzero square (row operations rescale every basis
//! determinant by the same determinant), so the comparison helpers assert
//! proportionality with a square ratio wherever the theory predicts exactly
//! that, and exact equality where it predicts equality.

use itertools::Itertools;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::groebner::{GbOptions, Ideal};
use crate::linalg::Matrix;
use crate::matroid::{mask_elements, MatroidView, MAX_GROUND};
use crate::poly::{Mono, MultiPoly, VarSet};

#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    field: FieldSpec,
    vars: VarSet,
    matrix: Matrix,
}

impl Realization {
    /// Wraps a full-row-rank matrix with column labels.
    pub fn new(matrix: Matrix, labels: Vec<String>) -> Result<Self> {
        let n = matrix.ncols();
        if labels.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {n} columns",
                labels.len()
            )));
        }
        if n > MAX_GROUND {
            return Err(Error::TooLarge(n, MAX_GROUND));
        }
        let vars = VarSet::new(labels)?;
        if matrix.rank() != matrix.nrows() {
            return Err(Error::DependentRows);
        }
        Ok(Realization { field: matrix.field(), vars, matrix })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]], labels: &[&str]) -> Result<Self> {
        Realization::new(
            Matrix::from_i64(field, rows)?,
            labels.iter().map(|s| s.to_string()).collect(),
        )
    }

    /// Same, with default labels x1..xn.
    pub fn from_i64_x(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let labels = VarSet::numbered("x", n);
        Realization::new(Matrix::from_i64(field, rows)?, labels.labels().to_vec())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn size(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn full_mask(&self) -> u32 {
        if self.size() == 0 {
            0
        } else {
            (1u32 << self.size()) - 1
        }
    }

    pub fn matroid(&self) -> MatroidView {
        MatroidView::from_matrix(&self.matrix).expect("size validated at construction")
    }

    /// ψ_W = Σ_B det(A_B)²·x^B over column bases B.
    pub fn config_poly(&self) -> Result<MultiPoly> {
        let r = self.rank();
        let n = self.size();
        if r == 0 {
            return Ok(MultiPoly::one(self.field, &self.vars));
        }
        let mut terms: Vec<(Mono, Scalar)> = Vec::new();
        for cols in (0..n).combinations(r) {
            let d = self.matrix.col_submatrix(&cols).det()?;
            if d.is_zero() {
                continue;
            }
            let mut mono = vec![0u32; n];
            for &c in &cols {
                mono[c] = 1;
            }
            terms.push((mono, &d * &d));
        }
        MultiPoly::from_terms(self.field, &self.vars, terms)
    }

    /// The configuration form Q_W = A·diag(x)·Aᵀ as an r×r matrix of linear
    /// forms.
    pub fn q_form(&self) -> Vec<Vec<MultiPoly>> {
        let r = self.rank();
        let n = self.size();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let terms: Vec<(Mono, Scalar)> = (0..n)
                            .filter_map(|e| {
                                let c = self.matrix.get(i, e) * self.matrix.get(j, e);
                                if c.is_zero() {
                                    return None;
                                }
                                let mut mono = vec![0u32; n];
                                mono[e] = 1;
                                Some((mono, c))
                            })
                            .collect();
                        MultiPoly::from_terms(self.field, &self.vars, terms)
                            .expect("well-formed linear form")
                    })
                    .collect()
            })
            .collect()
    }

    /// det Q_W; by Cauchy–Binet this equals ψ_W exactly.
    pub fn det_form(&self) -> Result<MultiPoly> {
        poly_det(self.field, &self.vars, &self.q_form())
    }

    /// The ideal of submaximal ((r−1)×(r−1)) minors of Q_W.  For rank ≤ 1
    /// this is the unit ideal (empty minors have determinant 1).
    pub fn minors_ideal(&self) -> Result<Ideal> {
        let r = self.rank();
        if r <= 1 {
            return Ideal::new(self.field, &self.vars, vec![MultiPoly::one(self.field, &self.vars)]);
        }
        let q = self.q_form();
        let mut gens: Vec<MultiPoly> = Vec::new();
        for i in 0..r {
            for j in i..r {
                let minor = poly_det(self.field, &self.vars, &strike_row_col(&q, i, j))?;
                if !minor.is_zero() && !gens.contains(&minor) {
                    gens.push(minor);
                }
            }
        }
        Ideal::new(self.field, &self.vars, gens)
    }

    /// J_W = ⟨ψ_W, ∂ψ_W/∂x_e : e ∈ E⟩.
    pub fn jacobian_ideal(&self) -> Result<Ideal> {
        let psi = self.config_poly()?;
        let mut gens = vec![psi.clone()];
        for e in 0..self.size() {
            gens.push(psi.partial_derivative(e));
        }
        Ideal::new(self.field, &self.vars, gens)
    }

    /// Restriction W|S: the columns of S, row-reduced to a full-row-rank
    /// realization on the labels of S.
    pub fn restrict(&self, mask: u32) -> Result<Realization> {
        self.check_mask(mask)?;
        if mask == 0 {
            return Err(Error::BadParameter("restriction to the empty set".into()));
        }
        let cols = mask_elements(mask);
        let reduced = self.matrix.col_submatrix(&cols).row_basis();
        let reduced = if reduced.nrows() == 0 {
            Matrix::zero(self.field, 0, cols.len())
        } else {
            reduced
        };
        let labels = cols.iter().map(|&c| self.vars.labels()[c].clone()).collect();
        Realization::new(reduced, labels)
    }

    /// Deletion W∖S = W|(E∖S).
    pub fn delete(&self, mask: u32) -> Result<Realization> {
        self.check_mask(mask)?;
        if mask == self.full_mask() {
            return Err(Error::BadParameter("cannot delete the whole ground set".into()));
        }
        self.restrict(self.full_mask() & !mask)
    }

    /// Contraction W/S on the labels of E∖S, realized in one step through
    /// the left kernel of the S-columns.
    pub fn contract(&self, mask: u32) -> Result<Realization> {
        self.check_mask(mask)?;
        if mask == 0 {
            return Ok(self.clone());
        }
        if mask == self.full_mask() {
            return Err(Error::BadParameter("cannot contract the whole ground set".into()));
        }
        let cols = mask_elements(mask);
        let kernel = self.matrix.col_submatrix(&cols).transpose().kernel_basis();
        let keep = mask_elements(self.full_mask() & !mask);
        let reduced = kernel.mul(&self.matrix)?.col_submatrix(&keep);
        let labels = keep.iter().map(|&c| self.vars.labels()[c].clone()).collect();
        Realization::new(reduced, labels)
    }

    /// The dual realization: rows spanning `{v : A·v = 0}`, same labels.
    pub fn dual(&self) -> Result<Realization> {
        Realization::new(self.matrix.kernel_basis(), self.vars.labels().to_vec())
    }

    pub fn relabeled(&self, labels: Vec<String>) -> Result<Realization> {
        Realization::new(self.matrix.clone(), labels)
    }

    pub fn direct_sum(&self, other: &Realization) -> Result<Realization> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let (r1, n1) = (self.rank(), self.size());
        let (r2, n2) = (other.rank(), other.size());
        let mut rows = Vec::with_capacity(r1 + r2);
        for i in 0..r1 {
            let mut row = self.matrix.row(i).to_vec();
            row.extend(std::iter::repeat_with(|| self.field.zero()).take(n2));
            rows.push(row);
        }
        for i in 0..r2 {
            let mut row: Vec<Scalar> = std::iter::repeat_with(|| self.field.zero()).take(n1).collect();
            row.extend_from_slice(other.matrix.row(i));
            rows.push(row);
        }
        let labels = self
            .vars
            .labels()
            .iter()
            .chain(other.vars.labels())
            .cloned()
            .collect();
        Realization::new(Matrix::from_rows(self.field, rows)?, labels)
    }

    /// Elementary quotient W_φ along a covector given by its coefficients in
    /// the row basis: the realization of `{u·A : u·φ = 0}`.
    pub fn elementary_quotient(&self, phi: &[Scalar]) -> Result<Realization> {
        let phi_row = self.covector_row(phi)?;
        let reduced = phi_row.kernel_basis().mul(&self.matrix)?;
        Realization::new(reduced, self.vars.labels().to_vec())
    }

    /// Σ_S det([A_S | φ])²·x^S over (r−1)-subsets S — the closed formula for
    /// a configuration polynomial of W_φ.
    pub fn quotient_poly_formula(&self, phi: &[Scalar]) -> Result<MultiPoly> {
        let phi_col = self.covector_row(phi)?.transpose();
        let r = self.rank();
        let n = self.size();
        let mut terms: Vec<(Mono, Scalar)> = Vec::new();
        for cols in (0..n).combinations(r - 1) {
            let d = self.matrix.col_submatrix(&cols).hconcat(&phi_col)?.det()?;
            if d.is_zero() {
                continue;
            }
            let mut mono = vec![0u32; n];
            for &c in &cols {
                mono[c] = 1;
            }
            terms.push((mono, &d * &d));
        }
        MultiPoly::from_terms(self.field, &self.vars, terms)
    }

    /// The one-element extension Ŵ = [A | φ]: deleting the new element gives
    /// back W on the nose, contracting it gives W_φ.
    pub fn extend_quotient(&self, phi: &[Scalar], new_label: &str) -> Result<Realization> {
        let phi_col = self.covector_row(phi)?.transpose();
        let mut labels: Vec<String> = self.vars.labels().to_vec();
        labels.push(new_label.to_string());
        Realization::new(self.matrix.hconcat(&phi_col)?, labels)
    }

    /// For a rank-2 realization, the n×n scalar matrix (c_{W,{i,j}})_{i,j}
    /// with zero diagonal: the Hessian of ψ_W (in characteristic ≠ 2, up to
    /// the factor structure of mixed partials).
    pub fn hessian_scalar_matrix(&self) -> Result<Matrix> {
        if self.rank() != 2 {
            return Err(Error::BadParameter("Hessian matrix needs a rank-2 realization".into()));
        }
        let n = self.size();
        let mut h = Matrix::zero(self.field, n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.matrix.col_submatrix(&[i, j]).det()?;
                let sq = &d * &d;
                *h.get_mut(i, j) = sq.clone();
                *h.get_mut(j, i) = sq;
            }
        }
        Ok(h)
    }

    fn covector_row(&self, phi: &[Scalar]) -> Result<Matrix> {
        if phi.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "covector has {} coefficients for rank {}",
                phi.len(),
                self.rank()
            )));
        }
        if phi.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroCovector);
        }
        Matrix::from_rows(self.field, vec![phi.to_vec()])
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::BadParameter("mask outside the ground set".into()));
        }
        Ok(())
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion,
/// memoized on column subsets.
pub fn poly_det(field: FieldSpec, vars: &VarSet, m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    let r = m.len();
    if m.iter().any(|row| row.len() != r) {
        return Err(Error::NotSquareMatrix);
    }
    let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
    memo.insert(0, MultiPoly::one(field, vars));
    let mut masks: Vec<u32> = (1u32..(1 << r)).collect();
    masks.sort_unstable_by_key(|m| m.count_ones());
    for mask in masks {
        let k = mask.count_ones() as usize;
        let row = r - k;
        let mut acc = MultiPoly::zero(field, vars);
        for (idx, c) in mask_elements(mask).into_iter().enumerate() {
            let sub = memo[&(mask & !(1 << c))].clone();
            let term = m[row][c].mul(&sub)?;
            acc = if idx % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        memo.insert(mask, acc);
    }
    Ok(memo.remove(&(if r == 0 { 0 } else { (1 << r) - 1 })).expect("full minor computed"))
}

/// The Cremona involution x^S ↦ x^{E∖S} on multilinear polynomials.
pub fn cremona_map(p: &MultiPoly) -> Result<MultiPoly> {
    if !p.is_multilinear() {
        return Err(Error::NotMultilinear);
    }
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| (m.iter().map(|&e| 1 - e).collect(), c.clone()))
        .collect();
    MultiPoly::from_terms(p.field(), p.vars(), terms)
}

fn strike_row_col(q: &[Vec<MultiPoly>], i: usize, j: usize) -> Vec<Vec<MultiPoly>> {
    q.iter()
        .enumerate()
        .filter(|(row, _)| *row != i)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(col, _)| *col != j)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

fn strike_two(q: &[Vec<MultiPoly>], i: usize, j: usize) -> Vec<Vec<MultiPoly>> {
    q.iter()
        .enumerate()
        .filter(|(row, _)| *row != i && *row != j)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(col, _)| *col != i && *col != j)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

fn mono_of_mask(n: usize, mask: u32) -> Mono {
    (0..n).map(|i| (mask >> i & 1) as u32).collect()
}

fn coefficient_of(p: &MultiPoly, mono: &Mono) -> Scalar {
    p.terms()
        .iter()
        .find(|(m, _)| m == mono)
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| p.field().zero())
}

fn identity_err(what: &str) -> Error {
    Error::IdentityFailed(what.to_string())
}

/// ψ_W == det Q_W, exactly (Cauchy–Binet).
pub fn cauchy_binet_check(w: &Realization) -> Result<()> {
    if w.config_poly()? == w.det_form()? {
        Ok(())
    } else {
        Err(identity_err("basis expansion of ψ differs from det Q"))
    }
}

/// Deletion–contraction: ψ_W = λ₁·ψ_{W∖e} + λ₂·x_e·ψ_{W/e} with nonzero
/// square multipliers in the generic case; loops and coloops degenerate to
/// a single term.  Returns (λ₁, λ₂).
pub fn deletion_contraction_check(w: &Realization, e: usize) -> Result<(Scalar, Scalar)> {
    let n = w.size();
    if e >= n {
        return Err(Error::BadParameter("element out of range".into()));
    }
    if n < 2 {
        return Err(Error::BadParameter("need at least two elements".into()));
    }
    let mask = 1u32 << e;
    let psi = w.config_poly()?;
    let zero = w.field().zero();
    let is_loop = (0..w.rank()).all(|i| w.matrix().get(i, e).is_zero());
    let keep = mask_elements(w.full_mask() & !mask);
    let is_coloop = !is_loop && w.matrix().col_submatrix(&keep).rank() == w.rank() - 1;

    let psi_del = w.delete(mask)?.config_poly()?.embed(&w.vars)?;
    if is_loop {
        if !psi.partial_derivative(e).is_zero() {
            return Err(identity_err("ψ involves a loop variable"));
        }
        let l1 = psi
            .proportionality(&psi_del)
            .ok_or_else(|| identity_err("ψ not proportional to ψ_{W∖e} at a loop"))?;
        return Ok((l1, zero));
    }
    let psi_con = w.contract(mask)?.config_poly()?.embed(&w.vars)?;
    if is_coloop {
        if !psi.substitute_zero(e).is_zero() {
            return Err(identity_err("ψ survives x_e = 0 at a coloop"));
        }
        let l2 = psi
            .partial_derivative(e)
            .proportionality(&psi_con)
            .ok_or_else(|| identity_err("∂_e ψ not proportional to ψ_{W/e} at a coloop"))?;
        if psi != psi_con.scale(&l2).mul_monomial(&mono_of_mask(n, mask), &w.field().one()) {
            return Err(identity_err("coloop reconstruction of ψ"));
        }
        if psi_del.proportionality(&psi_con).is_none() {
            return Err(identity_err("W∖e and W/e differ at a coloop"));
        }
        return Ok((zero, l2));
    }
    let l1 = psi
        .substitute_zero(e)
        .proportionality(&psi_del)
        .ok_or_else(|| identity_err("ψ|_{x_e=0} not proportional to ψ_{W∖e}"))?;
    let l2 = psi
        .partial_derivative(e)
        .proportionality(&psi_con)
        .ok_or_else(|| identity_err("∂_e ψ not proportional to ψ_{W/e}"))?;
    for (name, l) in [("λ1", &l1), ("λ2", &l2)] {
        if l.is_zero() || !l.is_square() {
            return Err(identity_err(&format!("{name} is not a nonzero square")));
        }
    }
    let rebuilt = psi_del
        .scale(&l1)
        .add(&psi_con.scale(&l2).mul_monomial(&mono_of_mask(n, mask), &w.field().one()))?;
    if psi != rebuilt {
        return Err(identity_err("deletion–contraction reconstruction of ψ"));
    }
    Ok((l1, l2))
}

/// Dodgson-style identities for Q_W pivoted to a column identity on the
/// lexicographically least basis B: for i < j,
/// (det Q^{i,j})² = ∂_{b_i}ψ·∂_{b_j}ψ − ψ·det Q^{{i,j},{i,j}},
/// together with ∂_{b_i}ψ = det Q^{i,i}.
pub fn dodgson_check(w: &Realization) -> Result<()> {
    let r = w.rank();
    if r < 2 {
        return Err(Error::BadParameter("Dodgson identities need rank at least 2".into()));
    }
    let basis = (0..w.size())
        .combinations(r)
        .find(|cols| w.matrix().col_submatrix(cols).rank() == r)
        .ok_or(Error::DependentRows)?;
    let pivot = w.matrix().col_submatrix(&basis).inverse()?.mul(w.matrix())?;
    let pivoted = Realization::new(pivot, w.vars().labels().to_vec())?;
    let q = pivoted.q_form();
    let psi = poly_det(w.field(), w.vars(), &q)?;
    let diag: Vec<MultiPoly> = (0..r)
        .map(|i| poly_det(w.field(), w.vars(), &strike_row_col(&q, i, i)))
        .collect::<Result<_>>()?;
    for (i, d) in diag.iter().enumerate() {
        if psi.partial_derivative(basis[i]) != *d {
            return Err(identity_err("∂_{b_i}ψ differs from the principal minor"));
        }
    }
    for i in 0..r {
        for j in (i + 1)..r {
            let off = poly_det(w.field(), w.vars(), &strike_row_col(&q, i, j))?;
            let lhs = off.mul(&off)?;
            let small = poly_det(w.field(), w.vars(), &strike_two(&q, i, j))?;
            let rhs = diag[i].mul(&diag[j])?.sub(&psi.mul(&small)?)?;
            if lhs != rhs {
                return Err(identity_err("Dodgson identity"));
            }
        }
    }
    Ok(())
}

/// ψ_{W⊥} is the Cremona transform of ψ_W up to a nonzero square; returns
/// the ratio.
pub fn duality_square_check(w: &Realization) -> Result<Scalar> {
    let dual_psi = w.dual()?.config_poly()?;
    let crem = cremona_map(&w.config_poly()?)?;
    let ratio = dual_psi
        .proportionality(&crem)
        .ok_or_else(|| identity_err("ψ of the dual is not proportional to the Cremona image"))?;
    if ratio.is_zero() || !ratio.is_square() {
        return Err(identity_err("duality ratio is not a nonzero square"));
    }
    Ok(ratio)
}

/// The handle factorization: for a proper handle H,
/// ψ_W = λ₁·ψ_{W/(E∖H)}·ψ_{W∖H} + λ₂·x^H·ψ_{W/H} with λ's nonzero squares;
/// moreover W/(E∖H) is the circuit configuration Σ_{h∈H} x^{H∖h} up to a
/// scalar and ψ_{W|H} is a multiple of x^H.  Returns (λ₁, λ₂).
pub fn handle_formula_check(w: &Realization, h_mask: u32) -> Result<(Scalar, Scalar)> {
    let m = w.matroid();
    if !m.is_handle(h_mask) {
        return Err(Error::NotAHandle);
    }
    if h_mask == w.full_mask() {
        return Err(Error::BadParameter("handle must be proper".into()));
    }
    let n = w.size();
    let comp = w.full_mask() & !h_mask;
    let psi = w.config_poly()?;
    let circ = w.contract(comp)?;
    let t1 = circ
        .config_poly()?
        .embed(&w.vars)?
        .mul(&w.delete(h_mask)?.config_poly()?.embed(&w.vars)?)?;
    let t2 = w
        .contract(h_mask)?
        .config_poly()?
        .embed(&w.vars)?
        .mul_monomial(&mono_of_mask(n, h_mask), &w.field().one());
    let lambdas = psi
        .span_membership(&[t1, t2])?
        .ok_or_else(|| identity_err("ψ is not in the span of the handle pieces"))?;
    let (l1, l2) = (lambdas[0].clone(), lambdas[1].clone());
    for (name, l) in [("λ1", &l1), ("λ2", &l2)] {
        if l.is_zero() || !l.is_square() {
            return Err(identity_err(&format!("handle multiplier {name} is not a nonzero square")));
        }
    }
    // W/(E∖H) is the circuit on H.
    let h_size = h_mask.count_ones() as usize;
    let circ_vars = circ.vars();
    let circuit_terms: Vec<(Mono, Scalar)> = (0..h_size)
        .map(|k| {
            let mut mono = vec![1u32; h_size];
            mono[k] = 0;
            (mono, w.field().one())
        })
        .collect();
    let circuit_psi = MultiPoly::from_terms(w.field(), circ_vars, circuit_terms)?;
    match circ.config_poly()?.proportionality(&circuit_psi) {
        Some(c) if !c.is_zero() => {}
        _ => return Err(identity_err("W/(E∖H) is not the circuit configuration")),
    }
    // ψ of the restriction to an (independent) handle is a single monomial.
    let restr_psi = w.restrict(h_mask)?.config_poly()?;
    let single = MultiPoly::monomial(w.field(), restr_psi.vars(), vec![1u32; h_size], w.field().one())?;
    if restr_psi.proportionality(&single).is_none() {
        return Err(identity_err("ψ_{W|H} is not a multiple of x^H"));
    }
    Ok((l1, l2))
}

/// The 2-separation factorization: for an exact 2-separation (E₁, E₂),
/// ψ_W = λ₁·ψ_{W/E₁}·ψ_{W|E₁} + λ₂·ψ_{W|E₂}·ψ_{W/E₂} with λ's nonzero.
/// Returns (λ₁, λ₂).
pub fn two_separation_check(w: &Realization, s_mask: u32) -> Result<(Scalar, Scalar)> {
    let m = w.matroid();
    let comp = w.full_mask() & !s_mask;
    if m.lambda(s_mask) != 1 || s_mask.count_ones() < 2 || comp.count_ones() < 2 {
        return Err(Error::NotA2Separation);
    }
    let psi = w.config_poly()?;
    let t1 = w
        .contract(s_mask)?
        .config_poly()?
        .embed(&w.vars)?
        .mul(&w.restrict(s_mask)?.config_poly()?.embed(&w.vars)?)?;
    let t2 = w
        .restrict(comp)?
        .config_poly()?
        .embed(&w.vars)?
        .mul(&w.contract(comp)?.config_poly()?.embed(&w.vars)?)?;
    let lambdas = psi
        .span_membership(&[t1, t2])?
        .ok_or_else(|| identity_err("ψ is not in the span of the separation pieces"))?;
    if lambdas.iter().any(Scalar::is_zero) {
        return Err(identity_err("2-separation multiplier vanishes"));
    }
    Ok((lambdas[0].clone(), lambdas[1].clone()))
}

/// Basis-coefficient factorization: over the bases B with B∩F spanning F,
/// the ratio c_{W,B} / (c_{W/F,B∖F}·c_{W|F,B∩F}) is a single nonzero
/// square; returns it.
pub fn lemma2_coefficient_check(w: &Realization, f_mask: u32) -> Result<Scalar> {
    if f_mask == 0 || f_mask == w.full_mask() {
        return Err(Error::BadParameter("F must be a proper nonempty subset".into()));
    }
    let m = w.matroid();
    let rk_f = m.rank_of(f_mask);
    let psi = w.config_poly()?;
    let restr = w.restrict(f_mask)?;
    let contr = w.contract(f_mask)?;
    let psi_restr = restr.config_poly()?;
    let psi_contr = contr.config_poly()?;
    let f_elems = mask_elements(f_mask);
    let keep_elems = mask_elements(w.full_mask() & !f_mask);
    let mut ratio: Option<Scalar> = None;
    for &b in m.bases() {
        if (b & f_mask).count_ones() as usize != rk_f {
            continue;
        }
        let c_w = coefficient_of(&psi, &mono_of_mask(w.size(), b));
        let restr_mono: Mono = f_elems.iter().map(|&e| (b >> e & 1) as u32).collect();
        let contr_mono: Mono = keep_elems.iter().map(|&e| (b >> e & 1) as u32).collect();
        let c_restr = coefficient_of(&psi_restr, &restr_mono);
        let c_contr = coefficient_of(&psi_contr, &contr_mono);
        let denom = &c_restr * &c_contr;
        if denom.is_zero() {
            return Err(identity_err("minor coefficient vanishes on an eligible basis"));
        }
        let r = c_w.div(&denom)?;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev == r => {}
            Some(_) => return Err(identity_err("basis-coefficient ratio is not constant")),
        }
    }
    let ratio = ratio.ok_or_else(|| identity_err("no eligible basis"))?;
    if ratio.is_zero() || !ratio.is_square() {
        return Err(identity_err("basis-coefficient ratio is not a nonzero square"));
    }
    Ok(ratio)
}

/// Restriction to the hyperplane x_e = 0 for a non-coloop e:
/// J_{W∖e} + ⟨x_e⟩ ⊆ J_W + ⟨x_e⟩, and the minor ideals agree there.
pub fn lemma31_restriction_check(w: &Realization, e: usize, opts: &GbOptions) -> Result<()> {
    if e >= w.size() {
        return Err(Error::BadParameter("element out of range".into()));
    }
    let mask = 1u32 << e;
    let keep = mask_elements(w.full_mask() & !mask);
    if w.matrix().col_submatrix(&keep).rank() < w.rank() {
        return Err(Error::BadParameter("element must not be a coloop".into()));
    }
    let x_e = MultiPoly::var(w.field(), &w.vars, e);
    let del = w.delete(mask)?;
    let with_xe = |gens: &[MultiPoly]| -> Result<Ideal> {
        let mut g: Vec<MultiPoly> = gens.to_vec();
        g.push(x_e.clone());
        Ideal::new(w.field(), &w.vars, g)
    };
    let embed_all = |ideal: &Ideal| -> Result<Vec<MultiPoly>> {
        ideal.generators().iter().map(|g| g.embed(&w.vars)).collect()
    };
    let j_del = with_xe(&embed_all(&del.jacobian_ideal()?)?)?;
    let j_w = with_xe(w.jacobian_ideal()?.generators())?;
    if !j_del.subset_of(&j_w, opts)? {
        return Err(identity_err("J_{W∖e} + ⟨x_e⟩ ⊄ J_W + ⟨x_e⟩"));
    }
    let m_del = with_xe(&embed_all(&del.minors_ideal()?)?)?;
    let m_w = with_xe(w.minors_ideal()?.generators())?;
    if !m_del.ideal_equal(&m_w, opts)? {
        return Err(identity_err("M_{W∖e} + ⟨x_e⟩ ≠ M_W + ⟨x_e⟩"));
    }
    Ok(())
}

/// ψ of a direct sum is the product of the summands' ψ, exactly; returns
/// the sum realization.
pub fn direct_sum_psi_check(w1: &Realization, w2: &Realization) -> Result<Realization> {
    let sum = w1.direct_sum(w2)?;
    let lhs = sum.config_poly()?;
    let rhs = w1
        .config_poly()?
        .embed(sum.vars())?
        .mul(&w2.config_poly()?.embed(sum.vars())?)?;
    if lhs != rhs {
        return Err(identity_err("ψ of a direct sum is not the product"));
    }
    Ok(sum)
}

/// The two direct-sum presentations of the Jacobian ideal:
/// J_{W₁⊕W₂} = ψ₁·J₂ + J₁·ψ₂ = ⟨ψ₁, ψ₂⟩ ∩ J₁ ∩ J₂ (all extended).
pub fn direct_sum_jacobian_check(
    w1: &Realization,
    w2: &Realization,
    opts: &GbOptions,
) -> Result<()> {
    let sum = w1.direct_sum(w2)?;
    let vars = sum.vars();
    let field = sum.field();
    let psi1 = w1.config_poly()?.embed(vars)?;
    let psi2 = w2.config_poly()?.embed(vars)?;
    let j1: Vec<MultiPoly> = w1
        .jacobian_ideal()?
        .generators()
        .iter()
        .map(|g| g.embed(vars))
        .collect::<Result<_>>()?;
    let j2: Vec<MultiPoly> = w2
        .jacobian_ideal()?
        .generators()
        .iter()
        .map(|g| g.embed(vars))
        .collect::<Result<_>>()?;
    let j_sum = sum.jacobian_ideal()?;
    let mut mixed: Vec<MultiPoly> = Vec::new();
    for g in &j2 {
        mixed.push(psi1.mul(g)?);
    }
    for g in &j1 {
        mixed.push(g.mul(&psi2)?);
    }
    let mixed = Ideal::new(field, vars, mixed)?;
    if !j_sum.ideal_equal(&mixed, opts)? {
        return Err(identity_err("J_⊕ ≠ ψ₁·J₂ + J₁·ψ₂"));
    }
    let psi_pair = Ideal::new(field, vars, vec![psi1, psi2])?;
    let meet = psi_pair
        .intersect(&Ideal::new(field, vars, j1)?, opts)?
        .intersect(&Ideal::new(field, vars, j2)?, opts)?;
    if !j_sum.ideal_equal(&meet, opts)? {
        return Err(identity_err("J_⊕ ≠ ⟨ψ₁,ψ₂⟩ ∩ J₁ ∩ J₂"));
    }
    Ok(())
}

/// Validates the scalar Hessian of a rank-2 realization against the actual
/// second partials of ψ and returns (H, rank H).  The rank is at most 3 and
/// exactly 3 for generic configurations.
pub fn hessian_data(w: &Realization) -> Result<(Matrix, usize)> {
    let h = w.hessian_scalar_matrix()?;
    let psi = w.config_poly()?;
    let n = w.size();
    for i in 0..n {
        for j in 0..n {
            let second = psi.partial_derivative(i).partial_derivative(j);
            let expected = if i == j {
                w.field().zero()
            } else {
                h.get(i, j).clone()
            };
            if !second.sub(&MultiPoly::constant(w.field(), w.vars(), expected))?.is_zero() {
                return Err(identity_err("Hessian entry differs from ∂_i∂_j ψ"));
            }
        }
    }
    let rank = h.rank();
    Ok((h, rank))
}

/// In characteristic ≠ 2, J_W of a rank-2 realization is generated by the
/// rows of the scalar Hessian (as linear forms).
pub fn hessian_jacobian_check(w: &Realization, opts: &GbOptions) -> Result<()> {
    if w.field().characteristic() == 2 {
        return Err(Error::BadParameter("characteristic 2 is excluded".into()));
    }
    let (h, _) = hessian_data(w)?;
    let n = w.size();
    let mut rows: Vec<MultiPoly> = Vec::new();
    for i in 0..n {
        let terms: Vec<(Mono, Scalar)> = (0..n)
            .filter_map(|j| {
                let c = h.get(i, j).clone();
                if c.is_zero() {
                    return None;
                }
                let mut mono = vec![0u32; n];
                mono[j] = 1;
                Some((mono, c))
            })
            .collect();
        rows.push(MultiPoly::from_terms(w.field(), w.vars(), terms)?);
    }
    let row_ideal = Ideal::new(w.field(), w.vars(), rows)?;
    if !w.jacobian_ideal()?.ideal_equal(&row_ideal, opts)? {
        return Err(identity_err("J_W differs from the Hessian row ideal"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn triangle(field: FieldSpec) -> Realization {
        Realization::from_i64(field, &[&[1, 0, 1], &[0, 1, 1]], &["x1", "x2", "x3"]).unwrap()
    }

    fn prism() -> Realization {
        Realization::from_i64_x(
            FieldSpec::Q,
            &[
                &[1, 1, 0, 0, 0, 0],
                &[0, 0, 1, 1, 0, 0],
                &[0, 0, 0, 0, 1, 1],
                &[1, 0, 1, 0, 1, 0],
            ],
        )
        .unwrap()
    }

    fn square_u24() -> Realization {
        Realization::from_i64_x(FieldSpec::Q, &[&[1, 0, 1, 1], &[0, 1, 1, -1]]).unwrap()
    }

    fn six_point() -> Realization {
        Realization::from_i64(
            FieldSpec::Fp(3),
            &[
                &[1, 0, 0, 0, 1, 1],
                &[0, 1, 0, 0, 1, 1],
                &[0, 0, 1, 0, 1, 2],
                &[0, 0, 0, 1, 1, 2],
            ],
            &["1", "2", "3", "4", "5", "6"],
        )
        .unwrap()
    }

    fn parse_q(vars: &VarSet, s: &str) -> MultiPoly {
        MultiPoly::parse(FieldSpec::Q, vars, s).unwrap()
    }

    #[test]
    fn triangle_polynomial_and_ideals() {
        let w = triangle(FieldSpec::Q);
        let psi = w.config_poly().unwrap();
        assert_eq!(psi, parse_q(w.vars(), "x1*x2 + x1*x3 + x2*x3"));
        let opts = GbOptions::default();
        let coords = Ideal::new(
            FieldSpec::Q,
            w.vars(),
            ["x1", "x2", "x3"].iter().map(|s| parse_q(w.vars(), s)).collect(),
        )
        .unwrap();
        assert!(w.minors_ideal().unwrap().ideal_equal(&coords, &opts).unwrap());
        assert!(w.jacobian_ideal().unwrap().ideal_equal(&coords, &opts).unwrap());
    }

    #[test]
    fn triangle_char_two_jacobian() {
        let w = triangle(FieldSpec::Fp(2));
        let opts = GbOptions::default();
        let j = w.jacobian_ideal().unwrap();
        let parse = |s: &str| MultiPoly::parse(FieldSpec::Fp(2), w.vars(), s).unwrap();
        let expected = Ideal::new(
            FieldSpec::Fp(2),
            w.vars(),
            vec![parse("x1 + x3"), parse("x2 + x3"), parse("x3^2")],
        )
        .unwrap();
        assert!(j.ideal_equal(&expected, &opts).unwrap());
        let x3 = parse("x3");
        assert!(!j.contains(&x3, &opts).unwrap());
        assert!(j.radical_member(&x3, &opts).unwrap());
    }

    #[test]
    fn prism_polynomial_is_frozen() {
        let w = prism();
        let psi = w.config_poly().unwrap();
        let expected = parse_q(
            w.vars(),
            "x1*x2*(x3 + x4)*(x5 + x6) + x3*x4*(x1 + x2)*(x5 + x6) + x5*x6*(x1 + x2)*(x3 + x4)",
        );
        assert_eq!(psi, expected);
        assert_eq!(psi.terms().len(), 12);
        assert!(psi.terms().iter().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn quadrilateral_polynomial() {
        let w = square_u24();
        assert_eq!(
            w.config_poly().unwrap(),
            parse_q(w.vars(), "x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + 4*x3*x4")
        );
    }

    #[test]
    fn cauchy_binet_on_catalog_instances() {
        for w in [triangle(FieldSpec::Q), prism(), square_u24()] {
            cauchy_binet_check(&w).unwrap();
        }
        cauchy_binet_check(&six_point()).unwrap();
        cauchy_binet_check(&triangle(FieldSpec::Fp(2))).unwrap();
    }

    #[test]
    fn minors_line_up_with_the_matroid() {
        let w = prism();
        let m = w.matroid();
        for mask in [0b000001u32, 0b000011, 0b010101] {
            assert_eq!(w.delete(mask).unwrap().matroid(), m.delete(mask).unwrap().0);
            assert_eq!(w.contract(mask).unwrap().matroid(), m.contract(mask).unwrap().0);
        }
        assert_eq!(w.dual().unwrap().matroid(), m.dual());
        // Contracting a spanning set leaves the rank-0 realization with ψ = 1.
        let spanning = w.contract(0b011111).unwrap();
        assert_eq!(spanning.rank(), 0);
        assert!(spanning.config_poly().unwrap().is_one());
    }

    #[test]
    fn deletion_contraction_everywhere() {
        for w in [prism(), square_u24(), triangle(FieldSpec::Q), six_point()] {
            for e in 0..w.size() {
                let (l1, l2) = deletion_contraction_check(&w, e).unwrap();
                assert!(!l1.is_zero() && !l2.is_zero());
            }
        }
    }

    #[test]
    fn deletion_contraction_degenerate_elements() {
        // e = 2 is a loop.
        let with_loop =
            Realization::from_i64_x(FieldSpec::Q, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let (l1, l2) = deletion_contraction_check(&with_loop, 2).unwrap();
        assert!(!l1.is_zero());
        assert!(l2.is_zero());
        // Both elements of U_{2,2} are coloops.
        let coloops = Realization::from_i64_x(FieldSpec::Q, &[&[1, 0], &[0, 1]]).unwrap();
        let (l1, l2) = deletion_contraction_check(&coloops, 0).unwrap();
        assert!(l1.is_zero());
        assert!(!l2.is_zero());
    }

    #[test]
    fn dodgson_identities() {
        for w in [triangle(FieldSpec::Q), square_u24(), prism(), six_point()] {
            dodgson_check(&w).unwrap();
        }
    }

    #[test]
    fn duality_and_cremona() {
        for w in [triangle(FieldSpec::Q), prism(), square_u24(), six_point()] {
            duality_square_check(&w).unwrap();
        }
        // Cremona is an involution on multilinear polynomials.
        let psi = prism().config_poly().unwrap();
        assert_eq!(cremona_map(&cremona_map(&psi).unwrap()).unwrap(), psi);
        let not_ml = parse_q(prism().vars(), "x1^2");
        assert!(matches!(cremona_map(&not_ml), Err(Error::NotMultilinear)));
    }

    #[test]
    fn handle_and_two_separation_formulas() {
        let w = prism();
        for h in [0b000011u32, 0b001100, 0b110000] {
            let (l1, l2) = handle_formula_check(&w, h).unwrap();
            assert!(l1.is_square() && l2.is_square());
        }
        assert!(matches!(handle_formula_check(&w, 0b000111), Err(Error::NotAHandle)));
        let (l1, l2) = two_separation_check(&w, 0b001111).unwrap();
        assert!(!l1.is_zero() && !l2.is_zero());
        assert!(matches!(two_separation_check(&w, 0b000001), Err(Error::NotA2Separation)));
    }

    #[test]
    fn quotient_constructions_agree() {
        let w = triangle(FieldSpec::Q);
        let phi = vec![FieldSpec::Q.from_i64(1), FieldSpec::Q.from_i64(1)];
        let quot = w.elementary_quotient(&phi).unwrap();
        assert_eq!(quot.rank(), 1);
        let formula = w.quotient_poly_formula(&phi).unwrap();
        let ratio = quot.config_poly().unwrap().proportionality(&formula).unwrap();
        assert!(!ratio.is_zero() && ratio.is_square());
        let ext = w.extend_quotient(&phi, "x4").unwrap();
        assert_eq!(ext.size(), 4);
        // Deleting the new element is exactly W; contracting it is exactly W_φ.
        assert_eq!(ext.matrix().col_submatrix(&[0, 1, 2]), *w.matrix());
        assert_eq!(*ext.contract(0b1000).unwrap().matrix(), *quot.matrix());
        assert!(matches!(
            w.elementary_quotient(&[FieldSpec::Q.zero(), FieldSpec::Q.zero()]),
            Err(Error::ZeroCovector)
        ));
    }

    #[test]
    fn coefficient_factorization() {
        let w = prism();
        for f in [0b000011u32, 0b001111, 0b000001] {
            let ratio = lemma2_coefficient_check(&w, f).unwrap();
            assert!(ratio.is_square());
        }
    }

    #[test]
    fn hyperplane_restriction_of_ideals() {
        let opts = GbOptions::default();
        lemma31_restriction_check(&triangle(FieldSpec::Q), 0, &opts).unwrap();
        lemma31_restriction_check(&square_u24(), 3, &opts).unwrap();
    }

    #[test]
    fn direct_sums() {
        let t1 = triangle(FieldSpec::Q);
        let t2 = t1
            .relabeled(vec!["y1".into(), "y2".into(), "y3".into()])
            .unwrap();
        let sum = direct_sum_psi_check(&t1, &t2).unwrap();
        assert_eq!(sum.rank(), 4);
        assert_eq!(sum.size(), 6);
        direct_sum_jacobian_check(&t1, &t2, &GbOptions::default()).unwrap();
        // Label collisions are rejected.
        assert!(t1.direct_sum(&t1).is_err());
    }

    #[test]
    fn hessian_of_rank_two() {
        let w = square_u24();
        let (h, rank) = hessian_data(&w).unwrap();
        assert_eq!(rank, 3);
        assert_eq!(h.get(2, 3), &FieldSpec::Q.from_i64(4));
        hessian_jacobian_check(&w, &GbOptions::default()).unwrap();
        let t = triangle(FieldSpec::Q);
        let (_, rank) = hessian_data(&t).unwrap();
        assert_eq!(rank, 3);
        assert!(hessian_data(&prism()).is_err());
    }

    #[test]
    fn minors_ideal_unit_for_small_rank() {
        let banana = Realization::from_i64_x(FieldSpec::Q, &[&[1, 1, 1]]).unwrap();
        let opts = GbOptions::default();
        assert!(banana.minors_ideal().unwrap().is_unit(&opts).unwrap());
        // ψ of U_{1,3} is the rank-one configuration x1+x2+x3.
        assert_eq!(
            banana.config_poly().unwrap(),
            parse_q(banana.vars(), "x1 + x2 + x3")
        );
        let basis = banana
            .jacobian_ideal()
            .unwrap()
            .groebner_basis(&MonomialOrder::DegRevLex, &opts)
            .unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_one());
    }
}
