//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept in a canonical form — sorted strictly descending in
//! degrevlex with no zero coefficients — so structural equality coincides
//! with mathematical equality and printing is deterministic.  Order-sensitive
//! algorithms (division, S-polynomials) take the active [`MonomialOrder`]
//! explicitly and do their own term bookkeeping in the Gröbner engine.

mod order;
mod parse;

pub use order::MonomialOrder;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

/// Exponent vector; index `i` is the exponent of the `i`-th variable.
pub type Mono = Vec<u32>;

/// An ordered set of variable labels shared by the polynomials over it.
#[derive(Clone, Debug)]
pub struct VarSet {
    labels: Arc<Vec<String>>,
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for VarSet {}

impl VarSet {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::BadParameter("empty variable label".into()));
            }
            if labels[..i].contains(l) {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        Ok(VarSet { labels: Arc::new(labels) })
    }

    /// `x1, …, xn` style set.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        VarSet::new((1..=n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>())
            .expect("numbered labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Appends fresh labels, failing on collision.
    pub fn extend<S: Into<String>>(&self, extra: Vec<S>) -> Result<Self> {
        let mut labels = (*self.labels).clone();
        for l in extra {
            let l = l.into();
            if labels.contains(&l) {
                return Err(Error::LabelCollision(l));
            }
            labels.push(l);
        }
        Ok(VarSet { labels: Arc::new(labels) })
    }

    /// A label guaranteed not to collide with any existing one (`#` cannot
    /// appear in user labels accepted by the parser).
    pub fn fresh_label(&self, hint: &str) -> String {
        let mut name = format!("#{hint}");
        let mut k = 0;
        while self.labels.contains(&name) {
            k += 1;
            name = format!("#{hint}{k}");
        }
        name
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    field: FieldSpec,
    vars: VarSet,
    /// Canonical: strictly descending degrevlex, no zero coefficients.
    terms: Vec<(Mono, Scalar)>,
}

pub(crate) fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn mono_div(a: &[u32], b: &[u32]) -> Option<Mono> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y))
        .collect::<Option<Mono>>()
}

pub(crate) fn mono_lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn mono_degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, vars: &VarSet) -> Self {
        MultiPoly { field, vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(field: FieldSpec, vars: &VarSet) -> Self {
        MultiPoly::constant(field, vars, field.one())
    }

    pub fn constant(field: FieldSpec, vars: &VarSet, c: Scalar) -> Self {
        assert_eq!(c.field(), field, "constant from wrong field");
        if c.is_zero() {
            return MultiPoly::zero(field, vars);
        }
        MultiPoly { field, vars: vars.clone(), terms: vec![(vec![0; vars.len()], c)] }
    }

    pub fn var(field: FieldSpec, vars: &VarSet, idx: usize) -> Self {
        let mut m = vec![0; vars.len()];
        m[idx] = 1;
        MultiPoly { field, vars: vars.clone(), terms: vec![(m, field.one())] }
    }

    pub fn monomial(field: FieldSpec, vars: &VarSet, expts: Mono, c: Scalar) -> Result<Self> {
        if expts.len() != vars.len() {
            return Err(Error::VarSetMismatch);
        }
        if c.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
        }
        if c.is_zero() {
            return Ok(MultiPoly::zero(field, vars));
        }
        Ok(MultiPoly { field, vars: vars.clone(), terms: vec![(expts, c)] })
    }

    /// Builds a polynomial from an arbitrary term list (merges duplicates,
    /// drops zeros, sorts canonically).
    pub fn from_terms(field: FieldSpec, vars: &VarSet, terms: Vec<(Mono, Scalar)>) -> Result<Self> {
        for (m, c) in &terms {
            if m.len() != vars.len() {
                return Err(Error::VarSetMismatch);
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
        }
        let mut p = MultiPoly { field, vars: vars.clone(), terms };
        p.normalize();
        Ok(p)
    }

    pub fn parse(field: FieldSpec, vars: &VarSet, text: &str) -> Result<Self> {
        parse::parse_poly(field, vars, text)
    }

    fn normalize(&mut self) {
        let ord = MonomialOrder::DegRevLex;
        self.terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut merged: Vec<(Mono, Scalar)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 = &last.1 + &c;
                    continue;
                }
            }
            merged.push((m, c));
        }
        merged.retain(|(_, c)| !c.is_zero());
        self.terms = merged;
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &[(Mono, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && mono_degree(&self.terms[0].0) == 0 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| mono_degree(m) == 0)
    }

    pub fn constant_value(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| mono_degree(m) == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` encodes the degree of the zero polynomial (−∞).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| mono_degree(m)).max()
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = mono_degree(&self.terms.first()?.0);
        self.terms
            .iter()
            .all(|(m, _)| mono_degree(m) == first)
            .then_some(first)
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e <= 1))
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MultiPoly::from_terms(self.field, &self.vars, terms)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Mono, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = mono_mul(ma, mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(s) => *s = &*s + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly::from_terms(self.field, &self.vars, acc.into_iter().collect())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field, &self.vars);
        }
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &[u32], c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field, &self.vars);
        }
        let mut terms: Vec<(Mono, Scalar)> = self
            .terms
            .iter()
            .map(|(m, k)| (mono_mul(m, mono), k * c))
            .collect();
        // Multiplying by a monomial preserves the degrevlex order of terms.
        let ord = MonomialOrder::DegRevLex;
        debug_assert!(terms.windows(2).all(|w| ord.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        terms.retain(|(_, c)| !c.is_zero());
        MultiPoly { field: self.field, vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.field, &self.vars);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn partial_derivative(&self, idx: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[idx] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[idx] -= 1;
                let e = self.field.from_i64(m[idx] as i64);
                (m2, c * &e)
            })
            .collect();
        MultiPoly::from_terms(self.field, &self.vars, terms).expect("derivative terms")
    }

    /// Sets one variable to zero, keeping the ambient variable set.
    pub fn substitute_zero(&self, idx: usize) -> MultiPoly {
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m[idx] == 0)
                .cloned()
                .collect(),
        }
    }

    pub fn evaluate(&self, values: &[Scalar]) -> Result<Scalar> {
        if values.len() != self.vars.len() {
            return Err(Error::VarSetMismatch);
        }
        for v in values {
            if v.field() != self.field {
                return Err(Error::FieldMismatch(self.field.to_string(), v.field().to_string()));
            }
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = &t * &values[i].pow(e as i64)?;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Moves the polynomial into a larger variable set containing all the
    /// current labels (by name).
    pub fn embed(&self, bigger: &VarSet) -> Result<MultiPoly> {
        let map: Vec<usize> = self
            .vars
            .labels()
            .iter()
            .map(|l| bigger.index_of(l).ok_or_else(|| Error::UnknownLabel(l.clone())))
            .collect::<Result<_>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = vec![0u32; bigger.len()];
                for (i, &e) in m.iter().enumerate() {
                    m2[map[i]] = e;
                }
                (m2, c.clone())
            })
            .collect();
        MultiPoly::from_terms(self.field, bigger, terms)
    }

    /// Renames variables positionally onto a set of the same size.
    pub fn relabel(&self, target: &VarSet) -> Result<MultiPoly> {
        if target.len() != self.vars.len() {
            return Err(Error::VarSetMismatch);
        }
        MultiPoly::from_terms(self.field, target, self.terms.clone())
    }

    /// Substitutes a polynomial for every variable (a ring homomorphism into
    /// the common ring of `images`).
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.vars.len() {
            return Err(Error::VarSetMismatch);
        }
        let Some(first) = images.first() else {
            return Err(Error::VarSetMismatch);
        };
        let target = first.vars.clone();
        for g in images {
            if g.vars != target || g.field != self.field {
                return Err(Error::VarSetMismatch);
            }
        }
        let mut acc = MultiPoly::zero(self.field, &target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(self.field, &target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Mono, &Scalar)> {
        match order {
            MonomialOrder::DegRevLex => self.terms.first().map(|(m, c)| (m, c)),
            _ => self
                .terms
                .iter()
                .max_by(|a, b| order.cmp(&a.0, &b.0))
                .map(|(m, c)| (m, c)),
        }
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.iter().any(|(m, _)| m[i] > 0))
            .collect()
    }

    /// If `self = c·other` for a nonzero scalar `c`, returns `c`.
    /// Two zero polynomials are proportional with `c = 1`.
    pub fn proportionality(&self, other: &MultiPoly) -> Option<Scalar> {
        if self.field != other.field || self.vars != other.vars {
            return None;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(self.field.one()),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let ratio = self.terms[0].1.div(&other.terms[0].1).ok()?;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(&other.terms) {
            if ma != mb || *ca != &ratio * cb {
                return None;
            }
        }
        Some(ratio)
    }

    /// Solves `self = Σ λ_i·gens[i]` exactly; returns the coefficients if the
    /// polynomial lies in the scalar span of `gens`.
    pub fn span_membership(&self, gens: &[MultiPoly]) -> Result<Option<Vec<Scalar>>> {
        for g in gens {
            self.check_compatible(g)?;
        }
        let mut monos: Vec<Mono> = Vec::new();
        for p in std::iter::once(self).chain(gens.iter()) {
            for (m, _) in &p.terms {
                if !monos.contains(m) {
                    monos.push(m.clone());
                }
            }
        }
        let ord = MonomialOrder::DegRevLex;
        monos.sort_unstable_by(|a, b| ord.cmp(b, a));
        let coeff = |p: &MultiPoly, m: &Mono| -> Scalar {
            p.terms
                .iter()
                .find(|(tm, _)| tm == m)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| self.field.zero())
        };
        let rows: Vec<Vec<Scalar>> = monos
            .iter()
            .map(|m| gens.iter().map(|g| coeff(g, m)).collect())
            .collect();
        let a = Matrix::from_rows(self.field, rows)?;
        let b: Vec<Scalar> = monos.iter().map(|m| coeff(self, m)).collect();
        a.solve(&b)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = matches!(c, Scalar::Q(r) if num_traits::Signed::is_negative(r));
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars.label(i).to_string()
                    } else {
                        format!("{}^{}", self.vars.label(i), e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> VarSet {
        VarSet::new(vec!["x", "y", "z"]).unwrap()
    }

    fn qp(text: &str) -> MultiPoly {
        MultiPoly::parse(FieldSpec::Q, &xyz(), text).unwrap()
    }

    #[test]
    fn canonical_form_and_display() {
        let p = qp("y + x^2 - y + 3*x*y - x^2 + 1");
        assert_eq!(p.to_string(), "3*x*y + 1");
        assert_eq!(qp("0").to_string(), "0");
        assert_eq!(qp("x - y").to_string(), "x - y");
        assert_eq!(qp("-x + y").to_string(), "-x + y");
        assert_eq!(qp("2/3*x^2").to_string(), "2/3*x^2");
    }

    #[test]
    fn arithmetic_matches_evaluation() {
        let f = FieldSpec::Q;
        let a = qp("x^2 + 2*x*y - z");
        let b = qp("x - 3*z + 1");
        let prod = a.mul(&b).unwrap();
        let sum = a.add(&b).unwrap();
        let pt = [f.from_i64(2), f.from_i64(-1), f.from_i64(3)];
        let ea = a.evaluate(&pt).unwrap();
        let eb = b.evaluate(&pt).unwrap();
        assert_eq!(prod.evaluate(&pt).unwrap(), &ea * &eb);
        assert_eq!(sum.evaluate(&pt).unwrap(), &ea + &eb);
    }

    #[test]
    fn degree_conventions() {
        assert_eq!(qp("0").total_degree(), None);
        assert_eq!(qp("5").total_degree(), Some(0));
        assert_eq!(qp("x*y^2 + z").total_degree(), Some(3));
        assert_eq!(qp("x*y + z^2").homogeneous_degree(), Some(2));
        assert_eq!(qp("x*y + z").homogeneous_degree(), None);
        assert!(qp("x*y*z + x").is_multilinear());
        assert!(!qp("x^2").is_multilinear());
    }

    #[test]
    fn derivative_and_substitution() {
        let p = qp("x^3 + x*y + 2*z");
        assert_eq!(p.partial_derivative(0), qp("3*x^2 + y"));
        assert_eq!(p.substitute_zero(0), qp("2*z"));
        assert_eq!(p.substitute_zero(0).vars().len(), 3);
        // Product rule on a pair of polynomials.
        let a = qp("x^2 + y");
        let b = qp("y*z + x");
        let lhs = a.mul(&b).unwrap().partial_derivative(1);
        let rhs = a
            .partial_derivative(1)
            .mul(&b)
            .unwrap()
            .add(&a.mul(&b.partial_derivative(1)).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn char_p_derivative_drops_p_th_powers() {
        let vars = xyz();
        let p = MultiPoly::parse(FieldSpec::Fp(3), &vars, "x^3 + x^2").unwrap();
        assert_eq!(
            p.partial_derivative(0),
            MultiPoly::parse(FieldSpec::Fp(3), &vars, "2*x").unwrap()
        );
    }

    #[test]
    fn embed_and_relabel() {
        let small = VarSet::new(vec!["x", "z"]).unwrap();
        let p = MultiPoly::parse(FieldSpec::Q, &small, "x*z + z^2").unwrap();
        let big = xyz();
        let q = p.embed(&big).unwrap();
        assert_eq!(q, qp("x*z + z^2"));
        let renamed = VarSet::new(vec!["a", "b"]).unwrap();
        assert_eq!(p.relabel(&renamed).unwrap().to_string(), "a*b + b^2");
    }

    #[test]
    fn substitution_homomorphism() {
        let p = qp("x*y + z");
        let target = VarSet::new(vec!["u", "v"]).unwrap();
        let f = FieldSpec::Q;
        let u = MultiPoly::var(f, &target, 0);
        let v = MultiPoly::var(f, &target, 1);
        let uv = u.add(&v).unwrap();
        let img = p.substitute(&[u.clone(), uv.clone(), v.clone()]).unwrap();
        // (u)(u+v) + v
        let expected = MultiPoly::parse(f, &target, "u^2 + u*v + v").unwrap();
        assert_eq!(img, expected);
    }

    #[test]
    fn proportionality_and_span() {
        let p = qp("2*x*y + 4*z");
        let q = qp("x*y + 2*z");
        assert_eq!(p.proportionality(&q), Some(FieldSpec::Q.from_i64(2)));
        assert_eq!(qp("x*y + z").proportionality(&q), None);
        assert_eq!(qp("0").proportionality(&qp("0")), Some(FieldSpec::Q.from_i64(1)));
        assert_eq!(qp("0").proportionality(&q), None);

        let target = qp("x^2 + 2*y");
        let gens = [qp("x^2 - z"), qp("y"), qp("z")];
        let sol = target.span_membership(&gens).unwrap().unwrap();
        let mut acc = MultiPoly::zero(FieldSpec::Q, &xyz());
        for (c, g) in sol.iter().zip(&gens) {
            acc = acc.add(&g.scale(c)).unwrap();
        }
        assert_eq!(acc, target);
        assert!(qp("x^3").span_membership(&gens).unwrap().is_none());
    }

    #[test]
    fn fresh_labels_never_collide() {
        let vars = xyz();
        let t = vars.fresh_label("t");
        assert!(vars.index_of(&t).is_none());
        let extended = vars.extend(vec![t.clone()]).unwrap();
        assert_eq!(extended.len(), 4);
        assert!(extended.extend(vec![t]).is_err());
    }
}
