//! A small Buchberger engine with the operations needed to decide ideal
//! identities exactly: reduced Gröbner bases, normal forms, elimination,
//! intersection, colon ideals, saturation, radical membership and Krull
//! dimension.
//!
//! Everything is deterministic.  Pairs are processed in normal-selection
//! order (minimal lcm degree, ties broken by a fixed lexical key), reducers
//! are chosen first-match in basis order, and reduced bases are sorted by
//! leading monomial, so identical inputs give byte-identical output.  Over
//! `Q` basis elements are kept primitive-integer with positive leading
//! coefficient; over `F_p` they are monic.
//!
//! Work is bounded by [`GbOptions::max_pairs`]: each S-pair surviving the
//! product criterion counts one unit, and exceeding the budget aborts with
//! `Error::ResourceLimit` rather than returning a partial answer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{mono_degree, mono_div, mono_lcm, mono_mul, Mono, MonomialOrder, MultiPoly, VarSet};

#[derive(Clone, Debug)]
pub struct GbOptions {
    /// Budget on S-pair reductions before aborting with `ResourceLimit`.
    pub max_pairs: usize,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { max_pairs: 200_000 }
    }
}

impl GbOptions {
    pub fn with_max_pairs(max_pairs: usize) -> Self {
        GbOptions { max_pairs }
    }
}

/// An ideal with cached reduced Gröbner bases (one per monomial order).
///
/// Cloning shares the cache; computing a basis under a new order fills it.
#[derive(Debug)]
pub struct Ideal {
    field: FieldSpec,
    vars: VarSet,
    gens: Vec<MultiPoly>,
    cache: Arc<Mutex<Vec<(MonomialOrder, Arc<Vec<MultiPoly>>)>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            field: self.field,
            vars: self.vars.clone(),
            gens: self.gens.clone(),
            cache: Arc::clone(&self.cache),
        }
    }
}

impl Ideal {
    pub fn new(field: FieldSpec, vars: &VarSet, gens: Vec<MultiPoly>) -> Result<Self> {
        for g in &gens {
            if g.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), g.field().to_string()));
            }
            if g.vars() != vars {
                return Err(Error::VarSetMismatch);
            }
        }
        let mut gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        gens.dedup();
        Ok(Ideal {
            field,
            vars: vars.clone(),
            gens,
            cache: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    /// The reduced Gröbner basis under `order`, cached per order.
    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        opts: &GbOptions,
    ) -> Result<Arc<Vec<MultiPoly>>> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some((_, basis)) = cache.iter().find(|(o, _)| o == order) {
                return Ok(Arc::clone(basis));
            }
        }
        let basis = Arc::new(buchberger(self.field, &self.vars, &self.gens, order, opts)?);
        let mut cache = self.cache.lock().unwrap();
        if let Some((_, cached)) = cache.iter().find(|(o, _)| o == order) {
            return Ok(Arc::clone(cached));
        }
        cache.push((order.clone(), Arc::clone(&basis)));
        Ok(basis)
    }

    /// Canonical normal form of `f` modulo the ideal (remainder of division
    /// by the reduced basis under `order`).
    pub fn normal_form(
        &self,
        f: &MultiPoly,
        order: &MonomialOrder,
        opts: &GbOptions,
    ) -> Result<MultiPoly> {
        if f.vars() != &self.vars {
            return Err(Error::VarSetMismatch);
        }
        let basis = self.groebner_basis(order, opts)?;
        let cmp = order.comparator(self.vars.len());
        let reducers: Vec<GPoly> = basis.iter().map(|g| GPoly::from_poly(g, &cmp)).collect();
        let nf = normal_form_internal(GPoly::from_poly(f, &cmp), &reducers, &cmp);
        Ok(nf.into_poly(self.field, &self.vars))
    }

    pub fn contains(&self, f: &MultiPoly, opts: &GbOptions) -> Result<bool> {
        Ok(self.normal_form(f, &MonomialOrder::DegRevLex, opts)?.is_zero())
    }

    pub fn is_unit(&self, opts: &GbOptions) -> Result<bool> {
        let basis = self.groebner_basis(&MonomialOrder::DegRevLex, opts)?;
        Ok(basis.len() == 1 && basis[0].is_one())
    }

    /// All ideal generators contained in `other`?
    pub fn subset_of(&self, other: &Ideal, opts: &GbOptions) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g, opts)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality via canonical reduced bases.
    pub fn ideal_equal(&self, other: &Ideal, opts: &GbOptions) -> Result<bool> {
        if self.field != other.field || self.vars != other.vars {
            return Ok(false);
        }
        let a = self.groebner_basis(&MonomialOrder::DegRevLex, opts)?;
        let b = other.groebner_basis(&MonomialOrder::DegRevLex, opts)?;
        Ok(*a == *b)
    }

    /// Generators of `I ∩ K[vars ∖ kill]`, still presented in the ambient
    /// ring (no generator involves a killed variable).
    pub fn eliminate(&self, kill: &[usize], opts: &GbOptions) -> Result<Ideal> {
        let order = MonomialOrder::elim(kill.to_vec());
        let basis = self.groebner_basis(&order, opts)?;
        let gens: Vec<MultiPoly> = basis
            .iter()
            .filter(|g| g.support().iter().all(|i| !kill.contains(i)))
            .cloned()
            .collect();
        Ideal::new(self.field, &self.vars, gens)
    }

    /// `I ∩ J` via the fresh-variable trick: eliminate `t` from
    /// `t·I + (1−t)·J`.
    pub fn intersect(&self, other: &Ideal, opts: &GbOptions) -> Result<Ideal> {
        if self.field != other.field || self.vars != other.vars {
            return Err(Error::VarSetMismatch);
        }
        let t_label = self.vars.fresh_label("t");
        let ext = self.vars.extend(vec![t_label])?;
        let t_idx = ext.len() - 1;
        let t = MultiPoly::var(self.field, &ext, t_idx);
        let one = MultiPoly::one(self.field, &ext);
        let one_minus_t = one.sub(&t)?;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.embed(&ext)?.mul(&t)?);
        }
        for g in &other.gens {
            gens.push(g.embed(&ext)?.mul(&one_minus_t)?);
        }
        let big = Ideal::new(self.field, &ext, gens)?;
        let elim = big.eliminate(&[t_idx], opts)?;
        let gens: Vec<MultiPoly> = elim
            .generators()
            .iter()
            .map(|g| project_out_last(g, &self.vars))
            .collect::<Result<_>>()?;
        Ideal::new(self.field, &self.vars, gens)
    }

    /// Colon ideal `I : f`, computed as `(I ∩ ⟨f⟩)/f`.
    pub fn quotient(&self, f: &MultiPoly, opts: &GbOptions) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        if f.vars() != &self.vars {
            return Err(Error::VarSetMismatch);
        }
        let principal = Ideal::new(self.field, &self.vars, vec![f.clone()])?;
        let meet = self.intersect(&principal, opts)?;
        let gens: Vec<MultiPoly> = meet
            .generators()
            .iter()
            .map(|g| divide_exact(g, f))
            .collect::<Result<_>>()?;
        Ideal::new(self.field, &self.vars, gens)
    }

    /// Saturation `I : f^∞`; iterates colon ideals to a fixed point and
    /// reports the number of steps taken.
    pub fn saturate(&self, f: &MultiPoly, opts: &GbOptions) -> Result<(Ideal, usize)> {
        let mut current = self.clone();
        let mut steps = 0;
        loop {
            let next = current.quotient(f, opts)?;
            if next.ideal_equal(&current, opts)? {
                return Ok((current, steps));
            }
            current = next;
            steps += 1;
        }
    }

    /// Radical membership: `f ∈ √I` iff `I + ⟨1 − y·f⟩` is the unit ideal.
    pub fn radical_member(&self, f: &MultiPoly, opts: &GbOptions) -> Result<bool> {
        if f.vars() != &self.vars {
            return Err(Error::VarSetMismatch);
        }
        let y_label = self.vars.fresh_label("y");
        let ext = self.vars.extend(vec![y_label])?;
        let y = MultiPoly::var(self.field, &ext, ext.len() - 1);
        let one = MultiPoly::one(self.field, &ext);
        let mut gens: Vec<MultiPoly> = self
            .gens
            .iter()
            .map(|g| g.embed(&ext))
            .collect::<Result<_>>()?;
        gens.push(one.sub(&y.mul(&f.embed(&ext)?)?)?);
        Ideal::new(self.field, &ext, gens)?.is_unit(opts)
    }

    /// Krull dimension of `R/I`: the maximal size of a variable subset `S`
    /// such that no leading monomial of the reduced basis has support inside
    /// `S`.  The unit ideal has dimension −1 by convention.
    pub fn krull_dimension(&self, opts: &GbOptions) -> Result<i64> {
        let n = self.vars.len();
        if n > 24 {
            return Err(Error::TooLarge(n, 24));
        }
        let basis = self.groebner_basis(&MonomialOrder::DegRevLex, opts)?;
        let lm_supports: Vec<u32> = basis
            .iter()
            .map(|g| {
                let (m, _) = g.leading_term(&MonomialOrder::DegRevLex).expect("nonzero");
                m.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u32, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let mut best: i64 = -1;
        for s in 0u32..(1u32 << n) {
            if (s.count_ones() as i64) <= best {
                continue;
            }
            if lm_supports.iter().all(|&m| m & !s != 0) {
                best = s.count_ones() as i64;
            }
        }
        Ok(best)
    }

    /// Codimension `#vars − dim`; `None` for the unit ideal (empty scheme).
    pub fn codimension(&self, opts: &GbOptions) -> Result<Option<i64>> {
        let d = self.krull_dimension(opts)?;
        if d < 0 {
            return Ok(None);
        }
        Ok(Some(self.vars.len() as i64 - d))
    }
}

/// Exact division `f / g`; fails unless the division is remainder-free.
pub fn divide_exact(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.vars() != g.vars() {
        return Err(Error::VarSetMismatch);
    }
    let order = MonomialOrder::DegRevLex;
    let cmp = order.comparator(f.vars().len());
    let divisor = GPoly::from_poly(g, &cmp);
    let mut work = GPoly::from_poly(f, &cmp);
    let mut quotient: Vec<(Mono, Scalar)> = Vec::new();
    while let Some((lm, lc)) = work.leading() {
        let Some(delta) = mono_div(lm, divisor.leading().expect("nonzero divisor").0) else {
            return Err(Error::ExactDivisionFailure);
        };
        let coeff = lc.div(divisor.leading().unwrap().1)?;
        work = work.sub_scaled(&divisor, &delta, &coeff, &cmp);
        quotient.push((delta, coeff));
    }
    MultiPoly::from_terms(f.field(), f.vars(), quotient)
}

/// Moves a polynomial not involving the last variable down to the original
/// variable set (helper for the fresh-variable constructions).
fn project_out_last(p: &MultiPoly, target: &VarSet) -> Result<MultiPoly> {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            debug_assert_eq!(*m.last().unwrap_or(&0), 0);
            (m[..target.len()].to_vec(), c.clone())
        })
        .collect();
    MultiPoly::from_terms(p.field(), target, terms)
}

/// Working polynomial inside the engine: terms strictly descending in the
/// *active* order.
#[derive(Clone, Debug)]
struct GPoly {
    terms: Vec<(Mono, Scalar)>,
}

impl GPoly {
    fn from_poly(p: &MultiPoly, cmp: &impl Fn(&[u32], &[u32]) -> Ordering) -> GPoly {
        let mut terms = p.terms().to_vec();
        terms.sort_unstable_by(|a, b| cmp(&b.0, &a.0));
        GPoly { terms }
    }

    fn into_poly(self, field: FieldSpec, vars: &VarSet) -> MultiPoly {
        MultiPoly::from_terms(field, vars, self.terms).expect("engine terms are consistent")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// `self − c·x^δ·g`, merging sorted term lists.
    fn sub_scaled(
        &self,
        g: &GPoly,
        delta: &Mono,
        c: &Scalar,
        cmp: &impl Fn(&[u32], &[u32]) -> Ordering,
    ) -> GPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(m, k)| (mono_mul(m, delta), -&(k * c)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => {
                    let (m, k) = a.next().unwrap();
                    out.push((m.clone(), k.clone()));
                }
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => match cmp(ma, mb) {
                    Ordering::Greater => {
                        let (m, k) = a.next().unwrap();
                        out.push((m.clone(), k.clone()));
                    }
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, ka) = a.next().unwrap();
                        let (_, kb) = b.next().unwrap();
                        let sum = ka + &kb;
                        if !sum.is_zero() {
                            out.push((m.clone(), sum));
                        }
                    }
                },
            }
        }
        GPoly { terms: out }
    }
}

/// Scales a polynomial to canonical form: monic over `F_p`; over `Q`
/// primitive integer coefficients with positive leading coefficient.
fn canonical_scale(p: &mut GPoly, field: FieldSpec) {
    let Some((_, lc)) = p.leading() else { return };
    match field {
        FieldSpec::Fp(_) => {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero leading coefficient");
                for (_, c) in &mut p.terms {
                    *c = &*c * &inv;
                }
            }
        }
        FieldSpec::Q => {
            let mut denom_lcm = BigInt::one();
            let mut numer_gcd = BigInt::zero();
            for (_, c) in &p.terms {
                let r = c.as_rational().expect("rational coefficient");
                denom_lcm = denom_lcm.lcm(r.denom());
                numer_gcd = numer_gcd.gcd(r.numer());
            }
            let mut factor = BigRational::new(denom_lcm, numer_gcd);
            if p.leading().unwrap().1.as_rational().unwrap().is_negative() {
                factor = -factor;
            }
            let factor = Scalar::Q(factor);
            for (_, c) in &mut p.terms {
                *c = &*c * &factor;
            }
        }
    }
}

fn normal_form_internal(
    f: GPoly,
    basis: &[GPoly],
    cmp: &impl Fn(&[u32], &[u32]) -> Ordering,
) -> GPoly {
    let mut work = f;
    let mut out: Vec<(Mono, Scalar)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.leading() {
        for g in basis {
            let (gm, gc) = g.leading().expect("basis elements are nonzero");
            if let Some(delta) = mono_div(lm, gm) {
                let coeff = lc.div(gc).expect("nonzero leading coefficient");
                work = work.sub_scaled(g, &delta, &coeff, cmp);
                continue 'outer;
            }
        }
        // Irreducible leading term: move it to the remainder.
        out.push((lm.clone(), lc.clone()));
        work.terms.remove(0);
    }
    GPoly { terms: out }
}

fn buchberger(
    field: FieldSpec,
    vars: &VarSet,
    gens: &[MultiPoly],
    order: &MonomialOrder,
    opts: &GbOptions,
) -> Result<Vec<MultiPoly>> {
    let cmp = order.comparator(vars.len());
    let mut basis: Vec<GPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let mut gp = GPoly::from_poly(g, &cmp);
            canonical_scale(&mut gp, field);
            basis.push(gp);
        }
    }
    // Pair queue keyed for normal selection: lcm degree first, then a fixed
    // lexical key for determinism.
    let mut pairs: BTreeSet<(u32, Mono, usize, usize)> = BTreeSet::new();
    let enqueue = |pairs: &mut BTreeSet<(u32, Mono, usize, usize)>, basis: &[GPoly], i: usize, j: usize| {
        let (mi, _) = basis[i].leading().unwrap();
        let (mj, _) = basis[j].leading().unwrap();
        let lcm = mono_lcm(mi, mj);
        pairs.insert((mono_degree(&lcm), lcm, i, j));
    };
    for j in 1..basis.len() {
        for i in 0..j {
            enqueue(&mut pairs, &basis, i, j);
        }
    }
    let mut reductions = 0usize;
    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (_, lcm, i, j) = entry;
        let (mi, ci) = basis[i].leading().unwrap();
        let (mj, cj) = basis[j].leading().unwrap();
        // Product criterion: coprime leading monomials reduce to zero.
        if lcm == mono_mul(mi, mj) {
            continue;
        }
        reductions += 1;
        if reductions > opts.max_pairs {
            return Err(Error::ResourceLimit(opts.max_pairs));
        }
        // Cross-multiplied S-polynomial avoids rational inverses over Q.
        let di = mono_div(&lcm, mi).expect("lcm divisible");
        let dj = mono_div(&lcm, mj).expect("lcm divisible");
        let zero = GPoly { terms: Vec::new() };
        let s = zero
            .sub_scaled(&basis[i], &di, &-cj, &cmp)
            .sub_scaled(&basis[j], &dj, &ci.clone(), &cmp);
        let mut r = normal_form_internal(s, &basis, &cmp);
        if r.is_zero() {
            continue;
        }
        canonical_scale(&mut r, field);
        let new_idx = basis.len();
        basis.push(r);
        for k in 0..new_idx {
            enqueue(&mut pairs, &basis, k, new_idx);
        }
        // Unit ideal: nothing else can matter.
        if basis[new_idx].terms.len() == 1 && mono_degree(&basis[new_idx].terms[0].0) == 0 {
            break;
        }
    }
    Ok(reduce_basis(basis, field, vars, &cmp))
}

/// Minimalizes and tail-reduces a Gröbner basis, returning canonical sorted
/// generators.
fn reduce_basis(
    mut basis: Vec<GPoly>,
    field: FieldSpec,
    vars: &VarSet,
    cmp: &impl Fn(&[u32], &[u32]) -> Ordering,
) -> Vec<MultiPoly> {
    // Sort by leading monomial ascending so minimal elements survive.
    basis.sort_by(|a, b| {
        let (ma, _) = a.leading().expect("nonzero");
        let (mb, _) = b.leading().expect("nonzero");
        cmp(ma, mb).then_with(|| a.terms.len().cmp(&b.terms.len()))
    });
    let mut minimal: Vec<GPoly> = Vec::new();
    for g in basis {
        let (gm, _) = g.leading().unwrap();
        if minimal
            .iter()
            .all(|h| mono_div(gm, h.leading().unwrap().0).is_none())
        {
            minimal.push(g);
        }
    }
    // Tail-reduce each element against the others.
    let mut reduced: Vec<GPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = normal_form_internal(minimal[i].clone(), &others, cmp);
        debug_assert!(!r.is_zero(), "minimal basis element reduced to zero");
        canonical_scale(&mut r, field);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| cmp(a.leading().unwrap().0, b.leading().unwrap().0));
    reduced.into_iter().map(|g| g.into_poly(field, vars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> VarSet {
        VarSet::new(vec!["x", "y"]).unwrap()
    }

    fn ring3() -> VarSet {
        VarSet::new(vec!["x", "y", "z"]).unwrap()
    }

    fn ideal(vars: &VarSet, gens: &[&str]) -> Ideal {
        let gens = gens
            .iter()
            .map(|s| MultiPoly::parse(FieldSpec::Q, vars, s).unwrap())
            .collect();
        Ideal::new(FieldSpec::Q, vars, gens).unwrap()
    }

    fn opts() -> GbOptions {
        GbOptions::default()
    }

    #[test]
    fn membership_matches_variety() {
        // V(I) = {(0,0), (1,1), (−1,1)}.
        let vars = ring2();
        let i = ideal(&vars, &["x^2 - y", "x^3 - x"]);
        let member = |s: &str| {
            i.contains(&MultiPoly::parse(FieldSpec::Q, &vars, s).unwrap(), &opts())
                .unwrap()
        };
        assert!(member("x^3 - x"));
        assert!(member("y^3 - y"));
        assert!(member("x*y - x"));
        assert!(!member("y - x"));
        assert!(!member("x"));
        // The reduced basis itself is stable under recomputation.
        let b1 = i.groebner_basis(&MonomialOrder::DegRevLex, &opts()).unwrap();
        let i2 = ideal(&vars, &["x^3 - x", "x^2 - y"]);
        let b2 = i2.groebner_basis(&MonomialOrder::DegRevLex, &opts()).unwrap();
        assert_eq!(*b1, *b2);
    }

    #[test]
    fn normal_form_is_linear_over_remainders() {
        let vars = ring2();
        let i = ideal(&vars, &["x^2 - y"]);
        let f = MultiPoly::parse(FieldSpec::Q, &vars, "x^4 + x^2 + 1").unwrap();
        let nf = i.normal_form(&f, &MonomialOrder::DegRevLex, &opts()).unwrap();
        assert_eq!(nf, MultiPoly::parse(FieldSpec::Q, &vars, "y^2 + y + 1").unwrap());
    }

    #[test]
    fn elimination_finds_the_cuspidal_cubic() {
        let vars = VarSet::new(vec!["x", "y", "t"]).unwrap();
        let i = ideal(&vars, &["x - t^2", "y - t^3"]);
        let elim = i.eliminate(&[2], &opts()).unwrap();
        assert!(!elim.generators().is_empty());
        for g in elim.generators() {
            assert!(!g.support().contains(&2));
        }
        let cubic = MultiPoly::parse(FieldSpec::Q, &vars, "y^2 - x^3").unwrap();
        assert!(elim.contains(&cubic, &opts()).unwrap());
        assert!(!elim.contains(&MultiPoly::parse(FieldSpec::Q, &vars, "x - t^2").unwrap(), &opts()).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let vars = ring2();
        let a = ideal(&vars, &["x"]);
        let b = ideal(&vars, &["y"]);
        let meet = a.intersect(&b, &opts()).unwrap();
        assert!(meet.ideal_equal(&ideal(&vars, &["x*y"]), &opts()).unwrap());
    }

    #[test]
    fn colon_and_saturation() {
        let vars = ring2();
        let i = ideal(&vars, &["x^2 + x*y"]);
        let x = MultiPoly::parse(FieldSpec::Q, &vars, "x").unwrap();
        let q = i.quotient(&x, &opts()).unwrap();
        assert!(q.ideal_equal(&ideal(&vars, &["x + y"]), &opts()).unwrap());

        let j = ideal(&vars, &["x^2*y"]);
        let y = MultiPoly::parse(FieldSpec::Q, &vars, "y").unwrap();
        let (sat, steps) = j.saturate(&y, &opts()).unwrap();
        assert!(sat.ideal_equal(&ideal(&vars, &["x^2"]), &opts()).unwrap());
        assert_eq!(steps, 1);
        // Saturating again is a fixed point.
        let (sat2, steps2) = sat.saturate(&y, &opts()).unwrap();
        assert!(sat2.ideal_equal(&sat, &opts()).unwrap());
        assert_eq!(steps2, 0);
    }

    #[test]
    fn radical_membership() {
        let vars = ring2();
        let i = ideal(&vars, &["x^2"]);
        let x = MultiPoly::parse(FieldSpec::Q, &vars, "x").unwrap();
        let y = MultiPoly::parse(FieldSpec::Q, &vars, "y").unwrap();
        assert!(i.radical_member(&x, &opts()).unwrap());
        assert!(!i.contains(&x, &opts()).unwrap());
        assert!(!i.radical_member(&y, &opts()).unwrap());
    }

    #[test]
    fn krull_dimension_cases() {
        let vars = ring3();
        assert_eq!(ideal(&vars, &[]).krull_dimension(&opts()).unwrap(), 3);
        assert_eq!(ideal(&vars, &["x"]).krull_dimension(&opts()).unwrap(), 2);
        assert_eq!(ideal(&vars, &["x*y"]).krull_dimension(&opts()).unwrap(), 2);
        assert_eq!(ideal(&vars, &["x", "y"]).krull_dimension(&opts()).unwrap(), 1);
        assert_eq!(ideal(&vars, &["x", "y", "z"]).krull_dimension(&opts()).unwrap(), 0);
        assert_eq!(ideal(&vars, &["1"]).krull_dimension(&opts()).unwrap(), -1);
        assert_eq!(ideal(&vars, &["x", "y", "z"]).codimension(&opts()).unwrap(), Some(3));
        assert_eq!(ideal(&vars, &["7"]).codimension(&opts()).unwrap(), None);
        // Dimension is insensitive to the generator presentation.
        assert_eq!(
            ideal(&vars, &["x + y", "y + z"]).krull_dimension(&opts()).unwrap(),
            1
        );
    }

    #[test]
    fn resource_limit_aborts() {
        let vars = ring3();
        let i = ideal(
            &vars,
            &["x^2*y - z^3", "y^2*z - x^3", "z^2*x - y^3", "x*y*z - 1"],
        );
        let tight = GbOptions::with_max_pairs(2);
        match i.groebner_basis(&MonomialOrder::DegRevLex, &tight) {
            Err(Error::ResourceLimit(2)) => {}
            other => panic!("expected resource limit, got {other:?}"),
        }
        // A fresh computation with the default budget succeeds.
        assert!(i.groebner_basis(&MonomialOrder::DegRevLex, &opts()).is_ok());
    }

    #[test]
    fn cache_is_shared_and_per_order() {
        let vars = ring2();
        let i = ideal(&vars, &["x^2 - y"]);
        let b1 = i.groebner_basis(&MonomialOrder::DegRevLex, &opts()).unwrap();
        let clone = i.clone();
        let b2 = clone.groebner_basis(&MonomialOrder::DegRevLex, &opts()).unwrap();
        assert!(Arc::ptr_eq(&b1, &b2));
        let elim = i.groebner_basis(&MonomialOrder::elim(vec![0]), &opts()).unwrap();
        assert!(!Arc::ptr_eq(&b1, &elim));
    }

    #[test]
    fn exact_division() {
        let vars = ring2();
        let f = MultiPoly::parse(FieldSpec::Q, &vars, "(x + y)*(x - y)").unwrap();
        let g = MultiPoly::parse(FieldSpec::Q, &vars, "x + y").unwrap();
        assert_eq!(
            divide_exact(&f, &g).unwrap(),
            MultiPoly::parse(FieldSpec::Q, &vars, "x - y").unwrap()
        );
        let h = MultiPoly::parse(FieldSpec::Q, &vars, "x + 1").unwrap();
        assert!(matches!(divide_exact(&f, &h), Err(Error::ExactDivisionFailure)));
    }

    #[test]
    fn prime_field_bases_are_monic() {
        let vars = ring2();
        let f = FieldSpec::Fp(7);
        let gens = vec![
            MultiPoly::parse(f, &vars, "3*x^2 - y").unwrap(),
            MultiPoly::parse(f, &vars, "5*y^2 - x").unwrap(),
        ];
        let i = Ideal::new(f, &vars, gens).unwrap();
        let basis = i.groebner_basis(&MonomialOrder::DegRevLex, &opts()).unwrap();
        for g in basis.iter() {
            let (_, lc) = g.leading_term(&MonomialOrder::DegRevLex).unwrap();
            assert!(lc.is_one());
        }
    }
}
