//! Independent brute-force verifiers for the decision engine.
//!
//! Nothing here shares code with the residue-form recursion: base-field
//! questions are settled by exhaustive enumeration, tower questions by
//! searching for exact witnesses with monomial coordinates inside a finite
//! truncation window. A witness found here certifies isotropy outright (the
//! carrier embeds in the tower); absence within a window is a semidecision
//! and is reported as such, never as a proof of anisotropy.
//!
//! All enumerations are sequential over a fixed order, so results do not
//! depend on scheduling.

use crate::qform::{DiagForm, FormError};
use crate::tower::{BaseElem, BaseKind, Element, Field, LevelKind};
use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("candidate count {candidates} exceeds the budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("operation requires a finite base field with no tower levels")]
    FiniteBaseRequired,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Search window for truncated witnesses: exponent range per level, a
/// denominator cap for Puiseux levels, a coefficient domain, and a hard cap
/// on the number of candidate vectors.
#[derive(Debug, Clone)]
pub struct TruncWindow {
    pub lo: i64,
    pub hi: i64,
    pub denom_cap: u64,
    pub coeffs: CoeffDomain,
    pub budget: u128,
}

/// Coefficients tried for witness coordinates: the whole base field when it
/// is finite, or a fixed rational sample for the infinite bases.
#[derive(Debug, Clone)]
pub enum CoeffDomain {
    FullBase,
    Rationals(Vec<(i64, i64)>),
}

impl TruncWindow {
    /// Symmetric window of the given exponent radius with defaults: full
    /// coefficient range over finite bases, a small rational sample
    /// otherwise.
    pub fn radius(field: &Field, r: i64) -> TruncWindow {
        let coeffs = match field.base() {
            BaseKind::FiniteField(_) => CoeffDomain::FullBase,
            _ => CoeffDomain::Rationals(vec![
                (1, 1),
                (-1, 1),
                (2, 1),
                (-2, 1),
                (3, 1),
                (-3, 1),
                (1, 2),
                (-1, 2),
            ]),
        };
        TruncWindow { lo: -r, hi: r, denom_cap: 2, coeffs, budget: 200_000_000 }
    }

    /// Default window for a form: radius `dim(phi)`, which is wide enough for
    /// the witnesses produced by the residue-level reduction on the
    /// monomial-entry families this oracle is used against.
    pub fn default_for(phi: &DiagForm) -> TruncWindow {
        TruncWindow::radius(phi.field(), phi.dim() as i64)
    }

    pub fn doubled(&self) -> TruncWindow {
        TruncWindow {
            lo: self.lo * 2,
            hi: self.hi * 2,
            denom_cap: self.denom_cap,
            coeffs: self.coeffs.clone(),
            budget: self.budget,
        }
    }
}

// --- base-field enumeration ---

/// Indexed arithmetic tables for a small finite field.
struct FqTables {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    elements: Vec<Vec<u64>>,
}

fn fq_tables(field: &Field) -> Result<FqTables, OracleError> {
    let gf = field.gf().ok_or(OracleError::FiniteBaseRequired)?;
    let q = gf.q as usize;
    if q > 128 {
        return Err(OracleError::BudgetExceeded { candidates: q as u128, budget: 128 });
    }
    let elements = gf.all_elements();
    let index: std::collections::HashMap<Vec<u64>, u16> =
        elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u16)).collect();
    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for i in 0..q {
        for j in 0..q {
            add[i * q + j] = index[&gf.add(&elements[i], &elements[j])];
            mul[i * q + j] = index[&gf.mul(&elements[i], &elements[j])];
        }
    }
    Ok(FqTables { q, add, mul, elements })
}

impl FqTables {
    fn coeff_index(&self, c: &BaseElem) -> u16 {
        let BaseElem::Fq(v) = c else { panic!("finite base expected") };
        self.elements.iter().position(|e| e == v).expect("element of the field") as u16
    }
}

/// Exhaustive isotropy over a finite base field: enumerates all nonzero
/// coordinate vectors in a fixed counting order and returns the first zero
/// of the form, if any. Exact.
pub fn exhaustive_isotropy_base(phi: &DiagForm) -> Result<Option<Vec<Element>>, OracleError> {
    exhaustive_isotropy_base_with_budget(phi, 20_000_000)
}

pub fn exhaustive_isotropy_base_with_budget(
    phi: &DiagForm,
    budget: u128,
) -> Result<Option<Vec<Element>>, OracleError> {
    let field = phi.field();
    if !field.levels().is_empty() {
        return Err(OracleError::FiniteBaseRequired);
    }
    let t = fq_tables(field)?;
    let n = phi.dim();
    let total = (t.q as u128).saturating_pow(n as u32);
    if total > budget {
        return Err(OracleError::BudgetExceeded { candidates: total, budget });
    }
    let entries: Vec<u16> =
        phi.entries().iter().map(|e| t.coeff_index(&e.constant_value().unwrap())).collect();
    let q = t.q;
    let mut x = vec![0u16; n];
    loop {
        // odometer; starts past the all-zero vector
        let mut carried = true;
        for d in x.iter_mut() {
            *d += 1;
            if (*d as usize) < q {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            return Ok(None);
        }
        let mut acc = 0u16;
        for i in 0..n {
            let sq = t.mul[x[i] as usize * q + x[i] as usize];
            let term = t.mul[entries[i] as usize * q + sq as usize];
            acc = t.add[acc as usize * q + term as usize];
        }
        if acc == 0 {
            let w = x.iter().map(|&d| field.gf_constant(t.elements[d as usize].clone())).collect();
            return Ok(Some(w));
        }
    }
}

/// Maximal dimension of a totally isotropic subspace over a finite base
/// field, by exhaustive flag search over projective representatives.
pub fn witt_index_base(phi: &DiagForm) -> Result<usize, OracleError> {
    let field = phi.field();
    if !field.levels().is_empty() {
        return Err(OracleError::FiniteBaseRequired);
    }
    let t = fq_tables(field)?;
    let n = phi.dim();
    let total = (t.q as u128).saturating_pow(n as u32);
    if total > 20_000_000 {
        return Err(OracleError::BudgetExceeded { candidates: total, budget: 20_000_000 });
    }
    let entries: Vec<u16> =
        phi.entries().iter().map(|e| t.coeff_index(&e.constant_value().unwrap())).collect();
    let q = t.q;
    let eval = |x: &[u16]| -> u16 {
        let mut acc = 0u16;
        for i in 0..n {
            let sq = t.mul[x[i] as usize * q + x[i] as usize];
            let term = t.mul[entries[i] as usize * q + sq as usize];
            acc = t.add[acc as usize * q + term as usize];
        }
        acc
    };
    let two = t.coeff_index(&BaseElem::Fq(field.gf().unwrap().from_i64(2)));
    let bilin = |x: &[u16], y: &[u16]| -> u16 {
        let mut acc = 0u16;
        for i in 0..n {
            let xy = t.mul[x[i] as usize * q + y[i] as usize];
            let term = t.mul[entries[i] as usize * q + xy as usize];
            let term = t.mul[two as usize * q + term as usize];
            acc = t.add[acc as usize * q + term as usize];
        }
        acc
    };
    let neg_table: Vec<u16> = {
        let gf = field.gf().unwrap();
        t.elements.iter().map(|e| t.coeff_index(&BaseElem::Fq(gf.neg(e)))).collect()
    };

    // isotropic projective representatives (first nonzero coordinate = 1)
    let mut isotropic: Vec<Vec<u16>> = Vec::new();
    let mut x = vec![0u16; n];
    loop {
        let mut carried = true;
        for d in x.iter_mut() {
            *d += 1;
            if (*d as usize) < q {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            break;
        }
        if x.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        if eval(&x) == 0 {
            isotropic.push(x.clone());
        }
    }

    // span membership via elimination over the index tables
    let in_span = |basis: &[Vec<u16>], v: &[u16]| -> bool {
        if basis.is_empty() {
            return false;
        }
        let gf = field.gf().unwrap();
        let to_fq = |i: u16| t.elements[i as usize].clone();
        let mut rows: Vec<Vec<Vec<u64>>> =
            basis.iter().map(|r| r.iter().map(|&i| to_fq(i)).collect()).collect();
        let mut vv: Vec<Vec<u64>> = v.iter().map(|&i| to_fq(i)).collect();
        let mut col = 0usize;
        for r in 0..rows.len() {
            while col < n && rows[r..].iter().all(|row| row[col].is_empty()) {
                // reduce v at this column too: no pivot available, so if v is
                // nonzero here it is independent
                if !vv[col].is_empty() {
                    return false;
                }
                col += 1;
            }
            if col == n {
                break;
            }
            let pivot_row = (r..rows.len()).find(|&i| !rows[i][col].is_empty()).unwrap();
            rows.swap(r, pivot_row);
            let inv = gf.inv(&rows[r][col]);
            let factor = gf.mul(&vv[col], &inv);
            if !factor.is_empty() {
                for c in 0..n {
                    let sub = gf.mul(&factor, &rows[r][c]);
                    vv[c] = gf.sub(&vv[c], &sub);
                }
            }
            col += 1;
        }
        vv.iter().all(|c| c.is_empty())
    };
    let _ = neg_table;

    fn extend(
        bilin: &dyn Fn(&[u16], &[u16]) -> u16,
        in_span: &dyn Fn(&[Vec<u16>], &[u16]) -> bool,
        basis: &mut Vec<Vec<u16>>,
        candidates: &[Vec<u16>],
        best: &mut usize,
        cap: usize,
    ) {
        *best = (*best).max(basis.len());
        if *best == cap {
            return;
        }
        for (i, v) in candidates.iter().enumerate() {
            if basis.iter().any(|w| bilin(v, w) != 0) {
                continue;
            }
            if in_span(basis, v) {
                continue;
            }
            basis.push(v.clone());
            extend(bilin, in_span, basis, &candidates[i + 1..], best, cap);
            basis.pop();
            if *best == cap {
                return;
            }
        }
    }
    let mut best = 0usize;
    let cap = n / 2;
    let mut basis = Vec::new();
    extend(&bilin, &in_span, &mut basis, &isotropic, &mut best, cap);
    Ok(best)
}

// --- truncated witness search over towers ---

/// Searches for an exact nontrivial zero with monomial coordinates supported
/// in the window. Sound: any vector returned is a genuine witness. Returns
/// `Ok(None)` when the window is exhausted; that is a semidecision, not a
/// proof of anisotropy.
pub fn truncated_witness_search(
    phi: &DiagForm,
    window: &TruncWindow,
) -> Result<Option<Vec<Element>>, OracleError> {
    let field = phi.field();
    let n = phi.dim();
    if n == 0 {
        return Ok(None);
    }
    // clear denominators: <num/den> and <num*den> are isometric entrywise
    // (square scaling); witnesses map back via x_i -> den_i * x_i
    let dens: Vec<Element> = phi.entries().iter().map(denominator_element).collect();
    let cleared: Vec<Element> =
        phi.entries().iter().zip(&dens).map(|(e, d)| e.mul(&d.square())).collect();

    // uniform integer scaling of all exponents
    let mut denom_lcm: BigInt = BigInt::one();
    for e in &cleared {
        for mono in e.num_poly().keys() {
            for c in mono {
                denom_lcm = num::Integer::lcm(&denom_lcm, c.denom());
            }
        }
    }
    for b in 1..=window.denom_cap {
        denom_lcm = num::Integer::lcm(&denom_lcm, &BigInt::from(b));
    }
    let scale = denom_lcm;

    let entry_terms: Vec<Vec<(Vec<i64>, BaseElem)>> = cleared
        .iter()
        .map(|e| e.num_poly().iter().map(|(m, c)| (scale_mono(m, &scale), c.clone())).collect())
        .collect();

    let monomials = window_monomials(field, window, &scale);
    let coeffs = coefficient_options(field, window);
    let mut options: Vec<Option<(Vec<i64>, BaseElem, Element)>> = vec![None];
    for (mexps, melem) in &monomials {
        for (c, celem) in &coeffs {
            options.push(Some((mexps.clone(), c.clone(), celem.mul(melem))));
        }
    }
    let per = options.len() as u128;
    let total = per.saturating_pow(n as u32);
    if total > window.budget {
        return Err(OracleError::BudgetExceeded { candidates: total, budget: window.budget });
    }

    let squares: Vec<Option<(Vec<i64>, BaseElem)>> = options
        .iter()
        .map(|o| {
            o.as_ref().map(|(exps, c, _)| {
                let sq_exps: Vec<i64> = exps.iter().map(|e| 2 * e).collect();
                (sq_exps, mul_coeff(field, c, c))
            })
        })
        .collect();

    let mut idx = vec![0usize; n];
    let mut acc: BTreeMap<Vec<i64>, BaseElem> = BTreeMap::new();
    loop {
        let mut carried = true;
        for d in idx.iter_mut() {
            *d += 1;
            if *d < options.len() {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            return Ok(None);
        }
        acc.clear();
        for (i, &oi) in idx.iter().enumerate() {
            let Some((sq_exps, sq_c)) = &squares[oi] else { continue };
            for (m, c) in &entry_terms[i] {
                let key: Vec<i64> = m.iter().zip(sq_exps).map(|(a, b)| a + b).collect();
                let val = mul_coeff(field, c, sq_c);
                match acc.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        if !val.is_zero() {
                            e.insert(val);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = add_coeff(field, e.get(), &val);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            e.insert(sum);
                        }
                    }
                }
            }
        }
        if acc.is_empty() {
            let w: Vec<Element> = idx
                .iter()
                .enumerate()
                .map(|(i, &oi)| match &options[oi] {
                    None => field.zero(),
                    Some((_, _, elem)) => elem.mul(&dens[i]),
                })
                .collect();
            debug_assert!(phi.eval(&w).expect("dims match").is_zero());
            return Ok(Some(w));
        }
    }
}

fn denominator_element(e: &Element) -> Element {
    Element::from_num_poly(e.field().clone(), e.den_poly().clone())
}

fn scale_mono(m: &[BigRational], scale: &BigInt) -> Vec<i64> {
    use num::ToPrimitive;
    m.iter()
        .map(|c| {
            let v = c * BigRational::from_integer(scale.clone());
            debug_assert!(v.is_integer());
            v.to_integer().to_i64().expect("scaled exponent fits i64")
        })
        .collect()
}

/// Monomials with per-level exponents in the window, small total exponent
/// first, paired with scaled integer exponent keys.
fn window_monomials(field: &Field, window: &TruncWindow, scale: &BigInt) -> Vec<(Vec<i64>, Element)> {
    let mut per_level: Vec<Vec<BigRational>> = Vec::new();
    for lv in field.levels() {
        let mut exps = Vec::new();
        match lv {
            LevelKind::LaurentZ(_) => {
                for e in window.lo..=window.hi {
                    exps.push(BigRational::from_integer(e.into()));
                }
            }
            LevelKind::PuiseuxQ(_) => {
                for b in 1..=window.denom_cap as i64 {
                    for a in window.lo * b..=window.hi * b {
                        let r = BigRational::new(a.into(), b.into());
                        if !exps.contains(&r) {
                            exps.push(r);
                        }
                    }
                }
                exps.sort();
            }
        }
        per_level.push(exps);
    }
    let mut monos: Vec<Vec<BigRational>> = vec![vec![]];
    for level_exps in &per_level {
        let mut next = Vec::new();
        for m in &monos {
            for e in level_exps {
                let mut m2 = m.clone();
                m2.push(e.clone());
                next.push(m2);
            }
        }
        monos = next;
    }
    monos.sort_by_key(|m| {
        let weight: BigRational = m.iter().map(|e| e.abs()).sum();
        (weight, m.clone())
    });
    monos
        .into_iter()
        .map(|m| {
            let mut elem = field.one();
            for (i, e) in m.iter().enumerate() {
                if !e.is_zero() {
                    elem = elem.mul(
                        &field
                            .var_pow(field.levels()[i].var(), e.clone())
                            .expect("window exponents are valid"),
                    );
                }
            }
            (scale_mono(&m, scale), elem)
        })
        .collect()
}

fn coefficient_options(field: &Field, window: &TruncWindow) -> Vec<(BaseElem, Element)> {
    match (&window.coeffs, field.base()) {
        (CoeffDomain::FullBase, BaseKind::FiniteField(_)) => field
            .gf()
            .unwrap()
            .all_elements()
            .into_iter()
            .filter(|v| !v.is_empty())
            .map(|v| (BaseElem::Fq(v.clone()), field.gf_constant(v)))
            .collect(),
        (CoeffDomain::FullBase, _) => coefficient_options(
            field,
            &TruncWindow {
                coeffs: CoeffDomain::Rationals(vec![(1, 1), (-1, 1), (2, 1), (-2, 1)]),
                ..window.clone()
            },
        ),
        (CoeffDomain::Rationals(sample), _) => sample
            .iter()
            .filter(|(a, _)| *a != 0)
            .map(|(a, b)| {
                let r = BigRational::new((*a).into(), (*b).into());
                (BaseElem::Rat(r.clone()), field.from_big_rational(&r).expect("rational coefficient"))
            })
            .collect(),
    }
}

fn mul_coeff(field: &Field, a: &BaseElem, b: &BaseElem) -> BaseElem {
    match (a, b) {
        (BaseElem::Fq(x), BaseElem::Fq(y)) => BaseElem::Fq(field.gf().unwrap().mul(x, y)),
        (BaseElem::Rat(x), BaseElem::Rat(y)) => BaseElem::Rat(x * y),
        _ => unreachable!("mixed coefficient kinds"),
    }
}

fn add_coeff(field: &Field, a: &BaseElem, b: &BaseElem) -> BaseElem {
    match (a, b) {
        (BaseElem::Fq(x), BaseElem::Fq(y)) => BaseElem::Fq(field.gf().unwrap().add(x, y)),
        (BaseElem::Rat(x), BaseElem::Rat(y)) => BaseElem::Rat(x + y),
        _ => unreachable!("mixed coefficient kinds"),
    }
}

// --- agreement contract ---

/// Outcome of running the engine/oracle agreement contract on a sampled
/// family of forms.
#[derive(Debug, Clone, Serialize)]
pub struct AgreementReport {
    pub field: String,
    pub seed: u64,
    pub checked: usize,
    pub isotropic: usize,
    pub confirmed_witnesses: usize,
    pub disagreements: Vec<String>,
}

impl AgreementReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs the agreement contract on a seeded random family of monomial-entry
/// diagonal forms over `field`:
///
/// * a witness found by the oracle forces an isotropic engine verdict;
/// * an anisotropic engine verdict forces window exhaustion;
/// * over a finite base without a p-adic bottom, an isotropic engine verdict
///   must be confirmed by a witness (retrying once with a doubled window
///   before declaring disagreement), since residue-level witnesses for this
///   family lift exactly.
pub fn check_agreement(
    field: &Field,
    seed: u64,
    count: usize,
    window_radius: i64,
) -> Result<AgreementReport, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AgreementReport {
        field: field.render(),
        seed,
        checked: 0,
        isotropic: 0,
        confirmed_witnesses: 0,
        disagreements: Vec::new(),
    };
    let complete_family = matches!(field.base(), BaseKind::FiniteField(_)) && !field.has_padic();
    for case in 0..count {
        let dim = rng.gen_range(1..=4usize);
        let entries: Vec<Element> =
            (0..dim).map(|_| random_monomial_entry(field, &mut rng)).collect();
        let phi = DiagForm::new(field.clone(), entries)?;
        let verdict = phi.is_isotropic()?;
        let window = TruncWindow::radius(field, window_radius);
        let found = truncated_witness_search(&phi, &window)?;
        report.checked += 1;
        if verdict.value {
            report.isotropic += 1;
        }
        match (verdict.value, found) {
            (false, Some(w)) => {
                report.disagreements.push(format!(
                    "case {case}: engine says anisotropic but witness {} found for {}",
                    render_vec(&w),
                    phi.render()
                ));
            }
            (true, Some(_)) => {
                report.confirmed_witnesses += 1;
            }
            (true, None) if complete_family => {
                match truncated_witness_search(&phi, &window.doubled())? {
                    Some(_) => report.confirmed_witnesses += 1,
                    None => report.disagreements.push(format!(
                        "case {case}: engine says isotropic but no witness within doubled window for {}",
                        phi.render()
                    )),
                }
            }
            _ => {}
        }
    }
    Ok(report)
}

fn render_vec(w: &[Element]) -> String {
    let parts: Vec<String> = w.iter().map(|e| e.render()).collect();
    format!("({})", parts.join(", "))
}

/// A random `c * monomial` entry with exponents in {-1, 0, 1} (and an
/// optional factor of p over a p-adic bottom).
pub fn random_monomial_entry(field: &Field, rng: &mut ChaCha8Rng) -> Element {
    let mut e = random_unit_constant(field, rng);
    for lv in field.levels() {
        let exp: i64 = rng.gen_range(-1..=1);
        if exp != 0 {
            e = e.mul(&field.var_pow(lv.var(), BigRational::from_integer(exp.into())).unwrap());
        }
    }
    if field.has_padic() && rng.gen_bool(0.5) {
        let BaseKind::PadicBottom(p) = field.base() else { unreachable!() };
        e = e.mul(&field.int(*p as i64));
    }
    e
}

/// A random nonzero constant that is a unit at every level.
pub fn random_unit_constant(field: &Field, rng: &mut ChaCha8Rng) -> Element {
    match field.base() {
        BaseKind::FiniteField(_) => {
            let gf = field.gf().unwrap();
            let all = gf.all_elements();
            loop {
                let pick = all[rng.gen_range(0..all.len())].clone();
                if !pick.is_empty() {
                    return field.gf_constant(pick);
                }
            }
        }
        BaseKind::PadicBottom(p) => loop {
            let n: i64 = rng.gen_range(-9..=9);
            if n != 0 && n.unsigned_abs() % p != 0 {
                return field.int(n);
            }
        },
        _ => loop {
            let n: i64 = rng.gen_range(-9..=9);
            if n != 0 {
                return field.int(n);
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_base_examples() {
        let f5 = Field::finite(5, &[]).unwrap();
        let phi = DiagForm::new(f5.clone(), vec![f5.one(), f5.one()]).unwrap();
        let w = exhaustive_isotropy_base(&phi).unwrap().expect("isotropic");
        assert!(phi.eval(&w).unwrap().is_zero());

        let phi = DiagForm::new(f5.clone(), vec![f5.one(), f5.int(2)]).unwrap();
        assert!(exhaustive_isotropy_base(&phi).unwrap().is_none());

        let f3 = Field::finite(3, &[]).unwrap();
        let phi = DiagForm::new(f3.clone(), vec![f3.one(), f3.one(), f3.one()]).unwrap();
        let w = exhaustive_isotropy_base(&phi).unwrap().expect("isotropic");
        assert!(phi.eval(&w).unwrap().is_zero());
    }

    #[test]
    fn truncated_search_examples() {
        let k = Field::finite(5, &["t"]).unwrap();
        let t = k.var("t").unwrap();
        let phi = DiagForm::new(k.clone(), vec![k.one(), t.powi(2).unwrap()]).unwrap();
        let window = TruncWindow::radius(&k, 2);
        let w = truncated_witness_search(&phi, &window).unwrap().expect("isotropic");
        assert!(phi.eval(&w).unwrap().is_zero());

        let phi = DiagForm::new(k.clone(), vec![k.one(), t.clone()]).unwrap();
        let window = TruncWindow { lo: -2, hi: 3, ..TruncWindow::radius(&k, 2) };
        assert!(truncated_witness_search(&phi, &window).unwrap().is_none());

        let phi = DiagForm::new(k.clone(), vec![k.one(), k.int(-1)]).unwrap();
        let w = truncated_witness_search(&phi, &TruncWindow::radius(&k, 1))
            .unwrap()
            .expect("hyperbolic");
        assert!(phi.eval(&w).unwrap().is_zero());
    }

    #[test]
    fn truncated_search_respects_budget() {
        let k = Field::finite(5, &["t"]).unwrap();
        let phi = DiagForm::new(k.clone(), vec![k.one(); 6]).unwrap();
        let window = TruncWindow { budget: 10, ..TruncWindow::radius(&k, 3) };
        assert!(matches!(
            truncated_witness_search(&phi, &window),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn witt_index_base_examples() {
        let f5 = Field::finite(5, &[]).unwrap();
        let phi =
            DiagForm::new(f5.clone(), vec![f5.one(), f5.int(2), f5.int(3), f5.int(4)]).unwrap();
        assert_eq!(witt_index_base(&phi).unwrap(), 2);

        let phi = DiagForm::new(f5.clone(), vec![f5.one(), f5.int(2)]).unwrap();
        assert_eq!(witt_index_base(&phi).unwrap(), 0);

        let phi =
            DiagForm::new(f5.clone(), vec![f5.one(), f5.int(-1), f5.one(), f5.int(-1)]).unwrap();
        assert_eq!(witt_index_base(&phi).unwrap(), 2);
    }

    #[test]
    fn agreement_contract_over_gf5_laurent() {
        let k = Field::finite(5, &["t"]).unwrap();
        let report = check_agreement(&k, 42, 60, 2).unwrap();
        assert!(report.ok(), "disagreements: {:?}", report.disagreements);
        assert!(report.isotropic > 0);
        assert_eq!(report.isotropic, report.confirmed_witnesses);
    }
}
