//! Quadratic form decision procedures over henselian valued field towers.
//!
//! Regular diagonal forms are split along the square classes of their entry
//! values into coset-scaled unimodular parts; isotropy, hyperbolicity,
//! torsion and the Witt decomposition are then decided by recursing into the
//! residue forms of those parts, one valuation level at a time, down to a
//! base field where closed-form classifications apply. The recursion is valid
//! over the full henselian tower because `1 + m_v` consists of squares at
//! every level.

mod construct;
mod decide;
mod gram;

pub use construct::*;
pub use decide::*;
pub use gram::*;

use crate::tower::{ElemError, Element, Field, ValueVec};
use num::rational::BigRational;
use num::{One, Zero};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("diagonal entry {0} is zero (form must be regular)")]
    ZeroEntry(usize),
    #[error("forms/elements belong to different fields")]
    FieldMismatch,
    #[error("the symmetric matrix is singular; only regular forms can be diagonalized")]
    Singular,
    #[error("entry {0} is not a unit of the valuation ring")]
    NonUnimodularEntry(usize),
    #[error("signatures require a real closed base")]
    NonRealBase,
    #[error("use isotropy to test representation of zero")]
    ZeroRepresentand,
    #[error("representative values are dependent modulo 2vK")]
    DependentRepresentatives,
    #[error("the supplied vectors do not decompose c as a sum of 2^k squares")]
    BadSquareDecomposition,
    #[error(transparent)]
    Elem(#[from] ElemError),
}

/// A regular diagonal quadratic form `<a_1, ..., a_n>`: all entries nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagForm {
    field: Field,
    entries: Vec<Element>,
}

impl DiagForm {
    pub fn new(field: Field, entries: Vec<Element>) -> Result<DiagForm, FormError> {
        for (i, e) in entries.iter().enumerate() {
            if *e.field() != field {
                return Err(FormError::FieldMismatch);
            }
            if e.is_zero() {
                return Err(FormError::ZeroEntry(i));
            }
        }
        Ok(DiagForm { field, entries })
    }

    pub fn empty(field: Field) -> DiagForm {
        DiagForm { field, entries: vec![] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    /// Orthogonal sum.
    pub fn orth(&self, other: &DiagForm) -> Result<DiagForm, FormError> {
        if self.field != other.field {
            return Err(FormError::FieldMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(DiagForm { field: self.field.clone(), entries })
    }

    /// `c * phi`, entrywise scaling by a nonzero element.
    pub fn scale(&self, c: &Element) -> Result<DiagForm, FormError> {
        if *c.field() != self.field {
            return Err(FormError::FieldMismatch);
        }
        if c.is_zero() {
            return Err(FormError::ZeroEntry(0));
        }
        Ok(DiagForm {
            field: self.field.clone(),
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        })
    }

    /// `m x phi`, the m-fold orthogonal sum.
    pub fn times(&self, m: usize) -> DiagForm {
        let mut entries = Vec::with_capacity(m * self.dim());
        for _ in 0..m {
            entries.extend(self.entries.iter().cloned());
        }
        DiagForm { field: self.field.clone(), entries }
    }

    /// `-phi`.
    pub fn negate(&self) -> DiagForm {
        DiagForm { field: self.field.clone(), entries: self.entries.iter().map(|e| e.neg()).collect() }
    }

    /// Product of the diagonal entries (the determinant of the form).
    pub fn det(&self) -> Element {
        self.entries.iter().fold(self.field.one(), |acc, e| acc.mul(e))
    }

    /// Evaluates the form at a vector.
    pub fn eval(&self, x: &[Element]) -> Result<Element, FormError> {
        if x.len() != self.dim() {
            return Err(FormError::FieldMismatch);
        }
        let mut acc = self.field.zero();
        for (a, xi) in self.entries.iter().zip(x) {
            if *xi.field() != self.field {
                return Err(FormError::FieldMismatch);
            }
            acc = acc.add(&a.mul(&xi.square()));
        }
        Ok(acc)
    }

    pub fn render(&self) -> String {
        let inner: Vec<String> = self.entries.iter().map(|e| e.render()).collect();
        format!("<{}>", inner.join(", "))
    }

    pub(crate) fn rendered_entries(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.render()).collect()
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for DiagForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// One block of a coset decomposition: a canonical monomial representative
/// and the unimodular form it scales.
#[derive(Debug, Clone)]
pub struct CosetPart {
    pub rep: Element,
    pub parity: Vec<bool>,
    pub unimodular: DiagForm,
    /// positions of this part's entries in the original form
    pub positions: Vec<usize>,
}

/// Decomposition `phi ~ c_1 phi_1 |_ ... |_ c_r phi_r` with distinct value
/// parities and unimodular parts, ordered by parity vector.
#[derive(Debug, Clone)]
pub struct CosetDecomp {
    pub parts: Vec<CosetPart>,
}

/// Splits a regular diagonal form along the square classes of its entry
/// values. Each entry `a = rep * s^2 * u` is rewritten with `rep` the
/// canonical monomial for the parity of `v(a)` (exponents in {0,1} per
/// Z-valued slot), the even monomial part `s^2` absorbed as a square, and
/// `u` the remaining unit.
pub fn coset_decompose(phi: &DiagForm) -> Result<CosetDecomp, FormError> {
    let field = phi.field();
    let slots = field.value_slots();
    let mut groups: std::collections::BTreeMap<Vec<bool>, (Vec<Element>, Vec<usize>)> =
        std::collections::BTreeMap::new();
    for (i, a) in phi.entries().iter().enumerate() {
        let v = a.valuation().expect("regular form entries are nonzero");
        let parity = v.parities(field);
        let rep_vec = parity_value(&parity);
        let even_vec = ValueVec(v.0.iter().zip(&rep_vec.0).map(|(c, r)| c - r).collect());
        debug_assert!(even_parts_are_even(field, &even_vec));
        let half = ValueVec(even_vec.0.iter().map(|c| c / BigRational::from_integer(2.into())).collect());
        let s = field.monomial_of_value(&half);
        let rep = field.monomial_of_value(&rep_vec);
        let u = a.div(&rep.mul(&s.square())).expect("monomials are nonzero");
        debug_assert!(u.valuation().expect("unit").is_zero());
        let slot = groups.entry(parity).or_insert_with(|| (vec![], vec![]));
        slot.0.push(u);
        slot.1.push(i);
    }
    let _ = slots;
    let parts = groups
        .into_iter()
        .map(|(parity, (entries, positions))| {
            let rep = field.monomial_of_value(&parity_value(&parity));
            let unimodular = DiagForm::new(field.clone(), entries).expect("units are nonzero");
            CosetPart { rep, parity, unimodular, positions }
        })
        .collect();
    Ok(CosetDecomp { parts })
}

fn parity_value(parity: &[bool]) -> ValueVec {
    ValueVec(
        parity
            .iter()
            .map(|b| if *b { BigRational::one() } else { BigRational::zero() })
            .collect(),
    )
}

fn even_parts_are_even(field: &Field, v: &ValueVec) -> bool {
    v.0.iter().zip(field.z_slots()).all(|(c, z)| {
        if z {
            c.is_integer() && num::Integer::is_even(c.numer())
        } else {
            true
        }
    })
}

/// Entrywise residue of a unimodular diagonal form; well-defined up to
/// isometry over the residue field.
pub fn residue_form(phi: &DiagForm) -> Result<DiagForm, FormError> {
    let field = phi.field();
    let rf = field.residue_field().ok_or(ElemError::NoResidueField)?;
    let mut entries = Vec::with_capacity(phi.dim());
    for (i, a) in phi.entries().iter().enumerate() {
        let v = a.valuation().map_err(FormError::from)?;
        if !v.is_zero() {
            return Err(FormError::NonUnimodularEntry(i));
        }
        entries.push(a.residue().expect("unit has a residue"));
    }
    DiagForm::new(rf, entries)
}

/// Result of a decision: the boolean answer, an optional exact witness
/// vector (isotropy only, and only when one is representable), and the tree
/// of coset/residue reductions that produced the answer.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub value: bool,
    pub witness: Option<Vec<Element>>,
    pub trace: Trace,
}

/// Explainability record (`trace_v1`): how a verdict decomposed into residue
/// verdicts, down to the base-field classifications.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Trace {
    Base {
        field: String,
        form: Vec<String>,
        property: String,
        value: bool,
        detail: String,
    },
    Split {
        field: String,
        form: Vec<String>,
        property: String,
        value: bool,
        parts: Vec<TracePart>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct TracePart {
    pub rep: String,
    pub unimodular: Vec<String>,
    pub residue_form: Vec<String>,
    pub child: Trace,
}

impl Trace {
    pub fn value(&self) -> bool {
        match self {
            Trace::Base { value, .. } | Trace::Split { value, .. } => *value,
        }
    }
}

/// Witt decomposition data: `phi ~ witt_index x H |_ anisotropic_part`.
#[derive(Debug, Clone, Serialize)]
pub struct WittData {
    pub witt_index: usize,
    pub anisotropic_part: DiagForm,
    pub trace: Trace,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf5t() -> Field {
        Field::finite(5, &["t"]).unwrap()
    }

    fn form(field: &Field, entries: Vec<Element>) -> DiagForm {
        DiagForm::new(field.clone(), entries).unwrap()
    }

    #[test]
    fn rejects_zero_entries() {
        let k = gf5t();
        assert_eq!(
            DiagForm::new(k.clone(), vec![k.one(), k.zero()]),
            Err(FormError::ZeroEntry(1))
        );
    }

    #[test]
    fn coset_decompose_groups_by_parity() {
        let k = gf5t();
        let t = k.var("t").unwrap();
        // <1, t, t^2, 3t^3> -> c=1: <1,1>, c=t: <1,3>
        let phi = form(
            &k,
            vec![
                k.one(),
                t.clone(),
                t.powi(2).unwrap(),
                k.int(3).mul(&t.powi(3).unwrap()),
            ],
        );
        let d = coset_decompose(&phi).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.parts[0].parity, vec![false]);
        assert_eq!(d.parts[0].rep, k.one());
        assert_eq!(d.parts[0].unimodular.entries(), &[k.one(), k.one()]);
        assert_eq!(d.parts[0].positions, vec![0, 2]);
        assert_eq!(d.parts[1].parity, vec![true]);
        assert_eq!(d.parts[1].rep, t);
        assert_eq!(d.parts[1].unimodular.entries(), &[k.one(), k.int(3)]);

        // reassembly: entrywise square-class match
        for part in &d.parts {
            for (u, &pos) in part.unimodular.entries().iter().zip(&part.positions) {
                let rebuilt = part.rep.mul(u);
                assert_eq!(
                    rebuilt.square_class().unwrap(),
                    phi.entries()[pos].square_class().unwrap()
                );
            }
        }
    }

    #[test]
    fn coset_decompose_unimodular_single_part() {
        let k = gf5t();
        let t = k.var("t").unwrap();
        let u = &k.int(2) + &t;
        let phi = form(&k, vec![k.one(), u]);
        let d = coset_decompose(&phi).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].rep, k.one());
    }

    #[test]
    fn coset_decompose_three_parities() {
        let k = Field::finite(5, &["t", "s"]).unwrap();
        let t = k.var("t").unwrap();
        let s = k.var("s").unwrap();
        let phi = form(&k, vec![t.clone(), s.clone(), t.mul(&s)]);
        let d = coset_decompose(&phi).unwrap();
        assert_eq!(d.parts.len(), 3);
        for p in &d.parts {
            assert_eq!(p.unimodular.dim(), 1);
        }
    }

    #[test]
    fn residue_form_examples() {
        let k = Field::finite(7, &["t"]).unwrap();
        let t = k.var("t").unwrap();
        let a = &k.int(3) + &t;
        let b = k.int(2).div(&(&k.one() + &t)).unwrap();
        let phi = form(&k, vec![a, b]);
        let res = residue_form(&phi).unwrap();
        let f7 = Field::finite(7, &[]).unwrap();
        assert_eq!(res.entries(), &[f7.int(3), f7.int(2)]);

        let bad = form(&k, vec![t]);
        assert_eq!(residue_form(&bad), Err(FormError::NonUnimodularEntry(0)));

        let kq = Field::padic(3, &["t"]).unwrap();
        let phi = form(&kq, vec![&kq.int(5) + &kq.int(3).mul(&kq.var("t").unwrap())]);
        let res = residue_form(&phi).unwrap();
        assert_eq!(res.entries(), &[Field::padic(3, &[]).unwrap().int(5)]);
    }

    #[test]
    fn padic_coset_decompose() {
        let q3 = Field::padic(3, &[]).unwrap();
        let phi = form(&q3, vec![q3.int(5), q3.int(18)]);
        let d = coset_decompose(&phi).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].unimodular.entries(), &[q3.int(5), q3.int(2)]);
    }
}
