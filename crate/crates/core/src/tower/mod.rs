//! Henselian valued field towers and their exact element arithmetic.
//!
//! A [`FieldDesc`] names a base field and an ordered stack of series levels
//! (innermost first). The corresponding tower `K = base((t1))...((tn))` is
//! henselian with residue characteristic different from 2, which is what the
//! decision procedures in [`crate::qform`] rely on. Elements live in the
//! computable rational-function subfield of the tower; verdicts are about the
//! full tower, of which that subfield is dense.

mod base;
mod element;

pub use base::{padic_residue, padic_val, BaseElem, GfParams};
pub use element::Element;

use num::rational::BigRational;
use num::{Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("finite field order {0} must be an odd prime power")]
    EvenOrder(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("finite field order {0} exceeds the supported budget")]
    OrderTooLarge(u64),
    #[error("p-adic bottom prime {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("duplicate level variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid level variable `{0}`")]
    BadVariable(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ElemError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no valuation")]
    ZeroValuation,
    #[error("negative valuation: element is not in the valuation ring")]
    NegativeValuation,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("exponent of `{0}` must be an integer at a Laurent level")]
    NonIntegerExponent(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("the base field has no residue map")]
    NoResidueField,
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("variable `{0}` is a square in the tower and must be positive")]
    BadOrdering(String),
    #[error("signs require a real closed base")]
    NonRealBase,
}

/// Base of a tower. Residue characteristic is odd everywhere, so `2` is a
/// unit at every level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum BaseKind {
    /// `GF(q)` with `q` an odd prime power.
    FiniteField(u64),
    /// A real closed field; coefficients are rationals interpreted inside it.
    RealClosed,
    /// A quadratically closed field of characteristic 0 whose square-root
    /// closure admits no even-degree finite extensions (e.g. an algebraically
    /// closed field of characteristic 0).
    QuadClosed,
    /// `Q_p` for an odd prime, carried as exact rationals; contributes one
    /// implicit Z-valued level below all explicit levels.
    PadicBottom(u64),
}

/// One series level of the tower.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum LevelKind {
    /// Laurent series level: value group `Z`.
    LaurentZ(String),
    /// Puiseux series level: value group `Q` (2-divisible, so it contributes
    /// no square-class parity bit).
    PuiseuxQ(String),
}

impl LevelKind {
    pub fn var(&self) -> &str {
        match self {
            LevelKind::LaurentZ(v) | LevelKind::PuiseuxQ(v) => v,
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, LevelKind::LaurentZ(_))
    }
}

/// Tower descriptor: base plus levels, innermost first (the last level is the
/// topmost valuation, i.e. the one residue maps strip first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldDesc {
    pub base: BaseKind,
    pub levels: Vec<LevelKind>,
}

#[derive(Debug)]
pub(crate) struct FieldInner {
    pub desc: FieldDesc,
    pub gf: Option<GfParams>,
    residue: OnceLock<Option<Field>>,
}

/// Cheap-to-clone handle to a validated tower. All element operations hang
/// off this handle so coefficient arithmetic always has its context.
#[derive(Clone)]
pub struct Field(pub(crate) Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.render())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(desc: FieldDesc) -> Result<Field, FieldError> {
        let gf = match desc.base {
            BaseKind::FiniteField(q) => Some(GfParams::new(q)?),
            BaseKind::PadicBottom(p) => {
                let params = GfParams::new(p)?;
                if params.k != 1 {
                    return Err(FieldError::NotOddPrime(p));
                }
                None
            }
            _ => None,
        };
        let mut seen = std::collections::HashSet::new();
        for lv in &desc.levels {
            let v = lv.var();
            if v.is_empty()
                || !v.chars().next().unwrap().is_ascii_alphabetic()
                || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                || v == "g"
            {
                return Err(FieldError::BadVariable(v.to_string()));
            }
            if !seen.insert(v.to_string()) {
                return Err(FieldError::DuplicateVariable(v.to_string()));
            }
        }
        Ok(Field(Arc::new(FieldInner { desc, gf, residue: OnceLock::new() })))
    }

    pub fn finite(q: u64, laurent_vars: &[&str]) -> Result<Field, FieldError> {
        Field::new(FieldDesc {
            base: BaseKind::FiniteField(q),
            levels: laurent_vars.iter().map(|v| LevelKind::LaurentZ(v.to_string())).collect(),
        })
    }

    pub fn real_closed(laurent_vars: &[&str]) -> Result<Field, FieldError> {
        Field::new(FieldDesc {
            base: BaseKind::RealClosed,
            levels: laurent_vars.iter().map(|v| LevelKind::LaurentZ(v.to_string())).collect(),
        })
    }

    pub fn padic(p: u64, laurent_vars: &[&str]) -> Result<Field, FieldError> {
        Field::new(FieldDesc {
            base: BaseKind::PadicBottom(p),
            levels: laurent_vars.iter().map(|v| LevelKind::LaurentZ(v.to_string())).collect(),
        })
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0.desc
    }

    pub fn base(&self) -> &BaseKind {
        &self.0.desc.base
    }

    pub fn levels(&self) -> &[LevelKind] {
        &self.0.desc.levels
    }

    pub(crate) fn gf(&self) -> Option<&GfParams> {
        self.0.gf.as_ref()
    }

    pub fn has_padic(&self) -> bool {
        matches!(self.0.desc.base, BaseKind::PadicBottom(_))
    }

    /// Number of slots in a [`ValueVec`]: explicit levels plus the implicit
    /// p-adic level.
    pub fn value_slots(&self) -> usize {
        self.levels().len() + usize::from(self.has_padic())
    }

    /// For each value slot (topmost first), whether the slot ranges over `Z`
    /// (Laurent or p-adic) rather than over the 2-divisible `Q`.
    pub fn z_slots(&self) -> Vec<bool> {
        let mut out: Vec<bool> = self.levels().iter().rev().map(|l| l.is_laurent()).collect();
        if self.has_padic() {
            out.push(true);
        }
        out
    }

    /// `[vK : 2vK] = 2^(number of Z-valued slots)`.
    pub fn index2_log2(&self) -> u32 {
        self.z_slots().iter().filter(|b| **b).count() as u32
    }

    /// Is the tower real (admits field orderings)? True exactly for a
    /// real-closed base: formal series levels preserve orderability.
    pub fn is_real(&self) -> bool {
        matches!(self.base(), BaseKind::RealClosed)
    }

    /// The residue field of the topmost valuation level: the sub-tower, or
    /// `GF(p)` below a bare p-adic bottom; `None` for a bare base field.
    pub fn residue_field(&self) -> Option<Field> {
        self.0
            .residue
            .get_or_init(|| {
                if !self.levels().is_empty() {
                    let mut desc = self.desc().clone();
                    desc.levels.pop();
                    Some(Field::new(desc).expect("sub-tower of a valid tower is valid"))
                } else if let BaseKind::PadicBottom(p) = self.base() {
                    Some(Field::new(FieldDesc { base: BaseKind::FiniteField(*p), levels: vec![] })
                        .expect("GF(p) is valid"))
                } else {
                    None
                }
            })
            .clone()
    }

    /// Index of `var` in the level stack.
    pub fn level_index(&self, var: &str) -> Option<usize> {
        self.levels().iter().position(|l| l.var() == var)
    }

    pub fn render(&self) -> String {
        let mut s = match self.base() {
            BaseKind::FiniteField(q) => format!("GF({q})"),
            BaseKind::RealClosed => "RCF".to_string(),
            BaseKind::QuadClosed => "QC".to_string(),
            BaseKind::PadicBottom(p) => format!("Qp({p})"),
        };
        for lv in self.levels() {
            match lv {
                LevelKind::LaurentZ(v) => s.push_str(&format!("(({v}))")),
                LevelKind::PuiseuxQ(v) => s.push_str(&format!("(({v}:Q))")),
            }
        }
        s
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// An element of the value group: one rational per slot, topmost level first,
/// p-adic component last. Ordered lexicographically (derived `Ord` on the
/// component vector is exactly that).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueVec(pub Vec<BigRational>);

impl ValueVec {
    pub fn zero(slots: usize) -> ValueVec {
        ValueVec(vec![BigRational::zero(); slots])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) => c.is_positive(),
            None => true,
        }
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.is_nonnegative()
    }

    pub fn add(&self, other: &ValueVec) -> ValueVec {
        ValueVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ValueVec) -> ValueVec {
        ValueVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Parity bit per slot: odd integer components of Z-valued slots.
    /// Components at Puiseux slots lie in the 2-divisible group `Q`, so their
    /// bit is always false.
    pub fn parities(&self, field: &Field) -> Vec<bool> {
        self.0
            .iter()
            .zip(field.z_slots())
            .map(|(c, z)| {
                if !z {
                    return false;
                }
                debug_assert!(c.is_integer());
                num::Integer::is_odd(c.numer())
            })
            .collect()
    }
}

impl fmt::Display for ValueVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ValueVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// Canonical square class of a nonzero element: value parities per slot plus
/// whether the fully reduced leading coefficient is a square in the base.
/// Two elements have equal square classes iff their ratio is a square in the
/// tower.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SquareClass {
    /// One bit per value slot, topmost first; false at Puiseux slots.
    pub parity: Vec<bool>,
    /// True when the residue of the unit part is a base-field square.
    pub base_square: bool,
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.base_square && self.parity.iter().all(|b| !b)
    }

    /// Class of a product (square classes form an F2-vector space).
    pub fn xor(&self, other: &SquareClass) -> SquareClass {
        SquareClass {
            parity: self.parity.iter().zip(&other.parity).map(|(a, b)| a ^ b).collect(),
            base_square: !(self.base_square ^ other.base_square),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.parity.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(*b))?;
        }
        write!(f, "){}", if self.base_square { "+sq" } else { "+nonsq" })
    }
}

/// Sign assignment for the level variables of a real tower: one sign per
/// Laurent level. Puiseux variables are squares in the tower, so they are
/// forced positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerOrdering {
    /// Per level (in declaration order, innermost first): true = positive.
    pub signs: Vec<bool>,
}

impl TowerOrdering {
    /// All orderings of the tower: every sign choice at Laurent levels.
    pub fn enumerate(field: &Field) -> Vec<TowerOrdering> {
        let laurent: Vec<usize> =
            field.levels().iter().enumerate().filter(|(_, l)| l.is_laurent()).map(|(i, _)| i).collect();
        let n = laurent.len();
        (0..1u64 << n)
            .map(|mask| {
                let mut signs = vec![true; field.levels().len()];
                for (bit, &idx) in laurent.iter().enumerate() {
                    signs[idx] = mask & (1 << bit) == 0;
                }
                TowerOrdering { signs }
            })
            .collect()
    }

    pub fn all_positive(field: &Field) -> TowerOrdering {
        TowerOrdering { signs: vec![true; field.levels().len()] }
    }

    pub fn validate(&self, field: &Field) -> Result<(), ElemError> {
        if self.signs.len() != field.levels().len() {
            return Err(ElemError::FieldMismatch);
        }
        for (lv, &sign) in field.levels().iter().zip(&self.signs) {
            if !lv.is_laurent() && !sign {
                // a Puiseux variable is a square, hence positive
                return Err(ElemError::BadOrdering(lv.var().to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TowerOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *s { '+' } else { '-' })?;
        }
        Ok(())
    }
}
