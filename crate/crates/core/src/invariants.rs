//! u-invariant and strong u-invariant calculators for the supported towers,
//! plus a table of referenced classification facts.
//!
//! Both invariants transfer multiplicatively through a henselian valuation
//! with odd residue characteristic: `u(K) = [vK:2vK] * u(Kv)` and
//! `uhat(K) = [vK:2vK] * uhat(Kv)`, where `uhat` is half the supremum of
//! `u(F)` over function fields in one variable `F/K`. The base values are
//! theorems, not computations, and each carries its literature anchor; the
//! engine can nevertheless confirm the small finite-field cases by bounded
//! search, which the test suite does.

use crate::tower::{BaseKind, Field};
use serde::Serialize;
use std::fmt;

/// A value in `N ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl Count {
    pub fn finite(self) -> Option<u64> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => s.serialize_u64(*n),
            Count::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A value in `½N ∪ {∞}`, stored as twice itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfCount {
    TwiceFinite(u64),
    Infinite,
}

impl HalfCount {
    pub fn from_integer(n: u64) -> HalfCount {
        HalfCount::TwiceFinite(2 * n)
    }

    /// The value as an integer when it is one.
    pub fn as_integer(self) -> Option<u64> {
        match self {
            HalfCount::TwiceFinite(t) if t % 2 == 0 => Some(t / 2),
            _ => None,
        }
    }

    pub fn twice(self) -> Count {
        match self {
            HalfCount::TwiceFinite(t) => Count::Finite(t),
            HalfCount::Infinite => Count::Infinite,
        }
    }

    fn scale(self, factor: u64) -> HalfCount {
        match self {
            HalfCount::TwiceFinite(t) => HalfCount::TwiceFinite(t * factor),
            HalfCount::Infinite => HalfCount::Infinite,
        }
    }
}

impl fmt::Display for HalfCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfCount::TwiceFinite(t) if t % 2 == 0 => write!(f, "{}", t / 2),
            HalfCount::TwiceFinite(t) => write!(f, "{}/2", t),
            HalfCount::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for HalfCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            HalfCount::TwiceFinite(t) if t % 2 == 0 => s.serialize_u64(t / 2),
            HalfCount::TwiceFinite(t) => s.serialize_f64(*t as f64 / 2.0),
            HalfCount::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Provenance for one base value used in a report.
#[derive(Debug, Clone, Serialize)]
pub struct BaseFact {
    pub quantity: String,
    pub base: String,
    pub value: String,
    pub anchor: String,
}

/// Full invariant report for a tower (`ureport_v1`).
#[derive(Debug, Clone, Serialize)]
pub struct UReport {
    pub field: String,
    pub u: Count,
    pub uhat: HalfCount,
    /// `[vK : 2vK]`
    pub index2: u64,
    /// `2 * uhat`: the common bound on `u(F)` over function fields in one
    /// variable `F/K`.
    pub ffiov_u_bound: Count,
    pub base_facts: Vec<BaseFact>,
}

fn base_u(base: &BaseKind) -> (u64, &'static str) {
    match base {
        // anisotropic binary forms exist, every ternary form is isotropic
        BaseKind::FiniteField(_) => (2, "Chevalley-Warning; classical"),
        // torsion = signature zero, and definite forms are the only
        // anisotropic ones, so no nonzero anisotropic torsion form exists
        BaseKind::RealClosed => (0, "Elman-Lam 1973 (general u-invariant)"),
        BaseKind::QuadClosed => (1, "one square class"),
        // u(Q_p) = [Z:2Z] * u(F_p) = 4 by the henselian transfer
        BaseKind::PadicBottom(_) => (4, "Springer 1955; Durfee 1948"),
    }
}

fn base_uhat(base: &BaseKind) -> (u64, &'static str) {
    match base {
        // u(F) = 4 for function fields in one variable over GF(q), q odd
        BaseKind::FiniteField(_) => (2, "Hasse-Minkowski over global function fields; classical"),
        // RCF(sqrt(-1)) is algebraically closed, so u(F) = 2 for every
        // function field in one variable
        BaseKind::RealClosed => (1, "Elman-Wadsworth 1987; Tsen-Lang theory"),
        BaseKind::QuadClosed => (1, "Tsen 1936; Lang 1952 (C_1 fields)"),
        // u(F) = 8 for function fields in one variable over Q_p, p odd
        BaseKind::PadicBottom(_) => (4, "Parimala-Suresh 2010; Harbater-Hartmann-Krashen 2009"),
    }
}

/// The general u-invariant of the tower: the transfer
/// `u(K) = [vK:2vK] * u(Kv)` applied down to the base value.
pub fn u_of(field: &Field) -> Count {
    Count::Finite(base_u(field.base()).0 << field.index2_log2())
}

/// The generalised strong u-invariant of the tower, by the same transfer.
pub fn uhat_of(field: &Field) -> HalfCount {
    HalfCount::from_integer(base_uhat(field.base()).0).scale(1 << field.index2_log2())
}

/// Whether adjoining a square root of -1 to the base leaves no finite field
/// extension of even degree; equivalent to `u(F) = 2` for every function
/// field in one variable over it, and implies the strong u-invariant is 1.
pub fn herquacl(base: &BaseKind) -> bool {
    match base {
        // GF(q^2)/GF(q) and the unramified quadratic extension of Q_p are
        // even-degree extensions surviving the square-root closure
        BaseKind::FiniteField(_) | BaseKind::PadicBottom(_) => false,
        BaseKind::RealClosed | BaseKind::QuadClosed => true,
    }
}

/// Full report for a tower.
pub fn report(field: &Field) -> UReport {
    let (bu, bu_anchor) = base_u(field.base());
    let (bh, bh_anchor) = base_uhat(field.base());
    let base_name = match field.base() {
        BaseKind::FiniteField(q) => format!("GF({q})"),
        BaseKind::RealClosed => "RCF".to_string(),
        BaseKind::QuadClosed => "QC".to_string(),
        BaseKind::PadicBottom(p) => format!("Qp({p})"),
    };
    let uhat = uhat_of(field);
    UReport {
        field: field.render(),
        u: u_of(field),
        uhat,
        index2: 1 << field.index2_log2(),
        ffiov_u_bound: uhat.twice(),
        base_facts: vec![
            BaseFact {
                quantity: "u".to_string(),
                base: base_name.clone(),
                value: bu.to_string(),
                anchor: bu_anchor.to_string(),
            },
            BaseFact {
                quantity: "uhat".to_string(),
                base: base_name,
                value: bh.to_string(),
                anchor: bh_anchor.to_string(),
            },
        ],
    }
}

/// One row of the referenced-facts table.
#[derive(Debug, Clone, Serialize)]
pub struct Fact {
    pub id: &'static str,
    pub hypothesis: &'static str,
    pub statement: &'static str,
    pub anchor: &'static str,
}

/// Referenced classification facts and open questions, served as data. These
/// are cited theorems about function fields and dyadic valuations that are
/// out of computational reach at desk scale; the calculators above consume
/// only the resulting formulas.
pub fn facts_table() -> Vec<Fact> {
    vec![
        Fact {
            id: "HENS-TRANSFER",
            hypothesis: "2-henselian valuation, char(Kv) != 2",
            statement: "u(K) = [vK:2vK] * u(Kv)",
            anchor: "Durfee 1948; Springer 1955",
        },
        Fact {
            id: "STRONG-TRANSFER",
            hypothesis: "henselian valuation, char(Kv) != 2",
            statement: "uhat(K) = [vK:2vK] * uhat(Kv)",
            anchor: "Harbater-Hartmann-Krashen 2009 (complete discrete case); Scheiderer 2009 (real case)",
        },
        Fact {
            id: "MMW",
            hypothesis: "discrete, henselian, char != 2 or degree-of-imperfection condition",
            statement: "u(K)=2u(Kv)",
            anchor: "Kaplansky 1953; Mamone-Moresi-Wadsworth 1991, Thm 2",
        },
        Fact {
            id: "LANG",
            hypothesis: "henselian discretely valued, char(K)=0, algebraically closed residue field",
            statement: "K is a C1-field; uhat(K) = 2",
            anchor: "Lang 1952, Thm 10",
        },
        Fact {
            id: "PS",
            hypothesis: "henselian discretely valued, char(K)=0, char(Kv)=2, Kv perfect",
            statement: "u(F)=8 if K has a finite field extension of even degree, and otherwise u(F)=4",
            anchor: "Parimala-Suresh 2014, Thm 4.7",
        },
        Fact {
            id: "ET",
            hypothesis: "henselian valuation, char(Kv)=2, nonsingular form",
            statement: "the form contains a v-tame binary subform iff it becomes isotropic over some v-inertial extension",
            anchor: "Elomary-Tignol 2011, Thm 16",
        },
        Fact {
            id: "TAME-REP-LIFT",
            hypothesis: "2-henselian valuation, d integral with 1-4d a unit",
            statement: "residues represented by X1^2+X1X2+dX2^2 over Kv lift to representations over K",
            anchor: "henselian root lifting for quadratics; Elomary-Tignol 2011",
        },
        Fact {
            id: "TAME-NORM-COSET",
            hypothesis: "2-henselian valuation, Kv perfect of characteristic 2, anisotropic v-tame binary form",
            statement: "the nonzero represented elements form one coset of K*/(squares times units)",
            anchor: "Elomary-Tignol 2011",
        },
        Fact {
            id: "HERQUACL",
            hypothesis: "none",
            statement: "uhat(K)=1 iff K(sqrt(-1)) has no finite extension of even degree, otherwise uhat(K) >= 2",
            anchor: "Elman-Wadsworth 1987",
        },
        Fact {
            id: "Q-UHAT-RATFF",
            hypothesis: "open question",
            statement: "is uhat(K(X)) = 2*uhat(K)?",
            anchor: "open",
        },
        Fact {
            id: "Q-UHAT-FINEXT",
            hypothesis: "open question",
            statement: "does uhat(K') = uhat(K) hold for every finite field extension K'/K?",
            anchor: "open",
        },
        Fact {
            id: "Q-UHAT-INT",
            hypothesis: "open question",
            statement: "is uhat(K) always an integer (and a power of 2 when finite)?",
            anchor: "open",
        },
    ]
}

/// Rows whose id matches the query exactly (empty for unknown ids).
pub fn facts_query(id: &str) -> Vec<Fact> {
    facts_table().into_iter().filter(|f| f.id == id).collect()
}
