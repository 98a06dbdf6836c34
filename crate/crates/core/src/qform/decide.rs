//! Isotropy, hyperbolicity, torsion, Witt decomposition, Witt equivalence,
//! representation and signatures.
//!
//! Over a tower, every decision reduces along the coset decomposition to the
//! corresponding decisions for the residue forms: a form is isotropic iff
//! some residue form is, and hyperbolic or torsion iff all residue forms are.
//! At the base the classifications are closed-form: finite fields by
//! dimension and discriminant, real closed fields by sign counts,
//! quadratically closed fields by dimension alone.

use super::{coset_decompose, residue_form, DiagForm, FormError, Trace, TracePart, Verdict, WittData};
use crate::tower::{BaseElem, BaseKind, Element, Field, TowerOrdering, ValueVec};
use num::rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Property {
    Isotropic,
    Hyperbolic,
    Torsion,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Isotropic => "isotropic",
            Property::Hyperbolic => "hyperbolic",
            Property::Torsion => "torsion",
        }
    }
}

impl DiagForm {
    /// Does the form have a nontrivial zero over the tower?
    pub fn is_isotropic(&self) -> Result<Verdict, FormError> {
        decide(self, Property::Isotropic)
    }

    /// Is the form an orthogonal sum of hyperbolic planes?
    pub fn is_hyperbolic(&self) -> Result<Verdict, FormError> {
        decide(self, Property::Hyperbolic)
    }

    /// Does some integer multiple `m x phi` become hyperbolic?
    pub fn is_torsion(&self) -> Result<Verdict, FormError> {
        decide(self, Property::Torsion)
    }

    /// Witt index and anisotropic part. The anisotropic part is assembled
    /// from lifts of the residue-level anisotropic parts, scaled by the coset
    /// representatives.
    pub fn witt_decompose(&self) -> Result<WittData, FormError> {
        witt(self)
    }

    /// Witt equivalence of two forms over the same tower, decided through the
    /// hyperbolicity of `phi |_ -psi`.
    pub fn witt_equivalent(&self, other: &DiagForm) -> Result<Verdict, FormError> {
        if self.field() != other.field() {
            return Err(FormError::FieldMismatch);
        }
        let verdict = self.orth(&other.negate())?.is_hyperbolic()?;
        debug_assert_eq!(
            verdict.value,
            witt_equivalent_by_residues(self, other)?,
            "the residue-wise criterion must agree"
        );
        Ok(verdict)
    }

    /// Does the form represent the nonzero element `b`? A regular isotropic
    /// form is universal; otherwise representation reduces to the isotropy of
    /// `phi |_ <-b>`.
    pub fn represents(&self, b: &Element) -> Result<Verdict, FormError> {
        if b.field() != self.field() {
            return Err(FormError::FieldMismatch);
        }
        if b.is_zero() {
            return Err(FormError::ZeroRepresentand);
        }
        if self.dim() >= 1 {
            let iso = self.is_isotropic()?;
            if iso.value {
                return Ok(Verdict { value: true, witness: None, trace: iso.trace });
            }
        }
        let ext = self.orth(&DiagForm::new(self.field().clone(), vec![b.neg()])?)?;
        let v = ext.is_isotropic()?;
        let witness = v.witness.as_ref().and_then(|w| {
            let last = w.last().expect("witness length matches dim + 1");
            if last.is_zero() {
                return None;
            }
            let inv = last.inv().expect("nonzero");
            Some(w[..self.dim()].iter().map(|x| x.mul(&inv)).collect::<Vec<_>>())
        });
        Ok(Verdict { value: v.value, witness, trace: v.trace })
    }

    /// Signature under a sign assignment for the level variables; requires a
    /// real closed base.
    pub fn signature(&self, ordering: &TowerOrdering) -> Result<i64, FormError> {
        if !self.field().is_real() {
            return Err(FormError::NonRealBase);
        }
        let mut sig = 0i64;
        for a in self.entries() {
            sig += a.sign_at(ordering).map_err(FormError::from)? as i64;
        }
        Ok(sig)
    }
}

/// Residue-wise Witt equivalence: split both forms by value parity and
/// compare the residue forms coset by coset, recursively. Used as an
/// independent route to cross-check `witt_equivalent`.
pub fn witt_equivalent_by_residues(phi: &DiagForm, psi: &DiagForm) -> Result<bool, FormError> {
    if phi.field() != psi.field() {
        return Err(FormError::FieldMismatch);
    }
    let field = phi.field();
    if field.residue_field().is_none() {
        return Ok(phi.orth(&psi.negate())?.is_hyperbolic()?.value);
    }
    let dp = coset_decompose(phi)?;
    let dq = coset_decompose(psi)?;
    let mut parities: Vec<Vec<bool>> = dp.parts.iter().chain(&dq.parts).map(|p| p.parity.clone()).collect();
    parities.sort();
    parities.dedup();
    for parity in parities {
        let lhs = dp
            .parts
            .iter()
            .find(|p| p.parity == parity)
            .map(|p| residue_form(&p.unimodular))
            .transpose()?
            .unwrap_or_else(|| DiagForm::empty(field.residue_field().expect("tower level")));
        let rhs = dq
            .parts
            .iter()
            .find(|p| p.parity == parity)
            .map(|p| residue_form(&p.unimodular))
            .transpose()?
            .unwrap_or_else(|| DiagForm::empty(field.residue_field().expect("tower level")));
        if !witt_equivalent_by_residues(&lhs, &rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn decide(phi: &DiagForm, prop: Property) -> Result<Verdict, FormError> {
    let field = phi.field();
    if field.residue_field().is_none() {
        return base_decide(phi, prop);
    }
    let decomp = coset_decompose(phi)?;
    // isotropy needs one isotropic residue form, the others need all of them
    let mut value = !matches!(prop, Property::Isotropic);
    let mut parts = Vec::new();
    let mut witness: Option<Vec<Element>> = None;
    for part in &decomp.parts {
        let res = residue_form(&part.unimodular)?;
        let sub = decide(&res, prop)?;
        match prop {
            Property::Isotropic => {
                if sub.value && !value {
                    value = true;
                    witness = lift_isotropy_witness(phi, part, &res, &sub);
                }
            }
            _ => value &= sub.value,
        }
        parts.push(TracePart {
            rep: part.rep.render(),
            unimodular: part.unimodular.rendered_entries(),
            residue_form: res.rendered_entries(),
            child: sub.trace,
        });
    }
    Ok(Verdict {
        value,
        witness,
        trace: Trace::Split {
            field: field.render(),
            form: phi.rendered_entries(),
            property: prop.name().to_string(),
            value,
            parts,
        },
    })
}

/// Lifts a residue-level isotropy witness through one tower level.
///
/// Writing the part's entries as `rep * s_j^2 * u_j`, a residue witness `w`
/// with `sum u_j-residues * w_j^2 = 0` lifts to coordinates `lift(w_j)/s_j`
/// provided the sum still vanishes exactly upstairs (true e.g. when the
/// units are constants in the stripped variable). The candidate is verified
/// by exact evaluation and dropped if it fails, so a returned witness is
/// always genuine.
fn lift_isotropy_witness(
    phi: &DiagForm,
    part: &super::CosetPart,
    res: &DiagForm,
    sub: &Verdict,
) -> Option<Vec<Element>> {
    let field = phi.field();
    let w = sub.witness.as_ref()?;
    debug_assert_eq!(w.len(), res.dim());
    let mut x = vec![field.zero(); phi.dim()];
    let mut scale_val: Option<ValueVec> = None;
    for (j, (&pos, wj)) in part.positions.iter().zip(w).enumerate() {
        let lifted = field.lift_from_residue(wj).ok()?;
        if lifted.is_zero() {
            continue;
        }
        // s_j = monomial of half the even part of v(entry)
        let a = &phi.entries()[pos];
        let v = a.valuation().expect("regular entry");
        let two = BigRational::from_integer(2.into());
        let half = ValueVec(
            v.0.iter()
                .zip(&part.parity)
                .map(|(c, p)| {
                    let r = if *p { c - BigRational::from_integer(1.into()) } else { c.clone() };
                    r / &two
                })
                .collect(),
        );
        let s = field.monomial_of_value(&half);
        let coord = lifted.div(&s).ok()?;
        let cv = coord.valuation().ok()?;
        scale_val = Some(match scale_val {
            None => cv,
            Some(m) => if cv < m { cv } else { m },
        });
        x[pos] = coord;
        let _ = j;
    }
    // clear negative values so the witness renders as a polynomial vector
    if let Some(mv) = scale_val {
        if !mv.is_nonnegative() {
            let clear = field.monomial_of_value(&ValueVec(mv.0.iter().map(|c| -c).collect()));
            for xi in x.iter_mut() {
                *xi = xi.mul(&clear);
            }
        }
    }
    if x.iter().all(|xi| xi.is_zero()) {
        return None;
    }
    match phi.eval(&x) {
        Ok(v) if v.is_zero() => Some(x),
        _ => None,
    }
}

fn base_decide(phi: &DiagForm, prop: Property) -> Result<Verdict, FormError> {
    let field = phi.field();
    let n = phi.dim();
    let (value, detail, witness) = match field.base() {
        BaseKind::FiniteField(q) => {
            let value = match prop {
                Property::Isotropic => match n {
                    0 | 1 => false,
                    2 => phi.entries()[0].mul(&phi.entries()[1]).neg().is_square(),
                    _ => true,
                },
                Property::Hyperbolic => {
                    n % 2 == 0 && signed_det(phi, n / 2).is_square()
                }
                Property::Torsion => true,
            };
            let witness = if value && prop == Property::Isotropic {
                base_isotropy_witness_fq(phi, *q)
            } else {
                None
            };
            let detail = match prop {
                Property::Isotropic => format!("dimension {n} over GF({q})"),
                Property::Hyperbolic => format!("dimension {n}, discriminant test over GF({q})"),
                Property::Torsion => format!("GF({q}) is nonreal"),
            };
            (value, detail, witness)
        }
        BaseKind::RealClosed => {
            let pos = phi.entries().iter().filter(|e| e.sign_at(&TowerOrdering { signs: vec![] }).unwrap() > 0).count();
            let neg = n - pos;
            let value = match prop {
                Property::Isotropic => pos > 0 && neg > 0,
                Property::Hyperbolic | Property::Torsion => pos == neg,
            };
            let witness = if value && prop == Property::Isotropic {
                base_isotropy_witness_rat(phi)
            } else {
                None
            };
            (value, format!("{pos} positive, {neg} negative entries"), witness)
        }
        BaseKind::QuadClosed => {
            let value = match prop {
                Property::Isotropic => n >= 2,
                Property::Hyperbolic => n % 2 == 0,
                Property::Torsion => true,
            };
            let witness = if value && prop == Property::Isotropic {
                base_isotropy_witness_rat(phi)
            } else {
                None
            };
            (value, format!("dimension {n} over a quadratically closed field"), witness)
        }
        BaseKind::PadicBottom(_) => unreachable!("p-adic bottoms always have a residue field"),
    };
    Ok(Verdict {
        value,
        witness,
        trace: Trace::Base {
            field: field.render(),
            form: phi.rendered_entries(),
            property: prop.name().to_string(),
            value,
            detail,
        },
    })
}

/// `disc(phi) * (-1)^m` as an element, for the hyperbolicity test.
fn signed_det(phi: &DiagForm, m: usize) -> Element {
    let d = phi.det();
    if m % 2 == 1 {
        d.neg()
    } else {
        d
    }
}

/// First nontrivial zero over GF(q) in counting order, within a budget.
fn base_isotropy_witness_fq(phi: &DiagForm, q: u64) -> Option<Vec<Element>> {
    let field = phi.field();
    let gf = field.gf().expect("finite base");
    let n = phi.dim();
    let total = (q as u128).checked_pow(n as u32)?;
    if total > 2_000_000 {
        return None;
    }
    let elems = gf.all_elements();
    let consts: Vec<BaseElem> = elems.into_iter().map(BaseElem::Fq).collect();
    let mut idx = vec![0usize; n];
    loop {
        // advance odometer
        let mut carried = true;
        for d in idx.iter_mut() {
            *d += 1;
            if *d < consts.len() {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            return None;
        }
        let x: Vec<Element> = idx
            .iter()
            .map(|&d| match &consts[d] {
                BaseElem::Fq(v) => field.gf_constant(v.clone()),
                _ => unreachable!(),
            })
            .collect();
        if phi.eval(&x).expect("dims match").is_zero() {
            return Some(x);
        }
    }
}

/// Special-case exact witnesses over rational-coefficient bases: an exactly
/// opposite pair of entries, or a ratio that is a perfect rational square.
fn base_isotropy_witness_rat(phi: &DiagForm) -> Option<Vec<Element>> {
    let field = phi.field();
    let n = phi.dim();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ratio = phi.entries()[i].div(&phi.entries()[j]).expect("nonzero").neg();
            let BaseElem::Rat(r) = ratio.constant_value()? else { return None };
            if let Some(root) = rational_sqrt(&r) {
                // a_i + a_j * root^2 = 0
                let mut x = vec![field.zero(); n];
                x[i] = field.one();
                x[j] = field.from_big_rational(&root).ok()?;
                if phi.eval(&x).ok()?.is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    use num::Signed;
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn witt(phi: &DiagForm) -> Result<WittData, FormError> {
    let field = phi.field();
    if field.residue_field().is_none() {
        return base_witt(phi);
    }
    let decomp = coset_decompose(phi)?;
    let mut witt_index = 0usize;
    let mut anis = DiagForm::empty(field.clone());
    let mut parts = Vec::new();
    for part in &decomp.parts {
        let res = residue_form(&part.unimodular)?;
        let sub = witt(&res)?;
        witt_index += sub.witt_index;
        let lifted = super::lift_form(field, &sub.anisotropic_part)?;
        anis = anis.orth(&lifted.scale(&part.rep)?)?;
        parts.push(TracePart {
            rep: part.rep.render(),
            unimodular: part.unimodular.rendered_entries(),
            residue_form: res.rendered_entries(),
            child: sub.trace,
        });
    }
    debug_assert_eq!(2 * witt_index + anis.dim(), phi.dim());
    Ok(WittData {
        witt_index,
        anisotropic_part: anis.clone(),
        trace: Trace::Split {
            field: field.render(),
            form: phi.rendered_entries(),
            property: "witt".to_string(),
            value: anis.dim() == 0,
            parts,
        },
    })
}

fn base_witt(phi: &DiagForm) -> Result<WittData, FormError> {
    let field = phi.field();
    let n = phi.dim();
    let (witt_index, anis_entries, detail) = match field.base() {
        BaseKind::FiniteField(q) => {
            if n % 2 == 0 {
                let m = n / 2;
                if signed_det(phi, m).is_square() {
                    (m, vec![], format!("even dimension, hyperbolic over GF({q})"))
                } else {
                    // anisotropic binary <1, d> with d in the class of disc *
                    // (-1)^(m-1); that class is a nonsquare here
                    let d = class_representative(field, &signed_det(phi, m - 1));
                    debug_assert!(!d.neg().is_square());
                    (m - 1, vec![field.one(), d], format!("even dimension, anisotropic binary remainder over GF({q})"))
                }
            } else {
                let m = (n - 1) / 2;
                let d = class_representative(field, &signed_det(phi, m));
                (m, vec![d], format!("odd dimension over GF({q})"))
            }
        }
        BaseKind::RealClosed => {
            let trivial = TowerOrdering { signs: vec![] };
            let pos = phi.entries().iter().filter(|e| e.sign_at(&trivial).unwrap() > 0).count();
            let neg = n - pos;
            let iw = pos.min(neg);
            let entry = if pos >= neg { field.one() } else { field.int(-1) };
            (iw, vec![entry; pos.max(neg) - iw], format!("{pos} positive, {neg} negative entries"))
        }
        BaseKind::QuadClosed => {
            let iw = n / 2;
            (iw, if n % 2 == 1 { vec![field.one()] } else { vec![] }, "quadratically closed base".to_string())
        }
        BaseKind::PadicBottom(_) => unreachable!("p-adic bottoms always have a residue field"),
    };
    let anis = DiagForm::new(field.clone(), anis_entries)?;
    debug_assert_eq!(2 * witt_index + anis.dim(), n);
    Ok(WittData {
        witt_index,
        anisotropic_part: anis.clone(),
        trace: Trace::Base {
            field: field.render(),
            form: phi.rendered_entries(),
            property: "witt".to_string(),
            value: anis.dim() == 0,
            detail,
        },
    })
}

/// `1` or the canonical nonsquare of GF(q), matching the square class of `c`.
fn class_representative(field: &Field, c: &Element) -> Element {
    if c.is_square() {
        field.one()
    } else {
        canonical_nonsquare(field)
    }
}

pub(crate) fn canonical_nonsquare(field: &Field) -> Element {
    let gf = field.gf().expect("finite base");
    for coeffs in gf.all_elements() {
        if coeffs.is_empty() {
            continue;
        }
        if !gf.is_square(&coeffs) {
            return field.gf_constant(coeffs);
        }
    }
    unreachable!("odd finite fields have nonsquares")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::FieldDesc;

    fn gf5t() -> Field {
        Field::finite(5, &["t"]).unwrap()
    }

    fn form(field: &Field, entries: Vec<Element>) -> DiagForm {
        DiagForm::new(field.clone(), entries).unwrap()
    }

    #[test]
    fn isotropy_examples() {
        let k = gf5t();
        let t = k.var("t").unwrap();
        assert!(!form(&k, vec![k.one(), t.clone()]).is_isotropic().unwrap().value);
        let v = form(&k, vec![k.one(), t.powi(2).unwrap()]).is_isotropic().unwrap();
        assert!(v.value);
        // witness must be exact when provided
        let w = v.witness.expect("constant-unit family lifts witnesses");
        assert!(form(&k, vec![k.one(), t.powi(2).unwrap()]).eval(&w).unwrap().is_zero());
        assert!(form(&k, vec![k.one(), k.int(-1)]).is_isotropic().unwrap().value);
    }

    #[test]
    fn isotropy_base_cases() {
        let f5 = Field::finite(5, &[]).unwrap();
        assert!(form(&f5, vec![f5.one(), f5.one()]).is_isotropic().unwrap().value);
        assert!(!form(&f5, vec![f5.one(), f5.int(2)]).is_isotropic().unwrap().value);
        assert!(form(&f5, vec![f5.one(), f5.int(2), f5.int(3)]).is_isotropic().unwrap().value);
        assert!(!DiagForm::empty(f5.clone()).is_isotropic().unwrap().value);

        let r = Field::real_closed(&[]).unwrap();
        assert!(form(&r, vec![r.one(), r.int(-2)]).is_isotropic().unwrap().value);
        assert!(!form(&r, vec![r.one(), r.int(2)]).is_isotropic().unwrap().value);

        let qc = Field::new(FieldDesc { base: BaseKind::QuadClosed, levels: vec![] }).unwrap();
        assert!(form(&qc, vec![qc.one(), qc.int(7)]).is_isotropic().unwrap().value);
        assert!(!form(&qc, vec![qc.int(7)]).is_isotropic().unwrap().value);
    }

    #[test]
    fn hyperbolicity_examples() {
        let k = gf5t();
        let t = k.var("t").unwrap();
        let h2 = form(&k, vec![k.one(), k.int(-1), t.clone(), t.neg()]);
        assert!(h2.is_hyperbolic().unwrap().value);
        let f5 = Field::finite(5, &[]).unwrap();
        assert!(form(&f5, vec![f5.one(), f5.one()]).is_hyperbolic().unwrap().value);
        assert!(!form(&k, vec![k.one(), t]).is_hyperbolic().unwrap().value);
        assert!(DiagForm::empty(k).is_hyperbolic().unwrap().value);
    }

    #[test]
    fn torsion_examples() {
        let rt = Field::real_closed(&["t"]).unwrap();
        let t = rt.var("t").unwrap();
        assert!(!form(&rt, vec![rt.one(), t.clone()]).is_torsion().unwrap().value);
        assert!(form(&rt, vec![rt.one(), rt.int(-1)]).is_torsion().unwrap().value);
        let k = gf5t();
        let any = form(&k, vec![k.int(3), k.var("t").unwrap()]);
        assert!(any.is_torsion().unwrap().value);
    }

    #[test]
    fn witt_examples() {
        let k = gf5t();
        let t = k.var("t").unwrap();
        let phi = form(&k, vec![k.one(), k.one(), k.one(), t.clone()]);
        let w = phi.witt_decompose().unwrap();
        assert_eq!(w.witt_index, 1);
        assert_eq!(w.anisotropic_part.entries(), &[k.one(), t.clone()]);
        assert!(!w.anisotropic_part.is_isotropic().unwrap().value);
        assert!(phi.witt_equivalent(&w.anisotropic_part).unwrap().value);

        let f5 = Field::finite(5, &[]).unwrap();
        let psi = form(&f5, vec![f5.one(), f5.int(2), f5.int(3), f5.int(4)]);
        assert_eq!(psi.witt_decompose().unwrap().witt_index, 2);

        let hyp = form(&k, vec![k.one(), k.int(-1), t.clone(), t.neg()]);
        let w = hyp.witt_decompose().unwrap();
        assert_eq!(w.witt_index, 2);
        assert_eq!(w.anisotropic_part.dim(), 0);
    }

    #[test]
    fn witt_equivalence_examples() {
        let k = gf5t();
        let t = k.var("t").unwrap();
        let a = form(&k, vec![k.one(), t.clone()]);
        let b = form(&k, vec![k.int(4), k.int(4).mul(&t)]);
        assert!(a.witt_equivalent(&b).unwrap().value);
        let c = form(&k, vec![k.int(2), t.clone()]);
        assert!(!a.witt_equivalent(&c).unwrap().value);
        assert!(a.witt_equivalent(&a).unwrap().value);
        assert_eq!(witt_equivalent_by_residues(&a, &b).unwrap(), true);
        assert_eq!(witt_equivalent_by_residues(&a, &c).unwrap(), false);
    }

    #[test]
    fn represents_examples() {
        let k = gf5t();
        let t = k.var("t").unwrap();
        let phi = form(&k, vec![k.one(), k.int(2)]);
        assert!(!phi.represents(&t).unwrap().value);
        let f5 = Field::finite(5, &[]).unwrap();
        let psi = form(&f5, vec![f5.one(), f5.one()]);
        assert!(psi.represents(&f5.int(3)).unwrap().value);
        let b = k.int(3);
        assert!(form(&k, vec![b.clone()]).represents(&b).unwrap().value);
        assert_eq!(phi.represents(&k.zero()).unwrap_err(), FormError::ZeroRepresentand);
    }

    #[test]
    fn signature_examples() {
        let k = Field::real_closed(&["t", "s"]).unwrap();
        let t = k.var("t").unwrap();
        let s = k.var("s").unwrap();
        let phi = form(&k, vec![k.one(), t.clone(), t.mul(&s).neg(), s.clone()]);
        let pos = TowerOrdering { signs: vec![true, true] };
        assert_eq!(phi.signature(&pos).unwrap(), 2);
        let psi = form(&k, vec![k.one(), k.int(-1)]);
        assert_eq!(psi.signature(&pos).unwrap(), 0);
        let tneg = TowerOrdering { signs: vec![false, true] };
        assert_eq!(form(&k, vec![t]).signature(&tneg).unwrap(), -1);
        let f5 = Field::finite(5, &[]).unwrap();
        assert_eq!(
            form(&f5, vec![f5.one()]).signature(&TowerOrdering { signs: vec![] }),
            Err(FormError::NonRealBase)
        );
    }

    #[test]
    fn padic_tower_decisions() {
        let q3 = Field::padic(3, &[]).unwrap();
        // <1, 1> over Q3: residue <1,1> over F3, -1 nonsquare -> anisotropic
        assert!(!form(&q3, vec![q3.one(), q3.one()]).is_isotropic().unwrap().value);
        // <1, 2> over Q3: residue <1,2>, -2 = 1 square -> isotropic
        assert!(form(&q3, vec![q3.one(), q3.int(2)]).is_isotropic().unwrap().value);
        // <1, 1, 1, 1> is anisotropic over Q3? -1 nonsquare mod 3; actually
        // <1,1> anisotropic and <1,1,1> has residue dim 3 -> isotropic
        assert!(form(&q3, vec![q3.one(), q3.one(), q3.one()]).is_isotropic().unwrap().value);
        // the standard 4-dim anisotropic form over Q3: <1, -u, -3, 3u> with u a nonunit... use u = -1:
        // <1, 1, 3, 3> : units part <1,1> anisotropic, 3-part <1,1> anisotropic
        assert!(!form(&q3, vec![q3.one(), q3.one(), q3.int(3), q3.int(3)]).is_isotropic().unwrap().value);
        assert!(form(&q3, vec![q3.one(), q3.one(), q3.int(3), q3.int(3), q3.int(9)])
            .is_isotropic()
            .unwrap()
            .value);
    }
}
