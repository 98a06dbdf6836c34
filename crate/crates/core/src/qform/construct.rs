//! Form constructions: lifts from the residue field, anisotropic forms built
//! from independent value-class representatives, and the hyperbolicity check
//! for scaled torsion multiples.

use super::{DiagForm, FormError, Verdict};
use crate::tower::{Element, Field};

/// Re-reads a diagonal form over the residue field as a form over the tower,
/// entrywise (constant in the stripped variable). The residue form of the
/// lift is the original form, and anisotropy is preserved.
pub fn lift_form(field: &Field, psi: &DiagForm) -> Result<DiagForm, FormError> {
    let entries = psi
        .entries()
        .iter()
        .map(|e| field.lift_from_residue(e))
        .collect::<Result<Vec<_>, _>>()?;
    let lifted = DiagForm::new(field.clone(), entries)?;
    debug_assert!(super::residue_form(&lifted).expect("lift is unimodular").entries() == psi.entries());
    Ok(lifted)
}

/// `|_ over subsets I of {1..r} of (prod_{i in I} c_i) * base`: the standard
/// anisotropic-dimension realization from representatives whose values are
/// independent in `vK/2vK`. Dimension `2^r * dim(base)`.
pub fn build_bl_form(base: &DiagForm, cs: &[Element]) -> Result<DiagForm, FormError> {
    let field = base.field();
    let mut parities = Vec::new();
    for c in cs {
        if c.field() != field {
            return Err(FormError::FieldMismatch);
        }
        if c.is_zero() {
            return Err(FormError::ZeroEntry(0));
        }
        parities.push(c.square_class()?.parity);
    }
    if !f2_independent(&parities) {
        return Err(FormError::DependentRepresentatives);
    }
    let mut out = DiagForm::empty(field.clone());
    for mask in 0u64..(1 << cs.len()) {
        let mut rep = field.one();
        for (i, c) in cs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                rep = rep.mul(c);
            }
        }
        out = out.orth(&base.scale(&rep)?)?;
    }
    Ok(out)
}

/// Gaussian elimination over F2 on the parity vectors.
fn f2_independent(rows: &[Vec<bool>]) -> bool {
    let mut basis: Vec<Vec<bool>> = Vec::new();
    for row in rows {
        let mut cur = row.clone();
        for b in &basis {
            if let Some(lead) = b.iter().position(|&x| x) {
                if cur.get(lead) == Some(&true) {
                    cur = cur.iter().zip(b).map(|(x, y)| x ^ y).collect();
                }
            }
        }
        if cur.iter().all(|&x| !x) {
            return false;
        }
        basis.push(cur);
    }
    true
}

/// Witness data accepted by [`torsion_multiple_check`]: elements whose
/// squares sum to `c` (zeros allowed), of length `2^k`.
#[derive(Debug, Clone)]
pub struct SumOfSquares {
    pub terms: Vec<Element>,
}

/// Verifies that `2^k x (theta |_ -c theta)` is hyperbolic, given a
/// certificate that `c` is a sum of `2^k` squares. The certificate is
/// validated exactly; the engine does not search for one.
pub fn torsion_multiple_check(
    theta: &DiagForm,
    c: &Element,
    k: u32,
    decomposition: &SumOfSquares,
) -> Result<Verdict, FormError> {
    let field = theta.field();
    if c.field() != field {
        return Err(FormError::FieldMismatch);
    }
    if c.is_zero() {
        return Err(FormError::BadSquareDecomposition);
    }
    if decomposition.terms.len() != 1usize << k {
        return Err(FormError::BadSquareDecomposition);
    }
    let mut sum = field.zero();
    for d in &decomposition.terms {
        if d.field() != field {
            return Err(FormError::FieldMismatch);
        }
        sum = sum.add(&d.square());
    }
    if sum != *c {
        return Err(FormError::BadSquareDecomposition);
    }
    let doubled = theta.orth(&theta.scale(c)?.negate())?;
    doubled.times(1usize << k).is_hyperbolic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::Field;

    #[test]
    fn lift_preserves_residue_and_anisotropy() {
        let k = Field::finite(5, &["t"]).unwrap();
        let f5 = k.residue_field().unwrap();
        let psi = DiagForm::new(f5.clone(), vec![f5.one(), f5.int(2)]).unwrap();
        let lifted = lift_form(&k, &psi).unwrap();
        assert_eq!(lifted.entries(), &[k.one(), k.int(2)]);
        assert!(!lifted.is_isotropic().unwrap().value);

        let one = DiagForm::new(f5.clone(), vec![f5.one()]).unwrap();
        assert_eq!(lift_form(&k, &one).unwrap().entries(), &[k.one()]);

        let kq = Field::padic(3, &["t"]).unwrap();
        let q3 = kq.residue_field().unwrap();
        let five = DiagForm::new(q3.clone(), vec![q3.int(5)]).unwrap();
        assert_eq!(lift_form(&kq, &five).unwrap().entries(), &[kq.int(5)]);
    }

    #[test]
    fn bl_form_examples() {
        let k = Field::finite(5, &["t"]).unwrap();
        let t = k.var("t").unwrap();
        let base = DiagForm::new(k.clone(), vec![k.one(), k.int(2)]).unwrap();
        let psi = build_bl_form(&base, &[t.clone()]).unwrap();
        assert_eq!(psi.dim(), 4);
        assert_eq!(psi.entries(), &[k.one(), k.int(2), t.clone(), k.int(2).mul(&t)]);
        assert!(!psi.is_isotropic().unwrap().value);

        assert_eq!(build_bl_form(&base, &[]).unwrap().entries(), base.entries());

        let k2 = Field::finite(5, &["t", "s"]).unwrap();
        let one = DiagForm::new(k2.clone(), vec![k2.one()]).unwrap();
        let psi = build_bl_form(&one, &[k2.var("t").unwrap(), k2.var("s").unwrap()]).unwrap();
        assert_eq!(psi.dim(), 4);
        assert!(!psi.is_isotropic().unwrap().value);

        // dependent representatives rejected: t and 4t have the same parity
        let dep = build_bl_form(&base, &[t.clone(), k.int(4).mul(&t)]);
        assert_eq!(dep.unwrap_err(), FormError::DependentRepresentatives);
        // a unit representative is dependent (trivial parity)
        assert_eq!(
            build_bl_form(&base, &[k.int(2)]).unwrap_err(),
            FormError::DependentRepresentatives
        );
    }

    #[test]
    fn torsion_multiple_examples() {
        let k = Field::finite(5, &["t"]).unwrap();
        let t = k.var("t").unwrap();
        let theta = DiagForm::new(k.clone(), vec![k.one(), t]).unwrap();
        // c = 2 = 1^2 + 1^2, k = 1
        let v = torsion_multiple_check(
            &theta,
            &k.int(2),
            1,
            &SumOfSquares { terms: vec![k.one(), k.one()] },
        )
        .unwrap();
        assert!(v.value);

        // c = 1, k = 0: theta |_ -theta hyperbolic
        let v = torsion_multiple_check(&theta, &k.one(), 0, &SumOfSquares { terms: vec![k.one()] }).unwrap();
        assert!(v.value);

        let rt = Field::real_closed(&["t"]).unwrap();
        let theta = DiagForm::new(rt.clone(), vec![rt.one()]).unwrap();
        let v = torsion_multiple_check(
            &theta,
            &rt.int(2),
            1,
            &SumOfSquares { terms: vec![rt.one(), rt.one()] },
        )
        .unwrap();
        assert!(v.value);

        // invalid decomposition rejected
        let bad = torsion_multiple_check(
            &theta,
            &rt.int(3),
            1,
            &SumOfSquares { terms: vec![rt.one(), rt.one()] },
        );
        assert_eq!(bad.unwrap_err(), FormError::BadSquareDecomposition);
    }
}
