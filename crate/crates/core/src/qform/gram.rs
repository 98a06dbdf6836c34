//! General (non-diagonal) quadratic forms and their diagonalization.

use super::{DiagForm, FormError};
use crate::tower::{Element, Field};
use std::collections::BTreeMap;
use std::fmt;

/// A quadratic form `sum_{i<=j} c_ij X_i X_j` given by its polynomial
/// coefficients. Singular forms are representable; diagonalization rejects
/// them.
#[derive(Debug, Clone, PartialEq)]
pub struct GramForm {
    field: Field,
    n: usize,
    /// upper-triangular coefficient map; absent entries are zero
    coeffs: BTreeMap<(usize, usize), Element>,
}

impl GramForm {
    pub fn new(
        field: Field,
        n: usize,
        coeffs: BTreeMap<(usize, usize), Element>,
    ) -> Result<GramForm, FormError> {
        for ((i, j), c) in &coeffs {
            if *i > *j || *j >= n {
                return Err(FormError::FieldMismatch);
            }
            if *c.field() != field {
                return Err(FormError::FieldMismatch);
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(GramForm { field, n, coeffs })
    }

    /// Builds the form `X S X^t` from a symmetric matrix `S`, so the
    /// polynomial coefficient of `X_i X_j` for `i < j` is `2 S_ij`.
    pub fn from_symmetric_matrix(field: Field, s: &[Vec<Element>]) -> Result<GramForm, FormError> {
        let n = s.len();
        let mut coeffs = BTreeMap::new();
        for (i, row) in s.iter().enumerate() {
            if row.len() != n {
                return Err(FormError::FieldMismatch);
            }
            for (j, e) in row.iter().enumerate() {
                if i < j && *e != s[j][i] {
                    return Err(FormError::FieldMismatch);
                }
                if i <= j && !e.is_zero() {
                    let c = if i == j { e.clone() } else { e.add(e) };
                    coeffs.insert((i, j), c);
                }
            }
        }
        GramForm::new(field, n, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, i: usize, j: usize) -> Element {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.coeffs.get(&key).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Symmetric matrix `S` with `phi = X S X^t`: `S_ii = c_ii`,
    /// `S_ij = c_ij / 2` for `i != j`.
    pub fn symmetric_matrix(&self) -> Vec<Vec<Element>> {
        let half = self.field.one().div(&self.field.int(2)).expect("2 is a unit");
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        if i == j {
                            self.coeff(i, i)
                        } else {
                            self.coeff(i, j).mul(&half)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn eval(&self, x: &[Element]) -> Result<Element, FormError> {
        if x.len() != self.n {
            return Err(FormError::FieldMismatch);
        }
        let mut acc = self.field.zero();
        for ((i, j), c) in &self.coeffs {
            acc = acc.add(&c.mul(&x[*i]).mul(&x[*j]));
        }
        Ok(acc)
    }

    /// Polar form `b(x, y) = phi(x+y) - phi(x) - phi(y)`.
    pub fn bilinear(&self, x: &[Element], y: &[Element]) -> Result<Element, FormError> {
        if x.len() != self.n || y.len() != self.n {
            return Err(FormError::FieldMismatch);
        }
        let mut acc = self.field.zero();
        for ((i, j), c) in &self.coeffs {
            if i == j {
                let two = self.field.int(2);
                acc = acc.add(&two.mul(c).mul(&x[*i]).mul(&y[*i]));
            } else {
                acc = acc.add(&c.mul(&x[*i].mul(&y[*j]).add(&x[*j].mul(&y[*i]))));
            }
        }
        Ok(acc)
    }

    pub fn det(&self) -> Element {
        det_in_field(&self.field, self.symmetric_matrix())
    }

    /// Diagonalizes a regular form by repeatedly splitting off a represented
    /// unit: pick `z` with `phi(z) != 0` (a basis vector, or `e_i + e_j` when
    /// the diagonal vanishes) and make the rest orthogonal to it via
    /// `w - (b(z, w) / 2 phi(z)) z`.
    pub fn diagonalize(&self) -> Result<DiagForm, FormError> {
        if self.det().is_zero() {
            return Err(FormError::Singular);
        }
        let mut basis: Vec<Vec<Element>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { self.field.one() } else { self.field.zero() })
                    .collect()
            })
            .collect();
        let mut diag = Vec::with_capacity(self.n);
        while !basis.is_empty() {
            let z = self.pick_nonzero_vector(&basis)?;
            let a = self.eval(&z)?;
            debug_assert!(!a.is_zero());
            let inv_2a = self.field.int(2).mul(&a).inv().expect("nonzero");
            let rest: Vec<Vec<Element>> = basis
                .iter()
                .skip(1)
                .map(|w| {
                    let coef = self.bilinear(&z, w).expect("dims match").mul(&inv_2a);
                    w.iter().zip(&z).map(|(wi, zi)| wi.sub(&coef.mul(zi))).collect()
                })
                .collect();
            diag.push(a);
            basis = rest;
        }
        let out = DiagForm::new(self.field.clone(), diag)?;
        // determinant square class is preserved by congruence
        debug_assert!(self.det().mul(&out.det()).is_square());
        Ok(out)
    }

    /// First vector (in the current working basis) on which the form does not
    /// vanish, reshuffling the basis so that vector comes first.
    fn pick_nonzero_vector(&self, basis: &[Vec<Element>]) -> Result<Vec<Element>, FormError> {
        for (i, w) in basis.iter().enumerate() {
            if !self.eval(w)?.is_zero() {
                let mut z = basis.to_vec();
                z.swap(0, i);
                return Ok(z[0].clone());
            }
        }
        // all basis values vanish: use b(w_i, w_j) != 0, then phi(w_i + w_j) = b != 0
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if !self.bilinear(&basis[i], &basis[j])?.is_zero() {
                    let z: Vec<Element> =
                        basis[i].iter().zip(&basis[j]).map(|(a, b)| a.add(b)).collect();
                    return Ok(z);
                }
            }
        }
        Err(FormError::Singular)
    }
}

impl fmt::Display for GramForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for ((i, j), c) in &self.coeffs {
            let var = if i == j {
                format!("x{}^2", i + 1)
            } else {
                format!("x{}*x{}", i + 1, j + 1)
            };
            if c == &self.field.one() {
                terms.push(var);
            } else {
                terms.push(format!("({})*{}", c.render(), var));
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

/// Determinant of a matrix of field elements by Gaussian elimination.
pub(crate) fn det_in_field(field: &Field, mut m: Vec<Vec<Element>>) -> Element {
    let n = m.len();
    if n == 0 {
        return field.one();
    }
    let mut det = field.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return field.zero();
        };
        if p != k {
            m.swap(p, k);
            det = det.neg();
        }
        let pivot = m[k][k].clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let factor = m[r][k].mul(&inv);
            for c in k..n {
                let sub = factor.mul(&m[k][c]);
                m[r][c] = m[r][c].sub(&sub);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy_form(field: &Field) -> GramForm {
        // X1 X2: polynomial coefficient 1 on (0,1)
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 1), field.one());
        GramForm::new(field.clone(), 2, coeffs).unwrap()
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let k = Field::finite(5, &[]).unwrap();
        let g = xy_form(&k);
        let d = g.diagonalize().unwrap();
        assert_eq!(d.dim(), 2);
        // disc of X1X2 is -1/4, so d1*d2 lies in the class of -1
        let prod = d.entries()[0].mul(&d.entries()[1]);
        assert_eq!(
            prod.square_class().unwrap(),
            k.int(-1).square_class().unwrap()
        );
    }

    #[test]
    fn diagonalize_keeps_diagonal_input() {
        let k = Field::finite(5, &["t"]).unwrap();
        let t = k.var("t").unwrap();
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), k.int(2));
        coeffs.insert((1, 1), t.clone());
        let g = GramForm::new(k.clone(), 2, coeffs).unwrap();
        let d = g.diagonalize().unwrap();
        assert_eq!(d.entries(), &[k.int(2), t]);
    }

    #[test]
    fn diagonalize_x2_xy_y2_over_gf7() {
        let k = Field::finite(7, &[]).unwrap();
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), k.one());
        coeffs.insert((0, 1), k.one());
        coeffs.insert((1, 1), k.one());
        let g = GramForm::new(k.clone(), 2, coeffs).unwrap();
        let d = g.diagonalize().unwrap();
        let prod = d.entries()[0].mul(&d.entries()[1]);
        assert_eq!(prod.square_class().unwrap(), k.int(3).square_class().unwrap());
    }

    #[test]
    fn diagonalize_rejects_singular() {
        let k = Field::finite(5, &[]).unwrap();
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), k.one());
        let g = GramForm::new(k.clone(), 2, coeffs).unwrap();
        assert_eq!(g.diagonalize(), Err(FormError::Singular));
    }

    #[test]
    fn gram_matrix_convention() {
        // S = [[0,1],[1,0]] means phi = 2 X1 X2
        let k = Field::finite(5, &[]).unwrap();
        let s = vec![
            vec![k.zero(), k.one()],
            vec![k.one(), k.zero()],
        ];
        let g = GramForm::from_symmetric_matrix(k.clone(), &s).unwrap();
        assert_eq!(g.coeff(0, 1), k.int(2));
        let e1 = [k.one(), k.zero()];
        let e2 = [k.zero(), k.one()];
        let sum = [k.one(), k.one()];
        assert_eq!(g.eval(&sum).unwrap(), k.int(2));
        assert_eq!(g.bilinear(&e1, &e2).unwrap(), k.int(2));
        assert!(g.eval(&e1).unwrap().is_zero());
    }

    #[test]
    fn isometry_against_diagonalization() {
        // diagonalization preserves values: check a few evaluations transfer
        let k = Field::finite(7, &["t"]).unwrap();
        let t = k.var("t").unwrap();
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), t.clone());
        coeffs.insert((0, 1), k.one());
        coeffs.insert((1, 1), k.int(3));
        let g = GramForm::new(k.clone(), 2, coeffs).unwrap();
        let d = g.diagonalize().unwrap();
        assert_eq!(d.dim(), 2);
        assert!(d.det().mul(&g.det()).is_square());
    }
}
