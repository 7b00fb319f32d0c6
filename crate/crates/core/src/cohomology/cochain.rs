use crate::linalg::{count, Matrix, MultiIndex, Scalar};
use crate::{Error, Result};

/// An element of `Hom(g^{⊗n}, V)`, stored as a `dim V x (dim g)^n` matrix
/// whose column at flat position `I` is `f(e_I)`. Degree 0 is a single
/// column, a vector of `V`.
///
/// As a coordinate vector the cochain is the column-stacking of that
/// matrix: entry `flat(I) * dim V + a` is the `a`-th coordinate of `f(e_I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    algebra_dim: usize,
    values: Matrix,
}

impl Cochain {
    pub fn new(algebra_dim: usize, degree: usize, values: Matrix) -> Result<Self> {
        if values.cols() != count(algebra_dim, degree) {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} cochain on a {algebra_dim}-dimensional algebra needs {} columns, got {}",
                count(algebra_dim, degree),
                values.cols()
            )));
        }
        Ok(Cochain {
            degree,
            algebra_dim,
            values,
        })
    }

    pub fn zero(dim_v: usize, algebra_dim: usize, degree: usize) -> Self {
        Cochain {
            degree,
            algebra_dim,
            values: Matrix::zeros(dim_v, count(algebra_dim, degree)),
        }
    }

    /// Linear map `g -> V` given as a `dim V x dim g` matrix.
    pub fn from_linear_map(map: &Matrix) -> Self {
        Cochain {
            degree: 1,
            algebra_dim: map.cols(),
            values: map.clone(),
        }
    }

    /// Vector of `V` as a degree-0 cochain.
    pub fn from_vector_value(algebra_dim: usize, v: &[Scalar]) -> Self {
        Cochain {
            degree: 0,
            algebra_dim,
            values: Matrix::column_vector(v),
        }
    }

    pub fn from_coordinates(dim_v: usize, algebra_dim: usize, degree: usize, coords: &[Scalar]) -> Result<Self> {
        let cols = count(algebra_dim, degree);
        if coords.len() != dim_v * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a cochain space of dimension {}",
                coords.len(),
                dim_v * cols
            )));
        }
        let values = Matrix::from_fn(dim_v, cols, |a, c| coords[c * dim_v + a].clone());
        Ok(Cochain {
            degree,
            algebra_dim,
            values,
        })
    }

    pub fn coordinates(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.values.rows() * self.values.cols());
        for c in 0..self.values.cols() {
            for a in 0..self.values.rows() {
                out.push(self.values[(a, c)].clone());
            }
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn dim_v(&self) -> usize {
        self.values.rows()
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    /// `f(e_I)`
    pub fn at(&self, index: &MultiIndex) -> Vec<Scalar> {
        self.values.column(index.flat())
    }

    /// `f(x_1, ..., x_n)` by multilinear expansion over the arguments'
    /// nonzero coordinates.
    pub fn eval(&self, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.degree, "argument count");
        let m = self.dim_v();
        let mut out = vec![Scalar::zero(); m];
        let supports: Vec<Vec<(usize, &Scalar)>> = args
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let mut idx = vec![0usize; self.degree];
        loop {
            if supports.iter().any(Vec::is_empty) {
                return out;
            }
            let mut coef = Scalar::one();
            let mut flat = 0;
            for (t, &k) in idx.iter().enumerate() {
                let (i, c) = supports[t][k];
                coef = &coef * c;
                flat = flat * self.algebra_dim + i;
            }
            for (a, o) in out.iter_mut().enumerate() {
                let v = &self.values[(a, flat)];
                if !v.is_zero() {
                    *o += &(v * &coef);
                }
            }
            // odometer over support positions
            let mut t = self.degree;
            loop {
                if t == 0 {
                    return out;
                }
                t -= 1;
                idx[t] += 1;
                if idx[t] < supports[t].len() {
                    break;
                }
                idx[t] = 0;
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        Cochain {
            degree: self.degree,
            algebra_dim: self.algebra_dim,
            values: self.values.add(&other.values),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        Cochain {
            degree: self.degree,
            algebra_dim: self.algebra_dim,
            values: self.values.sub(&other.values),
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            algebra_dim: self.algebra_dim,
            values: self.values.neg(),
        }
    }
}

/// An element of the cone complex in degree `n`: a degree-`n` Leibniz
/// cochain and, for `n >= 1`, a degree-`(n-1)` operator cochain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeCochain {
    pub leib: Cochain,
    pub op: Option<Cochain>,
}

impl ConeCochain {
    pub fn new(leib: Cochain, op: Option<Cochain>) -> Result<Self> {
        match (&op, leib.degree()) {
            (None, 0) => {}
            (Some(g), n) if n >= 1 && g.degree() + 1 == n => {
                if g.dim_v() != leib.dim_v() || g.algebra_dim() != leib.algebra_dim() {
                    return Err(Error::DimensionMismatch(
                        "cone components live on different spaces".into(),
                    ));
                }
            }
            _ => {
                return Err(Error::DimensionMismatch(
                    "cone cochain components must have degrees n and n-1".into(),
                ))
            }
        }
        Ok(ConeCochain { leib, op })
    }

    pub fn pair(leib: Cochain, op: Cochain) -> Result<Self> {
        ConeCochain::new(leib, Some(op))
    }

    pub fn zero(dim_v: usize, algebra_dim: usize, degree: usize) -> Self {
        ConeCochain {
            leib: Cochain::zero(dim_v, algebra_dim, degree),
            op: (degree >= 1).then(|| Cochain::zero(dim_v, algebra_dim, degree - 1)),
        }
    }

    pub fn degree(&self) -> usize {
        self.leib.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.leib.is_zero() && self.op.as_ref().is_none_or(Cochain::is_zero)
    }

    /// Leibniz coordinates followed by operator coordinates.
    pub fn coordinates(&self) -> Vec<Scalar> {
        let mut v = self.leib.coordinates();
        if let Some(g) = &self.op {
            v.extend(g.coordinates());
        }
        v
    }

    pub fn from_coordinates(dim_v: usize, algebra_dim: usize, degree: usize, coords: &[Scalar]) -> Result<Self> {
        let split = dim_v * count(algebra_dim, degree);
        if coords.len() < split {
            return Err(Error::DimensionMismatch("too few cone coordinates".into()));
        }
        let leib = Cochain::from_coordinates(dim_v, algebra_dim, degree, &coords[..split])?;
        let op = if degree == 0 {
            if coords.len() != split {
                return Err(Error::DimensionMismatch("too many cone coordinates".into()));
            }
            None
        } else {
            Some(Cochain::from_coordinates(
                dim_v,
                algebra_dim,
                degree - 1,
                &coords[split..],
            )?)
        };
        Ok(ConeCochain { leib, op })
    }

    pub fn add(&self, other: &ConeCochain) -> ConeCochain {
        ConeCochain {
            leib: self.leib.add(&other.leib),
            op: match (&self.op, &other.op) {
                (Some(a), Some(b)) => Some(a.add(b)),
                _ => None,
            },
        }
    }

    pub fn sub(&self, other: &ConeCochain) -> ConeCochain {
        ConeCochain {
            leib: self.leib.sub(&other.leib),
            op: match (&self.op, &other.op) {
                (Some(a), Some(b)) => Some(a.sub(b)),
                _ => None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_round_trip() {
        let values = Matrix::from_int_rows(&[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        let f = Cochain::new(2, 2, values).unwrap();
        let coords = f.coordinates();
        assert_eq!(coords[1], Scalar::from_int(5));
        assert_eq!(coords[2], Scalar::from_int(2));
        assert_eq!(Cochain::from_coordinates(2, 2, 2, &coords).unwrap(), f);
    }

    #[test]
    fn eval_is_multilinear() {
        // f(e_i, e_j) = i + 2j (0-based) in a 1-dimensional V
        let values = Matrix::from_fn(1, 4, |_, c| Scalar::from_int((c / 2 + 2 * (c % 2)) as i64));
        let f = Cochain::new(2, 2, values).unwrap();
        let x = vec![Scalar::from_int(1), Scalar::from_int(2)];
        let y = vec![Scalar::from_int(3), Scalar::from_int(-1)];
        // Σ x_i y_j (i + 2j) = x_1*(y_0*1 + y_1*3) + x_0*(y_1*2)
        let expected = -2;
        assert_eq!(f.eval(&[x, y]), vec![Scalar::from_int(expected)]);
        let g = Cochain::from_vector_value(2, &[Scalar::from_int(7)]);
        assert_eq!(g.eval(&[]), vec![Scalar::from_int(7)]);
    }

    #[test]
    fn cone_degrees_are_checked() {
        let leib = Cochain::zero(1, 2, 2);
        assert!(ConeCochain::pair(leib.clone(), Cochain::zero(1, 2, 1)).is_ok());
        assert!(ConeCochain::pair(leib, Cochain::zero(1, 2, 2)).is_err());
        assert!(ConeCochain::new(Cochain::zero(1, 2, 1), None).is_err());
    }
}
