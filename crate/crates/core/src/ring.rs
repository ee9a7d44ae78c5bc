//! Finite-dimensional commutative local algebras over F_p.
//!
//! A ring is given by structure constants on a basis `e_0..e_{d-1}`:
//! `mult[i]` is the matrix of multiplication by `e_i`, so its column `j` is
//! the coordinate vector of `e_i * e_j`. Such a ring is artinian, hence
//! complete, so its completion never needs to be represented separately.
//!
//! Locality is decided without factoring anything. Over a prime field the
//! Frobenius `x -> x^p` is additive and F_p-linear, so the nilradical is the
//! kernel of a power of one matrix. The reduced quotient `R/N` is a product
//! of finite fields and the fixed space of Frobenius on it has one dimension
//! per factor (Berlekamp's count).

use std::fmt;

use thiserror::Error;

use crate::linalg::{Matrix, PrimeField, Subspace, MAX_PRIME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("NotPrime: modulus {0} is not a prime below 65536")]
    NotPrime(u64),
    #[error("BadShape: {0}")]
    BadShape(String),
    #[error("NotCommutative: e{i}*e{j} != e{j}*e{i}")]
    NotCommutative { i: usize, j: usize },
    #[error("NotAssociative: (e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("BadUnit: unit*e{i} != e{i}")]
    BadUnit { i: usize },
    #[error("NotLocal: reduced quotient splits into {factors} fields")]
    NotLocal { factors: usize },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A commutative, associative, unital F_p-algebra (not yet known to be local).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: PrimeField,
    unit: Vec<u32>,
    mult: Vec<Matrix>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.field.p())
            .field("dim", &self.dim())
            .field("unit", &self.unit)
            .finish()
    }
}

impl Algebra {
    /// `table[i][j]` is the coordinate vector of `e_i * e_j`.
    #[allow(clippy::needless_range_loop)]
    pub fn new(p: u64, unit: &[i64], table: &[Vec<Vec<i64>>]) -> Result<Self, RingError> {
        if p >= MAX_PRIME as u64 || !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        let field = PrimeField::new(p as u32);
        let d = unit.len();
        if d == 0 {
            return Err(RingError::BadShape("dimension must be at least 1".into()));
        }
        if table.len() != d || table.iter().any(|row| row.len() != d) {
            return Err(RingError::BadShape(format!(
                "multiplication table must be {d} x {d}"
            )));
        }
        if let Some(bad) = table.iter().flatten().find(|v| v.len() != d) {
            return Err(RingError::BadShape(format!(
                "product vector has {} entries, expected {d}",
                bad.len()
            )));
        }
        let red = |v: &Vec<i64>| -> Vec<u32> { v.iter().map(|&x| field.reduce(x)).collect() };
        let consts: Vec<Vec<Vec<u32>>> = table
            .iter()
            .map(|row| row.iter().map(red).collect())
            .collect();
        for i in 0..d {
            for j in i + 1..d {
                if consts[i][j] != consts[j][i] {
                    return Err(RingError::NotCommutative { i, j });
                }
            }
        }
        let mult: Vec<Matrix> = (0..d)
            .map(|i| Matrix::from_columns(field, d, &consts[i]))
            .collect();
        let alg = Algebra {
            field,
            unit: unit.iter().map(|&x| field.reduce(x)).collect(),
            mult,
        };
        let u = alg.mult_matrix(&alg.unit);
        for i in 0..d {
            if u.column(i) != alg.basis_vector(i) {
                return Err(RingError::BadUnit { i });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let eij = &consts[i][j];
                for k in 0..d {
                    let left = alg.mult_matrix(eij).column(k);
                    let right = alg.mult[i].mul_vec(&consts[j][k]);
                    if left != right {
                        return Err(RingError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Multiplication-by-`e_i` matrices.
    pub fn mult_tables(&self) -> &[Matrix] {
        &self.mult
    }

    /// Matrix of multiplication by an arbitrary element.
    pub fn mult_matrix(&self, a: &[u32]) -> Matrix {
        let d = self.dim();
        Matrix::combination(self.field, (d, d), a, &self.mult)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.mult_matrix(a).mul_vec(b)
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of the (linear) Frobenius `x -> x^p`.
    pub fn frobenius(&self) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim())
            .map(|j| self.pow(&self.basis_vector(j), self.p() as u64))
            .collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }
}

/// Nilradical: kernel of `F^m` where `p^m >= dim`.
pub fn jacobson_radical(alg: &Algebra) -> Subspace {
    let d = alg.dim();
    let frob = alg.frobenius();
    let mut power = Matrix::identity(alg.field(), d);
    let mut reach = 1u64;
    while reach < d as u64 {
        power = frob.mul(&power);
        reach *= alg.p() as u64;
    }
    let rad = Subspace::kernel(&power);
    debug_assert!(rad.basis_vectors().iter().all(|v| {
        alg.mult_tables()
            .iter()
            .all(|m| rad.contains(&m.mul_vec(v)))
    }));
    rad
}

/// Result of the locality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Locality {
    pub local: bool,
    /// Number of simple factors of `R/N`.
    pub factors: usize,
    /// `dim R/N`; the residue degree when the algebra is local.
    pub residue_degree: usize,
}

/// Local iff the Frobenius-fixed subspace of `R/N` is one-dimensional.
pub fn is_local(alg: &Algebra) -> Locality {
    let rad = jacobson_radical(alg);
    locality_with_radical(alg, &rad)
}

fn locality_with_radical(alg: &Algebra, rad: &Subspace) -> Locality {
    let f = alg.field();
    let comp = rad.complement_positions();
    let q = comp.len();
    let frob = alg.frobenius();
    // Frobenius induced on R/N, in the basis of complement coordinates.
    let mut induced = Matrix::zeros(f, q, q);
    for (c, &pos) in comp.iter().enumerate() {
        let image = rad.reduce(&frob.column(pos));
        for (r, &pos2) in comp.iter().enumerate() {
            induced[(r, c)] = image[pos2];
        }
    }
    let shifted = induced.sub(&Matrix::identity(f, q));
    let factors = q - shifted.rank();
    Locality {
        local: factors == 1,
        factors,
        residue_degree: q,
    }
}

/// A validated commutative local F_p-algebra with cached maximal ideal.
#[derive(Clone)]
pub struct Ring {
    name: String,
    alg: Algebra,
    radical: Subspace,
    radical_basis: Vec<Vec<u32>>,
    residue_degree: usize,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("name", &self.name)
            .field("p", &self.p())
            .field("dim", &self.dim())
            .field("radical_dim", &self.radical.dim())
            .field("residue_degree", &self.residue_degree)
            .finish()
    }
}

/// Rings compare by structure constants; names are labels only.
impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn from_algebra(name: impl Into<String>, alg: Algebra) -> Result<Self, RingError> {
        let radical = jacobson_radical(&alg);
        let loc = locality_with_radical(&alg, &radical);
        if !loc.local {
            return Err(RingError::NotLocal {
                factors: loc.factors,
            });
        }
        Ok(Ring {
            name: name.into(),
            radical_basis: radical.basis_vectors(),
            radical,
            residue_degree: loc.residue_degree,
            alg,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }

    pub fn p(&self) -> u32 {
        self.alg.p()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn unit(&self) -> &[u32] {
        self.alg.unit()
    }

    pub fn mult_tables(&self) -> &[Matrix] {
        self.alg.mult_tables()
    }

    pub fn mult_matrix(&self, a: &[u32]) -> Matrix {
        self.alg.mult_matrix(a)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.alg.mul(a, b)
    }

    /// The maximal ideal as a subspace of the ring.
    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    pub fn radical_basis(&self) -> &[Vec<u32>] {
        &self.radical_basis
    }

    /// `dim_{F_p} k` for the residue field `k = R/m`.
    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    /// Coordinate vector of `e_i * e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vec<u32> {
        self.alg.mult[i].column(j)
    }
}

/// Checks every ring law and locality, caching the radical and residue degree.
pub fn validate_ring(
    name: &str,
    p: u64,
    unit: &[i64],
    table: &[Vec<Vec<i64>>],
) -> Result<Ring, RingError> {
    let alg = Algebra::new(p, unit, table)?;
    Ring::from_algebra(name, alg)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn field_has_trivial_radical() {
        let r = f2();
        assert_eq!(r.radical().dim(), 0);
        assert_eq!(r.residue_degree(), 1);
        let r = f4();
        assert_eq!(r.radical().dim(), 0);
        assert_eq!(r.residue_degree(), 2);
        let r = truncated_poly(5, 1);
        assert_eq!(r.radical().dim(), 0);
    }

    #[test]
    fn dual_numbers() {
        let r = truncated_poly(2, 2);
        assert_eq!(r.radical().dim(), 1);
        assert_eq!(r.residue_degree(), 1);
        assert!(r.radical().contains(&[0, 1]));
    }

    #[test]
    fn radical_of_x4() {
        let r = truncated_poly(2, 4);
        assert_eq!(r.radical().dim(), 3);
        for i in 1..4 {
            assert!(r.radical().contains(&r.algebra().basis_vector(i)));
        }
        assert!(!r.radical().contains(&[1, 0, 0, 0]));
        // p^m must reach past the nilpotency index; F_3[x]/(x^3) needs m = 1
        let r = truncated_poly(3, 3);
        assert_eq!(r.radical().dim(), 2);
        let r = truncated_poly(3, 5);
        assert_eq!(r.radical().dim(), 4);
    }

    #[test]
    fn square_zero_radical() {
        let r = square_zero();
        assert_eq!(r.radical().dim(), 2);
        assert!(r.radical().contains(&[0, 1, 0]));
        assert!(r.radical().contains(&[0, 0, 1]));
    }

    #[test]
    fn product_of_fields_is_not_local() {
        let alg = Algebra::new(2, &[1, 1], &f2_times_f2_table()).unwrap();
        let loc = is_local(&alg);
        assert!(!loc.local);
        assert_eq!(loc.factors, 2);
        assert_eq!(
            validate_ring("F2xF2", 2, &[1, 1], &f2_times_f2_table()).unwrap_err(),
            RingError::NotLocal { factors: 2 }
        );
    }

    #[test]
    fn f4_is_local_with_degree_two() {
        let loc = is_local(f4().algebra());
        assert!(loc.local);
        assert_eq!(loc.residue_degree, 2);
        let loc = is_local(truncated_poly(2, 2).algebra());
        assert_eq!((loc.local, loc.residue_degree), (true, 1));
    }

    #[test]
    fn law_violations_carry_witnesses() {
        assert_eq!(
            validate_ring("x", 4, &[1], &[vec![vec![1]]]).unwrap_err(),
            RingError::NotPrime(4)
        );
        assert_eq!(
            validate_ring("x", 65537, &[1], &[vec![vec![1]]]).unwrap_err(),
            RingError::NotPrime(65537)
        );
        // e0*e1 = e1 but e1*e0 = 0
        let t = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 0]]];
        assert_eq!(
            validate_ring("x", 2, &[1, 0], &t).unwrap_err(),
            RingError::NotCommutative { i: 0, j: 1 }
        );
        // unit e1 does not act as identity
        let t = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]];
        assert_eq!(
            validate_ring("x", 2, &[0, 1], &t).unwrap_err(),
            RingError::BadUnit { i: 0 }
        );
        // F_2 span of 1, a, b with a^2 = b, ab = a, b^2 = 0: (aa)a = ba = a, a(aa) = ab = a ok;
        // (ab)b = ab = a but a(bb) = 0
        let e = |i: usize| {
            let mut v = vec![0; 3];
            v[i] = 1;
            v
        };
        let z = vec![0; 3];
        let t = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), e(1)],
            vec![e(2), e(1), z],
        ];
        assert!(matches!(
            validate_ring("x", 2, &[1, 0, 0], &t).unwrap_err(),
            RingError::NotAssociative { .. }
        ));
    }
}
