//! Hom, tensor, Matlis duality and the natural maps between them.
//!
//! Every functor value comes with a fixed basis so that the natural maps
//! (homothety, biduality, evaluation, the Auslander map and Hom-evaluation)
//! are concrete matrices whose bijectivity is a rank computation.
//!
//! Matlis duality `Hom_R(-, E)` is realized as the F_p-linear dual with the
//! transposed action. With `E` the linear dual of `R`, Hom-tensor adjunction
//! identifies `Hom_R(M, E)` with `Hom_{F_p}(R ⊗ M, F_p) = Hom_{F_p}(M, F_p)`.

use crate::linalg::{free_columns, kernel_from_rref, Matrix, Subspace};
use crate::module::{regular_module, Module, ModuleError, ModuleMap};
use crate::ring::Ring;
use std::sync::Arc;

/// `Hom_R(M, N)` with an explicit basis of matrices.
///
/// The basis comes from the free columns of a reduced echelon system, so the
/// coordinates of any homomorphism are its entries at `positions` (row-major
/// flattened index `a * dim M + b`).
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub module: Module,
    pub basis: Vec<Matrix>,
    positions: Vec<usize>,
    source_dim: usize,
    target_dim: usize,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism `source -> target` in this basis.
    pub fn coords(&self, phi: &Matrix) -> Vec<u32> {
        debug_assert_eq!((phi.rows(), phi.cols()), (self.target_dim, self.source_dim));
        let data = phi.data();
        self.positions.iter().map(|&i| data[i]).collect()
    }

    pub fn element(&self, coords: &[u32]) -> Matrix {
        let f = self.module.field();
        Matrix::combination(f, (self.target_dim, self.source_dim), coords, &self.basis)
    }
}

/// `Hom_R(M, N)`: solutions of `phi * A_i(M) = A_i(N) * phi`.
pub fn hom_module(m: &Module, n: &Module) -> Result<HomSpace, ModuleError> {
    m.same_ring(n)?;
    let f = m.field();
    let ring = m.ring().clone();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(HomSpace {
            module: Module::zero(&ring),
            basis: Vec::new(),
            positions: Vec::new(),
            source_dim: dm,
            target_dim: dn,
        });
    }
    // Row-major vec: vec(phi A) = (I ⊗ A^T) vec(phi), vec(A phi) = (A ⊗ I) vec(phi).
    let eye_m = Matrix::identity(f, dm);
    let eye_n = Matrix::identity(f, dn);
    let blocks: Vec<Matrix> = m
        .action()
        .iter()
        .zip(n.action())
        .map(|(am, an)| {
            let left = eye_n.kronecker(&am.transpose()).expect("same field");
            let right = an.kronecker(&eye_m).expect("same field");
            left.sub(&right)
        })
        .collect();
    let system = Matrix::vstack_all(f, unknowns, &blocks);
    let rref = system.rref();
    let kernel = kernel_from_rref(&rref.reduced, &rref.pivots);
    let positions = free_columns(&rref.pivots, unknowns);
    let basis: Vec<Matrix> = (0..kernel.cols())
        .map(|j| Matrix::from_data(f, dn, dm, kernel.column(j)))
        .collect();
    let h = basis.len();
    let partial = HomSpace {
        module: Module::zero(&ring),
        basis,
        positions,
        source_dim: dm,
        target_dim: dn,
    };
    // (r . phi) = A_r(N) phi
    let action = n
        .action()
        .iter()
        .map(|an| {
            let cols: Vec<Vec<u32>> = partial
                .basis
                .iter()
                .map(|phi| partial.coords(&an.mul(phi)))
                .collect();
            Matrix::from_columns(f, h, &cols)
        })
        .collect();
    Ok(HomSpace {
        module: Module::from_parts(ring, h, action),
        ..partial
    })
}

/// `M ⊗_R N` as a quotient of the vector-space tensor product.
///
/// Vector-space basis index `(a, b) -> a * dim N + b`; the quotient basis is
/// the set of standard vectors outside the pivots of the relation space.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub module: Module,
    /// `dim T x (dim M * dim N)` projection from the vector-space tensor.
    pub projection: Matrix,
    /// Vector-tensor positions whose classes form the basis of `T`.
    pub lifts: Vec<usize>,
    relations: Subspace,
    left_dim: usize,
    right_dim: usize,
}

impl TensorSpace {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Class of `x ⊗ y`.
    pub fn class_of(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.module.field();
        let mut v = vec![0; self.left_dim * self.right_dim];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                v[a * self.right_dim + b] = f.mul(xa, yb);
            }
        }
        self.project(&v)
    }

    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let r = self.relations.reduce(v);
        self.lifts.iter().map(|&c| r[c]).collect()
    }

    /// `(a, b)` such that `e_a ⊗ e_b` represents basis vector `t`.
    pub fn lift_pair(&self, t: usize) -> (usize, usize) {
        let pos = self.lifts[t];
        (pos / self.right_dim, pos % self.right_dim)
    }
}

pub fn tensor_module(m: &Module, n: &Module) -> Result<TensorSpace, ModuleError> {
    m.same_ring(n)?;
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let total = dm * dn;
    let eye_m = Matrix::identity(f, dm);
    let eye_n = Matrix::identity(f, dn);
    // relation vectors (r x) ⊗ y - x ⊗ (r y), as rows
    let rel_rows: Vec<Matrix> = m
        .action()
        .iter()
        .zip(n.action())
        .map(|(am, an)| {
            let k = am
                .kronecker(&eye_n)
                .expect("same field")
                .sub(&eye_m.kronecker(an).expect("same field"));
            k.transpose()
        })
        .collect();
    let relations = Subspace::row_span(&Matrix::vstack_all(f, total, &rel_rows));
    let lifts = relations.complement_positions();
    let t = lifts.len();
    let mut projection = Matrix::zeros(f, t, total);
    for j in 0..total {
        let mut e = vec![0; total];
        e[j] = 1;
        let r = relations.reduce(&e);
        for (row, &c) in lifts.iter().enumerate() {
            projection[(row, j)] = r[c];
        }
    }
    let action = m
        .action()
        .iter()
        .map(|am| {
            let big = am.kronecker(&eye_n).expect("same field");
            let cols: Vec<Vec<u32>> = lifts
                .iter()
                .map(|&c| {
                    let r = relations.reduce(&big.column(c));
                    lifts.iter().map(|&l| r[l]).collect()
                })
                .collect();
            Matrix::from_columns(f, t, &cols)
        })
        .collect();
    Ok(TensorSpace {
        module: Module::from_parts(m.ring().clone(), t, action),
        projection,
        lifts,
        relations,
        left_dim: dm,
        right_dim: dn,
    })
}

/// `M^∨`: linear dual with transposed action.
pub fn matlis_dual(m: &Module) -> Module {
    let action = m.action().iter().map(Matrix::transpose).collect();
    Module::from_parts(m.ring().clone(), m.dim(), action)
}

/// Dual of a map: `f^∨ : N^∨ -> M^∨`.
pub fn matlis_dual_map(f: &ModuleMap) -> ModuleMap {
    ModuleMap::new_unchecked(
        matlis_dual(f.target()),
        matlis_dual(f.source()),
        f.matrix().transpose(),
    )
}

/// `E = E_R(k)`, realized as the dual of the regular module.
pub fn injective_hull_e(ring: &Arc<Ring>) -> Module {
    matlis_dual(&regular_module(ring))
}

/// Which natural transformation a map instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NaturalMapKind {
    /// `R -> Hom(M, M)`
    Homothety,
    /// `L -> Hom(Hom(L, M), M)`
    Biduality,
    /// `Hom(L', L) ⊗ L' -> L`
    Evaluation,
    /// `L -> Hom(L', L' ⊗ L)`
    AuslanderGamma,
    /// `L ⊗ Hom(L', L'') -> Hom(Hom(L, L'), L'')`
    HomEvaluation,
}

/// A natural map together with the kind that produced it.
#[derive(Clone, Debug)]
pub struct NaturalMap {
    pub kind: NaturalMapKind,
    pub map: ModuleMap,
}

/// `r -> (m -> r m)`
pub fn homothety_map(m: &Module) -> NaturalMap {
    let ring = m.ring();
    let hom = hom_module(m, m).expect("same ring");
    let cols: Vec<Vec<u32>> = m.action().iter().map(|a| hom.coords(a)).collect();
    let matrix = Matrix::from_columns(m.field(), hom.dim(), &cols);
    NaturalMap {
        kind: NaturalMapKind::Homothety,
        map: ModuleMap::new_unchecked(regular_module(ring), hom.module, matrix),
    }
}

/// `l -> (phi -> phi(l))`
pub fn biduality_map(l: &Module, m: &Module) -> Result<NaturalMap, ModuleError> {
    let inner = hom_module(l, m)?;
    let outer = hom_module(&inner.module, m)?;
    let f = l.field();
    let cols: Vec<Vec<u32>> = (0..l.dim())
        .map(|j| {
            // column s of psi_j is phi_s(e_j)
            let psi_cols: Vec<Vec<u32>> = inner.basis.iter().map(|phi| phi.column(j)).collect();
            outer.coords(&Matrix::from_columns(f, m.dim(), &psi_cols))
        })
        .collect();
    let matrix = Matrix::from_columns(f, outer.dim(), &cols);
    Ok(NaturalMap {
        kind: NaturalMapKind::Biduality,
        map: ModuleMap::new_unchecked(l.clone(), outer.module, matrix),
    })
}

/// `phi ⊗ x -> phi(x)`
pub fn evaluation_map(lp: &Module, l: &Module) -> Result<NaturalMap, ModuleError> {
    let hom = hom_module(lp, l)?;
    let t = tensor_module(&hom.module, lp)?;
    let cols: Vec<Vec<u32>> = (0..t.dim())
        .map(|i| {
            let (s, b) = t.lift_pair(i);
            hom.basis[s].column(b)
        })
        .collect();
    let matrix = Matrix::from_columns(l.field(), l.dim(), &cols);
    Ok(NaturalMap {
        kind: NaturalMapKind::Evaluation,
        map: ModuleMap::new_unchecked(t.module, l.clone(), matrix),
    })
}

/// `l -> (x -> x ⊗ l)`
pub fn gamma_map(lp: &Module, l: &Module) -> Result<NaturalMap, ModuleError> {
    let t = tensor_module(lp, l)?;
    let hom = hom_module(lp, &t.module)?;
    let f = l.field();
    let cols: Vec<Vec<u32>> = (0..l.dim())
        .map(|c| {
            let mut el = vec![0; l.dim()];
            el[c] = 1;
            let img_cols: Vec<Vec<u32>> = (0..lp.dim())
                .map(|b| {
                    let mut x = vec![0; lp.dim()];
                    x[b] = 1;
                    t.class_of(&x, &el)
                })
                .collect();
            hom.coords(&Matrix::from_columns(f, t.dim(), &img_cols))
        })
        .collect();
    let matrix = Matrix::from_columns(f, hom.dim(), &cols);
    Ok(NaturalMap {
        kind: NaturalMapKind::AuslanderGamma,
        map: ModuleMap::new_unchecked(l.clone(), hom.module, matrix),
    })
}

/// `a ⊗ phi -> (beta -> phi(beta(a)))`
pub fn hom_evaluation_map(
    l: &Module,
    lp: &Module,
    lpp: &Module,
) -> Result<NaturalMap, ModuleError> {
    l.same_ring(lp)?;
    let h1 = hom_module(lp, lpp)?;
    let h2 = hom_module(l, lp)?;
    let source = tensor_module(l, &h1.module)?;
    let target = hom_module(&h2.module, lpp)?;
    let f = l.field();
    let cols: Vec<Vec<u32>> = (0..source.dim())
        .map(|i| {
            let (a, s) = source.lift_pair(i);
            let img: Vec<Vec<u32>> = h2
                .basis
                .iter()
                .map(|beta| h1.basis[s].mul_vec(&beta.column(a)))
                .collect();
            target.coords(&Matrix::from_columns(f, lpp.dim(), &img))
        })
        .collect();
    let matrix = Matrix::from_columns(f, target.dim(), &cols);
    Ok(NaturalMap {
        kind: NaturalMapKind::HomEvaluation,
        map: ModuleMap::new_unchecked(source.module, target.module, matrix),
    })
}

/// `Hom(f, M) : Hom(L', M) -> Hom(L, M)` for `f : L -> L'`, on computed bases.
pub fn hom_precompose(f: &ModuleMap, m: &Module) -> Result<ModuleMap, ModuleError> {
    let from = hom_module(f.target(), m)?;
    let to = hom_module(f.source(), m)?;
    let cols: Vec<Vec<u32>> = from
        .basis
        .iter()
        .map(|psi| to.coords(&psi.mul(f.matrix())))
        .collect();
    let matrix = Matrix::from_columns(m.field(), to.dim(), &cols);
    Ok(ModuleMap::new_unchecked(from.module, to.module, matrix))
}

/// Bijectivity of a map plus which half fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoDiagnostics {
    pub iso: bool,
    pub injective: bool,
    pub surjective: bool,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl std::fmt::Display for IsoDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "dims {}->{} rank {} injective={} surjective={}",
            self.source_dim, self.target_dim, self.rank, self.injective, self.surjective
        )
    }
}

pub fn is_isomorphism(f: &ModuleMap) -> IsoDiagnostics {
    let rank = f.rank();
    let injective = rank == f.source().dim();
    let surjective = rank == f.target().dim();
    IsoDiagnostics {
        iso: injective && surjective,
        injective,
        surjective,
        source_dim: f.source().dim(),
        target_dim: f.target().dim(),
        rank,
    }
}
