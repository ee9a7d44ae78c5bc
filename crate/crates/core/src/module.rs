//! Finite-length modules as action representations.
//!
//! A module over a ring with basis `e_0..e_{d-1}` is an F_p vector space with
//! one square matrix per basis element. Over an artinian ring every such
//! module is simultaneously finitely generated, noetherian and artinian, so
//! none of those hypotheses ever needs to be checked separately.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{Echelon, Matrix, PrimeField, Subspace};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("expected {expected} action matrices, found {found}")]
    ActionCount { expected: usize, found: usize },
    #[error("action matrix {index} is not {dim} x {dim}")]
    ActionShape { index: usize, dim: usize },
    #[error("the unit does not act as the identity")]
    UnitAction,
    #[error("compatibility: A{i}*A{j} != sum_k c[{i}][{j}][k]*A_k")]
    Compatibility { i: usize, j: usize },
    #[error("matrix does not commute with the action of e{index}")]
    NotLinearOverRing { index: usize },
    #[error("map shape {rows} x {cols} does not match target x source")]
    MapShape { rows: usize, cols: usize },
    #[error("subspace is not closed under the action of e{index}")]
    NotSubmodule { index: usize },
    #[error("sequence is not exact: {0}")]
    NotExact(&'static str),
}

/// A finite-length module over a local ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    ring: Arc<Ring>,
    dim: usize,
    action: Vec<Matrix>,
}

impl Module {
    /// Validates the unit and compatibility laws on every pair of basis elements.
    pub fn new(ring: Arc<Ring>, dim: usize, action: Vec<Matrix>) -> Result<Self, ModuleError> {
        let m = Module { ring, dim, action };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(ring: Arc<Ring>, dim: usize, action: Vec<Matrix>) -> Self {
        let m = Module { ring, dim, action };
        debug_assert_eq!(m.validate(), Ok(()));
        m
    }

    pub fn validate(&self) -> Result<(), ModuleError> {
        let d = self.ring.dim();
        if self.action.len() != d {
            return Err(ModuleError::ActionCount {
                expected: d,
                found: self.action.len(),
            });
        }
        for (index, a) in self.action.iter().enumerate() {
            if a.rows() != self.dim || a.cols() != self.dim || a.field() != self.ring.field() {
                return Err(ModuleError::ActionShape {
                    index,
                    dim: self.dim,
                });
            }
        }
        if self.act(self.ring.unit()) != Matrix::identity(self.field(), self.dim) {
            return Err(ModuleError::UnitAction);
        }
        for i in 0..d {
            for j in i..d {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(&self.ring.product_of_basis(i, j));
                if lhs != rhs {
                    return Err(ModuleError::Compatibility { i, j });
                }
                if i != j && lhs != self.action[j].mul(&self.action[i]) {
                    return Err(ModuleError::Compatibility { i: j, j: i });
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action matrices `A_0..A_{d-1}`.
    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix by which the ring element `r` acts.
    pub fn act(&self, r: &[u32]) -> Matrix {
        Matrix::combination(self.field(), (self.dim, self.dim), r, &self.action)
    }

    /// Action matrices of the cached basis of the maximal ideal.
    pub fn radical_actions(&self) -> Vec<Matrix> {
        self.ring
            .radical_basis()
            .iter()
            .map(|r| self.act(r))
            .collect()
    }

    pub fn same_ring(&self, other: &Module) -> Result<(), ModuleError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(ModuleError::RingMismatch)
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        let f = ring.field();
        let action = (0..ring.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        Module::from_parts(ring.clone(), 0, action)
    }

    /// Structural fingerprint: equal keys mean identical presentations.
    pub fn structure_key(&self) -> Vec<u32> {
        let alg = self.ring.algebra();
        let mut key = vec![alg.p(), alg.dim() as u32];
        key.extend_from_slice(alg.unit());
        for m in alg.mult_tables() {
            key.extend_from_slice(m.data());
        }
        key.push(self.dim as u32);
        for a in &self.action {
            key.extend_from_slice(a.data());
        }
        key
    }
}

/// The ring acting on itself by multiplication.
pub fn regular_module(ring: &Arc<Ring>) -> Module {
    Module::from_parts(ring.clone(), ring.dim(), ring.mult_tables().to_vec())
}

/// `R^rank` with basis ordered generator-major: index `j * d + i` is `e_i` in slot `j`.
pub fn free_module(ring: &Arc<Ring>, rank: usize) -> Module {
    let f = ring.field();
    let d = ring.dim();
    let action = ring
        .mult_tables()
        .iter()
        .map(|m| {
            let mut a = Matrix::zeros(f, rank * d, rank * d);
            for j in 0..rank {
                a.set_block(j * d, j * d, m);
            }
            a
        })
        .collect();
    Module::from_parts(ring.clone(), rank * d, action)
}

/// The residue field `k = R/m`.
pub fn simple_module(ring: &Arc<Ring>) -> Module {
    let reg = regular_module(ring);
    let rad = ring.radical().clone();
    quotient_module(&reg, &rad)
        .expect("the maximal ideal is a submodule")
        .0
}

pub fn direct_sum(a: &Module, b: &Module) -> Result<Module, ModuleError> {
    a.same_ring(b)?;
    let action = a
        .action
        .iter()
        .zip(&b.action)
        .map(|(x, y)| x.direct_sum(y))
        .collect();
    Ok(Module::from_parts(a.ring.clone(), a.dim + b.dim, action))
}

pub fn direct_power(m: &Module, n: usize) -> Module {
    (0..n).fold(Module::zero(m.ring()), |acc, _| {
        direct_sum(&acc, m).expect("same ring")
    })
}

/// `m M`: span of all radical elements applied to all vectors of `M`.
pub fn radical_submodule(m: &Module) -> Subspace {
    let acts = m.radical_actions();
    if acts.is_empty() {
        return Subspace::zero(m.field(), m.dim);
    }
    let stacked = acts
        .iter()
        .skip(1)
        .fold(acts[0].clone(), |acc, a| acc.hstack(a));
    Subspace::column_span(&stacked)
}

/// `{ v : m v = 0 }`.
pub fn socle(m: &Module) -> Subspace {
    let acts = m.radical_actions();
    if acts.is_empty() {
        return Subspace::full(m.field(), m.dim);
    }
    let stacked = Matrix::vstack_all(m.field(), m.dim, &acts);
    Subspace::kernel(&stacked)
}

/// `dim M/mM`, the number of generators of a minimal generating set.
pub fn minimal_generator_count(m: &Module) -> usize {
    (m.dim - radical_submodule(m).dim()) / m.ring.residue_degree()
}

/// Deterministic minimal generators: standard vectors taken in index order,
/// keeping each one not already in `mM` plus the span of the previous choices.
pub fn minimal_generators(m: &Module) -> Vec<Vec<u32>> {
    let rad = radical_submodule(m);
    let mut span = Echelon::from_subspace(&rad);
    let mut gens = Vec::new();
    for pos in rad.complement_positions() {
        let mut v = vec![0; m.dim];
        v[pos] = 1;
        if !span.insert(&v) {
            continue;
        }
        for a in &m.action {
            span.insert(&a.mul_vec(&v));
        }
        gens.push(v);
    }
    gens
}

/// Smallest action-closed subspace containing the given vectors.
pub fn closure(m: &Module, vectors: &[Vec<u32>]) -> Subspace {
    let f = m.field();
    let mut span = Subspace::span(f, m.dim, vectors);
    loop {
        let mut images = span.basis_vectors();
        for a in &m.action {
            for v in span.basis_vectors() {
                images.push(a.mul_vec(&v));
            }
        }
        let next = Subspace::span(f, m.dim, &images);
        if next.dim() == span.dim() {
            return span;
        }
        span = next;
    }
}

pub fn is_closed(m: &Module, s: &Subspace) -> Result<(), ModuleError> {
    for (index, a) in m.action.iter().enumerate() {
        for v in s.basis_vectors() {
            if !s.contains(&a.mul_vec(&v)) {
                return Err(ModuleError::NotSubmodule { index });
            }
        }
    }
    Ok(())
}

/// The module structure on an action-closed subspace, in the subspace's basis.
pub fn restrict_to(m: &Module, s: &Subspace) -> Result<(Module, ModuleMap), ModuleError> {
    is_closed(m, s)?;
    let f = m.field();
    let k = s.dim();
    let action = m
        .action
        .iter()
        .map(|a| {
            let cols: Vec<Vec<u32>> = s
                .basis_vectors()
                .iter()
                .map(|v| s.coordinates(&a.mul_vec(v)).expect("closed subspace"))
                .collect();
            Matrix::from_columns(f, k, &cols)
        })
        .collect();
    let sub = Module::from_parts(m.ring.clone(), k, action);
    let inclusion = s.basis().transpose();
    let map = ModuleMap::new_unchecked(sub.clone(), m.clone(), inclusion);
    Ok((sub, map))
}

/// Submodule generated by `vectors`, with its inclusion.
pub fn submodule_generated(m: &Module, vectors: &[Vec<u32>]) -> (Module, ModuleMap) {
    let s = closure(m, vectors);
    restrict_to(m, &s).expect("closure is action-closed")
}

/// `M/S` on the complement of the pivot positions of `S`, with its projection.
pub fn quotient_module(m: &Module, s: &Subspace) -> Result<(Module, ModuleMap), ModuleError> {
    is_closed(m, s)?;
    let f = m.field();
    let comp = s.complement_positions();
    let q = comp.len();
    let project = |v: &[u32]| -> Vec<u32> {
        let r = s.reduce(v);
        comp.iter().map(|&c| r[c]).collect()
    };
    let mut proj = Matrix::zeros(f, q, m.dim);
    for j in 0..m.dim {
        let mut e = vec![0; m.dim];
        e[j] = 1;
        for (r, x) in project(&e).into_iter().enumerate() {
            proj[(r, j)] = x;
        }
    }
    let action = m
        .action
        .iter()
        .map(|a| {
            let cols: Vec<Vec<u32>> = comp.iter().map(|&c| project(&a.column(c))).collect();
            Matrix::from_columns(f, q, &cols)
        })
        .collect();
    let quot = Module::from_parts(m.ring.clone(), q, action);
    let map = ModuleMap::new_unchecked(m.clone(), quot.clone(), proj);
    Ok((quot, map))
}

/// `0 -> S -> M -> M/S -> 0`.
pub fn ses_from_submodule(m: &Module, s: &Subspace) -> Result<ShortExactSequence, ModuleError> {
    let (_, inc) = restrict_to(m, s)?;
    let (_, proj) = quotient_module(m, s)?;
    ShortExactSequence::new(inc, proj)
}

/// Split sequence `0 -> A -> A + B -> B -> 0`.
pub fn split_sequence(a: &Module, b: &Module) -> Result<ShortExactSequence, ModuleError> {
    let sum = direct_sum(a, b)?;
    let first: Vec<Vec<u32>> = (0..a.dim)
        .map(|i| {
            let mut v = vec![0; sum.dim];
            v[i] = 1;
            v
        })
        .collect();
    let s = Subspace::span(a.field(), sum.dim, &first);
    ses_from_submodule(&sum, &s)
}

/// Deterministic sample: `R^a` modulo the submodule generated by a few random
/// elements, about half of them drawn from `m R^a`.
pub fn random_module(ring: &Arc<Ring>, max_free_rank: usize, seed: u64) -> Module {
    assert!(max_free_rank >= 1, "max_free_rank must be at least 1");
    const RETRIES: u64 = 16;
    let mut last = None;
    for attempt in 0..RETRIES {
        let derived = seed
            .wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
            .rotate_left(attempt as u32);
        let mut rng = ChaCha8Rng::seed_from_u64(derived);
        let rank = rng.gen_range(1..=max_free_rank);
        let count = rng.gen_range(1..=rank + 1);
        let gens: Vec<Vec<u32>> = (0..count)
            .map(|_| random_element(ring, rank, rng.gen_bool(0.75), &mut rng))
            .collect();
        let free = free_module(ring, rank);
        let m = random_quotient(&free, &gens);
        if !m.is_zero() {
            return m;
        }
        last = Some(m);
    }
    last.expect("at least one attempt")
}

/// `R^a / <gens>` where `gens` are given in the coordinates of `free`.
pub fn random_quotient(free: &Module, gens: &[Vec<u32>]) -> Module {
    let s = closure(free, gens);
    quotient_module(free, &s).expect("closure is a submodule").0
}

fn random_element(ring: &Ring, rank: usize, in_radical: bool, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let p = ring.p();
    let d = ring.dim();
    let mut v = Vec::with_capacity(rank * d);
    for _ in 0..rank {
        let coords: Vec<u32> = if in_radical {
            let rad = ring.radical_basis();
            let c: Vec<u32> = (0..rad.len()).map(|_| rng.gen_range(0..p)).collect();
            ring.radical().element(&c)
        } else {
            (0..d).map(|_| rng.gen_range(0..p)).collect()
        };
        v.extend(coords);
    }
    v
}

/// A ring-linear map between modules over the same ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Self, ModuleError> {
        source.same_ring(&target)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(ModuleError::MapShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let map = ModuleMap {
            source,
            target,
            matrix,
        };
        map.check_linear()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: Matrix) -> Self {
        let map = ModuleMap {
            source,
            target,
            matrix,
        };
        debug_assert_eq!(map.check_linear(), Ok(()));
        map
    }

    /// `matrix * A_i(source) = A_i(target) * matrix` for every basis index.
    pub fn check_linear(&self) -> Result<(), ModuleError> {
        for (index, (a, b)) in self
            .source
            .action
            .iter()
            .zip(&self.target.action)
            .enumerate()
        {
            if self.matrix.mul(a) != b.mul(&self.matrix) {
                return Err(ModuleError::NotLinearOverRing { index });
            }
        }
        Ok(())
    }

    pub fn identity(m: &Module) -> Self {
        ModuleMap::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim))
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        ModuleMap::new_unchecked(
            source.clone(),
            target.clone(),
            Matrix::zeros(source.field(), target.dim, source.dim),
        )
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(other.target, self.source, "composition of mismatched maps");
        ModuleMap::new_unchecked(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix),
        )
    }

    pub fn image(&self) -> Subspace {
        Subspace::column_span(&self.matrix)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel(&self.matrix)
    }
}

/// `0 -> L1 -> L2 -> L3 -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    sub: ModuleMap,
    quot: ModuleMap,
}

impl ShortExactSequence {
    pub fn new(sub: ModuleMap, quot: ModuleMap) -> Result<Self, ModuleError> {
        if sub.target != quot.source {
            return Err(ModuleError::NotExact("middle terms differ"));
        }
        if !sub.is_injective() {
            return Err(ModuleError::NotExact("first map is not injective"));
        }
        if !quot.is_surjective() {
            return Err(ModuleError::NotExact("second map is not surjective"));
        }
        let image = sub.image();
        let kernel = quot.kernel();
        if image.dim() != kernel.dim() || !image.is_subspace_of(&kernel) {
            return Err(ModuleError::NotExact("image differs from kernel"));
        }
        Ok(ShortExactSequence { sub, quot })
    }

    pub fn sub(&self) -> &ModuleMap {
        &self.sub
    }

    pub fn quot(&self) -> &ModuleMap {
        &self.quot
    }

    /// `(L1, L2, L3)`
    pub fn terms(&self) -> (&Module, &Module, &Module) {
        (self.sub.source(), self.sub.target(), self.quot.target())
    }
}
