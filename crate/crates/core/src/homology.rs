//! Minimal free resolutions and the Ext/Tor dimensions computed from them.
//!
//! A free module `R^b` uses the generator-major basis of
//! [`free_module`](crate::module::free_module). A differential
//! `d_i : R^{b_i} -> R^{b_{i-1}}` is determined by its generator images
//! `g_j in R^{b_{i-1}}`; entry `(a, j)` of `d_i` as a matrix over the ring is
//! the ring element in slot `a` of `g_j`.
//!
//! Ext is computed two ways: from a free resolution of the first argument,
//! and from an injective coresolution of the second obtained by dualizing a
//! free resolution of its Matlis dual.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::functor::matlis_dual;
use crate::linalg::{Echelon, Matrix, Subspace};
use crate::module::{free_module, minimal_generators, Module, ModuleError, ModuleMap};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("not a complex: map {index} composed with map {next} is nonzero", next = index + 1)]
    NotAComplex { index: usize },
    #[error("maps {index} and {next} have incompatible shapes", next = index + 1)]
    ShapeMismatch { index: usize },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Prefix `F_B -> ... -> F_0 -> M` of a minimal free resolution.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub module: Module,
    /// `b_0..b_B`
    pub betti: Vec<usize>,
    /// `generators[i - 1]` has the images of the basis of `F_i` as columns,
    /// size `(b_{i-1} d) x b_i`.
    pub generators: Vec<Matrix>,
    /// `d_i` over the field, size `(b_{i-1} d) x (b_i d)`.
    pub differentials: Vec<Matrix>,
    pub augmentation: ModuleMap,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.betti.len() - 1
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.module.ring()
    }

    /// Ring element at position `(a, j)` of `d_i`.
    pub fn entry(&self, i: usize, a: usize, j: usize) -> Vec<u32> {
        let d = self.ring().dim();
        let g = &self.generators[i - 1];
        (0..d).map(|t| g[(a * d + t, j)]).collect()
    }

    /// Every entry of every differential lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        let ring = self.ring();
        (1..=self.length()).all(|i| {
            (0..self.betti[i - 1])
                .all(|a| (0..self.betti[i]).all(|j| ring.radical().contains(&self.entry(i, a, j))))
        })
    }

    /// `d_{i-1} d_i = 0`, `eps d_1 = 0`, `eps` onto, and exactness at every interior term.
    pub fn is_exact(&self) -> bool {
        let eps = self.augmentation.matrix();
        if eps.rank() != self.module.dim() {
            return false;
        }
        let mut prev = eps.clone();
        for d in &self.differentials {
            if !prev.mul(d).is_zero() {
                return false;
            }
            let kernel = prev.cols() - prev.rank();
            if d.rank() != kernel {
                return false;
            }
            prev = d.clone();
        }
        true
    }
}

/// Images `r * v` for a vector `v` of `R^b`, blockwise.
fn free_act(ring: &Ring, r: &Matrix, v: &[u32]) -> Vec<u32> {
    let d = ring.dim();
    let mut out = Vec::with_capacity(v.len());
    for block in v.chunks(d) {
        out.extend(r.mul_vec(block));
    }
    out
}

/// Field matrix of the map `R^b -> R^{b'}` sending generator `j` to `gens[j]`.
fn cover_of_free(ring: &Ring, ambient: usize, gens: &[Vec<u32>]) -> Matrix {
    let d = ring.dim();
    let mut cols = Vec::with_capacity(gens.len() * d);
    for g in gens {
        for m in ring.mult_tables() {
            cols.push(free_act(ring, m, g));
        }
    }
    Matrix::from_columns(ring.field(), ambient, &cols)
}

fn compute_resolution(m: &Module, length: usize) -> FreeResolution {
    let ring = m.ring().clone();
    let f = ring.field();
    let d = ring.dim();
    let gens0 = minimal_generators(m);
    let b0 = gens0.len();
    let mut eps_cols = Vec::with_capacity(b0 * d);
    for g in &gens0 {
        for a in m.action() {
            eps_cols.push(a.mul_vec(g));
        }
    }
    let eps = Matrix::from_columns(f, m.dim(), &eps_cols);
    let augmentation = ModuleMap::new_unchecked(free_module(&ring, b0), m.clone(), eps.clone());

    let rad_mults: Vec<Matrix> = ring
        .radical_basis()
        .iter()
        .map(|r| ring.mult_matrix(r))
        .collect();
    let mut betti = vec![b0];
    let mut generators = Vec::with_capacity(length);
    let mut differentials = Vec::with_capacity(length);
    let mut prev = eps;
    for _ in 1..=length {
        let ambient = prev.cols();
        let kernel = Subspace::kernel(&prev);
        let gens = if kernel.dim() == 0 {
            Vec::new()
        } else {
            let mut rad_images = Vec::with_capacity(rad_mults.len() * kernel.dim());
            for v in kernel.basis_vectors() {
                for r in &rad_mults {
                    rad_images.push(free_act(&ring, r, &v));
                }
            }
            let mut span = Echelon::from_subspace(&Subspace::span(f, ambient, &rad_images));
            let mut gens = Vec::new();
            for v in kernel.basis_vectors() {
                if !span.insert(&v) {
                    continue;
                }
                for e in ring.mult_tables() {
                    span.insert(&free_act(&ring, e, &v));
                }
                gens.push(v);
            }
            gens
        };
        let di = cover_of_free(&ring, ambient, &gens);
        generators.push(Matrix::from_columns(f, ambient, &gens));
        betti.push(gens.len());
        differentials.push(di.clone());
        prev = di;
    }
    FreeResolution {
        module: m.clone(),
        betti,
        generators,
        differentials,
        augmentation,
    }
}

type ResolutionCache = RwLock<HashMap<Vec<u32>, Arc<FreeResolution>>>;

fn cache() -> &'static ResolutionCache {
    static CACHE: OnceLock<ResolutionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Minimal free resolution of `m` to length at least `length`, memoized by
/// module structure. The returned resolution may be longer than requested.
pub fn minimal_free_resolution(m: &Module, length: usize) -> Arc<FreeResolution> {
    let key = m.structure_key();
    if let Some(hit) = cache().read().expect("cache poisoned").get(&key) {
        if hit.length() >= length {
            return hit.clone();
        }
    }
    let res = Arc::new(compute_resolution(m, length));
    let mut guard = cache().write().expect("cache poisoned");
    match guard.get(&key) {
        Some(existing) if existing.length() >= length => existing.clone(),
        _ => {
            guard.insert(key, res.clone());
            res
        }
    }
}

pub fn clear_resolution_cache() {
    cache().write().expect("cache poisoned").clear();
}

/// Coresolution `N -> E^{b_0} -> E^{b_1} -> ...` obtained by dualizing a
/// minimal free resolution of `N^∨`.
#[derive(Clone, Debug)]
pub struct InjectiveResolution {
    pub module: Module,
    pub betti: Vec<usize>,
    /// Resolution of the dual it was built from.
    pub dual_resolution: Arc<FreeResolution>,
    /// `N -> E^{b_0}`
    pub coaugmentation: ModuleMap,
    /// `E^{b_j} -> E^{b_{j+1}}`, the transposes of the dual's differentials.
    pub codifferentials: Vec<Matrix>,
}

pub fn injective_resolution(n: &Module, length: usize) -> InjectiveResolution {
    let dual = matlis_dual(n);
    let res = minimal_free_resolution(&dual, length);
    let betti = res.betti[..=length].to_vec();
    let ring = n.ring();
    let e0 = matlis_dual(&free_module(ring, betti[0]));
    let coaugmentation =
        ModuleMap::new_unchecked(n.clone(), e0, res.augmentation.matrix().transpose());
    let codifferentials = res.differentials[..length]
        .iter()
        .map(Matrix::transpose)
        .collect();
    InjectiveResolution {
        module: n.clone(),
        betti,
        dual_resolution: res,
        coaugmentation,
        codifferentials,
    }
}

/// Dimensions of `Ext^i(M, N)`, `0 <= i <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub dims: Vec<usize>,
}

/// Dimensions of `Tor_i(M, N)`, `0 <= i <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub dims: Vec<usize>,
}

impl ExtTable {
    /// First positive degree with nonzero Ext, if any.
    pub fn first_nonvanishing(&self) -> Option<(usize, usize)> {
        self.dims
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &d)| d != 0)
            .map(|(i, &d)| (i, d))
    }
}

impl TorTable {
    pub fn first_nonvanishing(&self) -> Option<(usize, usize)> {
        self.dims
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &d)| d != 0)
            .map(|(i, &d)| (i, d))
    }
}

/// Block matrix whose `(row, col)` block is the action on `n` of a ring
/// element picked by `entry(row, col)`.
fn block_action(
    n: &Module,
    rows: usize,
    cols: usize,
    entry: impl Fn(usize, usize) -> Vec<u32>,
) -> Matrix {
    let dn = n.dim();
    let mut m = Matrix::zeros(n.field(), rows * dn, cols * dn);
    for r in 0..rows {
        for c in 0..cols {
            let e = entry(r, c);
            if e.iter().all(|&x| x == 0) {
                continue;
            }
            m.set_block(r * dn, c * dn, &n.act(&e));
        }
    }
    m
}

/// `Hom(d_i, N) : N^{b_{i-1}} -> N^{b_i}`
fn hom_differential(res: &FreeResolution, i: usize, n: &Module) -> Matrix {
    block_action(n, res.betti[i], res.betti[i - 1], |j, a| res.entry(i, a, j))
}

/// `d_i ⊗ N : N^{b_i} -> N^{b_{i-1}}`
fn tensor_differential(res: &FreeResolution, i: usize, n: &Module) -> Matrix {
    block_action(n, res.betti[i - 1], res.betti[i], |a, j| res.entry(i, a, j))
}

pub fn ext_dims(m: &Module, n: &Module, bound: usize) -> Result<ExtTable, ModuleError> {
    m.same_ring(n)?;
    let res = minimal_free_resolution(m, bound + 1);
    // ranks[i] = rank of the map out of degree i - 1
    let ranks: Vec<usize> = std::iter::once(0)
        .chain((1..=bound + 1).map(|i| hom_differential(&res, i, n).rank()))
        .collect();
    let dims = (0..=bound)
        .map(|i| res.betti[i] * n.dim() - ranks[i] - ranks[i + 1])
        .collect();
    Ok(ExtTable { dims })
}

pub fn tor_dims(m: &Module, n: &Module, bound: usize) -> Result<TorTable, ModuleError> {
    m.same_ring(n)?;
    let res = minimal_free_resolution(m, bound + 1);
    let ranks: Vec<usize> = std::iter::once(0)
        .chain((1..=bound + 1).map(|i| tensor_differential(&res, i, n).rank()))
        .collect();
    let dims = (0..=bound)
        .map(|i| res.betti[i] * n.dim() - ranks[i] - ranks[i + 1])
        .collect();
    Ok(TorTable { dims })
}

/// The cochain maps of `Hom(M, I^•)`.
///
/// An `R`-linear `psi : M -> (R^b)^∨` is determined by the functionals
/// `psi_a = psi(-)(e_a)`, which identifies `Hom(M, E^b)` with `(M^∨)^b`.
/// Under that identification `Hom(M, d^∨)` has block `(c, a)` equal to the
/// action of `d`'s entry `(a, c)` on `M^∨`.
pub fn hom_into_coresolution(m: &Module, inj: &InjectiveResolution) -> Vec<Matrix> {
    let md = matlis_dual(m);
    let res = &inj.dual_resolution;
    (1..inj.betti.len())
        .map(|j| {
            block_action(&md, inj.betti[j], inj.betti[j - 1], |c, a| {
                res.entry(j, a, c)
            })
        })
        .collect()
}

pub fn ext_dims_via_injective(
    m: &Module,
    n: &Module,
    bound: usize,
) -> Result<ExtTable, ModuleError> {
    m.same_ring(n)?;
    let inj = injective_resolution(n, bound + 1);
    let maps = hom_into_coresolution(m, &inj);
    let mut dims = homology_dims(&maps);
    dims.truncate(bound + 1);
    Ok(ExtTable { dims })
}

/// Cohomology dimensions of `V_0 -> V_1 -> ... -> V_n` given `maps[k] : V_k -> V_{k+1}`.
///
/// Position `k` reports `dim ker(maps[k]) - rank(maps[k-1])`; the last space
/// is taken modulo the image only.
pub fn complex_homology(maps: &[Matrix]) -> Result<Vec<usize>, HomologyError> {
    for (index, pair) in maps.windows(2).enumerate() {
        if pair[1].cols() != pair[0].rows() {
            return Err(HomologyError::ShapeMismatch { index });
        }
        if !pair[1].mul(&pair[0]).is_zero() {
            return Err(HomologyError::NotAComplex { index });
        }
    }
    Ok(homology_dims(maps))
}

fn homology_dims(maps: &[Matrix]) -> Vec<usize> {
    if maps.is_empty() {
        return Vec::new();
    }
    let ranks: Vec<usize> = maps.iter().map(Matrix::rank).collect();
    let mut dims = Vec::with_capacity(maps.len() + 1);
    for k in 0..=maps.len() {
        let space = if k < maps.len() {
            maps[k].cols()
        } else {
            maps[k - 1].rows()
        };
        let out = if k < maps.len() { ranks[k] } else { 0 };
        let inc = if k > 0 { ranks[k - 1] } else { 0 };
        dims.push(space - out - inc);
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{hom_module, injective_hull_e};
    use crate::linalg::PrimeField;
    use crate::module::*;
    use crate::ring::fixtures::*;

    #[test]
    fn free_module_resolves_trivially() {
        let r5 = Arc::new(square_zero());
        let res = minimal_free_resolution(&regular_module(&r5), 4);
        assert_eq!(res.betti[..5], [1, 0, 0, 0, 0]);
        let res = minimal_free_resolution(&free_module(&r5, 3), 2);
        assert_eq!(res.betti[..3], [3, 0, 0]);
    }

    #[test]
    fn residue_field_resolutions() {
        let r3 = Arc::new(truncated_poly(2, 2));
        let res = minimal_free_resolution(&simple_module(&r3), 5);
        assert_eq!(res.betti[..6], [1; 6]);
        assert!(res.is_minimal() && res.is_exact());

        let r5 = Arc::new(square_zero());
        let res = minimal_free_resolution(&simple_module(&r5), 5);
        assert_eq!(res.betti[..6], [1, 2, 4, 8, 16, 32]);
        assert!(res.is_minimal() && res.is_exact());
    }

    #[test]
    fn resolutions_are_minimal_and_exact() {
        for r in [truncated_poly(3, 3), square_zero(), two_squares(), f4()] {
            let r = Arc::new(r);
            for seed in 0..6 {
                let m = random_module(&r, 2, seed);
                let res = minimal_free_resolution(&m, 3);
                assert!(res.is_minimal(), "{:?} seed {seed}", r);
                assert!(res.is_exact(), "{:?} seed {seed}", r);
                assert_eq!(res.betti[0], minimal_generator_count(&m));
            }
        }
    }

    #[test]
    fn injective_resolution_shapes() {
        let r5 = Arc::new(square_zero());
        let e = injective_hull_e(&r5);
        assert_eq!(injective_resolution(&e, 3).betti, vec![1, 0, 0, 0]);
        let r3 = Arc::new(truncated_poly(2, 2));
        assert_eq!(
            injective_resolution(&simple_module(&r3), 3).betti,
            vec![1, 1, 1, 1]
        );
        let inj = injective_resolution(&regular_module(&r5), 2);
        assert_eq!(inj.betti[0], 2);
        assert!(inj.coaugmentation.is_injective());
        assert_eq!(inj.coaugmentation.check_linear(), Ok(()));
    }

    #[test]
    fn ext_and_tor_spot_values() {
        let r3 = Arc::new(truncated_poly(2, 2));
        let k = simple_module(&r3);
        assert_eq!(ext_dims(&k, &k, 4).unwrap().dims, vec![1; 5]);
        assert_eq!(tor_dims(&k, &k, 4).unwrap().dims, vec![1; 5]);
        assert_eq!(ext_dims_via_injective(&k, &k, 4).unwrap().dims, vec![1; 5]);

        let r5 = Arc::new(square_zero());
        let reg = regular_module(&r5);
        let e = injective_hull_e(&r5);
        for seed in 0..5 {
            let m = random_module(&r5, 2, seed);
            let hom = hom_module(&m, &e).unwrap().dim();
            assert_eq!(ext_dims(&reg, &m, 3).unwrap().dims, vec![m.dim(), 0, 0, 0]);
            assert_eq!(tor_dims(&reg, &m, 3).unwrap().dims, vec![m.dim(), 0, 0, 0]);
            assert_eq!(
                ext_dims_via_injective(&m, &e, 3).unwrap().dims,
                vec![hom, 0, 0, 0]
            );
            assert_eq!(
                ext_dims_via_injective(&reg, &m, 3).unwrap().dims,
                vec![m.dim(), 0, 0, 0]
            );
        }
    }

    #[test]
    fn literal_hom_into_coresolution_matches() {
        // Compute Hom(M, I^j) with the generic Hom solver and the induced maps
        // by composition, then compare with the adjunction formula.
        let r3 = Arc::new(truncated_poly(2, 2));
        for seed in 0..4 {
            let m = random_module(&r3, 2, seed);
            let n = random_module(&r3, 2, seed + 100);
            let inj = injective_resolution(&n, 3);
            let terms: Vec<Module> = inj
                .betti
                .iter()
                .map(|&b| crate::functor::matlis_dual(&free_module(&r3, b)))
                .collect();
            let homs: Vec<_> = terms.iter().map(|t| hom_module(&m, t).unwrap()).collect();
            let maps: Vec<Matrix> = (0..inj.codifferentials.len())
                .map(|j| {
                    let cols: Vec<Vec<u32>> = homs[j]
                        .basis
                        .iter()
                        .map(|psi| homs[j + 1].coords(&inj.codifferentials[j].mul(psi)))
                        .collect();
                    Matrix::from_columns(m.field(), homs[j + 1].dim(), &cols)
                })
                .collect();
            let literal = complex_homology(&maps).unwrap();
            let formula = homology_dims(&hom_into_coresolution(&m, &inj));
            assert_eq!(literal[..3], formula[..3]);
            assert_eq!(literal[..3], ext_dims(&m, &n, 2).unwrap().dims[..]);
        }
    }

    #[test]
    fn complex_homology_examples() {
        let f = PrimeField::new(2);
        let z = Matrix::zeros(f, 3, 2);
        assert_eq!(complex_homology(&[z]).unwrap(), vec![2, 3]);
        let id = Matrix::identity(f, 2);
        assert_eq!(complex_homology(&[id]).unwrap(), vec![0, 0]);
        let m = Matrix::from_rows(f, &[[1, 0], [0, 0]]);
        assert_eq!(
            complex_homology(std::slice::from_ref(&m)).unwrap(),
            vec![1, 1]
        );
        assert_eq!(
            complex_homology(&[m.clone(), m]).unwrap_err(),
            HomologyError::NotAComplex { index: 0 }
        );
    }
}
