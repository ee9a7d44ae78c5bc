use std::sync::Arc;

use proptest::prelude::*;
use qdual_core::functor::{
    biduality_map, hom_module, injective_hull_e, is_isomorphism, matlis_dual, matlis_dual_map,
    tensor_module,
};
use qdual_core::module::{
    closure, minimal_generator_count, random_module, ses_from_submodule, socle,
};
use qdual_core::ring::validate_ring;
use qdual_core::{Matrix, Module, Ring};

fn product_table(d: usize, mul: impl Fn(usize, usize) -> Vec<i64>) -> Vec<Vec<Vec<i64>>> {
    (0..d)
        .map(|i| (0..d).map(|j| mul(i, j)).collect())
        .collect()
}

fn unit_vec(d: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[k] = 1;
    v
}

/// Monomial algebra on `basis` (exponent vectors) with truncation `caps`.
fn monomial_ring(name: &str, p: u64, basis: &[(usize, usize)], caps: (usize, usize)) -> Ring {
    let d = basis.len();
    let table = product_table(d, |i, j| {
        let e = (basis[i].0 + basis[j].0, basis[i].1 + basis[j].1);
        match basis.iter().position(|&b| b == e) {
            Some(k) if e.0 < caps.0 && e.1 < caps.1 => unit_vec(d, k),
            _ => vec![0; d],
        }
    });
    validate_ring(name, p, &unit_vec(d, 0), &table).unwrap()
}

fn rings() -> Vec<Arc<Ring>> {
    vec![
        Arc::new(monomial_ring("r3", 2, &[(0, 0), (1, 0)], (2, 1))),
        Arc::new(monomial_ring("r4", 3, &[(0, 0), (1, 0), (2, 0)], (3, 1))),
        Arc::new(monomial_ring("r5", 2, &[(0, 0), (1, 0), (0, 1)], (2, 2))),
        Arc::new(monomial_ring(
            "r6",
            2,
            &[(0, 0), (1, 0), (0, 1), (1, 1)],
            (2, 2),
        )),
    ]
}

fn module() -> impl Strategy<Value = Module> {
    (0usize..4, any::<u64>()).prop_map(|(ri, seed)| random_module(&rings()[ri], 2, seed))
}

fn module_pair() -> impl Strategy<Value = (Module, Module)> {
    (0usize..4, any::<u64>(), any::<u64>()).prop_map(|(ri, a, b)| {
        let r = &rings()[ri];
        (random_module(r, 2, a), random_module(r, 2, b))
    })
}

/// Counts R-linear maps `M -> N` over F_2 by enumerating every matrix.
fn brute_hom_count_f2(m: &Module, n: &Module) -> Option<usize> {
    let cells = m.dim() * n.dim();
    if m.field().p() != 2 || cells > 14 {
        return None;
    }
    let f = m.field();
    let mut count = 0;
    for mask in 0u32..(1 << cells) {
        let data = (0..cells).map(|b| mask >> b & 1).collect();
        let phi = Matrix::from_data(f, n.dim(), m.dim(), data);
        if m.action()
            .iter()
            .zip(n.action())
            .all(|(am, an)| phi.mul(am) == an.mul(&phi))
        {
            count += 1;
        }
    }
    Some(count)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_dimension_matches_enumeration((m, n) in module_pair()) {
        if let Some(count) = brute_hom_count_f2(&m, &n) {
            let h = hom_module(&m, &n).unwrap();
            prop_assert_eq!(count, 1usize << h.dim());
        }
    }

    #[test]
    fn hom_elements_are_linear((m, n) in module_pair()) {
        let h = hom_module(&m, &n).unwrap();
        for phi in &h.basis {
            for (am, an) in m.action().iter().zip(n.action()) {
                prop_assert_eq!(phi.mul(am), an.mul(phi));
            }
        }
        prop_assert!(h.module.validate().is_ok());
    }

    #[test]
    fn hom_tensor_adjunction_dimensions((m, n) in module_pair(), pi in 0usize..2) {
        let ring = m.ring().clone();
        let p = if pi == 0 { injective_hull_e(&ring) } else { n.clone() };
        let t = tensor_module(&m, &n).unwrap();
        let lhs = hom_module(&t.module, &p).unwrap().dim();
        let inner = hom_module(&n, &p).unwrap();
        let rhs = hom_module(&m, &inner.module).unwrap().dim();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_is_symmetric_and_unital((m, n) in module_pair()) {
        let r = qdual_core::module::regular_module(m.ring());
        prop_assert_eq!(tensor_module(&r, &m).unwrap().dim(), m.dim());
        prop_assert_eq!(
            tensor_module(&m, &n).unwrap().dim(),
            tensor_module(&n, &m).unwrap().dim()
        );
    }

    #[test]
    fn matlis_dual_is_involutive(m in module()) {
        prop_assert_eq!(matlis_dual(&matlis_dual(&m)), m.clone());
        let e = injective_hull_e(m.ring());
        prop_assert_eq!(hom_module(&m, &e).unwrap().dim(), m.dim());
        let delta = biduality_map(&m, &e).unwrap();
        prop_assert!(is_isomorphism(&delta.map).iso);
        // biduality into E is natural with respect to the action
        prop_assert!(delta.map.check_linear().is_ok());
    }

    #[test]
    fn matlis_dual_is_exact(m in module(), seed in any::<u64>()) {
        let f = m.field();
        let v: Vec<u32> = (0..m.dim()).map(|i| ((seed >> (3 * i)) as u32) % f.p()).collect();
        let ses = ses_from_submodule(&m, &closure(&m, &[v])).unwrap();
        let inc = matlis_dual_map(ses.sub());
        let proj = matlis_dual_map(ses.quot());
        // 0 -> C^ -> B^ -> A^ -> 0
        prop_assert!(proj.is_injective());
        prop_assert!(inc.is_surjective());
        prop_assert!(inc.compose(&proj).matrix().is_zero());
        prop_assert_eq!(proj.rank() + inc.rank(), m.dim());
    }

    #[test]
    fn socle_and_generators(m in module()) {
        let s = socle(&m);
        prop_assert!(s.dim() > 0);
        let dual_gens = minimal_generator_count(&matlis_dual(&m));
        // the socle of M is dual to M^/mM^
        prop_assert_eq!(s.dim(), dual_gens * m.ring().residue_degree());
    }
}
