//! Bounded membership tests for the duality classes and checkers for the
//! relations between them.
//!
//! "Ext^i = 0 for all i > 0" is tested for `1 <= i <= bound`. Every module here
//! has finite length, so the finitely generated, artinian, Matlis reflexive
//! and noetherian variants of a class all coincide and are reported as one.

use std::fmt;

use thiserror::Error;

use crate::functor::{
    biduality_map, evaluation_map, gamma_map, hom_module, homothety_map, injective_hull_e,
    is_isomorphism, matlis_dual, tensor_module, NaturalMap,
};
use crate::homology::{ext_dims, tor_dims};
use crate::module::{regular_module, Module, ModuleError, ShortExactSequence};
use crate::ring::Ring;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "VACUOUS",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: String,
    pub verdict: Verdict,
    pub witness: String,
    /// Truth values of the two sides, for biconditionals.
    pub sides: Option<(bool, bool)>,
}

impl Condition {
    fn new(label: impl Into<String>, verdict: Verdict, witness: impl Into<String>) -> Self {
        Condition {
            label: label.into(),
            verdict,
            witness: witness.into(),
            sides: None,
        }
    }

    fn iff(label: impl Into<String>, lhs: &CheckReport, rhs: &CheckReport) -> Self {
        let (a, b) = (lhs.passed(), rhs.passed());
        let mut witness = format!(
            "{} {} / {} {}",
            lhs.name, lhs.verdict, rhs.name, rhs.verdict
        );
        for side in [lhs, rhs] {
            if let Some(c) = side.first_failure() {
                witness.push_str(&format!("; {}: {} ({})", side.name, c.label, c.witness));
            }
        }
        Condition {
            label: label.into(),
            verdict: Verdict::from_bool(a == b),
            witness,
            sides: Some((a, b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub bound: usize,
    pub conditions: Vec<Condition>,
}

impl CheckReport {
    /// PASS iff every condition passes; otherwise FAIL if any fails, else VACUOUS.
    pub fn new(name: impl Into<String>, bound: usize, conditions: Vec<Condition>) -> Self {
        let verdict = if conditions.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if conditions.iter().all(|c| c.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Vacuous
        };
        CheckReport {
            name: name.into(),
            verdict,
            bound,
            conditions,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn first_failure(&self) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.verdict == Verdict::Fail)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} (bound {})", self.name, self.verdict, self.bound)?;
        for c in &self.conditions {
            write!(f, "\n  {} {}: {}", c.verdict, c.label, c.witness)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("parameter is not quasidualizing at bound {bound}: {reason}")]
    NotQuasidualizing { bound: usize, reason: String },
    #[error("bound {bound} is below the minimum {min}")]
    BoundTooSmall { bound: usize, min: usize },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

fn iso_condition(label: &str, map: Result<NaturalMap, ModuleError>) -> Condition {
    match map {
        Ok(nat) => {
            let diag = is_isomorphism(&nat.map);
            Condition::new(label, Verdict::from_bool(diag.iso), diag.to_string())
        }
        Err(e) => Condition::new(label, Verdict::Fail, e.to_string()),
    }
}

fn vanishing_condition(
    label: String,
    dims: Result<Vec<usize>, ModuleError>,
    bound: usize,
) -> Condition {
    match dims {
        Ok(dims) => match (1..=bound).find(|&i| dims[i] != 0) {
            Some(i) => Condition::new(
                label,
                Verdict::Fail,
                format!("degree {i} has dim {}", dims[i]),
            ),
            None => Condition::new(label, Verdict::Pass, format!("zero through degree {bound}")),
        },
        Err(e) => Condition::new(label, Verdict::Fail, e.to_string()),
    }
}

fn ext_vanishing(label: &str, m: &Module, n: &Module, bound: usize) -> Condition {
    vanishing_condition(
        format!("{label} 1..{bound}"),
        ext_dims(m, n, bound).map(|t| t.dims),
        bound,
    )
}

fn tor_vanishing(label: &str, m: &Module, n: &Module, bound: usize) -> Condition {
    vanishing_condition(
        format!("{label} 1..{bound}"),
        tor_dims(m, n, bound).map(|t| t.dims),
        bound,
    )
}

fn self_dualizing(name: &str, auto: &str, c: &Module, bound: usize) -> CheckReport {
    let conditions = vec![
        Condition::new(auto, Verdict::Pass, format!("finite length {}", c.dim())),
        iso_condition("homothety iso", Ok(homothety_map(c))),
        ext_vanishing("Ext(C,C) = 0", c, c, bound),
    ];
    CheckReport::new(name, bound, conditions)
}

pub fn is_semidualizing(c: &Module, bound: usize) -> CheckReport {
    self_dualizing("semidualizing", "finitely generated", c, bound)
}

pub fn is_quasidualizing(t: &Module, bound: usize) -> CheckReport {
    self_dualizing("quasidualizing", "artinian", t, bound)
}

/// Membership of `l` in `G_m`.
pub fn is_derived_reflexive(l: &Module, m: &Module, bound: usize) -> CheckReport {
    let mut conditions = vec![
        iso_condition("biduality iso", biduality_map(l, m)),
        ext_vanishing("Ext(L,M) = 0", l, m, bound),
    ];
    match hom_module(l, m) {
        Ok(h) => conditions.push(ext_vanishing("Ext(Hom(L,M),M) = 0", &h.module, m, bound)),
        Err(e) => conditions.push(Condition::new(
            "Ext(Hom(L,M),M) = 0",
            Verdict::Fail,
            e.to_string(),
        )),
    }
    CheckReport::new("derived-reflexive", bound, conditions)
}

/// Membership of `l` in `B_lp`.
pub fn in_bass_class(l: &Module, lp: &Module, bound: usize) -> CheckReport {
    let mut conditions = vec![
        iso_condition("evaluation iso", evaluation_map(lp, l)),
        ext_vanishing("Ext(L',L) = 0", lp, l, bound),
    ];
    match hom_module(lp, l) {
        Ok(h) => conditions.push(tor_vanishing("Tor(L',Hom(L',L)) = 0", lp, &h.module, bound)),
        Err(e) => conditions.push(Condition::new(
            "Tor(L',Hom(L',L)) = 0",
            Verdict::Fail,
            e.to_string(),
        )),
    }
    CheckReport::new("bass", bound, conditions)
}

/// Membership of `l` in `A_lp`.
pub fn in_auslander_class(l: &Module, lp: &Module, bound: usize) -> CheckReport {
    let mut conditions = vec![
        iso_condition("gamma iso", gamma_map(lp, l)),
        tor_vanishing("Tor(L',L) = 0", lp, l, bound),
    ];
    match tensor_module(lp, l) {
        Ok(t) => conditions.push(ext_vanishing("Ext(L',L'⊗L) = 0", lp, &t.module, bound)),
        Err(e) => conditions.push(Condition::new(
            "Ext(L',L'⊗L) = 0",
            Verdict::Fail,
            e.to_string(),
        )),
    }
    CheckReport::new("auslander", bound, conditions)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// `G_M`: derived M-reflexive modules.
    G,
    /// `A_{L'}`: Auslander class.
    A,
    /// `B_{L'}`: Bass class.
    B,
}

impl ClassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::G => "G",
            ClassKind::A => "A",
            ClassKind::B => "B",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassMembership {
    pub class: ClassKind,
    pub subject: Module,
    pub parameter: Module,
    pub bound: usize,
}

impl ClassMembership {
    pub fn new(
        class: ClassKind,
        subject: Module,
        parameter: Module,
        bound: usize,
    ) -> Result<Self, ModuleError> {
        subject.same_ring(&parameter)?;
        Ok(ClassMembership {
            class,
            subject,
            parameter,
            bound,
        })
    }

    pub fn check(&self) -> CheckReport {
        match self.class {
            ClassKind::G => is_derived_reflexive(&self.subject, &self.parameter, self.bound),
            ClassKind::A => in_auslander_class(&self.subject, &self.parameter, self.bound),
            ClassKind::B => in_bass_class(&self.subject, &self.parameter, self.bound),
        }
    }
}

fn require_quasidualizing(t: &Module, bound: usize) -> Result<(), CheckError> {
    let report = is_quasidualizing(t, bound);
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(CheckError::NotQuasidualizing {
            bound,
            reason: format!("{}: {}", c.label, c.witness),
        }),
    }
}

fn implication(
    label: &str,
    hypothesis: &CheckReport,
    conclusion: impl FnOnce() -> CheckReport,
) -> Condition {
    if !hypothesis.passed() {
        return Condition::new(
            label,
            Verdict::Vacuous,
            format!("{} {}", hypothesis.name, hypothesis.verdict),
        );
    }
    let c = conclusion();
    let witness = match c.first_failure() {
        Some(f) => format!("{} {}: {} ({})", c.name, c.verdict, f.label, f.witness),
        None => format!("{} {}", c.name, c.verdict),
    };
    Condition::new(label, c.verdict, witness)
}

/// Matlis duality exchanges semidualizing and quasidualizing modules.
pub fn check_duality_swap(x: &Module, bound: usize) -> CheckReport {
    let xd = matlis_dual(x);
    let semi = is_semidualizing(x, bound);
    let quasi = is_quasidualizing(x, bound);
    let mut conditions = vec![
        implication("semidualizing => dual quasidualizing", &semi, || {
            is_quasidualizing(&xd, bound)
        }),
        implication("quasidualizing => dual semidualizing", &quasi, || {
            is_semidualizing(&xd, bound)
        }),
    ];
    if semi.passed() || quasi.passed() {
        let e = injective_hull_e(x.ring());
        conditions.push(iso_condition("biduality into E iso", biduality_map(x, &e)));
    }
    CheckReport::new("duality-swap", bound, conditions)
}

/// The four equivalences exchanging Bass and reflexive classes under Matlis duality.
pub fn check_theorem_b(t: &Module, m: &Module, bound: usize) -> Result<CheckReport, CheckError> {
    t.same_ring(m)?;
    require_quasidualizing(t, bound)?;
    let td = matlis_dual(t);
    let md = matlis_dual(m);
    let conditions = vec![
        Condition::iff(
            "M in B(T^) <=> M^ in G(T)",
            &in_bass_class(m, &td, bound),
            &is_derived_reflexive(&md, t, bound),
        ),
        Condition::iff(
            "M in G(T) <=> M^ in B(T^)",
            &is_derived_reflexive(m, t, bound),
            &in_bass_class(&md, &td, bound),
        ),
        Condition::iff(
            "M in B(T) <=> M^ in G(T^)",
            &in_bass_class(m, t, bound),
            &is_derived_reflexive(&md, &td, bound),
        ),
        Condition::iff(
            "M in G(T^) <=> M^ in B(T)",
            &is_derived_reflexive(m, &td, bound),
            &in_bass_class(&md, t, bound),
        ),
    ];
    Ok(CheckReport::new("theorem-b", bound, conditions))
}

/// `G_{T^∨} = A_T` and `G_T = A_{T^∨}` evaluated on `m`.
pub fn check_class_equality(
    t: &Module,
    m: &Module,
    bound: usize,
) -> Result<CheckReport, CheckError> {
    t.same_ring(m)?;
    require_quasidualizing(t, bound)?;
    let td = matlis_dual(t);
    let conditions = vec![
        Condition::iff(
            "G(T^) = A(T)",
            &is_derived_reflexive(m, &td, bound),
            &in_auslander_class(m, t, bound),
        ),
        Condition::iff(
            "G(T) = A(T^)",
            &is_derived_reflexive(m, t, bound),
            &in_auslander_class(m, &td, bound),
        ),
    ];
    Ok(CheckReport::new("class-equality", bound, conditions))
}

/// If two terms of `ses` lie in `G_t` at `bound`, all three lie in it at `bound - 1`.
pub fn check_two_of_three(
    t: &Module,
    ses: &ShortExactSequence,
    bound: usize,
) -> Result<CheckReport, CheckError> {
    if bound < 2 {
        return Err(CheckError::BoundTooSmall { bound, min: 2 });
    }
    let (l1, l2, l3) = ses.terms();
    t.same_ring(l2)?;
    require_quasidualizing(t, bound)?;
    let terms = [l1, l2, l3];
    let members: Vec<bool> = terms
        .iter()
        .map(|l| is_derived_reflexive(l, t, bound).passed())
        .collect();
    let pattern: String = members.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let count = members.iter().filter(|&&b| b).count();
    let mut conditions = vec![Condition::new(
        "two of three in G(T)",
        if count >= 2 {
            Verdict::Pass
        } else {
            Verdict::Vacuous
        },
        format!("members {pattern} at bound {bound}"),
    )];
    if count >= 2 {
        let lower: Vec<CheckReport> = terms
            .iter()
            .map(|l| is_derived_reflexive(l, t, bound - 1))
            .collect();
        let failed: Vec<String> = lower
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.passed())
            .map(|(i, r)| {
                let why = r.first_failure().map(|c| c.label.as_str()).unwrap_or("");
                format!("L{} ({why})", i + 1)
            })
            .collect();
        let witness = if failed.is_empty() {
            format!("all terms in G(T) at bound {}", bound - 1)
        } else {
            format!("not in G(T) at bound {}: {}", bound - 1, failed.join(", "))
        };
        conditions.push(Condition::new(
            "third term in G(T)",
            Verdict::from_bool(failed.is_empty()),
            witness,
        ));
    }
    Ok(CheckReport::new("two-of-three", bound, conditions))
}

/// `Hom(L, T) = 0` exactly when `L = 0`.
pub fn check_hom_faithful(l: &Module, t: &Module) -> Result<CheckReport, CheckError> {
    let hom = hom_module(l, t)?;
    let ok = (hom.dim() == 0) == l.is_zero();
    let cond = Condition::new(
        "Hom(L,T) = 0 iff L = 0",
        Verdict::from_bool(ok),
        format!("dim L {} dim Hom(L,T) {}", l.dim(), hom.dim()),
    );
    Ok(CheckReport::new("hom-faithful", 0, vec![cond]))
}

/// Evidence only: whether `T ⊗ L` is nonzero for nonzero `L`.
pub fn probe_tensor_faithful(l: &Module, t: &Module) -> Result<CheckReport, CheckError> {
    let tensor = tensor_module(t, l)?;
    let verdict = if l.is_zero() {
        Verdict::Vacuous
    } else {
        Verdict::from_bool(tensor.dim() > 0)
    };
    let cond = Condition::new(
        "T⊗L nonzero for nonzero L",
        verdict,
        format!("dim L {} dim T⊗L {}", l.dim(), tensor.dim()),
    );
    Ok(CheckReport::new("tensor-probe", 0, vec![cond]))
}

/// Over an artinian ring, `E` is semidualizing, `R` is quasidualizing, and the
/// two predicates agree on every candidate.
pub fn check_artinian_collapse(
    ring: &Arc<Ring>,
    candidates: &[Module],
    bound: usize,
) -> CheckReport {
    let e = injective_hull_e(ring);
    let r = regular_module(ring);
    let se = is_semidualizing(&e, bound);
    let qr = is_quasidualizing(&r, bound);
    let mut conditions = vec![
        Condition::new("E semidualizing", se.verdict, summary(&se)),
        Condition::new("R quasidualizing", qr.verdict, summary(&qr)),
    ];
    for (i, c) in candidates.iter().enumerate() {
        conditions.push(Condition::iff(
            format!("candidate {i}: semidualizing <=> quasidualizing"),
            &is_semidualizing(c, bound),
            &is_quasidualizing(c, bound),
        ));
    }
    CheckReport::new("artinian-collapse", bound, conditions)
}

fn summary(r: &CheckReport) -> String {
    match r.first_failure() {
        Some(c) => format!("{}: {}", c.label, c.witness),
        None => format!("all {} conditions hold", r.conditions.len()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::*;
    use crate::ring::fixtures::*;

    fn setup(r: Ring) -> (Arc<Ring>, Module, Module, Module) {
        let r = Arc::new(r);
        let reg = regular_module(&r);
        let e = injective_hull_e(&r);
        let k = simple_module(&r);
        (r, reg, e, k)
    }

    #[test]
    fn self_dualizing_examples() {
        for ring in [
            f2(),
            f4(),
            truncated_poly(2, 2),
            truncated_poly(3, 3),
            square_zero(),
            two_squares(),
        ] {
            let (_, reg, e, _) = setup(ring);
            assert!(is_semidualizing(&reg, 4).passed());
            assert!(is_quasidualizing(&e, 4).passed());
            assert!(is_semidualizing(&e, 4).passed());
            assert!(is_quasidualizing(&reg, 4).passed());
        }
        let (_, _, _, k) = setup(truncated_poly(2, 2));
        for report in [is_semidualizing(&k, 4), is_quasidualizing(&k, 4)] {
            assert_eq!(report.verdict, Verdict::Fail);
            assert_eq!(report.first_failure().unwrap().label, "homothety iso");
        }
    }

    #[test]
    fn derived_reflexive_examples() {
        let (r, reg, e, k) = setup(square_zero());
        for seed in 0..4 {
            let l = random_module(&r, 2, seed);
            assert!(is_derived_reflexive(&l, &e, 4).passed());
        }
        assert!(is_derived_reflexive(&reg, &reg, 4).passed());
        let report = is_derived_reflexive(&k, &reg, 4);
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.conditions[1].verdict == Verdict::Fail);
    }

    #[test]
    fn bass_and_auslander_examples() {
        let (r, reg, e, k) = setup(square_zero());
        for seed in 0..4 {
            let l = random_module(&r, 2, seed);
            assert!(in_bass_class(&l, &reg, 4).passed());
            assert!(in_auslander_class(&l, &reg, 4).passed());
        }
        assert!(in_bass_class(&e, &e, 4).passed());
        assert_eq!(in_bass_class(&k, &e, 4).verdict, Verdict::Fail);
        assert!(in_auslander_class(&reg, &e, 4).passed());
        assert_eq!(in_auslander_class(&k, &e, 4).verdict, Verdict::Fail);
    }

    #[test]
    fn membership_dispatch() {
        let (_, reg, e, k) = setup(square_zero());
        let g = ClassMembership::new(ClassKind::G, k.clone(), reg.clone(), 3).unwrap();
        assert_eq!(g.check().verdict, Verdict::Fail);
        let a = ClassMembership::new(ClassKind::A, k.clone(), reg, 3).unwrap();
        assert!(a.check().passed());
        let b = ClassMembership::new(ClassKind::B, e.clone(), e, 3).unwrap();
        assert!(b.check().passed());
        let other = regular_module(&Arc::new(f2()));
        assert!(ClassMembership::new(ClassKind::G, k, other, 3).is_err());
    }

    #[test]
    fn duality_swap_examples() {
        let (_, reg, e, _) = setup(square_zero());
        assert!(check_duality_swap(&reg, 4).passed());
        assert!(check_duality_swap(&e, 4).passed());
        let (_, _, _, k) = setup(truncated_poly(2, 2));
        assert_eq!(check_duality_swap(&k, 4).verdict, Verdict::Vacuous);
    }

    #[test]
    fn theorem_b_examples() {
        let (r, reg, e, k) = setup(square_zero());
        let m = random_module(&r, 2, 3);
        let report = check_theorem_b(&e, &m, 4).unwrap();
        assert!(report.passed());
        // M in G(E) always, and dually M^ in B(E^) = B(R)
        assert_eq!(report.conditions[1].sides, Some((true, true)));

        let report = check_theorem_b(&reg, &k, 4).unwrap();
        assert!(report.passed());
        assert_eq!(report.conditions[1].sides, Some((false, false)));

        // Free modules lie in every class except B(E), which over a
        // non-Gorenstein ring misses R just as G(R) misses E.
        let free = free_module(&r, 2);
        let report = check_theorem_b(&reg, &free, 4).unwrap();
        assert!(report.passed());
        let sides: Vec<_> = report.conditions.iter().map(|c| c.sides.unwrap()).collect();
        assert_eq!(
            sides,
            vec![(false, false), (true, true), (true, true), (true, true)]
        );

        let (r6, reg6, _, _) = setup(two_squares());
        let report = check_theorem_b(&reg6, &free_module(&r6, 2), 4).unwrap();
        assert!(report
            .conditions
            .iter()
            .all(|c| c.sides == Some((true, true))));

        assert!(matches!(
            check_theorem_b(&k, &m, 4),
            Err(CheckError::NotQuasidualizing { .. })
        ));
    }

    #[test]
    fn class_equality_examples() {
        let (r, _, e, k) = setup(square_zero());
        let free = free_module(&r, 2);
        let report = check_class_equality(&e, &free, 4).unwrap();
        assert!(report.passed());
        assert_eq!(report.conditions[0].sides, Some((true, true)));
        let report = check_class_equality(&e, &k, 4).unwrap();
        assert!(report.passed());
        assert_eq!(report.conditions[0].sides, Some((false, false)));

        let (r, _, e, _) = setup(truncated_poly(2, 4));
        for seed in 0..4 {
            let m = random_module(&r, 2, seed);
            assert!(check_class_equality(&e, &m, 4).unwrap().passed());
        }
    }

    #[test]
    fn two_of_three_examples() {
        let (r, reg, e, _) = setup(square_zero());
        let split = split_sequence(&free_module(&r, 1), &free_module(&r, 2)).unwrap();
        let report = check_two_of_three(&reg, &split, 4).unwrap();
        assert!(report.passed());

        let soc = socle(&e);
        let ses = ses_from_submodule(&e, &soc).unwrap();
        let report = check_two_of_three(&e, &ses, 4).unwrap();
        assert!(report.passed());

        let k = simple_module(&r);
        let kk = split_sequence(&k, &k).unwrap();
        let report = check_two_of_three(&reg, &kk, 4).unwrap();
        assert_eq!(report.verdict, Verdict::Vacuous);

        assert!(matches!(
            check_two_of_three(&reg, &split, 1),
            Err(CheckError::BoundTooSmall { bound: 1, min: 2 })
        ));
    }

    #[test]
    fn faithfulness_examples() {
        let (r, reg, e, k) = setup(square_zero());
        let zero = Module::zero(&r);
        let report = check_hom_faithful(&zero, &e).unwrap();
        assert!(report.passed());
        assert_eq!(report.conditions[0].witness, "dim L 0 dim Hom(L,T) 0");
        assert!(check_hom_faithful(&k, &e).unwrap().passed());
        for seed in 0..5 {
            let l = random_module(&r, 2, seed);
            assert!(check_hom_faithful(&l, &reg).unwrap().passed());
        }

        assert_eq!(
            probe_tensor_faithful(&zero, &e).unwrap().verdict,
            Verdict::Vacuous
        );
        let probe = probe_tensor_faithful(&k, &e).unwrap();
        assert!(probe.passed());
        assert_eq!(probe.conditions[0].witness, "dim L 1 dim T⊗L 2");
    }

    #[test]
    fn artinian_collapse_examples() {
        let (r, reg, e, k) = setup(truncated_poly(2, 2));
        let report = check_artinian_collapse(&r, &[reg, e, k], 4);
        assert!(report.passed());
        assert_eq!(report.conditions[4].sides, Some((false, false)));

        let (r, reg, e, k) = setup(f2());
        assert!(check_artinian_collapse(&r, &[reg, e, k], 4).passed());
        let (r, reg, e, _) = setup(two_squares());
        assert!(check_artinian_collapse(&r, &[reg, e], 4).passed());
    }

    #[test]
    fn monotone_in_bound() {
        let (r, reg, _, _) = setup(square_zero());
        for seed in 0..6 {
            let m = random_module(&r, 2, seed);
            let verdicts: Vec<bool> = (1..=4)
                .map(|b| is_derived_reflexive(&m, &reg, b).passed())
                .collect();
            assert!(
                verdicts.windows(2).all(|w| w[0] >= w[1]),
                "seed {seed}: {verdicts:?}"
            );
        }
    }
}
