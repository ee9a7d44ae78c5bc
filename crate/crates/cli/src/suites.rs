//! Seeded verification suites and their report format.

use std::fmt;
use std::sync::Arc;

use qdual_core::classes::{
    check_artinian_collapse, check_class_equality, check_duality_swap, check_hom_faithful,
    check_theorem_b, check_two_of_three, in_auslander_class, in_bass_class, is_derived_reflexive,
    is_quasidualizing, is_semidualizing, probe_tensor_faithful, CheckReport, Verdict,
};
use qdual_core::functor::{injective_hull_e, matlis_dual};
use qdual_core::homology::{ext_dims, ext_dims_via_injective, tor_dims};
use qdual_core::module::{
    closure, free_module, radical_submodule, random_module, regular_module, ses_from_submodule,
    simple_module, socle, split_sequence,
};
use qdual_core::{Module, Ring, ShortExactSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const SUITES: [&str; 9] = [
    "examples",
    "artinian-collapse",
    "ext-swap",
    "duality-swap",
    "theorem-b",
    "class-equality",
    "two-of-three",
    "hom-faithful",
    "tensor-probe",
];

/// Sampled modules larger than this are redrawn.
pub const MAX_SAMPLE_DIM: usize = 6;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub ring: Arc<Ring>,
    pub bound: usize,
    pub samples: usize,
    pub max_free_rank: usize,
    pub seed: u64,
    /// Minimum number of non-degenerate instances a suite must see; `None`
    /// picks a default from the ring.
    pub min_coverage: Option<usize>,
}

impl SuiteConfig {
    pub fn new(ring: Arc<Ring>) -> Self {
        SuiteConfig {
            ring,
            bound: 4,
            samples: 30,
            max_free_rank: 2,
            seed: 0,
            min_coverage: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineKind {
    Check,
    Probe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub kind: LineKind,
    pub suite: &'static str,
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            LineKind::Check => "CHECK",
            LineKind::Probe => "PROBE",
        };
        write!(
            f,
            "{tag} {}/{} {} {}",
            self.suite, self.name, self.verdict, self.detail
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub lines: Vec<ReportLine>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub probes: usize,
}

impl SuiteReport {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for l in &self.lines {
            match (l.kind, l.verdict) {
                (LineKind::Probe, _) => t.probes += 1,
                (_, Verdict::Pass) => t.pass += 1,
                (_, Verdict::Fail) => t.fail += 1,
                (_, Verdict::Vacuous) => t.vacuous += 1,
            }
        }
        t
    }

    pub fn checks<'a>(&'a self, suite: &'a str) -> impl Iterator<Item = &'a ReportLine> {
        self.lines
            .iter()
            .filter(move |l| l.kind == LineKind::Check && l.suite == suite)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        let t = self.tally();
        out.push_str(&format!(
            "SUMMARY pass {} fail {} vacuous {} probes {}\n",
            t.pass, t.fail, t.vacuous, t.probes
        ));
        out
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub id: String,
    pub seed: u64,
    pub module: Module,
}

/// `count` nonzero modules of dimension at most [`MAX_SAMPLE_DIM`], deterministic in `seed`.
pub fn sample_modules(
    ring: &Arc<Ring>,
    count: usize,
    max_free_rank: usize,
    seed: u64,
) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 64 * count.max(1) {
        attempts += 1;
        let s: u64 = rng.gen();
        let m = random_module(ring, max_free_rank, s);
        if m.is_zero() || m.dim() > MAX_SAMPLE_DIM {
            continue;
        }
        out.push(Sample {
            id: format!("m{:02}", out.len()),
            seed: s,
            module: m,
        });
    }
    out
}

pub fn is_gorenstein(ring: &Arc<Ring>) -> bool {
    socle(&regular_module(ring)).dim() == ring.residue_degree()
}

fn check(
    suite: &'static str,
    name: impl Into<String>,
    verdict: Verdict,
    detail: impl Into<String>,
) -> ReportLine {
    ReportLine {
        kind: LineKind::Check,
        suite,
        name: name.into(),
        verdict,
        detail: detail.into(),
    }
}

fn summarize(r: &CheckReport) -> String {
    match r.first_failure() {
        Some(c) => format!("{} ({}: {})", r.name, c.label, c.witness),
        None => format!("{} bound {}", r.name, r.bound),
    }
}

fn report_line(suite: &'static str, name: impl Into<String>, r: &CheckReport) -> ReportLine {
    check(suite, name, r.verdict, summarize(r))
}

fn condition_lines(suite: &'static str, prefix: &str, r: &CheckReport) -> Vec<ReportLine> {
    r.conditions
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let sides = match c.sides {
                Some((a, b)) => format!(" sides {}/{}", tf(a), tf(b)),
                None => String::new(),
            };
            check(
                suite,
                format!("{prefix}/{}", roman(i + 1)),
                c.verdict,
                format!("{}{sides}: {}", c.label, c.witness),
            )
        })
        .collect()
}

fn tf(b: bool) -> char {
    if b {
        'T'
    } else {
        'F'
    }
}

fn roman(i: usize) -> &'static str {
    ["0", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii"]
        .get(i)
        .copied()
        .unwrap_or("n")
}

fn dims(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

struct Context {
    cfg: SuiteConfig,
    r: Module,
    e: Module,
    k: Module,
    samples: Vec<Sample>,
}

impl Context {
    fn new(cfg: &SuiteConfig) -> Self {
        let ring = &cfg.ring;
        Context {
            r: regular_module(ring),
            e: injective_hull_e(ring),
            k: simple_module(ring),
            samples: sample_modules(ring, cfg.samples, cfg.max_free_rank, cfg.seed),
            cfg: cfg.clone(),
        }
    }

    fn parameters(&self) -> [(&'static str, &Module); 2] {
        [("R", &self.r), ("E", &self.e)]
    }

    /// Named fixed candidates followed by the samples.
    fn candidates(&self) -> Vec<(String, &Module)> {
        let mut v = vec![
            ("R".to_string(), &self.r),
            ("E".to_string(), &self.e),
            ("k".to_string(), &self.k),
        ];
        v.extend(self.samples.iter().map(|s| (s.id.clone(), &s.module)));
        v
    }

    fn coverage_minimum(&self, default: usize) -> usize {
        self.cfg.min_coverage.unwrap_or(default)
    }
}

fn par_flat<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Vec<ReportLine> + Sync + Send,
) -> Vec<ReportLine> {
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn suite_examples(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "examples";
    let b = cx.cfg.bound;
    let mut lines = vec![
        report_line(S, "E-quasidualizing", &is_quasidualizing(&cx.e, b)),
        report_line(S, "R-semidualizing", &is_semidualizing(&cx.r, b)),
        report_line(S, "E-semidualizing", &is_semidualizing(&cx.e, b)),
        report_line(S, "R-quasidualizing", &is_quasidualizing(&cx.r, b)),
    ];
    lines.extend(par_flat(&cx.samples, |s| {
        vec![
            report_line(
                S,
                format!("{}/G(E)", s.id),
                &is_derived_reflexive(&s.module, &cx.e, b),
            ),
            report_line(
                S,
                format!("{}/B(R)", s.id),
                &in_bass_class(&s.module, &cx.r, b),
            ),
            report_line(
                S,
                format!("{}/A(R)", s.id),
                &in_auslander_class(&s.module, &cx.r, b),
            ),
        ]
    }));
    lines
}

fn suite_artinian_collapse(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "artinian-collapse";
    let cands = cx.candidates();
    let modules: Vec<Module> = cands.iter().map(|(_, m)| (*m).clone()).collect();
    let report = check_artinian_collapse(&cx.cfg.ring, &modules, cx.cfg.bound);
    let mut names = vec![
        "E-semidualizing".to_string(),
        "R-quasidualizing".to_string(),
    ];
    names.extend(cands.iter().map(|(n, _)| format!("candidate/{n}")));
    report
        .conditions
        .iter()
        .zip(names)
        .map(|(c, name)| {
            let sides = c
                .sides
                .map(|(a, b)| format!(" sides {}/{}", tf(a), tf(b)))
                .unwrap_or_default();
            check(S, name, c.verdict, format!("{}{sides}", c.witness))
        })
        .collect()
}

fn suite_ext_swap(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "ext-swap";
    let b = cx.cfg.bound;
    let n = cx.samples.len();
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    par_flat(&pairs, |&(i, j)| {
        let (m, nn) = (&cx.samples[i].module, &cx.samples[j].module);
        let name = format!("p{i:02}");
        let (md, nd) = (matlis_dual(m), matlis_dual(nn));
        let ext = ext_dims(m, nn, b).unwrap().dims;
        let swapped = ext_dims(&nd, &md, b).unwrap().dims;
        let ext_dual = ext_dims(m, &nd, b).unwrap().dims;
        let swapped_dual = ext_dims(nn, &md, b).unwrap().dims;
        let via_inj = ext_dims_via_injective(m, nn, b).unwrap().dims;
        let tor = tor_dims(m, nn, b).unwrap().dims;
        let tor_rev = tor_dims(nn, m, b).unwrap().dims;
        let cmp = |label: &str, x: &[usize], y: &[usize]| {
            check(
                S,
                format!("{name}/{label}"),
                Verdict::from_bool(x == y),
                format!("{} vs {}", dims(x), dims(y)),
            )
        };
        vec![
            cmp("ext-swap", &ext, &swapped),
            cmp("ext-swap-dual", &ext_dual, &swapped_dual),
            cmp("cross-oracle", &ext, &via_inj),
            cmp("ext-tor", &tor, &ext_dual),
            cmp("tor-balance", &tor, &tor_rev),
        ]
    })
}

fn suite_duality_swap(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "duality-swap";
    let b = cx.cfg.bound;
    par_flat(&cx.candidates(), |(name, x)| {
        let swap = check_duality_swap(x, b);
        let semi = is_semidualizing(x, b).verdict;
        let dual_quasi = is_quasidualizing(&matlis_dual(x), b).verdict;
        vec![
            report_line(S, format!("{name}/swap"), &swap),
            check(
                S,
                format!("{name}/coherence"),
                Verdict::from_bool(semi == dual_quasi),
                format!("semidualizing {semi} dual quasidualizing {dual_quasi}"),
            ),
        ]
    })
}

fn param_sample_pairs(cx: &Context) -> Vec<(&'static str, &Module, &Sample)> {
    cx.parameters()
        .into_iter()
        .flat_map(|(tn, t)| cx.samples.iter().map(move |s| (tn, t, s)))
        .collect()
}

fn suite_theorem_b(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "theorem-b";
    let b = cx.cfg.bound;
    let results: Vec<(Vec<ReportLine>, bool)> = param_sample_pairs(cx)
        .par_iter()
        .map(|&(tn, t, s)| {
            let prefix = format!("{tn}/{}", s.id);
            match check_theorem_b(t, &s.module, b) {
                Ok(r) => {
                    let both_false = r.conditions.iter().any(|c| c.sides == Some((false, false)));
                    (condition_lines(S, &prefix, &r), both_false)
                }
                Err(e) => (vec![check(S, prefix, Verdict::Fail, e.to_string())], false),
            }
        })
        .collect();
    let covered = results.iter().filter(|r| r.1).count();
    let total = results.len();
    let mut lines: Vec<ReportLine> = results.into_iter().flat_map(|r| r.0).collect();
    let min = cx.coverage_minimum(if is_gorenstein(&cx.cfg.ring) { 0 } else { 5 });
    lines.push(check(
        S,
        "coverage",
        Verdict::from_bool(covered >= min),
        format!("both sides false in {covered} of {total} instances (min {min})"),
    ));
    lines
}

fn suite_class_equality(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "class-equality";
    let b = cx.cfg.bound;
    par_flat(&param_sample_pairs(cx), |&(tn, t, s)| {
        let prefix = format!("{tn}/{}", s.id);
        match check_class_equality(t, &s.module, b) {
            Ok(r) => condition_lines(S, &prefix, &r),
            Err(e) => vec![check(S, prefix, Verdict::Fail, e.to_string())],
        }
    })
}

fn sampled_sequence(s: &Sample) -> ShortExactSequence {
    let m = &s.module;
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed ^ 0x5eed_5eed);
    let mut v: Vec<u32> = (0..m.dim()).map(|_| rng.gen_range(0..f.p())).collect();
    if v.iter().all(|&x| x == 0) {
        v[rng.gen_range(0..m.dim())] = 1;
    }
    let sub = closure(m, &[v]);
    ses_from_submodule(m, &sub).expect("closure is a submodule")
}

fn suite_two_of_three(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "two-of-three";
    let b = cx.cfg.bound;
    let ring = &cx.cfg.ring;
    let free = |n| free_module(ring, n);
    let mut cases: Vec<(String, &Module, ShortExactSequence)> = Vec::new();
    for (a, c) in [(1, 1), (1, 2), (2, 1)] {
        cases.push((
            format!("split-R{a}-R{c}"),
            &cx.r,
            split_sequence(&free(a), &free(c)).unwrap(),
        ));
    }
    cases.push((
        "soc-E".into(),
        &cx.e,
        ses_from_submodule(&cx.e, &socle(&cx.e)).unwrap(),
    ));
    let rad = radical_submodule(&cx.r);
    cases.push((
        "m-R-k".into(),
        &cx.e,
        ses_from_submodule(&cx.r, &rad).unwrap(),
    ));
    for s in &cx.samples {
        cases.push((s.id.clone(), &cx.r, sampled_sequence(s)));
    }
    let lines = par_flat(&cases, |(name, t, ses)| {
        match check_two_of_three(t, ses, b) {
            Ok(r) => {
                let members = &r.conditions[0].witness;
                let detail = match r.conditions.get(1) {
                    Some(c) => format!("{members}; {}", c.witness),
                    None => members.clone(),
                };
                vec![check(S, name.clone(), r.verdict, detail)]
            }
            Err(e) => vec![check(S, name.clone(), Verdict::Fail, e.to_string())],
        }
    });
    let nonvacuous = lines
        .iter()
        .filter(|l| l.verdict != Verdict::Vacuous)
        .count();
    let min = cx.coverage_minimum(5);
    let mut lines = lines;
    lines.push(check(
        S,
        "coverage",
        Verdict::from_bool(nonvacuous >= min),
        format!("non-vacuous {nonvacuous} of {} (min {min})", cases.len()),
    ));
    lines
}

fn faithful_cases(cx: &Context) -> Vec<(String, &Module, Module)> {
    let mut ls = vec![
        ("0".to_string(), Module::zero(&cx.cfg.ring)),
        ("k".to_string(), cx.k.clone()),
    ];
    ls.extend(cx.samples.iter().map(|s| (s.id.clone(), s.module.clone())));
    cx.parameters()
        .into_iter()
        .flat_map(|(tn, t)| {
            ls.iter()
                .map(move |(n, l)| (format!("{tn}/{n}"), t, l.clone()))
        })
        .collect()
}

fn suite_hom_faithful(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "hom-faithful";
    par_flat(
        &faithful_cases(cx),
        |(name, t, l)| match check_hom_faithful(l, t) {
            Ok(r) => vec![check(
                S,
                name.clone(),
                r.verdict,
                r.conditions[0].witness.clone(),
            )],
            Err(e) => vec![check(S, name.clone(), Verdict::Fail, e.to_string())],
        },
    )
}

fn suite_tensor_probe(cx: &Context) -> Vec<ReportLine> {
    const S: &str = "tensor-probe";
    par_flat(&faithful_cases(cx), |(name, t, l)| {
        let (verdict, detail) = match probe_tensor_faithful(l, t) {
            Ok(r) => (r.verdict, r.conditions[0].witness.clone()),
            Err(e) => (Verdict::Fail, e.to_string()),
        };
        vec![ReportLine {
            kind: LineKind::Probe,
            suite: S,
            name: name.clone(),
            verdict,
            detail,
        }]
    })
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

/// Runs one suite, or every suite for `all`, in a fixed order.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, UnknownSuite> {
    let selected: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(UnknownSuite(name.to_string()));
    };
    let cx = Context::new(cfg);
    let mut lines = Vec::new();
    for s in selected {
        lines.extend(match s {
            "examples" => suite_examples(&cx),
            "artinian-collapse" => suite_artinian_collapse(&cx),
            "ext-swap" => suite_ext_swap(&cx),
            "duality-swap" => suite_duality_swap(&cx),
            "theorem-b" => suite_theorem_b(&cx),
            "class-equality" => suite_class_equality(&cx),
            "two-of-three" => suite_two_of_three(&cx),
            "hom-faithful" => suite_hom_faithful(&cx),
            "tensor-probe" => suite_tensor_probe(&cx),
            _ => unreachable!(),
        });
    }
    Ok(SuiteReport { lines })
}
