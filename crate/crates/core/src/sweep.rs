//! Seeded random instances and batch property checks.
//!
//! Cases are drawn sequentially from a ChaCha8 stream so a seed always yields
//! the same batch; evaluation is data-parallel under the `parallel` feature and
//! sequential otherwise, with results kept in case order either way.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charpair::{CharacteristicPair, EdgeVectors, NormalizedPair};
use crate::cohomology::{
    cup_matrix_pid, cup_matrix_smooth, cup_triangle_vectors, groups_over_ring, RingSpec,
};
use crate::intlinalg::{det2, gcd, is_nonzero_rational_square, rat_int, IntVec2, RatMatrix, UnimodularMatrix2};
use crate::morphisms::{contract_keep, contract_keep2, rational_lifting, scaled_first_generator, SubstitutionMap};
use crate::srengine::{
    build_deg4_quotient, congruence_invariants, deg2_equivalent, gram_matrix_natural, oracle_cup_matrix_smooth,
    reduce_to_generator, CongruenceInvariants, Deg4Class, SquareClass,
};

pub fn random_primitive(rng: &mut ChaCha8Rng, bound: i64) -> IntVec2 {
    loop {
        let v = IntVec2::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if v.is_primitive() {
            return v;
        }
    }
}

/// A characteristic pair on an `m`-gon, `m` uniform in `[m_min, m_max]`.
pub fn random_pair(rng: &mut ChaCha8Rng, m_min: usize, m_max: usize, bound: i64) -> CharacteristicPair {
    let m = rng.gen_range(m_min..=m_max);
    loop {
        let v: Vec<IntVec2> = (0..m).map(|_| random_primitive(rng, bound)).collect();
        if let Ok(p) = CharacteristicPair::validate(v) {
            return p;
        }
    }
}

/// A pair in smooth form with `n` uniform in `[1, n_max]`. With
/// `nonzero_products`, every `a_i b_i` for `i <= n` is nonzero.
pub fn random_smooth_form_pair(
    rng: &mut ChaCha8Rng,
    n_max: usize,
    bound: i64,
    nonzero_products: bool,
) -> CharacteristicPair {
    let n = rng.gen_range(1..=n_max);
    loop {
        let mut v: Vec<IntVec2> = (0..n).map(|_| random_primitive(rng, bound)).collect();
        if nonzero_products && v.iter().any(|x| x.product() == 0) {
            continue;
        }
        v.push(IntVec2::new(1, 0));
        v.push(IntVec2::new(0, 1));
        if let Ok(p) = CharacteristicPair::validate(v) {
            return p;
        }
    }
}

/// A pair in half form with `n` uniform in `[1, n_max]`.
pub fn random_half_pair(rng: &mut ChaCha8Rng, n_max: usize, bound: i64) -> CharacteristicPair {
    let n = rng.gen_range(1..=n_max);
    loop {
        let mut v: Vec<IntVec2> = (0..n).map(|_| random_primitive(rng, bound)).collect();
        let last = random_primitive(rng, bound);
        if last.product() == 0 {
            continue;
        }
        v.push(IntVec2::new(1, 0));
        v.push(last);
        if let Ok(p) = CharacteristicPair::validate(v) {
            return p;
        }
    }
}

/// A half-form triangle `(a_1,b_1), (1,0), (a_3,b_3)`.
pub fn random_half_triangle(rng: &mut ChaCha8Rng, bound: i64) -> CharacteristicPair {
    loop {
        let p = random_half_pair(rng, 1, bound);
        if p.m() == 3 {
            return p;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Smooth cup matrix equals the quotient computation.
    OracleAgreement,
    /// `k^2` divides the triangle numerator.
    TriangleIntegrality,
    /// `c / g` is a nonzero rational square, up to sign.
    TriangleSquareLiteral,
    /// `c b_3 / g` is a nonzero rational square.
    TriangleSquareScaled,
    /// `M` and `G` share rank, signature and determinant class, up to sign.
    CongruenceLiteral,
    /// `b_{n+2} M` and `G` share rank, signature and determinant class.
    CongruenceScaled,
    /// `M -> eps M` under `[[1, s], [0, eps]]`.
    Equivariance,
    /// Degree-3 order over `Z/m` is `gcd(k, m)`.
    TorsionModM,
    /// `rho_{ij,i} ∘ rho_ij` and `rho_i` induce the same substitutions.
    CompositionLaw,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::OracleAgreement,
        Property::TriangleIntegrality,
        Property::TriangleSquareLiteral,
        Property::TriangleSquareScaled,
        Property::CongruenceLiteral,
        Property::CongruenceScaled,
        Property::Equivariance,
        Property::TorsionModM,
        Property::CompositionLaw,
    ];

    /// Properties run by the fuzz command.
    pub const SUITE: [Property; 7] = [
        Property::OracleAgreement,
        Property::TriangleIntegrality,
        Property::TriangleSquareScaled,
        Property::CongruenceScaled,
        Property::Equivariance,
        Property::TorsionModM,
        Property::CompositionLaw,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::OracleAgreement => "oracle_agreement",
            Property::TriangleIntegrality => "triangle_integrality",
            Property::TriangleSquareLiteral => "triangle_square_literal",
            Property::TriangleSquareScaled => "triangle_square_scaled",
            Property::CongruenceLiteral => "congruence_literal",
            Property::CongruenceScaled => "congruence_scaled",
            Property::Equivariance => "equivariance",
            Property::TorsionModM => "torsion_mod_m",
            Property::CompositionLaw => "composition_law",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Case {
    Pair(CharacteristicPair),
    Equivariance { pair: CharacteristicPair, s: i64, eps: i64 },
    Torsion { pair: CharacteristicPair, m: i128 },
    Composition { pair: CharacteristicPair, i: usize, j: usize },
}

impl Case {
    pub fn pair(&self) -> &CharacteristicPair {
        match self {
            Case::Pair(p)
            | Case::Equivariance { pair: p, .. }
            | Case::Torsion { pair: p, .. }
            | Case::Composition { pair: p, .. } => p,
        }
    }

    pub fn to_json(&self) -> Value {
        let edges = self.pair().vectors();
        match self {
            Case::Pair(_) => json!({ "edges": edges }),
            Case::Equivariance { s, eps, .. } => json!({ "edges": edges, "s": s, "eps": eps }),
            Case::Torsion { m, .. } => json!({ "edges": edges, "m": m }),
            Case::Composition { i, j, .. } => json!({ "edges": edges, "i": i, "j": j }),
        }
    }
}

const BOUND: i64 = 9;

fn composition_case(rng: &mut ChaCha8Rng) -> Case {
    loop {
        let pair = random_smooth_form_pair(rng, 6, BOUND, true);
        let n = pair.n();
        if n < 2 {
            continue;
        }
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        if det2(pair.vector(i), pair.vector(j)) != 0 {
            return Case::Composition { pair, i, j };
        }
    }
}

fn equivariance_case(rng: &mut ChaCha8Rng) -> Case {
    loop {
        let pair = random_half_pair(rng, 6, BOUND);
        let s = rng.gen_range(-5..=5);
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let last = pair.vector(pair.m());
        if last.a as i128 + s as i128 * last.b as i128 != 0 {
            return Case::Equivariance { pair, s, eps };
        }
    }
}

pub fn generate_case(property: Property, rng: &mut ChaCha8Rng) -> Case {
    match property {
        Property::OracleAgreement => Case::Pair(random_smooth_form_pair(rng, 6, BOUND, true)),
        Property::TriangleIntegrality | Property::TriangleSquareLiteral | Property::TriangleSquareScaled => {
            Case::Pair(random_half_triangle(rng, BOUND))
        }
        Property::CongruenceLiteral | Property::CongruenceScaled => Case::Pair(random_half_pair(rng, 6, BOUND)),
        Property::Equivariance => equivariance_case(rng),
        Property::TorsionModM => Case::Torsion { pair: random_pair(rng, 3, 8, BOUND), m: rng.gen_range(2..=30) },
        Property::CompositionLaw => composition_case(rng),
    }
}

/// `count` cases for `property`, reproducible from `seed`.
pub fn generate_cases(property: Property, seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| generate_case(property, &mut rng)).collect()
}

fn half(p: &CharacteristicPair) -> Result<NormalizedPair, String> {
    NormalizedPair::from_half_form(p.clone()).map_err(|e| e.to_string())
}

fn pid_q(p: &CharacteristicPair) -> Result<RatMatrix, String> {
    cup_matrix_pid(&half(p)?, RingSpec::Rationals).map_err(|e| e.to_string())?.to_rational().ok_or_else(|| "no rational form".into())
}

fn natural(p: &CharacteristicPair) -> Result<RatMatrix, String> {
    gram_matrix_natural(p).map(|(g, _)| g).map_err(|e| e.to_string())
}

fn invariants_text(c: &CongruenceInvariants) -> String {
    let d = match &c.det_square_class {
        SquareClass::Zero => "0".to_string(),
        SquareClass::Class(x) => x.to_string(),
    };
    format!("(rank {}, signature {}, det class {d})", c.rank, c.signature)
}

fn congruent_invariants(a: &RatMatrix, b: &RatMatrix) -> Result<(), String> {
    let (ia, ib) = (congruence_invariants(a), congruence_invariants(b));
    if ia == ib && ia.det_square_class != SquareClass::Zero {
        Ok(())
    } else {
        Err(format!("{} vs {}", invariants_text(&ia), invariants_text(&ib)))
    }
}

fn check_congruence(p: &CharacteristicPair, scaled: bool) -> Result<(), String> {
    let m = pid_q(p)?;
    let g = natural(p)?;
    if scaled {
        let b = rat_int(p.vector(p.m()).b as i128);
        return congruent_invariants(&m.scaled(&b), &g).map_err(|e| format!("b_(n+2) M vs G: {e}"));
    }
    congruent_invariants(&m, &g)
        .or_else(|_| congruent_invariants(&m.scaled(&rat_int(-1)), &g))
        .map_err(|e| format!("M vs G, either sign: {e}"))
}

fn check_triangle_square(p: &CharacteristicPair, scaled: bool) -> Result<(), String> {
    let t = cup_triangle_vectors(p.vectors()).map_err(|e| e.to_string())?;
    let g = natural(p)?.get(0, 0).clone();
    let mut r = rat_int(t.c) / &g;
    if scaled {
        r *= rat_int(p.vector(3).b as i128);
        if is_nonzero_rational_square(&r) {
            return Ok(());
        }
    } else if is_nonzero_rational_square(&r) || is_nonzero_rational_square(&-r.clone()) {
        return Ok(());
    }
    Err(format!("c = {}, g = {}, ratio {} is not a nonzero square", t.c, g, r))
}

fn check_oracle(p: &CharacteristicPair) -> Result<(), String> {
    let np = NormalizedPair::from_smooth_form(p.clone()).map_err(|e| e.to_string())?;
    let formula = cup_matrix_smooth(&np).map_err(|e| e.to_string())?.to_rational().unwrap();
    let oracle = oracle_cup_matrix_smooth(p).map_err(|e| e.to_string())?;
    if formula == oracle {
        Ok(())
    } else {
        Err(format!("formula {:?} vs oracle {:?}", formula.to_rows(), oracle.to_rows()))
    }
}

fn check_equivariance(p: &CharacteristicPair, s: i64, eps: i64) -> Result<(), String> {
    let u = UnimodularMatrix2::new([[1, s], [0, eps]]).map_err(|e| e.to_string())?;
    let q = p.apply_basis_change(&u).map_err(|e| e.to_string())?;
    let (m, mq) = (pid_q(p)?, pid_q(&q)?);
    if mq == m.scaled(&rat_int(eps as i128)) {
        Ok(())
    } else {
        Err(format!("M = {:?}, transformed {:?}", m.to_rows(), mq.to_rows()))
    }
}

fn check_torsion(p: &CharacteristicPair, m: i128) -> Result<(), String> {
    let got = groups_over_ring(p, RingSpec::IntegersMod(m)).degree(3).torsion_order();
    let want = gcd(p.torsion_order(), m);
    if got == want {
        Ok(())
    } else {
        Err(format!("order {got}, expected gcd(k, m) = {want}"))
    }
}

fn substitution(cp: &crate::morphisms::CompatiblePair) -> Result<SubstitutionMap, String> {
    rational_lifting(cp).map(|l| SubstitutionMap::from_matrix(&l)).map_err(|e| e.to_string())
}

fn check_composition(p: &CharacteristicPair, i: usize, j: usize) -> Result<(), String> {
    let e = |x: crate::Error| x.to_string();
    let f = contract_keep2(p, i, j).map_err(e)?;
    let square = f.target.to_characteristic().map_err(e)?;
    let g = contract_keep(&square, 1).map_err(e)?;
    let direct = substitution(&contract_keep(p, i).map_err(e)?)?;
    let comp = substitution(&g)?.then(&substitution(&f)?);
    let x1 = scaled_first_generator(p.vector(i).product());
    let (c2, d2) = (comp.apply_deg2(&x1), direct.apply_deg2(&x1));
    if !deg2_equivalent(p.vectors(), &c2, &d2) {
        return Err(format!("degree 2: {c2} vs {d2}"));
    }
    let q = build_deg4_quotient(p).map_err(e)?;
    let top = Deg4Class::monomial(3, 2, 3);
    let (c4, d4) = (reduce_to_generator(&q, &comp.apply_deg4(&top)), reduce_to_generator(&q, &direct.apply_deg4(&top)));
    if c4 != d4 {
        return Err(format!("degree 4: {c4} vs {d4}"));
    }
    Ok(())
}

pub fn check_case(property: Property, case: &Case) -> Result<(), String> {
    match (property, case) {
        (Property::OracleAgreement, Case::Pair(p)) => check_oracle(p),
        (Property::TriangleIntegrality, Case::Pair(p)) => cup_triangle_vectors(p.vectors()).map(|_| ()).map_err(|e| e.to_string()),
        (Property::TriangleSquareLiteral, Case::Pair(p)) => check_triangle_square(p, false),
        (Property::TriangleSquareScaled, Case::Pair(p)) => check_triangle_square(p, true),
        (Property::CongruenceLiteral, Case::Pair(p)) => check_congruence(p, false),
        (Property::CongruenceScaled, Case::Pair(p)) => check_congruence(p, true),
        (Property::Equivariance, Case::Equivariance { pair, s, eps }) => check_equivariance(pair, *s, *eps),
        (Property::TorsionModM, Case::Torsion { pair, m }) => check_torsion(pair, *m),
        (Property::CompositionLaw, Case::Composition { pair, i, j }) => check_composition(pair, *i, *j),
        _ => Err(format!("case shape does not match property {property}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Checks every case, preserving order.
pub fn evaluate(property: Property, cases: &[Case], exec: Execution) -> Vec<Result<(), String>> {
    match exec {
        Execution::Sequential => cases.iter().map(|c| check_case(property, c)).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            cases.par_iter().map(|c| check_case(property, c)).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub index: usize,
    pub case: Case,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchReport {
    pub property: Property,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl BatchReport {
    pub fn passed(&self) -> usize {
        self.cases - self.failures.len()
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let first = self.failures.first().map(|f| json!({ "index": f.index, "case": f.case.to_json(), "message": f.message }));
        json!({
            "property": self.property.name(),
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed(),
            "first_failure": first,
        })
    }
}

pub fn run_batch_with(property: Property, seed: u64, count: usize, exec: Execution) -> BatchReport {
    let cases = generate_cases(property, seed, count);
    let results = evaluate(property, &cases, exec);
    let failures = cases
        .into_iter()
        .zip(results)
        .enumerate()
        .filter_map(|(index, (case, r))| r.err().map(|message| Failure { index, case, message }))
        .collect();
    BatchReport { property, seed, cases: count, failures }
}

pub fn run_batch(property: Property, seed: u64, count: usize) -> BatchReport {
    run_batch_with(property, seed, count, Execution::default())
}

/// Seed used for `property` within a fuzz run.
pub fn property_seed(seed: u64, property: Property) -> u64 {
    let idx = Property::ALL.iter().position(|p| *p == property).unwrap() as u64;
    seed.wrapping_add(idx.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: usize,
    pub batches: Vec<BatchReport>,
}

impl FuzzReport {
    pub fn all_passed(&self) -> bool {
        self.batches.iter().all(BatchReport::all_passed)
    }

    pub fn first_failure(&self) -> Option<(&BatchReport, &Failure)> {
        self.batches.iter().find_map(|b| b.failures.first().map(|f| (b, f)))
    }

    pub fn to_json(&self) -> Value {
        let status = match self.first_failure() {
            None => json!("all passed"),
            Some((b, f)) => json!({
                "property": b.property.name(),
                "index": f.index,
                "case": f.case.to_json(),
                "message": f.message,
            }),
        };
        json!({
            "seed": self.seed,
            "count": self.count,
            "results": self.batches.iter().map(BatchReport::to_json).collect::<Vec<_>>(),
            "status": status,
        })
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} count {}", self.seed, self.count)?;
        for b in &self.batches {
            writeln!(f, "{:<24} {:>5}/{:<5}", b.property.name(), b.passed(), b.cases)?;
        }
        match self.first_failure() {
            None => writeln!(f, "all passed"),
            Some((b, x)) => writeln!(f, "counterexample [{} #{}] {}: {}", b.property, x.index, x.case.to_json(), x.message),
        }
    }
}

pub fn fuzz_with(seed: u64, count: usize, properties: &[Property], exec: Execution) -> FuzzReport {
    let batches = properties.iter().map(|&p| run_batch_with(p, property_seed(seed, p), count, exec)).collect();
    FuzzReport { seed, count, batches }
}

/// Runs the standard property suite.
pub fn fuzz(seed: u64, count: usize) -> FuzzReport {
    fuzz_with(seed, count, &Property::SUITE, Execution::default())
}
