//! Property suites behind `cobweb verify`.
//!
//! Each suite returns one [`Verdict`] per property with the number of cases
//! checked and, on failure, the first concrete counterexample. Suites are
//! deterministic given [`SuiteOptions`].

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cobweb::{compression_nonexpansion_experiment, Cobweb, NonExpandingMap};
use crate::convergence::{converges_by_premetric, converges_topologically_finite, IndexedTail, SequenceSpec, Tail};
use crate::eres::EResolution;
use crate::error::{Error, Result};
use crate::format::SpaceSpec;
use crate::gamma::{check_isometric_embedding, gamma_distance, gamma_map, GammaPoint};
use crate::premetric::{
    classify, is_2_separating, isoceles_check, premetric_from_neighborhoods, truncate, FinitePremetricSpace,
    NeighborhoodSystem, PointSet, Premetric,
};
use crate::rational::NonNegRational;
use crate::sampling::{all_tables, gamma_points, random_nonexpanding, random_table, rng, unit_grid, SampleRng};
use crate::seqdec::{
    seq_open_ball_witness, verify_ball_inclusion, DPoint, DSpace, Family, Region, S0Param, SeqPresentation, SeqTail,
    Sequence,
};
use crate::spaces::arens::{arens_ball_region, arens_presentation, ArensPoint, ArensSpace};
use crate::spaces::cantor::CantorTruncation;
use crate::spaces::double_interval::{
    ball_sample, extremality_holds, extremality_witness, locally_extremal_f, random_member, DoubleInterval,
};
use crate::topology::{is_basic, is_hereditary, is_seq_hausdorff_finite, premetric_topology};
use crate::tower::{TowerPoint, TowerSpace};

pub const SUITES: [&str; 7] = ["s3", "s4", "s5", "s7", "s8", "s9", "s10"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Denominator of the value grid for exhaustive table searches.
    pub grid: u64,
    pub seed: u64,
    /// Number of random cases per sampled property.
    pub sample: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { grid: 2, seed: 0, sample: 50 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub pass: bool,
    pub checked: u64,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

struct Tally {
    id: String,
    detail: String,
    checked: u64,
    witness: Option<Value>,
}

impl Tally {
    fn new(suite: &str, name: &str, detail: &str) -> Self {
        Tally { id: format!("{suite}.{name}"), detail: detail.into(), checked: 0, witness: None }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn done(self) -> Verdict {
        Verdict {
            pass: self.witness.is_none(),
            id: self.id,
            checked: self.checked,
            detail: self.detail,
            witness: self.witness,
        }
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    let mut out = match name {
        "all" => {
            let mut v = Vec::new();
            for s in SUITES {
                v.extend(run_suite(s, opts)?);
            }
            v
        }
        "s3" => suite_s3(opts),
        "s4" => suite_s4(opts)?,
        "s5" => suite_s5(opts),
        "s7" => suite_s7(opts)?,
        "s8" => suite_s8(opts)?,
        "s9" => suite_s9(opts)?,
        "s10" => suite_s10(opts)?,
        _ => return Err(Error::parse("suite", format!("unknown suite {name:?}; expected one of {SUITES:?} or all"))),
    };
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

fn spec_json(space: &FinitePremetricSpace) -> Value {
    serde_json::to_value(SpaceSpec::from_space(space)).expect("plain data")
}

fn q(n: u64, d: u64) -> NonNegRational {
    NonNegRational::frac(n, d)
}

fn suite_s3(opts: &SuiteOptions) -> Vec<Verdict> {
    let values = unit_grid(opts.grid.max(1));
    let mut basic = Tally::new("s3", "basic_iff_hereditary", "3-point tables: basic ⇔ hereditary");
    let mut sep = Tally::new("s3", "2sep_iff_seq_hausdorff", "3-point tables: 2-separating ⇔ sequentially Hausdorff");
    let mut sep_basic = Tally::new("s3", "2sep_implies_basic", "3-point tables: 2-separating ⇒ basic");
    let mut conv =
        Tally::new("s3", "convergence_criterion", "2-separating tables: premetric and topological convergence agree");
    let mut ops = Tally::new("s3", "interior_closure_laws", "interior ⊆ A ⊆ closure, idempotent, interior open");
    let mut trunc = Tally::new("s3", "truncate_idempotent", "truncate ∘ truncate = truncate");
    for s in all_tables(3, &values) {
        let top = premetric_topology(&s).expect("3 points");
        let b = is_basic(&s).expect("3 points");
        basic.check(b == is_hereditary(&s).expect("3 points"), || spec_json(&s));
        let two = is_2_separating(&s);
        sep.check(two == is_seq_hausdorff_finite(&s).expect("3 points"), || spec_json(&s));
        sep_basic.check(!two || b, || spec_json(&s));
        if two {
            for x in s.points() {
                for c in s.points() {
                    let seq = SequenceSpec::constant(c);
                    let a = converges_by_premetric(&s, &seq, &x).expect("constant tail");
                    let t = converges_topologically_finite(&s, &top, &seq, x).expect("constant tail");
                    conv.check(a == t, || json!({ "space": spec_json(&s), "limit": x, "constant": c }));
                }
            }
        }
        for a in (0..8).map(PointSet) {
            let (int, cl) = (top.interior(a), top.closure(a));
            let ok = int.is_subset(a)
                && a.is_subset(cl)
                && top.interior(int) == int
                && top.closure(cl) == cl
                && top.is_open(int);
            ops.check(ok, || json!({ "space": spec_json(&s), "set": a.iter().collect::<Vec<_>>() }));
        }
        let t = truncate(&s);
        trunc.check(truncate(&t) == t, || spec_json(&s));
    }
    let mut nbhd =
        Tally::new("s3", "neighborhood_premetric", "premetric from a neighborhood system generates its topology");
    let mut r = rng(opts.seed);
    for _ in 0..opts.sample {
        let ns = random_neighborhood_system(&mut r, 4);
        let top = premetric_topology(&premetric_from_neighborhoods(&ns)).expect("4 points");
        let generated: Vec<PointSet> = (0..16u64)
            .map(PointSet)
            .filter(|u| u.iter().all(|x| ns.chain(x).iter().any(|b| b.is_subset(*u))))
            .collect();
        nbhd.check(top.open_sets() == generated.as_slice(), || {
            json!((0..4)
                .map(|x| ns.chain(x).iter().map(|b| b.iter().collect::<Vec<_>>()).collect::<Vec<_>>())
                .collect::<Vec<_>>())
        });
    }
    vec![basic.done(), sep.done(), sep_basic.done(), conv.done(), ops.done(), trunc.done(), nbhd.done()]
}

/// Random decreasing chains `B₀(x) ⊇ B₁(x) ⊇ …` containing `x`.
pub fn random_neighborhood_system<R: Rng>(r: &mut R, n: usize) -> NeighborhoodSystem {
    let full = PointSet::full(n).0;
    let chains = (0..n)
        .map(|x| {
            let mut cur = PointSet(r.random::<u64>() & full).with(x);
            let mut chain = vec![cur];
            for _ in 0..r.random_range(0..3) {
                cur = PointSet(cur.0 & r.random::<u64>()).with(x);
                chain.push(cur);
            }
            chain
        })
        .collect();
    NeighborhoodSystem::new((0..n).map(|i| format!("p{i}")).collect(), chains).expect("valid by construction")
}

/// A small presentation with constant tails only, so relabeling by an
/// injection is again a presentation.
pub fn finite_presentation(relabel: &dyn Fn(&str) -> String) -> SeqPresentation {
    let pts: Vec<String> = (0..5).map(|i| relabel(&format!("x{i}"))).collect();
    let seq = |id: &str, limit: usize, prefix: &[usize], tail: usize| Sequence {
        id: id.into(),
        limit: pts[limit].clone(),
        prefix: prefix.iter().map(|&i| pts[i].clone()).collect(),
        tail: SeqTail::Constant(pts[tail].clone()),
    };
    let seqs = vec![seq("f", 0, &[1, 2, 3], 0), seq("g", 0, &[4, 1], 1), seq("h", 2, &[0, 0, 3, 4], 2)];
    SeqPresentation::new(pts.clone(), seqs).expect("valid presentation")
}

fn harmonic_presentation() -> SeqPresentation {
    let points = ["0", "1", "1/2", "1/3"].iter().map(|s| s.to_string()).collect();
    let seqs = vec![
        Sequence { id: "h".into(), limit: "0".into(), prefix: vec![], tail: SeqTail::Indexed(Family::Harmonic) },
        Sequence {
            id: "k".into(),
            limit: "0".into(),
            prefix: vec!["1".into(), "1/3".into()],
            tail: SeqTail::Constant("0".into()),
        },
    ];
    SeqPresentation::new(points, seqs).expect("valid presentation")
}

/// A random region over the presentation's points and families.
fn random_region<R: Rng>(r: &mut R, pres: &SeqPresentation, families: &[Family]) -> Region {
    let atom = |r: &mut R| -> Region {
        let pts: Vec<String> = pres.points().choose_multiple(r, 3).cloned().collect();
        match r.random_range(0..4) {
            0 => Region::Points(pts.into_iter().collect()),
            1 => Region::Cofinite(pts.into_iter().collect()),
            2 => Region::FamilyTail { family: *families.choose(r).expect("families"), from: r.random_range(1..6) },
            _ => Region::All,
        }
    };
    let mut region = atom(r);
    for _ in 0..r.random_range(0..3) {
        region = if r.random_bool(0.5) { region.union(atom(r)) } else { region.intersection(atom(r)) };
    }
    region
}

fn suite_s4(opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    let arens = arens_presentation(4)?;
    let presentations = [
        ("arens", arens.clone()),
        ("harmonic", harmonic_presentation()),
        ("finite", finite_presentation(&|s| s.to_string())),
    ];
    let mut axioms = Tally::new(
        "s4",
        "d_premetric_cases",
        "D X premetric: d(a,a)=0, zero iff equal values, non-0/1 values only within one sequence",
    );
    let mut limits = Tally::new("s4", "sequences_approach_limit", "d((f,0),(f,1/n)) ≤ 1/n");
    for (name, pres) in &presentations {
        let space = DSpace::new(pres.clone());
        let sample = space.sample(6);
        for a in &sample {
            for b in &sample {
                let d = space.dist(a, b);
                let same_value = pres.evaluate(a)? == pres.evaluate(b)?;
                let ok = (a != b || d.is_zero())
                    && (d.is_zero() == same_value)
                    && (d.is_zero() || d == NonNegRational::ONE || a.seq == b.seq);
                axioms.check(
                    ok,
                    || json!({ "presentation": name, "a": pres.label(a), "b": pres.label(b), "d": d.to_string() }),
                );
            }
        }
        for seq in 0..pres.sequences().len() {
            for n in 1..=8 {
                let a = DPoint { seq, param: S0Param::Limit };
                let b = DPoint { seq, param: S0Param::Term(n) };
                let d = space.dist(&a, &b);
                limits.check(
                    d <= NonNegRational::recip_of(n),
                    || json!({ "presentation": name, "b": pres.label(&b), "d": d.to_string() }),
                );
            }
        }
    }

    let mut arens_ball =
        Tally::new("s4", "arens_ball_not_seq_open", "B((0,0),1/2) is not sequentially open in Arens' space");
    let region = arens_ball_region(&ArensPoint::Origin, q(1, 2))?;
    let failure = arens.seq_open_failure(&region)?.map(|s| s.id.clone());
    arens_ball.check(failure.as_deref().is_some_and(|id| id.starts_with("row:")), || json!({ "failure": failure }));

    let mut arens_conv = Tally::new("s4", "arens_sequences_converge", "spine and rows converge by the Arens premetric");
    let space = ArensSpace::default();
    let spine = SequenceSpec {
        prefix: vec![],
        tail: Tail::Indexed(IndexedTail::new("spine", ArensPoint::Spine, |x: &ArensPoint| {
            (*x == ArensPoint::Origin).then_some(NonNegRational::ZERO)
        })),
    };
    arens_conv.check(converges_by_premetric(&space, &spine, &ArensPoint::Origin)?, || json!("spine"));
    for n in 1..=6u64 {
        let row = SequenceSpec {
            prefix: vec![],
            tail: Tail::Indexed(IndexedTail::new(
                "row",
                move |m| ArensPoint::Row(n, m),
                move |x: &ArensPoint| (*x == ArensPoint::Spine(n)).then_some(NonNegRational::ZERO),
            )),
        };
        // The distance rule at the limit: d((1/n,0),(1/n,1/(nm))) = 1/(nm) → 0.
        let decays = (1..50)
            .all(|m| space.dist(&ArensPoint::Spine(n), &ArensPoint::Row(n, m)) == NonNegRational::recip_of(n * m));
        arens_conv
            .check(decays && converges_by_premetric(&space, &row, &ArensPoint::Spine(n))?, || json!({ "row": n }));
    }

    let mut closure = Tally::new("s4", "seq_open_closure", "seq-open regions are closed under finite ∩ and ∪");
    let mut witness = Tally::new("s4", "ball_witness", "ball witness m gives c(B((f,0),1/m)) ⊆ V");
    let mut r = rng(opts.seed);
    let families: Vec<Family> = std::iter::once(Family::ArensSpine).chain((1..=4).map(Family::ArensRow)).collect();
    let mut open = Vec::new();
    for _ in 0..opts.sample * 20 {
        let u = random_region(&mut r, &arens, &families);
        if arens.is_seq_open(&u)? {
            open.push(u);
        }
        if open.len() >= opts.sample {
            break;
        }
    }
    for (i, u) in open.iter().enumerate() {
        let v = &open[(i + 1) % open.len()];
        let ok =
            arens.is_seq_open(&u.clone().intersection(v.clone()))? && arens.is_seq_open(&u.clone().union(v.clone()))?;
        closure.check(ok, || json!({ "u": format!("{u:?}"), "v": format!("{v:?}") }));
        for seq in 0..arens.sequences().len() {
            let a = DPoint { seq, param: S0Param::Limit };
            if !u.contains(&arens.evaluate(&a)?) {
                continue;
            }
            let m = seq_open_ball_witness(&arens, &a, u)?;
            let ok = verify_ball_inclusion(&arens, &a, u, m, 12)?;
            witness.check(ok, || json!({ "a": arens.label(&a), "v": format!("{u:?}"), "m": m }));
        }
    }

    let mut natural = Tally::new("s4", "evaluate_naturality", "evaluation commutes with relabeling by an injection");
    let plain = finite_presentation(&|s| s.to_string());
    let relabel = |s: &str| format!("g({s})");
    let moved = finite_presentation(&relabel);
    for a in DSpace::new(plain.clone()).sample(6) {
        natural.check(moved.evaluate(&a)? == relabel(&plain.evaluate(&a)?), || json!(plain.label(&a)));
    }
    Ok(vec![
        axioms.done(),
        limits.done(),
        arens_ball.done(),
        arens_conv.done(),
        closure.done(),
        witness.done(),
        natural.done(),
    ])
}

fn gamma_params() -> Vec<NonNegRational> {
    vec![q(1, 4), q(1, 3), q(1, 2), q(2, 3), q(3, 4)]
}

fn suite_s5(opts: &SuiteOptions) -> Vec<Verdict> {
    let mut axioms = Tally::new(
        "s5",
        "gamma_metric_axioms",
        "symmetry, identity of indiscernibles, triangle inequality, diameter ≤ 2",
    );
    let mut disjoint = Tally::new("s5", "disjoint_edges_far", "points on disjoint closed edges are ≥ 1 apart");
    let carrier = [0u8, 1, 2, 3];
    let pts = gamma_points(&carrier, &gamma_params());
    let ends = |g: &GammaPoint<u8>| -> BTreeSet<u8> {
        match g {
            GammaPoint::Vertex(v) => [*v].into(),
            GammaPoint::Edge(x, y, _) => [*x, *y].into(),
        }
    };
    for a in &pts {
        for b in &pts {
            let ab = gamma_distance(a, b);
            let ok = ab == gamma_distance(b, a) && (ab.is_zero() == (a == b)) && ab <= NonNegRational::TWO;
            axioms.check(ok, || json!({ "a": format!("{a:?}"), "b": format!("{b:?}") }));
            if ends(a).is_disjoint(&ends(b)) {
                disjoint.check(ab >= NonNegRational::ONE, || json!({ "a": format!("{a:?}"), "b": format!("{b:?}") }));
            }
            for c in &pts {
                let ok = gamma_distance(a, c) <= ab + gamma_distance(b, c);
                axioms.check(ok, || json!({ "a": format!("{a:?}"), "b": format!("{b:?}"), "c": format!("{c:?}") }));
            }
        }
    }

    let mut functor = Tally::new("s5", "gamma_functor_laws", "Γid = id and Γg ∘ Γf = Γ(g ∘ f)");
    let mut nonexp = Tally::new("s5", "gamma_map_nonexpanding", "d(Γf a, Γf b) ≤ d(a, b) for arbitrary f");
    let mut r = rng(opts.seed);
    for _ in 0..opts.sample {
        let f: Vec<u8> = (0..4).map(|_| r.random_range(0..4)).collect();
        let g: Vec<u8> = (0..4).map(|_| r.random_range(0..4)).collect();
        let a = pts.choose(&mut r).expect("points");
        let b = pts.choose(&mut r).expect("points");
        let ff = |x: &u8| f[*x as usize];
        let gg = |x: &u8| g[*x as usize];
        let ok =
            gamma_map(|x: &u8| *x, a) == *a && gamma_map(gg, &gamma_map(ff, a)) == gamma_map(|x: &u8| gg(&ff(x)), a);
        functor.check(ok, || json!({ "f": f, "g": g, "a": format!("{a:?}") }));
        let ok = gamma_distance(&gamma_map(ff, a), &gamma_map(ff, b)) <= gamma_distance(a, b);
        nonexp.check(ok, || json!({ "f": f, "a": format!("{a:?}"), "b": format!("{b:?}") }));
    }

    let mut iso = Tally::new("s5", "injective_isometric", "injective f: Γf preserves all sampled distances");
    let mut contraction = Tally::new("s5", "noninjective_contracts", "a non-injective f strictly contracts some pair");
    for k in 1..=3usize {
        let src: Vec<u8> = (0..k as u8).collect();
        let sp = gamma_points(&src, &gamma_params());
        let pairs: Vec<_> = sp.iter().flat_map(|a| sp.iter().map(move |b| (a.clone(), b.clone()))).collect();
        for code in 0..4usize.pow(k as u32) {
            let f: Vec<u8> = (0..k).map(|i| (code / 4usize.pow(i as u32) % 4) as u8).collect();
            let injective = f.iter().collect::<BTreeSet<_>>().len() == k;
            let map = |x: &u8| f[*x as usize];
            if injective {
                let ok = check_isometric_embedding(map, &src, &pairs).unwrap_or(false);
                iso.check(ok, || json!({ "f": f }));
            } else {
                let strict = pairs
                    .iter()
                    .any(|(a, b)| gamma_distance(&gamma_map(map, a), &gamma_map(map, b)) < gamma_distance(a, b));
                contraction.check(strict, || json!({ "f": f }));
            }
        }
    }
    vec![axioms.done(), disjoint.done(), functor.done(), nonexp.done(), iso.done(), contraction.done()]
}

fn base_values() -> Vec<NonNegRational> {
    vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4), q(1, 1), q(3, 2)]
}

fn suite_s7(opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    let mut r = rng(opts.seed);
    let values = base_values();
    let mut lip = Tally::new("s7", "compression_lipschitz_at_vertices", "d̄(x, π a) ≤ d(x, a)");
    let mut balls = Tally::new("s7", "ball_image", "π(B(x, r)) = B(x, r) for r ∈ {1/4, 1/2, 3/4, 1}");
    let mut lower = Tally::new("s7", "distance_lower_bound", "d(a, b) ≥ min_x [d̄(x, πa) + d̄(x, πb)]");
    let mut local =
        Tally::new("s7", "compression_locally_constant", "π constant on B(a, min(t, 1−t)) for arc points a");
    let mut shadow = Tally::new("s7", "compression_image_size", "|π(A)| ≤ |A|, equality iff distinct spiders");
    let mut membership =
        Tally::new("s7", "map_preserves_membership", "non-expanding f maps cobweb points into the target cobweb");
    let mut functor = Tally::new("s7", "cobweb_functor_laws", "⊛id = id and ⊛g ∘ ⊛f = ⊛(g ∘ f)");
    let mut natural = Tally::new("s7", "compression_naturality", "π_Y ∘ ⊛f = f ∘ π_X");
    for _ in 0..opts.sample {
        let n = r.random_range(1..=5);
        let base = random_table(&mut r, n, &values);
        let web = Cobweb::new(&base);
        let carrier: Vec<usize> = base.points().collect();
        let grid = web.witness_grid(&carrier);
        for x in &carrier {
            let vx = GammaPoint::Vertex(*x);
            for a in &grid {
                let ok = base.d(*x, *a.origin()).truncated() <= gamma_distance(&vx, a);
                lip.check(ok, || json!({ "space": spec_json(&base), "x": x, "a": format!("{a:?}") }));
            }
            for rad in [q(1, 4), q(1, 2), q(3, 4), q(1, 1)] {
                let ok = web.pi_ball_image_check(x, rad, &carrier, &grid)?;
                balls.check(ok, || json!({ "space": spec_json(&base), "x": x, "r": rad.to_string() }));
            }
        }
        for a in &grid {
            for b in &grid {
                lower.check(
                    web.lower_bound_holds(a, b, &carrier),
                    || json!({ "space": spec_json(&base), "a": format!("{a:?}"), "b": format!("{b:?}") }),
                );
                if let GammaPoint::Edge(_, _, t) = a {
                    if gamma_distance(a, b) < (*t).min(NonNegRational::ONE.saturating_sub(*t)) {
                        local.check(
                            a.origin() == b.origin(),
                            || json!({ "space": spec_json(&base), "a": format!("{a:?}"), "b": format!("{b:?}") }),
                        );
                    }
                }
            }
        }
        let sub: Vec<GammaPoint<usize>> = grid.choose_multiple(&mut r, 4).cloned().collect();
        let image: BTreeSet<usize> = sub.iter().map(|a| *a.origin()).collect();
        shadow.check(image.len() <= sub.len(), || json!({ "space": spec_json(&base) }));

        let m = r.random_range(1..=4);
        let (f, target) = random_nonexpanding(&mut r, &base, m, &values);
        let k = r.random_range(1..=4);
        let (g, third) = random_nonexpanding(&mut r, &target, k, &values);
        let tweb = Cobweb::new(&target);
        let hweb = Cobweb::new(&third);
        let fmap = NonExpandingMap::new(&web, &tweb, |x: &usize| f[*x], &carrier)?;
        let tcar: Vec<usize> = target.points().collect();
        let gmap = NonExpandingMap::new(&tweb, &hweb, |x: &usize| g[*x], &tcar)?;
        let idmap = NonExpandingMap::new(&web, &web, |x: &usize| *x, &carrier)?;
        for a in &grid {
            match fmap.map(a) {
                Ok(fa) => {
                    membership.check(true, || Value::Null);
                    natural.check(*fa.origin() == f[*a.origin()], || json!({ "a": format!("{a:?}") }));
                    let composed = gmap.map(&fa).ok();
                    let direct = gamma_map(|x: &usize| g[f[*x]], a);
                    functor.check(idmap.map(a).ok().as_ref() == Some(a) && composed == Some(direct), || json!({ "a": format!("{a:?}") }));
                }
                Err(e) => membership.check(false, || json!({ "space": spec_json(&base), "target": spec_json(&target), "f": f, "a": format!("{a:?}"), "error": e.to_string() })),
            }
        }
    }

    let mut equiv = Tally::new(
        "s7",
        "nonexpansion_iff_pseudometric",
        "compression non-expanding on the witness grid ⇔ d̄ pseudometric (all 2- and 3-point tables)",
    );
    let grid5 = [q(0, 1), q(1, 4), q(1, 2), q(1, 1), q(3, 2)];
    for n in 2..=3 {
        for s in all_tables(n, &grid5) {
            let carrier: Vec<usize> = s.points().collect();
            let e = compression_nonexpansion_experiment(&Cobweb::new(&s), &carrier);
            let pseudo = classify(&truncate(&s)).is_pseudometric;
            equiv.check(
                e.nonexpanding == e.pseudometric && e.pseudometric == pseudo,
                || json!({ "space": spec_json(&s), "nonexpanding": e.nonexpanding, "pseudometric": pseudo }),
            );
        }
    }
    Ok(vec![
        lip.done(),
        balls.done(),
        lower.done(),
        local.done(),
        shadow.done(),
        membership.done(),
        functor.done(),
        natural.done(),
        equiv.done(),
    ])
}

/// `max_{n ≤ levels} (1/n)·d_n` by explicit lifting.
fn lifted_max<S: Premetric>(
    t: &TowerSpace<S>,
    a: &TowerPoint<S::Point>,
    b: &TowerPoint<S::Point>,
    levels: usize,
) -> NonNegRational {
    (1..=levels).map(|n| t.level_term(a, b, n)).max().unwrap_or(NonNegRational::ZERO)
}

fn random_stems(t: &TowerSpace<&FinitePremetricSpace>, r: &mut SampleRng, count: usize) -> Vec<TowerPoint<usize>> {
    let carrier: Vec<usize> = t.base().points().collect();
    let pools = t.level_pools(&carrier, 2, r);
    (0..count)
        .map(|_| {
            let len = r.random_range(1..=3);
            t.random_stem(&pools, len, r)
        })
        .collect()
}

fn suite_s8(opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    let mut r = rng(opts.seed);
    let values = base_values();
    let mut closed = Tally::new("s8", "omega_closed_form", "closed form = max over n ≤ N'+8 of lifted level terms");
    let mut metric = Tally::new("s8", "omega_metric_axioms", "omega distance is a metric on canonical stems");
    let mut lipschitz = Tally::new("s8", "projections_lipschitz", "d_n(π_n a, π_n b) ≤ n·d_ω(a, b)");
    let mut coherent = Tally::new("s8", "projection_coherence", "π(π_{n+1} a) = π_n a");
    let mut compress =
        Tally::new("s8", "omega_compression_nonexpanding", "d̄(π^ω a, π^ω b) ≤ d_ω(a, b) when d̄ is a pseudometric");
    let mut natural = Tally::new("s8", "omega_naturality", "π^ω ∘ ⊛^ω f = f ∘ π^ω and the tower action is functorial");
    let mut census = Tally::new("s8", "economy_census", "max attained at a level term; |values| ≤ 1 + Σ|π_n A|²");
    for _ in 0..opts.sample.div_ceil(5).max(1) {
        let n = r.random_range(1..=4);
        let base = random_table(&mut r, n, &values);
        let t = TowerSpace::new(&base);
        let stems = random_stems(&t, &mut r, 10);
        let pseudo = classify(&truncate(&base)).is_pseudometric;
        for a in &stems {
            for k in 1..=4 {
                coherent.check(
                    a.projection(k + 1).compress() == Some(&a.projection(k)),
                    || json!({ "a": format!("{a:?}") }),
                );
            }
            for b in &stems {
                let d = t.omega_distance(a, b);
                let depth = a.len().max(b.len());
                closed.check(
                    d == lifted_max(&t, a, b, depth + 8),
                    || json!({ "space": spec_json(&base), "a": format!("{a:?}"), "b": format!("{b:?}") }),
                );
                metric.check(
                    d == t.omega_distance(b, a) && (d.is_zero() == (a == b)),
                    || json!({ "a": format!("{a:?}"), "b": format!("{b:?}") }),
                );
                for k in 1..=depth {
                    let ok = t.level_distance(k, &a.projection(k), &b.projection(k))?
                        <= d * NonNegRational::integer(k as u64);
                    lipschitz.check(ok, || json!({ "a": format!("{a:?}"), "b": format!("{b:?}"), "n": k }));
                }
                if pseudo {
                    let ok = base.d(*t.omega_compression(a), *t.omega_compression(b)).truncated() <= d;
                    compress.check(
                        ok,
                        || json!({ "space": spec_json(&base), "a": format!("{a:?}"), "b": format!("{b:?}") }),
                    );
                }
                for c in &stems {
                    metric.check(
                        t.omega_distance(a, c) <= d + t.omega_distance(b, c),
                        || json!({ "a": format!("{a:?}"), "b": format!("{b:?}"), "c": format!("{c:?}") }),
                    );
                }
            }
        }
        let m = r.random_range(1..=4);
        let (f, target) = random_nonexpanding(&mut r, &base, m, &values);
        let tt = TowerSpace::new(&target);
        for a in &stems {
            let fa = a.map(&|x: &usize| f[*x]);
            let ok = tt.validate_stem(fa.stem().to_vec()).is_ok()
                && *tt.omega_compression(&fa) == f[*t.omega_compression(a)]
                && a.map(&|x: &usize| *x) == *a;
            natural.check(ok, || json!({ "a": format!("{a:?}"), "f": f }));
        }
        match t.economy_census(&stems) {
            Ok(c) => census.check(c.within_bound(), || json!({ "values": c.distance_values.len(), "bound": c.bound })),
            Err(e) => census.check(false, || json!(e.to_string())),
        }
    }

    let mut cantor =
        Tally::new("s8", "cantor_census", "cantor:8 has 9 distance values over 65536 pairs and isoceles triangles");
    let c = CantorTruncation::new(8)?;
    let finite = c.to_finite();
    let values: BTreeSet<_> = finite.realized_values();
    let iso = isoceles_check(&finite)?;
    cantor.check(values.len() == 9 && iso, || json!({ "values": values.len(), "isoceles": iso }));
    Ok(vec![
        closed.done(),
        metric.done(),
        lipschitz.done(),
        coherent.done(),
        compress.done(),
        natural.done(),
        census.done(),
        cantor.done(),
    ])
}

/// Random E-points over `e`: stems of length ≤ 3 from level pools built on
/// the presentation's sample with `terms` terms per sequence.
pub fn random_epoints(e: &EResolution, r: &mut SampleRng, count: usize, terms: u64) -> Vec<TowerPoint<DPoint>> {
    let base: Vec<DPoint> = e.dspace().sample(terms);
    let pools = e.tower().level_pools(&base, 2, r);
    (0..count)
        .map(|_| {
            let len = r.random_range(1..=3);
            e.tower().random_stem(&pools, len, r)
        })
        .collect()
}

fn suite_s9(opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    let mut r = rng(opts.seed);
    let e = EResolution::new(arens_presentation(2)?);
    let pres = e.presentation();
    let mut section = Tally::new("s9", "resolve_lift_identity", "resolve ∘ lift = id; lifts are injective and 1 apart");
    let lifts: Vec<_> = pres.points().iter().map(|x| e.lift_base_point(x)).collect::<Result<_>>()?;
    for (i, a) in lifts.iter().enumerate() {
        section.check(e.resolve(a)? == pres.points()[i], || json!(pres.points()[i]));
        for (j, b) in lifts.iter().enumerate() {
            let d = e.tower().omega_distance(a, b);
            section.check((i == j) == d.is_zero() && (i == j || d == NonNegRational::ONE), || {
                json!([pres.points()[i], pres.points()[j]])
            });
        }
    }
    let sample = random_epoints(&e, &mut r, opts.sample.max(10), 3);
    let mut nbhd = Tally::new(
        "s9",
        "convergent_sequence_neighborhood",
        "omega-balls of the witness radius resolve into one convergent sequence",
    );
    let mut separated = Tally::new("s9", "distinct_resolutions_apart", "resolve(a) ≠ resolve(b) ⇒ d_ω(a, b) > 0");
    for a in &sample {
        let w = e.convergent_sequence_neighborhood(a)?;
        nbhd.check(w.radius.is_positive(), || json!({ "a": format!("{a:?}") }));
        for b in &sample {
            let d = e.tower().omega_distance(a, b);
            if d < w.radius {
                let rb = e.resolve(b)?;
                nbhd.check(
                    e.image_contains(&w.image, &rb)?,
                    || json!({ "a": format!("{a:?}"), "b": format!("{b:?}"), "resolved": rb }),
                );
            }
            if e.resolve(a)? != e.resolve(b)? {
                separated.check(d.is_positive(), || json!({ "a": format!("{a:?}"), "b": format!("{b:?}") }));
            }
        }
    }
    let mut census = Tally::new("s9", "resolution_census", "census over an Arens sample: max attained, counting bound");
    match e.resolution_census(&sample) {
        Ok(c) => census.check(
            c.census.within_bound(),
            || json!({ "values": c.census.distance_values.len(), "bound": c.census.bound }),
        ),
        Err(err) => census.check(false, || json!(err.to_string())),
    }
    let mut collapse = Tally::new("s9", "zero_distance_full_arcs", "d_D(y, x) = 0 gives a kept arc [x, y] of length 1");
    let web = Cobweb::new(e.dspace());
    let base = e.dspace().sample(3);
    for x in &base {
        for y in &base {
            if x != y && e.dspace().dist(y, x).is_zero() {
                collapse.check(web.cutoff(x, y)? == NonNegRational::ONE, || json!([pres.label(x), pres.label(y)]));
            }
        }
    }
    let mut natural = Tally::new("s9", "resolve_naturality", "resolution commutes with relabeling by an injection");
    let plain = EResolution::new(finite_presentation(&|s| s.to_string()));
    let relabel = |s: &str| format!("g({s})");
    let moved = EResolution::new(finite_presentation(&relabel));
    for a in random_epoints(&plain, &mut r, opts.sample.max(10), 4) {
        natural.check(moved.resolve(&a)? == relabel(&plain.resolve(&a)?), || json!(format!("{a:?}")));
    }
    Ok(vec![section.done(), nbhd.done(), separated.done(), census.done(), collapse.done(), natural.done()])
}

fn suite_s10(opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    let mut r = rng(opts.seed);
    let web = Cobweb::new(DoubleInterval::default());
    let mut extremal =
        Tally::new("s10", "extremality_witness", "Max/Min/Const verdicts hold on ≥ 200 ball samples per point");
    let mut values = BTreeSet::new();
    for _ in 0..opts.sample.max(100) {
        let a = random_member(&web, &mut r);
        let w = extremality_witness(&web, &a)?;
        let sample = ball_sample(&web, &a, w.radius, 32);
        let ok = sample.len() >= 200 && extremality_holds(&web, &a, &w, &sample)?;
        extremal
            .check(ok, || json!({ "a": format!("{a:?}"), "kind": format!("{:?}", w.kind), "samples": sample.len() }));
        values.insert(locally_extremal_f(&web, &a)?);
    }
    let mut onto = Tally::new("s10", "f_hits_many_values", "f takes ≥ 50 distinct values on the sample");
    onto.check(values.len() >= 50, || json!({ "distinct": values.len() }));
    Ok(vec![extremal.done(), onto.done()])
}
