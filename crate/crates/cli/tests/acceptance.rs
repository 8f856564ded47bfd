//! Acceptance criteria, checked end to end with exact rational equality.
//!
//! Each criterion prints one `PASS`/`FAIL` line with a short summary. The
//! run succeeds when the set of failing criteria equals the documented set
//! of known failures (see [`KNOWN_FAILURES`]); any other outcome, including
//! an unexpected pass, fails the target.
//!
//! The genus-zero sweep covers `n = 4, 5` exhaustively and `n = 6, 7` on an
//! evenly spaced deterministic sample; set `MSD_FULL_SWEEP=1` to run every
//! spec (hours on a single core).

use evaluate::{BackendRegistry, FixtureRegistry, Integrator};
use exact::{lattice_index, IntegerMatrix, LatticeIndex, Rational};
use invariants::{chern_polynomial, cross_check, euler_characteristic, exponential_boundary, ChiTable};
use levelgraphs::{Edge, GraphInfo, LevelGraph, Lg1, ProngData, Vertex};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;
use strata::StratumSpec;
use tautring::{integrate_split, Atom, LevelIntegrator, Monomial, SplitClass};

/// Criteria expected to fail, with the reason recorded next to the check.
const KNOWN_FAILURES: &[u32] = &[5];

type Check = Result<String, String>;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).expect("nonzero denominator")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// Strata of the criteria
// ---------------------------------------------------------------------------

/// Non-increasing sequences of `r` nonzero integers `>= -9`, each at most
/// `hi`, summing to `s`.
fn signatures(r: usize, s: i64, hi: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if r == 0 {
        if s == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let r_i = r as i64;
    let mut v = hi.min(s + 9 * (r_i - 1));
    while v >= -9 {
        if v * r_i < s {
            break;
        }
        if v != 0 {
            prefix.push(v);
            signatures(r - 1, s - v, v, prefix, out);
            prefix.pop();
        }
        v -= 1;
    }
}

/// The genus-zero specs of the sweep for `n` points, and the stride used to
/// sample them.
fn genus_zero_specs(n: usize, full: bool) -> (Vec<StratumSpec>, usize, usize) {
    let mut all = Vec::new();
    signatures(n, -2, i64::MAX / 4, &mut Vec::new(), &mut all);
    let total = all.len();
    let stride = if full {
        1
    } else {
        match n {
            4 | 5 => 1,
            6 => 20,
            _ => 1000,
        }
    };
    let specs = all.iter().step_by(stride).map(|o| StratumSpec::connected(0, o)).collect();
    (specs, total, stride)
}

fn elliptic(k: i64) -> StratumSpec {
    StratumSpec::connected(1, &[-k - 1, 1, k])
}

fn minimal_genus_two() -> StratumSpec {
    StratumSpec::connected(2, &[2])
}

fn cherry() -> StratumSpec {
    StratumSpec::connected(0, &[1, 1, 2, 2, -8])
}

/// Shared state: one two-level memo for all recursion-only computations.
struct Context {
    memo: Arc<Lg1>,
    sweep: Vec<(usize, Vec<StratumSpec>, usize, usize)>,
}

impl Context {
    fn recursion_only(&self) -> Integrator {
        Integrator::with_memo(self.memo.clone(), BackendRegistry::recursion_only())
    }

    fn table_subset() -> Integrator {
        Integrator::new(BackendRegistry::with_fixtures(FixtureRegistry::table_subset(&[&[0], &[2]])))
    }

    /// Every spec of criteria 1 to 3 with the integrator used for it.
    fn item_strata(&self) -> Vec<(StratumSpec, bool)> {
        let mut out: Vec<(StratumSpec, bool)> =
            self.sweep.iter().flat_map(|(_, specs, _, _)| specs.iter().map(|s| (s.clone(), false))).collect();
        out.extend((2..=6).map(|k| (elliptic(k), true)));
        out.push((minimal_genus_two(), true));
        out
    }
}

fn all_graphs(integ: &Integrator, spec: &StratumSpec) -> Result<Vec<GraphInfo>, String> {
    let ring = integ.rings().ring(spec);
    let cache = ring.cache();
    let mut out = Vec::new();
    for l in 0..=cache.max_levels() {
        out.extend(cache.lg(l).map_err(err)?.graphs.iter().cloned());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

/// Genus-zero strata against the Euler characteristic of the moduli space of
/// pointed rational curves, without any fixtures.
fn genus_zero_sweep(ctx: &Context) -> Check {
    let integ = ctx.recursion_only();
    let mut checked = 0;
    let mut coverage = Vec::new();
    for (n, specs, total, stride) in &ctx.sweep {
        let expected = Rational::from(oracles::m0n_euler_characteristic(*n as u64));
        for spec in specs {
            let chi = euler_characteristic(spec, &integ).map_err(|e| format!("{}: {e}", spec.to_json()))?.chi;
            ensure(chi == expected, || format!("{}: chi = {chi}, expected {expected}", spec.to_json()))?;
            checked += 1;
        }
        coverage.push(if *stride == 1 {
            format!("n={n}: all {total}")
        } else {
            format!("n={n}: {} of {total} (every {stride}th)", specs.len())
        });
    }
    Ok(format!("{checked} strata, chi = (-1)^(n-3) (n-3)!; {}", coverage.join(", ")))
}

/// The elliptic family: Euler characteristics, divisor inventory and
/// self-intersections.
fn elliptic_family() -> Check {
    let integ = Integrator::default();
    for k in 2..=6 {
        let chi = euler_characteristic(&elliptic(k), &integ).map_err(err)?.chi;
        ensure(chi == q(k * (k + 1), 6), || format!("k={k}: chi = {chi}"))?;
    }
    // Inventory at k = 5, classified by (top genus, top leg orders,
    // enhancements) -> (ell, N_top).
    let k = 5i64;
    let spec = elliptic(k);
    let ring = integ.rings().ring(&spec);
    let lg1 = ring.lg1().map_err(err)?;
    let mut seen = BTreeMap::new();
    for g in &lg1.graphs {
        let gr = &g.graph;
        let top: Vec<i64> = gr.legs.iter().filter(|l| gr.vertices[l.vertex].depth == 0).map(|l| l.order).collect();
        let mut kappas: Vec<u64> = gr.edges.iter().map(|e| e.kappa).collect();
        kappas.sort_unstable();
        let top_genus: u32 = gr.vertices_at(0).iter().map(|&v| gr.vertices[v].genus).sum();
        seen.insert((top_genus, top, kappas), (g.prong.ell, g.n_top()));
    }
    let ku = k as u64;
    let lcm = |a: u64, b: u64| exact::lcm_list(&[a, b]).expect("positive");
    let mut expected = BTreeMap::new();
    for a in 1..=(ku + 1) / 2 {
        expected.insert((0u32, vec![-k - 1], vec![a, ku + 1 - a]), (lcm(a, ku + 1 - a), 1i64)); // D_1,a
    }
    expected.insert((1, vec![-k - 1], vec![ku + 2]), (ku + 2, 2)); // D_2
    expected.insert((1, vec![], vec![1]), (1, 2)); // D_3
    expected.insert((0, vec![-k - 1, 1], vec![ku - 1]), (ku - 1, 1)); // D_4
    for a in 1..=ku / 2 {
        expected.insert((0, vec![-k - 1, 1], vec![a, ku - a]), (lcm(a, ku - a), 2)); // D_5,a'
    }
    ensure(seen == expected && lg1.len() == expected.len(), || format!("k=5 inventory {seen:?}"))?;
    // Self-intersections of the two-edge divisors.
    let mut found = 0;
    for (i, info) in lg1.graphs.iter().enumerate() {
        if info.graph.edges.len() != 2 || info.graph.vertices.len() != 2 {
            continue;
        }
        let top_legs = info.graph.legs.iter().filter(|l| info.graph.vertices[l.vertex].depth == 0).count() as i64;
        let factor = if top_legs == 1 { k } else { k + 1 };
        let value = integ.integrate_monomial(&spec, &Monomial::atom(Atom::Divisor(i), 2)).map_err(err)?;
        let expected = q(-factor * info.prong.g as i64, (info.prong.ell * info.prong.aut) as i64);
        ensure(value == expected, || format!("D^2 = {value}, expected {expected} for {}", info.graph.describe()))?;
        found += 1;
    }
    ensure(found == 5, || format!("{found} two-edge divisors"))?;
    Ok(format!("chi = k(k+1)/6 for k=2..6; k=5 inventory of {} divisors; {found} self-intersections", lg1.len()))
}

/// The minimal genus-two stratum from two shipped values and closed forms.
fn minimal_genus_two_chi() -> Check {
    let report = euler_characteristic(&minimal_genus_two(), &Context::table_subset()).map_err(err)?;
    ensure(report.chi == q(-1, 40), || format!("chi = {}", report.chi))?;
    let mut got: Vec<Rational> = report.rows.iter().map(|r| r.contribution.clone()).collect();
    got.sort();
    let mut expected = vec![q(4, 1) * q(-1, 640), Rational::zero(), q(2, 1) * q(1, 24) * q(-1, 8), q(2, 1) * q(1, 2) * q(1, 24)];
    expected.sort();
    ensure(got == expected, || format!("contributions {got:?}"))?;
    Ok("chi = -1/40 with contributions 4(-1/640), 0, 2(1/24)(-1/8), 2(1/2)(1/24)".into())
}

/// Closed forms against the shipped table.
fn closed_forms_match_table() -> Check {
    let closed = Integrator::new(BackendRegistry::closed_forms());
    let table = FixtureRegistry::table();
    let mut lines = Vec::new();
    for (orders, genus, value) in [(vec![2, -2], 1, q(-1, 8)), (vec![2, 1, -3], 1, q(5, 8)), (vec![0, 0, -2], 0, q(1, 1))] {
        let spec = StratumSpec::connected(genus, &orders);
        let (v, rule) = closed.xi_top_with_rule(&spec).map_err(err)?;
        ensure(v == value, || format!("{orders:?}: {v} by {rule}, expected {value}"))?;
        let key = evaluate::EvalKey::xi_power(&spec, spec.dim() as u32);
        if let Some(shipped) = table.get(&key) {
            ensure(shipped == &value, || format!("{orders:?}: table has {shipped}"))?;
        }
        lines.push(format!("{orders:?} = {v}"));
    }
    Ok(lines.join(", "))
}

/// Normal bundles from the levels and from each edge, and the degree on the
/// cherry divisor.
fn normal_bundles() -> Check {
    let integ = Integrator::default();
    let mut checked = 0;
    let mut cherry_degree = None;
    for spec in [StratumSpec::connected(1, &[-6, 1, 5]), cherry()] {
        let ring = integ.rings().ring(&spec);
        let is_cherry = spec == cherry();
        for (i, info) in ring.lg1().map_err(err)?.graphs.iter().enumerate() {
            let cherry_graph = info.graph.vertices_at(1).len() == 2 && info.graph.edges.len() == 2 && info.prong.ell == 15;
            if is_cherry && !cherry_graph {
                continue;
            }
            let div = ring.divisor(i, integ.rings()).map_err(err)?;
            let levels = [div.levels[0].spec(), div.levels[1].spec()];
            let [d0, d1] = div.dims;
            let mut tests = Vec::new();
            for (a, b) in [(d0 - 1, d1), (d0, d1 - 1)] {
                if a >= 0 && b >= 0 {
                    let mut t = SplitClass::zero(2);
                    t.add_term(vec![Monomial::xi_power(a as u32), Monomial::xi_power(b as u32)], Rational::one());
                    tests.push(t);
                }
            }
            let via_levels = div.normal_bundle();
            for edge in 0..info.graph.edges.len() {
                let via_edge = div.normal_bundle_via_edge(edge).map_err(err)?;
                for t in &tests {
                    let lhs = integrate_split(&integ, &levels, &div.dims, &div.weight, &via_levels.mul(t, &div.dims)).map_err(err)?;
                    let rhs = integrate_split(&integ, &levels, &div.dims, &div.weight, &via_edge.mul(t, &div.dims)).map_err(err)?;
                    ensure(lhs == rhs, || format!("{}: edge {edge}: {lhs} vs {rhs}", info.graph.describe()))?;
                    checked += 1;
                }
            }
            if cherry_graph {
                let one = SplitClass::one(2);
                let deg = integrate_split(&integ, &levels, &div.dims, &div.weight, &via_levels.mul(&one, &div.dims)).map_err(err)?;
                cherry_degree = Some(deg);
            }
        }
    }
    let deg = cherry_degree.ok_or("cherry divisor not found")?;
    // The degree is -1/(m1 m2): the displayed intermediate step
    // deg(N^{m1}) = -1/m2 forces the negative sign, while the stated value
    // is +1/(m1 m2). Reported as a failure rather than adjusted.
    ensure(deg == q(1, 15), || format!("{checked} agreements, but cherry degree = {deg}, expected 1/15"))?;
    Ok(format!("{checked} agreements; cherry degree {deg}"))
}

/// A three-level triangle: top to middle with `a`, middle to bottom with `b`,
/// top to bottom with `c`.
fn triangle(a: u64, b: u64, c: u64) -> LevelGraph {
    LevelGraph {
        vertices: (0..3).map(|d| Vertex { comp: 0, genus: 0, depth: d }).collect(),
        legs: vec![],
        edges: vec![Edge { top: 0, bottom: 1, kappa: a }, Edge { top: 1, bottom: 2, kappa: b }, Edge { top: 0, bottom: 2, kappa: c }],
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Twist-group indices on triangles and prong-matching counts on every
/// enumerated graph.
fn twist_arithmetic(ctx: &Context) -> Check {
    let lcm = |x: u64, y: u64| x / gcd(x, y) * y;
    for a in 1..=6u64 {
        for b in 1..=6u64 {
            for c in 1..=6u64 {
                let p = ProngData::of(&triangle(a, b, c)).map_err(err)?;
                let g = gcd(gcd(a, b), c);
                // e = ell g / K must equal gcd lcm(a,c) lcm(b,c) / (abc).
                ensure(p.e * a * b * c == g * lcm(a, c) * lcm(b, c), || format!("e({a},{b},{c}) = {}", p.e))?;
                let tws = IntegerMatrix::from_rows(2, &[vec![p.ell_levels[0] as i64, 0], vec![0, p.ell_levels[1] as i64]])
                    .map_err(err)?;
                ensure(lattice_index(2, &tws).map_err(err)? == LatticeIndex::Finite(p.ell.into()), || "ell index".into())?;
            }
        }
    }
    let mut checked = 0;
    let mut skipped = 0;
    // The orbit count depends only on the enhancements and crossing pattern.
    let mut orbit_counts: HashMap<(Vec<u64>, Vec<Vec<u8>>), u64> = HashMap::new();
    let recursion = ctx.recursion_only();
    let table = Integrator::default();
    for (spec, fixtures) in ctx.item_strata() {
        let integ = if fixtures { &table } else { &recursion };
        for info in all_graphs(integ, &spec)? {
            if info.prong.k > 5000 {
                skipped += 1;
                continue;
            }
            let g = &info.graph;
            let kappas: Vec<u64> = g.edges.iter().map(|e| e.kappa).collect();
            let rows: Vec<Vec<u8>> =
                (1..=g.levels_below()).map(|p| (0..g.edges.len()).map(|e| u8::from(g.crosses(e, p))).collect()).collect();
            let bfs = *orbit_counts
                .entry((kappas, rows))
                .or_insert_with_key(|(kappas, rows)| oracles::bfs_orbit_count(kappas, rows));
            ensure(info.prong.g == bfs, || format!("{}: g = {}, orbit search {bfs}", g.describe(), info.prong.g))?;
            checked += 1;
        }
    }
    Ok(format!("216 triangles; g matches orbit search on {checked} graphs ({skipped} with K > 5000 skipped)"))
}

/// Top Chern class against the Euler characteristic, and the published
/// gluing identities.
fn chern_duality(ctx: &Context) -> Check {
    let recursion = ctx.recursion_only();
    let mut checked = 0;
    for (spec, fixtures) in ctx.item_strata() {
        let report = if fixtures {
            chern_polynomial(&spec, &Context::table_subset())
        } else {
            chern_polynomial(&spec, &recursion)
        }
        .map_err(|e| format!("{}: {e}", spec.to_json()))?;
        ensure(report.consistent, || format!("{}: c_top = {}, chi = {}", spec.to_json(), report.top, report.chi))?;
        checked += 1;
    }
    let ledger = cross_check(&ChiTable::published());
    ensure(ledger.passed(), || ledger.to_table())?;
    Ok(format!("c_top = (-1)^d chi on {checked} strata; gluing identities 3/1008 and 1/40 hold"))
}

/// Profiles, level dimensions, automorphism cancellation and the
/// exponential identity over every graph of criteria 1 to 3.
fn structural_suite(ctx: &Context) -> Check {
    let recursion = ctx.recursion_only();
    let table = Integrator::default();
    let (mut graphs, mut gluings, mut exp_checks) = (0usize, 0usize, 0usize);
    for (idx, (spec, fixtures)) in ctx.item_strata().into_iter().enumerate() {
        let integ = if fixtures { &table } else { &recursion };
        let ring = integ.rings().ring(&spec);
        let cache = ring.cache();
        let lg1 = cache.lg(1).map_err(err)?;
        for l in 2..=cache.max_levels() {
            let mut orderings: BTreeMap<BTreeSet<usize>, BTreeSet<Vec<usize>>> = BTreeMap::new();
            for info in &cache.lg(l).map_err(err)?.graphs {
                let set: BTreeSet<usize> = info.profile.iter().copied().collect();
                ensure(info.profile.len() == l && set.len() == l, || format!("profile {:?}", info.profile))?;
                orderings.entry(set).or_default().insert(info.profile.clone());
                // Level dimensions merge under each two-level undegeneration.
                let d = info.level_dims();
                for k in 1..=l {
                    let two = &lg1.graphs[info.profile[k - 1]];
                    let top = (k as i64 - 1) + d[..k].iter().sum::<i64>();
                    let bottom = (l as i64 - k as i64) + d[k..].iter().sum::<i64>();
                    ensure(two.level_dims() == vec![top, bottom], || format!("dimensions of {}", info.graph.describe()))?;
                }
            }
            for (set, orders) in orderings {
                ensure(orders.len() == 1, || format!("profile set {set:?} has {} orderings", orders.len()))?;
            }
        }
        // Automorphism counting when splitting a level.
        for l in 0..cache.max_levels() {
            for info in &cache.lg(l).map_err(err)?.graphs {
                graphs += 1;
                for level in &info.levels {
                    let inner = cache.memo().get(&level.spec);
                    let mut classes: BTreeMap<LevelGraph, Vec<&LevelGraph>> = BTreeMap::new();
                    for delta in inner.iter() {
                        let hat = info.graph.glue(level, delta).map_err(err)?.graph.canonical().graph;
                        classes.entry(hat).or_default().push(delta);
                    }
                    for (hat, members) in classes {
                        for delta in &members {
                            ensure(
                                members.len() as u64 * hat.automorphism_order()
                                    == delta.automorphism_order() * info.prong.aut,
                                || format!("automorphisms of {}", hat.describe()),
                            )?;
                            gluings += 1;
                        }
                    }
                }
            }
        }
        graphs += cache.lg(cache.max_levels()).map_err(err)?.len();
        // The exponential identity: on the strata with fixtures and on every
        // tenth genus-zero stratum.
        if fixtures || idx % 10 == 0 {
            let d = spec.dim();
            let mut factorial = Rational::one();
            for k in 1..=d {
                factorial *= Rational::from(k);
                let mut m = Monomial::xi_power((d - k) as u32);
                m.mul_atom(Atom::L, k as u32);
                let lhs = integ.integrate_monomial(&spec, &m).map_err(err)? * factorial.recip().map_err(err)?;
                let rhs = exponential_boundary(&spec, k, integ).map_err(err)?.pair_with_xi(&spec, integ).map_err(err)?;
                ensure(lhs == rhs, || format!("exp(L) in degree {k} on {}", spec.to_json()))?;
                exp_checks += 1;
            }
        }
    }
    Ok(format!("{graphs} graphs, {gluings} gluing counts, {exp_checks} exponential-identity degrees"))
}

fn main() {
    let full = std::env::var("MSD_FULL_SWEEP").is_ok_and(|v| v == "1");
    let sweep = (4..=7)
        .map(|n| {
            let (specs, total, stride) = genus_zero_specs(n, full);
            (n, specs, total, stride)
        })
        .collect();
    let ctx = Context { memo: Arc::new(Lg1::default()), sweep };
    let criteria: Vec<(u32, &str, Box<dyn Fn(&Context) -> Check>)> = vec![
        (1, "genus-zero sweep", Box::new(genus_zero_sweep)),
        (2, "elliptic family", Box::new(|_| elliptic_family())),
        (3, "minimal genus two", Box::new(|_| minimal_genus_two_chi())),
        (4, "closed forms vs table", Box::new(|_| closed_forms_match_table())),
        (5, "normal bundles", Box::new(|_| normal_bundles())),
        (6, "twist arithmetic", Box::new(twist_arithmetic)),
        (7, "top Chern class", Box::new(chern_duality)),
        (8, "structural suite", Box::new(structural_suite)),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in &criteria {
        let start = Instant::now();
        let outcome = check(&ctx);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id} ({name}): PASS [{secs:.1}s] {detail}"),
            Err(detail) => {
                println!("criterion {id} ({name}): FAIL [{secs:.1}s] {detail}");
                failed.push(*id);
            }
        }
    }
    if failed == KNOWN_FAILURES {
        println!("acceptance: failures match the known set {KNOWN_FAILURES:?}");
    } else {
        println!("acceptance: failures {failed:?} differ from the known set {KNOWN_FAILURES:?}");
        std::process::exit(1);
    }
}
