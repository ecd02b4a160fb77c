//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p amplify --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use amplify::adapter::{self, record_snapshot, AdapterError, AdapterSpec, DEFAULT_CONFIG};
use amplify::corpus::{self, MethodKind};
use amplify::diff::{diff_snapshots, DiffScope, DivergenceSource, Verdict};
use amplify::lab::{self, run_suite_against, ExperimentPlan, ExperimentResult, Mode, RunOutcome};
use amplify::mutants::{self, VariantId};
use amplify::sequence::{self, generate_master_suite, record_expected_returns, GeneratorConfig, Suite, TestSequence};
use amplify::snapshot::{self, encode_value, Snapshot, SnapshotMeta, StateRecord};
use amplify::Value;
use rand::Rng;

/// Seed of the two random toy sequences. Chosen with the oracle alone so that
/// the sequences reverse a state of size >= 3 and never call `sort_asc`.
const TOY_SEED: u64 = 10;
const TOY_RUNTIME: Duration = Duration::from_secs(1);
const DESK_RUNTIME: Duration = Duration::from_secs(300);
const MIN_MUTANTS: usize = 33;
const SELF_DIFFS: usize = 1000;
const PERTURBATIONS: usize = 10_000;
const ROUND_TRIP_VALUES: usize = 100_000;
const PURITY_STATES: usize = 1000;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn adapters() -> Vec<AdapterSpec> {
    adapter::load_adapters(DEFAULT_CONFIG).expect("shipped config parses")
}

fn baseline_pair(spec: &AdapterSpec, suite: &Suite) -> Result<(Suite, Snapshot), String> {
    let suite = record_expected_returns(suite, &VariantId::Baseline).map_err(e2s)?;
    let snap = record_snapshot(spec, &suite, &VariantId::Baseline).map_err(e2s)?;
    Ok((suite, snap))
}

// 1 ------------------------------------------------------------------------

fn toy_example() -> Check {
    let started = Instant::now();
    let spec = adapter::default_adapter(common::AC).map_err(e2s)?;
    let suite = common::toy_suite(TOY_SEED);
    ensure(suite.sequences.len() == 4, || "toy suite must hold 2 manual + 2 random tests".into())?;
    ensure(
        suite.sequences[2..].iter().all(|s| s.calls.len() == 4),
        || "random toy sequences must have four calls".into(),
    )?;
    let (suite, expected) = baseline_pair(&spec, &suite)?;
    let has_sort = suite.sequences.iter().any(|s| s.calls.iter().any(|(m, _)| m == "sort_asc"));

    let mut summary = Vec::new();
    for (tag, switch) in [("M1", 1u8), ("M2", 2), ("M3", 3)] {
        let variant = VariantId::mutant(&format!("ArrayCalculator/{tag}"));
        let (oracle_cells, return_diff) = common::calc_divergences(&suite, switch);
        let actual = record_snapshot(&spec, &suite, &variant).map_err(e2s)?;
        let report = diff_snapshots(&expected, &actual, DiffScope::All).map_err(e2s)?;
        let cells: BTreeSet<common::Cell> = report
            .divergences
            .iter()
            .map(|d| (d.test_id.clone(), d.step, d.source.to_string()))
            .collect();
        ensure(cells == oracle_cells, || {
            format!("{tag}: divergence cells differ from the replay oracle: {cells:?} vs {oracle_cells:?}")
        })?;

        let base = run_suite_against(&variant, &suite, Mode::Baseline, &expected, &spec).map_err(e2s)?;
        let amp = run_suite_against(&variant, &suite, Mode::Amplified, &expected, &spec).map_err(e2s)?;
        let oracle_base_kill = return_diff.values().any(|&d| d);
        let oracle_amp_kill = !oracle_cells.is_empty();
        ensure(base.killed == oracle_base_kill && amp.killed == oracle_amp_kill, || {
            format!("{tag}: kills (baseline {}, amplified {}) disagree with the oracle", base.killed, amp.killed)
        })?;
        match tag {
            "M1" | "M2" => ensure(!base.killed && amp.killed, || {
                format!("{tag}: expected baseline to miss and amplified to kill")
            })?,
            _ if !has_sort => ensure(!base.killed && !amp.killed, || "M3 killed without any sort_asc".into())?,
            _ => {}
        }
        summary.push(format!("{tag} {}/{}", u8::from(base.killed), u8::from(amp.killed)));
    }

    // A sequence with sort_asc followed by an order-sensitive observer.
    let crafted = Suite::single(
        common::AC,
        "crafted",
        Value::int_list([3, 1, 2]),
        vec![("sort_asc".into(), vec![]), ("get_first_element".into(), vec![])],
    );
    let (crafted, crafted_expected) = baseline_pair(&spec, &crafted)?;
    let m3 = VariantId::mutant("ArrayCalculator/M3");
    let amp = run_suite_against(&m3, &crafted, Mode::Amplified, &crafted_expected, &spec).map_err(e2s)?;
    ensure(amp.killed, || "crafted sort_asc sequence does not kill M3".into())?;

    let elapsed = started.elapsed();
    ensure(elapsed < TOY_RUNTIME, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "seed {TOY_SEED}, kills baseline/amplified: {}; crafted M3 killed; {:.0?}",
        summary.join(", "),
        elapsed
    ))
}

// 2 ------------------------------------------------------------------------

fn find<'a>(r: &'a ExperimentResult, o: &RunOutcome, mode: Mode, limit: usize) -> &'a RunOutcome {
    r.outcomes
        .iter()
        .find(|x| x.mutant == o.mutant && x.seed == o.seed && x.limit == limit && x.mode == mode)
        .expect("full cross-product")
}

fn additivity(r: &ExperimentResult, elapsed: Duration) -> Check {
    let n_mutants = mutants::list_mutants(None).map_err(e2s)?.len();
    ensure(n_mutants >= MIN_MUTANTS, || format!("only {n_mutants} mutants"))?;
    let expected_cells = n_mutants * lab::DESK_SEEDS.count() * lab::DESK_LIMITS.len() * 2;
    ensure(r.outcomes.len() == expected_cells, || {
        format!("{} outcomes, expected {expected_cells}", r.outcomes.len())
    })?;
    for b in r.outcomes.iter().filter(|o| o.mode == Mode::Baseline) {
        let a = find(r, b, Mode::Amplified, b.limit);
        ensure(!b.killed || a.killed, || format!("{} s{} l{}: baseline kills, amplified does not", b.mutant, b.seed, b.limit))?;
        if let (Some(x), Some(y)) = (a.killing_test_index, b.killing_test_index) {
            ensure(x <= y, || format!("{} s{} l{}: amplified kills later", b.mutant, b.seed, b.limit))?;
        }
    }
    for &seed in &lab::DESK_SEEDS.collect::<Vec<_>>() {
        for &limit in &lab::DESK_LIMITS {
            let b = r.seed_aggregate(seed, limit, Mode::Baseline).ok_or("missing aggregate")?;
            let a = r.seed_aggregate(seed, limit, Mode::Amplified).ok_or("missing aggregate")?;
            ensure(a.strength_pct >= b.strength_pct, || {
                format!("s{seed} l{limit}: amplified strength {:.2} < baseline {:.2}", a.strength_pct, b.strength_pct)
            })?;
        }
    }
    for &limit in &lab::DESK_LIMITS {
        let b = r.limit_aggregate(limit, Mode::Baseline).ok_or("missing aggregate")?;
        let a = r.limit_aggregate(limit, Mode::Amplified).ok_or("missing aggregate")?;
        ensure(a.executed_tests <= b.executed_tests, || {
            format!("l{limit}: amplified executed {} > baseline {}", a.executed_tests, b.executed_tests)
        })?;
    }
    ensure(elapsed < DESK_RUNTIME, || format!("took {elapsed:?}"))?;
    Ok(format!("{n_mutants} mutants, {} cells, {:.1?}", r.outcomes.len(), elapsed))
}

// 3 ------------------------------------------------------------------------

/// Strength per (limit, mode) recomputed from raw outcomes.
fn independent_curve(outcomes: &[RunOutcome]) -> BTreeMap<(usize, String), f64> {
    let mut per_seed: BTreeMap<(usize, String, u64), (u32, u32)> = BTreeMap::new();
    for o in outcomes {
        let e = per_seed.entry((o.limit, o.mode.to_string(), o.seed)).or_default();
        e.0 += u32::from(o.killed);
        e.1 += u32::from(o.covered);
    }
    let mut sums: BTreeMap<(usize, String), (f64, u32)> = BTreeMap::new();
    for ((limit, mode, _), (k, c)) in per_seed {
        let s = if c == 0 { 0.0 } else { 100.0 * f64::from(k) / f64::from(c) };
        let e = sums.entry((limit, mode)).or_default();
        e.0 += s;
        e.1 += 1;
    }
    sums.into_iter().map(|(key, (s, n))| (key, s / f64::from(n))).collect()
}

fn directional(r: &ExperimentResult) -> Check {
    let gap = |limit: usize| -> Result<f64, String> {
        let b = r.limit_aggregate(limit, Mode::Baseline).ok_or("missing aggregate")?;
        let a = r.limit_aggregate(limit, Mode::Amplified).ok_or("missing aggregate")?;
        Ok(a.strength_pct - b.strength_pct)
    };
    let (lo, hi) = (lab::DESK_LIMITS[0], *lab::DESK_LIMITS.last().unwrap());
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    ensure(g_lo > 0.0, || format!("gap at l{lo} is {g_lo:.2}"))?;
    ensure(g_hi <= g_lo, || format!("gap at l{hi} ({g_hi:.2}) exceeds gap at l{lo} ({g_lo:.2})"))?;

    let dir = tempfile::tempdir().map_err(e2s)?;
    lab::emit_reports(r, dir.path()).map_err(e2s)?;
    let curve = std::fs::read_to_string(dir.path().join("strength_curve.csv")).map_err(e2s)?;
    let reference = independent_curve(&r.outcomes);
    let mut rows = 0;
    for line in curve.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let key = (f[0].parse::<usize>().map_err(e2s)?, f[1].to_owned());
        let value: f64 = f[2].parse().map_err(e2s)?;
        let want = reference.get(&key).ok_or_else(|| format!("unexpected curve row {line}"))?;
        ensure((value - want).abs() < 1e-4, || format!("curve row {line} vs recomputed {want:.4}"))?;
        rows += 1;
    }
    ensure(rows == reference.len(), || "curve rows missing".into())?;
    Ok(format!(
        "gap l{lo} {:+.1} pts, l{hi} {:+.1} pts; strength_curve.csv matches recomputation",
        g_lo, g_hi
    ))
}

// 4 ------------------------------------------------------------------------

fn prefix_containment(r: &ExperimentResult) -> Check {
    let mut pairs = 0;
    for class in corpus::list_classes() {
        for seed in lab::DESK_SEEDS {
            for (master_size, limits) in [
                (sequence::DEFAULT_MASTER_SIZE, &sequence::DEFAULT_LIMITS[..]),
                (lab::master_size(class.class_name, &lab::DESK_LIMITS), &lab::DESK_LIMITS[..]),
            ] {
                let master = generate_master_suite(&class, seed, master_size).map_err(e2s)?;
                let splits = sequence::split_prefix_suites(&master, limits).map_err(e2s)?;
                for (i, l1) in limits.iter().enumerate() {
                    ensure(splits[l1].sequences[..] == master.sequences[..*l1], || {
                        format!("{} s{seed}: suite({l1}) is not a master prefix", class.class_name)
                    })?;
                    for l2 in &limits[i + 1..] {
                        ensure(splits[l1].sequences[..] == splits[l2].sequences[..*l1], || {
                            format!("{} s{seed}: suite({l1}) not a prefix of suite({l2})", class.class_name)
                        })?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    let mut monotone = 0;
    for o in &r.outcomes {
        for &l2 in lab::DESK_LIMITS.iter().filter(|&&l| l > o.limit) {
            let bigger = find(r, o, o.mode, l2);
            ensure(!o.killed || (bigger.killed && bigger.killing_test_index == o.killing_test_index), || {
                format!("{} s{} {}: killed at l{} but not identically at l{l2}", o.mutant, o.seed, o.mode, o.limit)
            })?;
            monotone += 1;
        }
    }
    Ok(format!("{pairs} suite pairs are exact prefixes; {monotone} kill-set pairs monotone"))
}

// 5 ------------------------------------------------------------------------

fn random_snapshot(rng: &mut impl Rng, specs: &[AdapterSpec]) -> Result<Snapshot, String> {
    let spec = &specs[rng.gen_range(0..specs.len())];
    let class = spec.class;
    let mut variants = vec![VariantId::Baseline];
    variants.extend(mutants::list_mutants(Some(class.class_name)).map_err(e2s)?.iter().map(|m| m.variant()));
    let variant = &variants[rng.gen_range(0..variants.len())];
    let cfg = GeneratorConfig { calls: 0..=6 };
    let suite = sequence::generate_master_suite_with(class, rng.gen(), rng.gen_range(1..=6), &cfg).map_err(e2s)?;
    record_snapshot(spec, &suite, variant).map_err(e2s)
}

fn fresh_value(rng: &mut impl Rng, old: &Value) -> Value {
    loop {
        let v = common::random_value(rng, 2);
        if encode_value(&v) != encode_value(old) {
            return v;
        }
    }
}

fn oracle_soundness() -> Check {
    let specs = adapters();
    let mut rng = common::rng(5);
    let mut snaps = Vec::with_capacity(SELF_DIFFS);
    for _ in 0..SELF_DIFFS {
        let s = random_snapshot(&mut rng, &specs)?;
        let r = diff_snapshots(&s, &s, DiffScope::All).map_err(e2s)?;
        ensure(r.verdict == Verdict::Match && r.divergences.is_empty(), || "self-diff reported a mismatch".into())?;
        let reread = Snapshot::from_csv(&s.to_csv().map_err(e2s)?).map_err(e2s)?;
        ensure(diff_snapshots(&s, &reread, DiffScope::All).map_err(e2s)?.is_match(), || "re-read snapshot differs".into())?;
        snaps.push(s);
    }

    for i in 0..PERTURBATIONS {
        let original = &snaps[rng.gen_range(0..snaps.len())];
        let mut copy = original.clone();
        let k = rng.gen_range(0..copy.records.len());
        let n_obs = copy.observers.len();
        let column = rng.gen_range(0..3 + n_obs);
        let rec = &mut copy.records[k];
        let (source, before, after) = match column {
            0 => {
                let v = fresh_value(&mut rng, &rec.input);
                let old = std::mem::replace(&mut rec.input, v.clone());
                (DivergenceSource::Input, encode_value(&old), encode_value(&v))
            }
            1 => {
                let new = format!("{}{}", rec.call, ["x", "()", " ", "<"][rng.gen_range(0..4)]);
                let old = std::mem::replace(&mut rec.call, new.clone());
                (DivergenceSource::Call, old, new)
            }
            2 => {
                let v = fresh_value(&mut rng, &rec.returned);
                let old = std::mem::replace(&mut rec.returned, v.clone());
                (DivergenceSource::ReturnValue, encode_value(&old), encode_value(&v))
            }
            c => {
                let j = c - 3;
                let v = fresh_value(&mut rng, &rec.observations[j]);
                let old = std::mem::replace(&mut rec.observations[j], v.clone());
                (DivergenceSource::Observer(copy.observers[j].clone()), encode_value(&old), encode_value(&v))
            }
        };
        let (test_id, step) = (copy.records[k].test_id.clone(), copy.records[k].step);
        // Every tenth perturbation goes through the file format as well.
        let actual = if i % 10 == 0 {
            Snapshot::from_csv(&copy.to_csv().map_err(e2s)?).map_err(e2s)?
        } else {
            copy
        };
        let report = diff_snapshots(original, &actual, DiffScope::All).map_err(e2s)?;
        ensure(report.divergences.len() == 1, || {
            format!("perturbation {i}: {} divergences", report.divergences.len())
        })?;
        let d = &report.divergences[0];
        ensure(
            d.test_id == test_id && d.step == step && d.source == source && d.expected == before && d.actual == after,
            || format!("perturbation {i}: reported {d:?}, expected {test_id} {step} {source}"),
        )?;
        let back = diff_snapshots(&actual, original, DiffScope::All).map_err(e2s)?;
        ensure(back.verdict == report.verdict, || "verdict is not symmetric".into())?;
    }
    Ok(format!("{SELF_DIFFS} self-diffs match; {PERTURBATIONS} single-cell perturbations each found exactly once"))
}

// 6 ------------------------------------------------------------------------

fn round_trip_values(dir: &Path) -> Result<usize, String> {
    let mut rng = common::rng(6);
    let mut snapshot_values = 0;
    let mut file_no = 0;
    while snapshot_values < ROUND_TRIP_VALUES {
        let observers: Vec<String> = (0..4).map(|i| format!("o{i}")).collect();
        let records = (0..250)
            .map(|step| StateRecord {
                test_id: "t".into(),
                input: common::random_value(&mut rng, 3),
                step,
                call: format!("m{step}()"),
                returned: common::random_value(&mut rng, 3),
                observations: (0..4).map(|_| common::random_value(&mut rng, 3)).collect(),
            })
            .collect::<Vec<_>>();
        snapshot_values += records.len() * 6;
        let meta = SnapshotMeta {
            class_name: "Stack".into(),
            variant: VariantId::Baseline,
            seed: file_no,
            limit: 1,
            config_digest: "d".into(),
        };
        let snap = Snapshot::new(meta, observers, records);
        let path = dir.join(format!("values_{file_no}.csv"));
        snapshot::write_snapshot(&snap, &path).map_err(e2s)?;
        let back = snapshot::read_snapshot(&path).map_err(e2s)?;
        ensure(back == snap, || format!("snapshot file {file_no} did not round-trip"))?;
        file_no += 1;
    }

    let class = corpus::class("ArrayList").map_err(e2s)?;
    let mut suite_values = 0;
    let mut seed = 0;
    while suite_values < ROUND_TRIP_VALUES {
        let mut suite = generate_master_suite(class, seed, 200).map_err(e2s)?;
        for seq in &mut suite.sequences {
            let rets: Vec<Value> = seq.calls.iter().map(|_| common::random_value(&mut rng, 3)).collect();
            suite_values += rets.len() + 1 + seq.calls.iter().map(|(_, a)| a.len()).sum::<usize>();
            seq.expected_returns = Some(rets);
        }
        let path = dir.join(format!("values_{seed}.suite"));
        sequence::write_suite(&suite, &path).map_err(e2s)?;
        let back = sequence::read_suite(&path).map_err(e2s)?;
        ensure(back == suite, || format!("suite file {seed} did not round-trip"))?;
        seed += 1;
    }
    Ok(snapshot_values.min(suite_values))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_amplify"))
        .args(args)
        .env_remove("AMPLIFIED_ORACLE_COMPARE")
        .output()
        .map_err(e2s)?;
    ensure(out.status.success(), || {
        format!("amplify {args:?} failed: {}", String::from_utf8_lossy(&out.stderr))
    })
}

/// File contents with timing removed: the `execution_time_s` row of
/// `table1.csv` and the trailing `wall_time_s` column of outcome files.
fn without_timing(path: &Path) -> Result<String, String> {
    let text = std::fs::read_to_string(path).map_err(e2s)?;
    let name = path.file_name().unwrap().to_string_lossy();
    Ok(match name.as_ref() {
        "table1.csv" => text.lines().filter(|l| !l.starts_with("execution_time_s")).collect::<Vec<_>>().join("\n"),
        "outcomes.csv" => text
            .lines()
            .map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head))
            .collect::<Vec<_>>()
            .join("\n"),
        _ => text,
    })
}

fn files(root: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_owned()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).into_iter().flatten().flatten() {
            let p = e.path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(root).unwrap().to_owned());
            }
        }
    }
    out.sort();
    out
}

fn same_tree(a: &Path, b: &Path) -> Result<usize, String> {
    let (fa, fb) = (files(a), files(b));
    ensure(!fa.is_empty() && fa == fb, || format!("file sets differ under {}", a.display()))?;
    for f in &fa {
        ensure(without_timing(&a.join(f))? == without_timing(&b.join(f))?, || {
            format!("{} differs between runs", f.display())
        })?;
    }
    Ok(fa.len())
}

fn round_trip_and_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(e2s)?;
    let values = round_trip_values(dir.path())?;

    let mut compared = 0;
    for run in ["a", "b"] {
        let root = dir.path().join(run);
        let tests = root.join("tests");
        run_cli(&["gen-tests", "--class", "Stack,ArrayCalculator", "--seed", "3", "--master", "64", "--limits", "2,8", "--out", tests.to_str().unwrap()])?;
        let suite = tests.join("ArrayCalculator_s3_l8.suite");
        let snap = root.join("snap").join("ac.csv");
        run_cli(&["record", "--suite", suite.to_str().unwrap(), "--out", snap.to_str().unwrap()])?;
        run_cli(&["experiment", "--seeds", "1,2", "--limits", "2,8", "--report-dir", root.join("reports").to_str().unwrap()])?;
    }
    for sub in ["tests", "snap", "reports"] {
        compared += same_tree(&dir.path().join("a").join(sub), &dir.path().join("b").join(sub))?;
    }
    Ok(format!(">= {values} values round-trip through each file format; {compared} CLI artifacts identical across runs"))
}

// 7 ------------------------------------------------------------------------

fn observer_purity() -> Check {
    let mut total = 0;
    for spec in adapters() {
        let class = spec.class;
        let mut variants = vec![VariantId::Baseline];
        variants.extend(mutants::list_mutants(Some(class.class_name)).map_err(e2s)?.iter().map(|m| m.variant()));
        let suite =
            sequence::generate_master_suite_with(class, 77, PURITY_STATES, &GeneratorConfig { calls: 0..=10 }).map_err(e2s)?;
        for (i, seq) in suite.sequences.iter().enumerate() {
            let variant = &variants[i % variants.len()];
            let mut h = corpus::instantiate(class.class_name, variant, &seq.ctor_input).map_err(e2s)?;
            for (m, args) in &seq.calls {
                corpus::invoke(&mut h, m, args).map_err(e2s)?;
            }
            let read = |h: &mut corpus::ObjectHandle| -> Vec<Value> {
                spec.observers.iter().map(|o| corpus::invoke(h, o.name, &[]).unwrap()).collect()
            };
            let before = read(&mut h);
            for o in &spec.observers {
                let a = corpus::invoke(&mut h, o.name, &[]).map_err(e2s)?;
                let b = corpus::invoke(&mut h, o.name, &[]).map_err(e2s)?;
                ensure(a == b && read(&mut h) == before, || {
                    format!("{} {variant}: observer {} altered state", class.class_name, o.name)
                })?;
            }
            total += 1;
        }
    }

    let mut rejected = 0;
    for class in corpus::list_classes() {
        for m in class.methods.iter().filter(|m| m.kind != MethodKind::Observer) {
            let row = format!("{},,{}", class.class_name, m.name);
            match adapter::parse_adapter_config(&row) {
                Err(AdapterError::NotAnObserver { method, kind, .. }) if method == m.name && kind == m.kind => {}
                other => return Err(format!("{} offered as observer: {other:?}", m.name)),
            }
            if m.kind == MethodKind::Hybrid {
                rejected += 1;
            }
        }
    }
    Ok(format!("{total} random states over 8 classes; {rejected} hybrid methods rejected as observers"))
}

// 8 ------------------------------------------------------------------------

fn non_equivalence() -> Check {
    let all = mutants::list_mutants(None).map_err(e2s)?;
    let mut killed = 0;
    for spec in adapters() {
        let class_mutants: Vec<_> = all.iter().filter(|m| m.target_class == spec.class.class_name).collect();
        let sequences = class_mutants
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let w = mutants::witness(m.id).ok_or_else(|| format!("{} has no witness", m.id))?;
                Ok(TestSequence {
                    test_id: format!("witness_{i:02}"),
                    class_name: spec.class.class_name.to_owned(),
                    ctor_input: w.input,
                    calls: w.calls,
                    expected_returns: None,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        for (i, m) in class_mutants.iter().enumerate() {
            let own = Suite::from_sequences(spec.class.class_name, 0, vec![sequences[i].clone()]);
            let (own, own_expected) = baseline_pair(&spec, &own)?;
            let o = run_suite_against(&m.variant(), &own, Mode::Amplified, &own_expected, &spec).map_err(e2s)?;
            ensure(o.killed, || format!("{} survives its own witness", m.id))?;
        }
        let suite = Suite::from_sequences(spec.class.class_name, 0, sequences);
        let (suite, expected) = baseline_pair(&spec, &suite)?;
        for m in &class_mutants {
            let o = run_suite_against(&m.variant(), &suite, Mode::Amplified, &expected, &spec).map_err(e2s)?;
            ensure(o.killed, || format!("{} survives the witness suite", m.id))?;
            killed += 1;
        }
    }
    ensure(killed == all.len(), || format!("{killed}/{} killed", all.len()))?;
    Ok(format!("witness suite kills {killed}/{} mutants (100%)", all.len()))
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |n: u32, name: &str, result: Check| {
        match result {
            Ok(detail) => println!("PASS  [{n}] {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  [{n}] {name}: {why}");
            }
        }
    };

    report(1, "toy example reproduction", toy_example());

    let started = Instant::now();
    let experiment = lab::run_experiment(&ExperimentPlan::desk(adapters()));
    let elapsed = started.elapsed();
    match &experiment {
        Ok(r) => {
            report(2, "structural additivity", additivity(r, elapsed));
            report(3, "directional strength trend", directional(r));
            report(4, "prefix containment", prefix_containment(r));
        }
        Err(e) => {
            for (n, name) in [(2, "structural additivity"), (3, "directional strength trend"), (4, "prefix containment")] {
                report(n, name, Err(format!("experiment failed: {e}")));
            }
        }
    }

    report(5, "oracle soundness and completeness", oracle_soundness());
    report(6, "round-trip and determinism", round_trip_and_determinism());
    report(7, "observer purity", observer_purity());
    report(8, "mutant non-equivalence", non_equivalence());

    if failures == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
