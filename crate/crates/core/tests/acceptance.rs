//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::{BTreeSet, VecDeque};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use common::{adversarial_texts, check_full_arrays, random_text, AuditCounts, Findings};
use dynsa::oracle::OracleSnapshot;
use dynsa::{DynamicSuffixArray, SaRange, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0xacce_97a0_2024;
const CHURN_TRIALS: usize = 500;
const CHURN_UPDATES: usize = 50;
const ALPHABETS: [u8; 4] = [1, 2, 4, 26];

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, criterion: u32, title: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {criterion:>2}: {title} -- {detail}");
        if !ok {
            self.failed += 1;
        }
    }

    fn findings(&mut self, criterion: u32, title: &str, findings: &Findings, detail: String) {
        let count = findings.count(criterion);
        self.line(criterion, title, count == 0, format!("{detail}; {count} violations"));
        for e in findings.examples(criterion) {
            println!("         e.g. {e}");
        }
    }
}

/// Runs `f` over `0..jobs` on all cores, collecting results in job order.
fn parallel<T: Send>(jobs: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let next = Mutex::new(0usize);
    let out: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.min(jobs.max(1)) {
            s.spawn(|| loop {
                let job = {
                    let mut g = next.lock().unwrap();
                    let j = *g;
                    *g += 1;
                    j
                };
                if job >= jobs {
                    break;
                }
                let r = f(job);
                out.lock().unwrap()[job] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(Option::unwrap).collect()
}

#[derive(Default)]
struct ChurnResult {
    findings: Findings,
    counts: AuditCounts,
    checkpoints: usize,
    updates: usize,
}

fn random_sym(rng: &mut ChaCha8Rng, sigma: u8) -> Symbol {
    Symbol::byte(b'a' + rng.gen_range(0..sigma))
}

/// Builds the index, then checks it initially and after each of `updates`
/// random substitutions over an alphabet of `sigma` letters.
fn churn(bytes: Vec<u8>, k: usize, sigma: u8, updates: usize, rng: &mut ChaCha8Rng, label: &str) -> ChurnResult {
    let mut res = ChurnResult::default();
    let mut index = DynamicSuffixArray::new(&bytes, k).expect("valid input");
    let mut text = bytes;
    let n = text.len();
    let oracle = OracleSnapshot::new(&text, k);
    res.counts += check_full_arrays(&index, &oracle, &mut res.findings, &format!("{label} initial"));
    res.checkpoints += 1;
    for u in 1..=updates {
        let pos = rng.gen_range(1..=n);
        let sym = random_sym(rng, sigma);
        text[pos - 1] = sym.as_byte().unwrap();
        match index.substitute(pos, sym) {
            Ok(stats) => {
                if stats.removed > k || stats.inserted > k {
                    res.findings.fail(7, || {
                        format!("{label}: update {u} removed {} / inserted {} words (k={k})", stats.removed, stats.inserted)
                    });
                }
            }
            Err(e) => res.findings.fail(7, || format!("{label}: update {u} failed: {e}")),
        }
        res.updates += 1;
        let oracle = OracleSnapshot::new(&text, k);
        res.counts += check_full_arrays(&index, &oracle, &mut res.findings, &format!("{label} update {u}"));
        res.checkpoints += 1;
    }
    res
}

fn churn_trials() -> ChurnResult {
    let results = parallel(CHURN_TRIALS, |trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let n = rng.gen_range(1..=512);
        let sigma = ALPHABETS[rng.gen_range(0..ALPHABETS.len())];
        let k = rng.gen_range(1..=n);
        let text = random_text(&mut rng, n, sigma);
        let label = format!("trial {trial} (n={n}, sigma={sigma}, k={k})");
        churn(text, k, sigma, CHURN_UPDATES, &mut rng, &label)
    });
    merge(results)
}

fn merge(results: Vec<ChurnResult>) -> ChurnResult {
    let mut total = ChurnResult::default();
    for r in results {
        total.findings.absorb(r.findings);
        total.counts += r.counts;
        total.checkpoints += r.checkpoints;
        total.updates += r.updates;
    }
    total
}

fn adversarial_k(n: usize) -> [usize; 3] {
    [2, n.isqrt() + usize::from(n.isqrt() * n.isqrt() < n), n]
}

fn adversarial_runs() -> ChurnResult {
    let mut jobs = Vec::new();
    for n in [64, 256, 1024] {
        for (name, text) in adversarial_texts(n) {
            for k in adversarial_k(n) {
                jobs.push((name, text.clone(), k));
            }
        }
    }
    let results = parallel(jobs.len(), |j| {
        let (name, text, k) = &jobs[j];
        let n = text.len();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(j as u64));
        let label = format!("{name} (n={n}, k={k})");
        churn(text.clone(), *k, 2, 3, &mut rng, &label)
    });
    merge(results)
}

fn derived_checks(findings: &mut Findings) -> usize {
    let mut cases = 0;
    let n = 64;
    for (name, text) in adversarial_texts(n) {
        for k in adversarial_k(n) {
            cases += 1;
            let label = format!("{name} (n={n}, k={k})");
            let index = DynamicSuffixArray::new(&text, k).unwrap();
            let oracle = OracleSnapshot::new(&text, k);
            check_derived(&index, &oracle, findings, &label);
        }
    }
    cases
}

fn check_derived(index: &DynamicSuffixArray, oracle: &OracleSnapshot, findings: &mut Findings, label: &str) {
    let n = index.len();
    let bwt: Vec<Option<u8>> = (1..=n).map(|r| index.bwt_at(r).unwrap().as_byte()).collect();
    if bwt != oracle.bwt() {
        findings.fail(9, || format!("{label}: BWT differs"));
    }
    let lcp: Vec<usize> = (2..=n).map(|r| index.lcp_array_at(r).unwrap()).collect();
    if lcp != oracle.lcp_array() {
        findings.fail(9, || format!("{label}: LCP array differs"));
    }
    for i in 1..=n {
        for j in i..=n {
            let got = index.st_locate(i, j).unwrap();
            let (lo, hi) = oracle.locate(i, j);
            if got != SaRange::new(lo, hi) {
                findings.fail(9, || format!("{label}: stLocate({i},{j}) = {got}, expected {lo} {hi}"));
            }
        }
    }
    let mut alphabet: BTreeSet<Symbol> = oracle.bytes().iter().map(|&b| Symbol::byte(b)).collect();
    alphabet.insert(Symbol::SENTINEL);
    let root = SaRange::new(1, n);
    let mut reached = BTreeSet::from([(1, n)]);
    let mut queue = VecDeque::from([root]);
    while let Some(node) = queue.pop_front() {
        for &c in &alphabet {
            let Some(child) = index.st_child(node, c).unwrap() else {
                continue;
            };
            match index.st_parent(child) {
                Ok(p) if p == node => {}
                other => findings.fail(9, || format!("{label}: stParent({child}) = {other:?}, expected {node}")),
            }
            if reached.insert((child.lo, child.hi)) {
                queue.push_back(child);
            }
        }
    }
    let expected = oracle.suffix_tree_nodes();
    if reached != expected {
        let missing: Vec<_> = expected.difference(&reached).take(5).collect();
        let extra: Vec<_> = reached.difference(&expected).take(5).collect();
        findings.fail(9, || format!("{label}: node sets differ; missing {missing:?}, extra {extra:?}"));
    }
}

fn tradeoff() -> Vec<(usize, f64)> {
    let n = 1 << 14;
    let queries = 400;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let text = random_text(&mut rng, n, 2);
    let ranks: Vec<usize> = (0..queries).map(|_| rng.gen_range(1..=n)).collect();
    [16, 128, 1024]
        .into_iter()
        .map(|k| {
            let index = DynamicSuffixArray::new(&text, k).unwrap();
            index.reset_counters();
            for &r in &ranks {
                index.suffix_array(r).unwrap();
            }
            (k, index.counters().lce_calls as f64 / queries as f64)
        })
        .collect()
}

fn lce_checks(findings: &mut Findings) -> (usize, u64) {
    let specs: [(usize, u8); 6] = [(256, 1), (256, 2), (200, 4), (131, 26), (64, 2), (17, 1)];
    let results = parallel(specs.len(), |t| {
        let (n, sigma) = specs[t];
        let mut local = Findings::default();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1000 + t as u64);
        let k = rng.gen_range(1..=n.isqrt() * 2);
        let mut text = random_text(&mut rng, n, sigma);
        let mut index = DynamicSuffixArray::new(&text, k).unwrap();
        let mut checkpoints = 0;
        for u in 0..=CHURN_UPDATES {
            if u > 0 {
                let pos = rng.gen_range(1..=n);
                let sym = random_sym(&mut rng, sigma.max(2));
                text[pos - 1] = sym.as_byte().unwrap();
                index.substitute(pos, sym).unwrap();
            }
            checkpoints += 1;
            let oracle = OracleSnapshot::new(&text, k);
            let lce = index.lce();
            for i in 1..=n + k {
                for j in 1..=n + k {
                    if lce.lcp(i, j).unwrap() != oracle.lcp(i, j).unwrap() {
                        local.fail(10, || format!("n={n} k={k} update {u}: lcp({i},{j}) differs"));
                    }
                    if i <= n && j <= n {
                        if lce.lcs(i, j).unwrap() != oracle.lcs(i, j).unwrap() {
                            local.fail(10, || format!("n={n} k={k} update {u}: lcs({i},{j}) differs"));
                        }
                        if lce.compare_suffixes(i, j).unwrap() != oracle.compare(i, j).unwrap() {
                            local.fail(10, || format!("n={n} k={k} update {u}: compare({i},{j}) differs"));
                        }
                    }
                }
            }
        }
        let disagreements = index.counters().fingerprint_disagreements;
        (local, checkpoints, disagreements)
    });
    let mut checkpoints = 0;
    let mut disagreements = 0;
    for (local, c, d) in results {
        findings.absorb(local);
        checkpoints += c;
        disagreements += d;
    }
    if disagreements > 0 {
        findings.fail(10, || format!("{disagreements} fingerprint disagreement events"));
    }
    (checkpoints, disagreements)
}

fn main() -> ExitCode {
    let mut report = Report { failed: 0 };
    let started = Instant::now();

    let t = Instant::now();
    let churn = churn_trials();
    let churn_secs = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let adv = adversarial_runs();
    let adv_secs = t.elapsed().as_secs_f64();

    let mut combined = Findings::default();
    combined.absorb(churn.findings);
    let churn_counts = churn.counts;
    let adv_findings = adv.findings;
    let adv_counts = adv.counts;

    report.findings(
        1,
        "oracle equivalence under churn",
        &combined,
        format!("{CHURN_TRIALS} trials, {} checkpoints, {churn_secs:.1}s", churn.checkpoints),
    );
    report.findings(2, "SA/iSA round trip", &combined, format!("{} checkpoints", churn.checkpoints));

    // Criterion 3 covers criteria 1-2 and cluster invariants on the
    // adversarial family.
    let c3_violations = adv_findings.count(1) + adv_findings.count(2) + adv_findings.count(3);
    let mut c3 = Findings::default();
    for c in [1, 2, 3] {
        for e in adv_findings.examples(c) {
            c3.fail(3, || e);
        }
    }
    let c3_ok = c3_violations == 0 && adv_counts.clusters_seen > 0;
    report.line(
        3,
        "adversarial periodicity",
        c3_ok,
        format!(
            "{} checkpoints, {} clusters audited, {adv_secs:.1}s; {c3_violations} violations",
            adv.checkpoints, adv_counts.clusters_seen
        ),
    );
    for e in c3.examples(3) {
        println!("         e.g. {e}");
    }

    // Criteria 4-7 aggregate over both runs.
    combined.absorb(adv_findings);
    let mut all = churn_counts;
    all += adv_counts;
    let nonvacuous = |ok: bool, what: &str, n: u64| -> (bool, String) {
        (ok && n > 0, format!("{n} {what} audited"))
    };
    for (criterion, title, what, n) in [
        (4, "cluster compression bound", "decompositions", all.decompositions),
        (5, "pivot quality", "pivots", all.pivots),
        (6, "cluster counting", "(query, cluster) pairs", all.cluster_counts),
    ] {
        let count = combined.count(criterion);
        let (ok, detail) = nonvacuous(count == 0, what, n);
        let extra = if criterion == 5 {
            format!(", {} rounds", all.rounds)
        } else {
            String::new()
        };
        report.line(criterion, title, ok, format!("{detail}{extra}; {count} violations"));
        for e in combined.examples(criterion) {
            println!("         e.g. {e}");
        }
    }
    report.findings(
        7,
        "update cost",
        &combined,
        format!("{} substitutions", churn.updates + adv.updates),
    );

    let costs = tradeoff();
    let avg: Vec<f64> = costs.iter().map(|c| c.1).collect();
    let monotone = avg.windows(2).all(|w| w[0] >= w[1]) && avg[0] > avg[2];
    let ratio_ok = avg[0] >= 8.0 * avg[2];
    let shown: Vec<String> = costs.iter().map(|(k, a)| format!("k={k}: {a:.3}")).collect();
    report.line(
        8,
        "trade-off scaling",
        monotone && ratio_ok,
        format!("avg LCE calls per SA query, n=16384 binary: {}", shown.join(", ")),
    );

    let mut derived = Findings::default();
    let cases = derived_checks(&mut derived);
    report.findings(9, "derived queries", &derived, format!("{cases} texts"));

    let mut lce = Findings::default();
    let (checkpoints, disagreements) = lce_checks(&mut lce);
    report.findings(
        10,
        "LCE correctness",
        &lce,
        format!("{checkpoints} checkpoints, {disagreements} fingerprint disagreements"),
    );

    println!(
        "{} of 10 criteria passed in {:.1}s",
        10 - report.failed,
        started.elapsed().as_secs_f64()
    );
    if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
