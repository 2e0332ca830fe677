//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grkn::cell_locator::{anchor_sets, locate, mprime_via_paths, Anchors};
use grkn::combinatorics::{enumerate_le_diagrams, fixtures, shape_from_base, BoxCoord, LeDiagram, Subset};
use grkn::gamma_graph::{face_poset, mobius, GammaGraph, MobiusMethod};
use grkn::inversion::{coords_mobius, corners, face_boundaries, laurent_expand_with, lower_boundary, nest, CellInversion};
use grkn::matrix_io::plucker_from_matrix;
use grkn::measurement::{matroid_of, measure, measure_det, measurement_matrix, GammaNetwork};
use grkn::rational::{int, pow_signed, Rational};

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(600);
const SWEEP_MAX_N: usize = 8;
const TABLEAUX_PER_DIAGRAM: usize = 5;
const ENTRY_MAX: i64 = 100;
const NEST_MAX_N: usize = 7;
const COUNT_MAX_N: usize = 6;
const LAURENT_MAX_N: usize = 6;
const LAURENT_ASSIGNMENTS: usize = 3;
const PIPELINE_TABLEAUX: usize = 100;
const PIPELINE_MAX_N: usize = 7;

type Outcome = Result<String, String>;

fn s(text: &str) -> Subset {
    text.parse().unwrap()
}

fn bc(r: usize, c: usize) -> BoxCoord {
    BoxCoord::new(r, c)
}

fn diagrams_up_to(max_n: usize) -> impl Iterator<Item = LeDiagram> {
    (1..=max_n).flat_map(move |n| (0..=n).flat_map(move |k| enumerate_le_diagrams(k, n, max_n).unwrap()))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn golden_values() -> Outcome {
    let start = Instant::now();
    let shape = shape_from_base(&s("1,2,3,5,8"), 5, 12).map_err(|e| e.to_string())?;
    check(shape.rows() == [7, 7, 7, 6, 4], || format!("shape {shape}"))?;
    let m = matroid_of(&fixtures::gr5_12_example()).map_err(|e| e.to_string())?;
    let a = anchor_sets(&m, 12, bc(2, 6)).map_err(|e| e.to_string())?;
    check(a.m_prime == s("1,2,7,9,10"), || format!("M' = {}", a.m_prime))?;
    check(a.m == s("1,7,9,10,11"), || format!("M = {}", a.m))?;
    check(a.window == s("1,2,11,12"), || format!("window = {}", a.window))?;
    check(!m.contains(&s("1,7,9,10,11")), || "{1,7,9,10,11} is a base".into())?;
    within(GOLDEN_LIMIT, start)?;
    Ok(format!("{:.2?}", start.elapsed()))
}

fn boundary_corners() -> Outcome {
    let start = Instant::now();
    let d = fixtures::gr5_12_example();
    let g = GammaGraph::new(&d).map_err(|e| e.to_string())?;
    let cases = [
        (bc(3, 6), vec![bc(3, 4), bc(4, 5), bc(5, 6)], vec![bc(4, 4), bc(5, 5)]),
        (bc(1, 7), vec![bc(2, 4), bc(3, 6), bc(5, 7)], vec![bc(3, 4), bc(5, 6)]),
    ];
    for (face, oc, ic) in cases {
        let (o, i, _) = corners(&lower_boundary(&g, face), &d).map_err(|e| e.to_string())?;
        check(o == oc && i == ic, || format!("face {face}: outer {o:?}, inner {i:?}"))?;
    }
    within(GOLDEN_LIMIT, start)?;
    Ok(format!("{:.2?}", start.elapsed()))
}

struct SweepReport {
    roundtrip: Outcome,
    oracles: Outcome,
}

fn sweep() -> SweepReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut diagrams, mut tableaux, mut boxes) = (0usize, 0usize, 0usize);
    let mut roundtrip_failures = Vec::new();
    let mut oracle_failures = Vec::new();
    for d in diagrams_up_to(SWEEP_MAX_N) {
        diagrams += 1;
        let g = GammaGraph::new(&d).unwrap();
        let poset = face_poset(&g);
        if mobius(&g, &poset, MobiusMethod::ClosedForm) != mobius(&g, &poset, MobiusMethod::Recursive) {
            oracle_failures.push(format!("Möbius forms differ on {:?}", d.plus_boxes()));
        }
        let m = matroid_of(&d).unwrap();
        let anchors = Anchors::new(&m, d.n()).unwrap();
        for b in d.shape().boxes() {
            boxes += 1;
            let anchor = anchors.anchor(b).unwrap();
            if m.contains(&anchor.m) != d.is_plus(b) {
                oracle_failures.push(format!("M at {b} of {:?} disagrees with the filling", d.plus_boxes()));
            }
            let lexmax = anchor.m_prime;
            let via_paths = mprime_via_paths(&g, b);
            if lexmax != via_paths {
                oracle_failures.push(format!("M' at {b} of {:?}: {lexmax} vs {via_paths}", d.plus_boxes()));
            }
        }
        let cell = CellInversion::new(&d).unwrap();
        for _ in 0..TABLEAUX_PER_DIAGRAM {
            tableaux += 1;
            let t = d.random_tableau(&mut rng, ENTRY_MAX);
            let p = measure(&t).unwrap();
            if !p.support().eq(m.iter()) {
                oracle_failures.push(format!("support differs from the matroid on {:?}", d.plus_boxes()));
            }
            if measure_det(&t).unwrap() != p {
                oracle_failures.push(format!("determinants differ on {:?}", d.plus_boxes()));
            }
            let located = locate(&p);
            let ok = located.as_ref() == Ok(&d)
                && coords_mobius(&p, &d).as_ref() == Ok(&t)
                && cell.coords_minimal(&p).as_ref() == Ok(&t);
            if !ok {
                roundtrip_failures.push(format!("{:?}", t.entries()));
            }
        }
    }
    let elapsed = start.elapsed();
    let summary = format!("{diagrams} diagrams, {tableaux} tableaux, {boxes} boxes, {elapsed:.1?}");
    let roundtrip = if !roundtrip_failures.is_empty() {
        Err(format!("{} failures, first {}", roundtrip_failures.len(), roundtrip_failures[0]))
    } else if elapsed >= SWEEP_LIMIT {
        Err(format!("{summary}: over the {SWEEP_LIMIT:?} budget"))
    } else {
        Ok(summary.clone())
    };
    let oracles = if oracle_failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{} discrepancies, first {}", oracle_failures.len(), oracle_failures[0]))
    };
    SweepReport { roundtrip, oracles }
}

fn nest_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut checked = 0usize;
    for d in diagrams_up_to(NEST_MAX_N) {
        let cell = CellInversion::new(&d).unwrap();
        for _ in 0..2 {
            let t = d.random_tableau(&mut rng, ENTRY_MAX);
            let p = measure(&t).unwrap();
            let network = GammaNetwork::new(&t).unwrap();
            let g = network.graph();
            let value = |b: &BoxCoord| p.get(&cell.base()[g.plus_index(*b).unwrap()]);
            for f in g.faces() {
                let fb = face_boundaries(g, f);
                for w in [&fb.upper, &fb.lower, &fb.upper_prime, &fb.lower_prime] {
                    let (_, _, eps) = corners(w, &d).map_err(|e| e.to_string())?;
                    let rhs = eps.iter().fold(int(1), |acc, (b, &e)| acc * pow_signed(&value(b), e));
                    let lhs = network.family_weight(&nest(g, w));
                    checked += 1;
                    check(lhs == rhs, || format!("face {} of {:?}, W = {:?}", f.corner, d.plus_boxes(), w.outer()))?;
                }
            }
        }
    }
    Ok(format!("{checked} generalized paths, {:.1?}", start.elapsed()))
}

fn cell_counts() -> Outcome {
    for n in 1..=COUNT_MAX_N {
        let diagrams: Vec<LeDiagram> = enumerate_le_diagrams(1, n, COUNT_MAX_N).unwrap().collect();
        check(diagrams.len() == (1 << n) - 1, || format!("Gr(1,{n}): {} diagrams", diagrams.len()))?;
        for dim in 0..n {
            let count = diagrams.iter().filter(|d| d.dimension() == dim).count();
            // a row of length l has C(l, dim) fillings; summing over l < n gives C(n, dim + 1)
            let expected = binomial(n, dim + 1);
            check(count == expected, || format!("Gr(1,{n}) dimension {dim}: {count} cells, expected {expected}"))?;
        }
        for d in &diagrams {
            check(d.dimension() == d.plus_boxes().len() && d.dimension() < n, || format!("dimension of {:?}", d.plus_boxes()))?;
        }
    }
    Ok(format!("n = 1..={COUNT_MAX_N}"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn laurent_positivity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut expansions = 0usize;
    for d in diagrams_up_to(LAURENT_MAX_N) {
        let cell = CellInversion::new(&d).unwrap();
        let points: Vec<_> = (0..LAURENT_ASSIGNMENTS).map(|_| measure(&d.random_tableau(&mut rng, ENTRY_MAX)).unwrap()).collect();
        for j in matroid_of(&d).unwrap() {
            let l = laurent_expand_with(&cell, &j).map_err(|e| e.to_string())?;
            expansions += 1;
            check(!l.terms.is_empty() && l.terms.values().all(|&c| c > 0), || format!("coefficients of P_{{{j}}}"))?;
            for p in &points {
                let values: Vec<Rational> = l.base.iter().map(|b| p.get(b)).collect();
                check(l.evaluate(&values) == p.get(&j), || format!("P_{{{j}}} on {:?}", d.plus_boxes()))?;
            }
        }
    }
    Ok(format!("{expansions} expansions, {:.1?}", start.elapsed()))
}

fn matrix_pipeline() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let pool: Vec<LeDiagram> = diagrams_up_to(PIPELINE_MAX_N).collect();
    for _ in 0..PIPELINE_TABLEAUX {
        let d = &pool[rng.gen_range(0..pool.len())];
        let t = d.random_tableau(&mut rng, ENTRY_MAX);
        let expected = measure(&t).unwrap();
        let matrix = measurement_matrix(&t).unwrap();
        let p = plucker_from_matrix(&matrix).map_err(|e| e.to_string())?;
        let cell = locate(&p).map_err(|e| e.to_string())?;
        let recovered = CellInversion::new(&cell).unwrap().coords_minimal(&p).map_err(|e| e.to_string())?;
        check(measure(&recovered).unwrap() == expected, || format!("pipeline on {:?}", d.plus_boxes()))?;
    }
    let bin = env!("CARGO_BIN_EXE_grkn");
    for doc in [
        r#"{"k":2,"n":3,"rows":[["1","0","1"],["0","-1","1"]]}"#,
        r#"{"k":2,"n":4,"rows":[["1","0","-1","-1"],["0","1","1","-2"]]}"#,
    ] {
        let mut child = Command::new(bin)
            .arg("locate")
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| e.to_string())?;
        child.stdin.take().unwrap().write_all(doc.as_bytes()).map_err(|e| e.to_string())?;
        let out = child.wait_with_output().map_err(|e| e.to_string())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        check(out.status.code() == Some(3), || format!("exit {:?} for {doc}", out.status.code()))?;
        check(stdout.contains("\"mixed_signs\""), || format!("error object {stdout}"))?;
    }
    Ok(format!("{PIPELINE_TABLEAUX} tableaux, {:.1?}", start.elapsed()))
}

/// Distinct coordinates read by each inversion formula, for information.
fn variable_counts() -> String {
    let mut rows = Vec::new();
    for (name, d) in [
        ("Gr(5,12) example", fixtures::gr5_12_example()),
        ("Gr(2,4) top", LeDiagram::top_cell(2, 4)),
        ("Gr(3,6) top", LeDiagram::top_cell(3, 6)),
        ("Gr(4,8) top", LeDiagram::top_cell(4, 8)),
    ] {
        let m = matroid_of(&d).unwrap();
        let anchors = Anchors::new(&m, d.n()).unwrap();
        let mut vars = BTreeSet::new();
        for b in d.plus_boxes() {
            let a = anchors.anchor(b).unwrap();
            vars.insert(a.m);
            vars.insert(a.m_prime);
        }
        vars.remove(&d.shape().labels().sources);
        rows.push(format!("{name}: minimal {} vs Möbius {}", d.dimension(), vars.len()));
    }
    rows.join("; ")
}

fn main() {
    let total = Instant::now();
    let mut failed = 0;
    let mut report = |label: &str, outcome: Outcome| {
        match &outcome {
            Ok(detail) => println!("PASS  {label} ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {label}: {detail}");
            }
        }
        std::io::stdout().flush().ok();
    };
    report("1 golden values of the Gr(5,12) example", golden_values());
    report("2 lower-boundary corners of two faces", boundary_corners());
    let sweep = sweep();
    report("3 roundtrip locate/coords on every diagram with n <= 8", sweep.roundtrip);
    report("4 oracle agreement: determinants, Möbius forms, anchor paths", sweep.oracles);
    report("5 nest weight identity for every face, n <= 7", nest_identity());
    report("6 Gr(1,n) cell counts and dimensions, n <= 6", cell_counts());
    report("7 Laurent positivity and evaluation, n <= 6", laurent_positivity());
    report("8 matrix pipeline and mixed-sign rejection", matrix_pipeline());
    println!("INFO  variables read per formula: {}", variable_counts());
    println!("acceptance: {} failed, {:.1?} total", failed, total.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
