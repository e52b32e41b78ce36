//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! All comparisons are exact. Runtime bounds are wall-clock per type.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use peterson::billey::{billey_localization, billey_localization_with_word, RootPolynomial};
use peterson::certify::{default_suite, run_suite, strip_timing, RunConfig};
use peterson::commalg::{
    build_ideal_j, build_ideal_jcheck, hilbert_series_of_quotient, is_regular_sequence,
    zero_set_is_origin, zero_set_via_minors, GradedPolynomial, HilbertSeries,
};
use peterson::peterson::PetersonModel;
use peterson::roots::{RootSystemType, RootVector};
use peterson::tpoly::TPolynomial;
use peterson::weyl::{SimpleSubset, Weyl, DEFAULT_REDUCED_WORD_CAP};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn types(labels: &[&str]) -> Vec<RootSystemType> {
    labels.iter().map(|s| s.parse().unwrap()).collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn ms(d: Duration) -> u128 {
    d.as_millis()
}

fn int(c: i64) -> TPolynomial {
    TPolynomial::from_int(c)
}

fn c1_monk_cartan() -> Verdict {
    let bound = Duration::from_secs(1);
    let mut slowest = Duration::ZERO;
    let mut pairs = 0;
    let mut g2_pair = Vec::new();
    for t in default_suite() {
        let (res, took) = timed(|| -> Result<(), String> {
            let model = PetersonModel::new(&t);
            let n = model.rank();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let k = SimpleSubset::from_nodes([i]);
                    let c = model
                        .monk_coefficient(i, k, k.insert(j))
                        .map_err(|e| e.to_string())?;
                    let a = model.cartan().get(i, j);
                    let expected = if model.cartan().adjacent(i, j) { -a } else { 0 };
                    ensure(c == int(expected), || {
                        format!("{t}: c({},{}) = {c}, expected {expected}", i + 1, j + 1)
                    })?;
                    pairs += 1;
                    if t.to_string() == "G2" {
                        g2_pair.push(c.to_string());
                    }
                }
            }
            Ok(())
        });
        res?;
        ensure(took < bound, || format!("{t} took {} ms", ms(took)))?;
        slowest = slowest.max(took);
    }
    g2_pair.sort();
    ensure(g2_pair == ["1", "3"], || format!("G2 pair is {g2_pair:?}"))?;
    Ok(format!(
        "{pairs} ordered pairs, G2 (1, 3), slowest {} ms/type (< 1000)",
        ms(slowest)
    ))
}

fn c2_quadratic() -> Verdict {
    let bound = Duration::from_secs(5);
    let mut slowest = Duration::ZERO;
    for t in default_suite() {
        let (rec, took) = timed(|| PetersonModel::new(&t).verify_quadratic_relations());
        let rec = rec.map_err(|e| e.to_string())?;
        ensure(rec.pass, || format!("{t}: {}", rec.witness))?;
        ensure(took < bound, || format!("{t} took {} ms", ms(took)))?;
        slowest = slowest.max(took);
    }
    Ok(format!(
        "all 2^n fixed points vanish, slowest {} ms/type (< 5000)",
        ms(slowest)
    ))
}

fn c3_giambelli() -> Verdict {
    let mut connected = 0;
    let mut counted = 0;
    for t in default_suite() {
        let model = PetersonModel::new(&t);
        let weyl = model.weyl();
        for &k in model.subset_order() {
            if k.is_empty() || !k.is_connected(model.cartan()) {
                continue;
            }
            let rec = model.verify_giambelli(k).map_err(|e| e.to_string())?;
            ensure(rec.pass, || format!("{t} K={k}: {}", rec.witness))?;
            connected += 1;
            if k.len() <= 3 {
                let v = weyl.v_k(k);
                let words = weyl
                    .enumerate_reduced_words(&v, DEFAULT_REDUCED_WORD_CAP)
                    .map_err(|e| e.to_string())?;
                ensure(weyl.count_reduced_words(&v) == words.len().into(), || {
                    format!("{t} K={k}: count mismatch")
                })?;
                counted += 1;
            }
        }
    }
    let mut products = 0;
    for t in types(&["A3", "A4", "A2+A1"]) {
        let model = PetersonModel::new(&t);
        let cartan = model.cartan();
        let subsets = model.subset_order();
        for &j in subsets {
            for &k in subsets {
                let valid = !j.is_empty()
                    && !k.is_empty()
                    && j.mask() < k.mask()
                    && j.intersection(k).is_empty()
                    && j.is_connected(cartan)
                    && k.is_connected(cartan)
                    && !j.union(k).is_connected(cartan);
                if valid {
                    let rec = model
                        .verify_disconnected_product(j, k)
                        .map_err(|e| e.to_string())?;
                    ensure(rec.pass, || format!("{t} J={j} K={k}"))?;
                    products += 1;
                }
            }
        }
    }
    ensure(products > 0, || "no disconnected pairs found".into())?;
    Ok(format!(
        "{connected} connected K, {counted} counts match enumeration, {products} disconnected products (A3, A4, A2+A1)"
    ))
}

fn c4_basis() -> Verdict {
    for t in default_suite() {
        let b = PetersonModel::new(&t).basis_matrix();
        ensure(b.is_upper_triangular(), || {
            format!("{t}: not upper triangular")
        })?;
        ensure(b.diagonal_nonzero(), || {
            format!("{t}: zero on the diagonal")
        })?;
        ensure(b.respects_inclusion(), || {
            format!("{t}: nonzero entry off inclusion")
        })?;
    }
    Ok("upper triangular, nonzero diagonal, 10 types".into())
}

fn c5_hilbert() -> Verdict {
    let bound = Duration::from_secs(60);
    let mut slowest = Duration::ZERO;
    for t in default_suite() {
        let n = t.rank();
        let cartan = t.cartan_matrix();
        let ((hj, hjc), took) = timed(|| {
            (
                hilbert_series_of_quotient(&build_ideal_j(&cartan)),
                hilbert_series_of_quotient(&build_ideal_jcheck(&cartan)),
            )
        });
        ensure(
            hj == HilbertSeries::equivariant_cohomology_of_peterson(n),
            || format!("{t}: J gives {hj}"),
        )?;
        ensure(hjc == HilbertSeries::cohomology_of_peterson(n), || {
            format!("{t}: Jcheck gives {hjc}")
        })?;
        ensure(took < bound, || format!("{t} took {} ms", ms(took)))?;
        slowest = slowest.max(took);
    }
    Ok(format!(
        "J and Jcheck series exact, slowest {} ms/type (< 60000)",
        ms(slowest)
    ))
}

fn c6_regular_sequences() -> Verdict {
    for t in default_suite() {
        let n = t.rank();
        let cartan = t.cartan_matrix();
        let thetas = build_ideal_j(&cartan).generators().to_vec();
        let mut with_t = thetas.clone();
        with_t.push(GradedPolynomial::variable(n + 1, n));
        for (name, seq) in [("theta,t", &with_t), ("theta", &thetas)] {
            let cert = is_regular_sequence(n + 1, seq).map_err(|e| e.to_string())?;
            ensure(cert.regular, || format!("{t}: ({name}) not regular"))?;
        }
        let by_groebner =
            zero_set_is_origin(&build_ideal_jcheck(&cartan)).map_err(|e| e.to_string())?;
        let by_minors = zero_set_via_minors(&cartan);
        ensure(by_groebner && by_minors, || {
            format!("{t}: groebner {by_groebner}, minors {by_minors}")
        })?;
    }
    Ok("(theta,t) and prefix regular; zero set = origin by both oracles, 10 types".into())
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn c7_graded_dims() -> Verdict {
    for t in types(&["A1", "A2", "A3", "B2", "G2"]) {
        let n = t.rank();
        let dims = PetersonModel::new(&t)
            .image_graded_dimensions(12)
            .map_err(|e| e.to_string())?;
        // coefficient of s^{2d} in (1+s^2)^n / (1-s^2) is sum_{k <= d} C(n, k)
        let expected: Vec<usize> = (0..=6)
            .map(|d| (0..=d.min(n)).map(|k| binomial(n, k)).sum::<i64>() as usize)
            .collect();
        ensure(dims == expected, || {
            format!("{t}: {dims:?} vs {expected:?}")
        })?;
    }
    Ok("degrees 0..12 match for A1, A2, A3, B2, G2".into())
}

fn c8_billey() -> Verdict {
    let mut pairs = 0;
    for t in types(&["A2", "B2", "G2"]) {
        let weyl = Weyl::new(t.cartan_matrix());
        let elements = weyl.elements_up_to_length(6);
        for w in &elements {
            let words = weyl
                .enumerate_reduced_words(w, DEFAULT_REDUCED_WORD_CAP)
                .map_err(|e| e.to_string())?;
            for v in &elements {
                let values: Vec<RootPolynomial> = words
                    .iter()
                    .map(|word| {
                        billey_localization_with_word(&weyl, v, word).map_err(|e| e.to_string())
                    })
                    .collect::<Result<_, _>>()?;
                ensure(values.iter().all(|p| *p == values[0]), || {
                    format!("{t}: sigma_{v}({w}) depends on the word")
                })?;
                let p = &values[0];
                ensure(p.is_zero() != weyl.bruhat_leq(v, w), || {
                    format!("{t}: vanishing of sigma_{v}({w})")
                })?;
                if !p.is_zero() {
                    ensure(p.homogeneous_degree() == Some(v.length() as u32), || {
                        format!("{t}: degree of sigma_{v}({w})")
                    })?;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} (v, w) pairs in A2, B2, G2 with length(w) <= 6"
    ))
}

fn c9_spot_values() -> Verdict {
    let mut checked = 0;
    for t in default_suite() {
        let model = PetersonModel::new(&t);
        let weyl = model.weyl();
        let n = model.rank();
        for i in 0..n {
            let si = weyl.simple(i).unwrap();
            let p = model.p_simple(i).map_err(|e| e.to_string())?;
            ensure(
                *p.value(SimpleSubset::from_nodes([i])) == TPolynomial::t(),
                || format!("{t}: p_s{}(s{})", i + 1, i + 1),
            )?;
            for j in 0..n {
                if i == j || !model.cartan().adjacent(i, j) {
                    continue;
                }
                let (aij, aji) = (model.cartan().get(i, j), model.cartan().get(j, i));
                let a = aij * aji;
                let w = weyl.longest_element(SimpleSubset::from_nodes([i, j]));
                let value = billey_localization(weyl, &si, &w);
                let mut coords = vec![0; n];
                if a == 3 {
                    coords[i] = 4;
                    coords[j] = -2 * aij;
                    ensure(
                        *p.value(SimpleSubset::from_nodes([i, j]))
                            == int(4 - 2 * aij) * TPolynomial::t(),
                        || format!("{t}: p_s{}(w_ij)", i + 1),
                    )?;
                } else {
                    coords[i] = a;
                    coords[j] = -aij;
                }
                let expected = RootPolynomial::from_root(&RootVector(coords));
                ensure(value == expected, || {
                    format!("{t}: sigma_s{}(w_ij) = {value}, expected {expected}", i + 1)
                })?;
                checked += 1;
            }
        }
    }
    let g2: RootSystemType = "G2".parse().unwrap();
    let model = PetersonModel::new(&g2);
    let full = SimpleSubset::full(2);
    let got = [
        model.p_simple(0).unwrap().value(full).clone(),
        model.p_simple(1).unwrap().value(full).clone(),
    ];
    ensure(
        got == [int(6) * TPolynomial::t(), int(10) * TPolynomial::t()],
        || format!("G2: {got:?}"),
    )?;
    Ok(format!(
        "p_si(si) = t; {checked} rank-2 localizations; G2 p_s1(w) = 6t, p_s2(w) = 10t"
    ))
}

fn c10_determinism() -> Verdict {
    let template = RunConfig::new("A1".parse().unwrap());
    let render = || {
        let report = run_suite(&default_suite(), &template);
        let mut v = report.to_json();
        strip_timing(&mut v);
        (report.overall_pass, serde_json::to_string(&v).unwrap())
    };
    let (pass_a, a) = render();
    let (pass_b, b) = render();
    ensure(pass_a && pass_b, || "default suite did not pass".into())?;
    ensure(a == b, || "reports differ".into())?;
    Ok(format!(
        "default suite passes; two runs byte-identical without timing ({} bytes)",
        a.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "Monk coefficient c_{i,{i}}^{{i,j}} = -<a_i,a_j>",
            c1_monk_cartan,
        ),
        ("quadratic relations at all fixed points", c2_quadratic),
        ("Giambelli and disconnected products", c3_giambelli),
        ("basis matrix triangularity", c4_basis),
        ("Hilbert series of J and Jcheck", c5_hilbert),
        ("regular sequences and zero set", c6_regular_sequences),
        ("graded dimensions of the restriction image", c7_graded_dims),
        ("Billey localization well defined", c8_billey),
        ("spot values of localizations", c9_spot_values),
        ("suite determinism", c10_determinism),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
