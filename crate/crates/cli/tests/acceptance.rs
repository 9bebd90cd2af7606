//! End-to-end acceptance run over the cyclic fixture `1 -> 2 -> 3 -> 1`
//! modulo paths of length 3. Prints one PASS/FAIL line per criterion.

mod oracle;

use std::collections::BTreeSet;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::{Arc, OnceLock};

use serde_json::Value;

use taustrat::exceptional::{
    delta_sequence, enumerate_unshifted_sequences, iterated_torsion_free, relative_tau_rigid_certificate,
    relative_torsion_free, sequence_from_ordered, verify_signed_sequence, SignedObject,
};
use taustrat::hom::is_indecomposable;
use taustrat::homology::ext1_dim;
use taustrat::strat::{
    build_delta, delta_terms, families_isomorphic, is_right_approximation, is_tf_proper, psi, upsilon, verify_pss,
    verify_ss, SearchCaps,
};
use taustrat::tilting::{enumerate_tau_rigid, is_tf_admissible, tf_admissible_permutations, TauRigidPair, TfAdmissibleOrder};
use taustrat::torsion::{in_fac, jasso_membership, smallest_torsion_class, torsion_free_by_reject};
use taustrat::universe::{enumerate_indecomposables, EnumerationCaps, Universe};
use taustrat::{direct_sum, hom_basis, hom_dim, is_isomorphic, parse_algebra, Algebra, Representation};

/// Expected census: module, induced stratifying systems, τTF-admissible
/// Ext-projective systems.
const TABLE: [(&str, usize, usize); 10] = [
    ("P1⊕P2⊕P3", 6, 0),
    ("P1⊕P2⊕S2", 2, 0),
    ("P1⊕P3⊕S1", 2, 0),
    ("P2⊕P3⊕S3", 2, 0),
    ("P1⊕M12⊕S2", 3, 3),
    ("P1⊕M12⊕S1", 1, 1),
    ("P2⊕M23⊕S3", 3, 3),
    ("P2⊕M23⊕S2", 1, 1),
    ("P3⊕M31⊕S1", 3, 3),
    ("P3⊕M31⊕S3", 1, 1),
];

type Outcome = Result<String, String>;

fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../examples")
}

fn fixture_path() -> PathBuf {
    examples_dir().join("cyclic3_rad3.alg")
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_taustrat"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let (code, out, err) = cli(args);
    if code != 0 {
        return Err(format!("exit {code}: {err}"));
    }
    serde_json::from_str(&out).map_err(|e| format!("bad JSON: {e}"))
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn set_of(label: &str) -> BTreeSet<String> {
    label.split('⊕').map(str::to_string).collect()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().filter_map(|x| x.as_str().map(str::to_string)).collect())
        .unwrap_or_default()
}

struct Fixture {
    universe: Universe,
    /// Every TF-admissible order of every nonzero basic τ-rigid module.
    orders: Vec<Vec<usize>>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let text = std::fs::read_to_string(fixture_path()).unwrap();
        let a = parse_algebra(&text).unwrap();
        let universe = enumerate_indecomposables(&a, EnumerationCaps::default()).unwrap();
        let mut orders = Vec::new();
        for set in enumerate_tau_rigid(&universe).unwrap() {
            if set.is_empty() {
                continue;
            }
            let pair = TauRigidPair::from_universe(&universe, &set).unwrap();
            for perm in tf_admissible_permutations(&pair).unwrap() {
                orders.push(perm.iter().map(|&k| set[k]).collect());
            }
        }
        Fixture { universe, orders }
    })
}

fn order_of(u: &Universe, idx: &[usize]) -> TfAdmissibleOrder {
    TfAdmissibleOrder::new(idx.iter().map(|&i| u.module(i).clone()).collect()).unwrap()
}

fn field_args(p: Option<&str>) -> Vec<&str> {
    match p {
        Some(p) => vec!["--field-char", p],
        None => vec![],
    }
}

fn criterion_inventory(p: Option<&str>) -> Outcome {
    let path = fixture_path();
    let mut args = vec!["indec", "list", path.to_str().unwrap(), "--format", "json"];
    args.extend(field_args(p));
    let v = cli_json(&args)?;
    let mut dims: Vec<Vec<u64>> = v
        .as_array()
        .ok_or("not an array")?
        .iter()
        .map(|m| m["dim_vector"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect())
        .collect();
    dims.sort();
    let mut expected = vec![
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![1, 1, 0],
        vec![0, 1, 1],
        vec![1, 0, 1],
        vec![1, 1, 1],
        vec![1, 1, 1],
        vec![1, 1, 1],
    ];
    expected.sort();
    check(dims == expected, format!("dimension vectors {dims:?}"))?;
    Ok("9 indecomposables with the expected dimension vectors".into())
}

fn criterion_census(p: Option<&str>) -> Outcome {
    let path = fixture_path();
    let mut args = vec!["tautilt", "list", path.to_str().unwrap(), "--format", "json"];
    args.extend(field_args(p));
    let v = cli_json(&args)?;
    let got: BTreeSet<BTreeSet<String>> = v
        .as_array()
        .ok_or("not an array")?
        .iter()
        .map(|m| strings(m).into_iter().collect())
        .collect();
    let expected: BTreeSet<BTreeSet<String>> = TABLE.iter().map(|(l, _, _)| set_of(l)).collect();
    check(v.as_array().unwrap().len() == 10, "count differs from 10")?;
    check(got == expected, format!("summand sets differ: {got:?}"))?;
    Ok("10 τ-tilting modules, equal to the table's first column".into())
}

fn table_rows(p: Option<&str>) -> Result<Vec<Value>, String> {
    let path = fixture_path();
    let mut args = vec!["ss", "table", path.to_str().unwrap(), "--format", "json"];
    args.extend(field_args(p));
    let v = cli_json(&args)?;
    let rows = v.as_array().ok_or("not an array")?.clone();
    check(rows.len() == TABLE.len(), "row count")?;
    for (row, (label, _, _)) in rows.iter().zip(TABLE) {
        let set: BTreeSet<String> = strings(&row["module"]).into_iter().collect();
        check(set == set_of(label), format!("row order: expected {label}"))?;
    }
    Ok(rows)
}

fn criterion_tfepss(p: Option<&str>) -> Outcome {
    let rows = table_rows(p)?;
    let got: Vec<u64> = rows.iter().map(|r| r["count_tfepss"].as_u64().unwrap()).collect();
    let expected: Vec<u64> = TABLE.iter().map(|t| t.2 as u64).collect();
    check(got == expected, format!("τTFepss column {got:?}"))?;
    Ok(format!("τTFepss column {got:?}"))
}

fn criterion_systems() -> Outcome {
    let rows = table_rows(None)?;
    let mut notes = Vec::new();
    for (k, (row, (label, systems, _))) in rows.iter().zip(TABLE).enumerate() {
        let ordered = row["count_ordered"].as_u64().unwrap() as usize;
        let unordered = row["count_unordered"].as_u64().unwrap() as usize;
        let n_orders = row["count_orders"].as_u64().unwrap() as usize;
        check(row["orders"].as_array().unwrap().len() == n_orders, format!("{label}: orders listing incomplete"))?;
        check(
            row["delta_systems"].as_array().unwrap().len() == n_orders,
            format!("{label}: Δ listing incomplete"),
        )?;
        if (1..=3).contains(&k) {
            check(ordered == systems || unordered == systems, format!("{label}: neither convention gives {systems}"))?;
            let flag = row["systems_match"].as_str().unwrap_or("");
            check(flag == "unordered" || flag == "both" || flag == "ordered", format!("{label}: no match flag"))?;
            notes.push(format!("{label} ordered {ordered}/unordered {unordered}"));
        } else {
            check(ordered == systems, format!("{label}: ordered count {ordered}, table {systems}"))?;
        }
    }
    // The audit listing names every order of the ambiguous rows.
    let path = fixture_path();
    let (code, text, _) = cli(&["ss", "table", path.to_str().unwrap(), "--audit"]);
    check(code == 0, "audit run failed")?;
    for row in &rows[1..4] {
        for (o, d) in row["orders"].as_array().unwrap().iter().zip(row["delta_systems"].as_array().unwrap()) {
            let line = format!("order ({}) -> Δ ({})", strings(o).join(", "), strings(d).join(", "));
            check(text.contains(&line), format!("audit lacks `{line}`"))?;
        }
    }
    Ok(format!("rows 1, 5-10 match ordered counts; {}", notes.join("; ")))
}

fn criterion_profile() -> Outcome {
    let path = fixture_path();
    let v = cli_json(&["profile", path.to_str().unwrap(), "--format", "json"])?;
    let rows = v.as_array().ok_or("not an array")?;
    check(rows.len() == 6, "expected 6 vertex orders")?;
    check(
        rows.iter().all(|r| r["standardly_stratified"] == Value::Bool(false)),
        "some order is standardly stratified",
    )?;
    Ok("no vertex order is standardly stratified".into())
}

fn criterion_delta_is_stratifying() -> Outcome {
    let f = fixture();
    for idx in &f.orders {
        let o = order_of(&f.universe, idx);
        let sys = build_delta(&o, Some(&f.universe)).map_err(|e| format!("{}: {e}", f.universe.sum_name(idx)))?;
        check(verify_ss(&sys.theta).unwrap().is_ok(), format!("{} fails the axioms", f.universe.sum_name(idx)))?;
    }
    Ok(format!("{} ordered τ-rigid modules", f.orders.len()))
}

fn criterion_delta_properties() -> Outcome {
    let f = fixture();
    let u = &f.universe;
    for idx in &f.orders {
        let o = order_of(u, idx);
        let terms = delta_terms(&o).unwrap();
        let m = o.module();
        let name = u.sum_name(idx);
        for (i, t) in terms.iter().enumerate() {
            let by_reject = torsion_free_by_reject(&o.tail_after(i), &t.summand, u).unwrap();
            check(is_isomorphic(&by_reject, &t.delta).unwrap(), format!("{name}: quotient formulas differ at {i}"))?;
            check(
                is_right_approximation(&t.projection, o.summands()).unwrap(),
                format!("{name}: β_{} is not an approximation", i + 1),
            )?;
        }
        let deltas: Vec<Representation> = terms.iter().map(|t| t.delta.clone()).collect();
        let generated = smallest_torsion_class(&deltas, u).unwrap();
        let fac: Vec<usize> = (0..u.len()).filter(|&x| in_fac(&m, u.module(x)).unwrap()).collect();
        check(generated == fac, format!("{name}: T(Δ) {generated:?} vs Fac(M) {fac:?}"))?;
    }
    Ok(format!("{} cases, 3 properties each", f.orders.len()))
}

fn criterion_roundtrips() -> Outcome {
    let f = fixture();
    let u = &f.universe;
    let caps = SearchCaps::default();
    let mut proper = 0;
    for idx in &f.orders {
        let o = order_of(u, idx);
        if !is_tf_proper(&o, caps).unwrap() {
            continue;
        }
        proper += 1;
        let name = u.sum_name(idx);
        let triple = psi(&o, caps).unwrap();
        check(verify_pss(&triple, u, caps).unwrap().passed(), format!("{name}: Ψ is not Ext-projective"))?;
        let (q, parts) = upsilon(&triple).unwrap();
        check(
            is_isomorphic(&q, &o.module()).unwrap() && families_isomorphic(&parts, o.summands()).unwrap(),
            format!("{name}: Υ∘Ψ differs"),
        )?;
        let again = psi(&TfAdmissibleOrder::new(parts).unwrap(), caps).unwrap();
        check(
            families_isomorphic(&again.theta, &triple.theta).unwrap()
                && families_isomorphic(&again.partners, &triple.partners).unwrap(),
            format!("{name}: Ψ∘Υ differs"),
        )?;
    }
    check(proper > 0, "no filtered orders found")?;
    Ok(format!("{proper} filtered ordered modules"))
}

fn index_of(u: &Universe, m: &Representation) -> usize {
    u.identify(m).unwrap().expect("indecomposable in universe")
}

fn criterion_exceptional() -> Outcome {
    let f = fixture();
    let u = &f.universe;
    for idx in &f.orders {
        let seq = delta_sequence(&order_of(u, idx)).unwrap();
        let v = verify_signed_sequence(&seq, u).unwrap();
        check(v.passed(), format!("{}: {v}", u.sum_name(idx)))?;
    }
    let mut converse = 0;
    for len in 1..=2 {
        let verified: BTreeSet<Vec<usize>> = enumerate_unshifted_sequences(u, len).unwrap().into_iter().collect();
        let mut induced = BTreeSet::new();
        for idx in f.orders.iter().filter(|o| o.len() == len) {
            let mods: Vec<Representation> = idx.iter().map(|&i| u.module(i).clone()).collect();
            let seq = sequence_from_ordered(&mods).unwrap();
            induced.insert(seq.entries.iter().map(|e| index_of(u, &e.module)).collect::<Vec<_>>());
        }
        check(
            verified == induced,
            format!("length {len}: verified {verified:?} vs induced {induced:?}"),
        )?;
        converse += verified.len();
    }
    Ok(format!("{} forward cases; {converse} sequences of length ≤ 2 coincide", f.orders.len()))
}

fn criterion_reduction_lemmas() -> Outcome {
    let f = fixture();
    let u = &f.universe;
    let a = u.algebra();
    let mut checks = 0usize;
    // Fac(M ⊕ M') ∩ M^⊥ equals the quotients of f_M(M') lying in J(M).
    for set in enumerate_tau_rigid(u).unwrap() {
        for mask in 0..(1u32 << set.len()) {
            let (m_idx, rest): (Vec<usize>, Vec<usize>) =
                set.iter().enumerate().fold((vec![], vec![]), |(mut a, mut b), (k, &i)| {
                    if mask & (1 << k) != 0 {
                        a.push(i)
                    } else {
                        b.push(i)
                    }
                    (a, b)
                });
            let m = u.sum(&m_idx);
            let both = u.sum(&set);
            let reduced = relative_torsion_free(&m, &u.sum(&rest)).unwrap();
            for x in u.modules() {
                let lhs = in_fac(&both, x).unwrap() && hom_dim(&m, x).unwrap() == 0;
                let in_j = jasso_membership(&m, x).unwrap();
                let rhs = in_fac(&reduced, x).unwrap() && in_j;
                check(lhs == rhs, format!("torsion class equality fails for {}", u.sum_name(&set)))?;
                check(!lhs || in_j, format!("{}: reduced torsion class leaves J(M)", u.sum_name(&set)))?;
                checks += 1;
            }
        }
    }
    for idx in f.orders.iter().filter(|o| o.len() >= 2) {
        let name = u.sum_name(idx);
        let t = idx.len();
        let last = u.module(idx[t - 1]);
        // Reduction by the last summand splits summandwise into relatively
        // τ-rigid indecomposables in TF-admissible order.
        let reduced: Vec<Representation> =
            idx[..t - 1].iter().map(|&i| relative_torsion_free(last, u.module(i)).unwrap()).collect();
        let whole = relative_torsion_free(last, &u.sum(&idx[..t - 1])).unwrap();
        check(
            is_isomorphic(&whole, &direct_sum(a, &reduced).unwrap()).unwrap(),
            format!("{name}: reduction is not additive"),
        )?;
        let amb = SignedObject::unshifted(last.clone());
        for r in &reduced {
            check(is_indecomposable(r).unwrap(), format!("{name}: reduced summand decomposes"))?;
            check(
                relative_tau_rigid_certificate(r, &amb, u).unwrap().is_some(),
                format!("{name}: reduced summand lacks a certificate"),
            )?;
        }
        check(is_tf_admissible(&reduced).unwrap(), format!("{name}: reduced order is not TF-admissible"))?;
        // Nested reduction equals reduction by the last two summands at once.
        let prev = u.module(idx[t - 2]);
        let f_prev = relative_torsion_free(last, prev).unwrap();
        let pair = direct_sum(a, &[prev.clone(), last.clone()]).unwrap();
        for x in u.modules() {
            if !jasso_membership(last, x).unwrap() {
                continue;
            }
            let nested = iterated_torsion_free(&[last.clone(), f_prev.clone()], x).unwrap();
            let ambient = relative_torsion_free(&pair, x).unwrap();
            check(is_isomorphic(&nested, &ambient).unwrap(), format!("{name}: nested and ambient reductions differ"))?;
            checks += 1;
        }
        checks += 1;
    }
    Ok(format!("{checks} checks"))
}

fn oracle_pass(algebra: &Arc<Algebra>, label: &str) -> Result<String, String> {
    let s = oracle::Setting::from_algebra(algebra);
    let mut classes: Vec<(Vec<usize>, Vec<oracle::Mat>)> = Vec::new();
    let mut iso_pairs = 0;
    for dims in s.dim_vectors(4) {
        let reps = s.representations(&dims);
        let labels = s.orbit_labels(&dims, &reps);
        let lib: Vec<Representation> = reps.iter().map(|r| s.to_library(algebra, &dims, r)).collect();
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                let same = labels[i] == labels[j];
                check(
                    is_isomorphic(&lib[i], &lib[j]).unwrap() == same,
                    format!("{label}: isomorphism disagrees at {dims:?}"),
                )?;
                iso_pairs += 1;
            }
        }
        let mut seen = BTreeSet::new();
        for (r, l) in reps.into_iter().zip(labels) {
            if seen.insert(l) {
                classes.push((dims.clone(), r));
            }
        }
    }
    let lib: Vec<Representation> = classes.iter().map(|(d, r)| s.to_library(algebra, d, r)).collect();
    let p = algebra.field().characteristic();
    for (i, (dm, m)) in classes.iter().enumerate() {
        for (j, (dn, n)) in classes.iter().enumerate() {
            let count = s.hom_count(dm, m, dn, n);
            let basis = hom_basis(&lib[i], &lib[j]).unwrap();
            check(
                basis.len() as u32 == oracle::log_p(count, p),
                format!("{label}: hom dimension disagrees for {dm:?}, {dn:?}"),
            )?;
            for g in &basis {
                let maps: Vec<oracle::Mat> = g.maps().iter().map(oracle::from_library).collect();
                check(s.commutes(m, n, &maps), format!("{label}: basis element is not a morphism"))?;
            }
            check(
                ext1_dim(&lib[i], &lib[j]).unwrap() as u32 == s.ext_dim(dm, m, dn, n),
                format!("{label}: Ext dimension disagrees for {dm:?}, {dn:?}"),
            )?;
        }
    }
    Ok(format!("{label}: {} classes, {iso_pairs} isomorphism pairs", classes.len()))
}

fn criterion_oracle() -> Outcome {
    let cyclic = parse_algebra(&std::fs::read_to_string(fixture_path()).unwrap()).unwrap();
    let linear = parse_algebra(&std::fs::read_to_string(examples_dir().join("linear2.alg")).unwrap()).unwrap();
    let a = oracle_pass(&cyclic, "cyclic")?;
    let b = oracle_pass(&linear, "linear")?;
    Ok(format!("{a}; {b}"))
}

fn criterion_characteristic_three() -> Outcome {
    let a = criterion_inventory(Some("3"))?;
    let b = criterion_census(Some("3"))?;
    let c = criterion_tfepss(Some("3"))?;
    Ok(format!("over F_3: {a}; {b}; {c}"))
}

#[test]
fn acceptance() {
    let criteria: Vec<(usize, &str, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "indecomposable inventory", Box::new(|| criterion_inventory(None))),
        (2, "τ-tilting census", Box::new(|| criterion_census(None))),
        (3, "τTFepss column", Box::new(|| criterion_tfepss(None))),
        (4, "stratifying-system column", Box::new(criterion_systems)),
        (5, "not standardly stratified", Box::new(criterion_profile)),
        (6, "induced families are stratifying", Box::new(criterion_delta_is_stratifying)),
        (7, "quotient formula, approximations, generated torsion class", Box::new(criterion_delta_properties)),
        (8, "Ψ/Υ roundtrips", Box::new(criterion_roundtrips)),
        (9, "signed τ-exceptional sequences", Box::new(criterion_exceptional)),
        (10, "reduction lemmas", Box::new(criterion_reduction_lemmas)),
        (11, "oracle equivalence", Box::new(criterion_oracle)),
        (12, "characteristic 3", Box::new(criterion_characteristic_three)),
    ];
    let mut failures = Vec::new();
    for (n, title, run) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let mut out = std::io::stdout().lock();
        match outcome {
            Ok(detail) => writeln!(out, "criterion {n:>2} PASS  {title}: {detail}").unwrap(),
            Err(why) => {
                writeln!(out, "criterion {n:>2} FAIL  {title}: {why}").unwrap();
                failures.push(*n);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}

#[test]
fn invariant_exit_code_never_fires_on_fixtures() {
    let path = fixture_path();
    let p = path.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["algebra", "check", p],
        vec!["indec", "list", p],
        vec!["tautilt", "list", p, "--support"],
        vec!["ss", "table", p, "--audit"],
        vec!["ss", "enumerate", p, "--module", "P1+P2+P3"],
        vec!["profile", p],
    ];
    for args in runs {
        let (code, _, err) = cli(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
    }
}

#[test]
fn exit_codes() {
    let path = fixture_path();
    let p = path.to_str().unwrap();
    assert_eq!(cli(&["indec", "list", ""]).0, 1);
    assert_eq!(cli(&["tau", p, "--module", "X9"]).0, 1);
    assert_eq!(cli(&["no-such-command"]).0, 1);
    assert_eq!(cli(&["indec", "list", p, "--dim-bound", "1"]).0, 2);
    let (code, out, _) = cli(&["tau", p, "--module", "S1"]);
    assert_eq!((code, out.trim()), (0, "S2"));
}

#[test]
fn sequence_cli_roundtrip() {
    let path = fixture_path();
    let p = path.to_str().unwrap();
    let (code, body, _) = cli(&["exseq", "build", p, "--module", "P1+P2+S2", "--format", "json"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("taustrat-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, &body).unwrap();
    assert_eq!(cli(&["exseq", "verify", p, good.to_str().unwrap()]).0, 0);
    let s2 = r#"{"module":{"dim_vector":[0,1,0],"arrows":{}},"shifted":false}"#;
    let bad = dir.join("bad.json");
    std::fs::write(&bad, format!("[{s2},{s2}]")).unwrap();
    let (code, out, _) = cli(&["exseq", "verify", p, bad.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    let seq: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(seq.as_array().unwrap().len(), 3);
}

