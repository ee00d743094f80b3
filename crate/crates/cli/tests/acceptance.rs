//! Acceptance suite: nine criteria, each checked against its own time limit.
//! Runs with its own harness so every criterion prints one PASS/FAIL line.

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use hitcube::clause::{make_an, Clause, ClauseSet};
use hitcube::constructions::{a4_chain, build_fk, build_fk_with_cap, witness_mu_def7, witness_uhit_def7};
use hitcube::sat::{is_mu, is_uhit, Budget};
use hitcube::search::uhit_landscape;
use hitcube::sequences::{a2, a2_fast, non_mersenne, ruler, s2_direct, s2_prime, S2PrimeTable};
use hitcube::transforms::{full_m_expansion, full_subsumption_extension, full_subsumption_resolution};

const BIN: &str = env!("CARGO_BIN_EXE_hitcube");

// Published rows, k = 1..=13.
const NM: [u64; 13] = [2, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 16, 17];
const NM1: [u64; 13] = [2, 4, 5, 6, 8, 8, 10, 11, 12, 13, 14, 16, 16];
const VD: [u64; 13] = [2, 4, 5, 6, 8, 8, 10, 11, 12, 13, 14, 16, 16];
const VDH: [u64; 13] = VD;
const FC: [u64; 13] = [2, 4, 4, 6, 8, 8, 9, 10, 12, 12, 14, 16, 16];
const FCH: [u64; 13] = [2, 4, 4, 6, 8, 8, 8, 10, 12, 12, 14, 16, 16];
const S2: [u64; 13] = FCH;

fn criterion_1() {
    let s2 = [2, 4, 4, 6, 8, 8, 8, 10, 12, 12, 14, 16, 16, 16, 16, 18, 20, 20, 22, 24, 24, 24, 26, 28, 28];
    assert_eq!((1..=25).map(s2_direct).collect::<Vec<_>>(), s2);
    // the published list has 27 entries, k = 0..=26
    let a = [0, 1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9, 10, 10, 11, 12, 12, 12, 13, 14, 14, 15];
    assert_eq!((0..=26).map(a2).collect::<Vec<_>>(), a);
    assert_eq!(a2(27), 16);
    let r = [1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3, 1, 2, 1, 5, 1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3, 1, 2];
    assert_eq!((1..=30).map(|n| ruler(n).unwrap()).collect::<Vec<_>>(), r);
    let idx = [1, 1, 1, 2, 2, 2, 3, 4, 4, 4, 5, 5, 5, 6, 7, 8, 8, 8, 9, 9, 9, 10, 11, 11, 11, 12];
    let sp = [0, 2, 4, 4, 6, 8, 8, 8, 10, 12, 12, 14, 16, 16, 16, 16, 18, 20, 20, 22, 24, 24, 24, 26, 28, 28];
    let sp_i = [2, 2, 2, 4, 4, 4, 4, 6, 6, 6, 8, 8, 8, 8, 8, 10, 10, 10, 12, 12, 12, 12, 14, 14, 14, 16];
    let sigma = [2, 1, 0, 2, 1, 0, 0, 2, 1, 0, 2, 1, 0, 0, 0, 2, 1, 0, 2, 1, 0, 0, 2, 1, 0, 2];
    let mut t = S2PrimeTable::with_prefix(30);
    for k in 0..=25u64 {
        let i = t.index(k).unwrap();
        let j = k as usize;
        assert_eq!(i, idx[j], "i({k})");
        assert_eq!(t.get(j), sp[j], "S2'({k})");
        assert_eq!(t.get(i as usize), sp_i[j], "S2'(i({k}))");
        assert_eq!(t.slack(k).unwrap(), sigma[j], "sigma({k})");
    }
}

fn criterion_2() {
    for k in 0..=100_000u64 {
        assert_eq!(s2_direct(k), 2 * a2_fast(k), "k={k}");
    }
    let t = S2PrimeTable::with_prefix(10_000);
    for k in 0..=10_000usize {
        assert_eq!(t.value(k).unwrap(), s2_direct(k as u64), "k={k}");
    }
    assert_eq!(s2_prime(10_000), s2_direct(10_000));
}

fn criterion_3() {
    let upto = 10_000u64;
    let mut t = S2PrimeTable::with_prefix(upto as usize + 2);
    let idx: Vec<u64> = (0..=upto + 1).map(|k| t.index(k).unwrap()).collect();
    let sp: Vec<u64> = (0..=upto + 1).map(|k| t.get(k as usize)).collect();
    let sigma: Vec<u64> = (0..=upto + 1).map(|k| t.slack(k).unwrap()).collect();
    for k in 2..=upto as usize {
        assert_eq!(sp[k], sp[idx[k - 1] as usize] + sp[idx[k - 2] as usize], "nested recursion at {k}");
    }
    for k in 0..=upto as usize {
        assert_eq!(sp[k + 1] - sp[k], 2 * sigma[k].min(1), "growth vs slack at {k}");
        if sigma[k] > 0 {
            assert_eq!(sigma[k + 1], sigma[k] - 1, "slack decrement at {k}");
        } else {
            assert!(sigma[k + 1] == 0 || sigma[k + 1] == 2, "slack jump at {k}");
        }
    }
}

fn criterion_4() {
    for k in 1..=100_000u64 {
        let s = s2_direct(k);
        let nm = non_mersenne(k).unwrap();
        let cap = k + 1 + u64::from(63 - k.leading_zeros());
        assert!(k < s && s <= nm && nm <= cap, "k={k}: S2={s}, nM={nm}, cap={cap}");
    }
    for n in 1..=16u32 {
        let top = 1u64 << n;
        let lo = top - u64::from(n);
        assert_eq!(s2_direct(lo), top, "n={n}");
        assert_eq!(s2_direct(top - 1), top, "n={n}");
        for k in lo.saturating_sub(3)..=top + 3 {
            assert_eq!(s2_direct(k) == top, (lo..top).contains(&k), "n={n}, k={k}");
        }
    }
}

fn criterion_5() {
    let b = Budget::default();
    for k in (1..=13u64).chain([20, 31, 57]) {
        let t = build_fk_with_cap(k, 64, &b).unwrap();
        let f = &t.final_set;
        assert_eq!(f.deficiency(), k as i64, "k={k}");
        assert_eq!(f.nfc() as u64, s2_direct(k), "k={k}");
        assert!(f.is_hitting() && f.weight_sum().is_one(), "k={k}");
        assert_eq!(t.report.is_uhit, Some(true), "k={k}");
        if k <= 13 {
            assert!(f.n() <= 12);
            assert!(is_uhit(f, &b).unwrap(), "k={k}");
        }
        assert_eq!(&t.replay().unwrap(), f);
    }
}

fn criterion_6() {
    let b = Budget::default();
    let mu = witness_mu_def7();
    assert_eq!(mu.deficiency(), 7);
    assert_eq!(mu.nfc(), 9);
    assert!(is_mu(&mu, &b).unwrap());
    assert!(!mu.is_hitting());

    let uh = witness_uhit_def7();
    assert_eq!(uh.deficiency(), 7);
    assert!(uh.is_hitting());
    assert!(uh.weight_sum().is_one());
    assert!(uh.var_degrees().values().all(|&d| d == 10));
    assert!(is_uhit(&uh, &b).unwrap());

    let chain = a4_chain(&b).unwrap();
    let got: Vec<(i64, usize)> =
        chain[1..].iter().map(|s| (s.clause_set.deficiency(), s.clause_set.min_var_degree().unwrap())).collect();
    assert_eq!(got, vec![(11, 14), (10, 13), (9, 12), (8, 11)]);
    assert!(chain.iter().all(|s| is_uhit(&s.clause_set, &b).unwrap()));
}

fn row(v: &Value, name: &str) -> Vec<u64> {
    v["rows"].as_array().unwrap().iter().find(|r| r["name"] == name).unwrap_or_else(|| panic!("row {name} missing"))
        ["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_u64().unwrap())
        .collect()
}

fn criterion_7() {
    let out = Command::new(BIN).args(["table1", "--kmax", "13", "--format", "json"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["findings"].as_array().unwrap().is_empty());
    let rows = [
        ("nM", NM),
        ("nM1", NM1),
        ("minnonmer", VD),
        ("minnonmerh", VDH),
        ("maxsmar", FC),
        ("maxsmarh", FCH),
        ("S2", S2),
    ];
    for (name, want) in rows {
        assert_eq!(row(&v, name), want, "row {name}");
    }
    for name in ["nM", "nM1", "S2"] {
        let r = v["rows"].as_array().unwrap().iter().find(|r| r["name"] == name).unwrap();
        assert!(r["entries"].as_array().unwrap().iter().all(|e| e["status"] == "computed"));
    }
    let (fch, fc, vdh, vd) = (row(&v, "maxsmarh"), row(&v, "maxsmar"), row(&v, "minnonmerh"), row(&v, "minnonmer"));
    for i in 0..13 {
        assert!(fch[i] <= fc[i] && fc[i] <= vd[i], "k={}", i + 1);
        assert!(fch[i] <= vdh[i] && vdh[i] <= vd[i], "k={}", i + 1);
    }
    let text = Command::new(BIN).args(["table1", "--kmax", "13"]).output().unwrap();
    assert!(text.status.success());
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>()
        == ["maxsmar", "2", "4", "4", "6", "8", "8", "9", "10", "12", "12", "14", "16", "16"]));
}

fn criterion_8() {
    let b = Budget::default();
    let land = uhit_landscape(4, true).unwrap();
    let mut seen = 0;
    for (&d, r) in &land.by_deficiency {
        assert!(d >= 1);
        if d > 12 {
            continue;
        }
        let k = d as usize;
        assert!(r.max_nfc as u64 <= FCH[k - 1], "k={k}: {} > {}", r.max_nfc, FCH[k - 1]);
        assert!(r.max_min_var_degree as u64 <= VDH[k - 1], "k={k}");
        assert_eq!(r.max_nfc % 2, 0, "k={k}");
        for w in [&r.nfc_witness, &r.mvd_witness] {
            assert_eq!(w.deficiency(), d);
            assert!(w.n() <= 4);
            assert!(w.is_hitting() && w.weight_sum().is_one());
            assert!(is_uhit(w, &b).unwrap());
        }
        assert_eq!(r.nfc_witness.nfc(), r.max_nfc);
        seen += 1;
    }
    assert_eq!(seen, 12, "every deficiency 1..=12 occurs at n <= 4");

    // the same certificate through the binary, piping the witness back in
    let out = Command::new(BIN).args(["search", "--quantity", "fch", "--k", "7", "--nmax", "4"]).output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["certificate"]["best_value"], 8);
    let dimacs = v["witness_dimacs"].as_str().unwrap().to_string();
    let mut child = Command::new(BIN)
        .args(["verify", "-", "--claims", "uhit"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(dimacs.as_bytes()).unwrap();
    assert!(child.wait_with_output().unwrap().status.success());
}

/// Random UHIT seeds: `A_n`, `F_k` and the deficiency-7 matrix.
fn seeds() -> Vec<ClauseSet> {
    let b = Budget::default();
    let mut v: Vec<ClauseSet> = (1..=4).map(|n| make_an(n).unwrap()).collect();
    v.extend((2..=9).map(|k| build_fk(k, &b).unwrap().final_set));
    v.push(witness_uhit_def7());
    v
}

fn criterion_9() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let seeds = seeds();
    let mut roundtrips = 0;
    while roundtrips < 10_000 {
        let f = seeds.choose(&mut rng).unwrap();
        if rng.gen_bool(0.5) {
            // extend then resolve
            let c = f.clauses().choose(&mut rng).unwrap().clone();
            let max = f.max_var().unwrap_or(0);
            let v = rng.gen_range(1..=max + 1);
            if c.contains_var(v) {
                continue;
            }
            let Ok((g, _)) = full_subsumption_extension(f, &c, v) else { continue };
            assert_eq!(g.c(), f.c() + 1);
            let (h, _) = full_subsumption_resolution(&g, &c, v).unwrap();
            assert_eq!(&h, f);
        } else {
            // resolve then extend, on a clause pair differing in one variable
            let d = f.clauses().choose(&mut rng).unwrap();
            let Some(&lit) = d.literals().choose(&mut rng) else { continue };
            let c = d.without(lit);
            if !f.contains(&c.with(lit.complement()).unwrap()) || f.contains(&c) {
                continue;
            }
            let (g, _) = full_subsumption_resolution(f, &c, lit.var()).unwrap();
            let (h, _) = full_subsumption_extension(&g, &c, lit.var()).unwrap();
            assert_eq!(&h, f);
        }
        roundtrips += 1;
    }

    let b = Budget::default();
    for _ in 0..1_000 {
        let f = seeds.choose(&mut rng).unwrap();
        let full: Vec<Clause> = f.full_clauses().cloned().collect();
        let m = rng.gen_range(1..=full.len());
        let mut pick: Vec<Clause> = full.choose_multiple(&mut rng, m).cloned().collect();
        pick.sort();
        let (g, step) = full_m_expansion(f, m, Some(&pick)).unwrap();
        assert_eq!(step.m, m);
        assert_eq!(g.n(), f.n() + 1);
        assert_eq!(g.c(), f.c() + m);
        assert_eq!(g.deficiency(), f.deficiency() + m as i64 - 1);
        assert_eq!(g.nfc(), 2 * m);
        let fresh = step.extension_var;
        assert!(g.full_clauses().all(|c| c.contains_var(fresh)));
        assert!(g.is_hitting() && g.weight_sum().is_one());
        if g.n() <= 8 {
            assert!(is_uhit(&g, &b).unwrap());
        }
    }
}

fn main() {
    let criteria: [(&str, fn(), Duration); 9] = [
        ("sequence pinning", criterion_1, Duration::from_secs(1)),
        ("cross-method identities", criterion_2, Duration::from_secs(10)),
        ("recursion and slack laws", criterion_3, Duration::from_secs(5)),
        ("bounds and plateau windows", criterion_4, Duration::from_secs(10)),
        ("F_k construction", criterion_5, Duration::from_secs(30)),
        ("deficiency-7 witnesses and A_4 chain", criterion_6, Duration::from_secs(1)),
        ("table of extremal values", criterion_7, Duration::from_secs(1)),
        ("partition oracle consistency", criterion_8, Duration::from_secs(300)),
        ("transform laws", criterion_9, Duration::from_secs(30)),
    ];
    // the libtest flags cargo passes have no meaning here
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let label = format!("criterion {}: {name}", i + 1);
        if filter.as_ref().is_some_and(|p| !label.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(f)).is_ok();
        let took = start.elapsed();
        let in_time = took <= limit;
        let verdict = if ok && in_time { "PASS" } else { "FAIL" };
        let note = if ok && !in_time { " over the time limit" } else { "" };
        println!("{verdict} {label} ({:.2}s, limit {}s){note}", took.as_secs_f64(), limit.as_secs());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
