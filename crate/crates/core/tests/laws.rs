use hitcube::clause::ClauseSet;
use hitcube::constructions::{build_fk, witness_mu_def7};
use hitcube::sat::{is_mu, Budget};
use hitcube::transforms::{dp_reduction, full_m_expansion};

/// Variables occurring only in full clauses.
fn only_in_full(f: &ClauseSet) -> Vec<u32> {
    f.vars().iter().copied().filter(|&v| f.clauses().iter().all(|c| !c.contains_var(v) || f.is_full(c))).collect()
}

#[test]
fn eliminating_a_min_degree_variable_of_fk() {
    let b = Budget::default();
    for k in 2..=8u64 {
        let f = build_fk(k, &b).unwrap().final_set;
        assert_eq!(f.nfc(), f.min_var_degree().unwrap(), "k={k}");
        let mvd: Vec<u32> = f.min_degree_vars().unwrap().into_iter().collect();
        assert_eq!(mvd, only_in_full(&f), "k={k}");
        assert_eq!(f.nfc() % 2, 0);
        for v in mvd {
            let g = dp_reduction(&f, v).unwrap().result;
            assert_eq!(g.deficiency(), f.deficiency() - f.nfc() as i64 / 2 + 1, "k={k}, v={v}");
            assert!(is_mu(&g, &b).unwrap(), "k={k}, v={v}");
        }
    }
}

#[test]
fn mu7_has_more_degree_than_full_clauses() {
    let f = witness_mu_def7();
    assert!(f.nfc() < f.min_var_degree().unwrap());
    assert!(only_in_full(&f).is_empty());
}

#[test]
fn expansion_then_elimination_is_identity() {
    let b = Budget::default();
    for k in 1..=9u64 {
        let f = build_fk(k, &b).unwrap().final_set;
        for m in 1..=f.nfc() {
            let (g, step) = full_m_expansion(&f, m, None).unwrap();
            let back = dp_reduction(&g, step.extension_var).unwrap();
            assert_eq!(back.result, f, "k={k}, m={m}");
        }
    }
}
