use hitcube::sat::{is_mu, is_uhit, Budget};
use hitcube::search::{paper_value, search, table1, uhit_landscape, EntryStatus, Quantity, SearchOptions};

#[test]
fn four_cube_partitions_stay_below_stored_values() {
    let land = uhit_landscape(4, true).unwrap();
    let b = Budget::default();
    assert!(land.partitions > 0);
    for (&d, r) in &land.by_deficiency {
        let k = d as u64;
        assert!(d >= 1);
        assert_eq!(r.max_nfc % 2, 0, "odd nfc at deficiency {d}");
        if let Some(stored) = paper_value(Quantity::Maxsmarh, k) {
            assert!(r.max_nfc as u64 <= stored, "deficiency {d}");
        }
        if let Some(stored) = paper_value(Quantity::Minnonmerh, k) {
            assert!(r.max_min_var_degree as u64 <= stored, "deficiency {d}");
        }
        for w in [&r.nfc_witness, &r.mvd_witness] {
            assert_eq!(w.deficiency(), d);
            assert!(w.n() <= 4);
            assert!(is_uhit(w, &b).unwrap());
        }
    }
    // A_4 is the only partition into 16 cells
    assert_eq!(land.by_deficiency[&12].partitions, 1);
    assert_eq!(land.by_deficiency[&12].max_nfc, 16);
}

#[test]
fn deficiency_three_never_reaches_five_full_clauses() {
    let c = search(Quantity::Maxsmarh, 3, 4, &SearchOptions::default()).unwrap();
    assert_eq!(c.best_value, Some(4));
    assert!(c.exact);
}

#[test]
fn deficiency_seven_mu_with_four_variables() {
    let c = search(Quantity::Maxsmar, 7, 4, &SearchOptions::default()).unwrap();
    assert!(c.exhaustive_over_n_max);
    assert!(!c.budget_exhausted);
    assert_eq!(c.best_value, Some(9));
    let w = c.witness.unwrap();
    assert_eq!(w.nfc(), 9);
    assert!(is_mu(&w, &Budget::default()).unwrap());
    assert!(c.exact);
}

#[test]
fn deficiency_seven_uhit_stops_at_eight() {
    let c = search(Quantity::Maxsmarh, 7, 4, &SearchOptions::default()).unwrap();
    assert_eq!(c.best_value, Some(8));
    assert!(c.exact);
    let v = search(Quantity::Minnonmerh, 7, 4, &SearchOptions::default()).unwrap();
    assert_eq!(v.best_value, Some(10));
}

#[test]
fn table_with_landscape_certifies_every_entry() {
    let land = uhit_landscape(4, true).unwrap();
    let t = table1(13, Some(&land), &[], &Budget::default()).unwrap();
    assert!(t.findings.is_empty(), "{:?}", t.findings);
    for q in Quantity::ALL {
        let row = t.row(q.name()).unwrap();
        for e in &row.entries {
            assert_eq!(e.status, EntryStatus::Certified, "{q}({})", e.k);
        }
    }
}
