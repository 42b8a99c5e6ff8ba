//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with --nocapture and in failure output).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num::BigInt;

use pforest::error::Error;
use pforest::forest::{
    component_descent_tables, enumerate_pforests, forest_to_mis, mis_descents, verify_decomposition,
};
use pforest::genfun::{
    count_linear_extensions, factored_fpx, fpq, fpx_duplication_path, q_term, QPoly,
};
use pforest::ideal_graph::{component_union_ideal, generator_subgraph, ideal_graph, IdealGraph};
use pforest::mis::{
    component_mis_lists, global_mis_from_lists, is_containment_cover, label_map, maximal_contained,
    MaxIndSet,
};
use pforest::oracle::{
    oracle_extension_count, oracle_maj_polynomial, oracle_pforests, oracle_ppartition_series,
    random_poset,
};
use pforest::series::expand_factored;
use pforest::{DescentData, Poset};

const MAX_IDEALS: u64 = 1 << 20;
const MAX_MIS: u64 = 1 << 16;
const MAX_EXTENSIONS: u64 = 5_000_000;
const SERIES_TERMS: usize = 200_000;

/// Prints "<label>: pass" when the test body completes, "<label>: fail"
/// when it panics.
struct Marker {
    label: &'static str,
}

fn marker(label: &'static str) -> Marker {
    Marker { label }
}

impl Drop for Marker {
    fn drop(&mut self) {
        if std::thread::panicking() {
            println!("{}: fail", self.label);
        } else {
            println!("{}: pass", self.label);
        }
    }
}

fn fixture(name: &str) -> Poset {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let src = std::fs::read_to_string(path).unwrap();
    pforest::io::parse_poset_text(&src).unwrap().poset
}

/// 200 naturally labeled posets on up to 7 elements, deterministic.
fn corpus() -> Vec<Poset> {
    (0..200u64)
        .map(|seed| {
            let n = (seed % 7 + 1) as u32;
            let density = if seed % 2 == 0 { 0.2 } else { 0.4 };
            random_poset(n, density, seed).natural_relabel().0
        })
        .collect()
}

#[test]
fn headline_extension_count() {
    let _m = marker("acceptance 1 (seventeen-element extension count)");
    let p = fixture("seventeen.poset");
    assert!(p.is_naturally_labeled());

    let start = Instant::now();
    let g = ideal_graph(&p, MAX_IDEALS).unwrap();
    let lists = component_mis_lists(&g, MAX_MIS).unwrap();
    let count = count_linear_extensions(&g, &lists).unwrap();
    assert_eq!(count, BigInt::from(2_851_200u64));
    assert!(start.elapsed() < Duration::from_secs(10));

    // Slow tier: the same number by walking every linear extension.
    let start = Instant::now();
    let direct = oracle_extension_count(&p, MAX_EXTENSIONS).unwrap();
    assert_eq!(direct, 2_851_200);
    assert!(start.elapsed() < Duration::from_secs(300));
}

#[test]
fn six_element_example_suite() {
    let _m = marker("acceptance 2 (six-element example suite)");
    let p = fixture("six.poset");

    let start = Instant::now();
    let g = ideal_graph(&p, MAX_IDEALS).unwrap();
    let names: Vec<String> = g.ideals().iter().map(|j| j.members().to_string()).collect();
    assert_eq!(
        names,
        [
            "{3}",
            "{6}",
            "{4,6}",
            "{4,5,6}",
            "{1,3,4,6}",
            "{1,2,3,4,6}",
            "{1,3,4,5,6}",
            "{1,2,3,4,5,6}"
        ]
    );

    let lists = component_mis_lists(&g, MAX_MIS).unwrap();
    let globals = global_mis_from_lists(&g, &lists, MAX_MIS).unwrap();
    let member_sets: Vec<&[u32]> = globals.iter().map(|m| m.members()).collect();
    assert_eq!(
        member_sets,
        [
            &[0, 1, 2, 3, 6, 7][..],
            &[0, 1, 2, 4, 5, 7][..],
            &[0, 1, 2, 4, 6, 7][..]
        ]
    );

    let forests = enumerate_pforests(&p, &g, MAX_MIS).unwrap();
    let parent_arrays: Vec<&[u32]> = forests.iter().map(|f| f.parents()).collect();
    assert_eq!(
        parent_arrays,
        [
            &[2, 2, 1, 5, 1, 4][..],
            &[2, 5, 1, 1, 5, 4][..],
            &[5, 2, 1, 1, 2, 4][..]
        ]
    );

    // Forward map sends each forest to its independent set; the pairing
    // is fixed, and the inverse map recovers the forest.
    let expected_images = [
        &[0u32, 1, 2, 3, 6, 7][..],
        &[0, 1, 2, 4, 5, 7][..],
        &[0, 1, 2, 4, 6, 7][..],
    ];
    for (f, want) in forests.iter().zip(expected_images) {
        let m = forest_to_mis(&g, f).unwrap();
        assert_eq!(m.members(), want);
        let back = pforest::forest::mis_to_forest(&p, &g, &m).unwrap();
        assert_eq!(&back, f);
    }

    let count = count_linear_extensions(&g, &lists).unwrap();
    assert_eq!(count, BigInt::from(10));
    assert!(start.elapsed() < Duration::from_secs(1));

    assert_eq!(oracle_extension_count(&p, MAX_EXTENSIONS).unwrap(), 10);
}

type Row = (
    &'static [&'static [u32]],
    &'static [u32],
    &'static [&'static [u32]],
);

const L4: &[u32] = &[1, 2, 4];
const L5: &[u32] = &[2, 3, 5];
const L6: &[u32] = &[1, 3, 6];
const L45: &[u32] = &[1, 2, 3, 4, 5];
const L46: &[u32] = &[1, 2, 3, 4, 6];
const L56: &[u32] = &[1, 2, 3, 5, 6];
const ROWS_AT_4: &[Row] = &[
    (&[L4, L45], &[], &[]),
    (&[L4, L46], &[6], &[L46]),
    (&[L5, L45], &[5], &[L5]),
    (&[L5, L56], &[6], &[L56]),
    (&[L6, L46], &[6], &[L6]),
    (&[L6, L56], &[5, 6], &[L6, L56]),
];

const L10: &[u32] = &[1, 2, 3, 4, 5, 6, 10];
const L13: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13];
const L1013: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13];
const L14: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14];
const L15: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15];
const L1315: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15];
const ROWS_AT_10: &[Row] = &[
    (&[L10, L15, L1315], &[15], &[L15]),
    (&[L10, L1013, L14], &[], &[]),
    (&[L10, L1013, L1315], &[15], &[L1315]),
    (&[L13, L1013, L14], &[13], &[L13]),
    (&[L13, L1013, L1315], &[13, 15], &[L13, L1315]),
];

const L9: &[u32] = &[7, 9];
const L11: &[u32] = &[7, 8, 11];
const L911: &[u32] = &[7, 8, 9, 11];
const L12: &[u32] = &[7, 9, 12];
const ROWS_AT_9: &[Row] = &[
    (&[L11, L911], &[11], &[L11]),
    (&[L9, L911], &[], &[]),
    (&[L9, L12], &[12], &[L12]),
];

const L16: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16];
const L17: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 17];
const ROWS_AT_16: &[Row] = &[(&[L16], &[], &[]), (&[L17], &[17], &[L17])];

type TableKey = Vec<Vec<u32>>;
type TableValue = (Vec<u32>, Vec<Vec<u32>>);

fn actual_table(
    g: &IdealGraph,
    lists: &[Vec<MaxIndSet>],
    tables: &[Vec<DescentData>],
    r: usize,
) -> BTreeMap<TableKey, TableValue> {
    lists[r]
        .iter()
        .zip(tables[r].iter())
        .map(|(m, dd)| {
            let mut key: TableKey = m
                .members()
                .iter()
                .map(|&v| g.ideal(v).members().elems().collect())
                .collect();
            key.sort();
            let value = (
                dd.elements.clone(),
                dd.ideals
                    .iter()
                    .map(|j| j.members().elems().collect())
                    .collect(),
            );
            (key, value)
        })
        .collect()
}

fn expected_table(rows: &[Row]) -> BTreeMap<TableKey, TableValue> {
    rows.iter()
        .map(|(members, des, odes)| {
            let mut key: TableKey = members.iter().map(|m| m.to_vec()).collect();
            key.sort();
            (key, (des.to_vec(), odes.iter().map(|j| j.to_vec()).collect()))
        })
        .collect()
}

#[test]
fn seventeen_element_descent_tables() {
    let _m = marker("acceptance 3 (seventeen-element descent tables)");
    let p = fixture("seventeen.poset");
    let g = ideal_graph(&p, MAX_IDEALS).unwrap();
    assert_eq!(g.vertex_count(), 27);
    assert_eq!(g.components().len(), 13);

    let lists = component_mis_lists(&g, MAX_MIS).unwrap();
    let tables = component_descent_tables(&p, &g, &lists, None).unwrap();

    // The four components with choice, anchored by a principal ideal
    // they contain, carry 6, 5, 3 and 2 maximum independent sets.
    let mut anchored = Vec::new();
    for (element, rows) in [
        (4u32, ROWS_AT_4),
        (10, ROWS_AT_10),
        (9, ROWS_AT_9),
        (16, ROWS_AT_16),
    ] {
        let r = g.component_of(g.principal_vertex(element)) as usize;
        anchored.push(r);
        assert_eq!(lists[r].len(), rows.len(), "element {element}");
        assert_eq!(
            actual_table(&g, &lists, &tables, r),
            expected_table(rows),
            "component anchored at element {element}"
        );
    }
    anchored.sort_unstable();
    anchored.dedup();
    assert_eq!(anchored.len(), 4);

    // Every other component offers exactly one choice.
    for r in 0..lists.len() {
        if !anchored.contains(&r) {
            assert_eq!(lists[r].len(), 1);
        }
    }
    let product: usize = lists.iter().map(|l| l.len()).product();
    assert_eq!(product, 180);
}

#[test]
fn generating_function_identities() {
    let _m = marker("acceptance 4 (generating-function identities on random corpus)");
    let start = Instant::now();
    for (k, q) in corpus().into_iter().enumerate() {
        let g = ideal_graph(&q, MAX_IDEALS).unwrap();
        let lists = component_mis_lists(&g, MAX_MIS).unwrap();
        let tables = component_descent_tables(&q, &g, &lists, None).unwrap();
        let gf = factored_fpx(&q, &g, &lists, &tables).unwrap();

        let poly = fpq(&gf).unwrap();
        let direct = oracle_maj_polynomial(&q, MAX_EXTENSIONS).unwrap();
        assert_eq!(poly, direct, "poset {k}: {q:?}");

        let count = count_linear_extensions(&g, &lists).unwrap();
        assert_eq!(poly.eval_one(), count, "poset {k}: {q:?}");

        let expanded = expand_factored(&gf, 6, SERIES_TERMS).unwrap();
        let scanned = oracle_ppartition_series(&q, 6).unwrap();
        assert_eq!(expanded, scanned, "poset {k}: {q:?}");

        if g.is_forest_with_duplications() {
            let alt = fpx_duplication_path(&q, &g).unwrap();
            let alt_expanded = expand_factored(&alt, 6, SERIES_TERMS).unwrap();
            assert_eq!(alt_expanded, expanded, "poset {k}: {q:?}");
        }
    }
    assert!(start.elapsed() < Duration::from_secs(300));
}

#[test]
fn bijection_and_structure_suite() {
    let _m = marker("acceptance 5 (bijection and structure suite)");

    // Non-circular anchor: on the six-element example the structured
    // forest enumeration equals a raw parent-map scan.
    let p6 = fixture("six.poset");
    let g6 = ideal_graph(&p6, MAX_IDEALS).unwrap();
    assert_eq!(
        oracle_pforests(&p6).unwrap(),
        enumerate_pforests(&p6, &g6, MAX_MIS).unwrap()
    );

    for (k, q) in corpus().into_iter().enumerate() {
        let g = ideal_graph(&q, MAX_IDEALS).unwrap();
        let lists = component_mis_lists(&g, MAX_MIS).unwrap();
        let globals = global_mis_from_lists(&g, &lists, MAX_MIS).unwrap();

        for m in &globals {
            assert_eq!(m.len(), q.n() as usize, "poset {k}: {q:?}");
            // Labels exist, are maximal in their member, and biject.
            label_map(&q, &g, m).unwrap();
            // Descents agree along the forest and the cover routes.
            mis_descents(&q, &g, m).unwrap();
            // A containment cover lands among the maximal strictly
            // contained members.
            for &va in m.members() {
                for &vb in m.members() {
                    if va == vb {
                        continue;
                    }
                    let a = g.ideal(va);
                    let b = g.ideal(vb);
                    if is_containment_cover(&g, m, a, b).unwrap() {
                        let maximal = maximal_contained(&g, m, b).unwrap();
                        assert!(
                            maximal.iter().any(|u| u.members() == a.members()),
                            "poset {k}: {q:?}"
                        );
                    }
                }
            }
        }

        // Inverse then forward is the identity; the image set is the
        // full set of global maximum independent sets.
        let forests = enumerate_pforests(&q, &g, MAX_MIS).unwrap();
        assert_eq!(forests.len(), globals.len());
        let mut images: Vec<MaxIndSet> = forests
            .iter()
            .map(|f| forest_to_mis(&g, f).unwrap())
            .collect();
        images.sort();
        assert_eq!(images, globals, "poset {k}: {q:?}");
        for f in &forests {
            let m = forest_to_mis(&g, f).unwrap();
            let back = pforest::forest::mis_to_forest(&q, &g, &m).unwrap();
            assert_eq!(&back, f);
        }
        if q.n() <= 5 {
            assert_eq!(oracle_pforests(&q).unwrap(), forests, "poset {k}: {q:?}");
        }

        // Generator subgraphs are connected; the union of a component's
        // ideals is an isolated connected ideal.
        for j in g.ideals() {
            generator_subgraph(&q, &g, j).unwrap();
        }
        for r in 0..g.components().len() {
            component_union_ideal(&q, &g, r).unwrap();
        }

        // Component descents are independent of how the other
        // components are extended, checked over every combination.
        if globals.len() <= 50 {
            component_descent_tables(&q, &g, &lists, Some(50)).unwrap();
        }
    }
}

#[test]
fn extension_decomposition() {
    let _m = marker("acceptance 6 (extension decomposition)");
    for (k, q) in corpus().into_iter().enumerate() {
        let report = verify_decomposition(&q, MAX_IDEALS, MAX_MIS, 50_000).unwrap();
        let total: u64 = report.per_forest.iter().sum();
        assert_eq!(total, report.total, "poset {k}: {q:?}");

        let g = ideal_graph(&q, MAX_IDEALS).unwrap();
        let lists = component_mis_lists(&g, MAX_MIS).unwrap();
        assert_eq!(
            BigInt::from(report.total),
            count_linear_extensions(&g, &lists).unwrap(),
            "poset {k}: {q:?}"
        );
    }
}

#[test]
fn exactness_guards() {
    let _m = marker("acceptance 7 (exactness guards)");

    // Polynomial division refuses nonzero remainders.
    let bad = QPoly::one().add(&QPoly::monomial(BigInt::from(1), 1));
    match bad.div_exact(&q_term(1)) {
        Err(e @ Error::TheoremViolation { .. }) => assert_eq!(e.exit_code(), 3),
        other => panic!("expected a violation, got {other:?}"),
    }
    assert!(QPoly::one().div_exact(&QPoly::zero()).is_err());

    // A tampered factored form (an extra denominator bracket nothing
    // cancels) trips the same guard inside the specialization.
    let q = Poset::new(2, &[]).unwrap();
    let g = ideal_graph(&q, MAX_IDEALS).unwrap();
    let lists = component_mis_lists(&g, MAX_MIS).unwrap();
    let tables = component_descent_tables(&q, &g, &lists, None).unwrap();
    let mut gf = factored_fpx(&q, &g, &lists, &tables).unwrap();
    let extra = pforest::ElemSet::from_elems(2, [1, 2]);
    gf.factors[0].terms[0]
        .denominator_ideals
        .extend([extra.clone(), extra.clone(), extra]);
    assert!(matches!(fpq(&gf), Err(Error::TheoremViolation { .. })));

    // The honest pipeline passes both guards on the full corpus; spot
    // check the integrality assertion on the larger fixture too.
    let p = fixture("seventeen.poset");
    let g = ideal_graph(&p, MAX_IDEALS).unwrap();
    let lists = component_mis_lists(&g, MAX_MIS).unwrap();
    assert!(count_linear_extensions(&g, &lists).is_ok());
    let tables = component_descent_tables(&p, &g, &lists, None).unwrap();
    let gf = factored_fpx(&p, &g, &lists, &tables).unwrap();
    assert!(fpq(&gf).is_ok());
}
