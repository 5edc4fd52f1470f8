use std::f64::consts::PI;

use proptest::prelude::*;
use qksvm_core::data::{
    fit_pca, fit_scaler, gen_hard, load_csv, stratified_split, write_csv, Dataset, HardKind,
    ScalerKind, Source,
};

fn dataset(x: Vec<Vec<f64>>, y: Vec<usize>, n_classes: usize) -> Dataset {
    let d = x[0].len();
    Dataset::new(
        x,
        y,
        (0..d).map(|i| format!("f{i}")).collect(),
        (0..n_classes).map(|c| format!("c{c}")).collect(),
        Source::File {
            path: "memory".into(),
            label_column: "label".into(),
        },
    )
    .unwrap()
}

fn arb_labelled(max_rows: usize) -> impl Strategy<Value = Dataset> {
    (4usize..max_rows, 1usize..4).prop_flat_map(|(m, d)| {
        (
            proptest::collection::vec(proptest::collection::vec(-50.0f64..50.0, d), m),
            proptest::collection::vec(0usize..2, m),
        )
            .prop_map(|(x, mut y)| {
                // both classes with at least two members
                y[0] = 0;
                y[1] = 0;
                y[2] = 1;
                y[3] = 1;
                dataset(x, y, 2)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn split_is_a_stratified_partition(ds in arb_labelled(60), frac in 0.1f64..0.9, seed in 0u64..1000) {
        let s = stratified_split(&ds, frac, seed).unwrap();
        let mut all: Vec<usize> = s.indices.train.iter().chain(&s.indices.test).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..ds.len()).collect::<Vec<_>>());
        prop_assert!(s.indices.train.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(s.indices.test.windows(2).all(|w| w[0] < w[1]));
        for class in 0..2 {
            let n = ds.y.iter().filter(|&&l| l == class).count();
            let want = ((frac * n as f64).round() as usize).clamp(1, n - 1);
            prop_assert_eq!(s.train.y.iter().filter(|&&l| l == class).count(), want);
        }
        prop_assert_eq!(&s, &stratified_split(&ds, frac, seed).unwrap());
    }

    #[test]
    fn minmax_lands_exactly_in_range(ds in arb_labelled(40)) {
        let p = fit_scaler(&ds, ScalerKind::MinMax, 0.0, PI).unwrap();
        let z = p.apply(&ds.x).unwrap();
        for col in 0..ds.n_features() {
            let vals: Vec<f64> = z.iter().map(|r| r[col]).collect();
            prop_assert!(vals.iter().all(|&v| (0.0..=PI).contains(&v)));
            let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
            prop_assert_eq!(min, 0.0);
        }
    }

    #[test]
    fn standard_scaler_centres(ds in arb_labelled(40)) {
        let p = fit_scaler(&ds, ScalerKind::Standard, 0.0, 1.0).unwrap();
        let z = p.apply(&ds.x).unwrap();
        let m = z.len() as f64;
        for col in 0..ds.n_features() {
            let mean = z.iter().map(|r| r[col]).sum::<f64>() / m;
            prop_assert!(mean.abs() < 1e-9);
        }
    }
}

#[test]
fn pca_finds_the_dominant_direction() {
    // points on the line y = 2x with a small orthogonal wobble
    let x: Vec<Vec<f64>> = (0..40)
        .map(|i| {
            let t = (i / 2) as f64 / 2.0 - 5.0;
            let wobble = if i % 2 == 0 { 0.05 } else { -0.05 };
            vec![t - 2.0 * wobble, 2.0 * t + wobble]
        })
        .collect();
    let ds = dataset(x, vec![0; 40], 1);
    let p = fit_pca(&ds, 1).unwrap();
    let c = &p.components[0];
    let norm = (c[0] * c[0] + c[1] * c[1]).sqrt();
    assert!((norm - 1.0).abs() < 1e-12);
    assert!((c[0] / norm - 1.0 / 5f64.sqrt()).abs() < 1e-9);
    assert!((c[1] / norm - 2.0 / 5f64.sqrt()).abs() < 1e-9);
    let z = p.apply(&ds.x).unwrap();
    let back = p.reconstruct(&z);
    for (a, b) in back.iter().zip(&ds.x) {
        assert!((a[0] - b[0]).abs() < 0.2 && (a[1] - b[1]).abs() < 0.2);
    }
}

#[test]
fn csv_round_trip_and_row_errors() {
    let ds = gen_hard(10, HardKind::Rings, 0.05, 5).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rings.csv");
    write_csv(&ds, &path).unwrap();
    let back = load_csv(&path, "label").unwrap();
    assert_eq!(back.x, ds.x);
    assert_eq!(back.y, ds.y);

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "a,b,label\n1,2,x\n3,oops,y\n").unwrap();
    let msg = load_csv(&bad, "label").unwrap_err().to_string();
    assert!(msg.contains('3') && msg.contains('b'), "{msg}");
    assert!(load_csv(&path, "target").is_err());
}
