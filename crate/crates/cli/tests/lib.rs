use permtool::run::trial_seed;
use permtool::{bench, fit_exponent, run_once, Algo, Check, Config, FitError, Shape, SizeRange, Task};

fn cfg(task: Task, algo: Algo) -> Config {
    Config { task, algo, epsilon: 0.5, b: None, check: true }
}

#[test]
fn fit_examples() {
    let sq: Vec<(f64, f64)> = (1..=6).map(|k| (k as f64 * 10.0, (k as f64 * 10.0).powi(2))).collect();
    assert!((fit_exponent(&sq).unwrap() - 2.0).abs() < 1e-6);
    let nlogn: Vec<(f64, f64)> = (10..=16).map(|k| ((1u64 << k) as f64, (k << k) as f64)).collect();
    let s = fit_exponent(&nlogn).unwrap();
    // the local slope 1 + 1/ln n across the range
    let band = 1.0 + 1.0 / (65536f64).ln()..=1.0 + 1.0 / (1024f64).ln();
    assert!(band.contains(&s), "{s}");
    let flat = [(1.0, 7.0), (2.0, 7.0), (4.0, 7.0)];
    assert!(fit_exponent(&flat).unwrap().abs() < 1e-12);
    assert_eq!(fit_exponent(&flat[..2]), Err(FitError::TooFewPoints(2)));
    assert_eq!(fit_exponent(&[(5.0, 1.0), (5.0, 2.0), (5.0, 3.0)]), Err(FitError::Degenerate));
    assert!(matches!(fit_exponent(&[(1.0, 0.0), (2.0, 1.0), (3.0, 1.0)]), Err(FitError::NonPositive(..))));
}

#[test]
fn size_ranges() {
    let r: SizeRange = "1024..65536x2".parse().unwrap();
    assert_eq!(r.0, vec![1024, 2048, 4096, 8192, 16384, 32768, 65536]);
    assert_eq!("10..40+10".parse::<SizeRange>().unwrap().0, vec![10, 20, 30, 40]);
    assert_eq!("5,7,9".parse::<SizeRange>().unwrap().0, vec![5, 7, 9]);
    assert_eq!("3..20".parse::<SizeRange>().unwrap().0, vec![3, 6, 12]);
    for bad in ["", "0..4", "9..3", "1..8x1", "a..b", "4..9+0"] {
        assert!(bad.parse::<SizeRange>().is_err(), "{bad}");
    }
}

#[test]
fn checked_runs_pass() {
    let p = vec![2, 3, 4, 1];
    let out = run_once(&cfg(Task::Leaders, Algo::Blocal), &p, None).unwrap();
    assert_eq!((out.output.trim(), out.report.b, out.report.oracle_check), ("3", Some(2), Check::Pass));
    for task in [Task::Leaders, Task::Permute, Task::Invert] {
        for algo in [Algo::Naive, Algo::Logspace, Algo::Blocal] {
            let p = permtool::run::generate(Shape::Random, 300, 4).unwrap();
            let r = run_once(&cfg(task, algo), &p, None).unwrap().report;
            assert_eq!(r.oracle_check, Check::Pass, "{task:?} {algo:?}");
            assert_eq!(r.writes > 0, task == Task::Invert);
        }
    }
    let data: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
    let out = run_once(&cfg(Task::Permute, Algo::Logspace), &[2, 3, 1], Some(&data)).unwrap();
    assert_eq!(out.output.trim(), "c a b");
    assert!(run_once(&cfg(Task::Permute, Algo::Naive), &[2, 3, 1], Some(&data[..2])).is_err());
}

#[test]
fn b_override_is_reported() {
    let c = Config { b: Some(1), ..cfg(Task::Leaders, Algo::Blocal) };
    let r = run_once(&c, &[2, 3, 4, 1], None).unwrap().report;
    assert_eq!((r.b, r.epsilon), (Some(1), Some(0.5)));
    let bad = Config { epsilon: 0.0, ..c };
    assert_eq!(run_once(&bad, &[1], None).unwrap_err().exit_code(), 2);
}

#[test]
fn digests_are_deterministic() {
    let sizes: SizeRange = "64..256x2".parse().unwrap();
    let c = cfg(Task::Invert, Algo::Blocal);
    let (a, sa) = bench(&c, &sizes, 2, 9, Shape::Random).unwrap();
    let (b, sb) = bench(&c, &sizes, 2, 9, Shape::Random).unwrap();
    assert_eq!(sa, sb);
    let key = |r: &permtool::RunReport| (r.digest.clone(), r.reads, r.writes, r.peak_words, r.seed);
    assert_eq!(a.iter().map(key).collect::<Vec<_>>(), b.iter().map(key).collect::<Vec<_>>());
    assert_ne!(a[0].digest, a[1].digest);
    assert_ne!(trial_seed(1, 64, 0), trial_seed(1, 64, 1));
}

#[test]
fn naive_rotation_is_quadratic() {
    let sizes: SizeRange = "128..1024x2".parse().unwrap();
    let (_, slope) = bench(&cfg(Task::Leaders, Algo::Naive), &sizes, 1, 0, Shape::Rotation).unwrap();
    assert!((slope - 2.0).abs() < 1e-9, "{slope}");
}
