use inplace_perm::permute::{permute, rotate_cycle};
use inplace_perm::testkit::{cycles, random_perm, ref_permute};
use inplace_perm::{BParams, LeaderAlgo, PermTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn algos(n: usize) -> [LeaderAlgo; 4] {
    [
        LeaderAlgo::Naive,
        LeaderAlgo::Logspace,
        LeaderAlgo::Blocal(BParams::from_epsilon(n, 1.0 / 3.0).unwrap()),
        LeaderAlgo::Blocal(BParams::from_epsilon(n, 0.5).unwrap()),
    ]
}

#[test]
fn three_cycle_for_every_algo() {
    let t = PermTable::from_perm(vec![2, 3, 1]).unwrap();
    for algo in algos(3) {
        let mut a = vec!["a", "b", "c"];
        permute(&mut a, &t, algo).unwrap();
        assert_eq!(a, ["c", "a", "b"]);
    }
    let id = PermTable::identity(4);
    let mut a = vec![1, 2, 3, 4];
    permute(&mut a, &id, LeaderAlgo::Logspace).unwrap();
    assert_eq!(a, [1, 2, 3, 4]);
}

#[test]
fn random_against_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..60 {
        let n = rng.gen_range(1..=1500);
        let p = random_perm(&mut rng, n);
        let data: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
        let want = ref_permute(&data, &p);
        let t = PermTable::from_perm(p.clone()).unwrap();
        for algo in algos(n) {
            let mut a = data.clone();
            let leaders = permute(&mut a, &t, algo).unwrap();
            assert_eq!(a, want, "{algo:?}");
            assert_eq!(leaders.len(), cycles(&p).len());
        }
        assert_eq!(t.stats().writes, 0);
        assert_eq!(t.to_perm(), Some(p));
    }
}

#[test]
fn rotating_a_cycle_len_times_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = random_perm(&mut rng, 50);
    let t = PermTable::from_perm(p.clone()).unwrap();
    for c in cycles(&p) {
        let mut a: Vec<usize> = (1..=50).collect();
        for _ in 0..c.len() {
            rotate_cycle(&mut a, &t, c[0]).unwrap();
        }
        assert_eq!(a, (1..=50).collect::<Vec<_>>());
    }
}

#[test]
fn rotation_uses_one_word() {
    let t = PermTable::from_perm(vec![2, 3, 4, 5, 1]).unwrap();
    let mut a = vec![0; 5];
    rotate_cycle(&mut a, &t, 1).unwrap();
    use inplace_perm::Successor;
    assert_eq!(t.meter().peak(), 1);
}
