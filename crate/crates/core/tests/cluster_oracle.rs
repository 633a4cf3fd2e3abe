use cpap_core::cluster::{
    clusters_15243_with, gj_invert, OverlapFamily, Shift15243,
};
use cpap_core::dp::count_series;
use cpap_core::perm::{brute_cluster_row, ClusterCounting};
use dashu::integer::UBig;

const N: usize = 11;

fn families() -> Vec<OverlapFamily> {
    vec![
        OverlapFamily::OneM { m: 4 },
        OverlapFamily::OneM { m: 5 },
        OverlapFamily::OneM { m: 6 },
        OverlapFamily::General { m: 5, c: 1 },
        OverlapFamily::General { m: 6, c: 1 },
        OverlapFamily::General { m: 6, c: 2 },
        OverlapFamily::General { m: 7, c: 1 },
        OverlapFamily::General { m: 7, c: 2 },
        OverlapFamily::General { m: 7, c: 3 },
        OverlapFamily::Tree { m: 4 },
        OverlapFamily::Tree { m: 5 },
        OverlapFamily::Tree { m: 6 },
        OverlapFamily::P14523,
        OverlapFamily::P15243,
    ]
}

#[test]
fn recurrences_match_brute_force_clusters() {
    for fam in families() {
        let pat = fam.representative().unwrap();
        let tab = fam.table(N).unwrap();
        for n in 1..=N {
            let want: Vec<UBig> = brute_cluster_row(&pat, n, ClusterCounting::Marked)
                .unwrap()
                .into_iter()
                .map(UBig::from)
                .collect();
            assert_eq!(tab.row(n), &want[..], "{fam} ({pat}) n={n}");
        }
    }
}

#[test]
fn printed_15243_shift_disagrees_with_brute_force() {
    let pat = OverlapFamily::P15243.representative().unwrap();
    let printed = clusters_15243_with(N, Shift15243::Printed).unwrap();
    let differs = (1..=N).any(|n| {
        let want: Vec<UBig> = brute_cluster_row(&pat, n, ClusterCounting::Marked)
            .unwrap()
            .into_iter()
            .map(UBig::from)
            .collect();
        printed.row(n) != &want[..]
    });
    assert!(differs);
}

#[test]
fn cluster_inversion_matches_dp() {
    for fam in families().into_iter().filter(|f| f.length() <= 6) {
        let pat = fam.representative().unwrap();
        let t = fam.table(25).unwrap().signed_sum();
        let c = gj_invert(&t, 25).unwrap();
        let dp = count_series(&pat, 25).unwrap();
        assert_eq!(c.counts(), dp.counts(), "{fam}");
    }
}
