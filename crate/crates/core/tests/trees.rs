use hurwitz_atlas::dendrology::{
    distance_counts, distance_counts_brute, moment_prediction, moment_series, path_moments, path_moments_counted,
    MomentKind,
};

#[test]
fn distance_table_matches_enumeration() {
    for n in 1..=8 {
        assert_eq!(distance_counts(n), distance_counts_brute(n).unwrap(), "n = {n}");
    }
}

#[test]
fn moments_match_their_series() {
    for kind in [MomentKind::M, MomentKind::P] {
        for k in 1..=5 {
            assert_eq!(moment_prediction(k, kind).to_series(20), moment_series(k, kind, 20), "{} k = {k}", kind.name());
            for n in 2..=7 {
                assert_eq!(path_moments(n, k, kind).unwrap(), path_moments_counted(n, k, kind));
            }
        }
    }
}

#[test]
fn enumeration_is_guarded() {
    assert!(path_moments(9, 1, MomentKind::M).is_err());
}
