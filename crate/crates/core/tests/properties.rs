use onep::bounds::{evaluate_bounds, Hypothesis};
use onep::cli::Instance;
use onep::families::{generate, ConstructionResult, Family, FamilySpec};
use onep::graph_core::{DrawingJson, MultiGraph, OnePlaneDrawing};
use onep::solver::{brute_force_oracle, max_d_independent_set, Budget};
use onep::transforms::{delete_edges, insert_k2x_at_pairing};
use proptest::prelude::*;

fn family_spec() -> impl Strategy<Value = FamilySpec> {
    use Family::*;
    prop_oneof![
        (prop_oneof![Just(G3), Just(G4), Just(G5), Just(S3), Just(S6), Just(M6)], 1..=4usize)
            .prop_map(|(f, s)| FamilySpec::new(f).s(s)),
        (prop_oneof![Just(S7), Just(S13)], 0..=2usize).prop_map(|(f, s)| FamilySpec::new(f).s(2 * s + 1)),
        (2..=4usize).prop_map(|s| FamilySpec::new(S18).s(s)),
        (0..=1usize).prop_map(|l| FamilySpec::new(M7).level(l)),
        (3..=5usize, 1..=3usize).prop_map(|(d, s)| FamilySpec::new(QHat).d(d).s(s)),
        (2..=5usize, 1..=4usize).prop_map(|(d, m)| FamilySpec::new(QQuad).d(d).m(2 * m)),
        (2..=4usize, 1..=3usize).prop_map(|(d, m)| FamilySpec::new(OOptimal).d(d).m(2 * m)),
        (3..=9usize).prop_map(|d| FamilySpec::new(Gd).d(d).s(2)),
    ]
}

fn random_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            let edges = pairs.into_iter().filter(|(u, v)| u != v).collect();
            MultiGraph::new(n, edges).unwrap()
        })
    })
}

fn euler_holds(dr: &OnePlaneDrawing) -> bool {
    let cr = dr.crossings().len();
    let v = dr.vertex_count() + cr;
    let e = dr.edge_count() + 2 * cr;
    v + dr.face_count() == e + 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_drawings_are_consistent(spec in family_spec()) {
        let r = generate(&spec).unwrap();
        let dr = &r.drawing;
        prop_assert!(euler_holds(dr));
        let mut seen = vec![0usize; 4 * dr.edge_count()];
        let mut darts = 0;
        for f in 0..dr.face_count() {
            for &d in dr.face(f) {
                prop_assert_eq!(dr.face_of(d), f);
                seen[d.index()] += 1;
                darts += 1;
            }
        }
        prop_assert_eq!(darts, 2 * (dr.edge_count() + 2 * dr.crossings().len()));
        prop_assert!(seen.iter().all(|&c| c <= 1));
        let deg = dr.graph().degree_vec();
        prop_assert_eq!(deg.iter().sum::<usize>(), 2 * dr.edge_count());
        prop_assert!(r.certificate.set.iter().all(|&v| deg[v] >= r.certificate.d));
    }

    #[test]
    fn json_round_trip(spec in family_spec()) {
        let r = generate(&spec).unwrap();
        let j = DrawingJson::from_drawing(&r.drawing);
        let text = serde_json::to_string(&j).unwrap();
        let back: DrawingJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &j);
        prop_assert_eq!(back.build().unwrap(), r.drawing.clone());
        let inst = Instance::from_result(&r, Some(spec));
        let again: Instance = serde_json::from_str(&serde_json::to_string(&inst).unwrap()).unwrap();
        prop_assert_eq!(again, inst);
    }

    #[test]
    fn edge_deletion_keeps_drawings_valid(spec in family_spec(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let r = generate(&spec).unwrap();
        let gone: Vec<usize> = picks.iter().map(|i| i.index(r.drawing.edge_count())).collect();
        if let Ok(dr) = delete_edges(&r.drawing, &gone) {
            prop_assert!(euler_holds(&dr));
            prop_assert!(dr.edge_count() < r.drawing.edge_count());
            prop_assert!(dr.crossings().len() <= r.drawing.crossings().len());
        }
    }

    #[test]
    fn k2x_raises_degrees_by_x(s in 1..=3usize, x in 1..=3usize) {
        let base = generate(&FamilySpec::new(Family::G4).s(s)).unwrap();
        let out = insert_k2x_at_pairing(&base, x).unwrap();
        prop_assert_eq!(out.certificate.set.len(), base.certificate.set.len());
        prop_assert_eq!(out.certificate.d, base.certificate.d + x);
        let deg = out.drawing.graph().degree_vec();
        let min_i = out.certificate.set.iter().map(|&v| deg[v]).min().unwrap();
        prop_assert_eq!(min_i, base.certificate.d + x);
    }

    #[test]
    fn solver_matches_oracle(g in random_graph(18), d in 0..6usize) {
        let sol = max_d_independent_set(&g, d, Budget::default());
        let oracle = brute_force_oracle(&g, d).unwrap();
        prop_assert_eq!(sol.size, oracle.size);
        let adj = g.neighbors();
        let deg = g.degree_vec();
        for &v in &sol.witness {
            prop_assert!(deg[v] >= d);
            prop_assert!(sol.witness.iter().all(|u| !adj[v].contains(u)));
        }
    }

    #[test]
    fn solver_is_monotone_in_d(g in random_graph(30)) {
        let sizes: Vec<usize> = (0..8).map(|d| max_d_independent_set(&g, d, Budget::default()).size).collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn thread_count_does_not_change_size(g in random_graph(40), threads in 2..5usize) {
        let one = max_d_independent_set(&g, 2, Budget::default());
        let many = max_d_independent_set(&g, 2, Budget { threads, ..Budget::default() });
        prop_assert_eq!(one.size, many.size);
    }

    #[test]
    fn bounds_shrink_with_more_hypotheses(d in 1..30usize, n in 3..500usize) {
        use Hypothesis::*;
        let weak = evaluate_bounds(d, n, &[BigonFree]).unwrap().best;
        let strong = evaluate_bounds(d, n, &[Simple, BigonFree]).unwrap().best;
        if let (Some(w), Some(s)) = (weak, strong) {
            prop_assert!(s <= w);
        }
    }
}

#[test]
fn construction_results_pass_their_own_checks() {
    let r: ConstructionResult = generate(&FamilySpec::new(Family::S13).s(3)).unwrap();
    assert!(r.flags.simple && r.flags.bigon_free);
}
