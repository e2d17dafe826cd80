use onep::certify::{check_claw_cover, check_independent, check_planar_pairing, Certificate};
use onep::families::{generate, Family, FamilySpec};
use onep::solver::{brute_force_oracle, max_d_independent_set, Budget, SolveStatus};
use onep::transforms::insert_h3_at_pairing;

fn spec(f: Family, s: usize) -> FamilySpec {
    FamilySpec::new(f).s(s)
}

#[test]
fn g4_smallest_has_four() {
    let r = generate(&spec(Family::G4, 1)).unwrap();
    let sol = max_d_independent_set(r.drawing.graph(), 4, Budget::default());
    assert_eq!((sol.size, sol.status), (4, SolveStatus::Optimal));
    assert_eq!(brute_force_oracle(r.drawing.graph(), 4).unwrap().size, 4);
}

#[test]
fn s6_two_rings_has_three() {
    let r = generate(&spec(Family::S6, 2)).unwrap();
    assert_eq!(r.drawing.vertex_count(), 9);
    assert_eq!(max_d_independent_set(r.drawing.graph(), 6, Budget::default()).size, 3);
    assert_eq!(brute_force_oracle(r.drawing.graph(), 6).unwrap().size, 3);
}

#[test]
fn h3_oracle_finds_the_terminals() {
    let r = generate(&FamilySpec::new(Family::H3)).unwrap();
    let o = brute_force_oracle(r.drawing.graph(), 3).unwrap();
    assert_eq!(o.witness, vec![0, 2]);
}

#[test]
fn two_h3_rounds_on_g3() {
    let g3 = generate(&spec(Family::G3, 3)).unwrap();
    let g9 = insert_h3_at_pairing(&insert_h3_at_pairing(&g3).unwrap()).unwrap();
    let (n, i) = (g9.drawing.vertex_count(), g9.certificate.set.len());
    assert_eq!(n - 2, 3 * i);
    assert_eq!(g9.certificate.d, 9);
    assert!(check_independent(g9.drawing.graph(), &g9.certificate).passed);
    let small = generate(&spec(Family::G3, 1)).unwrap();
    let g9 = insert_h3_at_pairing(&insert_h3_at_pairing(&small).unwrap()).unwrap();
    let sol = max_d_independent_set(g9.drawing.graph(), 9, Budget::default());
    assert_eq!(sol.size, g9.certificate.set.len());
}

#[test]
fn s6_is_not_seven_independent() {
    let r = generate(&spec(Family::S6, 4)).unwrap();
    let c = Certificate::new(7, r.certificate.set.clone());
    assert!(!check_independent(r.drawing.graph(), &c).passed);
}

#[test]
fn pairings_and_claws_of_the_illustrated_instances() {
    let g3 = generate(&spec(Family::G3, 5)).unwrap();
    assert!(check_planar_pairing(&g3.drawing, &g3.certificate).passed);
    let s13 = generate(&spec(Family::S13, 3)).unwrap();
    assert!(check_planar_pairing(&s13.drawing, &s13.certificate).passed);
    let s18 = generate(&spec(Family::S18, 2)).unwrap();
    assert!(check_claw_cover(s18.drawing.graph(), &s18.certificate).passed);
    let g5 = generate(&spec(Family::G5, 3)).unwrap();
    assert!(check_independent(g5.drawing.graph(), &g5.certificate).passed);
}
