use super::*;
use crate::catalog::build_named;
use crate::linalg::{q, scale_vec};

fn datum(name: &str) -> RootDatum {
    decompose(&build_named(name).unwrap()).unwrap()
}

#[test]
fn sl3_is_a2_with_trivial_m() {
    let rd = datum("sl3R");
    assert_eq!(rd.positive().len(), 3);
    assert_eq!(rd.m_basis().dim(), 0);
    assert_eq!(rd.simple().len(), 2);
    assert_eq!(rd.heights(), &[1, 1, 2]);
    assert!((0..3).all(|i| rd.multiplicity(i) == 1));
    assert!(!rd.is_decomposable());
}

#[test]
fn real_hyperbolic_has_one_root() {
    let rd = datum("so(1,3)");
    assert_eq!(rd.positive().len(), 1);
    assert_eq!(rd.multiplicity(0), 2);
    assert!(rd.nilpotent().is_abelian());
    assert_eq!(rd.m_basis().dim(), 1);
}

#[test]
fn su23_is_bc2() {
    let rd = datum("su(2,3)");
    assert_eq!(rd.algebra().dim(), 24);
    assert_eq!(rd.m_basis().dim(), 2);
    assert_eq!(rd.nilpotent().dim(), 10);
    let mut pattern: Vec<(Vec<i64>, usize)> = (0..rd.positive().len())
        .map(|i| (rd.coefficients(i).to_vec(), rd.multiplicity(i)))
        .collect();
    pattern.sort();
    let mults: Vec<usize> = pattern.iter().map(|p| p.1).collect();
    // BC2: two long-ish roots of multiplicity 2, four short of multiplicity 1 or 2
    assert_eq!(rd.positive().len(), 6);
    assert_eq!(mults.iter().sum::<usize>(), 10);
}

#[test]
fn coroots_evaluate_to_two() {
    let rd = datum("sl3R");
    for gamma in rd.roots() {
        let h = rd.coroot(&gamma).unwrap();
        let x = rd.root_space(&gamma).unwrap().vectors()[0].clone();
        assert_eq!(rd.algebra().bracket_coords(&h, &x), scale_vec(&q(2), &x));
    }
    let w = rd.omega().unwrap();
    assert_eq!(rd.root_inner(&rd.positive()[w], &rd.positive()[w]), q(2));
    assert!(rd.coroot(&[q(5), q(7)]).is_err());
}

#[test]
fn highest_split_shapes() {
    let a2 = datum("sl3R");
    let s = a2.highest_split().unwrap();
    assert_eq!(s.sigma1, a2.simple().to_vec());
    assert!(s.sigma0_pos.is_empty());
    assert_eq!((s.v.dim(), s.z.dim()), (2, 1));

    let b2 = datum("so(2,5)");
    let s = b2.highest_split().unwrap();
    assert_eq!(s.sigma1.len(), 2);
    assert_eq!(s.sigma0_pos.len(), 1);
    assert_eq!((s.v.dim(), s.z.dim(), s.n0.dim()), (6, 1, 1));

    let r1 = datum("su(1,2)");
    let s = r1.highest_split().unwrap();
    assert_eq!((s.v.dim(), s.z.dim()), (2, 1));

    let split = datum("so(2,2)");
    assert!(split.is_decomposable());
    assert!(matches!(
        split.highest_split(),
        Err(Error::DecomposableSystem)
    ));
}

#[test]
fn rank_two_slices() {
    let g2 = datum("split-G2");
    let [a, b] = [
        &g2.positive()[g2.simple()[0]],
        &g2.positive()[g2.simple()[1]],
    ];
    let slice = g2.rank_two_subalgebra(a, b).unwrap();
    assert_eq!(slice.root_count(), 6);
    assert_eq!(slice.max_height(), 5);

    let a3 = datum("sl4R");
    let s = a3.simple_roots();
    let (x, y) = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .find(|&(i, j)| a3.root_inner(&s[i], &s[j]) == q(0))
        .unwrap();
    let orth = a3.rank_two_subalgebra(&s[x], &s[y]).unwrap();
    assert_eq!(orth.dim(), 2);
    assert!(orth.is_abelian());
}

#[test]
fn m_gamma_in_rank_one() {
    let rd = datum("su(1,2)");
    // the long root space is one-dimensional, the short one contributes
    let short = rd.positive()[rd.simple()[0]].clone();
    assert_eq!(m_gamma(&rd, &short).unwrap().dim(), 1);
    assert!(m_gamma_sum_check(&rd).passed);
}

#[test]
fn suites_pass_on_small_algebras() {
    let cfg = SampleConfig {
        seed: 7,
        samples: 3,
    };
    for name in ["sl3R", "split-G2", "su(1,2)", "so(2,5)"] {
        let rd = datum(name);
        for rep in lemma_suite(&rd, &cfg) {
            assert!(rep.passed, "{name}: {} failed: {:?}", rep.name, rep.witness);
        }
    }
}

#[test]
fn signatures_match_across_realizations() {
    assert_eq!(datum("so(2,3)").signature(), datum("split-B2").signature());
    assert_ne!(datum("so(2,3)").signature(), datum("sl3R").signature());
}

#[test]
fn gradings_partition_n() {
    let rd = datum("split-G2");
    let total: usize = (1..=rd.max_height()).map(|h| rd.grading(h).dim()).sum();
    assert_eq!(total, rd.n_basis().dim());
    assert_eq!(rd.grading(rd.max_height() + 1).dim(), 0);
    assert_eq!(rd.grading(0).dim(), 2);
    assert_eq!(rd.grading(-1).dim(), 2);
}
