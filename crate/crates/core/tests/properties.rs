use proptest::prelude::*;

use lfd_core::catalog::table88_basis;
use lfd_core::eulerhom::{build_saito_pair, symn_basis};
use lfd_core::liecoh::{is_reductive, lie_betti, structure_constants, CeComplex, LiePresentation};
use lfd_core::linalg::QMatrix;
use lfd_core::logder::{annihilator_split, discriminant_determinant, euler_field_at_point, is_logarithmic, LinearVectorField};
use lfd_core::minorfam::{admissible_minors, minor_family_report, AuxQuiver};
use lfd_core::poly::groebner::{buchberger_with_budget, Budget, Ideal};
use lfd_core::poly::{cofactor_det, squarefree_test, MonomialOrder, PolyMatrix, Verdict};
use lfd_core::quiverrep::{quiver_discriminant, QuiverRep};
use lfd_core::{Error, MPoly, Rat, Ring};

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

fn field(n: usize) -> impl Strategy<Value = LinearVectorField> {
    prop::collection::vec(small(), n * n).prop_map(move |v| {
        let rows: Vec<Vec<Rat>> = v.chunks(n).map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect();
        LinearVectorField::new(QMatrix::from_rows(rows).unwrap()).unwrap()
    })
}

fn linear_form(ring: Ring) -> impl Strategy<Value = MPoly> {
    let n = ring.nvars();
    prop::collection::vec(small(), n)
        .prop_map(move |c| MPoly::linear(&ring, &c.into_iter().map(Rat::from).collect::<Vec<_>>()))
}

/// Sparse polynomial with small exponents and coefficients.
fn poly(ring: Ring, terms: usize, max_exp: u32) -> impl Strategy<Value = MPoly> {
    let n = ring.nvars();
    prop::collection::vec((1i64..=5, prop::collection::vec(0..=max_exp, n)), 1..=terms).prop_map(move |ts| {
        ts.into_iter().fold(MPoly::zero(&ring), |acc, (c, e)| {
            let m = e
                .iter()
                .enumerate()
                .fold(MPoly::constant(&ring, Rat::from(c)), |m, (v, &k)| &m * &MPoly::var(&ring, v).pow(k));
            &acc + &m
        })
    })
}

fn ring3() -> Ring {
    Ring::new(["x", "y", "z"])
}

fn invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(small(), n * n)
        .prop_map(move |v| {
            let rows: Vec<Vec<Rat>> = v.chunks(n).map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect();
            QMatrix::from_rows(rows).unwrap()
        })
        .prop_filter("invertible", |m| !m.det().unwrap().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobi_identity((u, v, w) in (1usize..=4).prop_flat_map(|n| (field(n), field(n), field(n)))) {
        let a = u.bracket(&v.bracket(&w).unwrap()).unwrap();
        let b = v.bracket(&w.bracket(&u).unwrap()).unwrap();
        let c = w.bracket(&u.bracket(&v).unwrap()).unwrap();
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_commutator_of_derivations(u in field(3), v in field(3), f in poly(ring3(), 4, 3)) {
        let lhs = u.bracket(&v).unwrap().apply(&f).unwrap();
        let rhs = &u.apply(&v.apply(&f).unwrap()).unwrap() - &v.apply(&u.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bareiss_matches_cofactor(entries in prop::collection::vec(linear_form(Ring::new(["x", "y", "z", "w"])), 16)) {
        let ring = Ring::new(["x", "y", "z", "w"]);
        let rows: Vec<Vec<MPoly>> = entries.chunks(4).map(<[MPoly]>::to_vec).collect();
        let cof = cofactor_det(&ring, &rows);
        prop_assert_eq!(PolyMatrix::from_rows(&ring, rows).unwrap().det().unwrap(), cof);
    }

    #[test]
    fn planted_square_detected(g in poly(ring3(), 3, 2), h in poly(ring3(), 2, 1), seed in any::<u64>()) {
        prop_assume!(g.total_degree().unwrap_or(0) > 0);
        let f = &g.pow(2) * &h;
        let out = squarefree_test(&f, 20, seed).unwrap();
        prop_assert_eq!(out.verdict, Verdict::NotSquarefree);
    }

    #[test]
    fn distinct_linear_factors_are_squarefree(
        forms in prop::collection::vec(linear_form(ring3()), 1..=4),
        seed in any::<u64>(),
    ) {
        // skip zero forms and forms proportional to each other
        let mut kept: Vec<MPoly> = Vec::new();
        for f in forms {
            if !f.is_zero() && kept.iter().all(|k| k.is_scalar_multiple(&f).is_none()) {
                kept.push(f);
            }
        }
        prop_assume!(!kept.is_empty());
        let ring = ring3();
        let f = kept.iter().fold(MPoly::one(&ring), |a, b| &a * b);
        prop_assert_eq!(squarefree_test(&f, 20, seed).unwrap().verdict, Verdict::Squarefree);
    }

    #[test]
    fn groebner_bases_are_closed(gens in prop::collection::vec(poly(ring3(), 3, 1), 1..=3), lex in any::<bool>()) {
        let ring = ring3();
        let ideal = Ideal::new(&ring, gens.clone()).unwrap();
        let order = if lex { MonomialOrder::lex(3) } else { MonomialOrder::degrevlex(3) };
        // random lex inputs can explode; those cases say nothing about closure
        let budget = Budget { max_basis: 40, max_degree: 12 };
        let gb = match buchberger_with_budget(&ideal, &order, &budget) {
            Err(Error::Budget(_)) => return Err(TestCaseError::reject("budget")),
            r => r.unwrap(),
        };
        prop_assert!(gb.s_pairs_reduce_to_zero());
        for g in gens {
            prop_assert!(gb.contains(&g).unwrap());
        }
    }

    #[test]
    fn betti_invariant_under_basis_change(p in invertible(4), which in 0usize..3) {
        let g = [LiePresentation::gl(2), LiePresentation::abelian(4), LiePresentation::borel(2).direct_sum(&LiePresentation::abelian(1))][which].clone();
        let h = g.change_basis(&p).unwrap();
        prop_assert!(h.jacobi_holds());
        CeComplex::new(&h).unwrap();
        prop_assert_eq!(lie_betti(&h).unwrap(), lie_betti(&g).unwrap());
        prop_assert_eq!(is_reductive(&h), is_reductive(&g));
    }

    #[test]
    fn euler_field_at_point_vanishes(row in 0usize..9, p in prop::collection::vec(-2i64..=2, 4)) {
        let b = table88_basis(row).unwrap();
        let n = b.dim();
        let delta = discriminant_determinant(&b);
        let split = annihilator_split(&b, &delta).unwrap();
        let point: Vec<Rat> = p[..n].iter().map(|&x| Rat::from(x)).collect();
        if let Some(e) = euler_field_at_point(&split, &point).unwrap() {
            prop_assert!(e.field.at_point(&point).unwrap().iter().all(Rat::is_zero));
            prop_assert_eq!(is_logarithmic(&e.field, &delta).unwrap(), Some(Rat::from(n as i64)));
        }
    }

    #[test]
    fn minor_verdicts_invariant_under_relabeling(perm in Just((1..=5usize).collect::<Vec<_>>()).prop_shuffle(), row in 0usize..4) {
        let arrows = [vec![(3, 4), (3, 5)], vec![(2, 3), (4, 5)], vec![(3, 5), (4, 5)], vec![(1, 2), (2, 1)]][row].clone();
        let a = AuxQuiver::new(2, 5, arrows.clone());
        let relabeled = AuxQuiver::new(2, 5, arrows.iter().map(|&(i, j)| (perm[i - 1], perm[j - 1])).collect());
        prop_assert_eq!(admissible_minors(&a).unwrap().len(), admissible_minors(&relabeled).unwrap().len());
        let r1 = minor_family_report(&a, 10, 3).unwrap();
        let r2 = minor_family_report(&relabeled, 10, 3).unwrap();
        prop_assert_eq!(r1.verdict, r2.verdict);
    }
}

#[test]
fn euler_characteristic_vanishes() {
    let mut algebras = vec![LiePresentation::gl(2), LiePresentation::gl(3), LiePresentation::borel(3)];
    algebras.extend((1..=5).map(LiePresentation::abelian));
    for i in 0..9 {
        algebras.push(structure_constants(&table88_basis(i).unwrap()).unwrap());
    }
    for p in algebras {
        let b = lie_betti(&p).unwrap();
        let chi: i64 = b.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        assert_eq!(chi, 0, "{b:?}");
    }
}

#[test]
fn direct_sums_and_reductivity() {
    let gl2 = LiePresentation::gl(2);
    let b2 = LiePresentation::borel(2);
    let ab = LiePresentation::abelian(2);
    assert!(is_reductive(&gl2.direct_sum(&ab)));
    assert!(is_reductive(&gl2.direct_sum(&gl2)));
    assert!(!is_reductive(&b2.direct_sum(&gl2)));
    // Künneth: Betti numbers of a direct sum convolve
    let s = lie_betti(&gl2.direct_sum(&b2)).unwrap();
    let (x, y) = (lie_betti(&gl2).unwrap(), lie_betti(&b2).unwrap());
    let mut conv = vec![0; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            conv[i + j] += a * b;
        }
    }
    assert_eq!(s, conv);
}

#[test]
fn quiver_discriminant_independent_of_root() {
    let base = QuiverRep::star(2);
    let d0 = quiver_discriminant(&base).unwrap();
    for root in 1..base.dims.len() {
        let rep = QuiverRep::new(base.quiver.clone(), base.dims.clone(), root).unwrap();
        let d = quiver_discriminant(&rep).unwrap();
        assert!(d.is_scalar_multiple(&d0).is_some_and(|c| !c.is_zero()), "root {root}");
    }
}

#[test]
fn saito_pair_determinant_is_exact() {
    let mut bases: Vec<_> = (0..9).map(|i| table88_basis(i).unwrap()).collect();
    bases.push(symn_basis(2).unwrap());
    bases.push(symn_basis(3).unwrap());
    for b in bases {
        let p = build_saito_pair(&b).unwrap();
        assert_eq!(p.s.det().unwrap(), p.delta);
        let ring = b.ring();
        for j in 0..b.dim() {
            assert_eq!(p.s.get(0, j), &MPoly::var(ring, j));
        }
        // every T row kills Δ
        for i in 0..p.t.rows() {
            let mut image = MPoly::zero(ring);
            for j in 0..b.dim() {
                image = &image + &(p.t.get(i, j) * &p.delta.partial_derivative(j).unwrap());
            }
            assert!(image.is_zero());
        }
        assert_eq!(is_logarithmic(&LinearVectorField::euler(b.dim()), &p.delta).unwrap(), Some(Rat::from(b.dim() as i64)));
    }
}
