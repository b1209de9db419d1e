use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rowadj::numtheory::{bege_matrix, divisors, row_times_mobius};
use rowadj::selection::mobius_of;
use rowadj::verify::{random_lattice, random_poset, random_scalar};
use rowadj::{
    build_matrix, factorize, psi_table, psi_table_mobius, DivisorLattice, FunctionFamily, Matrix, Mode,
    OrderBackend, Scalar, SubsetSelection,
};

fn mode_strategy() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Meet), Just(Mode::Join)]
}

/// Random subset of the divisors of `top`, ascending.
fn divisor_subset() -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    prop::sample::select(vec![12u64, 30, 36, 60, 72, 120, 210, 360]).prop_flat_map(|top| {
        let universe = divisors(top);
        let k = universe.len();
        (Just(universe), prop::sample::subsequence((0..k).collect::<Vec<_>>(), 1..=k.min(8)))
            .prop_map(|(u, idx)| (idx.iter().map(|&i| u[i]).collect(), u))
    })
}

fn family(seed: u64, n: usize, domain: &[u64]) -> FunctionFamily<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let style = (seed % 4) as u8;
    FunctionFamily::from_fn(n, domain, |_, _| random_scalar(&mut rng, style))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// The factorization holds for the minimal closure and every superset
    /// obtained by adding universe elements, and the product never changes.
    #[test]
    fn factorization_is_independent_of_closure_set(
        (members, universe) in divisor_subset(),
        mode in mode_strategy(),
        seed in any::<u64>(),
        extra in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
    ) {
        let s = SubsetSelection::new(DivisorLattice, members.clone()).unwrap();
        let fs = family(seed, s.len(), &universe);
        let direct = build_matrix(&s, &fs, mode).unwrap();
        let d = s.closure_set(mode).unwrap();
        prop_assert_eq!(&factorize(&d, &fs).unwrap().product, &direct);

        let mut bigger = d.elements().to_vec();
        for ix in extra {
            let e = *ix.get(&universe);
            if !bigger.contains(&e) {
                bigger.push(e);
            }
        }
        bigger.sort_unstable();
        let d2 = s.closure_with(mode, bigger).unwrap();
        let fac = factorize(&d2, &fs).unwrap();
        prop_assert_eq!(&fac.product, &direct);
        prop_assert_eq!(&fac.upsilon, &fac.e.hadamard(&fac.xi).unwrap());
        prop_assert_eq!(psi_table_mobius(&d2, &fs).unwrap(), psi_table(&d2, &fs).unwrap());
    }

    /// On a divisor-closed set, Ψ_{S,f_i}(j) is (f_i * μ)(j).
    #[test]
    fn psi_is_dirichlet_with_mobius(top in prop::sample::select(vec![12u64, 24, 36, 60, 90]), seed in any::<u64>()) {
        let d = divisors(top);
        let s = SubsetSelection::new(DivisorLattice, d.clone()).unwrap();
        let fs = family(seed, d.len(), &d);
        let psi = psi_table(&s.as_closure(Mode::Meet).unwrap(), &fs).unwrap();
        for i in 0..d.len() {
            for (j, &m) in d.iter().enumerate() {
                prop_assert_eq!(psi.get(i, j), &row_times_mobius(&fs, i, m).unwrap());
            }
        }
    }

    /// Finite-poset order relation: reflexive, antisymmetric, transitive, and
    /// stored along a linear extension; Hasse covers regenerate it.
    #[test]
    fn poset_order_axioms(seed in any::<u64>(), n in 1usize..=10) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let xs: Vec<_> = p.elements().collect();
        for a in &xs {
            prop_assert!(p.leq(a, a));
            for b in &xs {
                if a != b && p.leq(a, b) {
                    prop_assert!(!p.leq(b, a));
                    prop_assert!(a.0 < b.0);
                }
                for c in &xs {
                    if p.leq(a, b) && p.leq(b, c) {
                        prop_assert!(p.leq(a, c));
                    }
                }
            }
        }
        let covers: Vec<(String, String)> =
            p.covers().map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect();
        let names: Vec<&str> = xs.iter().map(|&e| p.name(e)).collect();
        let again = rowadj::FinitePoset::from_covers(
            &names.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            &covers,
        ).unwrap();
        prop_assert_eq!(again.comparable_pairs(), p.comparable_pairs());
        let mu = mobius_of(&p, &xs);
        let zeta = Matrix::from_fn(n, n, |i, j| if p.leq(&xs[i], &xs[j]) { Scalar::one() } else { Scalar::zero() }).unwrap();
        prop_assert_eq!(zeta.multiply(&mu).unwrap(), Matrix::identity(n).unwrap());
    }

    /// Closing a closed selection returns the same member set.
    #[test]
    fn closure_of_closed_set_is_stable(seed in any::<u64>(), mode in mode_strategy()) {
        let l = random_lattice(&mut ChaCha8Rng::seed_from_u64(seed));
        let all: Vec<_> = l.elements().collect();
        let s = SubsetSelection::new(&l, all.clone()).unwrap();
        prop_assert!(s.is_closed(mode).unwrap());
        let closed = s.closure_set(mode).unwrap();
        prop_assert_eq!(closed.elements(), &all[..]);
        let e = s.as_closure(Mode::Meet).unwrap().incidence_matrix();
        prop_assert!(e.is_lower_triangular() && e.diagonal().all(|v| v.is_one()));
    }

    /// Rows agree with the direct gcd-table construction.
    #[test]
    fn bege_matches_build_matrix(n in 1usize..=12, seed in any::<u64>()) {
        let dom: Vec<u64> = (1..=n as u64).collect();
        let fs = family(seed, n, &dom);
        let s = SubsetSelection::new(DivisorLattice, dom).unwrap();
        prop_assert_eq!(bege_matrix(n, &fs).unwrap(), build_matrix(&s, &fs, Mode::Meet).unwrap());
    }
}

#[test]
fn pairwise_closure_need_not_be_closed() {
    // gcd(6, 35) = 1 is a meet of meets, not a pairwise meet of S
    let s = SubsetSelection::new(DivisorLattice, vec![30, 42, 70, 105]).unwrap();
    let d = s.closure_set(Mode::Meet).unwrap();
    assert!(!d.elements().contains(&1));
    let d_sel = SubsetSelection::new(DivisorLattice, d.elements().to_vec()).unwrap();
    assert!(!d_sel.is_closed(Mode::Meet).unwrap());
}
