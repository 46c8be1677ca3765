//! Property tests over randomly drawn vectors, names and tables.

use arithmetree::dendriform::{
    dend_left_names, dend_right_names, l_mult, middle_term, over, star_names, under,
};
use arithmetree::freeprob::{cumulants_from_moments, moments_from_cumulants, MomentTable};
use arithmetree::name::{dagger, is_name, name_of, split_name, tree_of, vee, CandidateVec, Name};
use arithmetree::ncp::{from_partition, to_partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn candidate(max_degree: usize) -> impl Strategy<Value = CandidateVec> {
    prop::collection::vec(any::<u32>(), 0..=max_degree).prop_map(|raw| {
        let coords: Vec<u32> = raw
            .iter()
            .enumerate()
            .map(|(i, x)| (x % (i as u32 + 1)) + 1)
            .collect();
        CandidateVec::new(coords).expect("bounds by construction")
    })
}

fn name(max_degree: usize) -> impl Strategy<Value = Name> {
    candidate(max_degree).prop_map(|c| name_of(&tree_of(&c)))
}

fn positive_name(max_degree: usize) -> impl Strategy<Value = Name> {
    name(max_degree).prop_filter("degree >= 1", |v| !v.is_leaf())
}

proptest! {
    #[test]
    fn decode_is_total_and_idempotent(c in candidate(8)) {
        let v = name_of(&tree_of(&c));
        prop_assert!(is_name(&v.as_candidate()));
        prop_assert_eq!(name_of(&tree_of(&v.as_candidate())), v);
    }

    #[test]
    fn split_inverts_grafting(l in name(4), r in name(4)) {
        let v = vee(&l, &r);
        prop_assert_eq!(split_name(&v).unwrap(), (l, r));
    }

    #[test]
    fn dagger_is_involutive(v in name(10)) {
        prop_assert_eq!(dagger(&dagger(&v)), v);
    }

    #[test]
    fn over_under_associate_and_link(
        u in positive_name(4),
        v in positive_name(4),
        w in positive_name(4),
    ) {
        prop_assert_eq!(over(&over(&u, &v), &w), over(&u, &over(&v, &w)));
        prop_assert_eq!(under(&under(&u, &v), &w), under(&u, &under(&v, &w)));
        prop_assert_eq!(under(&over(&u, &v), &w), over(&u, &under(&v, &w)));
    }

    #[test]
    fn grove_addition_splits_disjointly(v in positive_name(4), w in positive_name(4)) {
        let sum = star_names(&v, &w);
        let left = dend_left_names(&v, &w).unwrap();
        let right = dend_right_names(&v, &w).unwrap();
        prop_assert_eq!(left.len() + right.len(), sum.len());
        prop_assert_eq!(left.union(&right).unwrap(), sum);
    }

    #[test]
    fn middle_term_reproduces_the_name(v in positive_name(6)) {
        prop_assert_eq!(middle_term(&v).unwrap(), v);
    }

    #[test]
    fn l_multiplication_multiplies_degrees(u in positive_name(3), v in positive_name(3)) {
        let p = l_mult(&u, &v).unwrap();
        prop_assert_eq!(p.degree(), u.degree() * v.degree());
    }

    #[test]
    fn partition_round_trip(v in positive_name(10)) {
        let t = tree_of(&v.as_candidate());
        let p = to_partition(&t).unwrap();
        prop_assert_eq!(from_partition(&p), t);
    }

    #[test]
    fn moment_cumulant_round_trip(raw in prop::collection::vec((-8i64..=8, 1i64..=4), 4)) {
        let mut kappa = MomentTable::new(vec!['a'], 4);
        for (len, (numer, denom)) in raw.iter().enumerate() {
            let word: String = std::iter::repeat_n('a', len + 1).collect();
            let value = BigRational::new(BigInt::from(*numer), BigInt::from(*denom));
            kappa.set(&word, value).unwrap();
        }
        let moments = moments_from_cumulants(&kappa, 4).unwrap();
        prop_assert_eq!(cumulants_from_moments(&moments, 4).unwrap(), kappa);
    }
}
