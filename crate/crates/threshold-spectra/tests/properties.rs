//! Property-based tests tying the structured spectral path to first
//! principles: round-trips, counting identities, dense-oracle agreement,
//! and trace identities, over randomized inputs.

use proptest::collection::vec;
use proptest::prelude::*;
use threshold_spectra::distributions::DistributionSpec;
use threshold_spectra::model::{CreationSequence, ModelVariant, ThresholdGraph};
use threshold_spectra::oracle::{dense_adjacency, dense_spectrum, multiplicity_within, TRIVIAL_EIG_BUCKET};
use threshold_spectra::spectrum::{
    build_quotient, charpoly_eval, charpoly_eval_exact, nontrivial_count, trivial_multiplicities,
    SpectralDistribution,
};
use threshold_spectra::binary;

fn arb_variant() -> impl Strategy<Value = ModelVariant> {
    prop_oneof![Just(ModelVariant::Loopless), Just(ModelVariant::SelfLoops)]
}

/// Creation-sequence bits honoring the first-bit convention of the variant.
fn arb_bits(variant: ModelVariant) -> impl Strategy<Value = Vec<u8>> {
    vec(0u8..=1, 2..=80).prop_map(move |mut bits| {
        if variant == ModelVariant::Loopless {
            bits[0] = bits[1];
        }
        bits
    })
}

/// Weight vectors: continuous draws or a coarse integer grid (forcing ties).
fn arb_values() -> impl Strategy<Value = Vec<f64>> {
    prop_oneof![
        vec(-10.0..10.0f64, 2..=48),
        vec((0u8..=5).prop_map(f64::from), 2..=48),
    ]
}

fn arb_theta() -> impl Strategy<Value = f64> {
    prop_oneof![-8.0..8.0f64, (-1i8..=10).prop_map(f64::from)]
}

proptest! {
    #[test]
    fn decompose_expand_round_trips(
        variant in arb_variant(),
        bits in arb_variant().prop_flat_map(arb_bits),
    ) {
        // Pair an independently drawn variant with bits valid for it.
        let bits = {
            let mut b = bits;
            if variant == ModelVariant::Loopless {
                if b.len() < 2 { b.push(b[0]); }
                b[0] = b[1];
            }
            b
        };
        let seq = CreationSequence::new(bits.clone(), variant).unwrap();
        let d = seq.decompose();
        let expanded = d.expand();
        prop_assert_eq!(expanded.bits(), &bits[..]);
        prop_assert_eq!(d.n() as usize, bits.len());
    }

    #[test]
    fn trivial_counts_and_quotient_dimension_partition_n(
        variant in arb_variant(),
        values in arb_values(),
        theta in arb_theta(),
    ) {
        let g = ThresholdGraph::new(values, theta, variant).unwrap();
        let d = g.creation_sequence().decompose();
        let t = trivial_multiplicities(&d);
        prop_assert_eq!(t.minus_one + t.zero + nontrivial_count(&d), d.n());
        prop_assert_eq!(build_quotient(&d).dim() as u64, nontrivial_count(&d));
    }

    #[test]
    fn peel_relabeling_is_edge_exact(
        variant in arb_variant(),
        values in arb_values(),
        theta in arb_theta(),
    ) {
        let g = ThresholdGraph::new(values, theta, variant).unwrap();
        let n = g.n();
        let (seq, order) = g.creation_sequence_with_order();
        let mut from_sequence = vec![vec![0u8; n]; n];
        for (u, v) in seq.graph_edges() {
            from_sequence[u][v] = 1;
            from_sequence[v][u] = 1;
            if u == v { from_sequence[u][v] = 1; }
        }
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(
                    from_sequence[u][v],
                    g.adjacency_entry(order[u], order[v]).unwrap(),
                    "mismatch at relabeled pair ({}, {})", u, v
                );
            }
        }
    }

    #[test]
    fn neighborhoods_are_nested_by_weight(
        variant in arb_variant(),
        values in arb_values(),
        theta in arb_theta(),
    ) {
        let g = ThresholdGraph::new(values.clone(), theta, variant).unwrap();
        let n = g.n();
        for u in 0..n {
            for v in 0..n {
                if u == v || values[u] > values[v] { continue; }
                for w in 0..n {
                    if w == u || w == v { continue; }
                    let uw = g.adjacency_entry(u, w).unwrap();
                    let vw = g.adjacency_entry(v, w).unwrap();
                    prop_assert!(uw <= vw, "heavier vertex lost a neighbor");
                }
            }
        }
    }

    #[test]
    fn quotient_path_matches_dense_oracle(
        variant in arb_variant(),
        values in arb_values(),
        theta in arb_theta(),
    ) {
        let g = ThresholdGraph::new(values, theta, variant).unwrap();
        let d = g.creation_sequence().decompose();
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        let dense = dense_spectrum(&dense_adjacency(&g, 64).unwrap());

        let expanded = dist.expanded_eigenvalues();
        prop_assert_eq!(expanded.len(), dense.eigenvalues.len());
        for (a, b) in expanded.iter().zip(&dense.eigenvalues) {
            prop_assert!((a - b).abs() <= 1e-8, "{} vs {}", a, b);
        }

        let t = trivial_multiplicities(&d);
        let zero = multiplicity_within(&dense.eigenvalues, 0.0, TRIVIAL_EIG_BUCKET) as u64;
        prop_assert_eq!(zero, t.zero);
        if variant == ModelVariant::Loopless {
            let minus_one =
                multiplicity_within(&dense.eigenvalues, -1.0, TRIVIAL_EIG_BUCKET) as u64;
            prop_assert_eq!(minus_one, t.minus_one);
        }

        // All zero eigenvalues come from the counted atom (the quotient
        // never contributes one), so the adjacency rank is n minus it.
        prop_assert_eq!(dense.rank as u64, g.n() as u64 - t.zero);
    }

    #[test]
    fn spectral_moments_count_edges_and_loops(
        variant in arb_variant(),
        values in arb_values(),
        theta in arb_theta(),
    ) {
        let g = ThresholdGraph::new(values, theta, variant).unwrap();
        let n = g.n();
        let mut edges = 0u64;
        let mut loops = 0u64;
        for i in 0..n {
            if g.adjacency_entry(i, i).unwrap() == 1 { loops += 1; }
            for j in i + 1..n {
                edges += g.adjacency_entry(i, j).unwrap() as u64;
            }
        }
        let d = g.creation_sequence().decompose();
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        let trace = n as f64 * dist.moment(1);
        let square_sum = n as f64 * dist.moment(2);
        prop_assert!((trace - loops as f64).abs() < 1e-6, "trace {} loops {}", trace, loops);
        prop_assert!(
            (square_sum - (2 * edges + loops) as f64).abs() < 1e-6,
            "sum of squares {} vs {}", square_sum, 2 * edges + loops
        );
    }

    #[test]
    fn float_and_exact_charpoly_agree(
        variant in arb_variant(),
        bits in arb_variant().prop_flat_map(arb_bits),
        lambda in -3i64..=3,
    ) {
        let bits = {
            let mut b = bits;
            if variant == ModelVariant::Loopless { b[0] = b[1]; }
            b
        };
        let d = CreationSequence::new(bits, variant).unwrap().decompose();
        let q = build_quotient(&d);
        if q.dim() > 12 { return Ok(()); } // keep float determinants well-conditioned
        let exact: f64 = charpoly_eval_exact(&q, lambda)
            .to_string()
            .parse()
            .unwrap();
        let float = charpoly_eval(&q, lambda as f64);
        let tol = 1e-8 * exact.abs().max(1.0);
        prop_assert!((float - exact).abs() <= tol, "{} vs {}", float, exact);
    }

    #[test]
    fn binary_eigenvalues_satisfy_their_quadratic(k in 0u64..=500, l in 0u64..=500) {
        let (minus, plus) = binary::lambda_pm(k, l);
        let kf = k as f64;
        let lf = l as f64;
        prop_assert!((minus + plus - (kf - 1.0)).abs() <= 1e-9 * kf.max(1.0));
        prop_assert!((minus * plus + kf * lf).abs() <= 1e-9 * (kf * lf).max(1.0));
        prop_assert!(minus <= 0.0 && plus >= 0.0);
    }

    #[test]
    fn distribution_spec_json_round_trips(
        spec in prop_oneof![
            (0.0..=1.0f64).prop_map(|p| DistributionSpec::Bernoulli { p }),
            (-5.0..5.0f64, 0.1..4.0f64)
                .prop_map(|(a, w)| DistributionSpec::Uniform { a, b: a + w }),
            (-5.0..5.0f64, 0.1..4.0f64)
                .prop_map(|(mean, stddev)| DistributionSpec::Gaussian { mean, stddev }),
        ],
    ) {
        let json = serde_json::to_string(&spec).unwrap();
        let back: DistributionSpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn spectra_json_round_trip(
        variant in arb_variant(),
        values in arb_values(),
        theta in arb_theta(),
    ) {
        let g = ThresholdGraph::new(values, theta, variant).unwrap();
        let d = g.creation_sequence().decompose();
        let dist = SpectralDistribution::from_decomposition(&d).unwrap();
        let json = serde_json::to_string(&dist).unwrap();
        let back: SpectralDistribution = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, dist);
    }
}

/// Empirical-CDF quality of the seeded sampler at scale: by the DKW
/// inequality a sup-distance above `5 / sqrt(n)` has probability under
/// `2 exp(-50)`.
#[test]
fn sampler_empirical_cdf_is_close() {
    let n = 100_000usize;
    for (spec, seed) in [
        (DistributionSpec::Uniform { a: -1.0, b: 1.0 }, 11u64),
        (DistributionSpec::Gaussian { mean: 0.0, stddev: 1.0 }, 12u64),
    ] {
        let mut sample = spec.sample(n, seed).unwrap();
        sample.sort_by(f64::total_cmp);
        let mut sup = 0.0f64;
        for (i, x) in sample.iter().enumerate() {
            let f = spec.cdf(*x);
            sup = sup.max((f - i as f64 / n as f64).abs());
            sup = sup.max((f - (i as f64 + 1.0) / n as f64).abs());
        }
        assert!(sup <= 5.0 / (n as f64).sqrt(), "{spec:?}: sup distance {sup}");
    }
}
