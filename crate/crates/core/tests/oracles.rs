//! Worked examples checked against independent oracles before freezing.

mod common;

use common::brute_force_invert;
use mgsampler::motion::{
    feature_diff_salience, image_diff_salience, smooth_distribution, ConvKernelBank, FrameVolume,
    MotionDistribution,
};
use mgsampler::sampling::{build_curve, invert_curve, mg_sample, segment_sample, stream_rng};
use mgsampler::{SamplerConfig, Strategy};
use rand::Rng;

/// Direct sum of |I(t) - I(t-1)| written against the raw buffer.
fn abs_diff_oracle(data: &[u8], frame_len: usize) -> Vec<f64> {
    let t_count = data.len() / frame_len;
    let mut out = vec![0.0];
    for t in 1..t_count {
        let mut s = 0i64;
        for i in 0..frame_len {
            s += (i64::from(data[t * frame_len + i]) - i64::from(data[(t - 1) * frame_len + i]))
                .abs();
        }
        out.push(s as f64);
    }
    out
}

#[test]
fn image_diff_matches_direct_sum() {
    let mut rng = stream_rng(101, 0);
    for _ in 0..50 {
        let (t, h, w) = (
            rng.random_range(1..8),
            rng.random_range(1..6),
            rng.random_range(1..6),
        );
        let c = if rng.random_bool(0.5) { 1 } else { 3 };
        let data: Vec<u8> = (0..t * h * w * c).map(|_| rng.random()).collect();
        let v = FrameVolume::from_u8(t, h, w, c, data.clone()).unwrap();
        assert_eq!(
            image_diff_salience(&v).values(),
            abs_diff_oracle(&data, h * w * c)
        );
    }
    assert_eq!(abs_diff_oracle(&[0, 10, 3, 10], 2), vec![0.0, 3.0]);
    assert_eq!(abs_diff_oracle(&[0, 0, 0, 1, 2, 3], 3), vec![0.0, 6.0]);
}

#[test]
fn feature_examples() {
    let v = FrameVolume::from_u8(2, 1, 1, 1, vec![5, 7]).unwrap();
    let bank = ConvKernelBank::from_fn(1, |k, _, dy, dx| {
        if k == 0 && dy == 3 && dx == 3 {
            2.0
        } else {
            0.0
        }
    })
    .unwrap();
    assert_eq!(
        feature_diff_salience(&v, &bank).unwrap().values(),
        &[0.0, 4.0]
    );
}

#[test]
fn smoothing_example_by_hand() {
    // square roots 0.8, 0.2, 0.4, 0.4 over 1.8
    let m = MotionDistribution::new(vec![0.64, 0.04, 0.16, 0.16]).unwrap();
    let s = smooth_distribution(&m, 0.5).unwrap();
    let oracle: Vec<f64> = [0.8f64, 0.2, 0.4, 0.4].iter().map(|v| v / 1.8).collect();
    for ((g, o), exact) in
        s.probs()
            .iter()
            .zip(&oracle)
            .zip([4.0 / 9.0, 1.0 / 9.0, 2.0 / 9.0, 2.0 / 9.0])
    {
        assert!(
            (g - o).abs() < 1e-15 && (g - exact).abs() < 1e-15,
            "{g} {o} {exact}"
        );
    }
}

#[test]
fn inversion_examples_agree_with_brute_force() {
    let m = MotionDistribution::new(vec![0.0, 0.5, 0.25, 0.25]).unwrap();
    let curve = build_curve(&m).unwrap();
    for (y, want) in [(0.25, 1usize), (0.75, 2), (1.0, 3)] {
        assert_eq!(brute_force_invert(curve.anchors(), y), want);
        assert_eq!(invert_curve(&curve, y).unwrap(), want);
    }
}

#[test]
fn uniform_mg_examples_agree_with_brute_force() {
    let det = |n| SamplerConfig::new(Strategy::MotionGuided, n).deterministic(true);
    let mut rng = stream_rng(0, 0);

    let c8 = build_curve(&MotionDistribution::uniform(8).unwrap()).unwrap();
    let plan = mg_sample(&c8, &det(8), &mut rng).unwrap();
    let brute: Vec<usize> = plan
        .draws
        .iter()
        .map(|&y| brute_force_invert(c8.anchors(), y))
        .collect();
    assert_eq!(brute, (0..8).collect::<Vec<_>>());
    assert_eq!(plan.indices, brute);

    let plan = mg_sample(&c8, &det(4), &mut rng).unwrap();
    let brute: Vec<usize> = plan
        .draws
        .iter()
        .map(|&y| brute_force_invert(c8.anchors(), y))
        .collect();
    assert_eq!(brute, vec![0, 2, 4, 6]);
    assert_eq!(plan.indices, brute);

    // 32-frame window of a uniform 64-frame video
    let c32 = build_curve(&MotionDistribution::uniform(32).unwrap()).unwrap();
    let plan = mg_sample(&c32, &det(8), &mut rng).unwrap();
    let brute: Vec<usize> = plan
        .draws
        .iter()
        .map(|&y| brute_force_invert(c32.anchors(), y))
        .collect();
    assert_eq!(brute, vec![1, 5, 9, 13, 17, 21, 25, 29]);
}

#[test]
fn segment_centres_by_hand() {
    let det = |n| SamplerConfig::new(Strategy::Segment, n).deterministic(true);
    let mut rng = stream_rng(0, 0);
    // centres 0.25, 0.75, ..., 2.75: frame j owns (j, j+1]
    assert_eq!(
        segment_sample(3, &det(6), &mut rng).unwrap().indices,
        vec![0, 0, 1, 1, 2, 2]
    );
    // centres 1, 3, 5, 7 sit on frame boundaries
    assert_eq!(
        segment_sample(8, &det(4), &mut rng).unwrap().indices,
        vec![0, 2, 4, 6]
    );
}

#[test]
fn random_inversions_agree_with_brute_force() {
    let mut rng = stream_rng(2024, 0);
    for _ in 0..100 {
        let t = rng.random_range(1..=12);
        let curve = build_curve(&common::random_distribution(&mut rng, t)).unwrap();
        let y: f64 = rng.random_range(1e-9..1.0);
        assert_eq!(
            invert_curve(&curve, y).unwrap(),
            brute_force_invert(curve.anchors(), y)
        );
    }
}
