mod common;

use mgsampler::ingest::{
    export_outputs, load_frame_directory, load_raw_tensor, save_raw_tensor, write_pnm, ExportPaths,
    LoadOptions, PnmImage,
};
use mgsampler::pipeline::{run_pipeline, PipelineOptions};
use mgsampler::sampling::stream_rng;
use rand::seq::SliceRandom;
use rand::Rng;

fn frames(count: usize, rng: &mut impl Rng) -> Vec<(String, PnmImage)> {
    (0..count)
        .map(|i| {
            let name = format!("frame_{i}.ppm");
            let img = PnmImage {
                width: 5,
                height: 4,
                channels: 3,
                pixels: (0..60).map(|_| rng.random()).collect(),
            };
            (name, img)
        })
        .collect()
}

#[test]
fn directory_listing_order_never_matters() {
    let mut rng = stream_rng(8, 0);
    let originals = frames(23, &mut rng);
    let mut loaded = Vec::new();
    for _ in 0..4 {
        let dir = tempfile::tempdir().unwrap();
        let mut order = originals.clone();
        order.shuffle(&mut rng);
        for (name, img) in &order {
            write_pnm(dir.path().join(name), img).unwrap();
        }
        let (v, m) = load_frame_directory(dir.path(), &LoadOptions::default()).unwrap();
        assert_eq!(m.frame_ids[9], "frame_9.ppm");
        assert_eq!(m.frame_ids[10], "frame_10.ppm");
        loaded.push(v);
    }
    assert!(loaded.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn raw_tensor_file_round_trip() {
    let mut rng = stream_rng(3, 0);
    let dir = tempfile::tempdir().unwrap();
    for (i, v) in [
        common::random_u8_volume(&mut rng, 5, 7, 3, 3),
        common::random_f32_volume(&mut rng, 4, 2, 6, 1),
    ]
    .into_iter()
    .enumerate()
    {
        let path = dir.path().join(format!("v{i}.mgvt"));
        save_raw_tensor(&v, &path).unwrap();
        assert_eq!(load_raw_tensor(&path).unwrap(), v);
    }
    assert!(load_raw_tensor(dir.path().join("missing.mgvt")).is_err());
}

#[test]
fn exports_are_byte_stable() {
    let mut rng = stream_rng(11, 0);
    let v = common::random_u8_volume(&mut rng, 40, 6, 6, 1);
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = run_pipeline(&v, &PipelineOptions::default(), &mut stream_rng(7, 0)).unwrap();
        let paths = ExportPaths {
            plan: dir.path().join(format!("plan{run}.json")),
            curve: Some(dir.path().join(format!("curve{run}.csv"))),
        };
        export_outputs(&out.plan, Some(&out.curve), &paths).unwrap();
        outputs.push((
            std::fs::read(&paths.plan).unwrap(),
            std::fs::read_to_string(paths.curve.as_ref().unwrap()).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
    let csv = &outputs[0].1;
    assert_eq!(csv.lines().count(), 1 + 41);
    assert!(csv.starts_with("frame,cumulative\n0,0\n"));
    assert!(csv.ends_with("40,1\n"));
}
