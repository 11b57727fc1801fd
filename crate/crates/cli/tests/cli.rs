use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mgsampler::ingest::{save_raw_tensor, write_pnm, PnmImage};
use mgsampler::{ConvKernelBank, FrameVolume};
use tempfile::TempDir;

fn mgsampler(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgsampler"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Grey u8 clip with a bright square moving during frames 10..=20.
fn moving_square(t: usize, h: usize, w: usize) -> FrameVolume {
    let mut data = vec![40u8; t * h * w];
    for f in 0..t {
        let x = if (10..=20).contains(&f) { f - 10 } else { 0 };
        for y in 2..6 {
            for dx in 0..4 {
                data[f * h * w + y * w + (x + dx) % w] = 220;
            }
        }
    }
    FrameVolume::from_u8(t, h, w, 1, data).unwrap()
}

fn write_tensor(dir: &Path, name: &str, v: &FrameVolume) -> PathBuf {
    let path = dir.join(name);
    save_raw_tensor(v, &path).unwrap();
    path
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn plan_indices(path: impl AsRef<Path>) -> Vec<usize> {
    let v: serde_json::Value = serde_json::from_str(&read(path)).unwrap();
    serde_json::from_value(v["indices"].clone()).unwrap()
}

#[test]
fn plan_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    write_tensor(dir.path(), "v.mgvt", &moving_square(48, 8, 16));
    for out in ["a.json", "b.json"] {
        let o = mgsampler(
            &[
                "sample",
                "--raw-tensor",
                "v.mgvt",
                "--seed",
                "17",
                "--out",
                out,
            ],
            dir.path(),
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
    assert!(a.ends_with(b"\n"));
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with(r#"{"strategy":"mg","seed":17,"mu":0.5,"n_frames":8,"indices":["#));
}

#[test]
fn mu_zero_deterministic_matches_segment() {
    let dir = TempDir::new().unwrap();
    write_tensor(dir.path(), "v.mgvt", &moving_square(64, 8, 16));
    for (strategy, out) in [("mg", "mg.json"), ("segment", "seg.json")] {
        let o = mgsampler(
            &[
                "sample",
                "--raw-tensor",
                "v.mgvt",
                "--strategy",
                strategy,
                "--mu",
                "0",
                "--deterministic",
                "--num-frames",
                "8",
                "--out",
                out,
            ],
            dir.path(),
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    let mg = plan_indices(dir.path().join("mg.json"));
    assert_eq!(mg, plan_indices(dir.path().join("seg.json")));
    assert_eq!(mg, vec![3, 11, 19, 27, 35, 43, 51, 59]);
}

#[test]
fn emitted_curve_has_one_row_per_anchor() {
    let dir = TempDir::new().unwrap();
    write_tensor(dir.path(), "v.mgvt", &moving_square(30, 8, 16));
    let o = mgsampler(
        &[
            "sample",
            "--raw-tensor",
            "v.mgvt",
            "--out",
            "p.json",
            "--emit-curve",
            "c.csv",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let csv = read(dir.path().join("c.csv"));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "frame,cumulative");
    assert_eq!(lines.len(), 1 + 31);
    assert_eq!(lines[1], "0,0");
    assert_eq!(*lines.last().unwrap(), "30,1");
    let ys: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(ys.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn missing_input_flag_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let o = mgsampler(&["sample", "--out", "p.json"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("Usage:"), "{}", stderr(&o));
    assert!(!dir.path().join("p.json").exists());
}

#[test]
fn flag_conflicts_and_bad_values_exit_one() {
    let dir = TempDir::new().unwrap();
    write_tensor(dir.path(), "v.mgvt", &moving_square(16, 8, 16));
    let cases: &[&[&str]] = &[
        &[
            "sample",
            "--raw-tensor",
            "v.mgvt",
            "--frames-dir",
            ".",
            "--out",
            "p.json",
        ],
        &[
            "sample",
            "--raw-tensor",
            "v.mgvt",
            "--out",
            "p.json",
            "--bogus",
        ],
        &[
            "sample",
            "--raw-tensor",
            "v.mgvt",
            "--out",
            "p.json",
            "--strategy",
            "nope",
        ],
        &[
            "sample",
            "--raw-tensor",
            "v.mgvt",
            "--out",
            "p.json",
            "--mu",
            "-0.5",
        ],
        &[
            "sample",
            "--raw-tensor",
            "v.mgvt",
            "--out",
            "p.json",
            "--num-frames",
            "0",
        ],
        &[
            "sample",
            "--raw-tensor",
            "v.mgvt",
            "--out",
            "p.json",
            "--weights",
            "w.bin",
        ],
        &[
            "sample",
            "--raw-tensor",
            "v.mgvt",
            "--out",
            "p.json",
            "--strategy",
            "topk",
            "--num-frames",
            "17",
        ],
        &["frobnicate"],
    ];
    for args in cases {
        let o = mgsampler(args, dir.path());
        assert_eq!(code(&o), 1, "{args:?}: {}", stderr(&o));
    }
    assert!(!dir.path().join("p.json").exists());
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("junk.mgvt"),
        b"not a tensor at all, just bytes",
    )
    .unwrap();
    std::fs::create_dir(dir.path().join("empty")).unwrap();
    let cases: &[&[&str]] = &[
        &["sample", "--raw-tensor", "missing.mgvt", "--out", "p.json"],
        &["sample", "--raw-tensor", "junk.mgvt", "--out", "p.json"],
        &["sample", "--frames-dir", "empty", "--out", "p.json"],
        &["sample", "--frames-dir", "nowhere", "--out", "p.json"],
        &["bench", "--raw-tensor", "junk.mgvt"],
    ];
    for args in cases {
        let o = mgsampler(args, dir.path());
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error:"));
    }
}

#[test]
fn help_and_version_exit_zero() {
    let dir = TempDir::new().unwrap();
    for args in [&["--help"][..], &["--version"], &["sample", "--help"]] {
        assert_eq!(code(&mgsampler(args, dir.path())), 0);
    }
}

#[test]
fn frame_directory_matches_raw_tensor() {
    let dir = TempDir::new().unwrap();
    let video = moving_square(24, 8, 16);
    write_tensor(dir.path(), "v.mgvt", &video);
    let frames = dir.path().join("frames");
    std::fs::create_dir(&frames).unwrap();
    for t in 0..24 {
        let image = PnmImage {
            width: 16,
            height: 8,
            channels: 1,
            pixels: (0..video.frame_len())
                .map(|i| video.frame(t).get(i) as u8)
                .collect(),
        };
        // unpadded numbers exercise natural ordering
        write_pnm(frames.join(format!("frame{t}.pgm")), &image).unwrap();
    }
    for (flag, src, out) in [
        ("--raw-tensor", "v.mgvt", "a.json"),
        ("--frames-dir", "frames", "b.json"),
    ] {
        let o = mgsampler(
            &["sample", flag, src, "--seed", "5", "--out", out],
            dir.path(),
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    assert_eq!(
        read(dir.path().join("a.json")),
        read(dir.path().join("b.json"))
    );
}

#[test]
fn batch_uses_per_video_seeds() {
    let dir = TempDir::new().unwrap();
    let batch = dir.path().join("batch");
    std::fs::create_dir(&batch).unwrap();
    for name in ["clip10.mgvt", "clip2.mgvt", "clip1.mgvt"] {
        write_tensor(&batch, name, &moving_square(40, 8, 16));
    }
    let o = mgsampler(
        &[
            "sample",
            "--batch",
            "batch",
            "--seed",
            "8",
            "--out",
            "plans",
            "--emit-curve",
            "curves",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    // natural order: clip1, clip2, clip10 get ordinals 0, 1, 2
    for (ordinal, name) in ["clip1", "clip2", "clip10"].iter().enumerate() {
        let seed = (8 ^ ordinal).to_string();
        let single = format!("{name}.single.json");
        let o = mgsampler(
            &[
                "sample",
                "--raw-tensor",
                &format!("batch/{name}.mgvt"),
                "--seed",
                &seed,
                "--out",
                &single,
            ],
            dir.path(),
        );
        assert_eq!(code(&o), 0);
        assert_eq!(
            read(dir.path().join("plans").join(format!("{name}.json"))),
            read(dir.path().join(&single))
        );
        assert_eq!(
            read(dir.path().join("curves").join(format!("{name}.csv")))
                .lines()
                .count(),
            42
        );
    }
}

#[test]
fn feature_representation_with_weight_file() {
    let dir = TempDir::new().unwrap();
    write_tensor(dir.path(), "v.mgvt", &moving_square(32, 8, 16));
    ConvKernelBank::identity(1)
        .unwrap()
        .save(dir.path().join("id1.mgkb"))
        .unwrap();
    ConvKernelBank::identity(3)
        .unwrap()
        .save(dir.path().join("id3.mgkb"))
        .unwrap();
    let base = [
        "sample",
        "--raw-tensor",
        "v.mgvt",
        "--deterministic",
        "--mu",
        "1",
    ];
    let run = |extra: &[&str], out: &str| {
        let mut args = base.to_vec();
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--out", out]);
        mgsampler(&args, dir.path())
    };
    let o = run(
        &["--representation", "feature", "--weights", "id1.mgkb"],
        "f.json",
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&run(&["--representation", "feature"], "g.json")), 0);
    // identity filters see every moved pixel, as the image difference does
    assert_eq!(code(&run(&[], "i.json")), 0);
    assert_eq!(
        plan_indices(dir.path().join("f.json")),
        plan_indices(dir.path().join("i.json"))
    );
    let o = run(
        &["--representation", "feature", "--weights", "id3.mgkb"],
        "h.json",
    );
    assert_eq!(code(&o), 1, "{}", stderr(&o));
}

#[test]
fn gen_then_eval_and_bench() {
    let dir = TempDir::new().unwrap();
    let o = mgsampler(
        &[
            "gen",
            "--frames",
            "60",
            "--height",
            "16",
            "--width",
            "18",
            "--channels",
            "3",
            "--burst",
            "20:29:40",
            "--out",
            "s.mgvt",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = mgsampler(
        &[
            "eval",
            "--raw-tensor",
            "s.mgvt",
            "--burst",
            "20:29:40",
            "--deterministic",
            "--num-frames",
            "6",
            "--out",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path().join("r.json"))).unwrap();
    let strategies = report["strategies"].as_array().unwrap();
    assert_eq!(strategies.len(), 4);
    assert_eq!(strategies[0]["strategy"], "mg");
    assert_eq!(strategies[0]["coverage"], 1.0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("salience mass in bursts: 1.0000"));

    let o = mgsampler(
        &[
            "bench",
            "--raw-tensor",
            "s.mgvt",
            "--raw-tensor",
            "s.mgvt",
            "--repetitions",
            "3",
            "--warmup",
            "1",
            "--parallel",
            "--out",
            "l.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let table = String::from_utf8_lossy(&o.stdout).into_owned();
    assert_eq!(table.lines().count(), 4);
    assert!(table
        .lines()
        .last()
        .unwrap()
        .trim_start()
        .starts_with("all"));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path().join("l.json"))).unwrap();
    assert_eq!(report["per_video"].as_array().unwrap().len(), 2);
    assert_eq!(report["overall"]["samples"], 6);
    assert!(report["per_video"][0]["load_us"].as_f64().unwrap() > 0.0);

    let o = mgsampler(
        &[
            "bench",
            "--videos",
            "2",
            "--frames",
            "16",
            "--height",
            "16",
            "--width",
            "16",
            "--repetitions",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}
