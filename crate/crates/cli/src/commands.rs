use std::path::{Path, PathBuf};
use std::time::Instant;

use mgsampler::evalbench::{
    compare_strategies, format_latency_table, generate_synthetic_video, latency_benchmark,
    BenchConfig, Burst, SyntheticSpec,
};
use mgsampler::ingest::{
    export_outputs, load_frame_directory, load_raw_tensor, natural_cmp, save_raw_tensor,
    ExportPaths, LoadOptions,
};
use mgsampler::pipeline::{run_pipeline, PipelineOptions};
use mgsampler::sampling::stream_rng;
use mgsampler::{ConvKernelBank, Error, FrameVolume, Representation, Result, Strategy};
use rayon::prelude::*;

use crate::args::{
    BenchArgs, EvalArgs, GenArgs, MotionArgs, SampleArgs, SamplerArgs, SyntheticArgs,
};

fn pipeline_options(
    motion: &MotionArgs,
    sampler: &SamplerArgs,
    strategy: Strategy,
) -> Result<PipelineOptions> {
    if motion.weights.is_some() && motion.representation != Representation::Feature {
        return Err(Error::Config(
            "--weights requires --representation feature".into(),
        ));
    }
    let bank = motion
        .weights
        .as_ref()
        .map(ConvKernelBank::load)
        .transpose()?;
    let opts = PipelineOptions {
        sampler: sampler.config(strategy),
        representation: motion.representation,
        bank,
        downsample: motion.downsample,
        parallel: false,
    };
    opts.sampler.validate()?;
    if opts.downsample == 0 {
        return Err(Error::Config("--downsample must be >= 1".into()));
    }
    Ok(opts)
}

fn load_video(path: &Path) -> Result<FrameVolume> {
    if path.is_dir() {
        Ok(load_frame_directory(path, &LoadOptions::default())?.0)
    } else {
        load_raw_tensor(path)
    }
}

fn sample_one(
    video: &FrameVolume,
    opts: &PipelineOptions,
    paths: &ExportPaths,
) -> Result<Vec<usize>> {
    let mut rng = stream_rng(opts.sampler.seed, 0);
    let out = run_pipeline(video, opts, &mut rng)?;
    export_outputs(&out.plan, Some(&out.curve), paths)?;
    Ok(out.plan.indices)
}

/// Videos in a batch directory: sub-directories of frames and `.mgvt`
/// files, in natural name order. The position in this list is the ordinal
/// mixed into each video's seed.
fn batch_entries(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let io = |e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    };
    let mut entries = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        let video = path.is_dir()
            || path
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case("mgvt"));
        let stem = path.file_stem().and_then(|s| s.to_str()).map(str::to_owned);
        if let (true, Some(stem)) = (video, stem) {
            entries.push((stem, path));
        }
    }
    if entries.is_empty() {
        return Err(Error::EmptyInput(dir.to_path_buf()));
    }
    entries.sort_by(|a, b| natural_cmp(&a.0, &b.0));
    Ok(entries)
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })
}

pub fn sample(args: &SampleArgs) -> Result<()> {
    let opts = pipeline_options(&args.motion, &args.sampler, args.strategy)?;
    let Some(batch) = &args.batch else {
        let input = args
            .frames_dir
            .as_ref()
            .or(args.raw_tensor.as_ref())
            .expect("input group is required");
        let video = if args.frames_dir.is_some() {
            load_frame_directory(input, &LoadOptions::default())?.0
        } else {
            load_raw_tensor(input)?
        };
        let paths = ExportPaths {
            plan: args.out.clone(),
            curve: args.emit_curve.clone(),
        };
        let indices = sample_one(&video, &opts, &paths)?;
        println!("{indices:?}");
        return Ok(());
    };

    let entries = batch_entries(batch)?;
    create_dir(&args.out)?;
    if let Some(dir) = &args.emit_curve {
        create_dir(dir)?;
    }
    let results: Vec<Result<Vec<usize>>> = entries
        .par_iter()
        .enumerate()
        .map(|(ordinal, (name, path))| {
            let mut opts = opts.clone();
            opts.sampler.seed ^= ordinal as u64;
            let paths = ExportPaths {
                plan: args.out.join(format!("{name}.json")),
                curve: args
                    .emit_curve
                    .as_ref()
                    .map(|d| d.join(format!("{name}.csv"))),
            };
            sample_one(&load_video(path)?, &opts, &paths)
        })
        .collect();
    for ((name, _), result) in entries.iter().zip(results) {
        println!("{name}: {:?}", result?);
    }
    Ok(())
}

fn synthetic_spec(args: &SyntheticArgs) -> SyntheticSpec {
    let bursts = if args.bursts.is_empty() {
        // one burst over the middle fifth of the clip
        let t = args.frames;
        vec![Burst::new(
            t * 2 / 5,
            (t * 3 / 5).saturating_sub(1).max(t * 2 / 5),
            50.0,
        )]
    } else {
        args.bursts.clone()
    };
    SyntheticSpec {
        bursts,
        background: args.background,
        noise: args.noise,
        seed: args.gen_seed,
        ..SyntheticSpec::new(args.frames, args.height, args.width, args.channels)
    }
}

pub fn eval(args: &EvalArgs) -> Result<()> {
    let cfg = args.sampler.config(Strategy::MotionGuided);
    cfg.validate()?;
    let spec = synthetic_spec(&args.synthetic);
    let video = match &args.raw_tensor {
        Some(path) => load_raw_tensor(path)?,
        None => generate_synthetic_video(&spec)?,
    };
    let report = compare_strategies(&video, &spec.bursts, &cfg)?;
    print!("{}", report.to_table());
    if let Some(out) = &args.out {
        std::fs::write(out, report.to_json() + "\n").map_err(|e| Error::Io {
            path: out.clone(),
            source: e,
        })?;
    }
    Ok(())
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let pipeline = pipeline_options(&args.motion, &args.sampler, args.strategy)?;
    let mut videos = Vec::new();
    let mut load_us = Vec::new();
    if args.raw_tensors.is_empty() {
        if args.videos == 0 {
            return Err(Error::Config("--videos must be >= 1".into()));
        }
        for i in 0..args.videos {
            let t = args.frames;
            let spec = SyntheticSpec {
                noise: 8.0,
                seed: args.sampler.seed ^ i as u64,
                ..SyntheticSpec::new(t, args.height, args.width, args.channels)
            }
            .with_burst(Burst::new(t / 3, (t / 2).max(t / 3), 40.0));
            videos.push(generate_synthetic_video(&spec)?);
            load_us.push(None);
        }
    } else {
        for path in &args.raw_tensors {
            let start = Instant::now();
            videos.push(load_raw_tensor(path)?);
            load_us.push(Some(start.elapsed().as_secs_f64() * 1e6));
        }
    }
    let cfg = BenchConfig {
        pipeline,
        repetitions: args.repetitions,
        warmup: args.warmup,
        parallel_batch: args.parallel,
    };
    let mut report = latency_benchmark(&videos, &cfg)?;
    for (v, load) in report.per_video.iter_mut().zip(load_us) {
        v.load_us = load;
    }
    print!("{}", format_latency_table(&report));
    if let Some(out) = &args.out {
        let json = serde_json::to_string_pretty(&report).expect("report serialization cannot fail");
        std::fs::write(out, json + "\n").map_err(|e| Error::Io {
            path: out.clone(),
            source: e,
        })?;
    }
    Ok(())
}

pub fn gen(args: &GenArgs) -> Result<()> {
    let spec = synthetic_spec(&args.synthetic);
    let video = generate_synthetic_video(&spec)?;
    save_raw_tensor(&video, &args.out)?;
    println!(
        "wrote {} ({} frames, {}x{}x{})",
        args.out.display(),
        video.t_count(),
        video.height(),
        video.width(),
        video.channels()
    );
    Ok(())
}
