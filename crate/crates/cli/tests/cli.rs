use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use photospike::analysis::{firing_stats, stats_csv};
use photospike::io::{read_ppm_file, read_spike_container_file, write_ppm_file, CIFAR10_RECORD_LEN};
use photospike::snn::read_checkpoint_file;
use photospike::RawImage;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_photospike"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gradient_image(dir: &TempDir) -> (PathBuf, RawImage) {
    let (w, h) = (8, 4);
    let mut pixels = Vec::new();
    for y in 0..h {
        for x in 0..w {
            pixels.extend([(x * 32) as u8, (y * 60 + 10) as u8, (255 - x * 30) as u8]);
        }
    }
    let image = RawImage::new(w, h, 3, pixels).unwrap();
    let path = dir.path().join("grad.ppm");
    write_ppm_file(&path, &image).unwrap();
    (path, image)
}

fn black_image(dir: &TempDir) -> PathBuf {
    let path = dir.path().join("black.ppm");
    write_ppm_file(&path, &RawImage::new(4, 4, 3, vec![0; 48]).unwrap()).unwrap();
    path
}

/// Tiny CIFAR-format batch: even records bright (label 0), odd records dark (label 1).
fn write_cifar(path: &Path, records: usize) {
    let mut bytes = Vec::with_capacity(records * CIFAR10_RECORD_LEN);
    for k in 0..records {
        let label = (k % 2) as u8;
        bytes.push(label);
        let base = if label == 0 { 200 } else { 40 };
        bytes.extend((0..3072).map(|i| (base + (i * 7 + k) % 30) as u8));
    }
    std::fs::write(path, bytes).unwrap();
}

#[test]
fn encode_rgbl_gives_four_channels() {
    let dir = TempDir::new().unwrap();
    let (img, _) = gradient_image(&dir);
    let out = dir.path().join("img.spk");
    let o = run(&["encode", path_str(&img), "--channels", "rgbl", "--codec", "if", "--steps", "256", "-o", path_str(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_spike_container_file(&out).unwrap();
    assert_eq!((t.channels(), t.time_steps(), t.width(), t.height()), (4, 256, 8, 4));
}

#[test]
fn rate_requires_seed() {
    let dir = TempDir::new().unwrap();
    let (img, _) = gradient_image(&dir);
    let out = dir.path().join("r.spk");
    let o = run(&["encode", path_str(&img), "--codec", "rate", "-o", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    let o = run(&["encode", path_str(&img), "--codec", "rate", "--seed", "4", "--steps", "16", "-o", path_str(&out)]);
    assert!(o.status.success());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["encode", "x.ppm", "--bogus", "-o", "y"]).status.code(), Some(2));
    assert_eq!(run(&["encode", "x.ppm", "--codec", "morse", "-o", "y"]).status.code(), Some(2));
    assert_eq!(run(&["encode", "x.ppm", "--steps", "0", "-o", "y"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn black_image_encodes_to_silence_and_decodes_to_black() {
    let dir = TempDir::new().unwrap();
    let black = black_image(&dir);
    let spk = dir.path().join("x.spk");
    assert!(run(&["encode", path_str(&black), "--codec", "if", "-o", path_str(&spk)]).status.success());
    let t = read_spike_container_file(&spk).unwrap();
    assert_eq!(t.total_spikes(), 0);

    let back = dir.path().join("back.ppm");
    assert!(run(&["decode", path_str(&spk), "-o", path_str(&back)]).status.success());
    let img = read_ppm_file(&back).unwrap();
    assert!(img.pixels().iter().all(|&p| p == 0));

    let stats = run(&["stats", path_str(&spk)]);
    assert!(stats.status.success());
    let text = String::from_utf8(stats.stdout).unwrap();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(&cols[2..], &["0", "0.000000", "0", "0.000000", "0.000000"]);
    }
}

#[test]
fn if_round_trip_within_one_level() {
    let dir = TempDir::new().unwrap();
    let (img_path, img) = gradient_image(&dir);
    let spk = dir.path().join("g.spk");
    let back = dir.path().join("g_back.ppm");
    assert!(run(&["encode", path_str(&img_path), "-o", path_str(&spk)]).status.success());
    assert!(run(&["decode", path_str(&spk), "-o", path_str(&back)]).status.success());
    let decoded = read_ppm_file(&back).unwrap();
    assert_eq!(decoded.channels(), 3);
    for (a, b) in decoded.pixels().iter().zip(img.pixels()) {
        assert!((*a as i32 - *b as i32).abs() <= 1, "{a} vs {b}");
    }

    let gray_spk = dir.path().join("gray.spk");
    let gray_back = dir.path().join("gray.pgm");
    assert!(run(&["encode", path_str(&img_path), "--channels", "gray", "-o", path_str(&gray_spk)]).status.success());
    assert!(run(&["decode", path_str(&gray_spk), "-o", path_str(&gray_back)]).status.success());
    assert_eq!(read_ppm_file(&gray_back).unwrap().channels(), 1);
}

#[test]
fn ttfs_decode_rejects_multi_spike_trains() {
    let dir = TempDir::new().unwrap();
    let (img_path, img) = gradient_image(&dir);
    let spk = dir.path().join("g.spk");
    let back = dir.path().join("g.ppm");
    assert!(run(&["encode", path_str(&img_path), "-o", path_str(&spk)]).status.success());
    assert_eq!(run(&["decode", path_str(&spk), "--mode", "ttfs", "-o", path_str(&back)]).status.code(), Some(1));

    let ttfs = dir.path().join("t.spk");
    assert!(run(&["encode", path_str(&img_path), "--codec", "ttfs", "-o", path_str(&ttfs)]).status.success());
    assert!(run(&["decode", path_str(&ttfs), "--mode", "ttfs", "-o", path_str(&back)]).status.success());
    let decoded = read_ppm_file(&back).unwrap();
    for (a, b) in decoded.pixels().iter().zip(img.pixels()) {
        assert!((*a as i32 - *b as i32).abs() <= 1, "{a} vs {b}");
    }
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = TempDir::new().unwrap();
    let junk = dir.path().join("junk.spk");
    std::fs::write(&junk, b"not a container").unwrap();
    let out = dir.path().join("o");
    assert_eq!(run(&["stats", path_str(&junk)]).status.code(), Some(1));
    assert_eq!(run(&["decode", path_str(&junk), "-o", path_str(&out)]).status.code(), Some(1));
    assert_eq!(run(&["encode", path_str(&junk), "-o", path_str(&out)]).status.code(), Some(1));
    let missing = dir.path().join("missing.ppm");
    assert_eq!(run(&["encode", path_str(&missing), "-o", path_str(&out)]).status.code(), Some(1));
}

#[test]
fn stats_match_library() {
    let dir = TempDir::new().unwrap();
    let (img_path, _) = gradient_image(&dir);
    let spk = dir.path().join("g.spk");
    let csv = dir.path().join("g.csv");
    assert!(run(&["encode", path_str(&img_path), "--steps", "64", "-o", path_str(&spk)]).status.success());
    assert!(run(&["stats", path_str(&spk), "--window", "16", "-o", path_str(&csv)]).status.success());
    let t = read_spike_container_file(&spk).unwrap();
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), stats_csv(&firing_stats(&t, 16).unwrap()));
    assert_eq!(run(&["stats", path_str(&spk), "--window", "65"]).status.code(), Some(2));
}

#[test]
fn raster_lanes() {
    let dir = TempDir::new().unwrap();
    let (img_path, _) = gradient_image(&dir);
    let spk = dir.path().join("g.spk");
    let svg = dir.path().join("g.svg");
    assert!(run(&["encode", path_str(&img_path), "--steps", "16", "-o", path_str(&spk)]).status.success());
    let o = run(&["raster", path_str(&spk), "--pixels", "0,0", "7,3,2", "-o", path_str(&svg)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert_eq!(text.matches("class=\"lane\"").count(), 2);
    assert_eq!(run(&["raster", path_str(&spk), "--pixels", "0", "-o", path_str(&svg)]).status.code(), Some(2));
    assert_eq!(run(&["raster", path_str(&spk), "--pixels", "9,0", "-o", path_str(&svg)]).status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (img_path, _) = gradient_image(&dir);
    let a = dir.path().join("a.spk");
    let b = dir.path().join("b.spk");
    for out in [&a, &b] {
        let o = run(&["encode", path_str(&img_path), "--codec", "rate", "--seed", "11", "--channels", "yuv", "--steps", "32", "-o", path_str(out)]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn batch_encode_writes_one_container_per_image() {
    let dir = TempDir::new().unwrap();
    let batch = dir.path().join("batch.bin");
    write_cifar(&batch, 5);
    let out = dir.path().join("spikes");
    let o = run(&["encode", path_str(&batch), "--steps", "8", "--limit", "3", "-o", path_str(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut names: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names, ["00000.spk", "00001.spk", "00002.spk"]);
    let t = read_spike_container_file(out.join("00001.spk")).unwrap();
    assert_eq!((t.channels(), t.width()), (3, 32));
}

#[test]
fn bench_reports_csv() {
    let dir = TempDir::new().unwrap();
    let (img_path, _) = gradient_image(&dir);
    let o = run(&["bench", path_str(&img_path), "--codecs", "if,ttfs", "--steps", "16", "--reps", "3"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "codec,channels,images,flops,parameters,reps,mean_micros,stddev_micros,threads");
    assert!(lines[1].starts_with(&format!("if,rgb,1,{},0,2,", 8 * 4 * 3 * 4 * 16)));
    assert!(lines[2].starts_with(&format!("ttfs,rgb,1,{},0,2,", 8 * 4 * 3 * 2)));
    assert_eq!(run(&["bench", path_str(&img_path), "--codecs", "rate"]).status.code(), Some(2));
    assert_eq!(run(&["bench", path_str(&img_path), "--reps", "1"]).status.code(), Some(2));
}

#[test]
fn train_and_compare_on_tiny_dataset() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("cifar");
    std::fs::create_dir(&data).unwrap();
    write_cifar(&data.join("data_batch_1.bin"), 12);
    write_cifar(&data.join("test_batch.bin"), 6);
    let common = [
        "--train-count", "8", "--test-count", "4", "--epochs", "2", "--batch-size", "4", "--steps", "8", "--hidden", "6",
    ];

    let model = dir.path().join("m.snn");
    let history = dir.path().join("h.csv");
    let mut args = vec!["train", path_str(&data)];
    args.extend(common);
    args.extend(["--codec", "ttfs", "--seed", "3", "-o", path_str(&model), "--history", path_str(&history)]);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = read_checkpoint_file(&model).unwrap();
    assert_eq!((m.input_size(), m.class_count()), (256, 2));
    assert_eq!(std::fs::read_to_string(&history).unwrap().lines().count(), 3);

    let mut args = vec!["compare", path_str(&data)];
    args.extend(common);
    args.extend(["--codecs", "if,rate", "--seeds", "1,2"]);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("if,") && lines[2].starts_with("rate,"));

    let empty = dir.path().join("nothing");
    let o = run(&["compare", path_str(&empty)]);
    assert_eq!(o.status.code(), Some(1));
}
