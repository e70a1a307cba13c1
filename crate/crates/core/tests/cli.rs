use std::fs;
use std::path::PathBuf;

use latin_census::cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("latin-census").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latin-census-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn documented_examples() {
    assert_eq!(invoke(&["count-rectangles", "--k", "3", "--n", "6"]), (0, "1064\n".into(), String::new()));
    let via2 = invoke(&["count-squares", "--n", "5", "--via-k", "2"]);
    let via3 = invoke(&["count-squares", "--n", "5", "--via-k", "3"]);
    assert_eq!(via2, (0, "56\n".into(), String::new()));
    assert_eq!(via2, via3);
    let (code, out, _) = invoke(&["verify-published"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn output_formats() {
    assert_eq!(invoke(&["count-squares", "--n", "7"]).1, "169 42080\n");
    assert_eq!(invoke(&["count-squares", "--n", "7", "--format", "machine"]).1, "16942080\n");
    let (_, out, _) = invoke(&["census-extremal", "--n", "7", "--k", "3", "--format", "machine"]);
    assert_eq!(out, "CENSUS 7 3 35792 14 8 3 48\n");
    let (_, out, _) = invoke(&["enumerate-graphs", "--k", "2", "--n", "11", "--format", "machine"]);
    assert_eq!(out.lines().last(), Some("CLASSES 11 2 14"));
    assert_eq!(out.lines().filter(|l| l.starts_with("CLASS ")).count(), 14);
    let (_, out, _) = invoke(&["symmetry-census", "--n", "4", "--format", "machine"]);
    assert_eq!(out, "SYM 4 4 4 1/1 274877906944/81\n");
    let (_, out, _) = invoke(&["factorize", "--n", "10", "--format", "machine"]);
    assert_eq!(out, "7580721483160132811489280 = 2^28 * 3^2 * 5 * 31 * 37 * 547135293937\n");
    assert_eq!(invoke(&["factorize", "56"]).1, "56 = 2^3 * 7\n");
}

#[test]
fn machine_output_is_independent_of_workers() {
    let args = ["census-extremal", "--n", "7", "--format", "machine"];
    let one = invoke(&[&args[..], &["--workers", "1"]].concat());
    let four = invoke(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one.0, 0);
    assert_eq!(one, four);
    let seeded = invoke(&[&args[..], &["--edge-rule", "seeded", "--seed", "17"]].concat());
    assert_eq!(one, seeded);
}

#[test]
fn verification_reports_and_exit_codes() {
    let (code, out, _) = invoke(&["permanent-count", "--n", "3", "--poly", "7,1,0"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("12\nPASS permanent-n3"));
    let (code, out, _) = invoke(&["divisors", "--n", "9"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS half-order-divisor-n9"));
    let (code, out, _) = invoke(&["reproduce-tables", "--max-n", "5"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    assert!(out.contains("PASS extremal-k3-n5"));
}

#[test]
fn usage_errors() {
    for args in [
        &["bogus"][..],
        &["count-rectangles", "--k", "3"],
        &["count-rectangles", "--k", "3", "--n", "9"],
        &["count-squares", "--n", "4", "--workers", "0"],
        &["count-squares", "--n", "4", "--format", "xml"],
        &["factorize"],
        &["factorize", "12x"],
        &["reproduce-tables", "--max-n", "9"],
        &["permanent-count", "--n", "3", "--poly", "1,2"],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("count-rectangles") && out.contains("--memo-cache"));
}

#[test]
fn memo_cache_resume_is_byte_identical() {
    let dir = scratch_dir("resume");
    let cache = dir.join("memo.txt");
    let cache_arg = cache.to_str().unwrap();
    let fresh = invoke(&["census-extremal", "--n", "8", "--k", "4", "--format", "machine"]);
    let first = invoke(&[
        "census-extremal", "--n", "8", "--k", "4", "--format", "machine", "--memo-cache", cache_arg,
        "--checkpoint-every", "7",
    ]);
    assert_eq!(first, fresh);
    let saved = fs::read_to_string(&cache).unwrap();
    assert!(!saved.is_empty());

    // A run cut short leaves a prefix of the memo; resuming from it must not change the output.
    let partial: String = saved.lines().take(saved.lines().count() / 3).map(|l| format!("{l}\n")).collect();
    fs::write(&cache, partial).unwrap();
    let resumed = invoke(&["census-extremal", "--n", "8", "--k", "4", "--format", "machine", "--memo-cache", cache_arg]);
    assert_eq!(resumed, fresh);
    assert_eq!(fs::read_to_string(&cache).unwrap(), saved);

    fs::write(&cache, "not a memo line\n").unwrap();
    let (code, _, err) = invoke(&["count-squares", "--n", "6", "--memo-cache", cache_arg]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "{err}");

    let missing_dir = dir.join("absent").join("memo.txt");
    let (code, _, _) = invoke(&["count-squares", "--n", "6", "--memo-cache", missing_dir.to_str().unwrap()]);
    assert_eq!(code, 1);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cache_path_from_environment() {
    let dir = scratch_dir("env");
    let cache = dir.join("env-memo.txt");
    std::env::set_var(latin_census::cli::CACHE_ENV, &cache);
    let (code, out, _) = invoke(&["count-squares", "--n", "6", "--format", "machine"]);
    std::env::remove_var(latin_census::cli::CACHE_ENV);
    assert_eq!((code, out.as_str()), (0, "9408\n"));
    assert!(cache.exists());
    fs::remove_dir_all(&dir).unwrap();
}
