use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn countable(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_countable"))
        .args(args)
        .current_dir(root())
        .env_remove("WORKBENCH_DEFAULT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = countable(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = root().join("crates/cli/tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn fails(args: &[&str]) -> String {
    let out = countable(args);
    assert!(!out.status.success(), "{args:?} should fail");
    assert!(out.stdout.is_empty() || args[0] == "decide-increasing");
    String::from_utf8(out.stderr).unwrap()
}

#[test]
fn rank_and_unrank_examples() {
    assert_eq!(stdout_ok(&["rank", "ba", "--alphabet", "ab"]), "5\n");
    assert_eq!(stdout_ok(&["rank", "aaab"]), "16\n");
    assert_eq!(stdout_ok(&["unrank", "0", "--alphabet", "ab"]), "\n");
    assert_eq!(stdout_ok(&["unrank", "4", "--alphabet", "abc"]), "aa\n");
    assert_eq!(stdout_ok(&["rank", "", "--alphabet", "a"]), "0\n");
}

#[test]
fn unrank_table_matches_golden() {
    let got: String = (0..17)
        .map(|i| stdout_ok(&["unrank", &i.to_string()]))
        .collect();
    assert_eq!(got, golden("unrank_table.txt"));
}

#[test]
fn rank_through_unrank_is_identity() {
    // all strings over {a,b} of length <= 8, built independently
    let mut words = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..8 {
        layer = layer
            .iter()
            .flat_map(|w| [format!("{w}a"), format!("{w}b")])
            .collect();
        words.extend(layer.iter().cloned());
    }
    assert_eq!(words.len(), 511);
    for (i, w) in words.iter().enumerate() {
        let r = stdout_ok(&["rank", w]);
        let back = stdout_ok(&["unrank", r.trim()]);
        assert_eq!(back, format!("{w}\n"));
        assert_eq!(r.trim().parse::<usize>().unwrap(), i, "{w}");
    }
}

#[test]
fn run_tm_reports_outcome_and_steps() {
    assert_eq!(
        stdout_ok(&["run-tm", "samples/accept_all.tm", "ab"]),
        "accepted steps=0\n"
    );
    assert_eq!(
        stdout_ok(&["run-tm", "samples/even_length.tm", "aba", "--budget", "100"]),
        "rejected steps=4\n"
    );
    assert_eq!(
        stdout_ok(&[
            "run-tm",
            "samples/nondeciders/loop_on_odd.tm",
            "a",
            "--budget",
            "50"
        ]),
        "out_of_budget steps=50\n"
    );
}

#[test]
fn budget_falls_back_to_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_countable"))
        .args(["run-tm", "samples/nondeciders/loop_on_odd.tm", "a"])
        .current_dir(root())
        .env("WORKBENCH_DEFAULT_BUDGET", "77")
        .stderr(Stdio::inherit())
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "out_of_budget steps=77\n"
    );
}

#[test]
fn encode_matches_golden_bits() {
    for name in [
        "accept_all",
        "even_length",
        "slow_palindrome",
        "member_of_finite_set",
    ] {
        let bits =
            std::fs::read_to_string(root().join(format!("samples/golden/{name}.bits"))).unwrap();
        assert_eq!(stdout_ok(&["encode", &format!("samples/{name}.tm")]), bits);
    }
}

#[test]
fn decode_prints_machine_or_fails() {
    let bits = std::fs::read_to_string(root().join("samples/golden/slow_palindrome.bits")).unwrap();
    assert_eq!(
        stdout_ok(&["decode", bits.trim()]),
        golden("decode_slow_palindrome.txt")
    );
    assert!(fails(&["decode", "0101"]).starts_with("error: invalid encoding"));
    assert!(fails(&["decode", "0012"]).contains("invalid encoding"));
}

#[test]
fn decoded_text_reencodes_to_the_same_bits() {
    let bits = std::fs::read_to_string(root().join("samples/golden/anbn.bits")).unwrap();
    let text = stdout_ok(&["decode", bits.trim()]);
    let tmp = std::env::temp_dir().join(format!("countable-cli-{}.tm", std::process::id()));
    std::fs::write(&tmp, text).unwrap();
    let again = stdout_ok(&["encode", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).ok();
    assert_eq!(again, bits);
}

#[test]
fn dovetail_goldens() {
    assert_eq!(
        stdout_ok(&["dovetail", "samples/even_length.tm", "--max-prints", "5"]),
        golden("dovetail_even_length.txt")
    );
    assert_eq!(
        stdout_ok(&["dovetail", "samples/detour_on_a.tm", "--max-prints", "8"]),
        golden("dovetail_detour_on_a.txt")
    );
    assert_eq!(
        stdout_ok(&[
            "dovetail",
            "samples/nondeciders/loop_on_odd.tm",
            "--max-prints",
            "6"
        ]),
        golden("dovetail_loop_on_odd.txt")
    );
}

#[test]
fn dovetail_stops_at_round_limit() {
    // the finite set {a, ab, bba} is exhausted long before 1000 prints
    let out = stdout_ok(&[
        "dovetail",
        "samples/member_of_finite_set.tm",
        "--max-prints",
        "1000",
        "--max-rounds",
        "60",
    ]);
    assert_eq!(out, "a\nab\nbba\n");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "dovetail",
        "samples/slow_palindrome.tm",
        "--max-prints",
        "40",
    ];
    assert_eq!(countable(&args).stdout, countable(&args).stdout);
}

#[test]
fn nth_and_index_of() {
    assert_eq!(stdout_ok(&["nth", "--bijection", "unrank", "16"]), "aaab\n");
    assert_eq!(stdout_ok(&["nth", "samples/even_length.tm", "3"]), "ba\n");
    assert_eq!(
        stdout_ok(&[
            "index-of",
            "samples/even_length.tm",
            "ba",
            "--budget",
            "100"
        ]),
        "3\n"
    );
    assert_eq!(
        stdout_ok(&[
            "index-of",
            "samples/even_length.tm",
            "aba",
            "--budget",
            "100"
        ]),
        "not_seen\n"
    );
    assert!(fails(&[
        "nth",
        "--bijection",
        "unrank",
        "samples/even_length.tm",
        "3"
    ])
    .contains("only the index"));
}

#[test]
fn decide_increasing_streams() {
    assert_eq!(
        stdout_ok(&["decide-increasing", "even-ranks", "b"]),
        "accepted\n"
    );
    assert_eq!(
        stdout_ok(&["decide-increasing", "even-ranks", "a"]),
        "rejected\n"
    );
    assert_eq!(
        stdout_ok(&["decide-increasing", "squares", "ab"]),
        "accepted\n"
    );
    assert_eq!(
        stdout_ok(&["decide-increasing", "list:a,bb", "b"]),
        "rejected\n"
    );
    assert!(fails(&["decide-increasing", "list:b,a", "a"]).contains("not increasing"));
    assert!(fails(&["decide-increasing", "odd-ranks", "a"]).contains("unknown stream"));
}

#[test]
fn deletemin_and_chain_search() {
    assert_eq!(
        stdout_ok(&["deletemin", "--bijection", "squares", "--count", "6"]),
        golden("deletemin_squares.txt")
    );
    assert_eq!(
        stdout_ok(&[
            "chain-search",
            "--order",
            "unrank",
            "--from",
            "bb",
            "--to",
            ""
        ]),
        golden("chain_unrank_bb.txt")
    );
    let lex = stdout_ok(&[
        "chain-search",
        "--order",
        "lex-nn",
        "--from",
        "1,0",
        "--to",
        "0,0",
        "--budget",
        "10000",
    ]);
    let mut lines = lex.lines();
    assert_eq!(lines.next(), Some("budget_exceeded 10002"));
    assert_eq!(lines.next(), Some("1,0"));
    assert_eq!(lines.last(), Some("0,0"));
}

#[test]
fn diagonalize_goldens() {
    for mode in ["flip", "shift", "machine-x"] {
        let file = format!("diagonalize_{}.txt", mode.replace('-', "_"));
        assert_eq!(
            stdout_ok(&["diagonalize", "--library", "samples", "--mode", mode]),
            golden(&file),
            "{mode}"
        );
    }
    assert_eq!(
        stdout_ok(&[
            "diagonalize",
            "--library",
            "samples",
            "--mode",
            "machine-x",
            "--input",
            "bb"
        ]),
        "k w M_k(w) X(w)\n6 bb 1 0\n"
    );
}

#[test]
fn errors_are_one_line_and_nonzero() {
    for args in [
        &["rank", "abc"][..],
        &["unrank", "-1"],
        &["run-tm", "samples/missing.tm", "a"],
        &["encode", "samples"],
        &[
            "diagonalize",
            "--library",
            "samples/nondeciders",
            "--budget",
            "1000",
        ],
        &["chain-search", "--from", "0,0", "--to", "1,0"],
    ] {
        let err = fails(args);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{args:?}: {err}");
    }
}

#[test]
fn unknown_flags_are_rejected() {
    let out = countable(&["rank", "ba", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("--bogus"));
}
