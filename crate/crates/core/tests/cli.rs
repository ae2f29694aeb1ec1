use std::io::Write as _;

use graph_hypergroups::cli::{run, EXIT_NOT_SELF_CENTERED, EXIT_OK, EXIT_USAGE};
use graph_hypergroups::report::{
    from_json, to_json, ConvolutionReport, McReport, SchemeReport, SearchReport, VerdictReport,
};

fn hg(args: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hypergroup").chain(args.split_whitespace());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn analyze_prism3_text() {
    let (code, out, _) = hg("analyze --graph prism:3 --base 0");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("R1 ∘ R1 = 1/3 R0 + 2/9 R1 + 4/9 R2"), "{out}");
    assert!(out.contains("level sizes: 1 3 2"));
}

#[test]
fn analyze_ladder_json_round_trips() {
    let (code, out, _) = hg("analyze --graph ladder --base 0,0 --max-level 3 --format json");
    assert_eq!(code, EXIT_OK);
    let text = out.trim_end();
    let r: ConvolutionReport = from_json(text).unwrap();
    assert_eq!(r.max_level, 3);
    assert!(r.exact);
    assert_eq!(
        r.rows["1,1"],
        vec![(0, "1/3".to_string()), (2, "2/3".to_string())]
    );
    assert_eq!(to_json(&r), text);
}

#[test]
fn every_json_report_round_trips() {
    fn check<T>(args: &str)
    where
        T: serde::Serialize + for<'de> serde::Deserialize<'de>,
    {
        let (code, out, err) = hg(args);
        assert_eq!(code, EXIT_OK, "{args}: {err}");
        let text = out.trim_end();
        let parsed: T = from_json(text).unwrap();
        assert_eq!(to_json(&parsed), text, "{args}");
    }
    check::<VerdictReport>("check --graph lineprism3 --all-basepoints --format json");
    check::<VerdictReport>("check --graph lattice --max-level 3 --format json");
    check::<SchemeReport>("drg --graph petersen --format json");
    check::<SchemeReport>("drg --graph bipartite:2,3 --format json");
    check::<SchemeReport>("drg --graph tree:3 --max-level 3 --format json");
    check::<McReport>("mc --graph prism:3 --i 1 --j 2 --samples 500 --seed 1 --format json");
    check::<SearchReport>("search --order 6 --degree 3 --format json");
}

#[test]
fn check_reports_classes_and_witnesses() {
    let (_, out, _) = hg("check --graph lineprism3 --all-basepoints --format json");
    let r: VerdictReport = from_json(out.trim_end()).unwrap();
    assert!(r.productive);
    assert_eq!(r.classes.len(), 2);

    let (_, out, _) = hg("check --graph lattice --max-level 3 --format json");
    let r: VerdictReport = from_json(out.trim_end()).unwrap();
    assert!(!r.productive);
    assert_eq!(r.scope, 3);
    assert_eq!(r.failures[0].axiom, "associativity");
    assert_ne!(r.failures[0].lhs, r.failures[0].rhs);

    let (code, out, _) = hg("check --graph petersen");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("productive: true") && out.contains("base-point classes: 1"));
}

#[test]
fn drg_examples() {
    let (_, out, _) = hg("drg --graph tree:3 --max-level 5");
    assert!(
        out.contains("intersection array: (3,2,2,2,2; 1,1,1,1,1)"),
        "{out}"
    );
    let (_, out, _) = hg("drg --graph prism:4 --format json");
    let r: SchemeReport = from_json(out.trim_end()).unwrap();
    assert!(r.distance_regular);
    assert_eq!(r.p["1,1,0"], 3);
    let (_, out, _) = hg("drg --graph petersen --format json");
    let r: SchemeReport = from_json(out.trim_end()).unwrap();
    assert_eq!(r.srg, Some((10, 3, 0, 1)));
    let (_, out, _) = hg("drg --graph bipartite:2,3 --format json");
    let r: SchemeReport = from_json(out.trim_end()).unwrap();
    assert!(!r.distance_regular);
    assert_eq!(r.intersection_array, None);
    assert_eq!(r.witness.unwrap().quantity, "degree");
}

#[test]
fn mc_is_reproducible() {
    let args = "mc --graph tree:3 --base a --i 1 --j 1 --samples 20000 --seed 7 --format json";
    let (code, first, _) = hg(args);
    assert_eq!(code, EXIT_OK);
    let (_, second, _) = hg(args);
    assert_eq!(first, second);
    let r: McReport = from_json(first.trim_end()).unwrap();
    assert_eq!(r.counts.values().sum::<u64>(), 20000);
    assert_eq!(
        r.exact,
        vec![(0, "1/3".to_string()), (2, "2/3".to_string())]
    );
}

#[test]
fn search_examples() {
    let (_, out, _) = hg("search --order 6 --degree 3 --productive --format json");
    let r: SearchReport = from_json(out.trim_end()).unwrap();
    assert_eq!(r.graphs.len(), 2);
    let (_, out, _) = hg("search --order 7 --degree 4 --productive");
    assert!(out.contains("classes=2"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(hg("analyze --graph path:3").0, EXIT_NOT_SELF_CENTERED);
    let (code, _, err) = hg("check --graph path:4");
    assert_eq!(code, EXIT_NOT_SELF_CENTERED);
    assert!(err.contains("not self-centered"));
    assert_eq!(
        hg("mc --graph complete:4 --i 1 --j 1 --samples 0").0,
        EXIT_USAGE
    );
    assert_eq!(hg("search --order 11 --degree 4").0, EXIT_USAGE);
    let (code, _, err) = hg("analyze --graph dodgy:3");
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("valid specs") && err.contains("prism:N"));
    assert_eq!(hg("analyze").0, EXIT_USAGE);
    assert_eq!(hg("frobnicate").0, EXIT_USAGE);
    assert_eq!(hg("analyze --graph prism:3 --base 99").0, EXIT_USAGE);
    assert_eq!(hg("check --graph tree:3 --all-basepoints").0, EXIT_USAGE);
    let (code, out, _) = hg("--help");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("analyze"));
}

#[test]
fn file_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = dir.path().join("c6.json");
    std::fs::File::create(&c6)
        .unwrap()
        .write_all(br#"{"n": 6, "edges": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]]}"#)
        .unwrap();
    let (code, out, _) = hg(&format!("analyze --graph file:{} --base 5", c6.display()));
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("R1 ∘ R1 = 1/2 R0 + 1/2 R2"), "{out}");

    let star = dir.path().join("star.txt");
    std::fs::write(&star, "6\n0 1\n0 2\n0 3\n0 4\n0 5\n").unwrap();
    assert_eq!(
        hg(&format!("analyze --graph file:{} --base 5", star.display())).0,
        EXIT_NOT_SELF_CENTERED
    );

    let dup = dir.path().join("dup.json");
    std::fs::write(&dup, r#"{"n": 3, "edges": [[0,1],[1,0]]}"#).unwrap();
    assert_eq!(
        hg(&format!("analyze --graph file:{}", dup.display())).0,
        EXIT_USAGE
    );
    assert_eq!(
        hg("analyze --graph file:/nonexistent/graph.json").0,
        EXIT_USAGE
    );
}
