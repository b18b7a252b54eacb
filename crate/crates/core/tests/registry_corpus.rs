use std::collections::BTreeSet;

use cubal::corpus::{delta_swap_mutants, standard_corpus, Instance};
use cubal::registry::{law_ids, run_registry, select, RunOptions, Status};

/// Labels of the source text that are out of scope for the registry.
const OUT_OF_SCOPE: &[&str] = &["def:ccPres"];

/// Registry entries for named statements that carry no label of their own.
const UNLABELLED: &[&str] =
    &["def:cubic", "def:MR", "lem:caretTotal", "def:sim", "lem:preceqMeet", "lem:simAbove", "thm:localEmbed"];

/// Every label of the source text, sorted.
const LABELS: &[&str] = &[
    "cor:DeltaDoublePrinc",
    "cor:Idempotence",
    "cor:closIntersect",
    "cor:conJoint",
    "cor:doubleDelta",
    "cor:downGC",
    "cor:filter",
    "cor:gFilter",
    "cor:implSS",
    "cor:inclImpl",
    "cor:interStrBool",
    "cor:iteratedDelta",
    "cor:joinStrBool",
    "cor:lenEq",
    "cor:lots",
    "cor:preFilterFIP",
    "def:Boolean",
    "def:Delta",
    "def:caret",
    "def:ccPres",
    "def:compatible",
    "def:cup",
    "def:envAlg",
    "def:gCover",
    "def:impl",
    "def:implColl",
    "def:sia",
    "eq:one",
    "lem:AlphaBeta",
    "lem:Boolean",
    "lem:BooleanANotherWay",
    "lem:DeltaInMR",
    "lem:DeltagOne",
    "lem:closIntersect",
    "lem:compEQ",
    "lem:cup",
    "lem:deltaGivesStr",
    "lem:deltaGivesStrA",
    "lem:deltaOne",
    "lem:distrib",
    "lem:fipPreFilter",
    "lem:gFF",
    "lem:gFilter",
    "lem:gcEQcomp",
    "lem:implDDD",
    "lem:implGG",
    "lem:implInDelta",
    "lem:implgTwice",
    "lem:inclAgain",
    "lem:inclDelta",
    "lem:inclImpl",
    "lem:interDelta",
    "lem:interSect",
    "lem:interStrBool",
    "lem:interTwoFil",
    "lem:intersectSpec",
    "lem:intervals",
    "lem:lots",
    "lem:middle",
    "lem:moving",
    "lem:simEq",
    "lem:simHom",
    "lem:simeq",
    "lem:smallH",
    "lem:twoThreeSame",
    "lem:upwards",
    "rem:gCoverDown",
    "rem:one",
    "rem:uSub",
    "thm:Boolean",
    "thm:BooleanAlgebra",
    "thm:MRalgFilter",
    "thm:MRgCover",
    "thm:envAlg",
    "thm:envGCoverII",
    "thm:envGCoversIII",
    "thm:envImpl",
    "thm:existsGCovers",
    "thm:gFF",
    "thm:inplEmbed",
    "thm:isoIota",
    "thm:lots",
    "thm:oneThreeEqual",
    "thm:transfer",
    "thm:wkBoolean",
];

#[test]
fn registry_ids_cover_the_labels() {
    let mut expected: BTreeSet<String> = LABELS.iter().map(|s| s.to_string()).collect();
    assert_eq!(expected.len(), 85);
    for l in OUT_OF_SCOPE {
        assert!(expected.remove(*l), "{l}");
    }
    expected.extend(UNLABELLED.iter().map(|s| s.to_string()));
    let ids: BTreeSet<String> = law_ids().into_iter().map(String::from).collect();
    assert_eq!(ids.len(), law_ids().len(), "duplicate ids");
    assert_eq!(ids, expected);
}

#[test]
fn standard_corpus_has_no_failures() {
    let corpus = standard_corpus().unwrap();
    let report = run_registry(&corpus, &select(&["all".into()]).unwrap(), RunOptions::default());
    assert!(report.failures().next().is_none(), "{}", report.render_text());
    assert_eq!(report.results.len(), corpus.len() * law_ids().len());
    // Skips are confined to laws tied to a particular construction or to MR hosts.
    let skipping: BTreeSet<&str> =
        report.results.iter().filter(|r| matches!(r.status, Status::Skipped(_))).map(|r| r.law).collect();
    let allowed: BTreeSet<&str> =
        ["cor:lenEq", "lem:Boolean", "lem:fipPreFilter", "lem:simHom", "thm:MRgCover", "thm:transfer"].into();
    assert!(skipping.is_subset(&allowed), "{skipping:?}");
}

#[test]
fn reports_are_deterministic() {
    let mut corpus = standard_corpus().unwrap();
    corpus.extend(delta_swap_mutants(&Instance::interval(2).unwrap(), 11, 2).unwrap());
    let laws = select(&["all".into()]).unwrap();
    let opts = RunOptions { seed: 3, budget: 50 };
    let a = run_registry(&corpus, &laws, opts);
    let b = run_registry(&corpus, &laws, opts);
    assert_eq!(a.render_text(), b.render_text());
    assert_eq!(a.render_json(), b.render_json());
}

#[test]
fn order_follows_registry_then_corpus() {
    let corpus = vec![Instance::interval(1).unwrap(), Instance::signed(1).unwrap()];
    let laws = select(&["lem:simeq".into(), "def:cubic".into()]).unwrap();
    let r = run_registry(&corpus, &laws, RunOptions::default());
    let order: Vec<(&str, &str)> = r.results.iter().map(|x| (x.law, x.instance.as_str())).collect();
    assert_eq!(
        order,
        [("def:cubic", "I(2^1)"), ("def:cubic", "S({x})"), ("lem:simeq", "I(2^1)"), ("lem:simeq", "S({x})")]
    );
}

#[test]
fn json_report_keys_by_label() {
    let r = run_registry(
        &[Instance::interval(1).unwrap()],
        &select(&["lem:distrib".into()]).unwrap(),
        RunOptions::default(),
    );
    let v: serde_json::Value = serde_json::from_str(&r.render_json()).unwrap();
    let row = &v["results"][0];
    assert_eq!(row["law"], "lem:distrib");
    assert_eq!(row["status"], "pass");
    assert!(row["note"].as_str().unwrap().contains("printed form"));
}
