use std::path::{Path, PathBuf};

use noether::groups;
use noether::text::{BoundDiagram, BoundZigzag, Workspace};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn nf_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "nf"))
        .collect();
    v.sort();
    v
}

#[test]
fn group_files_match_builtins() {
    let files = nf_files(&fixtures().join("groups"));
    assert_eq!(files.len(), 14);
    for p in files {
        let ws = Workspace::load(&[&p]).unwrap();
        let (name, a) = ws.algebras.iter().next().unwrap();
        let builtin = groups::by_name(name).unwrap_or_else(|| panic!("{name} is not built in"));
        assert_eq!(a.p_rows(), builtin.p_rows(), "{name}");
        assert_eq!(a.d_rows(), builtin.d_rows(), "{name}");
    }
}

#[test]
fn every_fixture_round_trips() {
    let mut files = nf_files(&fixtures());
    files.extend(nf_files(&fixtures().join("groups")));
    for p in files {
        let ws = Workspace::load(&[&p]).unwrap();
        let text = ws.to_text();
        let again = Workspace::parse_str(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", p.display()));
        assert_eq!(ws, again, "{}", p.display());
        assert_eq!(again.to_text(), text);
        for z in ws.zigzags.keys() {
            assert!(matches!(ws.zigzag(z).unwrap(), BoundZigzag::Slominski(_)));
        }
        for d in ws.diagrams.keys() {
            assert!(matches!(ws.diagram(d).unwrap(), BoundDiagram::Slominski(_)));
        }
    }
}

#[test]
fn d8_elements_are_named() {
    let ws = Workspace::load(&[fixtures().join("groups/D8.nf")]).unwrap();
    let d8 = &ws.algebras["D8"];
    let s = ws.algebra_sub(d8, "{e,b}").unwrap();
    assert_eq!(ws.algebra_sub(d8, "{0,4}"), Some(s));
    assert_eq!(ws.algebra_label(d8, s), "{e,b}");
    assert!(!d8.is_normal_id(s));
}
