//! The bundled corpus of worked dessins and its self-test.
//!
//! Each corpus file carries an expected-value table in its comments:
//! `# expect key=value src=tag`, where the tag records provenance
//! (`known` = printed in the source literature, `calc` = computed once by
//! this tool's oracles and frozen, `def` = definitional). The self-test
//! recomputes every expected value and runs the cross-entry battery:
//! round-trips, the conjugate-family invariant checks, and the
//! distinguishing relation word.

use crate::dessin::Dessin;
use crate::dsnfile;
use crate::error::{Error, Result};
use crate::group;
use crate::word::torus_relation_word;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub dessin: Dessin,
    pub comments: Vec<String>,
    /// (key, value, provenance)
    pub expected: Vec<(String, String, String)>,
    pub text: String,
}

const BUILTIN: &[(&str, &str)] = &[
    ("trivial", include_str!("../corpus/trivial.dsn")),
    ("cube", include_str!("../corpus/cube.dsn")),
    ("d0", include_str!("../corpus/d0.dsn")),
    ("d1", include_str!("../corpus/d1.dsn")),
    ("d2", include_str!("../corpus/d2.dsn")),
    ("d0_relabel", include_str!("../corpus/d0_relabel.dsn")),
    ("rabbit24", include_str!("../corpus/rabbit24.dsn")),
    ("tree_top", include_str!("../corpus/tree_top.dsn")),
    ("tree_middle", include_str!("../corpus/tree_middle.dsn")),
    ("tree_bottom", include_str!("../corpus/tree_bottom.dsn")),
    ("f18", include_str!("../corpus/f18.dsn")),
];

pub fn parse_entry(file_name: &str, text: &str) -> Result<CorpusEntry> {
    let (dessin, comments) = dsnfile::parse(text)?;
    let mut name = file_name.to_string();
    let mut expected = Vec::new();
    for c in &comments {
        if let Some(rest) = c.strip_prefix("name:") {
            name = rest.trim().to_string();
        }
        if let Some(rest) = c.strip_prefix("expect ") {
            let mut src = String::from("calc");
            let mut kv = rest.trim();
            if let Some((head, tail)) = kv.rsplit_once(" src=") {
                kv = head.trim();
                src = tail.trim().to_string();
            }
            if let Some((k, v)) = kv.split_once('=') {
                expected.push((k.trim().to_string(), v.trim().to_string(), src));
            } else {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("malformed expect line '{}'", c),
                });
            }
        }
    }
    Ok(CorpusEntry {
        name,
        dessin,
        comments,
        expected,
        text: text.to_string(),
    })
}

/// The corpus compiled into the binary.
pub fn builtin() -> Vec<CorpusEntry> {
    BUILTIN
        .iter()
        .map(|(name, text)| parse_entry(name, text).expect("bundled corpus parses"))
        .collect()
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    builtin().into_iter().find(|e| e.name == name)
}

/// Loads every `*.dsn` file from a directory.
pub fn load_dir(dir: &std::path::Path) -> std::io::Result<Vec<Result<CorpusEntry>>> {
    let mut names: Vec<std::path::PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map_or(false, |x| x == "dsn"))
        .collect();
    names.sort();
    let mut out = Vec::new();
    for path in names {
        let text = std::fs::read_to_string(&path)?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        out.push(parse_entry(&stem, &text));
    }
    Ok(out)
}

/// Result of checking one entry: failures are human-readable mismatches.
#[derive(Clone, Debug)]
pub struct EntryCheck {
    pub name: String,
    pub failures: Vec<String>,
}

impl EntryCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Recomputes every expected value of one entry.
pub fn check_entry(e: &CorpusEntry, all: &[CorpusEntry]) -> EntryCheck {
    let mut failures = Vec::new();
    let d = &e.dessin;
    let mut closure_cache: Option<std::result::Result<usize, String>> = None;
    let mut closure_order = |d: &Dessin| -> std::result::Result<usize, String> {
        closure_cache
            .get_or_insert_with(|| {
                group::closure(d)
                    .map(|g| g.order())
                    .map_err(|err| err.to_string())
            })
            .clone()
    };
    for (key, want, _src) in &e.expected {
        let got: String = match key.as_str() {
            "degree" => d.degree().to_string(),
            "genus" => d.genus().to_string(),
            "faces" => d.face_count().to_string(),
            "passport" => d.passport().to_string(),
            "type" => d.dessin_type().to_string(),
            "closure_order" => match closure_order(d) {
                Ok(n) => n.to_string(),
                Err(msg) => format!("error: {}", msg),
            },
            "aut_order" => group::automorphisms(d).order().to_string(),
            "regular" => match group::is_regular(d) {
                Ok(b) => b.to_string(),
                Err(err) => format!("error: {}", err),
            },
            "moduli" => group::real_moduli_test(d).status.to_string(),
            "moduli_witness_order" => match group::real_moduli_test(d).witness_order {
                Some(o) => o.to_string(),
                None => "none".to_string(),
            },
            "iso" => {
                let target = all.iter().find(|o| &o.name == want);
                match target {
                    None => format!("no corpus entry named '{}'", want),
                    Some(t) => {
                        if d.is_isomorphic(&t.dessin).is_some() {
                            want.clone()
                        } else {
                            format!("not isomorphic to {}", want)
                        }
                    }
                }
            }
            other => {
                failures.push(format!("unknown expected key '{}'", other));
                continue;
            }
        };
        if &got != want {
            failures.push(format!("{}: expected {}, got {}", key, want, got));
        }
    }
    EntryCheck {
        name: e.name.clone(),
        failures,
    }
}

/// Cross-entry battery: round-trips, the two conjugate families, and the
/// distinguishing relation word. Returns (check name, pass, detail).
pub fn battery(entries: &[CorpusEntry]) -> Vec<(String, bool, String)> {
    let mut out = Vec::new();
    let find = |n: &str| entries.iter().find(|e| e.name == n);

    let mut round_trip_ok = true;
    let mut round_trip_detail = String::from("all entries");
    for e in entries {
        let text = dsnfile::serialize(&e.dessin, &[]);
        match dsnfile::parse(&text) {
            Ok((d2, _)) if d2 == e.dessin => {}
            _ => {
                round_trip_ok = false;
                round_trip_detail = format!("entry {} does not round-trip", e.name);
                break;
            }
        }
    }
    out.push(("round_trip".to_string(), round_trip_ok, round_trip_detail));

    for family in [&["d0", "d1", "d2"][..], &["tree_top", "tree_middle", "tree_bottom"][..]] {
        let members: Vec<&CorpusEntry> = family.iter().filter_map(|n| find(n)).collect();
        if members.len() != family.len() {
            continue;
        }
        let label = format!("family_{}", family[0]);
        let mut ok = true;
        let mut detail = String::from("shared invariants, pairwise distinct");
        let first = members[0];
        for m in &members[1..] {
            if m.dessin.degree() != first.dessin.degree()
                || m.dessin.passport() != first.dessin.passport()
                || m.dessin.genus() != first.dessin.genus()
            {
                ok = false;
                detail = format!("{} disagrees with {} on a shared invariant", m.name, first.name);
            }
        }
        let orders: Vec<_> = members
            .iter()
            .map(|m| group::closure(&m.dessin).map(|g| g.order()))
            .collect();
        if let (Ok(a), rest) = (&orders[0], &orders[1..]) {
            for (m, o) in members[1..].iter().zip(rest) {
                match o {
                    Ok(v) if v == a => {}
                    _ => {
                        ok = false;
                        detail = format!("{} closure order differs", m.name);
                    }
                }
            }
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if members[i].dessin.is_isomorphic(&members[j].dessin).is_some() {
                    ok = false;
                    detail = format!(
                        "{} and {} are isomorphic but should not be",
                        members[i].name, members[j].name
                    );
                }
            }
        }
        out.push((label, ok, detail));
    }

    if let (Some(d0), Some(d1), Some(d2)) = (find("d0"), find("d1"), find("d2")) {
        let w = torus_relation_word();
        let ev = |e: &CorpusEntry| w.evaluate(e.dessin.x(), e.dessin.y()).unwrap();
        let ok = ev(d0).is_identity()
            && ev(d1).to_string() == "(4 10)(6 12)"
            && ev(d2).to_string() == "(5 11)(6 12)";
        out.push((
            "relation_word".to_string(),
            ok,
            "identity on d0, (4 10)(6 12) on d1, (5 11)(6 12) on d2".to_string(),
        ));
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dessin::Passport;

    #[test]
    fn bundled_corpus_parses_and_passes() {
        let entries = builtin();
        assert!(entries.len() >= 10);
        for e in &entries {
            let check = check_entry(e, &entries);
            assert!(check.ok(), "{}: {:?}", e.name, check.failures);
        }
        for (name, ok, detail) in battery(&entries) {
            assert!(ok, "battery {} failed: {}", name, detail);
        }
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let mut entries = builtin();
        // swap a generator: d0's x with d1's x, keeping the expected table
        let d1x = entries
            .iter()
            .find(|e| e.name == "d1")
            .unwrap()
            .dessin
            .x()
            .clone();
        let d0 = entries.iter_mut().find(|e| e.name == "d0").unwrap();
        d0.dessin = Dessin::new(d1x, d0.dessin.y().clone()).unwrap();
        let entries2 = entries.clone();
        let check = check_entry(
            entries2.iter().find(|e| e.name == "d0").unwrap(),
            &entries2,
        );
        assert!(!check.ok());
    }

    #[test]
    fn every_expected_line_is_tagged() {
        for e in builtin() {
            assert!(!e.expected.is_empty() || e.name == "d0_relabel");
            for (_, _, src) in &e.expected {
                assert!(matches!(src.as_str(), "known" | "calc" | "def"), "{}", e.name);
            }
        }
    }

    #[test]
    fn passport_expectations_parse() {
        for e in builtin() {
            for (k, v, _) in &e.expected {
                if k == "passport" {
                    assert_eq!(&Passport::parse(v).unwrap(), &e.dessin.passport());
                }
            }
        }
    }
}
