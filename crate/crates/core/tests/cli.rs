use std::process::{Command, Output};

use xigraph::cli::gold::{embedded, XPM_CSV};
use xigraph::cli::GraphDocument;
use xigraph::families::Curve;
use xigraph::modring::RingCtx;
use xigraph::xicore::build_xi;

fn xigraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xigraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_text_gamma1_four() {
    let o = xigraph(&[
        "compute", "--family", "gamma1", "--level", "4", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "1 component: cycle P\u{2013}P\u{2013}P, weights 1,1,2"
    );
}

#[test]
fn compute_json_full_level_one() {
    let o = xigraph(&[
        "compute", "--family", "full", "--level", "1", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = GraphDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!((doc.vertices.len(), doc.edges.len()), (2, 2));
}

#[test]
fn compute_split_255() {
    let o = xigraph(&["compute", "--family", "split", "--level", "255"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(30 parabolic, 18 elliptic)"));
}

#[test]
fn custom_group_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(
        &path,
        r#"{"level": 2, "conjugation": "std", "generators": [[[1, 1], [1, 0]]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = xigraph(&["compute", "--family", "custom", "--group-file", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("1 component: cycle P, weights 1\n"),
        "{}",
        stdout(&o)
    );

    let o = xigraph(&[
        "compute",
        "--family",
        "custom",
        "--group-file",
        p,
        "--format",
        "json",
    ]);
    let doc = GraphDocument::from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.edge_types.unwrap(), ["T1b"]);

    let o = xigraph(&[
        "compute",
        "--family",
        "custom",
        "--group-file",
        p,
        "--level",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));

    // The whole of SL_2(Z/7) does not fit in a closure budget of 10.
    std::fs::write(
        &path,
        r#"{"level": 7, "generators": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]}"#,
    )
    .unwrap();
    let o = xigraph(&[
        "compute",
        "--family",
        "custom",
        "--group-file",
        p,
        "--budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "--family", "gamma9", "--level", "4"][..],
        &["compute", "--family", "gamma1"],
        &["compute", "--family", "gamma1", "--level", "0"],
        &[
            "compute",
            "--family",
            "gamma1",
            "--level",
            "5",
            "--conjugation",
            "inv",
        ],
        &["table", "--family", "full", "--max", "4"],
        &["check", "--suite", "bogus"],
        &["frobnicate"],
    ] {
        assert_eq!(xigraph(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table_reproduces_gold_layout() {
    let o = xigraph(&["table", "--family", "gamma0", "--min", "1", "--max", "120"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let gold = embedded("gamma0").unwrap();
    assert_eq!(out.lines().next().unwrap(), gold.header());
    for (line, row) in out.lines().skip(1).zip(&gold.rows) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[1], row.level.to_string());
        for i in 0..3 {
            assert_eq!(cells[2 + i], row.cells[i].unwrap().to_string(), "{line}");
        }
    }
    assert_eq!(out.lines().count(), 121);

    let o = xigraph(&[
        "table", "--family", "gamma1", "--min", "100", "--max", "100",
    ]);
    assert!(
        stdout(&o).ends_with("gamma1,100,231,10,60,0\n"),
        "{}",
        stdout(&o)
    );

    let o = xigraph(&["table", "--family", "gamma", "--max", "3", "--format", "md"]);
    assert_eq!(
        stdout(&o),
        "| N | g | pi0 | p_plus | p_minus |\n|---:|---:|---:|---:|---:|\n\
         | 1 | 0 | 1 | 1 | 1 |\n| 2 | 0 | 1 | 3 | 1 |\n| 3 | 0 | 1 | 2 | 2 |\n"
    );
}

#[test]
fn table_matches_published_plus_minus_rows() {
    let o = xigraph(&["table", "--family", "gamma", "--min", "3", "--max", "60"]);
    let published: Vec<&str> = XPM_CSV.lines().skip(3).collect();
    assert_eq!(stdout(&o).lines().skip(1).collect::<Vec<_>>(), published);
}

#[test]
fn verify_reports_cells() {
    let o = xigraph(&["verify", "--family", "gamma0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("gamma0: 120 rows, 360 cells, 0 mismatches"));

    let o = xigraph(&["verify", "--family", "split", "--max", "100"]);
    assert!(stdout(&o).contains("split: 100 rows, 400 cells"));

    let o = xigraph(&["verify", "--family", "gamma", "--max", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "MISMATCH family=gamma N=2 column=p_plus expected=2 got=3"
    );
}

#[test]
fn verify_perturbed_gold() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x0.csv");
    let csv = xigraph::cli::gold::X0_CSV.replace("\ngamma0,11,1,1,2,\n", "\ngamma0,11,1,1,5,\n");
    assert_ne!(csv, xigraph::cli::gold::X0_CSV);
    std::fs::write(&path, csv).unwrap();
    let o = xigraph(&[
        "verify",
        "--family",
        "gamma0",
        "--max",
        "20",
        "--gold",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "MISMATCH family=gamma0 N=11 column=p expected=5 got=2"
    );
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_xigraph"))
            .args(["verify", "--max", "40"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        (o.status.code(), o.stdout)
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("1"));
}

#[test]
fn check_suite_summary() {
    let o = xigraph(&["check", "--suite", "oracle", "--max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["suite"], "oracle");
    assert!(v["suites"][0]["cases"].as_u64().unwrap() > 20);
}

fn gold_range() -> Vec<(Curve, u32)> {
    let mut out = Vec::new();
    for n in 1..=120 {
        out.push((Curve::Gamma0, n));
    }
    for n in 1..=100 {
        out.push((Curve::Gamma1, n));
        out.push((Curve::Split, n));
    }
    for n in 1..=60 {
        out.push((Curve::Gamma, n));
        out.push((Curve::GammaMinus, n));
    }
    out
}

fn document(c: Curve, n: u32) -> GraphDocument {
    let spec = c.group(&RingCtx::new(n).unwrap());
    let conj = c.conjugation(n);
    GraphDocument::from_xi(&build_xi(&spec, conj).unwrap(), &spec, conj).unwrap()
}

#[test]
fn json_round_trips() {
    let mut count = 0;
    for (c, n) in gold_range().into_iter().step_by(4).take(100) {
        let doc = document(c, n);
        assert_eq!(
            GraphDocument::from_json(&doc.to_json()).unwrap(),
            doc,
            "{c} {n}"
        );
        count += 1;
    }
    assert_eq!(count, 100);
}

/// Minimal DOT grammar for undirected graphs: `graph ID { stmt* }` where a
/// statement is `node attrs`, `ID attrs?` or `ID -- ID attrs?`, optionally
/// followed by `;`, and `attrs` is `[ (ID = ID (,|;)?)* ]`.
mod dot {
    #[derive(Debug, PartialEq, Clone)]
    enum Tok {
        Id(String),
        Punct(&'static str),
    }

    fn lex(s: &str) -> Result<Vec<Tok>, String> {
        let cs: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut out = Vec::new();
        while i < cs.len() {
            let c = cs[i];
            if c.is_whitespace() {
                i += 1;
            } else if c == '"' {
                let mut v = String::new();
                i += 1;
                loop {
                    match cs.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') => {
                            v.push(*cs.get(i + 1).ok_or("dangling escape")?);
                            i += 2;
                        }
                        Some(&ch) => {
                            v.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Id(v));
            } else if c.is_alphanumeric()
                || c == '_'
                || c == '.'
                || c == '-' && cs.get(i + 1) != Some(&'-')
            {
                let start = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '.') {
                    i += 1;
                }
                if i == start {
                    return Err(format!("stray '-' at {i}"));
                }
                out.push(Tok::Id(cs[start..i].iter().collect()));
            } else if c == '-' {
                out.push(Tok::Punct("--"));
                i += 2;
            } else {
                let p = match c {
                    '{' => "{",
                    '}' => "}",
                    '[' => "[",
                    ']' => "]",
                    '=' => "=",
                    ',' => ",",
                    ';' => ";",
                    _ => return Err(format!("unexpected '{c}'")),
                };
                out.push(Tok::Punct(p));
                i += 1;
            }
        }
        Ok(out)
    }

    struct P {
        t: Vec<Tok>,
        i: usize,
    }

    impl P {
        fn peek(&self) -> Option<&Tok> {
            self.t.get(self.i)
        }
        fn punct(&mut self, p: &str) -> Result<(), String> {
            match self.t.get(self.i) {
                Some(Tok::Punct(q)) if *q == p => {
                    self.i += 1;
                    Ok(())
                }
                other => Err(format!("expected '{p}', found {other:?}")),
            }
        }
        fn eat(&mut self, p: &str) -> bool {
            self.punct(p).is_ok()
        }
        fn id(&mut self) -> Result<String, String> {
            match self.t.get(self.i) {
                Some(Tok::Id(s)) => {
                    self.i += 1;
                    Ok(s.clone())
                }
                other => Err(format!("expected an identifier, found {other:?}")),
            }
        }
        fn attrs(&mut self) -> Result<(), String> {
            self.punct("[")?;
            while !self.eat("]") {
                self.id()?;
                self.punct("=")?;
                self.id()?;
                let _ = self.eat(",") || self.eat(";");
            }
            Ok(())
        }
    }

    type Parsed = (Vec<String>, Vec<(String, String)>);

    /// Parses `s`, returning the declared node ids and the edge endpoints.
    pub fn parse(s: &str) -> Result<Parsed, String> {
        let mut p = P { t: lex(s)?, i: 0 };
        if p.id()? != "graph" {
            return Err("expected 'graph'".into());
        }
        if matches!(p.peek(), Some(Tok::Id(_))) {
            p.id()?;
        }
        p.punct("{")?;
        let (mut nodes, mut edges) = (Vec::new(), Vec::new());
        while !p.eat("}") {
            let a = p.id()?;
            if a == "node" || a == "edge" || a == "graph" {
                p.attrs()?;
            } else if p.eat("--") {
                let b = p.id()?;
                edges.push((a, b));
                if p.peek() == Some(&Tok::Punct("[")) {
                    p.attrs()?;
                }
            } else {
                nodes.push(a);
                if p.peek() == Some(&Tok::Punct("[")) {
                    p.attrs()?;
                }
            }
            p.eat(";");
        }
        if p.i != p.t.len() {
            return Err("trailing tokens".into());
        }
        Ok((nodes, edges))
    }
}

#[test]
fn dot_grammar_rejects_garbage() {
    assert!(dot::parse("graph g { a -- b [color=red]; }").is_ok());
    assert!(dot::parse("graph g { a -- ; }").is_err());
    assert!(dot::parse("graph g { a [x=\"y] }").is_err());
    assert!(dot::parse("digraph { }").is_err());
}

#[test]
fn dot_output_is_valid_for_gold_range() {
    for (c, n) in gold_range() {
        let doc = document(c, n);
        let text = doc.to_dot();
        let (nodes, edges) = dot::parse(&text).unwrap_or_else(|e| panic!("{c} {n}: {e}\n{text}"));
        assert_eq!(nodes.len(), doc.vertices.len());
        assert_eq!(edges.len(), doc.edges.len());
        for (a, b) in edges {
            assert!(nodes.contains(&a) && nodes.contains(&b), "{c} {n}");
        }
    }
}
