use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn blobrep(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_blobrep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let input = stdin.unwrap_or("").to_owned();
    let mut pipe = child.stdin.take().unwrap();
    std::thread::spawn(move || pipe.write_all(input.as_bytes()));
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn complete_graph(n: usize) -> String {
    let mut s = format!("{n} {}\n", n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            s += &format!("{u} {v}\n");
        }
    }
    s
}

fn stat(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim().to_owned()))
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
}

#[test]
fn nested_triangles_pipeline() {
    let emb = blobrep(&["gadget", "nested-triangles", "2"], None);
    assert!(emb.status.success());
    let rep = blobrep(&["build2d"], Some(&stdout(&emb)));
    assert_eq!(rep.status.code(), Some(0));
    let stats = blobrep(&["stats", "-"], Some(&stdout(&rep)));
    let s = stdout(&stats);
    assert_eq!(stat(&s, "vertices"), "12");
    assert_eq!(stat(&s, "contacts"), "21");
    assert_eq!(stat(&s, "peeling_depth"), "2");
}

#[test]
fn universal_k10_size() {
    let rep = blobrep(&["build3d-universal"], Some(&complete_graph(10)));
    assert!(rep.status.success());
    let stats = blobrep(&["stats"], Some(&stdout(&rep)));
    assert_eq!(stat(&stdout(&stats), "size"), "435");
}

#[test]
fn verify_reports_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k3.g", &complete_graph(3));
    let rep = stdout(&blobrep(&["build3d-universal", &g], None));
    let good = write(dir.path(), "good.rep", &rep);
    let ok = blobrep(&["verify", &good, &g], None);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "valid true");

    // hand the first cell of vertex 0 to vertex 1 while dropping every cell
    // of vertex 2 except one
    let mut lines: Vec<String> = rep.lines().map(str::to_owned).collect();
    let first = lines.iter().position(|l| l.ends_with(" 0")).unwrap();
    let t: Vec<&str> = lines[first].split_whitespace().collect();
    lines[first] = format!("{} {} {} 1", t[0], t[1], t[2]);
    let bad = write(dir.path(), "bad.rep", &(lines.join("\n") + "\n"));
    let out = blobrep(&["verify", &bad, &g], None);
    assert_eq!(out.status.code(), Some(1));
    let s = stdout(&out);
    assert!(s.starts_with("valid false"));
    assert!(
        s.lines()
            .any(|l| l.starts_with("missing") || l.starts_with("extra") || l.starts_with("disconnected")),
        "{s}"
    );
}

#[test]
fn treewidth_and_genus_builds_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "k5.g", &complete_graph(5));
    for flag in ["--exact", "--heuristic"] {
        let rep = blobrep(&["build3d-treewidth", &g, flag], None);
        assert!(rep.status.success(), "{flag}");
        let r = write(dir.path(), "tw.rep", &stdout(&rep));
        assert!(blobrep(&["verify", &r, &g], None).status.success());
    }
    let rot = write(
        dir.path(),
        "k5.rot",
        "5\n0: 1 2 3 4\n1: 2 3 4 0\n2: 3 4 0 1\n3: 4 0 1 2\n4: 0 1 2 3\n",
    );
    let rep = blobrep(&["build3d-genus", &g, &rot], None);
    assert!(rep.status.success());
    let r = write(dir.path(), "genus.rep", &stdout(&rep));
    assert!(blobrep(&["verify", &r, &g], None).status.success());
}

#[test]
fn minimize_and_gadgets() {
    let out = blobrep(&["minimize", "--dim", "2", "--grid", "4", "--cap", "4"], Some(&complete_graph(3)));
    assert!(out.status.success());
    let stats = blobrep(&["stats"], Some(&stdout(&out)));
    assert_eq!(stat(&stdout(&stats), "size"), "4");
    let k5 = blobrep(&["minimize", "--grid", "3", "--cap", "2"], Some(&complete_graph(5)));
    assert_eq!(k5.status.code(), Some(1));

    let cage = blobrep(&["gadget", "cage2d", "1", "2", "2"], None);
    let stats = stdout(&blobrep(&["stats"], Some(&stdout(&cage))));
    assert_eq!(stat(&stats, "peeling_depth"), "1");
    let cu = stdout(&blobrep(&["gadget", "clique-union", "4", "2"], None));
    assert_eq!(cu.lines().next(), Some("8 12"));
    let wheel = blobrep(&["gadget", "wheel"], Some("2 1\n0 1 E W\n"));
    assert_eq!(stdout(&wheel).lines().next(), Some("19 26"));
}

#[test]
fn export_formats() {
    let rep = stdout(&blobrep(&["build3d-universal"], Some(&complete_graph(3))));
    let dir = tempfile::tempdir().unwrap();
    let mtl = dir.path().join("blobs.mtl");
    let obj = blobrep(&["export", "obj", "--mtl", mtl.to_str().unwrap()], Some(&rep));
    assert!(obj.status.success());
    let size = rep.lines().count() - 1;
    assert_eq!(stdout(&obj).lines().filter(|l| l.starts_with("f ")).count(), 6 * size);
    assert!(std::fs::read_to_string(mtl).unwrap().contains("newmtl m2"));
    assert_eq!(blobrep(&["export", "svg"], Some(&rep)).status.code(), Some(1));
    let txt = blobrep(&["export", "txt"], Some(&rep));
    assert_eq!(stdout(&txt), rep);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(blobrep(&["frobnicate"], None).status.code(), Some(2));
    let out = blobrep(&["stats"], Some("2 1\n0 0 0\n1 x 0\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(blobrep(&["build2d", "/nonexistent/file"], None).status.code(), Some(2));
}
