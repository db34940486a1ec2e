//! Acceptance run: executes the full check suite through the binary and
//! evaluates each criterion from the CSV at its own tolerance, independent
//! of the pass column written by the tool.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

const SEED: &str = "20261016";
const DIMS: [usize; 5] = [2, 3, 4, 6, 8];

struct Rows(BTreeMap<String, Vec<(usize, f64)>>);

impl Rows {
    fn load(path: &Path) -> Rows {
        let mut reader = csv::Reader::from_path(path).expect("csv readable");
        let mut map: BTreeMap<String, Vec<(usize, f64)>> = BTreeMap::new();
        for rec in reader.records() {
            let rec = rec.expect("csv record");
            let dim: usize = rec[3].parse().expect("dim");
            let value = match &rec[4] {
                "inf" => f64::INFINITY,
                v => v.parse().expect("residual"),
            };
            map.entry(rec[0].to_string()).or_default().push((dim, value));
        }
        Rows(map)
    }

    fn of(&self, id: &str) -> &[(usize, f64)] {
        self.0.get(id).map(Vec::as_slice).unwrap_or(&[])
    }
}

struct Criterion {
    name: &'static str,
    notes: Vec<String>,
    ok: bool,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion { name, notes: Vec::new(), ok: true }
    }

    /// Every row of `id` satisfies `stat <= bound` (or `< bound` when
    /// `strict`), with at least `min_rows` rows in total.
    fn bound(&mut self, rows: &Rows, id: &str, bound: f64, strict: bool, min_rows: usize) -> &mut Self {
        let r = rows.of(id);
        let max = r.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        let bad = r.iter().filter(|x| !(if strict { x.1 < bound } else { x.1 <= bound })).count();
        if r.len() < min_rows || bad > 0 {
            self.ok = false;
        }
        self.notes.push(format!("{id}: rows={} violations={bad} max={max:.3e} bound={bound:e}", r.len()));
        self
    }

    /// At least `per_dim` rows of `id` in each acceptance dimension.
    fn per_dim(&mut self, rows: &Rows, id: &str, per_dim: usize) -> &mut Self {
        let r = rows.of(id);
        for d in DIMS {
            let count = r.iter().filter(|x| x.0 == d).count();
            if count < per_dim {
                self.ok = false;
                self.notes.push(format!("{id}: only {count} rows at dim {d}"));
            }
        }
        self
    }

    fn require(&mut self, cond: bool, note: String) -> &mut Self {
        self.ok &= cond;
        self.notes.push(note);
        self
    }

    fn report(&self) -> bool {
        let verdict = if self.ok { "PASS" } else { "FAIL" };
        println!("{verdict} {} | {}", self.name, self.notes.join("; "));
        self.ok
    }
}

fn check_run(args: &[&str], out: &Path) -> (bool, Duration) {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_orbitgeo"))
        .env_remove("ORBITGEO_SEED")
        .arg("check")
        .args(args)
        .args(["--seed", SEED, "--out"])
        .arg(out)
        .stderr(std::process::Stdio::null())
        .status()
        .expect("binary runs");
    (status.success(), start.elapsed())
}

fn main() -> ExitCode {
    let dir = tempfile::TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let g = dir.path().join("geodesic.csv");

    let (ok_a, t_a) = check_run(&["all"], &a);
    let (ok_b, t_b) = check_run(&["all"], &b);
    let (ok_g, t_g) = check_run(&["geodesic"], &g);
    let rows = Rows::load(&a);

    let mut all = Vec::new();

    let mut c = Criterion::new("1 geodesic Euler residual and endpoints");
    c.bound(&rows, "geodesic/euler", 1e-5, false, 1000)
        .per_dim(&rows, "geodesic/euler", 200)
        .bound(&rows, "geodesic/endpoints", 1e-10, false, 1000)
        .require(ok_g && t_g < Duration::from_secs(30), format!("geodesic suite {:.1}s (limit 30s)", t_g.as_secs_f64()));
    all.push(c.report());

    let mut c = Criterion::new("2 exp/log round trip");
    c.bound(&rows, "geodesic/exp_log", 1e-9, false, 1000).per_dim(&rows, "geodesic/exp_log", 200);
    all.push(c.report());

    let mut c = Criterion::new("3 congruence isometry");
    c.bound(&rows, "metric/isometry", 1e-9, false, 200);
    all.push(c.report());

    let mut c = Criterion::new("4 curvature sign and antisymmetry");
    c.bound(&rows, "curvature/sectional", 1e-10, false, 1000)
        .bound(&rows, "curvature/antisymmetry", 1e-14, false, 1000);
    all.push(c.report());

    let mut c = Criterion::new("5 EMI and Segal inequalities");
    c.bound(&rows, "emi/inequality", 0.0, false, 500)
        .bound(&rows, "emi/commuting_equality", 1e-10, false, 500)
        .bound(&rows, "segal/inequality", 0.0, false, 500)
        .bound(&rows, "segal/commuting_equality", 1e-10, false, 500);
    all.push(c.report());

    let mut c = Criterion::new("6 leaf scalar stays one");
    c.bound(&rows, "geodesic/leaf", f64::EPSILON, false, 200);
    all.push(c.report());

    let mut c = Criterion::new("7 ambient geodesic dichotomy");
    c.bound(&rows, "orbit/dichotomy", 0.0, false, 200);
    all.push(c.report());

    let mut c = Criterion::new("8 co-diagonal geodesics and obstruction");
    c.bound(&rows, "orbit/codiagonal", 1e-10, false, 500)
        .bound(&rows, "orbit/obstruction", 1.0, true, 200);
    all.push(c.report());

    let mut c = Criterion::new("9 orbit geodesic length");
    c.bound(&rows, "orbit/length", 1e-6, false, 200).bound(&rows, "orbit/length_2x2", 1e-8, false, 200);
    all.push(c.report());

    let mut c = Criterion::new("10 orbit exp/log and endpoint spectrum");
    c.bound(&rows, "orbit/exp_log", 1e-7, false, 200)
        .bound(&rows, "orbit/endpoint_spectrum", 1e-10, false, 200);
    all.push(c.report());

    let mut c = Criterion::new("11 cross-section contract");
    c.bound(&rows, "section/identity", 0.0, false, 200)
        .bound(&rows, "section/local_section", 1e-9, false, 200);
    all.push(c.report());

    let mut c = Criterion::new("12 orbit coincidence witness");
    c.bound(&rows, "orbit/witness", 1e-9, false, 100);
    all.push(c.report());

    let same = std::fs::read(&a).ok() == std::fs::read(&b).ok();
    let mut c = Criterion::new("13 reproducibility and runtime");
    c.require(ok_a && ok_b, format!("exit ok: {ok_a}, {ok_b}"))
        .require(same, format!("identical CSV bytes: {same}"))
        .require(
            t_a.max(t_b) < Duration::from_secs(300),
            format!("wall times {:.1}s, {:.1}s (limit 300s)", t_a.as_secs_f64(), t_b.as_secs_f64()),
        );
    all.push(c.report());

    let passed = all.iter().filter(|&&x| x).count();
    println!("{passed}/{} criteria passed", all.len());
    if passed == all.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
