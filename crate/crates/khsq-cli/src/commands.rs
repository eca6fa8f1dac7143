use std::collections::BTreeMap;
use std::fmt::Write as _;

use khsq_algebra::AbelianGroup;
use khsq_classify::{check_hypotheses, parse_st_reference, st_tables, wedge, HypothesisReport, StTable};
use khsq_cube::{Cube, Parity};
use khsq_link::render_pd;
use khsq_steenrod::MatchingChoice;
use serde::{Deserialize, Serialize};

use crate::job::{parity_name, Format, JobSpec, Ring, BUNDLED_ST_TABLE};
use crate::{Cache, CliError};

/// One nonzero homology group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRow {
    pub parity: String,
    pub ring: String,
    pub i: i32,
    pub j: i32,
    /// The free rank, or the dimension over F2.
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl GroupRow {
    fn group(&self) -> String {
        let base = if self.ring == "F2" { "F2" } else { "Z" };
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push(base.to_string()),
            k => parts.push(format!("{base}^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        parts.join(" ⊕ ")
    }
}

/// The result of a command: its report, and a failure to signal after the
/// report is written.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    /// Messages for standard error.
    pub diagnostics: String,
    pub failure: Option<CliError>,
}

struct Context {
    cube: Cube,
    pd: String,
    cache: Cache,
}

impl Context {
    fn new(spec: &JobSpec) -> Result<Context, CliError> {
        let diagram = spec.diagram()?;
        let pd = render_pd(&diagram);
        let cube = Cube::new(&diagram)?;
        Ok(Context { cube, pd, cache: Cache::new(spec.cache_dir.clone()) })
    }

    fn integral(&self, parity: Parity) -> Result<BTreeMap<(i32, i32), AbelianGroup>, CliError> {
        let rows = self.rows(parity, Ring::Z)?;
        Ok(rows
            .into_iter()
            .map(|r| ((r.i, r.j), AbelianGroup { free: r.free, torsion: r.torsion }))
            .collect())
    }

    fn rows(&self, parity: Parity, ring: Ring) -> Result<Vec<GroupRow>, CliError> {
        let ring_name = match ring {
            Ring::Z => "Z",
            Ring::F2 => "F2",
        };
        let parity_name = parity_name(parity);
        self.cache.get_or_compute("homology", &[&self.pd, parity_name, ring_name], || {
            let row = |(i, j): (i32, i32), free: usize, torsion: Vec<u64>| GroupRow {
                parity: parity_name.into(),
                ring: ring_name.into(),
                i,
                j,
                free,
                torsion,
            };
            Ok(match ring {
                Ring::Z => self
                    .cube
                    .homology_z(parity)?
                    .into_iter()
                    .filter(|(_, h)| !h.is_zero())
                    .map(|(ij, h)| row(ij, h.free, h.torsion))
                    .collect(),
                Ring::F2 => self
                    .cube
                    .homology_f2()?
                    .into_iter()
                    .filter(|&(_, d)| d > 0)
                    .map(|(ij, d)| row(ij, d, Vec::new()))
                    .collect(),
            })
        })
    }

    fn st(&self, ls: &[u32], matching: MatchingChoice) -> Result<Vec<StTable>, CliError> {
        let choice = match matching {
            MatchingChoice::Canonical => "canonical".to_string(),
            MatchingChoice::Random(seed) => format!("random {seed}"),
        };
        let key = |l: u32| [self.pd.clone(), choice.clone(), l.to_string()];
        let mut found: BTreeMap<u32, StTable> = BTreeMap::new();
        for &l in ls {
            let parts = key(l);
            if let Some(t) = self.cache.get("st", &parts.each_ref().map(String::as_str)) {
                found.insert(l, t);
            }
        }
        let missing: Vec<u32> = ls.iter().copied().filter(|l| !found.contains_key(l)).collect();
        if !missing.is_empty() {
            for t in st_tables(&self.cube, &missing, matching)? {
                let parts = key(t.l);
                self.cache.put("st", &parts.each_ref().map(String::as_str), &t)?;
                found.insert(t.l, t);
            }
        }
        Ok(ls.iter().map(|l| found[l].clone()).collect())
    }
}

fn csv_text(rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(|e| CliError::internal("cli", e))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::internal("cli", e))?;
    String::from_utf8(bytes).map_err(|e| CliError::internal("cli", e))
}

/// Integral and mod 2 homology for the requested parities and rings.
pub fn cmd_homology(spec: &JobSpec) -> Result<Outcome, CliError> {
    let ctx = Context::new(spec)?;
    let mut blocks = Vec::new();
    for &parity in &spec.parities {
        for &ring in &spec.rings {
            let rows: Vec<GroupRow> = ctx.rows(parity, ring)?.into_iter().filter(|r| spec.shows(r.j)).collect();
            blocks.push((parity, ring, rows));
        }
    }
    let knot = spec.label();
    let output = match spec.format {
        Format::Text => {
            let mut out = String::new();
            for (parity, ring, rows) in &blocks {
                let ring = if *ring == Ring::Z { "Z" } else { "F2" };
                writeln!(out, "Kh({knot}), {}, {ring}", parity_name(*parity)).unwrap();
                for r in rows {
                    writeln!(out, "  ({}, {})  {}", r.i, r.j, r.group()).unwrap();
                }
            }
            out
        }
        Format::Json => {
            let rows: Vec<&GroupRow> = blocks.iter().flat_map(|(_, _, rows)| rows).collect();
            let value = serde_json::json!({ "knot": knot, "homology": rows });
            format!("{value}\n")
        }
        Format::Csv => {
            let mut records = vec![["knot", "parity", "ring", "i", "j", "free", "torsion"].map(String::from).to_vec()];
            for r in blocks.iter().flat_map(|(_, _, rows)| rows) {
                let torsion: Vec<String> = r.torsion.iter().map(u64::to_string).collect();
                records.push(vec![
                    knot.to_string(),
                    r.parity.clone(),
                    r.ring.clone(),
                    r.i.to_string(),
                    r.j.to_string(),
                    r.free.to_string(),
                    torsion.join(";"),
                ]);
            }
            csv_text(records)?
        }
    };
    Ok(Outcome { output, diagnostics: String::new(), failure: None })
}

/// Human-readable reasons a hypothesis report fails, numbered by condition.
pub fn hypothesis_failures(r: &HypothesisReport) -> Vec<String> {
    let list = |v: &[(i32, i32)]| v.iter().map(|(i, j)| format!("({i}, {j})")).collect::<Vec<_>>().join(" ");
    let mut out = Vec::new();
    if !r.off_diagonal.is_empty() {
        out.push(format!("condition 1: homology off the three lowest diagonals at {}", list(&r.off_diagonal)));
    }
    for ((i, j), t) in &r.bad_torsion {
        out.push(format!("condition 2: Z/{t} at ({i}, {j})"));
    }
    if !r.lowest_torsion.is_empty() {
        out.push(format!("condition 3: torsion on the lowest diagonal at {}", list(&r.lowest_torsion)));
    }
    out
}

/// Where `--verify-table` reads its reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reference {
    Bundled,
    File(std::path::PathBuf),
}

/// Options of the `st` command beyond the job.
#[derive(Debug, Clone, Default)]
pub struct StOptions {
    pub wedge: bool,
    pub verify: Option<Reference>,
}

#[derive(Serialize)]
struct JsonEntry {
    i: i32,
    j: i32,
    tuple: [usize; 4],
}

#[derive(Serialize)]
struct JsonWedge {
    j: i32,
    summands: Vec<String>,
}

#[derive(Serialize)]
struct JsonHypotheses {
    parity: &'static str,
    passes: bool,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct JsonSt {
    knot: String,
    l: u32,
    entries: Vec<JsonEntry>,
    hypotheses: JsonHypotheses,
    #[serde(skip_serializing_if = "Option::is_none")]
    wedge: Option<Vec<JsonWedge>>,
}

fn verify(knot: &str, tables: &[StTable], reference: &Reference) -> Result<(Vec<String>, bool), CliError> {
    let text = match reference {
        Reference::Bundled => BUNDLED_ST_TABLE.to_string(),
        Reference::File(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?,
    };
    let reference = parse_st_reference(&text)?;
    if reference.expected(knot, 1).is_none() {
        return Err(CliError::Input(format!("`{knot}` is not in the reference table")));
    }
    let mut lines = Vec::new();
    let mut ok = true;
    for t in tables.iter().filter(|t| t.l == 1 || t.l == 3) {
        let expected = reference.expected(knot, t.l).unwrap_or_default();
        let computed = t.as_map();
        if expected == computed {
            lines.push(format!("verify St_{}({knot}): ok", t.l));
            continue;
        }
        ok = false;
        let keys: std::collections::BTreeSet<_> = expected.keys().chain(computed.keys()).collect();
        for &(i, j) in keys {
            let (e, c) = (expected.get(&(i, j)), computed.get(&(i, j)));
            if e != c {
                let show = |x: Option<&[usize; 4]>| format!("{:?}", x.copied().unwrap_or([0; 4]));
                lines.push(format!(
                    "verify St_{}({knot}): mismatch at ({i}, {j}): expected {}, computed {}",
                    t.l,
                    show(e),
                    show(c)
                ));
            }
        }
    }
    Ok((lines, ok))
}

/// `St_l` for every requested `l`, with hypothesis flags, optional wedge
/// decompositions and optional verification against a reference table.
pub fn cmd_st(spec: &JobSpec, options: &StOptions) -> Result<Outcome, CliError> {
    let ctx = Context::new(spec)?;
    let knot = spec.label().to_string();
    let tables = ctx.st(&spec.ls, spec.matching)?;
    let mut reports = BTreeMap::new();
    let mut homology = BTreeMap::new();
    for t in &tables {
        let parity = Parity::for_l(t.l);
        if let std::collections::btree_map::Entry::Vacant(e) = homology.entry(parity) {
            let kh = ctx.integral(parity)?;
            reports.insert(parity, check_hypotheses(&kh));
            e.insert(kh);
        }
    }
    let mut wedges: BTreeMap<u32, Vec<(i32, String)>> = BTreeMap::new();
    if options.wedge {
        for t in &tables {
            let parity = Parity::for_l(t.l);
            let report = &reports[&parity];
            if !report.passes() {
                continue;
            }
            let mut ws = Vec::new();
            for j in ctx.cube.quantum_gradings().into_iter().filter(|&j| spec.shows(j)) {
                ws.push((j, wedge(&homology[&parity], report, t, j)?.to_string()));
            }
            wedges.insert(t.l, ws);
        }
    }
    let shown = |t: &StTable| t.entries.iter().filter(|e| spec.shows(e.j)).cloned().collect::<Vec<_>>();
    let mut output = String::new();
    match spec.format {
        Format::Text => {
            for t in &tables {
                let entries = shown(t);
                if entries.is_empty() {
                    writeln!(output, "St_{}({knot}) = 0", t.l).unwrap();
                } else {
                    writeln!(output, "St_{}({knot}):", t.l).unwrap();
                    for e in &entries {
                        writeln!(output, "  {e}").unwrap();
                    }
                }
                let parity = Parity::for_l(t.l);
                for f in hypothesis_failures(&reports[&parity]) {
                    writeln!(output, "  ! hypotheses fail for {} homology, {f}", parity_name(parity)).unwrap();
                }
                if let Some(ws) = wedges.get(&t.l) {
                    for (j, w) in ws {
                        writeln!(output, "  X_{}^{j} ≃ {w}", t.l).unwrap();
                    }
                }
            }
        }
        Format::Json => {
            for t in &tables {
                let parity = Parity::for_l(t.l);
                let report = &reports[&parity];
                let record = JsonSt {
                    knot: knot.clone(),
                    l: t.l,
                    entries: shown(t).into_iter().map(|e| JsonEntry { i: e.i, j: e.j, tuple: e.tuple }).collect(),
                    hypotheses: JsonHypotheses {
                        parity: parity_name(parity),
                        passes: report.passes(),
                        failures: hypothesis_failures(report),
                    },
                    wedge: wedges.get(&t.l).map(|ws| {
                        ws.iter()
                            .map(|(j, w)| JsonWedge { j: *j, summands: w.split(" ∨ ").map(String::from).collect() })
                            .collect()
                    }),
                };
                let line = serde_json::to_string(&record).map_err(|e| CliError::internal("cli", e))?;
                writeln!(output, "{line}").unwrap();
            }
        }
        Format::Csv => {
            let mut records = vec![["knot", "l", "i", "j", "x1", "x2", "x3", "x4"].map(String::from).to_vec()];
            for t in &tables {
                for e in shown(t) {
                    let mut r = vec![knot.clone(), t.l.to_string(), e.i.to_string(), e.j.to_string()];
                    r.extend(e.tuple.iter().map(usize::to_string));
                    records.push(r);
                }
            }
            output = csv_text(records)?;
        }
    }
    let mut failure = None;
    let mut diagnostics = String::new();
    if let Some(reference) = &options.verify {
        let (lines, ok) = verify(&knot, &tables, reference)?;
        for line in lines {
            writeln!(diagnostics, "{line}").unwrap();
        }
        if !ok {
            failure = Some(CliError::Property(format!("St table of {knot} differs from the reference")));
        }
    }
    Ok(Outcome { output, diagnostics, failure })
}
