use std::io::Read as _;

use anyhow::{anyhow, Context as _};
use serde_json::{json, Map, Value};
use verba::slp::{default_budget, SlpStats};
use verba::testwords::{e_n, j_k, l2_vars, m_words, manifest_lines, p_words, t_words, BuildOptions, Constant};
use verba::tree::{axis, axis_overlap, distance, translation_length, Overlap, TreeVertex};
use verba::verify::{overlap_with_retry, run_suite, SuiteParams};
use verba::{Signature, Word, WordExpr};

use crate::output::{compute, usage, CliError, Report};
use crate::{Cli, Command, Family, SlpQuery, TreeQuery};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let sig = match &g.group_file {
        Some(path) => Signature::from_table_file(path),
        None => Signature::parse(&g.group),
    }
    .map_err(usage)?;
    let budget = g.budget.unwrap_or_else(default_budget);
    match &cli.command {
        Command::Analyze { word } => analyze(&sig, word),
        Command::Verify { suite } => {
            let params = SuiteParams { samples: g.samples, seed: g.seed, budget, max_len: g.max_len };
            verify(&sig, suite, &params)
        }
        Command::Build { family, n, k } => {
            let tuple = g.tuple.as_deref().map(|t| parse_tuple(&sig, t)).transpose()?;
            build(&sig, *family, *n, k.as_deref(), tuple, budget)
        }
        Command::Tree { query } => tree(&sig, query, g.window),
        Command::Slp { query: SlpQuery::Stats { file } } => {
            let tuple = g.tuple.as_deref().map(|t| parse_tuple(&sig, t)).transpose()?;
            slp_stats(&sig, file, tuple)
        }
    }
}

fn parse_word(sig: &Signature, text: &str) -> Result<Word> {
    sig.parse_word(text).with_context(|| format!("in word literal `{text}`")).map_err(usage)
}

fn parse_tuple(sig: &Signature, text: &str) -> Result<Vec<Word>> {
    text.split(',').map(|w| parse_word(sig, w)).collect()
}

/// `w`, `H_a` or `(w)H_a`.
fn parse_vertex(sig: &Signature, text: &str) -> Result<TreeVertex> {
    let text = text.trim();
    let Some(at) = text.rfind("H_") else {
        return Ok(TreeVertex::element(parse_word(sig, text)?));
    };
    let name = &text[at + 2..];
    let factor = name
        .chars()
        .next()
        .filter(|_| name.chars().count() == 1)
        .and_then(|c| sig.factor_by_name(c))
        .or_else(|| name.parse::<usize>().ok().filter(|&i| i < sig.num_factors()))
        .ok_or_else(|| usage(anyhow!("unknown factor `{name}` in vertex `{text}`")))?;
    let rep = text[..at].trim();
    let rep = rep.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rep);
    let rep = if rep.is_empty() { Word::one() } else { parse_word(sig, rep)? };
    Ok(TreeVertex::coset(rep, factor as u32))
}

fn analyze(sig: &Signature, literal: &str) -> Result<Report> {
    let mut r = Report::new("analyze", &sig.to_string());
    let raw = sig.parse_raw(literal).with_context(|| format!("in word literal `{literal}`")).map_err(usage)?;
    let w = sig.reduce(&raw).map_err(usage)?;
    r.inputs = json!({ "word": literal });
    r.field("reduced", w.to_string());
    r.field("length", w.len());
    r.field("central_length", sig.central_length(&w));
    let hyperbolic = sig.is_hyperbolic(&w);
    r.field("hyperbolic", hyperbolic);
    r.field("simple", sig.is_simple(&w));
    if let Ok(d) = sig.hyperbolic_decompose(&w) {
        r.field("radical_length", d.a.len());
        r.field("A", d.a.to_string());
        r.field("k", d.k);
        r.field("f", d.f.to_string());
    }
    Ok(r)
}

fn verify(sig: &Signature, suite: &str, params: &SuiteParams) -> Result<Report> {
    let report = run_suite(suite, sig, params).map_err(usage)?;
    let mut r = Report::new("verify", &sig.to_string());
    r.seed = Some(params.seed);
    r.inputs = json!({ "suite": suite, "samples": params.samples, "budget": params.budget, "max_len": params.max_len });
    r.passed = report.passed();
    r.failures = serde_json::to_value(&report.failures).map_err(compute)?;
    r.results = serde_json::to_value(&report).map_err(compute)?;
    r.text = report.to_string();
    Ok(r)
}

fn stats_json(s: &SlpStats) -> Value {
    json!({
        "nodes": s.nodes,
        "vars": s.vars,
        "exponent_sums": s.exponent_sums.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "length_bound": s.length_bound.to_string(),
    })
}

fn stats_text(name: &str, s: &SlpStats) -> String {
    let sums: Vec<String> = s.exponent_sums.iter().map(ToString::to_string).collect();
    format!(
        "{name}: nodes={} vars={} exponent_sums={} length_bound={}",
        s.nodes,
        s.vars,
        sums.join(" "),
        s.length_bound
    )
}

/// Collects the manifest, the dumped expression and the statistics of the
/// named expressions.
struct Build<'a> {
    sig: &'a Signature,
    tuple: Option<Vec<Word>>,
    budget: usize,
    report: Report,
    manifest: Map<String, Value>,
    slp: Map<String, Value>,
}

impl Build<'_> {
    fn lengths(&self, vars: usize) -> Vec<u64> {
        match &self.tuple {
            Some(t) => t.iter().map(|w| w.len() as u64).collect(),
            None => vec![1; vars],
        }
    }

    fn manifest(&mut self, entries: &[(String, Constant)]) {
        for line in manifest_lines(entries) {
            if let Some((k, v)) = line.split_once('=') {
                self.manifest.insert(k.to_string(), Value::String(v.to_string()));
            }
            self.report.line(line);
        }
    }

    fn stats(&mut self, name: &str, e: &WordExpr) {
        let s = e.stats(&self.lengths(e.num_vars()));
        self.report.line(stats_text(name, &s));
        self.slp.insert(name.to_string(), stats_json(&s));
    }

    /// Stats plus the dump, and the evaluated length when the tuple is given
    /// and the value fits the budget.
    fn main_expr(&mut self, name: &str, e: &WordExpr) {
        self.stats(name, e);
        let dump = e.to_dump();
        let entry = self.slp.get_mut(name).expect("stats inserted");
        entry["dump"] = Value::String(dump.clone());
        if let Some(t) = &self.tuple {
            let value = e.evaluate(self.sig, t, self.budget);
            let v = match &value {
                Ok(w) => json!(w.len()),
                Err(err) => json!(err.to_string()),
            };
            entry["evaluated_length"] = v;
            match value {
                Ok(w) => self.report.line(format!("{name}: evaluated length {}", w.len())),
                Err(err) => self.report.line(format!("{name}: not evaluated ({err})")),
            }
        }
        self.report.line(format!("# slp {name}"));
        self.report.text.push_str(&dump);
    }

    fn finish(mut self) -> Report {
        self.report.results = json!({ "manifest": self.manifest, "slp": self.slp });
        self.report
    }
}

fn require_tuple(tuple: &Option<Vec<Word>>, family: &str) -> Result<Vec<Word>> {
    tuple.clone().ok_or_else(|| usage(anyhow!("`build {family}` needs --tuple")))
}

fn build(
    sig: &Signature,
    family: Family,
    n: usize,
    k: Option<&str>,
    tuple: Option<Vec<Word>>,
    budget: usize,
) -> Result<Report> {
    let name = format!("{family:?}").to_lowercase();
    let mut report = Report::new("build", &sig.to_string());
    report.inputs = json!({
        "family": name,
        "tuple": tuple.as_ref().map(|t| t.iter().map(ToString::to_string).collect::<Vec<_>>()),
        "budget": budget,
    });
    let mut b = Build { sig, tuple, budget, report, manifest: Map::new(), slp: Map::new() };
    let opts = BuildOptions::with_budget(budget);
    match family {
        Family::L2 => b.main_expr("L2", &l2_vars()),
        Family::En => {
            let vars: Vec<WordExpr> = (0..n as u32).map(WordExpr::var).collect();
            b.main_expr("E_n", &e_n(&vars).map_err(usage)?);
        }
        Family::Jk => {
            let text = k.ok_or_else(|| usage(anyhow!("`build jk` needs --k")))?;
            let k: Vec<u64> = text
                .split(',')
                .map(|s| s.trim().parse::<u64>().with_context(|| format!("bad exponent `{s}`")))
                .collect::<anyhow::Result<_>>()
                .map_err(usage)?;
            let n = k.len().saturating_sub(1);
            b.main_expr("J_k", &j_k(&k, n).map_err(usage)?);
        }
        Family::Twords => {
            let x = require_tuple(&b.tuple, "twords")?;
            let fam = t_words(sig, &x, &opts).map_err(compute)?;
            b.manifest(&fam.manifest(""));
            for ((j, i), v) in &fam.values {
                b.report.line(format!("|X_{j},{i}|={}", v.len()));
            }
            b.main_expr("T", fam.top());
        }
        Family::Pwords => {
            let x = require_tuple(&b.tuple, "pwords")?;
            let pw = p_words(sig, &x, &opts).map_err(compute)?;
            b.manifest(&pw.manifest());
            b.stats("P'", &pw.p_prime);
            b.stats("P''", &pw.p_double);
            b.main_expr("P", &pw.p);
        }
        Family::Mwords => {
            let x = require_tuple(&b.tuple, "mwords")?;
            let mw = m_words(sig, &x, &opts).map_err(compute)?;
            b.manifest(&mw.manifest());
            let ws = &mw.witnesses;
            for (label, w) in [("w", &ws.w), ("u1", &ws.u1), ("u2", &ws.u2), ("s", &ws.s)] {
                b.report.line(format!("witness {label}={} ({})", w.value, w.expr));
                b.manifest.insert(format!("witness.{label}"), Value::String(w.value.to_string()));
            }
            b.stats("M'", &mw.m_prime);
            b.stats("M''", &mw.m_double);
            // Dumps of M are kept to statistics: evaluation beyond depth 2 is out of reach.
            b.tuple = None;
            b.stats("M", &mw.m);
        }
    }
    Ok(b.finish())
}

fn overlap_value(o: &Option<Overlap>) -> (String, Value) {
    match o {
        None => ("0 (disjoint)".into(), json!(0)),
        Some(Overlap::Segment(len)) => (len.to_string(), json!(len.to_string())),
        Some(Overlap::Unbounded) => ("unbounded (coinciding axes)".into(), json!("unbounded")),
    }
}

fn tree(sig: &Signature, q: &TreeQuery, window: Option<usize>) -> Result<Report> {
    let mut r = Report::new("tree", &sig.to_string());
    match q {
        TreeQuery::Dist { v1, v2 } => {
            let (a, b) = (parse_vertex(sig, v1)?, parse_vertex(sig, v2)?);
            r.inputs = json!({ "query": "dist", "v1": a.to_string(), "v2": b.to_string() });
            r.field("distance", distance(sig, &a, &b));
        }
        TreeQuery::Axis { word } => {
            let h = parse_word(sig, word)?;
            let window = window.unwrap_or(1);
            r.inputs = json!({ "query": "axis", "word": h.to_string(), "window": window });
            let seg = axis(sig, &h, window).map_err(compute)?;
            r.field("paper_length", seg.paper_length.to_string());
            let vs: Vec<String> = seg.vertices.iter().map(ToString::to_string).collect();
            for v in &vs {
                r.line(v);
            }
            r.results["vertices"] = json!(vs);
        }
        TreeQuery::Translen { word } => {
            let h = parse_word(sig, word)?;
            r.inputs = json!({ "query": "translen", "word": h.to_string() });
            let t = translation_length(sig, &h).map_err(compute)?;
            r.field("translation_length", t.to_string());
            r.field("central_length", sig.central_length(&h));
        }
        TreeQuery::Overlap { w1, w2 } => {
            let (h1, h2) = (parse_word(sig, w1)?, parse_word(sig, w2)?);
            r.inputs = json!({ "query": "overlap", "w1": h1.to_string(), "w2": h2.to_string(), "window": window });
            let o = match window {
                Some(w) => axis_overlap(sig, &h1, &h2, w),
                None => overlap_with_retry(sig, &h1, &h2),
            }
            .map_err(compute)?;
            let (text, value) = overlap_value(&o);
            r.line(format!("overlap: {text}"));
            r.results["overlap"] = value;
        }
    }
    Ok(r)
}

fn slp_stats(sig: &Signature, file: &std::path::Path, tuple: Option<Vec<Word>>) -> Result<Report> {
    let mut text = String::new();
    if file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(usage)?;
    } else {
        text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display())).map_err(usage)?;
    }
    let e = WordExpr::from_dump(&text).map_err(usage)?;
    let mut r = Report::new("slp", &sig.to_string());
    r.inputs = json!({ "file": file.display().to_string() });
    let lengths: Vec<u64> = match &tuple {
        Some(t) => t.iter().map(|w| w.len() as u64).collect(),
        None => vec![1; e.num_vars()],
    };
    let s = e.stats(&lengths);
    r.line(stats_text("stats", &s));
    r.results = stats_json(&s);
    if let Some(t) = tuple {
        let budget = default_budget();
        match e.evaluate(sig, &t, budget) {
            Ok(w) => r.field("evaluated_length", w.len()),
            Err(err) => r.line(format!("not evaluated: {err}")),
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_literals_round_trip() {
        let sig = Signature::parse("Z2*Z3*Z2").unwrap();
        for text in ["1", "a b", "H_b", "(a b^2)H_c", "(a)H_b"] {
            let v = parse_vertex(&sig, text).unwrap();
            assert_eq!(parse_vertex(&sig, &v.to_string()).unwrap(), v, "{text}");
        }
        // A trailing syllable of the coset's factor is absorbed.
        assert_eq!(parse_vertex(&sig, "(a b)H_b").unwrap().to_string(), "(a)H_b");
        assert!(parse_vertex(&sig, "H_z").is_err());
    }
}
