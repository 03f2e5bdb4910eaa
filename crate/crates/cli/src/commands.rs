use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use hopfore::exactnum::matrix::row_space;
use hopfore::exactnum::{make_field, AnyField, Field, Matrix};
use hopfore::grouprep::{enumerate_characters, GroupElement};
use hopfore::hopfcore::HopfPresentation;
use hopfore::modanalysis::{
    classify, hom_space, is_split_epi, predicted_tensor, projectives_report, radical, series, simple_census, socle,
    DecompositionReport,
};
use hopfore::oracle::{oracle_composition_series, oracle_radical, oracle_socle, oracle_split, DEFAULT_BUDGET};
use hopfore::weightmod::{make_serial, mod_tensor, ModuleLabel, WeightModule};

use crate::config::InstanceConfig;
use crate::error::{CliError, CliResult};
use crate::expr::{eval, parse_expr};
use crate::report::{InstanceEcho, Report, SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    VerifyHopf,
    Rank,
    Primitives { g: String },
    ListSimples,
    Classify { expr: String },
    Tensor { a: String, b: String },
    Series { expr: String },
    Projectives,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyHopf => "verify-hopf",
            Command::Rank => "rank",
            Command::Primitives { .. } => "primitives",
            Command::ListSimples => "list-simples",
            Command::Classify { .. } => "classify",
            Command::Tensor { .. } => "tensor",
            Command::Series { .. } => "series",
            Command::Projectives => "projectives",
        }
    }

    fn args(&self) -> Vec<String> {
        match self {
            Command::Primitives { g } => vec![g.clone()],
            Command::Classify { expr } | Command::Series { expr } => vec![expr.clone()],
            Command::Tensor { a, b } => vec![a.clone(), b.clone()],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub seed: u64,
    pub oracle: bool,
    pub degree: Option<u32>,
    pub budget: Option<u128>,
}

/// Runs a command over whichever field the config names.
pub fn run(cfg: &InstanceConfig, cmd: &Command, opts: &Options) -> CliResult<Report> {
    match make_field(&cfg.descriptor()?)? {
        AnyField::Prime(f) => run_in(f, cfg, cmd, opts),
        AnyField::Extension(f) => run_in(f, cfg, cmd, opts),
        AnyField::Cyclotomic(f) => run_in(f, cfg, cmd, opts),
    }
}

struct Outcome {
    passed: bool,
    result: Value,
    text: Vec<String>,
}

fn run_in<F: Field>(field: F, cfg: &InstanceConfig, cmd: &Command, opts: &Options) -> CliResult<Report> {
    let hopf = Arc::new(cfg.build(field)?);
    let degree = opts.degree.or(cfg.degree);
    let budget = opts.budget.or(cfg.budget).unwrap_or(DEFAULT_BUDGET);
    let ctx = Ctx {
        hopf: &hopf,
        opts,
        budget,
    };
    let out = match cmd {
        Command::VerifyHopf => ctx.verify_hopf(degree.unwrap_or(8))?,
        Command::Rank => ctx.rank(degree.unwrap_or(20))?,
        Command::Primitives { g } => ctx.primitives(g, degree.unwrap_or(8))?,
        Command::ListSimples => ctx.list_simples()?,
        Command::Classify { expr } => ctx.classify(expr)?,
        Command::Tensor { a, b } => ctx.tensor(a, b)?,
        Command::Series { expr } => ctx.series(expr)?,
        Command::Projectives => ctx.projectives()?,
    };
    Ok(Report {
        schema: SCHEMA,
        command: cmd.name().to_string(),
        args: cmd.args(),
        seed: opts.seed,
        instance: InstanceEcho::of(&hopf),
        passed: out.passed,
        result: out.result,
        text: out.text,
    })
}

struct Ctx<'a, F: Field> {
    hopf: &'a Arc<HopfPresentation<F>>,
    opts: &'a Options,
    budget: u128,
}

#[derive(Serialize)]
struct OracleDiff {
    block_dims: Vec<usize>,
    blocks_agree: bool,
    socle_agrees: Option<bool>,
    radical_agrees: Option<bool>,
    composition_agrees: Option<bool>,
    skipped: Option<String>,
}

impl OracleDiff {
    fn passed(&self) -> bool {
        self.blocks_agree
            && self.socle_agrees != Some(false)
            && self.radical_agrees != Some(false)
            && self.composition_agrees != Some(false)
    }
}

fn fmt_set<T: std::fmt::Display>(it: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = it.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

impl<F: Field> Ctx<'_, F> {
    fn module(&self, src: &str) -> CliResult<WeightModule<F>> {
        eval(self.hopf, &parse_expr(src)?)
    }

    fn labels(&self, r: &DecompositionReport<F::Elem>) -> String {
        let parts: Vec<String> = r
            .summands
            .iter()
            .map(|(l, m)| {
                let s = self.hopf.format_label(l);
                if *m == 1 {
                    s
                } else {
                    format!("{m} x {s}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn decomposition_json(&self, m: &WeightModule<F>, r: &DecompositionReport<F::Elem>) -> Value {
        json!({
            "dim": m.dim(),
            "summands": self.hopf.summand_docs(r),
            "block_dims": r.block_dims(self.hopf.s()),
            "provenance": r.provenance,
        })
    }

    /// Runs the oracle next to the main path and diffs the results.
    fn oracle_diff(
        &self,
        m: &WeightModule<F>,
        r: &DecompositionReport<F::Elem>,
        with_series: bool,
    ) -> CliResult<Option<OracleDiff>> {
        if !self.opts.oracle {
            return Ok(None);
        }
        if !m.field().is_finite() {
            return Err(CliError::Usage("--oracle needs a finite field".into()));
        }
        let f = m.field();
        let split = oracle_split(m, self.opts.seed)?;
        let mut diff = OracleDiff {
            block_dims: split.block_dims(),
            blocks_agree: split.block_dims() == r.block_dims(self.hopf.s()),
            socle_agrees: None,
            radical_agrees: None,
            composition_agrees: None,
            skipped: None,
        };
        let canon = |b: &[Vec<F::Elem>]| row_space(f, b, m.dim());
        let soc = oracle_socle(m, self.budget);
        match soc {
            Err(hopfore::Error::BudgetExceeded { needed, budget }) => {
                diff.skipped = Some(format!("submodule enumeration needs {needed} vectors, budget {budget}"));
                return Ok(Some(diff));
            }
            other => {
                diff.socle_agrees = Some(other? == canon(&socle(m)?.basis));
            }
        }
        diff.radical_agrees = Some(oracle_radical(m, self.budget)? == canon(&radical(m)?.basis));
        if with_series {
            let mut got = oracle_composition_series(m, self.budget)?;
            got.sort();
            let mut want: Vec<ModuleLabel<F::Elem>> = series(m)?
                .radical_layers
                .iter()
                .flat_map(|l| l.labels.iter().flat_map(|(x, k)| std::iter::repeat_n(x.clone(), *k)))
                .collect();
            want.sort();
            diff.composition_agrees = Some(got == want);
        }
        Ok(Some(diff))
    }

    fn oracle_text(d: &OracleDiff) -> Vec<String> {
        let yn = |b: Option<bool>| match b {
            Some(true) => "agree",
            Some(false) => "DISAGREE",
            None => "not run",
        };
        let mut v = vec![format!(
            "oracle: block dims {:?} ({}), socle {}, radical {}",
            d.block_dims,
            yn(Some(d.blocks_agree)),
            yn(d.socle_agrees),
            yn(d.radical_agrees)
        )];
        if d.composition_agrees.is_some() {
            v.push(format!("oracle: composition factors {}", yn(d.composition_agrees)));
        }
        if let Some(s) = &d.skipped {
            v.push(format!("oracle: lattice checks skipped, {s}"));
        }
        v
    }

    fn verify_hopf(&self, degree: u32) -> CliResult<Outcome> {
        let r = self.hopf.verify_hopf_axioms(degree);
        let mut text = vec![format!(
            "basis g·x^i, i ≤ {degree}, g in {{{}}}",
            r.group_range.join(", ")
        )];
        for c in &r.checks {
            let status = if c.passed() {
                "pass".to_string()
            } else {
                format!("FAIL ({} of {})", c.failures.len(), c.cases)
            };
            text.push(format!("  {}: {} cases, {status}", c.name, c.cases));
            for fl in c.failures.iter().take(5) {
                text.push(format!("    at {}: {}", fl.witness, fl.detail));
            }
        }
        Ok(Outcome {
            passed: r.passed(),
            result: serde_json::to_value(&r)?,
            text,
        })
    }

    fn rank(&self, degree: u32) -> CliResult<Outcome> {
        let h = self.hopf;
        let r = h.rank_report(degree)?;
        let scans: Vec<Value> = r
            .scans
            .iter()
            .map(|s| {
                json!({
                    "g": h.format_group(h.index_of(&s.g).expect("scanned elements lie in G")),
                    "degrees": s.degrees,
                    "predicted_degrees": s.predicted_degrees,
                    "basis": s.basis.iter().map(|e| h.format(e)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut text = vec![
            format!("rank {}, H1 degrees {}", r.rank, fmt_set(r.h1_degrees())),
            format!(
                "skew-primitive degrees up to {degree}: found {}, predicted {}",
                fmt_set(&r.primitive_degrees),
                fmt_set(&r.predicted_degrees)
            ),
        ];
        text.extend(r.mismatches.iter().map(|m| format!("  mismatch: {m}")));
        Ok(Outcome {
            passed: r.passed(),
            result: json!({
                "degree_cap": r.degree_cap,
                "characteristic": r.characteristic,
                "q_order": r.q_order,
                "case": r.case,
                "rank": r.rank.to_string(),
                "h1_degrees": r.h1_degrees(),
                "primitive_degrees": r.primitive_degrees,
                "predicted_degrees": r.predicted_degrees,
                "scans": scans,
                "mismatches": r.mismatches,
            }),
            text,
        })
    }

    fn group_element(&self, spec: &str) -> CliResult<GroupElement> {
        let h = self.hopf;
        let s = spec.trim();
        match s {
            "1" | "e" | "identity" => return Ok(h.group().identity()),
            "a" => return Ok(h.a().clone()),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("a^") {
            let k: i64 = k.parse().map_err(|_| CliError::Usage(format!("bad exponent in {s:?}")))?;
            return Ok(h.group().pow(h.a(), k));
        }
        let exps: Result<Vec<i64>, _> = crate::config::parse_list(s).iter().map(|x| x.parse()).collect();
        let exps = exps.map_err(|_| CliError::Usage(format!("group element must be 1, a, a^k or an exponent list, got {s:?}")))?;
        Ok(h.group().element(&exps)?)
    }

    fn primitives(&self, g: &str, degree: u32) -> CliResult<Outcome> {
        let h = self.hopf;
        let g = self.group_element(g)?;
        let basis = h.skew_primitive_space(&g, degree)?;
        let shown: Vec<String> = basis.iter().map(|e| h.format(e)).collect();
        let gname = h.format_group(h.index_of(&g)?);
        let text = vec![
            format!("z with Δ(z) = z ⊗ {gname} + 1 ⊗ z, degree ≤ {degree}: dimension {}", basis.len()),
            format!("basis: {}", fmt_set(&shown)),
        ];
        Ok(Outcome {
            passed: true,
            result: json!({ "g": gname, "degree_cap": degree, "dimension": basis.len(), "basis": shown }),
            text,
        })
    }

    fn list_simples(&self) -> CliResult<Outcome> {
        let h = self.hopf;
        let c = simple_census(h)?;
        let doc = h.census_doc(&c);
        let characters = enumerate_characters(h.field(), h.group()).len();
        let mut text = vec![format!("{} one-dimensional simples", c.one_dim.len())];
        text.extend(c.one_dim.iter().map(|l| format!("  {}", h.format_label(l))));
        text.push(format!("{} block simples of dimension {}", c.blocks.len(), c.s));
        text.extend(c.blocks.iter().map(|l| format!("  {}", h.format_label(l))));
        if !c.block_family_cosets.is_empty() {
            text.push(format!(
                "families V([σ], f), f monic irreducible, f ≠ y, dimension {}·deg f, for {} cosets [σ]",
                c.s,
                c.block_family_cosets.len()
            ));
        }
        Ok(Outcome {
            passed: true,
            result: json!({ "characters": characters, "s": c.s, "census": doc }),
            text,
        })
    }

    fn classify(&self, src: &str) -> CliResult<Outcome> {
        let m = self.module(src)?;
        let r = classify(&m, self.opts.seed)?;
        let mut result = self.decomposition_json(&m, &r);
        let mut text = vec![format!("dim {}: {}", m.dim(), self.labels(&r))];
        let mut passed = true;
        if let Some(d) = self.oracle_diff(&m, &r, false)? {
            passed = d.passed();
            text.extend(Self::oracle_text(&d));
            result["oracle"] = serde_json::to_value(&d)?;
        }
        Ok(Outcome { passed, result, text })
    }

    fn single_label(&self, m: &WeightModule<F>) -> CliResult<Option<ModuleLabel<F::Elem>>> {
        let r = classify(m, self.opts.seed)?;
        Ok(match r.summands.as_slice() {
            [(l, 1)] => Some(l.clone()),
            _ => None,
        })
    }

    fn tensor(&self, a: &str, b: &str) -> CliResult<Outcome> {
        let h = self.hopf;
        let (ma, mb) = (self.module(a)?, self.module(b)?);
        let t = mod_tensor(&ma, &mb)?;
        let r = classify(&t, self.opts.seed)?;
        let prediction = match (self.single_label(&ma)?, self.single_label(&mb)?) {
            (Some(la), Some(lb)) => predicted_tensor(h, &la, &lb),
            _ => None,
        };
        let mut result = self.decomposition_json(&t, &r);
        let mut text = vec![format!("dim {}: {}", t.dim(), self.labels(&r))];
        let mut passed = true;
        match &prediction {
            Some(p) => {
                let ok = p.summands == r.summands;
                passed &= ok;
                text.push(format!(
                    "closed form: {} ({})",
                    self.labels(p),
                    if ok { "matches" } else { "MISMATCH" }
                ));
                result["prediction"] = json!({ "summands": h.summand_docs(p), "matches": ok });
            }
            None => text.push("closed form: not available for these operands".into()),
        }
        if let Some(d) = self.oracle_diff(&t, &r, false)? {
            passed &= d.passed();
            text.extend(Self::oracle_text(&d));
            result["oracle"] = serde_json::to_value(&d)?;
        }
        Ok(Outcome { passed, result, text })
    }

    fn series(&self, src: &str) -> CliResult<Outcome> {
        let h = self.hopf;
        let m = self.module(src)?;
        let s = series(&m)?;
        let layers = |ls: &[hopfore::modanalysis::SeriesLayer<F::Elem>]| -> Vec<Value> {
            ls.iter()
                .map(|l| {
                    json!({
                        "dim": l.dim,
                        "labels": l.labels.iter().map(|(x, k)| json!({"label": h.label_doc(x), "multiplicity": k})).collect::<Vec<_>>(),
                    })
                })
                .collect()
        };
        let mut result = json!({
            "dim": m.dim(),
            "radical_dims": s.radical_dims,
            "socle_dims": s.socle_dims,
            "radical_length": s.radical_length,
            "socle_length": s.socle_length,
            "radical_layers": layers(&s.radical_layers),
            "socle_layers": layers(&s.socle_layers),
            "consistent": s.consistent(),
        });
        let mut text = vec![
            format!("radical series dims {:?}", s.radical_dims),
            format!("socle series dims {:?}", s.socle_dims),
        ];
        for (i, l) in s.radical_layers.iter().enumerate() {
            let names: Vec<String> = l
                .labels
                .iter()
                .map(|(x, k)| if *k == 1 { h.format_label(x) } else { format!("{k} x {}", h.format_label(x)) })
                .collect();
            text.push(format!("  rad^{i}/rad^{}: {}", i + 1, names.join(" + ")));
        }
        let mut passed = s.consistent();
        if self.opts.oracle {
            let r = classify(&m, self.opts.seed)?;
            if let Some(d) = self.oracle_diff(&m, &r, true)? {
                passed &= d.passed();
                text.extend(Self::oracle_text(&d));
                result["oracle"] = serde_json::to_value(&d)?;
            }
        }
        Ok(Outcome { passed, result, text })
    }

    fn projectives(&self) -> CliResult<Outcome> {
        let h = self.hopf;
        let f = h.field();
        let rep = projectives_report(h)?;
        let n = h.quotient().n().expect("checked by projectives_report");
        let mut text = Vec::new();
        let mut entries = Vec::new();
        for e in &rep.entries {
            text.push(format!(
                "  P({}) = {} ({})",
                h.format_label(&e.simple),
                h.format_label(&e.cover),
                if e.checked { "checked" } else { "FAILED" }
            ));
            entries.push(json!({
                "simple": h.label_doc(&e.simple),
                "cover": h.label_doc(&e.cover),
                "checked": e.checked,
            }));
        }
        // V_n(λ) → V_t(λ) keeps m_0, …, m_{t-1}.
        let mut epis: BTreeMap<String, Vec<Value>> = BTreeMap::new();
        let mut all_nonsplit = true;
        for e in &rep.entries {
            let ModuleLabel::Simple1 { lambda } = &e.simple else { continue };
            let big = make_serial(h, lambda, n)?;
            let name = h.format_label(&e.simple);
            for t in 1..n {
                let small = make_serial(h, lambda, t)?;
                let mut map = Matrix::zeros(f, t as usize, n as usize);
                for i in 0..t as usize {
                    map.set(i, i, f.one());
                }
                let split = is_split_epi(&big, &small, &map)?;
                let homs = hom_space(&small, &big)?.len();
                all_nonsplit &= !split;
                epis.entry(name.clone()).or_default().push(json!({
                    "t": t,
                    "split": split,
                    "hom_back_dim": homs,
                }));
            }
        }
        text.insert(0, format!("{} simples, projective covers:", rep.entries.len()));
        text.push(format!(
            "canonical epimorphisms V_{n}(λ) → V_t(λ), t < {n}: {}",
            if all_nonsplit { "none split" } else { "SOME SPLIT" }
        ));
        Ok(Outcome {
            passed: rep.passed() && all_nonsplit,
            result: json!({ "n": n, "covers": entries, "epimorphisms": epis }),
            text,
        })
    }
}
