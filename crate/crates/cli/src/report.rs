use serde::Serialize;
use serde_json::Value;

use hopfore::exactnum::Field;
use hopfore::hopfcore::HopfPresentation;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct InstanceEcho {
    pub field: String,
    pub group: Vec<u64>,
    pub chi: Vec<String>,
    pub a: String,
    pub ideal: String,
    pub q: String,
    pub q_order: Option<u64>,
    pub chi_order: u64,
    pub case: String,
}

impl InstanceEcho {
    pub fn of<F: Field>(h: &HopfPresentation<F>) -> Self {
        let f = h.field();
        let ideal = match h.quotient() {
            hopfore::hopfcore::QuotientSpec::None => "none".to_string(),
            hopfore::hopfcore::QuotientSpec::PowerZero(n) => format!("x^{n}"),
            hopfore::hopfcore::QuotientSpec::PowerCentral(n, b) => format!("x^{n} - ({})*(1-a^{n})", f.fmt_elem(b)),
        };
        InstanceEcho {
            field: f.descriptor().to_string(),
            group: h.group().factors().to_vec(),
            chi: h.chi().images.iter().map(|v| f.fmt_elem(v)).collect(),
            a: h.format_group(h.index_of(h.a()).expect("a lies in G")),
            ideal,
            q: f.fmt_elem(h.q()),
            q_order: h.q_order(),
            chi_order: h.s(),
            case: format!("{:?}", h.case()),
        }
    }
}

/// Output of one command. `text` is the human-readable rendering and is
/// not part of the JSON document.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub args: Vec<String>,
    pub seed: u64,
    pub instance: InstanceEcho,
    pub passed: bool,
    pub result: Value,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} on {} (G = Z{:?}, chi = [{}], q = {}, {})\n",
            self.command,
            self.instance.field,
            self.instance.group,
            self.instance.chi.join(","),
            self.instance.q,
            self.instance.case
        );
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(if self.passed { "result: pass\n" } else { "result: FAIL\n" });
        out
    }
}
