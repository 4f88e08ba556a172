//! Machine-readable check reports with deterministic JSON and CSV output.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactfield::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    pub measured_scalars: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, headers: &[&str]) -> Self {
        Table { name: name.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let esc = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let line = |r: &[String]| r.iter().map(|s| esc(s)).collect::<Vec<_>>().join(",");
        let mut out = line(&self.headers);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub conventions: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            params: BTreeMap::new(),
            conventions: BTreeMap::new(),
            checks: vec![],
            tables: vec![],
        }
    }

    /// Record the field and the fixed sign and normalisation conventions.
    pub fn with_conventions(mut self, ctx: FieldCtx) -> Self {
        let c = &mut self.conventions;
        c.insert("field".into(), format!("F_{}^{} mod {}", ctx.p(), ctx.k(), ctx.modulus_string()));
        c.insert("generators".into(), "E_j = e^(p^j), F_j = f^(p^j)".into());
        c.insert("coproduct".into(), "kron with first factor major".into());
        c.insert("dual".into(), "E_j -> -E_j^T".into());
        c.insert("twist_normalisation".into(), "A_0 = 1".into());
        c.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, details: impl Into<String>) -> &mut Check {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: details.into(),
            measured_scalars: BTreeMap::new(),
        });
        self.checks.last_mut().unwrap()
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Append another report's checks and tables, prefixing names with its command.
    pub fn absorb(&mut self, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.command, c.name);
            self.checks.push(c);
        }
        for mut t in other.tables {
            t.name = format!("{}/{}", other.command, t.name);
            self.tables.push(t);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// All tables as CSV blocks separated by a `# name` line.
    pub fn to_csv(&self) -> String {
        self.tables.iter().map(|t| format!("# {}\n{}", t.name, t.to_csv())).collect::<Vec<_>>().join("\n")
    }
}

impl Check {
    pub fn scalar(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.measured_scalars.insert(key.into(), value.to_string());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_determinism() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let mut r = Report::new("demo").with_conventions(ctx).param("p", 3);
        r.check("a", true, "ok").scalar("lambda", 2);
        r.check("b", false, "bad");
        let mut t = Table::new("dims", &["label", "dim"]);
        t.push(vec!["(1,2)".into(), "6".into()]);
        r.table(t);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["command"], "demo");
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][0]["measured_scalars"]["lambda"], "2");
        assert_eq!(v["checks"][1]["status"], "fail");
        assert_eq!(r.failures(), 1);
        assert_eq!(r.to_json(), r.clone().to_json());
        assert_eq!(r.to_csv(), "# dims\nlabel,dim\n\"(1,2)\",6\n");
    }
}
