//! Rendering helpers: exact-width JSON numbers and small hand-assembled
//! JSON values. The records are flat and fixed-shape, so a serializer
//! dependency would buy nothing here.

use qubit_approx::bloch::EigenPair;
use qubit_approx::result::{ApproximationResult, InequalityRecord, SolveWarning};
use qubit_approx::sets::WeightVector;
use qubit_approx::BlochVector;

/// Every numeric JSON field goes through this: 17 significant digits,
/// which round-trips any f64. Negative zero is folded into zero.
pub fn float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

pub fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Incremental `{"name":value,...}` builder. Field names are trusted
/// identifiers; values arrive already rendered.
pub struct Obj {
    out: String,
    first: bool,
}

impl Obj {
    pub fn new() -> Self {
        Obj {
            out: String::from("{"),
            first: true,
        }
    }

    pub fn raw(mut self, name: &str, value: &str) -> Self {
        if !self.first {
            self.out.push(',');
        }
        self.first = false;
        self.out.push('"');
        self.out.push_str(name);
        self.out.push_str("\":");
        self.out.push_str(value);
        self
    }

    pub fn num(self, name: &str, v: f64) -> Self {
        let rendered = float(v);
        self.raw(name, &rendered)
    }

    pub fn int(self, name: &str, v: u64) -> Self {
        self.raw(name, &v.to_string())
    }

    pub fn str(self, name: &str, v: &str) -> Self {
        let rendered = quoted(v);
        self.raw(name, &rendered)
    }

    pub fn opt_num(self, name: &str, v: Option<f64>) -> Self {
        match v {
            Some(v) => self.num(name, v),
            None => self.raw(name, "null"),
        }
    }

    pub fn close(mut self) -> String {
        self.out.push('}');
        self.out
    }
}

pub fn bloch(v: &BlochVector) -> String {
    Obj::new()
        .num("x", v.x())
        .num("y", v.y())
        .num("z", v.z())
        .close()
}

pub fn weights(w: &WeightVector) -> String {
    let items: Vec<String> = w.as_slice().iter().copied().map(float).collect();
    format!("[{}]", items.join(","))
}

pub fn eigen(e: &EigenPair) -> String {
    Obj::new().num("plus", e.plus).num("minus", e.minus).close()
}

pub fn checks(records: &[InequalityRecord]) -> String {
    let items: Vec<String> = records
        .iter()
        .map(|c| {
            Obj::new()
                .str("name", c.name)
                .num("lhs", c.lhs)
                .str("op", c.op)
                .num("rhs", c.rhs)
                .raw("holds", if c.holds { "true" } else { "false" })
                .close()
        })
        .collect();
    format!("[{}]", items.join(","))
}

/// Appends the fields shared by every solver record: region, distance,
/// weights, optimal point, provenance, and the optional extras.
pub fn result_fields(obj: Obj, res: &ApproximationResult) -> Obj {
    let obj = match &res.region {
        Some(tag) => obj.str("region", tag.label_str()),
        None => obj.raw("region", "null"),
    };
    let obj = obj
        .num("distance", res.distance)
        .raw("weights", &weights(&res.weights))
        .raw("optimal_bloch", &bloch(&res.optimal_bloch))
        .str("provenance", res.provenance.as_str());
    let obj = match res.free_params {
        Some(fp) => {
            let rendered = Obj::new()
                .num("t1", fp.t1)
                .num("t2", fp.t2)
                .num("t_sum_max", fp.t_sum_max)
                .close();
            obj.raw("free_params", &rendered)
        }
        None => obj,
    };
    match res.warning {
        Some(SolveWarning::PolishDidNotConverge { final_step }) => {
            let rendered = Obj::new()
                .str("kind", "polish-did-not-converge")
                .num("final_step", final_step)
                .close();
            obj.raw("warning", &rendered)
        }
        None => obj,
    }
}

pub fn result_object(res: &ApproximationResult) -> String {
    result_fields(Obj::new(), res).close()
}
