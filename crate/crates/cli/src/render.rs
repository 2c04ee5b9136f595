//! Plain-text tables over the JSON reports.

use critset::workbench::{CatalogEntry, FactCheck, VerificationReport};

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn catalog(entries: &[CatalogEntry]) {
    println!("{:<22} {:>3} {:>3}  description", "name", "n", "l");
    for e in entries {
        println!(
            "{:<22} {:>3} {:>3}  {}",
            e.name,
            e.arrangement.len(),
            e.arrangement.dim(),
            e.description
        );
    }
}

pub fn reports(reports: &[VerificationReport]) {
    println!(
        "{:<22} {:<16} {:<28} {:>6} {:>6} {:>6}  verdict",
        "arrangement", "sample", "weights", "p", "codim", "sat"
    );
    for r in reports {
        let mut w = r.weights.to_string();
        if w.len() > 28 {
            w.truncate(25);
            w.push_str("...");
        }
        let verdict = serde_json::to_value(r.verdict).expect("verdict");
        println!(
            "{:<22} {:<16} {:<28} {:>6} {:>6} {:>6}  {}",
            r.arrangement,
            r.sample.as_deref().unwrap_or("-"),
            w,
            opt(r.least_p),
            opt(r.codimension),
            opt(r.saturated_codimension),
            verdict.as_str().unwrap_or("?"),
        );
        for a in &r.annotations {
            println!("    note: {a}");
        }
    }
}

pub fn facts(facts: &[FactCheck]) {
    for f in facts {
        let mark = if f.ok { "ok  " } else { "FAIL" };
        println!("{mark} {:<22} {:<20} expected {} computed {}", f.entry, f.fact, f.expected, f.computed);
    }
}
