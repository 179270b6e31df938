use std::fmt::Write as _;

use hedgeql_core::Trace;

/// Plain-text form of an evaluation trace.
pub fn render_trace(t: &Trace) -> String {
    let mut out = format!("explain: {}\n", t.query);
    for p in &t.partitions {
        out.push('\n');
        out.push_str(&p.to_text());
    }
    if !t.unmatchable.is_empty() {
        out.push('\n');
        for u in &t.unmatchable {
            let _ = writeln!(out, "unmatchable: {u}");
        }
    }
    for o in &t.objects {
        let _ = writeln!(
            out,
            "\n{}: {}",
            o.id,
            if o.matched { "matched" } else { "not matched" }
        );
        for leaf in &o.leaves {
            let _ = writeln!(out, "  {} -> {}", leaf.condition, leaf.outcome);
            for c in &leaf.checks {
                let _ = writeln!(
                    out,
                    "    {} (level {}) = {}: {} vs {} -> {}",
                    c.attribute, c.level, c.value, c.located, c.condition, c.outcome
                );
            }
        }
    }
    out
}
