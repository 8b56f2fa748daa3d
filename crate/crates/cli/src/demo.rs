use std::fmt::Write as _;

use anyhow::{Context, Result};
use spectra_core::family5::{diagonalizable_realization, make_point, obstruction_witness_families, D1Choice, Family};
use spectra_core::scalar::parse_rational;
use spectra_core::{Rational, RationalMatrix};

use crate::commands::{emit_json, realization_value};
use crate::{DemoArgs, Outcome};

struct Example {
    name: &'static str,
    file: &'static str,
    family: Family,
    t0: &'static str,
    t: &'static str,
    d1: &'static str,
    /// Reference values for `(d1, b, a, d3)`.
    reference: [&'static str; 4],
}

const EXAMPLES: [Example; 2] = [
    Example {
        name: "worked example, family t at t0 = 1, t = 4/5",
        file: "realize_t.json",
        family: Family::TT0,
        t0: "1",
        t: "4/5",
        d1: "11/2",
        reference: ["11/2", "63/25", "9/100", "129/50"],
    },
    Example {
        name: "worked example, family tprime at t0 = 1/2, t = 3/10",
        file: "realize_tprime.json",
        family: Family::TT0Prime,
        t0: "1/2",
        t: "3/10",
        d1: "9",
        reference: ["9", "433/100", "227/100", "499/100"],
    },
];

fn matrix_block(m: &RationalMatrix) -> String {
    let mut s = String::from("```\n");
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{:>8}", x.to_string())).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s.push_str("```\n");
    s
}

pub fn run(args: DemoArgs) -> Result<Outcome> {
    std::fs::create_dir_all(&args.out_dir).with_context(|| format!("creating {}", args.out_dir.display()))?;
    let mut report = String::from("# Demonstrations\n\n| artifact | content |\n|---|---|\n");
    for ex in &EXAMPLES {
        let _ = writeln!(report, "| `{}` | {} |", ex.file, ex.name);
    }
    report.push_str("| `report.md` | this report |\n\n");
    let mut all_passed = true;

    for ex in &EXAMPLES {
        let point = make_point(ex.family, &parse_rational(ex.t0)?, &parse_rational(ex.t)?)?;
        let r = diagonalizable_realization(&point, &D1Choice::Value(parse_rational(ex.d1)?))?;
        emit_json(Some(&args.out_dir.join(ex.file)), &realization_value(&r))?;
        all_passed &= r.certificate.passed;
        let _ = writeln!(report, "## {}\n", ex.name);
        let _ = writeln!(
            report,
            "List {}; quartic part {}.\n",
            point.list,
            spectra_core::Spectrum::new(point.gamma1())
        );
        let _ = writeln!(
            report,
            "Companion realization of the quartic part:\n\n{}",
            matrix_block(&r.companion)
        );
        let _ = writeln!(report, "Bond with `[[0,2],[2,0]]`:\n\n{}", matrix_block(r.matrix()));
        let _ = writeln!(
            report,
            "Certificate (nonnegative, spectrum, diagonal Jordan structure): **{}**\n",
            r.certificate.verdict()
        );
        report.push_str("| entry | computed | reference | agrees |\n|---|---|---|---|\n");
        let computed: [&Rational; 4] = [&r.params.d1, &r.params.b, &r.params.a, &r.params.d3];
        for ((name, c), reference) in ["d1", "b", "a", "d3"].iter().zip(computed).zip(ex.reference) {
            let reference = parse_rational(reference)?;
            let _ = writeln!(report, "| {name} | {c} | {reference} | {} |", *c == reference);
        }
        report.push('\n');
        if let Some(iv) = &r.params.feasible_interval {
            let _ = writeln!(
                report,
                "Feasible d1: {iv}, about [{:.6}, {:.6}].\n",
                iv.lo.to_f64(),
                iv.hi.to_f64()
            );
        }
    }

    for d in obstruction_witness_families(args.trials, args.seed)? {
        all_passed &= d.passed;
        let _ = writeln!(report, "## {}\n", d.title);
        for line in &d.lines {
            let _ = writeln!(report, "- {line}");
        }
        let _ = writeln!(report, "\nResult: **{}**\n", if d.passed { "pass" } else { "fail" });
    }

    let path = args.out_dir.join("report.md");
    std::fs::write(&path, report).with_context(|| format!("writing {}", path.display()))?;
    println!("{}", path.display());
    Ok(if all_passed {
        Outcome::Pass
    } else {
        Outcome::CertificateFailed
    })
}
