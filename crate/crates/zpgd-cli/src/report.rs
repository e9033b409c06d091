//! Output files: sampled profiles, event logs, comparison and convergence
//! tables, and the gnuplot script that renders them. Everything is plain
//! deterministic text with 17-significant-digit floats.

use std::fmt::Write as _;
use zpgd::front_tracking::EventRecord;
use zpgd::residual::{CompareReport, ResidualReport};
use zpgd::solution::PiecewiseSolution;
use zpgd::textio::{fmt_f64, write_table};
use zpgd::viscous::ViscousField;

/// Long-format profile table `t x u rho`, one gnuplot-indexable block per
/// requested time.
pub fn profiles_table(
    sol: &PiecewiseSolution,
    times: &[f64],
    x_max: f64,
    nx: usize,
) -> Result<String, String> {
    let mut out = String::from("t x u rho\n");
    for &t in times {
        for i in 0..nx {
            let x = x_max * (i as f64 + 0.5) / nx as f64;
            let s = sol.evaluate(x, t).map_err(|e| e.to_string())?;
            let _ = writeln!(
                out,
                "{} {} {} {}",
                fmt_f64(t),
                fmt_f64(x),
                fmt_f64(s.u),
                fmt_f64(s.rho_regular)
            );
        }
        out.push('\n');
        out.push('\n');
    }
    Ok(out)
}

/// One line per event: time, position, kind, front counts and strength
/// totals on both sides.
pub fn event_log(events: &[EventRecord], exits: &[zpgd::solution::ExitRecord]) -> String {
    let mut out = String::new();
    for e in events {
        let _ = writeln!(
            out,
            "event t {} x {} kind {} fronts_before {} fronts_after {} e_before {} e_after {}",
            fmt_f64(e.time),
            fmt_f64(e.position),
            e.kind,
            e.fronts_before,
            e.fronts_after,
            fmt_f64(e.strength_before),
            fmt_f64(e.strength_after),
        );
    }
    for x in exits {
        let _ = writeln!(
            out,
            "exit t {} mass {}",
            fmt_f64(x.time),
            fmt_f64(x.mass)
        );
    }
    out
}

pub fn compare_table(report: &CompareReport) -> String {
    write_table(
        &["sup_u", "sup_rho", "l1_u", "l1_rho", "n_points"],
        &[vec![
            report.sup_u,
            report.sup_rho,
            report.l1_u,
            report.l1_rho,
            report.n_points as f64,
        ]],
    )
}

pub fn convergence_report_table(report: &ResidualReport) -> String {
    let mut rows = Vec::new();
    for e in &report.entries {
        rows.push(vec![
            e.eps,
            e.residual_u,
            e.residual_rho,
            e.distance_u,
            e.distance_rho,
            report.fitted_order_u.unwrap_or(f64::NAN),
            report.fitted_order_rho.unwrap_or(f64::NAN),
        ]);
    }
    write_table(
        &[
            "eps",
            "residual_u",
            "residual_rho",
            "distance_u",
            "distance_rho",
            "order_u",
            "order_rho",
        ],
        &rows,
    )
}

/// Exact-solution check table: one row per probe.
pub fn check_table(rows: &[(String, f64)]) -> String {
    let mut out = String::from("check value\n");
    for (name, value) in rows {
        let _ = writeln!(out, "{} {}", name, fmt_f64(*value));
    }
    out
}

/// Script for an external plotting tool; references the emitted data files.
pub fn plot_script(prefix: &str, n_profiles: usize, has_field: bool) -> String {
    let base = std::path::Path::new(prefix)
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| prefix.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "set terminal pngcairo size 1000,700");
    let _ = writeln!(out, "set grid");
    if n_profiles > 0 {
        let _ = writeln!(out, "set output '{base}.profiles.png'");
        let _ = writeln!(out, "set xlabel 'x'");
        let mut parts = Vec::new();
        for k in 0..n_profiles {
            parts.push(format!(
                "'{base}.profiles.dat' index {k} using 2:3 with lines title 'u block {k}'"
            ));
            parts.push(format!(
                "'{base}.profiles.dat' index {k} using 2:4 with lines dashtype 2 title 'rho block {k}'"
            ));
        }
        let _ = writeln!(out, "plot {}", parts.join(", \\\n     "));
    }
    if has_field {
        let _ = writeln!(out, "set output '{base}.field.png'");
        let _ = writeln!(out, "set xlabel 'x'");
        let _ = writeln!(
            out,
            "plot '{base}.field.dat' using 1:3 with points pointsize 0.2 title 'u^eps', \\"
        );
        let _ = writeln!(
            out,
            "     '{base}.field.dat' using 1:4 with points pointsize 0.2 title 'rho^eps'"
        );
    }
    out
}

/// Viscous field table with the header the readers expect.
pub fn field_table(field: &ViscousField) -> String {
    field.to_table()
}
