//! CSV and SVG artifact writers. The CSV column sets are stable contracts;
//! the SVG is a dependency-free illustrative plot.

use crate::analysis::ConvergenceReport;
use crate::optimizers::Trace;
use crate::problems::Problem;

pub const TRACE_CSV_HEADER: &str = "k,f,grad_norm,t_k,rho_or_eps,step_norm,inexactness";

pub fn trace_csv(trace: &Trace) -> String {
    let mut s = String::with_capacity(trace.records.len() * 64);
    s.push_str(TRACE_CSV_HEADER);
    s.push('\n');
    for r in &trace.records {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.k, r.f, r.grad_norm, r.t, r.rho_or_eps, r.step_norm, r.inexactness
        ));
    }
    s
}

pub fn report_csv(report: &ConvergenceReport) -> String {
    format!(
        "{}\n{}\n",
        ConvergenceReport::csv_header(),
        report.csv_row()
    )
}

/// Log-scale plot of ‖∇f(x^k)‖ and the f-gap against k: two polylines in a
/// fixed 800×600 view box, no plotting dependency. Series are thinned to at
/// most 2000 points; nonpositive values are skipped (log scale).
pub fn trace_svg(trace: &Trace, problem: &Problem) -> String {
    const W: f64 = 800.0;
    const H: f64 = 600.0;
    const MARGIN: f64 = 60.0;

    let f_star = problem.f_star();
    let grad_series: Vec<(f64, f64)> = trace
        .records
        .iter()
        .filter(|r| r.grad_norm > 0.0)
        .map(|r| (r.k as f64, r.grad_norm))
        .collect();
    let gap_series: Vec<(f64, f64)> = trace
        .records
        .iter()
        .filter_map(|r| {
            let gap = match f_star {
                Some(fs) => r.f - fs,
                None => r.f,
            };
            (gap > 0.0).then_some((r.k as f64, gap))
        })
        .collect();

    let all: Vec<&(f64, f64)> = grad_series.iter().chain(gap_series.iter()).collect();
    if all.is_empty() {
        return format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\"><text x=\"20\" y=\"40\">no positive values to plot</text></svg>"
        );
    }
    let k_max = all.iter().map(|(k, _)| *k).fold(1.0, f64::max);
    let y_min = all
        .iter()
        .map(|(_, v)| v.log10())
        .fold(f64::INFINITY, f64::min);
    let y_max = all
        .iter()
        .map(|(_, v)| v.log10())
        .fold(f64::NEG_INFINITY, f64::max);
    let y_span = (y_max - y_min).max(1e-12);

    let x_of = |k: f64| MARGIN + (k / k_max) * (W - 2.0 * MARGIN);
    let y_of = |v: f64| H - MARGIN - ((v.log10() - y_min) / y_span) * (H - 2.0 * MARGIN);

    let polyline = |series: &[(f64, f64)], color: &str| {
        if series.is_empty() {
            return String::new();
        }
        let stride = (series.len() / 2000).max(1);
        let points: Vec<String> = series
            .iter()
            .step_by(stride)
            .map(|(k, v)| format!("{:.2},{:.2}", x_of(*k), y_of(*v)))
            .collect();
        format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.join(" ")
        )
    };

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    s.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    ));
    // axes
    s.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MARGIN,
        W - MARGIN,
        H - MARGIN
    ));
    s.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MARGIN
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\">k (1..{})</text>\n",
        W / 2.0 - 30.0,
        H - MARGIN / 3.0,
        k_max as u64
    ));
    s.push_str(&format!(
        "<text x=\"8\" y=\"{}\" font-size=\"12\">log10 in [{:.2}, {:.2}]</text>\n",
        MARGIN / 2.0,
        y_min,
        y_max
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#1f77b4\">grad norm</text>\n",
        W - MARGIN - 160.0,
        MARGIN / 2.0
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#d62728\">f gap</text>\n",
        W - MARGIN - 60.0,
        MARGIN / 2.0
    ));
    s.push_str(&polyline(&grad_series, "#1f77b4"));
    s.push('\n');
    s.push_str(&polyline(&gap_series, "#d62728"));
    s.push_str("\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizers::{run, OptimizerSpec, Variant};
    use crate::problems::make_square_1d;
    use crate::schedules::{ScheduleFamily, ScheduleSpec};

    fn sample_trace() -> (Trace, Problem) {
        let p = make_square_1d();
        let spec = OptimizerSpec::new(
            Variant::Gd,
            ScheduleSpec::stepsize(ScheduleFamily::Constant(0.25)).unwrap(),
        );
        (run(&p, &spec, &[1.0], 50).unwrap(), p)
    }

    #[test]
    fn trace_csv_has_exact_columns() {
        let (trace, _) = sample_trace();
        let csv = trace_csv(&trace);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "k,f,grad_norm,t_k,rho_or_eps,step_norm,inexactness"
        );
        let first = lines.next().unwrap();
        assert_eq!(first.split(',').count(), 7);
        assert!(first.starts_with("1,"));
    }

    #[test]
    fn svg_is_wellformed_polyline_plot() {
        let (trace, p) = sample_trace();
        let svg = trace_svg(&trace, &p);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("viewBox=\"0 0 800 600\""));
        assert!(svg.contains("<polyline"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
