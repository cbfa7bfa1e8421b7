use std::io::Write;

use hyperirreg::{
    parse_partition_line, IrregularityReport, Shift, SpectralOptions, SuiteOptions,
};

use crate::report::{to_json, to_text};
use crate::{
    read_hgr, read_text, write_output, AnalyzeArgs, Failure, SolverArgs, EXIT_BOUND_VIOLATION,
    EXIT_NONCONVERGENCE, EXIT_OK,
};

pub(crate) fn spectral_options(args: &SolverArgs) -> Result<SpectralOptions<f64>, Failure> {
    if !(args.solver_tol > 0.0) || args.max_iterations == 0 {
        return Err(Failure::input(
            "solver tolerance must be positive and max iterations at least 1",
        ));
    }
    Ok(SpectralOptions {
        tolerance: args.solver_tol,
        max_iterations: args.max_iterations,
        shift: Shift::Auto,
    })
}

pub(crate) fn suite_options(tol: f64, solver: &SolverArgs) -> Result<SuiteOptions<f64>, Failure> {
    if !(tol >= 0.0) {
        return Err(Failure::input("tolerance must be nonnegative"));
    }
    Ok(SuiteOptions {
        check_tolerance: tol,
        spectral: spectral_options(solver)?,
    })
}

pub(crate) fn run(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let doc = read_hgr(&args.file)?;
    let h = doc.hypergraph;
    let partition = match &args.partition {
        Some(path) => {
            let p = parse_partition_line(&read_text(path)?, h.rank(), h.vertex_count())
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            h.check_partition(&p)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            Some(p)
        }
        None => doc.partition,
    };
    let opts = suite_options(args.tol, &args.solver)?;
    let report = IrregularityReport::compute(&h, partition.as_ref(), &opts)
        .map_err(|e| Failure::input(e.to_string()))?;
    let text = if args.json {
        to_json(&report)
    } else {
        to_text(&report)
    };
    write_output(None, &text, out)?;
    Ok(if !report.spectral.converged {
        EXIT_NONCONVERGENCE
    } else if !report.bounds.all_hold() {
        EXIT_BOUND_VIOLATION
    } else {
        EXIT_OK
    })
}
