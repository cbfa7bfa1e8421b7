use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use hyperirreg::{
    parse_partition_line, regularize, regularize_partitewise, s_measure, s_r_measure, write_hgr,
    write_trace,
};

use crate::{read_hgr, read_text, write_output, Failure, RegularizeArgs, EXIT_OK};

/// Sidecar path for the swap trace: `<output>.trace`.
pub(crate) fn trace_path(output: &std::path::Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".trace");
    PathBuf::from(name)
}

pub(crate) fn run(args: &RegularizeArgs, out: &mut dyn Write) -> Result<u8, Failure> {
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

    let (rewired, trace, budget_name, budget) = if args.partitewise {
        let p = partition
            .as_ref()
            .ok_or_else(|| Failure::input("--partitewise needs a partition"))?;
        let (g, t) = regularize_partitewise(&h, p).map_err(|e| Failure::input(e.to_string()))?;
        let s_r: f64 = s_r_measure(&h, p).map_err(|e| Failure::input(e.to_string()))?;
        (g, t, "s_r(H)", s_r)
    } else {
        let (g, t) = regularize(&h).map_err(|e| Failure::input(e.to_string()))?;
        (g, t, "s(H)", s_measure::<f64>(&h))
    };

    write_output(
        Some(&args.output),
        &write_hgr(&rewired, partition.as_ref()),
        out,
    )?;
    write_output(
        Some(&trace_path(&args.output)),
        &write_trace(h.rank(), &trace),
        out,
    )?;

    let edits = h
        .symmetric_difference_size(&rewired)
        .expect("same rank by construction");
    let mut summary = String::new();
    let (d0, d1) = (h.degrees(), rewired.degrees());
    let span = |d: &[usize]| {
        let (lo, hi) = (
            d.iter().copied().min().unwrap_or(0),
            d.iter().copied().max().unwrap_or(0),
        );
        (lo, hi)
    };
    let ((lo0, hi0), (lo1, hi1)) = (span(&d0), span(&d1));
    let _ = writeln!(summary, "swaps      {}", trace.len());
    let _ = writeln!(summary, "max degree {hi0} -> {hi1}");
    let _ = writeln!(summary, "min degree {lo0} -> {lo1}");
    let _ = writeln!(summary, "spread     {} -> {}", hi0 - lo0, hi1 - lo1);
    let _ = writeln!(summary, "edits      {edits} (budget {budget_name} = {budget:.12})");
    write_output(None, &summary, out)?;
    Ok(EXIT_OK)
}
