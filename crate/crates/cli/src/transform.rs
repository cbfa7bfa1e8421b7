use std::io::Write;

use hyperirreg::{blow_up, blow_up_uniform, direct_product, write_hgr};

use crate::{read_hgr, write_output, Failure, TransformArgs, TransformOp, EXIT_OK};

pub(crate) fn run(args: &TransformArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let fail = |e: &dyn std::fmt::Display| Failure::input(e.to_string());
    let (result, output) = match &args.op {
        TransformOp::Product { a, b, output } => {
            let (a, b) = (read_hgr(a)?.hypergraph, read_hgr(b)?.hypergraph);
            (direct_product(&a, &b).map_err(|e| fail(&e))?, output)
        }
        TransformOp::Blowup {
            file,
            k,
            ks,
            output,
        } => {
            let h = read_hgr(file)?.hypergraph;
            let g = match (k, ks) {
                (Some(k), None) => blow_up_uniform(&h, *k),
                (None, Some(ks)) => blow_up(&h, ks),
                _ => return Err(Failure::input("blowup needs exactly one of --k or --ks")),
            };
            (g.map_err(|e| fail(&e))?, output)
        }
        TransformOp::Union { a, b, output } => {
            let (a, b) = (read_hgr(a)?.hypergraph, read_hgr(b)?.hypergraph);
            (a.union_edges(&b).map_err(|e| fail(&e))?, output)
        }
    };
    write_output(output.as_deref(), &write_hgr(&result, None), out)?;
    Ok(EXIT_OK)
}
