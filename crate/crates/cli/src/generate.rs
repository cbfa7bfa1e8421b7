use std::io::Write;

use hyperirreg::{random_r_partite, random_uniform, write_hgr, RngSeed};

use crate::{write_output, Failure, GenerateArgs, EXIT_OK};

pub(crate) fn run(args: &GenerateArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let seed = RngSeed(args.seed);
    let text = match &args.partite {
        Some(sizes) => {
            let (h, p) =
                random_r_partite(sizes, args.m, seed).map_err(|e| Failure::input(e.to_string()))?;
            write_hgr(&h, Some(&p))
        }
        None => {
            let (Some(r), Some(n)) = (args.rank, args.n) else {
                return Err(Failure::input("generate needs --r and --n, or --partite"));
            };
            let h = random_uniform(n, args.m, r, seed).map_err(|e| Failure::input(e.to_string()))?;
            write_hgr(&h, None)
        }
    };
    write_output(args.output.as_deref(), &text, out)?;
    Ok(EXIT_OK)
}
