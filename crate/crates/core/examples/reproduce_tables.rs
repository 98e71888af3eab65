//! Regenerate the reference tables and figure data into a directory.
//!
//! cargo run --release --example reproduce_tables -- out/ [table1 fig1 ...]

use std::path::PathBuf;

use chofisher::pipeline::ComputeSettings;
use chofisher::reproduce::{reproduce, Target};
use chofisher::table::Delimiter;

fn main() -> chofisher::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "reproduced".into()));
    let targets: Vec<Target> = match args.map(|a| a.parse()).collect::<chofisher::Result<Vec<_>>>()? {
        t if t.is_empty() => vec![Target::Table1, Target::Table3],
        t => t,
    };
    std::fs::create_dir_all(&dir)?;
    for target in targets {
        for a in reproduce(target, &ComputeSettings::default(), Delimiter::Csv)? {
            std::fs::write(dir.join(&a.file_name), &a.contents)?;
            println!("{}", dir.join(&a.file_name).display());
        }
    }
    Ok(())
}
