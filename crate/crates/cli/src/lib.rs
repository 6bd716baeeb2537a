//! Session files, command dispatch and reports on top of `fibercone-core`.

pub mod error;
pub mod run;
pub mod session;

use fibercone_core::catalog::CatalogEntry;

pub use error::CliError;
pub use run::{run_session, Report};
pub use session::Session;

/// A session declaring a catalog instance as `I1`, `I2`, `X`, followed by `commands`.
pub fn catalog_session(entry: &CatalogEntry, commands: &[&str]) -> String {
    let mut s = format!("# {}: {}\n", entry.name, entry.summary);
    s += &format!("ring p=32003 vars={} order=degrevlex\n", entry.vars.join(","));
    s += &format!("ideal I1 = {}\nideal I2 = {}\nseq X = {}\n", entry.i1, entry.i2, entry.x);
    for c in commands {
        s += c;
        s.push('\n');
    }
    s
}
