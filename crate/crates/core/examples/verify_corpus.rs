//! Run the oracle battery over the bundled corpus.

use std::path::Path;

use gainsign::corpus::load_dir;
use gainsign::verify::{verify_any, VerifyOptions};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus");
    let opts = VerifyOptions::default();
    for (name, g) in load_dir(&dir).unwrap() {
        let checks = verify_any(&g, &opts).unwrap();
        let line: Vec<String> = checks.iter().map(|c| format!("{}={:?}", c.check, c.status)).collect();
        println!("{name}: {}", line.join(" "));
    }
}
