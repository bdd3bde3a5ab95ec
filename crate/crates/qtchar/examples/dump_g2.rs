use qtchar::engine::Caps;
use qtchar::verify::verify_paper;
use std::path::Path;

fn main() {
    match verify_paper(Path::new("crates/qtchar-cli/fixtures"), Caps::default()) {
        Ok(results) => {
            for r in &results {
                println!("[{}] {} ({})", if r.pass { "PASS" } else { "FAIL" }, r.name, r.locus);
                if !r.pass {
                    for line in r.details.lines().take(6) {
                        println!("    {line}");
                    }
                }
            }
        }
        Err(e) => println!("suite error: {e}"),
    }
}
