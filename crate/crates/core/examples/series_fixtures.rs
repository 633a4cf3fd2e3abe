//! Regenerates the cached avoider counts under tests/data/series.
//!
//! Usage: series_fixtures [length-4 order] [length-5 order] [class ...]

use std::path::PathBuf;
use std::time::Instant;

use cpap_core::dp::count_series;
use cpap_core::perm::ClassId;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n4: usize = args.first().map_or(120, |s| s.parse().expect("order"));
    let n5: usize = args.get(1).map_or(80, |s| s.parse().expect("order"));
    let only: Vec<ClassId> = args.iter().skip(2).map(|s| s.parse().expect("class")).collect();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/series");
    std::fs::create_dir_all(&dir).expect("create fixture directory");
    for class in ClassId::all() {
        if !only.is_empty() && !only.contains(&class) {
            continue;
        }
        let n = if class.length() == 4 { n4 } else { n5 };
        let pat = class.canonical();
        let start = Instant::now();
        let series = count_series(&pat, n).expect("enumeration");
        let path = dir.join(format!("{class}.json"));
        std::fs::write(&path, series.to_json()).expect("write fixture");
        eprintln!("{class} {pat} N={n} {:.1?}", start.elapsed());
    }
}
