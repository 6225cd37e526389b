use std::path::PathBuf;

use relcyc::algebra::CleftDatum;
use relcyc::Q;

/// Bundled fixture by name, falling back to JSON files under `tests/fixtures`.
pub fn load(name: &str) -> CleftDatum<Q> {
    let local = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.json"));
    match relcyc::instance::fixture::<Q>(name) {
        Ok(d) => d,
        Err(_) => relcyc::instance::load::<Q>(local.to_str().unwrap()).unwrap(),
    }
}
