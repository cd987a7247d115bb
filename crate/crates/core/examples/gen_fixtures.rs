//! Regenerates `fixtures/maps.toml` and `fixtures/manifest.toml`.

use std::path::Path;

use dp4aut::fixtures::{self, Manifest};
use dp4aut::verify::{build_map_records, render_manifest, render_map_fixtures};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let maps = render_map_fixtures()?;
    let manifest = Manifest { matrices: fixtures::matrices_unchecked()?.len(), maps: build_map_records()?.len() };
    std::fs::write(dir.join("maps.toml"), maps)?;
    std::fs::write(dir.join("manifest.toml"), render_manifest(&manifest))?;
    println!("wrote {} map records, {} matrix records", manifest.maps, manifest.matrices);
    Ok(())
}
