//! Generates include/schmidt_locus.h from the exported FFI surface. The
//! generated header is committed, so consumers (and offline builds) can use
//! it without running cbindgen; when cbindgen is unavailable the existing
//! header is kept as-is.

use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR set");
    let header = Path::new(&crate_dir).join("include/schmidt_locus.h");

    let config = cbindgen::Config::from_file(Path::new(&crate_dir).join("cbindgen.toml"))
        .expect("cbindgen.toml parses");
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
    {
        Ok(bindings) => {
            // write_to_file leaves an identical file untouched
            bindings.write_to_file(&header);
        }
        Err(e) if header.exists() => {
            println!("cargo:warning=keeping existing header; cbindgen failed: {e}");
        }
        Err(e) => panic!("cannot generate {}: {e}", header.display()),
    }
}
