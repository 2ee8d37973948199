fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let header = std::path::Path::new(&crate_dir).join("include").join("qtrig.h");

    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.cpp_compat = true;
    config.include_guard = Some("QTRIG_H".into());
    config.documentation = true;
    config.enumeration.prefix_with_name = true;

    let result = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .map(|data| {
            data.write_to_file(&header);
        });

    if result.is_ok() {
        println!("cargo:rerun-if-changed=src/lib.rs");
    }
}
