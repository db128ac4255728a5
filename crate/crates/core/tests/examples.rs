macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(transform_basics, "transform_basics.rs");
example!(convolution_algebra, "convolution_algebra.rs");
example!(automorphisms, "automorphisms.rs");
example!(check_operator, "check_operator.rs");
example!(recover_operator, "recover_operator.rs");
example!(file_formats, "file_formats.rs");
example!(benchmark, "benchmark.rs");

#[test]
fn examples_run() {
    transform_basics::run_example().unwrap();
    convolution_algebra::run_example().unwrap();
    automorphisms::run_example().unwrap();
    check_operator::run_example().unwrap();
    recover_operator::run_example().unwrap();
    file_formats::run_example().unwrap();
    benchmark::run_example().unwrap();
}
