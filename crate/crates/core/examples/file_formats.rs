// Writing and reading the JSON files used by the `abfourier` binary.

use abelian_fourier::io::{read_json, write_json, FunctionFile, OperatorFile, ReportFile};
use abelian_fourier::{build_reference_operator, random_automorphism, recover, Form, GFunction, Group, RecoverOptions};

pub fn run_example() -> abelian_fourier::Result<()> {
    let dir = std::env::temp_dir().join(format!("abfourier-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let g = Group::new(&[2])?;
    let spectrum = GFunction::delta(&g, 0).fft_forward()?;
    let path = dir.join("spectrum.json");
    write_json(&path, &FunctionFile::from_function(&spectrum)?)?;
    println!("{}", std::fs::read_to_string(&path)?.trim());
    let back = read_json::<FunctionFile>(&path)?.to_function()?;
    println!("read back equal: {}", back == spectrum);

    let g = Group::new(&[3, 3])?;
    let op = build_reference_operator(&g, &random_automorphism(&g, 1)?, false, Form::U)?.with_captured_matrix(false)?;
    let op_path = dir.join("operator.json");
    write_json(&op_path, &OperatorFile::from_operator(&op)?)?;
    let loaded = read_json::<OperatorFile>(&op_path)?.to_operator()?;
    let report = recover(&loaded, &RecoverOptions::default())?;
    let report_path = dir.join("report.json");
    write_json(&report_path, &ReportFile::from_report(&report, None)?)?;
    let file = read_json::<ReportFile>(&report_path)?;
    println!("report: tool={} psi={:?} conjugation={}", file.tool, file.psi, file.conjugation);

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> abelian_fourier::Result<()> {
    run_example()
}
