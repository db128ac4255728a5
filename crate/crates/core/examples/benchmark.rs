// Fast transform against the direct sum over a few shapes. Pass sizes on
// the command line as comma-separated orders, e.g. `-- 64,64 1024`.

use abelian_fourier::{bench, Group};

pub fn run_shapes(shapes: &[Vec<usize>], reps: usize) -> abelian_fourier::Result<()> {
    println!("{:>16} {:>8} {:>12} {:>12} {:>9}", "orders", "size", "fft", "direct", "speedup");
    for orders in shapes {
        let r = bench::run(&Group::new(orders)?, reps, 0)?;
        let naive = r.naive_median.map_or("-".into(), |d| format!("{d:.2?}"));
        let speedup = r.speedup().map_or("-".into(), |s| format!("{s:.0}x"));
        println!(
            "{:>16} {:>8} {:>12} {:>12} {:>9}",
            format!("{orders:?}"),
            r.size,
            format!("{:.2?}", r.fft_median),
            naive,
            speedup
        );
    }
    Ok(())
}

pub fn run_example() -> abelian_fourier::Result<()> {
    run_shapes(&[vec![64], vec![97], vec![8, 9, 5], vec![2; 8]], 3)
}

#[allow(dead_code)]
fn main() -> abelian_fourier::Result<()> {
    let shapes: Vec<Vec<usize>> = std::env::args()
        .skip(1)
        .map(|a| a.split(',').map(|n| n.trim().parse().expect("order")).collect())
        .collect();
    if shapes.is_empty() {
        run_shapes(&[vec![4096], vec![64, 64], vec![1 << 18], vec![1009]], 5)
    } else {
        run_shapes(&shapes, 5)
    }
}
