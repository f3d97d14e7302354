//! Tabulates the P = 3 formula against the published linear fit for
//! `m1 = m2 = 1` and varying `m3`.

use augdim::augda::{liliao_csv, liliao_grid};

fn main() {
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 5.0).collect();
    print!("{}", liliao_csv(&liliao_grid(&grid).unwrap()));
}
