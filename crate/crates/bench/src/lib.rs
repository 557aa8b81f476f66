//! Input builders shared by the benchmark targets.

use sudokurand::{phi, random_pi, PiMatrix, RandomSource, SPermMatrix, SudokuMatrix};

pub fn sample_pi(n: u32, seed: u64) -> PiMatrix {
    let mut src = RandomSource::new(seed);
    random_pi(&mut src, n).expect("n >= 1")
}

pub fn sample_sperm(n: u32, seed: u64) -> SPermMatrix {
    phi(&sample_pi(n, seed))
}

pub fn cyclic_sudoku_cells(n: u32) -> Vec<u32> {
    SudokuMatrix::cyclic(n).expect("n >= 1").cells().to_vec()
}
