use opmeans_cli::matrix_file::{parse_matrices, print_matrices, NamedMatrix};
use opmeans_core::gen::RngState;
use opmeans_core::linalg::{Complex, Matrix};
use proptest::prelude::*;

fn bits(m: &Matrix) -> Vec<(u64, u64)> {
    m.as_slice()
        .iter()
        .map(|z| (z.re.to_bits(), z.im.to_bits()))
        .collect()
}

/// Finite doubles across the whole exponent range, signed zeros included.
fn wild_real(rng: &mut RngState) -> f64 {
    match rng.below(8) {
        0 => 0.0,
        1 => -0.0,
        2 => rng.uniform(-1.0, 1.0),
        _ => loop {
            let x = f64::from_bits(rng.next_u64());
            if x.is_finite() {
                break x;
            }
        },
    }
}

fn wild_matrix(dim: usize, rng: &mut RngState) -> Matrix {
    let data = (0..dim * dim)
        .map(|_| Complex::new(wild_real(rng), wild_real(rng)))
        .collect();
    Matrix::from_vec(dim, dim, data).unwrap()
}

#[test]
fn thousand_matrices_round_trip_bitwise() {
    let mut rng = RngState::new(77);
    for trial in 0..1000 {
        let batch: Vec<NamedMatrix> = (0..1 + trial % 3)
            .map(|k| {
                let m = wild_matrix(1 + rng.below(8), &mut rng);
                if k % 2 == 0 {
                    NamedMatrix::new(format!("m{trial}_{k}"), m)
                } else {
                    NamedMatrix::unnamed(m)
                }
            })
            .collect();
        let text = print_matrices(&batch);
        let back = parse_matrices(&text).unwrap_or_else(|e| panic!("trial {trial}: {e}\n{text}"));
        assert_eq!(back.len(), batch.len());
        for (x, y) in batch.iter().zip(&back) {
            assert_eq!(x.name, y.name);
            assert_eq!(bits(&x.matrix), bits(&y.matrix), "trial {trial}\n{text}");
        }
    }
}

proptest! {
    #[test]
    fn arbitrary_finite_entries_round_trip(
        dim in 1usize..5,
        raw in prop::collection::vec((any::<f64>(), any::<f64>()), 16),
    ) {
        let data: Vec<Complex> = raw
            .iter()
            .take(dim * dim)
            .map(|&(re, im)| Complex::new(
                if re.is_finite() { re } else { 1.0 },
                if im.is_finite() { im } else { -0.0 },
            ))
            .collect();
        let m = Matrix::from_vec(dim, dim, data).unwrap();
        let back = parse_matrices(&print_matrices(&[NamedMatrix::unnamed(m.clone())])).unwrap();
        prop_assert_eq!(bits(&back[0].matrix), bits(&m));
    }
}
