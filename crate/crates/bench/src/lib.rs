//! Inputs shared by the engine benchmarks.

use cproj_core::catalog::{builtin, ModelSpec};
use cproj_core::symsolve::AnsatzSpace;
use cproj_core::{rat, ExactMatrix, Rational};

/// A catalog model with its acceptance ansatz.
pub fn model_with_space(name: &str, n: usize) -> (ModelSpec, AnsatzSpace) {
    let m = builtin(name, n).expect("catalog model");
    let space = m.ansatz.space(&m.chart, None).expect("ansatz");
    (m, space)
}

/// Deterministic `rows × cols` matrix of small rationals with rank deficiency
/// from repeated row combinations.
pub fn banded_matrix(rows: usize, cols: usize) -> ExactMatrix<Rational> {
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        let row: Vec<Rational> = (0..cols)
            .map(|c| {
                let k = ((r * 7 + c * 3) % 11) as i64 - 5;
                if (c + r) % 4 == 0 {
                    rat(0, 1)
                } else {
                    rat(k, (c % 3 + 1) as i64)
                }
            })
            .collect();
        out.push(row);
    }
    for r in (2..rows).step_by(3) {
        out[r] = out[r - 1].iter().zip(&out[r - 2]).map(|(a, b)| a + b).collect();
    }
    ExactMatrix::from_rows(cols, out).expect("rectangular")
}
