//! Conversion of a frame presentation (vector frame, constant `J` in the
//! frame, connection 1-forms) into coordinate Christoffel symbols.

use super::{invert, AlmostComplex, Chart, Connection, PolyTensor, VectorField};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Scalar};

/// Frame data. `omega[a, b, c]` is `ω^a_{bc}` with `∇_{e_c} e_b = ω^a_{bc} e_a`.
#[derive(Clone, Debug)]
pub struct FrameData {
    pub vectors: Vec<VectorField>,
    /// `J e_b = Σ_a j[a][b] e_a`.
    pub j: Vec<Vec<Scalar>>,
    pub omega: PolyTensor,
}

impl FrameData {
    /// Fills `∇(J e_b) = J ∇e_b` for every `b` in `given`.
    pub fn complete_with_j(&mut self, given: &[usize]) -> Result<()> {
        let m = self.vectors.len();
        for &b in given {
            // J e_b = sign * e_d
            let nz: Vec<usize> = (0..m).filter(|&a| !self.j[a][b].is_zero()).collect();
            let [d] = nz.as_slice() else {
                return Err(Error::InvalidModel(format!("J e_{} is not a single frame vector", b + 1)));
            };
            let sign = self.j[*d][b].clone();
            if sign != Scalar::one() && sign != Scalar::from_int(-1) {
                return Err(Error::InvalidModel("frame J entries must be ±1".into()));
            }
            for c in 0..m {
                for a in 0..m {
                    let mut acc = LaurentPoly::zero(self.omega.ring());
                    for e in 0..m {
                        if !self.j[a][e].is_zero() {
                            acc = &acc + &self.omega.get(&[e, b, c]).scale(&self.j[a][e]);
                        }
                    }
                    self.omega.set(&[a, *d, c], acc.scale(&sign));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct FrameResult {
    pub connection: Connection,
    pub j: AlmostComplex,
    /// Coframe `θ^a_k` (rows are the dual 1-forms).
    pub coframe: Vec<Vec<LaurentPoly>>,
    /// Recomputing `∇e_b` in the frame reproduced the input.
    pub round_trip: bool,
}

pub fn frame_to_coordinates(chart: &Chart, frame: &FrameData) -> Result<FrameResult> {
    let m = chart.dim();
    if frame.vectors.len() != m || frame.j.len() != m {
        return Err(Error::Dimension("frame size differs from chart dimension".into()));
    }
    let ring = chart.ring().clone();
    // e[i][a] = E^i_a
    let e: Vec<Vec<LaurentPoly>> = (0..m).map(|i| (0..m).map(|a| frame.vectors[a].0[i].clone()).collect()).collect();
    let theta = invert(&e).map_err(|err| match err {
        Error::NotAUnit(_) | Error::DivisionByZero => Error::SingularFrame,
        other => other,
    })?;
    let mut gamma = PolyTensor::zeros(&ring, m, 1, 2);
    for i in 0..m {
        for jj in 0..m {
            for k in 0..m {
                let mut inner = vec![LaurentPoly::zero(&ring); m];
                for (a, slot) in inner.iter_mut().enumerate() {
                    let mut acc = theta[a][k].derivative_idx(jj);
                    for b in 0..m {
                        if theta[b][k].is_zero() {
                            continue;
                        }
                        for c in 0..m {
                            if let Some(w) = frame.omega.entry(&[a, b, c]) {
                                if !theta[c][jj].is_zero() {
                                    acc = &acc + &(&(&theta[b][k] * &theta[c][jj]) * w);
                                }
                            }
                        }
                    }
                    *slot = acc;
                }
                let mut val = LaurentPoly::zero(&ring);
                for a in 0..m {
                    if !e[i][a].is_zero() && !inner[a].is_zero() {
                        val = &val + &(&e[i][a] * &inner[a]);
                    }
                }
                gamma.set(&[i, jj, k], val);
            }
        }
    }
    let mut jt = PolyTensor::zeros(&ring, m, 1, 1);
    for i in 0..m {
        for jj in 0..m {
            let mut acc = LaurentPoly::zero(&ring);
            for a in 0..m {
                for b in 0..m {
                    if !frame.j[a][b].is_zero() {
                        acc = &acc + &(&e[i][a] * &theta[b][jj]).scale(&frame.j[a][b]);
                    }
                }
            }
            jt.set(&[i, jj], acc);
        }
    }
    let j = AlmostComplex::new(jt)?;
    let connection = Connection::new(gamma)?;
    let round_trip = frame_connection(&connection, frame, &theta) == frame.omega;
    Ok(FrameResult {
        connection,
        j,
        coframe: theta,
        round_trip,
    })
}

/// `ω^a_{bc} = θ^a(∇_{e_c} e_b)` recomputed from coordinate symbols.
fn frame_connection(conn: &Connection, frame: &FrameData, theta: &[Vec<LaurentPoly>]) -> PolyTensor {
    let m = conn.dim();
    let ring = conn.symbols().ring().clone();
    let mut out = PolyTensor::zeros(&ring, m, 1, 2);
    for b in 0..m {
        for c in 0..m {
            let ec = &frame.vectors[c].0;
            let eb = &frame.vectors[b].0;
            let mut w = vec![LaurentPoly::zero(&ring); m];
            for (i, wi) in w.iter_mut().enumerate() {
                let mut acc = LaurentPoly::zero(&ring);
                for jj in 0..m {
                    if ec[jj].is_zero() {
                        continue;
                    }
                    let mut inner = eb[i].derivative_idx(jj);
                    for k in 0..m {
                        if !eb[k].is_zero() {
                            inner = &inner + &(&conn.get(i, jj, k) * &eb[k]);
                        }
                    }
                    acc = &acc + &(&ec[jj] * &inner);
                }
                *wi = acc;
            }
            for a in 0..m {
                let mut acc = LaurentPoly::zero(&ring);
                for i in 0..m {
                    acc = &acc + &(&theta[a][i] * &w[i]);
                }
                out.set(&[a, b, c], acc);
            }
        }
    }
    out
}

/// `⟨θ^a, e_b⟩` for explicitly given coframe rows.
pub fn pairing(coframe: &[Vec<LaurentPoly>], vectors: &[VectorField]) -> Vec<Vec<LaurentPoly>> {
    coframe
        .iter()
        .map(|row| {
            vectors
                .iter()
                .map(|v| {
                    row.iter()
                        .zip(&v.0)
                        .fold(LaurentPoly::zero(v.0[0].ring()), |acc, (a, b)| &acc + &(a * b))
                })
                .collect()
        })
        .collect()
}
