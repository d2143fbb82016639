//! Adjacency spectra of regular graphs and expansion verdicts.
//!
//! Eigenvalues come from a cyclic Jacobi sweep over the dense adjacency
//! matrix: rotations zero one off-diagonal pair at a time and provably
//! shrink the total off-diagonal mass. For a d-regular graph the top
//! eigenvalue is d; expansion quality is measured by
//! `lambda = max(lambda_2, |lambda_n|)`, the largest nontrivial eigenvalue
//! magnitude, and the verdict `d/lambda >= C` (plus `d >= d0`) decides
//! membership in the family we certify.

use thiserror::Error;

use crate::graph::Graph;

/// Default relative tolerance: off-diagonal Frobenius mass per unit of
/// total Frobenius norm at which the diagonal is declared converged.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default ceiling on dense eigensolves (n^2 memory, n^3 time).
pub const DEFAULT_MATRIX_CAP: usize = 2000;
/// Upper bound on full Jacobi sweeps before reporting non-convergence
/// (typical matrices converge in well under 20).
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix of order {n} exceeds the configured cap {cap}")]
    ResourceLimit { n: usize, cap: usize },
    #[error("graph is not regular: vertex {v} has degree {deg}, vertex 0 has degree {d0}")]
    NotRegular { v: usize, deg: usize, d0: usize },
    #[error("tolerance must be positive and finite, got {tol}")]
    BadTolerance { tol: f64 },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps: off-diagonal mass {off:e}")]
    NoConvergence { sweeps: usize, off: f64 },
}

/// Full spectrum of a regular graph, sorted descending, with the expansion
/// summary attached.
#[derive(Clone, Debug)]
pub struct SpectralProfile {
    pub n: usize,
    /// Common degree.
    pub d: usize,
    /// Eigenvalues of the adjacency matrix, descending.
    pub eigenvalues: Vec<f64>,
    /// max(lambda_2, |lambda_n|); `None` on a single vertex where no
    /// nontrivial eigenvalue exists.
    pub lambda: Option<f64>,
    /// d / lambda when lambda > 0.
    pub ratio: Option<f64>,
    /// Tolerance the eigensolve actually used.
    pub tol: f64,
}

/// Outcome of the (n, d, lambda) membership test.
#[derive(Clone, Debug)]
pub struct NdLambdaVerdict {
    pub verdict: bool,
    pub c: f64,
    pub d0: usize,
    pub profile: SpectralProfile,
}

/// Degree of a regular graph, or a [`SpectralError::NotRegular`] naming the
/// first offending vertex.
pub fn check_regular(g: &Graph) -> Result<usize, SpectralError> {
    let d0 = g.degree(0);
    for v in 1..g.vertex_count() {
        let deg = g.degree(v);
        if deg != d0 {
            return Err(SpectralError::NotRegular { v, deg, d0 });
        }
    }
    Ok(d0)
}

/// Eigenvalues and eigenvectors of a symmetric matrix (row-major, order n)
/// by cyclic Jacobi rotations. Returns values descending with matching
/// vectors (`vectors[i]` belongs to `values[i]`), each vector normalized.
///
/// Converges when the off-diagonal Frobenius mass drops below `tol` times
/// the total Frobenius norm.
pub fn eigen_symmetric(
    matrix: &[f64],
    n: usize,
    tol: f64,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), SpectralError> {
    assert_eq!(matrix.len(), n * n, "matrix must be square of order n");
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SpectralError::BadTolerance { tol });
    }
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frobenius = {
        let s: f64 = a.iter().map(|x| x * x).sum();
        s.sqrt()
    };
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while frobenius > 0.0 && off(&a) > tol * frobenius {
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(SpectralError::NoConvergence {
                sweeps: MAX_SWEEPS,
                off: off(&a),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                // Rotation angle chosen to annihilate a[p][q]; the guarded
                // form of t = tan(theta) avoids overflow when the diagonal
                // difference dwarfs the off-diagonal entry.
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                    s / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = arp - s * (arq + tau * arp);
                    a[p * n + r] = a[r * n + p];
                    a[r * n + q] = arq + s * (arp - tau * arq);
                    a[q * n + r] = a[r * n + q];
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + tau * vrp);
                    v[r * n + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j * n + j]
            .partial_cmp(&a[i * n + i])
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| (0..n).map(|r| v[r * n + i]).collect())
        .collect();
    Ok((values, vectors))
}

/// Spectral profile of a regular graph, under the default matrix cap.
pub fn spectrum(g: &Graph, tol: f64) -> Result<SpectralProfile, SpectralError> {
    spectrum_capped(g, tol, DEFAULT_MATRIX_CAP)
}

pub fn spectrum_capped(g: &Graph, tol: f64, cap: usize) -> Result<SpectralProfile, SpectralError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(SpectralError::ResourceLimit { n, cap });
    }
    let d = check_regular(g)?;
    let mut m = vec![0.0; n * n];
    for &(u, w) in g.edges() {
        m[u * n + w] = 1.0;
        m[w * n + u] = 1.0;
    }
    let (eigenvalues, _) = eigen_symmetric(&m, n, tol)?;
    let lambda = (n >= 2).then(|| {
        let l2 = eigenvalues[1];
        let ln = eigenvalues[n - 1].abs();
        l2.max(ln)
    });
    let ratio = match lambda {
        Some(l) if l > 0.0 => Some(d as f64 / l),
        _ => None,
    };
    Ok(SpectralProfile {
        n,
        d,
        eigenvalues,
        lambda,
        ratio,
        tol,
    })
}

/// Membership test for the expander family: d >= d0 and d/lambda >= C,
/// with comparisons slackened by the eigensolve tolerance.
pub fn is_ndlambda(
    g: &Graph,
    c: f64,
    d0: usize,
    tol: f64,
) -> Result<NdLambdaVerdict, SpectralError> {
    let profile = spectrum(g, tol)?;
    let degree_ok = profile.d >= d0;
    let ratio_ok = match (profile.lambda, profile.ratio) {
        // lambda <= 0 within tolerance: no nontrivial eigenvalue mass, the
        // ratio constraint is vacuous (complete-graph-like or trivial).
        (Some(l), _) if l <= tol * profile.d.max(1) as f64 => true,
        (_, Some(r)) => r >= c * (1.0 - tol),
        (None, _) => true, // single vertex
        _ => false,
    };
    Ok(NdLambdaVerdict {
        verdict: degree_ok && ratio_ok,
        c,
        d0,
        profile,
    })
}
