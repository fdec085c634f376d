//! Real symmetric matrices with the PSD cone and `e = I`.
//!
//! All decisions on this backend are algebraic plus tolerance, never exact:
//! verdicts come from eigenvalues under the 1e−9 band.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{RECON_TOL, SPECTRAL_TOL};
use crate::space::{Decision, Exactness, Tri};

/// Dense symmetric matrix; only the upper triangle is stored, so symmetry is
/// exact by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    side: usize,
    /// row-major upper triangle including the diagonal
    upper: Vec<f64>,
}

fn tri_len(side: usize) -> usize {
    side * (side + 1) / 2
}

impl SymMatrix {
    pub fn zero(side: usize) -> SymMatrix {
        SymMatrix { side, upper: vec![0.0; tri_len(side)] }
    }

    pub fn identity(side: usize) -> SymMatrix {
        let mut m = SymMatrix::zero(side);
        for i in 0..side {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> SymMatrix {
        let mut m = SymMatrix::zero(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Build from dense rows; entries are symmetrized, and a symmetry defect
    /// above working precision is rejected.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<SymMatrix> {
        let side = rows.len();
        if rows.iter().any(|r| r.len() != side) {
            return Err(Error::Parse("matrix rows must form a square".into()));
        }
        let mut scale: f64 = 1.0;
        for r in rows {
            for &x in r {
                if !x.is_finite() {
                    return Err(Error::Parse("matrix entries must be finite".into()));
                }
                scale = scale.max(x.abs());
            }
        }
        let mut m = SymMatrix::zero(side);
        for i in 0..side {
            for j in i..side {
                if (rows[i][j] - rows[j][i]).abs() > 1e-9 * scale {
                    return Err(Error::Validation {
                        reason: format!("matrix not symmetric at ({i},{j})"),
                    });
                }
                m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
            }
        }
        Ok(m)
    }

    pub fn from_dmatrix(d: &DMatrix<f64>) -> SymMatrix {
        let side = d.nrows();
        let mut m = SymMatrix::zero(side);
        for i in 0..side {
            for j in i..side {
                m.set(i, j, 0.5 * (d[(i, j)] + d[(j, i)]));
            }
        }
        m
    }

    pub fn side(&self) -> usize {
        self.side
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.side - i * (i + 1) / 2 + j
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.upper[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(|&x| x == 0.0)
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.side, other.side);
        SymMatrix {
            side: self.side,
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix { side: self.side, upper: self.upper.iter().map(|x| x * s).collect() }
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.side, self.side, |i, j| self.get(i, j))
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .to_dmatrix()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Operator norm = largest absolute eigenvalue.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues().iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    pub fn is_psd(&self, tol: f64) -> Tri {
        let slack = self.min_eigenvalue();
        if slack > tol {
            Tri::True
        } else if slack < -tol {
            Tri::False
        } else if self.is_zero() {
            Tri::True
        } else {
            Tri::Undecided
        }
    }
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors (columns).
///
/// The reconstruction `Q Λ Qᵀ` is checked against the input to within
/// `1e−10 · ‖m‖` in operator norm.
pub fn spectral_decompose(m: &SymMatrix) -> (Vec<f64>, DMatrix<f64>) {
    let se = nalgebra::SymmetricEigen::new(m.to_dmatrix());
    let mut order: Vec<usize> = (0..m.side()).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.side(), m.side(), |r, c| se.eigenvectors[(r, order[c])]);
    let lam = DMatrix::from_diagonal(&DVector::from_vec(values.clone()));
    let recon = &vectors * lam * vectors.transpose();
    let defect = SymMatrix::from_dmatrix(&(recon - m.to_dmatrix())).spectral_radius();
    debug_assert!(
        defect <= RECON_TOL * m.spectral_radius().max(1.0),
        "eigendecomposition reconstruction defect {defect}"
    );
    (values, vectors)
}

/// `|m| = Σ |λ_i| v_i v_iᵀ`. Dominates `±m` in the PSD order.
pub fn abs_element(m: &SymMatrix) -> SymMatrix {
    let (values, vectors) = spectral_decompose(m);
    let lam = DMatrix::from_diagonal(&DVector::from_vec(values.iter().map(|x| x.abs()).collect()));
    SymMatrix::from_dmatrix(&(&vectors * lam * vectors.transpose()))
}

/// PSD square root. Eigenvalues below the reconstruction noise floor are
/// clamped to exact zero first: the square root would otherwise amplify
/// O(1e−17) spectral noise into O(1e−9) leakage outside the range of `m`.
pub fn sqrt_psd(m: &SymMatrix) -> SymMatrix {
    let (values, vectors) = spectral_decompose(m);
    let floor = RECON_TOL * values.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
    let lam = DMatrix::from_diagonal(&DVector::from_vec(
        values.iter().map(|&x| if x <= floor { 0.0 } else { x.sqrt() }).collect(),
    ));
    SymMatrix::from_dmatrix(&(&vectors * lam * vectors.transpose()))
}

/// Operator norm of a general (not necessarily symmetric) product.
pub fn operator_norm(d: &DMatrix<f64>) -> f64 {
    let gram = SymMatrix::from_dmatrix(&(d.transpose() * d));
    gram.eigenvalues().last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Is `u` a projection? Two spectral routes, both recorded: `‖u² − u‖ ≤ 1e−9`
/// and "all eigenvalues within 1e−6 of {0, 1}". An `Undecided` error reports
/// the band when the routes disagree.
pub fn is_projection(u: &SymMatrix) -> Result<Decision> {
    require_psd(u, "is_projection")?;
    let d = u.to_dmatrix();
    let defect = operator_norm(&(&d * &d - &d));
    let idempotent = defect <= SPECTRAL_TOL;
    let spectral = u
        .eigenvalues()
        .iter()
        .all(|&l| l.abs() <= 1e-6 || (l - 1.0).abs() <= 1e-6);
    if idempotent != spectral {
        return Err(Error::Undecided { slack: defect, tol: SPECTRAL_TOL });
    }
    Ok(Decision::new(idempotent)
        .with_route("idempotent", idempotent, Exactness::Toleranced)
        .with_route("spectrum-in-01", spectral, Exactness::Toleranced)
        .with_tolerance(SPECTRAL_TOL))
}

/// Does `ab = 0` hold, up to `1e−9 · max(1, ‖a‖‖b‖)`?
pub fn product_vanishes(a: &SymMatrix, b: &SymMatrix) -> Result<Decision> {
    require_psd(a, "product_vanishes")?;
    require_psd(b, "product_vanishes")?;
    let prod = a.to_dmatrix() * b.to_dmatrix();
    let bound = SPECTRAL_TOL * (a.spectral_radius() * b.spectral_radius()).max(1.0);
    let holds = operator_norm(&prod) <= bound;
    Ok(Decision::new(holds)
        .with_route("product-norm", holds, Exactness::Toleranced)
        .with_tolerance(SPECTRAL_TOL))
}

fn require_psd(m: &SymMatrix, op: &str) -> Result<()> {
    match m.is_psd(SPECTRAL_TOL) {
        Tri::True => Ok(()),
        Tri::Undecided => Ok(()), // boundary matrices are fine for these ops
        Tri::False => Err(Error::Precondition(format!(
            "{op} requires a PSD argument (min eigenvalue {})",
            m.min_eigenvalue()
        ))),
    }
}

/// Random symmetric matrix with entries uniform in [−1, 1].
pub fn random_symmetric(rng: &mut ChaCha8Rng, side: usize) -> SymMatrix {
    let mut m = SymMatrix::zero(side);
    for i in 0..side {
        for j in i..side {
            m.set(i, j, rng.random_range(-1.0..1.0));
        }
    }
    m
}

/// Samples of the order interval `[−u, u]` by congruence: each sample is
/// `u^{1/2} w u^{1/2}` with a random symmetric `‖w‖ ≤ 1`, hence lies in
/// `[−u, u]` by construction. Deterministic per seed.
pub fn sample_interval(u: &SymMatrix, count: usize, seed: u64) -> Result<Vec<SymMatrix>> {
    require_psd(u, "sample_interval")?;
    let root = sqrt_psd(u);
    let rd = root.to_dmatrix();
    let mut out = Vec::with_capacity(count);
    for trial in 0..count {
        let mut rng = crate::oracle::trial_rng(seed, trial as u64);
        let g = random_symmetric(&mut rng, u.side());
        let r = g.spectral_radius();
        // the scale stays off zero so critical norm ratios remain bounded
        let t: f64 = rng.random_range(0.0625..1.0);
        let w = if r == 0.0 { g } else { g.scale(t / r) };
        out.push(SymMatrix::from_dmatrix(&(&rd * w.to_dmatrix() * &rd)));
    }
    Ok(out)
}

/// Deterministic interval candidates that isolate the eigendirections of
/// `u`: the matrices `λ_j q_j q_jᵀ` together with `±u` itself. These lie in
/// `[−u, u]` and give the falsifiers sharp directions to probe.
pub fn interval_probes(u: &SymMatrix) -> Vec<SymMatrix> {
    let (values, vectors) = spectral_decompose(u);
    let mut out = vec![u.clone(), u.scale(-1.0)];
    for (j, &l) in values.iter().enumerate() {
        if l.abs() <= SPECTRAL_TOL {
            continue;
        }
        let q = vectors.column(j);
        let outer = DMatrix::from_fn(u.side(), u.side(), |r, c| l * q[r] * q[c]);
        let probe = SymMatrix::from_dmatrix(&outer);
        out.push(probe.scale(-1.0));
        out.push(probe);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_decompose_examples() {
        let (v, _) = spectral_decompose(&SymMatrix::diagonal(&[1.0, 0.0]));
        assert!((v[0] - 1.0).abs() < 1e-12 && v[1].abs() < 1e-12);
        let mut flip = SymMatrix::zero(2);
        flip.set(0, 1, 1.0);
        let (v, _) = spectral_decompose(&flip);
        assert!((v[0] - 1.0).abs() < 1e-12 && (v[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn abs_element_examples() {
        let m = abs_element(&SymMatrix::diagonal(&[1.0, -1.0]));
        assert!(m.sub(&SymMatrix::identity(2)).spectral_radius() < 1e-12);
        let mut flip = SymMatrix::zero(2);
        flip.set(0, 1, 1.0);
        let m = abs_element(&flip);
        assert!(m.sub(&SymMatrix::identity(2)).spectral_radius() < 1e-10);
        // PSD input is its own absolute value
        let p = SymMatrix::diagonal(&[2.0, 0.5]);
        assert!(abs_element(&p).sub(&p).spectral_radius() < 1e-10);
    }

    #[test]
    fn abs_dominates_plus_minus() {
        let mut rng = crate::oracle::trial_rng(11, 0);
        for _ in 0..50 {
            let m = random_symmetric(&mut rng, 4);
            let a = abs_element(&m);
            assert!(a.sub(&m).min_eigenvalue() >= -SPECTRAL_TOL);
            assert!(a.add(&m).min_eigenvalue() >= -SPECTRAL_TOL);
        }
    }

    #[test]
    fn projection_detection() {
        assert!(is_projection(&SymMatrix::diagonal(&[1.0, 1.0, 0.0])).unwrap().holds);
        assert!(!is_projection(&SymMatrix::diagonal(&[1.0, 0.5])).unwrap().holds);
        assert!(is_projection(&SymMatrix::diagonal(&[-0.5, 0.5])).is_err());
    }

    #[test]
    fn conjugated_projection_stays_projection() {
        // rotate diag(1,0) by an explicit rotation
        let c = (0.3f64).cos();
        let s = (0.3f64).sin();
        let q = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        let p = &q * DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]) * q.transpose();
        assert!(is_projection(&SymMatrix::from_dmatrix(&p)).unwrap().holds);
    }

    #[test]
    fn product_vanishing() {
        let a = SymMatrix::diagonal(&[1.0, 0.0]);
        let b = SymMatrix::diagonal(&[0.0, 1.0]);
        assert!(product_vanishes(&a, &b).unwrap().holds);
        let c = SymMatrix::diagonal(&[1.0, 1.0]);
        assert!(!product_vanishes(&a, &c).unwrap().holds);
    }

    #[test]
    fn interval_samples_stay_inside() {
        let u = SymMatrix::diagonal(&[1.0, 0.0]);
        for v in sample_interval(&u, 32, 7).unwrap() {
            // congruence kills everything outside the (1,1) entry
            assert!(v.get(0, 1).abs() < 1e-12 && v.get(1, 1).abs() < 1e-12);
            assert!(u.sub(&v).min_eigenvalue() >= -SPECTRAL_TOL);
            assert!(u.add(&v).min_eigenvalue() >= -SPECTRAL_TOL);
        }
        let z = SymMatrix::zero(3);
        for v in sample_interval(&z, 4, 1).unwrap() {
            assert!(v.is_zero());
        }
        assert!(sample_interval(&SymMatrix::identity(2), 0, 1).unwrap().is_empty());
    }

    #[test]
    fn samples_deterministic_per_seed() {
        let u = SymMatrix::identity(3);
        let a = sample_interval(&u, 5, 42).unwrap();
        let b = sample_interval(&u, 5, 42).unwrap();
        assert_eq!(a, b);
        let c = sample_interval(&u, 5, 43).unwrap();
        assert_ne!(a, c);
    }
}
