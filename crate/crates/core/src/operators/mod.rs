//! Spin-chain operators used to check prepared states, applied matrix-free
//! to [`StateVector`]s and materialized densely only on request.

mod hpoly;
mod spin;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

pub use hpoly::{h_poly, HPoly};
pub use spin::{two_site_coupling, SpinMatrices};

use crate::compositions::{enumerate_sector, CompositionSpec};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::simulator::StateVector;

/// Nonzero entries `(row, col, value)` of a small matrix.
#[derive(Clone, Debug, PartialEq)]
struct Sparse {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl Sparse {
    fn from_dense(m: &DMatrix<C64>) -> Self {
        let entries = (0..m.ncols())
            .flat_map(|c| (0..m.nrows()).map(move |r| (r, c)))
            .filter(|&(r, c)| m[(r, c)] != C64::new(0.0, 0.0))
            .map(|(r, c)| (r, c, m[(r, c)]))
            .collect();
        Sparse { dim: m.nrows(), entries }
    }
}

/// `Σ_t A_t + constant`, each `A_t` acting on one or two sites.
///
/// Two-site matrices use the pair index `μ_a + d μ_b` for sites `(a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    n: usize,
    d: usize,
    terms: Vec<(Vec<usize>, Sparse)>,
    constant: f64,
}

fn poly_of(x: &DMatrix<C64>, coeffs: &[f64]) -> DMatrix<C64> {
    let dim = x.nrows();
    coeffs
        .iter()
        .rev()
        .fold(DMatrix::zeros(dim, dim), |acc, &c| acc * x + DMatrix::identity(dim, dim) * C64::new(c, 0.0))
}

fn periodic_bonds(n: usize) -> Vec<Vec<usize>> {
    (1..=n).map(|i| vec![i, i % n + 1]).collect()
}

impl Operator {
    fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d < 2 {
            return Err(Error::ShapeMismatch(format!("register n = {n}, d = {d}")));
        }
        Ok(Operator { n, d, terms: Vec::new(), constant: 0.0 })
    }

    fn push(&mut self, sites: Vec<usize>, m: &DMatrix<C64>) {
        self.terms.push((sites, Sparse::from_dense(m)));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `Hψ`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.n() != self.n || psi.d() != self.d {
            return Err(Error::ShapeMismatch(format!(
                "operator on ({}, {}) applied to state on ({}, {})",
                self.n,
                self.d,
                psi.n(),
                psi.d()
            )));
        }
        let input = psi.amplitudes();
        let mut out: Vec<C64> = input.iter().map(|a| a * self.constant).collect();
        let stride = |r: usize| self.d.pow(r as u32 - 1);
        for (sites, m) in &self.terms {
            let local: Vec<usize> = sites.iter().map(|&r| stride(r)).collect();
            // local index -> offset inside the full register
            let offsets: Vec<usize> = (0..m.dim)
                .map(|mut idx| {
                    local.iter().fold(0, |acc, st| {
                        let digit = idx % self.d;
                        idx /= self.d;
                        acc + digit * st
                    })
                })
                .collect();
            let free: Vec<usize> = (1..=self.n).filter(|r| !sites.contains(r)).map(stride).collect();
            let mut digits = vec![0usize; free.len()];
            let mut base = 0usize;
            loop {
                for &(r, c, v) in &m.entries {
                    out[base + offsets[r]] += v * input[base + offsets[c]];
                }
                let mut p = 0;
                while p < free.len() {
                    digits[p] += 1;
                    base += free[p];
                    if digits[p] < self.d {
                        break;
                    }
                    base -= self.d * free[p];
                    digits[p] = 0;
                    p += 1;
                }
                if p == free.len() {
                    break;
                }
            }
        }
        StateVector::from_amplitudes(self.n, self.d, out)
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, psi: &StateVector) -> Result<C64> {
        let h_psi = self.apply(psi)?;
        Ok(psi.amplitudes().iter().zip(h_psi.amplitudes()).map(|(a, b)| a.conj() * b).sum())
    }

    /// The full `dⁿ × dⁿ` matrix.
    pub fn to_dense(&self, limits: &Limits) -> Result<DMatrix<C64>> {
        let dim = StateVector::zero_state_with(self.n, self.d, limits)?.amplitudes().len();
        let mut out = DMatrix::zeros(dim, dim);
        let mut basis = vec![C64::new(0.0, 0.0); dim];
        for c in 0..dim {
            basis[c] = C64::new(1.0, 0.0);
            let col = self.apply(&StateVector::from_amplitudes(self.n, self.d, basis.clone())?)?;
            out.set_column(c, &nalgebra::DVector::from_column_slice(col.amplitudes()));
            basis[c] = C64::new(0.0, 0.0);
        }
        Ok(out)
    }

    /// The block on the digit-sum `spec.k()` sector, in sorted ditstring order.
    pub fn sector_matrix(&self, spec: &CompositionSpec, limits: &Limits) -> Result<DMatrix<C64>> {
        if spec.n() != self.n || spec.d() != self.d {
            return Err(Error::ShapeMismatch(format!("operator on ({}, {}) vs sector {spec}", self.n, self.d)));
        }
        let basis = enumerate_sector(spec);
        let zero = StateVector::zero_state_with(self.n, self.d, limits)?;
        let index: Vec<usize> = basis.iter().map(|m| zero.encode(m)).collect::<Result<_>>()?;
        let mut out = DMatrix::zeros(basis.len(), basis.len());
        let mut amps = vec![C64::new(0.0, 0.0); zero.amplitudes().len()];
        for (c, &b) in index.iter().enumerate() {
            amps[b] = C64::new(1.0, 0.0);
            let col = self.apply(&StateVector::from_amplitudes(self.n, self.d, amps.clone())?)?;
            for (r, &row) in index.iter().enumerate() {
                out[(r, c)] = col.amplitudes()[row];
            }
            amps[b] = C64::new(0.0, 0.0);
        }
        Ok(out)
    }

    /// Ascending eigenvalues of the Hermitian sector block.
    pub fn sector_spectrum(&self, spec: &CompositionSpec, limits: &Limits) -> Result<Vec<f64>> {
        let m = self.sector_matrix(spec, limits)?;
        let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        Ok(values)
    }
}

/// `Σ_i h(S⃗_i · S⃗_{i+1}, s)` with `S⃗_{n+1} = S⃗_1`.
pub fn xxx_hamiltonian(n: usize, two_s: usize) -> Result<Operator> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("periodic chain needs n >= 2, got {n}")));
    }
    let bond = poly_of(&two_site_coupling(two_s), &h_poly(two_s).coeffs_f64());
    let mut op = Operator::new(n, two_s + 1)?;
    for sites in periodic_bonds(n) {
        op.push(sites, &bond);
    }
    Ok(op)
}

/// `Σ_i (½ x_i + ⅙ x_i² + ⅓)` on a periodic spin-1 chain.
pub fn aklt_hamiltonian(n: usize) -> Result<Operator> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("periodic chain needs n >= 2, got {n}")));
    }
    let bond = poly_of(&two_site_coupling(2), &[1.0 / 3.0, 0.5, 1.0 / 6.0]);
    let mut op = Operator::new(n, 3)?;
    for sites in periodic_bonds(n) {
        op.push(sites, &bond);
    }
    Ok(op)
}

/// `𝕊^z = Σ_i S^z_i`.
pub fn total_sz(n: usize, two_s: usize) -> Result<Operator> {
    let sz = SpinMatrices::new(two_s).sz;
    let mut op = Operator::new(n, two_s + 1)?;
    for i in 1..=n {
        op.push(vec![i], &sz);
    }
    Ok(op)
}

/// `𝕊⃗² = n s(s+1) + 2 Σ_{i<j} S⃗_i · S⃗_j`.
pub fn total_s2(n: usize, two_s: usize) -> Result<Operator> {
    let twice = two_site_coupling(two_s) * C64::new(2.0, 0.0);
    let s = two_s as f64 / 2.0;
    let mut op = Operator::new(n, two_s + 1)?;
    op.constant = n as f64 * s * (s + 1.0);
    for i in 1..=n {
        for j in i + 1..=n {
            op.push(vec![i, j], &twice);
        }
    }
    Ok(op)
}

/// `‖Hψ - Eψ‖ / ‖ψ‖`.
pub fn eigenstate_residual(h: &Operator, psi: &StateVector, energy: f64) -> Result<f64> {
    let h_psi = h.apply(psi)?;
    let norm = psi.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let diff: f64 =
        h_psi.amplitudes().iter().zip(psi.amplitudes()).map(|(a, b)| (a - b * energy).norm_sqr()).sum::<f64>().sqrt();
    Ok(diff / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &DMatrix<C64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn hermitian_and_symmetric() {
        for two_s in 1..=4 {
            for n in 2..=3 {
                let h = xxx_hamiltonian(n, two_s).unwrap().to_dense(&limits()).unwrap();
                let sz = total_sz(n, two_s).unwrap().to_dense(&limits()).unwrap();
                let s2 = total_s2(n, two_s).unwrap().to_dense(&limits()).unwrap();
                assert!(max_abs(&(&h - h.adjoint())) < 1e-12);
                assert!(max_abs(&(&h * &sz - &sz * &h)) < 1e-10);
                assert!(max_abs(&(&h * &s2 - &s2 * &h)) < 1e-10);
            }
        }
    }

    #[test]
    fn spin_half_is_heisenberg() {
        let n = 4;
        let h = xxx_hamiltonian(n, 1).unwrap().to_dense(&limits()).unwrap();
        let x = two_site_coupling(1);
        let mut direct = Operator::new(n, 2).unwrap();
        for sites in periodic_bonds(n) {
            direct.push(sites, &(&x * C64::new(2.0, 0.0)));
        }
        direct.constant = -(n as f64) / 2.0;
        assert!(max_abs(&(h - direct.to_dense(&limits()).unwrap())) < 1e-14);
    }

    #[test]
    fn two_sites_count_both_bonds() {
        let h = xxx_hamiltonian(2, 1).unwrap().to_dense(&limits()).unwrap();
        let bond = two_site_coupling(1) * C64::new(2.0, 0.0) - DMatrix::identity(4, 4) * C64::new(0.5, 0.0);
        assert!(max_abs(&(h - &bond * C64::new(2.0, 0.0))) < 1e-15);
    }

    #[test]
    fn polarized_state_has_zero_energy() {
        for two_s in 1..=4 {
            let psi = StateVector::zero_state(3, two_s + 1).unwrap();
            let h = xxx_hamiltonian(3, two_s).unwrap();
            assert!(eigenstate_residual(&h, &psi, 0.0).unwrap() < 1e-12);
        }
    }

    #[test]
    fn total_sz_is_diagonal_in_digit_sum() {
        let sz = total_sz(3, 2).unwrap();
        let zero = StateVector::zero_state(3, 3).unwrap();
        for b in 0..27 {
            let m = zero.decode(b);
            let mut amps = vec![C64::new(0.0, 0.0); 27];
            amps[b] = C64::new(1.0, 0.0);
            let psi = StateVector::from_amplitudes(3, 3, amps).unwrap();
            let e = 3.0 - m.digit_sum() as f64;
            assert!(eigenstate_residual(&sz, &psi, e).unwrap() < 1e-15);
        }
    }

    #[test]
    fn s2_is_positive() {
        let s2 = total_s2(3, 2).unwrap().to_dense(&limits()).unwrap();
        let min = SymmetricEigen::new(s2).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(min > -1e-10);
    }

    #[test]
    fn aklt_is_positive_semidefinite() {
        let h = aklt_hamiltonian(4).unwrap().to_dense(&limits()).unwrap();
        let min = SymmetricEigen::new(h).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(min > -1e-10 && min < 1e-10);
    }

    #[test]
    fn sector_block_matches_dense() {
        let op = xxx_hamiltonian(3, 2).unwrap();
        let spec = CompositionSpec::new(3, 2, 2).unwrap();
        let dense = op.to_dense(&limits()).unwrap();
        let block = op.sector_matrix(&spec, &limits()).unwrap();
        let zero = StateVector::zero_state(3, 3).unwrap();
        let basis: Vec<usize> = enumerate_sector(&spec).iter().map(|m| zero.encode(m).unwrap()).collect();
        for (r, &br) in basis.iter().enumerate() {
            for (c, &bc) in basis.iter().enumerate() {
                assert_eq!(block[(r, c)], dense[(br, bc)]);
            }
        }
        assert_eq!(op.sector_spectrum(&spec, &limits()).unwrap().len(), 6);
    }

    #[test]
    fn residual_of_random_state_is_large() {
        let h = xxx_hamiltonian(3, 1).unwrap();
        let amps: Vec<C64> = (0..8).map(|b| C64::new(((b * 7 + 3) % 5) as f64 - 2.0, 0.0)).collect();
        let psi = StateVector::from_amplitudes(3, 2, amps).unwrap();
        assert!(eigenstate_residual(&h, &psi, 0.0).unwrap() > 0.1);
        assert!(h.apply(&StateVector::zero_state(3, 3).unwrap()).is_err());
    }
}
