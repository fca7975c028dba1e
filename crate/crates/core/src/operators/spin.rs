use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Spin-s matrices in the basis `|μ⟩`, `μ = 0 … 2s`, with `S^z|μ⟩ = (s - μ)|μ⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinMatrices {
    pub two_s: usize,
    pub sx: DMatrix<C64>,
    pub sy: DMatrix<C64>,
    pub sz: DMatrix<C64>,
    /// Raises `S^z`, i.e. maps `|μ⟩` to `|μ-1⟩`.
    pub splus: DMatrix<C64>,
    pub sminus: DMatrix<C64>,
}

impl SpinMatrices {
    pub fn new(two_s: usize) -> Self {
        let d = two_s + 1;
        let s = two_s as f64 / 2.0;
        let mut splus = DMatrix::<C64>::zeros(d, d);
        for mu in 1..d {
            let m = s - mu as f64;
            splus[(mu - 1, mu)] = C64::new((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
        let sminus = splus.adjoint();
        let sz = DMatrix::from_fn(d, d, |r, c| if r == c { C64::new(s - r as f64, 0.0) } else { C64::new(0.0, 0.0) });
        let sx = (&splus + &sminus) * C64::new(0.5, 0.0);
        let sy = (&splus - &sminus) * C64::new(0.0, -0.5);
        SpinMatrices { two_s, sx, sy, sz, splus, sminus }
    }

    pub fn d(&self) -> usize {
        self.two_s + 1
    }

    pub fn s(&self) -> f64 {
        self.two_s as f64 / 2.0
    }
}

/// `a ⊗ b` on the pair space with index `μ_a + d μ_b`.
pub(crate) fn pair_kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    // nalgebra's kron puts its left factor on the slow index
    b.kronecker(a)
}

/// `x = S⃗ ⊗ S⃗` on two sites of spin `two_s / 2`.
pub fn two_site_coupling(two_s: usize) -> DMatrix<C64> {
    let m = SpinMatrices::new(two_s);
    pair_kron(&m.sx, &m.sx) + pair_kron(&m.sy, &m.sy) + pair_kron(&m.sz, &m.sz)
}
