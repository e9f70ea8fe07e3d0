//! Process matrices in the Pauli basis and their relation to circuit tensors.

use super::dense::{pauli_matrix, Matrix};
use super::{pauli_label, CircuitTensor, Signature, TensorError};
use crate::pauli::{mul, PauliString, SignedPauli};
use crate::poly::{Coefficient, Ring, FLOAT_TOL};

/// χ with 𝓜(ρ) = Σ χ^E_{E′} E′† ρ E; `get(E, E')` indexes Paulis by [`PauliString::index`].
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessMatrix {
    n: usize,
    chi: Matrix,
}

fn pauli_operator(p: &PauliString) -> Matrix {
    (0..p.n()).fold(Matrix::identity(Ring::Exact, 1), |m, q| {
        m.kron(&pauli_matrix(p.get(q)))
    })
}

impl ProcessMatrix {
    pub fn from_entries(n: usize, chi: Matrix) -> Result<Self, TensorError> {
        let d = 1usize << (2 * n);
        if chi.rows() != d || chi.cols() != d {
            return Err(TensorError::Dimension {
                got: chi.rows(),
                want: d,
            });
        }
        Ok(ProcessMatrix { n, chi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, e: &PauliString, e2: &PauliString) -> &Coefficient {
        self.chi.get(e.index() as usize, e2.index() as usize)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.chi
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.chi.approx_eq(&self.chi.adjoint(), tol)
    }
}

pub fn process_matrix_from_kraus(kraus: &[Matrix]) -> Result<ProcessMatrix, TensorError> {
    let d = kraus.first().map_or(1, Matrix::rows);
    let n = d.trailing_zeros() as usize;
    if !d.is_power_of_two() || kraus.iter().any(|a| a.rows() != d || a.cols() != d) {
        return Err(TensorError::NotSquare);
    }
    let ring = if kraus.iter().any(|a| a.ring() == Ring::Float) {
        Ring::Float
    } else {
        Ring::Exact
    };
    let inv = Coefficient::from_ratio(ring, 1, d as i64);
    let basis: Vec<Matrix> = PauliString::all(n).map(|p| pauli_operator(&p)).collect();
    let coeffs: Vec<Vec<Coefficient>> = kraus
        .iter()
        .map(|a| basis.iter().map(|p| p.inner(a).mul(&inv)).collect())
        .collect();
    let q = basis.len();
    let mut chi = Matrix::zeros(ring, q, q);
    for r in 0..q {
        for l in 0..q {
            let mut acc = Coefficient::zero(ring);
            for a in &coeffs {
                acc = acc.add(&a[l].mul(&a[r].conj()));
            }
            chi.set(r, l, acc.to_ring(ring));
        }
    }
    Ok(ProcessMatrix { n, chi })
}

/// Ψ(χ) with Ψ(e^E_{E′}) = (1/dim²) Σ_{F,F′} Tr(F† E F′ E′†) e^F_{F′}.
pub fn psi_transform(chi: &ProcessMatrix) -> Result<CircuitTensor, TensorError> {
    if !chi.is_hermitian(FLOAT_TOL) {
        return Err(TensorError::NotHermitian);
    }
    let n = chi.n;
    let d = 1i64 << n;
    let ring = chi.chi.ring();
    let inv = Coefficient::from_ratio(ring, 1, d);
    let paulis: Vec<PauliString> = PauliString::all(n).collect();
    let sig = Signature::qubits(n);
    let mut t = CircuitTensor::new(sig.clone(), sig, ring);
    for (ie, e) in paulis.iter().enumerate() {
        for (ie2, e2) in paulis.iter().enumerate() {
            let c = chi.chi.get(ie, ie2);
            if c.is_zero() {
                continue;
            }
            for f in &paulis {
                let f2 = e.xor(f)?.xor(e2)?;
                let prod = [f, e, &f2, e2]
                    .iter()
                    .map(|p| SignedPauli::positive((*p).clone()))
                    .try_fold(SignedPauli::identity(n), |acc, p| mul(&acc, &p))?;
                debug_assert!(prod.pauli.is_identity());
                let tr = Coefficient::gaussian(ring, 1, 0)
                    .mul(&phase_coeff(prod.phase.exponent(), ring));
                t.add_const(
                    pauli_label(f),
                    pauli_label(&f2),
                    c.mul(&tr).mul(&inv).to_ring(ring),
                )?;
            }
        }
    }
    Ok(t)
}

fn phase_coeff(e: u8, ring: Ring) -> Coefficient {
    match e {
        0 => Coefficient::gaussian(ring, 1, 0),
        1 => Coefficient::gaussian(ring, 0, 1),
        2 => Coefficient::gaussian(ring, -1, 0),
        _ => Coefficient::gaussian(ring, 0, -1),
    }
}

/// dim · Ψ(χ), which equals the channel's circuit tensor.
pub fn tensor_from_process_matrix(chi: &ProcessMatrix) -> Result<CircuitTensor, TensorError> {
    let psi = psi_transform(chi)?;
    let d = Coefficient::from_int(psi.ring(), 1 << chi.n);
    let mut t = CircuitTensor::new(psi.ins().clone(), psi.outs().clone(), psi.ring());
    for ((i, o), v) in psi.entries() {
        t.add_entry(i.clone(), o.clone(), v.scale(&d))?;
    }
    Ok(t)
}
