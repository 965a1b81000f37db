//! Quivers, dimension vectors, quiver representations, and the dictionary
//! between quiver representations and path-algebra representations in
//! Mat_n via the block construction on orthogonal idempotents.

use crate::azumaya::{idempotent_right_ideals, matrix_algebra_sca, StructureConstantAlgebra};
use crate::exactfield::Field;
use crate::linalg::{self, Matrix};
use crate::matrep::{is_schur, MatrixRep};
use crate::ncpoly::path_algebra;
use crate::{Error, Result};

/// Finite directed graph; loops and multiple arrows allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &arrows {
            if s >= vertices || t >= vertices {
                return Err(Error::InvalidInput(format!(
                    "arrow ({s}, {t}) out of range for {vertices} vertices"
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
}

/// Vertex-space dimensions of a quiver representation.
pub type DimVector = Vec<usize>;

/// Vector spaces per vertex and one matrix per arrow, of shape
/// (target dimension) x (source dimension).
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep<F: Field> {
    field: F,
    quiver: Quiver,
    dims: DimVector,
    maps: Vec<Matrix<F::Elem>>,
}

impl<F: Field> QuiverRep<F> {
    pub fn new(field: F, quiver: Quiver, dims: DimVector, maps: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (k, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::DimensionMismatch(format!(
                    "map {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(QuiverRep {
            field,
            quiver,
            dims,
            maps,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<F::Elem>] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for &d in dims {
        off.push(acc);
        acc += d;
    }
    off.push(acc);
    off
}

/// Block construction: e_i goes to the projection onto the i-th summand,
/// f_k to its map placed in block (target, source).
pub fn quiver_to_matrep<F: Field>(qr: &QuiverRep<F>) -> Result<MatrixRep<F>> {
    let n = qr.total_dim();
    if n == 0 {
        return Err(Error::ZeroTotalDimension);
    }
    let f = qr.field.clone();
    let off = offsets(&qr.dims);
    let v = qr.quiver.vertex_count();
    let mut images = Vec::new();
    for i in 0..v {
        images.push(Matrix::from_fn(n, n, |r, c| {
            if r == c && r >= off[i] && r < off[i + 1] {
                f.one()
            } else {
                f.zero()
            }
        }));
    }
    for (&(s, t), m) in qr.quiver.arrows().iter().zip(&qr.maps) {
        images.push(Matrix::from_fn(n, n, |r, c| {
            if r >= off[t] && r < off[t + 1] && c >= off[s] && c < off[s + 1] {
                m.at(r - off[t], c - off[s]).clone()
            } else {
                f.zero()
            }
        }));
    }
    let pres = path_algebra(&qr.quiver)?;
    MatrixRep::new(pres, f, n, images)
}

/// Inverse direction: from a path-algebra representation, recover the
/// dimension vector, the arrow maps, and the change of basis adapting the
/// decomposition.  The returned matrix C satisfies
/// C^{-1} rho(g) C = block form for every generator.
pub fn matrep_to_quiver<F: Field>(
    q: &Quiver,
    rep: &MatrixRep<F>,
) -> Result<(QuiverRep<F>, Matrix<F::Elem>)> {
    let f = rep.field().clone();
    let n = rep.degree();
    let v = q.vertex_count();
    let expected = path_algebra(q)?;
    if rep.presentation() != &expected {
        return Err(Error::NotPathAlgebraRep(
            "presentation is not the path algebra of the given quiver".into(),
        ));
    }
    // column space bases of the idempotent images
    let mut dims = Vec::with_capacity(v);
    let mut columns: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    for i in 0..v {
        let e = &rep.images()[i];
        let mut w = e.clone();
        let pivots = linalg::rref(&f, &mut w);
        dims.push(pivots.len());
        for &pc in &pivots {
            columns.push((0..n).map(|r| e.at(r, pc).clone()).collect());
        }
    }
    if columns.len() != n {
        return Err(Error::NotPathAlgebraRep(format!(
            "idempotent ranks sum to {}, not the degree {n}",
            columns.len()
        )));
    }
    let c = Matrix::from_fn(n, n, |r, k| columns[k][r].clone());
    let cinv = linalg::inverse(&f, &c).ok_or_else(|| {
        Error::NotPathAlgebraRep("adapted basis is not invertible".into())
    })?;
    let off = offsets(&dims);
    let mut maps = Vec::new();
    for (k, &(s, t)) in q.arrows().iter().enumerate() {
        let img = &rep.images()[v + k];
        let block = linalg::mul(&f, &cinv, &linalg::mul(&f, img, &c));
        // outside the (target, source) block everything must vanish
        for r in 0..n {
            for cc in 0..n {
                let inside =
                    r >= off[t] && r < off[t + 1] && cc >= off[s] && cc < off[s + 1];
                if !inside && !f.is_zero(block.at(r, cc)) {
                    return Err(Error::NotPathAlgebraRep(format!(
                        "arrow {k} does not respect the idempotent decomposition"
                    )));
                }
            }
        }
        maps.push(Matrix::from_fn(dims[t], dims[s], |r, cc| {
            block.at(off[t] + r, off[s] + cc).clone()
        }));
    }
    let qr = QuiverRep::new(f, q.clone(), dims, maps)?;
    Ok((qr, c))
}

/// Schur test for a quiver representation, through the matrix picture:
/// the commutant of the path-algebra representation is the endomorphism
/// ring of the quiver representation.
pub fn is_schur_quiver<F: Field>(qr: &QuiverRep<F>) -> Result<bool> {
    let rep = quiver_to_matrep(qr)?;
    Ok(is_schur(&rep))
}

/// Dimensions of the right ideals e_i * A.
pub fn right_ideal_dims<F: Field>(
    alg: &StructureConstantAlgebra<F>,
    idempotents: &[Vec<F::Elem>],
) -> Result<Vec<usize>> {
    Ok(idempotent_right_ideals(alg, idempotents)?
        .into_iter()
        .map(|ideal| ideal.dim)
        .collect())
}

/// Right-ideal dimensions of a path-algebra representation in Mat_n,
/// viewing Mat_n as a structure-constant algebra of dimension n^2.
pub fn right_ideal_dims_for_matrep<F: Field>(
    q: &Quiver,
    rep: &MatrixRep<F>,
) -> Result<Vec<usize>> {
    let f = rep.field();
    let alg = matrix_algebra_sca(f, rep.degree());
    let idems: Vec<Vec<F::Elem>> = (0..q.vertex_count())
        .map(|i| rep.images()[i].entries().to_vec())
        .collect();
    right_ideal_dims(&alg, &idems)
}

/// Right-ideal dimensions of a path-algebra representation with values in
/// an arbitrary structure-constant algebra.
pub fn right_ideal_dims_azu<F: Field>(
    q: &Quiver,
    rep: &crate::azumaya::AzuRep<F>,
) -> Result<Vec<usize>> {
    let expected = crate::ncpoly::path_algebra(q)?;
    if rep.presentation() != &expected {
        return Err(Error::NotPathAlgebraRep(
            "presentation is not the path algebra of the given quiver".into(),
        ));
    }
    let idems: Vec<Vec<F::Elem>> = rep.images()[..q.vertex_count()].to_vec();
    right_ideal_dims(rep.algebra(), &idems)
}
