//! Numerical models of polarized surfaces: Néron–Severi lattice, intersection
//! form, effective cone, canonical class and polarization.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{QuadNum, Rat, int};

/// Largest Picard rank accepted.
pub const MAX_RANK: usize = 8;

/// Inertia of a symmetric form: numbers of positive, negative and zero squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Exact inertia by symmetric (congruence) elimination over the rationals.
///
/// When every remaining diagonal entry vanishes, the basis is perturbed by
/// `e_i <- e_i + e_j` for a nonzero off-diagonal entry, which puts `2·a_ij`
/// on the diagonal.
pub fn inertia(form: &[Vec<i64>]) -> Inertia {
    let n = form.len();
    let mut m: Vec<Vec<Rat>> = form
        .iter()
        .map(|row| row.iter().map(|&x| int(x)).collect())
        .collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = match active.iter().copied().find(|&i| !m[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !m[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                // row/col i += row/col j
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[i][k] += v;
                }
                for k in 0..n {
                    let v = m[k][j].clone();
                    m[k][i] += v;
                }
                i
            }
        };
        let p = m[pivot][pivot].clone();
        if p.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            let f = &m[i][pivot] / &p;
            if f.is_zero() {
                continue;
            }
            for &k in &active {
                let v = &f * &m[pivot][k];
                m[i][k] -= v;
            }
        }
        for &i in &active {
            m[i][pivot] = Rat::zero();
            m[pivot][i] = Rat::zero();
        }
    }
    out
}

/// Néron–Severi lattice with its integral intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsLattice {
    basis_labels: Vec<String>,
    form: Vec<Vec<i64>>,
}

impl NsLattice {
    /// Validates shape, symmetry and the Hodge index signature (1, ρ−1).
    pub fn new(basis_labels: Vec<String>, form: Vec<Vec<i64>>) -> Result<Self> {
        let rank = form.len();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::RankOutOfRange(rank));
        }
        if basis_labels.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: basis_labels.len(),
            });
        }
        for row in &form {
            if row.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: row.len(),
                });
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if form[i][j] != form[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        let lat = NsLattice { basis_labels, form };
        lat.validate_hodge_index()?;
        Ok(lat)
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn validate_hodge_index(&self) -> Result<()> {
        let i = inertia(&self.form);
        if i.positive == 1 && i.zero == 0 {
            Ok(())
        } else {
            Err(Error::WrongSignature {
                positive: i.positive,
                negative: i.negative,
                zero: i.zero,
                expected_negative: self.rank() - 1,
            })
        }
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: len,
            })
        }
    }

    pub fn pairing(&self, x: &DivClass, y: &DivClass) -> Result<Rat> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let mut acc = Rat::zero();
        for (i, row) in self.form.iter().enumerate() {
            for (j, &f) in row.iter().enumerate() {
                if f != 0 {
                    acc += &x.coords[i] * &y.coords[j] * int(f);
                }
            }
        }
        Ok(acc)
    }

    /// Pairing of classes with coordinates in a quadratic field.
    pub fn pairing_quad(&self, x: &[QuadNum], y: &[QuadNum]) -> Result<QuadNum> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let mut acc = QuadNum::zero();
        for (i, row) in self.form.iter().enumerate() {
            for (j, &f) in row.iter().enumerate() {
                if f != 0 {
                    let term = x[i].try_mul(&y[j])?.scale(&int(f));
                    acc = acc.try_add(&term)?;
                }
            }
        }
        Ok(acc)
    }

    /// The same lattice with every intersection number multiplied by `k`.
    pub fn scaled(&self, k: i64) -> NsLattice {
        NsLattice {
            basis_labels: self.basis_labels.clone(),
            form: self
                .form
                .iter()
                .map(|r| r.iter().map(|x| x * k).collect())
                .collect(),
        }
    }
}

/// A numerical divisor class with rational coordinates in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass {
    pub coords: Vec<Rat>,
}

impl DivClass {
    pub fn new(coords: Vec<Rat>) -> Self {
        DivClass { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        DivClass::new(v.iter().map(|&x| int(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivClass::new(vec![Rat::zero(); rank])
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, r: &Rat) -> DivClass {
        DivClass::new(self.coords.iter().map(|c| c * r).collect())
    }

    pub fn add(&self, other: &DivClass) -> DivClass {
        DivClass::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> DivClass {
        self.scale(&int(-1))
    }

    pub fn to_quad(&self) -> Vec<QuadNum> {
        self.coords.iter().cloned().map(QuadNum::rational).collect()
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten())
            .collect()
    }
}

/// Model of the closed effective cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeModel {
    /// `{α : α² ≥ 0, α·h ≥ 0}`, the positive nappe selected by `h`.
    Quadratic { ample_selector: DivClass },
    /// `{α : ℓ_i(α) ≥ 0 for all i}` for integer functionals `ℓ_i`.
    Polyhedral { inequalities: Vec<Vec<i64>> },
}

fn eval_functional(ineq: &[i64], coords: &[Rat]) -> Rat {
    ineq.iter().zip(coords).map(|(&w, c)| c * int(w)).sum()
}

fn eval_functional_quad(ineq: &[i64], coords: &[QuadNum]) -> Result<QuadNum> {
    ineq.iter()
        .zip(coords)
        .try_fold(QuadNum::zero(), |acc, (&w, c)| acc.try_add(&c.scale(&int(w))))
}

fn integer_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for c in col..cols {
                    let v = &f * &m[rank][c];
                    m[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl ConeModel {
    fn validate(&self, lat: &NsLattice) -> Result<()> {
        match self {
            ConeModel::Quadratic { ample_selector } => {
                lat.check_dim(ample_selector.len())?;
                if !lat.pairing(ample_selector, ample_selector)?.is_positive() {
                    return Err(Error::InvalidCone(
                        "ample selector h must satisfy h·h > 0".into(),
                    ));
                }
            }
            ConeModel::Polyhedral { inequalities } => {
                if inequalities.is_empty() {
                    return Err(Error::InvalidCone("no inequalities given".into()));
                }
                for ineq in inequalities {
                    lat.check_dim(ineq.len())?;
                }
                // pointed iff the inequality kernel is {0}
                if integer_rank(inequalities, lat.rank()) < lat.rank() {
                    return Err(Error::InvalidCone("cone contains a line".into()));
                }
            }
        }
        Ok(())
    }

    /// Strict interior test for a rational class.
    pub fn is_interior(&self, lat: &NsLattice, x: &DivClass) -> Result<bool> {
        lat.check_dim(x.len())?;
        Ok(match self {
            ConeModel::Quadratic { ample_selector } => {
                lat.pairing(x, x)?.is_positive() && lat.pairing(x, ample_selector)?.is_positive()
            }
            ConeModel::Polyhedral { inequalities } => inequalities
                .iter()
                .all(|l| eval_functional(l, &x.coords).is_positive()),
        })
    }

    /// Closed-cone membership for a class with quadratic-field coordinates.
    pub fn contains(&self, lat: &NsLattice, x: &[QuadNum]) -> Result<bool> {
        lat.check_dim(x.len())?;
        match self {
            ConeModel::Quadratic { ample_selector } => {
                let sq = lat.pairing_quad(x, x)?;
                let sel = lat.pairing_quad(x, &ample_selector.to_quad())?;
                Ok(sq.sign() != Ordering::Less && sel.sign() != Ordering::Less)
            }
            ConeModel::Polyhedral { inequalities } => {
                for l in inequalities {
                    if eval_functional_quad(l, x)?.sign() == Ordering::Less {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// A polarized surface, possibly given as the pullback to a double cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDatum {
    name: String,
    lattice: NsLattice,
    cone: ConeModel,
    canonical_class: DivClass,
    polarization: DivClass,
    cover_degree: u32,
}

impl SurfaceDatum {
    pub fn new(
        name: impl Into<String>,
        lattice: NsLattice,
        cone: ConeModel,
        canonical_class: DivClass,
        polarization: DivClass,
    ) -> Result<Self> {
        Self::with_cover(name, lattice, cone, canonical_class, polarization, 1)
    }

    fn with_cover(
        name: impl Into<String>,
        lattice: NsLattice,
        cone: ConeModel,
        canonical_class: DivClass,
        polarization: DivClass,
        cover_degree: u32,
    ) -> Result<Self> {
        if !matches!(cover_degree, 1 | 2) {
            return Err(Error::UnsupportedCoverDegree(cover_degree));
        }
        cone.validate(&lattice)?;
        lattice.check_dim(canonical_class.len())?;
        if !cone.is_interior(&lattice, &polarization)? {
            return Err(Error::NotInterior("polarization".into()));
        }
        Ok(SurfaceDatum {
            name: name.into(),
            lattice,
            cone,
            canonical_class,
            polarization,
            cover_degree,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &NsLattice {
        &self.lattice
    }

    pub fn cone(&self) -> &ConeModel {
        &self.cone
    }

    pub fn canonical_class(&self) -> &DivClass {
        &self.canonical_class
    }

    pub fn polarization(&self) -> &DivClass {
        &self.polarization
    }

    pub fn cover_degree(&self) -> u32 {
        self.cover_degree
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn is_effective(&self, x: &[QuadNum]) -> Result<bool> {
        self.cone.contains(&self.lattice, x)
    }

    /// Same surface with the polarization replaced.
    pub fn with_polarization(&self, polarization: DivClass) -> Result<SurfaceDatum> {
        Self::with_cover(
            self.name.clone(),
            self.lattice.clone(),
            self.cone.clone(),
            self.canonical_class.clone(),
            polarization,
            self.cover_degree,
        )
    }

    /// Double cover branched along `branch = 2·L'`, expressed on the pulled-back
    /// sublattice: intersection numbers double, `K ↦ K + L'`, the polarization
    /// and cone inequalities keep their coordinates.
    pub fn double_cover(&self, branch: &DivClass) -> Result<SurfaceDatum> {
        if self.cover_degree != 1 {
            return Err(Error::AlreadyCovered(self.cover_degree));
        }
        self.lattice.check_dim(branch.len())?;
        let two = int(2);
        let half = branch.scale(&crate::exactnum::rat(1, 2));
        if branch.coords.iter().any(|c| !(c / &two).is_integer()) {
            return Err(Error::BranchNotDivisibleBy2);
        }
        if !self.cone.is_interior(&self.lattice, &half)? {
            return Err(Error::BranchNotAmple);
        }
        Self::with_cover(
            format!("{} (double cover)", self.name),
            self.lattice.scaled(2),
            self.cone.clone(),
            self.canonical_class.add(&half),
            self.polarization.clone(),
            2,
        )
    }
}
