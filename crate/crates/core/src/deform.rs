//! Finite-dimensional algebras, their deformations over truncated
//! scalars, and the truncated deformation-moduli comparison.
//!
//! A multiplication tensor is associative exactly when its half
//! self-bracket vanishes, so every associativity question here is
//! answered twice: once by scanning basis triples and once through the
//! bracket machinery, with an agreement flag that is part of the
//! verdict.  Deformations `f + h` over `Q[e]/(e^s)` are likewise judged
//! both by direct associativity over the Artinian base and by the
//! Maurer-Cartan condition `[f,h] + (1/2)[h,h] = 0` taken order by
//! order in epsilon.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::artinian::ArtinianScalar;
use crate::cocom::build_cocom_complex_capped;
use crate::dgla::GradedLieAlgebra;
use crate::groebner::quotient_basis_n;
use crate::hochschild::{gerstenhaber_bracket, half_self_bracket, TensorMap};
use crate::monomial::{monomials_of_degree, MonomialOrder};
use crate::poly::Polynomial;
use crate::rat::{parse_rat, Rat};
use crate::{Error, Result};

/// A finite-dimensional algebra given by its multiplication tensor.
/// Nothing is assumed about the product; associativity is a verdict.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    basis: Vec<String>,
    mul: TensorMap,
}

#[derive(Deserialize)]
struct AlgebraJson {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    /// `mu[a][b]` is the coefficient vector of the product of basis
    /// elements `a` and `b`.
    mu: Vec<Vec<Vec<String>>>,
}

fn parse_tensor_shape<T>(
    n: usize,
    mu: &[Vec<Vec<String>>],
    parse: impl Fn(&str) -> Result<T>,
    mut sink: impl FnMut(usize, usize, usize, T),
) -> Result<()> {
    if mu.len() != n {
        return Err(Error::InvalidPresentation(format!(
            "structure tensor has {} rows, expected {n}",
            mu.len()
        )));
    }
    for (a, row) in mu.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidPresentation(format!(
                "row {a} of the structure tensor has {} entries, expected {n}",
                row.len()
            )));
        }
        for (b, cell) in row.iter().enumerate() {
            if cell.len() != n {
                return Err(Error::InvalidPresentation(format!(
                    "product ({a}, {b}) has {} coefficients, expected {n}",
                    cell.len()
                )));
            }
            for (c, src) in cell.iter().enumerate() {
                sink(a, b, c, parse(src)?);
            }
        }
    }
    Ok(())
}

impl FiniteAlgebra {
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: AlgebraJson = serde_json::from_str(src)?;
        let n = raw.dim;
        if n == 0 {
            return Err(Error::InvalidPresentation("the algebra must have positive dimension".into()));
        }
        let basis = match raw.basis {
            Some(b) => {
                if b.len() != n {
                    return Err(Error::InvalidPresentation(format!(
                        "{} basis labels for dimension {n}",
                        b.len()
                    )));
                }
                b
            }
            None => (1..=n).map(|i| format!("e{i}")).collect(),
        };
        let mut mul = TensorMap::zero(n, 2, 1);
        parse_tensor_shape(n, &raw.mu, |s| parse_rat(s), |a, b, c, v: Rat| {
            mul.set_entry(&[c], &[a, b], v);
        })?;
        Ok(FiniteAlgebra { basis, mul })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn multiplication(&self) -> &TensorMap {
        &self.mul
    }

    /// First basis triple on which the product fails to associate.
    pub fn associator_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for out in 0..n {
                        let mut v = Rat::from_integer(0.into());
                        for d in 0..n {
                            v += self.mul.entry(&[d], &[a, b]).clone()
                                * self.mul.entry(&[out], &[d, c]).clone();
                            v -= self.mul.entry(&[d], &[b, c]).clone()
                                * self.mul.entry(&[out], &[a, d]).clone();
                        }
                        if !v.is_zero() {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        }
        None
    }
}

/// A perturbation of a multiplication with coefficients in the nilpotent
/// ideal of `Q[e]/(e^order)`: one tensor per epsilon power, the constant
/// one identically zero.
#[derive(Clone, Debug)]
pub struct Perturbation {
    order: usize,
    coeffs: Vec<TensorMap>,
}

#[derive(Deserialize)]
struct PerturbationJson {
    mu: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    eps_truncation: Option<usize>,
}

/// Cap for inferring the truncation order from the entries when none is
/// given explicitly.
const INFERENCE_ORDER: usize = 33;

impl Perturbation {
    pub fn zero(n: usize, order: usize) -> Self {
        Perturbation { order, coeffs: vec![TensorMap::zero(n, 2, 1); order] }
    }

    /// Loads a perturbation tensor with entries like `"e"`, `"2*e^2"`,
    /// `"e - 1/2*e^2"`.  The truncation order is the explicit
    /// `eps_truncation` when present, otherwise one above the largest
    /// epsilon power that occurs.
    pub fn from_json(n: usize, src: &str) -> Result<Self> {
        let raw: PerturbationJson = serde_json::from_str(src)?;
        let probe_order = raw.eps_truncation.unwrap_or(INFERENCE_ORDER);
        if probe_order == 0 {
            return Err(Error::InvalidPresentation("eps_truncation must be at least 1".into()));
        }
        let mut entries: Vec<(usize, usize, usize, ArtinianScalar)> = Vec::new();
        parse_tensor_shape(
            n,
            &raw.mu,
            |s| ArtinianScalar::parse(s, probe_order),
            |a, b, c, v| entries.push((a, b, c, v)),
        )?;
        let order = match raw.eps_truncation {
            Some(s) => s,
            None => {
                let max_power = entries
                    .iter()
                    .flat_map(|(_, _, _, v)| {
                        (0..v.order()).filter(|&k| !v.coeff(k).is_zero())
                    })
                    .max()
                    .unwrap_or(0);
                max_power + 1
            }
        };
        let mut coeffs = vec![TensorMap::zero(n, 2, 1); order];
        for (a, b, c, v) in entries {
            for k in 0..order.min(v.order()) {
                let x = v.coeff(k);
                if !x.is_zero() {
                    coeffs[k].set_entry(&[c], &[a, b], x);
                }
            }
        }
        let p = Perturbation { order, coeffs };
        p.check_nilpotent()?;
        Ok(p)
    }

    fn check_nilpotent(&self) -> Result<()> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidPresentation(
                "a perturbation must vanish at e = 0".into(),
            ));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The tensor at one epsilon power.
    pub fn coeff(&self, k: usize) -> &TensorMap {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, t: TensorMap) {
        self.coeffs[k] = t;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|t| t.is_zero())
    }
}

/// Associativity judged twice: by a direct scan over basis triples and
/// by the vanishing of the half self-bracket.
#[derive(Clone, Debug, Serialize)]
pub struct AssociativityReport {
    pub direct: bool,
    pub bracket: bool,
    pub agree: bool,
    /// A failing triple of basis indices when the scan finds one.
    pub witness: Option<(usize, usize, usize)>,
}

pub fn check_associativity_bracket(alg: &FiniteAlgebra) -> Result<AssociativityReport> {
    let witness = alg.associator_witness();
    let direct = witness.is_none();
    let bracket = half_self_bracket(alg.multiplication())?.is_zero();
    Ok(AssociativityReport { direct, bracket, agree: direct == bracket, witness })
}

/// A deformation judged twice: the perturbed product associative over
/// the Artinian base, and the Maurer-Cartan condition of the
/// perturbation in the deformation algebra, order by order in epsilon.
#[derive(Clone, Debug, Serialize)]
pub struct DeformationReport {
    pub order: usize,
    pub deformed_associative: bool,
    pub mc_holds: bool,
    pub agree: bool,
}

pub fn check_deformation(alg: &FiniteAlgebra, h: &Perturbation) -> Result<DeformationReport> {
    let n = alg.dim();
    if alg.associator_witness().is_some() {
        return Err(Error::InvalidInput(
            "the base multiplication must be associative".into(),
        ));
    }
    h.check_nilpotent()?;
    if h.coeff(0).n() != n {
        return Err(Error::InvalidInput("perturbation dimension mismatch".into()));
    }
    let order = h.order();

    // Direct route: the structure constants of f + h live in the
    // Artinian base; scan basis triples there.
    let entry = |c: usize, a: usize, b: usize| -> ArtinianScalar {
        let mut coeffs = vec![alg.multiplication().entry(&[c], &[a, b]).clone()];
        for k in 1..order {
            coeffs.push(h.coeff(k).entry(&[c], &[a, b]).clone());
        }
        ArtinianScalar::from_coeffs(coeffs)
    };
    let mut deformed_associative = true;
    'scan: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for out in 0..n {
                    let mut v = ArtinianScalar::zero(order);
                    for d in 0..n {
                        v = v.add(&entry(d, a, b).mul(&entry(out, d, c)));
                        v = v.sub(&entry(d, b, c).mul(&entry(out, a, d)));
                    }
                    if !v.is_zero() {
                        deformed_associative = false;
                        break 'scan;
                    }
                }
            }
        }
    }

    // Maurer-Cartan route: [f, h_k] + (1/2) sum_{i+j=k} [h_i, h_j] must
    // vanish at every epsilon power.
    let half = Rat::new(1.into(), 2.into());
    let mut mc_holds = true;
    for k in 1..order {
        let mut residual = gerstenhaber_bracket(alg.multiplication(), h.coeff(k), None)?;
        for i in 1..k {
            let j = k - i;
            let term = gerstenhaber_bracket(h.coeff(i), h.coeff(j), None)?;
            residual = residual.add(&term.scale(&half));
        }
        if !residual.is_zero() {
            mc_holds = false;
            break;
        }
    }

    Ok(DeformationReport {
        order,
        deformed_associative,
        mc_holds,
        agree: deformed_associative == mc_holds,
    })
}

/// Dimension tables for the deformation moduli of an associative
/// multiplication, computed through two independent pipelines: the
/// kernel filtration of the coalgebra complex of the deformation
/// algebra, and the maximal-ideal filtration of the local ring of the
/// associativity scheme at the given multiplication.
#[derive(Clone, Debug, Serialize)]
pub struct ModuliReport {
    pub cutoff: usize,
    pub complex_dims: Vec<usize>,
    pub local_ring_dims: Vec<usize>,
    pub agree: bool,
}

pub fn deformation_moduli_truncated(alg: &FiniteAlgebra, cutoff: usize) -> Result<ModuliReport> {
    let n = alg.dim();
    if n > 2 || cutoff > 4 {
        return Err(Error::Truncation(format!(
            "the moduli comparison is sized for dimension <= 2 and cutoff <= 4, got {n} and {cutoff}"
        )));
    }
    if alg.associator_witness().is_some() {
        return Err(Error::InvalidInput(
            "the base multiplication must be associative".into(),
        ));
    }
    let f = alg.multiplication();

    // Pipeline A: the deformation algebra in degrees {1, 2} has binary
    // maps in degree 1 and ternary maps in degree 2, differential ad f,
    // bracket the Gerstenhaber bracket.  Indices are flattened with the
    // output slot leading.
    let dim1 = n * n * n;
    let dim2 = n * n * n * n;
    let unflatten1 = |i: usize| -> (usize, [usize; 2]) {
        (i / (n * n), [(i / n) % n, i % n])
    };
    let unflatten2 = |i: usize| -> (usize, [usize; 3]) {
        (i / (n * n * n), [(i / (n * n)) % n, (i / n) % n, i % n])
    };
    let basis_map = |i: usize| -> TensorMap {
        let (out, input) = unflatten1(i);
        let mut t = TensorMap::zero(n, 2, 1);
        t.set_entry(&[out], &input, Rat::from_integer(1.into()));
        t
    };
    let flatten_ternary = |t: &TensorMap| -> Vec<Rat> {
        (0..dim2)
            .map(|i| {
                let (out, input) = unflatten2(i);
                t.entry(&[out], &input).clone()
            })
            .collect()
    };
    let mut basis = BTreeMap::new();
    basis.insert(1, (0..dim1).map(|i| format!("a{i}")).collect::<Vec<_>>());
    basis.insert(2, (0..dim2).map(|i| format!("b{i}")).collect::<Vec<_>>());
    let mut d = BTreeMap::new();
    for i in 0..dim1 {
        let image = gerstenhaber_bracket(f, &basis_map(i), None)?;
        let v = flatten_ternary(&image);
        if v.iter().any(|x| !x.is_zero()) {
            d.insert((1i64, i), v);
        }
    }
    let mut bracket = BTreeMap::new();
    for i in 0..dim1 {
        for j in i..dim1 {
            let image = gerstenhaber_bracket(&basis_map(i), &basis_map(j), None)?;
            let v = flatten_ternary(&image);
            if v.iter().any(|x| !x.is_zero()) {
                bracket.insert((1i64, i, 1i64, j), v);
            }
        }
    }
    let dgla = GradedLieAlgebra::assemble(basis, d, bracket)?;
    // Only the bottom two pieces enter the kernel filtration; the full
    // exterior tower over the ternary maps would be enormous.
    let complex = build_cocom_complex_capped(&dgla, cutoff, Some(1))?;
    let complex_dims = complex.h0_filtration_dims(cutoff);

    // Pipeline B: associativity equations on the space of multiplication
    // tensors, recentered at f, then the filtration dimensions of the
    // quotient at the origin.
    let var = |out: usize, a: usize, b: usize| out * n * n + a * n + b;
    let mut equations = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for out in 0..n {
                    let mut p = Polynomial::zero(dim1);
                    for mid in 0..n {
                        p = p.add(
                            &Polynomial::variable(dim1, var(mid, a, b))
                                .mul(&Polynomial::variable(dim1, var(out, mid, c))),
                        );
                        p = p.add(
                            &Polynomial::variable(dim1, var(mid, b, c))
                                .mul(&Polynomial::variable(dim1, var(out, a, mid)))
                                .scale(&Rat::from_integer((-1).into())),
                        );
                    }
                    if !p.is_zero() {
                        equations.push(p);
                    }
                }
            }
        }
    }
    let images: Vec<Polynomial> = (0..dim1)
        .map(|i| {
            let (out, input) = unflatten1(i);
            let mut p = Polynomial::variable(dim1, i);
            let c = f.entry(&[out], &input);
            if !c.is_zero() {
                p = p.add(&Polynomial::constant(dim1, c.clone()));
            }
            p
        })
        .collect();
    let shifted: Vec<Polynomial> = equations
        .iter()
        .map(|p| p.substitute(&images))
        .filter(|p| !p.is_zero())
        .collect();
    let order = MonomialOrder::degrevlex();
    let mut totals = Vec::with_capacity(cutoff + 1);
    for k in 0..=cutoff {
        let mut gens = shifted.clone();
        for mono in monomials_of_degree(dim1, k as u32 + 1, &order) {
            gens.push(Polynomial::monomial(mono, Rat::from_integer(1.into())));
        }
        let qb = quotient_basis_n(dim1, &gens, &order, k as u32);
        totals.push(qb.dimension.expect("quotient contains a power of every variable"));
    }
    let mut local_ring_dims = Vec::with_capacity(cutoff + 1);
    let mut prev = 0usize;
    for t in totals {
        local_ring_dims.push(t - prev);
        prev = t;
    }

    let agree = complex_dims == local_ring_dims;
    Ok(ModuliReport { cutoff, complex_dims, local_ring_dims, agree })
}
