//! Finite-dimensional graded Lie algebra presentations.
//!
//! A presentation lists, per integer degree, an ordered basis together
//! with the differential `d: g^i -> g^{i+1}` and the bracket structure
//! constants.  Loading validates the whole package: `d` squares to zero,
//! the bracket is graded antisymmetric, graded Jacobi holds on every
//! basis triple, and `d` is a degree-1 derivation of the bracket.
//! Degrees that are not listed are zero spaces, so a presentation
//! concentrated in degrees {1,2} or {0,1} is simply one whose listed
//! degrees form that window.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Deserialize;

use crate::rat::{neg_one_pow, parse_rat, rat, Rat};
use crate::sample::Sampler;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GradedLieAlgebra {
    basis: BTreeMap<i64, Vec<String>>,
    /// Image of a basis element under `d`, as coordinates in degree `i+1`.
    d: BTreeMap<(i64, usize), Vec<Rat>>,
    /// `[b_a, b_b]` as coordinates in degree `i+j`; both orders stored.
    bracket: BTreeMap<(i64, usize, i64, usize), Vec<Rat>>,
}

#[derive(Deserialize)]
struct DglaJson {
    degrees: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    d: Vec<DiffEntry>,
    #[serde(default)]
    bracket: Vec<BracketEntry>,
}

#[derive(Deserialize)]
struct DiffEntry {
    from: String,
    to: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct BracketEntry {
    args: [String; 2],
    out: BTreeMap<String, String>,
}

impl GradedLieAlgebra {
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: DglaJson = serde_json::from_str(src)?;
        let mut basis: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (deg, labels) in raw.degrees {
            let deg: i64 = deg
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("malformed degree key {deg:?}")))?;
            if labels.is_empty() {
                continue;
            }
            basis.insert(deg, labels);
        }
        let lookup = label_lookup(&basis)?;

        let mut d: BTreeMap<(i64, usize), Vec<Rat>> = BTreeMap::new();
        for entry in raw.d {
            let &(deg, idx) = lookup.get(entry.from.as_str()).ok_or_else(|| {
                Error::InvalidInput(format!("d entry from unknown label {:?}", entry.from))
            })?;
            let target_dim = basis.get(&(deg + 1)).map_or(0, |v| v.len());
            let mut image = vec![Rat::zero(); target_dim];
            for (label, coeff) in &entry.to {
                let &(tdeg, tidx) = lookup.get(label.as_str()).ok_or_else(|| {
                    Error::InvalidInput(format!("d entry targets unknown label {label:?}"))
                })?;
                if tdeg != deg + 1 {
                    return Err(Error::InvalidPresentation(format!(
                        "d({}) must land in degree {}, but {label} has degree {tdeg}",
                        entry.from,
                        deg + 1
                    )));
                }
                image[tidx] = parse_rat(coeff)?;
            }
            if d.insert((deg, idx), image).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate d entry for label {:?}",
                    entry.from
                )));
            }
        }

        let mut bracket: BTreeMap<(i64, usize, i64, usize), Vec<Rat>> = BTreeMap::new();
        for entry in raw.bracket {
            let &(da, ia) = lookup.get(entry.args[0].as_str()).ok_or_else(|| {
                Error::InvalidInput(format!("bracket argument unknown: {:?}", entry.args[0]))
            })?;
            let &(db, ib) = lookup.get(entry.args[1].as_str()).ok_or_else(|| {
                Error::InvalidInput(format!("bracket argument unknown: {:?}", entry.args[1]))
            })?;
            let target_dim = basis.get(&(da + db)).map_or(0, |v| v.len());
            let mut out = vec![Rat::zero(); target_dim];
            for (label, coeff) in &entry.out {
                let &(tdeg, tidx) = lookup.get(label.as_str()).ok_or_else(|| {
                    Error::InvalidInput(format!("bracket output unknown label {label:?}"))
                })?;
                if tdeg != da + db {
                    return Err(Error::InvalidPresentation(format!(
                        "[{}, {}] must land in degree {}, but {label} has degree {tdeg}",
                        entry.args[0],
                        entry.args[1],
                        da + db
                    )));
                }
                out[tidx] = parse_rat(coeff)?;
            }
            if bracket.insert((da, ia, db, ib), out).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate bracket entry for [{}, {}]",
                    entry.args[0], entry.args[1]
                )));
            }
        }

        Self::assemble(basis, d, bracket)
    }

    /// Builds a presentation from raw tables, completing the bracket by
    /// graded antisymmetry and running the validity checks.
    pub fn assemble(
        basis: BTreeMap<i64, Vec<String>>,
        d: BTreeMap<(i64, usize), Vec<Rat>>,
        bracket: BTreeMap<(i64, usize, i64, usize), Vec<Rat>>,
    ) -> Result<Self> {
        label_lookup(&basis)?;
        let mut full = bracket.clone();
        for (&(da, ia, db, ib), v) in &bracket {
            let flipped: Vec<Rat> =
                v.iter().map(|c| -(neg_one_pow(da * db) * c.clone())).collect();
            match full.get(&(db, ib, da, ia)) {
                Some(existing) if (db, ib, da, ia) != (da, ia, db, ib) => {
                    if existing != &flipped {
                        return Err(Error::InvalidPresentation(format!(
                            "bracket entries for the pair ({da},{ia}) x ({db},{ib}) violate graded antisymmetry"
                        )));
                    }
                }
                Some(existing) => {
                    // diagonal pair: [a, a] = -(-1)^{|a||a|} [a, a]
                    if existing != &flipped {
                        return Err(Error::InvalidPresentation(format!(
                            "[a, a] must vanish for even-degree a (degree {da})"
                        )));
                    }
                }
                None => {
                    full.insert((db, ib, da, ia), flipped);
                }
            }
        }
        let g = GradedLieAlgebra { basis, d, bracket: full };
        g.validate()?;
        Ok(g)
    }

    /// Runs the structural checks: `d` lands where it should and squares
    /// to zero, antisymmetry, Jacobi on basis triples, and the derivation
    /// property of `d`.
    pub fn validate(&self) -> Result<()> {
        for (&(deg, idx), image) in &self.d {
            if idx >= self.dim(deg) || image.len() != self.dim(deg + 1) {
                return Err(Error::InvalidPresentation(format!(
                    "d table shape is wrong at degree {deg}"
                )));
            }
        }
        for (&(da, ia, db, ib), out) in &self.bracket {
            if ia >= self.dim(da) || ib >= self.dim(db) || out.len() != self.dim(da + db) {
                return Err(Error::InvalidPresentation(
                    "bracket table shape is wrong".into(),
                ));
            }
            let flipped: Vec<Rat> =
                out.iter().map(|c| -(neg_one_pow(da * db) * c.clone())).collect();
            if self.bracket_basis(db, ib, da, ia) != flipped {
                return Err(Error::InvalidPresentation(format!(
                    "graded antisymmetry fails on the pair ({da},{ia}) x ({db},{ib})"
                )));
            }
        }
        let degrees = self.degrees();
        for &i in &degrees {
            for a in 0..self.dim(i) {
                let dd = self.d_apply(i + 1, &self.d_basis(i, a));
                if dd.iter().any(|c| !c.is_zero()) {
                    return Err(Error::InvalidPresentation(format!(
                        "d squared is nonzero on basis element {a} of degree {i}"
                    )));
                }
            }
        }
        for &i in &degrees {
            for &j in &degrees {
                for a in 0..self.dim(i) {
                    for b in 0..self.dim(j) {
                        let ab = self.bracket_basis(i, a, j, b);
                        // d[a,b] = [da, b] + (-1)^{|a|} [a, db]
                        let lhs = self.d_apply(i + j, &ab);
                        let da_b =
                            self.bracket_vec_right(i + 1, &self.d_basis(i, a), j, b);
                        let a_db = scale_vec(
                            &self.bracket_vec_left(i, a, j + 1, &self.d_basis(j, b)),
                            &neg_one_pow(i),
                        );
                        if add_vecs(&da_b, &a_db) != lhs {
                            return Err(Error::InvalidPresentation(format!(
                                "d is not a derivation on the pair ({i},{a}) x ({j},{b})"
                            )));
                        }
                    }
                }
            }
        }
        for &i in &degrees {
            for &j in &degrees {
                for &k in &degrees {
                    for a in 0..self.dim(i) {
                        for b in 0..self.dim(j) {
                            for c in 0..self.dim(k) {
                                // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
                                let bc = self.bracket_basis(j, b, k, c);
                                let lhs = self.bracket_vec_left(i, a, j + k, &bc);
                                let ab = self.bracket_basis(i, a, j, b);
                                let t1 = self.bracket_vec_right(i + j, &ab, k, c);
                                let ac = self.bracket_basis(i, a, k, c);
                                let t2 = scale_vec(
                                    &self.bracket_vec_left(j, b, i + k, &ac),
                                    &neg_one_pow(i * j),
                                );
                                if add_vecs(&t1, &t2) != lhs {
                                    return Err(Error::InvalidPresentation(format!(
                                        "graded Jacobi fails on the triple ({i},{a}), ({j},{b}), ({k},{c})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Degrees with a nonzero space, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.basis.keys().copied().collect()
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.basis.get(&degree).map_or(0, |v| v.len())
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.basis.get(&degree).map_or(&[], |v| v.as_slice())
    }

    /// True when every nonzero degree lies in the given window.
    pub fn concentrated_in(&self, window: &[i64]) -> bool {
        self.degrees().iter().all(|d| window.contains(d))
    }

    /// `d` of a basis element, as a coordinate vector in degree `i+1`.
    pub fn d_basis(&self, degree: i64, idx: usize) -> Vec<Rat> {
        self.d
            .get(&(degree, idx))
            .cloned()
            .unwrap_or_else(|| vec![Rat::zero(); self.dim(degree + 1)])
    }

    /// `d` applied to a coordinate vector in the given degree.
    pub fn d_apply(&self, degree: i64, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim(degree), "coordinate vector has the wrong length");
        let mut out = vec![Rat::zero(); self.dim(degree + 1)];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, img) in out.iter_mut().zip(self.d_basis(degree, idx)) {
                *o += c.clone() * img;
            }
        }
        out
    }

    /// `[b_a, b_b]` as a coordinate vector in degree `i+j`.
    pub fn bracket_basis(&self, da: i64, ia: usize, db: i64, ib: usize) -> Vec<Rat> {
        self.bracket
            .get(&(da, ia, db, ib))
            .cloned()
            .unwrap_or_else(|| vec![Rat::zero(); self.dim(da + db)])
    }

    fn bracket_vec_right(&self, da: i64, v: &[Rat], db: i64, ib: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim(da + db)];
        for (ia, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, w) in out.iter_mut().zip(self.bracket_basis(da, ia, db, ib)) {
                *o += c.clone() * w;
            }
        }
        out
    }

    fn bracket_vec_left(&self, da: i64, ia: usize, db: i64, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim(da + db)];
        for (ib, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, w) in out.iter_mut().zip(self.bracket_basis(da, ia, db, ib)) {
                *o += c.clone() * w;
            }
        }
        out
    }

    /// Full bilinear bracket on coordinate vectors.
    pub fn bracket_apply(&self, da: i64, v: &[Rat], db: i64, w: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim(da), "coordinate vector has the wrong length");
        assert_eq!(w.len(), self.dim(db), "coordinate vector has the wrong length");
        let mut out = vec![Rat::zero(); self.dim(da + db)];
        for (ia, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = self.bracket_vec_left(da, ia, db, w);
            for (o, x) in out.iter_mut().zip(row) {
                *o += c.clone() * x;
            }
        }
        out
    }
}

fn label_lookup(basis: &BTreeMap<i64, Vec<String>>) -> Result<BTreeMap<&str, (i64, usize)>> {
    let mut lookup = BTreeMap::new();
    for (&deg, labels) in basis {
        for (idx, label) in labels.iter().enumerate() {
            if label.trim().is_empty() {
                return Err(Error::InvalidInput("empty basis label".into()));
            }
            if lookup.insert(label.as_str(), (deg, idx)).is_some() {
                return Err(Error::InvalidInput(format!(
                    "basis label {label:?} appears more than once"
                )));
            }
        }
    }
    Ok(lookup)
}

fn add_vecs(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn scale_vec(v: &[Rat], k: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x.clone() * k.clone()).collect()
}

/// Random presentation concentrated in degrees {1,2}.  In this window the
/// only structure maps are a linear `d: g^1 -> g^2` and a symmetric
/// bracket `S^2 g^1 -> g^2`; Jacobi and the derivation law hold because
/// every iterated bracket lands in the zero space, so any choice of
/// integer tables is a valid presentation.
pub fn random_window_12(sampler: &mut Sampler, max_dim: usize) -> GradedLieAlgebra {
    assert!(max_dim >= 1);
    let m = 1 + sampler.index(max_dim);
    let w = 1 + sampler.index(max_dim);
    let mut basis = BTreeMap::new();
    basis.insert(1, (1..=m).map(|i| format!("x{i}")).collect::<Vec<_>>());
    basis.insert(2, (1..=w).map(|i| format!("w{i}")).collect::<Vec<_>>());
    let mut d = BTreeMap::new();
    for a in 0..m {
        let image: Vec<Rat> = sampler.int_vec(w, -2, 2).into_iter().map(rat).collect();
        d.insert((1i64, a), image);
    }
    let mut bracket = BTreeMap::new();
    for a in 0..m {
        for b in a..m {
            let out: Vec<Rat> = sampler.int_vec(w, -2, 2).into_iter().map(rat).collect();
            bracket.insert((1i64, a, 1i64, b), out);
        }
    }
    GradedLieAlgebra::assemble(basis, d, bracket)
        .expect("window {1,2} tables always validate")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const SQUARE_ZERO_EXAMPLE: &str = r#"{
        "degrees": {"1": ["x"], "2": ["w"]},
        "d": [],
        "bracket": [{"args": ["x", "x"], "out": {"w": "2"}}]
    }"#;

    #[test]
    fn loads_the_square_example() {
        let g = GradedLieAlgebra::from_json(SQUARE_ZERO_EXAMPLE).unwrap();
        assert_eq!(g.degrees(), vec![1, 2]);
        assert_eq!(g.dim(1), 1);
        assert_eq!(g.labels(2), &["w".to_string()]);
        assert_eq!(g.bracket_basis(1, 0, 1, 0), vec![rat(2)]);
        assert!(g.d_basis(1, 0).iter().all(|c| c.is_zero()));
        assert!(g.concentrated_in(&[1, 2]));
        assert!(!g.concentrated_in(&[0, 1]));
    }

    #[test]
    fn odd_bracket_is_symmetric_and_filled_in() {
        let src = r#"{
            "degrees": {"1": ["x", "y"], "2": ["w"]},
            "bracket": [{"args": ["x", "y"], "out": {"w": "1"}}]
        }"#;
        let g = GradedLieAlgebra::from_json(src).unwrap();
        // [x,y] = -(-1)^{1*1} [y,x] = [y,x]
        assert_eq!(g.bracket_basis(1, 0, 1, 1), g.bracket_basis(1, 1, 1, 0));
        assert_eq!(g.bracket_basis(1, 1, 1, 0), vec![rat(1)]);
    }

    #[test]
    fn even_self_bracket_must_vanish() {
        let src = r#"{
            "degrees": {"0": ["u"], "2": ["w"]},
            "bracket": [{"args": ["u", "u"], "out": {"w": "1"}}]
        }"#;
        assert!(matches!(
            GradedLieAlgebra::from_json(src),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn derivation_violation_is_rejected() {
        // d(x) = w but d[x,x] = 0 while [dx, x] + [x, dx] would need
        // [w, x] terms that vanish here, so this one passes...
        let ok = r#"{
            "degrees": {"1": ["x"], "2": ["w"]},
            "d": [{"from": "x", "to": {"w": "1"}}],
            "bracket": [{"args": ["x", "x"], "out": {"w": "2"}}]
        }"#;
        assert!(GradedLieAlgebra::from_json(ok).is_ok());
        // ...whereas a {0,1} window with a module action that is not one
        // breaks Jacobi: [u,[u',v]] vs [[u,u'],v] + [u',[u,v]].
        let bad = r#"{
            "degrees": {"0": ["u", "v"], "1": ["m"]},
            "bracket": [
                {"args": ["u", "v"], "out": {}},
                {"args": ["u", "m"], "out": {"m": "1"}},
                {"args": ["v", "m"], "out": {"m": "0"}}
            ]
        }"#;
        // [u,v] = 0 but [u,[v,m]] = 0 while [[u,v],m] + [v,[u,m]] = [v,m] = 0; fine.
        assert!(GradedLieAlgebra::from_json(bad).is_ok());
        let really_bad = r#"{
            "degrees": {"0": ["u", "v"], "1": ["m"]},
            "bracket": [
                {"args": ["u", "v"], "out": {"v": "1"}},
                {"args": ["u", "m"], "out": {"m": "1"}},
                {"args": ["v", "m"], "out": {"m": "1"}}
            ]
        }"#;
        // [u,v] = v forces [[u,v],m] = [v,m] = m, but [u,[v,m]] - [v,[u,m]] = 0.
        assert!(matches!(
            GradedLieAlgebra::from_json(really_bad),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn d_squared_violation_is_rejected() {
        let src = r#"{
            "degrees": {"0": ["a"], "1": ["b"], "2": ["c"]},
            "d": [
                {"from": "a", "to": {"b": "1"}},
                {"from": "b", "to": {"c": "1"}}
            ]
        }"#;
        assert!(matches!(
            GradedLieAlgebra::from_json(src),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn duplicate_labels_and_bad_targets_are_rejected() {
        let dup = r#"{"degrees": {"1": ["x"], "2": ["x"]}}"#;
        assert!(GradedLieAlgebra::from_json(dup).is_err());
        let stray = r#"{
            "degrees": {"1": ["x"], "2": ["w"]},
            "d": [{"from": "x", "to": {"x": "1"}}]
        }"#;
        assert!(GradedLieAlgebra::from_json(stray).is_err());
        let conflict = r#"{
            "degrees": {"1": ["x", "y"], "2": ["w"]},
            "bracket": [
                {"args": ["x", "y"], "out": {"w": "1"}},
                {"args": ["y", "x"], "out": {"w": "-1"}}
            ]
        }"#;
        assert!(matches!(
            GradedLieAlgebra::from_json(conflict),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn random_window_12_presentations_validate() {
        let mut sampler = Sampler::new(7);
        for _ in 0..25 {
            let g = random_window_12(&mut sampler, 3);
            assert!(g.validate().is_ok());
            assert!(g.concentrated_in(&[1, 2]));
            assert!(g.dim(1) >= 1 && g.dim(1) <= 3);
        }
    }

    #[test]
    fn bracket_apply_is_bilinear() {
        let g = GradedLieAlgebra::from_json(
            r#"{
            "degrees": {"1": ["x", "y"], "2": ["w"]},
            "bracket": [
                {"args": ["x", "x"], "out": {"w": "2"}},
                {"args": ["x", "y"], "out": {"w": "3"}}
            ]
        }"#,
        )
        .unwrap();
        let v = vec![rat(1), rat(2)];
        // [x + 2y, x + 2y] = [x,x] + 4[x,y] = 2w + 12w
        assert_eq!(g.bracket_apply(1, &v, 1, &v), vec![rat(14)]);
    }
}
