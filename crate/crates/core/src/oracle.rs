//! Finite categories and monads given by tables, their textbook Kleisli
//! categories, and linearization into internal categories over group-like
//! coalgebras. Used as an independent check on the internal constructions.

use std::sync::Arc;

use crate::bicomod::{Bicomodule, Comonoid};
use crate::error::{Error, Result};
use crate::intcat::{verify_functor, InternalCategory, InternalFunctor};
use crate::kleisli::Monad;
use crate::matrix::Matrix;
use crate::report::Report;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A category with finitely many objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    /// The identity morphism of each object.
    pub identity: Vec<usize>,
    /// `compose[g * n + f] = g ∘ f` when `dom g = cod f`.
    pub compose: Vec<Option<usize>>,
}

impl FiniteCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[g * self.morphism_count() + f]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&f| self.morphisms[f].dom == a && self.morphisms[f].cod == b)
            .collect()
    }

    /// The preorder on `0..n` generated by `le`, with one morphism `a -> b` whenever `a ≤ b`.
    pub fn preorder(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<FiniteCategory> {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut index = vec![None; n * n];
        // identities first, so the chain 0 ≤ 1 lists id0, id1, 0<1
        let pairs = (0..n)
            .map(|a| (a, a))
            .chain((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b && le(*a, *b)));
        for (a, b) in pairs {
            index[a * n + b] = Some(morphisms.len());
            let name = if a == b { format!("id{a}") } else { format!("{a}<{b}") };
            morphisms.push(Morphism { name, dom: a, cod: b });
        }
        let m = morphisms.len();
        let mut compose = vec![None; m * m];
        for (fi, f) in morphisms.iter().enumerate() {
            for (gi, g) in morphisms.iter().enumerate() {
                if g.dom == f.cod {
                    let h = index[f.dom * n + g.cod]
                        .ok_or_else(|| Error::LawViolation("order relation is not transitive".into()))?;
                    compose[gi * m + fi] = Some(h);
                }
            }
        }
        let identity = (0..n).map(|a| index[a * n + a].expect("reflexive")).collect();
        Ok(FiniteCategory {
            objects,
            morphisms,
            identity,
            compose,
        })
    }

    /// The chain `0 ≤ 1 ≤ ... ≤ n-1`.
    pub fn chain(n: usize) -> FiniteCategory {
        FiniteCategory::preorder(n, |a, b| a <= b).expect("chain")
    }

    pub fn discrete(n: usize) -> FiniteCategory {
        FiniteCategory::preorder(n, |a, b| a == b).expect("discrete")
    }

    /// Exactly one morphism between any two objects.
    pub fn codiscrete(n: usize) -> FiniteCategory {
        FiniteCategory::preorder(n, |_, _| true).expect("codiscrete")
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> FiniteCategory {
        let morphisms = (0..n)
            .map(|i| Morphism {
                name: format!("g{i}"),
                dom: 0,
                cod: 0,
            })
            .collect();
        let mut compose = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                compose[g * n + f] = Some((g + f) % n);
            }
        }
        FiniteCategory {
            objects: vec!["*".into()],
            morphisms,
            identity: vec![0],
            compose,
        }
    }
}

pub fn verify_finite_category(c: &FiniteCategory) -> Report {
    let mut r = Report::new("finite category");
    let (n, m) = (c.object_count(), c.morphism_count());
    let typed = c.identity.len() == n
        && c.identity.iter().enumerate().all(|(a, &i)| {
            i < m && c.morphisms[i].dom == a && c.morphisms[i].cod == a
        })
        && c.morphisms.iter().all(|f| f.dom < n && f.cod < n)
        && c.compose.len() == m * m;
    r.record("typing", "identities and endpoints in range", typed);
    if !typed {
        return r;
    }
    let mut table = true;
    for f in 0..m {
        for g in 0..m {
            let (ff, gg) = (&c.morphisms[f], &c.morphisms[g]);
            table &= match c.then(f, g) {
                Some(h) => gg.dom == ff.cod && c.morphisms[h].dom == ff.dom && c.morphisms[h].cod == gg.cod,
                None => gg.dom != ff.cod,
            };
        }
    }
    r.record("composition table", "g∘f defined iff dom g = cod f", table);
    let ids = (0..m).all(|f| {
        let ff = &c.morphisms[f];
        c.then(f, c.identity[ff.cod]) == Some(f) && c.then(c.identity[ff.dom], f) == Some(f)
    });
    r.record("identity laws", "1∘f = f = f∘1", ids);
    let mut assoc = true;
    for f in 0..m {
        for g in 0..m {
            for h in 0..m {
                if let (Some(gf), Some(hg)) = (c.then(f, g), c.then(g, h)) {
                    assoc &= c.then(gf, h) == c.then(f, hg);
                }
            }
        }
    }
    r.record("associativity", "h∘(g∘f) = (h∘g)∘f", assoc);
    r
}

/// A monad on a finite category: object and morphism maps, unit and multiplication components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMonad {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
    /// `η_a : a -> Ta`.
    pub eta: Vec<usize>,
    /// `μ_a : TTa -> Ta`.
    pub mu: Vec<usize>,
}

impl SetMonad {
    pub fn identity(c: &FiniteCategory) -> SetMonad {
        SetMonad {
            obj: (0..c.object_count()).collect(),
            mor: (0..c.morphism_count()).collect(),
            eta: c.identity.clone(),
            mu: c.identity.clone(),
        }
    }

    /// On a category with at most one morphism per hom-set, the monad with
    /// object map `obj`, if the required morphisms exist.
    pub fn thin(c: &FiniteCategory, obj: &[usize]) -> Option<SetMonad> {
        let unique = |a: usize, b: usize| match c.hom(a, b).as_slice() {
            [f] => Some(*f),
            _ => None,
        };
        let mor = c
            .morphisms
            .iter()
            .map(|f| unique(obj[f.dom], obj[f.cod]))
            .collect::<Option<Vec<_>>>()?;
        let n = c.object_count();
        let eta = (0..n).map(|a| unique(a, obj[a])).collect::<Option<Vec<_>>>()?;
        let mu = (0..n).map(|a| unique(obj[obj[a]], obj[a])).collect::<Option<Vec<_>>>()?;
        Some(SetMonad {
            obj: obj.to_vec(),
            mor,
            eta,
            mu,
        })
    }

    /// Every monad on a thin category, by trying all object maps.
    pub fn all_thin(c: &FiniteCategory) -> Vec<SetMonad> {
        let n = c.object_count();
        let total = n.pow(n as u32);
        (0..total)
            .filter_map(|mut code| {
                let obj: Vec<usize> = (0..n)
                    .map(|_| {
                        let d = code % n;
                        code /= n;
                        d
                    })
                    .collect();
                SetMonad::thin(c, &obj)
            })
            .filter(|t| verify_set_monad(c, t).passed())
            .collect()
    }
}

pub fn verify_set_monad(c: &FiniteCategory, t: &SetMonad) -> Report {
    let mut r = Report::new("monad on a finite category");
    let (n, m) = (c.object_count(), c.morphism_count());
    let typed = t.obj.len() == n
        && t.mor.len() == m
        && t.eta.len() == n
        && t.mu.len() == n
        && t.obj.iter().all(|&x| x < n)
        && t.mor.iter().chain(&t.eta).chain(&t.mu).all(|&f| f < m);
    r.record("typing", "maps in range", typed);
    if !typed {
        return r;
    }
    let ends = |f: usize| (c.morphisms[f].dom, c.morphisms[f].cod);
    let functor = (0..m).all(|f| {
        let (a, b) = ends(f);
        ends(t.mor[f]) == (t.obj[a], t.obj[b])
    }) && (0..n).all(|a| t.mor[c.identity[a]] == c.identity[t.obj[a]])
        && (0..m).all(|f| {
            (0..m).all(|g| match c.then(f, g) {
                Some(gf) => c.then(t.mor[f], t.mor[g]) == Some(t.mor[gf]),
                None => true,
            })
        });
    r.record("functor", "T preserves endpoints, identities, composition", functor);
    let components = (0..n).all(|a| ends(t.eta[a]) == (a, t.obj[a]) && ends(t.mu[a]) == (t.obj[t.obj[a]], t.obj[a]));
    r.record("component typing", "η_a : a → Ta, μ_a : TTa → Ta", components);
    if !(functor && components) {
        return r;
    }
    let eta_nat = (0..m).all(|f| {
        let (a, b) = ends(f);
        c.then(t.eta[a], t.mor[f]) == c.then(f, t.eta[b])
    });
    r.record("unit naturality", "Tf∘η_a = η_b∘f", eta_nat);
    let mu_nat = (0..m).all(|f| {
        let (a, b) = ends(f);
        c.then(t.mu[a], t.mor[f]) == c.then(t.mor[t.mor[f]], t.mu[b])
    });
    r.record("multiplication naturality", "Tf∘μ_a = μ_b∘TTf", mu_nat);
    let laws = (0..n).map(|a| {
        let ta = t.obj[a];
        let left = c.then(t.mor[t.eta[a]], t.mu[a]) == Some(c.identity[ta]);
        let right = c.then(t.eta[ta], t.mu[a]) == Some(c.identity[ta]);
        let assoc = c.then(t.mor[t.mu[a]], t.mu[a]) == c.then(t.mu[ta], t.mu[a]);
        (left, right, assoc)
    });
    let (mut l, mut rr, mut s) = (true, true, true);
    for (x, y, z) in laws {
        l &= x;
        rr &= y;
        s &= z;
    }
    r.record("left unit", "μ∘Tη = 1", l);
    r.record("right unit", "μ∘ηT = 1", rr);
    r.record("associativity", "μ∘Tμ = μ∘μT", s);
    r
}

fn require(report: Report) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::LawViolation(format!(
            "{} fails {}",
            report.subject,
            report.failed_laws().join(", ")
        )))
    }
}

/// Objects of `c`; morphisms `a -> b` are the morphisms `a -> Tb` of `c`;
/// `g ∘ f = μ ∘ Tg ∘ f`; identities `η`.
pub fn classical_kleisli(c: &FiniteCategory, t: &SetMonad) -> Result<FiniteCategory> {
    require(verify_finite_category(c))?;
    require(verify_set_monad(c, t))?;
    let n = c.object_count();
    let mut morphisms = Vec::new();
    let mut origin = Vec::new();
    for (fi, f) in c.morphisms.iter().enumerate() {
        for b in 0..n {
            if t.obj[b] == f.cod {
                morphisms.push(Morphism {
                    name: format!("{}:{}", f.name, c.objects[b]),
                    dom: f.dom,
                    cod: b,
                });
                origin.push(fi);
            }
        }
    }
    let m = morphisms.len();
    let lookup = |under: usize, cod: usize| {
        (0..m)
            .find(|&k| origin[k] == under && morphisms[k].cod == cod)
            .expect("every morphism a -> Tb appears")
    };
    let mut compose = vec![None; m * m];
    for f in 0..m {
        for g in 0..m {
            if morphisms[g].dom == morphisms[f].cod {
                let c_ = morphisms[g].cod;
                let tg = t.mor[origin[g]];
                let h = c
                    .then(origin[f], tg)
                    .and_then(|x| c.then(x, t.mu[c_]))
                    .ok_or_else(|| Error::LawViolation("Kleisli composite undefined".into()))?;
                compose[g * m + f] = Some(lookup(h, c_));
            }
        }
    }
    let identity = (0..n).map(|a| lookup(t.eta[a], a)).collect();
    let k = FiniteCategory {
        objects: c.objects.clone(),
        morphisms,
        identity,
        compose,
    };
    require(verify_finite_category(&k))?;
    Ok(k)
}

/// Objects become group-like elements, morphisms a basis of `A` with
/// `λ(f) = cod f ⊗ f`, `ρ(f) = f ⊗ dom f`.
pub fn linearize(c: &FiniteCategory, field: Field) -> Result<InternalCategory> {
    require(verify_finite_category(c))?;
    let (n, m) = (c.object_count(), c.morphism_count());
    let objects = Arc::new(Comonoid::grouplike(field, n));
    let mut lambda = Matrix::zeros(field, n * m, m);
    let mut rho = Matrix::zeros(field, m * n, m);
    for (i, f) in c.morphisms.iter().enumerate() {
        lambda.set(f.cod * m + i, i, field.one());
        rho.set(i * n + f.dom, i, field.one());
    }
    let morphisms = Bicomodule::new(objects.clone(), objects, lambda, rho)?;
    let mut mult = Matrix::zeros(field, m, m * m);
    for g in 0..m {
        for f in 0..m {
            if let Some(h) = c.then(f, g) {
                mult.set(h, g * m + f, field.one());
            }
        }
    }
    let mut unit = Matrix::zeros(field, m, n);
    for (a, &i) in c.identity.iter().enumerate() {
        unit.set(i, a, field.one());
    }
    InternalCategory::from_flat_mult(morphisms, mult, unit)
}

fn object_map_matrix(field: Field, n: usize, map: &[usize]) -> Matrix {
    let mut p = Matrix::zeros(field, n, map.len());
    for (i, &j) in map.iter().enumerate() {
        p.set(j, i, field.one());
    }
    p
}

/// The monad on `linearize(c)` with `t₀`, `t₁` the permutation-like matrices of
/// the object and morphism maps and `μ`, `η` their component tables.
pub fn linearize_monad(c: &FiniteCategory, t: &SetMonad, field: Field) -> Result<Monad> {
    require(verify_set_monad(c, t))?;
    let ic = Arc::new(linearize(c, field)?);
    let (n, m) = (c.object_count(), c.morphism_count());
    let f0 = object_map_matrix(field, n, &t.obj);
    let f1 = object_map_matrix(field, m, &t.mor);
    let tf = InternalFunctor::new(ic.clone(), ic, f0, f1)?;
    Monad::new(tf, object_map_matrix(field, m, &t.mu), object_map_matrix(field, m, &t.eta))
}

/// `(dom, cod)` of a basis vector of the morphism object, if it is homogeneous.
fn endpoints(ic: &InternalCategory, i: usize) -> Option<(usize, usize)> {
    let (n, a) = (ic.objects.dim, ic.dim());
    let f = ic.field();
    let e = Matrix::basis_vector(f, a, i);
    let lam = ic.morphisms.lambda.mul(&e);
    let rho = ic.morphisms.rho.mul(&e);
    let cod = (0..n).find(|&c| lam == Matrix::basis_vector(f, n, c).tensor(&e))?;
    let dom = (0..n).find(|&d| rho == e.tensor(&Matrix::basis_vector(f, n, d)))?;
    Some((dom, cod))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Succeeds when some bijection of objects and of morphisms (within hom-sets)
/// carries `linearize(classical)` onto `internal`, certified as an invertible
/// internal functor. Otherwise `Mismatch` with the first differing law of the
/// first candidate.
pub fn compare(internal: &InternalCategory, classical: &FiniteCategory) -> Result<Report> {
    let field = internal.field();
    let lin = Arc::new(linearize(classical, field)?);
    let target = Arc::new(internal.clone());
    let (n, m) = (classical.object_count(), classical.morphism_count());
    if *internal.objects != Comonoid::grouplike(field, n) {
        return Err(Error::Mismatch("objects are not the group-like coalgebra on the classical objects".into()));
    }
    if internal.dim() != m {
        return Err(Error::Mismatch(format!(
            "{} internal morphisms against {m} classical ones",
            internal.dim()
        )));
    }
    let ends: Vec<(usize, usize)> = (0..m)
        .map(|i| endpoints(internal, i).ok_or_else(|| Error::Mismatch(format!("basis vector {i} is not homogeneous"))))
        .collect::<Result<_>>()?;
    let mut first_failure = None;
    for pi in permutations(n) {
        // group classical morphisms and internal basis vectors by endpoints
        let mut classes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let src = classical.hom(a, b);
                let dst: Vec<usize> = (0..m).filter(|&i| ends[i] == (pi[a], pi[b])).collect();
                if !src.is_empty() || !dst.is_empty() {
                    classes.push((src, dst));
                }
            }
        }
        if classes.iter().any(|(s, d)| s.len() != d.len()) {
            continue;
        }
        let choices: Vec<Vec<Vec<usize>>> = classes.iter().map(|(s, _)| permutations(s.len())).collect();
        let mut counter = vec![0usize; classes.len()];
        loop {
            let mut sigma = vec![0usize; m];
            for (k, (src, dst)) in classes.iter().enumerate() {
                for (j, &p) in choices[k][counter[k]].iter().enumerate() {
                    sigma[src[j]] = dst[p];
                }
            }
            let f0 = object_map_matrix(field, n, &pi);
            let f1 = object_map_matrix(field, m, &sigma);
            let functor = InternalFunctor::new(lin.clone(), target.clone(), f0, f1)?;
            let rep = verify_functor(&functor)?;
            if rep.passed() {
                let mut out = Report::new("oracle comparison");
                out.record_note(
                    "basis bijection",
                    "linearized classical ≅ internal",
                    true,
                    format!("objects {pi:?}, morphisms {sigma:?}"),
                );
                out.absorb("iso", rep);
                return Ok(out);
            }
            if first_failure.is_none() {
                first_failure = Some(rep.failed_laws().join(", "));
            }
            let mut k = 0;
            loop {
                if k == classes.len() {
                    break;
                }
                counter[k] += 1;
                if counter[k] < choices[k].len() {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
            if k == classes.len() {
                break;
            }
        }
    }
    Err(Error::Mismatch(match first_failure {
        Some(laws) => format!("no basis bijection; first candidate fails {laws}"),
        None => "no bijection respects the hom-set sizes".into(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_ceiling_monad() {
        let c = FiniteCategory::chain(2);
        assert!(verify_finite_category(&c).passed());
        let t = SetMonad::thin(&c, &[1, 1]).unwrap();
        assert!(verify_set_monad(&c, &t).passed());
        let k = classical_kleisli(&c, &t).unwrap();
        assert_eq!(k.morphism_count(), 4);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(k.hom(a, b).len(), 1);
            }
        }
    }

    #[test]
    fn identity_monad_kleisli_is_the_category() {
        let c = FiniteCategory::cyclic_group(2);
        let k = classical_kleisli(&c, &SetMonad::identity(&c)).unwrap();
        assert_eq!(k.morphism_count(), 2);
        let ic = linearize(&k, Field::Rational).unwrap();
        assert!(compare(&ic, &c).unwrap().passed());
    }

    #[test]
    fn thin_monads_on_small_chains() {
        // closure operators on 0 ≤ 1: identity, constant 1
        assert_eq!(SetMonad::all_thin(&FiniteCategory::chain(2)).len(), 2);
        assert_eq!(SetMonad::all_thin(&FiniteCategory::discrete(2)).len(), 1);
    }

    #[test]
    fn broken_table_is_rejected() {
        let mut c = FiniteCategory::chain(2);
        c.compose[0] = None;
        assert!(!verify_finite_category(&c).passed());
    }
}
