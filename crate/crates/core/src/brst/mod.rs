//! BRST ghost calculus: a finite Grassmann algebra of anticommuting
//! generators with form-valued coefficients, the BRST operator s on
//! connections, curvatures, matter fields, and ghosts, and the graded
//! Leibniz expansion of s² used for nilpotency checks.
//!
//! Conventions: an element is Σ_I α_I ⊗ ξ_I with α_I a matrix-valued form
//! and ξ_I a monomial in anticommuting generators; the total degree is form
//! degree + ghost degree. Products pick up the generator reordering sign
//! times (−1)^{|I|·deg β} for moving ξ_I past the coefficient β, so both d
//! and s are odd derivations for the total degree and sd + ds = 0 holds
//! with the exterior derivative acting on coefficients sign-free.

use crate::error::{KernelError, Result};
use crate::forms::{Chart, LocalForm};
use crate::gauge::Representation;
use crate::jetmat::JetMat;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Products whose ghost degree exceeds this truncate to zero; nothing in
/// the nilpotency checks needs more.
pub const MAX_GHOST_DEGREE: usize = 3;

type Combine = Arc<dyn Fn(&JetMat, &JetMat) -> Result<JetMat> + Send + Sync>;

/// Reordering sign of ξ_I·ξ_J into the increasing monomial: (−1)^k with k
/// the number of pairs i∈I, j∈J with i > j.
fn gen_sign(m1: u32, m2: u32) -> f64 {
    let mut inv = 0;
    for j in 0..32 {
        if m2 >> j & 1 == 1 {
            inv += (m1 >> (j + 1)).count_ones();
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// An element of the ghost algebra: form-valued coefficients indexed by
/// generator monomials (bitmasks), homogeneous in form and ghost degree.
#[derive(Clone)]
pub struct GrassmannElem {
    pub chart: Chart,
    pub form_degree: usize,
    pub ghost_degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// Number of Grassmann generators of the ambient algebra.
    pub n_gen: usize,
    terms: BTreeMap<u32, LocalForm>,
}

impl GrassmannElem {
    /// The zero element of the given bidegree and shape.
    pub fn zero(
        chart: Chart,
        form_degree: usize,
        ghost_degree: usize,
        rows: usize,
        cols: usize,
        n_gen: usize,
    ) -> Self {
        GrassmannElem {
            chart,
            form_degree,
            ghost_degree,
            rows,
            cols,
            n_gen,
            terms: BTreeMap::new(),
        }
    }

    /// A ghost-degree-0 element from a plain form.
    pub fn from_form(f: &LocalForm, n_gen: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0u32, f.clone());
        GrassmannElem {
            chart: f.chart.clone(),
            form_degree: f.degree,
            ghost_degree: 0,
            rows: f.rows,
            cols: f.cols,
            n_gen,
            terms,
        }
    }

    /// A single coefficient attached to one generator monomial.
    pub fn monomial(f: &LocalForm, mask: u32, n_gen: usize) -> Result<Self> {
        let gd = mask.count_ones() as usize;
        if gd > MAX_GHOST_DEGREE || (mask >> n_gen) != 0 {
            return Err(KernelError::InvalidInput(format!(
                "monomial mask {mask:#b} outside the {n_gen}-generator degree-{MAX_GHOST_DEGREE} algebra"
            )));
        }
        let mut terms = BTreeMap::new();
        terms.insert(mask, f.clone());
        Ok(GrassmannElem {
            chart: f.chart.clone(),
            form_degree: f.degree,
            ghost_degree: gd,
            rows: f.rows,
            cols: f.cols,
            n_gen,
            terms,
        })
    }

    /// A ghost field Σ_a ξ_{offset+a} ⊗ M_a from its degree-0 generator
    /// coefficient fields.
    pub fn ghost(coeffs: &[LocalForm], offset: usize, n_gen: usize) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| {
            KernelError::GhostNotInstantiated("no generator components supplied".into())
        })?;
        if offset + coeffs.len() > n_gen {
            return Err(KernelError::InvalidInput(format!(
                "{} ghost components at offset {offset} exceed {n_gen} generators",
                coeffs.len()
            )));
        }
        let mut terms = BTreeMap::new();
        for (a, f) in coeffs.iter().enumerate() {
            assert_eq!(f.degree, 0, "ghost coefficients must be degree-0 forms");
            assert_eq!((f.rows, f.cols), (first.rows, first.cols));
            terms.insert(1u32 << (offset + a), f.clone());
        }
        Ok(GrassmannElem {
            chart: first.chart.clone(),
            form_degree: 0,
            ghost_degree: 1,
            rows: first.rows,
            cols: first.cols,
            n_gen,
            terms,
        })
    }

    /// The coefficient form of a generator monomial, if present.
    pub fn coefficient(&self, mask: u32) -> Option<&LocalForm> {
        self.terms.get(&mask)
    }

    /// The generator monomials with stored coefficients.
    pub fn masks(&self) -> Vec<u32> {
        self.terms.keys().copied().collect()
    }

    pub fn add(&self, rhs: &GrassmannElem) -> GrassmannElem {
        assert_eq!(
            (self.form_degree, self.ghost_degree),
            (rhs.form_degree, rhs.ghost_degree)
        );
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        out.n_gen = self.n_gen.max(rhs.n_gen);
        for (&m, f) in &rhs.terms {
            match out.terms.get(&m) {
                Some(g) => {
                    let sum = g.add(f);
                    out.terms.insert(m, sum);
                }
                None => {
                    out.terms.insert(m, f.clone());
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &GrassmannElem) -> GrassmannElem {
        self.add(&rhs.scale_re(-1.0))
    }

    pub fn scale_re(&self, s: f64) -> GrassmannElem {
        let mut out = self.clone();
        for f in out.terms.values_mut() {
            *f = f.scale_re(s);
        }
        out
    }

    pub fn neg(&self) -> GrassmannElem {
        self.scale_re(-1.0)
    }

    /// Keep only the terms whose monomial satisfies the predicate.
    pub fn restrict(&self, pred: impl Fn(u32) -> bool) -> GrassmannElem {
        let mut out = self.clone();
        out.terms.retain(|&m, _| pred(m));
        out
    }

    /// Exterior derivative on coefficients (no extra sign in the
    /// coefficient-first convention).
    pub fn d(&self) -> GrassmannElem {
        let mut out = self.clone();
        out.form_degree += 1;
        for f in out.terms.values_mut() {
            *f = f.d();
        }
        out
    }

    /// Graded product with an arbitrary bilinear value pairing: term pairs
    /// with overlapping monomials vanish, the rest carry the generator
    /// reordering sign times (−1)^{|I|·deg β}.
    pub fn mul_with(
        &self,
        rhs: &GrassmannElem,
        out_rows: usize,
        out_cols: usize,
        combine: Combine,
    ) -> Result<GrassmannElem> {
        let mut out = GrassmannElem::zero(
            self.chart.clone(),
            self.form_degree + rhs.form_degree,
            self.ghost_degree + rhs.ghost_degree,
            out_rows,
            out_cols,
            self.n_gen.max(rhs.n_gen),
        );
        if out.ghost_degree > MAX_GHOST_DEGREE {
            return Ok(out);
        }
        for (&m1, f1) in &self.terms {
            for (&m2, f2) in &rhs.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let cross = if (m1.count_ones() as usize * rhs.form_degree) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                let c = combine.clone();
                let term = f1
                    .wedge_with(f2, out_rows, out_cols, move |a, b| c(a, b))?
                    .scale_re(gen_sign(m1, m2) * cross);
                let m = m1 | m2;
                match out.terms.get(&m) {
                    Some(g) => {
                        let sum = g.add(&term);
                        out.terms.insert(m, sum);
                    }
                    None => {
                        out.terms.insert(m, term);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Graded product with matrix multiplication on the values.
    pub fn wedge(&self, rhs: &GrassmannElem) -> Result<GrassmannElem> {
        if self.cols != rhs.rows {
            return Err(KernelError::DimensionMismatch(format!(
                "ghost algebra product {}×{} · {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        self.mul_with(rhs, self.rows, rhs.cols, Arc::new(|a, b| Ok(a.mul(b))))
    }

    /// Graded bracket [x,y] = x∧y − (−1)^{|x||y|} y∧x with |·| the total
    /// degree.
    pub fn bracket(&self, rhs: &GrassmannElem) -> Result<GrassmannElem> {
        let xy = self.wedge(rhs)?;
        let yx = rhs.wedge(self)?;
        let d1 = self.form_degree + self.ghost_degree;
        let d2 = rhs.form_degree + rhs.ghost_degree;
        let sgn = if (d1 * d2) % 2 == 0 { -1.0 } else { 1.0 };
        Ok(xy.add(&yx.scale_re(sgn)))
    }

    /// Maximum coefficient magnitude over all terms at a point.
    pub fn max_abs_at(&self, x: &[f64], order: usize) -> Result<f64> {
        let mut worst = 0.0f64;
        for f in self.terms.values() {
            worst = worst.max(f.max_abs_at(x, order)?);
        }
        Ok(worst)
    }
}

/// A field tagged with its role, fixing the declared bidegree: connection
/// (1,0), curvature (2,0), matter column (0,0), ghost (0,1).
#[derive(Clone)]
pub enum BrstField {
    Conn(GrassmannElem),
    Curv(GrassmannElem),
    Matter(GrassmannElem, Representation),
    Ghost(GrassmannElem),
}

impl BrstField {
    /// The wrapped element.
    pub fn elem(&self) -> &GrassmannElem {
        match self {
            BrstField::Conn(a) | BrstField::Curv(a) | BrstField::Ghost(a) => a,
            BrstField::Matter(a, _) => a,
        }
    }

    /// Short name of the variant for reports.
    pub fn label(&self) -> &'static str {
        match self {
            BrstField::Conn(_) => "connection",
            BrstField::Curv(_) => "curvature",
            BrstField::Matter(_, _) => "matter",
            BrstField::Ghost(_) => "ghost",
        }
    }

    /// Check the stored bidegree against the declared one.
    pub fn check(&self) -> Result<()> {
        let (fd, gd) = match self {
            BrstField::Conn(_) => (1, 0),
            BrstField::Curv(_) => (2, 0),
            BrstField::Matter(_, _) => (0, 0),
            BrstField::Ghost(_) => (0, 1),
        };
        let e = self.elem();
        if e.form_degree != fd || e.ghost_degree != gd {
            return Err(KernelError::InvalidInput(format!(
                "{} field has bidegree ({},{}), declared ({fd},{gd})",
                self.label(),
                e.form_degree,
                e.ghost_degree
            )));
        }
        if let BrstField::Matter(a, rep) = self {
            if a.cols != 1 || a.rows != rep.rows {
                return Err(KernelError::DimensionMismatch(
                    "matter field must be a column matching its representation".into(),
                ));
            }
        }
        Ok(())
    }
}

fn check_ghost(c: &GrassmannElem) -> Result<()> {
    if c.terms.is_empty() {
        return Err(KernelError::GhostNotInstantiated(
            "the total ghost has no generator components".into(),
        ));
    }
    if c.form_degree != 0 || c.ghost_degree != 1 || c.rows != c.cols {
        return Err(KernelError::InvalidInput(
            "the total ghost must be a square ghost-degree-1 0-form".into(),
        ));
    }
    Ok(())
}

/// ρ*(c) applied to a column element through the representation's algebra
/// action.
fn rep_action(
    c: &GrassmannElem,
    phi: &GrassmannElem,
    rep: &Representation,
) -> Result<GrassmannElem> {
    let r = rep.clone();
    c.mul_with(
        phi,
        rep.rows,
        phi.cols,
        Arc::new(move |m, v| r.apply_alg(m, v)),
    )
}

/// The BRST operator: sA = −dc − [A,c], sF = [F,c], sφ = −ρ*(c)φ,
/// sc = −½[c,c], all with the supplied total ghost c; the output ghost
/// degree is one above the input's.
pub fn brst_apply(x: &BrstField, c: &GrassmannElem) -> Result<GrassmannElem> {
    check_ghost(c)?;
    x.check()?;
    match x {
        BrstField::Conn(a) => Ok(c.d().neg().sub(&a.bracket(c)?)),
        BrstField::Curv(f) => f.bracket(c),
        BrstField::Matter(phi, rep) => Ok(rep_action(c, phi, rep)?.neg()),
        BrstField::Ghost(_) => Ok(c.bracket(c)?.scale_re(-0.5)),
    }
}

/// s² by the graded Leibniz expansion (s is an odd derivation for the total
/// degree and anticommutes with d): s²A = d(sc) − [sA,c] + [A,sc],
/// s²F = [sF,c] + [F,sc], s²φ = −ρ*(sc)φ + ρ*(c)sφ, s²c = −[sc,c].
pub fn brst_apply_twice(x: &BrstField, c: &GrassmannElem) -> Result<GrassmannElem> {
    check_ghost(c)?;
    let sc = c.bracket(c)?.scale_re(-0.5);
    match x {
        BrstField::Conn(a) => {
            let sa = brst_apply(x, c)?;
            Ok(sc.d().sub(&sa.bracket(c)?).add(&a.bracket(&sc)?))
        }
        BrstField::Curv(f) => {
            let sf = brst_apply(x, c)?;
            Ok(sf.bracket(c)?.add(&f.bracket(&sc)?))
        }
        BrstField::Matter(phi, rep) => {
            let sphi = brst_apply(x, c)?;
            Ok(rep_action(&sc, phi, rep)?
                .neg()
                .add(&rep_action(c, &sphi, rep)?))
        }
        BrstField::Ghost(_) => sc.bracket(c).map(|b| b.neg()),
    }
}

/// Max-abs of s²x at the sample points (order-0 coefficients) for each
/// field, labelled by variant.
pub fn check_nilpotency(
    fields: &[BrstField],
    c: &GrassmannElem,
    pts: &[Vec<f64>],
) -> Result<Vec<(&'static str, f64)>> {
    let mut out = Vec::with_capacity(fields.len());
    for f in fields {
        let s2 = brst_apply_twice(f, c)?;
        let mut worst = 0.0f64;
        for x in pts {
            worst = worst.max(s2.max_abs_at(x, 0)?);
        }
        out.push((f.label(), worst));
    }
    Ok(out)
}
