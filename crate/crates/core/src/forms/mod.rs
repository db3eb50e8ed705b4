//! Vector-space- and Lie-algebra-valued differential forms on coordinate
//! charts: closure-backed evaluation, exterior derivative via jets, wedge
//! product and graded bracket, Hodge star, and pullback along chart maps.

pub mod hodge;
pub mod pullback;

use crate::error::{KernelError, Result};
use crate::jetmat::JetMat;
use crate::jets::{JetScalar, Polynomial};
use crate::lie::GroupSpec;
use std::sync::Arc;

pub use pullback::ChartMap;

/// A coordinate chart: dimension, box bounds, coordinate names.
#[derive(Debug, Clone)]
pub struct Chart {
    pub dim: usize,
    pub bounds: Vec<(f64, f64)>,
    pub names: Vec<String>,
}

impl Chart {
    pub fn new(dim: usize, bounds: Vec<(f64, f64)>) -> Self {
        assert!(dim >= 1 && bounds.len() == dim);
        assert!(bounds.iter().all(|(a, b)| a.is_finite() && b.is_finite() && a < b));
        let names = (0..dim).map(|i| format!("x{i}")).collect();
        Chart { dim, bounds, names }
    }

    /// The unit-ish box [−0.5, 0.5]^dim.
    pub fn centered_box(dim: usize) -> Self {
        Chart::new(dim, vec![(-0.5, 0.5); dim])
    }
}

/// All strictly increasing index subsets of size `k` from `0..n`
/// (lexicographic). Empty for `k > n`; the single empty subset for `k = 0`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(out, cur, i + 1, n, k);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, n, k);
    out
}

/// Position and permutation sign of an arbitrary index tuple relative to the
/// increasing-subset storage; `None` when an index repeats.
pub fn tuple_lookup(combos: &[Vec<usize>], tuple: &[usize]) -> Option<(usize, f64)> {
    let mut sorted: Vec<usize> = tuple.to_vec();
    // count inversions for the permutation sign
    let mut sign = 1.0;
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if sorted[i] == sorted[j] {
                return None;
            }
            if sorted[i] > sorted[j] {
                sign = -sign;
            }
        }
    }
    sorted.sort_unstable();
    combos.iter().position(|c| c == &sorted).map(|p| (p, sign))
}

/// Sign of the merge permutation taking the concatenation (I, J) of two
/// disjoint increasing tuples to the full increasing order.
pub fn shuffle_sign(i: &[usize], j: &[usize]) -> f64 {
    let mut sign = 1.0;
    for &a in i {
        for &b in j {
            assert_ne!(a, b, "shuffle of overlapping tuples");
            if a > b {
                sign = -sign;
            }
        }
    }
    sign
}

type FormEval = Arc<dyn Fn(&[f64], usize) -> Result<Vec<JetMat>> + Send + Sync>;

/// A degree-k differential form on a chart with matrix values (vectors are
/// columns). Components are stored over strictly increasing index subsets in
/// the order of [`combinations`]; evaluation is closure-backed and returns
/// jet matrices, so exterior derivatives are exact.
#[derive(Clone)]
pub struct LocalForm {
    pub chart: Chart,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// Set when the values live in a declared Lie algebra.
    pub algebra: Option<GroupSpec>,
    eval: FormEval,
}

impl LocalForm {
    pub fn new(
        chart: Chart,
        degree: usize,
        rows: usize,
        cols: usize,
        algebra: Option<GroupSpec>,
        eval: impl Fn(&[f64], usize) -> Result<Vec<JetMat>> + Send + Sync + 'static,
    ) -> Self {
        LocalForm {
            chart,
            degree,
            rows,
            cols,
            algebra,
            eval: Arc::new(eval),
        }
    }

    pub fn zero(chart: Chart, degree: usize, rows: usize, cols: usize) -> Self {
        let n = chart.dim;
        let ncomp = combinations(n, degree).len();
        LocalForm::new(chart, degree, rows, cols, None, move |x, order| {
            let _ = x;
            Ok((0..ncomp).map(|_| JetMat::zeros(rows, cols, n, order)).collect())
        })
    }

    /// Degree-k form with polynomial matrix components:
    /// `polys[comp][r][c]` over the increasing index subsets.
    pub fn from_polys(
        chart: Chart,
        degree: usize,
        rows: usize,
        cols: usize,
        algebra: Option<GroupSpec>,
        polys: Vec<Vec<Vec<Polynomial>>>,
    ) -> Self {
        let n = chart.dim;
        assert_eq!(polys.len(), combinations(n, degree).len());
        LocalForm::new(chart, degree, rows, cols, algebra, move |x, order| {
            let xs: Vec<JetScalar> = x
                .iter()
                .enumerate()
                .map(|(i, &xi)| JetScalar::variable(xi, i, n, order))
                .collect();
            Ok(polys
                .iter()
                .map(|m| JetMat::from_fn(rows, cols, |r, c| m[r][c].eval_jet(&xs)))
                .collect())
        })
    }

    /// Number of stored components.
    pub fn n_comps(&self) -> usize {
        combinations(self.chart.dim, self.degree).len()
    }

    /// Evaluate all components at `x` as jets of the requested order.
    pub fn eval_at(&self, x: &[f64], order: usize) -> Result<Vec<JetMat>> {
        if x.len() != self.chart.dim {
            return Err(KernelError::DimensionMismatch(format!(
                "point of dimension {} on a chart of dimension {}",
                x.len(),
                self.chart.dim
            )));
        }
        let comps = (self.eval)(x, order)?;
        debug_assert_eq!(comps.len(), self.n_comps());
        Ok(comps)
    }

    /// Evaluate on `degree` tangent vectors (alternating multilinear
    /// contraction of the components).
    pub fn eval_on_vectors(&self, x: &[f64], vectors: &[Vec<f64>]) -> Result<JetMat> {
        assert_eq!(vectors.len(), self.degree);
        let comps = self.eval_at(x, 0)?;
        let combos = combinations(self.chart.dim, self.degree);
        let n = self.chart.dim;
        let mut acc = JetMat::zeros(self.rows, self.cols, n, 0);
        let k = self.degree;
        if k == 0 {
            return Ok(comps[0].clone());
        }
        // sum over all index tuples via the signed accessor
        let mut tuple = vec![0usize; k];
        loop {
            if let Some((pos, sign)) = tuple_lookup(&combos, &tuple) {
                let w: f64 = tuple
                    .iter()
                    .enumerate()
                    .map(|(slot, &mu)| vectors[slot][mu])
                    .product();
                acc = acc.add(&comps[pos].scale_re(sign * w));
            }
            // advance odometer
            let mut slot = 0;
            loop {
                tuple[slot] += 1;
                if tuple[slot] < n {
                    break;
                }
                tuple[slot] = 0;
                slot += 1;
                if slot == k {
                    return Ok(acc);
                }
            }
        }
    }

    pub fn add(&self, rhs: &LocalForm) -> LocalForm {
        assert_eq!(self.degree, rhs.degree);
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let (a, b) = (self.eval.clone(), rhs.eval.clone());
        LocalForm::new(
            self.chart.clone(),
            self.degree,
            self.rows,
            self.cols,
            self.algebra.clone(),
            move |x, order| {
                let u = a(x, order)?;
                let v = b(x, order)?;
                Ok(u.iter().zip(&v).map(|(p, q)| p.add(q)).collect())
            },
        )
    }

    pub fn sub(&self, rhs: &LocalForm) -> LocalForm {
        self.add(&rhs.scale_re(-1.0))
    }

    pub fn scale_re(&self, s: f64) -> LocalForm {
        let a = self.eval.clone();
        LocalForm::new(
            self.chart.clone(),
            self.degree,
            self.rows,
            self.cols,
            self.algebra.clone(),
            move |x, order| Ok(a(x, order)?.iter().map(|m| m.scale_re(s)).collect()),
        )
    }

    /// Apply a pointwise linear map to the component matrices.
    pub fn map_components(
        &self,
        rows: usize,
        cols: usize,
        f: impl Fn(&JetMat) -> JetMat + Send + Sync + 'static,
    ) -> LocalForm {
        let a = self.eval.clone();
        LocalForm::new(
            self.chart.clone(),
            self.degree,
            rows,
            cols,
            None,
            move |x, order| Ok(a(x, order)?.iter().map(&f).collect()),
        )
    }

    /// Exterior derivative via jets: (da)_{μ₀…μ_k} is the alternating sum of
    /// ∂_{μ_t} of the complementary components. Degree-n input yields the
    /// canonical zero (n+1)-form.
    pub fn d(&self) -> LocalForm {
        let n = self.chart.dim;
        let k = self.degree;
        let (rows, cols) = (self.rows, self.cols);
        let inner = self.eval.clone();
        let combos_k = combinations(n, k);
        let combos_k1 = combinations(n, k + 1);
        LocalForm::new(
            self.chart.clone(),
            k + 1,
            rows,
            cols,
            self.algebra.clone(),
            move |x, order| {
                let comps = inner(x, order + 1)?;
                let mut out = Vec::with_capacity(combos_k1.len());
                for combo in &combos_k1 {
                    let mut acc = JetMat::zeros(rows, cols, n, order);
                    for (t, &mu) in combo.iter().enumerate() {
                        let rest: Vec<usize> = combo
                            .iter()
                            .enumerate()
                            .filter(|(s, _)| *s != t)
                            .map(|(_, &v)| v)
                            .collect();
                        let pos = combos_k.iter().position(|c| c == &rest).expect("subset");
                        let term = comps[pos].deriv(mu);
                        acc = if t % 2 == 0 {
                            acc.add(&term)
                        } else {
                            acc.sub(&term)
                        };
                    }
                    out.push(acc);
                }
                Ok(out)
            },
        )
    }

    /// Wedge product with matrix multiplication on the values.
    pub fn wedge(&self, rhs: &LocalForm) -> Result<LocalForm> {
        if self.cols != rhs.rows {
            return Err(KernelError::DimensionMismatch(format!(
                "wedge value product {}×{} · {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        self.wedge_with(rhs, self.rows, rhs.cols, |u, v| Ok(u.mul(v)))
    }

    /// Wedge combinator with an arbitrary bilinear value pairing: the output
    /// component over K is Σ over (p,q)-shuffles of sign·combine(a_I, b_J).
    pub fn wedge_with(
        &self,
        rhs: &LocalForm,
        out_rows: usize,
        out_cols: usize,
        combine: impl Fn(&JetMat, &JetMat) -> Result<JetMat> + Send + Sync + 'static,
    ) -> Result<LocalForm> {
        let n = self.chart.dim;
        let (p, q) = (self.degree, rhs.degree);
        let (rows, cols) = (out_rows, out_cols);
        let (a, b) = (self.eval.clone(), rhs.eval.clone());
        let combos_p = combinations(n, p);
        let combos_q = combinations(n, q);
        let combos_pq = combinations(n, p + q);
        Ok(LocalForm::new(
            self.chart.clone(),
            p + q,
            rows,
            cols,
            self.algebra.clone(),
            move |x, order| {
                let u = a(x, order)?;
                let v = b(x, order)?;
                let mut out = Vec::with_capacity(combos_pq.len());
                for combo in &combos_pq {
                    let mut acc = JetMat::zeros(rows, cols, n, order);
                    // split combo into an increasing p-subset and its complement
                    for iset in combinations(combo.len(), p) {
                        let i: Vec<usize> = iset.iter().map(|&t| combo[t]).collect();
                        let j: Vec<usize> = combo
                            .iter()
                            .enumerate()
                            .filter(|(t, _)| !iset.contains(t))
                            .map(|(_, &v)| v)
                            .collect();
                        let sign = shuffle_sign(&i, &j);
                        let pi = combos_p.iter().position(|c| c == &i).expect("subset");
                        let pj = combos_q.iter().position(|c| c == &j).expect("subset");
                        acc = acc.add(&combine(&u[pi], &v[pj])?.scale_re(sign));
                    }
                    out.push(acc);
                }
                Ok(out)
            },
        ))
    }

    /// Graded bracket [a,b] = a∧b − (−1)^{pq} b∧a on algebra-valued forms.
    pub fn graded_bracket(&self, rhs: &LocalForm) -> Result<LocalForm> {
        match (&self.algebra, &rhs.algebra) {
            (Some(a), Some(b)) if !a.same_spec(b) => {
                return Err(KernelError::GroupMismatch(format!(
                    "graded bracket of Lie({}) with Lie({})",
                    a.name(),
                    b.name()
                )))
            }
            _ => {}
        }
        let ab = self.wedge(rhs)?;
        let ba = rhs.wedge(self)?;
        let sgn = if (self.degree * rhs.degree) % 2 == 0 {
            -1.0
        } else {
            1.0
        };
        Ok(ab.add(&ba.scale_re(sgn)))
    }

    /// Maximum coefficient magnitude of all components at a point.
    pub fn max_abs_at(&self, x: &[f64], order: usize) -> Result<f64> {
        Ok(self
            .eval_at(x, order)?
            .iter()
            .map(|m| m.max_abs())
            .fold(0.0, f64::max))
    }
}

/// A symmetric jet-evaluable metric on a chart with its signature and
/// orientation data (orientation fixed as ε_{01…} = +1).
#[derive(Clone)]
pub struct MetricField {
    pub chart: Chart,
    eval: Arc<dyn Fn(&[f64], usize) -> Result<JetMat> + Send + Sync>,
}

impl MetricField {
    pub fn new(
        chart: Chart,
        eval: impl Fn(&[f64], usize) -> Result<JetMat> + Send + Sync + 'static,
    ) -> Self {
        MetricField {
            chart,
            eval: Arc::new(eval),
        }
    }

    /// Constant Minkowski metric diag(+,−,−,−) on a 4-dimensional chart.
    pub fn minkowski(chart: Chart) -> Self {
        assert_eq!(chart.dim, 4);
        let n = chart.dim;
        MetricField::new(chart, move |_, order| {
            Ok(JetMat::from_value_re(&crate::lie::spin::eta(), n, order))
        })
    }

    /// Metric from polynomial components `polys[μ][ν]` (must be symmetric).
    pub fn from_polys(chart: Chart, polys: Vec<Vec<Polynomial>>) -> Self {
        let n = chart.dim;
        assert_eq!(polys.len(), n);
        MetricField::new(chart, move |x, order| {
            let xs: Vec<JetScalar> = x
                .iter()
                .enumerate()
                .map(|(i, &xi)| JetScalar::variable(xi, i, n, order))
                .collect();
            Ok(JetMat::from_fn(n, n, |r, c| polys[r][c].eval_jet(&xs)))
        })
    }

    /// The metric as a jet matrix at `x`; checks symmetry and
    /// nondegeneracy.
    pub fn eval_at(&self, x: &[f64], order: usize) -> Result<JetMat> {
        let g = (self.eval)(x, order)?;
        let sym_res = g.sub(&g.transpose()).value_max_abs();
        if sym_res > 1e-10 {
            return Err(KernelError::SingularMetric(format!(
                "metric not symmetric at {x:?} (residual {sym_res:.3e})"
            )));
        }
        let det = g.value().determinant().norm();
        if det < 1e-10 {
            return Err(KernelError::SingularMetric(format!(
                "metric degenerate at {x:?} (|det| = {det:.3e})"
            )));
        }
        Ok(g)
    }

    /// Inverse metric jets at `x`.
    pub fn inverse_at(&self, x: &[f64], order: usize) -> Result<JetMat> {
        self.eval_at(x, order)?
            .inverse()
            .map_err(|_| KernelError::SingularMetric(format!("metric degenerate at {x:?}")))
    }

    /// √|det g| as a jet at `x`.
    pub fn sqrt_abs_det_at(&self, x: &[f64], order: usize) -> Result<JetScalar> {
        let det = self.eval_at(x, order)?.det()?;
        let pos = if det.value().re < 0.0 { det.neg() } else { det };
        pos.sqrt()
    }
}

/// Scalar 0-form helper: wrap a jet-scalar field as a 1×1 form.
pub fn scalar_form(chart: Chart, f: Polynomial) -> LocalForm {
    let n = chart.dim;
    LocalForm::new(chart, 0, 1, 1, None, move |x, order| {
        let xs: Vec<JetScalar> = x
            .iter()
            .enumerate()
            .map(|(i, &xi)| JetScalar::variable(xi, i, n, order))
            .collect();
        let mut m = JetMat::zeros(1, 1, n, order);
        m.set(0, 0, f.eval_jet(&xs));
        Ok(vec![m])
    })
}
