//! Information-cost functions over experiments.
//!
//! Each family evaluates to an extended real (`+inf` is a first-class
//! value) and, where the formula is smooth at the given experiment, exposes
//! an analytic gradient. Gradients are reported modulo row-constants: they
//! are only ever consumed through inner products with directions whose rows
//! sum to zero.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::experiment::Experiment;
use crate::tol::Tol;
use crate::Result;

/// A full-support prior over states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Prior(Vec<f64>);

impl Prior {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let tol = Tol::default();
        if weights.is_empty() {
            return Err(Error::Prior("prior is empty".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tol.row {
            return Err(Error::Prior(format!("prior sums to {sum}")));
        }
        if weights.iter().any(|&w| w <= 0.0) {
            return Err(Error::Prior("prior must have full support".into()));
        }
        Ok(Prior(weights))
    }

    pub fn uniform(n: usize) -> Self {
        Prior(vec![1.0 / n as f64; n])
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Column functionals for likelihood-separable costs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Psi {
    /// `psi(h) = (sum_i w_i h_i^p)^(1/p)`, `p >= 1`.
    PNorm { p: f64, weights: Vec<f64> },
    /// `psi(h) = sqrt(h' A h)` for a symmetric positive definite `A`.
    QuadraticForm { matrix: Vec<Vec<f64>> },
}

impl Psi {
    fn eval(&self, h: &[f64]) -> f64 {
        match self {
            Psi::PNorm { p, weights } => {
                let s: f64 = h
                    .iter()
                    .zip(weights)
                    .map(|(&x, &w)| w * x.powf(*p))
                    .sum();
                s.powf(1.0 / p)
            }
            Psi::QuadraticForm { matrix } => {
                let mut s = 0.0;
                for (i, row) in matrix.iter().enumerate() {
                    for (j, &a) in row.iter().enumerate() {
                        s += h[i] * a * h[j];
                    }
                }
                s.max(0.0).sqrt()
            }
        }
    }

    fn grad(&self, h: &[f64]) -> Option<Vec<f64>> {
        match self {
            Psi::PNorm { p, weights } => {
                let s: f64 = h
                    .iter()
                    .zip(weights)
                    .map(|(&x, &w)| w * x.powf(*p))
                    .sum();
                if s <= 0.0 {
                    return None;
                }
                let outer = s.powf(1.0 / p - 1.0);
                Some(
                    h.iter()
                        .zip(weights)
                        .map(|(&x, &w)| {
                            if x <= 0.0 && *p < 1.0 + 1e-12 {
                                w * outer
                            } else {
                                w * x.powf(p - 1.0) * outer
                            }
                        })
                        .collect(),
                )
            }
            Psi::QuadraticForm { matrix } => {
                let v = self.eval(h);
                if v <= 0.0 {
                    return None;
                }
                let n = h.len();
                let mut g = vec![0.0; n];
                for i in 0..n {
                    for j in 0..n {
                        g[i] += matrix[i][j] * h[j];
                    }
                }
                for gi in &mut g {
                    *gi /= v;
                }
                Some(g)
            }
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        match self {
            Psi::PNorm { p, weights } => {
                if *p < 1.0 {
                    return Err(Error::CostSpec(format!("p-norm needs p >= 1, got {p}")));
                }
                if weights.len() != n {
                    return Err(Error::CostSpec(format!(
                        "p-norm has {} weights for {} states",
                        weights.len(),
                        n
                    )));
                }
                if weights.iter().any(|&w| w <= 0.0) {
                    return Err(Error::CostSpec("p-norm weights must be positive".into()));
                }
            }
            Psi::QuadraticForm { matrix } => {
                if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                    return Err(Error::CostSpec(format!(
                        "quadratic form must be {n} x {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// State-wise divergences between signal distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Divergence {
    Kl,
    Renyi { alpha: f64 },
}

impl Divergence {
    /// `D(p || q)` with the conventions `0 ln 0 = 0` and
    /// `p_j > 0 = q_j => +inf`.
    pub fn eval(&self, p: &[f64], q: &[f64]) -> f64 {
        match self {
            Divergence::Kl => {
                let mut s = 0.0;
                for (&pj, &qj) in p.iter().zip(q) {
                    if pj > 0.0 {
                        if qj <= 0.0 {
                            return f64::INFINITY;
                        }
                        s += pj * (pj / qj).ln();
                    }
                }
                s
            }
            Divergence::Renyi { alpha } => {
                let a = *alpha;
                let mut s = 0.0;
                for (&pj, &qj) in p.iter().zip(q) {
                    if pj > 0.0 {
                        if qj <= 0.0 {
                            return f64::INFINITY;
                        }
                        s += pj.powf(a) * qj.powf(1.0 - a);
                    }
                }
                s.ln() / (a - 1.0)
            }
        }
    }

    /// Gradients with respect to `p` and `q` at an interior point.
    fn grads(&self, p: &[f64], q: &[f64]) -> Option<(Vec<f64>, Vec<f64>)> {
        if p.iter().any(|&x| x <= 0.0) || q.iter().any(|&x| x <= 0.0) {
            return None;
        }
        match self {
            Divergence::Kl => {
                let gp = p
                    .iter()
                    .zip(q)
                    .map(|(&pj, &qj)| (pj / qj).ln() + 1.0)
                    .collect();
                let gq = p.iter().zip(q).map(|(&pj, &qj)| -pj / qj).collect();
                Some((gp, gq))
            }
            Divergence::Renyi { alpha } => {
                let a = *alpha;
                let s: f64 = p
                    .iter()
                    .zip(q)
                    .map(|(&pj, &qj)| pj.powf(a) * qj.powf(1.0 - a))
                    .sum();
                if s <= 0.0 {
                    return None;
                }
                let gp = p
                    .iter()
                    .zip(q)
                    .map(|(&pj, &qj)| a * pj.powf(a - 1.0) * qj.powf(1.0 - a) / ((a - 1.0) * s))
                    .collect();
                let gq = p
                    .iter()
                    .zip(q)
                    .map(|(&pj, &qj)| -pj.powf(a) * qj.powf(-a) / s)
                    .collect();
                Some((gp, gq))
            }
        }
    }
}

/// How per-state-pair divergences are combined into a single cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Aggregator {
    /// Weighted sum over ordered pairs `(i, i')`, `i != i'`. Weights default
    /// to uniform; the diagonal of a provided matrix is ignored.
    WeightedSum { weights: Option<Vec<Vec<f64>>> },
    /// Maximum over ordered pairs (nonsmooth; no analytic gradient).
    Max,
}

/// Closed-form two-state binary-signal example costs, written in terms of
/// the high-signal probabilities `f1 <= f2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinaryFamily {
    /// `(f2/f1 - 1)^2 (1 - (1-f2)/(1-f1))` — Blackwell monotone.
    C1,
    /// `f2 (1-f2) / (f1 (1-f1)) - 1` — not monotone.
    C2,
    /// `(f2 - f1)^2` — monotone, with marginal rate of informativeness
    /// transformation identically 1.
    C3,
    /// `f2 - 2 f1` — not monotone.
    C4,
    /// `min { f2/f1, (1-f1)/(1-f2) }` — monotone but not quasiconvex.
    MinRatio,
}

/// An information-cost function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Cost {
    /// `C(f) = sum_j psi(f^j) - psi(1)` for a column functional `psi`.
    LikelihoodSeparable { psi: Psi },
    /// `C(f) = H(mu) - sum_j tau_j H(q^j)` with Shannon entropy `H`, signal
    /// weights `tau_j` and posteriors `q^j` under the prior `mu`.
    PosteriorSeparable { prior: Prior },
    /// Nested-logit Bregman cost: signals are grouped into nests (`nests[j]`
    /// is the nest id of signal `j`) and
    /// `C(f) = sum_{i,j} mu_i f^j_i (xi ln q^j_i + (1-xi) ln q^{nest(j)}_i)
    ///         - sum_i mu_i ln mu_i`.
    BregmanNestedLogit {
        prior: Prior,
        xi: f64,
        nests: Vec<usize>,
    },
    /// Aggregated divergence between the signal distributions of state
    /// pairs.
    StatewiseDivergence {
        divergence: Divergence,
        aggregator: Aggregator,
    },
    /// A named two-state binary-signal example.
    BinaryExample { which: BinaryFamily },
}

impl Cost {
    /// Convenience constructor for the Shannon posterior-separable cost.
    pub fn entropy(prior: Prior) -> Cost {
        Cost::PosteriorSeparable { prior }
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            Cost::LikelihoodSeparable { psi } => match psi {
                Psi::PNorm { p, .. } => format!("likelihood-separable (weighted {p}-norm)"),
                Psi::QuadraticForm { .. } => "likelihood-separable (quadratic form)".into(),
            },
            Cost::PosteriorSeparable { .. } => "posterior-separable (Shannon entropy)".into(),
            Cost::BregmanNestedLogit { xi, .. } => format!("nested-logit Bregman (xi = {xi})"),
            Cost::StatewiseDivergence { divergence, .. } => match divergence {
                Divergence::Kl => "state-wise KL divergence".into(),
                Divergence::Renyi { alpha } => format!("state-wise Renyi-{alpha} divergence"),
            },
            Cost::BinaryExample { which } => format!("binary example {which:?}"),
        }
    }

    /// Checks shape compatibility with an experiment.
    pub fn check_shape(&self, f: &Experiment) -> Result<()> {
        match self {
            Cost::LikelihoodSeparable { psi } => psi.check(f.states()),
            Cost::PosteriorSeparable { prior } => {
                if prior.len() != f.states() {
                    return Err(Error::CostSpec(format!(
                        "prior over {} states, experiment has {}",
                        prior.len(),
                        f.states()
                    )));
                }
                Ok(())
            }
            Cost::BregmanNestedLogit { prior, xi, nests } => {
                if prior.len() != f.states() {
                    return Err(Error::CostSpec(format!(
                        "prior over {} states, experiment has {}",
                        prior.len(),
                        f.states()
                    )));
                }
                if nests.len() != f.signals() {
                    return Err(Error::CostSpec(format!(
                        "{} nest labels for {} signals",
                        nests.len(),
                        f.signals()
                    )));
                }
                if !(0.0..=1.0).contains(xi) {
                    return Err(Error::CostSpec(format!("xi = {xi} not in [0, 1]")));
                }
                Ok(())
            }
            Cost::StatewiseDivergence { aggregator, .. } => {
                if let Aggregator::WeightedSum { weights: Some(w) } = aggregator {
                    if w.len() != f.states() || w.iter().any(|r| r.len() != f.states()) {
                        return Err(Error::CostSpec("weight matrix shape mismatch".into()));
                    }
                }
                Ok(())
            }
            Cost::BinaryExample { .. } => {
                if f.states() != 2 || f.signals() != 2 {
                    return Err(Error::CostSpec(
                        "binary example costs need a 2-state, 2-signal experiment".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Evaluates the cost; `+inf` is a legitimate value.
    pub fn eval(&self, f: &Experiment) -> Result<f64> {
        self.check_shape(f)?;
        Ok(match self {
            Cost::LikelihoodSeparable { psi } => {
                let ones = vec![1.0; f.states()];
                let mut s = -psi.eval(&ones);
                for j in 0..f.signals() {
                    s += psi.eval(&f.column(j));
                }
                s
            }
            Cost::PosteriorSeparable { prior } => {
                let mu = prior.weights();
                let mut c = shannon(mu);
                for j in 0..f.signals() {
                    let (tau, q) = posterior(mu, f, j);
                    if tau > 0.0 {
                        c -= tau * shannon(&q);
                    }
                }
                c
            }
            Cost::BregmanNestedLogit { prior, xi, nests } => {
                let mu = prior.weights();
                let nest_q = nest_posteriors(mu, f, nests);
                let mut c = 0.0;
                for i in 0..f.states() {
                    c -= mu[i] * mu[i].ln();
                }
                for j in 0..f.signals() {
                    let (tau, q) = posterior(mu, f, j);
                    if tau <= 0.0 {
                        continue;
                    }
                    let qg = &nest_q[nests[j]];
                    for i in 0..f.states() {
                        let mass = mu[i] * f.get(i, j);
                        if mass > 0.0 {
                            c += mass * (xi * q[i].ln() + (1.0 - xi) * qg[i].ln());
                        }
                    }
                }
                c
            }
            Cost::StatewiseDivergence {
                divergence,
                aggregator,
            } => {
                let n = f.states();
                let mut acc: f64 = match aggregator {
                    Aggregator::WeightedSum { .. } => 0.0,
                    Aggregator::Max => f64::NEG_INFINITY,
                };
                for i in 0..n {
                    for i2 in 0..n {
                        if i == i2 {
                            continue;
                        }
                        let d = divergence.eval(&f.rows()[i], &f.rows()[i2]);
                        match aggregator {
                            Aggregator::WeightedSum { weights } => {
                                let w = pair_weight(weights, n, i, i2);
                                if w != 0.0 {
                                    acc += w * d;
                                }
                            }
                            Aggregator::Max => acc = acc.max(d),
                        }
                    }
                }
                acc
            }
            Cost::BinaryExample { which } => {
                let (f1, f2) = (f.get(0, 1), f.get(1, 1));
                binary_eval(*which, f1, f2)
            }
        })
    }

    /// Analytic gradient (modulo row-constants), when the family is smooth
    /// at `f`. Returns `None` at boundaries/kinks; callers fall back to
    /// one-sided finite differences.
    pub fn gradient(&self, f: &Experiment) -> Result<Option<Vec<Vec<f64>>>> {
        self.check_shape(f)?;
        let n = f.states();
        let m = f.signals();
        Ok(match self {
            Cost::LikelihoodSeparable { psi } => {
                let mut g = vec![vec![0.0; m]; n];
                for j in 0..m {
                    let Some(col_grad) = psi.grad(&f.column(j)) else {
                        return Ok(None);
                    };
                    for i in 0..n {
                        g[i][j] = col_grad[i];
                    }
                }
                Some(g)
            }
            Cost::PosteriorSeparable { prior } => {
                let mu = prior.weights();
                if !interior(f) {
                    return Ok(None);
                }
                let mut g = vec![vec![0.0; m]; n];
                for j in 0..m {
                    let (_, q) = posterior(mu, f, j);
                    for i in 0..n {
                        g[i][j] = mu[i] * q[i].ln();
                    }
                }
                Some(g)
            }
            Cost::BregmanNestedLogit { prior, xi, nests } => {
                let mu = prior.weights();
                if !interior(f) {
                    return Ok(None);
                }
                let nest_q = nest_posteriors(mu, f, nests);
                let mut g = vec![vec![0.0; m]; n];
                for j in 0..m {
                    let (_, q) = posterior(mu, f, j);
                    let qg = &nest_q[nests[j]];
                    for i in 0..n {
                        g[i][j] = mu[i] * (xi * q[i].ln() + (1.0 - xi) * qg[i].ln());
                    }
                }
                Some(g)
            }
            Cost::StatewiseDivergence {
                divergence,
                aggregator,
            } => {
                let Aggregator::WeightedSum { weights } = aggregator else {
                    return Ok(None);
                };
                if !interior(f) {
                    return Ok(None);
                }
                let mut g = vec![vec![0.0; m]; n];
                for i in 0..n {
                    for i2 in 0..n {
                        if i == i2 {
                            continue;
                        }
                        let w = pair_weight(weights, n, i, i2);
                        if w == 0.0 {
                            continue;
                        }
                        let Some((gp, gq)) = divergence.grads(&f.rows()[i], &f.rows()[i2]) else {
                            return Ok(None);
                        };
                        for j in 0..m {
                            g[i][j] += w * gp[j];
                            g[i2][j] += w * gq[j];
                        }
                    }
                }
                Some(g)
            }
            Cost::BinaryExample { which } => {
                let (f1, f2) = (f.get(0, 1), f.get(1, 1));
                binary_grad(*which, f1, f2).map(|(d1, d2)| {
                    vec![vec![0.0, d1], vec![0.0, d2]]
                })
            }
        })
    }
}

/// Shannon entropy with `0 ln 0 = 0`.
pub fn shannon(q: &[f64]) -> f64 {
    -q.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// Signal weight `tau_j` and posterior `q^j` under prior `mu`.
fn posterior(mu: &[f64], f: &Experiment, j: usize) -> (f64, Vec<f64>) {
    let n = f.states();
    let mut tau = 0.0;
    let mut q = vec![0.0; n];
    for i in 0..n {
        q[i] = mu[i] * f.get(i, j);
        tau += q[i];
    }
    if tau > 0.0 {
        for qi in &mut q {
            *qi /= tau;
        }
    }
    (tau, q)
}

/// Posterior given each nest (union of its signals).
fn nest_posteriors(mu: &[f64], f: &Experiment, nests: &[usize]) -> Vec<Vec<f64>> {
    let n_nests = nests.iter().max().map_or(0, |&x| x + 1);
    let n = f.states();
    let mut out = Vec::with_capacity(n_nests);
    for nest in 0..n_nests {
        let mut tau = 0.0;
        let mut q = vec![0.0; n];
        for (j, &nj) in nests.iter().enumerate() {
            if nj == nest {
                for i in 0..n {
                    q[i] += mu[i] * f.get(i, j);
                }
            }
        }
        for &qi in &q {
            tau += qi;
        }
        if tau > 0.0 {
            for qi in &mut q {
                *qi /= tau;
            }
        }
        out.push(q);
    }
    out
}

fn interior(f: &Experiment) -> bool {
    f.rows().iter().all(|r| r.iter().all(|&v| v > 0.0))
}

fn pair_weight(weights: &Option<Vec<Vec<f64>>>, n: usize, i: usize, i2: usize) -> f64 {
    match weights {
        Some(w) => w[i][i2],
        None => 1.0 / (n * (n - 1)) as f64,
    }
}

fn binary_eval(which: BinaryFamily, f1: f64, f2: f64) -> f64 {
    use crate::order::ratio;
    match which {
        BinaryFamily::C1 => {
            let alpha = ratio(f2, f1);
            let gamma = ratio(1.0 - f2, 1.0 - f1);
            if alpha.is_infinite() {
                return f64::INFINITY;
            }
            (alpha - 1.0).powi(2) * (1.0 - gamma)
        }
        BinaryFamily::C2 => ratio(f2 * (1.0 - f2), f1 * (1.0 - f1)) - 1.0,
        BinaryFamily::C3 => (f2 - f1).powi(2),
        BinaryFamily::C4 => f2 - 2.0 * f1,
        BinaryFamily::MinRatio => ratio(f2, f1).min(ratio(1.0 - f1, 1.0 - f2)),
    }
}

fn binary_grad(which: BinaryFamily, f1: f64, f2: f64) -> Option<(f64, f64)> {
    let interior = f1 > 0.0 && f1 < 1.0 && f2 > 0.0 && f2 < 1.0;
    match which {
        BinaryFamily::C1 => {
            if !interior {
                return None;
            }
            let alpha = f2 / f1;
            let gamma = (1.0 - f2) / (1.0 - f1);
            let d1 = 2.0 * (alpha - 1.0) * (-f2 / (f1 * f1)) * (1.0 - gamma)
                - (alpha - 1.0).powi(2) * (1.0 - f2) / (1.0 - f1).powi(2);
            let d2 = 2.0 * (alpha - 1.0) * (1.0 - gamma) / f1
                + (alpha - 1.0).powi(2) / (1.0 - f1);
            Some((d1, d2))
        }
        BinaryFamily::C2 => {
            if !interior {
                return None;
            }
            let denom = f1 * (1.0 - f1);
            let d1 = -f2 * (1.0 - f2) * (1.0 - 2.0 * f1) / (denom * denom);
            let d2 = (1.0 - 2.0 * f2) / denom;
            Some((d1, d2))
        }
        BinaryFamily::C3 => Some((-2.0 * (f2 - f1), 2.0 * (f2 - f1))),
        BinaryFamily::C4 => Some((-2.0, 1.0)),
        BinaryFamily::MinRatio => {
            if !interior {
                return None;
            }
            let a = f2 / f1;
            let b = (1.0 - f1) / (1.0 - f2);
            if (a - b).abs() < 1e-12 {
                return None; // kink
            }
            if a < b {
                Some((-f2 / (f1 * f1), 1.0 / f1))
            } else {
                Some((-1.0 / (1.0 - f2), (1.0 - f1) / (1.0 - f2).powi(2)))
            }
        }
    }
}
