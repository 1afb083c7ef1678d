//! Rank-r sign realizations in normal form and their exact rationalization.
//!
//! A normal-form factorization has U's first column and V's last row all
//! ones, so row i of U is the point `(u_i2, .., u_ir)` and column j of V the
//! hyperplane `v_1j + v_2j x_1 + .. + x_d = 0`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{
    format_rational, parse_rational, rational_from_f64, rational_round, rational_sign, Rational,
};
use crate::pattern::{condense, staircase_signing, CondensationReport, SignPattern};
use crate::sign::Sign;

/// Entries whose target is zero must end up below this in absolute value.
pub const ZERO_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    pub margin: f64,
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
    /// When false the search stays in normal form with identity signatures.
    pub signatures: bool,
    pub learning_rate: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            margin: 1e-2,
            restarts: 64,
            iters: 5000,
            seed: 0,
            signatures: true,
            learning_rate: 0.02,
        }
    }
}

/// Normal-form realization of the signed condensed pattern
/// `target = diag(row_signs) * A_c * diag(col_signs)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub r: usize,
    pub u: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
    pub margin: f64,
    pub row_signs: Vec<Sign>,
    pub col_signs: Vec<Sign>,
    pub target: SignPattern,
    /// Index of the restart that produced it.
    pub restart: usize,
}

impl Realization {
    pub fn product(&self) -> DMatrix<f64> {
        to_dmatrix(&self.u) * to_dmatrix(&self.v)
    }

    /// Checks normal form, the sign margin and the zero tolerance.
    pub fn check(&self) -> Result<()> {
        let m = self.target.rows();
        let n = self.target.cols();
        if self.u.len() != m || self.u.iter().any(|row| row.len() != self.r) {
            return Err(Error::domain("U has the wrong shape"));
        }
        if self.v.len() != self.r || self.v.iter().any(|row| row.len() != n) {
            return Err(Error::domain("V has the wrong shape"));
        }
        if self.u.iter().any(|row| row[0] != 1.0) || self.v[self.r - 1].iter().any(|&x| x != 1.0) {
            return Err(Error::domain("factorization is not in normal form"));
        }
        let b = self.product();
        for i in 0..m {
            for j in 0..n {
                let x = b[(i, j)];
                let ok = match self.target.get(i, j) {
                    Sign::Pos => x >= self.margin * (1.0 - 1e-9),
                    Sign::Neg => x <= -self.margin * (1.0 - 1e-9),
                    Sign::Zero => x.abs() <= ZERO_TOL,
                };
                if !ok {
                    return Err(Error::domain(format!(
                        "entry ({}, {}) = {x:e} violates target {}",
                        i + 1,
                        j + 1,
                        self.target.get(i, j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_value(&self) -> Value {
        let signs = |s: &[Sign]| s.iter().map(|x| x.to_string()).collect::<String>();
        json!({
            "r": self.r,
            "U": self.u,
            "V": self.v,
            "margin": self.margin,
            "row_signs": signs(&self.row_signs),
            "col_signs": signs(&self.col_signs),
            "restart": self.restart,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("serializable")
    }

    /// Reads the interchange format and binds it to pattern `a` (condensed
    /// internally). Missing signature fields mean identity signatures.
    pub fn from_json(text: &str, a: &SignPattern) -> Result<Realization> {
        #[derive(Deserialize)]
        struct Raw {
            r: usize,
            #[serde(rename = "U")]
            u: Vec<Vec<f64>>,
            #[serde(rename = "V")]
            v: Vec<Vec<f64>>,
            row_signs: Option<String>,
            col_signs: Option<String>,
            #[serde(default)]
            restart: usize,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        let ac = condense(a).condensed;
        let parse_signs = |s: Option<String>, len: usize| -> Result<Vec<Sign>> {
            match s {
                None => Ok(vec![Sign::Pos; len]),
                Some(s) => {
                    let v: Option<Vec<Sign>> = s
                        .chars()
                        .map(|c| Sign::from_char(c).filter(|x| !x.is_zero()))
                        .collect();
                    let v = v.ok_or_else(|| Error::domain("signature strings use + and -"))?;
                    if v.len() != len {
                        return Err(Error::domain("signature length does not match the condensed pattern"));
                    }
                    Ok(v)
                }
            }
        };
        let row_signs = parse_signs(raw.row_signs, ac.rows())?;
        let col_signs = parse_signs(raw.col_signs, ac.cols())?;
        let target = ac.signed(&row_signs, &col_signs);
        let mut real = Realization {
            r: raw.r,
            u: raw.u,
            v: raw.v,
            margin: 0.0,
            row_signs,
            col_signs,
            target,
            restart: raw.restart,
        };
        if real.u.len() != ac.rows() || real.v.first().map_or(0, Vec::len) != ac.cols() {
            return Err(Error::domain(format!(
                "realization is {}x{} but the condensed pattern is {}x{}",
                real.u.len(),
                real.v.first().map_or(0, Vec::len),
                ac.rows(),
                ac.cols()
            )));
        }
        real.margin = nonzero_margin(&real.product(), &real.target);
        real.check()?;
        Ok(real)
    }
}

fn to_dmatrix(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    DMatrix::from_fn(m, n, |i, j| rows[i][j])
}

fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn nonzero_margin(b: &DMatrix<f64>, target: &SignPattern) -> f64 {
    let mut margin = f64::INFINITY;
    for i in 0..target.rows() {
        for j in 0..target.cols() {
            if !target.get(i, j).is_zero() {
                margin = margin.min(b[(i, j)].abs());
            }
        }
    }
    margin
}

// ---------------------------------------------------------------------------
// normal form

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub u: DMatrix<f64>,
    pub v: DMatrix<f64>,
    pub row_signs: Vec<Sign>,
    pub col_signs: Vec<Sign>,
    /// Positive factors with `U V = diag(row_signs * row_scales) B diag(col_signs * col_scales)`.
    pub row_scales: Vec<f64>,
    pub col_scales: Vec<f64>,
    /// Number of rotation draws tried (0 when no rotation was needed).
    pub rotation_attempts: usize,
}

impl NormalForm {
    /// `diag(row_signs * row_scales) * b * diag(col_signs * col_scales)`.
    pub fn rescale(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(b.nrows(), b.ncols(), |i, j| {
            f64::from(self.row_signs[i].to_i8())
                * self.row_scales[i]
                * b[(i, j)]
                * f64::from(self.col_signs[j].to_i8())
                * self.col_scales[j]
        })
    }
}

const ROTATION_BUDGET: usize = 256;
// leading components must carry at least this share of their vector's norm
const LEADING_SHARE: f64 = 1e-2;

/// Normal form of a rank-r factorization `U0 V0`: compose rotations
/// R(theta_k; 1, k), k = 2..r, until every row of `U0 Q^T` has a usable first
/// entry and every column of `Q V0` a usable last entry, then scale rows and
/// columns to ones and keep the signs.
pub fn normalize_factorization(u0: &DMatrix<f64>, v0: &DMatrix<f64>) -> Result<NormalForm> {
    let r = u0.ncols();
    if r < 2 || v0.nrows() != r {
        return Err(Error::domain("normal form needs an m x r and r x n pair with r >= 2"));
    }
    let b = u0 * v0;
    let rank = numerical_rank(&b);
    if rank != r {
        return Err(Error::RankMismatch {
            expected: r,
            found: rank,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d0f1_e44a);
    for attempt in 0..=ROTATION_BUDGET {
        let q = if attempt == 0 {
            DMatrix::identity(r, r)
        } else {
            let mut q = DMatrix::identity(r, r);
            for k in 1..r {
                let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                q = plane_rotation(r, k, theta) * q;
            }
            q
        };
        let u = u0 * q.transpose();
        let v = &q * v0;
        let rows_ok = (0..u.nrows()).all(|i| u[(i, 0)].abs() > LEADING_SHARE * u.row(i).norm());
        let cols_ok = (0..v.ncols()).all(|j| v[(r - 1, j)].abs() > LEADING_SHARE * v.column(j).norm());
        if !(rows_ok && cols_ok) {
            continue;
        }
        let mut u = u;
        let mut v = v;
        let mut row_signs = Vec::with_capacity(u.nrows());
        let mut row_scales = Vec::with_capacity(u.nrows());
        for i in 0..u.nrows() {
            let lead = u[(i, 0)];
            row_signs.push(Sign::of_f64(lead));
            row_scales.push(1.0 / lead.abs());
            for k in 0..r {
                u[(i, k)] /= lead;
            }
            u[(i, 0)] = 1.0;
        }
        let mut col_signs = Vec::with_capacity(v.ncols());
        let mut col_scales = Vec::with_capacity(v.ncols());
        for j in 0..v.ncols() {
            let last = v[(r - 1, j)];
            col_signs.push(Sign::of_f64(last));
            col_scales.push(1.0 / last.abs());
            for k in 0..r {
                v[(k, j)] /= last;
            }
            v[(r - 1, j)] = 1.0;
        }
        return Ok(NormalForm {
            u,
            v,
            row_signs,
            col_signs,
            row_scales,
            col_scales,
            rotation_attempts: attempt,
        });
    }
    Err(Error::NumericalDegeneracy(format!(
        "no admissible rotation in {ROTATION_BUDGET} draws"
    )))
}

/// Normal form of a matrix of numerical rank `r`, starting from the leading
/// r columns of a column-pivoted QR decomposition.
pub fn normalize_matrix(b: &DMatrix<f64>, r: usize) -> Result<NormalForm> {
    let rank = numerical_rank(b);
    if rank != r {
        return Err(Error::RankMismatch {
            expected: r,
            found: rank,
        });
    }
    let qr = b.clone().col_piv_qr();
    let u0 = qr.q().columns(0, r).into_owned();
    let mut v0 = qr.r().rows(0, r).into_owned();
    qr.p().inv_permute_columns(&mut v0);
    normalize_factorization(&u0, &v0)
}

/// Rank revealed by column-pivoted QR: diagonal entries of R above
/// `1e-9 * |R_11|`.
pub fn numerical_rank(b: &DMatrix<f64>) -> usize {
    if b.nrows() == 0 || b.ncols() == 0 {
        return 0;
    }
    let r = b.clone().col_piv_qr().r();
    let top = r[(0, 0)].abs();
    if top == 0.0 {
        return 0;
    }
    (0..r.nrows().min(r.ncols()))
        .filter(|&k| r[(k, k)].abs() > 1e-9 * top)
        .count()
}

fn plane_rotation(r: usize, k: usize, theta: f64) -> DMatrix<f64> {
    let mut q = DMatrix::identity(r, r);
    let (s, c) = theta.sin_cos();
    q[(0, 0)] = c;
    q[(0, k)] = -s;
    q[(k, 0)] = s;
    q[(k, k)] = c;
    q
}

// ---------------------------------------------------------------------------
// penalty

/// Hinge penalty of `B = U V` against `target`:
/// `sum_+ max(0, margin - b)^2 + sum_- max(0, b + margin)^2 + sum_0 b^2`,
/// with its gradients `dU = G V^T` and `dV = U^T G`.
pub fn penalty_and_gradient(
    target: &SignPattern,
    u: &DMatrix<f64>,
    v: &DMatrix<f64>,
    margin: f64,
) -> (f64, DMatrix<f64>, DMatrix<f64>) {
    let b = u * v;
    let mut g = DMatrix::zeros(b.nrows(), b.ncols());
    let mut total = 0.0;
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            let x = b[(i, j)];
            let (p, d) = match target.get(i, j) {
                Sign::Pos => {
                    let h = (margin - x).max(0.0);
                    (h * h, -2.0 * h)
                }
                Sign::Neg => {
                    let h = (x + margin).max(0.0);
                    (h * h, 2.0 * h)
                }
                Sign::Zero => (x * x, 2.0 * x),
            };
            total += p;
            g[(i, j)] = d;
        }
    }
    let du = &g * v.transpose();
    let dv = u.transpose() * &g;
    (total, du, dv)
}

// ---------------------------------------------------------------------------
// search

/// Looks for a rank-r realization of the condensed pattern by penalty
/// descent with random restarts. Restart k draws from `seed ^ k`; the
/// successful restart with the smallest index wins, whatever the thread count.
/// Failure is inconclusive.
pub fn search_realization(a: &SignPattern, r: usize, params: &SearchParams) -> Result<Realization> {
    let report = condense(a);
    let ac = report.condensed.clone();
    if r == 0 {
        return Err(Error::domain("target rank must be positive"));
    }
    if ac.rows() == 0 {
        return Err(Error::domain("the zero pattern has minimum rank 0"));
    }
    if r == 1 {
        return rank_one_realization(&ac, params);
    }
    if r > ac.rows().min(ac.cols()) + 1 {
        return Err(Error::domain(format!(
            "rank {r} exceeds the condensed size {}x{}",
            ac.rows(),
            ac.cols()
        )));
    }
    (0..params.restarts)
        .into_par_iter()
        .find_map_first(|k| run_restart(&ac, r, params, k))
        .ok_or_else(|| {
            Error::NotFound(format!(
                "no rank-{r} realization in {} restarts of {} iterations (inconclusive)",
                params.restarts, params.iters
            ))
        })
}

fn rank_one_realization(ac: &SignPattern, params: &SearchParams) -> Result<Realization> {
    if ac.shape() != (1, 1) {
        return Err(Error::NotFound(
            "the condensed pattern is not 1x1, so no rank-1 realization exists".into(),
        ));
    }
    let s = ac.get(0, 0);
    Ok(Realization {
        r: 1,
        u: vec![vec![1.0]],
        v: vec![vec![1.0]],
        margin: 1.0,
        row_signs: vec![s],
        col_signs: vec![Sign::Pos],
        target: SignPattern::from_strs(&["+"]),
        restart: 0,
    })
    .map(|mut real| {
        real.margin = real.margin.max(params.margin);
        real
    })
}

fn run_restart(ac: &SignPattern, r: usize, params: &SearchParams, k: usize) -> Option<Realization> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ k as u64);
    let (m, n) = ac.shape();
    let mut u = DMatrix::from_fn(m, r, |_, _| rng.gen_range(-1.0..1.0));
    let mut v = DMatrix::from_fn(r, n, |_, _| rng.gen_range(-1.0..1.0));
    // free-entry masks; normal form pins U's first column and V's last row
    let pinned = !params.signatures;
    if pinned {
        for i in 0..m {
            u[(i, 0)] = 1.0;
        }
        for j in 0..n {
            v[(r - 1, j)] = 1.0;
        }
    }
    descend(ac, &mut u, &mut v, params, pinned);
    let (pen, _, _) = penalty_and_gradient(ac, &u, &v, params.margin);
    // loose screen before the exact polish
    if !descent_converged(ac, &(&u * &v), params.margin) && pen > 1e-3 * params.margin * params.margin {
        return None;
    }
    finish(ac, u, v, r, params, pinned, k)
}

fn descent_converged(target: &SignPattern, b: &DMatrix<f64>, margin: f64) -> bool {
    (0..target.rows()).all(|i| {
        (0..target.cols()).all(|j| match target.get(i, j) {
            Sign::Pos => b[(i, j)] >= 0.5 * margin,
            Sign::Neg => b[(i, j)] <= -0.5 * margin,
            Sign::Zero => b[(i, j)].abs() <= 0.1 * margin,
        })
    })
}

/// Adam on the hinge penalty.
fn descend(target: &SignPattern, u: &mut DMatrix<f64>, v: &mut DMatrix<f64>, params: &SearchParams, pinned: bool) {
    let (beta1, beta2, eps) = (0.9, 0.999, 1e-12);
    let (m, n, r) = (u.nrows(), v.ncols(), u.ncols());
    let mut mu = DMatrix::<f64>::zeros(m, r);
    let mut vu = DMatrix::<f64>::zeros(m, r);
    let mut mv = DMatrix::<f64>::zeros(r, n);
    let mut vv = DMatrix::<f64>::zeros(r, n);
    let lr = params.learning_rate;
    for t in 1..=params.iters {
        let (pen, mut du, mut dv) = penalty_and_gradient(target, u, v, params.margin);
        if pen < 1e-14 * params.margin * params.margin {
            break;
        }
        if pinned {
            du.column_mut(0).fill(0.0);
            dv.row_mut(r - 1).fill(0.0);
        }
        let c1 = 1.0 - f64::powi(beta1, t as i32);
        let c2 = 1.0 - f64::powi(beta2, t as i32);
        for (x, (g, (m1, m2))) in u.iter_mut().zip(du.iter().zip(mu.iter_mut().zip(vu.iter_mut()))) {
            *m1 = beta1 * *m1 + (1.0 - beta1) * g;
            *m2 = beta2 * *m2 + (1.0 - beta2) * g * g;
            *x -= lr * (*m1 / c1) / ((*m2 / c2).sqrt() + eps);
        }
        for (x, (g, (m1, m2))) in v.iter_mut().zip(dv.iter().zip(mv.iter_mut().zip(vv.iter_mut()))) {
            *m1 = beta1 * *m1 + (1.0 - beta1) * g;
            *m2 = beta2 * *m2 + (1.0 - beta2) * g * g;
            *x -= lr * (*m1 / c1) / ((*m2 / c2).sqrt() + eps);
        }
    }
}

/// Projects onto the zero constraints, moves to normal form, rescales so the
/// smallest nonzero entry equals the margin and verifies.
fn finish(
    ac: &SignPattern,
    mut u: DMatrix<f64>,
    mut v: DMatrix<f64>,
    r: usize,
    params: &SearchParams,
    pinned: bool,
    restart: usize,
) -> Option<Realization> {
    let (m, n) = ac.shape();
    if !pinned {
        project_zeros(ac, &mut u, &mut v, false)?;
        let nf = normalize_factorization(&u, &v).ok()?;
        u = nf.u;
        v = nf.v;
        let target = ac.signed(&nf.row_signs, &nf.col_signs);
        return polish(target, u, v, r, params, nf.row_signs, nf.col_signs, restart);
    }
    let _ = (m, n);
    polish(
        ac.clone(),
        u,
        v,
        r,
        params,
        vec![Sign::Pos; ac.rows()],
        vec![Sign::Pos; ac.cols()],
        restart,
    )
}

#[allow(clippy::too_many_arguments)]
fn polish(
    target: SignPattern,
    mut u: DMatrix<f64>,
    mut v: DMatrix<f64>,
    r: usize,
    params: &SearchParams,
    row_signs: Vec<Sign>,
    col_signs: Vec<Sign>,
    restart: usize,
) -> Option<Realization> {
    let small_columns = (0..target.cols()).all(|j| target.col_zero_count(j) < r);
    if small_columns {
        let uq: Vec<Vec<f64>> = to_rows(&u);
        for j in 0..target.cols() {
            let col: Vec<f64> = (0..r).map(|k| v[(k, j)]).collect();
            let dep = solve_zero_columns(&uq, &target, j, &col).ok()?;
            for (k, x) in dep.into_iter().enumerate() {
                v[(k, j)] = x;
            }
        }
    } else {
        project_zeros(&target, &mut u, &mut v, true)?;
    }
    // uniform scaling inside normal form: last column of U and the free rows of V
    let b = &u * &v;
    let current = nonzero_margin(&b, &target);
    if !(current.is_finite() && current > 0.0) {
        return None;
    }
    let lambda = params.margin / current;
    for i in 0..u.nrows() {
        u[(i, r - 1)] *= lambda;
    }
    for k in 0..r - 1 {
        for j in 0..v.ncols() {
            v[(k, j)] *= lambda;
        }
    }
    let b = &u * &v;
    let real = Realization {
        r,
        u: to_rows(&u),
        v: to_rows(&v),
        margin: nonzero_margin(&b, &target),
        row_signs,
        col_signs,
        target,
        restart,
    };
    // success: nonzero entries clear margin/2, zero entries within ZERO_TOL
    let ok_signs = (0..real.target.rows()).all(|i| {
        (0..real.target.cols()).all(|j| match real.target.get(i, j) {
            Sign::Pos => b[(i, j)] >= 0.5 * params.margin,
            Sign::Neg => b[(i, j)] <= -0.5 * params.margin,
            Sign::Zero => b[(i, j)].abs() <= ZERO_TOL,
        })
    });
    (ok_signs && real.check().is_ok()).then_some(real)
}

/// Minimum-norm Gauss-Newton steps on the zero entries of `U V`. With
/// `pinned`, U's first column and V's last row stay fixed.
fn project_zeros(target: &SignPattern, u: &mut DMatrix<f64>, v: &mut DMatrix<f64>, pinned: bool) -> Option<()> {
    let (m, n, r) = (u.nrows(), v.ncols(), u.ncols());
    let zeros: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| target.get(i, j).is_zero())
        .collect();
    if zeros.is_empty() {
        return Some(());
    }
    let mut vars: Vec<(bool, usize, usize)> = Vec::new();
    for i in 0..m {
        for k in 0..r {
            if !(pinned && k == 0) {
                vars.push((true, i, k));
            }
        }
    }
    for k in 0..r {
        for j in 0..n {
            if !(pinned && k == r - 1) {
                vars.push((false, k, j));
            }
        }
    }
    for _ in 0..60 {
        let b = &*u * &*v;
        let scale = b.amax().max(1e-300);
        let resid = DMatrix::from_fn(zeros.len(), 1, |z, _| b[zeros[z]]);
        if resid.amax() <= 1e-15 * scale {
            return Some(());
        }
        let jac = DMatrix::from_fn(zeros.len(), vars.len(), |z, x| {
            let (i, j) = zeros[z];
            match vars[x] {
                (true, ii, k) if ii == i => v[(k, j)],
                (false, k, jj) if jj == j => u[(i, k)],
                _ => 0.0,
            }
        });
        // minimum-norm step J^T (J J^T + mu I)^-1 F
        let mut gram = &jac * jac.transpose();
        let mu = 1e-14 * gram.diagonal().amax().max(1e-300);
        for z in 0..gram.nrows() {
            gram[(z, z)] += mu;
        }
        let y = gram.cholesky()?.solve(&resid);
        let step = jac.transpose() * y;
        for (x, &(is_u, a, c)) in vars.iter().enumerate() {
            if is_u {
                u[(a, c)] -= step[x];
            } else {
                v[(a, c)] -= step[x];
            }
        }
    }
    let b = &*u * &*v;
    let worst = zeros.iter().map(|&z| b[z].abs()).fold(0.0, f64::max);
    (worst <= 1e-13 * b.amax().max(1.0)).then_some(())
}

// ---------------------------------------------------------------------------
// dependent entries

/// Scalars the zero-column solve runs over: exact rationals or floats.
pub trait Scalar: Clone {
    fn zero() -> Self;
    fn is_negligible(&self, scale: &Self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn magnitude(&self) -> Self;
    fn gt(&self, o: &Self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_negligible(&self, scale: &Self) -> bool {
        self.abs() <= 1e-12 * scale.max(1.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn magnitude(&self) -> Self {
        self.abs()
    }
    fn gt(&self, o: &Self) -> bool {
        self > o
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn is_negligible(&self, _scale: &Self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn magnitude(&self) -> Self {
        self.abs()
    }
    fn gt(&self, o: &Self) -> bool {
        self > o
    }
}

/// Solves the dependent entries `v_1j, .., v_sj` of column j so that every
/// row i with a zero in column j gets `(U V)_ij = 0`:
/// `sum_{k<s} u_ik v_kj = -sum_{k>=s} u_ik v_kj` (with `v_rj = 1`). Only the
/// first s columns of U enter the coefficient matrix. `v_col` holds the
/// column's current values; its first s entries are ignored.
pub fn solve_zero_columns<T: Scalar>(
    u: &[Vec<T>],
    a: &SignPattern,
    j: usize,
    v_col: &[T],
) -> Result<Vec<T>> {
    let r = v_col.len();
    let rows: Vec<usize> = (0..a.rows()).filter(|&i| a.get(i, j).is_zero()).collect();
    let s = rows.len();
    if s == 0 {
        return Ok(Vec::new());
    }
    if s > r.saturating_sub(1) {
        return Err(Error::Overdetermined {
            column: j + 1,
            zeros: s,
            limit: r.saturating_sub(1),
        });
    }
    let mut mat: Vec<Vec<T>> = rows.iter().map(|&i| u[i][..s].to_vec()).collect();
    let mut rhs: Vec<T> = rows
        .iter()
        .map(|&i| {
            let mut acc = T::zero();
            for k in s..r {
                acc = acc.add(&u[i][k].mul(&v_col[k]));
            }
            T::zero().sub(&acc)
        })
        .collect();
    let scale = mat
        .iter()
        .flatten()
        .fold(T::zero(), |acc, x| if x.magnitude().gt(&acc) { x.magnitude() } else { acc });
    // elimination with partial pivoting
    for c in 0..s {
        let mut piv = c;
        for k in c + 1..s {
            if mat[k][c].magnitude().gt(&mat[piv][c].magnitude()) {
                piv = k;
            }
        }
        if mat[piv][c].is_negligible(&scale) {
            return Err(Error::SingularSystem { column: j + 1 });
        }
        mat.swap(c, piv);
        rhs.swap(c, piv);
        for k in c + 1..s {
            let f = mat[k][c].div(&mat[c][c]);
            for cc in c..s {
                let t = mat[k][cc].sub(&f.mul(&mat[c][cc]));
                mat[k][cc] = t;
            }
            rhs[k] = rhs[k].sub(&f.mul(&rhs[c]));
        }
    }
    let mut x = vec![T::zero(); s];
    for c in (0..s).rev() {
        let mut acc = rhs[c].clone();
        for cc in c + 1..s {
            acc = acc.sub(&mat[c][cc].mul(&x[cc]));
        }
        x[c] = acc.div(&mat[c][c]);
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// certificates

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCertificate {
    pub matrix: Vec<Vec<Rational>>,
    pub rank: usize,
    pub target: SignPattern,
}

impl RationalCertificate {
    /// Independent re-check: exact signs and exact rank.
    pub fn verify(&self) -> Result<()> {
        let (m, n) = self.target.shape();
        if self.matrix.len() != m || self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::domain("certificate shape does not match its target"));
        }
        for i in 0..m {
            for j in 0..n {
                if rational_sign(&self.matrix[i][j]) != self.target.get(i, j) {
                    return Err(Error::domain(format!(
                        "certificate sign mismatch at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let rank = rational_rank(&self.matrix);
        if rank != self.rank {
            return Err(Error::domain(format!(
                "stored rank {} but exact rank {rank}",
                self.rank
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> RationalCertificate {
        let (m, n) = self.target.shape();
        RationalCertificate {
            matrix: (0..n)
                .map(|j| (0..m).map(|i| self.matrix[i][j].clone()).collect())
                .collect(),
            rank: self.rank,
            target: self.target.transpose(),
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "rank": self.rank,
            "pattern": self.target.row_strings(),
            "matrix": self.matrix.iter().map(|row| row.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<RationalCertificate> {
        #[derive(Deserialize)]
        struct Raw {
            rank: usize,
            pattern: Vec<String>,
            matrix: Vec<Vec<Value>>,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        let refs: Vec<&str> = raw.pattern.iter().map(String::as_str).collect();
        let target = SignPattern::parse(&refs.join("\n"))?;
        let matrix = raw
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| match x {
                        Value::String(s) => parse_rational(s),
                        Value::Number(k) => parse_rational(&k.to_string()),
                        other => Err(Error::domain(format!("invalid rational {other}"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Ok(RationalCertificate {
            matrix,
            rank: raw.rank,
            target,
        })
    }
}

/// Exact rank by fraction-free (Bareiss) elimination after clearing
/// denominators row by row.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

pub fn rational_product(u: &[Vec<Rational>], v: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = v.first().map_or(0, Vec::len);
    u.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(v)
                        .fold(<Rational as Zero>::zero(), |acc, (x, vr)| acc + x * &vr[j])
                })
                .collect()
        })
        .collect()
}

pub const DENOMINATOR_BITS: [u32; 3] = [16, 32, 64];
const PERTURB_BUDGET: usize = 64;

/// Per-column zero counts of the condensed pattern must be at most r - 1.
pub fn check_zero_columns(report: &CondensationReport, r: usize) -> Result<()> {
    let ac = &report.condensed;
    for j in 0..ac.cols() {
        let z = ac.col_zero_count(j);
        if z + 1 > r {
            return Err(Error::Overdetermined {
                column: report.kept_cols[j] + 1,
                zeros: z,
                limit: r.saturating_sub(1),
            });
        }
    }
    Ok(())
}

/// Turns a floating realization into an exact rational matrix with the same
/// sign pattern as `a` and rank at most `real.r`.
///
/// Free entries (all of U beyond the ones column, and V's entries below each
/// column's first s_j) are rounded to denominators 2^16, then 2^32, then
/// 2^64; the first s_j entries of every zero-carrying column are solved
/// exactly; a singular coefficient matrix triggers a small random
/// perturbation of the U entries it involves. The result is lifted from the
/// condensed pattern back to `a`.
pub fn rationalize(a: &SignPattern, real: &Realization) -> Result<RationalCertificate> {
    rationalize_seeded(a, real, 0)
}

pub fn rationalize_seeded(a: &SignPattern, real: &Realization, seed: u64) -> Result<RationalCertificate> {
    let report = condense(a);
    let r = real.r;
    check_zero_columns(&report, r)?;
    let ac = &report.condensed;
    if real.target != ac.signed(&real.row_signs, &real.col_signs) {
        return Err(Error::domain("realization was not produced for this pattern"));
    }
    real.check()?;
    let target = &real.target;
    let (m, n) = target.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for &bits in &DENOMINATOR_BITS {
        let cap = 1u128 << bits;
        let round = |x: f64| rational_round(x, cap);
        let mut u: Vec<Vec<Rational>> = real
            .u
            .iter()
            .map(|row| row.iter().map(|&x| round(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut v: Vec<Vec<Rational>> = real
            .v
            .iter()
            .map(|row| row.iter().map(|&x| round(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for row in u.iter_mut() {
            row[0] = Rational::one();
        }
        for x in v[r - 1].iter_mut() {
            *x = Rational::one();
        }

        let mut solved = false;
        for _ in 0..PERTURB_BUDGET {
            match solve_all_columns(&u, &mut v, target, r) {
                Ok(()) => {
                    solved = true;
                    break;
                }
                Err(Error::SingularSystem { column }) => {
                    let j = column - 1;
                    let rows: Vec<usize> = (0..m).filter(|&i| target.get(i, j).is_zero()).collect();
                    let s = rows.len();
                    let denom = BigInt::one() << (bits + 8);
                    for &i in &rows {
                        for k in 1..s.min(r) {
                            let nudge: i64 = rng.gen_range(-256..=256);
                            u[i][k] += Rational::new(BigInt::from(nudge), denom.clone());
                        }
                    }
                }
                Err(e) => return Err(e),
            }
        }
        if !solved {
            continue;
        }
        let prod = rational_product(&u, &v);
        let exact = (0..m).all(|i| (0..n).all(|j| rational_sign(&prod[i][j]) == target.get(i, j)));
        if !exact {
            continue;
        }
        // undo the signatures, then restore deleted lines
        let unsigned: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s = real.row_signs[i] * real.col_signs[j];
                        if s == Sign::Neg {
                            -prod[i][j].clone()
                        } else {
                            prod[i][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let lifted = report.lift(&unsigned, <Rational as Zero>::zero());
        let rank = rational_rank(&lifted);
        debug_assert!(rank <= r);
        let cert = RationalCertificate {
            matrix: lifted,
            rank,
            target: a.clone(),
        };
        cert.verify()?;
        return Ok(cert);
    }
    Err(Error::PrecisionExhausted {
        max_bits: *DENOMINATOR_BITS.last().expect("nonempty"),
    })
}

fn solve_all_columns(u: &[Vec<Rational>], v: &mut [Vec<Rational>], target: &SignPattern, r: usize) -> Result<()> {
    for j in 0..target.cols() {
        let col: Vec<Rational> = (0..r).map(|k| v[k][j].clone()).collect();
        let dep = solve_zero_columns(u, target, j, &col)?;
        for (k, x) in dep.into_iter().enumerate() {
            v[k][j] = x;
        }
    }
    Ok(())
}

/// Row version: `real` realizes the transpose of `a`; the returned
/// certificate is for `a` itself.
pub fn rationalize_transposed(a: &SignPattern, real_of_transpose: &Realization) -> Result<RationalCertificate> {
    let cert = rationalize(&a.transpose(), real_of_transpose)?;
    let t = cert.transpose();
    t.verify()?;
    Ok(t)
}

// ---------------------------------------------------------------------------
// direct representation

/// Points `u_i` and hyperplane constants `v_j` with `sgn(u_i + v_j) = a_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineWitness {
    pub points: Vec<Rational>,
    pub offsets: Vec<Rational>,
}

impl LineWitness {
    pub fn realizes(&self, a: &SignPattern) -> bool {
        (0..a.rows()).all(|i| {
            (0..a.cols()).all(|j| rational_sign(&(&self.points[i] + &self.offsets[j])) == a.get(i, j))
        })
    }
}

#[derive(Clone, Debug)]
pub enum DirectRepresentation {
    Line(LineWitness),
    Realization(Box<Realization>),
}

#[derive(Clone, Debug)]
pub enum DirectVerdict {
    Yes(DirectRepresentation),
    No,
    Unknown,
}

impl DirectVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, DirectVerdict::Yes(_))
    }
}

/// Whether a minimum-rank normal-form factorization exists with identity
/// signatures. Rank 2 is decided exactly; higher ranks are searched and never
/// answer a false "no".
pub fn has_direct_representation(a: &SignPattern, r: usize, params: &SearchParams) -> Result<DirectVerdict> {
    if r == 2 {
        if !crate::pattern::is_mr2(a)? {
            return Ok(DirectVerdict::No);
        }
        return Ok(match threshold_witness(a) {
            Some(w) => DirectVerdict::Yes(DirectRepresentation::Line(w)),
            None => DirectVerdict::No,
        });
    }
    if r < 2 {
        return Err(Error::domain("direct representations start at rank 2"));
    }
    let ac = condense(a).condensed;
    if ac != *a {
        return Err(Error::domain("direct representation is defined for condensed patterns"));
    }
    let params = SearchParams {
        signatures: false,
        ..params.clone()
    };
    match search_realization(a, r, &params) {
        Ok(real) => Ok(DirectVerdict::Yes(DirectRepresentation::Realization(Box::new(real)))),
        Err(Error::NotFound(_)) => Ok(DirectVerdict::Unknown),
        Err(e) => Err(e),
    }
}

/// Orders rows (points) and columns (thresholds) on a line: `+` puts the
/// threshold below the point, `-` above, `0` equal. Feasible iff the merged
/// order graph is acyclic and identity signatures already give a staircase.
pub fn threshold_witness(a: &SignPattern) -> Option<LineWitness> {
    let (m, n) = a.shape();
    staircase_signing(a, false)?;
    // union rows with columns through zeros
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..m {
        for j in 0..n {
            if a.get(i, j).is_zero() {
                let (x, y) = (find(&mut parent, i), find(&mut parent, m + j));
                parent[x] = y;
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let (ri, cj) = (find(&mut parent, i), find(&mut parent, m + j));
            match a.get(i, j) {
                Sign::Pos => edges.push((cj, ri)),
                Sign::Neg => edges.push((ri, cj)),
                Sign::Zero => {}
            }
        }
    }
    let mut indeg = vec![0usize; m + n];
    let mut adj = vec![Vec::new(); m + n];
    for &(x, y) in &edges {
        if x == y {
            return None;
        }
        adj[x].push(y);
        indeg[y] += 1;
    }
    let reps: Vec<usize> = (0..m + n).filter(|&x| find(&mut parent, x) == x).collect();
    let mut ready: Vec<usize> = reps.iter().copied().filter(|&x| indeg[x] == 0).collect();
    let mut pos = vec![0i64; m + n];
    let mut placed = 0;
    let mut level = 0i64;
    while let Some(x) = ready.pop() {
        pos[x] = level;
        level += 1;
        placed += 1;
        for &y in &adj[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                ready.push(y);
            }
        }
    }
    if placed != reps.len() {
        return None;
    }
    let points = (0..m)
        .map(|i| Rational::from_integer(BigInt::from(pos[find(&mut parent, i)])))
        .collect();
    let offsets = (0..n)
        .map(|j| Rational::from_integer(BigInt::from(-pos[find(&mut parent, m + j)])))
        .collect();
    let w = LineWitness { points, offsets };
    w.realizes(a).then_some(w)
}

/// Exact copy of a float realization (each float taken at its binary value).
pub fn exact_factors(real: &Realization) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
    let conv = |m: &[Vec<f64>]| -> Result<Vec<Vec<Rational>>> {
        m.iter()
            .map(|row| row.iter().map(|&x| rational_from_f64(x)).collect())
            .collect()
    };
    Ok((conv(&real.u)?, conv(&real.v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn zero_column_examples() {
        let a = SignPattern::from_strs(&["0"]);
        let u = vec![vec![1.0, 2.0, 5.0]];
        let dep = solve_zero_columns(&u, &a, 0, &[0.0, 3.0, 1.0]).unwrap();
        assert_eq!(dep, vec![-11.0]);

        let a = SignPattern::from_strs(&["0", "0"]);
        let u = vec![vec![int(1), int(0), int(0)], vec![int(1), int(1), int(1)]];
        let dep = solve_zero_columns(&u, &a, 0, &[int(7), int(7), int(1)]).unwrap();
        assert_eq!(dep, vec![int(0), int(-1)]);

        let u = vec![vec![int(1), int(2), int(0)], vec![int(1), int(2), int(1)]];
        assert!(matches!(
            solve_zero_columns(&u, &a, 0, &[int(0), int(0), int(1)]),
            Err(Error::SingularSystem { column: 1 })
        ));

        let a = SignPattern::from_strs(&["0", "0", "0"]);
        let u = vec![vec![int(1), int(0), int(0)]; 3];
        assert!(matches!(
            solve_zero_columns(&u, &a, 0, &[int(0), int(0), int(1)]),
            Err(Error::Overdetermined { column: 1, zeros: 3, limit: 2 })
        ));
    }

    #[test]
    fn rank_examples() {
        let id: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect();
        assert_eq!(rational_rank(&id), 3);
        let outer: Vec<Vec<Rational>> = [1, 2, 3].iter().map(|&a| [4, 5].iter().map(|&b| int(a * b)).collect()).collect();
        assert_eq!(rational_rank(&outer), 1);
        assert_eq!(rational_rank(&[]), 0);
        let skip = vec![vec![int(0), int(1), int(2)], vec![int(0), int(2), int(4)], vec![int(0), rat(1, 3), int(1)]];
        assert_eq!(rational_rank(&skip), 2);
    }

    #[test]
    fn normal_form_identity_when_admissible() {
        let u0 = DMatrix::from_row_slice(3, 2, &[2.0, 1.0, 1.0, -1.0, 0.5, 3.0]);
        let v0 = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, -1.0, 1.0, 4.0, 2.0]);
        let nf = normalize_factorization(&u0, &v0).unwrap();
        assert_eq!(nf.rotation_attempts, 0);
        assert!(nf.row_signs.iter().chain(&nf.col_signs).all(|&s| s == Sign::Pos));

        let u1 = DMatrix::from_row_slice(3, 2, &[2.0, 1.0, -1.0, -1.0, 0.5, 3.0]);
        let nf = normalize_factorization(&u1, &v0).unwrap();
        assert_eq!(nf.rotation_attempts, 0);
        assert_eq!(nf.row_signs[1], Sign::Neg);
        let b = &u1 * &v0;
        let diff = &nf.u * &nf.v - nf.rescale(&b);
        assert!(diff.amax() <= 1e-12);
    }

    #[test]
    fn normal_form_rotates_zero_leading_entries() {
        let u0 = DMatrix::from_row_slice(3, 2, &[0.0, 1.0, 1.0, 1.0, 2.0, -1.0]);
        let v0 = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, -1.0, 0.0, 4.0, 2.0]);
        let nf = normalize_factorization(&u0, &v0).unwrap();
        assert!(nf.rotation_attempts > 0);
        assert!(nf.u.column(0).iter().all(|&x| x == 1.0));
        assert!(nf.v.row(1).iter().all(|&x| x == 1.0));
        let diff = &nf.u * &nf.v - nf.rescale(&(&u0 * &v0));
        assert!(diff.amax() <= 1e-9 * (&u0 * &v0).amax());
    }

    #[test]
    fn normal_form_rank_mismatch() {
        let u0 = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let v0 = DMatrix::identity(2, 2);
        assert!(matches!(
            normalize_factorization(&u0, &v0),
            Err(Error::RankMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn threshold_witness_examples() {
        let a = SignPattern::from_strs(&["++", "-+"]);
        let w = threshold_witness(&a).unwrap();
        assert!(w.realizes(&a));
        let given = LineWitness {
            points: vec![int(1), int(-1)],
            offsets: vec![int(0), int(2)],
        };
        assert!(given.realizes(&a));
        assert!(threshold_witness(&SignPattern::from_strs(&["+++", "-++", "+0-"])).is_none());
    }

    #[test]
    fn search_rank_one() {
        let p = SearchParams::default();
        assert!(matches!(
            search_realization(&SignPattern::from_strs(&["+0", "0+"]), 1, &p),
            Err(Error::NotFound(_))
        ));
        let real = search_realization(&SignPattern::from_strs(&["--", "--"]), 1, &p).unwrap();
        assert_eq!(real.row_signs, vec![Sign::Neg]);
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = RationalCertificate {
            matrix: vec![vec![rat(1, 2), int(0)], vec![int(-3), int(0)]],
            rank: 1,
            target: SignPattern::from_strs(&["+0", "-0"]),
        };
        cert.verify().unwrap();
        let back = RationalCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        let wrong = RationalCertificate { rank: 2, ..cert };
        assert!(wrong.verify().is_err());
    }
}
