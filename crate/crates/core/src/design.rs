//! Design matrices, supports and the coherence toolkit.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, op_norm, sym_eig, DenseMatrix};
use crate::rng::{self, Rng};

/// An `n × p` matrix whose columns have unit ℓ2 norm, with its coherence
/// and operator norm cached.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    data: DenseMatrix,
    mu: Option<f64>,
    opnorm: f64,
}

impl DesignMatrix {
    /// Validates (or, with `normalize`, rescales) the columns of `m`.
    ///
    /// Without `normalize`, every column must already have norm within
    /// `1e-8` of one; such columns are then rescaled exactly.
    pub fn from_raw(m: DenseMatrix, normalize: bool) -> Result<Self> {
        let (n, p) = m.shape();
        let mut data = m;
        for j in 0..p {
            let norm = norm2(&data.column(j));
            if normalize {
                if norm == 0.0 {
                    return Err(Error::ZeroColumn { column: j + 1 });
                }
            } else if (norm - 1.0).abs() > 1e-8 {
                return Err(Error::Validation(format!(
                    "column {} has norm {norm}; pass normalize to rescale",
                    j + 1
                )));
            }
            for i in 0..n {
                data[(i, j)] /= norm;
            }
        }
        let mu = (p >= 2).then(|| max_abs_inner_product(&data));
        let opnorm = op_norm(&data);
        Ok(Self { data, mu, opnorm })
    }

    pub fn n(&self) -> usize {
        self.data.rows()
    }

    pub fn p(&self) -> usize {
        self.data.cols()
    }

    pub fn data(&self) -> &DenseMatrix {
        &self.data
    }

    /// `μ = max_{k<l} |⟨X_k, X_l⟩|`. Undefined (an error) for `p = 1`.
    pub fn coherence(&self) -> Result<f64> {
        self.mu.ok_or(Error::UndefinedCoherence)
    }

    pub fn opnorm(&self) -> f64 {
        self.opnorm
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.data.column(j)
    }

    pub fn columns(&self, support: &SupportSet) -> DenseMatrix {
        self.data.select_columns(support.indices())
    }
}

fn max_abs_inner_product(m: &DenseMatrix) -> f64 {
    let cols: Vec<Vec<f64>> = (0..m.cols()).map(|j| m.column(j)).collect();
    let mut mu: f64 = 0.0;
    for k in 0..cols.len() {
        for l in k + 1..cols.len() {
            mu = mu.max(dot(&cols[k], &cols[l]).abs());
        }
    }
    mu.min(1.0)
}

pub fn coherence(x: &DesignMatrix) -> Result<f64> {
    x.coherence()
}

/// Sorted, duplicate-free subset of `{0, …, p−1}`.
///
/// Stored zero-based; every external format (JSON, CLI) uses the one-based
/// indices `{1, …, p}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    indices: Vec<usize>,
    p: usize,
}

impl SupportSet {
    pub fn new(p: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("support contains duplicate indices".into()));
        }
        if let Some(&last) = indices.last() {
            if last >= p {
                return Err(Error::Validation(format!(
                    "support index {} is outside 1..={p}",
                    last + 1
                )));
            }
        }
        Ok(Self { indices, p })
    }

    pub fn from_one_based(p: usize, indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::Validation("support indices are one-based".into()));
        }
        Self::new(p, indices.iter().map(|i| i - 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.p).filter(|&i| !self.contains(i)).collect()
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.one_based().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

impl Serialize for SupportSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// `X_Tᵗ X_T` for a nonempty support.
pub fn gram(x: &DesignMatrix, t: &SupportSet) -> Result<DenseMatrix> {
    if t.is_empty() {
        return Err(Error::EmptySupport);
    }
    if t.p() != x.p() {
        return Err(Error::Shape(format!(
            "support over {} columns used with a design of {} columns",
            t.p(),
            x.p()
        )));
    }
    Ok(x.columns(t).gram())
}

/// `‖X_Tᵗ X_T − I‖`, the largest eigenvalue deviation of the Gram matrix.
pub fn gram_deviation(x: &DesignMatrix, t: &SupportSet) -> Result<f64> {
    let g = gram(x, t)?;
    let eig = sym_eig(&g)?;
    Ok(eig
        .eigenvalues
        .iter()
        .fold(0.0, |m: f64, l| m.max((l - 1.0).abs())))
}

/// Gershgorin's disc bound `μ(s − 1)` on `‖X_Tᵗ X_T − I‖` for `|T| = s`.
pub fn gershgorin_bound(mu: f64, s: usize) -> f64 {
    debug_assert!(s >= 1);
    mu * (s.saturating_sub(1)) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GershgorinCheck {
    pub exact: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn gershgorin_check(x: &DesignMatrix, t: &SupportSet) -> Result<GershgorinCheck> {
    let exact = gram_deviation(x, t)?;
    let mu = x.coherence().unwrap_or(0.0);
    let bound = gershgorin_bound(mu, t.len());
    Ok(GershgorinCheck {
        exact,
        bound,
        holds: exact <= bound + 1e-10,
    })
}

/// Uniform size-`s` subset of `{0, …, p−1}` by a partial Fisher–Yates
/// shuffle over `rng`.
pub fn sample_support_with(rng: &mut Rng, p: usize, s: usize) -> Result<SupportSet> {
    if s == 0 || s > p {
        return Err(Error::Validation(format!(
            "support size {s} must lie in 1..={p}"
        )));
    }
    let mut pool: Vec<usize> = (0..p).collect();
    for i in 0..s {
        let j = rng.random_range(i..p);
        pool.swap(i, j);
    }
    pool.truncate(s);
    SupportSet::new(p, pool)
}

pub fn sample_support(p: usize, s: usize, seed: u64) -> Result<SupportSet> {
    sample_support_with(&mut rng::seeded(seed), p, s)
}

/// Number of size-`s` subsets of a `p`-set, saturating at `u64::MAX`.
pub fn binomial(p: usize, s: usize) -> u64 {
    if s > p {
        return 0;
    }
    let s = s.min(p - s);
    let mut acc: u128 = 1;
    for i in 0..s {
        acc = acc * (p - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Every size-`s` support of `{0, …, p−1}` in lexicographic order.
pub fn all_supports(p: usize, s: usize) -> impl Iterator<Item = SupportSet> {
    let mut current: Option<Vec<usize>> = (s >= 1 && s <= p).then(|| (0..s).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut k = s;
        loop {
            if k == 0 {
                current = None;
                break;
            }
            k -= 1;
            if next[k] < p - s + k {
                next[k] += 1;
                for i in k + 1..s {
                    next[i] = next[i - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(SupportSet { indices: out, p })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Gaussian,
    Sphere,
    IdentityAugmented,
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Self::Gaussian),
            "sphere" => Ok(Self::Sphere),
            "identity-augmented" => Ok(Self::IdentityAugmented),
            other => Err(Error::Parse(format!("unknown generator kind '{other}'"))),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Gaussian => "gaussian",
            Self::Sphere => "sphere",
            Self::IdentityAugmented => "identity-augmented",
        })
    }
}

/// `kind:n:p:seed`, e.g. `gaussian:64:256:1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "generator spec '{s}' is not of the form kind:n:p:seed"
            )));
        }
        let num = |x: &str, what: &str| {
            x.parse::<u64>()
                .map_err(|_| Error::Parse(format!("generator {what} '{x}' is not an integer")))
        };
        Ok(Self {
            kind: parts[0].parse()?,
            n: num(parts[1], "n")? as usize,
            p: num(parts[2], "p")? as usize,
            seed: num(parts[3], "seed")?,
        })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.kind, self.n, self.p, self.seed)
    }
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<DesignMatrix> {
        generate(self.kind, self.n, self.p, self.seed)
    }
}

/// Reproducible test designs.
///
/// * `Gaussian`: i.i.d. standard normal entries drawn row by row, then
///   column-normalised.
/// * `Sphere`: each column drawn independently and uniformly on the unit
///   sphere.
/// * `IdentityAugmented`: `[I_n | G]` with `G` a normalised Gaussian block of
///   `p − n` columns; requires `p ≥ n`.
pub fn generate(kind: GeneratorKind, n: usize, p: usize, seed: u64) -> Result<DesignMatrix> {
    if n == 0 || p == 0 {
        return Err(Error::Validation("generator dimensions must be positive".into()));
    }
    let mut rng = rng::seeded(seed);
    let m = match kind {
        GeneratorKind::Gaussian => {
            DenseMatrix::from_fn(n, p, |_, _| rng.sample::<f64, _>(StandardNormal))
        }
        GeneratorKind::Sphere => {
            let cols: Vec<Vec<f64>> = (0..p)
                .map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
                .collect();
            DenseMatrix::from_fn(n, p, |i, j| cols[j][i])
        }
        GeneratorKind::IdentityAugmented => {
            if p < n {
                return Err(Error::Validation(format!(
                    "identity-augmented design needs p >= n, got n = {n}, p = {p}"
                )));
            }
            let extra: Vec<Vec<f64>> = (n..p)
                .map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
                .collect();
            DenseMatrix::from_fn(n, p, |i, j| {
                if j < n {
                    if i == j { 1.0 } else { 0.0 }
                } else {
                    extra[j - n][i]
                }
            })
        }
    };
    DesignMatrix::from_raw(m, true)
}

/// Parses the matrix CSV format: one row per line, comma-separated decimal
/// floats, no header. Blank lines are ignored.
pub fn parse_csv(text: &str) -> Result<DenseMatrix> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|f| {
                f.trim().parse::<f64>().map_err(|_| {
                    Error::Parse(format!("line {}: '{}' is not a number", lineno + 1, f.trim()))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("matrix CSV is empty".into()));
    }
    DenseMatrix::from_rows(&rows)
}

pub fn read_csv(path: &Path) -> Result<DenseMatrix> {
    parse_csv(&std::fs::read_to_string(path)?)
}

/// Writes shortest round-trip decimals, so parsing the output reproduces the
/// matrix bit for bit.
pub fn to_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(m: &DenseMatrix, path: &Path) -> Result<()> {
    std::fs::write(path, to_csv(m))?;
    Ok(())
}
