//! The `(S, T)` presentation of a modular tensor category.
//!
//! `ModularData` stores the *normalized* unitary S-matrix (the unnormalized
//! `s~ = S / S_{00}` is always derived, never stored), the diagonal of the
//! categorical T-matrix as a list of twists, and optionally a fusion tensor.
//! When a fusion tensor is present it must agree entrywise with the Verlinde
//! fusion recomputed from S; when absent it is recomputed on demand.
//!
//! Axiom validation is exact: symmetry, unitarity, pseudounitarity of the
//! unit row, twists being roots of unity, Verlinde integrality, the twist
//! equation `theta_a theta_b s~_ab = sum_c N_ab^c theta_c d_c`, and the
//! modular relation `(ST)^3 = lambda S^2` with `lambda = tau_1 S_{00}`.
//! Only sign decisions on exactly-real scalars use a numeric margin.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::scalar::Cyclotomic;
use crate::Error;

pub type Matrix = Vec<Vec<Cyclotomic>>;

// ---------------------------------------------------------------------------
// exact matrix helpers
// ---------------------------------------------------------------------------

pub(crate) fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix, Error> {
    let n = a.len();
    let mut out = vec![vec![Cyclotomic::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Cyclotomic::zero();
            for (k, bk) in b.iter().enumerate() {
                acc = acc.add(&a[i][k].mul(&bk[j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub(crate) fn conj_transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[j][i].conj()).collect())
        .collect()
}

pub(crate) fn is_identity(a: &Matrix) -> Option<(usize, usize)> {
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let ok = if i == j { x.is_one() } else { x.is_zero() };
            if !ok {
                return Some((i, j));
            }
        }
    }
    None
}

pub(crate) fn mat_scale(a: &Matrix, s: &Cyclotomic) -> Result<Matrix, Error> {
    a.iter()
        .map(|row| row.iter().map(|x| x.mul(s).map_err(Error::from)).collect())
        .collect()
}

pub(crate) fn mat_eq(a: &Matrix, b: &Matrix) -> bool {
    a == b
}

/// `Some(sigma)` when the matrix is a permutation matrix, `sigma[i] = j`
/// for the 1 in row `i`.
pub fn as_permutation(a: &Matrix) -> Option<Vec<usize>> {
    let n = a.len();
    let mut perm = vec![usize::MAX; n];
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.is_one() {
                if perm[i] != usize::MAX {
                    return None;
                }
                perm[i] = j;
            } else if !x.is_zero() {
                return None;
            }
        }
        if perm[i] == usize::MAX {
            return None;
        }
    }
    let mut seen = vec![false; n];
    for &j in &perm {
        if seen[j] {
            return None;
        }
        seen[j] = true;
    }
    Some(perm)
}

// ---------------------------------------------------------------------------
// fusion tensor
// ---------------------------------------------------------------------------

/// Nonnegative integer fusion multiplicities `N_ab^c`, index order `[a][b][c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTensor {
    rank: usize,
    coeffs: Vec<u64>,
}

impl FusionTensor {
    pub fn new(rank: usize) -> Self {
        FusionTensor { rank, coeffs: vec![0; rank * rank * rank] }
    }

    pub fn from_coeffs(rank: usize, coeffs: Vec<u64>) -> Result<Self, Error> {
        if coeffs.len() != rank * rank * rank {
            return Err(Error::input("fusion tensor has wrong length"));
        }
        Ok(FusionTensor { rank, coeffs })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> u64 {
        self.coeffs[(a * self.rank + b) * self.rank + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: u64) {
        self.coeffs[(a * self.rank + b) * self.rank + c] = v;
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// First violation of `N_{unit,a}^b = delta_ab`, if any.
    pub fn unit_row_defect(&self, unit: usize) -> Option<(usize, usize)> {
        for a in 0..self.rank {
            for b in 0..self.rank {
                let want = u64::from(a == b);
                if self.get(unit, a, b) != want {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Dual permutation: `dual[a]` is the unique `c` with `N_ac^unit = 1`.
    pub fn duals(&self, unit: usize) -> Result<Vec<usize>, Error> {
        let mut out = Vec::with_capacity(self.rank);
        for a in 0..self.rank {
            let mut dual = None;
            for c in 0..self.rank {
                match self.get(a, c, unit) {
                    0 => {}
                    1 if dual.is_none() => dual = Some(c),
                    _ => {
                        return Err(Error::NotModular(format!(
                            "label {a} has no unique dual in the fusion ring"
                        )))
                    }
                }
            }
            out.push(dual.ok_or_else(|| {
                Error::NotModular(format!("label {a} has no dual in the fusion ring"))
            })?);
        }
        Ok(out)
    }

    /// The unit of the fusion ring: the unique `u` with `N_ua^b = delta_ab`.
    pub fn find_unit(&self) -> Option<usize> {
        (0..self.rank).find(|&u| self.unit_row_defect(u).is_none())
    }

    /// First violation of commutativity, if any.
    pub fn commutativity_defect(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.rank {
            for b in 0..self.rank {
                for c in 0..self.rank {
                    if self.get(a, b, c) != self.get(b, a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First violation of associativity
    /// `sum_e N_ab^e N_ec^d = sum_f N_bc^f N_af^d`, if any.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.rank;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs: u64 = (0..n).map(|e| self.get(a, b, e) * self.get(e, c, d)).sum();
                        let rhs: u64 = (0..n).map(|f| self.get(b, c, f) * self.get(a, f, d)).sum();
                        if lhs != rhs {
                            return Some((a, b, c, d));
                        }
                    }
                }
            }
        }
        None
    }
}

// ---------------------------------------------------------------------------
// modular data
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ModularData {
    pub labels: Vec<String>,
    pub unit: usize,
    pub s: Matrix,
    pub twists: Vec<Cyclotomic>,
    pub fusion: Option<FusionTensor>,
}

/// One axiom check with an optional witness for a failure.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Per-axiom pass/fail listing produced by [`ModularData::validate`].
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push_pass(&mut self, name: &'static str) {
        self.checks.push(Check { name, passed: true, witness: None });
    }

    pub fn push_fail(&mut self, name: &'static str, witness: impl Into<String>) {
        self.checks.push(Check { name, passed: false, witness: Some(witness.into()) });
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .map(|c| match (&c.passed, &c.witness) {
                (true, _) => format!("PASS {}", c.name),
                (false, Some(w)) => format!("FAIL {} ({w})", c.name),
                (false, None) => format!("FAIL {}", c.name),
            })
            .collect();
        out.extend(self.warnings.iter().map(|w| format!("WARN {w}")));
        out
    }
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Shape and index sanity; violations are input errors, distinct from
    /// validation failures.
    pub fn check_shape(&self) -> Result<(), Error> {
        let n = self.rank();
        if n == 0 {
            return Err(Error::input("rank must be at least 1"));
        }
        if self.unit >= n {
            return Err(Error::input(format!("unit index {} out of range", self.unit)));
        }
        if self.s.len() != n || self.s.iter().any(|row| row.len() != n) {
            return Err(Error::input("S must be a square rank x rank matrix"));
        }
        if self.twists.len() != n {
            return Err(Error::input("twists length must equal rank"));
        }
        for (i, a) in self.labels.iter().enumerate() {
            for b in self.labels.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::input(format!("duplicate label {a:?}")));
                }
            }
        }
        if let Some(f) = &self.fusion {
            if f.rank() != n {
                return Err(Error::input("fusion tensor rank mismatch"));
            }
        }
        Ok(())
    }

    fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Unnormalized S-matrix `s~ = S / S_{unit,unit}`.
    pub fn s_tilde(&self) -> Result<Matrix, Error> {
        let s00 = &self.s[self.unit][self.unit];
        if s00.is_zero() {
            return Err(Error::NotModular("S[unit][unit] = 0".into()));
        }
        let inv = s00.inv().map_err(Error::from)?;
        mat_scale(&self.s, &inv)
    }

    /// Quantum dimensions `d_a = S_{a,unit} / S_{unit,unit}`.
    pub fn quantum_dims(&self) -> Result<Vec<Cyclotomic>, Error> {
        let s00 = &self.s[self.unit][self.unit];
        if s00.is_zero() {
            return Err(Error::NotModular("S[unit][unit] = 0".into()));
        }
        (0..self.rank())
            .map(|a| self.s[a][self.unit].div(s00).map_err(Error::from))
            .collect()
    }

    /// Global dimension `sum_a d_a^2 = 1 / S_{unit,unit}^2`.
    pub fn global_dim(&self) -> Result<Cyclotomic, Error> {
        let dims = self.quantum_dims()?;
        let mut acc = Cyclotomic::zero();
        for d in &dims {
            acc = acc.add(&d.mul(d)?)?;
        }
        Ok(acc)
    }

    /// Degree-`n` Gauss sum `tau_n = sum_a d_a^2 theta_a^n`.
    pub fn gauss_sum(&self, degree: i64) -> Result<Cyclotomic, Error> {
        if degree == 0 {
            return Err(Error::input("gauss sum degree must be nonzero"));
        }
        self.gauss_sum_over(0..self.rank(), degree)
    }

    /// Gauss sum restricted to a subset of the labels.
    pub fn gauss_sum_over(
        &self,
        indices: impl IntoIterator<Item = usize>,
        degree: i64,
    ) -> Result<Cyclotomic, Error> {
        if degree == 0 {
            return Err(Error::input("gauss sum degree must be nonzero"));
        }
        let dims = self.quantum_dims()?;
        let mut acc = Cyclotomic::zero();
        for a in indices {
            let d2 = dims[a].mul(&dims[a])?;
            let t = self.twists[a].pow(degree)?;
            acc = acc.add(&d2.mul(&t)?)?;
        }
        Ok(acc)
    }

    /// Verlinde formula `N_ab^c = sum_x S_ax S_bx conj(S_cx) / S_{unit,x}`.
    /// Errors unless every coefficient is an exact nonnegative integer.
    pub fn verlinde_fusion(&self) -> Result<FusionTensor, Error> {
        let n = self.rank();
        for x in 0..n {
            if self.s[self.unit][x].is_zero() {
                return Err(Error::NotModular(format!(
                    "S[unit][{}] = 0, Verlinde sum undefined",
                    self.label(x)
                )));
            }
        }
        let inv_unit_row: Vec<Cyclotomic> = (0..n)
            .map(|x| self.s[self.unit][x].inv().map_err(Error::from))
            .collect::<Result<_, _>>()?;
        let mut out = FusionTensor::new(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut acc = Cyclotomic::zero();
                    for (x, inv) in inv_unit_row.iter().enumerate() {
                        let t = self.s[a][x]
                            .mul(&self.s[b][x])?
                            .mul(&self.s[c][x].conj())?
                            .mul(inv)?;
                        acc = acc.add(&t)?;
                    }
                    let int = acc.as_integer().ok_or_else(|| {
                        Error::NotModular(format!(
                            "N[{}][{}][{}] = {} is not an integer",
                            self.label(a),
                            self.label(b),
                            self.label(c),
                            acc
                        ))
                    })?;
                    if int.is_negative() {
                        return Err(Error::NotModular(format!(
                            "N[{}][{}][{}] = {} is negative",
                            self.label(a),
                            self.label(b),
                            self.label(c),
                            int
                        )));
                    }
                    out.set(a, b, c, int.to_u64().ok_or_else(|| {
                        Error::NotModular("fusion coefficient overflows u64".into())
                    })?);
                }
            }
        }
        Ok(out)
    }

    /// The fusion tensor: stored if present, recomputed via Verlinde if not.
    pub fn fusion_or_verlinde(&self) -> Result<FusionTensor, Error> {
        match &self.fusion {
            Some(f) => Ok(f.clone()),
            None => self.verlinde_fusion(),
        }
    }

    /// Exact validation of the modular axioms. Shape violations are `Err`;
    /// axiom failures are recorded in the report.
    pub fn validate(&self) -> Result<ValidationReport, Error> {
        self.check_shape()?;
        let n = self.rank();
        let mut report = ValidationReport::default();

        // symmetry
        let mut sym = None;
        'sym: for a in 0..n {
            for b in a + 1..n {
                if self.s[a][b] != self.s[b][a] {
                    sym = Some((a, b));
                    break 'sym;
                }
            }
        }
        match sym {
            None => report.push_pass("s-symmetric"),
            Some((a, b)) => report.push_fail(
                "s-symmetric",
                format!("S[{}][{}] != S[{}][{}]", self.label(a), self.label(b), self.label(b), self.label(a)),
            ),
        }

        // unitarity
        let prod = mat_mul(&self.s, &conj_transpose(&self.s))?;
        match is_identity(&prod) {
            None => report.push_pass("s-unitary"),
            Some((i, j)) => report.push_fail(
                "s-unitary",
                format!("(S conj(S)^T)[{}][{}] = {}", self.label(i), self.label(j), prod[i][j]),
            ),
        }

        // pseudounitarity: S[unit][a] real and positive
        let mut pos = None;
        for a in 0..n {
            if self.s[self.unit][a].real_sign() != Some(1) {
                pos = Some(a);
                break;
            }
        }
        match pos {
            None => report.push_pass("unit-row-positive"),
            Some(a) => report.push_fail(
                "unit-row-positive",
                format!("S[unit][{}] = {}", self.label(a), self.s[self.unit][a]),
            ),
        }

        // twists are roots of unity
        let mut tw = None;
        for (a, t) in self.twists.iter().enumerate() {
            if !t.is_root_of_unity() {
                tw = Some(a);
                break;
            }
        }
        match tw {
            None => report.push_pass("twists-roots-of-unity"),
            Some(a) => report.push_fail(
                "twists-roots-of-unity",
                format!("theta[{}] = {}", self.label(a), self.twists[a]),
            ),
        }

        // Verlinde integrality (+ unit row) and optional fusion match
        let verlinde = self.verlinde_fusion();
        let fusion = match verlinde {
            Ok(f) => {
                match f.unit_row_defect(self.unit) {
                    None => report.push_pass("verlinde-integral"),
                    Some((a, b)) => report.push_fail(
                        "verlinde-integral",
                        format!(
                            "unit row: N[unit][{}][{}] != delta",
                            self.label(a),
                            self.label(b)
                        ),
                    ),
                }
                if let Some(stored) = &self.fusion {
                    if stored == &f {
                        report.push_pass("fusion-matches-verlinde");
                    } else {
                        let mut w = String::from("stored fusion differs");
                        'diff: for a in 0..n {
                            for b in 0..n {
                                for c in 0..n {
                                    if stored.get(a, b, c) != f.get(a, b, c) {
                                        w = format!(
                                            "N[{}][{}][{}]: stored {} vs Verlinde {}",
                                            self.label(a),
                                            self.label(b),
                                            self.label(c),
                                            stored.get(a, b, c),
                                            f.get(a, b, c)
                                        );
                                        break 'diff;
                                    }
                                }
                            }
                        }
                        report.push_fail("fusion-matches-verlinde", w);
                    }
                }
                Some(f)
            }
            Err(e) => {
                report.push_fail("verlinde-integral", e.to_string());
                None
            }
        };

        // twist equation needs the fusion tensor and dims; the balancing sum
        // carries the dual on the first index (coincides with the plain form
        // on self-dual data)
        match (&fusion, self.s_tilde(), self.quantum_dims()) {
            (Some(f), Ok(st), Ok(dims)) => {
                match f.duals(self.unit) {
                    Err(e) => report.push_fail("twist-equation", e.to_string()),
                    Ok(duals) => {
                        let mut defect = None;
                        'tw: for a in 0..n {
                            for (b, row_entry) in st[a].iter().enumerate() {
                                let lhs =
                                    self.twists[a].mul(&self.twists[b])?.mul(row_entry)?;
                                let mut rhs = Cyclotomic::zero();
                                for (c, d) in dims.iter().enumerate() {
                                    let m = f.get(duals[a], b, c);
                                    if m != 0 {
                                        let term = self.twists[c]
                                            .mul(d)?
                                            .mul_rational(&BigRational::from(BigInt::from(m)));
                                        rhs = rhs.add(&term)?;
                                    }
                                }
                                if lhs != rhs {
                                    defect = Some((a, b));
                                    break 'tw;
                                }
                            }
                        }
                        match defect {
                            None => report.push_pass("twist-equation"),
                            Some((a, b)) => report.push_fail(
                                "twist-equation",
                                format!("at ({},{})", self.label(a), self.label(b)),
                            ),
                        }
                    }
                }
            }
            _ => report.push_fail("twist-equation", "not computed (Verlinde failed)"),
        }

        // (ST)^3 = lambda S^2 with lambda = tau_1 S_{00}
        match self.gauss_sum(1) {
            Ok(tau) => {
                let lambda = tau.mul(&self.s[self.unit][self.unit])?;
                let t: Matrix = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i == j { self.twists[i].clone() } else { Cyclotomic::zero() })
                            .collect()
                    })
                    .collect();
                let st = mat_mul(&self.s, &t)?;
                let st3 = mat_mul(&mat_mul(&st, &st)?, &st)?;
                let s2 = mat_mul(&self.s, &self.s)?;
                let rhs = mat_scale(&s2, &lambda)?;
                if mat_eq(&st3, &rhs) {
                    report.push_pass("modular-relation");
                } else {
                    report.push_fail("modular-relation", "(ST)^3 != lambda S^2");
                }
            }
            Err(e) => report.push_fail("modular-relation", e.to_string()),
        }

        report.warnings = self.dim_value_warnings();
        Ok(report)
    }

    /// Charge conjugation: `Some(perm)` when `S^2` is a permutation matrix.
    pub fn charge_conjugation(&self) -> Result<Option<Vec<usize>>, Error> {
        let s2 = mat_mul(&self.s, &self.s)?;
        Ok(as_permutation(&s2))
    }

    /// Non-gating warnings when a quantum dimension sits outside
    /// `{2 cos(pi/n) : n >= 3} ∪ [2, inf)` numerically.
    pub fn dim_value_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let Ok(dims) = self.quantum_dims() else {
            return out;
        };
        for (a, d) in dims.iter().enumerate() {
            let (re, im) = d.to_complex();
            if im.abs() > 1e-9 {
                continue; // realness failures are caught by validation proper
            }
            if re >= 2.0 - 1e-9 {
                continue;
            }
            let ratio = (re / 2.0).clamp(-1.0, 1.0);
            let nf = std::f64::consts::PI / ratio.acos();
            let nr = nf.round().max(3.0);
            let nearest = 2.0 * (std::f64::consts::PI / nr).cos();
            if (re - nearest).abs() > 1e-9 {
                out.push(format!(
                    "quantum dimension of {} = {re:.12} is outside 2cos(pi/n) and [2,inf)",
                    self.labels[a]
                ));
            }
        }
        out
    }

    /// Deligne (Kronecker) product: paired labels, Kronecker S, multiplied
    /// twists, product fusion tensor.
    pub fn deligne_product(&self, other: &ModularData) -> Result<ModularData, Error> {
        let (na, nb) = (self.rank(), other.rank());
        let mut labels = Vec::with_capacity(na * nb);
        let mut twists = Vec::with_capacity(na * nb);
        for a in 0..na {
            for b in 0..nb {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
                twists.push(self.twists[a].mul(&other.twists[b])?);
            }
        }
        let mut s = vec![vec![Cyclotomic::zero(); na * nb]; na * nb];
        for a in 0..na {
            for b in 0..nb {
                for c in 0..na {
                    for d in 0..nb {
                        s[a * nb + b][c * nb + d] = self.s[a][c].mul(&other.s[b][d])?;
                    }
                }
            }
        }
        let fa = self.fusion_or_verlinde()?;
        let fb = other.fusion_or_verlinde()?;
        let mut fusion = FusionTensor::new(na * nb);
        for a1 in 0..na {
            for b1 in 0..nb {
                for a2 in 0..na {
                    for b2 in 0..nb {
                        for a3 in 0..na {
                            for b3 in 0..nb {
                                fusion.set(
                                    a1 * nb + b1,
                                    a2 * nb + b2,
                                    a3 * nb + b3,
                                    fa.get(a1, a2, a3) * fb.get(b1, b2, b3),
                                );
                            }
                        }
                    }
                }
            }
        }
        Ok(ModularData {
            labels,
            unit: self.unit * nb + other.unit,
            s,
            twists,
            fusion: Some(fusion),
        })
    }
}

#[cfg(test)]
pub(crate) mod test_data {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    pub fn half() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    pub fn sqrt2() -> Cyclotomic {
        let z = Cyclotomic::root_of_unity(1, 8).unwrap();
        z.add(&z.conj()).unwrap()
    }

    /// Hand-built Ising-shaped data: the categorical data of the even part of
    /// one free fermion, S = 1/2 [[1,1,r],[1,1,-r],[r,-r,0]], twists
    /// (1, -1, zeta_16).
    pub fn ising() -> ModularData {
        let r = sqrt2();
        let one = Cyclotomic::one();
        let h = half();
        let s = vec![
            vec![one.mul_rational(&h), one.mul_rational(&h), r.mul_rational(&h)],
            vec![one.mul_rational(&h), one.mul_rational(&h), r.neg().mul_rational(&h)],
            vec![r.mul_rational(&h), r.neg().mul_rational(&h), Cyclotomic::zero()],
        ];
        let twists = vec![
            Cyclotomic::one(),
            Cyclotomic::from_integer(-1),
            Cyclotomic::root_of_unity(1, 16).unwrap(),
        ];
        let mut fusion = FusionTensor::new(3);
        for (a, b, c) in [
            (0, 0, 0),
            (0, 1, 1),
            (1, 0, 1),
            (0, 2, 2),
            (2, 0, 2),
            (1, 1, 0),
            (1, 2, 2),
            (2, 1, 2),
            (2, 2, 0),
            (2, 2, 1),
        ] {
            fusion.set(a, b, c, 1);
        }
        ModularData {
            labels: vec!["1".into(), "psi".into(), "sigma".into()],
            unit: 0,
            s,
            twists,
            fusion: Some(fusion),
        }
    }

    pub fn trivial() -> ModularData {
        ModularData {
            labels: vec!["1".into()],
            unit: 0,
            s: vec![vec![Cyclotomic::one()]],
            twists: vec![Cyclotomic::one()],
            fusion: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::test_data::{ising, sqrt2, trivial};
    use super::*;

    #[test]
    fn trivial_category_validates() {
        let report = trivial().validate().unwrap();
        assert!(report.passed(), "{:?}", report.lines());
    }

    #[test]
    fn ising_validates() {
        let report = ising().validate().unwrap();
        assert!(report.passed(), "{:?}", report.lines());
    }

    #[test]
    fn shape_errors_are_input_errors() {
        let mut m = ising();
        m.s[2].pop();
        assert!(matches!(m.validate(), Err(Error::Input(_))));
        let mut m = ising();
        m.twists.pop();
        assert!(matches!(m.validate(), Err(Error::Input(_))));
        let mut m = ising();
        m.labels[1] = "1".into();
        assert!(matches!(m.validate(), Err(Error::Input(_))));
    }

    #[test]
    fn verlinde_on_ising() {
        let m = ising();
        let f = m.verlinde_fusion().unwrap();
        // sigma x sigma = 1 + psi
        assert_eq!(f.get(2, 2, 0), 1);
        assert_eq!(f.get(2, 2, 1), 1);
        assert_eq!(f.get(2, 2, 2), 0);
        assert_eq!(f.unit_row_defect(0), None);
        assert_eq!(f.commutativity_defect(), None);
        assert_eq!(f.associativity_defect(), None);
        assert_eq!(&f, m.fusion.as_ref().unwrap());
    }

    #[test]
    fn quantum_and_global_dims() {
        let m = ising();
        let dims = m.quantum_dims().unwrap();
        assert!(dims[0].is_one());
        assert!(dims[1].is_one());
        assert_eq!(dims[2], sqrt2());
        assert_eq!(m.global_dim().unwrap(), Cyclotomic::from_integer(4));
        assert_eq!(trivial().global_dim().unwrap(), Cyclotomic::from_integer(1));
    }

    #[test]
    fn gauss_sums() {
        let m = ising();
        // 1 + (-1) + 2 zeta_16
        let want = Cyclotomic::root_of_unity(1, 16)
            .unwrap()
            .mul(&Cyclotomic::from_integer(2))
            .unwrap();
        assert_eq!(m.gauss_sum(1).unwrap(), want);
        // negative degree conjugates the twists: 1 - 1 + 2 zeta_16^-1
        let want_neg = Cyclotomic::root_of_unity(15, 16)
            .unwrap()
            .mul(&Cyclotomic::from_integer(2))
            .unwrap();
        assert_eq!(m.gauss_sum(-1).unwrap(), want_neg);
        // higher degree: theta^2 turns the sigma twist into zeta_8
        let want_two = Cyclotomic::from_integer(2)
            .add(&Cyclotomic::root_of_unity(2, 16).unwrap().mul(&Cyclotomic::from_integer(2)).unwrap())
            .unwrap();
        assert_eq!(m.gauss_sum(2).unwrap(), want_two);
        // restricted to the centralizer {1, psi}: vanishes
        assert!(m.gauss_sum_over([0usize, 1], 1).unwrap().is_zero());
        assert!(matches!(m.gauss_sum(0), Err(Error::Input(_))));
        // |tau_1| = sqrt(global dim) numerically
        let (re, im) = m.gauss_sum(1).unwrap().to_complex();
        assert!((re.hypot(im) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fermion_twist_corruption_fails_twist_equation_at_sigma_sigma() {
        let mut m = ising();
        m.twists[1] = Cyclotomic::one();
        let report = m.validate().unwrap();
        assert!(!report.passed());
        let tw = report
            .checks
            .iter()
            .find(|c| c.name == "twist-equation")
            .unwrap();
        assert!(!tw.passed);
        // first failing pair in scan order is (psi, sigma); (sigma, sigma)
        // fails as well: 0 != theta_1 d_1 + theta_psi d_psi = 2
        let witness = tw.witness.clone().unwrap();
        assert!(witness.contains("sigma"), "{witness}");
    }

    #[test]
    fn sigma_twist_corruption_is_invisible_to_matrix_axioms() {
        // Altering only theta_sigma to 1 still satisfies every matrix-level
        // axiom: s~_{sigma,sigma} = 0 kills the only twist-equation entry
        // that sees theta_sigma^2 and lambda = tau_1 S_00 recalibrates the
        // modular relation.
        let mut m = ising();
        m.twists[2] = Cyclotomic::one();
        let report = m.validate().unwrap();
        assert!(report.passed(), "{:?}", report.lines());
    }

    #[test]
    fn charge_conjugation_on_ising() {
        let m = ising();
        let s2 = mat_mul(&m.s, &m.s).unwrap();
        let perm = as_permutation(&s2).expect("S^2 is a permutation");
        // all Ising objects are self-dual
        assert_eq!(perm, vec![0, 1, 2]);
    }

    #[test]
    fn deligne_product_unit_and_dims() {
        let m = ising();
        let p = trivial().deligne_product(&m).unwrap();
        assert_eq!(p.rank(), 3);
        assert_eq!(p.s, m.s);
        assert_eq!(p.twists, m.twists);
        assert!(p.validate().unwrap().passed());

        let q = m.deligne_product(&m).unwrap();
        assert_eq!(q.rank(), 9);
        assert!(q.validate().unwrap().passed());
        assert_eq!(q.global_dim().unwrap(), Cyclotomic::from_integer(16));
        // tau_1 multiplicativity: (2 zeta_16)^2 = 4 zeta_8
        let want = Cyclotomic::root_of_unity(2, 16)
            .unwrap()
            .mul(&Cyclotomic::from_integer(4))
            .unwrap();
        assert_eq!(q.gauss_sum(1).unwrap(), want);
        // quantum dims are the outer product
        let dims = q.quantum_dims().unwrap();
        let base = m.quantum_dims().unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(dims[a * 3 + b], base[a].mul(&base[b]).unwrap());
            }
        }
    }
}
