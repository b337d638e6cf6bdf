//! Symmetric functions of one fixed degree over Z[t]: monomial, homogeneous,
//! Schur and Hall-Littlewood bases, the weight generating functions of
//! counter-tableaux, the k-Kostka matrix and its inverse, and the k-Schur
//! functions with parameter t.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abc::{abc_enumerate, inner_bounded, k_charge};
use crate::charge::{kostka_foulkes, ssyt_enumerate};
use crate::cores::core_from_bounded;
use crate::error::{Anomaly, Error, Result};
use crate::partition::{partitions_bounded, partitions_of, Partition};
use crate::tpoly::{unitriangular_inverse, TPoly, TPolyMatrix};

/// Basis tags. The two k-dependent bases carry their bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Monomial,
    Homogeneous,
    Schur,
    HallLittlewood,
    DualKschur(u32),
    KschurT(u32),
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Homogeneous => "homogeneous",
            Basis::Schur => "schur",
            Basis::HallLittlewood => "hall_littlewood",
            Basis::DualKschur(_) => "dual_kschur",
            Basis::KschurT(_) => "kschur_t",
        }
    }

    /// Short symbol used by the text rendering.
    pub fn symbol(&self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Homogeneous => "h",
            Basis::Schur => "s",
            Basis::HallLittlewood => "H",
            Basis::DualKschur(_) => "Sd",
            Basis::KschurT(_) => "sk",
        }
    }

    fn k(&self) -> Option<u32> {
        match self {
            Basis::DualKschur(k) | Basis::KschurT(k) => Some(*k),
            _ => None,
        }
    }

    fn from_parts(name: &str, k: Option<u32>) -> Result<Basis> {
        match (name, k) {
            ("monomial", None) => Ok(Basis::Monomial),
            ("homogeneous", None) => Ok(Basis::Homogeneous),
            ("schur", None) => Ok(Basis::Schur),
            ("hall_littlewood", None) => Ok(Basis::HallLittlewood),
            ("dual_kschur", Some(k)) => Ok(Basis::DualKschur(k)),
            ("kschur_t", Some(k)) => Ok(Basis::KschurT(k)),
            _ => Err(Error::InputError(format!(
                "unknown basis {name:?} (k given: {})",
                k.is_some()
            ))),
        }
    }
}

/// A homogeneous symmetric function: a finite combination of basis elements
/// of one degree, with polynomial coefficients. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    degree: u32,
    coeffs: BTreeMap<Partition, TPoly>,
}

impl SymFunc {
    pub fn new(basis: Basis, degree: u32, coeffs: BTreeMap<Partition, TPoly>) -> Result<Self> {
        for index in coeffs.keys() {
            if index.size() != degree as u64 {
                return Err(Error::SizeMismatch(index.to_string(), degree.to_string()));
            }
            if let Some(k) = basis.k() {
                if index.part(0) > k {
                    return Err(Error::BoundViolation {
                        shape: index.to_string(),
                        k,
                    });
                }
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(SymFunc {
            basis,
            degree,
            coeffs,
        })
    }

    pub fn zero(basis: Basis, degree: u32) -> Self {
        SymFunc {
            basis,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A single basis element.
    pub fn generator(basis: Basis, index: Partition) -> Result<Self> {
        let degree = index.size() as u32;
        SymFunc::new(basis, degree, BTreeMap::from([(index, TPoly::one())]))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, index: &Partition) -> TPoly {
        self.coeffs.get(index).cloned().unwrap_or_else(TPoly::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, TPoly> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(coeffs: &mut BTreeMap<Partition, TPoly>, index: Partition, value: TPoly) {
        if value.is_zero() {
            return;
        }
        // cancelled terms are swept by prune() before construction
        *coeffs.entry(index).or_insert_with(TPoly::zero) += &value;
    }

    fn prune(mut coeffs: BTreeMap<Partition, TPoly>) -> BTreeMap<Partition, TPoly> {
        coeffs.retain(|_, c| !c.is_zero());
        coeffs
    }

    /// Evaluates every coefficient at an integer t.
    pub fn eval_t(&self, t0: i64) -> Vec<(Partition, BigInt)> {
        self.coeffs
            .iter()
            .map(|(q, c)| (q.clone(), c.eval_i64(t0)))
            .collect()
    }

    /// Equality after conversion to the monomial basis.
    pub fn eq_as_monomial(&self, other: &SymFunc) -> Result<bool> {
        Ok(to_monomial(self)? == to_monomial(other)?)
    }

    /// Human rendering, smallest index first, e.g. `H[1,1] - t*H[2]`.
    pub fn render_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let symbol = self.basis.symbol();
        let mut out = String::new();
        for (index, coeff) in self.coeffs.iter() {
            let base = format!("{symbol}{index}");
            let nonzero: Vec<usize> = (0..coeff.coeffs().len())
                .filter(|&i| !coeff.coeff(i).is_zero())
                .collect();
            let (negative, body) = if coeff.is_one() {
                (false, base)
            } else if (-coeff).is_one() {
                (true, base)
            } else if nonzero.len() == 1 {
                let exp = nonzero[0];
                let c = coeff.coeff(exp);
                let mag = c.abs();
                let mut factor = String::new();
                if !mag.is_one() || exp == 0 {
                    factor.push_str(&mag.to_string());
                }
                if exp >= 1 {
                    if !factor.is_empty() {
                        factor.push('*');
                    }
                    factor.push('t');
                    if exp > 1 {
                        factor.push_str(&format!("^{exp}"));
                    }
                }
                (c.is_negative(), format!("{factor}*{base}"))
            } else {
                (false, format!("({coeff})*{base}"))
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.basis.name(), self.render_text())
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    index: Partition,
    coeff: TPoly,
}

#[derive(Serialize, Deserialize)]
struct SymFuncWire {
    basis: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k: Option<u32>,
    degree: u32,
    terms: Vec<TermWire>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        // canonical order: largest index first
        let terms = self
            .coeffs
            .iter()
            .rev()
            .map(|(index, coeff)| TermWire {
                index: index.clone(),
                coeff: coeff.clone(),
            })
            .collect();
        SymFuncWire {
            basis: self.basis.name().to_string(),
            k: self.basis.k(),
            degree: self.degree,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = SymFuncWire::deserialize(deserializer)?;
        let basis = Basis::from_parts(&wire.basis, wire.k).map_err(D::Error::custom)?;
        let mut coeffs = BTreeMap::new();
        for term in wire.terms {
            SymFunc::add_term(&mut coeffs, term.index, term.coeff);
        }
        SymFunc::new(basis, wire.degree, SymFunc::prune(coeffs)).map_err(D::Error::custom)
    }
}

/// Schur function expanded in the monomial basis; the coefficients are the
/// Kostka numbers, realized as tableau counts.
pub fn schur_to_monomial(lambda: &Partition) -> SymFunc {
    let n = lambda.size() as u32;
    let mut coeffs = BTreeMap::new();
    for mu in partitions_of(n) {
        let count = ssyt_enumerate(lambda, mu.parts())
            .expect("equal sizes")
            .len();
        if count > 0 {
            SymFunc::add_term(&mut coeffs, mu, TPoly::constant(count as i64));
        }
    }
    SymFunc {
        basis: Basis::Monomial,
        degree: n,
        coeffs: SymFunc::prune(coeffs),
    }
}

/// Multiplies a monomial-basis function by the complete homogeneous
/// generator of degree r, exactly.
fn mul_by_h(f: &SymFunc, r: u32) -> SymFunc {
    debug_assert_eq!(f.basis, Basis::Monomial);
    let degree = f.degree + r;
    let mut coeffs: BTreeMap<Partition, TPoly> = BTreeMap::new();
    for mu in partitions_of(degree) {
        // sum of f-coefficients over ways to delete r cells column-wise:
        // subtract a vector b <= mu with |b| = r and sort the remainder
        let mut acc = TPoly::zero();
        let parts = mu.parts();
        fn rec(
            parts: &[u32],
            pos: usize,
            left: u32,
            current: &mut Vec<u32>,
            f: &SymFunc,
            acc: &mut TPoly,
        ) {
            if pos == parts.len() {
                if left == 0 {
                    let mut rest: Vec<u32> = current.iter().copied().filter(|&x| x > 0).collect();
                    rest.sort_unstable_by(|a, b| b.cmp(a));
                    if let Ok(q) = Partition::new(rest) {
                        let c = f.coeff(&q);
                        if !c.is_zero() {
                            *acc += &c;
                        }
                    }
                }
                return;
            }
            let take_max = parts[pos].min(left);
            for take in 0..=take_max {
                current.push(parts[pos] - take);
                rec(parts, pos + 1, left - take, current, f, acc);
                current.pop();
            }
        }
        rec(parts, 0, r, &mut Vec::new(), f, &mut acc);
        SymFunc::add_term(&mut coeffs, mu, acc);
    }
    SymFunc {
        basis: Basis::Monomial,
        degree,
        coeffs: SymFunc::prune(coeffs),
    }
}

/// Complete homogeneous function h_mu expanded in the monomial basis.
pub fn h_to_monomial(mu: &Partition) -> SymFunc {
    let mut f = SymFunc {
        basis: Basis::Monomial,
        degree: 0,
        coeffs: BTreeMap::from([(Partition::empty(), TPoly::one())]),
    };
    for &part in mu.parts() {
        f = mul_by_h(&f, part);
    }
    f
}

/// Schur function in the homogeneous basis, by the determinantal formula
/// s_lambda = sum over permutations of signed products h_{lambda_i - i + j}.
fn schur_to_homogeneous(lambda: &Partition) -> SymFunc {
    let n = lambda.size() as u32;
    let ell = lambda.len();
    let mut coeffs: BTreeMap<Partition, TPoly> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..ell).collect();
    permute(&mut perm, &mut |perm, sign| {
        let mut index: Vec<u32> = Vec::with_capacity(ell);
        for (i, &j) in perm.iter().enumerate() {
            let v = lambda.part(i) as i64 - i as i64 + j as i64;
            match v {
                0 => {}
                neg if neg < 0 => return,
                pos => index.push(pos as u32),
            }
        }
        index.sort_unstable_by(|a, b| b.cmp(a));
        let q = Partition::new(index).expect("sorted positive parts");
        SymFunc::add_term(&mut coeffs, q, TPoly::constant(if sign { -1 } else { 1 }));
    });
    SymFunc {
        basis: Basis::Homogeneous,
        degree: n,
        coeffs: SymFunc::prune(coeffs),
    }
}

/// Permutation generator calling back with (permutation, parity is odd).
fn permute(perm: &mut Vec<usize>, visit: &mut impl FnMut(&[usize], bool)) {
    fn rec(perm: &mut Vec<usize>, at: usize, swaps: usize, visit: &mut impl FnMut(&[usize], bool)) {
        if at == perm.len() {
            visit(perm, swaps % 2 == 1);
            return;
        }
        for i in at..perm.len() {
            perm.swap(at, i);
            rec(perm, at + 1, swaps + usize::from(i != at), visit);
            perm.swap(at, i);
        }
    }
    rec(perm, 0, 0, visit);
}

/// Hall-Littlewood function H_mu[X;t] in the Schur basis: the coefficients
/// are the charge Kostka-Foulkes polynomials.
pub fn hall_littlewood_to_schur(mu: &Partition) -> Result<SymFunc> {
    let n = mu.size() as u32;
    let mut coeffs = BTreeMap::new();
    for lambda in partitions_of(n) {
        let kf = kostka_foulkes(&lambda, mu)?;
        SymFunc::add_term(&mut coeffs, lambda, kf);
    }
    Ok(SymFunc {
        basis: Basis::Schur,
        degree: n,
        coeffs: SymFunc::prune(coeffs),
    })
}

/// Dual k-Schur function in the monomial basis: the coefficient of m_mu
/// counts counter-tableaux of k-weight mu whose inner shape is the core of
/// lambda.
pub fn dual_kschur_to_monomial(lambda: &Partition, k: u32) -> Result<SymFunc> {
    let inner = core_from_bounded(lambda, k)?;
    let n = lambda.size() as u32;
    let mut coeffs = BTreeMap::new();
    for mu in partitions_bounded(n, k) {
        let count = abc_enumerate(k, mu.parts(), Some(&inner))?.len();
        if count > 0 {
            SymFunc::add_term(&mut coeffs, mu, TPoly::constant(count as i64));
        }
    }
    Ok(SymFunc {
        basis: Basis::Monomial,
        degree: n,
        coeffs: SymFunc::prune(coeffs),
    })
}

/// The k-Kostka matrix for degree n: entry (lambda, mu) is the k-charge
/// generating function over counter-tableaux of k-weight mu and inner shape
/// the core of lambda, both indices running over k-bounded partitions of n
/// in canonical order. Unitriangularity is verified on construction.
#[derive(Clone, Debug)]
pub struct KostkaMatrixK {
    k: u32,
    n: u32,
    matrix: TPolyMatrix,
}

impl KostkaMatrixK {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn matrix(&self) -> &TPolyMatrix {
        &self.matrix
    }

    pub fn index(&self) -> &[Partition] {
        self.matrix.index()
    }

    pub fn entry(&self, lambda: &Partition, mu: &Partition) -> Option<&TPoly> {
        let i = self.matrix.position(lambda)?;
        let j = self.matrix.position(mu)?;
        Some(self.matrix.entry(i, j))
    }
}

pub fn kostka_matrix_k(k: u32, n: u32) -> Result<KostkaMatrixK> {
    let index = partitions_bounded(n, k);
    let dim = index.len();
    let mut entries = vec![vec![TPoly::zero(); dim]; dim];
    for (col, mu) in index.iter().enumerate() {
        for abc in abc_enumerate(k, mu.parts(), None)? {
            let lambda = inner_bounded(&abc);
            let row = index
                .iter()
                .position(|x| x == &lambda)
                .expect("inner shape is a k-bounded partition of n");
            let ch = k_charge(&abc)?;
            let term = TPoly::monomial(ch as usize);
            entries[row][col] += &term;
        }
    }
    for i in 0..dim {
        if !entries[i][i].is_one() {
            return Err(Error::Anomaly(Anomaly::NotUnitriangular(format!(
                "diagonal entry at {} is {}",
                index[i], entries[i][i]
            ))));
        }
        for j in 0..i {
            if !entries[i][j].is_zero() {
                return Err(Error::Anomaly(Anomaly::NotUnitriangular(format!(
                    "entry ({}, {}) = {} below the diagonal",
                    index[i], index[j], entries[i][j]
                ))));
            }
        }
    }
    Ok(KostkaMatrixK {
        k,
        n,
        matrix: TPolyMatrix::new(index, entries)?,
    })
}

/// The k-Schur function with parameter t, expanded in the requested basis.
///
/// The defining expansion reads the inverse k-Kostka matrix in the
/// orientation fixed by requiring H_mu[X;t] = sum over lambda of
/// K^(k)_{lambda,mu}(t) s^(k)_lambda[X;t]: the H_mu coefficient of
/// s^(k)_lambda is the (mu, lambda) entry of the inverse.
pub fn kschur_t(lambda: &Partition, k: u32, target: Basis) -> Result<SymFunc> {
    if lambda.part(0) > k {
        return Err(Error::BoundViolation {
            shape: lambda.to_string(),
            k,
        });
    }
    let n = lambda.size() as u32;
    let km = kostka_matrix_k(k, n)?;
    let inverse = unitriangular_inverse(km.matrix())?;
    let col = inverse
        .position(lambda)
        .expect("lambda is k-bounded of degree n");
    let mut coeffs = BTreeMap::new();
    for (row, mu) in inverse.index().iter().enumerate() {
        SymFunc::add_term(&mut coeffs, mu.clone(), inverse.entry(row, col).clone());
    }
    let in_hl = SymFunc {
        basis: Basis::HallLittlewood,
        degree: n,
        coeffs: SymFunc::prune(coeffs),
    };
    convert(&in_hl, target)
}

/// Converts a symmetric function to the requested basis, when a conversion
/// path exists.
pub fn convert(f: &SymFunc, target: Basis) -> Result<SymFunc> {
    if f.basis == target {
        return Ok(f.clone());
    }
    match target {
        Basis::Monomial => to_monomial(f),
        Basis::Homogeneous => to_homogeneous(f),
        Basis::Schur => match f.basis {
            Basis::HallLittlewood => {
                let mut coeffs = BTreeMap::new();
                for (mu, c) in f.coeffs.iter() {
                    for (lam, kf) in hall_littlewood_to_schur(mu)?.coeffs {
                        SymFunc::add_term(&mut coeffs, lam, &kf * c);
                    }
                }
                SymFunc::new(Basis::Schur, f.degree, SymFunc::prune(coeffs))
            }
            Basis::KschurT(_) => convert(&convert(f, Basis::HallLittlewood)?, Basis::Schur),
            _ => Err(Error::InputError(format!(
                "no conversion from {} to schur",
                f.basis.name()
            ))),
        },
        Basis::HallLittlewood => match f.basis {
            Basis::KschurT(k) => {
                let mut coeffs = BTreeMap::new();
                for (lam, c) in f.coeffs.iter() {
                    for (mu, hc) in kschur_t(lam, k, Basis::HallLittlewood)?.coeffs {
                        SymFunc::add_term(&mut coeffs, mu, &hc * c);
                    }
                }
                SymFunc::new(Basis::HallLittlewood, f.degree, SymFunc::prune(coeffs))
            }
            _ => Err(Error::InputError(format!(
                "no conversion from {} to hall_littlewood",
                f.basis.name()
            ))),
        },
        Basis::DualKschur(_) | Basis::KschurT(_) => Err(Error::InputError(format!(
            "no conversion from {} to {}",
            f.basis.name(),
            target.name()
        ))),
    }
}

/// Expansion in the monomial basis (always possible).
pub fn to_monomial(f: &SymFunc) -> Result<SymFunc> {
    let mut coeffs: BTreeMap<Partition, TPoly> = BTreeMap::new();
    match f.basis {
        Basis::Monomial => return Ok(f.clone()),
        Basis::Homogeneous => {
            for (mu, c) in f.coeffs.iter() {
                for (q, hc) in h_to_monomial(mu).coeffs {
                    SymFunc::add_term(&mut coeffs, q, &hc * c);
                }
            }
        }
        Basis::Schur => {
            for (lam, c) in f.coeffs.iter() {
                for (q, sc) in schur_to_monomial(lam).coeffs {
                    SymFunc::add_term(&mut coeffs, q, &sc * c);
                }
            }
        }
        Basis::HallLittlewood | Basis::KschurT(_) => {
            return to_monomial(&convert(f, Basis::Schur)?);
        }
        Basis::DualKschur(k) => {
            for (lam, c) in f.coeffs.iter() {
                for (q, dc) in dual_kschur_to_monomial(lam, k)?.coeffs {
                    SymFunc::add_term(&mut coeffs, q, &dc * c);
                }
            }
        }
    }
    SymFunc::new(Basis::Monomial, f.degree, SymFunc::prune(coeffs))
}

/// Expansion in the homogeneous basis, for the bases that admit one.
pub fn to_homogeneous(f: &SymFunc) -> Result<SymFunc> {
    let mut coeffs: BTreeMap<Partition, TPoly> = BTreeMap::new();
    match f.basis {
        Basis::Homogeneous => return Ok(f.clone()),
        Basis::Schur => {
            for (lam, c) in f.coeffs.iter() {
                for (q, hc) in schur_to_homogeneous(lam).coeffs {
                    SymFunc::add_term(&mut coeffs, q, &hc * c);
                }
            }
        }
        Basis::HallLittlewood | Basis::KschurT(_) => {
            return to_homogeneous(&convert(f, Basis::Schur)?);
        }
        Basis::Monomial | Basis::DualKschur(_) => {
            return Err(Error::InputError(format!(
                "no homogeneous expansion available from the {} basis",
                f.basis.name()
            )));
        }
    }
    SymFunc::new(Basis::Homogeneous, f.degree, SymFunc::prune(coeffs))
}

/// Hall inner product: one side is expanded over the homogeneous basis, the
/// other over the monomial basis, and dual bases pair to delta. The sides
/// are swapped automatically when only one order is expandable.
pub fn hall_inner_product(f: &SymFunc, g: &SymFunc) -> Result<TPoly> {
    if f.degree != g.degree {
        return Err(Error::SizeMismatch(
            f.degree.to_string(),
            g.degree.to_string(),
        ));
    }
    let (h_side, m_side) = match to_homogeneous(f) {
        Ok(fh) => (fh, to_monomial(g)?),
        Err(_) => (to_homogeneous(g)?, to_monomial(f)?),
    };
    let mut acc = TPoly::zero();
    for (q, hc) in h_side.coeffs.iter() {
        let mc = m_side.coeff(q);
        if !mc.is_zero() {
            let prod = hc * &mc;
            acc += &prod;
        }
    }
    Ok(acc)
}
