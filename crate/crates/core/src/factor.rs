//! Unit-valued factor maps on tuples of grading-group elements, and the
//! exhaustive checks for the factor laws: commutation factors (laws
//! `e01`-`e03`, `e00`), 2-cocycles (law `s`), 4-ary mediality factors (laws
//! `r01`, `raa`, `r02`, `r03`) and n^2-ary mediality factors (law `rr`).

use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::report::{ReportSet, RunConfig, VerificationReport, Witness};
use crate::scalar::{ScalarBackend, UnitScalar};
use crate::tuples::Odometer;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Form {
    Constant(UnitScalar),
    /// Values in lexicographic domain order, one per |G|^arity tuple.
    Table(Vec<u64>),
    /// f(a,b) = omega^(a^T E b) on component vectors.
    Bicharacter {
        exponents: Vec<Vec<i64>>,
        omega: UnitScalar,
    },
    /// rho(a,b,c,d) = eps(b,c).
    BridgeEps(Box<FactorMap>),
    /// Product of eps over pairs of flat positions of an n x n grade matrix.
    PairProduct {
        eps: Box<FactorMap>,
        pairs: Vec<(usize, usize)>,
    },
    /// `value` at a single tuple, 1 elsewhere.
    Bump { at: Vec<usize>, value: UnitScalar },
    /// f'(x) = -(f(x)^-1).
    NegInverse(Box<FactorMap>),
}

/// A total map G^arity -> k^x with exactly decidable equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMap {
    group: AbelianGroup,
    backend: ScalarBackend,
    arity: usize,
    form: Form,
}

impl FactorMap {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn backend(&self) -> ScalarBackend {
        self.backend
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn constant(group: AbelianGroup, arity: usize, value: UnitScalar) -> Self {
        FactorMap {
            group,
            backend: value.backend,
            arity,
            form: Form::Constant(value),
        }
    }

    pub fn one(group: AbelianGroup, backend: ScalarBackend, arity: usize) -> Self {
        Self::constant(group, arity, UnitScalar::one(backend))
    }

    /// Explicit table for arity 2 or 4, values in lexicographic domain order.
    pub fn from_table(
        group: AbelianGroup,
        backend: ScalarBackend,
        arity: usize,
        values: Vec<u64>,
    ) -> Result<Self> {
        if arity != 2 && arity != 4 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: arity,
            });
        }
        let size = (group.order() as u128).pow(arity as u32);
        if values.len() as u128 != size {
            return Err(Error::InvalidTable(format!(
                "factor table has {} entries, expected {}",
                values.len(),
                size
            )));
        }
        let mut norm = Vec::with_capacity(values.len());
        for v in values {
            norm.push(UnitScalar::new(backend, v)?.value);
        }
        Ok(FactorMap {
            group,
            backend,
            arity,
            form: Form::Table(norm),
        })
    }

    /// Canonical bicharacter eps(a,b) = omega^(a^T E b). Well-definedness on
    /// residue classes requires m_i * E_ij = 0 and m_j * E_ij = 0 modulo the
    /// multiplicative order of omega.
    pub fn bicharacter(
        group: AbelianGroup,
        exponents: Vec<Vec<i64>>,
        omega: UnitScalar,
    ) -> Result<Self> {
        let r = group.rank();
        if exponents.len() != r || exponents.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch(format!(
                "exponent matrix must be {r}x{r}"
            )));
        }
        let ord = omega.order() as i128;
        for (i, row) in exponents.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                let mi = group.orders()[i] as i128;
                let mj = group.orders()[j] as i128;
                if (mi * e as i128) % ord != 0 || (mj * e as i128) % ord != 0 {
                    return Err(Error::IncompatibleModulus(format!(
                        "entry E[{i}][{j}]={e} is not compatible with omega of order {ord}"
                    )));
                }
            }
        }
        Ok(FactorMap {
            group,
            backend: omega.backend,
            arity: 2,
            form: Form::Bicharacter { exponents, omega },
        })
    }

    /// The 4-ary factor rho(a,b,c,d) = eps(b,c).
    pub fn bridge(eps: FactorMap) -> Result<Self> {
        if eps.arity != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: eps.arity,
            });
        }
        Ok(FactorMap {
            group: eps.group.clone(),
            backend: eps.backend,
            arity: 4,
            form: Form::BridgeEps(Box::new(eps)),
        })
    }

    /// n^2-ary factor built as the product of `eps` over pairs of flat
    /// positions of the grade matrix.
    pub fn pair_product(eps: FactorMap, n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if eps.arity != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: eps.arity,
            });
        }
        let nn = n * n;
        if pairs.iter().any(|&(p, q)| p >= nn || q >= nn) {
            return Err(Error::DimensionMismatch(format!(
                "pair positions must be below {nn}"
            )));
        }
        Ok(FactorMap {
            group: eps.group.clone(),
            backend: eps.backend,
            arity: nn,
            form: Form::PairProduct {
                eps: Box::new(eps),
                pairs,
            },
        })
    }

    /// The ternary structure-theorem factor in its printed six-product form
    /// (law `r3`): eps over the pairs (a12,a31), (a12,a21), (a13,a31),
    /// (a13,a32), (a23,a32), (a23,a31). The exhaustive instance checks show
    /// this form misses the inversion pairs involving a21 against a13 and
    /// the diagonal entries; see [`FactorMap::transpose_inversions`] for the
    /// full product.
    pub fn ternary_r3_printed(eps: FactorMap) -> Result<Self> {
        // flat position of entry (i,j) in a 3x3 matrix is 3i+j
        let pairs = vec![(1, 6), (1, 3), (2, 6), (2, 7), (5, 7), (5, 6)];
        Self::pair_product(eps, 3, pairs)
    }

    /// All index pairs of an n x n matrix whose relative order flips under
    /// transposition, as (later, earlier) flat positions in row-major order.
    pub fn transpose_inversion_pairs(n: usize) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in i + 1..n {
                    for l in 0..j {
                        pairs.push((k * n + l, i * n + j));
                    }
                }
            }
        }
        pairs
    }

    /// The mediality factor of an eps-commutative algebra: reordering a
    /// row-major product into its transpose swaps exactly the inversion
    /// pairs, so the factor is the product of eps over all of them. For
    /// n = 3 this is the completed form of the structure-theorem factor
    /// (law `r3`).
    pub fn transpose_inversions(eps: FactorMap, n: usize) -> Result<Self> {
        Self::pair_product(eps, n, Self::transpose_inversion_pairs(n))
    }

    pub fn bump(
        group: AbelianGroup,
        arity: usize,
        at: Vec<usize>,
        value: UnitScalar,
    ) -> Result<Self> {
        if at.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: at.len(),
            });
        }
        Ok(FactorMap {
            group,
            backend: value.backend,
            arity,
            form: Form::Bump { at, value },
        })
    }

    /// f'(x) = -(f(x)^-1); requires a backend where -1 exists.
    pub fn neg_inverse(&self) -> Result<Self> {
        UnitScalar::neg_one(self.backend)?;
        Ok(FactorMap {
            group: self.group.clone(),
            backend: self.backend,
            arity: self.arity,
            form: Form::NegInverse(Box::new(self.clone())),
        })
    }

    pub fn eval(&self, args: &[usize]) -> Result<UnitScalar> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        match &self.form {
            Form::Constant(v) => Ok(*v),
            Form::Table(values) => {
                let q = self.group.order() as usize;
                let mut rank = 0usize;
                for &a in args {
                    rank = rank * q + a;
                }
                UnitScalar::new(self.backend, values[rank])
            }
            Form::Bicharacter { exponents, omega } => {
                let ca = self.group.decompose(args[0]);
                let cb = self.group.decompose(args[1]);
                let ord = omega.order() as i128;
                let mut e: i128 = 0;
                for (i, &ai) in ca.iter().enumerate() {
                    for (j, &bj) in cb.iter().enumerate() {
                        e += ai as i128 * exponents[i][j] as i128 * bj as i128;
                    }
                }
                let e = ((e % ord) + ord) % ord;
                Ok(omega.pow(e as i64))
            }
            Form::BridgeEps(eps) => eps.eval(&[args[1], args[2]]),
            Form::PairProduct { eps, pairs } => {
                let mut acc = UnitScalar::one(self.backend);
                for &(p, q) in pairs {
                    acc = acc.mul(&eps.eval(&[args[p], args[q]])?)?;
                }
                Ok(acc)
            }
            Form::Bump { at, value } => {
                if args == at.as_slice() {
                    Ok(*value)
                } else {
                    Ok(UnitScalar::one(self.backend))
                }
            }
            Form::NegInverse(inner) => inner.eval(args)?.inv().negate(),
        }
    }

    /// Materialises an arity-2 or arity-4 factor as an explicit table.
    pub fn tabulate(&self) -> Result<FactorMap> {
        if self.arity != 2 && self.arity != 4 {
            return Err(Error::Unsupported(
                "only arity-2 and arity-4 factors are tabulated".into(),
            ));
        }
        let q = self.group.order() as usize;
        let mut values = Vec::with_capacity(q.pow(self.arity as u32));
        let mut odo = Odometer::new(q, self.arity);
        while let Some(t) = odo.next() {
            values.push(self.eval(t)?.value);
        }
        FactorMap::from_table(self.group.clone(), self.backend, self.arity, values)
    }

    /// Copy with one table entry scaled by `s` (mutation testing helper).
    pub fn with_entry_scaled(&self, index: usize, s: UnitScalar) -> Result<FactorMap> {
        let mut tab = self.tabulate()?;
        if let Form::Table(values) = &mut tab.form {
            if index >= values.len() {
                return Err(Error::DimensionMismatch(format!(
                    "entry index {index} out of range"
                )));
            }
            let old = UnitScalar::new(self.backend, values[index])?;
            values[index] = old.mul(&s)?.value;
        }
        Ok(tab)
    }

    /// The argument-swapped factor: converts between the two commutation
    /// factor conventions eps0(a,b) = eps(b,a) (law `ee0`).
    pub fn convert_eps0_eps(&self) -> Result<FactorMap> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: self.arity,
            });
        }
        match &self.form {
            Form::Constant(_) => Ok(self.clone()),
            Form::Bicharacter { exponents, omega } => {
                let r = exponents.len();
                let mut t = vec![vec![0i64; r]; r];
                for i in 0..r {
                    for j in 0..r {
                        t[j][i] = exponents[i][j];
                    }
                }
                FactorMap::bicharacter(self.group.clone(), t, *omega)
            }
            _ => {
                let q = self.group.order() as usize;
                let mut values = vec![0u64; q * q];
                for a in 0..q {
                    for b in 0..q {
                        values[a * q + b] = self.eval(&[b, a])?.value;
                    }
                }
                FactorMap::from_table(self.group.clone(), self.backend, 2, values)
            }
        }
    }

    fn witness(&self, args: &[usize], lhs: UnitScalar, rhs: UnitScalar) -> Witness {
        let input: Vec<String> = args.iter().map(|&a| self.group.display(a)).collect();
        Witness::new(&input, lhs, rhs)
    }
}

/// Scans all `len`-tuples over the group, comparing `lhs` and `rhs`.
fn scan_law(
    f: &FactorMap,
    law: &str,
    len: usize,
    mut lhs: impl FnMut(&[usize]) -> Result<UnitScalar>,
    mut rhs: impl FnMut(&[usize]) -> Result<UnitScalar>,
) -> Result<VerificationReport> {
    let q = f.group().order() as usize;
    let mut probes = 0u64;
    let mut odo = Odometer::new(q, len);
    while let Some(t) = odo.next() {
        probes += 1;
        let l = lhs(t)?;
        let r = rhs(t)?;
        if l != r {
            return Ok(VerificationReport::fail(law, f.witness(t, l, r), probes));
        }
    }
    Ok(VerificationReport::pass(law, probes))
}

/// Laws `e01`-`e03` plus the symmetric form `e00` and the derived
/// consequences eps(0,b) = 1 and eps(a,a)^2 = 1.
pub fn check_commutation_factor(f: &FactorMap) -> Result<ReportSet> {
    if f.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: f.arity(),
        });
    }
    let g = f.group().clone();
    let one = UnitScalar::one(f.backend());
    let mut set = ReportSet::default();

    set.push(scan_law(
        f,
        "e01",
        2,
        |t| f.eval(t)?.mul(&f.eval(&[t[1], t[0]])?),
        |_| Ok(one),
    )?);
    set.push(scan_law(
        f,
        "e02",
        3,
        |t| f.eval(&[g.add(t[0], t[1]), t[2]]),
        |t| f.eval(&[t[0], t[2]])?.mul(&f.eval(&[t[1], t[2]])?),
    )?);
    set.push(scan_law(
        f,
        "e03",
        3,
        |t| f.eval(&[t[0], g.add(t[1], t[2])]),
        |t| f.eval(&[t[0], t[1]])?.mul(&f.eval(&[t[0], t[2]])?),
    )?);
    set.push(scan_law(
        f,
        "e00",
        4,
        |t| f.eval(&[g.add(t[0], t[1]), g.add(t[2], t[3])]),
        |t| {
            f.eval(&[t[0], t[2]])?
                .mul(&f.eval(&[t[1], t[2]])?)?
                .mul(&f.eval(&[t[0], t[3]])?)?
                .mul(&f.eval(&[t[1], t[3]])?)
        },
    )?);
    if set.passed() {
        set.push(scan_law(
            f,
            "e0-derived",
            1,
            |t| {
                let unit_row = f.eval(&[g.zero(), t[0]])?;
                let sq = f.eval(&[t[0], t[0]])?;
                unit_row.mul(&sq.mul(&sq)?)
            },
            |_| Ok(one),
        )?);
    } else {
        set.push(VerificationReport::skipped(
            "e0-derived",
            "base commutation laws failed",
        ));
    }
    Ok(set)
}

/// 2-cocycle law `s`: s(a,b) s(a+b,c) = s(a,b+c) s(b,c).
pub fn check_cocycle(f: &FactorMap) -> Result<VerificationReport> {
    if f.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: f.arity(),
        });
    }
    let g = f.group().clone();
    scan_law(
        f,
        "s",
        3,
        |t| f.eval(&[t[0], t[1]])?.mul(&f.eval(&[g.add(t[0], t[1]), t[2]])?),
        |t| f.eval(&[t[0], g.add(t[1], t[2])])?.mul(&f.eval(&[t[1], t[2]])?),
    )
}

/// 4-ary mediality factor laws `r01`, `raa`, `r02`, `r03`.
pub fn check_mediality_factor4(f: &FactorMap, cfg: &RunConfig) -> Result<ReportSet> {
    if f.arity() != 4 {
        return Err(Error::ArityMismatch {
            expected: 4,
            got: f.arity(),
        });
    }
    // the seven-argument scans probe the factor five times per tuple; an
    // explicit table keeps that a lookup
    let f = &f.tabulate()?;
    let g = f.group().clone();
    let one = UnitScalar::one(f.backend());
    let mut set = ReportSet::default();

    set.push(scan_law(
        f,
        "r01",
        4,
        |t| f.eval(t)?.mul(&f.eval(&[t[0], t[2], t[1], t[3]])?),
        |_| Ok(one),
    )?);
    set.push(scan_law(
        f,
        "raa",
        1,
        |t| f.eval(&[t[0], t[0], t[0], t[0]]),
        |_| Ok(one),
    )?);

    let seven = (g.order() as u128).pow(7);
    if cfg.budget.admit(seven).is_none() {
        set.push(VerificationReport::budget_exceeded(
            "r02",
            seven,
            cfg.budget.max_probes,
        ));
        set.push(VerificationReport::budget_exceeded(
            "r03",
            seven,
            cfg.budget.max_probes,
        ));
        return Ok(set);
    }
    // seven arguments (a, b, c, d, x, y, h) named as in the expansion laws
    set.push(scan_law(
        f,
        "r02",
        7,
        |t| f.eval(&[t[0], g.sum(&[t[2], t[3], t[4], t[5]]), t[1], t[6]]),
        |t| {
            f.eval(&[t[0], t[2], t[1], t[3]])?
                .mul(&f.eval(&[t[2], t[3], t[1], t[4]])?)?
                .mul(&f.eval(&[t[3], t[4], t[1], t[5]])?)?
                .mul(&f.eval(&[t[4], t[5], t[1], t[6]])?)
        },
    )?);
    set.push(scan_law(
        f,
        "r03",
        7,
        |t| f.eval(&[t[0], t[5], g.sum(&[t[1], t[2], t[3], t[4]]), t[6]]),
        |t| {
            f.eval(&[t[0], t[5], t[1], t[2]])?
                .mul(&f.eval(&[t[2], t[5], t[3], t[4]])?)?
                .mul(&f.eval(&[t[3], t[5], t[4], t[6]])?)?
                .mul(&f.eval(&[t[1], t[5], t[2], t[3]])?)
        },
    )?);
    Ok(set)
}

/// n^2-ary mediality factor laws: `rr` (value on a grade matrix times value
/// on its transpose is 1) and the all-equal normalization `raa`. Exhaustive
/// when |G|^(n^2) fits the budget, otherwise a seeded pseudorandom sample.
pub fn check_nary_mediality_factor(f: &FactorMap, n: usize, cfg: &RunConfig) -> Result<ReportSet> {
    let nn = n * n;
    if f.arity() != nn {
        return Err(Error::ArityMismatch {
            expected: nn,
            got: f.arity(),
        });
    }
    let g = f.group().clone();
    let q = g.order() as usize;
    let one = UnitScalar::one(f.backend());
    let mut set = ReportSet::default();

    let transpose = |t: &[usize], buf: &mut Vec<usize>| {
        buf.clear();
        for j in 0..n {
            for i in 0..n {
                buf.push(t[i * n + j]);
            }
        }
    };

    let domain = (q as u128).pow(nn as u32);
    let mut buf = Vec::with_capacity(nn);
    if let Some(size) = cfg.budget.admit(domain) {
        let mut probes = 0u64;
        let mut failure = None;
        let mut odo = Odometer::new(q, nn);
        while let Some(t) = odo.next() {
            probes += 1;
            transpose(t, &mut buf);
            let prod = f.eval(t)?.mul(&f.eval(&buf)?)?;
            if prod != one {
                failure = Some(f.witness(t, prod, one));
                break;
            }
        }
        debug_assert!(failure.is_some() || probes == size);
        set.push(match failure {
            Some(w) => VerificationReport::fail("rr", w, probes),
            None => VerificationReport::pass("rr", probes),
        });
    } else {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(cfg.seed);
        let mut probes = 0u64;
        let mut failure = None;
        let mut t = vec![0usize; nn];
        for _ in 0..cfg.sample {
            for slot in t.iter_mut() {
                *slot = (rng.next_u64() % q as u64) as usize;
            }
            probes += 1;
            transpose(&t, &mut buf);
            let prod = f.eval(&t)?.mul(&f.eval(&buf)?)?;
            if prod != one {
                failure = Some(f.witness(&t, prod, one));
                break;
            }
        }
        let report = match failure {
            Some(w) => VerificationReport::fail("rr", w, probes),
            None => VerificationReport::pass("rr", probes),
        };
        set.push(
            report
                .with_seed(cfg.seed)
                .with_budget(cfg.budget.max_probes)
                .with_detail(format!("sampled; domain size {domain}")),
        );
    }

    let mut probes = 0u64;
    let mut failure = None;
    for a in g.elements() {
        probes += 1;
        buf.clear();
        buf.resize(nn, a);
        let v = f.eval(&buf)?;
        if v != one {
            failure = Some(f.witness(&buf, v, one));
            break;
        }
    }
    set.push(match failure {
        Some(w) => VerificationReport::fail("raa", w, probes),
        None => VerificationReport::pass("raa", probes),
    });
    Ok(set)
}

/// Recovers eps(b,c) := rho(0,b,c,0) and verifies rho is independent of its
/// first and last arguments; errors if a dependence is found.
pub fn derive_eps_from_rho(f: &FactorMap) -> Result<FactorMap> {
    if f.arity() != 4 {
        return Err(Error::ArityMismatch {
            expected: 4,
            got: f.arity(),
        });
    }
    let g = f.group().clone();
    let q = g.order() as usize;
    let z = g.zero();
    let mut odo = Odometer::new(q, 4);
    while let Some(t) = odo.next() {
        let full = f.eval(t)?;
        let slice = f.eval(&[z, t[1], t[2], z])?;
        if full != slice {
            return Err(Error::FactorDependence(format!(
                "rho({},{},{},{}) = {} but rho(0,{},{},0) = {}",
                g.display(t[0]),
                g.display(t[1]),
                g.display(t[2]),
                g.display(t[3]),
                full,
                g.display(t[1]),
                g.display(t[2]),
                slice,
            )));
        }
    }
    let mut values = vec![0u64; q * q];
    for b in 0..q {
        for c in 0..q {
            values[b * q + c] = f.eval(&[z, b, c, z])?.value;
        }
    }
    FactorMap::from_table(g, f.backend(), 2, values)
}

/// The super sign on Z2 over F_p: eps(a,b) = (-1)^(ab).
pub fn super_sign(p: u64) -> Result<FactorMap> {
    let backend = ScalarBackend::prime_field(p)?;
    let omega = UnitScalar::neg_one(backend)?;
    FactorMap::bicharacter(AbelianGroup::cyclic(2), vec![vec![1]], omega)
}
