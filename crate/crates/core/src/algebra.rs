//! Graded n-ary algebras presented by structure constants over a prime
//! field, with the grading-, associativity-, almost-commutativity- and
//! almost-mediality checks, twisted products, and twisted tensor products.

use crate::error::{Error, Result};
use crate::factor::FactorMap;
use crate::fp;
use crate::group::AbelianGroup;
use crate::nary::NaryOp;
use crate::report::{Budget, ReportSet, VerificationReport, Witness};
use crate::scalar::UnitScalar;
use crate::tuples::Odometer;

/// Which grading law the algebra claims: `Standard` ties the grade of every
/// n-fold product to the sum of the argument grades (law `maa`); `Higher`
/// only constrains full matrix-polyad products of n^2 elements (law `m4a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingKind {
    Standard,
    Higher,
}

/// A vector over F_p in the basis of its algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub coeffs: Vec<u64>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// A homogeneous element: a vector supported in a single grade component,
/// tagged with that grade (zero vectors carry their formal grade).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homog {
    pub elem: Element,
    pub grade: usize,
}

type Sparse = Vec<(usize, u64)>;

/// An n-ary algebra over F_p with a grade per basis element and structure
/// constants for every n-tuple of basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    arity: usize,
    dim: usize,
    p: u64,
    group: AbelianGroup,
    grades: Vec<usize>,
    table: Vec<Sparse>,
    unit: Option<usize>,
    grading: GradingKind,
}

impl GradedAlgebra {
    /// Builds an algebra from the nonzero structure entries; omitted basis
    /// tuples multiply to zero.
    pub fn new(
        arity: usize,
        dim: usize,
        p: u64,
        group: AbelianGroup,
        grades: Vec<usize>,
        entries: Vec<(Vec<usize>, Sparse)>,
        unit: Option<usize>,
    ) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if arity < 2 {
            return Err(Error::InvalidTable("arity must be >= 2".into()));
        }
        if grades.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{} grades for dimension {dim}",
                grades.len()
            )));
        }
        let order = group.order() as usize;
        if grades.iter().any(|&g| g >= order) {
            return Err(Error::DimensionMismatch(
                "grade index outside the grading group".into(),
            ));
        }
        let size = dim
            .checked_pow(arity as u32)
            .ok_or_else(|| Error::InvalidTable("structure table overflows".into()))?;
        let mut table = vec![Vec::new(); size];
        for (args, out) in entries {
            if args.len() != arity || args.iter().any(|&a| a >= dim) {
                return Err(Error::InvalidTable(format!("bad argument tuple {args:?}")));
            }
            let mut rank = 0usize;
            for &a in &args {
                rank = rank * dim + a;
            }
            let mut sorted: Sparse = out
                .into_iter()
                .map(|(b, c)| (b, c % p))
                .filter(|&(_, c)| c != 0)
                .collect();
            if sorted.iter().any(|&(b, _)| b >= dim) {
                return Err(Error::InvalidTable("output basis index out of range".into()));
            }
            sorted.sort_by_key(|&(b, _)| b);
            table[rank] = sorted;
        }
        if let Some(e) = unit {
            if e >= dim {
                return Err(Error::DimensionMismatch("unit index out of range".into()));
            }
        }
        Ok(GradedAlgebra {
            arity,
            dim,
            p,
            group,
            grades,
            table,
            unit,
            grading: GradingKind::Standard,
        })
    }

    pub fn with_grading(mut self, grading: GradingKind) -> Self {
        self.grading = grading;
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn grades(&self) -> &[usize] {
        &self.grades
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn grading(&self) -> GradingKind {
        self.grading
    }

    pub fn structure(&self) -> impl Iterator<Item = (Vec<usize>, &Sparse)> {
        let dim = self.dim;
        let arity = self.arity;
        self.table.iter().enumerate().map(move |(rank, out)| {
            let mut args = vec![0usize; arity];
            let mut r = rank;
            for slot in args.iter_mut().rev() {
                *slot = r % dim;
                r /= dim;
            }
            (args, out)
        })
    }

    fn rank(&self, args: &[usize]) -> usize {
        let mut r = 0usize;
        for &a in args {
            r = r * self.dim + a;
        }
        r
    }

    pub fn basis_product(&self, args: &[usize]) -> &Sparse {
        &self.table[self.rank(args)]
    }

    pub fn zero_element(&self) -> Element {
        Element {
            coeffs: vec![0; self.dim],
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero_element();
        e.coeffs[i] = 1;
        e
    }

    pub fn homog_basis(&self, i: usize) -> Homog {
        Homog {
            elem: self.basis_element(i),
            grade: self.grades[i],
        }
    }

    /// Wraps an element as homogeneous of grade `grade`, verifying that its
    /// support lies in that grade component.
    pub fn as_homog(&self, elem: Element, grade: usize) -> Result<Homog> {
        for (i, &c) in elem.coeffs.iter().enumerate() {
            if c != 0 && self.grades[i] != grade {
                return Err(Error::NonHomogeneous);
            }
        }
        Ok(Homog { elem, grade })
    }

    /// Infers the grade of a nonzero element from its support.
    pub fn try_homog(&self, elem: Element) -> Result<Homog> {
        let mut grade = None;
        for (i, &c) in elem.coeffs.iter().enumerate() {
            if c != 0 {
                match grade {
                    None => grade = Some(self.grades[i]),
                    Some(g) if g != self.grades[i] => return Err(Error::NonHomogeneous),
                    _ => {}
                }
            }
        }
        let grade = grade.ok_or(Error::NonHomogeneous)?;
        Ok(Homog { elem, grade })
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| fp::add(self.p, x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| fp::sub(self.p, x, y))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Element, s: u64) -> Element {
        Element {
            coeffs: a.coeffs.iter().map(|&x| fp::mul(self.p, x, s)).collect(),
        }
    }

    pub fn scale_unit(&self, a: &Element, s: &UnitScalar) -> Result<Element> {
        Ok(self.scale(a, s.residue(self.p)?))
    }

    /// Multilinear extension of the structure constants to full elements.
    pub fn mul_elements(&self, args: &[&Element]) -> Element {
        debug_assert_eq!(args.len(), self.arity);
        let supports: Vec<Vec<(usize, u64)>> = args
            .iter()
            .map(|e| {
                e.coeffs
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect()
            })
            .collect();
        let mut acc = self.zero_element();
        if supports.iter().any(|s| s.is_empty()) {
            return acc;
        }
        let mut idx = vec![0usize; self.arity];
        let mut basis = vec![0usize; self.arity];
        loop {
            let mut coeff = 1u64;
            for (k, &i) in idx.iter().enumerate() {
                let (b, c) = supports[k][i];
                basis[k] = b;
                coeff = fp::mul(self.p, coeff, c);
            }
            for &(b, c) in self.basis_product(&basis) {
                acc.coeffs[b] = fp::add(self.p, acc.coeffs[b], fp::mul(self.p, coeff, c));
            }
            let mut k = self.arity;
            loop {
                if k == 0 {
                    return acc;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < supports[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    pub fn mul_homog(&self, args: &[&Homog]) -> Homog {
        let elems: Vec<&Element> = args.iter().map(|h| &h.elem).collect();
        let grade = self
            .group
            .sum(&args.iter().map(|h| h.grade).collect::<Vec<_>>());
        Homog {
            elem: self.mul_elements(&elems),
            grade,
        }
    }

    /// Row-major matrix-polyad product of n^2 homogeneous elements.
    pub fn eval_matrix_homog(&self, args: &[&Homog]) -> Homog {
        let n = self.arity;
        debug_assert_eq!(args.len(), n * n);
        let rows: Vec<Homog> = (0..n)
            .map(|i| self.mul_homog(&args[i * n..(i + 1) * n].iter().copied().collect::<Vec<_>>()))
            .collect();
        self.mul_homog(&rows.iter().collect::<Vec<_>>())
    }

    fn eval_matrix_basis(&self, basis: &[usize]) -> Element {
        let n = self.arity;
        let rows: Vec<Element> = (0..n)
            .map(|i| {
                let mut row = self.zero_element();
                for &(b, c) in self.basis_product(&basis[i * n..(i + 1) * n]) {
                    row.coeffs[b] = c;
                }
                row
            })
            .collect();
        self.mul_elements(&rows.iter().collect::<Vec<_>>())
    }

    fn grade_of_basis_tuple(&self, basis: &[usize]) -> usize {
        self.group
            .sum(&basis.iter().map(|&b| self.grades[b]).collect::<Vec<_>>())
    }

    /// Law `maa` (standard grading) or `m4a` (higher grading): products land
    /// in the grade component given by the sum of the argument grades.
    pub fn check_graded(&self, budget: &Budget) -> VerificationReport {
        let (law, width) = match self.grading {
            GradingKind::Standard => ("maa", self.arity),
            GradingKind::Higher => ("m4a", self.arity * self.arity),
        };
        let domain = (self.dim as u128).pow(width as u32);
        let Some(size) = budget.admit(domain) else {
            return VerificationReport::budget_exceeded(law, domain, budget.max_probes);
        };
        let mut probes = 0u64;
        let mut odo = Odometer::new(self.dim, width);
        while let Some(t) = odo.next() {
            probes += 1;
            let expected = self.grade_of_basis_tuple(t);
            let product = match self.grading {
                GradingKind::Standard => {
                    let mut e = self.zero_element();
                    for &(b, c) in self.basis_product(t) {
                        e.coeffs[b] = c;
                    }
                    e
                }
                GradingKind::Higher => self.eval_matrix_basis(t),
            };
            for (b, &c) in product.coeffs.iter().enumerate() {
                if c != 0 && self.grades[b] != expected {
                    let w = Witness::new(
                        t,
                        format!("term e{b} of grade {}", self.group.display(self.grades[b])),
                        format!("grade sum {}", self.group.display(expected)),
                    );
                    return VerificationReport::fail(law, w, probes);
                }
            }
        }
        debug_assert_eq!(probes, size);
        VerificationReport::pass(law, probes)
    }

    /// Total associativity on basis (2n-1)-tuples: all n placements of the
    /// inner product agree (law `mass`; `mm4` for the twisted 4-ary product).
    pub fn check_associativity(&self, budget: &Budget) -> VerificationReport {
        let n = self.arity;
        let law = if n == 4 { "mm4" } else { "mass" };
        let len = 2 * n - 1;
        let domain = (self.dim as u128).pow(len as u32);
        let Some(size) = budget.admit(domain) else {
            return VerificationReport::budget_exceeded(law, domain, budget.max_probes);
        };
        let mut probes = 0u64;
        let mut odo = Odometer::new(self.dim, len);
        while let Some(t) = odo.next() {
            probes += 1;
            let mut first: Option<Element> = None;
            for i in 0..n {
                let mut inner = self.zero_element();
                for &(b, c) in self.basis_product(&t[i..i + n]) {
                    inner.coeffs[b] = c;
                }
                let mut outer_args: Vec<Element> = Vec::with_capacity(n);
                for &x in &t[..i] {
                    outer_args.push(self.basis_element(x));
                }
                outer_args.push(inner);
                for &x in &t[i + n..] {
                    outer_args.push(self.basis_element(x));
                }
                let v = self.mul_elements(&outer_args.iter().collect::<Vec<_>>());
                match &first {
                    None => first = Some(v),
                    Some(v0) if *v0 != v => {
                        let w = Witness::new(t, v0.display(), v.display());
                        return VerificationReport::fail(law, w, probes)
                            .with_detail(format!("placements 0 and {i} differ"));
                    }
                    _ => {}
                }
            }
        }
        debug_assert_eq!(probes, size);
        VerificationReport::pass(law, probes)
    }

    /// Law `e0`: eps0(a',b') (a.b) = b.a on all homogeneous basis pairs.
    pub fn check_almost_commutative(&self, eps0: &FactorMap) -> Result<VerificationReport> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: self.arity,
            });
        }
        if eps0.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                got: eps0.arity(),
            });
        }
        let mut probes = 0u64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                probes += 1;
                let f = eps0.eval(&[self.grades[i], self.grades[j]])?;
                let ab = {
                    let mut e = self.zero_element();
                    for &(b, c) in self.basis_product(&[i, j]) {
                        e.coeffs[b] = c;
                    }
                    e
                };
                let ba = {
                    let mut e = self.zero_element();
                    for &(b, c) in self.basis_product(&[j, i]) {
                        e.coeffs[b] = c;
                    }
                    e
                };
                let lhs = self.scale_unit(&ab, &f)?;
                if lhs != ba {
                    let w = Witness::new(&[format!("e{i}"), format!("e{j}")], lhs.display(), ba.display());
                    return Ok(VerificationReport::fail("e0", w, probes));
                }
            }
        }
        Ok(VerificationReport::pass("e0", probes))
    }

    /// Law `r2` (binary) / `rn2` (n-ary): rho(grades) times the row-major
    /// matrix-polyad product equals the product of the transposed polyad, on
    /// all homogeneous basis matrix polyads.
    pub fn check_almost_medial(
        &self,
        rho: &FactorMap,
        budget: &Budget,
    ) -> Result<VerificationReport> {
        let n = self.arity;
        let nn = n * n;
        let law = if n == 2 { "r2" } else { "rn2" };
        if rho.arity() != nn {
            return Err(Error::ArityMismatch {
                expected: nn,
                got: rho.arity(),
            });
        }
        let domain = (self.dim as u128).pow(nn as u32);
        let Some(size) = budget.admit(domain) else {
            return Ok(VerificationReport::budget_exceeded(
                law,
                domain,
                budget.max_probes,
            ));
        };
        let mut probes = 0u64;
        let mut grades = vec![0usize; nn];
        let mut tt = vec![0usize; nn];
        let mut odo = Odometer::new(self.dim, nn);
        while let Some(t) = odo.next() {
            probes += 1;
            for (k, &b) in t.iter().enumerate() {
                grades[k] = self.grades[b];
            }
            for i in 0..n {
                for j in 0..n {
                    tt[j * n + i] = t[i * n + j];
                }
            }
            let f = rho.eval(&grades)?;
            let lhs = self.scale_unit(&self.eval_matrix_basis(t), &f)?;
            let rhs = self.eval_matrix_basis(&tt);
            if lhs != rhs {
                let input: Vec<String> = t.iter().map(|b| format!("e{b}")).collect();
                let w = Witness::new(&input, lhs.display(), rhs.display());
                return Ok(VerificationReport::fail(law, w, probes));
            }
        }
        debug_assert_eq!(probes, size);
        Ok(VerificationReport::pass(law, probes))
    }

    /// Twisted graded product: structure constants scaled by a factor
    /// evaluated on the argument grades. An arity-2 twist keeps the arity; an
    /// arity-4 twist of a binary algebra yields the 4-ary product; an
    /// n^2-ary twist yields the matrix-polyad product.
    pub fn twisted_product(&self, tau: &FactorMap, budget: &Budget) -> Result<GradedAlgebra> {
        let n = self.arity;
        let width = tau.arity();
        let valid = width == n || (self.arity == 2 && width == 4) || width == n * n;
        if !valid {
            return Err(Error::ArityMismatch {
                expected: n,
                got: width,
            });
        }
        let domain = (self.dim as u128).pow(width as u32);
        if budget.admit(domain).is_none() {
            return Err(Error::BudgetExceeded {
                domain,
                budget: budget.max_probes,
            });
        }
        let mut entries = Vec::new();
        let mut grades_buf = vec![0usize; width];
        let mut odo = Odometer::new(self.dim, width);
        while let Some(t) = odo.next() {
            for (k, &b) in t.iter().enumerate() {
                grades_buf[k] = self.grades[b];
            }
            let f = tau.eval(&grades_buf)?.residue(self.p)?;
            let base = if width == n {
                let mut e = self.zero_element();
                for &(b, c) in self.basis_product(t) {
                    e.coeffs[b] = c;
                }
                e
            } else if width == 4 && n == 2 {
                // ((ab)(cd)) row-major 4-product
                self.eval_matrix_basis(t)
            } else {
                self.eval_matrix_basis(t)
            };
            let scaled = self.scale(&base, f);
            let sparse: Sparse = scaled
                .coeffs
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(b, &c)| (b, c))
                .collect();
            if !sparse.is_empty() {
                entries.push((t.to_vec(), sparse));
            }
        }
        let alg = GradedAlgebra::new(
            width,
            self.dim,
            self.p,
            self.group.clone(),
            self.grades.clone(),
            entries,
            None,
        )?;
        Ok(if width == n {
            alg
        } else {
            alg.with_grading(GradingKind::Higher)
        })
    }

    /// When every basis product is a single basis element with coefficient 1,
    /// the structure constants induce a finite n-ary operation on the basis.
    pub fn induced_nary_op(&self) -> Option<NaryOp> {
        let mut table = Vec::with_capacity(self.table.len());
        for out in &self.table {
            match out.as_slice() {
                [(b, 1)] => table.push(*b),
                _ => return None,
            }
        }
        NaryOp::new(self.arity, self.dim, table).ok()
    }
}

/// Twisted tensor product of n algebras of arity n over the same grading
/// group and prime: the product of basis tuples multiplies componentwise and
/// is scaled by the inverse factor evaluated on the grade matrix (rows =
/// arguments, columns = components).
pub fn tensor_product_graded(
    algs: &[&GradedAlgebra],
    factor: &FactorMap,
) -> Result<GradedAlgebra> {
    let n = algs.len();
    if n < 2 {
        return Err(Error::Unsupported("need at least two tensor factors".into()));
    }
    let arity = algs[0].arity();
    if arity != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: arity,
        });
    }
    let p = algs[0].prime();
    let group = algs[0].group().clone();
    for a in algs {
        if a.arity() != arity || a.prime() != p || a.group() != &group {
            return Err(Error::DimensionMismatch(
                "tensor factors must share arity, prime and grading group".into(),
            ));
        }
    }
    let eps_mode = factor.arity() == 2 && n == 2;
    if !eps_mode && factor.arity() != n * n {
        return Err(Error::ArityMismatch {
            expected: n * n,
            got: factor.arity(),
        });
    }

    let dims: Vec<usize> = algs.iter().map(|a| a.dim()).collect();
    let dim: usize = dims.iter().product();
    let decompose = |mut idx: usize| -> Vec<usize> {
        let mut comps = vec![0usize; n];
        for k in (0..n).rev() {
            comps[k] = idx % dims[k];
            idx /= dims[k];
        }
        comps
    };

    let mut grades = Vec::with_capacity(dim);
    for idx in 0..dim {
        let comps = decompose(idx);
        let gs: Vec<usize> = comps.iter().enumerate().map(|(k, &c)| algs[k].grades()[c]).collect();
        grades.push(group.sum(&gs));
    }

    let mut entries = Vec::new();
    let mut odo = Odometer::new(dim, n);
    while let Some(args) = odo.next() {
        let comps: Vec<Vec<usize>> = args.iter().map(|&a| decompose(a)).collect();
        // grade matrix in row-major order: row j = argument j, column k = component k
        let mut grade_matrix = Vec::with_capacity(n * n);
        for row in &comps {
            for (k, &c) in row.iter().enumerate() {
                grade_matrix.push(algs[k].grades()[c]);
            }
        }
        let scalar = if eps_mode {
            factor.eval(&[grade_matrix[1], grade_matrix[2]])?
        } else {
            factor.eval(&grade_matrix)?
        };
        let scale = scalar.inv().residue(p)?;
        // componentwise products
        let mut component_products: Vec<&Sparse> = Vec::with_capacity(n);
        for k in 0..n {
            let mut basis = vec![0usize; n];
            for (j, row) in comps.iter().enumerate() {
                basis[j] = row[k];
            }
            component_products.push(algs[k].basis_product(&basis));
        }
        // distribute the tensor terms
        let mut terms: Vec<(usize, u64)> = vec![(0, scale)];
        for (k, prod) in component_products.iter().enumerate() {
            let mut next = Vec::with_capacity(terms.len() * prod.len());
            for &(idx_acc, c_acc) in &terms {
                for &(b, c) in prod.iter() {
                    next.push((idx_acc * dims[k] + b, fp::mul(p, c_acc, c)));
                }
            }
            terms = next;
            if terms.is_empty() {
                break;
            }
        }
        if !terms.is_empty() {
            entries.push((args.to_vec(), terms));
        }
    }
    GradedAlgebra::new(n, dim, p, group, grades, entries, None)
}

/// Verifies the defining tensor law (`ab1` for n = 2 with an arity-2 factor,
/// `rm` otherwise) on all product-basis argument tuples, and the conditional
/// inheritance of associativity from the components.
pub fn verify_tensor_product(
    product: &GradedAlgebra,
    algs: &[&GradedAlgebra],
    factor: &FactorMap,
    budget: &Budget,
) -> Result<ReportSet> {
    let n = algs.len();
    let p = product.prime();
    let eps_mode = factor.arity() == 2 && n == 2;
    let law = if eps_mode { "ab1" } else { "rm" };
    let dims: Vec<usize> = algs.iter().map(|a| a.dim()).collect();
    let decompose = |mut idx: usize| -> Vec<usize> {
        let mut comps = vec![0usize; n];
        for k in (0..n).rev() {
            comps[k] = idx % dims[k];
            idx /= dims[k];
        }
        comps
    };

    let mut set = ReportSet::default();
    let mut probes = 0u64;
    let mut failure = None;
    let mut odo = Odometer::new(product.dim(), n);
    'scan: while let Some(args) = odo.next() {
        probes += 1;
        let comps: Vec<Vec<usize>> = args.iter().map(|&a| decompose(a)).collect();
        let mut grade_matrix = Vec::with_capacity(n * n);
        for row in &comps {
            for (k, &c) in row.iter().enumerate() {
                grade_matrix.push(algs[k].grades()[c]);
            }
        }
        let scalar = if eps_mode {
            factor.eval(&[grade_matrix[1], grade_matrix[2]])?
        } else {
            factor.eval(&grade_matrix)?
        };
        // lhs: factor * product-algebra multiplication
        let mut star = product.zero_element();
        for &(b, c) in product.basis_product(args) {
            star.coeffs[b] = c;
        }
        let lhs = product.scale_unit(&star, &scalar)?;
        // rhs: tensor of componentwise products
        let mut terms: Vec<(usize, u64)> = vec![(0, 1)];
        for k in 0..n {
            let mut basis = vec![0usize; n];
            for (j, row) in comps.iter().enumerate() {
                basis[j] = row[k];
            }
            let prod = algs[k].basis_product(&basis);
            let mut next = Vec::new();
            for &(idx_acc, c_acc) in &terms {
                for &(b, c) in prod.iter() {
                    next.push((idx_acc * dims[k] + b, fp::mul(p, c_acc, c)));
                }
            }
            terms = next;
            if terms.is_empty() {
                break;
            }
        }
        let mut rhs = product.zero_element();
        for (b, c) in terms {
            rhs.coeffs[b] = fp::add(p, rhs.coeffs[b], c);
        }
        if lhs != rhs {
            let input: Vec<String> = args.iter().map(|a| format!("E{a}")).collect();
            failure = Some(Witness::new(&input, lhs.display(), rhs.display()));
            break 'scan;
        }
    }
    set.push(match failure {
        Some(w) => VerificationReport::fail(law, w, probes),
        None => VerificationReport::pass(law, probes),
    });

    // associativity is inherited from associative components
    if algs.iter().all(|a| a.check_associativity(budget).passed()) {
        set.push(
            product
                .check_associativity(budget)
                .with_detail("inherited from associative components"),
        );
    } else {
        set.push(VerificationReport::skipped(
            "mass",
            "components are not associative",
        ));
    }
    Ok(set)
}
