//! Finite carriers, n-ary operation tables, matrix polyads, and the
//! structural predicates: total associativity (law `mass`), mediality (laws
//! `mm`/`mna`), cancellativity, the quasigroup property, querelements and
//! idempotents.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::report::{Budget, VerificationReport, Witness};
use crate::tuples::{decode, Odometer};

/// A finite carrier with canonical labels 0..q-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Carrier {
    order: usize,
}

impl Carrier {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("carrier order must be >= 1".into()));
        }
        Ok(Carrier { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// An n x n array of labels whose row-major product uses n+1 applications of
/// the n-ary multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPolyad {
    n: usize,
    entries: Vec<usize>,
}

impl MatrixPolyad {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "matrix polyad needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(MatrixPolyad { n, entries })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows must form a square".into()));
        }
        Ok(MatrixPolyad {
            n,
            entries: rows.concat(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// The medial twist: transposition of the matrix polyad.
    pub fn transpose(&self) -> MatrixPolyad {
        let n = self.n;
        let mut entries = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        MatrixPolyad { n, entries }
    }
}

/// The polyadic medial twist map on matrix polyads (transposition).
pub fn medial_twist(m: &MatrixPolyad) -> MatrixPolyad {
    m.transpose()
}

/// A total n-ary operation on a finite carrier, stored as a lookup table in
/// row-major order (innermost index = last argument).
#[derive(Debug)]
pub struct NaryOp {
    arity: usize,
    carrier: Carrier,
    table: Vec<usize>,
    assoc: OnceLock<bool>,
}

impl Clone for NaryOp {
    fn clone(&self) -> Self {
        NaryOp {
            arity: self.arity,
            carrier: self.carrier,
            table: self.table.clone(),
            assoc: self.assoc.clone(),
        }
    }
}

impl PartialEq for NaryOp {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.carrier == other.carrier && self.table == other.table
    }
}

impl Eq for NaryOp {}

impl NaryOp {
    pub fn new(arity: usize, order: usize, table: Vec<usize>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidTable("arity must be >= 2".into()));
        }
        let carrier = Carrier::new(order)?;
        let expected = order.checked_pow(arity as u32).ok_or_else(|| {
            Error::InvalidTable("table size overflows".into())
        })?;
        if table.len() != expected {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::InvalidTable(format!(
                "entry {bad} outside carrier 0..{order}"
            )));
        }
        Ok(NaryOp {
            arity,
            carrier,
            table,
            assoc: OnceLock::new(),
        })
    }

    pub fn from_fn(arity: usize, order: usize, f: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order.pow(arity as u32));
        let mut odo = Odometer::new(order, arity);
        while let Some(t) = odo.next() {
            table.push(f(t));
        }
        NaryOp::new(arity, order, table)
    }

    /// mu[a_1..a_n] = sum_i coeff_i * a_i + c (mod q).
    pub fn linear_mod(order: usize, coeffs: &[u64], c: u64) -> Result<Self> {
        let q = order as u64;
        NaryOp::from_fn(coeffs.len(), order, |args| {
            let mut acc = c % q;
            for (&a, &k) in args.iter().zip(coeffs) {
                acc = (acc + k % q * a as u64) % q;
            }
            acc as usize
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn rank(&self, args: &[usize]) -> usize {
        let q = self.carrier.order();
        let mut r = 0usize;
        for &a in args {
            r = r * q + a;
        }
        r
    }

    #[inline]
    pub fn eval(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        self.table[self.rank(args)]
    }

    /// Left-to-right evaluation of a flat polyad of admissible length
    /// k(n-1)+1. Only exposed for totally associative operations; other
    /// operations need an explicit bracketing tree.
    pub fn eval_polyad(&self, items: &[usize]) -> Result<usize> {
        let n = self.arity;
        if items.is_empty() || (items.len() - 1) % (n - 1) != 0 {
            return Err(Error::InadmissibleLength {
                len: items.len(),
                arity: n,
            });
        }
        if !self.is_totally_associative() {
            return Err(Error::StructureViolation(
                "totally associative operation".into(),
            ));
        }
        let mut acc = items[0];
        let mut rest = &items[1..];
        let mut buf = vec![0usize; n];
        while !rest.is_empty() {
            buf[0] = acc;
            buf[1..].copy_from_slice(&rest[..n - 1]);
            acc = self.eval(&buf);
            rest = &rest[n - 1..];
        }
        Ok(acc)
    }

    /// Row-major product of a matrix polyad: n row products followed by one
    /// outer product (n+1 multiplications in total).
    pub fn eval_matrix_polyad(&self, m: &MatrixPolyad) -> Result<usize> {
        let n = self.arity;
        if m.size() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix polyad of size {} fed to an arity-{} operation",
                m.size(),
                n
            )));
        }
        Ok(self.eval_matrix_flat(m.entries()))
    }

    #[inline]
    fn eval_matrix_flat(&self, entries: &[usize]) -> usize {
        let n = self.arity;
        let mut rows = vec![0usize; n];
        for i in 0..n {
            rows[i] = self.eval(&entries[i * n..(i + 1) * n]);
        }
        self.eval(&rows)
    }

    pub fn is_totally_associative(&self) -> bool {
        *self
            .assoc
            .get_or_init(|| self.check_total_associativity().passed())
    }

    /// Law `mass`: all n placements of the inner product inside a (2n-1)-tuple
    /// agree. The witness carries the tuple and the two differing placements.
    pub fn check_total_associativity(&self) -> VerificationReport {
        let n = self.arity;
        let q = self.carrier.order();
        let len = 2 * n - 1;
        let mut probes = 0u64;
        let mut buf = vec![0usize; n];
        let mut odo = Odometer::new(q, len);
        while let Some(t) = odo.next() {
            probes += 1;
            let mut first = None;
            for i in 0..n {
                buf[n - 1] = self.eval(&t[i..i + n]);
                let mut k = 0;
                for (j, &x) in t.iter().enumerate() {
                    if j < i || j >= i + n {
                        buf[k] = x;
                        k += 1;
                    }
                }
                buf.rotate_right(n - 1 - i);
                let v = self.eval(&buf);
                match first {
                    None => first = Some(v),
                    Some(v0) if v0 != v => {
                        let w = Witness::new(t, v0, v);
                        return VerificationReport::fail("mass", w, probes)
                            .with_detail(format!("placements 0 and {i} differ"));
                    }
                    _ => {}
                }
            }
        }
        VerificationReport::pass("mass", probes)
    }

    /// Polyadic mediality (law `mm` for n = 2, `mna` otherwise): the product
    /// of every matrix polyad equals the product of its transpose.
    pub fn check_mediality(&self, budget: &Budget, jobs: usize) -> VerificationReport {
        let n = self.arity;
        let q = self.carrier.order();
        let law = if n == 2 { "mm" } else { "mna" };
        let nn = n * n;
        let domain = (q as u128).pow(nn as u32);
        let Some(size) = budget.admit(domain) else {
            return VerificationReport::budget_exceeded(law, domain, budget.max_probes);
        };

        let scan_range = |lo: u64, hi: u64| -> Option<(u64, Witness)> {
            let mut t = vec![0usize; nn];
            let mut tt = vec![0usize; nn];
            for rank in lo..hi {
                decode(rank, q, &mut t);
                for i in 0..n {
                    for j in 0..n {
                        tt[j * n + i] = t[i * n + j];
                    }
                }
                let lhs = self.eval_matrix_flat(&t);
                let rhs = self.eval_matrix_flat(&tt);
                if lhs != rhs {
                    return Some((rank, Witness::new(&t, lhs, rhs)));
                }
            }
            None
        };

        let hit = if jobs > 1 && size >= 4096 {
            let chunk = size.div_ceil(jobs as u64);
            std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for w in 0..jobs as u64 {
                    let lo = w * chunk;
                    let hi = (lo + chunk).min(size);
                    if lo < hi {
                        handles.push(scope.spawn(move || scan_range(lo, hi)));
                    }
                }
                handles
                    .into_iter()
                    .filter_map(|h| h.join().expect("scan worker panicked"))
                    .min_by_key(|(rank, _)| *rank)
            })
        } else {
            scan_range(0, size)
        };

        match hit {
            Some((rank, w)) => VerificationReport::fail(law, w, rank + 1),
            None => VerificationReport::pass(law, size),
        }
    }

    fn check_sections(&self, law: &str, require_onto: bool) -> VerificationReport {
        let n = self.arity;
        let q = self.carrier.order();
        let mut probes = 0u64;
        let mut args = vec![0usize; n];
        let mut seen = vec![usize::MAX; q];
        for pos in 0..n {
            let mut odo = Odometer::new(q, n - 1);
            while let Some(ctx) = odo.next() {
                seen.iter_mut().for_each(|s| *s = usize::MAX);
                for (k, &c) in ctx.iter().enumerate() {
                    args[if k < pos { k } else { k + 1 }] = c;
                }
                for x in 0..q {
                    args[pos] = x;
                    probes += 1;
                    let v = self.eval(&args);
                    if seen[v] != usize::MAX {
                        let mut input: Vec<String> =
                            args.iter().map(|a| a.to_string()).collect();
                        input[pos] = "*".into();
                        let w = Witness::new(
                            &input,
                            format!("arg {} at position {pos} gives {v}", seen[v]),
                            format!("arg {x} at position {pos} gives {v}"),
                        );
                        return VerificationReport::fail(law, w, probes);
                    }
                    seen[v] = x;
                }
            }
        }
        let _ = require_onto; // injective = bijective on a finite carrier
        VerificationReport::pass(law, probes)
    }

    /// Every unary section (all but one argument fixed) is injective.
    pub fn check_cancellative(&self) -> VerificationReport {
        self.check_sections("cancellative", false)
    }

    /// Every unary section is bijective: the table is a Latin square (n = 2)
    /// or Latin hypercube.
    pub fn check_quasigroup(&self) -> VerificationReport {
        self.check_sections("quasigroup", true)
    }

    fn require_nary_group(&self) -> Result<()> {
        if !self.check_quasigroup().passed() || !self.is_totally_associative() {
            return Err(Error::StructureViolation("n-ary group".into()));
        }
        Ok(())
    }

    /// The unique querelement of `g`: mu[g,...,g,q] = g, verified in every
    /// argument position.
    pub fn querelement(&self, g: usize) -> Result<usize> {
        self.require_nary_group()?;
        let n = self.arity;
        let q = self.carrier.order();
        let mut args = vec![g; n];
        let mut solution = None;
        for x in 0..q {
            args[n - 1] = x;
            if self.eval(&args) == g {
                if solution.is_some() {
                    return Err(Error::AmbiguousQuerelement(g));
                }
                solution = Some(x);
            }
        }
        let quer = solution.ok_or(Error::NoQuerelement(g))?;
        for pos in 0..n {
            let mut probe = vec![g; n];
            probe[pos] = quer;
            if self.eval(&probe) != g {
                return Err(Error::QuerelementPosition {
                    element: g,
                    position: pos,
                });
            }
        }
        Ok(quer)
    }

    pub fn querelement_map(&self) -> Result<Vec<usize>> {
        (0..self.carrier.order())
            .map(|g| self.querelement(g))
            .collect()
    }

    /// All g with mu[g,...,g] = g, in ascending label order.
    pub fn find_idempotents(&self) -> Vec<usize> {
        let n = self.arity;
        (0..self.carrier.order())
            .filter(|&g| self.eval(&vec![g; n]) == g)
            .collect()
    }

    /// All polyadic units: e with mu[e,...,e,a,e,...,e] = a for every a and
    /// every position of a.
    pub fn find_units(&self) -> Vec<usize> {
        let n = self.arity;
        let q = self.carrier.order();
        (0..q)
            .filter(|&e| {
                (0..q).all(|a| {
                    (0..n).all(|pos| {
                        let mut args = vec![e; n];
                        args[pos] = a;
                        self.eval(&args) == a
                    })
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::report::LawStatus;

    #[test]
    fn matrix_polyad_eval_addition_mod_5() {
        let op = NaryOp::linear_mod(5, &[1, 1], 0).unwrap();
        let m = MatrixPolyad::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(op.eval_matrix_polyad(&m).unwrap(), 0);
    }

    #[test]
    fn matrix_polyad_eval_ternary_sum_mod_4() {
        let op = NaryOp::linear_mod(4, &[1, 1, 1], 0).unwrap();
        let m = MatrixPolyad::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(op.eval_matrix_polyad(&m).unwrap(), 3);
    }

    #[test]
    fn matrix_polyad_eval_s3() {
        // rows ((12), e) and ((13), e): product is (12)(13)
        let op = models::s3_op();
        let m = MatrixPolyad::from_rows(&[vec![1, 0], vec![2, 0]]).unwrap();
        let expect = models::s3_compose(1, 2);
        assert_eq!(op.eval_matrix_polyad(&m).unwrap(), expect);
    }

    #[test]
    fn total_associativity() {
        let add4 = NaryOp::linear_mod(4, &[1, 1, 1], 0).unwrap();
        assert!(add4.check_total_associativity().passed());

        let sub5 = NaryOp::from_fn(2, 5, |t| (t[0] + 5 - t[1]) % 5).unwrap();
        let rep = sub5.check_total_associativity();
        assert_eq!(rep.status, LawStatus::Fail);
        // (a-b)-c != a-(b-c); lexicographically first counterexample
        assert_eq!(
            rep.witness.as_ref().unwrap().input,
            vec!["0", "0", "1"]
        );

        assert!(models::s3_op().check_total_associativity().passed());
    }

    #[test]
    fn mediality() {
        let budget = Budget::default();
        let sub5 = NaryOp::from_fn(2, 5, |t| (t[0] + 5 - t[1]) % 5).unwrap();
        assert!(sub5.check_mediality(&budget, 1).passed());

        let s3 = models::s3_op();
        let rep = s3.check_mediality(&budget, 1);
        assert_eq!(rep.status, LawStatus::Fail);
        let w = rep.witness.as_ref().unwrap();
        // first counterexample is (e,(12),(13),e)
        assert_eq!(w.input, vec!["0", "1", "2", "0"]);

        let add3 = NaryOp::linear_mod(3, &[1, 1, 1], 0).unwrap();
        assert!(add3.check_mediality(&budget, 1).passed());
    }

    #[test]
    fn parallel_scan_matches_serial() {
        let budget = Budget::default();
        let s3 = models::s3_op();
        let serial = s3.check_mediality(&budget, 1);
        let mut tweaked = Budget::default();
        tweaked.max_probes = 10_000_000;
        // force the parallel path by lowering the threshold via many jobs on
        // the full 6^4 = 1296 domain; 1296 < 4096 keeps it serial, so scan a
        // ternary op instead for a domain of 6561 ranks
        let add3 = NaryOp::linear_mod(3, &[1, 1, 1], 1).unwrap();
        let a = add3.check_mediality(&tweaked, 1);
        let b = add3.check_mediality(&tweaked, 4);
        assert_eq!(a, b);
        let _ = serial;
    }

    #[test]
    fn medial_twist_is_involution() {
        let m = MatrixPolyad::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(
            medial_twist(&m).entries(),
            &[1, 3, 2, 4],
            "transpose of [[1,2],[3,4]]"
        );
        assert_eq!(medial_twist(&medial_twist(&m)), m);
    }

    #[test]
    fn cancellativity_and_quasigroup() {
        let add4 = NaryOp::linear_mod(4, &[1, 1], 0).unwrap();
        assert!(add4.check_cancellative().passed());

        let mul4 = NaryOp::from_fn(2, 4, |t| (t[0] * t[1]) % 4).unwrap();
        assert_eq!(mul4.check_cancellative().status, LawStatus::Fail);
        assert_eq!(mul4.check_quasigroup().status, LawStatus::Fail);

        let lin5 = NaryOp::linear_mod(5, &[2, 3], 1).unwrap();
        assert!(lin5.check_quasigroup().passed());

        let add5t = NaryOp::linear_mod(5, &[1, 1, 1], 0).unwrap();
        assert!(add5t.check_cancellative().passed());
    }

    #[test]
    fn order_3_quasigroup_census() {
        // the operations on q=3 passing the quasigroup check are exactly the
        // 12 Latin squares of order 3
        let mut count = 0usize;
        for rank in 0..19683u32 {
            let mut digits = [0usize; 9];
            let mut r = rank;
            for d in digits.iter_mut().rev() {
                *d = (r % 3) as usize;
                r /= 3;
            }
            let op = NaryOp::new(2, 3, digits.to_vec()).unwrap();
            if op.check_quasigroup().passed() {
                count += 1;
            }
        }
        assert_eq!(count, 12);
    }

    #[test]
    fn querelements() {
        let add4 = NaryOp::linear_mod(4, &[1, 1, 1], 0).unwrap();
        assert_eq!(add4.querelement(1).unwrap(), 3);
        assert_eq!(add4.querelement(0).unwrap(), 0);
        // double quer returns the element itself
        for g in 0..4 {
            let q = add4.querelement(g).unwrap();
            assert_eq!(add4.querelement(q).unwrap(), g);
        }

        let shifted = NaryOp::linear_mod(3, &[1, 1, 1], 1).unwrap();
        assert_eq!(shifted.querelement(0).unwrap(), 2);

        let mul4 = NaryOp::from_fn(2, 4, |t| (t[0] * t[1]) % 4).unwrap();
        assert!(mul4.querelement(1).is_err());
    }

    #[test]
    fn idempotents() {
        let add5 = NaryOp::linear_mod(5, &[1, 1], 0).unwrap();
        assert_eq!(add5.find_idempotents(), vec![0]);
        let lin5 = NaryOp::linear_mod(5, &[2, 3], 1).unwrap();
        assert_eq!(lin5.find_idempotents(), vec![1]);
        let add3t = NaryOp::linear_mod(3, &[1, 1, 1], 0).unwrap();
        assert_eq!(add3t.find_idempotents(), vec![0]);
    }

    #[test]
    fn units_detection() {
        let add4t = NaryOp::linear_mod(4, &[1, 1, 1], 0).unwrap();
        assert_eq!(add4t.find_units(), vec![0, 2]);
        let shifted3 = NaryOp::linear_mod(3, &[1, 1, 1], 1).unwrap();
        assert_eq!(shifted3.find_units(), vec![1]);
        let shifted4 = NaryOp::linear_mod(4, &[1, 1, 1], 1).unwrap();
        assert!(shifted4.find_units().is_empty());
    }

    #[test]
    fn polyad_eval_requires_associativity() {
        let add4 = NaryOp::linear_mod(4, &[1, 1, 1], 0).unwrap();
        assert_eq!(add4.eval_polyad(&[1, 2, 3, 0, 1]).unwrap(), 3);
        assert!(matches!(
            add4.eval_polyad(&[1, 2]),
            Err(Error::InadmissibleLength { .. })
        ));
        let sub5 = NaryOp::from_fn(2, 5, |t| (t[0] + 5 - t[1]) % 5).unwrap();
        assert!(matches!(
            sub5.eval_polyad(&[1, 2, 3]),
            Err(Error::StructureViolation(_))
        ));
    }

    #[test]
    fn flat_eval_matches_matrix_eval_for_associative_ops() {
        for (q, n) in [(2usize, 2usize), (3, 2), (2, 3), (3, 3)] {
            let op = NaryOp::linear_mod(q, &vec![1; n], 1).unwrap();
            let budget = Budget::default();
            assert!(op.check_mediality(&budget, 1).passed());
            let mut odo = Odometer::new(q, n * n);
            while let Some(t) = odo.next() {
                let m = MatrixPolyad::new(n, t.to_vec()).unwrap();
                assert_eq!(
                    op.eval_matrix_polyad(&m).unwrap(),
                    op.eval_polyad(t).unwrap()
                );
            }
        }
    }
}
