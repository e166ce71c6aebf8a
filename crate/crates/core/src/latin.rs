//! Backtracking enumeration of n-ary quasigroup tables (Latin squares and
//! Latin hypercubes) in lexicographic table order.

use crate::error::{Error, Result};
use crate::nary::NaryOp;

/// Enumerates all order-q arity-n quasigroup tables in lexicographic order,
/// calling `visit` on each completed table. `visit` returns `false` to stop
/// early. `max_nodes` bounds the number of cell placements explored; the
/// search errors out when the bound is hit. Returns the number of tables
/// visited.
pub fn for_each_quasigroup(
    order: usize,
    arity: usize,
    max_nodes: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<u64> {
    if order == 0 || arity < 2 {
        return Err(Error::InvalidTable(
            "need order >= 1 and arity >= 2".into(),
        ));
    }
    if order > 64 {
        return Err(Error::Unsupported("orders above 64 are not supported".into()));
    }
    let cells = order
        .checked_pow(arity as u32)
        .ok_or_else(|| Error::InvalidTable("table size overflows".into()))?;

    // one constraint line per axis: fix all coordinates but one
    let lines_per_axis = cells / order;
    let mut line_of_cell = vec![vec![0usize; cells]; arity];
    for cell in 0..cells {
        let mut coords = vec![0usize; arity];
        let mut r = cell;
        for k in (0..arity).rev() {
            coords[k] = r % order;
            r /= order;
        }
        for axis in 0..arity {
            let mut key = 0usize;
            for (k, &c) in coords.iter().enumerate() {
                if k != axis {
                    key = key * order + c;
                }
            }
            line_of_cell[axis][cell] = key;
        }
    }

    let mut masks = vec![vec![0u64; lines_per_axis]; arity];
    let mut table = vec![0usize; cells];
    let mut nodes = 0u64;
    let mut count = 0u64;
    let mut stop = false;

    struct Ctx<'a> {
        order: usize,
        arity: usize,
        cells: usize,
        line_of_cell: &'a [Vec<usize>],
        max_nodes: u64,
    }

    fn descend(
        ctx: &Ctx,
        cell: usize,
        masks: &mut [Vec<u64>],
        table: &mut [usize],
        nodes: &mut u64,
        count: &mut u64,
        stop: &mut bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<()> {
        if *stop {
            return Ok(());
        }
        if cell == ctx.cells {
            *count += 1;
            if !visit(table) {
                *stop = true;
            }
            return Ok(());
        }
        for v in 0..ctx.order {
            let bit = 1u64 << v;
            let blocked = (0..ctx.arity)
                .any(|axis| masks[axis][ctx.line_of_cell[axis][cell]] & bit != 0);
            if blocked {
                continue;
            }
            *nodes += 1;
            if *nodes > ctx.max_nodes {
                return Err(Error::BudgetExceeded {
                    domain: *nodes as u128,
                    budget: ctx.max_nodes,
                });
            }
            for axis in 0..ctx.arity {
                masks[axis][ctx.line_of_cell[axis][cell]] |= bit;
            }
            table[cell] = v;
            descend(ctx, cell + 1, masks, table, nodes, count, stop, visit)?;
            for axis in 0..ctx.arity {
                masks[axis][ctx.line_of_cell[axis][cell]] &= !bit;
            }
            if *stop {
                return Ok(());
            }
        }
        Ok(())
    }

    let ctx = Ctx {
        order,
        arity,
        cells,
        line_of_cell: &line_of_cell,
        max_nodes,
    };
    descend(
        &ctx, 0, &mut masks, &mut table, &mut nodes, &mut count, &mut stop, visit,
    )?;
    Ok(count)
}

/// Counts quasigroup tables satisfying `predicate`.
pub fn count_quasigroups(
    order: usize,
    arity: usize,
    max_nodes: u64,
    mut predicate: impl FnMut(&NaryOp) -> bool,
) -> Result<u64> {
    let mut matched = 0u64;
    for_each_quasigroup(order, arity, max_nodes, &mut |table| {
        let op = NaryOp::new(arity, order, table.to_vec()).expect("enumerated table is closed");
        if predicate(&op) {
            matched += 1;
        }
        true
    })?;
    Ok(matched)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latin_square_counts() {
        assert_eq!(count_quasigroups(1, 2, 1 << 20, |_| true).unwrap(), 1);
        assert_eq!(count_quasigroups(2, 2, 1 << 20, |_| true).unwrap(), 2);
        assert_eq!(count_quasigroups(3, 2, 1 << 20, |_| true).unwrap(), 12);
        assert_eq!(count_quasigroups(4, 2, 1 << 24, |_| true).unwrap(), 576);
    }

    #[test]
    fn every_enumerated_table_is_a_quasigroup() {
        let n = for_each_quasigroup(3, 2, 1 << 20, &mut |table| {
            let op = NaryOp::new(2, 3, table.to_vec()).unwrap();
            assert!(op.check_quasigroup().passed());
            true
        })
        .unwrap();
        assert_eq!(n, 12);
    }

    #[test]
    fn ternary_latin_cubes_order_2() {
        // the two order-2 Latin cubes are the two linear tables a+b+c+k mod 2
        assert_eq!(count_quasigroups(2, 3, 1 << 20, |_| true).unwrap(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            for_each_quasigroup(5, 2, 10, &mut |_| true),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        let n = for_each_quasigroup(3, 2, 1 << 20, &mut |_| {
            seen += 1;
            seen < 3
        })
        .unwrap();
        assert_eq!(n, 3);
    }
}
