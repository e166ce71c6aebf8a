//! Bracketing trees for n-ary tensor products, their flat word realizations,
//! and position maps (the realization of morphisms in the concrete word
//! model): identities, block permutations for braidings, and the transpose
//! block permutation for medialings.

use crate::error::{Error, Result};

/// A parenthesization of a polyad: every internal node has exactly n
/// children; leaves are numbered left to right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BracketTree {
    Leaf(usize),
    Node(Vec<BracketTree>),
}

impl BracketTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(children) => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Left-to-right leaf sequence (the realization as a flat word).
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            BracketTree::Leaf(a) => out.push(*a),
            BracketTree::Node(children) => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    fn node_at(&self, path: &[usize]) -> Result<&BracketTree> {
        let mut cur = self;
        for &step in path {
            match cur {
                BracketTree::Node(children) if step < children.len() => {
                    cur = &children[step];
                }
                _ => {
                    return Err(Error::PatternMismatch(format!(
                        "no child {step} along path"
                    )))
                }
            }
        }
        Ok(cur)
    }

    fn replace_at(&self, path: &[usize], replacement: BracketTree) -> BracketTree {
        if path.is_empty() {
            return replacement;
        }
        match self {
            BracketTree::Node(children) => {
                let mut out = children.clone();
                out[path[0]] = out[path[0]].replace_at(&path[1..], replacement);
                BracketTree::Node(out)
            }
            BracketTree::Leaf(_) => unreachable!("path was validated"),
        }
    }

    pub fn render(&self) -> String {
        match self {
            BracketTree::Leaf(a) => format!("{a}"),
            BracketTree::Node(children) => {
                let inner: Vec<String> = children.iter().map(|c| c.render()).collect();
                format!("[{}]", inner.join(" "))
            }
        }
    }
}

/// Admissible flat lengths are k(n-1)+1.
pub fn admissible_length(arity: usize, len: usize) -> bool {
    len >= 1 && (len - 1) % (arity - 1) == 0
}

/// All n-ary bracketing trees with `len` leaves labeled 0..len-1 left to
/// right, in a deterministic order. The count is the Fuss-Catalan number.
pub fn enumerate_bracketings(arity: usize, len: usize) -> Result<Vec<BracketTree>> {
    if arity < 2 {
        return Err(Error::InvalidTable("arity must be >= 2".into()));
    }
    if !admissible_length(arity, len) {
        return Err(Error::InadmissibleLength { len, arity });
    }
    fn build(arity: usize, len: usize, next_leaf: &mut usize) -> Vec<(BracketTree, usize)> {
        // returns trees along with the leaf counter after them; the counter
        // passed in is restored by the caller for sibling alternatives
        if len == 1 {
            let t = BracketTree::Leaf(*next_leaf);
            return vec![(t, *next_leaf + 1)];
        }
        let mut out = Vec::new();
        // compositions of len into arity admissible parts
        fn compositions(arity: usize, len: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if parts.len() == arity {
                if len == 0 {
                    out.push(parts.clone());
                }
                return;
            }
            let remaining_slots = arity - parts.len() - 1;
            let mut part = 1;
            while part + remaining_slots <= len {
                if admissible_length(if arity >= 2 { arity } else { 2 }, part) {
                    parts.push(part);
                    compositions(arity, len - part, parts, out);
                    parts.pop();
                }
                part += 1;
            }
        }
        let mut comps = Vec::new();
        compositions(arity, len, &mut Vec::new(), &mut comps);
        for comp in comps {
            // cartesian product of child alternatives, keeping leaf numbering
            let mut partial: Vec<(Vec<BracketTree>, usize)> = vec![(Vec::new(), *next_leaf)];
            for &part in &comp {
                let mut extended = Vec::new();
                for (children, counter) in &partial {
                    let mut c = *counter;
                    let subs = build(arity, part, &mut c);
                    for (sub, after) in subs {
                        let mut nc = children.clone();
                        nc.push(sub);
                        extended.push((nc, after));
                    }
                }
                partial = extended;
            }
            for (children, after) in partial {
                out.push((BracketTree::Node(children), after));
            }
        }
        out
    }
    let mut counter = 0usize;
    let trees = build(arity, len, &mut counter);
    Ok(trees.into_iter().map(|(t, _)| t).collect())
}

/// Inner-bracket shift i -> i+1 at the node addressed by `path` (1-based i,
/// 1 <= i <= n-1): [.., M[y_1..y_n], x, ..] becomes [.., y_1, M[y_2..y_n, x], ..].
/// The flat leaf word is unchanged.
pub fn associator_move(tree: &BracketTree, path: &[usize], i: usize) -> Result<BracketTree> {
    let node = tree.node_at(path)?;
    let BracketTree::Node(children) = node else {
        return Err(Error::PatternMismatch("addressed node is a leaf".into()));
    };
    let n = children.len();
    if i == 0 || i >= n {
        return Err(Error::PatternMismatch(format!(
            "inner position {i} must lie in 1..{n}"
        )));
    }
    let BracketTree::Node(inner) = &children[i - 1] else {
        return Err(Error::PatternMismatch(format!(
            "child {i} is not an inner product"
        )));
    };
    let mut new_children: Vec<BracketTree> = Vec::with_capacity(n);
    new_children.extend_from_slice(&children[..i - 1]);
    new_children.push(inner[0].clone());
    let mut shifted: Vec<BracketTree> = inner[1..].to_vec();
    shifted.push(children[i].clone());
    new_children.push(BracketTree::Node(shifted));
    new_children.extend_from_slice(&children[i + 1..]);
    let moved = BracketTree::Node(new_children);
    debug_assert_eq!(tree.node_at(path).unwrap().leaves(), moved.leaves());
    Ok(tree.replace_at(path, moved))
}

/// A word of atoms; the empty word is the unit object.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordObject {
    pub atoms: Vec<usize>,
}

impl WordObject {
    pub fn unit() -> Self {
        WordObject::default()
    }

    pub fn concat(words: &[&WordObject]) -> WordObject {
        WordObject {
            atoms: words.iter().flat_map(|w| w.atoms.iter().copied()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// A total map of word positions; bijective maps realize braidings,
/// medialings and associators, non-bijective ones the regular (von Neumann)
/// generalized braidings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosMap {
    pub source: usize,
    pub target: usize,
    pub map: Vec<usize>,
}

impl PosMap {
    pub fn new(source: usize, target: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != source || map.iter().any(|&t| t >= target && target > 0)
            || (target == 0 && !map.is_empty())
        {
            return Err(Error::DimensionMismatch(
                "position map does not fit its shape".into(),
            ));
        }
        Ok(PosMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(len: usize) -> Self {
        PosMap {
            source: len,
            target: len,
            map: (0..len).collect(),
        }
    }

    /// Applies `self` first and `next` second.
    pub fn then(&self, next: &PosMap) -> Result<PosMap> {
        if self.target != next.source {
            return Err(Error::NotComposable(self.target, next.source));
        }
        Ok(PosMap {
            source: self.source,
            target: next.target,
            map: self.map.iter().map(|&p| next.map[p]).collect(),
        })
    }

    pub fn is_permutation(&self) -> bool {
        if self.source != self.target {
            return false;
        }
        let mut seen = vec![false; self.target];
        self.map.iter().all(|&t| {
            if seen[t] {
                false
            } else {
                seen[t] = true;
                true
            }
        })
    }

    pub fn inverse(&self) -> Result<PosMap> {
        if !self.is_permutation() {
            return Err(Error::Unsupported("only permutations invert".into()));
        }
        let mut map = vec![0usize; self.source];
        for (s, &t) in self.map.iter().enumerate() {
            map[t] = s;
        }
        Ok(PosMap {
            source: self.target,
            target: self.source,
            map,
        })
    }

    /// Blockwise (side by side) assembly of maps.
    pub fn tensor(maps: &[&PosMap]) -> PosMap {
        let source = maps.iter().map(|m| m.source).sum();
        let target = maps.iter().map(|m| m.target).sum();
        let mut map = Vec::with_capacity(source);
        let mut offset = 0usize;
        for m in maps {
            map.extend(m.map.iter().map(|&t| t + offset));
            offset += m.target;
        }
        PosMap {
            source,
            target,
            map,
        }
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.map.iter().map(|t| t.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// The block permutation placing source block `sigma[j]` at target slot j.
pub fn block_perm(lens: &[usize], sigma: &[usize]) -> Result<PosMap> {
    let k = lens.len();
    if sigma.len() != k {
        return Err(Error::DimensionMismatch("sigma must address every block".into()));
    }
    let mut seen = vec![false; k];
    for &b in sigma {
        if b >= k || seen[b] {
            return Err(Error::DimensionMismatch("sigma is not a permutation".into()));
        }
        seen[b] = true;
    }
    let total: usize = lens.iter().sum();
    let mut src_offset = vec![0usize; k];
    for b in 1..k {
        src_offset[b] = src_offset[b - 1] + lens[b - 1];
    }
    let mut map = vec![0usize; total];
    let mut tgt = 0usize;
    for &b in sigma {
        for o in 0..lens[b] {
            map[src_offset[b] + o] = tgt + o;
        }
        tgt += lens[b];
    }
    Ok(PosMap {
        source: total,
        target: total,
        map,
    })
}

/// Braiding realization: given n block lengths, the block permutation
/// sending the tuple X to (X_{sigma(1)}, ..., X_{sigma(n)}).
pub fn braiding_perm(lens: &[usize], sigma: &[usize]) -> Result<PosMap> {
    block_perm(lens, sigma)
}

/// The order-reversing permutation of n factors.
pub fn reversal(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

/// Medialing realization: given n^2 block lengths in row-major order, the
/// transpose block permutation sending block (i,j) to slot (j,i).
pub fn medialing_perm(n: usize, lens: &[usize]) -> Result<PosMap> {
    if lens.len() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "medialing needs {} block lengths",
            n * n
        )));
    }
    let sigma: Vec<usize> = (0..n * n).map(|t| (t % n) * n + t / n).collect();
    block_perm(lens, &sigma)
}

/// Embeds a block permutation of `width` adjacent blocks starting at `start`
/// into the full block list, acting as the identity elsewhere.
pub fn window_block_perm(
    lens: &[usize],
    start: usize,
    width: usize,
    sigma: &[usize],
) -> Result<PosMap> {
    if start + width > lens.len() || sigma.len() != width {
        return Err(Error::DimensionMismatch("window does not fit".into()));
    }
    let mut full: Vec<usize> = (0..lens.len()).collect();
    for (j, &b) in sigma.iter().enumerate() {
        full[start + j] = start + b;
    }
    block_perm(lens, &full)
}
