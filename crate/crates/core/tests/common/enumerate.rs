//! Exhaustive enumeration of propositional formulas over three atoms,
//! one representative per class under renaming of atoms and swapping the
//! arguments of `&` and `|`. Both symmetries preserve truth tables, so each
//! class has a single classical verdict.
//!
//! Formulas are handled as preorder codes: 0..3 are the atoms, 3/4/5 are
//! `&`, `|`, `=>`. A formula is in normal form when, below every `&` and
//! `|`, the left code is lexicographically at most the right one; the
//! representative of a class is its least normal form whose atom
//! occurrence counts are non-increasing.

use uniprove::Formula;

const AND: u8 = 3;
const OR: u8 = 4;
const IMP: u8 = 5;
const ATOM_MASKS: [u8; 3] = [0b1010_1010, 0b1100_1100, 0b1111_0000];
const NAMES: [&str; 3] = ["p", "q", "r"];

/// Preorder code of at most 13 symbols, ordered lexicographically.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Code {
    len: u8,
    bytes: [u8; 13],
}

impl Code {
    fn leaf(c: u8) -> Code {
        let mut bytes = [0; 13];
        bytes[0] = c;
        Code { len: 1, bytes }
    }

    fn join(op: u8, a: &Code, b: &Code) -> Code {
        let mut bytes = [0; 13];
        let (la, lb) = (a.len as usize, b.len as usize);
        bytes[0] = op;
        bytes[1..1 + la].copy_from_slice(a.as_slice());
        bytes[1 + la..1 + la + lb].copy_from_slice(b.as_slice());
        Code { len: (1 + la + lb) as u8, bytes }
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bytes[..self.len as usize]
    }
}

impl PartialOrd for Code {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Code {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.as_slice().cmp(other.as_slice())
    }
}

#[derive(Clone)]
struct Node {
    code: Code,
    formula: Formula,
    /// Truth table over the 8 valuations.
    mask: u8,
    counts: [u8; 3],
}

/// Normal form of the code at `pos` with atoms renamed by `perm`, and the
/// position after the subformula.
pub fn normalize(code: &[u8], pos: usize, perm: &[u8; 3]) -> (Code, usize) {
    let c = code[pos];
    if c < AND {
        return (Code::leaf(perm[c as usize]), pos + 1);
    }
    let (mut left, mid) = normalize(code, pos + 1, perm);
    let (mut right, end) = normalize(code, mid, perm);
    if c != IMP && right < left {
        std::mem::swap(&mut left, &mut right);
    }
    (Code::join(c, &left, &right), end)
}

pub const PERMS: [[u8; 3]; 5] = [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

fn sorted_counts(c: [u8; 3]) -> bool {
    c[0] >= c[1] && c[1] >= c[2]
}

/// `code` is the least normal form among its count-preserving renamings.
fn least_renaming(code: &Code, c: [u8; 3]) -> bool {
    PERMS.iter().all(|perm| {
        let mut moved = [0u8; 3];
        for i in 0..3 {
            moved[perm[i] as usize] = c[i];
        }
        moved != c || normalize(code.as_slice(), 0, perm).0 >= *code
    })
}

/// Call `visit(formula, is_tautology)` once per class of formulas with at
/// most `max_connectives` binary connectives. Returns the number of
/// classes visited.
pub fn for_each_class(max_connectives: usize, mut visit: impl FnMut(&Formula, bool)) -> usize {
    let mut levels: Vec<Vec<Node>> = Vec::new();
    let mut visited = 0;
    for size in 0..=max_connectives {
        let keep = size < max_connectives;
        let mut level = Vec::new();
        if size == 0 {
            for i in 0..3u8 {
                let mut counts = [0; 3];
                counts[i as usize] = 1;
                let formula = Formula::prop(NAMES[i as usize]);
                level.push(Node { code: Code::leaf(i), formula, mask: ATOM_MASKS[i as usize], counts });
            }
            visited += 1;
            visit(&level[0].formula, false);
            levels.push(level);
            continue;
        }
        for k in 0..size {
            let (ls, rs) = (&levels[k], &levels[size - 1 - k]);
            for a in ls {
                for b in rs {
                    let counts = [a.counts[0] + b.counts[0], a.counts[1] + b.counts[1], a.counts[2] + b.counts[2]];
                    let candidate = sorted_counts(counts);
                    if !keep && !candidate {
                        continue;
                    }
                    for op in [AND, OR, IMP] {
                        if op != IMP && b.code < a.code {
                            continue;
                        }
                        let code = Code::join(op, &a.code, &b.code);
                        let emit = candidate && least_renaming(&code, counts);
                        if !emit && !keep {
                            continue;
                        }
                        let (mask, formula) = match op {
                            AND => (a.mask & b.mask, Formula::and(a.formula.clone(), b.formula.clone())),
                            OR => (a.mask | b.mask, Formula::or(a.formula.clone(), b.formula.clone())),
                            _ => (!a.mask | b.mask, Formula::imp(a.formula.clone(), b.formula.clone())),
                        };
                        if emit {
                            visited += 1;
                            visit(&formula, mask == 0xFF);
                        }
                        if keep {
                            level.push(Node { code, formula, mask, counts });
                        }
                    }
                }
            }
        }
        levels.push(level);
    }
    visited
}
