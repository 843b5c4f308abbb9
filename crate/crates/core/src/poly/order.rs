use std::cmp::Ordering;

/// A monomial order on exponent vectors.
///
/// `DegRevLex` is the default everywhere; `BlockElim` is an elimination
/// order whose `front` block (variable indices) dominates, with degrevlex
/// inside each block.  Any monomial containing a front variable is larger
/// than any monomial without one, so front variables are eliminated by
/// Gröbner bases under this order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    DegRevLex,
    BlockElim { front: Vec<usize> },
}

impl MonomialOrder {
    pub fn elim(front: Vec<usize>) -> Self {
        MonomialOrder::BlockElim { front }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::BlockElim { front } => {
                let mut in_front = vec![false; a.len()];
                for &i in front {
                    in_front[i] = true;
                }
                block_cmp(a, b, &in_front)
            }
        }
    }

    /// Precomputed comparator avoiding the per-call front lookup.
    pub fn comparator(&self, nvars: usize) -> impl Fn(&[u32], &[u32]) -> Ordering + '_ {
        let mask: Option<Vec<bool>> = match self {
            MonomialOrder::DegRevLex => None,
            MonomialOrder::BlockElim { front } => {
                let mut m = vec![false; nvars];
                for &i in front {
                    m[i] = true;
                }
                Some(m)
            }
        };
        move |a: &[u32], b: &[u32]| match &mask {
            None => degrevlex(a, b),
            Some(m) => block_cmp(a, b, m),
        }
    }
}

/// Graded reverse lexicographic: higher total degree wins; on equal degree
/// the monomial with the *smaller* exponent at the *last* differing
/// position is larger.
fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn block_cmp(a: &[u32], b: &[u32], in_front: &[bool]) -> Ordering {
    match masked_degrevlex(a, b, in_front, true) {
        Ordering::Equal => masked_degrevlex(a, b, in_front, false),
        o => o,
    }
}

fn masked_degrevlex(a: &[u32], b: &[u32], in_front: &[bool], front: bool) -> Ordering {
    let deg = |v: &[u32]| -> u64 {
        v.iter()
            .zip(in_front)
            .filter(|(_, &f)| f == front)
            .map(|(&e, _)| e as u64)
            .sum()
    };
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if in_front[i] != front {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_classics() {
        let ord = MonomialOrder::DegRevLex;
        // x² > xy > y² > xz > yz > z² in three variables x,y,z.
        let seq = [
            [2, 0, 0],
            [1, 1, 0],
            [0, 2, 0],
            [1, 0, 1],
            [0, 1, 1],
            [0, 0, 2],
        ];
        for w in seq.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        // Degree dominates.
        assert_eq!(ord.cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_front() {
        let ord = MonomialOrder::elim(vec![2]);
        // Any power of z (front) beats anything purely in x,y.
        assert_eq!(ord.cmp(&[0, 0, 1], &[5, 5, 0]), Ordering::Greater);
        // Without front variables the order degenerates to degrevlex.
        assert_eq!(ord.cmp(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
        // Ties on the front block are broken by the back block.
        assert_eq!(ord.cmp(&[0, 1, 1], &[1, 0, 1]), Ordering::Less);
    }
}
