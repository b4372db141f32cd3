//! Naive reference computations on small sets of fractions held as `(u128, u128)`
//! pairs. Nothing here touches the library's arithmetic or data structures.

#![allow(dead_code)]

pub type Frac = (u128, u128);

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn frac(n: u128, d: u128) -> Frac {
    let g = gcd(n, d);
    (n / g, d / g)
}

pub fn add(x: Frac, y: Frac) -> Frac {
    frac(x.0 * y.1 + y.0 * x.1, x.1 * y.1)
}

pub fn div(x: Frac, y: Frac) -> Frac {
    frac(x.0 * y.1, x.1 * y.0)
}

pub fn mul(x: Frac, y: Frac) -> Frac {
    frac(x.0 * y.0, x.1 * y.1)
}

fn less(x: Frac, y: Frac) -> bool {
    x.0 * y.1 < y.0 * x.1
}

/// Distinct values of `op(a, b)` over all ordered pairs, by linear-scan dedup.
pub fn pair_values(a: &[Frac], op: fn(Frac, Frac) -> Frac) -> Vec<Frac> {
    let mut out: Vec<Frac> = Vec::new();
    for &x in a {
        for &y in a {
            let v = op(x, y);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// `(|A+A|, |A/A|, k, m_k, tail_mass)` by enumerating all ordered pairs.
pub fn chain(a: &[Frac]) -> (usize, usize, usize, u128, u128) {
    let mut counts: Vec<(Frac, u128)> = Vec::new();
    for &x in a {
        for &y in a {
            let z = div(x, y);
            match counts.iter_mut().find(|(r, _)| *r == z) {
                Some((_, m)) => *m += 1,
                None => counts.push((z, 1)),
            }
        }
    }
    // ascending multiplicity, ties by ascending ratio (insertion sort)
    for i in 1..counts.len() {
        let mut j = i;
        while j > 0 {
            let (p, q) = (counts[j - 1], counts[j]);
            if q.1 < p.1 || (q.1 == p.1 && less(q.0, p.0)) {
                counts.swap(j - 1, j);
                j -= 1;
            } else {
                break;
            }
        }
    }
    let n2 = (a.len() * a.len()) as u128;
    let mut head = 0;
    let mut found = None;
    for (i, &(_, m)) in counts.iter().enumerate() {
        if head * 2 < n2 && n2 <= 2 * (head + m) {
            found = Some((i + 1, m, n2 - head));
            break;
        }
        head += m;
    }
    let (k, m_k, tail) = found.expect("threshold exists");
    (pair_values(a, add).len(), counts.len(), k, m_k, tail)
}

pub fn ints(v: &[u128]) -> Vec<Frac> {
    v.iter().map(|&x| (x, 1)).collect()
}

/// `J(A)` as an unreduced `(|A+A|²·|A/A|, |A|⁴)`.
pub fn joint(a: &[Frac]) -> (u128, u128) {
    let s = pair_values(a, add).len() as u128;
    let r = pair_values(a, div).len() as u128;
    let n = a.len() as u128;
    (s * s * r, n.pow(4))
}

/// Minimum of `J` over all `k`-subsets of `{1..universe}`, with its
/// lexicographically first witness.
pub fn exhaustive_joint_min(k: usize, universe: u128) -> ((u128, u128), Vec<u128>, usize) {
    fn rec(start: u128, universe: u128, k: usize, cur: &mut Vec<u128>, out: &mut Vec<Vec<u128>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=universe {
            cur.push(x);
            rec(x + 1, universe, k, cur, out);
            cur.pop();
        }
    }
    let mut subsets = Vec::new();
    rec(1, universe, k, &mut Vec::new(), &mut subsets);
    let mut best: Option<((u128, u128), Vec<u128>)> = None;
    for s in &subsets {
        let v = joint(&ints(s));
        let better = match &best {
            None => true,
            Some((b, _)) => v.0 * b.1 < b.0 * v.1,
        };
        if better {
            best = Some((frac(v.0, v.1), s.clone()));
        }
    }
    let (v, w) = best.unwrap();
    (v, w, subsets.len())
}
