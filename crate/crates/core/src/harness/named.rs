//! Named group constructors: `sym(n)`, `alt(n)`, `cyclic(n)`, `dihedral(2n)`,
//! `psl2(q)`, `mathieu11`, `product(a, b)`.

use crate::arith::{is_prime, prime_power_base};
use crate::error::{Error, Result};
use crate::perm::{gcd, Group, Permutation};

/// Largest `n` accepted by the symmetric, alternating, cyclic and dihedral constructors.
pub const MAX_N: usize = 12;
/// Largest field size accepted by `psl2`.
pub const MAX_Q: u64 = 32;

pub fn named_group(spec: &str) -> Result<Group> {
    let spec = spec.trim();
    let unsupported = || Error::UnsupportedSpec(spec.to_string());
    let (head, args) = match spec.find('(') {
        Some(i) if spec.ends_with(')') => (&spec[..i], &spec[i + 1..spec.len() - 1]),
        Some(_) => return Err(unsupported()),
        None => (spec, ""),
    };
    let head = head.trim();
    if head == "product" {
        let (a, b) = split_top_comma(args).ok_or_else(unsupported)?;
        let (ga, gb) = (named_group(a)?, named_group(b)?);
        return Ok(direct_product(&ga, &gb)?.named(canonical(spec)));
    }
    if head == "mathieu11" || head == "M11" {
        if !args.is_empty() {
            return Err(unsupported());
        }
        return Ok(mathieu11().named("mathieu11"));
    }
    let n: usize = args.trim().parse().map_err(|_| unsupported())?;
    let g = match head {
        "sym" if (1..=MAX_N).contains(&n) => sym(n),
        "alt" if (1..=MAX_N).contains(&n) => alt(n),
        "cyclic" if (1..=MAX_N).contains(&n) => cyclic(n),
        "dihedral" if n.is_multiple_of(2) && (4..=2 * MAX_N).contains(&n) => dihedral(n / 2),
        "psl2" => psl2(n as u64).ok_or_else(unsupported)?,
        _ => return Err(unsupported()),
    };
    Ok(g.named(format!("{head}({n})")))
}

fn canonical(spec: &str) -> String {
    spec.chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace(',', ", ")
}

fn split_top_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn cycle(degree: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[points]).expect("valid cycle")
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

pub fn sym(n: usize) -> Group {
    if n < 2 {
        return Group::trivial(n.max(1));
    }
    Group::new(vec![cycle(n, &[1, 2]), cycle(n, &range(1, n))]).expect("generators")
}

pub fn alt(n: usize) -> Group {
    if n < 3 {
        return Group::trivial(n.max(1));
    }
    let long = if n % 2 == 1 { range(1, n) } else { range(2, n) };
    Group::new(vec![cycle(n, &[1, 2, 3]), cycle(n, &long)]).expect("generators")
}

pub fn cyclic(n: usize) -> Group {
    if n < 2 {
        return Group::trivial(1);
    }
    Group::new(vec![cycle(n, &range(1, n))]).expect("generators")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Group {
    if n == 2 {
        return Group::new(vec![cycle(4, &[1, 2]), cycle(4, &[3, 4])]).expect("generators");
    }
    let refl: Vec<usize> = (1..=n).map(|i| if i == 1 { 1 } else { n + 2 - i }).collect();
    Group::new(vec![
        cycle(n, &range(1, n)),
        Permutation::from_one_based(&refl).expect("reflection"),
    ])
    .expect("generators")
}

pub fn mathieu11() -> Group {
    Group::new(vec![cycle(11, &range(1, 11)), {
        Permutation::from_cycles(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]]).expect("generator")
    }])
    .expect("generators")
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let (da, db) = (a.degree(), b.degree());
    let shift = |p: &Permutation, offset: usize, own: usize| {
        let mut img: Vec<usize> = (0..da + db).collect();
        for i in 0..own {
            img[offset + i] = offset + p.apply(i);
        }
        Permutation::from_images(img)
    };
    let mut gens = Vec::new();
    for p in a.generators() {
        gens.push(shift(p, 0, da)?);
    }
    for p in b.generators() {
        gens.push(shift(p, da, db)?);
    }
    Group::new(gens)
}

/// Arithmetic in GF(p^k), elements encoded as base-p digit strings of the
/// coefficients.
struct Field {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus coefficients, low degree first (length k + 1).
    modulus: Vec<u64>,
}

impl Field {
    fn new(q: u64) -> Option<Field> {
        let p = prime_power_base(q as u128)?;
        let mut k = 0;
        let mut m = q;
        while m > 1 {
            m /= p;
            k += 1;
        }
        let mut f = Field {
            p,
            k,
            q,
            modulus: Vec::new(),
        };
        // First monic irreducible polynomial of degree k.
        for tail in 0..q {
            let mut m = f.digits(tail);
            m.push(1);
            if f.irreducible(&m) {
                f.modulus = m;
                return Some(f);
            }
        }
        None
    }

    fn digits(&self, mut x: u64) -> Vec<u64> {
        (0..self.k)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn poly_rem(&self, a: &[u64], m: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let c = r[r.len() - 1] * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * mc % p) % p;
            }
            r.pop();
        }
        r
    }

    fn irreducible(&self, m: &[u64]) -> bool {
        let deg = m.len() - 1;
        if deg == 1 {
            return true;
        }
        // Trial division by every monic polynomial of degree 1..=deg/2.
        for d in 1..=deg / 2 {
            let count = self.p.pow(d as u32);
            for tail in 0..count {
                let mut f: Vec<u64> = Vec::with_capacity(d + 1);
                let mut x = tail;
                for _ in 0..d {
                    f.push(x % self.p);
                    x /= self.p;
                }
                f.push(1);
                if self.poly_rem(m, &f).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(y.iter()).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    fn neg(&self, a: u64) -> u64 {
        let s: Vec<u64> = self.digits(a).iter().map(|u| (self.p - u) % self.p).collect();
        self.encode(&s)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.k as usize];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        let mut r = self.poly_rem(&prod, &self.modulus);
        r.resize(self.k as usize, 0);
        self.encode(&r)
    }

    fn inv(&self, a: u64) -> u64 {
        (1..self.q)
            .find(|&b| self.mul(a, b) == 1)
            .expect("nonzero element is invertible")
    }

    fn primitive(&self) -> u64 {
        (2..self.q)
            .find(|&w| {
                let mut x = 1;
                for e in 1..self.q - 1 {
                    x = self.mul(x, w);
                    if x == 1 {
                        return e == self.q - 1;
                    }
                }
                true
            })
            .unwrap_or(1)
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|&b| a * b % p == 1).unwrap_or(1)
}

/// PSL(2, q) on the q + 1 points of the projective line.
pub fn psl2(q: u64) -> Option<Group> {
    if !(2..=MAX_Q).contains(&q) || prime_power_base(q as u128).is_none() {
        return None;
    }
    let f = Field::new(q)?;
    let inf = q as usize;
    let n = inf + 1;
    let perm = |img: Vec<usize>| Permutation::from_images(img).expect("projective map");
    // x ↦ x + 1
    let t: Vec<usize> = (0..n)
        .map(|x| if x == inf { inf } else { f.add(x as u64, 1) as usize })
        .collect();
    // x ↦ w² x
    let w = f.primitive();
    let w2 = f.mul(w, w);
    let d: Vec<usize> = (0..n)
        .map(|x| if x == inf { inf } else { f.mul(w2, x as u64) as usize })
        .collect();
    // x ↦ -1/x
    let s: Vec<usize> = (0..n)
        .map(|x| match x {
            0 => inf,
            x if x == inf => 0,
            x => f.neg(f.inv(x as u64)) as usize,
        })
        .collect();
    let g = Group::new(vec![perm(t), perm(d), perm(s)]).ok()?;
    let expected = q as u128 * (q as u128 * q as u128 - 1) / gcd(2, q - 1) as u128;
    debug_assert!(is_prime(f.p));
    (g.order() == expected).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(named_group("alt(7)").unwrap().order(), 2520);
        assert_eq!(named_group("psl2(16)").unwrap().order(), 4080);
        assert_eq!(named_group("psl2(11)").unwrap().order(), 660);
        assert_eq!(named_group("mathieu11").unwrap().order(), 7920);
        assert_eq!(named_group("dihedral(10)").unwrap().order(), 10);
        assert_eq!(named_group("product(sym(3), cyclic(2))").unwrap().order(), 12);
        assert_eq!(named_group("sym(1)").unwrap().order(), 1);
    }

    #[test]
    fn psl2_all_prime_powers() {
        for q in 2..=MAX_Q {
            if prime_power_base(q as u128).is_some() {
                let g = psl2(q).unwrap_or_else(|| panic!("psl2({q})"));
                assert_eq!(g.degree(), q as usize + 1);
            }
        }
    }

    #[test]
    fn rejects_unsupported() {
        for s in [
            "sym(13)",
            "psl2(6)",
            "psl2(49)",
            "dihedral(7)",
            "foo(3)",
            "product(sym(3))",
            "sym(x)",
        ] {
            assert!(matches!(named_group(s), Err(Error::UnsupportedSpec(_))), "{s}");
        }
    }
}
