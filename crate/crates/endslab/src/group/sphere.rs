use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::group::element::{FactorElem, GroupElement};
use crate::group::factor::Factor;
use crate::group::spec::GroupSpec;

/// Number of elements of the factor with factor word length exactly `l`.
fn factor_length_count(factor: &Factor, l: u32) -> u128 {
    match factor {
        Factor::Finite(f) => f.elements_of_length(l).len() as u128,
        Factor::Abelian(a) => lattice_sphere_count(a.rank as u32, l),
    }
}

/// #{v in Z^d : |v|_1 = l}; for l >= 1 this is
/// sum_j 2^j C(d,j) C(l-1,j-1) over j nonzero coordinates.
fn lattice_sphere_count(d: u32, l: u32) -> u128 {
    if l == 0 {
        return 1;
    }
    let mut total: u128 = 0;
    for j in 1..=d.min(l) {
        total += (1u128 << j) * binom(d as u128, j as u128) * binom((l - 1) as u128, (j - 1) as u128);
    }
    total
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Exact sphere size #S_n by dynamic programming over alternating syllable
/// compositions. Costs O(n^2 * factors^2), independent of the sphere size.
pub fn sphere_count(spec: &GroupSpec, n: u32) -> u128 {
    if n == 0 {
        return 1;
    }
    let nf = spec.factors().len();
    // ways[m][g] = number of normal forms of length m whose last syllable is in factor g
    let mut ways = vec![vec![0u128; nf]; (n + 1) as usize];
    for m in 1..=n {
        for g in 0..nf {
            let mut acc: u128 = 0;
            for l in 1..=m {
                let c = factor_length_count(&spec.factors()[g], l);
                if c == 0 {
                    continue;
                }
                if l == m {
                    acc += c;
                } else {
                    let rest = (m - l) as usize;
                    for f in 0..nf {
                        if f != g {
                            acc += ways[rest][f] * c;
                        }
                    }
                }
            }
            ways[m as usize][g] = acc;
        }
    }
    ways[n as usize].iter().sum()
}

fn factor_elems_of_length(factor: &Factor, l: u32, out: &mut Vec<FactorElem>) {
    match factor {
        Factor::Finite(f) => {
            for &e in f.elements_of_length(l) {
                out.push(FactorElem::Finite(e));
            }
        }
        Factor::Abelian(a) => {
            let mut v = SmallVec::from_elem(0i64, a.rank as usize);
            lattice_sphere_rec(a.rank as usize, 0, l as i64, &mut v, out);
        }
    }
}

fn lattice_sphere_rec(
    rank: usize,
    coord: usize,
    remaining: i64,
    v: &mut SmallVec<[i64; 2]>,
    out: &mut Vec<FactorElem>,
) {
    if coord == rank - 1 {
        if remaining == 0 {
            v[coord] = 0;
            out.push(FactorElem::Vector(v.clone()));
        } else {
            for s in [-remaining, remaining] {
                v[coord] = s;
                out.push(FactorElem::Vector(v.clone()));
            }
        }
        return;
    }
    for a in -remaining..=remaining {
        v[coord] = a;
        lattice_sphere_rec(rank, coord + 1, remaining - a.abs(), v, out);
    }
    v[coord] = 0;
}

/// Materializes the sphere S_n = { g : d(1,g) = n } in canonical order.
/// The enumeration is combinatorial over normal forms; BFS over a window is
/// the independent route used by the tests.
pub fn enumerate_sphere(spec: &GroupSpec, n: u32, cap: u64) -> Result<Vec<GroupElement>> {
    let count = sphere_count(spec, n);
    if count > cap as u128 {
        let mut feasible = 0u64;
        for m in (0..n).rev() {
            if sphere_count(spec, m) <= cap as u128 {
                feasible = m as u64;
                break;
            }
        }
        return Err(Error::Budget {
            what: "sphere enumeration",
            needed: count.min(u64::MAX as u128) as u64,
            cap,
            largest_feasible: Some(feasible),
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    if n == 0 {
        out.push(spec.identity());
        return Ok(out);
    }
    let mut stack: Vec<(u8, FactorElem)> = Vec::new();
    extend_rec(spec, n, None, &mut stack, &mut out)?;
    Ok(out)
}

/// All normal forms `prefix * w` with d(1, prefix*w) = d(1,prefix) + extra
/// and the first syllable of `w` in a factor different from the last
/// syllable of `prefix`: the cone of geodesic extensions of `prefix`.
pub fn enumerate_cone(
    spec: &GroupSpec,
    prefix: &GroupElement,
    extra: u32,
    cap: u64,
) -> Result<Vec<GroupElement>> {
    spec.check_token(prefix)?;
    if extra == 0 {
        return Ok(vec![prefix.clone()]);
    }
    let forbidden = prefix.syllables().last().map(|s| s.factor);
    let mut out = Vec::new();
    let mut stack: Vec<(u8, FactorElem)> = Vec::new();
    extend_rec(spec, extra, forbidden, &mut stack, &mut out)?;
    let mut res = Vec::with_capacity(out.len());
    for tail in out {
        res.push(spec.multiply(prefix, &tail)?);
    }
    if res.len() as u64 > cap {
        return Err(Error::Budget {
            what: "cone enumeration",
            needed: res.len() as u64,
            cap,
            largest_feasible: None,
        });
    }
    Ok(res)
}

fn extend_rec(
    spec: &GroupSpec,
    remaining: u32,
    forbidden: Option<u8>,
    stack: &mut Vec<(u8, FactorElem)>,
    out: &mut Vec<GroupElement>,
) -> Result<()> {
    if remaining == 0 {
        out.push(spec.from_syllables(stack.iter().cloned())?);
        return Ok(());
    }
    for (fi, factor) in spec.factors().iter().enumerate() {
        if Some(fi as u8) == forbidden {
            continue;
        }
        let max_l = match factor {
            Factor::Finite(f) => f.max_length().min(remaining),
            Factor::Abelian(_) => remaining,
        };
        let mut elems = Vec::new();
        for l in 1..=max_l {
            elems.clear();
            factor_elems_of_length(factor, l, &mut elems);
            for e in &elems {
                stack.push((fi as u8, e.clone()));
                extend_rec(spec, remaining - l, Some(fi as u8), stack, out)?;
                stack.pop();
            }
        }
    }
    Ok(())
}
