//! Brute-force reference implementations, written against plain nested
//! vectors, compared with the library.

use std::collections::BTreeSet;

use semibiproducts::registry::{group_two, idempotent_two};
use semibiproducts::{census_2x2, enumerate_action_systems, enumerate_monoids, functor_q, Monoid};

type Table = Vec<Vec<usize>>;

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            prefix.push(v);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

fn is_monoid(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|i| t[0][i] == i && t[i][0] == i)
        && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| t[t[i][j]][k] == t[i][t[j][k]])))
}

fn isomorphic(a: &Table, b: &Table) -> bool {
    let n = a.len();
    n == b.len()
        && permutations_fixing_zero(n).iter().any(|f| (0..n).all(|i| (0..n).all(|j| f[a[i][j]] == b[f[i]][f[j]])))
}

fn all_unital_tables(n: usize) -> Vec<Table> {
    let free: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let total = n.pow(free.len() as u32);
    for mut code in 0..total {
        let unit = |i: usize, j: usize| match (i, j) {
            (0, j) => j,
            (i, 0) => i,
            _ => 0,
        };
        let mut t: Table = (0..n).map(|i| (0..n).map(|j| unit(i, j)).collect()).collect();
        for &(i, j) in &free {
            t[i][j] = code % n;
            code /= n;
        }
        if is_monoid(&t) {
            out.push(t);
        }
    }
    out
}

fn oracle_monoid_classes(n: usize) -> Vec<Table> {
    let mut reps: Vec<Table> = Vec::new();
    for t in all_unital_tables(n) {
        if !reps.iter().any(|r| isomorphic(r, &t)) {
            reps.push(t);
        }
    }
    reps
}

#[test]
fn monoid_counts_match_brute_force() {
    for n in 1..=3 {
        let oracle = oracle_monoid_classes(n);
        let lib = enumerate_monoids(n).unwrap();
        assert_eq!(lib.len(), oracle.len(), "order {n}");
        for m in &lib {
            let matches = oracle.iter().filter(|r| isomorphic(r, &m.rows())).count();
            assert_eq!(matches, 1, "order {n}: {:?}", m.rows());
        }
    }
    assert_eq!(oracle_monoid_classes(3).len(), 7);
}

/// Flat matrices `(rho[x][b], phi[b][x], gamma[b][b'])`.
type System = (Vec<usize>, Vec<usize>, Vec<usize>);

fn axioms_hold(xt: &Table, bt: &Table, (rho, phi, gamma): &System) -> bool {
    let (nx, nb) = (xt.len(), bt.len());
    let r = |x: usize, b: usize| rho[x * nb + b];
    let f = |b: usize, x: usize| phi[b * nx + x];
    let g = |b: usize, c: usize| gamma[b * nb + c];
    let xs = |a: usize, b: usize| xt[a][b];
    let bs = |a: usize, b: usize| bt[a][b];
    for x in 0..nx {
        for b in 0..nb {
            if r(x, 0) != x || r(0, b) != 0 || f(0, x) != x || f(b, 0) != 0 || g(b, 0) != 0 || g(0, b) != 0 {
                return false;
            }
            if r(r(x, b), b) != r(x, b) || r(f(b, x), b) != f(b, x) {
                return false;
            }
        }
    }
    for b in 0..nb {
        for c in 0..nb {
            if r(g(b, c), bs(b, c)) != g(b, c) {
                return false;
            }
        }
    }
    for x in 0..nx {
        for x1 in 0..nx {
            for x2 in 0..nx {
                for b in 0..nb {
                    for b1 in 0..nb {
                        for b2 in 0..nb {
                            let bb = bs(b, b1);
                            let b3 = bs(bb, b2);
                            let inner = r(xs(xs(x, f(b, x1)), g(b, b1)), bb);
                            let lhs = r(xs(xs(inner, f(bb, x2)), g(bb, b2)), b3);
                            let right = r(xs(xs(x1, f(b1, x2)), g(b1, b2)), bs(b1, b2));
                            let rhs = r(xs(xs(x, f(b, right)), g(b, bs(b1, b2))), b3);
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Every assignment of the cells left free by the unit and zero axioms.
fn oracle_systems(xt: &Table, bt: &Table) -> BTreeSet<System> {
    let (nx, nb) = (xt.len(), bt.len());
    let mut cells: Vec<(usize, usize, usize)> = Vec::new();
    for x in 1..nx {
        for b in 1..nb {
            cells.push((0, x * nb + b, nx));
            cells.push((1, b * nx + x, nx));
        }
    }
    for b in 1..nb {
        for c in 1..nb {
            cells.push((2, b * nb + c, nx));
        }
    }
    let base: System = (
        (0..nx).flat_map(|x| (0..nb).map(move |b| if b == 0 { x } else { 0 })).collect(),
        (0..nb).flat_map(|b| (0..nx).map(move |x| if b == 0 { x } else { 0 })).collect(),
        vec![0; nb * nb],
    );
    let total: usize = cells.iter().map(|c| c.2).product();
    let mut out = BTreeSet::new();
    for mut code in 0..total {
        let mut sys = base.clone();
        for &(m, idx, range) in &cells {
            let v = code % range;
            code /= range;
            match m {
                0 => sys.0[idx] = v,
                1 => sys.1[idx] = v,
                _ => sys.2[idx] = v,
            }
        }
        if axioms_hold(xt, bt, &sys) {
            out.insert(sys);
        }
    }
    out
}

fn library_systems(x: &Monoid, b: &Monoid) -> BTreeSet<System> {
    enumerate_action_systems(x, b)
        .unwrap()
        .iter()
        .map(|t| (t.rho_flat().to_vec(), t.phi_flat().to_vec(), t.gamma_flat().to_vec()))
        .collect()
}

#[test]
fn enumeration_agrees_with_exhaustive_scan() {
    let small: Vec<Monoid> = (2..=3).flat_map(|n| enumerate_monoids(n).unwrap()).collect();
    for x in &small {
        for b in &small {
            if x.size() == 3 && b.size() == 3 {
                continue;
            }
            let oracle = oracle_systems(&x.rows(), &b.rows());
            let lib = library_systems(x, b);
            assert_eq!(lib, oracle, "X={:?} B={:?}", x.rows(), b.rows());
        }
    }
}

#[test]
fn two_element_counts_from_the_scan() {
    let (m, g) = (idempotent_two(), group_two());
    let counts: Vec<usize> = [(&g, &g), (&g, &m), (&m, &g), (&m, &m)]
        .iter()
        .map(|(x, b)| oracle_systems(&x.rows(), &b.rows()).len())
        .collect();
    assert_eq!(counts, vec![2, 4, 3, 5]);
}

/// The realization built directly from the pair operation.
fn oracle_realization(xt: &Table, bt: &Table, sys: &System) -> (Vec<(usize, usize)>, Table) {
    let (nx, nb) = (xt.len(), bt.len());
    let (rho, phi, gamma) = sys;
    let add = |(x, b): (usize, usize), (x1, b1): (usize, usize)| {
        let bb = bt[b][b1];
        (rho[xt[xt[x][phi[b * nx + x1]]][gamma[b * nb + b1]] * nb + bb], bb)
    };
    let carrier: Vec<(usize, usize)> =
        (0..nx).flat_map(|x| (0..nb).map(move |b| (x, b))).filter(|&(x, b)| add((x, 0), (0, b)) == (x, b)).collect();
    let table = carrier
        .iter()
        .map(|&u| carrier.iter().map(|&v| carrier.iter().position(|&w| w == add(u, v)).unwrap()).collect())
        .collect();
    (carrier, table)
}

#[test]
fn realizations_match_direct_construction() {
    for e in census_2x2() {
        let t = &e.system;
        let sys = (t.rho_flat().to_vec(), t.phi_flat().to_vec(), t.gamma_flat().to_vec());
        let (carrier, table) = oracle_realization(&t.x().rows(), &t.b().rows(), &sys);
        let real = functor_q(t).unwrap();
        assert_eq!(real.carrier, carrier);
        assert_eq!(real.monoid.rows(), table);
        assert!(is_monoid(&table));
    }
}

#[test]
fn klein_and_cyclic_realizations() {
    let census = census_2x2();
    let z4: Table = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
    let v4: Table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    let r1 = functor_q(&census[0].system).unwrap().monoid.rows();
    let r2 = functor_q(&census[1].system).unwrap().monoid.rows();
    assert!(isomorphic(&r1, &v4) && !isomorphic(&r1, &z4));
    assert!(isomorphic(&r2, &z4) && !isomorphic(&r2, &v4));
}
