//! Collection from the left over power and commutator tables.
//!
//! Elements are normal-form exponent vectors `g_1^{e_1} ... g_N^{e_N}` with
//! `0 <= e_i < o_i` whenever `o_i` is finite. Conjugation by `g_i` is an
//! automorphism of `<g_{i+1}, ..., g_N>`; large powers of it are obtained by
//! repeated squaring of its image table.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Power and commutator relations of a weighted pc presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcRelations {
    pub weights: Vec<usize>,
    /// Relative orders, `0` for infinite.
    pub relative_orders: Vec<BigInt>,
    /// `g_i^{o_i}` as a normal form in later generators, for finite `o_i`.
    pub powers: Vec<Option<Vec<BigInt>>>,
    /// `[g_j, g_i]` for `j > i`; absent pairs commute.
    pub commutators: BTreeMap<(usize, usize), Vec<BigInt>>,
}

impl PcRelations {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

type Exps = Vec<BigInt>;
type Table = Rc<Vec<Exps>>;

pub struct Collector<'a> {
    rel: &'a PcRelations,
    /// `conj[i][j] = g_i^-1 g_j g_i` for `j > i` (entries `j <= i` unused).
    conj: Vec<Table>,
    /// `inv_conj[i][j] = g_i g_j g_i^-1`.
    inv_conj: Vec<Table>,
    powers_of_conj: RefCell<HashMap<(usize, u64, bool), Table>>,
}

impl<'a> Collector<'a> {
    pub fn new(rel: &'a PcRelations) -> Self {
        let n = rel.len();
        let mut c = Collector {
            rel,
            conj: (0..n).map(|_| Rc::new(Vec::new())).collect(),
            inv_conj: (0..n).map(|_| Rc::new(Vec::new())).collect(),
            powers_of_conj: RefCell::new(HashMap::new()),
        };
        for i in (0..n).rev() {
            let mut conj = vec![c.zero(); n];
            for (j, slot) in conj.iter_mut().enumerate().skip(i + 1) {
                // g_j^{g_i} = g_j [g_j, g_i], and the commutator lives beyond j
                let mut v = c.rel.commutators.get(&(j, i)).cloned().unwrap_or_else(|| c.zero());
                v[j] += 1;
                *slot = v;
            }
            c.conj[i] = Rc::new(conj);
            let mut inv = vec![c.zero(); n];
            for j in (i + 1..n).rev() {
                // g_i g_j g_i^-1 = g_j z with z = g_i c^-1 g_i^-1, c = [g_j, g_i]
                let mut v = match c.rel.commutators.get(&(j, i)) {
                    Some(comm) => {
                        let cinv = c.inverse(comm);
                        c.apply(&inv, &cinv, i)
                    }
                    None => c.zero(),
                };
                v[j] += 1;
                inv[j] = v;
            }
            c.inv_conj[i] = Rc::new(inv);
        }
        c
    }

    fn zero(&self) -> Exps {
        vec![BigInt::zero(); self.rel.len()]
    }

    pub fn identity(&self) -> Exps {
        self.zero()
    }

    /// Normal form of `g_i^e`.
    pub fn generator_power(&self, i: usize, e: &BigInt) -> Exps {
        self.mul_gen_power(self.zero(), i, e)
    }

    /// Normal form of the word `prod g_{i_k}^{e_k}`.
    pub fn collect(&self, word: &[(usize, BigInt)]) -> Exps {
        let mut x = self.zero();
        for (i, e) in word {
            x = self.mul_gen_power(x, *i, e);
        }
        x
    }

    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Exps {
        let mut res = x.to_vec();
        for (i, e) in y.iter().enumerate() {
            if !e.is_zero() {
                res = self.mul_gen_power(res, i, e);
            }
        }
        res
    }

    pub fn inverse(&self, x: &[BigInt]) -> Exps {
        let mut res = self.zero();
        for (i, e) in x.iter().enumerate().rev() {
            if !e.is_zero() {
                res = self.mul_gen_power(res, i, &-e);
            }
        }
        res
    }

    pub fn pow(&self, x: &[BigInt], e: &BigInt) -> Exps {
        if e.is_negative() {
            return self.pow(&self.inverse(x), &-e);
        }
        let mut result = self.zero();
        let mut base = x.to_vec();
        let mut k = e.clone();
        while !k.is_zero() {
            if k.is_odd() {
                result = self.multiply(&result, &base);
            }
            k >>= 1;
            if !k.is_zero() {
                base = self.multiply(&base, &base);
            }
        }
        result
    }

    pub fn commutator(&self, x: &[BigInt], y: &[BigInt]) -> Exps {
        let xi = self.inverse(x);
        let yi = self.inverse(y);
        self.multiply(&self.multiply(&self.multiply(&xi, &yi), x), y)
    }

    /// `x * g_i^e`.
    fn mul_gen_power(&self, mut x: Exps, i: usize, e: &BigInt) -> Exps {
        if e.is_zero() {
            return x;
        }
        let mut higher = self.zero();
        for j in i + 1..x.len() {
            std::mem::swap(&mut higher[j], &mut x[j]);
        }
        let conjugated = self.conj_power(i, e, higher);
        let total = &x[i] + e;
        let order = &self.rel.relative_orders[i];
        let tail = if order.is_zero() {
            x[i] = total;
            conjugated
        } else {
            let (q, r) = total.div_mod_floor(order);
            x[i] = r;
            match &self.rel.powers[i] {
                Some(w) if !q.is_zero() => {
                    let wq = self.pow(w, &q);
                    self.multiply(&wq, &conjugated)
                }
                _ => conjugated,
            }
        };
        for (j, v) in tail.into_iter().enumerate().skip(i + 1) {
            x[j] = v;
        }
        x
    }

    /// `g_i^-e y g_i^e` for `y` supported beyond `i`.
    fn conj_power(&self, i: usize, e: &BigInt, mut y: Exps) -> Exps {
        if y.iter().all(Zero::is_zero) {
            return y;
        }
        let inverse = e.is_negative();
        let mut k = e.abs();
        let mut bit = 0u64;
        while !k.is_zero() {
            if k.is_odd() {
                let table = self.conj_table(i, bit, inverse);
                y = self.apply(&table, &y, i);
            }
            k >>= 1;
            bit += 1;
        }
        y
    }

    /// Image table of conjugation by `g_i^{±2^bit}`.
    fn conj_table(&self, i: usize, bit: u64, inverse: bool) -> Table {
        if bit == 0 {
            return if inverse { self.inv_conj[i].clone() } else { self.conj[i].clone() };
        }
        if let Some(t) = self.powers_of_conj.borrow().get(&(i, bit, inverse)) {
            return t.clone();
        }
        let half = self.conj_table(i, bit - 1, inverse);
        let mut table = vec![self.zero(); self.rel.len()];
        for (j, slot) in table.iter_mut().enumerate().skip(i + 1) {
            *slot = self.apply(&half, &half[j], i);
        }
        let table = Rc::new(table);
        self.powers_of_conj.borrow_mut().insert((i, bit, inverse), table.clone());
        table
    }

    /// Applies an endomorphism of `<g_{i+1}, ...>` given by generator images.
    fn apply(&self, images: &[Exps], y: &[BigInt], i: usize) -> Exps {
        let mut res = self.zero();
        for (j, e) in y.iter().enumerate().skip(i + 1) {
            if e.is_zero() {
                continue;
            }
            let img = if e.is_one() { images[j].clone() } else { self.pow(&images[j], e) };
            res = self.multiply(&res, &img);
        }
        res
    }

    /// Standard consistency tests; returns a description of each failure.
    pub fn consistency_failures(&self) -> Vec<String> {
        let n = self.rel.len();
        let unit = |i: usize| {
            let mut v = self.zero();
            v[i] = BigInt::one();
            v
        };
        let mut failures = Vec::new();
        let mut check = |lhs: Exps, rhs: Exps, what: String| {
            if lhs != rhs {
                failures.push(what);
            }
        };
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let lhs = self.multiply(&self.multiply(&unit(k), &unit(j)), &unit(i));
                    let rhs = self.multiply(&unit(k), &self.multiply(&unit(j), &unit(i)));
                    check(lhs, rhs, format!("(g{k} g{j}) g{i}"));
                }
            }
        }
        for j in 0..n {
            let order = &self.rel.relative_orders[j];
            if order.is_zero() {
                for i in j + 1..n {
                    let back = self.multiply(&self.multiply(&unit(i), &self.generator_power(j, &-BigInt::one())), &unit(j));
                    check(back, unit(i), format!("g{i} g{j}^-1 g{j}"));
                }
                continue;
            }
            let power = self.generator_power(j, order);
            let below = self.generator_power(j, &(order - 1));
            check(self.multiply(&power, &unit(j)), self.multiply(&unit(j), &power), format!("g{j}^o g{j}"));
            for i in 0..j {
                let lhs = self.multiply(&power, &unit(i));
                let rhs = self.multiply(&below, &self.multiply(&unit(j), &unit(i)));
                check(lhs, rhs, format!("g{j}^o g{i}"));
            }
            for k in j + 1..n {
                let lhs = self.multiply(&unit(k), &power);
                let rhs = self.multiply(&self.multiply(&unit(k), &unit(j)), &below);
                check(lhs, rhs, format!("g{k} g{j}^o"));
            }
        }
        failures
    }
}
