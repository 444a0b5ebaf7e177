//! Induced polycyclic sequences for subgroups of the free nilpotent group.
//!
//! Every relative order in the ambient group is infinite, so a subgroup is
//! described by at most one row per depth: an element whose first nonzero
//! coordinate sits at that depth with a positive exponent.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::free_nilpotent::{commutator, conjugate, FreeNilpotent};
use crate::error::Result;
use crate::free_lie::embedding::Series;

#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub series: Series,
    pub lead: BigInt,
    /// Full coordinates, filled in by [`Pcgs::canonicalize`].
    pub coords: Vec<BigInt>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Pcgs {
    pub rows: BTreeMap<usize, Row>,
}

impl Pcgs {
    /// `Phi` itself: one unit row per depth.
    pub fn full(phi: &FreeNilpotent) -> Self {
        let mut rows = BTreeMap::new();
        for j in 0..phi.len() {
            let mut coords = vec![BigInt::zero(); phi.len()];
            coords[j] = BigInt::from(1);
            rows.insert(j, Row { series: phi.generator(j), lead: BigInt::from(1), coords });
        }
        Pcgs { rows }
    }

    /// Adds `g` to the generated subgroup; returns whether the rows changed.
    fn sift_in(&mut self, phi: &FreeNilpotent, g: Series) -> Result<bool> {
        let mut changed = false;
        let mut work = vec![g];
        while let Some(mut g) = work.pop() {
            loop {
                phi.check(&g)?;
                let Some((depth, e)) = phi.lead(&g) else { break };
                let Some(row) = self.rows.get(&depth) else {
                    let (series, lead) = if e.is_negative() { (g.inverse(), -e) } else { (g, e) };
                    self.rows.insert(depth, Row { series, lead, coords: Vec::new() });
                    changed = true;
                    break;
                };
                let (q, rem) = e.div_rem(&row.lead);
                if rem.is_zero() {
                    g = g.mul(&row.series.pow(&-q));
                    continue;
                }
                let eg = row.lead.extended_gcd(&e);
                let (gcd, x, y) = if eg.gcd.is_negative() { (-eg.gcd, -eg.x, -eg.y) } else { (eg.gcd, eg.x, eg.y) };
                let combined = row.series.pow(&x).mul(&g.pow(&y));
                work.push(row.series.mul(&combined.pow(&-(&row.lead / &gcd))));
                work.push(g.mul(&combined.pow(&-(&e / &gcd))));
                self.rows.insert(depth, Row { series: combined, lead: gcd, coords: Vec::new() });
                changed = true;
                break;
            }
        }
        Ok(changed)
    }

    /// Replaces `self` by the normal closure of its rows and `gens`, then
    /// puts the rows in canonical form.
    pub fn close_normal(&mut self, phi: &FreeNilpotent, gens: Vec<Series>) -> Result<()> {
        for g in gens {
            self.sift_in(phi, g)?;
        }
        let conjugators: Vec<Series> =
            (0..phi.rank).flat_map(|g| [phi.generator(g), phi.generator(g).inverse()]).collect();
        loop {
            let rows: Vec<Series> = self.rows.values().map(|r| r.series.clone()).collect();
            let mut changed = false;
            for r in &rows {
                for x in &conjugators {
                    changed |= self.sift_in(phi, conjugate(r, x))?;
                }
            }
            for (i, a) in rows.iter().enumerate() {
                for b in &rows[i + 1..] {
                    changed |= self.sift_in(phi, commutator(a, b))?;
                }
            }
            if !changed {
                break;
            }
        }
        self.canonicalize(phi)
    }

    /// Right-multiplies `g` by rows at depths greater than `after` so that each
    /// such coordinate lands in `[0, lead)`. Returns the reduced element and
    /// its coordinates.
    pub fn reduce(&self, phi: &FreeNilpotent, g: &Series, after: Option<usize>) -> Result<(Series, Vec<BigInt>)> {
        let mut elem = g.clone();
        let mut tail = g.clone();
        let mut coords = Vec::with_capacity(phi.len());
        for w in 1..=phi.class {
            let layer = phi.layers[w - 1].clone();
            let mut c = phi.layer_coords(&tail, w);
            for depth in layer.clone() {
                if after.is_some_and(|a| depth <= a) {
                    continue;
                }
                let Some(row) = self.rows.get(&depth) else { continue };
                let q = c[depth - layer.start].div_floor(&row.lead);
                if !q.is_zero() {
                    let r = row.series.pow(&-q);
                    elem = elem.mul(&r);
                    tail = tail.mul(&r);
                    phi.check(&elem)?;
                    c = phi.layer_coords(&tail, w);
                }
            }
            if c.iter().any(|e| !e.is_zero()) {
                tail = phi.layer_product(w, &c).inverse().mul(&tail);
            }
            coords.extend(c);
        }
        Ok((elem, coords))
    }

    /// Reduces every row against the rows below it and records coordinates.
    pub fn canonicalize(&mut self, phi: &FreeNilpotent) -> Result<()> {
        let depths: Vec<usize> = self.rows.keys().rev().copied().collect();
        for depth in depths {
            let (series, coords) = self.reduce(phi, &self.rows[&depth].series, Some(depth))?;
            let row = self.rows.get_mut(&depth).expect("row vanished");
            row.series = series;
            row.coords = coords;
        }
        Ok(())
    }

    pub fn contains(&self, phi: &FreeNilpotent, g: &Series) -> Result<bool> {
        let (_, coords) = self.reduce(phi, g, None)?;
        Ok(coords.iter().all(Zero::is_zero))
    }

    /// Canonical rows as `(depth, coordinates)`, suitable for equality tests.
    pub fn signature(&self) -> Vec<(usize, &[BigInt])> {
        self.rows.iter().map(|(d, r)| (*d, r.coords.as_slice())).collect()
    }
}
