use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::collector::{Collector, PcRelations};
use super::free_nilpotent::{commutator, FreeNilpotent};
use super::pcgs::Pcgs;
use super::Budget;
use crate::error::{Error, Result};
use crate::free_lie::embedding::Series;
use crate::free_lie::HallTree;
use crate::linalg::{AbelianInvariants, IntMatrix};
use crate::presentations::{FreeWord, GroupPresentation};

/// The free nilpotent cover together with the relation subgroup.
struct Ambient {
    phi: FreeNilpotent,
    relations: Pcgs,
    /// Depth in the cover of each pc generator of the quotient.
    depths: Vec<usize>,
}

impl Ambient {
    /// Normal form in the quotient of an element of the cover.
    fn canonical(&self, s: &Series) -> Result<Vec<BigInt>> {
        let (_, coords) = self.relations.reduce(&self.phi, s, None)?;
        Ok(self.depths.iter().map(|&d| coords[d].clone()).collect())
    }
}

/// A weighted polycyclic presentation of `G / gamma_{c+1}(G)`.
#[derive(Clone)]
pub struct PcPresentation {
    generator_names: Vec<String>,
    class: usize,
    labels: Vec<String>,
    relations: PcRelations,
    epimorphism: Vec<Vec<BigInt>>,
    invariants: Vec<AbelianInvariants>,
    ambient: Arc<Ambient>,
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PcPresentation")
            .field("class", &self.class)
            .field("labels", &self.labels)
            .field("relations", &self.relations)
            .field("epimorphism", &self.epimorphism)
            .field("invariants", &self.invariants)
            .finish()
    }
}

fn tree_label(t: &HallTree, names: &[String]) -> String {
    match t {
        HallTree::Leaf(g) => names[*g].clone(),
        HallTree::Node(u, v) => format!("[{},{}]", tree_label(u, names), tree_label(v, names)),
    }
}

pub fn nilpotent_quotient(pres: &GroupPresentation, class: usize) -> Result<PcPresentation> {
    nilpotent_quotient_with_budget(pres, class, Budget::default())
}

pub fn nilpotent_quotient_with_budget(pres: &GroupPresentation, class: usize, budget: Budget) -> Result<PcPresentation> {
    if class < 1 {
        return Err(Error::TooSmall { what: "class", min: 1, got: class as i64 });
    }
    let phi = FreeNilpotent::new(pres.generator_count(), class, budget)?;
    let mut relations = Pcgs::default();
    relations.close_normal(&phi, pres.relators().iter().map(|r| phi.word_series(r)).collect())?;

    let depths: Vec<usize> =
        (0..phi.len()).filter(|d| relations.rows.get(d).is_none_or(|r| !r.lead.is_one())).collect();
    let weights: Vec<usize> = depths.iter().map(|&d| phi.weights[d]).collect();
    let relative_orders: Vec<BigInt> =
        depths.iter().map(|d| relations.rows.get(d).map_or_else(BigInt::zero, |r| r.lead.clone())).collect();

    let mut invariants = Vec::with_capacity(class);
    for w in 1..=class {
        let layer = phi.layers[w - 1].clone();
        let rows = relations
            .rows
            .range(layer.clone())
            .map(|(_, r)| r.coords[layer.clone()].to_vec())
            .collect();
        invariants.push(AbelianInvariants::from_relations(layer.len(), &IntMatrix::from_rows(layer.len(), rows)));
    }

    let labels = depths.iter().map(|&d| tree_label(&phi.trees[d], pres.alphabet().names())).collect();
    let ambient = Ambient { phi, relations, depths };

    let mut powers = Vec::with_capacity(weights.len());
    for (j, &d) in ambient.depths.iter().enumerate() {
        powers.push(if relative_orders[j].is_zero() {
            None
        } else {
            Some(ambient.canonical(&ambient.phi.basis_power(d, &relative_orders[j]))?)
        });
    }
    let mut commutators = BTreeMap::new();
    for (j, &dj) in ambient.depths.iter().enumerate() {
        for (i, &di) in ambient.depths[..j].iter().enumerate() {
            if weights[i] + weights[j] > class {
                continue;
            }
            let c = ambient.canonical(&commutator(&ambient.phi.generator(dj), &ambient.phi.generator(di)))?;
            if c.iter().any(|e| !e.is_zero()) {
                commutators.insert((j, i), c);
            }
        }
    }
    let epimorphism = (0..pres.generator_count())
        .map(|g| ambient.canonical(&ambient.phi.word_series(&FreeWord::letter(g))))
        .collect::<Result<_>>()?;

    Ok(PcPresentation {
        generator_names: pres.alphabet().names().to_vec(),
        class,
        labels,
        relations: PcRelations { weights, relative_orders, powers, commutators },
        epimorphism,
        invariants,
        ambient: Arc::new(ambient),
    })
}

impl PcPresentation {
    pub fn class(&self) -> usize {
        self.class
    }

    /// Number of pc generators.
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Each pc generator as the basic commutator it stands for.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[usize] {
        &self.relations.weights
    }

    pub fn relative_orders(&self) -> &[BigInt] {
        &self.relations.relative_orders
    }

    pub fn relations(&self) -> &PcRelations {
        &self.relations
    }

    /// Image of each group generator.
    pub fn epimorphism(&self) -> &[Vec<BigInt>] {
        &self.epimorphism
    }

    /// `gr_1(G), ..., gr_c(G)`.
    pub fn graded_quotients(&self) -> &[AbelianInvariants] {
        &self.invariants
    }

    pub fn collector(&self) -> Collector<'_> {
        Collector::new(&self.relations)
    }

    pub fn consistency_failures(&self) -> Vec<String> {
        self.collector().consistency_failures()
    }

    fn check_word(&self, w: &FreeWord) -> Result<()> {
        w.check_generators(self.generator_names.len())
    }

    /// Image of `w` using an existing collector.
    pub fn image_with(&self, collector: &Collector<'_>, w: &FreeWord) -> Result<Vec<BigInt>> {
        self.check_word(w)?;
        let mut x = collector.identity();
        for syl in w.syllables() {
            let p = collector.pow(&self.epimorphism[syl.generator], &syl.exponent);
            x = collector.multiply(&x, &p);
        }
        Ok(x)
    }

    /// Image of `w` computed in the Magnus embedding instead of by collection.
    pub fn image_via_embedding(&self, w: &FreeWord) -> Result<Vec<BigInt>> {
        self.check_word(w)?;
        self.ambient.canonical(&self.ambient.phi.word_series(w))
    }

    /// Whether an exponent vector has only zero entries of weight at most `i`.
    pub fn vanishes_through(&self, exps: &[BigInt], i: usize) -> bool {
        exps.iter().zip(self.weights()).all(|(e, &w)| w > i || e.is_zero())
    }

    fn check_weight(&self, i: usize) -> Result<()> {
        if i < 1 {
            return Err(Error::TooSmall { what: "weight", min: 1, got: i as i64 });
        }
        if i > self.class {
            return Err(Error::Presentation(format!("weight {i} exceeds the class {}", self.class)));
        }
        Ok(())
    }

    pub fn zero_lattice(&self) -> ExponentLattice {
        ExponentLattice { ambient: self.ambient.clone(), pcgs: self.ambient.relations.clone() }
    }

    pub fn full_lattice(&self) -> ExponentLattice {
        ExponentLattice { ambient: self.ambient.clone(), pcgs: Pcgs::full(&self.ambient.phi) }
    }
}

pub fn collect(pc: &PcPresentation, word: &[(usize, BigInt)]) -> Result<Vec<BigInt>> {
    if let Some(&(g, _)) = word.iter().find(|(g, _)| *g >= pc.len()) {
        return Err(Error::UnknownGenerator { index: g, count: pc.len() });
    }
    Ok(pc.collector().collect(word))
}

/// Syllable-wise image of `w` under the quotient map, collected.
pub fn image(pc: &PcPresentation, w: &FreeWord) -> Result<Vec<BigInt>> {
    pc.image_with(&pc.collector(), w)
}

pub fn graded_quotients(pc: &PcPresentation) -> Vec<AbelianInvariants> {
    pc.invariants.clone()
}

/// Whether `w` lies in `gamma_{i+1}(G)`, i.e. its image has no coordinates of
/// weight at most `i`.
pub fn in_gamma(pc: &PcPresentation, w: &FreeWord, i: usize) -> Result<bool> {
    pc.check_weight(i)?;
    Ok(pc.vanishes_through(&image(pc, w)?, i))
}

/// A normal subgroup of the quotient, held as its full preimage in the free
/// nilpotent cover.
#[derive(Clone)]
pub struct ExponentLattice {
    ambient: Arc<Ambient>,
    pcgs: Pcgs,
}

impl fmt::Debug for ExponentLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExponentLattice").field("basis", &self.basis()).finish()
    }
}

impl PartialEq for ExponentLattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.pcgs.signature() == other.pcgs.signature()
    }
}

impl ExponentLattice {
    fn same_ambient(&self, other: &ExponentLattice) -> Result<()> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::MismatchedPresentation)
        }
    }

    fn belongs_to(&self, pc: &PcPresentation) -> Result<()> {
        if Arc::ptr_eq(&self.ambient, &pc.ambient) {
            Ok(())
        } else {
            Err(Error::MismatchedPresentation)
        }
    }

    /// Echelon basis in the quotient's pc coordinates: one row per depth where
    /// the subgroup is strictly larger than the relation subgroup.
    pub fn basis(&self) -> IntMatrix {
        let amb = &self.ambient;
        let rows = self
            .pcgs
            .rows
            .iter()
            .filter(|(d, r)| amb.relations.rows.get(d).is_none_or(|n| n.lead != r.lead))
            .map(|(_, r)| amb.canonical(&r.series).expect("canonical form of a reduced row"))
            .collect();
        IntMatrix::from_rows(amb.depths.len(), rows)
    }

    /// Whether this is the trivial subgroup of the quotient.
    pub fn is_zero(&self) -> bool {
        self.pcgs.signature() == self.ambient.relations.signature()
    }

    /// Index in the whole quotient, `None` when infinite.
    pub fn index(&self) -> Option<BigInt> {
        let mut index = BigInt::one();
        for d in 0..self.ambient.phi.len() {
            index *= &self.pcgs.rows.get(&d)?.lead;
        }
        Some(index)
    }

    pub fn contains(&self, w: &FreeWord) -> Result<bool> {
        w.check_generators(self.ambient.phi.rank)?;
        self.pcgs.contains(&self.ambient.phi, &self.ambient.phi.word_series(w))
    }

    pub fn is_subset_of(&self, other: &ExponentLattice) -> Result<bool> {
        self.same_ambient(other)?;
        for row in self.pcgs.rows.values() {
            if !other.pcgs.contains(&self.ambient.phi, &row.series)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Elements whose normal closure, together with the relations, is `self`.
    fn normal_generators(&self) -> Vec<Series> {
        let phi = &self.ambient.phi;
        if self.pcgs.rows.len() == phi.len() && self.pcgs.rows.values().all(|r| r.lead.is_one()) {
            return (0..phi.rank).map(|g| phi.generator(g)).collect();
        }
        self.pcgs
            .rows
            .iter()
            .filter(|(d, r)| self.ambient.relations.rows.get(d).is_none_or(|n| n.coords != r.coords))
            .map(|(_, r)| r.series.clone())
            .collect()
    }
}

/// Normal closure of the images of `gens`.
pub fn normal_closure_lattice(pc: &PcPresentation, gens: &[FreeWord]) -> Result<ExponentLattice> {
    let amb = &pc.ambient;
    let mut series = Vec::with_capacity(gens.len());
    for g in gens {
        pc.check_word(g)?;
        series.push(amb.phi.word_series(g));
    }
    let mut pcgs = amb.relations.clone();
    pcgs.close_normal(&amb.phi, series)?;
    Ok(ExponentLattice { ambient: amb.clone(), pcgs })
}

/// `[A, B]`, generated by commutators of normal generators and closed under
/// conjugation.
pub fn commutator_lattice(pc: &PcPresentation, a: &ExponentLattice, b: &ExponentLattice) -> Result<ExponentLattice> {
    a.belongs_to(pc)?;
    b.belongs_to(pc)?;
    let amb = &pc.ambient;
    let na = a.normal_generators();
    let nb = b.normal_generators();
    let comms = na.iter().flat_map(|x| nb.iter().map(move |y| commutator(x, y))).collect();
    let mut pcgs = amb.relations.clone();
    pcgs.close_normal(&amb.phi, comms)?;
    Ok(ExponentLattice { ambient: amb.clone(), pcgs })
}
