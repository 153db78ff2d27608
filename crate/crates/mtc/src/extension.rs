//! Minimal modular extensions by free fermions, at the level of object data.
//!
//! `extend(G, l)` keeps sector 0 of `G` verbatim and rebuilds sector 1 by
//! pairing the sector-1 orbits of `G` with those of `F_l` under the
//! condensed boson:
//!
//! * q-type x q-type   -> one new m-pair, both members of dimension
//!   `d_x d_y / 2` and twist `theta_x theta_y`;
//! * q-type x m-pair (either order) -> one new q-type object of dimension
//!   `d_x d_y`;
//! * m-pair x m-pair  -> one new m-pair, members of dimension `d_x d_y`.
//!
//! Twists always multiply. The sector-1 S-matrix of the result is
//! deliberately not computed; dimensions, twists and orbit types suffice for
//! every Gauss-sum conclusion downstream, and the ladder identity
//! `tau_1(extend(G, l)) = e^{2 pi i l/16} tau_1(G)` is verified exactly on
//! every call.

use num_rational::BigRational;

use crate::family::ising_like;
use crate::fermionic::{check_minimal_extension, GradedData};
use crate::scalar::Cyclotomic;
use crate::Error;

/// Orbit classification of one object row. Pair ids group the two members
/// of a sector-0 pair or sector-1 m-pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    Sector0Pair(u32),
    QType,
    MPair(u32),
}

impl OrbitKind {
    fn class(&self) -> u8 {
        match self {
            OrbitKind::Sector0Pair(_) => 0,
            OrbitKind::QType => 1,
            OrbitKind::MPair(_) => 2,
        }
    }
}

/// One simple object of an extension: label, sector, exact dimension and
/// twist, orbit type.
#[derive(Debug, Clone)]
pub struct ExtObject {
    pub label: String,
    pub sector: u8,
    pub dim: Cyclotomic,
    pub twist: Cyclotomic,
    pub kind: OrbitKind,
}

/// Object table of a constructed minimal modular extension together with
/// its Gauss sum and sector dimension sums.
#[derive(Debug, Clone)]
pub struct ExtensionData {
    pub objects: Vec<ExtObject>,
    pub gauss: Cyclotomic,
    pub sector0_sum: Cyclotomic,
    pub sector1_sum: Cyclotomic,
    /// (base name, level l)
    pub source: (String, u32),
}

impl ExtensionData {
    pub fn qtype_count(&self) -> usize {
        self.objects
            .iter()
            .filter(|o| o.sector == 1 && o.kind == OrbitKind::QType)
            .count()
    }

    pub fn mpair_count(&self) -> usize {
        self.objects
            .iter()
            .filter(|o| o.sector == 1 && matches!(o.kind, OrbitKind::MPair(_)))
            .count()
            / 2
    }

    pub fn sector0_pair_count(&self) -> usize {
        self.objects
            .iter()
            .filter(|o| matches!(o.kind, OrbitKind::Sector0Pair(_)))
            .count()
            / 2
    }
}

/// The object table of a graded category: sector-0 pairs, then q-type,
/// then m-pairs, labels copied from the base.
pub fn object_table(g: &GradedData) -> Result<Vec<ExtObject>, Error> {
    let dims = g.base.quantum_dims()?;
    let mut objects = Vec::new();
    let mut push = |i: usize, kind: OrbitKind| {
        objects.push(ExtObject {
            label: g.base.labels[i].clone(),
            sector: g.sector[i],
            dim: dims[i].clone(),
            twist: g.base.twists[i].clone(),
            kind,
        });
    };
    for (id, &(a, b)) in g.orbits.sector0_pairs.iter().enumerate() {
        push(a, OrbitKind::Sector0Pair(id as u32));
        push(b, OrbitKind::Sector0Pair(id as u32));
    }
    for &x in &g.orbits.qtype {
        push(x, OrbitKind::QType);
    }
    for (id, &(a, b)) in g.orbits.mpairs.iter().enumerate() {
        push(a, OrbitKind::MPair(id as u32));
        push(b, OrbitKind::MPair(id as u32));
    }
    Ok(objects)
}

fn dim_sum(objects: &[ExtObject], sector: u8) -> Result<Cyclotomic, Error> {
    let mut acc = Cyclotomic::zero();
    for o in objects.iter().filter(|o| o.sector == sector) {
        acc = acc.add(&o.dim.mul(&o.dim)?)?;
    }
    Ok(acc)
}

fn sector1_gauss(objects: &[ExtObject]) -> Result<Cyclotomic, Error> {
    let mut acc = Cyclotomic::zero();
    for o in objects.iter().filter(|o| o.sector == 1) {
        acc = acc.add(&o.dim.mul(&o.dim)?.mul(&o.twist)?)?;
    }
    Ok(acc)
}

/// Sector-1 orbit views: q-type rows and one representative per m-pair.
struct Sector1View<'a> {
    qtype: Vec<&'a ExtObject>,
    mpairs: Vec<&'a ExtObject>,
}

fn sector1_view(objects: &[ExtObject]) -> Result<Sector1View<'_>, Error> {
    let mut qtype = Vec::new();
    let mut mpairs: Vec<&ExtObject> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for o in objects.iter().filter(|o| o.sector == 1) {
        match o.kind {
            OrbitKind::QType => qtype.push(o),
            OrbitKind::MPair(id) => {
                if seen.insert(id) {
                    mpairs.push(o);
                }
            }
            OrbitKind::Sector0Pair(_) => {
                return Err(Error::structural(format!(
                    "sector-1 object {} tagged as a sector-0 pair",
                    o.label
                )))
            }
        }
    }
    Ok(Sector1View { qtype, mpairs })
}

/// Table-level well-formedness: positive dimensions, sector-0 objects in
/// pairs with opposite twists, m-pairs with matching members, and the
/// dimension balance between sectors.
fn check_table(objects: &[ExtObject]) -> Result<(), Error> {
    use std::collections::BTreeMap;
    for o in objects {
        if o.dim.real_sign() != Some(1) {
            return Err(Error::structural(format!("dimension of {} is not positive", o.label)));
        }
    }
    let mut s0: BTreeMap<u32, Vec<&ExtObject>> = BTreeMap::new();
    let mut mp: BTreeMap<u32, Vec<&ExtObject>> = BTreeMap::new();
    for o in objects {
        match o.kind {
            OrbitKind::Sector0Pair(id) => {
                if o.sector != 0 {
                    return Err(Error::structural(format!(
                        "{} carries a sector-0 pair tag in sector 1",
                        o.label
                    )));
                }
                s0.entry(id).or_default().push(o);
            }
            OrbitKind::MPair(id) => mp.entry(id).or_default().push(o),
            OrbitKind::QType => {
                if o.sector != 1 {
                    return Err(Error::structural(format!("q-type object {} in sector 0", o.label)));
                }
            }
        }
    }
    for (id, members) in &s0 {
        if members.len() != 2 {
            return Err(Error::structural(format!("sector-0 pair {id} has {} members", members.len())));
        }
        if members[0].dim != members[1].dim {
            return Err(Error::structural(format!("sector-0 pair {id} members differ in dimension")));
        }
        if members[0].twist != members[1].twist.neg() {
            return Err(Error::structural(format!(
                "sector-0 pair {id} members do not have opposite twists"
            )));
        }
    }
    for (id, members) in &mp {
        if members.len() != 2 {
            return Err(Error::structural(format!("m-pair {id} has {} members", members.len())));
        }
        if members[0].dim != members[1].dim || members[0].twist != members[1].twist {
            return Err(Error::structural(format!("m-pair {id} members differ")));
        }
    }
    if dim_sum(objects, 0)? != dim_sum(objects, 1)? {
        return Err(Error::structural("sector dimension sums differ"));
    }
    Ok(())
}

fn extend_table(objects: &[ExtObject], source: (String, u32)) -> Result<ExtensionData, Error> {
    let (ref _name, l) = source;
    check_table(objects)?;
    if l == 0 {
        let gauss = sector1_gauss(objects)?;
        return Ok(ExtensionData {
            objects: objects.to_vec(),
            gauss,
            sector0_sum: dim_sum(objects, 0)?,
            sector1_sum: dim_sum(objects, 1)?,
            source,
        });
    }
    let fl = ising_like(l)?;
    let fl_table = object_table(&fl)?;
    let left = sector1_view(objects)?;
    let right = sector1_view(&fl_table)?;

    let old_gauss = sector1_gauss(objects)?;

    let mut out: Vec<ExtObject> = objects.iter().filter(|o| o.sector == 0).cloned().collect();
    let half = BigRational::new(1.into(), 2.into());
    let mut next_pair = objects
        .iter()
        .filter_map(|o| match o.kind {
            OrbitKind::MPair(id) => Some(id + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);

    // q x q -> split m-pair, dims halve
    for x in &left.qtype {
        for y in &right.qtype {
            let dim = x.dim.mul(&y.dim)?.mul_rational(&half);
            let twist = x.twist.mul(&y.twist)?;
            for r in 0..2 {
                out.push(ExtObject {
                    label: format!("{}*{}:{r}", x.label, y.label),
                    sector: 1,
                    dim: dim.clone(),
                    twist: twist.clone(),
                    kind: OrbitKind::MPair(next_pair),
                });
            }
            next_pair += 1;
        }
    }
    // q x m-pair and m-pair x q -> one q-type each
    for x in &left.qtype {
        for y in &right.mpairs {
            out.push(ExtObject {
                label: format!("{}*{}", x.label, y.label),
                sector: 1,
                dim: x.dim.mul(&y.dim)?,
                twist: x.twist.mul(&y.twist)?,
                kind: OrbitKind::QType,
            });
        }
    }
    for x in &left.mpairs {
        for y in &right.qtype {
            out.push(ExtObject {
                label: format!("{}*{}", x.label, y.label),
                sector: 1,
                dim: x.dim.mul(&y.dim)?,
                twist: x.twist.mul(&y.twist)?,
                kind: OrbitKind::QType,
            });
        }
    }
    // m-pair x m-pair -> one m-pair
    for x in &left.mpairs {
        for y in &right.mpairs {
            let dim = x.dim.mul(&y.dim)?;
            let twist = x.twist.mul(&y.twist)?;
            for r in 0..2 {
                out.push(ExtObject {
                    label: format!("{}*{}:{r}", x.label, y.label),
                    sector: 1,
                    dim: dim.clone(),
                    twist: twist.clone(),
                    kind: OrbitKind::MPair(next_pair),
                });
            }
            next_pair += 1;
        }
    }

    let gauss = sector1_gauss(&out)?;
    let phase = Cyclotomic::root_of_unity(l as i64, 16)?;
    if gauss != phase.mul(&old_gauss)? {
        return Err(Error::structural(
            "gauss ladder identity violated by the extension rules",
        ));
    }
    let sector0_sum = dim_sum(&out, 0)?;
    let sector1_sum = dim_sum(&out, 1)?;
    if sector0_sum != sector1_sum {
        return Err(Error::structural("extension broke the sector dimension balance"));
    }
    Ok(ExtensionData { objects: out, gauss, sector0_sum, sector1_sum, source })
}

/// Extend a graded category by `F_l`. Requires `check_minimal_extension`
/// to pass; `l = 0` returns the input's own object table.
pub fn extend(g: &GradedData, l: u32) -> Result<ExtensionData, Error> {
    let report = check_minimal_extension(g)?;
    if !report.passed() {
        let first = report.checks.iter().find(|c| !c.passed).unwrap();
        return Err(Error::structural(format!(
            "input is not a minimal modular extension: {} fails",
            first.name
        )));
    }
    let name = format!("rank-{}", g.base.rank());
    extend_table(&object_table(g)?, (name, l))
}

/// Extend an already-extended object table by a further `F_l`.
pub fn extend_data(e: &ExtensionData, l: u32) -> Result<ExtensionData, Error> {
    extend_table(&e.objects, (e.source.0.clone(), l))
}

fn joint_order(tables: &[&[ExtObject]]) -> Result<u32, Error> {
    let mut order: u64 = 1;
    for objects in tables {
        for o in objects.iter() {
            order = num_integer::lcm(order, o.dim.order() as u64);
            order = num_integer::lcm(order, o.twist.order() as u64);
            if order > crate::scalar::ORDER_CAP as u64 {
                return Err(Error::Arithmetic(crate::scalar::ScalarError::OrderCap(order)));
            }
        }
    }
    Ok(order as u32)
}

fn multiset_keys(objects: &[ExtObject], order: u32) -> Result<Vec<String>, Error> {
    let mut keys = Vec::with_capacity(objects.len());
    for o in objects {
        let d = o.dim.embedded(order)?;
        let t = o.twist.embedded(order)?;
        keys.push(format!(
            "s{} k{} d[{}] t[{}]",
            o.sector,
            o.kind.class(),
            d.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
            t.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
        ));
    }
    keys.sort();
    Ok(keys)
}

/// Canonical multiset of (sector, orbit class, dim, twist) rows, as
/// comparable strings over the table's common cyclotomic order.
pub fn object_multiset(objects: &[ExtObject]) -> Result<Vec<String>, Error> {
    multiset_keys(objects, joint_order(&[objects])?)
}

/// True when two tables agree as multisets of (sector, type, dim, twist).
/// Both tables are keyed over one shared cyclotomic order.
pub fn same_object_multiset(a: &[ExtObject], b: &[ExtObject]) -> Result<bool, Error> {
    let order = joint_order(&[a, b])?;
    Ok(multiset_keys(a, order)? == multiset_keys(b, order)?)
}

/// One row of the sixteen-extension table.
#[derive(Debug, Clone)]
pub struct SixteenRow {
    pub l: u32,
    pub gauss: Cyclotomic,
    pub objects: usize,
    pub qtype: usize,
    pub mpairs: usize,
    pub sector0_sum: Cyclotomic,
    pub sector1_sum: Cyclotomic,
}

/// The sixteen extensions of a graded category, with exact pairwise
/// distinctness of their Gauss sums and the ladder-ratio audit.
#[derive(Debug, Clone)]
pub struct SixteenTable {
    pub rows: Vec<SixteenRow>,
    pub distinct: bool,
    pub ratios_ok: bool,
}

impl SixteenTable {
    pub fn passed(&self) -> bool {
        self.distinct && self.ratios_ok
    }
}

pub fn sixteen_table(g: &GradedData) -> Result<SixteenTable, Error> {
    let mut rows = Vec::with_capacity(16);
    for l in 0..16u32 {
        let e = extend(g, l)?;
        rows.push(SixteenRow {
            l,
            gauss: e.gauss.clone(),
            objects: e.objects.len(),
            qtype: e.qtype_count(),
            mpairs: e.mpair_count(),
            sector0_sum: e.sector0_sum.clone(),
            sector1_sum: e.sector1_sum.clone(),
        });
    }
    let mut distinct = true;
    for i in 0..16 {
        for j in i + 1..16 {
            if rows[i].gauss == rows[j].gauss {
                distinct = false;
            }
        }
    }
    let mut ratios_ok = true;
    for row in &rows {
        let want = Cyclotomic::root_of_unity(row.l as i64, 16)?.mul(&rows[0].gauss)?;
        if row.gauss != want {
            ratios_ok = false;
        }
    }
    Ok(SixteenTable { rows, distinct, ratios_ok })
}
