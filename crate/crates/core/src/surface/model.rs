use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{DivisorClass, SurfaceError};
use crate::algebra::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub name: String,
    #[serde(rename = "coords")]
    pub class: DivisorClass,
    #[serde(rename = "boundary", default)]
    pub is_boundary_component: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub curve: String,
    pub tangency_class: u32,
}

/// Contact order of two curves at a point. Only orders of at least 2 are
/// stored; incident pairs without an entry meet transversally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contact {
    pub pair: [String; 2],
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub name: String,
    pub incidences: Vec<Incidence>,
    #[serde(default)]
    pub contact: Vec<Contact>,
}

impl PointRecord {
    /// A point where the listed curves all cross transversally.
    pub fn transverse(name: &str, curves: &[&str]) -> Self {
        PointRecord {
            name: name.to_string(),
            incidences: curves
                .iter()
                .enumerate()
                .map(|(i, c)| Incidence { curve: c.to_string(), tangency_class: i as u32 })
                .collect(),
            contact: Vec::new(),
        }
    }

    /// Marks `a` and `b` as tangent with the given contact order, merging
    /// their tangency classes.
    pub fn with_contact(mut self, a: &str, b: &str, order: u32) -> Self {
        let class_of = |p: &PointRecord, c: &str| p.incidences.iter().find(|i| i.curve == c).map(|i| i.tangency_class);
        let (ca, cb) = (class_of(&self, a), class_of(&self, b));
        if let (Some(ca), Some(cb)) = (ca, cb) {
            for inc in &mut self.incidences {
                if inc.tangency_class == cb {
                    inc.tangency_class = ca;
                }
            }
        }
        self.contact.push(Contact { pair: [a.to_string(), b.to_string()], order });
        self
    }

    /// Adds a curve through the point, transverse to everything already there.
    pub fn with_curve(mut self, curve: &str) -> Self {
        let next = self.incidences.iter().map(|i| i.tangency_class + 1).max().unwrap_or(0);
        self.incidences.push(Incidence { curve: curve.to_string(), tangency_class: next });
        self
    }

    pub fn curves(&self) -> impl Iterator<Item = &str> {
        self.incidences.iter().map(|i| i.curve.as_str())
    }

    pub fn contains(&self, curve: &str) -> bool {
        self.incidences.iter().any(|i| i.curve == curve)
    }

    /// Contact order between two incident curves (1 when transverse).
    pub fn contact_order(&self, a: &str, b: &str) -> u32 {
        self.contact
            .iter()
            .find(|c| (c.pair[0] == a && c.pair[1] == b) || (c.pair[0] == b && c.pair[1] == a))
            .map_or(1, |c| c.order)
    }

    fn tangency_class(&self, curve: &str) -> Option<u32> {
        self.incidences.iter().find(|i| i.curve == curve).map(|i| i.tangency_class)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryTerm {
    pub curve: String,
    pub coeff: Rational,
}

/// A point to create on a new exceptional curve, listing the strict
/// transforms that pass through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewPoint {
    pub name: String,
    pub curves: Vec<String>,
}

impl NewPoint {
    pub fn new(name: &str, curves: &[&str]) -> Self {
        NewPoint { name: name.to_string(), curves: curves.iter().map(|s| s.to_string()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NefVerdict {
    Nef,
    /// Negative intersection with the named curve.
    FailsOn(String),
    NegativeSquare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefCertificate {
    pub verdict: NefVerdict,
    /// Set when the declared curve list is not known to contain every
    /// negative curve, so a positive answer is only relative to that list.
    pub conditional: bool,
}

impl NefCertificate {
    pub fn is_nef(&self) -> bool {
        self.verdict == NefVerdict::Nef
    }
}

/// Picard lattice with intersection form, named curves and incidence data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
    curves: Vec<CurveRecord>,
    points: Vec<PointRecord>,
    canonical: DivisorClass,
    boundary: Vec<BoundaryTerm>,
    #[serde(default = "default_true")]
    curves_complete: bool,
}

fn default_true() -> bool {
    true
}

impl SurfaceModel {
    /// Empty configuration on the given lattice; the canonical class starts at zero.
    pub fn new(basis: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self, SurfaceError> {
        let rank = basis.len();
        if gram.len() != rank || gram.iter().any(|r| r.len() != rank) {
            return Err(SurfaceError::Dimension { expected: rank, got: gram.len() });
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(SurfaceError::Invalid("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(SurfaceModel {
            basis,
            gram,
            curves: Vec::new(),
            points: Vec::new(),
            canonical: DivisorClass::zero(rank),
            boundary: Vec::new(),
            curves_complete: true,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn curves(&self) -> &[CurveRecord] {
        &self.curves
    }

    pub fn points(&self) -> &[PointRecord] {
        &self.points
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn boundary(&self) -> &[BoundaryTerm] {
        &self.boundary
    }

    pub fn curves_complete(&self) -> bool {
        self.curves_complete
    }

    pub fn set_curves_complete(&mut self, complete: bool) {
        self.curves_complete = complete;
    }

    pub fn set_canonical(&mut self, k: DivisorClass) -> Result<(), SurfaceError> {
        self.check_rank(&k)?;
        self.canonical = k;
        Ok(())
    }

    pub fn add_curve(&mut self, name: &str, class: DivisorClass, boundary: bool) -> Result<(), SurfaceError> {
        self.check_rank(&class)?;
        if self.curve(name).is_ok() {
            return Err(SurfaceError::DuplicateName(name.to_string()));
        }
        self.curves.push(CurveRecord { name: name.to_string(), class, is_boundary_component: boundary });
        Ok(())
    }

    pub fn add_point(&mut self, point: PointRecord) -> Result<(), SurfaceError> {
        if self.point(&point.name).is_ok() {
            return Err(SurfaceError::DuplicateName(point.name));
        }
        for c in point.curves() {
            self.curve(c)?;
        }
        self.points.push(point);
        Ok(())
    }

    pub fn set_boundary(&mut self, terms: Vec<BoundaryTerm>) -> Result<(), SurfaceError> {
        for t in &terms {
            self.curve(&t.curve)?;
        }
        self.boundary = terms;
        Ok(())
    }

    pub fn curve(&self, name: &str) -> Result<&CurveRecord, SurfaceError> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| SurfaceError::UnknownCurve(name.to_string()))
    }

    pub fn class_of(&self, name: &str) -> Result<&DivisorClass, SurfaceError> {
        Ok(&self.curve(name)?.class)
    }

    pub fn point(&self, name: &str) -> Result<&PointRecord, SurfaceError> {
        self.points
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| SurfaceError::UnknownPoint(name.to_string()))
    }

    /// The unique point lying on all the given curves.
    pub fn point_on(&self, curves: &[&str]) -> Result<&PointRecord, SurfaceError> {
        let mut hits = self.points.iter().filter(|p| curves.iter().all(|c| p.contains(c)));
        match (hits.next(), hits.next()) {
            (Some(p), None) => Ok(p),
            (None, _) => Err(SurfaceError::UnknownPoint(format!("point on {}", curves.join(", ")))),
            (Some(_), Some(_)) => Err(SurfaceError::Invalid(format!("several points lie on {}", curves.join(", ")))),
        }
    }

    fn check_rank(&self, d: &DivisorClass) -> Result<(), SurfaceError> {
        if d.rank() != self.rank() {
            return Err(SurfaceError::Dimension { expected: self.rank(), got: d.rank() });
        }
        Ok(())
    }

    /// `a^T G b`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational, SurfaceError> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        let mut acc = Rational::zero();
        for (i, ai) in a.coords().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords().iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && !bj.is_zero() {
                    acc += &(ai * bj * Rational::from_int(g));
                }
            }
        }
        Ok(acc)
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> Result<Rational, SurfaceError> {
        self.intersect(a, a)
    }

    /// Names of declared curves with negative self-intersection.
    pub fn negative_curves(&self) -> Vec<&CurveRecord> {
        self.curves
            .iter()
            .filter(|c| self.self_intersection(&c.class).map(|s| s.is_negative()).unwrap_or(false))
            .collect()
    }

    pub fn boundary_coefficient(&self, curve: &str) -> Rational {
        self.boundary
            .iter()
            .find(|t| t.curve == curve)
            .map_or_else(Rational::zero, |t| t.coeff.clone())
    }

    /// `-(K + B)` for the stored boundary `B`.
    pub fn log_anticanonical(&self) -> Result<DivisorClass, SurfaceError> {
        let mut acc = -&self.canonical;
        for t in &self.boundary {
            acc = &acc - &self.class_of(&t.curve)?.scale(&t.coeff);
        }
        Ok(acc)
    }

    /// Nef test against the declared curves plus non-negativity of `d^2`.
    pub fn is_nef(&self, d: &DivisorClass) -> Result<NefCertificate, SurfaceError> {
        let conditional = !self.curves_complete;
        for c in &self.curves {
            if self.intersect(d, &c.class)?.is_negative() {
                return Ok(NefCertificate { verdict: NefVerdict::FailsOn(c.name.clone()), conditional });
            }
        }
        let verdict = if self.self_intersection(d)?.is_negative() { NefVerdict::NegativeSquare } else { NefVerdict::Nef };
        Ok(NefCertificate { verdict, conditional })
    }

    /// Checks every structural invariant of the model.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        let rank = self.rank();
        if self.gram.len() != rank || self.gram.iter().any(|r| r.len() != rank) {
            return Err(SurfaceError::Dimension { expected: rank, got: self.gram.len() });
        }
        for i in 0..rank {
            for j in 0..i {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(SurfaceError::Invalid("Gram matrix is not symmetric".into()));
                }
            }
        }
        self.check_rank(&self.canonical)?;
        let mut names = BTreeSet::new();
        for c in &self.curves {
            self.check_rank(&c.class)?;
            if !names.insert(c.name.as_str()) {
                return Err(SurfaceError::DuplicateName(c.name.clone()));
            }
        }
        for t in &self.boundary {
            self.curve(&t.curve)?;
        }
        let mut pnames = BTreeSet::new();
        for p in &self.points {
            if !pnames.insert(p.name.as_str()) {
                return Err(SurfaceError::DuplicateName(p.name.clone()));
            }
            for c in p.curves() {
                self.curve(c)?;
            }
            for ct in &p.contact {
                if !p.contains(&ct.pair[0]) || !p.contains(&ct.pair[1]) || ct.order < 1 {
                    return Err(SurfaceError::Invalid(format!(
                        "contact entry {:?} at {} refers to a curve not through the point",
                        ct.pair, p.name
                    )));
                }
            }
            let incident: Vec<&str> = p.curves().collect();
            for (i, a) in incident.iter().enumerate() {
                for b in &incident[i + 1..] {
                    let same = p.tangency_class(a) == p.tangency_class(b);
                    if same != (p.contact_order(a, b) >= 2) {
                        return Err(SurfaceError::Invalid(format!(
                            "tangency classes of {a} and {b} at {} disagree with their contact order",
                            p.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Sylvester signature `(positive, negative, zero)` of the Gram matrix,
    /// by congruence diagonalisation.
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.rank();
        let mut m: Vec<Vec<Rational>> =
            self.gram.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        let mut diag = Vec::new();
        let mut k = 0;
        while k < n {
            // bring a nonzero diagonal entry to position k
            if m[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                    // add row/column j to k: new diagonal 2 m[k][j] (+ m[j][j] = 0)
                    for c in 0..n {
                        let v = m[j][c].clone();
                        m[k][c] += &v;
                    }
                    for r in 0..n {
                        let v = m[r][j].clone();
                        m[r][k] += &v;
                    }
                } else {
                    diag.push(Rational::zero());
                    k += 1;
                    continue;
                }
            }
            let pivot = m[k][k].clone();
            for r in k + 1..n {
                if m[r][k].is_zero() {
                    continue;
                }
                let f = &m[r][k] / &pivot;
                for c in k..n {
                    let v = &f * &m[k][c];
                    m[r][c] -= &v;
                }
                for rr in k..n {
                    let v = &f * &m[rr][k];
                    m[rr][r] -= &v;
                }
            }
            diag.push(pivot);
            k += 1;
        }
        let pos = diag.iter().filter(|d| d.is_positive()).count();
        let neg = diag.iter().filter(|d| d.is_negative()).count();
        (pos, neg, n - pos - neg)
    }

    /// Blows up `point`, naming the exceptional curve `exceptional`.
    ///
    /// Every curve through the point is assumed smooth there, so its strict
    /// transform is its pullback minus the exceptional class. `layout` places
    /// each strict transform on a point of the new curve: curves sharing a
    /// tangency class must share a new point and transverse curves must not.
    pub fn blow_up(&self, point: &str, exceptional: &str, layout: &[NewPoint]) -> Result<SurfaceModel, SurfaceError> {
        let center = self.point(point)?;
        if self.curve(exceptional).is_ok() || self.basis.iter().any(|b| b == exceptional) {
            return Err(SurfaceError::DuplicateName(exceptional.to_string()));
        }

        let through: BTreeSet<&str> = center.curves().collect();
        let mut placed: BTreeMap<&str, usize> = BTreeMap::new();
        for (k, np) in layout.iter().enumerate() {
            if np.name == point || (self.point(&np.name).is_ok()) || layout[..k].iter().any(|o| o.name == np.name) {
                return Err(SurfaceError::DuplicateName(np.name.clone()));
            }
            for c in &np.curves {
                if !through.contains(c.as_str()) {
                    return Err(SurfaceError::Layout(format!("{c} does not pass through {point}")));
                }
                if placed.insert(c.as_str(), k).is_some() {
                    return Err(SurfaceError::Layout(format!("{c} placed twice on {exceptional}")));
                }
            }
        }
        if let Some(missing) = through.iter().find(|c| !placed.contains_key(*c)) {
            return Err(SurfaceError::Layout(format!("{missing} is not placed on {exceptional}")));
        }
        let names: Vec<&str> = through.iter().copied().collect();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                let together = placed[a] == placed[b];
                let tangent = center.contact_order(a, b) >= 2;
                if together && !tangent {
                    return Err(SurfaceError::Layout(format!("{a} and {b} are transverse at {point} but share a new point")));
                }
                if !together && tangent {
                    return Err(SurfaceError::Layout(format!("{a} and {b} are tangent at {point} but are separated")));
                }
            }
        }

        let rank = self.rank() + 1;
        let e = DivisorClass::unit(rank, rank - 1);
        let mut basis = self.basis.clone();
        basis.push(exceptional.to_string());
        let mut gram: Vec<Vec<i64>> = self
            .gram
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.push(0);
                r
            })
            .collect();
        let mut last = vec![0; rank];
        last[rank - 1] = -1;
        gram.push(last);

        let mut curves: Vec<CurveRecord> = self
            .curves
            .iter()
            .map(|c| {
                let mut class = c.class.extended(rank);
                if through.contains(c.name.as_str()) {
                    class = &class - &e;
                }
                CurveRecord { name: c.name.clone(), class, is_boundary_component: c.is_boundary_component }
            })
            .collect();
        curves.push(CurveRecord { name: exceptional.to_string(), class: e.clone(), is_boundary_component: false });

        let mut points: Vec<PointRecord> = self.points.iter().filter(|p| p.name != point).cloned().collect();
        for np in layout {
            let mut contact = Vec::new();
            for (i, a) in np.curves.iter().enumerate() {
                for b in &np.curves[i + 1..] {
                    let order = center.contact_order(a, b) - 1;
                    if order >= 2 {
                        contact.push(Contact { pair: [a.clone(), b.clone()], order });
                    }
                }
            }
            // union curves with residual contact >= 2 into tangency classes
            let mut class_id: Vec<u32> = (0..np.curves.len() as u32).collect();
            for ct in &contact {
                let ia = np.curves.iter().position(|c| *c == ct.pair[0]).unwrap();
                let ib = np.curves.iter().position(|c| *c == ct.pair[1]).unwrap();
                let (from, to) = (class_id[ib], class_id[ia]);
                for id in class_id.iter_mut() {
                    if *id == from {
                        *id = to;
                    }
                }
            }
            let mut incidences = vec![Incidence { curve: exceptional.to_string(), tangency_class: np.curves.len() as u32 }];
            incidences.extend(
                np.curves.iter().zip(class_id).map(|(c, id)| Incidence { curve: c.clone(), tangency_class: id }),
            );
            points.push(PointRecord { name: np.name.clone(), incidences, contact });
        }

        let out = SurfaceModel {
            basis,
            gram,
            curves,
            points,
            canonical: &self.canonical.extended(rank) + &e,
            boundary: self.boundary.clone(),
            curves_complete: self.curves_complete,
        };
        out.validate()?;
        Ok(out)
    }

    /// One new point per tangency class at `point`, named by `namer` from the
    /// sorted curve names in that class.
    pub fn layout_by_tangency(&self, point: &str, namer: impl Fn(&[String]) -> String) -> Result<Vec<NewPoint>, SurfaceError> {
        let center = self.point(point)?;
        let mut groups: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        for inc in &center.incidences {
            groups.entry(inc.tangency_class).or_default().push(inc.curve.clone());
        }
        Ok(groups
            .into_values()
            .map(|mut curves| {
                curves.sort();
                NewPoint { name: namer(&curves), curves }
            })
            .collect())
    }
}
