//! Triples and cotriples on a concrete category, given by their action on
//! objects and morphisms and their structure maps at each object.

use serde::Serialize;

use crate::simplicial::ConcreteCategory;

use super::TripleError;

pub type Obj<C> = <C as ConcreteCategory>::Obj;
pub type Mor<C> = <C as ConcreteCategory>::Mor;

/// A triple `(R, unit, mult)`: `unit: X -> RX` and `mult: RRX -> RX`.
pub trait Triple {
    type Cat: ConcreteCategory;

    fn category(&self) -> &Self::Cat;
    fn apply(&self, x: &Obj<Self::Cat>) -> Result<Obj<Self::Cat>, TripleError>;
    fn apply_mor(&self, f: &Mor<Self::Cat>) -> Result<Mor<Self::Cat>, TripleError>;
    fn unit(&self, x: &Obj<Self::Cat>) -> Result<Mor<Self::Cat>, TripleError>;
    fn mult(&self, x: &Obj<Self::Cat>) -> Result<Mor<Self::Cat>, TripleError>;
}

/// A cotriple `(S, counit, comult)`: `counit: SX -> X` and `comult: SX -> SSX`.
pub trait Cotriple {
    type Cat: ConcreteCategory;

    fn category(&self) -> &Self::Cat;
    fn apply(&self, x: &Obj<Self::Cat>) -> Result<Obj<Self::Cat>, TripleError>;
    fn apply_mor(&self, f: &Mor<Self::Cat>) -> Result<Mor<Self::Cat>, TripleError>;
    fn counit(&self, x: &Obj<Self::Cat>) -> Result<Mor<Self::Cat>, TripleError>;
    fn comult(&self, x: &Obj<Self::Cat>) -> Result<Mor<Self::Cat>, TripleError>;

    /// `S g . comult_x : Sx -> Sy` for `g: Sx -> y`. Instances whose `SSx`
    /// is too large to build override this with a direct formula.
    fn coextend(&self, x: &Obj<Self::Cat>, g: &Mor<Self::Cat>) -> Result<Mor<Self::Cat>, TripleError> {
        chain(self.category(), &[self.comult(x)?, self.apply_mor(g)?])
    }

    /// Whether the counit is a weak equivalence out of a cofibrant object, as
    /// attested by the instance.
    fn is_cofibrant_replacement(&self) -> bool {
        false
    }
}

/// Components `RX -> TX` of a natural transformation between two triples.
pub trait TripleMap {
    type Cat: ConcreteCategory;

    fn component(&self, x: &Obj<Self::Cat>) -> Result<Mor<Self::Cat>, TripleError>;
}

pub(crate) fn then<C: ConcreteCategory>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<C::Mor, TripleError> {
    Ok(c.then(f, g)?)
}

/// Compose a chain of morphisms in application order.
pub(crate) fn chain<C: ConcreteCategory>(c: &C, maps: &[C::Mor]) -> Result<C::Mor, TripleError> {
    let mut it = maps.iter();
    let first = it.next().ok_or_else(|| TripleError::Axiom("empty composite".into()))?.clone();
    it.try_fold(first, |acc, m| then(c, &acc, m))
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub fixture: usize,
    pub passed: bool,
    /// The two sides when they disagree.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// Records a check decided elsewhere; `detail` is kept only on failure.
    pub fn check(&mut self, axiom: &str, fixture: usize, passed: bool, detail: &str) {
        let detail = (!passed).then(|| detail.to_string());
        self.checks.push(AxiomCheck { axiom: axiom.to_string(), fixture, passed, detail });
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record<C: ConcreteCategory>(&mut self, c: &C, axiom: &str, fixture: usize, sides: Result<(C::Mor, C::Mor), TripleError>) {
        let (passed, detail) = match sides {
            Ok((l, r)) if c.mor_eq(&l, &r) => (true, None),
            Ok((l, r)) => (false, Some(format!("{l:?} vs {r:?}"))),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(AxiomCheck { axiom: axiom.to_string(), fixture, passed, detail });
    }
}

/// Unit and associativity laws at every fixture object.
pub fn verify_triple<T: Triple>(r: &T, fixtures: &[Obj<T::Cat>]) -> AxiomReport {
    let c = r.category();
    let mut report = AxiomReport::default();
    for (k, x) in fixtures.iter().enumerate() {
        let rx = r.apply(x);
        let left = rx.as_ref().map_err(Clone::clone).and_then(|rx| Ok((chain(c, &[r.unit(rx)?, r.mult(x)?])?, c.identity(rx))));
        report.record(c, "mult . unit R = id", k, left);
        let right = rx.as_ref().map_err(Clone::clone).and_then(|rx| Ok((chain(c, &[r.apply_mor(&r.unit(x)?)?, r.mult(x)?])?, c.identity(rx))));
        report.record(c, "mult . R unit = id", k, right);
        let assoc = rx.as_ref().map_err(Clone::clone).and_then(|rx| {
            let outer = chain(c, &[r.mult(rx)?, r.mult(x)?])?;
            let inner = chain(c, &[r.apply_mor(&r.mult(x)?)?, r.mult(x)?])?;
            Ok((outer, inner))
        });
        report.record(c, "mult . mult R = mult . R mult", k, assoc);
    }
    report
}

/// Counit and coassociativity laws at every fixture object.
pub fn verify_cotriple<S: Cotriple>(s: &S, fixtures: &[Obj<S::Cat>]) -> AxiomReport {
    let c = s.category();
    let mut report = AxiomReport::default();
    for (k, x) in fixtures.iter().enumerate() {
        let sx = s.apply(x);
        let left = sx.as_ref().map_err(Clone::clone).and_then(|sx| Ok((chain(c, &[s.comult(x)?, s.counit(sx)?])?, c.identity(sx))));
        report.record(c, "counit S . comult = id", k, left);
        let right = sx.as_ref().map_err(Clone::clone).and_then(|sx| Ok((chain(c, &[s.comult(x)?, s.apply_mor(&s.counit(x)?)?])?, c.identity(sx))));
        report.record(c, "S counit . comult = id", k, right);
        let coassoc = sx.as_ref().map_err(Clone::clone).and_then(|sx| {
            let outer = chain(c, &[s.comult(x)?, s.comult(sx)?])?;
            let inner = chain(c, &[s.comult(x)?, s.apply_mor(&s.comult(x)?)?])?;
            Ok((outer, inner))
        });
        report.record(c, "comult S . comult = S comult . comult", k, coassoc);
    }
    report
}

/// Naturality of the structure maps of `r` along fixture morphisms.
pub fn verify_triple_naturality<T: Triple>(r: &T, morphisms: &[Mor<T::Cat>]) -> AxiomReport {
    let c = r.category();
    let mut report = AxiomReport::default();
    for (k, f) in morphisms.iter().enumerate() {
        let (x, y) = (c.source(f), c.target(f));
        let unit = (|| Ok((chain(c, &[f.clone(), r.unit(&y)?])?, chain(c, &[r.unit(&x)?, r.apply_mor(f)?])?)))();
        report.record(c, "unit natural", k, unit);
        let mult = (|| {
            let rrf = r.apply_mor(&r.apply_mor(f)?)?;
            Ok((chain(c, &[rrf, r.mult(&y)?])?, chain(c, &[r.mult(&x)?, r.apply_mor(f)?])?))
        })();
        report.record(c, "mult natural", k, mult);
    }
    report
}

/// The two triple-map squares: `f . unit_R = unit_T` and
/// `f . mult_R = mult_T . T f . f R`.
pub fn verify_triple_map<R, T, F>(r: &R, t: &T, f: &F, fixtures: &[Obj<R::Cat>]) -> AxiomReport
where
    R: Triple,
    T: Triple<Cat = R::Cat>,
    F: TripleMap<Cat = R::Cat>,
{
    let c = r.category();
    let mut report = AxiomReport::default();
    for (k, x) in fixtures.iter().enumerate() {
        let unit = (|| Ok((chain(c, &[r.unit(x)?, f.component(x)?])?, t.unit(x)?)))();
        report.record(c, "f . unit = unit", k, unit);
        let mult = (|| {
            let rx = r.apply(x)?;
            let lhs = chain(c, &[r.mult(x)?, f.component(x)?])?;
            let rhs = chain(c, &[f.component(&rx)?, t.apply_mor(&f.component(x)?)?, t.mult(x)?])?;
            Ok((lhs, rhs))
        })();
        report.record(c, "f . mult = mult . f * f", k, mult);
    }
    report
}

/// The identity triple.
#[derive(Clone, Debug)]
pub struct IdentityTriple<C>(pub C);

impl<C: ConcreteCategory> Triple for IdentityTriple<C> {
    type Cat = C;

    fn category(&self) -> &C {
        &self.0
    }

    fn apply(&self, x: &C::Obj) -> Result<C::Obj, TripleError> {
        Ok(x.clone())
    }

    fn apply_mor(&self, f: &C::Mor) -> Result<C::Mor, TripleError> {
        Ok(f.clone())
    }

    fn unit(&self, x: &C::Obj) -> Result<C::Mor, TripleError> {
        Ok(self.0.identity(x))
    }

    fn mult(&self, x: &C::Obj) -> Result<C::Mor, TripleError> {
        Ok(self.0.identity(x))
    }
}

/// The identity cotriple, a cofibrant replacement when every object is cofibrant.
#[derive(Clone, Debug)]
pub struct IdentityCotriple<C>(pub C);

impl<C: ConcreteCategory> Cotriple for IdentityCotriple<C> {
    type Cat = C;

    fn category(&self) -> &C {
        &self.0
    }

    fn apply(&self, x: &C::Obj) -> Result<C::Obj, TripleError> {
        Ok(x.clone())
    }

    fn apply_mor(&self, f: &C::Mor) -> Result<C::Mor, TripleError> {
        Ok(f.clone())
    }

    fn counit(&self, x: &C::Obj) -> Result<C::Mor, TripleError> {
        Ok(self.0.identity(x))
    }

    fn comult(&self, x: &C::Obj) -> Result<C::Mor, TripleError> {
        Ok(self.0.identity(x))
    }

    fn is_cofibrant_replacement(&self) -> bool {
        true
    }
}
