//! Report sections. Each section is built once from the engine's results;
//! the JSON form is its serde serialization and the text form is rendered
//! from the same fields, so both carry the same values.

use serde::Serialize;

use metric_lie::algebra::{
    bracket, connection_operators, curvature, curvature_tensor, ricci, InvariantVector, MetricLieAlgebra,
};
use metric_lie::catalog::{self, CatalogEntry};
use metric_lie::geometry::numeric::{cluster, sorted_eigenvalues};
use metric_lie::geometry::{
    einstein_check, energy_report, evaluate_numeric, geodesic_classify, harmonicity_classify, killing_solve,
    ledger_check, ricci_soliton_solve, walker_check, CaseAnalysis, EpsBranch, GeodesicBranch, KillingBranch,
    SolitonBranchStatus, SolitonConvention, SolitonWitness, Subspace,
};
use metric_lie::scalarfield::{Indeterminates, RatFunc, Rational};
use metric_lie::solvers::{BranchKind, ParametricSolution};
use metric_lie::Error;

use crate::text::{float, matrix_strings, q, span, vector, yes_no, Text};

/// One entry of the exceptional-parameter appendix.
#[derive(Clone, Debug, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exceptional {
    #[serde(skip)]
    key: Rational,
    pub eps: String,
    pub analysis: String,
    pub note: String,
}

impl Exceptional {
    fn new(eps: &Rational, analysis: &str, note: impl Into<String>) -> Self {
        Exceptional {
            key: eps.clone(),
            eps: q(eps),
            analysis: analysis.into(),
            note: note.into(),
        }
    }
}

pub trait Section: Serialize {
    const KEY: &'static str;
    const TITLE: &'static str;
    fn render(&self, out: &mut Text);
    fn exceptional(&self) -> Vec<Exceptional> {
        Vec::new()
    }
}

/// A section, or the error that prevented computing it.
#[derive(Serialize)]
#[serde(untagged)]
pub enum Outcome<T> {
    Done(T),
    Failed { error: String },
}

impl<T> From<Result<T, Error>> for Outcome<T> {
    fn from(r: Result<T, Error>) -> Self {
        match r {
            Ok(v) => Outcome::Done(v),
            Err(e) => Outcome::Failed { error: e.to_string() },
        }
    }
}

impl<T: Section> Outcome<T> {
    pub fn render(&self, out: &mut Text) {
        out.heading(T::TITLE);
        match self {
            Outcome::Done(s) => s.render(out),
            Outcome::Failed { error } => out.line(format!("error: {error}")),
        }
    }

    pub fn exceptional(&self) -> Vec<Exceptional> {
        match self {
            Outcome::Done(s) => s.exceptional(),
            Outcome::Failed { .. } => Vec::new(),
        }
    }
}

fn names(alg: &MetricLieAlgebra) -> Vec<String> {
    alg.basis_names().to_vec()
}

fn subspace_span(s: &Subspace, names: &[String]) -> String {
    span(&s.basis, names)
}

fn kernel_span(kernel: &[Vec<RatFunc>], names: &[String]) -> String {
    let basis: Vec<InvariantVector> = kernel
        .iter()
        .map(|k| InvariantVector::new(k[..names.len()].to_vec()))
        .collect();
    span(&basis, names)
}

// ---------------------------------------------------------------- input

#[derive(Serialize)]
pub struct InputSection {
    pub name: String,
    pub source: String,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<String>,
    pub metric: Vec<Vec<String>>,
}

impl InputSection {
    pub fn new(entry: &CatalogEntry, source: String) -> Self {
        let alg = &entry.algebra;
        let n = alg.dim();
        let names = names(alg);
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = bracket(alg, &InvariantVector::basis(n, i), &InvariantVector::basis(n, j));
                if !b.is_zero() {
                    brackets.push(format!("[{}, {}] = {}", names[i], names[j], vector(&b, &names)));
                }
            }
        }
        InputSection {
            name: entry.name.clone(),
            source,
            dimension: n,
            basis: names,
            brackets,
            metric: matrix_strings(alg.metric()),
        }
    }

    pub fn render(&self, out: &mut Text) {
        out.line(format!("input: {} ({})", self.name, self.source));
        out.line(format!("basis: {}", self.basis.join(", ")));
        if self.brackets.is_empty() {
            out.line("brackets: all zero");
        }
        for b in &self.brackets {
            out.line(format!("bracket: {b}"));
        }
        out.matrix("metric", &self.metric);
    }
}

// ---------------------------------------------------------------- connection

#[derive(Serialize)]
pub struct Covariant {
    pub along: String,
    pub field: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct ConnectionSection {
    /// `Lambda_i`, column `j` holding `nabla_{X_i} X_j`.
    pub operators: Vec<Vec<Vec<String>>>,
    pub nonzero: Vec<Covariant>,
    pub annotations: Vec<String>,
}

impl ConnectionSection {
    pub fn build(alg: &MetricLieAlgebra, annotations: Vec<String>) -> Result<Self, Error> {
        let ops = connection_operators(alg)?;
        let names = names(alg);
        let n = alg.dim();
        let mut nonzero = Vec::new();
        for (i, op) in ops.iter().enumerate() {
            for j in 0..n {
                let v = InvariantVector::new(op.matrix.column(j));
                if !v.is_zero() {
                    nonzero.push(Covariant {
                        along: names[i].clone(),
                        field: names[j].clone(),
                        value: vector(&v, &names),
                    });
                }
            }
        }
        Ok(ConnectionSection {
            operators: ops.iter().map(|o| matrix_strings(&o.matrix)).collect(),
            nonzero,
            annotations,
        })
    }
}

impl Section for ConnectionSection {
    const KEY: &'static str = "connection";
    const TITLE: &'static str = "Levi-Civita connection";

    fn render(&self, out: &mut Text) {
        for (i, m) in self.operators.iter().enumerate() {
            out.matrix(&format!("Lambda_{}", i + 1), m);
        }
        if self.nonzero.is_empty() {
            out.line("flat: every nabla_{X_i} X_j vanishes");
        }
        for c in &self.nonzero {
            out.line(format!("nabla_{{{}}} {} = {}", c.along, c.field, c.value));
        }
        for a in &self.annotations {
            out.line(format!("note: {a}"));
        }
    }
}

// ---------------------------------------------------------------- curvature

#[derive(Serialize)]
pub struct CurvatureValue {
    pub x: String,
    pub y: String,
    pub z: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct TensorComponent {
    pub indices: [usize; 4],
    pub value: String,
}

#[derive(Serialize)]
pub struct CurvatureSection {
    /// Nonzero `R(X_i, X_j) X_k` for `i < j`.
    pub operator: Vec<CurvatureValue>,
    /// Nonzero `g(R(X_i, X_j) X_k, X_l)` for `i < j`, `k < l`, `(i, j) <= (k, l)`, 1-based.
    pub tensor: Vec<TensorComponent>,
    pub flat: bool,
}

impl CurvatureSection {
    pub fn build(alg: &MetricLieAlgebra) -> Result<Self, Error> {
        let n = alg.dim();
        let names = names(alg);
        let mut operator = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let r = curvature(alg, &InvariantVector::basis(n, i), &InvariantVector::basis(n, j))?;
                for k in 0..n {
                    let v = InvariantVector::new(r.matrix.column(k));
                    if !v.is_zero() {
                        operator.push(CurvatureValue {
                            x: names[i].clone(),
                            y: names[j].clone(),
                            z: names[k].clone(),
                            value: vector(&v, &names),
                        });
                    }
                }
            }
        }
        let t = curvature_tensor(alg)?;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut tensor = Vec::new();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[a..] {
                let c = t.get(i, j, k, l);
                if !c.is_zero() {
                    tensor.push(TensorComponent {
                        indices: [i + 1, j + 1, k + 1, l + 1],
                        value: c.to_string(),
                    });
                }
            }
        }
        Ok(CurvatureSection {
            flat: t.is_zero(),
            operator,
            tensor,
        })
    }
}

impl Section for CurvatureSection {
    const KEY: &'static str = "curvature";
    const TITLE: &'static str = "curvature";

    fn render(&self, out: &mut Text) {
        out.line(format!("flat: {}", yes_no(self.flat)));
        for c in &self.operator {
            out.line(format!("R({}, {}) {} = {}", c.x, c.y, c.z, c.value));
        }
        for c in &self.tensor {
            let [i, j, k, l] = c.indices;
            out.line(format!("R_{i}{j}{k}{l} = {}", c.value));
        }
    }
}

// ---------------------------------------------------------------- ricci

#[derive(Serialize)]
pub struct RicciSection {
    pub matrix: Vec<Vec<String>>,
    /// Present when the Ricci matrix is diagonal.
    pub diagonal: Option<Vec<String>>,
    pub scalar: String,
    /// `lambda` with `rho = lambda g` for every `eps`.
    pub einstein: Option<String>,
}

impl RicciSection {
    pub fn build(alg: &MetricLieAlgebra) -> Result<Self, Error> {
        let rho = ricci(alg)?.matrix;
        let gi = alg.metric_inverse()?;
        let n = alg.dim();
        let mut scalar = RatFunc::zero();
        for i in 0..n {
            for j in 0..n {
                scalar = &scalar + &(&gi[(i, j)] * &rho[(i, j)]);
            }
        }
        let diagonal = rho
            .is_diagonal()
            .then(|| (0..n).map(|i| rho[(i, i)].to_string()).collect());
        Ok(RicciSection {
            matrix: matrix_strings(&rho),
            diagonal,
            scalar: scalar.to_string(),
            einstein: einstein_check(alg)?.map(|l| l.to_string()),
        })
    }
}

impl Section for RicciSection {
    const KEY: &'static str = "ricci";
    const TITLE: &'static str = "Ricci tensor";

    fn render(&self, out: &mut Text) {
        match &self.diagonal {
            Some(d) => out.line(format!("rho = diag({})", d.join(", "))),
            None => out.matrix("rho", &self.matrix),
        }
        out.line(format!("scalar curvature = {}", self.scalar));
        match &self.einstein {
            Some(l) => out.line(format!("Einstein for every eps: lambda = {l}")),
            None => out.line("Einstein for generic eps: no"),
        }
    }
}

// ---------------------------------------------------------------- soliton

#[derive(Serialize)]
pub struct SolitonField {
    pub field: String,
    pub lambda: String,
    pub kind: String,
    /// Directions `(X, lambda)` that may be added.
    pub free: Vec<[String; 2]>,
}

impl SolitonField {
    fn new(w: &SolitonWitness, names: &[String]) -> Self {
        SolitonField {
            field: vector(&w.field, names),
            lambda: w.lambda.to_string(),
            kind: w.kind.label().into(),
            free: w
                .free_directions
                .iter()
                .map(|(x, l)| [vector(x, names), l.to_string()])
                .collect(),
        }
    }

    fn describe(&self) -> String {
        format!("{} soliton X = {}, lambda = {}", self.kind, self.field, self.lambda)
    }
}

#[derive(Serialize)]
pub struct SolitonCase {
    pub eps: String,
    /// `degenerate metric`, `undefined`, `no soliton`, `soliton` or `Einstein`.
    pub status: String,
    pub einstein_lambda: Option<String>,
    pub soliton: Option<SolitonField>,
}

impl SolitonCase {
    fn describe(&self) -> String {
        match (self.status.as_str(), &self.einstein_lambda, &self.soliton) {
            ("Einstein", Some(l), _) => format!("Einstein, lambda={l}"),
            ("soliton", _, Some(s)) => s.describe(),
            ("degenerate metric", _, Some(s)) => {
                format!(
                    "degenerate metric (the system is solved by X = {}, lambda = {})",
                    s.field, s.lambda
                )
            }
            (status, _, _) => status.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct SolitonSection {
    pub convention: String,
    pub equation: String,
    pub unknowns: Vec<String>,
    pub system: Vec<String>,
    pub summary: String,
    pub generic_einstein: Option<String>,
    pub generic: Option<SolitonField>,
    pub exceptional: Vec<SolitonCase>,
    pub unresolved: Vec<String>,
}

impl SolitonSection {
    pub fn build(alg: &MetricLieAlgebra, convention: SolitonConvention) -> Result<Self, Error> {
        let names = names(alg);
        let n = alg.dim();
        let v = ricci_soliton_solve(alg, convention)?;
        let (label, equation) = match convention {
            SolitonConvention::Plain => ("paper", "L_X g = lambda g - rho"),
            SolitonConvention::Doubled => ("doubled", "L_X g = 2 (lambda g - rho)"),
        };
        let system = v.system.row_polynomials().iter().map(|p| format!("{p} = 0")).collect();
        let exceptional: Vec<SolitonCase> = v
            .exceptional
            .iter()
            .map(|b| {
                let (status, soliton) = match &b.status {
                    SolitonBranchStatus::DegenerateMetric(sol) => {
                        let w = sol.particular.as_ref().map(|p| SolitonField {
                            field: vector(&InvariantVector::new(p[..n].to_vec()), &names),
                            lambda: p[n].to_string(),
                            kind: String::new(),
                            free: Vec::new(),
                        });
                        ("degenerate metric", w)
                    }
                    SolitonBranchStatus::Undefined => ("undefined", None),
                    SolitonBranchStatus::NoSoliton => ("no soliton", None),
                    SolitonBranchStatus::Soliton(w) if b.einstein.is_some() => {
                        ("Einstein", Some(SolitonField::new(w, &names)))
                    }
                    SolitonBranchStatus::Soliton(w) => ("soliton", Some(SolitonField::new(w, &names))),
                };
                SolitonCase {
                    eps: q(&b.eps),
                    status: status.into(),
                    einstein_lambda: b.einstein.as_ref().map(ToString::to_string),
                    soliton,
                }
            })
            .collect();
        let generic = v.generic.as_ref().map(|w| SolitonField::new(w, &names));
        let generic_einstein = v.einstein.as_ref().map(ToString::to_string);
        let head = match (&generic_einstein, &generic) {
            (Some(l), _) => format!("Einstein, lambda={l}"),
            (None, Some(s)) => s.describe(),
            (None, None) => "no homogeneous Ricci soliton".into(),
        };
        let mut parts = vec![format!("generic: {head}")];
        for c in exceptional.iter().filter(|c| c.status != "degenerate metric") {
            parts.push(format!("exceptional eps={}: {}", c.eps, c.describe()));
        }
        Ok(SolitonSection {
            convention: label.into(),
            equation: equation.into(),
            unknowns: v.system.unknowns().to_vec(),
            system,
            summary: parts.join("; "),
            generic_einstein,
            generic,
            exceptional,
            unresolved: v.solution.unresolved.iter().map(ToString::to_string).collect(),
        })
    }
}

impl Section for SolitonSection {
    const KEY: &'static str = "soliton";
    const TITLE: &'static str = "Ricci solitons";

    fn render(&self, out: &mut Text) {
        out.line(format!("convention: {} ({})", self.convention, self.equation));
        for row in &self.system {
            out.line(format!("system: {row}"));
        }
        out.line(self.summary.clone());
        if let Some(g) = &self.generic {
            for [x, l] in &g.free {
                out.line(format!("free direction: X = {x}, lambda = {l}"));
            }
        }
        for c in self.exceptional.iter().filter(|c| c.status == "degenerate metric") {
            out.line(format!("exceptional eps={}: {}", c.eps, c.describe()));
        }
        for p in &self.unresolved {
            out.line(format!("unresolved parameter factor: {p}"));
        }
    }

    fn exceptional(&self) -> Vec<Exceptional> {
        self.exceptional
            .iter()
            .map(|c| {
                let eps: Rational = c.eps.parse().expect("canonical rational");
                Exceptional::new(&eps, "soliton", c.describe())
            })
            .collect()
    }
}

// ---------------------------------------------------------------- killing

#[derive(Serialize)]
pub struct KillingCase {
    pub eps: String,
    pub status: String,
    pub span: Option<String>,
}

#[derive(Serialize)]
pub struct KillingSection {
    pub dimension: usize,
    pub span: String,
    pub exceptional: Vec<KillingCase>,
}

impl KillingSection {
    pub fn build(alg: &MetricLieAlgebra) -> Result<Self, Error> {
        let names = names(alg);
        let r = killing_solve(alg)?;
        let exceptional = r
            .exceptional
            .iter()
            .map(|b| {
                let status = match b {
                    KillingBranch::Undefined { .. } => "undefined",
                    KillingBranch::Degenerate { .. } => "degenerate metric",
                    KillingBranch::Regular { .. } => "regular",
                };
                KillingCase {
                    eps: q(b.eps()),
                    status: status.into(),
                    span: b.space().map(|s| subspace_span(s, &names)),
                }
            })
            .collect();
        Ok(KillingSection {
            dimension: r.generic.dim(),
            span: subspace_span(&r.generic, &names),
            exceptional,
        })
    }
}

impl Section for KillingSection {
    const KEY: &'static str = "killing";
    const TITLE: &'static str = "invariant Killing fields";

    fn render(&self, out: &mut Text) {
        out.line(format!("generic: {} (dimension {})", self.span, self.dimension));
        for c in &self.exceptional {
            out.line(format!("exceptional eps={}: {}", c.eps, killing_note(c)));
        }
    }

    fn exceptional(&self) -> Vec<Exceptional> {
        self.exceptional
            .iter()
            .map(|c| Exceptional::new(&c.eps.parse().expect("canonical rational"), "killing", killing_note(c)))
            .collect()
    }
}

fn killing_note(c: &KillingCase) -> String {
    match (&c.span, c.status.as_str()) {
        (Some(s), "regular") => s.clone(),
        (Some(s), status) => format!("{status}, {s}"),
        (None, status) => status.to_string(),
    }
}

// ---------------------------------------------------------------- geodesic

#[derive(Serialize)]
#[serde(untagged)]
pub enum Cases {
    Union { union: Vec<String> },
    Incomplete { incomplete: String },
}

impl Cases {
    fn new(a: &CaseAnalysis, vars: &[&str]) -> Self {
        match a {
            CaseAnalysis::Union(parts) => Cases::Union {
                union: parts.iter().map(|s| brace(s, vars)).collect(),
            },
            CaseAnalysis::Incomplete(reason) => Cases::Incomplete {
                incomplete: reason.clone(),
            },
        }
    }

    fn text(&self) -> String {
        match self {
            Cases::Union { union } if union.is_empty() => "{0}".into(),
            Cases::Union { union } => union.join(" U "),
            Cases::Incomplete { incomplete } => format!("case analysis incomplete: {incomplete}"),
        }
    }
}

fn brace(s: &Subspace, vars: &[&str]) -> String {
    if s.equations.is_empty() {
        return "all of the algebra".into();
    }
    format!("{{{}}}", s.equations_text(vars))
}

#[derive(Serialize)]
pub struct GeodesicCase {
    pub eps: String,
    pub degenerate: bool,
    pub solutions: Option<Cases>,
}

#[derive(Serialize)]
pub struct GeodesicSection {
    pub field: String,
    /// Components of `nabla_V V`.
    pub equations: Vec<String>,
    pub solutions: Cases,
    pub exceptional: Vec<GeodesicCase>,
}

impl GeodesicSection {
    pub fn build(alg: &MetricLieAlgebra) -> Result<Self, Error> {
        let r = geodesic_classify(alg)?;
        let vars: Vec<&str> = r.vars.names().iter().map(String::as_str).collect();
        let field = generic_field(&r.vars, alg);
        let exceptional = r
            .exceptional
            .iter()
            .map(|b| match b {
                GeodesicBranch::Degenerate { eps } => GeodesicCase {
                    eps: q(eps),
                    degenerate: true,
                    solutions: None,
                },
                GeodesicBranch::Solved { eps, analysis } => GeodesicCase {
                    eps: q(eps),
                    degenerate: false,
                    solutions: Some(Cases::new(analysis, &vars)),
                },
            })
            .collect();
        Ok(GeodesicSection {
            field,
            equations: r.equations.iter().map(ToString::to_string).collect(),
            solutions: Cases::new(&r.analysis, &vars),
            exceptional,
        })
    }
}

/// `a*X1 + b*X2 + ...`
fn generic_field(vars: &Indeterminates, alg: &MetricLieAlgebra) -> String {
    vars.names()
        .iter()
        .zip(alg.basis_names())
        .map(|(v, x)| format!("{v}*{x}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn geodesic_note(c: &GeodesicCase) -> String {
    match &c.solutions {
        Some(s) => s.text(),
        None => "degenerate metric".into(),
    }
}

impl Section for GeodesicSection {
    const KEY: &'static str = "geodesic";
    const TITLE: &'static str = "geodesic invariant fields";

    fn render(&self, out: &mut Text) {
        out.line(format!("V = {}", self.field));
        for (i, e) in self.equations.iter().enumerate() {
            out.line(format!("nabla_V V component {}: {e}", i + 1));
        }
        out.line(format!("generic: {}", self.solutions.text()));
        for c in &self.exceptional {
            out.line(format!("exceptional eps={}: {}", c.eps, geodesic_note(c)));
        }
    }

    fn exceptional(&self) -> Vec<Exceptional> {
        self.exceptional
            .iter()
            .map(|c| {
                Exceptional::new(
                    &c.eps.parse().expect("canonical rational"),
                    "geodesic",
                    geodesic_note(c),
                )
            })
            .collect()
    }
}

// ---------------------------------------------------------------- harmonicity

#[derive(Serialize)]
pub struct EigenEntry {
    pub eigenvalue: String,
    pub multiplicity: usize,
    pub eigenspace: String,
}

#[derive(Serialize)]
pub struct FamilyEntry {
    pub eigenvalue: String,
    pub family: String,
    pub laplacian_vanishes: bool,
    pub trace_term: Vec<String>,
    pub trace_vanishes: bool,
    pub harmonic_map: bool,
}

#[derive(Serialize)]
pub struct KernelCase {
    pub eps: String,
    pub kernel: Option<String>,
}

#[derive(Serialize)]
pub struct HarmonicSection {
    pub laplacian: Vec<Vec<String>>,
    pub characteristic: String,
    pub eigenpairs: Vec<EigenEntry>,
    pub residual_factor: Option<String>,
    pub harmonic_sections: String,
    pub section_exceptional: Vec<KernelCase>,
    pub families: Vec<FamilyEntry>,
    pub parallel: String,
}

fn kernel_cases(p: &ParametricSolution, names: &[String]) -> Vec<KernelCase> {
    p.exceptional
        .iter()
        .map(|b| KernelCase {
            eps: q(&b.eps),
            kernel: match &b.kind {
                BranchKind::Pole => None,
                BranchKind::Solved(s) => Some(kernel_span(&s.kernel, names)),
            },
        })
        .collect()
}

fn kernel_note(c: &KernelCase) -> String {
    c.kernel.clone().unwrap_or_else(|| "undefined".into())
}

impl HarmonicSection {
    pub fn build(alg: &MetricLieAlgebra) -> Result<Self, Error> {
        let names = names(alg);
        let v = harmonicity_classify(alg)?;
        let d = &v.critical_families;
        Ok(HarmonicSection {
            laplacian: matrix_strings(&v.laplacian.matrix),
            characteristic: d.characteristic.to_string(),
            eigenpairs: d
                .pairs
                .iter()
                .map(|p| EigenEntry {
                    eigenvalue: p.eigenvalue.to_string(),
                    multiplicity: p.multiplicity,
                    eigenspace: span(&p.eigenspace, &names),
                })
                .collect(),
            residual_factor: (!d.residual_factor.is_one()).then(|| d.residual_factor.to_string()),
            harmonic_sections: span(&v.harmonic_sections, &names),
            section_exceptional: kernel_cases(&v.section_branches, &names),
            families: v
                .families
                .iter()
                .map(|f| FamilyEntry {
                    eigenvalue: f.eigenvalue.to_string(),
                    family: span(&f.basis, &names),
                    laplacian_vanishes: f.laplacian_vanishes,
                    trace_term: f.trace_term.iter().map(ToString::to_string).collect(),
                    trace_vanishes: f.trace_vanishes,
                    harmonic_map: f.harmonic_map(),
                })
                .collect(),
            parallel: span(&v.parallel, &names),
        })
    }
}

impl Section for HarmonicSection {
    const KEY: &'static str = "harmonic";
    const TITLE: &'static str = "rough Laplacian and harmonicity";

    fn render(&self, out: &mut Text) {
        out.matrix("rough Laplacian", &self.laplacian);
        out.line(format!("characteristic polynomial: {}", self.characteristic));
        for p in &self.eigenpairs {
            out.line(format!(
                "eigenpair: {} on {} (multiplicity {})",
                p.eigenvalue, p.eigenspace, p.multiplicity
            ));
        }
        if let Some(r) = &self.residual_factor {
            out.line(format!("eigenvalues outside Q(eps): roots of {r}"));
        }
        out.line(format!("harmonic sections (generic): {}", self.harmonic_sections));
        for c in &self.section_exceptional {
            out.line(format!("harmonic sections at eps={}: {}", c.eps, kernel_note(c)));
        }
        for f in &self.families {
            out.line(format!(
                "family {} (eigenvalue {}): harmonic map {}; trace term [{}]",
                f.family,
                f.eigenvalue,
                yes_no(f.harmonic_map),
                f.trace_term.join(", ")
            ));
        }
        out.line(format!("parallel invariant fields: {}", self.parallel));
    }

    fn exceptional(&self) -> Vec<Exceptional> {
        self.section_exceptional
            .iter()
            .map(|c| {
                Exceptional::new(
                    &c.eps.parse().expect("canonical rational"),
                    "harmonic",
                    format!("harmonic sections {}", kernel_note(c)),
                )
            })
            .collect()
    }
}

// ---------------------------------------------------------------- energy

#[derive(Serialize)]
pub struct EnergyFamily {
    pub eigenvalue: String,
    pub family: String,
    pub grad_norm_sq: String,
    pub length_sq: String,
    /// `k` with `density = constant + k g(V, V)` on the family.
    pub coefficient: Option<String>,
}

#[derive(Serialize)]
pub struct EnergySection {
    pub field: String,
    pub grad_norm_sq: String,
    pub density: String,
    pub constant: String,
    pub families: Vec<EnergyFamily>,
    pub annotations: Vec<String>,
}

impl EnergySection {
    pub fn build(alg: &MetricLieAlgebra, annotations: Vec<String>) -> Result<Self, Error> {
        let names = names(alg);
        let r = energy_report(alg)?;
        Ok(EnergySection {
            field: generic_field(&r.vars, alg),
            grad_norm_sq: r.grad_norm_sq.to_string(),
            density: r.density.to_string(),
            constant: q(&r.constant),
            families: r
                .families
                .iter()
                .map(|f| EnergyFamily {
                    eigenvalue: f.eigenvalue.to_string(),
                    family: span(&f.basis, &names),
                    grad_norm_sq: f.grad_norm_sq.to_string(),
                    length_sq: f.length_sq.to_string(),
                    coefficient: f.coefficient.as_ref().map(ToString::to_string),
                })
                .collect(),
            annotations,
        })
    }
}

impl Section for EnergySection {
    const KEY: &'static str = "energy";
    const TITLE: &'static str = "energy";

    fn render(&self, out: &mut Text) {
        out.line(format!("V = {}", self.field));
        out.line(format!("||nabla V||^2 = {}", self.grad_norm_sq));
        out.line(format!("energy density = {}", self.density));
        out.line(format!("additive constant = {}", self.constant));
        for f in &self.families {
            let k = f.coefficient.as_deref().unwrap_or("not proportional to g(V, V)");
            out.line(format!(
                "family {} (eigenvalue {}): ||nabla V||^2 = {}, g(V, V) = {}, density = constant + k*g(V, V) with k = {}",
                f.family, f.eigenvalue, f.grad_norm_sq, f.length_sq, k
            ));
        }
        for a in &self.annotations {
            out.line(format!("note: {a}"));
        }
    }
}

// ---------------------------------------------------------------- ledger

#[derive(Serialize)]
pub struct LedgerSection {
    pub l3_form: String,
    pub cyclic_parallel: bool,
    pub l3: bool,
    pub l5_form: String,
    pub l5: bool,
    pub l3_exceptional: Vec<String>,
    pub l5_exceptional: Vec<String>,
}

impl LedgerSection {
    pub fn build(alg: &MetricLieAlgebra) -> Result<Self, Error> {
        let r = ledger_check(alg)?;
        Ok(LedgerSection {
            l3_form: r.l3_form.to_string(),
            cyclic_parallel: r.cyclic_parallel,
            l3: r.l3,
            l5_form: r.l5_form.to_string(),
            l5: r.l5,
            l3_exceptional: r.l3_exceptional.iter().map(q).collect(),
            l5_exceptional: r.l5_exceptional.iter().map(q).collect(),
        })
    }
}

impl Section for LedgerSection {
    const KEY: &'static str = "ledger";
    const TITLE: &'static str = "Ledger conditions";

    fn render(&self, out: &mut Text) {
        out.line(format!("(nabla_X rho)(X, X) = {}", self.l3_form));
        out.line(format!(
            "cyclic sums of nabla rho vanish: {}",
            yes_no(self.cyclic_parallel)
        ));
        out.line(format!("L3 holds: {}", yes_no(self.l3)));
        out.line(format!("L5 form = {}", self.l5_form));
        out.line(format!("L5 holds: {}", yes_no(self.l5)));
        for e in &self.l3_exceptional {
            out.line(format!("L3 holds at eps={e}"));
        }
        for e in &self.l5_exceptional {
            out.line(format!("L5 holds at eps={e}"));
        }
    }

    fn exceptional(&self) -> Vec<Exceptional> {
        let l3 = self.l3_exceptional.iter().map(|e| (e, "L3 holds"));
        let l5 = self.l5_exceptional.iter().map(|e| (e, "L5 holds"));
        l3.chain(l5)
            .map(|(e, note)| Exceptional::new(&e.parse().expect("canonical rational"), "ledger", note))
            .collect()
    }
}

// ---------------------------------------------------------------- walker

#[derive(Serialize)]
pub struct SignatureSample {
    pub eps: String,
    pub signature: String,
    /// Smallest numeric parallelism residual on the null cone.
    pub null_cone_residual: Option<f64>,
}

#[derive(Serialize)]
pub struct WalkerCase {
    pub eps: String,
    pub kernel_dimension: Option<usize>,
    pub witness: Option<String>,
}

#[derive(Serialize)]
pub struct WalkerSection {
    pub branch: String,
    pub walker: bool,
    pub witness: Option<String>,
    pub commutator_kernel: String,
    pub commutator_kernel_exceptional: Vec<KernelCase>,
    pub minors: Vec<String>,
    pub samples: Vec<SignatureSample>,
    pub exceptional: Vec<WalkerCase>,
}

impl WalkerSection {
    pub fn build(alg: &MetricLieAlgebra, branch: EpsBranch) -> Result<Self, Error> {
        let names = names(alg);
        let v = walker_check(alg, branch)?;
        let samples = v
            .signatures
            .iter()
            .map(|(eps, sig)| SignatureSample {
                eps: q(eps),
                signature: sig.label(),
                null_cone_residual: v.numeric.iter().find(|(e, _)| e == eps).and_then(|(_, r)| *r),
            })
            .collect();
        Ok(WalkerSection {
            branch: branch.label().into(),
            walker: v.walker,
            witness: v.witness.as_ref().map(|w| vector(w, &names)),
            commutator_kernel: kernel_span(&v.commutator_kernel.generic.kernel, &names),
            commutator_kernel_exceptional: kernel_cases(&v.commutator_kernel, &names),
            minors: v.minors.iter().map(ToString::to_string).collect(),
            samples,
            exceptional: v
                .exceptional
                .iter()
                .map(|b| WalkerCase {
                    eps: q(&b.eps),
                    kernel_dimension: b.kernel_dim,
                    witness: b.witness.as_ref().map(|w| vector(w, &names)),
                })
                .collect(),
        })
    }
}

fn walker_note(c: &WalkerCase) -> String {
    match (&c.kernel_dimension, &c.witness) {
        (None, _) => "degenerate metric or undefined connection".into(),
        (Some(d), Some(w)) => format!("commutator kernel of dimension {d}; null parallel witness {w}"),
        (Some(d), None) => format!("commutator kernel of dimension {d}; no null parallel line field"),
    }
}

impl Section for WalkerSection {
    const KEY: &'static str = "walker";
    const TITLE: &'static str = "Walker structure";

    fn render(&self, out: &mut Text) {
        out.line(format!("branch: {}", self.branch));
        out.line(format!("commutator kernel (generic): {}", self.commutator_kernel));
        for c in &self.commutator_kernel_exceptional {
            out.line(format!("commutator kernel at eps={}: {}", c.eps, kernel_note(c)));
        }
        for m in &self.minors {
            out.line(format!("rank-one minor: {m}"));
        }
        match &self.witness {
            Some(w) => out.line(format!("Walker: yes, null parallel field {w}")),
            None => out.line("Walker: no invariant null parallel line field"),
        }
        for c in &self.exceptional {
            out.line(format!("exceptional eps={}: {}", c.eps, walker_note(c)));
        }
        for s in &self.samples {
            let residual = s
                .null_cone_residual
                .map_or_else(|| "no null directions".to_string(), float);
            out.line(format!(
                "sample eps={}: {}, null-cone residual {}",
                s.eps, s.signature, residual
            ));
        }
    }

    fn exceptional(&self) -> Vec<Exceptional> {
        self.exceptional
            .iter()
            .map(|c| Exceptional::new(&c.eps.parse().expect("canonical rational"), "walker", walker_note(c)))
            .collect()
    }
}

// ---------------------------------------------------------------- numeric

/// A floating-point eigenvalue with its multiplicity.
#[derive(Serialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct NumericSection {
    pub eps: String,
    pub signature: String,
    pub positive: usize,
    pub negative: usize,
    /// Distinct real eigenvalues of the rough Laplacian, ascending.
    pub laplacian_eigenvalues: Vec<f64>,
    pub laplacian_spectrum: Vec<Eigenvalue>,
    /// Ricci tensor in the pseudo-orthonormal frame.
    pub frame_ricci: Vec<Vec<f64>>,
    /// Symbolic Laplacian eigenvalues evaluated at `eps`.
    pub symbolic_eigenvalues: Vec<String>,
    /// Largest relative disagreement between the basis and frame pipelines.
    pub path_discrepancy: f64,
}

/// Relative tolerance for merging numerically equal eigenvalues.
const CLUSTER_TOLERANCE: f64 = 1e-9;

impl NumericSection {
    pub fn build(alg: &MetricLieAlgebra, eps: &Rational) -> Result<Self, Error> {
        let m = evaluate_numeric(alg, eps)?;
        let spectrum = cluster(&sorted_eigenvalues(&m.frame_laplacian), CLUSTER_TOLERANCE);
        let laplacian_eigenvalues = spectrum
            .iter()
            .filter(|(z, _)| z.im == 0.0)
            .map(|(z, _)| z.re)
            .collect();
        let n = alg.dim();
        let frame_ricci = (0..n)
            .map(|i| (0..n).map(|j| m.frame_ricci[(i, j)]).collect())
            .collect();
        let mut symbolic_eigenvalues = Vec::new();
        if let Ok(h) = harmonicity_classify(alg) {
            for p in &h.critical_families.pairs {
                symbolic_eigenvalues.push(p.eigenvalue.eval(eps).map(|v| q(&v)).unwrap_or_else(|e| e.to_string()));
            }
        }
        Ok(NumericSection {
            eps: q(eps),
            signature: m.signature.label(),
            positive: m.positive,
            negative: m.negative,
            laplacian_eigenvalues,
            laplacian_spectrum: spectrum
                .iter()
                .map(|(z, k)| Eigenvalue {
                    re: z.re,
                    im: z.im,
                    multiplicity: *k,
                })
                .collect(),
            frame_ricci,
            symbolic_eigenvalues,
            path_discrepancy: m.path_discrepancy(),
        })
    }
}

impl Section for NumericSection {
    const KEY: &'static str = "numeric";
    const TITLE: &'static str = "numeric evaluation";

    fn render(&self, out: &mut Text) {
        out.line(format!("eps = {}", self.eps));
        out.line(format!(
            "signature: {} ({} positive, {} negative)",
            self.signature, self.positive, self.negative
        ));
        for e in &self.laplacian_spectrum {
            let value = if e.im == 0.0 {
                float(e.re)
            } else {
                format!("{} + {}i", float(e.re), float(e.im))
            };
            out.line(format!(
                "rough Laplacian eigenvalue {} (multiplicity {})",
                value, e.multiplicity
            ));
        }
        out.line(format!(
            "symbolic eigenvalues at eps: {}",
            self.symbolic_eigenvalues.join(", ")
        ));
        let rows: Vec<Vec<String>> = self
            .frame_ricci
            .iter()
            .map(|r| r.iter().map(|x| float(*x)).collect())
            .collect();
        out.matrix("Ricci in the pseudo-orthonormal frame", &rows);
        out.line(format!(
            "basis/frame path discrepancy: {}",
            float(self.path_discrepancy)
        ));
    }
}

// ---------------------------------------------------------------- discrepancies

#[derive(Serialize)]
pub struct DiscrepancyEntry {
    pub item: String,
    pub reference: String,
    pub computed: String,
    pub note: String,
}

impl DiscrepancyEntry {
    pub fn text(&self) -> String {
        format!(
            "{}: published {}, computed {} ({})",
            self.item, self.reference, self.computed, self.note
        )
    }
}

pub fn discrepancies(entry: &CatalogEntry) -> Result<Vec<DiscrepancyEntry>, Error> {
    Ok(catalog::discrepancies(entry)?
        .into_iter()
        .map(|d| DiscrepancyEntry {
            item: d.item,
            reference: d.reference,
            computed: d.computed,
            note: d.note,
        })
        .collect())
}

/// Annotations whose item mentions `topic`.
pub fn annotations(list: &Result<Vec<DiscrepancyEntry>, Error>, topic: &str) -> Vec<String> {
    match list {
        Ok(l) => l
            .iter()
            .filter(|d| d.item.contains(topic))
            .map(DiscrepancyEntry::text)
            .collect(),
        Err(_) => Vec::new(),
    }
}
