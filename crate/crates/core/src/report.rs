//! Versioned, serializable reports for every user-facing operation.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, WaConstant};
use crate::groups::Sl2Element;
use crate::lie::LieAlgebra;
use crate::orbit::{format_point, BallAction, CommutativityWitness, OrbitPartition, Space};
use crate::structure::StructureError;
use crate::verdict::{decide, Dichotomy, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

pub const WEAKLY_AMENABLE: &str = "weakly amenable";
pub const NOT_WEAKLY_AMENABLE: &str = "not weakly amenable";

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub name: String,
    pub dim: usize,
    pub signature: [usize; 3],
    pub real_rank: usize,
    pub commutes_with_radical: bool,
    pub lambda: WaConstant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input_name: String,
    pub dim: usize,
    pub radical_dim: usize,
    pub levi_dim: usize,
    pub factors: Vec<FactorSummary>,
    pub verdict: String,
    pub weakly_amenable: bool,
    pub constant: WaConstant,
    pub dichotomy: Dichotomy,
}

impl AnalysisReport {
    pub fn from_verdict(input_name: &str, g: &LieAlgebra, v: &Verdict) -> Self {
        let factors = v
            .factors
            .iter()
            .map(|f| FactorSummary {
                name: f.form.name.clone(),
                dim: f.ideal.dim(),
                signature: [f.form.signature.positive, f.form.signature.negative, f.form.signature.zero],
                real_rank: f.form.real_rank,
                commutes_with_radical: f.commutes_with_radical,
                lambda: f.form.lambda_wa.clone(),
            })
            .collect();
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            input_name: input_name.to_string(),
            dim: g.dim(),
            radical_dim: v.decomposition.radical.dim(),
            levi_dim: v.decomposition.levi.dim(),
            factors,
            verdict: if v.weakly_amenable { WEAKLY_AMENABLE } else { NOT_WEAKLY_AMENABLE }.to_string(),
            weakly_amenable: v.weakly_amenable,
            constant: v.constant.clone(),
            dichotomy: v.dichotomy,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub fn analyze(input_name: &str, g: &LieAlgebra, catalog: &Catalog) -> Result<AnalysisReport, StructureError> {
    Ok(AnalysisReport::from_verdict(input_name, g, &decide(g, catalog)?))
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input:      {}", self.input_name)?;
        writeln!(f, "dimension:  {} (radical {}, Levi factor {})", self.dim, self.radical_dim, self.levi_dim)?;
        if self.factors.is_empty() {
            writeln!(f, "factors:    none")?;
        }
        for (i, s) in self.factors.iter().enumerate() {
            writeln!(
                f,
                "factor {i}:   {} dim {} signature ({},{},{}) real rank {} {} radical, constant {}",
                s.name,
                s.dim,
                s.signature[0],
                s.signature[1],
                s.signature[2],
                s.real_rank,
                if s.commutes_with_radical { "commutes with" } else { "acts on" },
                s.lambda
            )?;
        }
        writeln!(f, "dichotomy:  {}", self.dichotomy)?;
        writeln!(f, "verdict:    {}", self.verdict)?;
        write!(f, "constant:   {}", self.constant)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementSummary {
    pub matrix: [String; 4],
    pub word: String,
}

impl ElementSummary {
    pub fn new(g: &Sl2Element, word: String) -> Self {
        ElementSummary { matrix: g.entries().map(ToString::to_string), word }
    }
}

fn element_summary(action: &BallAction, g: &Sl2Element) -> ElementSummary {
    let i = action.ball().elements().iter().position(|x| x == g).expect("element of the ball");
    let word = action.ball().word(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    ElementSummary::new(g, if word.is_empty() { "I".into() } else { word })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub schema_version: u32,
    pub space: Space,
    pub point: String,
    pub radius: usize,
    pub ball_size: usize,
    pub orbit_size: usize,
    pub orbit: Vec<String>,
}

impl OrbitReport {
    pub fn new(action: &BallAction, x: &[BigInt]) -> Self {
        let orbit: Vec<String> = action.orbit(x).iter().map(|p| format_point(p)).collect();
        OrbitReport {
            schema_version: SCHEMA_VERSION,
            space: action.space(),
            point: format_point(x),
            radius: action.ball().radius(),
            ball_size: action.ball().len(),
            orbit_size: orbit.len(),
            orbit,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

impl fmt::Display for OrbitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "orbit of ({}) in {} under ball({}) [{} elements]", self.point, self.space, self.radius, self.ball_size)?;
        writeln!(f, "size: {}", self.orbit_size)?;
        for p in &self.orbit {
            writeln!(f, "  ({p})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub schema_version: u32,
    pub space: Space,
    pub point: String,
    pub radius: usize,
    pub ball_size: usize,
    pub elements: Vec<ElementSummary>,
    pub commutes: bool,
    pub failing_pair: Option<[ElementSummary; 2]>,
}

impl StabilizerReport {
    pub fn new(action: &BallAction, x: &[BigInt]) -> Self {
        let stab = action.stabilizer(x);
        let CommutativityWitness { commutes, failing_pair } = crate::orbit::commutativity_witness(&stab);
        StabilizerReport {
            schema_version: SCHEMA_VERSION,
            space: action.space(),
            point: format_point(x),
            radius: action.ball().radius(),
            ball_size: action.ball().len(),
            elements: stab.iter().map(|g| element_summary(action, g)).collect(),
            commutes,
            failing_pair: failing_pair.map(|(a, b)| [element_summary(action, &a), element_summary(action, &b)]),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

impl fmt::Display for StabilizerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stabilizer of ({}) in {} within ball({})", self.point, self.space, self.radius)?;
        writeln!(f, "size: {} of {}", self.elements.len(), self.ball_size)?;
        for e in &self.elements {
            let [a, b, c, d] = &e.matrix;
            writeln!(f, "  [[{a}, {b}], [{c}, {d}]]  = {}", e.word)?;
        }
        writeln!(f, "pairwise commuting: {}", self.commutes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub schema_version: u32,
    pub space: Space,
    pub box_radius: i64,
    pub radius: usize,
    pub base_size: usize,
    pub n0_size: usize,
    pub n0_invariant: bool,
    pub n0_fixed: bool,
    pub fragments_disjoint: bool,
    pub covers: bool,
    pub class_sizes: Vec<usize>,
    pub representatives: Vec<String>,
}

impl From<&OrbitPartition> for PartitionReport {
    fn from(p: &OrbitPartition) -> Self {
        PartitionReport {
            schema_version: SCHEMA_VERSION,
            space: p.space,
            box_radius: p.box_radius,
            radius: p.radius,
            base_size: p.base_size,
            n0_size: p.n0_class.len(),
            n0_invariant: p.n0_invariant,
            n0_fixed: p.n0_fixed,
            fragments_disjoint: p.fragments_disjoint,
            covers: p.covers,
            class_sizes: p.class_sizes(),
            representatives: p.representatives.iter().map(|r| format_point(r)).collect(),
        }
    }
}

impl PartitionReport {
    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "box [-{r},{r}] in {} under ball({}): {} points", self.space, self.radius, self.base_size, r = self.box_radius)?;
        writeln!(f, "N0: {} points, invariant {}, fixed pointwise {}", self.n0_size, self.n0_invariant, self.n0_fixed)?;
        writeln!(f, "classes: {} (fragments disjoint {}, cover {})", self.class_sizes.len(), self.fragments_disjoint, self.covers)?;
        for (rep, size) in self.representatives.iter().zip(&self.class_sizes) {
            writeln!(f, "  ({rep}): {size}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub schema_version: u32,
    pub space: Space,
    pub radius: usize,
    pub box_radius: i64,
    /// No relation of length at most `radius` between `[[1,2],[0,1]]` and `[[1,0],[2,1]]`.
    pub free_pair: bool,
    /// Commutators of generators of the acted-on group are central.
    pub nilpotency: bool,
    /// Stabilizer fragments of all box points outside `N₀` commute.
    pub stabilizers_commute: bool,
    pub counterexample: Option<String>,
    /// `N₀` is invariant and the box splits into disjoint classes.
    pub partition_consistent: bool,
}

impl WitnessReport {
    pub fn holds(&self) -> bool {
        self.free_pair && self.nilpotency && self.stabilizers_commute && self.partition_consistent
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "yes" } else { "NO" };
        writeln!(f, "{} with ball({}) and box [-{r},{r}]", self.space, self.radius, r = self.box_radius)?;
        writeln!(f, "free pair:              {}", mark(self.free_pair))?;
        writeln!(f, "2-step nilpotent:       {}", mark(self.nilpotency))?;
        writeln!(f, "stabilizers commute:    {}", mark(self.stabilizers_commute))?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample at ({c})")?;
        }
        writeln!(f, "partition consistent:   {}", mark(self.partition_consistent))
    }
}
