use serde::Serialize;

use crate::Provider;

#[derive(Serialize)]
pub struct PrepareReport {
    pub dimension: usize,
    pub gate_count: usize,
    pub fidelity_to_target: f64,
    pub norm_drift: f64,
    /// `‖Hψ - Eψ‖` against the provider's reference Hamiltonian.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Serialize)]
struct Timed<'a> {
    #[serde(flatten)]
    report: &'a PrepareReport,
    wall_time: f64,
}

impl PrepareReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_json_with_time(&self, wall_time: f64) -> String {
        serde_json::to_string(&Timed { report: self, wall_time }).expect("plain data serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("field,value\n");
        out.push_str(&format!("dimension,{}\n", self.dimension));
        out.push_str(&format!("gate_count,{}\n", self.gate_count));
        out.push_str(&format!("fidelity_to_target,{:?}\n", self.fidelity_to_target));
        out.push_str(&format!("norm_drift,{:?}\n", self.norm_drift));
        if let Some(r) = self.residual {
            out.push_str(&format!("residual,{r:?}\n"));
        }
        out
    }
}

#[derive(Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: &'static str, value: f64, tolerance: f64) -> Self {
        // NaN fails
        Check { name, value, tolerance, passed: value <= tolerance }
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub provider: Provider,
    pub n: usize,
    pub k: usize,
    pub two_s: usize,
    pub sz: f64,
    pub expected_sz: f64,
    pub energy: f64,
    pub fidelity: f64,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bethe_residuals: Option<Vec<f64>>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,value,tolerance,passed\n");
        for c in &self.checks {
            out.push_str(&format!("{},{:?},{:?},{}\n", c.name, c.value, c.tolerance, c.passed));
        }
        out
    }
}
