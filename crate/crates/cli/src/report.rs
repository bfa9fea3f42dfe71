//! Machine-readable run reports and the catalog runner.
//!
//! A `RunReport` carries the command, a digest of its inputs, the ordered
//! verdicts and any witnesses. Verdicts and the digest are deterministic
//! given identical inputs; the timing field is informational only.

use crate::{CliError, Format, OutputOpts, EXIT_FAIL, EXIT_PASS};
use homnorm::actions::canonical_action_agreement_on;
use homnorm::bar::bar_of_hom;
use homnorm::catalog;
use homnorm::crossed::{
    decide_normal, equivariant_iso_check, gamma_unchecked, moore_homotopy, verify_simplicial_group,
    SearchBudget,
};
use homnorm::groups::{
    enumerate_homs, image_normal, is_isomorphic, kernel, quotient_by_image,
};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::time::Instant;

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<String>,
    pub timing_ms: u128,
    #[serde(skip)]
    started: Instant,
}

impl RunReport {
    pub fn new<T: Serialize>(command: &str, inputs: &T) -> Self {
        let canonical = serde_json::to_vec(inputs).expect("serializable inputs");
        let digest = Sha256::digest(&canonical);
        RunReport {
            command: command.to_string(),
            inputs_digest: format!("{digest:x}"),
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            timing_ms: 0,
            started: Instant::now(),
        }
    }

    pub fn verdict(&mut self, name: &str, pass: bool, details: String) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass,
            details,
        });
    }

    pub fn witness(&mut self, text: String) {
        if self.witnesses.len() < 64 {
            self.witnesses.push(text);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Stamps the timing and prints the report (JSON when asked).
    pub fn finish(&mut self, as_json: bool) {
        self.timing_ms = self.started.elapsed().as_millis();
        if as_json {
            println!(
                "{}",
                serde_json::to_string_pretty(self).expect("serializable report")
            );
        }
    }

    pub fn print_text(&self) {
        for v in &self.verdicts {
            println!(
                "{} {}: {}",
                if v.pass { "PASS" } else { "FAIL" },
                v.name,
                v.details
            );
        }
        for w in &self.witnesses {
            println!("  witness: {w}");
        }
    }
}

#[derive(Serialize)]
struct CatalogConfig {
    max_order: usize,
    levels: usize,
    abelian_only: bool,
    budget_bits: f64,
    groups: Vec<String>,
}

/// Exhaustive sweep: every homomorphism between every ordered pair of
/// catalog groups up to the order bound. Runs the normality decision on
/// each; compares the verdict with image-normality on injective maps; and
/// puts every certificate through simplicial-group verification, the
/// equivariant comparison, the Moore homotopy cross-check and the
/// canonical-action agreement.
pub fn cmd_catalog(
    max_order: usize,
    levels: usize,
    abelian_only: bool,
    budget: Option<f64>,
    output: &OutputOpts,
) -> Result<i32, CliError> {
    if max_order > 24 {
        return Err(CliError::Usage(
            "--max-order above 24 is not supported".to_string(),
        ));
    }
    if !(3..=6).contains(&levels) {
        return Err(CliError::Usage(
            "--levels must be between 3 and 6 for the catalog run".to_string(),
        ));
    }
    let budget = budget
        .map(|max_bits| SearchBudget { max_bits })
        .unwrap_or_default();
    let groups: Vec<_> = catalog::builtin()
        .into_iter()
        .filter(|e| e.group.order() <= max_order)
        .filter(|e| !abelian_only || e.group.is_abelian())
        .collect();

    let config = CatalogConfig {
        max_order,
        levels,
        abelian_only,
        budget_bits: budget.max_bits,
        groups: groups.iter().map(|e| e.name.clone()).collect(),
    };
    let mut run = RunReport::new("catalog", &config);

    let mut homs = 0usize;
    let mut injective = 0usize;
    let mut certificates = 0usize;
    let mut oracle_mismatches = 0usize;
    let mut gamma_failures = 0usize;
    let mut equivariant_failures = 0usize;
    let mut moore_failures = 0usize;
    let mut agreement_failures = 0usize;
    let mut normal_count = 0usize;

    for source in &groups {
        for target in &groups {
            for f in enumerate_homs(&source.group, &target.group) {
                homs += 1;
                let decision = decide_normal(&f, &budget)
                    .map_err(|e| CliError::Usage(format!("search aborted: {e}")))?;
                if decision.is_normal() {
                    normal_count += 1;
                }
                if f.is_injective() {
                    injective += 1;
                    if decision.is_normal() != image_normal(&f) {
                        oracle_mismatches += 1;
                        run.witness(format!(
                            "oracle mismatch on {} -> {} (map {:?})",
                            source.name,
                            target.name,
                            f.map()
                        ));
                    }
                }
                let Some(cm) = decision.certificate else {
                    continue;
                };
                certificates += 1;
                let gamma = gamma_unchecked(&cm, levels);
                let verification = verify_simplicial_group(&gamma);
                if !verification.is_ok() {
                    gamma_failures += 1;
                    run.witness(format!(
                        "gamma verification failed on {} -> {}: {}",
                        source.name,
                        target.name,
                        verification.violations[0]
                    ));
                }
                let bar = bar_of_hom(cm.boundary(), levels);
                let equivariance = equivariant_iso_check(&gamma, &bar);
                if !equivariance.is_ok() {
                    equivariant_failures += 1;
                    run.witness(format!(
                        "equivariant comparison failed on {} -> {}: {}",
                        source.name,
                        target.name,
                        equivariance.violations[0]
                    ));
                }
                if !moore_matches(&gamma, &cm) {
                    moore_failures += 1;
                    run.witness(format!(
                        "moore homotopy mismatch on {} -> {} (map {:?})",
                        source.name,
                        target.name,
                        cm.boundary().map()
                    ));
                }
                let agreement = canonical_action_agreement_on(&gamma, &bar);
                if !agreement.is_ok() {
                    agreement_failures += 1;
                    run.witness(format!(
                        "canonical actions disagree on {} -> {}: {}",
                        source.name,
                        target.name,
                        agreement.mismatches[0]
                    ));
                }
            }
        }
    }

    run.verdict(
        "oracle equivalence on injective maps",
        oracle_mismatches == 0,
        format!("{injective} injective of {homs} homomorphisms, {oracle_mismatches} mismatch(es)"),
    );
    run.verdict(
        "simplicial group verification",
        gamma_failures == 0,
        format!("{certificates} certificate(s), {gamma_failures} failure(s)"),
    );
    run.verdict(
        "equivariant isomorphism with the bar complex",
        equivariant_failures == 0,
        format!("{equivariant_failures} failure(s)"),
    );
    run.verdict(
        "moore homotopy matches kernel and cokernel",
        moore_failures == 0,
        format!("{moore_failures} failure(s)"),
    );
    run.verdict(
        "canonical action agreement",
        agreement_failures == 0,
        format!("{agreement_failures} failure(s)"),
    );
    if abelian_only {
        run.verdict(
            "normality on abelian maps",
            normal_count == homs,
            format!("{normal_count} of {homs} maps normal"),
        );
    }

    let pass = run.all_pass();
    run.finish(output.format == Format::Json);
    if output.format == Format::Text {
        run.print_text();
        println!(
            "checked {homs} homomorphism(s) between {} group(s); {certificates} certificate(s)",
            groups.len()
        );
    }
    if let Some(path) = &output.out {
        crate::write_json(path, &run)?;
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn moore_matches(
    gamma: &homnorm::crossed::TruncatedSimplicialGroup,
    cm: &homnorm::crossed::CrossedModule,
) -> bool {
    let Ok((coker, _)) = quotient_by_image(cm.boundary()) else {
        return false;
    };
    let (ker, _) = kernel(cm.boundary());
    let Ok(pi0) = moore_homotopy(gamma, 0) else {
        return false;
    };
    let Ok(pi1) = moore_homotopy(gamma, 1) else {
        return false;
    };
    if is_isomorphic(&pi0, &coker).is_none() || is_isomorphic(&pi1, &ker).is_none() {
        return false;
    }
    if gamma.truncation() >= 4 {
        let Ok(pi2) = moore_homotopy(gamma, 2) else {
            return false;
        };
        if pi2.order() != 1 {
            return false;
        }
    }
    true
}
