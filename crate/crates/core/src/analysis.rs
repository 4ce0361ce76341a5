//! End-to-end analysis of one channel: canonical form, CPTP diagnostics,
//! Green function, Gaussianity, angles, dilation and degradability.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::{self, ChannelName, Params};
use crate::degradability::{
    certify_with_tol, classify_by_angles, dilation_from_angles, weakly_complementary, DegradabilityVerdict,
    PredictedKind, Prediction, VerdictKind, CERTIFICATE_TOL,
};
use crate::error::{Error, Result};
use crate::grassmann::CoefficientTable;
use crate::green::{
    angles_from_gaussian, detect_gaussian, gaussian_equivalent, green_from_canonical, AngleParams, AxisPermutation,
    GaussianParams,
};
use crate::qubit::{require_cptp, CanonicalParams, CptpReport, QubitChannel, ROUND_TRIP_TOL};
use crate::spec::{ChannelDocument, ChannelSpec, SCHEMA_VERSION};

/// Largest ptm mismatch accepted between a dilation and its channel.
pub const DILATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalysisOptions {
    /// Residual bound for degradability witnesses.
    pub certificate_tol: f64,
    /// Tolerance used when matching channels against catalog families.
    pub round_trip_tol: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            certificate_tol: CERTIFICATE_TOL,
            round_trip_tol: ROUND_TRIP_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreenSummary {
    pub pretty: String,
    pub coefficients: CoefficientTable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DilationSummary {
    /// Real 4×4 unitary, rows and columns indexed `2·system + environment`.
    pub unitary: [[f64; 4]; 4],
    pub env_q: f64,
    pub env_purity: f64,
    pub env_pure: bool,
    pub unitarity_defect: f64,
    /// `max |ptm(Tr_E dilation) − ptm(channel)|`.
    pub reproduction_residual: f64,
    pub complementary: QubitChannel,
}

/// Everything derived from a Gaussian Green function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianAnalysis {
    pub params: GaussianParams,
    pub angles: Option<AngleParams>,
    pub prediction: Option<Prediction>,
    pub dilation: Option<DilationSummary>,
    pub verdict: Option<DegradabilityVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedRef {
    pub name: ChannelName,
    pub params: Params,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalentAnalysis {
    pub permutation: AxisPermutation,
    pub permutation_display: String,
    pub channel: ChannelDocument,
    pub identified: Option<NamedRef>,
    pub analysis: GaussianAnalysis,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedInfo {
    pub name: ChannelName,
    pub params: Params,
    pub claimed_verdict: Option<PredictedKind>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub source: ChannelSpec,
    /// Canonical form, in the input format.
    pub channel: ChannelDocument,
    pub named: Option<NamedInfo>,
    pub cptp: CptpReport,
    pub green: GreenSummary,
    pub is_gaussian: bool,
    pub gaussian: Option<GaussianAnalysis>,
    pub equivalent: Option<EquivalentAnalysis>,
    pub notes: Vec<String>,
    pub options: AnalysisOptions,
}

impl AnalysisReport {
    pub fn canonical(&self) -> CanonicalParams {
        match self.channel.spec {
            ChannelSpec::Canonical { t, lambda } => CanonicalParams::new(t, lambda),
            _ => unreachable!("report channel block is canonical"),
        }
    }

    /// Verdict for the channel itself, or for its Gaussian equivalent.
    pub fn verdict(&self) -> Option<&DegradabilityVerdict> {
        self.gaussian
            .as_ref()
            .and_then(|g| g.verdict.as_ref())
            .or_else(|| self.equivalent.as_ref().and_then(|e| e.analysis.verdict.as_ref()))
    }
}

fn gaussian_analysis(ch: &QubitChannel, gp: GaussianParams, opts: &AnalysisOptions, notes: &mut Vec<String>) -> GaussianAnalysis {
    let mut out = GaussianAnalysis {
        params: gp,
        angles: None,
        prediction: None,
        dilation: None,
        verdict: None,
    };
    let angles = match angles_from_gaussian(&gp) {
        Ok(a) => a,
        Err(e) => {
            notes.push(format!("no angle parametrization: {e}"));
            return out;
        }
    };
    out.angles = Some(angles);
    let prediction = classify_by_angles(&angles);
    out.prediction = Some(prediction);

    let dilation = dilation_from_angles(&angles);
    let system = dilation.system_channel();
    let reproduction_residual = (system.ptm() - ch.ptm()).abs().max();
    let comp = weakly_complementary(&dilation);
    out.dilation = Some(DilationSummary {
        unitary: std::array::from_fn(|i| std::array::from_fn(|j| dilation.unitary[(i, j)].re)),
        env_q: dilation.env_state.p(),
        env_purity: dilation.env_purity(),
        env_pure: angles.is_pure_environment(),
        unitarity_defect: dilation.unitarity_defect(),
        reproduction_residual,
        complementary: comp.clone(),
    });
    if reproduction_residual > DILATION_TOL {
        notes.push(format!(
            "dilation reproduces the channel only to {reproduction_residual:.3e}; no certificate attempted"
        ));
        return out;
    }

    let verdict = certify_with_tol(ch, &comp, opts.certificate_tol);
    match prediction.kind {
        PredictedKind::Boundary => notes.push(
            "cos2φ = 0: the classification ratio has a pole here; both certificates were attempted numerically"
                .to_string(),
        ),
        PredictedKind::NullCapacityClaimed => notes.push(format!(
            "mixed environment with cos2θ/cos2φ < 0: the Gaussian criterion predicts null quantum capacity \
             (claim reported, capacity not computed); numeric certificate: {:?}",
            verdict.kind
        )),
        _ => {}
    }
    out.verdict = Some(verdict);
    out
}

/// Analysis of an arbitrary channel spec.
pub fn analyze_spec(spec: &ChannelSpec, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    if !(opts.certificate_tol > 0.0 && opts.round_trip_tol > 0.0) {
        return Err(Error::Schema("tolerances must be positive".into()));
    }
    let ch = spec.to_channel()?;
    let params = ch.canonical_params()?;
    let cptp = require_cptp(&ch)?;
    let green = green_from_canonical(&params)?;
    let mut notes = Vec::new();

    let named = match spec {
        ChannelSpec::Named { name, params } => {
            let name: ChannelName = name.parse()?;
            let flags = catalog::parameter_flags(name, params);
            notes.extend(flags.iter().cloned());
            Some(NamedInfo {
                name,
                params: params.clone(),
                claimed_verdict: catalog::claimed_verdict(name, params)?,
                flags,
            })
        }
        _ => None,
    };

    let gaussian = detect_gaussian(&green).map(|gp| gaussian_analysis(&ch, gp, opts, &mut notes));
    let mut equivalent = None;
    if gaussian.is_none() {
        match gaussian_equivalent(&ch)? {
            Some((perm, eq_ch)) => {
                let eq_params = eq_ch.canonical_params()?;
                let eq_green = green_from_canonical(&eq_params)?;
                let gp = detect_gaussian(&eq_green).expect("equivalent channel is Gaussian");
                notes.push(format!(
                    "not Gaussian, but unitarily equivalent to a Gaussian channel by relabeling axes {perm}"
                ));
                equivalent = Some(EquivalentAnalysis {
                    permutation: perm,
                    permutation_display: perm.to_string(),
                    channel: ChannelSpec::canonical(&eq_params).to_document(),
                    identified: catalog::identify(&eq_params, opts.round_trip_tol)
                        .map(|(name, params)| NamedRef { name, params }),
                    analysis: gaussian_analysis(&eq_ch, gp, opts, &mut notes),
                });
            }
            None => notes.push(
                "Green function is not Gaussian and no permutation of the λs makes it Gaussian; \
                 the Gaussian degradability criterion does not apply, so no verdict is given"
                    .to_string(),
            ),
        }
    }

    if let (Some(info), Some(g)) = (&named, &gaussian) {
        if let (Some(claim), Some(v)) = (info.claimed_verdict, &g.verdict) {
            if !verdict_matches_claim(v.kind, claim) {
                notes.push(format!("certificate {:?} differs from the claimed {:?}", v.kind, claim));
            }
        }
    }

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        source: spec.clone(),
        channel: ChannelSpec::canonical(&params).to_document(),
        named,
        cptp,
        green: GreenSummary {
            pretty: green.to_string(),
            coefficients: CoefficientTable::from(&green.body),
        },
        is_gaussian: gaussian.is_some(),
        gaussian,
        equivalent,
        notes,
        options: *opts,
    })
}

/// Analysis of a catalog channel.
pub fn analyze(name: ChannelName, params: &Params) -> Result<AnalysisReport> {
    analyze_spec(&ChannelSpec::named(name, params.clone()), &AnalysisOptions::default())
}

/// Whether a numeric verdict is consistent with a claimed kind. A null
/// capacity claim is consistent with an anti-degradable certificate or
/// with no certificate at all.
pub fn verdict_matches_claim(kind: VerdictKind, claim: PredictedKind) -> bool {
    match claim {
        PredictedKind::WeaklyDegradable => kind == VerdictKind::WeaklyDegradable,
        PredictedKind::AntiDegradable => kind == VerdictKind::AntiDegradable,
        PredictedKind::NullCapacityClaimed => kind != VerdictKind::WeaklyDegradable,
        PredictedKind::Boundary => true,
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn render_gaussian(out: &mut String, g: &GaussianAnalysis, indent: &str) {
    let p = &g.params;
    let _ = writeln!(out, "{indent}a = {:.6}, b = {:.6}, c = {:.6}", p.a, p.b, p.c);
    if let Some(a) = &g.angles {
        let _ = writeln!(out, "{indent}θ = {:.6}, φ = {:.6}, q = {:.6}", a.theta, a.phi, a.q);
    }
    if let Some(pr) = &g.prediction {
        let ratio = pr.ratio.map_or("pole".to_string(), |r| format!("{r:.6}"));
        let _ = writeln!(out, "{indent}cos2θ/cos2φ = {ratio} → predicted {:?}", pr.kind);
    }
    if let Some(d) = &g.dilation {
        let _ = writeln!(
            out,
            "{indent}dilation: env q = {:.6} ({}), unitarity defect {:.1e}, reproduction residual {:.1e}",
            d.env_q,
            if d.env_pure { "pure" } else { "mixed" },
            d.unitarity_defect,
            d.reproduction_residual
        );
    }
    if let Some(v) = &g.verdict {
        let _ = writeln!(
            out,
            "{indent}verdict: {:?} (residual {:.1e}, min Choi eigenvalue {:.3e})",
            v.kind, v.residual, v.min_choi_eigenvalue
        );
        let _ = writeln!(
            out,
            "{indent}  degrading attempt: residual {:.1e}, min Choi eigenvalue {:.3e}",
            v.degrading.residual, v.degrading.min_choi_eigenvalue
        );
        let _ = writeln!(
            out,
            "{indent}  anti-degrading attempt: residual {:.1e}, min Choi eigenvalue {:.3e}",
            v.anti_degrading.residual, v.anti_degrading.min_choi_eigenvalue
        );
        if let Some(w) = &v.witness {
            for row in 0..4 {
                let r: Vec<f64> = (0..4).map(|j| w.ptm()[(row, j)]).collect();
                let _ = writeln!(out, "{indent}  witness ptm {}", fmt_vec(&r));
            }
        }
    }
}

/// Human-readable report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    if let Some(n) = &r.named {
        let params: Vec<String> = n.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "channel: {} ({})", n.name, params.join(", "));
    }
    let c = r.canonical();
    let _ = writeln!(out, "canonical: t = {}, λ = {}", fmt_vec(&c.t), fmt_vec(&c.lambda));
    let _ = writeln!(
        out,
        "CPTP: {} (min Choi eigenvalue {:.3e}, trace deviation {:.1e})",
        if r.cptp.is_cptp { "yes" } else { "no" },
        r.cptp.min_eigenvalue,
        r.cptp.trace_deviation
    );
    let _ = writeln!(out, "G(ζ, ξ) = {}", r.green.pretty);
    let _ = writeln!(out, "Gaussian: {}", if r.is_gaussian { "yes" } else { "no" });
    if let Some(g) = &r.gaussian {
        render_gaussian(&mut out, g, "  ");
    }
    if let Some(e) = &r.equivalent {
        let id = e.identified.as_ref().map_or(String::new(), |n| {
            let params: Vec<String> = n.params.iter().map(|(k, v)| format!("{k}={v:.6}")).collect();
            format!(" = {}({})", n.name, params.join(", "))
        });
        let _ = writeln!(out, "Gaussian equivalent: {}{id}", e.permutation_display);
        render_gaussian(&mut out, &e.analysis, "  ");
    } else if !r.is_gaussian {
        let _ = writeln!(out, "Gaussian equivalent: none");
    }
    for note in &r.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}
