//! Config-driven sweeps that write deterministic CSV files.
//!
//! A config is a flat TOML document; unknown keys are rejected. Work items
//! run on the current rayon pool and are sorted before anything is written,
//! so the output does not depend on the number of threads.

use rayon::prelude::*;
use serde::Deserialize;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::casimir::{casimir_force, force_prediction_for, hellmann_feynman_estimate, potential_scan_profile, ForceForm};
use crate::entanglement::{cft_entropy_deformed, cft_entropy_flat, cft_entropy_rainbow, cft_entropy_rindler};
use crate::entanglement::{compare_with_cft, entropy_profile};
use crate::error::{Error, Result};
use crate::fit::{fit_curved_cardy, fit_flat_cardy, CardyModel, CardyPoint, FitResult};
use crate::metric::{build_profile, MetricKind, MetricSpec};
use crate::tridiag::{eigenvalues, HoppingMatrix};
use crate::vacuum::{first_order_energy, ground_state_energy, Vacuum};

/// What a run computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Spectrum,
    EnergySweep,
    EntropyProfile,
    PotentialScan,
    ForceSweep,
    Fit,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Spectrum => "spectrum",
            ExperimentKind::EnergySweep => "energy_sweep",
            ExperimentKind::EntropyProfile => "entropy_profile",
            ExperimentKind::PotentialScan => "potential_scan",
            ExperimentKind::ForceSweep => "force_sweep",
            ExperimentKind::Fit => "fit",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "spectrum" => ExperimentKind::Spectrum,
            "energy_sweep" | "energy" => ExperimentKind::EnergySweep,
            "entropy_profile" | "entropy" => ExperimentKind::EntropyProfile,
            "potential_scan" | "potential" => ExperimentKind::PotentialScan,
            "force_sweep" | "force" => ExperimentKind::ForceSweep,
            "fit" => ExperimentKind::Fit,
            other => return Err(Error::Config(format!("experiment: unknown kind {other:?}"))),
        })
    }
}

/// CFT form compared against exact entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CftForm {
    /// Deformed coordinates of the realized profile (the general case).
    Deformed,
    Flat,
    /// Continuum closed form of the rainbow family.
    Rainbow,
    /// Strong-acceleration closed form of the Rindler family.
    Rindler,
}

impl FromStr for CftForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "deformed" => CftForm::Deformed,
            "flat" => CftForm::Flat,
            "rainbow" => CftForm::Rainbow,
            "rindler" => CftForm::Rindler,
            other => return Err(Error::Config(format!("cft_form: unknown form {other:?}"))),
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: Option<String>,
    metric: Option<String>,
    #[serde(rename = "J0")]
    j0: Option<f64>,
    a: Option<f64>,
    #[serde(rename = "A")]
    amplitude: Option<f64>,
    k: Option<f64>,
    h: Option<f64>,
    #[serde(rename = "N_list")]
    n_list: Option<Vec<i64>>,
    /// `[first, last, step]`, inclusive.
    #[serde(rename = "N_range")]
    n_range: Option<[i64; 3]>,
    gamma_list: Option<Vec<f64>>,
    output_path: Option<PathBuf>,
    input_path: Option<PathBuf>,
    c0: Option<f64>,
    #[serde(rename = "cB")]
    cb: Option<f64>,
    #[serde(rename = "cvF")]
    cvf: Option<f64>,
    cft_form: Option<String>,
    subleading: Option<bool>,
}

/// A validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Option<ExperimentKind>,
    pub metric: Option<MetricSpec>,
    pub n_list: Vec<usize>,
    pub gamma_list: Vec<f64>,
    pub output_path: Option<PathBuf>,
    pub input_path: Option<PathBuf>,
    /// Constants used by force predictions; free-fermion values by default.
    pub constants: FitResult,
    pub cft_form: CftForm,
    /// Adds a `1/L²` column to the Cardy fits.
    pub subleading: bool,
}

fn metric_from(raw: &RawConfig) -> Result<Option<MetricSpec>> {
    let Some(name) = raw.metric.as_deref() else {
        for (key, set) in [("J0", raw.j0.is_some()), ("a", raw.a.is_some()), ("A", raw.amplitude.is_some())]
            .into_iter()
            .chain([("k", raw.k.is_some()), ("h", raw.h.is_some())])
        {
            if set {
                return Err(Error::Config(format!("{key} given without a metric")));
            }
        }
        return Ok(None);
    };
    let kind = MetricKind::from_str(name).map_err(|_| Error::Config(format!("metric: unknown family {name:?}")))?;
    let allowed: &[&str] = match kind {
        MetricKind::Minkowski => &[],
        MetricKind::Rindler => &["a"],
        MetricKind::Sine | MetricKind::ModulatedSine => &["A", "k"],
        MetricKind::Rainbow => &["h"],
    };
    let given = [("a", raw.a), ("A", raw.amplitude), ("k", raw.k), ("h", raw.h)];
    for (key, value) in given {
        if value.is_some() && !allowed.contains(&key) {
            return Err(Error::Config(format!("{key} is not a parameter of the {kind} metric")));
        }
    }
    let need = |key: &str, value: Option<f64>| {
        value.ok_or_else(|| Error::Config(format!("{key} is required for the {kind} metric")))
    };
    let j0 = raw.j0.unwrap_or(1.0);
    let spec = match kind {
        MetricKind::Minkowski => MetricSpec::minkowski(j0),
        MetricKind::Rindler => MetricSpec::rindler(j0, need("a", raw.a)?),
        MetricKind::Sine => MetricSpec::sine(j0, need("A", raw.amplitude)?, need("k", raw.k)?),
        MetricKind::ModulatedSine => MetricSpec::modulated_sine(j0, need("A", raw.amplitude)?, need("k", raw.k)?),
        MetricKind::Rainbow => MetricSpec::rainbow(j0, need("h", raw.h)?),
    };
    spec.map(Some).map_err(|e| match e {
        Error::InvalidMetric(msg) => Error::Config(msg),
        other => other,
    })
}

fn sizes_from(raw: &RawConfig) -> Result<Vec<usize>> {
    let list: Vec<i64> = match (&raw.n_list, raw.n_range) {
        (Some(_), Some(_)) => return Err(Error::Config("N_list and N_range are mutually exclusive".into())),
        (Some(list), None) => list.clone(),
        (None, Some([first, last, step])) => {
            if step <= 0 || last < first {
                return Err(Error::Config(format!("N_range: [{first}, {last}, {step}] is empty")));
            }
            (first..=last).step_by(step as usize).collect()
        }
        (None, None) => Vec::new(),
    };
    let field = if raw.n_range.is_some() { "N_range" } else { "N_list" };
    for &n in &list {
        if n < 2 {
            return Err(Error::Config(format!("{field}: {n} is too small (need at least 2 sites)")));
        }
        if n % 2 != 0 {
            return Err(Error::Config(format!("{field}: {n} is odd (half filling needs even N)")));
        }
    }
    if list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!("{field} must be strictly increasing")));
    }
    Ok(list.into_iter().map(|n| n as usize).collect())
}

/// Parses and validates a config document.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
    let experiment = raw.experiment.as_deref().map(ExperimentKind::from_str).transpose()?;
    let metric = metric_from(&raw)?;
    let n_list = sizes_from(&raw)?;
    let gamma_list = raw.gamma_list.clone().unwrap_or_default();
    if let Some(&g) = gamma_list.iter().find(|&&g| !(g > 0.0 && g <= 1.0)) {
        return Err(Error::Config(format!("gamma_list: {g} is outside (0, 1]")));
    }
    let mut constants = FitResult::free_fermion();
    constants.c0 = raw.c0.unwrap_or(constants.c0);
    constants.cb = raw.cb.unwrap_or(constants.cb);
    constants.cvf = raw.cvf.unwrap_or(constants.cvf);
    let cft_form = raw.cft_form.as_deref().map(CftForm::from_str).transpose()?.unwrap_or(CftForm::Deformed);
    Ok(ExperimentConfig {
        experiment,
        metric,
        n_list,
        gamma_list,
        output_path: raw.output_path,
        input_path: raw.input_path,
        constants,
        cft_form,
        subleading: raw.subleading.unwrap_or(false),
    })
}

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Fixed-width float format: 12 significant digits in scientific notation.
/// Negative zero is printed as zero.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// A finished table: header plus rows of preformatted fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }
}

/// Result of one run: a CSV table or a `key = value` report.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Table(Table),
    Report(String),
}

impl Output {
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        match self {
            Output::Table(t) => t.to_csv(),
            Output::Report(r) => Ok(r.clone().into_bytes()),
        }
    }
}

impl ExperimentConfig {
    fn metric(&self) -> Result<&MetricSpec> {
        self.metric.as_ref().ok_or_else(|| Error::Config("metric is required".into()))
    }

    fn sizes(&self, min: usize) -> Result<&[usize]> {
        if self.n_list.is_empty() {
            return Err(Error::Config("N_list is required".into()));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < min) {
            return Err(Error::Config(format!("N_list: {n} is below the minimum {min} for this experiment")));
        }
        Ok(&self.n_list)
    }

    fn model(&self) -> CardyModel {
        if self.subleading {
            CardyModel::WithSubleading
        } else {
            CardyModel::Leading
        }
    }
}

fn int(n: usize) -> String {
    n.to_string()
}

fn spectrum_table(cfg: &ExperimentConfig) -> Result<Table> {
    let spec = cfg.metric()?;
    let blocks = cfg
        .sizes(2)?
        .par_iter()
        .map(|&n| {
            let profile = build_profile(spec, n)?;
            let eps = eigenvalues(&HoppingMatrix::from_profile(&profile))?;
            Ok(eps
                .iter()
                .enumerate()
                .map(|(k, &e)| vec![int(n), int(k + 1), format_float(e)])
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { header: vec!["N", "k", "epsilon"], rows: blocks.concat() })
}

fn energy_table(cfg: &ExperimentConfig) -> Result<Table> {
    let spec = cfg.metric()?;
    let rows = cfg
        .sizes(2)?
        .par_iter()
        .map(|&n| {
            let profile = build_profile(spec, n)?;
            let energy = ground_state_energy(&profile)?;
            let bulk = first_order_energy(&profile);
            Ok(vec![
                int(n),
                format_float(energy),
                format_float(bulk),
                format_float((energy - bulk) / energy.abs()),
                format_float(profile.sum()),
                format_float(profile.first()),
                format_float(profile.last()),
                format_float(profile.deformed_length()),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        header: vec!["N", "E_N", "E_bulk", "relative_deviation", "S_N", "J_1", "J_last", "Ntilde"],
        rows,
    })
}

fn entropy_table(cfg: &ExperimentConfig) -> Result<Table> {
    let spec = cfg.metric()?;
    let form = cfg.cft_form;
    match (form, spec.kind()) {
        (CftForm::Rainbow, MetricKind::Rainbow) | (CftForm::Rindler, MetricKind::Rindler) => {}
        (CftForm::Rainbow | CftForm::Rindler, kind) => {
            return Err(Error::Config(format!("cft_form does not apply to the {kind} metric")))
        }
        _ => {}
    }
    let blocks = cfg
        .sizes(4)?
        .par_iter()
        .map(|&n| {
            let profile = build_profile(spec, n)?;
            let exact = entropy_profile(&Vacuum::solve(&profile)?.correlations)?;
            let cft: Vec<f64> = (1..n)
                .map(|ell| match (form, spec) {
                    (CftForm::Flat, _) => Ok(cft_entropy_flat(n, ell, 1.0)),
                    (CftForm::Rainbow, MetricSpec::Rainbow { h, .. }) => Ok(cft_entropy_rainbow(n, ell, *h, 1.0)),
                    (CftForm::Rindler, _) => Ok(cft_entropy_rindler(n, ell, 1.0)),
                    _ => cft_entropy_deformed(&profile, ell, 1.0),
                })
                .collect::<Result<_>>()?;
            let cmp = compare_with_cft(&exact, 1..=n - 1, |ell| cft[ell - 1]);
            Ok(cmp
                .rows
                .iter()
                .map(|r| {
                    vec![
                        int(n),
                        int(r.ell),
                        format_float(r.exact),
                        format_float(r.cft + cmp.offset),
                        format_float(r.residual),
                    ]
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { header: vec!["N", "ell", "S_exact", "S_cft", "residual"], rows: blocks.concat() })
}

fn potential_table(cfg: &ExperimentConfig) -> Result<Table> {
    let spec = cfg.metric()?;
    if cfg.gamma_list.is_empty() {
        return Err(Error::Config("gamma_list is required for potential_scan".into()));
    }
    let mut gammas = cfg.gamma_list.clone();
    gammas.sort_by(f64::total_cmp);
    gammas.dedup();
    let jobs: Vec<(usize, f64)> = cfg.sizes(2)?.iter().flat_map(|&n| gammas.iter().map(move |&g| (n, g))).collect();
    let blocks = jobs
        .par_iter()
        .map(|&(n, gamma)| {
            let profile = build_profile(spec, n)?;
            let vacuum = Vacuum::solve(&profile)?;
            let scan = potential_scan_profile(&profile, gamma)?;
            (1..n)
                .map(|p| {
                    Ok(vec![
                        int(n),
                        format_float(gamma),
                        int(p),
                        format_float(scan.get(p)),
                        format_float(hellmann_feynman_estimate(&profile, &vacuum.correlations, p, gamma)?),
                        format_float(profile.hopping(p)),
                    ])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { header: vec!["N", "gamma", "p", "V", "V_first_order", "J_p"], rows: blocks.concat() })
}

fn force_table(cfg: &ExperimentConfig, form: ForceForm) -> Result<Table> {
    let spec = cfg.metric()?;
    let constants = &cfg.constants;
    let rows = cfg
        .sizes(6)?
        .par_iter()
        .map(|&n| {
            let rec = casimir_force(spec, n)?;
            let profile = build_profile(spec, n)?;
            let smooth = force_prediction_for(&profile, spec, constants, ForceForm::Smooth);
            let weak = force_prediction_for(&profile, spec, constants, ForceForm::WeakDeformation);
            let selected = if form == ForceForm::Smooth { smooth } else { weak };
            Ok(vec![
                int(n),
                format_float(rec.energy),
                format_float(rec.energy_shorter),
                format_float(rec.force),
                format_float(rec.force + constants.c0),
                format_float(smooth),
                format_float(weak),
                format_float(rec.force - selected),
                format_float(rec.edge_hopping),
                format_float(rec.log_derivative),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    // the prediction columns keep their established interface names
    Ok(Table {
        header: vec![
            "N",
            "E_N",
            "E_N_minus_2",
            "F_N",
            "F_plus_c0",
            "F_pred_eq19",
            "F_pred_eq20",
            "residual",
            "J_N",
            "dlogJ",
        ],
        rows,
    })
}

/// Energies read back from an `energy_sweep` table.
fn read_energy_sweep(path: &Path) -> Result<Vec<CardyPoint>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let header = reader.headers().map_err(|e| Error::Io(e.to_string()))?.clone();
    let column = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Config(format!("input_path: column {name} is missing")))
    };
    let cols = [column("N")?, column("E_N")?, column("S_N")?, column("J_1")?, column("J_last")?, column("Ntilde")?];
    let mut points = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Io(e.to_string()))?;
        let bad = |c: usize| Error::Config(format!("input_path: row {}: cannot parse {:?}", line + 2, &record[c]));
        let n: usize = record[cols[0]].trim().parse().map_err(|_| bad(cols[0]))?;
        let mut v = [0.0; 5];
        for (slot, &c) in v.iter_mut().zip(&cols[1..]) {
            *slot = record[c].trim().parse().map_err(|_| bad(c))?;
        }
        points.push(CardyPoint {
            n,
            energy: v[0],
            hopping_sum: v[1],
            edge_mean: 0.5 * (v[2] + v[3]),
            deformed_length: v[4],
        });
    }
    points.sort_by_key(|p| p.n);
    Ok(points)
}

/// Flat and curved Cardy fits of an energy sweep, as `key = value` lines.
pub fn fit_report(points: &[CardyPoint], model: CardyModel) -> Result<String> {
    let even: Vec<CardyPoint> = points.iter().copied().filter(|p| p.n % 2 == 0).collect();
    let flat_input: Vec<(usize, f64)> = even.iter().map(|p| (p.n, p.energy)).collect();
    let mut report = String::new();
    let _ = writeln!(report, "model = {}", if model == CardyModel::Leading { "leading" } else { "subleading" });
    report.push_str(&fit_flat_cardy(&flat_input, model)?.report("flat"));
    report.push_str(&fit_curved_cardy(&even, model)?.report("curved"));
    Ok(report)
}

fn fit_output(cfg: &ExperimentConfig) -> Result<String> {
    let path = cfg
        .input_path
        .as_deref()
        .ok_or_else(|| Error::Config("input_path is required for fit".into()))?;
    fit_report(&read_energy_sweep(path)?, cfg.model())
}

/// Runs `kind` on the current rayon pool. `form` selects the prediction the
/// force table's `residual` column is taken against.
pub fn run_experiment(cfg: &ExperimentConfig, kind: ExperimentKind, form: ForceForm) -> Result<Output> {
    if let Some(declared) = cfg.experiment {
        if declared != kind {
            return Err(Error::Config(format!(
                "experiment: config declares {} but {} was requested",
                declared.name(),
                kind.name()
            )));
        }
    }
    Ok(match kind {
        ExperimentKind::Spectrum => Output::Table(spectrum_table(cfg)?),
        ExperimentKind::EnergySweep => Output::Table(energy_table(cfg)?),
        ExperimentKind::EntropyProfile => Output::Table(entropy_table(cfg)?),
        ExperimentKind::PotentialScan => Output::Table(potential_table(cfg)?),
        ExperimentKind::ForceSweep => Output::Table(force_table(cfg, form)?),
        ExperimentKind::Fit => Output::Report(fit_output(cfg)?),
    })
}

/// Writes `bytes` through a temporary sibling file and a rename, so a
/// failed run never leaves a truncated `path` behind.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("{}: not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let cfg = parse_config("metric = \"minkowski\"\nN_list = [100, 102]\n").unwrap();
        assert_eq!(cfg.metric, Some(MetricSpec::Minkowski { j0: 1.0 }));
        assert_eq!(cfg.n_list, vec![100, 102]);
        assert!(cfg.gamma_list.is_empty());
        assert_eq!(cfg.cft_form, CftForm::Deformed);
        assert_eq!(cfg.constants, FitResult::free_fermion());
    }

    #[test]
    fn validation_names_the_field() {
        let err = parse_config("metric = \"rainbow\"\nh = -0.1\nN_list = [10]\n").unwrap_err();
        assert!(err.to_string().contains("h must be nonnegative"), "{err}");
        let err = parse_config("metric = \"minkowski\"\nN_list = [100, 101]\n").unwrap_err();
        assert!(err.to_string().contains("101"), "{err}");
        let err = parse_config("metric = \"minkowski\"\nN_list = [100, 100]\n").unwrap_err();
        assert!(err.to_string().contains("increasing"), "{err}");
        let err = parse_config("metric = \"rindler\"\nN_list = [10]\n").unwrap_err();
        assert!(err.to_string().contains("a is required"), "{err}");
        let err = parse_config("metric = \"minkowski\"\nh = 0.1\n").unwrap_err();
        assert!(err.to_string().contains("h is not a parameter"), "{err}");
        let err = parse_config("gamma_list = [0.0]\n").unwrap_err();
        assert!(err.to_string().contains("gamma_list"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected_with_position() {
        let err = parse_config("metric = \"minkowski\"\nN_lst = [10]\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("N_lst") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn n_range_expands() {
        let cfg = parse_config("N_range = [100, 110, 2]\n").unwrap();
        assert_eq!(cfg.n_list, vec![100, 102, 104, 106, 108, 110]);
        assert!(parse_config("N_range = [100, 110, 3]\n").is_err());
    }

    #[test]
    fn floats_have_twelve_significant_digits() {
        assert_eq!(format_float(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(format_float(-0.0), "0.00000000000e0");
        assert_eq!(format_float(-1.5e-7), "-1.50000000000e-7");
    }

    #[test]
    fn declared_experiment_must_match() {
        let cfg = parse_config("experiment = \"spectrum\"\nmetric = \"minkowski\"\nN_list = [4]\n").unwrap();
        assert!(run_experiment(&cfg, ExperimentKind::EnergySweep, ForceForm::WeakDeformation).is_err());
        let out = run_experiment(&cfg, ExperimentKind::Spectrum, ForceForm::WeakDeformation).unwrap();
        let text = String::from_utf8(out.to_bytes().unwrap()).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("N,k,epsilon\n4,1,-1.61803398875e0\n"));
    }

    #[test]
    fn parallel_and_serial_agree() {
        let cfg = parse_config("metric = \"sine\"\nA = 0.3\nk = 0.1\nN_list = [8, 20, 40, 60]\n").unwrap();
        let run = || {
            run_experiment(&cfg, ExperimentKind::ForceSweep, ForceForm::Smooth)
                .unwrap()
                .to_bytes()
                .unwrap()
        };
        let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(run);
        let parallel = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(run);
        assert_eq!(serial, parallel);
    }

    #[test]
    fn atomic_write_leaves_no_temporary() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomically(&path, b"x\n").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"x\n");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        assert!(write_atomically(&dir.path().join("missing/out.csv"), b"x").is_err());
    }
}
