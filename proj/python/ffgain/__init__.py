"""Compact-cluster three-antenna gain toolkit.

Far-field distance criteria, phase-deviation budgeting, the three-antenna
absolute-gain solve, repetition statistics, a 1/d extrapolation cross-check,
and a deterministic dual-aperture coupling simulator. The heavy lifting lives
in the C++ extension; this package re-exports its surface.
"""

from ._ffgain import (
    ApertureAntenna,
    Campaign,
    Cluster,
    Config,
    CouplingModel,
    FrequencyGrid,
    GainSolution,
    ParseError,
    PerAntennaGain,
    SweepTrace,
    Table,
    ValidationError,
    analytic_gain,
    aperture_coupling,
    approximation_ratio,
    averaged_path_loss_db,
    compare_table,
    coupled_gain_product_db,
    d_ff_fourth_order,
    d_ff_mil,
    d_ff_revised,
    d_ff_uno,
    d_fraunhofer,
    db_from_linear_mag,
    db_from_linear_power,
    default_config_json,
    delta_phi_max,
    emit_campaign,
    emit_trace,
    extrapolate_sweep,
    ffdist_table,
    friis_s21,
    linear_mag_from_db,
    linear_power_from_db,
    load_config,
    load_or_synthesize_campaign,
    load_or_synthesize_sweep,
    parse_campaign,
    parse_quantity,
    parse_trace,
    path_difference,
    path_loss_db,
    phase_budget,
    phase_error,
    phase_total,
    plan_table,
    report_table,
    solve_clusters,
    solve_table,
    solve_three_antenna,
    stats_table,
    synthesize_campaign,
    vna_csv_to_trace,
    wavelength,
)

__all__ = [
    "ApertureAntenna",
    "Campaign",
    "Cluster",
    "Config",
    "CouplingModel",
    "FrequencyGrid",
    "GainSolution",
    "ParseError",
    "PerAntennaGain",
    "SweepTrace",
    "Table",
    "ValidationError",
    "analytic_gain",
    "aperture_coupling",
    "approximation_ratio",
    "averaged_path_loss_db",
    "compare_table",
    "coupled_gain_product_db",
    "d_ff_fourth_order",
    "d_ff_mil",
    "d_ff_revised",
    "d_ff_uno",
    "d_fraunhofer",
    "db_from_linear_mag",
    "db_from_linear_power",
    "default_config_json",
    "delta_phi_max",
    "emit_campaign",
    "emit_trace",
    "extrapolate_sweep",
    "ffdist_table",
    "friis_s21",
    "linear_mag_from_db",
    "linear_power_from_db",
    "load_config",
    "load_or_synthesize_campaign",
    "load_or_synthesize_sweep",
    "parse_campaign",
    "parse_quantity",
    "parse_trace",
    "path_difference",
    "path_loss_db",
    "phase_budget",
    "phase_error",
    "phase_total",
    "plan_table",
    "report_table",
    "solve_clusters",
    "solve_table",
    "solve_three_antenna",
    "stats_table",
    "synthesize_campaign",
    "vna_csv_to_trace",
    "wavelength",
]

__version__ = "1.0.0"
