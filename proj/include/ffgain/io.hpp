#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ffgain/types.hpp"

namespace ffgain::io {

enum class report_format { csv, aligned_table };
report_format report_format_from_string(const std::string& s);

// Simple column-oriented output table. CSV cells keep full numeric
// precision; the aligned form applies each column's display precision.
struct Table {
    struct Column {
        std::string header;
        int decimals = -1;  // -1 = full precision / verbatim strings
    };
    std::vector<Column> columns;
    std::vector<std::vector<std::string>> rows;  // pre-rendered CSV cells
    std::vector<std::vector<std::string>> display_rows;

    void add_column(const std::string& header, int decimals = -1);
    // Begins a new row; then call cell()/cell_text() once per column.
    void begin_row();
    void cell(double value);
    void cell(std::size_t value);
    void cell_text(const std::string& text);

    std::string to_csv() const;
    std::string to_aligned() const;
    std::string render(report_format f) const {
        return f == report_format::csv ? to_csv() : to_aligned();
    }
};

// Locale-independent float formatting. `shortest` round-trips exactly;
// `fixed` renders with the given decimals for display.
std::string format_double(double v);
std::string format_fixed(double v, int decimals);

// --- Trace / campaign text format -----------------------------------------
//
// Line-oriented, '#'-prefixed headers, whitespace-separated data rows sorted
// by (distance, frequency):
//
//   # ffgain-trace v1
//   # pair: PA,PB
//   # run: 0
//   # cluster: index=0 start_m=1 step_m=0.0002 count=151 offset_m=0
//   # grid: start_hz=145000000000 stop_hz=170000000000 count=21
//   # columns: distance_m frequency_hz s21_lin
//   1 145000000000 0.00012345…
//
// Magnitude column is `s21_lin` (exact round-trip) or `s21_db`; an optional
// fourth column `phase_rad` or `phase_deg` carries phase.

std::string emit_trace(const SweepTrace& trace, const Cluster& cluster);
SweepTrace parse_trace(std::string_view text);

// A campaign file is an antenna/grid preamble plus one trace block per
// (pair, cluster, run).
std::string emit_campaign(const Campaign& campaign);
Campaign parse_campaign(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Converter stub for two-column VNA exports "frequency_hz, s21_db" taken at
// one fixed distance. Requires a uniformly spaced frequency column.
SweepTrace vna_csv_to_trace(std::string_view text, const PairKey& pair,
                            double distance_m, int run_index = 0);

// Per-antenna gain/sigma listing of one solution.
Table report_table(const GainSolution& solution);
std::string emit_report(const GainSolution& solution, report_format format);

}  // namespace ffgain::io
