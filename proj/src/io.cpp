#include "ffgain/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ffgain/errors.hpp"

namespace ffgain::io {

namespace {

// --- low-level text helpers -------------------------------------------------

std::string to_chars_double(double v, std::chars_format fmt, int precision) {
    char buf[64];
    std::to_chars_result res =
        precision < 0 ? std::to_chars(buf, buf + sizeof(buf), v, fmt)
                      : std::to_chars(buf, buf + sizeof(buf), v, fmt, precision);
    return std::string(buf, res.ptr);
}

// 17 significant digits: enough that text -> double is bit-exact.
std::string format_full(double v) {
    if (std::isnan(v)) return "nan";
    return to_chars_double(v, std::chars_format::scientific, 16);
}

struct LineScanner {
    std::string_view text;
    std::size_t pos = 0;
    long line_no = 0;

    bool next(std::string_view& line) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return true;
    }
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

double parse_double_token(std::string_view token, long line_no) {
    double v = 0.0;
    if (token == "nan") return std::nan("");
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw parse_error("not a number: '" + std::string(token) + "'", line_no);
    }
    return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

// key=value fields of a header line.
std::map<std::string, std::string> parse_fields(std::string_view s, long line_no) {
    std::map<std::string, std::string> out;
    for (std::string_view token : split_ws(s)) {
        const std::size_t eq = token.find('=');
        if (eq == std::string_view::npos) {
            throw parse_error("expected key=value, got '" + std::string(token) + "'",
                              line_no);
        }
        out.emplace(std::string(token.substr(0, eq)), std::string(token.substr(eq + 1)));
    }
    return out;
}

const std::string& field(const std::map<std::string, std::string>& fields,
                         const std::string& key, long line_no) {
    auto it = fields.find(key);
    if (it == fields.end()) throw parse_error("missing field '" + key + "'", line_no);
    return it->second;
}

std::size_t parse_count(const std::string& text, long line_no) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw parse_error("not a count: '" + text + "'", line_no);
    }
    return v;
}

enum class mag_column { s21_lin, s21_db };
enum class phase_column { none, phase_rad, phase_deg };

struct TraceHeader {
    PairKey pair;
    int run = 0;
    std::size_t cluster_index = 0;
    Cluster cluster;
    FrequencyGrid grid;
    mag_column mag = mag_column::s21_lin;
    phase_column phase = phase_column::none;
};

// Parses one trace block starting at the scanner's current line (the line
// after the magic). Stops before the next "# ffgain-" magic line.
SweepTrace parse_trace_block(LineScanner& scanner, TraceHeader& header) {
    bool have_pair = false, have_cluster = false, have_grid = false, have_columns = false;
    std::string_view line;

    // Header lines.
    while (true) {
        const std::size_t save_pos = scanner.pos;
        const long save_line = scanner.line_no;
        if (!scanner.next(line)) throw parse_error("trace block has no data rows", scanner.line_no);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() != '#') {
            scanner.pos = save_pos;  // first data row; rewind
            scanner.line_no = save_line;
            break;
        }
        std::string_view body = trim(line.substr(1));
        const long ln = scanner.line_no;
        if (starts_with(body, "pair:")) {
            auto ids = split_ws(trim(body.substr(5)));
            std::string joined;
            for (auto id : ids) joined += std::string(id);
            const std::size_t comma = joined.find(',');
            if (comma == std::string::npos) throw parse_error("pair needs two ids 'A,B'", ln);
            header.pair = PairKey(joined.substr(0, comma), joined.substr(comma + 1));
            have_pair = true;
        } else if (starts_with(body, "run:")) {
            header.run = static_cast<int>(parse_double_token(trim(body.substr(4)), ln));
        } else if (starts_with(body, "cluster:")) {
            auto fields_map = parse_fields(body.substr(8), ln);
            const double start = parse_double_token(field(fields_map, "start_m", ln), ln);
            const double step = parse_double_token(field(fields_map, "step_m", ln), ln);
            const std::size_t count = parse_count(field(fields_map, "count", ln), ln);
            const double offset = parse_double_token(field(fields_map, "offset_m", ln), ln);
            if (auto it = fields_map.find("index"); it != fields_map.end()) {
                header.cluster_index = parse_count(it->second, ln);
            }
            try {
                header.cluster = Cluster(start, step, count, offset);
            } catch (const validation_error& e) {
                throw parse_error(e.what(), ln);
            }
            have_cluster = true;
        } else if (starts_with(body, "grid:")) {
            auto fields_map = parse_fields(body.substr(5), ln);
            try {
                header.grid = FrequencyGrid(
                    parse_double_token(field(fields_map, "start_hz", ln), ln),
                    parse_double_token(field(fields_map, "stop_hz", ln), ln),
                    parse_count(field(fields_map, "count", ln), ln));
            } catch (const validation_error& e) {
                throw parse_error(e.what(), ln);
            }
            have_grid = true;
        } else if (starts_with(body, "columns:")) {
            auto names = split_ws(trim(body.substr(8)));
            if (names.size() < 3 || names[0] != "distance_m" || names[1] != "frequency_hz") {
                throw parse_error("columns must start 'distance_m frequency_hz'", ln);
            }
            if (names[2] == "s21_lin") header.mag = mag_column::s21_lin;
            else if (names[2] == "s21_db") header.mag = mag_column::s21_db;
            else throw parse_error("unknown magnitude column '" + std::string(names[2]) + "'", ln);
            if (names.size() == 4) {
                if (names[3] == "phase_rad") header.phase = phase_column::phase_rad;
                else if (names[3] == "phase_deg") header.phase = phase_column::phase_deg;
                else throw parse_error("unknown phase column '" + std::string(names[3]) + "'", ln);
            } else if (names.size() > 4) {
                throw parse_error("too many columns", ln);
            }
            have_columns = true;
        } else {
            throw parse_error("unknown header '" + std::string(body) + "'", ln);
        }
    }
    if (!have_pair) throw parse_error("trace block missing '# pair:'", scanner.line_no);
    if (!have_cluster) throw parse_error("trace block missing '# cluster:'", scanner.line_no);
    if (!have_grid) throw parse_error("trace block missing '# grid:'", scanner.line_no);
    if (!have_columns) throw parse_error("trace block missing '# columns:'", scanner.line_no);

    const std::size_t n_m = header.cluster.count;
    const std::size_t n_f = header.grid.count;
    SweepTrace trace;
    trace.pair = header.pair;
    trace.run_index = header.run;
    trace.grid = header.grid;
    trace.distances.reserve(n_m);
    trace.s21.resize(n_m * n_f);
    if (header.phase != phase_column::none) trace.phase.resize(n_m * n_f);

    const std::size_t expected_tokens = header.phase == phase_column::none ? 3 : 4;
    std::size_t row = 0;
    while (row < n_m * n_f) {
        if (!scanner.next(line)) {
            throw parse_error("unexpected end of data: expected " +
                                  std::to_string(n_m * n_f) + " rows, got " +
                                  std::to_string(row),
                              scanner.line_no);
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '#') {
            throw parse_error("header line inside data block", scanner.line_no);
        }
        const auto tokens = split_ws(line);
        if (tokens.size() != expected_tokens) {
            throw parse_error("expected " + std::to_string(expected_tokens) +
                                  " columns, got " + std::to_string(tokens.size()),
                              scanner.line_no);
        }
        const long ln = scanner.line_no;
        const double distance = parse_double_token(tokens[0], ln);
        const double frequency = parse_double_token(tokens[1], ln);
        double mag = parse_double_token(tokens[2], ln);
        if (header.mag == mag_column::s21_db) mag = linear_mag_from_db(mag);

        const std::size_t m = row / n_f;
        const std::size_t f = row % n_f;
        if (f == 0) {
            if (!trace.distances.empty() && !(distance > trace.distances.back())) {
                throw parse_error("distances must be strictly increasing", ln);
            }
            trace.distances.push_back(distance);
        } else if (distance != trace.distances.back()) {
            throw parse_error("distance changes inside a frequency sweep", ln);
        }
        const double expect_f = header.grid.at(f);
        if (std::abs(frequency - expect_f) > 1e-6 * expect_f) {
            throw parse_error("frequency does not match the grid (expected " +
                                  format_double(expect_f) + ")",
                              ln);
        }
        if (!(mag >= 0.0) || !std::isfinite(mag)) {
            throw parse_error("magnitude must be finite and >= 0", ln);
        }
        trace.s21[m * n_f + f] = mag;
        if (header.phase != phase_column::none) {
            double ph = parse_double_token(tokens[3], ln);
            if (header.phase == phase_column::phase_deg) ph = radians_from_degrees(ph);
            trace.phase[m * n_f + f] = ph;
        }
        ++row;
    }
    trace.validate();
    return trace;
}

void emit_trace_block(std::string& out, const SweepTrace& trace, const Cluster& cluster,
                      std::size_t cluster_index) {
    out += "# ffgain-trace v1\n";
    out += "# pair: " + trace.pair.label() + "\n";
    out += "# run: " + std::to_string(trace.run_index) + "\n";
    out += "# cluster: index=" + std::to_string(cluster_index) +
           " start_m=" + format_double(cluster.start_distance) +
           " step_m=" + format_double(cluster.step) +
           " count=" + std::to_string(cluster.count) +
           " offset_m=" + format_double(cluster.pair_offset) + "\n";
    out += "# grid: start_hz=" + format_double(trace.grid.start_hz) +
           " stop_hz=" + format_double(trace.grid.stop_hz) +
           " count=" + std::to_string(trace.grid.count) + "\n";
    const bool with_phase = !trace.phase.empty();
    out += with_phase ? "# columns: distance_m frequency_hz s21_lin phase_rad\n"
                      : "# columns: distance_m frequency_hz s21_lin\n";
    const std::size_t n_f = trace.grid.count;
    for (std::size_t m = 0; m < trace.distances.size(); ++m) {
        const std::string dist = format_double(trace.distances[m]);
        for (std::size_t f = 0; f < n_f; ++f) {
            out += dist;
            out += ' ';
            out += format_double(trace.grid.at(f));
            out += ' ';
            out += format_full(trace.s21[m * n_f + f]);
            if (with_phase) {
                out += ' ';
                out += format_full(trace.phase[m * n_f + f]);
            }
            out += '\n';
        }
    }
}

}  // namespace

report_format report_format_from_string(const std::string& s) {
    if (s == "csv") return report_format::csv;
    if (s == "aligned" || s == "aligned_table") return report_format::aligned_table;
    throw validation_error("unknown format '" + s + "' (use csv or aligned)");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    return to_chars_double(v, std::chars_format::general, -1);
}

std::string format_fixed(double v, int decimals) {
    if (std::isnan(v)) return "nan";
    return to_chars_double(v, std::chars_format::fixed, decimals);
}

void Table::add_column(const std::string& header, int decimals) {
    columns.push_back({header, decimals});
}

void Table::begin_row() {
    rows.emplace_back();
    display_rows.emplace_back();
}

void Table::cell(double value) {
    // CSV keeps full precision; the aligned view applies display rounding.
    const int decimals = columns[rows.back().size()].decimals;
    rows.back().push_back(format_double(value));
    display_rows.back().push_back(decimals < 0 ? format_double(value)
                                               : format_fixed(value, decimals));
}

void Table::cell(std::size_t value) {
    rows.back().push_back(std::to_string(value));
    display_rows.back().push_back(std::to_string(value));
}

void Table::cell_text(const std::string& text) {
    rows.back().push_back(text);
    display_rows.back().push_back(text);
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out += columns[c].header;
        out += c + 1 < columns.size() ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            out += c + 1 < row.size() ? ',' : '\n';
        }
    }
    return out;
}

std::string Table::to_aligned() const {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].header.size();
    for (const auto& row : display_rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::string out;
    auto pad = [&](const std::string& text, std::size_t w, bool last) {
        out += text;
        if (!last) out.append(w - text.size() + 2, ' ');
    };
    for (std::size_t c = 0; c < columns.size(); ++c) {
        pad(columns[c].header, width[c], c + 1 == columns.size());
    }
    out += '\n';
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out.append(width[c], '-');
        if (c + 1 < columns.size()) out.append(2, ' ');
    }
    out += '\n';
    for (const auto& row : display_rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            pad(row[c], width[c], c + 1 == row.size());
        }
        out += '\n';
    }
    return out;
}

std::string emit_trace(const SweepTrace& trace, const Cluster& cluster) {
    trace.validate();
    if (cluster.count != trace.distances.size()) {
        throw validation_error("emit_trace: cluster count does not match trace");
    }
    std::string out;
    emit_trace_block(out, trace, cluster, 0);
    return out;
}

SweepTrace parse_trace(std::string_view text) {
    LineScanner scanner{text};
    std::string_view line;
    while (scanner.next(line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line == "# ffgain-trace v1") {
            TraceHeader header;
            return parse_trace_block(scanner, header);
        }
        throw parse_error("expected '# ffgain-trace v1'", scanner.line_no);
    }
    throw parse_error("empty trace file", scanner.line_no);
}

std::string emit_campaign(const Campaign& campaign) {
    campaign.validate();
    std::string out = "# ffgain-campaign v1\n";
    for (const auto& a : campaign.antennas) {
        out += "# antenna: id=" + a.id + " kind=" + to_string(a.kind) +
               " width_m=" + format_double(a.aperture_width) +
               " height_m=" + format_double(a.aperture_height) + "\n";
    }
    for (const auto& [key, cluster_list] : campaign.traces) {
        const auto& clusters = campaign.clusters.at(key);
        for (std::size_t c = 0; c < cluster_list.size(); ++c) {
            for (const SweepTrace& trace : cluster_list[c]) {
                emit_trace_block(out, trace, clusters[c], c);
            }
        }
    }
    return out;
}

Campaign parse_campaign(std::string_view text) {
    LineScanner scanner{text};
    std::string_view line;
    bool have_magic = false;
    Campaign campaign;
    bool grid_set = false;

    // (pair, cluster index) -> cluster definition and traces.
    std::map<PairKey, std::map<std::size_t, Cluster>> cluster_defs;
    std::map<PairKey, std::map<std::size_t, std::vector<SweepTrace>>> collected;

    while (scanner.next(line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (!have_magic) {
            if (line != "# ffgain-campaign v1") {
                throw parse_error("expected '# ffgain-campaign v1'", scanner.line_no);
            }
            have_magic = true;
            continue;
        }
        if (starts_with(line, "# antenna:")) {
            const long ln = scanner.line_no;
            auto fields_map = parse_fields(trim(line.substr(10)), ln);
            try {
                campaign.antennas.emplace_back(
                    field(fields_map, "id", ln),
                    parse_double_token(field(fields_map, "width_m", ln), ln),
                    parse_double_token(field(fields_map, "height_m", ln), ln),
                    antenna_kind_from_string(field(fields_map, "kind", ln)));
            } catch (const validation_error& e) {
                throw parse_error(e.what(), ln);
            }
            continue;
        }
        if (line == "# ffgain-trace v1") {
            TraceHeader header;
            SweepTrace trace = parse_trace_block(scanner, header);
            if (!grid_set) {
                campaign.grid = header.grid;
                grid_set = true;
            } else if (campaign.grid.start_hz != header.grid.start_hz ||
                       campaign.grid.stop_hz != header.grid.stop_hz ||
                       campaign.grid.count != header.grid.count) {
                throw parse_error("trace grids differ within one campaign", scanner.line_no);
            }
            auto [it, inserted] =
                cluster_defs[header.pair].emplace(header.cluster_index, header.cluster);
            if (!inserted) {
                const Cluster& prev = it->second;
                if (prev.start_distance != header.cluster.start_distance ||
                    prev.step != header.cluster.step || prev.count != header.cluster.count ||
                    prev.pair_offset != header.cluster.pair_offset) {
                    throw parse_error("cluster " + std::to_string(header.cluster_index) +
                                          " redefined for pair " + header.pair.label(),
                                      scanner.line_no);
                }
            }
            collected[header.pair][header.cluster_index].push_back(std::move(trace));
            continue;
        }
        throw parse_error("unexpected line '" + std::string(line) + "'", scanner.line_no);
    }
    if (!have_magic) throw parse_error("empty campaign file");

    for (auto& [pair, by_cluster] : collected) {
        auto& clusters = campaign.clusters[pair];
        auto& traces = campaign.traces[pair];
        std::size_t expect = 0;
        for (auto& [index, runs] : by_cluster) {
            if (index != expect++) {
                throw parse_error("pair " + pair.label() + ": cluster indices not contiguous");
            }
            clusters.push_back(cluster_defs[pair][index]);
            std::sort(runs.begin(), runs.end(),
                      [](const SweepTrace& a, const SweepTrace& b) {
                          return a.run_index < b.run_index;
                      });
            traces.push_back(std::move(runs));
        }
    }
    campaign.validate();
    return campaign;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw validation_error("write failed for '" + path + "'");
}

SweepTrace vna_csv_to_trace(std::string_view text, const PairKey& pair,
                            double distance_m, int run_index) {
    if (!(distance_m > 0.0)) throw validation_error("distance must be > 0");
    LineScanner scanner{text};
    std::string_view line;
    std::vector<double> freqs, mags;
    while (scanner.next(line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        // Accept comma or whitespace separation.
        std::string normalized(line);
        std::replace(normalized.begin(), normalized.end(), ',', ' ');
        const auto tokens = split_ws(normalized);
        if (tokens.size() != 2) {
            throw parse_error("expected 'frequency_hz, s21_db'", scanner.line_no);
        }
        double f, db;
        try {
            f = parse_double_token(tokens[0], scanner.line_no);
            db = parse_double_token(tokens[1], scanner.line_no);
        } catch (const parse_error&) {
            if (freqs.empty()) continue;  // tolerate one textual header row
            throw;
        }
        freqs.push_back(f);
        mags.push_back(linear_mag_from_db(db));
    }
    if (freqs.size() < 2) throw validation_error("VNA csv needs at least two rows");
    const double step = freqs[1] - freqs[0];
    for (std::size_t i = 1; i < freqs.size(); ++i) {
        const double expect = freqs[0] + static_cast<double>(i) * step;
        if (std::abs(freqs[i] - expect) > 1e-6 * freqs.back()) {
            throw validation_error("VNA csv frequencies are not uniformly spaced");
        }
    }
    SweepTrace trace;
    trace.pair = pair;
    trace.run_index = run_index;
    trace.grid = FrequencyGrid(freqs.front(), freqs.back(), freqs.size());
    trace.distances = {distance_m};
    trace.s21 = std::move(mags);
    trace.validate();
    return trace;
}

Table report_table(const GainSolution& solution) {
    Table t;
    t.add_column("antenna");
    t.add_column("frequency_hz");
    t.add_column("gain_db", 2);
    t.add_column("sigma_f_db", 2);
    for (const auto& a : solution.antennas) {
        for (std::size_t f = 0; f < solution.grid.count; ++f) {
            t.begin_row();
            t.cell_text(a.id);
            t.cell(solution.grid.at(f));
            t.cell(a.gain_db[f]);
            t.cell(a.sigma_f[f]);
        }
    }
    return t;
}

std::string emit_report(const GainSolution& solution, report_format format) {
    return report_table(solution).render(format);
}

}  // namespace ffgain::io
