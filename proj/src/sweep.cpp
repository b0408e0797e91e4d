#include "chain_rivalry/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace chain_rivalry {

void SweepSpec::check() const {
    bool known = false;
    for (auto name : kParamNames) known = known || param == name;
    if (!known) throw std::invalid_argument("cannot sweep unknown parameter '" + param + "'");
    if (!(lo < hi)) throw std::invalid_argument("sweep range needs lo < hi");
    if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
}

double SweepSpec::value_at(int i) const {
    if (i == steps - 1) return hi;
    return lo + (hi - lo) * i / (steps - 1);
}

std::vector<SweepRecord> run_sweep(const ModelParams& base, const SweepSpec& spec) {
    spec.check();
    std::vector<SweepRecord> records(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        SweepRecord& rec = records[static_cast<std::size_t>(i)];
        rec.value = spec.value_at(i);
        const ModelParams p = base.with(spec.param, rec.value);

        const ValidityReport validity = validate_params(p);
        if (!validity.ok()) {
            for (auto& row : rec.rows) row.note = validity.names();
            continue;
        }

        bool all_valid = true;
        for (std::size_t j = 0; j < 3; ++j) {
            ScenarioRow& row = rec.rows[j];
            try {
                const EquilibriumOutcome eq = equilibrium(p, kAllScenarios[j]);
                row = {true, "", eq.pA1, eq.pB1, eq.pA2, eq.pB2, eq.cutoff1,
                       eq.profitA, eq.profitB, eq.profitB_with_subsidy};
            } catch (const CornerEquilibrium&) {
                row.note = "corner_equilibrium";
                all_valid = false;
            }
        }
        if (all_valid) rec.chosen = adoption_decision(p).chosen;
        try {
            rec.thresholds = threshold_report(p);
        } catch (const std::exception&) {
            rec.thresholds.reset();
        }
    }
    return records;
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& field) {
    if (field.empty()) throw std::invalid_argument("expected a number, got an empty field");
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
        throw std::invalid_argument("malformed number '" + field + "'");
    return v;
}

Platform parse_platform(const std::string& field) {
    if (field == "P1") return Platform::P1;
    if (field == "P2") return Platform::P2;
    if (field == "P3") return Platform::P3;
    throw std::invalid_argument("unknown platform '" + field + "'");
}

}  // namespace

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << kSweepCsvHeader << '\n';
    for (const auto& rec : records) {
        for (std::size_t j = 0; j < 3; ++j) {
            const ScenarioRow& row = rec.rows[j];
            os << num(rec.value) << ',' << to_string(kAllScenarios[j]) << ',';
            if (row.valid) {
                os << num(row.pA1) << ',' << num(row.pB1) << ',' << num(row.pA2) << ','
                   << num(row.pB2) << ',' << num(row.cutoff) << ',' << num(row.profitA) << ','
                   << num(row.profitB) << ',';
            } else {
                os << ",,,,,,,";
            }
            os << (rec.chosen ? std::string(to_string(*rec.chosen)) : std::string()) << ',';
            if (rec.thresholds) {
                const auto& t = *rec.thresholds;
                os << num(t.c2_star) << ',' << num(t.c3_star) << ',' << num(t.d2_star) << ','
                   << num(t.d3_star) << ',';
            } else {
                os << ",,,,";
            }
            os << (row.valid ? std::string("true") : "false:" + row.note) << '\n';
        }
    }
    return os.str();
}

std::vector<SweepRecord> sweep_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader)
        throw std::invalid_argument("sweep CSV header mismatch");

    std::vector<SweepRecord> records;
    std::size_t slot = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 15) throw std::invalid_argument("sweep CSV row needs 15 fields: " + line);
        const Scenario sc = parse_scenario(f[1]);
        const auto idx = static_cast<std::size_t>(platform_of(sc));
        if (idx != slot) throw std::invalid_argument("sweep CSV rows out of scenario order");
        if (slot == 0) {
            records.emplace_back();
            records.back().value = parse_number(f[0]);
            if (!f[9].empty()) records.back().chosen = parse_platform(f[9]);
            if (!f[10].empty())
                records.back().thresholds = ThresholdReport{parse_number(f[10]), parse_number(f[11]),
                                                            parse_number(f[12]), parse_number(f[13])};
        }
        ScenarioRow& row = records.back().rows[idx];
        if (f[14] == "true") {
            row.valid = true;
            row.pA1 = parse_number(f[2]);
            row.pB1 = parse_number(f[3]);
            row.pA2 = parse_number(f[4]);
            row.pB2 = parse_number(f[5]);
            row.cutoff = parse_number(f[6]);
            row.profitA = parse_number(f[7]);
            row.profitB = parse_number(f[8]);
        } else if (f[14].rfind("false:", 0) == 0) {
            row.note = f[14].substr(6);
        } else {
            throw std::invalid_argument("bad valid field '" + f[14] + "'");
        }
        slot = (slot + 1) % 3;
    }
    if (slot != 0) throw std::invalid_argument("sweep CSV ends mid-record");
    return records;
}

std::string sweep_to_svg(const std::vector<SweepRecord>& records, const std::string& param) {
    constexpr double kWidth = 640, kHeight = 400;
    constexpr double kLeft = 70, kRight = 150, kTop = 30, kBottom = 50;
    constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c"};

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& rec : records) {
        xmin = std::min(xmin, rec.value);
        xmax = std::max(xmax, rec.value);
        for (const auto& row : rec.rows) {
            if (!row.valid) continue;
            ymin = std::min(ymin, row.profitB_with_subsidy);
            ymax = std::max(ymax, row.profitB_with_subsidy);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) {
        ymin = std::isfinite(ymin) ? ymin - 0.5 : 0.0;
        ymax = ymin + 1.0;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * plot_w; };
    auto sy = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * plot_h; };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
       << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
       << kTop + plot_h << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        os << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << kTop + plot_h + 18
           << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(sy(yv) + 4)
           << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
       << "\" text-anchor=\"middle\">" << param << "</text>\n";
    os << "<text x=\"" << kLeft << "\" y=\"" << kTop - 10 << "\">firm B payoff</text>\n";

    for (std::size_t j = 0; j < 3; ++j) {
        // Invalid points break the line into separate segments.
        std::vector<std::string> segments;
        std::string current;
        for (const auto& rec : records) {
            const ScenarioRow& row = rec.rows[j];
            if (!row.valid) {
                if (!current.empty()) segments.push_back(current);
                current.clear();
                continue;
            }
            if (!current.empty()) current += ' ';
            current += fmt(sx(rec.value)) + "," + fmt(sy(row.profitB_with_subsidy));
        }
        if (!current.empty()) segments.push_back(current);
        for (const auto& pts : segments)
            os << "<polyline fill=\"none\" stroke=\"" << kColors[j] << "\" stroke-width=\"2\" points=\""
               << pts << "\"/>\n";

        const double ly = kTop + 20.0 * static_cast<double>(j);
        const double lx = kLeft + plot_w + 15;
        os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly
           << "\" stroke=\"" << kColors[j] << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << lx + 26 << "\" y=\"" << ly + 4 << "\">"
           << to_string(platform_of(kAllScenarios[j])) << " (" << to_string(kAllScenarios[j])
           << ")</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace chain_rivalry
