#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "boolnl/report.hpp"

namespace boolnl::golden {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) out.push_back(part);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::runtime_error("golden table: not a number: '" + text + "'");
    }
    if (used != text.size()) throw std::runtime_error("golden table: not a number: '" + text + "'");
    return v;
}

}  // namespace

Table parse_csv(const std::string& text) {
    Table table;
    bool header = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, ',');
        for (auto& f : fields) f = trim(f);
        if (!header) {
            table.corner = fields.at(0);
            table.columns.assign(fields.begin() + 1, fields.end());
            header = true;
            continue;
        }
        if (fields.size() != table.columns.size() + 1) {
            throw std::runtime_error("golden table: row '" + fields[0] + "' has " + std::to_string(fields.size() - 1) +
                                     " cells, header has " + std::to_string(table.columns.size()));
        }
        table.rows.push_back(fields[0]);
        std::vector<std::vector<double>> cells;
        for (std::size_t c = 1; c < fields.size(); ++c) {
            std::vector<double> values;
            if (fields[c] != "-") {
                for (const auto& part : split(fields[c], '/')) values.push_back(parse_number(trim(part)));
            }
            cells.push_back(std::move(values));
        }
        table.cells.push_back(std::move(cells));
    }
    if (!header) throw std::runtime_error("golden table: missing header");
    return table;
}

Table load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden table " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_csv(text.str());
}

bool DiffReport::passed() const { return shape_error.empty() && failures() == 0; }

std::size_t DiffReport::failures() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c.ok; }));
}

std::string DiffReport::summary() const {
    std::ostringstream out;
    if (!shape_error.empty()) out << name << ": " << shape_error << '\n';
    std::size_t checked = 0;
    for (const auto& c : cells) {
        checked += c.checked;
        if (c.ok) continue;
        out << name << ": row " << c.row << ", column " << c.column << '[' << c.component << "]: expected " << c.expected << ", got " << c.actual << '\n';
    }
    out << name << ": " << (passed() ? "match" : "MISMATCH") << " (" << checked << " cells checked, " << failures()
        << " outside tolerance)\n";
    return out.str();
}

DiffReport diff(const std::string& name, const report::Grid& actual, const Table& expected, const DiffOptions& options) {
    DiffReport report{name, {}, {}};
    if (actual.columns != expected.columns) {
        report.shape_error = "column labels differ";
        return report;
    }
    if (actual.rows != expected.rows) {
        report.shape_error = "row labels differ";
        return report;
    }
    for (std::size_t r = 0; r < expected.rows.size(); ++r) {
        const bool structural = std::find(options.structural_zero_rows.begin(), options.structural_zero_rows.end(),
                                          expected.rows[r]) != options.structural_zero_rows.end();
        for (std::size_t c = 0; c < expected.columns.size(); ++c) {
            const auto& want = expected.cells[r][c];
            const auto& got = actual.cells[r][c];
            if (want.size() != got.size()) {
                CellDiff d{expected.rows[r], expected.columns[c], 0, static_cast<double>(want.size()),
                           static_cast<double>(got.size()), true, false};
                report.cells.push_back(d);
                continue;
            }
            for (std::size_t k = 0; k < want.size(); ++k) {
                CellDiff d{expected.rows[r], expected.columns[c], k, want[k], got[k], true, true};
                switch (options.rule) {
                    case Rule::Exact:
                        d.ok = got[k] == want[k];
                        break;
                    case Rule::FloorOrCeil: {
                        constexpr double eps = 1e-9;
                        d.ok = want[k] >= std::floor(got[k] + eps) && want[k] <= std::ceil(got[k] - eps);
                        break;
                    }
                    case Rule::Tolerance:
                        if (structural) {
                            d.ok = want[k] != 0.0 ? std::abs(got[k] - want[k]) <= options.tolerance : got[k] == 0.0;
                        } else if (options.skip_zero_expected && want[k] == 0.0) {
                            d.checked = false;
                        } else {
                            d.ok = std::abs(got[k] - want[k]) <= options.tolerance;
                        }
                        break;
                }
                report.cells.push_back(d);
            }
        }
    }
    return report;
}

}  // namespace boolnl::golden
