#include "boolnl/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "boolnl/errors.hpp"

namespace boolnl::report {

using nlohmann::json;

namespace {

std::string format_cell(const std::vector<double>& values, CellFormat format) {
    if (values.empty()) return "-";
    char buf[64];
    switch (format) {
        case CellFormat::Integer:
            std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(values[0])));
            return buf;
        case CellFormat::Percent: {
            const double v = values[0];
            if (v == 0.0 || v >= 1.0) {
                std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(v)));
            } else {
                std::snprintf(buf, sizeof buf, "%.3g", v);
            }
            return buf;
        }
        case CellFormat::Triple: {
            std::string out;
            for (std::size_t k = 0; k < values.size(); ++k) {
                if (k) out += '/';
                out += std::to_string(static_cast<long long>(std::floor(values[k])));
            }
            return out;
        }
    }
    return "-";
}

std::string payload_label(const MutationDescriptor& m) {
    if (const auto* p = std::get_if<BitPosition>(&m.payload())) return std::to_string(p->index);
    if (const auto* q = std::get_if<PositionPair>(&m.payload())) {
        return std::to_string(q->first) + "-" + std::to_string(q->second);
    }
    return std::to_string(std::get<RotationAmount>(m.payload()).amount);
}

json plan_json(const analysis::SamplePlan& plan) {
    json j;
    j["mode"] = plan.mode == analysis::SamplePlan::Mode::Exhaustive ? "exhaustive" : "sampled";
    j["sample_count"] = plan.sample_count;
    j["seed"] = plan.seed;
    j["enumerate_below_nl"] = plan.enumerate_below_nl;
    j["pairs_per_cell"] = plan.pairs_per_cell;
    return j;
}

json counts_json(const analysis::TransitionCounts& c) {
    return {{"increase", c.increase}, {"same", c.same}, {"decrease", c.decrease}};
}

/// Last populated nl index plus one.
template <class Total>
int populated_columns(int columns, Total total) {
    int last = columns;
    while (last > 0 && total(last - 1) == 0) --last;
    return last;
}

std::vector<std::string> nl_labels(int count) {
    std::vector<std::string> out;
    for (int nl = 0; nl < count; ++nl) out.push_back(std::to_string(nl));
    return out;
}

}  // namespace

std::string to_csv(const Grid& grid) {
    std::ostringstream out;
    out << grid.corner;
    for (const auto& c : grid.columns) out << ',' << c;
    out << '\n';
    for (std::size_t r = 0; r < grid.rows.size(); ++r) {
        out << grid.rows[r];
        for (const auto& cell : grid.cells[r]) out << ',' << format_cell(cell, grid.format);
        out << '\n';
    }
    return out.str();
}

std::string pattern_label(unsigned pattern) {
    std::string out;
    auto add = [&](const char* name) {
        if (!out.empty()) out += '/';
        out += name;
    };
    if (pattern & analysis::ReachabilityPattern::kRotation) add("rot");
    if (pattern & analysis::ReachabilityPattern::kBitFlip) add("bit");
    if (pattern & analysis::ReachabilityPattern::kTwoBitFlip) add("2bit");
    return out.empty() ? "none" : out;
}

Grid consistency_grid(const analysis::ConsistencyReport& report) {
    Grid grid;
    grid.corner = "position";
    const std::size_t len = std::size_t{1} << report.num_vars;
    for (std::size_t a = 0; a < len; ++a) grid.columns.push_back("a" + std::to_string(a));
    for (const auto& e : report.entries) {
        grid.rows.push_back(payload_label(e.position));
        std::vector<std::vector<double>> row(len);
        if (e.delta) {
            for (std::size_t a = 0; a < len; ++a) row[a] = {static_cast<double>((*e.delta)[a])};
        }
        grid.cells.push_back(std::move(row));
    }
    return grid;
}

Grid transition_grid(const analysis::TransitionTable& table) {
    Grid grid;
    grid.format = CellFormat::Triple;
    grid.corner = table.kind == MutationKind::Rotation ? "amount" : table.per_position ? "position" : "operator";
    const int columns = populated_columns(static_cast<int>(table.exact_column.size()), [&](int nl) {
        std::uint64_t total = 0;
        for (const auto& row : table.rows) total += row.by_start_nl[static_cast<std::size_t>(nl)].total();
        return total;
    });
    grid.columns = nl_labels(columns);
    for (const auto& row : table.rows) {
        grid.rows.push_back(row.position ? payload_label(*row.position) : std::string(kind_name(table.kind)));
        std::vector<std::vector<double>> cells;
        for (int nl = 0; nl < columns; ++nl) {
            const auto& c = row.by_start_nl[static_cast<std::size_t>(nl)];
            if (c.total() == 0) {
                cells.emplace_back();
                continue;
            }
            const auto p = c.percentages();
            cells.push_back({p[0], p[1], p[2]});
        }
        grid.cells.push_back(std::move(cells));
    }
    return grid;
}

Grid reachability_grid(const analysis::ReachabilityCensus& census, bool percentages) {
    Grid grid;
    grid.format = percentages ? CellFormat::Percent : CellFormat::Integer;
    grid.corner = "pattern";
    int columns = populated_columns(static_cast<int>(census.exact_column.size()),
                                    [&](int nl) { return census.column_total(nl); });
    if (columns > 0 && census.counts[0][static_cast<std::size_t>(columns - 1)] == census.column_total(columns - 1)) {
        --columns;
    }
    grid.columns = nl_labels(columns);
    for (int p = 7; p >= 0; --p) {
        const auto pattern = static_cast<unsigned>(p);
        grid.rows.push_back(pattern_label(pattern));
        std::vector<std::vector<double>> cells;
        for (int nl = 0; nl < columns; ++nl) {
            cells.push_back({percentages ? census.percentage(pattern, nl)
                                         : static_cast<double>(census.counts[pattern][static_cast<std::size_t>(nl)])});
        }
        grid.cells.push_back(std::move(cells));
    }
    if (!percentages) {
        grid.rows.push_back("total");
        std::vector<std::vector<double>> cells;
        for (int nl = 0; nl < columns; ++nl) cells.push_back({static_cast<double>(census.column_total(nl))});
        grid.cells.push_back(std::move(cells));
    }
    return grid;
}

Grid crossover_grid(const analysis::CrossoverMatrix& matrix) {
    Grid grid;
    grid.format = CellFormat::Percent;
    grid.corner = "nl";
    const int width = static_cast<int>(matrix.cells.size());
    // A class is populated when some cell in its row has pairs.
    int columns = populated_columns(width, [&](int nl) {
        std::uint64_t total = 0;
        for (const auto& cell : matrix.cells[static_cast<std::size_t>(nl)]) total += cell.pairs();
        return total;
    });
    if (columns > 0) --columns;
    grid.columns = nl_labels(columns);
    grid.rows = nl_labels(columns);
    for (int i = 0; i < columns; ++i) {
        std::vector<std::vector<double>> cells;
        for (int j = 0; j < columns; ++j) {
            const auto& cell = matrix.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (cell.pairs() == 0) {
                cells.emplace_back();
            } else {
                cells.push_back({cell.percentages()[0]});
            }
        }
        grid.cells.push_back(std::move(cells));
    }
    return grid;
}

Grid census_grid(const analysis::NonlinearityCensus& census) {
    Grid grid;
    grid.corner = "nl";
    const int columns = populated_columns(static_cast<int>(census.counts.size()),
                                          [&](int nl) { return census.counts[static_cast<std::size_t>(nl)]; });
    grid.columns = nl_labels(columns);
    grid.rows = {"count"};
    std::vector<std::vector<double>> cells;
    for (int nl = 0; nl < columns; ++nl) cells.push_back({static_cast<double>(census.counts[static_cast<std::size_t>(nl)])});
    grid.cells.push_back(std::move(cells));
    return grid;
}

std::string to_json(const analysis::ConsistencyReport& report) {
    json j;
    j["study"] = "consistency";
    j["operator"] = kind_name(report.kind);
    j["n"] = report.num_vars;
    j["plan"] = plan_json(report.plan);
    j["all_consistent"] = report.all_consistent();
    j["positions"] = json::array();
    for (const auto& e : report.entries) {
        json row{{"position", to_string(e.position)}, {"examined", e.examined}, {"consistent", e.consistent}};
        row["delta"] = e.delta ? json(*e.delta) : json(nullptr);
        j["positions"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

std::string to_json(const analysis::TransitionTable& table) {
    json j;
    j["study"] = "transitions";
    j["operator"] = kind_name(table.kind);
    j["n"] = table.num_vars;
    j["plan"] = plan_json(table.plan);
    j["per_position"] = table.per_position;
    j["exact_column"] = table.exact_column;
    j["rows"] = json::array();
    for (const auto& row : table.rows) {
        json r;
        r["position"] = row.position ? json(to_string(*row.position)) : json(nullptr);
        r["by_start_nl"] = json::array();
        for (const auto& c : row.by_start_nl) r["by_start_nl"].push_back(counts_json(c));
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

std::string to_json(const analysis::ReachabilityCensus& census) {
    json j;
    j["study"] = "reachability";
    j["n"] = census.num_vars;
    j["plan"] = plan_json(census.plan);
    j["exact_column"] = census.exact_column;
    j["patterns"] = json::array();
    for (int p = 7; p >= 0; --p) {
        j["patterns"].push_back({{"pattern", pattern_label(static_cast<unsigned>(p))},
                                 {"counts", census.counts[static_cast<std::size_t>(p)]}});
    }
    return j.dump(2) + "\n";
}

std::string to_json(const analysis::CrossoverMatrix& matrix) {
    json j;
    j["study"] = "crossover";
    j["kind"] = crossover_name(matrix.kind);
    j["n"] = matrix.num_vars;
    j["plan"] = plan_json(matrix.plan);
    j["cells"] = json::array();
    for (std::size_t i = 0; i < matrix.cells.size(); ++i) {
        for (std::size_t k = 0; k < matrix.cells[i].size(); ++k) {
            const auto& c = matrix.cells[i][k];
            j["cells"].push_back({{"nl1", i},
                                  {"nl2", k},
                                  {"greater", c.greater},
                                  {"lower", c.lower},
                                  {"between", c.between},
                                  {"exhaustive", c.exhaustive}});
        }
    }
    return j.dump(2) + "\n";
}

std::string to_json(const analysis::NonlinearityCensus& census) {
    json j;
    j["study"] = "census";
    j["n"] = census.num_vars;
    j["plan"] = plan_json(census.plan);
    j["counts"] = census.counts;
    j["exact_column"] = census.exact_column;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

std::vector<int> reproducible_tables() { return {2, 3, 4, 5, 6, 7, 8}; }

std::vector<ReproducedTable> reproduce_table(int id, const ReproduceOptions& options) {
    using analysis::SamplePlan;
    const auto exhaustive = SamplePlan::exhaustive(options.threads);
    std::vector<ReproducedTable> out;
    auto finish = [&](std::string stem, Grid grid, std::string json_text, const golden::DiffOptions& rule) {
        const auto expected = golden::load(options.golden_dir / (stem + ".csv"));
        auto report = golden::diff(stem, grid, expected, rule);
        out.push_back({std::move(stem), std::move(grid), std::move(json_text), std::move(report)});
    };
    const golden::DiffOptions exact{golden::Rule::Exact, 0.0, false, {}};
    const golden::DiffOptions bracket{golden::Rule::FloorOrCeil, 0.0, false, {}};
    const golden::DiffOptions three{golden::Rule::Tolerance, 3.0, false, {}};

    switch (id) {
        case 2: {
            const auto r = analysis::consistency_study(MutationKind::BitSet, 3, exhaustive);
            finish("table2_bitset_n3", consistency_grid(r), to_json(r), exact);
            break;
        }
        case 3: {
            const auto flip = analysis::transition_study(MutationKind::BitFlip, 4, exhaustive);
            finish("table3_bitflip_n4", transition_grid(flip), to_json(flip), bracket);
            const auto pair = analysis::transition_study(MutationKind::TwoBitFlip, 4, exhaustive);
            finish("table3_2bitflip_n4", transition_grid(pair), to_json(pair), bracket);
            break;
        }
        case 4: {
            const auto rot = analysis::transition_study(MutationKind::Rotation, 4, exhaustive);
            finish("table4_rot_n4", transition_grid(rot), to_json(rot), bracket);
            break;
        }
        case 5: {
            const auto c = analysis::reachability_study(4, exhaustive);
            finish("table5_n4", reachability_grid(c, false), to_json(c), exact);
            break;
        }
        case 6: {
            auto plan = SamplePlan::sampled_fraction(5, options.sample_fraction, options.seed, options.threads);
            plan.enumerate_below_nl = options.enumerate_below_nl;
            const auto c = analysis::reachability_study(5, plan);
            golden::DiffOptions rule{golden::Rule::Tolerance, 3.0, true, {pattern_label(analysis::ReachabilityPattern::kTwoBitFlip)}};
            finish("table6_n5", reachability_grid(c, true), to_json(c), rule);
            break;
        }
        case 7:
        case 8: {
            auto plan = SamplePlan::sampled(0, options.seed, options.threads);
            plan.pairs_per_cell = options.pairs_per_cell;
            const auto kind = id == 7 ? CrossoverKind::SinglePointMid : CrossoverKind::UniformEvenOdd;
            const auto m = analysis::crossover_study(kind, 4, plan);
            finish(id == 7 ? "table7_singlepoint_n4" : "table8_uniform_n4", crossover_grid(m), to_json(m), three);
            break;
        }
        default:
            throw ConfigInvalid("no reproducible table with id " + std::to_string(id));
    }
    return out;
}

}  // namespace boolnl::report
