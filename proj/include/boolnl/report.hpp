#pragma once

// Table-shaped views of study results, JSON documents, and the golden-table
// reproduction harness.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "boolnl/analysis.hpp"

namespace boolnl::report {

enum class CellFormat {
    Integer,  // counts and spectrum deltas
    Percent,  // one percentage per cell
    Triple,   // increase/same/decrease percentages
};

/// Labeled 2-D table. A cell holds one value, three for Triple, or none.
struct Grid {
    std::string corner;
    std::vector<std::string> columns;
    std::vector<std::string> rows;
    std::vector<std::vector<std::vector<double>>> cells;  // [row][column]
    CellFormat format = CellFormat::Integer;
};

/// CSV view. Triples are floored to integer percent; single percentages are
/// rounded to the nearest integer, or printed to three significant digits
/// below 1. Empty cells print as "-".
std::string to_csv(const Grid& grid);

/// Rows: positions, columns: spectrum index. Inconsistent positions are empty.
Grid consistency_grid(const analysis::ConsistencyReport& report);
/// Collapsed tables give one row named after the operator; per-position
/// tables give one row per position. Columns are starting nl values that
/// have at least one function.
Grid transition_grid(const analysis::TransitionTable& table);
/// Rows are the eight patterns (all three first, none last). Columns run
/// over populated nl values; the top one is dropped when every function in it
/// is a dead end. Counts mode adds a "total" row.
Grid reachability_grid(const analysis::ReachabilityCensus& census, bool percentages);
/// Percent of children above both parents. The top populated nl class is
/// dropped: no child can exceed it.
Grid crossover_grid(const analysis::CrossoverMatrix& matrix);
Grid census_grid(const analysis::NonlinearityCensus& census);

/// Reachability row label for a success pattern, e.g. "rot/bit/2bit" or "none".
std::string pattern_label(unsigned pattern);

std::string to_json(const analysis::ConsistencyReport& report);
std::string to_json(const analysis::TransitionTable& table);
std::string to_json(const analysis::ReachabilityCensus& census);
std::string to_json(const analysis::CrossoverMatrix& matrix);
std::string to_json(const analysis::NonlinearityCensus& census);

}  // namespace boolnl::report

namespace boolnl::golden {

/// Parsed golden CSV: '#' lines are comments, first remaining line is the
/// header, cells are numbers or '/'-separated triples.
struct Table {
    std::string corner;
    std::vector<std::string> columns;
    std::vector<std::string> rows;
    std::vector<std::vector<std::vector<double>>> cells;
};

/// Throws std::runtime_error on malformed input.
Table parse_csv(const std::string& text);
Table load(const std::filesystem::path& path);

enum class Rule {
    Exact,
    /// Published integer must be floor or ceiling of the computed value.
    FloorOrCeil,
    /// |computed - published| <= tolerance.
    Tolerance,
};

struct DiffOptions {
    Rule rule = Rule::Exact;
    double tolerance = 0.0;
    /// Tolerance rule only: published zeros are not compared...
    bool skip_zero_expected = false;
    /// ...except in these rows, where computed values must be exactly zero.
    std::vector<std::string> structural_zero_rows;
};

struct CellDiff {
    std::string row;
    std::string column;
    std::size_t component = 0;
    double expected = 0;
    double actual = 0;
    bool checked = true;
    bool ok = true;
};

struct DiffReport {
    std::string name;
    std::string shape_error;  // empty when row/column labels agree
    std::vector<CellDiff> cells;

    bool passed() const;
    std::size_t failures() const;
    /// One line per failing cell plus a closing verdict line.
    std::string summary() const;
};

DiffReport diff(const std::string& name, const report::Grid& actual, const Table& expected, const DiffOptions& options);

}  // namespace boolnl::golden

namespace boolnl::report {

struct ReproduceOptions {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    /// Tables 7 and 8.
    std::uint64_t pairs_per_cell = 100000;
    /// Table 6.
    double sample_fraction = 0.01;
    int enumerate_below_nl = 5;
    std::filesystem::path golden_dir;
};

struct ReproducedTable {
    /// File stem, e.g. "table3_bitflip_n4".
    std::string stem;
    Grid grid;
    std::string json;
    golden::DiffReport diff;
};

std::vector<int> reproducible_tables();

/// Runs the study behind a published table with pinned parameters and diffs
/// it against `<golden_dir>/<stem>.csv`. Table 3 yields two entries.
/// Throws ConfigInvalid for unknown ids.
std::vector<ReproducedTable> reproduce_table(int id, const ReproduceOptions& options);

}  // namespace boolnl::report
