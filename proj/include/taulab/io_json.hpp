#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "taulab/bracket.hpp"
#include "taulab/faw_symbol.hpp"
#include "taulab/measure.hpp"
#include "taulab/param_seq.hpp"
#include "taulab/tau_metric.hpp"

namespace taulab::io {

/// 17 significant digits: every double round-trips through the decimal string.
std::string format_real(double v);

/// Accepts a JSON number or a decimal string; `ctx` names the field in error
/// messages.
double parse_real(const nlohmann::json& j, const std::string& ctx);

nlohmann::json measure_to_json(const Measure& mu);
Measure measure_from_json(const nlohmann::json& j);

nlohmann::json param_seq_to_json(const ParamSeq& a);
ParamSeq param_seq_from_json(const nlohmann::json& j);

/// Loads either document kind from a file, dispatching on the schema
/// ("atoms"/"pieces" vs "prefix"/"tail").
struct LoadedInput {
  std::optional<Measure> measure;
  std::optional<ParamSeq> param_seq;
};
LoadedInput load_input_file(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

nlohmann::json bracket_to_json(const Bracket& b);
nlohmann::json dyadic_null_report_to_json(const DyadicNullReport& r);
nlohmann::json separation_witness_to_json(const SeparationWitness& w);

/// Sampled export of a symbol pair: q, the diagonal block, and a table of
/// (x, f1, f2) rows at the requested grid.
nlohmann::json faw_symbol_table_to_json(const FawSymbol& s,
                                        std::span<const double> grid);

/// Parsed form of the symbol-table document, for re-checking the pointwise
/// relations on previously exported (or hand-edited) tables.
struct SymbolTableRow {
  double x;
  double f1;
  double f2;
};
struct SymbolTable {
  double q;
  std::array<double, 2> matrix_diag;
  std::vector<SymbolTableRow> rows;
};
SymbolTable symbol_table_from_json(const nlohmann::json& j);

}  // namespace taulab::io
