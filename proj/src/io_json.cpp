#include "taulab/io_json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "taulab/errors.hpp"

namespace taulab::io {

using nlohmann::json;

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_real(const json& j, const std::string& ctx) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw ValidationError(ctx + ": '" + s + "' is not a decimal number");
    return v;
  }
  throw ValidationError(ctx + ": expected a number or decimal string");
}

json measure_to_json(const Measure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms())
    atoms.push_back({{"x", format_real(a.x)}, {"w", format_real(a.w)}});
  json pieces = json::array();
  for (const Piece& p : mu.pieces())
    pieces.push_back({{"lo", format_real(p.lo)},
                      {"hi", format_real(p.hi)},
                      {"w", format_real(p.w)}});
  return json{{"atoms", atoms}, {"pieces", pieces}};
}

Measure measure_from_json(const json& j) {
  if (!j.is_object())
    throw ValidationError("measure: expected a JSON object");
  std::vector<Atom> atoms;
  std::vector<Piece> pieces;
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array())
      throw ValidationError("measure.atoms: expected an array");
    std::size_t i = 0;
    for (const json& a : j["atoms"]) {
      const std::string ctx = "measure.atoms[" + std::to_string(i++) + "]";
      if (!a.is_object() || !a.contains("x") || !a.contains("w"))
        throw ValidationError(ctx + ": expected {\"x\":..., \"w\":...}");
      atoms.push_back({parse_real(a["x"], ctx + ".x"),
                       parse_real(a["w"], ctx + ".w")});
    }
  }
  if (j.contains("pieces")) {
    if (!j["pieces"].is_array())
      throw ValidationError("measure.pieces: expected an array");
    std::size_t i = 0;
    for (const json& p : j["pieces"]) {
      const std::string ctx = "measure.pieces[" + std::to_string(i++) + "]";
      if (!p.is_object() || !p.contains("lo") || !p.contains("hi") ||
          !p.contains("w"))
        throw ValidationError(ctx +
                              ": expected {\"lo\":..., \"hi\":..., \"w\":...}");
      pieces.push_back({parse_real(p["lo"], ctx + ".lo"),
                        parse_real(p["hi"], ctx + ".hi"),
                        parse_real(p["w"], ctx + ".w")});
    }
  }
  // File tolerance is looser than the construction tolerance; weights are
  // renormalized exactly after the check either way.
  return Measure(std::move(atoms), std::move(pieces), 1e-9);
}

json param_seq_to_json(const ParamSeq& a) {
  json prefix = json::array();
  for (double v : a.prefix()) prefix.push_back(format_real(v));
  json tail;
  switch (a.tail().kind) {
    case TailKind::Constant:
      tail = {{"kind", "constant"}, {"c", format_real(a.tail().c)}};
      break;
    case TailKind::Geometric:
      tail = {{"kind", "geometric"},
              {"c", format_real(a.tail().c)},
              {"r", format_real(a.tail().r)}};
      break;
    case TailKind::Power:
      tail = {{"kind", "power"},
              {"c", format_real(a.tail().c)},
              {"p", format_real(a.tail().p)}};
      break;
  }
  return json{{"prefix", prefix}, {"tail", tail}};
}

ParamSeq param_seq_from_json(const json& j) {
  if (!j.is_object() || !j.contains("tail"))
    throw ValidationError("param_seq: expected {\"prefix\":[...], \"tail\":{...}}");
  std::vector<double> prefix;
  if (j.contains("prefix")) {
    if (!j["prefix"].is_array())
      throw ValidationError("param_seq.prefix: expected an array");
    std::size_t i = 0;
    for (const json& v : j["prefix"])
      prefix.push_back(
          parse_real(v, "param_seq.prefix[" + std::to_string(i++) + "]"));
  }
  const json& t = j["tail"];
  if (!t.is_object() || !t.contains("kind") || !t.contains("c"))
    throw ValidationError("param_seq.tail: expected {\"kind\":..., \"c\":...}");
  TailRule rule;
  rule.c = parse_real(t["c"], "param_seq.tail.c");
  const std::string kind = t["kind"].get<std::string>();
  if (kind == "constant") {
    rule.kind = TailKind::Constant;
  } else if (kind == "geometric") {
    rule.kind = TailKind::Geometric;
    if (!t.contains("r"))
      throw ValidationError("param_seq.tail: geometric kind needs \"r\"");
    rule.r = parse_real(t["r"], "param_seq.tail.r");
  } else if (kind == "power") {
    rule.kind = TailKind::Power;
    if (!t.contains("p"))
      throw ValidationError("param_seq.tail: power kind needs \"p\"");
    rule.p = parse_real(t["p"], "param_seq.tail.p");
  } else {
    throw ValidationError("param_seq.tail.kind: unknown kind '" + kind + "'");
  }
  return ParamSeq(std::move(prefix), rule);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

LoadedInput load_input_file(const std::string& path) {
  const json j = read_json_file(path);
  LoadedInput out;
  if (j.contains("prefix") || j.contains("tail"))
    out.param_seq = param_seq_from_json(j);
  else if (j.contains("atoms") || j.contains("pieces"))
    out.measure = measure_from_json(j);
  else
    throw ValidationError(path +
                          ": neither a measure (atoms/pieces) nor a parameter "
                          "sequence (prefix/tail) document");
  return out;
}

json bracket_to_json(const Bracket& b) {
  return json{{"lo", format_real(b.lo)}, {"hi", format_real(b.hi)}};
}

json dyadic_null_report_to_json(const DyadicNullReport& r) {
  json hits = json::array();
  for (const auto& [m, b] : r.hits)
    hits.push_back({{"m", m}, {"value", bracket_to_json(b)}});
  json undecided = json::array();
  for (const auto& [m, b] : r.undecided)
    undecided.push_back({{"m", m}, {"value", bracket_to_json(b)}});
  return json{{"schema_version", 1},
              {"kind", "dyadic_null_report"},
              {"epsilon", format_real(r.epsilon)},
              {"param_seq", param_seq_to_json(r.a)},
              {"hits", hits},
              {"undecided", undecided}};
}

json separation_witness_to_json(const SeparationWitness& w) {
  return json{{"schema_version", 1},
              {"kind", "separation_witness"},
              {"m", w.m},
              {"epsilon", format_real(w.epsilon)},
              {"d_a_value", bracket_to_json(w.d_a_value)},
              {"d_b_value", bracket_to_json(w.d_b_value)},
              {"swapped", w.swapped}};
}

json faw_symbol_table_to_json(const FawSymbol& s,
                              std::span<const double> grid) {
  json table = json::array();
  for (double x : grid)
    table.push_back({{"x", format_real(x)},
                     {"f1", format_real(s.f1(x))},
                     {"f2", format_real(s.f2(x))}});
  return json{{"schema_version", 1},
              {"kind", "faw_symbol_table"},
              {"q", format_real(s.q)},
              {"matrix_diag", {format_real(s.matrix_diag[0]),
                               format_real(s.matrix_diag[1])}},
              {"j_structure", s.j_structure},
              {"table", table}};
}

SymbolTable symbol_table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("q") || !j.contains("matrix_diag") ||
      !j.contains("table"))
    throw ValidationError(
        "faw_symbol_table: expected {\"q\":..., \"matrix_diag\":[...], "
        "\"table\":[...]}");
  SymbolTable out;
  out.q = parse_real(j["q"], "faw_symbol_table.q");
  if (!j["matrix_diag"].is_array() || j["matrix_diag"].size() != 2)
    throw ValidationError("faw_symbol_table.matrix_diag: expected 2 entries");
  out.matrix_diag = {parse_real(j["matrix_diag"][0], "matrix_diag[0]"),
                     parse_real(j["matrix_diag"][1], "matrix_diag[1]")};
  std::size_t i = 0;
  for (const json& row : j["table"]) {
    const std::string ctx = "faw_symbol_table.table[" + std::to_string(i++) + "]";
    if (!row.is_object() || !row.contains("x") || !row.contains("f1") ||
        !row.contains("f2"))
      throw ValidationError(ctx + ": expected {\"x\",\"f1\",\"f2\"}");
    out.rows.push_back({parse_real(row["x"], ctx + ".x"),
                        parse_real(row["f1"], ctx + ".f1"),
                        parse_real(row["f2"], ctx + ".f2")});
  }
  if (out.rows.empty())
    throw ValidationError("faw_symbol_table.table: empty table");
  return out;
}

}  // namespace taulab::io
