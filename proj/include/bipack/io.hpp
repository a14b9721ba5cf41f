#pragma once

// Text formats and JSON encodings.
//
// Graph:     "m n" then one "a b" pair per edge (0-based).
// Sequence:  "m n", then m integers, then n integers.
// Both are whitespace separated ASCII; line breaks are not significant.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bipack/conditions.hpp"
#include "bipack/embedder.hpp"
#include "bipack/feasibility.hpp"
#include "bipack/graph.hpp"
#include "bipack/oracle.hpp"

namespace bipack {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline long long read_int(std::istream& in, const char* what) {
  long long v;
  if (!(in >> v)) throw FormatError(std::string("expected integer for ") + what);
  return v;
}

inline void expect_end(std::istream& in) {
  std::string rest;
  if (in >> rest) throw FormatError("unexpected trailing token '" + rest + "'");
}

}  // namespace detail

inline BipartiteGraph read_graph(std::istream& in) {
  const auto m = detail::read_int(in, "m");
  const auto n = detail::read_int(in, "n");
  if (m < 0 || n < 0 || m > (1 << 20) || n > (1 << 20)) throw FormatError("class sizes out of range");
  std::vector<Edge> edges;
  long long a;
  while (in >> a) {
    const auto b = detail::read_int(in, "edge endpoint");
    edges.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  if (!in.eof()) throw FormatError("malformed edge list");
  try {
    return {static_cast<int>(m), static_cast<int>(n), edges};
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << g.m() << ' ' << g.n() << '\n';
  for (const Edge& e : g.edges()) out << e.a << ' ' << e.b << '\n';
}

inline BigraphicSequence read_sequence(std::istream& in) {
  const auto m = detail::read_int(in, "m");
  const auto n = detail::read_int(in, "n");
  if (m < 0 || n < 0 || m > (1 << 20) || n > (1 << 20)) throw FormatError("class sizes out of range");
  std::vector<int> a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(n));
  for (auto& d : a) d = static_cast<int>(detail::read_int(in, "a-degree"));
  for (auto& d : b) d = static_cast<int>(detail::read_int(in, "b-degree"));
  detail::expect_end(in);
  try {
    return {std::move(a), std::move(b)};
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline void write_sequence(std::ostream& out, const BigraphicSequence& s) {
  out << s.m() << ' ' << s.n() << '\n';
  for (std::size_t i = 0; i < s.a_degrees.size(); ++i) out << (i ? " " : "") << s.a_degrees[i];
  out << '\n';
  for (std::size_t i = 0; i < s.b_degrees.size(); ++i) out << (i ? " " : "") << s.b_degrees[i];
  out << '\n';
}

inline BipartiteGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

inline BigraphicSequence parse_sequence(const std::string& text) {
  std::istringstream in(text);
  return read_sequence(in);
}

inline std::string format_graph(const BipartiteGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return in;
}

inline BipartiteGraph load_graph(const std::string& path) {
  auto in = open_input(path);
  return read_graph(in);
}

inline BigraphicSequence load_sequence(const std::string& path) {
  auto in = open_input(path);
  return read_sequence(in);
}

using Json = nlohmann::ordered_json;

inline Json edges_json(const std::vector<Edge>& edges) {
  Json arr = Json::array();
  for (const Edge& e : edges) arr.push_back({e.a, e.b});
  return arr;
}

inline Json to_json(const EmbeddingMap& map) {
  return Json{{"sToA", map.s_to_a}, {"tToB", map.t_to_b}, {"edges", edges_json(map.edge_image)}};
}

inline Json to_json(const EmbedFailure& f) {
  return Json{{"phase", f.phase},
              {"pairIndex", f.pair_index},
              {"deficit", f.deficit},
              {"conditionsUnmet", f.conditions_unmet},
              {"attempts", f.attempts},
              {"reason", f.reason}};
}

inline Json to_json(const EmbedOutcome& o) {
  Json j = o.embedding ? to_json(*o.embedding) : to_json(*o.failure);
  j["success"] = o.ok();
  j["attempts"] = o.attempts;
  Json pairs = Json::array();
  for (const auto& p : o.pairs)
    pairs.push_back({{"attempt", p.attempt},
                     {"pair", p.pair_index},
                     {"z", p.z},
                     {"eSize", p.e_size},
                     {"lemma5Premises", p.lemma5_premises},
                     {"embedded", p.embedded},
                     {"deficit", p.deficit}});
  j["pairs"] = std::move(pairs);
  j["smallClassConsumption"] = o.small_class_consumption;
  j["notes"] = o.notes;
  return j;
}

inline Json to_json(const ConditionReport& r) {
  Json terms = Json::object();
  for (const auto& [key, value] : r.terms) std::visit([&](auto v) { terms[key] = v; }, value);
  return Json{{"theorem", r.theorem}, {"verdict", to_string(r.verdict)}, {"terms", terms}, {"notes", r.notes}};
}

inline Json to_json(const Lemma4Violation& v) {
  return Json{{"X", v.x}, {"Y", v.y}, {"lhs", v.lhs}, {"rhs", v.rhs}};
}

inline Json to_json(const PackingWitness& w) {
  return Json{{"m", w.m}, {"n", w.n}, {"g1", edges_json(w.g1_edges)}, {"g2", edges_json(w.g2_edges)}};
}

inline Json to_json(const BigraphicSequence& s) {
  return Json{{"a", s.a_degrees}, {"b", s.b_degrees}};
}

}  // namespace bipack
