#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "designkit/certificate.hpp"
#include "designkit/designs.hpp"
#include "designkit/graph.hpp"
#include "designkit/latin.hpp"

namespace designkit {

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using Document = std::variant<Graph, PartialDesign, PartialLatinSquare, MolsFamily, Certificate>;

// ---- emit ----

inline std::string join_ints(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

inline std::string emit(const Graph& g) {
  std::string s = "graph " + std::to_string(g.order()) + "\n";
  for (const auto& [u, v] : g.edges()) s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

inline std::string emit(const PartialDesign& d) {
  std::string s = "design " + std::to_string(d.order()) + " " + std::to_string(d.block_size()) + "\n";
  for (const auto& b : d.blocks()) s += join_ints(b) + "\n";
  return s;
}

inline std::string emit_rows(const PartialLatinSquare& p) {
  std::string s;
  for (int r = 0; r < p.order(); ++r) {
    for (int c = 0; c < p.order(); ++c) {
      if (c) s += ' ';
      s += p.filled(r, c) ? std::to_string(p.at(r, c) + 1) : "*";
    }
    s += '\n';
  }
  return s;
}

inline std::string emit(const PartialLatinSquare& p) { return "latin " + std::to_string(p.order()) + "\n" + emit_rows(p); }

inline std::string emit(const MolsFamily& f) {
  std::string s = "mols " + std::to_string(f.order()) + " " + std::to_string(f.size()) + "\n";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "\n" : "") + emit_rows(f.squares()[i]);
  return s;
}

inline std::string emit_cliques(const std::string& head, int k, std::vector<Clique> cliques) {
  for (auto& q : cliques) std::sort(q.begin(), q.end());
  std::sort(cliques.begin(), cliques.end());
  std::string s = head + " " + std::to_string(k) + " " + std::to_string(cliques.size()) + "\n";
  for (const auto& q : cliques) s += join_ints(q) + "\n";
  return s;
}

inline std::string emit(const Decomposition& d) { return emit_cliques("decomposition", d.k, d.cliques); }
inline std::string emit(const Factor& f) { return emit_cliques("factor", f.k, f.cliques); }
inline std::string emit(const HamCycle& c) { return "cycle " + std::to_string(c.order.size()) + "\n" + join_ints(c.order) + "\n"; }

inline std::string emit(const PathCover& pc) {
  std::string s = "paths " + std::to_string(pc.paths.size()) + "\n";
  for (const auto& p : pc.paths) s += join_ints(p) + "\n";
  return s;
}

inline std::string emit(const Certificate& c) {
  return std::visit([](const auto& x) { return emit(x); }, c);
}

inline std::string emit(const Document& d) {
  return std::visit([](const auto& x) { return emit(x); }, d);
}

// ---- parse ----

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto first = raw.find_first_not_of(" \t");
      if (first == std::string::npos || raw[first] == '#') continue;
      std::istringstream ss(raw);
      tokens.clear();
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      return true;
    }
    return false;
  }

  std::vector<std::string> need(const char* what) {
    std::vector<std::string> t;
    if (!next(t)) throw ParseError(line_ + 1, std::string("unexpected end of input, expected ") + what);
    return t;
  }

  void expect_end() {
    std::vector<std::string> t;
    if (next(t)) throw ParseError(line_, "unexpected trailing line");
  }

  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  int integer(const std::string& tok) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + tok + "'");
    }
    if (used != tok.size() || v < -1'000'000'000LL || v > 1'000'000'000LL) fail("expected an integer, got '" + tok + "'");
    return static_cast<int>(v);
  }

  std::vector<int> integers(const std::vector<std::string>& toks, std::size_t from = 0) const {
    std::vector<int> out;
    for (std::size_t i = from; i < toks.size(); ++i) out.push_back(integer(toks[i]));
    return out;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

inline std::vector<int> read_square_rows(LineReader& r, int n) {
  std::vector<int> cells;
  // Repeats are reported on the line where the second copy appears.
  std::vector<std::vector<char>> in_col(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int row = 0; row < n; ++row) {
    auto toks = r.need("a square row");
    if (static_cast<int>(toks.size()) != n) r.fail("row has " + std::to_string(toks.size()) + " cells, expected " + std::to_string(n));
    std::vector<char> in_row(static_cast<std::size_t>(n), 0);
    for (int c = 0; c < n; ++c) {
      const auto& tok = toks[c];
      if (tok == "*") {
        cells.push_back(kEmpty);
        continue;
      }
      const int s = r.integer(tok);
      if (s < 1 || s > n) r.fail("symbol " + tok + " outside 1.." + std::to_string(n));
      if (in_row[s - 1]++) r.fail("row " + std::to_string(row) + " repeats symbol " + tok);
      if (in_col[c][s - 1]++) r.fail("column " + std::to_string(c) + " repeats symbol " + tok);
      cells.push_back(s - 1);
    }
  }
  return cells;
}

inline std::vector<Clique> read_cliques(LineReader& r, int count, int k, bool fixed_size) {
  std::vector<Clique> out;
  for (int i = 0; i < count; ++i) {
    auto toks = r.need("a clique line");
    auto q = r.integers(toks);
    if (fixed_size && static_cast<int>(q.size()) != k) r.fail("expected " + std::to_string(k) + " vertices");
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace detail

// Parses one object; the header word selects the format. Invariants are checked by the validators.
inline Document parse_input(std::istream& in) {
  detail::LineReader r(in);
  auto head = r.need("a header line");
  const std::string& kind = head[0];
  auto args = [&](std::size_t count) {
    if (head.size() != count + 1) r.fail("header '" + kind + "' takes " + std::to_string(count) + " arguments");
    auto xs = r.integers(head, 1);
    for (int x : xs)
      if (x < 0) r.fail("negative header argument");
    return xs;
  };
  auto wrap = [&](auto&& make) {
    try {
      return make();
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      r.fail(e.what());
    }
  };

  if (kind == "graph") {
    const int n = args(1)[0];
    if (static_cast<std::size_t>(n) > kMaxVertices) r.fail("graph order exceeds capacity");
    GraphBuilder b(static_cast<std::size_t>(n));
    std::vector<std::string> toks;
    while (r.next(toks)) {
      if (toks.size() != 2) r.fail("edge line needs two vertices");
      const int u = r.integer(toks[0]), v = r.integer(toks[1]);
      if (!(0 <= u && u < v && v < n)) r.fail("edge must satisfy 0 <= u < v < n");
      wrap([&] { return b.add_edge(u, v) ? 0 : (r.fail("repeated edge"), 0); });
    }
    return std::move(b).build();
  }
  if (kind == "design") {
    const auto a = args(2);
    std::vector<std::string> toks;
    std::vector<Block> blocks;
    while (r.next(toks)) {
      auto b = r.integers(toks);
      if (static_cast<int>(b.size()) != a[1]) r.fail("block needs " + std::to_string(a[1]) + " points");
      if (!std::is_sorted(b.begin(), b.end())) r.fail("block points must be ascending");
      blocks.push_back(std::move(b));
      wrap([&] { return validate_partial_design(a[0], a[1], blocks); });
    }
    return wrap([&] { return validate_partial_design(a[0], a[1], std::move(blocks)); });
  }
  if (kind == "latin") {
    const int n = args(1)[0];
    auto cells = detail::read_square_rows(r, n);
    auto sq = wrap([&] { return validate_latin(n, std::move(cells)); });
    r.expect_end();
    return sq;
  }
  if (kind == "mols") {
    const auto a = args(2);
    std::vector<PartialLatinSquare> squares;
    for (int q = 0; q < a[1]; ++q) {
      auto cells = detail::read_square_rows(r, a[0]);
      squares.push_back(wrap([&] { return validate_latin(a[0], std::move(cells)); }));
    }
    r.expect_end();
    return wrap([&] { return validate_mols(std::move(squares)); });
  }
  if (kind == "decomposition" || kind == "factor") {
    const auto a = args(2);
    auto cliques = detail::read_cliques(r, a[1], a[0], true);
    r.expect_end();
    if (kind == "factor") return Certificate{Factor{a[0], std::move(cliques)}};
    return Certificate{Decomposition{a[0], std::move(cliques)}};
  }
  if (kind == "cycle") {
    const int n = args(1)[0];
    auto toks = r.need("the cycle line");
    auto order = r.integers(toks);
    if (static_cast<int>(order.size()) != n) r.fail("cycle lists " + std::to_string(order.size()) + " vertices, expected " + std::to_string(n));
    r.expect_end();
    return Certificate{HamCycle{std::move(order)}};
  }
  if (kind == "paths") {
    const int count = args(1)[0];
    auto paths = detail::read_cliques(r, count, 0, false);
    r.expect_end();
    return Certificate{PathCover{std::move(paths)}};
  }
  r.fail("unknown header '" + kind + "'");
}

inline Document parse_input(const std::string& text_or_path, bool is_path) {
  if (!is_path) {
    std::istringstream in(text_or_path);
    return parse_input(in);
  }
  std::ifstream in(text_or_path);
  if (!in) throw InputError("cannot open " + text_or_path);
  return parse_input(in);
}

template <class T>
T parse_as(std::istream& in, const char* what) {
  Document d = parse_input(in);
  if (auto* x = std::get_if<T>(&d)) return std::move(*x);
  throw InputError(std::string("expected a ") + what + " file");
}

template <class T>
T read_as(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_as<T>(in, what);
}

}  // namespace designkit
