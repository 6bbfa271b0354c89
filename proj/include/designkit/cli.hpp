#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "designkit/constructions.hpp"
#include "designkit/deficiency.hpp"
#include "designkit/embed.hpp"
#include "designkit/hamilton.hpp"
#include "designkit/io.hpp"

namespace designkit {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

namespace detail {

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline Graph read_graph(const std::string& path) { return read_as<Graph>(path, "graph"); }

inline EmbedMode parse_mode(const std::string& s) {
  if (s == "paper-constants") return EmbedMode::kPaperConstants;
  if (s == "minimize-order") return EmbedMode::kMinimizeOrder;
  throw InputError("unknown mode '" + s + "'");
}

}  // namespace detail

// Runs one command. Results go to `out`, diagnostics to `err`.
inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact embedding of partial designs and Latin squares; graph deficiency bounds."};
  app.require_subcommand(1);

  std::string mode = "minimize-order", out_path, cert_path;
  int max_extra = 256, threads = 1;
  long long budget_ms = 600000;
  unsigned seed = 0;
  auto common = [&](CLI::App* c) {
    c->add_option("--mode", mode, "paper-constants or minimize-order")->check(CLI::IsMember({"paper-constants", "minimize-order"}));
    c->add_option("--max-extra", max_extra, "cap on added points")->check(CLI::NonNegativeNumber);
    c->add_option("--time-budget", budget_ms, "per-search time budget in ms")->check(CLI::PositiveNumber);
    c->add_option("--out", out_path, "write the result here");
    c->add_option("--cert", cert_path, "write the certificate here");
    c->add_option("--seed", seed, "only used by randomized modes");
    c->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  };

  std::string kind, file, file2, family;
  int n = 0, t = 0;
  std::vector<int> params;

  auto* embed = app.add_subcommand("embed", "embed a partial design, Latin square or MOLS family");
  embed->add_option("kind", kind)->required()->check(CLI::IsMember({"design", "latin", "mols"}));
  embed->add_option("file", file)->required();
  common(embed);

  auto* deficiency = app.add_subcommand("deficiency", "least t with G * K_t Hamiltonian or triangle-factorable");
  deficiency->add_option("kind", kind)->required()->check(CLI::IsMember({"ham", "triangle"}));
  deficiency->add_option("file", file)->required();
  common(deficiency);

  auto* bound = app.add_subcommand("bound", "closed-form maximum edge counts");
  bound->add_option("kind", kind)->required()->check(CLI::IsMember({"ham", "triangle", "ore"}));
  bound->add_option("n", n)->required();
  bound->add_option("t", t);

  auto* extremal = app.add_subcommand("extremal", "extremal and sharpness constructions");
  extremal->add_option("family", family)->required()->check(CLI::IsMember(
      {"ham", "triangle", "triangle-large-t", "design-sharpness", "mols-sharpness", "evans", "lemma31-sharp",
       "lemma42-sharp"}));
  extremal->add_option("params", params)->required();
  common(extremal);

  auto* oracle = app.add_subcommand("oracle", "brute-force maximum edge counts");
  std::string what;
  oracle->add_option("what", what)->required()->check(CLI::IsMember({"max-edges"}));
  oracle->add_option("kind", kind)->required()->check(CLI::IsMember({"ham", "triangle"}));
  oracle->add_option("n", n)->required();
  oracle->add_option("t", t)->required();
  common(oracle);

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate or a design/MOLS file");
  verify_cmd->add_option("kind", kind)->required()->check(
      CLI::IsMember({"decomposition", "factor", "cycle", "paths", "design", "mols", "latin"}));
  verify_cmd->add_option("file", file)->required();
  verify_cmd->add_option("cert", file2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  SolverOptions so;
  so.budget.time = std::chrono::milliseconds(budget_ms);
  EmbedOptions eo;
  eo.max_extra = max_extra;
  eo.budget = so.budget;

  auto deliver = [&](const std::string& text) {
    if (out_path.empty()) {
      out << text;
    } else {
      detail::write_file(out_path, text);
    }
  };
  auto deliver_cert = [&](const std::string& text) {
    if (!cert_path.empty()) {
      detail::write_file(cert_path, text);
    } else if (!out_path.empty()) {
      detail::write_file(out_path + ".cert", text);
    }
  };

  try {
    eo.mode = detail::parse_mode(mode);
    if (*embed) {
      if (kind == "design") {
        const auto f = read_as<PartialDesign>(file, "design");
        const auto res = embed_design(f, eo);
        deliver(emit(res.completed.design()));
        deliver_cert(emit(res.certificate));
        out << "order=" << res.order << " t=" << res.t << " blocks=" << res.completed.blocks().size() << "\n";
        return kExitOk;
      }
      MolsFamily fam;
      if (kind == "latin") {
        fam = validate_mols({read_as<PartialLatinSquare>(file, "latin")});
      } else {
        fam = read_as<MolsFamily>(file, "mols");
      }
      const auto res = embed_mols(fam, static_cast<int>(fam.size()) + 2, eo);
      deliver(kind == "latin" ? emit(res.completed.squares().front()) : emit(res.completed));
      deliver_cert(emit(res.certificate));
      out << "order=" << res.order << " t=" << res.t << " cells=" << res.completed.order() * res.completed.order() << "\n";
      return kExitOk;
    }
    if (*deficiency) {
      const Graph g = detail::read_graph(file);
      if (kind == "ham") {
        const int d = ham_deficiency(g);
        out << "n=" << g.order() << "\n";
        if (g.order() >= 2 && d > 0) out << "path_cover=" << path_cover_number(g).mu << "\n";
        out << "deficiency=" << d << "\n" << d << "\n";
      } else {
        const int d = factor_deficiency(g, 3, std::nullopt, so);
        out << "n=" << g.order() << "\ndeficiency=" << d << "\n" << d << "\n";
      }
      return kExitOk;
    }
    if (*bound) {
      if (kind == "ore") {
        const auto v = ore_bound(n);
        out << "max_edges=" << v << "\n" << v << "\n";
      } else if (kind == "ham") {
        const auto b = ham_max_edges(n, t);
        out << "n=" << n << "\nt=" << t << "\nregime=" << to_string(b.regime) << "\nparity=" << (b.even ? "even" : "odd")
            << "\nattainable=" << (b.attainable ? "true" : "false") << "\nmax_edges=" << b.max_edges << "\n"
            << b.max_edges << "\n";
      } else {
        const auto b = triangle_max_edges(n, t);
        out << "n=" << n << "\nt=" << t << "\nk=" << b.k << "\nregime=" << (b.unproven_regime ? "unproven-regime" : "proven")
            << "\nmax_edges=" << b.max_edges << "\n" << b.max_edges << "\n";
      }
      return kExitOk;
    }
    if (*extremal) {
      auto need = [&](std::size_t count) {
        if (params.size() != count) throw InputError(family + " takes " + std::to_string(count) + " parameters");
      };
      if (family == "ham") {
        need(2);
        std::string text;
        const auto gs = ham_extremal(params[0], params[1]);
        for (std::size_t i = 0; i < gs.size(); ++i) text += (i ? "\n" : "") + emit(gs[i]);
        deliver(text);
        out << "graphs=" << gs.size() << "\nedges=" << gs.front().edge_count() << "\n" << gs.front().edge_count() << "\n";
      } else if (family == "triangle" || family == "triangle-large-t") {
        need(2);
        const Graph g = family == "triangle" ? triangle_extremal(params[0], params[1]) : triangle_large_t(params[0], params[1]);
        deliver(emit(g));
        out << "edges=" << g.edge_count() << "\n" << g.edge_count() << "\n";
      } else if (family == "design-sharpness") {
        need(3);
        const auto s = design_sharpness_sized(params[0], params[1], params[2]);
        deliver(emit(s.design));
        out << "v_prime=" << s.v_prime.size() << "\nadjusted=" << (s.adjusted ? "true" : "false")
            << "\nmin_extra=" << s.min_extra << "\n" << s.design.size() << "\n";
      } else if (family == "mols-sharpness") {
        need(3);
        const auto s = mols_sharpness_sized(params[0], params[1], params[2]);
        deliver(emit(cliques_to_mols(s.family)));
        out << "x=" << s.x << "\nadjusted=" << (s.adjusted ? "true" : "false") << "\nmin_extra=" << s.min_extra << "\n"
            << s.family.size() << "\n";
      } else if (family == "evans") {
        need(1);
        deliver(emit(evans_sharpness(params[0])));
        out << "cells=" << params[0] << "\n" << params[0] << "\n";
      } else if (family == "lemma31-sharp") {
        need(2);
        const auto inst = lemma31_sharpness(params[0], params[1]);
        deliver("# s " + join_ints(inst.s_set) + "\n" + emit(inst.removed.remove_from(inst.g)));
        out << "s=" << inst.s_set.size() << "\nt=" << inst.t_set.size() << "\n" << inst.g.order() << "\n";
      } else {
        need(2);
        const auto inst = lemma42_sharpness(params[0], params[1]);
        std::string text;
        for (const auto& sp : inst.splits) text += "# s " + join_ints(sp.s) + "\n";
        deliver(text + emit(inst.removed.remove_from(inst.mg.graph())));
        out << "parts=" << inst.splits.size() << "\ns=" << inst.splits.front().s.size()
            << "\nt=" << inst.splits.front().t.size() << "\n" << inst.mg.graph().order() << "\n";
      }
      return kExitOk;
    }
    if (*oracle) {
      BruteOptions bo;
      bo.threads = threads;
      const auto r = brute_max_edges(n, t, kind == "ham" ? Property::kHamiltonian : Property::kTriangleFactor, bo);
      if (!r.max_edges) {
        out << "max_edges=none\n";
        return kExitNegative;
      }
      if (!out_path.empty()) detail::write_file(out_path, emit(r.witness));
      out << "n=" << n << "\nt=" << t << "\nmax_edges=" << *r.max_edges << "\n" << *r.max_edges << "\n";
      return kExitOk;
    }
    if (*verify_cmd) {
      if (kind == "design") {
        const auto d = read_as<PartialDesign>(file, "design");
        if (!d.is_complete()) {
          out << "valid=false\nviolation=" << d.uncovered_pairs() << " pairs uncovered\n";
          return kExitNegative;
        }
        out << "valid=true\n";
        return kExitOk;
      }
      if (kind == "mols" || kind == "latin") {
        const auto f = kind == "mols" ? read_as<MolsFamily>(file, "mols")
                                      : validate_mols({read_as<PartialLatinSquare>(file, "latin")});
        if (!f.is_complete()) {
          out << "valid=false\nviolation=empty cells remain\n";
          return kExitNegative;
        }
        out << "valid=true\n";
        return kExitOk;
      }
      if (file2.empty()) throw InputError("verify " + kind + " needs a graph file and a certificate file");
      const Graph g = detail::read_graph(file);
      const auto cert = read_as<Certificate>(file2, "certificate");
      const std::map<std::string, std::size_t> index{{"decomposition", 0}, {"factor", 1}, {"cycle", 2}, {"paths", 3}};
      if (cert.index() != index.at(kind)) throw InputError("certificate file is not a " + kind);
      const Verdict v = verify(g, cert);
      if (!v) {
        out << "valid=false\nviolation=" << v.violation << "\n";
        return kExitNegative;
      }
      out << "valid=true\n";
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "resource: " << e.what() << "\n";
    return kExitResource;
  } catch (const EmbedFailure& e) {
    err << "budget: " << e.what() << "\n";
    for (const auto& f : e.trace().failures) err << "  " << f << "\n";
    return kExitResource;
  } catch (const SolverFailure& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitNegative;
  }
  return kExitInput;
}

}  // namespace designkit
