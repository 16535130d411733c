// aecolor: plane-graph embeddings, acyclic edge colorings, discharging
// audits, bunch rethreading and exact constant checks from one binary.
//
// Exit codes: 0 success, 1 domain failure (invalid coloring, unhappy ledger,
// regime error), 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "aec/constants.hpp"
#include "aec/discharging.hpp"
#include "aec/generators.hpp"
#include "aec/io.hpp"
#include "aec/json_io.hpp"
#include "aec/oracle.hpp"
#include "aec/plane_graph.hpp"
#include "aec/reductions.hpp"
#include "aec/rethreading.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

aec::PlaneGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return aec::read_embedding(in);
}

int infer_palette(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  int best = 0;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    int u, v, c;
    if (ss >> u >> v >> c) best = std::max(best, c);
  }
  return best;
}

aec::EdgeColoring load_coloring(const std::string& path, const aec::PlaneGraph& g, int palette) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return aec::read_coloring(in, g, palette);
}

void emit_graph(const aec::PlaneGraph& g, const std::string& out_path) {
  if (out_path.empty()) {
    aec::write_embedding(std::cout, g);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    aec::write_embedding(out, g);
  }
}

void emit_coloring(const aec::PlaneGraph& g, const aec::EdgeColoring& c, const std::string& out_path) {
  if (out_path.empty()) {
    aec::write_coloring(std::cout, g, c);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    aec::write_coloring(out, g, c);
  }
}

struct ThresholdFlags {
  int big = 8680;
  int very_big_offset = 4 * 8680;
  int rc3_cap = 35;
  long long rc4_cap = 141415;
  int long_min = 11;

  void attach(CLI::App* cmd) {
    cmd->add_option("--big", big, "degree threshold for big vertices");
    cmd->add_option("--very-big-offset", very_big_offset, "very big: degree >= max degree - offset");
    cmd->add_option("--rc3-cap", rc3_cap, "RC3 cap on nf + 2 ns");
    cmd->add_option("--rc4-cap", rc4_cap, "RC4 cap on nf + 2 ns");
    cmd->add_option("--long-min", long_min, "minimum length of a long bunch");
  }

  aec::Thresholds to_thresholds() const {
    aec::Thresholds th;
    th.big = big;
    th.very_big_offset = very_big_offset;
    th.rc3_cap = rc3_cap;
    th.rc4_cap = static_cast<int>(rc4_cap);
    th.long_bunch_min = long_min;
    th.check();
    return th;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acyclic edge-coloring toolkit for plane graphs"};
  app.require_subcommand(1);

  // --- verify ---------------------------------------------------------
  std::string verify_graph, verify_coloring;
  int verify_k = 0;
  auto* verify = app.add_subcommand("verify", "check a coloring for properness and acyclicity");
  verify->add_option("--graph", verify_graph, "embedding file")->required();
  verify->add_option("--coloring", verify_coloring, "coloring file (u v c lines)")->required();
  verify->add_option("--k", verify_k, "palette size (default: largest color used)");

  // --- color ----------------------------------------------------------
  std::string color_graph, color_out;
  int color_k = 0;
  auto* color = app.add_subcommand("color", "acyclic coloring via the recursive reduction driver");
  color->add_option("--graph", color_graph, "embedding file")->required();
  color->add_option("--k", color_k, "palette size")->required();
  color->add_option("--out", color_out, "write the coloring here instead of stdout");

  // --- oracle ---------------------------------------------------------
  std::string oracle_graph;
  int oracle_max = 16;
  auto* oracle = app.add_subcommand("oracle", "exact acyclic chromatic index by exhaustive search");
  oracle->add_option("--graph", oracle_graph, "embedding file (keep it small)")->required();
  oracle->add_option("--max", oracle_max, "give up beyond this palette size");

  // --- scan -----------------------------------------------------------
  std::string scan_graph;
  bool scan_json = false;
  ThresholdFlags scan_th;
  auto* scan = app.add_subcommand("scan", "find a reducible configuration (RC1..RC4)");
  scan->add_option("--graph", scan_graph, "embedding file")->required();
  scan->add_flag("--json", scan_json, "machine-readable witness");
  scan_th.attach(scan);

  // --- discharge ------------------------------------------------------
  std::string discharge_graph;
  bool discharge_json = false;
  ThresholdFlags discharge_th;
  auto* discharge = app.add_subcommand("discharge", "run the charging rules and audit happiness");
  discharge->add_option("--graph", discharge_graph, "embedding file")->required();
  discharge->add_flag("--json", discharge_json, "machine-readable ledger");
  discharge_th.attach(discharge);

  // --- rethread-demo --------------------------------------------------
  std::string rethread_graph, rethread_coloring, rethread_out;
  int rethread_k = 0, rethread_bunch_idx = 0;
  std::uint64_t rethread_seed = 0;
  bool rethread_seed_set = false;
  ThresholdFlags rethread_th;
  auto* rethread = app.add_subcommand("rethread-demo",
                                      "restore a long bunch's horizontal edges into a stripped coloring");
  rethread->add_option("--graph", rethread_graph, "embedding file")->required();
  rethread->add_option("--coloring", rethread_coloring,
                       "coloring of the stripped graph (or use --seed to draw one)");
  rethread->add_option("--k", rethread_k, "palette size")->required();
  rethread->add_option("--bunch", rethread_bunch_idx, "index into the detected bunch list");
  rethread->add_option("--out", rethread_out, "write the completed coloring here");
  rethread->add_option_function<std::uint64_t>(
      "--seed",
      [&](const std::uint64_t& s) {
        rethread_seed = s;
        rethread_seed_set = true;
      },
      "sample a random stripped coloring instead of reading one");
  rethread_th.attach(rethread);

  // --- constants ------------------------------------------------------
  bool constants_json = false;
  auto* constants = app.add_subcommand("constants", "re-derive and verify the numeric constants");
  constants->add_flag("--json", constants_json, "machine-readable report");

  // --- generate -------------------------------------------------------
  std::string gen_kind, gen_out;
  int gen_t = 1, gen_n = 12;
  std::uint64_t gen_seed = 0;
  bool gen_seed_set = false;
  int gen_pad = 0;
  double gen_thin = 0.0;
  auto* generate = app.add_subcommand("generate", "write a fixture embedding");
  generate->add_option("--kind", gen_kind, "trunc-dodec | borodin | bunch | random")->required();
  generate->add_option("--t", gen_t, "subdivisions (borodin) or bunch length (bunch)");
  generate->add_option("--n", gen_n, "vertex count (random)");
  generate
      ->add_option_function<std::uint64_t>(
          "--seed",
          [&](const std::uint64_t& s) {
            gen_seed = s;
            gen_seed_set = true;
          },
          "seed for randomized kinds")
      ->type_name("UINT");
  generate->add_option("--pad", gen_pad, "extra parent leaves (bunch)");
  generate->add_option("--thin", gen_thin, "fraction of edges offered for deletion (random)");
  generate->add_option("--out", gen_out, "write the embedding here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      aec::PlaneGraph g = load_graph(verify_graph);
      int k = verify_k > 0 ? verify_k : infer_palette(verify_coloring);
      aec::EdgeColoring c = load_coloring(verify_coloring, g, k);
      aec::AcyclicityReport rep = aec::verify_acyclic(g, c);
      if (rep.ok) {
        std::cout << "acyclic: yes (palette " << k << ", " << g.edge_count() << " edges)\n";
        return kExitOk;
      }
      std::cout << "acyclic: no — " << rep.violation.describe() << "\n";
      return kExitDomain;
    }

    if (*color) {
      aec::PlaneGraph g = load_graph(color_graph);
      aec::ColorPlanarResult res = aec::color_planar(g, color_k);
      if (!res.success) {
        std::cerr << "no coloring: " << res.message;
        if (res.stuck_vertex >= 0) std::cerr << " (stuck at vertex " << res.stuck_vertex << ")";
        std::cerr << "\n";
        return kExitDomain;
      }
      aec::AcyclicityReport rep = aec::verify_acyclic(g, res.coloring);
      if (!rep.ok) {
        std::cerr << "internal check failed: " << rep.violation.describe() << "\n";
        return kExitDomain;
      }
      emit_coloring(g, res.coloring, color_out);
      return kExitOk;
    }

    if (*oracle) {
      aec::PlaneGraph g = load_graph(oracle_graph);
      if (g.edge_count() > 24) {
        std::cerr << "oracle: graph has " << g.edge_count() << " edges; refusing more than 24\n";
        return kExitUsage;
      }
      aec::OracleResult res = aec::brute_force_index(g, oracle_max);
      if (!res.found) {
        std::cout << "index exceeds " << oracle_max << "\n";
        return kExitDomain;
      }
      std::cout << "acyclic chromatic index: " << res.index << "\n";
      aec::write_coloring(std::cout, g, res.witness);
      return kExitOk;
    }

    if (*scan) {
      aec::PlaneGraph g = load_graph(scan_graph);
      aec::Thresholds th = scan_th.to_thresholds();
      std::optional<aec::ConfigurationWitness> w = aec::structural_scan(g, th);
      if (!w) {
        std::cout << "no configuration found (parametric thresholds)\n";
        return kExitDomain;
      }
      if (!aec::reverify_witness(g, th, *w)) {
        std::cerr << "witness failed re-verification\n";
        return kExitDomain;
      }
      if (scan_json) {
        std::cout << aec::witness_to_json(*w).dump(2) << "\n";
      } else {
        std::cout << w->kind_name() << " at vertex " << w->vertex;
        if (w->kind == aec::ConfigurationWitness::Kind::rc1)
          std::cout << " (neighborhood degree sum " << w->degree_sum << ")";
        if (w->kind == aec::ConfigurationWitness::Kind::rc2)
          std::cout << " (class " << w->rc2_class << ", " << w->counted.size() << " counted)";
        if (w->kind == aec::ConfigurationWitness::Kind::rc3 || w->kind == aec::ConfigurationWitness::Kind::rc4)
          std::cout << " (nf " << w->nf << ", ns " << w->ns << ")";
        std::cout << "\n";
      }
      return kExitOk;
    }

    if (*discharge) {
      aec::PlaneGraph g = load_graph(discharge_graph);
      aec::Thresholds th = discharge_th.to_thresholds();
      aec::ChargeLedger led = aec::apply_rules(g, th, aec::find_bunches(g, th));
      auto unhappy = aec::unhappy_elements(led);
      if (discharge_json) {
        std::cout << aec::ledger_to_json(led).dump(2) << "\n";
      } else {
        std::cout << "total charge: " << led.total2() / 2.0 << "\n";
        std::cout << "transfers: " << led.log.size() << "\n";
        std::cout << "unhappy elements: " << unhappy.size() << "\n";
        for (const auto& u : unhappy) {
          switch (u.entity.kind) {
            case aec::ChargeEntity::Kind::vertex: std::cout << "  vertex " << u.entity.id; break;
            case aec::ChargeEntity::Kind::face: std::cout << "  face " << u.entity.id; break;
            case aec::ChargeEntity::Kind::bank: std::cout << "  bank"; break;
          }
          std::cout << " holds " << u.charge2 / 2.0 << "\n";
        }
      }
      return unhappy.empty() ? kExitOk : kExitDomain;
    }

    if (*rethread) {
      aec::PlaneGraph g = load_graph(rethread_graph);
      aec::Thresholds th = rethread_th.to_thresholds();
      std::vector<aec::Bunch> bunches = aec::find_bunches(g, th);
      if (rethread_bunch_idx < 0 || rethread_bunch_idx >= static_cast<int>(bunches.size())) {
        std::cerr << "bunch index " << rethread_bunch_idx << " out of range (found " << bunches.size()
                  << " bunches)\n";
        return kExitUsage;
      }
      const aec::Bunch& b = bunches[rethread_bunch_idx];
      aec::EdgeColoring c;
      if (!rethread_coloring.empty()) {
        c = load_coloring(rethread_coloring, g, rethread_k);
      } else if (rethread_seed_set) {
        aec::Rng rng(rethread_seed);
        auto drawn = aec::random_bunch_coloring(g, b, rethread_k, rng);
        if (!drawn) {
          std::cerr << "could not sample a stripped coloring at k = " << rethread_k << "\n";
          return kExitDomain;
        }
        c = *drawn;
      } else {
        std::cerr << "rethread-demo needs --coloring or --seed\n";
        return kExitUsage;
      }
      aec::RethreadTrace trace;
      aec::EdgeColoring full;
      try {
        full = aec::rethread_bunch(g, b, c, rethread_k, &trace);
      } catch (const std::logic_error& e) {
        std::cerr << "rethreading failed: " << e.what() << "\n";
        return kExitDomain;
      }
      std::cerr << "bunch length " << b.length() << ", conflict edges " << trace.conflict_edges << "\n";
      std::cerr << "odd set:";
      for (int v : trace.placement.members) std::cerr << ' ' << v;
      std::cerr << "\nfinal order:";
      for (int j = 1; j < static_cast<int>(trace.final_order.size()); ++j)
        std::cerr << ' ' << trace.final_order[j];
      std::cerr << "\n";
      emit_coloring(g, full, rethread_out);
      return kExitOk;
    }

    if (*constants) {
      aec::ConstantsReport rep = aec::verify_arithmetic();
      if (constants_json) {
        std::cout << aec::constants_report_to_json(rep).dump(2) << "\n";
      } else {
        std::cout << "pivot degree bound (grid max): " << rep.rc3_max << " at ns=" << rep.rc3_argmax_ns
                  << " s=" << rep.rc3_argmax_s << "\n";
        std::cout << "very-big degree bound: " << rep.rc4_max << " (~" << rep.rc4_max / 1e14
                  << "e14) at ns=" << rep.rc4_argmax_ns << " s=" << rep.rc4_argmax_s << "\n";
        std::cout << "factored vs expanded forms agree: " << (rep.rc4_forms_agree ? "yes" : "NO") << "\n";
        std::cout << "crowding inequalities: " << (rep.crowding_inequalities_ok ? "ok" : "FAIL") << "\n";
        std::cout << "quadratic comparison holds for 81..10^6: " << (rep.quadratic_range_ok ? "ok" : "FAIL")
                  << " (boundary q=" << rep.quadratic_boundary_q << ")\n";
        std::cout << "pigeonhole chain: " << (rep.pigeonhole_chain_ok ? "ok" : "FAIL") << "\n";
        std::cout << "big threshold: " << rep.big_threshold << ", scan palette floor: " << rep.scan_palette_floor
                  << ", main palette floor: " << rep.main_palette_floor << "\n";
      }
      bool all = rep.rc4_forms_agree && rep.crowding_inequalities_ok && rep.quadratic_range_ok &&
                 rep.pigeonhole_chain_ok && rep.rc3_max == 8680;
      return all ? kExitOk : kExitDomain;
    }

    if (*generate) {
      if (gen_kind == "trunc-dodec") {
        emit_graph(aec::truncated_dodecahedron(), gen_out);
      } else if (gen_kind == "borodin") {
        emit_graph(aec::borodin_construction(gen_t), gen_out);
      } else if (gen_kind == "bunch") {
        aec::GadgetSpec spec;
        spec.t = gen_t;
        spec.parent_pad = gen_pad;
        if (gen_seed_set) {
          aec::Rng rng(gen_seed);
          std::vector<int> e(gen_t + 2, 0);
          for (int i = 1; i <= gen_t + 1; ++i) e[i] = rng.below(2);
          spec.degrees.resize(gen_t);
          for (int i = 1; i <= gen_t; ++i) spec.degrees[i - 1] = 2 + e[i] + e[i + 1];
          spec.left_end_edge = e[1] == 1;
          spec.right_end_edge = e[gen_t + 1] == 1;
        }
        emit_graph(aec::bunch_gadget(spec).graph, gen_out);
      } else if (gen_kind == "random") {
        if (!gen_seed_set) {
          std::cerr << "generate --kind random requires --seed\n";
          return kExitUsage;
        }
        emit_graph(aec::random_planar(gen_n, gen_seed, {.thin_fraction = gen_thin, .keep_two_connected = true}),
                   gen_out);
      } else {
        std::cerr << "unknown kind '" << gen_kind << "' (expected trunc-dodec, borodin, bunch, random)\n";
        return kExitUsage;
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  return kExitUsage;
}
