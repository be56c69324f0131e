// hspeed: graph parameters, pattern families, witness extraction and
// hereditary-class speed tools in one binary.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hspeed/extraction.hpp"
#include "hspeed/families.hpp"
#include "hspeed/graph.hpp"
#include "hspeed/parameters.hpp"
#include "hspeed/speeds.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

hspeed::Graph parse_g6_or_throw(const std::string& s) {
  try {
    return hspeed::parse_graph6(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("malformed graph6 '") + s + "': " + e.what());
  }
}

hspeed::FamilyId parse_family_or_throw(const std::string& token) {
  auto f = hspeed::parse_family(token);
  if (!f) throw UsageError("unknown family: " + token);
  return *f;
}

hspeed::ClassSpec parse_class_spec(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("class spec needs a 'kind:' prefix: " + s);
  const std::string kind = s.substr(0, colon);
  const std::string rest = s.substr(colon + 1);
  if (kind == "forbidden") {
    std::vector<hspeed::Graph> graphs;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) graphs.push_back(parse_g6_or_throw(item));
    }
    if (graphs.empty()) throw UsageError("forbidden spec needs at least one graph6 string");
    return hspeed::make_forbidden(std::move(graphs));
  }
  if (kind == "builtin") {
    using Kind = hspeed::BuiltinSpec::Kind;
    if (rest == "bipartite") return hspeed::BuiltinSpec{Kind::Bipartite, 0, 0};
    if (rest == "co-bipartite") return hspeed::BuiltinSpec{Kind::CoBipartite, 0, 0};
    if (rest == "split") return hspeed::BuiltinSpec{Kind::Split, 0, 0};
    if (rest == "chain") return hspeed::BuiltinSpec{Kind::Chain, 0, 0};
    if (rest == "threshold") return hspeed::BuiltinSpec{Kind::Threshold, 0, 0};
    if (rest.size() > 1 && rest[0] == 'e') {
      const auto comma = rest.find(',');
      if (comma != std::string::npos) {
        const int i = std::atoi(rest.substr(1, comma - 1).c_str());
        const int j = std::atoi(rest.substr(comma + 1).c_str());
        if (i >= 0 && j >= 0 && i + j > 0) return hspeed::BuiltinSpec{Kind::Eij, i, j};
      }
    }
    throw UsageError("unknown builtin class: " + rest);
  }
  if (kind == "family") return hspeed::FamilyClassSpec{parse_family_or_throw(rest)};
  throw UsageError("unknown class spec kind: " + kind);
}

json params_json(const hspeed::ParameterReport& r) {
  return json{{"alpha", r.alpha},
              {"omega", r.omega},
              {"complex_number", r.complex_number},
              {"max_degree", r.max_degree},
              {"max_codegree", r.max_codegree},
              {"complex_degree", r.complex_degree},
              {"matching", r.matching},
              {"co_matching", r.co_matching},
              {"c_matching", r.c_matching},
              {"nd", r.nd},
              {"largest_class", r.largest_class},
              {"smallest_class", r.smallest_class},
              {"similarity_difference", r.similarity_difference},
              {"vc_closed", r.vc_closed},
              {"vc_open", r.vc_open}};
}

void print_params_table(const hspeed::ParameterReport& r) {
  const json j = params_json(r);
  for (auto it = j.begin(); it != j.end(); ++it)
    std::cout << it.key() << " " << it.value().dump() << "\n";
}

json extraction_json(const hspeed::ExtractionResult& r) {
  if (!r.found) return json{{"failure", true}, {"stage", r.failure_stage}};
  return json{{"kind", r.kind}, {"size", r.size}, {"vertices", r.embedding}};
}

json verdict_json(const hspeed::LayerVerdict& v) {
  json witnesses = json::array();
  for (const auto& [name, g6] : v.witnesses) witnesses.push_back(json{{"class", name}, {"graph6", g6}});
  json j{{"layer", hspeed::layer_name(v.layer)},
         {"evidence_only", v.evidence_only},
         {"witnesses", witnesses}};
  if (v.layer == hspeed::Layer::positive_entropy) {
    j["index"] = v.index;
    j["entropy"] = v.entropy;
  }
  return j;
}

hspeed::CountCache make_cache(const std::string& flag_path, bool disabled) {
  if (disabled) return hspeed::CountCache{};
  if (!flag_path.empty()) return hspeed::CountCache{flag_path};
  if (const char* env = std::getenv("HSPEED_CACHE")) return hspeed::CountCache{env};
  return hspeed::CountCache{};
}

int run(int argc, char** argv) {
  CLI::App app{"hereditary-class speed toolkit"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "one JSON object per line instead of text");

  // params
  auto* params = app.add_subcommand("params", "graph parameters for graph6 input");
  std::string params_input;
  params->add_option("graph", params_input, "graph6 string, @file of graph6 lines, or - for stdin");

  // generate
  auto* gen = app.add_subcommand("generate", "emit a named family member as graph6");
  std::string gen_family;
  int gen_n = 0;
  bool gen_co = false;
  gen->add_option("family", gen_family)->required();
  gen->add_option("n", gen_n)->required();
  gen->add_flag("--co", gen_co, "complement the generated graph");

  // extract
  auto* ext = app.add_subcommand("extract", "run a witness extraction procedure");
  std::string ext_proc, ext_graph;
  int ext_s = 2, ext_t = 2, ext_p = 2, ext_n = 2;
  ext->add_option("procedure", ext_proc,
                  "complex | bipartite-matching | matching | nd-bipartite | nd-general | vc")
      ->required();
  ext->add_option("graph", ext_graph, "host graph, graph6")->required();
  ext->add_option("--s", ext_s);
  ext->add_option("--t", ext_t);
  ext->add_option("--p", ext_p);
  ext->add_option("--n", ext_n);

  // count
  auto* cnt = app.add_subcommand("count", "labelled count of a hereditary class at size n");
  std::string cnt_spec, cache_path;
  int cnt_n = 0;
  bool cnt_formula = false, cnt_csv = false, no_cache = false;
  cnt->add_option("class", cnt_spec)->required();
  cnt->add_option("n", cnt_n)->required();
  cnt->add_flag("--formula", cnt_formula, "also report the closed-form value");
  cnt->add_flag("--csv", cnt_csv, "emit n,count rows for all sizes up to n");
  cnt->add_option("--cache", cache_path, "JSON-lines count cache path");
  cnt->add_flag("--no-cache", no_cache, "ignore HSPEED_CACHE");

  // classify
  auto* cls = app.add_subcommand("classify", "speed layer of a hereditary class");
  std::string cls_spec;
  cls->add_option("class", cls_spec)->required();

  // index
  auto* idx = app.add_subcommand("index", "index k and entropy 1-1/k of a forbidden-set class");
  std::string idx_spec;
  idx->add_option("class", idx_spec)->required();

  // universality
  auto* uni = app.add_subcommand("universality", "check a family member hosts all class members");
  std::string uni_family;
  int uni_n = 0;
  uni->add_option("family", uni_family)->required();
  uni->add_option("n", uni_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (params->parsed()) {
    std::vector<std::string> lines;
    if (params_input.empty() || params_input == "-") {
      std::string line;
      while (std::getline(std::cin, line))
        if (!line.empty()) lines.push_back(line);
    } else if (params_input[0] == '@') {
      std::ifstream in(params_input.substr(1));
      if (!in) throw UsageError("cannot open " + params_input.substr(1));
      std::string line;
      while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    } else {
      lines.push_back(params_input);
    }
    for (const std::string& line : lines) {
      const auto r = hspeed::compute_parameters(parse_g6_or_throw(line));
      if (as_json)
        std::cout << params_json(r).dump() << "\n";
      else
        print_params_table(r);
    }
    return 0;
  }

  if (gen->parsed()) {
    hspeed::FamilyId f = parse_family_or_throw(gen_family);
    if (gen_co) f.complemented = !f.complemented;
    std::cout << hspeed::to_graph6(hspeed::generate(f, gen_n)) << "\n";
    return 0;
  }

  if (ext->parsed()) {
    const hspeed::Graph g = parse_g6_or_throw(ext_graph);
    hspeed::ExtractionResult r;
    if (ext_proc == "complex") {
      r = hspeed::extract_complex(g, ext_n);
    } else if (ext_proc == "bipartite-matching" || ext_proc == "nd-bipartite") {
      const auto side = hspeed::bipartition_side(g);
      if (!side) throw UsageError("procedure needs a bipartite host graph");
      const auto bp =
          hspeed::make_bipartition(g, *side, hspeed::full_set(g.size()) & ~*side);
      r = ext_proc == "nd-bipartite" ? hspeed::extract_nd_bipartite(bp, ext_p)
                                     : hspeed::extract_from_bipartite_matching(bp, ext_s, ext_t);
    } else if (ext_proc == "matching") {
      r = hspeed::extract_from_matching(g, ext_s, ext_t, ext_p);
    } else if (ext_proc == "nd-general") {
      r = hspeed::extract_nd_general(g, ext_p);
    } else if (ext_proc == "vc") {
      r = hspeed::extract_vc(g, ext_n);
    } else {
      throw UsageError("unknown procedure: " + ext_proc);
    }
    std::cout << extraction_json(r).dump() << "\n";
    return r.found ? 0 : 1;
  }

  if (cnt->parsed()) {
    const auto spec = parse_class_spec(cnt_spec);
    auto cache = make_cache(cache_path, no_cache);
    if (cnt_csv) {
      std::cout << "n,count\n";
      for (int n = 1; n <= cnt_n; ++n)
        std::cout << n << "," << hspeed::count_labelled(spec, n, &cache) << "\n";
      return 0;
    }
    const std::uint64_t count = hspeed::count_labelled(spec, cnt_n, &cache);
    std::optional<hspeed::FormulaCount> fc;
    if (cnt_formula) {
      const auto* f = std::get_if<hspeed::FamilyClassSpec>(&spec);
      if (!f) throw UsageError("--formula needs a family: class spec");
      fc = hspeed::formula_count(f->family, cnt_n);
    }
    if (as_json) {
      json j{{"class", hspeed::class_description(spec)},
             {"n", cnt_n},
             {"count", std::to_string(count)}};
      if (fc) {
        j["formula"] = std::to_string(fc->value);
        j["formula_is_lower_bound"] = fc->lower_bound;
      }
      std::cout << j.dump() << "\n";
    } else {
      std::cout << count;
      if (fc) std::cout << " (formula " << (fc->lower_bound ? ">= " : "") << fc->value << ")";
      std::cout << "\n";
    }
    return 0;
  }

  if (cls->parsed()) {
    const auto v = hspeed::classify_layer(parse_class_spec(cls_spec));
    if (as_json) {
      std::cout << verdict_json(v).dump() << "\n";
    } else {
      std::cout << "layer: " << hspeed::layer_name(v.layer);
      if (v.layer == hspeed::Layer::positive_entropy)
        std::cout << " k=" << v.index << " entropy=" << v.entropy;
      if (v.evidence_only) std::cout << " (evidence only)";
      std::cout << "\n";
      for (const auto& [name, g6] : v.witnesses)
        std::cout << "  excludes " << name << " via " << g6 << "\n";
    }
    return 0;
  }

  if (idx->parsed()) {
    const auto spec = parse_class_spec(idx_spec);
    const auto* f = std::get_if<hspeed::ForbiddenSpec>(&spec);
    if (!f) throw UsageError("index needs a forbidden: class spec");
    const int k = hspeed::index_of(*f);
    const double entropy = k >= 1 ? 1.0 - 1.0 / k : 0.0;
    if (as_json)
      std::cout << json{{"k", k}, {"entropy", entropy}}.dump() << "\n";
    else
      std::cout << "k=" << k << " entropy=" << entropy << "\n";
    return 0;
  }

  if (uni->parsed()) {
    const auto r = hspeed::check_universality(parse_family_or_throw(uni_family), uni_n);
    if (as_json) {
      json j{{"family", hspeed::family_token(r.family)},
             {"n", r.n},
             {"members_checked", r.members_checked},
             {"pass", r.pass}};
      if (!r.pass) j["counterexample"] = hspeed::to_graph6(*r.counterexample);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << (r.pass ? "pass" : "fail") << " (" << r.members_checked
                << " members checked)";
      if (!r.pass) std::cout << " counterexample " << hspeed::to_graph6(*r.counterexample);
      std::cout << "\n";
    }
    return r.pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
