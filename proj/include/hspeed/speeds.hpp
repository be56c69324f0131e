#pragma once

// Labelled enumeration of hereditary classes at small n, closed-form count
// checks, entropy and index computation, and the layer classifier.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hspeed/families.hpp"
#include "hspeed/graph.hpp"
#include "hspeed/parameters.hpp"

namespace hspeed {

// ---------------------------------------------------------------------------
// Class descriptions (cache keys)

inline std::string class_description(const ClassSpec& spec) {
  if (const auto* f = std::get_if<ForbiddenSpec>(&spec)) {
    // order-independent: sorted canonical codes, hex encoded
    std::vector<std::string> keys;
    for (const Graph& g : f->forbidden) {
      std::string code = g.size() <= 10 ? canonical_code(g) : to_graph6(g);
      std::ostringstream hex;
      for (unsigned char c : code) {
        hex << "0123456789abcdef"[c >> 4] << "0123456789abcdef"[c & 15];
      }
      keys.push_back(hex.str());
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::string out = "forbidden";
    for (const auto& k : keys) out += ":" + k;
    return out;
  }
  if (const auto* b = std::get_if<BuiltinSpec>(&spec)) {
    switch (b->kind) {
      case BuiltinSpec::Kind::Bipartite: return "builtin:bipartite";
      case BuiltinSpec::Kind::CoBipartite: return "builtin:co-bipartite";
      case BuiltinSpec::Kind::Split: return "builtin:split";
      case BuiltinSpec::Kind::Chain: return "builtin:chain";
      case BuiltinSpec::Kind::Threshold: return "builtin:threshold";
      case BuiltinSpec::Kind::Eij:
        return "builtin:e" + std::to_string(b->i) + "," + std::to_string(b->j);
    }
    return "builtin:?";
  }
  return "family:" + family_token(std::get<FamilyClassSpec>(spec).family);
}

// ---------------------------------------------------------------------------
// Count cache: append-only JSON lines {"class": ..., "n": ..., "count": "..."}

class CountCache {
 public:
  CountCache() = default;
  explicit CountCache(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto j = nlohmann::json::parse(line);
        const std::string cls = j.at("class").get<std::string>();
        const int n = j.at("n").get<int>();
        const std::uint64_t count = std::stoull(j.at("count").get<std::string>());
        mem_[{cls, n}] = count;
      } catch (const std::exception&) {
        std::cerr << "warning: ignoring corrupt cache line: " << line << "\n";
      }
    }
  }

  std::optional<std::uint64_t> lookup(const std::string& cls, int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mem_.find({cls, n});
    if (it == mem_.end()) return std::nullopt;
    return it->second;
  }

  void store(const std::string& cls, int n, std::uint64_t count) {
    std::lock_guard<std::mutex> lock(mu_);
    if (mem_.count({cls, n})) return;
    mem_[{cls, n}] = count;
    if (path_.empty()) return;
    nlohmann::json j{{"class", cls}, {"n", n}, {"count", std::to_string(count)}};
    std::ofstream out(path_, std::ios::app);
    out << j.dump() << "\n";
  }

 private:
  std::map<std::pair<std::string, int>, std::uint64_t> mem_;
  std::string path_;
  std::mutex mu_;
};

// ---------------------------------------------------------------------------
// Closed-form counts

struct FormulaCount {
  std::uint64_t value = 0;
  bool lower_bound = false;  // M: floor(n/2)! only bounds the count below
  bool small_n_flag = false; // R: the n+1 formula needs n >= 3
};

inline FormulaCount formula_count(FamilyId f, int n) {
  if (n < 1) throw std::invalid_argument("formula_count needs n >= 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  // complement bijection: the complemented class has the same counts
  switch (f.base) {
    case Family::S: return {(std::uint64_t{1} << n) - un, false, false};
    case Family::B: return {std::uint64_t{1} << (n - 1), false, false};
    case Family::Q:
      return {un * (std::uint64_t{1} << (n - 1)) - un * (un + 1) / 2 + 1, false, false};
    case Family::R: return {un + 1, false, n < 3};
    case Family::E1: return {un * (un - 1) / 2 + 1, false, false};
    case Family::M: {
      std::uint64_t fact = 1;
      for (std::uint64_t i = 2; i <= un / 2; ++i) fact *= i;
      return {fact, true, false};
    }
    default: throw std::invalid_argument("no closed-form count for this family");
  }
}

// ---------------------------------------------------------------------------
// Exhaustive labelled enumeration

namespace detail {

inline int worker_count() {
  if (const char* env = std::getenv("HSPEED_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return std::min(t, 64);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hc == 0 ? 1u : hc, 16u));
}

inline Graph graph_from_mask(int n, std::uint64_t mask) {
  Graph g(n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (mask & (std::uint64_t{1} << k)) g.add_edge(i, j);
  return g;
}

}  // namespace detail

/// Exact number of labelled n-vertex graphs in the class. Exhaustive for
/// n <= 7; named families with an exact closed form work at any n.
inline std::uint64_t count_labelled(const ClassSpec& spec, int n, CountCache* cache = nullptr) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  const std::string key = class_description(spec);
  if (cache)
    if (auto hit = cache->lookup(key, n)) return *hit;

  std::uint64_t result;
  if (n > 7) {
    const auto* f = std::get_if<FamilyClassSpec>(&spec);
    if (!f) throw std::invalid_argument("exhaustive enumeration is capped at n <= 7");
    const FormulaCount fc = formula_count(f->family, n);
    if (fc.lower_bound || fc.small_n_flag)
      throw std::invalid_argument("no exact closed form for this family at this n");
    result = fc.value;
  } else {
    const int pairs = n * (n - 1) / 2;
    const std::uint64_t total = std::uint64_t{1} << pairs;
    const int workers = static_cast<int>(std::min<std::uint64_t>(detail::worker_count(), total));
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = total * w / workers;
      const std::uint64_t hi = total * (w + 1) / workers;
      threads.emplace_back([&, w, lo, hi] {
        std::uint64_t c = 0;
        for (std::uint64_t mask = lo; mask < hi; ++mask)
          if (is_member(spec, detail::graph_from_mask(n, mask))) ++c;
        partial[static_cast<std::size_t>(w)] = c;
      });
    }
    for (auto& t : threads) t.join();
    result = 0;
    for (std::uint64_t c : partial) result += c;
  }

  if (cache) cache->store(key, n, result);
  return result;
}

// ---------------------------------------------------------------------------
// Entropy

inline double entropy_from_count(std::uint64_t count, int n) {
  if (n < 2) throw std::invalid_argument("entropy needs n >= 2");
  if (count == 0) throw std::invalid_argument("entropy of an empty level is undefined");
  return std::log2(static_cast<double>(count)) / (n * (n - 1) / 2.0);
}

inline double entropy_estimate(const ClassSpec& spec, int n, CountCache* cache = nullptr) {
  return entropy_from_count(count_labelled(spec, n, cache), n);
}

// ---------------------------------------------------------------------------
// Index k(P) for finitely-forbidden classes

/// Largest i+j such that no forbidden graph lies in E(i,j). A graph on v
/// vertices always lies in E(v,0), so the search stops by vmax+1.
inline int index_of(const ForbiddenSpec& spec) {
  if (spec.forbidden.empty()) throw std::invalid_argument("empty forbidden set: all graphs");
  int vmax = 0;
  for (const Graph& h : spec.forbidden) vmax = std::max(vmax, h.size());

  int best = 0;
  for (int k = 1; k <= vmax + 1; ++k) {
    bool good_k = false;
    for (int i = 0; i <= k && !good_k; ++i) {
      const int j = k - i;
      bool avoids_all = true;
      for (const Graph& h : spec.forbidden)
        if (detail::eij_member(h, i, j)) {
          avoids_all = false;
          break;
        }
      good_k = avoids_all;
    }
    if (!good_k) break;  // containment of E(i,j) is downward closed in i+j
    best = k;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Layer classifier

enum class Layer { constant, polynomial, exponential, superexp_entropy0, positive_entropy };

inline const char* layer_name(Layer l) {
  switch (l) {
    case Layer::constant: return "constant";
    case Layer::polynomial: return "polynomial";
    case Layer::exponential: return "exponential";
    case Layer::superexp_entropy0: return "superexponential-entropy-0";
    case Layer::positive_entropy: return "positive-entropy";
  }
  return "?";
}

struct LayerVerdict {
  Layer layer = Layer::constant;
  int index = 0;        // k(P), set for positive-entropy verdicts
  double entropy = 0.0; // 1 - 1/k for positive-entropy, 0 otherwise
  bool evidence_only = false;
  // (minimal class or obstruction name, graph6 of the forbidden graph that
  // keeps the class from containing it)
  std::vector<std::pair<std::string, std::string>> witnesses;
};

namespace detail {

inline const std::vector<std::string>& constant_gate() {
  static const std::vector<std::string> v{"r", "e1", "co-r", "co-e1"};
  return v;
}
inline const std::vector<std::string>& polynomial_gate() {
  static const std::vector<std::string> v{"s", "q", "b", "m", "co-s", "co-q", "co-b", "co-m"};
  return v;
}
inline const std::vector<std::string>& exponential_gate() {
  static const std::vector<std::string> v{"m",    "mbc",      "z",    "co-m", "co-mbc",
                                          "co-z", "mstar", "co-mstar", "zstar"};
  return v;
}

/// For each family token, the first forbidden graph inside the family's
/// hereditary closure, if any. The class contains the whole family exactly
/// when no such graph exists.
inline std::optional<std::vector<std::pair<std::string, std::string>>> gate_witnesses(
    const ForbiddenSpec& spec, const std::vector<std::string>& tokens) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& t : tokens) {
    const FamilyId f = *parse_family(t);
    const Graph* killer = nullptr;
    for (const Graph& h : spec.forbidden)
      if (family_member(f, h)) {
        killer = &h;
        break;
      }
    if (!killer) return std::nullopt;  // the class contains this family
    out.emplace_back(t, to_graph6(*killer));
  }
  return out;
}

inline LayerVerdict classify_forbidden(const ForbiddenSpec& spec) {
  LayerVerdict v;
  if (auto w = gate_witnesses(spec, constant_gate())) {
    v.layer = Layer::constant;
    v.witnesses = *w;
    return v;
  }
  if (auto w = gate_witnesses(spec, polynomial_gate())) {
    v.layer = Layer::polynomial;
    v.witnesses = *w;
    return v;
  }
  if (auto w = gate_witnesses(spec, exponential_gate())) {
    v.layer = Layer::exponential;
    v.witnesses = *w;
    return v;
  }
  // entropy 0 exactly when the class contains none of the bipartite,
  // co-bipartite and split classes
  const Graph* bip = nullptr;
  const Graph* cobip = nullptr;
  const Graph* split = nullptr;
  for (const Graph& h : spec.forbidden) {
    if (!bip && is_bipartite(h)) bip = &h;
    if (!cobip && is_bipartite(complement(h))) cobip = &h;
    if (!split && is_split_graph(h)) split = &h;
  }
  if (bip && cobip && split) {
    v.layer = Layer::superexp_entropy0;
    v.witnesses = {{"bipartite", to_graph6(*bip)},
                   {"co-bipartite", to_graph6(*cobip)},
                   {"split", to_graph6(*split)}};
    return v;
  }
  v.layer = Layer::positive_entropy;
  v.index = index_of(spec);
  v.entropy = 1.0 - 1.0 / v.index;
  return v;
}

/// Evidence-only chain for classes given by a recognizer rather than a
/// finite obstruction set: tracks the growth of the parameters named by
/// the jump theorems over all members with 4 <= n <= 6 and treats a full
/// plateau as "bounded".
inline LayerVerdict classify_by_evidence(const ClassSpec& spec) {
  // bipartite, co-bipartite, split and the E(i,j) unions are the minimal
  // positive-entropy classes themselves; a parameter plateau over n <= 6
  // cannot witness their unbounded VC-dimension, so answer directly
  if (const auto* b = std::get_if<BuiltinSpec>(&spec)) {
    int k = 0;
    switch (b->kind) {
      case BuiltinSpec::Kind::Bipartite:
      case BuiltinSpec::Kind::CoBipartite:
      case BuiltinSpec::Kind::Split: k = 2; break;
      case BuiltinSpec::Kind::Eij: k = b->i + b->j; break;
      default: break;
    }
    if (k >= 2) {
      LayerVerdict v;
      v.evidence_only = true;
      v.layer = Layer::positive_entropy;
      v.index = k;
      v.entropy = 1.0 - 1.0 / k;
      return v;
    }
  }

  int simdiff[3] = {0, 0, 0};
  int cdeg[3] = {0, 0, 0};
  int cmatch[3] = {0, 0, 0};
  int nd[3] = {0, 0, 0};
  int vc[3] = {0, 0, 0};
  for (int n = 4; n <= 6; ++n) {
    const int slot = n - 4;
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const Graph g = graph_from_mask(n, mask);
      if (!is_member(spec, g)) continue;
      simdiff[slot] = std::max(simdiff[slot], similarity_difference(g));
      cdeg[slot] = std::max(cdeg[slot], complex_degree(g));
      cmatch[slot] = std::max(cmatch[slot], c_matching_number(g));
      nd[slot] = std::max(nd[slot], neighbourhood_diversity(g));
      vc[slot] = std::max(vc[slot], vc_closed(g).first);
    }
  }
  auto plateau = [](const int* v) { return v[0] == v[1] && v[1] == v[2]; };

  LayerVerdict v;
  v.evidence_only = true;
  if (plateau(simdiff)) {
    v.layer = Layer::constant;
  } else if (plateau(cdeg) && plateau(cmatch)) {
    v.layer = Layer::polynomial;
  } else if (plateau(nd)) {
    v.layer = Layer::exponential;
  } else if (plateau(vc)) {
    v.layer = Layer::superexp_entropy0;
  } else {
    v.layer = Layer::positive_entropy;
    if (const auto* b = std::get_if<BuiltinSpec>(&spec)) {
      int k = 0;
      switch (b->kind) {
        case BuiltinSpec::Kind::Bipartite:
        case BuiltinSpec::Kind::CoBipartite:
        case BuiltinSpec::Kind::Split: k = 2; break;
        case BuiltinSpec::Kind::Eij: k = b->i + b->j; break;
        default: break;
      }
      if (k >= 2) {
        v.index = k;
        v.entropy = 1.0 - 1.0 / k;
      }
    }
  }
  return v;
}

}  // namespace detail

inline LayerVerdict classify_layer(const ClassSpec& spec) {
  if (const auto* f = std::get_if<ForbiddenSpec>(&spec)) return detail::classify_forbidden(*f);
  return detail::classify_by_evidence(spec);
}

// ---------------------------------------------------------------------------
// Proof-formula spot checks

/// Count of labelled n-vertex graphs with neighbourhood diversity <= k,
/// checked against the k^n * 2^(C(k,2)+k) bound.
inline bool nd_count_bound_check(int k, int n, std::uint64_t* count_out = nullptr,
                                 std::uint64_t* bound_out = nullptr) {
  if (k < 1 || k > 3 || n < 1 || n > 7) throw std::invalid_argument("nd bound check caps: k <= 3, n <= 7");
  std::uint64_t count = 0;
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask)
    if (neighbourhood_diversity(detail::graph_from_mask(n, mask)) <= k) ++count;
  std::uint64_t bound = 1;
  for (int i = 0; i < n; ++i) bound *= static_cast<std::uint64_t>(k);
  bound <<= k * (k - 1) / 2 + k;
  if (count_out) *count_out = count;
  if (bound_out) *bound_out = bound;
  return count <= bound;
}

/// Count of labelled n-vertex graphs having a similarity class of size
/// >= n-c, reported against the C(n,c) * 2^(C(c+1,2)+1) expression. The
/// expression is a bound candidate; callers compare, never assume equality.
inline std::pair<std::uint64_t, std::uint64_t> polynomial_count_check(int c, int n) {
  if (c < 0 || c > 2 || n < 1 || n > 7) throw std::invalid_argument("polynomial check caps: c <= 2, n <= 7");
  std::uint64_t count = 0;
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask)
    if (largest_similarity_class(detail::graph_from_mask(n, mask)) >= n - c) ++count;
  std::uint64_t binom = 1;
  for (int i = 0; i < c; ++i) binom = binom * static_cast<std::uint64_t>(n - i) / (i + 1);
  const std::uint64_t expr = binom << ((c + 2) * (c + 1) / 2 + 1);
  return {expr, count};
}

// ---------------------------------------------------------------------------
// Aggregate report

struct SpeedReport {
  std::string class_description;
  std::map<int, std::uint64_t> counts;
  std::map<int, double> entropy_estimates;
  // n -> (closed-form value, enumerated value), for named families only
  std::map<int, std::pair<std::uint64_t, std::uint64_t>> formula_deltas;
};

inline SpeedReport speed_report(const ClassSpec& spec, int n_max, CountCache* cache = nullptr) {
  SpeedReport r;
  r.class_description = class_description(spec);
  for (int n = 1; n <= n_max; ++n) {
    const std::uint64_t c = count_labelled(spec, n, cache);
    r.counts[n] = c;
    if (n >= 2 && c > 0) r.entropy_estimates[n] = entropy_from_count(c, n);
    if (const auto* f = std::get_if<FamilyClassSpec>(&spec)) {
      try {
        r.formula_deltas[n] = {formula_count(f->family, n).value, c};
      } catch (const std::invalid_argument&) {
        // no closed form for this family
      }
    }
  }
  return r;
}

}  // namespace hspeed
