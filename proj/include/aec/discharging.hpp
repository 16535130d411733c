#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aec/plane_graph.hpp"

namespace aec {

// Charges live on the half-integer lattice; everything below stores doubled
// values so the accounting stays exact.

struct ChargeEntity {
  enum class Kind { vertex, face, bank };
  Kind kind = Kind::bank;
  int id = -1;

  static ChargeEntity vertex(int v) { return {Kind::vertex, v}; }
  static ChargeEntity face(int f) { return {Kind::face, f}; }
  static ChargeEntity bank() { return {Kind::bank, -1}; }

  friend bool operator==(const ChargeEntity&, const ChargeEntity&) = default;
};

struct ChargeTransfer {
  ChargeEntity source;
  ChargeEntity target;
  long long amount2 = 0;  // doubled
  std::string rule;
};

struct ChargeLedger {
  std::vector<long long> vertex_charge2;
  std::vector<long long> face_charge2;
  long long bank2 = 0;
  std::vector<ChargeTransfer> log;

  long long total2() const {
    long long t = bank2;
    for (long long x : vertex_charge2) t += x;
    for (long long x : face_charge2) t += x;
    return t;
  }

  long long& slot(const ChargeEntity& e) {
    switch (e.kind) {
      case ChargeEntity::Kind::vertex: return vertex_charge2[e.id];
      case ChargeEntity::Kind::face: return face_charge2[e.id];
      case ChargeEntity::Kind::bank: return bank2;
    }
    throw std::logic_error("bad entity");
  }

  void transfer(const ChargeEntity& from, const ChargeEntity& to, long long amount2, std::string rule) {
    slot(from) -= amount2;
    slot(to) += amount2;
    log.push_back({from, to, amount2, std::move(rule)});
  }
};

/// d(v) - 6 on vertices, 2*len(f) - 6 on faces, empty bank; the total is -12
/// for any connected plane graph by Euler's formula.
inline ChargeLedger initial_charges(const PlaneGraph& g) {
  if (!g.is_connected()) throw std::invalid_argument("initial_charges: graph must be connected");
  ChargeLedger led;
  led.vertex_charge2.resize(g.vertex_count());
  led.face_charge2.resize(g.face_count());
  for (int v = 0; v < g.vertex_count(); ++v) led.vertex_charge2[v] = 2LL * (g.degree(v) - 6);
  for (int f = 0; f < g.face_count(); ++f) led.face_charge2[f] = 2LL * (2 * g.face_length(f) - 6);
  return led;
}

/// Redistribution rules.  Amounts depend only on graph structure and the
/// bunch list, never on current charges, so the three rules commute; they are
/// applied in the fixed order R1, R2, R3.
inline ChargeLedger apply_rules(const PlaneGraph& g, const Thresholds& th, const std::vector<Bunch>& bunches) {
  th.check();
  ChargeLedger led = initial_charges(g);
  auto is_big = [&](int v) { return g.degree(v) >= th.big; };

  // bunch membership per vertex: list of (bunch index) where v is a bunch vertex
  std::vector<std::vector<int>> member_of(g.vertex_count());
  for (std::size_t i = 0; i < bunches.size(); ++i)
    for (int x : bunches[i].bunch_vertices) member_of[x].push_back(static_cast<int>(i));

  // R1
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 5) continue;
    std::vector<int> big_nbrs;
    for (int u : g.neighbors(v))
      if (is_big(u)) big_nbrs.push_back(u);
    if (!member_of[v].empty()) {
      for (int bi : member_of[v]) {
        led.transfer(ChargeEntity::vertex(bunches[bi].parent_a), ChargeEntity::vertex(v), 2, "R1");
        led.transfer(ChargeEntity::vertex(bunches[bi].parent_b), ChargeEntity::vertex(v), 2, "R1");
      }
    } else if (big_nbrs.size() == 1) {
      led.transfer(ChargeEntity::vertex(big_nbrs[0]), ChargeEntity::vertex(v), 2LL * (6 - g.degree(v)), "R1");
    } else if (big_nbrs.size() == 2) {
      led.transfer(ChargeEntity::vertex(big_nbrs[0]), ChargeEntity::vertex(v), 1, "R1");
      led.transfer(ChargeEntity::vertex(big_nbrs[1]), ChargeEntity::vertex(v), 1, "R1");
    }
  }

  // R2: per (vertex, face) pair, judged along the face boundary
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 5) continue;
    std::set<int> paid;
    for (int u : g.neighbors(v)) {
      for (int f : {g.face_of_dart(v, u), g.face_of_dart(u, v)}) {
        if (paid.count(f)) continue;
        int len = g.face_length(f);
        if (len < 4) continue;
        const auto& cyc = g.faces()[f];
        int L = static_cast<int>(cyc.size());
        bool one_big = false, two_big = false;
        for (int i = 0; i < L; ++i) {
          if (cyc[i] != v) continue;
          int before = cyc[(i - 1 + L) % L], after = cyc[(i + 1) % L];
          if (is_big(before) || is_big(after)) one_big = true;
          if (is_big(before) && is_big(after)) two_big = true;
        }
        if (!one_big) continue;
        long long amount2 = (len >= 5 && two_big) ? 4 : 2;
        led.transfer(ChargeEntity::face(f), ChargeEntity::vertex(v), amount2, "R2");
        paid.insert(f);
      }
    }
  }

  // R3
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 5) continue;
    bool qualifies = false;
    for (int u : g.neighbors(v)) {
      int f = g.face_of_dart(v, u);
      if (g.face_length(f) != 3) continue;
      const auto& cyc = g.faces()[f];
      int a = -1, b = -1;
      for (int i = 0; i < 3; ++i)
        if (cyc[i] == v) {
          a = cyc[(i + 1) % 3];
          b = cyc[(i + 2) % 3];
        }
      if (a != -1 && is_big(a) && is_big(b)) qualifies = true;
    }
    if (qualifies) led.transfer(ChargeEntity::bank(), ChargeEntity::vertex(v), 4, "R3");
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (is_big(v)) led.transfer(ChargeEntity::vertex(v), ChargeEntity::bank(), 24, "R3");

  return led;
}

struct UnhappyElement {
  ChargeEntity entity;
  long long charge2 = 0;
};

inline std::vector<UnhappyElement> unhappy_elements(const ChargeLedger& led) {
  std::vector<UnhappyElement> out;
  for (std::size_t v = 0; v < led.vertex_charge2.size(); ++v)
    if (led.vertex_charge2[v] < 0) out.push_back({ChargeEntity::vertex(static_cast<int>(v)), led.vertex_charge2[v]});
  for (std::size_t f = 0; f < led.face_charge2.size(); ++f)
    if (led.face_charge2[f] < 0) out.push_back({ChargeEntity::face(static_cast<int>(f)), led.face_charge2[f]});
  if (led.bank2 < 0) out.push_back({ChargeEntity::bank(), led.bank2});
  return out;
}

/// Replay a transfer log on top of the initial charges; used to audit that a
/// ledger equals its log.
inline ChargeLedger replay_log(const PlaneGraph& g, const std::vector<ChargeTransfer>& log) {
  ChargeLedger led = initial_charges(g);
  for (const ChargeTransfer& t : log) led.transfer(t.source, t.target, t.amount2, t.rule);
  return led;
}

// ---------------------------------------------------------------------------
// Reducible-configuration detectors

struct ConfigurationWitness {
  enum class Kind { rc1, rc2, rc3, rc4 };
  Kind kind = Kind::rc1;
  int vertex = -1;
  // rc1
  long long degree_sum = 0;
  // rc2
  int rc2_class = 0;  // 1..4 for (i)..(iv)
  std::vector<int> counted;
  // rc3 / rc4
  int nf = 0;
  int ns = 0;

  std::string kind_name() const {
    switch (kind) {
      case Kind::rc1: return "RC1";
      case Kind::rc2: return "RC2";
      case Kind::rc3: return "RC3";
      case Kind::rc4: return "RC4";
    }
    return "";
  }
};

/// Lowest-id vertex whose neighborhood degree sum stays within k.
inline std::optional<ConfigurationWitness> detect_rc1(const PlaneGraph& g, long long k) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    long long sum = 0;
    for (int u : g.neighbors(v)) sum += g.degree(u);
    if (sum <= k) {
      ConfigurationWitness w;
      w.kind = ConfigurationWitness::Kind::rc1;
      w.vertex = v;
      w.degree_sum = sum;
      return w;
    }
  }
  return std::nullopt;
}

/// A big vertex crowded by small neighbors for which it is the only big
/// neighbor.  Classes count (<=2)-, (<=3)-, (<=4)-, (<=5)-vertices against the
/// four offset thresholds.
inline std::optional<ConfigurationWitness> detect_rc2(const PlaneGraph& g, int max_degree, const Thresholds& th) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < th.big) continue;
    std::array<std::vector<int>, 4> buckets;  // class i..iv member lists
    for (int u : g.neighbors(v)) {
      if (g.degree(u) > 5) continue;
      bool unique_big = true;
      for (int x : g.neighbors(u))
        if (x != v && g.degree(x) >= th.big) unique_big = false;
      if (!unique_big) continue;
      for (int cls = 0; cls < 4; ++cls)
        if (g.degree(u) <= cls + 2) buckets[cls].push_back(u);
    }
    for (int cls = 0; cls < 4; ++cls) {
      long long need = std::max<long long>(1, static_cast<long long>(g.degree(v)) - max_degree + th.rc2_offsets[cls]);
      if (static_cast<long long>(buckets[cls].size()) >= need) {
        ConfigurationWitness w;
        w.kind = ConfigurationWitness::Kind::rc2;
        w.vertex = v;
        w.rc2_class = cls + 1;
        w.counted = buckets[cls];
        return w;
      }
    }
  }
  return std::nullopt;
}

// nf, ns of v: small (<=5) and large (>=6) neighbors that are bunch vertices
// of no bunch having v as a parent.
inline std::pair<int, int> count_nf_ns(const PlaneGraph& g, int v, const std::vector<Bunch>& bunches) {
  std::set<int> bunched;
  for (const Bunch& b : bunches)
    if (b.parent_a == v || b.parent_b == v)
      for (int x : b.bunch_vertices) bunched.insert(x);
  int nf = 0, ns = 0;
  for (int u : g.neighbors(v)) {
    if (bunched.count(u)) continue;
    if (g.degree(u) <= 5)
      ++nf;
    else
      ++ns;
  }
  return {nf, ns};
}

/// RC3 first over all big vertices, then RC4 over all very big vertices.
inline std::optional<ConfigurationWitness> detect_rc34(const PlaneGraph& g, const Thresholds& th,
                                                       const std::vector<Bunch>& bunches) {
  std::optional<ConfigurationWitness> rc4;
  for (int v = 0; v < g.vertex_count(); ++v) {
    bool big = g.degree(v) >= th.big;
    bool very_big = g.degree(v) >= g.max_degree() - th.very_big_offset;
    if (!big && !very_big) continue;
    auto [nf, ns] = count_nf_ns(g, v, bunches);
    long long score = static_cast<long long>(nf) + 2LL * ns;
    if (big && score <= th.rc3_cap) {
      ConfigurationWitness w;
      w.kind = ConfigurationWitness::Kind::rc3;
      w.vertex = v;
      w.nf = nf;
      w.ns = ns;
      return w;
    }
    if (very_big && score <= th.rc4_cap && !rc4) {
      ConfigurationWitness w;
      w.kind = ConfigurationWitness::Kind::rc4;
      w.vertex = v;
      w.nf = nf;
      w.ns = ns;
      rc4 = w;
    }
  }
  return rc4;
}

/// Scan for RC1..RC4 in order.  Under the default thresholds a 2-connected
/// plane graph always contains one of the four configurations, so a miss is a
/// bug, not a result; parametric thresholds may legitimately miss.
inline std::optional<ConfigurationWitness> structural_scan(const PlaneGraph& g, const Thresholds& th) {
  if (!validate(g).two_connected)
    throw std::invalid_argument("structural_scan: graph must be 2-connected");
  long long k = th.scan_palette(g);
  if (auto w = detect_rc1(g, k)) return w;
  if (auto w = detect_rc2(g, g.max_degree(), th)) return w;
  std::vector<Bunch> bunches = find_bunches(g, th);
  if (auto w = detect_rc34(g, th, bunches)) return w;
  return std::nullopt;
}

/// Re-derive a witness's claim from the graph and thresholds alone.
inline bool reverify_witness(const PlaneGraph& g, const Thresholds& th, const ConfigurationWitness& w) {
  switch (w.kind) {
    case ConfigurationWitness::Kind::rc1: {
      long long sum = 0;
      for (int u : g.neighbors(w.vertex)) sum += g.degree(u);
      return sum == w.degree_sum && sum <= th.scan_palette(g);
    }
    case ConfigurationWitness::Kind::rc2: {
      if (g.degree(w.vertex) < th.big || w.rc2_class < 1 || w.rc2_class > 4) return false;
      long long need = std::max<long long>(
          1, static_cast<long long>(g.degree(w.vertex)) - g.max_degree() + th.rc2_offsets[w.rc2_class - 1]);
      for (int u : w.counted) {
        if (!g.has_edge(w.vertex, u)) return false;
        if (g.degree(u) > w.rc2_class + 1) return false;
        for (int x : g.neighbors(u))
          if (x != w.vertex && g.degree(x) >= th.big) return false;
      }
      return static_cast<long long>(w.counted.size()) >= need;
    }
    case ConfigurationWitness::Kind::rc3:
    case ConfigurationWitness::Kind::rc4: {
      auto [nf, ns] = count_nf_ns(g, w.vertex, find_bunches(g, th));
      if (nf != w.nf || ns != w.ns) return false;
      long long score = static_cast<long long>(nf) + 2LL * ns;
      if (w.kind == ConfigurationWitness::Kind::rc3)
        return g.degree(w.vertex) >= th.big && score <= th.rc3_cap;
      return g.degree(w.vertex) >= g.max_degree() - th.very_big_offset && score <= th.rc4_cap;
    }
  }
  return false;
}

}  // namespace aec
