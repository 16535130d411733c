#pragma once

#include <json.hpp>

#include "aec/constants.hpp"
#include "aec/discharging.hpp"
#include "aec/plane_graph.hpp"

namespace aec {

inline constexpr int kSchemaVersion = 1;

inline nlohmann::json to_json(const ChargeEntity& e) {
  nlohmann::json j;
  switch (e.kind) {
    case ChargeEntity::Kind::vertex: j["kind"] = "vertex"; j["id"] = e.id; break;
    case ChargeEntity::Kind::face: j["kind"] = "face"; j["id"] = e.id; break;
    case ChargeEntity::Kind::bank: j["kind"] = "bank"; break;
  }
  return j;
}

inline nlohmann::json ledger_to_json(const ChargeLedger& led) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["vertex_charges2"] = led.vertex_charge2;
  j["face_charges2"] = led.face_charge2;
  j["bank2"] = led.bank2;
  j["total2"] = led.total2();
  nlohmann::json log = nlohmann::json::array();
  for (const ChargeTransfer& t : led.log) {
    nlohmann::json e;
    e["rule"] = t.rule;
    e["source"] = to_json(t.source);
    e["target"] = to_json(t.target);
    e["amount2"] = t.amount2;
    log.push_back(std::move(e));
  }
  j["transfers"] = std::move(log);
  return j;
}

inline nlohmann::json witness_to_json(const ConfigurationWitness& w) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = w.kind_name();
  j["vertex"] = w.vertex;
  switch (w.kind) {
    case ConfigurationWitness::Kind::rc1: j["degree_sum"] = w.degree_sum; break;
    case ConfigurationWitness::Kind::rc2: {
      static const char* names[] = {"i", "ii", "iii", "iv"};
      j["class"] = names[w.rc2_class - 1];
      j["counted"] = w.counted;
      break;
    }
    case ConfigurationWitness::Kind::rc3:
    case ConfigurationWitness::Kind::rc4:
      j["nf"] = w.nf;
      j["ns"] = w.ns;
      break;
  }
  return j;
}

inline nlohmann::json constants_report_to_json(const ConstantsReport& r) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["rc3_max"] = r.rc3_max;
  j["rc3_argmax"] = {{"ns", r.rc3_argmax_ns}, {"s", r.rc3_argmax_s}};
  j["rc3_objective_origin"] = r.rc3_objective_origin;
  j["rc4_max"] = r.rc4_max;
  j["rc4_argmax"] = {{"ns", r.rc4_argmax_ns}, {"s", r.rc4_argmax_s}};
  j["rc4_methods_relative_gap"] = r.rc4_methods_relative_gap;
  j["rc4_forms_agree"] = r.rc4_forms_agree;
  j["crowding_inequalities_ok"] = r.crowding_inequalities_ok;
  j["quadratic_range_ok"] = r.quadratic_range_ok;
  j["quadratic_boundary_q"] = r.quadratic_boundary_q;
  j["pigeonhole_chain_ok"] = r.pigeonhole_chain_ok;
  j["big_threshold"] = r.big_threshold;
  j["scan_palette_floor"] = r.scan_palette_floor;
  j["main_palette_floor"] = r.main_palette_floor;
  return j;
}

}  // namespace aec
