#pragma once

// JSON and CSV serialization for the CLI. Conventions:
//   - rationals as "num/den" strings, always with an explicit denominator,
//   - finite field elements as arrays of base-p digits, low degree first,
//   - truncated Witt elements as "[a0,a1] mod p^prec" strings,
//   - quaternion matrix entries as [[a0,a1],[b0,b1]] digit pairs.

#include <json.hpp>

#include <sstream>
#include <string>

#include "ssmass/dieudonne.hpp"
#include "ssmass/lifting.hpp"
#include "ssmass/mass.hpp"

namespace ssmass {

using json = nlohmann::json;

inline std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << rat_num(r) << "/" << rat_den(r);
  return os.str();
}

inline std::string int_str(const Int& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline json fp2_json(const Fp2& v) { return json::array({v.c0, v.c1}); }

inline json ffelem_json(const FFElem& e) {
  json a = json::array();
  for (auto d : e.c) a.push_back(d);
  return a;
}

inline std::string unram_str(const UnramElem& e) {
  std::ostringstream os;
  os << "[" << e.a0 << "," << e.a1 << "] mod " << e.R->pm;
  return os.str();
}

inline json fmat_json(const FMat& m) {
  json rows = json::array();
  for (unsigned i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (unsigned j = 0; j < m.cols; ++j) row.push_back(fp2_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json quatmat_json(const QuatMat& m) {
  json rows = json::array();
  for (unsigned i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (unsigned j = 0; j < m.cols; ++j) {
      const QuatElem& e = m.at(i, j);
      row.push_back(json::array({json::array({e.a.a0, e.a.a1}), json::array({e.b.a0, e.b.a1})}));
    }
    rows.push_back(row);
  }
  return {{"p", m.C->p}, {"pi_prec", m.C->pi_prec}, {"entries", rows}};
}

inline json xiclass_json(const XiClass& xc) {
  EndoOrderDesc d = residue_algebra(xc);
  json j{{"case", xicase_name(xc.tag)},
         {"degree", xc.degree},
         {"b0prime_dim", d.dim},
         {"stabilizer_order", sl2_line_stabilizer_order(xc)}};
  if (xc.has_minpoly) {
    j["alpha"] = json::array({xc.alpha[0], xc.alpha[1]});
    j["beta"] = json::array({xc.beta[0], xc.beta[1]});
  } else {
    j["alpha"] = nullptr;
    j["beta"] = nullptr;
  }
  return j;
}

inline json mass_json(const MassResult& m) {
  return {{"p", m.p}, {"value", rational_str(m.value)}, {"provenance", m.provenance}};
}

inline json lift_json(const LiftResult& r, const FMat& phibar) {
  json obs = json::array();
  for (const auto& ob : r.obstructions)
    obs.push_back({{"step", ob.step},
                   {"witness", ob.witness},
                   {"resolved", ob.resolved},
                   {"retries", ob.retries}});
  return {{"ok", r.ok},
          {"pi_prec", r.pi_prec},
          {"defect_valuation", r.defect_valuation},
          {"steps", r.steps},
          {"phibar", fmat_json(phibar)},
          {"lift", quatmat_json(r.T)},
          {"obstructions", obs}};
}

inline json census_row_json(const CensusRow& r) {
  json j{{"degree", r.degree},
         {"count", int_str(r.count)},
         {"mass", rational_str(r.mass)}};
  j["orbit_size"] = r.orbit_size ? json(int_str(*r.orbit_size)) : json(nullptr);
  return j;
}

inline json census_json(uint64_t p, unsigned m, const std::vector<CensusRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(census_row_json(r));
  return {{"p", p}, {"m", m}, {"rows", arr}};
}

inline std::string census_csv(const std::vector<CensusRow>& rows) {
  std::ostringstream os;
  os << "degree,count,mass_num,mass_den,orbit_size\n";
  for (const auto& r : rows) {
    os << r.degree << "," << r.count << "," << rat_num(r.mass) << "," << rat_den(r.mass) << ",";
    if (r.orbit_size) os << *r.orbit_size;
    os << "\n";
  }
  return os.str();
}

inline json endo_report_json(const EndoAgreementReport& rep) {
  json ws = json::array();
  for (const auto& w : rep.mismatches)
    ws.push_back({{"tbar", w.tbar}, {"lattice_ok", w.lattice_ok}, {"algebra_ok", w.algebra_ok}});
  return {{"p", rep.p},
          {"degree", rep.degree},
          {"case", rep.xi_case},
          {"checked", rep.checked},
          {"agreed", rep.agreed},
          {"mismatches", ws}};
}

}  // namespace ssmass
