#include "qalogic/device.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qalogic::device {

BetaL beta_l(double inductance, double critical_current) {
  if (inductance <= 0 || critical_current <= 0)
    throw std::invalid_argument("beta_L needs positive inductance and critical current");
  BetaL b;
  b.value = 2.0 * std::numbers::pi * inductance * critical_current / flux_quantum;
  b.within_design_rule = b.value < beta_l_limit;
  return b;
}

double j_from_mutual(double mutual, double persistent_current, double energy_scale) {
  if (energy_scale <= 0) throw std::invalid_argument("energy scale must be positive");
  return mutual * persistent_current * persistent_current / energy_scale;
}

BiasResult h_from_bias(double bias_current, double bias_mutual, double persistent_current,
                       double energy_scale, int sign_h) {
  if (energy_scale <= 0) throw std::invalid_argument("energy scale must be positive");
  if (sign_h != 1 && sign_h != -1) throw std::invalid_argument("sign_h must be +1 or -1");
  BiasResult r;
  r.flux_wb = bias_mutual * bias_current;
  r.flux_phi0 = r.flux_wb / flux_quantum;
  r.h = sign_h * bias_mutual * bias_current * persistent_current / energy_scale;
  return r;
}

double temperature_ratio(double thermal_energy, double energy_scale) {
  if (energy_scale <= 0) throw std::invalid_argument("energy scale must be positive");
  return thermal_energy / energy_scale;
}

void to_json(nlohmann::json& out, const DeviceParams& p) {
  out = nlohmann::json::object();
  out["L"] = p.inductance;
  out["I_c"] = p.critical_current;
  if (p.persistent_current) out["I_p"] = *p.persistent_current;
  if (p.bias_mutual) out["M_bias"] = *p.bias_mutual;
  if (p.energy_scale) out["E0"] = *p.energy_scale;
  out["sign_h"] = p.sign_h;
  if (!p.bias_currents.empty()) out["I_h"] = p.bias_currents;
  auto arr = nlohmann::json::array();
  for (const auto& [key, v] : p.mutual)
    arr.push_back({{"i", key.first}, {"j", key.second}, {"v", v}});
  out["M"] = arr;
}

void from_json(const nlohmann::json& in, DeviceParams& p) {
  p = DeviceParams{};
  if (in.at("L").is_array())
    p.inductance = in.at("L").get<std::vector<double>>();
  else
    p.inductance = {in.at("L").get<double>()};
  p.critical_current = in.at("I_c").get<double>();
  if (in.contains("I_p")) p.persistent_current = in.at("I_p").get<double>();
  if (in.contains("M_bias")) p.bias_mutual = in.at("M_bias").get<double>();
  if (in.contains("E0")) p.energy_scale = in.at("E0").get<double>();
  p.sign_h = in.value("sign_h", -1);
  if (in.contains("I_h")) p.bias_currents = in.at("I_h").get<std::vector<double>>();
  if (in.contains("M")) {
    for (const auto& entry : in.at("M")) {
      int a = entry.at("i").get<int>();
      int b = entry.at("j").get<int>();
      if (a == b) throw std::invalid_argument("self mutual inductance rejected");
      if (a > b) std::swap(a, b);
      if (p.mutual.count({a, b})) throw std::invalid_argument("duplicate mutual inductance pair");
      p.mutual[{a, b}] = entry.at("v").get<double>();
    }
  }
}

DeviceReport derive(const DeviceParams& params) {
  DeviceReport rep;
  for (double l : params.inductance) rep.beta_per_qubit.push_back(beta_l(l, params.critical_current));

  if (params.persistent_current) {
    const double ip = *params.persistent_current;
    double e0 = 0.0;
    if (params.energy_scale) {
      e0 = *params.energy_scale;
    } else {
      double m_max = 0.0;
      for (const auto& [key, v] : params.mutual) {
        (void)key;
        m_max = std::max(m_max, std::abs(v));
      }
      if (m_max > 0) {
        e0 = m_max * ip * ip;
        rep.notes.push_back("E0 defaulted to |M|_max * I_p^2 so the largest |J| is 1");
      }
    }
    if (e0 > 0) {
      rep.energy_scale_used = e0;
      for (const auto& [key, v] : params.mutual)
        rep.couplings.push_back({key, j_from_mutual(v, ip, e0)});
      if (params.bias_mutual) {
        for (double ih : params.bias_currents)
          rep.fields.push_back(h_from_bias(ih, *params.bias_mutual, ip, e0, params.sign_h));
      } else if (!params.bias_currents.empty()) {
        rep.notes.push_back("bias currents given without M_bias; fields not derived");
      }
    } else {
      rep.notes.push_back("no E0 and no mutual inductances; dimensionless J/h not derived");
    }
  } else if (!params.mutual.empty() || !params.bias_currents.empty()) {
    rep.notes.push_back("I_p not provided; dimensionless J/h not derived (it has no default)");
  }
  return rep;
}

nlohmann::json DeviceReport::to_json() const {
  nlohmann::json out;
  auto betas = nlohmann::json::array();
  for (const auto& b : beta_per_qubit)
    betas.push_back({{"beta_L", b.value}, {"within_design_rule", b.within_design_rule}});
  out["beta_L"] = betas;
  if (energy_scale_used > 0) out["E0"] = energy_scale_used;
  auto js = nlohmann::json::array();
  for (const auto& [key, v] : couplings)
    js.push_back({{"i", key.first}, {"j", key.second}, {"J", v}});
  out["J"] = js;
  auto hs = nlohmann::json::array();
  for (const auto& f : fields)
    hs.push_back({{"h", f.h}, {"flux_wb", f.flux_wb}, {"flux_phi0", f.flux_phi0}});
  out["h"] = hs;
  out["notes"] = notes;
  return out;
}

std::string DeviceReport::text() const {
  std::ostringstream out;
  out << "qubit beta_L (limit " << beta_l_limit << "):\n";
  for (std::size_t i = 0; i < beta_per_qubit.size(); ++i)
    out << "  Q" << i << "  " << beta_per_qubit[i].value << "  "
        << (beta_per_qubit[i].within_design_rule ? "ok" : "ABOVE LIMIT") << "\n";
  if (energy_scale_used > 0) out << "E0 = " << energy_scale_used << " J\n";
  if (!couplings.empty()) {
    out << "couplings J_ij:\n";
    for (const auto& [key, v] : couplings)
      out << "  J" << key.first << key.second << " = " << v << "\n";
  }
  if (!fields.empty()) {
    out << "fields from bias currents:\n";
    for (std::size_t i = 0; i < fields.size(); ++i)
      out << "  h" << i << " = " << fields[i].h << "  (flux " << fields[i].flux_phi0
          << " Phi_0)\n";
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  return out.str();
}

DeviceParams reference_gate_device() {
  DeviceParams p;
  p.inductance = {110e-12, 110e-12, 110e-12};
  p.critical_current = 6.25e-6;
  p.bias_mutual = 31e-12;
  p.mutual[{0, 1}] = 10e-12;
  p.mutual[{0, 2}] = 22e-12;
  p.mutual[{1, 2}] = 22e-12;
  return p;
}

DeviceParams reference_multiplier_device() {
  DeviceParams p;
  p.inductance = {278e-12, 278e-12, 284e-12, 287e-12, 277e-12, 300e-12};
  p.critical_current = 6.25e-6;
  p.bias_mutual = 31e-12;
  p.mutual[{0, 1}] = -5.6e-12;
  p.mutual[{0, 2}] = -9.7e-12;
  p.mutual[{0, 3}] = 10.0e-12;
  p.mutual[{0, 4}] = 20.7e-12;
  p.mutual[{0, 5}] = 10.1e-12;
  p.mutual[{1, 2}] = -9.9e-12;
  p.mutual[{1, 3}] = -11.0e-12;
  p.mutual[{1, 4}] = 20.7e-12;
  p.mutual[{1, 5}] = 11.5e-12;
  p.mutual[{2, 3}] = -20.3e-12;
  p.mutual[{2, 4}] = 44.5e-12;
  p.mutual[{2, 5}] = 20.4e-12;
  p.mutual[{3, 4}] = 44.0e-12;
  p.mutual[{3, 5}] = 23.0e-12;
  p.mutual[{4, 5}] = -43.4e-12;
  return p;
}

}  // namespace qalogic::device
