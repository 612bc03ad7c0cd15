#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qalogic::device {

/// Flux quantum in webers.
inline constexpr double flux_quantum = 2.07e-15;

/// rf-SQUID screening parameter limit: above this, spurious local minima
/// appear in the qubit potential and anneals can trap in wrong states.
inline constexpr double beta_l_limit = 8.0;

struct BetaL {
  double value = 0.0;
  bool within_design_rule = false;  // value < beta_l_limit
};

/// beta_L = 2 pi L I_c / Phi_0, with a pass/fail flag against the limit.
BetaL beta_l(double inductance, double critical_current);

/// Dimensionless coupling from a mutual inductance: J = M I_p^2 / E0.
double j_from_mutual(double mutual, double persistent_current, double energy_scale);

struct BiasResult {
  double h = 0.0;
  double flux_wb = 0.0;    // M_bias * I_h
  double flux_phi0 = 0.0;  // in units of the flux quantum
};

/// Dimensionless field from a self-bias current:
/// h = sign_h * M_bias * I_h * I_p / E0. The default sign_h = -1 makes the
/// hardware clamp rule (add +alpha to the bias current to favor bit 1) agree
/// with the dimensionless convention (lower h to favor spin +1).
BiasResult h_from_bias(double bias_current, double bias_mutual, double persistent_current,
                       double energy_scale, int sign_h = -1);

/// Dimensionless temperature for the thermal engine: thermal energy over the
/// problem's energy scale, both in joules.
double temperature_ratio(double thermal_energy, double energy_scale);

/// Physical design quantities in SI units. Optional fields restrict which
/// dimensionless parameters can be derived; I_p in particular has no
/// default because guessing a persistent current would fabricate physics.
struct DeviceParams {
  std::vector<double> inductance;                           // L per qubit (H)
  double critical_current = 0.0;                            // I_c (A)
  std::optional<double> persistent_current;                 // I_p (A)
  std::optional<double> bias_mutual;                        // M_bias (H)
  std::optional<double> energy_scale;                       // E0 (J)
  int sign_h = -1;
  std::vector<double> bias_currents;                        // I_h per qubit (A)
  std::map<std::pair<int, int>, double> mutual;             // M_ij (H)
};

void to_json(nlohmann::json& out, const DeviceParams& p);
void from_json(const nlohmann::json& in, DeviceParams& p);

struct DeviceReport {
  std::vector<BetaL> beta_per_qubit;
  double energy_scale_used = 0.0;  // 0 when underivable
  std::vector<std::pair<std::pair<int, int>, double>> couplings;  // derived J
  std::vector<BiasResult> fields;                                 // derived h per bias current
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
  std::string text() const;
};

/// Derives whatever the provided parameters allow: beta_L always, J given
/// I_p (E0 defaults to |M|_max I_p^2 so the largest |J| is 1), h given
/// additionally M_bias and bias currents.
DeviceReport derive(const DeviceParams& params);

/// Reference design values for the fabricated three-qubit gate circuit:
/// L = 110 pH per qubit, I_c = 6.25 uA, M_bias = 31 pH and couplings
/// implemented as 10/22/22 pH.
DeviceParams reference_gate_device();

/// Reference design values for the fabricated six-qubit multiplier:
/// per-qubit L of 278/278/284/287/277/300 pH and the fifteen implemented
/// mutual inductances (signed, in henries).
DeviceParams reference_multiplier_device();

}  // namespace qalogic::device
