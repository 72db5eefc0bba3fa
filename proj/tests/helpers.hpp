#pragma once

#include <string>

#include "qdse/catalog.hpp"
#include "qdse/merit.hpp"

namespace testutil {

// Trapped-ion reference scenario: F = 0.999, QF = 0.2 s / 540 ns,
// eps_i = 1e-4, eps_c = 0.05, 1000 qubits per core, anchored at 1e6 qubits.
inline qdse::Scenario ion_scenario() {
  qdse::Scenario s;
  s.fidelity = 0.999;
  s.quality_factor = 0.2 / 5.4e-7;
  s.eps_i = 1e-4;
  s.eps_c = 0.05;
  s.n_q_lim = 1000;
  s.n_q_norm = 1000000;
  s.norm_mode = qdse::NormMode::Linear;
  return s;
}

inline qdse::TechnologyProfile ion_profile() {
  qdse::TechnologyProfile p;
  p.name = "ion_trap";
  p.tau_c_s = 0.2;
  p.gate_latency_s = 5.4e-7;
  p.fidelity = 0.999;
  p.quality_factor = 0.2 / 5.4e-7;
  return p;
}

// Message of the exception of type E thrown by f, or "" when none is.
template <typename E, typename F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

}  // namespace testutil
