#pragma once

#include <cstdint>

namespace qdse {

/// Mapping from a raw qubit count to the normalized exponent domain of the
/// qubit-count factor.
enum class NormMode {
  Linear,  ///< n_tilde = n_q / n_q_norm
  Log,     ///< n_tilde = log(n_q) / log(n_q_norm)
};

/// Per-factor weights of the figure of merit. Each must lie in (0, 1].
struct MeritWeights {
  double qb = 1.0;  ///< qubit-count factor weight (numerator)
  double qf = 1.0;  ///< quality-factor weight (numerator)
  double f = 1.0;   ///< infidelity-factor weight (denominator)
  double i = 1.0;   ///< interconnect-factor weight (denominator)
  double c = 1.0;   ///< control-factor weight (denominator)
};

/// The technology and architecture assumptions a design point is scored
/// against.
struct Scenario {
  double fidelity = 0.0;        ///< two-qubit gate fidelity, in (0, 1]
  double quality_factor = 0.0;  ///< coherence time / gate latency, > 0
  double eps_i = 0.0;           ///< inter-core overhead coefficient, >= 0
  double eps_c = 0.0;           ///< per-core control overhead, in [0, 1)
  std::int64_t n_q_lim = 1;     ///< qubit capacity of a single core, >= 1
  MeritWeights weights;
  std::int64_t n_q_norm = 2;    ///< qubit count that maps to n_tilde = 1, >= 2
  NormMode norm_mode = NormMode::Linear;
};

/// Throws DomainError naming the first field outside its range.
void validate(const Scenario& s);

/// A candidate machine size: total qubits spread over identical cores.
struct DesignPoint {
  std::int64_t n_q = 1;  ///< total qubit count, >= 1
  int n_cores = 1;       ///< core count, >= 1
};

void validate(const DesignPoint& p);

/// Factor-by-factor decomposition of the figure of merit at one point.
struct MeritBreakdown {
  double j_qb = 0.0;         ///< normalized qubit-count factor, in [0, 1]
  double j_qf = 0.0;         ///< quality factor (raw scenario value)
  double j_f = 0.0;          ///< infidelity factor, in [1, 2)
  double j_i = 0.0;          ///< interconnect penalty, >= 1
  double j_c = 0.0;          ///< control penalty, in [1, 2)
  int n_used = 0;            ///< populated cores, in [1, n_cores]
  std::int64_t n_q_max = 0;  ///< machine capacity n_q_lim * n_cores
  double gamma = 0.0;        ///< composed figure of merit
};

/// n_tilde for a (possibly fractional) qubit count. Requires
/// 1 <= n_q <= n_q_norm; larger counts are outside the normalized domain.
double normalize_qubits(double n_q, std::int64_t n_q_norm, NormMode mode);

/// 2^n_tilde - 1. Zero at n_tilde = 0, one at n_tilde = 1.
double j_qb(double n_tilde);

/// 2 - fidelity^n_q, the error accumulated over n_q qubits. Computed as
/// 2 - exp(n_q * log(fidelity)) so n_q need not be integral.
double j_f(double fidelity, double n_q);

/// Cores actually populated: ceil(n_q / n_q_lim) clamped to n_cores.
int n_used(double n_q, std::int64_t n_q_lim, int n_cores);

/// Interconnect penalty. Unity below machine capacity; above it (boundary
/// included) grows with the fourth power of the qubit count.
double j_i(double n_q, int n_cores, double eps_i, std::int64_t n_q_lim);

/// Control penalty 2 - (1 - eps_c)^n_used, stepping up with every extra
/// populated core.
double j_c(double eps_c, int n_used);

/// Scores one design point, returning the full factor breakdown. Throws
/// DomainError for invalid scenario or point fields, or when n_q exceeds
/// the normalization domain.
MeritBreakdown gamma(const Scenario& s, const DesignPoint& p);

/// Real-valued extension of gamma used by isoline refinement; n_q need not
/// be integral. Integral inputs reproduce gamma() bit for bit.
MeritBreakdown gamma_at(const Scenario& s, double n_q, int n_cores);

}  // namespace qdse
