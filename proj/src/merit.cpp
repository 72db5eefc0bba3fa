#include "qdse/merit.hpp"

#include <cmath>
#include <sstream>

#include "qdse/errors.hpp"

namespace qdse {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw DomainError(msg); }

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void validate(const Scenario& s) {
  if (!(s.fidelity > 0.0) || !(s.fidelity <= 1.0))
    fail("scenario fidelity must be in (0, 1], got " + num(s.fidelity));
  if (!(s.quality_factor > 0.0) || !std::isfinite(s.quality_factor))
    fail("scenario quality_factor must be finite and > 0, got " +
         num(s.quality_factor));
  if (!(s.eps_i >= 0.0) || !std::isfinite(s.eps_i))
    fail("scenario eps_i must be finite and >= 0, got " + num(s.eps_i));
  if (!(s.eps_c >= 0.0) || !(s.eps_c < 1.0))
    fail("scenario eps_c must be in [0, 1), got " + num(s.eps_c));
  if (s.n_q_lim < 1)
    fail("scenario n_q_lim must be >= 1, got " + std::to_string(s.n_q_lim));
  const struct {
    const char* name;
    double value;
  } weights[] = {{"qb", s.weights.qb},
                 {"qf", s.weights.qf},
                 {"f", s.weights.f},
                 {"i", s.weights.i},
                 {"c", s.weights.c}};
  for (const auto& w : weights) {
    if (!(w.value > 0.0) || !(w.value <= 1.0))
      fail(std::string("scenario weight ") + w.name +
           " must be in (0, 1], got " + num(w.value));
  }
  if (s.n_q_norm < 2)
    fail("scenario n_q_norm must be >= 2, got " + std::to_string(s.n_q_norm));
}

void validate(const DesignPoint& p) {
  if (p.n_q < 1)
    fail("design point n_q must be >= 1, got " + std::to_string(p.n_q));
  if (p.n_cores < 1)
    fail("design point n_cores must be >= 1, got " +
         std::to_string(p.n_cores));
}

double normalize_qubits(double n_q, std::int64_t n_q_norm, NormMode mode) {
  if (n_q_norm < 2)
    fail("n_q_norm must be >= 2, got " + std::to_string(n_q_norm));
  if (!(n_q >= 1.0)) fail("n_q must be >= 1, got " + num(n_q));
  if (n_q > static_cast<double>(n_q_norm))
    fail("point outside normalized domain: n_q=" + num(n_q) + " > n_q_norm=" +
         std::to_string(n_q_norm));
  if (mode == NormMode::Log)
    return std::log(n_q) / std::log(static_cast<double>(n_q_norm));
  return n_q / static_cast<double>(n_q_norm);
}

double j_qb(double n_tilde) { return std::pow(2.0, n_tilde) - 1.0; }

double j_f(double fidelity, double n_q) {
  return 2.0 - std::exp(n_q * std::log(fidelity));
}

int n_used(double n_q, std::int64_t n_q_lim, int n_cores) {
  const double filled = std::ceil(n_q / static_cast<double>(n_q_lim));
  const double clamped = std::min(filled, static_cast<double>(n_cores));
  return clamped < 1.0 ? 1 : static_cast<int>(clamped);
}

double j_i(double n_q, int n_cores, double eps_i, std::int64_t n_q_lim) {
  const double n_q_max = static_cast<double>(n_q_lim) * n_cores;
  const double h = (n_q - n_q_max >= 0.0) ? 1.0 : 0.0;  // step at capacity
  const double base = h * n_q / n_q_max;
  return 1.0 + (eps_i * n_q / n_cores) * (base * base * base);
}

double j_c(double eps_c, int n_used) {
  return 2.0 - std::pow(1.0 - eps_c, static_cast<double>(n_used));
}

MeritBreakdown gamma(const Scenario& s, const DesignPoint& p) {
  validate(p);
  return gamma_at(s, static_cast<double>(p.n_q), p.n_cores);
}

MeritBreakdown gamma_at(const Scenario& s, double n_q, int n_cores) {
  validate(s);
  if (!(n_q >= 1.0)) fail("n_q must be >= 1, got " + num(n_q));
  if (n_cores < 1)
    fail("n_cores must be >= 1, got " + std::to_string(n_cores));

  MeritBreakdown b;
  b.j_qb = j_qb(normalize_qubits(n_q, s.n_q_norm, s.norm_mode));
  b.j_qf = s.quality_factor;
  b.j_f = j_f(s.fidelity, n_q);
  b.j_i = j_i(n_q, n_cores, s.eps_i, s.n_q_lim);
  b.n_used = n_used(n_q, s.n_q_lim, n_cores);
  b.j_c = j_c(s.eps_c, b.n_used);
  b.n_q_max = s.n_q_lim * static_cast<std::int64_t>(n_cores);

  const MeritWeights& w = s.weights;
  b.gamma = ((w.qb * b.j_qb) * (w.qf * b.j_qf)) /
            (((w.f * b.j_f) * (w.i * b.j_i)) * (w.c * b.j_c));
  return b;
}

}  // namespace qdse
